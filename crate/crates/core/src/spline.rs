//! Single-step spline `S_m(t_i, t, w)`: the degree `m - 1` Taylor polynomial
//! of the solution at `t_i`, completed by a degree-`m` term whose coefficient
//! makes the polynomial hit `w` at `t_i + h`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SplineSegment {
    t_i: f64,
    h: f64,
    taylor_coeffs: Vec<f64>,
    s_m: f64,
    w: f64,
}

/// Horner evaluation of `sum c_k s^k`.
fn horner(coeffs: &[f64], s: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * s + c)
}

impl SplineSegment {
    /// Builds the segment through `(t_i, taylor_coeffs[0])` and `(t_i + h, w)`.
    ///
    /// `h` may be negative.
    pub fn build(taylor_coeffs: &[f64], t_i: f64, h: f64, w: f64) -> Result<Self> {
        if h == 0.0 || !h.is_finite() {
            return Err(Error::InvalidStep(h));
        }
        if taylor_coeffs.is_empty() {
            return Err(Error::InvalidConfig("spline needs at least one Taylor coefficient".into()));
        }
        let m = taylor_coeffs.len() as i32;
        let s_m = (w - horner(taylor_coeffs, h)) / h.powi(m);
        Ok(SplineSegment {
            t_i,
            h,
            taylor_coeffs: taylor_coeffs.to_vec(),
            s_m,
            w,
        })
    }

    pub fn t_i(&self) -> f64 {
        self.t_i
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn degree(&self) -> usize {
        self.taylor_coeffs.len()
    }

    pub fn taylor_coeffs(&self) -> &[f64] {
        &self.taylor_coeffs
    }

    /// Leading coefficient `s_m`.
    pub fn leading(&self) -> f64 {
        self.s_m
    }

    /// Right-end value `w`.
    pub fn w(&self) -> f64 {
        self.w
    }

    /// Polynomial coefficients in powers of `t - t_i`, lowest first
    /// (length `m + 1`).
    pub fn poly_coeffs(&self) -> Vec<f64> {
        let mut out = self.taylor_coeffs.clone();
        out.push(self.s_m);
        out
    }

    /// Value at offset `s = t - t_i`.
    pub fn eval_offset(&self, s: f64) -> f64 {
        let tail = self.s_m * s + self.taylor_coeffs[self.taylor_coeffs.len() - 1];
        self.taylor_coeffs[..self.taylor_coeffs.len() - 1]
            .iter()
            .rev()
            .fold(tail, |acc, &c| acc * s + c)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.eval_offset(t - self.t_i)
    }
}
