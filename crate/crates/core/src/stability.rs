//! Absolute stability: amplification factors for `y' = lambda y` at
//! `z = lambda h`, and rasterized stability regions.
//!
//! A point is stable when the amplification magnitude is strictly below 1.
//! Poles evaluate to `f64::INFINITY` and count as unstable.

use std::fmt;

use crate::complex::Complex;
use crate::error::{Error, Result};

/// `|m+1 + sum_{k<m} (m-k) z^{k+1}/(k+1)!| / |m+1 - z|`.
pub fn sio_amplification(z: Complex, m: usize) -> f64 {
    let mp1 = (m + 1) as f64;
    let den = Complex::from_real(mp1) - z;
    if den == Complex::ZERO {
        return f64::INFINITY;
    }
    let mut term = Complex::ONE;
    let mut num = Complex::from_real(mp1);
    for k in 0..m {
        term = term * z.scale(1.0 / (k + 1) as f64);
        num = num + term.scale((m - k) as f64);
    }
    num.abs() / den.abs()
}

/// `|sum_{k=0}^{p} z^k / k!|`.
pub fn taylor_amplification(z: Complex, p: usize) -> f64 {
    let mut term = Complex::ONE;
    let mut sum = Complex::ONE;
    for k in 1..=p {
        term = term * z.scale(1.0 / k as f64);
        sum = sum + term;
    }
    sum.abs()
}

pub fn is_stable(amplification: f64) -> bool {
    amplification.is_finite() && amplification < 1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmplificationMethod {
    Sio { m: usize },
    Taylor { p: usize },
    /// `R(z) = 1` everywhere.
    Unit,
}

impl AmplificationMethod {
    pub fn amplification(&self, z: Complex) -> f64 {
        match *self {
            AmplificationMethod::Sio { m } => sio_amplification(z, m),
            AmplificationMethod::Taylor { p } => taylor_amplification(z, p),
            AmplificationMethod::Unit => 1.0,
        }
    }

    pub fn tag(&self) -> String {
        match *self {
            AmplificationMethod::Sio { m } => format!("sio_m{m}"),
            AmplificationMethod::Taylor { p } => format!("taylor_p{p}"),
            AmplificationMethod::Unit => "unit".to_string(),
        }
    }
}

impl fmt::Display for AmplificationMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

/// Rectangle `[re_min, re_max] x [im_min, im_max]` of the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Window {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        let ok = |a: f64, b: f64| a.is_finite() && b.is_finite() && a < b;
        if !ok(re_min, re_max) || !ok(im_min, im_max) {
            return Err(Error::InvalidConfig(format!(
                "window needs min < max on both axes, got [{re_min}, {re_max}] x [{im_min}, {im_max}]"
            )));
        }
        Ok(Window { re_min, re_max, im_min, im_max })
    }
}

impl Default for Window {
    fn default() -> Self {
        Window {
            re_min: -8.0,
            re_max: 4.0,
            im_min: -6.0,
            im_max: 6.0,
        }
    }
}

pub const DEFAULT_RESOLUTION: (usize, usize) = (600, 600);

/// Amplification sampled at cell centres. `values[i][j]` is the cell with
/// real-axis index `i` and imaginary-axis index `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityGrid {
    pub window: Window,
    pub resolution: (usize, usize),
    pub values: Vec<Vec<f64>>,
    pub method_tag: String,
}

impl StabilityGrid {
    pub fn re_at(&self, i: usize) -> f64 {
        cell_centre(self.window.re_min, self.window.re_max, self.resolution.0, i)
    }

    pub fn im_at(&self, j: usize) -> f64 {
        cell_centre(self.window.im_min, self.window.im_max, self.resolution.1, j)
    }

    pub fn is_stable_at(&self, i: usize, j: usize) -> bool {
        is_stable(self.values[i][j])
    }

    /// `(re, im, amplification)` for every cell, real index outermost.
    pub fn cells(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        (0..self.resolution.0)
            .flat_map(move |i| (0..self.resolution.1).map(move |j| (self.re_at(i), self.im_at(j), self.values[i][j])))
    }

    pub fn stable_count(&self) -> usize {
        self.values.iter().flatten().filter(|&&v| is_stable(v)).count()
    }

    /// Fraction of this grid's stable cells that are also stable in `other`.
    /// `None` when the grids are not comparable or this one has no stable cell.
    pub fn fraction_stable_in(&self, other: &StabilityGrid) -> Option<f64> {
        if self.window != other.window || self.resolution != other.resolution {
            return None;
        }
        let mut total = 0usize;
        let mut both = 0usize;
        for (a, b) in self.values.iter().flatten().zip(other.values.iter().flatten()) {
            if is_stable(*a) {
                total += 1;
                if is_stable(*b) {
                    both += 1;
                }
            }
        }
        (total > 0).then(|| both as f64 / total as f64)
    }
}

// Offsets from the window midpoint, so mirrored cells of a symmetric window
// get exactly negated coordinates.
fn cell_centre(min: f64, max: f64, n: usize, i: usize) -> f64 {
    let step = (max - min) / n as f64;
    0.5 * (min + max) + (i as f64 + 0.5 - 0.5 * n as f64) * step
}

pub fn scan_grid(method: AmplificationMethod, window: Window, resolution: (usize, usize)) -> Result<StabilityGrid> {
    let (nx, ny) = resolution;
    if nx < 2 || ny < 2 {
        return Err(Error::InvalidConfig(format!("resolution must be at least 2 per axis, got {nx}x{ny}")));
    }
    let mut grid = StabilityGrid {
        window,
        resolution,
        values: Vec::with_capacity(nx),
        method_tag: method.tag(),
    };
    for i in 0..nx {
        let re = grid.re_at(i);
        let row = (0..ny)
            .map(|j| method.amplification(Complex::new(re, grid.im_at(j))))
            .collect();
        grid.values.push(row);
    }
    Ok(grid)
}
