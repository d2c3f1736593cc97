//! Taylor methods of arbitrary order and the benchmark problem registry.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::series::{GenericField, Scalar};
use crate::sio::{IvpProblem, Method, StepIntegral, StepResult, Trajectory};
use crate::spline::SplineSegment;

/// `y' = -y + t + 2`.
#[derive(Debug, Clone, Copy)]
pub struct Example1;

impl GenericField for Example1 {
    fn eval<S: Scalar>(&self, t: &S, y: &S) -> Result<S> {
        Ok(t.try_sub(y)?.add_real(2.0))
    }
}

/// `y' = y^2`.
#[derive(Debug, Clone, Copy)]
pub struct Example2;

impl GenericField for Example2 {
    fn eval<S: Scalar>(&self, _t: &S, y: &S) -> Result<S> {
        y.try_mul(y)
    }
}

/// `y' = 1 / (3 y^2)`.
#[derive(Debug, Clone, Copy)]
pub struct Example3;

impl GenericField for Example3 {
    fn eval<S: Scalar>(&self, _t: &S, y: &S) -> Result<S> {
        Ok(y.try_mul(y)?.recip()?.scale(1.0 / 3.0))
    }
}

/// `y' = lambda y`.
#[derive(Debug, Clone, Copy)]
pub struct LinearField(pub f64);

impl GenericField for LinearField {
    fn eval<S: Scalar>(&self, _t: &S, y: &S) -> Result<S> {
        Ok(y.scale(self.0))
    }
}

/// `y' = 0`.
#[derive(Debug, Clone, Copy)]
pub struct ZeroField;

impl GenericField for ZeroField {
    fn eval<S: Scalar>(&self, t: &S, _y: &S) -> Result<S> {
        Ok(t.constant_like(0.0))
    }
}

/// `∫_0^h p(s) ds` for `p` given lowest-degree first.
fn integrate_poly(coeffs: &[f64], h: f64) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .rev()
        .fold(0.0, |acc, (k, &c)| acc * h + c / (k + 1) as f64)
        * h
}

fn poly_square(p: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; 2 * p.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in p.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// Exact step integral for [`Example1`]: `∫ (-S(t) + t + 2) dt`.
#[derive(Debug, Clone, Copy)]
pub struct Example1Integral;

impl StepIntegral for Example1Integral {
    fn integrate(&self, seg: &SplineSegment) -> Result<f64> {
        let h = seg.h();
        let spline = integrate_poly(&seg.poly_coeffs(), h);
        Ok(-spline + integrate_poly(&[seg.t_i() + 2.0, 1.0], h))
    }
}

/// Exact step integral for [`Example2`]: `∫ S(t)^2 dt`.
#[derive(Debug, Clone, Copy)]
pub struct Example2Integral;

impl StepIntegral for Example2Integral {
    fn integrate(&self, seg: &SplineSegment) -> Result<f64> {
        Ok(integrate_poly(&poly_square(&seg.poly_coeffs()), seg.h()))
    }
}

/// Exact step integral for [`LinearField`]: `lambda ∫ S(t) dt`.
#[derive(Debug, Clone, Copy)]
pub struct LinearIntegral(pub f64);

impl StepIntegral for LinearIntegral {
    fn integrate(&self, seg: &SplineSegment) -> Result<f64> {
        Ok(self.0 * integrate_poly(&seg.poly_coeffs(), seg.h()))
    }
}

#[derive(Clone)]
pub struct RegistryEntry {
    pub problem: IvpProblem,
    pub step_integral: Option<Arc<dyn StepIntegral>>,
}

/// Named benchmark problems with analytic solutions.
#[derive(Clone)]
pub struct ProblemRegistry {
    entries: Vec<RegistryEntry>,
}

impl ProblemRegistry {
    /// `example1`: `y' = -y + t + 2, y(0) = 2`, solution `t + 1 + e^{-t}`.
    /// `example2`: `y' = y^2, y(0) = 1`, solution `1 / (1 - t)`.
    /// `example3`: `y' = 1 / (3 y^2), y(0) = 1`, solution `(t + 1)^{1/3}`.
    pub fn standard() -> Self {
        let example1 = IvpProblem::new("example1", Example1, 0.0, 2.0)
            .with_analytic_solution(|t| t + 1.0 + (-t).exp())
            .expect("consistent at t0");
        let example2 = IvpProblem::new("example2", Example2, 0.0, 1.0)
            .with_analytic_solution(|t| 1.0 / (1.0 - t))
            .expect("consistent at t0");
        let example3 = IvpProblem::new("example3", Example3, 0.0, 1.0)
            .with_analytic_solution(|t| (t + 1.0).cbrt())
            .expect("consistent at t0");
        ProblemRegistry {
            entries: vec![
                RegistryEntry {
                    problem: example1,
                    step_integral: Some(Arc::new(Example1Integral)),
                },
                RegistryEntry {
                    problem: example2,
                    step_integral: Some(Arc::new(Example2Integral)),
                },
                RegistryEntry {
                    problem: example3,
                    step_integral: None,
                },
            ],
        }
    }

    pub fn get(&self, name: &str) -> Option<&RegistryEntry> {
        self.entries.iter().find(|e| e.problem.name() == name)
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.problem.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &RegistryEntry> {
        self.entries.iter()
    }
}

impl Default for ProblemRegistry {
    fn default() -> Self {
        Self::standard()
    }
}

/// One step of the order-`p` Taylor method: `sum_{k=0}^{p} c_k h^k`.
pub fn taylor_step(problem: &IvpProblem, t_i: f64, w_i: f64, h: f64, p: usize) -> Result<f64> {
    if p == 0 {
        return Err(Error::InvalidConfig("Taylor order must be at least 1".into()));
    }
    let coeffs = problem.taylor_coefficients(t_i, w_i, p + 1)?;
    Ok(coeffs.iter().rev().fold(0.0, |acc, &c| acc * h + c))
}

pub fn taylor_solve(problem: &IvpProblem, h: f64, p: usize, n_steps: usize) -> Result<Trajectory> {
    if p == 0 {
        return Err(Error::InvalidConfig("Taylor order must be at least 1".into()));
    }
    if h == 0.0 || !h.is_finite() {
        return Err(Error::InvalidStep(h));
    }
    if n_steps == 0 {
        return Err(Error::InvalidConfig("n_steps must be at least 1".into()));
    }
    let mut traj = Trajectory::start(problem.t0(), problem.y0(), h, Method::Taylor { p });
    for i in 0..n_steps {
        let t_i = traj.times[i];
        let w_i = traj.values[i];
        match taylor_step(problem, t_i, w_i, h, p) {
            Ok(w_next) => traj.push(StepResult {
                w_next,
                fp_iterations: 0,
                residual: 0.0,
                converged: true,
                contraction_estimate: None,
            }),
            Err(e) => {
                return Err(Error::Aborted {
                    step: i,
                    partial: Box::new(traj),
                    cause: Box::new(Error::StepFailure {
                        t_i,
                        w: w_i,
                        source: Box::new(e),
                    }),
                })
            }
        }
    }
    Ok(traj)
}
