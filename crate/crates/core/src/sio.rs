//! The spline-integral operator
//!
//! ```text
//! G(w) = w_i + ∫_{t_i}^{t_i+h} f(t, S_m(t_i, t, w)) dt
//! ```
//!
//! its fixed-point inner iteration, and the one-step recursion that chains
//! fixed points across uniformly spaced nodes.
//!
//! The inner iteration starts from `w_i`, the value at the left node, and
//! stops when two successive iterates differ by at most `fp_tol` or after
//! `max_fp_iters` applications.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quadrature::{gauss_legendre, QuadratureRule, DEFAULT_NODES};
use crate::series::{DerivativeProvider, Jet, ScalarField};
use crate::spline::SplineSegment;

/// Iterates whose magnitude exceeds this abort the step.
pub const BLOWUP_LIMIT: f64 = 1e12;

pub const DEFAULT_FP_TOL: f64 = 1e-14;
pub const DEFAULT_MAX_FP_ITERS: usize = 50;

/// Exact value of `∫ f(t, S(t)) dt` over a segment's step, for fields where
/// the integrand has a closed-form antiderivative.
pub trait StepIntegral: Send + Sync {
    fn integrate(&self, segment: &SplineSegment) -> Result<f64>;
}

type SolutionFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Scalar initial value problem `y' = f(t, y)`, `y(t0) = y0`.
#[derive(Clone)]
pub struct IvpProblem {
    name: String,
    field: Arc<dyn ScalarField>,
    t0: f64,
    y0: f64,
    analytic: Option<SolutionFn>,
    derivatives: Option<Arc<dyn DerivativeProvider>>,
}

impl IvpProblem {
    pub fn new(name: impl Into<String>, field: impl ScalarField + 'static, t0: f64, y0: f64) -> Self {
        IvpProblem {
            name: name.into(),
            field: Arc::new(field),
            t0,
            y0,
            analytic: None,
            derivatives: None,
        }
    }

    /// Attaches the exact solution. Fails if it disagrees with `y0` at `t0`
    /// by more than `1e-12`.
    pub fn with_analytic_solution<F>(mut self, solution: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let got = solution(self.t0);
        if (got - self.y0).abs() > 1e-12 || got.is_nan() {
            return Err(Error::InconsistentInitialValue { expected: self.y0, got });
        }
        self.analytic = Some(Arc::new(solution));
        Ok(self)
    }

    /// Replaces the power-series derivative engine with another provider.
    pub fn with_derivatives(mut self, provider: impl DerivativeProvider + 'static) -> Self {
        self.derivatives = Some(Arc::new(provider));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> &dyn ScalarField {
        self.field.as_ref()
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn y0(&self) -> f64 {
        self.y0
    }

    pub fn has_analytic_solution(&self) -> bool {
        self.analytic.is_some()
    }

    pub fn exact(&self, t: f64) -> Option<f64> {
        self.analytic.as_ref().map(|f| f(t))
    }

    /// `m` Taylor coefficients of the solution through `(t, y)`.
    pub fn taylor_coefficients(&self, t: f64, y: f64, m: usize) -> Result<Vec<f64>> {
        match &self.derivatives {
            Some(p) => p.taylor_coefficients(t, y, m),
            None => crate::series::ode_taylor_coefficients(self.field.as_ref(), t, y, m),
        }
    }
}

impl fmt::Debug for IvpProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IvpProblem")
            .field("name", &self.name)
            .field("t0", &self.t0)
            .field("y0", &self.y0)
            .field("analytic", &self.analytic.is_some())
            .finish()
    }
}

/// What `solve` does with a step whose inner iteration hit the cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NonConvergence {
    #[default]
    Abort,
    /// Keep the last iterate and carry on.
    Continue,
}

#[derive(Clone)]
pub struct SioConfig {
    /// Spline degree; the method has order `m + 1`.
    pub m: usize,
    pub h: f64,
    pub fp_tol: f64,
    pub max_fp_iters: usize,
    pub quad_nodes: usize,
    /// Bypasses quadrature when set.
    pub closed_form_integral: Option<Arc<dyn StepIntegral>>,
    pub on_nonconvergence: NonConvergence,
}

impl SioConfig {
    pub fn new(m: usize, h: f64) -> Self {
        SioConfig {
            m,
            h,
            fp_tol: DEFAULT_FP_TOL,
            max_fp_iters: DEFAULT_MAX_FP_ITERS,
            quad_nodes: DEFAULT_NODES,
            closed_form_integral: None,
            on_nonconvergence: NonConvergence::Abort,
        }
    }

    pub fn with_fp_tol(mut self, tol: f64) -> Self {
        self.fp_tol = tol;
        self
    }

    pub fn with_max_fp_iters(mut self, n: usize) -> Self {
        self.max_fp_iters = n;
        self
    }

    pub fn with_quad_nodes(mut self, n: usize) -> Self {
        self.quad_nodes = n;
        self
    }

    pub fn with_closed_form(mut self, integral: Option<Arc<dyn StepIntegral>>) -> Self {
        self.closed_form_integral = integral;
        self
    }

    pub fn with_nonconvergence(mut self, policy: NonConvergence) -> Self {
        self.on_nonconvergence = policy;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::InvalidConfig("m must be at least 1".into()));
        }
        if self.h == 0.0 || !self.h.is_finite() {
            return Err(Error::InvalidStep(self.h));
        }
        if self.fp_tol.is_nan() || self.fp_tol <= 0.0 {
            return Err(Error::InvalidConfig(format!("fp_tol must be positive, got {}", self.fp_tol)));
        }
        if self.max_fp_iters == 0 {
            return Err(Error::InvalidConfig("max_fp_iters must be at least 1".into()));
        }
        if self.closed_form_integral.is_none() {
            gauss_legendre(self.quad_nodes)?;
        }
        Ok(())
    }
}

impl fmt::Debug for SioConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SioConfig")
            .field("m", &self.m)
            .field("h", &self.h)
            .field("fp_tol", &self.fp_tol)
            .field("max_fp_iters", &self.max_fp_iters)
            .field("quad_nodes", &self.quad_nodes)
            .field("closed_form_integral", &self.closed_form_integral.is_some())
            .field("on_nonconvergence", &self.on_nonconvergence)
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepResult {
    pub w_next: f64,
    pub fp_iterations: usize,
    /// `|w[l] - w[l-1]|` at exit.
    pub residual: f64,
    pub converged: bool,
    /// Ratio of the second to the first residual.
    pub contraction_estimate: Option<f64>,
}

#[derive(Debug, Clone)]
pub enum Method {
    Sio(SioConfig),
    Taylor { p: usize },
}

/// Values on the uniform grid `t_i = t0 + i h`.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    /// One entry per completed step.
    pub steps: Vec<StepResult>,
    pub h: f64,
    pub method: Method,
}

impl Trajectory {
    pub(crate) fn start(t0: f64, y0: f64, h: f64, method: Method) -> Self {
        Trajectory {
            times: vec![t0],
            values: vec![y0],
            steps: Vec::new(),
            h,
            method,
        }
    }

    pub(crate) fn push(&mut self, step: StepResult) {
        let i = self.steps.len() + 1;
        self.times.push(self.times[0] + i as f64 * self.h);
        self.values.push(step.w_next);
        self.steps.push(step);
    }

    pub fn final_time(&self) -> f64 {
        *self.times.last().expect("trajectory holds t0")
    }

    pub fn final_value(&self) -> f64 {
        *self.values.last().expect("trajectory holds y0")
    }

    /// Absolute errors against the problem's analytic solution.
    pub fn errors(&self, problem: &IvpProblem) -> Option<Vec<f64>> {
        problem.has_analytic_solution().then(|| {
            self.times
                .iter()
                .zip(&self.values)
                .map(|(&t, &w)| (w - problem.exact(t).unwrap()).abs())
                .collect()
        })
    }
}

fn step_failure(t_i: f64, w: f64, source: Error) -> Error {
    Error::StepFailure {
        t_i,
        w,
        source: Box::new(source),
    }
}

enum Integrator<'a> {
    Closed(&'a dyn StepIntegral),
    Gauss(QuadratureRule),
}

impl<'a> Integrator<'a> {
    fn for_config(config: &'a SioConfig) -> Result<Self> {
        Ok(match &config.closed_form_integral {
            Some(c) => Integrator::Closed(c.as_ref()),
            None => Integrator::Gauss(gauss_legendre(config.quad_nodes)?),
        })
    }

    fn integral(&self, field: &dyn ScalarField, seg: &SplineSegment) -> Result<f64> {
        match self {
            Integrator::Closed(c) => c.integrate(seg),
            Integrator::Gauss(rule) => {
                let t_i = seg.t_i();
                rule.try_integrate(0.0, seg.h(), |s| field.eval_real(t_i + s, seg.eval_offset(s)))
            }
        }
    }
}

fn apply_with(
    problem: &IvpProblem,
    integrator: &Integrator<'_>,
    taylor_coeffs: &[f64],
    t_i: f64,
    h: f64,
    w: f64,
) -> Result<f64> {
    let seg = SplineSegment::build(taylor_coeffs, t_i, h, w)?;
    let integral = integrator
        .integral(problem.field(), &seg)
        .map_err(|e| step_failure(t_i, w, e))?;
    Ok(taylor_coeffs[0] + integral)
}

/// One application of the operator: `taylor_coeffs[0] + ∫ f(t, S_m(t_i, t, w)) dt`.
///
/// `taylor_coeffs` are the solution's Taylor coefficients at `t_i`, so
/// `taylor_coeffs[0]` is the current node value.
pub fn apply_operator(
    problem: &IvpProblem,
    taylor_coeffs: &[f64],
    t_i: f64,
    h: f64,
    w: f64,
    config: &SioConfig,
) -> Result<f64> {
    let integrator = Integrator::for_config(config)?;
    apply_with(problem, &integrator, taylor_coeffs, t_i, h, w)
}

/// Fixed-point iteration for the value at `t_i + h`, starting from `w_i`.
///
/// Running out of iterations is not an error here; the result carries
/// `converged = false` and the caller decides.
pub fn fixed_point_step(problem: &IvpProblem, t_i: f64, w_i: f64, config: &SioConfig) -> Result<StepResult> {
    config.validate()?;
    let integrator = Integrator::for_config(config)?;
    let coeffs = problem
        .taylor_coefficients(t_i, w_i, config.m)
        .map_err(|e| step_failure(t_i, w_i, e))?;

    let mut w = w_i;
    let mut first_residual = None;
    let mut contraction_estimate = None;
    let mut residual = f64::INFINITY;
    for iteration in 1..=config.max_fp_iters {
        let next = apply_with(problem, &integrator, &coeffs, t_i, config.h, w)?;
        if !next.is_finite() || next.abs() > BLOWUP_LIMIT {
            return Err(Error::Divergence { t_i, iteration, value: next });
        }
        residual = (next - w).abs();
        match first_residual {
            None => first_residual = Some(residual),
            Some(r0) if contraction_estimate.is_none() && r0 > 0.0 => {
                contraction_estimate = Some(residual / r0);
            }
            _ => {}
        }
        w = next;
        if residual <= config.fp_tol {
            return Ok(StepResult {
                w_next: w,
                fp_iterations: iteration,
                residual,
                converged: true,
                contraction_estimate,
            });
        }
    }
    Ok(StepResult {
        w_next: w,
        fp_iterations: config.max_fp_iters,
        residual,
        converged: false,
        contraction_estimate,
    })
}

/// Advances `n_steps` steps of size `config.h` from the initial condition,
/// recomputing the Taylor part of the spline from each new node value.
pub fn solve(problem: &IvpProblem, config: &SioConfig, n_steps: usize) -> Result<Trajectory> {
    config.validate()?;
    if n_steps == 0 {
        return Err(Error::InvalidConfig("n_steps must be at least 1".into()));
    }
    let mut traj = Trajectory::start(problem.t0(), problem.y0(), config.h, Method::Sio(config.clone()));
    for i in 0..n_steps {
        let t_i = traj.times[i];
        let w_i = traj.values[i];
        let abort = |traj: Trajectory, cause: Error| Error::Aborted {
            step: i,
            partial: Box::new(traj),
            cause: Box::new(cause),
        };
        let step = match fixed_point_step(problem, t_i, w_i, config) {
            Ok(step) => step,
            Err(e) => return Err(abort(traj, e)),
        };
        if !step.converged && config.on_nonconvergence == NonConvergence::Abort {
            let cause = Error::NotConverged {
                t_i,
                iterations: step.fp_iterations,
                residual: step.residual,
            };
            return Err(abort(traj, cause));
        }
        traj.push(step);
    }
    Ok(traj)
}

/// `K |h| / (m + 1)`: below 1, the operator is a contraction for a field
/// with Lipschitz constant `K`. Sufficient, not necessary.
pub fn contraction_diagnostic(k_estimate: f64, h: f64, m: usize) -> f64 {
    k_estimate * h.abs() / (m as f64 + 1.0)
}

/// Largest `|∂f/∂y|` sampled along the graph of `segment`, with the partial
/// derivative taken exactly through a first-order jet in `y`.
pub fn sampled_lipschitz(problem: &IvpProblem, segment: &SplineSegment, samples: usize) -> Result<f64> {
    let samples = samples.max(2);
    let mut k: f64 = 0.0;
    for j in 0..samples {
        let s = segment.h() * j as f64 / (samples - 1) as f64;
        let t = Jet::constant(segment.t_i() + s, 1);
        let y = Jet::variable(segment.eval_offset(s), 1);
        let dfdy = problem.field().eval_jet(&t, &y)?.coeff(1);
        k = k.max(dfdy.abs());
    }
    Ok(k)
}

/// Convenience wrapper: the contraction diagnostic for the step from
/// `(t_i, w_i)`, using the segment through `w_i` itself.
pub fn step_contraction_diagnostic(problem: &IvpProblem, t_i: f64, w_i: f64, config: &SioConfig) -> Result<f64> {
    let coeffs = problem.taylor_coefficients(t_i, w_i, config.m)?;
    let seg = SplineSegment::build(&coeffs, t_i, config.h, w_i)?;
    let k = sampled_lipschitz(problem, &seg, 16)?;
    Ok(contraction_diagnostic(k, config.h, config.m))
}
