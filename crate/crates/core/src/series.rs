//! Truncated power series ("jets") and Taylor-mode extraction of solution
//! derivatives from a right-hand side `f(t, y)`.
//!
//! A [`Jet`] of order `K` stores the Taylor coefficients `c_0..c_K` of a
//! scalar quantity, with `c_k = d^k(.)/dt^k / k!`. Arithmetic truncates at
//! `K`, so evaluating `f` on the jets of `t` and a partially known `y` yields
//! the next unknown coefficient of `y` through `c_{k+1} = [f(T, Y)]_k / (k+1)`.

use std::fmt;

use crate::complex::Complex;
use crate::error::{Error, Result};

/// Truncated power series `c_0 + c_1 s + ... + c_K s^K`.
#[derive(Clone, PartialEq)]
pub struct Jet {
    coeffs: Vec<f64>,
}

impl Jet {
    /// Builds a jet from its coefficients. The order is `coeffs.len() - 1`.
    ///
    /// Panics if `coeffs` is empty.
    pub fn new(coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty(), "a jet needs at least one coefficient");
        Jet { coeffs }
    }

    pub fn constant(c: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = c;
        Jet { coeffs }
    }

    /// The independent variable expanded around `at`: `at + s`.
    pub fn variable(at: f64, order: usize) -> Self {
        let mut jet = Jet::constant(at, order);
        if order >= 1 {
            jet.coeffs[1] = 1.0;
        }
        jet
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs[k]
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    fn check_order(&self, rhs: &Jet) -> Result<()> {
        if self.order() != rhs.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: rhs.order(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Jet{:?}", self.coeffs)
    }
}

/// Number systems a right-hand side can be evaluated over: reals, jets and
/// complex numbers.
///
/// Operations are fallible so that order mismatches between jets and
/// reciprocals of zero surface as errors rather than NaNs.
pub trait Scalar: Clone + fmt::Debug {
    /// A constant in the same system as `self` (same order, for jets).
    fn constant_like(&self, c: f64) -> Self;
    fn try_add(&self, rhs: &Self) -> Result<Self>;
    fn try_sub(&self, rhs: &Self) -> Result<Self>;
    fn try_mul(&self, rhs: &Self) -> Result<Self>;
    fn scale(&self, a: f64) -> Self;
    fn recip(&self) -> Result<Self>;

    fn add_real(&self, c: f64) -> Self {
        self.try_add(&self.constant_like(c))
            .expect("constant_like matches the receiver")
    }

    fn try_div(&self, rhs: &Self) -> Result<Self> {
        self.try_mul(&rhs.recip()?)
    }
}

impl Scalar for f64 {
    fn constant_like(&self, c: f64) -> Self {
        c
    }
    fn try_add(&self, rhs: &Self) -> Result<Self> {
        Ok(self + rhs)
    }
    fn try_sub(&self, rhs: &Self) -> Result<Self> {
        Ok(self - rhs)
    }
    fn try_mul(&self, rhs: &Self) -> Result<Self> {
        Ok(self * rhs)
    }
    fn scale(&self, a: f64) -> Self {
        self * a
    }
    fn recip(&self) -> Result<Self> {
        if *self == 0.0 {
            return Err(Error::DivisionByZero);
        }
        Ok(1.0 / self)
    }
    fn add_real(&self, c: f64) -> Self {
        self + c
    }
}

impl Scalar for Complex {
    fn constant_like(&self, c: f64) -> Self {
        Complex::from_real(c)
    }
    fn try_add(&self, rhs: &Self) -> Result<Self> {
        Ok(*self + *rhs)
    }
    fn try_sub(&self, rhs: &Self) -> Result<Self> {
        Ok(*self - *rhs)
    }
    fn try_mul(&self, rhs: &Self) -> Result<Self> {
        Ok(*self * *rhs)
    }
    fn scale(&self, a: f64) -> Self {
        Complex::scale(*self, a)
    }
    fn recip(&self) -> Result<Self> {
        if *self == Complex::ZERO {
            return Err(Error::DivisionByZero);
        }
        Ok(Complex::ONE / *self)
    }
}

impl Scalar for Jet {
    fn constant_like(&self, c: f64) -> Self {
        Jet::constant(c, self.order())
    }

    fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        Ok(Jet { coeffs })
    }

    fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        Ok(Jet { coeffs })
    }

    /// Cauchy product truncated at the common order.
    fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        let a = &self.coeffs;
        let b = &rhs.coeffs;
        let coeffs = (0..a.len())
            .map(|k| (0..=k).map(|i| a[i] * b[k - i]).sum())
            .collect();
        Ok(Jet { coeffs })
    }

    fn scale(&self, a: f64) -> Self {
        Jet {
            coeffs: self.coeffs.iter().map(|c| c * a).collect(),
        }
    }

    /// Reciprocal by forward substitution on `a * r = 1`.
    fn recip(&self) -> Result<Self> {
        let a = &self.coeffs;
        if a[0] == 0.0 {
            return Err(Error::DivisionByZero);
        }
        let mut r = vec![0.0; a.len()];
        r[0] = 1.0 / a[0];
        for k in 1..a.len() {
            let acc: f64 = (1..=k).map(|i| a[i] * r[k - i]).sum();
            r[k] = -acc / a[0];
        }
        Ok(Jet { coeffs: r })
    }

    fn add_real(&self, c: f64) -> Self {
        let mut out = self.clone();
        out.coeffs[0] += c;
        out
    }
}

/// A right-hand side `f(t, y)` evaluable over every supported scalar system.
///
/// Most fields are written once against [`GenericField`] and pick this up
/// through the blanket impl.
pub trait ScalarField: Send + Sync {
    fn eval_real(&self, t: f64, y: f64) -> Result<f64>;
    fn eval_jet(&self, t: &Jet, y: &Jet) -> Result<Jet>;
    fn eval_complex(&self, t: Complex, y: Complex) -> Result<Complex>;

    /// Declared number of continuous partial derivatives. Informational only.
    fn smoothness_order(&self) -> Option<usize> {
        None
    }
}

/// A right-hand side written once, generically over [`Scalar`].
pub trait GenericField: Send + Sync {
    fn eval<S: Scalar>(&self, t: &S, y: &S) -> Result<S>;

    fn smoothness_order(&self) -> Option<usize> {
        None
    }
}

impl<G: GenericField> ScalarField for G {
    fn eval_real(&self, t: f64, y: f64) -> Result<f64> {
        self.eval(&t, &y)
    }
    fn eval_jet(&self, t: &Jet, y: &Jet) -> Result<Jet> {
        self.eval(t, y)
    }
    fn eval_complex(&self, t: Complex, y: Complex) -> Result<Complex> {
        self.eval(&t, &y)
    }
    fn smoothness_order(&self) -> Option<usize> {
        GenericField::smoothness_order(self)
    }
}

/// Taylor coefficients `c_k = y^(k)(t0) / k!` for `k = 0..m` of the solution
/// through `(t0, y0)`.
///
/// Each pass evaluates `f` on the jets of `t` and the partially built `y`
/// (order `m - 1`) and reads off one more coefficient.
pub fn ode_taylor_coefficients(
    f: &dyn ScalarField,
    t0: f64,
    y0: f64,
    m: usize,
) -> Result<Vec<f64>> {
    if m == 0 {
        return Err(Error::InvalidConfig("need at least one Taylor coefficient".into()));
    }
    let order = m - 1;
    let t = Jet::variable(t0, order);
    let mut y = Jet::constant(y0, order);
    for k in 0..order {
        let fy = f.eval_jet(&t, &y)?;
        y.coeffs[k + 1] = fy.coeffs[k] / (k + 1) as f64;
    }
    Ok(y.into_coeffs())
}

/// Source of the Taylor coefficients the spline and the Taylor methods need.
pub trait DerivativeProvider: Send + Sync {
    /// Returns `m` coefficients `y^(k)(t) / k!`, `k = 0..m`, for the solution
    /// passing through `(t, y)`.
    fn taylor_coefficients(&self, t: f64, y: f64, m: usize) -> Result<Vec<f64>>;
}

/// Coefficients by power-series recursion through the field itself.
pub struct SeriesDerivatives<F>(pub F);

impl<F: ScalarField> DerivativeProvider for SeriesDerivatives<F> {
    fn taylor_coefficients(&self, t: f64, y: f64, m: usize) -> Result<Vec<f64>> {
        ode_taylor_coefficients(&self.0, t, y, m)
    }
}

type DerivativeFn = Box<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Coefficients from user-supplied total derivatives.
///
/// Entry `k` of the list returns `d^(k+1) y / dt^(k+1)` as a function of
/// `(t, y)` along the solution, i.e. `f`, `df/dt`, `d^2f/dt^2`, ...
pub struct ClosureDerivatives {
    derivatives: Vec<DerivativeFn>,
}

impl ClosureDerivatives {
    pub fn new(derivatives: Vec<DerivativeFn>) -> Self {
        ClosureDerivatives { derivatives }
    }

    /// Highest `m` this provider can serve.
    pub fn max_coefficients(&self) -> usize {
        self.derivatives.len() + 1
    }
}

impl DerivativeProvider for ClosureDerivatives {
    fn taylor_coefficients(&self, t: f64, y: f64, m: usize) -> Result<Vec<f64>> {
        if m == 0 || m > self.max_coefficients() {
            return Err(Error::InvalidConfig(format!(
                "closure provider supplies 1..={} coefficients, {m} requested",
                self.max_coefficients()
            )));
        }
        let mut out = Vec::with_capacity(m);
        out.push(y);
        let mut factorial = 1.0;
        for (k, d) in self.derivatives.iter().take(m - 1).enumerate() {
            factorial *= (k + 1) as f64;
            out.push(d(t, y) / factorial);
        }
        Ok(out)
    }
}
