//! Gauss-Legendre rules with tabulated nodes and weights.

use crate::error::{Error, Result};

/// Default node count: exact through degree 5.
pub const DEFAULT_NODES: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

// Positive nodes and their weights, ascending; the rule is the mirror image.
// Odd counts carry the centre node first.
#[allow(clippy::excessive_precision)]
const TABLES: [&[(f64, f64)]; 8] = [
    &[(0.0, 2.0)],
    &[(0.57735026918962576451, 1.0)],
    &[
        (0.0, 0.88888888888888888889),
        (0.77459666924148337704, 0.55555555555555555556),
    ],
    &[
        (0.33998104358485626480, 0.65214515486254614263),
        (0.86113631159405257522, 0.34785484513745385737),
    ],
    &[
        (0.0, 0.56888888888888888889),
        (0.53846931010568309104, 0.47862867049936646804),
        (0.90617984593866399280, 0.23692688505618908751),
    ],
    &[
        (0.23861918608319690863, 0.46791393457269104739),
        (0.66120938646626451366, 0.36076157304813860757),
        (0.93246951420315202781, 0.17132449237917034504),
    ],
    &[
        (0.0, 0.41795918367346938776),
        (0.40584515137739716691, 0.38183005050511894495),
        (0.74153118559939443986, 0.27970539148927666790),
        (0.94910791234275852453, 0.12948496616886969327),
    ],
    &[
        (0.18343464249564980494, 0.36268378337836198297),
        (0.52553240991632898582, 0.31370664587788728734),
        (0.79666647741362673959, 0.22238103445337447054),
        (0.96028985649753623168, 0.10122853629037625915),
    ],
];

/// The `n`-node Gauss-Legendre rule on `[-1, 1]`, `1 <= n <= 8`.
pub fn gauss_legendre(n: usize) -> Result<QuadratureRule> {
    if !(1..=TABLES.len()).contains(&n) {
        return Err(Error::UnsupportedRule(n));
    }
    let half = TABLES[n - 1];
    let mut pairs: Vec<(f64, f64)> = Vec::with_capacity(n);
    for &(x, w) in half.iter().rev() {
        if x != 0.0 {
            pairs.push((-x, w));
        }
    }
    for &(x, w) in half {
        pairs.push((x, w));
    }
    let (nodes, weights) = pairs.into_iter().unzip();
    Ok(QuadratureRule { nodes, weights })
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Highest polynomial degree integrated exactly, `2n - 1`.
    pub fn exactness_degree(&self) -> usize {
        2 * self.nodes.len() - 1
    }

    /// Integral of `g` over `[a, b]`; `b < a` flips the sign.
    pub fn integrate<G: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut g: G) -> Result<f64> {
        self.try_integrate(a, b, |t| Ok(g(t)))
    }

    /// As [`integrate`](Self::integrate) for a fallible integrand.
    pub fn try_integrate<G>(&self, a: f64, b: f64, mut g: G) -> Result<f64>
    where
        G: FnMut(f64) -> Result<f64>,
    {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            let t = mid + half * x;
            let v = g(t)?;
            if !v.is_finite() {
                return Err(Error::IntegrandNotFinite { node: t, value: v });
            }
            acc += w * v;
        }
        Ok(half * acc)
    }
}
