#![allow(clippy::needless_range_loop)]

mod common;

use common::{fd_derivative, registry_problem};
use proptest::prelude::*;
use sio_core::quadrature::gauss_legendre;
use sio_core::reference::ProblemRegistry;
use sio_core::sio::{apply_operator, fixed_point_step, solve, SioConfig};
use sio_core::spline::SplineSegment;

fn coeffs_strategy() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-3.0..3.0f64, 1..6)
}

fn step_strategy() -> impl Strategy<Value = f64> {
    prop_oneof![0.01..0.5f64, -0.5..-0.01f64]
}

proptest! {
    #[test]
    fn spline_endpoint_conditions(coeffs in coeffs_strategy(), t_i in -5.0..5.0f64, h in step_strategy(), w in -5.0..5.0f64) {
        let seg = SplineSegment::build(&coeffs, t_i, h, w).unwrap();
        prop_assert_eq!(seg.eval(t_i), coeffs[0]);
        let tol = 4.0 * f64::EPSILON * w.abs().max(1.0) * (seg.leading() * h.powi(coeffs.len() as i32)).abs().max(1.0);
        prop_assert!((seg.eval_offset(h) - w).abs() <= tol, "{} vs {}", seg.eval_offset(h), w);
    }

    #[test]
    fn spline_derivatives_match_taylor_data(coeffs in coeffs_strategy(), h in step_strategy(), w in -5.0..5.0f64) {
        prop_assume!(h.abs() >= 0.05);
        let seg = SplineSegment::build(&coeffs, 0.0, h, w).unwrap();
        let f = |t: f64| seg.eval(t);
        let mut factorial = 1.0;
        for k in 1..coeffs.len() {
            factorial *= k as f64;
            let fd = fd_derivative(&f, 0.0, k, 0.1 * h.abs());
            let expected = factorial * coeffs[k];
            // Size of the k-th derivative across the step, from every term.
            let scale: f64 = seg.poly_coeffs().iter().enumerate().skip(k)
                .map(|(j, c)| c.abs() * (j - k + 1..=j).product::<usize>() as f64 * h.abs().powi((j - k) as i32))
                .sum();
            prop_assert!((fd - expected).abs() <= 1e-6 * scale.max(1.0),
                "k={}: {} vs {}", k, fd, expected);
        }
    }

    #[test]
    fn spline_is_affine_in_w(coeffs in coeffs_strategy(), h in step_strategy(), w1 in -5.0..5.0f64, w2 in -5.0..5.0f64, frac in 0.0..1.0f64) {
        let a = SplineSegment::build(&coeffs, 1.0, h, w1).unwrap();
        let b = SplineSegment::build(&coeffs, 1.0, h, w2).unwrap();
        let s = frac * h;
        let diff = a.eval_offset(s) - b.eval_offset(s);
        let expected = (w1 - w2) * (s / h).powi(coeffs.len() as i32);
        prop_assert!((diff - expected).abs() <= 1e-13 * (1.0 + w1.abs() + w2.abs()));
    }

    #[test]
    fn quadrature_orientation(a in -3.0..3.0f64, b in -3.0..3.0f64, n in 1usize..=8) {
        let rule = gauss_legendre(n).unwrap();
        let g = |t: f64| t.cos() + t * t;
        let fwd = rule.integrate(a, b, g).unwrap();
        let back = rule.integrate(b, a, g).unwrap();
        prop_assert!((fwd + back).abs() <= 1e-14 * (1.0 + fwd.abs()));
    }

    #[test]
    fn quadrature_exact_on_random_polynomials(coeffs in prop::collection::vec(-2.0..2.0f64, 1..16), a in -2.0..2.0f64, len in 0.1..3.0f64) {
        let degree = coeffs.len() - 1;
        let n = degree / 2 + 1;
        let rule = gauss_legendre(n.min(8)).unwrap();
        prop_assume!(degree <= rule.exactness_degree());
        let b = a + len;
        let p = |t: f64| coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c);
        let antiderivative = |t: f64| coeffs.iter().enumerate().rev().fold(0.0, |acc, (k, &c)| acc * t + c / (k + 1) as f64) * t;
        let exact = antiderivative(b) - antiderivative(a);
        let got = rule.integrate(a, b, p).unwrap();
        let scale: f64 = coeffs.iter().map(|c| c.abs()).sum::<f64>() * 5f64.powi(degree as i32 + 1);
        prop_assert!((got - exact).abs() <= 1e-13 * scale, "{} vs {}", got, exact);
    }
}

/// Finite-difference estimate of max |df/dy| over the graphs of the given
/// segments.
fn fd_lipschitz(p: &sio_core::sio::IvpProblem, segs: &[SplineSegment]) -> f64 {
    let mut k: f64 = 0.0;
    for seg in segs {
        for j in 0..=50 {
            let t = seg.t_i() + seg.h() * j as f64 / 50.0;
            let y = seg.eval(t);
            let d = 1e-6 * y.abs().max(1.0);
            let fp = p.field().eval_real(t, y + d).unwrap();
            let fm = p.field().eval_real(t, y - d).unwrap();
            k = k.max(((fp - fm) / (2.0 * d)).abs());
        }
    }
    k
}

#[test]
fn operator_contracts_on_sampled_pairs() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5105);
    let reg = ProblemRegistry::standard();
    let h = 0.1;
    for entry in reg.iter() {
        let p = &entry.problem;
        for m in 1..=3 {
            let cfg = SioConfig::new(m, h);
            let traj = solve(p, &cfg, 5).unwrap();
            for i in 0..5 {
                let (t_i, w_i) = (traj.times[i], traj.values[i]);
                let coeffs = p.taylor_coefficients(t_i, w_i, m).unwrap();
                for _ in 0..40 {
                    let w1 = traj.values[i + 1] + rng.random_range(-0.05..0.05);
                    let w2 = traj.values[i + 1] + rng.random_range(-0.05..0.05);
                    let g1 = apply_operator(p, &coeffs, t_i, h, w1, &cfg).unwrap();
                    let g2 = apply_operator(p, &coeffs, t_i, h, w2, &cfg).unwrap();
                    let segs = [
                        SplineSegment::build(&coeffs, t_i, h, w1).unwrap(),
                        SplineSegment::build(&coeffs, t_i, h, w2).unwrap(),
                    ];
                    let k = fd_lipschitz(p, &segs);
                    let bound = k * h / (m as f64 + 1.0) * (w1 - w2).abs() * (1.0 + 1e-8);
                    assert!(
                        (g1 - g2).abs() <= bound + 1e-15,
                        "{} m={m}: |G(w1)-G(w2)| = {} > {}",
                        p.name(),
                        (g1 - g2).abs(),
                        bound
                    );
                }
            }
        }
    }
}

#[test]
fn converged_steps_are_fixed_points() {
    let reg = ProblemRegistry::standard();
    for entry in reg.iter() {
        let p = &entry.problem;
        for m in 1..=4 {
            let cfg = SioConfig::new(m, 0.1);
            let traj = solve(p, &cfg, 5).unwrap();
            for i in 0..5 {
                let step = &traj.steps[i];
                assert!(step.converged && step.residual <= cfg.fp_tol);
                let coeffs = p.taylor_coefficients(traj.times[i], traj.values[i], m).unwrap();
                let again = apply_operator(p, &coeffs, traj.times[i], 0.1, step.w_next, &cfg).unwrap();
                assert!((again - step.w_next).abs() <= 2.0 * cfg.fp_tol);
            }
        }
    }
}

#[test]
fn fixed_point_is_independent_of_iteration_cap() {
    let p = registry_problem("example3");
    let a = fixed_point_step(&p, 0.0, 1.0, &SioConfig::new(3, 0.1)).unwrap();
    let b = fixed_point_step(&p, 0.0, 1.0, &SioConfig::new(3, 0.1).with_max_fp_iters(500)).unwrap();
    assert_eq!(a.w_next, b.w_next);
}
