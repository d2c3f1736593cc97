#![allow(dead_code)]

use sio_core::reference::ProblemRegistry;
use sio_core::sio::{solve, IvpProblem, SioConfig};

pub fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// k-th central difference of `f` around `t` with step `h`.
pub fn central_difference(f: &dyn Fn(f64) -> f64, t: f64, k: usize, h: f64) -> f64 {
    let sum: f64 = (0..=k)
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * binomial(k, j) * f(t + (k as f64 / 2.0 - j as f64) * h)
        })
        .sum();
    sum / h.powi(k as i32)
}

/// Two Richardson levels on central differences, swept over step sizes; the
/// estimate whose neighbour agrees best is returned.
pub fn fd_derivative(f: &dyn Fn(f64) -> f64, t: f64, k: usize, h_max: f64) -> f64 {
    let richardson = |h: f64| {
        let d1 = central_difference(f, t, k, h);
        let d2 = central_difference(f, t, k, h / 2.0);
        let d3 = central_difference(f, t, k, h / 4.0);
        let r1 = (4.0 * d2 - d1) / 3.0;
        let r2 = (4.0 * d3 - d2) / 3.0;
        (16.0 * r2 - r1) / 15.0
    };
    let estimates: Vec<f64> = (0..30).map(|i| richardson(h_max * 0.7f64.powi(i))).collect();
    let best = (0..estimates.len() - 1)
        .min_by(|&a, &b| {
            let da = (estimates[a] - estimates[a + 1]).abs();
            let db = (estimates[b] - estimates[b + 1]).abs();
            da.partial_cmp(&db).unwrap()
        })
        .unwrap();
    estimates[best]
}

pub fn registry_problem(name: &str) -> IvpProblem {
    ProblemRegistry::standard().get(name).unwrap().problem.clone()
}

/// End-point error of an SIO run over `[t0, t0 + n h]` with the registry's
/// closed-form integral when `closed_form` is set.
pub fn sio_end_error(name: &str, m: usize, h: f64, n_steps: usize, closed_form: bool) -> f64 {
    let reg = ProblemRegistry::standard();
    let entry = reg.get(name).unwrap();
    let mut cfg = SioConfig::new(m, h);
    if closed_form {
        cfg = cfg.with_closed_form(entry.step_integral.clone());
    }
    let traj = solve(&entry.problem, &cfg, n_steps).unwrap();
    (traj.final_value() - entry.problem.exact(traj.final_time()).unwrap()).abs()
}

pub fn log2_ratio(a: f64, b: f64) -> f64 {
    (a / b).log2()
}
