//! Spline-integral operator (SIO) solver for scalar initial value problems
//! `y' = f(t, y)`, `y(t0) = y0`.
//!
//! Each step fits a degree-`m` polynomial whose first `m` Taylor
//! coefficients match the solution at the left node and whose right-end
//! value `w` is free, then finds the `w` that reproduces itself through the
//! integral form of the ODE. The resulting one-step method has order `m + 1`.
//!
//! - [`series`]: truncated power series and Taylor-mode derivative extraction.
//! - [`spline`]: the single-step polynomial.
//! - [`quadrature`]: tabulated Gauss-Legendre rules.
//! - [`sio`]: the operator, its fixed-point iteration and the stepping loop.
//! - [`reference`]: Taylor methods and the benchmark problems.
//! - [`stability`]: amplification factors and stability-region grids.
//!
//! ```
//! use sio_core::reference::ProblemRegistry;
//! use sio_core::sio::{solve, SioConfig};
//!
//! let registry = ProblemRegistry::standard();
//! let problem = &registry.get("example3").unwrap().problem;
//! let traj = solve(problem, &SioConfig::new(3, 0.1), 5).unwrap();
//! let err = (traj.final_value() - problem.exact(0.5).unwrap()).abs();
//! assert!(err < 3e-8);
//! ```

pub mod complex;
pub mod error;
pub mod quadrature;
pub mod reference;
pub mod series;
pub mod sio;
pub mod spline;
pub mod stability;

pub use error::{Error, Result};
