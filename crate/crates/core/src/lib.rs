//! Solvers for second-order boundary value problems
//!
//! ```text
//! (φ(u'))' = f(t, u, u'),   t ∈ [0, T]
//! ```
//!
//! where `φ: ℝ → (−a, a)` is a bounded increasing homeomorphism with `φ(0) = 0`
//! (the mean-curvature operator `s/√(1+s²)` being the model case), under one of
//! three three-point boundary conditions:
//!
//! * `P1`:       `u(0) = u'(0) = u'(T)`
//! * `P1Tilde`:  `u(T) = u'(0) = u'(T)`
//! * `P2`:       `u(0) = u(T) = u'(T)`
//!
//! The crate is organised around the integral fixed-point operators whose fixed
//! points are exactly the solutions ([`operators`]), a priori bounds and
//! sampled hypothesis checks ([`hypotheses`]), a planar Brouwer degree via
//! winding numbers ([`degree`]), and two independent solution routes
//! ([`solver`]): λ-continuation on the fixed-point operators and RK4 shooting.
//!
//! Data-parallel inner loops (sampling, multistart scans, boundary winding) run
//! on rayon when the `parallel` feature is enabled; every such loop also has a
//! sequential path selected through [`Execution`].

pub mod cli;
pub mod degree;
pub mod error;
pub mod expr;
pub mod grid;
pub mod homeo;
pub mod hypotheses;
pub mod operators;
pub mod par;
pub mod problem_file;
pub mod solver;

pub use error::{BvpError, Result};
pub use grid::{Grid, GridFunction};
pub use homeo::{Direction, Homeomorphism};
pub use operators::{BoundaryCondition, ProblemSpec, Residuals, RightHandSide};
pub use par::Execution;
