//! Riemannian geometry of Z₂ᵏ-symmetric reductive homogeneous spaces.
//!
//! The built-in instance is the flag manifold SO(5)/SO(2)×SO(2)×SO(1) with
//! its four-parameter family of adapted metrics `(t, u, v, w)`.
//!
//! ```
//! use zksym::{Geometry, MetricParams};
//!
//! let p = MetricParams::new(1.0, 0.0, 1.0, 1.0).unwrap();
//! let geo = Geometry::so5(&p).unwrap();
//! assert!((geo.ricci()[(0, 0)] - 2.5).abs() < 1e-12);
//! ```

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cli;
pub mod closed_form;
pub mod geometry;
pub mod lie;
pub mod metric;
pub mod so5;

pub use analysis::{
    eval_star_system, infinitesimal_isometries, is_naturally_reductive, solve_ledger_u0,
    solve_ledger_unonzero, verify_solution, Branch, LedgerSolution, SolveError,
};
pub use geometry::{u_map, Geometry, GeometryError};
pub use lie::{AlgebraVector, GradedLieAlgebra, GradingLabel, LieError};
pub use metric::{
    build_form, orthonormal_frame, AdaptedForm, MetricError, MetricParams, OrthonormalFrame,
};
pub use so5::build_so5;
