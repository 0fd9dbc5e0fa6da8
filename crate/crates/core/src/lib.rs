//! Exact computation of k-leaky double Hurwitz descendants by enumerating
//! tropical leaky covers with psi-conditions.
//!
//! ```
//! use leaky::{compute_h, FixtureOracle, Problem};
//!
//! let p = Problem::new(1, 1, vec![7, -3, -1], vec![1, 0, 0]);
//! let h = compute_h(&p, &FixtureOracle::builtin()).unwrap();
//! assert_eq!(h.to_string(), "51/4");
//! ```

pub mod arith;
pub mod chambers;
pub mod cover;
pub mod enumerate;
pub mod intersect;
pub mod oracle;

pub use arith::{rat, LinForm, Poly, Rational};
pub use chambers::{chamber_polynomial, classify, walls, wall_crossing, wall_crossing_formula, Vanishing, Wall};
pub use cover::{check_cover, CoverGraph, Problem, WeightedCover};
pub use enumerate::{compute_h, enumerate_covers, EnumerationError};
pub use intersect::{psi_integral, psi_kappa_integral, recursion_rhs};
pub use oracle::{FixtureOracle, FixtureTable, VertexKey, VertexOracle};
