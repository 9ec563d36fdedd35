//! Bruhat intervals, inversion arrangements and chromatic polynomials of
//! permutations, with the map from decreasing chains of the intersection
//! lattice into the lower Bruhat interval.
//!
//! Permutations are 1-based and act on the right; see [`perm`].

pub mod arrangement;
pub mod bruhat;
pub mod chromatics;
pub mod error;
pub mod graph;
pub mod patterns;
pub mod permanent;
pub mod perm;
pub mod phi;
pub mod report;
pub mod verify;

pub use arrangement::{build_lattice, decreasing_chains, DecreasingChain, IntersectionLattice, SetPartition};
pub use bruhat::{bruhat_leq, interval_size, right_hull, RightHull};
pub use chromatics::{acyclic_orientations, chromatic_polynomial, IntPolynomial};
pub use error::{Error, Result};
pub use graph::Graph;
pub use patterns::{is_chromobruhatic, is_smooth};
pub use perm::{Permutation, ReducedExpression, Transposition, MAX_N};
pub use phi::{phi, PhiImage, PhiMap};
pub use report::{analyze, golden, Analysis, GoldenReport};
pub use verify::{run_check, Check, ExprRule, VerifyOptions, VerifyReport};
