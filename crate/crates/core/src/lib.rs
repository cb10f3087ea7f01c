//! Exact symbolic computation in the first Weyl algebra `A_1 = K<X,Y> / (YX - XY - 1)`.
//!
//! Everything is computed over the rationals with arbitrary precision; there is
//! no floating-point mode. The crate provides normal-form arithmetic in `A_1`,
//! the coefficient-preserving exchange with the commutative ring `K[x,y]`,
//! valuations and leading terms along lattice directions, Newton polygons,
//! univariate power-support analytics, and a screening pipeline that classifies
//! elements against the known necessary conditions for Dixmier counterexamples.

pub mod error;
pub mod lattice;
pub mod oracle;
pub mod scalar;
pub mod screen;
pub mod support;
mod terms;
pub mod unipoly;
pub mod weyl;

pub use error::{Error, Result};
pub use lattice::{Direction, LatticePoint};
pub use scalar::Scalar;
pub use support::{
    bracket_rs, dir_set, edge_polynomial, is_homogeneous, is_subrectangular, leading,
    newton_polygon, st_en, st_en_by_walk, succ_pred, valuation, EdgePoly, NewtonPolygon,
    Valuation,
};
pub use unipoly::UniPoly;
pub use weyl::{CommPoly, WeylElement};
