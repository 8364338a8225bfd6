//! Exact computation of the quadratically enriched logarithmic zeta function
//! of a variety over a finite field, with coefficients in `GW(F_q)`.
//!
//! The crate is organized bottom-up: [`gw`] holds the Grothendieck–Witt
//! rings, [`series`] the polynomial/series/matrix layer over any
//! [`ring::CoefficientRing`], [`varieties`] the point-count providers and
//! [`zeta`] the enriched pipeline built on top of them.

pub mod arith;
pub mod gw;
pub mod ring;
pub mod series;
pub mod varieties;
pub mod zeta;

pub use gw::{FqTag, GwError, GwFq, GwInt};
pub use ring::{CoefficientRing, GwFqRing, GwIntRing, IntegerRing};
pub use series::{Poly, RingMatrix, Series, SeriesError};
pub use varieties::{CellData, PointCountSource, VarietyError};
