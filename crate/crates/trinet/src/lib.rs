//! Exact counting of convex polygons in a triangular net.
//!
//! An order-`n` triangular net is an equilateral triangle whose sides are each
//! divided into `n` equal parts, with every dividing point joined to its
//! partners by segments parallel to the sides. Any convex polygon whose edges
//! all run along net segments has between three and six edges, and this crate
//! counts such polygons three independent ways:
//!
//! * closed-form parity-split polynomials for pentagons and hexagons
//!   ([`formulas`]),
//! * an order-2 linear recurrence with forcing terms, telescoped iteratively
//!   ([`formulas::Order2Recurrence`]),
//! * brute-force enumeration of canonical bound sextuples that streams every
//!   polygon of every class ([`oracle`]).
//!
//! The [`validation`] module cross-checks the three routes for every `n` in a
//! range and emits machine-readable agreement reports. The `trinet` binary
//! exposes counts, sequences, polygon dumps and verification on the command
//! line.
//!
//! All arithmetic is exact: coordinates and angles are integers, counts are
//! 128-bit integers with checked overflow, and every rational prefactor in a
//! closed form is applied as a multiply-then-exact-divide with the remainder
//! asserted zero.

pub mod formulas;
pub mod net;
pub mod oracle;
pub mod validation;

pub use formulas::{ExactCount, Order2Recurrence, ParityForm};
pub use net::{EdgeDirection, Family, GridLine, NetSize, PlanarPoint, Side, TriCoord};
pub use oracle::{BoundSextuple, CountTable, LatticePolygon, PolygonClass, SideTouches};
pub use validation::{CountRecord, VerificationReport};

use std::fmt;

/// Error type for coordinate, vertex and region validation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Error {
    /// The net order was zero; a net has at least one part per side.
    InvalidNetSize,
    /// A coordinate triple does not sum to the net order.
    InvalidCoord {
        alpha: u32,
        beta: u32,
        gamma: u32,
        n: u32,
    },
    /// Consecutive edge directions are collinear or reversing, so no polygon
    /// vertex exists between them.
    DegenerateVertex { prev: u8, next: u8 },
    /// A bound sextuple violates its invariants or cuts the region down to a
    /// point or segment instead of a polygon of positive area.
    DegenerateRegion,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Error::InvalidNetSize => write!(f, "net order must be at least 1"),
            Error::InvalidCoord {
                alpha,
                beta,
                gamma,
                n,
            } => write!(
                f,
                "coordinates ({alpha}, {beta}, {gamma}) do not sum to net order {n}"
            ),
            Error::DegenerateVertex { prev, next } => write!(
                f,
                "directions {prev} -> {next} are collinear or reversing; no vertex angle"
            ),
            Error::DegenerateRegion => {
                write!(f, "bound sextuple does not describe a polygon of positive area")
            }
        }
    }
}

impl std::error::Error for Error {}
