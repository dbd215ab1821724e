//! Exact direction-cover spectra and point–line duality in the plane.
//!
//! Geometry is generic over a [`Scalar`] coordinate domain. Two domains are
//! provided: arbitrary-precision rationals and the cyclotomic fields Q(ζₙ),
//! which hold the exact vertex coordinates of regular polygons. The crate
//! computes the set I(Q) of cover sizes of a point set by parallel lines,
//! the vertical stab counts of a line family, and builds families of
//! n ≥ 7 non-vertical, pairwise non-parallel, non-concurrent lines that no
//! vertical line meets in exactly n − 1 or n − 2 points.

mod approx;
pub mod counterexample;
pub mod cyclotomic;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod io;
pub mod polygon;
pub mod rational;
pub mod scalar;
pub mod spectrum;
mod union_find;

pub use cyclotomic::{cyclotomic_poly, CycloElement, CyclotomicField};
pub use error::{CounterexampleError, FieldError, GeometryError, ParseError, PolygonError};
pub use geometry::{AffineMap, Direction, NonVerticalLine, Point};
pub use scalar::Scalar;
pub use spectrum::{LinePartition, SpectrumReport};

/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rational = num_rational::BigRational;

pub type RationalPoint = Point<Rational>;
pub type RationalLine = NonVerticalLine<Rational>;
pub type RationalDirection = Direction<Rational>;
pub type CycloPoint = Point<CycloElement>;
pub type CycloLine = NonVerticalLine<CycloElement>;
pub type CycloDirection = Direction<CycloElement>;
