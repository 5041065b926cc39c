//! Exact-arithmetic models of flat surfaces glued from rectangles.
//!
//! The crate decides, with no floating point anywhere in a verdict, whether
//! a translation-glued rectangle complex is a ramified covering of a torus
//! (and constructs the covering data when it is), traces its vertical and
//! horizontal geodesic flows into interval-exchange return maps and strip
//! decompositions, and validates and classifies branched-cover
//! configurations over products of elliptic curves.
//!
//! Modules:
//! - [`field`]: rationals and a fixed real quadratic field, exact signs,
//!   commensurability.
//! - [`surface`]: rectangle complexes, validation, cone-angle census,
//!   genus/area, period generators.
//! - [`cover`]: discreteness of period groups, the covering torus, the
//!   developing map and fiber counts.
//! - [`flow`]: north/east geodesic tracing, first-return maps,
//!   strip decompositions.
//! - [`pk`]: products of surfaces, branch configurations on product tori,
//!   direction census, product/non-product classification, local cube
//!   models, isogeny splittings.
//! - [`document`], [`report`], [`svg`]: the file formats, reports, and
//!   deterministic diagrams.

pub mod cover;
pub mod document;
pub mod field;
pub mod flow;
pub mod pk;
pub mod report;
pub mod samples;
pub mod surface;
pub mod svg;
pub mod zlattice;

pub use field::{FieldError, Quad, QuadField, Rational};
pub use surface::{RawSurface, ValidatedSurface, ValidationError};
