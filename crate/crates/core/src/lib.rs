//! Exact-arithmetic toolkit for supersingular elliptic curves.
//!
//! Given a Weierstrass model supersingular at the unique prime above p,
//! this crate computes the canonical-subgroup invariant mu from the p-th
//! division polynomial, classifies the valuations of all p^n-torsion
//! points, derives the ramification those valuations force, and decides
//! when the curve's j-invariant cannot correspond to a sporadic point on
//! the modular curve X_1(N).
//!
//! Everything is exact: valuations are rationals (or infinity), all
//! comparisons are rational comparisons, and no floating point appears
//! anywhere.
//!
//! Module map:
//! - [`algebra`]: rationals with infinity, radical fields Q(r^(1/e)),
//!   unique p-adic valuation extensions
//! - [`poly`]: polynomials over field elements, exact division, Newton
//!   polygons, the reciprocal Eisenstein test
//! - [`curve`]: Weierstrass models, reduction, the supersingularity test
//! - [`divpoly`]: division polynomials, primitive parts, the mu invariant
//! - [`formal`]: the formal group as an independent oracle
//! - [`spectrum`]: closed-form torsion valuation spectra and ramification
//! - [`sporadic`]: degree gates against the gonality bound of X_1(N)
//! - [`jsonio`]: the JSON wire formats used by the CLI

pub mod algebra;
pub mod curve;
#[cfg(test)]
pub(crate) mod testcurves;
pub mod divpoly;
pub mod error;
pub mod formal;
pub mod jsonio;
pub mod poly;
pub mod spectrum;
pub mod sporadic;
pub mod svg;

pub use algebra::{ExtRational, FieldDescriptor, FieldElement};
pub use curve::CurveModel;
pub use divpoly::{division_polynomial, mu, primitive_part, psi2_squared, DivisionPoly};
pub use error::{Error, Result};
pub use formal::{
    fiber_tower_spectrum, fiber_valuations, formal_expansion, multiplication_series, FormalSeries,
};
pub use poly::{newton_polygon, reciprocal_eisenstein, NewtonPolygon, Poly};
pub use spectrum::{
    canonical_regime, minimal_torsion_field_degree, ramification_bounds, torsion_spectrum,
    x_coordinate_spectrum, CanonicalRegime, RamificationReport, SpectrumEntry, ValuationSpectrum,
};
pub use sporadic::{
    composite_gate, custom_gate, gonality_upper_bound, primepower_gate, Decision, GateCase,
    GonalityBound, JClass, SporadicVerdict,
};
