//! Shared fixture curves for unit tests.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{FieldDescriptor, FieldElement};
use crate::curve::CurveModel;

/// The 121c2 model over Q(11^(1/3)), j = -11 * 131^3, discriminant -1:
/// y^2 + c xy = x^3 + c^2 x^2 + 3c x + 2 with c = 11^(1/3).
pub(crate) fn curve_121c2() -> CurveModel {
    let d = FieldDescriptor::radical(BigInt::from(11), 3).unwrap();
    let c = FieldElement::generator(&d);
    let c2 = c.mul(&c);
    let a4 = c.scale(&BigRational::from_integer(3.into()));
    CurveModel::new([
        c,
        c2,
        FieldElement::zero(&d),
        a4,
        FieldElement::from_int(&d, 2),
    ])
    .unwrap()
}

/// y^2 + c xy + y = x^3 + c x^2 + 2x over Q(3^(1/5)), c = 3^(1/5).
pub(crate) fn curve_9tors() -> CurveModel {
    let d = FieldDescriptor::radical(BigInt::from(3), 5).unwrap();
    let c = FieldElement::generator(&d);
    CurveModel::new([
        c.clone(),
        c,
        FieldElement::one(&d),
        FieldElement::from_int(&d, 2),
        FieldElement::zero(&d),
    ])
    .unwrap()
}

/// y^2 + sqrt(2) xy + y = x^3 over Q(sqrt 2): supersingular at the prime
/// above 2 with mu = 1/2, so a canonical subgroup exists.
pub(crate) fn curve_sqrt2_canonical() -> CurveModel {
    let d = FieldDescriptor::radical(BigInt::from(2), 2).unwrap();
    CurveModel::new([
        FieldElement::generator(&d),
        FieldElement::zero(&d),
        FieldElement::one(&d),
        FieldElement::zero(&d),
        FieldElement::zero(&d),
    ])
    .unwrap()
}
