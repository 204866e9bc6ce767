//! Weierstrass curve models: b-invariants, discriminant, reduction at the
//! prime above p, and the supersingularity test.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::algebra::{ExtRational, FieldDescriptor, FieldElement};
use crate::error::{Error, Result};
use crate::poly::Poly;

/// A long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
/// with exact coefficients, together with its b-invariants and discriminant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveModel {
    a1: FieldElement,
    a2: FieldElement,
    a3: FieldElement,
    a4: FieldElement,
    a6: FieldElement,
    b2: FieldElement,
    b4: FieldElement,
    b6: FieldElement,
    b8: FieldElement,
    disc: FieldElement,
}

impl CurveModel {
    /// Build a model from [a1, a2, a3, a4, a6]; rejects singular models.
    pub fn new(a: [FieldElement; 5]) -> Result<CurveModel> {
        let [a1, a2, a3, a4, a6] = a;
        let desc = a1.descriptor().clone();
        for ai in [&a2, &a3, &a4, &a6] {
            if *ai.descriptor() != desc {
                return Err(Error::InvalidInput(
                    "a-invariants must share one field descriptor".to_string(),
                ));
            }
        }
        let two = FieldElement::from_int(&desc, 2);
        let four = FieldElement::from_int(&desc, 4);
        let b2 = a1.mul(&a1).add(&four.mul(&a2));
        let b4 = two.mul(&a4).add(&a1.mul(&a3));
        let b6 = a3.mul(&a3).add(&four.mul(&a6));
        let b8 = a1
            .mul(&a1)
            .mul(&a6)
            .add(&four.mul(&a2).mul(&a6))
            .sub(&a1.mul(&a3).mul(&a4))
            .add(&a2.mul(&a3).mul(&a3))
            .sub(&a4.mul(&a4));
        // Standard identity 4*b8 = b2*b6 - b4^2.
        assert!(
            four.mul(&b8) == b2.mul(&b6).sub(&b4.mul(&b4)),
            "b-invariant identity failed"
        );
        let disc = b2
            .mul(&b2)
            .mul(&b8)
            .neg()
            .sub(&FieldElement::from_int(&desc, 8).mul(&b4.pow(3)))
            .sub(&FieldElement::from_int(&desc, 27).mul(&b6.mul(&b6)))
            .add(&FieldElement::from_int(&desc, 9).mul(&b2).mul(&b4).mul(&b6));
        if disc.is_zero() {
            return Err(Error::InvalidInput(
                "singular model: discriminant is zero".to_string(),
            ));
        }
        Ok(CurveModel {
            a1,
            a2,
            a3,
            a4,
            a6,
            b2,
            b4,
            b6,
            b8,
            disc,
        })
    }

    pub fn from_ints(desc: &FieldDescriptor, a: [i64; 5]) -> Result<CurveModel> {
        let [a1, a2, a3, a4, a6] = a;
        CurveModel::new([
            FieldElement::from_int(desc, a1),
            FieldElement::from_int(desc, a2),
            FieldElement::from_int(desc, a3),
            FieldElement::from_int(desc, a4),
            FieldElement::from_int(desc, a6),
        ])
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        self.a1.descriptor()
    }

    pub fn a_invariants(&self) -> [&FieldElement; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    pub fn a1(&self) -> &FieldElement {
        &self.a1
    }
    pub fn a2(&self) -> &FieldElement {
        &self.a2
    }
    pub fn a3(&self) -> &FieldElement {
        &self.a3
    }
    pub fn a4(&self) -> &FieldElement {
        &self.a4
    }
    pub fn a6(&self) -> &FieldElement {
        &self.a6
    }
    pub fn b2(&self) -> &FieldElement {
        &self.b2
    }
    pub fn b4(&self) -> &FieldElement {
        &self.b4
    }
    pub fn b6(&self) -> &FieldElement {
        &self.b6
    }
    pub fn b8(&self) -> &FieldElement {
        &self.b8
    }
    pub fn discriminant(&self) -> &FieldElement {
        &self.disc
    }

    pub fn is_short_form(&self) -> bool {
        self.a1.is_zero() && self.a2.is_zero() && self.a3.is_zero()
    }

    fn require_integral(&self, p: u64) -> Result<()> {
        for (name, ai) in [
            ("a1", &self.a1),
            ("a2", &self.a2),
            ("a3", &self.a3),
            ("a4", &self.a4),
            ("a6", &self.a6),
        ] {
            if ai.valuation(p)? < ExtRational::zero() {
                return Err(Error::NonIntegralModel(format!(
                    "{name} has negative valuation at {p}"
                )));
            }
        }
        Ok(())
    }

    /// True iff the model is integral at p and v(disc) = 0.
    pub fn has_good_reduction(&self, p: u64) -> Result<bool> {
        self.require_integral(p)?;
        Ok(self.disc.valuation(p)? == ExtRational::zero())
    }

    /// Reduce one integral coefficient into the residue field F_p: the
    /// radical basis terms have positive (fractional) valuation and vanish,
    /// so the image is the rational part mod p.
    fn reduce_coefficient(c: &FieldElement, p: u64) -> u64 {
        let q = c.rational_part();
        let pb = BigInt::from(p);
        let num = q.numer().mod_floor(&pb);
        let den = q.denom().mod_floor(&pb);
        let den_inv = mod_inverse(&den, &pb).expect("denominator is a unit mod p");
        let val = (num * den_inv).mod_floor(&pb);
        u64::try_from(val).expect("residue fits in u64")
    }

    /// Supersingularity at the unique prime above p, by reduction to F_p
    /// and a brute-force point count: supersingular iff the Frobenius trace
    /// t = p + 1 - #E(F_p) satisfies t = 0 (mod p).
    pub fn is_supersingular_at(&self, p: u64) -> Result<bool> {
        if !self.has_good_reduction(p)? {
            return Err(Error::PreconditionViolated(format!(
                "model does not have good reduction at {p}"
            )));
        }
        // The unique-extension condition makes the residue field F_p; check
        // it by asking for a valuation once.
        self.a1.valuation(p)?;
        let a1 = Self::reduce_coefficient(&self.a1, p);
        let a2 = Self::reduce_coefficient(&self.a2, p);
        let a3 = Self::reduce_coefficient(&self.a3, p);
        let a4 = Self::reduce_coefficient(&self.a4, p);
        let a6 = Self::reduce_coefficient(&self.a6, p);
        let count = 1 + count_affine_points(p, [a1, a2, a3, a4, a6]);
        let trace = (p as i128) + 1 - (count as i128);
        Ok(trace.rem_euclid(p as i128) == 0)
    }

    /// The coefficient of x^(p-1) in (x^3 + a4 x + a6)^((p-1)/2), for an
    /// odd prime p and a short-form model.
    pub fn deuring_coefficient(&self, p: u64) -> Result<FieldElement> {
        if !self.is_short_form() {
            return Err(Error::NotShortForm);
        }
        if p % 2 == 0 {
            return Err(Error::InvalidInput(
                "the Deuring coefficient needs an odd prime".to_string(),
            ));
        }
        let desc = self.descriptor();
        let f = Poly::new(
            desc,
            vec![
                self.a6.clone(),
                self.a4.clone(),
                FieldElement::zero(desc),
                FieldElement::one(desc),
            ],
        );
        let mut pw = Poly::one(desc);
        for _ in 0..(p - 1) / 2 {
            pw = pw.mul(&f);
        }
        Ok(pw.coeff((p - 1) as usize))
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let ext = a.extended_gcd(m);
    if !ext.gcd.is_one() {
        return None;
    }
    Some(ext.x.mod_floor(m))
}

fn count_affine_points(p: u64, a: [u64; 5]) -> u64 {
    let [a1, a2, a3, a4, a6] = a.map(|x| x as u128);
    let p = p as u128;
    let mut count = 0u64;
    for x in 0..p {
        let rhs = (x * x % p * x + a2 * x % p * x + a4 * x + a6) % p;
        for y in 0..p {
            let lhs = (y * y + a1 * x % p * y + a3 * y) % p;
            if lhs == rhs {
                count += 1;
            }
        }
    }
    count
}
