//! Division polynomials by the doubling recursion, primitive parts, and the
//! mu invariant read off the p-th division polynomial.
//!
//! Odd-index polynomials are stored y-free. Even-index polynomials carry an
//! implicit psi_2 factor: the stored xpart satisfies Psi_m = psi_2 * xpart,
//! and every occurrence of psi_2^2 in the recursion is rewritten as the
//! univariate cubic 4x^3 + b2 x^2 + 2 b4 x + b6. This is the representation
//! in which the recursion closes over univariate polynomials.

use std::collections::HashMap;

use crate::algebra::{ExtRational, FieldElement};
use crate::curve::CurveModel;
use crate::error::{Error, Result};
use crate::poly::Poly;

/// The univariate content of a division polynomial Psi_m.
///
/// For odd m the xpart is Psi_m itself: degree (m^2-1)/2, leading
/// coefficient m. For even m the true Psi_m equals psi_2 * xpart, with
/// deg(xpart) = (m^2-4)/2 and leading coefficient m/2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionPoly {
    pub m: u64,
    pub xpart: Poly,
    pub has_psi2_factor: bool,
}

/// psi_2^2 as a univariate polynomial: 4x^3 + b2 x^2 + 2 b4 x + b6.
pub fn psi2_squared(curve: &CurveModel) -> Poly {
    let desc = curve.descriptor();
    let two = FieldElement::from_int(desc, 2);
    Poly::new(
        desc,
        vec![
            curve.b6().clone(),
            two.mul(curve.b4()),
            curve.b2().clone(),
            FieldElement::from_int(desc, 4),
        ],
    )
}

struct PsiTable<'a> {
    curve: &'a CurveModel,
    w: Poly,
    memo: HashMap<u64, Poly>,
}

impl<'a> PsiTable<'a> {
    fn new(curve: &'a CurveModel) -> Self {
        PsiTable {
            curve,
            w: psi2_squared(curve),
            memo: HashMap::new(),
        }
    }

    fn base_psi3(&self) -> Poly {
        let c = self.curve;
        let desc = c.descriptor();
        let three = FieldElement::from_int(desc, 3);
        Poly::new(
            desc,
            vec![
                c.b8().clone(),
                three.mul(c.b6()),
                three.mul(c.b4()),
                c.b2().clone(),
                three,
            ],
        )
    }

    fn base_psi4_xpart(&self) -> Poly {
        let c = self.curve;
        let desc = c.descriptor();
        let five = FieldElement::from_int(desc, 5);
        let ten = FieldElement::from_int(desc, 10);
        Poly::new(
            desc,
            vec![
                c.b4().mul(c.b8()).sub(&c.b6().mul(c.b6())),
                c.b2().mul(c.b8()).sub(&c.b4().mul(c.b6())),
                ten.mul(c.b8()),
                ten.mul(c.b6()),
                five.mul(c.b4()),
                c.b2().clone(),
                FieldElement::from_int(desc, 2),
            ],
        )
    }

    /// The xpart of Psi_m (for odd m, Psi_m itself).
    fn xpart(&mut self, m: u64) -> Poly {
        assert!(m >= 1);
        if let Some(p) = self.memo.get(&m) {
            return p.clone();
        }
        let desc = self.curve.descriptor();
        let result = match m {
            1 => Poly::one(desc),
            2 => Poly::one(desc),
            3 => self.base_psi3(),
            4 => self.base_psi4_xpart(),
            _ if m % 2 == 1 => {
                // Psi_{2k+1} = Psi_{k+2} Psi_k^3 - Psi_{k-1} Psi_{k+1}^3
                let k = m / 2;
                let pk = self.xpart(k);
                let pk1 = self.xpart(k + 1);
                let pk2 = self.xpart(k + 2);
                let pkm1 = self.xpart(k - 1);
                let w2 = self.w.mul(&self.w);
                if k % 2 == 0 {
                    // psi_2^4 on the left term
                    w2.mul(&pk2).mul(&pk.pow3()).sub(&pkm1.mul(&pk1.pow3()))
                } else {
                    pk2.mul(&pk.pow3()).sub(&w2.mul(&pkm1).mul(&pk1.pow3()))
                }
            }
            _ => {
                // Psi_{2k} psi_2 = Psi_{k-1}^2 Psi_k Psi_{k+2} - Psi_{k-2} Psi_k Psi_{k+1}^2;
                // the psi_2 factors cancel identically in xpart form for
                // either parity of k.
                let k = m / 2;
                let pk = self.xpart(k);
                let pk1 = self.xpart(k + 1);
                let pk2 = self.xpart(k + 2);
                let pkm1 = self.xpart(k - 1);
                let pkm2 = self.xpart(k - 2);
                pkm1.mul(&pkm1)
                    .mul(&pk)
                    .mul(&pk2)
                    .sub(&pkm2.mul(&pk).mul(&pk1.mul(&pk1)))
            }
        };
        self.memo.insert(m, result.clone());
        result
    }
}

trait Pow3 {
    fn pow3(&self) -> Self;
}

impl Pow3 for Poly {
    fn pow3(&self) -> Poly {
        self.mul(self).mul(self)
    }
}

/// Compute Psi_m for the curve by the doubling recursion.
pub fn division_polynomial(curve: &CurveModel, m: u64) -> DivisionPoly {
    assert!(m >= 1, "division polynomial index must be positive");
    let mut table = PsiTable::new(curve);
    DivisionPoly {
        m,
        xpart: table.xpart(m),
        has_psi2_factor: m % 2 == 0,
    }
}

/// The primitive part Psi_{p^n} / Psi_{p^(n-1)}, whose roots are the
/// distinct x-coordinates of points of exact order p^n; leading
/// coefficient p. For p^n = 2 the psi_2 factor itself is the content, so
/// the univariate psi_2^2 cubic is returned instead.
pub fn primitive_part(curve: &CurveModel, p: u64, n: u32) -> Result<Poly> {
    assert!(n >= 1);
    if p == 2 && n == 1 {
        return Ok(psi2_squared(curve));
    }
    let mut table = PsiTable::new(curve);
    let num = table.xpart(p.pow(n));
    let den = table.xpart(p.pow(n - 1));
    num.exact_div(&den)
}

/// The mu invariant of a curve supersingular at the unique prime above p:
/// for odd p the valuation of the coefficient of x^((p^2-p)/2) in Psi_p,
/// for p = 2 the valuation of 4 a2 + a1^2, halved. Infinity when the
/// coefficient vanishes.
pub fn mu(curve: &CurveModel, p: u64) -> Result<ExtRational> {
    if !curve.is_supersingular_at(p)? {
        return Err(Error::NotSupersingular(format!(
            "mu is only defined for curves supersingular at {p}"
        )));
    }
    if p == 2 {
        // 4 a2 + a1^2 = b2
        return Ok(curve.b2().valuation(2)?.div_nat(2));
    }
    let psi_p = division_polynomial(curve, p);
    let idx = ((p * p - p) / 2) as usize;
    psi_p.xpart.coeff(idx).valuation(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldDescriptor, FieldElement};
    use crate::poly::newton_polygon;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn qq() -> FieldDescriptor {
        FieldDescriptor::rational()
    }

    fn curve_9tors() -> CurveModel {
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

    fn curve_121c2() -> CurveModel {
        let d = FieldDescriptor::radical(BigInt::from(11), 3).unwrap();
        let c = FieldElement::generator(&d);
        let c2 = c.mul(&c);
        let a6 = c
            .scale(&BigRational::from_integer(3.into()))
            .add(&FieldElement::from_int(&d, 2));
        CurveModel::new([c, c2, FieldElement::zero(&d), FieldElement::zero(&d), a6]).unwrap()
    }

    #[test]
    fn psi1_and_psi2() {
        let e = CurveModel::from_ints(&qq(), [0, 0, 0, 1, 0]).unwrap();
        let p1 = division_polynomial(&e, 1);
        assert_eq!(p1.xpart, Poly::one(&qq()));
        assert!(!p1.has_psi2_factor);
        let p2 = division_polynomial(&e, 2);
        assert_eq!(p2.xpart, Poly::one(&qq()));
        assert!(p2.has_psi2_factor);
    }

    #[test]
    fn psi3_short_form() {
        // y^2 = x^3 + A x + B gives Psi_3 = 3x^4 + 6A x^2 + 12B x - A^2.
        let a = 2i64;
        let b = 7i64;
        let e = CurveModel::from_ints(&qq(), [0, 0, 0, a, b]).unwrap();
        let psi3 = division_polynomial(&e, 3).xpart;
        assert_eq!(
            psi3,
            Poly::from_ints(&qq(), &[-a * a, 12 * b, 6 * a, 0, 3])
        );
    }

    #[test]
    fn psi3_of_9tors_curve() {
        // 3x^4 + (3^(2/5) + 4*3^(1/5)) x^3 + (3*3^(1/5) + 12) x^2 + 3x - 3^(1/5) - 4
        let e = curve_9tors();
        let d = e.descriptor().clone();
        let psi3 = division_polynomial(&e, 3).xpart;
        let g = |c: i64, i: usize| {
            FieldElement::radical_term(&d, BigRational::from_integer(c.into()), i)
        };
        let expected = Poly::new(
            &d,
            vec![
                g(-1, 1).add(&FieldElement::from_int(&d, -4)),
                FieldElement::from_int(&d, 3),
                g(3, 1).add(&FieldElement::from_int(&d, 12)),
                g(1, 2).add(&g(4, 1)),
                FieldElement::from_int(&d, 3),
            ],
        );
        assert_eq!(psi3, expected);
    }

    #[test]
    fn degree_and_leading_invariants() {
        let e = CurveModel::from_ints(&qq(), [1, 2, 3, 4, 5]).unwrap();
        for m in 1..=12u64 {
            let dp = division_polynomial(&e, m);
            if m % 2 == 1 {
                assert_eq!(dp.xpart.degree(), Some(((m * m - 1) / 2) as usize), "m={m}");
                assert_eq!(
                    *dp.xpart.leading().unwrap(),
                    FieldElement::from_int(&qq(), m as i64),
                    "m={m}"
                );
            } else {
                assert_eq!(dp.xpart.degree(), Some(((m * m - 4) / 2) as usize), "m={m}");
                assert_eq!(
                    *dp.xpart.leading().unwrap(),
                    FieldElement::from_int(&qq(), (m / 2) as i64),
                    "m={m}"
                );
            }
        }
    }

    #[test]
    fn primitive_part_basics() {
        let e = curve_9tors();
        // p = 3, n = 1 is Psi_3 itself.
        assert_eq!(
            primitive_part(&e, 3, 1).unwrap(),
            division_polynomial(&e, 3).xpart
        );
        // Psi_9 / Psi_3: degree 36, leading coefficient 3.
        let prim = primitive_part(&e, 3, 2).unwrap();
        assert_eq!(prim.degree(), Some(36));
        assert_eq!(
            *prim.leading().unwrap(),
            FieldElement::from_int(e.descriptor(), 3)
        );
    }

    #[test]
    fn primitive_part_at_two() {
        let e = CurveModel::from_ints(&qq(), [0, 1, 1, 0, 0]).unwrap(); // y^2+y = x^3+x^2
        // p^n = 2: the psi_2^2 cubic.
        let prim = primitive_part(&e, 2, 1).unwrap();
        assert_eq!(prim, psi2_squared(&e));
        assert_eq!(prim.degree(), Some(3));
        // n = 2: Psi_4 / Psi_2 = g4; degree 6, leading coefficient 2.
        let prim = primitive_part(&e, 2, 2).unwrap();
        assert_eq!(prim.degree(), Some(6));
        assert_eq!(
            *prim.leading().unwrap(),
            FieldElement::from_int(&qq(), 2)
        );
        // n = 3: degree (2^6 - 2^4)/2 = 24.
        let prim = primitive_part(&e, 2, 3).unwrap();
        assert_eq!(prim.degree(), Some(24));
    }

    #[test]
    fn mu_of_9tors_curve() {
        assert_eq!(mu(&curve_9tors(), 3).unwrap(), ExtRational::new(1, 5));
    }

    #[test]
    fn mu_of_121c2_curve() {
        assert_eq!(mu(&curve_121c2(), 11).unwrap(), ExtRational::new(1, 3));
    }

    #[test]
    fn mu_infinite_for_short_form_at_3() {
        let e = CurveModel::from_ints(&qq(), [0, 0, 0, 1, 0]).unwrap();
        assert_eq!(mu(&e, 3).unwrap(), ExtRational::Infinity);
    }

    #[test]
    fn mu_at_two() {
        // y^2 + y = x^3 + x^2: b2 = 4, mu = v(4)/2 = 1.
        let e = CurveModel::from_ints(&qq(), [0, 1, 1, 0, 0]).unwrap();
        assert_eq!(mu(&e, 2).unwrap(), ExtRational::from_int(1));
        // y^2 + y = x^3: b2 = 0, mu infinite.
        let e = CurveModel::from_ints(&qq(), [0, 0, 1, 0, 0]).unwrap();
        assert_eq!(mu(&e, 2).unwrap(), ExtRational::Infinity);
    }

    #[test]
    fn mu_requires_supersingularity() {
        // y^2 + y = x^3 - x is ordinary at 5.
        let e = CurveModel::from_ints(&qq(), [0, 0, 1, -1, 0]).unwrap();
        assert!(matches!(mu(&e, 5), Err(Error::NotSupersingular(_))));
    }

    #[test]
    fn constant_coefficient_valuation_vanishes() {
        // v(c0) = 0 for Psi_{p^n} on supersingular curves (odd p), and for
        // psi_2^2 * g_{2^n} at p = 2.
        let e9 = curve_9tors();
        for n in 1..=2u32 {
            let psi = division_polynomial(&e9, 3u64.pow(n));
            assert_eq!(
                psi.xpart.coeff(0).valuation(3).unwrap(),
                ExtRational::zero(),
                "n={n}"
            );
        }
        let e11 = curve_121c2();
        let psi = division_polynomial(&e11, 11);
        assert_eq!(psi.xpart.coeff(0).valuation(11).unwrap(), ExtRational::zero());

        let e2 = CurveModel::from_ints(&qq(), [0, 1, 1, 0, 0]).unwrap();
        for n in 1..=2u32 {
            let g = division_polynomial(&e2, 2u64.pow(n)).xpart;
            let full = psi2_squared(&e2).mul(&g); // psi_2 * Psi_{2^n}, univariate
            assert_eq!(
                full.coeff(0).valuation(2).unwrap(),
                ExtRational::zero(),
                "n={n}"
            );
        }
    }

    #[test]
    fn root_valuations_sum_to_minus_one() {
        // Sum over segments of slope*length on the primitive part equals
        // v(lead) - v(first); root sum is the negative of that.
        let e = curve_9tors();
        for n in 1..=2u32 {
            let prim = primitive_part(&e, 3, n).unwrap();
            let np = newton_polygon(&prim, 3).unwrap();
            let root_sum: BigRational = np
                .root_valuations()
                .iter()
                .map(|(v, l)| v * BigRational::from_integer(BigInt::from(*l)))
                .sum();
            assert_eq!(root_sum, BigRational::from_integer(BigInt::from(-1)), "n={n}");
        }
        // p^n = 2: the sum is -2.
        let e = CurveModel::from_ints(&qq(), [0, 1, 1, 0, 0]).unwrap();
        let np = newton_polygon(&primitive_part(&e, 2, 1).unwrap(), 2).unwrap();
        let root_sum: BigRational = np
            .root_valuations()
            .iter()
            .map(|(v, l)| v * BigRational::from_integer(BigInt::from(*l)))
            .sum();
        assert_eq!(root_sum, BigRational::from_integer(BigInt::from(-2)));
    }

    #[test]
    fn primitive_part_degree_formula() {
        let e = CurveModel::from_ints(&qq(), [0, 0, 0, 1, 0]).unwrap();
        for (p, n) in [(3u64, 1u32), (3, 2), (5, 1)] {
            let prim = primitive_part(&e, p, n).unwrap();
            let expected = (p.pow(2 * n) - p.pow(2 * n - 2)) / 2;
            assert_eq!(prim.degree(), Some(expected as usize), "p={p} n={n}");
            assert_eq!(
                *prim.leading().unwrap(),
                FieldElement::from_int(&qq(), p as i64)
            );
        }
    }
}
