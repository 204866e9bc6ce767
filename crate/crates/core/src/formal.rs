//! The formal group of a Weierstrass curve as an independent oracle:
//! truncated power series, the formal logarithm and exponential, the
//! multiplication-by-m series, and Newton-polygon analysis of the fibers
//! of multiplication by p.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::algebra::{ExtRational, FieldDescriptor, FieldElement};
use crate::curve::CurveModel;
use crate::error::{Error, Result};
use crate::poly::NewtonPolygon;

/// A truncated power series: coefficient k is defined for k < precision,
/// undefined beyond. Operations track the minimum precision of their
/// operands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSeries {
    desc: FieldDescriptor,
    coeffs: Vec<FieldElement>,
}

impl FormalSeries {
    pub fn new(desc: &FieldDescriptor, mut coeffs: Vec<FieldElement>, precision: usize) -> Self {
        assert!(coeffs.len() <= precision);
        coeffs.resize(precision, FieldElement::zero(desc));
        FormalSeries {
            desc: desc.clone(),
            coeffs,
        }
    }

    pub fn zero(desc: &FieldDescriptor, precision: usize) -> Self {
        FormalSeries::new(desc, Vec::new(), precision)
    }

    /// c * T^k
    pub fn monomial(c: FieldElement, k: usize, precision: usize) -> Self {
        let desc = c.descriptor().clone();
        let mut coeffs = vec![FieldElement::zero(&desc); precision];
        if k < precision {
            coeffs[k] = c;
        }
        FormalSeries { desc, coeffs }
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.desc
    }

    pub fn coeff(&self, k: usize) -> &FieldElement {
        assert!(k < self.precision(), "coefficient beyond precision");
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn truncate(&self, precision: usize) -> FormalSeries {
        assert!(precision <= self.precision());
        FormalSeries {
            desc: self.desc.clone(),
            coeffs: self.coeffs[..precision].to_vec(),
        }
    }

    pub fn add(&self, other: &FormalSeries) -> FormalSeries {
        let prec = self.precision().min(other.precision());
        let coeffs = (0..prec)
            .map(|k| self.coeffs[k].add(&other.coeffs[k]))
            .collect();
        FormalSeries {
            desc: self.desc.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &FormalSeries) -> FormalSeries {
        let prec = self.precision().min(other.precision());
        let coeffs = (0..prec)
            .map(|k| self.coeffs[k].sub(&other.coeffs[k]))
            .collect();
        FormalSeries {
            desc: self.desc.clone(),
            coeffs,
        }
    }

    pub fn mul(&self, other: &FormalSeries) -> FormalSeries {
        let prec = self.precision().min(other.precision());
        let mut out = vec![FieldElement::zero(&self.desc); prec];
        for (i, a) in self.coeffs.iter().enumerate().take(prec) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(prec - i) {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        FormalSeries {
            desc: self.desc.clone(),
            coeffs: out,
        }
    }

    pub fn scale(&self, c: &FieldElement) -> FormalSeries {
        FormalSeries {
            desc: self.desc.clone(),
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
        }
    }

    pub fn scale_int(&self, m: i64) -> FormalSeries {
        self.scale(&FieldElement::from_int(&self.desc, m))
    }

    /// Multiply by T^k, keeping the precision.
    pub fn shift_up(&self, k: usize) -> FormalSeries {
        let prec = self.precision();
        let mut coeffs = vec![FieldElement::zero(&self.desc); prec];
        for i in 0..prec.saturating_sub(k) {
            coeffs[i + k] = self.coeffs[i].clone();
        }
        FormalSeries {
            desc: self.desc.clone(),
            coeffs,
        }
    }

    /// Divide by T^k; the first k coefficients must be zero. Precision
    /// drops by k.
    pub fn shift_down(&self, k: usize) -> FormalSeries {
        assert!(self.coeffs[..k].iter().all(|c| c.is_zero()));
        FormalSeries {
            desc: self.desc.clone(),
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    /// Multiplicative inverse of a series with invertible constant term.
    pub fn invert_unit(&self) -> Result<FormalSeries> {
        let c0_inv = self.coeffs[0].invert()?;
        let prec = self.precision();
        let mut out = vec![FieldElement::zero(&self.desc); prec];
        out[0] = c0_inv.clone();
        for k in 1..prec {
            let mut acc = FieldElement::zero(&self.desc);
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc = acc.add(&self.coeffs[i].mul(&out[k - i]));
                }
            }
            out[k] = acc.neg().mul(&c0_inv);
        }
        Ok(FormalSeries {
            desc: self.desc.clone(),
            coeffs: out,
        })
    }

    /// Substitute `inner` (zero constant term) into `self`.
    pub fn compose(&self, inner: &FormalSeries) -> FormalSeries {
        assert!(
            inner.coeffs[0].is_zero(),
            "composition needs a zero constant term"
        );
        let prec = self.precision().min(inner.precision());
        let mut res = FormalSeries::monomial(self.coeffs[prec - 1].clone(), 0, prec);
        for k in (0..prec - 1).rev() {
            res = res.mul(inner);
            res.coeffs[0] = res.coeffs[0].add(&self.coeffs[k]);
        }
        res
    }

    /// Termwise antiderivative with zero constant term; precision grows
    /// by one.
    pub fn integrate(&self) -> FormalSeries {
        let prec = self.precision();
        let mut out = vec![FieldElement::zero(&self.desc); prec + 1];
        for k in 0..prec {
            let inv = BigRational::new(BigInt::one(), BigInt::from(k as u64 + 1));
            out[k + 1] = self.coeffs[k].scale(&inv);
        }
        FormalSeries {
            desc: self.desc.clone(),
            coeffs: out,
        }
    }

    /// Compositional inverse of a series T + O(T^2), by Lagrange
    /// inversion: the k-th coefficient is [T^(k-1)] (T/f)^k / k.
    pub fn reversion(&self) -> Result<FormalSeries> {
        if self.precision() < 2 {
            return Err(Error::PrecisionTooLow(
                "reversion needs at least two coefficients".to_string(),
            ));
        }
        assert!(self.coeffs[0].is_zero(), "reversion needs zero constant term");
        if self.coeffs[1].is_zero() {
            return Err(Error::InvalidInput(
                "reversion needs an invertible linear coefficient".to_string(),
            ));
        }
        let prec = self.precision();
        let unit = self.shift_down(1); // f/T
        let h = unit.invert_unit()?; // T/f
        let mut out = vec![FieldElement::zero(&self.desc); prec];
        let mut hk = h.clone();
        for k in 1..prec {
            let inv_k = BigRational::new(BigInt::one(), BigInt::from(k as u64));
            out[k] = hk.coeff(k - 1).scale(&inv_k);
            if k + 1 < prec {
                hk = hk.mul(&h);
            }
        }
        Ok(FormalSeries {
            desc: self.desc.clone(),
            coeffs: out,
        })
    }
}

/// The formal expansion of the curve: the series w(z) with x = z/w and
/// y = -1/w satisfying the curve equation, and the formal logarithm
/// (integral of the invariant differential, normalized log'(0) = 1).
pub fn formal_expansion(
    curve: &CurveModel,
    precision: usize,
) -> Result<(FormalSeries, FormalSeries)> {
    if precision < 4 {
        return Err(Error::PrecisionTooLow(
            "formal expansion needs precision >= 4".to_string(),
        ));
    }
    let desc = curve.descriptor();
    let wprec = precision + 3;
    let z3 = FormalSeries::monomial(FieldElement::one(desc), 3, wprec);
    let [a1, a2, a3, a4, a6] = curve.a_invariants();

    // Fixed point of w = z^3 + a1 z w + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3.
    let mut w = z3.clone();
    for _ in 0..wprec {
        let w2 = w.mul(&w);
        let next = z3
            .add(&w.shift_up(1).scale(a1))
            .add(&w.shift_up(2).scale(a2))
            .add(&w2.scale(a3))
            .add(&w2.shift_up(1).scale(a4))
            .add(&w2.mul(&w).scale(a6));
        if next == w {
            break;
        }
        w = next;
    }

    // Invariant differential: omega = (w - z w') / (w (a3 w + a1 z - 2)),
    // both divided by z^3 to expose unit constant terms.
    let numer = {
        let mut coeffs = vec![FieldElement::zero(desc); wprec];
        for (j, wj) in w.coeffs().iter().enumerate() {
            // (1 - j) * w_j
            coeffs[j] = wj.scale(&BigRational::from_integer(BigInt::from(1i64 - j as i64)));
        }
        FormalSeries::new(desc, coeffs, wprec).shift_down(3)
    };
    let denom = {
        let lin = FormalSeries::monomial(a1.clone(), 1, wprec)
            .add(&FormalSeries::monomial(FieldElement::from_int(desc, -2), 0, wprec));
        w.mul(&w.scale(a3).add(&lin)).shift_down(3)
    };
    let omega = numer.mul(&denom.invert_unit()?);
    let log = omega.integrate().truncate(precision);
    debug_assert!(log.coeff(0).is_zero());
    debug_assert!(log.coeff(1).is_one());
    Ok((w.truncate(precision), log))
}

/// The multiplication-by-m series [m]T = exp(m log T), exact to the given
/// precision; the linear coefficient is m.
pub fn multiplication_series(curve: &CurveModel, m: i64, precision: usize) -> Result<FormalSeries> {
    let (_, log) = formal_expansion(curve, precision)?;
    let exp = log.reversion()?;
    Ok(exp.compose(&log.scale_int(m)))
}

/// Root valuations (with multiplicities) of [p]T - beta on the formal
/// group, from the Newton polygon of its degree-p^2 truncation. The
/// constant slot carries the valuation of beta; beta = 0 is passed as
/// infinity and contributes the root T = 0, reported as one root of
/// infinite valuation.
pub fn fiber_valuations(
    mul_p: &FormalSeries,
    beta_valuation: &ExtRational,
    p: u64,
) -> Result<Vec<(ExtRational, u64)>> {
    let psq = (p * p) as usize;
    if mul_p.precision() < psq + 1 {
        return Err(Error::PrecisionTooLow(format!(
            "fiber analysis needs precision >= {}, have {}",
            psq + 1,
            mul_p.precision()
        )));
    }
    if !beta_valuation.is_positive() {
        return Err(Error::InvalidInput(
            "beta must lie in the formal group: valuation > 0 required".to_string(),
        ));
    }
    let mut points: Vec<(usize, BigRational)> = Vec::new();
    if let ExtRational::Finite(v) = beta_valuation {
        points.push((0, v.clone()));
    }
    for k in 1..=psq {
        if let ExtRational::Finite(v) = mul_p.coeff(k).valuation(p)? {
            points.push((k, v));
        }
    }
    let hull = NewtonPolygon::from_points(&points);
    let mut out: Vec<(ExtRational, u64)> = Vec::new();
    let mut total = 0u64;
    for (valuation, len) in hull.root_valuations() {
        if valuation.is_positive() {
            total += len as u64;
            out.push((ExtRational::Finite(valuation), len as u64));
        }
    }
    let expected = if beta_valuation.is_infinite() {
        (psq - 1) as u64
    } else {
        psq as u64
    };
    if total != expected {
        return Err(Error::InvalidInput(format!(
            "expected {expected} roots in the formal group, polygon certifies {total}; \
             the series is not multiplication by {p} on a supersingular formal group"
        )));
    }
    if beta_valuation.is_infinite() {
        out.insert(0, (ExtRational::Infinity, 1));
    }
    Ok(out)
}

/// Iterate `fiber_valuations` from beta = 0 up to level n, keeping exact
/// order p^k at every step: the valuations of the exact-order-p^n elements
/// with multiplicities, sorted by descending valuation.
pub fn fiber_tower_spectrum(
    curve: &CurveModel,
    p: u64,
    n: u32,
    precision: Option<usize>,
) -> Result<Vec<(BigRational, u64)>> {
    assert!(n >= 1);
    let prec = precision.unwrap_or((p * p) as usize + 2);
    let mul_p = multiplication_series(curve, p as i64, prec)?;
    // Level 1: the fiber over 0 minus the zero root itself.
    let mut level: Vec<(BigRational, u64)> = fiber_valuations(&mul_p, &ExtRational::Infinity, p)?
        .into_iter()
        .filter_map(|(v, c)| v.as_finite().cloned().map(|q| (q, c)))
        .collect();
    for _ in 2..=n {
        let mut next: Vec<(BigRational, u64)> = Vec::new();
        for (beta_val, count) in &level {
            let fiber = fiber_valuations(&mul_p, &ExtRational::Finite(beta_val.clone()), p)?;
            for (v, c) in fiber {
                let q = v
                    .as_finite()
                    .expect("fibers over nonzero elements have finite valuations")
                    .clone();
                let c = c * count;
                match next.iter_mut().find(|(w, _)| *w == q) {
                    Some((_, mc)) => *mc += c,
                    None => next.push((q, c)),
                }
            }
        }
        level = next;
    }
    level.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(level)
}

/// Check the degree-p^2 truncation justification: every computed
/// coefficient of [p]T - beta must lie on or above the lower hull spanned
/// by the slots {0, 1, p, p^2}, with height 0 continuing right of p^2.
pub fn truncation_hull_check(
    mul_p: &FormalSeries,
    beta_valuation: &ExtRational,
    p: u64,
) -> Result<bool> {
    let psq = (p * p) as usize;
    if mul_p.precision() < psq + 1 {
        return Err(Error::PrecisionTooLow(
            "need the full degree-p^2 truncation".to_string(),
        ));
    }
    let mut anchor_points: Vec<(usize, BigRational)> = Vec::new();
    if let ExtRational::Finite(v) = beta_valuation {
        anchor_points.push((0, v.clone()));
    }
    for k in [1, p as usize, psq] {
        if let ExtRational::Finite(v) = mul_p.coeff(k).valuation(p)? {
            anchor_points.push((k, v));
        }
    }
    let hull = NewtonPolygon::from_points(&anchor_points);
    let height = |k: usize| -> BigRational {
        let verts = &hull.vertices;
        if k >= verts[verts.len() - 1].0 {
            return verts[verts.len() - 1].1.clone();
        }
        for w in verts.windows(2) {
            if k >= w[0].0 && k <= w[1].0 {
                let run = BigRational::from_integer(BigInt::from(w[1].0 - w[0].0));
                let slope = (&w[1].1 - &w[0].1) / run;
                return &w[0].1 + slope * BigRational::from_integer(BigInt::from(k - w[0].0));
            }
        }
        verts[0].1.clone()
    };
    for k in 1..mul_p.precision() {
        match mul_p.coeff(k).valuation(p)? {
            ExtRational::Infinity => {}
            ExtRational::Finite(v) => {
                if v.is_negative() {
                    return Ok(false);
                }
                if k <= psq && v < height(k) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn qq() -> FieldDescriptor {
        FieldDescriptor::rational()
    }

    fn series_from_ints(desc: &FieldDescriptor, coeffs: &[i64], prec: usize) -> FormalSeries {
        FormalSeries::new(
            desc,
            coeffs
                .iter()
                .map(|&c| FieldElement::from_int(desc, c))
                .collect(),
            prec,
        )
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

    #[test]
    fn reversion_of_t_plus_t_squared() {
        let d = qq();
        let f = series_from_ints(&d, &[0, 1, 1], 5);
        let g = f.reversion().unwrap();
        // Inverse is U - U^2 + 2U^3 - 5U^4.
        assert_eq!(g, series_from_ints(&d, &[0, 1, -1, 2, -5], 5));
        let comp = f.compose(&g);
        assert_eq!(comp, series_from_ints(&d, &[0, 1, 0, 0, 0], 5));
    }

    #[test]
    fn w_series_leading_terms() {
        // w = z^3 + a1 z^4 + ... for any curve.
        let e = CurveModel::from_ints(&qq(), [1, 2, 3, 4, 5]).unwrap();
        let (w, _) = formal_expansion(&e, 6).unwrap();
        assert!(w.coeff(0).is_zero());
        assert!(w.coeff(1).is_zero());
        assert!(w.coeff(2).is_zero());
        assert!(w.coeff(3).is_one());
        assert_eq!(*w.coeff(4), FieldElement::from_int(&qq(), 1)); // a1
    }

    #[test]
    fn w_series_sparse_for_j0() {
        // y^2 = x^3 + 1: w = z^3 + w^3 gives w = z^3 + z^9 + 3 z^15 + ...
        let e = CurveModel::from_ints(&qq(), [0, 0, 0, 0, 1]).unwrap();
        let (w, _) = formal_expansion(&e, 16).unwrap();
        for k in 0..16 {
            let c = w.coeff(k);
            match k {
                3 | 9 => assert!(c.is_one(), "k={k}"),
                15 => assert_eq!(*c, FieldElement::from_int(&qq(), 3)),
                _ => assert!(c.is_zero(), "k={k}"),
            }
        }
    }

    #[test]
    fn w_satisfies_curve_identity() {
        let e = curve_9tors();
        let prec = 12;
        let (w, _) = formal_expansion(&e, prec).unwrap();
        let desc = e.descriptor();
        let z3 = FormalSeries::monomial(FieldElement::one(desc), 3, prec);
        let [a1, a2, a3, a4, a6] = e.a_invariants();
        let w2 = w.mul(&w);
        let rhs = z3
            .add(&w.shift_up(1).scale(a1))
            .add(&w.shift_up(2).scale(a2))
            .add(&w2.scale(a3))
            .add(&w2.shift_up(1).scale(a4))
            .add(&w2.mul(&w).scale(a6));
        assert_eq!(w, rhs);
    }

    #[test]
    fn log_starts_with_half_a1() {
        // log T = T + (a1/2) T^2 + ...
        let e = CurveModel::from_ints(&qq(), [1, 0, 0, 2, 3]).unwrap();
        let (_, log) = formal_expansion(&e, 6).unwrap();
        assert!(log.coeff(0).is_zero());
        assert!(log.coeff(1).is_one());
        assert_eq!(
            *log.coeff(2),
            FieldElement::from_rational(&qq(), BigRational::new(1.into(), 2.into()))
        );
    }

    #[test]
    fn identity_series() {
        let e = CurveModel::from_ints(&qq(), [0, 1, 1, 0, 0]).unwrap();
        let one = multiplication_series(&e, 1, 8).unwrap();
        let mut expected = FormalSeries::zero(&qq(), 8);
        expected = expected.add(&FormalSeries::monomial(FieldElement::one(&qq()), 1, 8));
        assert_eq!(one, expected);
    }

    #[test]
    fn linear_coefficient_is_m() {
        let e = curve_9tors();
        let m3 = multiplication_series(&e, 3, 11).unwrap();
        assert!(m3.coeff(0).is_zero());
        assert_eq!(*m3.coeff(1), FieldElement::from_int(e.descriptor(), 3));
        assert_eq!(
            m3.coeff(1).valuation(3).unwrap(),
            ExtRational::from_int(1)
        );
    }

    #[test]
    fn t_cubed_coefficient_matches_mu() {
        // The coefficient of T^3 in [3]T has valuation mu = 1/5.
        let e = curve_9tors();
        let m3 = multiplication_series(&e, 3, 11).unwrap();
        assert_eq!(m3.coeff(3).valuation(3).unwrap(), ExtRational::new(1, 5));
    }

    #[test]
    fn fiber_over_canonical_3_torsion() {
        // Fiber over an element of valuation 2/5: three roots of valuation
        // 1/15 and six of valuation 1/30.
        let e = curve_9tors();
        let m3 = multiplication_series(&e, 3, 11).unwrap();
        let fiber = fiber_valuations(&m3, &ExtRational::new(2, 5), 3).unwrap();
        assert_eq!(
            fiber,
            vec![
                (ExtRational::new(1, 15), 3),
                (ExtRational::new(1, 30), 6)
            ]
        );
    }

    #[test]
    fn fiber_over_zero_without_canonical() {
        // y^2 = x^3 + 1 at p = 5: no canonical subgroup, 24 roots of
        // valuation 1/24 plus the zero root.
        let e = CurveModel::from_ints(&qq(), [0, 0, 0, 0, 1]).unwrap();
        let m5 = multiplication_series(&e, 5, 27).unwrap();
        let fiber = fiber_valuations(&m5, &ExtRational::Infinity, 5).unwrap();
        assert_eq!(
            fiber,
            vec![
                (ExtRational::Infinity, 1),
                (ExtRational::new(1, 24), 24)
            ]
        );
    }

    #[test]
    fn fiber_at_next_level_divides_by_p_squared() {
        // On the same curve, beta of valuation 1/24 has 25 preimages of
        // valuation 1/600.
        let e = CurveModel::from_ints(&qq(), [0, 0, 0, 0, 1]).unwrap();
        let m5 = multiplication_series(&e, 5, 27).unwrap();
        let fiber = fiber_valuations(&m5, &ExtRational::new(1, 24), 5).unwrap();
        assert_eq!(fiber, vec![(ExtRational::new(1, 600), 25)]);
    }

    #[test]
    fn precision_too_low_is_reported() {
        let e = CurveModel::from_ints(&qq(), [0, 0, 0, 0, 1]).unwrap();
        let m5 = multiplication_series(&e, 5, 20).unwrap();
        assert!(matches!(
            fiber_valuations(&m5, &ExtRational::Infinity, 5),
            Err(Error::PrecisionTooLow(_))
        ));
    }

    #[test]
    fn truncation_hull_holds_on_fixtures() {
        let e = curve_9tors();
        let m3 = multiplication_series(&e, 3, 14).unwrap();
        for beta in [
            ExtRational::Infinity,
            ExtRational::new(2, 5),
            ExtRational::new(1, 30),
        ] {
            assert!(truncation_hull_check(&m3, &beta, 3).unwrap());
        }
    }
}
