//! Dense univariate polynomials over a [`FieldElement`] coefficient field,
//! exact division, reciprocal transforms, Eisenstein tests, and Newton
//! polygons.
//!
//! Coefficients are stored in ascending degree order. Invariant: the vector
//! is either empty (zero polynomial) or its last element is nonzero, and
//! all coefficients share one field descriptor.

use num_bigint::BigInt;
use num_rational::BigRational;


use crate::algebra::{ExtRational, FieldDescriptor, FieldElement};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    desc: FieldDescriptor,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(desc: &FieldDescriptor, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        for c in &coeffs {
            assert!(c.descriptor() == desc, "coefficient field mismatch");
        }
        Poly {
            desc: desc.clone(),
            coeffs,
        }
    }

    pub fn zero(desc: &FieldDescriptor) -> Self {
        Poly {
            desc: desc.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(desc: &FieldDescriptor) -> Self {
        Poly::constant(FieldElement::one(desc))
    }

    pub fn constant(c: FieldElement) -> Self {
        let desc = c.descriptor().clone();
        Poly::new(&desc, vec![c])
    }

    /// c * x^d
    pub fn monomial(c: FieldElement, d: usize) -> Self {
        let desc = c.descriptor().clone();
        let mut coeffs = vec![FieldElement::zero(&desc); d + 1];
        coeffs[d] = c;
        Poly::new(&desc, coeffs)
    }

    /// Convenience constructor from integer coefficients in ascending degree.
    pub fn from_ints(desc: &FieldDescriptor, coeffs: &[i64]) -> Self {
        Poly::new(
            desc,
            coeffs
                .iter()
                .map(|&n| FieldElement::from_int(desc, n))
                .collect(),
        )
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.desc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of x^i, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(&self.desc))
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            out.push(self.coeff(i).add(&other.coeff(i)));
        }
        Poly::new(&self.desc, out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            out.push(self.coeff(i).sub(&other.coeff(i)));
        }
        Poly::new(&self.desc, out)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            desc: self.desc.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.desc);
        }
        let mut out =
            vec![FieldElement::zero(&self.desc); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(&self.desc, out)
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        Poly::new(&self.desc, self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    /// Scale by the inverse of the leading coefficient.
    pub fn monic(&self) -> Result<Poly> {
        let lead = self.leading().ok_or(Error::DivisionByZero)?;
        Ok(self.scale(&lead.invert()?))
    }

    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.coeffs[dd].invert()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(&self.desc), self.clone()));
        }
        let mut quo = vec![FieldElement::zero(&self.desc); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let c = rem[i].mul(&lead_inv);
            for (j, djc) in divisor.coeffs.iter().enumerate().take(dd) {
                let t = c.mul(djc);
                rem[i - dd + j] = rem[i - dd + j].sub(&t);
            }
            rem[i] = FieldElement::zero(&self.desc);
            quo[i - dd] = c;
        }
        Ok((Poly::new(&self.desc, quo), Poly::new(&self.desc, rem)))
    }

    /// Exact quotient; a nonzero remainder raises [`Error::InexactDivision`].
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision);
        }
        Ok(q)
    }

    /// x^(deg f) * f(1/x): coefficients in reverse order.
    pub fn reversed(&self) -> Poly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Poly::new(&self.desc, coeffs)
    }
}

/// Lower convex hull of the points (i, v(c_i)); vertex slopes strictly
/// increase left to right. A segment of slope -s and horizontal length l
/// certifies exactly l roots of valuation s in an algebraic closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub vertices: Vec<(usize, BigRational)>,
    pub segments: Vec<(BigRational, usize)>,
}

impl NewtonPolygon {
    /// Lower hull of an arbitrary finite point set, by a monotone chain
    /// with exact rational cross-product comparisons.
    pub fn from_points(points: &[(usize, BigRational)]) -> NewtonPolygon {
        let mut pts = points.to_vec();
        pts.sort_by(|a, b| a.0.cmp(&b.0));
        assert!(
            pts.windows(2).all(|w| w[0].0 != w[1].0),
            "duplicate indices in Newton polygon input"
        );
        let mut hull: Vec<(usize, BigRational)> = Vec::new();
        for pt in pts {
            while hull.len() >= 2 {
                let o = &hull[hull.len() - 2];
                let a = &hull[hull.len() - 1];
                // Keep `a` only if the slope strictly increases through it.
                let lhs = (&a.1 - &o.1) * BigRational::from_integer(BigInt::from(pt.0 - o.0));
                let rhs = (&pt.1 - &o.1) * BigRational::from_integer(BigInt::from(a.0 - o.0));
                if lhs < rhs {
                    break;
                }
                hull.pop();
            }
            hull.push(pt);
        }
        let segments = hull
            .windows(2)
            .map(|w| {
                let run = w[1].0 - w[0].0;
                let slope = (&w[1].1 - &w[0].1) / BigRational::from_integer(BigInt::from(run));
                (slope, run)
            })
            .collect();
        NewtonPolygon {
            vertices: hull,
            segments,
        }
    }

    /// Total horizontal length of all segments.
    pub fn width(&self) -> usize {
        self.segments.iter().map(|(_, l)| l).sum()
    }

    /// Root valuations with multiplicities, largest first: segment of slope
    /// -s and length l gives l roots of valuation s.
    pub fn root_valuations(&self) -> Vec<(BigRational, usize)> {
        self.segments.iter().map(|(s, l)| (-s, *l)).collect()
    }
}

/// Newton polygon of a nonzero polynomial at p. Points with infinite
/// valuation (zero coefficients) are omitted from the hull input.
pub fn newton_polygon(f: &Poly, p: u64) -> Result<NewtonPolygon> {
    assert!(!f.is_zero(), "newton polygon of the zero polynomial");
    let mut points = Vec::new();
    for (i, c) in f.coeffs().iter().enumerate() {
        match c.valuation(p)? {
            ExtRational::Finite(v) => points.push((i, v)),
            ExtRational::Infinity => {}
        }
    }
    Ok(NewtonPolygon::from_points(&points))
}

/// True iff x^(deg f) * f(1/x) is Eisenstein at p over Q: reversed leading
/// coefficient of valuation 0, all lower coefficients of valuation >= 1,
/// reversed constant coefficient of valuation exactly 1.
pub fn reciprocal_eisenstein(f: &Poly, p: u64) -> Result<bool> {
    if *f.descriptor() != FieldDescriptor::Rational {
        return Err(Error::UnsupportedField(
            "reciprocal Eisenstein test is defined over Q".to_string(),
        ));
    }
    let d = f.degree().expect("nonzero polynomial required");
    assert!(!f.coeff(0).is_zero(), "constant coefficient must be nonzero");
    let val = |i: usize| f.coeff(i).valuation(p).expect("rational valuation");
    // Reversed polynomial g: g_i = f_(d-i).
    if val(0) != ExtRational::zero() {
        return Ok(false); // leading coefficient of g
    }
    if val(d) != ExtRational::from_int(1) {
        return Ok(false); // constant coefficient of g
    }
    for i in 1..d {
        if val(i) < ExtRational::from_int(1) {
            return Ok(false);
        }
    }
    Ok(true)
}
