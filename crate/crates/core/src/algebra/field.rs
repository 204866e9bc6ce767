//! Pure radical number fields Q(r^(1/e)) and their p-adic valuations.
//!
//! Elements are stored by their coordinates on the power basis
//! 1, r^(1/e), ..., r^((e-1)/e); ring operations reduce modulo x^e - r.
//! The p-adic valuation is supported exactly when it extends uniquely:
//! k = v_p(r) must satisfy k >= 1 and gcd(k, e) = 1, which makes the
//! extension totally ramified with v(r^(1/e)) = k/e.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::algebra::rational::{format_rational, ExtRational};
use crate::error::{Error, Result};

/// The coefficient field of a computation: Q itself or Q(r^(1/e)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldDescriptor {
    Rational,
    Radical { r: BigInt, e: u32 },
}

impl FieldDescriptor {
    pub fn rational() -> Self {
        FieldDescriptor::Rational
    }

    /// Q(r^(1/e)) for a nonzero integer r and degree e >= 2.
    ///
    /// Rejects descriptors for which x^e - r is reducible over Q, by the
    /// radical criterion: r must not be a d-th power for any prime d
    /// dividing e, and when 4 | e, -4r must not be a fourth power.
    pub fn radical(r: BigInt, e: u32) -> Result<Self> {
        if e < 2 {
            return Err(Error::InvalidInput(format!(
                "radical degree must be at least 2, got {e}"
            )));
        }
        if r.is_zero() {
            return Err(Error::InvalidInput("radicand must be nonzero".into()));
        }
        let mut d = 2u32;
        let mut rem = e;
        while rem > 1 {
            if rem % d == 0 {
                if is_perfect_power(&r, d) {
                    return Err(Error::InvalidInput(format!(
                        "x^{e} - {r} is reducible: {r} is a {d}-th power"
                    )));
                }
                while rem % d == 0 {
                    rem /= d;
                }
            }
            d += 1;
        }
        if e % 4 == 0 {
            let m4r = BigInt::from(-4) * &r;
            if is_perfect_power(&m4r, 4) {
                return Err(Error::InvalidInput(format!(
                    "x^{e} - {r} is reducible: -4*{r} is a fourth power"
                )));
            }
        }
        Ok(FieldDescriptor::Radical { r, e })
    }

    /// Degree over Q: 1 for the rationals, e for a radical extension.
    pub fn degree(&self) -> usize {
        match self {
            FieldDescriptor::Rational => 1,
            FieldDescriptor::Radical { e, .. } => *e as usize,
        }
    }
}

fn is_perfect_power(n: &BigInt, d: u32) -> bool {
    if d % 2 == 0 && n.is_negative() {
        return false;
    }
    let root = n.nth_root(d);
    num_traits::pow::Pow::pow(&root, d) == *n
}

/// An element of the field named by its descriptor, with exact rational
/// coordinates on the power basis of the generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    desc: FieldDescriptor,
    coords: Vec<BigRational>,
}

impl FieldElement {
    pub fn zero(desc: &FieldDescriptor) -> Self {
        FieldElement {
            desc: desc.clone(),
            coords: vec![BigRational::zero(); desc.degree()],
        }
    }

    pub fn one(desc: &FieldDescriptor) -> Self {
        Self::from_rational(desc, BigRational::one())
    }

    pub fn from_rational(desc: &FieldDescriptor, q: BigRational) -> Self {
        let mut coords = vec![BigRational::zero(); desc.degree()];
        coords[0] = q;
        FieldElement {
            desc: desc.clone(),
            coords,
        }
    }

    pub fn from_int(desc: &FieldDescriptor, n: i64) -> Self {
        Self::from_rational(desc, BigRational::from_integer(BigInt::from(n)))
    }

    /// c * r^(i/e). Panics for a rational descriptor when i > 0.
    pub fn radical_term(desc: &FieldDescriptor, c: BigRational, i: usize) -> Self {
        let mut el = Self::zero(desc);
        assert!(i < desc.degree(), "basis exponent {i} out of range");
        el.coords[i] = c;
        el
    }

    /// The generator r^(1/e) of a radical field.
    pub fn generator(desc: &FieldDescriptor) -> Self {
        Self::radical_term(desc, BigRational::one(), 1)
    }

    pub fn from_coords(desc: &FieldDescriptor, coords: Vec<BigRational>) -> Result<Self> {
        if coords.len() != desc.degree() {
            return Err(Error::InvalidInput(format!(
                "expected {} coordinates, got {}",
                desc.degree(),
                coords.len()
            )));
        }
        Ok(FieldElement {
            desc: desc.clone(),
            coords,
        })
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.desc
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    /// The coefficient of 1 on the power basis.
    pub fn rational_part(&self) -> &BigRational {
        &self.coords[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    fn check_same_field(&self, other: &FieldElement) {
        assert!(
            self.desc == other.desc,
            "field descriptor mismatch: {:?} vs {:?}",
            self.desc,
            other.desc
        );
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        self.check_same_field(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        FieldElement {
            desc: self.desc.clone(),
            coords,
        }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.check_same_field(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        FieldElement {
            desc: self.desc.clone(),
            coords,
        }
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            desc: self.desc.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> FieldElement {
        FieldElement {
            desc: self.desc.clone(),
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        self.check_same_field(other);
        let e = self.desc.degree();
        if e == 1 {
            return FieldElement {
                desc: self.desc.clone(),
                coords: vec![&self.coords[0] * &other.coords[0]],
            };
        }
        let r = match &self.desc {
            FieldDescriptor::Radical { r, .. } => BigRational::from_integer(r.clone()),
            FieldDescriptor::Rational => unreachable!(),
        };
        let mut prod = vec![BigRational::zero(); 2 * e - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        // Reduce modulo x^e - r: fold x^(e+i) back as r * x^i.
        let mut coords: Vec<BigRational> = prod[..e].to_vec();
        for (i, hi) in prod[e..].iter().enumerate() {
            if !hi.is_zero() {
                coords[i] += hi * &r;
            }
        }
        FieldElement {
            desc: self.desc.clone(),
            coords,
        }
    }

    pub fn pow(&self, mut n: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = FieldElement::one(&self.desc);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse, via the extended Euclidean algorithm on the
    /// coordinate polynomial and x^e - r.
    pub fn invert(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let e = self.desc.degree();
        if e == 1 {
            return Ok(FieldElement {
                desc: self.desc.clone(),
                coords: vec![self.coords[0].recip()],
            });
        }
        let r = match &self.desc {
            FieldDescriptor::Radical { r, .. } => BigRational::from_integer(r.clone()),
            FieldDescriptor::Rational => unreachable!(),
        };
        // m(x) = x^e - r
        let mut modulus = vec![BigRational::zero(); e + 1];
        modulus[0] = -r;
        modulus[e] = BigRational::one();
        let inv = ratpoly_modular_inverse(&self.coords, &modulus)
            .expect("x^e - r is irreducible, so every nonzero element is invertible");
        let mut coords = inv;
        coords.resize(e, BigRational::zero());
        Ok(FieldElement {
            desc: self.desc.clone(),
            coords,
        })
    }

    /// The unique extension of the p-adic valuation, normalized so v(p) = 1.
    ///
    /// For Q(r^(1/e)) this requires k = v_p(r) >= 1 and gcd(k, e) = 1; the
    /// candidate values v_p(c_i) + i*k/e then have pairwise distinct
    /// fractional parts, so their minimum is the exact valuation.
    pub fn valuation(&self, p: u64) -> Result<ExtRational> {
        match &self.desc {
            FieldDescriptor::Rational => Ok(rational_valuation(&self.coords[0], p)),
            FieldDescriptor::Radical { r, e } => {
                let k = int_valuation(r, p).ok_or_else(|| {
                    Error::UnsupportedField("radicand must be nonzero".to_string())
                })?;
                if k == 0 || !BigInt::from(k).gcd(&BigInt::from(*e)).is_one() {
                    return Err(Error::UnsupportedField(format!(
                        "v_{p}({r}) = {k} must be >= 1 and coprime to {e} for a unique extension"
                    )));
                }
                let mut best = ExtRational::Infinity;
                for (i, c) in self.coords.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let term = rational_valuation(c, p).add(&ExtRational::Finite(
                        BigRational::new(BigInt::from(i as u64 * k), BigInt::from(*e)),
                    ));
                    best = best.min(term);
                }
                Ok(best)
            }
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(format_rational).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// v_p of a nonzero integer; None if n = 0.
pub fn int_valuation(n: &BigInt, p: u64) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0u64;
    loop {
        let (q, rem) = n.div_rem(&p);
        if rem.is_zero() {
            k += 1;
            n = q;
        } else {
            return Some(k);
        }
    }
}

/// v_p of an exact rational, infinity for zero.
pub fn rational_valuation(q: &BigRational, p: u64) -> ExtRational {
    match int_valuation(q.numer(), p) {
        None => ExtRational::Infinity,
        Some(vn) => {
            let vd = int_valuation(q.denom(), p).expect("denominator is nonzero");
            ExtRational::Finite(BigRational::from_integer(
                BigInt::from(vn) - BigInt::from(vd),
            ))
        }
    }
}

// ---- dense rational polynomial helpers for the extended gcd ----

fn rp_deg(a: &[BigRational]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

fn rp_trim(mut a: Vec<BigRational>) -> Vec<BigRational> {
    while a.last().map_or(false, |c| c.is_zero()) {
        a.pop();
    }
    a
}

fn rp_sub_scaled(a: &[BigRational], b: &[BigRational], c: &BigRational, shift: usize) -> Vec<BigRational> {
    // a - c * x^shift * b
    let len = a.len().max(b.len() + shift);
    let mut out = a.to_vec();
    out.resize(len, BigRational::zero());
    for (j, bj) in b.iter().enumerate() {
        if !bj.is_zero() {
            out[j + shift] -= c * bj;
        }
    }
    rp_trim(out)
}

fn rp_div_rem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = rp_deg(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut rem = rp_trim(a.to_vec());
    let mut quo = vec![BigRational::zero(); a.len().saturating_sub(db)];
    while let Some(dr) = rp_deg(&rem) {
        if dr < db {
            break;
        }
        let c = &rem[dr] / &lead;
        quo[dr - db] = c.clone();
        rem = rp_sub_scaled(&rem, b, &c, dr - db);
    }
    (rp_trim(quo), rem)
}

fn rp_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    rp_trim(out)
}

fn rp_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let len = a.len().max(b.len());
    let mut out = a.to_vec();
    out.resize(len, BigRational::zero());
    for (j, bj) in b.iter().enumerate() {
        out[j] -= bj;
    }
    rp_trim(out)
}

/// Inverse of `a` modulo `m` in Q[x], when gcd(a, m) = 1.
fn ratpoly_modular_inverse(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    // Extended Euclid: maintain r0 = u0*a mod-combinations, r1 = u1*a ...
    let mut r0 = rp_trim(m.to_vec());
    let mut r1 = {
        let (_, rem) = rp_div_rem(a, m);
        rem
    };
    let mut u0: Vec<BigRational> = Vec::new(); // coefficient of a for r0
    let mut u1 = vec![BigRational::one()]; // coefficient of a for r1
    while rp_deg(&r1).is_some() {
        let (q, rem) = rp_div_rem(&r0, &r1);
        let unew = rp_sub(&u0, &rp_mul(&q, &u1));
        r0 = std::mem::replace(&mut r1, rem);
        u0 = std::mem::replace(&mut u1, unew);
    }
    // r0 is now gcd(a, m); it must be a nonzero constant.
    let d = rp_deg(&r0)?;
    if d != 0 {
        return None;
    }
    let inv_const = r0[0].recip();
    let bezout = u0.iter().map(|c| c * &inv_const).collect::<Vec<_>>();
    let (_, reduced) = rp_div_rem(&bezout, m);
    Some(reduced)
}
