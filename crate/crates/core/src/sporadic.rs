//! Degree gates for sporadic points on X_1(N): ramification-forced
//! torsion-field degrees compared exactly against the gonality upper bound
//! 11 N^2 / 840.
//!
//! A gate can certify that a j-invariant does NOT correspond to a sporadic
//! point; it never certifies the converse, so verdicts are NotSporadic or
//! Inconclusive.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::ExtRational;
use crate::error::{Error, Result};
use crate::spectrum::{is_prime, torsion_spectrum};

/// Coarse j-invariant class; it determines the automorphism order
/// (2 generically, 6 for j = 0, 4 for j = 1728).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JClass {
    Generic,
    JZero,
    J1728,
}

impl JClass {
    pub fn aut_order(&self) -> u64 {
        match self {
            JClass::Generic => 2,
            JClass::JZero => 6,
            JClass::J1728 => 4,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            JClass::Generic => "generic",
            JClass::JZero => "j0",
            JClass::J1728 => "j1728",
        }
    }

    pub fn parse(s: &str) -> Result<JClass> {
        match s {
            "generic" => Ok(JClass::Generic),
            "j0" => Ok(JClass::JZero),
            "j1728" => Ok(JClass::J1728),
            _ => Err(Error::Parse(format!(
                "unknown j-class `{s}` (expected generic, j0, or j1728)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    NotSporadic,
    Inconclusive,
}

/// Which accounting produced the bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateCase {
    Generic,
    JZero,
    J1728,
    CmConstant,
    Composite,
    Custom,
    HypothesisUnmet,
}

impl GateCase {
    pub fn label(&self) -> &'static str {
        match self {
            GateCase::Generic => "generic",
            GateCase::JZero => "j0",
            GateCase::J1728 => "j1728",
            GateCase::CmConstant => "cm-constant",
            GateCase::Composite => "composite",
            GateCase::Custom => "custom",
            GateCase::HypothesisUnmet => "hypothesis-unmet",
        }
    }
}

/// A decision record: NotSporadic iff the forced degree lower bound is at
/// least the gonality upper bound, by exact rational comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SporadicVerdict {
    pub decision: Decision,
    pub degree_lower_bound: BigRational,
    pub gonality_bound: BigRational,
    pub rationale: GateCase,
}

impl SporadicVerdict {
    fn decide(degree_lower_bound: BigRational, gonality_bound: BigRational, rationale: GateCase) -> Self {
        let decision = if degree_lower_bound >= gonality_bound {
            Decision::NotSporadic
        } else {
            Decision::Inconclusive
        };
        SporadicVerdict {
            decision,
            degree_lower_bound,
            gonality_bound,
            rationale,
        }
    }
}

/// Gonality bound for X_1(N): 11 N^2 / 840 when N > 12. For N <= 12 the
/// curve has Q-gonality 1, so no sporadic points exist at all.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GonalityBound {
    NoSporadicPointsExist,
    Bound(BigRational),
}

pub fn gonality_upper_bound(n_level: u64) -> GonalityBound {
    if n_level <= 12 {
        GonalityBound::NoSporadicPointsExist
    } else {
        GonalityBound::Bound(gonality_ratio(n_level))
    }
}

fn gonality_ratio(n_level: u64) -> BigRational {
    let n = BigInt::from(n_level);
    BigRational::new(BigInt::from(11) * &n * &n, BigInt::from(840))
}

fn torsion_size(p: u64, n: u32) -> BigInt {
    let pb = BigInt::from(p);
    num_traits::pow::Pow::pow(&pb, 2 * n) - num_traits::pow::Pow::pow(&pb, 2 * n - 2)
}

/// Gate for prime-power level p^n.
///
/// Outside the two CM-constant branches (j = 1728 at p = 2 and j = 0 at
/// p = 3, whose least point degrees are known unconditionally), the
/// underlying theorem needs the curve to have no canonical subgroup;
/// `has_canonical = true` there yields Inconclusive rather than an error,
/// so callers can chain mu -> regime -> gate without branching.
pub fn primepower_gate(
    jclass: JClass,
    p: u64,
    n: u32,
    has_canonical: bool,
) -> Result<SporadicVerdict> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(Error::InvalidInput("level exponent must be positive".to_string()));
    }
    let level = num_traits::pow::Pow::pow(&BigInt::from(p), n);
    let level_u64 = u64::try_from(level).map_err(|_| {
        Error::InvalidInput(format!("level {p}^{n} is out of range"))
    })?;
    let gonality = gonality_ratio(level_u64);

    // CM constants hold unconditionally: least degrees 2^(2n-4) on X_1(2^n)
    // for CM by Z[i], and 3^(2n-3) on X_1(3^n) for CM by Z[zeta_3].
    let two = BigRational::from_integer(BigInt::from(2));
    let three = BigRational::from_integer(BigInt::from(3));
    match (jclass, p) {
        (JClass::J1728, 2) => {
            let bound = rational_power(&two, 2 * n as i64 - 4);
            return Ok(SporadicVerdict::decide(bound, gonality, GateCase::CmConstant));
        }
        (JClass::JZero, 3) => {
            let bound = rational_power(&three, 2 * n as i64 - 3);
            return Ok(SporadicVerdict::decide(bound, gonality, GateCase::CmConstant));
        }
        _ => {}
    }

    if has_canonical {
        return Ok(SporadicVerdict {
            decision: Decision::Inconclusive,
            degree_lower_bound: BigRational::zero(),
            gonality_bound: gonality,
            rationale: GateCase::HypothesisUnmet,
        });
    }

    let tors = BigRational::from_integer(torsion_size(p, n));
    let (divisor, case) = match jclass {
        JClass::Generic => {
            // Resolve bad additive reduction (degree 24/12/6 by p), then
            // quotient by Aut(E) of order 2.
            let resolve = match p {
                2 => 24u64,
                3 => 12,
                _ => 6,
            };
            (resolve * 2, GateCase::Generic)
        }
        // j = 0, p != 3: resolve via a degree-6 extension, |Aut| = 6.
        JClass::JZero => (36, GateCase::JZero),
        // j = 1728, p = 3: resolve via y^2 = x^3 - x with a degree-4
        // extension, |Aut| = 4; for p > 3 resolve costs 6.
        JClass::J1728 => {
            if p == 3 {
                (16, GateCase::J1728)
            } else {
                (24, GateCase::J1728)
            }
        }
    };
    let bound = tors / BigRational::from_integer(BigInt::from(divisor));
    Ok(SporadicVerdict::decide(bound, gonality, case))
}

fn rational_power(base: &BigRational, exp: i64) -> BigRational {
    if exp >= 0 {
        num_traits::pow::Pow::pow(base, exp as usize)
    } else {
        num_traits::pow::Pow::pow(base, (-exp) as usize).recip()
    }
}

/// Gate for composite level N, requiring N > 12 and 6 not dividing N.
/// The caller asserts good supersingular reduction at every prime
/// dividing N; without that assertion the verdict is Inconclusive.
pub fn composite_gate(n_level: u64, supersingular_assertion: bool) -> Result<SporadicVerdict> {
    if n_level <= 12 {
        return Err(Error::PreconditionViolated(format!(
            "composite gate needs N > 12, got {n_level}"
        )));
    }
    if n_level % 6 == 0 {
        return Err(Error::PreconditionViolated(format!(
            "composite gate needs 6 to not divide N, got {n_level}"
        )));
    }
    let gonality = gonality_ratio(n_level);
    if !supersingular_assertion {
        return Ok(SporadicVerdict {
            decision: Decision::Inconclusive,
            degree_lower_bound: BigRational::zero(),
            gonality_bound: gonality,
            rationale: GateCase::HypothesisUnmet,
        });
    }
    let mut product = BigInt::one();
    for (p, n) in factorize(n_level) {
        product *= torsion_size(p, n);
    }
    let bound = BigRational::new(product, BigInt::from(36));
    Ok(SporadicVerdict::decide(bound, gonality, GateCase::Composite))
}

/// Gate with a caller-supplied field/twist budget: the forced degree is
/// the denominator of the top spectrum valuation divided by
/// reduction_factor * aut_order.
pub fn custom_gate(
    p: u64,
    n: u32,
    mu: &ExtRational,
    reduction_factor: u64,
    aut_order: u64,
) -> Result<SporadicVerdict> {
    if reduction_factor == 0 || aut_order == 0 {
        return Err(Error::InvalidInput(
            "reduction factor and automorphism order must be positive".to_string(),
        ));
    }
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let spec = torsion_spectrum(p, n, mu)?;
    let top_denominator = spec.top_entry().valuation.denom().clone();
    let level = num_traits::pow::Pow::pow(&BigInt::from(p), n);
    let level_u64 = u64::try_from(level)
        .map_err(|_| Error::InvalidInput(format!("level {p}^{n} is out of range")))?;
    let bound = BigRational::new(
        top_denominator,
        BigInt::from(reduction_factor) * BigInt::from(aut_order),
    );
    Ok(SporadicVerdict::decide(
        bound,
        gonality_ratio(level_u64),
        GateCase::Custom,
    ))
}

/// Trial-division factorization, smallest primes first.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1);
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0u32;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
