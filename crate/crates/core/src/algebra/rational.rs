//! Exact rationals extended with +infinity.
//!
//! Every valuation in this crate is an [`ExtRational`]: an exact rational
//! number or the distinguished element `infinity` (the valuation of zero).
//! No floating point is used anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// An exact rational or +infinity.
///
/// `infinity` absorbs addition and compares greater than every rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtRational {
    Finite(BigRational),
    Infinity,
}

impl ExtRational {
    pub fn zero() -> Self {
        ExtRational::Finite(BigRational::zero())
    }

    pub fn infinity() -> Self {
        ExtRational::Infinity
    }

    pub fn from_int(n: i64) -> Self {
        ExtRational::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    /// Exact rational n/d. Panics if d = 0.
    pub fn new(n: i64, d: i64) -> Self {
        ExtRational::Finite(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn finite(q: BigRational) -> Self {
        ExtRational::Finite(q)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRational::Infinity)
    }

    pub fn as_finite(&self) -> Option<&BigRational> {
        match self {
            ExtRational::Finite(q) => Some(q),
            ExtRational::Infinity => None,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            ExtRational::Finite(q) => q.is_positive(),
            ExtRational::Infinity => true,
        }
    }

    /// Valuation addition: infinity + x = infinity.
    pub fn add(&self, other: &ExtRational) -> ExtRational {
        match (self, other) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => ExtRational::Finite(a + b),
            _ => ExtRational::Infinity,
        }
    }

    /// Scale by a rational factor. The factor must be positive when the
    /// value is infinite (so the sign of infinity is never in question).
    pub fn scale(&self, c: &BigRational) -> ExtRational {
        match self {
            ExtRational::Finite(q) => ExtRational::Finite(q * c),
            ExtRational::Infinity => {
                assert!(c.is_positive(), "cannot scale infinity by a non-positive factor");
                ExtRational::Infinity
            }
        }
    }

    /// Divide by a positive integer; infinity / n = infinity.
    pub fn div_nat(&self, n: u64) -> ExtRational {
        assert!(n > 0);
        match self {
            ExtRational::Finite(q) => {
                ExtRational::Finite(q / BigRational::from_integer(BigInt::from(n)))
            }
            ExtRational::Infinity => ExtRational::Infinity,
        }
    }

    pub fn min(self, other: ExtRational) -> ExtRational {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// Parse "num/den", "num", or "inf".
    pub fn parse(s: &str) -> Result<ExtRational> {
        if s == "inf" {
            return Ok(ExtRational::Infinity);
        }
        Ok(ExtRational::Finite(parse_rational(s)?))
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => a.cmp(b),
            (ExtRational::Finite(_), ExtRational::Infinity) => Ordering::Less,
            (ExtRational::Infinity, ExtRational::Finite(_)) => Ordering::Greater,
            (ExtRational::Infinity, ExtRational::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(q) => write!(f, "{}", format_rational(q)),
            ExtRational::Infinity => write!(f, "inf"),
        }
    }
}

/// Lowest-terms "num/den" form; plain "num" when the denominator is 1.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parse "num/den" or "num" into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("invalid integer `{t}`")))
    };
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(parse_int(n)?, den))
        }
    }
}
