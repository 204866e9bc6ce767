//! Closed-form valuation spectra of exact-order p^n torsion in the formal
//! group, derived from (p, n, mu): the canonical-subgroup regime, the full
//! multiset of element valuations with counts, and the ramification bounds
//! they force.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::algebra::ExtRational;
use crate::error::{Error, Result};

/// Whether a canonical subgroup exists, and if so the threshold level s:
/// the smallest nonnegative integer with mu >= 1/(p^s (p+1)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CanonicalRegime {
    NoCanonical,
    Canonical { s: u32 },
}

impl CanonicalRegime {
    pub fn has_canonical(&self) -> bool {
        matches!(self, CanonicalRegime::Canonical { .. })
    }
}

/// Provenance of a spectrum entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryTag {
    /// Largest-valuation elements over the canonical subgroup.
    Top,
    /// Elements whose trajectory left the canonical tower at level j.
    Layer(u32),
    /// Elements not above the canonical subgroup (or all elements, when
    /// there is no canonical subgroup).
    OffCanonical,
}

impl EntryTag {
    pub fn label(&self) -> String {
        match self {
            EntryTag::Top => "top".to_string(),
            EntryTag::Layer(j) => format!("layer-{j}"),
            EntryTag::OffCanonical => "off-canonical".to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub valuation: BigRational,
    pub count: u64,
    pub above_canonical: bool,
    pub tag: EntryTag,
}

/// The multiset of formal-group valuations of the elements of exact order
/// p^n. Counts total p^(2n) - p^(2n-2) and count-weighted valuations sum
/// to 1 exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationSpectrum {
    pub p: u64,
    pub n: u32,
    pub entries: Vec<SpectrumEntry>,
}

impl ValuationSpectrum {
    /// The entry of largest valuation.
    pub fn top_entry(&self) -> &SpectrumEntry {
        self.entries
            .iter()
            .max_by(|a, b| a.valuation.cmp(&b.valuation))
            .expect("spectrum is never empty")
    }

    /// Collapse to (valuation, count) pairs, merging across tags, sorted
    /// by descending valuation.
    pub fn by_valuation(&self) -> Vec<(BigRational, u64)> {
        let mut merged: Vec<(BigRational, u64)> = Vec::new();
        for e in &self.entries {
            match merged.iter_mut().find(|(v, _)| *v == e.valuation) {
                Some((_, c)) => *c += e.count,
                None => merged.push((e.valuation.clone(), e.count)),
            }
        }
        merged.sort_by(|a, b| b.0.cmp(&a.0));
        merged
    }
}

fn big(p: u64) -> BigInt {
    BigInt::from(p)
}

fn pow(p: u64, k: u32) -> BigInt {
    num_traits::pow::Pow::pow(&big(p), k)
}

fn ratio(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

fn require_positive_mu(mu: &ExtRational) -> Result<()> {
    if !mu.is_positive() {
        return Err(Error::InvalidMu(format!("mu must be positive, got {mu}")));
    }
    Ok(())
}

/// Classify (p, mu): no canonical subgroup iff mu >= p/(p+1); otherwise the
/// canonical regime with its threshold s.
pub fn canonical_regime(p: u64, mu: &ExtRational) -> Result<CanonicalRegime> {
    require_positive_mu(mu)?;
    let boundary = ExtRational::finite(ratio(big(p), big(p + 1)));
    if *mu >= boundary {
        return Ok(CanonicalRegime::NoCanonical);
    }
    let mut s = 0u32;
    loop {
        let threshold = ExtRational::finite(ratio(BigInt::one(), pow(p, s) * big(p + 1)));
        if *mu >= threshold {
            return Ok(CanonicalRegime::Canonical { s });
        }
        s += 1;
    }
}

fn to_u64(n: &BigInt) -> u64 {
    u64::try_from(n.clone()).expect("count fits in u64")
}

/// The full valuation spectrum of exact-order-p^n elements from (p, n, mu).
pub fn torsion_spectrum(p: u64, n: u32, mu: &ExtRational) -> Result<ValuationSpectrum> {
    assert!(n >= 1);
    let regime = canonical_regime(p, mu)?;
    let total = pow(p, 2 * n) - pow(p, 2 * n - 2);

    let mut entries: Vec<SpectrumEntry> = Vec::new();
    let mut push = |valuation: BigRational, count: BigInt, above: bool, tag: EntryTag| {
        debug_assert!(valuation.is_positive());
        // Merge entries of equal valuation and provenance flag.
        if let Some(e) = entries
            .iter_mut()
            .find(|e| e.valuation == valuation && e.above_canonical == above)
        {
            e.count += to_u64(&count);
        } else {
            entries.push(SpectrumEntry {
                valuation,
                count: to_u64(&count),
                above_canonical: above,
                tag,
            });
        }
    };

    match regime {
        CanonicalRegime::NoCanonical => {
            push(
                ratio(BigInt::one(), total.clone()),
                total.clone(),
                false,
                EntryTag::OffCanonical,
            );
        }
        CanonicalRegime::Canonical { s } => {
            let mu = mu.as_finite().expect("canonical regime has finite mu").clone();
            let pm1 = big(p - 1);
            let p2p = pow(p, 2) - big(p); // p^2 - p
            if n <= s + 1 {
                // Top: p^(n-1)(p-1) elements of valuation (1 - p^(n-1) mu) / (p^(n-1)(p-1)).
                let pn1 = pow(p, n - 1);
                let cnt = &pn1 * &pm1;
                let val = (BigRational::one() - BigRational::from_integer(pn1) * &mu)
                    / BigRational::from_integer(cnt.clone());
                push(val, cnt, true, EntryTag::Top);
            } else {
                // Top: p^(2(n-s-1)) p^s (p-1) elements of valuation
                // (1 - p^s mu) / that count.
                let cnt = pow(p, 2 * (n - s - 1)) * pow(p, s) * &pm1;
                let val = (BigRational::one() - BigRational::from_integer(pow(p, s)) * &mu)
                    / BigRational::from_integer(cnt.clone());
                push(val, cnt, true, EntryTag::Top);
            }
            // Layers j = 2..=min(n, s+1): elements that left the canonical
            // tower at level j.
            let top_level = n.min(s + 1);
            for j in 2..=top_level {
                let denom = pow(p, 2 * (n - j)) * &p2p;
                let val = &mu / BigRational::from_integer(denom.clone());
                let cnt = denom * pow(p, j - 2) * &pm1;
                push(val, cnt, true, EntryTag::Layer(j));
            }
            // Off-canonical: p^(2(n-1))(p^2 - p) elements.
            let denom = pow(p, 2 * (n - 1)) * &p2p;
            let val = &mu / BigRational::from_integer(denom.clone());
            push(val, denom, false, EntryTag::OffCanonical);
        }
    }

    entries.sort_by(|a, b| {
        b.valuation
            .cmp(&a.valuation)
            .then(b.above_canonical.cmp(&a.above_canonical))
    });

    let spectrum = ValuationSpectrum { p, n, entries };
    debug_assert_eq!(
        BigInt::from(spectrum.entries.iter().map(|e| e.count).sum::<u64>()),
        total
    );
    debug_assert!(spectrum
        .entries
        .iter()
        .map(|e| &e.valuation * BigRational::from_integer(BigInt::from(e.count)))
        .sum::<BigRational>()
        .is_one());
    Ok(spectrum)
}

/// Translate a formal-group spectrum to x-coordinate valuations:
/// (v, count) -> (-2v, count/2) since x(P) pairs P with -P, except for
/// p^n = 2 where the three 2-torsion x-coordinates are already distinct.
pub fn x_coordinate_spectrum(spec: &ValuationSpectrum) -> Vec<(BigRational, u64)> {
    let halve = !(spec.p == 2 && spec.n == 1);
    let minus_two = BigRational::from_integer(BigInt::from(-2));
    let mut out: Vec<(BigRational, u64)> = spec
        .entries
        .iter()
        .map(|e| {
            let count = if halve {
                debug_assert!(e.count % 2 == 0);
                e.count / 2
            } else {
                e.count
            };
            (&e.valuation * &minus_two, count)
        })
        .collect();
    // Merge duplicates that may arise across provenance flags.
    let mut merged: Vec<(BigRational, u64)> = Vec::new();
    for (v, c) in out.drain(..) {
        match merged.iter_mut().find(|(w, _)| *w == v) {
            Some((_, mc)) => *mc += c,
            None => merged.push((v, c)),
        }
    }
    merged.sort_by(|a, b| a.0.cmp(&b.0));
    merged
}

/// Ramification forced by a spectrum: lower bounds for the ramification
/// index over p in the full torsion field (e_P) and in the base field
/// (e_p), the divisibility constraint in the no-canonical case, and the
/// lcm of the valuation denominators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationReport {
    pub e_torsion_lower: u64,
    pub e_torsion_strict: bool,
    pub e_base_lower: u64,
    pub e_base_divisibility: Option<u64>,
    pub lcm_denominators: BigInt,
}

/// Minimal ramification data from (p, n) and the regime/spectrum pair.
pub fn ramification_bounds(
    p: u64,
    n: u32,
    regime: &CanonicalRegime,
    spec: &ValuationSpectrum,
) -> RamificationReport {
    assert!(spec.p == p && spec.n == n, "spectrum does not match (p, n)");
    let tors = pow(p, 2 * n) - pow(p, 2 * n - 2);
    let phi = pow(p, n) - pow(p, n - 1);
    let lcm = spec
        .entries
        .iter()
        .fold(BigInt::one(), |acc, e| acc.lcm(e.valuation.denom()));
    RamificationReport {
        e_torsion_lower: to_u64(&tors),
        e_torsion_strict: regime.has_canonical(),
        e_base_lower: to_u64(&phi) + 1,
        e_base_divisibility: if regime.has_canonical() {
            None
        } else {
            Some(to_u64(&tors))
        },
        lcm_denominators: lcm,
    }
}

/// Degree of a minimal N-torsion point field over Q for an elliptic curve
/// supersingular at every prime of the factorization: the product of
/// p^(2n) - p^(2n-2) over the factors.
pub fn minimal_torsion_field_degree(factorization: &[(u64, u32)]) -> Result<BigInt> {
    let mut seen = Vec::new();
    let mut product = BigInt::one();
    for &(p, n) in factorization {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if n == 0 {
            return Err(Error::InvalidInput("exponent must be positive".to_string()));
        }
        if seen.contains(&p) {
            return Err(Error::InvalidInput(format!("repeated prime {p}")));
        }
        seen.push(p);
        product *= pow(p, 2 * n) - pow(p, 2 * n - 2);
    }
    Ok(product)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn regime_examples() {
        assert_eq!(
            canonical_regime(11, &ExtRational::new(1, 3)).unwrap(),
            CanonicalRegime::Canonical { s: 0 }
        );
        assert_eq!(
            canonical_regime(3, &ExtRational::new(1, 5)).unwrap(),
            CanonicalRegime::Canonical { s: 1 }
        );
        assert_eq!(
            canonical_regime(3, &ExtRational::infinity()).unwrap(),
            CanonicalRegime::NoCanonical
        );
        // Boundary: mu = p/(p+1) exactly has no canonical subgroup.
        assert_eq!(
            canonical_regime(3, &ExtRational::new(3, 4)).unwrap(),
            CanonicalRegime::NoCanonical
        );
        // Boundary: mu = 1/(p^s(p+1)) exactly lands at that s.
        assert_eq!(
            canonical_regime(3, &ExtRational::new(1, 12)).unwrap(),
            CanonicalRegime::Canonical { s: 1 }
        );
        assert!(matches!(
            canonical_regime(3, &ExtRational::zero()),
            Err(Error::InvalidMu(_))
        ));
        assert!(matches!(
            canonical_regime(3, &ExtRational::new(-1, 2)),
            Err(Error::InvalidMu(_))
        ));
    }

    #[test]
    fn spectrum_121c2() {
        let s = torsion_spectrum(11, 1, &ExtRational::new(1, 3)).unwrap();
        assert_eq!(s.entries.len(), 2);
        assert_eq!(s.entries[0].valuation, q(1, 15));
        assert_eq!(s.entries[0].count, 10);
        assert!(s.entries[0].above_canonical);
        assert_eq!(s.entries[1].valuation, q(1, 330));
        assert_eq!(s.entries[1].count, 110);
        assert!(!s.entries[1].above_canonical);
    }

    #[test]
    fn spectrum_9tors_level2() {
        let s = torsion_spectrum(3, 2, &ExtRational::new(1, 5)).unwrap();
        let got: Vec<(BigRational, u64, bool)> = s
            .entries
            .iter()
            .map(|e| (e.valuation.clone(), e.count, e.above_canonical))
            .collect();
        assert_eq!(
            got,
            vec![
                (q(1, 15), 6, true),
                (q(1, 30), 12, true),
                (q(1, 270), 54, false),
            ]
        );
    }

    #[test]
    fn spectrum_9tors_level3() {
        // n = 3 > s + 1 = 2.
        let s = torsion_spectrum(3, 3, &ExtRational::new(1, 5)).unwrap();
        let got = s.by_valuation();
        assert_eq!(
            got,
            vec![(q(1, 135), 54), (q(1, 270), 108), (q(1, 2430), 486)]
        );
    }

    #[test]
    fn spectrum_no_canonical() {
        let s = torsion_spectrum(3, 1, &ExtRational::infinity()).unwrap();
        assert_eq!(s.entries.len(), 1);
        assert_eq!(s.entries[0].valuation, q(1, 8));
        assert_eq!(s.entries[0].count, 8);
    }

    #[test]
    fn x_coordinate_forms() {
        let s = torsion_spectrum(3, 2, &ExtRational::new(1, 5)).unwrap();
        assert_eq!(
            x_coordinate_spectrum(&s),
            vec![(q(-2, 15), 3), (q(-1, 15), 6), (q(-1, 135), 27)]
        );
        let s = torsion_spectrum(11, 1, &ExtRational::new(1, 3)).unwrap();
        assert_eq!(
            x_coordinate_spectrum(&s),
            vec![(q(-2, 15), 5), (q(-1, 165), 55)]
        );
        let s = torsion_spectrum(3, 1, &ExtRational::infinity()).unwrap();
        assert_eq!(x_coordinate_spectrum(&s), vec![(q(-1, 4), 4)]);
        // p^n = 2: counts are not halved.
        let s = torsion_spectrum(2, 1, &ExtRational::from_int(1)).unwrap();
        assert_eq!(x_coordinate_spectrum(&s), vec![(q(-2, 3), 3)]);
    }

    #[test]
    fn sum_and_count_sweep() {
        let mus = [
            ExtRational::new(1, 12),
            ExtRational::new(1, 5),
            ExtRational::new(1, 3),
            ExtRational::new(1, 2),
            ExtRational::new(3, 4),
            ExtRational::from_int(1),
            ExtRational::infinity(),
        ];
        for p in [2u64, 3, 5, 7, 11, 13] {
            for n in 1..=4u32 {
                for mu in &mus {
                    let s = torsion_spectrum(p, n, mu).unwrap();
                    let total: u64 = s.entries.iter().map(|e| e.count).sum();
                    assert_eq!(
                        BigInt::from(total),
                        pow(p, 2 * n) - pow(p, 2 * n - 2),
                        "count p={p} n={n} mu={mu}"
                    );
                    let weighted: BigRational = s
                        .entries
                        .iter()
                        .map(|e| &e.valuation * BigRational::from_integer(BigInt::from(e.count)))
                        .sum();
                    assert!(weighted.is_one(), "sum p={p} n={n} mu={mu}");
                }
            }
        }
    }

    #[test]
    fn monotone_layering() {
        // Strictly interior mu: top > layers > off-canonical.
        let s = torsion_spectrum(3, 3, &ExtRational::new(1, 10)).unwrap();
        for w in s.entries.windows(2) {
            assert!(w[0].valuation >= w[1].valuation);
        }
        let top = s.top_entry();
        assert_eq!(top.tag, EntryTag::Top);
        for e in &s.entries {
            if e.tag != EntryTag::Top {
                assert!(e.valuation < top.valuation);
            }
            if !e.above_canonical {
                for a in s.entries.iter().filter(|x| x.above_canonical) {
                    assert!(e.valuation < a.valuation);
                }
            }
        }
    }

    #[test]
    fn top_count_matches_cyclic_generators() {
        // For n <= s+1, the top count is p^(n-1)(p-1): the number of
        // generators of a cyclic p^n group over the canonical subgroup.
        let mu = ExtRational::new(1, 100); // s is large
        for p in [2u64, 3, 5] {
            for n in 1..=3u32 {
                let s = torsion_spectrum(p, n, &mu).unwrap();
                let top = s.top_entry();
                assert_eq!(BigInt::from(top.count), pow(p, n - 1) * big(p - 1));
            }
        }
    }

    #[test]
    fn ramification_examples() {
        let mu = ExtRational::infinity();
        let regime = canonical_regime(3, &mu).unwrap();
        let spec = torsion_spectrum(3, 1, &mu).unwrap();
        let r = ramification_bounds(3, 1, &regime, &spec);
        assert_eq!(r.e_torsion_lower, 8);
        assert!(!r.e_torsion_strict);
        assert_eq!(r.e_base_lower, 3); // strict bound phi(3) = 2
        assert_eq!(r.e_base_divisibility, Some(8));
        assert_eq!(r.lcm_denominators, BigInt::from(8));

        let mu = ExtRational::new(1, 3);
        let regime = canonical_regime(11, &mu).unwrap();
        let spec = torsion_spectrum(11, 1, &mu).unwrap();
        let r = ramification_bounds(11, 1, &regime, &spec);
        assert_eq!(r.lcm_denominators, BigInt::from(330));
        assert!(r.e_torsion_strict);
        assert_eq!(r.e_base_divisibility, None);

        let mu = ExtRational::new(1, 5);
        let regime = canonical_regime(3, &mu).unwrap();
        let spec = torsion_spectrum(3, 2, &mu).unwrap();
        let r = ramification_bounds(3, 2, &regime, &spec);
        assert_eq!(r.lcm_denominators, BigInt::from(270));
    }

    #[test]
    fn torsion_field_degrees() {
        assert_eq!(
            minimal_torsion_field_degree(&[(3, 1)]).unwrap(),
            BigInt::from(8)
        );
        assert_eq!(
            minimal_torsion_field_degree(&[(5, 1), (7, 1)]).unwrap(),
            BigInt::from(1152)
        );
        assert_eq!(
            minimal_torsion_field_degree(&[(2, 2)]).unwrap(),
            BigInt::from(12)
        );
        assert!(minimal_torsion_field_degree(&[(4, 1)]).is_err());
        assert!(minimal_torsion_field_degree(&[(3, 1), (3, 1)]).is_err());
    }
}
