//! JSON wire formats for curves, polygons, spectra, and verdicts.
//!
//! Rational values always serialize as lowest-terms strings ("num/den", a
//! bare integer, or "inf"), never as floats, so outputs are exact and
//! byte-stable. Every document emitted here re-parses with the readers in
//! this module.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::algebra::{format_rational, parse_rational, ExtRational, FieldDescriptor, FieldElement};
use crate::curve::CurveModel;
use crate::error::{Error, Result};
use crate::poly::NewtonPolygon;
use crate::spectrum::{RamificationReport, SpectrumEntry, ValuationSpectrum};
use crate::sporadic::{Decision, GateCase, JClass, SporadicVerdict};

/// A curve input file: field descriptor, a-invariants, optional metadata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveFile {
    pub field: FieldDescriptor,
    pub a: [FieldElement; 5],
    pub label: Option<String>,
    pub j_class: Option<JClass>,
}

impl CurveFile {
    pub fn into_curve(self) -> Result<CurveModel> {
        CurveModel::new(self.a)
    }
}

// ---- encoding ----

pub fn field_descriptor_to_value(desc: &FieldDescriptor) -> Value {
    match desc {
        FieldDescriptor::Rational => json!({"kind": "rational"}),
        FieldDescriptor::Radical { r, e } => {
            json!({"kind": "radical", "r": bigint_to_value(r), "e": e})
        }
    }
}

fn bigint_to_value(n: &BigInt) -> Value {
    match i64::try_from(n.clone()) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

/// Coordinate strings on the power basis, most-significant coordinate last.
pub fn field_element_to_value(el: &FieldElement) -> Value {
    Value::Array(
        el.coords()
            .iter()
            .map(|c| Value::String(format_rational(c)))
            .collect(),
    )
}

pub fn curve_file_to_value(cf: &CurveFile) -> Value {
    let mut map = Map::new();
    map.insert("field".to_string(), field_descriptor_to_value(&cf.field));
    map.insert(
        "a".to_string(),
        Value::Array(cf.a.iter().map(field_element_to_value).collect()),
    );
    if let Some(label) = &cf.label {
        map.insert("label".to_string(), Value::String(label.clone()));
    }
    if let Some(jc) = &cf.j_class {
        map.insert("j_class".to_string(), Value::String(jc.label().to_string()));
    }
    Value::Object(map)
}

pub fn polygon_to_value(np: &NewtonPolygon) -> Value {
    json!({
        "vertices": np
            .vertices
            .iter()
            .map(|(i, v)| json!([i, format_rational(v)]))
            .collect::<Vec<_>>(),
        "segments": np
            .segments
            .iter()
            .map(|(s, l)| json!([format_rational(s), l]))
            .collect::<Vec<_>>(),
    })
}

pub fn spectrum_to_value(spec: &ValuationSpectrum) -> Value {
    json!({
        "p": spec.p,
        "n": spec.n,
        "entries": spec
            .entries
            .iter()
            .map(|e| json!({
                "valuation": format_rational(&e.valuation),
                "count": e.count,
                "above_canonical": e.above_canonical,
                "tag": e.tag.label(),
            }))
            .collect::<Vec<_>>(),
    })
}

pub fn x_spectrum_to_value(entries: &[(BigRational, u64)]) -> Value {
    Value::Array(
        entries
            .iter()
            .map(|(v, c)| json!([format_rational(v), c]))
            .collect(),
    )
}

pub fn ramification_to_value(r: &RamificationReport) -> Value {
    json!({
        "e_P_lower": r.e_torsion_lower,
        "e_P_strict": r.e_torsion_strict,
        "e_p_lower": r.e_base_lower,
        "e_p_divisibility": r.e_base_divisibility,
        "lcm_denominators": bigint_to_value(&r.lcm_denominators),
    })
}

pub fn verdict_to_value(v: &SporadicVerdict) -> Value {
    json!({
        "decision": match v.decision {
            Decision::NotSporadic => "not_sporadic",
            Decision::Inconclusive => "inconclusive",
        },
        "degree_lower_bound": format_rational(&v.degree_lower_bound),
        "gonality_bound": format_rational(&v.gonality_bound),
        "rationale": v.rationale.label(),
    })
}

// ---- decoding ----

fn expect_object<'v>(value: &'v Value, what: &str) -> Result<&'v Map<String, Value>> {
    value
        .as_object()
        .ok_or_else(|| Error::Parse(format!("{what} must be a JSON object")))
}

fn expect_str<'v>(value: &'v Value, what: &str) -> Result<&'v str> {
    value
        .as_str()
        .ok_or_else(|| Error::Parse(format!("{what} must be a string")))
}

fn expect_u64(value: &Value, what: &str) -> Result<u64> {
    value
        .as_u64()
        .ok_or_else(|| Error::Parse(format!("{what} must be a nonnegative integer")))
}

fn reject_unknown_keys(map: &Map<String, Value>, allowed: &[&str], what: &str) -> Result<()> {
    for key in map.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(Error::Parse(format!("unknown key `{key}` in {what}")));
        }
    }
    Ok(())
}

pub fn parse_field_descriptor(value: &Value) -> Result<FieldDescriptor> {
    let map = expect_object(value, "field descriptor")?;
    reject_unknown_keys(map, &["kind", "r", "e"], "field descriptor")?;
    let kind = expect_str(
        map.get("kind")
            .ok_or_else(|| Error::Parse("field descriptor needs `kind`".to_string()))?,
        "kind",
    )?;
    match kind {
        "rational" => Ok(FieldDescriptor::Rational),
        "radical" => {
            let r = map
                .get("r")
                .ok_or_else(|| Error::Parse("radical descriptor needs `r`".to_string()))?;
            let r = match r {
                Value::Number(n) => BigInt::from(
                    n.as_i64()
                        .ok_or_else(|| Error::Parse("radicand must be an integer".to_string()))?,
                ),
                Value::String(s) => s
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("invalid radicand `{s}`")))?,
                _ => return Err(Error::Parse("radicand must be an integer".to_string())),
            };
            let e = expect_u64(
                map.get("e")
                    .ok_or_else(|| Error::Parse("radical descriptor needs `e`".to_string()))?,
                "e",
            )?;
            let e = u32::try_from(e)
                .map_err(|_| Error::Parse(format!("degree {e} is out of range")))?;
            FieldDescriptor::radical(r, e)
        }
        other => Err(Error::Parse(format!("unknown field kind `{other}`"))),
    }
}

pub fn parse_field_element(value: &Value, desc: &FieldDescriptor) -> Result<FieldElement> {
    let arr = value
        .as_array()
        .ok_or_else(|| Error::Parse("field element must be an array of strings".to_string()))?;
    let coords = arr
        .iter()
        .map(|v| parse_rational(expect_str(v, "coordinate")?))
        .collect::<Result<Vec<BigRational>>>()?;
    FieldElement::from_coords(desc, coords)
}

pub fn parse_curve_file(value: &Value) -> Result<CurveFile> {
    let map = expect_object(value, "curve file")?;
    reject_unknown_keys(map, &["field", "a", "label", "j_class"], "curve file")?;
    let field = parse_field_descriptor(
        map.get("field")
            .ok_or_else(|| Error::Parse("curve file needs `field`".to_string()))?,
    )?;
    let a_val = map
        .get("a")
        .and_then(|v| v.as_array())
        .ok_or_else(|| Error::Parse("curve file needs an array `a`".to_string()))?;
    if a_val.len() != 5 {
        return Err(Error::Parse(format!(
            "`a` must list [a1, a2, a3, a4, a6], got {} entries",
            a_val.len()
        )));
    }
    let mut a_iter = a_val.iter().map(|v| parse_field_element(v, &field));
    let a = [
        a_iter.next().unwrap()?,
        a_iter.next().unwrap()?,
        a_iter.next().unwrap()?,
        a_iter.next().unwrap()?,
        a_iter.next().unwrap()?,
    ];
    let label = match map.get("label") {
        None => None,
        Some(v) => Some(expect_str(v, "label")?.to_string()),
    };
    let j_class = match map.get("j_class") {
        None => None,
        Some(v) => Some(JClass::parse(expect_str(v, "j_class")?)?),
    };
    Ok(CurveFile {
        field,
        a,
        label,
        j_class,
    })
}

pub fn parse_curve_json(text: &str) -> Result<CurveFile> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    parse_curve_file(&value)
}

pub fn parse_polygon(value: &Value) -> Result<NewtonPolygon> {
    let map = expect_object(value, "polygon")?;
    reject_unknown_keys(map, &["vertices", "segments"], "polygon")?;
    let verts = map
        .get("vertices")
        .and_then(|v| v.as_array())
        .ok_or_else(|| Error::Parse("polygon needs `vertices`".to_string()))?;
    let mut vertices = Vec::new();
    for v in verts {
        let pair = v
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Parse("vertex must be [index, valuation]".to_string()))?;
        let i = expect_u64(&pair[0], "vertex index")? as usize;
        let val = parse_rational(expect_str(&pair[1], "vertex valuation")?)?;
        vertices.push((i, val));
    }
    let segs = map
        .get("segments")
        .and_then(|v| v.as_array())
        .ok_or_else(|| Error::Parse("polygon needs `segments`".to_string()))?;
    let mut segments = Vec::new();
    for s in segs {
        let pair = s
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Parse("segment must be [slope, length]".to_string()))?;
        let slope = parse_rational(expect_str(&pair[0], "segment slope")?)?;
        let len = expect_u64(&pair[1], "segment length")? as usize;
        segments.push((slope, len));
    }
    Ok(NewtonPolygon { vertices, segments })
}

pub fn parse_spectrum(value: &Value) -> Result<ValuationSpectrum> {
    let map = expect_object(value, "spectrum")?;
    reject_unknown_keys(map, &["p", "n", "entries"], "spectrum")?;
    let p = expect_u64(
        map.get("p")
            .ok_or_else(|| Error::Parse("spectrum needs `p`".to_string()))?,
        "p",
    )?;
    let n = expect_u64(
        map.get("n")
            .ok_or_else(|| Error::Parse("spectrum needs `n`".to_string()))?,
        "n",
    )? as u32;
    let raw = map
        .get("entries")
        .and_then(|v| v.as_array())
        .ok_or_else(|| Error::Parse("spectrum needs `entries`".to_string()))?;
    let mut entries = Vec::new();
    for e in raw {
        let emap = expect_object(e, "spectrum entry")?;
        reject_unknown_keys(
            emap,
            &["valuation", "count", "above_canonical", "tag"],
            "spectrum entry",
        )?;
        let valuation = parse_rational(expect_str(
            emap.get("valuation")
                .ok_or_else(|| Error::Parse("entry needs `valuation`".to_string()))?,
            "valuation",
        )?)?;
        let count = expect_u64(
            emap.get("count")
                .ok_or_else(|| Error::Parse("entry needs `count`".to_string()))?,
            "count",
        )?;
        let above_canonical = emap
            .get("above_canonical")
            .and_then(|v| v.as_bool())
            .ok_or_else(|| Error::Parse("entry needs boolean `above_canonical`".to_string()))?;
        let tag_str = expect_str(
            emap.get("tag")
                .ok_or_else(|| Error::Parse("entry needs `tag`".to_string()))?,
            "tag",
        )?;
        let tag = parse_entry_tag(tag_str)?;
        entries.push(SpectrumEntry {
            valuation,
            count,
            above_canonical,
            tag,
        });
    }
    Ok(ValuationSpectrum { p, n, entries })
}

fn parse_entry_tag(s: &str) -> Result<crate::spectrum::EntryTag> {
    use crate::spectrum::EntryTag;
    if s == "top" {
        return Ok(EntryTag::Top);
    }
    if s == "off-canonical" {
        return Ok(EntryTag::OffCanonical);
    }
    if let Some(j) = s.strip_prefix("layer-") {
        let j = j
            .parse::<u32>()
            .map_err(|_| Error::Parse(format!("invalid layer tag `{s}`")))?;
        return Ok(EntryTag::Layer(j));
    }
    Err(Error::Parse(format!("unknown spectrum tag `{s}`")))
}

pub fn parse_ramification(value: &Value) -> Result<RamificationReport> {
    let map = expect_object(value, "ramification report")?;
    reject_unknown_keys(
        map,
        &[
            "e_P_lower",
            "e_P_strict",
            "e_p_lower",
            "e_p_divisibility",
            "lcm_denominators",
        ],
        "ramification report",
    )?;
    let get = |key: &str| {
        map.get(key)
            .ok_or_else(|| Error::Parse(format!("ramification report needs `{key}`")))
    };
    let lcm = match get("lcm_denominators")? {
        Value::Number(n) => BigInt::from(
            n.as_u64()
                .ok_or_else(|| Error::Parse("lcm must be a positive integer".to_string()))?,
        ),
        Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("invalid lcm `{s}`")))?,
        _ => return Err(Error::Parse("lcm must be an integer".to_string())),
    };
    Ok(RamificationReport {
        e_torsion_lower: expect_u64(get("e_P_lower")?, "e_P_lower")?,
        e_torsion_strict: get("e_P_strict")?
            .as_bool()
            .ok_or_else(|| Error::Parse("e_P_strict must be a boolean".to_string()))?,
        e_base_lower: expect_u64(get("e_p_lower")?, "e_p_lower")?,
        e_base_divisibility: match get("e_p_divisibility")? {
            Value::Null => None,
            v => Some(expect_u64(v, "e_p_divisibility")?),
        },
        lcm_denominators: lcm,
    })
}

pub fn parse_verdict(value: &Value) -> Result<SporadicVerdict> {
    let map = expect_object(value, "verdict")?;
    reject_unknown_keys(
        map,
        &["decision", "degree_lower_bound", "gonality_bound", "rationale"],
        "verdict",
    )?;
    let get = |key: &str| {
        map.get(key)
            .ok_or_else(|| Error::Parse(format!("verdict needs `{key}`")))
    };
    let decision = match expect_str(get("decision")?, "decision")? {
        "not_sporadic" => Decision::NotSporadic,
        "inconclusive" => Decision::Inconclusive,
        other => return Err(Error::Parse(format!("unknown decision `{other}`"))),
    };
    let rationale = match expect_str(get("rationale")?, "rationale")? {
        "generic" => GateCase::Generic,
        "j0" => GateCase::JZero,
        "j1728" => GateCase::J1728,
        "cm-constant" => GateCase::CmConstant,
        "composite" => GateCase::Composite,
        "custom" => GateCase::Custom,
        "hypothesis-unmet" => GateCase::HypothesisUnmet,
        other => return Err(Error::Parse(format!("unknown rationale `{other}`"))),
    };
    Ok(SporadicVerdict {
        decision,
        degree_lower_bound: parse_rational(expect_str(
            get("degree_lower_bound")?,
            "degree_lower_bound",
        )?)?,
        gonality_bound: parse_rational(expect_str(get("gonality_bound")?, "gonality_bound")?)?,
        rationale,
    })
}

pub fn parse_ext_rational(s: &str) -> Result<ExtRational> {
    ExtRational::parse(s)
}
