//! Deterministic JSON encodings for the CLI and file interfaces.
//!
//! Every floating-point number is emitted as a decimal string with a
//! fixed 17-significant-digit scientific format, so identical inputs
//! produce byte-identical output on every platform. Matrices are encoded
//! entrywise on the determinant-1, sign-normalized representative; the
//! point at infinity encodes as `{"inf": true}`.

use crate::error::Error;
use crate::marked::{MarkedBGroup, Word};
use crate::moebius::{Cplx, ExtComplex, MoebiusMap};
use crate::triangle::{Nu, Signature};
use crate::verify::{CheckStatus, PointCloud, VerificationReport};
use crate::Result;
use serde_json::{json, Map, Value};

/// 17 significant digits, fixed scientific format, no locale.
pub fn fmt_f64(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x }; // collapse -0.0
    format!("{:.16e}", x)
}

pub fn parse_f64(text: &str) -> Result<f64> {
    text.parse::<f64>()
        .map_err(|e| Error::Parse(format!("bad float {:?}: {}", text, e)))
}

pub fn complex_to_json(z: Cplx) -> Value {
    json!({ "re": fmt_f64(z.re), "im": fmt_f64(z.im) })
}

pub fn complex_from_json(v: &Value) -> Result<Cplx> {
    let re = v
        .get("re")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("complex value needs a \"re\" string".to_string()))?;
    let im = v
        .get("im")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("complex value needs an \"im\" string".to_string()))?;
    Ok(Cplx::new(parse_f64(re)?, parse_f64(im)?))
}

pub fn ext_complex_to_json(z: ExtComplex) -> Value {
    match z {
        ExtComplex::Infinity => json!({ "inf": true }),
        ExtComplex::Finite(z) => complex_to_json(z),
    }
}

pub fn ext_complex_from_json(v: &Value) -> Result<ExtComplex> {
    if v.get("inf").and_then(Value::as_bool) == Some(true) {
        return Ok(ExtComplex::Infinity);
    }
    Ok(ExtComplex::Finite(complex_from_json(v)?))
}

pub fn matrix_to_json(m: &MoebiusMap) -> Value {
    let (a, b, c, d) = m.entries();
    json!({
        "a": complex_to_json(a),
        "b": complex_to_json(b),
        "c": complex_to_json(c),
        "d": complex_to_json(d),
    })
}

pub fn matrix_from_json(v: &Value) -> Result<MoebiusMap> {
    let entry = |k: &str| -> Result<Cplx> {
        complex_from_json(
            v.get(k)
                .ok_or_else(|| Error::Parse(format!("matrix needs entry {:?}", k)))?,
        )
    };
    MoebiusMap::new(entry("a")?, entry("b")?, entry("c")?, entry("d")?)
}

pub fn signature_to_json(sig: &Signature) -> Value {
    json!({
        "p": sig.genus,
        "n": sig.n(),
        "nu": sig.nu.iter().map(|nu| match nu {
            Nu::Infinity => Value::Null,
            Nu::Finite(v) => json!(v),
        }).collect::<Vec<_>>(),
    })
}

pub fn signature_from_json(v: &Value) -> Result<Signature> {
    let p = v
        .get("p")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("signature needs integer \"p\"".to_string()))?;
    let nu_list = v
        .get("nu")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("signature needs array \"nu\"".to_string()))?;
    let mut nu = Vec::new();
    for item in nu_list {
        nu.push(match item {
            Value::Null => Nu::Infinity,
            Value::Number(n) => {
                let v = n
                    .as_u64()
                    .ok_or_else(|| Error::Parse(format!("bad ramification value {}", n)))?;
                Nu::new_finite(v)?
            }
            other => return Err(Error::Parse(format!("bad ramification entry {}", other))),
        });
    }
    Ok(Signature::new(p, nu))
}

fn word_to_json(w: &Word) -> Value {
    Value::Array(
        w.0.iter()
            .map(|(n, e)| json!([n, e]))
            .collect::<Vec<_>>(),
    )
}

fn word_from_json(v: &Value) -> Result<Word> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("relation must be an array of [name, exp]".to_string()))?;
    let mut syllables = Vec::new();
    for item in arr {
        let pair = item
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| Error::Parse("relation syllable must be [name, exp]".to_string()))?;
        let name = pair[0]
            .as_str()
            .ok_or_else(|| Error::Parse("syllable name must be a string".to_string()))?;
        let exp = pair[1]
            .as_i64()
            .ok_or_else(|| Error::Parse("syllable exponent must be an integer".to_string()))?;
        syllables.push((name.to_string(), exp));
    }
    Ok(Word(syllables))
}

pub fn group_to_json(g: &MarkedBGroup) -> Value {
    json!({
        "signature": signature_to_json(&g.signature),
        "generators": g.generators.iter().map(|(n, m)| json!({
            "name": n,
            "matrix": matrix_to_json(m),
        })).collect::<Vec<_>>(),
        "relations": g.relations.iter().map(word_to_json).collect::<Vec<_>>(),
        "accidental_parabolics": g.accidental_parabolics,
        "coordinates": g.coordinates.iter().map(|z| complex_to_json(*z)).collect::<Vec<_>>(),
        "partition_label": g.partition_label,
        "warnings": g.warnings,
        "anchors": g.anchors.iter().map(|(n, p)| json!({
            "name": n,
            "point": ext_complex_to_json(*p),
        })).collect::<Vec<_>>(),
    })
}

pub fn group_from_json(v: &Value) -> Result<MarkedBGroup> {
    let signature = signature_from_json(
        v.get("signature")
            .ok_or_else(|| Error::Parse("group needs \"signature\"".to_string()))?,
    )?;
    let mut generators = Vec::new();
    for item in v
        .get("generators")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("group needs \"generators\"".to_string()))?
    {
        let name = item
            .get("name")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("generator needs \"name\"".to_string()))?;
        let matrix = matrix_from_json(
            item.get("matrix")
                .ok_or_else(|| Error::Parse("generator needs \"matrix\"".to_string()))?,
        )?;
        generators.push((name.to_string(), matrix));
    }
    let mut relations = Vec::new();
    if let Some(arr) = v.get("relations").and_then(Value::as_array) {
        for item in arr {
            relations.push(word_from_json(item)?);
        }
    }
    let accidental = v
        .get("accidental_parabolics")
        .and_then(Value::as_array)
        .map(|arr| {
            arr.iter()
                .filter_map(Value::as_str)
                .map(str::to_string)
                .collect()
        })
        .unwrap_or_default();
    let mut coordinates = Vec::new();
    if let Some(arr) = v.get("coordinates").and_then(Value::as_array) {
        for item in arr {
            coordinates.push(complex_from_json(item)?);
        }
    }
    let mut anchors = Vec::new();
    if let Some(arr) = v.get("anchors").and_then(Value::as_array) {
        for item in arr {
            let name = item
                .get("name")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("anchor needs \"name\"".to_string()))?;
            let point = ext_complex_from_json(
                item.get("point")
                    .ok_or_else(|| Error::Parse("anchor needs \"point\"".to_string()))?,
            )?;
            anchors.push((name.to_string(), point));
        }
    }
    Ok(MarkedBGroup {
        signature,
        generators,
        relations,
        accidental_parabolics: accidental,
        coordinates,
        partition_label: v
            .get("partition_label")
            .and_then(Value::as_str)
            .unwrap_or_default()
            .to_string(),
        warnings: v
            .get("warnings")
            .and_then(Value::as_array)
            .map(|arr| {
                arr.iter()
                    .filter_map(Value::as_str)
                    .map(str::to_string)
                    .collect()
            })
            .unwrap_or_default(),
        anchors,
    })
}

pub fn report_to_json(report: &VerificationReport) -> Value {
    json!({
        "passed": report.all_passed(),
        "checks": report.entries.iter().map(|e| json!({
            "name": e.name,
            "status": match e.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "fail",
                CheckStatus::Borderline => "borderline",
                CheckStatus::Uncertified => "uncertified",
            },
            "residual": fmt_f64(e.residual),
            "detail": e.detail,
        })).collect::<Vec<_>>(),
    })
}

pub fn point_cloud_to_json(cloud: &PointCloud) -> Value {
    json!({
        "group": cloud.group_label,
        "max_word_length": cloud.max_word_length,
        "generator_count": cloud.generator_count,
        "truncated": cloud.truncated,
        "count": cloud.points.len(),
        "points": cloud.points.iter().map(|z| complex_to_json(*z)).collect::<Vec<_>>(),
    })
}

/// Renders a JSON value with sorted object keys and stable spacing.
pub fn to_stable_string(v: &Value) -> String {
    fn sort(v: &Value) -> Value {
        match v {
            Value::Object(map) => {
                let mut sorted = Map::new();
                let mut keys: Vec<&String> = map.keys().collect();
                keys.sort();
                for k in keys {
                    sorted.insert(k.clone(), sort(&map[k]));
                }
                Value::Object(sorted)
            }
            Value::Array(items) => Value::Array(items.iter().map(sort).collect()),
            other => other.clone(),
        }
    }
    serde_json::to_string_pretty(&sort(v)).expect("JSON serializes")
}

/// Parses the CLI complex-literal grammar: `a+bi`, `a-bi`, `bi`, `a`,
/// `i`, `-i`, with `inf` for the point at infinity. No spaces.
pub fn parse_ext_complex(text: &str) -> Result<ExtComplex> {
    if text == "inf" {
        return Ok(ExtComplex::Infinity);
    }
    Ok(ExtComplex::Finite(parse_complex(text)?))
}

pub fn parse_complex(text: &str) -> Result<Cplx> {
    let bad = || Error::Parse(format!("bad complex literal {:?}", text));
    let s = text.trim();
    if s.is_empty() {
        return Err(bad());
    }
    if let Some(im_part) = s.strip_suffix('i') {
        // find a +/- separating real and imaginary parts (not a leading
        // sign and not an exponent sign)
        let bytes = im_part.as_bytes();
        let mut split = None;
        for k in (1..im_part.len()).rev() {
            let c = bytes[k] as char;
            if (c == '+' || c == '-') && !matches!(bytes[k - 1] as char, 'e' | 'E') {
                split = Some(k);
                break;
            }
        }
        match split {
            Some(k) => {
                let re = parse_f64(&im_part[..k])?;
                let im_str = &im_part[k..];
                let im = match im_str {
                    "+" => 1.0,
                    "-" => -1.0,
                    other => parse_f64(other)?,
                };
                Ok(Cplx::new(re, im))
            }
            None => {
                let im = match im_part {
                    "" => 1.0,
                    "-" => -1.0,
                    "+" => 1.0,
                    other => parse_f64(other)?,
                };
                Ok(Cplx::new(0.0, im))
            }
        }
    } else {
        Ok(Cplx::new(parse_f64(s)?, 0.0))
    }
}

/// Parses the signature grammar `p,n;v1,...,vn` with `inf` for ∞,
/// e.g. `0,3;inf,2,2`.
pub fn parse_signature(text: &str) -> Result<Signature> {
    let bad = |msg: &str| Error::Parse(format!("bad signature {:?}: {}", text, msg));
    let (head, tail) = text
        .split_once(';')
        .ok_or_else(|| bad("expected `p,n;v1,...,vn`"))?;
    let mut head_parts = head.split(',');
    let p: u64 = head_parts
        .next()
        .ok_or_else(|| bad("missing genus"))?
        .trim()
        .parse()
        .map_err(|_| bad("genus must be a non-negative integer"))?;
    let n: usize = head_parts
        .next()
        .ok_or_else(|| bad("missing point count"))?
        .trim()
        .parse()
        .map_err(|_| bad("point count must be a non-negative integer"))?;
    if head_parts.next().is_some() {
        return Err(bad("too many head fields"));
    }
    let mut nu = Vec::new();
    if !tail.trim().is_empty() {
        for part in tail.split(',') {
            let part = part.trim();
            if part == "inf" {
                nu.push(Nu::Infinity);
            } else {
                let v: u64 = part
                    .parse()
                    .map_err(|_| bad("ramification values are integers ≥ 2 or `inf`"))?;
                nu.push(Nu::new_finite(v)?);
            }
        }
    }
    if nu.len() != n {
        return Err(bad(&format!("expected {} ramification values, got {}", n, nu.len())));
    }
    Ok(Signature::new(p, nu))
}
