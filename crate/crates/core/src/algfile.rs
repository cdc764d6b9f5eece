//! Text format for algebra candidates and reports.
//!
//! Algebra files are JSON with a fixed field order:
//!
//! ```text
//! {
//!   "format_version": 1,
//!   "flattening": "delta row i*n+j holds e_i (x) e_j; column k is the input e_k",
//!   "semiring": "complex",
//!   "dimension": 2,
//!   "delta": [
//!     [[1.0, 0.0], [0.0, 0.0]],
//!     [[0.0, 0.0], [0.0, 0.0]],
//!     [[0.0, 0.0], [0.0, 0.0]],
//!     [[0.0, 0.0], [1.0, 0.0]]
//!   ],
//!   "epsilon": [[1.0, 0.0], [1.0, 0.0]]
//! }
//! ```
//!
//! `labels` (a list of strings) may follow `dimension`, and `epsilon` is
//! optional. Entries are `0`/`1` for `bool`, `[re, im]` for `complex`, and
//! nonnegative numbers otherwise, with `"inf"` allowed in the quantale.
//! Numbers are written in shortest round-trip form, so writing a file that
//! was itself written by [`write_algebra`] reproduces it byte for byte.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;

use crate::axioms::{AlgebraCandidate, StarMap, Verdict};
use crate::error::{Error, Result};
use crate::matcat::{Mor, Obj};
use crate::semiring::{Kind, Scalar, ScalarDomain};
use crate::structure::Decomposition;

pub const FORMAT_VERSION: u64 = 1;
pub const FLATTENING: &str = "delta row i*n+j holds e_i (x) e_j; column k is the input e_k";

const KEYS: [&str; 7] = [
    "format_version",
    "flattening",
    "semiring",
    "dimension",
    "labels",
    "delta",
    "epsilon",
];

pub fn read_algebra(path: impl AsRef<Path>) -> Result<AlgebraCandidate> {
    let text = std::fs::read_to_string(path)?;
    parse_algebra(&text)
}

fn at(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Format(format!("line {line}: {msg}"))
}

/// Parses an algebra file, reporting the line of the first problem.
pub fn parse_algebra(text: &str) -> Result<AlgebraCandidate> {
    let value: Value = serde_json::from_str(text).map_err(|e| at(e.line(), format!("invalid JSON: {e}")))?;
    let obj = value.as_object().ok_or_else(|| at(1, "expected a JSON object"))?;
    let key_line = |key: &str| key_line(text, key);

    for key in obj.keys() {
        if !KEYS.contains(&key.as_str()) {
            return Err(at(key_line(key), format!("unknown field {key:?}")));
        }
    }
    let field = |key: &str| obj.get(key).ok_or_else(|| at(1, format!("missing field {key:?}")));

    match field("format_version")?.as_u64() {
        Some(FORMAT_VERSION) => {}
        _ => return Err(at(key_line("format_version"), "format_version must be 1")),
    }
    let tag = field("semiring")?
        .as_str()
        .ok_or_else(|| at(key_line("semiring"), "semiring must be a string"))?;
    let kind = Kind::from_tag(tag).ok_or_else(|| {
        at(
            key_line("semiring"),
            format!("unknown semiring {tag:?} (bool, complex, nonneg_real, quantale_ext_nonneg_real)"),
        )
    })?;
    let domain = ScalarDomain::new(kind);
    let n = field("dimension")?
        .as_u64()
        .filter(|&n| n >= 1)
        .ok_or_else(|| at(key_line("dimension"), "dimension must be a positive integer"))? as usize;

    let labels = match obj.get("labels") {
        None => None,
        Some(v) => {
            let line = key_line("labels");
            let arr = v
                .as_array()
                .ok_or_else(|| at(line, "labels must be a list of strings"))?;
            if arr.len() != n {
                return Err(at(line, format!("{} labels for dimension {n}", arr.len())));
            }
            Some(
                arr.iter()
                    .map(|l| {
                        l.as_str()
                            .map(str::to_owned)
                            .ok_or_else(|| at(line, "labels must be strings"))
                    })
                    .collect::<Result<Vec<_>>>()?,
            )
        }
    };

    let delta_line = key_line("delta");
    let rows = field("delta")?
        .as_array()
        .ok_or_else(|| at(delta_line, "delta must be a list of rows"))?;
    let row_lines = nested_lines(text, "delta");
    let row_line = |r: usize| row_lines.get(r).copied().unwrap_or(delta_line);
    if rows.len() != n * n {
        return Err(at(
            delta_line,
            format!(
                "delta has {} rows, expected n² = {} rows (pair index i*n+j)",
                rows.len(),
                n * n
            ),
        ));
    }
    let mut values = Vec::with_capacity(n * n * n);
    for (r, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| at(row_line(r), format!("delta row {r} is not a list")))?;
        if row.len() != n {
            return Err(at(
                row_line(r),
                format!("delta row {r} has {} entries, expected {n}", row.len()),
            ));
        }
        for (c, v) in row.iter().enumerate() {
            values.push(parse_entry(domain, v).map_err(|m| at(row_line(r), format!("delta[{r}][{c}]: {m}")))?);
        }
    }

    let epsilon = match obj.get("epsilon") {
        None => None,
        Some(v) => {
            let line = key_line("epsilon");
            let arr = v.as_array().ok_or_else(|| at(line, "epsilon must be a list"))?;
            if arr.len() != n {
                return Err(at(line, format!("epsilon has {} entries, expected {n}", arr.len())));
            }
            let eps = arr
                .iter()
                .enumerate()
                .map(|(k, v)| parse_entry(domain, v).map_err(|m| at(line, format!("epsilon[{k}]: {m}"))))
                .collect::<Result<Vec<_>>>()?;
            Some(Mor::from_scalars(Obj::new(n), Obj::unit(), domain, eps)?)
        }
    };

    let delta = Mor::from_scalars(Obj::new(n), Obj::from_dims(vec![n, n])?, domain, values)?;
    let cand = AlgebraCandidate::new(delta, epsilon)?;
    match labels {
        Some(l) => cand.with_labels(l),
        None => Ok(cand),
    }
}

fn parse_entry(domain: ScalarDomain, v: &Value) -> std::result::Result<Scalar, String> {
    let out = match domain.kind {
        Kind::Boolean => match v.as_u64() {
            Some(0) => Scalar::Bool(false),
            Some(1) => Scalar::Bool(true),
            _ => return Err(format!("{v} is not a bool entry (0 or 1)")),
        },
        Kind::Complex => match v {
            Value::Array(pair) if pair.len() == 2 => match (pair[0].as_f64(), pair[1].as_f64()) {
                (Some(re), Some(im)) => Scalar::Complex(Complex64::new(re, im)),
                _ => return Err(format!("{v} is not a complex entry [re, im]")),
            },
            _ => return Err(format!("{v} is not a complex entry [re, im]")),
        },
        Kind::NonnegReal | Kind::Quantale => match v {
            Value::String(s) if s == "inf" && domain.kind == Kind::Quantale => Scalar::Real(f64::INFINITY),
            _ => match v.as_f64() {
                Some(x) => Scalar::Real(x),
                None => return Err(format!("{v} is not a number")),
            },
        },
    };
    if domain.contains(&out) {
        Ok(out)
    } else {
        Err(format!("{v} is outside the {} semiring", domain.kind))
    }
}

/// 1-based line of `"key":` in the text, or 1.
fn key_line(text: &str, key: &str) -> usize {
    let needle = format!("\"{key}\"");
    text.find(&needle).map_or(1, |pos| line_of(text, pos))
}

fn line_of(text: &str, pos: usize) -> usize {
    text[..pos].bytes().filter(|&b| b == b'\n').count() + 1
}

/// Lines on which the elements of the array under `key` begin, assuming
/// each element is itself an array.
fn nested_lines(text: &str, key: &str) -> Vec<usize> {
    let needle = format!("\"{key}\"");
    let Some(start) = text.find(&needle) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut in_string = false;
    let mut escaped = false;
    for (i, b) in text.bytes().enumerate().skip(start + needle.len()) {
        if in_string {
            match b {
                _ if escaped => escaped = false,
                b'\\' => escaped = true,
                b'"' => in_string = false,
                _ => {}
            }
            continue;
        }
        match b {
            b'"' => in_string = true,
            b'[' => {
                depth += 1;
                if depth == 2 {
                    out.push(line_of(text, i));
                }
            }
            b']' => {
                depth = depth.saturating_sub(1);
                if depth == 0 {
                    break;
                }
            }
            _ => {}
        }
    }
    out
}

/// Shortest round-trip decimal, always with a fraction or exponent.
fn number(x: f64) -> String {
    serde_json::to_string(&x).expect("finite")
}

fn entry(s: Scalar) -> String {
    match s {
        Scalar::Bool(b) => u8::from(b).to_string(),
        Scalar::Complex(z) => format!("[{}, {}]", number(z.re), number(z.im)),
        Scalar::Real(x) if x.is_infinite() => "\"inf\"".to_string(),
        Scalar::Real(x) => number(x),
    }
}

/// Canonical text of an algebra file.
pub fn write_algebra(cand: &AlgebraCandidate) -> String {
    let n = cand.n();
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"format_version\": {FORMAT_VERSION},");
    let _ = writeln!(out, "  \"flattening\": {},", serde_json::to_string(FLATTENING).unwrap());
    let _ = writeln!(out, "  \"semiring\": \"{}\",", cand.domain().kind.tag());
    let _ = writeln!(out, "  \"dimension\": {n},");
    if let Some(labels) = cand.carrier().labels() {
        let _ = writeln!(out, "  \"labels\": {},", serde_json::to_string(labels).unwrap());
    }
    out.push_str("  \"delta\": [\n");
    for r in 0..n * n {
        let row: Vec<String> = (0..n).map(|c| entry(cand.delta().get(r, c))).collect();
        let sep = if r + 1 < n * n { "," } else { "" };
        let _ = writeln!(out, "    [{}]{sep}", row.join(", "));
    }
    out.push_str("  ]");
    if let Some(eps) = cand.epsilon() {
        let row: Vec<String> = (0..n).map(|c| entry(eps.get(0, c))).collect();
        let _ = write!(out, ",\n  \"epsilon\": [{}]", row.join(", "));
    }
    out.push_str("\n}\n");
    out
}

pub fn save_algebra(cand: &AlgebraCandidate, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, write_algebra(cand))?;
    Ok(())
}

/// What a report describes.
pub enum Report<'a> {
    Check {
        cand: &'a AlgebraCandidate,
        verdicts: &'a [Verdict],
    },
    Decomposition {
        cand: &'a AlgebraCandidate,
        decomposition: &'a Decomposition,
    },
    Star {
        cand: &'a AlgebraCandidate,
        star: &'a StarMap,
    },
}

#[derive(Serialize)]
struct WitnessRecord {
    row: usize,
    col: usize,
    lhs: String,
    rhs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    basis_point: Option<usize>,
}

#[derive(Serialize)]
struct VerdictRecord {
    axiom: &'static str,
    result: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessRecord>,
}

#[derive(Serialize)]
struct CheckRecord {
    format_version: u64,
    report: &'static str,
    semiring: &'static str,
    dimension: usize,
    tolerance: f64,
    verdicts: Vec<VerdictRecord>,
}

#[derive(Serialize)]
struct SummandRecord {
    order: usize,
    elements: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    weight: String,
    table: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct CopyableRecord {
    seed: u64,
    gram_residual: String,
    /// `[re, im]` per coordinate, six decimals.
    points: Vec<Vec<[String; 2]>>,
}

#[derive(Serialize)]
struct DecompositionRecord {
    format_version: u64,
    report: &'static str,
    semiring: &'static str,
    dimension: usize,
    summands: Vec<SummandRecord>,
    radical_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    copyables: Option<CopyableRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    anomaly: Option<String>,
}

#[derive(Serialize)]
struct StarRecord {
    format_version: u64,
    report: &'static str,
    semiring: &'static str,
    dimension: usize,
    /// `star[j]` is the image of basis point `j`.
    star: Vec<Vec<String>>,
}

/// Six fixed decimals with negative zero folded into zero.
pub fn fixed6(x: f64) -> String {
    let s = format!("{x:.6}");
    if s.trim_start_matches('-').bytes().all(|b| b == b'0' || b == b'.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

/// Objects one field per line; arrays of scalars, or of arrays of scalars,
/// on a single line.
fn render(v: &Value, indent: usize, out: &mut String) {
    let flat = |v: &Value| !v.is_array() && !v.is_object();
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                render(x, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        Value::Array(items)
            if !items.is_empty()
                && !items
                    .iter()
                    .all(|x| flat(x) || x.as_array().is_some_and(|a| a.iter().all(flat))) =>
        {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad);
                render(x, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Value::Array(items) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                render(x, indent + 1, out);
            }
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}

/// JSON report, newline-terminated.
pub fn write_report(report: &Report<'_>) -> String {
    let json = match *report {
        Report::Check { cand, verdicts } => serde_json::to_value(&CheckRecord {
            format_version: FORMAT_VERSION,
            report: "check",
            semiring: cand.domain().kind.tag(),
            dimension: cand.n(),
            tolerance: cand.domain().tolerance,
            verdicts: verdicts
                .iter()
                .map(|v| VerdictRecord {
                    axiom: v.axiom.tag(),
                    result: if v.pass { "pass" } else { "fail" },
                    witness: v.witness.as_ref().map(|w| WitnessRecord {
                        row: w.row,
                        col: w.col,
                        lhs: w.lhs.to_string(),
                        rhs: w.rhs.to_string(),
                        basis_point: w.point,
                    }),
                })
                .collect(),
        }),
        Report::Decomposition { cand, decomposition } => serde_json::to_value(&DecompositionRecord {
            format_version: FORMAT_VERSION,
            report: "decomposition",
            semiring: cand.domain().kind.tag(),
            dimension: cand.n(),
            summands: decomposition
                .summands
                .iter()
                .map(|s| SummandRecord {
                    order: s.order(),
                    elements: s.elements.clone(),
                    identity: s.identity,
                    inverses: s.inverses.clone(),
                    weight: s.weight.to_string(),
                    table: s.group_table.clone(),
                })
                .collect(),
            radical_dim: decomposition.radical_dim,
            copyables: decomposition.copyables.as_ref().map(|c| CopyableRecord {
                seed: c.seed,
                gram_residual: format!("{:e}", c.gram_residual),
                points: c
                    .points
                    .iter()
                    .map(|p| p.iter().map(|z| [fixed6(z.re), fixed6(z.im)]).collect())
                    .collect(),
            }),
            anomaly: decomposition.anomaly(cand.domain().tolerance),
        }),
        Report::Star { cand, star } => serde_json::to_value(&StarRecord {
            format_version: FORMAT_VERSION,
            report: "star",
            semiring: cand.domain().kind.tag(),
            dimension: cand.n(),
            star: (0..star.n())
                .map(|j| (0..star.n()).map(|r| star.matrix.get(r, j).to_string()).collect())
                .collect(),
        }),
    };
    let mut s = String::new();
    render(&json.expect("plain records serialize"), 0, &mut s);
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{check_axiom, Axiom};
    use crate::builders::{
        counterexample, disjoint_groups_rel, from_basis, group_algebra, parse_group_list, GroupSpec,
    };
    use crate::structure::decompose;

    const STD2: &str = r#"{
  "format_version": 1,
  "flattening": "delta row i*n+j holds e_i (x) e_j; column k is the input e_k",
  "semiring": "complex",
  "dimension": 2,
  "delta": [
    [[1.0, 0.0], [0.0, 0.0]],
    [[0.0, 0.0], [0.0, 0.0]],
    [[0.0, 0.0], [0.0, 0.0]],
    [[0.0, 0.0], [1.0, 0.0]]
  ],
  "epsilon": [[1.0, 0.0], [1.0, 0.0]]
}
"#;

    #[test]
    fn standard_basis_file() {
        let cand = parse_algebra(STD2).unwrap();
        assert_eq!(cand.n(), 2);
        for ax in [Axiom::A, Axiom::U, Axiom::C, Axiom::M, Axiom::F, Axiom::Fp] {
            assert!(check_axiom(&cand, ax).unwrap().pass);
        }
        assert_eq!(write_algebra(&cand), STD2);
    }

    #[test]
    fn wrong_row_count_names_n_squared() {
        let text = STD2.replace(
            "    [[0.0, 0.0], [0.0, 0.0]],\n    [[0.0, 0.0], [1.0, 0.0]]\n",
            "    [[0.0, 0.0], [0.0, 0.0]]\n",
        );
        assert_ne!(text, STD2);
        let err = parse_algebra(&text).unwrap_err().to_string();
        assert!(err.contains("expected n² = 4"), "{err}");
        assert!(err.contains("line 6:"), "{err}");
    }

    #[test]
    fn bool_entry_out_of_range() {
        let cand = group_algebra(&GroupSpec::cyclic(2), ScalarDomain::boolean()).unwrap();
        let text = write_algebra(&cand);
        let bad = text.replacen("[1, 0]", "[2, 0]", 1);
        let err = parse_algebra(&bad).unwrap_err().to_string();
        assert!(err.contains("not a bool entry"), "{err}");
        assert!(err.contains("line 7:"), "{err}");
    }

    #[test]
    fn other_input_errors() {
        assert!(parse_algebra("{").unwrap_err().to_string().contains("line 1:"));
        assert!(parse_algebra(&STD2.replace("complex", "octonion")).is_err());
        assert!(parse_algebra(&STD2.replace("\"format_version\": 1", "\"format_version\": 2")).is_err());
        let real = write_algebra(&group_algebra(&GroupSpec::cyclic(1), ScalarDomain::nonneg_real()).unwrap());
        let neg = real.replace("[1.0]", "[-1.0]");
        assert_ne!(neg, real);
        assert!(parse_algebra(&neg)
            .unwrap_err()
            .to_string()
            .contains("outside the nonneg_real"));
        let extra = STD2.replace("\"dimension\": 2,", "\"dimension\": 2,\n  \"dimensoin\": 2,");
        assert!(parse_algebra(&extra).unwrap_err().to_string().contains("unknown field"));
    }

    #[test]
    fn round_trips_across_semirings() {
        let cands = vec![
            from_basis(3),
            group_algebra(&GroupSpec::cyclic(3), ScalarDomain::complex()).unwrap(),
            group_algebra(&GroupSpec::cyclic(2), ScalarDomain::nonneg_real()).unwrap(),
            group_algebra(&GroupSpec::cyclic(2), ScalarDomain::quantale()).unwrap(),
            disjoint_groups_rel(&parse_group_list("Z2+Z1").unwrap()).unwrap(),
            from_basis(2)
                .with_labels(vec!["up".into(), "down \"x\"".into()])
                .unwrap(),
        ];
        for cand in cands {
            let text = write_algebra(&cand);
            let back = parse_algebra(&text).unwrap();
            assert_eq!(back, cand);
            assert_eq!(write_algebra(&back), text);
        }
    }

    #[test]
    fn quantale_infinity() {
        let text = write_algebra(&group_algebra(&GroupSpec::cyclic(1), ScalarDomain::quantale()).unwrap())
            .replace("[1.0]", "[\"inf\"]");
        let cand = parse_algebra(&text).unwrap();
        assert_eq!(cand.coeff(0, 0, 0), Scalar::Real(f64::INFINITY));
        assert_eq!(write_algebra(&cand), text);
        assert!(parse_algebra(&text.replace("quantale_ext_nonneg_real", "nonneg_real")).is_err());
    }

    #[test]
    fn decomposition_report_for_two_groups() {
        let cand = disjoint_groups_rel(&parse_group_list("Z2+Z3").unwrap()).unwrap();
        let dec = decompose(&cand).unwrap();
        let report = write_report(&Report::Decomposition {
            cand: &cand,
            decomposition: &dec,
        });
        let v: Value = serde_json::from_str(&report).unwrap();
        let orders: Vec<u64> = v["summands"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| s["order"].as_u64().unwrap())
            .collect();
        assert_eq!(orders, vec![2, 3]);
        assert_eq!(v["radical_dim"], 0);
    }

    #[test]
    fn copyable_coordinates_use_six_decimals() {
        let cand = group_algebra(&GroupSpec::cyclic(2), ScalarDomain::complex()).unwrap();
        let dec = decompose(&cand).unwrap();
        let report = write_report(&Report::Decomposition {
            cand: &cand,
            decomposition: &dec,
        });
        assert!(report.contains("\"0.707107\""));
        assert!(report.contains("\"-0.707107\""));
        assert!(!report.contains("-0.000000"));
        assert!(report.contains("\"seed\": 63243"));
        assert!(
            report.contains("[[\"0.707107\", \"0.000000\"], [\"-0.707107\", \"0.000000\"]]"),
            "{report}"
        );
    }

    #[test]
    fn check_report_carries_witness() {
        let cand = counterexample("min_semilattice_rel").unwrap();
        let verdicts = vec![check_axiom(&cand, Axiom::F).unwrap()];
        let report = write_report(&Report::Check {
            cand: &cand,
            verdicts: &verdicts,
        });
        let v: Value = serde_json::from_str(&report).unwrap();
        assert_eq!(v["verdicts"][0]["result"], "fail");
        assert!(v["verdicts"][0]["witness"]["row"].is_u64());
    }

    #[test]
    fn fixed_formatting() {
        assert_eq!(fixed6(-0.0000001), "0.000000");
        assert_eq!(fixed6(0.5), "0.500000");
        assert_eq!(fixed6(-0.25), "-0.250000");
    }
}
