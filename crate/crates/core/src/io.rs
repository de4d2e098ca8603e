//! File formats: the System JSON input and CSV/JSON report output.
//!
//! ```json
//! {"rvs": [{"atoms": [{"x": -0.5, "p": "1/2"}, {"x": 0.5, "p": "1/2"}]}],
//!  "mode": "rational"}
//! ```
//! Locations and masses may be JSON numbers, decimal strings or `"num/den"`.

use serde::{Deserialize, Serialize};

use crate::bounds::BoundReport;
use crate::dist::System;
use crate::error::{Error, Result};
use crate::scalar::{parse_exact, Exact, Mode, Scalar};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumOrStr {
    Num(serde_json::Number),
    Str(String),
}

impl NumOrStr {
    fn exact(&self) -> Result<Exact> {
        match self {
            NumOrStr::Num(n) => parse_exact(&n.to_string()),
            NumOrStr::Str(s) => parse_exact(s),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomJson {
    pub x: NumOrStr,
    pub p: NumOrStr,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RvJson {
    pub atoms: Vec<AtomJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemJson {
    pub rvs: Vec<RvJson>,
    #[serde(default = "default_mode")]
    pub mode: Mode,
    /// Center and rescale the input to zero means and unit total variance.
    #[serde(default)]
    pub standardize: bool,
}

fn default_mode() -> Mode {
    Mode::Rational
}

/// A system in either arithmetic mode.
#[derive(Debug, Clone, PartialEq)]
pub enum AnySystem {
    Rational(System<Exact>),
    Float(System<f64>),
}

impl AnySystem {
    pub fn mode(&self) -> Mode {
        match self {
            AnySystem::Rational(_) => Mode::Rational,
            AnySystem::Float(_) => Mode::Float,
        }
    }
}

fn build<T: Scalar>(doc: &SystemJson) -> Result<System<T>> {
    let raw = doc
        .rvs
        .iter()
        .enumerate()
        .map(|(i, rv)| {
            if rv.atoms.is_empty() {
                return Err(Error::InvalidInput(format!("rvs[{i}].atoms is empty")));
            }
            rv.atoms
                .iter()
                .enumerate()
                .map(|(j, a)| {
                    let field = |name: &str, e: Error| {
                        Error::Parse(format!("rvs[{i}].atoms[{j}].{name}: {e}"))
                    };
                    let x = a.x.exact().map_err(|e| field("x", e))?;
                    let p = a.p.exact().map_err(|e| field("p", e))?;
                    Ok((T::from_exact(&x), T::from_exact(&p)))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    System::from_raw(raw, doc.standardize)
}

pub fn parse_system(text: &str) -> Result<AnySystem> {
    let doc: SystemJson = serde_json::from_str(text).map_err(|e| {
        Error::Parse(format!(
            "system JSON at line {} column {}: {e}",
            e.line(),
            e.column()
        ))
    })?;
    system_from_doc(&doc)
}

pub fn system_from_doc(doc: &SystemJson) -> Result<AnySystem> {
    Ok(match doc.mode {
        Mode::Rational => AnySystem::Rational(build(doc)?),
        Mode::Float => AnySystem::Float(build(doc)?),
    })
}

pub fn read_system(path: &std::path::Path) -> Result<AnySystem> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_system(&text)
}

/// Serializes a system; rational values are written as `"num/den"` strings.
pub fn system_to_doc<T: Scalar>(sys: &System<T>) -> SystemJson {
    let value = |v: &T| match T::MODE {
        Mode::Rational => NumOrStr::Str(v.render()),
        Mode::Float => serde_json::Number::from_f64(v.to_f64())
            .map(NumOrStr::Num)
            .unwrap_or_else(|| NumOrStr::Str(v.render())),
    };
    SystemJson {
        rvs: sys
            .rvs()
            .iter()
            .map(|rv| RvJson {
                atoms: rv
                    .atoms()
                    .iter()
                    .map(|a| AtomJson {
                        x: value(&a.x),
                        p: value(&a.p),
                    })
                    .collect(),
            })
            .collect(),
        mode: T::MODE,
        standardize: false,
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// One CSV row per `z`; an empty cell marks a value that is not available.
pub fn reports_to_csv(reports: &[BoundReport]) -> Result<String> {
    let exact = reports.iter().any(|r| r.delta_w_exact.is_some());
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec![
        "z", "delta_w", "p1", "p2", "p3", "p4", "p5", "best", "theorem", "corollary", "bikelis",
    ];
    if exact {
        header.push("delta_w_exact");
    }
    w.write_record(&header).map_err(csv_err)?;
    for r in reports {
        let mut row = vec![
            r.z.to_string(),
            opt(r.delta_w),
            r.p1.to_string(),
            r.p2.to_string(),
            r.p3.to_string(),
            opt(r.p4),
            opt(r.p5),
            r.best.to_string(),
            r.theorem_bound.to_string(),
            r.corollary_bound.to_string(),
            r.bikelis_sum.to_string(),
        ];
        if exact {
            row.push(r.delta_w_exact.clone().unwrap_or_default());
        }
        w.write_record(&row).map_err(csv_err)?;
    }
    finish_csv(w)
}

pub(crate) fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

pub(crate) fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    const COINS: &str = r#"{"rvs":[
        {"atoms":[{"x":-0.5,"p":"1/2"},{"x":0.5,"p":"0.5"}]},
        {"atoms":[{"x":"-1/2","p":0.5},{"x":0.5,"p":"1/2"}]},
        {"atoms":[{"x":-0.5,"p":"1/2"},{"x":0.5,"p":"1/2"}]},
        {"atoms":[{"x":-0.5,"p":"1/2"},{"x":0.5,"p":"1/2"}]}],
        "mode":"rational"}"#;

    #[test]
    fn parses_mixed_notation() {
        let AnySystem::Rational(sys) = parse_system(COINS).unwrap() else {
            panic!("expected rational")
        };
        assert_eq!(sys.n(), 4);
        assert_eq!(sys.rvs()[1].atoms()[0].x, ratio(-1, 2));
    }

    #[test]
    fn decimal_locations_are_exact() {
        let doc = r#"{"rvs":[{"atoms":[{"x":-0.1,"p":"1/2"},{"x":0.1,"p":"1/2"}]}],"standardize":true}"#;
        let AnySystem::Rational(sys) = parse_system(doc).unwrap() else {
            panic!()
        };
        assert_eq!(sys.rvs()[0].atoms()[1].x, ratio(1, 1));
    }

    #[test]
    fn float_mode() {
        let doc = r#"{"rvs":[{"atoms":[{"x":0,"p":0.5},{"x":1,"p":0.5}]},
                      {"atoms":[{"x":0,"p":0.5},{"x":1,"p":0.5}]}],"mode":"float","standardize":true}"#;
        assert_eq!(parse_system(doc).unwrap().mode(), Mode::Float);
    }

    #[test]
    fn errors_name_location() {
        let e = parse_system("{\"rvs\": [\n{\"atoms\": [{\"x\": 1}]}]}").unwrap_err();
        assert!(e.to_string().contains("line 2"), "{e}");
        assert!(e.to_string().contains("`p`"), "{e}");
        let e = parse_system(r#"{"rvs":[{"atoms":[{"x":"zz","p":"1"}]}]}"#).unwrap_err();
        assert!(e.to_string().contains("rvs[0].atoms[0].x"), "{e}");
        let e = parse_system(r#"{"rvs":[{"atoms":[{"x":"1","p":"1"}]}]}"#).unwrap_err();
        assert!(matches!(e, Error::Invariant(_)), "{e}");
    }

    #[test]
    fn doc_round_trip() {
        let AnySystem::Rational(sys) = parse_system(COINS).unwrap() else {
            panic!()
        };
        let text = to_json(&system_to_doc(&sys)).unwrap();
        assert_eq!(parse_system(&text).unwrap(), AnySystem::Rational(sys));
    }
}
