//! Canonical JSON documents for certificates and their re-verification.
//!
//! A document is the certificate serialized with sorted keys, two-space
//! indentation and a trailing newline, tagged with a top-level `kind`.
//! Verification never trusts stored values: every field is recomputed from
//! the stored building data and from a fresh construction of the requested
//! pair.

use serde::Serialize;
use serde_json::{Map, Value};

use crate::cover::{BuildingData, BuildingDataDoc};
use crate::degenerations::{degenerate, DegenerationCertificate};
use crate::error::{Error, Result};
use crate::recipes::{classify, construct, ConstructionCertificate};

pub const CONSTRUCTION: &str = "construction";
pub const DEGENERATION: &str = "degeneration";

fn to_value<T: Serialize>(x: &T) -> Result<Value> {
    serde_json::to_value(x).map_err(|e| Error::Document(e.to_string()))
}

fn tagged<T: Serialize>(x: &T, kind: &str) -> Result<Value> {
    let mut v = to_value(x)?;
    match &mut v {
        Value::Object(map) => {
            map.insert("kind".into(), Value::String(kind.into()));
        }
        _ => return Err(Error::Document("certificate is not an object".into())),
    }
    Ok(v)
}

fn render(v: &Value) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Error::Document(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn construction_value(cert: &ConstructionCertificate) -> Result<Value> {
    tagged(cert, CONSTRUCTION)
}

pub fn degeneration_value(dc: &DegenerationCertificate) -> Result<Value> {
    tagged(dc, DEGENERATION)
}

pub fn construction_document(cert: &ConstructionCertificate) -> Result<String> {
    render(&construction_value(cert)?)
}

pub fn degeneration_document(dc: &DegenerationCertificate) -> Result<String> {
    render(&degeneration_value(dc)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldCheck {
    pub field: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub kind: String,
    pub checks: Vec<FieldCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &FieldCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

struct Checker {
    prefix: String,
    checks: Vec<FieldCheck>,
}

impl Checker {
    fn field(&self, name: &str) -> String {
        format!("{}{}", self.prefix, name)
    }

    fn fail(&mut self, name: &str, detail: impl Into<String>) {
        let field = self.field(name);
        self.checks.push(FieldCheck {
            field,
            pass: false,
            detail: detail.into(),
        });
    }

    fn compare(&mut self, name: &str, stored: Option<&Value>, recomputed: &Value) {
        let field = self.field(name);
        let check = match stored {
            None => FieldCheck {
                field,
                pass: false,
                detail: "missing".into(),
            },
            Some(s) if s == recomputed => FieldCheck {
                field,
                pass: true,
                detail: recomputed.to_string(),
            },
            Some(s) => FieldCheck {
                field,
                pass: false,
                detail: format!("stored {s}, recomputed {recomputed}"),
            },
        };
        self.checks.push(check);
    }

    fn compare_to<T: Serialize>(&mut self, name: &str, stored: Option<&Value>, recomputed: &T) {
        match to_value(recomputed) {
            Ok(v) => self.compare(name, stored, &v),
            Err(e) => self.fail(name, e.to_string()),
        }
    }

    /// Field-by-field comparison of a stored document against a fresh one.
    fn compare_objects(&mut self, name: &str, stored: &Map<String, Value>, fresh: &Value) {
        let Value::Object(fresh) = fresh else {
            return self.fail(name, "recomputed document is not an object");
        };
        let keys: std::collections::BTreeSet<&String> = stored.keys().chain(fresh.keys()).collect();
        for key in keys {
            let field = format!("{name}.{key}");
            match fresh.get(key) {
                Some(v) => self.compare(&field, stored.get(key), v),
                None => self.fail(&field, "unexpected field"),
            }
        }
    }
}

fn parse_data(c: &mut Checker, name: &str, v: Option<&Value>) -> Option<BuildingData> {
    let Some(v) = v else {
        c.fail(name, "missing");
        return None;
    };
    let doc: BuildingDataDoc = match serde_json::from_value(v.clone()) {
        Ok(d) => d,
        Err(e) => {
            c.fail(name, format!("malformed: {e}"));
            return None;
        }
    };
    match BuildingData::from_doc(&doc) {
        Ok(bd) => {
            c.compare_to(
                &format!("{name}.lineBundles"),
                v.get("lineBundles"),
                &doc_of(&bd).line_bundles,
            );
            c.compare_to(&format!("{name}.reduced"), v.get("reduced"), &bd.reduced());
            c.compare_to(
                &format!("{name}.basis"),
                v.get("basis"),
                &bd.ambient().basis_labels(),
            );
            Some(bd)
        }
        Err(e) => {
            c.fail(name, e.to_string());
            None
        }
    }
}

fn doc_of(bd: &BuildingData) -> BuildingDataDoc {
    BuildingDataDoc::from(bd.clone())
}

fn requested(c: &mut Checker, root: &Map<String, Value>) -> Option<(i64, i64)> {
    let req = root.get("requested");
    let ksq = req.and_then(|r| r.get("Ksq")).and_then(Value::as_i64);
    let chi = req.and_then(|r| r.get("chi")).and_then(Value::as_i64);
    match (ksq, chi) {
        (Some(k), Some(x)) => Some((k, x)),
        _ => {
            c.fail("requested", "missing Ksq or chi");
            None
        }
    }
}

fn check_invariants(c: &mut Checker, name: &str, stored: Option<&Value>, bd: &BuildingData) {
    match bd.invariants() {
        Ok(inv) => {
            for (key, value) in [
                ("Ksq", Value::from(inv.ksq)),
                ("chi", Value::from(inv.chi)),
                ("pg", Value::from(inv.pg)),
                ("q", Value::from(inv.q)),
                ("pgEstimated", Value::from(inv.pg_estimated)),
            ] {
                c.compare(
                    &format!("{name}.{key}"),
                    stored.and_then(|s| s.get(key)),
                    &value,
                );
            }
        }
        Err(e) => c.fail(name, e.to_string()),
    }
}

fn verify_construction(c: &mut Checker, root: &Map<String, Value>) {
    let req = requested(c, root);
    let data = parse_data(c, "buildingData", root.get("buildingData"));

    if let Some(bd) = &data {
        check_invariants(c, "invariants", root.get("invariants"), bd);
        if let Ok(inv) = bd.invariants() {
            if let Some((ksq, chi)) = req {
                c.compare_to("requested.Ksq", Some(&Value::from(ksq)), &inv.ksq);
                c.compare_to("requested.chi", Some(&Value::from(chi)), &inv.chi);
            }
        }
        let pushdown = bd.canonical_pushdown();
        c.compare_to(
            "canonicalPushdown",
            root.get("canonicalPushdown"),
            &pushdown,
        );
        match bd.ambient().positivity(&pushdown) {
            Ok(p) => c.compare_to("ampleness", root.get("ampleness"), &p),
            Err(e) => c.fail("ampleness", e.to_string()),
        }
        let ledger = bd.singularity_scan();
        if ledger.is_empty() {
            c.compare_to(
                "buildingData.singularities",
                Some(&Value::Array(vec![])),
                &ledger.entries,
            );
        } else {
            c.fail(
                "buildingData.singularities",
                format!("{} singular entries", ledger.entries.len()),
            );
        }
    }

    match root.get("preResolutionData") {
        None | Some(Value::Null) => {}
        Some(pre) => {
            if let Some(mut base) = parse_data(c, "preResolutionData", Some(pre)) {
                let points: Vec<String> = root
                    .get("resolvedPoints")
                    .and_then(|v| serde_json::from_value(v.clone()).ok())
                    .unwrap_or_default();
                let before = base.ksq();
                let mut ok = true;
                for id in &points {
                    match base.resolve_triple_point(id) {
                        Ok(next) => base = next,
                        Err(e) => {
                            c.fail("resolvedPoints", e.to_string());
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    c.compare_to(
                        "preResolutionData.resolved",
                        root.get("buildingData"),
                        &base,
                    );
                    c.compare_to(
                        "preResolutionData.deltaKsq",
                        Some(&Value::from(before - points.len() as i64)),
                        &base.ksq(),
                    );
                }
            }
        }
    }

    if let Some((ksq, chi)) = req {
        c.compare_to("region", root.get("region"), &classify(ksq, chi));
        let nested = !c.prefix.is_empty();
        let fresh = construct(ksq, chi).and_then(|cert| {
            let v = if nested {
                to_value(&cert)
            } else {
                construction_value(&cert)
            };
            v.map(|v| (cert, v))
        });
        match fresh {
            Ok((cert, fresh)) => {
                c.compare_to("status", root.get("status"), &cert.status);
                c.compare_objects("reconstruction", root, &fresh);
            }
            Err(e) => c.fail("reconstruction", e.to_string()),
        }
    }
}

fn verify_degeneration(c: &mut Checker, root: &Map<String, Value>) {
    let Some(Value::Object(parent)) = root.get("parent") else {
        return c.fail("parent", "missing");
    };
    let mut inner = Checker {
        prefix: "parent.".into(),
        checks: Vec::new(),
    };
    verify_construction(&mut inner, parent);
    c.checks.append(&mut inner.checks);

    let parent_data = parse_data(
        &mut Checker {
            prefix: String::new(),
            checks: Vec::new(),
        },
        "",
        parent.get("buildingData"),
    );
    let Some(bd) = parse_data(c, "modifiedData", root.get("modifiedData")) else {
        return;
    };
    check_invariants(c, "invariants", root.get("invariants"), &bd);
    if let Some(pd) = &parent_data {
        let same = (1..=3).all(|i| bd.branch(i) == pd.branch(i));
        c.compare_to(
            "modifiedData.branchClasses",
            Some(&Value::Bool(true)),
            &same,
        );
        if let (Ok(a), Ok(b)) = (bd.invariants(), pd.invariants()) {
            c.compare_to("invariants.parent", Some(&Value::Bool(true)), &(a == b));
        }
    }
    let ledger = bd.singularity_scan();
    c.compare_to("ledger", root.get("ledger"), &ledger);
    c.compare_to("gorenstein", root.get("gorenstein"), &ledger.is_empty());

    let req = requested(
        &mut Checker {
            prefix: "parent.".into(),
            checks: Vec::new(),
        },
        parent,
    );
    if let Some((ksq, chi)) = req {
        match construct(ksq, chi)
            .and_then(|cert| degenerate(&cert))
            .and_then(|dc| degeneration_value(&dc))
        {
            Ok(fresh) => c.compare_objects("reconstruction", root, &fresh),
            Err(e) => c.fail("reconstruction", e.to_string()),
        }
    }
}

/// Re-derives every field of a stored certificate document.
pub fn verify(text: &str) -> Result<VerifyReport> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    let Value::Object(root) = value else {
        return Err(Error::Document("top level is not an object".into()));
    };
    let kind = root
        .get("kind")
        .and_then(Value::as_str)
        .unwrap_or_default()
        .to_string();
    let mut c = Checker {
        prefix: String::new(),
        checks: Vec::new(),
    };
    match kind.as_str() {
        CONSTRUCTION => verify_construction(&mut c, &root),
        DEGENERATION => verify_degeneration(&mut c, &root),
        other => return Err(Error::Document(format!("unknown document kind {other:?}"))),
    }
    Ok(VerifyReport {
        kind,
        checks: c.checks,
    })
}
