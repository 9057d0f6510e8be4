//! JSON shapes of result records. All timing data lives under the single
//! top-level key `timings`, so stripping that key leaves a deterministic record.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::numerics::{HkEstimate, SdimEstimate, SignatureEstimate};
use crate::perturb::{ContinuityReport, Outcome, SweepReport, SweepRow};
use crate::polyring::Polynomial;
use crate::verdict::{Certificate, Verdict};

pub const TIMINGS: &str = "timings";

pub fn rational(r: &BigRational) -> Value {
    let float = match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) => n / d,
        _ => f64::NAN,
    };
    json!({
        "num": r.numer().to_string(),
        "den": r.denom().to_string(),
        "float": if float.is_finite() { json!(float) } else { Value::Null },
    })
}

pub fn bigint(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

fn polys(ps: &[Polynomial]) -> Value {
    Value::Array(ps.iter().map(|p| Value::String(p.render())).collect())
}

pub fn certificate(c: &Certificate) -> Value {
    match c {
        Certificate::Witness {
            e,
            q,
            alpha,
            multiplier,
            element,
        } => json!({
            "kind": "witness",
            "e": e,
            "q": q,
            "alpha": alpha.render(),
            "multiplier": multiplier.render(),
            "element": element.render(),
        }),
        Certificate::Containment { e, q, generators } => json!({
            "kind": "containment",
            "e": e,
            "q": q,
            "generators": generators,
        }),
        Certificate::NotFPure { generators } => json!({
            "kind": "not_fpure",
            "generators": generators,
        }),
        Certificate::Smooth { codim, minors } => json!({
            "kind": "smooth",
            "codim": codim,
            "minors": minors,
        }),
        Certificate::Singular {
            codim,
            singular_locus,
            at_origin,
        } => json!({
            "kind": "singular",
            "codim": codim,
            "singular_locus": polys(singular_locus),
            "at_origin": at_origin,
        }),
    }
}

/// Verdict fields plus the per-level timings, kept apart.
pub fn verdict(v: &Verdict) -> (Value, Value) {
    let log: Vec<Value> = v
        .log
        .iter()
        .map(|r| json!({"e": r.e, "q": r.q, "contained": r.contained, "generators": r.generators}))
        .collect();
    let body = json!({
        "verdict": v.status.as_str(),
        "certificate": v.certificate.as_ref().map_or(Value::Null, certificate),
        "log": log,
    });
    let timings = Value::Array(v.log.iter().map(|r| json!(r.millis)).collect());
    (body, timings)
}

pub fn hk(est: &HkEstimate) -> Value {
    json!({
        "e": est.e,
        "q": est.q,
        "d": est.d,
        "length": bigint(&est.length),
        "value": rational(&est.value),
        "difference": est.difference.as_ref().map_or(Value::Null, rational),
    })
}

pub fn fsig(est: &HkEstimate) -> Value {
    json!({
        "e": est.e,
        "q": est.q,
        "d": est.d,
        "a_e": bigint(&est.length),
        "value": rational(&est.value),
    })
}

pub fn sdim(s: &SdimEstimate) -> Value {
    json!({
        "e1": s.e1,
        "e2": s.e2,
        "a_e1": bigint(&s.a1),
        "a_e2": bigint(&s.a2),
        "sdim": s.sdim,
        "rf": rational(&s.rf),
    })
}

pub fn signature(s: &SignatureEstimate, sop: &[Polynomial]) -> Value {
    json!({
        "e": s.e,
        "q": s.q,
        "d": s.d,
        "sop": polys(sop),
        "value": rational(&s.value),
        "base_length": bigint(&s.base_length),
        "socle_dim": s.socle_dim,
        "exhaustive": s.exhaustive,
        "candidates": s.candidates,
        "minimizer": polys(&s.minimizer),
    })
}

fn row_head<T>(r: &SweepRow<T>) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("n".into(), r.n.map_or(Value::Null, |n| json!(n)));
    m.insert("delta".into(), Value::String(r.delta.render()));
    m.insert("delta_order".into(), r.delta_order.map_or(Value::Null, |d| json!(d)));
    m
}

fn overrun<T>(m: &mut serde_json::Map<String, Value>, o: &Outcome<T>) {
    if let Outcome::BudgetExceeded { used, limit } = o {
        m.insert("budget_exceeded".into(), json!({"used": used, "limit": limit}));
    }
}

/// Rows and summary of a property sweep, plus per-row timings.
pub fn sweep(rep: &SweepReport) -> (Vec<Value>, Value, Value) {
    let rows = rep
        .rows
        .iter()
        .map(|r| {
            let mut m = row_head(r);
            match &r.outcome {
                Outcome::Done(v) => {
                    let (body, _) = verdict(v);
                    for (k, val) in body.as_object().expect("object") {
                        m.insert(k.clone(), val.clone());
                    }
                }
                o => {
                    m.insert("verdict".into(), Value::Null);
                    overrun(&mut m, o);
                }
            }
            Value::Object(m)
        })
        .collect();
    let summary = json!({
        "property": rep.property,
        "first_change": rep.first_change,
        "stability_summary": rep.stability_summary(),
        "note": "one-parameter family: evidence for stability, not a proof",
    });
    let timings = Value::Array(rep.rows.iter().map(|r| json!(r.millis)).collect());
    (rows, summary, timings)
}

pub fn continuity(rep: &ContinuityReport) -> (Vec<Value>, Value, Value) {
    let rows = rep
        .rows
        .iter()
        .map(|r| {
            let mut m = row_head(r);
            match &r.outcome {
                Outcome::Done(c) => {
                    m.insert("value".into(), rational(&c.value));
                    m.insert("delta_from_base".into(), rational(&c.delta_from_base));
                    m.insert("unchanged".into(), json!(c.unchanged()));
                }
                o => {
                    m.insert("value".into(), Value::Null);
                    overrun(&mut m, o);
                }
            }
            Value::Object(m)
        })
        .collect();
    let summary = json!({
        "invariant": rep.invariant,
        "e": rep.e,
        "changed_rows": rep.rows.iter().filter(|r| r.outcome.done().is_some_and(|c| !c.unchanged())).count(),
    });
    let timings = Value::Array(rep.rows.iter().map(|r| json!(r.millis)).collect());
    (rows, summary, timings)
}

/// Drops the `timings` key: what the determinism contract compares.
pub fn without_timings(record: &Value) -> Value {
    let mut v = record.clone();
    if let Some(m) = v.as_object_mut() {
        m.remove(TIMINGS);
    }
    v
}
