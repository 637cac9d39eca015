//! JSON renderings. Every number is an exact integer.

use serde_json::{json, Map, Value};

use mixmult::fc::{
    DimLedger, FcSequenceRecord, PositivityReport, ReductionOutcome, ReductionReport,
};
use mixmult::local::SamuelData;
use mixmult::mixed::{type_label, HilbertTable, MixedReport};

pub fn table_json(t: &HilbertTable) -> Value {
    let side = t.window as usize + 1;
    let axes = t.axes();
    let values: Vec<Value> = t
        .values
        .iter()
        .enumerate()
        .map(|(idx, v)| {
            let mut n = vec![0u32; axes];
            let mut rest = idx;
            for (slot, b) in n.iter_mut().zip(&t.base).rev() {
                *slot = b + (rest % side) as u32;
                rest /= side;
            }
            json!({ "n": n, "h": v })
        })
        .collect();
    json!({
        "ell": t.ell,
        "base": t.base,
        "window": t.window,
        "stabilized": t.stabilized,
        "values": values,
    })
}

fn e_map(entries: &[(Vec<u32>, i64)]) -> Value {
    let mut m = Map::new();
    for (k, e) in entries {
        m.insert(type_label(k), json!(e));
    }
    Value::Object(m)
}

pub fn mixed_json(r: &MixedReport) -> Value {
    json!({
        "ell": r.ell,
        "e": e_map(&r.entries),
        "route": r.route.tag(),
        "base": r.base,
    })
}

pub fn ledger_json(l: &DimLedger) -> Value {
    json!({
        "dims": l.dims,
        "drops": l.drops(),
        "non_unit_drops": l.non_unit_drops(),
    })
}

pub fn record_json(r: &FcSequenceRecord) -> Value {
    let ctx = r.models[0].ctx();
    let elements: Vec<Value> = r
        .elements
        .iter()
        .map(|c| {
            json!({
                "element": ctx.format(&c.element),
                "direction": c.direction,
                "seed": c.seed,
                "checks": { "fc1": c.checks.fc1, "fc2": c.checks.fc2, "fc3": c.checks.fc3 },
            })
        })
        .collect();
    json!({
        "type": type_label(&r.k),
        "elements": elements,
        "ledger": ledger_json(&r.ledger),
        "maximal": r.maximal,
    })
}

pub fn positivity_json(p: &PositivityReport) -> Value {
    json!({
        "outcome": p.outcome.tag(),
        "witness_seeds": p.witnesses,
        "failed_seeds": p.failures,
        "e_table": p.e_table,
    })
}

pub fn verify_json(r: &ReductionReport) -> Value {
    let mut out = json!({
        "type": type_label(&r.k),
        "e_direct": r.e_direct,
        "base": r.base,
    });
    match &r.outcome {
        ReductionOutcome::Compared {
            e_reduced,
            record,
            dim_condition,
        } => {
            out["route"] = json!("fc-reduction");
            out["e_reduced"] = json!(e_reduced);
            out["equal"] = json!(*e_reduced == r.e_direct);
            out["dim_condition"] = json!(dim_condition);
            out["sequence"] = record_json(record);
        }
        ReductionOutcome::Zero(p) => {
            out["route"] = json!("positivity");
            out["positivity"] = positivity_json(p);
        }
        ReductionOutcome::Inconclusive { reason, record } => {
            out["route"] = json!("inconclusive");
            out["reason"] = json!(reason);
            out["sequence"] = record
                .as_ref()
                .map(|r| record_json(r))
                .unwrap_or(Value::Null);
        }
    }
    out
}

pub fn samuel_json(s: &SamuelData) -> Value {
    json!({ "dim": s.dim, "mult": s.mult, "base": s.base })
}
