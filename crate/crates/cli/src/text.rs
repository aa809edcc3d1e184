//! Plain-text renderings for `--format text`.

use std::fmt::Write;

use serde_json::Value;

use nmax::theorems::{CorpusSummary, TheoremReport};

fn show(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

pub fn analysis(r: &Value) -> String {
    let mut s = String::new();
    let p = &r["profile"];
    let _ = writeln!(s, "group        {} (order {}, fingerprint {})", show(&r["group"]), p["order"], show(&r["fingerprint"]));
    let _ = writeln!(s, "primes       {}", p["pi"]);
    for key in ["abelian", "nilpotent", "soluble", "supersoluble", "nilpotent_length", "exponent"] {
        let label = if key == "nilpotent_length" { "nil length" } else { key };
        let _ = writeln!(s, "{label:<13}{}", show(&p[key]));
    }
    let _ = writeln!(s, "subgroups    {}", r["subgroups"]);
    let _ = writeln!(s, "Frattini     order {}", r["frattini_order"]);
    let _ = writeln!(s, "Fitting      order {}", r["fitting_order"]);
    let _ = writeln!(s, "dispersive   ore {}, ordering {}", r["dispersive"]["ore"], show(&r["dispersive"]["witness"]));
    let f = show(&r["formation"]);
    let _ = writeln!(s, "in {f:<9} {}", r["in_formation"]);
    let _ = writeln!(s, "residual     order {}", r["residual"]["order"]);
    match &r["hypercentre"] {
        Value::Null => {
            let _ = writeln!(s, "hypercentre  unavailable: {f} has no canonical satellite");
        }
        z => {
            let _ = writeln!(s, "hypercentre  order {}", z["order"]);
        }
    }
    let _ = writeln!(s, "critical     {}", r["critical"]);
    s
}

pub fn lattice(r: &Value) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}: order {}, {} subgroups", show(&r["group"]), r["order"], r["subgroups"]);
    let _ = writeln!(s, "{:>8} {:>8} {:>8}", "order", "all", "normal");
    let mut rows: Vec<(usize, u64)> = r["by_order"]
        .as_object()
        .into_iter()
        .flatten()
        .map(|(k, v)| (k.parse().unwrap_or(0), v.as_u64().unwrap_or(0)))
        .collect();
    rows.sort_by_key(|row| row.0);
    for (order, count) in rows {
        let normal = r["normal_by_order"].get(order.to_string()).map_or(0, |v| v.as_u64().unwrap_or(0));
        let _ = writeln!(s, "{order:>8} {count:>8} {normal:>8}");
    }
    let _ = writeln!(s, "maximal subgroup orders {}", r["maximal_orders"]);
    s
}

fn verdict(r: &TheoremReport) -> &'static str {
    match r.conclusion_holds {
        None => "not applicable",
        Some(true) => "holds",
        Some(false) => "VIOLATED",
    }
}

fn side(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "true",
        Some(false) => "false",
        None => "-",
    }
}

pub fn reports(rs: &[TheoremReport]) -> String {
    let mut s = String::new();
    for r in rs {
        let _ = writeln!(
            s,
            "{} on {} [{}]: {} (hypotheses {}, lhs {}, rhs {})",
            r.theorem_id,
            r.group,
            r.params,
            verdict(r),
            if r.hypotheses_met { "met" } else { "not met" },
            side(r.lhs),
            side(r.rhs)
        );
        if let Some(w) = &r.witness {
            let _ = writeln!(s, "  witness: {w}");
        }
        for n in &r.notes {
            let _ = writeln!(s, "  note: {n}");
        }
    }
    s
}

pub fn summary(c: &CorpusSummary) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{} groups, {} analyzed, {} skipped; satellite validation on {} groups, {} mismatches",
        c.corpus_size,
        c.groups_analyzed,
        c.skips.len(),
        c.satellite_validation.groups,
        c.satellite_validation.mismatches.len()
    );
    let _ = writeln!(s, "{:<16} {:<24} {:>6} {:>6} {:>6} {:>6} {:>6}", "check", "params", "inst", "hyp", "lhs", "pass", "fail");
    for cell in &c.cells {
        let _ = writeln!(
            s,
            "{:<16} {:<24} {:>6} {:>6} {:>6} {:>6} {:>6}",
            cell.check, cell.params, cell.instances, cell.hypotheses_met, cell.lhs_true, cell.passes, cell.failures
        );
    }
    for k in &c.skips {
        let _ = writeln!(s, "skipped {}: {}", k.group, k.reason);
    }
    let _ = writeln!(s, "{} type II positives from {} classifications", c.type_ii.len(), c.classified);
    let _ = writeln!(s, "{} instances, {} failures, status {}", c.instances, c.failures, c.status);
    s
}
