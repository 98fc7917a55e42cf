//! Text and JSON renderings of the reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};
use sumfree_core::check::{CheckResult, CheckTally};
use sumfree_core::primitive::PrimitiveEntry;
use sumfree_core::search::{EnumerationReport, VerificationReport, VerificationVerdict};
use sumfree_core::suite::SuiteReport;
use sumfree_core::ClassificationReport;

fn sym_dim(s: &sumfree_core::TernarySet) -> usize {
    s.sym_group().map(|k| k.dim()).unwrap_or(0)
}

fn indices(s: &sumfree_core::TernarySet) -> String {
    s.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn primitive_json(dim: usize, up_to_iso: bool, entries: &[PrimitiveEntry]) -> Value {
    let mut size_counts: BTreeMap<usize, usize> = BTreeMap::new();
    for (s, _) in entries {
        *size_counts.entry(s.len()).or_default() += 1;
    }
    let sets: Vec<Value> = entries
        .iter()
        .map(|(s, c)| json!({ "set": s, "size": s.len(), "sym_dim": sym_dim(s), "certificate": c }))
        .collect();
    json!({ "dim": dim, "up_to_iso": up_to_iso, "count": entries.len(), "size_counts": size_counts, "sets": sets })
}

pub fn primitive_text(dim: usize, up_to_iso: bool, entries: &[PrimitiveEntry]) -> String {
    let what = if up_to_iso { "orbits of primitive sets" } else { "primitive sets" };
    let mut out = format!("{} {what} in F_3^{dim}\n", entries.len());
    for (s, c) in entries {
        let kind = if c.is_hyperplane() { "hyperplane" } else { "derived" };
        writeln!(out, "size {:>3}  sym_dim {}  {kind:<10}  {}", s.len(), sym_dim(s), indices(s)).unwrap();
    }
    out
}

pub fn maximal_text(r: &EnumerationReport, timing: bool) -> String {
    let what = if r.up_to_iso { "orbits of maximal sum-free sets" } else { "maximal sum-free sets" };
    let mut out = format!("{} {what} of size >= {} in F_3^{}\n", r.sets.len(), r.min_size, r.dim);
    for c in &r.size_sym_counts {
        writeln!(out, "  size {:>3}  sym_dim {}  count {}", c.size, c.sym_dim, c.count).unwrap();
    }
    if r.up_to_iso {
        let expanded: Vec<String> = r.expanded_size_counts.iter().map(|(k, v)| format!("{k}: {v}")).collect();
        writeln!(out, "sets in all orbits by size: {}", expanded.join(", ")).unwrap();
    }
    for (s, d) in r.sets.iter().zip(&r.sym_dims) {
        writeln!(out, "size {:>3}  sym_dim {d}  {}", s.len(), indices(s)).unwrap();
    }
    writeln!(out, "{} search nodes in {} subtrees", r.nodes, r.tasks).unwrap();
    if timing {
        writeln!(out, "elapsed {:.3} s", r.elapsed.as_secs_f64()).unwrap();
    }
    out
}

pub fn verify_text(r: &VerificationReport, timing: bool) -> String {
    let mut out = format!("F_3^{}, sizes >= {}: ", r.dim, r.min_size);
    match &r.verdict {
        VerificationVerdict::Verified => {
            writeln!(out, "Verified ({} maximal orbits, {} primitive orbits)", r.maximal.sets.len(), r.primitive_orbits).unwrap();
        }
        VerificationVerdict::Counterexample { direction, set, reason } => {
            writeln!(out, "Counterexample ({direction:?}): {reason}\n  set {}", indices(set)).unwrap();
        }
    }
    if timing {
        writeln!(out, "elapsed {:.3} s", r.maximal.elapsed.as_secs_f64()).unwrap();
    }
    out
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn classify_text(r: &ClassificationReport) -> String {
    let mut out = String::new();
    writeln!(out, "dim           {}", r.dim).unwrap();
    writeln!(out, "size          {}", r.size).unwrap();
    writeln!(out, "sum_free      {}", yes(r.sum_free)).unwrap();
    writeln!(out, "maximal       {}", yes(r.maximal)).unwrap();
    match (r.sym_size, r.sym_dim) {
        (Some(s), Some(d)) => writeln!(out, "sym           size {s}, dim {d}").unwrap(),
        _ => writeln!(out, "sym           undefined for the empty set").unwrap(),
    }
    writeln!(out, "aperiodic     {}", yes(r.aperiodic)).unwrap();
    let sub = r.subprimitive.map_or("undecided in this dimension", yes);
    writeln!(out, "subprimitive  {sub}").unwrap();
    match &r.certificate {
        Some(c) => {
            let kind = if c.is_hyperplane() { "hyperplane" } else { "derived" };
            writeln!(out, "primitive     yes ({kind}, depth {})", c.depth()).unwrap();
            writeln!(out, "certificate   {}", serde_json::to_string(c).expect("certificates serialize")).unwrap();
        }
        None => writeln!(out, "primitive     no").unwrap(),
    }
    out
}

pub fn result_text(r: &CheckResult) -> String {
    match r {
        CheckResult::Holds { detail, witness } => {
            let mut s = format!("holds: {detail}\n");
            if let Some(w) = witness {
                writeln!(s, "witness: {}", serde_json::to_string(w).expect("witnesses serialize")).unwrap();
            }
            s
        }
        CheckResult::NotApplicable { reason } => format!("not applicable: {reason}\n"),
        CheckResult::Counterexample { detail } => format!("COUNTEREXAMPLE: {detail}\n"),
    }
}

pub fn tally_text(name: &str, t: &CheckTally) -> String {
    let mut s = format!("{name}: {} hold, {} not applicable, {} counterexamples\n", t.holds, t.not_applicable, t.counterexamples);
    if let Some(c) = &t.first_counterexample {
        writeln!(s, "  first counterexample: {c}").unwrap();
    }
    s
}

pub fn suite_text(r: &SuiteReport) -> String {
    let mut out = String::new();
    for c in &r.checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        writeln!(out, "{mark} {:<32} {:>6} hold {:>6} n/a", c.name, c.tally.holds, c.tally.not_applicable).unwrap();
        if let Some(cx) = &c.tally.first_counterexample {
            writeln!(out, "     {cx}").unwrap();
        }
    }
    let failed = r.failed_checks().count();
    writeln!(out, "{} suite, seed {}: {} checks, {failed} failed", r.suite, r.seed, r.checks.len()).unwrap();
    out
}
