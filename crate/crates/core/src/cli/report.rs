use std::fmt::Write as _;

use super::document::TraceDocument;
use super::problem::{InputError, ProblemFile};
use crate::kohn::{persistence_check, run, variety_sample, KohnStatus, KohnTrace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Machine,
    Human,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "machine" => Ok(ReportFormat::Machine),
            "human" => Ok(ReportFormat::Human),
            other => Err(format!("unknown format `{other}` (expected machine or human)")),
        }
    }
}

/// Run the full pipeline on a problem file and keep the in-memory trace.
pub fn run_problem_with_trace(file: &ProblemFile) -> Result<(KohnTrace, TraceDocument), InputError> {
    let spec = file.to_spec()?;
    let radius = file.radius()?;
    let trace = run(&spec)?;
    let variety = variety_sample(&trace)?;
    let persistence = persistence_check(&trace, &radius);
    let doc = TraceDocument::new(&trace, Some(&variety), &persistence);
    Ok((trace, doc))
}

pub fn run_problem(file: &ProblemFile) -> Result<TraceDocument, InputError> {
    run_problem_with_trace(file).map(|(_, doc)| doc)
}

/// Process exit code for a finished run: 0 when terminated, 2 otherwise.
pub fn exit_code(doc: &TraceDocument) -> i32 {
    if doc.summary.status == KohnStatus::Terminated(0).name() {
        0
    } else {
        2
    }
}

pub fn emit_report(doc: &TraceDocument, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Machine => doc.to_json().into_bytes(),
        ReportFormat::Human => human(doc).into_bytes(),
    }
}

fn list(items: &[String]) -> String {
    if items.is_empty() {
        "(none)".to_string()
    } else {
        items.join(", ")
    }
}

fn human(doc: &TraceDocument) -> String {
    let p = &doc.problem;
    let mut out = String::new();
    let _ = writeln!(out, "Kohn algorithm, n = {}, q = {}", p.n, p.q);
    let _ = writeln!(out, "r = {}", p.r);
    let _ = writeln!(out, "base point ({})", p.base_point.join(", "));
    let _ = writeln!(
        out,
        "caps: max_steps {}, tuples {}, closure degree {}, rounds {}, gram {}, power {}, groebner work {}, radical work {}; radical mode {}",
        p.caps.max_steps,
        p.caps.tuple_cap,
        p.caps.closure_degree,
        p.caps.closure_rounds,
        p.caps.gram_size,
        p.caps.power_cap,
        p.caps.groebner_work,
        p.caps.radical_work,
        p.radical_mode
    );
    for s in &doc.steps {
        let _ = writeln!(out);
        let _ = writeln!(out, "Step {}", s.k);
        if s.k == 1 {
            let minors: Vec<String> = s.determinants.iter().flat_map(|t| t.determinants.clone()).collect();
            let _ = writeln!(out, "  Levi minors: {}", list(&minors));
        } else {
            let pruned = s.determinants.iter().filter(|t| t.pruned).count();
            let _ = writeln!(out, "  tuples: {} enumerated, {} pruned", s.determinants.len(), pruned);
            for t in s.determinants.iter().filter(|t| !t.pruned) {
                let _ = writeln!(out, "    ({}) -> {}", t.tuple.join(", "), list(&t.determinants));
            }
        }
        let _ = writeln!(out, "  generators: {}", list(&s.generators));
        let _ = match &s.basis {
            Some(basis) => writeln!(out, "  reduced basis: {}", list(basis)),
            None => writeln!(out, "  reduced basis: not computed (work budget)"),
        };
        if !s.certificates.is_empty() {
            let _ = writeln!(out, "  certificates:");
            for c in &s.certificates {
                let exponent = c.exponent.map_or("rabinowitsch".to_string(), |m| format!("m = {m}"));
                let _ = match &c.source {
                    Some(src) => writeln!(out, "    {} [{}, {}] from {}", c.element, c.kind, exponent, src),
                    None => writeln!(out, "    {} [{}, {}]", c.element, c.kind, exponent),
                };
            }
        }
        let flags: Vec<&str> = [
            (s.truncated.closure_rounds, "closure rounds"),
            (s.truncated.gram_size, "gram size"),
            (s.truncated.radical_tests, "radical test work"),
            (s.truncated.tuples, "tuple count"),
        ]
        .into_iter()
        .filter_map(|(hit, name)| hit.then_some(name))
        .collect();
        if !flags.is_empty() {
            let _ = writeln!(out, "  caps hit: {}", flags.join(", "));
        }
        if s.closure_skipped {
            let _ = writeln!(out, "  closure skipped: a generator is already nonzero at the base point");
        }
        let _ = writeln!(out, "  unit at base point: {}", if s.unit_at_base { "yes" } else { "no" });
    }
    if let Some(v) = &doc.summary.variety {
        let _ = writeln!(out);
        let _ = writeln!(out, "Sample points");
        for s in &v.samples {
            let first = s.first_unit_step.map_or("never".to_string(), |k| format!("step {k}"));
            let _ = writeln!(out, "  ({}): first unit at {}", s.point.join(", "), first);
        }
        match v.finite_type_step {
            Some(k) => {
                let _ = writeln!(out, "  every sample point sees a unit by step {k}");
            }
            None => {
                let _ = writeln!(out, "  some sample point never sees a unit");
            }
        }
    }
    let ps = &doc.summary.persistence;
    let _ = writeln!(out);
    let _ = writeln!(out, "Persistence within radius {} ({} surface points)", ps.radius, ps.points_checked);
    for s in &ps.steps {
        let _ = writeln!(
            out,
            "  step {}: units at {}/{} points, stalk test {}, base unit {}",
            s.k,
            s.units_at_points,
            ps.points_checked,
            if s.agree { "agrees" } else { "DISAGREES" },
            if !s.unit_at_base {
                "absent"
            } else if s.persists {
                "persists"
            } else {
                "DOES NOT PERSIST"
            }
        );
    }
    let _ = writeln!(out, "  caveat: {}", ps.caveat);
    let _ = writeln!(out);
    let summary = &doc.summary;
    if let Some(k) = summary.groebner_budget_step {
        let _ = writeln!(out, "step {k} outgrew the Gröbner work budget and was not completed");
    }
    let _ = match (summary.status.as_str(), summary.step) {
        ("terminated", Some(k)) => {
            writeln!(out, "terminated at step {k}: unit generator {}", summary.unit_generator.as_deref().unwrap_or("?"))
        }
        ("stabilized-undetermined", Some(k)) => {
            writeln!(out, "stabilized-undetermined at step {k}: fixpoint without a unit at the base point")
        }
        _ => writeln!(out, "cap-exhausted after {} steps without a unit at the base point", summary.steps_run),
    };
    out
}
