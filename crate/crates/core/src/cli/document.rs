//! The versioned machine-readable trace document.
//!
//! Field order in the structs below is the key order of the emitted JSON.
//! Every polynomial is written in canonical text form and parses back to
//! the identical value.

use serde::{Deserialize, Serialize};

use super::parser::{parse_complex, parse_expression};
use crate::ideal::{verify_certificates, Ideal, RadicalCertificate, SosTerm, Witness};
use crate::kohn::{KohnTrace, PersistenceReport, ProblemSpec, StepRecord, VarietyReport};
use crate::poly::{Point, Poly};

pub const TRACE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDocument {
    pub trace_version: u32,
    pub problem: ProblemDoc,
    pub steps: Vec<StepDoc>,
    pub summary: SummaryDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemDoc {
    pub n: usize,
    pub q: usize,
    pub r: String,
    pub base_point: Vec<String>,
    pub sample_points: Vec<Vec<String>>,
    pub radical_mode: String,
    pub caps: CapsDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapsDoc {
    pub max_steps: usize,
    pub tuple_cap: usize,
    pub closure_degree: u32,
    pub closure_rounds: usize,
    pub gram_size: usize,
    pub power_cap: u32,
    pub groebner_work: usize,
    pub radical_work: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleDoc {
    pub tuple: Vec<String>,
    pub determinants: Vec<String>,
    pub pruned: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareDoc {
    pub weight: String,
    pub root: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub element: String,
    pub kind: String,
    /// `null` when only the Rabinowitsch computation certifies membership.
    pub exponent: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub squares: Vec<SquareDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationDoc {
    pub closure_rounds: bool,
    pub gram_size: bool,
    pub radical_tests: bool,
    pub tuples: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDoc {
    pub k: usize,
    pub pre_generators: Vec<String>,
    pub determinants: Vec<TupleDoc>,
    pub generators: Vec<String>,
    /// `null` for a closure-skipped step whose basis outgrew the work budget.
    pub basis: Option<Vec<String>>,
    pub certificates: Vec<CertificateDoc>,
    pub closure_rounds: usize,
    pub closure_skipped: bool,
    pub unit_at_base: bool,
    pub truncated: TruncationDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleDoc {
    pub point: Vec<String>,
    pub unit_by_step: Vec<bool>,
    pub first_unit_step: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarietyDoc {
    pub samples: Vec<SampleDoc>,
    pub finite_type_step: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PersistenceStepDoc {
    pub k: usize,
    pub unit_at_base: bool,
    pub units_at_points: usize,
    pub agree: bool,
    pub persists: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PersistenceDoc {
    pub radius: String,
    pub points_checked: usize,
    pub steps: Vec<PersistenceStepDoc>,
    pub ok: bool,
    pub caveat: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryDoc {
    pub status: String,
    pub step: Option<usize>,
    pub steps_run: usize,
    pub unit_generator: Option<String>,
    pub truncated: bool,
    /// The step that outgrew the Gröbner work budget, ending the run.
    pub groebner_budget_step: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variety: Option<VarietyDoc>,
    pub persistence: PersistenceDoc,
}

fn texts(ps: &[Poly]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

fn point_texts(x: &Point) -> Vec<String> {
    x.coords().iter().map(ToString::to_string).collect()
}

fn problem_doc(spec: &ProblemSpec) -> ProblemDoc {
    let c = &spec.caps;
    ProblemDoc {
        n: spec.n,
        q: spec.q,
        r: spec.r.to_string(),
        base_point: point_texts(&spec.base_point),
        sample_points: spec.sample_points.iter().map(point_texts).collect(),
        radical_mode: spec.radical_mode.as_str().to_string(),
        caps: CapsDoc {
            max_steps: c.max_steps,
            tuple_cap: c.tuple_cap,
            closure_degree: c.closure.candidate_degree,
            closure_rounds: c.closure.max_rounds,
            gram_size: c.closure.gram_size,
            power_cap: c.closure.power_cap,
            groebner_work: c.closure.groebner_work,
            radical_work: c.closure.radical_work,
        },
    }
}

fn certificate_doc(c: &RadicalCertificate) -> CertificateDoc {
    let (source, squares) = match &c.witness {
        Witness::SosSplit { source, terms } => (
            Some(source.to_string()),
            terms.iter().map(|t| SquareDoc { weight: t.weight.to_string(), root: t.root.to_string() }).collect(),
        ),
        Witness::Conjugate { source } => (Some(source.to_string()), Vec::new()),
        _ => (None, Vec::new()),
    };
    CertificateDoc {
        element: c.element.to_string(),
        kind: c.kind().as_str().to_string(),
        exponent: c.exponent(),
        source,
        squares,
    }
}

fn step_doc(s: &StepRecord, budget: usize) -> StepDoc {
    StepDoc {
        k: s.k,
        pre_generators: texts(s.pre_ideal.generators()),
        determinants: s
            .determinants
            .iter()
            .map(|t| TupleDoc { tuple: texts(&t.tuple), determinants: texts(&t.determinants), pruned: t.pruned })
            .collect(),
        generators: texts(s.ideal.generators()),
        basis: s.ideal.try_basis(budget).map(texts),
        certificates: s.certificates.iter().map(certificate_doc).collect(),
        closure_rounds: s.closure_rounds,
        closure_skipped: s.closure_skipped,
        unit_at_base: s.unit_at_base,
        truncated: TruncationDoc {
            closure_rounds: s.truncated.closure.rounds,
            gram_size: s.truncated.closure.gram,
            radical_tests: s.truncated.closure.radical_tests,
            tuples: s.truncated.tuples,
        },
    }
}

impl TraceDocument {
    pub fn new(trace: &KohnTrace, variety: Option<&VarietyReport>, persistence: &PersistenceReport) -> Self {
        let spec = &trace.spec;
        let unit_generator = if trace.status.is_terminated() {
            trace.last().unit_generator(spec).map(ToString::to_string)
        } else {
            None
        };
        let variety = variety.filter(|v| !v.samples.is_empty()).map(|v| VarietyDoc {
            samples: v
                .samples
                .iter()
                .map(|s| SampleDoc {
                    point: point_texts(&s.point),
                    unit_by_step: s.unit_by_step.clone(),
                    first_unit_step: s.first_unit_step,
                })
                .collect(),
            finite_type_step: v.finite_type_step,
        });
        let persistence = PersistenceDoc {
            radius: persistence.radius.to_string(),
            points_checked: persistence.points.len(),
            steps: persistence
                .steps
                .iter()
                .map(|s| PersistenceStepDoc {
                    k: s.k,
                    unit_at_base: s.unit_at_base,
                    units_at_points: s.unit_at_points.iter().filter(|&&u| u).count(),
                    agree: s.agree,
                    persists: s.persists,
                })
                .collect(),
            ok: persistence.ok(),
            caveat: persistence.caveat.to_string(),
        };
        TraceDocument {
            trace_version: TRACE_VERSION,
            problem: problem_doc(spec),
            steps: trace.steps.iter().map(|s| step_doc(s, spec.caps.closure.groebner_work)).collect(),
            summary: SummaryDoc {
                status: trace.status.name().to_string(),
                step: trace.status.step(),
                steps_run: trace.steps.len(),
                unit_generator,
                truncated: trace.steps.iter().any(|s| s.truncated.any()) || trace.groebner_budget_step.is_some(),
                groebner_budget_step: trace.groebner_budget_step,
                variety,
                persistence,
            },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(src: &str) -> Result<Self, DocumentError> {
        let doc: TraceDocument = serde_json::from_str(src).map_err(|e| DocumentError(e.to_string()))?;
        if doc.trace_version != TRACE_VERSION {
            return Err(DocumentError(format!("unsupported trace_version {}", doc.trace_version)));
        }
        Ok(doc)
    }

    /// Re-parse every certificate and replay it against the step's
    /// pre-closure generators, independently of the engine's own state.
    pub fn verify_certificates(&self) -> Result<usize, DocumentError> {
        let n = self.problem.n;
        let mut count = 0;
        for step in &self.steps {
            let input = parse_all(&step.pre_generators, n)?;
            let certs = step.certificates.iter().map(|c| parse_certificate(c, n)).collect::<Result<Vec<_>, _>>()?;
            verify_certificates(n, &input, &certs).map_err(|e| DocumentError(format!("step {}: {e}", step.k)))?;
            if certs.is_empty() && step.generators == step.pre_generators {
                continue;
            }
            let closed = Ideal::new(n, input.into_iter().chain(certs.iter().map(|c| c.element.clone())));
            let generators = Ideal::new(n, parse_all(&step.generators, n)?);
            if !closed.ideal_equal(&generators) {
                return Err(DocumentError(format!("step {}: certificates do not generate the step ideal", step.k)));
            }
            count += certs.len();
        }
        Ok(count)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("trace document: {0}")]
pub struct DocumentError(pub String);

fn parse_poly(s: &str, n: usize) -> Result<Poly, DocumentError> {
    parse_expression(s, n).map_err(|e| DocumentError(format!("`{s}`: {e}")))
}

pub(crate) fn parse_all(items: &[String], n: usize) -> Result<Vec<Poly>, DocumentError> {
    items.iter().map(|s| parse_poly(s, n)).collect()
}

fn parse_certificate(c: &CertificateDoc, n: usize) -> Result<RadicalCertificate, DocumentError> {
    let element = parse_poly(&c.element, n)?;
    let source = || -> Result<Poly, DocumentError> {
        parse_poly(c.source.as_deref().ok_or_else(|| DocumentError("certificate without source".into()))?, n)
    };
    let witness = match c.kind.as_str() {
        "radical-power" => match c.exponent {
            Some(exponent) => Witness::RadicalPower { exponent },
            None => Witness::Rabinowitsch,
        },
        "linear-combination" => Witness::LinearCombination,
        "conjugate" => Witness::Conjugate { source: source()? },
        "sos-split" => {
            let terms = c
                .squares
                .iter()
                .map(|sq| {
                    let weight = parse_complex(&sq.weight)
                        .ok()
                        .filter(|w| w.is_real())
                        .map(|w| w.re().clone())
                        .ok_or_else(|| DocumentError(format!("bad weight `{}`", sq.weight)))?;
                    Ok(SosTerm { weight, root: parse_poly(&sq.root, n)? })
                })
                .collect::<Result<Vec<_>, DocumentError>>()?;
            Witness::SosSplit { source: source()?, terms }
        }
        other => return Err(DocumentError(format!("unknown certificate kind `{other}`"))),
    };
    Ok(RadicalCertificate { element, witness })
}
