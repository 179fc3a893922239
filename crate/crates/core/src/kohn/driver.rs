use std::fmt;

use super::spec::{KohnError, ProblemSpec};
use crate::forms::levi_determinants;
use crate::ideal::{real_radical_closure, ClosureTruncation, Ideal, RadicalCertificate};
use crate::poly::Poly;

/// Determinants produced by one tuple `(f_1, …, f_j)`; Step 1 has a single
/// record with the empty tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleRecord {
    pub tuple: Vec<Poly>,
    /// Nonzero coefficients of the tuple's Levi form.
    pub determinants: Vec<Poly>,
    /// Every determinant already reduced to zero modulo the current ideal.
    pub pruned: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StepTruncation {
    pub closure: ClosureTruncation,
    /// Tuple enumeration stopped at the cap.
    pub tuples: bool,
}

impl StepTruncation {
    pub fn any(&self) -> bool {
        self.closure.any() || self.tuples
    }
}

#[derive(Debug, Clone)]
pub struct StepRecord {
    pub k: usize,
    pub pre_ideal: Ideal,
    pub determinants: Vec<TupleRecord>,
    pub ideal: Ideal,
    pub certificates: Vec<RadicalCertificate>,
    pub truncated: StepTruncation,
    pub closure_rounds: usize,
    /// The pre-closure germ already held a unit at the base point, so the
    /// closure was not run.
    pub closure_skipped: bool,
    pub unit_at_base: bool,
}

impl StepRecord {
    /// The first generator that does not vanish at the base point.
    pub fn unit_generator(&self, spec: &ProblemSpec) -> Option<&Poly> {
        self.ideal
            .generators()
            .iter()
            .find(|g| !num_traits::Zero::is_zero(&g.evaluate(&spec.base_point).expect("validated")))
    }

    /// All determinants that entered `pre_ideal` from non-pruned tuples.
    pub fn admitted_determinants(&self) -> impl Iterator<Item = &Poly> {
        self.determinants.iter().filter(|t| !t.pruned).flat_map(|t| t.determinants.iter())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KohnStatus {
    Terminated(usize),
    StabilizedUndetermined(usize),
    CapExhausted,
}

impl KohnStatus {
    pub fn name(&self) -> &'static str {
        match self {
            KohnStatus::Terminated(_) => "terminated",
            KohnStatus::StabilizedUndetermined(_) => "stabilized-undetermined",
            KohnStatus::CapExhausted => "cap-exhausted",
        }
    }

    pub fn step(&self) -> Option<usize> {
        match *self {
            KohnStatus::Terminated(k) | KohnStatus::StabilizedUndetermined(k) => Some(k),
            KohnStatus::CapExhausted => None,
        }
    }

    pub fn is_terminated(&self) -> bool {
        matches!(self, KohnStatus::Terminated(_))
    }
}

impl fmt::Display for KohnStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.step() {
            Some(k) => write!(f, "{}({k})", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct KohnTrace {
    pub spec: ProblemSpec,
    pub steps: Vec<StepRecord>,
    pub status: KohnStatus,
    /// The step whose ideal outgrew the Gröbner work budget; the run stopped
    /// there as cap-exhausted without recording it.
    pub groebner_budget_step: Option<usize>,
}

impl KohnTrace {
    /// Panics on a trace whose first step already outgrew the budget.
    pub fn last(&self) -> &StepRecord {
        self.steps.last().expect("trace has at least one step")
    }
}

fn close_step(
    spec: &ProblemSpec,
    k: usize,
    pre_ideal: Ideal,
    determinants: Vec<TupleRecord>,
    tuples: bool,
) -> Result<StepRecord, KohnError> {
    if pre_ideal.contains_unit_at(&spec.base_point) {
        // the germ is already the whole local ring
        return Ok(StepRecord {
            k,
            ideal: pre_ideal.clone(),
            pre_ideal,
            determinants,
            certificates: Vec::new(),
            truncated: StepTruncation { closure: Default::default(), tuples },
            closure_rounds: 0,
            closure_skipped: true,
            unit_at_base: true,
        });
    }
    let closure = real_radical_closure(&pre_ideal, &spec.caps.closure, spec.radical_mode)
        .map_err(|e| KohnError::GroebnerBudget { step: k, budget: e.budget })?;
    let unit_at_base = closure.ideal.contains_unit_at(&spec.base_point);
    Ok(StepRecord {
        k,
        pre_ideal,
        determinants,
        ideal: closure.ideal,
        certificates: closure.certificates,
        truncated: StepTruncation { closure: closure.truncated, tuples },
        closure_rounds: closure.rounds,
        closure_skipped: false,
        unit_at_base,
    })
}

/// Step 1: the closure of `(r, Levi minors of r)`.
pub fn step1(spec: &ProblemSpec) -> Result<StepRecord, KohnError> {
    spec.validate()?;
    let minors =
        levi_determinants(&spec.r, spec.q, &[]).map_err(|_| KohnError::QOutOfRange { q: spec.q, n: spec.n })?;
    let pre_ideal = Ideal::new(spec.n, std::iter::once(spec.r.clone()).chain(minors.iter().cloned()));
    let record = TupleRecord { tuple: Vec::new(), determinants: minors, pruned: false };
    close_step(spec, 1, pre_ideal, vec![record], false)
}

/// Size-`j` index subsets of `0..len` in lexicographic order.
fn subsets(len: usize, j: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = if j <= len { Some((0..j).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        let mut i = j;
        loop {
            if i == 0 {
                current = None;
                break;
            }
            i -= 1;
            if next[i] < len - j + i {
                next[i] += 1;
                for l in i + 1..j {
                    next[l] = next[l - 1] + 1;
                }
                current = Some(next);
                break;
            }
        }
        Some(out)
    })
}

/// Step k+1 from the last step of `trace`.
pub fn step_next(spec: &ProblemSpec, trace: &KohnTrace) -> Result<StepRecord, KohnError> {
    let prev = trace.last();
    let current = &prev.ideal;
    let budget = spec.caps.closure.groebner_work;
    let over = || KohnError::GroebnerBudget { step: prev.k + 1, budget };
    let basis = current.try_basis(budget).ok_or_else(over)?.to_vec();
    let mut records = Vec::new();
    let mut capped = false;
    'sizes: for j in 1..=spec.n - spec.q {
        for idx in subsets(basis.len(), j) {
            if records.len() >= spec.caps.tuple_cap {
                capped = true;
                break 'sizes;
            }
            let tuple: Vec<Poly> = idx.iter().map(|&i| basis[i].clone()).collect();
            let determinants = levi_determinants(&spec.r, spec.q, &tuple).expect("validated tuple length");
            let mut pruned = true;
            for d in &determinants {
                match current.try_contains(d, budget) {
                    Some(true) => {}
                    Some(false) => {
                        pruned = false;
                        break;
                    }
                    None => return Err(over()),
                }
            }
            records.push(TupleRecord { tuple, determinants, pruned });
        }
    }
    let extra: Vec<Poly> = records.iter().filter(|t| !t.pruned).flat_map(|t| t.determinants.iter().cloned()).collect();
    let pre_ideal = current.extended(extra);
    close_step(spec, prev.k + 1, pre_ideal, records, capped)
}

/// Iterate until a unit appears at the base point, the chain stabilizes, or
/// `max_steps` is reached.
///
/// A step that outgrows the Gröbner work budget ends the run as
/// cap-exhausted; every other error is returned.
pub fn run(spec: &ProblemSpec) -> Result<KohnTrace, KohnError> {
    let mut trace = KohnTrace {
        spec: spec.clone(),
        status: KohnStatus::CapExhausted,
        steps: Vec::new(),
        groebner_budget_step: None,
    };
    let mut next = step1(spec);
    loop {
        match next {
            Ok(step) => trace.steps.push(step),
            Err(KohnError::GroebnerBudget { step, .. }) => {
                trace.groebner_budget_step = Some(step);
                break;
            }
            Err(e) => return Err(e),
        }
        let last = trace.last();
        if last.unit_at_base {
            trace.status = KohnStatus::Terminated(last.k);
            break;
        }
        if trace.steps.len() >= 2 && last.ideal.ideal_equal(&trace.steps[trace.steps.len() - 2].ideal) {
            trace.status = KohnStatus::StabilizedUndetermined(last.k);
            break;
        }
        if trace.steps.len() >= spec.caps.max_steps {
            break;
        }
        next = step_next(spec, &trace);
    }
    Ok(trace)
}
