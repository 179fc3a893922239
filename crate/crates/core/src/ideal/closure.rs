//! Certified under-approximation of the real radical.
//!
//! Three rules are saturated until nothing new enters or the round cap is hit:
//!
//! - **R1** squarefree monomials `m` with `m ∈ √I` (power search, then the
//!   Rabinowitsch test);
//! - **R2** Hermitian squares: if `±g = Σ c_k |h_k|²` for a real element `g`
//!   of the ideal, every `h_k` and `conj(h_k)` is admitted;
//! - **R3** conjugates of every generator.
//!
//! Each admitted element carries a [`RadicalCertificate`] that holds against
//! the ideal generated by the closure's input together with all elements
//! certified before it.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::groebner::{DEFAULT_GROEBNER_WORK, DEFAULT_RADICAL_WORK};
use super::radical::{rabinowitsch, radical_contains_bounded, DEFAULT_POWER_CAP};
use super::sos::{assemble, sos_split_capped, verify_split, SosOutcome, SosTerm, DEFAULT_GRAM_CAP};
use super::Ideal;
use crate::poly::{GaussianRational, Monomial, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureCaps {
    /// Largest degree of R1 monomial candidates.
    pub candidate_degree: u32,
    pub max_rounds: usize,
    /// Largest Gram basis R2 will factor.
    pub gram_size: usize,
    /// Largest exponent searched for `f^m ∈ I`.
    pub power_cap: u32,
    /// Work budget for each Gröbner basis of the closure's ideal.
    pub groebner_work: usize,
    /// Work budget for each Rabinowitsch test; a test that runs out is
    /// skipped.
    pub radical_work: usize,
}

impl Default for ClosureCaps {
    fn default() -> Self {
        Self {
            candidate_degree: 4,
            max_rounds: 8,
            gram_size: DEFAULT_GRAM_CAP,
            power_cap: DEFAULT_POWER_CAP,
            groebner_work: DEFAULT_GROEBNER_WORK,
            radical_work: DEFAULT_RADICAL_WORK,
        }
    }
}

/// Which closure rules run. R3 always does.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RadicalMode {
    #[default]
    Full,
    RadicalOnly,
    SosOnly,
}

impl RadicalMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            RadicalMode::Full => "full",
            RadicalMode::RadicalOnly => "radical-only",
            RadicalMode::SosOnly => "sos-only",
        }
    }

    fn uses_radical(&self) -> bool {
        !matches!(self, RadicalMode::SosOnly)
    }

    fn uses_sos(&self) -> bool {
        !matches!(self, RadicalMode::RadicalOnly)
    }
}

impl std::str::FromStr for RadicalMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "full" => Ok(RadicalMode::Full),
            "radical-only" => Ok(RadicalMode::RadicalOnly),
            "sos-only" => Ok(RadicalMode::SosOnly),
            other => Err(format!("unknown radical mode `{other}` (expected full, radical-only or sos-only)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `element^exponent` lies in the context ideal.
    RadicalPower { exponent: u32 },
    /// `1 ∈ (context, 1 - t·element)`; no exponent within the power cap.
    Rabinowitsch,
    /// `source = Σ c_k |h_k|²` lies in the context ideal (up to sign) and
    /// `element` is some `h_k` or `conj(h_k)`.
    SosSplit { source: Poly, terms: Vec<SosTerm> },
    /// `element` already lies in the context ideal; it is a new reduced
    /// basis element.
    LinearCombination,
    /// `element = conj(source)` with `source` in the context ideal.
    Conjugate { source: Poly },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CertificateKind {
    RadicalPower,
    SosSplit,
    LinearCombination,
    Conjugate,
}

impl CertificateKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CertificateKind::RadicalPower => "radical-power",
            CertificateKind::SosSplit => "sos-split",
            CertificateKind::LinearCombination => "linear-combination",
            CertificateKind::Conjugate => "conjugate",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalCertificate {
    pub element: Poly,
    pub witness: Witness,
}

impl RadicalCertificate {
    pub fn kind(&self) -> CertificateKind {
        match self.witness {
            Witness::RadicalPower { .. } | Witness::Rabinowitsch => CertificateKind::RadicalPower,
            Witness::SosSplit { .. } => CertificateKind::SosSplit,
            Witness::LinearCombination => CertificateKind::LinearCombination,
            Witness::Conjugate { .. } => CertificateKind::Conjugate,
        }
    }

    /// The `m` in `|element|^m <= C |g|`; `None` for a bare Rabinowitsch witness.
    pub fn exponent(&self) -> Option<u32> {
        match self.witness {
            Witness::RadicalPower { exponent } => Some(exponent),
            Witness::Rabinowitsch => None,
            Witness::SosSplit { .. } => Some(2),
            Witness::LinearCombination | Witness::Conjugate { .. } => Some(1),
        }
    }

    /// Check this certificate against the ideal it claims to extend.
    pub fn verify(&self, context: &Ideal) -> Result<(), CertificateError> {
        let fail = |reason: &str| CertificateError { element: self.element.to_string(), reason: reason.to_string() };
        match &self.witness {
            Witness::RadicalPower { exponent } => {
                if *exponent == 0 || !context.contains(&self.element.pow(*exponent)) {
                    return Err(fail("power not in ideal"));
                }
            }
            Witness::Rabinowitsch => {
                if !rabinowitsch(context, &self.element) {
                    return Err(fail("1 not in (I, 1 - t f)"));
                }
            }
            Witness::SosSplit { source, terms } => {
                if !verify_split(source, terms) {
                    return Err(fail("squares do not sum to source"));
                }
                if !context.contains(source) {
                    return Err(fail("source not in ideal"));
                }
                let hit = terms.iter().any(|t| t.root == self.element || t.root.conjugate() == self.element);
                if !hit {
                    return Err(fail("element is not one of the squares"));
                }
            }
            Witness::LinearCombination => {
                if !context.contains(&self.element) {
                    return Err(fail("element not in ideal"));
                }
            }
            Witness::Conjugate { source } => {
                if source.conjugate() != self.element || !context.contains(source) {
                    return Err(fail("conjugate source not in ideal"));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("certificate for `{element}` does not verify: {reason}")]
pub struct CertificateError {
    pub element: String,
    pub reason: String,
}

/// Replay a certificate chain: certificate `k` must hold in the ideal
/// generated by `input` and the elements of certificates `0..k`.
pub fn verify_certificates(n: usize, input: &[Poly], certs: &[RadicalCertificate]) -> Result<(), CertificateError> {
    let mut gens: Vec<Poly> = input.to_vec();
    for cert in certs {
        let context = Ideal::new(n, gens.iter().cloned());
        cert.verify(&context)?;
        gens.push(cert.element.clone());
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClosureTruncation {
    /// The closure was still growing when `max_rounds` ran out.
    pub rounds: bool,
    /// Some R2 candidate exceeded the Gram size cap.
    pub gram: bool,
    /// Some R1 Rabinowitsch test ran out of Gröbner work and its candidate
    /// was skipped.
    pub radical_tests: bool,
}

impl ClosureTruncation {
    pub fn any(&self) -> bool {
        self.rounds || self.gram || self.radical_tests
    }
}

/// The closure's own ideal could not be put in Gröbner form within the work
/// budget, so no closure was produced.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("Gröbner basis of {generators} generators exceeded the work budget {budget}")]
pub struct GroebnerBudgetExceeded {
    pub generators: usize,
    pub budget: usize,
}

#[derive(Debug, Clone)]
pub struct Closure {
    pub ideal: Ideal,
    pub certificates: Vec<RadicalCertificate>,
    pub truncated: ClosureTruncation,
    pub rounds: usize,
}

struct Builder {
    n: usize,
    gens: Vec<Poly>,
    known: HashSet<Poly>,
    certificates: Vec<RadicalCertificate>,
}

impl Builder {
    fn adjoin(&mut self, element: Poly, witness: Witness) -> bool {
        if element.is_zero() || !self.known.insert(canonical_sign(element.clone())) {
            return false;
        }
        self.gens.push(element.clone());
        self.certificates.push(RadicalCertificate { element, witness });
        true
    }

    /// The current ideal with its basis computed within `budget`.
    fn ideal(&self, budget: usize) -> Result<Ideal, GroebnerBudgetExceeded> {
        let ideal = Ideal::new(self.n, self.gens.iter().cloned());
        match ideal.try_basis(budget) {
            Some(_) => Ok(ideal),
            None => Err(GroebnerBudgetExceeded { generators: self.gens.len(), budget }),
        }
    }
}

/// Scale by a unit so the leading coefficient is 1, except that real
/// polynomials are only divided by a positive rational to stay real.
fn canonical_sign(p: Poly) -> Poly {
    match p.leading_coeff() {
        None => p,
        Some(lc) if lc.is_real() => {
            let scale = GaussianRational::from_real(lc.re().abs_recip());
            p.scale(&scale)
        }
        Some(_) => p.monic(),
    }
}

trait AbsRecip {
    fn abs_recip(&self) -> num_rational::BigRational;
}

impl AbsRecip for num_rational::BigRational {
    fn abs_recip(&self) -> num_rational::BigRational {
        use num_traits::Signed;
        self.abs().recip()
    }
}

/// Squarefree monomials in `nvars` variables of degree `1..=max_degree`,
/// by increasing degree and descending monomial order within a degree.
fn squarefree_monomials(nvars: usize, max_degree: u32) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = (1u32..(1u32 << nvars))
        .filter(|mask| mask.count_ones() <= max_degree)
        .map(|mask| Monomial::from_exponents((0..nvars).map(|v| mask >> v & 1).collect()))
        .collect();
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
    out
}

/// Sound non-membership filter: if every term of every generator involves a
/// variable outside `supp(m)`, the point with those variables zero and the
/// rest one lies on the variety of `I` but not of `m`.
fn excluded_by_coordinate_point(gens: &[Poly], m: &Monomial) -> bool {
    let support: Vec<bool> = m.exponents().iter().map(|&e| e > 0).collect();
    gens.iter()
        .all(|g| g.terms().all(|(t, _)| t.exponents().iter().zip(&support).any(|(&e, &in_supp)| e > 0 && !in_supp)))
}

/// Saturate `input` under R1-R3 as selected by `mode`.
///
/// Fails only when the ideal itself outgrows `caps.groebner_work`; a
/// Rabinowitsch test that does so is skipped and flagged instead.
pub fn real_radical_closure(
    input: &Ideal,
    caps: &ClosureCaps,
    mode: RadicalMode,
) -> Result<Closure, GroebnerBudgetExceeded> {
    let budget = caps.groebner_work;
    let n = input.n();
    let mut b = Builder {
        n,
        gens: input.generators().to_vec(),
        known: input.generators().iter().cloned().map(canonical_sign).collect(),
        certificates: Vec::new(),
    };
    let mut truncated = ClosureTruncation::default();
    let mut rounds = 0;
    let mut converged = false;
    // generator count of the last ideal on which R1 found nothing new
    let mut exhausted_at: Option<usize> = None;
    let candidates = squarefree_monomials(2 * n, caps.candidate_degree);

    while rounds < caps.max_rounds {
        rounds += 1;
        let before = b.gens.len();
        let ideal = b.ideal(budget)?;
        if ideal.is_unit() {
            converged = true;
            break;
        }

        // R3
        for g in ideal.generators() {
            let c = g.conjugate();
            if !ideal.contains(&c) {
                b.adjoin(c, Witness::Conjugate { source: g.clone() });
            }
        }
        let (ideal, built) = if b.gens.len() > before { (b.ideal(budget)?, b.gens.len()) } else { (ideal, before) };

        // R2
        if mode.uses_sos() {
            let mut seen: HashSet<Poly> = HashSet::new();
            let mut reals: Vec<Poly> = Vec::new();
            for g in ideal.basis().iter().chain(ideal.generators()) {
                let parts = if g.is_real() { vec![g.clone()] } else { vec![g.real_part(), g.imag_part()] };
                for part in parts {
                    if !part.is_zero() && seen.insert(part.clone()) {
                        reals.push(part);
                    }
                }
            }
            for g in reals {
                for source in [g.clone(), -&g] {
                    match sos_split_capped(&source, caps.gram_size).expect("real candidate") {
                        SosOutcome::Split(terms) => {
                            for t in &terms {
                                for e in [t.root.clone(), t.root.conjugate()] {
                                    if !ideal.contains(&e) {
                                        b.adjoin(
                                            e,
                                            Witness::SosSplit { source: assemble(n, &terms), terms: terms.clone() },
                                        );
                                    }
                                }
                            }
                        }
                        SosOutcome::TooLarge(_) => truncated.gram = true,
                        SosOutcome::NotSos => {}
                    }
                }
            }
        }
        let ideal = if b.gens.len() > built { b.ideal(budget)? } else { ideal };
        if ideal.is_unit() || exhausted_at == Some(b.gens.len()) {
            converged = true;
            break;
        }

        // R1
        if mode.uses_radical() {
            let start = b.gens.len();
            let mut admitted: Vec<Monomial> = Vec::new();
            for m in &candidates {
                if admitted.iter().any(|a| a.divides(m)) {
                    continue;
                }
                let mp = Poly::monomial(n, m.clone(), GaussianRational::from_int(1));
                if ideal.contains(&mp) {
                    admitted.push(m.clone());
                    continue;
                }
                if excluded_by_coordinate_point(ideal.generators(), m) {
                    continue;
                }
                let Some(verdict) = radical_contains_bounded(&ideal, &mp, caps.power_cap, caps.radical_work) else {
                    truncated.radical_tests = true;
                    continue;
                };
                if verdict.member {
                    let witness = match verdict.exponent {
                        Some(exponent) => Witness::RadicalPower { exponent },
                        None => Witness::Rabinowitsch,
                    };
                    b.adjoin(mp, witness);
                    admitted.push(m.clone());
                }
            }
            if b.gens.len() == start {
                exhausted_at = Some(start);
            }
        }

        if b.gens.len() == before {
            converged = true;
            break;
        }
    }
    truncated.rounds = !converged;

    let ideal = b.ideal(budget)?;
    for g in ideal.basis().to_vec() {
        if !b.known.contains(&canonical_sign(g.clone())) {
            // already a member; recorded only so the trace explains it
            let element = canonical_sign(g);
            b.known.insert(element.clone());
            b.certificates.push(RadicalCertificate { element, witness: Witness::LinearCombination });
        }
    }
    Ok(Closure { ideal, certificates: b.certificates, truncated, rounds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse_expression;

    fn p(s: &str, n: usize) -> Poly {
        parse_expression(s, n).unwrap()
    }

    fn ideal(items: &[&str], n: usize) -> Ideal {
        Ideal::new(n, items.iter().map(|s| p(s, n)))
    }

    fn close(i: &Ideal) -> Closure {
        real_radical_closure(i, &ClosureCaps::default(), RadicalMode::Full).unwrap()
    }

    #[test]
    fn degenerate_model_step_one() {
        let input = ideal(&["z2 + zbar2 + z1^2*zbar1^2", "4*z1*zbar1"], 2);
        let out = close(&input);
        for s in ["z1", "zbar1", "z2 + zbar2"] {
            assert!(out.ideal.contains(&p(s, 2)), "{s} missing");
        }
        assert!(!out.ideal.is_unit());
        let z1 = out.certificates.iter().find(|c| c.element == p("z1", 2)).unwrap();
        assert_eq!(z1.kind(), CertificateKind::SosSplit);
        let lin = out.certificates.iter().find(|c| c.element == p("z2 + zbar2", 2)).unwrap();
        assert_eq!(lin.kind(), CertificateKind::LinearCombination);
        verify_certificates(2, input.generators(), &out.certificates).unwrap();
        assert!(!out.truncated.any());
    }

    #[test]
    fn unit_ideal_is_fixed() {
        let out = close(&Ideal::unit(2));
        assert!(out.ideal.is_unit());
        assert!(out.certificates.is_empty());
    }

    #[test]
    fn radical_power_rule() {
        let out = close(&ideal(&["z1^2"], 2));
        assert!(out.ideal.contains(&p("z1", 2)));
        let cert = out.certificates.iter().find(|c| c.element == p("z1", 2)).unwrap();
        assert_eq!(cert.witness, Witness::RadicalPower { exponent: 2 });
    }

    #[test]
    fn conjugation_stability() {
        let input = ideal(&["z1 + i*zbar2"], 2);
        let out = close(&input);
        for g in out.ideal.generators() {
            assert!(out.ideal.contains(&g.conjugate()));
        }
        verify_certificates(2, input.generators(), &out.certificates).unwrap();
    }

    #[test]
    fn modes_select_rules() {
        let sq = ideal(&["z1^2"], 1);
        let sos_only = real_radical_closure(&sq, &ClosureCaps::default(), RadicalMode::SosOnly).unwrap();
        assert!(!sos_only.ideal.contains(&p("z1", 1)));
        let herm = ideal(&["z1*zbar1"], 1);
        let rad_only = real_radical_closure(&herm, &ClosureCaps::default(), RadicalMode::RadicalOnly).unwrap();
        assert!(!rad_only.ideal.contains(&p("z1", 1)));
        let full = close(&herm);
        assert!(full.ideal.contains(&p("z1", 1)));
    }

    #[test]
    fn squarefree_candidates() {
        let c = squarefree_monomials(4, 2);
        assert_eq!(c.len(), 4 + 6);
        assert_eq!(c[0], Monomial::from_exponents(vec![1, 0, 0, 0]));
    }

    #[test]
    fn coordinate_filter_is_sound() {
        let gens = vec![p("z1*z2", 2)];
        // z1 vanishes nowhere on {z1 = 1, z2 = 0}? it is 1 there, and z1 z2 = 0
        assert!(excluded_by_coordinate_point(&gens, &Monomial::var(4, 0)));
        // z1 z2 itself cannot be excluded
        assert!(!excluded_by_coordinate_point(&gens, &Monomial::from_exponents(vec![1, 1, 0, 0])));
    }

    #[test]
    fn forged_certificates_fail() {
        let input = vec![p("z1*z2", 2)];
        let bogus = RadicalCertificate { element: p("z1", 2), witness: Witness::RadicalPower { exponent: 3 } };
        assert!(verify_certificates(2, &input, &[bogus]).is_err());
        let bogus = RadicalCertificate { element: p("z1", 2), witness: Witness::Rabinowitsch };
        assert!(verify_certificates(2, &input, &[bogus]).is_err());
    }
}
