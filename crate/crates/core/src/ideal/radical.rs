//! Membership in the ordinary radical `√I` via the Rabinowitsch trick.

use num_traits::One;

use super::groebner::{groebner_extend, normal_form_bounded};
use super::Ideal;
use crate::poly::{GaussianRational, Monomial, Poly};

/// Default search bound for the exponent `m` with `p^m ∈ I`.
pub const DEFAULT_POWER_CAP: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalVerdict {
    pub member: bool,
    /// Smallest `m <= cap` with `p^m ∈ I`, when one was found. A member with
    /// no exponent was certified by the Rabinowitsch computation alone.
    pub exponent: Option<u32>,
}

/// Whether `1 ∈ (I, 1 - t·p)` in the ring with one extra variable `t`.
pub fn rabinowitsch(ideal: &Ideal, p: &Poly) -> bool {
    rabinowitsch_bounded(ideal, p, usize::MAX).expect("unbounded")
}

/// As [`rabinowitsch`], or `None` when the Gröbner work budget runs out.
pub fn rabinowitsch_bounded(ideal: &Ideal, p: &Poly, max_work: usize) -> Option<bool> {
    if ideal.is_unit() {
        return Some(true);
    }
    let nvars = 2 * ideal.n() + 1;
    let t = Poly::monomial(ideal.n(), Monomial::var(nvars, nvars - 1), GaussianRational::one());
    let one = Poly::one(ideal.n()).with_aux(1);
    // a basis of I stays a basis after adjoining t, so only pairs with the
    // new generator are needed
    let known: Vec<Poly> = ideal.basis().iter().map(|g| g.with_aux(1)).collect();
    let extra = &one - &(&t * &p.with_aux(1));
    Some(groebner_extend(&known, &[extra], max_work)?.first().is_some_and(Poly::is_unit))
}

/// Smallest `m` in `1..=cap` with `p^m ∈ I`.
pub fn power_membership(ideal: &Ideal, p: &Poly, cap: u32) -> Option<u32> {
    power_membership_bounded(ideal, p, cap, usize::MAX)
}

/// As [`power_membership`], stopping early (with `None`) once the
/// reductions exceed `max_work`. Works with `NF(p · NF(p^(m-1)))`, which is
/// zero exactly when `p^m ∈ I`.
fn power_membership_bounded(ideal: &Ideal, p: &Poly, cap: u32, max_work: usize) -> Option<u32> {
    let basis = ideal.basis();
    let mut work = 0;
    let mut rest = p.clone();
    for m in 1..=cap {
        rest = normal_form_bounded(&rest, basis, &mut work, max_work)?;
        if rest.is_zero() {
            return Some(m);
        }
        rest = &rest * p;
    }
    None
}

/// `p ∈ √I`, with the smallest exponent up to `cap` when one exists.
pub fn radical_contains(ideal: &Ideal, p: &Poly, cap: u32) -> RadicalVerdict {
    radical_contains_bounded(ideal, p, cap, usize::MAX).expect("unbounded")
}

/// As [`radical_contains`], or `None` when the Rabinowitsch computation runs
/// out of Gröbner work budget.
pub fn radical_contains_bounded(ideal: &Ideal, p: &Poly, cap: u32, max_work: usize) -> Option<RadicalVerdict> {
    if let Some(m) = power_membership_bounded(ideal, p, cap, max_work) {
        return Some(RadicalVerdict { member: true, exponent: Some(m) });
    }
    Some(RadicalVerdict { member: rabinowitsch_bounded(ideal, p, max_work)?, exponent: None })
}
