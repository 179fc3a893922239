//! Buchberger's algorithm with the product and chain criteria.
//!
//! Pairs are processed by the normal strategy: smallest lcm first under the
//! global degrevlex order, ties broken by pair indices. The output is the
//! reduced, monic basis sorted by ascending leading monomial, so equal ideals
//! produce identical bases.

use std::collections::{BTreeSet, HashSet};

use num_traits::One;

use crate::poly::{Monomial, Poly};

/// Full normal form of `p` modulo `basis` (every term reduced).
pub fn normal_form(p: &Poly, basis: &[Poly]) -> Poly {
    let mut work = 0;
    normal_form_bounded(p, basis, &mut work, usize::MAX).expect("unbounded")
}

/// Normal form that charges each reduction step to `work`, giving up once
/// `work` exceeds `limit`. A step costs the divisor's term count times the
/// size of the multiplier in 64-bit words, so coefficient swell is metered.
pub(super) fn normal_form_bounded(p: &Poly, basis: &[Poly], work: &mut usize, limit: usize) -> Option<Poly> {
    let mut rest = p.clone();
    let mut remainder = Poly::from_terms(p.n(), p.aux(), std::iter::empty());
    while let Some((m, c)) = rest.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        let divisor = basis.iter().find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(&m)));
        match divisor {
            Some(g) => {
                let (lm, lc) = g.leading_term().expect("nonzero divisor");
                let q = lm.quotient_of(&m).expect("divides");
                let factor = -(&c / lc);
                *work = work.saturating_add(g.num_terms() * (1 + factor.bits() as usize / 64));
                if *work > limit {
                    return None;
                }
                rest.add_scaled(&factor, &q, g);
            }
            None => {
                let (m, c) = rest.pop_leading_term().expect("nonempty");
                remainder.push_term(m, c);
            }
        }
    }
    Some(remainder)
}

/// Whether `p` reduces to zero modulo `basis` (which need not be Gröbner).
pub fn reduces_to_zero(p: &Poly, basis: &[Poly]) -> bool {
    normal_form(p, basis).is_zero()
}

pub fn s_polynomial(f: &Poly, g: &Poly) -> Poly {
    let (fm, fc) = f.leading_term().expect("nonzero");
    let (gm, gc) = g.leading_term().expect("nonzero");
    let lcm = fm.lcm(gm);
    let mut s = Poly::from_terms(f.n(), f.aux(), std::iter::empty());
    s.add_scaled(&fc.inv().expect("nonzero"), &fm.quotient_of(&lcm).unwrap(), f);
    s.add_scaled(&-gc.inv().expect("nonzero"), &gm.quotient_of(&lcm).unwrap(), g);
    s
}

fn lm(p: &Poly) -> &Monomial {
    p.leading_monomial().expect("nonzero basis element")
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// The zero ideal gives an empty basis; the unit ideal gives `[1]`.
pub fn groebner_basis(gens: &[Poly]) -> Vec<Poly> {
    groebner_basis_bounded(gens, usize::MAX).expect("unbounded")
}

/// Default work budget for the closure's own Gröbner bases.
pub const DEFAULT_GROEBNER_WORK: usize = 100_000;

/// Default work budget for each Rabinowitsch test.
pub const DEFAULT_RADICAL_WORK: usize = 20_000;

/// As [`groebner_basis`], but gives up with `None` once the reduction work
/// (see [`normal_form_bounded`]) exceeds `max_work`.
pub fn groebner_basis_bounded(gens: &[Poly], max_work: usize) -> Option<Vec<Poly>> {
    groebner_extend(&[], gens, max_work)
}

/// Reduced Gröbner basis of `known ∪ gens`, where `known` is already a
/// Gröbner basis, so only pairs involving the new elements are formed.
pub fn groebner_extend(known: &[Poly], gens: &[Poly], max_work: usize) -> Option<Vec<Poly>> {
    let Some(first) = known.first().or(gens.first()) else {
        return Some(Vec::new());
    };
    let (n, aux) = (first.n(), first.aux());
    if known.first().is_some_and(Poly::is_unit) {
        return Some(vec![Poly::one(n).with_aux(aux)]);
    }
    let mut basis: Vec<Poly> = known.iter().map(Poly::monic).collect();
    // ordered by (lcm, i, j) for the normal selection strategy
    let mut queue: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let mut sorted: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).map(Poly::monic).collect();
    sorted.sort_by(|a, b| lm(a).cmp(lm(b)));
    sorted.dedup();

    let insert = |h: Poly, basis: &mut Vec<Poly>, queue: &mut BTreeSet<_>, pending: &mut HashSet<_>| {
        let j = basis.len();
        for (i, g) in basis.iter().enumerate() {
            queue.insert((lm(g).lcm(lm(&h)), i, j));
            pending.insert((i, j));
        }
        basis.push(h);
    };

    let mut work = 0usize;
    for g in sorted {
        let h = normal_form_bounded(&g, &basis, &mut work, max_work)?;
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Some(vec![Poly::one(n).with_aux(aux)]);
        }
        insert(h.monic(), &mut basis, &mut queue, &mut pending);
    }

    while let Some((lcm, i, j)) = queue.pop_first() {
        pending.remove(&(i, j));
        if lm(&basis[i]).is_coprime(lm(&basis[j])) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lm(&basis[k]).divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let h = normal_form_bounded(&s_polynomial(&basis[i], &basis[j]), &basis, &mut work, max_work)?;
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Some(vec![Poly::one(n).with_aux(aux)]);
        }
        insert(h.monic(), &mut basis, &mut queue, &mut pending);
    }

    Some(reduce_basis(basis))
}

/// Minimise, interreduce and normalise a Gröbner basis.
pub fn reduce_basis(basis: Vec<Poly>) -> Vec<Poly> {
    let mut minimal: Vec<Poly> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let redundant =
            basis.iter().enumerate().any(|(l, h)| l != k && lm(h).divides(lm(g)) && (lm(h) != lm(g) || l < k));
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<Poly> = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let (lead_m, lead_c) = minimal[k].leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let others: Vec<Poly> = minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, g)| g.clone()).collect();
        let mut tail = minimal[k].clone();
        tail.pop_leading_term();
        let mut g = normal_form(&tail, &others);
        g.push_term(lead_m, lead_c);
        reduced.push(g.monic());
    }
    reduced.sort_by(|a, b| lm(a).cmp(lm(b)));
    debug_assert!(reduced.iter().all(|g| g.leading_coeff().is_some_and(One::is_one)));
    reduced
}
