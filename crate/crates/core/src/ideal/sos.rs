//! Hermitian sum-of-squares splitting `p = Σ c_k |h_k|²` with holomorphic `h_k`.
//!
//! A term `c · z^α zbar^β` of `p` is the Gram entry `G[α][β]`, so for real
//! `p` the Gram matrix over the holomorphic monomials is Hermitian and
//! uniquely determined. An exact LDL* elimination either proves it positive
//! semidefinite, yielding the squares, or finds a certificate of failure.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::poly::{GaussianRational, Monomial, Poly};

pub const DEFAULT_GRAM_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("sum-of-squares split needs a real polynomial")]
pub struct NotRealError;

/// One square `c · h · conj(h)` with `c > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SosTerm {
    pub weight: BigRational,
    pub root: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SosOutcome {
    Split(Vec<SosTerm>),
    NotSos,
    /// The Gram basis exceeded the configured size.
    TooLarge(usize),
}

/// Split `p` into Hermitian squares, with the default Gram size cap.
pub fn sos_split(p: &Poly) -> Result<Option<Vec<SosTerm>>, NotRealError> {
    match sos_split_capped(p, DEFAULT_GRAM_CAP)? {
        SosOutcome::Split(terms) => Ok(Some(terms)),
        _ => Ok(None),
    }
}

pub fn sos_split_capped(p: &Poly, cap: usize) -> Result<SosOutcome, NotRealError> {
    if !p.is_real() {
        return Err(NotRealError);
    }
    if p.is_zero() {
        return Ok(SosOutcome::NotSos);
    }
    let n = p.n();
    let nv = 2 * n + p.aux();
    // holomorphic halves, sorted descending so the ordering of the squares
    // follows the monomial order
    let mut halves: BTreeMap<Monomial, usize> = BTreeMap::new();
    let mut entries: Vec<(Monomial, Monomial, GaussianRational)> = Vec::new();
    for (m, c) in p.terms() {
        let e = m.exponents();
        if e[2 * n..].iter().any(|&x| x != 0) {
            return Ok(SosOutcome::NotSos);
        }
        let mut alpha = e[..n].to_vec();
        alpha.resize(nv, 0);
        let mut beta = e[n..2 * n].to_vec();
        beta.resize(nv, 0);
        let (alpha, beta) = (Monomial::from_exponents(alpha), Monomial::from_exponents(beta));
        halves.insert(alpha.clone(), 0);
        halves.insert(beta.clone(), 0);
        entries.push((alpha, beta, c.clone()));
    }
    if halves.len() > cap {
        return Ok(SosOutcome::TooLarge(halves.len()));
    }
    let basis: Vec<Monomial> = halves.keys().rev().cloned().collect();
    for (k, m) in basis.iter().enumerate() {
        halves.insert(m.clone(), k);
    }
    let size = basis.len();
    let mut gram = vec![vec![GaussianRational::zero(); size]; size];
    for (alpha, beta, c) in entries {
        gram[halves[&alpha]][halves[&beta]] = c;
    }

    let mut squares = Vec::new();
    for k in 0..size {
        let pivot = gram[k][k].clone();
        debug_assert!(pivot.is_real());
        let d = pivot.re().clone();
        if d.is_negative() {
            return Ok(SosOutcome::NotSos);
        }
        if d.is_zero() {
            if (k + 1..size).any(|i| !gram[i][k].is_zero()) {
                return Ok(SosOutcome::NotSos);
            }
            continue;
        }
        let column: Vec<GaussianRational> =
            (0..size).map(|i| if i < k { GaussianRational::zero() } else { gram[i][k].scale(&d.recip()) }).collect();
        for i in k + 1..size {
            if column[i].is_zero() {
                continue;
            }
            for j in k + 1..size {
                if column[j].is_zero() {
                    continue;
                }
                let update = (&column[i] * &column[j].conj()).scale(&d);
                gram[i][j] -= &update;
            }
        }
        let root = Poly::from_terms(
            n,
            0,
            column.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| {
                let exps = basis[i].exponents()[..2 * n].to_vec();
                (Monomial::from_exponents(exps), c.clone())
            }),
        );
        squares.push(SosTerm { weight: d, root });
    }
    if !verify_split(p, &squares) {
        return Ok(SosOutcome::NotSos);
    }
    Ok(SosOutcome::Split(squares))
}

/// `p == Σ c_k h_k conj(h_k)` with every `c_k > 0`.
pub fn verify_split(p: &Poly, terms: &[SosTerm]) -> bool {
    if terms.iter().any(|t| !t.weight.is_positive() || t.root.is_zero()) {
        return false;
    }
    let total = terms
        .iter()
        .fold(Poly::zero(p.n()), |acc, t| &acc + &(&t.root * &t.root.conjugate()).scale_rational(&t.weight));
    total == *p
}

/// `Σ c_k |h_k|²` as a polynomial.
pub fn assemble(n: usize, terms: &[SosTerm]) -> Poly {
    terms.iter().fold(Poly::zero(n), |acc, t| &acc + &(&t.root * &t.root.conjugate()).scale_rational(&t.weight))
}
