//! Independent oracles and random generators shared by the integration tests.
//!
//! Nothing here calls the engine's Gröbner, closure or exterior-algebra code;
//! only plain polynomial arithmetic and derivatives from `poly` are reused.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use kohn_core::forms::{CoBasis, Form};
use kohn_core::{GaussianRational, Monomial, Point, Poly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

// ---------------------------------------------------------------- random data

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn random_scalar<R: Rng>(rng: &mut R) -> GaussianRational {
    let re = rat(rng.gen_range(-3..=3), rng.gen_range(1..=2));
    let im = if rng.gen_bool(0.3) { rat(rng.gen_range(-2..=2), 1) } else { BigRational::zero() };
    let c = GaussianRational::new(re, im);
    if c.is_zero() {
        GaussianRational::from_int(1)
    } else {
        c
    }
}

pub fn random_monomial<R: Rng>(rng: &mut R, nvars: usize, min_deg: u32, max_deg: u32) -> Monomial {
    let deg = rng.gen_range(min_deg..=max_deg);
    let mut exps = vec![0u32; nvars];
    for _ in 0..deg {
        exps[rng.gen_range(0..nvars)] += 1;
    }
    Monomial::from_exponents(exps)
}

/// A sparse polynomial in `z`, `zbar` with `terms` terms of degree in
/// `min_deg..=max_deg`.
pub fn random_poly<R: Rng>(rng: &mut R, n: usize, terms: usize, min_deg: u32, max_deg: u32) -> Poly {
    Poly::from_terms(n, 0, (0..terms).map(|_| (random_monomial(rng, 2 * n, min_deg, max_deg), random_scalar(rng))))
}

/// A real defining function `2 Re z_n + g + conj(g)` with `g` of degree
/// `2..=max_deg`, so `r(0) = 0` and `dr(0) != 0`.
pub fn random_defining_function<R: Rng>(rng: &mut R, n: usize, max_deg: u32) -> Poly {
    let terms = rng.gen_range(1..=3);
    let g = random_poly(rng, n, terms, 2, max_deg);
    let half = rng.gen_range(1..=2);
    let mut r = &Poly::z(n, n) + &Poly::zbar(n, n);
    r = &r + &(&g + &g.conjugate());
    if half == 2 {
        // a Hermitian square makes degenerate Levi forms more common
        let h = random_poly(rng, n, 1, 1, 2);
        r = &r + &(&h * &h.conjugate());
    }
    r
}

// ---------------------------------------------------------- ideals

/// A random ideal and a member of degree at most `bound`, plus a perturbed
/// copy that is usually not a member.
pub fn membership_instance<R: Rng>(r: &mut R) -> (Vec<Poly>, Poly, Poly, u32) {
    let n = r.gen_range(1..=3);
    let gdeg = if n == 3 { 2 } else { 3 };
    let count = r.gen_range(1..=3);
    let gens: Vec<Poly> = (0..count)
        .map(|_| {
            let t = r.gen_range(1..=3);
            random_poly(r, n, t, 1, gdeg)
        })
        .collect();
    let mut member = Poly::zero(n);
    for g in &gens {
        let t = r.gen_range(1..=2);
        let a = random_poly(r, n, t, 0, 2);
        member = &member + &(&a * g);
    }
    let bound = gdeg + 2;
    let noise = Poly::monomial(n, random_monomial(r, 2 * n, 0, 2), random_scalar(r));
    (gens, member.clone(), &member + &noise, bound)
}

// ---------------------------------------------------------- linear algebra

/// Echelon form over the Gaussian rationals, rows keyed by pivot monomial.
#[derive(Default)]
pub struct Echelon {
    rows: BTreeMap<Monomial, BTreeMap<Monomial, GaussianRational>>,
}

fn to_row(p: &Poly) -> BTreeMap<Monomial, GaussianRational> {
    p.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

impl Echelon {
    /// Reduce `row` against the current pivots; returns the remainder.
    fn reduce(&self, mut row: BTreeMap<Monomial, GaussianRational>) -> BTreeMap<Monomial, GaussianRational> {
        let mut cursor: Option<Monomial> = None;
        loop {
            let next = match &cursor {
                None => row.keys().next_back().cloned(),
                Some(c) => row.range(..c.clone()).next_back().map(|(m, _)| m.clone()),
            };
            let Some(m) = next else { break };
            if let Some(pivot) = self.rows.get(&m) {
                let factor = row[&m].clone();
                for (pm, pc) in pivot {
                    let entry = row.entry(pm.clone()).or_insert_with(GaussianRational::zero);
                    *entry -= &(&factor * pc);
                    if entry.is_zero() {
                        row.remove(pm);
                    }
                }
            }
            cursor = Some(m);
        }
        row
    }

    pub fn insert(&mut self, p: &Poly) {
        let row = self.reduce(to_row(p));
        if let Some((m, c)) = row.iter().next_back() {
            let inv = c.inv().expect("nonzero pivot");
            let m = m.clone();
            let row: BTreeMap<_, _> = row.into_iter().map(|(k, v)| (k, &v * &inv)).collect();
            self.rows.insert(m, row);
        }
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.reduce(to_row(p)).is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

fn monomials_up_to(nvars: usize, max_deg: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(nvars)];
    let mut layer = vec![Monomial::one(nvars)];
    for _ in 0..max_deg {
        let mut next: Vec<Monomial> = Vec::new();
        for m in &layer {
            for v in 0..nvars {
                let e = m.mul(&Monomial::var(nvars, v));
                if !next.contains(&e) {
                    next.push(e);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Whether `p` is a combination `Σ a_i g_i` with every `deg(a_i g_i) <= bound`,
/// decided by row-reducing the Macaulay matrix.
pub fn macaulay_member(gens: &[Poly], p: &Poly, bound: u32) -> bool {
    if p.is_zero() {
        return true;
    }
    let Some(first) = gens.first() else { return false };
    let nvars = first.nvars();
    let mut ech = Echelon::default();
    let mut cache: HashMap<u32, Vec<Monomial>> = HashMap::new();
    for g in gens {
        let Some(d) = g.total_degree() else { continue };
        if d > bound {
            continue;
        }
        let shifts = cache.entry(bound - d).or_insert_with(|| monomials_up_to(nvars, bound - d)).clone();
        for m in shifts {
            ech.insert(&(&Poly::monomial(first.n(), m, GaussianRational::one()) * g));
        }
    }
    ech.contains(p)
}

// ------------------------------------------------------------- determinants

/// Determinant by the Leibniz permutation expansion.
pub fn leibniz_det(m: &[Vec<Poly>], n: usize) -> Poly {
    let size = m.len();
    let mut perm: Vec<usize> = (0..size).collect();
    let mut total = Poly::zero(n);
    permute(&mut perm, 0, &mut |p| {
        let mut term = Poly::one(n);
        for (row, &col) in p.iter().enumerate() {
            term = &term * &m[row][col];
            if term.is_zero() {
                return;
            }
        }
        if parity(p) {
            total = &total - &term;
        } else {
            total = &total + &term;
        }
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// True for odd permutations.
fn parity(p: &[usize]) -> bool {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 1
}

/// `det [[0, r_zbar_j], [r_z_i, r_{z_i zbar_j}]]`.
pub fn bordered_hessian_det(r: &Poly) -> Poly {
    let n = r.n();
    let mut m = vec![vec![Poly::zero(n); n + 1]; n + 1];
    for j in 1..=n {
        m[0][j] = r.partial_zbar(j).unwrap();
        m[j][0] = r.partial_z(j).unwrap();
        for k in 1..=n {
            m[j][k] = r.partial_z(j).unwrap().partial_zbar(k).unwrap();
        }
    }
    leibniz_det(&m, n)
}

pub fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

// ------------------------------------------------------------- naive forms

/// A form as a map from strictly increasing index lists (dz_i = i - 1,
/// dzbar_j = n + j - 1) to coefficients.
pub type NaiveForm = BTreeMap<Vec<usize>, Poly>;

/// Sort `idx` by adjacent swaps, returning `None` on a repeated 1-form.
fn sort_with_sign(mut idx: Vec<usize>) -> Option<(bool, Vec<usize>)> {
    let mut odd = false;
    for i in 0..idx.len() {
        for j in 0..idx.len() - 1 - i {
            if idx[j] == idx[j + 1] {
                return None;
            }
            if idx[j] > idx[j + 1] {
                idx.swap(j, j + 1);
                odd = !odd;
            }
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((odd, idx))
}

pub fn naive_wedge(a: &NaiveForm, b: &NaiveForm, n: usize) -> NaiveForm {
    let mut out: NaiveForm = BTreeMap::new();
    for (ia, ca) in a {
        for (ib, cb) in b {
            let mut idx = ia.clone();
            idx.extend(ib);
            let Some((odd, idx)) = sort_with_sign(idx) else { continue };
            let term = ca * cb;
            let entry = out.entry(idx).or_insert_with(|| Poly::zero(n));
            *entry = if odd { &*entry - &term } else { &*entry + &term };
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Naive exterior derivative: `∂` when `holo`, else `∂̄`.
pub fn naive_d(a: &NaiveForm, n: usize, holo: bool) -> NaiveForm {
    let mut out: NaiveForm = BTreeMap::new();
    for (idx, c) in a {
        for v in 1..=n {
            let (dc, slot) =
                if holo { (c.partial_z(v).unwrap(), v - 1) } else { (c.partial_zbar(v).unwrap(), n + v - 1) };
            if dc.is_zero() {
                continue;
            }
            let mut full = vec![slot];
            full.extend(idx);
            let Some((odd, sorted)) = sort_with_sign(full) else { continue };
            let entry = out.entry(sorted).or_insert_with(|| Poly::zero(n));
            *entry = if odd { &*entry - &dc } else { &*entry + &dc };
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// A random form of bidegree `(p, q)` with up to `terms` basis elements.
pub fn random_naive_form<R: Rng>(rng: &mut R, n: usize, p: usize, q: usize, terms: usize) -> NaiveForm {
    let mut out: NaiveForm = BTreeMap::new();
    if p > n || q > n {
        return out;
    }
    for _ in 0..terms {
        let mut holo: Vec<usize> = (0..n).collect();
        let mut anti: Vec<usize> = (n..2 * n).collect();
        let mut idx = Vec::new();
        for _ in 0..p {
            idx.push(holo.remove(rng.gen_range(0..holo.len())));
        }
        for _ in 0..q {
            idx.push(anti.remove(rng.gen_range(0..anti.len())));
        }
        idx.sort();
        let t = rng.gen_range(1..=2);
        let c = random_poly(rng, n, t, 0, 2);
        let entry = out.entry(idx).or_insert_with(|| Poly::zero(n));
        *entry = &*entry + &c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn to_naive(f: &Form) -> NaiveForm {
    let n = f.n();
    f.terms()
        .map(|(b, c)| {
            let mut idx: Vec<usize> = b.holo().iter().map(|i| i - 1).collect();
            idx.extend(b.antiholo().iter().map(|j| n + j - 1));
            (idx, c.clone())
        })
        .collect()
}

pub fn from_naive(a: &NaiveForm, n: usize) -> Form {
    let mut out = Form::zero(n);
    for (idx, c) in a {
        let holo: Vec<usize> = idx.iter().filter(|&&i| i < n).map(|i| i + 1).collect();
        let anti: Vec<usize> = idx.iter().filter(|&&i| i >= n).map(|i| i - n + 1).collect();
        out = out.checked_add(&Form::term(CoBasis::new(&holo, &anti).unwrap(), c.clone())).unwrap();
    }
    out
}

// --------------------------------------------------------- membership helpers

/// Points of `{r = 0}`-independent use: evaluate `p` at `x`.
pub fn eval(p: &Poly, x: &Point) -> GaussianRational {
    p.evaluate(x).unwrap()
}

/// Squarefree-support radical test for monomial ideals: `m ∈ √(g_1..g_k)`
/// iff some generator's support lies within `supp(m)`.
pub fn monomial_radical_oracle(gens: &[Monomial], m: &Monomial) -> bool {
    gens.iter().any(|g| g.exponents().iter().zip(m.exponents()).all(|(&a, &b)| a == 0 || b > 0))
}

// ------------------------------------------------------- straight-line pipeline

/// Unit verdicts at the origin, step by step, for `n = 2`, `q = 1` and
/// `r = z2 + zbar2 + h(z1, zbar1)`, computed without the engine:
/// the Levi determinant by the bordered Hessian, Hermitian squares by
/// inspecting diagonal terms, `∂z1 ∧ ∂r ∧ ∂̄r` by hand expansion, and
/// membership by Macaulay matrices. Returns the generator lists per step.
pub fn straight_line_pipeline(r: &Poly, max_steps: usize) -> Vec<(Vec<Poly>, bool)> {
    let n = 2;
    let origin = Point::origin(n);
    let det = bordered_hessian_det(r);
    let mut steps: Vec<(Vec<Poly>, bool)> = Vec::new();
    let z1 = Poly::z(n, 1);
    let zb1 = Poly::zbar(n, 1);

    // step 1
    let mut gens = vec![r.clone(), det.clone()];
    let unit = !eval(&det, &origin).is_zero();
    let diagonal_square = !det.is_zero()
        && det
            .terms()
            .all(|(m, _)| m.exponents()[0] == m.exponents()[2] && m.exponents()[1] == 0 && m.exponents()[3] == 0)
        && {
            let signs: Vec<bool> =
                det.terms().map(|(_, c)| c.re() > &BigRational::zero() && c.im().is_zero()).collect();
            signs.iter().all(|&s| s) || signs.iter().all(|&s| !s)
        };
    if diagonal_square {
        // det = Σ c_a |z1^a|^2 with one sign: each z1^a is a real-radical
        // element, and for a > 0 so are z1 and zbar1
        for (m, _) in det.terms() {
            let a = m.exponents()[0];
            gens.push(z1.pow(a));
            if a > 0 {
                gens.push(z1.clone());
                gens.push(zb1.clone());
            }
        }
    }
    steps.push((gens.clone(), unit));
    if unit {
        return steps;
    }

    while steps.len() < max_steps {
        let has_z1 = macaulay_member(&gens, &z1, 6);
        if !has_z1 {
            // nothing new can enter without z1 in this family
            steps.push((gens.clone(), false));
            return steps;
        }
        // ∂z1 ∧ ∂r ∧ ∂̄r = r_z2 dz1∧dz2 ∧ (r_zbar1 dzbar1 + r_zbar2 dzbar2)
        let r_z2 = r.partial_z(2).unwrap();
        let coeffs = [&r_z2 * &r.partial_zbar(1).unwrap(), &r_z2 * &r.partial_zbar(2).unwrap()];
        let unit = coeffs.iter().any(|c| !eval(c, &origin).is_zero());
        gens.extend(coeffs.into_iter().filter(|c| !c.is_zero()));
        steps.push((gens.clone(), unit));
        if unit {
            break;
        }
    }
    steps
}
