//! Exterior algebra over `dz1..dzn, dzbar1..dzbarn` with polynomial
//! coefficients, and the Levi determinant coefficients built from it.
//!
//! Basis elements are `dz_I ∧ dzbar_J` with `I`, `J` ascending, all `dz`
//! factors before all `dzbar` factors. Wedge products are canonicalised to
//! this basis with the sign of the sorting permutation.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    #[error("cannot add forms of bidegree {0:?} and {1:?}")]
    MixedBidegree((usize, usize), (usize, usize)),
    #[error("q = {q} out of range 1..={max} for n = {n}")]
    QOutOfRange { q: usize, n: usize, max: usize },
    #[error("tuple too long for level q: {len} > {max}")]
    TupleTooLong { len: usize, max: usize },
    #[error("ambient dimension mismatch ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },
}

/// Basis covector `dz_I ∧ dzbar_J`, stored as two index bitmasks
/// (bit `k` stands for index `k + 1`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CoBasis {
    holo: u32,
    antiholo: u32,
}

fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

/// Number of pairs `(a, b)` with `a ∈ left`, `b ∈ right`, `a > b`.
fn inversions(left: u32, right: u32) -> u32 {
    let mut count = 0;
    let mut r = right;
    while r != 0 {
        let b = r.trailing_zeros();
        count += (left >> (b + 1)).count_ones();
        r &= r - 1;
    }
    count
}

impl CoBasis {
    pub const ONE: CoBasis = CoBasis { holo: 0, antiholo: 0 };

    /// From 1-based index lists; `None` if an index repeats (the wedge vanishes).
    pub fn new(holo: &[usize], antiholo: &[usize]) -> Option<Self> {
        let mut h = 0u32;
        for &i in holo {
            let bit = 1u32 << (i - 1);
            if h & bit != 0 {
                return None;
            }
            h |= bit;
        }
        let mut a = 0u32;
        for &j in antiholo {
            let bit = 1u32 << (j - 1);
            if a & bit != 0 {
                return None;
            }
            a |= bit;
        }
        Some(Self { holo: h, antiholo: a })
    }

    pub fn holo(&self) -> Vec<usize> {
        mask_indices(self.holo)
    }

    pub fn antiholo(&self) -> Vec<usize> {
        mask_indices(self.antiholo)
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.holo.count_ones() as usize, self.antiholo.count_ones() as usize)
    }

    /// `self ∧ other` as `±basis`, or `None` when a factor repeats.
    pub fn wedge(&self, other: &CoBasis) -> Option<(bool, CoBasis)> {
        if self.holo & other.holo != 0 || self.antiholo & other.antiholo != 0 {
            return None;
        }
        // every dzbar in self must pass every dz in other
        let swaps = inversions(self.holo, other.holo)
            + inversions(self.antiholo, other.antiholo)
            + self.antiholo.count_ones() * other.holo.count_ones();
        Some((swaps % 2 == 1, CoBasis { holo: self.holo | other.holo, antiholo: self.antiholo | other.antiholo }))
    }
}

impl Ord for CoBasis {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bidegree()
            .cmp(&other.bidegree())
            .then_with(|| self.holo().cmp(&other.holo()))
            .then_with(|| self.antiholo().cmp(&other.antiholo()))
    }
}

impl PartialOrd for CoBasis {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CoBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.holo().iter().map(|i| format!("dz{i}")).collect();
        parts.extend(self.antiholo().iter().map(|j| format!("dzbar{j}")));
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("^"))
        }
    }
}

/// A homogeneous differential form `Σ f_{IJ} dz_I ∧ dzbar_J`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Form {
    n: usize,
    terms: BTreeMap<CoBasis, Poly>,
}

impl Form {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    /// The (0,0)-form `f`.
    pub fn scalar(f: Poly) -> Self {
        Self::term(CoBasis::ONE, f)
    }

    pub fn term(basis: CoBasis, f: Poly) -> Self {
        let n = f.n();
        let mut terms = BTreeMap::new();
        if !f.is_zero() {
            terms.insert(basis, f);
        }
        Self { n, terms }
    }

    pub fn dz(n: usize, i: usize) -> Self {
        Self::term(CoBasis::new(&[i], &[]).unwrap(), Poly::one(n))
    }

    pub fn dzbar(n: usize, j: usize) -> Self {
        Self::term(CoBasis::new(&[], &[j]).unwrap(), Poly::one(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero form.
    pub fn bidegree(&self) -> Option<(usize, usize)> {
        self.terms.keys().next().map(CoBasis::bidegree)
    }

    pub fn degree(&self) -> Option<usize> {
        self.bidegree().map(|(p, q)| p + q)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CoBasis, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, basis: &CoBasis) -> Poly {
        self.terms.get(basis).cloned().unwrap_or_else(|| Poly::zero(self.n))
    }

    fn accumulate(&mut self, basis: CoBasis, f: &Poly, negate: bool) {
        if f.is_zero() {
            return;
        }
        let next = match self.terms.remove(&basis) {
            Some(old) if negate => &old - f,
            Some(old) => &old + f,
            None if negate => -f,
            None => f.clone(),
        };
        if !next.is_zero() {
            self.terms.insert(basis, next);
        }
    }

    pub fn checked_add(&self, other: &Form) -> Result<Form, FormError> {
        if self.n != other.n {
            return Err(FormError::DimensionMismatch { left: self.n, right: other.n });
        }
        if let (Some(a), Some(b)) = (self.bidegree(), other.bidegree()) {
            if a != b {
                return Err(FormError::MixedBidegree(a, b));
            }
        }
        let mut out = self.clone();
        for (basis, f) in &other.terms {
            out.accumulate(*basis, f, false);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Form {
        Form { n: self.n, terms: self.terms.iter().map(|(b, f)| (*b, -f)).collect() }
    }

    /// Multiply every coefficient by the function `g`.
    pub fn scale(&self, g: &Poly) -> Form {
        let mut out = Form::zero(self.n);
        for (b, f) in &self.terms {
            out.accumulate(*b, &(f * g), false);
        }
        out
    }

    /// Graded-anticommutative product. Panics on dimension mismatch.
    pub fn wedge(&self, other: &Form) -> Form {
        assert_eq!(self.n, other.n, "ambient dimension mismatch");
        let mut out = Form::zero(self.n);
        for (ba, fa) in &self.terms {
            for (bb, fb) in &other.terms {
                if let Some((negate, basis)) = ba.wedge(bb) {
                    out.accumulate(basis, &(fa * fb), negate);
                }
            }
        }
        out
    }

    /// `a ∧ a ∧ … ∧ a` (`k` factors) by repeated squaring; `k = 0` gives `1`.
    pub fn wedge_power(&self, k: usize) -> Form {
        let mut acc = Form::scalar(Poly::one(self.n));
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.wedge(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.wedge(&base);
            }
        }
        acc
    }

    /// Nonzero coefficients in basis order.
    pub fn coefficients(&self) -> Vec<Poly> {
        self.terms.values().cloned().collect()
    }

    /// `∂` applied to a form: `Σ ∂f_{IJ} ∧ dz_I ∧ dzbar_J`.
    pub fn d_holo(&self) -> Form {
        let mut out = Form::zero(self.n);
        for (b, f) in &self.terms {
            let piece = d_holo(f).wedge(&Form::term(*b, Poly::one(self.n)));
            for (pb, pf) in piece.terms {
                out.accumulate(pb, &pf, false);
            }
        }
        out
    }

    /// `∂̄` applied to a form.
    pub fn d_antiholo(&self) -> Form {
        let mut out = Form::zero(self.n);
        for (b, f) in &self.terms {
            let piece = d_antiholo(f).wedge(&Form::term(*b, Poly::one(self.n)));
            for (pb, pf) in piece.terms {
                out.accumulate(pb, &pf, false);
            }
        }
        out
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(b, c)| format!("({c})*{b}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `∂f = Σ (∂f/∂z_i) dz_i`.
pub fn d_holo(f: &Poly) -> Form {
    let n = f.n();
    let mut out = Form::zero(n);
    for i in 1..=n {
        let c = f.partial_z(i).expect("index in range");
        out.accumulate(CoBasis::new(&[i], &[]).unwrap(), &c, false);
    }
    out
}

/// `∂̄f = Σ (∂f/∂zbar_i) dzbar_i`.
pub fn d_antiholo(f: &Poly) -> Form {
    let n = f.n();
    let mut out = Form::zero(n);
    for i in 1..=n {
        let c = f.partial_zbar(i).expect("index in range");
        out.accumulate(CoBasis::new(&[], &[i]).unwrap(), &c, false);
    }
    out
}

/// `∂∂̄f = Σ (∂²f/∂z_i∂zbar_j) dz_i ∧ dzbar_j`.
pub fn ddbar(f: &Poly) -> Form {
    d_antiholo(f).d_holo()
}

/// The matrix `H[i][j] = ∂²f/∂z_i∂zbar_j` (0-based).
pub fn complex_hessian(f: &Poly) -> Vec<Vec<Poly>> {
    let n = f.n();
    (1..=n)
        .map(|i| {
            let fi = f.partial_z(i).expect("index in range");
            (1..=n).map(|j| fi.partial_zbar(j).expect("index in range")).collect()
        })
        .collect()
}

/// The form `∂f_1 ∧ … ∧ ∂f_j ∧ ∂r ∧ ∂̄r ∧ (∂∂̄r)^(n-q-j)`.
pub fn levi_form(r: &Poly, q: usize, fs: &[Poly]) -> Result<Form, FormError> {
    let n = r.n();
    if n < 2 || q < 1 || q > n - 1 {
        return Err(FormError::QOutOfRange { q, n, max: n.saturating_sub(1) });
    }
    if fs.len() > n - q {
        return Err(FormError::TupleTooLong { len: fs.len(), max: n - q });
    }
    if let Some(f) = fs.iter().find(|f| f.n() != n) {
        return Err(FormError::DimensionMismatch { left: n, right: f.n() });
    }
    let mut acc = Form::scalar(Poly::one(n));
    for f in fs {
        acc = acc.wedge(&d_holo(f));
        if acc.is_zero() {
            return Ok(acc);
        }
    }
    let acc = acc.wedge(&d_holo(r)).wedge(&d_antiholo(r));
    if acc.is_zero() {
        return Ok(acc);
    }
    Ok(acc.wedge(&ddbar(r).wedge_power(n - q - fs.len())))
}

/// Coefficients of [`levi_form`]; for `fs = []` these are the Levi minors
/// (the Levi determinant when `q = 1`). Signs and the `(n-q-j)!` factor from
/// the wedge power are kept as computed.
pub fn levi_determinants(r: &Poly, q: usize, fs: &[Poly]) -> Result<Vec<Poly>, FormError> {
    Ok(levi_form(r, q, fs)?.coefficients())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse_expression;

    fn p(s: &str, n: usize) -> Poly {
        parse_expression(s, n).unwrap()
    }

    #[test]
    fn d_holo_examples() {
        // term-by-term: ∂(z2 + zbar2 + z1 zbar1) = zbar1 dz1 + dz2
        let f = d_holo(&p("z2 + zbar2 + z1*zbar1", 2));
        let expected = Form::dz(2, 1).scale(&p("zbar1", 2)).checked_add(&Form::dz(2, 2)).unwrap();
        assert_eq!(f, expected);
        assert!(d_holo(&p("zbar1", 1)).is_zero());
        assert_eq!(d_antiholo(&p("z1^2*zbar1^2", 1)), Form::dzbar(1, 1).scale(&p("2*z1^2*zbar1", 1)));
    }

    #[test]
    fn ddbar_examples() {
        let one_one = CoBasis::new(&[1], &[1]).unwrap();
        assert_eq!(ddbar(&p("z1*zbar1", 1)), Form::term(one_one, Poly::one(1)));
        assert_eq!(ddbar(&p("z1^2*zbar1^2", 1)), Form::term(one_one, p("4*z1*zbar1", 1)));
        assert!(ddbar(&p("z2 + zbar2", 2)).is_zero());
    }

    #[test]
    fn wedge_examples() {
        assert!(Form::dz(1, 1).wedge(&Form::dz(1, 1)).is_zero());
        assert_eq!(Form::dz(1, 1).wedge(&Form::dzbar(1, 1)), Form::dzbar(1, 1).wedge(&Form::dz(1, 1)).neg());
        let kahler =
            Form::dz(2, 1).wedge(&Form::dzbar(2, 1)).checked_add(&Form::dz(2, 2).wedge(&Form::dzbar(2, 2))).unwrap();
        let top = CoBasis::new(&[1, 2], &[1, 2]).unwrap();
        // dz1∧dzbar1∧dz2∧dzbar2 = -dz1∧dz2∧dzbar1∧dzbar2, twice
        assert_eq!(kahler.wedge_power(2), Form::term(top, p("-2", 2)));
        assert_eq!(kahler.wedge_power(0), Form::scalar(Poly::one(2)));
        assert!(kahler.wedge_power(3).is_zero());
    }

    #[test]
    fn coefficient_read_off() {
        assert!(Form::zero(2).coefficients().is_empty());
        let f = Form::dz(2, 1).scale(&p("zbar1", 2)).checked_add(&Form::dz(2, 2)).unwrap();
        assert_eq!(f.coefficients(), vec![p("zbar1", 2), Poly::one(2)]);
        let top = CoBasis::new(&[1, 2], &[1, 2]).unwrap();
        assert_eq!(Form::term(top, p("4*z1*zbar1", 2)).coefficients(), vec![p("4*z1*zbar1", 2)]);
    }

    #[test]
    fn mixed_bidegree_rejected() {
        let err = Form::dz(2, 1).checked_add(&Form::dzbar(2, 1)).unwrap_err();
        assert_eq!(err, FormError::MixedBidegree((1, 0), (0, 1)));
        assert!(Form::zero(2).checked_add(&Form::dzbar(2, 1)).is_ok());
    }

    #[test]
    fn levi_determinant_examples() {
        // hand expansion: ∂r∧∂̄r∧∂∂̄r for r = z2+zbar2+|z1|^2 leaves a2 b2 h11 = 1
        let r = p("z2 + zbar2 + z1*zbar1", 2);
        assert_eq!(levi_determinants(&r, 1, &[]).unwrap(), vec![p("-1", 2)]);
        let r4 = p("z2 + zbar2 + z1^2*zbar1^2", 2);
        assert_eq!(levi_determinants(&r4, 1, &[]).unwrap(), vec![p("-4*z1*zbar1", 2)]);
        // dz1∧∂r∧∂̄r = dz1∧dz2∧(2 z1^2 zbar1 dzbar1 + dzbar2)
        let with_z1 = levi_determinants(&r4, 1, &[Poly::z(2, 1)]).unwrap();
        assert_eq!(with_z1, vec![p("2*z1^2*zbar1", 2), Poly::one(2)]);
    }

    #[test]
    fn levi_errors() {
        let r = p("z2 + zbar2", 2);
        assert!(matches!(levi_determinants(&r, 2, &[]), Err(FormError::QOutOfRange { .. })));
        assert!(matches!(levi_determinants(&r, 0, &[]), Err(FormError::QOutOfRange { .. })));
        let err = levi_determinants(&r, 1, &[Poly::z(2, 1), Poly::z(2, 2)]).unwrap_err();
        assert_eq!(err.to_string(), "tuple too long for level q: 2 > 1");
    }

    #[test]
    fn q_two_minors_in_three_dimensions() {
        // r = 2Re z3 + |z1|^2 + |z2|^2, q = 2: ∂r∧∂̄r∧∂∂̄r has minors of the Levi form
        let r = p("z3 + zbar3 + z1*zbar1 + z2*zbar2", 3);
        let minors = levi_determinants(&r, 2, &[]).unwrap();
        assert!(minors.iter().any(Poly::is_unit));
        assert!(levi_form(&r, 2, &[]).unwrap().bidegree() == Some((2, 2)));
    }
}
