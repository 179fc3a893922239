//! Exponent vectors under graded reverse lexicographic order.
//!
//! Variable precedence is `z1 > … > zn > zbar1 > … > zbarn`, followed by any
//! auxiliary variables (used only internally, e.g. the Rabinowitsch `t`).

use std::cmp::Ordering;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    degree: u32,
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Self { degree: 0, exps: vec![0; nvars].into_boxed_slice() }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Self { degree, exps: exps.into_boxed_slice() }
    }

    /// The monomial consisting of the single variable `var`.
    pub fn var(nvars: usize, var: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[var] = 1;
        Self::from_exponents(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps: Vec<u32> = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect();
        Self { degree: self.degree + other.degree, exps: exps.into_boxed_slice() }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        let exps: Vec<u32> = other.exps.iter().zip(self.exps.iter()).map(|(a, b)| a - b).collect();
        Some(Self { degree: other.degree - self.degree, exps: exps.into_boxed_slice() })
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Self::from_exponents(self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, k: u32) -> Self {
        Self::from_exponents(self.exps.iter().map(|e| e * k).collect())
    }

    /// Same exponents with `extra` zero exponents appended.
    pub fn extended(&self, extra: usize) -> Self {
        let mut exps = self.exps.to_vec();
        exps.resize(exps.len() + extra, 0);
        Self { degree: self.degree, exps: exps.into_boxed_slice() }
    }

    /// Drops trailing variables; only valid when their exponents are zero.
    pub fn truncated(&self, nvars: usize) -> Option<Self> {
        if self.exps[nvars..].iter().any(|&e| e != 0) {
            return None;
        }
        Some(Self::from_exponents(self.exps[..nvars].to_vec()))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree.cmp(&other.degree) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // reverse lex: the last differing exponent decides, smaller wins
        for (a, b) in self.exps.iter().zip(other.exps.iter()).rev() {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return ord.reverse(),
            }
        }
        self.exps.len().cmp(&other.exps.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
