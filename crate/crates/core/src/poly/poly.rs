use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{GaussianRational, Monomial, Point, PolyError};

/// A polynomial in `z1..zn, zbar1..zbarn` with Gaussian-rational coefficients.
///
/// `z` and `zbar` are formally independent indeterminates. `aux` counts extra
/// trailing variables used by internal constructions (the Rabinowitsch `t`);
/// user-facing polynomials always have `aux == 0`.
///
/// Terms are kept in a map ordered by degrevlex with no zero coefficients, so
/// structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    n: usize,
    aux: usize,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Self { n, aux: 0, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, GaussianRational::one())
    }

    pub fn constant(n: usize, c: GaussianRational) -> Self {
        Self::monomial(n, Monomial::one(2 * n), c)
    }

    pub fn monomial(n: usize, m: Monomial, c: GaussianRational) -> Self {
        let aux = m.nvars() - 2 * n;
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { n, aux, terms }
    }

    /// The variable `z_i`, `1 <= i <= n`. Panics when `i` is out of range.
    pub fn z(n: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i), "variable index {i} out of range 1..={n}");
        Self::monomial(n, Monomial::var(2 * n, i - 1), GaussianRational::one())
    }

    /// The variable `zbar_i`, `1 <= i <= n`. Panics when `i` is out of range.
    pub fn zbar(n: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i), "variable index {i} out of range 1..={n}");
        Self::monomial(n, Monomial::var(2 * n, n + i - 1), GaussianRational::one())
    }

    /// Build from `(monomial, coefficient)` pairs, summing duplicates.
    pub fn from_terms<I>(n: usize, aux: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, GaussianRational)>,
    {
        let mut p = Self { n, aux, terms: BTreeMap::new() };
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), 2 * n + aux);
            p.add_term(m, &c);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn aux(&self) -> usize {
        self.aux
    }

    pub fn nvars(&self) -> usize {
        2 * self.n + self.aux
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Nonzero constant, i.e. a unit of the polynomial ring.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussianRational)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &GaussianRational)> {
        self.terms.last_key_value()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.last_key_value().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&GaussianRational> {
        self.terms.last_key_value().map(|(_, c)| c)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    fn check_compatible(&self, other: &Self) -> Result<(), PolyError> {
        if self.n != other.n || self.aux != other.aux {
            return Err(PolyError::DimensionMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Remove and return the leading term.
    pub fn pop_leading_term(&mut self) -> Option<(Monomial, GaussianRational)> {
        self.terms.pop_last()
    }

    /// Add a single term `c · m` in place.
    pub fn push_term(&mut self, m: Monomial, c: GaussianRational) {
        debug_assert_eq!(m.nvars(), self.nvars());
        self.add_term(m, &c);
    }

    /// `self += c · m · other`, in place. The reduction hot path.
    pub fn add_scaled(&mut self, c: &GaussianRational, m: &Monomial, other: &Poly) {
        debug_assert_eq!(self.nvars(), other.nvars());
        if c.is_zero() {
            return;
        }
        for (om, oc) in &other.terms {
            self.add_term(m.mul(om), &(c * oc));
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        let mut out = Self { n: self.n, aux: self.aux, terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            out.add_scaled(c, m, other);
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self { n: self.n, aux: self.aux, terms: BTreeMap::new() };
        acc.add_term(Monomial::one(self.nvars()), &GaussianRational::one());
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self { n: self.n, aux: self.aux, terms: BTreeMap::new() };
        }
        Self { n: self.n, aux: self.aux, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn scale_rational(&self, k: &BigRational) -> Self {
        self.scale(&GaussianRational::from_real(k.clone()))
    }

    /// Divide by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) if !lc.is_one() => self.scale(&lc.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    /// Swap `z_i <-> zbar_i` exponents and conjugate every coefficient.
    pub fn conjugate(&self) -> Self {
        let n = self.n;
        let terms = self.terms.iter().map(|(m, c)| {
            let e = m.exponents();
            let mut swapped = Vec::with_capacity(e.len());
            swapped.extend_from_slice(&e[n..2 * n]);
            swapped.extend_from_slice(&e[..n]);
            swapped.extend_from_slice(&e[2 * n..]);
            (Monomial::from_exponents(swapped), c.conj())
        });
        Self { n, aux: self.aux, terms: terms.collect() }
    }

    /// Real-valued as a function of `z`: `conjugate(p) == p`.
    pub fn is_real(&self) -> bool {
        self.conjugate() == *self
    }

    /// `(p + conj p) / 2`.
    pub fn real_part(&self) -> Self {
        (self + &self.conjugate()).scale(&GaussianRational::from_frac(1, 2))
    }

    /// `(p - conj p) / (2i)`.
    pub fn imag_part(&self) -> Self {
        let half_over_i = GaussianRational::new(BigRational::zero(), BigRational::new((-1).into(), 2.into()));
        (self - &self.conjugate()).scale(&half_over_i)
    }

    fn derivative(&self, var: usize) -> Self {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponents()[var];
            if e == 0 {
                return None;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] -= 1;
            Some((Monomial::from_exponents(exps), c * &GaussianRational::from_int(e as i64)))
        });
        Self { n: self.n, aux: self.aux, terms: terms.collect() }
    }

    fn check_index(&self, i: usize) -> Result<(), PolyError> {
        if (1..=self.n).contains(&i) {
            Ok(())
        } else {
            Err(PolyError::IndexOutOfRange { index: i, n: self.n })
        }
    }

    /// `∂p/∂z_i`, treating all `2n` indeterminates as independent.
    pub fn partial_z(&self, i: usize) -> Result<Self, PolyError> {
        self.check_index(i)?;
        Ok(self.derivative(i - 1))
    }

    /// `∂p/∂zbar_i`.
    pub fn partial_zbar(&self, i: usize) -> Result<Self, PolyError> {
        self.check_index(i)?;
        Ok(self.derivative(self.n + i - 1))
    }

    /// Substitute `z_i -> x_i`, `zbar_i -> conj(x_i)`.
    pub fn evaluate(&self, x: &Point) -> Result<GaussianRational, PolyError> {
        if x.dim() != self.n || self.aux != 0 {
            return Err(PolyError::DimensionMismatch { left: self.n, right: x.dim() });
        }
        let n = self.n;
        let values: Vec<GaussianRational> =
            x.coords().iter().cloned().chain(x.coords().iter().map(GaussianRational::conj)).collect();
        // cache powers per variable
        let mut powers: Vec<Vec<GaussianRational>> = vec![vec![GaussianRational::one()]; 2 * n];
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[v];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap() * &values[v];
                    cache.push(next);
                }
                t *= &cache[e as usize];
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Embed into the ring with `extra` more auxiliary variables.
    pub fn with_aux(&self, extra: usize) -> Self {
        Self {
            n: self.n,
            aux: self.aux + extra,
            terms: self.terms.iter().map(|(m, c)| (m.extended(extra), c.clone())).collect(),
        }
    }

    /// Project back to the ring without auxiliary variables, if `p` does
    /// not involve them.
    pub fn without_aux(&self) -> Option<Self> {
        let nv = 2 * self.n;
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.truncated(nv)?, c.clone());
        }
        Some(Self { n: self.n, aux: 0, terms })
    }

    /// Substitute `z_k -> base + s`, `zbar_k -> conj(base) + s` for a real
    /// parameter `s`, every other variable by its coordinate in `at`.
    /// Returns the coefficients of the resulting univariate polynomial in `s`,
    /// lowest degree first.
    pub fn restrict_to_real_line(&self, at: &Point, k: usize) -> Result<Vec<GaussianRational>, PolyError> {
        self.check_index(k)?;
        if at.dim() != self.n || self.aux != 0 {
            return Err(PolyError::DimensionMismatch { left: self.n, right: at.dim() });
        }
        let n = self.n;
        let xs = at.coords();
        let mut out: Vec<GaussianRational> = Vec::new();
        let a = &xs[k - 1];
        let abar = a.conj();
        for (m, c) in &self.terms {
            let e = m.exponents();
            let mut t = c.clone();
            for v in 0..n {
                if v == k - 1 {
                    continue;
                }
                t *= &xs[v].pow(e[v]);
                t *= &xs[v].conj().pow(e[n + v]);
            }
            // (a + s)^p (abar + s)^q expanded in s
            let mut uni = vec![t];
            for (shift, times) in [(a, e[k - 1]), (&abar, e[n + k - 1])] {
                for _ in 0..times {
                    let mut next = vec![GaussianRational::zero(); uni.len() + 1];
                    for (d, u) in uni.iter().enumerate() {
                        next[d] += &(u * shift);
                        next[d + 1] += u;
                    }
                    uni = next;
                }
            }
            if out.len() < uni.len() {
                out.resize(uni.len(), GaussianRational::zero());
            }
            for (d, u) in uni.iter().enumerate() {
                out[d] += u;
            }
        }
        while out.last().is_some_and(Zero::is_zero) {
            out.pop();
        }
        Ok(out)
    }

    pub fn variable_name(n: usize, var: usize) -> String {
        if var < n {
            format!("z{}", var + 1)
        } else if var < 2 * n {
            format!("zbar{}", var - n + 1)
        } else {
            format!("t{}", var - 2 * n + 1)
        }
    }

    fn fmt_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| {
                let name = Self::variable_name(self.n, v);
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        parts.join("*")
    }
}

impl fmt::Display for Poly {
    /// Canonical text: terms in descending degrevlex order, real coefficients
    /// bare, mixed complex coefficients parenthesised, e.g.
    /// `z1^2*zbar1^2 + z2 + zbar2` or `(1/2-i)*z1 - 3*i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            let mono = self.fmt_monomial(m);
            let mixed = !c.re().is_zero() && !c.im().is_zero();
            // sign is pulled out for pure real/imaginary coefficients
            let negative =
                if c.im().is_zero() { c.re() < &BigRational::zero() } else { !mixed && c.im() < &BigRational::zero() };
            let mag = if negative { -c } else { c.clone() };
            let ctext = if mixed { format!("({mag})") } else { mag.to_string() };
            let body = if m.is_one() {
                ctext
            } else if mag.is_one() {
                mono
            } else {
                format!("{ctext}*{mono}")
            };
            match (k, negative) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    /// Panics on dimension mismatch; see [`Poly::checked_add`].
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("ambient dimension mismatch")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("ambient dimension mismatch")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("ambient dimension mismatch")
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { n: self.n, aux: self.aux, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
