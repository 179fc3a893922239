use std::fmt;
use std::sync::OnceLock;

use num_traits::Zero;

use super::groebner::{groebner_basis, groebner_basis_bounded, normal_form, normal_form_bounded};
use crate::poly::{Point, Poly};

/// A polynomial ideal given by generators, with a lazily computed reduced
/// Gröbner basis.
///
/// Once built an `Ideal` is immutable; the cache is filled at most once and
/// the value is safe to share across threads.
#[derive(Clone)]
pub struct Ideal {
    n: usize,
    generators: Vec<Poly>,
    basis: OnceLock<Vec<Poly>>,
}

impl Ideal {
    /// Zero generators are dropped and duplicates removed, keeping first
    /// occurrences in order.
    pub fn new(n: usize, gens: impl IntoIterator<Item = Poly>) -> Self {
        let mut generators: Vec<Poly> = Vec::new();
        for g in gens {
            assert_eq!(g.n(), n, "ambient dimension mismatch");
            if !g.is_zero() && !generators.contains(&g) {
                generators.push(g);
            }
        }
        Self { n, generators, basis: OnceLock::new() }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(n, [])
    }

    pub fn unit(n: usize) -> Self {
        Self::new(n, [Poly::one(n)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    /// Reduced, monic Gröbner basis sorted by ascending leading monomial.
    pub fn basis(&self) -> &[Poly] {
        self.basis.get_or_init(|| groebner_basis(&self.generators))
    }

    /// The basis if it is cached or computable within `max_work` (see
    /// [`groebner_basis_bounded`]); a failed attempt leaves the cache empty.
    pub fn try_basis(&self, max_work: usize) -> Option<&[Poly]> {
        if let Some(b) = self.basis.get() {
            return Some(b);
        }
        let b = groebner_basis_bounded(&self.generators, max_work)?;
        Some(self.basis.get_or_init(|| b))
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.basis().first().is_some_and(Poly::is_unit)
    }

    pub fn normal_form(&self, p: &Poly) -> Poly {
        normal_form(p, self.basis())
    }

    /// Exact ideal membership.
    pub fn contains(&self, p: &Poly) -> bool {
        assert_eq!(p.n(), self.n, "ambient dimension mismatch");
        p.is_zero() || self.normal_form(p).is_zero()
    }

    /// Membership decided within `max_work` (see [`groebner_basis_bounded`]),
    /// or `None` when the basis or the normal form runs over.
    pub fn try_contains(&self, p: &Poly, max_work: usize) -> Option<bool> {
        assert_eq!(p.n(), self.n, "ambient dimension mismatch");
        if p.is_zero() {
            return Some(true);
        }
        let basis = self.try_basis(max_work)?;
        let mut work = 0;
        normal_form_bounded(p, basis, &mut work, max_work).map(|r| r.is_zero())
    }

    /// `self ⊆ other`.
    pub fn is_subideal(&self, other: &Ideal) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    pub fn ideal_equal(&self, other: &Ideal) -> bool {
        self.n == other.n && self.basis() == other.basis()
    }

    /// Whether the germ of the ideal at `x` contains a unit, i.e. some
    /// generator does not vanish at `x`.
    pub fn contains_unit_at(&self, x: &Point) -> bool {
        self.generators.iter().any(|g| !g.evaluate(x).expect("point dimension").is_zero())
    }

    /// The ideal generated by `self` and `extra`.
    pub fn extended(&self, extra: impl IntoIterator<Item = Poly>) -> Ideal {
        Ideal::new(self.n, self.generators.iter().cloned().chain(extra))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ideal").field("n", &self.n).field("generators", &self.generators).finish()
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// The ideal generated by `gens`, with its Gröbner basis computed eagerly.
pub fn groebner(n: usize, gens: impl IntoIterator<Item = Poly>) -> Ideal {
    let ideal = Ideal::new(n, gens);
    ideal.basis();
    ideal
}
