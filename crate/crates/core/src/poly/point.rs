use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::GaussianRational;

/// A point of `C^n`. Polynomials evaluate `zbar_i` at `conj(x_i)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Point {
    coords: Vec<GaussianRational>,
}

impl Point {
    pub fn new(coords: Vec<GaussianRational>) -> Self {
        Self { coords }
    }

    pub fn origin(n: usize) -> Self {
        Self { coords: vec![GaussianRational::zero(); n] }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[GaussianRational] {
        &self.coords
    }

    /// Squared Hermitian distance `Σ |x_i - y_i|²`, exact.
    pub fn dist_sqr(&self, other: &Point) -> BigRational {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b).norm_sqr())
            .fold(BigRational::zero(), |acc, d| acc + d)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}
