use num_traits::Zero;

use crate::forms::d_holo;
use crate::ideal::{ClosureCaps, RadicalMode};
use crate::poly::{Point, Poly};

pub const DEFAULT_MAX_STEPS: usize = 10;
pub const DEFAULT_TUPLE_CAP: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KohnError {
    #[error("q out of range: q = {q} but must satisfy 1 <= q <= n - 1 = {}", n.saturating_sub(1))]
    QOutOfRange { q: usize, n: usize },
    #[error("defining function is not real-valued")]
    NotReal,
    #[error("{what} has dimension {got}, expected {n}")]
    Dimension { what: String, got: usize, n: usize },
    #[error("r does not vanish at the base point {0}")]
    BasePointOffSurface(String),
    #[error("dr vanishes at the base point {0}")]
    SingularBasePoint(String),
    #[error("r does not vanish at sample point {index} {point}")]
    SampleOffSurface { index: usize, point: String },
    #[error("step {step} exceeded the Gröbner work budget {budget}")]
    GroebnerBudget { step: usize, budget: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KohnCaps {
    pub closure: ClosureCaps,
    pub max_steps: usize,
    /// Largest number of tuples enumerated per step.
    pub tuple_cap: usize,
}

impl Default for KohnCaps {
    fn default() -> Self {
        Self { closure: ClosureCaps::default(), max_steps: DEFAULT_MAX_STEPS, tuple_cap: DEFAULT_TUPLE_CAP }
    }
}

/// A hypersurface `{r = 0}`, the level `q` and the point under study.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemSpec {
    pub n: usize,
    pub q: usize,
    pub r: Poly,
    pub base_point: Point,
    pub sample_points: Vec<Point>,
    pub caps: KohnCaps,
    pub radical_mode: RadicalMode,
}

impl ProblemSpec {
    /// Base point at the origin, no samples, default caps.
    pub fn new(q: usize, r: Poly) -> Self {
        let n = r.n();
        Self {
            n,
            q,
            r,
            base_point: Point::origin(n),
            sample_points: Vec::new(),
            caps: KohnCaps::default(),
            radical_mode: RadicalMode::Full,
        }
    }

    pub fn with_base_point(mut self, x: Point) -> Self {
        self.base_point = x;
        self
    }

    pub fn with_samples(mut self, xs: Vec<Point>) -> Self {
        self.sample_points = xs;
        self
    }

    pub fn with_caps(mut self, caps: KohnCaps) -> Self {
        self.caps = caps;
        self
    }

    pub fn with_mode(mut self, mode: RadicalMode) -> Self {
        self.radical_mode = mode;
        self
    }

    pub fn validate(&self) -> Result<(), KohnError> {
        let n = self.n;
        if self.q < 1 || self.q + 1 > n {
            return Err(KohnError::QOutOfRange { q: self.q, n });
        }
        if self.r.n() != n || self.r.aux() != 0 {
            return Err(KohnError::Dimension { what: "r".into(), got: self.r.n(), n });
        }
        if !self.r.is_real() {
            return Err(KohnError::NotReal);
        }
        self.check_point("base point", &self.base_point)?;
        if !self.vanishes_at(&self.base_point) {
            return Err(KohnError::BasePointOffSurface(self.base_point.to_string()));
        }
        let dr = d_holo(&self.r);
        let singular = dr.terms().all(|(_, c)| c.evaluate(&self.base_point).expect("checked").is_zero());
        if singular {
            return Err(KohnError::SingularBasePoint(self.base_point.to_string()));
        }
        self.validate_samples()
    }

    pub(crate) fn validate_samples(&self) -> Result<(), KohnError> {
        for (index, x) in self.sample_points.iter().enumerate() {
            self.check_point(&format!("sample point {index}"), x)?;
            if !self.vanishes_at(x) {
                return Err(KohnError::SampleOffSurface { index, point: x.to_string() });
            }
        }
        Ok(())
    }

    fn check_point(&self, what: &str, x: &Point) -> Result<(), KohnError> {
        if x.dim() != self.n {
            return Err(KohnError::Dimension { what: what.into(), got: x.dim(), n: self.n });
        }
        Ok(())
    }

    pub fn vanishes_at(&self, x: &Point) -> bool {
        self.r.evaluate(x).expect("dimension checked").is_zero()
    }
}
