use num_rational::BigRational;
use num_traits::Zero;

use super::driver::KohnTrace;
use super::spec::{KohnError, ProblemSpec};
use crate::ideal::Ideal;
use crate::poly::{GaussianRational, Point, Poly};

pub const PERSISTENCE_CAVEAT: &str = "Quasi-flasqueness and coherence of the multiplier sheaves are not \
reproducible computationally; this check only samples finitely many rational surface points near the \
base point and compares generator evaluation with an algebraic stalk test.";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleVerdict {
    pub point: Point,
    /// `contains_unit_at` for each step, in order.
    pub unit_by_step: Vec<bool>,
    /// The least step with a unit at this point, if any.
    pub first_unit_step: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietyReport {
    pub samples: Vec<SampleVerdict>,
    /// The least step by which every sample point sees a unit.
    pub finite_type_step: Option<usize>,
}

fn unit_verdicts(trace: &KohnTrace, x: &Point) -> SampleVerdict {
    let unit_by_step: Vec<bool> = trace.steps.iter().map(|s| s.ideal.contains_unit_at(x)).collect();
    let first_unit_step = unit_by_step.iter().position(|&u| u).map(|i| trace.steps[i].k);
    SampleVerdict { point: x.clone(), unit_by_step, first_unit_step }
}

/// Unit verdicts at every sample point of the trace's problem.
pub fn variety_sample(trace: &KohnTrace) -> Result<VarietyReport, KohnError> {
    trace.spec.validate_samples()?;
    let samples: Vec<SampleVerdict> = trace.spec.sample_points.iter().map(|x| unit_verdicts(trace, x)).collect();
    let finite_type_step = if samples.is_empty() {
        None
    } else {
        samples.iter().map(|s| s.first_unit_step).collect::<Option<Vec<_>>>().and_then(|v| v.into_iter().max())
    };
    Ok(VarietyReport { samples, finite_type_step })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PersistenceStep {
    pub k: usize,
    pub unit_at_base: bool,
    /// Generator evaluation at each checked point.
    pub unit_at_points: Vec<bool>,
    /// Evaluation and the stalk test `1 ∈ I + m_x` agree at every point.
    pub agree: bool,
    /// A unit at the base point is still a unit at every checked point.
    pub persists: bool,
}

impl PersistenceStep {
    pub fn ok(&self) -> bool {
        self.agree && self.persists
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PersistenceReport {
    pub radius: BigRational,
    pub points: Vec<Point>,
    pub steps: Vec<PersistenceStep>,
    pub caveat: &'static str,
}

impl PersistenceReport {
    pub fn ok(&self) -> bool {
        self.steps.iter().all(PersistenceStep::ok)
    }
}

/// `1 ∈ I + (z_i - x_i, zbar_i - conj(x_i))`.
fn unit_in_stalk(ideal: &Ideal, x: &Point) -> bool {
    let n = ideal.n();
    let mut gens = ideal.generators().to_vec();
    for (i, c) in x.coords().iter().enumerate() {
        gens.push(&Poly::z(n, i + 1) - &Poly::constant(n, c.clone()));
        gens.push(&Poly::zbar(n, i + 1) - &Poly::constant(n, c.conj()));
    }
    Ideal::new(n, gens).is_unit()
}

/// Rational points of `{r = 0}` near the base point: every other coordinate
/// is shifted by `{-h, 0, h}` in its real and imaginary parts, the imaginary
/// part of one solving coordinate likewise, and the real part of that
/// coordinate is solved for where `r` is affine along it. Points farther
/// than `radius` from the base point are dropped.
pub fn surface_grid(spec: &ProblemSpec, radius: &BigRational) -> Vec<Point> {
    let n = spec.n;
    let bp = &spec.base_point;
    let h = radius / BigRational::from_integer(2.into());
    let offsets = [-h.clone(), BigRational::zero(), h];
    let Some(k) = (1..=n).rev().find(|&k| solving_slope(&spec.r, bp, k).is_some()) else {
        return Vec::new();
    };
    let radius_sqr = radius * radius;
    let mut out: Vec<Point> = Vec::new();
    // mixed-radix counter over 2(n - 1) + 1 offset slots
    let slots = 2 * (n - 1) + 1;
    let total = 3usize.pow(slots as u32);
    for code in 0..total {
        let mut digits = code;
        let mut shift = || {
            let d = digits % 3;
            digits /= 3;
            offsets[d].clone()
        };
        let mut coords = bp.coords().to_vec();
        for (v, c) in coords.iter_mut().enumerate() {
            if v + 1 != k {
                let (re, im) = (shift(), shift());
                *c = &*c + &GaussianRational::new(re, im);
            }
        }
        let im = shift();
        coords[k - 1] = &coords[k - 1] + &GaussianRational::new(BigRational::zero(), im);
        let probe = Point::new(coords.clone());
        let Some(s) = solving_slope(&spec.r, &probe, k) else {
            continue;
        };
        coords[k - 1] = &coords[k - 1] + &GaussianRational::from_real(s);
        let x = Point::new(coords);
        if x.dist_sqr(bp) <= radius_sqr && spec.vanishes_at(&x) && !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

/// The real shift `s` along `Re z_k` putting `at` on `{r = 0}`, when `r` is
/// affine with nonzero slope along that line.
fn solving_slope(r: &Poly, at: &Point, k: usize) -> Option<BigRational> {
    let line = r.restrict_to_real_line(at, k).ok()?;
    match line.as_slice() {
        [] => None,
        [c] if c.is_zero() => Some(BigRational::zero()),
        [_] => None,
        [c0, c1] if c0.is_real() && c1.is_real() => Some(-(c0.re() / c1.re())),
        _ => None,
    }
}

/// For every step, compare the trace's generator verdicts at sampled
/// surface points within `radius` against the stalk test, and check that a
/// unit at the base point persists.
pub fn persistence_check(trace: &KohnTrace, radius: &BigRational) -> PersistenceReport {
    let spec = &trace.spec;
    let radius_sqr = radius * radius;
    let mut points = surface_grid(spec, radius);
    for x in &spec.sample_points {
        if x.dist_sqr(&spec.base_point) <= radius_sqr && spec.vanishes_at(x) && !points.contains(x) {
            points.push(x.clone());
        }
    }
    let steps = trace
        .steps
        .iter()
        .map(|s| {
            let unit_at_points: Vec<bool> = points.iter().map(|x| s.ideal.contains_unit_at(x)).collect();
            let agree = points.iter().zip(&unit_at_points).all(|(x, &u)| unit_in_stalk(&s.ideal, x) == u);
            let persists = !s.unit_at_base || unit_at_points.iter().all(|&u| u);
            PersistenceStep { k: s.k, unit_at_base: s.unit_at_base, unit_at_points, agree, persists }
        })
        .collect();
    PersistenceReport { radius: radius.clone(), points, steps, caveat: PERSISTENCE_CAVEAT }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::{parse_complex, parse_expression};
    use crate::kohn::run;

    fn pt(coords: &[&str]) -> Point {
        Point::new(coords.iter().map(|c| parse_complex(c).unwrap()).collect())
    }

    fn tenth() -> BigRational {
        BigRational::new(1.into(), 10.into())
    }

    #[test]
    fn strictly_pseudoconvex_samples() {
        let spec = ProblemSpec::new(1, parse_expression("2*Re(z2) + abs2(z1)", 2).unwrap())
            .with_samples(vec![pt(&["1", "-1/2"]), pt(&["i", "-1/2 + 3*i"])]);
        let trace = run(&spec).unwrap();
        let report = variety_sample(&trace).unwrap();
        assert_eq!(report.finite_type_step, Some(1));
        assert!(persistence_check(&trace, &tenth()).ok());
    }

    #[test]
    fn degenerate_model_samples() {
        let spec = ProblemSpec::new(1, parse_expression("2*Re(z2) + abs2(z1)^2", 2).unwrap())
            .with_samples(vec![pt(&["1", "-1/2"]), pt(&["0", "0"])]);
        let trace = run(&spec).unwrap();
        let report = variety_sample(&trace).unwrap();
        assert_eq!(report.samples[0].first_unit_step, Some(1));
        assert_eq!(report.samples[1].unit_by_step, vec![false, true]);
        assert_eq!(report.finite_type_step, Some(2));
    }

    #[test]
    fn off_surface_sample_is_rejected() {
        let spec = ProblemSpec::new(1, parse_expression("2*Re(z2)", 2).unwrap());
        let mut trace = run(&spec).unwrap();
        trace.spec.sample_points = vec![pt(&["0", "1"])];
        assert!(matches!(variety_sample(&trace), Err(KohnError::SampleOffSurface { index: 0, .. })));
    }

    #[test]
    fn levi_flat_has_no_nearby_units() {
        let trace = run(&ProblemSpec::new(1, parse_expression("2*Re(z2)", 2).unwrap())).unwrap();
        let report = persistence_check(&trace, &tenth());
        assert!(!report.points.is_empty());
        assert!(report.ok());
        assert!(report.steps.iter().all(|s| s.unit_at_points.iter().all(|&u| !u)));
    }

    #[test]
    fn unit_persists_off_origin() {
        let spec = ProblemSpec::new(1, parse_expression("2*Re(z2) + abs2(z1)^2", 2).unwrap())
            .with_base_point(pt(&["1", "-1/2"]));
        let trace = run(&spec).unwrap();
        assert_eq!(trace.status, crate::kohn::KohnStatus::Terminated(1));
        let report = persistence_check(&trace, &tenth());
        assert!(report.points.len() > 5);
        assert!(report.ok());
    }

    #[test]
    fn grid_points_lie_on_surface() {
        let spec = ProblemSpec::new(1, parse_expression("2*Re(z2) + abs2(z1)^2", 2).unwrap());
        let grid = surface_grid(&spec, &tenth());
        assert!(grid.iter().all(|x| spec.vanishes_at(x)));
        assert!(grid.iter().all(|x| x.dist_sqr(&spec.base_point) <= &tenth() * &tenth()));
    }
}
