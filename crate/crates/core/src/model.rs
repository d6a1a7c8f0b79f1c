//! Problem instances, solver parameters and the swarm state.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::geometry::{Point2, Vec2};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub radius: f64,
    pub mass: f64,
}

impl Circle {
    pub const fn new(radius: f64, mass: f64) -> Self {
        Self { radius, mass }
    }

    pub fn area(&self) -> f64 {
        PI * self.radius * self.radius
    }
}

/// Checks every instance invariant and returns all violations found.
pub fn validate_instance(name: &str, circles: &[Circle]) -> std::result::Result<(), Vec<String>> {
    let mut problems = Vec::new();
    if name.is_empty() || name.chars().any(char::is_whitespace) {
        problems.push(format!("invalid name {name:?}: must be non-empty without whitespace"));
    }
    if circles.is_empty() {
        problems.push("empty instance".to_string());
    }
    for (i, c) in circles.iter().enumerate() {
        if !c.radius.is_finite() {
            problems.push(format!("circle {i}: non-finite radius"));
        } else if c.radius <= 0.0 {
            problems.push(format!("circle {i}: non-positive radius"));
        }
        if !c.mass.is_finite() {
            problems.push(format!("circle {i}: non-finite mass"));
        } else if c.mass <= 0.0 {
            problems.push(format!("circle {i}: non-positive mass"));
        }
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(problems)
    }
}

#[derive(Serialize, Deserialize)]
struct RawInstance {
    name: String,
    circles: Vec<Circle>,
}

/// A named set of weighted circles. Immutable once built.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawInstance", into = "RawInstance")]
pub struct ProblemInstance {
    name: String,
    circles: Vec<Circle>,
    radii: Vec<f64>,
    masses: Vec<f64>,
}

impl TryFrom<RawInstance> for ProblemInstance {
    type Error = Error;
    fn try_from(raw: RawInstance) -> Result<Self> {
        ProblemInstance::new(raw.name, raw.circles)
    }
}

impl From<ProblemInstance> for RawInstance {
    fn from(inst: ProblemInstance) -> Self {
        RawInstance { name: inst.name, circles: inst.circles }
    }
}

impl ProblemInstance {
    pub fn new(name: impl Into<String>, circles: Vec<Circle>) -> Result<Self> {
        let name = name.into();
        validate_instance(&name, &circles).map_err(Error::InvalidInstance)?;
        let radii = circles.iter().map(|c| c.radius).collect();
        let masses = circles.iter().map(|c| c.mass).collect();
        Ok(Self { name, circles, radii, masses })
    }

    /// Builds an instance from parallel radius and mass lists.
    pub fn from_lists(name: impl Into<String>, radii: &[f64], masses: &[f64]) -> Result<Self> {
        if radii.len() != masses.len() {
            return Err(Error::InvalidInput(format!(
                "{} radii but {} masses",
                radii.len(),
                masses.len()
            )));
        }
        let circles = radii.iter().zip(masses).map(|(&r, &m)| Circle::new(r, m)).collect();
        Self::new(name, circles)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn circles(&self) -> &[Circle] {
        &self.circles
    }

    pub fn len(&self) -> usize {
        self.circles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circles.is_empty()
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn total_mass(&self) -> f64 {
        self.masses.iter().sum()
    }

    pub fn max_radius(&self) -> f64 {
        self.radii.iter().copied().fold(0.0, f64::max)
    }

    pub fn min_radius(&self) -> f64 {
        self.radii.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn total_area(&self) -> f64 {
        self.circles.iter().map(Circle::area).sum()
    }

    /// `sqrt(sum r_i^2)`: no feasible container can be smaller.
    pub fn area_lower_bound(&self) -> f64 {
        self.radii.iter().map(|r| r * r).sum::<f64>().sqrt()
    }
}

/// Ratio of total circle area to container area.
pub fn occupation_rate(instance: &ProblemInstance, container_radius: f64) -> Result<f64> {
    if !(container_radius > 0.0) || !container_radius.is_finite() {
        return Err(Error::InvalidInput(format!(
            "container radius must be positive, got {container_radius}"
        )));
    }
    Ok(instance.total_area() / (PI * container_radius * container_radius))
}

/// Solver tunables.
///
/// Forces are velocity-like quantities, so `f_max`, `v_max`, `alpha`,
/// `s_max` and `s_min` all carry a length scale; see [`Hyperparameters::scaled`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hyperparameters {
    /// Cap on the norm of each circle's resultant force.
    pub f_max: f64,
    /// Cap on the speed norm, also the magnitude of overlap and radius forces.
    pub v_max: f64,
    /// Step size of the balance force.
    pub alpha: f64,
    pub s_max: f64,
    pub s_min: f64,
    /// Decay speed of the container step law.
    pub c: f64,
    /// Iteration budget.
    pub n_it: usize,
    pub dt: f64,
    pub epsilon: f64,
    /// Largest total pairwise overlap area still counted as non-overlapping.
    pub overlap_tol: f64,
    pub seed: u64,
    /// Number of mass groups for initial placement; `None` means `ceil(sqrt(N))`.
    #[serde(default)]
    pub init_groups: Option<usize>,
}

/// Smallest radius of the instances the default hyperparameters were tuned on.
pub const TUNING_MIN_RADIUS: f64 = 5.0;

impl Default for Hyperparameters {
    fn default() -> Self {
        Self {
            f_max: 20.0,
            v_max: 1.6,
            alpha: 10.0,
            s_max: 3.4,
            s_min: 0.04,
            c: 8.0,
            n_it: 20_000,
            dt: 1.0,
            epsilon: 1e-9,
            overlap_tol: 0.0,
            seed: 0,
            init_groups: None,
        }
    }
}

impl Hyperparameters {
    /// Defaults with the overlap tolerance set relative to the smallest circle.
    pub fn for_instance(instance: &ProblemInstance) -> Self {
        Self::default().with_overlap_tol_for(instance)
    }

    pub fn with_overlap_tol_for(mut self, instance: &ProblemInstance) -> Self {
        let r = instance.min_radius();
        self.overlap_tol = 1e-6 * PI * r * r;
        self
    }

    /// Defaults rescaled by `min_radius / TUNING_MIN_RADIUS`, for instances
    /// far from the size range the defaults were tuned on.
    pub fn rescaled_for(instance: &ProblemInstance) -> Self {
        Self::default()
            .scaled(instance.min_radius() / TUNING_MIN_RADIUS)
            .with_overlap_tol_for(instance)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_iterations(mut self, n_it: usize) -> Self {
        self.n_it = n_it;
        self
    }

    /// Rescales every length-carrying parameter by `k`.
    ///
    /// Solving an instance whose radii are multiplied by `k` with
    /// `hp.scaled(k)` reproduces the original trajectory scaled by `k`.
    pub fn scaled(mut self, k: f64) -> Self {
        self.f_max *= k;
        self.v_max *= k;
        self.alpha *= k;
        self.s_max *= k;
        self.s_min *= k;
        self.overlap_tol *= k * k;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("f_max", self.f_max),
            ("v_max", self.v_max),
            ("alpha", self.alpha),
            ("dt", self.dt),
            ("c", self.c),
            ("epsilon", self.epsilon),
            ("s_min", self.s_min),
        ];
        for (name, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidHyperparameters(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.s_max >= self.s_min) || !self.s_max.is_finite() {
            return Err(Error::InvalidHyperparameters(format!(
                "need s_min <= s_max, got {} > {}",
                self.s_min, self.s_max
            )));
        }
        if self.n_it == 0 {
            return Err(Error::InvalidHyperparameters("n_it must be at least 1".into()));
        }
        if !(self.overlap_tol >= 0.0) || !self.overlap_tol.is_finite() {
            return Err(Error::InvalidHyperparameters(format!(
                "overlap_tol must be non-negative, got {}",
                self.overlap_tol
            )));
        }
        if self.init_groups == Some(0) {
            return Err(Error::InvalidHyperparameters("init_groups must be at least 1".into()));
        }
        Ok(())
    }
}

/// Kinematic state of every circle at one timestep.
#[derive(Debug, Clone, PartialEq)]
pub struct SwarmState {
    pub positions: Vec<Point2>,
    pub velocities: Vec<Vec2>,
    pub accelerations: Vec<Vec2>,
    pub iteration: usize,
}

impl SwarmState {
    /// Circles at `positions`, at rest.
    pub fn at_rest(positions: Vec<Point2>) -> Self {
        let n = positions.len();
        Self {
            positions,
            velocities: vec![Vec2::ZERO; n],
            accelerations: vec![Vec2::ZERO; n],
            iteration: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// One row of the convergence trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub iteration: usize,
    pub target_radius: f64,
    /// Enclosing radius about the center of gravity, present only when feasible.
    pub actual_radius: Option<f64>,
    pub overlap: f64,
    pub cg_violation: f64,
    pub feasible: bool,
}

/// Best feasible layout of a run, translated so its center of gravity is the origin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BestLayout {
    pub positions: Vec<Point2>,
    pub radius: f64,
    pub iteration: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub best: Option<BestLayout>,
    pub history: Vec<IterationRecord>,
}

impl SolveResult {
    pub fn feasible(&self) -> bool {
        self.best.is_some()
    }

    pub fn best_radius(&self) -> Option<f64> {
        self.best.as_ref().map(|b| b.radius)
    }

    pub fn best_positions(&self) -> Option<&[Point2]> {
        self.best.as_ref().map(|b| b.positions.as_slice())
    }

    pub fn best_iteration(&self) -> Option<usize> {
        self.best.as_ref().map(|b| b.iteration)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn occupation_rate_examples() {
        let one = ProblemInstance::from_lists("one", &[1.0], &[1.0]).unwrap();
        assert!((occupation_rate(&one, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((occupation_rate(&one, 2.0).unwrap() - 0.25).abs() < 1e-15);
        assert!(occupation_rate(&one, 0.0).is_err());
        assert!(occupation_rate(&one, -1.0).is_err());
    }

    #[test]
    fn occupation_rate_decreases_with_radius() {
        let inst = corpus::instance("I3").unwrap();
        let rates: Vec<f64> = (1..50).map(|k| occupation_rate(&inst, 10.0 * k as f64).unwrap()).collect();
        assert!(rates.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn validate_examples() {
        let i1 = corpus::instance("I1").unwrap();
        assert!(validate_instance(i1.name(), i1.circles()).is_ok());

        let errs = validate_instance("bad", &[Circle::new(0.0, 1.0)]).unwrap_err();
        assert_eq!(errs, vec!["circle 0: non-positive radius".to_string()]);

        let errs = validate_instance("empty", &[]).unwrap_err();
        assert_eq!(errs, vec!["empty instance".to_string()]);

        let errs = validate_instance("two", &[Circle::new(-1.0, 0.0), Circle::new(1.0, f64::NAN)]).unwrap_err();
        assert_eq!(errs.len(), 3);
    }

    #[test]
    fn instance_json_rejects_invalid_circles() {
        let bad = r#"{"name":"x","circles":[{"radius":1.0,"mass":-2.0}]}"#;
        assert!(serde_json::from_str::<ProblemInstance>(bad).is_err());
        let good = r#"{"name":"x","circles":[{"radius":1.0,"mass":2.0}]}"#;
        let inst: ProblemInstance = serde_json::from_str(good).unwrap();
        assert_eq!(inst.masses(), &[2.0]);
    }

    #[test]
    fn hyperparameter_validation() {
        let i1 = corpus::instance("I1").unwrap();
        let hp = Hyperparameters::for_instance(&i1);
        hp.validate().unwrap();
        assert!((hp.overlap_tol - 1e-6 * PI * 25.0).abs() < 1e-18);

        let mut bad = hp.clone();
        bad.s_min = bad.s_max + 1.0;
        assert!(bad.validate().is_err());
        let mut bad = hp.clone();
        bad.n_it = 0;
        assert!(bad.validate().is_err());
        let mut bad = hp;
        bad.dt = 0.0;
        assert!(bad.validate().is_err());
    }
}
