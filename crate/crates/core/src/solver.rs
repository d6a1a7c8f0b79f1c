//! Main loop: forces, integration, feasibility test, container schedule,
//! best-layout bookkeeping.

use serde::{Deserialize, Serialize};

use crate::dynamics::integrate_in_place;
use crate::forces::assemble_forces_with;
use crate::geometry::{center_of_gravity_unchecked, enclosing_radius_unchecked, lens_area_unchecked, Point2, Vec2};
use crate::grid::{self, PartnerLists};
use crate::init::initial_state;
use crate::model::{BestLayout, Hyperparameters, IterationRecord, ProblemInstance, SolveResult, SwarmState};
use crate::{Error, Result};

/// Slack on the containment test of a feasible layout.
pub const CONTAINMENT_TOL: f64 = 1e-9;

/// Milestone fractions of the convergence plots: 10%, 5%, 1%, 0.5%, 0.1%.
pub const MILESTONE_FRACTIONS: [f64; 5] = [0.10, 0.05, 0.01, 0.005, 0.001];

/// Constraint measures of one layout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub overlap: f64,
    pub cg: Point2,
    /// Enclosing radius about the center of gravity.
    pub radius: f64,
    pub feasible: bool,
}

impl Evaluation {
    pub fn record(&self, iteration: usize, target_radius: f64) -> IterationRecord {
        IterationRecord {
            iteration,
            target_radius,
            actual_radius: self.feasible.then_some(self.radius),
            overlap: self.overlap,
            cg_violation: self.cg.norm(),
            feasible: self.feasible,
        }
    }
}

fn overlap_from_partners(positions: &[Point2], radii: &[f64], partners: &PartnerLists) -> f64 {
    let mut total = 0.0;
    for (i, list) in partners.iter().enumerate() {
        for &j in list.iter().filter(|&&j| j > i) {
            total += lens_area_unchecked(positions[i].distance(positions[j]), radii[i], radii[j]);
        }
    }
    total
}

fn evaluate_with(
    instance: &ProblemInstance,
    positions: &[Point2],
    target_radius: f64,
    overlap_tol: f64,
    partners: &PartnerLists,
) -> Evaluation {
    let radii = instance.radii();
    let overlap = overlap_from_partners(positions, radii, partners);
    let cg = center_of_gravity_unchecked(positions, instance.masses());
    let radius = enclosing_radius_unchecked(positions, radii, cg);
    let feasible = overlap <= overlap_tol && radius <= target_radius + CONTAINMENT_TOL;
    Evaluation { overlap, cg, radius, feasible }
}

/// Overlap, center of gravity and CG-centered enclosing radius of `state`.
pub fn evaluate(instance: &ProblemInstance, state: &SwarmState, target_radius: f64, overlap_tol: f64) -> Evaluation {
    let partners = grid::partners(&state.positions, instance.radii());
    evaluate_with(instance, &state.positions, target_radius, overlap_tol, &partners)
}

/// Non-overlapping (within `overlap_tol`) and inside `target_radius` about the
/// center of gravity. The balance constraint holds by construction because the
/// container is centered on the center of gravity.
pub fn is_feasible(state: &SwarmState, instance: &ProblemInstance, target_radius: f64, hp: &Hyperparameters) -> bool {
    evaluate(instance, state, target_radius, hp.overlap_tol).feasible
}

pub fn solve(instance: &ProblemInstance, hp: &Hyperparameters) -> Result<SolveResult> {
    solve_with_sink(instance, hp, |_| {})
}

/// Runs the solver, handing each iteration's record to `sink` as it is produced.
pub fn solve_with_sink<F>(instance: &ProblemInstance, hp: &Hyperparameters, mut sink: F) -> Result<SolveResult>
where
    F: FnMut(&IterationRecord),
{
    hp.validate()?;
    let (mut state, mut schedule) = initial_state(instance, hp);
    let container_center = Vec2::ZERO;
    let radii = instance.radii();
    let masses = instance.masses();

    let mut partners = grid::partners(&state.positions, radii);
    let mut best: Option<BestLayout> = None;
    let mut history = Vec::with_capacity(hp.n_it);

    for t in 1..=hp.n_it {
        let target = schedule.target_radius;
        let forces = assemble_forces_with(&state, instance, container_center, target, hp, &partners);
        integrate_in_place(&mut state, &forces, masses, hp)?;
        if state.positions.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidGeometry(format!("non-finite position at iteration {t}")));
        }

        partners = grid::partners(&state.positions, radii);
        let eval = evaluate_with(instance, &state.positions, target, hp.overlap_tol, &partners);
        if eval.feasible {
            if best.as_ref().is_none_or(|b| eval.radius < b.radius) {
                best = Some(BestLayout {
                    positions: state.positions.iter().map(|p| *p - eval.cg).collect(),
                    radius: eval.radius,
                    iteration: t,
                });
            }
            schedule.on_feasible(eval.radius, t, hp);
        } else {
            schedule.on_infeasible(hp);
        }
        let record = eval.record(t, target);
        sink(&record);
        history.push(record);
    }

    Ok(SolveResult { best, history })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Milestone {
    pub threshold: f64,
    pub iteration: usize,
}

/// Running minimum of the feasible radii in `history`.
pub fn best_so_far(history: &[IterationRecord]) -> Vec<Option<f64>> {
    let mut best: Option<f64> = None;
    history
        .iter()
        .map(|rec| {
            if let Some(r) = rec.actual_radius {
                best = Some(best.map_or(r, |b: f64| b.min(r)));
            }
            best
        })
        .collect()
}

/// First iteration at which the best-so-far radius is within `(1 + p)` of
/// `final_radius`, for each threshold `p`.
pub fn convergence_milestones(
    history: &[IterationRecord],
    final_radius: f64,
    thresholds: &[f64],
) -> Result<Vec<Milestone>> {
    let running = best_so_far(history);
    if running.last().copied().flatten().is_none() {
        return Err(Error::NoMilestones);
    }
    thresholds
        .iter()
        .map(|&p| {
            let bound = (1.0 + p) * final_radius;
            history
                .iter()
                .zip(&running)
                .find(|(_, b)| b.is_some_and(|b| b <= bound))
                .map(|(rec, _)| Milestone { threshold: p, iteration: rec.iteration })
                .ok_or_else(|| {
                    Error::InvalidInput(format!("history never reaches {:.4} x {final_radius}", 1.0 + p))
                })
        })
        .collect()
}
