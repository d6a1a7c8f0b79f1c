//! The virtual-force system: overlap repulsion, balance, container attraction,
//! and the capped resultant acting on each circle.

use crate::geometry::{center_of_gravity_unchecked, Point2, Vec2, BRANCH_EPS};
use crate::grid::{self, overlapping, PartnerLists};
use crate::model::{Hyperparameters, ProblemInstance, SwarmState};

pub type ForceVector = Vec2;

/// `v_max`-scaled unit direction from `from` toward `to`, minus the velocity.
#[inline]
fn steer(from: Point2, to: Point2, velocity: Vec2, hp: &Hyperparameters) -> ForceVector {
    let delta = to - from;
    delta / (delta.norm() + hp.epsilon) * hp.v_max - velocity
}

/// `-(p_j - p_i)/(|p_j - p_i| + eps) * v_max - v_i`, the triggered overlap term.
#[inline]
fn repel(pi: Point2, pj: Point2, vi: Vec2, hp: &Hyperparameters) -> ForceVector {
    let delta = pj - pi;
    -(delta / (delta.norm() + hp.epsilon)) * hp.v_max - vi
}

/// Repulsion of circle `i` away from circle `j`; zero unless they overlap.
pub fn overlap_force(
    i: usize,
    j: usize,
    state: &SwarmState,
    instance: &ProblemInstance,
    hp: &Hyperparameters,
) -> ForceVector {
    debug_assert_ne!(i, j);
    let (pi, pj) = (state.positions[i], state.positions[j]);
    let r = instance.radii();
    if overlapping(pi, r[i], pj, r[j]) {
        repel(pi, pj, state.velocities[i], hp)
    } else {
        Vec2::ZERO
    }
}

/// Gradient of the center-of-gravity distance with respect to circle `i`'s position.
///
/// Zero when the center of gravity is within `eps` of the origin, where the
/// norm is not differentiable and the constraint already holds.
pub fn cg_gradient(i: usize, positions: &[Point2], masses: &[f64], eps: f64) -> Vec2 {
    let cg = center_of_gravity_unchecked(positions, masses);
    let total: f64 = masses.iter().sum();
    gradient_from_cg(cg, masses[i], total, eps)
}

#[inline]
fn gradient_from_cg(cg: Point2, mass: f64, total_mass: f64, eps: f64) -> Vec2 {
    let n = cg.norm();
    if n < eps {
        Vec2::ZERO
    } else {
        cg / n * (mass / total_mass)
    }
}

pub fn cg_force(i: usize, state: &SwarmState, instance: &ProblemInstance, hp: &Hyperparameters) -> ForceVector {
    cg_gradient(i, &state.positions, instance.masses(), hp.epsilon) * -hp.alpha
}

/// Whether circle `i` lies entirely inside the container disk.
#[inline]
pub fn contained(position: Point2, radius: f64, center: Point2, container_radius: f64) -> bool {
    position.distance(center) + radius <= container_radius + BRANCH_EPS
}

/// Attraction of circle `i` toward the container center while it sticks out.
pub fn radius_force(
    i: usize,
    state: &SwarmState,
    instance: &ProblemInstance,
    container_center: Point2,
    target_radius: f64,
    hp: &Hyperparameters,
) -> ForceVector {
    let p = state.positions[i];
    if contained(p, instance.radii()[i], container_center, target_radius) {
        Vec2::ZERO
    } else {
        steer(p, container_center, state.velocities[i], hp)
    }
}

/// Sums `contributions` in order and caps the norm at `f_max`.
pub fn resultant_force(contributions: &[ForceVector], hp: &Hyperparameters) -> ForceVector {
    let mut sum = Vec2::ZERO;
    for f in contributions {
        sum += *f;
    }
    cap(sum, hp.f_max)
}

#[inline]
fn cap(sum: Vec2, f_max: f64) -> Vec2 {
    let n = sum.norm();
    if n < f_max {
        sum
    } else {
        sum / n * f_max
    }
}

/// Resultant force on every circle, all computed from the same state.
pub fn assemble_forces(
    state: &SwarmState,
    instance: &ProblemInstance,
    container_center: Point2,
    target_radius: f64,
    hp: &Hyperparameters,
) -> Vec<ForceVector> {
    let partners = grid::partners(&state.positions, instance.radii());
    assemble_forces_with(state, instance, container_center, target_radius, hp, &partners)
}

/// As [`assemble_forces`], with precomputed overlap partner lists.
///
/// Per circle the summation order is: overlaps by ascending partner index,
/// then balance, then container attraction.
pub fn assemble_forces_with(
    state: &SwarmState,
    instance: &ProblemInstance,
    container_center: Point2,
    target_radius: f64,
    hp: &Hyperparameters,
    partners: &PartnerLists,
) -> Vec<ForceVector> {
    let masses = instance.masses();
    let radii = instance.radii();
    let cg = center_of_gravity_unchecked(&state.positions, masses);
    let total_mass = instance.total_mass();

    (0..state.len())
        .map(|i| {
            let p = state.positions[i];
            let v = state.velocities[i];
            let mut sum = Vec2::ZERO;
            for &j in &partners[i] {
                sum += repel(p, state.positions[j], v, hp);
            }
            sum += gradient_from_cg(cg, masses[i], total_mass, hp.epsilon) * -hp.alpha;
            if !contained(p, radii[i], container_center, target_radius) {
                sum += steer(p, container_center, v, hp);
            }
            cap(sum, hp.f_max)
        })
        .collect()
}
