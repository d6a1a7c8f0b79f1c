//! Initial container and circle placement.
//!
//! The container starts at 15% occupation. Circles are sorted by mass and cut
//! into contiguous groups; each group gets its own Latin-hypercube sample over
//! the square inscribed in the container, so every weight class is spread
//! over the whole container.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{Point2, Vec2};
use crate::model::{Hyperparameters, IterationRecord, ProblemInstance, SwarmState};
use crate::schedule::ContainerSchedule;

pub const INITIAL_OCCUPATION: f64 = 0.15;

/// Radius at which the circles occupy exactly 15% of the container.
pub fn initial_container_radius(instance: &ProblemInstance) -> f64 {
    let sum_sq: f64 = instance.radii().iter().map(|r| r * r).sum();
    (sum_sq / INITIAL_OCCUPATION).sqrt()
}

pub fn default_group_count(n: usize) -> usize {
    (n as f64).sqrt().ceil() as usize
}

/// Index ranges of `groups` contiguous, nearly equal chunks of `n` items.
fn group_bounds(n: usize, groups: usize) -> Vec<(usize, usize)> {
    let groups = groups.clamp(1, n.max(1));
    (0..groups).map(|g| (g * n / groups, (g + 1) * n / groups)).collect()
}

/// `count` points of a Latin-hypercube sample over `[-half, half]^2`.
pub fn latin_hypercube<R: Rng + ?Sized>(count: usize, half: f64, rng: &mut R) -> Vec<Point2> {
    let width = 2.0 * half / count as f64;
    let mut xs: Vec<usize> = (0..count).collect();
    let mut ys: Vec<usize> = (0..count).collect();
    xs.shuffle(rng);
    ys.shuffle(rng);
    xs.iter()
        .zip(&ys)
        .map(|(&sx, &sy)| {
            let x = -half + (sx as f64 + rng.random::<f64>()) * width;
            let y = -half + (sy as f64 + rng.random::<f64>()) * width;
            Vec2::new(x, y)
        })
        .collect()
}

/// Mass-grouped Latin-hypercube placement inside a container of radius `container_radius`.
pub fn initial_positions(
    instance: &ProblemInstance,
    container_radius: f64,
    seed: u64,
    groups: Option<usize>,
) -> Vec<Point2> {
    let n = instance.len();
    let masses = instance.masses();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| masses[a].total_cmp(&masses[b]).then(a.cmp(&b)));

    let half = container_radius / std::f64::consts::SQRT_2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut positions = vec![Vec2::ZERO; n];
    for (lo, hi) in group_bounds(n, groups.unwrap_or_else(|| default_group_count(n))) {
        let mut members = order[lo..hi].to_vec();
        members.shuffle(&mut rng);
        let points = latin_hypercube(members.len(), half, &mut rng);
        for (idx, p) in members.into_iter().zip(points) {
            positions[idx] = p;
        }
    }
    positions
}

/// Starting swarm (at rest) and container schedule.
pub fn initial_state(instance: &ProblemInstance, hp: &Hyperparameters) -> (SwarmState, ContainerSchedule) {
    let r0 = initial_container_radius(instance);
    let positions = initial_positions(instance, r0, hp.seed, hp.init_groups);
    (SwarmState::at_rest(positions), ContainerSchedule::new(r0))
}

/// Trace row describing the initial layout (iteration 0).
pub fn initial_record(instance: &ProblemInstance, state: &SwarmState, schedule: &ContainerSchedule) -> IterationRecord {
    crate::solver::evaluate(instance, state, schedule.target_radius, 0.0).record(0, schedule.target_radius)
}
