//! Explicit swarm update: acceleration from force, velocity (clamped to
//! `v_max`), then position from the new velocity.

use crate::forces::ForceVector;
use crate::model::{Hyperparameters, SwarmState};
use crate::{Error, Result};

/// Returns the state one timestep later.
pub fn integrate_step(
    state: &SwarmState,
    forces: &[ForceVector],
    masses: &[f64],
    hp: &Hyperparameters,
) -> Result<SwarmState> {
    let mut next = state.clone();
    integrate_in_place(&mut next, forces, masses, hp)?;
    Ok(next)
}

pub fn integrate_in_place(
    state: &mut SwarmState,
    forces: &[ForceVector],
    masses: &[f64],
    hp: &Hyperparameters,
) -> Result<()> {
    let n = state.len();
    if forces.len() != n || masses.len() != n {
        return Err(Error::InvalidInput(format!(
            "state has {n} circles, got {} forces and {} masses",
            forces.len(),
            masses.len()
        )));
    }
    if let Some(m) = masses.iter().find(|m| !(**m > 0.0)) {
        return Err(Error::InvalidInput(format!("mass must be positive, got {m}")));
    }
    let dt = hp.dt;
    for i in 0..n {
        let a = forces[i] / masses[i];
        let v = (state.velocities[i] + a * dt).clamp_norm(hp.v_max);
        state.accelerations[i] = a;
        state.velocities[i] = v;
        state.positions[i] += v * dt;
    }
    state.iteration += 1;
    Ok(())
}
