//! Container target-radius law with the stagnation fallback.
//!
//! After every feasible iteration the next target is the actual radius minus
//! a step that decays exponentially from `s_max` toward `s_min` over the run.
//! A long streak of infeasible iterations (10% of the budget) switches the
//! step to `s_min` until feasibility returns.

use serde::{Deserialize, Serialize};

use crate::model::Hyperparameters;

/// Fraction of the iteration budget without a feasible layout that counts as stagnation.
pub const STAGNATION_FRACTION: f64 = 0.10;

/// `s_min + (s_max - s_min) * exp(t * ln(1 / (1 + c / n_it)))`.
pub fn step_law(t: usize, hp: &Hyperparameters) -> f64 {
    let decay = (1.0 / (1.0 + hp.c / hp.n_it as f64)).ln();
    hp.s_min + (hp.s_max - hp.s_min) * (t as f64 * decay).exp()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContainerSchedule {
    pub target_radius: f64,
    /// Radius of the most recent feasible layout, if any.
    pub last_feasible_radius: Option<f64>,
    pub stagnation_counter: usize,
    pub stagnation_active: bool,
}

impl ContainerSchedule {
    pub fn new(initial_radius: f64) -> Self {
        Self {
            target_radius: initial_radius,
            last_feasible_radius: None,
            stagnation_counter: 0,
            stagnation_active: false,
        }
    }

    /// Radius step at iteration `t`; `s_min` while stagnating.
    pub fn step_size(&self, t: usize, hp: &Hyperparameters) -> f64 {
        if self.stagnation_active {
            hp.s_min
        } else {
            step_law(t, hp)
        }
    }

    fn issue_target(&mut self, from: f64, step: f64, hp: &Hyperparameters) {
        let target = from - step;
        self.target_radius = if target > 0.0 { target } else { hp.s_min };
    }

    pub fn on_feasible(&mut self, actual_radius: f64, t: usize, hp: &Hyperparameters) {
        let step = self.step_size(t, hp);
        self.last_feasible_radius = Some(actual_radius);
        self.issue_target(actual_radius, step, hp);
        self.stagnation_counter = 0;
        self.stagnation_active = false;
    }

    /// Counts one more infeasible iteration.
    ///
    /// When the streak first reaches the stagnation window the pending target
    /// is re-issued from the last feasible radius with the minimum step.
    pub fn on_infeasible(&mut self, hp: &Hyperparameters) {
        self.stagnation_counter += 1;
        let window = STAGNATION_FRACTION * hp.n_it as f64;
        if !self.stagnation_active && self.stagnation_counter as f64 >= window {
            self.stagnation_active = true;
            if let Some(last) = self.last_feasible_radius {
                self.issue_target(last, hp.s_min, hp);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn short_run(c: f64) -> Hyperparameters {
        Hyperparameters { n_it: 1000, s_max: 10.0, s_min: 0.1, c, ..Hyperparameters::default() }
    }

    #[test]
    fn starts_at_s_max() {
        let hp = Hyperparameters::default();
        assert_eq!(step_law(0, &hp), hp.s_max);
        assert_eq!(step_law(0, &short_run(5.0)), 10.0);
    }

    #[test]
    fn end_of_run_value() {
        // 0.1 + 9.9 * (1/1.005)^1000 by repeated division.
        let mut factor = 1.0f64;
        for _ in 0..1000 {
            factor /= 1.005;
        }
        let expected = 0.1 + 9.9 * factor;
        assert!((expected - 0.1674).abs() < 5e-4);
        assert!((step_law(1000, &short_run(5.0)) - expected).abs() < 1e-9);
    }

    #[test]
    fn decreasing_and_bounded() {
        let hp = Hyperparameters::default();
        let mut prev = f64::INFINITY;
        for t in (0..=hp.n_it).step_by(97) {
            let s = step_law(t, &hp);
            assert!(s < prev && s >= hp.s_min && s <= hp.s_max);
            prev = s;
        }
    }

    #[test]
    fn feasible_updates_target() {
        let hp = Hyperparameters { s_max: 2.0, ..Hyperparameters::default() };
        let mut sched = ContainerSchedule::new(150.0);
        sched.on_feasible(100.0, 0, &hp);
        assert_eq!(sched.target_radius, 98.0);
        assert_eq!(sched.last_feasible_radius, Some(100.0));

        let mut prev = sched.target_radius;
        for t in 1..50 {
            sched.on_feasible(prev, t, &hp);
            assert!(sched.target_radius < prev);
            prev = sched.target_radius;
        }
    }

    #[test]
    fn degenerate_target_clamps_to_s_min() {
        let hp = Hyperparameters::default();
        let mut sched = ContainerSchedule::new(3.0);
        sched.on_feasible(1.0, 0, &hp);
        assert_eq!(sched.target_radius, hp.s_min);
    }

    #[test]
    fn stagnation_activates_at_ten_percent() {
        let hp = Hyperparameters { n_it: 20_000, ..Hyperparameters::default() };
        let mut sched = ContainerSchedule::new(150.0);
        sched.on_feasible(100.0, 10, &hp);
        let overshoot = sched.target_radius;
        sched.on_infeasible(&hp);
        assert_eq!(sched.stagnation_counter, 1);
        assert!(!sched.stagnation_active);
        for _ in 1..1999 {
            sched.on_infeasible(&hp);
        }
        assert!(!sched.stagnation_active);
        sched.on_infeasible(&hp);
        assert_eq!(sched.stagnation_counter, 2000);
        assert!(sched.stagnation_active);
        assert_eq!(sched.step_size(15_000, &hp), hp.s_min);
        assert_eq!(sched.target_radius, 100.0 - hp.s_min);
        assert!(sched.target_radius > overshoot);

        sched.on_feasible(99.5, 15_000, &hp);
        assert_eq!(sched.stagnation_counter, 0);
        assert!(!sched.stagnation_active);
        assert_eq!(sched.target_radius, 99.5 - hp.s_min);
    }

    #[test]
    fn stagnation_before_any_feasible_keeps_target() {
        let hp = Hyperparameters { n_it: 10, ..Hyperparameters::default() };
        let mut sched = ContainerSchedule::new(50.0);
        sched.on_infeasible(&hp);
        assert!(sched.stagnation_active);
        assert_eq!(sched.target_radius, 50.0);
    }

    #[test]
    fn larger_c_decays_faster() {
        let cs = [5.0, 10.0, 15.0, 20.0, 30.0, 50.0];
        for t in 1..=1000 {
            let s: Vec<f64> = cs.iter().map(|&c| step_law(t, &short_run(c))).collect();
            assert!(s.windows(2).all(|w| w[1] < w[0]), "t = {t}: {s:?}");
        }
    }
}
