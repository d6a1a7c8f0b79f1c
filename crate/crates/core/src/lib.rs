//! Virtual-force swarm solver for balanced circular bin packing.
//!
//! Every circle is one particle of a swarm. At each iteration three kinds of
//! virtual forces act on it (pairwise overlap repulsion, a balance force
//! pulling the center of gravity back to the origin, and an attraction toward
//! a shrinking container), the swarm is advanced by one explicit dynamics
//! step, and whenever the layout is feasible the container target radius is
//! lowered again.
//!
//! ```no_run
//! use balpack::{corpus, solver, Hyperparameters};
//!
//! let instance = corpus::instance("I1").unwrap();
//! let hp = Hyperparameters::for_instance(&instance).with_seed(3);
//! let result = solver::solve(&instance, &hp).unwrap();
//! println!("best radius {:?}", result.best_radius());
//! ```

pub mod bench;
pub mod corpus;
pub mod dynamics;
pub mod error;
pub mod forces;
pub mod format;
pub mod geometry;
pub mod grid;
pub mod init;
pub mod model;
pub mod schedule;
pub mod solver;
pub mod svg;

pub use error::{Error, Result};
pub use geometry::{Disk, Point2, Vec2};
pub use model::{Circle, Hyperparameters, IterationRecord, ProblemInstance, SolveResult, SwarmState};
pub use schedule::ContainerSchedule;
