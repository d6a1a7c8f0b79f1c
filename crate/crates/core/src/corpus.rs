//! Embedded benchmark instances.
//!
//! Suite 1: ten instances of 10 to 55 circles with independent radii and
//! masses. Suite 2: three instances of 100, 150 and 300 circles whose mass
//! equals their radius. Each instance carries the best container radius
//! published for it and, for suite 1, the published radius/mass ranges.

use serde::{Deserialize, Serialize};

use crate::model::ProblemInstance;
use crate::{Error, Result};

struct Suite1Row {
    name: &'static str,
    radii: &'static [f64],
    masses: &'static [f64],
}

#[rustfmt::skip]
const SUITE1: [Suite1Row; 10] = [
    Suite1Row {
        name: "I1",
        radii: &[20.0, 22.0, 17.0, 17.0, 7.0, 21.0, 11.0, 5.0, 23.0, 8.0],
        masses: &[35.0, 61.0, 49.0, 89.0, 68.0, 80.0, 93.0, 82.0, 70.0, 20.0],
    },
    Suite1Row {
        name: "I2",
        radii: &[8.0, 14.0, 8.0, 15.0, 11.0, 17.0, 21.0, 16.0, 6.0, 18.0, 24.0, 13.0, 20.0, 10.0, 15.0],
        masses: &[75.0, 29.0, 36.0, 58.0, 75.0, 32.0, 98.0, 52.0, 76.0, 85.0, 59.0, 18.0, 85.0, 36.0, 12.0],
    },
    Suite1Row {
        name: "I3",
        radii: &[20.0, 24.0, 8.0, 11.0, 13.0, 7.0, 7.0, 15.0, 24.0, 18.0, 15.0, 17.0, 17.0, 14.0, 16.0, 18.0, 5.0, 21.0, 21.0, 13.0],
        masses: &[86.0, 72.0, 81.0, 54.0, 29.0, 94.0, 92.0, 41.0, 57.0, 77.0, 40.0, 67.0, 31.0, 47.0, 39.0, 61.0, 73.0, 83.0, 11.0, 20.0],
    },
    Suite1Row {
        name: "I4",
        radii: &[24.0, 16.0, 19.0, 7.0, 14.0, 24.0, 15.0, 6.0, 16.0, 16.0, 23.0, 10.0, 9.0, 10.0, 18.0, 22.0, 7.0, 9.0, 7.0, 13.0, 14.0, 8.0, 18.0, 6.0, 8.0],
        masses: &[16.0, 80.0, 52.0, 21.0, 42.0, 86.0, 67.0, 96.0, 61.0, 79.0, 57.0, 62.0, 32.0, 38.0, 20.0, 75.0, 80.0, 11.0, 53.0, 32.0, 41.0, 68.0, 85.0, 53.0, 71.0],
    },
    Suite1Row {
        name: "I5",
        radii: &[14.0, 15.0, 11.0, 19.0, 9.0, 6.0, 23.0, 9.0, 23.0, 13.0, 24.0, 12.0, 24.0, 24.0, 10.0, 8.0, 9.0, 8.0, 6.0, 11.0, 6.0, 16.0, 24.0, 12.0, 9.0, 19.0, 13.0, 24.0, 21.0, 18.0],
        masses: &[24.0, 52.0, 37.0, 17.0, 12.0, 19.0, 51.0, 67.0, 23.0, 46.0, 14.0, 96.0, 55.0, 84.0, 21.0, 92.0, 69.0, 65.0, 72.0, 36.0, 73.0, 83.0, 83.0, 97.0, 73.0, 81.0, 30.0, 46.0, 49.0, 51.0],
    },
    Suite1Row {
        name: "I6",
        radii: &[10.0, 20.0, 13.0, 19.0, 19.0, 10.0, 14.0, 14.0, 24.0, 11.0, 20.0, 15.0, 7.0, 18.0, 22.0, 10.0, 13.0, 12.0, 21.0, 14.0, 9.0, 10.0, 9.0, 7.0, 8.0, 18.0, 8.0, 8.0, 23.0, 14.0, 13.0, 21.0, 23.0, 16.0, 10.0],
        masses: &[44.0, 46.0, 14.0, 32.0, 70.0, 31.0, 95.0, 24.0, 75.0, 99.0, 99.0, 79.0, 10.0, 79.0, 69.0, 64.0, 12.0, 47.0, 41.0, 62.0, 17.0, 85.0, 43.0, 70.0, 43.0, 63.0, 44.0, 57.0, 62.0, 20.0, 17.0, 80.0, 47.0, 68.0, 19.0],
    },
    Suite1Row {
        name: "I7",
        radii: &[6.0, 12.0, 20.0, 6.0, 14.0, 19.0, 9.0, 20.0, 10.0, 13.0, 12.0, 14.0, 23.0, 17.0, 16.0, 19.0, 15.0, 10.0, 12.0, 18.0, 21.0, 6.0, 20.0, 17.0, 13.0, 20.0, 17.0, 6.0, 21.0, 15.0, 12.0, 9.0, 14.0, 20.0, 23.0, 16.0, 23.0, 9.0, 23.0, 18.0],
        masses: &[74.0, 48.0, 16.0, 35.0, 19.0, 58.0, 87.0, 90.0, 17.0, 29.0, 32.0, 63.0, 46.0, 76.0, 26.0, 88.0, 71.0, 49.0, 89.0, 14.0, 68.0, 94.0, 41.0, 53.0, 36.0, 67.0, 14.0, 88.0, 99.0, 46.0, 66.0, 14.0, 21.0, 44.0, 73.0, 72.0, 72.0, 37.0, 82.0, 12.0],
    },
    Suite1Row {
        name: "I8",
        radii: &[13.0, 8.0, 11.0, 21.0, 9.0, 20.0, 24.0, 20.0, 17.0, 21.0, 7.0, 13.0, 24.0, 7.0, 6.0, 8.0, 18.0, 15.0, 12.0, 18.0, 17.0, 21.0, 8.0, 23.0, 22.0, 15.0, 10.0, 17.0, 24.0, 8.0, 14.0, 6.0, 16.0, 14.0, 6.0, 10.0, 19.0, 21.0, 20.0, 6.0, 16.0, 14.0, 6.0, 19.0, 11.0],
        masses: &[91.0, 95.0, 96.0, 47.0, 63.0, 37.0, 56.0, 96.0, 84.0, 70.0, 36.0, 41.0, 48.0, 12.0, 86.0, 43.0, 70.0, 71.0, 56.0, 89.0, 52.0, 49.0, 53.0, 82.0, 42.0, 35.0, 11.0, 82.0, 88.0, 58.0, 74.0, 16.0, 91.0, 57.0, 26.0, 39.0, 48.0, 68.0, 72.0, 69.0, 27.0, 44.0, 25.0, 99.0, 96.0],
    },
    Suite1Row {
        name: "I9",
        radii: &[9.0, 17.0, 5.0, 15.0, 24.0, 23.0, 12.0, 9.0, 5.0, 13.0, 7.0, 18.0, 19.0, 21.0, 7.0, 18.0, 18.0, 24.0, 12.0, 23.0, 22.0, 13.0, 5.0, 6.0, 17.0, 21.0, 7.0, 18.0, 14.0, 17.0, 10.0, 15.0, 18.0, 8.0, 8.0, 16.0, 7.0, 18.0, 24.0, 6.0, 20.0, 10.0, 21.0, 11.0, 22.0, 24.0, 12.0, 7.0, 14.0, 11.0],
        masses: &[19.0, 85.0, 60.0, 19.0, 88.0, 18.0, 28.0, 55.0, 66.0, 47.0, 49.0, 69.0, 93.0, 94.0, 35.0, 43.0, 93.0, 34.0, 27.0, 61.0, 20.0, 52.0, 51.0, 41.0, 98.0, 85.0, 82.0, 89.0, 54.0, 43.0, 54.0, 94.0, 80.0, 99.0, 41.0, 41.0, 63.0, 28.0, 19.0, 53.0, 11.0, 78.0, 65.0, 10.0, 98.0, 43.0, 78.0, 24.0, 84.0, 16.0],
    },
    Suite1Row {
        name: "I10",
        radii: &[17.0, 23.0, 17.0, 13.0, 18.0, 21.0, 23.0, 22.0, 7.0, 9.0, 8.0, 13.0, 20.0, 11.0, 10.0, 19.0, 10.0, 14.0, 12.0, 22.0, 19.0, 10.0, 17.0, 11.0, 21.0, 8.0, 15.0, 16.0, 19.0, 21.0, 17.0, 19.0, 8.0, 6.0, 13.0, 13.0, 14.0, 19.0, 18.0, 23.0, 20.0, 24.0, 24.0, 13.0, 13.0, 19.0, 7.0, 6.0, 10.0, 8.0, 8.0, 10.0, 24.0, 19.0, 24.0],
        masses: &[97.0, 62.0, 28.0, 36.0, 97.0, 58.0, 13.0, 21.0, 40.0, 97.0, 79.0, 90.0, 62.0, 47.0, 64.0, 23.0, 23.0, 95.0, 99.0, 44.0, 71.0, 79.0, 52.0, 59.0, 47.0, 60.0, 41.0, 47.0, 90.0, 95.0, 81.0, 98.0, 70.0, 47.0, 90.0, 13.0, 93.0, 50.0, 21.0, 80.0, 17.0, 52.0, 96.0, 73.0, 88.0, 16.0, 91.0, 97.0, 40.0, 52.0, 50.0, 90.0, 19.0, 69.0, 14.0],
    },
];

/// (name, [(count, radius)]) with mass equal to radius.
#[rustfmt::skip]
const SUITE2: [(&str, &[(usize, f64)]); 3] = [
    ("II1", &[(40, 10.0), (30, 20.0), (20, 30.0), (10, 40.0)]),
    ("II2", &[(50, 10.0), (40, 20.0), (30, 30.0), (20, 40.0), (10, 50.0)]),
    ("II3", &[(100, 10.0), (80, 20.0), (60, 30.0), (40, 40.0), (20, 50.0)]),
];

/// Best published container radius per instance.
#[rustfmt::skip]
const REFERENCE_RADII: [(&str, f64); 13] = [
    ("I1", 59.85), ("I2", 67.07), ("I3", 82.58), ("I4", 82.84), ("I5", 98.77),
    ("I6", 101.52), ("I7", 113.53), ("I8", 117.99), ("I9", 124.30), ("I10", 135.99),
    ("II1", 247.93), ("II2", 357.97), ("II3", 504.11),
];

/// Published summary of an instance: circle count and radius/mass ranges.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PublishedRanges {
    pub count: usize,
    pub radius: (f64, f64),
    pub mass: (f64, f64),
}

#[rustfmt::skip]
const SUITE1_RANGES: [PublishedRanges; 10] = [
    PublishedRanges { count: 10, radius: (8.0, 23.0), mass: (20.0, 93.0) },
    PublishedRanges { count: 15, radius: (8.0, 24.0), mass: (12.0, 98.0) },
    PublishedRanges { count: 20, radius: (8.0, 24.0), mass: (11.0, 94.0) },
    PublishedRanges { count: 25, radius: (6.0, 24.0), mass: (11.0, 96.0) },
    PublishedRanges { count: 30, radius: (6.0, 24.0), mass: (12.0, 96.0) },
    PublishedRanges { count: 35, radius: (7.0, 24.0), mass: (12.0, 99.0) },
    PublishedRanges { count: 40, radius: (6.0, 23.0), mass: (12.0, 99.0) },
    PublishedRanges { count: 45, radius: (6.0, 24.0), mass: (11.0, 99.0) },
    PublishedRanges { count: 50, radius: (5.0, 24.0), mass: (11.0, 99.0) },
    PublishedRanges { count: 55, radius: (6.0, 24.0), mass: (13.0, 99.0) },
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Suite {
    One,
    Two,
}

impl Suite {
    /// Default iteration budget used for the suite's published runs.
    pub fn iterations(self) -> usize {
        match self {
            Suite::One => 20_000,
            Suite::Two => 15_000,
        }
    }
}

pub fn suite1_names() -> impl Iterator<Item = &'static str> {
    SUITE1.iter().map(|row| row.name)
}

pub fn suite2_names() -> impl Iterator<Item = &'static str> {
    SUITE2.iter().map(|(name, _)| *name)
}

pub fn names() -> impl Iterator<Item = &'static str> {
    suite1_names().chain(suite2_names())
}

pub fn suite_of(name: &str) -> Option<Suite> {
    if suite1_names().any(|n| n == name) {
        Some(Suite::One)
    } else if suite2_names().any(|n| n == name) {
        Some(Suite::Two)
    } else {
        None
    }
}

pub fn instance(name: &str) -> Result<ProblemInstance> {
    if let Some(row) = SUITE1.iter().find(|row| row.name == name) {
        return ProblemInstance::from_lists(row.name, row.radii, row.masses);
    }
    if let Some((name, groups)) = SUITE2.iter().find(|(n, _)| *n == name) {
        let radii: Vec<f64> = groups
            .iter()
            .flat_map(|&(count, r)| std::iter::repeat_n(r, count))
            .collect();
        return ProblemInstance::from_lists(*name, &radii, &radii);
    }
    Err(Error::UnknownSelection(name.to_string()))
}

pub fn suite(which: Suite) -> Vec<ProblemInstance> {
    let names: Vec<&str> = match which {
        Suite::One => suite1_names().collect(),
        Suite::Two => suite2_names().collect(),
    };
    names.into_iter().map(|n| instance(n).expect("embedded instance")).collect()
}

pub fn all() -> Vec<ProblemInstance> {
    names().map(|n| instance(n).expect("embedded instance")).collect()
}

/// Resolves `suite1`, `suite2`, `all`, or a single instance name.
pub fn select(selector: &str) -> Result<Vec<ProblemInstance>> {
    match selector {
        "suite1" => Ok(suite(Suite::One)),
        "suite2" => Ok(suite(Suite::Two)),
        "all" => Ok(all()),
        name => instance(name).map(|i| vec![i]),
    }
}

pub fn reference_radius(name: &str) -> Option<f64> {
    REFERENCE_RADII.iter().find(|(n, _)| *n == name).map(|(_, r)| *r)
}

/// Published ranges: the suite-1 summary table, or the composition of a suite-2 instance.
pub fn published_ranges(name: &str) -> Option<PublishedRanges> {
    if let Some(k) = SUITE1.iter().position(|row| row.name == name) {
        return Some(SUITE1_RANGES[k]);
    }
    let (_, groups) = SUITE2.iter().find(|(n, _)| *n == name)?;
    let count = groups.iter().map(|g| g.0).sum();
    let lo = groups.iter().map(|g| g.1).fold(f64::INFINITY, f64::min);
    let hi = groups.iter().map(|g| g.1).fold(0.0, f64::max);
    Some(PublishedRanges { count, radius: (lo, hi), mass: (lo, hi) })
}

/// Ranges actually present in an instance.
pub fn observed_ranges(instance: &ProblemInstance) -> PublishedRanges {
    let span = |v: &[f64]| {
        (
            v.iter().copied().fold(f64::INFINITY, f64::min),
            v.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        )
    };
    PublishedRanges {
        count: instance.len(),
        radius: span(instance.radii()),
        mass: span(instance.masses()),
    }
}
