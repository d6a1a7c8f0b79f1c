//! Uniform-grid broad phase for pairwise overlap detection.
//!
//! With a cell side of twice the largest radius, any two overlapping circles
//! lie in the same or adjacent cells, so only the 3x3 block around a circle's
//! cell has to be scanned.

use std::collections::HashMap;

use crate::geometry::{Point2, BRANCH_EPS};

/// True when two circles overlap with non-zero area.
#[inline]
pub fn overlapping(a: Point2, ra: f64, b: Point2, rb: f64) -> bool {
    a.distance(b) < ra + rb - BRANCH_EPS
}

/// Overlapping partners of every circle, each list in ascending index order.
pub type PartnerLists = Vec<Vec<usize>>;

/// Reference all-pairs scan.
pub fn partners_naive(positions: &[Point2], radii: &[f64]) -> PartnerLists {
    let n = positions.len();
    let mut out = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            if i != j && overlapping(positions[i], radii[i], positions[j], radii[j]) {
                out[i].push(j);
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct SpatialGrid {
    cell: f64,
    cells: HashMap<(i64, i64), Vec<usize>>,
    keys: Vec<(i64, i64)>,
}

impl SpatialGrid {
    /// Indexes `positions` into square cells of side `cell`.
    pub fn build(positions: &[Point2], cell: f64) -> Self {
        assert!(cell > 0.0, "grid cell size must be positive");
        let mut cells: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        let mut keys = Vec::with_capacity(positions.len());
        for (i, p) in positions.iter().enumerate() {
            let key = ((p.x / cell).floor() as i64, (p.y / cell).floor() as i64);
            cells.entry(key).or_default().push(i);
            keys.push(key);
        }
        Self { cell, cells, keys }
    }

    pub fn cell_size(&self) -> f64 {
        self.cell
    }

    /// Indices in the 3x3 block of cells around circle `i`, unsorted, including `i`.
    pub fn candidates(&self, i: usize, out: &mut Vec<usize>) {
        out.clear();
        let (cx, cy) = self.keys[i];
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(list) = self.cells.get(&(cx + dx, cy + dy)) {
                    out.extend_from_slice(list);
                }
            }
        }
    }
}

/// Grid-accelerated equivalent of [`partners_naive`].
pub fn partners_grid(positions: &[Point2], radii: &[f64]) -> PartnerLists {
    let n = positions.len();
    let max_r = radii.iter().copied().fold(0.0, f64::max);
    let grid = SpatialGrid::build(positions, 2.0 * max_r);
    let mut out = vec![Vec::new(); n];
    let mut buf = Vec::new();
    for i in 0..n {
        grid.candidates(i, &mut buf);
        buf.sort_unstable();
        out[i].extend(
            buf.iter()
                .copied()
                .filter(|&j| j != i && overlapping(positions[i], radii[i], positions[j], radii[j])),
        );
    }
    out
}

/// Picks the grid for anything but tiny swarms.
pub fn partners(positions: &[Point2], radii: &[f64]) -> PartnerLists {
    if positions.len() < 16 {
        partners_naive(positions, radii)
    } else {
        partners_grid(positions, radii)
    }
}
