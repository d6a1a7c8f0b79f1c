//! Planar kernels: lens (intersection) area of two disks, center of gravity,
//! and enclosing radius about an arbitrary center.

use std::f64::consts::PI;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Distances closer than this to a branch boundary are treated as on it.
pub const BRANCH_EPS: f64 = 1e-12;

/// Two-component vector used for positions, velocities, accelerations and
/// forces alike.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

pub type Point2 = Vec2;

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm_squared(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    #[inline]
    pub fn distance(self, other: Vec2) -> f64 {
        (self - other).norm()
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Rescales to norm `cap` when the norm exceeds it.
    #[inline]
    pub fn clamp_norm(self, cap: f64) -> Vec2 {
        let n = self.norm();
        if n > cap {
            self * (cap / n)
        } else {
            self
        }
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    #[inline]
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Vec2 {
    #[inline]
    fn add_assign(&mut self, o: Vec2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    #[inline]
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl SubAssign for Vec2 {
    #[inline]
    fn sub_assign(&mut self, o: Vec2) {
        self.x -= o.x;
        self.y -= o.y;
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn mul(self, k: f64) -> Vec2 {
        Vec2::new(self.x * k, self.y * k)
    }
}

impl Div<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn div(self, k: f64) -> Vec2 {
        Vec2::new(self.x / k, self.y / k)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    #[inline]
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub center: Point2,
    pub radius: f64,
}

impl Disk {
    pub fn new(center: Point2, radius: f64) -> Self {
        Self { center, radius }
    }

    pub fn area(&self) -> f64 {
        PI * self.radius * self.radius
    }

    fn check(&self) -> Result<()> {
        if !self.center.is_finite() || !self.radius.is_finite() {
            return Err(Error::InvalidGeometry(format!("non-finite disk {self:?}")));
        }
        if self.radius <= 0.0 {
            return Err(Error::InvalidGeometry(format!(
                "disk radius must be positive, got {}",
                self.radius
            )));
        }
        Ok(())
    }
}

/// Area of the intersection of two disks.
///
/// Disjoint and contained configurations are resolved before the general
/// two-segment formula, whose `acos` arguments are clamped to `[-1, 1]`.
pub fn lens_area(a: &Disk, b: &Disk) -> Result<f64> {
    a.check()?;
    b.check()?;
    Ok(lens_area_unchecked(a.center.distance(b.center), a.radius, b.radius))
}

/// Lens area from the center distance and both radii, without validation.
pub(crate) fn lens_area_unchecked(d: f64, ra: f64, rb: f64) -> f64 {
    if d >= ra + rb - BRANCH_EPS {
        return 0.0;
    }
    let r_min = ra.min(rb);
    if d <= (ra - rb).abs() + BRANCH_EPS {
        return PI * r_min * r_min;
    }
    let (ra2, rb2, d2) = (ra * ra, rb * rb, d * d);
    let ca = ((d2 + ra2 - rb2) / (2.0 * d * ra)).clamp(-1.0, 1.0);
    let cb = ((d2 + rb2 - ra2) / (2.0 * d * rb)).clamp(-1.0, 1.0);
    let kite = (-d + ra + rb) * (d + ra - rb) * (d - ra + rb) * (d + ra + rb);
    let area = ra2 * ca.acos() + rb2 * cb.acos() - 0.5 * kite.max(0.0).sqrt();
    area.clamp(0.0, PI * r_min * r_min)
}

fn check_lengths(positions: usize, other: usize, what: &str) -> Result<()> {
    if positions != other {
        return Err(Error::InvalidInput(format!(
            "{positions} positions but {other} {what}"
        )));
    }
    Ok(())
}

/// Sum of lens areas over all unordered pairs `i < j`.
pub fn total_overlap(positions: &[Point2], radii: &[f64]) -> Result<f64> {
    check_lengths(positions.len(), radii.len(), "radii")?;
    if positions.is_empty() {
        return Err(Error::InvalidInput("empty layout".into()));
    }
    let mut total = 0.0;
    for i in 0..positions.len() {
        let a = Disk::new(positions[i], radii[i]);
        a.check()?;
        for j in (i + 1)..positions.len() {
            total += lens_area_unchecked(positions[i].distance(positions[j]), radii[i], radii[j]);
        }
    }
    Ok(total)
}

/// Mass-weighted mean position.
pub fn center_of_gravity(positions: &[Point2], masses: &[f64]) -> Result<Point2> {
    check_lengths(positions.len(), masses.len(), "masses")?;
    if positions.is_empty() {
        return Err(Error::InvalidInput("empty layout".into()));
    }
    if let Some(m) = masses.iter().find(|m| !(**m > 0.0) || !m.is_finite()) {
        return Err(Error::InvalidInput(format!("mass must be positive and finite, got {m}")));
    }
    Ok(center_of_gravity_unchecked(positions, masses))
}

pub(crate) fn center_of_gravity_unchecked(positions: &[Point2], masses: &[f64]) -> Point2 {
    let mut moment = Vec2::ZERO;
    let mut total = 0.0;
    for (p, &m) in positions.iter().zip(masses) {
        moment += *p * m;
        total += m;
    }
    moment / total
}

/// Distance of the center of gravity from the origin.
pub fn cg_violation(positions: &[Point2], masses: &[f64]) -> Result<f64> {
    Ok(center_of_gravity(positions, masses)?.norm())
}

/// Radius of the smallest circle about `center` containing every disk.
pub fn enclosing_radius(positions: &[Point2], radii: &[f64], center: Point2) -> Result<f64> {
    check_lengths(positions.len(), radii.len(), "radii")?;
    if positions.is_empty() {
        return Err(Error::InvalidInput("empty layout".into()));
    }
    if !center.is_finite() || positions.iter().any(|p| !p.is_finite()) {
        return Err(Error::InvalidGeometry("non-finite position".into()));
    }
    Ok(enclosing_radius_unchecked(positions, radii, center))
}

pub(crate) fn enclosing_radius_unchecked(positions: &[Point2], radii: &[f64], center: Point2) -> f64 {
    positions
        .iter()
        .zip(radii)
        .map(|(p, r)| p.distance(center) + r)
        .fold(f64::NEG_INFINITY, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn disk(x: f64, y: f64, r: f64) -> Disk {
        Disk::new(Vec2::new(x, y), r)
    }

    /// Hit-or-miss estimate over the overlap of the two bounding boxes.
    fn monte_carlo_lens(a: &Disk, b: &Disk, samples: usize, seed: u64) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lo_x = (a.center.x - a.radius).max(b.center.x - b.radius);
        let hi_x = (a.center.x + a.radius).min(b.center.x + b.radius);
        let lo_y = (a.center.y - a.radius).max(b.center.y - b.radius);
        let hi_y = (a.center.y + a.radius).min(b.center.y + b.radius);
        if hi_x <= lo_x || hi_y <= lo_y {
            return 0.0;
        }
        let mut hits = 0usize;
        for _ in 0..samples {
            let p = Vec2::new(rng.random_range(lo_x..hi_x), rng.random_range(lo_y..hi_y));
            if (p - a.center).norm_squared() <= a.radius * a.radius
                && (p - b.center).norm_squared() <= b.radius * b.radius
            {
                hits += 1;
            }
        }
        hits as f64 / samples as f64 * (hi_x - lo_x) * (hi_y - lo_y)
    }

    #[test]
    fn identical_disks_overlap_fully() {
        let a = disk(0.0, 0.0, 1.0);
        assert!((lens_area(&a, &a).unwrap() - PI).abs() < 1e-15);
    }

    #[test]
    fn tangent_disks_do_not_overlap() {
        assert_eq!(lens_area(&disk(0.0, 0.0, 1.0), &disk(2.0, 0.0, 1.0)).unwrap(), 0.0);
    }

    #[test]
    fn unit_lens_matches_sampling() {
        let (a, b) = (disk(0.0, 0.0, 1.0), disk(1.0, 0.0, 1.0));
        let exact = lens_area(&a, &b).unwrap();
        let estimate = monte_carlo_lens(&a, &b, 10_000_000, 11);
        assert!(((exact - estimate) / estimate).abs() < 1e-3, "{exact} vs {estimate}");
    }

    #[test]
    fn non_finite_input_is_rejected() {
        let err = lens_area(&disk(f64::NAN, 0.0, 1.0), &disk(0.0, 0.0, 1.0));
        assert!(matches!(err, Err(Error::InvalidGeometry(_))));
        let err = lens_area(&disk(0.0, 0.0, f64::INFINITY), &disk(0.0, 0.0, 1.0));
        assert!(matches!(err, Err(Error::InvalidGeometry(_))));
    }

    #[test]
    fn branch_boundaries_are_continuous() {
        for &(ra, rb) in &[(1.0, 1.0), (2.0, 0.5), (0.3, 3.0)] {
            let small = PI * f64::min(ra, rb).powi(2);
            assert_eq!(lens_area_unchecked(ra + rb, ra, rb), 0.0);
            assert_eq!(lens_area_unchecked((ra - rb).abs(), ra, rb), small);
            let outer = lens_area_unchecked(ra + rb - 1e-11, ra, rb);
            assert!(outer.abs() < 1e-9, "{outer}");
            let inner = lens_area_unchecked((ra - rb).abs() + 1e-11, ra, rb);
            assert!((inner - small).abs() < 1e-9, "{inner} vs {small}");
        }
    }

    #[test]
    fn total_overlap_examples() {
        assert_eq!(total_overlap(&[Vec2::ZERO], &[1.0]).unwrap(), 0.0);
        let p = [Vec2::new(0.0, 0.0), Vec2::new(3.0, 0.0)];
        assert_eq!(total_overlap(&p, &[1.0, 1.0]).unwrap(), 0.0);
        let p = [Vec2::ZERO; 3];
        assert!((total_overlap(&p, &[1.0; 3]).unwrap() - 3.0 * PI).abs() < 1e-12);
        assert!(matches!(total_overlap(&p, &[1.0; 2]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn center_of_gravity_examples() {
        let d = 2.5;
        let cg = center_of_gravity(&[Vec2::new(-d, 0.0), Vec2::new(d, 0.0)], &[1.0, 1.0]).unwrap();
        assert_eq!(cg, Vec2::ZERO);
        let cg = center_of_gravity(&[Vec2::new(3.0, 4.0)], &[1.0]).unwrap();
        assert_eq!(cg, Vec2::new(3.0, 4.0));
        let cg = center_of_gravity(&[Vec2::ZERO, Vec2::new(4.0, 0.0)], &[1.0, 3.0]).unwrap();
        assert_eq!(cg, Vec2::new(3.0, 0.0));
        assert!(center_of_gravity(&[Vec2::ZERO], &[0.0]).is_err());
        assert!(center_of_gravity(&[Vec2::ZERO], &[-1.0]).is_err());
    }

    #[test]
    fn cg_violation_examples() {
        let sym = [Vec2::new(-1.0, 0.0), Vec2::new(1.0, 0.0)];
        assert_eq!(cg_violation(&sym, &[2.0, 2.0]).unwrap(), 0.0);
        assert_eq!(cg_violation(&[Vec2::new(3.0, 4.0)], &[1.0]).unwrap(), 5.0);
        let p = [Vec2::ZERO, Vec2::new(4.0, 0.0)];
        assert_eq!(cg_violation(&p, &[1.0, 3.0]).unwrap(), 3.0);
    }

    #[test]
    fn enclosing_radius_examples() {
        assert_eq!(enclosing_radius(&[Vec2::ZERO], &[5.0], Vec2::ZERO).unwrap(), 5.0);
        let p = [Vec2::new(-2.0, 0.0), Vec2::new(2.0, 0.0)];
        assert_eq!(enclosing_radius(&p, &[1.0, 1.0], Vec2::ZERO).unwrap(), 3.0);
    }

    fn arb_disk() -> impl Strategy<Value = Disk> {
        (-5.0..5.0f64, -5.0..5.0f64, 0.01..4.0f64).prop_map(|(x, y, r)| disk(x, y, r))
    }

    proptest! {
        #[test]
        fn lens_area_is_symmetric_and_bounded(a in arb_disk(), b in arb_disk()) {
            let ab = lens_area(&a, &b).unwrap();
            let ba = lens_area(&b, &a).unwrap();
            prop_assert!((ab - ba).abs() <= 1e-12 * ab.max(1.0));
            prop_assert!(ab >= 0.0);
            prop_assert!(ab <= a.area().min(b.area()) * (1.0 + 1e-12));
        }

        #[test]
        fn enclosing_radius_is_translation_covariant(
            pts in prop::collection::vec((-10.0..10.0f64, -10.0..10.0f64, 0.1..3.0f64), 1..20),
            shift in (-100.0..100.0f64, -100.0..100.0f64),
            center in (-5.0..5.0f64, -5.0..5.0f64),
        ) {
            let positions: Vec<_> = pts.iter().map(|p| Vec2::new(p.0, p.1)).collect();
            let radii: Vec<_> = pts.iter().map(|p| p.2).collect();
            let c = Vec2::new(center.0, center.1);
            let s = Vec2::new(shift.0, shift.1);
            let moved: Vec<_> = positions.iter().map(|p| *p + s).collect();
            let r0 = enclosing_radius(&positions, &radii, c).unwrap();
            let r1 = enclosing_radius(&moved, &radii, c + s).unwrap();
            prop_assert!((r0 - r1).abs() <= 1e-12 * r0);
        }

        #[test]
        fn cg_violation_ignores_uniform_mass_scaling(
            pts in prop::collection::vec((-10.0..10.0f64, -10.0..10.0f64, 0.5..100.0f64), 1..20),
            k in 0.01..100.0f64,
        ) {
            let positions: Vec<_> = pts.iter().map(|p| Vec2::new(p.0, p.1)).collect();
            let masses: Vec<_> = pts.iter().map(|p| p.2).collect();
            let scaled: Vec<_> = masses.iter().map(|m| m * k).collect();
            let h0 = cg_violation(&positions, &masses).unwrap();
            let h1 = cg_violation(&positions, &scaled).unwrap();
            prop_assert!((h0 - h1).abs() <= 1e-12 * h0.max(1e-300) + 1e-13);
        }
    }
}
