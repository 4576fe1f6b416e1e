//! E. Study mapping between oriented non-null lines and unit dual vectors.

use crate::dual::DualVec3;
use crate::error::{Error, Result};
use crate::lorentz::{lorentz_cross, lorentz_dot, CausalCharacter, Vec3L};

/// Tolerance on the unit and orthogonality conditions of Plücker pairs.
pub const UNIT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OrientedLine {
    pub point: Vec3L,
    /// Unit spacelike or timelike direction.
    pub direction: Vec3L,
}

/// Normalized Plücker coordinates: direction `a` and moment `a* = p × a`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PluckerPair {
    pub a: Vec3L,
    pub a_star: Vec3L,
}

impl From<PluckerPair> for DualVec3 {
    fn from(p: PluckerPair) -> Self {
        DualVec3::new(p.a, p.a_star)
    }
}

impl From<DualVec3> for PluckerPair {
    fn from(d: DualVec3) -> Self {
        PluckerPair { a: d.re, a_star: d.du }
    }
}

impl OrientedLine {
    pub fn new(point: Vec3L, direction: Vec3L) -> Self {
        Self { point, direction }
    }

    pub fn at(&self, lambda: f64) -> Vec3L {
        self.point + self.direction * lambda
    }

    /// `±1` by the causal character of the direction.
    pub fn signature(&self) -> f64 {
        lorentz_dot(&self.direction, &self.direction)
    }
}

pub fn line_to_dual(line: &OrientedLine) -> Result<DualVec3> {
    let q = lorentz_dot(&line.direction, &line.direction);
    if line.direction.causal_character() == CausalCharacter::Lightlike
        || (libm::fabs(q) - 1.0).abs() > UNIT_TOLERANCE
    {
        return Err(Error::InvalidDirection(q));
    }
    Ok(DualVec3::new(line.direction, lorentz_cross(&line.point, &line.direction)))
}

/// Recovers the line of a unit dual vector.
///
/// Under this metric `a × (p × a) = −⟨a,a⟩ p + ⟨a,p⟩ a`, so the foot point
/// of the line is `−⟨a,a⟩ (a × a*)` for both causal classes. The candidate
/// is checked by reproducing the moment.
pub fn dual_to_line(d: &DualVec3) -> Result<OrientedLine> {
    let norm_sq = lorentz_dot(&d.re, &d.re);
    let moment_dot = lorentz_dot(&d.re, &d.du);
    if (libm::fabs(norm_sq) - 1.0).abs() > UNIT_TOLERANCE || libm::fabs(moment_dot) > UNIT_TOLERANCE {
        return Err(Error::NotUnit { norm_sq, moment_dot });
    }
    let sign = if norm_sq > 0.0 { 1.0 } else { -1.0 };
    let point = lorentz_cross(&d.re, &d.du) * (-sign);
    let reproduced = lorentz_cross(&point, &d.re);
    let scale = 1.0 + d.du.max_abs();
    if (reproduced - d.du).max_abs() > UNIT_TOLERANCE * scale {
        return Err(Error::NotUnit { norm_sq, moment_dot });
    }
    Ok(OrientedLine::new(point, d.re))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_through_origin_has_zero_moment() {
        let d = line_to_dual(&OrientedLine::new(Vec3L::zero(), Vec3L::E2)).unwrap();
        assert_eq!(d, DualVec3::new(Vec3L::E2, Vec3L::zero()));
        let l = dual_to_line(&d).unwrap();
        assert_eq!(l.direction, Vec3L::E2);
        assert_eq!(l.point.max_abs(), 0.0);
    }

    #[test]
    fn offset_line_moment() {
        let line = OrientedLine::new(Vec3L::E1, Vec3L::E2);
        let d = line_to_dual(&line).unwrap();
        assert_eq!(d.du, Vec3L::new(0.0, 0.0, -1.0));
        let back = line_to_dual(&dual_to_line(&d).unwrap()).unwrap();
        assert_eq!(back.du, Vec3L::new(0.0, 0.0, -1.0));
    }

    #[test]
    fn moment_is_point_invariant() {
        let line = OrientedLine::new(Vec3L::E1, Vec3L::E2);
        let a = line_to_dual(&line).unwrap();
        let b = line_to_dual(&OrientedLine::new(line.at(7.3), line.direction)).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-12);
    }

    #[test]
    fn timelike_line_round_trip() {
        let dir = Vec3L::new(2.0f64.sqrt(), 1.0, 0.0); // ⟨d,d⟩ = −1
        let line = OrientedLine::new(Vec3L::new(0.5, -1.0, 3.0), dir);
        let d = line_to_dual(&line).unwrap();
        let l = dual_to_line(&d).unwrap();
        assert!((line_to_dual(&l).unwrap().du - d.du).max_abs() < 1e-12);
        // the recovered point lies on the original line
        let off = l.point - line.point;
        assert!(lorentz_cross(&off, &dir).max_abs() < 1e-12);
    }

    #[test]
    fn euclidean_recovery_formula_misses_spacelike_lines() {
        // a × a* alone lands on the mirror image −p for a spacelike line
        let d = line_to_dual(&OrientedLine::new(Vec3L::E1, Vec3L::E2)).unwrap();
        let naive = lorentz_cross(&d.re, &d.du);
        assert_eq!(naive, -Vec3L::E1);
        assert_ne!(lorentz_cross(&naive, &d.re), d.du);
    }

    #[test]
    fn errors() {
        let bad = OrientedLine::new(Vec3L::zero(), Vec3L::new(1.0, 1.0, 0.0));
        assert!(matches!(line_to_dual(&bad), Err(Error::InvalidDirection(_))));
        let long = OrientedLine::new(Vec3L::zero(), Vec3L::new(0.0, 2.0, 0.0));
        assert!(matches!(line_to_dual(&long), Err(Error::InvalidDirection(_))));
        let d = DualVec3::new(Vec3L::E2, Vec3L::new(0.0, 2.0, 0.0));
        assert!(matches!(dual_to_line(&d), Err(Error::NotUnit { .. })));
    }
}
