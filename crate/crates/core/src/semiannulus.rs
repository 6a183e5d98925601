//! Canonical semiannuli in the half-plane and the disk.
//!
//! The half-plane variant is the round semiannulus `A(t; r, R) ∩ H`, the
//! half-annulus between the circles `|z - t| = r` and `|z - t| = R`. The base
//! point `t = ∞` is understood as `A(0; 1/R, 1/r)`. The disk variant
//! `T(ζ; r1, r2)` collects disk points whose Möbius coordinate
//! `|(z - ζ)/(z + ζ)|` lies between `r1` and `r2`; it is the image of the
//! half-plane semiannulus `A(0; r1, r2) ∩ H` under a Möbius map sending the
//! half-plane to the disk and `0` to `ζ`.
//!
//! Both variants admit an optional sector restriction `θ ∈ (θ1, θ2)` of the
//! log-polar angle, with the full range `(0, π)` as the default.

use num_complex::Complex64;
use thiserror::Error;

use crate::field::Domain;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("radii must satisfy 0 < inner < outer < ∞ (got {0}, {1})")]
    BadRadii(f64, f64),
    #[error("base point on the unit circle required (|zeta| = {0})")]
    ZetaNotUnit(f64),
    #[error("sector must satisfy 0 <= θ1 < θ2 <= π (got {0}, {1})")]
    BadSector(f64, f64),
    #[error("half-plane base point must be finite or +∞")]
    BadBase,
}

/// Geometry variant of a canonical semiannulus.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum SemiannulusVariant {
    /// `A(t; r, R) ∩ H`; `t = ∞` means `A(0; 1/R, 1/r)`.
    #[serde(rename = "half_plane")]
    HalfPlane {
        t: f64,
        r: f64,
        #[serde(rename = "R")]
        big_r: f64,
    },
    /// `T(ζ; r1, r2)` in the unit disk.
    #[serde(rename = "disk")]
    Disk { zeta: [f64; 2], r1: f64, r2: f64 },
}

/// A canonical semiannulus together with an optional sector restriction.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SemiannulusSpec {
    pub variant: SemiannulusVariant,
    /// Restriction of the log-polar angle; `None` means the full `(0, π)`.
    pub sector: Option<(f64, f64)>,
}

impl SemiannulusSpec {
    pub fn half_plane(t: f64, r: f64, big_r: f64) -> Result<Self, SpecError> {
        if t.is_nan() {
            return Err(SpecError::BadBase);
        }
        if !(r > 0.0 && big_r > r && big_r.is_finite()) {
            return Err(SpecError::BadRadii(r, big_r));
        }
        Ok(Self {
            variant: SemiannulusVariant::HalfPlane { t, r, big_r },
            sector: None,
        })
    }

    pub fn disk(zeta: Complex64, r1: f64, r2: f64) -> Result<Self, SpecError> {
        let norm = zeta.norm();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(SpecError::ZetaNotUnit(norm));
        }
        if !(r1 > 0.0 && r2 > r1 && r2.is_finite()) {
            return Err(SpecError::BadRadii(r1, r2));
        }
        let unit = zeta / norm;
        Ok(Self {
            variant: SemiannulusVariant::Disk {
                zeta: [unit.re, unit.im],
                r1,
                r2,
            },
            sector: None,
        })
    }

    pub fn with_sector(mut self, theta1: f64, theta2: f64) -> Result<Self, SpecError> {
        if !(0.0..std::f64::consts::PI).contains(&theta1)
            || theta2 <= theta1
            || theta2 > std::f64::consts::PI
        {
            return Err(SpecError::BadSector(theta1, theta2));
        }
        self.sector = Some((theta1, theta2));
        Ok(self)
    }

    /// Resolves the `t = ∞` convention into a bounded spec.
    pub fn normalized(&self) -> Self {
        match self.variant {
            SemiannulusVariant::HalfPlane { t, r, big_r } if t.is_infinite() => Self {
                variant: SemiannulusVariant::HalfPlane {
                    t: 0.0,
                    r: 1.0 / big_r,
                    big_r: 1.0 / r,
                },
                sector: self.sector,
            },
            _ => *self,
        }
    }

    pub fn domain(&self) -> Domain {
        match self.variant {
            SemiannulusVariant::HalfPlane { .. } => Domain::UpperHalfPlane,
            SemiannulusVariant::Disk { .. } => Domain::UnitDisk,
        }
    }

    /// Log-radius range `(log inner, log outer)` of the normalized spec.
    pub fn log_range(&self) -> (f64, f64) {
        match self.normalized().variant {
            SemiannulusVariant::HalfPlane { r, big_r, .. } => (r.ln(), big_r.ln()),
            SemiannulusVariant::Disk { r1, r2, .. } => (r1.ln(), r2.ln()),
        }
    }

    /// Angular range, the sector if present and `(0, π)` otherwise.
    pub fn theta_range(&self) -> (f64, f64) {
        self.sector.unwrap_or((0.0, std::f64::consts::PI))
    }

    /// Maps log-polar coordinates `(s, θ)` to the plane point of the
    /// (normalized) semiannulus.
    pub fn point_at(&self, s: f64, theta: f64) -> Complex64 {
        match self.normalized().variant {
            SemiannulusVariant::HalfPlane { t, .. } => {
                Complex64::new(t, 0.0) + Complex64::from_polar(s.exp(), theta)
            }
            SemiannulusVariant::Disk { zeta, .. } => {
                let zeta = Complex64::new(zeta[0], zeta[1]);
                disk_from_halfplane(zeta, Complex64::from_polar(s.exp(), theta))
            }
        }
    }

    /// Modulus of the unrestricted canonical region, `log(outer/inner)`.
    pub(crate) fn canonical_log_ratio(&self) -> f64 {
        let (s0, s1) = self.log_range();
        s1 - s0
    }
}

/// Möbius map `w ↦ ζ (i - w)/(i + w)` from the upper half-plane onto the unit
/// disk; it sends `0 ↦ ζ`, `∞ ↦ -ζ`, and `A(0; r1, r2) ∩ H` onto `T(ζ; r1, r2)`.
pub fn disk_from_halfplane(zeta: Complex64, w: Complex64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    zeta * (i - w) / (i + w)
}

/// Inverse of [`disk_from_halfplane`]: `z ↦ i (ζ - z)/(ζ + z)`.
pub fn halfplane_from_disk(zeta: Complex64, z: Complex64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    i * (zeta - z) / (zeta + z)
}

/// Derivative of [`disk_from_halfplane`] with respect to `w`.
pub fn disk_from_halfplane_derivative(zeta: Complex64, w: Complex64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    let denom = i + w;
    zeta * (-2.0) * i / (denom * denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn radii_validation() {
        assert!(SemiannulusSpec::half_plane(0.0, 1.0, 1.0).is_err());
        assert!(SemiannulusSpec::half_plane(0.0, -1.0, 1.0).is_err());
        assert!(SemiannulusSpec::disk(Complex64::new(1.0, 0.0), 0.8, 0.2).is_err());
        assert!(SemiannulusSpec::disk(Complex64::new(0.5, 0.0), 0.2, 0.8).is_err());
    }

    #[test]
    fn infinity_base_normalizes() {
        let spec = SemiannulusSpec::half_plane(f64::INFINITY, 2.0, 8.0).unwrap();
        let norm = spec.normalized();
        match norm.variant {
            SemiannulusVariant::HalfPlane { t, r, big_r } => {
                assert_eq!(t, 0.0);
                assert_relative_eq!(r, 0.125);
                assert_relative_eq!(big_r, 0.5);
            }
            _ => panic!("expected half-plane variant"),
        }
    }

    #[test]
    fn sector_validation() {
        let spec = SemiannulusSpec::half_plane(0.0, 1.0, 2.0).unwrap();
        assert!(spec.with_sector(0.5, 0.4).is_err());
        assert!(spec.with_sector(-0.1, 0.4).is_err());
        assert!(spec.with_sector(0.3, 3.2).is_err());
        assert!(spec.with_sector(0.3, 3.1).is_ok());
    }

    #[test]
    fn moebius_transfer_roundtrip() {
        let zeta = Complex64::from_polar(1.0, 0.77);
        for k in 1..20 {
            let w = Complex64::from_polar(0.1 * k as f64, 0.15 * k as f64);
            if w.im <= 0.0 {
                continue;
            }
            let z = disk_from_halfplane(zeta, w);
            assert!(z.norm() < 1.0);
            let back = halfplane_from_disk(zeta, z);
            assert_relative_eq!(back.re, w.re, epsilon = 1e-12);
            assert_relative_eq!(back.im, w.im, epsilon = 1e-12);
            // |(z - ζ)/(z + ζ)| equals |w|
            assert_relative_eq!(((z - zeta) / (z + zeta)).norm(), w.norm(), epsilon = 1e-12);
        }
    }

    #[test]
    fn disk_points_live_in_disk() {
        let spec = SemiannulusSpec::disk(Complex64::new(0.0, 1.0), 0.2, 0.8).unwrap();
        for i in 0..=8 {
            for j in 1..8 {
                let (s0, s1) = spec.log_range();
                let s = s0 + (s1 - s0) * i as f64 / 8.0;
                let th = std::f64::consts::PI * j as f64 / 8.0;
                let z = spec.point_at(s, th);
                assert!(z.norm() < 1.0, "point {z} escaped the disk");
            }
        }
    }
}
