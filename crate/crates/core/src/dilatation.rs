//! Pointwise maximal and directional dilatations of a Beltrami coefficient.

use num_complex::Complex64;
use thiserror::Error;

use crate::field::BeltramiField;

#[derive(Debug, Error)]
pub enum DilatationError {
    #[error("point {0} lies outside the field domain")]
    DomainError(Complex64),
    #[error("evaluation point coincides with the base point {0}")]
    DegenerateBase(Complex64),
}

/// Dilatation data of a field at one point `z` relative to a base point `z0`.
///
/// `d_value` is the directional dilatation seen from `z0`, `d_neg_value` the
/// same quantity for the negated coefficient, and `k_value` the pointwise
/// maximal dilatation. All three are finite thanks to the field's clipping.
#[derive(Clone, Copy, Debug)]
pub struct DilatationSample {
    pub z: Complex64,
    pub z0: Complex64,
    pub mu: Complex64,
    pub k_value: f64,
    pub d_value: f64,
    pub d_neg_value: f64,
    pub clipped: bool,
}

/// Directional dilatation for a coefficient value `mu` and the unit rotation
/// factor `q = conj(z - z0) / (z - z0)`.
#[inline]
pub(crate) fn directional_from_parts(mu: Complex64, q: Complex64) -> f64 {
    let one = Complex64::new(1.0, 0.0);
    (one - mu * q).norm_sqr() / (1.0 - mu.norm_sqr())
}

/// Evaluates `K`, `D_{mu,z0}` and `D_{-mu,z0}` at `z`.
pub fn directional_dilatation(
    field: &BeltramiField,
    z0: Complex64,
    z: Complex64,
) -> Result<DilatationSample, DilatationError> {
    if !field.contains(z) {
        return Err(DilatationError::DomainError(z));
    }
    let dz = z - z0;
    if dz.norm_sqr() == 0.0 {
        return Err(DilatationError::DegenerateBase(z0));
    }
    let sample = field.mu(z);
    let mu = sample.value;
    let q = dz.conj() / dz;
    let k_value = (1.0 + mu.norm()) / (1.0 - mu.norm());
    Ok(DilatationSample {
        z,
        z0,
        mu,
        k_value,
        d_value: directional_from_parts(mu, q),
        d_neg_value: directional_from_parts(-mu, q),
        clipped: sample.clipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Domain;
    use approx::assert_relative_eq;

    #[test]
    fn zero_field_is_isotropic() {
        let field = BeltramiField::zero(Domain::UpperHalfPlane);
        let s = directional_dilatation(&field, Complex64::new(0.3, 0.0), Complex64::new(1.0, 2.0))
            .unwrap();
        assert_eq!(s.d_value, 1.0);
        assert_eq!(s.d_neg_value, 1.0);
        assert_eq!(s.k_value, 1.0);
    }

    #[test]
    fn radial_stretch_base_zero() {
        // mu(z) = c z/conj(z) with c = (K-1)/(K+1), K = 2. Along any ray the
        // rotation factor cancels, leaving D = (1-c)/(1+c) = 1/K.
        let c = 1.0 / 3.0;
        let field = BeltramiField::new(Domain::UpperHalfPlane, "stretch", move |z| {
            z / z.conj() * c
        });
        let s = directional_dilatation(
            &field,
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 1.0),
        )
        .unwrap();
        assert_relative_eq!(s.d_value, 0.5, max_relative = 1e-14);
        assert_relative_eq!(s.d_neg_value, 2.0, max_relative = 1e-14);
        // brute-force evaluation of the defining quotient
        let z = Complex64::new(1.0, 1.0);
        let mu = z / z.conj() * c;
        let q = z.conj() / z;
        let direct = (Complex64::new(1.0, 0.0) - mu * q).norm_sqr() / (1.0 - mu.norm_sqr());
        assert_relative_eq!(s.d_value, direct, max_relative = 1e-14);
    }

    #[test]
    fn constant_half_is_three_on_imaginary_axis() {
        let field = BeltramiField::constant(Domain::UpperHalfPlane, Complex64::new(0.5, 0.0));
        let s = directional_dilatation(
            &field,
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 1.0),
        )
        .unwrap();
        // theta = pi/2, so e^{-2 i theta} = -1 and D = |1 + 0.5|^2 / (1 - 0.25).
        assert_relative_eq!(s.d_value, 3.0, max_relative = 1e-14);
    }

    #[test]
    fn errors_on_bad_points() {
        let field = BeltramiField::zero(Domain::UpperHalfPlane);
        assert!(matches!(
            directional_dilatation(&field, Complex64::new(0.0, 0.0), Complex64::new(1.0, -1.0)),
            Err(DilatationError::DomainError(_))
        ));
        let z = Complex64::new(1.0, 1.0);
        assert!(matches!(
            directional_dilatation(&field, z, z),
            Err(DilatationError::DegenerateBase(_))
        ));
    }

    #[test]
    fn sandwiched_by_maximal_dilatation() {
        let field = BeltramiField::new(Domain::UnitDisk, "swirl", |z| {
            Complex64::new(0.4 * (3.0 * z.re).cos(), 0.5 * (2.0 * z.im).sin())
        });
        for k in 0..50 {
            let t = k as f64 / 50.0;
            let z = Complex64::from_polar(0.15 + 0.7 * t, 6.0 * t);
            let s = directional_dilatation(&field, Complex64::new(1.0, 0.0), z).unwrap();
            assert!(1.0 / s.k_value <= s.d_value * (1.0 + 1e-14));
            assert!(s.d_value <= s.k_value * (1.0 + 1e-14));
            assert!(1.0 / s.k_value <= s.d_neg_value * (1.0 + 1e-14));
            assert!(s.d_neg_value <= s.k_value * (1.0 + 1e-14));
        }
    }
}
