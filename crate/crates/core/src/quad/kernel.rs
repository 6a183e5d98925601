//! Singular annulus-integral kernels in flattened log-polar form.
//!
//! Every half-plane kernel below carries the weight `1/|z - t|^2`, which the
//! substitution `z = t + e^{s + iθ}` turns into the flat measure `ds dθ`. The
//! disk kernels carry `1/|z^2 - ζ^2|^2` and flatten the same way under the
//! Möbius parametrization of `T(ζ; r1, r2)`; the residual factor is `1/4`.
//! `eval_flat` therefore returns the integrand already multiplied by the
//! Jacobian of the parametrization, so the engine integrates it `ds dθ`.

use num_complex::Complex64;

use crate::dilatation::directional_from_parts;
use crate::field::Domain;

/// The integral conditions computable by the annulus engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelKind {
    /// `(D_{μ,t} - 1) / |z - t|^2`
    DPlusMinusOne,
    /// `(D_{-μ,t} - 1) / |z - t|^2`
    DMinusMinusOne,
    /// `|μ|^2 / ((1 - |μ|^2) |z - t|^2)`
    SquaredModulus,
    /// `Re[μ / (z - t)^2] / (1 - |μ|^2)`
    RealQuadratic,
    /// `(|μ|^2 + |Re[(z̄-t̄)/(z-t) μ]|) / ((1 - |μ|^2) |z - t|^2)`
    CrossAbsolute,
    /// `(|μ|^2 - Re[z̄/z μ]) / ((1 - |μ|^2) |z|^2)`, base fixed at the origin
    InfinityKernel,
    /// `|μ|^2 / ((1 - |μ|^2) |z^2 - ζ^2|^2)`
    DiskSquared,
    /// `Re[ζ^2 μ / (z^2 - ζ^2)^2] / (1 - |μ|^2)`
    DiskReal,
}

impl KernelKind {
    /// Kernels defined over disk semiannuli `T(ζ; r1, r2)`.
    pub fn domain(&self) -> Domain {
        match self {
            KernelKind::DiskSquared | KernelKind::DiskReal => Domain::UnitDisk,
            _ => Domain::UpperHalfPlane,
        }
    }

    /// True for kernels whose base point must be the origin.
    pub fn requires_origin_base(&self) -> bool {
        matches!(self, KernelKind::InfinityKernel)
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) enum BaseGeometry {
    HalfPlane,
    Disk { zeta: Complex64 },
}

impl KernelKind {
    /// Flattened integrand at log-polar angle `theta`; `mu` is the clipped
    /// coefficient at the plane point `z` of the parametrized semiannulus.
    #[inline]
    pub(crate) fn eval_flat(
        &self,
        mu: Complex64,
        theta: f64,
        z: Complex64,
        base: BaseGeometry,
    ) -> f64 {
        let denom = 1.0 - mu.norm_sqr();
        match (self, base) {
            (KernelKind::DPlusMinusOne, BaseGeometry::HalfPlane) => {
                directional_from_parts(mu, rotation(theta)) - 1.0
            }
            (KernelKind::DMinusMinusOne, BaseGeometry::HalfPlane) => {
                directional_from_parts(-mu, rotation(theta)) - 1.0
            }
            (KernelKind::SquaredModulus, BaseGeometry::HalfPlane) => mu.norm_sqr() / denom,
            (KernelKind::RealQuadratic, BaseGeometry::HalfPlane) => {
                (mu * rotation(theta)).re / denom
            }
            (KernelKind::CrossAbsolute, BaseGeometry::HalfPlane) => {
                (mu.norm_sqr() + (mu * rotation(theta)).re.abs()) / denom
            }
            (KernelKind::InfinityKernel, BaseGeometry::HalfPlane) => {
                (mu.norm_sqr() - (mu * rotation(theta)).re) / denom
            }
            (KernelKind::DiskSquared, BaseGeometry::Disk { .. }) => mu.norm_sqr() / (4.0 * denom),
            (KernelKind::DiskReal, BaseGeometry::Disk { zeta }) => {
                // Re[ζ^2 μ / (z^2-ζ^2)^2] · |z^2-ζ^2|^2 keeps only the phase
                // of the singular factor.
                let d = z * z - zeta * zeta;
                let phase = d.conj() * d.conj() / d.norm_sqr();
                (mu * zeta * zeta * phase).re / (4.0 * denom)
            }
            _ => unreachable!("kernel/base mismatch is rejected before evaluation"),
        }
    }
}

/// `e^{-2iθ}`, the rotation factor `conj(z - t)/(z - t)` expressed through the
/// exact grid angle.
#[inline]
fn rotation(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, -2.0 * theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn infinity_kernel_is_half_of_d_plus() {
        let mu = Complex64::new(0.31, -0.44);
        for k in 1..10 {
            let theta = 0.3 * k as f64;
            let z = Complex64::from_polar(2.0, theta);
            let d = KernelKind::DPlusMinusOne.eval_flat(mu, theta, z, BaseGeometry::HalfPlane);
            let inf = KernelKind::InfinityKernel.eval_flat(mu, theta, z, BaseGeometry::HalfPlane);
            assert_relative_eq!(d, 2.0 * inf, max_relative = 1e-13);
        }
    }

    #[test]
    fn disk_real_phase_matches_raw_formula() {
        let zeta = Complex64::from_polar(1.0, 1.1);
        let mu = Complex64::new(0.2, 0.5);
        let z = Complex64::new(0.3, 0.4);
        let flat = KernelKind::DiskReal.eval_flat(mu, 0.0, z, BaseGeometry::Disk { zeta });
        let d = z * z - zeta * zeta;
        let raw = (zeta * zeta * mu / (d * d)).re / (1.0 - mu.norm_sqr());
        assert_relative_eq!(flat, raw * d.norm_sqr() / 4.0, max_relative = 1e-13);
    }
}
