//! Closed-form sharp bounds for semiannuli and their numerical verification.
//!
//! The three bounds estimate the size of the complementary components of an
//! embedded semiannulus from its modulus alone. `complement_min_diameter`
//! measures the actual components of a mapped disk semiannulus by dense
//! boundary sampling, which is what the fuzz campaign compares against the
//! closed forms.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::geom::point_set_diameter;
use crate::modulus::{discrete_modulus, mesh_region, ModulusError};
use crate::semiannulus::{disk_from_halfplane, SemiannulusSpec, SemiannulusVariant, SpecError};

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("the half-plane offset bound needs modulus > π (got {0})")]
    HypothesisViolated(f64),
    #[error("modulus must be positive (got {0})")]
    NonPositiveModulus(f64),
    #[error("distance must be positive (got {0})")]
    NonPositiveDistance(f64),
    #[error("operation defined for unrestricted disk semiannuli only")]
    UnsupportedSpec,
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Modulus(#[from] ModulusError),
}

/// The fixed constants of the three bounds.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct BoundConstants {
    /// `4 e^{π/2}`, disk diameter bound.
    pub c_disk: f64,
    /// `e^{π}`, half-plane offset bound.
    pub c_halfplane: f64,
    /// `π`, the modulus lost when extracting a round subannulus.
    pub separation_loss: f64,
}

impl Default for BoundConstants {
    fn default() -> Self {
        Self {
            c_disk: 4.0 * (std::f64::consts::FRAC_PI_2).exp(),
            c_halfplane: std::f64::consts::PI.exp(),
            separation_loss: std::f64::consts::PI,
        }
    }
}

/// `min{diam U1, diam U2} <= 4 e^{π/2} e^{-mod/2}` for the two complementary
/// components of a semiannulus properly embedded in the unit disk.
pub fn disk_diameter_bound(mod_s: f64) -> f64 {
    debug_assert!(mod_s >= 0.0);
    BoundConstants::default().c_disk * (-0.5 * mod_s).exp()
}

/// Sharp bound `2 / cosh(mod/2)` for semiannuli with geodesic sides, together
/// with the extremal witness `T(1; r, 1/r)`, `r = e^{-mod/2}`.
pub fn hyperbolic_sharp_bound(mod_t: f64) -> Result<(f64, SemiannulusSpec), BoundsError> {
    if !(mod_t > 0.0) {
        return Err(BoundsError::NonPositiveModulus(mod_t));
    }
    let bound = 2.0 / (0.5 * mod_t).cosh();
    let r = (-0.5 * mod_t).exp();
    let witness = SemiannulusSpec::disk(Complex64::new(1.0, 0.0), r, 1.0 / r)?;
    Ok((bound, witness))
}

/// `sup_{z in U1} |z - t0| <= e^{π} dist(t0, U2) e^{-mod}` for a half-plane
/// semiannulus with unbounded outer component; valid only past modulus `π`.
pub fn halfplane_offset_bound(mod_s: f64, dist_t0_u2: f64) -> Result<f64, BoundsError> {
    if !(mod_s > std::f64::consts::PI) {
        return Err(BoundsError::HypothesisViolated(mod_s));
    }
    if !(dist_t0_u2 > 0.0) {
        return Err(BoundsError::NonPositiveDistance(dist_t0_u2));
    }
    Ok(BoundConstants::default().c_halfplane * dist_t0_u2 * (-mod_s).exp())
}

/// Minimum over the two complementary components of the Euclidean diameter of
/// the image component, for a disk semiannulus `T(ζ; r1, r2)` mapped by `map`.
///
/// Each component is a Jordan region, so the diameter is attained on the
/// boundary: the image of its side arc plus the image of its arc of the unit
/// circle, both sampled with `samples` points. The map must extend
/// continuously to the closed disk for the circle arcs to make sense.
pub fn complement_min_diameter<F: Fn(Complex64) -> Complex64>(
    map: F,
    spec: &SemiannulusSpec,
    samples: usize,
) -> Result<f64, BoundsError> {
    let (zeta, r1, r2) = match (spec.variant, spec.sector) {
        (SemiannulusVariant::Disk { zeta, r1, r2 }, None) => {
            (Complex64::new(zeta[0], zeta[1]), r1, r2)
        }
        _ => return Err(BoundsError::UnsupportedSpec),
    };
    let n = samples.max(16) / 2;

    // inner component: side at radius r1 and the circle arc M((-r1, r1))
    let mut inner: Vec<Complex64> = Vec::with_capacity(2 * n);
    for k in 0..n {
        let th = std::f64::consts::PI * k as f64 / (n - 1) as f64;
        inner.push(map(disk_from_halfplane(zeta, Complex64::from_polar(r1, th))));
    }
    for k in 0..n {
        let x = -r1 + 2.0 * r1 * k as f64 / (n - 1) as f64;
        inner.push(map(disk_from_halfplane(zeta, Complex64::new(x, 0.0))));
    }

    // outer component: side at radius r2 and the circle arcs M(±r2/u)
    let mut outer: Vec<Complex64> = Vec::with_capacity(2 * n + 1);
    for k in 0..n {
        let th = std::f64::consts::PI * k as f64 / (n - 1) as f64;
        outer.push(map(disk_from_halfplane(zeta, Complex64::from_polar(r2, th))));
    }
    for k in 1..=n / 2 {
        let u = k as f64 / (n / 2) as f64;
        outer.push(map(disk_from_halfplane(zeta, Complex64::new(r2 / u, 0.0))));
        outer.push(map(disk_from_halfplane(zeta, Complex64::new(-r2 / u, 0.0))));
    }
    outer.push(map(-zeta)); // the antipode, image of x = ∞

    Ok(point_set_diameter(&inner).min(point_set_diameter(&outer)))
}

/// One record of the randomized diameter-bound campaign.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct FuzzRecord {
    pub zeta_re: f64,
    pub zeta_im: f64,
    pub r1: f64,
    pub r2: f64,
    pub aut_re: f64,
    pub aut_im: f64,
    pub rotation: f64,
    pub mod_estimate: f64,
    pub discrepancy: f64,
    pub lhs_min_diameter: f64,
    pub rhs_bound: f64,
    pub margin: f64,
}

/// Runs `count` seeded random configurations: random disk semiannulus, random
/// disk automorphism, discrete modulus of the image mesh, and both sides of
/// the diameter bound. `margin = rhs - lhs` should never be substantially
/// negative.
pub fn diameter_bound_fuzz(
    seed: u64,
    count: usize,
    mesh_n: usize,
    samples: usize,
) -> Result<Vec<FuzzRecord>, BoundsError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let phase = rng.gen_range(0.0..std::f64::consts::TAU);
        let zeta = Complex64::from_polar(1.0, phase);
        let log_r1 = rng.gen_range(-2.5..-0.4);
        let log_ratio = rng.gen_range(0.5..6.0);
        let r1 = log_r1.exp();
        let r2 = (log_r1 + log_ratio).exp();
        let a = Complex64::from_polar(rng.gen_range(0.0..0.7), rng.gen_range(0.0..std::f64::consts::TAU));
        let rot = rng.gen_range(0.0..std::f64::consts::TAU);
        let aut = move |z: Complex64| {
            Complex64::from_polar(1.0, rot) * (z - a) / (Complex64::new(1.0, 0.0) - a.conj() * z)
        };
        let spec = SemiannulusSpec::disk(zeta, r1, r2)?;
        let mesh = mesh_region(aut, &spec, mesh_n, mesh_n)?;
        let est = discrete_modulus(&mesh)?;
        let lhs = complement_min_diameter(aut, &spec, samples)?;
        let rhs = disk_diameter_bound(est.value);
        out.push(FuzzRecord {
            zeta_re: zeta.re,
            zeta_im: zeta.im,
            r1,
            r2,
            aut_re: a.re,
            aut_im: a.im,
            rotation: rot,
            mod_estimate: est.value,
            discrepancy: est.discrepancy,
            lhs_min_diameter: lhs,
            rhs_bound: rhs,
            margin: rhs - lhs,
        });
    }
    Ok(out)
}
