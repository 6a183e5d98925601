//! Singular annulus-integral engine in log-polar coordinates.
//!
//! All integral conditions consumed by the certifier are double integrals of
//! [`KernelKind`] integrands over canonical semiannuli. In log-polar
//! coordinates the `1/|z-t|^2` weight flattens exactly, so a plain composite
//! midpoint rule with dyadic refinement and a Richardson error estimate is
//! both simple and robust; only the roughness of `mu` itself drives the
//! refinement.

mod engine;
mod kernel;

pub use kernel::KernelKind;

use num_complex::Complex64;
use thiserror::Error;

use crate::field::{BeltramiField, Domain};
use crate::semiannulus::{SemiannulusSpec, SemiannulusVariant, SpecError};
use engine::{refine_midpoint, CellEval, RefineOutcome};
use kernel::BaseGeometry;

/// Result of one annulus integral.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    /// Richardson difference between the two finest refinement levels.
    pub abs_error_estimate: f64,
    /// Cell count of the finest refinement level.
    pub cells: u64,
    /// Fraction of cells whose coefficient value was clipped.
    pub clipped_fraction: f64,
}

/// Tolerances and caps of the refinement loop.
#[derive(Clone, Copy, Debug)]
pub struct QuadConfig {
    /// Stop when the Richardson difference falls below `tol * max(1, |value|)`.
    pub tol: f64,
    /// Do not refine beyond this many cells per level.
    pub max_cells: u64,
    /// Escape level for the monotone-divergence detector.
    pub diverge_threshold: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            tol: 1e-6,
            max_cells: 1 << 21,
            diverge_threshold: 1e3,
        }
    }
}

impl QuadConfig {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_max_cells(mut self, max_cells: u64) -> Self {
        self.max_cells = max_cells;
        self
    }
}

#[derive(Debug, Error)]
pub enum QuadError {
    #[error("field domain {field} does not match spec domain {spec}")]
    DomainMismatch { field: Domain, spec: Domain },
    #[error("kernel {kernel:?} is not defined over {spec} specs")]
    KernelMismatch { kernel: KernelKind, spec: Domain },
    #[error("kernel requires the base point at the origin (got t = {0})")]
    BaseNotOrigin(f64),
    #[error("tolerance not reached after {} cells (best value {}, error {}{})",
        best.cells, best.value, best.abs_error_estimate,
        if *escalating { ", escalating" } else { "" })]
    ToleranceNotReached {
        best: QuadratureResult,
        escalating: bool,
    },
    #[error("supremum grid still increasing under refinement (best {best})")]
    GridTooCoarse { best: f64 },
    #[error(transparent)]
    BadSpec(#[from] SpecError),
}

/// An integral outcome that has not yet been forced through the strict
/// converged-or-error interface; the certifier consumes these directly so
/// that a divergent integral can count as evidence instead of an error.
#[derive(Clone, Copy, Debug)]
pub(crate) struct IntegralOutcome {
    pub result: QuadratureResult,
    pub converged: bool,
    pub escalating: bool,
}

fn outcome_of(raw: RefineOutcome) -> IntegralOutcome {
    IntegralOutcome {
        result: QuadratureResult {
            value: raw.value,
            abs_error_estimate: raw.error,
            cells: raw.cells,
            clipped_fraction: raw.clipped_fraction,
        },
        converged: raw.converged,
        escalating: raw.escalating,
    }
}

fn initial_grid(s_range: f64, theta_range: f64) -> (usize, usize) {
    let aspect = s_range / theta_range;
    if aspect >= 1.0 {
        (((8.0 * aspect).ceil() as usize).clamp(8, 256), 8)
    } else {
        (8, ((8.0 / aspect).ceil() as usize).clamp(8, 256))
    }
}

pub(crate) fn annulus_integral_raw(
    field: &BeltramiField,
    spec: &SemiannulusSpec,
    kernel: KernelKind,
    cfg: &QuadConfig,
) -> Result<IntegralOutcome, QuadError> {
    let spec = spec.normalized();
    if field.domain() != spec.domain() {
        return Err(QuadError::DomainMismatch {
            field: field.domain(),
            spec: spec.domain(),
        });
    }
    if kernel.domain() != spec.domain() {
        return Err(QuadError::KernelMismatch {
            kernel,
            spec: spec.domain(),
        });
    }
    let base = match spec.variant {
        SemiannulusVariant::HalfPlane { t, .. } => {
            if kernel.requires_origin_base() && t != 0.0 {
                return Err(QuadError::BaseNotOrigin(t));
            }
            BaseGeometry::HalfPlane
        }
        SemiannulusVariant::Disk { zeta, .. } => BaseGeometry::Disk {
            zeta: Complex64::new(zeta[0], zeta[1]),
        },
    };
    let (s0, s1) = spec.log_range();
    let (th0, th1) = spec.theta_range();
    let (ns, nt) = initial_grid(s1 - s0, th1 - th0);
    let integrand = |s: f64, theta: f64| -> CellEval {
        let z = spec.point_at(s, theta);
        let sample = field.mu(z);
        CellEval {
            value: kernel.eval_flat(sample.value, theta, z, base),
            clipped: sample.clipped,
        }
    };
    Ok(outcome_of(refine_midpoint(
        &integrand, s0, s1, th0, th1, ns, nt, cfg,
    )))
}

/// Double integral of `kernel` over the (possibly sector-restricted)
/// semiannulus, with the default engine configuration.
pub fn annulus_integral(
    field: &BeltramiField,
    spec: &SemiannulusSpec,
    kernel: KernelKind,
) -> Result<QuadratureResult, QuadError> {
    annulus_integral_with(field, spec, kernel, &QuadConfig::default())
}

pub fn annulus_integral_with(
    field: &BeltramiField,
    spec: &SemiannulusSpec,
    kernel: KernelKind,
    cfg: &QuadConfig,
) -> Result<QuadratureResult, QuadError> {
    let out = annulus_integral_raw(field, spec, kernel, cfg)?;
    if out.converged {
        Ok(out.result)
    } else {
        Err(QuadError::ToleranceNotReached {
            best: out.result,
            escalating: out.escalating,
        })
    }
}

/// Mean directional dilatation over `A(t; r, R) ∩ H` against the modulus
/// weight, normalized so that the conformal value is 1.
pub fn q_modulus_ratio(
    field: &BeltramiField,
    t: f64,
    r: f64,
    big_r: f64,
) -> Result<QuadratureResult, QuadError> {
    q_modulus_ratio_with(field, t, r, big_r, None, &QuadConfig::default())
}

pub fn q_modulus_ratio_with(
    field: &BeltramiField,
    t: f64,
    r: f64,
    big_r: f64,
    sector: Option<(f64, f64)>,
    cfg: &QuadConfig,
) -> Result<QuadratureResult, QuadError> {
    let mut spec = SemiannulusSpec::half_plane(t, r, big_r)?;
    if let Some((a, b)) = sector {
        spec = spec.with_sector(a, b)?;
    }
    let norm = std::f64::consts::PI * (big_r / r).ln();
    let inner = annulus_integral_with(field, &spec, KernelKind::DPlusMinusOne, cfg)?;
    Ok(QuadratureResult {
        value: 1.0 + inner.value / norm,
        abs_error_estimate: inner.abs_error_estimate / norm,
        cells: inner.cells,
        clipped_fraction: inner.clipped_fraction,
    })
}

/// Area mean of `D_{μ,t} - 1` over the half-disk `A(t; 0, r) ∩ H`, normalized
/// by `2/(π r^2)`; always `>= -1`.
pub fn holder_mean(field: &BeltramiField, t: f64, r: f64) -> Result<QuadratureResult, QuadError> {
    holder_mean_with(field, t, r, None, &QuadConfig::default())
}

pub fn holder_mean_with(
    field: &BeltramiField,
    t: f64,
    r: f64,
    sector: Option<(f64, f64)>,
    cfg: &QuadConfig,
) -> Result<QuadratureResult, QuadError> {
    if field.domain() != Domain::UpperHalfPlane {
        return Err(QuadError::DomainMismatch {
            field: field.domain(),
            spec: Domain::UpperHalfPlane,
        });
    }
    if !(r > 0.0) {
        return Err(QuadError::BadSpec(SpecError::BadRadii(0.0, r)));
    }
    let (th0, th1) = sector.unwrap_or((0.0, std::f64::consts::PI));
    let base = Complex64::new(t, 0.0);
    // polar coordinates about t; the integrand (D-1)·ρ vanishes at ρ = 0
    let integrand = |rho: f64, theta: f64| -> CellEval {
        let z = base + Complex64::from_polar(rho, theta);
        let sample = field.mu(z);
        let d = kernel_d_minus_one(sample.value, theta);
        CellEval {
            value: d * rho,
            clipped: sample.clipped,
        }
    };
    let raw = refine_midpoint(&integrand, 0.0, r, th0, th1, 8, 8, cfg);
    let norm = 2.0 / (std::f64::consts::PI * r * r);
    let result = QuadratureResult {
        value: raw.value * norm,
        abs_error_estimate: raw.error * norm,
        cells: raw.cells,
        clipped_fraction: raw.clipped_fraction,
    };
    if raw.converged {
        Ok(result)
    } else {
        Err(QuadError::ToleranceNotReached {
            best: result,
            escalating: raw.escalating,
        })
    }
}

#[inline]
fn kernel_d_minus_one(mu: Complex64, theta: f64) -> f64 {
    let q = Complex64::from_polar(1.0, -2.0 * theta);
    crate::dilatation::directional_from_parts(mu, q) - 1.0
}

pub(crate) fn holder_mean_outcome(
    field: &BeltramiField,
    t: f64,
    r: f64,
    cfg: &QuadConfig,
) -> (QuadratureResult, bool, bool) {
    match holder_mean_with(field, t, r, None, cfg) {
        Ok(res) => (res, true, false),
        Err(QuadError::ToleranceNotReached { best, escalating }) => (best, false, escalating),
        Err(_) => (
            QuadratureResult {
                value: f64::NAN,
                abs_error_estimate: f64::INFINITY,
                cells: 0,
                clipped_fraction: 0.0,
            },
            false,
            false,
        ),
    }
}

/// Configuration of the strip-supremum estimator.
#[derive(Clone, Copy, Debug)]
pub struct EtaConfig {
    /// Horizontal sampling window `[-x_halfwidth, x_halfwidth]`.
    pub x_halfwidth: f64,
    pub nx: usize,
    /// Initial number of logarithmic height samples.
    pub ny0: usize,
    pub max_ny: usize,
    /// Heights are sampled down to `s * y_floor_ratio`.
    pub y_floor_ratio: f64,
    /// Refinement stops once the supremum moves less than this.
    pub tol: f64,
}

impl Default for EtaConfig {
    fn default() -> Self {
        Self {
            x_halfwidth: 4.0,
            nx: 17,
            ny0: 512,
            max_ny: 1 << 17,
            y_floor_ratio: 1e-8,
            tol: 1e-3,
        }
    }
}

fn eta_level(field: &BeltramiField, s: f64, cfg: &EtaConfig, ny: usize) -> f64 {
    use rayon::prelude::*;
    let depth = (1.0 / cfg.y_floor_ratio).ln();
    (1..=ny)
        .into_par_iter()
        .map(|j| {
            let y = s * (-(j as f64) * depth / ny as f64).exp();
            let mut best: f64 = 0.0;
            for i in 0..cfg.nx {
                let x = if cfg.nx == 1 {
                    0.0
                } else {
                    -cfg.x_halfwidth + 2.0 * cfg.x_halfwidth * i as f64 / (cfg.nx - 1) as f64
                };
                best = best.max(field.mu(Complex64::new(x, y)).value.norm());
            }
            best
        })
        .reduce(|| 0.0, f64::max)
}

pub(crate) fn carleson_eta_best(field: &BeltramiField, s: f64, cfg: &EtaConfig) -> (f64, bool) {
    let mut ny = cfg.ny0;
    let mut prev = eta_level(field, s, cfg, ny);
    while ny * 2 <= cfg.max_ny {
        ny *= 2;
        let next = eta_level(field, s, cfg, ny);
        if (next - prev).abs() <= cfg.tol {
            return (next, true);
        }
        prev = next;
    }
    (prev, false)
}

/// Grid supremum of `|mu|` over the strip `0 < Im z < s`; a documented lower
/// bound of the essential supremum, refined until it stabilizes.
pub fn carleson_eta(field: &BeltramiField, s: f64, cfg: &EtaConfig) -> Result<f64, QuadError> {
    if field.domain() != Domain::UpperHalfPlane {
        return Err(QuadError::DomainMismatch {
            field: field.domain(),
            spec: Domain::UpperHalfPlane,
        });
    }
    let (value, converged) = carleson_eta_best(field, s, cfg);
    if converged {
        Ok(value)
    } else {
        Err(QuadError::GridTooCoarse { best: value })
    }
}

/// `∫_{s0}^{s1} η(s)/s ds` by the logarithmic substitution `s = e^u`.
pub fn carleson_integral(
    field: &BeltramiField,
    s0: f64,
    s1: f64,
    eta_cfg: &EtaConfig,
    cfg: &QuadConfig,
) -> Result<QuadratureResult, QuadError> {
    if !(s0 > 0.0 && s1 > s0) {
        return Err(QuadError::BadSpec(SpecError::BadRadii(s0, s1)));
    }
    let (u0, u1) = (s0.ln(), s1.ln());
    let mut n = 16usize;
    let mut history: Vec<f64> = Vec::new();
    let mut all_eta_converged = true;
    loop {
        let du = (u1 - u0) / n as f64;
        let mut vals = Vec::with_capacity(n);
        for i in 0..n {
            let u = u0 + (i as f64 + 0.5) * du;
            let (eta, conv) = carleson_eta_best(field, u.exp(), eta_cfg);
            all_eta_converged &= conv;
            vals.push(eta);
        }
        let value = engine::pairwise_sum(&vals) * du;
        history.push(value);
        let len = history.len();
        if len >= 2 {
            let diff = (history[len - 1] - history[len - 2]).abs();
            if diff <= cfg.tol.max(1e-6) * value.abs().max(1.0) || n >= 1024 {
                let result = QuadratureResult {
                    value,
                    abs_error_estimate: diff,
                    cells: n as u64,
                    clipped_fraction: 0.0,
                };
                return if diff <= cfg.tol.max(1e-6) * value.abs().max(1.0) && all_eta_converged {
                    Ok(result)
                } else {
                    Err(QuadError::ToleranceNotReached {
                        best: result,
                        escalating: false,
                    })
                };
            }
        }
        n *= 2;
    }
}

/// Verdict of a limit probe along a parameter schedule.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub enum LimitStatus {
    ConvergesTo(f64),
    Diverges,
    Inconclusive,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct LimitVerdict {
    pub status: LimitStatus,
    /// `(parameter, value)` pairs in schedule order.
    pub trace: Vec<(f64, f64)>,
}

impl LimitVerdict {
    pub fn converged_value(&self) -> Option<f64> {
        match self.status {
            LimitStatus::ConvergesTo(v) => Some(v),
            _ => None,
        }
    }
}

/// Probes the limit of `evaluator` along a strictly monotone schedule.
///
/// The last three evaluations decide: a Cauchy cluster (pairwise differences
/// within `cauchy_tol`) converges to the final value; magnitudes escaping
/// monotonically beyond `diverge_threshold` diverge; anything else is
/// inconclusive, the safe verdict.
pub fn limit_probe<F: FnMut(f64) -> f64>(
    mut evaluator: F,
    schedule: &[f64],
    cauchy_tol: f64,
    diverge_threshold: f64,
) -> LimitVerdict {
    let trace: Vec<(f64, f64)> = schedule.iter().map(|&p| (p, evaluator(p))).collect();
    limit_probe_trace(trace, cauchy_tol, diverge_threshold)
}

pub fn limit_probe_trace(
    trace: Vec<(f64, f64)>,
    cauchy_tol: f64,
    diverge_threshold: f64,
) -> LimitVerdict {
    let monotone = trace.windows(2).all(|w| w[1].0 > w[0].0)
        || trace.windows(2).all(|w| w[1].0 < w[0].0);
    if trace.len() < 4 || !monotone {
        return LimitVerdict {
            status: LimitStatus::Inconclusive,
            trace,
        };
    }
    let tail: Vec<f64> = trace[trace.len() - 3..].iter().map(|p| p.1).collect();
    let cauchy = (tail[0] - tail[1]).abs() <= cauchy_tol
        && (tail[1] - tail[2]).abs() <= cauchy_tol
        && (tail[0] - tail[2]).abs() <= cauchy_tol;
    if cauchy {
        return LimitVerdict {
            status: LimitStatus::ConvergesTo(tail[2]),
            trace,
        };
    }
    let mags: Vec<f64> = tail.iter().map(|v| v.abs()).collect();
    if mags[0] < mags[1] && mags[1] < mags[2] && mags.iter().all(|m| *m > diverge_threshold) {
        return LimitVerdict {
            status: LimitStatus::Diverges,
            trace,
        };
    }
    LimitVerdict {
        status: LimitStatus::Inconclusive,
        trace,
    }
}

/// Geometric schedule `start * ratio^k`, `k = 0..len`.
pub fn geometric_schedule(start: f64, ratio: f64, len: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(len);
    let mut v = start;
    for _ in 0..len {
        out.push(v);
        v *= ratio;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::BeltramiField;
    use approx::assert_relative_eq;

    fn radial_stretch(k: f64) -> BeltramiField {
        let c = (k - 1.0) / (k + 1.0);
        BeltramiField::new(Domain::UpperHalfPlane, "radial_stretch", move |z| {
            if z.norm_sqr() == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                z / z.conj() * c
            }
        })
    }

    #[test]
    fn zero_field_squared_modulus_vanishes() {
        let field = BeltramiField::zero(Domain::UpperHalfPlane);
        let spec = SemiannulusSpec::half_plane(0.3, 0.5, 2.0).unwrap();
        let res = annulus_integral(&field, &spec, KernelKind::SquaredModulus).unwrap();
        assert_eq!(res.value, 0.0);
        assert_eq!(res.clipped_fraction, 0.0);
    }

    #[test]
    fn radial_stretch_squared_modulus_closed_form() {
        // c = 1/3; integrand is the constant c^2/(1-c^2) = 1/8 in log-polar
        let field = radial_stretch(2.0);
        let spec = SemiannulusSpec::half_plane(0.0, 1.0, std::f64::consts::E).unwrap();
        let res = annulus_integral(&field, &spec, KernelKind::SquaredModulus).unwrap();
        assert_relative_eq!(res.value, std::f64::consts::PI / 8.0, epsilon = 1e-10);
        assert!(res.abs_error_estimate <= 1e-10);
    }

    #[test]
    fn radial_stretch_real_quadratic_closed_form() {
        let field = radial_stretch(2.0);
        let spec = SemiannulusSpec::half_plane(0.0, 1.0, std::f64::consts::E).unwrap();
        let res = annulus_integral(&field, &spec, KernelKind::RealQuadratic).unwrap();
        assert_relative_eq!(res.value, 3.0 * std::f64::consts::PI / 8.0, epsilon = 1e-10);
        assert_relative_eq!(res.value, 1.1780972, epsilon = 1e-6);
    }

    #[test]
    fn q_ratio_radial_stretch() {
        let field = radial_stretch(2.0);
        let q = q_modulus_ratio(&field, 0.0, 0.01, 1.0).unwrap();
        assert_relative_eq!(q.value, 0.5, epsilon = 1e-9);
        let c = -1.0 / 3.0;
        let neg = BeltramiField::new(Domain::UpperHalfPlane, "neg", move |z| z / z.conj() * c);
        let q2 = q_modulus_ratio(&neg, 0.0, 0.01, 1.0).unwrap();
        assert_relative_eq!(q2.value, 2.0, epsilon = 1e-9);
        let zero = BeltramiField::zero(Domain::UpperHalfPlane);
        assert_relative_eq!(
            q_modulus_ratio(&zero, 0.0, 0.1, 1.0).unwrap().value,
            1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn holder_mean_radial_stretch() {
        let zero = BeltramiField::zero(Domain::UpperHalfPlane);
        assert_eq!(holder_mean(&zero, 0.0, 1.0).unwrap().value, 0.0);
        // K = 1/2: D ≡ 2, mean of D-1 is 1
        let half = radial_stretch(0.5);
        assert_relative_eq!(holder_mean(&half, 0.0, 0.7).unwrap().value, 1.0, epsilon = 1e-8);
        // K = 2: D ≡ 1/2
        let two = radial_stretch(2.0);
        assert_relative_eq!(holder_mean(&two, 0.0, 0.7).unwrap().value, -0.5, epsilon = 1e-8);
    }

    #[test]
    fn kernel_domain_checks() {
        let field = BeltramiField::zero(Domain::UpperHalfPlane);
        let disk_spec = SemiannulusSpec::disk(Complex64::new(1.0, 0.0), 0.2, 0.8).unwrap();
        assert!(matches!(
            annulus_integral(&field, &disk_spec, KernelKind::SquaredModulus),
            Err(QuadError::DomainMismatch { .. })
        ));
        let spec = SemiannulusSpec::half_plane(0.0, 0.2, 0.8).unwrap();
        assert!(matches!(
            annulus_integral(&field, &spec, KernelKind::DiskSquared),
            Err(QuadError::KernelMismatch { .. })
        ));
        let off = SemiannulusSpec::half_plane(1.0, 0.2, 0.8).unwrap();
        assert!(matches!(
            annulus_integral(&field, &off, KernelKind::InfinityKernel),
            Err(QuadError::BaseNotOrigin(_))
        ));
    }

    #[test]
    fn carleson_eta_examples() {
        let zero = BeltramiField::zero(Domain::UpperHalfPlane);
        let cfg = EtaConfig::default();
        assert_eq!(carleson_eta(&zero, 0.5, &cfg).unwrap(), 0.0);

        // mu(x+iy) = y below height 1: eta(s) = min(s, 1) up to grid bias
        let ramp = BeltramiField::new(Domain::UpperHalfPlane, "ramp", |z| {
            if z.im < 1.0 {
                Complex64::new(z.im, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let eta = carleson_eta(&ramp, 0.5, &cfg).unwrap();
        assert!(eta <= 0.5 && eta > 0.499, "eta = {eta}");
        let eta = carleson_eta(&ramp, 3.0, &cfg).unwrap();
        assert!(eta <= 1.0 && eta > 0.999, "eta = {eta}");
    }

    #[test]
    fn carleson_integral_ramp() {
        let ramp = BeltramiField::new(Domain::UpperHalfPlane, "ramp", |z| {
            if z.im < 1.0 {
                Complex64::new(z.im, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let res = carleson_integral(
            &ramp,
            1e-6,
            1.0,
            &EtaConfig::default(),
            &QuadConfig::default(),
        )
        .unwrap();
        // exact value 1 - 1e-6; the grid supremum is a slight under-approximation
        assert!((res.value - 1.0).abs() < 0.01, "value = {}", res.value);
    }

    #[test]
    fn limit_probe_examples() {
        let sched = geometric_schedule(0.5, 0.5, 24);
        let v = limit_probe(|r| r, &sched, 1e-4, 1e3);
        match v.status {
            LimitStatus::ConvergesTo(x) => assert!(x.abs() < 1e-4),
            other => panic!("expected convergence, got {other:?}"),
        }
        let v = limit_probe(|r| (1.0 / r).ln(), &sched, 1e-4, 10.0);
        assert_eq!(v.status, LimitStatus::Diverges);
        let v = limit_probe(|r| (1.0 / r).ln().ln().sin(), &sched, 1e-4, 10.0);
        assert_eq!(v.status, LimitStatus::Inconclusive);
    }

    #[test]
    fn short_or_unsorted_schedules_are_inconclusive() {
        let v = limit_probe(|r| r, &[1.0, 0.5, 0.25], 1e-4, 1e3);
        assert_eq!(v.status, LimitStatus::Inconclusive);
        let v = limit_probe(|r| r, &[1.0, 0.5, 0.7, 0.2], 1e-4, 1e3);
        assert_eq!(v.status, LimitStatus::Inconclusive);
    }
}
