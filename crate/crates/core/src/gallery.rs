//! Explicit homeomorphisms with closed-form Beltrami coefficients.
//!
//! These maps are the ground-truth fixtures of the crate: each knows its
//! forward evaluator, its boundary restriction where one exists, and a closed
//! form for its coefficient that is kept honest by the finite-difference
//! Wirtinger oracle ([`wirtinger_check`]).
//!
//! - `radial_stretch`: `z |z|^{K-1}`, the standard radial model map.
//! - `tanh_strip`: conformal on the strip `0 < Im z < 1`, linear in height
//!   above it; fixes the real axis but has no limit at infinity.
//! - `shear`: horizontal displacement by `y sin(1/y)`; smooth inside the
//!   half-plane, yet the vertical segments have images of unbounded length.
//! - `radial_twist`: rotates each circle `|z| = r` by `-log(1-r)`; no
//!   continuous boundary extension.
//! - `prime_end_twist`: warps angles by `θ ↦ π (θ/π)^{-log(1-r)}`; extends
//!   continuously to `z = 1` although its boundary behaviour stays wild.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::field::{BeltramiField, Domain};

#[derive(Debug, Error)]
pub enum GalleryError {
    #[error("unknown gallery name: {0}")]
    UnknownName(String),
    #[error("bad parameters for {name}: {reason}")]
    BadParams { name: String, reason: String },
    #[error("finite-difference stencil leaves the domain at {0}")]
    StencilOutOfDomain(Complex64),
}

type MapFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;
type BoundaryFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A named homeomorphism with optional boundary map and coefficient form.
#[derive(Clone)]
pub struct NamedMap {
    name: String,
    domain: Domain,
    forward: MapFn,
    boundary: Option<BoundaryFn>,
    mu: Option<MapFn>,
    params: BTreeMap<String, f64>,
}

impl NamedMap {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn params(&self) -> &BTreeMap<String, f64> {
        &self.params
    }

    pub fn forward(&self, z: Complex64) -> Complex64 {
        (self.forward)(z)
    }

    pub fn has_boundary_map(&self) -> bool {
        self.boundary.is_some()
    }

    /// Boundary restriction `t ↦ f(t)` where the map extends continuously.
    pub fn boundary(&self, t: f64) -> Option<f64> {
        self.boundary.as_ref().map(|b| b(t))
    }

    pub fn has_mu_closed_form(&self) -> bool {
        self.mu.is_some()
    }

    pub fn mu_closed_form(&self, z: Complex64) -> Option<Complex64> {
        self.mu.as_ref().map(|m| m(z))
    }

    /// The coefficient of the map as a [`BeltramiField`].
    pub fn field(&self) -> Option<BeltramiField> {
        let mu = self.mu.clone()?;
        Some(
            BeltramiField::new(self.domain, self.name.clone(), move |z| mu(z))
                .with_params(self.params.clone()),
        )
    }
}

impl std::fmt::Debug for NamedMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("NamedMap")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("params", &self.params)
            .finish()
    }
}

/// Stable complex tanh: exact `±1` saturation for large real parts.
pub(crate) fn ctanh(z: Complex64) -> Complex64 {
    let ta = z.re.tanh();
    let tb = z.im.tan();
    if !tb.is_finite() || tb.abs() > 1e12 {
        return Complex64::new(1.0 / ta, 0.0);
    }
    let denom = 1.0 + ta * ta * tb * tb;
    Complex64::new(ta * (1.0 + tb * tb) / denom, tb * (1.0 - ta * ta) / denom)
}

fn stretch_exponent(k: f64, z: Complex64) -> Complex64 {
    let r = z.norm();
    if r == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        z * r.powf(k - 1.0)
    }
}

fn mu_radial_stretch(k: f64, z: Complex64) -> Complex64 {
    if z.norm_sqr() == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        z / z.conj() * ((k - 1.0) / (k + 1.0))
    }
}

const QUARTER_PI: f64 = std::f64::consts::FRAC_PI_4;

fn tanh_strip_forward(z: Complex64) -> Complex64 {
    if z.im <= 1.0 {
        ctanh(QUARTER_PI * z)
    } else {
        let t = ctanh(QUARTER_PI * Complex64::new(z.re, 1.0));
        t * z.im
    }
}

fn mu_tanh_strip(z: Complex64) -> Complex64 {
    if z.im < 1.0 {
        return Complex64::new(0.0, 0.0);
    }
    // above the strip (and on its seam, taking the value from above):
    // f = y T(x), f_x = y T'(x), f_y = T(x)
    let t = ctanh(QUARTER_PI * Complex64::new(z.re, 1.0));
    let t_prime = (Complex64::new(1.0, 0.0) - t * t) * QUARTER_PI;
    let fx = t_prime * z.im;
    let i = Complex64::new(0.0, 1.0);
    (fx + i * t) / (fx - i * t)
}

fn shear_phi(y: f64) -> f64 {
    if y.abs() > 0.0 && y.abs() < std::f64::consts::FRAC_1_PI {
        y * (1.0 / y).sin()
    } else {
        0.0
    }
}

fn shear_phi_prime(y: f64) -> f64 {
    if y.abs() > 0.0 && y.abs() < std::f64::consts::FRAC_1_PI {
        (1.0 / y).sin() - (1.0 / y).cos() / y
    } else {
        0.0
    }
}

fn shear_forward(z: Complex64) -> Complex64 {
    Complex64::new(z.re + shear_phi(z.im), z.im)
}

fn mu_shear(z: Complex64) -> Complex64 {
    let dp = shear_phi_prime(z.im);
    let i = Complex64::new(0.0, 1.0);
    i * dp / (Complex64::new(2.0, 0.0) - i * dp)
}

fn radial_twist_forward(z: Complex64) -> Complex64 {
    let r = z.norm();
    if r == 0.0 {
        return z;
    }
    z * Complex64::from_polar(1.0, -(1.0 - r).ln())
}

fn mu_radial_twist(z: Complex64) -> Complex64 {
    let r = z.norm();
    if r == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let i = Complex64::new(0.0, 1.0);
    i * z * z / (r * Complex64::new(2.0 - 2.0 * r, r))
}

fn prime_end_twist_forward(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        return prime_end_twist_forward(z.conj()).conj();
    }
    let r = z.norm();
    if r == 0.0 {
        return z;
    }
    let theta = z.arg(); // in [0, pi] here
    let beta = -(1.0 - r).ln();
    let u = (theta / std::f64::consts::PI).max(0.0);
    let angle = std::f64::consts::PI * u.powf(beta);
    Complex64::from_polar(r, angle)
}

fn mu_prime_end_twist(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        return mu_prime_end_twist(z.conj()).conj();
    }
    let r = z.norm();
    if r == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let theta = z.arg();
    let beta = -(1.0 - r).ln();
    // the seam theta = 0 takes its value from the branch above it
    let u = (theta / std::f64::consts::PI).max(1e-300);
    let a = beta * u.powf(beta - 1.0);
    let c = std::f64::consts::PI * r * u.powf(beta) * u.ln() / (1.0 - r);
    let rotation = Complex64::from_polar(1.0, 2.0 * theta);
    rotation * Complex64::new(1.0 - a, c) / Complex64::new(1.0 + a, c)
}

fn require(
    params: &BTreeMap<String, f64>,
    name: &str,
    key: &str,
) -> Result<f64, GalleryError> {
    params.get(key).copied().ok_or_else(|| GalleryError::BadParams {
        name: name.into(),
        reason: format!("missing parameter `{key}`"),
    })
}

fn flag(params: &BTreeMap<String, f64>, key: &str) -> bool {
    params.get(key).copied().unwrap_or(0.0) != 0.0
}

/// Builds one of the gallery homeomorphisms by name.
///
/// `radial_stretch` takes `K > 0` and an optional `disk` flag (nonzero selects
/// the unit disk); the other maps take no parameters.
pub fn gallery_map(name: &str, params: &BTreeMap<String, f64>) -> Result<NamedMap, GalleryError> {
    match name {
        "radial_stretch" => {
            let k = require(params, name, "K")?;
            if !(k > 0.0 && k.is_finite()) {
                return Err(GalleryError::BadParams {
                    name: name.into(),
                    reason: format!("K must be positive (got {k})"),
                });
            }
            let domain = if flag(params, "disk") {
                Domain::UnitDisk
            } else {
                Domain::UpperHalfPlane
            };
            let mut p = BTreeMap::new();
            p.insert("K".to_string(), k);
            if domain == Domain::UnitDisk {
                p.insert("disk".to_string(), 1.0);
            }
            Ok(NamedMap {
                name: name.into(),
                domain,
                forward: Arc::new(move |z| stretch_exponent(k, z)),
                boundary: Some(Arc::new(move |t: f64| t.signum() * t.abs().powf(k))),
                mu: Some(Arc::new(move |z| mu_radial_stretch(k, z))),
                params: p,
            })
        }
        "tanh_strip" => Ok(NamedMap {
            name: name.into(),
            domain: Domain::UpperHalfPlane,
            forward: Arc::new(tanh_strip_forward),
            boundary: Some(Arc::new(|t: f64| (QUARTER_PI * t).tanh())),
            mu: Some(Arc::new(mu_tanh_strip)),
            params: BTreeMap::new(),
        }),
        "shear" => Ok(NamedMap {
            name: name.into(),
            domain: Domain::UpperHalfPlane,
            forward: Arc::new(shear_forward),
            boundary: Some(Arc::new(|t: f64| t)),
            mu: Some(Arc::new(mu_shear)),
            params: BTreeMap::new(),
        }),
        "radial_twist" => Ok(NamedMap {
            name: name.into(),
            domain: Domain::UnitDisk,
            forward: Arc::new(radial_twist_forward),
            boundary: None,
            mu: Some(Arc::new(mu_radial_twist)),
            params: BTreeMap::new(),
        }),
        "prime_end_twist" => Ok(NamedMap {
            name: name.into(),
            domain: Domain::UnitDisk,
            forward: Arc::new(prime_end_twist_forward),
            boundary: None,
            mu: Some(Arc::new(mu_prime_end_twist)),
            params: BTreeMap::new(),
        }),
        other => Err(GalleryError::UnknownName(other.into())),
    }
}

/// Names and parameter schemas of the gallery maps.
pub fn gallery_listing() -> Vec<(&'static str, &'static str, &'static str)> {
    vec![
        ("radial_stretch", "half_plane|disk", "K (required, > 0); disk (optional flag)"),
        ("tanh_strip", "half_plane", "none"),
        ("shear", "half_plane", "none"),
        ("radial_twist", "disk", "none"),
        ("prime_end_twist", "disk", "none"),
    ]
}

/// Builtin coefficient fields addressable by name, shared between the gallery
/// maps and the synthetic fields used by the integral engines.
///
/// Names: `zero`, `constant` (`re`, `im`), `ramp`, `bump` (`center_re`,
/// `center_im`, `radius`, `re`, `im`), plus every gallery map name, which
/// yields its closed-form coefficient. A nonzero `disk` parameter selects the
/// unit disk where both domains make sense.
pub fn field_by_name(
    name: &str,
    params: &BTreeMap<String, f64>,
) -> Result<BeltramiField, GalleryError> {
    let domain = if flag(params, "disk") {
        Domain::UnitDisk
    } else {
        Domain::UpperHalfPlane
    };
    match name {
        "zero" => Ok(BeltramiField::zero(domain).with_params(params.clone())),
        "constant" => {
            let c = Complex64::new(
                params.get("re").copied().unwrap_or(0.0),
                params.get("im").copied().unwrap_or(0.0),
            );
            if c.norm() >= 1.0 {
                return Err(GalleryError::BadParams {
                    name: name.into(),
                    reason: format!("|constant| must be < 1 (got {})", c.norm()),
                });
            }
            Ok(BeltramiField::constant(domain, c).with_params(params.clone()))
        }
        "ramp" => Ok(BeltramiField::new(Domain::UpperHalfPlane, "ramp", |z| {
            if z.im < 1.0 {
                Complex64::new(z.im, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .with_params(params.clone())),
        "bump" => {
            let center = Complex64::new(
                require(params, name, "center_re")?,
                require(params, name, "center_im")?,
            );
            let radius = require(params, name, "radius")?;
            let c = Complex64::new(
                params.get("re").copied().unwrap_or(0.5),
                params.get("im").copied().unwrap_or(0.0),
            );
            if c.norm() >= 1.0 || !(radius > 0.0) {
                return Err(GalleryError::BadParams {
                    name: name.into(),
                    reason: "need |value| < 1 and radius > 0".into(),
                });
            }
            Ok(BeltramiField::new(domain, "bump", move |z| {
                if (z - center).norm() < radius {
                    c
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .with_params(params.clone()))
        }
        _ => {
            let map = gallery_map(name, params)?;
            map.field().ok_or_else(|| GalleryError::BadParams {
                name: name.into(),
                reason: "map has no closed-form coefficient".into(),
            })
        }
    }
}

/// A central-difference Wirtinger sample of a map at an interior point.
#[derive(Clone, Copy, Debug)]
pub struct WirtingerSample {
    pub fz: Complex64,
    pub fzbar: Complex64,
    pub mu_fd: Complex64,
}

/// Finite-difference Wirtinger derivatives and coefficient estimate.
///
/// `h` must keep the four-point stencil inside the domain and away from any
/// seam of the map; accuracy is `O(h^2)` at smooth points.
pub fn wirtinger_check(
    map: &NamedMap,
    z: Complex64,
    h: f64,
) -> Result<WirtingerSample, GalleryError> {
    let i = Complex64::new(0.0, 1.0);
    let stencil = [
        z + h,
        z - h,
        z + i * h,
        z - i * h,
    ];
    for p in stencil {
        if !map.domain.contains(p) {
            return Err(GalleryError::StencilOutOfDomain(p));
        }
    }
    let fe = map.forward(stencil[0]);
    let fw = map.forward(stencil[1]);
    let fn_ = map.forward(stencil[2]);
    let fs = map.forward(stencil[3]);
    let dx = fe - fw;
    let dy = fn_ - fs;
    let fz = (dx - i * dy) / (4.0 * h);
    let fzbar = (dx + i * dy) / (4.0 * h);
    Ok(WirtingerSample {
        fz,
        fzbar,
        mu_fd: fzbar / fz,
    })
}
