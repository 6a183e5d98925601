//! Beltrami coefficient fields on the upper half-plane or the unit disk.
//!
//! A [`BeltramiField`] wraps a pure point evaluator `z -> mu(z)` together with
//! the domain it lives on and a clipping policy keeping `|mu| <= 1 - clip_epsilon`
//! at every evaluated point. Fields with `|mu| -> 1` somewhere are legitimate
//! inputs, so out-of-range values are clipped (and counted) rather than rejected.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

/// Domain a field or map lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Domain {
    #[serde(rename = "half_plane")]
    UpperHalfPlane,
    #[serde(rename = "disk")]
    UnitDisk,
}

impl Domain {
    /// Open-domain membership test.
    pub fn contains(self, z: Complex64) -> bool {
        match self {
            Domain::UpperHalfPlane => z.im > 0.0,
            Domain::UnitDisk => z.norm_sqr() < 1.0,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::UpperHalfPlane => write!(f, "half_plane"),
            Domain::UnitDisk => write!(f, "disk"),
        }
    }
}

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("clip epsilon {0} outside (0, 0.5)")]
    BadClipEpsilon(f64),
}

/// One evaluation of a field: the (possibly clipped) coefficient value.
#[derive(Clone, Copy, Debug)]
pub struct MuSample {
    pub value: Complex64,
    /// True when the raw evaluator value had to be pulled back inside the
    /// admissible range (|mu| > 1 - clip_epsilon, or a non-finite value).
    pub clipped: bool,
}

type Evaluator = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// A Beltrami coefficient `mu` given by a deterministic pure evaluator.
///
/// All evaluations are clipped so that `|mu(z)| <= 1 - clip_epsilon`; the
/// default epsilon is `1e-9`. Values are immutable after construction and the
/// evaluator must be pure, so a field can be shared freely across threads.
#[derive(Clone)]
pub struct BeltramiField {
    domain: Domain,
    evaluator: Evaluator,
    clip_epsilon: f64,
    label: String,
    params: BTreeMap<String, f64>,
}

impl fmt::Debug for BeltramiField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BeltramiField")
            .field("domain", &self.domain)
            .field("label", &self.label)
            .field("clip_epsilon", &self.clip_epsilon)
            .field("params", &self.params)
            .finish()
    }
}

pub const DEFAULT_CLIP_EPSILON: f64 = 1e-9;

impl BeltramiField {
    pub fn new<F>(domain: Domain, label: impl Into<String>, evaluator: F) -> Self
    where
        F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        Self {
            domain,
            evaluator: Arc::new(evaluator),
            clip_epsilon: DEFAULT_CLIP_EPSILON,
            label: label.into(),
            params: BTreeMap::new(),
        }
    }

    /// The identically-zero coefficient (conformal field).
    pub fn zero(domain: Domain) -> Self {
        Self::new(domain, "zero", |_| Complex64::new(0.0, 0.0))
    }

    /// A constant coefficient; `|c|` must be < 1 (clipped otherwise).
    pub fn constant(domain: Domain, c: Complex64) -> Self {
        let mut field = Self::new(domain, "constant", move |_| c);
        field.params.insert("re".into(), c.re);
        field.params.insert("im".into(), c.im);
        field
    }

    pub fn with_clip_epsilon(mut self, eps: f64) -> Result<Self, FieldError> {
        if !(eps > 0.0 && eps < 0.5) {
            return Err(FieldError::BadClipEpsilon(eps));
        }
        self.clip_epsilon = eps;
        Ok(self)
    }

    pub fn with_params(mut self, params: BTreeMap<String, f64>) -> Self {
        self.params = params;
        self
    }

    /// Evaluate the coefficient at `z`, applying the clipping policy.
    ///
    /// Non-finite evaluator output is coerced to zero and reported as clipped.
    pub fn mu(&self, z: Complex64) -> MuSample {
        let raw = (self.evaluator)(z);
        if !raw.re.is_finite() || !raw.im.is_finite() {
            return MuSample {
                value: Complex64::new(0.0, 0.0),
                clipped: true,
            };
        }
        let cap = 1.0 - self.clip_epsilon;
        let norm = raw.norm();
        if norm > cap {
            MuSample {
                value: raw * (cap / norm),
                clipped: true,
            }
        } else {
            MuSample {
                value: raw,
                clipped: false,
            }
        }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.domain.contains(z)
    }

    pub fn clip_epsilon(&self) -> f64 {
        self.clip_epsilon
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn params(&self) -> &BTreeMap<String, f64> {
        &self.params
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clipping_caps_modulus() {
        let field = BeltramiField::new(Domain::UnitDisk, "over", |_| Complex64::new(3.0, 4.0));
        let sample = field.mu(Complex64::new(0.1, 0.2));
        assert!(sample.clipped);
        assert!(sample.value.norm() <= 1.0 - field.clip_epsilon());
        assert!(sample.value.norm() >= 1.0 - 2.0 * field.clip_epsilon());
        // direction is preserved
        assert!((sample.value.arg() - Complex64::new(3.0, 4.0).arg()).abs() < 1e-15);
    }

    #[test]
    fn evaluation_is_deterministic() {
        let field = BeltramiField::new(Domain::UpperHalfPlane, "wavy", |z| {
            Complex64::new(0.3 * (7.0 * z.re).sin(), 0.4 * (3.0 * z.im).cos())
        });
        let z = Complex64::new(0.37, 1.59);
        let a = field.mu(z).value;
        let b = field.mu(z).value;
        assert_eq!(a, b);
    }

    #[test]
    fn non_finite_values_are_zeroed() {
        let field = BeltramiField::new(Domain::UpperHalfPlane, "nan", |_| {
            Complex64::new(f64::NAN, 0.0)
        });
        let s = field.mu(Complex64::new(0.0, 1.0));
        assert!(s.clipped);
        assert_eq!(s.value, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn clip_epsilon_validated() {
        assert!(BeltramiField::zero(Domain::UnitDisk)
            .with_clip_epsilon(0.7)
            .is_err());
        assert!(BeltramiField::zero(Domain::UnitDisk)
            .with_clip_epsilon(1e-12)
            .is_ok());
    }
}
