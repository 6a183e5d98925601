//! Discrete conformal modulus of semiannuli and ring domains.
//!
//! The modulus is computed from the two conjugate Dirichlet problems: with the
//! sides held at potentials 0 and 1 the modulus is `π / energy`, with the ends
//! held instead it is `π * energy`. Exact reciprocity of the two dual
//! extremal-length values holds by construction, so the spread between the two
//! estimates is an internal error bound.

mod fem;
mod mesh;

pub use fem::FemError;
pub use mesh::{
    double_across_unit_circle, mesh_region, CurvedQuadMesh, MeshError, RingMesh,
};

use num_complex::Complex64;
use thiserror::Error;

use crate::geom::winding_number;
use crate::semiannulus::SemiannulusSpec;
use fem::{assemble, energy, solve_dirichlet};

#[derive(Debug, Error)]
pub enum ModulusError {
    #[error("sector-restricted specs have no canonical modulus")]
    UnsupportedSpec,
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error(transparent)]
    Solve(#[from] FemError),
    #[error("ring boundary does not separate {0} from infinity")]
    NotSeparating(Complex64),
    #[error("no round annulus about the base point fits inside the ring")]
    EmptyExtraction,
}

/// Discrete modulus with its two dual extremal-length readings.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct ModulusEstimate {
    /// `π / E` with the sides at potentials 0 and 1.
    pub mod_primal: f64,
    /// `π * E` with the ends at potentials 0 and 1.
    pub mod_dual: f64,
    /// Mean of the two estimates.
    pub value: f64,
    /// `|mod_primal - mod_dual|`, the reported error bound.
    pub discrepancy: f64,
    /// Extremal length of the family joining the sides, `value / π`.
    pub lambda_joining: f64,
    /// Extremal length of the family dividing the sides, `π / value`.
    pub lambda_dividing: f64,
}

impl ModulusEstimate {
    fn from_pair(mod_primal: f64, mod_dual: f64) -> Self {
        let value = 0.5 * (mod_primal + mod_dual);
        ModulusEstimate {
            mod_primal,
            mod_dual,
            value,
            discrepancy: (mod_primal - mod_dual).abs(),
            lambda_joining: value / std::f64::consts::PI,
            lambda_dividing: std::f64::consts::PI / value,
        }
    }
}

/// Exact modulus of a canonical semiannulus, `log(outer/inner)`.
pub fn canonical_modulus(spec: &SemiannulusSpec) -> Result<f64, ModulusError> {
    if spec.sector.is_some() {
        return Err(ModulusError::UnsupportedSpec);
    }
    Ok(spec.canonical_log_ratio())
}

/// Discrete modulus of a meshed semiannulus via the two conjugate solves.
pub fn discrete_modulus(mesh: &CurvedQuadMesh) -> Result<ModulusEstimate, ModulusError> {
    let cells = mesh.cells();
    let assembled = assemble(mesh.node_count(), &cells)?;

    let fixed_sides: Vec<(usize, f64)> = mesh
        .side_indices(0)
        .into_iter()
        .map(|k| (k, 0.0))
        .chain(mesh.side_indices(1).into_iter().map(|k| (k, 1.0)))
        .collect();
    let u = solve_dirichlet(&assembled, &fixed_sides)?;
    let e_sides = energy(&cells, &u)?;

    let fixed_ends: Vec<(usize, f64)> = mesh
        .end_indices(0)
        .into_iter()
        .map(|k| (k, 0.0))
        .chain(mesh.end_indices(1).into_iter().map(|k| (k, 1.0)))
        .collect();
    let v = solve_dirichlet(&assembled, &fixed_ends)?;
    let e_ends = energy(&cells, &v)?;

    if !(e_sides > 0.0) || !(e_ends > 0.0) {
        return Err(ModulusError::Solve(FemError::SolveFailure(
            "vanishing Dirichlet energy",
        )));
    }
    Ok(ModulusEstimate::from_pair(
        std::f64::consts::PI / e_sides,
        std::f64::consts::PI * e_ends,
    ))
}

/// Discrete modulus of a ring mesh: the two-circle Dirichlet problem gives
/// `2π / E`, the circulation (seam-jump) problem gives `2π * E`.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct RingModulus {
    pub mod_primal: f64,
    pub mod_dual: f64,
    pub value: f64,
    pub discrepancy: f64,
}

pub fn ring_modulus(ring: &RingMesh) -> Result<RingModulus, ModulusError> {
    let cells = ring.cells(false);
    let assembled = assemble(ring.node_count(), &cells)?;
    let fixed: Vec<(usize, f64)> = (0..ring.m())
        .map(|j| (ring.index(0, j), 0.0))
        .chain((0..ring.m()).map(|j| (ring.index(ring.n(), j), 1.0)))
        .collect();
    let u = solve_dirichlet(&assembled, &fixed)?;
    let e = energy(&cells, &u)?;

    let jump_cells = ring.cells(true);
    let jump_assembled = assemble(ring.node_count(), &jump_cells)?;
    // circulation potential is determined up to a constant; pin one node
    let w = solve_dirichlet(&jump_assembled, &[(0, 0.0)])?;
    let e_jump = energy(&jump_cells, &w)?;

    if !(e > 0.0) || !(e_jump > 0.0) {
        return Err(ModulusError::Solve(FemError::SolveFailure(
            "vanishing Dirichlet energy",
        )));
    }
    let mod_primal = std::f64::consts::TAU / e;
    let mod_dual = std::f64::consts::TAU * e_jump;
    Ok(RingModulus {
        mod_primal,
        mod_dual,
        value: 0.5 * (mod_primal + mod_dual),
        discrepancy: (mod_primal - mod_dual).abs(),
    })
}

/// Modulus of the ring obtained by reflecting a disk semiannulus across the
/// unit circle; agrees with the semiannulus modulus whenever that is positive.
pub fn reflected_ring_modulus(mesh: &CurvedQuadMesh) -> Result<RingModulus, ModulusError> {
    let ring = double_across_unit_circle(mesh)?;
    ring_modulus(&ring)
}

/// Convenience: reflect the canonical disk semiannulus itself.
pub fn reflected_ring_modulus_spec(
    spec: &SemiannulusSpec,
    n: usize,
    m: usize,
) -> Result<RingModulus, ModulusError> {
    let mesh = mesh_region(|z| z, spec, n, m)?;
    reflected_ring_modulus(&mesh)
}

/// Largest round annulus `A(z0; r, R)` contained in the ring, by radial
/// scanning of the two boundary loops: `r` is the farthest point of the
/// inner loop, `R` the nearest point of the outer loop (up to mesh
/// resolution).
pub fn max_round_subannulus(
    ring: &RingMesh,
    z0: Complex64,
) -> Result<(f64, f64), ModulusError> {
    let loop_a = ring.boundary_loop(0);
    let loop_b = ring.boundary_loop(1);
    let wa = winding_number(&loop_a, z0).abs();
    let wb = winding_number(&loop_b, z0).abs();
    if wa < 0.5 || wb < 0.5 {
        return Err(ModulusError::NotSeparating(z0));
    }
    // the outer loop encloses the nodes of the inner one
    let a_encloses_b = winding_number(&loop_a, loop_b[0]).abs() > 0.5;
    let (inner, outer) = if a_encloses_b {
        (loop_b, loop_a)
    } else {
        (loop_a, loop_b)
    };
    let r = inner
        .iter()
        .map(|p| (p - z0).norm())
        .fold(0.0f64, f64::max);
    let big_r = outer
        .iter()
        .map(|p| (p - z0).norm())
        .fold(f64::INFINITY, f64::min);
    if !(r < big_r) {
        return Err(ModulusError::EmptyExtraction);
    }
    Ok((r, big_r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn canonical_values() {
        let hp = SemiannulusSpec::half_plane(0.0, 1.0, std::f64::consts::E).unwrap();
        assert_relative_eq!(canonical_modulus(&hp).unwrap(), 1.0);
        let disk = SemiannulusSpec::disk(Complex64::new(0.0, 1.0), 0.2, 0.8).unwrap();
        assert_relative_eq!(canonical_modulus(&disk).unwrap(), 4.0f64.ln(), epsilon = 1e-12);
        assert_relative_eq!(canonical_modulus(&disk).unwrap(), 1.3862944, epsilon = 1e-6);
        let restricted = hp.with_sector(0.3, 2.0).unwrap();
        assert!(matches!(
            canonical_modulus(&restricted),
            Err(ModulusError::UnsupportedSpec)
        ));
        // degenerate radii are rejected at construction
        assert!(SemiannulusSpec::half_plane(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn rectangle_modulus_matches_length() {
        // straight rectangle of length a and height pi, sides at the short edges
        let a = 1.7;
        let (n, m) = (24, 24);
        let mut nodes = Vec::new();
        for i in 0..=n {
            for j in 0..=m {
                nodes.push(Complex64::new(
                    a * i as f64 / n as f64,
                    std::f64::consts::PI * j as f64 / m as f64,
                ));
            }
        }
        let mesh = CurvedQuadMesh::from_nodes(n, m, nodes, "rectangle").unwrap();
        let est = discrete_modulus(&mesh).unwrap();
        // bilinear elements reproduce the linear potentials exactly
        assert_relative_eq!(est.mod_primal, a, epsilon = 1e-8);
        assert_relative_eq!(est.mod_dual, a, epsilon = 1e-8);
        assert!(est.discrepancy < 1e-8);
        assert_relative_eq!(est.lambda_joining * est.lambda_dividing, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn half_plane_identity_mesh() {
        let spec = SemiannulusSpec::half_plane(0.0, 1.0, std::f64::consts::E).unwrap();
        let mesh = mesh_region(|z| z, &spec, 48, 48).unwrap();
        let est = discrete_modulus(&mesh).unwrap();
        assert_relative_eq!(est.value, 1.0, max_relative = 1e-3);
    }

    #[test]
    fn round_ring_modulus() {
        let ring =
            RingMesh::annular_image(Complex64::new(0.0, 0.0), 1.0, 10.0, 32, 64, |z| z).unwrap();
        let est = ring_modulus(&ring).unwrap();
        assert_relative_eq!(est.value, 10f64.ln(), max_relative = 2e-3);
        assert!(est.discrepancy < 0.01);
    }

    #[test]
    fn round_subannulus_examples() {
        let ring =
            RingMesh::annular_image(Complex64::new(0.0, 0.0), 1.0, 10.0, 16, 128, |z| z).unwrap();
        let (r, big_r) = max_round_subannulus(&ring, Complex64::new(0.0, 0.0)).unwrap();
        assert_relative_eq!(r, 1.0, max_relative = 1e-3);
        assert_relative_eq!(big_r, 10.0, max_relative = 1e-3);

        // concentric about 0.3, scanned about the origin
        let ring =
            RingMesh::annular_image(Complex64::new(0.3, 0.0), 1.0, 10.0, 16, 256, |z| z).unwrap();
        let (r, big_r) = max_round_subannulus(&ring, Complex64::new(0.0, 0.0)).unwrap();
        assert_relative_eq!(r, 1.3, max_relative = 1e-3);
        assert_relative_eq!(big_r, 9.7, max_relative = 1e-3);
        assert!((big_r / r).ln() >= 10f64.ln() - std::f64::consts::PI);

        let far = max_round_subannulus(&ring, Complex64::new(30.0, 0.0));
        assert!(matches!(far, Err(ModulusError::NotSeparating(_))));
    }
}
