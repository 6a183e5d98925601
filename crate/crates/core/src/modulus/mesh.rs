//! Curvilinear quadrilateral meshes of semiannuli and rings.
//!
//! A [`CurvedQuadMesh`] is an `(n+1) x (m+1)` structured grid of plane points.
//! The first index runs in the log-radial direction, so the two *sides* of the
//! meshed semiannulus are the node columns `i = 0` and `i = n`, and the two
//! *ends* are the node rows `j = 0` and `j = m`. A [`RingMesh`] closes the
//! angular direction periodically instead of carrying ends.

use num_complex::Complex64;
use thiserror::Error;

use super::fem::{local_stiffness, Cell};
use crate::semiannulus::{SemiannulusSpec, SemiannulusVariant};

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("degenerate cell {0} (image folds or collapses)")]
    DegenerateCell(usize),
    #[error("node counts do not match the declared grid")]
    BadShape,
    #[error("non-finite node coordinates at index {0}")]
    NonFiniteNode(usize),
    #[error("grid must be at least 8x8 (got {0}x{1})")]
    TooCoarse(usize, usize),
    #[error("the two marked sides intersect")]
    SidesTouch,
    #[error("mesh ends must lie on the unit circle to reflect across it")]
    EndsNotOnCircle,
    #[error("mesh text format: {0}")]
    Format(String),
}

/// Structured mesh of a curvilinear quadrilateral / semiannulus image.
#[derive(Clone, Debug)]
pub struct CurvedQuadMesh {
    n: usize,
    m: usize,
    nodes: Vec<Complex64>,
    provenance: String,
}

impl CurvedQuadMesh {
    /// Builds a mesh from a row-major node grid, checking the cell
    /// non-degeneracy and side-disjointness invariants.
    pub fn from_nodes(
        n: usize,
        m: usize,
        nodes: Vec<Complex64>,
        provenance: impl Into<String>,
    ) -> Result<Self, MeshError> {
        if nodes.len() != (n + 1) * (m + 1) || n == 0 || m == 0 {
            return Err(MeshError::BadShape);
        }
        for (idx, z) in nodes.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(MeshError::NonFiniteNode(idx));
            }
        }
        let mesh = Self {
            n,
            m,
            nodes,
            provenance: provenance.into(),
        };
        for (c, cell) in mesh.cells().iter().enumerate() {
            if local_stiffness(&cell.coords).is_none() {
                return Err(MeshError::DegenerateCell(c));
            }
        }
        for a in mesh.side_nodes(0) {
            for b in mesh.side_nodes(1) {
                if a == b {
                    return Err(MeshError::SidesTouch);
                }
            }
        }
        Ok(mesh)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * (self.m + 1) + j
    }

    #[inline]
    pub fn node(&self, i: usize, j: usize) -> Complex64 {
        self.nodes[self.index(i, j)]
    }

    pub fn nodes(&self) -> &[Complex64] {
        &self.nodes
    }

    /// Node indices of a side column (`which` 0 or 1).
    pub fn side_indices(&self, which: usize) -> Vec<usize> {
        let i = if which == 0 { 0 } else { self.n };
        (0..=self.m).map(|j| self.index(i, j)).collect()
    }

    /// Node indices of an end row (`which` 0 or 1).
    pub fn end_indices(&self, which: usize) -> Vec<usize> {
        let j = if which == 0 { 0 } else { self.m };
        (0..=self.n).map(|i| self.index(i, j)).collect()
    }

    pub fn side_nodes(&self, which: usize) -> Vec<Complex64> {
        self.side_indices(which)
            .into_iter()
            .map(|k| self.nodes[k])
            .collect()
    }

    pub fn end_nodes(&self, which: usize) -> Vec<Complex64> {
        self.end_indices(which)
            .into_iter()
            .map(|k| self.nodes[k])
            .collect()
    }

    pub(crate) fn cells(&self) -> Vec<Cell> {
        let mut cells = Vec::with_capacity(self.n * self.m);
        for i in 0..self.n {
            for j in 0..self.m {
                cells.push(Cell {
                    nodes: [
                        self.index(i, j),
                        self.index(i + 1, j),
                        self.index(i + 1, j + 1),
                        self.index(i, j + 1),
                    ],
                    coords: [
                        self.node(i, j),
                        self.node(i + 1, j),
                        self.node(i + 1, j + 1),
                        self.node(i, j + 1),
                    ],
                    offsets: [0.0; 4],
                });
            }
        }
        cells
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Flat text form: a small header followed by one `i j x y` line per node.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("qcbound-mesh 1\n");
        out.push_str(&format!("n {}\n", self.n));
        out.push_str(&format!("m {}\n", self.m));
        out.push_str("sides i=0 i=n\n");
        out.push_str("ends j=0 j=m\n");
        out.push_str(&format!("provenance {}\n", self.provenance));
        for i in 0..=self.n {
            for j in 0..=self.m {
                let z = self.node(i, j);
                out.push_str(&format!("{} {} {:?} {:?}\n", i, j, z.re, z.im));
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, MeshError> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| MeshError::Format("empty".into()))?;
        if header.trim() != "qcbound-mesh 1" {
            return Err(MeshError::Format(format!("unknown header: {header}")));
        }
        let mut n = None;
        let mut m = None;
        let mut provenance = String::new();
        let mut rest: Vec<&str> = Vec::new();
        for line in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(v) = line.strip_prefix("n ") {
                n = v.trim().parse::<usize>().ok();
            } else if let Some(v) = line.strip_prefix("m ") {
                m = v.trim().parse::<usize>().ok();
            } else if let Some(v) = line.strip_prefix("provenance ") {
                provenance = v.to_string();
            } else if line.starts_with("sides") || line.starts_with("ends") {
                continue;
            } else {
                rest.push(line);
            }
        }
        let (n, m) = match (n, m) {
            (Some(n), Some(m)) => (n, m),
            _ => return Err(MeshError::Format("missing n/m header".into())),
        };
        let mut nodes = vec![Complex64::new(f64::NAN, f64::NAN); (n + 1) * (m + 1)];
        for line in rest {
            let mut parts = line.split_whitespace();
            let parse = |p: Option<&str>| -> Result<f64, MeshError> {
                p.ok_or_else(|| MeshError::Format(format!("short line: {line}")))?
                    .parse::<f64>()
                    .map_err(|e| MeshError::Format(format!("{e}: {line}")))
            };
            let i = parse(parts.next())? as usize;
            let j = parse(parts.next())? as usize;
            let x = parse(parts.next())?;
            let y = parse(parts.next())?;
            if i > n || j > m {
                return Err(MeshError::Format(format!("index out of range: {line}")));
            }
            nodes[i * (m + 1) + j] = Complex64::new(x, y);
        }
        Self::from_nodes(n, m, nodes, provenance)
    }
}

/// Meshes the image of a canonical semiannulus under `map` on the `n x m`
/// log-polar product grid.
pub fn mesh_region<F: Fn(Complex64) -> Complex64>(
    map: F,
    spec: &SemiannulusSpec,
    n: usize,
    m: usize,
) -> Result<CurvedQuadMesh, MeshError> {
    if n < 8 || m < 8 {
        return Err(MeshError::TooCoarse(n, m));
    }
    let spec_n = spec.normalized();
    let (s0, s1) = spec_n.log_range();
    let (th0, th1) = spec_n.theta_range();
    let mut nodes = Vec::with_capacity((n + 1) * (m + 1));
    for i in 0..=n {
        let s = s0 + (s1 - s0) * i as f64 / n as f64;
        for j in 0..=m {
            let th = th0 + (th1 - th0) * j as f64 / m as f64;
            nodes.push(map(spec_n.point_at(s, th)));
        }
    }
    let provenance = format!("image of {:?}", spec_n.variant);
    CurvedQuadMesh::from_nodes(n, m, nodes, provenance)
}

/// Structured mesh of a ring (doubly connected) domain: `n` radial cells and
/// `m` angular cells with periodic closure.
#[derive(Clone, Debug)]
pub struct RingMesh {
    n: usize,
    m: usize,
    nodes: Vec<Complex64>, // (n+1) * m, row-major, j periodic
    provenance: String,
}

impl RingMesh {
    pub fn from_nodes(
        n: usize,
        m: usize,
        nodes: Vec<Complex64>,
        provenance: impl Into<String>,
    ) -> Result<Self, MeshError> {
        if nodes.len() != (n + 1) * m || n == 0 || m < 3 {
            return Err(MeshError::BadShape);
        }
        for (idx, z) in nodes.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(MeshError::NonFiniteNode(idx));
            }
        }
        let ring = Self {
            n,
            m,
            nodes,
            provenance: provenance.into(),
        };
        for (c, cell) in ring.cells(false).iter().enumerate() {
            if local_stiffness(&cell.coords).is_none() {
                return Err(MeshError::DegenerateCell(c));
            }
        }
        Ok(ring)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.m + (j % self.m)
    }

    #[inline]
    pub fn node(&self, i: usize, j: usize) -> Complex64 {
        self.nodes[self.index(i, j)]
    }

    /// Closed node loop at radial index `i` (0 = first, `n` = last).
    pub fn boundary_loop(&self, which: usize) -> Vec<Complex64> {
        let i = if which == 0 { 0 } else { self.n };
        (0..self.m).map(|j| self.node(i, j)).collect()
    }

    /// Cells of the ring; with `with_seam_jump` the angular wrap from the last
    /// column back to column 0 carries a unit potential offset, which encodes
    /// the circulation problem for the conjugate modulus estimate.
    pub(crate) fn cells(&self, with_seam_jump: bool) -> Vec<Cell> {
        let mut cells = Vec::with_capacity(self.n * self.m);
        for i in 0..self.n {
            for j in 0..self.m {
                let wrap = j + 1 == self.m;
                let jump = if with_seam_jump && wrap { 1.0 } else { 0.0 };
                cells.push(Cell {
                    nodes: [
                        self.index(i, j),
                        self.index(i + 1, j),
                        self.index(i + 1, j + 1),
                        self.index(i, j + 1),
                    ],
                    coords: [
                        self.node(i, j),
                        self.node(i + 1, j),
                        self.node(i + 1, j + 1),
                        self.node(i, j + 1),
                    ],
                    offsets: [0.0, 0.0, jump, jump],
                });
            }
        }
        cells
    }

    /// Ring bounded by the images of two concentric circles under `map`,
    /// sampled on the log-polar grid.
    pub fn annular_image<F: Fn(Complex64) -> Complex64>(
        center: Complex64,
        r: f64,
        big_r: f64,
        n: usize,
        m: usize,
        map: F,
    ) -> Result<Self, MeshError> {
        if !(r > 0.0 && big_r > r) {
            return Err(MeshError::BadShape);
        }
        let (s0, s1) = (r.ln(), big_r.ln());
        let mut nodes = Vec::with_capacity((n + 1) * m);
        for i in 0..=n {
            let s = s0 + (s1 - s0) * i as f64 / n as f64;
            for j in 0..m {
                let th = std::f64::consts::TAU * j as f64 / m as f64;
                nodes.push(map(center + Complex64::from_polar(s.exp(), th)));
            }
        }
        Self::from_nodes(n, m, nodes, "annular image")
    }
}

/// Doubles a disk semiannulus mesh by reflecting it across the unit circle.
///
/// The mesh ends must lie on the unit circle (this is where the region meets
/// the boundary of the disk); the result is a ring mesh of the union of the
/// region and its reflection `z ↦ 1/z̄`.
pub fn double_across_unit_circle(mesh: &CurvedQuadMesh) -> Result<RingMesh, MeshError> {
    let n = mesh.n();
    let m = mesh.m();
    for which in 0..2 {
        for z in mesh.end_nodes(which) {
            if (z.norm() - 1.0).abs() > 1e-9 {
                return Err(MeshError::EndsNotOnCircle);
            }
        }
    }
    let m_ring = 2 * m;
    let mut nodes = Vec::with_capacity((n + 1) * m_ring);
    for i in 0..=n {
        for j in 0..m_ring {
            let z = if j <= m {
                mesh.node(i, j)
            } else {
                let source = mesh.node(i, 2 * m - j);
                source.conj().inv()
            };
            nodes.push(z);
        }
    }
    RingMesh::from_nodes(n, m_ring, nodes, format!("{} doubled", mesh.provenance()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiannulus::SemiannulusSpec;
    use approx::assert_relative_eq;

    #[test]
    fn identity_mesh_roundtrips_through_text() {
        let spec = SemiannulusSpec::half_plane(0.0, 1.0, std::f64::consts::E).unwrap();
        let mesh = mesh_region(|z| z, &spec, 8, 8).unwrap();
        let text = mesh.to_text();
        let back = CurvedQuadMesh::from_text(&text).unwrap();
        assert_eq!(back.n(), mesh.n());
        assert_eq!(back.m(), mesh.m());
        for (a, b) in mesh.nodes().iter().zip(back.nodes()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn folded_image_is_rejected() {
        let spec = SemiannulusSpec::half_plane(0.0, 1.0, 2.0).unwrap();
        // collapse everything onto a line
        let r = mesh_region(|z| Complex64::new(z.re, 0.0), &spec, 8, 8);
        assert!(matches!(r, Err(MeshError::DegenerateCell(_))));
    }

    #[test]
    fn too_coarse_grids_are_rejected() {
        let spec = SemiannulusSpec::half_plane(0.0, 1.0, 2.0).unwrap();
        assert!(matches!(
            mesh_region(|z| z, &spec, 4, 16),
            Err(MeshError::TooCoarse(4, 16))
        ));
    }

    #[test]
    fn doubling_requires_circle_ends() {
        let spec = SemiannulusSpec::half_plane(0.0, 1.0, 2.0).unwrap();
        let mesh = mesh_region(|z| z, &spec, 8, 8).unwrap();
        assert!(matches!(
            double_across_unit_circle(&mesh),
            Err(MeshError::EndsNotOnCircle)
        ));

        let disk = SemiannulusSpec::disk(Complex64::new(1.0, 0.0), 0.2, 0.8).unwrap();
        let mesh = mesh_region(|z| z, &disk, 8, 8).unwrap();
        let ring = double_across_unit_circle(&mesh).unwrap();
        assert_eq!(ring.m(), 16);
        // reflected nodes invert the modulus
        let z = mesh.node(3, 2);
        let w = ring.node(3, 2 * 8 - 2);
        assert_relative_eq!(w.norm(), 1.0 / z.norm(), epsilon = 1e-12);
    }
}
