//! Bilinear finite elements on curved quadrilateral cells.
//!
//! Assembly produces one sparse symmetric stiffness matrix; Dirichlet data is
//! imposed by restricting conjugate gradients to the free unknowns. Dot
//! products use fixed-size chunked pairwise reductions, so results do not
//! depend on the number of worker threads.

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FemError {
    #[error("degenerate cell {0} (non-positive Jacobian)")]
    DegenerateCell(usize),
    #[error("linear solve failed: {0}")]
    SolveFailure(&'static str),
}

/// One quadrilateral cell: global node ids, node coordinates, and the
/// additive potential offsets used by circulation (seam-jump) problems.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Cell {
    pub nodes: [usize; 4],
    pub coords: [Complex64; 4],
    pub offsets: [f64; 4],
}

const GAUSS: f64 = 0.577_350_269_189_625_8; // 1/sqrt(3)

/// 4x4 stiffness of a bilinear quad, 2x2 Gauss quadrature.
/// Returns `None` when the Jacobian is not strictly positive everywhere.
pub(crate) fn local_stiffness(p: &[Complex64; 4]) -> Option<[[f64; 4]; 4]> {
    let mut k = [[0.0f64; 4]; 4];
    for &xi in &[-GAUSS, GAUSS] {
        for &eta in &[-GAUSS, GAUSS] {
            let dxi = [
                -(1.0 - eta) / 4.0,
                (1.0 - eta) / 4.0,
                (1.0 + eta) / 4.0,
                -(1.0 + eta) / 4.0,
            ];
            let deta = [
                -(1.0 - xi) / 4.0,
                -(1.0 + xi) / 4.0,
                (1.0 + xi) / 4.0,
                (1.0 - xi) / 4.0,
            ];
            let (mut j00, mut j01, mut j10, mut j11) = (0.0, 0.0, 0.0, 0.0);
            for a in 0..4 {
                j00 += p[a].re * dxi[a];
                j01 += p[a].re * deta[a];
                j10 += p[a].im * dxi[a];
                j11 += p[a].im * deta[a];
            }
            let det = j00 * j11 - j01 * j10;
            if !(det > 0.0) || !det.is_finite() {
                return None;
            }
            let mut gx = [0.0f64; 4];
            let mut gy = [0.0f64; 4];
            for a in 0..4 {
                gx[a] = (j11 * dxi[a] - j10 * deta[a]) / det;
                gy[a] = (-j01 * dxi[a] + j00 * deta[a]) / det;
            }
            for a in 0..4 {
                for b in 0..4 {
                    k[a][b] += (gx[a] * gx[b] + gy[a] * gy[b]) * det;
                }
            }
        }
    }
    Some(k)
}

/// Compressed sparse rows, symmetric storage of the full matrix.
pub(crate) struct Csr {
    pub n: usize,
    pub indptr: Vec<usize>,
    pub indices: Vec<u32>,
    pub values: Vec<f64>,
}

impl Csr {
    fn from_triplets(n: usize, mut triplets: Vec<(u32, u32, f64)>) -> Self {
        triplets.sort_unstable_by_key(|t| (t.0, t.1));
        let mut row_counts = vec![0usize; n];
        let mut indices = Vec::with_capacity(triplets.len());
        let mut values: Vec<f64> = Vec::with_capacity(triplets.len());
        let mut last: Option<(u32, u32)> = None;
        for (r, c, v) in triplets {
            if last == Some((r, c)) {
                *values.last_mut().unwrap() += v;
            } else {
                indices.push(c);
                values.push(v);
                row_counts[r as usize] += 1;
                last = Some((r, c));
            }
        }
        let mut indptr = vec![0usize; n + 1];
        for r in 0..n {
            indptr[r + 1] = indptr[r] + row_counts[r];
        }
        Csr {
            n,
            indptr,
            indices,
            values,
        }
    }

    fn matvec_into(&self, x: &[f64], out: &mut [f64]) {
        out.par_iter_mut().enumerate().for_each(|(r, o)| {
            let mut acc = 0.0;
            for k in self.indptr[r]..self.indptr[r + 1] {
                acc += self.values[k] * x[self.indices[k] as usize];
            }
            *o = acc;
        });
    }

    fn diag(&self) -> Vec<f64> {
        let mut d = vec![0.0; self.n];
        for r in 0..self.n {
            for k in self.indptr[r]..self.indptr[r + 1] {
                if self.indices[k] as usize == r {
                    d[r] = self.values[k];
                }
            }
        }
        d
    }
}

/// Deterministic dot product: fixed 4096-element chunks reduced pairwise.
fn det_dot(a: &[f64], b: &[f64]) -> f64 {
    let partials: Vec<f64> = a
        .par_chunks(4096)
        .zip(b.par_chunks(4096))
        .map(|(ca, cb)| ca.iter().zip(cb).map(|(x, y)| x * y).sum::<f64>())
        .collect();
    crate::quad_pairwise_sum(&partials)
}

pub(crate) struct Assembled {
    pub csr: Csr,
    /// Right-hand side contributions from cell offsets (zero without jumps).
    pub rhs: Vec<f64>,
    pub n_nodes: usize,
}

pub(crate) fn assemble(n_nodes: usize, cells: &[Cell]) -> Result<Assembled, FemError> {
    let locals: Vec<[[f64; 4]; 4]> = cells
        .par_iter()
        .enumerate()
        .map(|(idx, cell)| local_stiffness(&cell.coords).ok_or(FemError::DegenerateCell(idx)))
        .collect::<Result<_, _>>()?;
    let mut triplets: Vec<(u32, u32, f64)> = Vec::with_capacity(cells.len() * 16);
    let mut rhs = vec![0.0f64; n_nodes];
    for (cell, k) in cells.iter().zip(&locals) {
        for a in 0..4 {
            let ga = cell.nodes[a] as u32;
            for b in 0..4 {
                triplets.push((ga, cell.nodes[b] as u32, k[a][b]));
                if cell.offsets[b] != 0.0 {
                    rhs[ga as usize] -= k[a][b] * cell.offsets[b];
                }
            }
        }
    }
    Ok(Assembled {
        csr: Csr::from_triplets(n_nodes, triplets),
        rhs,
        n_nodes,
    })
}

const CG_RTOL: f64 = 1e-10;

/// Solves `K u = rhs` with prescribed values on `fixed`, by preconditioned
/// conjugate gradients on the free unknowns.
pub(crate) fn solve_dirichlet(
    assembled: &Assembled,
    fixed: &[(usize, f64)],
) -> Result<Vec<f64>, FemError> {
    let n = assembled.n_nodes;
    let csr = &assembled.csr;
    let mut free = vec![true; n];
    let mut u = vec![0.0f64; n];
    for &(idx, val) in fixed {
        free[idx] = false;
        u[idx] = val;
    }
    // b = rhs - K u0 restricted to the free unknowns
    let mut b = vec![0.0; n];
    csr.matvec_into(&u, &mut b);
    for i in 0..n {
        b[i] = if free[i] { assembled.rhs[i] - b[i] } else { 0.0 };
    }
    let diag = csr.diag();
    let inv_diag: Vec<f64> = diag
        .iter()
        .zip(&free)
        .map(|(&d, &f)| {
            if !f {
                0.0
            } else if d > 0.0 {
                1.0 / d
            } else {
                f64::NAN
            }
        })
        .collect();
    if inv_diag.iter().any(|v| v.is_nan()) {
        return Err(FemError::SolveFailure("non-positive diagonal"));
    }

    let b_norm = det_dot(&b, &b).sqrt();
    let mut x = vec![0.0f64; n];
    if b_norm > 0.0 {
        let mut r = b.clone();
        let mut z: Vec<f64> = r.iter().zip(&inv_diag).map(|(ri, di)| ri * di).collect();
        let mut p = z.clone();
        let mut rz = det_dot(&r, &z);
        let mut ap = vec![0.0; n];
        let max_iters = 40 * n + 1000;
        let mut converged = false;
        for _ in 0..max_iters {
            ap_masked(csr, &p, &free, &mut ap);
            let pap = det_dot(&p, &ap);
            if !(pap > 0.0) || !pap.is_finite() {
                return Err(FemError::SolveFailure("indefinite operator in CG"));
            }
            let alpha = rz / pap;
            for i in 0..n {
                x[i] += alpha * p[i];
                r[i] -= alpha * ap[i];
            }
            let r_norm = det_dot(&r, &r).sqrt();
            if r_norm <= CG_RTOL * b_norm {
                converged = true;
                break;
            }
            for i in 0..n {
                z[i] = r[i] * inv_diag[i];
            }
            let rz_new = det_dot(&r, &z);
            let beta = rz_new / rz;
            rz = rz_new;
            for i in 0..n {
                p[i] = z[i] + beta * p[i];
            }
        }
        if !converged {
            return Err(FemError::SolveFailure("conjugate gradients stalled"));
        }
    }
    for i in 0..n {
        if free[i] {
            u[i] += x[i];
        }
    }
    Ok(u)
}

fn ap_masked(csr: &Csr, p: &[f64], free: &[bool], out: &mut [f64]) {
    csr.matvec_into(p, out);
    out.par_iter_mut().enumerate().for_each(|(i, o)| {
        if !free[i] {
            *o = 0.0;
        }
    });
}

/// Dirichlet energy `∑_cells (u+o)^T K_loc (u+o)` of a solution, including
/// the per-cell potential offsets.
pub(crate) fn energy(cells: &[Cell], u: &[f64]) -> Result<f64, FemError> {
    let terms: Vec<f64> = cells
        .par_iter()
        .enumerate()
        .map(|(idx, cell)| {
            let k = local_stiffness(&cell.coords).ok_or(FemError::DegenerateCell(idx))?;
            let v: Vec<f64> = (0..4)
                .map(|a| u[cell.nodes[a]] + cell.offsets[a])
                .collect();
            let mut e = 0.0;
            for a in 0..4 {
                for b in 0..4 {
                    e += v[a] * k[a][b] * v[b];
                }
            }
            Ok(e)
        })
        .collect::<Result<_, FemError>>()?;
    Ok(crate::quad_pairwise_sum(&terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit_square_cells(n: usize) -> (usize, Vec<Cell>) {
        let idx = |i: usize, j: usize| i * (n + 1) + j;
        let mut cells = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let corner = |a: usize, b: usize| {
                    Complex64::new(a as f64 / n as f64, b as f64 / n as f64)
                };
                cells.push(Cell {
                    nodes: [idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1)],
                    coords: [
                        corner(i, j),
                        corner(i + 1, j),
                        corner(i + 1, j + 1),
                        corner(i, j + 1),
                    ],
                    offsets: [0.0; 4],
                });
            }
        }
        ((n + 1) * (n + 1), cells)
    }

    #[test]
    fn unit_square_energy_is_one() {
        let n = 8;
        let (n_nodes, cells) = unit_square_cells(n);
        let assembled = assemble(n_nodes, &cells).unwrap();
        let mut fixed = Vec::new();
        for j in 0..=n {
            fixed.push((j, 0.0)); // i = 0 row of the index map
            fixed.push((n * (n + 1) + j, 1.0));
        }
        let u = solve_dirichlet(&assembled, &fixed).unwrap();
        let e = energy(&cells, &u).unwrap();
        // linear potential across the unit square has unit energy
        assert_relative_eq!(e, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn degenerate_cell_rejected() {
        let p = [
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 1.0),
        ];
        assert!(local_stiffness(&p).is_none());
    }
}
