//! Tensor-product composite midpoint rule with dyadic global refinement.
//!
//! The integrand is evaluated cell-by-cell on a uniform grid over a rectangle;
//! refinement doubles both directions until the Richardson difference between
//! consecutive levels meets the tolerance or the cell cap is hit. Cell values
//! are reduced by a fixed pairwise tree, so the result does not depend on the
//! number of worker threads.

use rayon::prelude::*;

use super::QuadConfig;

#[derive(Clone, Copy, Debug)]
pub(crate) struct CellEval {
    pub value: f64,
    pub clipped: bool,
}

#[derive(Clone, Debug)]
pub(crate) struct RefineOutcome {
    pub value: f64,
    /// Richardson difference between the two finest levels.
    pub error: f64,
    /// Cell count of the finest level.
    pub cells: u64,
    pub clipped_fraction: f64,
    pub converged: bool,
    /// Monotone escape of the level values beyond the divergence threshold.
    pub escalating: bool,
    /// `(cells, value)` per refinement level.
    pub history: Vec<(u64, f64)>,
}

/// Deterministic pairwise (tree) reduction.
pub(crate) fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= 32 {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

fn level_sum<F>(f: &F, a0: f64, a1: f64, b0: f64, b1: f64, na: usize, nb: usize) -> (f64, u64)
where
    F: Fn(f64, f64) -> CellEval + Sync,
{
    let da = (a1 - a0) / na as f64;
    let db = (b1 - b0) / nb as f64;
    let rows: Vec<(f64, u64)> = (0..na)
        .into_par_iter()
        .map(|i| {
            let a = a0 + (i as f64 + 0.5) * da;
            let mut vals = Vec::with_capacity(nb);
            let mut clipped = 0u64;
            for j in 0..nb {
                let b = b0 + (j as f64 + 0.5) * db;
                let cell = f(a, b);
                vals.push(cell.value);
                clipped += cell.clipped as u64;
            }
            (pairwise_sum(&vals), clipped)
        })
        .collect();
    let row_sums: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let clipped: u64 = rows.iter().map(|r| r.1).sum();
    (pairwise_sum(&row_sums) * da * db, clipped)
}

/// Runs the refinement loop for `f` over `[a0, a1] x [b0, b1]`.
pub(crate) fn refine_midpoint<F>(
    f: &F,
    a0: f64,
    a1: f64,
    b0: f64,
    b1: f64,
    na0: usize,
    nb0: usize,
    cfg: &QuadConfig,
) -> RefineOutcome
where
    F: Fn(f64, f64) -> CellEval + Sync,
{
    let mut history: Vec<(u64, f64)> = Vec::new();
    let mut last_clipped = 0u64;
    let mut level = 0usize;
    loop {
        let na = na0 << level;
        let nb = nb0 << level;
        let cells = (na as u64) * (nb as u64);
        if level > 0 && cells > cfg.max_cells {
            break;
        }
        let (value, clipped) = level_sum(f, a0, a1, b0, b1, na, nb);
        history.push((cells, value));
        last_clipped = clipped;
        if history.len() >= 2 {
            let prev = history[history.len() - 2].1;
            let diff = (value - prev).abs();
            if diff <= cfg.tol * value.abs().max(1.0) {
                return RefineOutcome {
                    value,
                    error: diff,
                    cells,
                    clipped_fraction: clipped as f64 / cells as f64,
                    converged: true,
                    escalating: false,
                    history,
                };
            }
        }
        level += 1;
    }
    let n = history.len();
    let (cells, value) = history[n - 1];
    let error = if n >= 2 {
        (value - history[n - 2].1).abs()
    } else {
        f64::INFINITY
    };
    RefineOutcome {
        value,
        error,
        cells,
        clipped_fraction: last_clipped as f64 / cells as f64,
        converged: false,
        escalating: escalating(&history, cfg.diverge_threshold),
        history,
    }
}

/// Monotone escape detector on a refinement history: the magnitudes of the
/// last three level values grow, their increments do not contract, and all
/// of them sit beyond the divergence threshold.
fn escalating(history: &[(u64, f64)], threshold: f64) -> bool {
    if history.len() < 3 {
        return false;
    }
    let v: Vec<f64> = history[history.len() - 3..].iter().map(|h| h.1.abs()).collect();
    v[0] < v[1]
        && v[1] < v[2]
        && (v[2] - v[1]) >= 0.9 * (v[1] - v[0])
        && v.iter().all(|x| *x > threshold)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn eval(value: f64) -> CellEval {
        CellEval {
            value,
            clipped: false,
        }
    }

    #[test]
    fn constant_integrand_is_exact_at_second_level() {
        let cfg = QuadConfig::default();
        let out = refine_midpoint(&|_, _| eval(2.5), 0.0, 1.0, 0.0, 3.0, 8, 8, &cfg);
        assert!(out.converged);
        assert_relative_eq!(out.value, 7.5, max_relative = 1e-13);
        assert!(out.error <= 1e-10);
    }

    #[test]
    fn smooth_integrand_converges() {
        let cfg = QuadConfig::default();
        let out = refine_midpoint(
            &|x, y| eval((x * y).sin()),
            0.0,
            1.0,
            0.0,
            1.0,
            8,
            8,
            &cfg,
        );
        assert!(out.converged);
        // exact: ∫∫ sin(xy) = ∫ (1-cos x)/x dx over (0,1)
        let mut exact = 0.0;
        let n = 200000;
        for i in 0..n {
            let x = (i as f64 + 0.5) / n as f64;
            exact += (1.0 - x.cos()) / x / n as f64;
        }
        assert_relative_eq!(out.value, exact, epsilon = 1e-7);
    }

    #[test]
    fn divergent_integrand_escalates() {
        let cfg = QuadConfig {
            tol: 1e-9,
            max_cells: 1 << 18,
            diverge_threshold: 1e3,
        };
        // 1/x^2 near zero: midpoint sums grow geometrically with refinement
        let out = refine_midpoint(&|x, _| eval(1.0 / (x * x)), 0.0, 1.0, 0.0, 1.0, 8, 8, &cfg);
        assert!(!out.converged);
        assert!(out.escalating);
    }

    #[test]
    fn pairwise_sum_matches_naive() {
        let vals: Vec<f64> = (0..1000).map(|k| ((k * 37 % 100) as f64) * 0.01 - 0.3).collect();
        let naive: f64 = vals.iter().sum();
        assert_relative_eq!(pairwise_sum(&vals), naive, epsilon = 1e-9);
    }
}
