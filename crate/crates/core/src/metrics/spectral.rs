//! Laplacian spectra and the top-k eigenvalue distance between graphs.
//!
//! Eigenvalues come from Householder reduction to tridiagonal form followed
//! by implicit-shift QL iteration. Graphs here are small enough that the
//! dense `O(n^3)` route is the simplest correct one.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_ENERGY: f64 = 0.9;

/// Eigenvalues in `[-CLAMP_TOL, 0)` are treated as round-off and set to 0.
const CLAMP_TOL: f64 = 1e-9;
const ITERATIONS_PER_ROW: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralDistance {
    pub value: f64,
    pub k: usize,
    pub energy: f64,
}

/// Eigenvalues of a dense symmetric `n x n` matrix stored row-major, in no
/// particular order.
pub fn symmetric_eigenvalues(mut a: Vec<f64>, n: usize) -> Result<Vec<f64>> {
    assert_eq!(a.len(), n * n, "matrix is not n x n");
    if n == 0 {
        return Ok(Vec::new());
    }
    let (mut d, mut e) = tridiagonalize(&mut a, n);
    ql_implicit(&mut d, &mut e)?;
    Ok(d)
}

/// Householder reduction. Returns the diagonal and the subdiagonal, with
/// `e[i]` coupling rows `i` and `i + 1` and `e[n - 1] = 0`.
fn tridiagonalize(a: &mut [f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let idx = |i: usize, j: usize| i * n + j;
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    for k in 0..n.saturating_sub(2) {
        let norm = (k + 1..n).map(|i| a[idx(i, k)].powi(2)).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = a[idx(k + 1, k)];
        let alpha = if x0 > 0.0 { -norm } else { norm };
        for i in k + 1..n {
            v[i] = a[idx(i, k)];
        }
        v[k + 1] -= alpha;
        let vnorm2: f64 = (k + 1..n).map(|i| v[i] * v[i]).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;
        for i in k + 1..n {
            p[i] = beta * (k + 1..n).map(|j| a[idx(i, j)] * v[j]).sum::<f64>();
        }
        let kappa = (k + 1..n).map(|i| v[i] * p[i]).sum::<f64>() / vnorm2;
        for i in k + 1..n {
            p[i] -= kappa * v[i];
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[idx(i, j)] -= v[i] * p[j] + p[i] * v[j];
            }
        }
        for i in k + 2..n {
            a[idx(i, k)] = 0.0;
            a[idx(k, i)] = 0.0;
        }
        a[idx(k + 1, k)] = alpha;
        a[idx(k, k + 1)] = alpha;
    }
    let d = (0..n).map(|i| a[idx(i, i)]).collect();
    let mut e: Vec<f64> = (0..n - 1).map(|i| a[idx(i + 1, i)]).collect();
    e.push(0.0);
    (d, e)
}

/// Implicit-shift QL on a symmetric tridiagonal matrix; eigenvalues are left
/// in `d`.
fn ql_implicit(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    let max_iterations = ITERATIONS_PER_ROW * n;
    let mut iterations = 0;
    for l in 0..n {
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > max_iterations {
                return Err(Error::EigenNoConvergence {
                    n,
                    iterations,
                    residual: e.iter().fold(0.0_f64, |acc, x| acc.max(x.abs())),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Eigenvalues of `L = D - A`, sorted descending, tiny negatives clamped.
pub fn laplacian_spectrum(g: &Graph) -> Result<Vec<f64>> {
    let n = g.node_count();
    let mut a = vec![0.0; n * n];
    for v in g.nodes() {
        a[v * n + v] = g.adj(v).len() as f64;
        for &w in g.adj(v) {
            a[v * n + w] = -1.0;
        }
    }
    let mut values = symmetric_eigenvalues(a, n)?;
    for x in values.iter_mut() {
        if *x < 0.0 {
            if *x < -CLAMP_TOL {
                return Err(Error::NegativeEigenvalue(*x));
            }
            *x = 0.0;
        }
    }
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

/// Smallest `k` whose leading eigenvalues carry `energy` of the total.
fn energy_cutoff(spectrum: &[f64], energy: f64) -> usize {
    let total: f64 = spectrum.iter().sum();
    let mut acc = 0.0;
    for (i, x) in spectrum.iter().enumerate() {
        acc += x;
        if acc >= energy * total {
            return i + 1;
        }
    }
    spectrum.len()
}

/// Squared difference of the leading Laplacian eigenvalues. `k` is the
/// smaller of the two graphs' energy cutoffs. Lower means more similar.
pub fn spectral_distance(g1: &Graph, g2: &Graph, energy: f64) -> Result<SpectralDistance> {
    if g1.is_empty() || g2.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if !(energy > 0.0 && energy <= 1.0) {
        return Err(Error::Config(format!("energy threshold {energy} not in (0, 1]")));
    }
    let a = laplacian_spectrum(g1)?;
    let b = laplacian_spectrum(g2)?;
    let k = energy_cutoff(&a, energy).min(energy_cutoff(&b, energy));
    let value = a.iter().zip(&b).take(k).map(|(x, y)| (x - y) * (x - y)).sum();
    Ok(SpectralDistance { value, k, energy })
}
