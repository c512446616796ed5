//! Dense symmetric eigensolver: Householder reduction to tridiagonal form
//! followed by the implicit-shift QL iteration.
//!
//! Matrices are row-major `n x n` slices. The reduction updates the full
//! trailing block so every inner loop runs over contiguous rows.

use crate::error::{Error, Result};
use crate::tolerances::QL_DEFLATION;

const MAX_SWEEPS: usize = 60;

/// Symmetric tridiagonal matrix: `diag[i]`, and `off[i]` couples `i` and `i + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Reduce `a` (overwritten) to tridiagonal form. If `q` is given it receives the
/// orthogonal `Q` with `A = Q T Q^T`, row-major.
pub fn tridiagonalize(a: &mut [f64], n: usize, q: Option<&mut Vec<f64>>) -> Tridiagonal {
    assert_eq!(a.len(), n * n);
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n.saturating_sub(1)];
    let mut reflectors: Vec<(usize, Vec<f64>, f64)> = Vec::new();
    let mut p = vec![0.0; n];

    for k in 0..n.saturating_sub(1) {
        let m = n - k - 1;
        let start = k + 1;
        let mut v: Vec<f64> = a[k * n + start..k * n + n].to_vec();
        let norm = dot(&v, &v).sqrt();
        diag[k] = a[k * n + k];
        if m == 1 || norm == 0.0 {
            off[k] = v[0];
            continue;
        }
        let alpha = if v[0] > 0.0 { -norm } else { norm };
        v[0] -= alpha;
        let vv = dot(&v, &v);
        if vv == 0.0 {
            off[k] = alpha;
            continue;
        }
        let tau = 2.0 / vv;

        // p = tau * S v, S the trailing m x m block
        for r in 0..m {
            let row = &a[(start + r) * n + start..(start + r) * n + n];
            p[r] = tau * dot(row, &v);
        }
        let kcoef = 0.5 * tau * dot(&p[..m], &v);
        for r in 0..m {
            p[r] -= kcoef * v[r];
        }
        // S -= v w^T + w v^T with w = p
        for r in 0..m {
            let (vr, wr) = (v[r], p[r]);
            let row = &mut a[(start + r) * n + start..(start + r) * n + n];
            for ((s, &vc), &wc) in row.iter_mut().zip(&v).zip(&p[..m]) {
                *s -= vr * wc + wr * vc;
            }
        }
        off[k] = alpha;
        if q.is_some() {
            reflectors.push((start, v, tau));
        }
    }
    if n > 0 {
        diag[n - 1] = a[(n - 1) * n + n - 1];
    }

    if let Some(q) = q {
        q.clear();
        q.resize(n * n, 0.0);
        for i in 0..n {
            q[i * n + i] = 1.0;
        }
        // Q = H_0 H_1 ... applied from the right
        for (start, v, tau) in &reflectors {
            for r in 0..n {
                let row = &mut q[r * n + start..r * n + n];
                let s = tau * dot(row, v);
                for (x, &vc) in row.iter_mut().zip(v) {
                    *x -= s * vc;
                }
            }
        }
    }
    Tridiagonal { diag, off }
}

/// Implicit-shift QL on a tridiagonal matrix. Eigenvalues are left in `t.diag`
/// (unsorted). When `z` is given (row-major `n x n`), its columns are rotated
/// along, so passing `Q` from [`tridiagonalize`] yields eigenvectors of `A`.
pub fn ql_implicit(t: &mut Tridiagonal, mut z: Option<&mut [f64]>) -> Result<()> {
    let n = t.diag.len();
    if n == 0 {
        return Ok(());
    }
    let d = &mut t.diag;
    let mut e = t.off.clone();
    e.push(0.0);

    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= QL_DEFLATION * dd || e[m] == 0.0 {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            if sweeps == MAX_SWEEPS {
                return Err(Error::NoConvergence {
                    index: l,
                    iterations: sweeps,
                });
            }
            sweeps += 1;

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0f64, 1.0f64, 0.0f64);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
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
                if let Some(z) = z.as_deref_mut() {
                    for k in 0..n {
                        let zi = z[k * n + i];
                        let zi1 = z[k * n + i + 1];
                        z[k * n + i + 1] = s * zi + c * zi1;
                        z[k * n + i] = c * zi - s * zi1;
                    }
                }
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

/// Ascending eigenvalues of a symmetric row-major matrix.
pub fn symmetric_eigenvalues(a: &[f64], n: usize) -> Result<Vec<f64>> {
    let mut work = a.to_vec();
    let mut t = tridiagonalize(&mut work, n, None);
    ql_implicit(&mut t, None)?;
    let mut vals = t.diag;
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

/// Ascending eigenvalues and matching eigenvectors (column `j` of the returned
/// row-major matrix belongs to eigenvalue `j`).
pub fn symmetric_eigen(a: &[f64], n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut work = a.to_vec();
    let mut q = Vec::new();
    let mut t = tridiagonalize(&mut work, n, Some(&mut q));
    ql_implicit(&mut t, Some(&mut q))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| t.diag[i].total_cmp(&t.diag[j]));
    let vals = order.iter().map(|&i| t.diag[i]).collect();
    let mut vecs = vec![0.0; n * n];
    for (new, &old) in order.iter().enumerate() {
        for r in 0..n {
            vecs[r * n + new] = q[r * n + old];
        }
    }
    Ok((vals, vecs))
}
