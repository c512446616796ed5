//! The Maxwell operator on `(d-1)`-component fields over the discrete torus
//! `T_n^d`, its plane-wave spectrum, and the embedding of axial one-forms.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{BoxDomain, OneForm};
use crate::lattice::multi_indices;
use crate::spectral::{density_normalization, BasisLabel, SymmetricOperator};

fn check_sizes(d: usize, n: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::Dimension(d));
    }
    if n < 2 {
        return Err(Error::Side { min: 2, got: n });
    }
    Ok(())
}

/// Row-major site indexing on `(Z/nZ)^d`, axis 0 most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Torus {
    pub d: usize,
    pub n: usize,
}

impl Torus {
    pub fn new(d: usize, n: usize) -> Result<Self> {
        check_sizes(d, n)?;
        Ok(Self { d, n })
    }

    pub fn site_count(&self) -> usize {
        self.n.pow(self.d as u32)
    }

    pub fn index(&self, x: &[i64]) -> usize {
        let n = self.n as i64;
        x.iter()
            .fold(0usize, |acc, &c| acc * self.n + c.rem_euclid(n) as usize)
    }

    pub fn site(&self, mut lin: usize) -> Vec<i64> {
        let mut x = vec![0i64; self.d];
        for a in (0..self.d).rev() {
            x[a] = (lin % self.n) as i64;
            lin /= self.n;
        }
        x
    }

    /// Index of `x + s e_axis`, wrapping around.
    pub fn shift(&self, lin: usize, axis: usize, s: i64) -> usize {
        let mut x = self.site(lin);
        x[axis] += s;
        self.index(&x)
    }
}

/// `d - 1` real fields on the torus, stored site-major per component.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusField {
    pub torus: Torus,
    pub components: Vec<Vec<f64>>,
}

impl TorusField {
    pub fn zeros(torus: Torus) -> Self {
        Self {
            torus,
            components: vec![vec![0.0; torus.site_count()]; torus.d - 1],
        }
    }

    /// Inverse of [`TorusField::to_vec`].
    pub fn from_vec(torus: Torus, v: &[f64]) -> Self {
        let s = torus.site_count();
        Self {
            torus,
            components: v.chunks(s).map(<[f64]>::to_vec).collect(),
        }
    }

    /// Concatenated components, in the basis order of [`torus_operator`].
    pub fn to_vec(&self) -> Vec<f64> {
        self.components.concat()
    }

    pub fn inner(&self, other: &Self) -> f64 {
        self.components
            .iter()
            .flatten()
            .zip(other.components.iter().flatten())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.inner(self)
    }

    /// Forward difference of component `j` along `axis`, with wraparound.
    pub fn forward(&self, j: usize, axis: usize) -> Vec<f64> {
        let f = &self.components[j];
        (0..f.len())
            .map(|s| f[self.torus.shift(s, axis, 1)] - f[s])
            .collect()
    }
}

fn sq_norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum()
}

/// `(Q^per w)_i = -Delta w_i - sum_{j<d-1} d_i d_j^* w_j` as a dense matrix on the
/// `(component, site)` basis, component-major.
pub fn torus_operator(d: usize, n: usize) -> Result<SymmetricOperator> {
    let t = Torus::new(d, n)?;
    let s = t.site_count();
    let c = d - 1;
    let dim = c * s;
    let mut data = vec![0.0; dim * dim];
    for i in 0..c {
        for x in 0..s {
            let row = &mut data[(i * s + x) * dim..(i * s + x + 1) * dim];
            row[i * s + x] += 2.0 * d as f64;
            for k in 0..d {
                row[i * s + t.shift(x, k, 1)] -= 1.0;
                row[i * s + t.shift(x, k, -1)] -= 1.0;
            }
            for j in 0..c {
                let xi = t.shift(x, i, 1);
                row[j * s + t.shift(xi, j, -1)] -= 1.0;
                row[j * s + xi] += 1.0;
                row[j * s + t.shift(x, j, -1)] += 1.0;
                row[j * s + x] -= 1.0;
            }
        }
    }
    let labels = (0..c)
        .flat_map(|component| {
            (0..s).map(move |site| BasisLabel::Site {
                component,
                site: t.site(site),
            })
        })
        .collect();
    SymmetricOperator::from_dense(format!("periodic Q d={d} n={n}"), labels, data)
}

/// Pointwise application of the torus operator.
pub fn apply_qper(w: &TorusField) -> TorusField {
    let t = w.torus;
    let c = t.d - 1;
    let mut out = TorusField::zeros(t);
    for i in 0..c {
        for x in 0..t.site_count() {
            let wi = &w.components[i];
            let mut acc = 2.0 * t.d as f64 * wi[x];
            for k in 0..t.d {
                acc -= wi[t.shift(x, k, 1)] + wi[t.shift(x, k, -1)];
            }
            let xi = t.shift(x, i, 1);
            for j in 0..c {
                let wj = &w.components[j];
                acc -= wj[t.shift(xi, j, -1)] - wj[xi] - wj[t.shift(x, j, -1)] + wj[x];
            }
            out.components[i][x] = acc;
        }
    }
    out
}

/// `1/2 sum_{i,j<d-1} ||d_i w_j - d_j w_i||^2 + sum_{i<d-1} ||d_{d-1} w_i||^2`.
pub fn torus_curl_form(w: &TorusField) -> f64 {
    let c = w.torus.d - 1;
    let mut total = 0.0;
    for i in 0..c {
        for j in (i + 1)..c {
            let a = w.forward(j, i);
            let b = w.forward(i, j);
            total += sq_norm(&a.iter().zip(&b).map(|(x, y)| x - y).collect::<Vec<_>>());
        }
        total += sq_norm(&w.forward(i, c));
    }
    total
}

/// A frequency `p = q / n` of the dual torus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourierMode {
    pub q: Vec<usize>,
    pub n: usize,
}

impl FourierMode {
    pub fn p(&self) -> Vec<f64> {
        self.q.iter().map(|&q| q as f64 / self.n as f64).collect()
    }

    /// `2 (1 - cos 2 pi p_k)` for one axis.
    pub fn axis_symbol(&self, k: usize) -> f64 {
        2.0 * (1.0 - (2.0 * PI * self.q[k] as f64 / self.n as f64).cos())
    }

    /// `eps_p = 2 sum_k (1 - cos 2 pi p_k)`.
    pub fn epsilon(&self) -> f64 {
        (0..self.q.len()).map(|k| self.axis_symbol(k)).sum()
    }

    pub fn labels(&self) -> Vec<String> {
        self.q.iter().map(|q| format!("{q}/{}", self.n)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeFamily {
    /// `p = 0`: the constants.
    Zero,
    /// `p_1 = .. = p_{d-1} = 0`: the whole fiber is one eigenspace.
    FullBlock,
    /// The gradient-like vector `psi^(d-1)`.
    Gradient,
    /// The divergence-free vectors `psi^(j)`, `j < d-1`.
    Transverse,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralEntry {
    pub mode: FourierMode,
    pub eigenvalue: f64,
    pub multiplicity: usize,
    pub family: ModeFamily,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticSpectrum {
    pub d: usize,
    pub n: usize,
    pub entries: Vec<SpectralEntry>,
}

/// Plane-wave diagonalization: every fiber contributes `2(1 - cos 2 pi p_d)`
/// once and `eps_p` with multiplicity `d - 2`, except the degenerate fibers
/// `p = 0` and `p' = 0`, which are eigenspaces as a whole.
pub fn analytic_spectrum(d: usize, n: usize) -> Result<AnalyticSpectrum> {
    check_sizes(d, n)?;
    let mut entries = Vec::new();
    for q in multi_indices(d, n) {
        let mode = FourierMode { q, n };
        let transverse_free = mode.q[..d - 1].iter().all(|&c| c == 0);
        let last = mode.axis_symbol(d - 1);
        if transverse_free {
            let family = if mode.q[d - 1] == 0 {
                ModeFamily::Zero
            } else {
                ModeFamily::FullBlock
            };
            entries.push(SpectralEntry {
                mode,
                eigenvalue: last,
                multiplicity: d - 1,
                family,
            });
            continue;
        }
        if d > 2 {
            entries.push(SpectralEntry {
                mode: mode.clone(),
                eigenvalue: mode.epsilon(),
                multiplicity: d - 2,
                family: ModeFamily::Transverse,
            });
        }
        entries.push(SpectralEntry {
            mode,
            eigenvalue: last,
            multiplicity: 1,
            family: ModeFamily::Gradient,
        });
    }
    Ok(AnalyticSpectrum { d, n, entries })
}

impl AnalyticSpectrum {
    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// Ascending eigenvalues repeated by multiplicity.
    pub fn multiset(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self
            .entries
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.eigenvalue, e.multiplicity))
            .collect();
        v.sort_by(f64::total_cmp);
        v
    }

    pub fn trace(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.multiplicity as f64 * e.eigenvalue)
            .sum()
    }

    /// Multiplicity of the eigenvalue 0 (exact zeros of the symbols).
    pub fn kernel_count(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.eigenvalue == 0.0)
            .map(|e| e.multiplicity)
            .sum()
    }

    pub fn smallest_positive(&self) -> Option<f64> {
        self.entries
            .iter()
            .map(|e| e.eigenvalue)
            .filter(|&l| l > 0.0)
            .min_by(f64::total_cmp)
    }

    /// `sum_{lambda > 0} mult * log lambda`.
    pub fn positive_trace_log(&self) -> f64 {
        self.entries
            .iter()
            .filter(|e| e.eigenvalue > 0.0)
            .map(|e| e.multiplicity as f64 * e.eigenvalue.ln())
            .sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.entries
                .iter()
                .map(|e| {
                    serde_json::json!({
                        "p": e.mode.labels(),
                        "eigenvalue": e.eigenvalue,
                        "multiplicity": e.multiplicity,
                        "family": e.family,
                    })
                })
                .collect(),
        )
    }
}

/// `(d - 1) + n^(d-1) - 1`.
pub fn kernel_dimension(d: usize, n: usize) -> usize {
    (d - 1) + n.pow(d as u32 - 1) - 1
}

/// `-(1 / 2n^d) sum_{lambda > 0} mult * log lambda` over the plane-wave spectrum.
pub fn periodic_free_energy(d: usize, n: usize) -> Result<f64> {
    let spec = analytic_spectrum(d, n)?;
    Ok(-spec.positive_trace_log() / density_normalization(d, n))
}

/// Torus side used by [`embed_axial_into_torus`]: `n + 1 + 2 margin`.
pub fn embedding_side(n: usize, margin: usize) -> usize {
    n + 1 + 2 * margin
}

/// Places an axial form on `{0..n}^d` at offset `margin` inside the torus of
/// side `n + 1 + 2 margin`, dropping the (vanishing) last component.
pub fn embed_axial_into_torus(w: &OneForm, n: usize, margin: usize) -> Result<TorusField> {
    if margin < 2 {
        return Err(Error::Margin(margin));
    }
    let d = w.domain().dim();
    let t = Torus::new(d, embedding_side(n, margin))?;
    let cube = BoxDomain::cube(d, n);
    let mut out = TorusField::zeros(t);
    for (i, comp) in w.components.iter().enumerate() {
        for x in comp.domain.sites() {
            let v = comp.get(&x);
            if v == 0.0 {
                continue;
            }
            if i + 1 >= d || !cube.contains(&x) {
                return Err(Error::Shape(format!(
                    "component {i} is nonzero at {x:?}, outside the axial support"
                )));
            }
            let y: Vec<i64> = x.iter().map(|c| c + margin as i64).collect();
            out.components[i][t.index(&y)] = v;
        }
    }
    Ok(out)
}
