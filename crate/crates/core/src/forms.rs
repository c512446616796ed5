//! The plaquette quadratic form on edge fields, assembled two ways (direct
//! plaquette sums and the closed-form edge stencil), its axial restriction,
//! and the lattice difference operators `Q_d`, `R_d` acting on one-forms.

use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::json;

use crate::error::{Error, Result};
use crate::field::{BoxDomain, OneForm, SiteField};
use crate::gauge::{edge_field_to_one_form, AxialGauge, EdgeField};
use crate::lattice::{Lattice, Plaquette};
use crate::spectral::{BasisLabel, SymmetricOperator};
use crate::tolerances::ORTHONORMAL;

/// Ring operations needed to evaluate the form exactly on integer fields.
pub trait Scalar:
    Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> Scalar for T where
    T: Copy + Default + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

/// `u_p = u1 + u2 - u3 - u4`.
pub fn plaquette_value<T: Scalar>(lat: &Lattice, u: &EdgeField<T>, p: &Plaquette) -> T {
    lat.plaquette_edges(p)
        .iter()
        .fold(T::default(), |acc, &(id, s)| {
            if s > 0 {
                acc + u.values[id]
            } else {
                acc - u.values[id]
            }
        })
}

/// `sum_p u_p v_p` over all plaquettes of the box.
pub fn sigma_form<T: Scalar>(lat: &Lattice, u: &EdgeField<T>, v: &EdgeField<T>) -> T {
    lat.plaquettes().iter().fold(T::default(), |acc, p| {
        acc + plaquette_value(lat, u, p) * plaquette_value(lat, v, p)
    })
}

/// Integer matrix of the plaquette form in the edge basis, stored by rows with
/// ascending column indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaMatrix {
    d: usize,
    n: usize,
    rows: Vec<Vec<(usize, i64)>>,
}

/// Stencil assembly: diagonal `2(d-1) - k` by stratum, `+1` on positive and
/// `-1` on negative neighbors.
pub fn assemble_sigma(lat: &Lattice) -> SigmaMatrix {
    let diag_base = 2 * (lat.dim() as i64 - 1);
    let rows = (0..lat.edge_count())
        .map(|id| {
            let (plus, minus) = lat.neighbor_sets(id).expect("edge id in range");
            let mut row: Vec<(usize, i64)> = plus
                .into_iter()
                .map(|e| (e, 1))
                .chain(minus.into_iter().map(|e| (e, -1)))
                .collect();
            row.push((id, diag_base - lat.stratum(id) as i64));
            row.sort_unstable();
            row
        })
        .collect();
    SigmaMatrix {
        d: lat.dim(),
        n: lat.side(),
        rows,
    }
}

impl SigmaMatrix {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> &[(usize, i64)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i]
            .binary_search_by_key(&j, |&(c, _)| c)
            .map_or(0, |k| self.rows[i][k].1)
    }

    pub fn nonzeros(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// `<u, Sigma v>` in exact integer arithmetic.
    pub fn bilinear(&self, u: &[i64], v: &[i64]) -> i64 {
        self.rows
            .iter()
            .zip(u)
            .map(|(row, &ui)| ui * row.iter().map(|&(j, a)| a * v[j]).sum::<i64>())
            .sum()
    }

    pub fn bilinear_f64(&self, u: &[f64], v: &[f64]) -> f64 {
        self.rows
            .iter()
            .zip(u)
            .map(|(row, &ui)| ui * row.iter().map(|&(j, a)| a as f64 * v[j]).sum::<f64>())
            .sum()
    }

    pub fn to_operator(&self, name: impl Into<String>) -> SymmetricOperator {
        let labels = (0..self.dim()).map(BasisLabel::Edge).collect();
        SymmetricOperator::from_upper(name, labels, |i, j| self.get(i, j) as f64)
    }

    /// Principal submatrix on the free edges of the axial gauge.
    pub fn restrict_to_axial(&self, gauge: &AxialGauge) -> SymmetricOperator {
        let free = gauge.free_edges();
        let labels = free.iter().map(|&e| BasisLabel::Edge(e)).collect();
        SymmetricOperator::from_upper(
            format!("sigma0 d={} n={}", self.d, self.n),
            labels,
            |a, b| self.get(free[a], free[b]) as f64,
        )
    }
}

/// Matrix Market coordinate text: a JSON comment header
/// `{name, d, n, basis}` and 1-based lower-triangle triplets.
pub fn matrix_market(op: &SymmetricOperator, d: usize, n: usize) -> String {
    let basis = match op.labels().first() {
        Some(BasisLabel::Site { .. }) => "sites×components",
        Some(BasisLabel::Index(_)) => "index",
        _ => "edges",
    };
    let dim = op.dim();
    let mut entries = Vec::new();
    for j in 0..dim {
        for i in j..dim {
            let v = op.get(i, j);
            if v != 0.0 {
                entries.push((i + 1, j + 1, v));
            }
        }
    }
    let header = json!({ "name": op.name(), "d": d, "n": n, "basis": basis });
    let mut out = String::from("%%MatrixMarket matrix coordinate real symmetric\n");
    let _ = writeln!(out, "% {header}");
    let _ = writeln!(out, "{dim} {dim} {}", entries.len());
    for (i, j, v) in entries {
        let _ = writeln!(out, "{i} {j} {v}");
    }
    out
}

/// `(d_i f)(x) = f(x + e_i) - f(x)` on the domain grown by one site.
pub fn forward(f: &SiteField, i: usize) -> SiteField {
    SiteField::from_fn(f.domain.expand(1), |x| {
        let mut y = x.to_vec();
        y[i] += 1;
        f.get(&y) - f.get(x)
    })
}

/// `(d_i^* f)(x) = f(x - e_i) - f(x)`, the adjoint of [`forward`].
pub fn adjoint(f: &SiteField, i: usize) -> SiteField {
    SiteField::from_fn(f.domain.expand(1), |x| {
        let mut y = x.to_vec();
        y[i] -= 1;
        f.get(&y) - f.get(x)
    })
}

/// `-Delta f = 2d f(x) - sum_k (f(x + e_k) + f(x - e_k))`.
pub fn neg_laplacian(f: &SiteField) -> SiteField {
    let d = f.domain.dim();
    SiteField::from_fn(f.domain.expand(1), |x| {
        let mut y = x.to_vec();
        let mut acc = 2.0 * d as f64 * f.get(x);
        for k in 0..d {
            y[k] += 1;
            acc -= f.get(&y);
            y[k] -= 2;
            acc -= f.get(&y);
            y[k] += 1;
        }
        acc
    })
}

/// `(Q_d w)_i = -Delta w_i - sum_j d_i d_j^* w_j` for a zero-extended
/// `d`-component form, evaluated pointwise on the domain grown by one site.
/// Missing components of `w` count as zero.
pub fn apply_qd(w: &OneForm) -> OneForm {
    let d = w.domain().dim();
    let out = w.domain().expand(1);
    let components = (0..d)
        .map(|i| {
            SiteField::from_fn(out.clone(), |x| {
                let mut y = x.to_vec();
                let mut acc = 2.0 * d as f64 * w.get(i, x);
                for k in 0..d {
                    y[k] += 1;
                    acc -= w.get(i, &y);
                    y[k] -= 2;
                    acc -= w.get(i, &y);
                    y[k] += 1;
                }
                for j in 0..d {
                    // d_i d_j^* w_j (x)
                    y[i] += 1;
                    let at_i = w.get(j, &y);
                    y[j] -= 1;
                    let at_i_minus_j = w.get(j, &y);
                    y[i] -= 1;
                    let at_minus_j = w.get(j, &y);
                    y[j] += 1;
                    acc -= at_i_minus_j - at_i - at_minus_j + w.get(j, x);
                }
                acc
            })
        })
        .collect();
    OneForm { components }
}

/// `(R_d w)_i(x) = k w_i(x)` when `(x, x + e_i)` is an edge of stratum `k`,
/// zero elsewhere. Output lives on the cube with `d` components.
pub fn apply_rd(lat: &Lattice, w: &OneForm) -> OneForm {
    let d = lat.dim();
    let mut out = OneForm::zeros(BoxDomain::cube(d, lat.side()), d);
    for (id, e) in lat.edges().iter().enumerate() {
        let x = e.base.to_signed();
        let k = lat.stratum(id) as f64;
        out.components[e.axis].set(&x, k * w.get(e.axis, &x));
    }
    out
}

/// `1/2 sum_{i,j} ||d_i w_j - d_j w_i||^2`.
pub fn curl_form(w: &OneForm) -> f64 {
    let d = w.domain().dim();
    let blank = SiteField::zeros(w.domain().clone());
    let comp = |j: usize| w.components.get(j).unwrap_or(&blank);
    let mut total = 0.0;
    for i in 0..d {
        for j in (i + 1)..d {
            // the (i, j) and (j, i) terms coincide
            total += forward(comp(j), i).sub(&forward(comp(i), j)).norm_sq();
        }
    }
    total
}

/// Both sides of `Sigma(u, u) = <w, Q_d w> - <w, R_d w>` with `w` the one-form of `u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormSplit {
    pub sigma: f64,
    pub q_form: f64,
    pub r_form: f64,
}

impl FormSplit {
    pub fn lhs(&self) -> f64 {
        self.sigma
    }

    pub fn rhs(&self) -> f64 {
        self.q_form - self.r_form
    }

    pub fn error(&self) -> f64 {
        (self.lhs() - self.rhs()).abs()
    }
}

/// Evaluates the plaquette form directly and the `Q_d - R_d` form on the
/// associated one-form.
pub fn split_sigma_form(lat: &Lattice, u: &EdgeField<f64>) -> FormSplit {
    let w = edge_field_to_one_form(lat, u);
    FormSplit {
        sigma: sigma_form(lat, u, u),
        q_form: w.inner(&apply_qd(&w)),
        r_form: w.inner(&apply_rd(lat, &w)),
    }
}

/// Largest entry of `|G - I|` for the Gram matrix of `basis`.
pub fn gram_deviation(basis: &[OneForm]) -> f64 {
    let mut worst = 0.0f64;
    for (a, u) in basis.iter().enumerate() {
        for (b, v) in basis.iter().enumerate().skip(a) {
            let target = if a == b { 1.0 } else { 0.0 };
            worst = worst.max((u.inner(v) - target).abs());
        }
    }
    worst
}

/// `M_ab = <b_a, Q_d b_b>` for an orthonormal family of one-forms.
pub fn assemble_projected_qd(
    basis: &[OneForm],
    labels: Vec<BasisLabel>,
    name: impl Into<String>,
) -> Result<SymmetricOperator> {
    if labels.len() != basis.len() {
        return Err(Error::Shape(format!(
            "{} labels for {} basis vectors",
            labels.len(),
            basis.len()
        )));
    }
    let deviation = gram_deviation(basis);
    if deviation > ORTHONORMAL {
        return Err(Error::NotOrthonormal {
            deviation,
            tolerance: ORTHONORMAL,
        });
    }
    let images: Vec<OneForm> = basis.iter().map(apply_qd).collect();
    Ok(SymmetricOperator::from_upper(name, labels, |a, b| {
        basis[a].inner(&images[b])
    }))
}

/// `Q_d` restricted to the axial one-forms, in the free-edge basis.
pub fn axial_projected_qd(lat: &Lattice, gauge: &AxialGauge) -> Result<SymmetricOperator> {
    let labels = gauge
        .free_edges()
        .iter()
        .map(|&e| BasisLabel::Edge(e))
        .collect();
    assemble_projected_qd(
        &gauge.axial_basis(lat),
        labels,
        format!("projected Q d={} n={}", lat.dim(), lat.side()),
    )
}
