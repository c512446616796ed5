//! Dense symmetric operators, their spectra, trace-log free energies, and the
//! min-max consequences used to compare operators on nested subspaces.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::eigen;
use crate::error::{Error, Result};
use crate::tolerances::{INTERLACING_RELATIVE, ORTHONORMAL, SINGULAR_RELATIVE};

/// What a row/column of an operator stands for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisLabel {
    Edge(usize),
    Site { component: usize, site: Vec<i64> },
    Index(usize),
}

/// Dense symmetric matrix with labeled basis and a provenance name.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricOperator {
    name: String,
    labels: Vec<BasisLabel>,
    data: Vec<f64>,
}

impl SymmetricOperator {
    /// Assemble from the upper triangle; the lower triangle is mirrored, so the
    /// result is exactly symmetric.
    pub fn from_upper(
        name: impl Into<String>,
        labels: Vec<BasisLabel>,
        mut entry: impl FnMut(usize, usize) -> f64,
    ) -> Self {
        let n = labels.len();
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = entry(i, j);
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        Self {
            name: name.into(),
            labels,
            data,
        }
    }

    /// Wrap a row-major matrix that must already be exactly symmetric.
    pub fn from_dense(
        name: impl Into<String>,
        labels: Vec<BasisLabel>,
        data: Vec<f64>,
    ) -> Result<Self> {
        let n = labels.len();
        if data.len() != n * n {
            return Err(Error::Shape(format!(
                "{} entries for dimension {n}",
                data.len()
            )));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if data[i * n + j] != data[j * n + i] {
                    return Err(Error::Shape(format!("asymmetric at ({i}, {j})")));
                }
            }
        }
        Ok(Self {
            name: name.into(),
            labels,
            data,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim() + j]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                self.data[i * n..(i + 1) * n]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn quad(&self, u: &[f64], v: &[f64]) -> f64 {
        u.iter().zip(self.apply(v)).map(|(a, b)| a * b).sum()
    }

    /// Principal submatrix on the given rows/columns.
    pub fn principal(&self, name: impl Into<String>, keep: &[usize]) -> Self {
        let labels = keep.iter().map(|&k| self.labels[k].clone()).collect();
        Self::from_upper(name, labels, |a, b| self.get(keep[a], keep[b]))
    }

    /// `B^T A B` for the matrix `B` whose columns are `basis`. The basis must
    /// be orthonormal in the coordinates of this operator.
    pub fn compress(&self, name: impl Into<String>, basis: &[Vec<f64>]) -> Result<Self> {
        check_orthonormal_vectors(basis, self.dim())?;
        let images: Vec<Vec<f64>> = basis.iter().map(|b| self.apply(b)).collect();
        let labels = (0..basis.len()).map(BasisLabel::Index).collect();
        Ok(Self::from_upper(name, labels, |a, b| {
            basis[a].iter().zip(&images[b]).map(|(x, y)| x * y).sum()
        }))
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        eigen::symmetric_eigenvalues(&self.data, self.dim())
    }

    /// Ascending eigenvalues and eigenvectors (column `j` of the row-major matrix).
    pub fn eigen(&self) -> Result<(Vec<f64>, Vec<f64>)> {
        eigen::symmetric_eigen(&self.data, self.dim())
    }
}

fn check_orthonormal_vectors(basis: &[Vec<f64>], dim: usize) -> Result<()> {
    let mut worst = 0.0f64;
    for (a, u) in basis.iter().enumerate() {
        if u.len() != dim {
            return Err(Error::Shape(format!(
                "basis vector of length {} in dimension {dim}",
                u.len()
            )));
        }
        for v in &basis[a..] {
            let g: f64 = u.iter().zip(v).map(|(x, y)| x * y).sum();
            let want = if std::ptr::eq(u, v) { 1.0 } else { 0.0 };
            worst = worst.max((g - want).abs());
        }
    }
    if worst > ORTHONORMAL {
        return Err(Error::NotOrthonormal {
            deviation: worst,
            tolerance: ORTHONORMAL,
        });
    }
    Ok(())
}

/// Ascending eigenvalues with multiplicity.
pub fn sym_eigs(a: &SymmetricOperator) -> Result<Vec<f64>> {
    a.eigenvalues()
}

/// `SINGULAR_RELATIVE * lambda_max`, the cut below which eigenvalues count as zero.
pub fn singular_tolerance(eigs: &[f64]) -> f64 {
    let top = eigs.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    SINGULAR_RELATIVE * top
}

/// `sum_j log lambda_j`, refusing if any eigenvalue is at or below `tol`.
pub fn trace_log(eigs: &[f64], tol: f64) -> Result<f64> {
    let bad = eigs.iter().filter(|&&l| l <= tol).count();
    if bad > 0 {
        return Err(Error::SingularOperator {
            count: bad,
            tolerance: tol,
        });
    }
    Ok(eigs.iter().map(|l| l.ln()).sum())
}

/// Normalization `2 n^d` of the free-energy densities. `n^d` rather than the
/// site count `(n+1)^d`; the two agree in the limit.
pub fn density_normalization(d: usize, n: usize) -> f64 {
    2.0 * (n as f64).powi(d as i32)
}

/// `-tr log A / (2 n^d)` from a precomputed spectrum.
pub fn density_from_eigs(eigs: &[f64], d: usize, n: usize) -> Result<f64> {
    Ok(-trace_log(eigs, singular_tolerance(eigs))? / density_normalization(d, n))
}

pub fn free_energy_density(a: &SymmetricOperator, d: usize, n: usize) -> Result<f64> {
    density_from_eigs(&a.eigenvalues()?, d, n)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub operator_name: String,
    pub d: usize,
    pub n: usize,
    pub eigenvalues: Vec<f64>,
    pub trace_log: Option<f64>,
    pub free_energy_density: Option<f64>,
    pub gap: Option<f64>,
}

impl SpectrumReport {
    pub fn new(a: &SymmetricOperator, d: usize, n: usize) -> Result<Self> {
        let eigenvalues = a.eigenvalues()?;
        Ok(Self::from_eigenvalues(a.name(), d, n, eigenvalues))
    }

    /// A singular spectrum leaves `trace_log` and the density unset.
    pub fn from_eigenvalues(name: &str, d: usize, n: usize, eigenvalues: Vec<f64>) -> Self {
        let tl = trace_log(&eigenvalues, singular_tolerance(&eigenvalues)).ok();
        Self {
            operator_name: name.to_string(),
            d,
            n,
            gap: eigenvalues.first().copied(),
            free_energy_density: tl.map(|t| -t / density_normalization(d, n)),
            trace_log: tl,
            eigenvalues,
        }
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn lambda_min(&self) -> Option<f64> {
        self.eigenvalues.first().copied()
    }

    pub fn lambda_max(&self) -> Option<f64> {
        self.eigenvalues.last().copied()
    }

    pub fn to_json(&self, with_eigenvalues: bool) -> Value {
        let mut v = json!({
            "operator_name": self.operator_name,
            "d": self.d,
            "n": self.n,
            "dim": self.dim(),
            "lambda_min": self.lambda_min(),
            "lambda_max": self.lambda_max(),
            "trace_log": self.trace_log,
            "free_energy_density": self.free_energy_density,
        });
        if with_eigenvalues {
            v["eigenvalues"] = json!(self.eigenvalues);
        }
        v
    }
}

/// Outcome of an interlacing check `lambda_j(A) <= lambda_j(PAP) <= lambda_{j+k-l}(A)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Interlacing {
    pub holds: bool,
    /// 1-based index of the first violated `j`.
    pub first_violation: Option<usize>,
    /// Largest amount by which either inequality is exceeded (0 if none).
    pub max_excess: f64,
    pub tolerance: f64,
}

/// Interlacing between a full ascending spectrum (size `k`) and the spectrum of a
/// rank-`l` compression, with slack `INTERLACING_RELATIVE * scale`.
pub fn interlacing_from_spectra(full: &[f64], compressed: &[f64], scale: f64) -> Interlacing {
    let k = full.len();
    let l = compressed.len();
    assert!(l <= k, "compression cannot exceed the full dimension");
    let tol = INTERLACING_RELATIVE * scale.max(f64::MIN_POSITIVE);
    let mut first = None;
    let mut worst = 0.0f64;
    for j in 0..l {
        let below = full[j] - compressed[j];
        let above = compressed[j] - full[j + k - l];
        let excess = below.max(above);
        worst = worst.max(excess.max(0.0));
        if excess > tol && first.is_none() {
            first = Some(j + 1);
        }
    }
    Interlacing {
        holds: first.is_none(),
        first_violation: first,
        max_excess: worst,
        tolerance: tol,
    }
}

fn spectral_norm(eigs: &[f64]) -> f64 {
    eigs.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

/// Compress `a` onto the span of an orthonormal `basis` (coordinates of `a`)
/// and check the interlacing inequalities.
pub fn check_interlacing(a: &SymmetricOperator, basis: &[Vec<f64>]) -> Result<Interlacing> {
    let full = a.eigenvalues()?;
    let compressed = a.compress("compression", basis)?.eigenvalues()?;
    Ok(interlacing_from_spectra(
        &full,
        &compressed,
        spectral_norm(&full),
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubspaceComparison {
    pub density_full: f64,
    pub density_subspace: f64,
    pub difference: f64,
    pub interlacing: Interlacing,
}

/// Free-energy densities of `a` and of its compression onto `basis`.
pub fn compare_dropped_subspace(
    a: &SymmetricOperator,
    basis: &[Vec<f64>],
    d: usize,
    n: usize,
) -> Result<SubspaceComparison> {
    let full = a.eigenvalues()?;
    let sub = a
        .compress(format!("{} on subspace", a.name()), basis)?
        .eigenvalues()?;
    let density_full = density_from_eigs(&full, d, n)?;
    let density_subspace = density_from_eigs(&sub, d, n)?;
    Ok(SubspaceComparison {
        density_full,
        density_subspace,
        difference: density_full - density_subspace,
        interlacing: interlacing_from_spectra(&full, &sub, spectral_norm(&full)),
    })
}

/// Coordinate basis vectors `e_i` for the kept indices, in the order given.
pub fn coordinate_basis(dim: usize, keep: &[usize]) -> Vec<Vec<f64>> {
    keep.iter()
        .map(|&i| {
            let mut v = vec![0.0; dim];
            v[i] = 1.0;
            v
        })
        .collect()
}
