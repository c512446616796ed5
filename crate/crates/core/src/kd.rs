//! The constant `K_d` from its closed formula, evaluated with endpoint-free
//! lattice sums, and the leading-order free-energy prediction built on it.

use std::f64::consts::{LN_2, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::spectral::density_normalization;

/// Pinned high-resolution Riemann values: `(id, d, m, value)`.
pub const FIXTURES: &[(&str, usize, usize, f64)] = &[
    ("k3-riemann-m128", 3, 128, -0.871_704_072_357_637_9),
    ("k3-riemann-m256", 3, 256, -0.856_921_791_801_781_7),
];

pub fn fixture_id(d: usize, m: usize) -> Option<&'static str> {
    FIXTURES.iter().find(|f| f.1 == d && f.2 == m).map(|f| f.0)
}

/// `2 sin^2(pi q / m) = 1 - cos(2 pi q / m)` for `q = 0..m`, without the
/// cancellation of the cosine form near `q = 0`.
fn symbol_table(m: usize) -> Vec<f64> {
    (0..m)
        .map(|q| {
            let s = (PI * q as f64 / m as f64).sin();
            2.0 * s * s
        })
        .collect()
}

fn check_grid(m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::Grid(m));
    }
    Ok(())
}

/// `(1/m) sum_{q=1}^{m-1} log(1 - cos(2 pi q / m))`.
pub fn one_dim_log_integral(m: usize) -> Result<f64> {
    check_grid(m)?;
    let s = symbol_table(m);
    Ok(s[1..].iter().map(|v| v.ln()).sum::<f64>() / m as f64)
}

/// `(1/m^d) sum_{q in {1..m-1}^d} log sum_k (1 - cos(2 pi q_k / m))`.
///
/// The outer index is split across threads; the per-slice partial sums are
/// combined in index order, so the result does not depend on scheduling.
pub fn d_dim_log_integral(d: usize, m: usize) -> Result<f64> {
    if d < 2 {
        return Err(Error::Dimension(d));
    }
    check_grid(m)?;
    let s = symbol_table(m);
    let partials: Vec<f64> = (1..m)
        .into_par_iter()
        .map(|q1| {
            let mut idx = vec![1usize; d - 1];
            let mut acc = 0.0;
            loop {
                let total = s[q1] + idx.iter().map(|&q| s[q]).sum::<f64>();
                acc += total.ln();
                let mut a = d - 1;
                loop {
                    if a == 0 {
                        return acc;
                    }
                    a -= 1;
                    idx[a] += 1;
                    if idx[a] < m {
                        break;
                    }
                    idx[a] = 1;
                }
            }
        })
        .collect();
    Ok(partials.iter().sum::<f64>() / (m as f64).powi(d as i32))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KdMethod {
    Riemann,
    AnalyticD2,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KdPieces {
    /// `-((d-1)/2) log 2`
    pub log2_term: f64,
    /// `-(1/2) I_1`
    pub one_dim_integral_term: f64,
    /// `-((d-2)/2) I_d`
    pub d_dim_integral_term: f64,
}

impl KdPieces {
    pub fn total(&self) -> f64 {
        self.log2_term + self.one_dim_integral_term + self.d_dim_integral_term
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KdEstimate {
    pub d: usize,
    pub grid: Option<usize>,
    pub value: f64,
    pub pieces: KdPieces,
    pub one_dim_integral: f64,
    /// Not evaluated for `d = 2`, where its coefficient vanishes.
    pub d_dim_integral: Option<f64>,
    pub method: KdMethod,
    pub fixture: Option<String>,
}

/// `K_d = -((d-1)/2) log 2 - (1/2) I_1 - ((d-2)/2) I_d` with both integrals
/// replaced by lattice sums on the grid `{1/m, .., (m-1)/m}`.
pub fn kd_value(d: usize, m: usize) -> Result<KdEstimate> {
    if d < 2 {
        return Err(Error::Dimension(d));
    }
    let i1 = one_dim_log_integral(m)?;
    let id = if d > 2 {
        Some(d_dim_log_integral(d, m)?)
    } else {
        None
    };
    let pieces = KdPieces {
        log2_term: -((d - 1) as f64 / 2.0) * LN_2,
        one_dim_integral_term: -0.5 * i1,
        d_dim_integral_term: id.map_or(0.0, |v| -((d - 2) as f64 / 2.0) * v),
    };
    Ok(KdEstimate {
        d,
        grid: Some(m),
        value: pieces.total(),
        pieces,
        one_dim_integral: i1,
        d_dim_integral: id,
        method: KdMethod::Riemann,
        fixture: fixture_id(d, m).map(str::to_string),
    })
}

/// `K_2` from `I_1 = -log 2`, which makes the two surviving terms cancel.
pub fn kd_analytic_d2() -> KdEstimate {
    let pieces = KdPieces {
        log2_term: -0.5 * LN_2,
        one_dim_integral_term: 0.5 * LN_2,
        d_dim_integral_term: 0.0,
    };
    KdEstimate {
        d: 2,
        grid: None,
        value: pieces.total(),
        pieces,
        one_dim_integral: -LN_2,
        d_dim_integral: None,
        method: KdMethod::AnalyticD2,
        fixture: None,
    }
}

/// `sum_{j=1}^{N-1} log j!`: exact integer factorials while they fit in a
/// `u64` (`j <= 20`), log-gamma beyond.
pub fn log_superfactorial(rank: usize) -> f64 {
    let mut fact = 1u64;
    let mut total = 0.0;
    for j in 1..rank {
        if j <= 20 {
            fact *= j as u64;
            total += (fact as f64).ln();
        } else {
            total += ln_gamma(j as f64 + 1.0);
        }
    }
    total
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PredictionTerms {
    /// `(|E^1| / 2n^d) N^2 log g^2`
    pub gaussian_scaling_term: f64,
    /// `(d-1) log(prod_{j<N} j! / (2 pi)^{N/2})`
    pub haar_jacobian_term: f64,
    /// `N^2 K_d`
    pub kd_term: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FreeEnergyPrediction {
    pub d: usize,
    pub n: usize,
    pub rank: usize,
    pub coupling: f64,
    pub free_edge_count: usize,
    /// `(d-1) n^d - d n^(d-1) + 1`, shown next to the exact count.
    pub asymptotic_free_edge_count: i64,
    pub value: f64,
    pub terms: PredictionTerms,
}

/// Leading-order free energy of the rank-`N` theory at coupling `g` on
/// `{0..n}^d`, using the exact number of non-tree edges.
pub fn leading_order_free_energy(
    d: usize,
    n: usize,
    rank: usize,
    g: f64,
    kd: f64,
) -> Result<FreeEnergyPrediction> {
    if d < 2 {
        return Err(Error::Dimension(d));
    }
    if n < 1 {
        return Err(Error::Side { min: 1, got: n });
    }
    if rank < 1 {
        return Err(Error::Parameter(format!(
            "group rank must be at least 1, got {rank}"
        )));
    }
    if !(g > 0.0 && g.is_finite()) {
        return Err(Error::Parameter(format!(
            "coupling must be positive, got {g}"
        )));
    }
    let sites = (n + 1).pow(d as u32);
    let edges = d * n * (n + 1).pow(d as u32 - 1);
    let free = edges - (sites - 1);
    let r = rank as f64;
    let terms = PredictionTerms {
        gaussian_scaling_term: free as f64 / density_normalization(d, n) * r * r * (g * g).ln(),
        haar_jacobian_term: (d - 1) as f64 * (log_superfactorial(rank) - r / 2.0 * (2.0 * PI).ln()),
        kd_term: r * r * kd,
    };
    Ok(FreeEnergyPrediction {
        d,
        n,
        rank,
        coupling: g,
        free_edge_count: free,
        asymptotic_free_edge_count: crate::lattice::asymptotic_free_edge_count(d, n),
        value: terms.gaussian_scaling_term + terms.haar_jacobian_term + terms.kd_term,
        terms,
    })
}
