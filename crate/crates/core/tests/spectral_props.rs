mod common;

use common::rng;
use maxwell_core::spectral::{
    check_interlacing, compare_dropped_subspace, coordinate_basis, density_normalization,
    SpectrumReport,
};
use maxwell_core::{assemble_sigma, AxialGauge, BasisLabel, Lattice, SymmetricOperator};
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn random_symmetric(dim: usize, r: &mut ChaCha8Rng) -> SymmetricOperator {
    let labels = (0..dim).map(BasisLabel::Index).collect();
    SymmetricOperator::from_upper("random", labels, |_, _| r.gen_range(-1.0..1.0))
}

fn random_psd(dim: usize, r: &mut ChaCha8Rng) -> SymmetricOperator {
    let b: Vec<f64> = (0..dim * dim).map(|_| r.gen_range(-1.0..1.0)).collect();
    let labels = (0..dim).map(BasisLabel::Index).collect();
    SymmetricOperator::from_upper("gram", labels, |i, j| {
        (0..dim).map(|k| b[k * dim + i] * b[k * dim + j]).sum()
    })
}

/// Orthonormal rank-`l` family by modified Gram-Schmidt on Gaussian-ish vectors.
fn random_orthonormal(dim: usize, l: usize, r: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    while out.len() < l {
        let mut v: Vec<f64> = (0..dim).map(|_| r.gen_range(-1.0..1.0)).collect();
        for _ in 0..2 {
            for u in &out {
                let c: f64 = u.iter().zip(&v).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(u).for_each(|(a, b)| *a -= c * b);
            }
        }
        let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm > 1e-3 {
            out.push(v.into_iter().map(|a| a / norm).collect());
        }
    }
    out
}

fn oracle_eigs(a: &SymmetricOperator) -> Vec<f64> {
    let m = DMatrix::from_row_slice(a.dim(), a.dim(), a.data());
    let mut e: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    e.sort_by(f64::total_cmp);
    e
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn eigenvalues_agree_with_nalgebra(dim in 1usize..60, seed in any::<u64>()) {
        let a = random_symmetric(dim, &mut rng(seed));
        let ours = a.eigenvalues().unwrap();
        let theirs = oracle_eigs(&a);
        let scale = a.frobenius().max(1.0);
        for (x, y) in ours.iter().zip(&theirs) {
            prop_assert!((x - y).abs() <= 1e-10 * scale);
        }
        let sum: f64 = ours.iter().sum();
        prop_assert!((sum - a.trace()).abs() <= 1e-8 * scale * dim as f64);
    }
}

#[test]
fn eigenpairs_are_backward_stable() {
    let mut r = rng(5);
    for dim in [10, 75, 200] {
        let a = random_symmetric(dim, &mut r);
        let (vals, vecs) = a.eigen().unwrap();
        let norm = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for (j, &l) in vals.iter().enumerate() {
            let v: Vec<f64> = (0..dim).map(|i| vecs[i * dim + j]).collect();
            let av = a.apply(&v);
            let res = av
                .iter()
                .zip(&v)
                .map(|(x, y)| (x - l * y).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!(res <= 1e-8 * norm, "residual {res} at dim {dim}");
        }
    }
}

#[test]
fn full_sigma_d2_n1_spectrum() {
    let lat = Lattice::new(2, 1).unwrap();
    let e = assemble_sigma(&lat)
        .to_operator("sigma")
        .eigenvalues()
        .unwrap();
    let expect = [0.0, 0.0, 0.0, 4.0];
    for (x, y) in e.iter().zip(expect) {
        assert!((x - y).abs() < 1e-12);
    }
}

#[test]
fn trace_identity_and_psd_for_assembled_operators() {
    for (d, n) in [(2, 6), (3, 3), (4, 2)] {
        let lat = Lattice::new(d, n).unwrap();
        let sigma = assemble_sigma(&lat);
        let full = sigma.to_operator("sigma");
        let s0 = sigma.restrict_to_axial(&AxialGauge::new(&lat));
        for op in [&full, &s0] {
            let e = op.eigenvalues().unwrap();
            let norm = e.last().unwrap().abs();
            assert!(e[0] >= -1e-10 * norm);
            let sum: f64 = e.iter().sum();
            assert!((sum - op.trace()).abs() <= 1e-8 * norm * op.dim() as f64);
        }
    }
}

#[test]
fn interlacing_for_random_compressions() {
    let mut r = rng(0);
    for _ in 0..200 {
        let a = random_psd(20, &mut r);
        let basis = random_orthonormal(20, 10, &mut r);
        let res = check_interlacing(&a, &basis).unwrap();
        assert!(res.holds, "violation at {:?}", res.first_violation);
    }
}

#[test]
fn dropping_one_axial_direction_moves_density_within_interlacing_bound() {
    for n in [3, 5, 8] {
        let lat = Lattice::new(2, n).unwrap();
        let s0 = assemble_sigma(&lat).restrict_to_axial(&AxialGauge::new(&lat));
        let dim = s0.dim();
        let e = s0.eigenvalues().unwrap();
        let range = e[0].ln().abs().max(e[dim - 1].ln().abs());
        for drop in [0, dim / 2, dim - 1] {
            let keep: Vec<usize> = (0..dim).filter(|&i| i != drop).collect();
            let c = compare_dropped_subspace(&s0, &coordinate_basis(dim, &keep), 2, n).unwrap();
            assert!(c.interlacing.holds);
            assert!(c.difference.abs() <= range / density_normalization(2, n) + 1e-12);
        }
    }
}

#[test]
fn axial_gap_is_positive_and_decays() {
    let mut pts = Vec::new();
    for n in 2..=8 {
        let lat = Lattice::new(2, n).unwrap();
        let s0 = assemble_sigma(&lat).restrict_to_axial(&AxialGauge::new(&lat));
        let rep = SpectrumReport::new(&s0, 2, n).unwrap();
        let l1 = rep.lambda_min().unwrap();
        assert!(l1 > 1e-10 * rep.lambda_max().unwrap());
        assert!(rep.trace_log.is_some());
        pts.push(((n as f64).ln(), l1.ln()));
    }
    let k = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    eprintln!("fitted exponent of lambda_1(sigma0) vs n, d=2: {slope:.3}");
    assert!(slope < 0.0);
}
