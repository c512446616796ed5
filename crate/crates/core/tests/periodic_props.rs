mod common;

use common::{axial_form, rel_err, rng};
use maxwell_core::field::{BoxDomain, OneForm};
use maxwell_core::forms::{apply_qd, axial_projected_qd};
use maxwell_core::periodic::{
    apply_qper, embed_axial_into_torus, kernel_dimension, torus_curl_form, Torus, TorusField,
};
use maxwell_core::spectral::singular_tolerance;
use maxwell_core::{analytic_spectrum, periodic_free_energy, torus_operator, AxialGauge, Lattice};
use rand::Rng;

#[test]
fn analytic_multiset_matches_numeric_spectrum() {
    for d in 2..=3 {
        for n in 2..=6 {
            let op = torus_operator(d, n).unwrap();
            let numeric = op.eigenvalues().unwrap();
            let spec = analytic_spectrum(d, n).unwrap();
            let analytic = spec.multiset();
            assert_eq!(numeric.len(), analytic.len());
            for (a, b) in numeric.iter().zip(&analytic) {
                assert!((a - b).abs() <= 1e-8, "d={d} n={n}: {a} vs {b}");
            }
            assert!((spec.trace() - op.trace()).abs() <= 1e-8 * op.dim() as f64);
            let tol = singular_tolerance(&numeric);
            let zeros = numeric.iter().filter(|&&l| l <= tol).count();
            assert_eq!(zeros, kernel_dimension(d, n));
            let gap = numeric.iter().copied().find(|&l| l > tol).unwrap();
            let expect = 2.0 * (1.0 - (2.0 * std::f64::consts::PI / n as f64).cos());
            assert!((gap - expect).abs() <= 1e-8);
            assert!(kernel_dimension(d, n) <= d * n.pow(d as u32 - 1));
        }
    }
}

#[test]
fn four_dimensional_torus_also_matches() {
    for n in 2..=3 {
        let numeric = torus_operator(4, n).unwrap().eigenvalues().unwrap();
        let analytic = analytic_spectrum(4, n).unwrap().multiset();
        for (a, b) in numeric.iter().zip(&analytic) {
            assert!((a - b).abs() <= 1e-8);
        }
    }
}

#[test]
fn matrix_pointwise_and_form_agree() {
    let mut r = rng(1);
    for (d, n) in [(2, 3), (3, 2), (3, 4)] {
        let t = Torus::new(d, n).unwrap();
        let op = torus_operator(d, n).unwrap();
        let v: Vec<f64> = (0..op.dim()).map(|_| r.gen_range(-1.0..1.0)).collect();
        let w = TorusField::from_vec(t, &v);
        let pointwise = apply_qper(&w).to_vec();
        let matrix = op.apply(&v);
        for (a, b) in pointwise.iter().zip(&matrix) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(rel_err(op.quad(&v, &v), torus_curl_form(&w)) < 1e-12);
    }
}

#[test]
fn d2_free_energy_closed_form() {
    for n in [2usize, 4, 8, 16, 32, 64] {
        let f = periodic_free_energy(2, n).unwrap();
        let nf = n as f64;
        assert!((f + nf.ln() / nf).abs() <= 1e-9);
    }
    for n in 2..=7 {
        let numeric = torus_operator(2, n).unwrap().eigenvalues().unwrap();
        let tol = singular_tolerance(&numeric);
        let direct: f64 = numeric.iter().filter(|&&l| l > tol).map(|l| l.ln()).sum();
        let f = periodic_free_energy(2, n).unwrap();
        assert!((f + direct / (2.0 * (n * n) as f64)).abs() <= 1e-9);
    }
}

#[test]
fn embedding_is_isometric_and_preserves_the_form() {
    let mut r = rng(2);
    for (d, n) in [(2, 2), (2, 4), (3, 2), (3, 3)] {
        let lat = Lattice::new(d, n).unwrap();
        let g = AxialGauge::new(&lat);
        for margin in [2, 3] {
            for _ in 0..10 {
                let w = axial_form(&lat, &g, &mut r);
                let e = embed_axial_into_torus(&w, n, margin).unwrap();
                assert!(rel_err(w.norm_sq(), e.norm_sq()) <= 1e-12);
                let lhs = w.inner(&apply_qd(&w));
                let rhs = e.inner(&apply_qper(&e));
                assert!(rel_err(lhs, rhs) <= 1e-10);
            }
        }
        let zero = OneForm::zeros(BoxDomain::cube(d, n), d);
        assert_eq!(embed_axial_into_torus(&zero, n, 2).unwrap().norm_sq(), 0.0);
    }
}

#[test]
fn torus_compression_on_embedded_axial_basis_is_projected_qd() {
    for (d, n) in [(2, 3), (3, 2)] {
        let lat = Lattice::new(d, n).unwrap();
        let g = AxialGauge::new(&lat);
        let margin = 2;
        let op = torus_operator(d, n + 1 + 2 * margin).unwrap();
        let basis: Vec<Vec<f64>> = g
            .axial_basis(&lat)
            .iter()
            .map(|b| embed_axial_into_torus(b, n, margin).unwrap().to_vec())
            .collect();
        let compressed = op.compress("embedded", &basis).unwrap();
        let projected = axial_projected_qd(&lat, &g).unwrap();
        for a in 0..basis.len() {
            for b in 0..basis.len() {
                assert!((compressed.get(a, b) - projected.get(a, b)).abs() < 1e-12);
            }
        }
        let check = maxwell_core::spectral::check_interlacing(&op, &basis).unwrap();
        assert!(check.holds);
    }
}
