mod common;

use common::{int_field, one_form, real_field, rel_err, rng, site_field};
use maxwell_core::field::{BoxDomain, OneForm, SiteField};
use maxwell_core::forms::{
    adjoint, apply_qd, apply_rd, assemble_projected_qd, axial_projected_qd, curl_form, forward,
    neg_laplacian, split_sigma_form,
};
use maxwell_core::gauge::edge_field_to_one_form;
use maxwell_core::spectral::BasisLabel;
use maxwell_core::{assemble_sigma, sigma_form, AxialGauge, EdgeField, Lattice};
use proptest::prelude::*;
use rand::Rng;

fn sum_fields(fields: &[SiteField]) -> SiteField {
    let mut acc = fields[0].clone();
    for f in &fields[1..] {
        acc = acc.sub(&SiteField::from_fn(f.domain.clone(), |x| -f.get(x)));
    }
    acc
}

fn max_diff(a: &SiteField, b: &SiteField) -> f64 {
    a.sub(b).values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn stencil_equals_direct_sum_exactly(d in 2usize..=3, n in 1usize..=4, seed in any::<u64>()) {
        let lat = Lattice::new(d, n).unwrap();
        let s = assemble_sigma(&lat);
        let mut r = rng(seed);
        let u = int_field(&lat, &mut r, 50);
        let v = int_field(&lat, &mut r, 50);
        prop_assert_eq!(s.bilinear(&u.values, &v.values), sigma_form(&lat, &u, &v));
        prop_assert_eq!(sigma_form(&lat, &u, &v), sigma_form(&lat, &v, &u));
        prop_assert!(sigma_form(&lat, &u, &u) >= 0);
    }

    #[test]
    fn q_minus_r_reproduces_sigma(d in 2usize..=3, n in 1usize..=4, seed in any::<u64>()) {
        let lat = Lattice::new(d, n).unwrap();
        let u = real_field(&lat, &mut rng(seed));
        let split = split_sigma_form(&lat, &u);
        prop_assert!(split.error() <= 1e-9 * (1.0 + split.sigma.abs()));
        prop_assert!(split.r_form >= 0.0);
    }

    #[test]
    fn curl_form_matches_qd(d in 2usize..=4, side in 1i64..=3, seed in any::<u64>()) {
        let mut r = rng(seed);
        let dom = BoxDomain::new(vec![-1; d], vec![side; d]);
        let w = one_form(&dom, d, &mut r);
        let q = w.inner(&apply_qd(&w));
        prop_assert!(rel_err(q, curl_form(&w)) <= 1e-10);
    }

    #[test]
    fn difference_adjointness(d in 2usize..=3, axis in 0usize..3, seed in any::<u64>()) {
        let axis = axis % d;
        let mut r = rng(seed);
        let phi = site_field(BoxDomain::cube(d, 3), &mut r);
        let psi = site_field(BoxDomain::new(vec![1; d], vec![4; d]), &mut r);
        let lhs = phi.inner(&forward(&psi, axis));
        let rhs = adjoint(&phi, axis).inner(&psi);
        prop_assert!(rel_err(lhs, rhs) <= 1e-12);
    }
}

#[test]
fn laplacian_factorizations_and_commutators() {
    let mut r = rng(7);
    for d in 2..=3 {
        let f = site_field(BoxDomain::cube(d, 3), &mut r);
        let lap = neg_laplacian(&f);
        let fwd: Vec<SiteField> = (0..d).map(|i| adjoint(&forward(&f, i), i)).collect();
        let bwd: Vec<SiteField> = (0..d).map(|i| forward(&adjoint(&f, i), i)).collect();
        assert!(max_diff(&lap, &sum_fields(&fwd)) < 1e-12);
        assert!(max_diff(&lap, &sum_fields(&bwd)) < 1e-12);
        for i in 0..d {
            for j in 0..d {
                let a = forward(&adjoint(&f, j), i);
                let b = adjoint(&forward(&f, i), j);
                assert!(max_diff(&a, &b) < 1e-12, "[d_{i}, d*_{j}] != 0");
            }
        }
    }
}

#[test]
fn gradients_and_constants_are_annihilated() {
    let mut r = rng(11);
    let lat = Lattice::new(3, 3).unwrap();
    let phi: Vec<f64> = (0..lat.vertex_count())
        .map(|_| r.gen_range(-1.0..1.0))
        .collect();
    let u = EdgeField::from_values(
        lat.edges()
            .iter()
            .map(|e| {
                phi[lat.vertex_index(&e.head().to_signed()).unwrap()]
                    - phi[lat.vertex_index(&e.base.to_signed()).unwrap()]
            })
            .collect(),
    );
    assert!(sigma_form(&lat, &u, &u).abs() < 1e-24);
    let split = split_sigma_form(&lat, &u);
    assert!(split.rhs().abs() < 1e-12);

    let f = site_field(BoxDomain::cube(2, 3), &mut r);
    let grad = OneForm {
        components: vec![forward(&f, 0), forward(&f, 1)],
    };
    assert!(apply_qd(&grad).norm_sq() < 1e-20);
    assert!(split_sigma_form(&lat, &EdgeField::zeros(&lat)).rhs() == 0.0);
}

#[test]
fn rd_vanishes_on_interior_support() {
    let lat = Lattice::new(3, 4).unwrap();
    let mut u = EdgeField::zeros(&lat);
    for (id, v) in u.values.iter_mut().enumerate() {
        if lat.stratum(id) == 0 {
            *v = 1.0 + id as f64;
        }
    }
    let w = edge_field_to_one_form(&lat, &u);
    assert_eq!(apply_rd(&lat, &w).norm_sq(), 0.0);
}

#[test]
fn qd_operator_norm_is_bounded_by_stencil() {
    for (d, n) in [(2, 4), (3, 2)] {
        let lat = Lattice::new(d, n).unwrap();
        let g = AxialGauge::new(&lat);
        let q = axial_projected_qd(&lat, &g).unwrap();
        let eigs = q.eigenvalues().unwrap();
        let top = *eigs.last().unwrap();
        assert!(top <= 8.0 * d as f64, "lambda_max {top} above 8d");
        assert!(eigs[0] >= -1e-10 * top);
    }
}

#[test]
fn projected_qd_is_sigma0_plus_stratum_diagonal() {
    for (d, n) in [(2, 3), (3, 2), (3, 3)] {
        let lat = Lattice::new(d, n).unwrap();
        let g = AxialGauge::new(&lat);
        let q = axial_projected_qd(&lat, &g).unwrap();
        let s = assemble_sigma(&lat);
        let free = g.free_edges();
        for a in 0..free.len() {
            for b in 0..free.len() {
                let corr = if a == b {
                    lat.stratum(free[a]) as f64
                } else {
                    0.0
                };
                assert_eq!(q.get(a, b), s.get(free[a], free[b]) as f64 + corr);
            }
        }
    }
}

#[test]
fn projection_onto_all_unit_forms_reproduces_qd_entries() {
    let d = 2;
    let dom = BoxDomain::new(vec![-1, -1], vec![2, 2]);
    let mut basis = Vec::new();
    let mut labels = Vec::new();
    for c in 0..d {
        for x in dom.sites() {
            basis.push(OneForm::unit(d, c, &x));
            labels.push(BasisLabel::Site {
                component: c,
                site: x,
            });
        }
    }
    let m = assemble_projected_qd(&basis, labels, "padded").unwrap();
    let mut r = rng(3);
    let w = one_form(&dom, d, &mut r);
    let coords: Vec<f64> = basis.iter().map(|b| b.inner(&w)).collect();
    let direct = w.inner(&apply_qd(&w));
    assert!(rel_err(m.quad(&coords, &coords), direct) < 1e-12);
}
