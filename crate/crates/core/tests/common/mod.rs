#![allow(dead_code)]

use maxwell_core::field::{BoxDomain, OneForm, SiteField};
use maxwell_core::{AxialGauge, EdgeField, Lattice};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int_field(lat: &Lattice, rng: &mut ChaCha8Rng, bound: i64) -> EdgeField<i64> {
    EdgeField::from_values(
        (0..lat.edge_count())
            .map(|_| rng.gen_range(-bound..=bound))
            .collect(),
    )
}

pub fn real_field(lat: &Lattice, rng: &mut ChaCha8Rng) -> EdgeField<f64> {
    EdgeField::from_values(
        (0..lat.edge_count())
            .map(|_| rng.gen_range(-1.0..1.0))
            .collect(),
    )
}

pub fn site_field(domain: BoxDomain, rng: &mut ChaCha8Rng) -> SiteField {
    SiteField::from_fn(domain, |_| rng.gen_range(-1.0..1.0))
}

pub fn one_form(domain: &BoxDomain, components: usize, rng: &mut ChaCha8Rng) -> OneForm {
    OneForm {
        components: (0..components)
            .map(|_| site_field(domain.clone(), rng))
            .collect(),
    }
}

/// Random axial one-form on the cube: free-edge values only.
pub fn axial_form(lat: &Lattice, gauge: &AxialGauge, rng: &mut ChaCha8Rng) -> OneForm {
    let u = gauge.project_free(&real_field(lat, rng));
    maxwell_core::gauge::edge_field_to_one_form(lat, &u)
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + a.abs().max(b.abs()))
}
