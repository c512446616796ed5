//! Invariant suites run at one `(d, n)`.

use std::f64::consts::PI;

use maxwell_core::field::BoxDomain;
use maxwell_core::forms::{
    adjoint, apply_qd, axial_projected_qd, curl_form, forward, split_sigma_form,
};
use maxwell_core::periodic::{apply_qper, embed_axial_into_torus, kernel_dimension};
use maxwell_core::spectral::{check_interlacing, coordinate_basis, singular_tolerance};
use maxwell_core::tolerances::{
    CLOSED_FORM, FORM_RELATIVE, INTERLACING_RELATIVE, SIGMA_MAXWELL, SPECTRUM_MATCH,
};
use maxwell_core::{
    analytic_spectrum, assemble_sigma, gauge::edge_field_to_one_form, periodic_free_energy,
    sigma_form, torus_operator, AxialGauge, EdgeField, Lattice, OneForm, SiteField,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub description: &'static str,
    pub status: Status,
    pub max_error: Option<f64>,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    fn measured(
        name: &'static str,
        description: &'static str,
        max_error: f64,
        tolerance: f64,
    ) -> Self {
        Self {
            name,
            description,
            status: if max_error <= tolerance {
                Status::Pass
            } else {
                Status::Fail
            },
            max_error: Some(max_error),
            tolerance,
            note: None,
        }
    }

    fn skipped(name: &'static str, description: &'static str, tolerance: f64, why: String) -> Self {
        Self {
            name,
            description,
            status: Status::Skipped,
            max_error: None,
            tolerance,
            note: Some(why),
        }
    }

    fn judged(
        name: &'static str,
        description: &'static str,
        pass: bool,
        tolerance: f64,
        note: String,
    ) -> Self {
        Self {
            name,
            description,
            status: if pass { Status::Pass } else { Status::Fail },
            max_error: None,
            tolerance,
            note: Some(note),
        }
    }

    fn with_note(mut self, note: String) -> Self {
        self.note = Some(note);
        self
    }
}

pub struct VerifySpec {
    pub d: usize,
    pub n: usize,
    pub seed: u64,
    pub trials: usize,
    pub max_dim: usize,
    pub margin: usize,
}

fn int_field(lat: &Lattice, rng: &mut ChaCha8Rng) -> EdgeField<i64> {
    EdgeField::from_values(
        (0..lat.edge_count())
            .map(|_| rng.gen_range(-1000..=1000))
            .collect(),
    )
}

fn real_field(lat: &Lattice, rng: &mut ChaCha8Rng) -> EdgeField<f64> {
    EdgeField::from_values(
        (0..lat.edge_count())
            .map(|_| rng.gen_range(-1.0..1.0))
            .collect(),
    )
}

fn site_field(domain: BoxDomain, rng: &mut ChaCha8Rng) -> SiteField {
    SiteField::from_fn(domain, |_| rng.gen_range(-1.0..1.0))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

pub fn run(spec: &VerifySpec) -> anyhow::Result<Vec<CheckResult>> {
    let VerifySpec {
        d,
        n,
        trials,
        max_dim,
        margin,
        ..
    } = *spec;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let lat = Lattice::new(d, n)?;
    let gauge = AxialGauge::new(&lat);
    let sigma = assemble_sigma(&lat);
    let mut out = Vec::new();

    let mut worst = 0i64;
    for _ in 0..trials {
        let u = int_field(&lat, &mut rng);
        let v = int_field(&lat, &mut rng);
        worst = worst.max((sigma.bilinear(&u.values, &v.values) - sigma_form(&lat, &u, &v)).abs());
    }
    out.push(CheckResult::measured(
        "stencil_exactness",
        "edge stencil matrix reproduces the direct plaquette sum on integer fields",
        worst as f64,
        0.0,
    ));

    let mut worst = 0.0f64;
    for _ in 0..trials {
        let split = split_sigma_form(&lat, &real_field(&lat, &mut rng));
        worst = worst.max(split.error() / (1.0 + split.sigma.abs()));
    }
    out.push(CheckResult::measured(
        "sigma_equals_q_minus_r",
        "plaquette form equals <w, Q_d w> - <w, R_d w> for the associated one-form",
        worst,
        SIGMA_MAXWELL,
    ));

    let padded = BoxDomain::cube(d, n).expand(1);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let w = OneForm {
            components: (0..d)
                .map(|_| site_field(padded.clone(), &mut rng))
                .collect(),
        };
        worst = worst.max(rel(w.inner(&apply_qd(&w)), curl_form(&w)));
    }
    out.push(CheckResult::measured(
        "curl_form_identity",
        "<w, Q_d w> equals half the summed squared curls",
        worst,
        FORM_RELATIVE,
    ));

    let mut worst = 0.0f64;
    for _ in 0..trials {
        let axis = rng.gen_range(0..d);
        let phi = site_field(BoxDomain::cube(d, n), &mut rng);
        let psi = site_field(BoxDomain::cube(d, n).expand(1), &mut rng);
        worst = worst.max(rel(
            phi.inner(&forward(&psi, axis)),
            adjoint(&phi, axis).inner(&psi),
        ));
    }
    out.push(CheckResult::measured(
        "difference_adjointness",
        "forward difference and its adjoint are dual under the lattice inner product",
        worst,
        FORM_RELATIVE,
    ));

    let free = gauge.free_edges();
    let q = axial_projected_qd(&lat, &gauge)?;
    let mut worst = 0.0f64;
    for (a, &ea) in free.iter().enumerate() {
        for (b, &eb) in free.iter().enumerate() {
            let corr = if a == b { lat.stratum(ea) as f64 } else { 0.0 };
            worst = worst.max((q.get(a, b) - sigma.get(ea, eb) as f64 - corr).abs());
        }
    }
    out.push(CheckResult::measured(
        "projected_q_is_sigma0_plus_strata",
        "Q_d compressed to axial forms equals the axial plaquette matrix plus the stratum diagonal",
        worst,
        0.0,
    ));

    let s0 = sigma.restrict_to_axial(&gauge);
    if s0.dim() > max_dim {
        out.push(CheckResult::skipped(
            "axial_gap_positive",
            "smallest eigenvalue of the axial plaquette matrix is positive",
            maxwell_core::tolerances::SINGULAR_RELATIVE,
            format!("dimension {} exceeds --max-dim {max_dim}", s0.dim()),
        ));
    } else {
        let e = s0.eigenvalues()?;
        let (l1, top) = (e[0], *e.last().unwrap());
        let tol = maxwell_core::tolerances::SINGULAR_RELATIVE;
        let trace_err = (e.iter().sum::<f64>() - s0.trace()).abs();
        out.push(CheckResult::judged(
            "axial_gap_positive",
            "smallest eigenvalue of the axial plaquette matrix is positive",
            l1 > tol * top,
            tol,
            format!("lambda_1 = {l1:e}, lambda_max = {top:e}"),
        ));
        out.push(CheckResult::measured(
            "eigenvalue_sum_equals_trace",
            "eigenvalues of the axial plaquette matrix sum to its trace",
            trace_err,
            1e-8 * top * e.len() as f64,
        ));
        let dim = s0.dim();
        let drop = rng.gen_range(0..dim);
        let keep: Vec<usize> = (0..dim).filter(|&i| i != drop).collect();
        let il = check_interlacing(&s0, &coordinate_basis(dim, &keep))?;
        out.push(
            CheckResult::measured(
                "interlacing_drop_one",
                "dropping one axial direction interlaces the spectrum",
                il.max_excess / top.max(f64::MIN_POSITIVE),
                INTERLACING_RELATIVE,
            )
            .with_note(format!("dropped free edge {}", free[drop])),
        );
    }

    if n < 2 {
        for name in [
            "periodic_spectrum_match",
            "periodic_kernel_dimension",
            "periodic_gap_formula",
        ] {
            out.push(CheckResult::skipped(
                name,
                "torus operator checks",
                SPECTRUM_MATCH,
                "the torus needs n >= 2".into(),
            ));
        }
    } else if (d - 1) * n.pow(d as u32) > max_dim {
        out.push(CheckResult::skipped(
            "periodic_spectrum_match",
            "numeric torus spectrum equals the plane-wave prediction",
            SPECTRUM_MATCH,
            format!(
                "dimension {} exceeds --max-dim {max_dim}",
                (d - 1) * n.pow(d as u32)
            ),
        ));
    } else {
        let numeric = torus_operator(d, n)?.eigenvalues()?;
        let analytic = analytic_spectrum(d, n)?.multiset();
        let worst = numeric
            .iter()
            .zip(&analytic)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        out.push(CheckResult::measured(
            "periodic_spectrum_match",
            "numeric torus spectrum equals the plane-wave prediction",
            worst,
            SPECTRUM_MATCH,
        ));
        let tol = singular_tolerance(&numeric);
        let zeros = numeric.iter().filter(|&&l| l <= tol).count();
        let expect = kernel_dimension(d, n);
        out.push(
            CheckResult::measured(
                "periodic_kernel_dimension",
                "numeric nullity equals (d-1) + n^(d-1) - 1",
                zeros.abs_diff(expect) as f64,
                0.0,
            )
            .with_note(format!("numeric {zeros}, formula {expect}")),
        );
        let gap = numeric.iter().copied().find(|&l| l > tol).unwrap_or(0.0);
        out.push(CheckResult::measured(
            "periodic_gap_formula",
            "smallest positive torus eigenvalue equals 2(1 - cos 2 pi / n)",
            (gap - 2.0 * (1.0 - (2.0 * PI / n as f64).cos())).abs(),
            SPECTRUM_MATCH,
        ));
    }

    let (mut iso, mut form) = (0.0f64, 0.0f64);
    for _ in 0..trials {
        let w = edge_field_to_one_form(&lat, &gauge.project_free(&real_field(&lat, &mut rng)));
        if w.norm_sq() == 0.0 {
            continue;
        }
        let e = embed_axial_into_torus(&w, n, margin)?;
        iso = iso.max(rel(w.norm_sq(), e.norm_sq()));
        form = form.max(rel(w.inner(&apply_qd(&w)), e.inner(&apply_qper(&e))));
    }
    out.push(CheckResult::measured(
        "torus_embedding",
        "embedding axial forms into the torus preserves norms and the Q form",
        iso.max(form),
        FORM_RELATIVE,
    ));

    if d == 2 && n >= 2 {
        let f = periodic_free_energy(2, n)?;
        let nf = n as f64;
        out.push(CheckResult::measured(
            "periodic_density_closed_form",
            "d=2 periodic density equals -(log n)/n",
            (f + nf.ln() / nf).abs(),
            CLOSED_FORM,
        ));
    }

    Ok(out)
}
