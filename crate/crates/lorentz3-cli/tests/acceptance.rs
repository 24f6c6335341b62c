//! Acceptance suite: every exit criterion at its pinned tolerance, one
//! pass/fail line per criterion (run with `cargo test --test acceptance --
//! --nocapture` to see the lines; each test is one criterion).

use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lorentz3::curvjet::{
    adapted_frame, classify_grid, dkappa_rank, killing_dim_estimate, ClassifyConfig,
    ComponentLabel,
};
use lorentz3::difftensor::{cotton_york, lie_derivative_metric, metric_eval, ricci_scalar, riemann};
use lorentz3::einstein::{
    act, fact_action_suite, gram_q23, make_n, make_ra, make_rlambda, make_t, n_affine_on_chart,
    stereo, stereo_conformal_defect, witt_index, O23Element,
};
use lorentz3::flows::{
    clairaut_drift, energy_drift, first_return_estimate, geodesic_integrate, homothety_defect,
    lightlike_transfer_check, normal_flow, SliceDirection,
};
use lorentz3::liealg::{
    fixed_subspace, koszul_connection, left_invariant_curvature, nilpotency_certificate,
    o12_bracket, CurvModElement, ElementType, LieAlgebraDyn, O12Element, ScalarProduct3,
};
use lorentz3::linalg;
use lorentz3::models::{
    ads_killing_pair, fit_structure_constants, h_a_isotropy_at, lh_automorphism,
    lorentz_heisenberg_pair, lorentz_sol_pair, make_flat, make_g_a, make_h_a,
    make_heis_normal_form, sample_points, sol_killing_extension4, FlatVariant, TrigPoly,
};

fn standard_a() -> TrigPoly<f64> {
    TrigPoly::two_plus_cos()
}

fn cfg() -> ClassifyConfig<f64> {
    ClassifyConfig::default()
}

fn max33(m: &[[f64; 3]; 3]) -> f64 {
    m.iter().flatten().fold(0.0f64, |a, x| a.max(x.abs()))
}

fn max333(m: &[[[f64; 3]; 3]; 3]) -> f64 {
    m.iter().flatten().flatten().fold(0.0f64, |a, x| a.max(x.abs()))
}

fn max4(w: &[[[[f64; 3]; 3]; 3]; 3]) -> f64 {
    let mut m = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    m = m.max(w[i][j][k][l].abs());
                }
            }
        }
    }
    m
}

#[test]
fn criterion_1_flat_models() {
    for variant in [FlatVariant::MinkowskiDiag, FlatVariant::NullFrame] {
        let metric = make_flat::<f64>(variant).metric;
        let mut riemann_max = 0.0f64;
        for p in metric.grid(5) {
            let (_, low) = riemann(&metric, p).unwrap();
            riemann_max = riemann_max.max(max4(&low));
            let fr = adapted_frame(&metric, p).unwrap();
            assert_eq!(
                dkappa_rank(&metric, &fr, 2, 1e-6).unwrap(),
                0,
                "flat rank must be 0 at {p:?}"
            );
            assert_eq!(killing_dim_estimate(&metric, &fr, 2, 1e-6).unwrap(), 6);
        }
        assert!(riemann_max < 1e-9, "flat |Riemann| = {riemann_max}");
    }
    println!("criterion 1 (flat models): PASS");
}

#[test]
fn criterion_2_hyperbolic_family() {
    let a = standard_a();
    let metric = make_g_a(&a).unwrap().metric;
    // scalar curvature at t = 0 against the warped-product oracle
    let warped_oracle = |t: f64| {
        let av = a.eval(t);
        let a1 = a.eval_deriv(1, t);
        let a2 = a.eval_deriv(2, t);
        -2.0 * a2 / av + a1 * a1 / (2.0 * av * av)
    };
    let (_, scalar) = ricci_scalar(&metric, [0.0, 0.3, -0.2]).unwrap();
    assert!(
        (scalar - warped_oracle(0.0)).abs() < 1e-6,
        "sigma(0) = {scalar} vs oracle {}",
        warped_oracle(0.0)
    );
    assert!((scalar - 8.0 * std::f64::consts::PI.powi(2) / 3.0).abs() < 1e-6);
    // catalog Killing residuals
    let model = make_g_a(&a).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut resid = 0.0f64;
    for p in sample_points(&model.metric.domain, 40, &mut rng) {
        for field in &model.killing {
            resid = resid.max(max33(&lie_derivative_metric(&model.metric, field, p).unwrap()));
        }
    }
    assert!(resid < 1e-9, "killing residual {resid}");
    // classification over the 9^3 grid
    let rep = classify_grid(&metric, 9, &cfg()).unwrap();
    let total = rep.points.len() as f64;
    let rank3 = rep.points.iter().filter(|r| r.rank == 3).count() as f64;
    let kill3 = rep.points.iter().filter(|r| r.killing_dim == 3).count() as f64;
    assert!(rank3 / total >= 0.9, "rank-3 fraction {}", rank3 / total);
    assert!(kill3 / total >= 0.9);
    let parabolic = rep
        .points
        .iter()
        .filter(|r| r.isotropy_type == Some(ElementType::Parabolic))
        .count();
    let hyperbolic = rep
        .points
        .iter()
        .filter(|r| r.isotropy_type == Some(ElementType::Hyperbolic))
        .count() as f64;
    assert_eq!(parabolic, 0, "no parabolic isotropy on g_a");
    assert!(hyperbolic / total >= 0.9);
    println!("criterion 2 (hyperbolic family g_a): PASS");
}

#[test]
fn criterion_3_parabolic_family() {
    let a = standard_a();
    let model = make_h_a(&a).unwrap();
    let metric = &model.metric;
    let mut scalar_max = 0.0f64;
    let mut cotton_max = 0.0f64;
    for p in metric.grid(9) {
        scalar_max = scalar_max.max(ricci_scalar(metric, p).unwrap().1.abs());
        cotton_max = cotton_max.max(max333(&cotton_york(metric, p).unwrap()));
    }
    assert!(scalar_max < 1e-8, "|sigma| = {scalar_max}");
    assert!(cotton_max < 1e-7, "|C| = {cotton_max}");
    // Killing catalog closes to the heis brackets
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let pts = sample_points(&metric.domain, 12, &mut rng);
    let (fit, fit_resid) = fit_structure_constants(&model.killing, &pts);
    assert!(fit_resid < 1e-9);
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                assert!((fit[k][i][j] - model.expected_sc[k][i][j]).abs() < 1e-9);
            }
        }
    }
    // isotropy parabolic with tight certificate at >= 90% of grid points
    let rep = classify_grid(metric, 9, &cfg()).unwrap();
    let total = rep.points.len() as f64;
    let parabolic_tight = rep
        .points
        .iter()
        .filter(|r| {
            r.isotropy_type == Some(ElementType::Parabolic)
                && r.q.map(|q| q.abs() < 1e-10).unwrap_or(false)
        })
        .count() as f64;
    assert!(parabolic_tight / total >= 0.9, "tight parabolic fraction {}", parabolic_tight / total);
    // the orbit planes span(d_u, d_t) are lightlike of rank 1
    for &p in pts.iter().take(8) {
        let g = metric_eval(metric, p).unwrap();
        let induced = vec![g[0][0], g[0][1], g[1][0], g[1][1]];
        let (neg, zero, pos) = linalg::signature_dyn(2, &induced, 1e-10);
        assert_eq!((neg, zero, pos), (0, 1, 1), "orbit plane rank at {p:?}");
    }
    // the isotropy generator acts nilpotently on the Killing algebra
    let mut heis = LieAlgebraDyn::<f64>::new(3, "h_a_killing");
    for i in 0..3 {
        for j in (i + 1)..3 {
            let coeffs: Vec<(usize, f64)> = (0..3)
                .filter(|&k| model.expected_sc[k][i][j] != 0.0)
                .map(|k| (k, model.expected_sc[k][i][j]))
                .collect();
            heis.set_bracket(i, j, &coeffs);
        }
    }
    assert!(nilpotency_certificate(&heis, &h_a_isotropy_at([0.4, -0.3, 0.6])));
    println!("criterion 3 (parabolic family h_a): PASS");
}

#[test]
fn criterion_4_left_invariant_models() {
    // AdS via the Killing form
    let (sl2, killing_form) = ads_killing_pair::<f64>();
    let curv = left_invariant_curvature(&sl2, &killing_form);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut kmin = f64::INFINITY;
    let mut kmax = f64::NEG_INFINITY;
    let mut count = 0;
    while count < 100 {
        let u = [
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        ];
        let v = [
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        ];
        if let Some(k) = curv.sectional(&u, &v) {
            kmin = kmin.min(k);
            kmax = kmax.max(k);
            count += 1;
        }
    }
    assert!(kmax - kmin < 1e-10, "dispersion {}", kmax - kmin);
    assert!((0.5 * (kmin + kmax) + 0.125).abs() < 1e-10);
    let scaled = ScalarProduct3::new({
        let mut g = killing_form.gram;
        for row in g.iter_mut() {
            for x in row.iter_mut() {
                *x /= 8.0;
            }
        }
        g
    })
    .unwrap();
    let k = left_invariant_curvature(&sl2, &scaled)
        .sectional(&[0.0, 1.0, 0.0], &[1.0, 0.0, 1.0])
        .unwrap();
    assert!((k + 1.0).abs() < 1e-10, "rescaled K = {k}");

    // Lorentz-Heisenberg table and scalar against the hand-derived oracle
    let (heis, lh_sp) = lorentz_heisenberg_pair::<f64>();
    let nabla = koszul_connection(&heis, &lh_sp);
    let oracle = |i: usize, j: usize| -> [f64; 3] {
        match (i, j) {
            (0, 1) => [0.0, 0.0, 0.5],
            (1, 0) => [0.0, 0.0, -0.5],
            (0, 2) | (2, 0) => [-0.5, 0.0, 0.0],
            (1, 2) | (2, 1) => [0.0, 0.5, 0.0],
            _ => [0.0; 3],
        }
    };
    for i in 0..3 {
        for j in 0..3 {
            for l in 0..3 {
                assert!(
                    (nabla[i][j][l] - oracle(i, j)[l]).abs() < 1e-12,
                    "nabla[{i}][{j}][{l}]"
                );
            }
        }
    }
    let lh_curv = left_invariant_curvature(&heis, &lh_sp);
    assert!((lh_curv.scalar - 0.5).abs() < 1e-12, "LH scalar {}", lh_curv.scalar);

    // Lorentz-Sol 4-dimensional extension: exact Jacobi
    assert_eq!(sol_killing_extension4::<f64>().jacobi_defect(), 0.0);
    let (_sol, sol_sp) = lorentz_sol_pair::<f64>();
    assert_eq!(sol_sp.gram[0][2], 1.0);

    // the automorphism preserves the product exactly
    let phi = lh_automorphism::<f64>(2.0);
    let basis = |i: usize| {
        let mut v = [0.0f64; 3];
        v[i] = 1.0;
        v
    };
    for i in 0..3 {
        for j in 0..3 {
            let pi = linalg::mat3_vec(&phi, &basis(i));
            let pj = linalg::mat3_vec(&phi, &basis(j));
            assert_eq!(lh_sp.pair(&pi, &pj), lh_sp.pair(&basis(i), &basis(j)));
        }
    }
    println!("criterion 4 (left-invariant models): PASS");
}

#[test]
fn criterion_5_curvature_module() {
    // exact bracket table
    let e = O12Element::<f64>::e();
    let h = O12Element::<f64>::h();
    let f = O12Element::<f64>::f();
    assert_eq!(o12_bracket(&h, &e).coeffs, [1.0, 0.0, 0.0]);
    assert_eq!(o12_bracket(&h, &f).coeffs, [0.0, 0.0, -1.0]);
    assert_eq!(o12_bracket(&e, &f).coeffs, [0.0, 1.0, 0.0]);
    // fixed space of e^{tE}: exactly 2-dimensional, spanned by kappa_0, kappa_1
    let fixed = fixed_subspace(&[e]);
    assert_eq!(fixed.len(), 2);
    for v in &fixed {
        let coords = v.to_coords().unwrap();
        for c in &coords[2..] {
            assert!(c.abs() < 1e-10, "component outside span(kappa_0, kappa_1): {c}");
        }
    }
    // and kappa_0, kappa_1 are themselves fixed
    for k in [CurvModElement::<f64>::kappa0(), CurvModElement::kappa1()] {
        assert!(lorentz3::liealg::module_action(&e, &k).max_abs() < 1e-14);
    }
    // element types with exact certificates
    let tol = 1e-10;
    let (te, qe) = e.element_type(tol);
    assert_eq!((te, qe), (ElementType::Parabolic, 0.0));
    let (th, qh) = h.element_type(tol);
    assert_eq!((th, qh), (ElementType::Hyperbolic, 2.0));
    let (tef, qef) = O12Element::<f64>::new(1.0, 0.0, -1.0).element_type(tol);
    assert_eq!((tef, qef), (ElementType::Elliptic, -4.0));
    println!("criterion 5 (o(1,2) and the curvature module): PASS");
}

#[test]
fn criterion_6_einstein_universe() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    // conformal defect of the affine section
    let mut defect = 0.0f64;
    for _ in 0..1000 {
        let x = [
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
        ];
        defect = defect.max(stereo_conformal_defect::<f64>(x));
    }
    assert!(defect < 1e-12, "stereo conformal defect {defect}");
    // membership of constructed group elements
    let gram = gram_q23::<f64>();
    let membership = |m: &O23Element<f64>| -> f64 {
        let mt = linalg::mat5_transpose(&m.m);
        let mgm = linalg::mat5_mul(&mt, &linalg::mat5_mul(&gram, &m.m));
        let mut d = 0.0f64;
        for i in 0..5 {
            for j in 0..5 {
                d = d.max((mgm[i][j] - gram[i][j]).abs());
            }
        }
        d
    };
    let mut worst = 0.0f64;
    for _ in 0..100 {
        worst = worst.max(membership(&make_n::<f64>(
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
        )));
        worst = worst.max(membership(&make_t::<f64>(
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
        )));
        if let Ok(ra) = make_ra::<f64>([
            [rng.random_range(0.5..2.0), rng.random_range(-1.0..1.0)],
            [rng.random_range(-1.0..1.0), rng.random_range(0.5..2.0)],
        ]) {
            worst = worst.max(membership(&ra));
        }
        worst = worst.max(membership(
            &make_rlambda::<f64>(rng.random_range(0.2..4.0)).unwrap(),
        ));
    }
    assert!(worst < 1e-12, "O(2,3) membership defect {worst}");
    // the four action facts at 200 samples
    let action = fact_action_suite::<f64>(200, 600);
    for item in &action.items {
        assert!(item.passed, "action item {} failed", item.name);
    }
    // Witt index 2
    let gram_flat: Vec<f64> = gram.iter().flatten().copied().collect();
    assert_eq!(witt_index(5, &gram_flat), 2);
    // stereo equivariance of the affine form
    let mut equi = 0.0f64;
    for _ in 0..100 {
        let (x, y, z) = (
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        let p = [
            rng.random_range(-1.5..1.5),
            rng.random_range(-1.5..1.5),
            rng.random_range(-1.5..1.5),
        ];
        let lhs = act(&make_n::<f64>(x, y, z), &stereo(p));
        let rhs = stereo(n_affine_on_chart(x, y, z, p));
        for i in 0..5 {
            equi = equi.max((lhs.rep[i] - rhs.rep[i]).abs());
        }
    }
    assert!(equi < 1e-10, "stereo equivariance defect {equi}");
    println!("criterion 6 (Einstein universe): PASS");
}

#[test]
fn criterion_7_flows() {
    let a = standard_a();
    let metric = make_g_a(&a).unwrap().metric;
    let model = make_g_a(&a).unwrap();
    // Clairaut drift over parameter length 10
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut drift = 0.0f64;
    for _ in 0..5 {
        let x0 = [
            rng.random_range(-0.5..0.5),
            rng.random_range(-0.5..0.5),
            rng.random_range(-0.5..0.5),
        ];
        let v0 = [
            rng.random_range(-0.8..0.8),
            rng.random_range(-0.8..0.8),
            rng.random_range(-0.8..0.8),
        ];
        let traj = geodesic_integrate(&metric, x0, v0, 10.0, 1e-3).unwrap();
        for field in &model.killing {
            drift = drift.max(clairaut_drift(&metric, &traj, field));
        }
    }
    assert!(drift < 1e-7, "Clairaut drift {drift}");
    // homothety factors at five times
    for &t in &[0.1, 0.2, 0.3, 0.4, 0.5] {
        let slice = normal_flow(&metric, t, 5, 1e-3).unwrap();
        let (fit_defect, lambda) = homothety_defect(&metric, &slice).unwrap();
        let expected = a.eval(t) / a.eval(0.0);
        assert!(
            (lambda - expected).abs() < 1e-5,
            "lambda({t}) = {lambda}, want {expected}"
        );
        assert!(fit_defect < 1e-5, "post-fit defect {fit_defect}");
    }
    // lightlike transfer
    assert!(lightlike_transfer_check(&metric, 0.3, SliceDirection::U, 2.0, 1e-3).unwrap() < 1e-6);
    assert!(lightlike_transfer_check(&metric, 0.3, SliceDirection::V, 2.0, 1e-3).unwrap() < 1e-6);
    // first return of the period-1 coefficient
    let tau = first_return_estimate(&metric, &a, 3, 1e-3).unwrap();
    assert!((tau - 1.0).abs() < 1e-6, "tau = {tau}");
    // RK4 order: halving the step shrinks the drift at least 8-fold
    let x0 = [0.1, 0.0, 0.0];
    let v0 = [0.8, 0.5, -0.4];
    let fine = energy_drift(&metric, &geodesic_integrate(&metric, x0, v0, 5.0, 1e-3).unwrap());
    let coarse = energy_drift(&metric, &geodesic_integrate(&metric, x0, v0, 5.0, 2e-3).unwrap());
    assert!(coarse / fine >= 8.0, "order ratio {}", coarse / fine);
    println!("criterion 7 (flows): PASS");
}

#[test]
fn criterion_8_classification() {
    let a = standard_a();
    let cases = [
        (
            make_flat::<f64>(FlatVariant::NullFrame).metric,
            ComponentLabel::ConstantCurvature,
            5usize,
        ),
        (make_g_a(&a).unwrap().metric, ComponentLabel::NonLocHomogHyperbolic, 9),
        (make_h_a(&a).unwrap().metric, ComponentLabel::NonLocHomogParabolic, 9),
        (
            make_heis_normal_form(&a, &TrigPoly::constant(0.25)).unwrap().metric,
            ComponentLabel::NonLocHomogParabolic,
            9,
        ),
    ];
    for (metric, label, n) in cases {
        let rep = classify_grid(&metric, n, &cfg()).unwrap();
        let total = rep.points.len() as f64;
        let hits = *rep.histogram.get(label.as_str()).unwrap_or(&0) as f64;
        assert!(
            hits / total >= 0.9,
            "{}: {} fraction {}",
            metric.label,
            label.as_str(),
            hits / total
        );
        for record in &rep.points {
            if record.rank == 0 || record.rank == 2 || record.rank == 3 {
                assert!(
                    record.isotropy_dim == 1 || record.isotropy_dim == 3,
                    "{}: isotropy dim {} at {:?}",
                    metric.label,
                    record.isotropy_dim,
                    record.point
                );
            }
        }
    }
    println!("criterion 8 (end-to-end classification): PASS");
}

#[test]
fn criterion_9_determinism() {
    let exe = env!("CARGO_BIN_EXE_lorentz3");
    let run = || {
        let out = Command::new(exe)
            .args(["verify", "all", "--seed", "42"])
            .output()
            .expect("binary runs");
        assert!(out.status.success(), "verify all must pass");
        let text = String::from_utf8(out.stdout).unwrap();
        // drop the timestamp line; everything else must match bytewise
        text.lines()
            .filter(|l| !l.contains("timestamp_unix"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let first = run();
    let second = run();
    assert_eq!(first, second, "reports differ between identical runs");
    assert!(first.contains("\"fail\": 0"));
    println!("criterion 9 (determinism): PASS");
}
