//! Property tests for the library-level invariants: jet exactness on
//! polynomials, curvature symmetries across randomized catalog coefficients,
//! conformal covariance of the Cotton tensor, Killing-catalog residuals, and
//! projective normalization on the null quadric.

use lorentz3::difftensor::{
    cotton_york, lie_derivative_metric, ricci_scalar, symmetry_defects,
};
use lorentz3::einstein::{act, is_null, make_n, stereo, ProjPoint5};
use lorentz3::expr::Expr;
use lorentz3::jet::Jet4;
use lorentz3::models::{make_g_a, make_h_a, TrigPoly, TrigTerm};
use proptest::prelude::*;

fn max33(m: &[[f64; 3]; 3]) -> f64 {
    m.iter().flatten().fold(0.0f64, |a, x| a.max(x.abs()))
}

fn max333(m: &[[[f64; 3]; 3]; 3]) -> f64 {
    m.iter().flatten().flatten().fold(0.0f64, |a, x| a.max(x.abs()))
}

/// A positive 1-periodic trig polynomial: constant term dominates.
fn positive_trig() -> impl Strategy<Value = TrigPoly<f64>> {
    (
        2.0f64..4.0,
        -0.4f64..0.4,
        -0.4f64..0.4,
        -0.3f64..0.3,
        1u32..4,
    )
        .prop_map(|(c0, c1, s1, c2, k2)| {
            TrigPoly::new(vec![
                TrigTerm { freq: 0, cos: c0, sin: 0.0 },
                TrigTerm { freq: 1, cos: c1, sin: s1 },
                TrigTerm { freq: k2, cos: c2, sin: 0.0 },
            ])
        })
}

fn in_box() -> impl Strategy<Value = [f64; 3]> {
    [-0.95f64..0.95, -0.95f64..0.95, -0.95f64..0.95]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jets_exact_on_random_quartics(
        coeffs in proptest::array::uniform8(-2.0f64..2.0),
        p in in_box(),
    ) {
        // f = c0 + c1 x + c2 y^2 + c3 z^3 + c4 x y z + c5 x^2 z^2 + c6 y + c7 x z
        let f = |q: [f64; 3]| {
            coeffs[0]
                + coeffs[1] * q[0]
                + coeffs[2] * q[1] * q[1]
                + coeffs[3] * q[2].powi(3)
                + coeffs[4] * q[0] * q[1] * q[2]
                + coeffs[5] * q[0] * q[0] * q[2] * q[2]
                + coeffs[6] * q[1]
                + coeffs[7] * q[0] * q[2]
        };
        let x = Jet4::variable(p[0], 0);
        let y = Jet4::variable(p[1], 1);
        let z = Jet4::variable(p[2], 2);
        let jf = Jet4::constant(coeffs[0])
            .add(&x.scale(coeffs[1]))
            .add(&y.mul(&y).scale(coeffs[2]))
            .add(&z.powi(3).scale(coeffs[3]))
            .add(&x.mul(&y).mul(&z).scale(coeffs[4]))
            .add(&x.mul(&x).mul(&z).mul(&z).scale(coeffs[5]))
            .add(&y.scale(coeffs[6]))
            .add(&x.mul(&z).scale(coeffs[7]));
        prop_assert!((jf.val() - f(p)).abs() < 1e-12);
        // first derivatives against analytic formulas
        let dx = coeffs[1]
            + coeffs[4] * p[1] * p[2]
            + 2.0 * coeffs[5] * p[0] * p[2] * p[2]
            + coeffs[7] * p[2];
        prop_assert!((jf.deriv((1, 0, 0)) - dx).abs() < 1e-11);
        // the top-order coefficient x^2 z^2 is exact
        prop_assert!((jf.deriv((2, 0, 2)) - 4.0 * coeffs[5]).abs() < 1e-11);
    }

    #[test]
    fn expr_jet_matches_eval(p in in_box(), w in -3.0f64..3.0) {
        let e = (Expr::constant(w) * Expr::coord(0)).sin()
            + (Expr::coord(1) * Expr::coord(2)).exp()
            + (Expr::constant(2.5) + Expr::coord(2).powi(2)).recip();
        let direct = e.eval(p);
        let jet = e.jet(p);
        prop_assert!((direct - jet.val()).abs() < 1e-12 * (1.0 + direct.abs()));
    }

    #[test]
    fn curvature_symmetries_randomized_families(a in positive_trig(), p in in_box()) {
        let ga = make_g_a(&a).unwrap().metric;
        prop_assert!(symmetry_defects(&ga, p).unwrap() < 1e-9);
        let ha = make_h_a(&a).unwrap().metric;
        prop_assert!(symmetry_defects(&ha, p).unwrap() < 1e-9);
    }

    #[test]
    fn parabolic_family_scalar_flat_and_conformally_flat(a in positive_trig(), p in in_box()) {
        let ha = make_h_a(&a).unwrap().metric;
        let (_, scalar) = ricci_scalar(&ha, p).unwrap();
        prop_assert!(scalar.abs() < 1e-8, "scalar = {scalar}");
        prop_assert!(max333(&cotton_york(&ha, p).unwrap()) < 1e-7);
    }

    #[test]
    fn killing_catalogs_randomized(a in positive_trig(), p in in_box()) {
        for model in [make_g_a(&a).unwrap(), make_h_a(&a).unwrap()] {
            for field in &model.killing {
                let lie = lie_derivative_metric(&model.metric, field, p).unwrap();
                prop_assert!(max33(&lie) < 1e-9);
            }
        }
    }

    #[test]
    fn projective_normalization_idempotent(x in in_box(), n in -1.2f64..1.2) {
        let p = stereo([2.0 * x[0], 2.0 * x[1], 2.0 * x[2]]);
        prop_assert!(is_null(&p.rep));
        // renormalizing a scaled representative lands on the same point
        let mut scaled = p.rep;
        let s = if n.abs() < 0.1 { 0.1 } else { n };
        for c in scaled.iter_mut() {
            *c *= s;
        }
        let q = ProjPoint5::new(scaled).unwrap();
        prop_assert!(p.approx_eq(&q, 1e-12));
        // the N-action preserves nullity and normalization
        let g = make_n(x[0], x[1], x[2]);
        let gp = act(&g, &p);
        prop_assert!(is_null(&gp.rep));
        let renorm = ProjPoint5::new(gp.rep).unwrap();
        prop_assert!(gp.approx_eq(&renorm, 1e-12));
    }
}

/// The scalar-generic kernels accept f32; answers agree with f64 at single
/// precision.
#[test]
fn generic_scalar_f32_smoke() {
    let a32 = TrigPoly::<f32>::two_plus_cos();
    let a64 = TrigPoly::<f64>::two_plus_cos();
    let g32 = make_g_a(&a32).unwrap().metric;
    let g64 = make_g_a(&a64).unwrap().metric;
    let p32 = [0.3f32, 0.1, -0.2];
    let p64 = [0.3f64, 0.1, -0.2];
    let (_, s32) = ricci_scalar(&g32, p32).unwrap();
    let (_, s64) = ricci_scalar(&g64, p64).unwrap();
    assert!((s32 as f64 - s64).abs() < 1e-3 * (1.0 + s64.abs()));
    let c32 = lorentz3::difftensor::christoffel(&g32, p32).unwrap();
    let c64 = lorentz3::difftensor::christoffel(&g64, p64).unwrap();
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                assert!((c32[k][i][j] as f64 - c64[k][i][j]).abs() < 1e-4);
            }
        }
    }
}
