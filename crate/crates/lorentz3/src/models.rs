//! Catalog of the explicit metrics, Killing fields and isometry generators
//! under verification: the flat models, the hyperbolic family
//! g_a = dt^2 + 2a(t) du dv, the parabolic family h_a = a(v)(dt^2 + 2 du dv),
//! the Heisenberg normal form -2 beta dx1 dx3 + beta dx2^2 + gamma dx3^2, a
//! left-invariant Lorentz-Heisenberg chart, and the named left-invariant
//! scalar products on sl(2,R), heis and sol.

use std::fmt;

use crate::difftensor::ChartMetric;
use crate::expr::{Expr, VectorFieldExpr};
use crate::liealg::{LieAlgebra3, LieAlgebraDyn, LieAlgError, ScalarProduct3};
use crate::linalg;
use crate::scalar::{r, Real};

#[derive(Debug, Clone)]
pub enum ModelError<F> {
    /// A coefficient function that must be positive is not.
    NonPositive { label: String, min: F },
    /// A requested scalar product does not have Lorentz signature.
    Signature(String),
    /// Affine map not invertible.
    SingularMap,
    UnknownFamily(String),
}

impl<F: Real> fmt::Display for ModelError<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::NonPositive { label, min } => {
                write!(f, "coefficient {label} must be positive, sampled min = {min}")
            }
            ModelError::Signature(s) => write!(f, "signature failure: {s}"),
            ModelError::SingularMap => write!(f, "affine map is singular"),
            ModelError::UnknownFamily(s) => write!(f, "unknown generator family: {s}"),
        }
    }
}

impl<F: Real> std::error::Error for ModelError<F> {}

impl<F: Real> From<LieAlgError<F>> for ModelError<F> {
    fn from(e: LieAlgError<F>) -> Self {
        ModelError::Signature(e.to_string())
    }
}

/// A 1-periodic trigonometric polynomial
/// a(t) = sum_k  cos_k cos(2 pi k t) + sin_k sin(2 pi k t).
#[derive(Clone, Debug)]
pub struct TrigPoly<F> {
    pub terms: Vec<TrigTerm<F>>,
}

#[derive(Clone, Copy, Debug)]
pub struct TrigTerm<F> {
    pub freq: u32,
    pub cos: F,
    pub sin: F,
}

impl<F: Real> TrigPoly<F> {
    pub fn new(terms: Vec<TrigTerm<F>>) -> Self {
        TrigPoly { terms }
    }

    pub fn constant(c: F) -> Self {
        TrigPoly { terms: vec![TrigTerm { freq: 0, cos: c, sin: F::zero() }] }
    }

    /// The standard catalog coefficient 2 + cos(2 pi t).
    pub fn two_plus_cos() -> Self {
        TrigPoly {
            terms: vec![
                TrigTerm { freq: 0, cos: r(2.0), sin: F::zero() },
                TrigTerm { freq: 1, cos: F::one(), sin: F::zero() },
            ],
        }
    }

    pub fn eval(&self, t: F) -> F {
        let two_pi = F::PI() * r(2.0);
        self.terms.iter().fold(F::zero(), |acc, term| {
            let th = two_pi * F::of_int(term.freq as i64) * t;
            acc + term.cos * th.cos() + term.sin * th.sin()
        })
    }

    /// Analytic derivative of the given order, for test oracles.
    pub fn eval_deriv(&self, order: usize, t: F) -> F {
        let two_pi = F::PI() * r(2.0);
        self.terms.iter().fold(F::zero(), |acc, term| {
            if term.freq == 0 {
                return if order == 0 { acc + term.cos } else { acc };
            }
            let w = two_pi * F::of_int(term.freq as i64);
            let th = w * t;
            let scale = w.powi(order as i32);
            // d/dt rotates (cos, sin) -> (-sin, cos) each order
            let (c, s) = match order % 4 {
                0 => (th.cos(), th.sin()),
                1 => (-th.sin(), th.cos()),
                2 => (-th.cos(), -th.sin()),
                _ => (th.sin(), -th.cos()),
            };
            acc + scale * (term.cos * c + term.sin * s)
        })
    }

    pub fn to_expr(&self, coord: usize) -> Expr<F> {
        let two_pi = F::PI() * r(2.0);
        let mut parts: Vec<Expr<F>> = Vec::new();
        for term in &self.terms {
            if term.freq == 0 {
                if term.cos != F::zero() {
                    parts.push(Expr::constant(term.cos));
                }
                continue;
            }
            let arg = Expr::constant(two_pi * F::of_int(term.freq as i64)) * Expr::coord(coord);
            if term.cos != F::zero() {
                parts.push(Expr::constant(term.cos) * arg.clone().cos());
            }
            if term.sin != F::zero() {
                parts.push(Expr::constant(term.sin) * arg.sin());
            }
        }
        if parts.is_empty() {
            Expr::zero()
        } else {
            Expr::Sum(parts)
        }
    }

    /// Minimum over one period, sampled at n points.
    pub fn min_sampled(&self, n: usize) -> F {
        let mut min = F::infinity();
        for k in 0..n {
            let t = F::of_int(k as i64) / F::of_int(n as i64);
            min = min.min(self.eval(t));
        }
        min
    }

    pub fn ensure_positive(&self, label: &str) -> Result<(), ModelError<F>> {
        let min = self.min_sampled(10_000);
        if min <= F::zero() {
            return Err(ModelError::NonPositive { label: label.to_string(), min });
        }
        Ok(())
    }

    /// Fundamental period: 1 / gcd of the active frequencies (1 if constant).
    pub fn fundamental_period(&self) -> F {
        let mut g: u32 = 0;
        for term in &self.terms {
            if term.freq > 0 && (term.cos != F::zero() || term.sin != F::zero()) {
                g = gcd(g, term.freq);
            }
        }
        if g == 0 {
            F::one()
        } else {
            F::one() / F::of_int(g as i64)
        }
    }

    /// a(m t): every frequency multiplied by m.
    pub fn scale_argument(&self, m: u32) -> Self {
        TrigPoly {
            terms: self
                .terms
                .iter()
                .map(|t| TrigTerm { freq: t.freq * m, cos: t.cos, sin: t.sin })
                .collect(),
        }
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if a == 0 {
        b
    } else {
        gcd(b % a, a)
    }
}

/// An affine transformation of the chart.
#[derive(Clone, Copy, Debug)]
pub struct AffineMap3<F> {
    pub lin: [[F; 3]; 3],
    pub tr: [F; 3],
}

impl<F: Real> AffineMap3<F> {
    pub fn new(lin: [[F; 3]; 3], tr: [F; 3]) -> Self {
        AffineMap3 { lin, tr }
    }

    pub fn identity() -> Self {
        let mut lin = [[F::zero(); 3]; 3];
        for i in 0..3 {
            lin[i][i] = F::one();
        }
        AffineMap3 { lin, tr: [F::zero(); 3] }
    }

    pub fn translation(v: [F; 3]) -> Self {
        let mut m = Self::identity();
        m.tr = v;
        m
    }

    pub fn apply(&self, p: [F; 3]) -> [F; 3] {
        let lp = linalg::mat3_vec(&self.lin, &p);
        [lp[0] + self.tr[0], lp[1] + self.tr[1], lp[2] + self.tr[2]]
    }

    /// self o other
    pub fn compose(&self, other: &Self) -> Self {
        let lin = linalg::mat3_mul(&self.lin, &other.lin);
        let lt = linalg::mat3_vec(&self.lin, &other.tr);
        AffineMap3 {
            lin,
            tr: [lt[0] + self.tr[0], lt[1] + self.tr[1], lt[2] + self.tr[2]],
        }
    }

    pub fn inverse(&self) -> Result<Self, ModelError<F>> {
        let det = linalg::mat3_det(&self.lin);
        if det.abs() < r(1e-14) {
            return Err(ModelError::SingularMap);
        }
        let linv = linalg::mat3_inv(&self.lin);
        let t = linalg::mat3_vec(&linv, &self.tr);
        Ok(AffineMap3 { lin: linv, tr: [-t[0], -t[1], -t[2]] })
    }
}

/// A metric with its attached Killing catalog.
#[derive(Clone, Debug)]
pub struct CatalogModel<F> {
    pub metric: ChartMetric<F>,
    pub killing: Vec<VectorFieldExpr<F>>,
    /// Expected structure constants of the Killing basis, c[k][i][j].
    pub expected_sc: [[[F; 3]; 3]; 3],
    pub algebra_label: String,
}

impl<F: Real> CatalogModel<F> {
    /// Max Killing residual of the catalog fields over a fixed probe set;
    /// constructors reject catalogs that fail the 1e-9 bound.
    fn killing_residual_probe(&self) -> F {
        let mut worst = F::zero();
        let probe = |k: usize| {
            let t = F::of_int(k as i64) / r::<F>(2.0) - F::one(); // -1, -1/2, 0, 1/2, 1
            t * r(0.83) + r(0.07)
        };
        for i in 0..5 {
            for j in 0..5 {
                let p = [probe(i), probe(j), probe((i + j) % 5)];
                for field in &self.killing {
                    if let Ok(lie) = crate::difftensor::lie_derivative_metric(&self.metric, field, p)
                    {
                        worst = worst.max(linalg::max_abs(lie.iter().flatten().copied()));
                    }
                }
            }
        }
        worst
    }

    fn validated(self) -> Result<Self, ModelError<F>> {
        let resid = self.killing_residual_probe();
        if resid > r(1e-9) {
            return Err(ModelError::Signature(format!(
                "catalog Killing residual {resid} exceeds 1e-9 for {}",
                self.metric.label
            )));
        }
        Ok(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlatVariant {
    /// g = -du^2 + dv^2 + dw^2 in coordinates (u, v, w).
    MinkowskiDiag,
    /// g = dt^2 + 2 du dv in coordinates (u, t, v).
    NullFrame,
}

/// Components order: g11, g12, g13, g22, g23, g33.
fn comps_zero<F: Real>() -> [Expr<F>; 6] {
    [Expr::zero(), Expr::zero(), Expr::zero(), Expr::zero(), Expr::zero(), Expr::zero()]
}

pub fn make_flat<F: Real>(variant: FlatVariant) -> CatalogModel<F> {
    let mut comps = comps_zero();
    let label;
    match variant {
        FlatVariant::MinkowskiDiag => {
            comps[0] = Expr::constant(-F::one()); // g_uu
            comps[3] = Expr::constant(F::one()); // g_vv
            comps[5] = Expr::constant(F::one()); // g_ww
            label = "flat_diag";
        }
        FlatVariant::NullFrame => {
            comps[3] = Expr::constant(F::one()); // g_tt
            comps[2] = Expr::constant(F::one()); // g_uv
            label = "flat_null";
        }
    }
    let metric = ChartMetric::new(comps, ChartMetric::default_domain(), label);
    let killing = vec![
        VectorFieldExpr::coordinate_basis(0),
        VectorFieldExpr::coordinate_basis(1),
        VectorFieldExpr::coordinate_basis(2),
    ];
    CatalogModel {
        metric,
        killing,
        expected_sc: [[[F::zero(); 3]; 3]; 3],
        algebra_label: "abelian".to_string(),
    }
}

/// The hyperbolic family g_a = dt^2 + 2 a(t) du dv, coordinates (t, u, v).
/// Killing catalog: d_u, d_v, u d_u - v d_v with sol-type brackets.
pub fn make_g_a<F: Real>(a: &TrigPoly<F>) -> Result<CatalogModel<F>, ModelError<F>> {
    a.ensure_positive("a(t)")?;
    let mut comps = comps_zero();
    comps[0] = Expr::constant(F::one()); // g_tt
    comps[4] = a.to_expr(0); // g_uv, coordinate t = x^0
    let metric = ChartMetric::new(comps, ChartMetric::default_domain(), "g_a");
    let du = VectorFieldExpr::coordinate_basis(1);
    let dv = VectorFieldExpr::coordinate_basis(2);
    let scaling = VectorFieldExpr::new([Expr::zero(), Expr::coord(1), -Expr::coord(2)]);
    // basis (d_u, d_v, u d_u - v d_v): [X3, X1] = -X1, [X3, X2] = X2
    let mut sc = [[[F::zero(); 3]; 3]; 3];
    sc[0][2][0] = -F::one();
    sc[0][0][2] = F::one();
    sc[1][2][1] = F::one();
    sc[1][1][2] = -F::one();
    CatalogModel {
        metric,
        killing: vec![du, dv, scaling],
        expected_sc: sc,
        algebra_label: "sol_plane".to_string(),
    }
    .validated()
}

/// The parabolic family h_a = a(v)(dt^2 + 2 du dv), coordinates (u, t, v).
/// Killing catalog: d_u, d_t, -t d_u + v d_t with heis brackets.
pub fn make_h_a<F: Real>(a: &TrigPoly<F>) -> Result<CatalogModel<F>, ModelError<F>> {
    a.ensure_positive("a(v)")?;
    let mut comps = comps_zero();
    comps[3] = a.to_expr(2); // g_tt = a(v), coordinate v = x^2
    comps[2] = a.to_expr(2); // g_uv = a(v)
    let metric = ChartMetric::new(comps, ChartMetric::default_domain(), "h_a");
    let du = VectorFieldExpr::coordinate_basis(0);
    let dt = VectorFieldExpr::coordinate_basis(1);
    let w = VectorFieldExpr::new([-Expr::coord(1), Expr::coord(2), Expr::zero()]);
    // basis (d_u, d_t, W): [X2, X3] = -X1 (i.e. [W, d_t] = d_u)
    let mut sc = [[[F::zero(); 3]; 3]; 3];
    sc[0][1][2] = -F::one();
    sc[0][2][1] = F::one();
    CatalogModel {
        metric,
        killing: vec![du, dt, w],
        expected_sc: sc,
        algebra_label: "heis".to_string(),
    }
    .validated()
}

/// The Heisenberg normal form
/// -2 beta(x3) dx1 dx3 + beta(x3) dx2^2 + gamma(x3) dx3^2
/// in coordinates (x1, x2, x3).
/// Killing catalog: d_1, d_2, x2 d_1 + x3 d_2.
pub fn make_heis_normal_form<F: Real>(
    beta: &TrigPoly<F>,
    gamma: &TrigPoly<F>,
) -> Result<CatalogModel<F>, ModelError<F>> {
    beta.ensure_positive("beta(x3)")?;
    let mut comps = comps_zero();
    comps[2] = -beta.to_expr(2); // g_13 = -beta(x3)
    comps[3] = beta.to_expr(2); // g_22 = beta(x3)
    comps[5] = gamma.to_expr(2); // g_33 = gamma(x3)
    let metric = ChartMetric::new(comps, ChartMetric::default_domain(), "heis_normal_form");
    let d1 = VectorFieldExpr::coordinate_basis(0);
    let d2 = VectorFieldExpr::coordinate_basis(1);
    let x = VectorFieldExpr::new([Expr::coord(1), Expr::coord(2), Expr::zero()]);
    // basis (d_1, d_2, X): [X2, X3] = X1 (i.e. [X, d_2] = -d_1)
    let mut sc = [[[F::zero(); 3]; 3]; 3];
    sc[0][1][2] = F::one();
    sc[0][2][1] = -F::one();
    CatalogModel {
        metric,
        killing: vec![d1, d2, x],
        expected_sc: sc,
        algebra_label: "heis".to_string(),
    }
    .validated()
}

/// The Lorentz-Heisenberg metric in exponential-type coordinates (x, y, z):
/// left-invariant frame X1 = d_x, X2 = d_y + x d_z, X3 = d_z with
/// [X1, X2] = X3 and <X1, X2> = <X3, X3> = 1. In coordinates:
/// g = 2 dx dy + x^2 dy^2 - 2x dy dz + dz^2.
/// Killing catalog: the right-invariant fields generating left translations.
pub fn make_lorentz_heisenberg_chart<F: Real>() -> CatalogModel<F> {
    let mut comps = comps_zero();
    comps[1] = Expr::constant(F::one()); // g_xy
    comps[3] = Expr::coord(0) * Expr::coord(0); // g_yy = x^2
    comps[4] = -Expr::coord(0); // g_yz = -x
    comps[5] = Expr::constant(F::one()); // g_zz
    let metric = ChartMetric::new(comps, ChartMetric::default_domain(), "lorentz_heisenberg");
    let y1 = VectorFieldExpr::new([Expr::constant(F::one()), Expr::zero(), Expr::coord(1)]);
    let y2 = VectorFieldExpr::coordinate_basis(1);
    let y3 = VectorFieldExpr::coordinate_basis(2);
    // basis (Y1, Y2, Y3): [Y1, Y2] = -Y3
    let mut sc = [[[F::zero(); 3]; 3]; 3];
    sc[2][0][1] = -F::one();
    sc[2][1][0] = F::one();
    CatalogModel {
        metric,
        killing: vec![y1, y2, y3],
        expected_sc: sc,
        algebra_label: "heis".to_string(),
    }
}

/// Isotropy generator of the g_a catalog at a point, as coefficients in the
/// Killing basis (d_u, d_v, u d_u - v d_v): (u - u0) d_u - (v - v0) d_v.
pub fn g_a_isotropy_at<F: Real>(p: [F; 3]) -> [F; 3] {
    [-p[1], p[2], F::one()]
}

/// Isotropy generator of the h_a catalog at a point, as coefficients in the
/// Killing basis (d_u, d_t, -t d_u + v d_t): -(t - t0) d_u + (v - v0) d_t.
pub fn h_a_isotropy_at<F: Real>(p: [F; 3]) -> [F; 3] {
    [p[1], -p[2], F::one()]
}

/// Isotropy generator of the Heisenberg normal form at a point, in the basis
/// (d_1, d_2, x2 d_1 + x3 d_2).
pub fn heis_nf_isotropy_at<F: Real>(p: [F; 3]) -> [F; 3] {
    [-p[1], -p[2], F::one()]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorFamily {
    /// Isometries of g_a: unit u/v translations and the diagonalized
    /// hyperbolic gluing map (t, u, v) -> (t + 1, lambda u, v / lambda).
    HyperbolicGa,
    /// Isometries of h_a: the unipotent lattice generators
    /// Gamma(m, n, l) in coordinates (u, t, v).
    ParabolicHa,
    /// The isometries of the flat metric dt^2 + 2 du dv preserving the
    /// lightlike plane foliation, epsilon_i = +/-1 (square-rooted family).
    FlatNormalizer,
    /// Left translations of the Lorentz-Heisenberg chart.
    LorentzHeisenbergLeft,
}

/// Gamma(m, n, l): the unipotent isometry of h_a in coordinates (u, t, v).
pub fn parabolic_gamma<F: Real>(m: F, n: F, l: F) -> AffineMap3<F> {
    let z = F::zero();
    let o = F::one();
    AffineMap3::new(
        [[o, m, -m * m * r(0.5)], [z, o, -m], [z, z, o]],
        [n * r(0.5), l * r(0.5), m],
    )
}

/// An element of the flat-normalizer group in coordinates (u, t, v):
/// linear part [[e1, -e1 y, -e1 y^2/2], [0, e2, e2 y], [0, 0, e1]] plus a
/// translation (z, x, t).
pub fn flat_normalizer_element<F: Real>(
    eps1: bool,
    eps2: bool,
    y: F,
    x: F,
    z: F,
    t: F,
) -> AffineMap3<F> {
    let e1 = if eps1 { F::one() } else { -F::one() };
    let e2 = if eps2 { F::one() } else { -F::one() };
    let zero = F::zero();
    AffineMap3::new(
        [
            [e1, -e1 * y, -e1 * y * y * r(0.5)],
            [zero, e2, e2 * y],
            [zero, zero, e1],
        ],
        [z, x, t],
    )
}

/// Left translation of the Lorentz-Heisenberg chart by the group element
/// (a, b, c): (x, y, z) -> (x + a, y + b, z + c + a y).
pub fn lh_left_translation<F: Real>(a: F, b: F, c: F) -> AffineMap3<F> {
    let z = F::zero();
    let o = F::one();
    AffineMap3::new([[o, z, z], [z, o, z], [z, a, o]], [a, b, c])
}

pub fn group_generators<F: Real>(family: GeneratorFamily) -> Vec<AffineMap3<F>> {
    match family {
        GeneratorFamily::HyperbolicGa => {
            // eigenvalue of [[2,1],[1,1]]
            let lambda = (r::<F>(3.0) + r::<F>(5.0).sqrt()) * r(0.5);
            let z = F::zero();
            let o = F::one();
            let gamma3 = AffineMap3::new(
                [[o, z, z], [z, lambda, z], [z, z, o / lambda]],
                [o, z, z],
            );
            vec![
                AffineMap3::translation([z, o, z]),
                AffineMap3::translation([z, z, o]),
                gamma3,
            ]
        }
        GeneratorFamily::ParabolicHa => vec![
            parabolic_gamma(F::one(), F::zero(), F::zero()),
            parabolic_gamma(F::zero(), F::one(), F::zero()),
            parabolic_gamma(F::zero(), F::zero(), F::one()),
            parabolic_gamma(F::one(), F::one(), F::one()),
        ],
        GeneratorFamily::FlatNormalizer => vec![
            flat_normalizer_element(true, true, F::one(), F::zero(), F::zero(), F::zero()),
            flat_normalizer_element(true, false, r(0.5), r(0.3), r(-0.2), r(0.7)),
            flat_normalizer_element(false, true, r(-1.5), F::zero(), F::one(), r(0.25)),
            flat_normalizer_element(false, false, r(2.0), r(1.0), r(-1.0), F::zero()),
        ],
        GeneratorFamily::LorentzHeisenbergLeft => vec![
            lh_left_translation(F::one(), F::zero(), F::zero()),
            lh_left_translation(F::zero(), F::one(), F::zero()),
            lh_left_translation(F::zero(), F::zero(), F::one()),
            lh_left_translation(r(0.3), r(-0.8), r(0.5)),
        ],
    }
}

/// Pullback defect max_p |Df^T g_{f(p)} Df - g_p| / scale over the samples.
pub fn isometry_defect<F: Real>(
    m: &ChartMetric<F>,
    f: &AffineMap3<F>,
    samples: &[[F; 3]],
) -> F {
    let mut worst = F::zero();
    for &p in samples {
        let gp = m.gram(p);
        let gf = m.gram(f.apply(p));
        let lt = linalg::mat3_transpose(&f.lin);
        let pulled = linalg::mat3_mul(&lt, &linalg::mat3_mul(&gf, &f.lin));
        let scale = m.component_scale(p);
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((pulled[i][j] - gp[i][j]).abs() / scale);
            }
        }
    }
    worst
}

/// One probe of the conformal-to-Killing transfer identity for h_a:
/// a Killing field of h_a among the conformal fields X of the flat h_0
/// satisfies a'(v)/a(v) = -alpha_X / X^3 at the probe point.
#[derive(Clone, Copy, Debug)]
pub struct TransferProbe<F> {
    pub point: [F; 3],
    pub lhs: F,
    pub rhs: F,
    pub killing_residual: F,
}

#[derive(Clone, Debug)]
pub struct TransferCheck<F> {
    pub probes: Vec<TransferProbe<F>>,
    pub skipped: usize,
}

pub fn killing_transfer_check<F: Real>(
    x: &VectorFieldExpr<F>,
    a: &TrigPoly<F>,
    points: &[[F; 3]],
) -> Result<TransferCheck<F>, ModelError<F>> {
    let flat = make_flat::<F>(FlatVariant::NullFrame).metric;
    let h_a = make_h_a(a)?.metric;
    let mut probes = Vec::new();
    let mut skipped = 0;
    for &p in points {
        let x3 = x.comps[2].eval(p);
        if x3.abs() < r(1e-9) {
            skipped += 1;
            continue;
        }
        let (_, alpha) = crate::difftensor::conformal_killing_residual(&flat, x, p)
            .map_err(|e| ModelError::Signature(e.to_string()))?;
        let lie = crate::difftensor::lie_derivative_metric(&h_a, x, p)
            .map_err(|e| ModelError::Signature(e.to_string()))?;
        let resid = linalg::max_abs(lie.iter().flatten().copied());
        probes.push(TransferProbe {
            point: p,
            lhs: a.eval_deriv(1, p[2]) / a.eval(p[2]),
            rhs: -alpha / x3,
            killing_residual: resid,
        });
    }
    Ok(TransferCheck { probes, skipped })
}

// ---------------------------------------------------------------------------
// Left-invariant model scalar products
// ---------------------------------------------------------------------------

/// Killing form of sl(2,R) in the basis (e, h, f): B(h,h) = 8, B(e,f) = 4.
pub fn ads_killing_pair<F: Real>() -> (LieAlgebra3<F>, ScalarProduct3<F>) {
    let alg = LieAlgebra3::sl2();
    let z = F::zero();
    let sp = ScalarProduct3::new([[z, z, r(4.0)], [z, r(8.0), z], [r(4.0), z, z]])
        .expect("Killing form of sl2 is Lorentz");
    (alg, sp)
}

/// The unipotent-invariant family on sl(2,R): B + c (B(., e))^2.
pub fn g_u_pair<F: Real>(c: F) -> Result<(LieAlgebra3<F>, ScalarProduct3<F>), ModelError<F>> {
    let (alg, base) = ads_killing_pair::<F>();
    let mut gram = base.gram;
    // B(., e) pairs only f nontrivially: B(f, e) = 4
    gram[2][2] = gram[2][2] + c * r(16.0);
    let sp = ScalarProduct3::new(gram)?;
    Ok((alg, sp))
}

/// The split-invariant family on sl(2,R): <h,h> = mu, <e,f> = nu.
pub fn g_h_pair<F: Real>(mu: F, nu: F) -> Result<(LieAlgebra3<F>, ScalarProduct3<F>), ModelError<F>> {
    let alg = LieAlgebra3::sl2();
    let z = F::zero();
    let sp = ScalarProduct3::new([[z, z, nu], [z, mu, z], [nu, z, z]])?;
    Ok((alg, sp))
}

/// heis with <X', Y'> = <Z, Z> = 1 in the basis (X', Y', Z).
pub fn lorentz_heisenberg_pair<F: Real>() -> (LieAlgebra3<F>, ScalarProduct3<F>) {
    let alg = LieAlgebra3::heisenberg();
    let z = F::zero();
    let o = F::one();
    let sp = ScalarProduct3::new([[z, o, z], [o, z, z], [z, z, o]])
        .expect("Lorentz-Heisenberg product is Lorentz");
    (alg, sp)
}

/// sol with <T, Z> = <X, X> = 1 in the basis (T, X, Z).
pub fn lorentz_sol_pair<F: Real>() -> (LieAlgebra3<F>, ScalarProduct3<F>) {
    let alg = LieAlgebra3::sol();
    let z = F::zero();
    let o = F::one();
    let sp = ScalarProduct3::new([[z, z, o], [z, o, z], [o, z, z]])
        .expect("Lorentz-Sol product is Lorentz");
    (alg, sp)
}

/// The 4-dimensional Killing algebra of the Lorentz-Sol metric: basis
/// (T, X, Z, Y) with [T,Z] = Z, [T,X] = -X, [T,Y] = 2Y, [X,Y] = Z.
pub fn sol_killing_extension4<F: Real>() -> LieAlgebraDyn<F> {
    let mut a = LieAlgebraDyn::new(4, "sol_killing_extension");
    a.set_bracket(0, 2, &[(2, F::one())]); // [T, Z] = Z
    a.set_bracket(0, 1, &[(1, -F::one())]); // [T, X] = -X
    a.set_bracket(0, 3, &[(3, r(2.0))]); // [T, Y] = 2Y
    a.set_bracket(1, 3, &[(2, F::one())]); // [X, Y] = Z
    a
}

/// The hyperbolic automorphism diag(lambda, 1/lambda, 1) of heis in the
/// basis (X', Y', Z); it preserves the Lorentz-Heisenberg product exactly.
pub fn lh_automorphism<F: Real>(lambda: F) -> [[F; 3]; 3] {
    let z = F::zero();
    [[lambda, z, z], [z, F::one() / lambda, z], [z, z, F::one()]]
}

/// All named left-invariant (algebra, product) pairs.
pub fn left_invariant_pairs<F: Real>() -> Vec<(String, LieAlgebra3<F>, ScalarProduct3<F>)> {
    let mut out = Vec::new();
    let (a1, s1) = ads_killing_pair::<F>();
    out.push(("ads_killing".to_string(), a1, s1));
    let (a2, s2) = g_u_pair::<F>(F::one()).expect("g_u(1) is Lorentz");
    out.push(("g_u".to_string(), a2, s2));
    let (a3, s3) = g_h_pair::<F>(r(2.0), r(2.0)).expect("g_h(2,2) is Lorentz");
    out.push(("g_h".to_string(), a3, s3));
    let (a4, s4) = lorentz_heisenberg_pair::<F>();
    out.push(("lorentz_heisenberg".to_string(), a4, s4));
    let (a5, s5) = lorentz_sol_pair::<F>();
    out.push(("lorentz_sol".to_string(), a5, s5));
    out
}

/// Fit structure constants of a field triple from bracket values at sample
/// points: [X_i, X_j](p) = sum_k c^k_{ij} X_k(p). Returns (constants, max
/// residual of the fit).
pub fn fit_structure_constants<F: Real>(
    fields: &[VectorFieldExpr<F>],
    points: &[[F; 3]],
) -> ([[[F; 3]; 3]; 3], F) {
    assert_eq!(fields.len(), 3);
    let mut c = [[[F::zero(); 3]; 3]; 3];
    let mut worst = F::zero();
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            // normal equations for the 3 unknowns c^k_{ij}
            let mut ata = [[F::zero(); 3]; 3];
            let mut atb = [F::zero(); 3];
            for &p in points {
                let vals: Vec<[F; 3]> = fields.iter().map(|f| f.eval(p)).collect();
                let br = fields[i].bracket_at(&fields[j], p);
                for comp in 0..3 {
                    for k in 0..3 {
                        for l in 0..3 {
                            ata[k][l] = ata[k][l] + vals[k][comp] * vals[l][comp];
                        }
                        atb[k] = atb[k] + vals[k][comp] * br[comp];
                    }
                }
            }
            // regularize the normal equations against degenerate sampling
            for k in 0..3 {
                ata[k][k] = ata[k][k] + r(1e-12);
            }
            let sol = linalg::mat3_vec(&linalg::mat3_inv(&ata), &atb);
            for k in 0..3 {
                c[k][i][j] = sol[k];
            }
            // residual of the fit
            for &p in points {
                let vals: Vec<[F; 3]> = fields.iter().map(|f| f.eval(p)).collect();
                let br = fields[i].bracket_at(&fields[j], p);
                for comp in 0..3 {
                    let mut fit = F::zero();
                    for k in 0..3 {
                        fit = fit + sol[k] * vals[k][comp];
                    }
                    worst = worst.max((br[comp] - fit).abs());
                }
            }
        }
    }
    (c, worst)
}

/// Deterministic pseudo-random points in the metric's domain box.
pub fn sample_points<F: Real>(
    domain: &[[F; 2]; 3],
    count: usize,
    rng: &mut impl rand::Rng,
) -> Vec<[F; 3]> {
    (0..count)
        .map(|_| {
            let mut p = [F::zero(); 3];
            for (i, slot) in p.iter_mut().enumerate() {
                let t: f64 = rng.random_range(0.0..1.0);
                *slot = domain[i][0] + (domain[i][1] - domain[i][0]) * r(t);
            }
            p
        })
        .collect()
}
