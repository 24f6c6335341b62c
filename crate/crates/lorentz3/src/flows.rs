//! Geodesic integration (fixed-step RK4) and the normal-flow identities of
//! the hyperbolic family: Clairaut conservation along Killing fields,
//! pushing the t = 0 slice by unit-normal geodesics, the homothety factor of
//! the pushed metric, lightlike-geodesic transfer between slice and ambient
//! metric, and the first-return time of the normal flow.

use std::fmt;

use crate::difftensor::{ChartMetric, DiffError};
use crate::expr::VectorFieldExpr;
use crate::linalg;
use crate::models::TrigPoly;
use crate::scalar::{r, Real};

#[derive(Debug, Clone)]
pub enum FlowError<F> {
    Metric(String),
    NonFinite { s: F },
    /// No return of the pushed slice found within the searched interval.
    NoReturn { searched: F },
    BadSlice(String),
}

impl<F: Real> fmt::Display for FlowError<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlowError::Metric(e) => write!(f, "metric evaluation failed: {e}"),
            FlowError::NonFinite { s } => write!(f, "trajectory non-finite at parameter {s}"),
            FlowError::NoReturn { searched } => {
                write!(f, "no slice return within parameter length {searched}")
            }
            FlowError::BadSlice(s) => write!(f, "slice precondition failed: {s}"),
        }
    }
}

impl<F: Real> std::error::Error for FlowError<F> {}

impl<F: Real> From<DiffError<F>> for FlowError<F> {
    fn from(e: DiffError<F>) -> Self {
        FlowError::Metric(e.to_string())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct GeodesicState<F> {
    pub pos: [F; 3],
    pub vel: [F; 3],
    pub s: F,
}

/// Christoffel symbols from value + gradient evaluation only.
fn christoffel_fast<F: Real>(m: &ChartMetric<F>, p: [F; 3]) -> [[[F; 3]; 3]; 3] {
    let mut g = [[F::zero(); 3]; 3];
    let mut dg = [[[F::zero(); 3]; 3]; 3]; // dg[l][i][j] = d_l g_ij
    for (idx, &(i, j)) in [(0usize, 0usize), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]
        .iter()
        .enumerate()
    {
        let (v, grad) = m.comps[idx].eval_grad(p);
        g[i][j] = v;
        g[j][i] = v;
        for l in 0..3 {
            dg[l][i][j] = grad[l];
            dg[l][j][i] = grad[l];
        }
    }
    let ginv = linalg::mat3_inv(&g);
    let mut gamma = [[[F::zero(); 3]; 3]; 3];
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..=i {
                let mut s = F::zero();
                for l in 0..3 {
                    s = s + ginv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
                }
                let half = s * r(0.5);
                gamma[k][i][j] = half;
                gamma[k][j][i] = half;
            }
        }
    }
    gamma
}

fn geodesic_rhs<F: Real>(m: &ChartMetric<F>, pos: [F; 3], vel: [F; 3]) -> ([F; 3], [F; 3]) {
    let gamma = christoffel_fast(m, pos);
    let mut acc = [F::zero(); 3];
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                acc[k] = acc[k] - gamma[k][i][j] * vel[i] * vel[j];
            }
        }
    }
    (vel, acc)
}

/// Fixed-step RK4 integration of the geodesic equation; returns the sampled
/// trajectory including both endpoints.
pub fn geodesic_integrate<F: Real>(
    m: &ChartMetric<F>,
    x0: [F; 3],
    v0: [F; 3],
    length: F,
    step: F,
) -> Result<Vec<GeodesicState<F>>, FlowError<F>> {
    let n = (length / step).as_f64().ceil().max(1.0) as usize;
    let h = length / F::of_int(n as i64);
    let mut pos = x0;
    let mut vel = v0;
    let mut out = Vec::with_capacity(n + 1);
    out.push(GeodesicState { pos, vel, s: F::zero() });
    for k in 0..n {
        let (p1, v1) = geodesic_rhs(m, pos, vel);
        let add = |a: &[F; 3], b: &[F; 3], w: F| {
            [a[0] + b[0] * w, a[1] + b[1] * w, a[2] + b[2] * w]
        };
        let half = h * r(0.5);
        let (p2, v2) = geodesic_rhs(m, add(&pos, &p1, half), add(&vel, &v1, half));
        let (p3, v3) = geodesic_rhs(m, add(&pos, &p2, half), add(&vel, &v2, half));
        let (p4, v4) = geodesic_rhs(m, add(&pos, &p3, h), add(&vel, &v3, h));
        let sixth = h / r(6.0);
        for i in 0..3 {
            pos[i] = pos[i] + sixth * (p1[i] + r::<F>(2.0) * p2[i] + r::<F>(2.0) * p3[i] + p4[i]);
            vel[i] = vel[i] + sixth * (v1[i] + r::<F>(2.0) * v2[i] + r::<F>(2.0) * v3[i] + v4[i]);
        }
        let s = F::of_int((k + 1) as i64) * h;
        if pos.iter().chain(vel.iter()).any(|x| !x.is_finite()) {
            return Err(FlowError::NonFinite { s });
        }
        out.push(GeodesicState { pos, vel, s });
    }
    Ok(out)
}

fn inner<F: Real>(m: &ChartMetric<F>, p: [F; 3], a: &[F; 3], b: &[F; 3]) -> F {
    let g = m.gram(p);
    let mut s = F::zero();
    for i in 0..3 {
        for j in 0..3 {
            s = s + g[i][j] * a[i] * b[j];
        }
    }
    s
}

/// Max drift of g(gamma', gamma') along the trajectory.
pub fn energy_drift<F: Real>(m: &ChartMetric<F>, traj: &[GeodesicState<F>]) -> F {
    let e0 = inner(m, traj[0].pos, &traj[0].vel, &traj[0].vel);
    traj.iter().fold(F::zero(), |acc, st| {
        acc.max((inner(m, st.pos, &st.vel, &st.vel) - e0).abs())
    })
}

/// Max drift of the Clairaut quantity g(gamma', X) along the trajectory.
pub fn clairaut_drift<F: Real>(
    m: &ChartMetric<F>,
    traj: &[GeodesicState<F>],
    x: &VectorFieldExpr<F>,
) -> F {
    let c0 = inner(m, traj[0].pos, &traj[0].vel, &x.eval(traj[0].pos));
    traj.iter().fold(F::zero(), |acc, st| {
        acc.max((inner(m, st.pos, &st.vel, &x.eval(st.pos)) - c0).abs())
    })
}

/// A pushed slice of the normal flow: parameter grid, image points and
/// finite-difference tangent frames.
#[derive(Clone, Debug)]
pub struct SurfaceSlice<F> {
    pub t: F,
    pub params: Vec<[F; 2]>,
    pub points: Vec<[F; 3]>,
    /// tangents[i][0] = d(image)/du, tangents[i][1] = d(image)/dv
    pub tangents: Vec<[[F; 3]; 2]>,
}

impl<F: Real> SurfaceSlice<F> {
    /// Induced 2x2 metric at sample i from the ambient metric.
    pub fn induced_metric(&self, m: &ChartMetric<F>, i: usize) -> [[F; 2]; 2] {
        let p = self.points[i];
        let tu = self.tangents[i][0];
        let tv = self.tangents[i][1];
        [
            [inner(m, p, &tu, &tu), inner(m, p, &tu, &tv)],
            [inner(m, p, &tv, &tu), inner(m, p, &tv, &tv)],
        ]
    }
}

/// Push the t = 0 slice of a g_a chart (coordinates (t, u, v)) along the
/// unit normal d_t for parameter length `t`, on an n x n parameter grid.
/// The normal's unit length and orthogonality to the slice are verified.
pub fn normal_flow<F: Real>(
    m: &ChartMetric<F>,
    t: F,
    n: usize,
    step: F,
) -> Result<SurfaceSlice<F>, FlowError<F>> {
    let nu = [F::one(), F::zero(), F::zero()];
    let du = [F::zero(), F::one(), F::zero()];
    let dv = [F::zero(), F::zero(), F::one()];
    let h = r::<F>(1e-4);
    let mut params = Vec::with_capacity(n * n);
    let mut points = Vec::with_capacity(n * n);
    let mut tangents = Vec::with_capacity(n * n);
    let push = |u: F, v: F| -> Result<[F; 3], FlowError<F>> {
        let start = [F::zero(), u, v];
        if t == F::zero() {
            return Ok(start);
        }
        let traj = geodesic_integrate(m, start, nu, t, step)?;
        Ok(traj.last().unwrap().pos)
    };
    for iu in 0..n {
        for iv in 0..n {
            let frac = |k: usize| {
                if n > 1 {
                    F::of_int(k as i64) / F::of_int((n - 1) as i64)
                } else {
                    r(0.5)
                }
            };
            let u = m.domain[1][0] + (m.domain[1][1] - m.domain[1][0]) * frac(iu);
            let v = m.domain[2][0] + (m.domain[2][1] - m.domain[2][0]) * frac(iv);
            // slice preconditions at the foot point
            let foot = [F::zero(), u, v];
            let nn = inner(m, foot, &nu, &nu);
            let nu_du = inner(m, foot, &nu, &du);
            let nu_dv = inner(m, foot, &nu, &dv);
            if (nn - F::one()).abs() > r(1e-10) || nu_du.abs() > r(1e-10) || nu_dv.abs() > r(1e-10)
            {
                return Err(FlowError::BadSlice(format!(
                    "normal not unit/orthogonal at u={u}, v={v}"
                )));
            }
            let center = push(u, v)?;
            let pu = push(u + h, v)?;
            let mu = push(u - h, v)?;
            let pv = push(u, v + h)?;
            let mv = push(u, v - h)?;
            let two_h = r::<F>(2.0) * h;
            let tu = [
                (pu[0] - mu[0]) / two_h,
                (pu[1] - mu[1]) / two_h,
                (pu[2] - mu[2]) / two_h,
            ];
            let tv = [
                (pv[0] - mv[0]) / two_h,
                (pv[1] - mv[1]) / two_h,
                (pv[2] - mv[2]) / two_h,
            ];
            params.push([u, v]);
            points.push(center);
            tangents.push([tu, tv]);
        }
    }
    Ok(SurfaceSlice { t, params, points, tangents })
}

/// Least-squares homothety factor of the pushed slice metric against the
/// t = 0 induced metric, and the max residual after the fit.
pub fn homothety_defect<F: Real>(
    m: &ChartMetric<F>,
    slice: &SurfaceSlice<F>,
) -> Result<(F, F), FlowError<F>> {
    let mut num = F::zero();
    let mut den = F::zero();
    let mut pulled = Vec::with_capacity(slice.points.len());
    let mut base = Vec::with_capacity(slice.points.len());
    for i in 0..slice.points.len() {
        let p = slice.induced_metric(m, i);
        // induced metric of the t = 0 slice at the same parameters
        let foot = [F::zero(), slice.params[i][0], slice.params[i][1]];
        let du = [F::zero(), F::one(), F::zero()];
        let dv = [F::zero(), F::zero(), F::one()];
        let g0 = [
            [inner(m, foot, &du, &du), inner(m, foot, &du, &dv)],
            [inner(m, foot, &dv, &du), inner(m, foot, &dv, &dv)],
        ];
        for a in 0..2 {
            for b in 0..2 {
                num = num + p[a][b] * g0[a][b];
                den = den + g0[a][b] * g0[a][b];
            }
        }
        pulled.push(p);
        base.push(g0);
    }
    if den == F::zero() {
        return Err(FlowError::BadSlice("degenerate base slice metric".into()));
    }
    let lambda = num / den;
    let mut defect = F::zero();
    for i in 0..pulled.len() {
        for a in 0..2 {
            for b in 0..2 {
                defect = defect.max((pulled[i][a][b] - lambda * base[i][a][b]).abs());
            }
        }
    }
    Ok((defect, lambda))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SliceDirection {
    /// d_u: lightlike on every slice of a g_a chart.
    U,
    /// d_v: lightlike on every slice.
    V,
    /// d_u + d_v: spacelike; the negative control.
    UPlusV,
}

/// Integrate the ambient geodesic from a point of the slice t = t0 with the
/// given slice direction as initial velocity over parameter length `length`;
/// returns the max of (distance from the slice, distance from the slice's
/// own straight line through the start).
pub fn lightlike_transfer_check<F: Real>(
    m: &ChartMetric<F>,
    t0: F,
    dir: SliceDirection,
    length: F,
    step: F,
) -> Result<F, FlowError<F>> {
    let v0 = match dir {
        SliceDirection::U => [F::zero(), F::one(), F::zero()],
        SliceDirection::V => [F::zero(), F::zero(), F::one()],
        SliceDirection::UPlusV => [F::zero(), F::one(), F::one()],
    };
    let mut worst = F::zero();
    for &(u0, v0c) in &[(r::<F>(-0.4), r::<F>(0.3)), (r(0.1), r(-0.2)), (r(0.5), r(0.6))] {
        let start = [t0, u0, v0c];
        let traj = geodesic_integrate(m, start, v0, length, step)?;
        for st in &traj {
            // distance from the slice {t = t0}
            worst = worst.max((st.pos[0] - t0).abs());
            // distance from the straight line start + s * v0
            for i in 0..3 {
                let line = start[i] + st.s * v0[i];
                worst = worst.max((st.pos[i] - line).abs());
            }
        }
    }
    Ok(worst)
}

/// First return time of the normal flow of a g_a chart: smallest t > 0 at
/// which the pushed slice lands on the t = 0 slice modulo the coefficient
/// period lattice. Searches up to 3 periods, then refines by ternary search.
pub fn first_return_estimate<F: Real>(
    m: &ChartMetric<F>,
    a: &TrigPoly<F>,
    grid_n: usize,
    step: F,
) -> Result<F, FlowError<F>> {
    let period = a.fundamental_period();
    let nu = [F::one(), F::zero(), F::zero()];
    // lattice distance of the pushed slice at flow parameter s
    let starts: Vec<[F; 3]> = {
        let mut v = Vec::new();
        for iu in 0..grid_n {
            for iv in 0..grid_n {
                let frac = |k: usize| F::of_int(k as i64) / F::of_int(grid_n.max(2) as i64 - 1);
                let u = m.domain[1][0] + (m.domain[1][1] - m.domain[1][0]) * frac(iu);
                let vv = m.domain[2][0] + (m.domain[2][1] - m.domain[2][0]) * frac(iv);
                v.push([F::zero(), u, vv]);
            }
        }
        v
    };
    let slice_distance = |s: F| -> Result<F, FlowError<F>> {
        if s <= F::zero() {
            return Ok(F::zero());
        }
        let mut worst = F::zero();
        for &x0 in &starts {
            let traj = geodesic_integrate(m, x0, nu, s, step)?;
            let t_end = traj.last().unwrap().pos[0];
            // distance to the nearest lattice translate k * period, k >= 1
            let k = (t_end / period).as_f64().round().max(1.0);
            let d = (t_end - period * r(k)).abs();
            worst = worst.max(d);
        }
        Ok(worst)
    };
    // march in steps of period/16 looking for a local minimum well below
    // period/4, then ternary-search the bracket
    let coarse = period / r(16.0);
    let mut prev_s = coarse;
    let mut prev_d = slice_distance(prev_s)?;
    let mut best_bracket: Option<(F, F)> = None;
    let mut s = coarse * r(2.0);
    while s <= period * r::<F>(3.0) + coarse * r(0.5) {
        let d = slice_distance(s)?;
        if d > prev_d && prev_d < period * r(0.25) {
            best_bracket = Some((prev_s - coarse, s));
            break;
        }
        prev_s = s;
        prev_d = d;
        s = s + coarse;
    }
    let (mut lo, mut hi) = best_bracket.ok_or(FlowError::NoReturn {
        searched: period * r::<F>(3.0),
    })?;
    for _ in 0..80 {
        let m1 = lo + (hi - lo) / r(3.0);
        let m2 = hi - (hi - lo) / r(3.0);
        if slice_distance(m1)? < slice_distance(m2)? {
            hi = m2;
        } else {
            lo = m1;
        }
        if hi - lo < r(1e-9) {
            break;
        }
    }
    let tau = (lo + hi) * r(0.5);
    if slice_distance(tau)? > r(1e-6) {
        return Err(FlowError::NoReturn { searched: period * r::<F>(3.0) });
    }
    Ok(tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Expr;
    use crate::models::{make_flat, make_g_a, make_h_a, FlatVariant, TrigPoly};

    #[test]
    fn flat_geodesics_are_straight() {
        let m = make_flat::<f64>(FlatVariant::MinkowskiDiag).metric;
        let x0 = [0.1, -0.2, 0.3];
        let v0 = [0.7, 0.4, -0.9];
        let traj = geodesic_integrate(&m, x0, v0, 2.0, 1e-3).unwrap();
        for st in &traj {
            for i in 0..3 {
                assert!((st.pos[i] - (x0[i] + st.s * v0[i])).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn g_a_normal_geodesic_is_a_t_line() {
        let a = TrigPoly::<f64>::two_plus_cos();
        let m = make_g_a(&a).unwrap().metric;
        let traj = geodesic_integrate(&m, [0.0, 0.4, -0.6], [1.0, 0.0, 0.0], 1.5, 1e-3).unwrap();
        let end = traj.last().unwrap();
        assert!((end.pos[0] - 1.5).abs() < 1e-12);
        assert!((end.pos[1] - 0.4).abs() < 1e-12);
        assert!((end.pos[2] + 0.6).abs() < 1e-12);
    }

    #[test]
    fn lightlike_energy_stays_zero_on_h_a() {
        let a = TrigPoly::<f64>::two_plus_cos();
        let m = make_h_a(&a).unwrap().metric;
        // v0 = d_u is lightlike for h_a
        let traj = geodesic_integrate(&m, [0.1, 0.2, 0.3], [1.0, 0.0, 0.0], 3.0, 1e-3).unwrap();
        assert!(energy_drift(&m, &traj) < 1e-8);
    }

    #[test]
    fn rk4_energy_conservation_and_order() {
        let a = TrigPoly::<f64>::two_plus_cos();
        let m = make_g_a(&a).unwrap().metric;
        let x0 = [0.1, 0.0, 0.0];
        let v0 = [0.8, 0.5, -0.4];
        let t1 = geodesic_integrate(&m, x0, v0, 5.0, 1e-3).unwrap();
        let drift1 = energy_drift(&m, &t1) / 5.0;
        assert!(drift1 < 1e-7, "drift per unit length {drift1}");
        let t2 = geodesic_integrate(&m, x0, v0, 5.0, 2e-3).unwrap();
        let drift2 = energy_drift(&m, &t2) / 5.0;
        assert!(drift2 / drift1 >= 8.0, "order ratio {}", drift2 / drift1);
    }

    #[test]
    fn clairaut_conservation() {
        let a = TrigPoly::<f64>::two_plus_cos();
        let m = make_g_a(&a).unwrap().metric;
        let du = VectorFieldExpr::<f64>::coordinate_basis(1);
        let traj = geodesic_integrate(&m, [0.2, 0.1, -0.3], [0.6, 0.7, 0.3], 10.0, 1e-3).unwrap();
        assert!(clairaut_drift(&m, &traj, &du) < 1e-7);
        // flat with a translation field
        let flat = make_flat::<f64>(FlatVariant::NullFrame).metric;
        let traj = geodesic_integrate(&flat, [0.0; 3], [0.3, 1.0, -0.2], 10.0, 1e-3).unwrap();
        assert!(clairaut_drift(&flat, &traj, &du) < 1e-12);
        // negative control: t d_u is not Killing for g_a
        let not_killing = VectorFieldExpr::new([Expr::zero(), Expr::coord(0), Expr::zero()]);
        let traj = geodesic_integrate(&m, [0.2, 0.1, -0.3], [0.6, 0.7, 0.3], 10.0, 1e-3).unwrap();
        assert!(clairaut_drift(&m, &traj, &not_killing) > 1e-3);
    }

    #[test]
    fn normal_flow_homothety() {
        let a = TrigPoly::<f64>::two_plus_cos();
        let m = make_g_a(&a).unwrap().metric;
        // t = 0: identity push, lambda = 1
        let s0 = normal_flow(&m, 0.0, 5, 1e-3).unwrap();
        let (defect, lambda) = homothety_defect(&m, &s0).unwrap();
        assert!((lambda - 1.0).abs() < 1e-12);
        assert!(defect < 1e-12);
        // t = 0.25: lambda = a(0.25)/a(0) = 2/3
        let s = normal_flow(&m, 0.25, 5, 1e-3).unwrap();
        let (defect, lambda) = homothety_defect(&m, &s).unwrap();
        assert!((lambda - 2.0 / 3.0).abs() < 1e-5, "lambda = {lambda}");
        assert!(defect < 1e-5, "defect = {defect}");
        // constant a: flat product, lambda = 1 for every t
        let flat_a = TrigPoly::<f64>::constant(1.0);
        let mf = make_g_a(&flat_a).unwrap().metric;
        let s = normal_flow(&mf, 0.37, 5, 1e-3).unwrap();
        let (defect, lambda) = homothety_defect(&mf, &s).unwrap();
        assert!((lambda - 1.0).abs() < 1e-10);
        assert!(defect < 1e-10);
    }

    #[test]
    fn induced_metric_is_ambient_pullback() {
        let a = TrigPoly::<f64>::two_plus_cos();
        let m = make_g_a(&a).unwrap().metric;
        let s = normal_flow(&m, 0.3, 4, 1e-3).unwrap();
        // the slice invariant: induced = pullback, here by construction;
        // check against the closed form 2 a(t) du dv on the pushed slice
        let at = a.eval(0.3);
        for i in 0..s.points.len() {
            let g2 = s.induced_metric(&m, i);
            assert!((g2[0][0]).abs() < 1e-8);
            assert!((g2[1][1]).abs() < 1e-8);
            assert!((g2[0][1] - at).abs() < 1e-8);
        }
    }

    #[test]
    fn orthogonality_persists_along_normal_geodesics() {
        let a = TrigPoly::<f64>::two_plus_cos();
        let m = make_g_a(&a).unwrap().metric;
        let du = VectorFieldExpr::<f64>::coordinate_basis(1);
        let dv = VectorFieldExpr::<f64>::coordinate_basis(2);
        for &(u, v) in &[(0.0, 0.0), (0.5, -0.5), (-0.3, 0.8)] {
            let traj = geodesic_integrate(&m, [0.0, u, v], [1.0, 0.0, 0.0], 1.0, 1e-3).unwrap();
            assert!(clairaut_drift(&m, &traj, &du) < 1e-7);
            assert!(clairaut_drift(&m, &traj, &dv) < 1e-7);
        }
    }

    #[test]
    fn lightlike_transfer() {
        let a = TrigPoly::<f64>::two_plus_cos();
        let m = make_g_a(&a).unwrap().metric;
        assert!(lightlike_transfer_check(&m, 0.3, SliceDirection::U, 2.0, 1e-3).unwrap() < 1e-6);
        assert!(lightlike_transfer_check(&m, 0.3, SliceDirection::V, 2.0, 1e-3).unwrap() < 1e-6);
        // flat limit
        let mf = make_g_a(&TrigPoly::constant(1.0)).unwrap().metric;
        assert!(
            lightlike_transfer_check(&mf, 0.3, SliceDirection::U, 2.0, 1e-3).unwrap() < 1e-12
        );
        // spacelike direction leaves the slice
        assert!(
            lightlike_transfer_check(&m, 0.3, SliceDirection::UPlusV, 2.0, 1e-3).unwrap() > 1e-3
        );
    }

    #[test]
    fn first_return_times() {
        let a = TrigPoly::<f64>::two_plus_cos();
        let m = make_g_a(&a).unwrap().metric;
        let tau = first_return_estimate(&m, &a, 3, 1e-3).unwrap();
        assert!((tau - 1.0).abs() < 1e-6, "tau = {tau}");
        // constant coefficient: the lattice period convention gives 1
        let ac = TrigPoly::<f64>::constant(1.0);
        let mc = make_g_a(&ac).unwrap().metric;
        let tau = first_return_estimate(&mc, &ac, 3, 1e-3).unwrap();
        assert!((tau - 1.0).abs() < 1e-6);
        // a(2t): period 1/2
        let a2 = a.scale_argument(2);
        let m2 = make_g_a(&a2).unwrap().metric;
        let tau = first_return_estimate(&m2, &a2, 3, 1e-3).unwrap();
        assert!((tau - 0.5).abs() < 1e-6, "tau = {tau}");
    }
}
