//! The Einstein universe Ein_3 as the projectivized null cone of the
//! quadratic form Q(x) = 2 x0 x4 + 2 x1 x3 + x2^2 on R^5: points, photons,
//! lightcones, the stereographic embedding of R^{1,2}, the lightlike
//! foliation with singular photon Delta = P(span(e0, e1)), and the matrix
//! groups N, T, R_A, R_lambda acting on it.

use std::fmt;

use rand::Rng;

use crate::linalg;
use crate::scalar::{r, Real};

#[derive(Debug, Clone)]
pub enum EinsteinError<F> {
    /// Representative not on the null cone.
    NotNull { q: F },
    /// Matrix does not preserve the quadratic form.
    NotInO23 { defect: F },
    /// The span of the two representatives is not totally isotropic.
    NotIsotropic { defect: F },
    /// Point lies on the lightcone with vertex p0; stereographic
    /// projection undefined there.
    BoundaryLightcone,
    /// Leaf undefined: the point lies on Delta.
    OnDelta,
    /// Degenerate input (zero vector, singular 2x2 block, ...).
    Degenerate(String),
}

impl<F: Real> fmt::Display for EinsteinError<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EinsteinError::NotNull { q } => write!(f, "representative not null: Q = {q}"),
            EinsteinError::NotInO23 { defect } => {
                write!(f, "matrix does not preserve Q, defect {defect}")
            }
            EinsteinError::NotIsotropic { defect } => {
                write!(f, "plane not totally isotropic, Gram defect {defect}")
            }
            EinsteinError::BoundaryLightcone => {
                write!(f, "point on the lightcone with vertex p0: no affine chart")
            }
            EinsteinError::OnDelta => write!(f, "point on Delta: leaf undefined"),
            EinsteinError::Degenerate(s) => write!(f, "degenerate input: {s}"),
        }
    }
}

impl<F: Real> std::error::Error for EinsteinError<F> {}

/// Q(x) = 2 x0 x4 + 2 x1 x3 + x2^2.
pub fn q23<F: Real>(x: &[F; 5]) -> F {
    r::<F>(2.0) * x[0] * x[4] + r::<F>(2.0) * x[1] * x[3] + x[2] * x[2]
}

/// The polarization B(x, y) = x0 y4 + x4 y0 + x1 y3 + x3 y1 + x2 y2.
pub fn q23_pair<F: Real>(x: &[F; 5], y: &[F; 5]) -> F {
    x[0] * y[4] + x[4] * y[0] + x[1] * y[3] + x[3] * y[1] + x[2] * y[2]
}

/// Gram matrix of Q (anti-diagonal ones).
pub fn gram_q23<F: Real>() -> [[F; 5]; 5] {
    let mut g = [[F::zero(); 5]; 5];
    g[0][4] = F::one();
    g[4][0] = F::one();
    g[1][3] = F::one();
    g[3][1] = F::one();
    g[2][2] = F::one();
    g
}

pub fn is_null<F: Real>(x: &[F; 5]) -> bool {
    let scale = linalg::max_abs(x.iter().copied());
    q23(x).abs() <= r::<F>(1e-12) * (scale * scale).max(F::one())
}

/// A point of Ein_3: a null representative normalized so the
/// largest-magnitude coordinate is +/-1 and the first nonzero coordinate is
/// positive.
#[derive(Clone, Copy, Debug)]
pub struct ProjPoint5<F> {
    pub rep: [F; 5],
}

impl<F: Real> ProjPoint5<F> {
    pub fn new(raw: [F; 5]) -> Result<Self, EinsteinError<F>> {
        let scale = linalg::max_abs(raw.iter().copied());
        if scale == F::zero() {
            return Err(EinsteinError::Degenerate("zero representative".into()));
        }
        if !is_null(&raw) {
            return Err(EinsteinError::NotNull { q: q23(&raw) });
        }
        Ok(Self::normalize(raw))
    }

    fn normalize(raw: [F; 5]) -> Self {
        let mut best = 0usize;
        for i in 1..5 {
            if raw[i].abs() > raw[best].abs() {
                best = i;
            }
        }
        let div = raw[best];
        let mut rep = raw;
        for x in rep.iter_mut() {
            *x = *x / div;
        }
        // sign: first coordinate of significant size is positive
        if let Some(first) = rep.iter().find(|x| x.abs() > r(1e-12)) {
            if *first < F::zero() {
                for x in rep.iter_mut() {
                    *x = -*x;
                }
            }
        }
        ProjPoint5 { rep }
    }

    pub fn basis_point(i: usize) -> Self {
        let mut rep = [F::zero(); 5];
        rep[i] = F::one();
        ProjPoint5 { rep }
    }

    /// p0 = [e0], the pole of the stereographic chart.
    pub fn p0() -> Self {
        Self::basis_point(0)
    }

    pub fn approx_eq(&self, other: &Self, tol: F) -> bool {
        (0..5).all(|i| (self.rep[i] - other.rep[i]).abs() <= tol)
    }

    /// Is the point on the photon Delta = P(span(e0, e1))?
    pub fn on_delta(&self, tol: F) -> bool {
        self.rep[2].abs() <= tol && self.rep[3].abs() <= tol && self.rep[4].abs() <= tol
    }

    /// Is the point on the lightcone C(p0) = {x4 = 0}?
    pub fn on_lightcone_p0(&self, tol: F) -> bool {
        self.rep[4].abs() <= tol
    }
}

/// A photon: the projectivization of a totally isotropic 2-plane, stored by
/// two spanning representatives.
#[derive(Clone, Debug)]
pub struct PhotonPlane<F> {
    pub span: [[F; 5]; 2],
}

impl<F: Real> PhotonPlane<F> {
    pub fn new(u: [F; 5], v: [F; 5]) -> Result<Self, EinsteinError<F>> {
        let mut defect = q23(&u).abs();
        defect = defect.max(q23(&v).abs());
        defect = defect.max(q23_pair(&u, &v).abs());
        let scale = linalg::max_abs(u.iter().chain(v.iter()).copied()).max(F::one());
        if defect > r::<F>(1e-12) * scale * scale {
            return Err(EinsteinError::NotIsotropic { defect });
        }
        // independence
        let pr = projector2(&u, &v).ok_or_else(|| {
            EinsteinError::Degenerate("photon span is 1-dimensional".into())
        })?;
        let _ = pr;
        Ok(PhotonPlane { span: [u, v] })
    }

    /// Delta = P(span(e0, e1)).
    pub fn delta() -> Self {
        let mut e0 = [F::zero(); 5];
        e0[0] = F::one();
        let mut e1 = [F::zero(); 5];
        e1[1] = F::one();
        PhotonPlane { span: [e0, e1] }
    }

    /// Euclidean orthogonal projector onto the span; photon equality is
    /// projector agreement.
    pub fn projector(&self) -> [[F; 5]; 5] {
        projector2(&self.span[0], &self.span[1]).expect("independent span")
    }

    pub fn approx_eq(&self, other: &Self, tol: F) -> bool {
        let a = self.projector();
        let b = other.projector();
        let mut worst = F::zero();
        for i in 0..5 {
            for j in 0..5 {
                worst = worst.max((a[i][j] - b[i][j]).abs());
            }
        }
        worst <= tol
    }

    pub fn contains(&self, p: &ProjPoint5<F>, tol: F) -> bool {
        let pr = self.projector();
        let projected = linalg::mat5_vec(&pr, &p.rep);
        let mut worst = F::zero();
        for i in 0..5 {
            worst = worst.max((projected[i] - p.rep[i]).abs());
        }
        worst <= tol
    }
}

/// Orthogonal projector onto span(u, v) by Gram-Schmidt; None if dependent.
fn projector2<F: Real>(u: &[F; 5], v: &[F; 5]) -> Option<[[F; 5]; 5]> {
    let dot = |a: &[F; 5], b: &[F; 5]| {
        let mut s = F::zero();
        for i in 0..5 {
            s = s + a[i] * b[i];
        }
        s
    };
    let nu = dot(u, u).sqrt();
    if nu < r(1e-13) {
        return None;
    }
    let mut e1 = *u;
    for x in e1.iter_mut() {
        *x = *x / nu;
    }
    let c = dot(v, &e1);
    let mut w = *v;
    for i in 0..5 {
        w[i] = w[i] - c * e1[i];
    }
    let nw = dot(&w, &w).sqrt();
    if nw < r::<F>(1e-10) * nu.max(linalg::max_abs(v.iter().copied())) {
        return None;
    }
    for x in w.iter_mut() {
        *x = *x / nw;
    }
    let mut pr = [[F::zero(); 5]; 5];
    for i in 0..5 {
        for j in 0..5 {
            pr[i][j] = e1[i] * e1[j] + w[i] * w[j];
        }
    }
    Some(pr)
}

/// An element of O(2,3): a 5x5 matrix preserving Q.
#[derive(Clone, Copy, Debug)]
pub struct O23Element<F> {
    pub m: [[F; 5]; 5],
}

impl<F: Real> O23Element<F> {
    pub fn new(m: [[F; 5]; 5]) -> Result<Self, EinsteinError<F>> {
        let g = gram_q23::<F>();
        let mt = linalg::mat5_transpose(&m);
        let mgm = linalg::mat5_mul(&mt, &linalg::mat5_mul(&g, &m));
        let mut defect = F::zero();
        for i in 0..5 {
            for j in 0..5 {
                defect = defect.max((mgm[i][j] - g[i][j]).abs());
            }
        }
        let scale = linalg::max_abs(m.iter().flatten().copied()).max(F::one());
        if defect > r::<F>(1e-12) * scale * scale {
            return Err(EinsteinError::NotInO23 { defect });
        }
        Ok(O23Element { m })
    }

    pub fn identity() -> Self {
        O23Element { m: linalg::mat5_identity() }
    }

    /// Inverse via Q-adjoint: M^{-1} = G M^T G (G is an involution).
    pub fn inverse(&self) -> Self {
        let g = gram_q23::<F>();
        let mt = linalg::mat5_transpose(&self.m);
        O23Element { m: linalg::mat5_mul(&g, &linalg::mat5_mul(&mt, &g)) }
    }

    pub fn compose(&self, other: &Self) -> Self {
        O23Element { m: linalg::mat5_mul(&self.m, &other.m) }
    }

    pub fn max_abs_diff(&self, other: &Self) -> F {
        let mut worst = F::zero();
        for i in 0..5 {
            for j in 0..5 {
                worst = worst.max((self.m[i][j] - other.m[i][j]).abs());
            }
        }
        worst
    }
}

/// The Heisenberg group element N(x, y, z) of the stabilizer of Delta.
pub fn make_n<F: Real>(x: F, y: F, z: F) -> O23Element<F> {
    let o = F::one();
    let zz = F::zero();
    let m = [
        [o, zz, -x, -(z + x * y), -x * x * r(0.5)],
        [zz, o, -y, -y * y * r(0.5), z],
        [zz, zz, o, y, x],
        [zz, zz, zz, o, zz],
        [zz, zz, zz, zz, o],
    ];
    O23Element::new(m).expect("N(x,y,z) preserves Q")
}

/// The translation subgroup element T(x, z) = N with the y-parameter zero.
pub fn make_t<F: Real>(x: F, z: F) -> O23Element<F> {
    make_n(x, F::zero(), z)
}

/// Block element R_A: A on span(e0, e1), 1 on e2, and the Q-forced
/// companion block S (A^T)^{-1} S on span(e3, e4), where S swaps the two
/// coordinates. For diagonal A the companion block is A / det A.
pub fn make_ra<F: Real>(a: [[F; 2]; 2]) -> Result<O23Element<F>, EinsteinError<F>> {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    if det.abs() < r(1e-14) {
        return Err(EinsteinError::Degenerate("R_A needs invertible A".into()));
    }
    let mut m = [[F::zero(); 5]; 5];
    m[0][0] = a[0][0];
    m[0][1] = a[0][1];
    m[1][0] = a[1][0];
    m[1][1] = a[1][1];
    m[2][2] = F::one();
    // S (A^T)^{-1} S = (1/det) [[a, -b], [-c, d]]
    m[3][3] = a[0][0] / det;
    m[3][4] = -a[0][1] / det;
    m[4][3] = -a[1][0] / det;
    m[4][4] = a[1][1] / det;
    O23Element::new(m)
}

/// The leaf-preserving dilation R_lambda = diag(lambda, lambda, 1, 1/lambda, 1/lambda).
pub fn make_rlambda<F: Real>(lambda: F) -> Result<O23Element<F>, EinsteinError<F>> {
    if lambda <= F::zero() {
        return Err(EinsteinError::Degenerate("R_lambda needs lambda > 0".into()));
    }
    let mut m = [[F::zero(); 5]; 5];
    m[0][0] = lambda;
    m[1][1] = lambda;
    m[2][2] = F::one();
    m[3][3] = F::one() / lambda;
    m[4][4] = F::one() / lambda;
    O23Element::new(m)
}

/// Action on points of Ein_3.
pub fn act<F: Real>(g: &O23Element<F>, p: &ProjPoint5<F>) -> ProjPoint5<F> {
    let img = linalg::mat5_vec(&g.m, &p.rep);
    ProjPoint5::new(img).expect("O(2,3) preserves the null cone")
}

/// Inverse stereographic projection of R^{1,2} (with Q^{1,2} = 2 x1 x3 +
/// x2^2) into Ein_3: x -> [-Q^{1,2}(x)/2 : x1 : x2 : x3 : 1].
pub fn stereo<F: Real>(x: [F; 3]) -> ProjPoint5<F> {
    let q12 = r::<F>(2.0) * x[0] * x[2] + x[1] * x[1];
    let rep = [-q12 * r(0.5), x[0], x[1], x[2], F::one()];
    ProjPoint5::new(rep).expect("stereographic image is null")
}

/// The affine chart inverse: defined off the lightcone C(p0) = {x4 = 0}.
pub fn stereo_inv<F: Real>(p: &ProjPoint5<F>) -> Result<[F; 3], EinsteinError<F>> {
    if p.rep[4].abs() < r(1e-10) {
        return Err(EinsteinError::BoundaryLightcone);
    }
    let w = p.rep[4];
    Ok([p.rep[1] / w, p.rep[2] / w, p.rep[3] / w])
}

/// Pullback defect of the affine-section metric: the differentials of the
/// unnormalized representative, paired by Q, minus the Gram of
/// 2 dx1 dx3 + dx2^2, in max norm. The affine section is isometric onto its
/// image, so the defect is zero up to rounding.
pub fn stereo_conformal_defect<F: Real>(x: [F; 3]) -> F {
    // v(x) = (-Q12(x)/2, x1, x2, x3, 1)
    let d1: [F; 5] = [-x[2], F::one(), F::zero(), F::zero(), F::zero()];
    let d2: [F; 5] = [-x[1], F::zero(), F::one(), F::zero(), F::zero()];
    let d3: [F; 5] = [-x[0], F::zero(), F::zero(), F::one(), F::zero()];
    let diffs = [d1, d2, d3];
    let target = {
        let mut t = [[F::zero(); 3]; 3];
        t[0][2] = F::one();
        t[2][0] = F::one();
        t[1][1] = F::one();
        t
    };
    let mut worst = F::zero();
    for i in 0..3 {
        for j in 0..3 {
            worst = worst.max((q23_pair(&diffs[i], &diffs[j]) - target[i][j]).abs());
        }
    }
    worst
}

/// The leaf of the foliation through p (off Delta): the point of Delta whose
/// lightcone contains p, i.e. [p3 e0 - p4 e1].
pub fn leaf_of<F: Real>(p: &ProjPoint5<F>) -> Result<ProjPoint5<F>, EinsteinError<F>> {
    if p.on_delta(r(1e-12)) {
        return Err(EinsteinError::OnDelta);
    }
    let (a, b) = (p.rep[3], -p.rep[4]);
    if a.abs().max(b.abs()) < r(1e-12) {
        return Err(EinsteinError::OnDelta);
    }
    let mut rep = [F::zero(); 5];
    rep[0] = a;
    rep[1] = b;
    Ok(ProjPoint5::normalize(rep))
}

/// Witt index of a symmetric form: min(#positive, #negative) eigenvalues.
/// For Q^{2,3} this is 2: no 3-dimensional totally isotropic subspaces.
pub fn witt_index<F: Real>(n: usize, gram: &[F]) -> usize {
    let (neg, _, pos) = linalg::signature_dyn(n, gram, r(1e-12));
    neg.min(pos)
}

/// Per-item outcome of the foliation action checks.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ActionItem {
    pub name: String,
    pub passed: bool,
    pub worst: f64,
    pub samples: usize,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct ActionReport {
    pub items: Vec<ActionItem>,
    pub seed: u64,
}

impl ActionReport {
    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }
}

/// Random point of Ein_3 off the lightcone of p0, via the affine chart.
fn random_chart_point<F: Real>(rng: &mut impl Rng) -> ProjPoint5<F> {
    let x = [
        r::<F>(rng.random_range(-2.0..2.0)),
        r::<F>(rng.random_range(-2.0..2.0)),
        r::<F>(rng.random_range(-2.0..2.0)),
    ];
    stereo(x)
}

/// Random point on Delta (away from [e0] and [e1] by construction).
fn random_delta_point<F: Real>(rng: &mut impl Rng) -> ProjPoint5<F> {
    let a: f64 = rng.random_range(-1.0..1.0);
    let b: f64 = rng.random_range(0.1..1.0);
    let mut rep = [F::zero(); 5];
    rep[0] = r(a);
    rep[1] = r(b);
    ProjPoint5::normalize(rep)
}

/// Random point of C(p0) minus p0: null with x4 = 0.
fn random_lightcone_point<F: Real>(rng: &mut impl Rng) -> ProjPoint5<F> {
    let x1: f64 = rng.random_range(0.5..1.5);
    let x2: f64 = rng.random_range(-1.0..1.0);
    let x3 = -x2 * x2 / (2.0 * x1);
    let x0: f64 = rng.random_range(-1.0..1.0);
    ProjPoint5::normalize([r(x0), r(x1), r(x2), r(x3), F::zero()])
}

/// The four action facts for (N, T) on Ein_3, sampled:
/// 1. N fixes Delta pointwise and moves sampled points off Delta.
/// 2. N-orbits stay inside one leaf and are (at least) 2-dimensional.
/// 3. Nontrivial T-elements move every sampled point off C(p0) and Delta,
///    staying inside the leaf.
/// 4. The T-orbit of a point of C(p0) minus p0 stays on one photon.
pub fn fact_action_suite<F: Real>(samples: usize, seed: u64) -> ActionReport {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let tol = r::<F>(1e-10);
    let mut items = Vec::new();

    // item 1
    let mut worst1 = F::zero();
    let mut pass1 = true;
    for _ in 0..samples {
        let g = make_n::<F>(
            r(rng.random_range(-1.5..1.5)),
            r(rng.random_range(-1.5..1.5)),
            r(rng.random_range(-1.5..1.5)),
        );
        let q = random_delta_point::<F>(&mut rng);
        let gq = act(&g, &q);
        let mut diff = F::zero();
        for i in 0..5 {
            diff = diff.max((gq.rep[i] - q.rep[i]).abs());
        }
        worst1 = worst1.max(diff);
        if diff > tol {
            pass1 = false;
        }
        // a nontrivial N moves generic off-Delta points
        let p = random_chart_point::<F>(&mut rng);
        let gp = act(&g, &p);
        let mut moved = F::zero();
        for i in 0..5 {
            moved = moved.max((gp.rep[i] - p.rep[i]).abs());
        }
        if moved <= tol {
            pass1 = false;
        }
    }
    items.push(ActionItem {
        name: "n_fixes_exactly_delta".into(),
        passed: pass1,
        worst: worst1.as_f64(),
        samples,
    });

    // item 2
    let mut worst2 = F::zero();
    let mut pass2 = true;
    for _ in 0..samples {
        let p = random_chart_point::<F>(&mut rng);
        let leaf = leaf_of(&p).expect("chart point off Delta");
        let gens = [
            make_n::<F>(F::one(), F::zero(), F::zero()),
            make_n::<F>(F::zero(), F::one(), F::zero()),
            make_n::<F>(F::zero(), F::zero(), F::one()),
        ];
        let mut dirs: Vec<Vec<F>> = Vec::new();
        for g in &gens {
            let gp = act(g, &p);
            let leaf2 = leaf_of(&gp).expect("orbit stays off Delta");
            let mut diff = F::zero();
            for i in 0..5 {
                diff = diff.max((leaf2.rep[i] - leaf.rep[i]).abs());
            }
            worst2 = worst2.max(diff);
            if diff > tol {
                pass2 = false;
            }
            dirs.push((0..5).map(|i| gp.rep[i] - p.rep[i]).collect());
        }
        // orbit directions span at least 2 dimensions
        let moved = linalg::rank_with_tol(&dirs, r(1e-7), r(1e-12));
        if moved < 2 {
            pass2 = false;
        }
    }
    items.push(ActionItem {
        name: "n_orbit_is_leaf".into(),
        passed: pass2,
        worst: worst2.as_f64(),
        samples,
    });

    // item 3
    let mut worst3 = F::zero();
    let mut pass3 = true;
    for _ in 0..samples {
        let p = random_chart_point::<F>(&mut rng);
        if p.on_lightcone_p0(r(1e-6)) {
            continue;
        }
        let g = make_t::<F>(r(rng.random_range(0.2..1.5)), r(rng.random_range(0.2..1.5)));
        let gp = act(&g, &p);
        let mut moved = F::zero();
        for i in 0..5 {
            moved = moved.max((gp.rep[i] - p.rep[i]).abs());
        }
        worst3 = worst3.max(moved);
        if moved <= tol {
            pass3 = false;
        }
        // same leaf
        let l1 = leaf_of(&p).unwrap();
        let l2 = leaf_of(&gp).unwrap();
        if !l1.approx_eq(&l2, r(1e-10)) {
            pass3 = false;
        }
    }
    items.push(ActionItem {
        name: "t_free_off_lightcone".into(),
        passed: pass3,
        worst: worst3.as_f64(),
        samples,
    });

    // item 4
    let mut worst4 = F::zero();
    let mut pass4 = true;
    for _ in 0..samples {
        let p = random_lightcone_point::<F>(&mut rng);
        let mut orbit = vec![p.rep];
        for _ in 0..3 {
            let g = make_t::<F>(r(rng.random_range(-1.5..1.5)), r(rng.random_range(-1.5..1.5)));
            orbit.push(act(&g, &p).rep);
        }
        // all representatives must lie in a single totally isotropic 2-plane
        let cols: Vec<Vec<F>> = orbit.iter().map(|v| v.to_vec()).collect();
        let dim = linalg::rank_with_tol(&cols, r(1e-10), r(1e-13));
        if dim > 2 {
            pass4 = false;
        }
        // and the plane is Q-isotropic
        for a in &orbit {
            for b in &orbit {
                worst4 = worst4.max(q23_pair(a, b).abs());
            }
        }
        if worst4 > r(1e-10) {
            pass4 = false;
        }
    }
    items.push(ActionItem {
        name: "t_orbits_on_lightcone_are_photons".into(),
        passed: pass4,
        worst: worst4.as_f64(),
        samples,
    });

    ActionReport { items, seed }
}

/// The affine form of N(x, y, z) on the chart R^{1,2}: linear part
/// [[1, -y, -y^2/2], [0, 1, y], [0, 0, 1]] plus translation (z, x, 0).
pub fn n_affine_on_chart<F: Real>(x: F, y: F, z: F, p: [F; 3]) -> [F; 3] {
    [
        p[0] - y * p[1] - y * y * r::<F>(0.5) * p[2] + z,
        p[1] + y * p[2] + x,
        p[2],
    ]
}
