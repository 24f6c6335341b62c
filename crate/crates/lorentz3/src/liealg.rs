//! Finite-dimensional Lie-algebra computations: structure constants with
//! Jacobi checks, the o(1,2) basis (E, H, F) and element typing by tr(u^2),
//! the 6-dimensional curvature module inside Hom(Lambda^2 R^3, o(1,2)) with
//! its O(1,2) action, and the algebraic Koszul connection and curvature of a
//! left-invariant Lorentz metric on a 3-dimensional Lie group.
//!
//! The Lorentz form on R^3 is fixed by the Gram matrix
//! J = [[0,0,1],[0,1,0],[1,0,0]] in a basis (e, h, f) of null / spacelike /
//! null vectors; o(1,2) is spanned by
//!
//!   E = [[0,1,0],[0,0,-1],[0,0,0]]   (parabolic)
//!   H = diag(1,0,-1)                 (hyperbolic)
//!   F = [[0,0,0],[1,0,0],[0,-1,0]]   (parabolic)
//!
//! with [H,E] = E, [H,F] = -F, [E,F] = H.

use std::fmt;

use crate::linalg;
use crate::scalar::{r, Real};

#[derive(Debug, Clone)]
pub enum LieAlgError<F> {
    /// Scalar product not of signature (-,+,+).
    Signature { counts: (usize, usize, usize) },
    /// Matrix is not J-antisymmetric (not in o(1,2)).
    NotInO12 { defect: F },
    /// Matrix is not in the 6-dimensional curvature module.
    NotInModule { defect: F },
}

impl<F: Real> fmt::Display for LieAlgError<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieAlgError::Signature { counts } => {
                write!(f, "scalar product has signature counts {counts:?}, want (1, 0, 2)")
            }
            LieAlgError::NotInO12 { defect } => {
                write!(f, "matrix not J-antisymmetric, defect {defect}")
            }
            LieAlgError::NotInModule { defect } => {
                write!(f, "matrix outside the curvature module, defect {defect}")
            }
        }
    }
}

impl<F: Real> std::error::Error for LieAlgError<F> {}

/// The Gram matrix J of the Lorentz form in the (e, h, f) basis.
pub fn gram_j<F: Real>() -> [[F; 3]; 3] {
    let o = F::one();
    let z = F::zero();
    [[z, z, o], [z, o, z], [o, z, z]]
}

/// A 3-dimensional Lie algebra given by structure constants
/// c[k][i][j] = coefficient of e_k in [e_i, e_j].
#[derive(Clone, Debug)]
pub struct LieAlgebra3<F> {
    pub c: [[[F; 3]; 3]; 3],
    pub label: String,
}

impl<F: Real> LieAlgebra3<F> {
    pub fn new(c: [[[F; 3]; 3]; 3], label: &str) -> Self {
        LieAlgebra3 { c, label: label.to_string() }
    }

    pub fn abelian() -> Self {
        Self::new([[[F::zero(); 3]; 3]; 3], "abelian")
    }

    /// heis: [X, Y] = Z in the basis (X, Y, Z).
    pub fn heisenberg() -> Self {
        let mut c = [[[F::zero(); 3]; 3]; 3];
        c[2][0][1] = F::one();
        c[2][1][0] = -F::one();
        Self::new(c, "heis")
    }

    /// sol: [T, Z] = Z, [T, X] = -X in the basis (T, X, Z).
    pub fn sol() -> Self {
        let mut c = [[[F::zero(); 3]; 3]; 3];
        c[2][0][2] = F::one();
        c[2][2][0] = -F::one();
        c[1][0][1] = -F::one();
        c[1][1][0] = F::one();
        Self::new(c, "sol")
    }

    /// sl(2,R): [h, e] = 2e, [h, f] = -2f, [e, f] = h in the basis (e, h, f).
    pub fn sl2() -> Self {
        let mut c = [[[F::zero(); 3]; 3]; 3];
        let two = r::<F>(2.0);
        // basis order (e, h, f) = indices (0, 1, 2)
        c[0][1][0] = two;
        c[0][0][1] = -two;
        c[2][1][2] = -two;
        c[2][2][1] = two;
        c[1][0][2] = F::one();
        c[1][2][0] = -F::one();
        Self::new(c, "sl2")
    }

    pub fn bracket(&self, x: &[F; 3], y: &[F; 3]) -> [F; 3] {
        let mut out = [F::zero(); 3];
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    out[k] = out[k] + self.c[k][i][j] * x[i] * y[j];
                }
            }
        }
        out
    }

    /// ad_u as a matrix: (ad_u)^k_j = sum_i c[k][i][j] u^i.
    pub fn ad(&self, u: &[F; 3]) -> [[F; 3]; 3] {
        let mut m = [[F::zero(); 3]; 3];
        for k in 0..3 {
            for j in 0..3 {
                for i in 0..3 {
                    m[k][j] = m[k][j] + self.c[k][i][j] * u[i];
                }
            }
        }
        m
    }

    /// Max Jacobi-identity violation over basis triples.
    pub fn jacobi_defect(&self) -> F {
        let basis = |i: usize| {
            let mut v = [F::zero(); 3];
            v[i] = F::one();
            v
        };
        let mut worst = F::zero();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let a = self.bracket(&basis(i), &self.bracket(&basis(j), &basis(k)));
                    let b = self.bracket(&basis(j), &self.bracket(&basis(k), &basis(i)));
                    let c = self.bracket(&basis(k), &self.bracket(&basis(i), &basis(j)));
                    for l in 0..3 {
                        worst = worst.max((a[l] + b[l] + c[l]).abs());
                    }
                }
            }
        }
        worst
    }
}

/// An n-dimensional Lie algebra by structure constants, for the catalog
/// extensions beyond dimension 3 (e.g. the 4-dimensional Killing algebra of
/// the Lorentz-Sol metric).
#[derive(Clone, Debug)]
pub struct LieAlgebraDyn<F> {
    pub dim: usize,
    /// c[(k*dim + i)*dim + j] = coefficient of e_k in [e_i, e_j]
    pub c: Vec<F>,
    pub label: String,
}

impl<F: Real> LieAlgebraDyn<F> {
    pub fn new(dim: usize, label: &str) -> Self {
        LieAlgebraDyn { dim, c: vec![F::zero(); dim * dim * dim], label: label.to_string() }
    }

    pub fn set_bracket(&mut self, i: usize, j: usize, coeffs: &[(usize, F)]) {
        let d = self.dim;
        for &(k, v) in coeffs {
            self.c[(k * d + i) * d + j] = v;
            self.c[(k * d + j) * d + i] = -v;
        }
    }

    pub fn bracket(&self, x: &[F], y: &[F]) -> Vec<F> {
        let d = self.dim;
        let mut out = vec![F::zero(); d];
        for k in 0..d {
            for i in 0..d {
                for j in 0..d {
                    out[k] = out[k] + self.c[(k * d + i) * d + j] * x[i] * y[j];
                }
            }
        }
        out
    }

    pub fn jacobi_defect(&self) -> F {
        let d = self.dim;
        let basis = |i: usize| {
            let mut v = vec![F::zero(); d];
            v[i] = F::one();
            v
        };
        let mut worst = F::zero();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let a = self.bracket(&basis(i), &self.bracket(&basis(j), &basis(k)));
                    let b = self.bracket(&basis(j), &self.bracket(&basis(k), &basis(i)));
                    let c = self.bracket(&basis(k), &self.bracket(&basis(i), &basis(j)));
                    for l in 0..d {
                        worst = worst.max((a[l] + b[l] + c[l]).abs());
                    }
                }
            }
        }
        worst
    }

    /// ad_u on the algebra, row-major dim x dim.
    pub fn ad(&self, u: &[F]) -> Vec<F> {
        let d = self.dim;
        let mut m = vec![F::zero(); d * d];
        for k in 0..d {
            for j in 0..d {
                for i in 0..d {
                    m[k * d + j] = m[k * d + j] + self.c[(k * d + i) * d + j] * u[i];
                }
            }
        }
        m
    }
}

/// True iff (ad_u)^3 vanishes (Frobenius norm below 1e-9, relative to the
/// cube of the ad_u scale).
pub fn nilpotency_certificate<F: Real>(alg: &LieAlgebraDyn<F>, u: &[F]) -> bool {
    let d = alg.dim;
    let m = alg.ad(u);
    let mul = |a: &[F], b: &[F]| {
        let mut c = vec![F::zero(); d * d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    c[i * d + j] = c[i * d + j] + a[i * d + k] * b[k * d + j];
                }
            }
        }
        c
    };
    let m3 = mul(&mul(&m, &m), &m);
    let fro = |a: &[F]| a.iter().fold(F::zero(), |acc, x| acc + *x * *x).sqrt();
    let scale = fro(&m).max(F::one());
    fro(&m3) < r::<F>(1e-9) * scale * scale * scale
}

/// A Lorentz scalar product on a 3-dimensional Lie algebra.
#[derive(Clone, Debug)]
pub struct ScalarProduct3<F> {
    pub gram: [[F; 3]; 3],
}

impl<F: Real> ScalarProduct3<F> {
    pub fn new(gram: [[F; 3]; 3]) -> Result<Self, LieAlgError<F>> {
        let flat: Vec<F> = gram.iter().flatten().copied().collect();
        let counts = linalg::signature_dyn(3, &flat, r(1e-12));
        if counts != (1, 0, 2) {
            return Err(LieAlgError::Signature { counts });
        }
        Ok(ScalarProduct3 { gram })
    }

    pub fn pair(&self, x: &[F; 3], y: &[F; 3]) -> F {
        let mut s = F::zero();
        for i in 0..3 {
            for j in 0..3 {
                s = s + self.gram[i][j] * x[i] * y[j];
            }
        }
        s
    }
}

/// Defect of ad_u-invariance of the product:
/// max over basis pairs of |<ad_u x, y> + <x, ad_u y>|.
pub fn ad_invariance_defect<F: Real>(
    alg: &LieAlgebra3<F>,
    sp: &ScalarProduct3<F>,
    u: &[F; 3],
) -> F {
    let ad = alg.ad(u);
    let basis = |i: usize| {
        let mut v = [F::zero(); 3];
        v[i] = F::one();
        v
    };
    let mut worst = F::zero();
    for i in 0..3 {
        for j in 0..3 {
            let adx = linalg::mat3_vec(&ad, &basis(i));
            let ady = linalg::mat3_vec(&ad, &basis(j));
            worst = worst.max((sp.pair(&adx, &basis(j)) + sp.pair(&basis(i), &ady)).abs());
        }
    }
    worst
}

// ---------------------------------------------------------------------------
// o(1,2)
// ---------------------------------------------------------------------------

pub fn basis_e<F: Real>() -> [[F; 3]; 3] {
    let o = F::one();
    let z = F::zero();
    [[z, o, z], [z, z, -o], [z, z, z]]
}

pub fn basis_h<F: Real>() -> [[F; 3]; 3] {
    let o = F::one();
    let z = F::zero();
    [[o, z, z], [z, z, z], [z, z, -o]]
}

pub fn basis_f<F: Real>() -> [[F; 3]; 3] {
    let o = F::one();
    let z = F::zero();
    [[z, z, z], [o, z, z], [z, -o, z]]
}

/// Type of a 1-parameter subgroup generator of O(1,2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementType {
    Zero,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

/// An element of o(1,2) in coordinates (a, b, c) along the basis (E, H, F).
#[derive(Clone, Copy, Debug)]
pub struct O12Element<F> {
    pub coeffs: [F; 3],
}

impl<F: Real> O12Element<F> {
    pub fn new(a: F, b: F, c: F) -> Self {
        O12Element { coeffs: [a, b, c] }
    }

    pub fn e() -> Self {
        Self::new(F::one(), F::zero(), F::zero())
    }

    pub fn h() -> Self {
        Self::new(F::zero(), F::one(), F::zero())
    }

    pub fn f() -> Self {
        Self::new(F::zero(), F::zero(), F::one())
    }

    /// Realized 3x3 matrix aE + bH + cF.
    pub fn matrix(&self) -> [[F; 3]; 3] {
        let [a, b, c] = self.coeffs;
        let mut m = [[F::zero(); 3]; 3];
        let e = basis_e::<F>();
        let h = basis_h::<F>();
        let f = basis_f::<F>();
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = a * e[i][j] + b * h[i][j] + c * f[i][j];
            }
        }
        m
    }

    /// Recover (E, H, F) coordinates from a J-antisymmetric matrix.
    pub fn from_matrix(m: &[[F; 3]; 3]) -> Result<Self, LieAlgError<F>> {
        let j = gram_j::<F>();
        let mt = linalg::mat3_transpose(m);
        let defect_m = {
            let a = linalg::mat3_mul(&mt, &j);
            let b = linalg::mat3_mul(&j, m);
            let mut worst = F::zero();
            for i in 0..3 {
                for k in 0..3 {
                    worst = worst.max((a[i][k] + b[i][k]).abs());
                }
            }
            worst
        };
        let scale = linalg::max_abs(m.iter().flatten().copied()).max(F::one());
        if defect_m > r::<F>(1e-10) * scale {
            return Err(LieAlgError::NotInO12 { defect: defect_m });
        }
        Ok(Self::new(m[0][1], m[0][0], m[1][0]))
    }

    pub fn norm2(&self) -> F {
        let [a, b, c] = self.coeffs;
        a * a + b * b + c * c
    }

    /// tr(rho(u)^2) = 2 b^2 + 4 a c; the sign decides the element type.
    pub fn trace_square(&self) -> F {
        let [a, b, c] = self.coeffs;
        r::<F>(2.0) * b * b + r::<F>(4.0) * a * c
    }

    /// Type with certificate q = tr(rho(u)^2): zero iff |u| = 0, parabolic
    /// iff |q| < tol |u|^2, hyperbolic iff q > 0, elliptic iff q < 0.
    pub fn element_type(&self, tol: F) -> (ElementType, F) {
        let q = self.trace_square();
        let n2 = self.norm2();
        if n2 == F::zero() {
            return (ElementType::Zero, q);
        }
        if q.abs() < tol * n2 {
            (ElementType::Parabolic, q)
        } else if q > F::zero() {
            (ElementType::Hyperbolic, q)
        } else {
            (ElementType::Elliptic, q)
        }
    }
}

/// Default parabolic-detection tolerance: |q| < 1e-10 |u|^2.
pub fn default_parabolic_tol<F: Real>() -> F {
    r(1e-10)
}

/// Bracket in o(1,2) in (E, H, F) coordinates.
pub fn o12_bracket<F: Real>(u: &O12Element<F>, v: &O12Element<F>) -> O12Element<F> {
    let [ae, ah, af] = u.coeffs;
    let [be, bh, bf] = v.coeffs;
    // [H,E] = E, [H,F] = -F, [E,F] = H
    O12Element::new(ah * be - ae * bh, ae * bf - af * be, af * bh - ah * bf)
}

// ---------------------------------------------------------------------------
// The curvature module
// ---------------------------------------------------------------------------

/// An element of Hom(Lambda^2 R^3, o(1,2)) as a 3x3 matrix: columns indexed
/// by (e^h, e^f, h^f), rows by (E, H, F). The curvature module is the
/// 6-dimensional submodule spanned by the identity (kappa_0) and five
/// trace-free matrices; O(1,2) acts by conjugation.
#[derive(Clone, Copy, Debug)]
pub struct CurvModElement<F> {
    pub m: [[F; 3]; 3],
}

impl<F: Real> CurvModElement<F> {
    pub fn new(m: [[F; 3]; 3]) -> Self {
        CurvModElement { m }
    }

    /// The scalar generator: the identity matrix (constant sectional
    /// curvature direction).
    pub fn kappa0() -> Self {
        let mut m = [[F::zero(); 3]; 3];
        for i in 0..3 {
            m[i][i] = F::one();
        }
        CurvModElement { m }
    }

    /// The single-corner matrix e_{13}: the weight vector fixed by e^{tE}.
    pub fn kappa1() -> Self {
        let mut m = [[F::zero(); 3]; 3];
        m[0][2] = F::one();
        CurvModElement { m }
    }

    /// Basis of the 5-dimensional trace-free irreducible submodule.
    pub fn five_dim_basis() -> [Self; 5] {
        let o = F::one();
        let z = F::zero();
        [
            CurvModElement::new([[z, z, o], [z, z, z], [z, z, z]]),
            CurvModElement::new([[z, o, z], [z, z, o], [z, z, z]]),
            CurvModElement::new([[o, z, z], [z, -r::<F>(2.0), z], [z, z, o]]),
            CurvModElement::new([[z, z, z], [o, z, z], [z, o, z]]),
            CurvModElement::new([[z, z, z], [z, z, z], [o, z, z]]),
        ]
    }

    /// Basis (kappa_0, five trace-free generators) of the full module.
    pub fn module_basis() -> [Self; 6] {
        let five = Self::five_dim_basis();
        [Self::kappa0(), five[0], five[1], five[2], five[3], five[4]]
    }

    /// Coordinates along `module_basis`; the basis is Frobenius-orthogonal.
    /// Errors if the matrix is not in the module.
    pub fn to_coords(&self) -> Result<[F; 6], LieAlgError<F>> {
        let basis = Self::module_basis();
        let dot = |a: &[[F; 3]; 3], b: &[[F; 3]; 3]| {
            let mut s = F::zero();
            for i in 0..3 {
                for j in 0..3 {
                    s = s + a[i][j] * b[i][j];
                }
            }
            s
        };
        let mut coords = [F::zero(); 6];
        for (k, b) in basis.iter().enumerate() {
            coords[k] = dot(&self.m, &b.m) / dot(&b.m, &b.m);
        }
        let recon = Self::from_coords(&coords);
        let mut defect = F::zero();
        for i in 0..3 {
            for j in 0..3 {
                defect = defect.max((recon.m[i][j] - self.m[i][j]).abs());
            }
        }
        let scale = linalg::max_abs(self.m.iter().flatten().copied()).max(F::one());
        if defect > r::<F>(1e-10) * scale {
            return Err(LieAlgError::NotInModule { defect });
        }
        Ok(coords)
    }

    pub fn from_coords(coords: &[F; 6]) -> Self {
        let basis = Self::module_basis();
        let mut m = [[F::zero(); 3]; 3];
        for (k, b) in basis.iter().enumerate() {
            for i in 0..3 {
                for j in 0..3 {
                    m[i][j] = m[i][j] + coords[k] * b.m[i][j];
                }
            }
        }
        CurvModElement { m }
    }

    /// Split into the scalar part sigma kappa_0 and the trace-free rest.
    pub fn decompose(&self) -> (F, Self) {
        let sigma = (self.m[0][0] + self.m[1][1] + self.m[2][2]) / r(3.0);
        let mut rest = self.m;
        for i in 0..3 {
            rest[i][i] = rest[i][i] - sigma;
        }
        (sigma, CurvModElement { m: rest })
    }

    pub fn max_abs(&self) -> F {
        linalg::max_abs(self.m.iter().flatten().copied())
    }
}

/// Infinitesimal module action: u . k = [rho(u), k].
pub fn module_action<F: Real>(u: &O12Element<F>, k: &CurvModElement<F>) -> CurvModElement<F> {
    let um = u.matrix();
    let a = linalg::mat3_mul(&um, &k.m);
    let b = linalg::mat3_mul(&k.m, &um);
    let mut m = [[F::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = a[i][j] - b[i][j];
        }
    }
    CurvModElement { m }
}

/// Group action of g in O(1,2): g . k = g k g^{-1}, with g^{-1} = J g^T J.
pub fn group_action<F: Real>(g: &[[F; 3]; 3], k: &CurvModElement<F>) -> CurvModElement<F> {
    let j = gram_j::<F>();
    let ginv = linalg::mat3_mul(&linalg::mat3_mul(&j, &linalg::mat3_transpose(g)), &j);
    CurvModElement { m: linalg::mat3_mul(g, &linalg::mat3_mul(&k.m, &ginv)) }
}

/// Matrix exponential of rho(u) by scaling and squaring with a Taylor core.
pub fn o12_exp<F: Real>(u: &O12Element<F>) -> [[F; 3]; 3] {
    let m = u.matrix();
    let norm = linalg::max_abs(m.iter().flatten().copied());
    let mut scalings = 0u32;
    let mut scale = F::one();
    while norm * scale > r(0.25) {
        scale = scale * r(0.5);
        scalings += 1;
    }
    let scaled = {
        let mut s = m;
        for row in s.iter_mut() {
            for x in row.iter_mut() {
                *x = *x * scale;
            }
        }
        s
    };
    let mut result = [[F::zero(); 3]; 3];
    for i in 0..3 {
        result[i][i] = F::one();
    }
    // term = scaled^k / k!
    let mut term = result;
    for k in 1..=16 {
        term = linalg::mat3_mul(&term, &scaled);
        let inv_k = F::one() / F::of_int(k as i64);
        for i in 0..3 {
            for j in 0..3 {
                term[i][j] = term[i][j] * inv_k;
                result[i][j] = result[i][j] + term[i][j];
            }
        }
    }
    for _ in 0..scalings {
        result = linalg::mat3_mul(&result, &result);
    }
    result
}

/// Basis of the joint kernel of the generators' action on the curvature
/// module: vectors annihilated by every generator within 1e-10.
pub fn fixed_subspace<F: Real>(generators: &[O12Element<F>]) -> Vec<CurvModElement<F>> {
    let basis = CurvModElement::<F>::module_basis();
    if generators.is_empty() {
        return basis.to_vec();
    }
    // columns indexed by module coordinates, rows stack all generators' images
    let mut columns: Vec<Vec<F>> = vec![Vec::new(); 6];
    for (bi, b) in basis.iter().enumerate() {
        for g in generators {
            let img = module_action(g, b);
            let coords = img.to_coords().expect("module closed under action");
            columns[bi].extend_from_slice(&coords);
        }
    }
    let kernel = linalg::nullspace(&columns, r(1e-10), r(1e-13));
    kernel
        .into_iter()
        .map(|v| {
            let mut coords = [F::zero(); 6];
            coords.copy_from_slice(&v);
            CurvModElement::from_coords(&coords)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Koszul connection and curvature of left-invariant metrics
// ---------------------------------------------------------------------------

/// Connection table nabla_{e_i} e_j of the Levi-Civita connection of a
/// left-invariant metric, from the algebraic Koszul formula
/// 2 <nabla_X Y, Z> = <[X,Y], Z> - <[Y,Z], X> + <[Z,X], Y>.
pub fn koszul_connection<F: Real>(
    alg: &LieAlgebra3<F>,
    sp: &ScalarProduct3<F>,
) -> [[[F; 3]; 3]; 3] {
    let ginv = linalg::mat3_inv(&sp.gram);
    let basis = |i: usize| {
        let mut v = [F::zero(); 3];
        v[i] = F::one();
        v
    };
    let mut nabla = [[[F::zero(); 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            // rhs_k = <nabla_{e_i} e_j, e_k>
            let mut rhs = [F::zero(); 3];
            for (k, slot) in rhs.iter_mut().enumerate() {
                let bij = alg.bracket(&basis(i), &basis(j));
                let bjk = alg.bracket(&basis(j), &basis(k));
                let bki = alg.bracket(&basis(k), &basis(i));
                *slot = (sp.pair(&bij, &basis(k)) - sp.pair(&bjk, &basis(i))
                    + sp.pair(&bki, &basis(j)))
                    * r(0.5);
            }
            nabla[i][j] = linalg::mat3_vec(&ginv, &rhs);
        }
    }
    nabla
}

/// Curvature data of a left-invariant metric, from the connection table.
pub struct LeftInvCurvature<F> {
    pub alg: LieAlgebra3<F>,
    pub sp: ScalarProduct3<F>,
    pub nabla: [[[F; 3]; 3]; 3],
    /// riem[l][i][j][k]: R(e_i, e_j) e_k = riem[l][i][j][k] e_l
    pub riem: [[[[F; 3]; 3]; 3]; 3],
    pub ricci: [[F; 3]; 3],
    pub scalar: F,
}

pub fn left_invariant_curvature<F: Real>(
    alg: &LieAlgebra3<F>,
    sp: &ScalarProduct3<F>,
) -> LeftInvCurvature<F> {
    let nabla = koszul_connection(alg, sp);
    let nabla_vec = |x: &[F; 3], y: &[F; 3]| {
        // bilinear extension of the table
        let mut out = [F::zero(); 3];
        for i in 0..3 {
            for j in 0..3 {
                for l in 0..3 {
                    out[l] = out[l] + x[i] * y[j] * nabla[i][j][l];
                }
            }
        }
        out
    };
    let basis = |i: usize| {
        let mut v = [F::zero(); 3];
        v[i] = F::one();
        v
    };
    let mut riem = [[[[F::zero(); 3]; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let a = nabla_vec(&basis(i), &nabla_vec(&basis(j), &basis(k)));
                let b = nabla_vec(&basis(j), &nabla_vec(&basis(i), &basis(k)));
                let br = alg.bracket(&basis(i), &basis(j));
                let c = nabla_vec(&br, &basis(k));
                for l in 0..3 {
                    riem[l][i][j][k] = a[l] - b[l] - c[l];
                }
            }
        }
    }
    // Ric_{ij} = trace of Z -> R(Z, e_i) e_j
    let mut ricci = [[F::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut s = F::zero();
            for k in 0..3 {
                s = s + riem[k][k][i][j];
            }
            ricci[i][j] = s;
        }
    }
    let ginv = linalg::mat3_inv(&sp.gram);
    let mut scalar = F::zero();
    for i in 0..3 {
        for j in 0..3 {
            scalar = scalar + ginv[i][j] * ricci[i][j];
        }
    }
    LeftInvCurvature { alg: alg.clone(), sp: sp.clone(), nabla, riem, ricci, scalar }
}

impl<F: Real> LeftInvCurvature<F> {
    /// Lowered curvature <R(x,y)z, w>.
    pub fn lowered(&self, x: &[F; 3], y: &[F; 3], z: &[F; 3], w: &[F; 3]) -> F {
        let mut rz = [F::zero(); 3];
        for l in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        rz[l] = rz[l] + self.riem[l][i][j][k] * x[i] * y[j] * z[k];
                    }
                }
            }
        }
        self.sp.pair(&rz, w)
    }

    /// Sectional curvature of the plane spanned by x, y; errors on a
    /// degenerate plane.
    pub fn sectional(&self, x: &[F; 3], y: &[F; 3]) -> Option<F> {
        let disc = self.sp.pair(x, x) * self.sp.pair(y, y)
            - self.sp.pair(x, y) * self.sp.pair(x, y);
        let scale = linalg::max_abs(x.iter().chain(y.iter()).copied()).max(F::one());
        if disc.abs() <= r::<F>(1e-10) * scale.powi(4) {
            return None;
        }
        Some(self.lowered(x, y, y, x) / disc)
    }

    /// Metric-compatibility and torsion defects of the connection table.
    pub fn connection_defects(&self) -> (F, F) {
        let basis = |i: usize| {
            let mut v = [F::zero(); 3];
            v[i] = F::one();
            v
        };
        let mut compat = F::zero();
        let mut torsion = F::zero();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let nij = self.nabla[i][j];
                    let nik = self.nabla[i][k];
                    compat = compat
                        .max((self.sp.pair(&nij, &basis(k)) + self.sp.pair(&basis(j), &nik)).abs());
                }
                let mut t = [F::zero(); 3];
                let br = self.alg.bracket(&basis(i), &basis(j));
                for l in 0..3 {
                    t[l] = self.nabla[i][j][l] - self.nabla[j][i][l] - br[l];
                }
                torsion = torsion.max(linalg::max_abs(t));
            }
        }
        (compat, torsion)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn o12_bracket_table_exact() {
        let e = basis_e::<f64>();
        let h = basis_h::<f64>();
        let f = basis_f::<f64>();
        let comm = |a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]| {
            let ab = linalg::mat3_mul(a, b);
            let ba = linalg::mat3_mul(b, a);
            let mut c = [[0.0; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    c[i][j] = ab[i][j] - ba[i][j];
                }
            }
            c
        };
        assert_eq!(comm(&h, &e), e);
        let mf = comm(&h, &f);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(mf[i][j], -f[i][j]);
            }
        }
        assert_eq!(comm(&e, &f), h);
        // all three are J-antisymmetric, exactly
        for m in [&e, &h, &f] {
            let u = O12Element::from_matrix(m).unwrap();
            let back = u.matrix();
            assert_eq!(&back, m);
        }
    }

    #[test]
    fn element_types_of_catalog() {
        let tol = default_parabolic_tol::<f64>();
        let (te, qe) = O12Element::<f64>::e().element_type(tol);
        assert_eq!(te, ElementType::Parabolic);
        assert_eq!(qe, 0.0);
        let (th, qh) = O12Element::<f64>::h().element_type(tol);
        assert_eq!(th, ElementType::Hyperbolic);
        assert_eq!(qh, 2.0);
        let emf = O12Element::new(1.0, 0.0, -1.0);
        let (t, q) = emf.element_type(tol);
        assert_eq!(t, ElementType::Elliptic);
        assert_eq!(q, -4.0);
        let (tz, _) = O12Element::<f64>::new(0.0, 0.0, 0.0).element_type(tol);
        assert_eq!(tz, ElementType::Zero);
    }

    #[test]
    fn element_type_conjugation_invariant() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let tol = default_parabolic_tol::<f64>();
        for _ in 0..100 {
            let u = O12Element::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            );
            let w = O12Element::new(
                rng.random_range(-0.8..0.8),
                rng.random_range(-0.8..0.8),
                rng.random_range(-0.8..0.8),
            );
            let g = o12_exp(&w);
            // Ad_g u = g rho(u) g^{-1}
            let j = gram_j::<f64>();
            let ginv = linalg::mat3_mul(&linalg::mat3_mul(&j, &linalg::mat3_transpose(&g)), &j);
            let adu = linalg::mat3_mul(&g, &linalg::mat3_mul(&u.matrix(), &ginv));
            let u2 = O12Element::from_matrix(&adu).unwrap();
            let (t1, _) = u.element_type(tol);
            let (t2, _) = u2.element_type(tol);
            assert_eq!(t1, t2);
        }
    }

    #[test]
    fn module_action_examples() {
        // kappa_0 is invariant
        let k0 = CurvModElement::<f64>::kappa0();
        for u in [O12Element::e(), O12Element::h(), O12Element::f()] {
            assert!(module_action(&u, &k0).max_abs() < 1e-15);
        }
        // E fixes kappa_1
        let k1 = CurvModElement::<f64>::kappa1();
        assert!(module_action(&O12Element::e(), &k1).max_abs() < 1e-15);
        // H scales kappa_1 (weight vector): [H, e13] = 2 e13
        let hk1 = module_action(&O12Element::h(), &k1);
        assert!((hk1.m[0][2] - 2.0).abs() < 1e-15);
        let (_, rest) = hk1.decompose();
        assert!((rest.m[0][2] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn module_action_is_lie_action() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let u = O12Element::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            );
            let v = O12Element::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            );
            let mut coords = [0.0f64; 6];
            for c in coords.iter_mut() {
                *c = rng.random_range(-1.0..1.0);
            }
            let k = CurvModElement::from_coords(&coords);
            let lhs = module_action(&o12_bracket(&u, &v), &k);
            let a = module_action(&u, &module_action(&v, &k));
            let b = module_action(&v, &module_action(&u, &k));
            for i in 0..3 {
                for j in 0..3 {
                    assert!((lhs.m[i][j] - (a.m[i][j] - b.m[i][j])).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn fixed_subspaces() {
        // {E}: dimension 2, spanned by kappa_0 and kappa_1
        let fixed_e = fixed_subspace(&[O12Element::<f64>::e()]);
        assert_eq!(fixed_e.len(), 2);
        for v in &fixed_e {
            // must be a combination of kappa_0 and kappa_1: zero outside
            // the diagonal and the (0,2) corner, equal diagonal entries
            assert!((v.m[0][0] - v.m[1][1]).abs() < 1e-10);
            assert!((v.m[0][0] - v.m[2][2]).abs() < 1e-10);
            for (i, j) in [(0, 1), (1, 0), (1, 2), (2, 0), (2, 1)] {
                assert!(v.m[i][j].abs() < 1e-10);
            }
        }
        // {E, H, F}: only the scalars
        let fixed_all =
            fixed_subspace(&[O12Element::<f64>::e(), O12Element::h(), O12Element::f()]);
        assert_eq!(fixed_all.len(), 1);
        let (sigma, rest) = fixed_all[0].decompose();
        assert!(sigma.abs() > 1e-3);
        assert!(rest.max_abs() < 1e-10);
        // {}: the whole 6-dimensional module
        assert_eq!(fixed_subspace::<f64>(&[]).len(), 6);
    }

    #[test]
    fn decompose_examples() {
        let id = CurvModElement::<f64>::kappa0();
        let (s, rest) = id.decompose();
        assert_eq!(s, 1.0);
        assert!(rest.max_abs() < 1e-15);
        let k1 = CurvModElement::<f64>::kappa1();
        let (s1, r1) = k1.decompose();
        assert_eq!(s1, 0.0);
        assert!((r1.m[0][2] - 1.0).abs() < 1e-15);
        // kappa_0 + 2 kappa_1 -> (1, 2 kappa_1)
        let mut m = CurvModElement::<f64>::kappa0().m;
        m[0][2] += 2.0;
        let (s2, r2) = CurvModElement::new(m).decompose();
        assert!((s2 - 1.0).abs() < 1e-15);
        assert!((r2.m[0][2] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn jacobi_for_catalog_algebras() {
        assert_eq!(LieAlgebra3::<f64>::heisenberg().jacobi_defect(), 0.0);
        assert_eq!(LieAlgebra3::<f64>::sol().jacobi_defect(), 0.0);
        assert_eq!(LieAlgebra3::<f64>::sl2().jacobi_defect(), 0.0);
        assert_eq!(LieAlgebra3::<f64>::abelian().jacobi_defect(), 0.0);
    }

    #[test]
    fn koszul_lorentz_heisenberg_table() {
        // basis (U, V, W), [U, V] = W, <U, V> = <W, W> = 1
        let alg = LieAlgebra3::<f64>::heisenberg();
        let sp = ScalarProduct3::new([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
            .unwrap();
        let nabla = koszul_connection(&alg, &sp);
        // hand-derived oracle
        let expect = |i: usize, j: usize| -> [f64; 3] {
            match (i, j) {
                (0, 1) => [0.0, 0.0, 0.5],   // nabla_U V = W/2
                (1, 0) => [0.0, 0.0, -0.5],  // nabla_V U = -W/2
                (0, 2) => [-0.5, 0.0, 0.0],  // nabla_U W = -U/2
                (2, 0) => [-0.5, 0.0, 0.0],
                (1, 2) => [0.0, 0.5, 0.0],   // nabla_V W = V/2
                (2, 1) => [0.0, 0.5, 0.0],
                _ => [0.0, 0.0, 0.0],
            }
        };
        for i in 0..3 {
            for j in 0..3 {
                let want = expect(i, j);
                for l in 0..3 {
                    assert!(
                        (nabla[i][j][l] - want[l]).abs() < 1e-14,
                        "nabla[{i}][{j}][{l}] = {}",
                        nabla[i][j][l]
                    );
                }
            }
        }
        let curv = left_invariant_curvature(&alg, &sp);
        assert!((curv.scalar - 0.5).abs() < 1e-13, "scalar = {}", curv.scalar);
        let (compat, torsion) = curv.connection_defects();
        assert!(compat < 1e-13 && torsion < 1e-13);
    }

    #[test]
    fn abelian_curvature_vanishes() {
        let alg = LieAlgebra3::<f64>::abelian();
        let sp = ScalarProduct3::new([[-1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
            .unwrap();
        let curv = left_invariant_curvature(&alg, &sp);
        assert_eq!(curv.scalar, 0.0);
        for l in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        assert_eq!(curv.riem[l][i][j][k], 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn nilpotency_heis_and_sol() {
        let heis = {
            let mut a = LieAlgebraDyn::<f64>::new(3, "heis");
            a.set_bracket(0, 1, &[(2, 1.0)]);
            a
        };
        assert!(nilpotency_certificate(&heis, &[1.0, 0.3, -0.7]));
        let sol = {
            let mut a = LieAlgebraDyn::<f64>::new(3, "sol");
            a.set_bracket(0, 2, &[(2, 1.0)]); // [T, Z] = Z
            a.set_bracket(0, 1, &[(1, -1.0)]); // [T, X] = -X
            a
        };
        assert!(!nilpotency_certificate(&sol, &[1.0, 0.0, 0.0]));
    }
}
