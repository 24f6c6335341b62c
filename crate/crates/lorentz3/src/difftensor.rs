//! Chart-based Lorentz tensor calculus on coordinate boxes of R^3.
//!
//! Metric components are expression trees ([`Expr`]); every curvature object
//! is assembled from their truncated Taylor jets, so derivatives through
//! total order 4 are exact on the trig-polynomial coefficients used by the
//! model catalog. Curvature conventions:
//!
//!   R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_{[X,Y]} Z
//!   Ric(X,Y) = tr(Z -> R(Z,X)Y),   sigma = g^{ij} Ric_{ij}
//!   W(i,j,k,l) = g(R(d_i, d_j) d_k, d_l)
//!
//! Finite differences appear only in the cross-check operation; jets are the
//! derivative engine.

use std::fmt;

use crate::expr::{Expr, VectorFieldExpr};
use crate::jet::Jet4;
use crate::linalg;
use crate::scalar::{r, Real};

#[derive(Debug, Clone)]
pub enum DiffError<F> {
    /// Gram matrix degenerate or not of signature (-,+,+) at the point.
    SignatureFailure {
        point: [F; 3],
        det: F,
        counts: (usize, usize, usize),
    },
    /// The two given tangent vectors span a degenerate (lightlike) plane.
    DegeneratePlane { point: [F; 3], discriminant: F },
    /// Evaluation produced a non-finite value.
    NonFinite { point: [F; 3] },
}

impl<F: Real> fmt::Display for DiffError<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiffError::SignatureFailure { point, det, counts } => write!(
                f,
                "metric degenerate or wrong signature at ({}, {}, {}): det = {}, (neg, zero, pos) = {:?}",
                point[0], point[1], point[2], det, counts
            ),
            DiffError::DegeneratePlane { point, discriminant } => write!(
                f,
                "lightlike (degenerate) tangent plane at ({}, {}, {}): discriminant = {}",
                point[0], point[1], point[2], discriminant
            ),
            DiffError::NonFinite { point } => write!(
                f,
                "non-finite evaluation at ({}, {}, {})",
                point[0], point[1], point[2]
            ),
        }
    }
}

impl<F: Real> std::error::Error for DiffError<F> {}

/// A Lorentz metric on a coordinate box, components as expression trees.
#[derive(Clone, Debug)]
pub struct ChartMetric<F> {
    /// Upper-triangle components in the order g11, g12, g13, g22, g23, g33.
    pub comps: [Expr<F>; 6],
    /// Closed coordinate box, one (lo, hi) pair per axis.
    pub domain: [[F; 2]; 3],
    pub label: String,
}

const UPPER: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

impl<F: Real> ChartMetric<F> {
    pub fn new(comps: [Expr<F>; 6], domain: [[F; 2]; 3], label: &str) -> Self {
        ChartMetric { comps, domain, label: label.to_string() }
    }

    pub fn default_domain() -> [[F; 2]; 3] {
        [[-F::one(), F::one()]; 3]
    }

    pub fn component(&self, i: usize, j: usize) -> &Expr<F> {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        let k = UPPER.iter().position(|&(p, q)| (p, q) == (a, b)).unwrap();
        &self.comps[k]
    }

    pub fn contains(&self, p: [F; 3]) -> bool {
        (0..3).all(|i| p[i] >= self.domain[i][0] && p[i] <= self.domain[i][1])
    }

    /// Regular grid with n points per axis, endpoints included.
    pub fn grid(&self, n: usize) -> Vec<[F; 3]> {
        let mut pts = Vec::with_capacity(n * n * n);
        let coords: Vec<Vec<F>> = (0..3)
            .map(|i| {
                (0..n)
                    .map(|k| {
                        let t = if n > 1 {
                            F::of_int(k as i64) / F::of_int((n - 1) as i64)
                        } else {
                            r(0.5)
                        };
                        self.domain[i][0] + (self.domain[i][1] - self.domain[i][0]) * t
                    })
                    .collect()
            })
            .collect();
        for &x in &coords[0] {
            for &y in &coords[1] {
                for &z in &coords[2] {
                    pts.push([x, y, z]);
                }
            }
        }
        pts
    }

    pub fn gram(&self, p: [F; 3]) -> [[F; 3]; 3] {
        let mut g = [[F::zero(); 3]; 3];
        for (k, &(i, j)) in UPPER.iter().enumerate() {
            let v = self.comps[k].eval(p);
            g[i][j] = v;
            g[j][i] = v;
        }
        g
    }

    pub fn gram_jet(&self, p: [F; 3]) -> [[Jet4<F>; 3]; 3] {
        let mut g = [[Jet4::zero(); 3]; 3];
        for (k, &(i, j)) in UPPER.iter().enumerate() {
            let v = self.comps[k].jet(p);
            g[i][j] = v;
            g[j][i] = v;
        }
        g
    }

    /// Largest |component| at the point, used to scale degeneracy thresholds.
    pub fn component_scale(&self, p: [F; 3]) -> F {
        let g = self.gram(p);
        linalg::max_abs(g.iter().flatten().copied()).max(F::one())
    }
}

/// Gram matrix with the Lorentz signature check: exactly one negative and two
/// positive eigenvalues, and |det| above threshold.
pub fn metric_eval<F: Real>(m: &ChartMetric<F>, p: [F; 3]) -> Result<[[F; 3]; 3], DiffError<F>> {
    let g = m.gram(p);
    if g.iter().flatten().any(|x| !x.is_finite()) {
        return Err(DiffError::NonFinite { point: p });
    }
    let det = linalg::mat3_det(&g);
    let scale = m.component_scale(p);
    if det.abs() < r::<F>(1e-12) * scale * scale * scale {
        let flat: Vec<F> = g.iter().flatten().copied().collect();
        let counts = linalg::signature_dyn(3, &flat, r(1e-12));
        return Err(DiffError::SignatureFailure { point: p, det, counts });
    }
    let flat: Vec<F> = g.iter().flatten().copied().collect();
    let counts = linalg::signature_dyn(3, &flat, r(1e-12));
    if counts != (1, 0, 2) {
        return Err(DiffError::SignatureFailure { point: p, det, counts });
    }
    Ok(g)
}

/// Metric, inverse metric and Christoffel symbols as jets at a point.
pub struct MetricJets<F> {
    pub g: [[Jet4<F>; 3]; 3],
    pub ginv: [[Jet4<F>; 3]; 3],
    /// gamma[k][i][j] = Gamma^k_{ij}
    pub gamma: [[[Jet4<F>; 3]; 3]; 3],
}

pub fn metric_jets<F: Real>(m: &ChartMetric<F>, p: [F; 3]) -> Result<MetricJets<F>, DiffError<F>> {
    let g = m.gram_jet(p);
    let det = {
        let d0 = g[1][1].mul(&g[2][2]).sub(&g[1][2].mul(&g[2][1]));
        let d1 = g[1][0].mul(&g[2][2]).sub(&g[1][2].mul(&g[2][0]));
        let d2 = g[1][0].mul(&g[2][1]).sub(&g[1][1].mul(&g[2][0]));
        g[0][0].mul(&d0).sub(&g[0][1].mul(&d1)).add(&g[0][2].mul(&d2))
    };
    let scale = m.component_scale(p);
    if det.val().abs() < r::<F>(1e-12) * scale * scale * scale {
        let gv = m.gram(p);
        let flat: Vec<F> = gv.iter().flatten().copied().collect();
        let counts = linalg::signature_dyn(3, &flat, r(1e-12));
        return Err(DiffError::SignatureFailure { point: p, det: det.val(), counts });
    }
    let det_inv = det.recip();
    let mut ginv = [[Jet4::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (r0, r1) = match i {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let (c0, c1) = match j {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            let minor = g[r0][c0].mul(&g[r1][c1]).sub(&g[r0][c1].mul(&g[r1][c0]));
            let signed = if (i + j) % 2 == 0 { minor } else { minor.neg() };
            ginv[j][i] = signed.mul(&det_inv);
        }
    }

    let dg = |i: usize, j: usize, l: usize| g[i][j].partial(l);
    let mut gamma = [[[Jet4::zero(); 3]; 3]; 3];
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..=i {
                let mut s = Jet4::zero();
                for l in 0..3 {
                    let term = dg(j, l, i).add(&dg(i, l, j)).sub(&dg(i, j, l));
                    s = s.add(&ginv[k][l].mul(&term));
                }
                let half = s.scale(r(0.5));
                gamma[k][i][j] = half;
                gamma[k][j][i] = half;
            }
        }
    }
    Ok(MetricJets { g, ginv, gamma })
}

/// Christoffel symbols Gamma^k_{ij} at a point.
pub fn christoffel<F: Real>(m: &ChartMetric<F>, p: [F; 3]) -> Result<[[[F; 3]; 3]; 3], DiffError<F>> {
    let mj = metric_jets(m, p)?;
    let mut out = [[[F::zero(); 3]; 3]; 3];
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                out[k][i][j] = mj.gamma[k][i][j].val();
            }
        }
    }
    Ok(out)
}

/// Tensor of jets with all indices running over 3 coordinates.
#[derive(Clone)]
pub struct JTensor<F> {
    pub rank: usize,
    pub data: Vec<Jet4<F>>,
}

impl<F: Real> JTensor<F> {
    pub fn zeros(rank: usize) -> Self {
        JTensor { rank, data: vec![Jet4::zero(); 3usize.pow(rank as u32)] }
    }

    #[inline]
    pub fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank);
        idx.iter().fold(0, |acc, &i| acc * 3 + i)
    }

    pub fn get(&self, idx: &[usize]) -> &Jet4<F> {
        &self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: Jet4<F>) {
        let o = self.offset(idx);
        self.data[o] = v;
    }

    /// Covariant derivative for a fully covariant tensor; the new derivative
    /// index comes first: (nabla T)_{m, I} = d_m T_I - sum_s Gamma^c_{m i_s} T_{..c..}.
    pub fn covariant_derivative(&self, mj: &MetricJets<F>) -> JTensor<F> {
        let mut out = JTensor::zeros(self.rank + 1);
        let n = self.data.len();
        let mut idx = vec![0usize; self.rank];
        for flat in 0..n {
            // decode flat into idx
            let mut rem = flat;
            for s in (0..self.rank).rev() {
                idx[s] = rem % 3;
                rem /= 3;
            }
            for m in 0..3 {
                let mut v = self.data[flat].partial(m);
                for s in 0..self.rank {
                    let is = idx[s];
                    for c in 0..3 {
                        let save = idx[s];
                        idx[s] = c;
                        let t = self.get(&idx);
                        let term = mj.gamma[c][m][is].mul(t);
                        v = v.sub(&term);
                        idx[s] = save;
                    }
                }
                let mut full = Vec::with_capacity(self.rank + 1);
                full.push(m);
                full.extend_from_slice(&idx);
                out.set(&full, v);
            }
        }
        out
    }

    pub fn values(&self) -> TensorVal<F> {
        TensorVal { rank: self.rank, data: self.data.iter().map(|j| j.val()).collect() }
    }
}

/// Plain value tensor (no jets), same index layout as [`JTensor`].
#[derive(Clone, Debug)]
pub struct TensorVal<F> {
    pub rank: usize,
    pub data: Vec<F>,
}

impl<F: Real> TensorVal<F> {
    pub fn get(&self, idx: &[usize]) -> F {
        debug_assert_eq!(idx.len(), self.rank);
        self.data[idx.iter().fold(0, |acc, &i| acc * 3 + i)]
    }

    pub fn max_abs(&self) -> F {
        linalg::max_abs(self.data.iter().copied())
    }
}

/// Lowered curvature W(i,j,k,l) = g(R(d_i,d_j)d_k, d_l) as a rank-4 jet tensor.
fn riemann_low_jets<F: Real>(mj: &MetricJets<F>) -> JTensor<F> {
    // R^l_{ijk} = d_i Gamma^l_{jk} - d_j Gamma^l_{ik}
    //             + Gamma^l_{im} Gamma^m_{jk} - Gamma^l_{jm} Gamma^m_{ik}
    let mut up = JTensor::zeros(4); // indices (l, i, j, k)
    for l in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let mut v = mj.gamma[l][j][k].partial(i).sub(&mj.gamma[l][i][k].partial(j));
                    for m in 0..3 {
                        v = v.add(&mj.gamma[l][i][m].mul(&mj.gamma[m][j][k]));
                        v = v.sub(&mj.gamma[l][j][m].mul(&mj.gamma[m][i][k]));
                    }
                    up.set(&[l, i, j, k], v);
                }
            }
        }
    }
    let mut low = JTensor::zeros(4); // indices (i, j, k, l)
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    let mut v = Jet4::zero();
                    for mm in 0..3 {
                        v = v.add(&up.get(&[mm, i, j, k]).mul(&mj.g[mm][l]));
                    }
                    low.set(&[i, j, k, l], v);
                }
            }
        }
    }
    low
}

/// Riemann tensor at a point: (R^l_{ijk}, W_{ijkl}); the first is indexed
/// up[l][i][j][k] with R(d_i,d_j)d_k = R^l_{ijk} d_l, the second is the fully
/// lowered W(i,j,k,l) = g(R(d_i,d_j)d_k, d_l).
#[allow(clippy::type_complexity)]
pub fn riemann<F: Real>(
    m: &ChartMetric<F>,
    p: [F; 3],
) -> Result<([[[[F; 3]; 3]; 3]; 3], [[[[F; 3]; 3]; 3]; 3]), DiffError<F>> {
    let mj = metric_jets(m, p)?;
    let low = riemann_low_jets(&mj);
    let ginv_v: [[F; 3]; 3] = {
        let mut a = [[F::zero(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                a[i][j] = mj.ginv[i][j].val();
            }
        }
        a
    };
    let mut lowv = [[[[F::zero(); 3]; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    lowv[i][j][k][l] = low.get(&[i, j, k, l]).val();
                }
            }
        }
    }
    let mut upv = [[[[F::zero(); 3]; 3]; 3]; 3];
    for l in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let mut s = F::zero();
                    for mth in 0..3 {
                        s = s + ginv_v[l][mth] * lowv[i][j][k][mth];
                    }
                    upv[l][i][j][k] = s;
                }
            }
        }
    }
    Ok((upv, lowv))
}

/// Ricci tensor and scalar curvature.
pub fn ricci_scalar<F: Real>(
    m: &ChartMetric<F>,
    p: [F; 3],
) -> Result<([[F; 3]; 3], F), DiffError<F>> {
    let mj = metric_jets(m, p)?;
    let (ric, sc) = ricci_scalar_jets(&mj);
    let mut ricv = [[F::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            ricv[i][j] = ric[i][j].val();
        }
    }
    Ok((ricv, sc.val()))
}

fn ricci_scalar_jets<F: Real>(mj: &MetricJets<F>) -> ([[Jet4<F>; 3]; 3], Jet4<F>) {
    // Ric_{ij} = R^k_{kij} under Ric(X,Y) = tr(Z -> R(Z,X)Y)
    let mut ric = [[Jet4::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut v = Jet4::zero();
            for k in 0..3 {
                // R^k_{kij}
                let mut t = mj.gamma[k][i][j].partial(k).sub(&mj.gamma[k][k][j].partial(i));
                for mth in 0..3 {
                    t = t.add(&mj.gamma[k][k][mth].mul(&mj.gamma[mth][i][j]));
                    t = t.sub(&mj.gamma[k][i][mth].mul(&mj.gamma[mth][k][j]));
                }
                v = v.add(&t);
            }
            ric[i][j] = v;
        }
    }
    let mut sc = Jet4::zero();
    for i in 0..3 {
        for j in 0..3 {
            sc = sc.add(&mj.ginv[i][j].mul(&ric[i][j]));
        }
    }
    (ric, sc)
}

/// Sectional curvature of the plane spanned by u, v:
/// K = <R(u,v)v, u> / (g(u,u) g(v,v) - g(u,v)^2).
/// A lightlike (degenerate) plane is an error value, not a crash.
pub fn sectional_curvature<F: Real>(
    m: &ChartMetric<F>,
    p: [F; 3],
    u: [F; 3],
    v: [F; 3],
) -> Result<F, DiffError<F>> {
    let g = metric_eval(m, p)?;
    let ip = |a: &[F; 3], b: &[F; 3]| {
        let mut s = F::zero();
        for i in 0..3 {
            for j in 0..3 {
                s = s + g[i][j] * a[i] * b[j];
            }
        }
        s
    };
    let disc = ip(&u, &u) * ip(&v, &v) - ip(&u, &v) * ip(&u, &v);
    let scale = m.component_scale(p);
    let unorm = linalg::max_abs(u).max(linalg::max_abs(v)).max(F::one());
    if disc.abs() <= r::<F>(1e-10) * scale * scale * unorm.powi(4) {
        return Err(DiffError::DegeneratePlane { point: p, discriminant: disc });
    }
    let (_, low) = riemann(m, p)?;
    // <R(u,v)v, u> = W(i,j,k,l) u^i v^j v^k u^l
    let mut num = F::zero();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    num = num + low[i][j][k][l] * u[i] * v[j] * v[k] * u[l];
                }
            }
        }
    }
    Ok(num / disc)
}

/// Cotton-York tensor C_{ijk} = nabla_k S_{ij} - nabla_j S_{ik} with the
/// 3-dimensional Schouten tensor S = Ric - (sigma/4) g.
pub fn cotton_york<F: Real>(m: &ChartMetric<F>, p: [F; 3]) -> Result<[[[F; 3]; 3]; 3], DiffError<F>> {
    let mj = metric_jets(m, p)?;
    let (ric, sc) = ricci_scalar_jets(&mj);
    let quarter = sc.scale(r(0.25));
    let mut schouten = JTensor::zeros(2);
    for i in 0..3 {
        for j in 0..3 {
            schouten.set(&[i, j], ric[i][j].sub(&quarter.mul(&mj.g[i][j])));
        }
    }
    let ds = schouten.covariant_derivative(&mj); // ds[m][i][j] = (nabla_m S)_{ij}
    let mut c = [[[F::zero(); 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                c[i][j][k] = ds.get(&[k, i, j]).val() - ds.get(&[j, i, k]).val();
            }
        }
    }
    Ok(c)
}

/// Killing residual (L_X g)_{ij} = X^k d_k g_{ij} + g_{kj} d_i X^k + g_{ik} d_j X^k.
pub fn lie_derivative_metric<F: Real>(
    m: &ChartMetric<F>,
    x: &VectorFieldExpr<F>,
    p: [F; 3],
) -> Result<[[F; 3]; 3], DiffError<F>> {
    let g = m.gram_jet(p);
    if g.iter().flatten().any(|j| !j.val().is_finite()) {
        return Err(DiffError::NonFinite { point: p });
    }
    let xj = x.jet(p);
    let axis = |i: usize| match i {
        0 => (1u8, 0u8, 0u8),
        1 => (0, 1, 0),
        _ => (0, 0, 1),
    };
    let mut lie = [[F::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut s = F::zero();
            for k in 0..3 {
                s = s + xj[k].val() * g[i][j].deriv(axis(k));
                s = s + g[k][j].val() * xj[k].deriv(axis(i));
                s = s + g[i][k].val() * xj[k].deriv(axis(j));
            }
            lie[i][j] = s;
        }
    }
    Ok(lie)
}

/// Conformal-Killing residual: L_X g minus its pure-trace part, plus the
/// inferred conformal factor alpha_X = (1/3) g^{ij} (L_X g)_{ij}.
pub fn conformal_killing_residual<F: Real>(
    m: &ChartMetric<F>,
    x: &VectorFieldExpr<F>,
    p: [F; 3],
) -> Result<([[F; 3]; 3], F), DiffError<F>> {
    let lie = lie_derivative_metric(m, x, p)?;
    let g = metric_eval(m, p)?;
    let ginv = linalg::mat3_inv(&g);
    let mut trace = F::zero();
    for i in 0..3 {
        for j in 0..3 {
            trace = trace + ginv[i][j] * lie[i][j];
        }
    }
    let alpha = trace / r(3.0);
    let mut resid = [[F::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            resid[i][j] = lie[i][j] - alpha * g[i][j];
        }
    }
    Ok((resid, alpha))
}

/// Covariant derivatives of the lowered Riemann tensor: returns the value
/// tensors [W, nabla W, ..., nabla^order W], derivative indices first.
pub fn riemann_low_derivs<F: Real>(
    m: &ChartMetric<F>,
    p: [F; 3],
    order: usize,
) -> Result<Vec<TensorVal<F>>, DiffError<F>> {
    assert!(order <= 2, "jet budget supports nabla^2 R at most");
    let mj = metric_jets(m, p)?;
    let mut tensors = Vec::with_capacity(order + 1);
    let mut cur = riemann_low_jets(&mj);
    tensors.push(cur.values());
    for _ in 0..order {
        cur = cur.covariant_derivative(&mj);
        tensors.push(cur.values());
    }
    Ok(tensors)
}

/// nabla^r of the lowered Riemann tensor as a single value tensor.
pub fn covariant_deriv_riemann<F: Real>(
    m: &ChartMetric<F>,
    p: [F; 3],
    order: usize,
) -> Result<TensorVal<F>, DiffError<F>> {
    Ok(riemann_low_derivs(m, p, order)?.pop().unwrap())
}

fn rel_disc<F: Real>(a: F, b: F) -> F {
    (a - b).abs() / F::one().max(a.abs()).max(b.abs())
}

/// Jet-versus-central-difference discrepancy for the first partials of a
/// scalar expression (the O(h^2) oracle). Higher metric derivatives are
/// cross-checked through nested differences of the Christoffel symbols.
/// Test oracle only.
pub fn fd_crosscheck_expr<F: Real>(e: &Expr<F>, p: [F; 3], h: F) -> F {
    let j = e.jet(p);
    let shift = |i: usize, s: F| {
        let mut q = p;
        q[i] = q[i] + s;
        q
    };
    let mut worst = F::zero();
    for i in 0..3 {
        let fd = (e.eval(shift(i, h)) - e.eval(shift(i, -h))) / (r::<F>(2.0) * h);
        let alpha = match i {
            0 => (1u8, 0u8, 0u8),
            1 => (0, 1, 0),
            _ => (0, 0, 1),
        };
        worst = worst.max(rel_disc(j.deriv(alpha), fd));
    }
    worst
}

/// Jet-versus-finite-difference discrepancy for the Christoffel symbols:
/// the metric first derivatives are replaced by central differences of the
/// plain evaluation. Test oracle only.
pub fn fd_crosscheck_christoffel<F: Real>(
    m: &ChartMetric<F>,
    p: [F; 3],
    h: F,
) -> Result<F, DiffError<F>> {
    let exact = christoffel(m, p)?;
    let g = metric_eval(m, p)?;
    let ginv = linalg::mat3_inv(&g);
    let shift = |i: usize, s: F| {
        let mut q = p;
        q[i] = q[i] + s;
        q
    };
    // dg[l][i][j] = d_l g_{ij} by central differences
    let mut dg = [[[F::zero(); 3]; 3]; 3];
    for l in 0..3 {
        let gp = m.gram(shift(l, h));
        let gm = m.gram(shift(l, -h));
        for i in 0..3 {
            for j in 0..3 {
                dg[l][i][j] = (gp[i][j] - gm[i][j]) / (r::<F>(2.0) * h);
            }
        }
    }
    let mut worst = F::zero();
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                let mut s = F::zero();
                for l in 0..3 {
                    s = s + ginv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
                }
                worst = worst.max(rel_disc(exact[k][i][j], s * r(0.5)));
            }
        }
    }
    Ok(worst)
}

/// Max-norm checks of the Riemann symmetries at a point; returns the largest
/// violation of (antisymmetry in both pairs, pair symmetry, first Bianchi,
/// Ricci symmetry, Cotton antisymmetry), relative to the curvature scale.
pub fn symmetry_defects<F: Real>(m: &ChartMetric<F>, p: [F; 3]) -> Result<F, DiffError<F>> {
    let (_, w) = riemann(m, p)?;
    let scale = linalg::max_abs(
        (0..81).map(|f| w[f / 27][(f / 9) % 3][(f / 3) % 3][f % 3]),
    )
    .max(F::one());
    let mut worst = F::zero();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    worst = worst.max((w[i][j][k][l] + w[j][i][k][l]).abs());
                    worst = worst.max((w[i][j][k][l] + w[i][j][l][k]).abs());
                    worst = worst.max((w[i][j][k][l] - w[k][l][i][j]).abs());
                    worst = worst.max((w[i][j][k][l] + w[j][k][i][l] + w[k][i][j][l]).abs());
                }
            }
        }
    }
    let (ric, _) = ricci_scalar(m, p)?;
    for i in 0..3 {
        for j in 0..3 {
            worst = worst.max((ric[i][j] - ric[j][i]).abs());
        }
    }
    let c = cotton_york(m, p)?;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                worst = worst.max((c[i][j][k] + c[i][k][j]).abs());
            }
        }
    }
    Ok(worst / scale)
}

/// Second Bianchi identity defect at first derivative order: the cyclic sum
/// nabla_m W(i,j,k,l) + nabla_i W(j,m,k,l) + nabla_j W(m,i,k,l) in max norm,
/// relative to the scale of nabla W.
pub fn second_bianchi_defect<F: Real>(m: &ChartMetric<F>, p: [F; 3]) -> Result<F, DiffError<F>> {
    let mj = metric_jets(m, p)?;
    let low = riemann_low_jets(&mj);
    let dlow = low.covariant_derivative(&mj).values();
    let scale = dlow.max_abs().max(F::one());
    let mut worst = F::zero();
    for mi in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        let cyc = dlow.get(&[mi, i, j, k, l])
                            + dlow.get(&[i, j, mi, k, l])
                            + dlow.get(&[j, mi, i, k, l]);
                        worst = worst.max(cyc.abs());
                    }
                }
            }
        }
    }
    Ok(worst / scale)
}
