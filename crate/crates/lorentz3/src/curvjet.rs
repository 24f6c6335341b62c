//! Frame-read curvature jets and the rank-based point classifier.
//!
//! At a point p an adapted frame (f1, f2, f3) with Gram matrix J (null,
//! spacelike, null) is built from the metric; the curvature and its
//! covariant derivatives are read in that frame and flattened into a jet
//! vector on which o(1,2) acts blockwise. The rank of the 6-column Jacobian
//! (3 horizontal columns = next-order covariant derivative, 3 vertical
//! columns = module action of E, H, F) estimates the local Killing
//! dimension as 6 - rank; the kernel of the vertical block is the isotropy
//! algebra, typed by tr(u^2).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::difftensor::{metric_eval, riemann_low_derivs, ChartMetric, DiffError, TensorVal};
use crate::liealg::{gram_j, o12_bracket, ElementType, O12Element};
use crate::linalg;
use crate::scalar::{r, Real};

/// A frame (f1, f2, f3) at a point with Gram matrix J:
/// <f1,f3> = 1, <f2,f2> = 1, all other products zero.
#[derive(Clone, Copy, Debug)]
pub struct OrthoFrame<F> {
    pub point: [F; 3],
    /// vecs[a] = coordinate components of f_a.
    pub vecs: [[F; 3]; 3],
}

impl<F: Real> OrthoFrame<F> {
    /// Max deviation of the frame Gram matrix from J.
    pub fn gram_defect(&self, m: &ChartMetric<F>) -> Result<F, DiffError<F>> {
        let g = metric_eval(m, self.point)?;
        let j = gram_j::<F>();
        let ip = |a: &[F; 3], b: &[F; 3]| {
            let mut s = F::zero();
            for i in 0..3 {
                for k in 0..3 {
                    s = s + g[i][k] * a[i] * b[k];
                }
            }
            s
        };
        let mut worst = F::zero();
        for a in 0..3 {
            for b in 0..3 {
                worst = worst.max((ip(&self.vecs[a], &self.vecs[b]) - j[a][b]).abs());
            }
        }
        Ok(worst)
    }

    /// Rotate the frame by g in O(1,2): f'_a = sum_b f_b g[b][a].
    pub fn rotate(&self, g: &[[F; 3]; 3]) -> Self {
        let mut vecs = [[F::zero(); 3]; 3];
        for a in 0..3 {
            for i in 0..3 {
                for b in 0..3 {
                    vecs[a][i] = vecs[a][i] + self.vecs[b][i] * g[b][a];
                }
            }
        }
        OrthoFrame { point: self.point, vecs }
    }
}

/// Deterministic J-adapted frame from the eigendecomposition of the Gram
/// matrix: the timelike and first spacelike eigendirections combine into the
/// two null legs.
pub fn adapted_frame<F: Real>(m: &ChartMetric<F>, p: [F; 3]) -> Result<OrthoFrame<F>, DiffError<F>> {
    let g = metric_eval(m, p)?;
    let (vals, vecs) = linalg::sym_eigen3(&g);
    // signature (-,+,+) guaranteed by metric_eval: vals[0] < 0 < vals[1,2]
    let t = {
        let s = F::one() / (-vals[0]).sqrt();
        [vecs[0][0] * s, vecs[0][1] * s, vecs[0][2] * s]
    };
    let s1 = {
        let s = F::one() / vals[1].sqrt();
        [vecs[1][0] * s, vecs[1][1] * s, vecs[1][2] * s]
    };
    let s2 = {
        let s = F::one() / vals[2].sqrt();
        [vecs[2][0] * s, vecs[2][1] * s, vecs[2][2] * s]
    };
    let inv_sqrt2 = F::one() / r::<F>(2.0).sqrt();
    let mut f1 = [F::zero(); 3];
    let mut f3 = [F::zero(); 3];
    for i in 0..3 {
        f1[i] = (t[i] + s1[i]) * inv_sqrt2;
        f3[i] = (s1[i] - t[i]) * inv_sqrt2;
    }
    Ok(OrthoFrame { point: p, vecs: [f1, s2, f3] })
}

/// Frame components of (R, nabla R, ..., nabla^r R), flattened.
///
/// Block k has layout [d_1..d_k, a, b, coeff] of size 3^k * 3 * 3 * 3: the
/// k derivative directions, the curvature-plane pair (a, b), and the (E, H,
/// F) coordinates of the curvature operator R(f_a, f_b) in o(1,2).
#[derive(Clone, Debug)]
pub struct CurvatureJet<F> {
    pub order: usize,
    pub blocks: Vec<Vec<F>>,
}

impl<F: Real> CurvatureJet<F> {
    pub fn max_abs(&self) -> F {
        self.blocks
            .iter()
            .fold(F::zero(), |acc, b| acc.max(linalg::max_abs(b.iter().copied())))
    }

    /// Flatten blocks 0..=upto into one vector.
    pub fn flatten_up_to(&self, upto: usize) -> Vec<F> {
        let mut out = Vec::new();
        for k in 0..=upto {
            out.extend_from_slice(&self.blocks[k]);
        }
        out
    }

    /// The order-0 block as a curvature-module matrix: rows (E, H, F),
    /// columns the planes (f1^f2, f1^f3, f2^f3).
    pub fn order0_module_matrix(&self) -> [[F; 3]; 3] {
        let planes = [(0usize, 1usize), (0, 2), (1, 2)];
        let mut m = [[F::zero(); 3]; 3];
        for (col, &(a, b)) in planes.iter().enumerate() {
            for coeff in 0..3 {
                m[coeff][col] = self.blocks[0][(a * 3 + b) * 3 + coeff];
            }
        }
        m
    }
}

/// Contract every slot of a value tensor with the frame vectors:
/// out(a_1..a_r) = T(i_1..i_r) prod_s P[a_s][i_s].
fn frame_read<F: Real>(t: &TensorVal<F>, frame: &OrthoFrame<F>) -> TensorVal<F> {
    let rank = t.rank;
    let mut cur = t.data.clone();
    // contract one slot at a time; slot s has stride 3^(rank-1-s)
    for s in 0..rank {
        let stride = 3usize.pow((rank - 1 - s) as u32);
        let mut next = vec![F::zero(); cur.len()];
        let outer = cur.len() / (3 * stride);
        for o in 0..outer {
            for inner in 0..stride {
                let base = o * 3 * stride + inner;
                for a in 0..3 {
                    let mut acc = F::zero();
                    for i in 0..3 {
                        acc = acc + frame.vecs[a][i] * cur[base + i * stride];
                    }
                    next[base + a * stride] = acc;
                }
            }
        }
        cur = next;
    }
    TensorVal { rank, data: cur }
}

/// Frame-read curvature jet of order `order` (0, 1 or 2).
pub fn curvature_jet<F: Real>(
    m: &ChartMetric<F>,
    frame: &OrthoFrame<F>,
    order: usize,
) -> Result<CurvatureJet<F>, DiffError<F>> {
    assert!(order <= 2);
    let derivs = riemann_low_derivs(m, frame.point, order)?;
    let j = gram_j::<F>();
    let mut blocks = Vec::with_capacity(order + 1);
    for (k, t) in derivs.iter().enumerate() {
        let tf = frame_read(t, frame);
        // layout of tf: (d_1..d_k, i, j, kk, l); build (d, a, b, coeff)
        let nd = 3usize.pow(k as u32);
        let mut block = vec![F::zero(); nd * 27];
        for d in 0..nd {
            for a in 0..3 {
                for b in 0..3 {
                    // operator M[e][c] = sum_dd J[e][dd] * Wf(D, a, b, c, dd)
                    let base = ((d * 3 + a) * 3 + b) * 9;
                    let mut mop = [[F::zero(); 3]; 3];
                    for e in 0..3 {
                        for c in 0..3 {
                            let mut acc = F::zero();
                            for dd in 0..3 {
                                acc = acc + j[e][dd] * tf.data[base + c * 3 + dd];
                            }
                            mop[e][c] = acc;
                        }
                    }
                    let out_base = ((d * 3 + a) * 3 + b) * 3;
                    block[out_base] = mop[0][1]; // E coefficient
                    block[out_base + 1] = mop[0][0]; // H coefficient
                    block[out_base + 2] = mop[1][0]; // F coefficient
                }
            }
        }
        blocks.push(block);
    }
    Ok(CurvatureJet { order, blocks })
}

/// Infinitesimal o(1,2)-action on the jet: bracket on the o(1,2) value minus
/// the action on every frame slot.
pub fn module_action_jet<F: Real>(u: &O12Element<F>, jet: &CurvatureJet<F>) -> CurvatureJet<F> {
    let rho = u.matrix();
    let mut blocks = Vec::with_capacity(jet.blocks.len());
    for (k, block) in jet.blocks.iter().enumerate() {
        let nslots = k + 2; // derivative slots plus the (a, b) pair
        let nentries = block.len() / 3;
        let mut out = vec![F::zero(); block.len()];
        for entry in 0..nentries {
            // decode the slot indices of this entry
            let mut slots = vec![0usize; nslots];
            let mut rem = entry;
            for s in (0..nslots).rev() {
                slots[s] = rem % 3;
                rem /= 3;
            }
            let val = O12Element::new(block[entry * 3], block[entry * 3 + 1], block[entry * 3 + 2]);
            // bracket on the value
            let br = o12_bracket(u, &val);
            for c in 0..3 {
                out[entry * 3 + c] += br.coeffs[c];
            }
            // minus the action on each covariant slot
            for s in 0..nslots {
                let orig = slots[s];
                for cc in 0..3 {
                    let w = rho[cc][orig];
                    if w == F::zero() {
                        continue;
                    }
                    let mut idx = 0usize;
                    for (s2, &v) in slots.iter().enumerate() {
                        idx = idx * 3 + if s2 == s { cc } else { v };
                    }
                    for c in 0..3 {
                        out[entry * 3 + c] = out[entry * 3 + c] - w * block[idx * 3 + c];
                    }
                }
            }
        }
        blocks.push(out);
    }
    CurvatureJet { order: jet.order, blocks }
}

/// Group action of g in O(1,2) on the jet: slots contracted with g^{-1},
/// the o(1,2) value conjugated by g.
pub fn group_action_jet<F: Real>(g: &[[F; 3]; 3], jet: &CurvatureJet<F>) -> CurvatureJet<F> {
    let j = gram_j::<F>();
    let ginv = linalg::mat3_mul(&linalg::mat3_mul(&j, &linalg::mat3_transpose(g)), &j);
    let mut blocks = Vec::with_capacity(jet.blocks.len());
    for (k, block) in jet.blocks.iter().enumerate() {
        let nslots = k + 2;
        let nentries = block.len() / 3;
        let mut out = vec![F::zero(); block.len()];
        for entry in 0..nentries {
            let mut slots = vec![0usize; nslots];
            let mut rem = entry;
            for s in (0..nslots).rev() {
                slots[s] = rem % 3;
                rem /= 3;
            }
            // sum over all source slot assignments
            let mut acc = [F::zero(); 3];
            let nsrc = 3usize.pow(nslots as u32);
            for src in 0..nsrc {
                let mut weight = F::one();
                let mut rem2 = src;
                let mut idx = 0usize;
                for s in (0..nslots).rev() {
                    let i = rem2 % 3;
                    rem2 /= 3;
                    weight = weight * ginv[i][slots[s]];
                    idx += i * 3usize.pow((nslots - 1 - s) as u32);
                }
                if weight == F::zero() {
                    continue;
                }
                for c in 0..3 {
                    acc[c] = acc[c] + weight * block[idx * 3 + c];
                }
            }
            // conjugate the value: rho(v') = g rho(v) g^{-1}
            let v = O12Element::new(acc[0], acc[1], acc[2]);
            let conj = linalg::mat3_mul(g, &linalg::mat3_mul(&v.matrix(), &ginv));
            out[entry * 3] = conj[0][1];
            out[entry * 3 + 1] = conj[0][0];
            out[entry * 3 + 2] = conj[1][0];
        }
        blocks.push(out);
    }
    CurvatureJet { order: jet.order, blocks }
}

/// The six Jacobian columns of the curvature map of order `order - 1`,
/// computed from a jet of order `order`: three horizontal columns (the
/// next-order covariant derivative sliced along each frame direction) and
/// three vertical columns (the module action of E, H, F).
pub fn dkappa_columns<F: Real>(jet: &CurvatureJet<F>) -> Vec<Vec<F>> {
    assert!(jet.order >= 1, "need at least one covariant derivative");
    let sub = jet.order - 1;
    let mut columns = Vec::with_capacity(6);
    // horizontal: block k+1 sliced at first derivative index = m
    for m in 0..3 {
        let mut col = Vec::new();
        for k in 0..=sub {
            let next = &jet.blocks[k + 1];
            let chunk = next.len() / 3;
            col.extend_from_slice(&next[m * chunk..(m + 1) * chunk]);
        }
        columns.push(col);
    }
    // vertical: module action on blocks 0..=sub
    let subjet = CurvatureJet { order: sub, blocks: jet.blocks[0..=sub].to_vec() };
    for u in [O12Element::<F>::e(), O12Element::h(), O12Element::f()] {
        let acted = module_action_jet(&u, &subjet);
        columns.push(acted.flatten_up_to(sub));
    }
    columns
}

/// Rank of the curvature-map differential at the frame, 0..=6.
pub fn dkappa_rank<F: Real>(
    m: &ChartMetric<F>,
    frame: &OrthoFrame<F>,
    order: usize,
    tol: F,
) -> Result<usize, DiffError<F>> {
    let jet = curvature_jet(m, frame, order)?;
    Ok(rank_from_jet(&jet, tol))
}

fn rank_from_jet<F: Real>(jet: &CurvatureJet<F>, tol: F) -> usize {
    let columns = dkappa_columns(jet);
    let floor = r::<F>(1e-11) * (F::one() + jet.max_abs());
    linalg::rank_with_tol(&columns, tol, floor)
}

/// Local Killing dimension estimate: 6 - rank.
pub fn killing_dim_estimate<F: Real>(
    m: &ChartMetric<F>,
    frame: &OrthoFrame<F>,
    order: usize,
    tol: F,
) -> Result<usize, DiffError<F>> {
    Ok(6 - dkappa_rank(m, frame, order, tol)?)
}

/// An isotropy generator with its type and certificate q = tr(u^2).
pub type TypedIsotropy<F> = (O12Element<F>, ElementType, F);

/// Basis of the isotropy algebra {u in o(1,2) : u . jet = 0}, each element
/// typed by tr(u^2).
pub fn isotropy_algebra<F: Real>(
    m: &ChartMetric<F>,
    frame: &OrthoFrame<F>,
    order: usize,
    rank_tol: F,
    parabolic_tol: F,
) -> Result<Vec<TypedIsotropy<F>>, DiffError<F>> {
    let jet = curvature_jet(m, frame, order)?;
    Ok(isotropy_from_jet(&jet, rank_tol, parabolic_tol))
}

fn isotropy_from_jet<F: Real>(
    jet: &CurvatureJet<F>,
    rank_tol: F,
    parabolic_tol: F,
) -> Vec<TypedIsotropy<F>> {
    let sub = jet.order.saturating_sub(1);
    let subjet = CurvatureJet { order: sub, blocks: jet.blocks[0..=sub].to_vec() };
    let mut columns = Vec::with_capacity(3);
    for u in [O12Element::<F>::e(), O12Element::h(), O12Element::f()] {
        let acted = module_action_jet(&u, &subjet);
        columns.push(acted.flatten_up_to(sub));
    }
    let floor = r::<F>(1e-11) * (F::one() + jet.max_abs());
    let kernel = linalg::nullspace(&columns, rank_tol, floor);
    kernel
        .into_iter()
        .map(|v| {
            let u = O12Element::new(v[0], v[1], v[2]);
            let (ty, q) = u.element_type(parabolic_tol);
            (u, ty, q)
        })
        .collect()
}

/// Point labels of the component taxonomy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentLabel {
    ConstantCurvature,
    LocHomogHyperbolic,
    LocHomogParabolic,
    NonLocHomogHyperbolic,
    NonLocHomogParabolic,
    Undetermined,
}

impl ComponentLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            ComponentLabel::ConstantCurvature => "constant_curvature",
            ComponentLabel::LocHomogHyperbolic => "loc_homog_hyperbolic",
            ComponentLabel::LocHomogParabolic => "loc_homog_parabolic",
            ComponentLabel::NonLocHomogHyperbolic => "non_loc_homog_hyperbolic",
            ComponentLabel::NonLocHomogParabolic => "non_loc_homog_parabolic",
            ComponentLabel::Undetermined => "undetermined",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ClassifyConfig<F> {
    pub jet_order: usize,
    pub rank_tol: F,
    pub parabolic_tol: F,
}

impl<F: Real> Default for ClassifyConfig<F> {
    fn default() -> Self {
        ClassifyConfig { jet_order: 2, rank_tol: r(1e-6), parabolic_tol: r(1e-10) }
    }
}

#[derive(Clone, Debug)]
pub struct PointClass<F> {
    pub label: ComponentLabel,
    pub rank: usize,
    pub killing_dim: usize,
    pub isotropy_dim: usize,
    pub isotropy_type: Option<ElementType>,
    pub q: Option<F>,
    /// rank at jet order - 1, for the stability flag
    pub rank_lower_order: Option<usize>,
}

pub fn classify_point<F: Real>(
    m: &ChartMetric<F>,
    p: [F; 3],
    cfg: &ClassifyConfig<F>,
) -> Result<PointClass<F>, DiffError<F>> {
    let frame = adapted_frame(m, p)?;
    let jet = curvature_jet(m, &frame, cfg.jet_order)?;
    let rank = rank_from_jet(&jet, cfg.rank_tol);
    let rank_lower_order = if cfg.jet_order >= 2 {
        let sub = CurvatureJet {
            order: cfg.jet_order - 1,
            blocks: jet.blocks[0..cfg.jet_order].to_vec(),
        };
        Some(rank_from_jet(&sub, cfg.rank_tol))
    } else {
        None
    };
    let iso = isotropy_from_jet(&jet, cfg.rank_tol, cfg.parabolic_tol);
    let isotropy_dim = iso.len();
    let (isotropy_type, q) = if isotropy_dim == 1 {
        (Some(iso[0].1), Some(iso[0].2))
    } else {
        (None, None)
    };
    let label = match (rank, isotropy_dim) {
        (0, _) => ComponentLabel::ConstantCurvature,
        (2, 1) => match isotropy_type {
            Some(ElementType::Hyperbolic) => ComponentLabel::LocHomogHyperbolic,
            Some(ElementType::Parabolic) => ComponentLabel::LocHomogParabolic,
            _ => ComponentLabel::Undetermined,
        },
        (3, 1) => match isotropy_type {
            Some(ElementType::Hyperbolic) => ComponentLabel::NonLocHomogHyperbolic,
            Some(ElementType::Parabolic) => ComponentLabel::NonLocHomogParabolic,
            _ => ComponentLabel::Undetermined,
        },
        _ => ComponentLabel::Undetermined,
    };
    Ok(PointClass {
        label,
        rank,
        killing_dim: 6 - rank,
        isotropy_dim,
        isotropy_type,
        q,
        rank_lower_order,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GridRecord {
    pub point: [f64; 3],
    pub label: ComponentLabel,
    pub rank: usize,
    pub killing_dim: usize,
    pub isotropy_dim: usize,
    pub isotropy_type: Option<ElementType>,
    pub q: Option<f64>,
    /// rank agrees with all axis neighbors on the grid
    pub rank_locally_constant: bool,
    /// rank agrees between jet orders r-1 and r
    pub rank_stable: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub model: String,
    pub grid_points_per_axis: usize,
    pub jet_order: usize,
    pub rank_tol: f64,
    pub parabolic_tol: f64,
    pub histogram: BTreeMap<String, usize>,
    pub locally_constant_rank_fraction: f64,
    pub points: Vec<GridRecord>,
}

/// Classify every point of an n^3 grid over the metric's domain box.
pub fn classify_grid<F: Real>(
    m: &ChartMetric<F>,
    n: usize,
    cfg: &ClassifyConfig<F>,
) -> Result<ClassificationReport, DiffError<F>> {
    let pts = m.grid(n);
    let mut classes = Vec::with_capacity(pts.len());
    for &p in &pts {
        classes.push(classify_point(m, p, cfg)?);
    }
    let rank_at = |ix: usize, iy: usize, iz: usize| classes[(ix * n + iy) * n + iz].rank;
    let mut records = Vec::with_capacity(pts.len());
    let mut histogram: BTreeMap<String, usize> = BTreeMap::new();
    let mut flags_true = 0usize;
    for ix in 0..n {
        for iy in 0..n {
            for iz in 0..n {
                let idx = (ix * n + iy) * n + iz;
                let c = &classes[idx];
                let mut locally_constant = true;
                let mut check = |jx: isize, jy: isize, jz: isize| {
                    if jx < 0 || jy < 0 || jz < 0 {
                        return;
                    }
                    let (jx, jy, jz) = (jx as usize, jy as usize, jz as usize);
                    if jx >= n || jy >= n || jz >= n {
                        return;
                    }
                    if rank_at(jx, jy, jz) != c.rank {
                        locally_constant = false;
                    }
                };
                let (x, y, z) = (ix as isize, iy as isize, iz as isize);
                check(x - 1, y, z);
                check(x + 1, y, z);
                check(x, y - 1, z);
                check(x, y + 1, z);
                check(x, y, z - 1);
                check(x, y, z + 1);
                if locally_constant {
                    flags_true += 1;
                }
                *histogram.entry(c.label.as_str().to_string()).or_insert(0) += 1;
                records.push(GridRecord {
                    point: [
                        pts[idx][0].as_f64(),
                        pts[idx][1].as_f64(),
                        pts[idx][2].as_f64(),
                    ],
                    label: c.label,
                    rank: c.rank,
                    killing_dim: c.killing_dim,
                    isotropy_dim: c.isotropy_dim,
                    isotropy_type: c.isotropy_type,
                    q: c.q.map(|x| x.as_f64()),
                    rank_locally_constant: locally_constant,
                    rank_stable: c.rank_lower_order.map(|rl| rl == c.rank),
                });
            }
        }
    }
    Ok(ClassificationReport {
        model: m.label.clone(),
        grid_points_per_axis: n,
        jet_order: cfg.jet_order,
        rank_tol: cfg.rank_tol.as_f64(),
        parabolic_tol: cfg.parabolic_tol.as_f64(),
        histogram,
        locally_constant_rank_fraction: flags_true as f64 / pts.len().max(1) as f64,
        points: records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::o12_exp;
    use crate::models::{
        g_a_isotropy_at, h_a_isotropy_at, make_flat, make_g_a, make_h_a,
        make_lorentz_heisenberg_chart, sample_points, FlatVariant, TrigPoly,
    };
    use rand::{Rng, SeedableRng};

    fn rand_o12(rng: &mut impl Rng) -> [[f64; 3]; 3] {
        let u = O12Element::new(
            rng.random_range(-0.6..0.6),
            rng.random_range(-0.6..0.6),
            rng.random_range(-0.6..0.6),
        );
        o12_exp(&u)
    }

    #[test]
    fn coordinate_frame_of_flat_null_metric_is_adapted() {
        let m = make_flat::<f64>(FlatVariant::NullFrame).metric;
        let coord_frame = OrthoFrame {
            point: [0.0; 3],
            vecs: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
        };
        assert!(coord_frame.gram_defect(&m).unwrap() < 1e-15);
    }

    #[test]
    fn adapted_frames_have_gram_j_and_are_deterministic() {
        let a = TrigPoly::<f64>::two_plus_cos();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for metric in [
            make_flat::<f64>(FlatVariant::MinkowskiDiag).metric,
            make_g_a(&a).unwrap().metric,
            make_h_a(&a).unwrap().metric,
            make_lorentz_heisenberg_chart::<f64>().metric,
        ] {
            for p in sample_points(&metric.domain, 20, &mut rng) {
                let fr = adapted_frame(&metric, p).unwrap();
                assert!(fr.gram_defect(&metric).unwrap() < 1e-12);
                let fr2 = adapted_frame(&metric, p).unwrap();
                for a in 0..3 {
                    for i in 0..3 {
                        assert_eq!(fr.vecs[a][i], fr2.vecs[a][i]);
                    }
                }
            }
        }
    }

    #[test]
    fn flat_jet_vanishes() {
        let m = make_flat::<f64>(FlatVariant::NullFrame).metric;
        let fr = adapted_frame(&m, [0.2, -0.1, 0.4]).unwrap();
        let jet = curvature_jet(&m, &fr, 2).unwrap();
        assert!(jet.max_abs() < 1e-13);
    }

    #[test]
    fn g_a_jet_depends_on_t_only() {
        let a = TrigPoly::<f64>::two_plus_cos();
        let m = make_g_a(&a).unwrap().metric;
        let f1 = adapted_frame(&m, [0.3, 0.1, -0.7]).unwrap();
        let f2 = adapted_frame(&m, [0.3, -0.5, 0.9]).unwrap();
        let j1 = curvature_jet(&m, &f1, 2).unwrap();
        let j2 = curvature_jet(&m, &f2, 2).unwrap();
        assert!(j1.max_abs() > 1.0);
        for (b1, b2) in j1.blocks.iter().zip(j2.blocks.iter()) {
            for (x, y) in b1.iter().zip(b2.iter()) {
                assert!((x - y).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn h_a_jet_has_zero_scalar_part() {
        let a = TrigPoly::<f64>::two_plus_cos();
        let m = make_h_a(&a).unwrap().metric;
        let fr = adapted_frame(&m, [0.2, 0.4, 0.13]).unwrap();
        let jet = curvature_jet(&m, &fr, 2).unwrap();
        assert!(jet.max_abs() > 1.0);
        let module = crate::liealg::CurvModElement::new(jet.order0_module_matrix());
        let (sigma, rest) = module.decompose();
        assert!(sigma.abs() < 1e-10, "scalar part {sigma}");
        assert!(rest.max_abs() > 0.1);
    }

    #[test]
    fn group_action_matches_infinitesimal_action() {
        let a = TrigPoly::<f64>::two_plus_cos();
        let m = make_g_a(&a).unwrap().metric;
        let fr = adapted_frame(&m, [0.23, 0.5, -0.1]).unwrap();
        let jet = curvature_jet(&m, &fr, 2).unwrap();
        let u = O12Element::new(0.3, -0.2, 0.5);
        let eps = 1e-6;
        let scaled = O12Element::new(u.coeffs[0] * eps, u.coeffs[1] * eps, u.coeffs[2] * eps);
        let g = o12_exp(&scaled);
        let moved = group_action_jet(&g, &jet);
        let inf = module_action_jet(&u, &jet);
        for k in 0..=2 {
            for (i, x) in moved.blocks[k].iter().enumerate() {
                let fd = (x - jet.blocks[k][i]) / eps;
                assert!(
                    (fd - inf.blocks[k][i]).abs() < 1e-4 * (1.0 + inf.blocks[k][i].abs()),
                    "block {k} entry {i}: fd {fd} vs {}",
                    inf.blocks[k][i]
                );
            }
        }
    }

    #[test]
    fn jet_equivariance_under_frame_rotation() {
        let a = TrigPoly::<f64>::two_plus_cos();
        let m = make_h_a(&a).unwrap().metric;
        let fr = adapted_frame(&m, [0.1, -0.3, 0.27]).unwrap();
        let jet = curvature_jet(&m, &fr, 2).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..10 {
            let g = rand_o12(&mut rng);
            let rotated_frame = fr.rotate(&g);
            assert!(rotated_frame.gram_defect(&m).unwrap() < 1e-11);
            let jet_rot = curvature_jet(&m, &rotated_frame, 2).unwrap();
            let ginv = {
                let j = crate::liealg::gram_j::<f64>();
                linalg::mat3_mul(&linalg::mat3_mul(&j, &linalg::mat3_transpose(&g)), &j)
            };
            let expected = group_action_jet(&ginv, &jet);
            let scale = 1.0 + jet.max_abs();
            for k in 0..=2 {
                for (x, y) in jet_rot.blocks[k].iter().zip(expected.blocks[k].iter()) {
                    assert!((x - y).abs() < 1e-9 * scale, "{x} vs {y}");
                }
            }
        }
    }

    #[test]
    fn rank_and_killing_dim_examples() {
        let a = TrigPoly::<f64>::two_plus_cos();
        let flat = make_flat::<f64>(FlatVariant::NullFrame).metric;
        let fr = adapted_frame(&flat, [0.0; 3]).unwrap();
        assert_eq!(dkappa_rank(&flat, &fr, 2, 1e-6).unwrap(), 0);
        assert_eq!(killing_dim_estimate(&flat, &fr, 2, 1e-6).unwrap(), 6);

        let ga = make_g_a(&a).unwrap().metric;
        let fr = adapted_frame(&ga, [0.13, 0.2, -0.5]).unwrap();
        assert_eq!(dkappa_rank(&ga, &fr, 2, 1e-6).unwrap(), 3);

        let ha = make_h_a(&a).unwrap().metric;
        let fr = adapted_frame(&ha, [0.2, -0.5, 0.13]).unwrap();
        assert_eq!(dkappa_rank(&ha, &fr, 2, 1e-6).unwrap(), 3);

        let lh = make_lorentz_heisenberg_chart::<f64>().metric;
        let fr = adapted_frame(&lh, [0.4, -0.2, 0.3]).unwrap();
        assert_eq!(killing_dim_estimate(&lh, &fr, 2, 1e-6).unwrap(), 4);
    }

    #[test]
    fn rank_and_isotropy_are_frame_independent() {
        let a = TrigPoly::<f64>::two_plus_cos();
        let m = make_h_a(&a).unwrap().metric;
        let p = [0.31, -0.4, 0.22];
        let base = adapted_frame(&m, p).unwrap();
        let rank0 = dkappa_rank(&m, &base, 2, 1e-6).unwrap();
        let iso0 = isotropy_algebra(&m, &base, 2, 1e-6, 1e-10).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..20 {
            let g = rand_o12(&mut rng);
            let fr = base.rotate(&g);
            assert_eq!(dkappa_rank(&m, &fr, 2, 1e-6).unwrap(), rank0);
            let iso = isotropy_algebra(&m, &fr, 2, 1e-6, 1e-10).unwrap();
            assert_eq!(iso.len(), iso0.len());
            assert_eq!(iso[0].1, iso0[0].1);
        }
    }

    #[test]
    fn isotropy_examples() {
        let a = TrigPoly::<f64>::two_plus_cos();
        let flat = make_flat::<f64>(FlatVariant::NullFrame).metric;
        let fr = adapted_frame(&flat, [0.0; 3]).unwrap();
        let iso = isotropy_algebra(&flat, &fr, 2, 1e-6, 1e-10).unwrap();
        assert_eq!(iso.len(), 3);

        let ha = make_h_a(&a).unwrap().metric;
        let fr = adapted_frame(&ha, [0.1, 0.6, -0.44]).unwrap();
        let iso = isotropy_algebra(&ha, &fr, 2, 1e-6, 1e-10).unwrap();
        assert_eq!(iso.len(), 1);
        assert_eq!(iso[0].1, ElementType::Parabolic);
        assert!(iso[0].2.abs() < 1e-10 * iso[0].0.norm2());

        let ga = make_g_a(&a).unwrap().metric;
        let fr = adapted_frame(&ga, [-0.44, 0.1, 0.6]).unwrap();
        let iso = isotropy_algebra(&ga, &fr, 2, 1e-6, 1e-10).unwrap();
        assert_eq!(iso.len(), 1);
        assert_eq!(iso[0].1, ElementType::Hyperbolic);
    }

    #[test]
    fn jet_isotropy_type_matches_catalog_linearization() {
        // the catalog isotropy generator's differential has the same o(1,2)
        // type as the jet-kernel element
        let a = TrigPoly::<f64>::two_plus_cos();
        let tol = 1e-10;
        // g_a: d((u-u0) d_u - (v-v0) d_v) = diag(0, 1, -1): q = tr = 2 > 0
        {
            let p = [0.3, 0.7, -0.2];
            let coeffs = g_a_isotropy_at(p);
            // the generator field is c0 d_u + c1 d_v + c2 (u d_u - v d_v);
            // its differential at p in coordinates (t, u, v)
            let dx = [[0.0, 0.0, 0.0], [0.0, coeffs[2], 0.0], [0.0, 0.0, -coeffs[2]]];
            let tr2: f64 = {
                let m2 = crate::linalg::mat3_mul(&dx, &dx);
                m2[0][0] + m2[1][1] + m2[2][2]
            };
            assert!(tr2 > 1e-6);
            let ga = make_g_a(&a).unwrap().metric;
            let fr = adapted_frame(&ga, p).unwrap();
            let iso = isotropy_algebra(&ga, &fr, 2, 1e-6, tol).unwrap();
            assert_eq!(iso[0].1, ElementType::Hyperbolic);
        }
        // h_a: d(-(t-t0) d_u + (v-v0) d_t) is strictly triangular: q = 0
        {
            let p = [0.7, 0.3, -0.2];
            let dx = [[0.0, -1.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]];
            let m2 = crate::linalg::mat3_mul(&dx, &dx);
            let tr2: f64 = m2[0][0] + m2[1][1] + m2[2][2];
            assert_eq!(tr2, 0.0);
            let _ = h_a_isotropy_at(p);
            let ha = make_h_a(&a).unwrap().metric;
            let fr = adapted_frame(&ha, p).unwrap();
            let iso = isotropy_algebra(&ha, &fr, 2, 1e-6, tol).unwrap();
            assert_eq!(iso[0].1, ElementType::Parabolic);
        }
    }

    #[test]
    fn rank_bounds_across_catalog() {
        let a = TrigPoly::<f64>::two_plus_cos();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(51);
        let cfg = ClassifyConfig::<f64>::default();
        for metric in [
            make_flat::<f64>(FlatVariant::NullFrame).metric,
            make_g_a(&a).unwrap().metric,
            make_h_a(&a).unwrap().metric,
            make_lorentz_heisenberg_chart::<f64>().metric,
        ] {
            for p in sample_points(&metric.domain, 15, &mut rng) {
                let c = classify_point(&metric, p, &cfg).unwrap();
                assert!(c.rank <= 3, "{}: rank {}", metric.label, c.rank);
                assert!(c.killing_dim >= 3);
                if c.rank == 0 || c.rank == 2 || c.rank == 3 {
                    assert!(c.isotropy_dim == 1 || c.isotropy_dim == 3);
                }
            }
        }
    }

    #[test]
    fn classify_grids_small() {
        let a = TrigPoly::<f64>::two_plus_cos();
        let cfg = ClassifyConfig::<f64>::default();
        let flat = make_flat::<f64>(FlatVariant::NullFrame).metric;
        let rep = classify_grid(&flat, 3, &cfg).unwrap();
        assert_eq!(rep.histogram.get("constant_curvature"), Some(&27));
        assert_eq!(rep.locally_constant_rank_fraction, 1.0);
        let ga = make_g_a(&a).unwrap().metric;
        let rep = classify_grid(&ga, 3, &cfg).unwrap();
        assert_eq!(rep.histogram.get("non_loc_homog_hyperbolic"), Some(&27));
        let ha = make_h_a(&a).unwrap().metric;
        let rep = classify_grid(&ha, 3, &cfg).unwrap();
        assert_eq!(rep.histogram.get("non_loc_homog_parabolic"), Some(&27));
        // report serializes
        let json = serde_json::to_string(&rep).unwrap();
        assert!(json.contains("non_loc_homog_parabolic"));
    }
}
