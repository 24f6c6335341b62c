//! Small dense linear algebra: cyclic Jacobi eigensolver for symmetric
//! matrices, singular values and nullspaces of skinny matrices, and fixed-size
//! helpers for the 3x3 and 5x5 work in this crate.
//!
//! Everything is deterministic: no pivot randomization, eigenvalues sorted
//! ascending, eigenvector signs fixed by the first entry of significant
//! magnitude.

use crate::scalar::{r, Real};

/// Eigenvalues (ascending) and matching eigenvectors of a symmetric `n x n`
/// matrix, via cyclic Jacobi rotations. `a` is row-major of length `n*n`.
/// Returned eigenvectors are rows of the second component.
pub fn sym_eigen_dyn<F: Real>(n: usize, a: &[F]) -> (Vec<F>, Vec<Vec<F>>) {
    assert_eq!(a.len(), n * n);
    let mut m: Vec<F> = a.to_vec();
    // v holds the accumulated rotation, row-major.
    let mut v: Vec<F> = vec![F::zero(); n * n];
    for i in 0..n {
        v[i * n + i] = F::one();
    }
    let idx = |i: usize, j: usize| i * n + j;

    for _sweep in 0..64 {
        let mut off = F::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                off = off + m[idx(p, q)] * m[idx(p, q)];
            }
        }
        let scale = (0..n).fold(F::zero(), |acc, i| acc + m[idx(i, i)].abs());
        if off.sqrt() <= r::<F>(1e-30) + r::<F>(1e-15) * (scale + off.sqrt()) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[idx(p, q)];
                if apq == F::zero() {
                    continue;
                }
                let app = m[idx(p, p)];
                let aqq = m[idx(q, q)];
                let theta = (aqq - app) / (r::<F>(2.0) * apq);
                // tan of the rotation angle, smaller root for stability
                let t = {
                    let s = if theta >= F::zero() { F::one() } else { -F::one() };
                    s / (theta.abs() + (theta * theta + F::one()).sqrt())
                };
                let c = F::one() / (t * t + F::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[idx(k, p)];
                    let mkq = m[idx(k, q)];
                    m[idx(k, p)] = c * mkp - s * mkq;
                    m[idx(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[idx(p, k)];
                    let mqk = m[idx(q, k)];
                    m[idx(p, k)] = c * mpk - s * mqk;
                    m[idx(q, k)] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vpk = v[idx(p, k)];
                    let vqk = v[idx(q, k)];
                    v[idx(p, k)] = c * vpk - s * vqk;
                    v[idx(q, k)] = s * vpk + c * vqk;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        m[idx(i, i)]
            .partial_cmp(&m[idx(j, j)])
            .unwrap_or(std::cmp::Ordering::Equal)
    });

    let mut vals = Vec::with_capacity(n);
    let mut vecs = Vec::with_capacity(n);
    for &i in &order {
        vals.push(m[idx(i, i)]);
        let mut row: Vec<F> = (0..n).map(|k| v[idx(i, k)]).collect();
        // deterministic sign: first entry above 10% of the max is positive
        let mx = row.iter().fold(F::zero(), |acc, x| acc.max(x.abs()));
        if let Some(lead) = row.iter().find(|x| x.abs() > mx * r::<F>(0.1)) {
            if *lead < F::zero() {
                for x in row.iter_mut() {
                    *x = -*x;
                }
            }
        }
        vecs.push(row);
    }
    (vals, vecs)
}

/// Fixed-size wrapper for symmetric 3x3 matrices.
pub fn sym_eigen3<F: Real>(a: &[[F; 3]; 3]) -> ([F; 3], [[F; 3]; 3]) {
    let flat: Vec<F> = a.iter().flatten().copied().collect();
    let (vals, vecs) = sym_eigen_dyn(3, &flat);
    let mut ev = [F::zero(); 3];
    let mut evec = [[F::zero(); 3]; 3];
    for i in 0..3 {
        ev[i] = vals[i];
        for j in 0..3 {
            evec[i][j] = vecs[i][j];
        }
    }
    (ev, evec)
}

/// Signature of a symmetric matrix as (negative, zero, positive) eigenvalue
/// counts, with `tol` as the zero threshold relative to the largest |lambda|.
pub fn signature_dyn<F: Real>(n: usize, a: &[F], tol: F) -> (usize, usize, usize) {
    let (vals, _) = sym_eigen_dyn(n, a);
    let mx = vals.iter().fold(F::zero(), |acc, x| acc.max(x.abs()));
    let thresh = tol * mx.max(F::one());
    let mut neg = 0;
    let mut zer = 0;
    let mut pos = 0;
    for v in vals {
        if v < -thresh {
            neg += 1;
        } else if v > thresh {
            pos += 1;
        } else {
            zer += 1;
        }
    }
    (neg, zer, pos)
}

/// One-sided Jacobi orthogonalization of the columns. Returns the singular
/// values (descending) and the matching right singular vectors (rows).
/// Accurate for small singular values, unlike the Gram-matrix route.
pub fn svd_columns<F: Real>(columns: &[Vec<F>]) -> (Vec<F>, Vec<Vec<F>>) {
    let n = columns.len();
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    let mut a: Vec<Vec<F>> = columns.to_vec();
    let mut v: Vec<Vec<F>> = (0..n)
        .map(|i| {
            let mut row = vec![F::zero(); n];
            row[i] = F::one();
            row
        })
        .collect();
    let dot = |x: &[F], y: &[F]| {
        let mut s = F::zero();
        for k in 0..x.len() {
            s = s + x[k] * y[k];
        }
        s
    };
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let app = dot(&a[p], &a[p]);
                let aqq = dot(&a[q], &a[q]);
                let apq = dot(&a[p], &a[q]);
                if apq.abs() <= r::<F>(1e-18) * (app * aqq).sqrt() + r::<F>(1e-300) {
                    continue;
                }
                rotated = true;
                let zeta = (aqq - app) / (r::<F>(2.0) * apq);
                let t = {
                    let s = if zeta >= F::zero() { F::one() } else { -F::one() };
                    s / (zeta.abs() + (zeta * zeta + F::one()).sqrt())
                };
                let c = F::one() / (t * t + F::one()).sqrt();
                let s = t * c;
                for k in 0..a[p].len() {
                    let xp = a[p][k];
                    let xq = a[q][k];
                    a[p][k] = c * xp - s * xq;
                    a[q][k] = s * xp + c * xq;
                }
                for k in 0..n {
                    let vp = v[p][k];
                    let vq = v[q][k];
                    v[p][k] = c * vp - s * vq;
                    v[q][k] = s * vp + c * vq;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut pairs: Vec<(F, Vec<F>)> = (0..n)
        .map(|i| {
            let sigma = dot(&a[i], &a[i]).sqrt();
            let mut row = v[i].clone();
            // deterministic sign
            let mx = row.iter().fold(F::zero(), |acc, x| acc.max(x.abs()));
            if let Some(lead) = row.iter().find(|x| x.abs() > mx * r::<F>(0.1)) {
                if *lead < F::zero() {
                    for x in row.iter_mut() {
                        *x = -*x;
                    }
                }
            }
            (sigma, row)
        })
        .collect();
    pairs.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap_or(std::cmp::Ordering::Equal));
    let sv = pairs.iter().map(|p| p.0).collect();
    let vecs = pairs.into_iter().map(|p| p.1).collect();
    (sv, vecs)
}

/// Singular values (descending) of the matrix with the given columns.
pub fn singular_values<F: Real>(columns: &[Vec<F>]) -> Vec<F> {
    svd_columns(columns).0
}

/// Rank of the matrix with the given columns: singular values above
/// `tol * sigma_max` count. A matrix whose largest singular value is below
/// `abs_floor` counts as zero (rank 0).
pub fn rank_with_tol<F: Real>(columns: &[Vec<F>], tol: F, abs_floor: F) -> usize {
    let sv = singular_values(columns);
    match sv.first() {
        None => 0,
        Some(&smax) if smax <= abs_floor => 0,
        Some(&smax) => sv.iter().filter(|&&s| s > tol * smax).count(),
    }
}

/// Basis of the (right) nullspace of the matrix with the given columns:
/// coefficient vectors `c` (length = number of columns) with `A c ~ 0`.
/// Vectors with singular value below `tol * sigma_max` (or below `abs_floor`)
/// span the kernel.
pub fn nullspace<F: Real>(columns: &[Vec<F>], tol: F, abs_floor: F) -> Vec<Vec<F>> {
    let (sv, vecs) = svd_columns(columns);
    let smax = sv.first().copied().unwrap_or(F::zero());
    let mut kernel = Vec::new();
    for (i, &s) in sv.iter().enumerate() {
        if s <= abs_floor || s <= tol * smax {
            kernel.push(vecs[i].clone());
        }
    }
    kernel
}

pub fn mat3_mul<F: Real>(a: &[[F; 3]; 3], b: &[[F; 3]; 3]) -> [[F; 3]; 3] {
    let mut c = [[F::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                c[i][j] = c[i][j] + a[i][k] * b[k][j];
            }
        }
    }
    c
}

pub fn mat3_vec<F: Real>(a: &[[F; 3]; 3], v: &[F; 3]) -> [F; 3] {
    let mut out = [F::zero(); 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i] = out[i] + a[i][j] * v[j];
        }
    }
    out
}

pub fn mat3_transpose<F: Real>(a: &[[F; 3]; 3]) -> [[F; 3]; 3] {
    let mut t = [[F::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            t[i][j] = a[j][i];
        }
    }
    t
}

pub fn mat3_det<F: Real>(a: &[[F; 3]; 3]) -> F {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

/// Inverse via the adjugate; caller guarantees a nonzero determinant.
pub fn mat3_inv<F: Real>(a: &[[F; 3]; 3]) -> [[F; 3]; 3] {
    let det = mat3_det(a);
    let mut inv = [[F::zero(); 3]; 3];
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
            let minor = a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0];
            let sign = if (i + j) % 2 == 0 { F::one() } else { -F::one() };
            inv[j][i] = sign * minor / det;
        }
    }
    inv
}

pub fn mat5_mul<F: Real>(a: &[[F; 5]; 5], b: &[[F; 5]; 5]) -> [[F; 5]; 5] {
    let mut c = [[F::zero(); 5]; 5];
    for i in 0..5 {
        for j in 0..5 {
            for k in 0..5 {
                c[i][j] = c[i][j] + a[i][k] * b[k][j];
            }
        }
    }
    c
}

pub fn mat5_vec<F: Real>(a: &[[F; 5]; 5], v: &[F; 5]) -> [F; 5] {
    let mut out = [F::zero(); 5];
    for i in 0..5 {
        for j in 0..5 {
            out[i] = out[i] + a[i][j] * v[j];
        }
    }
    out
}

pub fn mat5_transpose<F: Real>(a: &[[F; 5]; 5]) -> [[F; 5]; 5] {
    let mut t = [[F::zero(); 5]; 5];
    for i in 0..5 {
        for j in 0..5 {
            t[i][j] = a[j][i];
        }
    }
    t
}

pub fn mat5_identity<F: Real>() -> [[F; 5]; 5] {
    let mut id = [[F::zero(); 5]; 5];
    for i in 0..5 {
        id[i][i] = F::one();
    }
    id
}

pub fn max_abs<F: Real>(xs: impl IntoIterator<Item = F>) -> F {
    xs.into_iter().fold(F::zero(), |acc, x| acc.max(x.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigen_diagonal() {
        let a: [[f64; 3]; 3] = [[2.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 5.0]];
        let (vals, _) = sym_eigen3(&a);
        assert!((vals[0] + 1.0).abs() < 1e-14);
        assert!((vals[1] - 2.0).abs() < 1e-14);
        assert!((vals[2] - 5.0).abs() < 1e-14);
    }

    #[test]
    fn eigen_reconstructs() {
        let a: [[f64; 3]; 3] = [[1.0, 2.0, 0.5], [2.0, -3.0, 1.0], [0.5, 1.0, 0.25]];
        let (vals, vecs) = sym_eigen3(&a);
        // A v = lambda v for each pair
        for i in 0..3 {
            let v = [vecs[i][0], vecs[i][1], vecs[i][2]];
            let av = mat3_vec(&a, &v);
            for k in 0..3 {
                assert!((av[k] - vals[i] * v[k]).abs() < 1e-12, "residual {}", av[k]);
            }
        }
    }

    #[test]
    fn lorentz_signature_detected() {
        let j = [[0.0, 0.0, 1.0], [0.0, 1.0, 0.0], [1.0, 0.0, 0.0]];
        let flat: Vec<f64> = j.iter().flatten().copied().collect();
        assert_eq!(signature_dyn(3, &flat, 1e-12), (1, 0, 2));
    }

    #[test]
    fn rank_and_nullspace() {
        // two equal columns plus one independent
        let c0: Vec<f64> = vec![1.0, 0.0, 0.0];
        let c1 = vec![1.0, 0.0, 0.0];
        let c2 = vec![0.0, 2.0, 0.0];
        let cols = vec![c0, c1, c2];
        assert_eq!(rank_with_tol(&cols, 1e-9, 1e-13), 2);
        let ker = nullspace(&cols, 1e-9, 1e-13);
        assert_eq!(ker.len(), 1);
        let k = &ker[0];
        // kernel vector is proportional to (1, -1, 0)
        assert!((k[0] + k[1]).abs() < 1e-12);
        assert!(k[2].abs() < 1e-12);
    }

    #[test]
    fn inverse_3x3() {
        let a: [[f64; 3]; 3] = [[2.0, 1.0, 0.0], [0.0, 1.0, 3.0], [1.0, 0.0, 1.0]];
        let inv = mat3_inv(&a);
        let id = mat3_mul(&a, &inv);
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((id[i][j] - want).abs() < 1e-14);
            }
        }
    }
}
