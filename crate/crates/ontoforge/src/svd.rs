//! Singular value decomposition via one-sided Jacobi rotations.
//!
//! Column pairs of a working copy of the input are rotated until they are
//! mutually orthogonal; the column norms are then the singular values, the
//! normalized columns form U, and the accumulated rotations form V. The
//! sign of each factor pair is fixed so downstream concept extraction is
//! deterministic: the largest-magnitude entry of every U column is made
//! positive.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::weights::NormalizedWeightMatrix;

const MAX_SWEEPS: usize = 100;
/// Converged when every off-diagonal Gram entry is at most this fraction of
/// the squared Frobenius norm...
const GRAM_TOL: f64 = 1e-12;
/// ...and at most this fraction of the geometric mean of its diagonal
/// neighbors. The absolute test alone lets two near-zero columns stay
/// parallel, which would wreck the orthonormality of U on rank-deficient
/// input.
const COHERENCE_TOL: f64 = 1e-10;
/// Columns whose norm falls below this fraction of ||A||_F are numerically
/// zero: they are exempt from the coherence test (their dots are rounding
/// noise that never settles relatively) and their U columns come from
/// orthonormal completion instead. Small enough that dropping them keeps
/// the reconstruction within 1e-8 relative at any supported rank.
const ZERO_COLUMN_TOL: f64 = 5e-10;

/// Factors A = U * diag(S) * V^T with orthonormal U, V and singular values
/// sorted descending. `u` is terms x r, `v` is docs x r, r = min(terms, docs).
#[derive(Debug, Clone, PartialEq)]
pub struct SvdFactors {
    pub u: DenseMatrix,
    pub s: Vec<f64>,
    pub v: DenseMatrix,
}

impl SvdFactors {
    pub fn rank(&self) -> usize {
        self.s.len()
    }

    /// Reconstructs U * diag(S) * V^T; used by verification code.
    pub fn reconstruct(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.u.rows(), self.v.rows());
        for r in 0..self.u.rows() {
            for c in 0..self.v.rows() {
                let mut acc = 0.0;
                for (j, &s) in self.s.iter().enumerate() {
                    acc += self.u.get(r, j) * s * self.v.get(c, j);
                }
                m.set(r, c, acc);
            }
        }
        m
    }
}

/// Decomposes a normalized weight matrix.
pub fn decompose(nw: &NormalizedWeightMatrix) -> Result<SvdFactors> {
    decompose_matrix(&nw.to_dense())
}

/// Decomposes an arbitrary dense matrix.
pub fn decompose_matrix(a: &DenseMatrix) -> Result<SvdFactors> {
    let (m, n) = (a.rows(), a.cols());
    if m == 0 || n == 0 {
        return Err(Error::Shape("cannot decompose an empty matrix".into()));
    }
    if !a.is_finite() {
        return Err(Error::Numeric("svd input".into()));
    }
    let r = m.min(n);

    // Column-major working copies: b holds the rotated input, v the
    // accumulated rotations (starting from the identity).
    let mut b: Vec<Vec<f64>> = (0..n).map(|j| (0..m).map(|i| a.get(i, j)).collect()).collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();

    let fnorm2: f64 = b.iter().flatten().map(|x| x * x).sum();
    let threshold = GRAM_TOL * fnorm2;
    let zero_floor2 = ZERO_COLUMN_TOL * ZERO_COLUMN_TOL * fnorm2;
    let settled = |app: f64, aqq: f64, apq: f64| {
        apq.abs() <= threshold
            && (apq * apq <= COHERENCE_TOL * COHERENCE_TOL * app * aqq
                || app <= zero_floor2
                || aqq <= zero_floor2)
    };

    let mut converged = false;
    for _sweep in 0..MAX_SWEEPS {
        if all_pairs_settled(&b, &settled) {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let (app, aqq, apq) = gram_entries(&b[p], &b[q]);
                if settled(app, aqq, apq) {
                    continue;
                }
                let zeta = (aqq - app) / (2.0 * apq);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut b, p, q, c, s);
                rotate(&mut v, p, q, c, s);
            }
        }
    }
    if !converged && !all_pairs_settled(&b, &settled) {
        return Err(Error::Convergence {
            residual: max_off_diagonal(&b),
            sweeps: MAX_SWEEPS,
        });
    }

    // Singular values are the column norms, sorted descending.
    let norms: Vec<f64> = b.iter().map(|col| col.iter().map(|x| x * x).sum::<f64>().sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap());
    order.truncate(r);

    let zero_tol = ZERO_COLUMN_TOL * fnorm2.sqrt();
    let mut u_cols: Vec<Vec<f64>> = Vec::with_capacity(r);
    let mut v_cols: Vec<Vec<f64>> = Vec::with_capacity(r);
    let mut s = Vec::with_capacity(r);
    for &j in &order {
        s.push(norms[j]);
        if norms[j] > zero_tol {
            u_cols.push(b[j].iter().map(|x| x / norms[j]).collect());
        } else {
            u_cols.push(complete_orthonormal(&u_cols, m));
        }
        v_cols.push(v[j].clone());
    }

    // Sign convention: largest-magnitude U entry positive, V follows.
    for j in 0..r {
        let lead = u_cols[j]
            .iter()
            .enumerate()
            .max_by(|(_, a), (_, b)| a.abs().partial_cmp(&b.abs()).unwrap())
            .map(|(i, _)| i)
            .unwrap_or(0);
        if u_cols[j][lead] < 0.0 {
            u_cols[j].iter_mut().for_each(|x| *x = -*x);
            v_cols[j].iter_mut().for_each(|x| *x = -*x);
        }
    }

    let u = DenseMatrix::from_fn(m, r, |i, j| u_cols[j][i]);
    let v = DenseMatrix::from_fn(n, r, |i, j| v_cols[j][i]);
    Ok(SvdFactors { u, s, v })
}

/// Retains the first `k` singular triplets.
pub fn truncate(f: &SvdFactors, k: usize) -> Result<SvdFactors> {
    let r = f.rank();
    if k == 0 || k > r {
        return Err(Error::BadRank { k, r });
    }
    Ok(SvdFactors {
        u: DenseMatrix::from_fn(f.u.rows(), k, |i, j| f.u.get(i, j)),
        s: f.s[..k].to_vec(),
        v: DenseMatrix::from_fn(f.v.rows(), k, |i, j| f.v.get(i, j)),
    })
}

fn gram_entries(p: &[f64], q: &[f64]) -> (f64, f64, f64) {
    let mut app = 0.0;
    let mut aqq = 0.0;
    let mut apq = 0.0;
    for (x, y) in p.iter().zip(q) {
        app += x * x;
        aqq += y * y;
        apq += x * y;
    }
    (app, aqq, apq)
}

fn all_pairs_settled(cols: &[Vec<f64>], settled: &impl Fn(f64, f64, f64) -> bool) -> bool {
    let n = cols.len();
    for p in 0..n {
        for q in (p + 1)..n {
            let (app, aqq, apq) = gram_entries(&cols[p], &cols[q]);
            if !settled(app, aqq, apq) {
                return false;
            }
        }
    }
    true
}

fn max_off_diagonal(cols: &[Vec<f64>]) -> f64 {
    let n = cols.len();
    let mut max = 0.0f64;
    for p in 0..n {
        for q in (p + 1)..n {
            let dot: f64 = cols[p].iter().zip(&cols[q]).map(|(x, y)| x * y).sum();
            max = max.max(dot.abs());
        }
    }
    max
}

fn rotate(cols: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64) {
    let rows = cols[p].len();
    for i in 0..rows {
        let xp = cols[p][i];
        let xq = cols[q][i];
        cols[p][i] = c * xp - s * xq;
        cols[q][i] = s * xp + c * xq;
    }
}

/// Produces a unit vector orthogonal to every column collected so far, used
/// for the U columns of (numerically) zero singular values. The basis
/// vector with the largest out-of-span residual is taken (its norm is at
/// least sqrt((dim - k) / dim) for k existing columns), then cleaned with a
/// second orthogonalization pass.
fn complete_orthonormal(existing: &[Vec<f64>], dim: usize) -> Vec<f64> {
    let orthogonalize = |candidate: &mut Vec<f64>| {
        for col in existing {
            let proj: f64 = col.iter().zip(candidate.iter()).map(|(a, b)| a * b).sum();
            for (c, a) in candidate.iter_mut().zip(col) {
                *c -= proj * a;
            }
        }
    };
    let mut best: Option<(f64, Vec<f64>)> = None;
    for basis in 0..dim {
        let mut candidate = vec![0.0; dim];
        candidate[basis] = 1.0;
        orthogonalize(&mut candidate);
        let norm2: f64 = candidate.iter().map(|x| x * x).sum();
        if best.as_ref().is_none_or(|(n, _)| norm2 > *n) {
            best = Some((norm2, candidate));
        }
    }
    let (_, mut candidate) = best.expect("dim > 0");
    orthogonalize(&mut candidate);
    let norm: f64 = candidate.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 {
        // Only possible once the basis is already full.
        let mut fallback = vec![0.0; dim];
        fallback[0] = 1.0;
        return fallback;
    }
    candidate.iter_mut().for_each(|x| *x /= norm);
    candidate
}
