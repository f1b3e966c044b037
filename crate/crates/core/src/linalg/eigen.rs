//! Dense Hermitian eigensolvers.
//!
//! [`herm_eigen`] reduces the matrix to a real symmetric tridiagonal form with
//! Householder reflectors, removes the phases of the off-diagonal, and runs
//! implicit QL with Wilkinson-style shifts. [`herm_eigen_jacobi`] is a cyclic
//! complex Jacobi solver; it is slower but structurally unrelated, which makes
//! it a useful cross-check. Both are deterministic: no randomized pivoting and
//! a fixed traversal order.

use rayon::prelude::*;

use super::matrix::{ComplexMatrix, C64, ONE, ZERO};
use crate::error::{Error, Result};

/// Jacobi stops when the off-diagonal Frobenius norm drops below this
/// fraction of the diagonal Frobenius norm.
pub const JACOBI_OFF_DIAGONAL_RATIO: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Per-eigenvalue iteration cap for implicit QL.
pub const QL_MAX_ITERATIONS: usize = 100;

#[derive(Debug, Clone)]
pub struct EigenResult {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Column `k` pairs with `eigenvalues[k]`.
    pub eigenvectors: ComplexMatrix,
    /// `max_k ||H v_k - lambda_k v_k||_2`.
    pub residual: f64,
}

impl EigenResult {
    /// `max_abs(V^dagger V - I)`.
    pub fn orthonormality_error(&self) -> f64 {
        let v = &self.eigenvectors;
        let g = &v.adjoint() * v;
        g.distance(&ComplexMatrix::identity(v.cols()))
    }

    /// `V diag(lambda) V^dagger`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.rows();
        let mut scaled = v.clone();
        for i in 0..n {
            for (j, &lam) in self.eigenvalues.iter().enumerate() {
                scaled[(i, j)] *= lam;
            }
        }
        &scaled * &v.adjoint()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EigenMethod {
    #[default]
    TridiagonalQl,
    Jacobi,
}

/// Eigen-decomposition of a Hermitian matrix.
///
/// Fails with [`Error::NotHermitian`] when `max_abs(h - h^dagger) > tol`; the
/// Hermitian part `(h + h^dagger)/2` is what gets diagonalized otherwise.
pub fn herm_eigen(h: &ComplexMatrix, tol: f64) -> Result<EigenResult> {
    herm_eigen_with(h, tol, EigenMethod::TridiagonalQl)
}

pub fn herm_eigen_jacobi(h: &ComplexMatrix, tol: f64) -> Result<EigenResult> {
    herm_eigen_with(h, tol, EigenMethod::Jacobi)
}

pub fn herm_eigen_with(h: &ComplexMatrix, tol: f64, method: EigenMethod) -> Result<EigenResult> {
    let sym = hermitian_part(h, tol)?;
    let (values, vectors) = match method {
        EigenMethod::TridiagonalQl => tridiagonal_ql(&sym)?,
        EigenMethod::Jacobi => jacobi(&sym)?,
    };
    let (eigenvalues, eigenvectors) = sort_pairs(values, &vectors);
    let residual = pair_residual(&sym, &eigenvalues, &eigenvectors);

    let n = h.rows() as f64;
    let scale = sym.max_abs().max(1.0);
    let bound = tol.max(64.0 * n * f64::EPSILON) * scale;
    if !(residual <= bound) {
        return Err(Error::Inaccurate {
            residual,
            tol: bound,
        });
    }
    Ok(EigenResult {
        eigenvalues,
        eigenvectors,
        residual,
    })
}

fn hermitian_part(h: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch {
            op: "herm_eigen",
            left: h.shape(),
            right: h.shape(),
        });
    }
    let residual = h.hermiticity_residual();
    if !(residual <= tol) {
        return Err(Error::NotHermitian { residual, tol });
    }
    let n = h.rows();
    let mut out = h.clone();
    for i in 0..n {
        out[(i, i)] = C64::new(h[(i, i)].re, 0.0);
        for j in i + 1..n {
            let avg = (h[(i, j)] + h[(j, i)].conj()) * 0.5;
            out[(i, j)] = avg;
            out[(j, i)] = avg.conj();
        }
    }
    Ok(out)
}

fn sort_pairs(values: Vec<f64>, vectors: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let sorted: Vec<f64> = order.iter().map(|&k| values[k]).collect();
    let all: Vec<usize> = (0..n).collect();
    (sorted, vectors.submatrix(&all, &order))
}

fn pair_residual(h: &ComplexMatrix, values: &[f64], vectors: &ComplexMatrix) -> f64 {
    let hv = h * vectors;
    let n = h.rows();
    (0..n)
        .map(|k| {
            (0..n)
                .map(|i| (hv[(i, k)] - vectors[(i, k)] * values[k]).norm_sqr())
                .sum::<f64>()
                .sqrt()
        })
        .fold(0.0, f64::max)
}

/// Householder tridiagonalization followed by implicit QL on the real
/// tridiagonal matrix. Returns unsorted eigenpairs.
fn tridiagonal_ql(h: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let n = h.rows();
    let mut a: Vec<C64> = h.data().to_vec();
    let mut reflectors: Vec<Option<Vec<C64>>> = Vec::with_capacity(n.saturating_sub(2));

    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let x: Vec<C64> = (0..m).map(|r| a[(k + 1 + r) * n + k]).collect();
        let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let tail = x[1..].iter().map(|z| z.norm_sqr()).sum::<f64>();
        if norm == 0.0 || tail == 0.0 {
            reflectors.push(None);
            continue;
        }
        let phase = if x[0].norm() == 0.0 {
            ONE
        } else {
            x[0] / x[0].norm()
        };
        let alpha = -phase * norm;
        let mut v = x;
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in v.iter_mut() {
            *z /= vnorm;
        }

        // Trailing block B = a[k+1.., k+1..] <- (I - 2vv^H) B (I - 2vv^H).
        let off = k + 1;
        let p: Vec<C64> = (0..m)
            .into_par_iter()
            .map(|r| {
                let row = &a[(off + r) * n + off..(off + r) * n + n];
                row.iter().zip(&v).map(|(b, vj)| b * vj).sum()
            })
            .collect();
        let kk: f64 = v.iter().zip(&p).map(|(vi, pi)| (vi.conj() * pi).re).sum();
        let w: Vec<C64> = p.iter().zip(&v).map(|(pi, vi)| pi - vi * kk).collect();
        a.par_chunks_mut(n)
            .skip(off)
            .enumerate()
            .for_each(|(r, row)| {
                let (vr, wr) = (v[r], w[r]);
                for c in 0..m {
                    row[off + c] -= (vr * w[c].conj() + wr * v[c].conj()) * 2.0;
                }
            });
        a[(k + 1) * n + k] = alpha;
        a[k * n + k + 1] = alpha.conj();
        for r in 1..m {
            a[(k + 1 + r) * n + k] = ZERO;
            a[k * n + k + 1 + r] = ZERO;
        }
        reflectors.push(Some(v));
    }

    let mut d: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    let mut e = vec![0.0; n];
    let mut phases = vec![ONE; n];
    for i in 0..n.saturating_sub(1) {
        let sub = a[(i + 1) * n + i];
        let mag = sub.norm();
        e[i] = mag;
        phases[i + 1] = if mag == 0.0 {
            phases[i]
        } else {
            phases[i] * (sub / mag)
        };
    }

    // zt[j] holds column j of the orthogonal eigenvector matrix of the
    // real tridiagonal problem.
    let mut zt: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            let mut col = vec![0.0; n];
            col[j] = 1.0;
            col
        })
        .collect();
    tql2(&mut d, &mut e, &mut zt)?;

    // V = H_0 H_1 ... H_{n-3} D Z
    let mut w = ComplexMatrix::zeros(n, n);
    for (j, col) in zt.iter().enumerate() {
        for i in 0..n {
            w[(i, j)] = phases[i] * col[i];
        }
    }
    let mut wdata = w.data().to_vec();
    for (k, refl) in reflectors.iter().enumerate().rev() {
        let Some(v) = refl else { continue };
        let off = k + 1;
        let mut s = vec![ZERO; n];
        for (r, vr) in v.iter().enumerate() {
            let vc = vr.conj();
            let row = &wdata[(off + r) * n..(off + r + 1) * n];
            for (sj, wj) in s.iter_mut().zip(row) {
                *sj += vc * wj;
            }
        }
        wdata
            .par_chunks_mut(n)
            .skip(off)
            .zip(v.par_iter())
            .for_each(|(row, &vr)| {
                let f = vr * 2.0;
                for (wj, sj) in row.iter_mut().zip(&s) {
                    *wj -= f * sj;
                }
            });
    }
    let vectors = ComplexMatrix::from_vec(n, n, wdata)?;
    Ok((d, vectors))
}

/// Implicit QL on a symmetric tridiagonal matrix with diagonal `d` and
/// sub-diagonal `e` (`e[i]` couples `i` and `i+1`; `e[n-1]` is ignored).
/// Rotations are accumulated into the columns stored as rows of `zt`.
fn tql2(d: &mut [f64], e: &mut [f64], zt: &mut [Vec<f64>]) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;

    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > QL_MAX_ITERATIONS {
                    return Err(Error::NoConvergence { iterations: iter });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);

                    let (lo, hi) = zt.split_at_mut(i + 1);
                    let (zi, zi1) = (&mut lo[i], &mut hi[0]);
                    for (a, b) in zi.iter_mut().zip(zi1.iter_mut()) {
                        let t = *b;
                        *b = s * *a + c * t;
                        *a = c * *a - s * t;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

/// Cyclic complex Jacobi. Each rotation zeroes one off-diagonal pair; pairs
/// are visited in row-major order every sweep.
fn jacobi(h: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let n = h.rows();
    let mut a = h.clone();
    let mut v = ComplexMatrix::identity(n);

    for sweep in 0..=JACOBI_MAX_SWEEPS {
        let (off, diag) = off_and_diag_mass(&a);
        if off == 0.0 || off <= (JACOBI_OFF_DIAGONAL_RATIO * JACOBI_OFF_DIAGONAL_RATIO) * diag {
            let values = (0..n).map(|i| a[(i, i)].re).collect();
            return Ok((values, v));
        }
        if sweep == JACOBI_MAX_SWEEPS {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                let phase = apq / mag;
                let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * mag);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // G restricted to (p, q): [[c, s], [-s conj(phase), c conj(phase)]]
                let gpp = C64::new(c, 0.0);
                let gpq = C64::new(s, 0.0);
                let gqp = -phase.conj() * s;
                let gqq = phase.conj() * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = akp * gpp + akq * gqp;
                    a[(k, q)] = akp * gpq + akq * gqq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = gpp.conj() * apk + gqp.conj() * aqk;
                    a[(q, k)] = gpq.conj() * apk + gqq.conj() * aqk;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = vkp * gpp + vkq * gqp;
                    v[(k, q)] = vkp * gpq + vkq * gqq;
                }
            }
        }
    }
    Err(Error::NoConvergence {
        iterations: JACOBI_MAX_SWEEPS,
    })
}

fn off_and_diag_mass(a: &ComplexMatrix) -> (f64, f64) {
    let n = a.rows();
    let mut off = 0.0;
    let mut diag = 0.0;
    for i in 0..n {
        for j in 0..n {
            let m = a[(i, j)].norm_sqr();
            if i == j {
                diag += m;
            } else {
                off += m;
            }
        }
    }
    (off, diag)
}
