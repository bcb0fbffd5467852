//! Cyclic Jacobi eigensolver for complex Hermitian matrices.

use super::{CMat, HermMat, C64};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 80;

/// Eigendecomposition `M = Q diag(values) Q*` with `values` sorted descending.
#[derive(Debug, Clone)]
pub struct HermEig {
    pub values: Vec<f64>,
    /// Unitary matrix whose columns are the eigenvectors.
    pub vectors: CMat,
}

impl HermEig {
    /// Rebuilds `Q f(Λ) Q*` for a real function of the eigenvalues.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> HermMat {
        let q = &self.vectors;
        let n = q.rows();
        let scaled = CMat::from_fn(n, n, |i, j| q[(i, j)] * f(self.values[j]));
        HermMat::new_unchecked(&scaled * &q.adjoint())
    }
}

/// Hermitian eigendecomposition by cyclic Jacobi rotations.
///
/// Each rotation is the composition of a diagonal phase that makes the pivot
/// `a_pq` real and positive with a real plane rotation that annihilates it.
pub fn herm_eig(m: &HermMat) -> Result<HermEig> {
    let n = m.n();
    let mut a = m.mat().clone();
    let mut v = CMat::identity(n);

    let scale = a.frobenius();
    if scale == 0.0 {
        return Ok(HermEig { values: vec![0.0; n], vectors: v });
    }
    let negligible = f64::EPSILON * 1e-2 * scale;

    let mut converged = false;
    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= negligible {
                    a[(p, q)] = C64::new(0.0, 0.0);
                    a[(q, p)] = C64::new(0.0, 0.0);
                    continue;
                }
                rotated = true;
                let phase = apq / mag;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * mag);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // R = diag(1, conj(phase)) * [[c, s], [-s, c]]
                let r_pp = C64::new(c, 0.0);
                let r_pq = C64::new(s, 0.0);
                let r_qp = phase.conj() * (-s);
                let r_qq = phase.conj() * c;
                rotate(&mut a, &mut v, p, q, [r_pp, r_pq, r_qp, r_qq]);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NumericalFailure(format!("Jacobi eigensolver did not converge in {MAX_SWEEPS} sweeps")));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = v.select_columns(&order);
    Ok(HermEig { values, vectors })
}

/// `A <- R* A R`, `V <- V R` for a 2x2 unitary `R` acting on coordinates `p, q`.
fn rotate(a: &mut CMat, v: &mut CMat, p: usize, q: usize, r: [C64; 4]) {
    let [r_pp, r_pq, r_qp, r_qq] = r;
    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * r_pp + akq * r_qp;
        a[(k, q)] = akp * r_pq + akq * r_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = r_pp.conj() * apk + r_qp.conj() * aqk;
        a[(q, k)] = r_pq.conj() * apk + r_qq.conj() * aqk;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
    for k in 0..v.rows() {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * r_pp + vkq * r_qp;
        v[(k, q)] = vkp * r_pq + vkq * r_qq;
    }
}
