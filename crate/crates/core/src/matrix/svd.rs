use super::{herm_eig, orthonormalize_against, CMat, HermMat, C64};
use crate::error::Result;

/// Thin singular value decomposition `M = U diag(values) V*`.
///
/// For an `m x n` input, `U` is `m x k`, `V` is `n x k` with `k = min(m, n)`.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: CMat,
    pub values: Vec<f64>,
    pub v: CMat,
}

impl Svd {
    pub fn reconstruct(&self) -> CMat {
        let k = self.values.len();
        let us = CMat::from_fn(self.u.rows(), k, |i, j| self.u[(i, j)] * self.values[j]);
        &us * &self.v.adjoint()
    }
}

/// SVD via the Hermitian eigenproblem of the Gram matrix `M*M`, with left
/// vectors recovered as `M v / σ`. Columns whose singular value is too small
/// to recover reliably are completed to an orthonormal set.
pub fn svd(m: &CMat) -> Result<Svd> {
    if m.rows() < m.cols() {
        let t = svd(&m.adjoint())?;
        return Ok(Svd { u: t.v, values: t.values, v: t.u });
    }
    let (rows, cols) = m.shape();
    let gram = HermMat::new_unchecked(&m.adjoint() * m);
    let eig = herm_eig(&gram)?;
    // σ_j = ‖M v_j‖ is accurate to eps·‖M‖ even where the Gram eigenvalue is not
    let mv_raw = m * &eig.vectors;
    let norms: Vec<f64> = (0..cols)
        .map(|j| mv_raw.column(j).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    let values: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let v = eig.vectors.select_columns(&order);
    let mv = mv_raw.select_columns(&order);
    let sigma_max = values.first().copied().unwrap_or(0.0);
    let recover_floor = sigma_max * 1e-13;

    let mut slots: Vec<Option<Vec<C64>>> = vec![None; cols];
    let mut accepted: Vec<Vec<C64>> = Vec::with_capacity(cols);
    for (j, &s) in values.iter().enumerate() {
        if s > recover_floor && s > 0.0 {
            let col: Vec<C64> = mv.column(j).into_iter().map(|z| z / s).collect();
            if let Some(c) = orthonormalize_against(col, &accepted, 0.5) {
                accepted.push(c.clone());
                slots[j] = Some(c);
            }
        }
    }
    // complete missing left vectors from the standard basis
    for slot in slots.iter_mut().filter(|s| s.is_none()) {
        for e in 0..rows {
            let mut cand = vec![C64::new(0.0, 0.0); rows];
            cand[e] = C64::new(1.0, 0.0);
            if let Some(c) = orthonormalize_against(cand, &accepted, 1e-3) {
                accepted.push(c.clone());
                *slot = Some(c);
                break;
            }
        }
    }
    let u_final: Vec<Vec<C64>> = slots.into_iter().map(|c| c.expect("completion")).collect();
    Ok(Svd { u: CMat::from_columns(rows, &u_final), values, v })
}
