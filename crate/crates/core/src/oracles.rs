//! Brute-force verifiers. These deliberately avoid the production code paths
//! they check and use only the matrix kernels: the conjugation orbit replaces
//! the closed-form geodesic, the singular values of `Qa* Qb` replace the
//! pair decomposition, and chordal sums replace the Levi-norm integral.

use crate::error::{Error, Result};
use crate::jordan::{g_op, Projection};
use crate::matrix::{expm, herm_eig, svd, CMat, HermMat};
use crate::pair::PrincipalAngles;
use crate::tangent::TangentVec;

/// `Q a Q*` with `Q = exp(t(ua − au))`.
pub fn conjugation_orbit(u: &TangentVec, t: f64) -> Result<Projection> {
    let a = u.base().cmat();
    let um = u.mat().mat();
    let d = &(um * a) - &(a * um);
    let q = expm(&d.scale(t))?;
    let orbit = HermMat::new_unchecked(&(&q * a) * &q.adjoint());
    Projection::new(orbit, &Default::default())
}

/// Partial sum `Σ_{k<terms} t^k/k! G(a,u)^k a`, applying `G(a,u)` term by term.
pub fn series_g_apply(u: &TangentVec, t: f64, terms: usize) -> Result<HermMat> {
    if terms == 0 {
        return Err(Error::PreconditionViolation("series needs at least one term".into()));
    }
    let mut term = u.base().mat().clone();
    let mut sum = term.clone();
    for k in 1..terms {
        term = g_op(u, &term)?.scale(t / k as f64);
        sum = sum.add(&term);
    }
    Ok(sum)
}

fn range_columns(p: &Projection) -> Result<CMat> {
    let e = herm_eig(p.mat())?;
    let idx: Vec<usize> = e.values.iter().enumerate().filter(|(_, &v)| v > 0.5).map(|(j, _)| j).collect();
    Ok(e.vectors.select_columns(&idx))
}

/// Principal angles as `arccos` of the singular values of `Qa* Qb`.
pub fn principal_angles_svd(a: &Projection, b: &Projection) -> Result<PrincipalAngles> {
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch { a: a.rank(), b: b.rank() });
    }
    let qa = range_columns(a)?;
    let qb = range_columns(b)?;
    if qa.cols() == 0 {
        return Ok(PrincipalAngles { thetas: vec![], multiplicities: vec![] });
    }
    let s = svd(&(&qa.adjoint() * &qb))?;
    let angles = s.values.iter().map(|c| c.clamp(0.0, 1.0).acos()).collect();
    Ok(PrincipalAngles::from_angles(angles, 0.0))
}

/// Sum of chordal increments `√(tr((p_{i+1} − p_i)²)/2)` along sampled points.
pub fn path_length(samples: &[HermMat]) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::PreconditionViolation("path needs at least two samples".into()));
    }
    Ok(samples
        .windows(2)
        .map(|w| {
            let diff = &(w[1].mat() - w[0].mat());
            (diff.frobenius().powi(2) / 2.0).sqrt()
        })
        .sum())
}
