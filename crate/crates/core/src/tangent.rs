//! Tangent vectors at a projection and their triple-spectral resolution.
//!
//! A tangent vector at `a` is a Hermitian `u` in the Peirce-½ space of `a`,
//! i.e. `au + ua = u`. In a basis adapted to `a` it has the block form
//! `[[0, B], [B*, 0]]`, so its nonzero eigenvalues come in pairs `±σ_j`
//! with `σ_j` the singular values of `B`. Grouping those pairs into clusters
//! gives the resolution `u = Σ ξ_k u_k` into pairwise orthogonal tripotents
//! `u_k = P(+ξ_k) − P(−ξ_k)` (difference of eigenprojections).

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::jordan::{jprod_raw, Projection};
use crate::matrix::{herm_eig, op_norm, CMat, HermMat, Tolerances};

/// `u ∈ V½(a)` together with its base point `a`.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVec {
    base: Projection,
    mat: HermMat,
}

impl TangentVec {
    pub fn new(base: Projection, mat: HermMat, tol: &Tolerances) -> Result<Self> {
        base.mat().check_same_dim(&mat)?;
        let residual = tangent_residual(&base, &mat);
        if residual > tol.tol_eq {
            return Err(Error::TangentViolation { residual });
        }
        Ok(TangentVec { base, mat })
    }

    pub(crate) fn from_parts(base: Projection, mat: HermMat) -> Self {
        TangentVec { base, mat }
    }

    pub fn zero(base: Projection) -> Self {
        let n = base.n();
        TangentVec { base, mat: HermMat::zeros(n) }
    }

    pub fn base(&self) -> &Projection {
        &self.base
    }

    pub fn mat(&self) -> &HermMat {
        &self.mat
    }

    pub fn scale(&self, s: f64) -> TangentVec {
        TangentVec { base: self.base.clone(), mat: self.mat.scale(s) }
    }

    pub fn is_zero(&self) -> bool {
        self.mat.max_abs() == 0.0
    }
}

/// `‖a∘u − u/2‖`.
pub fn tangent_residual(a: &Projection, u: &HermMat) -> f64 {
    let au = jprod_raw(a.cmat(), u.mat());
    au.sub(&u.scale(0.5)).op_norm()
}

/// One term `ξ_k u_k` of a spectral resolution.
#[derive(Debug, Clone)]
pub struct SpectralTerm {
    pub xi: f64,
    pub tripotent: HermMat,
    /// Rank of the projection `a u_k²` (number of singular values in the cluster).
    pub multiplicity: usize,
}

/// `u = Σ ξ_k u_k` with `0 < ξ_1 < ξ_2 < …` and pairwise orthogonal tripotents.
#[derive(Debug, Clone)]
pub struct SpectralResolution {
    pub terms: Vec<SpectralTerm>,
}

impl SpectralResolution {
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn xis(&self) -> Vec<f64> {
        self.terms.iter().map(|t| t.xi).collect()
    }

    /// `Σ f(ξ_k) u_k` in dimension `n`.
    pub fn reconstruct_with(&self, n: usize, f: impl Fn(f64) -> f64) -> HermMat {
        self.terms
            .iter()
            .fold(HermMat::zeros(n), |acc, t| acc.add(&t.tripotent.scale(f(t.xi))))
    }

    pub fn reconstruct(&self, n: usize) -> HermMat {
        self.reconstruct_with(n, |x| x)
    }
}

/// Triple-spectral resolution of a tangent vector.
pub fn resolve(u: &TangentVec, tol: &Tolerances) -> Result<SpectralResolution> {
    let n = u.mat.n();
    if u.is_zero() {
        return Ok(SpectralResolution { terms: Vec::new() });
    }
    let eig = herm_eig(&u.mat)?;
    let mut pairs: Vec<(f64, usize)> = eig
        .values
        .iter()
        .enumerate()
        .filter(|(_, v)| v.abs() > tol.tol_cluster)
        .map(|(j, v)| (v.abs(), j))
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));

    let mut terms = Vec::new();
    let mut start = 0;
    while start < pairs.len() {
        let mut end = start + 1;
        while end < pairs.len() && pairs[end].0 - pairs[end - 1].0 <= tol.tol_cluster {
            end += 1;
        }
        let cluster = &pairs[start..end];
        let xi = cluster.iter().map(|p| p.0).sum::<f64>() / cluster.len() as f64;
        let mut tri = CMat::zeros(n, n);
        let mut positive = 0;
        for &(_, j) in cluster {
            let sign = eig.values[j].signum();
            if sign > 0.0 {
                positive += 1;
            }
            let col = eig.vectors.column(j);
            for r in 0..n {
                for c in 0..n {
                    tri[(r, c)] += col[r] * col[c].conj() * sign;
                }
            }
        }
        terms.push(SpectralTerm { xi, tripotent: HermMat::new_unchecked(tri), multiplicity: positive });
        start = end;
    }
    if terms.iter().map(|t| t.multiplicity).sum::<usize>() > u.base.rank() {
        return Err(Error::NumericalFailure("spectral resolution exceeds rank of base projection".into()));
    }
    Ok(SpectralResolution { terms })
}

/// A block `(a_k, u_k, ξ_k)` of the tangent decomposition.
#[derive(Debug, Clone)]
pub struct TangentBlock {
    pub projection: Projection,
    pub tripotent: HermMat,
    pub xi: f64,
}

/// `a = a_0 + Σ a_k`, `u = Σ ξ_k u_k` with `u_k ∈ V½(a_k)`, `a_k u_k² = a_k`, `a_0 u = 0`.
#[derive(Debug, Clone)]
pub struct TangentDecomposition {
    pub a0: Projection,
    pub blocks: Vec<TangentBlock>,
}

pub fn decompose_tangent(u: &TangentVec, tol: &Tolerances) -> Result<TangentDecomposition> {
    let res = resolve(u, tol)?;
    let a = u.base.cmat();
    let mut a0 = u.base.mat().clone();
    let mut used = 0;
    let mut blocks = Vec::with_capacity(res.len());
    for term in res.terms {
        let sq = term.tripotent.mat() * term.tripotent.mat();
        let ak = jprod_raw(a, &sq);
        a0 = a0.sub(&ak);
        used += term.multiplicity;
        blocks.push(TangentBlock {
            projection: Projection::from_parts(ak, term.multiplicity),
            tripotent: term.tripotent,
            xi: term.xi,
        });
    }
    let a0 = Projection::from_parts(a0, u.base.rank() - used);
    Ok(TangentDecomposition { a0, blocks })
}

/// Odd scalar functions usable in the tangent functional calculus.
#[derive(Debug, Clone, Copy)]
pub enum OddFunction {
    Tan,
    Arctan,
    Scale(f64),
    Custom(fn(f64) -> f64),
}

impl OddFunction {
    pub fn apply(self, x: f64) -> f64 {
        match self {
            OddFunction::Tan => x.tan(),
            OddFunction::Arctan => x.atan(),
            OddFunction::Scale(t) => t * x,
            OddFunction::Custom(f) => f(x),
        }
    }
}

/// `Σ f(ξ_k) u_k` over the resolution of `u`.
pub fn odd_calculus(u: &TangentVec, f: OddFunction, tol: &Tolerances) -> Result<TangentVec> {
    let res = resolve(u, tol)?;
    if let OddFunction::Tan = f {
        if let Some(t) = res.terms.iter().find(|t| t.xi >= FRAC_PI_2 - tol.tol_eq) {
            return Err(Error::DomainViolation { value: t.xi });
        }
    }
    let mat = res.reconstruct_with(u.mat.n(), |x| f.apply(x));
    Ok(TangentVec { base: u.base.clone(), mat })
}

/// Outcome of checking the two-generated subalgebra `V[a,u] = Span{a, u, u²}`.
#[derive(Debug, Clone)]
pub struct TwoGeneratedReport {
    /// `c = u² − a`.
    pub c: HermMat,
    /// Largest residual over idempotency of `c`, `ac = 0`, the unit property
    /// of `u²` and the full product table on `{a, u, u², c}`.
    pub max_residual: f64,
}

/// Verifies the structure of `V[a,u]` for a tripotent `u ∈ V½(a)` with `a∘u² = a`.
pub fn check_two_generated(u: &TangentVec, tol: &Tolerances) -> Result<TwoGeneratedReport> {
    let a = u.base.cmat();
    let um = u.mat.mat();
    let u2 = um * um;
    let u3 = &u2 * um;
    let tripotent_defect = op_norm(&(&u3 - um));
    if tripotent_defect > tol.tol_eq {
        return Err(Error::PreconditionViolation(format!(
            "u is not a tripotent: |u^3 - u| = {tripotent_defect:e}"
        )));
    }
    let unit_defect = op_norm(&(jprod_raw(a, &u2).mat() - a));
    if unit_defect > tol.tol_eq {
        return Err(Error::PreconditionViolation(format!("a∘u² != a: residual {unit_defect:e}")));
    }

    let c = HermMat::new_unchecked(&u2 - a);
    let cm = c.mat();
    let zero = CMat::zeros(a.rows(), a.cols());
    let half_u = um.scale(0.5);
    let jp = |x: &CMat, y: &CMat| jprod_raw(x, y).into_mat();
    let checks: Vec<(CMat, CMat)> = vec![
        (cm * cm, cm.clone()),
        (a * cm, zero.clone()),
        (jp(a, a), a.clone()),
        (jp(a, um), half_u.clone()),
        (jp(a, &u2), a.clone()),
        (jp(a, cm), zero),
        (jp(um, um), u2.clone()),
        (jp(um, &u2), um.clone()),
        (jp(um, cm), half_u),
        (jp(&u2, &u2), u2.clone()),
        (jp(&u2, cm), cm.clone()),
        (jp(cm, cm), cm.clone()),
        (a + cm, u2.clone()),
    ];
    let max_residual = checks.iter().map(|(x, y)| op_norm(&(x - y))).fold(0.0, f64::max);
    Ok(TwoGeneratedReport { c, max_residual })
}
