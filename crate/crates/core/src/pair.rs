//! Relative position of two projections of equal rank.
//!
//! The compression `M = Qa* b Qa` of `P(a)b = aba` to `range(a)` has spectrum
//! in `[0, 1]`. Its eigenvalue-1 eigenspace is `range(a) ∩ range(b)` (the
//! shared part), its kernel is the part of `a` orthogonal to `b`, and every
//! interior eigenvalue `λ = cos²θ` gives a rank-one pair `(a_k, b_k)` spanning
//! a copy of `Sym(R,2)` with `P(a_k)b_k = λ a_k`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::jordan::{jprod_raw, Projection};
use crate::matrix::{herm_eig, op_norm, CMat, HermMat, Tolerances, C64};

/// One rank-one pair in general position.
#[derive(Debug, Clone)]
pub struct MinimalPair {
    pub lambda: f64,
    pub a: Projection,
    pub b: Projection,
}

impl MinimalPair {
    /// Principal angle `θ = arccos √λ`.
    pub fn angle(&self) -> f64 {
        self.lambda.clamp(0.0, 1.0).sqrt().acos()
    }
}

/// `a = a0 + shared + Σ a_k`, `b = b0 + shared + Σ b_k`.
#[derive(Debug, Clone)]
pub struct PairDecomposition {
    /// Parts of `a` and `b` with `a0 b0 = 0`.
    pub a0: Projection,
    pub b0: Projection,
    /// `range(a) ∩ range(b)`.
    pub shared: Projection,
    /// Rank-one pairs with `0 < λ < 1`, ordered by decreasing `λ`.
    pub minimal: Vec<MinimalPair>,
}

impl PairDecomposition {
    pub fn case_ranks(&self) -> (usize, usize, usize) {
        (self.a0.rank(), self.shared.rank(), self.minimal.len())
    }
}

/// Principal angles, grouped: distinct values ascending with multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct PrincipalAngles {
    pub thetas: Vec<f64>,
    pub multiplicities: Vec<usize>,
}

impl PrincipalAngles {
    /// Groups angles whose consecutive gap (after sorting) is at most `merge_tol`.
    pub fn from_angles(mut angles: Vec<f64>, merge_tol: f64) -> Self {
        angles.sort_by(f64::total_cmp);
        let mut thetas: Vec<f64> = Vec::new();
        let mut multiplicities: Vec<usize> = Vec::new();
        let mut last = f64::NEG_INFINITY;
        for t in angles {
            match thetas.last_mut() {
                Some(_) if t - last <= merge_tol => {
                    *multiplicities.last_mut().unwrap() += 1;
                }
                _ => {
                    thetas.push(t);
                    multiplicities.push(1);
                }
            }
            last = t;
        }
        PrincipalAngles { thetas, multiplicities }
    }

    /// All angles with repetition, ascending.
    pub fn expanded(&self) -> Vec<f64> {
        self.thetas
            .iter()
            .zip(&self.multiplicities)
            .flat_map(|(&t, &m)| std::iter::repeat_n(t, m))
            .collect()
    }

    pub fn count(&self) -> usize {
        self.multiplicities.iter().sum()
    }
}

fn check_pair(a: &Projection, b: &Projection) -> Result<()> {
    a.mat().check_same_dim(b.mat())?;
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch { a: a.rank(), b: b.rank() });
    }
    Ok(())
}

/// Orthonormal basis of `range(a)` and the eigen-decomposition of `Qa* b Qa`.
struct Compression {
    qa: CMat,
    values: Vec<f64>,
    vectors: CMat,
}

fn compress(a: &Projection, b: &Projection) -> Result<Compression> {
    let qa = a.range_basis()?;
    let m = HermMat::new_unchecked(&(&qa.adjoint() * b.cmat()) * &qa);
    let e = herm_eig(&m)?;
    Ok(Compression { qa, values: e.values, vectors: e.vectors })
}

fn outer(v: &[C64]) -> CMat {
    CMat::from_fn(v.len(), v.len(), |i, j| v[i] * v[j].conj())
}

pub fn decompose_pair(a: &Projection, b: &Projection, tol: &Tolerances) -> Result<PairDecomposition> {
    check_pair(a, b)?;
    let n = a.n();
    if a.rank() == 0 {
        return Err(Error::PreconditionViolation("pair decomposition needs rank >= 1".into()));
    }
    let comp = compress(a, b)?;
    let xs = &comp.qa * &comp.vectors;

    let mut shared = CMat::zeros(n, n);
    let mut a0 = CMat::zeros(n, n);
    let mut b_used = CMat::zeros(n, n);
    let (mut n_shared, mut n_zero) = (0, 0);
    let mut minimal = Vec::new();
    for (j, &lambda) in comp.values.iter().enumerate() {
        let x = xs.column(j);
        if lambda >= 1.0 - tol.tol_cluster {
            shared = &shared + &outer(&x);
            n_shared += 1;
        } else if lambda <= tol.tol_cluster {
            a0 = &a0 + &outer(&x);
            n_zero += 1;
        } else {
            let bx = b.cmat() * &CMat::from_columns(n, std::slice::from_ref(&x));
            let y: Vec<C64> = bx.column(0).into_iter().map(|z| z / lambda.sqrt()).collect();
            let bk = outer(&y);
            b_used = &b_used + &bk;
            minimal.push(MinimalPair {
                lambda,
                a: Projection::from_parts(HermMat::new_unchecked(outer(&x)), 1),
                b: Projection::from_parts(HermMat::new_unchecked(bk), 1),
            });
        }
    }
    let shared = Projection::from_parts(HermMat::new_unchecked(shared), n_shared);
    let b0 = HermMat::new_unchecked(&(b.cmat() - shared.cmat()) - &b_used);
    Ok(PairDecomposition {
        a0: Projection::from_parts(HermMat::new_unchecked(a0), n_zero),
        b0: Projection::from_parts(b0, n_zero),
        shared,
        minimal,
    })
}

/// Scalars `λ, μ` with `P(a)b = λa` and `P(b)a = μb`.
pub fn lambda_check(a: &Projection, b: &Projection, tol: &Tolerances) -> Result<(f64, f64)> {
    check_pair(a, b)?;
    let scalar_of = |p: &Projection, q: &Projection| -> Result<f64> {
        let pqp = HermMat::new_unchecked(&(p.cmat() * q.cmat()) * p.cmat());
        let lambda = if p.rank() == 0 { 0.0 } else { pqp.trace() / p.rank() as f64 };
        let residual = pqp.sub(&p.mat().scale(lambda)).op_norm();
        if residual > tol.tol_eq {
            return Err(Error::NotScalarPair { residual });
        }
        Ok(lambda)
    };
    let lambda = scalar_of(a, b)?;
    let mu = scalar_of(b, a)?;
    if (lambda - mu).abs() > 1e-9 || !(-1e-12..=1.0 + 1e-12).contains(&lambda) {
        return Err(Error::NumericalFailure(format!("inconsistent pair scalars λ = {lambda}, μ = {mu}")));
    }
    Ok((lambda, mu))
}

pub fn principal_angles(a: &Projection, b: &Projection, tol: &Tolerances) -> Result<PrincipalAngles> {
    check_pair(a, b)?;
    if a.rank() == 0 {
        return Ok(PrincipalAngles { thetas: vec![], multiplicities: vec![] });
    }
    let d = decompose_pair(a, b, tol)?;
    let mut angles = vec![0.0; d.shared.rank()];
    angles.extend(d.minimal.iter().map(MinimalPair::angle));
    angles.extend(std::iter::repeat_n(FRAC_PI_2, d.a0.rank()));
    Ok(PrincipalAngles::from_angles(angles, 0.0))
}

/// Smallest eigenvalue of `P(a)b` on `range(a)`.
pub fn min_compressed_eigenvalue(a: &Projection, b: &Projection) -> Result<f64> {
    check_pair(a, b)?;
    if a.rank() == 0 {
        return Ok(1.0);
    }
    let comp = compress(a, b)?;
    Ok(*comp.values.last().expect("rank >= 1"))
}

/// True when `P(a)b` is not invertible in `V1(a)`.
pub fn is_antipodal(a: &Projection, b: &Projection, tol: &Tolerances) -> Result<bool> {
    Ok(min_compressed_eigenvalue(a, b)? < tol.tol_invert)
}

/// Linear independence test for `{a_k, b_k, a_k∘b_k}`: smallest singular
/// value of their Gram matrix (real inner product `Re tr(x y)`).
pub fn span_gram_min_eigenvalue(pair: &MinimalPair) -> f64 {
    let ab = jprod_raw(pair.a.cmat(), pair.b.cmat());
    let elems = [pair.a.cmat(), pair.b.cmat(), ab.mat()];
    let g = CMat::from_fn(3, 3, |i, j| C64::new((elems[i] * elems[j]).trace().re, 0.0));
    herm_eig(&HermMat::new_unchecked(g)).map(|e| e.values[2]).unwrap_or(0.0)
}

/// Residuals of the decomposition invariants; max over all checks.
pub fn decomposition_residual(a: &Projection, b: &Projection, d: &PairDecomposition) -> f64 {
    let mut sum_a = d.a0.cmat() + d.shared.cmat();
    let mut sum_b = d.b0.cmat() + d.shared.cmat();
    let mut worst: f64 = 0.0;
    for k in &d.minimal {
        sum_a = &sum_a + k.a.cmat();
        sum_b = &sum_b + k.b.cmat();
        let pab = &(k.a.cmat() * k.b.cmat()) * k.a.cmat();
        let pba = &(k.b.cmat() * k.a.cmat()) * k.b.cmat();
        worst = worst.max(op_norm(&(&pab - &k.a.cmat().scale(k.lambda))));
        worst = worst.max(op_norm(&(&pba - &k.b.cmat().scale(k.lambda))));
    }
    worst = worst.max(op_norm(&(&sum_a - a.cmat())));
    worst = worst.max(op_norm(&(&sum_b - b.cmat())));
    worst = worst.max(op_norm(&(d.a0.cmat() * d.b0.cmat())));
    worst.max(d.b0.idempotency_residual())
}
