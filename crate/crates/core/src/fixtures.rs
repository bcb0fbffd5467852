//! Reproducible test data: random Hermitian matrices, projections and tangent
//! vectors, and the real 2x2 model `Sym(R,2)` with its projections `B(θ)`.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;

use crate::jordan::{peirce, PeirceIndex, Projection};
use crate::matrix::{orthonormalize_against, CMat, HermMat, Tolerances, C64};
use crate::tangent::TangentVec;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn random_cmat<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMat {
    CMat::from_fn(rows, cols, |_, _| gaussian(rng))
}

pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> HermMat {
    HermMat::new_unchecked(random_cmat(rng, n, n))
}

/// `n x r` matrix with orthonormal columns drawn from the complex Gaussian ensemble.
pub fn random_orthonormal<R: Rng + ?Sized>(rng: &mut R, n: usize, r: usize) -> CMat {
    assert!(r <= n);
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(r);
    while cols.len() < r {
        let v: Vec<C64> = (0..n).map(|_| gaussian(rng)).collect();
        if let Some(c) = orthonormalize_against(v, &cols, 1e-6) {
            cols.push(c);
        }
    }
    CMat::from_columns(n, &cols)
}

/// Haar-random `n x n` unitary.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMat {
    random_orthonormal(rng, n, n)
}

pub fn random_projection<R: Rng + ?Sized>(rng: &mut R, n: usize, r: usize) -> Projection {
    Projection::from_orthonormal_columns(&random_orthonormal(rng, n, r))
}

/// Random tangent vector at `a`: the Peirce-½ part of a Gaussian Hermitian
/// matrix, scaled by `scale`.
pub fn random_tangent<R: Rng + ?Sized>(rng: &mut R, a: &Projection, scale: f64) -> TangentVec {
    let x = random_hermitian(rng, a.n());
    let u = peirce(a, PeirceIndex::Half, &x).expect("same dimension").scale(scale);
    TangentVec::new(a.clone(), u, &Tolerances::default()).expect("Peirce-½ part is tangent")
}

/// `B(θ) = [[cos²θ, ½ sin 2θ], [½ sin 2θ, sin²θ]]`.
pub fn sym_b(theta: f64) -> Projection {
    let (s, c) = theta.sin_cos();
    let m = HermMat::from_real_rows(&[&[c * c, s * c], &[s * c, s * s]]);
    Projection::from_parts(m, 1)
}

/// `A = B(0) = diag(1, 0)`.
pub fn sym_a() -> Projection {
    Projection::from_parts(HermMat::from_diag(&[1.0, 0.0]), 1)
}

/// `C = B(π/2) = diag(0, 1)`.
pub fn sym_c() -> Projection {
    Projection::from_parts(HermMat::from_diag(&[0.0, 1.0]), 1)
}

/// The tripotent `X = [[0, 1], [1, 0]]`.
pub fn sym_x() -> HermMat {
    HermMat::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
}

/// `V x V*` for an isometry `V` (`n x k`, orthonormal columns) and `k x k` `x`.
pub fn embed(x: &HermMat, v: &CMat) -> HermMat {
    HermMat::new_unchecked(&(v * x.mat()) * &v.adjoint())
}

pub fn embed_projection(p: &Projection, v: &CMat) -> Projection {
    Projection::from_parts(embed(p.mat(), v), p.rank())
}

/// Equal-rank pair with prescribed principal angles in `C^n`, `n >= 2r`:
/// `a = span{e_k}`, `b = span{cos θ_k e_k + sin θ_k e_{r+k}}`, both rotated by `w`.
pub fn pair_with_angles(n: usize, thetas: &[f64], w: &CMat) -> (Projection, Projection) {
    let r = thetas.len();
    assert!(2 * r <= n);
    let qa = CMat::from_fn(n, r, |i, j| C64::new(if i == j { 1.0 } else { 0.0 }, 0.0));
    let qb = CMat::from_fn(n, r, |i, j| {
        let (s, c) = thetas[j].sin_cos();
        let x = if i == j {
            c
        } else if i == r + j {
            s
        } else {
            0.0
        };
        C64::new(x, 0.0)
    });
    (
        Projection::from_orthonormal_columns(&(w * &qa)),
        Projection::from_orthonormal_columns(&(w * &qb)),
    )
}

/// Tangent vector at `a` given by a block matrix `B` from `range(1−a)` to `range(a)`:
/// `u = Qa B Qc* + Qc B* Qa*`.
pub fn tangent_from_block(a: &Projection, block: &CMat) -> TangentVec {
    let qa = a.range_basis().expect("eig");
    let qc = a.complement().range_basis().expect("eig");
    let half = &(&qa * block) * &qc.adjoint();
    let u = HermMat::new_unchecked(&half + &half.adjoint());
    TangentVec::new(a.clone(), u, &Tolerances::default()).expect("tangent by construction")
}
