//! Geodesics, charts and the Riemann distance on the manifold of rank-`r`
//! projections.
//!
//! A tangent vector `u` at `a` splits as `a = a0 + Σ a_k`, `u = Σ ξ_k u_k`
//! with each `(a_k, u_k)` generating a copy of `Sym(R,2)`. On each copy the
//! geodesic is `cos²(ξt) a_k + ½ sin(2ξt) u_k + sin²(ξt) c_k` with
//! `c_k = u_k a u_k`, and the full geodesic is the sum of the blocks plus `a0`.

use crate::error::{Error, Result};
use crate::jordan::{jprod, peirce, PeirceIndex, PeirceReflection, Projection};
use crate::matrix::{herm_eig, CMat, HermMat, Tolerances};
use crate::pair::principal_angles;
use crate::tangent::{decompose_tangent, odd_calculus, OddFunction, TangentVec};

#[derive(Debug, Clone)]
pub struct GeodesicBlock {
    pub projection: Projection,
    pub tripotent: HermMat,
    /// `c_k = u_k a u_k = u_k² − a_k`.
    pub opposite: HermMat,
    pub xi: f64,
}

/// Closed-form geodesic `t ↦ γ(t)` with `γ(0) = a`, `γ'(0) = u`.
#[derive(Debug, Clone)]
pub struct Geodesic {
    velocity: TangentVec,
    a0: Projection,
    blocks: Vec<GeodesicBlock>,
}

pub fn geodesic(u: &TangentVec, tol: &Tolerances) -> Result<Geodesic> {
    let dec = decompose_tangent(u, tol)?;
    let a = u.base().cmat();
    let blocks = dec
        .blocks
        .into_iter()
        .map(|b| {
            let t = b.tripotent.mat();
            let opposite = HermMat::new_unchecked(&(t * a) * t);
            GeodesicBlock { projection: b.projection, tripotent: b.tripotent, opposite, xi: b.xi }
        })
        .collect();
    Ok(Geodesic { velocity: u.clone(), a0: dec.a0, blocks })
}

impl Geodesic {
    pub fn base(&self) -> &Projection {
        self.velocity.base()
    }

    pub fn velocity(&self) -> &TangentVec {
        &self.velocity
    }

    pub fn a0(&self) -> &Projection {
        &self.a0
    }

    pub fn blocks(&self) -> &[GeodesicBlock] {
        &self.blocks
    }

    pub fn eval_matrix(&self, t: f64) -> HermMat {
        self.blocks.iter().fold(self.a0.mat().clone(), |acc, b| {
            let (s, c) = (b.xi * t).sin_cos();
            acc.add(&b.projection.mat().scale(c * c))
                .add(&b.tripotent.scale(s * c))
                .add(&b.opposite.scale(s * s))
        })
    }

    pub fn eval(&self, t: f64) -> Projection {
        Projection::from_parts(self.eval_matrix(t), self.base().rank())
    }

    /// The anti-Hermitian generator `Σ ξ_k (u_k a_k − a_k u_k)`, so that
    /// `γ(t) = exp(tD) a exp(−tD)`.
    pub fn generator(&self) -> CMat {
        let n = self.base().n();
        self.blocks.iter().fold(CMat::zeros(n, n), |acc, b| {
            let (p, u) = (b.projection.cmat(), b.tripotent.mat());
            &acc + &(&(u * p) - &(p * u)).scale(b.xi)
        })
    }
}

/// Jordan inverse of `P1(a)b` inside `V1(a)`, or `AntipodalPair`.
fn inverse_in_peirce_one(a: &Projection, b: &Projection, tol: &Tolerances) -> Result<HermMat> {
    let qa = a.range_basis()?;
    let m = HermMat::new_unchecked(&(&qa.adjoint() * b.cmat()) * &qa);
    let e = herm_eig(&m)?;
    let min = e.values.last().copied().unwrap_or(1.0);
    if min < tol.tol_invert {
        return Err(Error::AntipodalPair { min_eigenvalue: min });
    }
    let inv = e.reconstruct_with(|x| 1.0 / x);
    Ok(HermMat::new_unchecked(&(&qa * inv.mat()) * &qa.adjoint()))
}

fn check_ranks(a: &Projection, b: &Projection) -> Result<()> {
    a.mat().check_same_dim(b.mat())?;
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch { a: a.rank(), b: b.rank() });
    }
    Ok(())
}

/// Chart `Φ_a(b) = 2 (P1(a)b)⁻¹ ∘ P½(a)b`.
pub fn chart_phi(a: &Projection, b: &Projection, tol: &Tolerances) -> Result<TangentVec> {
    check_ranks(a, b)?;
    if a.rank() == 0 {
        return Ok(TangentVec::zero(a.clone()));
    }
    let inv = inverse_in_peirce_one(a, b, tol)?;
    let half = peirce(a, PeirceIndex::Half, b.mat())?;
    let v = jprod(&inv, &half)?.scale(2.0);
    // V1 ∘ V½ ⊂ V½ holds exactly; re-project to drop rounding
    let v = peirce(a, PeirceIndex::Half, &v)?;
    Ok(TangentVec::from_parts(a.clone(), v))
}

/// Inverse chart `Ψ_a(v) = γ_{a, arctan v}(1)`.
pub fn chart_psi(v: &TangentVec, tol: &Tolerances) -> Result<Projection> {
    let w = odd_calculus(v, OddFunction::Arctan, tol)?;
    Ok(geodesic(&w, tol)?.eval(1.0))
}

/// Tangent `u` at `a` with `γ_{a,u}(1) = b` and every `ξ_k ∈ (0, π/2)`.
pub fn log_map(a: &Projection, b: &Projection, tol: &Tolerances) -> Result<TangentVec> {
    let v = chart_phi(a, b, tol)?;
    odd_calculus(&v, OddFunction::Arctan, tol)
}

/// Levi norm `√(tr(u²)/2)`, scaled so minimal tripotents have norm one.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LeviNorm(pub f64);

impl LeviNorm {
    pub fn value(self) -> f64 {
        self.0
    }
}

pub fn levi_norm(u: &TangentVec) -> LeviNorm {
    LeviNorm(trace_norm(u.mat()))
}

/// `√(tr(x²)/2)` for Hermitian `x`.
pub(crate) fn trace_norm(x: &HermMat) -> f64 {
    let sq = x.mat().as_slice().iter().map(|z| z.norm_sqr()).sum::<f64>();
    (sq / 2.0).sqrt()
}

/// Riemann distance `(Σ θ_k²)^{1/2}` over the principal angles, with `π/2`
/// for directions of `a` orthogonal to `b`.
pub fn distance(a: &Projection, b: &Projection, tol: &Tolerances) -> Result<f64> {
    let angles = principal_angles(a, b, tol)?;
    Ok(angles.expanded().iter().map(|t| t * t).sum::<f64>().sqrt())
}

/// Geodesic midpoint `c = γ(½)` and the reflection `S(c)` that swaps `a` and `b`.
pub fn midpoint_symmetry(
    a: &Projection,
    b: &Projection,
    tol: &Tolerances,
) -> Result<(Projection, PeirceReflection)> {
    let u = log_map(a, b, tol)?;
    let c = geodesic(&u, tol)?.eval(0.5);
    Ok((c.clone(), PeirceReflection::new(c)))
}

/// `‖P½(γ(t)) (γ(t+h) − 2γ(t) + γ(t−h)) / h²‖`: the tangential part of the
/// finite-difference acceleration, which vanishes for a geodesic.
pub fn connection_residual(g: &Geodesic, t: f64, h: f64) -> f64 {
    assert!(h > 0.0, "step must be positive");
    let mid = g.eval(t);
    let second = g.eval_matrix(t + h).sub(&mid.mat().scale(2.0)).add(&g.eval_matrix(t - h)).scale(1.0 / (h * h));
    peirce(&mid, PeirceIndex::Half, &second).expect("same dimension").op_norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;
    use crate::fixtures::*;
    use crate::matrix::{expm, is_projection, op_norm};
    use crate::pair::is_antipodal;
    use crate::tangent::resolve;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn ax() -> TangentVec {
        TangentVec::new(sym_a(), sym_x(), &tol()).unwrap()
    }

    #[test]
    fn zero_velocity_is_constant() {
        let mut rng = rng(1);
        let a = random_projection(&mut rng, 5, 2);
        let g = geodesic(&TangentVec::zero(a.clone()), &tol()).unwrap();
        for t in [0.0, 0.7, -3.0] {
            assert!(g.eval(t).mat().dist(a.mat()) < 1e-14);
            assert_eq!(connection_residual(&g, t, 1e-3), 0.0);
        }
    }

    #[test]
    fn sym2_geodesic_is_b_of_t() {
        let g = geodesic(&ax(), &tol()).unwrap();
        let quarter = HermMat::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]);
        assert!(g.eval(std::f64::consts::FRAC_PI_4).mat().dist(&quarter) < 1e-15);
        assert!(g.eval(FRAC_PI_2).mat().dist(sym_c().mat()) < 1e-15);
        assert!(g.eval(0.0).mat().dist(sym_a().mat()) == 0.0);
        for t in [0.3, 1.2, 2.9] {
            assert!(g.eval(t + std::f64::consts::PI).mat().dist(g.eval(t).mat()) < 1e-14);
        }
        assert!(connection_residual(&g, 0.3, 1e-3) <= 1e-5);
    }

    #[test]
    fn matches_conjugation_and_is_projection() {
        let mut rng = rng(2);
        for &(n, r) in &[(4, 1), (6, 2), (9, 3)] {
            let a = random_projection(&mut rng, n, r);
            let u = random_tangent(&mut rng, &a, 1.0);
            let g = geodesic(&u, &tol()).unwrap();
            let d = crate::jordan::derivation_matrix(&u);
            assert!(op_norm(&(&g.generator() - &d)) <= 1e-9);
            for k in 1..=20 {
                let t = 0.1 * k as f64;
                let q = expm(&d.scale(t)).unwrap();
                let want = HermMat::new_unchecked(&(&q * a.cmat()) * &q.adjoint());
                let got = g.eval(t);
                assert!(got.mat().dist(&want) <= 1e-9);
                assert_eq!(is_projection(got.mat(), &tol()), (true, r));
            }
            // γ'(0) = u by central difference
            let h = 1e-5;
            let fd = g.eval_matrix(h).sub(&g.eval_matrix(-h)).scale(0.5 / h);
            assert!(fd.dist(u.mat()) <= 1e-8);
        }
    }

    #[test]
    fn charts_on_sym2() {
        for theta in [0.2, 0.9, 1.4] {
            let v = chart_phi(&sym_a(), &sym_b(theta), &tol()).unwrap();
            assert!(v.mat().dist(&sym_x().scale(theta.tan())) < 1e-12);
            let b = chart_psi(&TangentVec::new(sym_a(), sym_x().scale(theta.tan()), &tol()).unwrap(), &tol()).unwrap();
            assert!(b.mat().dist(sym_b(theta).mat()) < 1e-12);
            let u = log_map(&sym_a(), &sym_b(theta), &tol()).unwrap();
            assert!(u.mat().dist(&sym_x().scale(theta)) < 1e-12);
            assert!((distance(&sym_a(), &sym_b(theta), &tol()).unwrap() - theta).abs() < 1e-12);
            let (c, sigma) = midpoint_symmetry(&sym_a(), &sym_b(theta), &tol()).unwrap();
            assert!(c.mat().dist(sym_b(theta / 2.0).mat()) < 1e-12);
            assert!(sigma.apply(sym_a().mat()).unwrap().dist(sym_b(theta).mat()) < 1e-12);
        }
        assert!(chart_phi(&sym_a(), &sym_a(), &tol()).unwrap().is_zero());
        assert!(chart_psi(&TangentVec::zero(sym_a()), &tol()).unwrap().mat().dist(sym_a().mat()) == 0.0);
        assert!(log_map(&sym_a(), &sym_a(), &tol()).unwrap().is_zero());
    }

    #[test]
    fn antipodal_pair_rejected() {
        assert!(matches!(chart_phi(&sym_a(), &sym_c(), &tol()), Err(Error::AntipodalPair { .. })));
        assert!(matches!(log_map(&sym_a(), &sym_c(), &tol()), Err(Error::AntipodalPair { .. })));
        assert!(matches!(midpoint_symmetry(&sym_a(), &sym_c(), &tol()), Err(Error::AntipodalPair { .. })));
        assert!((distance(&sym_a(), &sym_c(), &tol()).unwrap() - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn log_map_endpoint_and_normalization() {
        let mut rng = rng(3);
        for &(n, r) in &[(4, 2), (8, 3), (10, 2)] {
            let a = random_projection(&mut rng, n, r);
            let b = random_projection(&mut rng, n, r);
            let u = log_map(&a, &b, &tol()).unwrap();
            let g = geodesic(&u, &tol()).unwrap();
            assert!(g.eval(1.0).mat().dist(b.mat()) <= 1e-8);
            assert!(resolve(&u, &tol()).unwrap().xis().iter().all(|&x| x > 0.0 && x < FRAC_PI_2));
            let d = distance(&a, &b, &tol()).unwrap();
            assert!((levi_norm(&u).value() - d).abs() <= 1e-8);
            let (_, sigma) = midpoint_symmetry(&a, &b, &tol()).unwrap();
            assert!(sigma.apply(a.mat()).unwrap().dist(b.mat()) <= 1e-8);
            assert!(sigma.apply(b.mat()).unwrap().dist(a.mat()) <= 1e-8);
            assert!(!is_antipodal(&a, &chart_psi(&random_tangent(&mut rng, &a, 5.0), &tol()).unwrap(), &tol()).unwrap());
        }
    }

    #[test]
    fn levi_norm_examples() {
        assert!((levi_norm(&ax()).value() - 1.0).abs() < 1e-15);
        assert_eq!(levi_norm(&TangentVec::zero(sym_a())).value(), 0.0);
        let mut rng = rng(4);
        let w = random_unitary(&mut rng, 8);
        let thetas = [0.3, 0.7, 1.2];
        let (a, _) = pair_with_angles(8, &thetas, &w);
        // u = Σ θ_k v_k with v_k the minimal tripotents e_k e_{r+k}* + h.c.
        let mut block = CMat::zeros(3, 5);
        for (k, t) in thetas.iter().enumerate() {
            block[(k, k)] = (*t).into();
        }
        let u = tangent_from_block(&a, &block);
        let want = thetas.iter().map(|t| t * t).sum::<f64>().sqrt();
        assert!((levi_norm(&u).value() - want).abs() < 1e-12);
    }

    #[test]
    fn constructed_rank_two_distance() {
        let mut rng = rng(5);
        let w = random_unitary(&mut rng, 4);
        let (t1, t2) = (0.35, 1.05);
        let (a, b) = pair_with_angles(4, &[t1, t2], &w);
        let d = distance(&a, &b, &tol()).unwrap();
        assert!((d - (t1 * t1 + t2 * t2).sqrt()).abs() < 1e-10);
    }
}
