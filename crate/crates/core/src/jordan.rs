//! Jordan operator calculus on Hermitian matrices.
//!
//! The Jordan product is `x∘y = (xy + yx)/2`. Quadratic and triple products,
//! Peirce projectors and the inner derivation `G(a,u) = 2(u□a − a□u)` are
//! written in terms of that product; their associative closed forms
//! (`xyx`, `(abc + cba)/2`, block formulas, commutators) are used as
//! cross-checks in tests, except for the Peirce projectors, whose block
//! formula is the production path.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{herm_eig, is_projection, op_norm, CMat, HermMat, Tolerances};
use crate::tangent::TangentVec;

/// An orthogonal projection `p = p* = p²` of known rank.
#[derive(Clone, PartialEq)]
pub struct Projection {
    mat: HermMat,
    rank: usize,
}

impl fmt::Debug for Projection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Projection(rank {}) {:?}", self.rank, self.mat)
    }
}

impl Projection {
    pub fn new(mat: HermMat, tol: &Tolerances) -> Result<Self> {
        let sq = mat.mat() * mat.mat();
        let residual = op_norm(&(&sq - mat.mat()));
        let (ok, rank) = is_projection(&mat, tol);
        if !ok {
            return Err(Error::NotProjection { residual });
        }
        Ok(Projection { mat, rank })
    }

    /// Wraps a matrix already known to be a rank-`rank` projection.
    pub(crate) fn from_parts(mat: HermMat, rank: usize) -> Self {
        Projection { mat, rank }
    }

    /// `Q Q*` for a matrix `Q` with orthonormal columns.
    pub fn from_orthonormal_columns(q: &CMat) -> Self {
        Projection { mat: HermMat::new_unchecked(q * &q.adjoint()), rank: q.cols() }
    }

    pub fn zero(n: usize) -> Self {
        Projection { mat: HermMat::zeros(n), rank: 0 }
    }

    pub fn identity(n: usize) -> Self {
        Projection { mat: HermMat::identity(n), rank: n }
    }

    pub fn mat(&self) -> &HermMat {
        &self.mat
    }

    pub fn cmat(&self) -> &CMat {
        self.mat.mat()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn n(&self) -> usize {
        self.mat.n()
    }

    /// `1 − p`.
    pub fn complement(&self) -> Projection {
        Projection { mat: HermMat::identity(self.n()).sub(&self.mat), rank: self.n() - self.rank }
    }

    /// `n x rank` matrix whose orthonormal columns span `range(p)`.
    pub fn range_basis(&self) -> Result<CMat> {
        let e = herm_eig(&self.mat)?;
        let idx: Vec<usize> = (0..self.rank).collect();
        Ok(e.vectors.select_columns(&idx))
    }

    /// Projection residual `‖p² − p‖`.
    pub fn idempotency_residual(&self) -> f64 {
        op_norm(&(&(self.cmat() * self.cmat()) - self.cmat()))
    }
}

impl AsRef<HermMat> for Projection {
    fn as_ref(&self) -> &HermMat {
        &self.mat
    }
}

/// Index of a Peirce space: eigenvalue of `L(a)` on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PeirceIndex {
    One,
    Half,
    Zero,
}

impl PeirceIndex {
    pub const ALL: [PeirceIndex; 3] = [PeirceIndex::One, PeirceIndex::Half, PeirceIndex::Zero];

    pub fn value(self) -> f64 {
        match self {
            PeirceIndex::One => 1.0,
            PeirceIndex::Half => 0.5,
            PeirceIndex::Zero => 0.0,
        }
    }
}

fn same_dim(x: &HermMat, y: &HermMat) -> Result<()> {
    x.check_same_dim(y)
}

/// Jordan product `(xy + yx)/2`.
pub fn jprod(x: &HermMat, y: &HermMat) -> Result<HermMat> {
    same_dim(x, y)?;
    Ok(jprod_raw(x.mat(), y.mat()))
}

pub(crate) fn jprod_raw(x: &CMat, y: &CMat) -> HermMat {
    HermMat::new_unchecked((&(x * y) + &(y * x)).scale(0.5))
}

/// Quadratic representation `P(x)y = 2 x∘(x∘y) − x²∘y`.
pub fn quad_p(x: &HermMat, y: &HermMat) -> Result<HermMat> {
    same_dim(x, y)?;
    let xy = jprod_raw(x.mat(), y.mat());
    let x_xy = jprod_raw(x.mat(), xy.mat());
    let xx = jprod_raw(x.mat(), x.mat());
    let xx_y = jprod_raw(xx.mat(), y.mat());
    Ok(x_xy.scale(2.0).sub(&xx_y))
}

/// Triple product `{abc} = (a∘b)∘c − (c∘a)∘b + (b∘c)∘a` (all arguments self-adjoint).
pub fn triple(a: &HermMat, b: &HermMat, c: &HermMat) -> Result<HermMat> {
    same_dim(a, b)?;
    same_dim(a, c)?;
    Ok(triple_raw(a.mat(), b.mat(), c.mat()))
}

pub(crate) fn triple_raw(a: &CMat, b: &CMat, c: &CMat) -> HermMat {
    let ab_c = jprod_raw(jprod_raw(a, b).mat(), c);
    let ca_b = jprod_raw(jprod_raw(c, a).mat(), b);
    let bc_a = jprod_raw(jprod_raw(b, c).mat(), a);
    ab_c.sub(&ca_b).add(&bc_a)
}

/// The box operator `x□y : z ↦ {x y z}`.
#[derive(Debug, Clone)]
pub struct BoxOp {
    x: HermMat,
    y: HermMat,
}

impl BoxOp {
    pub fn apply(&self, z: &HermMat) -> Result<HermMat> {
        triple(&self.x, &self.y, z)
    }
}

pub fn box_op(x: &HermMat, y: &HermMat) -> Result<BoxOp> {
    same_dim(x, y)?;
    Ok(BoxOp { x: x.clone(), y: y.clone() })
}

/// Peirce projector `E_k(a)` applied to `x`, via the block formulas
/// `axa`, `ax(1−a) + (1−a)xa`, `(1−a)x(1−a)`.
pub fn peirce(a: &Projection, k: PeirceIndex, x: &HermMat) -> Result<HermMat> {
    same_dim(a.mat(), x)?;
    let p = a.cmat();
    let q = a.complement();
    let q = q.cmat();
    let xm = x.mat();
    let out = match k {
        PeirceIndex::One => &(p * xm) * p,
        PeirceIndex::Half => {
            let pxq = &(p * xm) * q;
            &pxq + &pxq.adjoint()
        }
        PeirceIndex::Zero => &(q * xm) * q,
    };
    Ok(HermMat::new_unchecked(out))
}

/// Peirce projector from the operator identities
/// `E1 = P(a)`, `E½ = 2L(a) − 2P(a)`, `E0 = I − 2L(a) + P(a)`.
pub fn peirce_operator_form(a: &Projection, k: PeirceIndex, x: &HermMat) -> Result<HermMat> {
    let l = jprod(a.mat(), x)?;
    let p = quad_p(a.mat(), x)?;
    Ok(match k {
        PeirceIndex::One => p,
        PeirceIndex::Half => l.scale(2.0).sub(&p.scale(2.0)),
        PeirceIndex::Zero => x.sub(&l.scale(2.0)).add(&p),
    })
}

/// Peirce reflection `S(p) = Id − 2 E½(p)`.
pub fn peirce_reflection(p: &Projection, x: &HermMat) -> Result<HermMat> {
    let half = peirce(p, PeirceIndex::Half, x)?;
    Ok(x.sub(&half.scale(2.0)))
}

/// The reflection `S(p)` as a reusable operator.
#[derive(Debug, Clone)]
pub struct PeirceReflection {
    center: Projection,
}

impl PeirceReflection {
    pub fn new(center: Projection) -> Self {
        PeirceReflection { center }
    }

    pub fn center(&self) -> &Projection {
        &self.center
    }

    pub fn apply(&self, x: &HermMat) -> Result<HermMat> {
        peirce_reflection(&self.center, x)
    }
}

/// Inner derivation `G(a,u)x = 2({u a x} − {a u x})`, with `a` the base of `u`.
pub fn g_op(u: &TangentVec, x: &HermMat) -> Result<HermMat> {
    let a = u.base().mat();
    same_dim(a, x)?;
    let uax = triple_raw(u.mat().mat(), a.mat(), x.mat());
    let aux = triple_raw(a.mat(), u.mat().mat(), x.mat());
    Ok(uax.sub(&aux).scale(2.0))
}

/// `D = ua − au`, anti-Hermitian, with `G(a,u)x = Dx − xD`.
pub fn derivation_matrix(u: &TangentVec) -> CMat {
    let a = u.base().cmat();
    let um = u.mat().mat();
    &(um * a) - &(a * um)
}
