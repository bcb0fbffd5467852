use super::CMat;
use crate::error::{Error, Result};

const TAYLOR_DEGREE: usize = 18;
/// Scaled argument bound; 0.5^19/19! keeps the truncation far below rounding.
const SCALED_NORM: f64 = 0.5;

/// Matrix exponential by scaling and squaring with a fixed-degree Taylor series.
pub fn expm(m: &CMat) -> Result<CMat> {
    if !m.is_square() {
        return Err(Error::dims((m.rows(), m.rows()), m.shape()));
    }
    if !m.is_finite() {
        return Err(Error::NumericalFailure("expm of non-finite matrix".into()));
    }
    let n = m.rows();
    let norm1 = (0..n)
        .map(|j| (0..n).map(|i| m[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max);
    if norm1 > 700.0 {
        return Err(Error::NumericalFailure(format!("expm argument too large (1-norm {norm1:e})")));
    }
    let squarings = if norm1 > SCALED_NORM { (norm1 / SCALED_NORM).log2().ceil() as u32 } else { 0 };
    let scaled = m.scale(0.5f64.powi(squarings as i32));

    // Horner evaluation of sum_{k<=d} X^k / k!
    let mut acc = CMat::identity(n);
    for k in (1..=TAYLOR_DEGREE).rev() {
        acc = &(&scaled * &acc).scale(1.0 / k as f64) + &CMat::identity(n);
    }
    for _ in 0..squarings {
        acc = &acc * &acc;
    }
    if !acc.is_finite() {
        return Err(Error::NumericalFailure("expm overflow".into()));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{random_cmat, rng};
    use crate::matrix::op_norm;

    #[test]
    fn exp_zero_is_identity() {
        let e = expm(&CMat::zeros(4, 4)).unwrap();
        assert_eq!(e, CMat::identity(4));
    }

    #[test]
    fn exp_diag() {
        let e = expm(&CMat::from_diag(&[2f64.ln(), 0.0])).unwrap();
        assert!((e[(0, 0)].re - 2.0).abs() < 1e-14);
        assert!((e[(1, 1)].re - 1.0).abs() < 1e-14);
        assert!(e[(0, 1)].norm() == 0.0);
    }

    #[test]
    fn anti_hermitian_gives_unitary() {
        let mut rng = rng(21);
        for n in [2, 5, 9] {
            let x = random_cmat(&mut rng, n, n);
            let d = &(&x - &x.adjoint()).scale(1.5);
            let q = expm(d).unwrap();
            let defect = op_norm(&(&(&q.adjoint() * &q) - &CMat::identity(n)));
            assert!(defect < 1e-10, "n={n} defect={defect}");
        }
    }

    #[test]
    fn squaring_consistency() {
        let mut rng = rng(22);
        for scale in [0.1, 1.0, 10.0, 50.0] {
            let x = random_cmat(&mut rng, 4, 4);
            let x = x.scale(scale / op_norm(&x));
            // skew part keeps exp bounded so the relative residual is meaningful
            let d = &(&x - &x.adjoint()).scale(0.5);
            let full = expm(d).unwrap();
            let half = expm(&d.scale(0.5)).unwrap();
            let rel = op_norm(&(&full - &(&half * &half))) / op_norm(&full);
            assert!(rel <= 1e-10, "scale={scale} rel={rel}");
        }
    }

    #[test]
    fn commuting_sum() {
        let a = CMat::from_diag(&[0.3, -1.2, 2.0]);
        let b = CMat::from_diag(&[1.1, 0.4, -0.7]);
        let lhs = expm(&(&a + &b)).unwrap();
        let rhs = &expm(&a).unwrap() * &expm(&b).unwrap();
        assert!(op_norm(&(&lhs - &rhs)) < 1e-13 * op_norm(&lhs));
    }

    #[test]
    fn overflow_is_error() {
        assert!(matches!(expm(&CMat::from_diag(&[1e6])), Err(Error::NumericalFailure(_))));
    }
}
