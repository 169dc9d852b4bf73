//! Real polynomials in ascending coefficient order, `p(z) = p[0] + p[1] z + ... + p[n] z^n`.
//!
//! Roots come from the eigenvalues of the companion matrix and are then polished by a few
//! Newton steps on the original coefficients.

use nalgebra::{Complex, DMatrix};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

const NEWTON_STEPS: usize = 8;

/// Horner evaluation at a complex point.
pub fn eval(p: &[f64], z: C64) -> C64 {
    p.iter()
        .rev()
        .fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn eval_with_derivative(p: &[f64], z: C64) -> (C64, C64) {
    let mut value = C64::new(0.0, 0.0);
    let mut deriv = C64::new(0.0, 0.0);
    for &c in p.iter().rev() {
        deriv = deriv * z + value;
        value = value * z + c;
    }
    (value, deriv)
}

/// Degree after dropping trailing (highest-order) zeros.
pub fn degree(p: &[f64]) -> Option<usize> {
    p.iter().rposition(|&c| c != 0.0)
}

/// All complex roots, with multiplicity.
///
/// The zero polynomial has no well-defined roots and is rejected; a nonzero constant has none.
pub fn roots(p: &[f64]) -> Result<Vec<C64>> {
    let n = degree(p).ok_or_else(|| Error::InvalidArgument("zero polynomial".into()))?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = p[n];
    let mut companion = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        companion[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        companion[(i, n - 1)] = -p[i] / lead;
    }
    let eigen = companion.complex_eigenvalues();
    let mut out: Vec<C64> = eigen.iter().map(|z| polish(&p[..=n], *z)).collect();
    // Conjugate-symmetric output for real input: snap tiny imaginary parts to the real axis.
    for z in out.iter_mut() {
        if z.im.abs() <= 1e-14 * z.norm().max(1.0) {
            z.im = 0.0;
        }
    }
    Ok(out)
}

fn polish(p: &[f64], mut z: C64) -> C64 {
    let mut best = eval(p, z).norm();
    for _ in 0..NEWTON_STEPS {
        let (value, deriv) = eval_with_derivative(p, z);
        if deriv.norm() == 0.0 || value.norm() == 0.0 {
            break;
        }
        let candidate = z - value / deriv;
        let residual = eval(p, candidate).norm();
        if residual.is_finite() && residual < best {
            best = residual;
            z = candidate;
        } else {
            break;
        }
    }
    z
}

/// Smallest root modulus; `+inf` for a nonzero constant.
pub fn min_root_modulus(p: &[f64]) -> Result<f64> {
    Ok(roots(p)?
        .iter()
        .map(|z| z.norm())
        .fold(f64::INFINITY, f64::min))
}

/// True when every root lies strictly outside the closed unit disk.
pub fn is_minimum_phase(p: &[f64]) -> Result<bool> {
    Ok(min_root_modulus(p)? > 1.0)
}

/// Coefficients of `prod_i (1 - z / rho_i)`, which has constant term 1.
pub fn from_roots_unit_constant(roots: &[C64]) -> Vec<C64> {
    let mut coeffs = vec![C64::new(1.0, 0.0)];
    for &rho in roots {
        let inv = -(C64::new(1.0, 0.0) / rho);
        let mut next = vec![C64::new(0.0, 0.0); coeffs.len() + 1];
        for (j, &c) in coeffs.iter().enumerate() {
            next[j] += c;
            next[j + 1] += c * inv;
        }
        coeffs = next;
    }
    coeffs
}

/// Lag products `sum_j p_j p_{j+r}` for `r = 0..p.len()`.
pub fn autocorrelation(p: &[f64]) -> Vec<f64> {
    (0..p.len())
        .map(|r| p.iter().zip(&p[r..]).map(|(a, b)| a * b).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_moduli(mut zs: Vec<C64>) -> Vec<f64> {
        zs.sort_by(|a, b| a.norm().total_cmp(&b.norm()));
        zs.iter().map(|z| z.norm()).collect()
    }

    #[test]
    fn quadratic_roots() {
        // (z - 2)(z + 0.5) = z^2 - 1.5 z - 1
        let r = sorted_moduli(roots(&[-1.0, -1.5, 1.0]).unwrap());
        assert!((r[0] - 0.5).abs() < 1e-14);
        assert!((r[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn complex_pair() {
        // z^2 + 4 -> +-2i
        let r = roots(&[4.0, 0.0, 1.0]).unwrap();
        for z in r {
            assert!(z.re.abs() < 1e-14);
            assert!((z.im.abs() - 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn trailing_zeros_ignored() {
        let r = roots(&[-2.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0].re - 2.0).abs() < 1e-15);
        assert!(roots(&[0.0, 0.0]).is_err());
        assert!(roots(&[3.0]).unwrap().is_empty());
    }

    #[test]
    fn minimum_phase_check() {
        // 1 - 0.5 z: root at 2
        assert!(is_minimum_phase(&[1.0, -0.5]).unwrap());
        // 1 - 2 z: root at 0.5
        assert!(!is_minimum_phase(&[1.0, -2.0]).unwrap());
        // 1 - z: root on the circle
        assert!(!is_minimum_phase(&[1.0, -1.0]).unwrap());
        assert!(is_minimum_phase(&[1.0]).unwrap());
    }

    #[test]
    fn reconstruct_from_roots() {
        let p = [1.0, -0.3, -0.2];
        let r = roots(&p).unwrap();
        let back = from_roots_unit_constant(&r);
        for (a, b) in p.iter().zip(&back) {
            assert!((a - b.re).abs() < 1e-14);
            assert!(b.im.abs() < 1e-14);
        }
    }

    #[test]
    fn lag_products() {
        assert_eq!(autocorrelation(&[1.0, 2.0, 3.0]), vec![14.0, 8.0, 3.0]);
    }
}
