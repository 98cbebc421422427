//! Special functions: Bessel functions of the first kind, associated
//! Laguerre polynomials with complex argument, and the principal complex
//! square root.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest Bessel order accepted.
pub const MAX_BESSEL_ORDER: u32 = 10_000;

/// Largest Laguerre degree accepted.
pub const MAX_LAGUERRE_DEGREE: u32 = 100;

// Below this argument the power series converges without cancellation.
const SERIES_LIMIT: f64 = 2.0;
const RESCALE_ABOVE: f64 = 1e250;
const RESCALE_BY: f64 = 1e-250;

/// Cylindrical Bessel function of the first kind, J_n(x).
///
/// Small arguments use the power series; everything else uses Miller's
/// downward recurrence normalized by J₀ + 2ΣJ₂ₖ = 1. Negative `x` is folded
/// with J_n(−x) = (−1)ⁿ J_n(x).
pub fn bessel_j(order: u32, x: f64) -> Result<f64> {
    check_bessel_args(order, x)?;
    if x < 0.0 {
        let v = bessel_j(order, -x)?;
        return Ok(if order % 2 == 1 { -v } else { v });
    }
    if x == 0.0 {
        return Ok(if order == 0 { 1.0 } else { 0.0 });
    }
    if x < SERIES_LIMIT {
        return Ok(series(order, x));
    }
    Ok(miller(order, x)[order as usize])
}

/// J_0(x), …, J_max(x) in one pass.
pub fn bessel_j_sequence(max_order: u32, x: f64) -> Result<Vec<f64>> {
    check_bessel_args(max_order, x)?;
    if x < 0.0 {
        let mut v = bessel_j_sequence(max_order, -x)?;
        for (k, val) in v.iter_mut().enumerate() {
            if k % 2 == 1 {
                *val = -*val;
            }
        }
        return Ok(v);
    }
    if x == 0.0 {
        let mut v = vec![0.0; max_order as usize + 1];
        v[0] = 1.0;
        return Ok(v);
    }
    if x < SERIES_LIMIT {
        return Ok((0..=max_order).map(|k| series(k, x)).collect());
    }
    Ok(miller(max_order, x))
}

/// J_l(x) for signed integer order, using J_{−n} = (−1)ⁿ J_n.
pub fn bessel_j_signed(order: i32, x: f64) -> Result<f64> {
    let v = bessel_j(order.unsigned_abs(), x)?;
    Ok(if order < 0 && order % 2 != 0 { -v } else { v })
}

/// (J_{l−1}(x), J_l(x), J_{l+1}(x)) for signed `l`.
pub fn bessel_j_triplet(order: i32, x: f64) -> Result<[f64; 3]> {
    let top = order.unsigned_abs() + 1;
    let seq = bessel_j_sequence(top, x)?;
    let signed = |k: i32| -> f64 {
        let v = seq[k.unsigned_abs() as usize];
        if k < 0 && k % 2 != 0 {
            -v
        } else {
            v
        }
    };
    Ok([signed(order - 1), signed(order), signed(order + 1)])
}

fn check_bessel_args(order: u32, x: f64) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("Bessel argument must be finite, got {x}")));
    }
    if order > MAX_BESSEL_ORDER {
        return Err(Error::Domain(format!("Bessel order {order} exceeds {MAX_BESSEL_ORDER}")));
    }
    Ok(())
}

fn series(order: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = 1.0;
    for k in 1..=order {
        term *= half / k as f64;
    }
    let mut sum = term;
    let neg_quarter_sq = -half * half;
    let n = order as f64;
    for k in 1..200 {
        let kf = k as f64;
        term *= neg_quarter_sq / (kf * (n + kf));
        sum += term;
        if term.abs() <= f64::EPSILON * 0.25 * sum.abs() {
            break;
        }
    }
    sum
}

/// Downward recurrence from far above both `order` and `x`; returns the
/// normalized J_0(x), …, J_order(x).
fn miller(order: u32, x: f64) -> Vec<f64> {
    let top = (order as f64).max(x);
    let mut start = (top + 50.0 + 3.0 * top.sqrt()).ceil() as u32;
    if start % 2 == 1 {
        start += 1;
    }
    let two_over_x = 2.0 / x;
    let mut above = 0.0;
    let mut current = 1.0;
    let mut norm = 0.0;
    let mut kept = vec![0.0; order as usize + 1];
    for k in (1..=start).rev() {
        let below = k as f64 * two_over_x * current - above;
        above = current;
        current = below;
        if current.abs() > RESCALE_ABOVE {
            current *= RESCALE_BY;
            above *= RESCALE_BY;
            norm *= RESCALE_BY;
            kept.iter_mut().for_each(|v| *v *= RESCALE_BY);
        }
        let idx = k - 1;
        if idx <= order {
            kept[idx as usize] = current;
        }
        if idx == 0 {
            norm += current;
        } else if idx % 2 == 0 {
            norm += 2.0 * current;
        }
    }
    let inv = 1.0 / norm;
    kept.iter_mut().for_each(|v| *v *= inv);
    kept
}

/// Associated Laguerre polynomial L_n^α(x) for complex `x`, by the
/// three-term recurrence.
pub fn laguerre(n: u32, alpha: u32, x: Complex64) -> Result<Complex64> {
    if !(x.re.is_finite() && x.im.is_finite()) {
        return Err(Error::Domain(format!("Laguerre argument must be finite, got {x}")));
    }
    if n > MAX_LAGUERRE_DEGREE {
        return Err(Error::Domain(format!("Laguerre degree {n} exceeds {MAX_LAGUERRE_DEGREE}")));
    }
    let a = alpha as f64;
    let mut prev = Complex64::new(1.0, 0.0);
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = Complex64::new(1.0 + a, 0.0) - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + a - x) * cur - (kf + a) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// d/dx L_n^α(x) = −L_{n−1}^{α+1}(x).
pub fn laguerre_derivative(n: u32, alpha: u32, x: Complex64) -> Result<Complex64> {
    if n == 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(-laguerre(n - 1, alpha + 1, x)?)
}

/// Square root with nonnegative real part; on the imaginary axis of the
/// result the imaginary part is taken nonnegative.
pub fn principal_sqrt(z: Complex64) -> Complex64 {
    let s = z.sqrt();
    if s.re < 0.0 || (s.re == 0.0 && s.im < 0.0) {
        -s
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn bessel_at_origin() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(5, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn bessel_first_zero() {
        let v = bessel_j(0, 2.404825557695773).unwrap();
        assert!(v.abs() < 1e-12, "{v}");
    }

    #[test]
    fn bessel_rejects_non_finite() {
        assert!(bessel_j(0, f64::NAN).is_err());
        assert!(bessel_j(0, f64::INFINITY).is_err());
        assert!(bessel_j(MAX_BESSEL_ORDER + 1, 1.0).is_err());
    }

    #[test]
    fn bessel_parity() {
        assert_relative_eq!(bessel_j(3, -2.7).unwrap(), -bessel_j(3, 2.7).unwrap());
        assert_relative_eq!(bessel_j(4, -2.7).unwrap(), bessel_j(4, 2.7).unwrap());
        assert_relative_eq!(bessel_j_signed(-3, 2.7).unwrap(), -bessel_j(3, 2.7).unwrap());
        assert_relative_eq!(bessel_j_signed(-4, 2.7).unwrap(), bessel_j(4, 2.7).unwrap());
    }

    #[test]
    fn sequence_agrees_with_single_orders() {
        for &x in &[0.3, 1.99, 2.0, 17.5, 140.0] {
            let seq = bessel_j_sequence(30, x).unwrap();
            for (k, v) in seq.iter().enumerate() {
                let single = bessel_j(k as u32, x).unwrap();
                assert!((v - single).abs() <= 1e-13 * single.abs() + 1e-300, "k={k} x={x}");
            }
        }
    }

    #[test]
    fn triplet_handles_negative_orders() {
        let [a, b, c] = bessel_j_triplet(-1, 3.3).unwrap();
        assert_relative_eq!(a, bessel_j_signed(-2, 3.3).unwrap(), max_relative = 1e-15);
        assert_relative_eq!(b, bessel_j_signed(-1, 3.3).unwrap(), max_relative = 1e-15);
        assert_relative_eq!(c, bessel_j_signed(0, 3.3).unwrap(), max_relative = 1e-15);
    }

    #[test]
    fn huge_order_small_argument_underflows_cleanly() {
        let v = bessel_j(10_000, 3.0).unwrap();
        assert_eq!(v, 0.0);
        let v = bessel_j(400, 350.0).unwrap();
        assert!(v.is_finite() && v > 0.0);
    }

    #[test]
    fn laguerre_closed_forms() {
        let x = Complex64::new(0.37, -1.2);
        assert_eq!(laguerre(0, 3, x).unwrap(), Complex64::new(1.0, 0.0));
        let l1 = laguerre(1, 4, x).unwrap();
        assert_relative_eq!(l1.re, (5.0 - x).re);
        assert_relative_eq!(l1.im, (5.0 - x).im);
        let l2 = laguerre(2, 0, Complex64::new(1.0, 0.0)).unwrap();
        assert_relative_eq!(l2.re, -0.5, max_relative = 1e-15);
        // L_2^α(x) = ((x² − 2(α+2)x + (α+1)(α+2)))/2
        let a = 3.0;
        let expected = (x * x - 2.0 * (a + 2.0) * x + (a + 1.0) * (a + 2.0)) / 2.0;
        let got = laguerre(2, 3, x).unwrap();
        assert_relative_eq!((got - expected).norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn laguerre_derivative_matches_difference_quotient() {
        let x = Complex64::new(0.8, 0.4);
        let h = 1e-6;
        let fd = (laguerre(4, 2, x + h).unwrap() - laguerre(4, 2, x - h).unwrap()) / (2.0 * h);
        let an = laguerre_derivative(4, 2, x).unwrap();
        assert!((fd - an).norm() < 1e-8 * an.norm());
    }

    #[test]
    fn laguerre_rejects_bad_input() {
        assert!(laguerre(1, 0, Complex64::new(f64::NAN, 0.0)).is_err());
        assert!(laguerre(101, 0, Complex64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn principal_sqrt_branch() {
        assert_eq!(principal_sqrt(Complex64::new(1.0, 0.0)), Complex64::new(1.0, 0.0));
        let s = principal_sqrt(Complex64::new(0.0, 2.0));
        assert_relative_eq!(s.re, 1.0, max_relative = 1e-15);
        assert_relative_eq!(s.im, 1.0, max_relative = 1e-15);
        assert_eq!(principal_sqrt(Complex64::new(-1.0, 0.0)), Complex64::new(0.0, 1.0));
        assert_eq!(principal_sqrt(Complex64::new(-1.0, -0.0)), Complex64::new(0.0, 1.0));
    }
}
