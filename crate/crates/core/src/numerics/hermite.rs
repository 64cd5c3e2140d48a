use crate::error::{Error, Result};

pub const MAX_HERMITE_ORDER: u32 = 64;

/// Physicists' Hermite polynomial `H_n(x)` by the three-term recurrence
/// `H_{k+1} = 2x H_k - 2k H_{k-1}`.
pub fn hermite(n: u32, x: f64) -> Result<f64> {
    if n > MAX_HERMITE_ORDER {
        return Err(Error::Domain(format!(
            "Hermite order {n} exceeds {MAX_HERMITE_ORDER}"
        )));
    }
    Ok(hermite_unchecked(n, x))
}

pub(crate) fn hermite_unchecked(n: u32, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 2.0 * x);
    if n == 0 {
        return prev;
    }
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * f64::from(k) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `H_n(y) e^{-y^2/2} / sqrt(2^n n!)`, built with the normalized recurrence so
/// the factorial growth of `H_n` never materializes.
pub fn hermite_function(n: u32, y: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = (-0.5 * y * y).exp();
    for k in 0..n {
        let k = f64::from(k);
        let next = (2.0 / (k + 1.0)).sqrt() * y * cur - (k / (k + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        assert_eq!(hermite(0, 123.0).unwrap(), 1.0);
        assert_eq!(hermite(1, 3.5).unwrap(), 7.0);
        assert_eq!(hermite(3, 1.0).unwrap(), -4.0);
    }

    #[test]
    fn order_guard() {
        assert!(hermite(64, 0.5).is_ok());
        assert!(matches!(hermite(65, 0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn normalized_function_matches_polynomial() {
        let fact = |n: u32| (1..=n).map(f64::from).product::<f64>();
        for n in 0..12 {
            for &y in &[-3.1, -0.4, 0.0, 0.9, 2.5] {
                let direct = hermite_unchecked(n, y) * (-0.5 * y * y).exp()
                    / (2f64.powi(n as i32) * fact(n)).sqrt();
                let stable = hermite_function(n, y);
                assert!(
                    (direct - stable).abs() < 1e-12 * (1.0 + direct.abs()),
                    "n={n} y={y}"
                );
            }
        }
    }
}
