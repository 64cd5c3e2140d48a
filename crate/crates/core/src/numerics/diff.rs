/// Which derivative [`central_diff`] approximates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Derivative {
    First,
    Second,
}

/// Second-order accurate central difference of `f` at `x`.
pub fn central_diff(f: impl Fn(f64) -> f64, x: f64, h: f64, order: Derivative) -> f64 {
    match order {
        Derivative::First => (f(x + h) - f(x - h)) / (2.0 * h),
        Derivative::Second => (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_is_exact() {
        for h in [0.5, 1e-2, 1e-4] {
            let d = central_diff(|x| x * x, 3.0, h, Derivative::First);
            assert!((d - 6.0).abs() < 1e-10, "h={h} d={d}");
        }
    }

    #[test]
    fn taylor_bounds() {
        let d = central_diff(f64::sin, 0.0, 1e-3, Derivative::First);
        assert!((d - 1.0).abs() < 2e-7);
        let d2 = central_diff(f64::exp, 0.0, 1e-3, Derivative::Second);
        assert!((d2 - 1.0).abs() < 1e-6);
    }
}
