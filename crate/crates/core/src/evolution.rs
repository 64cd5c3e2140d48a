//! Finite-difference check that closed-form tomograms satisfy the
//! classical-like evolution equation of the damped oscillator,
//!
//! `dw/dt' - mu dw/dnu + e^{4 gamma t} nu dw/dmu = 0`,
//!
//! where `t'` is the rescaled time and `d/dt' = e^{2 gamma t} d/dt`.

use crate::dynamics::{time_backward, time_forward, DampingParams};
use crate::error::{Error, Result};
use crate::states::QuantumState;
use crate::tomography::{Tomogram, TomographyFrame};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionPoint {
    pub x: f64,
    pub mu: f64,
    pub nu: f64,
    pub t: f64,
}

impl EvolutionPoint {
    pub fn new(x: f64, mu: f64, nu: f64, t: f64) -> Self {
        Self { x, mu, nu, t }
    }

    fn frame(&self) -> TomographyFrame {
        TomographyFrame {
            x: self.x,
            mu: self.mu,
            nu: self.nu,
        }
    }
}

/// The three terms of the residual and the tomogram value at the point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualTerms {
    /// `e^{2 gamma t} dw/dt`
    pub time: f64,
    /// `mu dw/dnu`
    pub nu_drift: f64,
    /// `e^{4 gamma t} nu dw/dmu`
    pub mu_drift: f64,
    pub value: f64,
}

impl ResidualTerms {
    pub fn residual(&self) -> f64 {
        self.time - self.nu_drift + self.mu_drift
    }
}

fn check_step(
    state: QuantumState,
    point: &EvolutionPoint,
    h: f64,
    params: &DampingParams,
) -> Result<Tomogram> {
    if !(h > 0.0) {
        return Err(Error::Domain(format!("step must be positive, got {h}")));
    }
    if point.t - h < 0.0 {
        return Err(Error::Domain(format!(
            "time stencil t - h = {} leaves t >= 0",
            point.t - h
        )));
    }
    let tomo = Tomogram::new(state, point.t, params)?;
    let limit = 0.1 * tomo.width(point.mu, point.nu)?.sqrt().min(1.0);
    if h > limit {
        return Err(Error::StepTooLarge { h, limit });
    }
    Ok(tomo)
}

/// All three derivative terms by central differences with step `h`.
pub fn evolution_terms(
    state: QuantumState,
    point: &EvolutionPoint,
    h: f64,
    params: &DampingParams,
) -> Result<ResidualTerms> {
    let tomo = check_step(state, point, h, params)?;
    let EvolutionPoint { x, mu, nu, t } = *point;
    let at = |tt: f64, m: f64, n: f64| -> Result<f64> {
        Tomogram::new(state, tt, params)?.eval(&TomographyFrame { x, mu: m, nu: n })
    };
    let dt = (at(t + h, mu, nu)? - at(t - h, mu, nu)?) / (2.0 * h);
    let dnu = (at(t, mu, nu + h)? - at(t, mu, nu - h)?) / (2.0 * h);
    let dmu = (at(t, mu + h, nu)? - at(t, mu - h, nu)?) / (2.0 * h);
    let growth = params.growth(t);
    Ok(ResidualTerms {
        time: growth * dt,
        nu_drift: mu * dnu,
        mu_drift: growth * growth * nu * dmu,
        value: tomo.eval(&point.frame())?,
    })
}

/// Residual `R = e^{2 gamma t} dw/dt - mu dw/dnu + e^{4 gamma t} nu dw/dmu`.
pub fn evolution_residual(
    state: QuantumState,
    x: f64,
    mu: f64,
    nu: f64,
    t: f64,
    h: f64,
    params: &DampingParams,
) -> Result<f64> {
    Ok(evolution_terms(state, &EvolutionPoint::new(x, mu, nu, t), h, params)?.residual())
}

/// Same residual with the time derivative taken directly in the rescaled
/// time: `w` is evaluated at `t(t' +- h)` and differenced in `t'`.
pub fn evolution_residual_rescaled(
    state: QuantumState,
    point: &EvolutionPoint,
    h: f64,
    params: &DampingParams,
) -> Result<f64> {
    let terms = evolution_terms(state, point, h, params)?;
    let gamma = params.gamma();
    let t_prime = time_forward(point.t, gamma);
    let frame = point.frame();
    let at = |tp: f64| -> Result<f64> {
        Tomogram::new(state, time_backward(tp, gamma)?, params)?.eval(&frame)
    };
    let d_t_prime = (at(t_prime + h)? - at(t_prime - h)?) / (2.0 * h);
    Ok(d_t_prime - terms.nu_drift + terms.mu_drift)
}

/// Outcome of evaluating the residual on a ladder of steps.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub point: EvolutionPoint,
    /// Smallest step of the ladder.
    pub step: f64,
    /// Residual at the smallest step.
    pub residual: f64,
    /// Slope of `log|R|` against `log h`; present when three or more steps ran.
    pub converged_order: Option<f64>,
    pub ladder: Vec<(f64, f64)>,
}

pub fn convergence_study(
    state: QuantumState,
    point: &EvolutionPoint,
    steps: &[f64],
    params: &DampingParams,
) -> Result<ResidualReport> {
    if steps.len() < 3 || steps.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::Domain(
            "convergence study needs at least three strictly decreasing steps".into(),
        ));
    }
    let ladder = steps
        .iter()
        .map(|&h| {
            let r = evolution_terms(state, point, h, params)?.residual();
            Ok((h, r))
        })
        .collect::<Result<Vec<_>>>()?;
    let (step, residual) = *ladder.last().expect("non-empty ladder");
    Ok(ResidualReport {
        point: *point,
        step,
        residual,
        converged_order: Some(log_log_slope(&ladder)),
        ladder,
    })
}

/// Least-squares slope of `log|y|` against `log x`.
pub fn log_log_slope(samples: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .map(|&(x, y)| (x.ln(), y.abs().max(f64::MIN_POSITIVE).ln()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::make_params;
    use num_complex::Complex64;

    #[test]
    fn frictionless_fock_one() {
        let p = make_params(0.0).unwrap();
        let r =
            evolution_residual(QuantumState::Fock { n: 1 }, 0.7, 0.8, -0.6, 1.0, 1e-3, &p).unwrap();
        assert!(r.abs() < 1e-6, "{r}");
    }

    #[test]
    fn damped_fock_two() {
        let p = make_params(0.05).unwrap();
        for &(x, mu, nu) in &[(0.3, 0.9, 0.4), (-1.2, -0.2, 1.1), (0.8, 1.3, -0.7)] {
            let r =
                evolution_residual(QuantumState::Fock { n: 2 }, x, mu, nu, 5.0, 1e-3, &p).unwrap();
            assert!(r.abs() < 1e-5, "({x},{mu},{nu}) -> {r}");
        }
    }

    #[test]
    fn damped_coherent() {
        let p = make_params(0.3).unwrap();
        let state = QuantumState::Coherent {
            alpha: Complex64::new(1.0, 1.0),
        };
        let r = evolution_residual(state, 0.5, 0.8, -0.6, 2.0, 1e-3, &p).unwrap();
        assert!(r.abs() < 1e-5, "{r}");
    }

    #[test]
    fn second_order_convergence() {
        for g in [0.05, 0.0] {
            let p = make_params(g).unwrap();
            let point = EvolutionPoint::new(0.7, 0.8, -0.6, 5.0);
            let report = convergence_study(
                QuantumState::Fock { n: 1 },
                &point,
                &[1e-2, 5e-3, 2.5e-3],
                &p,
            )
            .unwrap();
            let order = report.converged_order.unwrap();
            assert!((order - 2.0).abs() < 0.3, "gamma={g} order={order}");
        }
    }

    #[test]
    fn momentum_frame_has_no_nu_drift() {
        let p = make_params(0.05).unwrap();
        let point = EvolutionPoint::new(0.4, 0.0, 1.0, 3.0);
        let big = evolution_terms(QuantumState::Fock { n: 0 }, &point, 1e-2, &p).unwrap();
        let small = evolution_terms(QuantumState::Fock { n: 0 }, &point, 1e-3, &p).unwrap();
        assert_eq!(big.nu_drift, 0.0);
        assert!(small.residual().abs() < big.residual().abs() / 50.0);
    }

    #[test]
    fn step_guards() {
        let p = make_params(0.05).unwrap();
        let s = QuantumState::Fock { n: 0 };
        assert!(matches!(
            evolution_residual(s, 0.0, 1.0, 0.0, 1.0, 0.5, &p),
            Err(Error::StepTooLarge { .. })
        ));
        assert!(matches!(
            evolution_residual(s, 0.0, 1.0, 0.0, 1e-4, 1e-3, &p),
            Err(Error::Domain(_))
        ));
        assert_eq!(
            evolution_residual(s, 0.0, 0.0, 0.0, 1.0, 1e-3, &p),
            Err(Error::DegenerateFrame)
        );
        assert!(convergence_study(
            s,
            &EvolutionPoint::new(0.0, 1.0, 0.0, 1.0),
            &[1e-3, 2e-3, 1e-4],
            &p
        )
        .is_err());
    }

    #[test]
    fn rescaled_time_form_agrees() {
        let p = make_params(0.3).unwrap();
        let point = EvolutionPoint::new(0.2, 0.6, 0.5, 1.5);
        let s = QuantumState::Fock { n: 2 };
        let a = evolution_residual_rescaled(s, &point, 1e-3, &p).unwrap();
        let b = evolution_terms(s, &point, 1e-3, &p).unwrap().residual();
        assert!(a.abs() < 1e-4 && b.abs() < 1e-4, "{a} {b}");
    }
}
