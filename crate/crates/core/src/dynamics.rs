//! Classical mode function of the damped oscillator and everything derived
//! from it: the reduced frequency, the `t <-> t'` reparameterization and the
//! frame coefficients `(a, b)` that enter every tomogram.
//!
//! Units are fixed by `hbar = m = omega = 1`, so the only physical parameter
//! is the friction coefficient `gamma`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Friction coefficient together with the reduced frequency `sqrt(1 - gamma^2)`.
///
/// Only the underdamped regime `0 <= gamma < 1` is representable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampingParams {
    gamma: f64,
    omega_reduced: f64,
}

impl DampingParams {
    pub fn new(gamma: f64) -> Result<Self> {
        if !gamma.is_finite() || !(0.0..1.0).contains(&gamma) {
            return Err(Error::Domain(format!(
                "friction coefficient must satisfy 0 <= gamma < 1, got {gamma}"
            )));
        }
        Ok(Self {
            gamma,
            omega_reduced: (1.0 - gamma * gamma).sqrt(),
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn omega_reduced(&self) -> f64 {
        self.omega_reduced
    }

    /// `e^{2 gamma t}`, the factor relating physical and rescaled time.
    pub fn growth(&self, t: f64) -> f64 {
        (2.0 * self.gamma * t).exp()
    }
}

pub fn make_params(gamma: f64) -> Result<DampingParams> {
    DampingParams::new(gamma)
}

/// The mode function `eps(t)` and its first derivative at a given time.
///
/// `phase` is the unwrapped argument `Omega t` of `eps`. Fractional powers of
/// `eps` are taken on the branch that follows this phase continuously in `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsilonState {
    pub t: f64,
    pub eps: Complex64,
    pub eps_dot: Complex64,
    pub phase: f64,
    /// `ln |eps|`
    pub log_modulus: f64,
}

impl EpsilonState {
    /// `|eps|^2`
    pub fn modulus_sq(&self) -> f64 {
        self.eps.norm_sqr()
    }

    /// `eps^* eps_dot`
    pub fn conj_eps_eps_dot(&self) -> Complex64 {
        self.eps.conj() * self.eps_dot
    }

    /// `eps^{-1/2}` on the continuously tracked branch.
    pub fn inv_sqrt(&self) -> Complex64 {
        Complex64::from_polar((-0.5 * self.log_modulus).exp(), -0.5 * self.phase)
    }

    /// `e^{2 gamma t} Im(eps^* eps_dot)`; equals one for all `t`.
    pub fn wronskian(&self, params: &DampingParams) -> f64 {
        params.growth(self.t) * self.conj_eps_eps_dot().im
    }
}

/// Characteristic root `-gamma + i Omega` of `eps'' + 2 gamma eps' + eps = 0`.
fn root(params: &DampingParams) -> Complex64 {
    Complex64::new(-params.gamma, params.omega_reduced)
}

/// Closed-form mode function
/// `eps(t) = Omega^{-1/2} e^{-gamma t} (cos Omega t + i sin Omega t)`.
pub fn epsilon(t: f64, params: &DampingParams) -> EpsilonState {
    let omega = params.omega_reduced;
    let log_modulus = -0.5 * omega.ln() - params.gamma * t;
    let phase = omega * t;
    let eps = Complex64::from_polar(log_modulus.exp(), phase);
    EpsilonState {
        t,
        eps,
        eps_dot: root(params) * eps,
        phase,
        log_modulus,
    }
}

/// Second derivative of the closed form, `(-gamma + i Omega)^2 eps`.
pub fn epsilon_ddot(state: &EpsilonState, params: &DampingParams) -> Complex64 {
    let (g, w) = (params.gamma, params.omega_reduced);
    Complex64::new(g * g - w * w, -2.0 * g * w) * state.eps
}

/// `|eps'' + 2 gamma eps' + eps|` evaluated on the closed form.
pub fn epsilon_residual(t: f64, params: &DampingParams) -> f64 {
    let s = epsilon(t, params);
    (epsilon_ddot(&s, params) + 2.0 * params.gamma * s.eps_dot + s.eps).norm()
}

/// Integrates the mode equation from its initial data with classical RK4.
///
/// This is an independent route to `eps(t)` used to cross-check the closed
/// form; it knows nothing about the analytic solution beyond `t = 0`.
pub fn integrate_mode_equation(t_end: f64, step: f64, params: &DampingParams) -> EpsilonState {
    let gamma = params.gamma;
    let omega = params.omega_reduced;
    let rhs = |y: [Complex64; 2]| [y[1], -2.0 * gamma * y[1] - y[0]];

    let norm = omega.sqrt().recip();
    let mut y = [
        Complex64::new(norm, 0.0),
        Complex64::new(-gamma, omega) * norm,
    ];
    let steps = (t_end / step).round().max(0.0) as usize;
    let h = if steps == 0 {
        0.0
    } else {
        t_end / steps as f64
    };
    let axpy = |y: [Complex64; 2], k: [Complex64; 2], s: f64| [y[0] + k[0] * s, y[1] + k[1] * s];
    for _ in 0..steps {
        let k1 = rhs(y);
        let k2 = rhs(axpy(y, k1, 0.5 * h));
        let k3 = rhs(axpy(y, k2, 0.5 * h));
        let k4 = rhs(axpy(y, k3, h));
        for i in 0..2 {
            y[i] += (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (h / 6.0);
        }
    }
    EpsilonState {
        t: t_end,
        eps: y[0],
        eps_dot: y[1],
        // TODO: unwrap the phase from the integrated trajectory if this is
        // ever used for wave functions rather than value comparisons.
        phase: y[0].arg(),
        log_modulus: y[0].norm().ln(),
    }
}

/// Rescaled time `t' = (1 - e^{-2 gamma t}) / (2 gamma)`; the identity at `gamma = 0`.
pub fn time_forward(t: f64, gamma: f64) -> f64 {
    if gamma == 0.0 {
        t
    } else {
        -(-2.0 * gamma * t).exp_m1() / (2.0 * gamma)
    }
}

/// Physical time `t = -ln(1 - 2 gamma t') / (2 gamma)`. Defined for `2 gamma t' < 1`.
pub fn time_backward(t_prime: f64, gamma: f64) -> Result<f64> {
    if gamma == 0.0 {
        return Ok(t_prime);
    }
    if 2.0 * gamma * t_prime >= 1.0 {
        return Err(Error::Domain(format!(
            "rescaled time {t_prime} is outside the image [0, {}) of the forward map",
            0.5 / gamma
        )));
    }
    Ok(-(-2.0 * gamma * t_prime).ln_1p() / (2.0 * gamma))
}

/// `dt/dt' = e^{2 gamma t}`.
pub fn dt_dt_prime(t: f64, gamma: f64) -> f64 {
    (2.0 * gamma * t).exp()
}

/// Linear map from the frame direction `(mu, nu)` to the effective
/// Gaussian direction of the ground-like tomogram.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameCoeffs {
    pub a: f64,
    pub b: f64,
}

impl FrameCoeffs {
    pub fn norm_sq(&self) -> f64 {
        self.a * self.a + self.b * self.b
    }
}

/// `a = e^{2 gamma t} nu (eps^* eps_dot + eps eps_dot^*) / (2 eps eps^*) + mu`,
/// `b = nu / (eps eps^*)`.
pub fn frame_coeffs(mu: f64, nu: f64, t: f64, params: &DampingParams) -> Result<FrameCoeffs> {
    frame_coeffs_at(mu, nu, &epsilon(t, params), params)
}

pub(crate) fn frame_coeffs_at(
    mu: f64,
    nu: f64,
    eps: &EpsilonState,
    params: &DampingParams,
) -> Result<FrameCoeffs> {
    if mu == 0.0 && nu == 0.0 {
        return Err(Error::DegenerateFrame);
    }
    let ee = eps.modulus_sq();
    // eps^* eps_dot + eps eps_dot^* = 2 Re(eps^* eps_dot)
    let sym = 2.0 * eps.conj_eps_eps_dot().re;
    Ok(FrameCoeffs {
        a: params.growth(eps.t) * nu * sym / (2.0 * ee) + mu,
        b: nu / ee,
    })
}
