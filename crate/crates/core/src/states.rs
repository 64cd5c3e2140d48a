//! Coherent and Fock wave functions of the damped oscillator and their
//! Wigner function, computed by quadrature.

use num_complex::Complex64;
use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use crate::dynamics::{epsilon, DampingParams, EpsilonState};
use crate::error::{Error, Result};
use crate::numerics::{integrate_complex, QuadratureSpec};

pub const MAX_FOCK: u32 = 16;
pub const MAX_ALPHA: f64 = 8.0;

/// Which state family a tomogram or Wigner function describes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuantumState {
    Coherent { alpha: Complex64 },
    Fock { n: u32 },
}

impl QuantumState {
    pub fn coherent(alpha: Complex64) -> Result<Self> {
        if !(alpha.norm() <= MAX_ALPHA) {
            return Err(Error::Domain(format!(
                "coherent amplitude |alpha| = {} exceeds {MAX_ALPHA}",
                alpha.norm()
            )));
        }
        Ok(Self::Coherent { alpha })
    }

    pub fn fock(n: u32) -> Result<Self> {
        if n > MAX_FOCK {
            return Err(Error::Domain(format!("Fock index {n} exceeds {MAX_FOCK}")));
        }
        Ok(Self::Fock { n })
    }

    /// Multiplier applied to Gaussian quadrature windows: `sqrt(2n+1)` for
    /// Fock states, `1 + |alpha|` for coherent states.
    pub fn window_factor(&self) -> f64 {
        match *self {
            Self::Fock { n } => (2.0 * f64::from(n) + 1.0).sqrt(),
            Self::Coherent { alpha } => 1.0 + alpha.norm(),
        }
    }
}

impl fmt::Display for QuantumState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Fock { n } => write!(f, "fock:{n}"),
            Self::Coherent { alpha } => write!(f, "coherent:{},{}", alpha.re, alpha.im),
        }
    }
}

impl FromStr for QuantumState {
    type Err = Error;

    /// Parses `fock:N` or `coherent:RE,IM`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("invalid state descriptor {s:?}"));
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        match kind.trim() {
            "fock" => Self::fock(rest.trim().parse().map_err(|_| bad())?),
            "coherent" => {
                let (re, im) = rest.split_once(',').ok_or_else(bad)?;
                let re: f64 = re.trim().parse().map_err(|_| bad())?;
                let im: f64 = im.trim().parse().map_err(|_| bad())?;
                if !re.is_finite() || !im.is_finite() {
                    return Err(bad());
                }
                Self::coherent(Complex64::new(re, im))
            }
            _ => Err(bad()),
        }
    }
}

/// Wave function of a state at a fixed time, with every `q`-independent
/// factor evaluated once.
///
/// `psi(q) = prefactor * exp(i kappa q^2 / 2 + linear q) * H_n(q / |eps|)`
/// with `kappa = e^{2 gamma t} eps_dot / eps`.
#[derive(Debug, Clone)]
pub struct WaveFunction {
    state: QuantumState,
    eps: EpsilonState,
    prefactor: Complex64,
    half_kappa_i: Complex64,
    linear: Complex64,
    inv_modulus: f64,
}

impl WaveFunction {
    pub fn new(state: QuantumState, t: f64, params: &DampingParams) -> Self {
        let eps = epsilon(t, params);
        let e = eps.eps;
        let base = eps.inv_sqrt() * PI.powf(-0.25);
        let half_kappa_i = Complex64::i() * eps.eps_dot * params.growth(t) / (2.0 * e);
        let (prefactor, linear) = match state {
            QuantumState::Coherent { alpha } => {
                // The alpha^2 phase carries eps^* (not eps_dot^*): only this
                // choice keeps |psi|^2 normalized and reproduces the Gaussian
                // coherent tomogram.
                let constant = -e.conj() * alpha * alpha / (2.0 * e) - 0.5 * alpha.norm_sqr();
                (base * constant.exp(), alpha * SQRT_2 / e)
            }
            QuantumState::Fock { n } => {
                // (eps^* / 2 eps)^{n/2} = 2^{-n/2} e^{-i n Omega t} on the unwrapped branch
                let n = f64::from(n);
                let phase = Complex64::from_polar(2f64.powf(-0.5 * n), -n * eps.phase);
                let norm = (-0.5 * ln_factorial(n)).exp();
                (base * phase * norm, Complex64::new(0.0, 0.0))
            }
        };
        Self {
            state,
            eps,
            prefactor,
            half_kappa_i,
            linear,
            inv_modulus: (-eps.log_modulus).exp(),
        }
    }

    pub fn state(&self) -> QuantumState {
        self.state
    }

    pub fn epsilon(&self) -> &EpsilonState {
        &self.eps
    }

    pub fn eval(&self, q: f64) -> Complex64 {
        let gauss = (self.half_kappa_i * q * q + self.linear * q).exp();
        match self.state {
            QuantumState::Coherent { .. } => self.prefactor * gauss,
            QuantumState::Fock { n } => {
                let h = crate::numerics::hermite(n, q * self.inv_modulus).unwrap_or(f64::NAN);
                self.prefactor * gauss * h
            }
        }
    }
}

fn ln_factorial(n: f64) -> f64 {
    (1..=n as u32).map(|k| f64::from(k).ln()).sum()
}

pub fn coherent_psi(q: f64, t: f64, alpha: Complex64, params: &DampingParams) -> Complex64 {
    WaveFunction::new(QuantumState::Coherent { alpha }, t, params).eval(q)
}

pub fn fock_psi(q: f64, t: f64, n: u32, params: &DampingParams) -> Result<Complex64> {
    Ok(WaveFunction::new(QuantumState::fock(n)?, t, params).eval(q))
}

/// Gaussian phase-space envelope of a state: mean of `(q, p)` and the
/// covariance of the ground-like state at the same time, plus a spread
/// multiplier for the state's extra structure. Used to place quadrature
/// windows; never enters a computed value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSpaceEnvelope {
    pub mean: (f64, f64),
    pub var_q: f64,
    pub cov_qp: f64,
    pub var_p: f64,
    pub spread: f64,
}

impl PhaseSpaceEnvelope {
    pub fn new(state: QuantumState, t: f64, params: &DampingParams) -> Self {
        let eps = epsilon(t, params);
        let ee = eps.modulus_sq();
        let re_kappa = params.growth(t) * eps.conj_eps_eps_dot().re / ee;
        let var_q = 0.5 * ee;
        let (mean, spread) = match state {
            QuantumState::Fock { n } => ((0.0, 0.0), (2.0 * f64::from(n) + 1.0).sqrt()),
            QuantumState::Coherent { alpha } => {
                let z = alpha * SQRT_2 / eps.eps;
                let q = ee * z.re;
                ((q, re_kappa * q + z.im), 1.0)
            }
        };
        Self {
            mean,
            var_q,
            cov_qp: re_kappa * var_q,
            var_p: 0.5 / ee + re_kappa * re_kappa * var_q,
            spread,
        }
    }

    /// Standard deviation of the envelope along the unit vector `(dq, dp)`.
    pub fn sigma_along(&self, dq: f64, dp: f64) -> f64 {
        (dq * dq * self.var_q + 2.0 * dq * dp * self.cov_qp + dp * dp * self.var_p).sqrt()
    }
}

/// Wigner function evaluator for one state at one time.
///
/// `W(q, p) = int psi(q + u/2) psi^*(q - u/2) e^{-ipu} du`, normalized so that
/// the phase-space integral of `W` is `2 pi`.
#[derive(Debug, Clone)]
pub struct Wigner {
    psi: WaveFunction,
    envelope: PhaseSpaceEnvelope,
    modulus: f64,
    u_half_width: f64,
    base_frequency: f64,
    re_kappa: f64,
}

impl Wigner {
    pub fn new(state: QuantumState, t: f64, params: &DampingParams) -> Self {
        let psi = WaveFunction::new(state, t, params);
        let envelope = PhaseSpaceEnvelope::new(state, t, params);
        let eps = *psi.epsilon();
        let modulus = eps.modulus_sq().sqrt();
        let re_kappa = params.growth(t) * eps.conj_eps_eps_dot().re / eps.modulus_sq();
        let base_frequency = match state {
            QuantumState::Coherent { alpha } => (alpha * SQRT_2 / eps.eps).norm(),
            QuantumState::Fock { .. } => 0.0,
        };
        Self {
            modulus,
            u_half_width: 2.0 * modulus * (envelope.spread + 7.0),
            envelope,
            psi,
            base_frequency,
            re_kappa,
        }
    }

    pub fn envelope(&self) -> &PhaseSpaceEnvelope {
        &self.envelope
    }

    /// Complex value of the defining integral; its imaginary part is
    /// quadrature noise.
    pub fn eval_complex(&self, q: f64, p: f64) -> Result<Complex64> {
        let frequency = p.abs() + self.re_kappa.abs() * q.abs() + self.base_frequency;
        let resolution = (1.5 * self.modulus).min(6.0 / frequency.max(1e-300));
        let spec = QuadratureSpec::resolved(0.0, self.u_half_width, resolution)?;
        integrate_complex(
            |u| {
                self.psi.eval(q + 0.5 * u)
                    * self.psi.eval(q - 0.5 * u).conj()
                    * Complex64::from_polar(1.0, -p * u)
            },
            &spec,
        )
    }

    pub fn eval(&self, q: f64, p: f64) -> Result<f64> {
        let w = self.eval_complex(q, p)?;
        if !(w.im.abs() < 1e-9 * (1.0 + w.re.abs())) {
            return Err(Error::NonFinite("Wigner quadrature (non-real result)"));
        }
        Ok(w.re)
    }
}

pub fn wigner(q: f64, p: f64, t: f64, state: QuantumState, params: &DampingParams) -> Result<f64> {
    Wigner::new(state, t, params).eval(q, p)
}
