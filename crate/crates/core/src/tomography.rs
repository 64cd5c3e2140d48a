//! Closed-form tomograms of the ground-like, Fock and coherent states, their
//! normalization, and the Radon line integral of the Wigner function that
//! serves as an independent oracle for all of them.

use num_complex::Complex64;
use std::f64::consts::{PI, SQRT_2};

use crate::dynamics::{epsilon, frame_coeffs_at, DampingParams, EpsilonState};
use crate::error::{Error, Result};
use crate::numerics::{hermite, hermite_function, integrate, QuadratureSpec};
use crate::states::{QuantumState, Wigner, MAX_ALPHA, MAX_FOCK};

/// A point `(X, mu, nu)` of tomography space: the value `X` of the
/// quadrature `mu q + nu p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TomographyFrame {
    pub x: f64,
    pub mu: f64,
    pub nu: f64,
}

impl TomographyFrame {
    pub fn new(x: f64, mu: f64, nu: f64) -> Result<Self> {
        if mu == 0.0 && nu == 0.0 {
            return Err(Error::DegenerateFrame);
        }
        Ok(Self { x, mu, nu })
    }

    /// Homodyne frame at local-oscillator phase `phi`.
    pub fn optical(x: f64, phi: f64) -> Self {
        let Direction { mu, nu } = optical_frame(phi);
        Self { x, mu, nu }
    }
}

/// Frame direction `(mu, nu)` without the quadrature value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    pub mu: f64,
    pub nu: f64,
}

/// Homodyne quadrature `q cos(phi) - p sin(phi)`, i.e. `(mu, nu) = (cos phi, -sin phi)`.
pub fn optical_frame(phi: f64) -> Direction {
    Direction {
        mu: phi.cos(),
        nu: -phi.sin(),
    }
}

/// Above this Fock index the polynomial and Gaussian are combined inside a
/// normalized recurrence instead of squaring `H_n` directly.
const STABLE_HERMITE_FROM: u32 = 10;

/// Tomogram evaluator for one state at one time.
#[derive(Debug, Clone, Copy)]
pub struct Tomogram {
    state: QuantumState,
    eps: EpsilonState,
    params: DampingParams,
}

impl Tomogram {
    pub fn new(state: QuantumState, t: f64, params: &DampingParams) -> Result<Self> {
        match state {
            QuantumState::Fock { n } if n > MAX_FOCK => {
                return Err(Error::Domain(format!("Fock index {n} exceeds {MAX_FOCK}")))
            }
            QuantumState::Coherent { alpha } if !(alpha.norm() <= MAX_ALPHA) => {
                return Err(Error::Domain(format!("|alpha| exceeds {MAX_ALPHA}")))
            }
            _ => {}
        }
        Ok(Self {
            state,
            eps: epsilon(t, params),
            params: *params,
        })
    }

    pub fn state(&self) -> QuantumState {
        self.state
    }

    /// Width parameter `eps eps^* (a^2 + b^2)` of the ground-like Gaussian
    /// in the given frame direction.
    pub fn width(&self, mu: f64, nu: f64) -> Result<f64> {
        let c = frame_coeffs_at(mu, nu, &self.eps, &self.params)?;
        Ok(self.eps.modulus_sq() * c.norm_sq())
    }

    pub fn ground(&self, frame: &TomographyFrame) -> Result<f64> {
        let d = self.width(frame.mu, frame.nu)?;
        Ok((-frame.x * frame.x / d).exp() / (PI * d).sqrt())
    }

    pub fn fock(&self, frame: &TomographyFrame, n: u32) -> Result<f64> {
        if n > MAX_FOCK {
            return Err(Error::Domain(format!("Fock index {n} exceeds {MAX_FOCK}")));
        }
        let d = self.width(frame.mu, frame.nu)?;
        let y = frame.x / d.sqrt();
        if n < STABLE_HERMITE_FROM {
            let h = hermite(n, y)?;
            let scale = (0..n).fold(1.0, |acc, k| acc * 2.0 * f64::from(k + 1));
            Ok((-frame.x * frame.x / d).exp() / (PI * d).sqrt() * h * h / scale)
        } else {
            let h = hermite_function(n, y);
            Ok(h * h / (PI * d).sqrt())
        }
    }

    /// Coherent tomogram. The two alpha-dependent exponential factors are
    /// formed independently and must be complex conjugates of each other; a
    /// residual imaginary part is reported as [`Error::ConjugationBroken`].
    /// Exponents are summed before exponentiating to stay clear of overflow.
    pub fn coherent(&self, frame: &TomographyFrame, alpha: Complex64) -> Result<f64> {
        let c = frame_coeffs_at(frame.mu, frame.nu, &self.eps, &self.params)?;
        let e = self.eps.eps;
        let d = e.norm_sqr() * c.norm_sq();
        let x = frame.x;
        let minus = Complex64::new(c.a, -c.b);
        let plus = Complex64::new(c.a, c.b);
        let ec = e.conj();
        let ac = alpha.conj();

        let first = -alpha * alpha * ec * ec * minus * minus / (2.0 * d)
            + alpha * SQRT_2 * ec * x * minus / d;
        let second = -ac * ac * e * e * plus * plus / (2.0 * d) + ac * SQRT_2 * e * x * plus / d;
        let exponent = first + second - alpha.norm_sqr() - x * x / d;
        let value = exponent.exp() / (PI * d).sqrt();
        if !(value.im.abs() < 1e-9 * (1.0 + value.re.abs())) {
            return Err(Error::ConjugationBroken {
                re: value.re,
                im: value.im,
            });
        }
        Ok(value.re)
    }

    pub fn eval(&self, frame: &TomographyFrame) -> Result<f64> {
        match self.state {
            QuantumState::Fock { n } => self.fock(frame, n),
            QuantumState::Coherent { alpha } => self.coherent(frame, alpha),
        }
    }

    /// Quadrature window in `X` that holds the whole distribution.
    pub fn x_window(&self, mu: f64, nu: f64) -> Result<QuadratureSpec> {
        let sigma = (0.5 * self.width(mu, nu)?).sqrt();
        QuadratureSpec::resolved(0.0, 8.0 * sigma * self.state.window_factor(), sigma)
    }
}

pub fn ground_tomogram(frame: &TomographyFrame, t: f64, params: &DampingParams) -> Result<f64> {
    Tomogram::new(QuantumState::Fock { n: 0 }, t, params)?.ground(frame)
}

pub fn fock_tomogram(
    frame: &TomographyFrame,
    t: f64,
    n: u32,
    params: &DampingParams,
) -> Result<f64> {
    Tomogram::new(QuantumState::fock(n)?, t, params)?.fock(frame, n)
}

pub fn coherent_tomogram(
    frame: &TomographyFrame,
    t: f64,
    alpha: Complex64,
    params: &DampingParams,
) -> Result<f64> {
    Tomogram::new(QuantumState::coherent(alpha)?, t, params)?.coherent(frame, alpha)
}

pub fn tomogram(
    state: QuantumState,
    frame: &TomographyFrame,
    t: f64,
    params: &DampingParams,
) -> Result<f64> {
    Tomogram::new(state, t, params)?.eval(frame)
}

/// `int w(X, mu, nu, t) dX` by quadrature; should be one.
pub fn normalization(
    state: QuantumState,
    mu: f64,
    nu: f64,
    t: f64,
    params: &DampingParams,
) -> Result<f64> {
    let tomo = Tomogram::new(state, t, params)?;
    let spec = tomo.x_window(mu, nu)?;
    let mut err = None;
    let total = integrate(
        |x| match tomo.eval(&TomographyFrame { x, mu, nu }) {
            Ok(v) => v,
            Err(e) => {
                err.get_or_insert(e);
                f64::NAN
            }
        },
        &spec,
    );
    match err {
        Some(e) => Err(e),
        None => total,
    }
}

/// Tomogram as the line integral of the numerically computed Wigner function
/// over `mu q + nu p = X`:
/// `w = (1 / 2 pi s) int W(line(tau)) dtau`, `s = |(mu, nu)|`.
pub fn radon_tomogram(
    state: QuantumState,
    frame: &TomographyFrame,
    t: f64,
    params: &DampingParams,
) -> Result<f64> {
    RadonOracle::new(state, t, params).eval(frame)
}

/// Reusable Radon evaluator for one state at one time.
#[derive(Debug, Clone)]
pub struct RadonOracle {
    wigner: Wigner,
}

impl RadonOracle {
    pub fn new(state: QuantumState, t: f64, params: &DampingParams) -> Self {
        Self {
            wigner: Wigner::new(state, t, params),
        }
    }

    pub fn eval(&self, frame: &TomographyFrame) -> Result<f64> {
        let TomographyFrame { x, mu, nu } = *frame;
        if mu == 0.0 && nu == 0.0 {
            return Err(Error::DegenerateFrame);
        }
        let s = mu.hypot(nu);
        let base = (x * mu / (s * s), x * nu / (s * s));
        let dir = (-nu / s, mu / s);

        // Window from the Gaussian envelope: centered where the envelope
        // peaks along the line, wide enough for the state's spread.
        let env = self.wigner.envelope();
        let det = env.var_q * env.var_p - env.cov_qp * env.cov_qp;
        let inv = [env.var_p / det, -env.cov_qp / det, env.var_q / det];
        let quad = |a: (f64, f64), b: (f64, f64)| {
            a.0 * (inv[0] * b.0 + inv[1] * b.1) + a.1 * (inv[1] * b.0 + inv[2] * b.1)
        };
        let curvature = quad(dir, dir);
        let offset = (env.mean.0 - base.0, env.mean.1 - base.1);
        let center = quad(dir, offset) / curvature;
        let sigma_cond = curvature.sqrt().recip();
        let sigma = env.sigma_along(dir.0, dir.1);
        let half_width = (8.0 + 2.0 * env.spread) * sigma;
        let spec = QuadratureSpec::resolved(center, half_width, 1.2 * sigma_cond / env.spread)?;

        let mut err = None;
        let total = integrate(
            |tau| {
                let (q, p) = (base.0 + tau * dir.0, base.1 + tau * dir.1);
                self.wigner.eval(q, p).unwrap_or_else(|e| {
                    err.get_or_insert(e);
                    f64::NAN
                })
            },
            &spec,
        );
        if let Some(e) = err {
            return Err(e);
        }
        Ok(total? / (2.0 * PI * s))
    }
}
