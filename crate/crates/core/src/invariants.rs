//! Number-operator invariants of the damped oscillator acting on tomograms.
//!
//! The operators contain inverse powers of `d/dX`, so they are applied to the
//! characteristic function `w~(k, mu, nu) = int w(X, mu, nu) e^{ikX} dX`
//! at `k != 0`, where `d/dX` becomes multiplication by `-ik`. Derivatives in
//! `mu` and `nu` are central differences of `w~`.

use num_complex::Complex64;

use crate::dynamics::{epsilon, DampingParams};
use crate::error::{Error, Result};
use crate::numerics::integrate_complex;
use crate::states::QuantumState;
use crate::tomography::{Tomogram, TomographyFrame};

pub const DEFAULT_K_MIN: f64 = 0.05;
pub const DEFAULT_RESIDUAL_FLOOR: f64 = 1e-3;
/// Highest Fock index accepted by [`number_apply`].
pub const MAX_INVARIANT_FOCK: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualPoint {
    pub k: f64,
    pub mu: f64,
    pub nu: f64,
    pub t: f64,
}

impl DualPoint {
    pub fn new(k: f64, mu: f64, nu: f64, t: f64) -> Self {
        Self { k, mu, nu, t }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorVariant {
    /// `a^dagger a (t)`
    Direct,
    /// Its complex conjugate counterpart.
    Conjugate,
}

impl OperatorVariant {
    pub const ALL: [OperatorVariant; 2] = [OperatorVariant::Direct, OperatorVariant::Conjugate];

    pub fn name(self) -> &'static str {
        match self {
            OperatorVariant::Direct => "direct",
            OperatorVariant::Conjugate => "conjugate",
        }
    }
}

/// Which coefficient set to use.
///
/// `Derived` is the form obtained by mapping the invariant annihilation
/// operator through the Wigner correspondence; it has `n` as eigenvalue.
/// `Unscaled` drops the quarter on the `k^2` term and the `e^{4 gamma t}` on
/// the `nu d/dmu` term, and flips the signs of the conjugate variant's mixed
/// terms. It misses the eigenvalue by order one and serves as a negative
/// control for the eigenvalue checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum OperatorForm {
    #[default]
    Derived,
    Unscaled,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantSettings {
    pub k_min: f64,
    pub floor: f64,
    pub form: OperatorForm,
}

impl Default for InvariantSettings {
    fn default() -> Self {
        Self {
            k_min: DEFAULT_K_MIN,
            floor: DEFAULT_RESIDUAL_FLOOR,
            form: OperatorForm::Derived,
        }
    }
}

/// `w~(k, mu, nu, t)` by quadrature over the tomogram.
pub fn tomogram_characteristic(
    state: QuantumState,
    k: f64,
    mu: f64,
    nu: f64,
    t: f64,
    params: &DampingParams,
) -> Result<Complex64> {
    characteristic_of(&Tomogram::new(state, t, params)?, k, mu, nu)
}

fn characteristic_of(tomo: &Tomogram, k: f64, mu: f64, nu: f64) -> Result<Complex64> {
    let spec = tomo.x_window(mu, nu)?;
    let mut err = None;
    let value = integrate_complex(
        |x| match tomo.eval(&TomographyFrame { x, mu, nu }) {
            Ok(w) => Complex64::from_polar(w, k * x),
            Err(e) => {
                err.get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        },
        &spec,
    )?;
    match err {
        Some(e) => Err(e),
        None => Ok(value),
    }
}

/// Coefficients of one operator, named by the term they multiply.
struct Coefficients {
    /// On `-1/k^2 d2/dnu2`.
    nn: f64,
    /// On `-1/k^2 d2/dmu2`.
    mm: f64,
    /// On `-1/k^2 d2/dmu dnu`.
    mn: f64,
    /// Overall factor of the `k^2 (...)` term.
    square: f64,
    /// `mu^2`, `nu^2`, `mu nu` inside the `k^2` term.
    sq_mu: f64,
    sq_nu: f64,
    sq_mix: f64,
    /// Bracket acting through `d/dnu`: `p3 [ mu_dn mu d/dnu + x1 nu d/dnu + x2 (nu d/dnu + 1) ]`.
    p3: Complex64,
    mu_dn: f64,
    x1: Complex64,
    x2: Complex64,
    /// Bracket acting through `d/dmu`: `p4 [ nu_dm nu d/dmu + y1 mu d/dmu + y2 (mu d/dmu + 1) ]`.
    p4: Complex64,
    nu_dm: f64,
    y1: Complex64,
    y2: Complex64,
}

fn coefficients(
    variant: OperatorVariant,
    form: OperatorForm,
    t: f64,
    params: &DampingParams,
) -> Coefficients {
    let eps = epsilon(t, params);
    let growth = params.growth(t);
    let ee = eps.modulus_sq();
    let dd = eps.eps_dot.norm_sqr();
    let c = eps.conj_eps_eps_dot();
    let half = 0.5 * growth;
    let cross = growth * 2.0 * c.re;
    let i = Complex64::i();
    let (nu_dm, square) = match form {
        OperatorForm::Derived => (growth * growth * dd, 0.25),
        OperatorForm::Unscaled => (dd, 1.0),
    };
    let mut out = Coefficients {
        nn: ee,
        mm: growth * growth * dd,
        mn: -cross,
        square,
        sq_mu: ee,
        sq_nu: growth * growth * dd,
        sq_mix: cross,
        p3: i,
        mu_dn: ee,
        x1: c.conj() * half,
        x2: c * half,
        p4: -i,
        nu_dm,
        y1: c * half,
        y2: c.conj() * half,
    };
    match (variant, form) {
        (OperatorVariant::Direct, _) => {}
        (OperatorVariant::Conjugate, OperatorForm::Derived) => {
            out.p3 = -i;
            out.x1 = out.x1.conj();
            out.x2 = out.x2.conj();
            out.p4 = i;
            out.y1 = out.y1.conj();
            out.y2 = out.y2.conj();
        }
        (OperatorVariant::Conjugate, OperatorForm::Unscaled) => {
            out.mn = cross;
            out.sq_mix = -cross;
            out.p3 = -i;
            out.x1 = -c * half;
            out.x2 = -c.conj() * half;
            out.p4 = i;
            out.y1 = -c.conj() * half;
            out.y2 = -c * half;
        }
    }
    out
}

/// Values of `w~` on the nine-point stencil around `(mu, nu)`.
struct Stencil {
    w: Complex64,
    d_mu: Complex64,
    d_nu: Complex64,
    d_mumu: Complex64,
    d_nunu: Complex64,
    d_munu: Complex64,
}

fn stencil(tomo: &Tomogram, point: &DualPoint, h: f64) -> Result<Stencil> {
    let DualPoint { k, mu, nu, .. } = *point;
    let f = |m: f64, n: f64| characteristic_of(tomo, k, m, n);
    let w = f(mu, nu)?;
    let mp = f(mu + h, nu)?;
    let mm = f(mu - h, nu)?;
    let np = f(mu, nu + h)?;
    let nm = f(mu, nu - h)?;
    let pp = f(mu + h, nu + h)?;
    let pm = f(mu + h, nu - h)?;
    let qp = f(mu - h, nu + h)?;
    let qm = f(mu - h, nu - h)?;
    Ok(Stencil {
        w,
        d_mu: (mp - mm) / (2.0 * h),
        d_nu: (np - nm) / (2.0 * h),
        d_mumu: (mp - 2.0 * w + mm) / (h * h),
        d_nunu: (np - 2.0 * w + nm) / (h * h),
        d_munu: (pp - pm - qp + qm) / (4.0 * h * h),
    })
}

fn apply(co: &Coefficients, s: &Stencil, point: &DualPoint) -> Complex64 {
    let DualPoint { k, mu, nu, .. } = *point;
    let second = -(co.nn * s.d_nunu + co.mm * s.d_mumu + co.mn * s.d_munu) / (k * k);
    let square =
        co.square * k * k * (co.sq_mu * mu * mu + co.sq_nu * nu * nu + co.sq_mix * mu * nu) * s.w;
    let nu_drift = nu * s.d_nu;
    let third = co.p3 * (co.mu_dn * mu * s.d_nu + co.x1 * nu_drift + co.x2 * (nu_drift + s.w));
    let mu_drift = mu * s.d_mu;
    let fourth = co.p4 * (co.nu_dm * nu * s.d_mu + co.y1 * mu_drift + co.y2 * (mu_drift + s.w));
    0.5 * (second + square + third + fourth)
}

fn check_point(n: u32, point: &DualPoint, k_min: f64) -> Result<()> {
    if n > MAX_INVARIANT_FOCK {
        return Err(Error::Domain(format!(
            "Fock index {n} exceeds {MAX_INVARIANT_FOCK}"
        )));
    }
    if !(point.k.abs() >= k_min) {
        return Err(Error::KTooSmall { k: point.k, k_min });
    }
    if point.mu == 0.0 && point.nu == 0.0 {
        return Err(Error::DegenerateFrame);
    }
    Ok(())
}

/// Invariant number operator applied to the Fock-`n` characteristic function.
pub fn number_apply(
    variant: OperatorVariant,
    n: u32,
    point: &DualPoint,
    h: f64,
    params: &DampingParams,
) -> Result<Complex64> {
    number_apply_with(variant, n, point, h, params, &InvariantSettings::default())
}

pub fn number_apply_with(
    variant: OperatorVariant,
    n: u32,
    point: &DualPoint,
    h: f64,
    params: &DampingParams,
    settings: &InvariantSettings,
) -> Result<Complex64> {
    Ok(number_apply_pair(variant, n, point, h, params, settings)?.0)
}

/// Returns the operator image together with `w~` at the point.
fn number_apply_pair(
    variant: OperatorVariant,
    n: u32,
    point: &DualPoint,
    h: f64,
    params: &DampingParams,
    settings: &InvariantSettings,
) -> Result<(Complex64, Complex64)> {
    check_point(n, point, settings.k_min)?;
    let tomo = Tomogram::new(QuantumState::Fock { n }, point.t, params)?;
    let s = stencil(&tomo, point, h)?;
    let co = coefficients(variant, settings.form, point.t, params);
    Ok((apply(&co, &s, point), s.w))
}

/// Largest relative eigenvalue mismatch over the sample and both variants.
pub fn eigen_residual(n: u32, sample: &[DualPoint], h: f64, params: &DampingParams) -> Result<f64> {
    eigen_residual_with(
        n,
        sample,
        h,
        params,
        &InvariantSettings::default(),
        &OperatorVariant::ALL,
    )
}

pub fn eigen_residual_with(
    n: u32,
    sample: &[DualPoint],
    h: f64,
    params: &DampingParams,
    settings: &InvariantSettings,
    variants: &[OperatorVariant],
) -> Result<f64> {
    if sample.is_empty() || variants.is_empty() {
        return Err(Error::Domain(
            "eigen residual needs a nonempty sample".into(),
        ));
    }
    let mut worst = 0.0_f64;
    for point in sample {
        for &variant in variants {
            let (image, w) = number_apply_pair(variant, n, point, h, params, settings)?;
            let r = (image - f64::from(n) * w).norm() / w.norm().max(settings.floor);
            worst = worst.max(r);
        }
    }
    Ok(worst)
}
