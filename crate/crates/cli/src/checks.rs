//! Seeded verification suites behind `ck-tomo check`.
//!
//! Every check draws its samples from its own ChaCha8 stream, keyed by the
//! run seed and the check name, so a suite reports the same numbers whether
//! it runs alone or as part of `all`. Samples are drawn sequentially and
//! evaluated in parallel; only order-independent reductions are used.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::str::FromStr;

use ck_tomo::dynamics::integrate_mode_equation;
use ck_tomo::evolution::log_log_slope;
use ck_tomo::numerics::{
    central_diff, hermite, hermite_function, integrate, Derivative, QuadratureSpec,
};
use ck_tomo::{
    convergence_study, eigen_residual_with, epsilon, epsilon_residual, evolution_residual_rescaled,
    evolution_terms, make_params, normalization, time_backward, time_forward, tomogram,
    tomogram_characteristic, Complex64, DualPoint, EvolutionPoint, InvariantSettings,
    OperatorVariant, QuantumState, RadonOracle, ScalarGrid, Tomogram, TomographyFrame, Wigner,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::commands::{cmd_figure1, row_integrals};
use crate::error::{usage, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Dynamics,
    Numerics,
    Tomography,
    Evolution,
    Invariants,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Dynamics => "dynamics",
            Suite::Numerics => "numerics",
            Suite::Tomography => "tomography",
            Suite::Evolution => "evolution",
            Suite::Invariants => "invariants",
        }
    }

    fn includes(self, group: Suite) -> bool {
        self == Suite::All || self == group
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        [
            Suite::All,
            Suite::Dynamics,
            Suite::Numerics,
            Suite::Tomography,
            Suite::Evolution,
            Suite::Invariants,
        ]
        .into_iter()
        .find(|x| x.name() == s)
        .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub max_residual: f64,
    pub tolerance: f64,
    pub samples: usize,
    /// Set when the check could not be evaluated.
    pub error: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.max_residual <= self.tolerance
    }

    pub fn line(&self) -> String {
        let mut s = format!(
            "{:<4} {:<38} max={:<10.3e} tol={:<8.1e} n={}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.max_residual,
            self.tolerance,
            self.samples
        );
        if let Some(e) = &self.error {
            let _ = write!(s, " error: {e}");
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub suite: Suite,
    pub seed: u64,
    pub outcomes: Vec<CheckOutcome>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(CheckOutcome::passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckOutcome> {
        self.outcomes.iter().find(|o| o.name == name)
    }

    pub fn render(&self) -> String {
        let mut s = format!("# suite={} seed={}\n", self.suite.name(), self.seed);
        for o in &self.outcomes {
            s.push_str(&o.line());
            s.push('\n');
        }
        let passed = self.outcomes.iter().filter(|o| o.passed()).count();
        let _ = writeln!(
            s,
            "# checks={} passed={} failed={}",
            self.outcomes.len(),
            passed,
            self.outcomes.len() - passed
        );
        s
    }
}

type Measured = ck_tomo::Result<(f64, usize)>;

struct Check {
    group: Suite,
    name: &'static str,
    tolerance: f64,
    run: fn(&mut ChaCha8Rng) -> Measured,
}

/// The registry; names double as `--tol` keys.
fn registry() -> Vec<Check> {
    use Suite::*;
    let c = |group, name, tolerance, run| Check {
        group,
        name,
        tolerance,
        run,
    };
    vec![
        c(Dynamics, "dynamics.mode_residual", 1e-10, mode_residual),
        c(Dynamics, "dynamics.wronskian", 1e-10, wronskian),
        c(Dynamics, "dynamics.ode_agreement", 1e-7, ode_agreement),
        c(Dynamics, "dynamics.time_round_trip", 1e-12, time_round_trip),
        c(
            Dynamics,
            "dynamics.rescaled_time_value",
            1e-12,
            rescaled_time_value,
        ),
        c(
            Numerics,
            "numerics.hermite_explicit",
            1e-10,
            hermite_explicit,
        ),
        c(Numerics, "numerics.hermite_parity", 0.0, hermite_parity),
        c(
            Numerics,
            "numerics.hermite_orthonormal",
            1e-12,
            hermite_orthonormal,
        ),
        c(
            Numerics,
            "numerics.quadrature_gaussian",
            1e-14,
            quadrature_gaussian,
        ),
        c(Numerics, "numerics.diff_order", 0.1, diff_order),
        c(
            Tomography,
            "tomography.normalization",
            1e-9,
            tomo_normalization,
        ),
        c(Tomography, "tomography.radon_ground", 1e-5, radon_ground),
        c(Tomography, "tomography.radon_fock", 1e-5, radon_fock),
        c(
            Tomography,
            "tomography.radon_coherent",
            1e-5,
            radon_coherent,
        ),
        c(Tomography, "tomography.homogeneity", 1e-10, homogeneity),
        c(
            Tomography,
            "tomography.frictionless_limit",
            1e-10,
            frictionless_limit,
        ),
        c(Tomography, "tomography.parity", 1e-12, parity),
        c(
            Tomography,
            "tomography.vacuum_coherent",
            0.0,
            vacuum_coherent,
        ),
        c(Tomography, "tomography.nonnegative", 0.0, nonnegative),
        c(
            Tomography,
            "tomography.wigner_ground_peak",
            1e-6,
            wigner_ground_peak,
        ),
        c(
            Tomography,
            "tomography.wigner_fock1_origin",
            1e-5,
            wigner_fock1_origin,
        ),
        c(Tomography, "tomography.wigner_parity", 1e-8, wigner_parity),
        c(
            Tomography,
            "tomography.figure_nonnegative",
            0.0,
            figure_nonnegative,
        ),
        c(
            Tomography,
            "tomography.figure_zero_line",
            0.0,
            figure_zero_line,
        ),
        c(
            Tomography,
            "tomography.figure_normalization",
            1e-6,
            figure_normalization,
        ),
        c(
            Tomography,
            "tomography.figure_periodicity",
            1e-10,
            figure_periodicity,
        ),
        c(
            Tomography,
            "tomography.figure_lobe_symmetry",
            0.0,
            figure_lobe_symmetry,
        ),
        c(Evolution, "evolution.residual", 1e-5, evolution_relative),
        c(
            Evolution,
            "evolution.convergence_order",
            0.3,
            evolution_order,
        ),
        c(
            Evolution,
            "evolution.rescaled_consistency",
            1e-4,
            evolution_rescaled,
        ),
        c(
            Evolution,
            "evolution.frictionless_point",
            1e-6,
            evolution_frictionless,
        ),
        c(Invariants, "invariants.eigen_n0_direct", 1e-3, |r| {
            eigen(r, 0, OperatorVariant::Direct)
        }),
        c(Invariants, "invariants.eigen_n0_conjugate", 1e-3, |r| {
            eigen(r, 0, OperatorVariant::Conjugate)
        }),
        c(Invariants, "invariants.eigen_n1_direct", 1e-3, |r| {
            eigen(r, 1, OperatorVariant::Direct)
        }),
        c(Invariants, "invariants.eigen_n1_conjugate", 1e-3, |r| {
            eigen(r, 1, OperatorVariant::Conjugate)
        }),
        c(Invariants, "invariants.eigen_n2_direct", 5e-3, |r| {
            eigen(r, 2, OperatorVariant::Direct)
        }),
        c(Invariants, "invariants.eigen_n2_conjugate", 5e-3, |r| {
            eigen(r, 2, OperatorVariant::Conjugate)
        }),
        c(
            Invariants,
            "invariants.dual_homogeneity",
            1e-8,
            dual_homogeneity,
        ),
        c(
            Invariants,
            "invariants.characteristic_bound",
            1e-12,
            characteristic_bound,
        ),
        c(
            Invariants,
            "invariants.ground_characteristic",
            1e-12,
            ground_characteristic,
        ),
        c(
            Invariants,
            "invariants.zero_k_normalization",
            1e-9,
            zero_k_normalization,
        ),
    ]
}

pub fn check_names() -> Vec<&'static str> {
    registry().iter().map(|c| c.name).collect()
}

/// FNV-1a, used to key each check's random stream by its name.
fn stream_key(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

pub fn run_suite(suite: Suite, seed: u64, overrides: &BTreeMap<String, f64>) -> CliResult<Report> {
    let checks = registry();
    if let Some(unknown) = overrides
        .keys()
        .find(|k| !checks.iter().any(|c| c.name == k.as_str()))
    {
        return Err(usage(format!("--tol names unknown check {unknown:?}")));
    }
    let outcomes = checks
        .iter()
        .filter(|c| suite.includes(c.group))
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ stream_key(c.name));
            let tolerance = overrides.get(c.name).copied().unwrap_or(c.tolerance);
            let (max_residual, samples, error) = match (c.run)(&mut rng) {
                Ok((r, n)) => (r, n, None),
                Err(e) => (f64::INFINITY, 0, Some(e.to_string())),
            };
            CheckOutcome {
                name: c.name,
                max_residual,
                tolerance,
                samples,
                error,
            }
        })
        .collect();
    Ok(Report {
        suite,
        seed,
        outcomes,
    })
}

// ---- sampling and reduction helpers -------------------------------------

/// Largest value over the items, NaN-propagating, evaluated in parallel.
fn max_over<T: Sync>(
    items: &[T],
    f: impl Fn(&T) -> ck_tomo::Result<f64> + Sync + Send,
) -> Measured {
    let values: Vec<ck_tomo::Result<f64>> = items.par_iter().map(f).collect();
    let mut worst = 0.0_f64;
    for v in values {
        let v = v?;
        if !worst.is_nan() && (v.is_nan() || v > worst) {
            worst = v;
        }
    }
    Ok((worst, items.len()))
}

const RADON_ALPHAS: [Complex64; 3] = [
    Complex64::new(0.0, 0.0),
    Complex64::new(1.0, 0.5),
    Complex64::new(2.0, -1.0),
];

fn pick<T: Copy>(rng: &mut ChaCha8Rng, xs: &[T]) -> T {
    *xs.choose(rng).expect("nonempty choice")
}

fn random_state(rng: &mut ChaCha8Rng) -> QuantumState {
    if rng.gen_bool(0.5) {
        QuantumState::Fock {
            n: rng.gen_range(0..=4),
        }
    } else {
        QuantumState::Coherent {
            alpha: Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
        }
    }
}

/// Random frame direction with length in `[r_min, r_max]`.
fn random_direction(rng: &mut ChaCha8Rng, r_min: f64, r_max: f64) -> (f64, f64) {
    let r = rng.gen_range(r_min..r_max);
    let phi = rng.gen_range(0.0..2.0 * PI);
    (r * phi.cos(), -r * phi.sin())
}

// ---- dynamics -------------------------------------------------------------

fn dynamics_samples(rng: &mut ChaCha8Rng) -> Vec<(f64, f64)> {
    (0..200)
        .map(|_| (rng.gen_range(0.0..20.0), rng.gen_range(0.0..0.9)))
        .collect()
}

fn mode_residual(rng: &mut ChaCha8Rng) -> Measured {
    max_over(&dynamics_samples(rng), |&(t, g)| {
        Ok(epsilon_residual(t, &make_params(g)?))
    })
}

fn wronskian(rng: &mut ChaCha8Rng) -> Measured {
    max_over(&dynamics_samples(rng), |&(t, g)| {
        let p = make_params(g)?;
        Ok((epsilon(t, &p).wronskian(&p) - 1.0).abs())
    })
}

fn ode_agreement(rng: &mut ChaCha8Rng) -> Measured {
    max_over(&dynamics_samples(rng), |&(t, g)| {
        let p = make_params(g)?;
        let exact = epsilon(t, &p);
        let num = integrate_mode_equation(t, 1e-3, &p);
        Ok((exact.eps - num.eps)
            .norm()
            .max((exact.eps_dot - num.eps_dot).norm()))
    })
}

fn time_round_trip(rng: &mut ChaCha8Rng) -> Measured {
    // Beyond gamma t ~ 2 the inverse map loses digits to 1 - e^{-2 gamma t}.
    let samples: Vec<(f64, f64)> = (0..200)
        .map(|_| {
            let g: f64 = rng.gen_range(0.0..0.9);
            let t_max = if g > 0.0 { (2.0 / g).min(20.0) } else { 20.0 };
            (rng.gen_range(0.0..t_max), g)
        })
        .collect();
    max_over(&samples, |&(t, g)| {
        Ok((time_backward(time_forward(t, g), g)? - t).abs() / t.max(1.0))
    })
}

fn rescaled_time_value(_: &mut ChaCha8Rng) -> Measured {
    let want = -(-0.5f64).exp_m1() / 0.1;
    Ok((
        (time_forward(5.0, 0.05) - want).abs() + (time_forward(7.0, 0.0) - 7.0).abs(),
        2,
    ))
}

// ---- numerics ---------------------------------------------------------------

fn hermite_explicit(rng: &mut ChaCha8Rng) -> Measured {
    let samples: Vec<(u32, f64)> = (0..200)
        .map(|_| (rng.gen_range(0..=4), rng.gen_range(-4.0..4.0)))
        .collect();
    max_over(&samples, |&(n, x)| {
        let e = match n {
            0 => 1.0,
            1 => 2.0 * x,
            2 => 4.0 * x * x - 2.0,
            3 => 8.0 * x * x * x - 12.0 * x,
            _ => 16.0 * x.powi(4) - 48.0 * x * x + 12.0,
        };
        Ok((hermite(n, x)? - e).abs() / (1.0 + e.abs()))
    })
}

fn hermite_parity(rng: &mut ChaCha8Rng) -> Measured {
    let samples: Vec<(u32, f64)> = (0..200)
        .map(|_| (rng.gen_range(0..=40), rng.gen_range(-6.0..6.0)))
        .collect();
    max_over(&samples, |&(n, x)| {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        Ok((hermite(n, -x)? - sign * hermite(n, x)?).abs())
    })
}

fn hermite_orthonormal(_: &mut ChaCha8Rng) -> Measured {
    let spec = QuadratureSpec::resolved(0.0, 14.0, 0.25)?;
    let pairs: Vec<(u32, u32)> = [0u32, 1, 5, 16, 30]
        .iter()
        .flat_map(|&m| [0u32, 1, 5, 16, 30].map(|n| (m, n)))
        .collect();
    max_over(&pairs, |&(m, n)| {
        let v = integrate(|y| hermite_function(m, y) * hermite_function(n, y), &spec)? / PI.sqrt();
        Ok((v - if m == n { 1.0 } else { 0.0 }).abs())
    })
}

fn quadrature_gaussian(_: &mut ChaCha8Rng) -> Measured {
    let spec = QuadratureSpec::resolved(0.0, 9.0, 0.5)?;
    let v = integrate(|x| (-x * x).exp(), &spec)?;
    Ok(((v - PI.sqrt()).abs(), 1))
}

fn diff_order(_: &mut ChaCha8Rng) -> Measured {
    let f = |x: f64| x.sin() * x.exp();
    let exact = 1f64.exp() * (1f64.cos() + 1f64.sin());
    let ladder: Vec<(f64, f64)> = [2e-2, 1e-2, 5e-3]
        .iter()
        .map(|&h| (h, central_diff(f, 1.0, h, Derivative::First) - exact))
        .collect();
    Ok(((log_log_slope(&ladder) - 2.0).abs(), ladder.len()))
}

// ---- tomography -------------------------------------------------------------

fn tomo_normalization(rng: &mut ChaCha8Rng) -> Measured {
    let samples: Vec<(QuantumState, (f64, f64), f64, f64)> = (0..30)
        .map(|_| {
            (
                random_state(rng),
                random_direction(rng, 0.2, 3.0),
                rng.gen_range(0.0..8.0),
                rng.gen_range(0.0..0.7),
            )
        })
        .collect();
    max_over(&samples, |&(s, (mu, nu), t, g)| {
        Ok((normalization(s, mu, nu, t, &make_params(g)?)? - 1.0).abs())
    })
}

fn radon_points(
    rng: &mut ChaCha8Rng,
    states: &[QuantumState],
) -> Vec<(QuantumState, f64, f64, TomographyFrame)> {
    (0..30)
        .map(|_| {
            let state = pick(rng, states);
            let g = pick(rng, &[0.0, 0.05, 0.3]);
            let t = pick(rng, &[0.0, 2.0, 5.0]);
            let (mu, nu) = random_direction(rng, 0.5, 1.5);
            (
                state,
                g,
                t,
                TomographyFrame {
                    x: rng.gen_range(-3.0..3.0),
                    mu,
                    nu,
                },
            )
        })
        .collect()
}

fn radon_against(points: &[(QuantumState, f64, f64, TomographyFrame)]) -> Measured {
    max_over(points, |&(state, g, t, f)| {
        let p = make_params(g)?;
        Ok((tomogram(state, &f, t, &p)? - RadonOracle::new(state, t, &p).eval(&f)?).abs())
    })
}

fn radon_ground(rng: &mut ChaCha8Rng) -> Measured {
    radon_against(&radon_points(rng, &[QuantumState::Fock { n: 0 }]))
}

fn radon_fock(rng: &mut ChaCha8Rng) -> Measured {
    radon_against(&radon_points(
        rng,
        &[0, 1, 2].map(|n| QuantumState::Fock { n }),
    ))
}

fn radon_coherent(rng: &mut ChaCha8Rng) -> Measured {
    radon_against(&radon_points(
        rng,
        &RADON_ALPHAS.map(|alpha| QuantumState::Coherent { alpha }),
    ))
}

type FramePoint = (QuantumState, TomographyFrame, f64, f64);

fn frame_points(rng: &mut ChaCha8Rng, count: usize, gammas: &[f64]) -> Vec<FramePoint> {
    (0..count)
        .map(|_| {
            let state = random_state(rng);
            let (mu, nu) = random_direction(rng, 0.2, 2.5);
            let f = TomographyFrame {
                x: rng.gen_range(-4.0..4.0),
                mu,
                nu,
            };
            let g = if gammas.is_empty() {
                rng.gen_range(0.0..0.7)
            } else {
                pick(rng, gammas)
            };
            (state, f, rng.gen_range(0.0..8.0), g)
        })
        .collect()
}

fn homogeneity(rng: &mut ChaCha8Rng) -> Measured {
    let pts = frame_points(rng, 100, &[]);
    let lambdas: Vec<f64> = (0..pts.len())
        .map(|_| rng.gen_range(0.2..5.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 })
        .collect();
    let items: Vec<(FramePoint, f64)> = pts.into_iter().zip(lambdas).collect();
    max_over(&items, |&((s, f, t, g), lam)| {
        let p = make_params(g)?;
        let w = tomogram(s, &f, t, &p)?;
        let scaled = TomographyFrame {
            x: lam * f.x,
            mu: lam * f.mu,
            nu: lam * f.nu,
        };
        Ok((lam.abs() * tomogram(s, &scaled, t, &p)? - w).abs() / (1.0 + w))
    })
}

/// Frictionless tomograms written out directly: Fock states are stationary
/// with width `mu^2 + nu^2`; coherent states follow `alpha e^{-it}`.
fn frictionless(state: QuantumState, f: &TomographyFrame, t: f64) -> ck_tomo::Result<f64> {
    let s2 = f.mu * f.mu + f.nu * f.nu;
    Ok(match state {
        QuantumState::Fock { n } => {
            let y = f.x / s2.sqrt();
            let h = hermite(n, y)?;
            let norm: f64 = (1..=n).map(|k| 2.0 * f64::from(k)).product();
            (-y * y).exp() / (PI * s2).sqrt() * h * h / norm
        }
        QuantumState::Coherent { alpha } => {
            let a = alpha * Complex64::from_polar(1.0, -t);
            let mean = 2f64.sqrt() * (f.mu * a.re + f.nu * a.im);
            (-(f.x - mean).powi(2) / s2).exp() / (PI * s2).sqrt()
        }
    })
}

fn frictionless_limit(rng: &mut ChaCha8Rng) -> Measured {
    let pts = frame_points(rng, 100, &[0.0]);
    max_over(&pts, |&(s, f, t, _)| {
        Ok((tomogram(s, &f, t, &make_params(0.0)?)? - frictionless(s, &f, t)?).abs())
    })
}

fn parity(rng: &mut ChaCha8Rng) -> Measured {
    let pts = frame_points(rng, 100, &[]);
    max_over(&pts, |&(s, f, t, g)| {
        let p = make_params(g)?;
        let w = tomogram(s, &f, t, &p)?;
        let flipped = tomogram(
            s,
            &TomographyFrame {
                x: -f.x,
                mu: -f.mu,
                nu: -f.nu,
            },
            t,
            &p,
        )?;
        let mirror = match s {
            QuantumState::Coherent { alpha } => QuantumState::Coherent { alpha: -alpha },
            fock => fock,
        };
        let reflected = tomogram(mirror, &TomographyFrame { x: -f.x, ..f }, t, &p)?;
        Ok((w - flipped).abs().max((w - reflected).abs()) / (1.0 + w))
    })
}

fn vacuum_coherent(rng: &mut ChaCha8Rng) -> Measured {
    let pts = frame_points(rng, 100, &[]);
    max_over(&pts, |&(_, f, t, g)| {
        let p = make_params(g)?;
        let c = tomogram(
            QuantumState::Coherent {
                alpha: Complex64::new(0.0, 0.0),
            },
            &f,
            t,
            &p,
        )?;
        let ground = Tomogram::new(QuantumState::Fock { n: 0 }, t, &p)?.ground(&f)?;
        Ok((c - ground).abs())
    })
}

fn nonnegative(rng: &mut ChaCha8Rng) -> Measured {
    let pts = frame_points(rng, 200, &[]);
    max_over(&pts, |&(s, f, t, g)| {
        Ok((-tomogram(s, &f, t, &make_params(g)?)?).max(0.0))
    })
}

fn wigner_ground_peak(_: &mut ChaCha8Rng) -> Measured {
    let w = Wigner::new(QuantumState::Fock { n: 0 }, 0.0, &make_params(0.0)?).eval(0.0, 0.0)?;
    Ok(((w - 2.0).abs(), 1))
}

fn wigner_fock1_origin(_: &mut ChaCha8Rng) -> Measured {
    let w = Wigner::new(QuantumState::Fock { n: 1 }, 0.0, &make_params(0.0)?).eval(0.0, 0.0)?;
    Ok(((w + 2.0).abs(), 1))
}

fn wigner_parity(rng: &mut ChaCha8Rng) -> Measured {
    let pts: Vec<(u32, f64, f64, f64, f64)> = (0..40)
        .map(|_| {
            (
                rng.gen_range(0..=3),
                pick(rng, &[0.0, 0.05, 0.3]),
                rng.gen_range(0.0..5.0),
                rng.gen_range(-2.5..2.5),
                rng.gen_range(-2.5..2.5),
            )
        })
        .collect();
    max_over(&pts, |&(n, g, t, q, p)| {
        let w = Wigner::new(QuantumState::Fock { n }, t, &make_params(g)?);
        Ok((w.eval(q, p)? - w.eval(-q, -p)?).abs())
    })
}

fn figure() -> ck_tomo::Result<ScalarGrid> {
    cmd_figure1().map_err(|e| match e {
        crate::error::CliError::Numeric(e) => e,
        other => ck_tomo::Error::Domain(other.to_string()),
    })
}

fn figure_nonnegative(_: &mut ChaCha8Rng) -> Measured {
    let g = figure()?;
    // Adding zero folds a negative zero into +0.
    Ok((
        g.values.iter().fold(0.0_f64, |m, &v| m.max(-v)) + 0.0,
        g.values.len(),
    ))
}

fn x_axis(g: &ScalarGrid) -> &[f64] {
    &g.axis2
        .as_ref()
        .expect("figure grid is two-dimensional")
        .values
}

fn figure_zero_line(_: &mut ChaCha8Rng) -> Measured {
    let g = figure()?;
    let zero = x_axis(&g)
        .iter()
        .position(|&x| x == 0.0)
        .ok_or(ck_tomo::Error::Domain("no X=0 column".into()))?;
    let worst = (0..g.axis1.len())
        .map(|i| g.get(i, zero).abs())
        .fold(0.0, f64::max);
    Ok((worst, g.axis1.len()))
}

fn figure_normalization(_: &mut ChaCha8Rng) -> Measured {
    let g = figure()?;
    let ints = row_integrals(&g);
    Ok((
        ints.iter().map(|v| (v - 1.0).abs()).fold(0.0, f64::max),
        ints.len(),
    ))
}

fn figure_periodicity(_: &mut ChaCha8Rng) -> Measured {
    let g = figure()?;
    let last = g.axis1.len() - 1;
    let worst = g
        .row(0)
        .iter()
        .zip(g.row(last))
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok((worst, g.inner_len()))
}

/// Distance between the mirrored positive-`X` maximum and the negative-`X`
/// maximum of each row, in units of the grid step beyond one step.
fn figure_lobe_symmetry(_: &mut ChaCha8Rng) -> Measured {
    let g = figure()?;
    let xs = x_axis(&g);
    let step = xs[1] - xs[0];
    let argmax = |row: &[f64], keep: &dyn Fn(f64) -> bool| {
        xs.iter()
            .zip(row)
            .filter(|(x, _)| keep(**x))
            .fold((0.0, f64::NEG_INFINITY), |best, (&x, &v)| {
                if v > best.1 {
                    (x, v)
                } else {
                    best
                }
            })
            .0
    };
    let worst = (0..g.axis1.len())
        .map(|i| {
            let row = g.row(i);
            let right = argmax(row, &|x| x > 0.0);
            let left = argmax(row, &|x| x < 0.0);
            ((right + left).abs() - step).max(0.0) / step
        })
        .fold(0.0, f64::max);
    Ok((worst, g.axis1.len()))
}

// ---- evolution --------------------------------------------------------------

fn evolution_points(
    rng: &mut ChaCha8Rng,
    count: usize,
    gammas: &[f64],
    t_max: f64,
) -> Vec<(QuantumState, EvolutionPoint, f64)> {
    let states: Vec<QuantumState> = [0, 1, 2]
        .map(|n| QuantumState::Fock { n })
        .into_iter()
        .chain(RADON_ALPHAS.map(|alpha| QuantumState::Coherent { alpha }))
        .collect();
    (0..count)
        .map(|_| {
            let state = pick(rng, &states);
            let phi = rng.gen_range(0.0..2.0 * PI);
            let point = EvolutionPoint::new(
                rng.gen_range(-3.0..3.0),
                phi.cos(),
                -phi.sin(),
                rng.gen_range(0.1..t_max),
            );
            (state, point, pick(rng, gammas))
        })
        .collect()
}

fn evolution_relative(rng: &mut ChaCha8Rng) -> Measured {
    let pts = evolution_points(rng, 50, &[0.0, 0.05, 0.3, 0.7], 8.0);
    max_over(&pts, |&(s, point, g)| {
        let terms = evolution_terms(s, &point, 1e-3, &make_params(g)?)?;
        Ok(terms.residual().abs() / terms.value.max(1.0))
    })
}

fn evolution_order(rng: &mut ChaCha8Rng) -> Measured {
    let mut cases = vec![
        (
            QuantumState::Fock { n: 1 },
            EvolutionPoint::new(0.7, 0.8, -0.6, 5.0),
            0.05,
        ),
        (
            QuantumState::Fock { n: 1 },
            EvolutionPoint::new(0.7, 0.8, -0.6, 5.0),
            0.0,
        ),
    ];
    cases.extend(evolution_points(rng, 10, &[0.0, 0.05, 0.3], 5.0));
    max_over(&cases, |&(s, point, g)| {
        let report = convergence_study(s, &point, &[1e-2, 5e-3, 2.5e-3], &make_params(g)?)?;
        Ok((report.converged_order.unwrap_or(f64::NAN) - 2.0).abs())
    })
}

fn evolution_rescaled(rng: &mut ChaCha8Rng) -> Measured {
    let pts = evolution_points(rng, 20, &[0.0, 0.05, 0.3], 5.0);
    max_over(&pts, |&(s, point, g)| {
        let p = make_params(g)?;
        let terms = evolution_terms(s, &point, 1e-3, &p)?;
        let scale = 1.0 + terms.time.abs() + terms.nu_drift.abs() + terms.mu_drift.abs();
        Ok((evolution_residual_rescaled(s, &point, 1e-3, &p)? - terms.residual()).abs() / scale)
    })
}

fn evolution_frictionless(_: &mut ChaCha8Rng) -> Measured {
    let point = EvolutionPoint::new(0.7, 0.8, -0.6, 1.0);
    let terms = evolution_terms(
        QuantumState::Fock { n: 1 },
        &point,
        1e-3,
        &make_params(0.0)?,
    )?;
    Ok((terms.residual().abs(), 1))
}

// ---- invariants -------------------------------------------------------------

fn eigen(rng: &mut ChaCha8Rng, n: u32, variant: OperatorVariant) -> Measured {
    let pts: Vec<(DualPoint, f64)> = (0..20)
        .map(|_| {
            let (mu, nu) = random_direction(rng, 0.5, 1.5);
            let k = rng.gen_range(0.2..2.0);
            let t = pick(rng, &[0.0, 1.0, 5.0]);
            (DualPoint::new(k, mu, nu, t), pick(rng, &[0.0, 0.05, 0.3]))
        })
        .collect();
    let settings = InvariantSettings::default();
    max_over(&pts, |&(point, g)| {
        eigen_residual_with(n, &[point], 1e-3, &make_params(g)?, &settings, &[variant])
    })
}

/// State, `k`, direction, `t`, `gamma`.
type DualSample = (QuantumState, f64, (f64, f64), f64, f64);

fn dual_homogeneity(rng: &mut ChaCha8Rng) -> Measured {
    let pts: Vec<DualSample> = (0..40)
        .map(|_| {
            (
                random_state(rng),
                pick(rng, &[0.5, 2.0]),
                random_direction(rng, 0.3, 1.5),
                rng.gen_range(0.0..6.0),
                rng.gen_range(0.0..0.5),
            )
        })
        .collect();
    max_over(&pts, |&(s, k, (mu, nu), t, g)| {
        let p = make_params(g)?;
        let a = tomogram_characteristic(s, k, mu, nu, t, &p)?;
        let b = tomogram_characteristic(s, 1.0, k * mu, k * nu, t, &p)?;
        Ok((a - b).norm())
    })
}

fn characteristic_bound(rng: &mut ChaCha8Rng) -> Measured {
    let pts: Vec<DualSample> = (0..40)
        .map(|_| {
            (
                random_state(rng),
                rng.gen_range(-4.0..4.0),
                random_direction(rng, 0.3, 1.5),
                rng.gen_range(0.0..6.0),
                rng.gen_range(0.0..0.5),
            )
        })
        .collect();
    max_over(&pts, |&(s, k, (mu, nu), t, g)| {
        Ok((tomogram_characteristic(s, k, mu, nu, t, &make_params(g)?)?.norm() - 1.0).max(0.0))
    })
}

fn ground_characteristic(rng: &mut ChaCha8Rng) -> Measured {
    let ks: Vec<f64> = (0..20).map(|_| rng.gen_range(0.05..4.0)).collect();
    max_over(&ks, |&k| {
        let w = tomogram_characteristic(
            QuantumState::Fock { n: 0 },
            k,
            1.0,
            0.0,
            0.0,
            &make_params(0.0)?,
        )?;
        Ok((w - Complex64::new((-k * k / 4.0).exp(), 0.0)).norm())
    })
}

fn zero_k_normalization(rng: &mut ChaCha8Rng) -> Measured {
    let pts: Vec<(QuantumState, (f64, f64), f64, f64)> = (0..20)
        .map(|_| {
            (
                random_state(rng),
                random_direction(rng, 0.3, 1.5),
                rng.gen_range(0.0..6.0),
                rng.gen_range(0.0..0.5),
            )
        })
        .collect();
    // Off by about k <X> from one, so k has to be far below the tolerance.
    max_over(&pts, |&(s, (mu, nu), t, g)| {
        Ok(
            (tomogram_characteristic(s, 1e-12, mu, nu, t, &make_params(g)?)?
                - Complex64::new(1.0, 0.0))
            .norm(),
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names_are_unique_and_grouped() {
        let names = check_names();
        let mut sorted = names.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
        assert!(names.len() >= 25);
        for c in registry() {
            assert!(c.name.starts_with(c.group.name()), "{}", c.name);
        }
    }

    #[test]
    fn suite_names_parse() {
        for s in [
            "all",
            "dynamics",
            "numerics",
            "tomography",
            "evolution",
            "invariants",
        ] {
            assert_eq!(s.parse::<Suite>().unwrap().name(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn unknown_tolerance_is_rejected() {
        let mut o = BTreeMap::new();
        o.insert("nope".to_string(), 1.0);
        assert!(run_suite(Suite::Dynamics, 1, &o).is_err());
    }

    #[test]
    fn nan_propagates_through_max() {
        let (m, n) = max_over(&[1.0, f64::NAN, 3.0], |&x| Ok(x)).unwrap();
        assert!(m.is_nan());
        assert_eq!(n, 3);
    }
}
