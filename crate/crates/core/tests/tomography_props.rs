use std::f64::consts::PI;

use ck_tomo::numerics::{hermite, integrate, QuadratureSpec};
use ck_tomo::{
    make_params, normalization, tomogram, Complex64, QuantumState, RadonOracle, Tomogram,
    TomographyFrame, Wigner,
};
use proptest::prelude::*;

fn state_strategy() -> impl Strategy<Value = QuantumState> {
    prop_oneof![
        (0u32..=4).prop_map(|n| QuantumState::Fock { n }),
        (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(re, im)| QuantumState::Coherent {
            alpha: Complex64::new(re, im)
        }),
    ]
}

fn direction() -> impl Strategy<Value = (f64, f64)> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_filter("nondegenerate", |(m, n)| m.hypot(*n) > 0.1)
}

fn frame(x: f64, (mu, nu): (f64, f64)) -> TomographyFrame {
    TomographyFrame { x, mu, nu }
}

/// Frictionless oscillator tomograms written from scratch: a Fock state is
/// stationary with width `mu^2 + nu^2`, and a coherent state is a Gaussian
/// following the classical orbit `alpha e^{-it}`.
fn frictionless(state: QuantumState, x: f64, mu: f64, nu: f64, t: f64) -> f64 {
    let s2 = mu * mu + nu * nu;
    match state {
        QuantumState::Fock { n } => {
            let y = x / s2.sqrt();
            let h = hermite(n, y).unwrap();
            let fact: f64 = (1..=n).map(f64::from).product();
            (-y * y).exp() / (PI * s2).sqrt() * h * h / (2f64.powi(n as i32) * fact)
        }
        QuantumState::Coherent { alpha } => {
            let a = alpha * Complex64::from_polar(1.0, -t);
            let mean = 2f64.sqrt() * (mu * a.re + nu * a.im);
            (-(x - mean).powi(2) / s2).exp() / (PI * s2).sqrt()
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalized(state in state_strategy(), dir in direction(), t in 0.0..8.0f64, g in 0.0..0.7f64) {
        let p = make_params(g).unwrap();
        let total = normalization(state, dir.0, dir.1, t, &p).unwrap();
        prop_assert!((total - 1.0).abs() < 1e-9, "{}", total);
    }

    #[test]
    fn homogeneous(state in state_strategy(), x in -3.0..3.0f64, dir in direction(),
                   lam in prop_oneof![0.2..5.0f64, -5.0..-0.2f64], t in 0.0..6.0f64, g in 0.0..0.5f64) {
        let p = make_params(g).unwrap();
        let w = tomogram(state, &frame(x, dir), t, &p).unwrap();
        let scaled = tomogram(state, &frame(lam * x, (lam * dir.0, lam * dir.1)), t, &p).unwrap();
        prop_assert!((lam.abs() * scaled - w).abs() < 1e-10 * (1.0 + w), "{} vs {}", lam.abs() * scaled, w);
    }

    #[test]
    fn frictionless_limit(state in state_strategy(), x in -4.0..4.0f64, dir in direction(), t in 0.0..10.0f64) {
        let p = make_params(0.0).unwrap();
        let w = tomogram(state, &frame(x, dir), t, &p).unwrap();
        let want = frictionless(state, x, dir.0, dir.1, t);
        prop_assert!((w - want).abs() < 1e-10, "{} vs {}", w, want);
    }

    #[test]
    fn parity(state in state_strategy(), x in -3.0..3.0f64, dir in direction(), t in 0.0..6.0f64, g in 0.0..0.5f64) {
        let p = make_params(g).unwrap();
        let w = tomogram(state, &frame(x, dir), t, &p).unwrap();
        let flipped = tomogram(state, &frame(-x, (-dir.0, -dir.1)), t, &p).unwrap();
        prop_assert!((w - flipped).abs() < 1e-12 * (1.0 + w));
        let mirror = match state {
            QuantumState::Fock { .. } => state,
            QuantumState::Coherent { alpha } => QuantumState::Coherent { alpha: -alpha },
        };
        let reflected = tomogram(mirror, &frame(-x, dir), t, &p).unwrap();
        prop_assert!((w - reflected).abs() < 1e-12 * (1.0 + w));
    }

    #[test]
    fn nonnegative(state in state_strategy(), x in -6.0..6.0f64, dir in direction(), t in 0.0..8.0f64, g in 0.0..0.7f64) {
        let p = make_params(g).unwrap();
        prop_assert!(tomogram(state, &frame(x, dir), t, &p).unwrap() >= 0.0);
    }

    #[test]
    fn vacuum_coherent_is_ground(x in -4.0..4.0f64, dir in direction(), t in 0.0..8.0f64, g in 0.0..0.7f64) {
        let p = make_params(g).unwrap();
        let f = frame(x, dir);
        let c = tomogram(QuantumState::Coherent { alpha: Complex64::new(0.0, 0.0) }, &f, t, &p).unwrap();
        let ground = Tomogram::new(QuantumState::Fock { n: 0 }, t, &p).unwrap().ground(&f).unwrap();
        prop_assert_eq!(c, ground);
    }
}

#[test]
fn second_moment_grows_with_index() {
    let p = make_params(0.05).unwrap();
    let (mu, nu, t) = (0.7, -0.4, 5.0);
    for n in 0..5u32 {
        let tomo = Tomogram::new(QuantumState::Fock { n }, t, &p).unwrap();
        let d = tomo.width(mu, nu).unwrap();
        let spec = tomo.x_window(mu, nu).unwrap();
        let m2 = integrate(
            |x| x * x * tomo.eval(&TomographyFrame { x, mu, nu }).unwrap(),
            &spec,
        )
        .unwrap();
        let want = (f64::from(n) + 0.5) * d;
        assert!((m2 - want).abs() < 1e-9 * want, "n={n} {m2} {want}");
    }
}

#[test]
fn wigner_marginal_is_position_density() {
    let p = make_params(0.3).unwrap();
    for state in [
        QuantumState::Fock { n: 2 },
        QuantumState::Coherent {
            alpha: Complex64::new(1.0, -0.5),
        },
    ] {
        let t = 1.5;
        let w = Wigner::new(state, t, &p);
        let psi = ck_tomo::WaveFunction::new(state, t, &p);
        let spec = QuadratureSpec::resolved(0.0, 30.0, 0.3).unwrap();
        for q in [-0.8, 0.0, 0.4] {
            let marginal = integrate(|pp| w.eval(q, pp).unwrap(), &spec).unwrap();
            let want = 2.0 * PI * psi.eval(q).norm_sqr();
            assert!(
                (marginal - want).abs() < 1e-7,
                "{state} q={q} {marginal} {want}"
            );
        }
    }
}

#[test]
fn wigner_is_real() {
    let p = make_params(0.05).unwrap();
    let w = Wigner::new(
        QuantumState::Coherent {
            alpha: Complex64::new(2.0, -1.0),
        },
        5.0,
        &p,
    );
    for (q, pp) in [(0.3, -1.0), (2.0, 4.0), (-1.0, 0.2)] {
        let v = w.eval_complex(q, pp).unwrap();
        assert!(v.im.abs() < 1e-10 * (1.0 + v.re.abs()), "{v}");
    }
}

/// The wave function branch is chosen by continuity in `t`; the Wigner
/// function and the tomogram must not care about a global phase.
#[test]
fn observables_continuous_across_branch_turns() {
    let p = make_params(0.05).unwrap();
    let state = QuantumState::Fock { n: 1 };
    let f = TomographyFrame {
        x: 0.6,
        mu: 0.8,
        nu: 0.3,
    };
    let mut prev = tomogram(state, &f, 0.0, &p).unwrap();
    let mut t = 0.0;
    while t < 14.0 {
        t += 0.01;
        let w = tomogram(state, &f, t, &p).unwrap();
        assert!((w - prev).abs() < 0.05, "jump at t={t}");
        prev = w;
    }
    let w1 = Wigner::new(state, 2.0 * PI, &p).eval(0.1, 0.2).unwrap();
    let w2 = Wigner::new(state, 2.0 * PI + 1e-9, &p)
        .eval(0.1, 0.2)
        .unwrap();
    assert!((w1 - w2).abs() < 1e-7);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn radon_equivalence(
        state in prop_oneof![
            (0u32..=2).prop_map(|n| QuantumState::Fock { n }),
            prop::sample::select(vec![
                Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.5), Complex64::new(2.0, -1.0),
            ]).prop_map(|alpha| QuantumState::Coherent { alpha }),
        ],
        g in prop::sample::select(vec![0.0, 0.05, 0.3]),
        t in prop::sample::select(vec![0.0, 2.0, 5.0]),
        x in -3.0..3.0f64,
        phi in 0.0..(2.0 * PI),
        scale in 0.5..1.5f64,
    ) {
        let p = make_params(g).unwrap();
        let f = TomographyFrame { x, mu: scale * phi.cos(), nu: -scale * phi.sin() };
        let analytic = tomogram(state, &f, t, &p).unwrap();
        let radon = RadonOracle::new(state, t, &p).eval(&f).unwrap();
        prop_assert!((analytic - radon).abs() < 1e-5, "{} vs {}", analytic, radon);
    }
}

/// Putting the velocity `eps_dot^*` in place of `eps^*` in the `alpha^2`
/// phase of the coherent wave function changes it by a constant factor
/// whose modulus is not one, so that variant cannot be a normalized state.
#[test]
fn alpha_phase_with_velocity_is_not_normalized() {
    let p = make_params(0.05).unwrap();
    let t = 5.0;
    let alpha = Complex64::new(1.0, 0.5);
    let spec = QuadratureSpec::resolved(0.0, 40.0, 0.2).unwrap();
    let norm = integrate(|q| ck_tomo::coherent_psi(q, t, alpha, &p).norm_sqr(), &spec).unwrap();
    assert!((norm - 1.0).abs() < 1e-10, "{norm}");

    let e = ck_tomo::epsilon(t, &p);
    let factor = (-alpha * alpha * (e.eps_dot.conj() - e.eps.conj()) / (2.0 * e.eps)).exp();
    let variant_norm = norm * factor.norm_sqr();
    assert!((variant_norm - 1.0).abs() > 0.1, "{variant_norm}");
}
