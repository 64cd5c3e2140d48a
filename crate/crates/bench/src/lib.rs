//! Fixed workloads shared by the benchmarks.

use ck_tomo::{make_params, Complex64, DampingParams, QuantumState};

/// Damping and time of the reference figure.
pub fn reference_params() -> (DampingParams, f64) {
    (make_params(0.05).expect("valid gamma"), 5.0)
}

pub fn reference_states() -> [(&'static str, QuantumState); 3] {
    [
        ("fock0", QuantumState::Fock { n: 0 }),
        ("fock2", QuantumState::Fock { n: 2 }),
        (
            "coherent",
            QuantumState::Coherent {
                alpha: Complex64::new(1.0, 0.5),
            },
        ),
    ]
}
