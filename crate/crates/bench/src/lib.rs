//! Shared fixtures for the criterion benchmarks.

use winterres_core::{Complex64, GpiParams};

/// One coupling per class: α = 50, γ = 1+i and β = 0.1. The δ′ coupling is
/// large enough that its poles are asymptotic at moderate k.
pub fn figure_couplings() -> [(&'static str, GpiParams); 3] {
    [
        ("delta", GpiParams::delta(50.0)),
        ("intermediate", GpiParams::intermediate(Complex64::new(1.0, 1.0))),
        ("delta_prime", GpiParams::delta_prime(0.1)),
    ]
}
