//! Fixed inputs shared by the benchmarks.

use irfield_core::{CutoffScheme, EikonalWeights, PhysParams};

/// Weights 1, 2, ..., n with ε = 0.
pub fn ladder_weights(n: usize) -> EikonalWeights {
    EikonalWeights::new((1..=n).map(|i| i as f64).collect(), 0.0).expect("positive weights")
}

pub fn room_temperature() -> (PhysParams, CutoffScheme) {
    (
        PhysParams::electron(0.025),
        CutoffScheme::new(0.0, 1e-6, 25.0),
    )
}

/// `n` radii spaced evenly in log between 1e-9 and 1e-3 eV⁻¹.
pub fn radii(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| 10f64.powf(-9.0 + 6.0 * i as f64 / (n - 1) as f64))
        .collect()
}
