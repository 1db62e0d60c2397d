//! Criterion benchmarks for the fockphase library; see `benches/`.

use fockphase::NoiseParams;

/// Parameter points shared by the benchmarks: `(m, m′, params)`.
pub fn fixtures() -> Vec<(usize, usize, NoiseParams)> {
    vec![
        (4, 0, NoiseParams::lossless(0.1, 1.0).unwrap()),
        (5, 1, NoiseParams::lossless(0.3, 1.0).unwrap()),
        (4, 2, NoiseParams::new(0.1, 1.0, 1.0, 0.7).unwrap()),
        (6, 2, NoiseParams::new(0.05, 1.0, 0.9, 0.6).unwrap()),
    ]
}
