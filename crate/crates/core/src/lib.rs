//! Phase estimation with path-entangled photon Fock states.
//!
//! The mm′ state `(|m,m′⟩ + |m′,m⟩)/√2` (the N00N state when `m′ = 0`) enters a
//! Mach-Zehnder interferometer, picks up a phase `φ` in arm `b`, suffers
//! Gaussian phase noise of variance `2ΓL` and optionally photon loss, and is
//! read out by parity detection inside the interferometer.
//!
//! - [`fock`]: kets, pure states and sparse density operators.
//! - [`channels`]: phase shift, dephasing and beam-splitter loss.
//! - [`detection`]: the parity observable.
//! - [`metrology`]: sensitivity, visibility, QFI and Cramér-Rao bounds.
//! - [`oracle`]: independent brute-force checks of all of the above.
//!
//! ```
//! use fockphase::{metrology, NoiseParams};
//!
//! let params = NoiseParams::lossless(0.1, 1.0).unwrap();
//! let phi = metrology::optimal_phase(5, 1).unwrap();
//! let r = metrology::report(5, 1, &params, phi).unwrap();
//! assert!((r.sensitivity - r.qcrb).abs() < 1e-10);
//! ```

pub mod channels;
pub mod detection;
pub mod error;
pub mod fock;
pub mod metrology;
pub mod oracle;

pub use channels::{LossCoefficients, NoiseParams};
pub use detection::ParityOperator;
pub use error::{Error, Result};
pub use fock::{DensityOperator, FockKet, Operator, TwoModePureState};
pub use metrology::{MetrologyReport, SldResult};
pub use oracle::McConfig;
