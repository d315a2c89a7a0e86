//! Numerical laboratory for the radial fractional Schrodinger equation
//! `i u_t + |∇|^α u = F`, `1 < α < 2`.
//!
//! The crate provides the free propagator and Duhamel integral on radial
//! profiles, Hankel-type transforms, Bessel evaluation with a certified
//! extended-precision oracle, mixed space-time norms, the dyadic kernel
//! machinery behind the frequency-localized estimates, a sharpness
//! (necessity) experiment, exponent-region checks in exact rational
//! arithmetic, and a Picard fixed-point solver with an independent
//! split-step reference.
//!
//! Heavy inner loops are data-parallel via rayon when the default
//! `parallel` feature is enabled; building with `--no-default-features`
//! gives a sequential fallback with identical results.

pub mod bessel;
pub mod cutoff;
pub mod dd;
pub mod error;
pub mod exact;
pub mod exec;
pub mod exponents;
pub mod field;
pub mod io;
pub mod kernels;
pub mod norms;
pub mod oscillatory;
pub mod profile;
pub mod propagator;
pub mod quadrature;
pub mod radial_transform;
pub mod report;
pub mod sharpness;
pub mod strichartz;
pub mod wellposed;

pub use error::Error;
pub use exact::Exact;
pub use exponents::ProblemParams;
pub use profile::{RadialGrid, RadialProfile, SpectralProfile};

/// Crate version string recorded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
