//! Spectra of the oscillator-like and Coulomb-like radial problems on the
//! pseudosphere and of the map between them.

pub mod channel;
pub mod coulomb;
pub mod duality;
pub mod error;
pub mod oracle;
pub mod oscillator;
pub mod quad;
pub mod specfun;
pub mod spectral;

pub use error::{Error, Result};
pub use specfun::Complex;
pub use spectral::{Channel, Level, RadialProblem, Spectrum};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
