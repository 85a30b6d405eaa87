//! Length spectra of free Fuchsian groups, truncated Selberg zeta
//! products over them, and the cohomology dimension tables of cusped
//! hyperbolic surface groups.
//!
//! The enumeration and zeta loops are data parallel. With the default
//! `parallel` feature they run on rayon; building with
//! `--no-default-features` gives the sequential fallback. Output is
//! identical either way.

pub mod cohomology;
pub mod exec;
pub mod group;
pub mod io;
pub mod matrix;
pub mod spectrum;
pub mod sum;
pub mod word;
pub mod zeta;

pub use cohomology::{CohDims, ModuleLabel, OddK, SpectralInput, SurfaceSignature};
pub use exec::Execution;
pub use group::FuchsianGroupSpec;
pub use matrix::{ElementKind, MoebiusMatrix, SlMatrix};
pub use spectrum::{enumerate_spectrum, Character, Epsilon, GeodesicClass, LengthSpectrum};
pub use word::{Letter, Word};
pub use zeta::{KMax, Normalization, TruncatedValue, ZetaParams};
