//! Special functions and transforms: associated Legendre functions, complex
//! spherical harmonics, Wigner matrices, quadrature rules on the sphere and
//! the rotation group, and band-limited spectra with analysis/synthesis.

pub mod legendre;
pub mod quadrature;
pub mod sphere;
pub mod spectrum;
pub mod wigner;

pub use legendre::{assoc_legendre, legendre_p};
pub use quadrature::{gauss_legendre, haar_quadrature, sphere_quadrature, QuadratureNodes, QuadratureRule};
pub use sphere::{sph_harm, sph_harm_table, S2Point};
pub use spectrum::{
    analyze_pair, analyze_so3, convolve, laplacian_so3, pair_eval, synth_so3, translate_right,
    PairSpectrum, SO3Spectrum,
};
pub use wigner::{wigner_matrix, wigner_stack};
