//! Circulant matrices and circulant operators on the discrete torus.
//!
//! The discrete Fourier transform is built here as the common eigenvector
//! basis of the circular shift operators, and then used to diagonalize
//! circulant matrices, to evaluate circular convolutions, and to check the
//! algebra isomorphism between circulant matrices, convolution and the
//! pointwise product of spectra.
//!
//! All numerical code is generic over [`Real`] (implemented for `f32` and
//! `f64`). The `*64` aliases at the crate root fix the scalar to `f64`.

pub mod bench;
pub mod circulant;
pub mod dft;
mod error;
pub mod nd;
pub mod oracle;
pub mod random;
mod scalar;
pub mod spectral;
pub mod torus;

pub use crate::circulant::{
    bezout_shift_certificate, circular_convolve, is_circulant, shift, BezoutCertificate,
    CVector, CirculantCheck, CirculantMatrix, DenseMatrix, ShiftSpec,
};
pub use crate::dft::{
    alternate_transform, dft, dft_unitary, eigenvalues_of_circulant, idft, idft_unitary,
    shift_eigenpairs, z_transform_eval, DftMatrix, Eigenpair, Spectrum, SpectrumOrdering,
};
pub use crate::error::{Error, Result};
pub use crate::nd::{NdArray, NdCirculantOp, NdEigenvector};
pub use crate::scalar::Real;
pub use crate::spectral::{ConvolutionPlan, DiagonalizationReport, Direction, Method};
pub use crate::torus::{root_of_unity, MultiIndex, RootOfUnity, TorusDims};

pub use num_complex::Complex;

pub type C64 = Complex<f64>;
pub type CVector64 = CVector<f64>;
pub type CirculantMatrix64 = CirculantMatrix<f64>;
pub type DenseMatrix64 = DenseMatrix<f64>;
pub type Spectrum64 = Spectrum<f64>;
pub type DftMatrix64 = DftMatrix<f64>;
pub type ConvolutionPlan64 = ConvolutionPlan<f64>;
pub type NdArray64 = NdArray<f64>;
pub type NdCirculantOp64 = NdCirculantOp<f64>;

pub type C32 = Complex<f32>;
pub type CVector32 = CVector<f32>;
pub type NdArray32 = NdArray<f32>;
