//! Seeded random inputs. Real and imaginary parts are uniform in `[-1, 1]`.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circulant::CVector;
use crate::nd::NdArray;
use crate::scalar::Real;
use crate::torus::TorusDims;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    Complex::new(
        T::lit(rng.gen_range(-1.0..=1.0)),
        T::lit(rng.gen_range(-1.0..=1.0)),
    )
}

pub fn random_entries<T: Real, R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<Complex<T>> {
    (0..len).map(|_| random_complex(rng)).collect()
}

/// # Panics
/// If `n == 0`.
pub fn random_cvector<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> CVector<T> {
    CVector::new(random_entries(rng, n)).expect("n >= 1")
}

pub fn random_nd_array<T: Real, R: Rng + ?Sized>(rng: &mut R, dims: &TorusDims) -> NdArray<T> {
    NdArray::new(dims.clone(), random_entries(rng, dims.cardinality()))
        .expect("length matches dims")
}
