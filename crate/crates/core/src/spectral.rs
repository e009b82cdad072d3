//! Circulant action through the spectrum: forward DFT, pointwise product
//! with `x_hat`, inverse DFT.
//!
//! Plans either evaluate the DFT by its defining sum or, for power-of-two
//! sizes, with an iterative radix-2 decimation-in-time kernel. A plan checks
//! itself against the defining sum when it is created.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::circulant::{CVector, CirculantMatrix, DenseMatrix};
use crate::dft::{dft, idft, shift_eigenpairs, DftMatrix, Spectrum, SpectrumOrdering};
use crate::error::{Error, Result};
use crate::random::{random_cvector, seeded};
use crate::scalar::Real;
use crate::torus::unit_root;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// The defining `O(n^2)` sum.
    Naive,
    /// Radix-2 fast transform; `n` must be a power of two.
    Radix2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

const PROBE_SEED: u64 = 0x00C1_5C0F;

/// A reusable transform of fixed length.
#[derive(Debug, Clone)]
pub struct ConvolutionPlan<T> {
    n: usize,
    method: Method,
    /// `exp(-i 2 pi k / n)` for `k < n / 2`; radix-2 only.
    twiddles: Vec<Complex<T>>,
    /// Bit-reversal permutation; radix-2 only.
    bit_reverse: Vec<usize>,
}

pub fn make_plan<T: Real>(n: usize, method: Method) -> Result<ConvolutionPlan<T>> {
    ConvolutionPlan::new(n, method)
}

impl<T: Real> ConvolutionPlan<T> {
    pub fn new(n: usize, method: Method) -> Result<Self> {
        if n == 0 {
            return Err(Error::Configuration("plans need n >= 1".into()));
        }
        let plan = match method {
            Method::Naive => Self {
                n,
                method,
                twiddles: Vec::new(),
                bit_reverse: Vec::new(),
            },
            Method::Radix2 => {
                if !n.is_power_of_two() {
                    return Err(Error::Configuration(format!(
                        "radix-2 plans need a power-of-two size, got {n}"
                    )));
                }
                let bits = n.trailing_zeros();
                Self {
                    n,
                    method,
                    twiddles: (0..n / 2).map(|k| unit_root::<T>(k, n).conj()).collect(),
                    bit_reverse: (0..n)
                        .map(|i| if bits == 0 { 0 } else { i.reverse_bits() >> (usize::BITS - bits) })
                        .collect(),
                }
            }
        };
        plan.validate()?;
        Ok(plan)
    }

    /// Radix-2 when `n` is a power of two, naive otherwise. Sizes are never
    /// padded.
    pub fn auto(n: usize) -> Result<Self> {
        if n.is_power_of_two() {
            Self::new(n, Method::Radix2)
        } else {
            Self::new(n, Method::Naive)
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn method(&self) -> Method {
        self.method
    }

    fn validate(&self) -> Result<()> {
        let mut rng = seeded(PROBE_SEED);
        let probes = [
            CVector::delta(self.n)?,
            random_cvector::<T, _>(&mut rng, self.n),
        ];
        let tol = T::tolerance(1e-9) * T::count(self.n);
        for probe in &probes {
            let reference = dft(probe).to_standard_vector();
            let got = self.transform(probe, Direction::Forward)?;
            let scale = reference.max_abs().max(T::one());
            let err = got.max_abs_diff(&reference)?;
            if err.is_nan() || err > tol * scale {
                return Err(Error::Contract(format!(
                    "{:?} plan of size {} deviates from the defining sum by {err}",
                    self.method, self.n
                )));
            }
        }
        Ok(())
    }

    pub fn transform(&self, x: &CVector<T>, direction: Direction) -> Result<CVector<T>> {
        if x.len() != self.n {
            return Err(Error::Dimension(format!(
                "plan of size {} given a vector of length {}",
                self.n,
                x.len()
            )));
        }
        Ok(CVector::from_vec_unchecked(
            self.transform_slice(x.as_slice(), direction),
        ))
    }

    pub(crate) fn transform_slice(&self, x: &[Complex<T>], direction: Direction) -> Vec<Complex<T>> {
        debug_assert_eq!(x.len(), self.n);
        match (self.method, direction) {
            (Method::Naive, Direction::Forward) => {
                dft(&CVector::from_vec_unchecked(x.to_vec())).entries().to_vec()
            }
            (Method::Naive, Direction::Inverse) => {
                let spectrum = Spectrum::new(x.to_vec(), SpectrumOrdering::Standard)
                    .expect("finite input");
                idft(&spectrum).into_inner()
            }
            (Method::Radix2, Direction::Forward) => {
                let mut data = x.to_vec();
                self.radix2_in_place(&mut data);
                data
            }
            (Method::Radix2, Direction::Inverse) => {
                let mut data: Vec<_> = x.iter().map(|z| z.conj()).collect();
                self.radix2_in_place(&mut data);
                let inv_n = T::count(self.n).recip();
                data.into_iter().map(|z| z.conj() * inv_n).collect()
            }
        }
    }

    fn radix2_in_place(&self, data: &mut [Complex<T>]) {
        let n = self.n;
        for (i, &j) in self.bit_reverse.iter().enumerate() {
            if i < j {
                data.swap(i, j);
            }
        }
        let mut half = 1;
        while half < n {
            let stride = n / (2 * half);
            for group in data.chunks_exact_mut(2 * half) {
                let (lo, hi) = group.split_at_mut(half);
                for (k, (a, b)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
                    let t = *b * self.twiddles[k * stride];
                    *b = *a - t;
                    *a += t;
                }
            }
            half *= 2;
        }
    }

    /// `x * y` computed as `IDFT(DFT(x) . DFT(y))`.
    pub fn convolve(&self, x: &CVector<T>, y: &CVector<T>) -> Result<CVector<T>> {
        if x.len() != y.len() {
            return Err(Error::Dimension(format!(
                "vector lengths {} and {} differ",
                x.len(),
                y.len()
            )));
        }
        let x_hat = self.transform(x, Direction::Forward)?;
        let y_hat = self.transform(y, Direction::Forward)?;
        self.transform(&x_hat.hadamard(&y_hat)?, Direction::Inverse)
    }

    /// `C_x y` through the spectrum of `x`.
    pub fn apply_circulant(&self, c: &CirculantMatrix<T>, y: &CVector<T>) -> Result<CVector<T>> {
        self.convolve(c.first_column(), y)
    }
}

pub fn convolve_spectral<T: Real>(
    plan: &ConvolutionPlan<T>,
    x: &CVector<T>,
    y: &CVector<T>,
) -> Result<CVector<T>> {
    plan.convolve(x, y)
}

/// How well `W` diagonalizes `C_x`, measured with dense arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiagonalizationReport<T> {
    pub n: usize,
    /// `max_m |C_x w^(m) - x_hat_m w^(m)|_inf`.
    pub residual_eigen: T,
    /// `|C_x - (1/n) W diag(x_hat) W*|_max`.
    pub residual_factor: T,
}

impl<T: Real> DiagonalizationReport<T> {
    pub fn passes(&self, tol: T) -> bool {
        self.residual_eigen <= tol && self.residual_factor <= tol
    }
}

pub fn diagonalization_residual<T: Real>(x: &CVector<T>) -> DiagonalizationReport<T> {
    let n = x.len();
    let cx = CirculantMatrix::new(x.clone());
    let x_hat = dft(x);
    let lambda = x_hat.entries();

    let mut residual_eigen = T::zero();
    for pair in shift_eigenpairs::<T>(n).expect("n >= 1") {
        let lhs = cx.matvec(&pair.eigenvector).expect("same size");
        let rhs = pair.eigenvector.scale(lambda[pair.m]);
        residual_eigen = residual_eigen.max(lhs.max_abs_diff(&rhs).expect("same size"));
    }

    let w = DftMatrix::<T>::new(n).expect("n >= 1");
    let inv_n = T::count(n).recip();
    let w_diag = DenseMatrix::from_fn(n, n, |i, m| w.matrix().get(i, m) * lambda[m] * inv_n);
    let factored = w_diag.matmul(&w.adjoint()).expect("square");
    let residual_factor = cx.to_dense().max_abs_diff(&factored).expect("same shape");

    DiagonalizationReport {
        n,
        residual_eigen,
        residual_factor,
    }
}
