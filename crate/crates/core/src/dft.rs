//! The DFT as the eigenbasis of the circular shift.
//!
//! Eigenvectors of `S*` are `w^(m)_l = rho^(m l)` with eigenvalue `rho^m`,
//! `rho = exp(i 2 pi / n)`, normalized so that `w^(m)_0 = 1`. Collecting them
//! as the columns of `W` gives `W* W = n I`, and `C_x w^(m) = x_hat_m w^(m)`
//! where `x_hat_m = sum_l x_l rho^(-m l)` is the DFT of `x`.
//!
//! Forward transforms are unscaled and the inverse carries `1/n`, so the
//! spectrum of `x` is exactly the list of eigenvalues of `C_x`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::circulant::{CVector, DenseMatrix};
use crate::error::{Error, Result};
use crate::scalar::{is_finite, Real};
use crate::torus::{root_of_unity, unit_roots, RootOfUnity};

/// Order in which a spectrum lists the eigenvalues of `C_x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumOrdering {
    /// `lambda_m`, from the eigenvectors of `S*`.
    Standard,
    /// `mu_k = lambda_{-k}`, from the eigenvectors of `S`.
    Alternate,
}

impl SpectrumOrdering {
    pub fn as_str(&self) -> &'static str {
        match self {
            SpectrumOrdering::Standard => "standard",
            SpectrumOrdering::Alternate => "alternate",
        }
    }
}

/// DFT values tagged with their ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    entries: Vec<Complex<T>>,
    ordering: SpectrumOrdering,
}

impl<T: Real> Spectrum<T> {
    pub fn new(entries: Vec<Complex<T>>, ordering: SpectrumOrdering) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::domain("a spectrum has at least one entry"));
        }
        if let Some(k) = entries.iter().position(|z| !is_finite(z)) {
            return Err(Error::NonFinite(k));
        }
        Ok(Self { entries, ordering })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn ordering(&self) -> SpectrumOrdering {
        self.ordering
    }

    /// Reindexes `k -> (n - k) mod n` when the orderings differ.
    pub fn reordered(&self, ordering: SpectrumOrdering) -> Self {
        if ordering == self.ordering {
            return self.clone();
        }
        let n = self.len();
        Self {
            entries: (0..n).map(|k| self.entries[(n - k) % n]).collect(),
            ordering,
        }
    }

    /// Entries in standard order as a plain vector.
    pub fn to_standard_vector(&self) -> CVector<T> {
        CVector::from_vec_unchecked(self.reordered(SpectrumOrdering::Standard).entries)
    }
}

/// One eigenvalue / eigenvector pair of the left shift `S*`.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair<T> {
    pub m: usize,
    pub eigenvalue: RootOfUnity<T>,
    pub eigenvector: CVector<T>,
}

pub fn shift_eigenpairs<T: Real>(n: usize) -> Result<Vec<Eigenpair<T>>> {
    if n == 0 {
        return Err(Error::domain("shift eigenpairs need n >= 1"));
    }
    let roots = unit_roots::<T>(n);
    Ok((0..n)
        .map(|m| Eigenpair {
            m,
            eigenvalue: root_of_unity(n, m as i64).expect("n >= 1"),
            eigenvector: CVector::from_vec_unchecked(
                (0..n).map(|l| roots[(m * l) % n]).collect(),
            ),
        })
        .collect())
}

/// `W`, whose column `m` is the eigenvector `w^(m)`; unnormalized and symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct DftMatrix<T> {
    n: usize,
    w: DenseMatrix<T>,
}

impl<T: Real> DftMatrix<T> {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("the DFT matrix needs n >= 1"));
        }
        let roots = unit_roots::<T>(n);
        Ok(Self {
            n,
            w: DenseMatrix::from_fn(n, n, |l, m| roots[(l * m) % n]),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DenseMatrix<T> {
        &self.w
    }

    pub fn adjoint(&self) -> DenseMatrix<T> {
        self.w.adjoint()
    }

    /// Largest entrywise deviation of `W* W` and `W W*` from `n I`.
    pub fn gram_deviation(&self) -> T {
        let adj = self.adjoint();
        let n_eye = DenseMatrix::from_fn(self.n, self.n, |i, j| {
            if i == j {
                Complex::new(T::count(self.n), T::zero())
            } else {
                Complex::new(T::zero(), T::zero())
            }
        });
        let left = adj.matmul(&self.w).expect("square");
        let right = self.w.matmul(&adj).expect("square");
        left.max_abs_diff(&n_eye)
            .expect("same shape")
            .max(right.max_abs_diff(&n_eye).expect("same shape"))
    }

    /// `W* x`, which is the DFT of `x`.
    pub fn forward(&self, x: &CVector<T>) -> Result<CVector<T>> {
        self.adjoint().mul_vec(x)
    }

    /// `(1/n) W y`.
    pub fn inverse(&self, y: &CVector<T>) -> Result<CVector<T>> {
        let inv_n = Complex::new(T::count(self.n).recip(), T::zero());
        Ok(self.w.mul_vec(y)?.scale(inv_n))
    }
}

/// `sum_l x_l rho^(sign * k l)` for every `k`, ascending `l`.
fn root_sum<T: Real>(x: &[Complex<T>], conjugate: bool) -> Vec<Complex<T>> {
    let n = x.len();
    let mut roots = unit_roots::<T>(n);
    if conjugate {
        roots.iter_mut().for_each(|r| *r = r.conj());
    }
    (0..n)
        .map(|k| {
            let mut acc = Complex::new(T::zero(), T::zero());
            let mut idx = 0usize;
            for &xl in x {
                acc += xl * roots[idx];
                idx += k;
                if idx >= n {
                    idx -= n;
                }
            }
            acc
        })
        .collect()
}

/// `x_hat_k = sum_l x_l exp(-i 2 pi k l / n)`.
pub fn dft<T: Real>(x: &CVector<T>) -> Spectrum<T> {
    Spectrum {
        entries: root_sum(x.as_slice(), true),
        ordering: SpectrumOrdering::Standard,
    }
}

/// `y_l = (1/n) sum_k y_hat_k exp(i 2 pi k l / n)`; alternate spectra are
/// reordered first.
pub fn idft<T: Real>(spectrum: &Spectrum<T>) -> CVector<T> {
    let standard = spectrum.reordered(SpectrumOrdering::Standard);
    let inv_n = T::count(standard.len()).recip();
    CVector::from_vec_unchecked(
        root_sum(&standard.entries, false)
            .into_iter()
            .map(|z| z * inv_n)
            .collect(),
    )
}

/// DFT scaled by `1/sqrt(n)`; preserves the 2-norm.
pub fn dft_unitary<T: Real>(x: &CVector<T>) -> Spectrum<T> {
    let scale = T::count(x.len()).sqrt().recip();
    let mut s = dft(x);
    s.entries.iter_mut().for_each(|z| *z *= scale);
    s
}

pub fn idft_unitary<T: Real>(spectrum: &Spectrum<T>) -> CVector<T> {
    let standard = spectrum.reordered(SpectrumOrdering::Standard);
    let scale = T::count(standard.len()).sqrt().recip();
    CVector::from_vec_unchecked(
        root_sum(&standard.entries, false)
            .into_iter()
            .map(|z| z * scale)
            .collect(),
    )
}

/// Eigenvalues of `C_x`: entry `m` belongs to the eigenvector `w^(m)`.
pub fn eigenvalues_of_circulant<T: Real>(x: &CVector<T>) -> Spectrum<T> {
    dft(x)
}

/// `mu_k = sum_l x_l exp(+i 2 pi k l / n)`, equal to `x_hat_{(n - k) mod n}`.
pub fn alternate_transform<T: Real>(x: &CVector<T>) -> Spectrum<T> {
    Spectrum {
        entries: root_sum(x.as_slice(), false),
        ordering: SpectrumOrdering::Alternate,
    }
}

/// `x_0 + x_1 z^-1 + ... + x_{n-1} z^-(n-1)`, by Horner's rule in `z^-1`.
pub fn z_transform_eval<T: Real>(x: &CVector<T>, z: Complex<T>) -> Result<Complex<T>> {
    if z.norm_sqr() == T::zero() {
        return Err(Error::domain("the z-transform is evaluated at nonzero z"));
    }
    Ok(horner(x.as_slice(), z.inv()))
}

pub(crate) fn horner<T: Real>(coeffs: &[Complex<T>], w: Complex<T>) -> Complex<T> {
    coeffs
        .iter()
        .rev()
        .fold(Complex::new(T::zero(), T::zero()), |acc, &c| acc * w + c)
}
