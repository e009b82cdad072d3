//! One-dimensional circulant matrices, circular shifts and circular
//! convolution.
//!
//! A circulant matrix `C_x` is stored only through its first column `x`;
//! entry `(i, j)` is `x[(i - j) mod n]`. Every column is the circular
//! down-shift of the previous one.

use std::ops::Index;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{is_finite, Real};
use crate::torus::modulo;

/// A finite complex vector of length `n >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CVector<T> {
    entries: Vec<Complex<T>>,
}

impl<T: Real> CVector<T> {
    pub fn new(entries: Vec<Complex<T>>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::domain("vectors must have at least one entry"));
        }
        if let Some(k) = entries.iter().position(|z| !is_finite(z)) {
            return Err(Error::NonFinite(k));
        }
        Ok(Self { entries })
    }

    pub fn from_real(values: &[T]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Complex::new(v, T::zero())).collect())
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<Complex<T>>) -> Self {
        debug_assert!(!entries.is_empty());
        Self { entries }
    }

    /// `(1, 0, ..., 0)`.
    pub fn delta(n: usize) -> Result<Self> {
        Self::shifted_delta(n, 0)
    }

    /// The unit vector at index `p mod n`.
    pub fn shifted_delta(n: usize, p: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("vectors must have at least one entry"));
        }
        let mut entries = vec![Complex::new(T::zero(), T::zero()); n];
        entries[modulo(p, n)] = Complex::new(T::one(), T::zero());
        Ok(Self { entries })
    }

    pub fn constant(n: usize, value: Complex<T>) -> Result<Self> {
        Self::new(vec![value; n])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Always false; kept for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn into_inner(self) -> Vec<Complex<T>> {
        self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Complex<T>> {
        self.entries.iter()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.entries
            .iter()
            .fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    pub fn norm2(&self) -> T {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<T>()
            .sqrt()
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        Self::from_vec_unchecked(self.entries.iter().map(|&z| z * factor).collect())
    }

    /// Entrywise product.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        same_len(self, other)?;
        Ok(Self::from_vec_unchecked(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a * b)
                .collect(),
        ))
    }

    /// Largest entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        same_len(self, other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(T::zero(), |acc, (&a, &b)| acc.max((a - b).norm())))
    }
}

impl<T> Index<usize> for CVector<T> {
    type Output = Complex<T>;

    fn index(&self, k: usize) -> &Complex<T> {
        &self.entries[k]
    }
}

fn same_len<T: Real>(a: &CVector<T>, b: &CVector<T>) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::dim(format!(
            "vector lengths {} and {} differ",
            a.len(),
            b.len()
        )));
    }
    Ok(())
}

/// Dense row-major complex matrix, used for materialized operators and for
/// checks against them.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> DenseMatrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::dim(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(k) = data.iter().position(|z| !is_finite(z)) {
            return Err(Error::NonFinite(k));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Complex::new(T::one(), T::zero())
            } else {
                Complex::new(T::zero(), T::zero())
            }
        })
    }

    pub fn from_real_diagonal(diag: &[T]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Complex::new(diag[i], T::zero())
            } else {
                Complex::new(T::zero(), T::zero())
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Complex<T>) {
        self.data[i * self.cols + j] = value;
    }

    pub fn column(&self, j: usize) -> Vec<Complex<T>> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::dim(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = vec![Complex::new(T::zero(), T::zero()); self.rows * other.cols];
        for i in 0..self.rows {
            let row = &mut out[i * other.cols..(i + 1) * other.cols];
            for l in 0..self.cols {
                let a = self.get(i, l);
                let b_row = &other.data[l * other.cols..(l + 1) * other.cols];
                for (o, &b) in row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Ok(Self {
            rows: self.rows,
            cols: other.cols,
            data: out,
        })
    }

    pub fn mul_vec(&self, v: &CVector<T>) -> Result<CVector<T>> {
        if self.cols != v.len() {
            return Err(Error::dim(format!(
                "cannot apply {}x{} matrix to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok(CVector::from_vec_unchecked(
            (0..self.rows)
                .map(|i| {
                    self.data[i * self.cols..(i + 1) * self.cols]
                        .iter()
                        .zip(v.iter())
                        .fold(Complex::new(T::zero(), T::zero()), |acc, (&a, &b)| acc + a * b)
                })
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        })
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        self.same_shape(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |acc, (&a, &b)| acc.max((a - b).norm())))
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::dim(format!(
                "shapes {}x{} and {}x{} differ",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

/// The circulant matrix `C_x` generated by its first column `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct CirculantMatrix<T> {
    first_column: CVector<T>,
}

impl<T: Real> CirculantMatrix<T> {
    pub fn new(first_column: CVector<T>) -> Self {
        Self { first_column }
    }

    pub fn identity(n: usize) -> Result<Self> {
        Ok(Self::new(CVector::delta(n)?))
    }

    pub fn size(&self) -> usize {
        self.first_column.len()
    }

    pub fn first_column(&self) -> &CVector<T> {
        &self.first_column
    }

    pub fn entry(&self, i: usize, j: usize) -> Result<Complex<T>> {
        let n = self.size();
        if i >= n || j >= n {
            return Err(Error::domain(format!(
                "entry ({i}, {j}) outside a {n}x{n} matrix"
            )));
        }
        Ok(self.first_column[(i + n - j) % n])
    }

    pub fn to_dense(&self) -> DenseMatrix<T> {
        let n = self.size();
        let x = self.first_column.as_slice();
        DenseMatrix::from_fn(n, n, |i, j| x[(i + n - j) % n])
    }

    /// `C_x y`, summed as `z_i = sum_j x[i - j] y[j]`.
    pub fn matvec(&self, y: &CVector<T>) -> Result<CVector<T>> {
        let n = self.size();
        if y.len() != n {
            return Err(Error::dim(format!(
                "cannot apply a {n}x{n} circulant to a vector of length {}",
                y.len()
            )));
        }
        let x = self.first_column.as_slice();
        let y = y.as_slice();
        Ok(CVector::from_vec_unchecked(
            (0..n)
                .map(|i| {
                    let mut acc = Complex::new(T::zero(), T::zero());
                    for (j, &yj) in y.iter().enumerate() {
                        acc += x[(i + n - j) % n] * yj;
                    }
                    acc
                })
                .collect(),
        ))
    }

    /// `C_x C_y = C_{x * y}`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        Ok(Self::new(circular_convolve(
            &self.first_column,
            &other.first_column,
        )?))
    }
}

/// `z_k = sum_l x[l] y[(k - l) mod n]`, in ascending `l`.
pub fn circular_convolve<T: Real>(x: &CVector<T>, y: &CVector<T>) -> Result<CVector<T>> {
    same_len(x, y)?;
    let n = x.len();
    let (x, y) = (x.as_slice(), y.as_slice());
    Ok(CVector::from_vec_unchecked(
        (0..n)
            .map(|k| {
                let mut acc = Complex::new(T::zero(), T::zero());
                for (l, &xl) in x.iter().enumerate() {
                    acc += xl * y[(k + n - l) % n];
                }
                acc
            })
            .collect(),
    ))
}

/// `S^p x`: `result[k] = x[(k - p) mod n]`. Positive `p` rotates right.
pub fn shift<T: Real>(x: &CVector<T>, p: i64) -> CVector<T> {
    let n = x.len();
    let p = modulo(p, n);
    let x = x.as_slice();
    CVector::from_vec_unchecked((0..n).map(|k| x[(k + n - p) % n]).collect())
}

/// A power of the circular right shift `S`; negative powers are powers of
/// `S* = S^-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShiftSpec {
    n: usize,
    power: i64,
}

impl ShiftSpec {
    pub fn new(n: usize, power: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("shift operators need n >= 1"));
        }
        Ok(Self { n, power })
    }

    /// `S`.
    pub fn right(n: usize) -> Result<Self> {
        Self::new(n, 1)
    }

    /// `S*`.
    pub fn left(n: usize) -> Result<Self> {
        Self::new(n, -1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn power(&self) -> i64 {
        self.power
    }

    pub fn reduced_power(&self) -> usize {
        modulo(self.power, self.n)
    }

    pub fn inverse(&self) -> Self {
        Self {
            n: self.n,
            power: -self.power,
        }
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::dim(format!(
                "shifts on Z_{} and Z_{} do not compose",
                self.n, other.n
            )));
        }
        Ok(Self {
            n: self.n,
            power: self.reduced_power() as i64 + other.reduced_power() as i64,
        })
    }

    /// `S^p = C_{delta^(p)}`.
    pub fn to_circulant<T: Real>(&self) -> CirculantMatrix<T> {
        CirculantMatrix::new(
            CVector::shifted_delta(self.n, self.power).expect("n >= 1 by construction"),
        )
    }

    pub fn apply<T: Real>(&self, x: &CVector<T>) -> Result<CVector<T>> {
        if x.len() != self.n {
            return Err(Error::dim(format!(
                "shift on Z_{} applied to a vector of length {}",
                self.n,
                x.len()
            )));
        }
        Ok(shift(x, self.power))
    }
}

/// Result of testing a dense matrix for the circulant structure.
#[derive(Debug, Clone, PartialEq)]
pub struct CirculantCheck<T> {
    pub is_circulant: bool,
    /// Max-entry norm of `S M - M S`.
    pub commutator_norm: T,
    /// Column 0 of the input when it was accepted.
    pub recovered: Option<CVector<T>>,
}

/// Max-entry norm of `S^p M - M S^p`, using `(S^p M)_ij = M_{i-p, j}` and
/// `(M S^p)_ij = M_{i, j+p}`.
pub fn shift_commutator_norm<T: Real>(m: &DenseMatrix<T>, power: i64) -> Result<T> {
    if !m.is_square() {
        return Err(Error::dim(format!(
            "{}x{} matrix is not square",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(T::zero());
    }
    let p = modulo(power, n);
    let mut worst = T::zero();
    for i in 0..n {
        for j in 0..n {
            let d = m.get((i + n - p) % n, j) - m.get(i, (j + p) % n);
            worst = worst.max(d.norm());
        }
    }
    Ok(worst)
}

/// A matrix is circulant iff it commutes with `S`.
pub fn is_circulant<T: Real>(m: &DenseMatrix<T>, tol: T) -> Result<CirculantCheck<T>> {
    let commutator_norm = shift_commutator_norm(m, 1)?;
    let is_circulant = m.rows() > 0 && commutator_norm <= tol;
    let recovered = if is_circulant {
        Some(CVector::new(m.column(0))?)
    } else {
        None
    };
    Ok(CirculantCheck {
        is_circulant,
        commutator_norm,
        recovered,
    })
}

/// Integers `(a, b)` with `a p + b n = 1`, so that `S^(a p) = S` on `Z_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BezoutCertificate {
    pub p: i64,
    pub n: i64,
    pub a: i64,
    pub b: i64,
}

impl BezoutCertificate {
    pub fn holds(&self) -> bool {
        self.a as i128 * self.p as i128 + self.b as i128 * self.n as i128 == 1
    }

    /// `a p mod n`, which is always 1 for a valid certificate.
    pub fn reduced_shift(&self) -> usize {
        ((self.a as i128 * self.p as i128).rem_euclid(self.n as i128)) as usize
    }
}

fn extended_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    (old_r, old_s, old_t)
}

/// Certificate that `S^p` generates `S`, with `a` reduced into `[0, n)`.
///
/// The certificate is checked on probe vectors: `S^(a p) x = S x`.
pub fn bezout_shift_certificate(p: i64, n: i64) -> Result<BezoutCertificate> {
    if n <= 0 {
        return Err(Error::domain(format!("Z_n needs n >= 1, got {n}")));
    }
    let (n128, p128) = (n as i128, p as i128);
    let (g, s, _) = extended_gcd(p128.rem_euclid(n128), n128);
    if g != 1 {
        return Err(Error::NotCoprime {
            p,
            n,
            gcd: g as i64,
        });
    }
    let a = s.rem_euclid(n128);
    let b = (1 - a * p128) / n128;
    let cert = BezoutCertificate {
        p,
        n,
        a: a as i64,
        b: i64::try_from(b).map_err(|_| Error::domain("Bezout coefficient overflows i64"))?,
    };
    if !cert.holds() {
        return Err(Error::Contract(format!("Bezout identity fails for {cert:?}")));
    }

    let len = n as usize;
    let ramp = CVector::<f64>::new(
        (0..len)
            .map(|k| Complex::new(k as f64, (len - k) as f64))
            .collect(),
    )?;
    let probes = [CVector::delta(len)?, ramp];
    for probe in &probes {
        if shift(probe, cert.reduced_shift() as i64) != shift(probe, 1) {
            return Err(Error::Contract(format!(
                "S^(a p) differs from S for certificate {cert:?}"
            )));
        }
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_cvector, seeded};
    use proptest::prelude::*;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    fn v(values: &[f64]) -> CVector<f64> {
        CVector::from_real(values).unwrap()
    }

    #[test]
    fn rejects_empty_and_non_finite() {
        assert!(matches!(CVector::<f64>::new(vec![]), Err(Error::Domain(_))));
        assert_eq!(
            CVector::new(vec![c(1.0), Complex::new(f64::NAN, 0.0)]),
            Err(Error::NonFinite(1))
        );
        assert!(CVector::<f64>::from_real(&[f64::INFINITY]).is_err());
    }

    #[test]
    fn entry_examples() {
        let x = v(&[10.0, 11.0, 12.0, 13.0]);
        let cx = CirculantMatrix::new(x);
        assert_eq!(cx.entry(0, 0).unwrap(), c(10.0));
        assert_eq!(cx.entry(0, 1).unwrap(), c(13.0));
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(cx.entry(i + 1, j + 1).unwrap(), cx.entry(i, j).unwrap());
            }
        }
        assert!(matches!(cx.entry(4, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn dense_shift_matrices() {
        let n = 5;
        let s = CirculantMatrix::new(v(&[0.0, 1.0, 0.0, 0.0, 0.0])).to_dense();
        let s_star = CirculantMatrix::new(v(&[0.0, 0.0, 0.0, 0.0, 1.0])).to_dense();
        for i in 0..n {
            for j in 0..n {
                let sub = if (i + n - 1) % n == j { 1.0 } else { 0.0 };
                assert_eq!(s.get(i, j), c(sub), "S ({i},{j})");
                assert_eq!(s_star.get(j, i), c(sub), "S* ({j},{i})");
            }
        }
        assert_eq!(s.get(0, n - 1), c(1.0));
        assert_eq!(
            CirculantMatrix::<f64>::identity(n).unwrap().to_dense(),
            DenseMatrix::identity(n)
        );
        assert_eq!(s, ShiftSpec::right(n).unwrap().to_circulant().to_dense());
        assert_eq!(s_star, ShiftSpec::left(n).unwrap().to_circulant().to_dense());
    }

    #[test]
    fn dense_columns_and_rows_are_rotations() {
        let mut rng = seeded(1);
        let x = random_cvector::<f64, _>(&mut rng, 7);
        let d = CirculantMatrix::new(x).to_dense();
        let n = 7;
        for j in 1..n {
            for i in 0..n {
                assert_eq!(d.get(i, j), d.get((i + n - 1) % n, j - 1));
                assert_eq!(d.get(j, i), d.get(j - 1, (i + n - 1) % n));
            }
        }
    }

    #[test]
    fn shift_examples() {
        let x = v(&[0.0, 1.0, 2.0]);
        assert_eq!(shift(&x, 1), v(&[2.0, 0.0, 1.0]));
        assert_eq!(shift(&x, 0), x);
        assert_eq!(shift(&x, 3), x);
        assert_eq!(shift(&x, -1), v(&[1.0, 2.0, 0.0]));
        assert_eq!(shift(&x, 4), shift(&x, 1));
        assert_eq!(shift(&shift(&x, 5), -5), x);
    }

    #[test]
    fn convolution_examples() {
        let x = v(&[1.0, 2.0, 3.0]);
        let y = v(&[4.0, 5.0, 6.0]);
        let z = circular_convolve(&x, &y).unwrap();
        assert_eq!(z, v(&[31.0, 31.0, 28.0]));
        let total: Complex<f64> = z.iter().sum();
        assert_eq!(total, c(90.0));
        assert_eq!(circular_convolve(&x, &CVector::delta(3).unwrap()).unwrap(), x);
        assert_eq!(
            circular_convolve(&x, &CVector::shifted_delta(3, 1).unwrap()).unwrap(),
            shift(&x, 1)
        );
        assert!(matches!(
            circular_convolve(&x, &v(&[1.0])),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn matvec_examples() {
        let x = v(&[1.0, 2.0, 3.0]);
        let y = v(&[4.0, 5.0, 6.0]);
        let cx = CirculantMatrix::new(x.clone());
        assert_eq!(cx.matvec(&y).unwrap(), v(&[31.0, 31.0, 28.0]));
        assert_eq!(cx.matvec(&CVector::delta(3).unwrap()).unwrap(), x);
        assert_eq!(
            CirculantMatrix::identity(3).unwrap().matvec(&y).unwrap(),
            y
        );
        assert!(cx.matvec(&v(&[1.0, 2.0])).is_err());
    }

    #[test]
    fn matmul_examples() {
        let mut rng = seeded(2);
        for n in [1usize, 2, 5, 16] {
            let x = random_cvector::<f64, _>(&mut rng, n);
            let y = random_cvector::<f64, _>(&mut rng, n);
            let cx = CirculantMatrix::new(x.clone());
            let cy = CirculantMatrix::new(y.clone());
            assert_eq!(cx.matmul(&CirculantMatrix::identity(n).unwrap()).unwrap(), cx);
            let prod = cx.matmul(&cy).unwrap().to_dense();
            let dense = cx.to_dense().matmul(&cy.to_dense()).unwrap();
            let scale = dense.max_abs().max(1.0);
            assert!(prod.max_abs_diff(&dense).unwrap() <= 1e-10 * scale);
            let swapped = cy.matmul(&cx).unwrap().to_dense();
            assert!(prod.max_abs_diff(&swapped).unwrap() <= 1e-12 * n as f64);
        }
        let s = ShiftSpec::right(6).unwrap().to_circulant::<f64>();
        let s_star = ShiftSpec::left(6).unwrap().to_circulant::<f64>();
        assert_eq!(s.matmul(&s_star).unwrap(), CirculantMatrix::identity(6).unwrap());
    }

    #[test]
    fn detection_examples() {
        let s = ShiftSpec::right(5).unwrap().to_circulant::<f64>().to_dense();
        let check = is_circulant(&s, 0.0).unwrap();
        assert!(check.is_circulant);
        assert_eq!(check.recovered.unwrap(), CVector::shifted_delta(5, 1).unwrap());

        let check = is_circulant(&DenseMatrix::<f64>::identity(4), 0.0).unwrap();
        assert!(check.is_circulant);
        assert_eq!(check.recovered.unwrap(), CVector::delta(4).unwrap());

        let check = is_circulant(&DenseMatrix::from_real_diagonal(&[1.0, 2.0]), 1e-8).unwrap();
        assert!(!check.is_circulant);
        assert!(check.recovered.is_none());

        let rect = DenseMatrix::<f64>::from_fn(2, 3, |_, _| c(0.0));
        assert!(matches!(is_circulant(&rect, 0.0), Err(Error::Dimension(_))));
    }

    #[test]
    fn perturbed_circulants_are_rejected() {
        let mut rng = seeded(3);
        for trial in 0..100usize {
            let n = 2 + trial % 15;
            let x = random_cvector::<f64, _>(&mut rng, n);
            let mut d = CirculantMatrix::new(x.clone()).to_dense();
            let accepted = is_circulant(&d, 1e-8).unwrap();
            assert!(accepted.is_circulant);
            assert_eq!(
                CirculantMatrix::new(accepted.recovered.unwrap()).to_dense(),
                d
            );
            let (i, j) = (trial % n, (trial * 7) % n);
            let bumped = d.get(i, j) + c(1.0);
            d.set(i, j, bumped);
            assert!(!is_circulant(&d, 1e-8).unwrap().is_circulant);
            // Commuting with S and with S* are equivalent.
            let by_s = shift_commutator_norm(&d, 1).unwrap() <= 1e-8;
            let by_s_star = shift_commutator_norm(&d, -1).unwrap() <= 1e-8;
            assert_eq!(by_s, by_s_star);
        }
    }

    #[test]
    fn bezout_examples() {
        let cert = bezout_shift_certificate(3, 7).unwrap();
        assert_eq!((cert.a, cert.b), (5, -2));
        assert!(cert.holds());
        assert_eq!(cert.reduced_shift(), 1);
        let cert = bezout_shift_certificate(1, 5).unwrap();
        assert_eq!((cert.a, cert.b), (1, 0));
        assert_eq!(
            bezout_shift_certificate(2, 4),
            Err(Error::NotCoprime { p: 2, n: 4, gcd: 2 })
        );
        assert!(matches!(bezout_shift_certificate(1, 0), Err(Error::Domain(_))));
        let cert = bezout_shift_certificate(-3, 7).unwrap();
        assert!(cert.holds());
        assert!(bezout_shift_certificate(5, 1).unwrap().holds());
    }

    #[test]
    fn shift_spec_algebra() {
        let s = ShiftSpec::new(6, 4).unwrap();
        let t = ShiftSpec::new(6, 5).unwrap();
        assert_eq!(s.compose(&t).unwrap().reduced_power(), 3);
        assert_eq!(s.compose(&s.inverse()).unwrap().reduced_power(), 0);
        assert!(s.compose(&ShiftSpec::right(5).unwrap()).is_err());
        let x = v(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        assert_eq!(
            s.apply(&x).unwrap(),
            s.to_circulant::<f64>().matvec(&x).unwrap()
        );
        assert!(ShiftSpec::new(0, 1).is_err());
    }

    proptest! {
        #[test]
        fn shift_invariance(n in 1usize..40, seed in any::<u64>()) {
            let mut rng = seeded(seed);
            let x = random_cvector::<f64, _>(&mut rng, n);
            let y = random_cvector::<f64, _>(&mut rng, n);
            let cx = CirculantMatrix::new(x.clone());
            let lhs = shift(&cx.matvec(&y).unwrap(), 1);
            let rhs = cx.matvec(&shift(&y, 1)).unwrap();
            let tol = 1e-12 * n as f64 * x.max_abs().max(y.max_abs()).max(1.0);
            prop_assert!(lhs.max_abs_diff(&rhs).unwrap() <= tol);

            // C_x y = dense(C_x) y = x * y = C_y x
            let conv = circular_convolve(&x, &y).unwrap();
            let dense = cx.to_dense().mul_vec(&y).unwrap();
            let swapped = CirculantMatrix::new(y.clone()).matvec(&x).unwrap();
            prop_assert!(cx.matvec(&y).unwrap().max_abs_diff(&conv).unwrap() <= tol);
            prop_assert!(dense.max_abs_diff(&conv).unwrap() <= tol);
            prop_assert!(swapped.max_abs_diff(&conv).unwrap() <= tol);
        }
    }
}
