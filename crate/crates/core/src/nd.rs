//! Circulant operators on `d`-dimensional torus arrays.
//!
//! An operator on arrays over `Z_n1 x ... x Z_nd` is circulant when it
//! commutes with every coordinate shift. Such an operator is a circular
//! convolution with its impulse response `x = M delta`, its common
//! eigenvectors are `w^(m)_l = prod_q rho_q^(m_q l_q)` with
//! `rho_q = exp(i 2 pi / n_q)`, and its eigenvalues form the
//! multidimensional DFT of `x`.
//!
//! Axis `q` is 0-based throughout.

use num_complex::Complex;

use crate::circulant::CVector;
use crate::dft::horner;
use crate::error::{Error, Result};
use crate::random::{random_complex, random_nd_array, seeded};
use crate::scalar::{is_finite, Real};
use crate::spectral::{ConvolutionPlan, Direction};
use crate::torus::{root_of_unity, unit_roots, MultiIndex, RootOfUnity, TorusDims};

/// Complex values on a torus, stored in linear (last axis fastest) order.
#[derive(Debug, Clone, PartialEq)]
pub struct NdArray<T> {
    dims: TorusDims,
    values: Vec<Complex<T>>,
}

impl<T: Real> NdArray<T> {
    pub fn new(dims: TorusDims, values: Vec<Complex<T>>) -> Result<Self> {
        if values.len() != dims.cardinality() {
            return Err(Error::dim(format!(
                "torus {:?} holds {} values, got {}",
                dims.sizes(),
                dims.cardinality(),
                values.len()
            )));
        }
        if let Some(k) = values.iter().position(|z| !is_finite(z)) {
            return Err(Error::NonFinite(k));
        }
        Ok(Self { dims, values })
    }

    pub fn zeros(dims: TorusDims) -> Self {
        let values = vec![Complex::new(T::zero(), T::zero()); dims.cardinality()];
        Self { dims, values }
    }

    pub fn from_fn(dims: TorusDims, mut f: impl FnMut(&MultiIndex) -> Complex<T>) -> Self {
        let values = dims.indices().map(|idx| f(&idx)).collect();
        Self { dims, values }
    }

    pub fn from_cvector(x: &CVector<T>) -> Self {
        Self {
            dims: TorusDims::cyclic(x.len()).expect("n >= 1"),
            values: x.as_slice().to_vec(),
        }
    }

    /// The values as a vector, for one-dimensional arrays.
    pub fn to_cvector(&self) -> Result<CVector<T>> {
        if self.dims.ndim() != 1 {
            return Err(Error::dim(format!(
                "a {}-dimensional array is not a vector",
                self.dims.ndim()
            )));
        }
        Ok(CVector::from_vec_unchecked(self.values.clone()))
    }

    pub fn dims(&self) -> &TorusDims {
        &self.dims
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex<T>> {
        self.values
    }

    pub fn get(&self, idx: &MultiIndex) -> Result<Complex<T>> {
        Ok(self.values[self.dims.linearize(idx)?])
    }

    /// Value at a raw (unreduced) index.
    pub fn at(&self, raw: &[i64]) -> Result<Complex<T>> {
        self.get(&self.dims.reduce(raw)?)
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        self.same_dims(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .fold(T::zero(), |acc, (&a, &b)| acc.max((a - b).norm())))
    }

    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        Self {
            dims: self.dims.clone(),
            values: self.values.iter().map(|&z| z * factor).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>) -> Result<Self> {
        self.same_dims(other)?;
        Ok(Self {
            dims: self.dims.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    fn same_dims(&self, other: &Self) -> Result<()> {
        if self.dims != other.dims {
            return Err(Error::dim(format!(
                "tori {:?} and {:?} differ",
                self.dims.sizes(),
                other.dims.sizes()
            )));
        }
        Ok(())
    }
}

/// The unit impulse at the origin.
pub fn nd_delta<T: Real>(dims: &TorusDims) -> NdArray<T> {
    let mut a = NdArray::zeros(dims.clone());
    a.values[0] = Complex::new(T::one(), T::zero());
    a
}

/// `delta^(l)`, the unit impulse at `l`.
pub fn shifted_delta<T: Real>(dims: &TorusDims, l: &MultiIndex) -> Result<NdArray<T>> {
    let offset = dims.linearize(l)?;
    let mut a = NdArray::zeros(dims.clone());
    a.values[offset] = Complex::new(T::one(), T::zero());
    Ok(a)
}

/// Shift along `axis` by `steps`: `result[k] = a[k - steps e_axis]`.
pub fn coordinate_shift<T: Real>(a: &NdArray<T>, axis: usize, steps: i64) -> Result<NdArray<T>> {
    let dims = a.dims();
    if axis >= dims.ndim() {
        return Err(Error::domain(format!(
            "axis {axis} does not exist on a {}-dimensional torus",
            dims.ndim()
        )));
    }
    let mut l = vec![0i64; dims.ndim()];
    l[axis] = steps;
    general_shift(a, &dims.reduce(&l)?)
}

/// `S_l a`, with `(S_l a)_k = a_{k - l}`.
pub fn general_shift<T: Real>(a: &NdArray<T>, l: &MultiIndex) -> Result<NdArray<T>> {
    let dims = a.dims();
    dims.check(l)?;
    let d = dims.ndim();
    let sizes = dims.sizes();
    let mut k = vec![0usize; d];
    let mut src = vec![0usize; d];
    let values = (0..dims.cardinality())
        .map(|offset| {
            dims.fill_components(offset, &mut k);
            for q in 0..d {
                src[q] = (k[q] + sizes[q] - l.components()[q]) % sizes[q];
            }
            a.values[dims.offset_unchecked(&src)]
        })
        .collect();
    Ok(NdArray {
        dims: dims.clone(),
        values,
    })
}

/// Per axis, `table[k * n + l] = ((k - l) mod n) * stride`.
fn difference_tables(dims: &TorusDims) -> Vec<Vec<usize>> {
    dims.sizes()
        .iter()
        .zip(dims.strides())
        .map(|(&n, &stride)| {
            let mut t = Vec::with_capacity(n * n);
            for k in 0..n {
                for l in 0..n {
                    t.push(((k + n - l) % n) * stride);
                }
            }
            t
        })
        .collect()
}

/// `z_k = sum_l x_{k - l} y_l` over the whole torus.
pub fn nd_convolve<T: Real>(x: &NdArray<T>, y: &NdArray<T>) -> Result<NdArray<T>> {
    x.same_dims(y)?;
    let dims = x.dims();
    let d = dims.ndim();
    let sizes = dims.sizes();
    let tables = difference_tables(dims);
    let mut k = vec![0usize; d];
    let mut l = vec![0usize; d];
    let values = (0..dims.cardinality())
        .map(|k_off| {
            dims.fill_components(k_off, &mut k);
            let mut acc = Complex::new(T::zero(), T::zero());
            l.iter_mut().for_each(|c| *c = 0);
            for &yl in &y.values {
                let mut src = 0;
                for q in 0..d {
                    src += tables[q][k[q] * sizes[q] + l[q]];
                }
                acc += x.values[src] * yl;
                // odometer, last axis fastest
                for q in (0..d).rev() {
                    l[q] += 1;
                    if l[q] < sizes[q] {
                        break;
                    }
                    l[q] = 0;
                }
            }
            acc
        })
        .collect();
    Ok(NdArray {
        dims: dims.clone(),
        values,
    })
}

/// `nd_convolve` through the spectrum: `IDFT(DFT(x) . DFT(y))`.
pub fn nd_convolve_spectral<T: Real>(x: &NdArray<T>, y: &NdArray<T>) -> Result<NdArray<T>> {
    x.same_dims(y)?;
    let product = nd_dft(x)?.hadamard(&nd_dft(y)?)?;
    nd_idft(&product)
}

/// A circulant operator on torus arrays, identified by its impulse response.
/// Two operators are equal iff their impulse responses are equal.
#[derive(Debug, Clone, PartialEq)]
pub struct NdCirculantOp<T> {
    impulse_response: NdArray<T>,
}

impl<T: Real> NdCirculantOp<T> {
    pub fn new(impulse_response: NdArray<T>) -> Self {
        Self { impulse_response }
    }

    pub fn identity(dims: &TorusDims) -> Self {
        Self::new(nd_delta(dims))
    }

    pub fn dims(&self) -> &TorusDims {
        self.impulse_response.dims()
    }

    pub fn impulse_response(&self) -> &NdArray<T> {
        &self.impulse_response
    }

    pub fn apply(&self, y: &NdArray<T>) -> Result<NdArray<T>> {
        apply_operator(self, y)
    }

    pub fn eigenvalues(&self) -> Result<NdArray<T>> {
        nd_eigenvalues(self)
    }
}

/// `M y = sum_l y_l S_l x`, i.e. the convolution of the impulse response with `y`.
pub fn apply_operator<T: Real>(op: &NdCirculantOp<T>, y: &NdArray<T>) -> Result<NdArray<T>> {
    nd_convolve(&op.impulse_response, y)
}

/// A common eigenvector of all coordinate shifts.
#[derive(Debug, Clone, PartialEq)]
pub struct NdEigenvector<T> {
    pub frequency: MultiIndex,
    pub array: NdArray<T>,
}

impl<T: Real> NdEigenvector<T> {
    /// Eigenvalue `rho_q^(m_q)` under the inverse shift along `axis`.
    pub fn axis_eigenvalue(&self, axis: usize) -> Result<RootOfUnity<T>> {
        let sizes = self.array.dims().sizes();
        if axis >= sizes.len() {
            return Err(Error::domain(format!("axis {axis} out of range")));
        }
        root_of_unity(sizes[axis], self.frequency.components()[axis] as i64)
    }
}

/// `w^(m)_l = prod_q rho_q^(m_q l_q)`.
pub fn nd_eigenvector<T: Real>(dims: &TorusDims, m: &MultiIndex) -> Result<NdEigenvector<T>> {
    dims.check(m)?;
    let tables: Vec<Vec<Complex<T>>> = dims.sizes().iter().map(|&n| unit_roots(n)).collect();
    let sizes = dims.sizes();
    let array = NdArray::from_fn(dims.clone(), |l| {
        l.components()
            .iter()
            .enumerate()
            .fold(Complex::new(T::one(), T::zero()), |acc, (q, &lq)| {
                acc * tables[q][(m.components()[q] * lq) % sizes[q]]
            })
    });
    Ok(NdEigenvector {
        frequency: m.clone(),
        array,
    })
}

/// Multidimensional DFT evaluated as one multi-index sum,
/// `x_hat_m = sum_l x_l prod_q rho_q^(-m_q l_q)`.
pub fn nd_dft_direct<T: Real>(x: &NdArray<T>) -> NdArray<T> {
    let dims = x.dims();
    let d = dims.ndim();
    let sizes = dims.sizes();
    let tables: Vec<Vec<Complex<T>>> = sizes
        .iter()
        .map(|&n| unit_roots::<T>(n).into_iter().map(|z| z.conj()).collect())
        .collect();
    let mut m = vec![0usize; d];
    let mut l = vec![0usize; d];
    let values = (0..dims.cardinality())
        .map(|m_off| {
            dims.fill_components(m_off, &mut m);
            let mut acc = Complex::new(T::zero(), T::zero());
            for (l_off, &xl) in x.values.iter().enumerate() {
                dims.fill_components(l_off, &mut l);
                let mut phase = Complex::new(T::one(), T::zero());
                for q in 0..d {
                    phase *= tables[q][(m[q] * l[q]) % sizes[q]];
                }
                acc += xl * phase;
            }
            acc
        })
        .collect();
    NdArray {
        dims: dims.clone(),
        values,
    }
}

fn transform_axis<T: Real>(values: &mut [Complex<T>], dims: &TorusDims, axis: usize, direction: Direction) -> Result<()> {
    let n = dims.sizes()[axis];
    let stride = dims.strides()[axis];
    let plan = ConvolutionPlan::<T>::auto(n)?;
    let mut line = vec![Complex::new(T::zero(), T::zero()); n];
    let block = n * stride;
    for outer in (0..values.len()).step_by(block) {
        for inner in 0..stride {
            let base = outer + inner;
            for (j, slot) in line.iter_mut().enumerate() {
                *slot = values[base + j * stride];
            }
            let out = plan.transform_slice(&line, direction);
            for (j, z) in out.into_iter().enumerate() {
                values[base + j * stride] = z;
            }
        }
    }
    Ok(())
}

/// Multidimensional DFT applied one axis at a time, in the given axis order.
pub fn nd_dft_axis_order<T: Real>(x: &NdArray<T>, order: &[usize]) -> Result<NdArray<T>> {
    let d = x.dims().ndim();
    let mut seen = vec![false; d];
    if order.len() != d || order.iter().any(|&q| q >= d || std::mem::replace(&mut seen[q], true)) {
        return Err(Error::dim(format!(
            "{order:?} is not a permutation of the {d} axes"
        )));
    }
    let mut values = x.values.clone();
    for &q in order {
        transform_axis(&mut values, x.dims(), q, Direction::Forward)?;
    }
    Ok(NdArray {
        dims: x.dims().clone(),
        values,
    })
}

/// Multidimensional DFT, as a sequence of one-dimensional transforms.
pub fn nd_dft<T: Real>(x: &NdArray<T>) -> Result<NdArray<T>> {
    let order: Vec<usize> = (0..x.dims().ndim()).collect();
    nd_dft_axis_order(x, &order)
}

/// Inverse of [`nd_dft`], scaling each axis by `1/n_q`.
pub fn nd_idft<T: Real>(spectrum: &NdArray<T>) -> Result<NdArray<T>> {
    let mut values = spectrum.values.clone();
    for q in 0..spectrum.dims().ndim() {
        transform_axis(&mut values, spectrum.dims(), q, Direction::Inverse)?;
    }
    Ok(NdArray {
        dims: spectrum.dims().clone(),
        values,
    })
}

/// Eigenvalue at `m` belongs to the eigenvector `w^(m)`.
pub fn nd_eigenvalues<T: Real>(op: &NdCirculantOp<T>) -> Result<NdArray<T>> {
    nd_dft(&op.impulse_response)
}

/// `sum_l x_l z_1^(-l_1) ... z_d^(-l_d)`, nested Horner from the last axis.
pub fn nd_z_transform_eval<T: Real>(x: &NdArray<T>, z: &[Complex<T>]) -> Result<Complex<T>> {
    let dims = x.dims();
    if z.len() != dims.ndim() {
        return Err(Error::dim(format!(
            "{} evaluation points for a {}-dimensional array",
            z.len(),
            dims.ndim()
        )));
    }
    if let Some(q) = z.iter().position(|zq| zq.norm_sqr() == T::zero()) {
        return Err(Error::domain(format!("z_{q} must be nonzero")));
    }
    let inv: Vec<Complex<T>> = z.iter().map(|zq| zq.inv()).collect();
    Ok(nested_horner(&x.values, dims, 0, 0, &inv))
}

fn nested_horner<T: Real>(values: &[Complex<T>], dims: &TorusDims, axis: usize, base: usize, inv: &[Complex<T>]) -> Complex<T> {
    let n = dims.sizes()[axis];
    let stride = dims.strides()[axis];
    let coeffs: Vec<Complex<T>> = if axis + 1 == dims.ndim() {
        values[base..base + n].to_vec()
    } else {
        (0..n)
            .map(|j| nested_horner(values, dims, axis + 1, base + j * stride, inv))
            .collect()
    };
    horner(&coeffs, inv[axis])
}

/// Outcome of probing a black-box map for shift invariance.
#[derive(Debug, Clone, PartialEq)]
pub struct NdCirculantCheck<T> {
    pub is_circulant: bool,
    /// Largest `|S_q M p - M S_q p|` over axes and probes.
    pub max_commutator: T,
    /// `|M(a u + b v) - a M u - b M v|` on a random combination.
    pub linearity_residual: T,
    /// `|M p - x * p|` on random probes, with `x = M delta`.
    pub reproduction_residual: T,
    /// Number of map evaluations spent.
    pub probes: usize,
    /// True when every shifted delta was probed.
    pub exhaustive: bool,
    pub impulse_response: Option<NdArray<T>>,
}

/// Tori up to this many points are probed with the full delta basis.
pub const EXHAUSTIVE_PROBE_LIMIT: usize = 4096;
const RANDOM_PROBES: usize = 32;
const DETECTION_SEED: u64 = 0xDE7EC7;

/// Tests whether `map` commutes with every coordinate shift.
///
/// The map is assumed linear; this is spot-checked on one random linear
/// combination. The commutator is compared against `tol` in absolute
/// terms, the linearity and reproduction spot-checks relative to the
/// magnitude of the map's output.
pub fn is_nd_circulant<T, F>(mut map: F, dims: &TorusDims, tol: T) -> Result<NdCirculantCheck<T>>
where
    T: Real,
    F: FnMut(&NdArray<T>) -> NdArray<T>,
{
    let mut probes = 0usize;
    let mut eval = |a: &NdArray<T>| -> Result<NdArray<T>> {
        probes += 1;
        let out = map(a);
        if out.dims() != dims {
            return Err(Error::dim(format!(
                "map sent an array on {:?} to one on {:?}",
                dims.sizes(),
                out.dims().sizes()
            )));
        }
        Ok(out)
    };
    let mut rng = seeded(DETECTION_SEED);
    let card = dims.cardinality();
    let exhaustive = card <= EXHAUSTIVE_PROBE_LIMIT;

    let mut max_commutator = T::zero();
    let impulse = if exhaustive {
        let responses = dims
            .indices()
            .map(|l| eval(&shifted_delta(dims, &l)?))
            .collect::<Result<Vec<_>>>()?;
        for q in 0..dims.ndim() {
            let mut step = vec![0i64; dims.ndim()];
            step[q] = 1;
            let e_q = dims.reduce(&step)?;
            for (offset, response) in responses.iter().enumerate() {
                let l = dims.delinearize(offset)?;
                let next = dims.linearize(&dims.add(&l, &e_q)?)?;
                let lhs = coordinate_shift(response, q, 1)?;
                max_commutator = max_commutator.max(lhs.max_abs_diff(&responses[next])?);
            }
        }
        responses.into_iter().next().expect("cardinality >= 1")
    } else {
        for _ in 0..RANDOM_PROBES {
            let p = random_nd_array::<T, _>(&mut rng, dims);
            let mp = eval(&p)?;
            for q in 0..dims.ndim() {
                let lhs = coordinate_shift(&mp, q, 1)?;
                let rhs = eval(&coordinate_shift(&p, q, 1)?)?;
                max_commutator = max_commutator.max(lhs.max_abs_diff(&rhs)?);
            }
        }
        eval(&nd_delta(dims))?
    };

    let u = random_nd_array::<T, _>(&mut rng, dims);
    let v = random_nd_array::<T, _>(&mut rng, dims);
    let (a, b) = (random_complex::<T, _>(&mut rng), random_complex::<T, _>(&mut rng));
    let combined = eval(&u.scale(a).add(&v.scale(b))?)?;
    let mu = eval(&u)?;
    let mv = eval(&v)?;
    let expected = mu.scale(a).add(&mv.scale(b))?;
    let linearity_residual = combined.max_abs_diff(&expected)?;
    let linearity_scale = expected.max_abs().max(T::one());

    let op = NdCirculantOp::new(impulse.clone());
    let mut reproduction_residual = T::zero();
    let mut reproduction_scale = T::one();
    for (probe, response) in [(&u, &mu), (&v, &mv)] {
        reproduction_residual = reproduction_residual.max(op.apply(probe)?.max_abs_diff(response)?);
        reproduction_scale = reproduction_scale.max(response.max_abs());
    }

    let is_circulant = max_commutator <= tol
        && linearity_residual <= tol * linearity_scale
        && reproduction_residual <= tol * reproduction_scale;
    Ok(NdCirculantCheck {
        is_circulant,
        max_commutator,
        linearity_residual,
        reproduction_residual,
        probes,
        exhaustive,
        impulse_response: is_circulant.then_some(impulse),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circulant::{circular_convolve, shift};
    use crate::dft::{dft, shift_eigenpairs, z_transform_eval};
    use crate::random::random_cvector;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn dims(sizes: &[usize]) -> TorusDims {
        TorusDims::new(sizes.to_vec()).unwrap()
    }

    fn real(d: &TorusDims, values: &[f64]) -> NdArray<f64> {
        NdArray::new(d.clone(), values.iter().map(|&v| c(v, 0.0)).collect()).unwrap()
    }

    #[test]
    fn delta_examples() {
        let d = dims(&[2, 2]);
        assert_eq!(nd_delta::<f64>(&d), real(&d, &[1.0, 0.0, 0.0, 0.0]));
        let l = d.reduce(&[1, 0]).unwrap();
        let sd = shifted_delta::<f64>(&d, &l).unwrap();
        assert_eq!(sd, real(&d, &[0.0, 0.0, 1.0, 0.0]));
        assert_eq!(sd, general_shift(&nd_delta(&d), &l).unwrap());
        let d = dims(&[3, 4]);
        let l = d.reduce(&[2, 1]).unwrap();
        let sd = shifted_delta::<f64>(&d, &l).unwrap();
        for k in d.indices() {
            let expected = if d.sub(&k, &l).unwrap() == d.zero() { 1.0 } else { 0.0 };
            assert_eq!(sd.get(&k).unwrap(), c(expected, 0.0));
        }
    }

    #[test]
    fn coordinate_shift_examples() {
        let d = dims(&[7, 5]);
        let mut rng = seeded(31);
        let a = random_nd_array::<f64, _>(&mut rng, &d);
        assert_eq!(coordinate_shift(&a, 0, 0).unwrap(), a);
        assert_eq!(coordinate_shift(&a, 1, 5).unwrap(), a);
        let s = coordinate_shift(&a, 1, 1).unwrap();
        assert_eq!(s.at(&[0, 0]).unwrap(), a.at(&[0, 4]).unwrap());
        assert!(matches!(coordinate_shift(&a, 2, 1), Err(Error::Domain(_))));

        let x = random_cvector::<f64, _>(&mut rng, 9);
        let shifted = coordinate_shift(&NdArray::from_cvector(&x), 0, 4).unwrap();
        assert_eq!(shifted.to_cvector().unwrap(), shift(&x, 4));
    }

    #[test]
    fn general_shift_examples() {
        let d = dims(&[3, 4, 2]);
        let mut rng = seeded(32);
        let a = random_nd_array::<f64, _>(&mut rng, &d);
        assert_eq!(general_shift(&a, &d.zero()).unwrap(), a);
        let l = d.reduce(&[2, -1, 1]).unwrap();
        let composed_fwd = coordinate_shift(
            &coordinate_shift(&coordinate_shift(&a, 0, 2).unwrap(), 1, -1).unwrap(),
            2,
            1,
        )
        .unwrap();
        let composed_rev = coordinate_shift(
            &coordinate_shift(&coordinate_shift(&a, 2, 1).unwrap(), 1, -1).unwrap(),
            0,
            2,
        )
        .unwrap();
        let direct = general_shift(&a, &l).unwrap();
        assert_eq!(direct, composed_fwd);
        assert_eq!(direct, composed_rev);
        for k in d.indices() {
            assert_eq!(direct.get(&k).unwrap(), a.get(&d.sub(&k, &l).unwrap()).unwrap());
        }
        assert!(general_shift(&a, &dims(&[3, 4]).zero()).is_err());
    }

    #[test]
    fn delta_decomposition_is_exact() {
        let d = dims(&[3, 2, 2]);
        let mut rng = seeded(33);
        let y = random_nd_array::<f64, _>(&mut rng, &d);
        let mut sum = NdArray::zeros(d.clone());
        for l in d.indices() {
            let term = shifted_delta(&d, &l).unwrap().scale(y.get(&l).unwrap());
            sum = sum.add(&term).unwrap();
        }
        assert_eq!(sum, y);
    }

    #[test]
    fn convolution_examples() {
        let d = dims(&[2, 2]);
        let x = real(&d, &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(nd_convolve(&x, &nd_delta(&d)).unwrap(), x);
        let l = d.reduce(&[0, 1]).unwrap();
        let z = nd_convolve(&x, &shifted_delta(&d, &l).unwrap()).unwrap();
        assert_eq!(z, real(&d, &[2.0, 1.0, 4.0, 3.0]));
        assert_eq!(z, general_shift(&x, &l).unwrap());

        let mut rng = seeded(34);
        let d = dims(&[3, 5]);
        let x = random_nd_array::<f64, _>(&mut rng, &d);
        for l in d.indices() {
            let z = nd_convolve(&x, &shifted_delta(&d, &l).unwrap()).unwrap();
            assert!(z.max_abs_diff(&general_shift(&x, &l).unwrap()).unwrap() <= 1e-15);
        }
        assert!(nd_convolve(&x, &nd_delta(&dims(&[5, 3]))).is_err());
    }

    #[test]
    fn d1_convolution_matches_vector_convolution() {
        let mut rng = seeded(35);
        for n in [1usize, 4, 13] {
            let x = random_cvector::<f64, _>(&mut rng, n);
            let y = random_cvector::<f64, _>(&mut rng, n);
            let nd = nd_convolve(&NdArray::from_cvector(&x), &NdArray::from_cvector(&y))
                .unwrap()
                .to_cvector()
                .unwrap();
            assert!(nd.max_abs_diff(&circular_convolve(&x, &y).unwrap()).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn operator_examples() {
        let d = dims(&[3, 3]);
        let mut rng = seeded(36);
        let y = random_nd_array::<f64, _>(&mut rng, &d);
        assert_eq!(NdCirculantOp::identity(&d).apply(&y).unwrap(), y);
        let x = random_nd_array::<f64, _>(&mut rng, &d);
        let op = NdCirculantOp::new(x.clone());
        assert_eq!(op.apply(&nd_delta(&d)).unwrap(), x);
        // direct sum z_k = sum_l y_l x_{k-l}
        let oracle = NdArray::from_fn(d.clone(), |k| {
            d.indices()
                .map(|l| y.get(&l).unwrap() * x.get(&d.sub(k, &l).unwrap()).unwrap())
                .sum()
        });
        assert!(op.apply(&y).unwrap().max_abs_diff(&oracle).unwrap() <= 1e-11);
        assert!(op.apply(&nd_delta(&dims(&[9]))).is_err());
    }

    #[test]
    fn eigenvector_examples() {
        let d = dims(&[3, 4]);
        let w = nd_eigenvector::<f64>(&d, &d.zero()).unwrap();
        assert!(w.array.values().iter().all(|&z| z == c(1.0, 0.0)));

        let d = dims(&[2, 2]);
        let w = nd_eigenvector::<f64>(&d, &d.reduce(&[1, 1]).unwrap()).unwrap();
        assert_eq!(w.array, real(&d, &[1.0, -1.0, -1.0, 1.0]));

        let d1 = dims(&[6]);
        for pair in shift_eigenpairs::<f64>(6).unwrap() {
            let m = d1.reduce(&[pair.m as i64]).unwrap();
            let w = nd_eigenvector::<f64>(&d1, &m).unwrap();
            assert_eq!(w.array.to_cvector().unwrap(), pair.eigenvector);
        }
        assert!(nd_eigenvector::<f64>(&d, &d1.zero()).is_err());
    }

    #[test]
    fn eigenvectors_diagonalize_every_coordinate_shift() {
        let d = dims(&[4, 3, 5]);
        for m in d.indices() {
            let w = nd_eigenvector::<f64>(&d, &m).unwrap();
            for q in 0..3 {
                let lhs = coordinate_shift(&w.array, q, -1).unwrap();
                let rhs = w.array.scale(w.axis_eigenvalue(q).unwrap().value());
                assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-12);
            }
        }
    }

    #[test]
    fn nd_dft_examples() {
        for sizes in [&[2usize, 2][..], &[3, 5], &[2, 3, 4]] {
            let d = dims(sizes);
            let card = d.cardinality() as f64;
            let spec = nd_dft(&nd_delta::<f64>(&d)).unwrap();
            assert!(spec.values().iter().all(|&z| (z - c(1.0, 0.0)).norm() < 1e-15));
            let cst = c(0.25, -1.0);
            let spec = nd_dft(&NdArray::from_fn(d.clone(), |_| cst)).unwrap();
            assert!((spec.values()[0] - cst * card).norm() < 1e-12 * card);
            assert!(spec.values()[1..].iter().all(|z| z.norm() < 1e-12 * card));
        }
        let d = dims(&[2, 2]);
        let x = real(&d, &[1.0, 2.0, 3.0, 4.0]);
        let expected = real(&d, &[10.0, -2.0, -4.0, 0.0]);
        assert!(nd_dft(&x).unwrap().max_abs_diff(&expected).unwrap() < 1e-14);
        assert!(nd_dft_direct(&x).max_abs_diff(&expected).unwrap() < 1e-14);
    }

    #[test]
    fn axis_orders_agree() {
        let d = dims(&[2, 3, 4]);
        let mut rng = seeded(37);
        let x = random_nd_array::<f64, _>(&mut rng, &d);
        let reference = nd_dft_direct(&x);
        for order in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let got = nd_dft_axis_order(&x, &order).unwrap();
            assert!(got.max_abs_diff(&reference).unwrap() <= 1e-9 * 24.0);
        }
        assert!(nd_dft_axis_order(&x, &[0, 0, 1]).is_err());
        assert!(nd_dft_axis_order(&x, &[0, 1]).is_err());
    }

    #[test]
    fn d1_dft_matches_vector_dft() {
        let mut rng = seeded(38);
        for n in [1usize, 5, 8, 12] {
            let x = random_cvector::<f64, _>(&mut rng, n);
            let nd = nd_dft(&NdArray::from_cvector(&x)).unwrap();
            let direct = nd_dft_direct(&NdArray::from_cvector(&x));
            let v = dft(&x).to_standard_vector();
            assert!(nd.to_cvector().unwrap().max_abs_diff(&v).unwrap() <= 1e-12);
            assert_eq!(direct.to_cvector().unwrap(), v);
        }
    }

    #[test]
    fn eigenvalue_examples() {
        let d = dims(&[3, 2]);
        let ev = nd_eigenvalues(&NdCirculantOp::<f64>::identity(&d)).unwrap();
        assert!(ev.values().iter().all(|&z| (z - c(1.0, 0.0)).norm() < 1e-15));

        let shift_op = NdCirculantOp::new(shifted_delta::<f64>(&d, &d.reduce(&[1, 0]).unwrap()).unwrap());
        let ev = nd_eigenvalues(&shift_op).unwrap();
        for m in d.indices() {
            let expected = root_of_unity::<f64>(3, -(m.components()[0] as i64)).unwrap().value();
            assert!((ev.get(&m).unwrap() - expected).norm() < 1e-12);
        }

        let mut rng = seeded(39);
        let d = dims(&[3, 3]);
        let x = random_nd_array::<f64, _>(&mut rng, &d);
        let op = NdCirculantOp::new(x.clone());
        let ev = op.eigenvalues().unwrap();
        for m in d.indices() {
            let w = nd_eigenvector::<f64>(&d, &m).unwrap();
            let lhs = op.apply(&w.array).unwrap();
            let rhs = w.array.scale(ev.get(&m).unwrap());
            assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-9 * 9.0 * x.max_abs());
        }
    }

    #[test]
    fn z_transform_examples() {
        let d = dims(&[2, 3]);
        let delta = nd_delta::<f64>(&d);
        assert_eq!(nd_z_transform_eval(&delta, &[c(0.3, 1.0), c(-2.0, 0.5)]).unwrap(), c(1.0, 0.0));
        assert!(matches!(
            nd_z_transform_eval(&delta, &[c(1.0, 0.0), c(0.0, 0.0)]),
            Err(Error::Domain(_))
        ));
        assert!(nd_z_transform_eval(&delta, &[c(1.0, 0.0)]).is_err());

        let mut rng = seeded(40);
        let x = random_cvector::<f64, _>(&mut rng, 7);
        let z = c(0.4, -1.3);
        assert_eq!(
            nd_z_transform_eval(&NdArray::from_cvector(&x), &[z]).unwrap(),
            z_transform_eval(&x, z).unwrap()
        );

        let a = random_nd_array::<f64, _>(&mut rng, &d);
        let spec = nd_dft_direct(&a);
        for m in d.indices() {
            let z: Vec<_> = m
                .components()
                .iter()
                .zip(d.sizes())
                .map(|(&mq, &n)| root_of_unity::<f64>(n, mq as i64).unwrap().value())
                .collect();
            let got = nd_z_transform_eval(&a, &z).unwrap();
            assert!((got - spec.get(&m).unwrap()).norm() <= 1e-10 * 6.0);
        }
    }

    #[test]
    fn detection_examples() {
        let d = dims(&[3, 4]);
        let l = d.reduce(&[1, 1]).unwrap();
        let check = is_nd_circulant(|a: &NdArray<f64>| general_shift(a, &l).unwrap(), &d, 1e-12).unwrap();
        assert!(check.is_circulant);
        assert!(check.exhaustive);
        assert_eq!(check.impulse_response.unwrap(), shifted_delta(&d, &l).unwrap());

        let mask = NdArray::from_fn(d.clone(), |k| c(1.0 + k.components()[0] as f64, 0.0));
        let check = is_nd_circulant(|a: &NdArray<f64>| a.hadamard(&mask).unwrap(), &d, 1e-8).unwrap();
        assert!(!check.is_circulant);
        assert!(check.impulse_response.is_none());

        let mut rng = seeded(41);
        let x = random_nd_array::<f64, _>(&mut rng, &d);
        let check = is_nd_circulant(|a: &NdArray<f64>| nd_convolve(&x, a).unwrap(), &d, 1e-11).unwrap();
        assert!(check.is_circulant);
        assert!(check.impulse_response.unwrap().max_abs_diff(&x).unwrap() <= 1e-11);

        let offset = NdArray::from_fn(d.clone(), |_| c(1.0, 0.0));
        let check = is_nd_circulant(|a: &NdArray<f64>| a.add(&offset).unwrap(), &d, 1e-8).unwrap();
        assert!(!check.is_circulant, "affine maps are not linear");

        let err = is_nd_circulant(|_: &NdArray<f64>| nd_delta(&dims(&[12])), &d, 1e-8);
        assert!(matches!(err, Err(Error::Dimension(_))));
    }

    #[test]
    fn detection_above_the_exhaustive_limit_uses_random_probes() {
        let d = dims(&[65, 64]);
        let mut rng = seeded(42);
        let x = random_nd_array::<f64, _>(&mut rng, &d);
        let check = is_nd_circulant(|a: &NdArray<f64>| nd_convolve_spectral(&x, a).unwrap(), &d, 1e-9).unwrap();
        assert!(!check.exhaustive);
        assert!(check.is_circulant, "{check:?}");
        assert!(check.probes < 200);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn nd_algebra(sizes in prop::collection::vec(1usize..7, 1..4), seed in any::<u64>()) {
            let d = TorusDims::new(sizes).unwrap();
            prop_assume!(d.cardinality() <= 216);
            let card = d.cardinality() as f64;
            let mut rng = seeded(seed);
            let x = random_nd_array::<f64, _>(&mut rng, &d);
            let y = random_nd_array::<f64, _>(&mut rng, &d);
            let z = random_nd_array::<f64, _>(&mut rng, &d);

            let xy = nd_convolve(&x, &y).unwrap();
            prop_assert!(xy.max_abs_diff(&nd_convolve(&y, &x).unwrap()).unwrap() <= 1e-10 * card);
            let left = nd_convolve(&xy, &z).unwrap();
            let right = nd_convolve(&x, &nd_convolve(&y, &z).unwrap()).unwrap();
            prop_assert!(left.max_abs_diff(&right).unwrap() <= 1e-10 * card * card);

            let lhs = nd_dft(&xy).unwrap();
            let rhs = nd_dft(&x).unwrap().hadamard(&nd_dft(&y).unwrap()).unwrap();
            prop_assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-9 * card * card * rhs.max_abs().max(1.0));

            prop_assert!(nd_idft(&nd_dft(&x).unwrap()).unwrap().max_abs_diff(&x).unwrap() <= 1e-11 * card);
            prop_assert!(nd_dft(&x).unwrap().max_abs_diff(&nd_dft_direct(&x)).unwrap() <= 1e-9 * card);
            prop_assert!(nd_convolve_spectral(&x, &y).unwrap().max_abs_diff(&xy).unwrap() <= 1e-9 * card * card);
        }
    }
}
