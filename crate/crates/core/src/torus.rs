//! Index arithmetic on `Z_n1 x ... x Z_nd` and roots of unity.
//!
//! Indices are always stored reduced. Public constructors accept raw signed
//! integers and reduce them on entry. The flat layout is row-major with the
//! last axis varying fastest.

use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// `raw mod n` in `[0, n)`.
pub fn modulo(raw: i64, n: usize) -> usize {
    debug_assert!(n > 0);
    raw.rem_euclid(n as i64) as usize
}

/// Sizes of a discrete torus, one cyclic axis per entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TorusDims {
    sizes: Vec<usize>,
    strides: Vec<usize>,
    cardinality: usize,
}

/// A point of a torus, every component already reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    components: Vec<usize>,
}

impl MultiIndex {
    pub fn components(&self) -> &[usize] {
        &self.components
    }

    pub fn ndim(&self) -> usize {
        self.components.len()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (q, c) in self.components.iter().enumerate() {
            if q > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl TorusDims {
    pub fn new(sizes: impl Into<Vec<usize>>) -> Result<Self> {
        let sizes = sizes.into();
        if sizes.is_empty() {
            return Err(Error::domain("a torus needs at least one axis"));
        }
        if let Some(q) = sizes.iter().position(|&n| n == 0) {
            return Err(Error::domain(format!("axis {q} has size 0")));
        }
        let cardinality = sizes
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .filter(|&c| c <= i64::MAX as usize)
            .ok_or_else(|| Error::domain(format!("torus {sizes:?} is too large to index")))?;
        let mut strides = vec![1usize; sizes.len()];
        for q in (0..sizes.len() - 1).rev() {
            strides[q] = strides[q + 1] * sizes[q + 1];
        }
        Ok(Self {
            sizes,
            strides,
            cardinality,
        })
    }

    /// The cyclic group `Z_n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn ndim(&self) -> usize {
        self.sizes.len()
    }

    /// Number of points, `n_1 * ... * n_d`.
    pub fn cardinality(&self) -> usize {
        self.cardinality
    }

    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    pub fn zero(&self) -> MultiIndex {
        MultiIndex {
            components: vec![0; self.ndim()],
        }
    }

    pub fn reduce(&self, raw: &[i64]) -> Result<MultiIndex> {
        if raw.len() != self.ndim() {
            return Err(Error::dim(format!(
                "index has {} components, torus has {} axes",
                raw.len(),
                self.ndim()
            )));
        }
        Ok(MultiIndex {
            components: raw
                .iter()
                .zip(&self.sizes)
                .map(|(&r, &n)| modulo(r, n))
                .collect(),
        })
    }

    /// Rejects indices that do not belong to this torus.
    pub fn check(&self, idx: &MultiIndex) -> Result<()> {
        if idx.ndim() != self.ndim() {
            return Err(Error::dim(format!(
                "index {idx} has {} components, torus has {} axes",
                idx.ndim(),
                self.ndim()
            )));
        }
        if idx
            .components
            .iter()
            .zip(&self.sizes)
            .any(|(&c, &n)| c >= n)
        {
            return Err(Error::dim(format!(
                "index {idx} is not a point of the torus {:?}",
                self.sizes
            )));
        }
        Ok(())
    }

    pub fn add(&self, a: &MultiIndex, b: &MultiIndex) -> Result<MultiIndex> {
        self.check(a)?;
        self.check(b)?;
        Ok(MultiIndex {
            components: a
                .components
                .iter()
                .zip(&b.components)
                .zip(&self.sizes)
                .map(|((&x, &y), &n)| (x + y) % n)
                .collect(),
        })
    }

    pub fn sub(&self, a: &MultiIndex, b: &MultiIndex) -> Result<MultiIndex> {
        self.check(a)?;
        self.check(b)?;
        Ok(MultiIndex {
            components: a
                .components
                .iter()
                .zip(&b.components)
                .zip(&self.sizes)
                .map(|((&x, &y), &n)| (x + n - y) % n)
                .collect(),
        })
    }

    pub fn neg(&self, a: &MultiIndex) -> Result<MultiIndex> {
        self.sub(&self.zero(), a)
    }

    pub fn linearize(&self, idx: &MultiIndex) -> Result<usize> {
        self.check(idx)?;
        Ok(self.offset_unchecked(&idx.components))
    }

    pub fn delinearize(&self, offset: usize) -> Result<MultiIndex> {
        if offset >= self.cardinality {
            return Err(Error::domain(format!(
                "offset {offset} outside [0, {})",
                self.cardinality
            )));
        }
        let mut components = vec![0; self.ndim()];
        self.fill_components(offset, &mut components);
        Ok(MultiIndex { components })
    }

    /// Every point in linear order.
    pub fn indices(&self) -> impl Iterator<Item = MultiIndex> + '_ {
        (0..self.cardinality).map(move |offset| {
            let mut components = vec![0; self.ndim()];
            self.fill_components(offset, &mut components);
            MultiIndex { components }
        })
    }

    pub(crate) fn offset_unchecked(&self, components: &[usize]) -> usize {
        components
            .iter()
            .zip(&self.strides)
            .map(|(&c, &s)| c * s)
            .sum()
    }

    pub(crate) fn fill_components(&self, mut offset: usize, out: &mut [usize]) {
        for (q, &s) in self.strides.iter().enumerate() {
            out[q] = offset / s;
            offset %= s;
        }
    }
}

/// `exp(i 2 pi m / n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOfUnity<T> {
    n: usize,
    exponent: usize,
    value: Complex<T>,
}

impl<T: Real> RootOfUnity<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Exponent reduced into `[0, n)`.
    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn value(&self) -> Complex<T> {
        self.value
    }

    pub fn pow(&self, k: i64) -> RootOfUnity<T> {
        let exponent = modulo(self.exponent as i64 * modulo(k, self.n) as i64, self.n);
        RootOfUnity {
            n: self.n,
            exponent,
            value: unit_root(exponent, self.n),
        }
    }

    pub fn inverse(&self) -> RootOfUnity<T> {
        self.pow(-1)
    }
}

pub fn root_of_unity<T: Real>(n: usize, m: i64) -> Result<RootOfUnity<T>> {
    if n == 0 {
        return Err(Error::domain("roots of unity need n >= 1"));
    }
    let exponent = modulo(m, n);
    Ok(RootOfUnity {
        n,
        exponent,
        value: unit_root(exponent, n),
    })
}

/// `exp(i 2 pi r / n)` for `r` in `[0, n)`, folded so that
/// `unit_root(n - r, n)` is the exact conjugate of `unit_root(r, n)`.
pub(crate) fn unit_root<T: Real>(r: usize, n: usize) -> Complex<T> {
    debug_assert!(r < n);
    if r == 0 {
        return Complex::new(T::one(), T::zero());
    }
    if 2 * r > n {
        return unit_root::<T>(n - r, n).conj();
    }
    // Exact values on the axes.
    if 4 * r == n {
        return Complex::new(T::zero(), T::one());
    }
    if 2 * r == n {
        return Complex::new(-T::one(), T::zero());
    }
    let angle = T::lit(2.0) * T::PI() * T::count(r) / T::count(n);
    Complex::new(angle.cos(), angle.sin())
}

/// Table of `rho^j`, `j = 0..n`, with `rho = exp(i 2 pi / n)`.
pub(crate) fn unit_roots<T: Real>(n: usize) -> Vec<Complex<T>> {
    (0..n).map(|r| unit_root(r, n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: Complex<f64>, b: Complex<f64>, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn reduce_examples() {
        let d5 = TorusDims::cyclic(5).unwrap();
        assert_eq!(d5.reduce(&[5]).unwrap().components(), &[0]);
        assert_eq!(d5.reduce(&[-1]).unwrap().components(), &[4]);
        let d75 = TorusDims::new(vec![7, 5]).unwrap();
        assert_eq!(d75.reduce(&[7, -3]).unwrap().components(), &[0, 2]);
        assert!(matches!(d75.reduce(&[1]), Err(Error::Dimension(_))));
    }

    #[test]
    fn add_sub_examples() {
        let d5 = TorusDims::cyclic(5).unwrap();
        let a = d5.reduce(&[4]).unwrap();
        let b = d5.reduce(&[1]).unwrap();
        assert_eq!(d5.add(&a, &b).unwrap(), d5.zero());
        assert_eq!(d5.add(&a, &d5.zero()).unwrap(), a);
        let d3 = TorusDims::cyclic(3).unwrap();
        let r = d3
            .sub(&d3.reduce(&[0]).unwrap(), &d3.reduce(&[1]).unwrap())
            .unwrap();
        assert_eq!(r.components(), &[2]);
        let d75 = TorusDims::new(vec![7, 5]).unwrap();
        let s = d75
            .add(&d75.reduce(&[0, 4]).unwrap(), &d75.reduce(&[0, 1]).unwrap())
            .unwrap();
        assert_eq!(s, d75.zero());
    }

    #[test]
    fn mismatched_dims_are_rejected() {
        let d5 = TorusDims::cyclic(5).unwrap();
        let d22 = TorusDims::new(vec![2, 2]).unwrap();
        let a = d22.zero();
        assert!(matches!(d5.add(&a, &a), Err(Error::Dimension(_))));
        let big = TorusDims::cyclic(9).unwrap().reduce(&[7]).unwrap();
        assert!(matches!(d5.add(&big, &big), Err(Error::Dimension(_))));
    }

    #[test]
    fn bad_dims() {
        assert!(TorusDims::new(Vec::<usize>::new()).is_err());
        assert!(TorusDims::new(vec![3, 0]).is_err());
        assert!(TorusDims::new(vec![usize::MAX, 2]).is_err());
    }

    #[test]
    fn root_examples() {
        let r: RootOfUnity<f64> = root_of_unity(4, 1).unwrap();
        assert!(close(r.value(), Complex::new(0.0, 1.0), 1e-15));
        let r: RootOfUnity<f64> = root_of_unity(2, 1).unwrap();
        assert!(close(r.value(), Complex::new(-1.0, 0.0), 1e-15));
        let r: RootOfUnity<f64> = root_of_unity(3, 3).unwrap();
        assert!(close(r.value(), Complex::new(1.0, 0.0), 1e-15));
        assert!(matches!(
            root_of_unity::<f64>(0, 1),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn root_value_matches_definition() {
        for n in 1..=64usize {
            for m in -70i64..70 {
                let r: RootOfUnity<f64> = root_of_unity(n, m).unwrap();
                let angle = 2.0 * std::f64::consts::PI * m as f64 / n as f64;
                let expected = Complex::new(angle.cos(), angle.sin());
                assert!(close(r.value(), expected, 1e-12), "n={n} m={m}");
                assert!((r.value().norm() - 1.0).abs() < 1e-12);
                assert!(close(r.value().powu(n as u32), Complex::new(1.0, 0.0), 1e-12));
            }
        }
    }

    #[test]
    fn folded_roots_are_exact_conjugates() {
        for n in 1..40 {
            let t = unit_roots::<f64>(n);
            for r in 1..n {
                assert_eq!(t[n - r], t[r].conj());
            }
        }
    }

    #[test]
    fn linearize_examples() {
        let d = TorusDims::new(vec![7, 5]).unwrap();
        assert_eq!(d.linearize(&d.reduce(&[0, 0]).unwrap()).unwrap(), 0);
        assert_eq!(d.linearize(&d.reduce(&[0, 1]).unwrap()).unwrap(), 1);
        assert_eq!(d.linearize(&d.reduce(&[1, 0]).unwrap()).unwrap(), 5);
        assert!(matches!(d.delinearize(35), Err(Error::Domain(_))));
    }

    #[test]
    fn linearize_is_a_bijection() {
        for sizes in [vec![1], vec![10_000], vec![7, 5], vec![2, 3, 4, 5], vec![10, 10, 10, 10], vec![8, 8, 8]] {
            let d = TorusDims::new(sizes).unwrap();
            assert!(d.cardinality() <= 10_000);
            for (offset, idx) in d.indices().enumerate() {
                assert_eq!(d.linearize(&idx).unwrap(), offset);
                assert_eq!(d.delinearize(offset).unwrap(), idx);
            }
        }
    }

    fn dims_and_raw() -> impl Strategy<Value = (Vec<usize>, Vec<i64>, Vec<i64>, Vec<i64>)> {
        prop::collection::vec(1usize..9, 1..4).prop_flat_map(|sizes| {
            let d = sizes.len();
            (
                Just(sizes),
                prop::collection::vec(-50i64..50, d),
                prop::collection::vec(-50i64..50, d),
                prop::collection::vec(-50i64..50, d),
            )
        })
    }

    proptest! {
        #[test]
        fn group_laws((sizes, a, b, c) in dims_and_raw()) {
            let dims = TorusDims::new(sizes).unwrap();
            let a = dims.reduce(&a).unwrap();
            let b = dims.reduce(&b).unwrap();
            let c = dims.reduce(&c).unwrap();
            prop_assert_eq!(dims.add(&a, &b).unwrap(), dims.add(&b, &a).unwrap());
            prop_assert_eq!(
                dims.add(&dims.add(&a, &b).unwrap(), &c).unwrap(),
                dims.add(&a, &dims.add(&b, &c).unwrap()).unwrap()
            );
            prop_assert_eq!(dims.add(&a, &dims.neg(&a).unwrap()).unwrap(), dims.zero());
            let raw: Vec<i64> = a.components().iter().map(|&x| x as i64).collect();
            prop_assert_eq!(dims.reduce(&raw).unwrap(), a);
        }

        #[test]
        fn roots_form_a_homomorphism(n in 1usize..200, a in -1000i64..1000, b in -1000i64..1000) {
            let ra: RootOfUnity<f64> = root_of_unity(n, a).unwrap();
            let rb: RootOfUnity<f64> = root_of_unity(n, b).unwrap();
            let rab: RootOfUnity<f64> = root_of_unity(n, a + b).unwrap();
            prop_assert!(close(ra.value() * rb.value(), rab.value(), 1e-12));
            let rneg: RootOfUnity<f64> = root_of_unity(n, n as i64 - a).unwrap();
            prop_assert!(close(ra.value() * rneg.value(), Complex::new(1.0, 0.0), 1e-12));
            prop_assert!(close(ra.pow(3).value(), ra.value().powu(3), 1e-12));
        }
    }
}
