//! Brute-force references and the property suites built on them.
//!
//! The reference routines here evaluate each definition literally, with
//! their own loops, index arithmetic, trigonometry and dense products. They
//! do not call into the modules they are used to check.
//!
//! Random inputs have real and imaginary parts uniform in `[-1, 1]` and are
//! drawn from a ChaCha8 stream seeded per check, so every report can be
//! replayed from its seed.

use num_complex::Complex;
use serde::Serialize;

use crate::circulant::{
    bezout_shift_certificate, circular_convolve, is_circulant, shift, shift_commutator_norm,
    CVector, CirculantMatrix, DenseMatrix,
};
use crate::dft::{
    alternate_transform, dft, dft_unitary, eigenvalues_of_circulant, idft_unitary,
    shift_eigenpairs, z_transform_eval, DftMatrix,
};
use crate::error::{Error, Result};
use crate::nd::{
    nd_convolve, nd_dft, nd_dft_axis_order, nd_dft_direct, nd_eigenvector, nd_idft,
    nd_z_transform_eval, NdArray, NdCirculantOp,
};
use crate::random::{random_cvector, random_nd_array, seeded};
use crate::scalar::Real;
use crate::spectral::{diagonalization_residual, ConvolutionPlan, Method};
use crate::torus::TorusDims;

/// Outcome of one property on one instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub property: String,
    pub instance: String,
    pub seed: u64,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl PropertyReport {
    pub fn new(
        property: impl Into<String>,
        instance: impl Into<String>,
        seed: u64,
        residual: f64,
        tolerance: f64,
    ) -> Self {
        Self {
            property: property.into(),
            instance: instance.into(),
            seed,
            residual,
            tolerance,
            // NaN residuals fail.
            passed: residual <= tolerance,
        }
    }
}

pub fn all_passed(reports: &[PropertyReport]) -> bool {
    reports.iter().all(|r| r.passed)
}

// ---------------------------------------------------------------------------
// Reference implementations
// ---------------------------------------------------------------------------

fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

fn wrap(i: i64, n: usize) -> usize {
    i.rem_euclid(n as i64) as usize
}

/// `z_k = sum_l x_l y_{k-l}`, literally.
pub fn oracle_conv_slices<T: Real>(x: &[Complex<T>], y: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    if x.len() != y.len() {
        return Err(Error::Dimension(format!(
            "oracle convolution of lengths {} and {}",
            x.len(),
            y.len()
        )));
    }
    let n = x.len();
    let mut z = vec![czero::<T>(); n];
    for k in 0..n {
        for l in 0..n {
            z[k] += x[l] * y[wrap(k as i64 - l as i64, n)];
        }
    }
    Ok(z)
}

pub fn oracle_conv<T: Real>(x: &CVector<T>, y: &CVector<T>) -> Result<CVector<T>> {
    CVector::new(oracle_conv_slices(x.as_slice(), y.as_slice())?)
}

/// Multi-index components of `offset`, last axis fastest.
fn unflatten(mut offset: usize, sizes: &[usize]) -> Vec<usize> {
    let mut out = vec![0; sizes.len()];
    for q in (0..sizes.len()).rev() {
        out[q] = offset % sizes[q];
        offset /= sizes[q];
    }
    out
}

fn flatten(idx: &[usize], sizes: &[usize]) -> usize {
    idx.iter().zip(sizes).fold(0, |acc, (&i, &n)| acc * n + i)
}

/// `z_k = sum_l x_{k-l} y_l` over the torus, literally.
pub fn oracle_nd_conv<T: Real>(x: &NdArray<T>, y: &NdArray<T>) -> Result<NdArray<T>> {
    if x.dims() != y.dims() {
        return Err(Error::Dimension("oracle convolution on different tori".into()));
    }
    let sizes = x.dims().sizes();
    let card = x.values().len();
    let mut z = vec![czero::<T>(); card];
    for (k_off, zk) in z.iter_mut().enumerate() {
        let k = unflatten(k_off, sizes);
        for l_off in 0..card {
            let l = unflatten(l_off, sizes);
            let diff: Vec<usize> = (0..sizes.len())
                .map(|q| wrap(k[q] as i64 - l[q] as i64, sizes[q]))
                .collect();
            *zk += x.values()[flatten(&diff, sizes)] * y.values()[l_off];
        }
    }
    NdArray::new(x.dims().clone(), z)
}

fn phase<T: Real>(numerator: usize, n: usize, sign: f64) -> Complex<T> {
    let angle = sign * 2.0 * std::f64::consts::PI * (numerator % n) as f64 / n as f64;
    Complex::new(T::lit(angle.cos()), T::lit(angle.sin()))
}

/// `x_hat_k = sum_l x_l exp(-i 2 pi k l / n)` with a fresh `exp` per term.
pub fn oracle_dft<T: Real>(x: &[Complex<T>]) -> Vec<Complex<T>> {
    let n = x.len();
    (0..n)
        .map(|k| {
            let mut acc = czero::<T>();
            for (l, &xl) in x.iter().enumerate() {
                acc += xl * phase::<T>(k * l, n, -1.0);
            }
            acc
        })
        .collect()
}

/// The multidimensional DFT as a single multi-index sum with a fresh `exp`
/// per axis factor.
pub fn oracle_nd_dft<T: Real>(x: &NdArray<T>) -> Vec<Complex<T>> {
    let sizes = x.dims().sizes();
    let card = x.values().len();
    (0..card)
        .map(|m_off| {
            let m = unflatten(m_off, sizes);
            let mut acc = czero::<T>();
            for (l_off, &xl) in x.values().iter().enumerate() {
                let l = unflatten(l_off, sizes);
                let mut w = Complex::new(T::one(), T::zero());
                for q in 0..sizes.len() {
                    w *= phase::<T>(m[q] * l[q], sizes[q], -1.0);
                }
                acc += xl * w;
            }
            acc
        })
        .collect()
}

/// Square matrices as row-major `Vec`s.
pub fn oracle_matmul<T: Real>(a: &[Complex<T>], b: &[Complex<T>], n: usize) -> Vec<Complex<T>> {
    let mut out = vec![czero::<T>(); n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = czero::<T>();
            for l in 0..n {
                acc += a[i * n + l] * b[l * n + j];
            }
            out[i * n + j] = acc;
        }
    }
    out
}

/// `(C_x)_ij = x_{i-j}`.
pub fn oracle_circulant<T: Real>(x: &[Complex<T>]) -> Vec<Complex<T>> {
    let n = x.len();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(x[wrap(i as i64 - j as i64, n)]);
        }
    }
    out
}

/// `(S^p)_ij = 1` iff `i - j = p (mod n)`.
pub fn oracle_shift_matrix<T: Real>(n: usize, p: i64) -> Vec<Complex<T>> {
    let mut out = vec![czero::<T>(); n * n];
    for i in 0..n {
        for j in 0..n {
            if wrap(i as i64 - j as i64 - p, n) == 0 {
                out[i * n + j] = Complex::new(T::one(), T::zero());
            }
        }
    }
    out
}

/// `(g, a, b)` with `a p + b n = g`, recursively.
pub fn oracle_extended_euclid(p: i64, n: i64) -> (i64, i64, i64) {
    if n == 0 {
        (p.abs(), p.signum(), 0)
    } else {
        let (g, a, b) = oracle_extended_euclid(n, p.rem_euclid(n));
        (g, b, a - p.div_euclid(n) * b)
    }
}

fn max_diff<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (*x - *y).norm().to_f64_lossy())
        .fold(0.0, f64::max)
}

fn max_abs<T: Real>(a: &[Complex<T>]) -> f64 {
    a.iter().map(|z| z.norm().to_f64_lossy()).fold(0.0, f64::max)
}

fn commutator<T: Real>(a: &[Complex<T>], b: &[Complex<T>], n: usize) -> f64 {
    max_diff(&oracle_matmul(a, b, n), &oracle_matmul(b, a, n))
}

/// Every vector in `{-1, 0, 1}^n`.
fn integer_grid(n: usize) -> Vec<CVector<f64>> {
    let total = 3usize.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let mut v = Vec::with_capacity(n);
            for _ in 0..n {
                v.push(Complex::new((code % 3) as f64 - 1.0, 0.0));
                code /= 3;
            }
            CVector::new(v).expect("n >= 1")
        })
        .collect()
}

fn sub_seed(seed: u64, tag: u64) -> u64 {
    seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

// ---------------------------------------------------------------------------
// Individual checks
// ---------------------------------------------------------------------------

/// `C_x w^(m) = x_hat_m w^(m)` for every `m`. Residual normalized by
/// `n max|x|`.
pub fn check_eigen_relation(sizes: &[usize], trials: usize, seed: u64) -> Vec<PropertyReport> {
    sizes
        .iter()
        .map(|&n| {
            let s = sub_seed(seed, n as u64);
            let mut rng = seeded(s);
            let pairs = shift_eigenpairs::<f64>(n).expect("n >= 1");
            let mut worst = 0.0f64;
            for _ in 0..trials {
                let x = random_cvector::<f64, _>(&mut rng, n);
                let cx = CirculantMatrix::new(x.clone());
                let lambda = eigenvalues_of_circulant(&x);
                for pair in &pairs {
                    let lhs = cx.matvec(&pair.eigenvector).expect("same size");
                    let rhs = pair.eigenvector.scale(lambda.entries()[pair.m]);
                    let r = lhs.max_abs_diff(&rhs).expect("same size");
                    worst = worst.max(r / (n as f64 * x.max_abs()));
                }
            }
            PropertyReport::new(
                "eigen_relation",
                format!("n={n} trials={trials} residual/(n*max|x|)"),
                s,
                worst,
                1e-10,
            )
        })
        .collect()
}

/// Eigenvectors of `S*` with eigenvalue `rho^m`, checked with the dense
/// shift matrix, plus agreement of `dft` with the direct definition.
pub fn check_shift_eigenvectors(sizes: &[usize], seed: u64) -> Vec<PropertyReport> {
    let mut out = Vec::new();
    for &n in sizes {
        let s_star = oracle_shift_matrix::<f64>(n, -1);
        let mut worst = 0.0f64;
        for pair in shift_eigenpairs::<f64>(n).expect("n >= 1") {
            let w = pair.eigenvector.as_slice();
            let lambda = pair.eigenvalue.value();
            for i in 0..n {
                let mut acc = Complex::new(0.0, 0.0);
                for j in 0..n {
                    acc += s_star[i * n + j] * w[j];
                }
                worst = worst.max((acc - lambda * w[i]).norm());
            }
            worst = worst.max(max_diff(
                shift(&pair.eigenvector, -1).as_slice(),
                pair.eigenvector.scale(lambda).as_slice(),
            ));
        }
        out.push(PropertyReport::new(
            "shift_eigenvectors",
            format!("n={n}"),
            seed,
            worst,
            1e-12,
        ));

        let s = sub_seed(seed, 0xD1F7 + n as u64);
        let x = random_cvector::<f64, _>(&mut seeded(s), n);
        let residual = max_diff(dft(&x).entries(), &oracle_dft(x.as_slice())) / n as f64;
        out.push(PropertyReport::new(
            "dft_matches_definition",
            format!("n={n} residual/n"),
            s,
            residual,
            1e-12,
        ));
    }
    out
}

/// `W* W = W W* = n I`, with the products formed by the reference multiply.
pub fn check_dft_gram(sizes: &[usize]) -> Vec<PropertyReport> {
    sizes
        .iter()
        .map(|&n| {
            let w = DftMatrix::<f64>::new(n).expect("n >= 1");
            let w_data = w.matrix().data();
            let adj = w.adjoint();
            let mut n_eye = vec![Complex::new(0.0, 0.0); n * n];
            for i in 0..n {
                n_eye[i * n + i] = Complex::new(n as f64, 0.0);
            }
            let left = max_diff(&oracle_matmul(adj.data(), w_data, n), &n_eye);
            let right = max_diff(&oracle_matmul(w_data, adj.data(), n), &n_eye);
            PropertyReport::new(
                "dft_matrix_gram",
                format!("n={n}"),
                0,
                left.max(right),
                1e-10 * n as f64,
            )
        })
        .collect()
}

/// `DFT(x * y) = DFT(x) . DFT(y)`; error relative to `max|rhs|`.
pub fn check_convolution_theorem(sizes: &[usize], trials: usize, seed: u64) -> Vec<PropertyReport> {
    sizes
        .iter()
        .map(|&n| {
            let s = sub_seed(seed, 0xC0 + n as u64);
            let mut rng = seeded(s);
            let mut worst = 0.0f64;
            for _ in 0..trials {
                let x = random_cvector::<f64, _>(&mut rng, n);
                let y = random_cvector::<f64, _>(&mut rng, n);
                let lhs = dft(&circular_convolve(&x, &y).expect("same size"));
                let rhs: Vec<_> = dft(&x)
                    .entries()
                    .iter()
                    .zip(dft(&y).entries())
                    .map(|(a, b)| a * b)
                    .collect();
                worst = worst.max(max_diff(lhs.entries(), &rhs) / max_abs(&rhs).max(1.0));
            }
            let nf = n as f64;
            PropertyReport::new(
                "convolution_theorem",
                format!("n={n} trials={trials} relative"),
                s,
                worst,
                1e-10 * nf * nf,
            )
        })
        .collect()
}

/// Spectral convolution (naive and, for powers of two, radix-2 plans) and
/// the direct sum against the reference convolution. Residual normalized by
/// `n^2 max|x| max|y|`.
pub fn check_spectral_vs_oracle(sizes: &[usize], trials: usize, seed: u64) -> Vec<PropertyReport> {
    let mut out = Vec::new();
    for &n in sizes {
        let mut methods = vec![Method::Naive];
        if n.is_power_of_two() {
            methods.push(Method::Radix2);
        }
        for method in methods {
            let s = sub_seed(seed, 0x5000 + n as u64 + ((method == Method::Radix2) as u64) * 0x10000);
            let mut rng = seeded(s);
            let plan = ConvolutionPlan::<f64>::new(n, method).expect("valid plan");
            let mut worst = 0.0f64;
            let mut worst_direct = 0.0f64;
            for _ in 0..trials {
                let x = random_cvector::<f64, _>(&mut rng, n);
                let y = random_cvector::<f64, _>(&mut rng, n);
                let reference = oracle_conv_slices(x.as_slice(), y.as_slice()).expect("same size");
                let scale = (n * n) as f64 * x.max_abs() * y.max_abs();
                let fast = plan.convolve(&x, &y).expect("same size");
                worst = worst.max(max_diff(fast.as_slice(), &reference) / scale);
                let direct = circular_convolve(&x, &y).expect("same size");
                worst_direct = worst_direct.max(max_diff(direct.as_slice(), &reference) / scale);
            }
            out.push(PropertyReport::new(
                "spectral_vs_oracle",
                format!("n={n} method={method:?} trials={trials} residual/(n^2*max|x|*max|y|)"),
                s,
                worst,
                1e-9,
            ));
            if method == Method::Naive {
                out.push(PropertyReport::new(
                    "direct_vs_oracle",
                    format!("n={n} trials={trials} residual/(n^2*max|x|*max|y|)"),
                    s,
                    worst_direct,
                    1e-12,
                ));
            }
        }
    }
    out
}

/// Every pair from `{-1, 0, 1}^n`: the direct sum must equal the reference
/// exactly; spectral plans must agree within tolerance.
pub fn check_integer_grid_convolution(n_max: usize) -> Vec<PropertyReport> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        let grid = integer_grid(n);
        let naive = ConvolutionPlan::<f64>::new(n, Method::Naive).expect("valid plan");
        let radix2 = n
            .is_power_of_two()
            .then(|| ConvolutionPlan::<f64>::new(n, Method::Radix2).expect("valid plan"));
        let mut exact = 0.0f64;
        let mut spectral = 0.0f64;
        for x in &grid {
            for y in &grid {
                let reference = oracle_conv_slices(x.as_slice(), y.as_slice()).expect("same size");
                exact = exact.max(max_diff(
                    circular_convolve(x, y).expect("same size").as_slice(),
                    &reference,
                ));
                spectral = spectral.max(max_diff(naive.convolve(x, y).expect("same size").as_slice(), &reference));
                if let Some(plan) = &radix2 {
                    spectral = spectral.max(max_diff(plan.convolve(x, y).expect("same size").as_slice(), &reference));
                }
            }
        }
        out.push(PropertyReport::new(
            "integer_grid_direct_exact",
            format!("n={n} pairs={}", grid.len() * grid.len()),
            0,
            exact,
            0.0,
        ));
        out.push(PropertyReport::new(
            "integer_grid_spectral",
            format!("n={n} pairs={}", grid.len() * grid.len()),
            0,
            spectral,
            1e-9 * (n * n) as f64,
        ));
    }
    out
}

/// `|C_x - (1/n) W diag(x_hat) W*|_max` and the eigen residual, normalized
/// by `n max|x|`.
pub fn check_diagonalization(sizes: &[usize], seed: u64) -> Vec<PropertyReport> {
    sizes
        .iter()
        .map(|&n| {
            let s = sub_seed(seed, 0xD1A6 + n as u64);
            let x = random_cvector::<f64, _>(&mut seeded(s), n);
            let report = diagonalization_residual(&x);
            let residual = report.residual_eigen.max(report.residual_factor) / (n as f64 * x.max_abs());
            PropertyReport::new(
                "diagonalization",
                format!("n={n} residual/(n*max|x|)"),
                s,
                residual,
                1e-9,
            )
        })
        .collect()
}

/// `mu_k = x_hat_{(n - k) mod n}`, absolute per entry.
pub fn check_alternate_order(sizes: &[usize], trials: usize, seed: u64) -> Vec<PropertyReport> {
    sizes
        .iter()
        .map(|&n| {
            let s = sub_seed(seed, 0xA17 + n as u64);
            let mut rng = seeded(s);
            let mut worst = 0.0f64;
            for _ in 0..trials {
                let x = random_cvector::<f64, _>(&mut rng, n);
                let alt = alternate_transform(&x);
                let std = dft(&x);
                for k in 0..n {
                    worst = worst.max((alt.entries()[k] - std.entries()[(n - k) % n]).norm());
                }
            }
            PropertyReport::new(
                "alternate_reorder",
                format!("n={n} trials={trials}"),
                s,
                worst,
                1e-12,
            )
        })
        .collect()
}

/// Norm preservation of the unitary DFT and the `sqrt(n)` eigenvalue scaling.
pub fn check_unitary(sizes: &[usize], trials: usize, seed: u64) -> Vec<PropertyReport> {
    let mut out = Vec::new();
    for &n in sizes {
        let s = sub_seed(seed, 0x0417 + n as u64);
        let mut rng = seeded(s);
        let mut norm_dev = 0.0f64;
        let mut scaling = 0.0f64;
        let mut round_trip = 0.0f64;
        let root_n = (n as f64).sqrt();
        for _ in 0..trials {
            let x = random_cvector::<f64, _>(&mut rng, n);
            let u = dft_unitary(&x);
            let norm = u.entries().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            norm_dev = norm_dev.max((norm / x.norm2() - 1.0).abs());
            let eig = eigenvalues_of_circulant(&x);
            let scaled: Vec<_> = u.entries().iter().map(|z| z * root_n).collect();
            scaling = scaling.max(max_diff(eig.entries(), &scaled) / max_abs(eig.entries()).max(1.0));
            round_trip = round_trip.max(idft_unitary(&u).max_abs_diff(&x).expect("same size"));
        }
        out.push(PropertyReport::new(
            "unitary_norm",
            format!("n={n} trials={trials} |ratio-1|"),
            s,
            norm_dev,
            1e-10,
        ));
        out.push(PropertyReport::new(
            "unitary_eigen_scaling",
            format!("n={n} trials={trials} relative"),
            s,
            scaling,
            1e-9 * n as f64,
        ));
        out.push(PropertyReport::new(
            "unitary_round_trip",
            format!("n={n} trials={trials}"),
            s,
            round_trip,
            1e-11 * n as f64,
        ));
    }
    out
}

/// The three faces of the algebra isomorphism for one pair:
/// `C_{x*y} = C_x C_y`, `hat(x*y) = x_hat . y_hat`, and the eigenvalues of
/// `C_x` being `x_hat`, which is also the z-transform at the roots of unity.
/// Residuals are relative to `max(1, magnitude)` of the reference side.
pub fn verify_theorem1(x: &CVector<f64>, y: &CVector<f64>, tol: f64) -> Result<Vec<PropertyReport>> {
    if x.len() != y.len() {
        return Err(Error::Dimension(format!(
            "theorem check on lengths {} and {}",
            x.len(),
            y.len()
        )));
    }
    let n = x.len();
    let instance = format!("n={n}");

    let product = CirculantMatrix::new(x.clone())
        .matmul(&CirculantMatrix::new(y.clone()))?
        .to_dense();
    let dense = oracle_matmul(&oracle_circulant(x.as_slice()), &oracle_circulant(y.as_slice()), n);
    let algebra = max_diff(product.data(), &dense) / max_abs(&dense).max(1.0);

    let lhs = dft(&circular_convolve(x, y)?);
    let rhs: Vec<_> = oracle_dft(x.as_slice())
        .iter()
        .zip(oracle_dft(y.as_slice()))
        .map(|(a, b)| a * b)
        .collect();
    let spectral = max_diff(lhs.entries(), &rhs) / max_abs(&rhs).max(1.0);

    let x_hat = oracle_dft(x.as_slice());
    let cx = oracle_circulant(x.as_slice());
    let eig = eigenvalues_of_circulant(x);
    let mut eigen = max_diff(eig.entries(), &x_hat);
    for m in 0..n {
        let w: Vec<Complex<f64>> = (0..n).map(|l| phase::<f64>(m * l, n, 1.0)).collect();
        for i in 0..n {
            let mut acc = Complex::new(0.0, 0.0);
            for j in 0..n {
                acc += cx[i * n + j] * w[j];
            }
            eigen = eigen.max((acc - x_hat[m] * w[i]).norm());
        }
        let z = phase::<f64>(m, n, 1.0);
        eigen = eigen.max((z_transform_eval(x, z)? - x_hat[m]).norm());
    }
    let eigen = eigen / max_abs(&x_hat).max(1.0);

    Ok(vec![
        PropertyReport::new("theorem1_circulant_product", instance.clone(), 0, algebra, tol),
        PropertyReport::new("theorem1_convolution_spectrum", instance.clone(), 0, spectral, tol),
        PropertyReport::new("theorem1_eigenvalues_z_transform", instance, 0, eigen, tol),
    ])
}

/// Circulants commute with `S` (and `S*`); matrices that commute with `S`
/// are exactly the circulants, detected through [`is_circulant`].
pub fn check_shift_commutation(sizes: &[usize], trials: usize, seed: u64) -> Vec<PropertyReport> {
    let mut out = Vec::new();
    for &n in sizes {
        let s = sub_seed(seed, 0x1E44 + n as u64);
        let mut rng = seeded(s);
        let s_mat = oracle_shift_matrix::<f64>(n, 1);
        let s_star = oracle_shift_matrix::<f64>(n, -1);
        let mut commute = 0.0f64;
        let mut mismatch = 0.0f64;
        for _ in 0..trials {
            let x = random_cvector::<f64, _>(&mut rng, n);
            let c = oracle_circulant(x.as_slice());
            commute = commute.max(commutator(&s_mat, &c, n)).max(commutator(&s_star, &c, n));
            let dense = DenseMatrix::new(n, n, c.clone()).expect("square");
            let fast = shift_commutator_norm(&dense, 1).expect("square");
            mismatch = mismatch.max((fast - commutator(&s_mat, &c, n)).abs());
        }
        out.push(PropertyReport::new(
            "circulants_commute_with_shifts",
            format!("n={n} trials={trials}"),
            s,
            commute,
            1e-12,
        ));
        out.push(PropertyReport::new(
            "commutator_matches_dense",
            format!("n={n} trials={trials}"),
            s,
            mismatch,
            1e-12,
        ));
    }
    out
}

/// Detection of circulant structure: random circulants accepted with their
/// first column recovered, single-entry perturbations rejected, and the `S`
/// and `S*` tests agreeing. Residual counts misclassifications.
pub fn check_detection(trials: usize, n_max: usize, tol: f64, seed: u64) -> Vec<PropertyReport> {
    let mut rng = seeded(seed);
    let n_max = n_max.max(2);
    let mut false_rejects = 0usize;
    let mut false_accepts = 0usize;
    let mut disagreements = 0usize;
    for trial in 0..trials {
        let n = 2 + trial % (n_max - 1);
        let x = random_cvector::<f64, _>(&mut rng, n);
        let mut m = DenseMatrix::new(n, n, oracle_circulant(x.as_slice())).expect("square");
        let check = is_circulant(&m, tol).expect("square");
        let recovered_ok = check
            .recovered
            .as_ref()
            .is_some_and(|r| r.max_abs_diff(&x).expect("same size") <= tol);
        if !check.is_circulant || !recovered_ok {
            false_rejects += 1;
        }
        let i = (trial * 5) % n;
        let j = (trial * 3 + 1) % n;
        m.set(i, j, m.get(i, j) + Complex::new(1.0, 0.0));
        let check = is_circulant(&m, tol).expect("square");
        if check.is_circulant {
            false_accepts += 1;
        }
        let star = shift_commutator_norm(&m, -1).expect("square") <= tol;
        if star != check.is_circulant {
            disagreements += 1;
        }
    }
    vec![
        PropertyReport::new("detect_accepts_circulants", format!("trials={trials} tol={tol:e}"), seed, false_rejects as f64, 0.0),
        PropertyReport::new("detect_rejects_perturbations", format!("trials={trials} tol={tol:e}"), seed, false_accepts as f64, 0.0),
        PropertyReport::new("detect_s_and_s_star_agree", format!("trials={trials}"), seed, disagreements as f64, 0.0),
    ]
}

/// Bezout certificates for every `(p, n)` with `1 <= n <= n_max`,
/// `0 <= p < n`. Coprime pairs must certify `S^(a p) = S` and circulants
/// must commute with `S^p`; other pairs must fail with the right gcd, and
/// the witness `diag(i = 0 mod gcd)` must commute with `S^p` without being
/// circulant.
pub fn check_bezout(n_max: usize, seed: u64) -> Vec<PropertyReport> {
    let mut rng = seeded(seed);
    let mut failures = 0usize;
    let mut witnesses = 0usize;
    let mut pairs = 0usize;
    for n in 1..=n_max {
        let s = oracle_shift_matrix::<f64>(n, 1);
        for p in 0..n as i64 {
            pairs += 1;
            let (g, _, _) = oracle_extended_euclid(p, n as i64);
            let sp = oracle_shift_matrix::<f64>(n, p);
            match bezout_shift_certificate(p, n as i64) {
                Ok(cert) => {
                    let a_expected = {
                        let (_, a, _) = oracle_extended_euclid(p, n as i64);
                        a.rem_euclid(n as i64)
                    };
                    let mut ok = g == 1 && cert.holds() && cert.a == a_expected;
                    // (S^p)^a by repeated dense products
                    let mut power = oracle_shift_matrix::<f64>(n, 0);
                    for _ in 0..cert.a {
                        power = oracle_matmul(&power, &sp, n);
                    }
                    ok &= max_diff(&power, &s) == 0.0;
                    let x = random_cvector::<f64, _>(&mut rng, n);
                    let c = oracle_circulant(x.as_slice());
                    ok &= commutator(&sp, &c, n) <= 1e-12;
                    if !ok {
                        failures += 1;
                    }
                }
                Err(Error::NotCoprime { gcd, .. }) => {
                    if g == 1 || gcd != g {
                        failures += 1;
                        continue;
                    }
                    let witness: Vec<Complex<f64>> = (0..n * n)
                        .map(|k| {
                            let (i, j) = (k / n, k % n);
                            let on = i == j && i as i64 % g == 0;
                            Complex::new(if on { 1.0 } else { 0.0 }, 0.0)
                        })
                        .collect();
                    let commutes = commutator(&sp, &witness, n) == 0.0;
                    let dense = DenseMatrix::new(n, n, witness).expect("square");
                    let circulant = is_circulant(&dense, 1e-8).expect("square").is_circulant;
                    if commutes && !circulant {
                        witnesses += 1;
                    } else {
                        failures += 1;
                    }
                }
                Err(_) => failures += 1,
            }
        }
    }
    vec![PropertyReport::new(
        "bezout_certificates",
        format!("n<={n_max} pairs={pairs} non_coprime_witnesses={witnesses}"),
        seed,
        failures as f64,
        0.0,
    )]
}

/// Commutativity and associativity of circular convolution: exact over
/// `{-1, 0, 1}^n` for `n <= exhaustive_max`, relative on random inputs for
/// the given sizes.
pub fn check_convolution_laws(
    exhaustive_max: usize,
    random_sizes: &[usize],
    trials: usize,
    seed: u64,
) -> Vec<PropertyReport> {
    let mut out = Vec::new();
    for n in 1..=exhaustive_max {
        let grid = integer_grid(n);
        let mut comm = 0.0f64;
        let mut assoc = 0.0f64;
        let products: Vec<Vec<CVector<f64>>> = grid
            .iter()
            .map(|x| grid.iter().map(|y| circular_convolve(x, y).expect("same size")).collect())
            .collect();
        for (a, x) in grid.iter().enumerate() {
            for b in 0..grid.len() {
                comm = comm.max(max_diff(products[a][b].as_slice(), products[b][a].as_slice()));
                for (c, z) in grid.iter().enumerate() {
                    let left = circular_convolve(&products[a][b], z).expect("same size");
                    let right = circular_convolve(x, &products[b][c]).expect("same size");
                    assoc = assoc.max(max_diff(left.as_slice(), right.as_slice()));
                }
            }
        }
        out.push(PropertyReport::new("convolution_commutative_exact", format!("n={n} grid"), 0, comm, 0.0));
        out.push(PropertyReport::new("convolution_associative_exact", format!("n={n} grid"), 0, assoc, 0.0));
    }
    for &n in random_sizes {
        let s = sub_seed(seed, 0xE3 + n as u64);
        let mut rng = seeded(s);
        let mut comm = 0.0f64;
        let mut assoc = 0.0f64;
        for _ in 0..trials {
            let x = random_cvector::<f64, _>(&mut rng, n);
            let y = random_cvector::<f64, _>(&mut rng, n);
            let z = random_cvector::<f64, _>(&mut rng, n);
            let xy = circular_convolve(&x, &y).expect("same size");
            let yx = circular_convolve(&y, &x).expect("same size");
            comm = comm.max(max_diff(xy.as_slice(), yx.as_slice()) / xy.max_abs().max(1.0));
            let left = circular_convolve(&xy, &z).expect("same size");
            let right = circular_convolve(&x, &circular_convolve(&y, &z).expect("same size")).expect("same size");
            assoc = assoc.max(max_diff(left.as_slice(), right.as_slice()) / left.max_abs().max(1.0));
        }
        out.push(PropertyReport::new("convolution_commutative", format!("n={n} trials={trials} relative"), s, comm, 1e-10));
        out.push(PropertyReport::new("convolution_associative", format!("n={n} trials={trials} relative"), s, assoc, 1e-10));
    }
    out
}

/// Parameters of the exercise suite.
#[derive(Debug, Clone)]
pub struct ExerciseConfig {
    pub detection_trials: usize,
    pub detection_n_max: usize,
    pub detection_tol: f64,
    pub coprime_n_max: usize,
    pub exhaustive_n_max: usize,
    pub random_sizes: Vec<usize>,
    pub random_trials: usize,
}

impl ExerciseConfig {
    pub fn for_n_max(n_max: usize) -> Self {
        let n_max = n_max.max(2);
        let mut random_sizes: Vec<usize> = [5, 8, 16, 31, 64, 100, 256]
            .into_iter()
            .filter(|&n| n <= n_max)
            .collect();
        if !random_sizes.contains(&n_max) && n_max > 4 {
            random_sizes.push(n_max);
        }
        Self {
            detection_trials: 100,
            detection_n_max: n_max.min(32),
            detection_tol: 1e-8,
            coprime_n_max: n_max.min(64),
            exhaustive_n_max: n_max.min(4),
            random_sizes,
            random_trials: 10,
        }
    }
}

pub fn verify_exercises(n_max: usize, seed: u64) -> Result<Vec<PropertyReport>> {
    if n_max < 2 {
        return Err(Error::Domain(format!("exercise suite needs n_max >= 2, got {n_max}")));
    }
    Ok(verify_exercises_with(&ExerciseConfig::for_n_max(n_max), seed))
}

pub fn verify_exercises_with(config: &ExerciseConfig, seed: u64) -> Vec<PropertyReport> {
    let mut out = check_detection(
        config.detection_trials,
        config.detection_n_max,
        config.detection_tol,
        sub_seed(seed, 1),
    );
    out.extend(check_bezout(config.coprime_n_max, sub_seed(seed, 2)));
    out.extend(check_convolution_laws(
        config.exhaustive_n_max,
        &config.random_sizes,
        config.random_trials,
        sub_seed(seed, 3),
    ));
    out
}

/// Multidimensional checks on one torus: the two nd DFT routes against each
/// other (every axis order) and against the reference sum, the convolution
/// theorem, the eigen-relation of every common eigenvector, the inverse,
/// the z-transform at roots of unity, and the direct convolution against
/// the reference convolution.
pub fn check_nd(dims: &TorusDims, seed: u64) -> Vec<PropertyReport> {
    let card = dims.cardinality();
    let cf = card as f64;
    let instance = format!("dims={:?}", dims.sizes());
    let mut rng = seeded(seed);
    let x = random_nd_array::<f64, _>(&mut rng, dims);
    let y = random_nd_array::<f64, _>(&mut rng, dims);
    let mut out = Vec::new();

    let direct = nd_dft_direct(&x);
    let mut separable = 0.0f64;
    let d = dims.ndim();
    let mut orders: Vec<Vec<usize>> = vec![(0..d).collect(), (0..d).rev().collect()];
    if d > 2 {
        orders.push((1..d).chain([0]).collect());
    }
    for order in &orders {
        let axis = nd_dft_axis_order(&x, order).expect("valid order");
        separable = separable.max(axis.max_abs_diff(&direct).expect("same dims"));
    }
    out.push(PropertyReport::new("nd_dft_separable", instance.clone(), seed, separable / x.max_abs().max(1.0), 1e-9 * cf));
    let oracle = oracle_nd_dft(&x);
    out.push(PropertyReport::new(
        "nd_dft_matches_definition",
        instance.clone(),
        seed,
        max_diff(direct.values(), &oracle) / x.max_abs().max(1.0),
        1e-9 * cf,
    ));

    let xy = nd_convolve(&x, &y).expect("same dims");
    let lhs = nd_dft(&xy).expect("valid dims");
    let rhs = nd_dft(&x).expect("valid dims").hadamard(&nd_dft(&y).expect("valid dims")).expect("same dims");
    out.push(PropertyReport::new(
        "nd_convolution_theorem",
        format!("{instance} relative"),
        seed,
        lhs.max_abs_diff(&rhs).expect("same dims") / rhs.max_abs().max(1.0),
        1e-9 * cf,
    ));

    let reference = oracle_nd_conv(&x, &y).expect("same dims");
    out.push(PropertyReport::new(
        "nd_convolve_vs_oracle",
        instance.clone(),
        seed,
        xy.max_abs_diff(&reference).expect("same dims") / (cf * x.max_abs() * y.max_abs()),
        1e-12,
    ));

    let op = NdCirculantOp::new(x.clone());
    let eigenvalues = op.eigenvalues().expect("valid dims");
    let mut eigen = 0.0f64;
    for m in dims.indices() {
        let w = nd_eigenvector::<f64>(dims, &m).expect("m on torus");
        let lhs = op.apply(&w.array).expect("same dims");
        let rhs = w.array.scale(eigenvalues.get(&m).expect("m on torus"));
        eigen = eigen.max(lhs.max_abs_diff(&rhs).expect("same dims"));
    }
    out.push(PropertyReport::new(
        "nd_eigen_relation",
        format!("{instance} residual/max|x|"),
        seed,
        eigen / x.max_abs(),
        1e-9 * cf,
    ));

    let back = nd_idft(&nd_dft(&x).expect("valid dims")).expect("valid dims");
    out.push(PropertyReport::new(
        "nd_round_trip",
        format!("{instance} relative"),
        seed,
        back.max_abs_diff(&x).expect("same dims") / x.max_abs(),
        1e-11 * cf,
    ));

    let mut zt = 0.0f64;
    for m in dims.indices() {
        let z: Vec<Complex<f64>> = m
            .components()
            .iter()
            .zip(dims.sizes())
            .map(|(&mq, &n)| phase::<f64>(mq, n, 1.0))
            .collect();
        let value = nd_z_transform_eval(&x, &z).expect("nonzero z");
        zt = zt.max((value - direct.get(&m).expect("m on torus")).norm());
    }
    out.push(PropertyReport::new(
        "nd_z_transform_at_roots",
        format!("{instance} relative"),
        seed,
        zt / direct.max_abs().max(1.0),
        1e-10 * cf,
    ));
    out
}

/// Which group of properties to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    /// Circulant iff commutes with the shift.
    Lemma1,
    /// Shift eigenpairs, the DFT matrix, eigenvalues of circulants.
    Lemma2,
    /// Circulant / convolution / pointwise-product isomorphism.
    Theorem1,
    /// Multidimensional operators and the nd DFT.
    Theorem2,
    Exercises,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lemma1" => Ok(Suite::Lemma1),
            "lemma2" => Ok(Suite::Lemma2),
            "theorem1" => Ok(Suite::Theorem1),
            "theorem2" => Ok(Suite::Theorem2),
            "exercises" => Ok(Suite::Exercises),
            "all" => Ok(Suite::All),
            other => Err(Error::Domain(format!("unknown suite {other:?}"))),
        }
    }
}

fn sizes_up_to(candidates: &[usize], n_max: usize) -> Vec<usize> {
    candidates.iter().copied().filter(|&n| n <= n_max).collect()
}

/// Runs a suite with sizes capped at `n_max`. Reports are sorted by
/// property, then instance.
pub fn run_suite(suite: Suite, n_max: usize, seed: u64) -> Result<Vec<PropertyReport>> {
    if n_max < 2 {
        return Err(Error::Domain(format!("suites need n_max >= 2, got {n_max}")));
    }
    let mut out = Vec::new();
    let run = |s: Suite| s == suite || suite == Suite::All;
    if run(Suite::Lemma1) {
        let sizes = sizes_up_to(&[1, 2, 3, 4, 5, 8, 16, 32], n_max);
        out.extend(check_shift_commutation(&sizes, 5, sub_seed(seed, 10)));
        out.extend(check_detection(100, n_max.min(32), 1e-8, sub_seed(seed, 11)));
    }
    if run(Suite::Lemma2) {
        let eig = sizes_up_to(&[1, 2, 3, 4, 8, 16, 64, 128], n_max);
        out.extend(check_eigen_relation(&eig, 50, sub_seed(seed, 20)));
        out.extend(check_shift_eigenvectors(&sizes_up_to(&[1, 2, 3, 4, 7, 16, 32], n_max), sub_seed(seed, 21)));
        let upto: Vec<usize> = (1..=n_max.min(256)).collect();
        out.extend(check_dft_gram(&sizes_up_to(&[1, 2, 3, 5, 8, 16, 31, 64, 100, 128, 256], n_max)));
        out.extend(check_alternate_order(&upto, 2, sub_seed(seed, 22)));
        out.extend(check_diagonalization(&(1..=n_max.min(128)).collect::<Vec<_>>(), sub_seed(seed, 23)));
        out.extend(check_unitary(&sizes_up_to(&[1, 2, 3, 8, 17, 64, 256, 1024], n_max), 10, sub_seed(seed, 24)));
    }
    if run(Suite::Theorem1) {
        let mut rng = seeded(sub_seed(seed, 30));
        for n in sizes_up_to(&[1, 2, 3, 5, 8, 16, 32, 64], n_max) {
            let x = random_cvector::<f64, _>(&mut rng, n);
            let y = random_cvector::<f64, _>(&mut rng, n);
            out.extend(verify_theorem1(&x, &y, 1e-9 * (n * n) as f64)?);
        }
        out.extend(check_convolution_theorem(&sizes_up_to(&[3, 16, 100, 1024], n_max), 20, sub_seed(seed, 31)));
        out.extend(check_spectral_vs_oracle(&sizes_up_to(&[1, 2, 3, 4, 7, 8, 16, 33, 64, 100, 256, 1024], n_max), 10, sub_seed(seed, 32)));
        out.extend(check_integer_grid_convolution(n_max.min(4)));
    }
    if run(Suite::Theorem2) {
        for (i, sizes) in [vec![4, 4], vec![7, 5], vec![8, 8, 8], vec![2, 3, 4, 5]].into_iter().enumerate() {
            if sizes.iter().all(|&n| n <= n_max) {
                let dims = TorusDims::new(sizes)?;
                out.extend(check_nd(&dims, sub_seed(seed, 40 + i as u64)));
            }
        }
        out.extend(check_nd(&TorusDims::new(vec![n_max.min(6), 2])?, sub_seed(seed, 49)));
    }
    if run(Suite::Exercises) {
        out.extend(verify_exercises(n_max, sub_seed(seed, 50))?);
    }
    out.sort_by(|a, b| (&a.property, &a.instance).cmp(&(&b.property, &b.instance)));
    Ok(out)
}
