//! Wall-clock comparison of direct and spectral circular convolution.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::circulant::{circular_convolve, CVector};
use crate::error::Result;
use crate::random::{random_cvector, seeded};
use crate::scalar::Real;
use crate::spectral::ConvolutionPlan;

/// How a circular convolution is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConvolutionMethod {
    /// The `O(n^2)` defining sum.
    Naive,
    /// Forward transform, pointwise product, inverse transform; radix-2 for
    /// power-of-two sizes.
    Spectral,
}

impl ConvolutionMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConvolutionMethod::Naive => "naive",
            ConvolutionMethod::Spectral => "spectral",
        }
    }

    pub fn convolve<T: Real>(&self, x: &CVector<T>, y: &CVector<T>) -> Result<CVector<T>> {
        match self {
            ConvolutionMethod::Naive => circular_convolve(x, y),
            ConvolutionMethod::Spectral => ConvolutionPlan::auto(x.len())?.convolve(x, y),
        }
    }
}

impl std::str::FromStr for ConvolutionMethod {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(ConvolutionMethod::Naive),
            "spectral" => Ok(ConvolutionMethod::Spectral),
            other => Err(crate::error::Error::Domain(format!("unknown method {other:?}"))),
        }
    }
}

pub const DEFAULT_SIZES: [usize; 3] = [256, 1024, 4096];
pub const DEFAULT_RUNS: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub n: usize,
    pub method: ConvolutionMethod,
    pub runs: usize,
    pub median_seconds: f64,
    /// `max |naive - spectral|` on the benchmark input.
    pub residual: f64,
}

fn median(mut samples: Vec<f64>) -> f64 {
    samples.sort_by(f64::total_cmp);
    let mid = samples.len() / 2;
    if samples.len() % 2 == 1 {
        samples[mid]
    } else {
        0.5 * (samples[mid - 1] + samples[mid])
    }
}

/// Median wall-clock of `runs` convolutions per size and method. Spectral
/// timings reuse one plan per size, so plan construction is not timed.
pub fn bench_convolution(
    sizes: &[usize],
    methods: &[ConvolutionMethod],
    runs: usize,
    seed: u64,
) -> Result<Vec<BenchRecord>> {
    let runs = runs.max(1);
    let mut out = Vec::new();
    for &n in sizes {
        let mut rng = seeded(seed ^ n as u64);
        let x = random_cvector::<f64, _>(&mut rng, n);
        let y = random_cvector::<f64, _>(&mut rng, n);
        let plan = ConvolutionPlan::<f64>::auto(n)?;
        let residual = circular_convolve(&x, &y)?.max_abs_diff(&plan.convolve(&x, &y)?)?;
        for &method in methods {
            let mut samples = Vec::with_capacity(runs);
            for _ in 0..runs {
                let start = Instant::now();
                let z = match method {
                    ConvolutionMethod::Naive => circular_convolve(&x, &y)?,
                    ConvolutionMethod::Spectral => plan.convolve(&x, &y)?,
                };
                samples.push(start.elapsed().as_secs_f64());
                std::hint::black_box(z);
            }
            out.push(BenchRecord {
                n,
                method,
                runs,
                median_seconds: median(samples),
                residual,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_of_odd_and_even() {
        assert_eq!(median(vec![3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(vec![4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn bench_reports_every_size_and_method() {
        let methods = [ConvolutionMethod::Naive, ConvolutionMethod::Spectral];
        let records = bench_convolution(&[8, 12], &methods, 3, 1).unwrap();
        assert_eq!(records.len(), 4);
        for r in &records {
            assert_eq!(r.runs, 3);
            assert!(r.median_seconds >= 0.0);
            assert!(r.residual <= 1e-9 * (r.n * r.n) as f64);
        }
    }

    #[test]
    fn methods_agree() {
        let mut rng = seeded(3);
        let x = random_cvector::<f64, _>(&mut rng, 24);
        let y = random_cvector::<f64, _>(&mut rng, 24);
        let a = ConvolutionMethod::Naive.convolve(&x, &y).unwrap();
        let b = ConvolutionMethod::Spectral.convolve(&x, &y).unwrap();
        assert!(a.max_abs_diff(&b).unwrap() < 1e-12);
        assert_eq!("spectral".parse::<ConvolutionMethod>().unwrap(), ConvolutionMethod::Spectral);
        assert!("fast".parse::<ConvolutionMethod>().is_err());
    }
}
