use std::path::Path;

use circulant::bench::{bench_convolution, ConvolutionMethod};
use circulant::nd::{nd_convolve, nd_z_transform_eval, NdCirculantOp};
use circulant::oracle::{all_passed, run_suite, PropertyReport, Suite};
use circulant::{
    alternate_transform, idft_unitary, is_circulant as detect, z_transform_eval,
    CirculantMatrix, Complex, Spectrum, SpectrumOrdering,
};
use serde::Serialize;

use crate::document::{to_json, ArrayDocument};
use crate::error::CliError;

/// A command's result document, plus a failure to report after it has been
/// written.
pub struct Output {
    pub body: String,
    pub failure: Option<CliError>,
}

impl Output {
    fn ok<S: Serialize>(value: &S) -> Result<Self, CliError> {
        Ok(Self {
            body: to_json(value),
            failure: None,
        })
    }
}

pub fn emit(body: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, format!("{body}\n"))
            .map_err(|e| CliError::Usage(format!("writing {}: {e}", path.display()))),
        None => {
            println!("{body}");
            Ok(())
        }
    }
}

fn label(op: &str, doc: &ArrayDocument) -> String {
    match &doc.name {
        Some(name) => format!("{op}({name})"),
        None => op.to_string(),
    }
}

fn spectrum_document(s: &Spectrum<f64>, name: String) -> ArrayDocument {
    ArrayDocument::from_values(vec![s.len()], s.entries())
        .named(name)
        .with_ordering(s.ordering())
}

fn spectrum_from(doc: &ArrayDocument) -> Result<Spectrum<f64>, CliError> {
    let x = doc.to_vector()?;
    Ok(Spectrum::new(
        x.into_inner(),
        doc.ordering.unwrap_or(SpectrumOrdering::Standard),
    )?)
}

pub fn dft(input: &Path) -> Result<Output, CliError> {
    let doc = ArrayDocument::read(input)?;
    let x = doc.to_vector()?;
    Output::ok(&spectrum_document(&circulant::dft(&x), label("dft", &doc)))
}

pub fn idft(input: &Path) -> Result<Output, CliError> {
    let doc = ArrayDocument::read(input)?;
    let y = circulant::idft(&spectrum_from(&doc)?);
    Output::ok(&ArrayDocument::from_vector(&y).named(label("idft", &doc)))
}

pub fn dft_unitary(input: &Path, inverse: bool) -> Result<Output, CliError> {
    let doc = ArrayDocument::read(input)?;
    if inverse {
        let y = idft_unitary(&spectrum_from(&doc)?);
        Output::ok(&ArrayDocument::from_vector(&y).named(label("idft_unitary", &doc)))
    } else {
        let x = doc.to_vector()?;
        Output::ok(&spectrum_document(&circulant::dft_unitary(&x), label("dft_unitary", &doc)))
    }
}

pub fn conv(a: &Path, b: &Path, method: ConvolutionMethod) -> Result<Output, CliError> {
    let (da, db) = (ArrayDocument::read(a)?, ArrayDocument::read(b)?);
    let z = method.convolve(&da.to_vector()?, &db.to_vector()?)?;
    let name = format!(
        "conv({}, {})",
        da.name.as_deref().unwrap_or("a"),
        db.name.as_deref().unwrap_or("b")
    );
    Output::ok(&ArrayDocument::from_vector(&z).named(name))
}

pub fn eig(input: &Path, ordering: SpectrumOrdering) -> Result<Output, CliError> {
    let doc = ArrayDocument::read(input)?;
    let x = doc.to_vector()?;
    let spectrum = match ordering {
        SpectrumOrdering::Standard => circulant::eigenvalues_of_circulant(&x),
        SpectrumOrdering::Alternate => alternate_transform(&x),
    };
    Output::ok(&spectrum_document(&spectrum, label("eig", &doc)))
}

pub fn circmat(input: &Path) -> Result<Output, CliError> {
    let doc = ArrayDocument::read(input)?;
    let c = CirculantMatrix::new(doc.to_vector()?);
    let dense = c.to_dense();
    Output::ok(&ArrayDocument::from_values(vec![c.size(), c.size()], dense.data()).named(label("circmat", &doc)))
}

#[derive(Serialize)]
struct CirculantReport {
    is_circulant: bool,
    commutator_norm: f64,
    tol: f64,
    recovered: Option<ArrayDocument>,
}

pub fn is_circulant(input: &Path, tol: f64) -> Result<Output, CliError> {
    if tol.is_nan() || tol < 0.0 {
        return Err(CliError::Usage(format!("--tol must be nonnegative, got {tol}")));
    }
    let doc = ArrayDocument::read(input)?;
    let check = detect(&doc.to_square()?, tol)?;
    Output::ok(&CirculantReport {
        is_circulant: check.is_circulant,
        commutator_norm: check.commutator_norm,
        tol,
        recovered: check.recovered.as_ref().map(ArrayDocument::from_vector),
    })
}

fn parse_point(raw: &str) -> Result<Complex<f64>, CliError> {
    let bad = || CliError::Usage(format!("--z expects re,im, got {raw:?}"));
    let (re, im) = raw.split_once(',').ok_or_else(bad)?;
    let re: f64 = re.trim().parse().map_err(|_| bad())?;
    let im: f64 = im.trim().parse().map_err(|_| bad())?;
    if !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(Complex::new(re, im))
}

#[derive(Serialize)]
struct PointValue {
    z: Vec<[f64; 2]>,
    value: [f64; 2],
}

pub fn zt_eval(input: &Path, z: &[String]) -> Result<Output, CliError> {
    let doc = ArrayDocument::read(input)?;
    let points = z.iter().map(|s| parse_point(s)).collect::<Result<Vec<_>, _>>()?;
    if points.len() != doc.dims.len() {
        return Err(CliError::Usage(format!(
            "{} --z points given for a {}-dimensional array",
            points.len(),
            doc.dims.len()
        )));
    }
    let value = if doc.dims.len() == 1 {
        z_transform_eval(&doc.to_vector()?, points[0])?
    } else {
        nd_z_transform_eval(&doc.to_array()?, &points)?
    };
    Output::ok(&PointValue {
        z: points.iter().map(|p| [p.re, p.im]).collect(),
        value: [value.re, value.im],
    })
}

pub fn nd_dft(input: &Path) -> Result<Output, CliError> {
    let doc = ArrayDocument::read(input)?;
    let spectrum = circulant::nd::nd_dft(&doc.to_array()?)?;
    Output::ok(
        &ArrayDocument::from_array(&spectrum)
            .named(label("nd_dft", &doc))
            .with_ordering(SpectrumOrdering::Standard),
    )
}

pub fn nd_idft(input: &Path) -> Result<Output, CliError> {
    let doc = ArrayDocument::read(input)?;
    if doc.ordering == Some(SpectrumOrdering::Alternate) {
        return Err(CliError::Usage("nd-idft expects a spectrum in standard order".into()));
    }
    let x = circulant::nd::nd_idft(&doc.to_array()?)?;
    Output::ok(&ArrayDocument::from_array(&x).named(label("nd_idft", &doc)))
}

pub fn nd_conv(a: &Path, b: &Path) -> Result<Output, CliError> {
    let (da, db) = (ArrayDocument::read(a)?, ArrayDocument::read(b)?);
    let z = nd_convolve(&da.to_array()?, &db.to_array()?)?;
    let name = format!(
        "nd_conv({}, {})",
        da.name.as_deref().unwrap_or("a"),
        db.name.as_deref().unwrap_or("b")
    );
    Output::ok(&ArrayDocument::from_array(&z).named(name))
}

pub fn nd_eig(input: &Path) -> Result<Output, CliError> {
    let doc = ArrayDocument::read(input)?;
    let op = NdCirculantOp::new(doc.to_array()?);
    Output::ok(
        &ArrayDocument::from_array(&op.eigenvalues()?)
            .named(label("nd_eig", &doc))
            .with_ordering(SpectrumOrdering::Standard),
    )
}

#[derive(Serialize)]
struct VerifyDocument<'a> {
    suite: String,
    n_max: usize,
    seed: u64,
    passed: bool,
    failures: usize,
    reports: &'a [PropertyReport],
}

pub fn verify(suite: Suite, n_max: usize, seed: u64) -> Result<Output, CliError> {
    let reports = run_suite(suite, n_max, seed)?;
    let failures = reports.iter().filter(|r| !r.passed).count();
    let passed = all_passed(&reports);
    let body = to_json(&VerifyDocument {
        suite: format!("{suite:?}").to_lowercase(),
        n_max,
        seed,
        passed,
        failures,
        reports: &reports,
    });
    Ok(Output {
        body,
        failure: (!passed).then(|| {
            CliError::Verification(format!("{failures} of {} properties failed", reports.len()))
        }),
    })
}

#[derive(Serialize)]
struct BenchDocument {
    seed: u64,
    runs: usize,
    records: Vec<circulant::bench::BenchRecord>,
}

pub fn bench(sizes: &[usize], methods: &[ConvolutionMethod], runs: usize, seed: u64) -> Result<Output, CliError> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(CliError::Usage("--sizes needs positive sizes".into()));
    }
    let records = bench_convolution(sizes, methods, runs, seed)?;
    let mismatch = records
        .iter()
        .find(|r| r.residual.is_nan() || r.residual > 1e-9 * (r.n * r.n) as f64)
        .map(|r| CliError::Contract(format!("naive and spectral disagree at n={} by {}", r.n, r.residual)));
    Ok(Output {
        body: to_json(&BenchDocument { seed, runs, records }),
        failure: mismatch,
    })
}
