//! File format for arrays: `{"dims": [...], "data": [[re, im], ...]}` in
//! linear order (last axis fastest), with optional `name` and `ordering`.
//! Real-valued one-dimensional input may also be given as CSV, one value per
//! line.

use std::io::{Read, Write};
use std::path::Path;

use circulant::{CVector, Complex, NdArray, SpectrumOrdering, TorusDims};
use serde::{Deserialize, Serialize};
use serde_json::ser::{CompactFormatter, Formatter};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArrayDocument {
    pub dims: Vec<usize>,
    pub data: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ordering: Option<SpectrumOrdering>,
}

impl ArrayDocument {
    pub fn from_values(dims: Vec<usize>, values: &[Complex<f64>]) -> Self {
        Self {
            dims,
            data: values.iter().map(|z| [z.re, z.im]).collect(),
            name: None,
            ordering: None,
        }
    }

    pub fn from_vector(x: &CVector<f64>) -> Self {
        Self::from_values(vec![x.len()], x.as_slice())
    }

    pub fn from_array(a: &NdArray<f64>) -> Self {
        Self::from_values(a.dims().sizes().to_vec(), a.values())
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_ordering(mut self, ordering: SpectrumOrdering) -> Self {
        self.ordering = Some(ordering);
        self
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let expected = self
            .dims
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| CliError::Usage(format!("dims {:?} overflow", self.dims)))?;
        if self.dims.is_empty() || self.dims.contains(&0) {
            return Err(CliError::Usage(format!("dims {:?} must be nonempty and positive", self.dims)));
        }
        if self.data.len() != expected {
            return Err(CliError::Usage(format!(
                "dims {:?} need {expected} entries, found {}",
                self.dims,
                self.data.len()
            )));
        }
        if let Some(k) = self.data.iter().position(|p| !p[0].is_finite() || !p[1].is_finite()) {
            return Err(CliError::Usage(format!("entry {k} is not finite")));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<Complex<f64>> {
        self.data.iter().map(|p| Complex::new(p[0], p[1])).collect()
    }

    pub fn to_vector(&self) -> Result<CVector<f64>, CliError> {
        if self.dims.len() != 1 {
            return Err(CliError::Usage(format!(
                "expected a one-dimensional array, got dims {:?}",
                self.dims
            )));
        }
        Ok(CVector::new(self.values())?)
    }

    pub fn to_array(&self) -> Result<NdArray<f64>, CliError> {
        Ok(NdArray::new(TorusDims::new(self.dims.clone())?, self.values())?)
    }

    /// Rows of a square matrix document.
    pub fn to_square(&self) -> Result<circulant::DenseMatrix64, CliError> {
        match self.dims.as_slice() {
            [r, c] if r == c => Ok(circulant::DenseMatrix::new(*r, *c, self.values())?),
            _ => Err(CliError::Usage(format!(
                "expected a square matrix, got dims {:?}",
                self.dims
            ))),
        }
    }

    pub fn parse_json(text: &str) -> Result<Self, CliError> {
        let doc: Self = serde_json::from_str(text)
            .map_err(|e| CliError::Usage(format!("malformed array document: {e}")))?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn parse_csv(text: &str) -> Result<Self, CliError> {
        let data = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .enumerate()
            .map(|(i, l)| {
                l.parse::<f64>()
                    .map(|v| [v, 0.0])
                    .map_err(|e| CliError::Usage(format!("CSV line {}: {e}", i + 1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let doc = Self {
            dims: vec![data.len()],
            data,
            name: None,
            ordering: None,
        };
        doc.validate()?;
        Ok(doc)
    }

    /// Reads JSON, or CSV when the path ends in `.csv`. `-` is standard input.
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = if path == Path::new("-") {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Usage(format!("reading standard input: {e}")))?;
            s
        } else {
            std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("reading {}: {e}", path.display())))?
        };
        let is_csv = path
            .extension()
            .is_some_and(|ext| ext.eq_ignore_ascii_case("csv"));
        let mut doc = if is_csv {
            Self::parse_csv(&text)?
        } else {
            Self::parse_json(&text)?
        };
        if doc.name.is_none() {
            doc.name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
        }
        Ok(doc)
    }
}

/// Writes every float with 17 significant digits.
struct SeventeenDigits;

impl Formatter for SeventeenDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> std::io::Result<()> {
        CompactFormatter.write_f32(writer, value)
    }
}

pub fn to_json<S: Serialize>(value: &S) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SeventeenDigits);
    value.serialize(&mut ser).expect("serializable output");
    String::from_utf8(buf).expect("JSON is UTF-8")
}
