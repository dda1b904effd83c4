//! Loading observations from text files, the logged-return transform and
//! sample moment summaries.

use std::fmt;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::random::RandomSource;

/// How the stored values were derived from the file contents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    None,
    LoggedReturns,
}

/// An ordered sample of finite observations.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    values: Vec<f64>,
    source: String,
    transform: Transform,
}

impl Dataset {
    pub fn new(values: Vec<f64>, source: impl Into<String>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InsufficientData { needed: 1, got: 0 });
        }
        if let Some(&bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "observation",
                value: bad,
                reason: "observations must be finite",
            });
        }
        Ok(Self {
            values,
            source: source.into(),
            transform: Transform::None,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn transform(&self) -> Transform {
        self.transform
    }
}

/// Which column of a delimited file to read.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Column {
    /// Zero-based position.
    Index(usize),
    /// Header name; requires a header row.
    Name(String),
}

impl Default for Column {
    fn default() -> Self {
        Column::Index(0)
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Column::Index(i) => write!(f, "#{i}"),
            Column::Name(n) => write!(f, "{n:?}"),
        }
    }
}

fn split_fields(line: &str) -> Vec<&str> {
    if line.contains(',') {
        line.split(',').map(str::trim).collect()
    } else if line.contains(';') {
        line.split(';').map(str::trim).collect()
    } else {
        line.split_whitespace().collect()
    }
}

fn strip_quotes(s: &str) -> &str {
    s.trim_matches('"')
}

/// Reads one numeric column from a file of numbers, comma/semicolon or
/// whitespace delimited, with an optional header row.
pub fn load_csv(path: impl AsRef<Path>, column: &Column) -> Result<Dataset> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_columns(&text, column, &path.display().to_string())
}

/// Parses file contents; see [`load_csv`].
///
/// The first nonblank line is a header when any of its fields is not a
/// number.
pub fn parse_columns(text: &str, column: &Column, source: &str) -> Result<Dataset> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let Some((first_no, first)) = lines.next() else {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    };
    let first_fields = split_fields(first);
    let is_header = first_fields.iter().any(|f| strip_quotes(f).parse::<f64>().is_err());

    let index = match column {
        Column::Index(i) => *i,
        Column::Name(name) => {
            if !is_header {
                return Err(Error::Parse {
                    line: first_no,
                    message: format!("column {name:?} requested but the file has no header row"),
                });
            }
            first_fields
                .iter()
                .position(|f| strip_quotes(f) == name)
                .ok_or_else(|| Error::Parse {
                    line: first_no,
                    message: format!("no column named {name:?} in header"),
                })?
        }
    };

    let mut values = Vec::new();
    let data_lines = (!is_header)
        .then_some((first_no, first))
        .into_iter()
        .chain(lines);
    for (line_no, line) in data_lines {
        let fields = split_fields(line);
        let cell = fields.get(index).ok_or_else(|| Error::Parse {
            line: line_no,
            message: format!("missing column {column}"),
        })?;
        let value: f64 = strip_quotes(cell).parse().map_err(|_| Error::Parse {
            line: line_no,
            message: format!("not a number: {cell:?}"),
        })?;
        if !value.is_finite() {
            return Err(Error::Parse {
                line: line_no,
                message: format!("non-finite value {cell:?}"),
            });
        }
        values.push(value);
    }
    Dataset::new(values, source)
}

/// Logged returns ln(Sᵢ/Sᵢ₋₁) of a price series.
pub fn logged_returns(prices: &Dataset) -> Result<Dataset> {
    let p = prices.values();
    if p.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: p.len(),
        });
    }
    if let Some(&bad) = p.iter().find(|&&v| v <= 0.0) {
        return Err(Error::InvalidParameter {
            name: "price",
            value: bad,
            reason: "prices must be positive",
        });
    }
    let values = p.windows(2).map(|w| (w[1] / w[0]).ln()).collect();
    Ok(Dataset {
        values,
        source: prices.source.clone(),
        transform: Transform::LoggedReturns,
    })
}

/// Sample mean, variance, skewness and excess kurtosis from the central
/// moments mₖ = Σ(x − x̄)ᵏ/n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSummary {
    pub mean: f64,
    pub variance: f64,
    pub skewness: f64,
    pub excess_kurtosis: f64,
}

/// Requires at least four observations and nonzero spread.
pub fn sample_moments(values: &[f64]) -> Result<MomentSummary> {
    let n = values.len();
    if n < 4 {
        return Err(Error::InsufficientData { needed: 4, got: n });
    }
    let nf = n as f64;
    let mean = values.iter().sum::<f64>() / nf;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for &v in values {
        let d = v - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= nf;
    m3 /= nf;
    m4 /= nf;
    if m2 <= 0.0 {
        return Err(Error::DegenerateData("zero variance: skewness and kurtosis undefined"));
    }
    Ok(MomentSummary {
        mean,
        variance: m2,
        skewness: m3 / m2.powf(1.5),
        excess_kurtosis: m4 / (m2 * m2) - 3.0,
    })
}

/// Mean excess kurtosis over random tranches and its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrancheKurtosis {
    pub mean: f64,
    /// Standard error of the tranche mean; zero with a single tranche.
    pub std_error: f64,
}

/// Shuffles the observations, splits them into `k` equal tranches (the
/// remainder is dropped) and summarizes the per-tranche excess kurtosis.
pub fn tranche_kurtosis<R: RandomSource + ?Sized>(values: &[f64], k: usize, rng: &mut R) -> Result<TrancheKurtosis> {
    let needed = 10 * k.max(1);
    if k == 0 || values.len() < needed {
        return Err(Error::InsufficientData {
            needed,
            got: values.len(),
        });
    }
    let mut shuffled = values.to_vec();
    for i in (1..shuffled.len()).rev() {
        let j = ((rng.uniform() * (i + 1) as f64) as usize).min(i);
        shuffled.swap(i, j);
    }
    let size = shuffled.len() / k;
    let kappas = shuffled
        .chunks_exact(size)
        .take(k)
        .map(|c| sample_moments(c).map(|m| m.excess_kurtosis))
        .collect::<Result<Vec<_>>>()?;
    let kf = k as f64;
    let mean = kappas.iter().sum::<f64>() / kf;
    let std_error = if k > 1 {
        let var = kappas.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (kf - 1.0);
        (var / kf).sqrt()
    } else {
        0.0
    };
    Ok(TrancheKurtosis { mean, std_error })
}
