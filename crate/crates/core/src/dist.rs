//! One tagged parameter record per univariate family so callers (fitting,
//! the command line, the browser demo) can treat the families uniformly.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::nc1::Nc1Params;
use crate::ncn::NcnParams;
use crate::nt::NtParams;
use crate::random::RandomSource;
use crate::student_t::StudentTParams;
use crate::variants::{SurvTailParams, TwoPieceParams};

/// Univariate family tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    StudentT,
    Nc1,
    /// NC(n) with the given degree.
    Ncn(u32),
    Nt,
    TwoPiece,
    SurvTail,
}

impl Family {
    /// Short name used on the command line and in reports.
    pub fn name(&self) -> &'static str {
        match self {
            Family::StudentT => "t",
            Family::Nc1 => "nc1",
            Family::Ncn(_) => "ncn",
            Family::Nt => "nt",
            Family::TwoPiece => "twopiece",
            Family::SurvTail => "surv",
        }
    }

    /// Parameter names in the order used by fitting and standard errors.
    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            Family::StudentT => &["mu", "s", "nu"],
            Family::Nc1 | Family::Ncn(_) => &["mu", "s", "beta"],
            Family::Nt => &["mu", "s", "alpha", "gamma"],
            Family::TwoPiece => &["mu", "s1", "s2", "beta"],
            Family::SurvTail => &["beta", "gamma", "scale"],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Ncn(n) => write!(f, "NC({n})"),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts the short names, with `ncK` as shorthand for NC(K).
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "t" => Ok(Family::StudentT),
            "nc1" => Ok(Family::Nc1),
            "ncn" => Ok(Family::Ncn(2)),
            "nt" => Ok(Family::Nt),
            "twopiece" => Ok(Family::TwoPiece),
            "surv" => Ok(Family::SurvTail),
            other => match other.strip_prefix("nc").and_then(|k| k.parse::<u32>().ok()) {
                Some(1) => Ok(Family::Nc1),
                Some(k) if (2..=crate::ncn::MAX_N).contains(&k) => Ok(Family::Ncn(k)),
                _ => Err(Error::Parse {
                    line: 0,
                    message: format!("unknown family {other:?}"),
                }),
            },
        }
    }
}

/// Parameters of any univariate family.
#[derive(Debug, Clone, PartialEq)]
pub enum DistParams {
    StudentT(StudentTParams),
    Nc1(Nc1Params),
    Ncn(NcnParams),
    Nt(NtParams),
    TwoPiece(TwoPieceParams),
    SurvTail(SurvTailParams),
}

impl DistParams {
    pub fn family(&self) -> Family {
        match self {
            DistParams::StudentT(_) => Family::StudentT,
            DistParams::Nc1(_) => Family::Nc1,
            DistParams::Ncn(p) => Family::Ncn(p.n()),
            DistParams::Nt(_) => Family::Nt,
            DistParams::TwoPiece(_) => Family::TwoPiece,
            DistParams::SurvTail(_) => Family::SurvTail,
        }
    }

    /// Builds a record from values ordered as [`Family::param_names`].
    pub fn from_values(family: Family, v: &[f64]) -> Result<Self> {
        let want = family.param_names().len();
        if v.len() != want {
            return Err(Error::DimensionMismatch {
                expected: want,
                got: v.len(),
            });
        }
        Ok(match family {
            Family::StudentT => DistParams::StudentT(StudentTParams::new(v[0], v[1], v[2])?),
            Family::Nc1 => DistParams::Nc1(Nc1Params::new(v[0], v[1], v[2])?),
            Family::Ncn(n) => DistParams::Ncn(NcnParams::new(n, v[0], v[1], v[2])?),
            Family::Nt => DistParams::Nt(NtParams::new(v[0], v[1], v[2], v[3])?),
            Family::TwoPiece => DistParams::TwoPiece(TwoPieceParams::new(v[0], v[1], v[2], v[3])?),
            Family::SurvTail => DistParams::SurvTail(SurvTailParams::new(v[0], v[1], v[2])?),
        })
    }

    /// Values ordered as [`Family::param_names`].
    pub fn values(&self) -> Vec<f64> {
        match self {
            DistParams::StudentT(p) => vec![p.mu(), p.s(), p.nu()],
            DistParams::Nc1(p) => vec![p.mu(), p.s(), p.beta()],
            DistParams::Ncn(p) => vec![p.mu(), p.s(), p.beta()],
            DistParams::Nt(p) => vec![p.mu(), p.s(), p.alpha(), p.gamma()],
            DistParams::TwoPiece(p) => vec![p.mu(), p.s1(), p.s2(), p.beta()],
            DistParams::SurvTail(p) => vec![p.beta(), p.gamma(), p.scale()],
        }
    }

    pub fn log_pdf(&self, y: f64) -> f64 {
        match self {
            DistParams::StudentT(p) => p.log_pdf(y),
            DistParams::Nc1(p) => p.log_pdf(y),
            DistParams::Ncn(p) => p.log_pdf(y),
            DistParams::Nt(p) => p.log_pdf(y),
            DistParams::TwoPiece(p) => p.log_pdf(y),
            DistParams::SurvTail(p) => p.log_pdf(y),
        }
    }

    pub fn pdf(&self, y: f64) -> f64 {
        self.log_pdf(y).exp()
    }

    pub fn cdf(&self, y: f64) -> f64 {
        match self {
            DistParams::StudentT(p) => p.cdf(y),
            DistParams::Nc1(p) => p.cdf(y),
            DistParams::Ncn(p) => p.cdf(y),
            DistParams::Nt(p) => p.cdf(y),
            DistParams::TwoPiece(p) => p.cdf(y),
            DistParams::SurvTail(p) => p.cdf(y),
        }
    }

    pub fn quantile(&self, prob: f64) -> Result<f64> {
        match self {
            DistParams::StudentT(p) => p.quantile(prob),
            DistParams::Nc1(p) => p.quantile(prob),
            DistParams::Ncn(p) => p.quantile(prob),
            DistParams::Nt(p) => p.quantile(prob),
            DistParams::TwoPiece(p) => p.quantile(prob),
            DistParams::SurvTail(p) => p.quantile(prob),
        }
    }

    pub fn sample<R: RandomSource + ?Sized>(&self, rng: &mut R) -> Result<f64> {
        Ok(match self {
            DistParams::StudentT(p) => p.sample(rng),
            DistParams::Nc1(p) => p.sample(rng),
            DistParams::Ncn(p) => p.sample(rng),
            DistParams::Nt(p) => p.sample(rng),
            DistParams::TwoPiece(p) => p.sample(rng),
            DistParams::SurvTail(p) => p.sample(rng)?,
        })
    }
}
