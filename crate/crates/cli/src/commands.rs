use std::io::Write;

use ncdist::data::{load_csv, logged_returns, Column};
use ncdist::dist::{DistParams, Family};
use ncdist::fit::{best_match_beta, fit, FitOptions};
use ncdist::nc1;
use ncdist::ncn;
use ncdist::nt;
use ncdist::random::seeded;
use ncdist::student_t::StudentTParams;

use crate::args::{Command, EvalArgs, FitArgs, Format, HellingerArgs, MomentsArgs, ParamArgs, PlotArgs, SampleArgs};
use crate::error::CliError;
use crate::report::FitReport;
use crate::table::{Cell, Table};

/// Successful runs; a fit that stops short of the gradient tolerance still
/// writes its report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Done,
    NotConverged,
}

pub fn run(command: Command, out: &mut dyn Write) -> Result<Status, CliError> {
    match command {
        Command::Fit(a) => cmd_fit(a, out),
        Command::Sample(a) => cmd_sample(a, out).map(|_| Status::Done),
        Command::Eval(a) => cmd_eval(a, out).map(|_| Status::Done),
        Command::Moments(a) => cmd_moments(a, out).map(|_| Status::Done),
        Command::Hellinger(a) => cmd_hellinger(a, out).map(|_| Status::Done),
        Command::Plotdata(a) => cmd_plotdata(a, out).map(|_| Status::Done),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn label(family: Family) -> String {
    match family {
        Family::Ncn(n) => format!("nc{n}"),
        f => f.name().to_string(),
    }
}

fn uses_beta(family: Family) -> bool {
    matches!(family, Family::Nc1 | Family::Ncn(_) | Family::TwoPiece | Family::SurvTail)
}

fn build(family: Family, p: &ParamArgs, beta: f64) -> Result<DistParams, CliError> {
    let v = match family {
        Family::StudentT => vec![p.mu, p.s, p.nu],
        Family::Nc1 | Family::Ncn(_) => vec![p.mu, p.s, beta],
        Family::Nt => vec![p.mu, p.s, p.alpha, p.gamma],
        Family::TwoPiece => vec![p.mu, p.s, p.s2.unwrap_or(p.s), beta],
        Family::SurvTail => vec![beta, p.gamma, p.s],
    };
    Ok(DistParams::from_values(family, &v)?)
}

fn single(family: Family, p: &ParamArgs) -> Result<DistParams, CliError> {
    match p.beta.as_slice() {
        [beta] => build(family, p, *beta),
        _ => Err(usage("--beta takes a single value here")),
    }
}

fn cmd_fit(a: FitArgs, out: &mut dyn Write) -> Result<Status, CliError> {
    let family = a.family.resolve().map_err(usage)?;
    let column = a.column.parse().map(Column::Index).unwrap_or(Column::Name(a.column.clone()));
    let mut data = load_csv(&a.data, &column)?;
    if a.returns {
        data = logged_returns(&data)?;
    }
    let opts = FitOptions {
        seed: a.seed,
        n_restarts: a.restarts,
        tol: a.tol,
    };
    let result = fit(family, data.values(), &opts)?;
    let report = FitReport::new(&result, a.seed);
    match a.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
        Format::Text | Format::Csv => writeln!(out, "{}", report.to_text())?,
    }
    Ok(if report.converged { Status::Done } else { Status::NotConverged })
}

fn cmd_sample(a: SampleArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let family = a.family.resolve().map_err(usage)?;
    let dist = single(family, &a.params)?;
    let mut rng = seeded(a.seed);
    for _ in 0..a.count {
        writeln!(out, "{}", dist.sample(&mut rng)?)?;
    }
    Ok(())
}

fn cmd_eval(a: EvalArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let family = a.family.resolve().map_err(usage)?;
    let dist = single(family, &a.params)?;
    if a.pdf.is_empty() && a.cdf.is_empty() && a.quantile.is_empty() {
        return Err(usage("give at least one of --pdf, --cdf, --quantile"));
    }
    let mut table = Table::new(["function", "x", "value"]);
    let mut values = Vec::new();
    for &x in &a.pdf {
        values.push(("pdf", x, dist.pdf(x)));
    }
    for &x in &a.cdf {
        values.push(("cdf", x, dist.cdf(x)));
    }
    for &p in &a.quantile {
        values.push(("quantile", p, dist.quantile(p)?));
    }
    if a.format == Format::Text {
        for (_, _, v) in values {
            writeln!(out, "{v}")?;
        }
        return Ok(());
    }
    for (f, x, v) in values {
        table.push(vec![f.into(), x.into(), v.into()]);
    }
    table.write(a.format, out)
}

fn beta_grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>, CliError> {
    if !(step > 0.0 && from <= to) {
        return Err(usage("need --from <= --to and --step > 0"));
    }
    let n = ((to - from) / step + 1e-9).floor() as usize;
    // rounded so that 0.01 steps print as 0.07 rather than 0.07000000000000001
    Ok((0..=n).map(|i| ((from + i as f64 * step) * 1e12).round() / 1e12).collect())
}

fn cmd_moments(a: MomentsArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let family = a.family.resolve().map_err(usage)?;
    let betas = if a.beta.is_empty() { beta_grid(a.from, a.to, a.step)? } else { a.beta.clone() };
    if !(a.s > 0.0) {
        return Err(usage("--s must be positive"));
    }
    let mut table = Table::new(["family", "beta", "mean", "variance", "skewness", "excess_kurtosis"]);
    for beta in betas {
        let moments = match family {
            Family::Nc1 => nc1::central_moments(beta),
            Family::Ncn(n) => ncn::central_moments(n, beta),
            Family::Nt => {
                if !(0.0..1.0).contains(&beta) {
                    return Err(usage("nt moments need beta in [0, 1)"));
                }
                nt::standard_moments(beta / (1.0 - beta), a.gamma)
            }
            f => return Err(usage(format!("moments are tabulated for nc1, ncn and nt, not {}", f.name()))),
        };
        let (variance, kurtosis) = match moments {
            Ok(m) => (a.s * a.s * m.m2, m.excess_kurtosis),
            Err(ncdist::Error::DivergentMoment(_)) => (f64::INFINITY, f64::INFINITY),
            Err(e) => return Err(e.into()),
        };
        table.push(vec![label(family).into(), beta.into(), 0.0.into(), variance.into(), 0.0.into(), kurtosis.into()]);
    }
    table.write(a.format, out)
}

fn cmd_hellinger(a: HellingerArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let mut table = Table::new(["target_nu", "beta", "scale", "distance", "kurtosis"]);
    for &nu in &a.target_nu {
        let target = StudentTParams::new(0.0, a.target_s, nu)?;
        let m = best_match_beta(&target);
        let kurtosis = match nc1::central_moments(m.beta) {
            Ok(k) => k.excess_kurtosis,
            Err(ncdist::Error::DivergentMoment(_)) => f64::INFINITY,
            Err(e) => return Err(e.into()),
        };
        table.push(vec![nu.into(), m.beta.into(), m.scale.into(), m.distance.into(), kurtosis.into()]);
    }
    table.write(a.format, out)
}

fn cmd_plotdata(a: PlotArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let family = a.family.resolve().map_err(usage)?;
    if a.points < 2 || !(a.from < a.to) {
        return Err(usage("need --points >= 2 and --from < --to"));
    }
    let betas = if uses_beta(family) { a.params.beta.clone() } else { vec![f64::NAN] };
    let series = betas.iter().map(|&b| build(family, &a.params, b)).collect::<Result<Vec<_>, _>>()?;
    let mut header = vec!["x".to_string()];
    if series.len() == 1 {
        header.push("pdf".to_string());
    } else {
        header.extend(betas.iter().map(|b| format!("beta={b}")));
    }
    let mut table = Table::new(header);
    let h = (a.to - a.from) / (a.points - 1) as f64;
    for i in 0..a.points {
        let x = if i + 1 == a.points { a.to } else { a.from + i as f64 * h };
        let mut row: Vec<Cell> = vec![x.into()];
        row.extend(series.iter().map(|d| Cell::from(d.pdf(x))));
        table.push(row);
    }
    table.write(a.format, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_inclusive_and_rounded() {
        let g = beta_grid(0.01, 0.99, 0.01).unwrap();
        assert_eq!(g.len(), 99);
        assert_eq!(g[6], 0.07);
        assert_eq!(*g.last().unwrap(), 0.99);
        assert!(beta_grid(0.5, 0.1, 0.1).is_err());
    }

    #[test]
    fn labels() {
        assert_eq!(label(Family::Ncn(3)), "nc3");
        assert_eq!(label(Family::Nc1), "nc1");
    }
}
