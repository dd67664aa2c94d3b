//! Parameter sweeps over one or two axes with deterministic CSV/JSON output.

use std::fmt::Write as _;
use std::str::FromStr;

use epair::pairsim::{resource_report, PairConfig};
use epair::relativity::BoostParams;
use rayon::prelude::*;

use crate::config::MergedPhysics;
use crate::error::{CliError, CliResult};

/// Sweepable parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    Beta,
    BetaV,
    Alpha,
    Phi,
}

impl SweepParam {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParam::Beta => "beta",
            SweepParam::BetaV => "beta_v",
            SweepParam::Alpha => "alpha",
            SweepParam::Phi => "phi",
        }
    }

    fn domain(&self) -> (f64, f64) {
        match self {
            SweepParam::Beta => (0.0, epair::relativity::BETA_MAX),
            SweepParam::BetaV => (0.0, epair::relativity::BETA_MAX),
            SweepParam::Alpha => (0.0, std::f64::consts::PI),
            SweepParam::Phi => (0.0, std::f64::consts::FRAC_PI_2),
        }
    }
}

impl FromStr for SweepParam {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "beta" => Ok(SweepParam::Beta),
            "beta_v" | "beta-v" => Ok(SweepParam::BetaV),
            "alpha" => Ok(SweepParam::Alpha),
            "phi" => Ok(SweepParam::Phi),
            other => Err(CliError::Usage(format!(
                "unknown sweep parameter `{other}` (expected beta, beta_v, alpha or phi)"
            ))),
        }
    }
}

/// One sweep axis: NAME:MIN:MAX:N with N >= 2.
#[derive(Debug, Clone, Copy)]
pub struct Axis {
    pub param: SweepParam,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub fn parse(spec: &str) -> CliResult<Self> {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 4 {
            return Err(CliError::Usage(format!(
                "axis `{spec}` must have the form NAME:MIN:MAX:N"
            )));
        }
        let param: SweepParam = parts[0].parse()?;
        let parse_f = |s: &str, what: &str| {
            s.parse::<f64>()
                .map_err(|_| CliError::Usage(format!("axis `{spec}`: invalid {what} `{s}`")))
        };
        let min = parse_f(parts[1], "min")?;
        let max = parse_f(parts[2], "max")?;
        let count: usize = parts[3]
            .parse()
            .map_err(|_| CliError::Usage(format!("axis `{spec}`: invalid point count")))?;
        let axis = Axis {
            param,
            min,
            max,
            count,
        };
        axis.validate()?;
        Ok(axis)
    }

    fn validate(&self) -> CliResult<()> {
        if self.count < 2 {
            return Err(CliError::Usage(format!(
                "axis {} needs at least 2 points, got {}",
                self.param.name(),
                self.count
            )));
        }
        let (lo, hi) = self.param.domain();
        if !(self.min < self.max) || self.min < lo || self.max > hi {
            return Err(CliError::Usage(format!(
                "axis {} range [{}, {}] must be increasing and stay within [{lo}, {hi}]",
                self.param.name(),
                self.min,
                self.max
            )));
        }
        Ok(())
    }

    pub fn value(&self, index: usize) -> f64 {
        self.min + (self.max - self.min) * index as f64 / (self.count - 1) as f64
    }
}

/// A validated sweep: one or two axes plus fixed values for the rest.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    axes: Vec<Axis>,
    fixed: MergedPhysics,
}

impl SweepSpec {
    pub fn new(axes: Vec<Axis>, fixed: MergedPhysics) -> CliResult<Self> {
        if axes.is_empty() || axes.len() > 2 {
            return Err(CliError::Usage(format!(
                "expected 1 or 2 --axis definitions, got {}",
                axes.len()
            )));
        }
        if axes.len() == 2 && axes[0].param == axes[1].param {
            return Err(CliError::Usage(format!(
                "both axes sweep `{}`",
                axes[0].param.name()
            )));
        }
        for param in ["phi", "theta", "beta", "beta_v", "alpha", "mass"] {
            let on_axis = axes.iter().any(|a| a.param.name() == param);
            if !on_axis && fixed.get(param).is_none() {
                return Err(CliError::Usage(format!(
                    "parameter `{param}` is not on an axis and has no fixed value"
                )));
            }
        }
        Ok(Self { axes, fixed })
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.count).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn point(&self, index: usize) -> (f64, f64, f64, f64) {
        let mut phi = self.fixed.phi.unwrap_or(0.0);
        let mut beta = self.fixed.beta.unwrap_or(0.0);
        let mut beta_v = self.fixed.beta_v.unwrap_or(0.0);
        let mut alpha = self.fixed.alpha.unwrap_or(0.0);
        let indices = match self.axes.len() {
            1 => vec![index],
            _ => vec![index / self.axes[1].count, index % self.axes[1].count],
        };
        for (axis, &i) in self.axes.iter().zip(&indices) {
            let v = axis.value(i);
            match axis.param {
                SweepParam::Beta => beta = v,
                SweepParam::BetaV => beta_v = v,
                SweepParam::Alpha => alpha = v,
                SweepParam::Phi => phi = v,
            }
        }
        (phi, beta, beta_v, alpha)
    }
}

/// One output row of a sweep.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SweepRow {
    pub beta: f64,
    pub beta_v: f64,
    pub alpha: f64,
    pub phi: f64,
    pub cos_omega: f64,
    pub e4: f64,
    pub e8: f64,
    pub coh_minus: f64,
    pub coh_plus: f64,
    pub invariant: f64,
    /// NaN when the point is degenerate and the closed-form comparison is
    /// skipped.
    pub max_deviation: f64,
}

pub const CSV_HEADER: &str =
    "beta,beta_v,alpha,phi,cos_omega,e4,e8,coh_minus,coh_plus,invariant,max_deviation";

/// Runs the sweep. Points are computed in parallel; rows come back in grid
/// order (first axis outer, second axis inner) independent of worker count.
pub fn run(spec: &SweepSpec) -> CliResult<Vec<SweepRow>> {
    let theta = spec.fixed.theta.unwrap_or(0.0);
    let mass = spec.fixed.mass.unwrap_or(1.0);
    (0..spec.len())
        .into_par_iter()
        .map(|index| {
            let (phi, beta, beta_v, alpha) = spec.point(index);
            let cfg = PairConfig::new(phi, theta, beta_v, mass)?;
            let bp = BoostParams::new(beta, beta_v, alpha)?;
            let report = resource_report(&cfg, &bp)?;
            Ok(SweepRow {
                beta,
                beta_v,
                alpha,
                phi,
                cos_omega: report.cos_omega,
                e4: report.e4_lab,
                e8: report.e8_boosted,
                coh_minus: report.coherence_minus,
                coh_plus: report.coherence_plus,
                invariant: report.invariant_value,
                max_deviation: report.max_deviation.unwrap_or(f64::NAN),
            })
        })
        .collect()
}

/// Full-precision decimal form: 17 significant digits round-trip any f64.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else {
        format!("{x:.16e}")
    }
}

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(rows.len() * 64 + CSV_HEADER.len());
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let fields = [
            r.beta,
            r.beta_v,
            r.alpha,
            r.phi,
            r.cos_omega,
            r.e4,
            r.e8,
            r.coh_minus,
            r.coh_plus,
            r.invariant,
            r.max_deviation,
        ];
        let mut first = true;
        for f in fields {
            if !first {
                out.push(',');
            }
            let _ = write!(out, "{}", fmt_f64(f));
            first = false;
        }
        out.push('\n');
    }
    out
}

pub fn to_json(rows: &[SweepRow]) -> CliResult<String> {
    serde_json::to_string_pretty(rows)
        .map_err(|e| CliError::Usage(format!("cannot serialize rows: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::MergedPhysics;

    fn fixed_all() -> MergedPhysics {
        MergedPhysics {
            phi: Some(0.6),
            theta: Some(0.0),
            beta: Some(0.4),
            beta_v: Some(0.7),
            alpha: Some(0.5),
            mass: Some(1.0),
        }
    }

    #[test]
    fn axis_parsing() {
        let a = Axis::parse("beta:0:0.9:10").unwrap();
        assert_eq!(a.param, SweepParam::Beta);
        assert_eq!(a.count, 10);
        assert!(Axis::parse("beta:0:0.9").is_err());
        assert!(Axis::parse("beta:0:0.9:1").is_err()); // point count >= 2
        assert!(Axis::parse("beta:0.9:0.1:5").is_err()); // decreasing
        assert!(Axis::parse("beta:0:1.5:5").is_err()); // out of domain
        assert!(Axis::parse("gamma:0:0.9:5").is_err());
        assert!(Axis::parse("phi:0:2.0:5").is_err()); // phi caps at pi/2
    }

    #[test]
    fn spec_validation() {
        let ax = |s: &str| Axis::parse(s).unwrap();
        assert!(SweepSpec::new(vec![], fixed_all()).is_err());
        assert!(SweepSpec::new(
            vec![ax("beta:0:0.9:3"), ax("beta:0:0.9:3")],
            fixed_all()
        )
        .is_err());
        let mut missing = fixed_all();
        missing.phi = None;
        assert!(SweepSpec::new(vec![ax("beta:0:0.9:3")], missing).is_err());
        let spec = SweepSpec::new(vec![ax("beta:0.1:0.9:3"), ax("phi:0:1.5:4")], fixed_all())
            .unwrap();
        assert_eq!(spec.len(), 12);
    }

    #[test]
    fn rows_follow_grid_order_and_match_formulas() {
        let spec = SweepSpec::new(
            vec![
                Axis::parse("beta:0.2:0.8:3").unwrap(),
                Axis::parse("beta_v:0.3:0.9:2").unwrap(),
            ],
            fixed_all(),
        )
        .unwrap();
        let rows = run(&spec).unwrap();
        assert_eq!(rows.len(), 6);
        // Row order: beta outer, beta_v inner.
        assert_eq!(rows[0].beta, 0.2);
        assert_eq!(rows[0].beta_v, 0.3);
        assert_eq!(rows[1].beta, 0.2);
        assert_eq!(rows[1].beta_v, 0.9);
        assert_eq!(rows[5].beta, 0.8);
        for r in &rows {
            assert!((r.invariant - (2.0f64 * 0.6).sin()).abs() < 1e-9);
            assert!((r.e8 - r.e4 * r.cos_omega).abs() < 1e-9);
            assert!(r.max_deviation < 1e-8);
        }
    }

    #[test]
    fn csv_is_full_precision() {
        assert_eq!(fmt_f64(0.5), "5.0000000000000000e-1");
        assert_eq!(fmt_f64(f64::NAN), "NaN");
        let x = 0.123456789123456789;
        let parsed: f64 = fmt_f64(x).parse().unwrap();
        assert_eq!(parsed, x);
        let spec = SweepSpec::new(vec![Axis::parse("phi:0.1:1.4:2").unwrap()], fixed_all())
            .unwrap();
        let rows = run(&spec).unwrap();
        let csv = to_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        assert_eq!(csv.lines().count(), 3);
    }
}
