//! Runs catalog checks through the engine and judges them against the claimed values.

mod grid;
mod report;

use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{eval_constant, ArithError, BigFloat, ExactRational};
use crate::catalog::{self, CatalogError, IdentitySpec, Kind, ParamDomain, Params};
use crate::engine::{self, BoundKind, EngineError, SumOptions};

pub use grid::{Grid, GridError, GridRecord};
pub use report::{from_json, to_json, DigitsMatched, Status, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown id: {0}")]
    UnknownId(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOptions {
    pub digits: u32,
    pub max_terms: u32,
    pub grid: Option<Grid>,
    pub precision_bits: Option<u32>,
    /// Report `elapsed_ms` as 0 so output is byte-stable.
    pub timing: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            digits: 30,
            max_terms: 10_000,
            grid: None,
            precision_bits: None,
            timing: true,
        }
    }
}

impl CheckOptions {
    fn sum_options(&self) -> SumOptions {
        SumOptions {
            digits: self.digits,
            max_terms: self.max_terms,
            precision_bits: self.precision_bits,
        }
    }
}

pub const DEFAULT_X: [(i64, i64); 5] = [(1, 3), (1, 5), (2, 7), (3, 7), (4, 9)];
pub const DEFAULT_N_MAX: u32 = 12;
pub const DEFAULT_JET_N_MAX: u32 = 8;

/// Parameter points for a terminating identity, duplicates removed in order.
pub fn grid_points(spec: &IdentitySpec, grid: Option<&Grid>) -> Vec<Params> {
    let records: Vec<(ExactRational, u32)> =
        match grid.map(|g| g.for_id(spec.id).collect::<Vec<_>>()) {
            Some(rs) if !rs.is_empty() => rs.into_iter().map(|r| (r.x.clone(), r.n_max)).collect(),
            _ => {
                let n_max = if spec.kind == Kind::FiniteJet {
                    DEFAULT_JET_N_MAX
                } else {
                    DEFAULT_N_MAX
                };
                DEFAULT_X
                    .iter()
                    .map(|&(p, q)| (ExactRational::frac(p, q), n_max))
                    .collect()
            }
        };
    let mut points: Vec<Params> = Vec::new();
    for (x, n_max) in records {
        for n in 0..=n_max {
            if let Some(p) = spec.grid_params(&x, n) {
                if !points.contains(&p) {
                    points.push(p);
                }
            }
        }
    }
    points
}

fn sci(x: &BigFloat, digits: u32) -> String {
    x.to_sci_string(digits as usize + 5)
}

fn rational_sci(q: &ExactRational, digits: u32) -> String {
    let bits = ((digits + 5) as f64 * 3.33) as u32 + 32;
    sci(&BigFloat::from_rational(q, bits), digits)
}

fn tolerance_digits(kind: BoundKind, digits: u32) -> u32 {
    match kind {
        BoundKind::Rigorous => digits,
        BoundKind::Heuristic => digits / 2,
    }
}

/// `floor(-log10(abs_err / max(|claimed|, 1)))`, capped by the working precision.
fn digits_matched(abs_err: &BigFloat, claimed: &BigFloat, cap: i64) -> i64 {
    if abs_err.is_zero() {
        return cap;
    }
    let scale = claimed.log10_abs().max(0.0);
    let d = -(abs_err.log10_abs() - scale);
    (d.floor() as i64).min(cap)
}

struct Stopwatch {
    start: Instant,
    on: bool,
}

impl Stopwatch {
    fn new(on: bool) -> Self {
        Stopwatch {
            start: Instant::now(),
            on,
        }
    }

    fn ms(&self) -> u64 {
        if self.on {
            self.start.elapsed().as_millis() as u64
        } else {
            0
        }
    }
}

/// Evaluation errors that mark a grid point as inadmissible.
fn pole_reason(e: &EngineError) -> Option<String> {
    match e {
        EngineError::Catalog(CatalogError::Arith(a)) | EngineError::Arith(a) => match a {
            ArithError::Pole(m) => Some(format!("pole: {m}")),
            ArithError::GammaPole(m) => Some(format!("gamma pole at {m}")),
            ArithError::DivisionByZero => Some("pole: division by zero".into()),
            _ => None,
        },
        _ => None,
    }
}

fn check_exact(spec: &IdentitySpec, params: &Params, opts: &CheckOptions) -> VerificationReport {
    let watch = Stopwatch::new(opts.timing);
    let n = match params {
        Params::Xn { n, .. } | Params::Whipple { n, .. } | Params::N(n) => *n,
        _ => 0,
    };
    let base = |claimed: String, computed: String, abs_err: String, digits, status: Status| {
        VerificationReport {
            id: spec.id.to_string(),
            kind: spec.kind.to_string(),
            params: params.to_string(),
            claimed,
            computed,
            abs_err,
            digits_matched: digits,
            terms_used: n + 1,
            bound_kind: "exact".into(),
            status: status.to_string(),
            elapsed_ms: watch.ms(),
        }
    };
    match engine::sum_finite_exact(spec.id, params) {
        Ok(out) => {
            let err = (out.lhs.clone() - out.rhs.clone()).abs();
            let equal = err.is_zero() && out.failures.is_empty();
            let digits = if equal {
                DigitsMatched::exact()
            } else {
                let p = (opts.digits as f64 * 3.33) as u32 + 64;
                let e = BigFloat::from_rational(&err, p);
                let c = BigFloat::from_rational(&out.rhs, p);
                DigitsMatched::Count(digits_matched(&e, &c, i64::from(opts.digits) + 5))
            };
            base(
                rational_sci(&out.rhs, opts.digits),
                rational_sci(&out.lhs, opts.digits),
                rational_sci(&err, opts.digits),
                digits,
                if equal { Status::Pass } else { Status::Fail },
            )
        }
        Err(e) => match pole_reason(&e) {
            Some(reason) => base(
                String::new(),
                String::new(),
                String::new(),
                DigitsMatched::Count(0),
                Status::Skip(reason),
            ),
            None => base(
                String::new(),
                String::new(),
                String::new(),
                DigitsMatched::Count(0),
                Status::Fail,
            ),
        },
    }
}

fn check_numeric(spec: &IdentitySpec, opts: &CheckOptions) -> VerificationReport {
    let watch = Stopwatch::new(opts.timing);
    let sum_opts = opts.sum_options();
    let p = sum_opts.working_bits();
    let params = spec.default_params();
    let mut report = VerificationReport {
        id: spec.id.to_string(),
        kind: spec.kind.to_string(),
        params: params.to_string(),
        claimed: String::new(),
        computed: String::new(),
        abs_err: String::new(),
        digits_matched: DigitsMatched::Count(0),
        terms_used: 0,
        bound_kind: String::new(),
        status: Status::Fail.to_string(),
        elapsed_ms: 0,
    };
    let claimed = spec
        .claim
        .as_ref()
        .ok_or(ArithError::Domain("no claimed value".into()))
        .and_then(|c| eval_constant(c, p));
    let claimed = match claimed {
        Ok(c) => c,
        Err(e) => {
            report.status = Status::Skip(format!("claimed value: {e}")).to_string();
            report.elapsed_ms = watch.ms();
            return report;
        }
    };
    report.claimed = sci(&claimed, opts.digits);
    match engine::sum_numeric(spec, &params, &sum_opts) {
        Ok(r) => {
            let err = (&r.value - &claimed).abs();
            let tol_digits = tolerance_digits(r.bound_kind, opts.digits);
            let tol = BigFloat::from_rational(
                &ExactRational::new(1, num_bigint::BigInt::from(10).pow(tol_digits))
                    .expect("nonzero"),
                p,
            );
            let cap = (f64::from(p) * std::f64::consts::LOG10_2).floor() as i64;
            report.computed = sci(&r.value, opts.digits);
            report.abs_err = sci(&err, opts.digits);
            report.digits_matched = DigitsMatched::Count(digits_matched(&err, &claimed, cap));
            report.terms_used = r.terms_used;
            report.bound_kind = match r.bound_kind {
                BoundKind::Rigorous => "rigorous".into(),
                BoundKind::Heuristic => format!("heuristic (tolerance 1e-{tol_digits})"),
            };
            report.status = if err <= tol {
                Status::Pass
            } else {
                Status::Fail
            }
            .to_string();
        }
        Err(e) => {
            report.computed = format!("error: {e}");
        }
    }
    report.elapsed_ms = watch.ms();
    report
}

fn check_spec(spec: &IdentitySpec, opts: &CheckOptions) -> Vec<VerificationReport> {
    match spec.kind {
        Kind::InfiniteNumeric => vec![check_numeric(spec, opts)],
        Kind::FiniteExact | Kind::FiniteJet => grid_points(spec, opts.grid.as_ref())
            .par_iter()
            .map(|p| check_exact(spec, p, opts))
            .collect(),
    }
}

/// One report per grid point for terminating identities, otherwise a single report.
pub fn run_check(id: &str, opts: &CheckOptions) -> Result<Vec<VerificationReport>, VerifyError> {
    let spec = catalog::lookup(id).map_err(|_| VerifyError::UnknownId(id.to_string()))?;
    Ok(check_spec(spec, opts))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub reports: Vec<VerificationReport>,
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

impl Summary {
    pub fn from_reports(reports: Vec<VerificationReport>) -> Self {
        let count = |f: fn(&VerificationReport) -> bool| reports.iter().filter(|r| f(r)).count();
        Summary {
            pass: count(VerificationReport::is_pass),
            fail: count(VerificationReport::is_fail),
            skip: count(VerificationReport::is_skip),
            reports,
        }
    }

    /// 0 when nothing failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.fail > 0)
    }
}

/// Runs the given specs concurrently; reports are ordered by id, then grid order.
pub fn run_specs(specs: &[&IdentitySpec], opts: &CheckOptions) -> Summary {
    let mut per_spec: Vec<(&str, Vec<VerificationReport>)> = specs
        .par_iter()
        .map(|s| (s.id, check_spec(s, opts)))
        .collect();
    per_spec.sort_by(|a, b| a.0.cmp(b.0));
    Summary::from_reports(per_spec.into_iter().flat_map(|(_, r)| r).collect())
}

pub fn run_all(opts: &CheckOptions) -> Summary {
    let specs: Vec<&IdentitySpec> = catalog::registry().iter().collect();
    run_specs(&specs, opts)
}

/// Registry listing: id, kind, claimed right side and role.
pub fn list_lines() -> Vec<String> {
    catalog::registry()
        .iter()
        .flat_map(|s| {
            let claim = s
                .claim
                .as_ref()
                .map_or_else(|| "terminating right side".to_string(), |c| c.to_string());
            let params = match &s.domain {
                ParamDomain::Fixed(p) if *p != Params::None => format!(" at {p}"),
                _ => String::new(),
            };
            let head = format!(
                "{:<14} {:<15} {}{}  -- {}",
                s.id, s.kind, claim, params, s.anchor
            );
            std::iter::once(head).chain(s.alternates.iter().map(|a| {
                format!(
                    "{:<14} {:<15} alternate reading: {} (claims {})",
                    "", "", a.label, a.claim
                )
            }))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_id() {
        assert_eq!(
            run_check("nonexistent", &CheckOptions::default()),
            Err(VerifyError::UnknownId("nonexistent".into()))
        );
    }

    #[test]
    fn empty_registry_exits_zero() {
        let s = run_specs(&[], &CheckOptions::default());
        assert_eq!((s.reports.len(), s.exit_code()), (0, 0));
    }

    #[test]
    fn default_grid_sizes() {
        let spec = catalog::lookup("wei-aa").unwrap();
        assert_eq!(grid_points(spec, None).len(), 65);
        let spec = catalog::lookup("wei-ii").unwrap();
        assert_eq!(grid_points(spec, None).len(), 13);
        let spec = catalog::lookup("wei-hh").unwrap();
        assert_eq!(grid_points(spec, None).len(), 45);
    }

    #[test]
    fn digit_count() {
        let c = BigFloat::from_int(2, 100);
        let e = BigFloat::from_rational(&ExactRational::frac(3, 1000), 100);
        assert_eq!(digits_matched(&e, &c, 50), 2);
        let c = BigFloat::from_int(200, 100);
        assert_eq!(digits_matched(&e, &c, 50), 4);
    }
}
