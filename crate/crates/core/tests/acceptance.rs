//! The twelve acceptance criteria. Each prints one PASS/FAIL line.
//!
//! Two criteria are known to be unattainable as stated and are expected to
//! stay red; the test asserts that every other criterion passes and that the
//! expected-red ones still fail, so a change in either direction is noticed.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};

use hyperverify::arith::{eval_constant, BigFloat, ConstantExpr, ExactRational};
use hyperverify::catalog::coefficients::{
    coeff_a, coeff_b, coeff_e, coeff_f, coeff_g, gamma, mu, nu, omega, theta,
};
use hyperverify::catalog::{self, ConvergenceClass, Params, Series};
use hyperverify::engine::{self, BoundKind, SumOptions};
use hyperverify::jets::{JetShape, TaylorJet};
use hyperverify::special::{harmonic, pochhammer};
use hyperverify::verify::{self, CheckOptions, DigitsMatched, Grid, VerificationReport};

type Q = ExactRational;

/// Criteria that cannot pass as written, with the reason printed next to them.
const EXPECTED_RED: [(u32, &str); 2] = [
    (
        3,
        "the -1/8 (1/2)_k^3 series sums to 2*sqrt(2)/pi, not 2*sqrt(3)/pi",
    ),
    (
        9,
        "wei-ii and wei-jj depend on n alone, so n <= 8 admits only 9 points",
    ),
];

struct Outcome {
    number: u32,
    title: &'static str,
    pass: bool,
    detail: Vec<String>,
    elapsed: Duration,
}

struct Criterion {
    pass: bool,
    detail: Vec<String>,
}

impl Criterion {
    fn new() -> Self {
        Criterion {
            pass: true,
            detail: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        self.detail
            .push(format!("{} {what}", if ok { "ok  " } else { "MISS" }));
        self.pass &= ok;
    }
}

fn opts(digits: u32) -> CheckOptions {
    CheckOptions {
        digits,
        ..CheckOptions::default()
    }
}

fn single(id: &str, digits: u32) -> (VerificationReport, Duration) {
    let start = Instant::now();
    let mut r = verify::run_check(id, &opts(digits)).expect("registered id");
    assert_eq!(r.len(), 1, "{id} is a single numeric check");
    (r.remove(0), start.elapsed())
}

fn digits_of(r: &VerificationReport) -> i64 {
    match &r.digits_matched {
        DigitsMatched::Count(n) => *n,
        DigitsMatched::Label(_) => i64::MAX,
    }
}

/// Requires PASS with at least `min_digits` digits and optional term and time limits.
fn numeric(
    c: &mut Criterion,
    id: &str,
    digits: u32,
    min_digits: i64,
    max_terms: Option<u32>,
    max_time: Option<Duration>,
) {
    let (r, t) = single(id, digits);
    c.require(
        r.is_pass() && digits_of(&r) >= min_digits,
        format!(
            "{id}: {} with {} digits (need {min_digits}), err {}, {}",
            r.status, r.digits_matched, r.abs_err, r.bound_kind
        ),
    );
    if let Some(m) = max_terms {
        c.require(
            r.terms_used <= m,
            format!("{id}: {} terms (limit {m})", r.terms_used),
        );
    }
    if let Some(m) = max_time {
        c.require(t < m, format!("{id}: {t:.2?} (limit {m:?})"));
    }
}

/// Correct decimal digits of `value` against `claim`.
fn agreement(value: &BigFloat, claim: &ConstantExpr, p: u32) -> f64 {
    let c = eval_constant(claim, p).unwrap();
    let err = (value - &c).abs();
    if err.is_zero() {
        return f64::INFINITY;
    }
    -(err.log10_abs() - c.log10_abs().max(0.0))
}

/// Measures each competing reading listed for `id`.
fn alternates(c: &mut Criterion, id: &str, digits: u32) {
    let spec = catalog::lookup(id).unwrap();
    let so = SumOptions::new(digits, 10_000);
    let p = so.working_bits();
    for alt in &spec.alternates {
        let value = match &alt.series {
            None => engine::sum_numeric(spec, &Params::None, &so).map(|r| r.value),
            Some(s) => {
                let s = s.clone();
                let f = move |k: u32, prec: u32| Ok(s.term(k, &BigFloat::zero(prec))?);
                match &spec.class {
                    ConvergenceClass::Geometric(rho) => engine::geometric_series(&f, rho, &so),
                    _ => engine::alternating_series(&f, &so),
                }
                .map(|r| r.value)
            }
        };
        let d = value.map_or(0.0, |v| agreement(&v, &alt.claim, p));
        c.detail.push(format!(
            "note {id} reading \"{}\" against {}: {d:.1} digits",
            alt.label, alt.claim
        ));
    }
}

fn criterion_1() -> Criterion {
    let mut c = Criterion::new();
    numeric(
        &mut c,
        "sun-a",
        40,
        40,
        Some(200),
        Some(Duration::from_secs(5)),
    );
    c
}

fn criterion_2() -> Criterion {
    let mut c = Criterion::new();
    for id in ["sun-b", "guillera-a", "guillera-b"] {
        numeric(&mut c, id, 30, 30, None, Some(Duration::from_secs(10)));
    }
    c
}

fn criterion_3() -> Criterion {
    let mut c = Criterion::new();
    numeric(&mut c, "ramanujan-pi", 40, 40, None, None);
    numeric(&mut c, "gosper-pi", 40, 40, None, None);
    alternates(&mut c, "gosper-pi", 40);
    c
}

fn criterion_4() -> Criterion {
    let mut c = Criterion::new();
    numeric(&mut c, "guo-a", 30, 30, None, None);
    numeric(&mut c, "guo-b", 30, 30, None, None);
    let z = Q::zero();
    for (double, single) in [(Series::GuoA, Series::GuoAH), (Series::GuoB, Series::GuoBH)] {
        let bad: Vec<u32> = (0..=100)
            .filter(|&k| double.term(k, &z).unwrap() != single.term(k, &z).unwrap())
            .collect();
        c.require(
            bad.is_empty(),
            format!("{double:?} termwise equal to {single:?} for k <= 100, mismatches {bad:?}"),
        );
    }
    c
}

fn criterion_5() -> Criterion {
    let mut c = Criterion::new();
    for id in ["wei-c", "wei-d", "wei-e", "wei-f"] {
        numeric(&mut c, id, 30, 30, Some(600), None);
    }
    alternates(&mut c, "wei-f", 30);
    c
}

fn criterion_6() -> Criterion {
    let mut c = Criterion::new();
    let so = SumOptions::new(30, 400);
    let r = engine::sum_levin("wei-b", &Params::None, &so);
    let Ok(r) = r else {
        c.require(false, format!("wei-b: {}", r.unwrap_err()));
        return c;
    };
    let oracle = eval_constant(
        &(ConstantExpr::int(2) * ConstantExpr::beta(4)),
        so.working_bits(),
    )
    .unwrap();
    let actual = (&r.value - &oracle).abs().to_f64();
    let estimate = r.error_bound.to_f64();
    c.require(
        r.bound_kind == BoundKind::Heuristic,
        format!("wei-b: bound is {}", r.bound_kind),
    );
    c.require(
        r.terms_used <= 400,
        format!("wei-b: {} terms (limit 400)", r.terms_used),
    );
    c.require(
        estimate <= 1e-10,
        format!("wei-b: estimated error {estimate:.3e} (limit 1e-10)"),
    );
    c.require(
        actual <= 1e-8,
        format!("wei-b: actual error {actual:.3e} against 2*beta(4) (limit 1e-8)"),
    );
    c
}

fn criterion_7() -> Criterion {
    let mut c = Criterion::new();
    for id in [
        "wei-cc", "wei-dd", "wei-ee", "wei-bt", "wei-ct", "wei-et", "wei-ft", "wei-ht", "wei-it",
        "wei-lt", "wei-mt",
    ] {
        numeric(&mut c, id, 30, 30, None, None);
    }
    for id in [
        "combo-bt-ct",
        "combo-et-ft",
        "combo-ht-it",
        "combo-lt-mt",
        "combo-cc-dd",
    ] {
        numeric(&mut c, id, 30, 25, None, None);
    }
    let z = Q::zero();
    let et_ft_is_d = (0..=60).all(|k| {
        Series::WeiET.term(k, &z).unwrap() - Q::from_int(4) * Series::WeiFT.term(k, &z).unwrap()
            == Series::WeiD.term(k, &z).unwrap()
    });
    c.require(
        et_ft_is_d,
        "wei-et - 4 wei-ft equals the wei-d summand for k <= 60",
    );
    for id in ["wei-cc", "wei-ee", "wei-et"] {
        alternates(&mut c, id, 30);
    }
    c
}

fn criterion_8() -> Criterion {
    let mut c = Criterion::new();
    let start = Instant::now();
    for id in ["whipple", "wei-aa", "wei-at", "wei-dt", "wei-gt", "wei-jt"] {
        let reports = verify::run_check(id, &opts(30)).unwrap();
        let pass = reports.iter().filter(|r| r.is_pass()).count();
        let fail = reports.iter().filter(|r| r.is_fail()).count();
        let skip = reports.iter().filter(|r| r.is_skip()).count();
        let all_exact = reports
            .iter()
            .filter(|r| r.is_pass())
            .all(|r| r.digits_matched == DigitsMatched::exact());
        c.require(
            pass >= 50 && fail == 0 && all_exact,
            format!("{id}: {pass} exact PASS, {fail} FAIL, {skip} SKIP"),
        );
    }
    let t = start.elapsed();
    c.require(
        t < Duration::from_secs(60),
        format!("total {t:.2?} (limit 60s)"),
    );
    c
}

fn criterion_9() -> Criterion {
    let mut c = Criterion::new();
    let ids = ["wei-bb", "wei-ff", "wei-gg", "wei-hh", "wei-ii", "wei-jj"];
    let grid_text: String = ids
        .iter()
        .flat_map(|id| {
            verify::DEFAULT_X
                .iter()
                .map(move |(p, q)| format!("{id} {p}/{q} 8\n"))
        })
        .collect();
    let grid: Grid = grid_text.parse().unwrap();
    let o = CheckOptions {
        grid: Some(grid),
        ..opts(30)
    };
    for id in ids {
        let reports = verify::run_check(id, &o).unwrap();
        let pass = reports
            .iter()
            .filter(|r| r.is_pass() && r.digits_matched == DigitsMatched::exact())
            .count();
        let fail = reports.iter().filter(|r| r.is_fail()).count();
        c.require(
            pass >= 10 && fail == 0,
            format!("{id}: {pass} exact PASS at n <= 8 (need 10), {fail} FAIL"),
        );
    }
    for id in ["wei-ii", "wei-jj"] {
        let reports = verify::run_check(id, &opts(30)).unwrap();
        let pass = reports.iter().filter(|r| r.is_pass()).count();
        c.detail.push(format!(
            "note {id}: {pass} of {} exact PASS at n <= 12",
            reports.len()
        ));
    }
    c
}

fn criterion_10() -> Criterion {
    let mut c = Criterion::new();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(10);
    let sh = JetShape::new(1, 1).unwrap();
    let (mut checked, mut poles, mut bad) = (0, 0, 0);
    let mut xs = 0;
    while xs < 50 {
        let x0 = Q::frac(rng.gen_range(-200..=200), rng.gen_range(1..=37));
        xs += 1;
        let x = TaylorJet::variable(x0.clone(), 1, sh).unwrap();
        for n in 0..=30u32 {
            let h1 = harmonic(n, 1, &(x0.clone() - Q::one()));
            match h1 {
                Ok(h1) => {
                    let d = pochhammer(&x, n).derivative(1, 0).unwrap();
                    bad += usize::from(d != pochhammer(&x0, n) * h1);
                    checked += 1;
                }
                Err(_) => poles += 1,
            }
            match (harmonic(n, 1, &x), harmonic(n, 2, &x0)) {
                (Ok(hx), Ok(h2)) => {
                    bad += usize::from(hx.derivative(1, 0).unwrap() != -h2);
                    checked += 1;
                }
                _ => poles += 1,
            }
        }
    }
    c.require(
        bad == 0 && checked > 0,
        format!("50 x, n <= 30: {checked} exact checks, {bad} mismatches, {poles} poles"),
    );
    c
}

fn criterion_11() -> Criterion {
    type Side = fn(&Q, &Q, u32) -> Result<Q, hyperverify::arith::ArithError>;
    let sides: [(&str, Side, Side); 5] = [
        (
            "A = mu",
            |x, n, k| coeff_a(x, n, k),
            |x, n, k| {
                mu(
                    &[
                        Q::one(),
                        x.clone(),
                        Q::one() - x.clone(),
                        Q::frac(1, 2),
                        -n.clone(),
                    ],
                    k,
                )
            },
        ),
        (
            "B = nu",
            |x, n, k| coeff_b(x, n, k),
            |x, n, k| {
                nu(
                    &[
                        Q::one(),
                        Q::frac(1, 2),
                        x.clone(),
                        Q::one() - x.clone(),
                        -n.clone(),
                    ],
                    k,
                )
            },
        ),
        (
            "E = omega",
            |x, n, k| coeff_e(x, n, k),
            |x, n, k| {
                omega(
                    &[
                        Q::one(),
                        x.clone(),
                        Q::frac(1, 2),
                        Q::one() - x.clone(),
                        -n.clone(),
                    ],
                    k,
                )
            },
        ),
        (
            "F = 2 gamma",
            |x, n, k| coeff_f(x, n, k),
            |x, n, k| {
                let a = [
                    Q::frac(3, 2),
                    Q::one(),
                    -n.clone(),
                    x.clone(),
                    Q::from_int(2) - x.clone(),
                ];
                Ok(Q::from_int(2) * gamma(&a, k)?)
            },
        ),
        (
            "G = 2 theta",
            |x, n, k| coeff_g(x, n, k),
            |x, n, k| {
                let a = [
                    Q::frac(3, 2),
                    Q::one(),
                    x.clone(),
                    Q::from_int(2) - x.clone(),
                    -n.clone(),
                ];
                Ok(Q::from_int(2) * theta(&a, k)?)
            },
        ),
    ];
    let mut c = Criterion::new();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for (label, lhs, rhs) in sides {
        let (mut equal, mut mismatch, mut tries) = (0, 0, 0);
        while equal + mismatch < 20 && tries < 500 {
            tries += 1;
            let x = Q::frac(rng.gen_range(-60..=60), rng.gen_range(2..=31));
            let n = Q::from_int(rng.gen_range(0..=12));
            let k = rng.gen_range(0..=12);
            match (lhs(&x, &n, k), rhs(&x, &n, k)) {
                (Ok(l), Ok(r)) if l == r => equal += 1,
                (Err(_), Err(_)) => {}
                _ => mismatch += 1,
            }
        }
        c.require(
            equal == 20 && mismatch == 0,
            format!("{label}: {equal} exact matches, {mismatch} mismatches"),
        );
    }
    c
}

fn criterion_12() -> Criterion {
    let mut c = Criterion::new();
    numeric(&mut c, "gosper-4f3", 30, 25, None, None);
    c
}

type Entry = (u32, &'static str, fn() -> Criterion);

#[test]
fn acceptance_criteria() {
    let table: [Entry; 12] = [
        (1, "sun-a geometric sum to 40 digits", criterion_1),
        (2, "sun-b, guillera-a, guillera-b to 30 digits", criterion_2),
        (3, "ramanujan-pi and gosper-pi to 40 digits", criterion_3),
        (4, "guo-a, guo-b and their harmonic rewrites", criterion_4),
        (5, "wei-c, wei-d, wei-e, wei-f", criterion_5),
        (6, "wei-b by Levin acceleration", criterion_6),
        (7, "intermediate limits and combinations", criterion_7),
        (8, "terminating identities on the default grid", criterion_8),
        (9, "differentiated identities at n <= 8", criterion_9),
        (
            10,
            "derivative laws for Pochhammer and harmonic",
            criterion_10,
        ),
        (11, "coefficient specializations", criterion_11),
        (12, "4F3 closed form at (1/2, 1/3)", criterion_12),
    ];
    let outcomes: Vec<Outcome> = table
        .iter()
        .map(|&(number, title, run)| {
            let start = Instant::now();
            let c = run();
            Outcome {
                number,
                title,
                pass: c.pass,
                detail: c.detail,
                elapsed: start.elapsed(),
            }
        })
        .collect();

    let mut surprises = Vec::new();
    for o in &outcomes {
        let red = EXPECTED_RED.iter().find(|(n, _)| *n == o.number);
        println!(
            "{} criterion {:>2}: {} ({:.2?})",
            if o.pass { "PASS" } else { "FAIL" },
            o.number,
            o.title,
            o.elapsed
        );
        for line in &o.detail {
            println!("      {line}");
        }
        if let Some((_, why)) = red {
            println!("      expected red: {why}");
        }
        if o.pass == red.is_some() {
            surprises.push(o.number);
        }
    }
    let passed = outcomes.iter().filter(|o| o.pass).count();
    println!("{passed}/12 criteria pass");
    assert!(
        surprises.is_empty(),
        "criteria with unexpected outcome: {surprises:?}"
    );
}
