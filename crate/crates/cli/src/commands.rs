use std::path::PathBuf;
use std::time::Instant;

use rootdeg::field::FieldContext;
use rootdeg::poly::DensePoly;
use rootdeg::roots::{
    construct_3mod4, construct_5mod8, construct_tth_special, failing_residues,
    squares_to_x_cyclically, RootTask,
};
use rootdeg::search::{
    degree_bounds, equidist_stats, kernel_sign_search_with, min_degree_robust_with, random_y,
    SearchOptions, DEFAULT_MAX_ASSIGNMENTS,
};
use rootdeg::series::{default_order, RationalPoly};
use rootdeg::zero_run::{abc_check, check_binomial_run, check_exp_run, check_power_run, gap_abc};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::{Cli, Command, Failure, RunMode, Variant, CAP_ENV};

/// A rendered document plus an optional theorem violation, reported after
/// the document is printed.
pub struct Outcome {
    pub doc: Map<String, Value>,
    pub violation: Option<String>,
}

fn to_map<T: Serialize>(value: &T) -> Map<String, Value> {
    match serde_json::to_value(value) {
        Ok(Value::Object(map)) => map,
        _ => Map::new(),
    }
}

fn read_arg(text: &str) -> Result<String, Failure> {
    match text.strip_prefix('@') {
        Some(path) => {
            let path = PathBuf::from(path);
            std::fs::read_to_string(&path).map_err(|e| Failure::io(&path, e))
        }
        None => Ok(text.to_string()),
    }
}

fn read_poly(text: &str, p: u64) -> Result<DensePoly, Failure> {
    Ok(DensePoly::parse(&read_arg(text)?, p)?)
}

fn search_options(threads: usize) -> Result<SearchOptions, Failure> {
    let max_assignments = match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::parse(format!("{CAP_ENV} must be an integer, got {v:?}")))?,
        Err(_) => DEFAULT_MAX_ASSIGNMENTS,
    };
    Ok(SearchOptions {
        threads,
        max_assignments,
    })
}

fn parse_exponent(text: &str) -> Result<(i64, u64), Failure> {
    let bad = || {
        Failure::parse(format!(
            "exponent must look like r/s with s > 0, got {text:?}"
        ))
    };
    let (r, s) = text.split_once('/').unwrap_or((text, "1"));
    let r: i64 = r.trim().parse().map_err(|_| bad())?;
    let s: u64 = s.trim().parse().map_err(|_| bad())?;
    if s == 0 {
        return Err(bad());
    }
    Ok((r, s))
}

fn parse_u64_list(text: &str) -> Result<Vec<u64>, Failure> {
    text.trim_matches(|c| c == '[' || c == ']')
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse()
                .map_err(|_| Failure::parse(format!("expected a nonnegative integer, got {tok:?}")))
        })
        .collect()
}

pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let started = Instant::now();
    let opts = search_options(cli.global.threads)?;
    let mut violation = None;
    let (name, body) = match &cli.command {
        Command::Construct { p, variant, t } => ("construct", construct(*p, *variant, *t)?),
        Command::Verify { p, f, t } => ("verify", verify(*p, f, *t)?),
        Command::Mindeg { p, e, t } => {
            let report = min_degree_robust_with(*p, *t, *e, &opts)?;
            if report.oracle == "exact" && !report.bound_ok {
                violation = Some(format!(
                    "minimum degree {} at p = {} violates {}",
                    report.min_degree, report.p, report.bound
                ));
            }
            ("mindeg", to_map(&report))
        }
        Command::Kernel {
            p,
            t,
            strategy,
            budget,
        } => {
            let report = kernel_sign_search_with(
                *p,
                *t,
                (*strategy).into(),
                *budget,
                cli.global.seed,
                &opts,
            )?;
            ("kernel", to_map(&report))
        }
        Command::Zerorun {
            f,
            mode,
            p,
            t_pow,
            exponent,
            terms,
        } => ("zerorun", zerorun(f, *mode, *p, *t_pow, exponent, *terms)?),
        Command::Abc { p, a, b, c } => {
            let report = abc_check(&read_poly(a, *p)?, &read_poly(b, *p)?, &read_poly(c, *p)?)?;
            ("abc", to_map(&report))
        }
        Command::Equidist { p, t, y, k } => {
            let y = match y {
                Some(text) => parse_u64_list(&read_arg(text)?)?,
                None => random_y(*p, *t, cli.global.seed),
            };
            ("equidist", to_map(&equidist_stats(*p, &y, *k)?))
        }
    };

    let mut doc = Map::new();
    doc.insert("schema".into(), json!("v1"));
    doc.insert("command".into(), json!(name));
    doc.extend(body);
    doc.insert("seed".into(), json!(cli.global.seed));
    if !cli.global.no_run_info {
        let threads = match cli.global.threads {
            0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
            n => n,
        };
        doc.insert(
            "run".into(),
            json!({ "threads": threads, "ms": started.elapsed().as_millis() as u64 }),
        );
    }
    Ok(Outcome { doc, violation })
}

fn construct(p: u64, variant: Variant, t: u64) -> Result<Map<String, Value>, Failure> {
    let ctx = FieldContext::new(p)?;
    let (label, t, f) = match variant {
        Variant::ThreeMod4 => ("3mod4", 2, construct_3mod4(&ctx)?),
        Variant::FiveMod8 => ("5mod8", 2, construct_5mod8(&ctx)?),
        Variant::Tth => ("tth", t, construct_tth_special(&ctx, t)?),
    };
    let task = RootTask::new(&ctx, t)?;
    let mut out = Map::new();
    out.insert("variant".into(), json!(label));
    out.insert("p".into(), json!(p));
    out.insert("t".into(), json!(t));
    out.insert("coeffs".into(), json!(f.to_coeff_string()));
    out.insert("degree".into(), json!(f.degree()));
    out.insert("errors".into(), json!(failing_residues(&f, &task)?.len()));
    if variant == Variant::FiveMod8 {
        out.insert("square_is_x".into(), json!(squares_to_x_cyclically(&f)));
    }
    Ok(out)
}

fn verify(p: u64, f: &str, t: u64) -> Result<Map<String, Value>, Failure> {
    let ctx = FieldContext::new(p)?;
    let task = RootTask::new(&ctx, t)?;
    let f = read_poly(f, p)?;
    let failing = failing_residues(&f, &task)?;
    let mut out = Map::new();
    out.insert("p".into(), json!(p));
    out.insert("t".into(), json!(t));
    out.insert("degree".into(), json!(f.degree()));
    out.insert("e".into(), json!(failing.len()));
    out.insert("failing".into(), json!(failing));
    let bounds = match f.degree().finite() {
        Some(d) => {
            serde_json::to_value(degree_bounds(p, t, d, failing.len())).unwrap_or(Value::Null)
        }
        None => json!([]),
    };
    out.insert("bounds".into(), bounds);
    Ok(out)
}

fn zerorun(
    f: &str,
    mode: RunMode,
    p: Option<u64>,
    t_pow: u64,
    exponent: &str,
    terms: Option<usize>,
) -> Result<Map<String, Value>, Failure> {
    let f = read_arg(f)?;
    let mut out = Map::new();
    match mode {
        RunMode::Power => {
            let p = p.ok_or_else(|| Failure::parse("--mode power needs -p"))?;
            FieldContext::new(p)?;
            let f = DensePoly::parse(&f, p)?;
            let run = check_power_run(&f, t_pow)?;
            out.insert("mode".into(), json!("power"));
            out.insert("p".into(), json!(p));
            out.insert("t".into(), json!(t_pow));
            out.extend(to_map(&run.report));
            out.insert("power".into(), json!(run.power.to_coeff_string()));
            if let Some(gap) = &run.witness {
                let abc = match gap_abc(&f, t_pow, gap) {
                    Ok(r) => serde_json::to_value(r).unwrap_or(Value::Null),
                    Err(e) => json!({ "error": e.to_string() }),
                };
                out.insert("abc".into(), abc);
            }
        }
        RunMode::Binomial | RunMode::Exp => {
            let f = RationalPoly::parse(&f)?;
            let d = f.degree().finite().unwrap_or(0);
            let run = if mode == RunMode::Binomial {
                let (r, s) = parse_exponent(exponent)?;
                let order = terms.unwrap_or_else(|| default_order(s, d));
                out.insert("mode".into(), json!("binomial"));
                out.insert("exponent".into(), json!(format!("{r}/{s}")));
                out.insert("terms".into(), json!(order));
                check_binomial_run(&f, r, s, order)?
            } else {
                let order = terms.unwrap_or_else(|| default_order(1, d));
                out.insert("mode".into(), json!("exp"));
                out.insert("terms".into(), json!(order));
                check_exp_run(&f, order)?
            };
            out.extend(to_map(&run.report));
        }
    }
    Ok(out)
}
