use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use isog7_core::census::{
    compare_records, count_from_records, count_rational_brute, enumerate_brute_with,
    enumerate_census_with, j_invariants_distinct, m_sieve_identity, twist_sieve_identity,
    CurveRecord, BRUTE_GUARD, RATIONAL_BRUTE_GUARD,
};
use isog7_core::constants::{
    area_r_mc_with, compute_bundle, compute_kappa, predict_counts, BundleConfig, ConstantsBundle,
};
use isog7_core::forms::{eval_ab, height_h, DEFECT_BOUND};
use isog7_core::multfun::q_bounds_with;
use isog7_core::normform::RepTable;
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::cli::{Cli, Command, Format, RunConfig};
use crate::output::{big, discrepancy_json, exact, write_csv, write_json, write_table};
use crate::{cache, CliError, OUTPUT_DIR_ENV};

/// Discrepancies listed in a failing verify report.
const MAX_LISTED: usize = 10;

fn resolve_output(p: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if p.is_relative() => Path::new(&dir).join(p),
        _ => p.to_path_buf(),
    }
}

fn open(output: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match output {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn at_least_one(x: &BigUint) -> Result<(), CliError> {
    if *x < BigUint::from(1u32) {
        return Err(CliError::Usage(format!(
            "--max-height must be at least 1, got {x}"
        )));
    }
    Ok(())
}

fn f64_of(x: &BigUint) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

/// Runs one command.
pub fn run(cli: Cli) -> Result<(), CliError> {
    let threads = match cli.threads {
        Some(0) => return Err(CliError::Usage("--threads must be at least 1".into())),
        Some(n) => n,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let output = cli.output.as_deref().map(resolve_output);
    let config = RunConfig::new(&cli, threads, output.as_deref());
    eprintln!("isog7 config: {}", serde_json::to_string(&config)?);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let parallel = threads > 1;
    pool.install(|| dispatch(&cli.command, &config, output.as_deref(), parallel))
}

fn dispatch(
    cmd: &Command,
    config: &RunConfig,
    output: Option<&Path>,
    parallel: bool,
) -> Result<(), CliError> {
    match cmd {
        Command::Enumerate {
            max_height,
            format,
            table_cache,
        } => {
            at_least_one(max_height)?;
            let records = census(max_height, table_cache.as_deref(), parallel)?;
            let mut w = open(output)?;
            match format {
                Format::Csv => write_csv(&mut w, &records)?,
                Format::Json => write_json(&mut w, &records)?,
            }
            w.flush()?;
            Ok(())
        }
        Command::Count {
            max_height,
            prime_bound,
            mc_samples,
            seed,
            table_cache,
        } => {
            at_least_one(max_height)?;
            let q = q_bounds_with(*prime_bound, parallel)?;
            let r = area_r_mc_with(*mc_samples, *seed, parallel)?;
            let qr = q.midpoint() * r.estimate;
            let records = census(max_height, table_cache.as_deref(), parallel)?;
            let report = count_from_records(&records, max_height, qr);
            let histogram: Vec<Value> = report
                .histogram
                .iter()
                .map(|(h, n)| json!([big(h), n]))
                .collect();
            let doc = json!({
                "config": config,
                "X": big(&report.x),
                "n_tw": report.n_tw,
                "n_rational": report.n_rational,
                "ratio_check": report.ratio_check,
                "QR": qr,
                "histogram": histogram,
            });
            emit(output, &doc)
        }
        Command::Constants {
            prime_bound,
            mc_samples,
            seed,
            census_cutoff,
        } => {
            at_least_one(census_cutoff)?;
            let bundle = compute_bundle(&BundleConfig {
                prime_bound: *prime_bound,
                mc_samples: *mc_samples,
                seed: *seed,
                census_cutoff: census_cutoff.clone(),
            })?;
            emit(output, &constants_json(config, &bundle, census_cutoff))
        }
        Command::Verify {
            max_height,
            corrupt_record,
        } => {
            at_least_one(max_height)?;
            if *max_height > BigUint::from(BRUTE_GUARD) {
                return Err(CliError::Usage(format!(
                    "--max-height {max_height} is above the oracle guard {BRUTE_GUARD}"
                )));
            }
            let (doc, passed) = verify(config, max_height, *corrupt_record, parallel)?;
            emit(output, &doc)?;
            if passed {
                Ok(())
            } else {
                Err(CliError::VerificationFailed)
            }
        }
        Command::Table { max_height } => {
            at_least_one(max_height)?;
            let records = census(max_height, None, parallel)?;
            let mut w = open(output)?;
            write_table(&mut w, &records)?;
            w.flush()?;
            Ok(())
        }
    }
}

fn census(
    x: &BigUint,
    table_cache: Option<&Path>,
    parallel: bool,
) -> Result<Vec<CurveRecord>, CliError> {
    let table: Option<RepTable> = match table_cache {
        Some(p) => Some(cache::load_or_build(
            p,
            isog7_core::census::census_table_bound(x),
        )?),
        None => None,
    };
    Ok(enumerate_census_with(x, table.as_ref(), parallel)?)
}

fn emit(output: Option<&Path>, doc: &Value) -> Result<(), CliError> {
    let mut w = open(output)?;
    serde_json::to_writer_pretty(&mut w, doc)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn constants_json(config: &RunConfig, b: &ConstantsBundle, cutoff: &BigUint) -> Value {
    let u = f64_of(cutoff);
    let (pred_tw, pred_rational) = predict_counts(u, b);
    json!({
        "config": config,
        "Q": {
            "lower": exact(b.q.lower.to_decimal(20)),
            "upper": exact(b.q.upper.to_decimal(20)),
            "midpoint": b.q.midpoint(),
            "width": b.q.width(),
            "prime_bound": b.q.prime_bound,
            "certified": b.q.certified,
        },
        "R": {
            "estimate": b.r.estimate,
            "std_error": b.r.std_error,
            "hits": b.r.hits,
            "samples": b.r.samples,
            "seed": b.r.seed,
            "rng": "ChaCha8, stream i for samples [i*2^20, (i+1)*2^20)",
        },
        "kappa": {
            "max": b.kappa.max,
            "argmax": [b.kappa.argmax.0, b.kappa.argmax.1],
            "min": b.kappa.min,
            "argmin": [b.kappa.argmin.0, b.kappa.argmin.1],
        },
        "ell0": {
            "value": b.ell0.ell0,
            "census_cutoff": big(cutoff),
            "census_size": b.census_size,
            "empirical_M_proved_model": b.ell0.m_proved,
            "empirical_M_conjectured_model": b.ell0.m_conjectured,
            "truncation_error_proved_model": b.ell0.trunc_proved,
            "truncation_error_conjectured_model": b.ell0.trunc_conjectured,
            "qr_error_contribution": b.ell0.qr_sensitivity * b.qr_error(),
        },
        "c1": { "value": b.c1, "error": b.c1_error },
        "c2": {
            "value": b.c2,
            "error_proved_model": b.c2_error_proved,
            "error_conjectured_model": b.c2_error_conjectured,
        },
        "QR": b.qr(),
        "zeta2": b.zeta2,
        "zeta_prime_2": b.zeta_prime_2,
        "euler_gamma": b.euler_gamma,
        "prediction_at_cutoff": {
            "pred_tw": pred_tw,
            "pred_rational": pred_rational,
            "n_tw": b.census_size,
        },
    })
}

struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn check(name: &'static str, passed: bool, detail: String) -> Check {
    Check {
        name,
        passed,
        detail,
    }
}

fn verify(
    config: &RunConfig,
    x: &BigUint,
    corrupt: Option<usize>,
    parallel: bool,
) -> Result<(Value, bool), CliError> {
    let mut records = enumerate_census_with(x, None, parallel)?;
    if let Some(r) = corrupt.and_then(|i| records.get_mut(i)) {
        r.twist_defect += 1;
    }
    let brute = enumerate_brute_with(x, parallel)?;
    let diffs = compare_records(&brute, &records);
    let mut checks = vec![check(
        "census_vs_brute",
        diffs.is_empty(),
        format!("{} records, {} discrepancies", records.len(), diffs.len()),
    )];

    if *x <= BigUint::from(RATIONAL_BRUTE_GUARD) {
        let fast = count_from_records(&records, x, 1.0).n_rational;
        let slow = count_rational_brute(x)?;
        checks.push(check(
            "rational_count_vs_brute",
            fast == slow,
            format!("census {fast}, brute {slow}"),
        ));
    }

    checks.push(check(
        "distinct_j_invariants",
        j_invariants_distinct(&records),
        String::new(),
    ));

    let kappa = compute_kappa().max;
    let mut bad_sandwich = 0;
    let mut bad_defect = 0;
    for r in &records {
        let (a, b) = r.pair.pair();
        let h = height_h(&eval_ab(a, b));
        let c6 = BigUint::from(r.c_value).pow(6);
        let upper = f64_of(&c6) * kappa * (1.0 + 1e-12);
        if h < &c6 * 108u32 || f64_of(&h) > upper {
            bad_sandwich += 1;
        }
        let limit = DEFECT_BOUND * f64_of(&r.twist_height).powf(1.0 / 12.0);
        if r.twist_defect as f64 > limit {
            bad_defect += 1;
        }
    }
    checks.push(check(
        "height_sandwich",
        bad_sandwich == 0,
        format!("{bad_sandwich} violations"),
    ));
    checks.push(check(
        "defect_bound",
        bad_defect == 0,
        format!("{bad_defect} violations"),
    ));

    let mut failed_m = Vec::new();
    for e in 1..=20 {
        let (l, r) = m_sieve_identity(x, e)?;
        if l as i64 != r {
            failed_m.push(e);
        }
    }
    checks.push(check(
        "sieve_identity_M",
        failed_m.is_empty(),
        format!("e = 1..20, failing e: {failed_m:?}"),
    ));
    let mut failed_tw = Vec::new();
    for e in [1, 3, 7, 21] {
        let (l, r) = twist_sieve_identity(&records, x, e)?;
        if l as i64 != r {
            failed_tw.push(e);
        }
    }
    checks.push(check(
        "sieve_identity_twist",
        failed_tw.is_empty(),
        format!("e in [1, 3, 7, 21], failing e: {failed_tw:?}"),
    ));

    let passed = checks.iter().all(|c| c.passed);
    let checks: Vec<Value> = checks
        .iter()
        .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
        .collect();
    let listed: Vec<Value> = diffs
        .iter()
        .take(MAX_LISTED)
        .map(discrepancy_json)
        .collect();
    let doc = json!({
        "config": config,
        "passed": passed,
        "checks": checks,
        "discrepancies": listed,
    });
    Ok((doc, passed))
}
