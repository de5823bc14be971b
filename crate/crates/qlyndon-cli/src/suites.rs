//! Drivers for the verification suites: each wraps the corresponding library
//! sweep, fans independent cases out on the worker pool, and reports counts
//! and timings in text or JSON. A suite that finds a counterexample surfaces
//! it as a verification failure, which the entry point turns into exit code 1.

use std::time::Instant;

use qlyndon::foshuffle::{
    upsilon_monomial, verify_composition, verify_image_constraints, wheel_check, WheelOutcome,
};
use qlyndon::lyndon::LoopLyndon;
use qlyndon::rootsys::{RootSystem, RootVec};
use qlyndon::shuffle::{
    verify_leading_words_finite, verify_leading_words_loop, verify_pbw_triangularity,
    verify_rel0_loop, verify_serre_finite, verify_serre_loop,
};
use qlyndon::weyl::AffineWeyl;
use qlyndon::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::{print_json, usage_error, Format, Suite, VerifyArgs};

pub fn run(args: &VerifyArgs) -> Result<()> {
    let rs = args.sys.system()?;
    let label = rs.cartan_type().to_string();
    let started = Instant::now();
    let outcome = dispatch(args, &rs);
    let elapsed = started.elapsed();
    match outcome {
        Ok((cases, params)) => {
            match args.sys.format {
                Format::Text => println!(
                    "{} on {label} passed: {cases} cases in {:.2} s",
                    args.suite.name(),
                    elapsed.as_secs_f64(),
                ),
                Format::Json => print_json(&json!({
                    "suite": args.suite.name(),
                    "type": label,
                    "status": "pass",
                    "cases": cases,
                    "elapsed_ms": elapsed.as_millis() as u64,
                    "params": params,
                })),
            }
            Ok(())
        }
        Err(Error::VerificationFailed(msg)) => {
            if args.sys.format == Format::Json {
                print_json(&json!({
                    "suite": args.suite.name(),
                    "type": label,
                    "status": "fail",
                    "counterexample": msg,
                    "elapsed_ms": elapsed.as_millis() as u64,
                }));
            }
            Err(Error::VerificationFailed(msg))
        }
        Err(e) => Err(e),
    }
}

fn dispatch(args: &VerifyArgs, rs: &RootSystem) -> Result<(usize, serde_json::Value)> {
    match args.suite {
        Suite::Convexity | Suite::ExponentBounds | Suite::Monotone | Suite::Periodicity => {
            let mult = args.window.unwrap_or(2);
            if mult < 1 {
                usage_error(format!("--window must be positive, got {mult}"));
            }
            let dict = LoopLyndon::new(rs);
            let cases = match args.suite {
                Suite::Convexity => dict.verify_convexity(mult)?,
                Suite::ExponentBounds => dict.verify_exponent_bounds(mult)?,
                Suite::Monotone => dict.verify_monotone(mult)?,
                _ => dict.verify_periodicity(mult)?,
            };
            Ok((cases, json!({ "window": mult })))
        }
        Suite::WeylOrder => {
            let count = args.count.unwrap_or(50);
            if count < 1 {
                usage_error(format!("--count must be positive, got {count}"));
            }
            let dict = LoopLyndon::new(rs);
            let weyl = AffineWeyl::new(&dict)?;
            let height_sum: i64 = rs.positive_roots().iter().map(|a| a.height()).sum();
            if weyl.length() as i64 != height_sum {
                return Err(Error::VerificationFailed(format!(
                    "translation length {} differs from the height sum {height_sum}",
                    weyl.length(),
                )));
            }
            let cases = weyl.verify_sequence(count)?;
            Ok((
                cases + 1,
                json!({
                    "count": count,
                    "length": weyl.length(),
                    "reduced_word": weyl.reduced_word(),
                    "twist": weyl.twist(),
                }),
            ))
        }
        Suite::Serre => {
            let bound = args.window.unwrap_or(1);
            if bound < 0 {
                usage_error(format!("--window must be a mode bound >= 0, got {bound}"));
            }
            let (lo, hi) = (-(bound + 2), bound + 2);
            let finite = verify_serre_finite(rs)?;
            let loop_serre = verify_serre_loop(rs, bound, lo, hi)?;
            let rel0 = verify_rel0_loop(rs, bound, lo, hi)?;
            Ok((
                finite + loop_serre + rel0,
                json!({
                    "mode_bound": bound,
                    "window": [lo, hi],
                    "finite_pairs": finite,
                    "loop_serre_tuples": loop_serre,
                    "cleared_relation_tuples": rel0,
                }),
            ))
        }
        Suite::LeadingWord => {
            let dict = LoopLyndon::new(rs);
            let finite = verify_leading_words_finite(&dict)?;
            let loops = verify_leading_words_loop(&dict)?;
            Ok((
                finite + loops,
                json!({ "finite_roots": finite, "loop_pairs": loops }),
            ))
        }
        Suite::Pbw => {
            let height = args.count.unwrap_or(4);
            if height < 1 {
                usage_error(format!("--count must be a positive height bound, got {height}"));
            }
            let dict = LoopLyndon::new(rs);
            let mut jobs: Vec<(RootVec, i64)> = Vec::new();
            for degree in degrees_up_to(rs.rank(), height) {
                for d in 0..=degree.height() {
                    jobs.push((degree.clone(), d));
                }
            }
            let cases = jobs
                .par_iter()
                .map(|(degree, d)| verify_pbw_triangularity(&dict, degree, *d, -1, d + 1))
                .try_reduce(|| 0, |a, b| Ok(a + b))?;
            Ok((cases, json!({ "height": height, "bidegrees": jobs.len() })))
        }
        Suite::Composition => {
            let samples = args.count.unwrap_or(25);
            if samples < 1 {
                usage_error(format!("--count must be positive, got {samples}"));
            }
            let bound = args.window.unwrap_or(1);
            if bound < 0 {
                usage_error(format!("--window must be an exponent bound >= 0, got {bound}"));
            }
            let max_len = 3;
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let products: Vec<Vec<(usize, i64)>> = (0..samples)
                .map(|_| {
                    let len = rng.gen_range(1..=max_len);
                    (0..len)
                        .map(|_| (rng.gen_range(1..=rs.rank()), rng.gen_range(-bound..=bound)))
                        .collect()
                })
                .collect();
            let cases = products
                .par_iter()
                .map(|letters| {
                    let lo = letters.iter().map(|&(_, e)| e.min(0)).sum::<i64>() - 1;
                    let hi = letters.iter().map(|&(_, e)| e.max(0)).sum::<i64>() + 1;
                    verify_composition(rs, letters, lo, hi)
                })
                .try_reduce(|| 0, |a, b| Ok(a + b))?;
            Ok((
                cases,
                json!({
                    "samples": samples,
                    "max_length": max_len,
                    "exponent_bound": bound,
                    "seed": args.seed,
                }),
            ))
        }
        Suite::FoConstraints => {
            let window = args.window.unwrap_or(2);
            if window < 0 {
                usage_error(format!("--window must be >= 0, got {window}"));
            }
            let max_len = args.count.unwrap_or(2);
            if max_len < 1 {
                usage_error(format!("--count must be a positive factor count, got {max_len}"));
            }
            let seqs = color_sequences_up_to(rs.rank(), max_len as usize);
            let results: Vec<(usize, serde_json::Value)> = seqs
                .par_iter()
                .map(|seq| {
                    let letters: Vec<(usize, i64)> = seq.iter().map(|&c| (c, 0)).collect();
                    let r = upsilon_monomial(rs, &letters)?;
                    let mut wheel_pairs = 0;
                    for i in 1..=rs.rank() {
                        for j in 1..=rs.rank() {
                            if i == j {
                                continue;
                            }
                            if wheel_check(rs, r.numerator(), i, j)? == WheelOutcome::Violated {
                                return Err(Error::VerificationFailed(format!(
                                    "wheel condition violated at colors ({i}, {j}) \
                                     for the product over colors {seq:?}"
                                )));
                            }
                            wheel_pairs += 1;
                        }
                    }
                    let report = verify_image_constraints(rs, &r, -window, window)?;
                    let cases = wheel_pairs
                        + report.boundedness_checked
                        + report.constraint1_checked
                        + report.constraint2_checked
                        + report.constraint3_checked;
                    Ok((cases, json!({ "colors": seq, "report": report.to_json() })))
                })
                .collect::<Result<Vec<_>>>()?;
            let cases = results.iter().map(|r| r.0).sum();
            let products: Vec<serde_json::Value> = results.into_iter().map(|r| r.1).collect();
            Ok((
                cases,
                json!({
                    "window": [-window, window],
                    "max_length": max_len,
                    "products": products,
                }),
            ))
        }
    }
}

/// Nonzero vectors of ℕ^rank with height at most `height`.
fn degrees_up_to(rank: usize, height: i64) -> Vec<RootVec> {
    let mut out = Vec::new();
    let mut coeffs = vec![0i64; rank];
    fn fill(out: &mut Vec<RootVec>, coeffs: &mut Vec<i64>, pos: usize, budget: i64) {
        if pos == coeffs.len() {
            let v = RootVec::from_coeffs(coeffs.clone());
            if !v.is_zero() {
                out.push(v);
            }
            return;
        }
        for c in 0..=budget {
            coeffs[pos] = c;
            fill(out, coeffs, pos + 1, budget - c);
            coeffs[pos] = 0;
        }
    }
    fill(&mut out, &mut coeffs, 0, height);
    out
}

/// All color sequences of length 1..=max_len, in length-then-lex order.
fn color_sequences_up_to(rank: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn fill(out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, rank: usize, left: usize) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for c in 1..=rank {
            cur.push(c);
            fill(out, cur, rank, left - 1);
            cur.pop();
        }
    }
    for len in 1..=max_len {
        fill(&mut out, &mut cur, rank, len);
    }
    out
}
