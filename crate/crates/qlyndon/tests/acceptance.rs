//! Acceptance gate: ten end-to-end checks, one per headline guarantee of the
//! library.  Each test prints a single `[PASS]`/`[FAIL]` line (visible under
//! `--nocapture`) and fails the harness on any violation, so
//! `cargo test --test acceptance` doubles as a checklist.

mod common;

use std::time::Instant;

use qlyndon::foshuffle::{
    iota, upsilon_monomial, verify_composition, verify_image_constraints, wheel_check,
    WheelOutcome,
};
use qlyndon::lyndon::{closed_form_word, LoopLyndon};
use qlyndon::qfield::parse_qrat;
use qlyndon::rootsys::{CartanType, RootSystem, RootVec};
use qlyndon::shuffle::{
    verify_leading_words_finite, verify_leading_words_loop, verify_pbw_triangularity,
    verify_rel0_loop, verify_serre_finite, verify_serre_loop,
};
use qlyndon::weyl::AffineWeyl;
use qlyndon::words::Word;

fn sys(label: &str) -> RootSystem {
    RootSystem::new(CartanType::parse(label).unwrap()).unwrap()
}

fn gate(name: &str, run: impl FnOnce() -> Result<String, String>) {
    match run() {
        Ok(detail) => println!("[PASS] {name}: {detail}"),
        Err(msg) => {
            println!("[FAIL] {name}: {msg}");
            panic!("{name}: {msg}");
        }
    }
}

/// Every degree vector with positive entries summing to at most `height`,
/// excluding the zero vector.
fn degrees_up_to(rank: usize, height: i64) -> Vec<RootVec> {
    fn fill(out: &mut Vec<RootVec>, coeffs: &mut Vec<i64>, pos: usize, budget: i64) {
        if pos == coeffs.len() {
            if coeffs.iter().any(|&c| c > 0) {
                out.push(RootVec::from_coeffs(coeffs.clone()));
            }
            return;
        }
        for c in 0..=budget {
            coeffs[pos] = c;
            fill(out, coeffs, pos + 1, budget - c);
        }
        coeffs[pos] = 0;
    }
    let mut out = Vec::new();
    fill(&mut out, &mut vec![0; rank], 0, height);
    out
}

#[test]
fn gate_01_closed_forms_match_the_recursion() {
    gate("closed forms", || {
        let start = Instant::now();
        let labels = [
            "A1", "A2", "A3", "A4", "A5", "A6", "B2", "B3", "B4", "B5", "C2", "C3", "C4", "C5",
            "D4", "D5",
        ];
        let mut words = 0usize;
        for label in labels {
            let rs = sys(label);
            let dict = LoopLyndon::new(&rs);
            for alpha in rs.positive_roots() {
                for d in 1..=alpha.height() {
                    let oracle = common::closed_form_word(rs.cartan_type(), alpha, d);
                    let library = closed_form_word(&rs, alpha, d)
                        .map_err(|e| e.to_string())?
                        .ok_or_else(|| format!("{label}: no closed form for {alpha}"))?;
                    let recursive = dict.word(alpha, d).map_err(|e| e.to_string())?;
                    if oracle != recursive {
                        return Err(format!(
                            "{label}, root {alpha}, d = {d}: table gives {oracle}, \
                             recursion gives {recursive}"
                        ));
                    }
                    if library != oracle {
                        return Err(format!(
                            "{label}, root {alpha}, d = {d}: library closed form {library} \
                             differs from the table {oracle}"
                        ));
                    }
                    words += 1;
                }
            }
        }
        let elapsed = start.elapsed();
        if elapsed.as_secs() >= 60 {
            return Err(format!("took {elapsed:.2?}, budget is 60 s"));
        }
        Ok(format!(
            "{words} dictionary words across {} systems in {elapsed:.2?}",
            labels.len()
        ))
    });
}

#[test]
fn gate_02_convex_order_on_window_two() {
    gate("convex order", || {
        let labels = ["A2", "A3", "A4", "B2", "B3", "C2", "C3", "D4", "G2"];
        let mut cases = 0usize;
        for label in labels {
            let rs = sys(label);
            let dict = LoopLyndon::new(&rs);
            cases += dict.verify_convexity(2).map_err(|e| e.to_string())?;
        }
        Ok(format!("{cases} ordered pairs across {} systems", labels.len()))
    });
}

#[test]
fn gate_03_word_shape_on_window_two() {
    gate("word shape", || {
        let labels = ["A2", "A3", "A4", "B2", "B3", "C2", "C3", "D4", "G2"];
        let mut cases = 0usize;
        for label in labels {
            let rs = sys(label);
            let dict = LoopLyndon::new(&rs);
            cases += dict.verify_exponent_bounds(2).map_err(|e| e.to_string())?;
            cases += dict.verify_monotone(2).map_err(|e| e.to_string())?;
            cases += dict.verify_periodicity(2).map_err(|e| e.to_string())?;
        }
        Ok(format!(
            "{cases} exponent, monotonicity, and shift checks across {} systems",
            labels.len()
        ))
    });
}

#[test]
fn gate_04_affine_weyl_order() {
    gate("affine Weyl order", || {
        let mut detail = Vec::new();
        for label in ["A2", "A3", "B2"] {
            let rs = sys(label);
            let dict = LoopLyndon::new(&rs);
            let weyl = AffineWeyl::new(&dict).map_err(|e| e.to_string())?;
            let height_sum: i64 = rs.positive_roots().iter().map(|a| a.height()).sum();
            if weyl.length() as i64 != height_sum {
                return Err(format!(
                    "{label}: translation length {} differs from the height sum {height_sum}",
                    weyl.length()
                ));
            }
            let cases = weyl.verify_sequence(50).map_err(|e| e.to_string())?;
            detail.push(format!("{label} length {} ({cases} cases)", weyl.length()));
        }
        Ok(detail.join(", "))
    });
}

#[test]
fn gate_05_leading_words_finite() {
    gate("finite leading words", || {
        let start = Instant::now();
        let labels = ["A2", "A3", "B2", "C2", "G2"];
        let mut roots = 0usize;
        for label in labels {
            let rs = sys(label);
            let dict = LoopLyndon::new(&rs);
            roots += verify_leading_words_finite(&dict).map_err(|e| e.to_string())?;
        }
        let elapsed = start.elapsed();
        if elapsed.as_secs() >= 30 {
            return Err(format!("took {elapsed:.2?}, budget is 30 s"));
        }
        Ok(format!(
            "{roots} roots across {} systems in {elapsed:.2?}",
            labels.len()
        ))
    });
}

#[test]
fn gate_06_leading_words_loop() {
    gate("loop leading words", || {
        let mut detail = Vec::new();
        for (label, expected) in [("A2", 7), ("B2", 11)] {
            let rs = sys(label);
            let dict = LoopLyndon::new(&rs);
            let pairs = verify_leading_words_loop(&dict).map_err(|e| e.to_string())?;
            if pairs != expected {
                return Err(format!(
                    "{label}: expected {expected} certified pairs, verifier covered {pairs}"
                ));
            }
            detail.push(format!("{label} {pairs} pairs"));
        }
        Ok(detail.join(", "))
    });
}

#[test]
fn gate_07_serre_relations() {
    gate("Serre relations", || {
        let mut finite = 0usize;
        for label in ["A2", "B2", "C2", "G2"] {
            let rs = sys(label);
            finite += verify_serre_finite(&rs).map_err(|e| e.to_string())?;
        }
        let a2 = sys("A2");
        let loop_tuples = verify_serre_loop(&a2, 2, -4, 4).map_err(|e| e.to_string())?;
        let cleared = verify_rel0_loop(&a2, 2, -4, 4).map_err(|e| e.to_string())?;
        Ok(format!(
            "{finite} finite pairs, {loop_tuples} loop Serre tuples and {cleared} cleared \
             degree-two tuples with modes in [-2, 2]"
        ))
    });
}

#[test]
fn gate_08_embedding_composition() {
    gate("embedding composition", || {
        let a2 = sys("A2");

        let ups = upsilon_monomial(&a2, &[(1, 0), (2, 0)]).map_err(|e| e.to_string())?;
        let el = iota(&a2, &ups, -3, 3).map_err(|e| e.to_string())?;
        let anchor = Word::parse("[2^(1) 1^(-1)]").unwrap();
        let got = el.coeff(&anchor).map_err(|e| e.to_string())?;
        let expected = parse_qrat("q^-2 - 1").unwrap();
        if got != expected {
            return Err(format!("coefficient of {anchor} is {got}, expected {expected}"));
        }

        let alphabet: Vec<(usize, i64)> = (1..=2)
            .flat_map(|c| (-1..=1).map(move |e| (c, e)))
            .collect();
        let mut products: Vec<Vec<(usize, i64)>> =
            alphabet.iter().map(|&l| vec![l]).collect();
        for len in 2..=3 {
            let shorter: Vec<Vec<(usize, i64)>> =
                products.iter().filter(|p| p.len() == len - 1).cloned().collect();
            for p in shorter {
                for &l in &alphabet {
                    let mut q = p.clone();
                    q.push(l);
                    products.push(q);
                }
            }
        }
        let mut words = 0usize;
        for letters in &products {
            let lo = letters.iter().map(|&(_, e)| e.min(0)).sum::<i64>() - 1;
            let hi = letters.iter().map(|&(_, e)| e.max(0)).sum::<i64>() + 1;
            words += verify_composition(&a2, letters, lo, hi).map_err(|e| e.to_string())?;
        }
        Ok(format!(
            "{} generator products compared on {words} words, anchor coefficient {expected}",
            products.len()
        ))
    });
}

#[test]
fn gate_09_pbw_triangularity() {
    gate("triangular images", || {
        let mut words = 0usize;
        let mut bidegrees = 0usize;
        for label in ["A2", "B2"] {
            let rs = sys(label);
            let dict = LoopLyndon::new(&rs);
            for degree in degrees_up_to(rs.rank(), 4) {
                for d in 0..=degree.height() {
                    words += verify_pbw_triangularity(&dict, &degree, d, -1, d + 1)
                        .map_err(|e| e.to_string())?;
                    bidegrees += 1;
                }
            }
        }
        Ok(format!("{words} standard words over {bidegrees} bidegrees"))
    });
}

#[test]
fn gate_10_image_constraints() {
    gate("rational-model constraints", || {
        let a2 = sys("A2");
        let mut detail = Vec::new();
        for letters in [vec![(1, 0), (2, 0)], vec![(1, 0), (1, 0), (2, 0)]] {
            let r = upsilon_monomial(&a2, &letters).map_err(|e| e.to_string())?;
            for i in 1..=2 {
                for j in 1..=2 {
                    if i == j {
                        continue;
                    }
                    let outcome = wheel_check(&a2, r.numerator(), i, j).map_err(|e| e.to_string())?;
                    if outcome == WheelOutcome::Violated {
                        return Err(format!(
                            "wheel condition violated at colors ({i}, {j}) for {letters:?}"
                        ));
                    }
                }
            }
            let report = verify_image_constraints(&a2, &r, -4, 4).map_err(|e| e.to_string())?;
            if report.constraint1_checked == 0 || report.constraint3_checked == 0 {
                return Err(format!(
                    "no swap or alternating-sum instances fit the window for {letters:?}"
                ));
            }
            detail.push(format!(
                "{} factors: {} swap and {} alternating-sum instances",
                letters.len(),
                report.constraint1_checked,
                report.constraint3_checked
            ));
        }
        Ok(detail.join("; "))
    });
}
