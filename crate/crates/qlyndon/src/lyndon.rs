//! Lyndon words and the dictionary between roots and standard Lyndon loop words.
//!
//! The free-standing functions cover classical Lyndon combinatorics for any ordered
//! alphabet of [`LoopLetter`]s. [`LoopLyndon`] attaches them to a root system: it
//! materializes the bijection (α, d) ↦ ℓ(α, d) from pairs of a positive root and an
//! integer to standard Lyndon loop words, on the fundamental window 0 ≤ d ≤ |α|, and
//! extends it to every d by exponent shifts. Standardness of arbitrary words and the
//! induced total order on pairs (α, d) are derived from that dictionary.

use std::collections::HashMap;

use crate::rootsys::{CartanType, RootSystem, RootVec};
use crate::words::Word;
use crate::{Error, Result};

/// A nonempty word is Lyndon when it is strictly smaller than each of its proper
/// suffixes.
pub fn is_lyndon(w: &Word) -> bool {
    !w.is_empty() && (1..w.len()).all(|p| *w < w.slice(p..w.len()))
}

/// Factor a word into its unique weakly decreasing sequence of Lyndon factors
/// (Duval's algorithm).
pub fn canonical_factorization(w: &Word) -> Vec<Word> {
    let s = w.letters();
    let n = s.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        let mut k = i;
        while j < n && s[k] <= s[j] {
            if s[k] < s[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        while i <= k {
            out.push(w.slice(i..i + j - k));
            i += j - k;
        }
    }
    out
}

/// Split a Lyndon word of length ≥ 2 as ℓ₁ℓ₂ where ℓ₂ is its longest proper Lyndon
/// suffix; both halves are Lyndon and ℓ₁ < ℓ₁ℓ₂ < ℓ₂.
pub fn costandard_factorization(w: &Word) -> Result<(Word, Word)> {
    if !is_lyndon(w) {
        return Err(Error::NotLyndon(w.render()));
    }
    if w.len() < 2 {
        return Err(Error::NotLyndon(format!(
            "{} is a single letter and does not factor",
            w.render()
        )));
    }
    for p in 1..w.len() {
        let suffix = w.slice(p..w.len());
        if is_lyndon(&suffix) {
            return Ok((w.slice(0..p), suffix));
        }
    }
    unreachable!("a single letter is always Lyndon")
}

/// All words with horizontal degree `alpha` and vertical degree `d` whose exponents
/// lie in `[lo, hi]`, in increasing word order.
pub fn words_of_degree(alpha: &RootVec, d: i64, lo: i64, hi: i64) -> Vec<Word> {
    let counts: Vec<i64> = alpha.coeffs().to_vec();
    if counts.iter().any(|&c| c < 0) {
        return Vec::new();
    }
    let k: i64 = counts.iter().sum();
    let mut arrangements = Vec::new();
    let mut cur = Vec::with_capacity(k as usize);
    color_arrangements(&mut counts.clone(), &mut cur, &mut arrangements);
    let mut out = Vec::new();
    for colors in &arrangements {
        let mut exps = Vec::with_capacity(colors.len());
        exponent_fills(colors, d, lo, hi, &mut exps, &mut out);
    }
    out.sort();
    out
}

fn color_arrangements(counts: &mut [i64], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if counts.iter().all(|&c| c == 0) {
        out.push(cur.clone());
        return;
    }
    for i in 0..counts.len() {
        if counts[i] == 0 {
            continue;
        }
        counts[i] -= 1;
        cur.push(i + 1);
        color_arrangements(counts, cur, out);
        cur.pop();
        counts[i] += 1;
    }
}

fn exponent_fills(colors: &[usize], rest: i64, lo: i64, hi: i64, cur: &mut Vec<i64>, out: &mut Vec<Word>) {
    let left = (colors.len() - cur.len()) as i64;
    if rest < left * lo || rest > left * hi {
        return;
    }
    if cur.len() == colors.len() {
        let pairs: Vec<(usize, i64)> = colors.iter().copied().zip(cur.iter().copied()).collect();
        out.push(Word::from_pairs(&pairs));
        return;
    }
    for e in lo..=hi {
        cur.push(e);
        exponent_fills(colors, rest - e, lo, hi, cur, out);
        cur.pop();
    }
}

/// The dictionary between pairs (α, d) and standard Lyndon loop words over a fixed
/// root system.
pub struct LoopLyndon<'a> {
    rs: &'a RootSystem,
    window: HashMap<(RootVec, i64), Word>,
}

impl<'a> LoopLyndon<'a> {
    /// Materialize the dictionary on the fundamental window 0 ≤ d ≤ |α| for every
    /// positive root α, proceeding by height so each entry only needs earlier rows.
    ///
    /// Each non-simple entry is the largest concatenation ℓ(γ₁,d₁)ℓ(γ₂,d₂) over
    /// splittings α = γ₁ + γ₂ into positive roots with ℓ(γ₁,d₁) < ℓ(γ₂,d₂) and
    /// d₁ + d₂ = d. Only d_k ∈ [⌊d/|α|⌋·|γ_k|, ⌈d/|α|⌉·|γ_k|] can contribute: the
    /// maximizing splitting is the costandard factorization, whose halves are again
    /// dictionary entries, and those satisfy the exponent-window constraint.
    pub fn new(rs: &'a RootSystem) -> LoopLyndon<'a> {
        let mut window: HashMap<(RootVec, i64), Word> = HashMap::new();
        for alpha in rs.positive_roots() {
            let h = alpha.height();
            if h == 1 {
                let i = (1..=rs.rank()).find(|&i| alpha.coeff(i) == 1).unwrap();
                window.insert((alpha.clone(), 0), Word::letter(i, 0));
                window.insert((alpha.clone(), 1), Word::letter(i, 1));
                continue;
            }
            let splits = rs.pairs_summing_to(alpha);
            for d in 0..=h {
                let lo = d / h;
                let hi = (d + h - 1) / h;
                let mut best: Option<Word> = None;
                for (g1, g2) in &splits {
                    let (h1, h2) = (g1.height(), g2.height());
                    for d1 in (lo * h1)..=(hi * h1) {
                        let d2 = d - d1;
                        if !(lo * h2..=hi * h2).contains(&d2) {
                            continue;
                        }
                        let w1 = &window[&(g1.clone(), d1)];
                        let w2 = &window[&(g2.clone(), d2)];
                        if w1 < w2 {
                            let cat = w1.concat(w2);
                            if best.as_ref().map_or(true, |b| cat > *b) {
                                best = Some(cat);
                            }
                        }
                    }
                }
                let w = best.expect("a non-simple positive root always splits");
                window.insert((alpha.clone(), d), w);
            }
        }
        LoopLyndon { rs, window }
    }

    pub fn root_system(&self) -> &RootSystem {
        self.rs
    }

    /// ℓ(α, d) for a positive root α and any integer d. Outside the fundamental
    /// window the value is the window entry shifted by the quasi-period: adding |α|
    /// to d shifts every exponent by one.
    pub fn word(&self, alpha: &RootVec, d: i64) -> Result<Word> {
        if !self.rs.is_positive_root(alpha) {
            return Err(Error::NotAPositiveRoot(alpha.to_string()));
        }
        let h = alpha.height();
        if (0..=h).contains(&d) {
            return Ok(self.window[&(alpha.clone(), d)].clone());
        }
        let r = d.rem_euclid(h);
        let (rep, shift) = if r == 0 {
            (h, d / h - 1)
        } else {
            (r, (d - r) / h)
        };
        Ok(self.window[&(alpha.clone(), rep)].shifted(shift))
    }

    /// The pairs (d, ℓ(α, d)) for 1 ≤ d ≤ |α|: one quasi-period of the dictionary.
    pub fn fundamental_rows(&self, alpha: &RootVec) -> Result<Vec<(i64, Word)>> {
        if !self.rs.is_positive_root(alpha) {
            return Err(Error::NotAPositiveRoot(alpha.to_string()));
        }
        Ok((1..=alpha.height())
            .map(|d| (d, self.window[&(alpha.clone(), d)].clone()))
            .collect())
    }

    /// True when `u` is a standard Lyndon word: Lyndon, with hdeg(u) a positive root
    /// and u = ℓ(hdeg u, vdeg u).
    pub fn is_standard_lyndon(&self, u: &Word) -> bool {
        if u.validate_colors(self.rs.rank()).is_err() {
            return false;
        }
        let alpha = u.hdeg(self.rs.rank());
        self.rs.is_positive_root(&alpha)
            && self.word(&alpha, u.vdeg()).expect("checked positive root") == *u
    }

    /// True when every factor of the canonical factorization is standard Lyndon.
    pub fn is_standard(&self, w: &Word) -> bool {
        canonical_factorization(w).iter().all(|u| self.is_standard_lyndon(u))
    }

    /// The total order on pairs: (α, d) < (β, e) iff ℓ(α, −d) < ℓ(β, −e).
    pub fn pair_lt(&self, a: (&RootVec, i64), b: (&RootVec, i64)) -> Result<bool> {
        Ok(self.word(a.0, -a.1)? < self.word(b.0, -b.1)?)
    }

    /// Standard words of the given degrees with letter exponents in `[lo, hi]`,
    /// in increasing word order.
    pub fn standard_words(&self, alpha: &RootVec, d: i64, lo: i64, hi: i64) -> Vec<Word> {
        words_of_degree(alpha, d, lo, hi)
            .into_iter()
            .filter(|w| self.is_standard(w))
            .collect()
    }

    /// Sweep ℓ(α, d) over |d| ≤ `mult`·|α| for every positive root, checking the
    /// degree and shape invariants: hdeg/vdeg round-trip, Lyndonness, and letter
    /// exponents confined to {⌊d/|α|⌋, ⌈d/|α|⌉}. Returns the number of cases.
    pub fn verify_exponent_bounds(&self, mult: i64) -> Result<usize> {
        let mut cases = 0;
        for alpha in self.rs.positive_roots() {
            let h = alpha.height();
            for d in -mult * h..=mult * h {
                let w = self.word(alpha, d)?;
                let fail = |msg: String| {
                    Err(Error::VerificationFailed(format!(
                        "ℓ({alpha}, {d}) = {w}: {msg}"
                    )))
                };
                if w.hdeg(self.rs.rank()) != *alpha {
                    return fail("horizontal degree mismatch".into());
                }
                if w.vdeg() != d {
                    return fail(format!("vertical degree {} ≠ {d}", w.vdeg()));
                }
                if !is_lyndon(&w) {
                    return fail("not Lyndon".into());
                }
                let lo = d.div_euclid(h);
                let hi = lo + i64::from(d.rem_euclid(h) != 0);
                for l in w.letters() {
                    if l.exp() != lo && l.exp() != hi {
                        return fail(format!("letter exponent {} outside [{lo}, {hi}]", l.exp()));
                    }
                }
                cases += 1;
            }
        }
        Ok(cases)
    }

    /// Check ℓ(α, d) < ℓ(α, d−1) over |d| ≤ `mult`·|α|.
    pub fn verify_monotone(&self, mult: i64) -> Result<usize> {
        let mut cases = 0;
        for alpha in self.rs.positive_roots() {
            let h = alpha.height();
            for d in -mult * h..=mult * h {
                let w = self.word(alpha, d)?;
                let v = self.word(alpha, d - 1)?;
                if w >= v {
                    return Err(Error::VerificationFailed(format!(
                        "ℓ({alpha}, {d}) = {w} not below ℓ({alpha}, {}) = {v}",
                        d - 1
                    )));
                }
                cases += 1;
            }
        }
        Ok(cases)
    }

    /// Check the quasi-periodicity ℓ(α, d + |α|) = ℓ(α, d) with exponents shifted by
    /// one, over |d| ≤ `mult`·|α|.
    pub fn verify_periodicity(&self, mult: i64) -> Result<usize> {
        let mut cases = 0;
        for alpha in self.rs.positive_roots() {
            let h = alpha.height();
            for d in -mult * h..=mult * h {
                let w = self.word(alpha, d + h)?;
                let v = self.word(alpha, d)?.shifted(1);
                if w != v {
                    return Err(Error::VerificationFailed(format!(
                        "ℓ({alpha}, {}) = {w} is not {v} shifted",
                        d + h
                    )));
                }
                cases += 1;
            }
        }
        Ok(cases)
    }

    /// Convexity sweep: whenever α, β and α+β are positive roots and
    /// ℓ(α, d) < ℓ(β, e), the middle word ℓ(α+β, d+e) lies strictly between them.
    /// Windows are |d| ≤ `mult`·|α| and |e| ≤ `mult`·|β|.
    pub fn verify_convexity(&self, mult: i64) -> Result<usize> {
        let mut cases = 0;
        for alpha in self.rs.positive_roots() {
            for beta in self.rs.positive_roots() {
                let sum = alpha + beta;
                if !self.rs.is_positive_root(&sum) {
                    continue;
                }
                let (ha, hb) = (alpha.height(), beta.height());
                for d in -mult * ha..=mult * ha {
                    let wa = self.word(alpha, d)?;
                    for e in -mult * hb..=mult * hb {
                        let wb = self.word(beta, e)?;
                        if wa >= wb {
                            continue;
                        }
                        let mid = self.word(&sum, d + e)?;
                        if !(wa < mid && mid < wb) {
                            return Err(Error::VerificationFailed(format!(
                                "ℓ({alpha}, {d}) = {wa}, ℓ({sum}, {}) = {mid}, ℓ({beta}, {e}) = {wb} \
                                 are not in convex position",
                                d + e
                            )));
                        }
                        cases += 1;
                    }
                }
            }
        }
        Ok(cases)
    }
}

// ---------------------------------------------------------------------------
// Closed forms for the classical types
// ---------------------------------------------------------------------------

/// ℓ(α, d) by the explicit classical dictionaries instead of the recursion:
/// `Ok(Some(w))` for types A, B, C and D, `Ok(None)` for the exceptional
/// families, which have no tabulated closed form. Any `d` is accepted; outside
/// 1 ≤ d ≤ |α| the value extends by the quasi-periodicity of the dictionary.
pub fn closed_form_word(rs: &RootSystem, alpha: &RootVec, d: i64) -> Result<Option<Word>> {
    if !rs.is_positive_root(alpha) {
        return Err(Error::NotAPositiveRoot(alpha.to_string()));
    }
    let h = alpha.height();
    let r = d.rem_euclid(h);
    let (rep, shift) = if r == 0 { (h, d / h - 1) } else { (r, (d - r) / h) };
    let Some(w) = fundamental_closed_form(rs.cartan_type(), alpha, rep) else {
        return Ok(None);
    };
    Ok(Some(if shift == 0 { w } else { w.shifted(shift) }))
}

fn push(out: &mut Vec<(usize, i64)>, color: i64, exp: i64) {
    debug_assert!(color >= 1, "closed form produced color {color}");
    out.push((color as usize, exp));
}

fn asc(out: &mut Vec<(usize, i64)>, a: i64, b: i64, exp: i64) {
    for c in a..=b {
        push(out, c, exp);
    }
}

fn desc(out: &mut Vec<(usize, i64)>, b: i64, c: i64, exp: i64) {
    debug_assert!(b >= c - 1, "descending run {b}..{c} is out of order");
    let mut x = b;
    while x >= c {
        push(out, x, exp);
        x -= 1;
    }
}

/// The single closed-form family shared by all chain-shaped roots: `letters`
/// lists the colors along the chain in order, and the word for 1 ≤ d ≤ h puts
/// an exponent-1 letter at position h−d, the positions below it descending
/// with exponent 0, and the positions above it ascending with exponent 1.
fn chain_form(letters: &[i64], d: i64) -> Word {
    let h = letters.len();
    let head = h - d as usize;
    let mut pairs = Vec::with_capacity(h);
    push(&mut pairs, letters[head], 1);
    for k in (0..head).rev() {
        push(&mut pairs, letters[k], 0);
    }
    for k in head + 1..h {
        push(&mut pairs, letters[k], 1);
    }
    Word::from_pairs(&pairs)
}

fn beta_form(n: i64, i: i64, j: i64, d: i64) -> Word {
    let mut p = Vec::new();
    if d == 1 {
        push(&mut p, n, 1);
        let mut m = n - 1;
        while m >= j - 1 {
            push(&mut p, m, 0);
            push(&mut p, m + 1, 0);
            m -= 1;
        }
        desc(&mut p, j - 2, i, 0);
    } else if d % 2 == 0 {
        let k = d / 2;
        if j <= n - k + 1 {
            let a = n - k + 1;
            push(&mut p, a, 1);
            desc(&mut p, a - 1, j, 0);
            asc(&mut p, a + 1, n, 1);
            desc(&mut p, n, a, 1);
            desc(&mut p, a - 1, i, 0);
        } else {
            let a = 2 * n - j - 2 * k + 2;
            push(&mut p, a, 1);
            desc(&mut p, a - 1, i, 0);
            asc(&mut p, a + 1, n, 1);
            desc(&mut p, n, j, 1);
        }
    } else {
        let k = (d - 1) / 2;
        if j <= n - k + 1 {
            let a = n - k;
            push(&mut p, a, 1);
            desc(&mut p, a - 1, i, 0);
            asc(&mut p, a + 1, n, 1);
            desc(&mut p, n, a + 1, 1);
            desc(&mut p, a, j, 0);
        } else {
            let a = 2 * n - j - 2 * k + 1;
            push(&mut p, a, 1);
            desc(&mut p, a - 1, i, 0);
            asc(&mut p, a + 1, n, 1);
            desc(&mut p, n, j, 1);
        }
    }
    Word::from_pairs(&p)
}

fn gamma_form(n: i64, i: i64, j: i64, d: i64) -> Word {
    let mut p = Vec::new();
    if d == 1 {
        push(&mut p, n, 1);
        let mut m = n - 1;
        while m >= j {
            push(&mut p, m, 0);
            push(&mut p, m, 0);
            m -= 1;
        }
        desc(&mut p, j - 1, i, 0);
    } else if d % 2 == 0 {
        let k = d / 2;
        if j <= n - k {
            let a = n - k;
            push(&mut p, a, 1);
            desc(&mut p, a - 1, i, 0);
            asc(&mut p, a + 1, n, 1);
            desc(&mut p, n - 1, a + 1, 1);
            desc(&mut p, a, j, 0);
        } else {
            let a = 2 * n - j - 2 * k + 1;
            push(&mut p, a, 1);
            desc(&mut p, a - 1, i, 0);
            asc(&mut p, a + 1, n, 1);
            desc(&mut p, n - 1, j, 1);
        }
    } else {
        let k = (d - 1) / 2;
        if i == j {
            let a = n - k;
            push(&mut p, a, 1);
            desc(&mut p, a - 1, i, 0);
            asc(&mut p, a + 1, n - 1, 1);
            push(&mut p, a, 1);
            desc(&mut p, a - 1, i, 0);
            asc(&mut p, a + 1, n, 1);
        } else if j <= n - k {
            let a = n - k;
            push(&mut p, a, 1);
            desc(&mut p, a - 1, j, 0);
            asc(&mut p, a + 1, n, 1);
            desc(&mut p, n - 1, a, 1);
            desc(&mut p, a - 1, i, 0);
        } else {
            let a = 2 * n - j - 2 * k;
            push(&mut p, a, 1);
            desc(&mut p, a - 1, i, 0);
            asc(&mut p, a + 1, n, 1);
            desc(&mut p, n - 1, j, 1);
        }
    }
    Word::from_pairs(&p)
}

fn sigma_form(n: i64, j: i64, d: i64) -> Word {
    let mut p = Vec::new();
    match d {
        1 => {
            push(&mut p, n, 1);
            push(&mut p, n - 2, 0);
            push(&mut p, n - 1, 0);
            desc(&mut p, n - 3, j, 0);
        }
        2 => {
            push(&mut p, n - 1, 1);
            desc(&mut p, n - 2, j, 0);
            push(&mut p, n, 1);
        }
        _ => {
            push(&mut p, n - d + 1, 1);
            desc(&mut p, n - d, j, 0);
            asc(&mut p, n - d + 2, n - 2, 1);
            push(&mut p, n, 1);
            push(&mut p, n - 1, 1);
        }
    }
    Word::from_pairs(&p)
}

fn tau_form(n: i64, i: i64, j: i64, d: i64) -> Word {
    let mut p = Vec::new();
    match d {
        1 => {
            push(&mut p, n, 1);
            let mut m = n - 2;
            while m >= j - 1 {
                push(&mut p, m, 0);
                push(&mut p, m + 1, 0);
                m -= 1;
            }
            desc(&mut p, j - 2, i, 0);
        }
        2 => {
            push(&mut p, n - 1, 1);
            desc(&mut p, n - 2, i, 0);
            push(&mut p, n, 1);
            desc(&mut p, n - 2, j, 0);
        }
        3 => {
            push(&mut p, n - 2, 1);
            desc(&mut p, n - 3, i, 0);
            push(&mut p, n, 1);
            push(&mut p, n - 1, 1);
            desc(&mut p, n - 2, j, 0);
        }
        _ if d % 2 == 0 => {
            let k = d / 2;
            if j <= n - k {
                let a = n - k;
                push(&mut p, a, 1);
                desc(&mut p, a - 1, j, 0);
                asc(&mut p, a + 1, n - 2, 1);
                desc(&mut p, n, a, 1);
                desc(&mut p, a - 1, i, 0);
            } else {
                let a = 2 * n - j - 2 * k;
                push(&mut p, a, 1);
                desc(&mut p, a - 1, i, 0);
                asc(&mut p, a + 1, n - 2, 1);
                desc(&mut p, n, j, 1);
            }
        }
        _ => {
            let k = (d - 1) / 2;
            if j <= n - k - 1 {
                let a = n - k - 1;
                push(&mut p, a, 1);
                desc(&mut p, a - 1, i, 0);
                asc(&mut p, a + 1, n - 2, 1);
                desc(&mut p, n, a + 1, 1);
                desc(&mut p, a, j, 0);
            } else {
                let a = 2 * n - j - 2 * k - 1;
                push(&mut p, a, 1);
                desc(&mut p, a - 1, i, 0);
                asc(&mut p, a + 1, n - 2, 1);
                desc(&mut p, n, j, 1);
            }
        }
    }
    Word::from_pairs(&p)
}

/// Support interval [lo, hi] of an all-coefficients-in-{0,1} vector, if its
/// support is one contiguous block.
fn ones_interval(alpha: &RootVec) -> Option<(i64, i64)> {
    let support: Vec<i64> = (1..=alpha.rank())
        .filter(|&c| alpha.coeff(c) != 0)
        .map(|c| c as i64)
        .collect();
    let lo = *support.first()?;
    let hi = *support.last()?;
    if support.len() as i64 == hi - lo + 1 && (1..=alpha.rank()).all(|c| alpha.coeff(c) <= 1) {
        Some((lo, hi))
    } else {
        None
    }
}

/// ℓ(α, d) for 1 ≤ d ≤ |α| straight from the classical dictionaries, or `None`
/// for a family without one. Positive-rootness of `alpha` is the caller's
/// responsibility: the classification by doubled coefficients and support
/// intervals below is exhaustive only over actual positive roots.
fn fundamental_closed_form(ctype: CartanType, alpha: &RootVec, d: i64) -> Option<Word> {
    let n = ctype.rank() as i64;
    let coeff = |c: i64| alpha.coeff(c as usize);
    let first_support = (1..=n).find(|&c| coeff(c) != 0).expect("nonzero root");
    let first_double = (1..=n).find(|&c| coeff(c) == 2);
    match ctype {
        CartanType::A(_) => {
            let (i, j) = ones_interval(alpha).expect("type A roots are chains");
            Some(chain_form(&(i..=j).collect::<Vec<_>>(), d))
        }
        CartanType::B(_) => Some(match first_double {
            None => {
                let (i, j) = ones_interval(alpha).expect("chain root");
                chain_form(&(i..=j).collect::<Vec<_>>(), d)
            }
            Some(j) => beta_form(n, first_support, j, d),
        }),
        CartanType::C(_) => Some(match first_double {
            None => {
                let (i, j) = ones_interval(alpha).expect("chain root");
                chain_form(&(i..=j).collect::<Vec<_>>(), d)
            }
            Some(j) => gamma_form(n, first_support, j, d),
        }),
        CartanType::D(_) => {
            if let Some(j) = first_double {
                return Some(tau_form(n, first_support, j, d));
            }
            if let Some((i, j)) = ones_interval(alpha) {
                if j == n && coeff(n - 1) == 1 {
                    return Some(sigma_form(n, i, d));
                }
                return Some(chain_form(&(i..=j).collect::<Vec<_>>(), d));
            }
            // Chain through the branch: support [i, n−2] plus n, skipping n−1.
            debug_assert_eq!(coeff(n - 1), 0, "unclassified D-type root {alpha}");
            debug_assert_eq!(coeff(n), 1, "unclassified D-type root {alpha}");
            let i = first_support;
            let mut letters: Vec<i64> = (i..=n - 2).collect();
            letters.push(n);
            Some(chain_form(&letters, d))
        }
        _ => None,
    }
}
