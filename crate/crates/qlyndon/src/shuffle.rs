//! Quantum shuffle algebras over ℚ(q): the finite shuffle product on words in
//! the colors of a root system, its loop extension on words with integer
//! exponents, bracketings of Lyndon words and their shuffle images, and the
//! linear algebra that identifies good words among those images.
//!
//! A finite element is a plain table word → coefficient.  A loop element may
//! have infinite support, so [`LoopShuffleElement`] stores the restriction of
//! its table to an exponent window `[lo, hi]` together with a `truncated`
//! flag, plus — whenever the element was built as a combination of products
//! of generators — an exact symbolic form (a list of [`Monomial`]s) from
//! which window-independent data is extracted: individual coefficients via
//! [`LoopShuffleElement::exact_coeff`] and the certified leading word via
//! [`LoopShuffleElement::leading_word`].
//!
//! The product of two loop generators `i^(r) ∗ j^(s)` contains, besides the
//! two interleavings of the letters, an infinite geometric tail in which the
//! earlier factor's exponent drops while the later factor's exponent rises.
//! All loop computations here are organized around that flow picture: each
//! out-of-order pair of factors carries one formal series whose coefficient
//! of the `r`-th shift is [`pair_factor`]`(delta, r)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use serde_json::json;

use crate::lyndon::{canonical_factorization, costandard_factorization, LoopLyndon};
use crate::qfield::{qbinom_sym, QRat};
use crate::rootsys::{RootSystem, RootVec};
use crate::words::{LoopLetter, Word};
use crate::{Error, Result};

/// Coefficient of `x^r` in the series `q^δ + Σ_{r≥1} q^{δr}(q^δ − q^{−δ}) x^r`
/// attached to an out-of-order pair of merged letters with symmetrized
/// pairing `δ`: the earlier factor's exponent drops by `r`, the later one's
/// rises by `r`.
fn pair_factor(delta: i64, r: i64) -> QRat {
    if r == 0 {
        QRat::q_power(delta)
    } else {
        &QRat::q_power(delta * r) * &(&QRat::q_power(delta) - &QRat::q_power(-delta))
    }
}

fn letters_degree(rank: usize, letters: &[LoopLetter]) -> (RootVec, i64) {
    let mut counts = vec![0i64; rank];
    let mut d = 0;
    for x in letters {
        counts[x.color() - 1] += 1;
        d += x.exp();
    }
    (RootVec::from_coeffs(counts), d)
}

// ---------------------------------------------------------------------------
// Finite elements
// ---------------------------------------------------------------------------

/// A finite ℚ(q)-linear combination of finite words (all exponents zero).
#[derive(Clone, Debug, PartialEq, Default)]
pub struct FiniteShuffleElement {
    terms: BTreeMap<Word, QRat>,
}

impl FiniteShuffleElement {
    pub fn zero() -> Self {
        FiniteShuffleElement::default()
    }

    /// The basis element of a single finite word.
    pub fn from_word(w: Word) -> Result<Self> {
        if !w.is_finite() {
            return Err(Error::BadDegree(format!("{w} has nonzero exponents")));
        }
        let mut terms = BTreeMap::new();
        terms.insert(w, QRat::one());
        Ok(FiniteShuffleElement { terms })
    }

    /// The unit: the empty word with coefficient 1.
    pub fn one() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Word::empty(), QRat::one());
        FiniteShuffleElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &QRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> QRat {
        self.terms.get(w).cloned().unwrap_or_else(QRat::zero)
    }

    /// Largest word of the support with its coefficient.
    pub fn leading(&self) -> Option<(&Word, &QRat)> {
        self.terms.iter().next_back()
    }

    pub fn scaled(&self, c: &QRat) -> Self {
        let mut out = FiniteShuffleElement::zero();
        out.add_scaled(self, c);
        out
    }

    /// `self += c·other`, pruning coefficients that cancel to zero.
    pub fn add_scaled(&mut self, other: &Self, c: &QRat) {
        if c.is_zero() {
            return;
        }
        for (w, x) in &other.terms {
            let entry = self.terms.entry(w.clone()).or_insert_with(QRat::zero);
            *entry += &(c * x);
            if entry.is_zero() {
                self.terms.remove(w);
            }
        }
    }

    pub fn to_json(&self, rank: usize) -> serde_json::Value {
        let degree = self.terms.keys().next().map(|w| {
            json!({ "hdeg": w.hdeg(rank).coeffs(), "vdeg": 0 })
        });
        json!({
            "degree": degree,
            "terms": self
                .terms
                .iter()
                .map(|(w, c)| json!({ "word": w.render(), "coeff": c.render() }))
                .collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for FiniteShuffleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("({c})·{w}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Shuffle product of two finite elements: each pair of words `u, v`
/// contributes one interleaving per choice of positions for `u`, weighted by
/// `q` raised to the sum of `d_{s_a s_b}` over out-of-order letter pairs.
pub fn shuffle_finite(
    rs: &RootSystem,
    x: &FiniteShuffleElement,
    y: &FiniteShuffleElement,
) -> Result<FiniteShuffleElement> {
    let mut out = FiniteShuffleElement::zero();
    for (u, cu) in &x.terms {
        u.validate_colors(rs.rank())?;
        for (v, cv) in &y.terms {
            v.validate_colors(rs.rank())?;
            let k = u.len();
            let n = k + v.len();
            let cuv = cu * cv;
            for positions in (0..n).combinations(k) {
                let mut colors = vec![0usize; n];
                let mut from_u = vec![false; n];
                for (m, &p) in positions.iter().enumerate() {
                    colors[p] = u.letters()[m].color();
                    from_u[p] = true;
                }
                let mut vi = v.letters().iter();
                for p in 0..n {
                    if !from_u[p] {
                        colors[p] = vi.next().unwrap().color();
                    }
                }
                let mut lam = 0;
                for a in 0..n {
                    if !from_u[a] {
                        continue;
                    }
                    for b in 0..a {
                        if !from_u[b] {
                            lam += rs.sym_colors(colors[a], colors[b]);
                        }
                    }
                }
                let w = Word::finite(&colors);
                let coeff = &QRat::q_power(lam) * &cuv;
                let entry = out.terms.entry(w).or_insert_with(QRat::zero);
                *entry += &coeff;
                if entry.is_zero() {
                    let w2 = Word::finite(&colors);
                    out.terms.remove(&w2);
                }
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Loop elements
// ---------------------------------------------------------------------------

/// One symbolic shuffle monomial: a scalar times an ordered product of loop
/// generators, recorded by the letters of its factors.
pub type Monomial = (QRat, Vec<LoopLetter>);

/// A homogeneous element of the loop shuffle algebra, recorded on an exponent
/// window.
///
/// `terms` holds exactly the support words whose exponents all lie in
/// `[lo, hi]`.  `truncated` records whether the element may have further
/// support outside the window.  `monomials`, when present, is an exact
/// product-of-generators expression for the element, independent of the
/// window; sums and products of elements that carry it keep it, and it is
/// what makes [`exact_coeff`](Self::exact_coeff) and
/// [`leading_word`](Self::leading_word) window-independent.
#[derive(Clone, Debug)]
pub struct LoopShuffleElement {
    rank: usize,
    lo: i64,
    hi: i64,
    terms: BTreeMap<Word, QRat>,
    truncated: bool,
    monomials: Option<Vec<Monomial>>,
}

impl LoopShuffleElement {
    pub fn zero(rank: usize, lo: i64, hi: i64) -> Result<Self> {
        check_window(lo, hi)?;
        Ok(LoopShuffleElement {
            rank,
            lo,
            hi,
            terms: BTreeMap::new(),
            truncated: false,
            monomials: Some(Vec::new()),
        })
    }

    /// The generator `i^(d)` as an element on the window, which must contain
    /// its exponent.
    pub fn generator(rs: &RootSystem, color: usize, exp: i64, lo: i64, hi: i64) -> Result<Self> {
        check_window(lo, hi)?;
        if exp < lo || exp > hi {
            return Err(Error::WindowTooNarrow {
                lo,
                hi,
                need_lo: lo.min(exp),
                need_hi: hi.max(exp),
            });
        }
        let letter = LoopLetter::new(color, exp);
        LoopShuffleElement::from_monomials(rs, vec![(QRat::one(), vec![letter])], lo, hi)
    }

    /// Materializes a linear combination of products of generators on the
    /// window.  All monomials must share one bidegree (color multiset and
    /// total exponent).
    pub fn from_monomials(
        rs: &RootSystem,
        monomials: Vec<Monomial>,
        lo: i64,
        hi: i64,
    ) -> Result<Self> {
        check_window(lo, hi)?;
        let rank = rs.rank();
        let mut degree: Option<(RootVec, i64)> = None;
        for (c, letters) in &monomials {
            if c.is_zero() {
                continue;
            }
            for x in letters {
                if x.color() == 0 || x.color() > rank {
                    return Err(Error::BadColor(x.color(), rank));
                }
            }
            let d = letters_degree(rank, letters);
            match &degree {
                None => degree = Some(d),
                Some(d0) if *d0 != d => {
                    return Err(Error::BadDegree(format!(
                        "mixed bidegrees {:?} and {:?} in one element",
                        d0, d
                    )));
                }
                _ => {}
            }
        }
        let mut mat = Materializer {
            rs,
            lo,
            hi,
            terms: BTreeMap::new(),
            truncated: false,
        };
        for (c, letters) in &monomials {
            if !c.is_zero() {
                mat.monomial(c, letters);
            }
        }
        mat.terms.retain(|_, c| !c.is_zero());
        Ok(LoopShuffleElement {
            rank,
            lo,
            hi,
            terms: mat.terms,
            truncated: mat.truncated,
            monomials: Some(monomials),
        })
    }

    /// Wraps an explicit table whose completeness on the window the caller
    /// asserts.  Carries no symbolic form, so products from it are certified
    /// only through the table path.
    pub fn from_table(
        rank: usize,
        terms: BTreeMap<Word, QRat>,
        lo: i64,
        hi: i64,
    ) -> Result<Self> {
        check_window(lo, hi)?;
        let mut degree: Option<(RootVec, i64)> = None;
        let mut table = BTreeMap::new();
        for (w, c) in terms {
            if c.is_zero() {
                continue;
            }
            w.validate_colors(rank)?;
            for x in w.letters() {
                if x.exp() < lo || x.exp() > hi {
                    return Err(Error::WindowTooNarrow {
                        lo,
                        hi,
                        need_lo: lo.min(x.exp()),
                        need_hi: hi.max(x.exp()),
                    });
                }
            }
            let d = (w.hdeg(rank), w.vdeg());
            match &degree {
                None => degree = Some(d),
                Some(d0) if *d0 != d => {
                    return Err(Error::BadDegree(format!(
                        "mixed bidegrees {:?} and {:?} in one table",
                        d0, d
                    )));
                }
                _ => {}
            }
            table.insert(w, c);
        }
        Ok(LoopShuffleElement {
            rank,
            lo,
            hi,
            terms: table,
            truncated: false,
            monomials: None,
        })
    }

    /// Wraps the window restriction of an element whose support may extend
    /// past the window, such as a series expansion.  In-window coefficient
    /// queries are exact; products and leading-word queries are refused.
    pub fn from_truncated_table(
        rank: usize,
        terms: BTreeMap<Word, QRat>,
        lo: i64,
        hi: i64,
    ) -> Result<Self> {
        let mut el = Self::from_table(rank, terms, lo, hi)?;
        el.truncated = true;
        Ok(el)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    /// Whether the element may have support outside the window.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    /// Whether the element carries an exact symbolic form.
    pub fn has_monomials(&self) -> bool {
        self.monomials.is_some()
    }

    pub fn is_zero_on_window(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &QRat)> {
        self.terms.iter()
    }

    /// Bidegree (horizontal degree, total exponent), if the element is
    /// visibly nonzero.
    pub fn degree(&self) -> Option<(RootVec, i64)> {
        if let Some(ms) = &self.monomials {
            if let Some((_, letters)) = ms.iter().find(|(c, _)| !c.is_zero()) {
                return Some(letters_degree(self.rank, letters));
            }
        }
        self.terms
            .keys()
            .next()
            .map(|w| (w.hdeg(self.rank), w.vdeg()))
    }

    /// Coefficient of an in-window word, read off the table.  Words with an
    /// exponent outside the window are refused: the table cannot attest to
    /// them.
    pub fn coeff(&self, w: &Word) -> Result<QRat> {
        for x in w.letters() {
            if x.exp() < self.lo || x.exp() > self.hi {
                return Err(Error::WindowTooNarrow {
                    lo: self.lo,
                    hi: self.hi,
                    need_lo: self.lo.min(x.exp()),
                    need_hi: self.hi.max(x.exp()),
                });
            }
        }
        Ok(self.terms.get(w).cloned().unwrap_or_else(QRat::zero))
    }

    /// Coefficient of an arbitrary word.  With a symbolic form this is exact
    /// and window-independent; otherwise it falls back to the in-window
    /// table.
    pub fn exact_coeff(&self, rs: &RootSystem, w: &Word) -> Result<QRat> {
        if let Some(ms) = &self.monomials {
            return Ok(exact_coeff_of(rs, ms, w));
        }
        self.coeff(w)
    }

    pub fn scaled(&self, c: &QRat) -> Self {
        let mut out = self.clone();
        if c.is_zero() {
            out.terms.clear();
            if let Some(ms) = &mut out.monomials {
                ms.clear();
            }
            out.truncated = false;
            return out;
        }
        for v in out.terms.values_mut() {
            *v *= c;
        }
        if let Some(ms) = &mut out.monomials {
            for (s, _) in ms.iter_mut() {
                *s *= c;
            }
        }
        out
    }

    /// `self += c·other`.  Windows must agree; bidegrees must agree when both
    /// sides are nonzero.  The symbolic form survives only if both sides
    /// carry one.
    pub fn add_scaled(&mut self, other: &Self, c: &QRat) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::BadDegree(format!(
                "rank mismatch: {} vs {}",
                self.rank, other.rank
            )));
        }
        if (self.lo, self.hi) != (other.lo, other.hi) {
            return Err(Error::WindowTooNarrow {
                lo: self.lo,
                hi: self.hi,
                need_lo: other.lo,
                need_hi: other.hi,
            });
        }
        if c.is_zero() {
            return Ok(());
        }
        if let (Some(da), Some(db)) = (self.degree(), other.degree()) {
            if da != db {
                return Err(Error::BadDegree(format!(
                    "mixed bidegrees {:?} and {:?} in a sum",
                    da, db
                )));
            }
        }
        for (w, x) in &other.terms {
            let entry = self.terms.entry(w.clone()).or_insert_with(QRat::zero);
            *entry += &(c * x);
            if entry.is_zero() {
                self.terms.remove(w);
            }
        }
        self.truncated |= other.truncated;
        self.monomials = match (self.monomials.take(), &other.monomials) {
            (Some(mut a), Some(b)) => {
                a.extend(b.iter().map(|(s, ls)| (c * s, ls.clone())));
                Some(a)
            }
            _ => None,
        };
        Ok(())
    }

    /// Certified leading word of a nonzero element with its exact
    /// coefficient.  Requires the symbolic form; the answer does not depend
    /// on the window.
    ///
    /// Every support word is bounded above by the plain interleaving of some
    /// monomial's letters, so those interleavings are tried from the top.
    /// Once one has a nonzero coefficient, everything above it is either
    /// ruled out or explicitly enumerated and tested; when an unbounded
    /// family above the candidate cannot be excluded the search fails with
    /// [`Error::LeadingWordUndetermined`] rather than guess.
    pub fn leading_word(&self, rs: &RootSystem) -> Result<(Word, QRat)> {
        let ms = self.monomials.as_ref().ok_or(Error::UncertifiedProduct)?;
        certified_leading(rs, ms)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let degree = self
            .degree()
            .map(|(a, d)| json!({ "hdeg": a.coeffs(), "vdeg": d }));
        json!({
            "degree": degree,
            "window": [self.lo, self.hi],
            "truncated": self.truncated,
            "terms": self
                .terms
                .iter()
                .map(|(w, c)| json!({ "word": w.render(), "coeff": c.render() }))
                .collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for LoopShuffleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        } else {
            let parts: Vec<String> = self
                .terms
                .iter()
                .map(|(w, c)| format!("({c})·{w}"))
                .collect();
            write!(f, "{}", parts.join(" + "))?;
        }
        write!(f, "   [window {}..{}", self.lo, self.hi)?;
        if self.truncated {
            write!(f, ", truncated")?;
        }
        write!(f, "]")
    }
}

fn check_window(lo: i64, hi: i64) -> Result<()> {
    if lo > hi {
        return Err(Error::WindowTooNarrow {
            lo,
            hi,
            need_lo: hi,
            need_hi: lo,
        });
    }
    Ok(())
}

/// Shuffle product on the union of the two windows.
pub fn shuffle_loop(
    rs: &RootSystem,
    x: &LoopShuffleElement,
    y: &LoopShuffleElement,
) -> Result<LoopShuffleElement> {
    shuffle_loop_windowed(rs, x, y, x.lo.min(y.lo), x.hi.max(y.hi))
}

/// Shuffle product recorded on an explicit window.
///
/// When both factors carry symbolic forms the product is their formal
/// concatenation, materialized afresh — valid for any window.  Otherwise the
/// tables are merged directly, which is sound only when both factors are
/// complete on their windows; a truncated factor is refused.
pub fn shuffle_loop_windowed(
    rs: &RootSystem,
    x: &LoopShuffleElement,
    y: &LoopShuffleElement,
    lo: i64,
    hi: i64,
) -> Result<LoopShuffleElement> {
    check_window(lo, hi)?;
    if x.rank != y.rank || x.rank != rs.rank() {
        return Err(Error::BadDegree(format!(
            "rank mismatch: {} vs {} vs system rank {}",
            x.rank,
            y.rank,
            rs.rank()
        )));
    }
    if let (Some(ma), Some(mb)) = (&x.monomials, &y.monomials) {
        let mut combined = Vec::with_capacity(ma.len() * mb.len());
        for (ca, la) in ma {
            for (cb, lb) in mb {
                let mut letters = Vec::with_capacity(la.len() + lb.len());
                letters.extend_from_slice(la);
                letters.extend_from_slice(lb);
                combined.push((ca * cb, letters));
            }
        }
        return LoopShuffleElement::from_monomials(rs, combined, lo, hi);
    }
    if x.truncated || y.truncated {
        return Err(Error::UncertifiedProduct);
    }
    merge_tables(rs, x, y, lo, hi)
}

// ---------------------------------------------------------------------------
// Materialization of monomials
// ---------------------------------------------------------------------------

#[derive(Clone, Copy)]
struct FlowPair {
    target: usize,
    delta: i64,
}

struct Materializer<'a> {
    rs: &'a RootSystem,
    lo: i64,
    hi: i64,
    terms: BTreeMap<Word, QRat>,
    truncated: bool,
}

impl Materializer<'_> {
    fn monomial(&mut self, scalar: &QRat, letters: &[LoopLetter]) {
        let k = letters.len();
        if k == 0 {
            let entry = self
                .terms
                .entry(Word::empty())
                .or_insert_with(QRat::zero);
            *entry += scalar;
            return;
        }
        for perm in (0..k).permutations(k) {
            let mut colors = vec![0usize; k];
            let mut exps = vec![0i64; k];
            for m in 0..k {
                colors[perm[m]] = letters[m].color();
                exps[perm[m]] = letters[m].exp();
            }
            let mut pairs: Vec<Vec<FlowPair>> = vec![Vec::new(); k];
            for m in 0..k {
                for m2 in (m + 1)..k {
                    if perm[m] > perm[m2] {
                        let delta = self.rs.sym_colors(letters[m].color(), letters[m2].color());
                        if delta != 0 {
                            self.truncated = true;
                        }
                        pairs[m].push(FlowPair {
                            target: perm[m2],
                            delta,
                        });
                    }
                }
            }
            self.source(0, &perm, &colors, &mut exps, &pairs, scalar.clone());
        }
    }

    /// Settles factor `m`: all inflows to its position arrived from earlier
    /// factors, so only its outflows remain to be chosen.
    fn source(
        &mut self,
        m: usize,
        perm: &[usize],
        colors: &[usize],
        exps: &mut [i64],
        pairs: &[Vec<FlowPair>],
        acc: QRat,
    ) {
        let k = perm.len();
        if m == k {
            let letters: Vec<LoopLetter> = colors
                .iter()
                .zip(exps.iter())
                .map(|(&c, &e)| LoopLetter::new(c, e))
                .collect();
            let entry = self
                .terms
                .entry(Word::new(letters))
                .or_insert_with(QRat::zero);
            *entry += &acc;
            return;
        }
        let cur = exps[perm[m]];
        let hi_out = cur - self.lo;
        if hi_out < 0 {
            self.truncated = true;
            return;
        }
        let lo_out = (cur - self.hi).max(0);
        if lo_out > 0 {
            self.truncated = true;
        }
        let dp: Vec<FlowPair> = pairs[m].iter().filter(|fp| fp.delta != 0).copied().collect();
        self.flows(m, perm, colors, exps, pairs, &dp, 0, lo_out, hi_out, 0, acc);
    }

    #[allow(clippy::too_many_arguments)]
    fn flows(
        &mut self,
        m: usize,
        perm: &[usize],
        colors: &[usize],
        exps: &mut [i64],
        pairs: &[Vec<FlowPair>],
        dp: &[FlowPair],
        idx: usize,
        lo_out: i64,
        hi_out: i64,
        spent: i64,
        acc: QRat,
    ) {
        if idx == dp.len() {
            if spent < lo_out {
                return;
            }
            let p = perm[m];
            exps[p] -= spent;
            self.source(m + 1, perm, colors, exps, pairs, acc);
            exps[p] += spent;
            return;
        }
        let fp = dp[idx];
        for r in 0..=(hi_out - spent) {
            let acc2 = &acc * &pair_factor(fp.delta, r);
            exps[fp.target] += r;
            self.flows(
                m,
                perm,
                colors,
                exps,
                pairs,
                dp,
                idx + 1,
                lo_out,
                hi_out,
                spent + r,
                acc2,
            );
            exps[fp.target] -= r;
        }
    }
}

// ---------------------------------------------------------------------------
// Exact coefficients and the certified leading word
// ---------------------------------------------------------------------------

/// Exact coefficient of `w` in a monomial list, independent of any window:
/// for each monomial and each color-matching assignment of factors to
/// positions, the flow into every position is forced by `w`'s exponents.
fn exact_coeff_of(rs: &RootSystem, monomials: &[Monomial], w: &Word) -> QRat {
    let wl = w.letters();
    let n = wl.len();
    let mut total = QRat::zero();
    for (scalar, letters) in monomials {
        if scalar.is_zero() || letters.len() != n {
            continue;
        }
        if n == 0 {
            total += scalar;
            continue;
        }
        'perm: for perm in (0..n).permutations(n) {
            for m in 0..n {
                if letters[m].color() != wl[perm[m]].color() {
                    continue 'perm;
                }
            }
            let mut exps = vec![0i64; n];
            for m in 0..n {
                exps[perm[m]] = letters[m].exp();
            }
            let mut pairs: Vec<Vec<FlowPair>> = vec![Vec::new(); n];
            for m in 0..n {
                for m2 in (m + 1)..n {
                    if perm[m] > perm[m2] {
                        let delta = rs.sym_colors(letters[m].color(), letters[m2].color());
                        pairs[m].push(FlowPair {
                            target: perm[m2],
                            delta,
                        });
                    }
                }
            }
            let acc = forced_flows(&perm, wl, &mut exps, &pairs, 0, QRat::one());
            total += &(&acc * scalar);
        }
    }
    total
}

/// Processes factors in order; each factor's outflow is the difference
/// between its settled exponent and the one `w` demands, distributed over its
/// nonzero pairs in all possible ways.
fn forced_flows(
    perm: &[usize],
    wl: &[LoopLetter],
    exps: &mut [i64],
    pairs: &[Vec<FlowPair>],
    m: usize,
    acc: QRat,
) -> QRat {
    if m == perm.len() {
        return acc;
    }
    let p = perm[m];
    let out = exps[p] - wl[p].exp();
    if out < 0 {
        return QRat::zero();
    }
    let dp: Vec<FlowPair> = pairs[m].iter().filter(|fp| fp.delta != 0).copied().collect();
    let mut total = QRat::zero();
    distribute(&dp, 0, out, exps, &mut |exps, factor| {
        let acc2 = &acc * factor;
        total += &forced_flows(perm, wl, exps, pairs, m + 1, acc2);
    });
    total
}

/// Runs `leaf` once per way of splitting `remaining` over `dp[idx..]`,
/// with the pair factors multiplied into the second argument and the target
/// exponents shifted for the duration of the call.
fn distribute(
    dp: &[FlowPair],
    idx: usize,
    remaining: i64,
    exps: &mut [i64],
    leaf: &mut dyn FnMut(&mut [i64], &QRat),
) {
    if idx == dp.len() {
        if remaining == 0 {
            leaf(exps, &QRat::one());
        }
        return;
    }
    if idx + 1 == dp.len() {
        let fp = dp[idx];
        let factor = pair_factor(fp.delta, remaining);
        exps[fp.target] += remaining;
        leaf(exps, &factor);
        exps[fp.target] -= remaining;
        return;
    }
    let fp = dp[idx];
    for r in 0..=remaining {
        let factor = pair_factor(fp.delta, r);
        exps[fp.target] += r;
        distribute(dp, idx + 1, remaining - r, exps, &mut |exps, rest| {
            leaf(exps, &(&factor * rest));
        });
        exps[fp.target] -= r;
    }
}

fn zero_shift_word(letters: &[LoopLetter], perm: &[usize]) -> Word {
    let mut ls = vec![LoopLetter::new(1, 0); letters.len()];
    for (m, &p) in perm.iter().enumerate() {
        ls[p] = letters[m];
    }
    Word::new(ls)
}

/// Merges monomials with identical letter sequences and drops the ones whose
/// scalars cancel.
fn aggregate_monomials(monomials: &[Monomial]) -> Vec<Monomial> {
    let mut agg: BTreeMap<Vec<LoopLetter>, QRat> = BTreeMap::new();
    for (scalar, letters) in monomials {
        if scalar.is_zero() {
            continue;
        }
        let entry = agg.entry(letters.clone()).or_insert_with(QRat::zero);
        *entry += scalar;
    }
    agg.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(letters, c)| (c, letters))
        .collect()
}

fn certified_leading(rs: &RootSystem, monomials: &[Monomial]) -> Result<(Word, QRat)> {
    max_support(rs, &aggregate_monomials(monomials))?.ok_or_else(|| {
        Error::LeadingWordUndetermined("the element is identically zero".into())
    })
}

/// Largest support word of an aggregated monomial list with its exact
/// coefficient, or `None` for the zero element.
///
/// The first position of a product can only receive exponent, never lose it,
/// so its letter ranges downward from the largest factor letter.  Each
/// candidate first letter is split off by [`condition_on_first`], leaving a
/// shorter product element; the search recurses on the first candidate whose
/// conditional element is nonzero.  Nonzero-ness is decided exactly: per
/// color arrangement, the element's generating function is a finite sum of
/// rational functions in the position variables (one geometric factor per
/// out-of-order pair), and [`is_zero_element`] tests the sum over a common
/// denominator.
fn max_support(rs: &RootSystem, monomials: &[Monomial]) -> Result<Option<(Word, QRat)>> {
    if monomials.is_empty() {
        return Ok(None);
    }
    let k = monomials[0].1.len();
    if k == 0 {
        let mut sum = QRat::zero();
        for (scalar, _) in monomials {
            sum += scalar;
        }
        return Ok(if sum.is_zero() {
            None
        } else {
            Some((Word::empty(), sum))
        });
    }
    let mut plain_support = false;
    let mut candidates: BTreeSet<Word> = BTreeSet::new();
    for (_, letters) in monomials {
        for perm in (0..k).permutations(k) {
            candidates.insert(zero_shift_word(letters, &perm));
        }
    }
    for cand in candidates.iter().rev() {
        if !exact_coeff_of(rs, monomials, cand).is_zero() {
            plain_support = true;
            break;
        }
    }
    if !plain_support && is_zero_element(rs, monomials) {
        return Ok(None);
    }
    let mut tried: BTreeSet<LoopLetter> = BTreeSet::new();
    let mut queue: BTreeSet<LoopLetter> = BTreeSet::new();
    for (_, letters) in monomials {
        for x in letters {
            if tried.insert(*x) {
                queue.insert(*x);
            }
        }
    }
    for _ in 0..4096 {
        let Some(&y) = queue.iter().next_back() else {
            break;
        };
        queue.remove(&y);
        let conditional = condition_on_first(rs, monomials, y);
        if let Some((tail, coeff)) = max_support(rs, &conditional)? {
            let mut ls = Vec::with_capacity(k);
            ls.push(y);
            ls.extend_from_slice(tail.letters());
            return Ok(Some((Word::new(ls), coeff)));
        }
        let next = LoopLetter::new(y.color(), y.exp() + 1);
        if tried.insert(next) {
            queue.insert(next);
        }
    }
    Err(Error::LeadingWordUndetermined(
        "first-letter descent did not settle".into(),
    ))
}

/// The element obtained by pinning the first position of every support word
/// to the letter `y`: each factor of matching color is placed first, the
/// exponent it still needs flows in from the earlier factors with nonzero
/// pairing (collecting one pair factor each), and what remains is a product
/// of the other factors in their original order.
fn condition_on_first(rs: &RootSystem, monomials: &[Monomial], y: LoopLetter) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::new();
    for (scalar, letters) in monomials {
        for m in 0..letters.len() {
            if letters[m].color() != y.color() || letters[m].exp() > y.exp() {
                continue;
            }
            let need = y.exp() - letters[m].exp();
            let feeders: Vec<(usize, i64)> = (0..m)
                .filter_map(|m2| {
                    let delta = rs.sym_colors(letters[m2].color(), letters[m].color());
                    (delta != 0).then_some((m2, delta))
                })
                .collect();
            if feeders.is_empty() && need > 0 {
                continue;
            }
            for split in compositions(need, feeders.len()) {
                let mut c = scalar.clone();
                for ((_, delta), r) in feeders.iter().zip(&split) {
                    c = &c * &pair_factor(*delta, *r);
                }
                let mut rest: Vec<LoopLetter> = Vec::with_capacity(letters.len() - 1);
                for (m2, x) in letters.iter().enumerate() {
                    if m2 == m {
                        continue;
                    }
                    rest.push(*x);
                }
                for ((m2, _), r) in feeders.iter().zip(&split) {
                    let x = rest[*m2];
                    rest[*m2] = LoopLetter::new(x.color(), x.exp() - r);
                }
                out.push((c, rest));
            }
        }
    }
    aggregate_monomials(&out)
}

/// All ways of writing `total` as an ordered sum of `parts` nonnegative
/// integers.
pub(crate) fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for r in 0..=total {
        for mut rest in compositions(total - r, parts - 1) {
            rest.insert(0, r);
            out.push(rest);
        }
    }
    out
}

/// A Laurent polynomial in the position variables with ℚ(q) coefficients,
/// keyed by exponent vector.
pub(crate) type MPoly = BTreeMap<Vec<i64>, QRat>;

pub(crate) fn mp_add(p: &mut MPoly, exps: Vec<i64>, c: &QRat) {
    let entry = p.entry(exps.clone()).or_insert_with(QRat::zero);
    *entry += c;
    if entry.is_zero() {
        p.remove(&exps);
    }
}

/// Multiplies by `ca·z_a + cb·z_b`.
pub(crate) fn mp_mul_linear(p: &MPoly, a: usize, ca: &QRat, b: usize, cb: &QRat) -> MPoly {
    let mut out = MPoly::new();
    for (exps, c) in p {
        let mut ea = exps.clone();
        ea[a] += 1;
        mp_add(&mut out, ea, &(c * ca));
        let mut eb = exps.clone();
        eb[b] += 1;
        mp_add(&mut out, eb, &(c * cb));
    }
    out
}

/// Exact zero test.  Per color arrangement, each (monomial, placement) pair
/// contributes `scalar · z^base · Π (q^δ z_src − z_tgt)/(z_src − q^δ z_tgt)`
/// over its out-of-order pairs; all support coefficients are the expansion
/// of the total in the region where left variables are small, so the element
/// vanishes exactly when every arrangement's sum vanishes as a rational
/// function.
fn is_zero_element(rs: &RootSystem, monomials: &[Monomial]) -> bool {
    struct Term {
        scalar: QRat,
        base: Vec<i64>,
        pairs: Vec<(usize, usize, i64)>,
    }
    let mut groups: BTreeMap<Vec<usize>, Vec<Term>> = BTreeMap::new();
    for (scalar, letters) in monomials {
        if scalar.is_zero() {
            continue;
        }
        let k = letters.len();
        for perm in (0..k).permutations(k) {
            let mut colors = vec![0usize; k];
            let mut base = vec![0i64; k];
            for m in 0..k {
                colors[perm[m]] = letters[m].color();
                base[perm[m]] = letters[m].exp();
            }
            let mut pairs = Vec::new();
            for m in 0..k {
                for m2 in (m + 1)..k {
                    if perm[m] > perm[m2] {
                        let delta = rs.sym_colors(letters[m].color(), letters[m2].color());
                        if delta != 0 {
                            pairs.push((perm[m], perm[m2], delta));
                        }
                    }
                }
            }
            pairs.sort_unstable();
            groups.entry(colors).or_default().push(Term {
                scalar: scalar.clone(),
                base,
                pairs,
            });
        }
    }
    for terms in groups.values() {
        let union: BTreeSet<(usize, usize, i64)> =
            terms.iter().flat_map(|t| t.pairs.iter().copied()).collect();
        let mut sum = MPoly::new();
        for t in terms {
            let mut poly = MPoly::new();
            mp_add(&mut poly, t.base.clone(), &t.scalar);
            for &(src, tgt, delta) in &union {
                poly = if t.pairs.binary_search(&(src, tgt, delta)).is_ok() {
                    mp_mul_linear(&poly, src, &QRat::q_power(delta), tgt, &-QRat::one())
                } else {
                    mp_mul_linear(&poly, src, &QRat::one(), tgt, &-QRat::q_power(delta))
                };
            }
            for (exps, c) in poly {
                mp_add(&mut sum, exps, &c);
            }
        }
        if !sum.is_empty() {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Table merge for window-complete factors
// ---------------------------------------------------------------------------

fn merge_tables(
    rs: &RootSystem,
    x: &LoopShuffleElement,
    y: &LoopShuffleElement,
    lo: i64,
    hi: i64,
) -> Result<LoopShuffleElement> {
    let mut terms: BTreeMap<Word, QRat> = BTreeMap::new();
    let mut truncated = false;
    for (u, cu) in &x.terms {
        u.validate_colors(rs.rank())?;
        for (v, cv) in &y.terms {
            v.validate_colors(rs.rank())?;
            let k = u.len();
            let n = k + v.len();
            let cuv = cu * cv;
            for positions in (0..n).combinations(k) {
                let mut colors = vec![0usize; n];
                let mut exps = vec![0i64; n];
                let mut from_u = vec![false; n];
                for (m, &p) in positions.iter().enumerate() {
                    colors[p] = u.letters()[m].color();
                    exps[p] = u.letters()[m].exp();
                    from_u[p] = true;
                }
                let mut vi = v.letters().iter();
                for p in 0..n {
                    if !from_u[p] {
                        let lt = vi.next().unwrap();
                        colors[p] = lt.color();
                        exps[p] = lt.exp();
                    }
                }
                let mut pairs: Vec<FlowPair> = Vec::new();
                let mut sources: Vec<usize> = Vec::new();
                for a in 0..n {
                    if !from_u[a] {
                        continue;
                    }
                    for b in 0..a {
                        if !from_u[b] {
                            let delta = rs.sym_colors(colors[a], colors[b]);
                            if delta != 0 {
                                truncated = true;
                            }
                            pairs.push(FlowPair { target: b, delta });
                            sources.push(a);
                        }
                    }
                }
                merge_flows(
                    &pairs,
                    &sources,
                    0,
                    &colors,
                    &mut exps,
                    lo,
                    hi,
                    &cuv,
                    &mut terms,
                    &mut truncated,
                );
            }
        }
    }
    terms.retain(|_, c| !c.is_zero());
    Ok(LoopShuffleElement {
        rank: rs.rank(),
        lo,
        hi,
        terms,
        truncated,
        monomials: None,
    })
}

#[allow(clippy::too_many_arguments)]
fn merge_flows(
    pairs: &[FlowPair],
    sources: &[usize],
    idx: usize,
    colors: &[usize],
    exps: &mut [i64],
    lo: i64,
    hi: i64,
    acc: &QRat,
    terms: &mut BTreeMap<Word, QRat>,
    truncated: &mut bool,
) {
    if idx == pairs.len() {
        if exps.iter().any(|&e| e > hi || e < lo) {
            *truncated = true;
            return;
        }
        let letters: Vec<LoopLetter> = colors
            .iter()
            .zip(exps.iter())
            .map(|(&c, &e)| LoopLetter::new(c, e))
            .collect();
        let entry = terms.entry(Word::new(letters)).or_insert_with(QRat::zero);
        *entry += acc;
        if entry.is_zero() {
            let letters: Vec<LoopLetter> = colors
                .iter()
                .zip(exps.iter())
                .map(|(&c, &e)| LoopLetter::new(c, e))
                .collect();
            terms.remove(&Word::new(letters));
        }
        return;
    }
    let fp = pairs[idx];
    let src = sources[idx];
    if fp.delta == 0 {
        let acc2 = acc * &pair_factor(0, 0);
        merge_flows(
            pairs, sources, idx + 1, colors, exps, lo, hi, &acc2, terms, truncated,
        );
        return;
    }
    let budget = exps[src] - lo;
    if budget < 0 {
        *truncated = true;
        return;
    }
    for r in 0..=budget {
        let acc2 = acc * &pair_factor(fp.delta, r);
        exps[src] -= r;
        exps[fp.target] += r;
        merge_flows(
            pairs, sources, idx + 1, colors, exps, lo, hi, &acc2, terms, truncated,
        );
        exps[src] += r;
        exps[fp.target] -= r;
    }
}

// ---------------------------------------------------------------------------
// Bracketings and their shuffle images
// ---------------------------------------------------------------------------

/// A bracketing of a word: a letter, a two-sided bracket `LR − q^pairing RL`,
/// or an ordered product of bracketings.
#[derive(Clone, Debug, PartialEq)]
pub enum BracketExpr {
    Letter(LoopLetter),
    Bracket {
        pairing: i64,
        left: Box<BracketExpr>,
        right: Box<BracketExpr>,
    },
    Product(Vec<BracketExpr>),
}

/// The bracketed root vector of a word: Lyndon words split at their longest
/// proper Lyndon suffix, with the bracket's `q`-power given by the
/// symmetrized pairing of the two halves' horizontal degrees; general words
/// are the ordered product over their canonical factors.
pub fn bracket_vector(rs: &RootSystem, w: &Word) -> Result<BracketExpr> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    w.validate_colors(rs.rank())?;
    let factors = canonical_factorization(w);
    if factors.len() == 1 {
        lyndon_bracket(rs, w)
    } else {
        let parts = factors
            .iter()
            .map(|f| lyndon_bracket(rs, f))
            .collect::<Result<Vec<_>>>()?;
        Ok(BracketExpr::Product(parts))
    }
}

fn lyndon_bracket(rs: &RootSystem, w: &Word) -> Result<BracketExpr> {
    if w.len() == 1 {
        return Ok(BracketExpr::Letter(w.letters()[0]));
    }
    let (l1, l2) = costandard_factorization(w)?;
    let pairing = rs.sym(&l1.hdeg(rs.rank()), &l2.hdeg(rs.rank()));
    Ok(BracketExpr::Bracket {
        pairing,
        left: Box::new(lyndon_bracket(rs, &l1)?),
        right: Box::new(lyndon_bracket(rs, &l2)?),
    })
}

/// Expands a bracketing into a list of scalar-weighted generator products.
pub fn expand_bracket(expr: &BracketExpr) -> Vec<Monomial> {
    match expr {
        BracketExpr::Letter(x) => vec![(QRat::one(), vec![*x])],
        BracketExpr::Bracket {
            pairing,
            left,
            right,
        } => {
            let l = expand_bracket(left);
            let r = expand_bracket(right);
            let mut out = Vec::with_capacity(2 * l.len() * r.len());
            let qp = QRat::q_power(*pairing);
            for (cl, wl) in &l {
                for (cr, wr) in &r {
                    let c = cl * cr;
                    let mut fwd = Vec::with_capacity(wl.len() + wr.len());
                    fwd.extend_from_slice(wl);
                    fwd.extend_from_slice(wr);
                    out.push((c.clone(), fwd));
                    let mut rev = Vec::with_capacity(wl.len() + wr.len());
                    rev.extend_from_slice(wr);
                    rev.extend_from_slice(wl);
                    out.push((-(&c * &qp), rev));
                }
            }
            out
        }
        BracketExpr::Product(fs) => {
            let mut out: Vec<Monomial> = vec![(QRat::one(), Vec::new())];
            for f in fs {
                let part = expand_bracket(f);
                let mut next = Vec::with_capacity(out.len() * part.len());
                for (ca, la) in &out {
                    for (cb, lb) in &part {
                        let mut letters = Vec::with_capacity(la.len() + lb.len());
                        letters.extend_from_slice(la);
                        letters.extend_from_slice(lb);
                        next.push((ca * cb, letters));
                    }
                }
                out = next;
            }
            out
        }
    }
}

/// Shuffle image of the bracketed vector of a loop word, materialized on the
/// window and carrying its exact symbolic form.
pub fn phi_loop(rs: &RootSystem, w: &Word, lo: i64, hi: i64) -> Result<LoopShuffleElement> {
    let expr = bracket_vector(rs, w)?;
    LoopShuffleElement::from_monomials(rs, expand_bracket(&expr), lo, hi)
}

/// Shuffle image of the bracketed vector of a finite word.
pub fn phi_finite(rs: &RootSystem, w: &Word) -> Result<FiniteShuffleElement> {
    if !w.is_finite() {
        return Err(Error::BadDegree(format!("{w} has nonzero exponents")));
    }
    let expr = bracket_vector(rs, w)?;
    let mut out = FiniteShuffleElement::zero();
    for (c, letters) in expand_bracket(&expr) {
        let mut prod = FiniteShuffleElement::one();
        for x in letters {
            let gen = FiniteShuffleElement::from_word(Word::letter(x.color(), 0))?;
            prod = shuffle_finite(rs, &prod, &gen)?;
        }
        out.add_scaled(&prod, &c);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Good words
// ---------------------------------------------------------------------------

/// Pivot words of the Gaussian elimination, largest column first, of the
/// shuffle images of all standard finite words of horizontal degree `alpha`.
/// Returned in increasing word order.
pub fn good_words_finite(dict: &LoopLyndon, alpha: &RootVec) -> Result<Vec<Word>> {
    let rs = dict.root_system();
    let mut rows: Vec<FiniteShuffleElement> = dict
        .standard_words(alpha, 0, 0, 0)
        .iter()
        .map(|w| phi_finite(rs, w))
        .collect::<Result<_>>()?;
    let mut pivots = Vec::new();
    loop {
        rows.retain(|r| !r.is_zero());
        let Some(best) = rows
            .iter()
            .enumerate()
            .max_by(|(_, a), (_, b)| a.leading().unwrap().0.cmp(b.leading().unwrap().0))
            .map(|(i, _)| i)
        else {
            break;
        };
        let row = rows.swap_remove(best);
        let (w, c) = row.leading().unwrap();
        let (w, c) = (w.clone(), c.clone());
        for other in &mut rows {
            let co = other.coeff(&w);
            if !co.is_zero() {
                other.add_scaled(&row, &-(co.div(&c)?));
            }
        }
        pivots.push(w);
    }
    pivots.sort();
    Ok(pivots)
}

/// Pivot words of the elimination of the shuffle images of all standard loop
/// words of bidegree `(alpha, d)` with exponents in the window.  Each pivot
/// is a certified leading word, so the answer does not depend on the window
/// as long as every pivot stays inside it.
pub fn good_words_loop(
    dict: &LoopLyndon,
    alpha: &RootVec,
    d: i64,
    lo: i64,
    hi: i64,
) -> Result<Vec<Word>> {
    let rs = dict.root_system();
    let mut rows: Vec<LoopShuffleElement> = dict
        .standard_words(alpha, d, lo, hi)
        .iter()
        .map(|w| phi_loop(rs, w, lo, hi))
        .collect::<Result<_>>()?;
    let mut pivots = Vec::new();
    while !rows.is_empty() {
        let mut leads = Vec::with_capacity(rows.len());
        for row in &rows {
            leads.push(row.leading_word(rs)?);
        }
        let best = leads
            .iter()
            .enumerate()
            .max_by(|(_, a), (_, b)| a.0.cmp(&b.0))
            .map(|(i, _)| i)
            .unwrap();
        let row = rows.swap_remove(best);
        let (w, c) = leads.swap_remove(best);
        for other in &mut rows {
            let co = other.coeff(&w)?;
            if !co.is_zero() {
                other.add_scaled(&row, &-(co.div(&c)?))?;
            }
        }
        pivots.push(w);
    }
    pivots.sort();
    Ok(pivots)
}

/// Whether `w` is a pivot of the elimination in its own bidegree, the linear
/// test of goodness, run on the given window.
pub fn good_word_linear_test(dict: &LoopLyndon, w: &Word, lo: i64, hi: i64) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let alpha = w.hdeg(dict.root_system().rank());
    let pivots = good_words_loop(dict, &alpha, w.vdeg(), lo, hi)?;
    Ok(pivots.binary_search(w).is_ok())
}

// ---------------------------------------------------------------------------
// Defining relations
// ---------------------------------------------------------------------------

/// The alternating sum `Σ_k (−1)^k [m over k]_{q_i} Φ(e_i^k e_j e_i^{m−k})`
/// with `m = 1 − a_ij`, which must vanish in the finite shuffle algebra.
pub fn serre_residual_finite(rs: &RootSystem, i: usize, j: usize) -> Result<FiniteShuffleElement> {
    if i == j {
        return Err(Error::BadDegree(format!("equal colors {i} in a Serre sum")));
    }
    Word::finite(&[i, j]).validate_colors(rs.rank())?;
    let m = 1 - rs.cartan(i, j);
    let mut out = FiniteShuffleElement::zero();
    for k in 0..=m {
        let mut colors = Vec::with_capacity(m as usize + 1);
        colors.extend(std::iter::repeat(i).take(k as usize));
        colors.push(j);
        colors.extend(std::iter::repeat(i).take((m - k) as usize));
        let mut prod = FiniteShuffleElement::one();
        for c in colors {
            prod = shuffle_finite(rs, &prod, &FiniteShuffleElement::from_word(Word::letter(c, 0))?)?;
        }
        let mut coeff = QRat::from_laurent(qbinom_sym(m, k, rs.d(i)));
        if k % 2 == 1 {
            coeff = -coeff;
        }
        out.add_scaled(&prod, &coeff);
    }
    Ok(out)
}

/// Checks the finite Serre sum for every ordered pair of distinct colors.
/// Returns the number of pairs checked.
pub fn verify_serre_finite(rs: &RootSystem) -> Result<usize> {
    let mut cases = 0;
    for i in 1..=rs.rank() {
        for j in 1..=rs.rank() {
            if i == j {
                continue;
            }
            let res = serre_residual_finite(rs, i, j)?;
            if !res.is_zero() {
                return Err(Error::VerificationFailed(format!(
                    "finite Serre sum for colors ({i}, {j}) is {res}"
                )));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

/// Monomials of the loop Serre sum for colors `i ≠ j` at fixed modes: over
/// all orderings `σ` of the `i`-modes and all split points `k`,
/// `(−1)^k [m over k]_{q_i}` times the generator product
/// `i^(modes_{σ(1)}) ⋯ i^(modes_{σ(k)}) j^(jmode) i^(modes_{σ(k+1)}) ⋯`.
pub fn serre_monomials_loop(
    rs: &RootSystem,
    i: usize,
    j: usize,
    imodes: &[i64],
    jmode: i64,
) -> Result<Vec<Monomial>> {
    if i == j {
        return Err(Error::BadDegree(format!("equal colors {i} in a Serre sum")));
    }
    Word::finite(&[i, j]).validate_colors(rs.rank())?;
    let m = 1 - rs.cartan(i, j);
    if imodes.len() as i64 != m {
        return Err(Error::BadDegree(format!(
            "{} modes supplied for colors ({i}, {j}) needing {m}",
            imodes.len()
        )));
    }
    let mut out = Vec::new();
    for sigma in (0..imodes.len()).permutations(imodes.len()) {
        for k in 0..=m {
            let mut coeff = QRat::from_laurent(qbinom_sym(m, k, rs.d(i)));
            if k % 2 == 1 {
                coeff = -coeff;
            }
            let mut letters = Vec::with_capacity(imodes.len() + 1);
            for (t, &s) in sigma.iter().enumerate() {
                if t == k as usize {
                    letters.push(LoopLetter::new(j, jmode));
                }
                letters.push(LoopLetter::new(i, imodes[s]));
            }
            if k as usize == imodes.len() {
                letters.push(LoopLetter::new(j, jmode));
            }
            out.push((coeff, letters));
        }
    }
    Ok(out)
}

/// The loop Serre sum at fixed modes, materialized on the window.
pub fn serre_residual_loop(
    rs: &RootSystem,
    i: usize,
    j: usize,
    imodes: &[i64],
    jmode: i64,
    lo: i64,
    hi: i64,
) -> Result<LoopShuffleElement> {
    LoopShuffleElement::from_monomials(rs, serre_monomials_loop(rs, i, j, imodes, jmode)?, lo, hi)
}

/// The cleared degree-two relation
/// `e_{i,r} e_{j,s+1} − q^{−d_ij} e_{i,r+1} e_{j,s} − q^{−d_ij} e_{j,s+1} e_{i,r} + e_{j,s} e_{i,r+1}`,
/// which must vanish identically (colors may coincide).
pub fn rel0_residual_loop(
    rs: &RootSystem,
    i: usize,
    r: i64,
    j: usize,
    s: i64,
    lo: i64,
    hi: i64,
) -> Result<LoopShuffleElement> {
    Word::finite(&[i, j]).validate_colors(rs.rank())?;
    let qd = QRat::q_power(-rs.sym_colors(i, j));
    let monomials = vec![
        (
            QRat::one(),
            vec![LoopLetter::new(i, r), LoopLetter::new(j, s + 1)],
        ),
        (
            -qd.clone(),
            vec![LoopLetter::new(i, r + 1), LoopLetter::new(j, s)],
        ),
        (
            -qd,
            vec![LoopLetter::new(j, s + 1), LoopLetter::new(i, r)],
        ),
        (
            QRat::one(),
            vec![LoopLetter::new(j, s), LoopLetter::new(i, r + 1)],
        ),
    ];
    LoopShuffleElement::from_monomials(rs, monomials, lo, hi)
}

/// Checks the loop Serre sum on the window for every ordered pair of
/// distinct colors and every choice of modes with `|mode| ≤ mode_bound`.
/// Returns the number of mode tuples checked.
pub fn verify_serre_loop(
    rs: &RootSystem,
    mode_bound: i64,
    lo: i64,
    hi: i64,
) -> Result<usize> {
    let mut cases = 0;
    let modes: Vec<i64> = (-mode_bound..=mode_bound).collect();
    for i in 1..=rs.rank() {
        for j in 1..=rs.rank() {
            if i == j {
                continue;
            }
            let m = (1 - rs.cartan(i, j)) as usize;
            for imodes in std::iter::repeat(modes.iter().copied())
                .take(m)
                .multi_cartesian_product()
            {
                for &jmode in &modes {
                    let res = serre_residual_loop(rs, i, j, &imodes, jmode, lo, hi)?;
                    if !res.is_zero_on_window() {
                        return Err(Error::VerificationFailed(format!(
                            "loop Serre sum for colors ({i}, {j}) at modes {imodes:?}, {jmode} is {res}"
                        )));
                    }
                    cases += 1;
                }
            }
        }
    }
    Ok(cases)
}

/// Checks the cleared degree-two relation on the window for every ordered
/// pair of colors and every pair of modes with `|mode| ≤ mode_bound`.
/// Returns the number of cases checked.
pub fn verify_rel0_loop(rs: &RootSystem, mode_bound: i64, lo: i64, hi: i64) -> Result<usize> {
    let mut cases = 0;
    for i in 1..=rs.rank() {
        for j in 1..=rs.rank() {
            for r in -mode_bound..=mode_bound {
                for s in -mode_bound..=mode_bound {
                    let res = rel0_residual_loop(rs, i, r, j, s, lo, hi)?;
                    if !res.is_zero_on_window() {
                        return Err(Error::VerificationFailed(format!(
                            "cleared degree-two relation for colors ({i}, {j}) at modes ({r}, {s}) is {res}"
                        )));
                    }
                    cases += 1;
                }
            }
        }
    }
    Ok(cases)
}

// ---------------------------------------------------------------------------
// Leading-word and triangularity sweeps
// ---------------------------------------------------------------------------

/// For every positive root `alpha`: the finite shuffle image of the
/// bracketed dictionary word has that word as its leading word, the
/// elimination pivots of degree `alpha` are exactly the standard words, and
/// the smallest pivot is the dictionary word.  Returns the number of roots
/// checked.
pub fn verify_leading_words_finite(dict: &LoopLyndon) -> Result<usize> {
    let rs = dict.root_system();
    let mut cases = 0;
    for alpha in rs.positive_roots() {
        let l = dict.word(alpha, 0)?;
        let img = phi_finite(rs, &l)?;
        let Some((lead, coeff)) = img.leading() else {
            return Err(Error::VerificationFailed(format!(
                "image of the bracketed word of {alpha} is zero"
            )));
        };
        if *lead != l || coeff.is_zero() {
            return Err(Error::VerificationFailed(format!(
                "leading word of the image of {l} is {lead}"
            )));
        }
        let goods = good_words_finite(dict, alpha)?;
        let std_words = dict.standard_words(alpha, 0, 0, 0);
        if goods != std_words {
            return Err(Error::VerificationFailed(format!(
                "pivots of degree {alpha} are {goods:?}, standard words are {std_words:?}"
            )));
        }
        if goods.first() != Some(&l) {
            return Err(Error::VerificationFailed(format!(
                "smallest pivot of degree {alpha} is {:?}, dictionary word is {l}",
                goods.first()
            )));
        }
        cases += 1;
    }
    Ok(cases)
}

/// For every positive root `alpha` and every level `0 ≤ d ≤ |alpha|`: the
/// certified leading word of the loop shuffle image of the bracketed
/// dictionary word is the dictionary word itself.  Returns the number of
/// pairs checked.
pub fn verify_leading_words_loop(dict: &LoopLyndon) -> Result<usize> {
    let rs = dict.root_system();
    let mut cases = 0;
    for alpha in rs.positive_roots() {
        for d in 0..=alpha.height() {
            let l = dict.word(alpha, d)?;
            let exps: Vec<i64> = l.letters().iter().map(|x| x.exp()).collect();
            let lo = exps.iter().copied().min().unwrap();
            let hi = exps.iter().copied().max().unwrap();
            let img = phi_loop(rs, &l, lo, hi)?;
            let (lead, coeff) = img.leading_word(rs)?;
            if lead != l || coeff.is_zero() {
                return Err(Error::VerificationFailed(format!(
                    "leading word of the image of {l} is {lead}"
                )));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

/// For every standard word of bidegree `(alpha, d)` on the window: the
/// certified leading word of its shuffle image is the word itself, so the
/// images are triangular with distinct leading words.  Returns the number of
/// words checked.
pub fn verify_pbw_triangularity(
    dict: &LoopLyndon,
    alpha: &RootVec,
    d: i64,
    lo: i64,
    hi: i64,
) -> Result<usize> {
    let rs = dict.root_system();
    let words = dict.standard_words(alpha, d, lo, hi);
    for w in &words {
        let img = phi_loop(rs, w, lo, hi)?;
        let (lead, coeff) = img.leading_word(rs)?;
        if lead != *w || coeff.is_zero() {
            return Err(Error::VerificationFailed(format!(
                "leading word of the image of {w} is {lead}"
            )));
        }
    }
    Ok(words.len())
}
