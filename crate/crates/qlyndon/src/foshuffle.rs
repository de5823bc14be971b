//! The rational-function model of the shuffle algebra, and its comparison
//! with the loop-word model.
//!
//! An element with `profile[i]` variables of color `i + 1` is stored as a
//! single Laurent-polynomial *numerator* over ℚ(q); the denominator is fixed
//! once and for all as the product of `z_u − z_v` over pairs of
//! distinct-color slots and is never materialized.  Slots are laid out
//! color-major (all color-1 slots first), and the numerator must be
//! symmetric within each color block.  `degree` tracks the homogeneous
//! degree of the underlying rational function, i.e. numerator degree minus
//! one per distinct-color pair.
//!
//! The product of two elements multiplies their numerators together with
//! one linear factor `z_u − q^{−d} z_v` per cross pair of slots (`d` the
//! symmetrized pairing of their colors, same-color pairs included) and
//! symmetrizes over per-color shuffles of the slots.  Working over the
//! common denominator turns the symmetrization into a polynomial sum that
//! the per-color Vandermonde divides exactly, so no rational arithmetic is
//! ever needed.
//!
//! [`upsilon_monomial`] embeds products of single-letter generators into
//! this model, and [`iota`] expands an element into a loop-word coefficient
//! table by reading off series coefficients in the region where variables
//! of earlier positions are small — the same region the loop-word product
//! uses, which is what [`verify_composition`] checks.  The coefficient
//! tables that arise this way satisfy linear relations (an adjacent-swap
//! identity, a Serre-type alternating sum, and a full alternating shift sum
//! that recovers the numerator's coefficients) together with a prefix-sum
//! floor; [`verify_image_constraints`] checks all of them on a window.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde_json::json;

use crate::error::{Error, Result};
use crate::qfield::{qbinom_sym, QRat};
use crate::rootsys::RootSystem;
use crate::shuffle::{compositions, mp_add, mp_mul_linear, LoopShuffleElement, MPoly};
use crate::words::{LoopLetter, Word};

/// Default ceiling on the total number of variables a product may reach.
/// Every extra variable multiplies both the shuffle-coset count and the
/// symmetrization cost, so crossing this line is an explicit decision made
/// through [`fo_mult_capped`].
pub const PROFILE_CAP: usize = 5;

/// Starting slot of each color block for a given profile.
fn offsets(profile: &[usize]) -> Vec<usize> {
    let mut off = Vec::with_capacity(profile.len());
    let mut acc = 0;
    for &k in profile {
        off.push(acc);
        acc += k;
    }
    off
}

/// Color of each slot, in slot order.
fn slot_colors(profile: &[usize]) -> Vec<usize> {
    let mut colors = Vec::new();
    for (i, &k) in profile.iter().enumerate() {
        colors.extend(std::iter::repeat(i + 1).take(k));
    }
    colors
}

/// A Laurent polynomial over ℚ(q) in colored slot variables, keyed by
/// exponent vector.  The profile records how many slots carry each color;
/// slots of one color are consecutive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredLaurentPoly {
    profile: Vec<usize>,
    terms: MPoly,
}

impl ColoredLaurentPoly {
    pub fn zero(profile: Vec<usize>) -> Self {
        ColoredLaurentPoly {
            profile,
            terms: MPoly::new(),
        }
    }

    pub fn constant(profile: Vec<usize>, c: QRat) -> Self {
        let n: usize = profile.iter().sum();
        let mut p = Self::zero(profile);
        if !c.is_zero() {
            p.terms.insert(vec![0; n], c);
        }
        p
    }

    /// Builds a polynomial from explicit (exponent vector, coefficient)
    /// pairs; vectors must cover every slot of the profile.
    pub fn from_terms(profile: Vec<usize>, terms: Vec<(Vec<i64>, QRat)>) -> Result<Self> {
        let n: usize = profile.iter().sum();
        let mut p = Self::zero(profile);
        for (exps, c) in terms {
            if exps.len() != n {
                return Err(Error::BadDegree(format!(
                    "exponent vector has {} entries but the profile has {} slots",
                    exps.len(),
                    n
                )));
            }
            p.add_term(exps, &c);
        }
        Ok(p)
    }

    pub fn add_term(&mut self, exps: Vec<i64>, c: &QRat) {
        mp_add(&mut self.terms, exps, c);
    }

    pub fn rank(&self) -> usize {
        self.profile.len()
    }

    pub fn profile(&self) -> &[usize] {
        &self.profile
    }

    pub fn num_vars(&self) -> usize {
        self.profile.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &QRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i64]) -> QRat {
        self.terms.get(exps).cloned().unwrap_or_else(QRat::zero)
    }

    pub fn add_scaled(&mut self, other: &Self, c: &QRat) {
        assert_eq!(self.profile, other.profile, "profile mismatch");
        for (exps, c2) in &other.terms {
            mp_add(&mut self.terms, exps.clone(), &(c2 * c));
        }
    }

    /// Product of two polynomials over the same profile.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.profile, other.profile, "profile mismatch");
        let mut out = Self::zero(self.profile.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exps: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                mp_add(&mut out.terms, exps, &(c1 * c2));
            }
        }
        out
    }

    /// Multiplies by the linear form `ca·z_u + cb·z_v`.
    fn mul_linear(&self, u: usize, ca: &QRat, v: usize, cb: &QRat) -> Self {
        ColoredLaurentPoly {
            profile: self.profile.clone(),
            terms: mp_mul_linear(&self.terms, u, ca, v, cb),
        }
    }

    /// Re-embeds into a larger profile, sending slot `s` to `map[s]`.
    fn relabel(&self, profile: Vec<usize>, map: &[usize]) -> Self {
        let n: usize = profile.iter().sum();
        let mut out = Self::zero(profile);
        for (exps, c) in &self.terms {
            let mut e2 = vec![0i64; n];
            for (s, &e) in exps.iter().enumerate() {
                e2[map[s]] = e;
            }
            out.terms.insert(e2, c.clone());
        }
        out
    }

    /// Exact division by `z_u − z_v`, if the remainder vanishes.
    fn divide_exact_by_diff(&self, u: usize, v: usize) -> Option<Self> {
        if self.terms.is_empty() {
            return Some(self.clone());
        }
        let jmin = self.terms.keys().map(|e| e[u]).min().unwrap();
        let jmax = self.terms.keys().map(|e| e[u]).max().unwrap();
        if jmax == jmin {
            return None;
        }
        let d = (jmax - jmin) as usize;
        // slice into coefficients of z_u^{jmin + j}, with the u-entry zeroed
        let mut a: Vec<MPoly> = vec![MPoly::new(); d + 1];
        for (e, c) in &self.terms {
            let j = (e[u] - jmin) as usize;
            let mut e2 = e.clone();
            e2[u] = 0;
            mp_add(&mut a[j], e2, c);
        }
        // synthetic division: b_{j−1} = a_j + z_v·b_j, remainder a_0 + z_v·b_0
        let shift_v = |p: &MPoly, acc: &mut MPoly| {
            for (e, c) in p {
                let mut e2 = e.clone();
                e2[v] += 1;
                mp_add(acc, e2, c);
            }
        };
        let mut b: Vec<MPoly> = vec![MPoly::new(); d];
        b[d - 1] = a[d].clone();
        for j in (1..d).rev() {
            let mut t = a[j].clone();
            shift_v(&b[j], &mut t);
            b[j - 1] = t;
        }
        let mut rem = a[0].clone();
        shift_v(&b[0], &mut rem);
        if !rem.is_empty() {
            return None;
        }
        let mut terms = MPoly::new();
        for (j, bj) in b.iter().enumerate() {
            for (e, c) in bj {
                let mut e2 = e.clone();
                e2[u] = jmin + j as i64;
                mp_add(&mut terms, e2, c);
            }
        }
        Some(ColoredLaurentPoly {
            profile: self.profile.clone(),
            terms,
        })
    }

    /// Whether the polynomial is invariant under permuting the slots of each
    /// color among themselves.
    pub fn is_color_symmetric(&self) -> bool {
        let off = offsets(&self.profile);
        for (i, &k) in self.profile.iter().enumerate() {
            for t in 0..k.saturating_sub(1) {
                let (u, v) = (off[i] + t, off[i] + t + 1);
                let swapped: MPoly = self
                    .terms
                    .iter()
                    .map(|(e, c)| {
                        let mut e2 = e.clone();
                        e2.swap(u, v);
                        (e2, c.clone())
                    })
                    .collect();
                if swapped != self.terms {
                    return false;
                }
            }
        }
        true
    }

    /// Total degree if every term has the same one; the zero polynomial
    /// reports degree 0.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut sums = self.terms.keys().map(|e| e.iter().sum::<i64>());
        match sums.next() {
            None => Some(0),
            Some(d0) => sums.all(|d| d == d0).then_some(d0),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "profile": self.profile,
            "terms": self
                .terms
                .iter()
                .map(|(e, c)| json!({ "exponents": e, "coeff": c.render() }))
                .collect::<Vec<_>>(),
        })
    }
}

/// Result of testing one wheel condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WheelOutcome {
    /// The substitution annihilates the numerator.
    Holds,
    /// The substitution leaves a nonzero polynomial.
    Violated,
    /// The profile has too few variables of the given colors for the
    /// condition to say anything.
    NotApplicable,
}

/// Checks the wheel condition for the ordered color pair `(i, j)`: with
/// `m = 1 − a_ij`, substituting `w·q_i^0, w·q_i^2, …, w·q_i^{2(m−1)}` for the
/// first `m` slots of color `i` and `w·q_i^{−a_ij}` for the first slot of
/// color `j` must kill the numerator.  For a color-symmetric numerator,
/// checking the first slots covers every choice of slots.  A single color
/// carries no wheel condition, so `i == j` is reported as not applicable.
pub fn wheel_check(
    rs: &RootSystem,
    r: &ColoredLaurentPoly,
    i: usize,
    j: usize,
) -> Result<WheelOutcome> {
    let rank = rs.rank();
    if r.rank() != rank {
        return Err(Error::BadDegree(format!(
            "profile has {} colors but the root system has rank {}",
            r.rank(),
            rank
        )));
    }
    if i == 0 || i > rank {
        return Err(Error::BadColor(i, rank));
    }
    if j == 0 || j > rank {
        return Err(Error::BadColor(j, rank));
    }
    if i == j {
        return Ok(WheelOutcome::NotApplicable);
    }
    let m = (1 - rs.cartan(i, j)) as usize;
    let profile = r.profile();
    if profile[i - 1] < m || profile[j - 1] < 1 {
        return Ok(WheelOutcome::NotApplicable);
    }
    let off = offsets(profile);
    let di = rs.d(i);
    // q-exponent carried per unit of a substituted slot's exponent
    let mut sub: BTreeMap<usize, i64> = BTreeMap::new();
    for t in 0..m {
        sub.insert(off[i - 1] + t, 2 * di * t as i64);
    }
    sub.insert(off[j - 1], -di * rs.cartan(i, j));
    let mut image = MPoly::new();
    for (exps, c) in r.terms() {
        let mut w_exp = 0i64;
        let mut qshift = 0i64;
        let mut key = Vec::with_capacity(exps.len() - sub.len() + 1);
        key.push(0);
        for (s, &e) in exps.iter().enumerate() {
            match sub.get(&s) {
                Some(&mult) => {
                    w_exp += e;
                    qshift += mult * e;
                }
                None => key.push(e),
            }
        }
        key[0] = w_exp;
        mp_add(&mut image, key, &(c * &QRat::q_power(qshift)));
    }
    Ok(if image.is_empty() {
        WheelOutcome::Holds
    } else {
        WheelOutcome::Violated
    })
}

/// A validated element of the rational model: a color-symmetric,
/// homogeneous numerator passing every wheel condition, together with the
/// homogeneous degree of the underlying rational function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymRatFunction {
    numerator: ColoredLaurentPoly,
    degree: i64,
}

impl SymRatFunction {
    /// Validates and wraps a numerator.  Rejects numerators that are not
    /// symmetric within colors, not homogeneous, or that violate a wheel
    /// condition.
    pub fn new(rs: &RootSystem, numerator: ColoredLaurentPoly) -> Result<Self> {
        let rank = rs.rank();
        if numerator.rank() != rank {
            return Err(Error::BadDegree(format!(
                "profile has {} colors but the root system has rank {}",
                numerator.rank(),
                rank
            )));
        }
        if !numerator.is_color_symmetric() {
            return Err(Error::VerificationFailed(
                "numerator is not symmetric within colors".into(),
            ));
        }
        let Some(hom) = numerator.homogeneous_degree() else {
            return Err(Error::VerificationFailed(
                "numerator is not homogeneous".into(),
            ));
        };
        for i in 1..=rank {
            for j in 1..=rank {
                if i != j && wheel_check(rs, &numerator, i, j)? == WheelOutcome::Violated {
                    return Err(Error::VerificationFailed(format!(
                        "wheel condition violated for colors ({i},{j})"
                    )));
                }
            }
        }
        let profile = numerator.profile();
        let mut cross = 0i64;
        for i in 0..rank {
            for j in (i + 1)..rank {
                cross += (profile[i] * profile[j]) as i64;
            }
        }
        Ok(SymRatFunction {
            degree: hom - cross,
            numerator,
        })
    }

    pub fn numerator(&self) -> &ColoredLaurentPoly {
        &self.numerator
    }

    pub fn profile(&self) -> &[usize] {
        self.numerator.profile()
    }

    pub fn rank(&self) -> usize {
        self.numerator.rank()
    }

    pub fn num_vars(&self) -> usize {
        self.numerator.num_vars()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Homogeneous degree of the rational function (not of the numerator).
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "profile": self.numerator.profile(),
            "degree": self.degree,
            "numerator": self
                .numerator
                .terms
                .iter()
                .map(|(e, c)| json!({ "exponents": e, "coeff": c.render() }))
                .collect::<Vec<_>>(),
        })
    }
}

/// Product in the rational model, refusing results with more than
/// [`PROFILE_CAP`] variables.
pub fn fo_mult(rs: &RootSystem, f: &SymRatFunction, g: &SymRatFunction) -> Result<SymRatFunction> {
    fo_mult_capped(rs, f, g, PROFILE_CAP)
}

/// Product in the rational model with an explicit variable budget.
///
/// Over the common denominator the product is a sum over per-color shuffles
/// of the merged slots: each shuffle relabels the two numerators, multiplies
/// by `z_u − q^{−d} z_v` for every cross pair `(u, v)` of a left and a right
/// slot, and by the reordering sign together with the same-color differences
/// inside each factor; the per-color Vandermonde of the merged slots then
/// divides the sum exactly.
pub fn fo_mult_capped(
    rs: &RootSystem,
    f: &SymRatFunction,
    g: &SymRatFunction,
    cap: usize,
) -> Result<SymRatFunction> {
    let rank = rs.rank();
    let kf = f.profile();
    let kg = g.profile();
    let kt: Vec<usize> = kf.iter().zip(kg).map(|(a, b)| a + b).collect();
    let total: usize = kt.iter().sum();
    if total > cap {
        return Err(Error::ProfileTooLarge { got: total, cap });
    }
    let off = offsets(&kt);
    let colors = slot_colors(&kt);
    let choices: Vec<Vec<Vec<usize>>> = (0..rank)
        .map(|i| (0..kt[i]).combinations(kf[i]).collect())
        .collect();
    let minus_one = -QRat::one();
    let mut sum = ColoredLaurentPoly::zero(kt.clone());
    for pick in choices.iter().multi_cartesian_product() {
        let mut map_f = Vec::with_capacity(f.num_vars());
        let mut map_g = Vec::with_capacity(g.num_vars());
        let mut f_by_color: Vec<Vec<usize>> = vec![Vec::new(); rank];
        let mut g_by_color: Vec<Vec<usize>> = vec![Vec::new(); rank];
        for i in 0..rank {
            for a in 0..kt[i] {
                let slot = off[i] + a;
                if pick[i].contains(&a) {
                    map_f.push(slot);
                    f_by_color[i].push(slot);
                } else {
                    map_g.push(slot);
                    g_by_color[i].push(slot);
                }
            }
        }
        let f_slots: Vec<usize> = f_by_color.iter().flatten().copied().collect();
        let g_slots: Vec<usize> = g_by_color.iter().flatten().copied().collect();
        let mut term = f.numerator().relabel(kt.clone(), &map_f);
        term = term.mul(&g.numerator().relabel(kt.clone(), &map_g));
        let mut inversions = 0usize;
        for &u in &f_slots {
            for &v in &g_slots {
                if u > v {
                    inversions += 1;
                }
                let delta = rs.sym_colors(colors[u], colors[v]);
                term = term.mul_linear(u, &QRat::one(), v, &(-QRat::q_power(-delta)));
            }
        }
        // restore the full per-color Vandermonde: the cross pairs above
        // already carry their differences through the denominator, so only
        // pairs inside one factor are missing
        for by_color in [&f_by_color, &g_by_color] {
            for slots in by_color.iter() {
                for a in 0..slots.len() {
                    for b in (a + 1)..slots.len() {
                        term = term.mul_linear(slots[a], &QRat::one(), slots[b], &minus_one);
                    }
                }
            }
        }
        let sgn = if inversions % 2 == 1 {
            minus_one.clone()
        } else {
            QRat::one()
        };
        sum.add_scaled(&term, &sgn);
    }
    let mut quot = sum;
    for i in 0..rank {
        for a in 0..kt[i] {
            for b in (a + 1)..kt[i] {
                quot = quot
                    .divide_exact_by_diff(off[i] + a, off[i] + b)
                    .expect("shuffle sum must be divisible by the per-color Vandermonde");
            }
        }
    }
    SymRatFunction::new(rs, quot)
}

/// The single-variable element `z^d` in color `color`.
pub fn upsilon_generator(rs: &RootSystem, color: usize, d: i64) -> Result<SymRatFunction> {
    let rank = rs.rank();
    if color == 0 || color > rank {
        return Err(Error::BadColor(color, rank));
    }
    let mut profile = vec![0usize; rank];
    profile[color - 1] = 1;
    let mut numerator = ColoredLaurentPoly::zero(profile);
    numerator.add_term(vec![d], &QRat::one());
    SymRatFunction::new(rs, numerator)
}

/// Image of a product of single-letter generators, multiplied left to
/// right; the empty product is the unit (no variables, constant 1).
pub fn upsilon_monomial(rs: &RootSystem, letters: &[(usize, i64)]) -> Result<SymRatFunction> {
    let rank = rs.rank();
    let mut acc = SymRatFunction::new(
        rs,
        ColoredLaurentPoly::constant(vec![0; rank], QRat::one()),
    )?;
    for &(color, d) in letters {
        let gen = upsilon_generator(rs, color, d)?;
        acc = fo_mult(rs, &acc, &gen)?;
    }
    Ok(acc)
}

/// The numerator re-indexed by positions for one color sequence, with the
/// reordering sign and the same-color differences multiplied in.  Its
/// coefficients are exactly what the full alternating shift sums of the
/// element's coefficient table must reproduce.
fn position_numerator(numerator: &ColoredLaurentPoly, cs: &[usize]) -> MPoly {
    let k = cs.len();
    let off = offsets(numerator.profile());
    let mut used = vec![0usize; numerator.rank()];
    let mut assigned = vec![0usize; k];
    for a in 0..k {
        assigned[a] = off[cs[a] - 1] + used[cs[a] - 1];
        used[cs[a] - 1] += 1;
    }
    let mut inversions = 0usize;
    for a in 0..k {
        for b in (a + 1)..k {
            if cs[a] > cs[b] {
                inversions += 1;
            }
        }
    }
    let sgn = if inversions % 2 == 1 {
        -QRat::one()
    } else {
        QRat::one()
    };
    let mut p = MPoly::new();
    for (exps, c) in numerator.terms() {
        let pos_exps: Vec<i64> = assigned.iter().map(|&s| exps[s]).collect();
        mp_add(&mut p, pos_exps, &(c * &sgn));
    }
    let minus_one = -QRat::one();
    for a in 0..k {
        for b in (a + 1)..k {
            if cs[a] == cs[b] {
                p = mp_mul_linear(&p, a, &QRat::one(), b, &minus_one);
            }
        }
    }
    p
}

/// All distinct orderings of the colors of a profile.
fn color_sequences(profile: &[usize]) -> Vec<Vec<usize>> {
    let colors = slot_colors(profile);
    let k = colors.len();
    let set: BTreeSet<Vec<usize>> = colors.into_iter().permutations(k).collect();
    set.into_iter().collect()
}

/// Expands one monomial of a position numerator into word coefficients.
/// Row `a` chooses how much exponent flows from position `a` to each later
/// position `b`; a flow of `r` raises `d_a` by `r`, lowers `d_b` by `1 + r`,
/// and contributes `−q^{d(r+1)}` for the symmetrized color pairing `d`.
/// Rows are cut to the window, which keeps the expansion finite and covers
/// every word whose exponents all lie inside it.
#[allow(clippy::too_many_arguments)]
fn flow_rows(
    rs: &RootSystem,
    cs: &[usize],
    e: &[i64],
    a: usize,
    deficit: &mut Vec<i64>,
    ds: &mut Vec<i64>,
    factor: &QRat,
    lo: i64,
    hi: i64,
    table: &mut BTreeMap<Word, QRat>,
) {
    let k = cs.len();
    if a == k - 1 {
        let d = e[a] - deficit[a];
        if d >= lo && d <= hi {
            ds.push(d);
            let pairs: Vec<(usize, i64)> = cs.iter().copied().zip(ds.iter().copied()).collect();
            let entry = table
                .entry(Word::from_pairs(&pairs))
                .or_insert_with(QRat::zero);
            *entry += factor;
            ds.pop();
        }
        return;
    }
    let smin = (lo - e[a] + deficit[a]).max(0);
    let smax = hi - e[a] + deficit[a];
    let mut s = smin;
    while s <= smax {
        let d = e[a] + s - deficit[a];
        for comp in compositions(s, k - 1 - a) {
            let mut fac = factor.clone();
            for (idx, &r) in comp.iter().enumerate() {
                let b = a + 1 + idx;
                fac *= &(-QRat::q_power(rs.sym_colors(cs[a], cs[b]) * (r + 1)));
                deficit[b] += 1 + r;
            }
            ds.push(d);
            flow_rows(rs, cs, e, a + 1, deficit, ds, &fac, lo, hi, table);
            ds.pop();
            for (idx, &r) in comp.iter().enumerate() {
                deficit[a + 1 + idx] -= 1 + r;
            }
        }
        s += 1;
    }
}

/// Expands an element of the rational model into a loop-word coefficient
/// table on the window, by series expansion in the region where variables
/// of earlier positions are small.
///
/// With at most one variable the support is finite: the table is complete
/// and an out-of-window exponent is refused.  With two or more variables
/// the support is genuinely infinite in the downward direction, so the
/// result is a truncated table: in-window coefficients are exact, and
/// queries the window cannot attest to are refused by the element itself.
pub fn iota(rs: &RootSystem, r: &SymRatFunction, lo: i64, hi: i64) -> Result<LoopShuffleElement> {
    let rank = rs.rank();
    let k = r.num_vars();
    if k == 0 {
        let c = r.numerator().coeff(&[]);
        let mut table = BTreeMap::new();
        if !c.is_zero() {
            table.insert(Word::empty(), c);
        }
        return LoopShuffleElement::from_table(rank, table, lo, hi);
    }
    if k == 1 {
        let color = r
            .profile()
            .iter()
            .position(|&n| n == 1)
            .expect("one variable means one unit entry in the profile")
            + 1;
        let mut table = BTreeMap::new();
        for (exps, c) in r.numerator().terms() {
            table.insert(Word::from_pairs(&[(color, exps[0])]), c.clone());
        }
        return LoopShuffleElement::from_table(rank, table, lo, hi);
    }
    let mut table: BTreeMap<Word, QRat> = BTreeMap::new();
    for cs in color_sequences(r.profile()) {
        let p = position_numerator(r.numerator(), &cs);
        for (e, c) in &p {
            let mut deficit = vec![0i64; k];
            let mut ds = Vec::with_capacity(k);
            flow_rows(rs, &cs, e, 0, &mut deficit, &mut ds, c, lo, hi, &mut table);
        }
    }
    table.retain(|_, c| !c.is_zero());
    LoopShuffleElement::from_truncated_table(rank, table, lo, hi)
}

/// Checks that embedding a generator monomial into the rational model and
/// expanding back agrees with the loop-word shuffle product of the same
/// letters, coefficient by coefficient over both supports.  Returns the
/// number of words compared.
pub fn verify_composition(
    rs: &RootSystem,
    letters: &[(usize, i64)],
    lo: i64,
    hi: i64,
) -> Result<usize> {
    let ups = upsilon_monomial(rs, letters)?;
    let expanded = iota(rs, &ups, lo, hi)?;
    let loop_letters: Vec<LoopLetter> = letters
        .iter()
        .map(|&(c, d)| LoopLetter::new(c, d))
        .collect();
    let direct =
        LoopShuffleElement::from_monomials(rs, vec![(QRat::one(), loop_letters)], lo, hi)?;
    let mut words: BTreeSet<Word> = expanded.terms().map(|(w, _)| w.clone()).collect();
    words.extend(direct.terms().map(|(w, _)| w.clone()));
    for w in &words {
        let a = expanded.coeff(w)?;
        let b = direct.coeff(w)?;
        if a != b {
            return Err(Error::VerificationFailed(format!(
                "expansion of the embedded product disagrees with the loop product at {w}: {a} vs {b}"
            )));
        }
    }
    Ok(words.len())
}

/// Tally of the linear-constraint sweep over one element's coefficient
/// table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintReport {
    /// Nonzero in-window coefficients in the expanded table.
    pub gamma_entries: usize,
    /// Explicit prefix-sum floor: no nonzero coefficient may have a proper
    /// prefix of exponents summing below this.
    pub bound_m: i64,
    /// Table rows checked against the floor.
    pub boundedness_checked: usize,
    /// Adjacent-swap identities checked.
    pub constraint1_checked: usize,
    /// Serre-pattern alternating sums checked.
    pub constraint2_checked: usize,
    /// Full alternating shift sums compared to numerator coefficients.
    pub constraint3_checked: usize,
}

impl ConstraintReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "gamma_entries": self.gamma_entries,
            "bound_m": self.bound_m,
            "boundedness_checked": self.boundedness_checked,
            "constraint1_checked": self.constraint1_checked,
            "constraint2_checked": self.constraint2_checked,
            "constraint3_checked": self.constraint3_checked,
        })
    }
}

/// All tuples of `len` integers in `[lo, hi]` with the given sum.
fn bounded_sum_tuples(len: usize, lo: i64, hi: i64, sum: i64) -> Vec<Vec<i64>> {
    if len == 0 {
        return if sum == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let rest = len as i64 - 1;
    let mut out = Vec::new();
    for v in lo..=hi {
        let rem = sum - v;
        if rem < lo * rest || rem > hi * rest {
            continue;
        }
        for mut t in bounded_sum_tuples(len - 1, lo, hi, rem) {
            t.insert(0, v);
            out.push(t);
        }
    }
    out
}

fn gamma(el: &LoopShuffleElement, cs: &[usize], ds: &[i64]) -> QRat {
    let pairs: Vec<(usize, i64)> = cs.iter().copied().zip(ds.iter().copied()).collect();
    el.coeff(&Word::from_pairs(&pairs))
        .expect("constraint instances only reference in-window exponents")
}

/// Expands an element on the window and checks every linear constraint its
/// coefficient table must satisfy:
///
/// * a prefix-sum floor computed from the position numerators, which every
///   nonzero row must respect;
/// * the adjacent-swap identity tying each color sequence to its neighbor
///   with two positions exchanged;
/// * the Serre-pattern alternating sum over insertions of one color into a
///   run of another, weighted by q-binomials;
/// * the full alternating shift sum over all position pairs, which must
///   reproduce the corresponding position-numerator coefficient exactly.
///
/// Instances are enumerated so that every referenced exponent stays inside
/// the window, and only rows matching the element's degree are considered
/// (all others vanish identically).  Any failed instance is an error; the
/// report counts what was checked.
pub fn verify_image_constraints(
    rs: &RootSystem,
    r: &SymRatFunction,
    lo: i64,
    hi: i64,
) -> Result<ConstraintReport> {
    let k = r.num_vars();
    if k > 4 {
        return Err(Error::ProfileTooLarge { got: k, cap: 4 });
    }
    let el = iota(rs, r, lo, hi)?;
    let dtot = r.degree();
    let css = color_sequences(r.profile());
    let position_numerators: Vec<MPoly> = css
        .iter()
        .map(|cs| position_numerator(r.numerator(), cs))
        .collect();

    // prefix-sum floor
    let mut bound_m = 0i64;
    let mut boundedness_checked = 0usize;
    if k >= 2 {
        let mut floor: Option<i64> = None;
        for p in &position_numerators {
            for e in p.keys() {
                let mut prefix = 0i64;
                for a in 0..(k - 1) {
                    prefix += e[a];
                    let internal_pairs = ((a + 1) * a / 2) as i64;
                    let m = prefix - internal_pairs;
                    floor = Some(floor.map_or(m, |f| f.min(m)));
                }
            }
        }
        if let Some(m) = floor {
            bound_m = m;
            for (w, _) in el.terms() {
                let mut prefix = 0i64;
                for a in 0..(k - 1) {
                    prefix += w.letters()[a].exp();
                    if prefix < bound_m {
                        return Err(Error::VerificationFailed(format!(
                            "prefix sums of {w} fall below the floor {bound_m}"
                        )));
                    }
                }
                boundedness_checked += 1;
            }
        }
    }

    // adjacent-swap identity
    let mut constraint1_checked = 0usize;
    if k >= 2 {
        for cs in &css {
            for c in 0..(k - 1) {
                let qd = QRat::q_power(-rs.sym_colors(cs[c], cs[c + 1]));
                let mut cs2 = cs.clone();
                cs2.swap(c, c + 1);
                for r1 in (lo + 1)..=hi {
                    for s1 in (lo + 1)..=hi {
                        let chi_sum = dtot + 1 - r1 - s1;
                        for chi in bounded_sum_tuples(k - 2, lo, hi, chi_sum) {
                            let splice = |x: i64, y: i64| -> Vec<i64> {
                                let mut ds = Vec::with_capacity(k);
                                ds.extend_from_slice(&chi[..c]);
                                ds.push(x);
                                ds.push(y);
                                ds.extend_from_slice(&chi[c..]);
                                ds
                            };
                            let lhs = &gamma(&el, cs, &splice(r1 - 1, s1))
                                - &(&qd * &gamma(&el, cs, &splice(r1, s1 - 1)));
                            let rhs = &(&qd * &gamma(&el, &cs2, &splice(s1, r1 - 1)))
                                - &gamma(&el, &cs2, &splice(s1 - 1, r1));
                            if lhs != rhs {
                                return Err(Error::VerificationFailed(format!(
                                    "adjacent-swap identity fails at positions {c},{} of {cs:?} with exponents ({r1},{s1})",
                                    c + 1
                                )));
                            }
                            constraint1_checked += 1;
                        }
                    }
                }
            }
        }
    }

    // Serre-pattern alternating sums
    let mut constraint2_checked = 0usize;
    let profile = r.profile();
    let rank = rs.rank();
    for i in 1..=rank {
        for j in 1..=rank {
            if i == j {
                continue;
            }
            let m = (1 - rs.cartan(i, j)) as usize;
            if profile[i - 1] < m || profile[j - 1] < 1 {
                continue;
            }
            let mut rem = profile.to_vec();
            rem[i - 1] -= m;
            rem[j - 1] -= 1;
            let rem_len: usize = rem.iter().sum();
            let qbin: Vec<QRat> = (0..=m)
                .map(|kk| QRat::from_laurent(qbinom_sym(m as i64, kk as i64, rs.d(i))))
                .collect();
            for ws in color_sequences(&rem) {
                for split in 0..=rem_len {
                    for svec in all_window_tuples(m, lo, hi) {
                        for t in lo..=hi {
                            let chi_sum = dtot - svec.iter().sum::<i64>() - t;
                            for chi_all in bounded_sum_tuples(rem_len, lo, hi, chi_sum) {
                                let mut total = QRat::zero();
                                for kk in 0..=m {
                                    let mut colors: Vec<usize> =
                                        ws[..split].to_vec();
                                    colors.extend(std::iter::repeat(i).take(kk));
                                    colors.push(j);
                                    colors.extend(std::iter::repeat(i).take(m - kk));
                                    colors.extend_from_slice(&ws[split..]);
                                    let mut coef = qbin[kk].clone();
                                    if kk % 2 == 1 {
                                        coef = -coef;
                                    }
                                    for sigma in (0..m).permutations(m) {
                                        let mut degs: Vec<i64> = chi_all[..split].to_vec();
                                        for &idx in &sigma[..kk] {
                                            degs.push(svec[idx]);
                                        }
                                        degs.push(t);
                                        for &idx in &sigma[kk..] {
                                            degs.push(svec[idx]);
                                        }
                                        degs.extend_from_slice(&chi_all[split..]);
                                        total += &(&coef * &gamma(&el, &colors, &degs));
                                    }
                                }
                                if !total.is_zero() {
                                    return Err(Error::VerificationFailed(format!(
                                        "Serre-pattern sum for colors ({i},{j}) is {} instead of 0",
                                        total.render()
                                    )));
                                }
                                constraint2_checked += 1;
                            }
                        }
                    }
                }
            }
        }
    }

    // full alternating shift sums
    let mut constraint3_checked = 0usize;
    if k >= 1 {
        let pair_list: Vec<(usize, usize)> = (0..k)
            .flat_map(|a| ((a + 1)..k).map(move |b| (a, b)))
            .collect();
        let npairs = pair_list.len();
        for (cs, p) in css.iter().zip(&position_numerators) {
            for d in bounded_sum_tuples(k, lo + k as i64 - 1, hi, dtot + npairs as i64) {
                let mut lhs = QRat::zero();
                for mask in 0u32..(1u32 << npairs) {
                    let mut shift = vec![0i64; k];
                    let mut coef = QRat::one();
                    for (idx, &(a, b)) in pair_list.iter().enumerate() {
                        if mask & (1 << idx) != 0 {
                            coef *= &(-QRat::q_power(-rs.sym_colors(cs[a], cs[b])));
                            shift[b] += 1;
                        } else {
                            shift[a] += 1;
                        }
                    }
                    let ds: Vec<i64> = d.iter().zip(&shift).map(|(x, s)| x - s).collect();
                    lhs += &(&coef * &gamma(&el, cs, &ds));
                }
                let rhs = p.get(&d).cloned().unwrap_or_else(QRat::zero);
                if lhs != rhs {
                    return Err(Error::VerificationFailed(format!(
                        "alternating shift sum at {cs:?} {d:?} is {} instead of {}",
                        lhs.render(),
                        rhs.render()
                    )));
                }
                constraint3_checked += 1;
            }
        }
    }

    Ok(ConstraintReport {
        gamma_entries: el.num_terms(),
        bound_m,
        boundedness_checked,
        constraint1_checked,
        constraint2_checked,
        constraint3_checked,
    })
}

/// All tuples of `len` integers in `[lo, hi]`.
fn all_window_tuples(len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for v in lo..=hi {
        for mut t in all_window_tuples(len - 1, lo, hi) {
            t.insert(0, v);
            out.push(t);
        }
    }
    out
}
