//! Exact arithmetic in ℚ(q).
//!
//! Two layers: [`QLaurent`] is a sparse Laurent polynomial in q with `BigRational`
//! coefficients, and [`QRat`] is a reduced fraction of two of them. Every value is kept
//! in a canonical form (fraction reduced, denominator with lowest exponent 0 and lowest
//! coefficient 1), so structural equality is semantic equality and zero tests are exact.
//! Also hosts the symmetric q-integers, q-factorials and q-binomials used by the
//! Serre-relation checks.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::{Error, Result};

/// Exact rational scalar.
pub type Rat = BigRational;

/// Convenience constructor for small rationals.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

fn rat_pow(base: &Rat, exp: i64) -> Result<Rat> {
    if exp == 0 {
        return Ok(Rat::one());
    }
    if base.is_zero() && exp < 0 {
        return Err(Error::DivisionByZero);
    }
    let mag = u32::try_from(exp.unsigned_abs()).expect("exponent magnitude fits u32");
    let n = base.numer().pow(mag);
    let d = base.denom().pow(mag);
    Ok(if exp > 0 {
        Rat::new(n, d)
    } else {
        Rat::new(d, n)
    })
}

/// Sparse Laurent polynomial in q over ℚ, keyed by exponent; zero coefficients never stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct QLaurent {
    terms: BTreeMap<i64, Rat>,
}

impl QLaurent {
    pub fn zero() -> Self {
        QLaurent::default()
    }

    pub fn one() -> Self {
        QLaurent::monomial(0, Rat::one())
    }

    /// The monomial c·q^e (nothing stored when c = 0).
    pub fn monomial(exp: i64, coeff: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        QLaurent { terms }
    }

    /// q^e.
    pub fn q_power(exp: i64) -> Self {
        QLaurent::monomial(exp, Rat::one())
    }

    pub fn from_rat(c: Rat) -> Self {
        QLaurent::monomial(0, c)
    }

    pub fn from_int(c: i64) -> Self {
        QLaurent::from_rat(Rat::from_integer(BigInt::from(c)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Lowest exponent present; `None` for the zero polynomial.
    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Highest exponent present; `None` for the zero polynomial.
    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: i64) -> Rat {
        self.terms.get(&exp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert_add(&mut self, exp: i64, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Multiply by c·q^e in place.
    pub fn scale(&mut self, exp: i64, c: &Rat) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        let old = std::mem::take(&mut self.terms);
        for (e, k) in old {
            self.terms.insert(e + exp, k * c);
        }
    }

    /// Evaluate at a rational point; q₀ = 0 is a pole when negative exponents are present.
    pub fn evaluate_at(&self, q0: &Rat) -> Result<Rat> {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            if *e < 0 && q0.is_zero() {
                return Err(Error::Pole("0".into()));
            }
            acc += c * rat_pow(q0, *e)?;
        }
        Ok(acc)
    }

    /// Exact quotient self / div, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, div: &QLaurent) -> Option<QLaurent> {
        if div.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(QLaurent::zero());
        }
        let (dmin, dmax) = (div.min_exp().unwrap(), div.max_exp().unwrap());
        let dlead = div.coeff(dmax);
        let mut rem = self.clone();
        let mut quo = QLaurent::zero();
        while !rem.is_zero() {
            let rmax = rem.max_exp().unwrap();
            if rem.max_exp().unwrap() - rem.min_exp().unwrap() < dmax - dmin {
                return None;
            }
            let qexp = rmax - dmax;
            let qc = rem.coeff(rmax) / &dlead;
            quo.insert_add(qexp, &qc);
            let mut sub = div.clone();
            sub.scale(qexp, &qc);
            rem -= &sub;
            if let Some(new_max) = rem.max_exp() {
                if new_max >= rmax {
                    return None;
                }
            }
        }
        Some(quo)
    }

    /// Monic-free gcd of two Laurent polynomials, up to units c·q^k: the result has
    /// lowest exponent 0, integer primitive coefficients, and positive lowest coefficient.
    pub fn gcd(a: &QLaurent, b: &QLaurent) -> QLaurent {
        if a.is_zero() {
            return b.unit_normalized();
        }
        if b.is_zero() {
            return a.unit_normalized();
        }
        let pa = int_primitive_part(a);
        let pb = int_primitive_part(b);
        let g = int_poly_gcd(pa, pb);
        QLaurent::from_int_coeffs(&g)
    }

    fn from_int_coeffs(coeffs: &[BigInt]) -> QLaurent {
        let mut terms = BTreeMap::new();
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                terms.insert(i as i64, Rat::from_integer(c.clone()));
            }
        }
        QLaurent { terms }
    }

    /// Same polynomial divided by its lowest term's unit c·q^k (lowest coefficient
    /// becomes 1, lowest exponent 0); zero stays zero.
    fn unit_normalized(&self) -> QLaurent {
        match self.min_exp() {
            None => QLaurent::zero(),
            Some(m) => {
                let c = self.coeff(m);
                let mut out = self.clone();
                out.scale(-m, &c.recip());
                out
            }
        }
    }
}

/// Coefficient vector (ascending, index 0 = q^min) of the q^min-shifted polynomial,
/// cleared to integers and made primitive.
fn int_primitive_part(p: &QLaurent) -> Vec<BigInt> {
    let min = p.min_exp().unwrap();
    let max = p.max_exp().unwrap();
    let mut lcm = BigInt::one();
    for (_, c) in p.terms() {
        lcm = lcm.lcm(c.denom());
    }
    let mut v = vec![BigInt::zero(); (max - min + 1) as usize];
    for (e, c) in p.terms() {
        v[(e - min) as usize] = c.numer() * (&lcm / c.denom());
    }
    int_make_primitive(&mut v);
    v
}

fn int_content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
    }
    g
}

fn int_make_primitive(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    let lead_trim = v.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if lead_trim > 0 {
        v.drain(..lead_trim);
    }
    let g = int_content(v);
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c /= &g;
        }
    }
    if v.last().is_some_and(|c| c.is_negative()) {
        for c in v.iter_mut() {
            *c = -std::mem::take(c);
        }
    }
}

/// Pseudo-remainder of a by b (both primitive, b nonzero), then made primitive again.
fn int_prem(mut a: Vec<BigInt>, b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = b[db].clone();
    while a.len() > db {
        let da = a.len() - 1;
        let la = a[da].clone();
        for c in a.iter_mut() {
            *c *= &lb;
        }
        for (i, bc) in b.iter().enumerate() {
            a[da - db + i] -= &la * bc;
        }
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
        if a.is_empty() {
            break;
        }
    }
    let mut r = a;
    int_make_primitive(&mut r);
    r
}

/// Primitive polynomial gcd by the primitive pseudo-remainder sequence.
fn int_poly_gcd(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> Vec<BigInt> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = int_prem(a, &b);
        a = b;
        b = r;
    }
    a
}

impl Add<&QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&QLaurent> for QLaurent {
    fn add_assign(&mut self, rhs: &QLaurent) {
        for (e, c) in rhs.terms() {
            self.insert_add(e, c);
        }
    }
}

impl Sub<&QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&QLaurent> for QLaurent {
    fn sub_assign(&mut self, rhs: &QLaurent) {
        for (e, c) in rhs.terms() {
            self.insert_add(e, &-c.clone());
        }
    }
}

impl Mul<&QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: &QLaurent) -> QLaurent {
        let mut out = QLaurent::zero();
        for (ea, ca) in self.terms() {
            for (eb, cb) in rhs.terms() {
                out.insert_add(ea + eb, &(ca * cb));
            }
        }
        out
    }
}

impl MulAssign<&QLaurent> for QLaurent {
    fn mul_assign(&mut self, rhs: &QLaurent) {
        let prod = (self as &QLaurent) * rhs;
        *self = prod;
    }
}

impl Neg for QLaurent {
    type Output = QLaurent;
    fn neg(mut self) -> QLaurent {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl fmt::Debug for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_laurent(self))
    }
}

/// Reduced fraction of Laurent polynomials: the canonical representation of an
/// element of ℚ(q).
///
/// Invariants: gcd(num, den) is a unit, den has lowest exponent 0 and lowest
/// coefficient 1, and zero is stored as 0/1. With these, `==` is semantic equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QRat {
    num: QLaurent,
    den: QLaurent,
}

impl QRat {
    pub fn zero() -> Self {
        QRat {
            num: QLaurent::zero(),
            den: QLaurent::one(),
        }
    }

    pub fn one() -> Self {
        QRat {
            num: QLaurent::one(),
            den: QLaurent::one(),
        }
    }

    pub fn from_laurent(num: QLaurent) -> Self {
        QRat {
            num,
            den: QLaurent::one(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        QRat::from_laurent(QLaurent::from_int(c))
    }

    pub fn from_rat(c: Rat) -> Self {
        QRat::from_laurent(QLaurent::from_rat(c))
    }

    /// q^e.
    pub fn q_power(e: i64) -> Self {
        QRat::from_laurent(QLaurent::q_power(e))
    }

    /// num/den, reduced to canonical form.
    pub fn new(num: QLaurent, den: QLaurent) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QRat::reduced(num, den))
    }

    fn reduced(num: QLaurent, den: QLaurent) -> Self {
        if num.is_zero() {
            return QRat::zero();
        }
        let g = QLaurent::gcd(&num, &den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let dm = d.min_exp().unwrap();
        let dc = d.coeff(dm);
        let unit_inv = dc.recip();
        d.scale(-dm, &unit_inv);
        n.scale(-dm, &unit_inv);
        QRat { num: n, den: d }
    }

    pub fn numerator(&self) -> &QLaurent {
        &self.num
    }

    pub fn denominator(&self) -> &QLaurent {
        &self.den
    }

    /// True when the value is a Laurent polynomial (denominator 1).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn inv(&self) -> Result<QRat> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QRat::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &QRat) -> Result<QRat> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QRat::reduced(
            &self.num * &rhs.den,
            &self.den * &rhs.num,
        ))
    }

    pub fn pow(&self, e: i64) -> Result<QRat> {
        if e == 0 {
            return Ok(QRat::one());
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = QRat::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Evaluate at a rational point; errors when the denominator vanishes there.
    pub fn evaluate_at(&self, q0: &Rat) -> Result<Rat> {
        let d = self.den.evaluate_at(q0)?;
        if d.is_zero() {
            return Err(Error::Pole(q0.to_string()));
        }
        Ok(self.num.evaluate_at(q0)? / d)
    }

    /// Canonical text form; see [`parse_qrat`] for the grammar.
    pub fn render(&self) -> String {
        let (n, d) = self.integer_scaled();
        if d.is_one() {
            render_laurent(&n)
        } else {
            format!("({})/({})", render_laurent(&n), render_laurent(&d))
        }
    }

    /// The same fraction scaled so both parts have integer coefficients with overall
    /// content 1 and the denominator's lowest coefficient positive.
    fn integer_scaled(&self) -> (QLaurent, QLaurent) {
        if self.is_zero() {
            return (QLaurent::zero(), QLaurent::one());
        }
        let mut lcm = BigInt::one();
        for (_, c) in self.num.terms().chain(self.den.terms()) {
            lcm = lcm.lcm(c.denom());
        }
        let mut gcd = BigInt::zero();
        for (_, c) in self.num.terms().chain(self.den.terms()) {
            gcd = gcd.gcd(&(c.numer() * (&lcm / c.denom())));
        }
        let f = Rat::new(lcm, gcd);
        let mut n = self.num.clone();
        let mut d = self.den.clone();
        n.scale(0, &f);
        d.scale(0, &f);
        (n, d)
    }
}

impl fmt::Debug for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl Add<&QRat> for &QRat {
    type Output = QRat;
    fn add(self, rhs: &QRat) -> QRat {
        QRat::reduced(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub<&QRat> for &QRat {
    type Output = QRat;
    fn sub(self, rhs: &QRat) -> QRat {
        QRat::reduced(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul<&QRat> for &QRat {
    type Output = QRat;
    fn mul(self, rhs: &QRat) -> QRat {
        QRat::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat {
            num: -self.num,
            den: self.den,
        }
    }
}

impl AddAssign<&QRat> for QRat {
    fn add_assign(&mut self, rhs: &QRat) {
        *self = (self as &QRat) + rhs;
    }
}

impl SubAssign<&QRat> for QRat {
    fn sub_assign(&mut self, rhs: &QRat) {
        *self = (self as &QRat) - rhs;
    }
}

impl MulAssign<&QRat> for QRat {
    fn mul_assign(&mut self, rhs: &QRat) {
        *self = (self as &QRat) * rhs;
    }
}

fn render_coeff(c: &Rat) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Ascending-exponent text form, e.g. `3*q^-2 - 1 + q^5`.
pub fn render_laurent(p: &QLaurent) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (e, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        let mag = if neg { -c.clone() } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let qpart = match e {
            0 => None,
            1 => Some("q".to_string()),
            _ => Some(format!("q^{e}")),
        };
        match (qpart, mag.is_one()) {
            (None, _) => out.push_str(&render_coeff(&mag)),
            (Some(qp), true) => out.push_str(&qp),
            (Some(qp), false) => {
                out.push_str(&render_coeff(&mag));
                out.push('*');
                out.push_str(&qp);
            }
        }
    }
    out
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a digit");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse::<BigInt>().unwrap())
    }

    fn parse_int(&mut self) -> Result<BigInt> {
        let neg = self.eat(b'-');
        let v = self.parse_uint()?;
        Ok(if neg { -v } else { v })
    }

    /// q | q^int, returning the exponent.
    fn parse_qpow(&mut self) -> Result<i64> {
        if !self.eat(b'q') {
            return self.err("expected q");
        }
        if self.eat(b'^') {
            let e = self.parse_int()?;
            i64::try_from(e).map_err(|_| Error::Parse {
                pos: self.pos,
                msg: "exponent out of range".into(),
            })
        } else {
            Ok(1)
        }
    }

    /// coeff [* q^e] | q^e, with coeff = int[/uint].
    fn parse_term(&mut self) -> Result<(i64, Rat)> {
        match self.peek() {
            Some(b'q') => {
                let e = self.parse_qpow()?;
                Ok((e, Rat::one()))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.parse_uint()?;
                let coeff = if self.eat(b'/') {
                    let d = self.parse_uint()?;
                    if d.is_zero() {
                        return self.err("zero denominator in coefficient");
                    }
                    Rat::new(n, d)
                } else {
                    Rat::from_integer(n)
                };
                if self.eat(b'*') {
                    let e = self.parse_qpow()?;
                    Ok((e, coeff))
                } else {
                    Ok((0, coeff))
                }
            }
            _ => self.err("expected a term"),
        }
    }

    fn parse_laurent(&mut self) -> Result<QLaurent> {
        let mut out = QLaurent::zero();
        let mut sign = if self.eat(b'-') {
            -Rat::one()
        } else {
            Rat::one()
        };
        loop {
            let (e, c) = self.parse_term()?;
            out.insert_add(e, &(c * &sign));
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = Rat::one();
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -Rat::one();
                }
                _ => break,
            }
        }
        Ok(out)
    }

    fn parse_qrat(&mut self) -> Result<QRat> {
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let num = self.parse_laurent()?;
            if !self.eat(b')') {
                return self.err("expected )");
            }
            if !self.eat(b'/') {
                // A parenthesized Laurent polynomial on its own.
                self.finish()?;
                return Ok(QRat::from_laurent(num));
            }
            if !self.eat(b'(') {
                return self.err("expected (");
            }
            let den = self.parse_laurent()?;
            if !self.eat(b')') {
                return self.err("expected )");
            }
            self.finish()?;
            QRat::new(num, den)
        } else {
            let num = self.parse_laurent()?;
            self.finish()?;
            Ok(QRat::from_laurent(num))
        }
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(())
    }
}

/// Parse the textual form produced by [`QRat::render`]: a Laurent polynomial like
/// `3*q^-2 - 1 + q^5`, or a fraction `(num)/(den)`.
pub fn parse_qrat(src: &str) -> Result<QRat> {
    Parser::new(src).parse_qrat()
}

/// Symmetric q-integer [n] at q^d: q^{d(n-1)} + q^{d(n-3)} + … + q^{-d(n-1)}.
pub fn qint_sym(n: i64, d: i64) -> QLaurent {
    if n == 0 {
        return QLaurent::zero();
    }
    if n < 0 {
        return -qint_sym(-n, d);
    }
    let mut out = QLaurent::zero();
    let mut e = d * (n - 1);
    for _ in 0..n {
        out.insert_add(e, &Rat::one());
        e -= 2 * d;
    }
    out
}

/// Symmetric q-factorial [n]! at q^d.
pub fn qfact_sym(n: i64, d: i64) -> QLaurent {
    let mut out = QLaurent::one();
    for m in 1..=n {
        out *= &qint_sym(m, d);
    }
    out
}

/// Symmetric q-binomial (n choose k) at q^d; a genuine Laurent polynomial.
pub fn qbinom_sym(n: i64, k: i64, d: i64) -> QLaurent {
    assert!((0..=n).contains(&k), "binomial out of range");
    let num = qfact_sym(n, d);
    let den = &qfact_sym(k, d) * &qfact_sym(n - k, d);
    num.div_exact(&den)
        .expect("q-binomial divides exactly")
}
