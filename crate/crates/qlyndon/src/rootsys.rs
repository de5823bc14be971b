//! Finite root systems of types A–G.
//!
//! A [`RootSystem`] is built from its Cartan type alone: the symmetrized Gram matrix
//! (α_i, α_j) comes from fixed construction data, the Cartan matrix is derived from it,
//! and the set of positive roots is generated by root-string closure. Lattice vectors
//! are [`RootVec`]s — integer coefficient vectors in the simple-root basis. Colors
//! (simple-root indices) are numbered from 1 throughout the public API.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::{Error, Result};

/// Cartan type with validated rank.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

impl CartanType {
    /// Build from a family letter and rank, rejecting ranks outside the family
    /// (e.g. `B1` or `D3` are errors, not aliases of other types).
    pub fn new(family: char, rank: usize) -> Result<CartanType> {
        let bad = |msg: &str| Err(Error::BadCartan(format!("{family}{rank}: {msg}")));
        match family.to_ascii_uppercase() {
            'A' if rank >= 1 => Ok(CartanType::A(rank)),
            'A' => bad("type A requires rank >= 1"),
            'B' if rank >= 2 => Ok(CartanType::B(rank)),
            'B' => bad("type B requires rank >= 2"),
            'C' if rank >= 2 => Ok(CartanType::C(rank)),
            'C' => bad("type C requires rank >= 2"),
            'D' if rank >= 4 => Ok(CartanType::D(rank)),
            'D' => bad("type D requires rank >= 4"),
            'E' if (6..=8).contains(&rank) => Ok(CartanType::E(rank)),
            'E' => bad("type E requires rank in {6, 7, 8}"),
            'F' if rank == 4 => Ok(CartanType::F4),
            'F' => bad("type F requires rank 4"),
            'G' if rank == 2 => Ok(CartanType::G2),
            'G' => bad("type G requires rank 2"),
            _ => bad("unknown family (expected A-G)"),
        }
    }

    /// Parse a label like `"A3"`, `"b2"` or `"E8"`.
    pub fn parse(label: &str) -> Result<CartanType> {
        let label = label.trim();
        let mut chars = label.chars();
        let family = chars.next().ok_or_else(|| Error::BadCartan("empty type label".into()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::BadCartan(format!("{label}: bad rank")))?;
        CartanType::new(family, rank)
    }

    pub fn rank(&self) -> usize {
        match *self {
            CartanType::A(n) | CartanType::B(n) | CartanType::C(n) | CartanType::D(n)
            | CartanType::E(n) => n,
            CartanType::F4 => 4,
            CartanType::G2 => 2,
        }
    }

    pub fn family(&self) -> char {
        match self {
            CartanType::A(_) => 'A',
            CartanType::B(_) => 'B',
            CartanType::C(_) => 'C',
            CartanType::D(_) => 'D',
            CartanType::E(_) => 'E',
            CartanType::F4 => 'F',
            CartanType::G2 => 'G',
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family(), self.rank())
    }
}

/// Element of the root lattice in the simple-root basis: coefficient `coeff(i)` of α_i
/// for colors i = 1..=rank.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootVec(Vec<i64>);

impl RootVec {
    pub fn zero(rank: usize) -> RootVec {
        RootVec(vec![0; rank])
    }

    pub fn simple(rank: usize, i: usize) -> RootVec {
        assert!((1..=rank).contains(&i), "color {i} out of range 1..={rank}");
        let mut v = vec![0; rank];
        v[i - 1] = 1;
        RootVec(v)
    }

    pub fn from_coeffs(coeffs: Vec<i64>) -> RootVec {
        RootVec(coeffs)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// Coefficient of α_i (i is 1-based).
    pub fn coeff(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    /// Sum of coefficients; the height |α| when the vector is a positive root.
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// True when every coefficient is ≥ the other's (componentwise β ≤ self).
    pub fn dominates(&self, other: &RootVec) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    pub fn scaled(&self, k: i64) -> RootVec {
        RootVec(self.0.iter().map(|c| c * k).collect())
    }
}

impl Add<&RootVec> for &RootVec {
    type Output = RootVec;
    fn add(self, rhs: &RootVec) -> RootVec {
        RootVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&RootVec> for &RootVec {
    type Output = RootVec;
    fn sub(self, rhs: &RootVec) -> RootVec {
        RootVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RootVec {
    type Output = RootVec;
    fn neg(self) -> RootVec {
        RootVec(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Gram data per type: symmetrization factors d_i and the nonzero off-diagonal
/// products (i, j, (α_i, α_j)) with 1-based i < j.
fn construction_data(ctype: CartanType) -> (Vec<i64>, Vec<(usize, usize, i64)>) {
    let chain = |n: usize, v: i64| -> Vec<(usize, usize, i64)> {
        (1..n).map(|i| (i, i + 1, v)).collect()
    };
    match ctype {
        CartanType::A(n) => (vec![1; n], chain(n, -1)),
        CartanType::B(n) => {
            let mut d = vec![2; n];
            d[n - 1] = 1;
            (d, chain(n, -2))
        }
        CartanType::C(n) => {
            let mut d = vec![1; n];
            d[n - 1] = 2;
            let mut e = chain(n - 1, -1);
            e.push((n - 1, n, -2));
            (d, e)
        }
        CartanType::D(n) => {
            let mut e = chain(n - 2, -1);
            e.push((n - 2, n - 1, -1));
            e.push((n - 2, n, -1));
            (vec![1; n], e)
        }
        CartanType::E(n) => {
            let mut e = vec![(1, 3, -1), (3, 4, -1), (2, 4, -1)];
            for i in 4..n {
                e.push((i, i + 1, -1));
            }
            (vec![1; n], e)
        }
        CartanType::F4 => (vec![2, 2, 1, 1], vec![(1, 2, -2), (2, 3, -2), (3, 4, -1)]),
        CartanType::G2 => (vec![1, 3], vec![(1, 2, -3)]),
    }
}

/// A finite root system: Gram and Cartan matrices plus the positive roots,
/// sorted by (height, coefficients).
pub struct RootSystem {
    ctype: CartanType,
    rank: usize,
    d: Vec<i64>,
    gram: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    positive: Vec<RootVec>,
    index: HashMap<RootVec, usize>,
    theta: RootVec,
}

impl RootSystem {
    pub fn new(ctype: CartanType) -> Result<RootSystem> {
        let rank = ctype.rank();
        let (d, edges) = construction_data(ctype);
        let mut gram = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            gram[i][i] = 2 * d[i];
        }
        for (i, j, v) in edges {
            gram[i - 1][j - 1] = v;
            gram[j - 1][i - 1] = v;
        }
        let mut cartan = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            for j in 0..rank {
                if gram[i][j] % d[i] != 0 {
                    return Err(Error::BadCartan(format!(
                        "{ctype}: (α_{}, α_{}) = {} not divisible by d_{} = {}",
                        i + 1,
                        j + 1,
                        gram[i][j],
                        i + 1,
                        d[i]
                    )));
                }
                cartan[i][j] = gram[i][j] / d[i];
            }
        }
        for i in 0..rank {
            for j in 0..rank {
                if i == j {
                    continue;
                }
                let prod = cartan[i][j] * cartan[j][i];
                if cartan[i][j] > 0 || !(0..=3).contains(&prod) {
                    return Err(Error::BadCartan(format!(
                        "{ctype}: entries a_{}{} = {}, a_{}{} = {} are not of finite type",
                        i + 1,
                        j + 1,
                        cartan[i][j],
                        j + 1,
                        i + 1,
                        cartan[j][i]
                    )));
                }
            }
        }
        let mut sys = RootSystem {
            ctype,
            rank,
            d,
            gram,
            cartan,
            positive: Vec::new(),
            index: HashMap::new(),
            theta: RootVec::zero(rank),
        };
        sys.generate_positive_roots();
        Ok(sys)
    }

    /// Root-string closure from the simple roots: α + α_i is a root iff
    /// q = p − (α, α_i∨) > 0, where p counts how far the string extends below α.
    fn generate_positive_roots(&mut self) {
        let rank = self.rank;
        let mut known: HashSet<RootVec> = HashSet::new();
        let mut frontier: Vec<RootVec> = (1..=rank).map(|i| RootVec::simple(rank, i)).collect();
        known.extend(frontier.iter().cloned());
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for alpha in &frontier {
                for i in 1..=rank {
                    let simple = RootVec::simple(rank, i);
                    let mut p = 0i64;
                    loop {
                        let down = alpha - &simple.scaled(p + 1);
                        if down.coeffs().iter().any(|&c| c < 0) || !known.contains(&down) {
                            break;
                        }
                        p += 1;
                    }
                    let q = p - self.pairing(alpha, i);
                    if q > 0 {
                        let up = alpha + &simple;
                        if known.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            frontier = next;
        }
        let mut positive: Vec<RootVec> = known.into_iter().collect();
        positive.sort_by_key(|r| (r.height(), r.clone()));
        let max_h = positive.last().unwrap().height();
        let top: Vec<&RootVec> = positive.iter().filter(|r| r.height() == max_h).collect();
        assert_eq!(top.len(), 1, "highest root must be unique");
        self.theta = top[0].clone();
        self.index = positive
            .iter()
            .enumerate()
            .map(|(k, r)| (r.clone(), k))
            .collect();
        self.positive = positive;
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ctype
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Symmetrization factor d_i = (α_i, α_i)/2 (i is 1-based).
    pub fn d(&self, i: usize) -> i64 {
        self.d[i - 1]
    }

    /// Cartan matrix entry a_ij = (α_i, α_j)/d_i.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.cartan[i - 1][j - 1]
    }

    /// Pairing of two simple roots (α_i, α_j) under the symmetrized form.
    pub fn sym_colors(&self, i: usize, j: usize) -> i64 {
        self.gram[i - 1][j - 1]
    }

    /// Symmetric bilinear form (λ, μ) extended from the Gram matrix.
    pub fn sym(&self, lam: &RootVec, mu: &RootVec) -> i64 {
        let mut acc = 0;
        for i in 0..self.rank {
            let ci = lam.coeffs()[i];
            if ci == 0 {
                continue;
            }
            for j in 0..self.rank {
                acc += ci * self.gram[i][j] * mu.coeffs()[j];
            }
        }
        acc
    }

    /// Coroot pairing (λ, α_i∨) = (λ, α_i)/d_i (i is 1-based).
    pub fn pairing(&self, lam: &RootVec, i: usize) -> i64 {
        let s = self.sym(lam, &RootVec::simple(self.rank, i));
        debug_assert_eq!(s % self.d[i - 1], 0);
        s / self.d[i - 1]
    }

    /// Coroot pairing (λ, β∨) = 2(λ, β)/(β, β) for a root β.
    pub fn pairing_coroot(&self, lam: &RootVec, beta: &RootVec) -> i64 {
        let norm2 = self.sym(beta, beta);
        assert!(norm2 > 0, "coroot of a non-root");
        let s = 2 * self.sym(lam, beta);
        debug_assert_eq!(s % norm2, 0);
        s / norm2
    }

    /// Simple reflection s_i(λ) = λ − (λ, α_i∨) α_i.
    pub fn reflect_simple(&self, i: usize, lam: &RootVec) -> RootVec {
        let k = self.pairing(lam, i);
        lam - &RootVec::simple(self.rank, i).scaled(k)
    }

    /// Reflection in an arbitrary root: s_β(λ) = λ − (λ, β∨) β.
    pub fn reflect(&self, beta: &RootVec, lam: &RootVec) -> RootVec {
        let k = self.pairing_coroot(lam, beta);
        lam - &beta.scaled(k)
    }

    /// All positive roots, sorted by (height, coefficient vector).
    pub fn positive_roots(&self) -> &[RootVec] {
        &self.positive
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive.len()
    }

    pub fn is_positive_root(&self, v: &RootVec) -> bool {
        self.index.contains_key(v)
    }

    pub fn is_root(&self, v: &RootVec) -> bool {
        self.index.contains_key(v) || self.index.contains_key(&-v)
    }

    /// The highest root θ.
    pub fn theta(&self) -> &RootVec {
        &self.theta
    }

    /// Ordered pairs of positive roots (γ₁, γ₂) with γ₁ + γ₂ = α.
    pub fn pairs_summing_to(&self, alpha: &RootVec) -> Vec<(RootVec, RootVec)> {
        let mut out = Vec::new();
        for g1 in &self.positive {
            if !alpha.dominates(g1) || g1 == alpha {
                continue;
            }
            let g2 = alpha - g1;
            if self.is_positive_root(&g2) {
                out.push((g1.clone(), g2.clone()));
            }
        }
        out
    }

    /// (2ρ, μ) where ρ is the half-sum of positive roots.
    pub fn pairing_2rho(&self, mu: &RootVec) -> i64 {
        self.positive.iter().map(|a| self.sym(a, mu)).sum()
    }

    /// Pretty form `a1 + 2 a2` of a lattice vector.
    pub fn render_root(&self, v: &RootVec) -> String {
        if v.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for i in 1..=self.rank {
            let c = v.coeff(i);
            if c == 0 {
                continue;
            }
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            if c.abs() != 1 {
                out.push_str(&format!("{} ", c.abs()));
            }
            out.push_str(&format!("a{i}"));
        }
        out
    }

    /// Parse a comma-separated coefficient vector like `1,2,0` into a [`RootVec`].
    pub fn parse_root(&self, s: &str) -> Result<RootVec> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != self.rank {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("expected {} comma-separated coefficients", self.rank),
            });
        }
        let mut coeffs = Vec::with_capacity(self.rank);
        for (k, p) in parts.iter().enumerate() {
            coeffs.push(p.trim().parse::<i64>().map_err(|_| Error::Parse {
                pos: k,
                msg: format!("bad coefficient {p:?}"),
            })?);
        }
        Ok(RootVec::from_coeffs(coeffs))
    }
}
