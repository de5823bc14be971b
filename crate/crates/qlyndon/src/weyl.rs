//! Affine Weyl combinatorics of the translation by ρ∨.
//!
//! Affine roots are pairs (λ, d) of a finite lattice vector and an integer level. The
//! translation t by ρ∨ acts by (λ, d) ↦ (λ, d − |λ|); its inversion set is
//! L = {(α, d) : α ∈ Δ⁺, 0 ≤ d < |α|}, of size l = Σ|α|. Sorting L in increasing
//! loop order (via the dictionary) yields β₀ > β₋₁ > … > β_{1−l} read back to front,
//! from which a reduced word (i₀, i₋₁, …, i_{1−l}) in affine simple reflections is
//! recovered, together with the diagram twist σ through which the word repeats. The
//! resulting doubly infinite sequence (β_k) is exposed both through the closed
//! quasi-periodic formula and through the reflection recursion, so the two can be
//! played against each other in tests.

use crate::lyndon::LoopLyndon;
use crate::rootsys::{RootSystem, RootVec};
use crate::{Error, Result};

/// An affine root (λ, d): finite part λ and level d.
pub type AffineRoot = (RootVec, i64);

pub struct AffineWeyl<'a> {
    dict: &'a LoopLyndon<'a>,
    rs: &'a RootSystem,
    /// β₀, β₋₁, …, β_{1−l}: the inversion set in decreasing index = increasing loop order.
    inversions: Vec<AffineRoot>,
    /// The recovered reduced word (i₀, i₋₁, …, i_{1−l}); entry 0 is the affine node.
    word: Vec<usize>,
    /// The diagram twist: τ(α̂_i) = α̂_{σ[i]}, indexed 0..=rank.
    sigma: Vec<usize>,
}

impl<'a> AffineWeyl<'a> {
    pub fn new(dict: &'a LoopLyndon<'a>) -> Result<AffineWeyl<'a>> {
        let rs = dict.root_system();
        let mut inversions: Vec<AffineRoot> = Vec::new();
        for alpha in rs.positive_roots() {
            for d in 0..alpha.height() {
                inversions.push((alpha.clone(), d));
            }
        }
        // Sorted ascending in loop order, position p holds β_{−p}: β₀ is the smallest
        // and the chain grows as the index drops.
        let mut keyed: Vec<(crate::words::Word, AffineRoot)> = inversions
            .into_iter()
            .map(|(a, d)| Ok((dict.word(&a, -d)?, (a, d))))
            .collect::<Result<_>>()?;
        keyed.sort_by(|x, y| x.0.cmp(&y.0));
        let inversions: Vec<AffineRoot> = keyed.into_iter().map(|(_, r)| r).collect();

        let mut weyl = AffineWeyl {
            dict,
            rs,
            inversions,
            word: Vec::new(),
            sigma: Vec::new(),
        };
        weyl.recover_word()?;
        weyl.recover_twist()?;
        Ok(weyl)
    }

    fn recover_word(&mut self) -> Result<()> {
        // α_{i_k} = s_{i_{k+1}} … s_{i₋₁} s_{i₀} (β_k), each result an affine simple root.
        let l = self.inversions.len();
        let mut word = Vec::with_capacity(l);
        for pos in 0..l {
            // β_k sits at inversions[pos] for k = −pos.
            let mut x = self.inversions[pos].clone();
            for &i in &word {
                x = self.reflect(i, &x);
            }
            match self.match_affine_simple(&x) {
                Some(i) => word.push(i),
                None => {
                    return Err(Error::WeylRecovery(format!(
                        "({}, {}) is not an affine simple root at position {pos}",
                        x.0, x.1
                    )))
                }
            }
        }
        self.word = word;
        Ok(())
    }

    fn recover_twist(&mut self) -> Result<()> {
        let n = self.rs.rank();
        let mut sigma = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let image = self.tau(&self.affine_simple(i));
            match self.match_affine_simple(&image) {
                Some(j) => sigma.push(j),
                None => {
                    return Err(Error::WeylRecovery(format!(
                        "τ(α̂_{i}) = ({}, {}) is not an affine simple root",
                        image.0, image.1
                    )))
                }
            }
        }
        let mut seen = vec![false; n + 1];
        for &j in &sigma {
            if seen[j] {
                return Err(Error::WeylRecovery("τ does not permute the diagram".into()));
            }
            seen[j] = true;
        }
        // σ must preserve the affine Cartan matrix, computed from finite parts.
        let part = |i: usize| -> RootVec {
            if i == 0 {
                -self.rs.theta()
            } else {
                RootVec::simple(n, i)
            }
        };
        for i in 0..=n {
            for j in 0..=n {
                let entry = |a: usize, b: usize| {
                    2 * self.rs.sym(&part(a), &part(b)) / self.rs.sym(&part(a), &part(a))
                };
                if entry(sigma[i], sigma[j]) != entry(i, j) {
                    return Err(Error::WeylRecovery(format!(
                        "τ twist does not preserve the affine Cartan matrix at ({i}, {j})"
                    )));
                }
            }
        }
        self.sigma = sigma;
        Ok(())
    }

    pub fn root_system(&self) -> &RootSystem {
        self.rs
    }

    /// l = Σ_{α > 0} |α|, the length of the translation by ρ∨.
    pub fn length(&self) -> usize {
        self.inversions.len()
    }

    /// The recovered reduced word (i₀, i₋₁, …, i_{1−l}).
    pub fn reduced_word(&self) -> &[usize] {
        &self.word
    }

    /// The diagram twist σ with τ(α̂_i) = α̂_{σ(i)}, indexed by 0..=rank.
    pub fn twist(&self) -> &[usize] {
        &self.sigma
    }

    /// α̂_i: (α_i, 0) for finite i, (−θ, 1) for i = 0.
    pub fn affine_simple(&self, i: usize) -> AffineRoot {
        if i == 0 {
            (-self.rs.theta(), 1)
        } else {
            (RootVec::simple(self.rs.rank(), i), 0)
        }
    }

    fn match_affine_simple(&self, x: &AffineRoot) -> Option<usize> {
        (0..=self.rs.rank()).find(|&i| self.affine_simple(i) == *x)
    }

    /// The affine simple reflection s_i.
    pub fn reflect(&self, i: usize, x: &AffineRoot) -> AffineRoot {
        let (lam, d) = x;
        if i == 0 {
            let k = self.rs.pairing_coroot(lam, self.rs.theta());
            (lam - &self.rs.theta().scaled(k), d + k)
        } else {
            (self.rs.reflect_simple(i, lam), *d)
        }
    }

    /// The translation by ρ∨: (λ, d) ↦ (λ, d − |λ|).
    pub fn translate(&self, x: &AffineRoot) -> AffineRoot {
        (x.0.clone(), x.1 - x.0.height())
    }

    /// τ = t_{ρ∨} ∘ C⁻¹ where C⁻¹ applies s_{i_{1−l}} first and s_{i₀} last.
    pub fn tau(&self, x: &AffineRoot) -> AffineRoot {
        let mut y = x.clone();
        for &i in self.word.iter().rev() {
            y = self.reflect(i, &y);
        }
        self.translate(&y)
    }

    /// The reduced-word letter i_k for any k ∈ ℤ, extended by i_{k+l} = σ(i_k).
    pub fn letter(&self, k: i64) -> usize {
        let l = self.length() as i64;
        // Stored positions: word[pos] = i_{−pos} for pos in 0..l.
        let r = (-k).rem_euclid(l);
        let periods = (-k - r) / l; // k = −r − periods·l, so i_k = σ^{−periods}(word[r])
        let mut i = self.word[r as usize];
        if periods >= 0 {
            for _ in 0..periods {
                i = self.sigma.iter().position(|&j| j == i).expect("σ is a bijection");
            }
        } else {
            for _ in 0..-periods {
                i = self.sigma[i];
            }
        }
        i
    }

    /// β_k by the closed quasi-periodic formula: reduce k into (1−l)..=0 and apply
    /// the translation the corresponding number of times.
    pub fn beta(&self, k: i64) -> AffineRoot {
        let l = self.length() as i64;
        let rem = k.rem_euclid(l);
        let r = if rem == 0 { 0 } else { rem - l };
        let m = (k - r) / l;
        let (lam, d) = &self.inversions[(-r) as usize];
        (lam.clone(), d - m * lam.height())
    }

    /// β_k by the reflection recursion: for k ≤ 0 apply s_{i₀} … s_{i_{k+1}} (innermost
    /// first) to α̂_{i_k}; for k ≥ 1 apply s_{i₁} … s_{i_{k−1}} to −α̂_{i_k}.
    pub fn beta_by_recursion(&self, k: i64) -> AffineRoot {
        if k <= 0 {
            let mut x = self.affine_simple(self.letter(k));
            let mut m = k + 1;
            while m <= 0 {
                x = self.reflect(self.letter(m), &x);
                m += 1;
            }
            x
        } else {
            let (lam, d) = self.affine_simple(self.letter(k));
            let mut x = (-&lam, -d);
            let mut m = k - 1;
            while m >= 1 {
                x = self.reflect(self.letter(m), &x);
                m -= 1;
            }
            x
        }
    }

    /// Sweep |k| ≤ count: the recursion and the quasi-periodic formula agree, the
    /// sequence is a strict chain in loop order, positive k have negative levels
    /// with finite parts in Δ⁺, and each full period covers each root α once per
    /// level. Returns the number of cases checked.
    pub fn verify_sequence(&self, count: i64) -> Result<usize> {
        let mut cases = 0;
        for k in -count..=count {
            let closed = self.beta(k);
            let recursed = self.beta_by_recursion(k);
            if closed != recursed {
                return Err(Error::VerificationFailed(format!(
                    "β_{k}: closed form ({}, {}) ≠ recursion ({}, {})",
                    closed.0, closed.1, recursed.0, recursed.1
                )));
            }
            if !self.rs.is_positive_root(&closed.0) {
                return Err(Error::VerificationFailed(format!(
                    "β_{k} = ({}, {}) has a finite part outside Δ+",
                    closed.0, closed.1
                )));
            }
            if k >= 1 && closed.1 >= 0 {
                return Err(Error::VerificationFailed(format!(
                    "β_{k} = ({}, {}) should have negative level",
                    closed.0, closed.1
                )));
            }
            cases += 1;
        }
        for k in -count..count {
            let hi = self.beta(k);
            let lo = self.beta(k + 1);
            if !self.dict.pair_lt((&lo.0, lo.1), (&hi.0, hi.1))? {
                return Err(Error::VerificationFailed(format!(
                    "chain violated: β_{} = ({}, {}) not below β_{k} = ({}, {})",
                    k + 1,
                    lo.0,
                    lo.1,
                    hi.0,
                    hi.1
                )));
            }
            cases += 1;
        }
        // Covering: m full periods hit exactly the levels −m|α| ≤ d < 0 of every α.
        let l = self.length() as i64;
        let m = count / l;
        if m > 0 {
            let mut got: Vec<AffineRoot> = (1..=m * l).map(|k| self.beta(k)).collect();
            got.sort();
            let mut want: Vec<AffineRoot> = Vec::new();
            for alpha in self.rs.positive_roots() {
                for d in -m * alpha.height()..0 {
                    want.push((alpha.clone(), d));
                }
            }
            want.sort();
            if got != want {
                return Err(Error::VerificationFailed(
                    "β sequence does not cover the negative-level roots".into(),
                ));
            }
            cases += want.len();
        }
        Ok(cases)
    }
}
