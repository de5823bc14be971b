//! Loop letters and loop words.
//!
//! A letter is a color with an integer exponent, written `i^(d)`. Letters compare by
//! exponent first, **reversed** — a higher exponent is a smaller letter — with color
//! breaking ties; words compare lexicographically, a proper prefix sorting before any
//! word extending it. Both orders fall out of the derived `Ord`s below, which is why
//! [`LoopLetter`] stores its comparison key rather than implementing `Ord` by hand.

use std::cmp::Reverse;
use std::fmt;

use crate::rootsys::RootVec;
use crate::{Error, Result};

/// A single letter `i^(d)`: color i (1-based) with exponent d.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LoopLetter {
    key: (Reverse<i64>, usize),
}

impl LoopLetter {
    pub fn new(color: usize, exp: i64) -> LoopLetter {
        LoopLetter {
            key: (Reverse(exp), color),
        }
    }

    pub fn color(&self) -> usize {
        self.key.1
    }

    pub fn exp(&self) -> i64 {
        self.key.0 .0
    }

    pub fn shifted(&self, by: i64) -> LoopLetter {
        LoopLetter::new(self.color(), self.exp() + by)
    }
}

impl fmt::Debug for LoopLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp() == 0 {
            write!(f, "{}", self.color())
        } else {
            write!(f, "{}^({})", self.color(), self.exp())
        }
    }
}

/// A word in loop letters. `Ord` is lexicographic in the letter order, with a proper
/// prefix sorting before every word that extends it.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<LoopLetter>);

impl Word {
    pub fn new(letters: Vec<LoopLetter>) -> Word {
        Word(letters)
    }

    pub fn empty() -> Word {
        Word(Vec::new())
    }

    /// Single letter i^(d).
    pub fn letter(color: usize, exp: i64) -> Word {
        Word(vec![LoopLetter::new(color, exp)])
    }

    /// A finite word: all exponents zero.
    pub fn finite(colors: &[usize]) -> Word {
        Word(colors.iter().map(|&c| LoopLetter::new(c, 0)).collect())
    }

    pub fn from_pairs(pairs: &[(usize, i64)]) -> Word {
        Word(pairs.iter().map(|&(c, d)| LoopLetter::new(c, d)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[LoopLetter] {
        &self.0
    }

    pub fn push(&mut self, l: LoopLetter) {
        self.0.push(l);
    }

    /// Concatenation self · other.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    /// The word with every exponent shifted by `by`.
    pub fn shifted(&self, by: i64) -> Word {
        Word(self.0.iter().map(|l| l.shifted(by)).collect())
    }

    /// Horizontal degree: the sum of α_color over the letters, as a lattice vector.
    pub fn hdeg(&self, rank: usize) -> RootVec {
        let mut coeffs = vec![0i64; rank];
        for l in &self.0 {
            coeffs[l.color() - 1] += 1;
        }
        RootVec::from_coeffs(coeffs)
    }

    /// Vertical degree: the sum of the exponents.
    pub fn vdeg(&self) -> i64 {
        self.0.iter().map(|l| l.exp()).sum()
    }

    /// True when every exponent is zero.
    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|l| l.exp() == 0)
    }

    /// Check all colors lie in 1..=rank.
    pub fn validate_colors(&self, rank: usize) -> Result<()> {
        for l in &self.0 {
            if l.color() == 0 || l.color() > rank {
                return Err(Error::BadColor(l.color(), rank));
            }
        }
        Ok(())
    }

    pub fn render(&self) -> String {
        format!("{self:?}")
    }

    /// Parse the bracketed form produced by rendering: `[2^(1) 1 2]`, `[1 2]`, `[]`.
    /// Exponent-zero letters may be written bare; `^{(d)}` braces are accepted too.
    pub fn parse(src: &str) -> Result<Word> {
        let s = src.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse {
                pos: 0,
                msg: "expected a [...] word".into(),
            })?;
        let mut letters = Vec::new();
        for tok in inner.split_whitespace() {
            letters.push(parse_letter(tok)?);
        }
        Ok(Word(letters))
    }
}

fn parse_letter(tok: &str) -> Result<LoopLetter> {
    let err = |msg: &str| Error::Parse {
        pos: 0,
        msg: format!("letter {tok:?}: {msg}"),
    };
    let (color_part, exp_part) = match tok.split_once('^') {
        None => (tok, None),
        Some((c, e)) => (c, Some(e)),
    };
    let color: usize = color_part.parse().map_err(|_| err("bad color"))?;
    if color == 0 {
        return Err(err("colors are numbered from 1"));
    }
    let exp = match exp_part {
        None => 0,
        Some(e) => {
            let e = e
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .or_else(|| e.strip_prefix("{(").and_then(|t| t.strip_suffix(")}")))
                .ok_or_else(|| err("exponent must be written ^(d)"))?;
            e.parse::<i64>().map_err(|_| err("bad exponent"))?
        }
    };
    Ok(LoopLetter::new(color, exp))
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l:?}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}
