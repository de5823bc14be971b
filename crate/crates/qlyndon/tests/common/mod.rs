//! Shared test oracle: hand-transcribed closed-form dictionaries for the classical
//! types, against which the general recursion is cross-checked.

use qlyndon::rootsys::{CartanType, RootVec};
use qlyndon::words::Word;

fn push(out: &mut Vec<(usize, i64)>, color: i64, exp: i64) {
    assert!(color >= 1, "closed form produced color {color}");
    out.push((color as usize, exp));
}

fn asc(out: &mut Vec<(usize, i64)>, a: i64, b: i64, exp: i64) {
    debug_assert!(a >= 1);
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

/// The single closed-form family shared by all chain-shaped roots: `letters` lists the
/// colors along the chain in order, and the word for 1 ≤ d ≤ h puts an exponent-1
/// letter at position h−d, the positions below it descending with exponent 0, and the
/// positions above it ascending with exponent 1.
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

/// Support interval [lo, hi] of an all-coefficients-in-{0,1} vector, if its support
/// is one contiguous block.
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

/// ℓ(α, d) from the hand-transcribed closed forms, for 1 ≤ d ≤ |α|;
/// panics on a vector the family's dictionary does not describe.
pub fn closed_form_word(ctype: CartanType, alpha: &RootVec, d: i64) -> Word {
    let n = ctype.rank() as i64;
    let coeff = |c: i64| alpha.coeff(c as usize);
    let first_support = (1..=n).find(|&c| coeff(c) != 0).expect("nonzero root");
    let first_double = (1..=n).find(|&c| coeff(c) == 2);
    match ctype {
        CartanType::A(_) => {
            let (i, j) = ones_interval(alpha).expect("type A roots are chains");
            chain_form(&(i..=j).collect::<Vec<_>>(), d)
        }
        CartanType::B(_) => match first_double {
            None => {
                let (i, j) = ones_interval(alpha).expect("chain root");
                chain_form(&(i..=j).collect::<Vec<_>>(), d)
            }
            Some(j) => beta_form(n, first_support, j, d),
        },
        CartanType::C(_) => match first_double {
            None => {
                let (i, j) = ones_interval(alpha).expect("chain root");
                chain_form(&(i..=j).collect::<Vec<_>>(), d)
            }
            Some(j) => gamma_form(n, first_support, j, d),
        },
        CartanType::D(_) => {
            if let Some(j) = first_double {
                return tau_form(n, first_support, j, d);
            }
            if let Some((i, j)) = ones_interval(alpha) {
                if j == n && coeff(n - 1) == 1 {
                    return sigma_form(n, i, d);
                }
                return chain_form(&(i..=j).collect::<Vec<_>>(), d);
            }
            // Chain through the branch: support [i, n−2] plus n, skipping n−1.
            assert_eq!(coeff(n - 1), 0, "unclassified D-type root {alpha}");
            assert_eq!(coeff(n), 1, "unclassified D-type root {alpha}");
            let i = first_support;
            let mut letters: Vec<i64> = (i..=n - 2).collect();
            letters.push(n);
            chain_form(&letters, d)
        }
        _ => panic!("no closed form for {ctype}"),
    }
}
