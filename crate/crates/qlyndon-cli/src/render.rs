//! Text and LaTeX rendering of loop words.
//!
//! Text mode prints letters the way the library does: bare color for exponent
//! zero, `i^(d)` otherwise. LaTeX mode marks exponent-1 letters with an
//! underline macro `\ul{i}` (define it as any underline of your choice, e.g.
//! `\newcommand{\ul}[1]{\uline{#1}}`), keeps exponent-0 letters bare, and
//! renders every other exponent as a superscript `i^{(d)}`.

use qlyndon::words::{LoopLetter, Word};

fn letter(l: &LoopLetter, latex: bool) -> String {
    match (latex, l.exp()) {
        (_, 0) => l.color().to_string(),
        (false, e) => format!("{}^({e})", l.color()),
        (true, 1) => format!("\\ul{{{}}}", l.color()),
        (true, e) => format!("{}^{{({e})}}", l.color()),
    }
}

/// The letters of `w` joined by spaces (text) or thin spaces (LaTeX), without
/// surrounding brackets: `2^(1) 1 2` or `\ul{2}\,1\,2`.
pub fn bare(w: &Word, latex: bool) -> String {
    let sep = if latex { "\\," } else { " " };
    w.letters()
        .iter()
        .map(|l| letter(l, latex))
        .collect::<Vec<_>>()
        .join(sep)
}

/// Bracketed form for tables and dictionaries: `[2^(1) 1 2]` or `$[\ul{2}\,1\,2]$`.
pub fn word(w: &Word, latex: bool) -> String {
    if latex {
        format!("$[{}]$", bare(w, true))
    } else {
        w.render()
    }
}
