//! Command-line entry point: dictionary tables, single-word queries, tree
//! dictionaries as word lists, and the verification suites, with text and
//! JSON output.
//!
//! Exit codes: 0 on success, 1 when a verification suite finds a violation,
//! 2 on usage errors (bad arguments, malformed roots, windows too narrow to
//! certify). Set `QLYNDON_WORKERS` to bound the worker pool the suites fan
//! out on; defaults to the number of cores.

mod render;
mod suites;

use std::collections::BTreeMap;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qlyndon::lyndon::{closed_form_word, LoopLyndon};
use qlyndon::rootsys::{CartanType, RootSystem, RootVec};
use qlyndon::words::Word;
use qlyndon::{Error, Result};
use serde_json::json;

/// Exact Lyndon-word combinatorics for quantum loop groups.
#[derive(Parser)]
#[command(name = "qlyndon", version, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print ℓ(α, d) for every positive root α and 1 ≤ d ≤ |α|.
    ///
    /// For the classical families every row is annotated with whether the
    /// general recursion agrees with the explicit closed form.
    Tables(TablesArgs),
    /// Print the standard Lyndon loop word ℓ(α, d) of one (root, level) pair.
    Word(WordArgs),
    /// List the fundamental dictionary grouped by the first letter a^(1).
    Dictionary(DictionaryArgs),
    /// Run a verification suite; exits 0 when it passes, 1 with a
    /// counterexample when it does not.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct SystemArgs {
    /// Cartan family letter, A through G.
    #[arg(long = "type", value_name = "FAMILY")]
    family: char,
    /// Rank of the root system.
    #[arg(long)]
    rank: usize,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Render exponent-1 letters with the underline macro instead of ^(1).
    #[arg(long)]
    latex: bool,
}

impl SystemArgs {
    fn system(&self) -> Result<RootSystem> {
        RootSystem::new(CartanType::new(self.family, self.rank)?)
    }
}

#[derive(Args)]
struct TablesArgs {
    #[command(flatten)]
    sys: SystemArgs,
}

#[derive(Args)]
struct WordArgs {
    #[command(flatten)]
    sys: SystemArgs,
    /// Comma-separated simple-root coefficients of α, e.g. `1,2`.
    #[arg(long)]
    root: String,
    /// Level d; any integer, extended beyond 1 ≤ d ≤ |α| by quasi-periodicity.
    #[arg(long, allow_hyphen_values = true)]
    d: i64,
}

#[derive(Args)]
struct DictionaryArgs {
    #[command(flatten)]
    sys: SystemArgs,
    /// Only the words starting with this color's exponent-1 letter.
    #[arg(long)]
    letter: Option<usize>,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Which suite to run.
    #[arg(value_enum)]
    pub suite: Suite,
    #[command(flatten)]
    sys: SystemArgs,
    /// Window parameter: degree multiple for the dictionary sweeps, mode
    /// bound for serre, exponent bound for composition, coefficient window
    /// for fo-constraints.
    #[arg(long, allow_hyphen_values = true)]
    pub window: Option<i64>,
    /// Count parameter: β-steps for weyl-order, height bound for pbw, sample
    /// count for composition, factor count for fo-constraints.
    #[arg(long)]
    pub count: Option<i64>,
    /// Seed for the randomized suites.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// ℓ(α, d) < ℓ(α+β, d+e) < ℓ(β, e) over a window of levels.
    Convexity,
    /// Degrees, Lyndonness and the two-value exponent pattern of ℓ(α, d).
    ExponentBounds,
    /// ℓ(α, d) strictly decreases in d.
    Monotone,
    /// ℓ(α, d + |α|) is ℓ(α, d) with every exponent shifted.
    Periodicity,
    /// Reduced-word recovery and the convex β-sequence of the affine order.
    WeylOrder,
    /// Finite and loop Serre sums and the cleared degree-two relation vanish.
    Serre,
    /// Leading words of bracketed dictionary words are the words themselves.
    LeadingWord,
    /// Distinct leading words across each degree's standard monomials.
    Pbw,
    /// Expansion of embedded products matches direct loop-shuffle products.
    Composition,
    /// Wheel conditions and the coefficient constraints of expanded images.
    FoConstraints,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Convexity => "convexity",
            Suite::ExponentBounds => "exponent-bounds",
            Suite::Monotone => "monotone",
            Suite::Periodicity => "periodicity",
            Suite::WeylOrder => "weyl-order",
            Suite::Serre => "serre",
            Suite::LeadingWord => "leading-word",
            Suite::Pbw => "pbw",
            Suite::Composition => "composition",
            Suite::FoConstraints => "fo-constraints",
        }
    }
}

fn main() {
    // Die quietly on a closed pipe (`qlyndon tables | head`) like any other
    // line-oriented tool instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    configure_workers();
    if let Err(e) = run(&cli) {
        eprintln!("error: {e}");
        let code = match e {
            Error::VerificationFailed(_) => 1,
            _ => 2,
        };
        std::process::exit(code);
    }
}

/// Report a bad command-line or environment value outside clap's reach and
/// exit with the usage code.
pub fn usage_error(msg: String) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(2);
}

/// Size the global worker pool from `QLYNDON_WORKERS`; unset means the rayon
/// default, anything unparseable is a usage error.
fn configure_workers() {
    let Ok(raw) = std::env::var("QLYNDON_WORKERS") else {
        return;
    };
    let Ok(workers) = raw.trim().parse::<usize>() else {
        usage_error(format!("QLYNDON_WORKERS must be a worker count, got {raw:?}"));
    };
    if workers == 0 {
        usage_error("QLYNDON_WORKERS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build_global()
        .unwrap_or_else(|e| usage_error(format!("worker pool: {e}")));
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Tables(args) => cmd_tables(args),
        Command::Word(args) => cmd_word(args),
        Command::Dictionary(args) => cmd_dictionary(args),
        Command::Verify(args) => suites::run(args),
    }
}

fn cmd_tables(args: &TablesArgs) -> Result<()> {
    let rs = args.sys.system()?;
    let dict = LoopLyndon::new(&rs);
    let mut rows: Vec<(RootVec, i64, Word, Option<bool>)> = Vec::new();
    for alpha in rs.positive_roots() {
        for (d, w) in dict.fundamental_rows(alpha)? {
            let agreement = closed_form_word(&rs, alpha, d)?.map(|c| c == w);
            rows.push((alpha.clone(), d, w, agreement));
        }
    }
    match args.sys.format {
        Format::Json => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|(alpha, d, w, agreement)| {
                    json!({
                        "root": rs.render_root(alpha),
                        "coefficients": alpha.coeffs(),
                        "d": d,
                        "word": render::word(w, args.sys.latex),
                        "closed_form": agreement.map(|ok| if ok { "agrees" } else { "disagrees" }),
                    })
                })
                .collect();
            print_json(&json!({
                "type": rs.cartan_type().to_string(),
                "rows": items,
            }));
        }
        Format::Text => {
            println!("l(a, d) for {} - {} rows", rs.cartan_type(), rows.len());
            let root_w = rows.iter().map(|r| rs.render_root(&r.0).len()).max().unwrap_or(1);
            let word_w = rows
                .iter()
                .map(|r| render::word(&r.2, args.sys.latex).chars().count())
                .max()
                .unwrap_or(1);
            for (alpha, d, w, agreement) in &rows {
                let note = match agreement {
                    Some(true) => "closed form agrees",
                    Some(false) => "CLOSED FORM DISAGREES",
                    None => "",
                };
                let line = format!(
                    "  {:root_w$}  {d:>2}  {:word_w$}  {note}",
                    rs.render_root(alpha),
                    render::word(w, args.sys.latex),
                );
                println!("{}", line.trim_end());
            }
        }
    }
    Ok(())
}

fn cmd_word(args: &WordArgs) -> Result<()> {
    let rs = args.sys.system()?;
    let alpha = rs.parse_root(&args.root)?;
    let dict = LoopLyndon::new(&rs);
    let w = dict.word(&alpha, args.d)?;
    match args.sys.format {
        Format::Text => println!("{}", render::bare(&w, args.sys.latex)),
        Format::Json => print_json(&json!({
            "type": rs.cartan_type().to_string(),
            "root": rs.render_root(&alpha),
            "coefficients": alpha.coeffs(),
            "d": args.d,
            "word": w.render(),
            "display": render::bare(&w, args.sys.latex),
        })),
    }
    Ok(())
}

fn cmd_dictionary(args: &DictionaryArgs) -> Result<()> {
    let rs = args.sys.system()?;
    if let Some(color) = args.letter {
        if color == 0 || color > rs.rank() {
            return Err(Error::BadColor(color, rs.rank()));
        }
    }
    let dict = LoopLyndon::new(&rs);
    let mut groups: BTreeMap<usize, Vec<(Word, RootVec, i64)>> = BTreeMap::new();
    for alpha in rs.positive_roots() {
        for (d, w) in dict.fundamental_rows(alpha)? {
            let first = w.letters()[0];
            groups.entry(first.color()).or_default().push((w, alpha.clone(), d));
        }
    }
    for rows in groups.values_mut() {
        rows.sort();
    }
    if let Some(color) = args.letter {
        groups.retain(|&c, _| c == color);
    }
    match args.sys.format {
        Format::Json => {
            let letters: Vec<serde_json::Value> = groups
                .iter()
                .map(|(color, rows)| {
                    json!({
                        "letter": format!("{color}^(1)"),
                        "words": rows
                            .iter()
                            .map(|(w, alpha, d)| {
                                json!({
                                    "word": render::word(w, args.sys.latex),
                                    "root": rs.render_root(alpha),
                                    "coefficients": alpha.coeffs(),
                                    "d": d,
                                })
                            })
                            .collect::<Vec<_>>(),
                    })
                })
                .collect();
            print_json(&json!({
                "type": rs.cartan_type().to_string(),
                "letters": letters,
            }));
        }
        Format::Text => {
            for (color, rows) in &groups {
                println!("{color}^(1):");
                let word_w = rows
                    .iter()
                    .map(|r| render::word(&r.0, args.sys.latex).chars().count())
                    .max()
                    .unwrap_or(1);
                for (w, alpha, d) in rows {
                    println!(
                        "  {:word_w$}  l({}, {d})",
                        render::word(w, args.sys.latex),
                        rs.render_root(alpha),
                    );
                }
            }
        }
    }
    Ok(())
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("JSON values always serialize"));
}
