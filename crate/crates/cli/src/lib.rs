//! Command dispatch for the `carlitz` binary.
//!
//! Exit status: 0 on success, 1 when `verify` finds a mismatch, 2 on
//! invalid input.

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::sync::Arc;

use carlitz::exceptional;
use carlitz::{
    Field, FieldElement, FieldSpec, Gadget, GenToken, GenWord, Permutation, Poly, WordStats,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_INVALID: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "carlitz",
    version,
    about = "Permutations of F_q as words in affine maps and x^(q-2)"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Also print extension-field elements as coefficient vectors (text output).
    #[arg(long, global = true)]
    pub show_coeffs: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GadgetArg {
    Zieve,
    Carlitz,
}

impl From<GadgetArg> for Gadget {
    fn from(g: GadgetArg) -> Self {
        match g {
            GadgetArg::Zieve => Gadget::Zieve,
            GadgetArg::Carlitz => Gadget::Carlitz,
        }
    }
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    /// Field order; must be a prime power. Uses the default modulus.
    #[arg(long, conflicts_with_all = ["p", "n"])]
    pub q: Option<u64>,
    /// Characteristic.
    #[arg(long, requires = "n")]
    pub p: Option<u64>,
    /// Extension degree.
    #[arg(long, requires = "p")]
    pub n: Option<u32>,
    /// Monic irreducible modulus, comma-separated coefficients, constant first.
    #[arg(long, requires = "p")]
    pub modulus: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Word inducing the transposition (0 a).
    Transposition {
        #[command(flatten)]
        field: FieldArgs,
        /// Canonical index of a.
        #[arg(long)]
        a: u64,
        #[arg(long, value_enum, default_value_t = GadgetArg::Zieve)]
        gadget: GadgetArg,
        /// Simplify the word before printing it.
        #[arg(long)]
        simplify: bool,
    },
    /// Word inducing an arbitrary permutation, with statistics.
    Decompose {
        #[command(flatten)]
        field: FieldArgs,
        /// Cycle notation "(0 3)(1 2)" or an image list "3,2,1,0".
        #[arg(long, allow_hyphen_values = true)]
        perm: String,
        #[arg(long, value_enum, default_value_t = GadgetArg::Zieve)]
        gadget: GadgetArg,
    },
    /// Reduced polynomial of a word.
    Compile {
        /// Word JSON file, or - for standard input.
        #[arg(long)]
        word: PathBuf,
    },
    /// Exit 0 iff the word induces the permutation, 1 otherwise.
    Verify {
        #[arg(long)]
        word: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        perm: String,
    },
    /// Simplified form of a word.
    Simplify {
        #[arg(long)]
        word: PathBuf,
    },
    /// Extension degrees k for which x^(q-2) permutes F_{q^k}.
    Exceptional {
        #[arg(long)]
        q: u64,
        #[arg(long = "max-k")]
        max_k: u64,
    },
    /// Full value table of a word.
    Table {
        #[arg(long)]
        word: PathBuf,
    },
}

#[derive(Debug)]
pub struct CliError(String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

impl FieldArgs {
    fn build(&self) -> CliResult<Arc<Field>> {
        let spec = match (self.q, self.p, self.n) {
            (Some(q), None, None) => FieldSpec::from_order(q)?,
            (None, Some(p), Some(n)) => match &self.modulus {
                Some(text) => {
                    let coeffs = text
                        .split(',')
                        .map(|c| c.trim().parse::<u32>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| CliError(format!("bad --modulus: {e}")))?;
                    FieldSpec::new(p, n, coeffs)?
                }
                None => FieldSpec::with_default_modulus(p, n)?,
            },
            _ => {
                return Err(CliError(
                    "specify the field with --q, or with --p and --n".into(),
                ))
            }
        };
        Ok(Arc::new(Field::new(spec)))
    }
}

/// Reads a word from a file (or `-` for `input`). Accepts a bare word or
/// any object carrying it under `"word"`, such as `decompose` output.
fn load_word(path: &PathBuf, input: &mut dyn Read) -> CliResult<GenWord> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        input.read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))?
    };
    let mut value: serde_json::Value = serde_json::from_str(&text)?;
    if let Some(inner) = value.get_mut("word") {
        value = inner.take();
    }
    Ok(serde_json::from_value(value)?)
}

#[derive(Serialize)]
struct Decomposition<'a> {
    word: &'a GenWord,
    stats: WordStats,
}

#[derive(Serialize)]
struct Verification<'a> {
    matches: bool,
    induced: &'a Permutation,
    expected: &'a Permutation,
}

struct Printer<'a> {
    format: Format,
    show_coeffs: bool,
    out: &'a mut dyn Write,
}

impl Printer<'_> {
    fn json<T: Serialize>(&mut self, value: &T) -> CliResult<()> {
        writeln!(self.out, "{}", serde_json::to_string_pretty(value)?)?;
        Ok(())
    }

    fn elem(&self, field: &Field, x: FieldElement) -> String {
        if self.show_coeffs && field.degree() > 1 {
            format!("{x} [{}]", field.format_coeffs(x))
        } else {
            x.to_string()
        }
    }

    fn word_text(&mut self, w: &GenWord) -> CliResult<()> {
        let f = w.field();
        writeln!(self.out, "field: {}", f.spec())?;
        let tokens: Vec<String> = w
            .tokens()
            .iter()
            .map(|t| match *t {
                GenToken::Linear { a, b } => {
                    format!("linear({}, {})", self.elem(f, a), self.elem(f, b))
                }
                GenToken::Inv => "inv".to_string(),
            })
            .collect();
        let body = if tokens.is_empty() {
            "(empty)".to_string()
        } else {
            tokens.join(" ; ")
        };
        writeln!(self.out, "word: {body}")?;
        writeln!(
            self.out,
            "tokens: {}, inversions: {}",
            w.len(),
            w.inv_count()
        )?;
        Ok(())
    }

    fn word(&mut self, w: &GenWord) -> CliResult<()> {
        match self.format {
            Format::Json => self.json(w),
            Format::Text => self.word_text(w),
        }
    }
}

fn parse_perm(text: &str, field: &Field) -> CliResult<Permutation> {
    Permutation::parse(text, field.order()).map_err(|e| CliError(format!("--perm: {e}")))
}

fn dispatch(cli: &Cli, input: &mut dyn Read, out: &mut dyn Write) -> CliResult<u8> {
    let mut pr = Printer {
        format: cli.format,
        show_coeffs: cli.show_coeffs,
        out,
    };
    match &cli.command {
        Command::Transposition {
            field,
            a,
            gadget,
            simplify,
        } => {
            let field = field.build()?;
            let a = field.element(*a)?;
            let mut w = GenWord::transposition(field, a, (*gadget).into())?;
            if *simplify {
                w = w.simplify();
            }
            pr.word(&w)?;
        }
        Command::Decompose {
            field,
            perm,
            gadget,
        } => {
            let field = field.build()?;
            let sigma = parse_perm(perm, &field)?;
            let w = GenWord::decompose(field, &sigma, (*gadget).into())?;
            let stats = w.stats()?;
            match pr.format {
                Format::Json => pr.json(&Decomposition { word: &w, stats })?,
                Format::Text => {
                    writeln!(pr.out, "permutation: {sigma}")?;
                    pr.word_text(&w)?;
                    let degree = stats
                        .compiled_degree
                        .map_or("-inf".into(), |d| d.to_string());
                    writeln!(pr.out, "compiled degree: {degree}")?;
                }
            }
        }
        Command::Compile { word } => {
            let w = load_word(word, input)?;
            let poly = w.compile()?;
            match pr.format {
                Format::Json => pr.json(&poly.to_json())?,
                Format::Text => {
                    writeln!(pr.out, "{poly}")?;
                    if pr.show_coeffs && w.field().degree() > 1 {
                        write_coeff_legend(&mut pr, &poly)?;
                    }
                }
            }
        }
        Command::Verify { word, perm } => {
            let w = load_word(word, input)?;
            let expected = parse_perm(perm, w.field())?;
            let induced = w.to_permutation();
            let matches = induced == expected;
            match pr.format {
                Format::Json => pr.json(&Verification {
                    matches,
                    induced: &induced,
                    expected: &expected,
                })?,
                Format::Text if matches => writeln!(pr.out, "ok: word induces {induced}")?,
                Format::Text => writeln!(
                    pr.out,
                    "mismatch: word induces {induced}, expected {expected}"
                )?,
            }
            return Ok(if matches { EXIT_OK } else { EXIT_MISMATCH });
        }
        Command::Simplify { word } => {
            let w = load_word(word, input)?;
            pr.word(&w.simplify())?;
        }
        Command::Exceptional { q, max_k } => {
            let report = exceptional::report(*q, *max_k)?;
            match pr.format {
                Format::Json => pr.json(&report)?,
                Format::Text => {
                    let list =
                        |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
                    writeln!(pr.out, "q = {}, q - 2 = {}", report.q, report.q - 2)?;
                    writeln!(
                        pr.out,
                        "odd prime factors of q - 2: {{{}}}",
                        list(&report.factors)
                    )?;
                    for (l, r) in &report.orders {
                        writeln!(pr.out, "  order of 2 mod {l}: {r}")?;
                    }
                    if report.excluded_even_prime {
                        writeln!(pr.out, "  (2 divides q - 2 but imposes no condition)")?;
                    }
                    writeln!(
                        pr.out,
                        "forbidden divisors: {{{}}}",
                        list(&report.forbidden)
                    )?;
                    writeln!(
                        pr.out,
                        "permitted k <= {max_k}: {{{}}}",
                        list(&report.permitted)
                    )?;
                }
            }
        }
        Command::Table { word } => {
            let w = load_word(word, input)?;
            let perm = w.to_permutation();
            match pr.format {
                Format::Json => pr.json(&perm)?,
                Format::Text => {
                    let f = w.field().clone();
                    for (x, y) in f.elements().zip(w.value_table()) {
                        writeln!(pr.out, "{} -> {}", pr.elem(&f, x), pr.elem(&f, y))?;
                    }
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn write_coeff_legend(pr: &mut Printer<'_>, poly: &Poly) -> CliResult<()> {
    let f = poly.field();
    let mut seen: Vec<FieldElement> = poly
        .coeffs()
        .iter()
        .copied()
        .filter(|c| !c.is_zero())
        .collect();
    seen.sort();
    seen.dedup();
    for c in seen {
        writeln!(pr.out, "  {c} = {}", f.format_coeffs(c))?;
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, input: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_INVALID
                }
            };
        }
    };
    match dispatch(&cli, input, out) {
        Ok(code) => code,
        Err(CliError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INVALID
        }
    }
}
