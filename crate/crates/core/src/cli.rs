//! The `tba` command line.
//!
//! Exit codes: 0 on success, 1 when a mathematical check fails, 2 on input or
//! usage errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::{TableAlgebra, ValidateOptions};
use num_complex::Complex64;

use crate::characters::{
    character_table, decompose, embedding_check, Character, CharacterTable, TableOptions,
    DEFAULT_TOLERANCE,
};
use crate::error::Error;
use crate::format::{complex, complex_list, index_list, real};
use crate::io::{load, write_native};
use crate::products::{burnside_brauer, product, BbReport};
use crate::quotient::quotient;
use crate::subsets::{
    enumerate_closed_subsets, is_normal, is_strongly_normal, ClosedSubset, DEFAULT_ENUMERATION_CAP,
};
use crate::{corpus, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Environment variable that overrides `--seed`.
pub const SEED_ENV: &str = "TBA_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Human,
    Tsv,
}

#[derive(Debug, Parser)]
#[command(
    name = "tba",
    version,
    about = "Table algebras: axioms, closed subsets, quotients, characters"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "human")]
    pub format: OutputFormat,

    /// Check associativity exhaustively at any dimension.
    #[arg(long, global = true)]
    pub strict: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args, Clone, Copy)]
pub struct NumericArgs {
    /// Tolerance for eigenvalue clustering and Gram checks.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
    /// Seed for the random central element (overridden by TBA_SEED).
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the table-algebra axioms.
    Validate { file: PathBuf },
    /// List all closed subsets with their normality flags.
    Subsets { file: PathBuf },
    /// Double cosets, alpha scalars and quotient structure constants.
    Quotient {
        file: PathBuf,
        /// Comma-separated basis indices of a closed subset.
        #[arg(long, value_delimiter = ',', required = true)]
        closed: Vec<usize>,
    },
    /// Irreducible characters.
    Chartable {
        file: PathBuf,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Character product of two irreducibles and its decomposition.
    Product {
        file: PathBuf,
        #[arg(long)]
        chi: usize,
        #[arg(long)]
        psi: usize,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Burnside-Brauer constituent check for a character.
    Bb {
        file: PathBuf,
        /// An irreducible index, a sum such as `1+2` or `2*0+1`, or `deg`.
        #[arg(long)]
        chi: String,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Lift the quotient's irreducibles and match them in Irr(A).
    Lift {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        closed: Vec<usize>,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Print the q-example algebra in the native format.
    ExampleQ { q: usize },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn with_code(code: i32, stdout: String) -> Self {
        Self {
            code,
            stdout,
            stderr: String::new(),
        }
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::ShapeMismatch(_)
        | Error::AxiomViolation(_)
        | Error::AlgebraMismatch(..)
        | Error::NotClosed(_)
        | Error::Parse { .. }
        | Error::NotAScheme { .. }
        | Error::NotASchemeRelation(_)
        | Error::NotAGroup(_)
        | Error::SizeLimitExceeded { .. }
        | Error::Io(_) => EXIT_INPUT,
        _ => EXIT_CHECK_FAILED,
    }
}

fn input_error(msg: String) -> Outcome {
    Outcome {
        code: EXIT_INPUT,
        stdout: String::new(),
        stderr: format!("error: {msg}\n"),
    }
}

/// Parse `args` (including the program name) and run. `env_seed` is the value
/// of `TBA_SEED`, if set.
pub fn run<I, T>(args: I, env_seed: Option<String>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let seed_override = match env_seed {
        Some(s) => match s.trim().parse::<u64>() {
            Ok(v) => Some(v),
            Err(_) => return input_error(format!("{SEED_ENV}={s:?} is not an unsigned integer")),
        },
        None => None,
    };
    match execute(&cli, seed_override) {
        Ok(outcome) => outcome,
        Err(err) => Outcome {
            code: exit_code(&err),
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        },
    }
}

fn load_file(path: &std::path::Path, opts: ValidateOptions) -> Result<TableAlgebra> {
    load(path, opts).map_err(|e| match e {
        Error::Io(io) => Error::Io(std::io::Error::new(
            io.kind(),
            format!("{}: {io}", path.display()),
        )),
        other => other,
    })
}

fn table_opts(numeric: &NumericArgs, seed_override: Option<u64>) -> TableOptions {
    TableOptions {
        tol: numeric.tol,
        seed: seed_override.unwrap_or(numeric.seed),
    }
}

fn execute(cli: &Cli, seed_override: Option<u64>) -> Result<Outcome> {
    let vopts = ValidateOptions {
        strict: cli.strict,
        seed: 0,
    };
    let tsv = cli.format == OutputFormat::Tsv;
    match &cli.command {
        Command::Validate { file } => match load_file(file, vopts) {
            Ok(alg) => Ok(Outcome::ok(if tsv {
                format!("result\tdim\nOK\t{}\n", alg.dim())
            } else {
                format!("OK: {} basis elements, axioms I–IV hold\n", alg.dim())
            })),
            Err(Error::AxiomViolation(vs)) => {
                let mut out = String::new();
                if tsv {
                    out.push_str("axiom\tindices\tfound\texpected\n");
                    for v in &vs {
                        let _ = writeln!(
                            out,
                            "{}\t{}\t{}\t{}",
                            v.axiom,
                            index_list(&v.indices),
                            v.found,
                            v.expected
                        );
                    }
                } else {
                    let _ = writeln!(out, "FAIL: {} axiom violation(s)", vs.len());
                    for v in &vs {
                        let _ = writeln!(out, "  {v}");
                    }
                }
                Ok(Outcome::with_code(EXIT_CHECK_FAILED, out))
            }
            Err(e) => Err(e),
        },
        Command::Subsets { file } => {
            let alg = load_file(file, vopts)?;
            subsets_report(&alg, tsv).map(Outcome::ok)
        }
        Command::Quotient { file, closed } => {
            let alg = load_file(file, vopts)?;
            let c = ClosedSubset::new(&alg, closed)?;
            quotient_report(&alg, &c, tsv).map(Outcome::ok)
        }
        Command::Chartable { file, numeric } => {
            let alg = load_file(file, vopts)?;
            let table = character_table(&alg, table_opts(numeric, seed_override))?;
            Ok(Outcome::ok(chartable_report(&alg, &table, tsv)))
        }
        Command::Product {
            file,
            chi,
            psi,
            numeric,
        } => {
            let alg = load_file(file, vopts)?;
            let table = character_table(&alg, table_opts(numeric, seed_override))?;
            for i in [*chi, *psi] {
                if i >= table.len() {
                    return Ok(input_error(format!(
                        "character index {i} out of range; there are {} irreducibles",
                        table.len()
                    )));
                }
            }
            product_report(&alg, &table, *chi, *psi, tsv).map(Outcome::ok)
        }
        Command::Bb { file, chi, numeric } => {
            let alg = load_file(file, vopts)?;
            let table = character_table(&alg, table_opts(numeric, seed_override))?;
            let values = match character_expression(&alg, &table, chi) {
                Ok(v) => v,
                Err(msg) => return Ok(input_error(msg)),
            };
            let (report, code) = match burnside_brauer(&alg, &table, &values) {
                Ok(r) => {
                    let code = if r.verdict {
                        EXIT_OK
                    } else {
                        EXIT_CHECK_FAILED
                    };
                    (r, code)
                }
                Err(Error::HypothesisFailed(r)) => (*r, EXIT_CHECK_FAILED),
                Err(e) => return Err(e),
            };
            Ok(Outcome::with_code(
                code,
                bb_report(chi, &values, &report, tsv),
            ))
        }
        Command::Lift {
            file,
            closed,
            numeric,
        } => {
            let alg = load_file(file, vopts)?;
            let opts = table_opts(numeric, seed_override);
            let table = character_table(&alg, opts)?;
            let c = ClosedSubset::new(&alg, closed)?;
            let rep = embedding_check(&alg, &table, &c, opts)?;
            let mut out = String::new();
            if tsv {
                out.push_str("quotient_index\tirreducible\tvalues\n");
                for (j, (lift, i)) in rep.lifts.iter().zip(&rep.mapping).enumerate() {
                    let _ = writeln!(out, "{j}\t{i}\t{}", complex_list(&lift.values, ","));
                }
                for i in &rep.excluded {
                    let _ = writeln!(
                        out,
                        "-\t{i}\t{}",
                        complex_list(&table.irreducibles[*i].values, ",")
                    );
                }
            } else {
                let _ = writeln!(
                    out,
                    "C = {{{}}}: {} quotient irreducibles embed into {} irreducibles of A",
                    index_list(c.indices()),
                    rep.lifts.len(),
                    table.len()
                );
                for (j, (lift, i)) in rep.lifts.iter().zip(&rep.mapping).enumerate() {
                    let _ = writeln!(
                        out,
                        "  psi{j} -> chi{i}: {}",
                        complex_list(&lift.values, " ")
                    );
                }
                let excluded: Vec<String> =
                    rep.excluded.iter().map(|i| format!("chi{i}")).collect();
                let _ = writeln!(
                    out,
                    "chi(e) = 0 for: {}",
                    if excluded.is_empty() {
                        "none".to_string()
                    } else {
                        excluded.join(" ")
                    }
                );
                let _ = writeln!(out, "embedding: OK");
            }
            Ok(Outcome::ok(out))
        }
        Command::ExampleQ { q } => {
            if *q < 2 {
                return Ok(input_error(format!("q must be at least 2, got {q}")));
            }
            let mut out = format!(
                "# q-example with q = {q}: r_i r_i = (q-1) r_0 + (q-2) r_i, r_i r_j = sum of the other r_k\n"
            );
            out.push_str(&write_native(&corpus::q_example(*q)));
            Ok(Outcome::ok(out))
        }
    }
}

/// Values of `deg`, `I`, or a `+`-separated sum of terms `I` / `N*I`.
pub fn character_expression(
    alg: &TableAlgebra,
    table: &CharacterTable,
    expr: &str,
) -> std::result::Result<Vec<Complex64>, String> {
    let expr = expr.trim();
    if expr.eq_ignore_ascii_case("deg") {
        return Ok(Character::degree_map(alg).values);
    }
    let mut values = vec![Complex64::new(0.0, 0.0); alg.dim()];
    for term in expr.split('+') {
        let term = term.trim();
        let (mult, index) = match term.split_once('*') {
            Some((n, i)) => (n.trim(), i.trim()),
            None => ("1", term),
        };
        let mult: u32 = mult
            .parse()
            .map_err(|_| format!("bad multiplicity {mult:?} in character expression {expr:?}"))?;
        let index: usize = index
            .parse()
            .map_err(|_| format!("bad term {term:?} in character expression {expr:?}"))?;
        let chi = table.irreducibles.get(index).ok_or_else(|| {
            format!(
                "character index {index} out of range; there are {} irreducibles",
                table.len()
            )
        })?;
        for (v, x) in values.iter_mut().zip(&chi.values) {
            *v += x * f64::from(mult);
        }
    }
    Ok(values)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn subsets_report(alg: &TableAlgebra, tsv: bool) -> Result<String> {
    let all = enumerate_closed_subsets(alg, DEFAULT_ENUMERATION_CAP)?;
    let mut out = String::new();
    if tsv {
        out.push_str("indices\tsize\tplus_degree\tnormal\tstrongly_normal\n");
    } else {
        let _ = writeln!(out, "{} closed subsets", all.len());
    }
    for c in &all {
        let normal = is_normal(alg, c)?;
        let strong = is_strongly_normal(alg, c);
        if tsv {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                index_list(c.indices()),
                c.len(),
                c.plus_degree(alg),
                yes_no(normal),
                yes_no(strong)
            );
        } else {
            let _ = writeln!(
                out,
                "  {{{}}}  |C+| = {}  normal: {}  strongly normal: {}",
                index_list(c.indices()),
                c.plus_degree(alg),
                yes_no(normal),
                yes_no(strong)
            );
        }
    }
    Ok(out)
}

fn quotient_report(alg: &TableAlgebra, c: &ClosedSubset, tsv: bool) -> Result<String> {
    let pres = quotient(alg, c)?;
    let q = &pres.quotient;
    let mut out = String::new();
    if tsv {
        out.push_str("record\tfields\n");
        for (k, block) in pres.cosets.iter().enumerate() {
            let _ = writeln!(out, "coset\t{k}\t{}\t{}", index_list(block), q.degree(k));
        }
        if let Some(alphas) = &pres.alphas {
            for (b, a) in alphas.iter().enumerate() {
                let _ = writeln!(out, "alpha\t{b}\t{a}");
            }
        }
        for (i, j, k, x) in q.entries() {
            let _ = writeln!(out, "gamma\t{i}\t{j}\t{k}\t{x}");
        }
    } else {
        let _ = writeln!(
            out,
            "quotient by C = {{{}}}: {} double cosets, |C+| = {}",
            index_list(c.indices()),
            pres.cosets.len(),
            c.plus_degree(alg)
        );
        for (k, block) in pres.cosets.iter().enumerate() {
            let _ = writeln!(
                out,
                "  coset {k}: {{{}}}  degree {}  star {}",
                index_list(block),
                q.degree(k),
                q.star(k)
            );
        }
        match &pres.alphas {
            Some(alphas) => {
                let a: Vec<String> = alphas
                    .iter()
                    .enumerate()
                    .map(|(b, a)| format!("{b}:{a}"))
                    .collect();
                let _ = writeln!(out, "alpha: {}", a.join(" "));
            }
            None => {
                let _ = writeln!(out, "alpha: undefined, C is not normal");
            }
        }
        let _ = writeln!(out, "gamma(i,j,k):");
        for (i, j, k, x) in q.entries() {
            let _ = writeln!(out, "  gamma({i},{j},{k}) = {x}");
        }
    }
    Ok(out)
}

pub fn chartable_report(alg: &TableAlgebra, table: &CharacterTable, tsv: bool) -> String {
    let mut out = String::new();
    if tsv {
        let cols: Vec<String> = (0..alg.dim()).map(|b| format!("b{b}")).collect();
        let _ = writeln!(out, "i\tn\tm\t{}", cols.join("\t"));
        for (i, chi) in table.irreducibles.iter().enumerate() {
            let _ = writeln!(
                out,
                "{i}\t{}\t{}\t{}",
                table.block_dims[i],
                real(table.multiplicities[i]),
                complex_list(&chi.values, "\t")
            );
        }
    } else {
        let sum_sq: usize = table.block_dims.iter().map(|n| n * n).sum();
        let _ = writeln!(
            out,
            "{} irreducible characters, sum n_i^2 = {} = dim A",
            table.len(),
            sum_sq
        );
        for (i, chi) in table.irreducibles.iter().enumerate() {
            let _ = writeln!(
                out,
                "  chi{i}  n={}  m={}  [{}]",
                table.block_dims[i],
                real(table.multiplicities[i]),
                complex_list(&chi.values, " ")
            );
        }
        let r = &table.residuals;
        let _ = writeln!(
            out,
            "residuals: idempotent {:.1e}, Gram off-diagonal {:.1e}, regular trace {:.1e}",
            r.idempotent, r.gram_off_diagonal, r.regular_trace
        );
    }
    out
}

fn product_report(
    alg: &TableAlgebra,
    table: &CharacterTable,
    chi: usize,
    psi: usize,
    tsv: bool,
) -> Result<String> {
    let values = product(
        alg,
        &table.irreducibles[chi].values,
        &table.irreducibles[psi].values,
    );
    let dec = decompose(alg, table, &values)?;
    let mut out = String::new();
    if tsv {
        out.push_str("irreducible\traw\trounded\n");
        for (i, (a, n)) in dec.raw.iter().zip(&dec.rounded).enumerate() {
            let _ = writeln!(out, "{i}\t{}\t{n}", complex(*a));
        }
        let _ = writeln!(out, "values\t{}", complex_list(&values, ","));
        let _ = writeln!(out, "is_character\t{}", yes_no(dec.is_character));
    } else {
        let _ = writeln!(
            out,
            "chi{chi} * chi{psi} = [{}]",
            complex_list(&values, " ")
        );
        let raw: Vec<String> = dec.raw.iter().map(|a| complex(*a)).collect();
        let _ = writeln!(out, "coefficients: {}", raw.join(" "));
        if !dec.in_span {
            let _ = writeln!(
                out,
                "not in the span of Irr(A) (residual {:.1e})",
                dec.residual
            );
        }
        let _ = writeln!(out, "is a character: {}", yes_no(dec.is_character));
    }
    Ok(out)
}

fn bb_report(expr: &str, values: &[Complex64], rep: &BbReport, tsv: bool) -> String {
    let mut out = String::new();
    let verdict = if rep.hypotheses_hold() && rep.verdict {
        "PASS"
    } else if !rep.hypotheses_hold() {
        "NOT APPLICABLE"
    } else {
        "FAIL"
    };
    if tsv {
        out.push_str("irreducible\tfirst_power\n");
        for (j, cov) in rep.coverage.iter().enumerate() {
            let _ = writeln!(
                out,
                "{j}\t{}",
                cov.map(|i| i.to_string()).unwrap_or_else(|| "-".into())
            );
        }
        let _ = writeln!(out, "k\t{}", rep.k);
        let _ = writeln!(out, "kernel_ok\t{}", yes_no(rep.hypothesis_kernel_ok));
        let _ = writeln!(out, "powers_ok\t{}", yes_no(rep.hypothesis_powers_ok));
        let _ = writeln!(out, "verdict\t{verdict}");
        return out;
    }
    let _ = writeln!(
        out,
        "Burnside-Brauer check for chi = {expr}: [{}]",
        complex_list(values, " ")
    );
    let _ = writeln!(
        out,
        "k = {} distinct values of chi(b)/|b|: {}",
        rep.k,
        complex_list(&rep.distinct.values, " ")
    );
    let _ = writeln!(
        out,
        "kernel K(chi) = {{{}}}: {}",
        index_list(&rep.kernel),
        if rep.hypothesis_kernel_ok {
            "trivial"
        } else {
            "NOT trivial"
        }
    );
    let _ = writeln!(
        out,
        "powers 1..k-1 are characters: {}",
        if rep.hypothesis_powers_ok {
            "yes".to_string()
        } else {
            format!("no, fails at {:?}", rep.failed_powers)
        }
    );
    let _ = writeln!(out, "convention: {}", rep.convention);
    for (i, dec) in rep.power_decompositions.iter().enumerate() {
        let raw: Vec<String> = dec.raw.iter().map(|a| complex(*a)).collect();
        let _ = writeln!(
            out,
            "  chi^{i}: [{}]{}",
            raw.join(" "),
            if dec.is_character {
                ""
            } else {
                "  (not a character)"
            }
        );
    }
    let reg: Vec<String> = rep
        .regular_zero_power
        .raw
        .iter()
        .map(|a| complex(*a))
        .collect();
    let _ = writeln!(
        out,
        "  regular character (alternative chi^0): [{}]",
        reg.join(" ")
    );
    let _ = writeln!(out, "coverage:");
    for (j, cov) in rep.coverage.iter().enumerate() {
        match cov {
            Some(i) => {
                let _ = writeln!(out, "  chi{j} <- chi^{i}");
            }
            None => {
                let _ = writeln!(out, "  chi{j} <- none");
            }
        }
    }
    let _ = writeln!(
        out,
        "Vandermonde determinant: {}{}",
        complex(rep.vandermonde),
        if rep.vandermonde_near_zero {
            " (near zero)"
        } else {
            ""
        }
    );
    let _ = writeln!(out, "verdict: {verdict}");
    out
}
