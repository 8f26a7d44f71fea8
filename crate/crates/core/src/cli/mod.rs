//! The `loewy` command-line tool.
//!
//! Exit codes: 0 when every check passes, 1 when any check fails, 2 on
//! input errors, 3 when some check is undecided and none fails.

pub mod spec_file;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::{Algebra, Presentation};
use crate::error::{Error, Result};
use crate::examples::NakayamaParams;
use crate::linalg::PrimeField;
use crate::loewy::{layer, layer_table, LayerTable, SeriesKind};
use crate::modules::{injective, nakayama, projective, regular_module, simple, Module};
use crate::verify::{
    run_corpus, verify, CheckKind, Corpus, Status, VerificationReport, VerifyOptions,
};
use spec_file::AlgebraSpecFile;

pub const SEED_ENV: &str = "LOEWY_SEED";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "loewy",
    version,
    about = "Loewy structures of quiver algebras over prime fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the Loewy diagram of a module.
    Show {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// P<i>, I<i>, S<i> or A (the regular module).
        #[arg(long)]
        module: String,
        #[arg(long, value_enum, default_value_t = Series::Radical)]
        series: Series,
    },
    /// Verify the layer identities on one algebra.
    Verify {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Verify a whole corpus; the built-in one unless a file is given.
    Corpus {
        #[arg(long)]
        file: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Print layer multiplicity tables.
    Table {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, value_enum)]
        kind: TableKind,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
    },
    /// Write the spec file of N_k^l.
    EmitNakayama {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 5)]
        p: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct AlgebraSource {
    /// Algebra spec file (JSON).
    #[arg(long)]
    algebra: Option<PathBuf>,
    /// The Nakayama algebra N_k^l, given as `k,l`.
    #[arg(long, value_name = "K,L")]
    nakayama: Option<String>,
}

#[derive(Debug, Args)]
struct AlgebraArgs {
    #[command(flatten)]
    source: AlgebraSource,
    /// Field characteristic for --nakayama.
    #[arg(long, default_value_t = 5, conflicts_with = "algebra")]
    p: u64,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long, value_enum, default_value_t = CheckArg::All)]
    check: CheckArg,
    /// Defaults to $LOEWY_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = crate::algebra::DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Series {
    Radical,
    Socle,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CheckArg {
    Main,
    Landrock,
    Adjunction,
    Duality,
    NakayamaId,
    Structure,
    All,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableKind {
    Radical,
    Socle,
    Cartan,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableFormat {
    Text,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

impl From<CheckArg> for CheckKind {
    fn from(c: CheckArg) -> Self {
        match c {
            CheckArg::Main => CheckKind::Main,
            CheckArg::Landrock => CheckKind::Landrock,
            CheckArg::Adjunction => CheckKind::Adjunction,
            CheckArg::Duality => CheckKind::Duality,
            CheckArg::NakayamaId => CheckKind::NakayamaId,
            CheckArg::Structure => CheckKind::Structure,
            CheckArg::All => CheckKind::All,
        }
    }
}

impl From<Series> for SeriesKind {
    fn from(s: Series) -> Self {
        match s {
            Series::Radical => SeriesKind::Radical,
            Series::Socle => SeriesKind::Socle,
        }
    }
}

/// Runs the tool on `args` (including the program name) and returns the
/// exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_PASS
            };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn io_err(e: std::io::Error) -> Error {
    Error::SpecFile(e.to_string())
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Show {
            algebra,
            module,
            series,
        } => {
            let a = load_algebra(&algebra)?;
            let m = select_module(&a, &module)?;
            for line in diagram(&m, series.into())? {
                writeln!(out, "{line}").map_err(io_err)?;
            }
            Ok(EXIT_PASS)
        }
        Command::Verify { algebra, run } => {
            let a = load_algebra(&algebra)?;
            let options = run.options()?;
            let report = verify(&a, run.check.into(), &options)?;
            match run.format {
                ReportFormat::Text => write!(out, "{}", render_report(&report)).map_err(io_err)?,
                ReportFormat::Json => writeln!(out, "{}", to_json(&report)).map_err(io_err)?,
            }
            Ok(exit_code(report.status()))
        }
        Command::Corpus { file, run } => {
            let corpus = match file {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| Error::SpecFile(format!("{}: {e}", path.display())))?;
                    Corpus::parse(&text)?
                }
                None => Corpus::standard(),
            };
            let options = run.options()?;
            let report = run_corpus(&corpus, run.check.into(), &options)?;
            match run.format {
                ReportFormat::Text => {
                    for r in &report.reports {
                        write!(out, "{}", render_report(r)).map_err(io_err)?;
                    }
                    writeln!(
                        out,
                        "corpus: {} ({} algebras)",
                        report.status(),
                        report.reports.len()
                    )
                    .map_err(io_err)?;
                }
                ReportFormat::Json => writeln!(out, "{}", to_json(&report)).map_err(io_err)?,
            }
            Ok(exit_code(report.status()))
        }
        Command::Table {
            algebra,
            kind,
            format,
        } => {
            let a = load_algebra(&algebra)?;
            write!(out, "{}", render_table(&a, kind, format)?).map_err(io_err)?;
            Ok(EXIT_PASS)
        }
        Command::EmitNakayama { k, l, p, out: path } => {
            let field = PrimeField::new(p)?;
            let params = NakayamaParams::new(k, l)?;
            AlgebraSpecFile::from_presentation(&params.presentation(field)).write(&path)?;
            Ok(EXIT_PASS)
        }
    }
}

impl RunArgs {
    fn options(&self) -> Result<VerifyOptions> {
        let seed = match self.seed {
            Some(s) => s,
            None => match std::env::var(SEED_ENV) {
                Ok(v) => v.trim().parse().map_err(|_| {
                    Error::InvalidParameter(format!("{SEED_ENV}={v} is not a seed"))
                })?,
                Err(_) => 0,
            },
        };
        Ok(VerifyOptions {
            seed,
            trials: self.trials,
            ..VerifyOptions::default()
        })
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports always serialize")
}

fn exit_code(status: Status) -> i32 {
    match status {
        Status::Pass => EXIT_PASS,
        Status::Fail => EXIT_FAIL,
        Status::Unknown => EXIT_UNKNOWN,
    }
}

fn load_algebra(args: &AlgebraArgs) -> Result<Algebra> {
    presentation(args)?.build()
}

fn presentation(args: &AlgebraArgs) -> Result<Presentation> {
    if let Some(path) = &args.source.algebra {
        return AlgebraSpecFile::read(path)?.to_presentation();
    }
    let text = args.source.nakayama.as_deref().unwrap_or_default();
    let bad = || Error::InvalidParameter(format!("--nakayama expects `k,l`, got `{text}`"));
    let (k, l) = text.split_once(',').ok_or_else(bad)?;
    let k = k.trim().parse().map_err(|_| bad())?;
    let l = l.trim().parse().map_err(|_| bad())?;
    Ok(NakayamaParams::new(k, l)?.presentation(PrimeField::new(args.p)?))
}

/// Parses `P<i>`, `I<i>`, `S<i>` (an underscore after the letter is
/// allowed) or `A`.
pub fn select_module(a: &Algebra, selector: &str) -> Result<Module> {
    let s = selector.trim();
    if s == "A" {
        return Ok(regular_module(a));
    }
    let bad = || {
        Error::InvalidParameter(format!(
            "module selector `{selector}` is not one of P<i>, I<i>, S<i>, A"
        ))
    };
    let mut chars = s.chars();
    let letter = chars.next().ok_or_else(bad)?;
    let rest = chars.as_str();
    let index: usize = rest
        .strip_prefix('_')
        .unwrap_or(rest)
        .parse()
        .map_err(|_| bad())?;
    match letter {
        'P' => projective(a, index),
        'I' => injective(a, index),
        'S' => simple(a, index),
        _ => Err(bad()),
    }
}

/// One line per nonzero layer, cap first for the radical series and the
/// outermost socle layer first for the socle series.
pub fn diagram(v: &Module, kind: SeriesKind) -> Result<Vec<String>> {
    let l = v.algebra().loewy_length();
    let order: Vec<usize> = match kind {
        SeriesKind::Radical => (1..=l).collect(),
        SeriesKind::Socle => (1..=l).rev().collect(),
    };
    let mut lines = Vec::new();
    for n in order {
        let lay = layer(v, kind, n)?;
        if lay.dim() == 0 {
            continue;
        }
        let names: Vec<String> = lay
            .module()
            .dimension_vector()
            .into_iter()
            .enumerate()
            .flat_map(|(j, m)| std::iter::repeat_n(format!("S_{j}"), m))
            .collect();
        lines.push(names.join(" "));
    }
    Ok(lines)
}

fn render_report(r: &VerificationReport) -> String {
    let mut s = format!(
        "algebra: {} (dim {}, Loewy length {})\n",
        r.algebra, r.dim, r.loewy_length
    );
    for c in &r.checks {
        s.push_str(&format!(
            "  {}: {} ({} rows)\n",
            c.name,
            c.status,
            c.evidence.len()
        ));
        for e in c.failures() {
            s.push_str(&format!(
                "    mismatch i={} j={} n={}: {} vs {:?}\n",
                e.i, e.j, e.n, e.lhs, e.rhs
            ));
        }
        for note in &c.notes {
            s.push_str(&format!("    note: {note}\n"));
        }
    }
    s.push_str(&format!("status: {}\n", r.status()));
    s
}

/// Radical tables use the projectives, socle tables the modules `nu P_i`.
fn tables(a: &Algebra, kind: SeriesKind) -> Result<LayerTable> {
    let projectives: Vec<Module> = (0..a.vertex_count())
        .map(|i| projective(a, i))
        .collect::<Result<_>>()?;
    let family = match kind {
        SeriesKind::Radical => projectives,
        SeriesKind::Socle => projectives.iter().map(nakayama).collect::<Result<_>>()?,
    };
    layer_table(&family, kind)
}

fn render_matrix(rows: &[Vec<usize>]) -> String {
    rows.iter()
        .map(|r| r.iter().map(usize::to_string).collect::<Vec<_>>().join(" ") + "\n")
        .collect()
}

fn render_table(a: &Algebra, kind: TableKind, format: TableFormat) -> Result<String> {
    let mut s = String::new();
    match kind {
        TableKind::Cartan => {
            let totals = tables(a, SeriesKind::Radical)?.totals();
            match format {
                TableFormat::Text => s.push_str(&render_matrix(&totals)),
                TableFormat::Csv => {
                    s.push_str("i,j,m\n");
                    for (i, row) in totals.iter().enumerate() {
                        for (j, m) in row.iter().enumerate() {
                            s.push_str(&format!("{i},{j},{m}\n"));
                        }
                    }
                }
            }
        }
        TableKind::Radical | TableKind::Socle => {
            let series = if matches!(kind, TableKind::Radical) {
                SeriesKind::Radical
            } else {
                SeriesKind::Socle
            };
            let t = tables(a, series)?;
            if matches!(format, TableFormat::Csv) {
                s.push_str("n,i,j,m\n");
            }
            for n in 1..=t.loewy_length {
                match format {
                    TableFormat::Text => {
                        if n > 1 {
                            s.push('\n');
                        }
                        s.push_str(&format!("n = {n}\n"));
                        let rows: Vec<Vec<usize>> = (0..t.family_size())
                            .map(|i| (0..t.simple_count()).map(|j| t.get(i, j, n)).collect())
                            .collect();
                        s.push_str(&render_matrix(&rows));
                    }
                    TableFormat::Csv => {
                        for i in 0..t.family_size() {
                            for j in 0..t.simple_count() {
                                s.push_str(&format!("{n},{i},{j},{}\n", t.get(i, j, n)));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(
            std::iter::once("loewy").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn show_projective_and_injective() {
        let (code, out, _) = run(&["show", "--nakayama", "3,2", "--module", "P0"]);
        assert_eq!((code, out.as_str()), (0, "S_0\nS_1\nS_2\n"));
        let (code, out, _) = run(&[
            "show",
            "--nakayama",
            "3,2",
            "--module",
            "I_0",
            "--series",
            "socle",
        ]);
        assert_eq!((code, out.as_str()), (0, "S_1\nS_2\nS_0\n"));
        let (_, out, _) = run(&["show", "--nakayama", "2,1", "--module", "A"]);
        assert_eq!(out, "S_0 S_1\nS_0 S_1\n");
    }

    #[test]
    fn input_errors_exit_2() {
        assert_eq!(run(&["show", "--nakayama", "3,2", "--module", "Q1"]).0, 2);
        assert_eq!(run(&["show", "--nakayama", "3,2", "--module", "P7"]).0, 2);
        assert_eq!(run(&["show", "--nakayama", "3", "--module", "P0"]).0, 2);
        assert_eq!(run(&["show", "--module", "P0"]).0, 2);
        assert_eq!(run(&["verify", "--nakayama", "0,2"]).0, 2);
        assert_eq!(run(&["bogus"]).0, 2);
        let (code, _, err) = run(&["show", "--algebra", "/nonexistent.json", "--module", "A"]);
        assert_eq!(code, 2);
        assert!(err.contains("nonexistent"));
    }

    #[test]
    fn verify_exit_codes() {
        assert_eq!(
            run(&["verify", "--nakayama", "3,2", "--check", "main"]).0,
            0
        );
        assert_eq!(
            run(&["verify", "--nakayama", "3,2", "--check", "landrock"]).0,
            3
        );
        let (code, out, _) = run(&[
            "verify",
            "--nakayama",
            "2,2",
            "--check",
            "main",
            "--format",
            "json",
        ]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["checks"][0]["evidence"].as_array().unwrap().len(), 12);
    }

    #[test]
    fn tables() {
        let (_, out, _) = run(&["table", "--nakayama", "2,3", "--kind", "cartan"]);
        assert_eq!(out, "2 2\n2 2\n");
        let (_, out, _) = run(&["table", "--nakayama", "2,1", "--kind", "radical"]);
        assert_eq!(out, "n = 1\n1 0\n0 1\n\nn = 2\n0 1\n1 0\n");
        let (_, out, _) = run(&[
            "table",
            "--nakayama",
            "1,1",
            "--kind",
            "socle",
            "--format",
            "csv",
        ]);
        assert_eq!(out, "n,i,j,m\n1,0,0,1\n2,0,0,1\n");
    }
}
