mod render;

/// `println!` that exits quietly when stdout is closed early, e.g. piped into `head`.
macro_rules! out {
    ($($arg:tt)*) => {
        render::put(format_args!($($arg)*))
    };
}

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use equifuse::{
    formulas, CLabel, Error, ExtModularData, GradedLabel, ModularDataD, Tolerance, TypeDRing,
};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "equifuse",
    version,
    about = "Fusion rules and s-matrices for U_q(sl2) and its type-D Z2-equivariant quotient"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone, Copy)]
struct Common {
    /// Even parameter m >= 2; the level is δ = 4m and κ = 4m + 2.
    #[arg(long)]
    m: u32,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a full fusion table.
    Table {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Ring::C)]
        ring: Ring,
    },
    /// Print an s-matrix block with row and column labels.
    Smatrix {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        which: Block,
    },
    /// Evaluate one fusion coefficient and compare it against the fusion ring.
    Coeff {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        i: String,
        #[arg(long, allow_hyphen_values = true)]
        j: String,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        #[arg(long, value_enum, default_value_t = Formula::Oracle)]
        formula: Formula,
    },
    /// Run the full verification suite.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = Tolerance::DEFAULT)]
        tol: f64,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Ring {
    D,
    C,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Block {
    D,
    CEe,
    CEa,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Formula {
    Verlinde,
    ExtE,
    ExtA,
    Oracle,
}

/// One table row: `x ⊗ y = Σ mult·z`.
type TableRow = (String, String, Vec<(String, u32)>);

/// How a command finished, mapped onto the process exit code.
enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn check_m(m: u32) -> Result<(), Error> {
    if m < 2 {
        Err(Error::InvalidParameter(format!(
            "m must be at least 2, got {m}"
        )))
    } else if !m.is_multiple_of(2) {
        Err(Error::UnsupportedCase(format!("m must be even, got {m}")))
    } else {
        Ok(())
    }
}

fn run(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Table { common, ring } => {
            check_m(common.m)?;
            print_table(common, ring)
        }
        Command::Smatrix { common, which } => {
            check_m(common.m)?;
            print_smatrix(common, which)
        }
        Command::Coeff {
            common,
            i,
            j,
            k,
            formula,
        } => {
            check_m(common.m)?;
            print_coeff(common, formula, [&i, &j, &k])
        }
        Command::Verify { common, tol } => {
            check_m(common.m)?;
            let tol = Tolerance::new(tol)?;
            print_verify(common, tol)
        }
    }
}

fn emit(common: Common, tol: f64, results: Value) {
    out!(
        "{}",
        render::document(common.m, 4 * common.m + 2, tol, results)
    );
}

fn join_terms(terms: &[(String, u32)]) -> String {
    terms
        .iter()
        .map(|(z, n)| {
            if *n == 1 {
                z.clone()
            } else {
                format!("{n}{z}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ⊕ ")
}

fn print_table(common: Common, ring: Ring) -> Result<Outcome, Error> {
    let mut rows: Vec<TableRow> = Vec::new();
    match ring {
        Ring::D => {
            let d = ModularDataD::for_m(common.m)?;
            for i in 0..=d.delta() {
                for j in 0..=d.delta() {
                    let mut terms = Vec::new();
                    for k in 0..=d.delta() {
                        let n = d.fusion_coeff_n(i, j, k)?;
                        if n > 0 {
                            terms.push((format!("V{k}"), n));
                        }
                    }
                    rows.push((format!("V{i}"), format!("V{j}"), terms));
                }
            }
        }
        Ring::C => {
            let r = TypeDRing::build(common.m)?;
            for &x in r.labels() {
                for &y in r.labels() {
                    let terms = r
                        .product(x, y)?
                        .into_iter()
                        .map(|(z, n)| (z.to_string(), n))
                        .collect();
                    rows.push((x.to_string(), y.to_string(), terms));
                }
            }
        }
    }
    if common.json {
        let results = rows
            .iter()
            .flat_map(|(x, y, terms)| {
                terms
                    .iter()
                    .map(move |(z, n)| json!({"x": x, "y": y, "z": z, "mult": n}))
            })
            .collect();
        emit(common, Tolerance::DEFAULT, Value::Array(results));
    } else {
        for (x, y, terms) in &rows {
            out!("{x} ⊗ {y} = {}", join_terms(terms));
        }
    }
    Ok(Outcome::Pass)
}

fn print_smatrix(common: Common, which: Block) -> Result<Outcome, Error> {
    let (rows, cols, matrix) = match which {
        Block::D => {
            let d = ModularDataD::for_m(common.m)?;
            let labels: Vec<String> = (0..=d.delta()).map(|i| format!("V{i}")).collect();
            (labels.clone(), labels, d.s_matrix().clone())
        }
        Block::CEe | Block::CEa => {
            let ext = ExtModularData::for_m(common.m, Tolerance::default())?;
            let plain = |l: &[CLabel]| {
                l.iter()
                    .map(|&x| GradedLabel::plain(x).to_string())
                    .collect::<Vec<_>>()
            };
            if which == Block::CEe {
                (
                    plain(ext.ee_labels()),
                    plain(ext.ee_labels()),
                    ext.s_ee().clone(),
                )
            } else {
                let cols = ext
                    .ea_cols()
                    .iter()
                    .map(|&p| GradedLabel::twisted(p).map(|g| g.to_string()))
                    .collect::<Result<Vec<_>, _>>()?;
                (plain(ext.ea_rows()), cols, ext.s_ea().clone())
            }
        }
    };
    if common.json {
        let mut results = Vec::new();
        for (r, row) in rows.iter().enumerate() {
            for (c, col) in cols.iter().enumerate() {
                results.push(json!({"row": row, "col": col, "value": [matrix[(r, c)], 0.0]}));
            }
        }
        emit(common, Tolerance::DEFAULT, Value::Array(results));
    } else {
        out!(
            "{}",
            render::text_matrix(&rows, &cols, |r, c| render::complex_cell(
                matrix[(r, c)],
                0.0
            ))
            .trim_end()
        );
    }
    Ok(Outcome::Pass)
}

fn print_coeff(common: Common, formula: Formula, raw: [&String; 3]) -> Result<Outcome, Error> {
    let tol = Tolerance::default();
    let (labels, value, oracle) = if formula == Formula::Verlinde {
        let d = ModularDataD::for_m(common.m)?;
        let [i, j, k] = raw.map(|s| s.trim().trim_start_matches('V').parse::<u32>());
        let (i, j, k) = match (i, j, k) {
            (Ok(i), Ok(j), Ok(k)) => (i, j, k),
            _ => {
                return Err(Error::InvalidParameter(
                    "verlinde expects integer labels 0..=δ".into(),
                ))
            }
        };
        let value = d.verlinde_sum(i, j, k)?;
        let labels = [i, j, k].map(|x| format!("V{x}"));
        (labels, value, d.fusion_coeff_n(i, j, k)?)
    } else {
        let ext = ExtModularData::for_m(common.m, tol)?;
        let [i, j, k] = [
            CLabel::parse(raw[0])?,
            CLabel::parse(raw[1])?,
            CLabel::parse(raw[2])?,
        ];
        for x in [i, j, k] {
            ext.ring().index(x)?;
        }
        let oracle = ext.ring().ring_coeff_l(i, j, k)?;
        let value = match formula {
            Formula::ExtE => formulas::ext_coeff_e(&ext, i, j, k)?,
            Formula::ExtA => formulas::ext_coeff_a(&ext, i, j, k)?,
            _ => f64::from(oracle),
        };
        ([i, j, k].map(|x| x.to_string()), value, oracle)
    };
    let residual = (value - f64::from(oracle)).abs();
    let passed = residual < tol.eps();
    let name = match formula {
        Formula::Verlinde => "verlinde",
        Formula::ExtE => "ext-e",
        Formula::ExtA => "ext-a",
        Formula::Oracle => "oracle",
    };
    if common.json {
        let result = json!({
            "formula": name,
            "i": labels[0], "j": labels[1], "k": labels[2],
            "value": value, "oracle": oracle, "residual": residual, "passed": passed,
        });
        emit(common, tol.eps(), Value::Array(vec![result]));
    } else {
        let status = if passed { "PASS" } else { "FAIL" };
        out!(
            "{name} coefficient of {} in {} ⊗ {}: {:.12} (ring {oracle}, residual {residual:.1e}) {status}",
            labels[2], labels[0], labels[1], render::round_sig(value) + 0.0
        );
    }
    Ok(if passed { Outcome::Pass } else { Outcome::Fail })
}

fn print_verify(common: Common, tol: Tolerance) -> Result<Outcome, Error> {
    let report = formulas::verify_all(common.m, tol)?;
    if common.json {
        let results = serde_json::to_value(&report.checks).expect("report serializes");
        emit(common, tol.eps(), results);
    } else {
        for c in &report.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let note = c
                .note
                .as_deref()
                .map(|n| format!("  ({n})"))
                .unwrap_or_default();
            out!(
                "{status}  {:<28} {:<24} residual {:.3e}{note}",
                c.name,
                c.params,
                c.max_residual
            );
        }
        let failed = report.failures().count();
        out!(
            "{} checks, {failed} failed, tolerance {:e}",
            report.checks.len(),
            tol.eps()
        );
    }
    Ok(if report.all_passed() {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}
