//! `burnkh`: Khovanov-type cubes, their Burnside lifts and homology from the
//! command line.
//!
//! Exit status: 0 on success, 1 on malformed input or flags, 2 when a
//! validation or consistency check fails.

mod corpus;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use burnside_core::algebra::json::{complex_to_json, homology_to_json, SCHEMA_VERSION};
use burnside_core::algebra::{homology, GradedChainComplex, RingId};
use burnside_core::cube::json::cube_to_json;
use burnside_core::cube::validate_cube;
use burnside_core::khovanov::kauffman_bracket_oracle;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use input::Subject;

#[derive(Parser)]
#[command(name = "burnkh", version, about = "Burnside cubes and Khovanov homology of braid closures and PD codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check coherence of a Burnside cube (from a diagram or a cube document).
    Validate {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        theory: TheoryArgs,
        /// Print the cube document instead of a summary.
        #[arg(long)]
        emit_cube: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Print the totalized chain complex.
    Totalize {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        theory: TheoryArgs,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Homology of the totalized complex.
    Homology {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        theory: TheoryArgs,
        /// Compute over the prime field F_p instead of the integers.
        #[arg(long, value_name = "P")]
        field: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Graded Euler characteristic in the first auxiliary grading, compared
    /// with the Kauffman bracket state sum for classical diagrams.
    Euler {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        theory: TheoryArgs,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Run the regression checks over a corpus directory.
    Corpus {
        /// Directory holding `diagrams.json` and optionally `cubes/*.json`.
        #[arg(default_value = "fixtures/corpus")]
        dir: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Braid word, PD code or cube document, inline.
    input: Option<String>,
    /// Read the input from a file.
    #[arg(long, short = 'f', conflicts_with = "input")]
    file: Option<PathBuf>,
    /// Read the input as a braid word on this many strands.
    #[arg(long, conflicts_with = "pd")]
    strands: Option<usize>,
    /// Read the input as a PD code.
    #[arg(long)]
    pd: bool,
    /// Allow diagrams with more than 14 crossings.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct TheoryArgs {
    #[arg(long, value_enum, default_value_t = TheoryArg::Classical)]
    theory: TheoryArg,
    /// Quotient the quantum annular cube by r·Z.
    #[arg(long, value_name = "R")]
    quotient: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TheoryArg {
    Classical,
    Annular,
    QuantumAnnular,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

/// A failed run: the message goes to standard error.
pub enum Failure {
    Input(String),
    Validation(String),
    /// A complete report on standard output whose checks did not all pass.
    FailedReport(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Validation(_) | Failure::FailedReport(_) => 2,
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("BURNKH_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Input(format!("BURNKH_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Input(format!("cannot configure {n} threads: {e}")))
}

fn print_json(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn run(cli: Cli) -> Result<String, Failure> {
    configure_threads()?;
    match cli.command {
        Command::Validate { input, theory, emit_cube, format } => {
            let subject = input::load(&input)?;
            let cube = input::burnside_cube(&subject, &theory)?;
            validate_cube(&cube).map_err(|v| Failure::Validation(format!("invalid cube: {v}")))?;
            if emit_cube {
                return Ok(print_json(&cube_to_json(&cube)));
            }
            let orbits: usize = cube.vertices().iter().map(|v| v.len()).sum();
            Ok(match format {
                Format::Json => print_json(&json!({
                    "schemaVersion": SCHEMA_VERSION,
                    "valid": true,
                    "dimension": cube.dim(),
                    "group": cube.group(),
                    "orbits": orbits,
                    "edges": cube.edges().len(),
                    "faces": cube.faces().len(),
                })),
                Format::Table => format!(
                    "valid {}-cube over {}: {} orbits, {} edges, {} faces\n",
                    cube.dim(),
                    cube.group(),
                    orbits,
                    cube.edges().len(),
                    cube.faces().len()
                ),
            })
        }
        Command::Totalize { input, theory, format } => {
            let subject = input::load(&input)?;
            let c = input::complex(&subject, &theory)?;
            Ok(match format {
                Format::Json => print_json(&complex_to_json(&c)),
                Format::Table => output::complex_table(&c),
            })
        }
        Command::Homology { input, theory, field, format } => {
            let subject = input::load(&input)?;
            let mut c = input::complex(&subject, &theory)?;
            if c.ring() == RingId::LaurentIntegers {
                return Err(Failure::Input("homology over Z[q,q^-1] is not computed; pass --quotient R".into()));
            }
            if let Some(p) = field {
                c = over_field(c, p)?;
            }
            let h = homology(&c).map_err(|e| Failure::Validation(e.to_string()))?;
            Ok(match format {
                Format::Json => print_json(&homology_to_json(&h)),
                Format::Table => output::homology_table(&h, &input::aux_names(&subject, &theory, c.aux_arity())),
            })
        }
        Command::Euler { input, theory, format } => {
            let subject = input::load(&input)?;
            let c = input::complex(&subject, &theory)?;
            let chi = c.graded_euler_characteristic(0).map_err(|e| Failure::Input(e.to_string()))?;
            let oracle = match (&subject, theory.theory) {
                (Subject::Diagram { diagram, .. }, TheoryArg::Classical) => {
                    Some(kauffman_bracket_oracle(diagram).map_err(input::khovanov_failure)?)
                }
                _ => None,
            };
            let agrees = oracle.as_ref().is_none_or(|o| *o == chi);
            let text = match format {
                Format::Json => print_json(&json!({
                    "schemaVersion": SCHEMA_VERSION,
                    "euler": chi.to_string(),
                    "bracket": oracle.as_ref().map(ToString::to_string),
                    "agrees": agrees,
                })),
                Format::Table => {
                    let mut s = format!("euler characteristic: {chi}\n");
                    if let Some(o) = &oracle {
                        s += &format!("kauffman bracket:     {o}\n");
                    }
                    s
                }
            };
            if agrees {
                Ok(text)
            } else {
                Err(Failure::Validation(format!("{text}the Euler characteristic differs from the bracket")))
            }
        }
        Command::Corpus { dir, format } => corpus::run(&dir, format == Format::Json),
    }
}

fn over_field(c: GradedChainComplex, p: u64) -> Result<GradedChainComplex, Failure> {
    let field = RingId::prime_field(p).map_err(|e| Failure::Input(e.to_string()))?;
    let c = if c.ring() == RingId::Integers { c } else { c.restrict_to_integers().map_err(|e| Failure::Input(e.to_string()))? };
    c.change_ring(field).map_err(|e| Failure::Input(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            match &f {
                Failure::Input(m) => eprintln!("error: {m}"),
                Failure::Validation(m) => eprintln!("validation failed: {m}"),
                Failure::FailedReport(r) => {
                    print!("{r}");
                    eprintln!("validation failed: some corpus checks did not pass");
                }
            }
            ExitCode::from(f.code())
        }
    }
}
