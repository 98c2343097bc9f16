//! `raviolo`: command-line front end. Exit codes: 0 success, 1 a verification
//! failed, 2 the input was rejected.

mod commands;
mod output;
mod sitespec;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use output::{Failure, Outcome};

#[derive(Parser, Debug)]
#[command(name = "raviolo", version, about = "Exact computations with raviolo vacuum modules and their coinvariants")]
pub struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Rav,
    Classical,
    Both,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Truncated cohomology of the local algebra on the window z^-K .. z^K.
    Cohomology {
        /// Window half-width: powers z^-K .. z^K.
        #[arg(long = "K")]
        k: usize,
        /// Maximal degree in v.
        #[arg(long = "D")]
        d: usize,
    },
    /// The state-field map Y(A; x) B, checked against the explicit formula.
    Statefield {
        /// State A, e.g. "(lower e 1 (dv)) |0>".
        #[arg(long = "A")]
        a: String,
        /// State B.
        #[arg(long = "B")]
        b: String,
        /// Truncation: terms x^k with k < K.
        #[arg(long = "K")]
        k: i32,
        #[arg(long, value_enum, default_value_t = Mode::Rav)]
        mode: Mode,
    },
    /// Test a form on the simplex against the face conditions of A_N.
    Membership {
        /// Form on S_N, e.g. "u[123]/(w-z2)".
        #[arg(long)]
        form: String,
        /// Number of points.
        #[arg(long = "N")]
        n: usize,
    },
    /// Expand a form around w = z_s, exactly below (w - z_s)^K.
    Expand {
        /// Form whose last point is w.
        #[arg(long)]
        form: String,
        /// Site to expand at.
        #[arg(long)]
        s: usize,
        /// Precision in w - z_s.
        #[arg(long = "K")]
        k: i32,
        /// Number of points including w; inferred from the form when absent.
        #[arg(long = "N")]
        n: Option<usize>,
    },
    /// The element Omega_12: closedness, membership, expansions and pullbacks.
    #[command(name = "omega12-demo")]
    Omega12Demo {
        #[arg(long = "K", default_value_t = 4)]
        k: i32,
    },
    /// Reduce a tensor of site vectors to its canonical coinvariant representative.
    Coinvariant {
        /// Site vectors separated by (x): "1", "adj e + 2*adj f", or a state.
        #[arg(long)]
        sitespec: String,
        /// Precision used when expanding the representative.
        #[arg(long = "K")]
        k: i32,
    },
    /// Check the raviolo state-field theorem.
    #[command(name = "verify-theorem")]
    VerifyTheorem {
        /// `far... (x) B (x) A`; without it, seeded cases from the state pool are drawn.
        #[arg(long)]
        sitespec: Option<String>,
        /// Number of seeded pool cases.
        #[arg(long, default_value_t = 20)]
        cases: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Precision in x; 4 for pool cases, 5 for the worked example.
        #[arg(long = "K")]
        k: Option<i32>,
        /// Reproduce the worked example with trivial and adjoint far sites.
        #[arg(long = "demo-worked-example", conflicts_with = "sitespec")]
        demo_worked_example: bool,
    },
    /// Thom-Sullivan and Cech ranks for the raviolo cover, windows 1..=K.
    #[command(name = "thom-sullivan")]
    ThomSullivan {
        /// Largest window.
        #[arg(long = "K")]
        k: usize,
        /// Maximal total degree of forms on simplices.
        #[arg(long = "D", default_value_t = 2)]
        d: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Cohomology { .. } => "cohomology",
            Command::Statefield { .. } => "statefield",
            Command::Membership { .. } => "membership",
            Command::Expand { .. } => "expand",
            Command::Omega12Demo { .. } => "omega12-demo",
            Command::Coinvariant { .. } => "coinvariant",
            Command::VerifyTheorem { .. } => "verify-theorem",
            Command::ThomSullivan { .. } => "thom-sullivan",
        }
    }
}

fn emit(json: bool, command: &str, result: Result<Outcome, Failure>) -> ExitCode {
    match result {
        Ok(out) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&out.document(command)).expect("JSON values serialize"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(f) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&f.document(command)).expect("JSON values serialize"));
            } else {
                eprintln!("error[{}]: {}", f.code(), f.message());
            }
            ExitCode::from(2)
        }
    }
}

fn main() -> ExitCode {
    let json = std::env::args().any(|a| a == "--json");
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) if json => return emit(true, "usage", Err(Failure::Usage(e.kind().to_string()))),
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(2);
        }
    };
    let name = cli.command.name();
    emit(cli.json, name, commands::run(cli.command))
}
