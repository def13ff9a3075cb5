use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod cli;

#[derive(Parser, Debug)]
#[command(name = "dq", version, about = "Exact deformation-quantization uncertainty checks")]
struct Cli {
    /// Relative working precision for non-terminating quotients and roots.
    #[arg(long, global = true, env = "DQ_DEFAULT_ORDER", default_value_t = 8, value_parser = clap::value_parser!(i64).range(1..))]
    order: i64,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Series arithmetic.
    Field {
        #[command(subcommand)]
        action: FieldAction,
    },
    /// Moyal star product and brackets of two observables.
    Star {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        /// Degrees of freedom; inferred from the largest index when omitted.
        #[arg(long)]
        d: Option<usize>,
    },
    /// Run every uncertainty relation for a state and observables.
    Check(StateArgs),
    /// Detect intelligent states and ideal directions.
    Intelligent {
        #[command(flatten)]
        state: StateArgs,
        /// Squeeze block `u` as rows separated by ';' and entries by ','.
        #[arg(long, requires = "v", allow_hyphen_values = true)]
        u: Option<String>,
        /// Squeeze block `v`, same layout as `u`.
        #[arg(long, requires = "u", allow_hyphen_values = true)]
        v: Option<String>,
    },
    /// Randomised property suites.
    Proptest {
        suite: dq_core::suites::Suite,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated dimensions.
        #[arg(long, value_delimiter = ',')]
        dims: Option<Vec<usize>>,
    },
}

#[derive(Subcommand, Debug)]
enum FieldAction {
    /// Evaluate an arithmetic expression over series.
    Eval { expr: String },
}

#[derive(Args, Debug)]
struct StateArgs {
    /// `ground`, `ground(d)`, `squeezed(s)`, `correlated(c)` or a JSON file.
    #[arg(long)]
    state: String,
    /// Observable expression; repeat for several.
    #[arg(long = "obs", required = true, allow_hyphen_values = true)]
    obs: Vec<String>,
}

fn main() -> ExitCode {
    let args = match Cli::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(cli::EXIT_INPUT) } else { ExitCode::SUCCESS };
        }
    };
    dq_core::series::set_default_order(args.order);
    let out = match args.command {
        Command::Field { action: FieldAction::Eval { expr } } => cli::field_eval(&expr, args.json),
        Command::Star { f, g, d } => cli::star(&f, &g, d, args.json),
        Command::Check(s) => cli::check(&s.state, &s.obs, args.json),
        Command::Intelligent { state, u, v } => {
            cli::intelligent(&state.state, &state.obs, u.as_deref().zip(v.as_deref()), args.json)
        }
        Command::Proptest { suite, trials, seed, dims } => cli::proptest(suite, trials, seed, dims, args.json),
    };
    match out {
        Ok(outcome) => {
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            print!("{}", outcome.stdout);
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::error_code(&e))
        }
    }
}
