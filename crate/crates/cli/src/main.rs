use clap::{Parser, Subcommand};

use ntop_cli::commands::{self, CliError, EXIT_CHECK_FAILED, EXIT_OK};

/// Exact computation over topological spaces presented by basic dots.
#[derive(Parser)]
#[command(name = "ntop", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an exact arithmetic expression to a dyadic interval.
    ///
    /// Grammar: expr := term (('+'|'-') term)*; term := factor ('*' factor)*;
    /// factor := rational | neg(expr) | min(expr,expr) | max(expr,expr) | (expr).
    Eval {
        /// Expression, e.g. "1/2 + 1/4" or "min(1/3, 1/2) * 3"
        expr: String,
        /// Target precision: the answer has width at most 2^(1-p)
        #[arg(short, long, default_value_t = 16)]
        precision: u32,
        /// Stream pulls allowed per precision level (default 64; NTOP_FUEL overrides)
        #[arg(long)]
        fuel: Option<u64>,
    },
    /// Run the pre-natural axiom suite exhaustively on a space fragment.
    Axioms {
        /// One of: sigmaR, sigma01, binary, ternary, decimal, baire, cantor, product:sigmaR
        space: String,
        /// Fragment depth
        #[arg(long, default_value_t = 6)]
        depth: u32,
        /// Flip one apartness instance to demonstrate failure reporting
        #[arg(long, hide = true)]
        mutate: bool,
    },
    /// Evaluate the staircase function at a rational in [0,1].
    Cantor {
        /// Argument in [0,1], e.g. "1/4"
        x: String,
        /// Target precision: the answer has width at most 2^(1-p)
        #[arg(short, long, default_value_t = 12)]
        precision: u32,
        /// Stream pulls allowed per precision level (default 64; NTOP_FUEL overrides)
        #[arg(long)]
        fuel: Option<u64>,
    },
    /// Call a rational ball IN, OUT or LET against a rational line.
    Hawkeye {
        /// The line position
        line: String,
        /// The measured ball position
        ball: String,
        /// Give up and call LET once the undecided width reaches 2^(-t)
        #[arg(short, long, default_value_t = 12)]
        tolerance: u32,
        /// Stream pulls allowed per tolerance level (default 64; NTOP_FUEL overrides)
        #[arg(long)]
        fuel: Option<u64>,
    },
    /// Build a fann from a metric presentation and report its structure.
    Fann {
        /// Builtin name (unit-interval, point, cantor-set) or a file path
        presentation: String,
        /// Deepest ball level to build
        #[arg(long, default_value_t = 5)]
        max_level: u32,
    },
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Eval {
            expr,
            precision,
            fuel,
        } => {
            print!("{}", commands::cmd_eval(&expr, precision, fuel)?);
            Ok(EXIT_OK)
        }
        Command::Axioms {
            space,
            depth,
            mutate,
        } => {
            let (report, pass) = commands::cmd_axioms(&space, depth, mutate)?;
            print!("{report}");
            Ok(if pass { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        Command::Cantor { x, precision, fuel } => {
            print!("{}", commands::cmd_cantor(&x, precision, fuel)?);
            Ok(EXIT_OK)
        }
        Command::Hawkeye {
            line,
            ball,
            tolerance,
            fuel,
        } => {
            print!("{}", commands::cmd_hawkeye(&line, &ball, tolerance, fuel)?);
            Ok(EXIT_OK)
        }
        Command::Fann {
            presentation,
            max_level,
        } => {
            print!("{}", commands::cmd_fann(&presentation, max_level)?);
            Ok(EXIT_OK)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {}", err.message());
            std::process::exit(err.exit_code());
        }
    }
}
