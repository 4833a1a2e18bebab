//! Command-line driver. `run` parses arguments, executes one subcommand and
//! returns the exit code together with the rendered report.

mod commands;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::euler_darboux::EdError;
use crate::expr_io::ParseError;
use crate::jet::{Chart, JetError, Limits};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

/// Exit code and rendered output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "jetcalc",
    version,
    about = "Exact symmetry computations for the Euler-Darboux equations"
)]
pub struct Cli {
    /// Emit a JSON report on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Largest jet order any computation may reach.
    #[arg(long, global = true, default_value_t = 16)]
    max_order: u32,
    /// Largest total degree allowed in a coefficient.
    #[arg(long, global = true, default_value_t = 64)]
    max_degree: u32,
    /// Run independent verifications on several threads.
    #[arg(long, global = true)]
    parallel: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Test whether generating sections are symmetries of an equation.
    Verify(VerifyArgs),
    /// Map an expression or operator between the hyperbolic and elliptic charts.
    Transform(TransformArgs),
    /// Print a prolongation block, its inverse and the block identities.
    Blocks(BlocksArgs),
    /// Build the operators of the hierarchy, their restricted images and relations.
    Hierarchy(HierarchyArgs),
    /// Jacobi bracket of two sections and its symmetry verdict.
    Bracket(BracketArgs),
    /// List or show built-in objects.
    Catalog(CatalogArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EqName {
    Elliptic,
    Hyperbolic,
    Intermediate,
}

impl EqName {
    fn chart(self) -> Chart {
        match self {
            EqName::Elliptic => Chart::Elliptic,
            EqName::Hyperbolic => Chart::Hyperbolic,
            EqName::Intermediate => Chart::Intermediate,
        }
    }
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("input").required(true).args(["expr", "name", "file", "all"])))]
struct VerifyArgs {
    #[arg(long, value_enum)]
    eq: EqName,
    /// Section in the text grammar, e.g. "-1*u[1,0] + u[0,1]".
    #[arg(long)]
    expr: Option<String>,
    /// Catalog entry; may be repeated.
    #[arg(long)]
    name: Vec<String>,
    /// JSON document holding an expression.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Every catalog section listed as a symmetry of this equation.
    #[arg(long)]
    all: bool,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("map").required(true).args(["theta", "theta_prime", "psi", "psi_prime", "pullback", "pushforward"])))]
#[command(group(ArgGroup::new("input").required(true).args(["expr", "name", "file"])))]
struct TransformArgs {
    /// Hyperbolic section to elliptic section.
    #[arg(long)]
    theta: bool,
    /// Elliptic section to hyperbolic section.
    #[arg(long)]
    theta_prime: bool,
    /// Hyperbolic operator to elliptic operator.
    #[arg(long)]
    psi: bool,
    /// Elliptic operator to hyperbolic operator.
    #[arg(long)]
    psi_prime: bool,
    /// Complex pullback of a hyperbolic section.
    #[arg(long)]
    pullback: bool,
    /// Inverse of the pullback.
    #[arg(long)]
    pushforward: bool,
    #[arg(long)]
    expr: Option<String>,
    #[arg(long)]
    name: Option<String>,
    #[arg(long)]
    file: Option<PathBuf>,
    /// Use the unscaled composition of the two base changes.
    #[arg(long)]
    literal: bool,
    /// Restrict section output to the target equation.
    #[arg(long)]
    restrict: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MapName {
    Canonical,
    Ed,
    EdLiteral,
    G,
}

#[derive(Args, Debug)]
struct BlocksArgs {
    #[arg(long)]
    k: u32,
    #[arg(long, value_enum, default_value = "canonical")]
    map: MapName,
}

#[derive(Args, Debug)]
struct HierarchyArgs {
    #[arg(long)]
    m: u32,
    /// Last bracket count shown; defaults to 2m+1.
    #[arg(long)]
    max_j: Option<u32>,
    /// Also check the commutator relations.
    #[arg(long)]
    relations: bool,
    #[arg(long, value_enum, default_value = "elliptic")]
    eq: EqName,
}

#[derive(Args, Debug)]
struct BracketArgs {
    /// Section text or catalog name.
    #[arg(long)]
    a: String,
    /// Section text or catalog name.
    #[arg(long)]
    b: String,
    #[arg(long, value_enum)]
    eq: EqName,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("what").args(["list", "name"])))]
struct CatalogArgs {
    #[arg(long)]
    list: bool,
    #[arg(long)]
    name: Option<String>,
}

/// Failure of a command, classified by exit code.
#[derive(Debug)]
pub(crate) enum CliError {
    Usage(String),
    Parse { err: ParseError, text: String },
    Limit(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Limit(_) => EXIT_LIMIT,
            _ => EXIT_USAGE,
        }
    }

    fn render(&self) -> String {
        match self {
            CliError::Usage(m) => format!("error: {m}"),
            CliError::Limit(m) => format!("limit exceeded: {m}"),
            CliError::Parse { err, text } => format!("error: {}", err.render(text)),
        }
    }

    fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({
            "error": match self {
                CliError::Limit(_) => "limit",
                CliError::Parse { .. } => "parse",
                CliError::Usage(_) => "usage",
            },
        });
        match self {
            CliError::Usage(m) | CliError::Limit(m) => v["message"] = m.clone().into(),
            CliError::Parse { err, .. } => {
                v["message"] = err.message.clone().into();
                v["kind"] = err.kind.to_string().into();
                v["span"] = serde_json::to_value(&err.span).expect("plain struct");
            }
        }
        v
    }
}

impl From<EdError> for CliError {
    fn from(e: EdError) -> Self {
        if e.is_limit() {
            return CliError::Limit(e.to_string());
        }
        match e {
            EdError::Parse(err) => CliError::Parse {
                text: String::new(),
                err,
            },
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<JetError> for CliError {
    fn from(e: JetError) -> Self {
        EdError::Jet(e).into()
    }
}

pub(crate) struct Ctx {
    json: bool,
    parallel: bool,
    limits: Limits,
}

/// Report of a successful run: the exit code and either form of output.
pub(crate) struct Report {
    code: i32,
    text: String,
    json: serde_json::Value,
}

/// Parses `argv` (program name first) and executes the command.
pub fn run<I, T>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if code == EXIT_OK {
                CommandOutcome {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            } else {
                CommandOutcome {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    let ctx = Ctx {
        json: cli.json,
        parallel: cli.parallel,
        limits: Limits {
            max_order: cli.max_order,
            max_degree: cli.max_degree,
        },
    };
    let result = match &cli.command {
        Command::Verify(a) => commands::verify(&ctx, a),
        Command::Transform(a) => commands::transform(&ctx, a),
        Command::Blocks(a) => commands::blocks(&ctx, a),
        Command::Hierarchy(a) => commands::hierarchy(&ctx, a),
        Command::Bracket(a) => commands::bracket(&ctx, a),
        Command::Catalog(a) => commands::catalog(&ctx, a),
    };
    match result {
        Ok(r) => CommandOutcome {
            code: r.code,
            stdout: if ctx.json {
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&r.json).expect("plain document")
                )
            } else {
                r.text
            },
            stderr: String::new(),
        },
        Err(e) if ctx.json => CommandOutcome {
            code: e.code(),
            stdout: format!(
                "{}\n",
                serde_json::to_string_pretty(&e.to_json()).expect("plain document")
            ),
            stderr: format!("{}\n", e.render()),
        },
        Err(e) => CommandOutcome {
            code: e.code(),
            stdout: String::new(),
            stderr: format!("{}\n", e.render()),
        },
    }
}
