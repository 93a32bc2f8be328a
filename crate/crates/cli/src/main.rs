use std::path::PathBuf;
use std::process::ExitCode;

use alcove_kl::{CartanType, Error};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

mod cache;
mod commands;
mod render;
mod session;
mod verify;

use render::Format;

#[derive(Parser)]
#[command(name = "alcove-kl", version, about = "Periodic Kazhdan-Lusztig polynomials and modular category O tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Common {
    /// Cartan type (A, B, C, D, E, F or G).
    #[arg(long = "type", value_name = "TYPE")]
    pub cartan_type: CartanType,
    #[arg(long)]
    pub rank: usize,
    /// Characteristic; a prime greater than the Coxeter number. Defaults to the smallest such prime.
    #[arg(long)]
    pub p: Option<u64>,
    /// Window radius for the periodic module. Defaults to the exact support radius.
    #[arg(long)]
    pub window: Option<usize>,
    /// Length bound for enumerated targets.
    #[arg(long, default_value_t = 4)]
    pub lmax: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, env = "ALCOVE_KL_CACHE")]
    pub cache_dir: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, hide = true)]
    pub flip_up: bool,
    #[arg(long, hide = true)]
    pub no_cache: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Kazhdan-Lusztig basis elements of the affine Hecke algebra.
    Kl {
        #[command(flatten)]
        common: Common,
        /// Affine word, e.g. s1s2s1 or 1,2,1.
        #[arg(long)]
        w: Option<String>,
    },
    /// Canonical basis of the spherical module, for maximal coset representatives.
    Spherical {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        w: Option<String>,
    },
    /// Periodic Kazhdan-Lusztig polynomials.
    Periodic {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        w: Option<String>,
    },
    /// Graded Ext dimensions from simples to costandard modules.
    Ext {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        w: Option<String>,
        #[arg(long)]
        y: Option<String>,
    },
    /// Loewy layers of baby Verma modules.
    Loewy {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        w: Option<String>,
    },
    /// Weight multiplicities of Z, Delta or Nabla.
    Char {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = commands::CharModule::Z)]
        module: commands::CharModule,
        /// Highest weight in fundamental coordinates, e.g. 0 or 1,0.
        #[arg(long, default_value = "0")]
        lambda: String,
        #[arg(long)]
        mu: Option<String>,
    },
    /// Run the identity suite at the configured bounds.
    Verify {
        #[command(flatten)]
        common: Common,
    },
}

/// Raised when the identity suite fails; maps to exit code 4.
#[derive(Debug)]
pub struct IdentityFailure(pub serde_json::Value);

impl std::fmt::Display for IdentityFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "identity suite failed")
    }
}

impl std::error::Error for IdentityFailure {}

fn run(cli: Cli) -> anyhow::Result<String> {
    match cli.command {
        Command::Kl { common, w } => commands::kl(&common, w.as_deref()),
        Command::Spherical { common, w } => commands::spherical(&common, w.as_deref()),
        Command::Periodic { common, w } => commands::periodic(&common, w.as_deref()),
        Command::Ext { common, w, y } => commands::ext(&common, w.as_deref(), y.as_deref()),
        Command::Loewy { common, w } => commands::loewy(&common, w.as_deref()),
        Command::Char {
            common,
            module,
            lambda,
            mu,
        } => commands::character(&common, module, &lambda, mu.as_deref()),
        Command::Verify { common } => verify::run(&common),
    }
}

fn report(err: &anyhow::Error) -> (u8, serde_json::Value) {
    if let Some(f) = err.downcast_ref::<IdentityFailure>() {
        return (4, json!({"error": "identity", "message": err.to_string(), "report": f.0}));
    }
    let (code, kind) = match err.downcast_ref::<Error>() {
        Some(Error::Config(_) | Error::Domain(_)) => (2, "config"),
        Some(Error::Stabilization(_)) => (3, "stabilization"),
        Some(Error::Consistency(_)) => (4, "consistency"),
        Some(Error::Resource(_)) => (1, "resource"),
        Some(Error::Indeterminate(_)) => (1, "indeterminate"),
        Some(Error::SearchFailure(_)) => (1, "search"),
        None => (1, "io"),
    };
    (code, json!({"error": kind, "message": format!("{err:#}")}))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            let (code, body) = report(&e);
            if let Some(f) = e.downcast_ref::<IdentityFailure>() {
                // The report goes to stdout as well, so a pipe still sees it.
                print!("{}", render::json(&f.0).unwrap_or_default());
            }
            eprintln!("{body}");
            ExitCode::from(code)
        }
    }
}
