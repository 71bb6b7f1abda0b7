mod cache;
mod commands;
mod error;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Duration;

use clap::{ArgAction, Args, FromArgMatches};
use mlsing_core::groebner::{Budget, Engine};
use mlsing_core::polyring::{FieldSpec, PrimeField, Rationals, DEFAULT_PRIME};
use mlsing_core::textio::{IdealDoc, ModelFile};

use cache::DiskCache;
use commands::{Input, Output, Registry, Run};
use error::CliError;

/// Flags shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct Options {
    /// Model file, or a JSON ideal document for gb/eliminate/saturate/--raw.
    pub input: PathBuf,

    /// Coefficient field: q or fp[:prime].
    #[arg(long)]
    pub field: Option<String>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Number of consecutive seeds the ML degree must agree on.
    #[arg(long, default_value_t = 2)]
    pub ml_checks: usize,

    #[arg(long, default_value_t = 600)]
    pub budget_seconds: u64,

    #[arg(long, default_value_t = 20_000_000)]
    pub max_pairs: u64,

    #[arg(long, default_value_t = 5_000_000)]
    pub max_terms: usize,

    #[arg(long)]
    pub json: bool,

    #[arg(long, env = "GBCACHE_DIR", default_value = ".gbcache")]
    pub cache_dir: PathBuf,

    #[arg(long)]
    pub no_cache: bool,

    #[arg(short, long, action = ArgAction::Count)]
    pub verbose: u8,

    /// Recompute the data singular locus over q and compare modulo the prime.
    #[arg(long)]
    pub verify_q: bool,

    /// Variables to eliminate (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub vars: Vec<String>,

    /// Polynomial to saturate by; repeat for an ideal.
    #[arg(long)]
    pub by: Vec<String>,

    /// Order for gb: grevlex, lex or elim:<k>.
    #[arg(long, default_value = "grevlex")]
    pub order: String,

    /// Treat the input as a plain projective variety (ideal document).
    #[arg(long)]
    pub raw: bool,

    /// Second factor for hadamard: dual or point.
    #[arg(long, default_value = "dual")]
    pub with: String,
}

fn cli(registry: &Registry) -> clap::Command {
    let mut cmd = clap::Command::new("mlsing")
        .about("Groebner-basis toolkit for the maximum-likelihood data singular locus")
        .version(env!("CARGO_PKG_VERSION"))
        .subcommand_required(true)
        .arg_required_else_help(true);
    for c in registry.iter() {
        cmd = cmd.subcommand(
            Options::augment_args(clap::Command::new(c.name())).about(c.summary()),
        );
    }
    cmd
}

fn load_input(opts: &Options) -> Result<Input, CliError> {
    let text = std::fs::read_to_string(&opts.input)
        .map_err(|e| CliError::Input(format!("{}: {e}", opts.input.display())))?;
    let path = opts.input.display().to_string();
    if text.trim_start().starts_with('{') {
        IdealDoc::from_json(&text)
            .map(Input::Ideal)
            .map_err(|source| CliError::Parse { path, source })
    } else {
        ModelFile::parse(&text)
            .map(Input::Model)
            .map_err(|source| CliError::Parse { path, source })
    }
}

fn resolve_field(opts: &Options, input: &Input) -> Result<FieldSpec, CliError> {
    let src = opts.field.clone().or_else(|| input.field_hint());
    match src {
        None => Ok(FieldSpec::Prime(DEFAULT_PRIME)),
        Some(s) => FieldSpec::parse(&s)
            .ok_or_else(|| CliError::Input(format!("unknown field '{s}' (use q or fp[:prime])"))),
    }
}

fn execute(registry: &Registry, name: &str, opts: &Options) -> Result<(Output, Arc<Engine>), CliError> {
    let command = registry
        .get(name)
        .ok_or_else(|| CliError::Input(format!("unknown command {name}")))?;
    if opts.budget_seconds == 0 || opts.max_pairs == 0 || opts.max_terms == 0 {
        return Err(CliError::Input("budgets must be positive".into()));
    }
    let input = load_input(opts)?;
    let field = resolve_field(opts, &input)?;
    let mut engine = Engine::new(Budget {
        max_pairs: opts.max_pairs,
        max_terms: opts.max_terms,
        wall: Some(Duration::from_secs(opts.budget_seconds)),
    });
    if !opts.no_cache {
        engine = engine.with_cache(Arc::new(DiskCache::new(opts.cache_dir.clone())));
    }
    let engine = Arc::new(engine);
    let out = match field {
        FieldSpec::Rational => command.execute_q(&Run {
            field: Rationals,
            opts,
            input: &input,
            engine: engine.clone(),
        })?,
        FieldSpec::Prime(p) => {
            let field = PrimeField::new(p).map_err(CliError::Input)?;
            command.execute_fp(&Run {
                field,
                opts,
                input: &input,
                engine: engine.clone(),
            })?
        }
    };
    Ok((out, engine))
}

fn main() -> ExitCode {
    let registry = Registry::builtin();
    let matches = cli(&registry).get_matches();
    let Some((name, sub)) = matches.subcommand() else {
        return ExitCode::from(error::EXIT_INPUT as u8);
    };
    let opts = match Options::from_arg_matches(sub) {
        Ok(o) => o,
        Err(e) => e.exit(),
    };
    let level = match opts.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .format_timestamp(None)
        .init();

    match execute(&registry, name, &opts) {
        Ok((out, engine)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.stdout.as_bytes());
            let _ = stdout.flush();
            for n in &out.notes {
                eprintln!("note: {n}");
            }
            if opts.verbose > 0 {
                eprintln!(
                    "cache: {} hits, {} misses; elapsed {:.2?}",
                    engine.cache_hits(),
                    engine.cache_misses(),
                    engine.elapsed()
                );
            }
            ExitCode::from(error::EXIT_OK as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
