use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use linkage_core::{CartanKind, Convention};
use linkage_kit::output::ErrorDoc;
use linkage_kit::{
    orbit_guard_from_env, run, CharacterSpec, Command, FieldError, Format, JobSpec, RunOptions, EXIT_VALIDATION,
    ORBIT_GUARD_ENV,
};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ConventionArg {
    Paper,
    Shifted,
}

/// Strong linkage, Verma factor sets and non-criticality obstructions.
///
/// Either pass a job file with `--job` (use `-` for stdin) or describe the job
/// with flags. A job file supersedes flags.
#[derive(Debug, Parser)]
#[command(name = "linkage-kit", version)]
struct Args {
    /// JSON job file, or `-` for stdin.
    #[arg(long)]
    job: Option<String>,

    /// Named type such as `A2`, `B_3xA_1`, or a JSON Cartan matrix.
    #[arg(long)]
    root_system: Option<String>,

    #[arg(long, default_value_t = 1)]
    embeddings: usize,

    /// Comma-separated 1-based simple-root indices.
    #[arg(long, default_value = "")]
    parabolic: String,

    /// Coordinates: comma-separated within an embedding, `;` between
    /// embeddings, e.g. "0,0;1/2,-3".
    #[arg(long, allow_hyphen_values = true)]
    weight: Option<String>,

    /// Label of the smooth part of the character.
    #[arg(long, default_value = "triv")]
    smooth: String,

    #[arg(long, default_value = "omega_pi")]
    pi_tag: String,

    #[arg(long, value_enum, default_value = "paper")]
    convention: ConventionArg,

    /// factors | candidates | obstructions | linkset | dominance | orbit
    #[arg(long)]
    command: Option<String>,

    /// Cross-check against exhaustive chain enumeration.
    #[arg(long)]
    oracle: bool,

    /// Include a witness chain for every member.
    #[arg(long)]
    witnesses: bool,

    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
}

fn job_from_flags(args: &Args) -> Result<JobSpec, FieldError> {
    let missing = |f: &str| FieldError::new(f, "MissingField", format!("--{f} is required without --job"));
    let rs = args.root_system.as_deref().ok_or_else(|| missing("root-system"))?;
    let root_system = if rs.trim_start().starts_with('[') {
        CartanKind::Matrix(
            serde_json::from_str(rs).map_err(|e| FieldError::new("root_system", "InvalidCartan", e.to_string()))?,
        )
    } else {
        CartanKind::Named(rs.to_string())
    };
    let parabolic = args
        .parabolic
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .enumerate()
        .map(|(k, s)| {
            s.parse::<usize>().map_err(|_| {
                FieldError::new(
                    format!("parabolic[{k}]"),
                    "IndexOutOfRange",
                    format!("not an index: {s:?}"),
                )
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let weight = args.weight.as_deref().ok_or_else(|| missing("weight"))?;
    let coordinates = weight
        .split(';')
        .map(|c| c.split(',').map(|x| x.trim().to_string()).collect())
        .collect();
    let command_text = args.command.as_deref().ok_or_else(|| missing("command"))?;
    let command = Command::parse(command_text)
        .ok_or_else(|| FieldError::new("command", "UnknownCommand", format!("unknown command {command_text:?}")))?;
    Ok(JobSpec {
        root_system,
        embeddings: args.embeddings,
        parabolic,
        character: CharacterSpec {
            coordinates,
            smooth_tag: args.smooth.clone(),
        },
        pi_tag: args.pi_tag.clone(),
        convention: match args.convention {
            ConventionArg::Paper => Convention::Paper,
            ConventionArg::Shifted => Convention::Shifted,
        },
        command,
        oracle: args.oracle,
        witnesses: args.witnesses,
    })
}

fn load_job(args: &Args) -> Result<JobSpec, FieldError> {
    let Some(path) = &args.job else {
        return job_from_flags(args);
    };
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| FieldError::new("job", "Io", e.to_string()))?;
        buf
    } else {
        std::fs::read_to_string(path).map_err(|e| FieldError::new("job", "Io", format!("{path}: {e}")))?
    };
    JobSpec::from_json(&text)
}

fn fail(err: &FieldError) -> ExitCode {
    eprintln!("{}", ErrorDoc::from_field(err).to_json());
    ExitCode::from(EXIT_VALIDATION as u8)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let orbit_guard = match orbit_guard_from_env(std::env::var(ORBIT_GUARD_ENV).ok().as_deref()) {
        Ok(g) => g,
        Err(e) => return fail(&e),
    };
    let job = match load_job(&args) {
        Ok(j) => j,
        Err(e) => return fail(&e),
    };
    let opts = RunOptions {
        orbit_guard,
        format: match args.format {
            FormatArg::Json => Format::Json,
            FormatArg::Table => Format::Table,
        },
    };
    let outcome = run(&job, &opts);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.exit_code as u8)
}
