//! Job runner behind the `linkage-kit` binary.
//!
//! A job names a root system, a number of embeddings, a parabolic, a character
//! and a command; [`run`] executes it and returns the output document along
//! with the process exit code.

pub mod job;
pub mod output;

use std::collections::BTreeSet;

use linkage_core::oracle::{dot_orbit, stabilized_linkage};
use linkage_core::{rational, Error, Linkage, LinkageResult, WeightL, DEFAULT_ORBIT_GUARD};

pub use job::{CharacterSpec, Command, FieldError, JobSpec, PreparedJob};
use output::{
    factor_set_doc, obstructions_doc, render_table, weights_doc, Document, DominanceDoc, ErrorDoc, OracleDoc, OrbitDoc,
    ResultDoc, RootDominanceDoc,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_ORACLE: i32 = 4;

pub const ORBIT_GUARD_ENV: &str = "LINKAGE_ORBIT_GUARD";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub orbit_guard: usize,
    pub format: Format,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            orbit_guard: DEFAULT_ORBIT_GUARD,
            format: Format::Json,
        }
    }
}

/// What a run writes and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn failure(exit_code: i32, err: ErrorDoc) -> Self {
        Self {
            exit_code,
            stdout: String::new(),
            stderr: err.to_json() + "\n",
        }
    }
}

fn library_failure(err: &Error) -> Outcome {
    let (code, name) = match err {
        Error::OrbitGuardExceeded { .. } => (EXIT_GUARD, "OrbitGuardExceeded"),
        Error::GroupTooLarge { .. } => (EXIT_GUARD, "GroupTooLarge"),
        Error::NotParabolicDominant { .. } => (EXIT_VALIDATION, "NotParabolicDominant"),
        Error::InvalidCartan(_) => (EXIT_VALIDATION, "InvalidCartan"),
        Error::RankMismatch { .. } => (EXIT_VALIDATION, "RankMismatch"),
        Error::IndexOutOfRange { .. } => (EXIT_VALIDATION, "IndexOutOfRange"),
        Error::ContextMismatch(_) => (EXIT_VALIDATION, "ContextMismatch"),
        Error::NotIntegral { .. } => (EXIT_VALIDATION, "NotIntegral"),
        Error::InvalidConfig(_) => (EXIT_VALIDATION, "InvalidConfig"),
        Error::ParseRational { .. } => (EXIT_VALIDATION, "ParseRational"),
    };
    let field = match err {
        Error::NotParabolicDominant { .. } => Some("character.coordinates".to_string()),
        _ => None,
    };
    Outcome::failure(code, ErrorDoc::new(name, field, err.to_string()))
}

/// Parses a job document and runs it.
pub fn run_json(text: &str, opts: &RunOptions) -> Outcome {
    match JobSpec::from_json(text) {
        Ok(job) => run(&job, opts),
        Err(e) => Outcome::failure(EXIT_VALIDATION, ErrorDoc::from_field(&e)),
    }
}

pub fn run(job: &JobSpec, opts: &RunOptions) -> Outcome {
    let normalized = match job.normalized() {
        Ok(n) => n,
        Err(e) => return Outcome::failure(EXIT_VALIDATION, ErrorDoc::from_field(&e)),
    };
    let prepared = normalized.prepare().expect("normalized jobs prepare");
    match execute(normalized, &prepared, opts) {
        Ok(doc) => finish(&doc, opts.format),
        Err(e) => library_failure(&e),
    }
}

/// Renders a finished document; a disagreeing oracle turns it into exit 4.
fn finish(doc: &Document, format: Format) -> Outcome {
    let stdout = match format {
        Format::Json => serde_json::to_string_pretty(doc).expect("documents serialize") + "\n",
        Format::Table => render_table(doc),
    };
    if doc.oracle.as_ref().is_some_and(|o| !o.agrees) {
        let err = ErrorDoc::new(
            "OracleDisagreement",
            None,
            "breadth-first linkage set differs from exhaustive chain enumeration",
        );
        Outcome {
            exit_code: EXIT_ORACLE,
            stdout,
            stderr: err.to_json() + "\n",
        }
    } else {
        Outcome {
            exit_code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }
}

fn execute(job: JobSpec, p: &PreparedJob, opts: &RunOptions) -> linkage_core::Result<Document> {
    let ctx = &p.ctx;
    let chi = &p.character;
    let linkage = Linkage::new(ctx, job.convention).with_orbit_guard(opts.orbit_guard);
    let mut linked: Option<LinkageResult> = None;

    let result = match job.command {
        Command::Linkset => {
            let r = linkage.strongly_linked_set(chi)?;
            let doc = ResultDoc::LinkageSet(factor_set_doc(ctx, &r, job.witnesses));
            linked = Some(r);
            doc
        }
        Command::Factors => {
            let r = linkage.verma_factors_borel(chi)?;
            let doc = ResultDoc::BorelFactors(factor_set_doc(ctx, &r, job.witnesses));
            linked = Some(r);
            doc
        }
        Command::Candidates => {
            let r = linkage.verma_factor_candidates(chi, &p.parabolic)?;
            ResultDoc::ParabolicCandidates(factor_set_doc(ctx, &r, job.witnesses))
        }
        Command::Obstructions => {
            let obstructions = linkage.noncritical_obstruction_set(chi, &p.parabolic, &job.pi_tag)?;
            let r = linkage.strongly_linked_set(chi)?;
            let doc = ResultDoc::Obstructions(obstructions_doc(ctx, &obstructions, &r, job.witnesses));
            linked = Some(r);
            doc
        }
        Command::Dominance => {
            let mut roots = Vec::with_capacity(ctx.num_global_roots());
            for r in ctx.global_roots() {
                let pairing = ctx.global_pairing(&chi.algebraic, r)?;
                roots.push(RootDominanceDoc {
                    sigma: r.sigma,
                    root: ctx.base().positive_roots()[r.root_index].clone(),
                    shifted_pairing: rational::format(&ctx.shifted_pairing(&chi.algebraic, r)?),
                    integral: rational::is_integer(&pairing),
                    pairing: rational::format(&pairing),
                    dominant: ctx.is_alpha_dominant(chi, r, job.convention)?,
                });
            }
            ResultDoc::Dominance(DominanceDoc {
                convention: job.convention.to_string(),
                in_lambda_p_plus: p.parabolic.in_lambda_p_plus(ctx, &chi.algebraic)?,
                roots,
            })
        }
        Command::Orbit => {
            let orbit = dot_orbit(ctx, &chi.algebraic, opts.orbit_guard)?;
            ResultDoc::Orbit(OrbitDoc {
                count: orbit.len(),
                weights: weights_doc(&orbit),
            })
        }
    };

    let oracle = if job.oracle {
        let production = match linked {
            Some(r) => r,
            None => linkage.strongly_linked_set(chi)?,
        };
        let production_set = production.algebraic_set();
        let (reference, depth) = stabilized_linkage(ctx, chi, job.convention)?;
        let tags_ok = reference.iter().all(|c| c.smooth_tag == chi.smooth_tag)
            && production.characters().all(|c| c.smooth_tag == chi.smooth_tag);
        let reference_set: BTreeSet<WeightL> = reference.into_iter().map(|c| c.algebraic).collect();
        Some(OracleDoc {
            agrees: tags_ok && reference_set == production_set,
            production_count: production_set.len(),
            oracle_count: reference_set.len(),
            stabilized_depth: depth,
            missing_from_production: weights_doc(reference_set.difference(&production_set)),
            extra_in_production: weights_doc(production_set.difference(&reference_set)),
        })
    } else {
        None
    };

    Ok(Document {
        schema: output::SCHEMA,
        input: job,
        result,
        oracle,
    })
}

/// Reads the visited-state cap from the environment value, if set.
pub fn orbit_guard_from_env(value: Option<&str>) -> Result<usize, FieldError> {
    match value {
        None => Ok(DEFAULT_ORBIT_GUARD),
        Some(v) => v.trim().parse::<usize>().ok().filter(|&n| n > 0).ok_or_else(|| {
            FieldError::new(
                ORBIT_GUARD_ENV,
                "InvalidConfig",
                format!("expected a positive integer, got {v:?}"),
            )
        }),
    }
}
