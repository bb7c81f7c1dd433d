//! Output documents. JSON is the contract; the table form is for reading.

use std::fmt::Write as _;

use linkage_core::{rational, CentralKey, EmbeddingContext, LinkageChain, LinkageResult, Obstruction, WeightL};
use serde::Serialize;

use crate::job::{FieldError, JobSpec};

pub const SCHEMA: &str = "linkage-kit/1";

#[derive(Debug, Serialize)]
pub struct Document {
    pub schema: &'static str,
    pub input: JobSpec,
    pub result: ResultDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleDoc>,
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResultDoc {
    LinkageSet(FactorSetDoc),
    BorelFactors(FactorSetDoc),
    ParabolicCandidates(FactorSetDoc),
    Obstructions(ObstructionsDoc),
    Dominance(DominanceDoc),
    Orbit(OrbitDoc),
}

#[derive(Debug, Serialize)]
pub struct FactorSetDoc {
    pub convention: String,
    /// Set when the members only bound the true factor set from above.
    pub upper_bound: bool,
    pub count: usize,
    pub members: Vec<MemberDoc>,
}

#[derive(Debug, Serialize)]
pub struct MemberDoc {
    pub weight: Vec<Vec<String>>,
    pub smooth_tag: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<StepDoc>>,
}

#[derive(Debug, Serialize)]
pub struct StepDoc {
    /// 0-based embedding index.
    pub sigma: usize,
    /// Root as coefficients over the simple roots.
    pub root: Vec<i64>,
    pub weight: Vec<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct ObstructionsDoc {
    pub convention: String,
    pub unconditionally_noncritical: bool,
    pub count: usize,
    pub obstructions: Vec<ObstructionDoc>,
}

#[derive(Debug, Serialize)]
pub struct ObstructionDoc {
    pub weight: Vec<Vec<String>>,
    pub smooth_tag: String,
    pub central_key: KeyDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<StepDoc>>,
}

#[derive(Debug, Serialize)]
pub struct KeyDoc {
    pub label: String,
    pub reduced: Vec<Vec<String>>,
    pub smooth_tag: String,
    pub pi_tag: String,
}

#[derive(Debug, Serialize)]
pub struct DominanceDoc {
    pub convention: String,
    pub in_lambda_p_plus: bool,
    pub roots: Vec<RootDominanceDoc>,
}

#[derive(Debug, Serialize)]
pub struct RootDominanceDoc {
    pub sigma: usize,
    pub root: Vec<i64>,
    pub pairing: String,
    pub shifted_pairing: String,
    pub integral: bool,
    /// Under the job's convention.
    pub dominant: bool,
}

#[derive(Debug, Serialize)]
pub struct OrbitDoc {
    pub count: usize,
    pub weights: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Serialize)]
pub struct OracleDoc {
    pub agrees: bool,
    pub production_count: usize,
    pub oracle_count: usize,
    pub stabilized_depth: usize,
    pub missing_from_production: Vec<Vec<Vec<String>>>,
    pub extra_in_production: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Serialize)]
pub struct ErrorDoc {
    pub schema: &'static str,
    pub error: ErrorBody,
}

#[derive(Debug, Serialize)]
pub struct ErrorBody {
    pub code: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub message: String,
}

impl ErrorDoc {
    pub fn new(code: impl Into<String>, field: Option<String>, message: impl Into<String>) -> Self {
        Self {
            schema: SCHEMA,
            error: ErrorBody {
                code: code.into(),
                field,
                message: message.into(),
            },
        }
    }

    pub fn from_field(err: &FieldError) -> Self {
        Self::new(err.code, Some(err.field.clone()), err.message.clone())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("error documents always serialize")
    }
}

pub fn witness_doc(ctx: &EmbeddingContext, chain: &LinkageChain) -> Vec<StepDoc> {
    chain
        .steps
        .iter()
        .map(|s| StepDoc {
            sigma: s.root.sigma,
            root: ctx.base().positive_roots()[s.root.root_index].clone(),
            weight: s.result.algebraic.to_strings(),
        })
        .collect()
}

pub fn factor_set_doc(ctx: &EmbeddingContext, result: &LinkageResult, witnesses: bool) -> FactorSetDoc {
    FactorSetDoc {
        convention: result.convention.to_string(),
        upper_bound: result.upper_bound,
        count: result.len(),
        members: result
            .members()
            .iter()
            .map(|m| MemberDoc {
                weight: m.character.algebraic.to_strings(),
                smooth_tag: m.character.smooth_tag.clone(),
                witness: witnesses.then(|| witness_doc(ctx, &m.witness)),
            })
            .collect(),
    }
}

pub fn key_doc(key: &CentralKey) -> KeyDoc {
    KeyDoc {
        label: key.to_string(),
        reduced: key.reduced_strings(),
        smooth_tag: key.smooth_tag.clone(),
        pi_tag: key.pi_tag.clone(),
    }
}

pub fn obstructions_doc(
    ctx: &EmbeddingContext,
    obstructions: &[Obstruction],
    linked: &LinkageResult,
    witnesses: bool,
) -> ObstructionsDoc {
    ObstructionsDoc {
        convention: linked.convention.to_string(),
        unconditionally_noncritical: obstructions.is_empty(),
        count: obstructions.len(),
        obstructions: obstructions
            .iter()
            .map(|o| ObstructionDoc {
                weight: o.character.algebraic.to_strings(),
                smooth_tag: o.character.smooth_tag.clone(),
                central_key: key_doc(&o.key),
                witness: witnesses
                    .then(|| linked.witness(&o.character).map(|c| witness_doc(ctx, c)))
                    .flatten(),
            })
            .collect(),
    }
}

pub fn weights_doc<'a>(weights: impl IntoIterator<Item = &'a WeightL>) -> Vec<Vec<Vec<String>>> {
    weights.into_iter().map(WeightL::to_strings).collect()
}

fn scalar(x: &str) -> String {
    rational::parse(x)
        .map(|q| rational::format_short(&q))
        .unwrap_or_else(|_| x.to_string())
}

fn short(weight: &[Vec<String>]) -> String {
    weight
        .iter()
        .map(|c| format!("({})", c.iter().map(|x| scalar(x)).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(";")
}

fn roots_text(steps: &[StepDoc]) -> String {
    steps
        .iter()
        .map(|s| format!("s{}{:?}", s.sigma, s.root))
        .collect::<Vec<_>>()
        .join(" ")
}

fn table(out: &mut String, header: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let header: Vec<String> = header.iter().map(|h| h.to_string()).collect();
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    let _ = writeln!(out, "{}", line(&header));
    let _ = writeln!(out, "{}", line(&rule));
    for row in rows {
        let _ = writeln!(out, "{}", line(row));
    }
}

pub fn render_table(doc: &Document) -> String {
    let mut out = String::new();
    let input = &doc.input;
    let _ = writeln!(
        out,
        "{}  |S|={}  I={:?}  chi={} [{}]  convention={}",
        match &input.root_system {
            linkage_core::CartanKind::Named(n) => n.clone(),
            linkage_core::CartanKind::Matrix(m) => format!("{m:?}"),
        },
        input.embeddings,
        input.parabolic,
        short(&input.character.coordinates),
        input.character.smooth_tag,
        input.convention,
    );
    match &doc.result {
        ResultDoc::LinkageSet(f) | ResultDoc::BorelFactors(f) | ResultDoc::ParabolicCandidates(f) => {
            let _ = writeln!(
                out,
                "{} members{}",
                f.count,
                if f.upper_bound { " (upper bound)" } else { "" }
            );
            let rows: Vec<Vec<String>> = f
                .members
                .iter()
                .map(|m| {
                    vec![
                        short(&m.weight),
                        m.smooth_tag.clone(),
                        m.witness.as_deref().map(roots_text).unwrap_or_default(),
                    ]
                })
                .collect();
            table(&mut out, &["weight", "tag", "chain"], &rows);
        }
        ResultDoc::Obstructions(o) => {
            let _ = writeln!(
                out,
                "{} obstructions{}",
                o.count,
                if o.unconditionally_noncritical {
                    " (unconditionally non-critical)"
                } else {
                    ""
                }
            );
            let rows: Vec<Vec<String>> = o
                .obstructions
                .iter()
                .map(|x| vec![short(&x.weight), x.smooth_tag.clone(), x.central_key.label.clone()])
                .collect();
            table(&mut out, &["weight", "tag", "central key"], &rows);
        }
        ResultDoc::Dominance(d) => {
            let _ = writeln!(out, "in Lambda_p^+: {}", d.in_lambda_p_plus);
            let rows: Vec<Vec<String>> = d
                .roots
                .iter()
                .map(|r| {
                    vec![
                        r.sigma.to_string(),
                        format!("{:?}", r.root),
                        scalar(&r.pairing),
                        scalar(&r.shifted_pairing),
                        r.integral.to_string(),
                        r.dominant.to_string(),
                    ]
                })
                .collect();
            table(
                &mut out,
                &["sigma", "root", "pairing", "shifted", "integral", "dominant"],
                &rows,
            );
        }
        ResultDoc::Orbit(o) => {
            let _ = writeln!(out, "{} weights", o.count);
            let rows: Vec<Vec<String>> = o.weights.iter().map(|w| vec![short(w)]).collect();
            table(&mut out, &["weight"], &rows);
        }
    }
    if let Some(o) = &doc.oracle {
        let _ = writeln!(
            out,
            "oracle: {} (production {}, oracle {}, depth {})",
            if o.agrees { "agrees" } else { "DISAGREES" },
            o.production_count,
            o.oracle_count,
            o.stabilized_depth
        );
    }
    out
}
