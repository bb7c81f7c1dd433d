//! Job files and their validation into library inputs.

use std::fmt;
use std::sync::Arc;

use linkage_core::rational;
use linkage_core::{
    CartanKind, CartanSpec, Convention, EmbeddingContext, LocAnChar, ParabolicSubset, RootSystem, WeightL,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Factors,
    Candidates,
    Obstructions,
    Linkset,
    Dominance,
    Orbit,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::Factors,
        Command::Candidates,
        Command::Obstructions,
        Command::Linkset,
        Command::Dominance,
        Command::Orbit,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Command::Factors => "factors",
            Command::Candidates => "candidates",
            Command::Obstructions => "obstructions",
            Command::Linkset => "linkset",
            Command::Dominance => "dominance",
            Command::Orbit => "orbit",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.as_str() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterSpec {
    /// One list of `p/q` strings per embedding.
    pub coordinates: Vec<Vec<String>>,
    #[serde(default = "default_smooth_tag")]
    pub smooth_tag: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub root_system: CartanKind,
    #[serde(default = "default_embeddings")]
    pub embeddings: usize,
    /// 1-based simple-root indices.
    #[serde(default)]
    pub parabolic: Vec<usize>,
    pub character: CharacterSpec,
    #[serde(default = "default_pi_tag")]
    pub pi_tag: String,
    #[serde(default)]
    pub convention: Convention,
    pub command: Command,
    #[serde(default)]
    pub oracle: bool,
    #[serde(default)]
    pub witnesses: bool,
}

fn default_embeddings() -> usize {
    1
}

fn default_smooth_tag() -> String {
    "triv".to_string()
}

fn default_pi_tag() -> String {
    "omega_pi".to_string()
}

/// A validation failure pinned to a job field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldError {
    pub field: String,
    pub code: &'static str,
    pub message: String,
}

impl FieldError {
    pub fn new(field: impl Into<String>, code: &'static str, message: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            code,
            message: message.into(),
        }
    }
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

/// Library inputs assembled from a validated job.
#[derive(Debug, Clone)]
pub struct PreparedJob {
    pub ctx: EmbeddingContext,
    pub character: LocAnChar,
    pub parabolic: ParabolicSubset,
}

impl JobSpec {
    pub fn from_json(text: &str) -> Result<Self, FieldError> {
        serde_json::from_str(text).map_err(|e| FieldError::new("job", "MalformedJob", e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("job specs always serialize")
    }

    /// Canonical form: normalized type label, sorted parabolic indices,
    /// reduced `p/q` coordinates. Fails on the same inputs as [`prepare`].
    ///
    /// [`prepare`]: JobSpec::prepare
    pub fn normalized(&self) -> Result<Self, FieldError> {
        let prepared = self.prepare()?;
        let mut out = self.clone();
        if let CartanKind::Named(_) = &out.root_system {
            out.root_system = CartanKind::Named(prepared.ctx.base().label().to_string());
        }
        out.parabolic = prepared.parabolic.indices().iter().map(|i| i + 1).collect();
        out.character.coordinates = prepared.character.algebraic.to_strings();
        Ok(out)
    }

    pub fn prepare(&self) -> Result<PreparedJob, FieldError> {
        let rs = RootSystem::build(&CartanSpec {
            kind: self.root_system.clone(),
            rank: None,
        })
        .map_err(|e| FieldError::new("root_system", "InvalidCartan", e.to_string()))?;
        let rank = rs.rank();

        if self.embeddings == 0 {
            return Err(FieldError::new("embeddings", "InvalidEmbeddings", "must be at least 1"));
        }
        let coords = &self.character.coordinates;
        if coords.len() != self.embeddings {
            return Err(FieldError::new(
                "character.coordinates",
                "ContextMismatch",
                format!(
                    "expected {} embedding components, found {}",
                    self.embeddings,
                    coords.len()
                ),
            ));
        }
        let dim = coords[0].len();
        if dim < rank {
            return Err(FieldError::new(
                "character.coordinates[0]",
                "ContextMismatch",
                format!("expected at least {rank} coordinates, found {dim}"),
            ));
        }
        let mut components = Vec::with_capacity(coords.len());
        for (s, comp) in coords.iter().enumerate() {
            if comp.len() != dim {
                return Err(FieldError::new(
                    format!("character.coordinates[{s}]"),
                    "ContextMismatch",
                    format!("expected {dim} coordinates, found {}", comp.len()),
                ));
            }
            let parsed = comp
                .iter()
                .enumerate()
                .map(|(i, text)| {
                    rational::parse(text).map_err(|e| {
                        FieldError::new(
                            format!("character.coordinates[{s}][{i}]"),
                            "ParseRational",
                            e.to_string(),
                        )
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            components.push(parsed);
        }

        let mut simple = Vec::with_capacity(self.parabolic.len());
        for (k, &i) in self.parabolic.iter().enumerate() {
            if i == 0 || i > rank {
                return Err(FieldError::new(
                    format!("parabolic[{k}]"),
                    "IndexOutOfRange",
                    format!("simple root index {i} not in 1..={rank}"),
                ));
            }
            simple.push(i - 1);
        }
        let parabolic = ParabolicSubset::new(&rs, simple)
            .map_err(|e| FieldError::new("parabolic", "IndexOutOfRange", e.to_string()))?;
        let ctx = EmbeddingContext::with_central(Arc::new(rs), self.embeddings, dim - rank)
            .map_err(|e| FieldError::new("embeddings", "InvalidEmbeddings", e.to_string()))?;
        Ok(PreparedJob {
            ctx,
            character: LocAnChar::new(WeightL::new(components), self.character.smooth_tag.clone()),
            parabolic,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(text: &str) -> JobSpec {
        JobSpec::from_json(text).unwrap()
    }

    #[test]
    fn defaults_and_normalization() {
        let j = job(
            r#"{"root_system":"a2","parabolic":[1,1],"character":{"coordinates":[["4/2","-0"]]},"command":"linkset"}"#,
        );
        assert_eq!(j.embeddings, 1);
        assert_eq!(j.convention, Convention::Paper);
        let n = j.normalized().unwrap();
        assert_eq!(n.root_system, CartanKind::Named("A_2".into()));
        assert_eq!(n.parabolic, vec![1]);
        assert_eq!(
            n.character.coordinates,
            vec![vec!["2/1".to_string(), "0/1".to_string()]]
        );
        assert_eq!(n.character.smooth_tag, "triv");
        assert_eq!(n.normalized().unwrap(), n);
    }

    #[test]
    fn matrix_root_system() {
        let j = job(r#"{"root_system":[[2,-1],[-3,2]],"character":{"coordinates":[["0","0"]]},"command":"orbit"}"#);
        assert_eq!(j.prepare().unwrap().ctx.base().num_positive_roots(), 6);
        assert_eq!(j.normalized().unwrap().root_system, j.root_system);
    }

    #[test]
    fn field_errors() {
        let cases = [
            (
                r#"{"root_system":"A_1","character":{"coordinates":[["2/0"]]},"command":"linkset"}"#,
                "character.coordinates[0][0]",
            ),
            (
                r#"{"root_system":"Q_1","character":{"coordinates":[["2"]]},"command":"linkset"}"#,
                "root_system",
            ),
            (
                r#"{"root_system":"A_1","embeddings":2,"character":{"coordinates":[["2"]]},"command":"linkset"}"#,
                "character.coordinates",
            ),
            (
                r#"{"root_system":"A_1","embeddings":0,"character":{"coordinates":[]},"command":"linkset"}"#,
                "embeddings",
            ),
            (
                r#"{"root_system":"A_2","parabolic":[3],"character":{"coordinates":[["0","0"]]},"command":"linkset"}"#,
                "parabolic[0]",
            ),
            (
                r#"{"root_system":"A_2","character":{"coordinates":[["0"]]},"command":"linkset"}"#,
                "character.coordinates[0]",
            ),
            (
                r#"{"root_system":"A_1","embeddings":2,"character":{"coordinates":[["0"],["0","1"]]},"command":"linkset"}"#,
                "character.coordinates[1]",
            ),
        ];
        for (text, field) in cases {
            assert_eq!(job(text).prepare().unwrap_err().field, field, "{text}");
        }
        let err = JobSpec::from_json(r#"{"root_system":"A_1","command":"nope","character":{"coordinates":[["0"]]}}"#);
        assert_eq!(err.unwrap_err().field, "job");
        let err = JobSpec::from_json(
            r#"{"root_system":"A_1","bogus":1,"command":"orbit","character":{"coordinates":[["0"]]}}"#,
        );
        assert!(err.is_err());
    }

    #[test]
    fn central_block_inferred() {
        let j = job(r#"{"root_system":"A_1","character":{"coordinates":[["2","1/3"]]},"command":"linkset"}"#);
        assert_eq!(j.prepare().unwrap().ctx.central_dim(), 1);
    }
}
