//! Brute-force reference computations for checking the linkage search.
//!
//! Only the weight primitives (dominance gate, dot reflection) are shared with
//! [`crate::linkage`]; nothing here calls the breadth-first search.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::rootsys::WeylElement;
use crate::weights::{Convention, EmbeddingContext, GlobalRoot, LocAnChar, WeightL};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    max_chain_length: usize,
    convention: Convention,
}

impl OracleConfig {
    pub fn new(max_chain_length: usize, convention: Convention) -> Result<Self> {
        if max_chain_length == 0 {
            return Err(Error::InvalidConfig("max_chain_length must be at least 1".into()));
        }
        Ok(Self {
            max_chain_length,
            convention,
        })
    }

    pub fn max_chain_length(&self) -> usize {
        self.max_chain_length
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }
}

/// Endpoints of every gated chain of length at most `max_chain_length`,
/// mapped to the shortest length that reaches them.
fn chain_depths(ctx: &EmbeddingContext, chi: &LocAnChar, cfg: OracleConfig) -> Result<BTreeMap<LocAnChar, usize>> {
    ctx.check_weight(&chi.algebraic)?;
    let roots: Vec<GlobalRoot> = ctx.global_roots().collect();
    let mut depths = BTreeMap::new();
    depths.insert(chi.clone(), 0);
    let mut stack: Vec<(LocAnChar, usize)> = vec![(chi.clone(), 0)];
    while let Some((cur, depth)) = stack.pop() {
        if depth == cfg.max_chain_length {
            continue;
        }
        for &r in &roots {
            if !ctx.is_alpha_dominant(&cur, r, cfg.convention)? {
                continue;
            }
            let next = ctx.dot_reflect_char(&cur, r)?;
            // A chain reaching `next` no earlier than before can only extend
            // to endpoints already explored from there.
            match depths.get_mut(&next) {
                Some(d) if *d <= depth + 1 => continue,
                Some(d) => *d = depth + 1,
                None => {
                    depths.insert(next.clone(), depth + 1);
                }
            }
            stack.push((next, depth + 1));
        }
    }
    Ok(depths)
}

/// Every endpoint of a dominance-gated chain of at most `max_chain_length`
/// dot reflections starting at `chi`, together with `chi`.
pub fn linkage_by_chains(ctx: &EmbeddingContext, chi: &LocAnChar, cfg: OracleConfig) -> Result<BTreeSet<LocAnChar>> {
    Ok(chain_depths(ctx, chi, cfg)?.into_keys().collect())
}

/// Chain enumeration run deep enough that depth `d` and `d + 1` give the same
/// set. Returns the set and that depth `d`.
///
/// The minimal depths of reachable endpoints form an interval, so a run to
/// depth `D` has stabilized as soon as some endpoint depth below `D` is
/// missing; otherwise `D` is doubled.
pub fn stabilized_linkage(
    ctx: &EmbeddingContext,
    chi: &LocAnChar,
    convention: Convention,
) -> Result<(BTreeSet<LocAnChar>, usize)> {
    let mut limit = 2;
    loop {
        let depths = chain_depths(ctx, chi, OracleConfig::new(limit, convention)?)?;
        let deepest = depths.values().copied().max().unwrap_or(0);
        if deepest < limit {
            return Ok((depths.into_keys().collect(), deepest));
        }
        limit *= 2;
    }
}

/// The dot orbit `{w . weight}` under the full Weyl group of the split torus
/// (product over embeddings). Fails if `|W|^|S|` exceeds `size_guard`.
pub fn dot_orbit(ctx: &EmbeddingContext, weight: &WeightL, size_guard: usize) -> Result<BTreeSet<WeightL>> {
    ctx.check_weight(weight)?;
    let rs = ctx.base();
    let group: Vec<WeylElement> = rs.weyl_generate(size_guard)?;
    let total = (0..ctx.num_embeddings()).try_fold(1usize, |acc, _| acc.checked_mul(group.len()));
    if total.is_none_or(|t| t > size_guard) {
        return Err(Error::GroupTooLarge { guard: size_guard });
    }
    let per_embedding: Vec<BTreeSet<Vec<_>>> = weight
        .components
        .iter()
        .map(|c| group.iter().map(|w| w.dot(rs, c)).collect::<Result<_>>())
        .collect::<Result<_>>()?;

    let mut orbit = BTreeSet::from([WeightL::new(Vec::new())]);
    for options in &per_embedding {
        orbit = orbit
            .iter()
            .flat_map(|prefix| {
                options.iter().map(move |c| {
                    let mut comps = prefix.components.clone();
                    comps.push(c.clone());
                    WeightL::new(comps)
                })
            })
            .collect();
    }
    Ok(orbit)
}
