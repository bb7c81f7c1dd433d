//! Strong linkage of locally analytic characters and the factor sets built on
//! it.
//!
//! `chi' <- chi` is an up-link when `chi` is locally alpha-dominant for some
//! positive global root and `chi' = s_alpha . chi`. The strongly linked set of
//! `chi` is the closure under up-links. For the Borel it is exactly the set of
//! simple factors of the Verma module of `chi`; for a parabolic, filtering by
//! the parabolic dominance cone gives an upper bound on the factors of the
//! generalized Verma module, and removing `chi` itself gives the central
//! characters that must be absent from the Jacquet module for non-criticality.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use num::Zero;

use crate::error::{Error, Result};
use crate::parabolic::{CentralKey, ParabolicSubset};
use crate::rational::{add_int, is_nonnegative_integer, is_positive_integer, Rational};
use crate::weights::{Convention, EmbeddingContext, GlobalRoot, LocAnChar, WeightL};

pub const DEFAULT_ORBIT_GUARD: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkageStep {
    pub root: GlobalRoot,
    /// Shared with the member it names and with every longer chain through it.
    pub result: Arc<LocAnChar>,
}

/// Up-links from the origin down to a member; empty for the origin itself.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinkageChain {
    pub steps: Vec<LinkageStep>,
}

impl LinkageChain {
    pub fn roots(&self) -> Vec<GlobalRoot> {
        self.steps.iter().map(|s| s.root).collect()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Member {
    pub character: Arc<LocAnChar>,
    pub witness: LinkageChain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorSetKind {
    /// The strongly linked set itself.
    LinkageClosure,
    /// Exact simple factors of a Borel Verma module (no multiplicities).
    BorelFactors,
    /// Candidate factors of a generalized Verma module.
    ParabolicCandidates,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkageResult {
    pub origin: LocAnChar,
    pub convention: Convention,
    pub kind: FactorSetKind,
    /// True when `members` is only known to contain the true factor set.
    pub upper_bound: bool,
    members: Vec<Member>,
}

impl LinkageResult {
    /// Members sorted by algebraic coordinates.
    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn characters(&self) -> impl Iterator<Item = &LocAnChar> {
        self.members.iter().map(|m| &*m.character)
    }

    pub fn algebraic_set(&self) -> BTreeSet<WeightL> {
        self.characters().map(|c| c.algebraic.clone()).collect()
    }

    pub fn contains(&self, chi: &LocAnChar) -> bool {
        self.witness(chi).is_some()
    }

    pub fn witness(&self, chi: &LocAnChar) -> Option<&LinkageChain> {
        self.members
            .binary_search_by(|m| (*m.character).cmp(chi))
            .ok()
            .map(|k| &self.members[k].witness)
    }
}

/// An obstruction `chi'` together with the central character key of
/// `chi' * omega_pi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    pub character: LocAnChar,
    pub key: CentralKey,
}

/// Linkage computations over one embedding context under one dominance
/// convention.
#[derive(Debug, Clone, Copy)]
pub struct Linkage<'a> {
    ctx: &'a EmbeddingContext,
    convention: Convention,
    orbit_guard: usize,
}

impl<'a> Linkage<'a> {
    pub fn new(ctx: &'a EmbeddingContext, convention: Convention) -> Self {
        Self {
            ctx,
            convention,
            orbit_guard: DEFAULT_ORBIT_GUARD,
        }
    }

    pub fn with_orbit_guard(mut self, cap: usize) -> Self {
        self.orbit_guard = cap;
        self
    }

    pub fn context(&self) -> &EmbeddingContext {
        self.ctx
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// Up-links of one embedding's component: `(root index, reflected
    /// component)` for every gated root that moves it.
    fn component_up_links(&self, component: &[Rational]) -> Result<Vec<(usize, Vec<Rational>)>> {
        let rs = self.ctx.base();
        let mut out = Vec::new();
        for root_index in 0..rs.num_positive_roots() {
            let pairing = rs.pair_unchecked(component, root_index);
            let shift = add_int(&pairing, rs.coroot_height(root_index)?);
            let dominant = match self.convention {
                Convention::Paper => is_nonnegative_integer(&pairing),
                Convention::Shifted => is_positive_integer(&shift),
            };
            // a zero shift fixes the component
            if !dominant || shift.is_zero() {
                continue;
            }
            let mut next = component.to_vec();
            rs.subtract_root_multiple(&mut next, root_index, &shift);
            out.push((root_index, next));
        }
        Ok(out)
    }

    pub fn up_link_candidates(&self, chi: &LocAnChar) -> Result<Vec<(GlobalRoot, LocAnChar)>> {
        self.ctx.check_weight(&chi.algebraic)?;
        let mut out = Vec::new();
        for (sigma, component) in chi.algebraic.components.iter().enumerate() {
            for (root_index, moved) in self.component_up_links(component)? {
                let mut next = chi.clone();
                next.algebraic.components[sigma] = moved;
                out.push((GlobalRoot::new(sigma, root_index), next));
            }
        }
        Ok(out)
    }

    /// Breadth-first closure under up-links, with the discovering chain kept
    /// as a witness for every member.
    pub fn strongly_linked_set(&self, chi: &LocAnChar) -> Result<LinkageResult> {
        self.ctx.check_weight(&chi.algebraic)?;
        // An up-link moves a single component and depends on nothing else, so
        // the search runs over tuples of interned per-embedding components.
        let mut tables: Vec<ComponentTable> = chi
            .algebraic
            .components
            .iter()
            .map(|c| ComponentTable::new(c.clone()))
            .collect();
        let origin = vec![0u32; tables.len()];
        // nodes[k] = (component ids, parent index and root of the discovering link)
        let mut nodes: Vec<SearchNode> = vec![(origin.clone(), None)];
        let mut index: HashMap<Vec<u32>, usize> = HashMap::from([(origin, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            for sigma in 0..tables.len() {
                let links = tables[sigma].up_links(self, nodes[k].0[sigma])?;
                for (root_index, moved) in links {
                    let mut next = nodes[k].0.clone();
                    next[sigma] = moved;
                    if index.contains_key(&next) {
                        continue;
                    }
                    let fresh = nodes.len();
                    if fresh >= self.orbit_guard {
                        return Err(Error::OrbitGuardExceeded { cap: self.orbit_guard });
                    }
                    index.insert(next.clone(), fresh);
                    queue.push_back(fresh);
                    nodes.push((next, Some((k, GlobalRoot::new(sigma, root_index)))));
                }
            }
        }

        let characters: Vec<Arc<LocAnChar>> = nodes
            .iter()
            .map(|(ids, _)| {
                Arc::new(LocAnChar {
                    algebraic: WeightL::new(
                        ids.iter()
                            .zip(&tables)
                            .map(|(&id, t)| t.values[id as usize].clone())
                            .collect(),
                    ),
                    smooth_tag: chi.smooth_tag.clone(),
                })
            })
            .collect();
        // WeightL orders lexicographically by component, so ranking each table
        // once gives the member order without comparing rationals again.
        let ranks: Vec<Vec<usize>> = tables.iter().map(ComponentTable::ranks).collect();
        let mut order: Vec<usize> = (0..nodes.len()).collect();
        order.sort_by_cached_key(|&k| {
            nodes[k]
                .0
                .iter()
                .zip(&ranks)
                .map(|(&id, r)| r[id as usize])
                .collect::<Vec<_>>()
        });
        let members = order
            .into_iter()
            .map(|k| {
                let mut steps = Vec::new();
                let mut cur = k;
                while let Some((parent, root)) = nodes[cur].1 {
                    steps.push(LinkageStep {
                        root,
                        result: Arc::clone(&characters[cur]),
                    });
                    cur = parent;
                }
                steps.reverse();
                Member {
                    character: Arc::clone(&characters[k]),
                    witness: LinkageChain { steps },
                }
            })
            .collect();

        Ok(LinkageResult {
            origin: chi.clone(),
            convention: self.convention,
            kind: FactorSetKind::LinkageClosure,
            upper_bound: false,
            members,
        })
    }

    /// The simple factors `L(chi')` of the Borel Verma module `M(chi)`.
    pub fn verma_factors_borel(&self, chi: &LocAnChar) -> Result<LinkageResult> {
        let mut result = self.strongly_linked_set(chi)?;
        result.kind = FactorSetKind::BorelFactors;
        Ok(result)
    }

    /// Strongly linked characters whose derivative lies in the parabolic
    /// dominance cone. Exact for the Borel, an upper bound otherwise.
    pub fn verma_factor_candidates(&self, chi: &LocAnChar, parabolic: &ParabolicSubset) -> Result<LinkageResult> {
        if let Some(index) = parabolic.lambda_p_plus_violation(self.ctx, &chi.algebraic)? {
            return Err(Error::NotParabolicDominant { index });
        }
        let mut result = self.strongly_linked_set(chi)?;
        let mut kept = Vec::with_capacity(result.members.len());
        for m in result.members {
            if parabolic.in_lambda_p_plus(self.ctx, &m.character.algebraic)? {
                kept.push(m);
            }
        }
        result.members = kept;
        result.kind = FactorSetKind::ParabolicCandidates;
        result.upper_bound = !parabolic.is_borel();
        Ok(result)
    }

    /// Candidates other than `chi`, keyed by central character and sorted by
    /// key, then by algebraic coordinates. Empty means no eigenspace condition
    /// needs checking.
    pub fn noncritical_obstruction_set(
        &self,
        chi: &LocAnChar,
        parabolic: &ParabolicSubset,
        pi_tag: &str,
    ) -> Result<Vec<Obstruction>> {
        let candidates = self.verma_factor_candidates(chi, parabolic)?;
        let mut out = candidates
            .characters()
            .filter(|c| *c != chi)
            .map(|c| {
                Ok(Obstruction {
                    key: parabolic.central_class_key(self.ctx, c, pi_tag)?,
                    character: c.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        out.sort_by(|a, b| a.key.cmp(&b.key).then_with(|| a.character.cmp(&b.character)));
        Ok(out)
    }
}

type SearchNode = (Vec<u32>, Option<(usize, GlobalRoot)>);

/// Distinct components seen in one embedding, with their up-links memoized.
struct ComponentTable {
    values: Vec<Vec<Rational>>,
    ids: HashMap<Vec<Rational>, u32>,
    links: Vec<Option<Vec<(usize, u32)>>>,
}

impl ComponentTable {
    fn new(origin: Vec<Rational>) -> Self {
        Self {
            ids: HashMap::from([(origin.clone(), 0)]),
            values: vec![origin],
            links: vec![None],
        }
    }

    fn intern(&mut self, value: Vec<Rational>) -> u32 {
        if let Some(&id) = self.ids.get(&value) {
            return id;
        }
        let id = self.values.len() as u32;
        self.ids.insert(value.clone(), id);
        self.values.push(value);
        self.links.push(None);
        id
    }

    fn up_links(&mut self, linkage: &Linkage<'_>, id: u32) -> Result<Vec<(usize, u32)>> {
        if let Some(links) = &self.links[id as usize] {
            return Ok(links.clone());
        }
        let computed = linkage.component_up_links(&self.values[id as usize])?;
        let links: Vec<(usize, u32)> = computed.into_iter().map(|(r, v)| (r, self.intern(v))).collect();
        self.links[id as usize] = Some(links.clone());
        Ok(links)
    }

    /// Position of each component in sorted order.
    fn ranks(&self) -> Vec<usize> {
        let mut sorted: Vec<usize> = (0..self.values.len()).collect();
        sorted.sort_by(|&a, &b| self.values[a].cmp(&self.values[b]));
        let mut rank = vec![0; sorted.len()];
        for (pos, id) in sorted.into_iter().enumerate() {
            rank[id] = pos;
        }
        rank
    }
}
