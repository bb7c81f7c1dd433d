//! Weights over a set of embeddings, locally analytic characters and the dot
//! action.
//!
//! After extending scalars along `|S|` embeddings the torus splits into `|S|`
//! copies of the base torus, so a weight is a tuple of base weights and a root
//! is a pair `(embedding, base root)`. A character is modelled by its
//! derivative (a weight) together with an opaque label for its smooth part;
//! dot reflections multiply by an algebraic character and so never touch the
//! label.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, int, is_integer, is_nonnegative_integer, is_positive_integer, Rational};
use crate::rootsys::RootSystem;

/// Which inequality gates an up-link `s_alpha . chi <- chi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `<lambda, alpha^vee>` is a non-negative integer.
    #[default]
    Paper,
    /// `<lambda + rho0, alpha^vee>` is a positive integer.
    Shifted,
}

impl Convention {
    pub fn as_str(self) -> &'static str {
        match self {
            Convention::Paper => "paper",
            Convention::Shifted => "shifted",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A root of the split torus: a base positive root in one embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GlobalRoot {
    pub sigma: usize,
    pub root_index: usize,
}

impl GlobalRoot {
    pub fn new(sigma: usize, root_index: usize) -> Self {
        Self { sigma, root_index }
    }
}

/// A weight of the split torus: one base weight per embedding. Each component
/// holds `rank` fundamental-weight coordinates followed by the central block.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct WeightL {
    pub components: Vec<Vec<Rational>>,
}

// Rationals are always kept in lowest terms, so hashing the raw numerator and
// denominator agrees with equality and skips the generic `Ratio` hash.
impl Hash for WeightL {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_usize(self.components.len());
        for c in &self.components {
            state.write_usize(c.len());
            for x in c {
                // small integers, the common case, hash as one word
                match (x.numer().to_i64(), x.is_integer()) {
                    (Some(n), true) => state.write_i64(n),
                    _ => {
                        state.write_u8(0xff);
                        x.numer().hash(state);
                        x.denom().hash(state);
                    }
                }
            }
        }
    }
}

impl WeightL {
    pub fn new(components: Vec<Vec<Rational>>) -> Self {
        Self { components }
    }

    pub fn from_ints(components: &[&[i64]]) -> Self {
        Self {
            components: components.iter().map(|c| c.iter().map(|&v| int(v)).collect()).collect(),
        }
    }

    pub fn component(&self, sigma: usize) -> &[Rational] {
        &self.components[sigma]
    }

    /// Canonical `p/q` strings, one list per embedding.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.components
            .iter()
            .map(|c| c.iter().map(rational::format).collect())
            .collect()
    }
}

impl fmt::Display for WeightL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                let coords: Vec<String> = c.iter().map(rational::format_short).collect();
                format!("({})", coords.join(","))
            })
            .collect();
        f.write_str(&parts.join(";"))
    }
}

/// A locally analytic character of the torus, up to the data linkage sees.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocAnChar {
    pub algebraic: WeightL,
    pub smooth_tag: String,
}

impl LocAnChar {
    pub fn new(algebraic: WeightL, smooth_tag: impl Into<String>) -> Self {
        Self {
            algebraic,
            smooth_tag: smooth_tag.into(),
        }
    }
}

impl fmt::Display for LocAnChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.algebraic, self.smooth_tag)
    }
}

/// The base root system replicated over `num_embeddings` embeddings, with an
/// optional central coordinate block per embedding that reflections never move.
#[derive(Debug, Clone)]
pub struct EmbeddingContext {
    base: Arc<RootSystem>,
    num_embeddings: usize,
    central_dim: usize,
}

impl EmbeddingContext {
    pub fn new(base: RootSystem, num_embeddings: usize) -> Result<Self> {
        Self::with_central(Arc::new(base), num_embeddings, 0)
    }

    pub fn with_central(base: Arc<RootSystem>, num_embeddings: usize, central_dim: usize) -> Result<Self> {
        if num_embeddings == 0 {
            return Err(Error::InvalidConfig("at least one embedding is required".into()));
        }
        Ok(Self {
            base,
            num_embeddings,
            central_dim,
        })
    }

    pub fn base(&self) -> &RootSystem {
        &self.base
    }

    pub fn base_arc(&self) -> &Arc<RootSystem> {
        &self.base
    }

    pub fn num_embeddings(&self) -> usize {
        self.num_embeddings
    }

    pub fn central_dim(&self) -> usize {
        self.central_dim
    }

    /// Coordinates per embedding component.
    pub fn component_dim(&self) -> usize {
        self.base.rank() + self.central_dim
    }

    pub fn num_global_roots(&self) -> usize {
        self.num_embeddings * self.base.num_positive_roots()
    }

    /// All positive global roots, embedding-major.
    pub fn global_roots(&self) -> impl Iterator<Item = GlobalRoot> + '_ {
        let np = self.base.num_positive_roots();
        (0..self.num_embeddings).flat_map(move |s| (0..np).map(move |k| GlobalRoot::new(s, k)))
    }

    pub fn zero(&self) -> WeightL {
        WeightL::new(vec![vec![Rational::zero(); self.component_dim()]; self.num_embeddings])
    }

    /// `rho0` in every embedding (central block zero).
    pub fn rho0(&self) -> WeightL {
        self.filled(1)
    }

    /// `-rho0` in every embedding, the fixed point of every dot reflection.
    pub fn neg_rho0(&self) -> WeightL {
        self.filled(-1)
    }

    fn filled(&self, v: i64) -> WeightL {
        let mut w = self.zero();
        for c in &mut w.components {
            for x in c.iter_mut().take(self.base.rank()) {
                *x = int(v);
            }
        }
        w
    }

    pub fn check_weight(&self, weight: &WeightL) -> Result<()> {
        if weight.components.len() != self.num_embeddings {
            return Err(Error::ContextMismatch(format!(
                "weight has {} components, context has {} embeddings",
                weight.components.len(),
                self.num_embeddings
            )));
        }
        if let Some((s, c)) = weight
            .components
            .iter()
            .enumerate()
            .find(|(_, c)| c.len() != self.component_dim())
        {
            return Err(Error::ContextMismatch(format!(
                "component {s} has {} coordinates, expected {}",
                c.len(),
                self.component_dim()
            )));
        }
        Ok(())
    }

    pub fn check_root(&self, r: GlobalRoot) -> Result<()> {
        if r.sigma >= self.num_embeddings {
            return Err(Error::IndexOutOfRange {
                index: r.sigma,
                len: self.num_embeddings,
            });
        }
        if r.root_index >= self.base.num_positive_roots() {
            return Err(Error::IndexOutOfRange {
                index: r.root_index,
                len: self.base.num_positive_roots(),
            });
        }
        Ok(())
    }

    /// `<weight[sigma], alpha^vee>`.
    pub fn global_pairing(&self, weight: &WeightL, r: GlobalRoot) -> Result<Rational> {
        self.check_weight(weight)?;
        self.check_root(r)?;
        Ok(self.base.pair_unchecked(&weight.components[r.sigma], r.root_index))
    }

    /// `<weight[sigma] + rho0, alpha^vee>`.
    pub fn shifted_pairing(&self, weight: &WeightL, r: GlobalRoot) -> Result<Rational> {
        let p = self.global_pairing(weight, r)?;
        Ok(rational::add_int(&p, self.base.coroot_height(r.root_index)?))
    }

    /// `s_alpha . lambda = lambda - <lambda + rho0, alpha^vee> alpha`, moving only
    /// component `sigma`.
    pub fn dot_reflect(&self, weight: &WeightL, r: GlobalRoot) -> Result<WeightL> {
        let shift = self.shifted_pairing(weight, r)?;
        let mut out = weight.clone();
        self.base
            .subtract_root_multiple(&mut out.components[r.sigma], r.root_index, &shift);
        Ok(out)
    }

    /// Applies `s_{word[0]} ... s_{word[r-1]}` with the rightmost reflection
    /// acting first.
    pub fn dot_action(&self, weight: &WeightL, word: &[GlobalRoot]) -> Result<WeightL> {
        self.check_weight(weight)?;
        word.iter()
            .rev()
            .try_fold(weight.clone(), |w, &r| self.dot_reflect(&w, r))
    }

    pub fn is_alpha_integral(&self, chi: &LocAnChar, r: GlobalRoot) -> Result<bool> {
        Ok(is_integer(&self.global_pairing(&chi.algebraic, r)?))
    }

    pub fn is_alpha_dominant(&self, chi: &LocAnChar, r: GlobalRoot, convention: Convention) -> Result<bool> {
        Ok(match convention {
            Convention::Paper => is_nonnegative_integer(&self.global_pairing(&chi.algebraic, r)?),
            Convention::Shifted => is_positive_integer(&self.shifted_pairing(&chi.algebraic, r)?),
        })
    }

    /// `s_alpha . chi = chi * alpha^{-<dchi + rho0, alpha^vee>}`; defined only when
    /// `chi` is locally alpha-integral.
    pub fn dot_reflect_char(&self, chi: &LocAnChar, r: GlobalRoot) -> Result<LocAnChar> {
        let p = self.global_pairing(&chi.algebraic, r)?;
        if !is_integer(&p) {
            return Err(Error::NotIntegral {
                pairing: rational::format(&p),
            });
        }
        Ok(LocAnChar {
            algebraic: self.dot_reflect(&chi.algebraic, r)?,
            smooth_tag: chi.smooth_tag.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn ctx(name: &str, s: usize) -> EmbeddingContext {
        EmbeddingContext::new(RootSystem::named(name).unwrap(), s).unwrap()
    }

    fn ch(w: WeightL) -> LocAnChar {
        LocAnChar::new(w, "t")
    }

    #[test]
    fn global_pairing_reads_one_component() {
        let c = ctx("A_1", 2);
        let w = WeightL::from_ints(&[&[3], &[5]]);
        assert_eq!(c.global_pairing(&w, GlobalRoot::new(1, 0)).unwrap(), int(5));
        assert_eq!(c.global_pairing(&w, GlobalRoot::new(0, 0)).unwrap(), int(3));

        let c2 = ctx("A_2", 1);
        let rho = c2.rho0();
        for k in 0..2 {
            assert_eq!(c2.global_pairing(&rho, GlobalRoot::new(0, k)).unwrap(), int(1));
        }
        let w = WeightL::from_ints(&[&[1, 1]]);
        assert_eq!(c2.global_pairing(&w, GlobalRoot::new(0, 2)).unwrap(), int(2));
    }

    #[test]
    fn context_mismatch() {
        let c = ctx("A_1", 2);
        let w = WeightL::from_ints(&[&[3]]);
        assert!(matches!(
            c.global_pairing(&w, GlobalRoot::new(0, 0)),
            Err(Error::ContextMismatch(_))
        ));
        let w = WeightL::from_ints(&[&[3], &[1, 2]]);
        assert!(matches!(
            c.dot_reflect(&w, GlobalRoot::new(0, 0)),
            Err(Error::ContextMismatch(_))
        ));
        let w = WeightL::from_ints(&[&[3], &[1]]);
        assert!(matches!(
            c.dot_reflect(&w, GlobalRoot::new(2, 0)),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(EmbeddingContext::new(RootSystem::named("A_1").unwrap(), 0).is_err());
    }

    #[test]
    fn dot_reflect_examples() {
        let c = ctx("A_1", 1);
        let r = GlobalRoot::new(0, 0);
        let out = c.dot_reflect(&WeightL::from_ints(&[&[3]]), r).unwrap();
        assert_eq!(out, WeightL::from_ints(&[&[-5]]));

        let c2 = ctx("B_2", 2);
        let fixed = c2.neg_rho0();
        for r in c2.global_roots() {
            assert_eq!(c2.dot_reflect(&fixed, r).unwrap(), fixed);
        }

        let c = ctx("A_1", 2);
        let out = c
            .dot_reflect(&WeightL::from_ints(&[&[0], &[7]]), GlobalRoot::new(0, 0))
            .unwrap();
        assert_eq!(out, WeightL::from_ints(&[&[-2], &[7]]));
    }

    #[test]
    fn dot_action_examples() {
        let c = ctx("A_2", 1);
        let w = WeightL::from_ints(&[&[0, 0]]);
        assert_eq!(c.dot_action(&w, &[]).unwrap(), w);
        let r = GlobalRoot::new(0, 2);
        assert_eq!(c.dot_action(&w, &[r, r]).unwrap(), w);
        let a = GlobalRoot::new(0, 0);
        let b = GlobalRoot::new(0, 1);
        let lhs = c.dot_action(&w, &[a, b, a]).unwrap();
        let rhs = c.dot_action(&w, &[b, a, b]).unwrap();
        assert_eq!(lhs, rhs);
        // w0 . 0 = -2 rho0
        assert_eq!(lhs, WeightL::from_ints(&[&[-2, -2]]));
        // s_{a1} s_{a2} . 0: s_{a2} acts first
        let sab = c.dot_action(&w, &[a, b]).unwrap();
        let expected = c.dot_reflect(&c.dot_reflect(&w, b).unwrap(), a).unwrap();
        assert_eq!(sab, expected);
    }

    #[test]
    fn integrality_and_dominance() {
        let c = ctx("A_1", 1);
        let r = GlobalRoot::new(0, 0);
        let half = ch(WeightL::new(vec![vec![ratio(1, 2)]]));
        assert!(!c.is_alpha_integral(&half, r).unwrap());
        assert!(c.is_alpha_integral(&ch(WeightL::from_ints(&[&[-7]])), r).unwrap());
        for conv in [Convention::Paper, Convention::Shifted] {
            assert!(!c.is_alpha_dominant(&half, r, conv).unwrap());
        }
        let zero = ch(WeightL::from_ints(&[&[0]]));
        assert!(c.is_alpha_dominant(&zero, r, Convention::Paper).unwrap());
        assert!(c.is_alpha_dominant(&zero, r, Convention::Shifted).unwrap());
        let m1 = ch(WeightL::from_ints(&[&[-1]]));
        assert!(!c.is_alpha_dominant(&m1, r, Convention::Paper).unwrap());
        assert!(!c.is_alpha_dominant(&m1, r, Convention::Shifted).unwrap());

        let c2 = ctx("A_2", 1);
        let w = ch(WeightL::new(vec![vec![ratio(1, 3), ratio(2, 3)]]));
        assert!(c2.is_alpha_integral(&w, GlobalRoot::new(0, 2)).unwrap());
        assert!(!c2.is_alpha_integral(&w, GlobalRoot::new(0, 0)).unwrap());

        // The conventions differ on a non-simple root: <(-1,0), (a1+a2)^vee> = -1
        // fails the literal gate but passes the shifted one (-1 + 2 > 0).
        let w = ch(WeightL::from_ints(&[&[-1, 0]]));
        let hi = GlobalRoot::new(0, 2);
        assert!(!c2.is_alpha_dominant(&w, hi, Convention::Paper).unwrap());
        assert!(c2.is_alpha_dominant(&w, hi, Convention::Shifted).unwrap());
    }

    #[test]
    fn dot_reflect_char_examples() {
        let c = ctx("A_1", 1);
        let r = GlobalRoot::new(0, 0);
        let chi = LocAnChar::new(WeightL::from_ints(&[&[2]]), "θ");
        let out = c.dot_reflect_char(&chi, r).unwrap();
        assert_eq!(out, LocAnChar::new(WeightL::from_ints(&[&[-4]]), "θ"));

        let fixed = LocAnChar::new(c.neg_rho0(), "x");
        assert_eq!(c.dot_reflect_char(&fixed, r).unwrap(), fixed);

        let half = ch(WeightL::new(vec![vec![ratio(1, 2)]]));
        assert_eq!(
            c.dot_reflect_char(&half, r),
            Err(Error::NotIntegral { pairing: "1/2".into() })
        );
    }

    #[test]
    fn central_block_rides_along() {
        let base = Arc::new(RootSystem::named("A_1").unwrap());
        let c = EmbeddingContext::with_central(base, 1, 2).unwrap();
        let w = WeightL::new(vec![vec![int(4), ratio(1, 2), int(-3)]]);
        let out = c.dot_reflect(&w, GlobalRoot::new(0, 0)).unwrap();
        assert_eq!(out, WeightL::new(vec![vec![int(-6), ratio(1, 2), int(-3)]]));
        assert_eq!(c.rho0(), WeightL::new(vec![vec![int(1), int(0), int(0)]]));
    }
}
