//! Standard parabolics and central characters of their Levi factors.
//!
//! A parabolic is a subset `I` of the simple roots, applied identically in
//! every embedding. Two weights restrict to the same character of the Levi
//! center exactly when, in every embedding, their difference lies in the
//! rational span of `{alpha_i : i in I}` and their central blocks agree.

use std::collections::BTreeSet;
use std::fmt;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, int, is_positive_integer, Rational};
use crate::rootsys::RootSystem;
use crate::weights::{EmbeddingContext, LocAnChar, WeightL};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicSubset {
    indices: BTreeSet<usize>,
    rank: usize,
    /// Reduced row echelon basis of `span{alpha_i : i in I}` in
    /// fundamental-weight coordinates, as `(pivot column, row)`.
    echelon: Vec<(usize, Vec<Rational>)>,
}

impl ParabolicSubset {
    /// `indices` are 0-based simple-root indices.
    pub fn new(rs: &RootSystem, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let indices: BTreeSet<usize> = indices.into_iter().collect();
        for &i in &indices {
            rs.check_simple(i)?;
        }
        let rows: Vec<Vec<Rational>> = indices
            .iter()
            .map(|&i| rs.root_weight(i).map(|w| w.iter().map(|&c| int(c)).collect()))
            .collect::<Result<_>>()?;
        Ok(Self {
            echelon: row_echelon(rows, rs.rank()),
            indices,
            rank: rs.rank(),
        })
    }

    pub fn borel(rs: &RootSystem) -> Self {
        Self::new(rs, []).expect("empty subset is always valid")
    }

    pub fn full(rs: &RootSystem) -> Self {
        Self::new(rs, 0..rs.rank()).expect("all simple indices are valid")
    }

    pub fn indices(&self) -> &BTreeSet<usize> {
        &self.indices
    }

    pub fn is_borel(&self) -> bool {
        self.indices.is_empty()
    }

    fn check_context(&self, ctx: &EmbeddingContext) -> Result<()> {
        if ctx.base().rank() != self.rank {
            return Err(Error::ContextMismatch(format!(
                "parabolic built for rank {}, context has rank {}",
                self.rank,
                ctx.base().rank()
            )));
        }
        Ok(())
    }

    /// First simple index `i in I` (in some embedding) where
    /// `<lambda + rho0, alpha_i^vee>` is not a positive integer.
    pub fn lambda_p_plus_violation(&self, ctx: &EmbeddingContext, weight: &WeightL) -> Result<Option<usize>> {
        self.check_context(ctx)?;
        ctx.check_weight(weight)?;
        for component in &weight.components {
            for &i in &self.indices {
                // simple coroot pairing is the coordinate itself, rho0 adds one
                if !is_positive_integer(&(&component[i] + Rational::one())) {
                    return Ok(Some(i));
                }
            }
        }
        Ok(None)
    }

    pub fn in_lambda_p_plus(&self, ctx: &EmbeddingContext, weight: &WeightL) -> Result<bool> {
        Ok(self.lambda_p_plus_violation(ctx, weight)?.is_none())
    }

    pub fn equal_on_center(&self, ctx: &EmbeddingContext, lhs: &WeightL, rhs: &WeightL) -> Result<bool> {
        self.check_context(ctx)?;
        ctx.check_weight(lhs)?;
        ctx.check_weight(rhs)?;
        let rank = self.rank;
        Ok(lhs.components.iter().zip(&rhs.components).all(|(a, b)| {
            let mut diff: Vec<Rational> = a.iter().zip(b).map(|(x, y)| x - y).collect();
            let central_equal = diff[rank..].iter().all(Zero::is_zero);
            self.reduce(&mut diff[..rank]);
            central_equal && diff.iter().all(Zero::is_zero)
        }))
    }

    /// Canonical representative of `v` modulo the Levi root span: clears every
    /// pivot coordinate of the echelon basis.
    fn reduce(&self, v: &mut [Rational]) {
        for (pivot, row) in &self.echelon {
            if v[*pivot].is_zero() {
                continue;
            }
            let factor = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &factor * r;
                }
            }
        }
    }

    pub fn central_class_key(&self, ctx: &EmbeddingContext, chi: &LocAnChar, pi_tag: &str) -> Result<CentralKey> {
        self.check_context(ctx)?;
        ctx.check_weight(&chi.algebraic)?;
        let reduced = chi
            .algebraic
            .components
            .iter()
            .map(|c| {
                let mut v = c.clone();
                self.reduce(&mut v[..self.rank]);
                v
            })
            .collect();
        Ok(CentralKey {
            reduced,
            smooth_tag: chi.smooth_tag.clone(),
            pi_tag: pi_tag.to_string(),
        })
    }
}

/// Reduced row echelon form over `Q`; returns the nonzero rows with their
/// pivot columns, pivots normalized to one.
fn row_echelon(mut rows: Vec<Vec<Rational>>, cols: usize) -> Vec<(usize, Vec<Rational>)> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots.into_iter().zip(rows).collect()
}

/// Identifies the character `chi' * omega_pi` of the Levi center: the weight
/// reduced modulo the Levi roots per embedding, plus both smooth labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CentralKey {
    pub reduced: Vec<Vec<Rational>>,
    pub smooth_tag: String,
    pub pi_tag: String,
}

impl CentralKey {
    pub fn reduced_strings(&self) -> Vec<Vec<String>> {
        self.reduced
            .iter()
            .map(|c| c.iter().map(rational::format).collect())
            .collect()
    }
}

impl fmt::Display for CentralKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self
            .reduced
            .iter()
            .map(|c| {
                let xs: Vec<String> = c.iter().map(rational::format).collect();
                format!("({})", xs.join(","))
            })
            .collect();
        write!(f, "{}*{}@{}", self.smooth_tag, self.pi_tag, comps.join(";"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn a2() -> (EmbeddingContext, ParabolicSubset) {
        let rs = RootSystem::named("A_2").unwrap();
        let p = ParabolicSubset::new(&rs, [0]).unwrap();
        (EmbeddingContext::new(rs, 1).unwrap(), p)
    }

    #[test]
    fn lambda_p_plus() {
        let (ctx, p) = a2();
        assert!(p.in_lambda_p_plus(&ctx, &WeightL::from_ints(&[&[0, 0]])).unwrap());
        assert!(!p.in_lambda_p_plus(&ctx, &WeightL::from_ints(&[&[-1, 0]])).unwrap());
        assert!(p.in_lambda_p_plus(&ctx, &WeightL::from_ints(&[&[3, -9]])).unwrap());
        let half = WeightL::new(vec![vec![ratio(1, 2), int(0)]]);
        assert!(!p.in_lambda_p_plus(&ctx, &half).unwrap());

        let borel = ParabolicSubset::borel(ctx.base());
        assert!(borel.in_lambda_p_plus(&ctx, &half).unwrap());
        assert!(borel.in_lambda_p_plus(&ctx, &WeightL::from_ints(&[&[-5, -5]])).unwrap());
    }

    #[test]
    fn lambda_p_plus_checks_every_embedding() {
        let rs = RootSystem::named("A_1").unwrap();
        let p = ParabolicSubset::full(&rs);
        let ctx = EmbeddingContext::new(rs, 2).unwrap();
        assert!(p.in_lambda_p_plus(&ctx, &WeightL::from_ints(&[&[0], &[4]])).unwrap());
        assert!(!p.in_lambda_p_plus(&ctx, &WeightL::from_ints(&[&[0], &[-1]])).unwrap());
    }

    #[test]
    fn center_equality_examples() {
        let (ctx, p) = a2();
        let z = WeightL::from_ints(&[&[0, 0]]);
        let a1 = WeightL::from_ints(&[&[2, -1]]);
        let a2 = WeightL::from_ints(&[&[-1, 2]]);
        assert!(p.equal_on_center(&ctx, &z, &z).unwrap());
        assert!(p.equal_on_center(&ctx, &a1, &z).unwrap());
        assert!(!p.equal_on_center(&ctx, &a2, &z).unwrap());
    }

    #[test]
    fn keys_group_by_center() {
        let (ctx, p) = a2();
        let key = |w: &[i64], tag: &str| {
            p.central_class_key(&ctx, &LocAnChar::new(WeightL::from_ints(&[w]), tag), "ω")
                .unwrap()
        };
        let k0 = key(&[0, 0], "θ");
        assert_eq!(k0, key(&[2, -1], "θ"));
        assert_eq!(k0, key(&[4, -2], "θ"));
        assert_ne!(k0, key(&[-1, 2], "θ"));
        assert_ne!(k0, key(&[0, 0], "θ'"));
        // pivot coordinate is cleared
        assert_eq!(k0.reduced, vec![vec![int(0), int(0)]]);
        assert_eq!(key(&[1, 0], "θ").reduced, vec![vec![int(0), ratio(1, 2)]]);
        assert_eq!(k0.to_string(), "θ*ω@(0/1,0/1)");
    }

    #[test]
    fn full_parabolic_collapses_semisimple_part() {
        let rs = RootSystem::named("B_2").unwrap();
        let p = ParabolicSubset::full(&rs);
        let ctx = EmbeddingContext::new(rs, 2).unwrap();
        let a = WeightL::new(vec![vec![ratio(3, 7), int(-2)], vec![int(5), ratio(1, 9)]]);
        assert!(p.equal_on_center(&ctx, &a, &ctx.zero()).unwrap());
    }

    #[test]
    fn central_block_must_agree() {
        let base = std::sync::Arc::new(RootSystem::named("A_1").unwrap());
        let ctx = EmbeddingContext::with_central(base, 1, 1).unwrap();
        let p = ParabolicSubset::full(ctx.base());
        let a = WeightL::from_ints(&[&[3, 1]]);
        let b = WeightL::from_ints(&[&[-7, 1]]);
        let c = WeightL::from_ints(&[&[3, 2]]);
        assert!(p.equal_on_center(&ctx, &a, &b).unwrap());
        assert!(!p.equal_on_center(&ctx, &a, &c).unwrap());
    }

    #[test]
    fn bad_indices_and_contexts() {
        let rs = RootSystem::named("A_2").unwrap();
        assert!(matches!(
            ParabolicSubset::new(&rs, [2]),
            Err(Error::IndexOutOfRange { index: 2, len: 2 })
        ));
        let p = ParabolicSubset::new(&rs, [1]).unwrap();
        let other = EmbeddingContext::new(RootSystem::named("A_3").unwrap(), 1).unwrap();
        assert!(matches!(
            p.in_lambda_p_plus(&other, &other.zero()),
            Err(Error::ContextMismatch(_))
        ));
    }

    #[test]
    fn echelon_of_dependent_rows() {
        let rows = vec![vec![int(2), int(-1)], vec![int(4), int(-2)], vec![int(0), int(3)]];
        let e = row_echelon(rows, 2);
        assert_eq!(e.len(), 2);
        assert_eq!(e[0], (0, vec![int(1), int(0)]));
        assert_eq!(e[1], (1, vec![int(0), int(1)]));
    }
}
