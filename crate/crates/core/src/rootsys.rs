//! Split root systems of finite type built from Cartan data.
//!
//! Conventions: the Cartan matrix entry `a[i][j]` is `<alpha_j, alpha_i^vee>`.
//! Roots are integer coefficient vectors over the simple roots, coroots are
//! integer coefficient vectors over the simple coroots, and weights are given
//! in fundamental-weight coordinates (`lambda_i = <lambda, alpha_i^vee>`).

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use num::{BigInt, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// Explicit matrices are limited to this rank (the finite-type test visits
/// every principal minor). Named types have no limit.
const MAX_EXPLICIT_RANK: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CartanKind {
    /// A product of named types such as `"A_2xB_3"` (underscores optional).
    Named(String),
    Matrix(Vec<Vec<i64>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanSpec {
    pub kind: CartanKind,
    /// Expected rank; checked against the Cartan data when present.
    pub rank: Option<usize>,
}

impl CartanSpec {
    pub fn named(name: impl Into<String>) -> Self {
        Self {
            kind: CartanKind::Named(name.into()),
            rank: None,
        }
    }

    pub fn matrix(matrix: Vec<Vec<i64>>) -> Self {
        Self {
            kind: CartanKind::Matrix(matrix),
            rank: None,
        }
    }

    pub fn with_rank(mut self, rank: usize) -> Self {
        self.rank = Some(rank);
        self
    }
}

/// One simple factor of a named product type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NamedFactor {
    pub letter: char,
    pub rank: usize,
}

impl fmt::Display for NamedFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.letter, self.rank)
    }
}

/// Parses `"A_2xA_1"`, `"a2 x b3"`, `"G2×A1"` into factors.
pub fn parse_named_type(name: &str) -> Result<Vec<NamedFactor>> {
    let bad = |msg: String| Error::InvalidCartan(msg);
    let trimmed = name.trim();
    if trimmed.is_empty() {
        return Err(bad("empty type name".into()));
    }
    let mut factors = Vec::new();
    for part in trimmed.split(['x', '×']) {
        let part = part.trim();
        let mut chars = part.chars();
        let letter = chars
            .next()
            .ok_or_else(|| bad(format!("empty factor in {name:?}")))?
            .to_ascii_uppercase();
        let digits = chars.as_str().trim_start_matches('_');
        let rank: usize = digits
            .parse()
            .map_err(|_| bad(format!("cannot read rank of factor {part:?}")))?;
        let ok = match letter {
            'A' => rank >= 1,
            'B' | 'C' => rank >= 2,
            'D' => rank >= 4,
            'E' => (6..=8).contains(&rank),
            'F' => rank == 4,
            'G' => rank == 2,
            _ => false,
        };
        if !ok {
            return Err(bad(format!("unknown or unsupported type {letter}_{rank}")));
        }
        factors.push(NamedFactor { letter, rank });
    }
    Ok(factors)
}

fn factor_cartan(factor: NamedFactor) -> Vec<Vec<i64>> {
    let n = factor.rank;
    let mut a = vec![vec![0i64; n]; n];
    let link = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    match factor.letter {
        'A' | 'B' | 'C' => {
            for i in 0..n - 1 {
                link(&mut a, i, i + 1);
            }
            // last simple root is short in B_n and long in C_n
            match factor.letter {
                'B' => a[n - 1][n - 2] = -2,
                'C' => a[n - 2][n - 1] = -2,
                _ => {}
            }
        }
        'D' => {
            for i in 0..n - 2 {
                link(&mut a, i, i + 1);
            }
            link(&mut a, n - 3, n - 1);
        }
        'E' => {
            // Bourbaki labelling: 1-3-4-5-...-n with 2 attached to 4.
            link(&mut a, 0, 2);
            link(&mut a, 1, 3);
            for i in 2..n - 1 {
                link(&mut a, i, i + 1);
            }
        }
        'F' => {
            link(&mut a, 0, 1);
            link(&mut a, 1, 2);
            link(&mut a, 2, 3);
            a[2][1] = -2;
        }
        'G' => {
            a[0][1] = -3;
            a[1][0] = -1;
        }
        _ => unreachable!("validated by parse_named_type"),
    }
    a
}

fn block_diagonal(blocks: &[Vec<Vec<i64>>]) -> Vec<Vec<i64>> {
    let n: usize = blocks.iter().map(Vec::len).sum();
    let mut out = vec![vec![0i64; n]; n];
    let mut offset = 0;
    for block in blocks {
        for (i, row) in block.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                out[offset + i][offset + j] = v;
            }
        }
        offset += block.len();
    }
    out
}

/// Fraction-free (Bareiss) determinant of a small integer matrix.
fn determinant(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Checks the generalized Cartan matrix axioms and finite type (every
/// principal minor positive).
pub fn validate_cartan(a: &[Vec<i64>]) -> Result<()> {
    let n = a.len();
    if n == 0 {
        return Err(Error::InvalidCartan("empty matrix".into()));
    }
    if let Some((i, row)) = a.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(Error::InvalidCartan(format!(
            "row {i} has length {}, expected {n}",
            row.len()
        )));
    }
    for (i, row) in a.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if i == j && v != 2 {
                return Err(Error::InvalidCartan(format!("diagonal entry ({i},{i}) is {v}")));
            }
            if i != j {
                if v > 0 {
                    return Err(Error::InvalidCartan(format!("entry ({i},{j}) is positive")));
                }
                if v < -3 {
                    return Err(Error::InvalidCartan(format!(
                        "entry ({i},{j}) = {v} is below -3 (not of finite type)"
                    )));
                }
                if (v == 0) != (a[j][i] == 0) {
                    return Err(Error::InvalidCartan(format!(
                        "entries ({i},{j}) and ({j},{i}) disagree on vanishing"
                    )));
                }
            }
        }
    }
    if n > MAX_EXPLICIT_RANK {
        return Err(Error::InvalidCartan(format!(
            "explicit matrices are limited to rank {MAX_EXPLICIT_RANK}; use a named type"
        )));
    }
    for mask in 1u32..(1u32 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let sub: Vec<Vec<i128>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| a[i][j] as i128).collect())
            .collect();
        if determinant(&sub) <= 0 {
            return Err(Error::InvalidCartan(format!(
                "principal minor on indices {idx:?} is not positive (not of finite type)"
            )));
        }
    }
    Ok(())
}

/// Root data of a split semisimple root system. Immutable after construction.
#[derive(Debug, Clone)]
pub struct RootSystem {
    label: String,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
    coroot_coeffs: Vec<Vec<i64>>,
    /// Positive roots in fundamental-weight coordinates.
    root_weights: Vec<Vec<i64>>,
    coroot_heights: Vec<i64>,
    root_lookup: HashMap<Vec<i64>, usize>,
    /// `simple_action[i][k]`: image of signed root `k` under `s_i`. Signed
    /// index `k < N` is positive root `k`, `k >= N` is the negative of `k - N`.
    simple_action: Vec<Vec<usize>>,
}

impl RootSystem {
    pub fn build(spec: &CartanSpec) -> Result<Self> {
        let (label, cartan) = match &spec.kind {
            CartanKind::Named(name) => {
                let factors = parse_named_type(name)?;
                let label = factors.iter().map(ToString::to_string).collect::<Vec<_>>().join("x");
                let blocks: Vec<_> = factors.into_iter().map(factor_cartan).collect();
                (label, block_diagonal(&blocks))
            }
            CartanKind::Matrix(m) => {
                validate_cartan(m)?;
                ("matrix".to_string(), m.clone())
            }
        };
        if let Some(expected) = spec.rank {
            if expected != cartan.len() {
                return Err(Error::RankMismatch {
                    expected,
                    found: cartan.len(),
                });
            }
        }
        Self::from_cartan(label, cartan)
    }

    /// Shorthand for a named type.
    pub fn named(name: &str) -> Result<Self> {
        Self::build(&CartanSpec::named(name))
    }

    fn from_cartan(label: String, cartan: Vec<Vec<i64>>) -> Result<Self> {
        let n = cartan.len();
        let unit = |i: usize| {
            let mut v = vec![0i64; n];
            v[i] = 1;
            v
        };
        // Reflection closure of (root, coroot) pairs starting at the simple ones.
        let mut roots: Vec<(Vec<i64>, Vec<i64>)> = (0..n).map(|i| (unit(i), unit(i))).collect();
        let mut seen: HashSet<Vec<i64>> = roots.iter().map(|(r, _)| r.clone()).collect();
        let mut queue: VecDeque<usize> = (0..n).collect();
        let cap = 64 * n * n + 64;
        while let Some(k) = queue.pop_front() {
            for i in 0..n {
                let (root, coroot) = &roots[k];
                let p: i64 = (0..n).map(|j| cartan[i][j] * root[j]).sum();
                let q: i64 = (0..n).map(|j| cartan[j][i] * coroot[j]).sum();
                let mut r2 = root.clone();
                r2[i] -= p;
                let mut c2 = coroot.clone();
                c2[i] -= q;
                if r2.iter().all(|&c| c >= 0) && !seen.contains(&r2) {
                    seen.insert(r2.clone());
                    roots.push((r2, c2));
                    queue.push_back(roots.len() - 1);
                    if roots.len() > cap {
                        return Err(Error::InvalidCartan("root closure does not terminate".into()));
                    }
                }
            }
        }
        // height ascending, then coefficient vector descending, so simple root i
        // sits at index i
        roots.sort_by(|(a, _), (b, _)| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let (positive_roots, coroot_coeffs): (Vec<_>, Vec<_>) = roots.into_iter().unzip();
        let root_weights: Vec<Vec<i64>> = positive_roots
            .iter()
            .map(|c| (0..n).map(|i| (0..n).map(|j| cartan[i][j] * c[j]).sum()).collect())
            .collect();
        let coroot_heights = coroot_coeffs.iter().map(|d| d.iter().sum()).collect();
        let root_lookup: HashMap<Vec<i64>, usize> =
            positive_roots.iter().enumerate().map(|(k, r)| (r.clone(), k)).collect();

        let np = positive_roots.len();
        let mut simple_action = vec![vec![0usize; 2 * np]; n];
        for (i, action) in simple_action.iter_mut().enumerate() {
            for k in 0..np {
                let root = &positive_roots[k];
                let p: i64 = (0..n).map(|j| cartan[i][j] * root[j]).sum();
                let mut image = root.clone();
                image[i] -= p;
                let (neg, key) = if image.iter().all(|&c| c >= 0) {
                    (false, image)
                } else {
                    (true, image.iter().map(|c| -c).collect())
                };
                let idx = *root_lookup
                    .get(&key)
                    .ok_or_else(|| Error::InvalidCartan("reflection does not preserve the root set".into()))?;
                action[k] = if neg { idx + np } else { idx };
                action[k + np] = if neg { idx } else { idx + np };
            }
        }

        Ok(Self {
            label,
            cartan,
            positive_roots,
            coroot_coeffs,
            root_weights,
            coroot_heights,
            root_lookup,
            simple_action,
        })
    }

    /// Normalized type label (`"A_2xA_1"`) or `"matrix"`.
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn root(&self, index: usize) -> Result<&[i64]> {
        self.check_root(index)?;
        Ok(&self.positive_roots[index])
    }

    pub fn coroot(&self, index: usize) -> Result<&[i64]> {
        self.check_root(index)?;
        Ok(&self.coroot_coeffs[index])
    }

    /// The root in fundamental-weight coordinates.
    pub fn root_weight(&self, index: usize) -> Result<&[i64]> {
        self.check_root(index)?;
        Ok(&self.root_weights[index])
    }

    /// `<rho0, alpha^vee>`, the height of the coroot.
    pub fn coroot_height(&self, index: usize) -> Result<i64> {
        self.check_root(index)?;
        Ok(self.coroot_heights[index])
    }

    pub fn root_index(&self, coeffs: &[i64]) -> Option<usize> {
        self.root_lookup.get(coeffs).copied()
    }

    /// `rho0` in fundamental-weight coordinates: all ones.
    pub fn rho0(&self) -> Vec<Rational> {
        vec![int(1); self.rank()]
    }

    fn check_root(&self, index: usize) -> Result<()> {
        if index < self.positive_roots.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                len: self.positive_roots.len(),
            })
        }
    }

    pub(crate) fn check_simple(&self, index: usize) -> Result<()> {
        if index < self.rank() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                len: self.rank(),
            })
        }
    }

    /// `<weight, alpha^vee>` for the positive root at `root_index`.
    pub fn pairing(&self, weight: &[Rational], root_index: usize) -> Result<Rational> {
        if weight.len() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: weight.len(),
            });
        }
        self.check_root(root_index)?;
        Ok(self.pair_unchecked(weight, root_index))
    }

    /// Reads only the first `rank` coordinates; trailing central coordinates
    /// do not pair with coroots.
    pub(crate) fn pair_unchecked(&self, weight: &[Rational], root_index: usize) -> Rational {
        let terms = || {
            self.coroot_coeffs[root_index]
                .iter()
                .zip(weight)
                .filter(|(d, _)| **d != 0)
        };
        if terms().all(|(_, w)| w.is_integer()) {
            // integral fast path: no reductions needed
            let sum = terms().fold(BigInt::zero(), |acc, (d, w)| acc + w.numer() * *d);
            return Rational::from_integer(sum);
        }
        terms().fold(Rational::zero(), |acc, (d, w)| acc + w * int(*d))
    }

    /// Subtracts `shift * alpha` from `weight` in place (semisimple block only).
    pub(crate) fn subtract_root_multiple(&self, weight: &mut [Rational], root_index: usize, shift: &Rational) {
        for (w, &c) in weight.iter_mut().zip(&self.root_weights[root_index]) {
            if c == 0 {
                continue;
            }
            if shift.is_integer() {
                // (n - k d) / d stays in lowest terms
                let numer = w.numer() - shift.numer() * c * w.denom();
                *w = Rational::new_raw(numer, w.denom().clone());
            } else {
                *w -= shift * int(c);
            }
        }
    }

    /// Linear reflection `s_alpha(weight) = weight - <weight, alpha^vee> alpha`.
    /// Coordinates past the rank are carried along unchanged.
    pub fn reflect_weight(&self, root_index: usize, weight: &[Rational]) -> Result<Vec<Rational>> {
        self.check_root(root_index)?;
        if weight.len() < self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: weight.len(),
            });
        }
        let p = self.pair_unchecked(weight, root_index);
        let mut out = weight.to_vec();
        self.subtract_root_multiple(&mut out, root_index, &p);
        Ok(out)
    }

    /// Image of a positive root under the simple reflection `s_i`, as
    /// `(is_negative, positive_root_index)`.
    pub fn reflect_root_by_simple(&self, simple: usize, root_index: usize) -> Result<(bool, usize)> {
        self.check_simple(simple)?;
        self.check_root(root_index)?;
        let np = self.num_positive_roots();
        let image = self.simple_action[simple][root_index];
        Ok(if image >= np {
            (true, image - np)
        } else {
            (false, image)
        })
    }

    /// Enumerates the Weyl group by BFS on right multiplication by simple
    /// reflections. Words are reduced (BFS order). Fails once more than
    /// `size_guard` elements are found.
    pub fn weyl_generate(&self, size_guard: usize) -> Result<Vec<WeylElement>> {
        let identity = WeylElement::identity(self);
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        seen.insert(identity.perm.clone());
        let mut elements = vec![identity];
        if elements.len() > size_guard {
            return Err(Error::GroupTooLarge { guard: size_guard });
        }
        let mut head = 0;
        while head < elements.len() {
            for i in 0..self.rank() {
                let next = elements[head].times_simple(self, i);
                if seen.insert(next.perm.clone()) {
                    elements.push(next);
                    if elements.len() > size_guard {
                        return Err(Error::GroupTooLarge { guard: size_guard });
                    }
                }
            }
            head += 1;
        }
        Ok(elements)
    }
}

/// An element of the Weyl group, remembered by a word in the simple
/// reflections and identified by its permutation of the signed roots.
#[derive(Debug, Clone)]
pub struct WeylElement {
    word: Vec<usize>,
    perm: Vec<u32>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.perm == other.perm
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.perm.hash(state);
    }
}

impl WeylElement {
    pub fn identity(rs: &RootSystem) -> Self {
        Self {
            word: Vec::new(),
            perm: (0..2 * rs.num_positive_roots() as u32).collect(),
        }
    }

    /// The element `s_{word[0]} s_{word[1]} ... s_{word[r-1]}`; any word is
    /// accepted.
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Result<Self> {
        let mut w = Self::identity(rs);
        for &i in word {
            rs.check_simple(i)?;
            w = w.times_simple(rs, i);
        }
        Ok(w)
    }

    fn times_simple(&self, rs: &RootSystem, i: usize) -> Self {
        let action = &rs.simple_action[i];
        let perm = action.iter().map(|&k| self.perm[k]).collect();
        let mut word = self.word.clone();
        word.push(i);
        Self { word, perm }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Canonical form: image of each signed root (positive roots first, then
    /// their negatives).
    pub fn permutation(&self) -> &[u32] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(k, &v)| k as u32 == v)
    }

    /// Length = number of positive roots sent to negative roots.
    pub fn length(&self) -> usize {
        let np = self.perm.len() / 2;
        self.perm[..np].iter().filter(|&&v| v as usize >= np).count()
    }

    /// Linear action on a weight (rightmost letter acts first).
    pub fn act(&self, rs: &RootSystem, weight: &[Rational]) -> Result<Vec<Rational>> {
        let mut out = weight.to_vec();
        for &i in self.word.iter().rev() {
            out = rs.reflect_weight(i, &out)?;
        }
        Ok(out)
    }

    /// Dot action `w(weight + rho0) - rho0`.
    pub fn dot(&self, rs: &RootSystem, weight: &[Rational]) -> Result<Vec<Rational>> {
        let n = rs.rank();
        let mut shifted = weight.to_vec();
        for w in shifted.iter_mut().take(n) {
            *w += int(1);
        }
        let mut out = self.act(rs, &shifted)?;
        for w in out.iter_mut().take(n) {
            *w -= int(1);
        }
        Ok(out)
    }
}
