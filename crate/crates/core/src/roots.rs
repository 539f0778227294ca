//! Positive-root combinatorics for the orthogonal root systems B_n and D_n.
//!
//! Roots are kept symbolically as `(kind, i, j)` triples rather than as
//! vectors in R^n; all vector arithmetic is done by case analysis so that
//! everything stays exact and hashable. The matrix rows and columns of the
//! associated algebra are labelled `1, …, n, 0, −n, …, −1` and ordered by the
//! mirror order `1 ≺ 2 ≺ … ≺ n ≺ 0 ≺ −n ≺ … ≺ −1`.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// The two orthogonal families handled by this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    B,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::B => write!(f, "B"),
            Family::D => write!(f, "D"),
        }
    }
}

impl FromStr for Family {
    type Err = RootError;

    fn from_str(s: &str) -> Result<Self, RootError> {
        match s.trim() {
            "B" | "b" => Ok(Family::B),
            "D" | "d" => Ok(Family::D),
            other => Err(RootError::BadFamily(other.to_string())),
        }
    }
}

/// A positive root of B_n or D_n.
///
/// `Diff(i, j)` is ε_i − ε_j, `Sum(i, j)` is ε_i + ε_j (both need i < j) and
/// `Short(i)` is ε_i, which only exists in family B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Root {
    Diff(usize, usize),
    Sum(usize, usize),
    Short(usize),
}

impl Root {
    /// Column of the root: the smaller index i.
    pub fn col(self) -> usize {
        match self {
            Root::Diff(i, _) | Root::Sum(i, _) | Root::Short(i) => i,
        }
    }

    /// Row of the root: +j for ε_i−ε_j, −j for ε_i+ε_j, 0 for ε_i.
    ///
    /// `(row, col)` is exactly the matrix position of the basis vector e_α
    /// in the mirror-labelled grid.
    pub fn row(self) -> i64 {
        match self {
            Root::Diff(_, j) => j as i64,
            Root::Sum(_, j) => -(j as i64),
            Root::Short(_) => 0,
        }
    }

    /// Coefficient of ε_k in the root.
    pub fn coeff(self, k: usize) -> i64 {
        match self {
            Root::Diff(i, j) => {
                if k == i {
                    1
                } else if k == j {
                    -1
                } else {
                    0
                }
            }
            Root::Sum(i, j) => {
                if k == i || k == j {
                    1
                } else {
                    0
                }
            }
            Root::Short(i) => {
                if k == i {
                    1
                } else {
                    0
                }
            }
        }
    }

    /// The one or two coordinate indices the root touches.
    pub fn indices(self) -> (usize, Option<usize>) {
        match self {
            Root::Diff(i, j) | Root::Sum(i, j) => (i, Some(j)),
            Root::Short(i) => (i, None),
        }
    }

    /// Euclidean inner product of two roots.
    pub fn dot(self, other: Root) -> i64 {
        let (i, j) = self.indices();
        let mut s = self.coeff(i) * other.coeff(i);
        if let Some(j) = j {
            s += self.coeff(j) * other.coeff(j);
        }
        s
    }

    /// Squared length: 2 for long roots, 1 for short.
    pub fn norm_sq(self) -> i64 {
        self.dot(self)
    }

    /// Full coordinate vector in Z^n, for test oracles.
    pub fn coords(self, n: usize) -> Vec<i64> {
        (1..=n).map(|k| self.coeff(k)).collect()
    }

    /// Reconstruct a positive root from a sparse coefficient list, if the
    /// coefficients form one. `Short` needs family B.
    pub fn from_coeffs(pairs: &[(usize, i64)], family: Family, n: usize) -> Option<Root> {
        let mut nonzero: Vec<(usize, i64)> = pairs.iter().copied().filter(|&(_, c)| c != 0).collect();
        nonzero.sort();
        nonzero.dedup();
        match nonzero.as_slice() {
            [(i, 1)] if *i >= 1 && *i <= n && family == Family::B => Some(Root::Short(*i)),
            [(i, 1), (j, -1)] if *i < *j && *j <= n && *i >= 1 => Some(Root::Diff(*i, *j)),
            [(i, 1), (j, 1)] if *i < *j && *j <= n && *i >= 1 => Some(Root::Sum(*i, *j)),
            _ => None,
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Root::Diff(i, j) => write!(f, "e{}-e{}", i, j),
            Root::Sum(i, j) => write!(f, "e{}+e{}", i, j),
            Root::Short(i) => write!(f, "e{}", i),
        }
    }
}

impl Serialize for Root {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Root {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_root(&s).map_err(serde::de::Error::custom)
    }
}

/// Errors from root construction, parsing and lookup.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("rank must be at least 2, got {0}")]
    RankTooSmall(usize),
    #[error("unknown family `{0}` (expected B or D)")]
    BadFamily(String),
    #[error("cannot parse root token `{0}`")]
    BadToken(String),
    #[error("root {0} does not belong to the system")]
    RootNotInSystem(Root),
    #[error("mirror index {0} is invalid for {1}{2}")]
    BadMirrorIndex(i64, Family, usize),
}

/// A matrix row/column label together with the mirror order
/// `1 ≺ 2 ≺ … ≺ n ≺ 0 ≺ −n ≺ … ≺ −1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MirrorIndex(i64);

impl MirrorIndex {
    /// Validate a label against the ambient family and rank. Label 0 only
    /// exists in family B.
    pub fn new(value: i64, family: Family, n: usize) -> Result<Self, RootError> {
        let ok = if value == 0 {
            family == Family::B
        } else {
            value.unsigned_abs() as usize <= n && value.unsigned_abs() >= 1
        };
        if ok {
            Ok(MirrorIndex(value))
        } else {
            Err(RootError::BadMirrorIndex(value, family, n))
        }
    }

    pub fn value(self) -> i64 {
        self.0
    }
}

/// Sort key realizing the mirror order; independent of the rank.
fn mirror_key(label: i64) -> (u8, i64) {
    match label.signum() {
        1 => (0, label),
        0 => (1, 0),
        _ => (2, label),
    }
}

/// Strict mirror order on validated labels.
pub fn mirror_precedes(a: MirrorIndex, b: MirrorIndex) -> bool {
    mirror_key(a.0) < mirror_key(b.0)
}

/// Mirror order directly on raw labels; callers must have validated them.
pub fn mirror_precedes_raw(a: i64, b: i64) -> bool {
    mirror_key(a) < mirror_key(b)
}

/// Which of the two total orders on positive roots to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderVariant {
    /// α ≺ β iff col(β) ≺ col(α), or equal columns and row(β) ≺ row(α).
    Std,
    /// α ≺′ β iff col(β) ≺ col(α), or equal columns and row(β) ≻ row(α).
    Prime,
}

/// Strict total order α ≺ β (or α ≺′ β) on positive roots.
pub fn root_precedes(alpha: Root, beta: Root, variant: OrderVariant) -> bool {
    if alpha.col() != beta.col() {
        return beta.col() < alpha.col();
    }
    match variant {
        OrderVariant::Std => mirror_precedes_raw(beta.row(), alpha.row()),
        OrderVariant::Prime => mirror_precedes_raw(alpha.row(), beta.row()),
    }
}

/// The positive system of B_n or D_n with its canonical enumeration.
///
/// The canonical order is ascending column, then ascending row in the mirror
/// order, which is the descending `≺` order. Building the same system twice
/// yields identical sequences.
#[derive(Debug, Clone)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    positive_roots: Vec<Root>,
    index: HashMap<Root, usize>,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family && self.rank == other.rank
    }
}
impl Eq for RootSystem {}

impl RootSystem {
    /// Build B_n or D_n. Ranks below 2 are rejected.
    pub fn new(family: Family, rank: usize) -> Result<Self, RootError> {
        if rank < 2 {
            return Err(RootError::RankTooSmall(rank));
        }
        Ok(Self::reduced(family, rank))
    }

    /// Build a system of any rank, including the degenerate ranks 0 and 1
    /// that appear at the bottom of rank reductions. B_1 has the single
    /// positive root ε_1; D_1 and rank 0 are empty.
    pub fn reduced(family: Family, rank: usize) -> Self {
        let mut positive_roots = Vec::new();
        for i in 1..=rank {
            for j in i + 1..=rank {
                positive_roots.push(Root::Diff(i, j));
            }
            if family == Family::B {
                positive_roots.push(Root::Short(i));
            }
            for j in (i + 1..=rank).rev() {
                positive_roots.push(Root::Sum(i, j));
            }
        }
        let index = positive_roots
            .iter()
            .enumerate()
            .map(|(k, &r)| (r, k))
            .collect();
        RootSystem {
            family,
            rank,
            positive_roots,
            index,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Size of the matrix model: 2n+1 for B_n, 2n for D_n.
    pub fn matrix_size(&self) -> usize {
        match self.family {
            Family::B => 2 * self.rank + 1,
            Family::D => 2 * self.rank,
        }
    }

    /// Positive roots in canonical order.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    /// Simple roots: ε_i−ε_{i+1} plus ε_n (B) or ε_{n−1}+ε_n (D).
    pub fn simple_roots(&self) -> Vec<Root> {
        let n = self.rank;
        let mut delta: Vec<Root> = (1..n).map(|i| Root::Diff(i, i + 1)).collect();
        match self.family {
            Family::B => {
                if n >= 1 {
                    delta.push(Root::Short(n));
                }
            }
            Family::D => {
                if n >= 2 {
                    delta.push(Root::Sum(n - 1, n));
                }
            }
        }
        delta
    }

    pub fn contains(&self, root: Root) -> bool {
        self.index.contains_key(&root)
    }

    /// Position of a root in the canonical enumeration.
    pub fn root_index(&self, root: Root) -> Option<usize> {
        self.index.get(&root).copied()
    }

    /// Roots of the j-th column C_j.
    pub fn column(&self, j: usize) -> Vec<Root> {
        self.positive_roots
            .iter()
            .copied()
            .filter(|r| r.col() == j)
            .collect()
    }

    /// Roots of the i-th row R_i (mirror label).
    pub fn row_set(&self, i: i64) -> Vec<Root> {
        self.positive_roots
            .iter()
            .copied()
            .filter(|r| r.row() == i)
            .collect()
    }

    /// All β-singular pairs `(γ, δ)` with γ + δ = β, oriented so that
    /// col(γ) = col(β) (γ ∈ S⁺(β), δ ∈ S⁻(β)), sorted by `≺′` on δ.
    ///
    /// For β = ε_i + ε_j the pair (ε_i, ε_j) is present in family B and
    /// absent in family D.
    pub fn singular_pairs(&self, beta: Root) -> Result<Vec<(Root, Root)>, RootError> {
        if !self.contains(beta) {
            return Err(RootError::RootNotInSystem(beta));
        }
        let n = self.rank;
        let mut pairs: Vec<(Root, Root)> = Vec::new();
        match beta {
            Root::Diff(i, j) => {
                for l in i + 1..j {
                    pairs.push((Root::Diff(i, l), Root::Diff(l, j)));
                }
            }
            Root::Short(i) => {
                for l in i + 1..=n {
                    pairs.push((Root::Diff(i, l), Root::Short(l)));
                }
            }
            Root::Sum(i, j) => {
                for l in i + 1..j {
                    pairs.push((Root::Diff(i, l), Root::Sum(l, j)));
                }
                for l in j + 1..=n {
                    pairs.push((Root::Diff(i, l), Root::Sum(j, l)));
                }
                for l in j + 1..=n {
                    pairs.push((Root::Sum(i, l), Root::Diff(j, l)));
                }
                if self.family == Family::B {
                    pairs.push((Root::Short(i), Root::Short(j)));
                }
            }
        }
        pairs.sort_by(|a, b| {
            if a.1 == b.1 {
                std::cmp::Ordering::Equal
            } else if root_precedes(a.1, b.1, OrderVariant::Prime) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        Ok(pairs)
    }

    /// S⁻(β): the off-column members of the β-singular pairs.
    pub fn singular_minus(&self, beta: Root) -> Result<Vec<Root>, RootError> {
        Ok(self.singular_pairs(beta)?.into_iter().map(|(_, d)| d).collect())
    }
}

/// Parse one root token: `e<i>`, `e<i>-e<j>` or `e<i>+e<j>`, whitespace
/// insensitive. Structural bounds (i < j) are checked here; membership in a
/// concrete system is the caller's business.
pub fn parse_root(token: &str) -> Result<Root, RootError> {
    let compact: String = token.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || RootError::BadToken(token.to_string());
    let rest = compact.strip_prefix('e').ok_or_else(bad)?;
    let (sign_pos, sign) = match (rest.find('+'), rest.find('-')) {
        (None, None) => {
            let i: usize = rest.parse().map_err(|_| bad())?;
            if i == 0 {
                return Err(bad());
            }
            return Ok(Root::Short(i));
        }
        (Some(p), None) => (p, 1),
        (None, Some(p)) => (p, -1),
        (Some(_), Some(_)) => return Err(bad()),
    };
    let (left, right) = compact[1..].split_at(sign_pos);
    let i: usize = left.parse().map_err(|_| bad())?;
    let second = right[1..].strip_prefix('e').ok_or_else(bad)?;
    let j: usize = second.parse().map_err(|_| bad())?;
    if i == 0 || j == 0 || i >= j {
        return Err(bad());
    }
    Ok(if sign > 0 { Root::Sum(i, j) } else { Root::Diff(i, j) })
}

/// Parse a comma-separated placement list; the empty string is the empty
/// placement.
pub fn parse_root_list(list: &str) -> Result<Vec<Root>, RootError> {
    let trimmed: String = list.chars().filter(|c| !c.is_whitespace()).collect();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed.split(',').map(parse_root).collect()
}
