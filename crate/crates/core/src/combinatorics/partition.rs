use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::CombinatoricsError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeKind {
    Straight,
    Shifted,
}

/// A node `(row, col)` of a (shifted) Young diagram, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Node {
    pub row: usize,
    pub col: usize,
}

impl Node {
    pub const fn new(row: usize, col: usize) -> Self {
        Node { row, col }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl TryFrom<Vec<usize>> for Partition {
    type Error = CombinatoricsError;

    fn try_from(parts: Vec<usize>) -> Result<Self, Self::Error> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, CombinatoricsError> {
        if parts.contains(&0) {
            return Err(CombinatoricsError::InvalidPartition(parts, "parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(CombinatoricsError::InvalidPartition(parts, "parts must be weakly decreasing"));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The one-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition(vec![n])
        }
    }

    /// The hook `(k, 1^{n−k})`.
    pub fn hook(k: usize, n: usize) -> Self {
        assert!(k >= 1 && k <= n);
        let mut parts = vec![k];
        parts.extend(std::iter::repeat_n(1, n - k));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `λ_i` with 1-based `i`; zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(1);
        Partition((1..=first).map(|j| self.0.iter().filter(|&&x| x >= j).count()).collect())
    }

    pub fn is_strict(&self) -> bool {
        self.0.windows(2).all(|w| w[0] > w[1])
    }

    /// `Some(k)` when the partition is the hook `(k, 1^{n−k})`.
    pub fn hook_arm(&self) -> Option<usize> {
        match self.0.split_first() {
            Some((&k, rest)) if rest.iter().all(|&x| x == 1) => Some(k),
            _ => None,
        }
    }

    /// Column range of row `i` (1-based, inclusive).
    fn row_cols(&self, i: usize, kind: ShapeKind) -> Option<(usize, usize)> {
        let len = self.part(i);
        if len == 0 {
            return None;
        }
        match kind {
            ShapeKind::Straight => Some((1, len)),
            ShapeKind::Shifted => Some((i, i + len - 1)),
        }
    }

    pub fn contains(&self, node: Node, kind: ShapeKind) -> bool {
        match self.row_cols(node.row, kind) {
            Some((lo, hi)) => node.col >= lo && node.col <= hi,
            None => false,
        }
    }

    /// Nodes in row-reading order (top to bottom, left to right).
    pub fn nodes(&self, kind: ShapeKind) -> Vec<Node> {
        (1..=self.len())
            .flat_map(|i| {
                let (lo, hi) = self.row_cols(i, kind).expect("row exists");
                (lo..=hi).map(move |j| Node::new(i, j))
            })
            .collect()
    }

    fn require_shape(&self, kind: ShapeKind) -> Result<(), CombinatoricsError> {
        if kind == ShapeKind::Shifted && !self.is_strict() {
            return Err(CombinatoricsError::NotStrict(self.clone()));
        }
        Ok(())
    }

    /// Hook length of `node`; the shifted variant adjoins row `j+1` when the
    /// diagonal node `(j, j)` lies in the hook of `(i, j)`.
    pub fn hook_length(&self, node: Node, kind: ShapeKind) -> Result<usize, CombinatoricsError> {
        self.require_shape(kind)?;
        if !self.contains(node, kind) {
            return Err(CombinatoricsError::NodeOutside(node, self.clone()));
        }
        let Node { row: i, col: j } = node;
        match kind {
            ShapeKind::Straight => Ok(self.part(i) + self.conjugate().part(j) + 1 - i - j),
            ShapeKind::Shifted => {
                let (_, hi) = self.row_cols(i, kind).expect("row exists");
                let arm = hi - j + 1;
                let leg = (i + 1..=self.len())
                    .filter(|&r| self.contains(Node::new(r, j), kind))
                    .count();
                let wrap = if self.contains(Node::new(j, j), kind) && j >= i {
                    self.part(j + 1)
                } else {
                    0
                };
                Ok(arm + leg + wrap)
            }
        }
    }

    /// Number of standard tableaux by the hook length formula.
    pub fn count_standard_hook(&self, kind: ShapeKind) -> Result<BigUint, CombinatoricsError> {
        self.require_shape(kind)?;
        let mut numer = BigUint::one();
        for k in 2..=self.n() {
            numer *= k;
        }
        let mut denom = BigUint::one();
        for node in self.nodes(kind) {
            denom *= self.hook_length(node, kind)?;
        }
        if !(&numer % &denom).is_zero() {
            return Err(CombinatoricsError::InexactHookDivision(self.clone()));
        }
        Ok(numer / denom)
    }

    /// `χ(λ) = λ_1 − λ_ℓ + ℓ`.
    pub fn chi(&self) -> usize {
        match (self.0.first(), self.0.last()) {
            (Some(&first), Some(&last)) => first - last + self.len(),
            _ => 0,
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = CombinatoricsError;

    /// Parses `"4,2,1"` (parentheses and spaces tolerated).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        if trimmed.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = trimmed
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| CombinatoricsError::Parse(s.to_string()))?;
        Partition::new(parts)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumMode {
    All,
    Strict,
}

/// All partitions (or strict partitions) of `n` in reverse lexicographic order.
pub fn partitions(n: usize, mode: EnumMode) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, strict: bool, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for k in (1..=rem.min(max)).rev() {
            cur.push(k);
            let next_max = if strict { k - 1 } else { k };
            rec(rem - k, next_max, strict, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, mode == EnumMode::Strict, &mut Vec::new(), &mut out);
    out
}
