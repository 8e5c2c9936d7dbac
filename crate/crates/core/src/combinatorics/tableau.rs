use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use super::{classify, CombinatoricsError, Node, Partition, ShapeKind};

/// A permutation of `{1, …, n}`; `images[k−1] = τ(k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            images: (1..=n).collect(),
        }
    }

    /// The simple transposition `s_k = (k, k+1)`.
    pub fn simple(n: usize, k: usize) -> Self {
        assert!(k >= 1 && k < n, "s_{k} is not a simple transposition of S_{n}");
        let mut p = Self::identity(n);
        p.images.swap(k - 1, k);
        p
    }

    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(Perm { images })
    }

    /// Product `s_{w_t} ⋯ s_{w_1}` of a word applied right to left.
    pub fn from_word(n: usize, word: &[usize]) -> Self {
        word.iter()
            .fold(Self::identity(n), |acc, &k| Self::simple(n, k).compose(&acc))
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, k: usize) -> usize {
        self.images[k - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.n(), other.n());
        Perm {
            images: other.images.iter().map(|&k| self.apply(k)).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.n()];
        for (k, &t) in self.images.iter().enumerate() {
            images[t - 1] = k + 1;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &t)| t == k + 1)
    }

    /// Place permutation of a sequence: `(τ·i)_m = i_{τ⁻¹(m)}`.
    pub fn act_on<T: Clone>(&self, seq: &[T]) -> Vec<T> {
        assert_eq!(seq.len(), self.n());
        let inv = self.inverse();
        (1..=self.n()).map(|m| seq[inv.apply(m) - 1].clone()).collect()
    }
}

/// A bijective filling of a straight or shifted diagram by `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    shape: Partition,
    kind: ShapeKind,
    rows: Vec<Vec<usize>>,
    positions: Vec<Node>,
}

impl Tableau {
    /// Builds a tableau from its rows; the shape is read off the row lengths.
    pub fn from_rows(kind: ShapeKind, rows: Vec<Vec<usize>>) -> Result<Self, CombinatoricsError> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())?;
        if kind == ShapeKind::Shifted && !shape.is_strict() {
            return Err(CombinatoricsError::NotStrict(shape));
        }
        let n = shape.n();
        let mut positions = vec![Node::new(0, 0); n];
        let mut seen = vec![false; n + 1];
        for (i, row) in rows.iter().enumerate() {
            let offset = match kind {
                ShapeKind::Straight => 1,
                ShapeKind::Shifted => i + 1,
            };
            for (c, &e) in row.iter().enumerate() {
                if e == 0 || e > n || seen[e] {
                    return Err(CombinatoricsError::InvalidTableau);
                }
                seen[e] = true;
                positions[e - 1] = Node::new(i + 1, offset + c);
            }
        }
        Ok(Tableau {
            shape,
            kind,
            rows,
            positions,
        })
    }

    /// Fills the diagram with `1, 2, …` left to right, top to bottom.
    pub fn row_reading(shape: &Partition, kind: ShapeKind) -> Result<Self, CombinatoricsError> {
        let mut next = 0;
        let rows = shape
            .parts()
            .iter()
            .map(|&len| {
                let row: Vec<usize> = (next + 1..=next + len).collect();
                next += len;
                row
            })
            .collect();
        Self::from_rows(kind, rows)
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn kind(&self) -> ShapeKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.positions.len()
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    fn first_col(&self, row: usize) -> usize {
        match self.kind {
            ShapeKind::Straight => 1,
            ShapeKind::Shifted => row,
        }
    }

    /// Entry at `node`, if the node is in the diagram.
    pub fn entry(&self, node: Node) -> Option<usize> {
        if !self.shape.contains(node, self.kind) {
            return None;
        }
        Some(self.rows[node.row - 1][node.col - self.first_col(node.row)])
    }

    /// Node holding `k`.
    pub fn position(&self, k: usize) -> Node {
        self.positions[k - 1]
    }

    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().flatten().copied().collect()
    }

    pub fn is_standard(&self) -> bool {
        self.positions.iter().enumerate().all(|(idx, &node)| {
            let k = idx + 1;
            let left = Node::new(node.row, node.col.wrapping_sub(1));
            let up = Node::new(node.row.wrapping_sub(1), node.col);
            [left, up]
                .into_iter()
                .filter_map(|nb| if nb.row >= 1 && nb.col >= 1 { self.entry(nb) } else { None })
                .all(|e| e < k)
        })
    }

    /// `τ·T`: the entry `e` is replaced by `τ(e)`.
    pub fn permuted(&self, tau: &Perm) -> Tableau {
        assert_eq!(tau.n(), self.n());
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&e| tau.apply(e)).collect())
            .collect();
        Tableau::from_rows(self.kind, rows).expect("a permuted filling stays bijective")
    }

    /// `s_k·T`: entries `k` and `k+1` exchanged.
    pub fn swapped(&self, k: usize) -> Tableau {
        self.permuted(&Perm::simple(self.n(), k))
    }

    /// Removes the node holding `n`; it must be removable.
    pub fn without_max(&self) -> Option<Tableau> {
        let n = self.n();
        let node = self.position(n);
        let mut rows = self.rows.clone();
        let row = &mut rows[node.row - 1];
        if row.last() != Some(&n) {
            return None;
        }
        row.pop();
        if row.is_empty() {
            rows.pop();
        }
        Tableau::from_rows(self.kind, rows).ok()
    }

    /// Literal p-standard predicate: for straight shapes the condition on
    /// every pair of nodes `(i,j), (i',j')` with `i > i'`, `j < j'` and
    /// `i + j' + 1 − i' − j = p`; for shifted shapes the extra inequality
    /// `T(2, ξ_2+1) > T(1, ξ_1)` in the top-row case `ξ = (p−u, u, …)`.
    pub fn is_p_standard(&self, p: u32) -> bool {
        if !self.is_standard() {
            return false;
        }
        let p = p as usize;
        match self.kind {
            ShapeKind::Straight => {
                for (a, &low) in self.positions.iter().enumerate() {
                    for (b, &high) in self.positions.iter().enumerate() {
                        if low.row > high.row
                            && low.col < high.col
                            && low.row + high.col + 1 == p + high.row + low.col
                            && b < a
                        {
                            return false;
                        }
                    }
                }
                true
            }
            ShapeKind::Shifted => {
                let first = self.shape.part(1);
                let second = self.shape.part(2);
                if first < p && second == p - first && 2 * second + 3 <= p && second >= 1 {
                    let corner = self.entry(Node::new(2, second + 1)).expect("node in shape");
                    let end = self.entry(Node::new(1, first)).expect("node in shape");
                    corner > end
                } else {
                    true
                }
            }
        }
    }
}

impl PartialOrd for Tableau {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Tableau {
    /// Lexicographic on reading words (shape and kind break ties).
    fn cmp(&self, other: &Self) -> Ordering {
        self.reading_word()
            .cmp(&other.reading_word())
            .then_with(|| self.shape.cmp(&other.shape))
            .then_with(|| (self.kind as u8).cmp(&(other.kind as u8)))
    }
}

impl Serialize for Tableau {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.rows.serialize(serializer)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(usize::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join(" / "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableauFilter {
    None,
    PStandard(u32),
}

/// Standard (or p-standard) tableaux of the given shape, sorted by reading word.
pub fn enumerate_standard(
    shape: &Partition,
    kind: ShapeKind,
    filter: TableauFilter,
) -> Result<Vec<Tableau>, CombinatoricsError> {
    if kind == ShapeKind::Shifted && !shape.is_strict() {
        return Err(CombinatoricsError::NotStrict(shape.clone()));
    }
    if let TableauFilter::PStandard(p) = filter {
        let c = classify(shape, p);
        let (ok, class) = match kind {
            ShapeKind::Straight => (c.in_cp, "CP_p(n)"),
            ShapeKind::Shifted => (c.in_cps, "CP^s_p(n)"),
        };
        if !ok {
            return Err(CombinatoricsError::NotInClass {
                shape: shape.clone(),
                class,
                p,
            });
        }
    }

    let nodes = shape.nodes(kind);
    let index_of = |node: Node| nodes.iter().position(|&x| x == node);
    // predecessors that must already be filled: left and upper neighbours
    let preds: Vec<Vec<usize>> = nodes
        .iter()
        .map(|&nd| {
            let mut v = Vec::new();
            if nd.col > 1 {
                v.extend(index_of(Node::new(nd.row, nd.col - 1)));
            }
            if nd.row > 1 {
                v.extend(index_of(Node::new(nd.row - 1, nd.col)));
            }
            v
        })
        .collect();

    fn rec(k: usize, filling: &mut Vec<usize>, preds: &[Vec<usize>], out: &mut Vec<Vec<usize>>) {
        if k > filling.len() {
            out.push(filling.clone());
            return;
        }
        for idx in 0..filling.len() {
            if filling[idx] == 0 && preds[idx].iter().all(|&q| filling[q] != 0) {
                filling[idx] = k;
                rec(k + 1, filling, preds, out);
                filling[idx] = 0;
            }
        }
    }
    let mut fillings = Vec::new();
    rec(1, &mut vec![0; nodes.len()], &preds, &mut fillings);

    let mut out: Vec<Tableau> = fillings
        .into_iter()
        .map(|fill| {
            let mut it = fill.into_iter();
            let rows = shape
                .parts()
                .iter()
                .map(|&len| it.by_ref().take(len).collect())
                .collect();
            Tableau::from_rows(kind, rows).expect("valid filling")
        })
        .filter(|t| match filter {
            TableauFilter::None => true,
            TableauFilter::PStandard(p) => t.is_p_standard(p),
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Folds a content `j − i` into `{0, …, (p−1)/2}` following the period-p
/// pattern `0, 1, …, (p−1)/2, …, 1, 0`.
pub fn shifted_residue(content: i64, p: u32) -> u32 {
    let r = content.rem_euclid(p as i64) as u32;
    if 2 * r < p {
        r
    } else {
        p - 1 - r
    }
}

pub fn residue(node: Node, p: u32, kind: ShapeKind) -> u32 {
    let content = node.col as i64 - node.row as i64;
    match kind {
        ShapeKind::Straight => content.rem_euclid(p as i64) as u32,
        ShapeKind::Shifted => shifted_residue(content, p),
    }
}

/// `(res T(1), …, res T(n))`.
pub fn residue_sequence(t: &Tableau, p: u32) -> Vec<u32> {
    (1..=t.n()).map(|k| residue(t.position(k), p, t.kind())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{partitions, EnumMode};

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn straight(rows: &[&[usize]]) -> Tableau {
        Tableau::from_rows(ShapeKind::Straight, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn shifted(rows: &[&[usize]]) -> Tableau {
        Tableau::from_rows(ShapeKind::Shifted, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn perm_basics() {
        let s1 = Perm::simple(3, 1);
        let s2 = Perm::simple(3, 2);
        let w = Perm::from_word(3, &[1, 2]); // s2 s1
        assert_eq!(w, s2.compose(&s1));
        assert_eq!(w.compose(&w.inverse()), Perm::identity(3));
        // (τ·i)_m = i_{τ⁻¹(m)}
        assert_eq!(s1.act_on(&[10, 20, 30]), vec![20, 10, 30]);
        assert_eq!(w.act_on(&['a', 'b', 'c']), vec!['b', 'c', 'a']);
        assert!(Perm::from_images(vec![1, 1]).is_none());
    }

    #[test]
    fn p_standard_worked_example() {
        let t = straight(&[&[1, 2, 5, 6], &[3, 7, 8], &[4]]);
        assert!(t.is_standard() && t.is_p_standard(5));
        let s4t = t.swapped(4);
        assert_eq!(s4t, straight(&[&[1, 2, 4, 6], &[3, 7, 8], &[5]]));
        assert!(s4t.is_standard());
        assert!(!s4t.is_p_standard(5));
        // χ(4,3,1) = 6 > 5, so the shape lies outside the class where the
        // filtered enumeration is defined; only the predicate applies
        assert!(enumerate_standard(&part(&[4, 3, 1]), ShapeKind::Straight, TableauFilter::PStandard(5)).is_err());
    }

    #[test]
    fn hook_shape_at_n_equals_p_needs_n_in_arm_end() {
        let p = 5;
        let lambda = part(&[3, 1, 1]);
        let std = enumerate_standard(&lambda, ShapeKind::Straight, TableauFilter::None).unwrap();
        let pstd = enumerate_standard(&lambda, ShapeKind::Straight, TableauFilter::PStandard(p)).unwrap();
        for t in &std {
            assert_eq!(pstd.contains(t), t.entry(Node::new(1, 3)) == Some(5));
        }
    }

    #[test]
    fn below_p_filter_is_noop() {
        for n in 1..7 {
            for l in partitions(n, EnumMode::All) {
                let a = enumerate_standard(&l, ShapeKind::Straight, TableauFilter::None).unwrap();
                let b = enumerate_standard(&l, ShapeKind::Straight, TableauFilter::PStandard(7)).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn filter_preconditions() {
        let err = enumerate_standard(&part(&[1, 1, 1]), ShapeKind::Straight, TableauFilter::PStandard(3));
        assert!(matches!(err, Err(CombinatoricsError::NotInClass { class: "CP_p(n)", .. })));
        let err = enumerate_standard(&part(&[5]), ShapeKind::Shifted, TableauFilter::PStandard(5));
        assert!(matches!(err, Err(CombinatoricsError::NotInClass { class: "CP^s_p(n)", .. })));
        assert!(enumerate_standard(&part(&[2, 2]), ShapeKind::Shifted, TableauFilter::None).is_err());
    }

    #[test]
    fn shifted_p_standard_top_row_case() {
        // p = 5, ξ = (3, 2): u = 2 exceeds (p−3)/2, no extra condition
        let a = enumerate_standard(&part(&[3, 2]), ShapeKind::Shifted, TableauFilter::PStandard(5)).unwrap();
        assert_eq!(a.len(), 2);
        // p = 7, ξ = (5, 2): n must sit at (2, 3)
        let b = enumerate_standard(&part(&[5, 2]), ShapeKind::Shifted, TableauFilter::PStandard(7)).unwrap();
        assert_eq!(b.len(), 4);
        assert!(b.iter().all(|t| t.entry(Node::new(2, 3)) == Some(7)));
    }

    #[test]
    fn enumeration_matches_hook_formula() {
        for n in 1..=8 {
            for l in partitions(n, EnumMode::All) {
                let count = enumerate_standard(&l, ShapeKind::Straight, TableauFilter::None).unwrap().len();
                assert_eq!(l.count_standard_hook(ShapeKind::Straight).unwrap(), count.into(), "{l}");
                if l.is_strict() {
                    let all = enumerate_standard(&l, ShapeKind::Shifted, TableauFilter::None).unwrap();
                    assert!(all.iter().all(Tableau::is_standard));
                    assert_eq!(l.count_standard_hook(ShapeKind::Shifted).unwrap(), all.len().into(), "{l}");
                }
            }
        }
    }

    #[test]
    fn residues() {
        assert_eq!(residue(Node::new(1, 5), 7, ShapeKind::Shifted), 2);
        for i in 1..10 {
            assert_eq!(residue(Node::new(i, i), 7, ShapeKind::Shifted), 0);
        }
        assert_eq!(residue(Node::new(2, 1), 5, ShapeKind::Straight), 4);
        // the pattern 0,1,…,(p−1)/2,…,1,0 repeats with period p
        let pattern: Vec<u32> = (0..14).map(|c| shifted_residue(c, 7)).collect();
        assert_eq!(pattern, vec![0, 1, 2, 3, 2, 1, 0, 0, 1, 2, 3, 2, 1, 0]);
    }

    #[test]
    fn fold_agrees_with_q_values() {
        // residues are labels for the q-value i(i+1) of the content
        for p in [3u32, 5, 7, 11, 13] {
            for c in -30i64..30 {
                let r = shifted_residue(c, p) as i64;
                let q = |x: i64| (x * (x + 1)).rem_euclid(p as i64);
                assert_eq!(q(r), q(c), "p={p} c={c}");
            }
        }
    }

    #[test]
    fn residue_sequence_worked_example() {
        let t = shifted(&[&[1, 2, 3, 4, 6], &[5, 7], &[8]]);
        assert!(t.is_standard());
        assert!(t.is_p_standard(7));
        assert_eq!(residue_sequence(&t, 7), vec![0, 1, 2, 3, 0, 2, 1, 0]);
        let row = Tableau::row_reading(&part(&[5]), ShapeKind::Straight).unwrap();
        assert_eq!(residue_sequence(&row, 7), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn residue_equivariance() {
        for p in [5u32, 7] {
            for n in 1..=6 {
                for xi in partitions(n, EnumMode::Strict) {
                    for t in enumerate_standard(&xi, ShapeKind::Shifted, TableauFilter::None).unwrap() {
                        let i = residue_sequence(&t, p);
                        for k in 1..n {
                            let s = Perm::simple(n, k);
                            assert_eq!(s.act_on(&i), residue_sequence(&t.permuted(&s), p));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn ordering_and_serialization() {
        let a = straight(&[&[1, 2], &[3]]);
        let b = straight(&[&[1, 3], &[2]]);
        assert!(a < b);
        assert_eq!(serde_json::to_string(&b).unwrap(), "[[1,3],[2]]");
        assert_eq!(b.without_max().unwrap(), straight(&[&[1], &[2]]));
        assert!(a.without_max().is_some());
        assert!(straight(&[&[1, 3], &[2, 4]]).without_max().is_some());
        assert!(straight(&[&[1, 4], &[2], &[3]]).without_max().is_some());
        assert!(straight(&[&[1, 2], &[3], &[4]]).swapped(3).without_max().is_none());
    }
}
