use std::collections::{HashMap, VecDeque};

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::{classify, residue_sequence, CombinatoricsError, Partition, Perm, ShapeKind, Tableau};

/// A sequence `(i_1, …, i_n)` with entries in `{0, 1, …, (p−1)/2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ResidueSeq(Vec<u32>);

impl ResidueSeq {
    pub fn new(entries: Vec<u32>, p: u32) -> Result<Self, CombinatoricsError> {
        if let Some(&bad) = entries.iter().find(|&&x| 2 * x + 1 > p) {
            return Err(CombinatoricsError::ResidueOutOfRange(bad, p));
        }
        Ok(ResidueSeq(entries))
    }

    pub fn of_tableau(t: &Tableau, p: u32) -> Self {
        ResidueSeq(residue_sequence(t, p))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 1-based entry.
    pub fn get(&self, k: usize) -> u32 {
        self.0[k - 1]
    }

    /// `s_k` is admissible iff `i_k ≠ i_{k+1} ± 1` (plain integer comparison).
    pub fn is_admissible(&self, k: usize) -> bool {
        let (a, b) = (self.get(k), self.get(k + 1));
        a.abs_diff(b) != 1
    }

    pub fn permuted(&self, tau: &Perm) -> ResidueSeq {
        ResidueSeq(tau.act_on(&self.0))
    }

    /// Number of zero entries.
    pub fn zero_count(&self) -> usize {
        self.0.iter().filter(|&&x| x == 0).count()
    }
}

/// Searches for the nested chain `k ≤ r_0 < … < r_m < q < t_m < … < t_0 ≤ l`
/// with `i_{r_j} = i_{t_j} = a + j`, no `a + j` strictly between `r_j` and
/// `t_j`, and `i_q = (p−1)/2`, where `m = (p−3)/2 − a`. Indices are 0-based.
fn has_nested_chain(i: &[u32], k: usize, l: usize, p: u32) -> bool {
    let a = i[k];
    let top = (p - 1) / 2;
    if a >= top {
        return false;
    }
    let m = top - 1 - a;

    fn search(i: &[u32], lo: usize, hi: usize, value: u32, last: u32, top: u32) -> bool {
        // choose r in [lo, hi) and t in (r, hi] with i_r = i_t = value and no
        // occurrence of value strictly between them
        if value > last {
            return (lo..=hi).any(|q| i[q] == top);
        }
        for r in lo..=hi {
            if i[r] != value {
                continue;
            }
            if let Some(off) = i[r + 1..=hi].iter().position(|&x| x == value) {
                let t = r + 1 + off;
                if t > r + 1 && search(i, r + 1, t - 1, value + 1, last, top) {
                    return true;
                }
            }
        }
        false
    }

    search(i, k, l, a, a + m, top)
}

/// Membership in the set of completely splittable weights.
pub fn is_cs_weight(i: &ResidueSeq, p: u32) -> bool {
    let v = i.entries();
    let n = v.len();
    let top = (p - 1) / 2;
    if v.iter().any(|&x| x > top) {
        return false;
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    if v.iter().filter(|&&x| x == top).count() > 1 {
        return false;
    }
    for k in 0..n {
        for l in k + 1..n {
            if v[k] != v[l] {
                continue;
            }
            let between = &v[k + 1..l];
            let a = v[k];
            let ok = if a == 0 {
                between.contains(&1)
            } else {
                (between.contains(&(a - 1)) && between.contains(&(a + 1)))
                    || has_nested_chain(v, k, l, p)
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug)]
pub enum OrbitSeed {
    Weight(ResidueSeq),
    /// A shifted p-standard tableau; its residue sequence is the seed weight.
    Tableau(Tableau),
}

/// Closure of a weight under admissible simple transpositions.
///
/// Members are listed in breadth-first order, the seed first. `words[j]`
/// lists `k_1, …, k_t` in application order, so
/// `perms[j] = s_{k_t} ⋯ s_{k_1}` and `weights[j] = perms[j]·seed`.
#[derive(Clone, Debug)]
pub struct OrbitRecord {
    pub p: u32,
    pub lambda: Option<Partition>,
    pub weights: Vec<ResidueSeq>,
    pub perms: Vec<Perm>,
    pub words: Vec<Vec<usize>>,
    pub tableaux: Option<Vec<Tableau>>,
}

impl OrbitRecord {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn seed(&self) -> &ResidueSeq {
        &self.weights[0]
    }

    pub fn index_of(&self, weight: &ResidueSeq) -> Option<usize> {
        self.weights.iter().position(|w| w == weight)
    }
}

impl Serialize for OrbitRecord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("lambda", &self.lambda)?;
        map.serialize_entry("weights", &self.weights)?;
        map.serialize_entry("perms", &self.words)?;
        map.end()
    }
}

pub fn weight_orbit(seed: &OrbitSeed, p: u32) -> Result<OrbitRecord, CombinatoricsError> {
    let (start, tableau) = match seed {
        OrbitSeed::Weight(w) => {
            if !is_cs_weight(w, p) {
                return Err(CombinatoricsError::NotCsWeight);
            }
            (w.clone(), None)
        }
        OrbitSeed::Tableau(t) => {
            if t.kind() != ShapeKind::Shifted || !classify(t.shape(), p).in_cps || !t.is_p_standard(p)
            {
                return Err(CombinatoricsError::NotPStandard);
            }
            let w = ResidueSeq::of_tableau(t, p);
            if !is_cs_weight(&w, p) {
                return Err(CombinatoricsError::NotCsWeight);
            }
            (w, Some(t.clone()))
        }
    };
    let n = start.len();

    let mut weights = vec![start.clone()];
    let mut perms = vec![Perm::identity(n)];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut seen: HashMap<ResidueSeq, usize> = HashMap::from([(start, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        for k in 1..n {
            if !weights[idx].is_admissible(k) {
                continue;
            }
            let s = Perm::simple(n, k);
            let next = weights[idx].permuted(&s);
            if seen.contains_key(&next) {
                continue;
            }
            let j = weights.len();
            seen.insert(next.clone(), j);
            weights.push(next);
            perms.push(s.compose(&perms[idx]));
            let mut word = words[idx].clone();
            word.push(k);
            words.push(word);
            queue.push_back(j);
        }
    }

    let tableaux = tableau
        .as_ref()
        .map(|t| perms.iter().map(|tau| t.permuted(tau)).collect());
    Ok(OrbitRecord {
        p,
        lambda: tableau.map(|t| t.shape().clone()),
        weights,
        perms,
        words,
        tableaux,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{enumerate_standard, partitions, EnumMode, TableauFilter};

    fn seq(v: &[u32], p: u32) -> ResidueSeq {
        ResidueSeq::new(v.to_vec(), p).unwrap()
    }

    #[test]
    fn cs_examples() {
        assert!(is_cs_weight(&seq(&[0, 1, 0], 3), 3));
        assert!(!is_cs_weight(&seq(&[0, 0, 1], 5), 5));
        assert!(!is_cs_weight(&seq(&[2, 1, 2], 5), 5));
        assert!(is_cs_weight(&seq(&[0, 1, 2, 1], 5), 5));
        assert!(!is_cs_weight(&seq(&[1, 0, 1], 5), 5));
        assert!(is_cs_weight(&seq(&[0, 1, 2, 1, 0], 5), 5));
        assert!(!is_cs_weight(&seq(&[0, 2, 0], 5), 5));
        assert!(ResidueSeq::new(vec![0, 3], 5).is_err());
    }

    #[test]
    fn nested_chain_condition() {
        // the two 2s are separated by a 3 but no 1, so only the chain applies
        let w = seq(&[0, 1, 2, 3, 0, 2, 1, 0], 7);
        assert!(is_cs_weight(&w, 7));
        // the chain for the two 1s: 1 … 2 … 3 … 2 … 1
        assert!(is_cs_weight(&seq(&[1, 2, 3, 2, 1], 7), 7));
        assert!(!is_cs_weight(&seq(&[1, 2, 1], 7), 7));
    }

    #[test]
    fn orbit_examples() {
        let xi = Partition::new(vec![3, 2]).unwrap();
        let t = Tableau::row_reading(&xi, ShapeKind::Shifted).unwrap();
        let orbit = weight_orbit(&OrbitSeed::Tableau(t), 5).unwrap();
        assert_eq!(orbit.len(), 2);
        assert!(orbit.perms[0].is_identity());
        let json = serde_json::to_string(&orbit).unwrap();
        assert!(json.starts_with("{\"lambda\":[3,2],\"weights\":[[0,1,2,0,1],"));
    }

    #[test]
    fn orbit_is_idempotent() {
        let xi = Partition::new(vec![5, 2, 1]).unwrap();
        let t = Tableau::row_reading(&xi, ShapeKind::Shifted).unwrap();
        let orbit = weight_orbit(&OrbitSeed::Tableau(t), 7).unwrap();
        let mut base: Vec<_> = orbit.weights.clone();
        base.sort();
        for w in &orbit.weights {
            let again = weight_orbit(&OrbitSeed::Weight(w.clone()), 7).unwrap();
            let mut other = again.weights.clone();
            other.sort();
            assert_eq!(base, other);
        }
    }

    #[test]
    fn bad_seeds_rejected() {
        assert!(matches!(
            weight_orbit(&OrbitSeed::Weight(seq(&[0, 0], 5)), 5),
            Err(CombinatoricsError::NotCsWeight)
        ));
        let t = Tableau::from_rows(ShapeKind::Shifted, vec![vec![1, 2, 3, 4, 7], vec![5, 6]]).unwrap();
        assert!(matches!(
            weight_orbit(&OrbitSeed::Tableau(t), 7),
            Err(CombinatoricsError::NotPStandard)
        ));
    }

    /// The orbit of the row-reading tableau is exactly the shifted
    /// p-standard tableaux, and every member weight is completely splittable.
    #[test]
    fn orbit_matches_p_standard_tableaux() {
        for p in [3u32, 5, 7] {
            for n in 1..=p as usize {
                for xi in partitions(n, EnumMode::Strict) {
                    if !classify(&xi, p).in_cps {
                        continue;
                    }
                    let seed = Tableau::row_reading(&xi, ShapeKind::Shifted).unwrap();
                    let orbit = weight_orbit(&OrbitSeed::Tableau(seed), p).unwrap();
                    let mut from_orbit = orbit.tableaux.clone().unwrap();
                    from_orbit.sort();
                    let expected =
                        enumerate_standard(&xi, ShapeKind::Shifted, TableauFilter::PStandard(p)).unwrap();
                    assert_eq!(from_orbit, expected, "p={p} xi={xi}");
                    for (w, t) in orbit.weights.iter().zip(orbit.tableaux.as_ref().unwrap()) {
                        assert!(is_cs_weight(w, p));
                        assert_eq!(w, &ResidueSeq::of_tableau(t, p));
                    }
                }
            }
        }
    }

    /// For every shifted p-standard S and every k: s_k is admissible for i_S
    /// exactly when s_k·S is again shifted p-standard.
    #[test]
    fn admissible_iff_stays_p_standard() {
        for p in [3u32, 5, 7] {
            for n in 2..=p as usize {
                for xi in partitions(n, EnumMode::Strict) {
                    if !classify(&xi, p).in_cps {
                        continue;
                    }
                    for s in enumerate_standard(&xi, ShapeKind::Shifted, TableauFilter::PStandard(p)).unwrap() {
                        let w = ResidueSeq::of_tableau(&s, p);
                        for k in 1..n {
                            assert_eq!(
                                w.is_admissible(k),
                                s.swapped(k).is_p_standard(p),
                                "p={p} S={s} k={k}"
                            );
                        }
                    }
                }
            }
        }
    }
}
