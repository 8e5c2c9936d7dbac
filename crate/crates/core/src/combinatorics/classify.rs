use serde::Serialize;

use super::Partition;

/// Membership of a partition in the families that parametrize simple
/// modules and completely splittable modules in characteristic `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionClassification {
    /// No part repeated `p` or more times.
    pub p_regular: bool,
    pub strict: bool,
    /// Repeated parts are divisible by `p`.
    pub p_strict: bool,
    pub p_restricted: bool,
    /// `p`-regular with `χ(λ) ≤ p`.
    pub in_cp: bool,
    /// Strict, and either `λ_1 ≤ (p+1)/2` or `λ_1 = p−u, λ_2 ≤ u` with `1 ≤ u ≤ (p−3)/2`.
    pub in_cps: bool,
    /// `p`-strict and `p`-restricted.
    pub in_rp: bool,
    pub chi: usize,
    /// Number of parts not divisible by `p`.
    pub b: usize,
}

pub fn classify(lambda: &Partition, p: u32) -> PartitionClassification {
    let p = p as usize;
    let parts = lambda.parts();

    let mut p_regular = true;
    let mut i = 0;
    while i < parts.len() {
        let run = parts[i..].iter().take_while(|&&x| x == parts[i]).count();
        if run >= p {
            p_regular = false;
        }
        i += run;
    }

    let strict = lambda.is_strict();
    let p_strict = parts.windows(2).all(|w| w[0] != w[1] || w[0] % p == 0);
    let p_restricted = (1..=parts.len()).all(|r| {
        let gap = lambda.part(r) - lambda.part(r + 1);
        if lambda.part(r).is_multiple_of(p) {
            gap < p
        } else {
            gap <= p
        }
    });

    let chi = lambda.chi();
    let in_cp = p_regular && chi <= p;

    let first = lambda.part(1);
    let second = lambda.part(2);
    let top_row_case = first < p && {
        let u = p - first;
        u >= 1 && 2 * u + 3 <= p && second <= u
    };
    let in_cps = strict && !lambda.is_empty() && (2 * first <= p + 1 || top_row_case);

    PartitionClassification {
        p_regular,
        strict,
        p_strict,
        p_restricted,
        in_cp,
        in_cps,
        in_rp: p_strict && p_restricted,
        chi,
        b: parts.iter().filter(|&&x| x % p != 0).count(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{partitions, EnumMode};

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(classify(&part(&[8, 7, 7, 5, 3, 3]), 11).chi, 11);
        assert!(!classify(&part(&[2, 2, 2]), 3).p_regular);
        let c = classify(&part(&[6]), 7);
        assert!(c.strict);
        assert_eq!(c.chi, 1);
        // (p) is p-strict but not p-restricted
        let c = classify(&part(&[5]), 5);
        assert!(c.p_strict && !c.p_restricted && !c.in_rp && !c.in_cps);
        // p-strict with a repeated multiple of p
        let c = classify(&part(&[5, 5, 1]), 5);
        assert!(c.p_strict && !c.strict);
        assert_eq!(c.b, 1);
    }

    #[test]
    fn implications_hold() {
        for p in [3u32, 5, 7] {
            for n in 1..=10 {
                for l in partitions(n, EnumMode::All) {
                    let c = classify(&l, p);
                    assert!(!c.in_cp || c.p_regular);
                    assert!(!c.in_cps || c.strict);
                    assert_eq!(c.in_rp, c.p_strict && c.p_restricted);
                }
            }
        }
    }

    #[test]
    fn boundary_equivalences_for_n_at_most_p() {
        for p in [3u32, 5, 7, 11] {
            for n in 1..=p as usize {
                for l in partitions(n, EnumMode::All) {
                    let c = classify(&l, p);
                    assert_eq!(c.in_cp, c.p_regular, "{l} p={p}");
                    let expected = c.strict && !(n == p as usize && l == Partition::row(n));
                    assert_eq!(c.in_rp, expected, "{l} p={p}");
                    assert_eq!(c.in_cps, expected, "{l} p={p}");
                }
            }
            for n in p as usize + 1..=p as usize + 5 {
                let witness = part(&[n - 1, 1]);
                let c = classify(&witness, p);
                assert!(c.p_regular && !c.in_cp);
            }
        }
    }
}
