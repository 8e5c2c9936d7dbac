//! Randomized properties of built modules.

use proptest::prelude::*;

use modrep::combinatorics::{partitions, EnumMode, Perm};
use modrep::field::Scalar;
use modrep::linalg::EchelonBasis;
use modrep::sergeev;
use modrep::symrep::{self, SymRep};
use modrep::verify::{direct_sum, spin_closure, Representation};

fn sym_reps(p: u32) -> Vec<SymRep> {
    symrep::all_irreducibles(p as usize, p).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Matrices of permutations multiply like the permutations.
    #[test]
    fn perm_matrices_are_multiplicative(
        which in 0usize..14,
        a in proptest::collection::vec(1usize..7, 0..12),
        b in proptest::collection::vec(1usize..7, 0..12),
    ) {
        let reps = sym_reps(7);
        let rep = &reps[which % reps.len()];
        let (ta, tb) = (Perm::from_word(7, &a), Perm::from_word(7, &b));
        let lhs = rep.perm_matrix(&ta.compose(&tb));
        let rhs = rep.perm_matrix(&ta).mul(&rep.field, &rep.perm_matrix(&tb));
        prop_assert_eq!(lhs, rhs);
    }

    /// The closure of any vector is stable: spinning the closure again
    /// gives back the same subspace.
    #[test]
    fn spinning_closure_is_a_fixpoint(coords in proptest::collection::vec((0u32..5, 0u32..5), 48)) {
        let a = sergeev::build_v(&"4,1".parse().unwrap(), 5).unwrap();
        let b = sergeev::build_v(&"3,2".parse().unwrap(), 5).unwrap();
        let sum = direct_sum(&a, &b).unwrap();
        let v: Vec<Scalar> = coords.iter().map(|&(x, y)| Scalar::new(x, y)).collect();
        let first = spin_closure(&sum, &[v]);
        let second = spin_closure(&sum, &first);
        prop_assert_eq!(first.len(), second.len());
        let f = sum.field;
        let mut span = EchelonBasis::new(sum.dim());
        for w in &first {
            span.insert(&f, w);
        }
        prop_assert!(second.iter().all(|w| span.contains(&f, w)));
        // invariant under every generator
        for g in sum.generators() {
            for w in &first {
                prop_assert!(span.contains(&f, &g.matrix.apply(&f, w)));
            }
        }
    }
}

#[test]
fn every_irreducible_below_p_is_built() {
    for p in [3u32, 5, 7] {
        for n in 1..=p as usize {
            let expected = partitions(n, EnumMode::All)
                .iter()
                .filter(|l| modrep::combinatorics::classify(l, p).in_cp)
                .count();
            assert_eq!(symrep::all_irreducibles(n, p).unwrap().len(), expected);
        }
    }
}
