//! Irreducible modules `D^λ` of the symmetric group for `n ≤ p`, realized by
//! explicit seminormal-style matrices on a tableau basis.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::combinatorics::{
    classify, enumerate_standard, CombinatoricsError, Node, Partition, Perm, ShapeKind, Tableau,
    TableauFilter,
};
use crate::field::{FieldCtx, FieldError, Scalar};
use crate::linalg::SparseMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymRepError {
    #[error("n = {n} exceeds p = {p}; only n <= p is supported")]
    NTooLarge { n: usize, p: u32 },
    #[error("{0} is not p-regular with chi <= p for p = {1}")]
    NotCompletelySplittable(Partition, u32),
    #[error("radical dimension is only defined for n = p (got n = {n}, p = {p})")]
    NotAtCharacteristic { n: usize, p: u32 },
    #[error("residues of {a} and {b} coincide in {tableau}")]
    ResidueClash { tableau: String, a: usize, b: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Combinatorics(#[from] CombinatoricsError),
}

/// An irreducible `F S_n`-module given by the matrices of `s_1, …, s_{n−1}`.
#[derive(Clone, Debug)]
pub struct SymRep {
    pub field: FieldCtx,
    pub lambda: Partition,
    /// `Std_p(λ)`, or `Std(λ⁻)` when `n = p` and `λ = (k, 1^{n−k})`, `2 ≤ k ≤ n−1`.
    pub basis: Vec<Tableau>,
    pub gens: Vec<SparseMatrix>,
}

impl SymRep {
    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn n(&self) -> usize {
        self.lambda.n()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// True when the basis is indexed by `Std(λ⁻)`.
    pub fn is_hook_case(&self) -> bool {
        hook_at_p(&self.lambda, self.p()).is_some()
    }

    pub fn index_of(&self, t: &Tableau) -> Option<usize> {
        self.basis.binary_search(t).ok()
    }

    /// Matrix of an arbitrary permutation, via a reduced word.
    pub fn perm_matrix(&self, tau: &Perm) -> SparseMatrix {
        reduced_word(tau)
            .iter()
            .rev()
            .fold(SparseMatrix::identity(self.dim()), |acc, &k| {
                self.gens[k - 1].mul(&self.field, &acc)
            })
    }
}

/// A reduced word `k_1, …, k_t` with `τ = s_{k_1} ⋯ s_{k_t}` (bubble sort).
pub fn reduced_word(tau: &Perm) -> Vec<usize> {
    let mut images: Vec<usize> = tau.images().to_vec();
    let mut word = Vec::new();
    // right-multiplying by s_k swaps positions k and k+1 of the image list
    let mut changed = true;
    while changed {
        changed = false;
        for k in 1..images.len() {
            if images[k - 1] > images[k] {
                images.swap(k - 1, k);
                word.push(k);
                changed = true;
            }
        }
    }
    word.reverse();
    word
}

/// `k` when `n = p` and `λ = (k, 1^{n−k})` with `2 ≤ k ≤ n−1`.
fn hook_at_p(lambda: &Partition, p: u32) -> Option<usize> {
    let k = lambda.hook_arm()?;
    (lambda.n() == p as usize && k >= 2 && k < lambda.n()).then_some(k)
}

fn check_domain(lambda: &Partition, p: u32) -> Result<(), SymRepError> {
    if lambda.n() > p as usize {
        return Err(SymRepError::NTooLarge { n: lambda.n(), p });
    }
    if !classify(lambda, p).in_cp {
        return Err(SymRepError::NotCompletelySplittable(lambda.clone(), p));
    }
    Ok(())
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn to_usize(x: BigUint) -> usize {
    x.to_usize().expect("dimension fits in usize")
}

/// `ρ_a(T) = 1/(res T(a+1) − res T(a))` in `F_p`.
pub fn rho(f: &FieldCtx, t: &Tableau, a: usize) -> Result<Scalar, SymRepError> {
    let content = |k: usize| {
        let node = t.position(k);
        node.col as i64 - node.row as i64
    };
    let diff = f.from_int(content(a + 1) - content(a));
    f.inv(diff).map_err(|_| SymRepError::ResidueClash {
        tableau: t.to_string(),
        a,
        b: a + 1,
    })
}

pub fn dim_d(lambda: &Partition, p: u32) -> Result<usize, SymRepError> {
    check_domain(lambda, p)?;
    Ok(match hook_at_p(lambda, p) {
        Some(k) => binom(lambda.n() - 2, k - 2),
        None => to_usize(lambda.count_standard_hook(ShapeKind::Straight)?),
    })
}

/// `dim Rad^λ = f^λ − dim D^λ` for `n = p`.
pub fn radical_dim(lambda: &Partition, p: u32) -> Result<usize, SymRepError> {
    if lambda.n() != p as usize {
        return Err(SymRepError::NotAtCharacteristic { n: lambda.n(), p });
    }
    check_domain(lambda, p)?;
    Ok(match hook_at_p(lambda, p) {
        Some(k) => binom(lambda.n() - 2, k - 1),
        None => 0,
    })
}

/// Matrices of the rule `s_i v_T = ρ_i(T) v_T + √(1−ρ_i(T)²) v_{s_i T}` on
/// `basis` (sorted), for `i` in `range`; the link is dropped when `s_i T`
/// leaves the basis.
fn seminormal_gens(
    f: &FieldCtx,
    basis: &[Tableau],
    range: std::ops::RangeInclusive<usize>,
) -> Result<Vec<SparseMatrix>, SymRepError> {
    let d = basis.len();
    range
        .map(|i| {
            let mut entries = Vec::with_capacity(2 * d);
            for (col, t) in basis.iter().enumerate() {
                let r = rho(f, t, i)?;
                entries.push((col, col, r));
                if let Ok(row) = basis.binary_search(&t.swapped(i)) {
                    let one_minus = f.sub(Scalar::ONE, f.mul(r, r));
                    // 1 − ρ² lies in F_p and is shared by T and s_iT
                    entries.push((row, col, f.sqrt_base(one_minus.a)));
                }
            }
            Ok(SparseMatrix::from_triplets(f, d, d, entries))
        })
        .collect()
}

/// Generic construction on `Std_p(λ)`; used directly unless `λ` is a hook at
/// `n = p`, and as a cross-check in that case.
pub fn build_on_p_standard(lambda: &Partition, p: u32) -> Result<SymRep, SymRepError> {
    check_domain(lambda, p)?;
    let field = FieldCtx::new(p as u64)?;
    let basis = enumerate_standard(lambda, ShapeKind::Straight, TableauFilter::PStandard(p))?;
    let n = lambda.n();
    let gens = if n >= 2 { seminormal_gens(&field, &basis, 1..=n - 1)? } else { Vec::new() };
    Ok(SymRep {
        field,
        lambda: lambda.clone(),
        basis,
        gens,
    })
}

pub fn build_d(lambda: &Partition, p: u32) -> Result<SymRep, SymRepError> {
    check_domain(lambda, p)?;
    let Some(k) = hook_at_p(lambda, p) else {
        return build_on_p_standard(lambda, p);
    };
    let field = FieldCtx::new(p as u64)?;
    let n = lambda.n();
    let mut minus = lambda.parts().to_vec();
    minus[0] -= 1;
    let minus = Partition::new(minus)?;
    let basis = enumerate_standard(&minus, ShapeKind::Straight, TableauFilter::None)?;
    let mut gens = seminormal_gens(&field, &basis, 1..=n - 2)?;
    let last: Vec<Scalar> = basis
        .iter()
        .map(|t| {
            if t.entry(Node::new(1, k - 1)) == Some(n - 1) {
                Scalar::ONE
            } else {
                debug_assert_eq!(t.entry(Node::new(n - k + 1, 1)), Some(n - 1));
                field.neg(Scalar::ONE)
            }
        })
        .collect();
    gens.push(SparseMatrix::diagonal(&last));
    Ok(SymRep {
        field,
        lambda: lambda.clone(),
        basis,
        gens,
    })
}

/// Jucys–Murphy elements `L_1 = 0`, `L_k = Σ_{m<k} (m, k)`.
pub fn jm_sym(rep: &SymRep) -> Vec<SparseMatrix> {
    let f = &rep.field;
    let d = rep.dim();
    let mut out = vec![SparseMatrix::zeros(d, d)];
    for k in 2..=rep.n() {
        // (k−1, k) = s_{k−1}; (m, k) = s_m (m+1, k) s_m
        let mut transposition = rep.gens[k - 2].clone();
        let mut sum = transposition.clone();
        for m in (1..k - 1).rev() {
            let s = &rep.gens[m - 1];
            transposition = s.mul(f, &transposition).mul(f, s);
            sum = sum.add(f, &transposition);
        }
        out.push(sum);
    }
    out
}

/// Every `D^λ` for `λ ⊢ n`, `λ ∈ CP_p(n)`.
pub fn all_irreducibles(n: usize, p: u32) -> Result<Vec<SymRep>, SymRepError> {
    crate::combinatorics::partitions(n, crate::combinatorics::EnumMode::All)
        .iter()
        .filter(|l| classify(l, p).in_cp)
        .map(|l| build_d(l, p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{partitions, residue, EnumMode};

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn check_coxeter(rep: &SymRep) {
        let f = &rep.field;
        let d = rep.dim();
        let id = SparseMatrix::identity(d);
        for (k, s) in rep.gens.iter().enumerate() {
            assert_eq!(s.mul(f, s), id, "s{}^2 for {}", k + 1, rep.lambda);
            for (l, t) in rep.gens.iter().enumerate().skip(k + 1) {
                let st = s.mul(f, t);
                if l == k + 1 {
                    assert_eq!(st.mul(f, s), t.mul(f, s).mul(f, t), "braid {} {}", k + 1, l + 1);
                } else {
                    assert_eq!(st, t.mul(f, s), "commute {} {}", k + 1, l + 1);
                }
            }
        }
    }

    #[test]
    fn rho_examples() {
        let f = FieldCtx::new(5).unwrap();
        let t = Tableau::from_rows(ShapeKind::Straight, vec![vec![1, 2], vec![3]]).unwrap();
        assert_eq!(rho(&f, &t, 1).unwrap(), Scalar::ONE);
        assert_eq!(rho(&f, &t, 2).unwrap(), Scalar::base(2));
        let s = t.swapped(2);
        assert_eq!(rho(&f, &s, 2).unwrap(), f.neg(rho(&f, &t, 2).unwrap()));
        let f7 = FieldCtx::new(7).unwrap();
        let row = Tableau::row_reading(&part(&[7]), ShapeKind::Straight).unwrap();
        assert!(rho(&f7, &row, 3).is_ok());
        // contents 1 and −2 agree mod 3
        let f3 = FieldCtx::new(3).unwrap();
        let clash = Tableau::from_rows(ShapeKind::Straight, vec![vec![1, 4], vec![2], vec![3]]).unwrap();
        assert!(matches!(rho(&f3, &clash, 3), Err(SymRepError::ResidueClash { .. })));
    }

    #[test]
    fn dims_and_radicals() {
        assert_eq!(dim_d(&part(&[4, 1]), 5).unwrap(), 3);
        assert_eq!(dim_d(&part(&[3, 2]), 5).unwrap(), 5);
        assert_eq!(dim_d(&part(&[5]), 5).unwrap(), 1);
        assert_eq!(radical_dim(&part(&[4, 1]), 5).unwrap(), 1);
        assert_eq!(radical_dim(&part(&[3, 2]), 5).unwrap(), 0);
        assert_eq!(radical_dim(&part(&[2, 1, 1, 1]), 5).unwrap(), 3);
        assert!(matches!(dim_d(&part(&[1, 1, 1, 1, 1]), 5), Err(SymRepError::NotCompletelySplittable(..))));
        assert!(matches!(dim_d(&part(&[6]), 5), Err(SymRepError::NTooLarge { .. })));
        assert!(matches!(radical_dim(&part(&[3]), 5), Err(SymRepError::NotAtCharacteristic { .. })));
    }

    #[test]
    fn sign_representation_at_p_3() {
        let rep = build_d(&part(&[2, 1]), 3).unwrap();
        assert_eq!(rep.dim(), 1);
        let minus = rep.field.neg(Scalar::ONE);
        assert_eq!(rep.gens[0].get(0, 0), minus);
        assert_eq!(rep.gens[1].get(0, 0), minus);
    }

    #[test]
    fn trivial_representation() {
        for p in [3u32, 5, 7] {
            let rep = build_d(&Partition::row(p as usize), p).unwrap();
            assert_eq!(rep.dim(), 1);
            assert!(rep.gens.iter().all(|g| g.get(0, 0) == Scalar::ONE));
        }
    }

    #[test]
    fn relations_dims_and_radicals_for_small_p() {
        for p in [3u32, 5, 7] {
            for n in 1..=p as usize {
                let mut built = 0;
                for l in partitions(n, EnumMode::All) {
                    if !classify(&l, p).in_cp {
                        continue;
                    }
                    let rep = build_d(&l, p).unwrap();
                    built += 1;
                    assert_eq!(rep.dim(), dim_d(&l, p).unwrap());
                    check_coxeter(&rep);
                    let f_lambda = to_usize(l.count_standard_hook(ShapeKind::Straight).unwrap());
                    if n < p as usize {
                        assert_eq!(rep.dim(), f_lambda);
                    } else {
                        assert_eq!(radical_dim(&l, p).unwrap(), f_lambda - rep.dim(), "{l}");
                    }
                }
                if n == p as usize {
                    assert_eq!(built, partitions(n, EnumMode::All).len() - 1);
                }
            }
        }
    }

    /// The hook-case rule agrees entrywise with the generic rule on
    /// `Std_p(λ)` transported along `T ↦ T ∖ (1,k)`.
    #[test]
    fn hook_case_matches_generic_rule() {
        for p in [3u32, 5, 7] {
            let n = p as usize;
            for k in 2..n {
                let l = Partition::hook(k, n);
                let hook = build_d(&l, p).unwrap();
                let generic = build_on_p_standard(&l, p).unwrap();
                assert_eq!(hook.dim(), generic.dim());
                let phi: Vec<usize> = generic
                    .basis
                    .iter()
                    .map(|t| hook.index_of(&t.without_max().unwrap()).unwrap())
                    .collect();
                for (g, h) in generic.gens.iter().zip(&hook.gens) {
                    for (r, c, v) in g.entries() {
                        assert_eq!(h.get(phi[r], phi[c]), v);
                    }
                    assert_eq!(g.nnz(), h.nnz());
                }
            }
        }
    }

    #[test]
    fn jucys_murphy_diagonal_with_residues() {
        for p in [5u32, 7] {
            for n in 1..=p as usize {
                for l in partitions(n, EnumMode::All) {
                    if !classify(&l, p).in_cp || hook_at_p(&l, p).is_some() {
                        continue;
                    }
                    let rep = build_d(&l, p).unwrap();
                    let jm = jm_sym(&rep);
                    assert!(jm[0].is_zero());
                    for (k, lk) in jm.iter().enumerate() {
                        assert!(lk.is_diagonal());
                        for (idx, t) in rep.basis.iter().enumerate() {
                            let res = residue(t.position(k + 1), p, ShapeKind::Straight);
                            assert_eq!(lk.get(idx, idx), Scalar::base(res));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn jucys_murphy_hook_case() {
        // on Std(λ⁻) the residues of entries ≤ n−1 are read from λ⁻, and
        // L_n is the residue of the removed node (1,k)
        let p = 5;
        for k in 2..5 {
            let rep = build_d(&Partition::hook(k, 5), p).unwrap();
            let jm = jm_sym(&rep);
            for (idx, t) in rep.basis.iter().enumerate() {
                for kk in 1..5 {
                    let res = residue(t.position(kk), p, ShapeKind::Straight);
                    assert_eq!(jm[kk - 1].get(idx, idx), Scalar::base(res));
                }
                assert_eq!(jm[4].get(idx, idx), Scalar::base((k as u32 - 1) % p));
            }
        }
    }

    #[test]
    fn reduced_words() {
        let tau = Perm::from_images(vec![3, 1, 4, 2]).unwrap();
        let w = reduced_word(&tau);
        let rebuilt = w.iter().fold(Perm::identity(4), |acc, &k| acc.compose(&Perm::simple(4, k)));
        assert_eq!(rebuilt, tau);
        assert_eq!(w.len(), 3);
    }
}
