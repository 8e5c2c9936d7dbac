//! Irreducible completely splittable modules of the Sergeev superalgebra for
//! `n ≤ p`: Clifford modules `L(i)` built as iterated super tensor products,
//! and the modules `V^ξ` assembled from twisted copies of one `L(i)`.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::combinatorics::{
    classify, weight_orbit, CombinatoricsError, OrbitSeed, Partition, Perm, ResidueSeq, ShapeKind,
    Tableau,
};
use crate::field::{FieldCtx, FieldError, Scalar};
use crate::linalg::SparseMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SergeevError {
    #[error("n = {n} exceeds p = {p}; only n <= p is supported")]
    NTooLarge { n: usize, p: u32 },
    #[error("{0} is not a strict partition")]
    NotStrict(Partition),
    #[error("{0} does not label a completely splittable module for p = {1}")]
    NotInClass(Partition, u32),
    #[error("q-values of residues {0} and {1} coincide")]
    KappaClash(u32, u32),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Combinatorics(#[from] CombinatoricsError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ModuleType {
    M,
    Q,
}

impl fmt::Display for ModuleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModuleType::M => "M",
            ModuleType::Q => "Q",
        })
    }
}

/// `q(i) = i(i+1) mod p`.
pub fn q_val(i: i64, p: u32) -> u32 {
    (i * (i + 1)).rem_euclid(p as i64) as u32
}

/// An irreducible module over the algebra generated by `x_1..x_n` and
/// `c_1..c_n`, with its grading and, for type Q, an odd involution `θ`
/// super-commuting with every generator.
#[derive(Clone, Debug)]
pub struct CliffordModule {
    pub field: FieldCtx,
    pub weight: ResidueSeq,
    /// Diagonal `±1`: `+1` on even basis vectors.
    pub parity: SparseMatrix,
    pub x: Vec<SparseMatrix>,
    pub c: Vec<SparseMatrix>,
    pub module_type: ModuleType,
    pub theta: Option<SparseMatrix>,
}

impl CliffordModule {
    pub fn dim(&self) -> usize {
        self.parity.rows()
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// Parity bit (0 even, 1 odd) of each basis vector.
    pub fn parities(&self) -> Vec<u8> {
        self.parity.diag().iter().map(|&s| u8::from(s != Scalar::ONE)).collect()
    }

    /// The two-dimensional module `L(i)` of the rank-one algebra.
    fn base(f: &FieldCtx, i: u32) -> CliffordModule {
        let p = f.p();
        let root = f.sqrt_base(q_val(i as i64, p));
        let minus_one = f.neg(Scalar::ONE);
        let x = SparseMatrix::diagonal(&[root, f.neg(root)]);
        let c = SparseMatrix::from_triplets(f, 2, 2, [(0, 1, Scalar::ONE), (1, 0, Scalar::ONE)]);
        let parity = SparseMatrix::diagonal(&[Scalar::ONE, minus_one]);
        let (module_type, theta) = if i == 0 {
            // ω·[[0,1],[−1,0]] anticommutes with c and squares to 1
            let w = f.sqrt_minus_one();
            let theta = SparseMatrix::from_triplets(f, 2, 2, [(0, 1, w), (1, 0, f.neg(w))]);
            (ModuleType::Q, Some(theta))
        } else {
            (ModuleType::M, None)
        };
        CliffordModule {
            field: *f,
            weight: ResidueSeq::new(vec![i], p).expect("checked by caller"),
            parity,
            x: vec![x],
            c: vec![c],
            module_type,
            theta,
        }
    }

    /// An irreducible constituent of the super tensor product `self ⊠ L(i)`.
    fn extend(self, i: u32) -> CliffordModule {
        let f = self.field;
        let w = Self::base(&f, i);
        let id_v = SparseMatrix::identity(self.dim());
        let id_w = SparseMatrix::identity(2);

        let mut x: Vec<SparseMatrix> = self.x.iter().map(|a| a.kron(&f, &id_w)).collect();
        let mut c: Vec<SparseMatrix> = self.c.iter().map(|a| a.kron(&f, &id_w)).collect();
        x.push(id_v.kron(&f, &w.x[0]));
        // the sign rule (1⊗b)(v⊗w) = (−1)^{|b||v|} v⊗bw for odd b
        c.push(self.parity.kron(&f, &w.c[0]));
        let parity = self.parity.kron(&f, &w.parity);
        let mut weight = self.weight.entries().to_vec();
        weight.push(i);
        let weight = ResidueSeq::new(weight, f.p()).expect("entries already validated");

        let full = CliffordModule {
            field: f,
            weight,
            parity,
            x,
            c,
            module_type: ModuleType::M,
            theta: None,
        };
        match (self.theta, w.theta) {
            (None, None) => full,
            (Some(tv), None) => CliffordModule {
                module_type: ModuleType::Q,
                theta: Some(tv.kron(&f, &id_w)),
                ..full
            },
            (None, Some(tw)) => CliffordModule {
                module_type: ModuleType::Q,
                theta: Some(self.parity.kron(&f, &tw)),
                ..full
            },
            (Some(tv), Some(tw)) => {
                // J = (θ_V ⊗ 1)(1 ⊗ θ_W) is even, commutes with everything
                // and squares to −1; keep its ω-eigenspace
                let j = tv.mul(&f, &self.parity).kron(&f, &tw);
                full.split_eigenspace(&j)
            }
        }
    }

    /// Restricts to the `ω`-eigenspace of a monomial `J` with `J² = −1`.
    fn split_eigenspace(self, j: &SparseMatrix) -> CliffordModule {
        let f = self.field;
        let omega = f.sqrt_minus_one();
        let omega_inv = f.inv(omega).expect("ω ≠ 0");
        let d = self.dim();
        let columns = j.transpose();
        let mut basis = Vec::with_capacity(d / 2);
        let mut leads = Vec::with_capacity(d / 2);
        for t in 0..d {
            let mut image = columns.row(t);
            let (s, alpha) = image.next().expect("J is monomial");
            debug_assert!(image.next().is_none());
            if s == t {
                if alpha == omega {
                    basis.push(vec![(t, Scalar::ONE)]);
                    leads.push(t);
                }
            } else if t < s {
                basis.push(vec![(t, Scalar::ONE), (s, f.mul(alpha, omega_inv))]);
                leads.push(t);
            }
        }
        let restrict = |m: &SparseMatrix| {
            m.restrict(&f, &basis, &leads)
                .expect("J commutes with every generator")
        };
        CliffordModule {
            field: f,
            weight: self.weight.clone(),
            parity: restrict(&self.parity),
            x: self.x.iter().map(restrict).collect(),
            c: self.c.iter().map(restrict).collect(),
            module_type: ModuleType::M,
            theta: None,
        }
    }

    /// Failed defining identities, as human-readable labels.
    pub fn violations(&self) -> Vec<String> {
        let f = &self.field;
        let d = self.dim();
        let id = SparseMatrix::identity(d);
        let mut out = Vec::new();
        let mut check = |ok: bool, label: String| {
            if !ok {
                out.push(label);
            }
        };
        check(self.parity.is_diagonal() && self.parity.mul(f, &self.parity) == id, "parity involution".into());
        for k in 0..self.n() {
            let (xk, ck) = (&self.x[k], &self.c[k]);
            let kappa = Scalar::base(q_val(self.weight.entries()[k] as i64, f.p()));
            check(ck.mul(f, ck) == id, format!("c{}^2 = 1", k + 1));
            check(xk.mul(f, xk) == SparseMatrix::scalar(d, kappa), format!("x{}^2 = q", k + 1));
            check(xk.mul(f, ck) == ck.mul(f, xk).neg(f), format!("x{0} c{0} = -c{0} x{0}", k + 1));
            check(self.parity.mul(f, ck) == ck.mul(f, &self.parity).neg(f), format!("c{} odd", k + 1));
            check(self.parity.mul(f, xk) == xk.mul(f, &self.parity), format!("x{} even", k + 1));
            for l in 0..self.n() {
                if l == k {
                    continue;
                }
                let (xl, cl) = (&self.x[l], &self.c[l]);
                check(ck.mul(f, cl) == cl.mul(f, ck).neg(f), format!("c{} c{} anticommute", k + 1, l + 1));
                check(xk.mul(f, cl) == cl.mul(f, xk), format!("x{} c{} commute", k + 1, l + 1));
                check(xk.mul(f, xl) == xl.mul(f, xk), format!("x{} x{} commute", k + 1, l + 1));
            }
            if let Some(t) = &self.theta {
                check(t.mul(f, ck) == ck.mul(f, t).neg(f), format!("theta c{} anticommute", k + 1));
                check(t.mul(f, xk) == xk.mul(f, t), format!("theta x{} commute", k + 1));
            }
        }
        if let Some(t) = &self.theta {
            check(t.mul(f, t) == id, "theta^2 = 1".into());
            check(self.parity.mul(f, t) == t.mul(f, &self.parity).neg(f), "theta odd".into());
        }
        let gamma0 = self.weight.zero_count();
        let expected_type = if gamma0.is_multiple_of(2) { ModuleType::M } else { ModuleType::Q };
        check(self.module_type == expected_type, "module type".into());
        check(self.theta.is_some() == (self.module_type == ModuleType::Q), "theta presence".into());
        check(d == 1 << (self.n() - gamma0 / 2), "dimension".into());
        out
    }
}

/// `L(i_1) ⊛ ⋯ ⊛ L(i_n)`, built left to right.
pub fn build_l(i: &ResidueSeq, p: u32) -> Result<CliffordModule, SergeevError> {
    let f = FieldCtx::new(p as u64)?;
    let entries = ResidueSeq::new(i.entries().to_vec(), p)?;
    let mut it = entries.entries().iter();
    let first = *it.next().expect("weight of length at least one");
    Ok(it.fold(CliffordModule::base(&f, first), |m, &v| m.extend(v)))
}

/// A square root of `1 − 2(κ_a + κ_b)/(κ_a − κ_b)²`, canonical branch.
pub fn omega_scalar(f: &FieldCtx, a: u32, b: u32) -> Result<Scalar, SergeevError> {
    let (ka, kb) = (q_val(a as i64, f.p()), q_val(b as i64, f.p()));
    let diff = f.sub(Scalar::base(ka), Scalar::base(kb));
    let inv = f.inv(diff).map_err(|_| SergeevError::KappaClash(a, b))?;
    let ratio = f.mul(f.mul(Scalar::base(2), f.add(Scalar::base(ka), Scalar::base(kb))), f.mul(inv, inv));
    let radicand = f.sub(Scalar::ONE, ratio);
    Ok(f.sqrt_base(radicand.a))
}

/// `Ξ = −[(X_a + X_b) + C_a C_b (X_a − X_b)]·(κ_a − κ_b)⁻¹` on `u`, where
/// `κ_m` is the scalar by which `X_m²` acts; `a`, `b` are 1-based.
pub fn xi_matrix(u: &CliffordModule, a: usize, b: usize) -> Result<SparseMatrix, SergeevError> {
    let f = &u.field;
    let (ia, ib) = (u.weight.get(a), u.weight.get(b));
    let (ka, kb) = (q_val(ia as i64, f.p()), q_val(ib as i64, f.p()));
    let inv = f
        .inv(f.sub(Scalar::base(ka), Scalar::base(kb)))
        .map_err(|_| SergeevError::KappaClash(ia, ib))?;
    let (xa, xb) = (&u.x[a - 1], &u.x[b - 1]);
    let cc = u.c[a - 1].mul(f, &u.c[b - 1]);
    let sum = xa.add(f, xb);
    let diff = xa.sub(f, xb);
    Ok(sum.add(f, &cc.mul(f, &diff)).scale(f, f.neg(inv)))
}

/// The module `V^ξ`: one twisted copy of `U = L(i_{T^ξ})` per shifted
/// p-standard tableau, in tableau order.
#[derive(Clone, Debug)]
pub struct SergeevRep {
    pub field: FieldCtx,
    pub xi: Partition,
    pub blocks: Vec<Tableau>,
    /// `perms[β]` carries the seed tableau to `blocks[β]`.
    pub perms: Vec<Perm>,
    pub block_dim: usize,
    pub module_type: ModuleType,
    pub c: Vec<SparseMatrix>,
    pub s: Vec<SparseMatrix>,
    pub x: Vec<SparseMatrix>,
    pub parity: SparseMatrix,
    /// Odd involution super-commuting with all generators (type Q only).
    pub theta: Option<SparseMatrix>,
}

impl SergeevRep {
    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn n(&self) -> usize {
        self.xi.n()
    }

    pub fn dim(&self) -> usize {
        self.parity.rows()
    }

    pub fn parities(&self) -> Vec<u8> {
        self.parity.diag().iter().map(|&s| u8::from(s != Scalar::ONE)).collect()
    }
}

fn check_domain(xi: &Partition, p: u32) -> Result<(), SergeevError> {
    if xi.n() > p as usize {
        return Err(SergeevError::NTooLarge { n: xi.n(), p });
    }
    if !xi.is_strict() {
        return Err(SergeevError::NotStrict(xi.clone()));
    }
    if !classify(xi, p).in_cps {
        return Err(SergeevError::NotInClass(xi.clone(), p));
    }
    Ok(())
}

/// `(p−u, u)` with `1 ≤ u ≤ (p−3)/2`.
fn top_row_case(xi: &Partition, p: u32) -> Option<usize> {
    let p = p as usize;
    (xi.len() == 2 && xi.part(1) < p && xi.part(2) == p - xi.part(1) && 2 * xi.part(2) + 3 <= p)
        .then(|| xi.part(2))
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Closed-form dimension and type of `V^ξ`.
pub fn dim_m(xi: &Partition, p: u32) -> Result<(usize, ModuleType), SergeevError> {
    use num_traits::ToPrimitive;
    check_domain(xi, p)?;
    let n = xi.n();
    let power = 1usize << (n - xi.len() / 2);
    let dim = match top_row_case(xi, p) {
        Some(u) => {
            let numer = power * (n - 2 * u + 1) * binom(n - 2, u - 1);
            debug_assert_eq!(numer % (n - u), 0);
            numer / (n - u)
        }
        None => {
            let count = xi.count_standard_hook(ShapeKind::Shifted)?;
            power * count.to_usize().expect("count fits in usize")
        }
    };
    let b = classify(xi, p).b;
    let ty = if b.is_multiple_of(2) { ModuleType::M } else { ModuleType::Q };
    Ok((dim, ty))
}

pub fn build_v(xi: &Partition, p: u32) -> Result<SergeevRep, SergeevError> {
    check_domain(xi, p)?;
    let seed = Tableau::row_reading(xi, ShapeKind::Shifted)?;
    let orbit = weight_orbit(&OrbitSeed::Tableau(seed), p)?;
    let u = build_l(orbit.seed(), p)?;
    let f = u.field;
    let n = xi.n();
    let d = u.dim();

    let tableaux = orbit.tableaux.clone().expect("seeded by a tableau");
    let mut order: Vec<usize> = (0..orbit.len()).collect();
    order.sort_by(|&a, &b| tableaux[a].cmp(&tableaux[b]));
    let blocks: Vec<Tableau> = order.iter().map(|&j| tableaux[j].clone()).collect();
    let perms: Vec<Perm> = order.iter().map(|&j| orbit.perms[j].clone()).collect();
    let inverses: Vec<Perm> = perms.iter().map(Perm::inverse).collect();
    let block_of: HashMap<&Perm, usize> = perms.iter().enumerate().map(|(b, t)| (t, b)).collect();
    let nb = blocks.len();
    let total = nb * d;

    let assemble = |pick: &dyn Fn(usize) -> SparseMatrix| {
        let mats: Vec<SparseMatrix> = (0..nb).map(pick).collect();
        SparseMatrix::block_diag(&mats.iter().collect::<Vec<_>>())
    };
    let c: Vec<SparseMatrix> = (1..=n)
        .map(|m| assemble(&|b| u.c[inverses[b].apply(m) - 1].clone()))
        .collect();
    let x: Vec<SparseMatrix> = (1..=n)
        .map(|m| assemble(&|b| u.x[inverses[b].apply(m) - 1].clone()))
        .collect();

    let mut xi_cache: HashMap<(usize, usize), SparseMatrix> = HashMap::new();
    let mut s = Vec::with_capacity(n.saturating_sub(1));
    for k in 1..n {
        let mut entries = Vec::new();
        for b in 0..nb {
            let (ia, ib) = (inverses[b].apply(k), inverses[b].apply(k + 1));
            if let std::collections::hash_map::Entry::Vacant(e) = xi_cache.entry((ia, ib)) {
                e.insert(xi_matrix(&u, ia, ib)?);
            }
            let off = b * d;
            entries.extend(xi_cache[&(ia, ib)].entries().map(|(r, cc, v)| (off + r, off + cc, v)));
            let (ra, rb) = (u.weight.get(ia), u.weight.get(ib));
            if ra.abs_diff(rb) != 1 {
                let target = Perm::simple(n, k).compose(&perms[b]);
                let tb = *block_of
                    .get(&target)
                    .expect("admissible moves stay inside the orbit");
                let omega = omega_scalar(&f, ra, rb)?;
                entries.extend((0..d).map(|r| (tb * d + r, off + r, omega)));
            }
        }
        s.push(SparseMatrix::from_triplets(&f, total, total, entries));
    }

    let parity = assemble(&|_| u.parity.clone());
    let theta = u.theta.as_ref().map(|t| assemble(&|_| t.clone()));
    Ok(SergeevRep {
        field: f,
        xi: xi.clone(),
        blocks,
        perms,
        block_dim: d,
        module_type: u.module_type,
        c,
        s,
        x,
        parity,
        theta,
    })
}

/// `L_k = Σ_{j<k} (1 + c_j c_k)(j k)` from the generator matrices.
pub fn jm_sergeev(rep: &SergeevRep) -> Vec<SparseMatrix> {
    let f = &rep.field;
    let d = rep.dim();
    let id = SparseMatrix::identity(d);
    let mut out = vec![SparseMatrix::zeros(d, d)];
    for k in 2..=rep.n() {
        let mut transposition = rep.s[k - 2].clone();
        let mut sum = SparseMatrix::zeros(d, d);
        for j in (1..k).rev() {
            if j < k - 1 {
                let sj = &rep.s[j - 1];
                transposition = sj.mul(f, &transposition).mul(f, sj);
            }
            let factor = id.add(f, &rep.c[j - 1].mul(f, &rep.c[k - 1]));
            sum = sum.add(f, &factor.mul(f, &transposition));
        }
        out.push(sum);
    }
    out
}

/// Every `V^ξ` for `ξ ⊢ n` in the completely splittable class.
pub fn all_irreducibles(n: usize, p: u32) -> Result<Vec<SergeevRep>, SergeevError> {
    crate::combinatorics::partitions(n, crate::combinatorics::EnumMode::Strict)
        .iter()
        .filter(|xi| classify(xi, p).in_cps)
        .map(|xi| build_v(xi, p))
        .collect()
}
