//! Independent checks on built representations: defining relations,
//! Jucys–Murphy identities, super-commutant dimensions, randomized graded
//! submodule search, and classification cross-checks.

mod spin;
mod suite;

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::field::{FieldCtx, Scalar};
use crate::linalg::{EchelonBasis, SparseMatrix};
use crate::sergeev::{jm_sergeev, SergeevRep};
use crate::symrep::{jm_sym, SymRep};

pub use suite::{cross_check_suite, CheckRecord, SuiteSummary};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("at least one trial is required")]
    NoTrials,
    #[error("dimension {dim} exceeds the commutant cap {cap}")]
    TooLarge { dim: usize, cap: usize },
    #[error("cannot combine modules: {0}")]
    Incompatible(&'static str),
}

/// A named generator matrix and its parity.
#[derive(Clone, Debug)]
pub struct Generator<'a> {
    pub label: String,
    pub matrix: &'a SparseMatrix,
    pub odd: bool,
}

/// Anything that can be fed to the structural checks: a graded module over
/// `F_{p²}` given by generator matrices.
pub trait Representation {
    fn field(&self) -> &FieldCtx;
    fn dim(&self) -> usize;
    fn generators(&self) -> Vec<Generator<'_>>;
    /// Parity bit of each basis vector (all zero when ungraded).
    fn parities(&self) -> Vec<u8>;
    /// Commuting elements of the acting algebra that are diagonal in the
    /// chosen basis. Only used to prune unknowns in the commutant solve;
    /// returning nothing is always correct.
    fn diagonal_elements(&self) -> Vec<SparseMatrix>;
}

impl Representation for SymRep {
    fn field(&self) -> &FieldCtx {
        &self.field
    }

    fn dim(&self) -> usize {
        SymRep::dim(self)
    }

    fn generators(&self) -> Vec<Generator<'_>> {
        self.gens
            .iter()
            .enumerate()
            .map(|(i, m)| Generator {
                label: format!("s{}", i + 1),
                matrix: m,
                odd: false,
            })
            .collect()
    }

    fn parities(&self) -> Vec<u8> {
        vec![0; SymRep::dim(self)]
    }

    fn diagonal_elements(&self) -> Vec<SparseMatrix> {
        jm_sym(self).into_iter().filter(SparseMatrix::is_diagonal).collect()
    }
}

impl Representation for SergeevRep {
    fn field(&self) -> &FieldCtx {
        &self.field
    }

    fn dim(&self) -> usize {
        SergeevRep::dim(self)
    }

    fn generators(&self) -> Vec<Generator<'_>> {
        fn labelled<'a>(prefix: &str, mats: &'a [SparseMatrix], odd: bool) -> Vec<Generator<'a>> {
            mats.iter()
                .enumerate()
                .map(|(i, m)| Generator {
                    label: format!("{prefix}{}", i + 1),
                    matrix: m,
                    odd,
                })
                .collect()
        }
        let mut out = labelled("c", &self.c, true);
        out.extend(labelled("s", &self.s, false));
        out.extend(labelled("x", &self.x, false));
        out
    }

    fn parities(&self) -> Vec<u8> {
        SergeevRep::parities(self)
    }

    fn diagonal_elements(&self) -> Vec<SparseMatrix> {
        self.x.iter().filter(|m| m.is_diagonal()).cloned().collect()
    }
}

/// A module given directly by labelled generator matrices.
#[derive(Clone, Debug)]
pub struct GenericModule {
    pub field: FieldCtx,
    pub gens: Vec<(String, SparseMatrix, bool)>,
    pub parity: Vec<u8>,
    pub diagonal: Vec<SparseMatrix>,
}

impl Representation for GenericModule {
    fn field(&self) -> &FieldCtx {
        &self.field
    }

    fn dim(&self) -> usize {
        self.parity.len()
    }

    fn generators(&self) -> Vec<Generator<'_>> {
        self.gens
            .iter()
            .map(|(label, m, odd)| Generator {
                label: label.clone(),
                matrix: m,
                odd: *odd,
            })
            .collect()
    }

    fn parities(&self) -> Vec<u8> {
        self.parity.clone()
    }

    fn diagonal_elements(&self) -> Vec<SparseMatrix> {
        self.diagonal.clone()
    }
}

/// `a ⊕ b`, generator by generator. Both sides must present the same
/// generators in the same order.
pub fn direct_sum(a: &dyn Representation, b: &dyn Representation) -> Result<GenericModule, VerifyError> {
    if a.field() != b.field() {
        return Err(VerifyError::Incompatible("different fields"));
    }
    let (ga, gb) = (a.generators(), b.generators());
    if ga.len() != gb.len()
        || ga.iter().zip(&gb).any(|(x, y)| x.label != y.label || x.odd != y.odd)
    {
        return Err(VerifyError::Incompatible("generator lists differ"));
    }
    let gens = ga
        .iter()
        .zip(&gb)
        .map(|(x, y)| {
            (
                x.label.clone(),
                SparseMatrix::block_diag(&[x.matrix, y.matrix]),
                x.odd,
            )
        })
        .collect();
    let (da, db) = (a.diagonal_elements(), b.diagonal_elements());
    let diagonal = if da.len() == db.len() {
        da.iter().zip(&db).map(|(x, y)| SparseMatrix::block_diag(&[x, y])).collect()
    } else {
        Vec::new()
    };
    let mut parity = a.parities();
    parity.extend(b.parities());
    Ok(GenericModule {
        field: *a.field(),
        gens,
        parity,
        diagonal,
    })
}

/// One failed identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub relation: String,
    /// Generator indices (1-based) involved.
    pub indices: Vec<usize>,
    /// First matrix coordinate where the two sides differ.
    pub witness: (usize, usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ViolationReport {
    pub violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn names(&self) -> Vec<&str> {
        self.violations.iter().map(|v| v.relation.as_str()).collect()
    }

    fn expect_eq(&mut self, relation: String, indices: Vec<usize>, lhs: &SparseMatrix, rhs: &SparseMatrix) {
        if let Some(witness) = lhs.first_difference(rhs) {
            self.violations.push(Violation {
                relation,
                indices,
                witness,
            });
        }
    }
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "all relations hold");
        }
        for v in &self.violations {
            writeln!(f, "{} fails at {:?}", v.relation, v.witness)?;
        }
        Ok(())
    }
}

/// Relation and Jucys–Murphy checks specific to each algebra.
pub trait Checkable: Representation {
    fn check_relations(&self) -> ViolationReport;
    fn check_jm(&self) -> ViolationReport;
}

fn coxeter(f: &FieldCtx, s: &[SparseMatrix], report: &mut ViolationReport) {
    let d = s.first().map_or(0, SparseMatrix::rows);
    let id = SparseMatrix::identity(d);
    for i in 0..s.len() {
        report.expect_eq(format!("s{}^2 = 1", i + 1), vec![i + 1], &s[i].mul(f, &s[i]), &id);
        if i + 1 < s.len() {
            let (a, b) = (&s[i], &s[i + 1]);
            report.expect_eq(
                format!("s{0}s{1}s{0} = s{1}s{0}s{1}", i + 1, i + 2),
                vec![i + 1, i + 2],
                &a.mul(f, b).mul(f, a),
                &b.mul(f, a).mul(f, b),
            );
        }
        for j in i + 2..s.len() {
            report.expect_eq(
                format!("s{0}s{1} = s{1}s{0}", i + 1, j + 1),
                vec![i + 1, j + 1],
                &s[i].mul(f, &s[j]),
                &s[j].mul(f, &s[i]),
            );
        }
    }
}

impl Checkable for SymRep {
    fn check_relations(&self) -> ViolationReport {
        let mut report = ViolationReport::default();
        coxeter(&self.field, &self.gens, &mut report);
        report
    }

    /// Each `L_k` must be diagonal on the tableau basis and `L_1 = 0`.
    fn check_jm(&self) -> ViolationReport {
        let mut report = ViolationReport::default();
        for (k, l) in jm_sym(self).iter().enumerate() {
            if k == 0 {
                report.expect_eq("L1 = 0".into(), vec![1], l, &SparseMatrix::zeros(l.rows(), l.cols()));
            } else if !l.is_diagonal() {
                let witness = l
                    .entries()
                    .find(|&(i, j, v)| i != j && !v.is_zero())
                    .map(|(i, j, _)| (i, j))
                    .unwrap_or((0, 0));
                report.violations.push(Violation {
                    relation: format!("L{} diagonal", k + 1),
                    indices: vec![k + 1],
                    witness,
                });
            }
        }
        report
    }
}

/// The defining relations of the affine Sergeev superalgebra together with
/// the grading, evaluated on explicit matrices.
pub fn sergeev_relations(
    f: &FieldCtx,
    c: &[SparseMatrix],
    s: &[SparseMatrix],
    x: &[SparseMatrix],
    parity: &SparseMatrix,
) -> ViolationReport {
    let mut report = ViolationReport::default();
    let n = c.len();
    let d = parity.rows();
    let id = SparseMatrix::identity(d);
    let one = Scalar::ONE;
    let minus_one = f.neg(one);
    coxeter(f, s, &mut report);

    for i in 0..n {
        report.expect_eq(format!("c{}^2 = 1", i + 1), vec![i + 1], &c[i].mul(f, &c[i]), &id);
        for j in i + 1..n {
            report.expect_eq(
                format!("c{0}c{1} = -c{1}c{0}", i + 1, j + 1),
                vec![i + 1, j + 1],
                &c[i].mul(f, &c[j]),
                &c[j].mul(f, &c[i]).neg(f),
            );
            report.expect_eq(
                format!("x{0}x{1} = x{1}x{0}", i + 1, j + 1),
                vec![i + 1, j + 1],
                &x[i].mul(f, &x[j]),
                &x[j].mul(f, &x[i]),
            );
        }
        for j in 0..n {
            let (lhs, rhs, name) = if i == j {
                (x[i].mul(f, &c[i]), c[i].mul(f, &x[i]).neg(f), format!("x{0}c{0} = -c{0}x{0}", i + 1))
            } else {
                (x[i].mul(f, &c[j]), c[j].mul(f, &x[i]), format!("x{0}c{1} = c{1}x{0}", i + 1, j + 1))
            };
            report.expect_eq(name, vec![i + 1, j + 1], &lhs, &rhs);
        }
    }

    for (i, si) in s.iter().enumerate() {
        // s_i x_i = x_{i+1} s_i − (1 + c_i c_{i+1})
        let correction = id.add(f, &c[i].mul(f, &c[i + 1]));
        report.expect_eq(
            format!("s{0}x{0} = x{1}s{0} - (1 + c{0}c{1})", i + 1, i + 2),
            vec![i + 1],
            &si.mul(f, &x[i]),
            &x[i + 1].mul(f, si).lin_comb(f, one, &correction, minus_one),
        );
        for j in 0..n {
            if j != i && j != i + 1 {
                report.expect_eq(
                    format!("s{0}x{1} = x{1}s{0}", i + 1, j + 1),
                    vec![i + 1, j + 1],
                    &si.mul(f, &x[j]),
                    &x[j].mul(f, si),
                );
            }
            // s_i c_j = c_{s_i(j)} s_i
            let image = if j == i {
                i + 1
            } else if j == i + 1 {
                i
            } else {
                j
            };
            report.expect_eq(
                format!("s{0}c{1} = c{2}s{0}", i + 1, j + 1, image + 1),
                vec![i + 1, j + 1],
                &si.mul(f, &c[j]),
                &c[image].mul(f, si),
            );
        }
    }

    report.expect_eq("parity^2 = 1".into(), vec![], &parity.mul(f, parity), &id);
    if !parity.is_diagonal() {
        report.violations.push(Violation {
            relation: "parity diagonal".into(),
            indices: vec![],
            witness: parity
                .entries()
                .find(|&(i, j, _)| i != j)
                .map(|(i, j, _)| (i, j))
                .unwrap_or((0, 0)),
        });
    }
    for (k, m) in s.iter().enumerate() {
        report.expect_eq(format!("s{} even", k + 1), vec![k + 1], &parity.mul(f, m), &m.mul(f, parity));
    }
    for (k, m) in x.iter().enumerate() {
        report.expect_eq(format!("x{} even", k + 1), vec![k + 1], &parity.mul(f, m), &m.mul(f, parity));
    }
    for (k, m) in c.iter().enumerate() {
        report.expect_eq(
            format!("c{} odd", k + 1),
            vec![k + 1],
            &parity.mul(f, m),
            &m.mul(f, parity).neg(f),
        );
    }
    report
}

impl Checkable for SergeevRep {
    fn check_relations(&self) -> ViolationReport {
        let mut report = sergeev_relations(&self.field, &self.c, &self.s, &self.x, &self.parity);
        if let Some(theta) = &self.theta {
            let f = &self.field;
            let id = SparseMatrix::identity(self.dim());
            report.expect_eq("theta^2 = 1".into(), vec![], &theta.mul(f, theta), &id);
            report.expect_eq(
                "theta odd".into(),
                vec![],
                &self.parity.mul(f, theta),
                &theta.mul(f, &self.parity).neg(f),
            );
        }
        report
    }

    /// The algebra acts through the quotient `x_k ↦ L_k`: `X_1 = 0` and
    /// `L_k = X_k` for every `k`.
    fn check_jm(&self) -> ViolationReport {
        let mut report = ViolationReport::default();
        let d = self.dim();
        report.expect_eq("x1 = 0".into(), vec![1], &self.x[0], &SparseMatrix::zeros(d, d));
        for (k, l) in jm_sergeev(self).iter().enumerate() {
            report.expect_eq(format!("L{0} = x{0}", k + 1), vec![k + 1], l, &self.x[k]);
        }
        report
    }
}

pub fn check_relations(rep: &impl Checkable) -> ViolationReport {
    rep.check_relations()
}

pub fn check_jm(rep: &impl Checkable) -> ViolationReport {
    rep.check_jm()
}

/// Dimensions of the even and odd parts of the super-commutant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CommutantResult {
    pub even_dim: usize,
    pub odd_dim: usize,
}

pub const DEFAULT_COMMUTANT_CAP: usize = 128;

/// Solves `GM = ±MG` for all generators `G`, separately for parity-preserving
/// `M` (all signs `+`) and parity-reversing `M` (sign `−` exactly when `G` is
/// odd).
///
/// An `M` commuting with a diagonal algebra element `D` satisfies
/// `M_ik (D_ii − D_kk) = 0`, so only coordinates whose diagonal signatures
/// agree are kept as unknowns; the remaining system is eliminated exactly.
pub fn super_commutant_dim(rep: &dyn Representation, cap: usize) -> Result<CommutantResult, VerifyError> {
    let d = rep.dim();
    if d > cap {
        return Err(VerifyError::TooLarge { dim: d, cap });
    }
    let diag: Vec<Vec<Scalar>> = rep.diagonal_elements().iter().map(SparseMatrix::diag).collect();
    let signature = |i: usize| -> Vec<Scalar> { diag.iter().map(|dv| dv[i]).collect() };
    let mut classes: HashMap<Vec<Scalar>, Vec<usize>> = HashMap::new();
    for i in 0..d {
        classes.entry(signature(i)).or_default().push(i);
    }
    let mut class_list: Vec<Vec<usize>> = classes.into_values().collect();
    class_list.sort();

    let parity = rep.parities();
    let gens = rep.generators();
    let transposed: Vec<SparseMatrix> = gens.iter().map(|g| g.matrix.transpose()).collect();
    let f = rep.field();

    let solve = |odd_m: bool| -> usize {
        let mut vars: HashMap<(usize, usize), usize> = HashMap::new();
        let mut order: Vec<(usize, usize)> = Vec::new();
        for class in &class_list {
            for &i in class {
                for &k in class {
                    if (parity[i] != parity[k]) == odd_m {
                        vars.insert((i, k), order.len());
                        order.push((i, k));
                    }
                }
            }
        }
        let nv = order.len();
        if nv == 0 {
            return 0;
        }
        let mut echelon = EchelonBasis::new(nv);
        for (g, gt) in gens.iter().zip(&transposed) {
            let negate = odd_m && g.odd;
            // (GM)_{ij} − ε (MG)_{ij}
            let mut equations: HashMap<(usize, usize), Vec<(usize, Scalar)>> = HashMap::new();
            for (idx, &(k, j)) in order.iter().enumerate() {
                // GM: Σ_k G_ik M_kj — column k of G
                for (i, v) in gt.row(k) {
                    equations.entry((i, j)).or_default().push((idx, v));
                }
            }
            for (idx, &(i, k)) in order.iter().enumerate() {
                // MG: Σ_k M_ik G_kj — row k of G
                for (j, v) in g.matrix.row(k) {
                    let coef = if negate { v } else { f.neg(v) };
                    equations.entry((i, j)).or_default().push((idx, coef));
                }
            }
            let mut keys: Vec<(usize, usize)> = equations.keys().copied().collect();
            keys.sort_unstable();
            for key in keys {
                let mut row = vec![Scalar::ZERO; nv];
                for &(idx, v) in &equations[&key] {
                    row[idx] = f.add(row[idx], v);
                }
                if row.iter().any(|x| !x.is_zero()) {
                    echelon.insert(f, &row);
                }
                if echelon.is_full() {
                    return 0;
                }
            }
        }
        nv - echelon.rank()
    };

    Ok(CommutantResult {
        even_dim: solve(false),
        odd_dim: solve(true),
    })
}

fn build_spinner(rep: &dyn Representation) -> SpinEngine {
    let gens = rep.generators();
    let ops: Vec<(&SparseMatrix, bool)> = gens.iter().map(|g| (g.matrix, g.odd)).collect();
    let parity = rep.parities();
    match spin::Tables::new(rep.field()) {
        Some(t) => SpinEngine::Table(spin::Spinner::new(t, &parity, &ops)),
        None => SpinEngine::Generic(spin::Spinner::new(*rep.field(), &parity, &ops)),
    }
}

enum SpinEngine {
    Table(spin::Spinner<spin::Tables>),
    Generic(spin::Spinner<FieldCtx>),
}

impl SpinEngine {
    fn spin(&self, starts: &[Vec<Scalar>], stop_when_full: bool) -> Option<Vec<Vec<Scalar>>> {
        match self {
            SpinEngine::Table(s) => s.spin(starts, stop_when_full),
            SpinEngine::Generic(s) => s.spin(starts, stop_when_full),
        }
    }
}

/// Basis of the smallest graded submodule containing `vectors`.
pub fn spin_closure(rep: &dyn Representation, vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    build_spinner(rep)
        .spin(vectors, false)
        .expect("full closure requested")
}

/// Randomized search for a proper nonzero graded submodule.
///
/// Trial `t` spins either a standard basis vector (even `t`, cycling through
/// the basis) or a uniformly random vector supported on one parity component
/// (odd `t`). Returns a basis of the first proper closure found.
pub fn find_proper_graded_submodule(
    rep: &dyn Representation,
    trials: usize,
    seed: u64,
) -> Result<Option<Vec<Vec<Scalar>>>, VerifyError> {
    if trials == 0 {
        return Err(VerifyError::NoTrials);
    }
    let d = rep.dim();
    if d <= 1 {
        return Ok(None);
    }
    let engine = build_spinner(rep);
    let parity = rep.parities();
    let elements: Vec<Scalar> = rep.field().elements().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let mut v = vec![Scalar::ZERO; d];
        if t % 2 == 0 {
            v[(t / 2) % d] = Scalar::ONE;
        } else {
            let comp: u8 = rng.gen_range(0..2);
            for (x, &par) in v.iter_mut().zip(&parity) {
                if par == comp {
                    *x = elements[rng.gen_range(0..elements.len())];
                }
            }
            if v.iter().all(|x| x.is_zero()) {
                continue;
            }
        }
        if let Some(basis) = engine.spin(&[v], true) {
            return Ok(Some(basis));
        }
    }
    Ok(None)
}
