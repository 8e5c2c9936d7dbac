//! Graded spinning: the smallest subspace containing a homogeneous vector
//! and stable under a set of homogeneous operators.
//!
//! Vectors are kept in the coordinates of their parity component, with one
//! semi-echelon basis per component. For small primes field elements are
//! encoded as `a + p·b` and multiplied through lookup tables, which is the
//! difference between seconds and minutes for a hundred trials at dimension
//! several hundred.

use crate::field::{FieldCtx, Scalar};
use crate::linalg::SparseMatrix;

pub(crate) trait Arith {
    type E: Copy + Eq;
    fn zero(&self) -> Self::E;
    fn is_zero(&self, x: Self::E) -> bool;
    fn add(&self, x: Self::E, y: Self::E) -> Self::E;
    fn mul(&self, x: Self::E, y: Self::E) -> Self::E;
    fn neg(&self, x: Self::E) -> Self::E;
    fn inv(&self, x: Self::E) -> Self::E;
    fn encode(&self, s: Scalar) -> Self::E;
    fn decode(&self, x: Self::E) -> Scalar;
}

impl Arith for FieldCtx {
    type E = Scalar;
    fn zero(&self) -> Scalar {
        Scalar::ZERO
    }
    fn is_zero(&self, x: Scalar) -> bool {
        x.is_zero()
    }
    fn add(&self, x: Scalar, y: Scalar) -> Scalar {
        FieldCtx::add(self, x, y)
    }
    fn mul(&self, x: Scalar, y: Scalar) -> Scalar {
        FieldCtx::mul(self, x, y)
    }
    fn neg(&self, x: Scalar) -> Scalar {
        FieldCtx::neg(self, x)
    }
    fn inv(&self, x: Scalar) -> Scalar {
        FieldCtx::inv(self, x).expect("nonzero")
    }
    fn encode(&self, s: Scalar) -> Scalar {
        s
    }
    fn decode(&self, x: Scalar) -> Scalar {
        x
    }
}

/// Lookup tables for `F_{p²}` with elements numbered `a + p·b`.
pub(crate) struct Tables {
    q: usize,
    p: u32,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl Tables {
    pub(crate) const MAX_P: u32 = 23;

    pub(crate) fn new(f: &FieldCtx) -> Option<Tables> {
        let p = f.p();
        if p > Self::MAX_P {
            return None;
        }
        let q = (p * p) as usize;
        let elem = |i: usize| Scalar::new(i as u32 % p, i as u32 / p);
        let idx = |s: Scalar| (s.a + p * s.b) as u16;
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for i in 0..q {
            for j in 0..q {
                add[i * q + j] = idx(f.add(elem(i), elem(j)));
                mul[i * q + j] = idx(f.mul(elem(i), elem(j)));
            }
        }
        let neg = (0..q).map(|i| idx(f.neg(elem(i)))).collect();
        let inv = (0..q)
            .map(|i| if i == 0 { 0 } else { idx(f.inv(elem(i)).expect("nonzero")) })
            .collect();
        Some(Tables { q, p, add, mul, neg, inv })
    }
}

impl Arith for Tables {
    type E = u16;
    #[inline]
    fn zero(&self) -> u16 {
        0
    }
    #[inline]
    fn is_zero(&self, x: u16) -> bool {
        x == 0
    }
    #[inline]
    fn add(&self, x: u16, y: u16) -> u16 {
        self.add[x as usize * self.q + y as usize]
    }
    #[inline]
    fn mul(&self, x: u16, y: u16) -> u16 {
        self.mul[x as usize * self.q + y as usize]
    }
    #[inline]
    fn neg(&self, x: u16) -> u16 {
        self.neg[x as usize]
    }
    #[inline]
    fn inv(&self, x: u16) -> u16 {
        self.inv[x as usize]
    }
    fn encode(&self, s: Scalar) -> u16 {
        (s.a + self.p * s.b) as u16
    }
    fn decode(&self, x: u16) -> Scalar {
        Scalar::new(x as u32 % self.p, x as u32 / self.p)
    }
}

/// Sparse rows `(source coordinate, value)` for each target coordinate.
type Rows<E> = Vec<Vec<(usize, E)>>;

/// A homogeneous operator split into its component-to-component pieces.
struct GradedOp<E> {
    /// `rows[src][i]`: entries `(j, value)` of target row `i` over source
    /// coordinates `j`, for a vector living in component `src`.
    rows: [Rows<E>; 2],
    odd: bool,
}

pub(crate) struct Spinner<A: Arith> {
    arith: A,
    members: [Vec<usize>; 2],
    parity: Vec<u8>,
    ops: Vec<GradedOp<A::E>>,
}

/// Semi-echelon basis: each row is zero at the pivots of earlier rows.
struct Echelon<E> {
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<A: Arith> Spinner<A> {
    pub(crate) fn new(arith: A, parity: &[u8], ops: &[(&SparseMatrix, bool)]) -> Self {
        let mut members: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
        let mut local = vec![0; parity.len()];
        for (g, &par) in parity.iter().enumerate() {
            local[g] = members[par as usize].len();
            members[par as usize].push(g);
        }
        let ops = ops
            .iter()
            .map(|&(m, odd)| {
                let mut rows: [Rows<A::E>; 2] = [Vec::new(), Vec::new()];
                for (src, slot) in rows.iter_mut().enumerate() {
                    let dst = src ^ usize::from(odd);
                    *slot = members[dst]
                        .iter()
                        .map(|&gi| {
                            m.row(gi)
                                .filter(|&(gj, _)| parity[gj] as usize == src)
                                .map(|(gj, v)| (local[gj], arith.encode(v)))
                                .collect()
                        })
                        .collect();
                }
                GradedOp { rows, odd }
            })
            .collect();
        Spinner {
            arith,
            members,
            parity: parity.to_vec(),
            ops,
        }
    }

    pub(crate) fn dim(&self) -> usize {
        self.parity.len()
    }

    fn reduce(&self, basis: &Echelon<A::E>, v: &mut [A::E]) {
        let a = &self.arith;
        for (row, &pc) in basis.rows.iter().zip(&basis.pivots) {
            let c = v[pc];
            if a.is_zero(c) {
                continue;
            }
            let nc = a.neg(c);
            for (x, &r) in v.iter_mut().zip(row).skip(pc) {
                if !a.is_zero(r) {
                    *x = a.add(*x, a.mul(nc, r));
                }
            }
        }
    }

    /// Reduces and inserts; returns the normalized row if it was new.
    fn insert(&self, basis: &mut Echelon<A::E>, mut v: Vec<A::E>) -> bool {
        let a = &self.arith;
        self.reduce(basis, &mut v);
        let Some(pc) = v.iter().position(|&x| !a.is_zero(x)) else {
            return false;
        };
        let inv = a.inv(v[pc]);
        for x in v.iter_mut().skip(pc) {
            *x = a.mul(*x, inv);
        }
        basis.rows.push(v);
        basis.pivots.push(pc);
        true
    }

    /// Closure of `starts` under the operators. Each start vector is split
    /// into its parity components first, so the result is always graded.
    /// With `stop_when_full`, returns `None` as soon as the whole space is
    /// reached; otherwise a basis (global coordinates) of the closure.
    pub(crate) fn spin(&self, starts: &[Vec<Scalar>], stop_when_full: bool) -> Option<Vec<Vec<Scalar>>> {
        let a = &self.arith;
        let d = self.dim();
        let sizes = [self.members[0].len(), self.members[1].len()];
        let mut bases = [
            Echelon { rows: Vec::new(), pivots: Vec::new() },
            Echelon { rows: Vec::new(), pivots: Vec::new() },
        ];
        let mut queue: Vec<(usize, Vec<A::E>)> = Vec::new();
        for v in starts {
            for (par, basis) in bases.iter_mut().enumerate() {
                let comp: Vec<A::E> = self.members[par].iter().map(|&g| a.encode(v[g])).collect();
                if comp.iter().any(|&x| !a.is_zero(x)) && self.insert(basis, comp.clone()) {
                    queue.push((par, comp));
                }
            }
        }
        let mut head = 0;
        while head < queue.len() {
            if stop_when_full && bases[0].rows.len() + bases[1].rows.len() == d {
                return None;
            }
            let (src, vec) = (queue[head].0, queue[head].1.clone());
            head += 1;
            for op in &self.ops {
                let dst = src ^ usize::from(op.odd);
                if bases[dst].rows.len() == sizes[dst] {
                    continue;
                }
                let image: Vec<A::E> = op.rows[src]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .fold(a.zero(), |acc, &(j, g)| a.add(acc, a.mul(g, vec[j])))
                    })
                    .collect();
                if image.iter().all(|&x| a.is_zero(x)) {
                    continue;
                }
                if self.insert(&mut bases[dst], image.clone()) {
                    queue.push((dst, image));
                }
            }
        }
        if stop_when_full && bases[0].rows.len() + bases[1].rows.len() == d {
            return None;
        }
        let mut out = Vec::new();
        for (par, basis) in bases.iter().enumerate() {
            for row in &basis.rows {
                let mut g = vec![Scalar::ZERO; d];
                for (l, &x) in row.iter().enumerate() {
                    g[self.members[par][l]] = a.decode(x);
                }
                out.push(g);
            }
        }
        Some(out)
    }
}
