//! Exact arithmetic in `F_p` and its quadratic extension `F_{p^2} = F_p[√δ]`.
//!
//! Every scalar appearing in the constructed representations lives in
//! `F_{p^2}`: the square roots required by the action formulas are square
//! roots of prime-subfield elements, and `F_{p^2}` contains all of them.
//! `δ` is always the smallest positive quadratic nonresidue, so two contexts
//! for the same prime are identical and exported matrices are reproducible.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported; p must be an odd prime")]
    CharacteristicTwo,
    #[error("prime {0} is too large (must be below 2^31)")]
    TooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
}

/// `a + b·√δ` with `a, b` residues mod p.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    pub a: u32,
    pub b: u32,
}

impl Scalar {
    pub const ZERO: Scalar = Scalar { a: 0, b: 0 };
    pub const ONE: Scalar = Scalar { a: 1, b: 0 };

    pub const fn new(a: u32, b: u32) -> Self {
        Scalar { a, b }
    }

    pub const fn base(a: u32) -> Self {
        Scalar { a, b: 0 }
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// True when the element lies in the prime subfield.
    #[inline]
    pub fn is_base(self) -> bool {
        self.b == 0
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}√δ"),
            (a, b) => write!(f, "{a}+{b}√δ"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [self.a, self.b].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [a, b] = <[u32; 2]>::deserialize(deserializer)?;
        Ok(Scalar { a, b })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Neg,
    Mul,
    Inv,
}

/// The field `F_p[√δ]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldCtx {
    p: u32,
    delta: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl FieldCtx {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p == 2 {
            return Err(FieldError::CharacteristicTwo);
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(FieldError::TooLarge(p));
        }
        let half = (p - 1) / 2;
        let delta = (1..p)
            .find(|&d| pow_mod(d, half, p) == p - 1)
            .expect("an odd prime always has a quadratic nonresidue");
        Ok(FieldCtx {
            p: p as u32,
            delta: delta as u32,
        })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn delta(&self) -> u32 {
        self.delta
    }

    /// Reduces an arbitrary integer into `F_p`.
    pub fn from_int(&self, v: i64) -> Scalar {
        Scalar::base(v.rem_euclid(self.p as i64) as u32)
    }

    /// Residue of `v` mod p as a plain integer.
    pub fn residue(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    fn madd(&self, x: u32, y: u32) -> u32 {
        let s = x + y;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn mneg(&self, x: u32) -> u32 {
        if x == 0 {
            0
        } else {
            self.p - x
        }
    }

    #[inline]
    pub fn add(&self, x: Scalar, y: Scalar) -> Scalar {
        Scalar {
            a: self.madd(x.a, y.a),
            b: self.madd(x.b, y.b),
        }
    }

    #[inline]
    pub fn neg(&self, x: Scalar) -> Scalar {
        Scalar {
            a: self.mneg(x.a),
            b: self.mneg(x.b),
        }
    }

    #[inline]
    pub fn sub(&self, x: Scalar, y: Scalar) -> Scalar {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: Scalar, y: Scalar) -> Scalar {
        let p = self.p as u64;
        if x.b == 0 && y.b == 0 {
            return Scalar::base((x.a as u64 * y.a as u64 % p) as u32);
        }
        let (xa, xb, ya, yb) = (x.a as u64, x.b as u64, y.a as u64, y.b as u64);
        let bb = xb * yb % p;
        let a = (xa * ya + self.delta as u64 * bb) % p;
        let b = (xa * yb + xb * ya) % p;
        Scalar {
            a: a as u32,
            b: b as u32,
        }
    }

    /// `acc + x·y`, the inner-loop operation of elimination.
    #[inline]
    pub fn mul_add(&self, acc: Scalar, x: Scalar, y: Scalar) -> Scalar {
        self.add(acc, self.mul(x, y))
    }

    /// Norm `a² − δb²` into the prime subfield.
    fn norm(&self, x: Scalar) -> u32 {
        let p = self.p as u64;
        let a2 = x.a as u64 * x.a as u64 % p;
        let b2 = x.b as u64 * x.b as u64 % p * self.delta as u64 % p;
        ((a2 + p - b2) % p) as u32
    }

    pub fn inv(&self, x: Scalar) -> Result<Scalar, FieldError> {
        if x.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        // (a + b√δ)⁻¹ = (a − b√δ) / (a² − δb²)
        let n = self.norm(x) as u64;
        let n_inv = pow_mod(n, self.p as u64 - 2, self.p as u64) as u32;
        let conj = Scalar {
            a: x.a,
            b: self.mneg(x.b),
        };
        Ok(self.mul(conj, Scalar::base(n_inv)))
    }

    pub fn div(&self, x: Scalar, y: Scalar) -> Result<Scalar, FieldError> {
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn pow(&self, x: Scalar, mut exp: u64) -> Scalar {
        let mut acc = Scalar::ONE;
        let mut base = x;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn arith(&self, op: ArithOp, x: Scalar, y: Option<Scalar>) -> Result<Scalar, FieldError> {
        let rhs = || y.expect("binary field operation needs a second operand");
        match op {
            ArithOp::Add => Ok(self.add(x, rhs())),
            ArithOp::Neg => Ok(self.neg(x)),
            ArithOp::Mul => Ok(self.mul(x, rhs())),
            ArithOp::Inv => self.inv(x),
        }
    }

    /// Euler criterion on a prime-subfield residue.
    pub fn is_square_base(&self, a: u32) -> bool {
        let a = a % self.p;
        a == 0 || pow_mod(a as u64, (self.p as u64 - 1) / 2, self.p as u64) == 1
    }

    /// Smallest-representative square root of a residue in `F_p`.
    fn sqrt_residue(&self, a: u32) -> Option<u32> {
        let p = self.p as u64;
        let a = a as u64 % p;
        if a == 0 {
            return Some(0);
        }
        if !self.is_square_base(a as u32) {
            return None;
        }
        let r = tonelli_shanks(a, p);
        Some(r.min(p - r) as u32)
    }

    /// Canonical square root of a prime-subfield element.
    ///
    /// Residues map to `(min(r, p−r), 0)`; nonresidues map to `(0, s)` where
    /// `s` is the canonical root of `a·δ⁻¹`.
    pub fn sqrt_base(&self, a: u32) -> Scalar {
        let a = a % self.p;
        if let Some(r) = self.sqrt_residue(a) {
            return Scalar::base(r);
        }
        let delta_inv = pow_mod(self.delta as u64, self.p as u64 - 2, self.p as u64);
        let quotient = (a as u64 * delta_inv % self.p as u64) as u32;
        let s = self
            .sqrt_residue(quotient)
            .expect("a·δ⁻¹ is a residue when a is not");
        Scalar::new(0, s)
    }

    /// Canonical square root of a scalar that must lie in the prime subfield.
    pub fn sqrt_scalar(&self, x: Scalar) -> Option<Scalar> {
        x.is_base().then(|| self.sqrt_base(x.a))
    }

    pub fn sqrt_minus_one(&self) -> Scalar {
        self.sqrt_base(self.p - 1)
    }

    /// `x ↦ x^p`; on `F_p[√δ]` this is `(a, b) ↦ (a, −b)`.
    pub fn frobenius(&self, x: Scalar) -> Scalar {
        Scalar {
            a: x.a,
            b: self.mneg(x.b),
        }
    }

    /// Every element of `F_{p^2}` in `(a, b)` order.
    pub fn elements(&self) -> impl Iterator<Item = Scalar> + '_ {
        (0..self.p).flat_map(move |a| (0..self.p).map(move |b| Scalar::new(a, b)))
    }
}

fn tonelli_shanks(a: u64, p: u64) -> u64 {
    if p % 4 == 3 {
        return pow_mod(a, (p + 1) / 4, p);
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = (2..p)
        .find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)
        .expect("nonresidue exists");
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = tt * tt % p;
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn squares_mod(p: u32) -> Vec<u32> {
        let mut v: Vec<u32> = (1..p).map(|x| x * x % p).collect();
        v.sort();
        v.dedup();
        v
    }

    #[test]
    fn canonical_delta() {
        // exhaustive squaring: squares mod 7 are {1,2,4}, mod 3 are {1}
        assert_eq!(squares_mod(7), vec![1, 2, 4]);
        assert_eq!(FieldCtx::new(7).unwrap().delta(), 3);
        assert_eq!(FieldCtx::new(3).unwrap().delta(), 2);
        for p in [3u32, 5, 7, 11, 13, 17, 97] {
            let f = FieldCtx::new(p as u64).unwrap();
            let sq = squares_mod(p);
            let smallest = (1..p).find(|d| !sq.contains(d)).unwrap();
            assert_eq!(f.delta(), smallest);
        }
    }

    #[test]
    fn rejects_bad_primes() {
        assert_eq!(FieldCtx::new(4), Err(FieldError::NotPrime(4)));
        assert_eq!(FieldCtx::new(2), Err(FieldError::CharacteristicTwo));
        assert_eq!(FieldCtx::new(1), Err(FieldError::NotPrime(1)));
        assert!(FieldCtx::new(9).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let f7 = FieldCtx::new(7).unwrap();
        assert_eq!(f7.mul(Scalar::new(0, 1), Scalar::new(0, 1)), Scalar::new(3, 0));
        let f5 = FieldCtx::new(5).unwrap();
        assert_eq!(f5.inv(Scalar::new(2, 0)).unwrap(), Scalar::new(3, 0));
        assert_eq!(f5.add(Scalar::new(4, 1), Scalar::new(1, 4)), Scalar::ZERO);
        assert_eq!(f5.inv(Scalar::ZERO), Err(FieldError::DivisionByZero));
        assert_eq!(
            f5.arith(ArithOp::Mul, Scalar::new(2, 0), Some(Scalar::new(3, 0))),
            Ok(Scalar::ONE)
        );
    }

    #[test]
    fn sqrt_examples() {
        let f7 = FieldCtx::new(7).unwrap();
        assert_eq!(f7.sqrt_base(2), Scalar::new(3, 0));
        // 3·s² ≡ 5 (mod 7) ⇒ s² ≡ 4 ⇒ s = 2
        assert_eq!(f7.sqrt_base(5), Scalar::new(0, 2));
        assert_eq!(f7.sqrt_base(0), Scalar::ZERO);
        let f5 = FieldCtx::new(5).unwrap();
        assert_eq!(f5.sqrt_minus_one(), Scalar::new(2, 0));
        let w = f7.sqrt_minus_one();
        assert!(!w.is_base());
        assert_eq!(f7.mul(w, w), f7.from_int(-1));
    }

    #[test]
    fn sqrt_base_exhaustive() {
        for p in [3u64, 5, 7, 11, 13, 17, 29, 41] {
            let f = FieldCtx::new(p).unwrap();
            for a in 0..p as u32 {
                let r = f.sqrt_base(a);
                assert_eq!(f.mul(r, r), Scalar::base(a), "p={p} a={a}");
            }
            let w = f.sqrt_minus_one();
            assert_eq!(f.pow(w, 4), Scalar::ONE);
        }
    }

    #[test]
    fn frobenius_fixes_exactly_prime_subfield() {
        for p in [3u64, 5, 7] {
            let f = FieldCtx::new(p).unwrap();
            for x in f.elements() {
                assert_eq!(f.pow(x, p), f.frobenius(x));
                assert_eq!(f.frobenius(x) == x, x.is_base());
            }
        }
    }

    #[test]
    fn serializes_as_pair() {
        let s = serde_json::to_string(&Scalar::new(3, 4)).unwrap();
        assert_eq!(s, "[3,4]");
        let f = FieldCtx::new(7).unwrap();
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"p":7,"delta":3}"#);
    }

    proptest! {
        #[test]
        fn field_axioms(pi in 0usize..4, raw in proptest::array::uniform6(any::<u32>())) {
            let p = [3u32, 5, 7, 13][pi];
            let f = FieldCtx::new(p as u64).unwrap();
            let x = Scalar::new(raw[0] % p, raw[1] % p);
            let y = Scalar::new(raw[2] % p, raw[3] % p);
            let z = Scalar::new(raw[4] % p, raw[5] % p);
            prop_assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
            prop_assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
            prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
            prop_assert_eq!(f.mul(x, y), f.mul(y, x));
            prop_assert_eq!(f.add(x, f.neg(x)), Scalar::ZERO);
            if !x.is_zero() {
                prop_assert_eq!(f.mul(x, f.inv(x).unwrap()), Scalar::ONE);
            }
        }
    }
}
