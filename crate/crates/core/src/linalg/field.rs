//! GF(2^m) for 1 ≤ m ≤ 8, with table-driven arithmetic.
//!
//! Elements are bytes holding polynomial-basis coordinates over GF(2). The
//! tables are built once per degree and shared.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Irreducible moduli, bit k = coefficient of t^k.
const MODULI: [u16; 9] = [
    0,
    0b11,
    0b111,
    0b1011,
    0b1_0011,
    0b10_0101,
    0b100_0011,
    0b1000_0011,
    0b1_0001_1011,
];

pub(crate) struct Tables {
    m: u32,
    q: usize,
    mul: Vec<u8>,
    inv: Vec<u8>,
    // scalar_planes[c * 8 + b] = c · t^b, i.e. the planes a source plane b feeds
    scalar_planes: Vec<u8>,
    // t^k for k < 2m - 1
    pow_t: [u8; 16],
}

static TABLES: [OnceLock<Tables>; 9] = [
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
];

fn poly_mul_mod(a: u32, b: u32, m: u32, modulus: u32) -> u32 {
    let mut acc = 0u32;
    for k in 0..m {
        if b >> k & 1 == 1 {
            acc ^= a << k;
        }
    }
    for k in (m..2 * m).rev() {
        if acc >> k & 1 == 1 {
            acc ^= modulus << (k - m);
        }
    }
    acc
}

impl Tables {
    fn build(m: u32) -> Tables {
        let q = 1usize << m;
        let modulus = MODULI[m as usize] as u32;
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                mul[a * q + b] = poly_mul_mod(a as u32, b as u32, m, modulus) as u8;
            }
        }
        let mut inv = vec![0u8; q];
        for a in 1..q {
            if let Some(b) = (1..q).find(|&b| mul[a * q + b] == 1) {
                inv[a] = b as u8;
            }
        }
        let mut scalar_planes = vec![0u8; q * 8];
        let t = if m == 1 { 1 } else { 2 };
        for c in 0..q {
            let mut tb = 1u32;
            for b in 0..m as usize {
                scalar_planes[c * 8 + b] = mul[c * q + tb as usize];
                tb = poly_mul_mod(tb, t, m, modulus);
            }
        }
        let mut pow_t = [0u8; 16];
        let mut acc = 1u32;
        for slot in pow_t.iter_mut().take((2 * m - 1) as usize) {
            *slot = acc as u8;
            acc = if m == 1 { 1 } else { poly_mul_mod(acc, 2, m, modulus) };
        }
        Tables {
            m,
            q,
            mul,
            inv,
            scalar_planes,
            pow_t,
        }
    }
}

/// A finite field GF(2^m), cheap to copy.
#[derive(Clone, Copy)]
pub struct Field {
    tables: &'static Tables,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.tables.m == other.tables.m
    }
}
impl Eq for Field {}
impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.tables.m.hash(state)
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 1 {
            write!(f, "GF(2)")
        } else {
            write!(f, "GF(2^{})", self.degree())
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Field {
    pub fn gf2() -> Field {
        Field::new(1).expect("GF(2) exists")
    }

    /// GF(2^m); the tables are checked against the field axioms when first built.
    pub fn new(m: usize) -> Result<Field> {
        if !(1..=8).contains(&m) {
            return Err(Error::InvalidArgument(format!(
                "field degree must lie in 1..=8, got {m}"
            )));
        }
        let tables = TABLES[m].get_or_init(|| Tables::build(m as u32));
        let field = Field { tables };
        field.check_axioms()?;
        Ok(field)
    }

    fn check_axioms(&self) -> Result<()> {
        let q = self.order();
        for a in (0..q).map(|a| a as u8) {
            if self.mul(a, 1) != a || self.add(a, 0) != a {
                return Err(Error::Internal(format!("{self:?}: identity axiom fails at {a}")));
            }
            if a != 0 && self.mul(a, self.inv(a)) != 1 {
                return Err(Error::Internal(format!("{self:?}: {a} has no inverse")));
            }
            for b in (0..q).map(|b| b as u8) {
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::Internal(format!("{self:?}: multiplication not commutative")));
                }
            }
        }
        if q <= 16 {
            for a in 0..q as u8 {
                for b in 0..q as u8 {
                    for c in 0..q as u8 {
                        if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                            || self.mul(a, b ^ c) != self.mul(a, b) ^ self.mul(a, c)
                        {
                            return Err(Error::Internal(format!("{self:?}: ring axioms fail")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.tables.m as usize
    }

    pub fn order(&self) -> usize {
        self.tables.q
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.tables.mul[a as usize * self.tables.q + b as usize]
    }

    /// Inverse of a nonzero element (0 maps to 0).
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.tables.inv[a as usize]
    }

    pub fn pow(&self, a: u8, mut e: usize) -> u8 {
        let mut acc = 1u8;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Planes fed by source plane `b` when scaling by `c`.
    #[inline]
    pub(crate) fn scalar_planes(&self, c: u8, b: usize) -> u8 {
        self.tables.scalar_planes[c as usize * 8 + b]
    }

    #[inline]
    pub(crate) fn pow_t(&self, k: usize) -> u8 {
        self.tables.pow_t[k]
    }

    /// Image of every element of `self` under a field embedding into `big`.
    /// Requires `degree(self) | degree(big)`.
    pub fn embedding_into(&self, big: Field) -> Result<Vec<u8>> {
        let (m, n) = (self.degree(), big.degree());
        if n % m != 0 {
            return Err(Error::InvalidArgument(format!(
                "{self:?} does not embed in {big:?}"
            )));
        }
        let modulus = MODULI[m];
        // a root of our modulus inside `big`
        let root = (0..big.order())
            .map(|b| b as u8)
            .find(|&b| {
                let mut acc = 0u8;
                let mut pw = 1u8;
                for k in 0..=m {
                    if modulus >> k & 1 == 1 {
                        acc ^= pw;
                    }
                    pw = big.mul(pw, b);
                }
                acc == 0
            })
            .ok_or_else(|| Error::Internal(format!("no root of the {self:?} modulus in {big:?}")))?;
        Ok((0..self.order() as u16)
            .map(|a| {
                let mut acc = 0u8;
                let mut pw = 1u8;
                for k in 0..m {
                    if a >> k & 1 == 1 {
                        acc ^= pw;
                    }
                    pw = big.mul(pw, root);
                }
                acc
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_degrees_build() {
        for m in 1..=8 {
            let f = Field::new(m).unwrap();
            assert_eq!(f.order(), 1 << m);
            // multiplicative group is cyclic of order q - 1
            for a in (1..f.order()).map(|a| a as u8) {
                assert_eq!(f.pow(a, f.order() - 1), 1);
            }
        }
        assert!(Field::new(0).is_err());
        assert!(Field::new(9).is_err());
    }

    #[test]
    fn scalar_planes_match_multiplication() {
        for m in 1..=8 {
            let f = Field::new(m).unwrap();
            for c in (0..f.order()).map(|c| c as u8) {
                for a in (0..f.order()).map(|a| a as u8) {
                    let mut out = 0u8;
                    for b in 0..m {
                        if a >> b & 1 == 1 {
                            out ^= f.scalar_planes(c, b);
                        }
                    }
                    assert_eq!(out, f.mul(c, a));
                }
            }
        }
    }

    #[test]
    fn embeddings_are_ring_maps() {
        for (m, n) in [(1, 4), (2, 4), (2, 6), (4, 8), (3, 6), (1, 1)] {
            let small = Field::new(m).unwrap();
            let big = Field::new(n).unwrap();
            let e = small.embedding_into(big).unwrap();
            for a in 0..small.order() as u8 {
                for b in 0..small.order() as u8 {
                    assert_eq!(e[small.mul(a, b) as usize], big.mul(e[a as usize], e[b as usize]));
                    assert_eq!(e[(a ^ b) as usize], e[a as usize] ^ e[b as usize]);
                }
            }
        }
        assert!(Field::new(3).unwrap().embedding_into(Field::new(4).unwrap()).is_err());
    }
}
