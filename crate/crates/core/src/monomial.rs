//! Exponent-vector monomials and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported number of ring variables (a graph on 14 vertices plus a tag).
pub const MAX_VARS: usize = 30;

/// A monomial `z_1^{a_1} ... z_N^{a_N}` stored as a fixed-width exponent vector.
///
/// Exponents beyond `nvars` are always zero, so the derived equality and hash
/// only see the meaningful prefix. Total degree is cached and bounded by 255.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    nvars: u8,
    deg: u8,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "too many variables");
        Monomial {
            exps: [0; MAX_VARS],
            nvars: nvars as u8,
            deg: 0,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range");
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::TooManyVariables {
                got: exps.len(),
                max: MAX_VARS,
            });
        }
        let mut m = Monomial::one(exps.len());
        let mut deg = 0u32;
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            deg += e;
            if deg > u8::MAX as u32 {
                return Err(Error::ExponentOverflow);
            }
            *slot = e as u8;
        }
        m.deg = deg as u8;
        Ok(m)
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    #[inline]
    pub fn exponents(&self) -> &[u8] {
        &self.exps[..self.nvars as usize]
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Total degree restricted to the variables in `range`.
    pub fn partial_degree(&self, range: std::ops::Range<usize>) -> u32 {
        self.exps[range].iter().map(|&e| e as u32).sum()
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        if self.nvars != other.nvars {
            return Err(Error::LengthMismatch(self.nvars(), other.nvars()));
        }
        let deg = self.deg as u32 + other.deg as u32;
        if deg > u8::MAX as u32 {
            return Err(Error::ExponentOverflow);
        }
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(other.exps.iter()) {
            *a += *b;
        }
        Ok(Monomial {
            exps,
            nvars: self.nvars,
            deg: deg as u8,
        })
    }

    /// Product; panics if the total degree exceeds 255.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars, other.nvars);
        let deg = self.deg.checked_add(other.deg).expect("monomial degree overflow");
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(other.exps.iter()) {
            *a += *b;
        }
        Monomial {
            exps,
            nvars: self.nvars,
            deg,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` if `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut exps = other.exps;
        for (a, b) in exps.iter_mut().zip(self.exps.iter()) {
            *a -= *b;
        }
        Some(Monomial {
            exps,
            nvars: self.nvars,
            deg: other.deg - self.deg,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        let mut deg = 0u32;
        for (a, b) in exps.iter_mut().zip(other.exps.iter()) {
            *a = (*a).max(*b);
            deg += *a as u32;
        }
        Monomial {
            exps,
            nvars: self.nvars,
            deg: u8::try_from(deg).expect("monomial degree overflow"),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        let mut deg = 0u32;
        for (a, b) in exps.iter_mut().zip(other.exps.iter()) {
            *a = (*a).min(*b);
            deg += *a as u32;
        }
        Monomial {
            exps,
            nvars: self.nvars,
            deg: deg as u8,
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Re-embeds into a ring with `nvars` variables, sending variable `i` to `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Monomial {
        let mut m = Monomial::one(nvars);
        for (i, &e) in self.exponents().iter().enumerate() {
            if e != 0 {
                m.exps[map[i]] += e;
            }
        }
        m.deg = self.deg;
        m
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents())
    }
}

/// Monomial orders. Variables are ranked `z_1 > z_2 > ... > z_N` in all kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonomialOrder {
    DegRevLex,
    Lex,
    /// Product order: degrevlex on the first `k` variables, ties broken by
    /// degrevlex on the rest. Eliminates the leading block.
    Elimination(usize),
}

#[inline]
fn degrevlex(a: &[u8], b: &[u8], da: u32, db: u32) -> Ordering {
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    /// Compares two monomials of the same ring.
    #[inline]
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        let n = a.nvars as usize;
        match self {
            MonomialOrder::DegRevLex => {
                degrevlex(&a.exps[..n], &b.exps[..n], a.deg as u32, b.deg as u32)
            }
            MonomialOrder::Lex => a.exps[..n].cmp(&b.exps[..n]),
            MonomialOrder::Elimination(k) => {
                let k = k.min(n);
                let (da, db) = (a.partial_degree(0..k), b.partial_degree(0..k));
                degrevlex(&a.exps[..k], &b.exps[..k], da, db).then_with(|| {
                    degrevlex(
                        &a.exps[k..n],
                        &b.exps[k..n],
                        a.deg as u32 - da,
                        b.deg as u32 - db,
                    )
                })
            }
        }
    }

    /// Checked comparison that rejects monomials from different rings.
    pub fn compare(self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars != b.nvars {
            return Err(Error::LengthMismatch(a.nvars(), b.nvars()));
        }
        Ok(self.cmp(a, b))
    }

    pub fn is_graded(self) -> bool {
        !matches!(self, MonomialOrder::Lex | MonomialOrder::Elimination(_))
    }
}
