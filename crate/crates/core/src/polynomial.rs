//! Sparse multivariate polynomials over a prime field.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder, MAX_VARS};

/// The ambient ring `K[z_1..z_N]`.
///
/// For a graph on `n` vertices the ring has `N = 2n` variables laid out as
/// `x_1..x_n, y_1..y_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    nvars: usize,
    field: PrimeField,
}

impl Ring {
    pub fn new(nvars: usize, field: PrimeField) -> Result<Self> {
        if nvars > MAX_VARS {
            return Err(Error::TooManyVariables {
                got: nvars,
                max: MAX_VARS,
            });
        }
        Ok(Ring { nvars, field })
    }

    /// `K[x_1..x_n, y_1..y_n]`.
    pub fn for_graph(n: usize, field: PrimeField) -> Result<Self> {
        Ring::new(2 * n, field)
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Index of `x_i` (1-based vertex) in a graph ring.
    pub fn x(&self, i: usize) -> usize {
        debug_assert!(i >= 1 && i <= self.nvars / 2);
        i - 1
    }

    /// Index of `y_i` (1-based vertex) in a graph ring.
    pub fn y(&self, i: usize) -> usize {
        debug_assert!(i >= 1 && i <= self.nvars / 2);
        self.nvars / 2 + i - 1
    }

    pub fn var_name(&self, i: usize) -> String {
        if self.nvars.is_multiple_of(2) {
            let n = self.nvars / 2;
            if i < n {
                format!("x{}", i + 1)
            } else {
                format!("y{}", i - n + 1)
            }
        } else {
            format!("v{}", i + 1)
        }
    }

    pub fn one(&self) -> Monomial {
        Monomial::one(self.nvars)
    }
}

/// Homogeneity of a polynomial. The zero polynomial has no well-defined degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Degree(u32),
    Mixed,
}

impl Homogeneity {
    pub fn is_homogeneous(self) -> bool {
        !matches!(self, Homogeneity::Mixed)
    }

    pub fn degree(self) -> Option<u32> {
        match self {
            Homogeneity::Degree(d) => Some(d),
            _ => None,
        }
    }
}

/// A polynomial in canonical form: terms sorted strictly decreasing in degrevlex,
/// no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, u32)>,
}

const CANONICAL: MonomialOrder = MonomialOrder::DegRevLex;

impl Polynomial {
    pub fn zero(ring: Ring) -> Self {
        Polynomial {
            ring,
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: Ring, c: i64) -> Self {
        Polynomial::term(ring, ring.one(), ring.field.reduce(c))
    }

    pub fn one(ring: Ring) -> Self {
        Polynomial::constant(ring, 1)
    }

    pub fn var(ring: Ring, i: usize) -> Self {
        Polynomial::term(ring, Monomial::var(ring.nvars, i), 1)
    }

    pub fn term(ring: Ring, m: Monomial, c: u32) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars);
        let c = c % ring.field.modulus();
        Polynomial {
            ring,
            terms: if c == 0 { Vec::new() } else { vec![(m, c)] },
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: Ring, terms: impl IntoIterator<Item = (Monomial, u32)>) -> Self {
        let k = ring.field;
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars);
            let e = acc.entry(m).or_insert(0);
            *e = k.add(*e, c % k.modulus());
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_unstable_by(|a, b| CANONICAL.cmp(&b.0, &a.0));
        Polynomial { ring, terms }
    }

    /// Trusts the caller that `terms` is already canonical.
    pub(crate) fn from_sorted_unchecked(ring: Ring, terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| CANONICAL.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Polynomial { ring, terms }
    }

    /// Sorts terms given in any order (no duplicates allowed) into canonical form.
    pub(crate) fn from_distinct_terms(ring: Ring, mut terms: Vec<(Monomial, u32)>) -> Self {
        terms.retain(|t| t.1 != 0);
        terms.sort_unstable_by(|a, b| CANONICAL.cmp(&b.0, &a.0));
        Polynomial::from_sorted_unchecked(ring, terms)
    }

    #[inline]
    pub fn ring(&self) -> Ring {
        self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u32)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest total degree of a term, `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn homogeneity(&self) -> Homogeneity {
        match self.terms.first() {
            None => Homogeneity::Zero,
            Some((m, _)) => {
                let d = m.degree();
                if self.terms.iter().all(|(t, _)| t.degree() == d) {
                    Homogeneity::Degree(d)
                } else {
                    Homogeneity::Mixed
                }
            }
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneity().is_homogeneous()
    }

    pub fn leading_term(&self, ord: MonomialOrder) -> Option<(Monomial, u32)> {
        if ord == CANONICAL {
            return self.terms.first().copied();
        }
        self.terms.iter().copied().max_by(|a, b| ord.cmp(&a.0, &b.0))
    }

    pub fn leading_monomial(&self, ord: MonomialOrder) -> Option<Monomial> {
        self.leading_term(ord).map(|t| t.0)
    }

    /// Scales so that the leading coefficient (under `ord`) is one.
    pub fn monic(&self, ord: MonomialOrder) -> Polynomial {
        match self.leading_term(ord) {
            None => self.clone(),
            Some((_, c)) => self.scale(self.ring.field.inv(c)),
        }
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let k = self.ring.field;
        let c = c % k.modulus();
        if c == 0 {
            return Polynomial::zero(self.ring);
        }
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|&(m, a)| (m, k.mul(a, c))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: u32) -> Polynomial {
        let k = self.ring.field;
        let c = c % k.modulus();
        if c == 0 {
            return Polynomial::zero(self.ring);
        }
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|&(t, a)| (t.mul(m), k.mul(a, c))).collect(),
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let k = self.ring.field;
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let cb = |c: u32| if negate_other { k.neg(c) } else { c };
        while i < a.len() && j < b.len() {
            match CANONICAL.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, cb(b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = k.add(a[i].1, cb(b[j].1));
                    if c != 0 {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(m, c)| (m, cb(c))));
        Polynomial {
            ring: self.ring,
            terms: out,
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let k = self.ring.field;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(self.ring));
        }
        let mut acc: HashMap<Monomial, u32> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for &(ma, ca) in &self.terms {
            for &(mb, cb) in &other.terms {
                let m = ma.checked_mul(&mb)?;
                let e = acc.entry(m).or_insert(0);
                *e = k.add(*e, k.mul(ca, cb));
            }
        }
        Ok(Polynomial::from_distinct_terms(self.ring, acc.into_iter().collect()))
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.ring.field.neg(1))
    }

    /// Exact quotient `self / divisor`, or `None` if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        if divisor.is_zero() || self.ring != divisor.ring {
            return None;
        }
        let k = self.ring.field;
        let (lm, lc) = divisor.terms[0];
        let lc_inv = k.inv(lc);
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some(&(m, c)) = rem.terms.first() {
            let q = lm.quotient_of(&m)?;
            let qc = k.mul(c, lc_inv);
            quot.push((q, qc));
            rem = rem.merge(&divisor.mul_term(&q, qc), true);
        }
        Some(Polynomial::from_distinct_terms(self.ring, quot))
    }

    /// Re-embeds into `ring`, sending variable `i` to `map[i]`.
    pub fn remap(&self, ring: Ring, map: &[usize]) -> Polynomial {
        Polynomial::from_distinct_terms(
            ring,
            self.terms
                .iter()
                .map(|(m, c)| (m.remap(ring.nvars, map), *c))
                .collect(),
        )
    }

    /// Does any term involve one of the given variables?
    pub fn involves_any(&self, vars: &[usize]) -> bool {
        self.terms
            .iter()
            .any(|(m, _)| vars.iter().any(|&v| m.exponent(v) > 0))
    }

    /// Substitutes a scalar for variable `v`.
    pub fn substitute(&self, v: usize, value: u32) -> Polynomial {
        let k = self.ring.field;
        Polynomial::from_terms(
            self.ring,
            self.terms.iter().map(|&(m, c)| {
                let e = m.exponent(v);
                let mut exps: Vec<u32> = m.exponents().iter().map(|&x| x as u32).collect();
                exps[v] = 0;
                let m2 = Monomial::from_exponents(&exps).expect("valid exponents");
                (m2, k.mul(c, k.pow(value, e as u64)))
            }),
        )
    }

    /// Parses expressions like `x1*y2 - x2*y1`, `3 x1^2 y3 + 1`, `v1*v2`.
    ///
    /// Variables are `x<i>`/`y<i>` (1-based, graph rings only) or `v<i>`
    /// (1-based raw index). Juxtaposition and `*` both mean product.
    pub fn parse(ring: Ring, s: &str) -> Result<Polynomial> {
        crate::parse::parse_polynomial(ring, s)
    }

    pub fn display(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let p = self.ring.field.modulus();
        // printed in lex order (x_1 > .. > y_n), independent of storage order
        let mut terms: Vec<&(Monomial, u32)> = self.terms.iter().collect();
        terms.sort_unstable_by(|a, b| MonomialOrder::Lex.cmp(&b.0, &a.0));
        for (idx, (m, c)) in terms.into_iter().enumerate() {
            // print residues above p/2 as negatives
            let (neg, mag) = if *c > p / 2 { (true, p - c) } else { (false, *c) };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut parts = Vec::new();
            if mag != 1 || m.is_one() {
                parts.push(mag.to_string());
            }
            for v in m.support() {
                let e = m.exponent(v);
                if e == 1 {
                    parts.push(self.ring.var_name(v));
                } else {
                    parts.push(format!("{}^{}", self.ring.var_name(v), e));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial ring mismatch")
            }
        }
        impl std::ops::$tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$checked(&rhs).expect("polynomial ring mismatch")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
