//! Homogeneous ideals and the operations built on Gröbner bases: sums,
//! products, powers, colons by an element, intersection, elimination and
//! initial ideals.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, GroebnerBasis};
use crate::monomial::MonomialOrder;
use crate::polynomial::{Polynomial, Ring};

/// A finitely generated ideal with a per-order Gröbner basis cache.
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    cache: Mutex<HashMap<MonomialOrder, Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring,
            gens: self.gens.clone(),
            cache: Mutex::new(self.cache.lock().expect("cache lock").clone()),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{}", self)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Ideal {
    /// Zero polynomials are dropped; exact duplicates (up to scalars) are removed.
    pub fn new(ring: Ring, gens: impl IntoIterator<Item = Polynomial>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for g in gens {
            if g.ring() != ring {
                return Err(Error::RingMismatch);
            }
            if g.is_zero() {
                continue;
            }
            if seen.insert(g.monic(MonomialOrder::DegRevLex)) {
                out.push(g);
            }
        }
        Ok(Ideal {
            ring,
            gens: out,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn zero(ring: Ring) -> Self {
        Ideal {
            ring,
            gens: Vec::new(),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn unit(ring: Ring) -> Self {
        Ideal::new(ring, [Polynomial::one(ring)]).expect("same ring")
    }

    /// The ideal generated by the given variables.
    pub fn variables(ring: Ring, vars: &[usize]) -> Self {
        Ideal::new(ring, vars.iter().map(|&v| Polynomial::var(ring, v))).expect("same ring")
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    /// Reduced Gröbner basis under `ord`, computed once and cached.
    pub fn groebner(&self, ord: MonomialOrder) -> Arc<GroebnerBasis> {
        if let Some(gb) = self.cache.lock().expect("cache lock").get(&ord) {
            return Arc::clone(gb);
        }
        let gb = Arc::new(buchberger(self.ring, &self.gens, ord).expect("generators share the ring"));
        self.cache
            .lock()
            .expect("cache lock")
            .entry(ord)
            .or_insert(gb)
            .clone()
    }

    pub fn gb(&self) -> Arc<GroebnerBasis> {
        self.groebner(MonomialOrder::DegRevLex)
    }

    pub fn is_unit(&self) -> bool {
        self.gb().is_unit()
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        self.gb().contains(f)
    }

    /// `other ⊆ self`
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let gb = self.gb();
        for g in &other.gens {
            if !gb.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn try_eq(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ideal::new(self.ring, self.gens.iter().chain(&other.gens).cloned())
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut prods = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                prods.push(a * b);
            }
        }
        Ideal::new(self.ring, prods)
    }

    /// `I^s` generated by all `s`-fold products of generators (multisets, deduplicated).
    pub fn power(&self, s: u32) -> Result<Ideal> {
        if s == 0 {
            return Err(Error::InvalidParameter(
                "zeroth power is the unit ideal; ask for it explicitly".into(),
            ));
        }
        let n = self.gens.len();
        let mut out = Vec::new();
        let mut idx = vec![0usize; s as usize];
        if n == 0 {
            return Ok(Ideal::zero(self.ring));
        }
        // nondecreasing index tuples
        loop {
            let mut p = self.gens[idx[0]].clone();
            for &i in &idx[1..] {
                p = &p * &self.gens[i];
            }
            out.push(p);
            let mut pos = idx.len();
            while pos > 0 && idx[pos - 1] == n - 1 {
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
            idx[pos - 1] += 1;
            let v = idx[pos - 1];
            for x in &mut idx[pos..] {
                *x = v;
            }
        }
        Ideal::new(self.ring, out)
    }

    /// `I ∩ J` by eliminating a tag variable from `t·I + (1 - t)·J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(self.ring));
        }
        let n = self.ring.nvars();
        let big = Ring::new(n + 1, self.ring.field())?;
        let shift: Vec<usize> = (1..=n).collect();
        let t = Polynomial::var(big, 0);
        let one_minus_t = &Polynomial::one(big) - &t;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(&t * &g.remap(big, &shift));
        }
        for g in &other.gens {
            gens.push(&one_minus_t * &g.remap(big, &shift));
        }
        let kept = eliminate_leading_block(big, &gens, 1)?;
        let back: Vec<usize> = std::iter::once(usize::MAX).chain(0..n).collect();
        Ideal::new(
            self.ring,
            kept.into_iter().map(|p| restrict_tail(&p, self.ring, &back)),
        )
    }

    /// `I ∩ K[remaining variables]`, via a block elimination order.
    pub fn eliminate(&self, vars: &[usize]) -> Result<Ideal> {
        let n = self.ring.nvars();
        if vars.iter().any(|&v| v >= n) {
            return Err(Error::InvalidParameter("variable out of range".into()));
        }
        let elim: Vec<usize> = {
            let mut v: Vec<usize> = vars.to_vec();
            v.sort_unstable();
            v.dedup();
            v
        };
        // permutation placing the eliminated block first
        let mut perm = vec![0usize; n];
        let mut next = 0;
        for &v in &elim {
            perm[v] = next;
            next += 1;
        }
        for (v, slot) in perm.iter_mut().enumerate() {
            if !elim.contains(&v) {
                *slot = next;
                next += 1;
            }
        }
        let mut inv = vec![0usize; n];
        for (v, &p) in perm.iter().enumerate() {
            inv[p] = v;
        }
        let gens: Vec<Polynomial> = self.gens.iter().map(|g| g.remap(self.ring, &perm)).collect();
        let kept = eliminate_leading_block(self.ring, &gens, elim.len())?;
        Ideal::new(self.ring, kept.into_iter().map(|p| p.remap(self.ring, &inv)))
    }

    /// `(I : f) = {g : g f ∈ I}`, computed as `(I ∩ (f)) / f`.
    pub fn colon_element(&self, f: &Polynomial) -> Result<Ideal> {
        if f.ring() != self.ring {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Err(Error::InvalidParameter("colon by the zero polynomial".into()));
        }
        let principal = Ideal::new(self.ring, [f.clone()])?;
        let meet = self.intersect(&principal)?;
        let mut quotients = Vec::with_capacity(meet.gens.len());
        for g in &meet.gens {
            let q = g
                .exact_div(f)
                .expect("generators of I ∩ (f) are multiples of f");
            quotients.push(q.monic(MonomialOrder::Lex));
        }
        let out = Ideal::new(self.ring, quotients)?;
        debug_assert!(out
            .gens
            .iter()
            .all(|g| self.contains(&(g * f)).unwrap_or(false)));
        Ok(out)
    }

    /// Monomial ideal of leading terms of the reduced Gröbner basis.
    pub fn initial_ideal(&self, ord: MonomialOrder) -> Ideal {
        let gb = self.groebner(ord);
        Ideal::new(
            self.ring,
            gb.leading_monomials()
                .into_iter()
                .map(|m| Polynomial::term(self.ring, m, 1)),
        )
        .expect("same ring")
    }

    /// Re-embeds generators into another ring along a variable map.
    pub fn remap(&self, ring: Ring, map: &[usize]) -> Result<Ideal> {
        Ideal::new(ring, self.gens.iter().map(|g| g.remap(ring, map)))
    }

    /// A minimal homogeneous generating set (degree by degree, dropping
    /// generators already in the ideal of lower or earlier ones).
    pub fn minimal_generators(&self) -> Result<Vec<Polynomial>> {
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let mut gens = self.gens.clone();
        gens.sort_by_key(|g| g.total_degree());
        let mut kept: Vec<Polynomial> = Vec::new();
        for g in gens {
            let sub = Ideal::new(self.ring, kept.iter().cloned())?;
            if !sub.contains(&g)? {
                kept.push(g);
            }
        }
        Ok(kept)
    }
}

/// Drops the first variable of a polynomial known not to involve it.
fn restrict_tail(p: &Polynomial, ring: Ring, back: &[usize]) -> Polynomial {
    let map: Vec<usize> = back.iter().map(|&v| if v == usize::MAX { 0 } else { v }).collect();
    p.remap(ring, &map)
}

/// Elements of the reduced GB (elimination order on the first `k` variables)
/// that do not involve those variables.
fn eliminate_leading_block(ring: Ring, gens: &[Polynomial], k: usize) -> Result<Vec<Polynomial>> {
    let gb = buchberger(ring, gens, MonomialOrder::Elimination(k))?;
    let block: Vec<usize> = (0..k).collect();
    Ok(gb
        .elements()
        .iter()
        .filter(|p| !p.involves_any(&block))
        .cloned()
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn ring(n: usize) -> Ring {
        Ring::new(n, PrimeField::default()).unwrap()
    }

    fn ideal(r: Ring, ss: &[&str]) -> Ideal {
        Ideal::new(r, ss.iter().map(|s| Polynomial::parse(r, s).unwrap())).unwrap()
    }

    #[test]
    fn monomial_colon() {
        let r = ring(3);
        let i = ideal(r, &["v1*v2", "v2*v3"]);
        let y = Polynomial::parse(r, "v2").unwrap();
        let c = i.colon_element(&y).unwrap();
        assert!(c.try_eq(&ideal(r, &["v1", "v3"])).unwrap());
    }

    #[test]
    fn colon_by_generator_is_unit() {
        let r = ring(4);
        let f = Polynomial::parse(r, "x1*y2 - x2*y1").unwrap();
        let i = Ideal::new(r, [f.clone()]).unwrap();
        assert!(i.colon_element(&f).unwrap().is_unit());
    }

    #[test]
    fn coprime_principal_intersection() {
        let r = ring(2);
        let a = ideal(r, &["v1"]);
        let b = ideal(r, &["v2"]);
        assert!(a.intersect(&b).unwrap().try_eq(&ideal(r, &["v1*v2"])).unwrap());
        assert!(a.intersect(&a).unwrap().try_eq(&a).unwrap());
    }

    #[test]
    fn linear_elimination() {
        let r = ring(3);
        let i = ideal(r, &["v1 - v2", "v2 - v3"]);
        let e = i.eliminate(&[0]).unwrap();
        assert!(e.try_eq(&ideal(r, &["v2 - v3"])).unwrap());
        assert!(e.generators().iter().all(|g| !g.involves_any(&[0])));
    }

    #[test]
    fn sum_and_product_identities() {
        let r = ring(2);
        let m = ideal(r, &["v1", "v2"]);
        assert!(m.sum(&m).unwrap().try_eq(&m).unwrap());
        assert!(m
            .product(&m)
            .unwrap()
            .try_eq(&ideal(r, &["v1^2", "v1*v2", "v2^2"]))
            .unwrap());
    }

    #[test]
    fn powers() {
        let r = ring(4);
        let f = Polynomial::parse(r, "x1*y2 - x2*y1").unwrap();
        let p = Ideal::new(r, [f.clone()]).unwrap().power(3).unwrap();
        assert_eq!(p.generators(), &[f.pow(3)]);
        assert!(Ideal::zero(r).power(2).unwrap().is_zero());
        assert!(p.power(0).is_err());
    }

    #[test]
    fn initial_ideal_of_principal() {
        let r = ring(4);
        let f = Polynomial::parse(r, "x1*y2 - x2*y1").unwrap();
        let i = Ideal::new(r, [f.clone()]).unwrap();
        for ord in [MonomialOrder::Lex, MonomialOrder::DegRevLex] {
            let lt = Polynomial::term(r, f.leading_monomial(ord).unwrap(), 1);
            assert!(i.initial_ideal(ord).try_eq(&Ideal::new(r, [lt]).unwrap()).unwrap());
        }
    }

    #[test]
    fn ring_mismatch() {
        let a = ideal(ring(2), &["v1"]);
        let b = ideal(ring(3), &["v1"]);
        assert_eq!(a.sum(&b).unwrap_err(), Error::RingMismatch);
        assert_eq!(a.intersect(&b).unwrap_err(), Error::RingMismatch);
        assert_eq!(a.try_eq(&b).unwrap_err(), Error::RingMismatch);
    }

    #[test]
    fn minimal_generators_drop_redundancy() {
        let r = ring(2);
        let i = ideal(r, &["v1^2", "v1*v2", "v1^2*v2", "v1^2 + v1*v2"]);
        assert_eq!(i.minimal_generators().unwrap().len(), 2);
    }
}
