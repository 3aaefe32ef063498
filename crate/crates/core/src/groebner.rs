//! Buchberger's algorithm with the Gebauer–Möller pair criteria.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder};
use crate::polynomial::{Polynomial, Ring};

pub(crate) type Terms = Vec<(Monomial, u32)>;

/// Terms of `p`, sorted decreasing in `ord`.
pub(crate) fn ordered_terms(p: &Polynomial, ord: MonomialOrder) -> Terms {
    let mut t = p.terms().to_vec();
    if ord != MonomialOrder::DegRevLex {
        t.sort_unstable_by(|a, b| ord.cmp(&b.0, &a.0));
    }
    t
}

/// `a - c * m * b`, all sorted decreasing in `ord`.
pub(crate) fn sub_mul(
    ord: MonomialOrder,
    k: PrimeField,
    a: &[(Monomial, u32)],
    c: u32,
    m: &Monomial,
    b: &[(Monomial, u32)],
) -> Terms {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let bm = b[j].0.mul(m);
        match ord.cmp(&a[i].0, &bm) {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                out.push((bm, k.neg(k.mul(c, b[j].1))));
                j += 1;
            }
            Ordering::Equal => {
                let v = k.sub_mul(a[i].1, c, b[j].1);
                if v != 0 {
                    out.push((bm, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|&(bm, bc)| (bm.mul(m), k.neg(k.mul(c, bc)))));
    out
}

fn make_monic(k: PrimeField, t: &mut Terms) {
    if let Some(&(_, lc)) = t.first() {
        if lc != 1 {
            let inv = k.inv(lc);
            for x in t.iter_mut() {
                x.1 = k.mul(x.1, inv);
            }
        }
    }
}

/// Fully reduces `f` modulo the (monic) polynomials `basis`, which need not be
/// a Gröbner basis.
pub(crate) fn reduce_full(
    ord: MonomialOrder,
    k: PrimeField,
    mut f: Terms,
    basis: &[&Terms],
) -> Terms {
    let mut out = Vec::new();
    let mut start = 0usize;
    // `f[start..]` is the unreduced remainder
    while start < f.len() {
        let (m, c) = f[start];
        let divisor = basis.iter().find(|g| g[0].0.divides(&m));
        match divisor {
            Some(g) => {
                let q = g[0].0.quotient_of(&m).expect("divides");
                f = sub_mul(ord, k, &f[start..], c, &q, g);
                start = 0;
            }
            None => {
                out.push((m, c));
                start += 1;
            }
        }
    }
    out
}

/// A reduced Gröbner basis: monic, interreduced, sorted by increasing leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
    ordered: Vec<Terms>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Always true: this type only holds reduced bases.
    pub fn is_reduced(&self) -> bool {
        true
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.ordered.iter().map(|t| t[0].0).collect()
    }

    /// Terms of element `i` sorted decreasing in the basis order.
    pub(crate) fn ordered_element(&self, i: usize) -> &Terms {
        &self.ordered[i]
    }

    pub fn is_unit(&self) -> bool {
        self.ordered.iter().any(|t| t[0].0.is_one())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.ring() != self.ring {
            return Err(Error::RingMismatch);
        }
        let refs: Vec<&Terms> = self.ordered.iter().collect();
        let nf = reduce_full(
            self.order,
            self.ring.field(),
            ordered_terms(f, self.order),
            &refs,
        );
        Ok(Polynomial::from_distinct_terms(self.ring, nf))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Checks the defining property without trusting how the basis was built:
    /// every S-polynomial of two elements reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let k = self.ring.field();
        let refs: Vec<&Terms> = self.ordered.iter().collect();
        for i in 0..self.ordered.len() {
            for j in (i + 1)..self.ordered.len() {
                let s = s_polynomial(self.order, k, &self.ordered[i], &self.ordered[j]);
                if !reduce_full(self.order, k, s, &refs).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// No leading monomial divides any term of another element; all monic.
    pub fn check_reduced(&self) -> bool {
        let lms = self.leading_monomials();
        self.ordered.iter().enumerate().all(|(i, t)| {
            t[0].1 == 1
                && t.iter().all(|(m, _)| {
                    lms.iter()
                        .enumerate()
                        .all(|(j, lm)| j == i || !lm.divides(m))
                })
        })
    }
}

fn s_polynomial(ord: MonomialOrder, k: PrimeField, f: &Terms, g: &Terms) -> Terms {
    let l = f[0].0.lcm(&g[0].0);
    let qf = f[0].0.quotient_of(&l).expect("lcm");
    let qg = g[0].0.quotient_of(&l).expect("lcm");
    let lhs: Terms = f.iter().map(|&(m, c)| (m.mul(&qf), c)).collect();
    // f, g monic
    sub_mul(ord, k, &lhs, 1, &qg, g)
}

#[derive(Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    seq: u64,
}

struct Builder {
    ord: MonomialOrder,
    polys: Vec<Terms>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    seq: u64,
}

impl Builder {
    fn lm(&self, i: usize) -> &Monomial {
        &self.polys[i][0].0
    }

    fn update(&mut self, h: Terms) {
        let hi = self.polys.len();
        let lh = h[0].0;
        self.polys.push(h);
        self.active.push(true);

        let cands: Vec<(usize, Monomial)> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| (g, self.lm(g).lcm(&lh)))
            .collect();
        // chain criterion on the new pairs; on equal lcms keep the first
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (idx, &(g, l)) in cands.iter().enumerate() {
            let coprime = self.lm(g).is_coprime(&lh);
            let dominated = cands.iter().enumerate().any(|(o, (_, l2))| {
                o != idx && l2.divides(&l) && (l2 != &l || o < idx)
            });
            if coprime || !dominated {
                kept.push((g, l));
            }
        }
        // drop coprime pairs, and pairs whose lcm another kept pair equals
        let mut new_pairs = Vec::new();
        for (g, l) in kept.iter().copied() {
            if self.lm(g).is_coprime(&lh) {
                continue;
            }
            if new_pairs.iter().any(|p: &Pair| p.lcm == l) {
                continue;
            }
            self.seq += 1;
            new_pairs.push(Pair {
                i: g,
                j: hi,
                lcm: l,
                seq: self.seq,
            });
        }
        // Gebauer–Möller B criterion on the old pairs
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !lh.divides(&p.lcm)
                || polys[p.i][0].0.lcm(&lh) == p.lcm
                || polys[p.j][0].0.lcm(&lh) == p.lcm
        });
        self.pairs.extend(new_pairs);
        for g in 0..hi {
            if self.active[g] && lh.divides(&self.polys[g][0].0) {
                self.active[g] = false;
            }
        }
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let (idx, _) = self
            .pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| (p.lcm.degree(), p.seq))?;
        Some(self.pairs.swap_remove(idx))
    }

    fn reducers(&self) -> Vec<&Terms> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, &a)| a)
            .map(|(p, _)| p)
            .collect()
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// Pairs are selected by the normal strategy (least lcm degree, then
/// first-in-first-out), so the output is a deterministic function of the input.
pub fn buchberger(ring: Ring, gens: &[Polynomial], ord: MonomialOrder) -> Result<GroebnerBasis> {
    if gens.iter().any(|g| g.ring() != ring) {
        return Err(Error::RingMismatch);
    }
    let k = ring.field();
    let mut b = Builder {
        ord,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        seq: 0,
    };
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let refs = b.reducers();
        let mut h = reduce_full(ord, k, ordered_terms(g, ord), &refs);
        if h.is_empty() {
            continue;
        }
        make_monic(k, &mut h);
        b.update(h);
    }
    while let Some(p) = b.next_pair() {
        let s = s_polynomial(b.ord, k, &b.polys[p.i], &b.polys[p.j]);
        let refs = b.reducers();
        let mut h = reduce_full(b.ord, k, s, &refs);
        if h.is_empty() {
            continue;
        }
        make_monic(k, &mut h);
        b.update(h);
    }
    Ok(interreduce(ring, ord, b.reducers().into_iter().cloned().collect()))
}

/// Turns a Gröbner basis with antichain leading terms into the reduced one.
fn interreduce(ring: Ring, ord: MonomialOrder, mut polys: Vec<Terms>) -> GroebnerBasis {
    let k = ring.field();
    polys.sort_by(|a, b| ord.cmp(&a[0].0, &b[0].0));
    if polys.iter().any(|p| p[0].0.is_one()) {
        polys = vec![vec![(ring.one(), 1)]];
    }
    let mut reduced = Vec::with_capacity(polys.len());
    for i in 0..polys.len() {
        let others: Vec<&Terms> = polys
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p)
            .collect();
        let mut tail = reduce_full(ord, k, polys[i][1..].to_vec(), &others);
        let mut t = vec![polys[i][0]];
        t.append(&mut tail);
        make_monic(k, &mut t);
        reduced.push(t);
    }
    let elements = reduced
        .iter()
        .map(|t| Polynomial::from_distinct_terms(ring, t.clone()))
        .collect();
    GroebnerBasis {
        ring,
        order: ord,
        elements,
        ordered: reduced,
    }
}
