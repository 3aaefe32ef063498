//! Poset-indexed sequences of homogeneous elements: d-sequences, quadratic
//! sequences, related ideals and the regularity bounds they give for powers.
//!
//! Notation: for a poset `Λ` and elements `u_λ`, `U_Σ` is the ideal generated
//! by `{u_σ : σ ∈ Σ}`. Subsets of `Λ` are bitmasks over 0-based indices.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::polynomial::{Polynomial, Ring};
use crate::resolution::{hilbert_numerator_of_ideal, regularity, Regularity};

/// Largest poset handled; poset-ideal enumeration is exponential.
pub const MAX_POSET_SIZE: usize = 8;

/// A finite poset on `{0, .., k-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    k: usize,
    /// `below[a]` = elements strictly less than `a`
    below: Vec<u32>,
}

impl Poset {
    /// From covering relations `(a, b)` meaning `a < b`, 1-based.
    pub fn from_covers(k: usize, covers: &[(usize, usize)]) -> Result<Self> {
        if k > MAX_POSET_SIZE {
            return Err(Error::CapExceeded {
                size: k,
                cap: MAX_POSET_SIZE,
            });
        }
        let mut below = vec![0u32; k];
        for &(a, b) in covers {
            if a == 0 || b == 0 || a > k || b > k {
                return Err(Error::InvalidParameter(format!(
                    "cover ({a}, {b}) outside 1..={k}"
                )));
            }
            if a == b {
                return Err(Error::InvalidParameter(format!("cover ({a}, {a}) is reflexive")));
            }
            below[b - 1] |= 1 << (a - 1);
        }
        // transitive closure
        loop {
            let mut changed = false;
            for b in 0..k {
                let mut acc = below[b];
                for a in 0..k {
                    if below[b] >> a & 1 == 1 {
                        acc |= below[a];
                    }
                }
                if acc != below[b] {
                    below[b] = acc;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if (0..k).any(|a| below[a] >> a & 1 == 1) {
            return Err(Error::InvalidParameter("covering relations contain a cycle".into()));
        }
        Ok(Poset { k, below })
    }

    /// The chain `0 < 1 < ... < k-1`.
    pub fn chain(k: usize) -> Result<Self> {
        let covers: Vec<(usize, usize)> = (1..k).map(|a| (a, a + 1)).collect();
        Poset::from_covers(k, &covers)
    }

    pub fn antichain(k: usize) -> Result<Self> {
        Poset::from_covers(k, &[])
    }

    pub fn len(&self) -> usize {
        self.k
    }

    pub fn is_empty(&self) -> bool {
        self.k == 0
    }

    /// `a < b` (strict), 0-based.
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.below[b] >> a & 1 == 1
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.less(a, b)
    }

    pub fn full_mask(&self) -> u32 {
        ((1u64 << self.k) - 1) as u32
    }

    /// Downward closed: `σ ∈ Σ` and `λ ≤ σ` imply `λ ∈ Σ`.
    pub fn is_poset_ideal(&self, sigma: u32) -> bool {
        sigma & !self.full_mask() == 0
            && (0..self.k).all(|s| sigma >> s & 1 == 0 || self.below[s] & !sigma == 0)
    }

    /// All poset ideals, ordered by size and then by mask.
    pub fn poset_ideals(&self) -> Vec<u32> {
        let mut out: Vec<u32> = (0..=self.full_mask())
            .filter(|&m| self.is_poset_ideal(m))
            .collect();
        out.sort_by_key(|&m| (m.count_ones(), m));
        out
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.k).filter(|&a| self.below[a] == 0).collect()
    }

    /// `λ ∈ Σ`, or `λ ∉ Σ` with every `σ < λ` in `Σ`.
    pub fn lies_inside_or_just_above(&self, sigma: u32, lambda: usize) -> Result<bool> {
        if !self.is_poset_ideal(sigma) {
            return Err(Error::NotPosetIdeal(format!("{sigma:#b}")));
        }
        if lambda >= self.k {
            return Err(Error::InvalidParameter(format!("element {lambda} outside poset")));
        }
        Ok(sigma >> lambda & 1 == 1 || self.below[lambda] & !sigma == 0)
    }

    /// Pairs `(Σ, λ)` with `Σ` a poset ideal and `λ` inside or just above it.
    pub fn admissible_pairs(&self) -> Vec<(u32, usize)> {
        let mut out = Vec::new();
        for sigma in self.poset_ideals() {
            for lambda in 0..self.k {
                if self.below[lambda] & !sigma == 0 {
                    out.push((sigma, lambda));
                }
            }
        }
        out
    }
}

/// Free-function form of [`Poset::lies_inside_or_just_above`].
pub fn lies_inside_or_just_above(poset: &Poset, sigma: u32, lambda: usize) -> Result<bool> {
    poset.lies_inside_or_just_above(sigma, lambda)
}

/// Elements `u_λ` indexed by a poset, with an ambient ideal `I` (default zero).
#[derive(Clone, Debug)]
pub struct PosetSequence {
    poset: Poset,
    elems: Vec<Polynomial>,
    ambient: Ideal,
}

impl PosetSequence {
    pub fn new(poset: Poset, elems: Vec<Polynomial>) -> Result<Self> {
        if poset.len() != elems.len() {
            return Err(Error::LengthMismatch(poset.len(), elems.len()));
        }
        let ring = elems
            .first()
            .map(|e| e.ring())
            .ok_or_else(|| Error::InvalidParameter("empty sequence".into()))?;
        for e in &elems {
            if e.ring() != ring {
                return Err(Error::RingMismatch);
            }
            match e.homogeneity().degree() {
                Some(d) if d > 0 && e.is_homogeneous() => {}
                _ => {
                    return Err(Error::InvalidParameter(format!(
                        "sequence elements must be nonzero homogeneous of positive degree: {e}"
                    )))
                }
            }
        }
        Ok(PosetSequence {
            poset,
            ambient: Ideal::zero(ring),
            elems,
        })
    }

    /// `u_1 < u_2 < ... < u_k` as a chain.
    pub fn chain(elems: Vec<Polynomial>) -> Result<Self> {
        PosetSequence::new(Poset::chain(elems.len())?, elems)
    }

    pub fn with_ambient(mut self, ambient: Ideal) -> Result<Self> {
        if ambient.ring() != self.ring() {
            return Err(Error::RingMismatch);
        }
        self.ambient = ambient;
        Ok(self)
    }

    pub fn ring(&self) -> Ring {
        self.elems[0].ring()
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elems
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.elems
            .iter()
            .map(|e| e.total_degree().expect("nonzero"))
            .collect()
    }

    /// `d = max d_λ`.
    pub fn max_degree(&self) -> u32 {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// `U_Σ`.
    pub fn ideal_of(&self, sigma: u32) -> Ideal {
        Ideal::new(
            self.ring(),
            (0..self.elems.len())
                .filter(|&i| sigma >> i & 1 == 1)
                .map(|i| self.elems[i].clone()),
        )
        .expect("same ring")
    }

    /// `U_Λ`.
    pub fn full_ideal(&self) -> Ideal {
        self.ideal_of(self.poset.full_mask())
    }

    fn plus_ambient(&self, i: &Ideal) -> Result<Ideal> {
        i.sum(&self.ambient)
    }
}

fn colon(i: &Ideal, f: &Polynomial) -> Result<Ideal> {
    if i.is_zero() {
        // S is a domain
        return Ok(Ideal::zero(i.ring()));
    }
    i.colon_element(f)
}

/// A witness `Θ` for the pair `(Σ, λ)` in the quadratic-sequence conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticWitness {
    pub sigma: u32,
    pub lambda: usize,
    pub theta: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticReport {
    pub holds: bool,
    pub witnesses: Vec<QuadraticWitness>,
    /// first pair `(Σ, λ)` without a witness
    pub failure: Option<(u32, usize)>,
}

/// Both containments for one candidate `Θ`:
/// `((U_Σ + I) : u_λ) ∩ (U_Λ + I) ⊆ U_Θ + I` and `u_λ U_Θ ⊆ (U_Σ + I) U_Λ`.
pub fn check_witness(seq: &PosetSequence, w: QuadraticWitness) -> Result<bool> {
    let ctx = PairContext::new(seq, w.sigma, w.lambda)?;
    ctx.accepts(seq, w.theta)
}

struct PairContext {
    lambda: usize,
    lhs: Ideal,
    product: Ideal,
}

impl PairContext {
    fn new(seq: &PosetSequence, sigma: u32, lambda: usize) -> Result<Self> {
        if !seq.poset.lies_inside_or_just_above(sigma, lambda)? {
            return Err(Error::InvalidParameter(format!(
                "element {lambda} is neither inside nor just above {sigma:#b}"
            )));
        }
        let u_sigma = seq.plus_ambient(&seq.ideal_of(sigma))?;
        let u_lambda_full = seq.plus_ambient(&seq.full_ideal())?;
        let lhs = colon(&u_sigma, &seq.elems[lambda])?.intersect(&u_lambda_full)?;
        let product = u_sigma.product(&seq.full_ideal())?;
        Ok(PairContext {
            lambda,
            lhs,
            product,
        })
    }

    fn accepts(&self, seq: &PosetSequence, theta: u32) -> Result<bool> {
        let u_theta = seq.plus_ambient(&seq.ideal_of(theta))?;
        if !u_theta.contains_ideal(&self.lhs)? {
            return Ok(false);
        }
        let u = &seq.elems[self.lambda];
        for t in 0..seq.elems.len() {
            if theta >> t & 1 == 1 && !self.product.contains(&(u * &seq.elems[t]))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Searches every poset ideal `Θ` for every admissible `(Σ, λ)`.
pub fn is_quadratic_sequence(seq: &PosetSequence) -> Result<QuadraticReport> {
    let thetas = seq.poset.poset_ideals();
    let mut witnesses = Vec::new();
    for (sigma, lambda) in seq.poset.admissible_pairs() {
        let ctx = PairContext::new(seq, sigma, lambda)?;
        let mut found = None;
        for &theta in &thetas {
            if ctx.accepts(seq, theta)? {
                found = Some(theta);
                break;
            }
        }
        match found {
            Some(theta) => witnesses.push(QuadraticWitness {
                sigma,
                lambda,
                theta,
            }),
            None => {
                return Ok(QuadraticReport {
                    holds: false,
                    witnesses,
                    failure: Some((sigma, lambda)),
                })
            }
        }
    }
    Ok(QuadraticReport {
        holds: true,
        witnesses,
        failure: None,
    })
}

/// `U_Λ` itself (`pair = None`) or `(U_Σ : u_λ) + U_Λ`.
#[derive(Clone, Debug)]
pub struct RelatedIdeal {
    pub pair: Option<(u32, usize)>,
    pub ideal: Ideal,
    pub is_unit: bool,
}

/// `U_Λ` and every `(U_Σ : u_λ) + U_Λ`, deduplicated by ideal equality
/// (the first pair producing each ideal is kept).
pub fn related_ideals(seq: &PosetSequence) -> Result<Vec<RelatedIdeal>> {
    let full = seq.full_ideal();
    let mut out = vec![RelatedIdeal {
        pair: None,
        is_unit: full.is_unit(),
        ideal: full.clone(),
    }];
    for (sigma, lambda) in seq.poset.admissible_pairs() {
        let j = colon(&seq.ideal_of(sigma), &seq.elems[lambda])?.sum(&full)?;
        let mut dup = false;
        for r in &out {
            if r.ideal.try_eq(&j)? {
                dup = true;
                break;
            }
        }
        if !dup {
            out.push(RelatedIdeal {
                pair: Some((sigma, lambda)),
                is_unit: j.is_unit(),
                ideal: j,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationBound {
    pub s: u32,
    pub d: u32,
    /// maximum of `reg(R/J)` over related ideals, unit ideals skipped
    pub max_related: Regularity,
    /// `d(s-1) + max_related`
    pub bound: Regularity,
}

/// `d(s-1) + max reg(R/J)` over the related ideals `J`.
pub fn filtration_bound(seq: &PosetSequence, s: u32) -> Result<FiltrationBound> {
    if s == 0 {
        return Err(Error::InvalidParameter("s must be at least 1".into()));
    }
    let mut max_related = Regularity::NegInfinity;
    for r in related_ideals(seq)? {
        if r.is_unit {
            continue;
        }
        max_related = max_related.max(regularity(&r.ideal)?);
    }
    let d = seq.max_degree();
    let bound = match max_related {
        Regularity::NegInfinity => Regularity::NegInfinity,
        Regularity::Finite(v) => Regularity::Finite(v + (d * (s - 1)) as i32),
    };
    Ok(FiltrationBound {
        s,
        d,
        max_related,
        bound,
    })
}

/// Costa's criterion and the non-degeneracy clause, reported separately.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DSequenceReport {
    /// `((u_1..u_{i-1}) : u_i) ∩ (u_1..u_k) = (u_1..u_{i-1})` for all `i`
    pub costa_holds: bool,
    /// first 1-based `i` where the identity fails
    pub first_failure: Option<usize>,
    /// no `u_i` lies in the ideal of the others
    pub nondegenerate: bool,
    pub first_redundant: Option<usize>,
}

impl DSequenceReport {
    pub fn is_d_sequence(&self) -> bool {
        self.costa_holds
    }
}

pub fn is_d_sequence(elems: &[Polynomial]) -> Result<DSequenceReport> {
    let ring = ring_of(elems)?;
    let full = Ideal::new(ring, elems.iter().cloned())?;
    let mut first_failure = None;
    for i in 0..elems.len() {
        let prefix = Ideal::new(ring, elems[..i].iter().cloned())?;
        let lhs = colon(&prefix, &elems[i])?.intersect(&full)?;
        if !lhs.try_eq(&prefix)? {
            first_failure = Some(i + 1);
            break;
        }
    }
    let mut first_redundant = None;
    for i in 0..elems.len() {
        let rest = Ideal::new(
            ring,
            elems
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, e)| e.clone()),
        )?;
        if rest.contains(&elems[i])? {
            first_redundant = Some(i + 1);
            break;
        }
    }
    Ok(DSequenceReport {
        costa_holds: first_failure.is_none(),
        first_failure,
        nondegenerate: first_redundant.is_none(),
        first_redundant,
    })
}

fn ring_of(elems: &[Polynomial]) -> Result<Ring> {
    let ring = elems
        .first()
        .map(|e| e.ring())
        .ok_or_else(|| Error::InvalidParameter("empty sequence".into()))?;
    for e in elems {
        if e.ring() != ring {
            return Err(Error::RingMismatch);
        }
        if e.is_zero() || !e.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
    }
    Ok(ring)
}

/// Homogeneous forms of positive degree form a regular sequence iff the
/// Hilbert series of the quotient is `Π (1 - t^{d_i}) / (1 - t)^N`.
pub fn is_regular_sequence(elems: &[Polynomial]) -> Result<bool> {
    if elems.is_empty() {
        return Ok(true);
    }
    let ring = ring_of(elems)?;
    let mut expected = vec![1i64];
    for e in elems {
        let d = e.total_degree().expect("nonzero") as usize;
        if d == 0 {
            return Ok(false);
        }
        let mut w = vec![0; expected.len() + d];
        for (k, &c) in expected.iter().enumerate() {
            w[k] += c;
            w[k + d] -= c;
        }
        expected = w;
    }
    while expected.len() > 1 && expected.last() == Some(&0) {
        expected.pop();
    }
    let got = hilbert_numerator_of_ideal(&Ideal::new(ring, elems.iter().cloned())?)?;
    Ok(got == expected)
}

fn check_d_sequence_hypotheses(elems: &[Polynomial]) -> Result<()> {
    let rep = is_d_sequence(elems)?;
    if !rep.costa_holds {
        return Err(Error::Hypothesis(format!(
            "not a d-sequence: Costa's identity fails at index {}",
            rep.first_failure.unwrap_or(0)
        )));
    }
    if !is_regular_sequence(&elems[..elems.len() - 1])? {
        return Err(Error::Hypothesis(
            "all but the last element must form a regular sequence".into(),
        ));
    }
    Ok(())
}

fn degree_term(elems: &[Polynomial]) -> i64 {
    let k = elems.len() as i64;
    let sum: i64 = elems[..elems.len() - 1]
        .iter()
        .map(|e| e.total_degree().expect("nonzero") as i64)
        .sum();
    sum - k
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DSequenceBound {
    pub s: u32,
    pub d: u32,
    pub reg_quotient: Regularity,
    /// `Σ_{i<k} d_i - k`
    pub degree_term: i64,
    /// `d(s-1) + max{reg(R/U), degree_term}`
    pub bound: i64,
}

/// `d(s-1) + max{reg(R/U), Σ_{i<k} d_i - k}` for a d-sequence `u_1..u_k` whose
/// first `k-1` elements form a regular sequence; bounds `reg(R/U^s)`.
pub fn d_sequence_bound(elems: &[Polynomial], s: u32) -> Result<DSequenceBound> {
    if s == 0 {
        return Err(Error::InvalidParameter("s must be at least 1".into()));
    }
    check_d_sequence_hypotheses(elems)?;
    let ring = ring_of(elems)?;
    let u = Ideal::new(ring, elems.iter().cloned())?;
    let reg_quotient = regularity(&u)?;
    let d = elems
        .iter()
        .map(|e| e.total_degree().expect("nonzero"))
        .max()
        .unwrap_or(0);
    let degree_term = degree_term(elems);
    let r = reg_quotient.value().map(i64::from).unwrap_or(i64::MIN);
    Ok(DSequenceBound {
        s,
        d,
        reg_quotient,
        degree_term,
        bound: (d * (s - 1)) as i64 + r.max(degree_term),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColonSumReport {
    /// `reg(R/(((u_1..u_{k-1}) : u_k) + (u_k)))`
    pub lhs: Regularity,
    pub reg_quotient: Regularity,
    pub degree_term: i64,
    /// `max{reg(R/U), Σ_{i<k} d_i - k}`
    pub rhs: i64,
    pub holds: bool,
}

/// Compares `reg(R/((U' : u_k) + (u_k)))` with `max{reg(R/U), Σ_{i<k} d_i - k}`
/// where `U' = (u_1..u_{k-1})`, under the same hypotheses as
/// [`d_sequence_bound`].
pub fn colon_sum_bound(elems: &[Polynomial]) -> Result<ColonSumReport> {
    check_d_sequence_hypotheses(elems)?;
    let ring = ring_of(elems)?;
    let k = elems.len();
    let prefix = Ideal::new(ring, elems[..k - 1].iter().cloned())?;
    let last = Ideal::new(ring, [elems[k - 1].clone()])?;
    let lhs_ideal = colon(&prefix, &elems[k - 1])?.sum(&last)?;
    let lhs = regularity(&lhs_ideal)?;
    let u = Ideal::new(ring, elems.iter().cloned())?;
    let reg_quotient = regularity(&u)?;
    let degree_term = degree_term(elems);
    let rhs = reg_quotient
        .value()
        .map(i64::from)
        .unwrap_or(i64::MIN)
        .max(degree_term);
    let holds = match lhs {
        Regularity::NegInfinity => true,
        Regularity::Finite(v) => (v as i64) <= rhs,
    };
    Ok(ColonSumReport {
        lhs,
        reg_quotient,
        degree_term,
        rhs,
        holds,
    })
}

/// `U_Σ ∩ U_Λ^s = U_Σ · U_Λ^{s-1}`.
pub fn product_intersection_identity(seq: &PosetSequence, sigma: u32, s: u32) -> Result<bool> {
    if s == 0 {
        return Err(Error::InvalidParameter("s must be at least 1".into()));
    }
    if !seq.poset.is_poset_ideal(sigma) {
        return Err(Error::NotPosetIdeal(format!("{sigma:#b}")));
    }
    let u_sigma = seq.ideal_of(sigma);
    let full = seq.full_ideal();
    let lhs = u_sigma.intersect(&full.power(s)?)?;
    let rhs = if s == 1 {
        u_sigma
    } else {
        u_sigma.product(&full.power(s - 1)?)?
    };
    lhs.try_eq(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn ring(n: usize) -> Ring {
        Ring::new(n, PrimeField::default()).unwrap()
    }

    fn polys(r: Ring, src: &[&str]) -> Vec<Polynomial> {
        src.iter().map(|s| Polynomial::parse(r, s).unwrap()).collect()
    }

    #[test]
    fn poset_basics() {
        let c = Poset::chain(3).unwrap();
        assert!(c.less(0, 2) && c.less(0, 1) && !c.less(2, 0));
        assert_eq!(c.poset_ideals(), vec![0b000, 0b001, 0b011, 0b111]);
        assert!(c.lies_inside_or_just_above(0b001, 1).unwrap());
        assert!(!c.lies_inside_or_just_above(0b001, 2).unwrap());
        assert!(c.lies_inside_or_just_above(0b011, 0).unwrap());
        assert!(matches!(
            c.lies_inside_or_just_above(0b010, 0),
            Err(Error::NotPosetIdeal(_))
        ));
        let a = Poset::antichain(3).unwrap();
        assert_eq!(a.poset_ideals().len(), 8);
        assert!(Poset::from_covers(3, &[(1, 2), (2, 3), (3, 1)]).is_err());
        assert!(Poset::from_covers(9, &[]).is_err());
    }

    #[test]
    fn poset_ideals_are_downward_closed() {
        let p = Poset::from_covers(5, &[(1, 3), (2, 3), (3, 4), (2, 5)]).unwrap();
        for sigma in p.poset_ideals() {
            for s in 0..5 {
                for l in 0..5 {
                    if sigma >> s & 1 == 1 && p.leq(l, s) {
                        assert!(sigma >> l & 1 == 1);
                    }
                }
            }
        }
        // partial-order axioms
        for a in 0..5 {
            assert!(!p.less(a, a));
            for b in 0..5 {
                assert!(!(p.less(a, b) && p.less(b, a)));
                for c in 0..5 {
                    if p.less(a, b) && p.less(b, c) {
                        assert!(p.less(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn non_d_sequence_detected() {
        let r = ring(2);
        let rep = is_d_sequence(&polys(r, &["v1^2", "v1*v2"])).unwrap();
        assert!(!rep.costa_holds);
        assert_eq!(rep.first_failure, Some(2));
    }

    #[test]
    fn regular_sequence_is_d_sequence() {
        let r = ring(3);
        let e = polys(r, &["v1^2", "v2^2", "v3"]);
        assert!(is_regular_sequence(&e).unwrap());
        let rep = is_d_sequence(&e).unwrap();
        assert!(rep.costa_holds && rep.nondegenerate);
        assert!(!is_regular_sequence(&polys(r, &["v1*v2", "v1*v3"])).unwrap());
    }

    #[test]
    fn single_regular_element() {
        let r = ring(2);
        let seq = PosetSequence::chain(polys(r, &["v1*v2"])).unwrap();
        let rep = is_quadratic_sequence(&seq).unwrap();
        assert!(rep.holds);
        assert_eq!(
            rep.witnesses,
            vec![
                QuadraticWitness { sigma: 0, lambda: 0, theta: 0 },
                QuadraticWitness { sigma: 1, lambda: 0, theta: 1 },
            ]
        );
        let rel = related_ideals(&seq).unwrap();
        assert_eq!(rel.len(), 2);
        assert!(!rel[0].is_unit);
        assert!(rel[1].is_unit);
        // reg(R/(u^s)) = 2s - 1 for a quadric
        let fb = filtration_bound(&seq, 3).unwrap();
        assert_eq!(fb.bound, Regularity::Finite(5));
        let db = d_sequence_bound(seq.elements(), 3).unwrap();
        assert_eq!(db.bound, 5);
    }

    #[test]
    fn witnesses_recheck() {
        let r = ring(3);
        let seq = PosetSequence::chain(polys(r, &["v1", "v2^2"])).unwrap();
        let rep = is_quadratic_sequence(&seq).unwrap();
        assert!(rep.holds);
        for w in rep.witnesses {
            assert!(check_witness(&seq, w).unwrap());
        }
    }

    #[test]
    fn product_intersection_on_monomials() {
        let r = ring(3);
        let seq = PosetSequence::chain(polys(r, &["v1", "v2", "v3"])).unwrap();
        for sigma in seq.poset().poset_ideals() {
            for s in 1..=3 {
                assert!(product_intersection_identity(&seq, sigma, s).unwrap());
            }
        }
    }

    #[test]
    fn invalid_sequences_rejected() {
        let r = ring(2);
        assert!(PosetSequence::chain(polys(r, &["v1 + v2^2"])).is_err());
        assert!(PosetSequence::chain(polys(r, &["1"])).is_err());
        assert!(PosetSequence::new(Poset::chain(2).unwrap(), polys(r, &["v1"])).is_err());
        assert!(matches!(
            d_sequence_bound(&polys(r, &["v1^2", "v1*v2"]), 2),
            Err(Error::Hypothesis(_))
        ));
    }
}
