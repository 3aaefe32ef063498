//! Non-minimal Schreyer resolutions from lead-term frames.
//!
//! Level 1 is a Gröbner basis `g_1..g_r` of `I`, giving `F_1 -> F_0 = S`.
//! Every element `t` of level `L` has a lead term `m_t e_{c(t)}` in `F_{L-1}`.
//! The leads of level `L+1` are read off monomial colon ideals:
//! for `t`, the minimal generators `n` of `(m_s : s < t, c(s) = c(t)) : m_t`.
//! The full vector of each new element is obtained by reducing `n d(t)` with
//! the level-`L` vectors, which form a Gröbner basis of the syzygy module in
//! the induced Schreyer order.
//!
//! Terms `u e_c` of `F_{L-1}` compare by `u * tot(c)` in the ring order and then
//! by the index `c`, where `tot(c)` is the product of lead monomials down the
//! chain. Elements of each level are numbered by parent first, which makes this
//! flat comparison agree with the recursive Schreyer order.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::groebner::GroebnerBasis;
use crate::monomial::{Monomial, MonomialOrder};
use crate::polynomial::{Polynomial, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct ModTerm {
    pub mono: Monomial,
    pub comp: u32,
    pub coeff: u32,
}

#[derive(Clone, Debug, Default)]
pub(crate) struct FrameLevel {
    /// `m_t`
    pub lead: Vec<Monomial>,
    /// `c(t)`, an index into the previous level
    pub comp: Vec<u32>,
    pub degree: Vec<u32>,
    /// `tot(t)`
    pub total: Vec<Monomial>,
    /// `d(t)` as terms of the previous free module, decreasing in Schreyer order
    pub vector: Vec<Vec<ModTerm>>,
    /// elements of this level grouped by `c(t)`, in index order
    pub by_comp: Vec<Vec<u32>>,
}

impl FrameLevel {
    pub fn len(&self) -> usize {
        self.lead.len()
    }

    fn push(&mut self, lead: Monomial, comp: u32, degree: u32, total: Monomial) -> u32 {
        let idx = self.lead.len() as u32;
        self.lead.push(lead);
        self.comp.push(comp);
        self.degree.push(degree);
        self.total.push(total);
        self.vector.push(Vec::new());
        let c = comp as usize;
        if self.by_comp.len() <= c {
            self.by_comp.resize(c + 1, Vec::new());
        }
        self.by_comp[c].push(idx);
        idx
    }
}

/// Limits that make runaway computations fail instead of hang.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResolutionLimits {
    /// Highest homological index whose module is computed.
    pub max_level: usize,
    /// Keeps every `β_{i,j}` with `j - i ≤ max_slope` exact. Implemented as an
    /// absolute cap `top + max_slope` on frame degrees (`top` = last homological
    /// index of interest): a Schreyer reduction only uses elements of its own
    /// degree, so an absolute cap is self-consistent while a per-level slope
    /// cap would drop divisors that the next level needs.
    pub max_slope: Option<u32>,
    /// Abort once the frame holds this many elements.
    pub max_frame: usize,
}

impl ResolutionLimits {
    fn degree_cap(&self, nvars: usize) -> Option<u32> {
        let top = self.max_level.saturating_sub(1).min(nvars) as u32;
        self.max_slope.map(|m| top + m)
    }

    pub fn for_ring(ring: Ring) -> Self {
        ResolutionLimits {
            max_level: ring.nvars() + 1,
            max_slope: None,
            max_frame: 3_000_000,
        }
    }
}

/// A free resolution of `S/I` built from a Gröbner basis of `I`. Usually not
/// minimal; [`SchreyerResolution::betti`] extracts the minimal Betti numbers.
#[derive(Clone, Debug)]
pub struct SchreyerResolution {
    pub(crate) ring: Ring,
    pub(crate) order: MonomialOrder,
    /// `levels[0]` is `F_0 = S` with a single generator.
    pub(crate) levels: Vec<FrameLevel>,
    /// level-1 index -> index in `GroebnerBasis::elements`
    pub(crate) gb_index: Vec<usize>,
    /// some frame element was skipped by the slope limit
    pub(crate) slope_truncated: bool,
    /// the frame may continue past the last computed level
    pub(crate) level_truncated: bool,
}

#[derive(PartialEq, Eq)]
struct HeapKey {
    total: Monomial,
    comp: u32,
    ord: MonomialOrder,
}

impl Ord for HeapKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ord
            .cmp(&self.total, &other.total)
            .then(self.comp.cmp(&other.comp))
    }
}

impl PartialOrd for HeapKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Minimal generators of a monomial ideal, kept in first-seen order.
pub(crate) fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|o| o.divides(&g)) {
            out.push(g);
        }
    }
    out
}

impl SchreyerResolution {
    pub fn compute(gb: &GroebnerBasis, limits: ResolutionLimits) -> Result<Self> {
        let ring = gb.ring();
        let ord = gb.order();
        let k = ring.field();

        let mut f0 = FrameLevel::default();
        f0.push(ring.one(), 0, 0, ring.one());
        let mut levels = vec![f0];

        // level 1: GB elements sorted lex-ascending by lead monomial, which keeps
        // the frame length at most the number of variables
        let mut idx: Vec<usize> = (0..gb.len()).collect();
        let leads = gb.leading_monomials();
        idx.sort_by(|&a, &b| MonomialOrder::Lex.cmp(&leads[a], &leads[b]));
        let mut f1 = FrameLevel::default();
        let mut truncated = false;
        let mut gb_index = Vec::new();
        let cap = limits.degree_cap(ring.nvars());
        for &i in &idx {
            let lm = leads[i];
            let d = lm.degree();
            if cap.is_some_and(|c| d > c) {
                truncated = true;
                continue;
            }
            let t = f1.push(lm, 0, d, lm);
            f1.vector[t as usize] = gb
                .ordered_element(i)
                .iter()
                .map(|&(mono, coeff)| ModTerm {
                    mono,
                    comp: 0,
                    coeff,
                })
                .collect();
            gb_index.push(i);
        }
        levels.push(f1);

        let mut frame_size = levels[1].len();
        let mut level = 1;
        while level < limits.max_level && levels[level].len() > 0 {
            let next = build_next_level(
                k,
                ord,
                &levels[level - 1],
                &levels[level],
                limits,
                cap,
                &mut truncated,
                &mut frame_size,
            )?;
            if next.len() == 0 {
                break;
            }
            levels.push(next);
            level += 1;
        }
        let level_truncated = level >= limits.max_level && has_children(&levels[level]);
        Ok(SchreyerResolution {
            ring,
            order: ord,
            levels,
            gb_index,
            slope_truncated: truncated,
            level_truncated,
        })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Ranks of `F_0, F_1, ...` in the (non-minimal) frame.
    pub fn frame_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.len()).collect()
    }

    /// Whether some part of the resolution was cut off by the limits.
    pub fn is_truncated(&self) -> bool {
        self.slope_truncated || self.level_truncated
    }

    /// Index of the last nonzero module of the frame.
    pub fn length(&self) -> usize {
        self.levels.iter().rposition(|l| l.len() > 0).unwrap_or(0)
    }

    /// Degrees of the basis elements of `F_level`.
    pub fn degrees(&self, level: usize) -> &[u32] {
        &self.levels[level].degree
    }

    /// The differential `F_level -> F_{level-1}` as module elements, one per
    /// basis element of `F_level` (level >= 1). Components at level 1 refer to
    /// the frame's ordering of the Gröbner basis, see [`Self::gb_index`].
    pub fn differential(&self, level: usize) -> Vec<FreeModuleElement> {
        let prev = &self.levels[level - 1];
        self.levels[level]
            .vector
            .iter()
            .map(|v| FreeModuleElement::from_terms(self.ring, prev.degree.clone(), v))
            .collect()
    }

    /// For each level-1 frame element, its index in the Gröbner basis.
    pub fn gb_index(&self) -> &[usize] {
        &self.gb_index
    }
}

fn has_children(level: &FrameLevel) -> bool {
    level.by_comp.iter().any(|sibs| sibs.len() > 1)
}

#[allow(clippy::too_many_arguments)]
fn build_next_level(
    k: PrimeField,
    ord: MonomialOrder,
    prev: &FrameLevel,
    cur: &FrameLevel,
    limits: ResolutionLimits,
    cap: Option<u32>,
    truncated: &mut bool,
    frame_size: &mut usize,
) -> Result<FrameLevel> {
    let mut next = FrameLevel::default();
    let mut position = vec![0usize; cur.len()];
    for sibs in &cur.by_comp {
        for (p, &s) in sibs.iter().enumerate() {
            position[s as usize] = p;
        }
    }
    #[allow(clippy::needless_range_loop)]
    for t in 0..cur.len() {
        let c = cur.comp[t] as usize;
        let mt = cur.lead[t];
        let sibs = &cur.by_comp[c][..position[t]];
        if sibs.is_empty() {
            continue;
        }
        let quotients: Vec<Monomial> = sibs
            .iter()
            .map(|&s| {
                let l = cur.lead[s as usize].lcm(&mt);
                mt.quotient_of(&l).expect("lcm")
            })
            .collect();
        let mut gens = minimalize(quotients);
        gens.sort_by(|a, b| MonomialOrder::Lex.cmp(a, b));
        for n in gens {
            let d = cur.degree[t] + n.degree();
            if cap.is_some_and(|c| d > c) {
                *truncated = true;
                continue;
            }
            *frame_size += 1;
            if *frame_size > limits.max_frame {
                return Err(Error::BudgetExhausted(format!(
                    "Schreyer frame exceeded {} elements",
                    limits.max_frame
                )));
            }
            let total = n.mul(&cur.total[t]);
            let child = next.push(n, t as u32, d, total);
            let vec = reduce_syzygy(k, ord, prev, cur, t as u32, &n)?;
            next.vector[child as usize] = vec;
        }
    }
    Ok(next)
}

/// Computes the syzygy with lead term `n e_t` by reducing `n d(t)`.
fn reduce_syzygy(
    k: PrimeField,
    ord: MonomialOrder,
    prev: &FrameLevel,
    cur: &FrameLevel,
    t: u32,
    n: &Monomial,
) -> Result<Vec<ModTerm>> {
    let mut heap: BinaryHeap<HeapKey> = BinaryHeap::new();
    let mut coeffs: HashMap<(Monomial, u32), (Monomial, u32)> = HashMap::new();
    let add = |heap: &mut BinaryHeap<HeapKey>,
                   coeffs: &mut HashMap<(Monomial, u32), (Monomial, u32)>,
                   mono: Monomial,
                   comp: u32,
                   c: u32| {
        let total = mono.mul(&prev.total[comp as usize]);
        match coeffs.get_mut(&(total, comp)) {
            Some(e) => e.1 = k.add(e.1, c),
            None => {
                coeffs.insert((total, comp), (mono, c));
                heap.push(HeapKey { total, comp, ord });
            }
        }
    };
    for term in &cur.vector[t as usize] {
        add(&mut heap, &mut coeffs, term.mono.mul(n), term.comp, term.coeff);
    }
    let mut syz = vec![ModTerm {
        mono: *n,
        comp: t,
        coeff: 1,
    }];
    let mut first = true;
    while let Some(key) = heap.pop() {
        let Some((u, c)) = coeffs.remove(&(key.total, key.comp)) else {
            continue;
        };
        if c == 0 {
            continue;
        }
        let cands = cur
            .by_comp
            .get(key.comp as usize)
            .map(|v| v.as_slice())
            .unwrap_or(&[]);
        let s = cands
            .iter()
            .copied()
            .find(|&s| (!first || s < t) && cur.lead[s as usize].divides(&u))
            .ok_or_else(|| {
                Error::BudgetExhausted("Schreyer reduction found no divisor (frame inconsistent)".into())
            })?;
        first = false;
        let q = cur.lead[s as usize].quotient_of(&u).expect("divides");
        let neg = k.neg(c);
        syz.push(ModTerm {
            mono: q,
            comp: s,
            coeff: neg,
        });
        for term in &cur.vector[s as usize][1..] {
            add(
                &mut heap,
                &mut coeffs,
                term.mono.mul(&q),
                term.comp,
                k.mul(neg, term.coeff),
            );
        }
    }
    syz.sort_by(|a, b| {
        let ta = a.mono.mul(&cur.total[a.comp as usize]);
        let tb = b.mono.mul(&cur.total[b.comp as usize]);
        ord.cmp(&tb, &ta).then(b.comp.cmp(&a.comp))
    });
    Ok(syz)
}

/// An element of a graded free module `⊕ S(-d_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModuleElement {
    ring: Ring,
    /// degrees `d_k` of the basis elements
    shifts: Vec<u32>,
    coords: std::collections::BTreeMap<usize, Polynomial>,
}

impl FreeModuleElement {
    fn from_terms(ring: Ring, shifts: Vec<u32>, terms: &[ModTerm]) -> Self {
        let mut grouped: std::collections::BTreeMap<usize, Vec<(Monomial, u32)>> =
            Default::default();
        for t in terms {
            grouped
                .entry(t.comp as usize)
                .or_default()
                .push((t.mono, t.coeff));
        }
        FreeModuleElement {
            ring,
            shifts,
            coords: grouped
                .into_iter()
                .map(|(c, ts)| (c, Polynomial::from_terms(ring, ts)))
                .collect(),
        }
    }

    pub fn new(ring: Ring, shifts: Vec<u32>, coords: impl IntoIterator<Item = (usize, Polynomial)>) -> Self {
        FreeModuleElement {
            ring,
            shifts,
            coords: coords.into_iter().filter(|(_, p)| !p.is_zero()).collect(),
        }
    }

    pub fn coordinates(&self) -> &std::collections::BTreeMap<usize, Polynomial> {
        &self.coords
    }

    pub fn coordinate(&self, k: usize) -> Polynomial {
        self.coords
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.ring))
    }

    pub fn shifts(&self) -> &[u32] {
        &self.shifts
    }

    /// Degree if homogeneous: every term's degree plus its component shift agrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for (&c, p) in &self.coords {
            for (m, _) in p.terms() {
                let d = m.degree() + self.shifts[c];
                if *deg.get_or_insert(d) != d {
                    return None;
                }
            }
        }
        deg
    }

    /// `Σ_k coord_k * images_k`.
    pub fn evaluate(&self, images: &[Polynomial]) -> Polynomial {
        let mut acc = Polynomial::zero(self.ring);
        for (&c, p) in &self.coords {
            acc = &acc + &(p * &images[c]);
        }
        acc
    }

    /// `Σ_k coord_k * images_k` where the images are themselves module elements.
    pub fn evaluate_module(&self, images: &[FreeModuleElement]) -> FreeModuleElement {
        let shifts = images.first().map(|e| e.shifts.clone()).unwrap_or_default();
        let mut acc: std::collections::BTreeMap<usize, Polynomial> = Default::default();
        for (&c, p) in &self.coords {
            for (&c2, q) in &images[c].coords {
                let e = acc
                    .entry(c2)
                    .or_insert_with(|| Polynomial::zero(self.ring));
                *e = &*e + &(p * q);
            }
        }
        FreeModuleElement::new(self.ring, shifts, acc)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }
}

/// First syzygies of a Gröbner basis, indexed by `gb.elements()`. Together
/// they form a Gröbner basis of the syzygy module in the Schreyer order.
pub fn syzygies(gb: &GroebnerBasis) -> Result<Vec<FreeModuleElement>> {
    let mut limits = ResolutionLimits::for_ring(gb.ring());
    limits.max_level = 2;
    let res = SchreyerResolution::compute(gb, limits)?;
    let shifts: Vec<u32> = gb
        .elements()
        .iter()
        .map(|g| g.total_degree().unwrap_or(0))
        .collect();
    if res.levels.len() < 3 {
        return Ok(Vec::new());
    }
    let map = &res.gb_index;
    Ok(res
        .differential(2)
        .into_iter()
        .map(|e| {
            FreeModuleElement::new(
                gb.ring(),
                shifts.clone(),
                e.coords.into_iter().map(|(c, p)| (map[c], p)),
            )
        })
        .collect())
}
