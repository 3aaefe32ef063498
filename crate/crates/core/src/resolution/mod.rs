//! Graded free resolutions, Betti tables and regularity.
//!
//! Conventions: everything is about the quotient `S/I`, so `β_{0,0} = 1` for a
//! proper ideal and `reg` means `reg(S/I) = reg(I) - 1`.

mod grading;
mod hilbert;
mod koszul;
mod linalg;
mod schreyer;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::monomial::MonomialOrder;

pub use grading::{Grading, Multidegree};
pub use hilbert::{hilbert_numerator, hilbert_numerator_of_ideal};
pub use koszul::{koszul_betti_table, koszul_tor_oracle};
pub use linalg::sparse_rank;
pub use schreyer::{syzygies, FreeModuleElement, ResolutionLimits, SchreyerResolution};

/// Castelnuovo–Mumford regularity of a quotient. The zero module (unit ideal)
/// has regularity `-∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Regularity {
    NegInfinity,
    Finite(i32),
}

impl Regularity {
    pub fn value(self) -> Option<i32> {
        match self {
            Regularity::NegInfinity => None,
            Regularity::Finite(v) => Some(v),
        }
    }
}

impl fmt::Display for Regularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regularity::NegInfinity => write!(f, "-inf"),
            Regularity::Finite(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for Regularity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Regularity::NegInfinity => s.serialize_none(),
            Regularity::Finite(v) => s.serialize_i32(*v),
        }
    }
}

impl<'de> Deserialize<'de> for Regularity {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(match Option::<i32>::deserialize(d)? {
            None => Regularity::NegInfinity,
            Some(v) => Regularity::Finite(v),
        })
    }
}

/// Graded Betti numbers `β_{i,j}` of `S/I`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, u32), u64>,
    /// entries with `j - i` above this are unknown
    known_up_to: Option<i64>,
    /// entries with `i` above this are unknown
    hom_cut: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct BettiEntry {
    i: usize,
    j: u32,
    beta: u64,
}

#[derive(Serialize, Deserialize)]
struct BettiRecord {
    entries: Vec<BettiEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    known_up_to: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hom_cut: Option<usize>,
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BettiRecord {
            entries: self
                .entries
                .iter()
                .map(|(&(i, j), &beta)| BettiEntry { i, j, beta })
                .collect(),
            known_up_to: self.known_up_to,
            hom_cut: self.hom_cut,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BettiTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = BettiRecord::deserialize(d)?;
        let mut t = BettiTable::from_entries(r.entries.into_iter().map(|e| ((e.i, e.j), e.beta)));
        t.known_up_to = r.known_up_to;
        t.hom_cut = r.hom_cut;
        Ok(t)
    }
}

impl BettiTable {
    pub fn from_entries(entries: impl IntoIterator<Item = ((usize, u32), u64)>) -> Self {
        BettiTable {
            entries: entries.into_iter().filter(|&(_, b)| b != 0).collect(),
            known_up_to: None,
            hom_cut: None,
        }
    }

    pub fn get(&self, i: usize, j: u32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries, ordered by `(i, j)`.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, u32), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_complete(&self) -> bool {
        self.known_up_to.is_none() && self.hom_cut.is_none()
    }

    /// Largest homological index computed, if the resolution continues past it.
    pub fn hom_cut(&self) -> Option<usize> {
        self.hom_cut
    }

    /// Largest `j - i` up to which every entry is exact, if truncated.
    pub fn known_up_to(&self) -> Option<i64> {
        self.known_up_to
    }

    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    /// `max{j - i : β_{i,j} ≠ 0}`; errors if the table was truncated.
    pub fn regularity(&self) -> Result<Regularity> {
        if let Some(h) = self.hom_cut {
            return Err(Error::BudgetExhausted(format!(
                "Betti table cut at homological index {h}; regularity unknown"
            )));
        }
        if let Some(k) = self.known_up_to {
            return Err(Error::BudgetExhausted(format!(
                "Betti table truncated above j - i = {k}; regularity unknown"
            )));
        }
        Ok(self.regularity_lower_bound())
    }

    /// Regularity of the known part of the table.
    pub fn regularity_lower_bound(&self) -> Regularity {
        self.entries
            .keys()
            .map(|&(i, j)| Regularity::Finite(j as i32 - i as i32))
            .max()
            .unwrap_or(Regularity::NegInfinity)
    }

    /// `Σ_i (-1)^i β_{i,j}` for every `j` with a nonzero entry.
    pub fn alternating_sums(&self) -> BTreeMap<u32, i64> {
        let mut out = BTreeMap::new();
        for (&(i, j), &b) in &self.entries {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            *out.entry(j).or_insert(0) += sign * b as i64;
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Entrywise `self ≤ other`; returns the first violating `(i, j)`.
    pub fn first_excess_over(&self, other: &BettiTable) -> Option<(usize, u32)> {
        self.entries
            .iter()
            .find(|(&(i, j), &b)| b > other.get(i, j))
            .map(|(&k, _)| k)
    }
}

impl fmt::Display for BettiTable {
    /// Rows `j - i`, columns `i`, as in Macaulay2's `betti`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return writeln!(f, "(zero module)");
        }
        let maxi = self.projective_dimension().unwrap_or(0);
        let rows: Vec<i64> = {
            let mut r: Vec<i64> = self.entries.keys().map(|&(i, j)| j as i64 - i as i64).collect();
            r.sort_unstable();
            r.dedup();
            let (lo, hi) = (r[0], r[r.len() - 1]);
            (lo..=hi).collect()
        };
        let width = self.entries.values().map(|v| v.to_string().len()).max().unwrap_or(1).max(maxi.to_string().len());
        let label = rows.iter().map(|r| r.to_string().len()).max().unwrap_or(1) + 1;
        write!(f, "{:>label$}", "")?;
        for i in 0..=maxi {
            write!(f, " {i:>width$}")?;
        }
        writeln!(f)?;
        for r in rows {
            write!(f, "{:>label$}", format!("{r}:"))?;
            for i in 0..=maxi {
                let j = r + i as i64;
                let b = if j >= 0 { self.get(i, j as u32) } else { 0 };
                if b == 0 {
                    write!(f, " {:>width$}", ".")?;
                } else {
                    write!(f, " {b:>width$}")?;
                }
            }
            writeln!(f)?;
        }
        if let Some(k) = self.known_up_to {
            writeln!(f, "(rows above {k} not computed)")?;
        }
        if let Some(h) = self.hom_cut {
            writeln!(f, "(columns above {h} not computed)")?;
        }
        Ok(())
    }
}

/// Bounds for [`minimal_resolution`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResolutionOptions {
    /// Largest homological index computed; `None` = number of variables.
    pub hom_bound: Option<usize>,
    /// Largest `j - i` computed; `None` = unbounded.
    pub deg_bound: Option<u32>,
    /// Abort when the Schreyer frame grows past this many generators.
    pub max_frame: usize,
}

impl Default for ResolutionOptions {
    fn default() -> Self {
        ResolutionOptions {
            hom_bound: None,
            deg_bound: None,
            max_frame: 3_000_000,
        }
    }
}

/// Minimal graded Betti numbers of `S/I`.
///
/// Computes a Schreyer resolution from a degrevlex Gröbner basis, then reads
/// off minimal Betti numbers from the ranks of the constant parts of its
/// differentials: `β_{i,j} = #F_{i,j} - rank(∂_i)_j - rank(∂_{i+1})_j`, with
/// ranks taken blockwise in the finest multigrading of the generators.
pub fn minimal_resolution(ideal: &Ideal, opts: ResolutionOptions) -> Result<BettiTable> {
    if !ideal.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let ring = ideal.ring();
    let gb = ideal.groebner(MonomialOrder::DegRevLex);
    if gb.is_unit() {
        return Ok(BettiTable::default());
    }
    let hom = opts.hom_bound.unwrap_or(ring.nvars());
    let limits = ResolutionLimits {
        max_level: hom + 1,
        max_slope: opts.deg_bound,
        max_frame: opts.max_frame,
    };
    let res = SchreyerResolution::compute(&gb, limits)?;
    let grading = Grading::finest_for(ring.nvars(), ideal.generators());
    let mut table = res.betti(&grading, hom);
    if res.level_truncated {
        table.hom_cut = Some(hom);
    }
    if res.slope_truncated {
        // entries past the slope bound may be incomplete; report none of them
        if let Some(m) = opts.deg_bound {
            table.entries.retain(|&(i, j), _| j as i64 - i as i64 <= m as i64);
            table.known_up_to = Some(i64::from(m));
        }
    }
    Ok(table)
}

/// `reg(S/I)` with default bounds.
pub fn regularity(ideal: &Ideal) -> Result<Regularity> {
    minimal_resolution(ideal, ResolutionOptions::default())?.regularity()
}

impl SchreyerResolution {
    /// Minimal Betti numbers up to homological index `hom`.
    pub fn betti(&self, grading: &Grading, hom: usize) -> BettiTable {
        let k = self.ring.field();
        // (level, multidegree) -> count and total degree
        let mut counts: HashMap<(usize, Multidegree), (u32, u64)> = HashMap::new();
        let mut ranks: HashMap<(usize, Multidegree), usize> = HashMap::new();
        let mut mdeg_of: Vec<Vec<Multidegree>> = Vec::with_capacity(self.levels.len());
        for (l, level) in self.levels.iter().enumerate() {
            let mds: Vec<Multidegree> = level.total.iter().map(|t| grading.degree(t)).collect();
            for (t, md) in mds.iter().enumerate() {
                let e = counts.entry((l, md.clone())).or_insert((level.degree[t], 0));
                e.1 += 1;
            }
            if l >= 1 {
                // constant parts of ∂_l, block by block
                let mut blocks: HashMap<&Multidegree, Vec<Vec<(usize, u32)>>> = HashMap::new();
                for (t, v) in level.vector.iter().enumerate() {
                    let row: Vec<(usize, u32)> = v
                        .iter()
                        .filter(|term| term.mono.is_one())
                        .map(|term| (term.comp as usize, term.coeff))
                        .collect();
                    if !row.is_empty() {
                        blocks.entry(&mds[t]).or_default().push(row);
                    }
                }
                for (md, rows) in blocks {
                    let r = sparse_rank(k, rows);
                    ranks.insert((l, md.clone()), r);
                }
            }
            mdeg_of.push(mds);
        }
        let mut entries: BTreeMap<(usize, u32), u64> = BTreeMap::new();
        for ((l, md), (deg, c)) in &counts {
            if *l > hom {
                continue;
            }
            let r_in = ranks.get(&(*l, md.clone())).copied().unwrap_or(0) as u64;
            let r_out = ranks.get(&(*l + 1, md.clone())).copied().unwrap_or(0) as u64;
            let b = c - r_in - r_out;
            if b > 0 {
                *entries.entry((*l, *deg)).or_insert(0) += b;
            }
        }
        BettiTable {
            entries,
            known_up_to: None,
            hom_cut: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::graph::Graph;
    use crate::polynomial::{Polynomial, Ring};

    fn bei(g: &Graph) -> Ideal {
        let r = Ring::for_graph(g.n(), PrimeField::default()).unwrap();
        Ideal::new(
            r,
            g.edges().iter().map(|&(i, j)| {
                let a = Polynomial::var(r, r.x(i)) * Polynomial::var(r, r.y(j));
                let b = Polynomial::var(r, r.x(j)) * Polynomial::var(r, r.y(i));
                a - b
            }),
        )
        .unwrap()
    }

    fn table(pairs: &[((usize, u32), u64)]) -> BettiTable {
        BettiTable::from_entries(pairs.iter().copied())
    }

    #[test]
    fn principal_quadric() {
        let r = Ring::new(3, PrimeField::default()).unwrap();
        let i = Ideal::new(r, [Polynomial::parse(r, "v1*v2 - v3^2").unwrap()]).unwrap();
        let t = minimal_resolution(&i, ResolutionOptions::default()).unwrap();
        assert_eq!(t, table(&[((0, 0), 1), ((1, 2), 1)]));
        assert_eq!(t.regularity().unwrap(), Regularity::Finite(1));
    }

    #[test]
    fn path_three_is_complete_intersection() {
        let t = minimal_resolution(&bei(&Graph::path(3).unwrap()), Default::default()).unwrap();
        assert_eq!(t, table(&[((0, 0), 1), ((1, 2), 2), ((2, 4), 1)]));
    }

    #[test]
    fn triangle_has_linear_resolution() {
        let t = minimal_resolution(&bei(&Graph::complete(3).unwrap()), Default::default()).unwrap();
        assert_eq!(t, table(&[((0, 0), 1), ((1, 2), 3), ((2, 3), 2)]));
        assert_eq!(t.regularity().unwrap(), Regularity::Finite(1));
    }

    #[test]
    fn koszul_complex_on_variables() {
        let r = Ring::new(4, PrimeField::default()).unwrap();
        let i = Ideal::variables(r, &[0, 1, 2, 3]);
        let t = minimal_resolution(&i, Default::default()).unwrap();
        let binom = [1, 4, 6, 4, 1];
        for (k, &b) in binom.iter().enumerate() {
            assert_eq!(t.get(k, k as u32), b);
        }
        assert_eq!(t.regularity().unwrap(), Regularity::Finite(0));
    }

    #[test]
    fn unit_and_zero_ideals() {
        let r = Ring::new(2, PrimeField::default()).unwrap();
        let unit = minimal_resolution(&Ideal::unit(r), Default::default()).unwrap();
        assert_eq!(unit.regularity().unwrap(), Regularity::NegInfinity);
        let zero = minimal_resolution(&Ideal::zero(r), Default::default()).unwrap();
        assert_eq!(zero, table(&[((0, 0), 1)]));
        assert!(Regularity::NegInfinity < Regularity::Finite(-5));
    }

    #[test]
    fn regularity_of_small_families() {
        for n in 3..=5 {
            let reg = regularity(&bei(&Graph::path(n).unwrap())).unwrap();
            assert_eq!(reg, Regularity::Finite(n as i32 - 1), "path {n}");
        }
        assert_eq!(regularity(&bei(&Graph::cycle(5).unwrap())).unwrap(), Regularity::Finite(3));
        assert_eq!(regularity(&bei(&Graph::star(3).unwrap())).unwrap(), Regularity::Finite(2));
    }

    #[test]
    fn non_homogeneous_rejected() {
        let r = Ring::new(2, PrimeField::default()).unwrap();
        let i = Ideal::new(r, [Polynomial::parse(r, "v1 + v1*v2").unwrap()]).unwrap();
        assert!(matches!(
            minimal_resolution(&i, Default::default()),
            Err(Error::NotHomogeneous)
        ));
    }

    #[test]
    fn degree_bound_truncates() {
        let i = bei(&Graph::path(4).unwrap());
        let full = minimal_resolution(&i, Default::default()).unwrap();
        assert_eq!(full.regularity().unwrap(), Regularity::Finite(3));
        // degrees are capped at hom_bound + deg_bound = 3, and β_{2,4} is cut
        let opts = ResolutionOptions {
            hom_bound: Some(2),
            deg_bound: Some(1),
            ..Default::default()
        };
        let cut = minimal_resolution(&i, opts).unwrap();
        assert!(matches!(cut.regularity(), Err(Error::BudgetExhausted(_))));
        // the known rows agree with the full table
        for ((a, b), v) in full.entries() {
            if b as i64 - a as i64 <= 1 && a <= 2 {
                assert_eq!(cut.get(a, b), v);
            }
        }
    }

    #[test]
    fn truncated_tables_agree_where_known() {
        // squares of small BEIs, where constant syzygy entries are common
        for g in [Graph::cycle(4).unwrap(), Graph::star(3).unwrap(), Graph::g1(4).unwrap()] {
            let i = bei(&g).power(2).unwrap();
            let full = minimal_resolution(&i, Default::default()).unwrap();
            for m in 0..4 {
                for hom in [2, 3, 8] {
                    let opts = ResolutionOptions {
                        hom_bound: Some(hom),
                        deg_bound: Some(m),
                        ..Default::default()
                    };
                    let cut = minimal_resolution(&i, opts).unwrap();
                    for a in 0..=hom {
                        for b in a as u32..=a as u32 + m {
                            assert_eq!(cut.get(a, b), full.get(a, b), "{g:?} m={m} hom={hom} ({a},{b})");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn display_layout() {
        let t = minimal_resolution(&bei(&Graph::path(3).unwrap()), Default::default()).unwrap();
        let s = t.to_string();
        assert!(s.contains("0: 1 . ."), "{s}");
        assert!(s.contains("1: . 2 ."), "{s}");
        assert!(s.contains("2: . . 1"), "{s}");
    }

    #[test]
    fn serde_round_trip() {
        let t = minimal_resolution(&bei(&Graph::complete(3).unwrap()), Default::default()).unwrap();
        let js = serde_json::to_string(&t).unwrap();
        let back: BettiTable = serde_json::from_str(&js).unwrap();
        assert_eq!(t, back);
        let r: Regularity = serde_json::from_str("null").unwrap();
        assert_eq!(r, Regularity::NegInfinity);
    }
}
