//! Binomial edge ideals `J_G = (x_i y_j - x_j y_i : {i,j} ∈ E(G))` and checks of
//! the regularity formulas and structural identities for their powers.
//!
//! Ring layout: `x_1..x_n, y_1..y_n` (variable `i-1` is `x_i`, `n+i-1` is `y_i`).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{PrimeField, DEFAULT_PRIME};
use crate::graph::{canonical_form, Graph};
use crate::ideal::Ideal;
use crate::monomial::MonomialOrder;
use crate::polynomial::{Polynomial, Ring};
use crate::resolution::{minimal_resolution, BettiTable, Regularity, ResolutionOptions};

/// `f_{ij} = x_i y_j - x_j y_i`.
pub fn binomial(ring: Ring, i: usize, j: usize) -> Polynomial {
    let a = Polynomial::var(ring, ring.x(i)) * Polynomial::var(ring, ring.y(j));
    let b = Polynomial::var(ring, ring.x(j)) * Polynomial::var(ring, ring.y(i));
    a - b
}

#[derive(Clone, Debug)]
pub struct BinomialEdgeIdeal {
    graph: Graph,
    ideal: Ideal,
}

/// `J_G` in `K[x_1..x_n, y_1..y_n]`, generators in edge order.
pub fn build_bei(graph: &Graph, field: PrimeField) -> Result<BinomialEdgeIdeal> {
    let ring = Ring::for_graph(graph.n(), field)?;
    let ideal = Ideal::new(
        ring,
        graph.edges().iter().map(|&(i, j)| binomial(ring, i, j)),
    )?;
    Ok(BinomialEdgeIdeal {
        graph: graph.clone(),
        ideal,
    })
}

impl BinomialEdgeIdeal {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn ring(&self) -> Ring {
        self.ideal.ring()
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn power(&self, s: u32) -> Result<Ideal> {
        self.ideal.power(s)
    }
}

/// Prime, frame cap and the `j - i` truncation for resolutions of `J_G^s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComputeConfig {
    pub prime: u32,
    pub max_frame: usize,
    /// Cap on `j - i`; `None` means `2s + n`.
    pub deg_bound: Option<u32>,
}

impl Default for ComputeConfig {
    fn default() -> Self {
        ComputeConfig {
            prime: DEFAULT_PRIME,
            max_frame: 3_000_000,
            deg_bound: None,
        }
    }
}

impl ComputeConfig {
    pub fn with_prime(self, prime: u32) -> Self {
        ComputeConfig { prime, ..self }
    }

    pub fn field(&self) -> Result<PrimeField> {
        PrimeField::new(self.prime)
    }

    pub fn resolution_options(&self, n: usize, s: u32) -> ResolutionOptions {
        ResolutionOptions {
            hom_bound: None,
            deg_bound: Some(self.deg_bound.unwrap_or(2 * s + n as u32)),
            max_frame: self.max_frame,
        }
    }
}

/// Betti table of `S/J_G^s`.
pub fn betti_power(graph: &Graph, s: u32, cfg: &ComputeConfig) -> Result<BettiTable> {
    let bei = build_bei(graph, cfg.field()?)?;
    let ideal = bei.power(s)?;
    minimal_resolution(&ideal, cfg.resolution_options(graph.n(), s))
}

/// `reg(S/J_G^s)`.
pub fn reg_power(graph: &Graph, s: u32, cfg: &ComputeConfig) -> Result<Regularity> {
    betti_power(graph, s, cfg)?.regularity()
}

fn finite(r: Regularity) -> Result<i64> {
    r.value()
        .map(i64::from)
        .ok_or_else(|| Error::InvalidParameter("regularity of the zero module".into()))
}

/// Named graph families with their parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    /// `K_{1,n}` on `n + 1` vertices
    Star { n: usize },
    G1 { m: usize },
    G2 { m: usize },
    Balloon { m: usize, tail: usize },
    G2Based { m: usize, a: usize, b: usize },
    TType { p: usize, i: usize, q: usize },
    HType { p: usize, i: usize, q: usize, j: usize },
    /// `C_n` and `K_m` glued along an edge
    CliqueSum { n: usize, m: usize },
    Custom(Graph),
}

impl Family {
    pub fn graph(&self) -> Result<Graph> {
        match *self {
            Family::Path { n } => Graph::path(n),
            Family::Cycle { n } => Graph::cycle(n),
            Family::Complete { n } => Graph::complete(n),
            Family::Star { n } => Graph::star(n),
            Family::G1 { m } => Graph::g1(m),
            Family::G2 { m } => Graph::g2(m),
            Family::Balloon { m, tail } => Graph::balloon(m, tail),
            Family::G2Based { m, a, b } => Graph::g2_based(m, a, b),
            Family::TType { p, i, q } => Graph::t_type(p, i, q),
            Family::HType { p, i, q, j } => Graph::h_type(p, i, q, j),
            Family::CliqueSum { n, m } => Graph::cycle_clique_sum(n, m),
            Family::Custom(ref g) => Ok(g.clone()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Path { .. } => "path",
            Family::Cycle { .. } => "cycle",
            Family::Complete { .. } => "complete",
            Family::Star { .. } => "star",
            Family::G1 { .. } => "g1",
            Family::G2 { .. } => "g2",
            Family::Balloon { .. } => "balloon",
            Family::G2Based { .. } => "g2-based",
            Family::TType { .. } => "t-type",
            Family::HType { .. } => "h-type",
            Family::CliqueSum { .. } => "clique-sum",
            Family::Custom(_) => "graph",
        }
    }

    /// Family parameters as JSON fields.
    pub fn params(&self) -> BTreeMap<String, Value> {
        let mut p = BTreeMap::new();
        p.insert("family".to_string(), json!(self.name()));
        let mut put = |k: &str, v: usize| {
            p.insert(k.to_string(), json!(v));
        };
        match *self {
            Family::Path { n } | Family::Cycle { n } | Family::Complete { n } | Family::Star { n } => {
                put("n", n)
            }
            Family::G1 { m } | Family::G2 { m } => put("m", m),
            Family::Balloon { m, tail } => {
                put("m", m);
                put("tail", tail);
            }
            Family::G2Based { m, a, b } => {
                put("m", m);
                put("a", a);
                put("b", b);
            }
            Family::TType { p: pp, i, q } => {
                put("p", pp);
                put("i", i);
                put("q", q);
            }
            Family::HType { p: pp, i, q, j } => {
                put("p", pp);
                put("i", i);
                put("q", q);
                put("j", j);
            }
            Family::CliqueSum { n, m } => {
                put("n", n);
                put("m", m);
            }
            Family::Custom(ref g) => {
                p.insert("n".to_string(), json!(g.n()));
                p.insert(
                    "edges".to_string(),
                    json!(g.edges().iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>()),
                );
            }
        }
        p
    }

    /// Builds a family from a name and the `n`/`m` parameters used on the
    /// command line.
    pub fn from_name(name: &str, n: Option<usize>, m: Option<usize>) -> Result<Family> {
        let need = |v: Option<usize>, what: &str| {
            v.ok_or_else(|| Error::InvalidParameter(format!("family {name} needs --{what}")))
        };
        Ok(match name {
            "path" => Family::Path { n: need(n, "n")? },
            "cycle" => Family::Cycle { n: need(n, "n")? },
            "complete" => Family::Complete { n: need(n, "n")? },
            "star" => Family::Star { n: need(n, "n")? },
            "g1" => Family::G1 {
                m: need(m.or(n), "m")?,
            },
            "g2" => Family::G2 {
                m: need(m.or(n), "m")?,
            },
            "clique-sum" => Family::CliqueSum {
                n: need(n, "n")?,
                m: need(m, "m")?,
            },
            // G1(m) plus a tail, n vertices in total
            "balloon" => {
                let m = need(m, "m")?;
                let n = n.unwrap_or(m);
                if n < m {
                    return Err(Error::InvalidParameter("balloon needs n >= m".into()));
                }
                Family::Balloon { m, tail: n - m }
            }
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown family {other} (path, cycle, complete, star, g1, g2, clique-sum, balloon)"
                )))
            }
        })
    }
}

/// Every checkable statement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    Path,
    Complete,
    Star,
    Cycle,
    AciTree,
    Caterpillar,
    LowerBound,
    CliqueSum,
    G1,
    G2,
    Unicyclic,
    Balloon,
    Monotonicity,
    Contraction,
    Ohtani,
    ConcaInitial,
    EdgeColon,
}

impl Theorem {
    pub const ALL: [Theorem; 17] = [
        Theorem::Path,
        Theorem::Complete,
        Theorem::Star,
        Theorem::Cycle,
        Theorem::AciTree,
        Theorem::Caterpillar,
        Theorem::LowerBound,
        Theorem::CliqueSum,
        Theorem::G1,
        Theorem::G2,
        Theorem::Unicyclic,
        Theorem::Balloon,
        Theorem::Monotonicity,
        Theorem::Contraction,
        Theorem::Ohtani,
        Theorem::ConcaInitial,
        Theorem::EdgeColon,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::Path => "path",
            Theorem::Complete => "complete",
            Theorem::Star => "star",
            Theorem::Cycle => "cycle",
            Theorem::AciTree => "aci-tree",
            Theorem::Caterpillar => "caterpillar",
            Theorem::LowerBound => "lower-bound",
            Theorem::CliqueSum => "clique-sum",
            Theorem::G1 => "g1",
            Theorem::G2 => "g2",
            Theorem::Unicyclic => "unicyclic",
            Theorem::Balloon => "balloon",
            Theorem::Monotonicity => "monotonicity",
            Theorem::Contraction => "contraction",
            Theorem::Ohtani => "ohtani",
            Theorem::ConcaInitial => "conca-initial",
            Theorem::EdgeColon => "edge-colon",
        }
    }

    /// The statement being checked, for human-readable output.
    pub fn statement(self) -> &'static str {
        match self {
            Theorem::Path => "reg(S/J_{P_n}^s) = 2s + n - 3",
            Theorem::Complete => "reg(S/J_{K_n}^s) = 2s - 1",
            Theorem::Star => "reg(S/J_{K_{1,n}}^s) = 2s for n >= 3",
            Theorem::Cycle => "reg(S/J_{C_n}^s) = 2s + n - 4",
            Theorem::AciTree => "2s + iv - 2 <= reg(S/J_G^s) <= 2s + iv - 1 for T/H-type trees",
            Theorem::Caterpillar => "reg(S/J_G^s) = 2s + iv - 1 for caterpillar T/H-type trees",
            Theorem::LowerBound => "reg(S/J_G^s) >= 2s + ell(G) - 2 for connected G",
            Theorem::CliqueSum => "reg(S/J_G) = n - 1 for C_n glued to K_m along an edge",
            Theorem::G1 => "reg(S/J_{G1(m)}) = m - 2 for m >= 4",
            Theorem::G2 => "reg(S/J_{G2(m)}) = m - 3 for m >= 6",
            Theorem::Unicyclic => {
                "2s + n - 5 <= reg(S/J_G^s) <= 2s + n - 4 for G1/G2-based unicyclic G of girth >= 4"
            }
            Theorem::Balloon => "reg(S/J_G^s) = 2s + n - 4 for balloon graphs of girth >= 4",
            Theorem::Monotonicity => "beta_ij(S/J_H^s) <= beta_ij(S/J_G^s) for induced H",
            Theorem::Contraction => "J_H^s = J_G^s ∩ S_H for induced H",
            Theorem::Ohtani => "J_G = (J_{G\\v} + (x_v, y_v)) ∩ J_{G_v} for non-simplicial v",
            Theorem::ConcaInitial => "ini_lex(J_{K_n})^s = ini_lex(J_{K_n}^s) and nu(H) = 1",
            Theorem::EdgeColon => "(J_{G\\e} : f_e) + J_G = J_{(G\\e)_e ∪ {e}}",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Theorem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .iter()
            .copied()
            .find(|t| t.id() == s)
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expected {
    Exact(i64),
    Bounds { lower: Option<i64>, upper: Option<i64> },
}

impl Serialize for Expected {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            Expected::Exact(v) => json!({ "exact": v }).serialize(s),
            Expected::Bounds { lower, upper } => json!({ "lower": lower, "upper": upper }).serialize(s),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "match")]
    Match,
    #[serde(rename = "within-bounds")]
    WithinBounds,
    #[serde(rename = "VIOLATION")]
    Violation,
}

impl Verdict {
    pub fn of(computed: i64, expected: Expected) -> Verdict {
        match expected {
            Expected::Exact(v) if v == computed => Verdict::Match,
            Expected::Exact(_) => Verdict::Violation,
            Expected::Bounds { lower, upper } => {
                if lower.is_some_and(|l| computed < l) || upper.is_some_and(|u| computed > u) {
                    Verdict::Violation
                } else {
                    Verdict::WithinBounds
                }
            }
        }
    }

    pub fn is_violation(self) -> bool {
        self == Verdict::Violation
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Match => "match",
            Verdict::WithinBounds => "within-bounds",
            Verdict::Violation => "VIOLATION",
        })
    }
}

/// Which end of a two-sided bound the computed value sits at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Attained {
    Lower,
    Upper,
    Interior,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub params: BTreeMap<String, Value>,
    /// regularity, or the number of instances satisfying an identity
    pub computed: i64,
    pub expected: Expected,
    pub verdict: Verdict,
    pub prime: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attained: Option<Attained>,
    /// wall time; the only nondeterministic field
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ms: Option<u64>,
}

impl TheoremReport {
    pub fn without_timing(mut self) -> Self {
        self.ms = None;
        self
    }
}

/// A graph (named family or explicit) and a power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub family: Family,
    pub s: u32,
}

impl Instance {
    pub fn new(family: Family, s: u32) -> Self {
        Instance { family, s }
    }
}

fn hypothesis(thm: Theorem, msg: &str) -> Error {
    Error::Hypothesis(format!("{}: {msg}", thm.id()))
}

fn is_path_graph(g: &Graph) -> bool {
    g.is_tree() && (1..=g.n()).all(|v| g.degree(v) <= 2)
}

fn is_cycle_graph(g: &Graph) -> bool {
    g.n() >= 3 && g.is_connected() && (1..=g.n()).all(|v| g.degree(v) == 2)
}

fn is_complete_graph(g: &Graph) -> bool {
    g.edges().len() == g.n() * (g.n() - 1) / 2
}

fn is_star_graph(g: &Graph) -> bool {
    g.is_tree() && (1..=g.n()).any(|v| g.degree(v) == g.n() - 1)
}

/// Checks one statement on one instance.
pub fn verify_theorem(thm: Theorem, inst: &Instance, cfg: &ComputeConfig) -> Result<TheoremReport> {
    let start = Instant::now();
    let g = inst.family.graph()?;
    let s = inst.s;
    if s == 0 {
        return Err(Error::InvalidParameter("s must be at least 1".into()));
    }
    let n = g.n() as i64;
    let si = s as i64;
    let mut params = inst.family.params();
    params.insert("s".to_string(), json!(s));
    if !params.contains_key("n") {
        params.insert("n".to_string(), json!(g.n()));
    }
    let reg = || -> Result<i64> { finite(reg_power(&g, s, cfg)?) };
    let s_is_one = || {
        if s != 1 {
            Err(hypothesis(thm, "stated for s = 1 only"))
        } else {
            Ok(())
        }
    };
    let (computed, expected) = match thm {
        Theorem::Path => {
            if !is_path_graph(&g) || g.n() < 2 {
                return Err(hypothesis(thm, "graph is not a path on >= 2 vertices"));
            }
            (reg()?, Expected::Exact(2 * si + n - 3))
        }
        Theorem::Complete => {
            if !is_complete_graph(&g) || g.n() < 2 {
                return Err(hypothesis(thm, "graph is not complete on >= 2 vertices"));
            }
            (reg()?, Expected::Exact(2 * si - 1))
        }
        Theorem::Star => {
            if !is_star_graph(&g) || g.n() < 4 {
                return Err(hypothesis(thm, "graph is not a star K_{1,n} with n >= 3"));
            }
            (reg()?, Expected::Exact(2 * si))
        }
        Theorem::Cycle => {
            if !is_cycle_graph(&g) {
                return Err(hypothesis(thm, "graph is not a cycle"));
            }
            (reg()?, Expected::Exact(2 * si + n - 4))
        }
        Theorem::AciTree => {
            let c = g.classify();
            if !(c.t_type || c.h_type) {
                return Err(hypothesis(thm, "tree is neither T-type nor H-type"));
            }
            let iv = g.internal_vertices().len() as i64;
            (
                reg()?,
                Expected::Bounds {
                    lower: Some(2 * si + iv - 2),
                    upper: Some(2 * si + iv - 1),
                },
            )
        }
        Theorem::Caterpillar => {
            let c = g.classify();
            if !((c.t_type || c.h_type) && c.caterpillar) {
                return Err(hypothesis(thm, "not a caterpillar T-type or H-type tree"));
            }
            let iv = g.internal_vertices().len() as i64;
            (reg()?, Expected::Exact(2 * si + iv - 1))
        }
        Theorem::LowerBound => {
            if !g.is_connected() {
                return Err(hypothesis(thm, "graph is not connected"));
            }
            let ell = g.longest_induced_path() as i64;
            (
                reg()?,
                Expected::Bounds {
                    lower: Some(2 * si + ell - 2),
                    upper: None,
                },
            )
        }
        Theorem::CliqueSum => {
            let Family::CliqueSum { n: cn, .. } = inst.family else {
                return Err(hypothesis(thm, "needs the clique-sum family"));
            };
            s_is_one()?;
            (reg()?, Expected::Exact(cn as i64 - 1))
        }
        Theorem::G1 => {
            let Family::G1 { m } = inst.family else {
                return Err(hypothesis(thm, "needs the g1 family"));
            };
            s_is_one()?;
            (reg()?, Expected::Exact(m as i64 - 2))
        }
        Theorem::G2 => {
            let Family::G2 { m } = inst.family else {
                return Err(hypothesis(thm, "needs the g2 family"));
            };
            if m < 6 {
                return Err(hypothesis(thm, "stated for m >= 6"));
            }
            s_is_one()?;
            (reg()?, Expected::Exact(m as i64 - 3))
        }
        Theorem::Unicyclic => {
            let c = g.classify();
            if !(c.balloon || c.g2_based) || g.girth().unwrap_or(0) < 4 {
                return Err(hypothesis(thm, "not a G1/G2-based unicyclic graph of girth >= 4"));
            }
            (
                reg()?,
                Expected::Bounds {
                    lower: Some(2 * si + n - 5),
                    upper: Some(2 * si + n - 4),
                },
            )
        }
        Theorem::Balloon => {
            let c = g.classify();
            if !c.balloon || g.girth().unwrap_or(0) < 4 {
                return Err(hypothesis(thm, "not a balloon graph of girth >= 4"));
            }
            (reg()?, Expected::Exact(2 * si + n - 4))
        }
        Theorem::Monotonicity => {
            let (ok, total) = check_monotonicity(&g, s, cfg, &mut HashMap::new())?;
            (ok, Expected::Exact(total))
        }
        Theorem::Contraction => {
            let (ok, total) = check_contraction(&g, s, cfg)?;
            (ok, Expected::Exact(total))
        }
        Theorem::Ohtani => {
            s_is_one()?;
            let (ok, total) = check_ohtani(&g, cfg)?;
            (ok, Expected::Exact(total))
        }
        Theorem::ConcaInitial => {
            if !is_complete_graph(&g) {
                return Err(hypothesis(thm, "graph is not complete"));
            }
            let (ok, total) = check_conca_initial(&g, s, cfg)?;
            (ok, Expected::Exact(total))
        }
        Theorem::EdgeColon => {
            s_is_one()?;
            let (ok, total) = check_edge_colon(&g, cfg)?;
            (ok, Expected::Exact(total))
        }
    };
    let verdict = Verdict::of(computed, expected);
    let attained = match expected {
        Expected::Bounds {
            lower: Some(l),
            upper: Some(u),
        } if !verdict.is_violation() => Some(if computed == l {
            Attained::Lower
        } else if computed == u {
            Attained::Upper
        } else {
            Attained::Interior
        }),
        _ => None,
    };
    Ok(TheoremReport {
        theorem: thm.id().to_string(),
        params,
        computed,
        expected,
        verdict,
        prime: cfg.prime,
        attained,
        ms: Some(start.elapsed().as_millis() as u64),
    })
}

/// Nonempty proper vertex subsets of `[n]` as sorted lists.
fn proper_subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..(1u32 << n) - 1).map(move |mask| (1..=n).filter(|v| mask >> (v - 1) & 1 == 1).collect())
}

/// Betti tables of `S/J_H^s` keyed by isomorphism class (they are invariant).
pub type BettiCache = HashMap<(Graph, u32), BettiTable>;

/// Betti table of `S/J_G^s` via an isomorphism-class cache.
pub fn betti_power_cached(
    g: &Graph,
    s: u32,
    cfg: &ComputeConfig,
    cache: &mut BettiCache,
) -> Result<BettiTable> {
    let key = (canonical_form(g), s);
    if let Some(t) = cache.get(&key) {
        return Ok(t.clone());
    }
    let t = betti_power(&key.0, s, cfg)?;
    cache.insert(key, t.clone());
    Ok(t)
}

/// Counts induced subgraphs `H` with `β(S/J_H^s) ≤ β(S/J_G^s)` entrywise.
pub fn check_monotonicity(
    g: &Graph,
    s: u32,
    cfg: &ComputeConfig,
    cache: &mut BettiCache,
) -> Result<(i64, i64)> {
    let big = betti_power_cached(g, s, cfg, cache)?;
    let (mut ok, mut total) = (0, 0);
    for vs in proper_subsets(g.n()) {
        let h = g.induced_subgraph(&vs)?;
        let small = betti_power_cached(&h, s, cfg, cache)?;
        total += 1;
        if !small.is_complete() || !big.is_complete() {
            return Err(Error::BudgetExhausted("truncated Betti table in monotonicity check".into()));
        }
        if small.first_excess_over(&big).is_none() {
            ok += 1;
        }
    }
    Ok((ok, total))
}

/// Counts vertex sets `A` (at least two vertices) with
/// `J_{G[A]}^s = J_G^s ∩ K[x_a, y_a : a ∈ A]`.
pub fn check_contraction(g: &Graph, s: u32, cfg: &ComputeConfig) -> Result<(i64, i64)> {
    let field = cfg.field()?;
    let bei = build_bei(g, field)?;
    let ring = bei.ring();
    let power = bei.power(s)?;
    let (mut ok, mut total) = (0, 0);
    for vs in proper_subsets(g.n()).filter(|v| v.len() >= 2) {
        let h = g.induced_on_same_labels(&vs)?;
        let jh = build_bei(&h, field)?.ideal().clone();
        let jh_s = if jh.is_zero() { jh } else { jh.power(s)? };
        let outside: Vec<usize> = (1..=g.n())
            .filter(|v| !vs.contains(v))
            .flat_map(|v| [ring.x(v), ring.y(v)])
            .collect();
        let contracted = power.eliminate(&outside)?;
        total += 1;
        if contracted.try_eq(&jh_s)? {
            ok += 1;
        }
    }
    Ok((ok, total))
}

/// Counts non-simplicial `v` with `J_G = (J_{G\v} + (x_v, y_v)) ∩ J_{G_v}`.
pub fn check_ohtani(g: &Graph, cfg: &ComputeConfig) -> Result<(i64, i64)> {
    let field = cfg.field()?;
    let jg = build_bei(g, field)?;
    let ring = jg.ring();
    let (mut ok, mut total) = (0, 0);
    for v in 1..=g.n() {
        if g.is_simplicial(v) {
            continue;
        }
        total += 1;
        let minus = build_bei(&g.isolate_vertex(v)?, field)?;
        let left = minus
            .ideal()
            .sum(&Ideal::variables(ring, &[ring.x(v), ring.y(v)]))?;
        let right = build_bei(&g.complete_neighborhood(v)?, field)?;
        let meet = left.intersect(right.ideal())?;
        if meet.try_eq(jg.ideal())? {
            ok += 1;
        }
    }
    Ok((ok, total))
}

/// Two checks on `K_n`: `ini_lex(J)^s = ini_lex(J^s)`, and the graph of the
/// squarefree quadratic ideal `ini_lex(J)` has induced matching number 1.
pub fn check_conca_initial(g: &Graph, s: u32, cfg: &ComputeConfig) -> Result<(i64, i64)> {
    let bei = build_bei(g, cfg.field()?)?;
    let ini = bei.ideal().initial_ideal(MonomialOrder::Lex);
    let lhs = ini.power(s)?;
    let rhs = bei.power(s)?.initial_ideal(MonomialOrder::Lex);
    let mut ok = i64::from(lhs.try_eq(&rhs)?);
    let h = initial_ideal_graph(&ini)?;
    ok += i64::from(h.induced_matching_number() == 1);
    Ok((ok, 2))
}

/// Graph on the ring variables whose edges are the generators of a squarefree
/// quadratic monomial ideal (variable `k` is vertex `k + 1`).
pub fn initial_ideal_graph(ini: &Ideal) -> Result<Graph> {
    let mut edges = Vec::new();
    for gen in ini.generators() {
        let [(m, _)] = gen.terms() else {
            return Err(Error::InvalidParameter("not a monomial ideal".into()));
        };
        let support: Vec<usize> = m.support().collect();
        if support.len() != 2 || m.degree() != 2 {
            return Err(Error::InvalidParameter("not squarefree quadratic".into()));
        }
        edges.push((support[0] + 1, support[1] + 1));
    }
    Graph::new(ini.ring().nvars(), &edges)
}

/// Counts edges `e` of `G` with `(J_{G\e} : f_e) + J_G = J_{(G\e)_e ∪ {e}}`.
pub fn check_edge_colon(g: &Graph, cfg: &ComputeConfig) -> Result<(i64, i64)> {
    let field = cfg.field()?;
    let jg = build_bei(g, field)?;
    let ring = jg.ring();
    let (mut ok, mut total) = (0, 0);
    for &(u, v) in g.edges() {
        total += 1;
        let minus = g.delete_edge(u, v)?;
        let colon = build_bei(&minus, field)?
            .ideal()
            .colon_element(&binomial(ring, u, v))?;
        let lhs = colon.sum(jg.ideal())?;
        let target = minus.complete_non_edge(u, v)?.add_edge(u, v)?;
        let rhs = build_bei(&target, field)?;
        if lhs.try_eq(rhs.ideal())? {
            ok += 1;
        }
    }
    Ok((ok, total))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbePoint {
    pub s: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reg: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizationProbe {
    pub points: Vec<ProbePoint>,
    /// `reg(s+1) - reg(s)` for consecutive computed values
    pub differences: Vec<i64>,
    /// Smallest `s0` such that the differences are constant from `s0` on,
    /// with at least two differences observed from there.
    pub constant_from: Option<u32>,
}

/// `reg(S/J_G^s)` for `s = 1..=s_max`; budget failures are recorded per `s`.
pub fn stabilization_probe(g: &Graph, s_max: u32, cfg: &ComputeConfig) -> Result<StabilizationProbe> {
    if s_max < 2 {
        return Err(Error::InvalidParameter("s_max must be at least 2".into()));
    }
    let mut points = Vec::new();
    for s in 1..=s_max {
        match reg_power(g, s, cfg).and_then(finite) {
            Ok(r) => points.push(ProbePoint {
                s,
                reg: Some(r),
                error: None,
            }),
            Err(e @ Error::BudgetExhausted(_)) => points.push(ProbePoint {
                s,
                reg: None,
                error: Some(e.to_string()),
            }),
            Err(e) => return Err(e),
        }
    }
    let regs: Vec<i64> = points.iter().map_while(|p| p.reg).collect();
    let differences: Vec<i64> = regs.windows(2).map(|w| w[1] - w[0]).collect();
    let constant_from = (0..differences.len())
        .find(|&k| differences.len() - k >= 2 && differences[k..].iter().all(|&d| d == differences[k]))
        .map(|k| k as u32 + 1);
    Ok(StabilizationProbe {
        points,
        differences,
        constant_from,
    })
}

/// Regularity over two primes; a disagreement is a characteristic anomaly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualPrimeRegularity {
    pub primes: [u32; 2],
    pub values: [i64; 2],
    pub anomaly: bool,
}

pub fn reg_power_dual(g: &Graph, s: u32, cfg: &ComputeConfig, other: u32) -> Result<DualPrimeRegularity> {
    let a = finite(reg_power(g, s, cfg)?)?;
    let b = finite(reg_power(g, s, &cfg.with_prime(other))?)?;
    Ok(DualPrimeRegularity {
        primes: [cfg.prime, other],
        values: [a, b],
        anomaly: a != b,
    })
}

/// `f_{1,n+1}, .., f_{n,n+1}` for the star `K_{1,n}`.
pub fn star_sequence(n: usize, field: PrimeField) -> Result<Vec<Polynomial>> {
    let ring = Ring::for_graph(n + 1, field)?;
    Ok((1..=n).map(|i| binomial(ring, i, n + 1)).collect())
}

/// `f_{1,2}, .., f_{n-1,n}, f_{1,n}` for the cycle `C_n`.
pub fn cycle_sequence(n: usize, field: PrimeField) -> Result<Vec<Polynomial>> {
    if n < 3 {
        return Err(Error::InvalidParameter("C_n needs n >= 3".into()));
    }
    let ring = Ring::for_graph(n, field)?;
    let mut out: Vec<Polynomial> = (1..n).map(|i| binomial(ring, i, i + 1)).collect();
    out.push(binomial(ring, 1, n));
    Ok(out)
}

/// `f_{1,2}, .., f_{n-1,n}` for the path `P_n`.
pub fn path_sequence(n: usize, field: PrimeField) -> Result<Vec<Polynomial>> {
    let ring = Ring::for_graph(n, field)?;
    Ok((1..n).map(|i| binomial(ring, i, i + 1)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> ComputeConfig {
        ComputeConfig::default()
    }

    #[test]
    fn generators() {
        let k = PrimeField::default();
        let p3 = build_bei(&Graph::path(3).unwrap(), k).unwrap();
        let shown: Vec<String> = p3.ideal().generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(shown, vec!["x1*y2 - x2*y1", "x2*y3 - x3*y2"]);
        assert!(build_bei(&Graph::empty(3), k).unwrap().ideal().is_zero());
        assert_eq!(build_bei(&Graph::complete(3).unwrap(), k).unwrap().ideal().generators().len(), 3);
    }

    #[test]
    fn membership_in_path_ideal() {
        let k = PrimeField::default();
        let p3 = build_bei(&Graph::path(3).unwrap(), k).unwrap();
        let r = p3.ring();
        assert!(p3.ideal().contains(&binomial(r, 1, 2)).unwrap());
        assert!(!p3.ideal().contains(&Polynomial::var(r, r.x(1))).unwrap());
        assert!(!p3.ideal().contains(&binomial(r, 1, 3)).unwrap());
    }

    #[test]
    fn small_regularities() {
        let c = cfg();
        assert_eq!(reg_power(&Graph::path(4).unwrap(), 2, &c).unwrap(), Regularity::Finite(5));
        assert_eq!(reg_power(&Graph::cycle(5).unwrap(), 1, &c).unwrap(), Regularity::Finite(3));
        assert_eq!(reg_power(&Graph::star(4).unwrap(), 2, &c).unwrap(), Regularity::Finite(4));
    }

    #[test]
    fn report_json_shape() {
        let rep = verify_theorem(Theorem::Cycle, &Instance::new(Family::Cycle { n: 4 }, 2), &cfg())
            .unwrap()
            .without_timing();
        assert_eq!(rep.computed, 4);
        assert_eq!(rep.verdict, Verdict::Match);
        let v = serde_json::to_value(&rep).unwrap();
        assert_eq!(v["theorem"], "cycle");
        assert_eq!(v["expected"]["exact"], 4);
        assert_eq!(v["verdict"], "match");
        assert_eq!(v["prime"], 32003);
        assert_eq!(v["params"]["n"], 4);
        assert_eq!(v["params"]["s"], 2);
        assert!(v.get("ms").is_none());
    }

    #[test]
    fn verdicts() {
        let b = Expected::Bounds {
            lower: Some(2),
            upper: Some(3),
        };
        assert_eq!(Verdict::of(2, b), Verdict::WithinBounds);
        assert_eq!(Verdict::of(4, b), Verdict::Violation);
        assert_eq!(Verdict::of(3, Expected::Exact(3)), Verdict::Match);
        assert_eq!(Verdict::of(1, Expected::Exact(3)), Verdict::Violation);
        let json = serde_json::to_value(Expected::Bounds { lower: Some(1), upper: None }).unwrap();
        assert_eq!(json, serde_json::json!({"lower": 1, "upper": null}));
    }

    #[test]
    fn theorem_ids_round_trip() {
        for t in Theorem::ALL {
            assert_eq!(t.id().parse::<Theorem>().unwrap(), t);
        }
        assert!(matches!("nope".parse::<Theorem>(), Err(Error::UnknownTheorem(_))));
    }

    #[test]
    fn hypotheses_enforced() {
        let c = cfg();
        let bad = verify_theorem(Theorem::Cycle, &Instance::new(Family::Path { n: 4 }, 1), &c);
        assert!(matches!(bad, Err(Error::Hypothesis(_))));
        let bad = verify_theorem(Theorem::Star, &Instance::new(Family::Star { n: 2 }, 1), &c);
        assert!(matches!(bad, Err(Error::Hypothesis(_))));
    }

    #[test]
    fn g2_six() {
        let rep = verify_theorem(Theorem::G2, &Instance::new(Family::G2 { m: 6 }, 1), &cfg()).unwrap();
        assert_eq!(rep.computed, 3);
        assert_eq!(rep.verdict, Verdict::Match);
    }

    #[test]
    fn ohtani_on_four_cycle() {
        let (ok, total) = check_ohtani(&Graph::cycle(4).unwrap(), &cfg()).unwrap();
        assert_eq!((ok, total), (4, 4));
    }

    #[test]
    fn path_monomial_in_cycle_edge_colon() {
        // x2*x3*f_{14} ∈ J_{P_4}: the colon by the closing edge of C_4 holds a
        // monomial, which no binomial edge ideal contains
        let k = PrimeField::default();
        let p4 = build_bei(&Graph::path(4).unwrap(), k).unwrap();
        let r = p4.ring();
        let m = Polynomial::var(r, r.x(2)) * Polynomial::var(r, r.x(3));
        assert!(p4.ideal().contains(&(&m * &binomial(r, 1, 4))).unwrap());
        let c4 = build_bei(&Graph::cycle(4).unwrap(), k).unwrap();
        assert!(!c4.ideal().contains(&m).unwrap());
        let (ok, total) = check_edge_colon(&Graph::cycle(4).unwrap(), &cfg()).unwrap();
        assert_eq!((ok, total), (0, 4));
    }

    #[test]
    fn edge_colon_on_h_type_tree() {
        // the bridge of an H-type tree: G \ e is two paths, no other u-v path
        let g = Graph::h_type(3, 2, 3, 2).unwrap();
        let (ok, total) = check_edge_colon(&g, &cfg()).unwrap();
        assert_eq!(ok, total);
    }

    #[test]
    fn probe_of_triangle() {
        let p = stabilization_probe(&Graph::complete(3).unwrap(), 3, &cfg()).unwrap();
        let regs: Vec<i64> = p.points.iter().map(|q| q.reg.unwrap()).collect();
        assert_eq!(regs, vec![1, 3, 5]);
        assert_eq!(p.constant_from, Some(1));
    }

    #[test]
    fn sequences_have_expected_generators() {
        let k = PrimeField::default();
        let c = cycle_sequence(4, k).unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(c[3].to_string(), "x1*y4 - x4*y1");
        let s = star_sequence(3, k).unwrap();
        assert_eq!(s[0].to_string(), "x1*y4 - x4*y1");
    }
}
