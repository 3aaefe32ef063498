//! Named budget profiles and the full verification matrix.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::bei::{verify_theorem, ComputeConfig, Family, Instance, Theorem, TheoremReport};
use crate::error::{Error, Result};
use crate::graph::{graphs_up_to_isomorphism, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Budget {
    /// small sweep for continuous integration
    Ci,
    /// the acceptance ranges
    #[default]
    Laptop,
    /// larger graphs and a third power
    Overnight,
}

impl FromStr for Budget {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ci" => Ok(Budget::Ci),
            "laptop" => Ok(Budget::Laptop),
            "overnight" => Ok(Budget::Overnight),
            other => Err(Error::InvalidParameter(format!(
                "unknown budget `{other}` (laptop, ci, overnight)"
            ))),
        }
    }
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Budget::Ci => "ci",
            Budget::Laptop => "laptop",
            Budget::Overnight => "overnight",
        })
    }
}

impl Budget {
    pub fn max_frame(self) -> usize {
        match self {
            Budget::Ci => 500_000,
            Budget::Laptop => 3_000_000,
            Budget::Overnight => 20_000_000,
        }
    }

    pub fn config(self, prime: u32) -> ComputeConfig {
        ComputeConfig {
            prime,
            max_frame: self.max_frame(),
            deg_bound: None,
        }
    }

    /// Largest power swept.
    pub fn max_s(self) -> u32 {
        match self {
            Budget::Overnight => 3,
            _ => 2,
        }
    }

    /// Vertex caps: (trees and unicyclic graphs, all connected graphs).
    fn caps(self) -> (usize, usize) {
        match self {
            Budget::Ci => (6, 4),
            Budget::Laptop => (7, 5),
            Budget::Overnight => (7, 5),
        }
    }
}

fn custom(g: Graph) -> Family {
    Family::Custom(g)
}

fn connected(lo: usize, hi: usize) -> Vec<Graph> {
    (lo..=hi)
        .flat_map(|n| graphs_up_to_isomorphism(n, Graph::is_connected))
        .collect()
}

/// Every `(statement, instance)` pair of the sweep, in a fixed order.
pub fn matrix(budget: Budget) -> Vec<(Theorem, Instance)> {
    let (tree_cap, conn_cap) = budget.caps();
    let top = budget.max_s();
    let mut out = Vec::new();
    let mut push = |t: Theorem, f: Family, s: u32| out.push((t, Instance::new(f, s)));

    for s in 1..=top {
        let n_hi = match s {
            1 | 2 => 6,
            _ => 4,
        };
        for n in 3..=n_hi {
            push(Theorem::Path, Family::Path { n }, s);
        }
        for n in 3..=4 {
            push(Theorem::Complete, Family::Complete { n }, s);
            push(Theorem::ConcaInitial, Family::Complete { n }, s);
        }
        for n in 3..=5 {
            push(Theorem::Star, Family::Star { n }, s);
        }
        for n in 3..=if s == 1 { 6 } else { 5 } {
            push(Theorem::Cycle, Family::Cycle { n }, s);
        }
    }
    for m in 4..=7 {
        push(Theorem::G1, Family::G1 { m }, 1);
    }
    for m in 6..=7 {
        push(Theorem::G2, Family::G2 { m }, 1);
    }
    for n in 3..=5 {
        for m in 3..=4 {
            push(Theorem::CliqueSum, Family::CliqueSum { n, m }, 1);
        }
    }
    for n in 4..=tree_cap {
        for g in graphs_up_to_isomorphism(n, |g| {
            let c = g.classify();
            c.t_type || c.h_type
        }) {
            let cat = g.classify().caterpillar;
            for s in 1..=top {
                push(Theorem::AciTree, custom(g.clone()), s);
                if cat {
                    push(Theorem::Caterpillar, custom(g.clone()), s);
                }
            }
        }
        for g in graphs_up_to_isomorphism(n, |g| {
            let c = g.classify();
            (c.balloon || c.g2_based) && g.girth().unwrap_or(0) >= 4
        }) {
            let balloon = g.classify().balloon;
            for s in 1..=top {
                push(Theorem::Unicyclic, custom(g.clone()), s);
                if balloon {
                    push(Theorem::Balloon, custom(g.clone()), s);
                }
            }
        }
    }
    for g in connected(2, conn_cap) {
        if g.n() >= 3 {
            push(Theorem::Ohtani, custom(g.clone()), 1);
        }
        for s in 1..=2 {
            push(Theorem::LowerBound, custom(g.clone()), s);
            push(Theorem::Monotonicity, custom(g.clone()), s);
            if g.n() >= 3 {
                push(Theorem::Contraction, custom(g.clone()), s);
            }
        }
    }
    for n in 4..=5 {
        push(Theorem::EdgeColon, Family::Cycle { n }, 1);
    }
    out
}

/// One cell of a sweep: a report, or the error that stopped it.
pub type CellResult = std::result::Result<TheoremReport, (Theorem, Instance, Error)>;

/// Runs cells on up to `workers` threads; results come back in input order.
pub fn run_cells(cells: &[(Theorem, Instance)], cfg: &ComputeConfig, workers: usize) -> Vec<CellResult> {
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<CellResult>>> = cells.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..workers.max(1).min(cells.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some((t, inst)) = cells.get(i) else { break };
                let r = verify_theorem(*t, inst, cfg).map_err(|e| (*t, inst.clone(), e));
                *slots[i].lock().expect("no poisoning") = Some(r);
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().expect("no poisoning").expect("every cell ran"))
        .collect()
}

/// Instances for one statement from command-line style ranges. Statements
/// about specific families default to that family; the structural and
/// tree/unicyclic statements sweep all matching graphs when no family is
/// given.
pub fn instances_for(
    thm: Theorem,
    family: Option<&str>,
    ns: &[usize],
    ms: &[usize],
    ss: &[u32],
) -> Result<Vec<Instance>> {
    let default_family = match thm {
        Theorem::Path => Some("path"),
        Theorem::Complete | Theorem::ConcaInitial => Some("complete"),
        Theorem::Star => Some("star"),
        Theorem::Cycle | Theorem::EdgeColon => Some("cycle"),
        Theorem::G1 => Some("g1"),
        Theorem::G2 => Some("g2"),
        Theorem::CliqueSum => Some("clique-sum"),
        _ => None,
    };
    let mut out = Vec::new();
    match family.or(default_family) {
        Some(name) => {
            let ns: Vec<Option<usize>> = if ns.is_empty() { vec![None] } else { ns.iter().map(|&n| Some(n)).collect() };
            let ms: Vec<Option<usize>> = if ms.is_empty() { vec![None] } else { ms.iter().map(|&m| Some(m)).collect() };
            for &n in &ns {
                for &m in &ms {
                    let f = Family::from_name(name, n, m)?;
                    for &s in ss {
                        out.push(Instance::new(f.clone(), s));
                    }
                }
            }
        }
        None => {
            if ns.is_empty() {
                return Err(Error::InvalidParameter(format!(
                    "{} needs --family, --graph or a vertex range --n",
                    thm.id()
                )));
            }
            for &n in ns {
                if n > 7 {
                    return Err(Error::InvalidParameter("graph sweeps are limited to n <= 7".into()));
                }
                let keep = |g: &Graph| -> bool {
                    let c = g.classify();
                    match thm {
                        Theorem::AciTree => c.t_type || c.h_type,
                        Theorem::Caterpillar => (c.t_type || c.h_type) && c.caterpillar,
                        Theorem::Unicyclic => (c.balloon || c.g2_based) && g.girth().unwrap_or(0) >= 4,
                        Theorem::Balloon => c.balloon && g.girth().unwrap_or(0) >= 4,
                        Theorem::Ohtani => g.is_connected() && g.n() >= 3,
                        _ => g.is_connected(),
                    }
                };
                for g in graphs_up_to_isomorphism(n, keep) {
                    for &s in ss {
                        out.push(Instance::new(Family::Custom(g.clone()), s));
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budgets_parse() {
        assert_eq!("ci".parse::<Budget>().unwrap(), Budget::Ci);
        assert!("huge".parse::<Budget>().is_err());
        assert_eq!(Budget::default().to_string(), "laptop");
    }

    #[test]
    fn ci_matrix_is_well_formed() {
        let m = matrix(Budget::Ci);
        assert!(m.iter().any(|(t, _)| *t == Theorem::AciTree));
        assert!(m.iter().all(|(_, i)| i.s >= 1));
        // every cell satisfies its statement's hypotheses
        let cfg = Budget::Ci.config(crate::field::DEFAULT_PRIME);
        let cells: Vec<_> = m
            .into_iter()
            .filter(|(t, _)| matches!(t, Theorem::Path | Theorem::Star | Theorem::G2))
            .collect();
        for r in run_cells(&cells, &cfg, 4) {
            let rep = r.map_err(|(t, i, e)| format!("{t} {i:?}: {e}")).unwrap();
            assert!(!rep.verdict.is_violation(), "{rep:?}");
        }
    }

    #[test]
    fn run_order_is_input_order() {
        let cells: Vec<_> = (3..=6)
            .map(|n| (Theorem::Path, Instance::new(Family::Path { n }, 1)))
            .collect();
        let out = run_cells(&cells, &ComputeConfig::default(), 3);
        let computed: Vec<i64> = out.into_iter().map(|r| r.unwrap().computed).collect();
        assert_eq!(computed, vec![2, 3, 4, 5]);
    }

    #[test]
    fn sweeps_from_ranges() {
        let v = instances_for(Theorem::Cycle, None, &[3, 4], &[], &[1, 2]).unwrap();
        assert_eq!(v.len(), 4);
        let v = instances_for(Theorem::AciTree, None, &[5], &[], &[1]).unwrap();
        assert!(v.iter().all(|i| matches!(i.family, Family::Custom(_))));
        assert!(!v.is_empty());
        assert!(instances_for(Theorem::Ohtani, None, &[], &[], &[1]).is_err());
    }
}
