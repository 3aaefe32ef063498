//! Acceptance suite: one line per criterion, exact integer comparisons.
//!
//! Expected values are written out here as explicit formulas; the library is
//! only used to compute. Run with `cargo test -p beilab --test acceptance`.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use beilab::bei::{
    check_conca_initial, check_contraction, check_edge_colon, check_monotonicity, check_ohtani,
    cycle_sequence, reg_power, star_sequence, stabilization_probe, BettiCache, ComputeConfig,
};
use beilab::graph::graphs_up_to_isomorphism;
use beilab::resolution::koszul_betti_table;
use beilab::sequences::{
    colon_sum_bound, d_sequence_bound, filtration_bound, is_d_sequence, is_quadratic_sequence,
    is_regular_sequence, product_intersection_identity,
};
use beilab::{
    build_bei, minimal_resolution, regularity, Graph, Ideal, Monomial, Polynomial, PosetSequence,
    PrimeField, Regularity, Ring,
};
use rand::{Rng, SeedableRng};

#[derive(Default)]
struct Outcome {
    checks: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn error(&mut self, what: String) {
        self.checks += 1;
        self.failures.push(what);
    }
}

/// Regularity values from criteria 1-4, rechecked over a second prime.
type Recorded = Vec<(String, Graph, u32, i64)>;

fn cfg() -> ComputeConfig {
    ComputeConfig::default()
}

fn reg(g: &Graph, s: u32, c: &ComputeConfig) -> Result<i64, String> {
    match reg_power(g, s, c) {
        Ok(Regularity::Finite(v)) => Ok(v as i64),
        Ok(Regularity::NegInfinity) => Err("zero module".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn exact_family(
    out: &mut Outcome,
    rec: &mut Recorded,
    label: &str,
    cases: &[(Graph, u32, i64)],
) {
    for (g, s, expected) in cases {
        let name = format!("{label}(n={}) s={s}", g.n());
        match reg(g, *s, &cfg()) {
            Ok(v) => {
                out.check(v == *expected, || format!("{name}: computed {v}, expected {expected}"));
                rec.push((name, g.clone(), *s, v));
            }
            Err(e) => out.error(format!("{name}: {e}")),
        }
    }
}

fn criterion_1(rec: &mut Recorded) -> Outcome {
    let mut out = Outcome::default();
    let mut cases = Vec::new();
    for n in 3..=6 {
        for s in 1..=2 {
            cases.push((Graph::path(n).unwrap(), s, 2 * s as i64 + n as i64 - 3));
        }
    }
    for n in 3..=4 {
        cases.push((Graph::path(n).unwrap(), 3, 6 + n as i64 - 3));
    }
    exact_family(&mut out, rec, "P", &cases);
    out
}

fn criterion_2(rec: &mut Recorded) -> Outcome {
    let mut out = Outcome::default();
    let mut cases = Vec::new();
    for n in 3..=4 {
        for s in 1..=2 {
            cases.push((Graph::complete(n).unwrap(), s, 2 * s as i64 - 1));
        }
    }
    exact_family(&mut out, rec, "K", &cases);
    for n in 3..=4 {
        for s in 1..=2 {
            match check_conca_initial(&Graph::complete(n).unwrap(), s, &cfg()) {
                Ok((ok, total)) => out.check(ok == total && total == 2, || {
                    format!("K{n} s={s}: initial-ideal checks {ok}/{total}")
                }),
                Err(e) => out.error(format!("K{n} s={s}: {e}")),
            }
        }
    }
    out
}

fn criterion_3(rec: &mut Recorded) -> Outcome {
    let mut out = Outcome::default();
    let mut cases = Vec::new();
    for n in 3..=5 {
        for s in 1..=2 {
            cases.push((Graph::star(n).unwrap(), s, 2 * s as i64));
        }
    }
    exact_family(&mut out, rec, "K1,", &cases);
    out
}

fn criterion_4(rec: &mut Recorded) -> Outcome {
    let mut out = Outcome::default();
    let mut cases = Vec::new();
    for n in 3..=6 {
        cases.push((Graph::cycle(n).unwrap(), 1, 2 + n as i64 - 4));
    }
    for n in 3..=5 {
        cases.push((Graph::cycle(n).unwrap(), 2, 4 + n as i64 - 4));
    }
    exact_family(&mut out, rec, "C", &cases);
    out
}

fn criterion_5() -> Outcome {
    let mut out = Outcome::default();
    let mut attained: BTreeMap<&str, usize> = BTreeMap::new();
    for n in 4..=7 {
        let trees = graphs_up_to_isomorphism(n, |g| {
            let c = g.classify();
            c.t_type || c.h_type
        });
        for g in trees {
            let iv = g.internal_vertices().len() as i64;
            let caterpillar = g.classify().caterpillar;
            for s in 1..=2u32 {
                let (lo, hi) = (2 * s as i64 + iv - 2, 2 * s as i64 + iv - 1);
                let name = format!("tree {:?} s={s}", g.edges());
                match reg(&g, s, &cfg()) {
                    Ok(v) => {
                        out.check(lo <= v && v <= hi, || format!("{name}: {v} outside [{lo},{hi}]"));
                        if caterpillar {
                            out.check(v == hi, || format!("{name}: caterpillar {v} != {hi}"));
                        }
                        *attained.entry(if v == lo { "lower" } else { "upper" }).or_default() += 1;
                    }
                    Err(e) => out.error(format!("{name}: {e}")),
                }
            }
        }
    }
    out.notes.push(format!("endpoints attained: {attained:?}"));
    out
}

fn criterion_6() -> Outcome {
    let mut out = Outcome::default();
    let mut attained: BTreeMap<&str, usize> = BTreeMap::new();
    for n in 4..=7 {
        let graphs = graphs_up_to_isomorphism(n, |g| {
            let c = g.classify();
            (c.balloon || c.g2_based) && g.girth().unwrap_or(0) >= 4
        });
        for g in graphs {
            let balloon = g.classify().balloon;
            for s in 1..=2u32 {
                let (lo, hi) = (2 * s as i64 + n as i64 - 5, 2 * s as i64 + n as i64 - 4);
                let name = format!("unicyclic {:?} s={s}", g.edges());
                match reg(&g, s, &cfg()) {
                    Ok(v) => {
                        out.check(lo <= v && v <= hi, || format!("{name}: {v} outside [{lo},{hi}]"));
                        if balloon && (5..=6).contains(&n) {
                            out.check(v == hi, || format!("{name}: balloon {v} != {hi}"));
                        }
                        *attained.entry(if v == lo { "lower" } else { "upper" }).or_default() += 1;
                        if v == lo {
                            out.notes.push(format!("{name}: lower endpoint {v}"));
                        }
                    }
                    Err(e) => out.error(format!("{name}: {e}")),
                }
            }
        }
    }
    // balloons on 5 and 6 vertices must have been seen
    for n in 5..=6 {
        let count = graphs_up_to_isomorphism(n, |g| g.classify().balloon && g.girth().unwrap_or(0) >= 4).len();
        out.check(count > 0, || format!("no balloon graph on {n} vertices"));
    }
    match stabilization_probe(&Graph::g2(6).unwrap(), 2, &cfg()) {
        Ok(p) => {
            let pts: Vec<(u32, Option<i64>)> = p.points.iter().map(|q| (q.s, q.reg)).collect();
            out.check(pts == vec![(1, Some(3)), (2, Some(6))], || format!("G2(6) probe {pts:?}"));
        }
        Err(e) => out.error(format!("G2(6) probe: {e}")),
    }
    out.notes.push(format!("endpoints attained: {attained:?}"));
    out
}

fn connected_graphs(max_n: usize) -> Vec<Graph> {
    (1..=max_n)
        .flat_map(|n| graphs_up_to_isomorphism(n, Graph::is_connected))
        .collect()
}

fn criterion_7() -> Outcome {
    let mut out = Outcome::default();
    for g in connected_graphs(5) {
        match check_ohtani(&g, &cfg()) {
            Ok((ok, total)) => out.check(ok == total, || format!("ohtani {:?}: {ok}/{total}", g.edges())),
            Err(e) => out.error(format!("ohtani {:?}: {e}", g.edges())),
        }
        if g.n() < 3 {
            continue;
        }
        for s in 1..=2 {
            match check_contraction(&g, s, &cfg()) {
                Ok((ok, total)) => out.check(ok == total, || {
                    format!("contraction {:?} s={s}: {ok}/{total}", g.edges())
                }),
                Err(e) => out.error(format!("contraction {:?} s={s}: {e}", g.edges())),
            }
        }
    }
    for n in 4..=5 {
        match check_edge_colon(&Graph::cycle(n).unwrap(), &cfg()) {
            Ok((ok, total)) => out.check(ok == total, || {
                format!("edge-colon identity on C{n}: holds for {ok}/{total} edges")
            }),
            Err(e) => out.error(format!("edge-colon C{n}: {e}")),
        }
    }
    out
}

fn criterion_8() -> Outcome {
    let mut out = Outcome::default();
    let mut cache = BettiCache::new();
    for g in connected_graphs(5) {
        for s in 1..=2u32 {
            if g.n() >= 2 {
                match check_monotonicity(&g, s, &cfg(), &mut cache) {
                    Ok((ok, total)) => out.check(ok == total, || {
                        format!("monotonicity {:?} s={s}: {ok}/{total}", g.edges())
                    }),
                    Err(e) => out.error(format!("monotonicity {:?} s={s}: {e}", g.edges())),
                }
            }
            if g.n() >= 2 {
                let bound = 2 * s as i64 + g.longest_induced_path() as i64 - 2;
                match reg(&g, s, &cfg()) {
                    Ok(v) => out.check(v >= bound, || {
                        format!("lower bound {:?} s={s}: {v} < {bound}", g.edges())
                    }),
                    Err(e) => out.error(format!("lower bound {:?}: {e}", g.edges())),
                }
            }
        }
    }
    out
}

/// Random regular sequences of forms in five variables, confirmed regular by
/// their Hilbert series.
fn random_regular_sequences(count: usize) -> Vec<Vec<Polynomial>> {
    let ring = Ring::new(5, PrimeField::default()).unwrap();
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    let mut out = Vec::new();
    while out.len() < count {
        let k = rng.gen_range(2..=3);
        let elems: Vec<Polynomial> = (0..k)
            .map(|_| {
                let d = rng.gen_range(1..=2u32);
                let terms: Vec<(Monomial, u32)> = (0..rng.gen_range(1..=3))
                    .map(|_| {
                        let mut e = [0u32; 5];
                        for _ in 0..d {
                            e[rng.gen_range(0..5)] += 1;
                        }
                        (Monomial::from_exponents(&e).unwrap(), rng.gen_range(1..32003))
                    })
                    .collect();
                Polynomial::from_terms(ring, terms)
            })
            .collect();
        if elems.iter().any(|e| e.is_zero()) {
            continue;
        }
        if is_regular_sequence(&elems).unwrap() {
            out.push(elems);
        }
    }
    out
}

fn criterion_9() -> Outcome {
    let mut out = Outcome::default();
    let k = PrimeField::default();
    let mut instances: Vec<(String, Vec<Polynomial>)> = Vec::new();
    for n in 3..=5 {
        instances.push((format!("cycle C{n}"), cycle_sequence(n, k).unwrap()));
    }
    for n in 3..=4 {
        instances.push((format!("star K1,{n}"), star_sequence(n, k).unwrap()));
    }
    for (i, seq) in random_regular_sequences(20).into_iter().enumerate() {
        instances.push((format!("random #{i}"), seq));
    }
    for (name, elems) in instances {
        let dseq = match is_d_sequence(&elems) {
            Ok(r) => r.is_d_sequence(),
            Err(e) => {
                out.error(format!("{name}: {e}"));
                continue;
            }
        };
        out.check(dseq, || format!("{name}: not a d-sequence"));
        if !dseq {
            continue;
        }
        let seq = PosetSequence::chain(elems.clone()).unwrap();
        match is_quadratic_sequence(&seq) {
            Ok(r) => out.check(r.holds, || format!("{name}: not quadratic, fails at {:?}", r.failure)),
            Err(e) => out.error(format!("{name}: {e}")),
        }
        for sigma in seq.poset().poset_ideals() {
            match product_intersection_identity(&seq, sigma, 2) {
                Ok(ok) => out.check(ok, || format!("{name}: product identity fails for Σ={sigma:#b}")),
                Err(e) => out.error(format!("{name}: {e}")),
            }
        }
        let full = Ideal::new(seq.ring(), elems.clone()).unwrap();
        // the d-sequence bound and the colon-sum inequality assume the first
        // k-1 elements form a regular sequence
        let prefix_regular = is_regular_sequence(&elems[..elems.len() - 1]).unwrap();
        if !prefix_regular {
            out.notes.push(format!("{name}: prefix not regular, d-sequence bound not applicable"));
        }
        for s in 1..=2u32 {
            let actual = match full.power(s).and_then(|p| regularity(&p)) {
                Ok(r) => r,
                Err(e) => {
                    out.error(format!("{name} s={s}: {e}"));
                    continue;
                }
            };
            match filtration_bound(&seq, s) {
                Ok(b) => out.check(b.bound >= actual, || {
                    format!("{name} s={s}: filtration bound {} < reg {}", b.bound, actual)
                }),
                Err(e) => out.error(format!("{name} s={s}: {e}")),
            }
            if prefix_regular {
                match d_sequence_bound(&elems, s) {
                    Ok(b) => out.check(Regularity::Finite(b.bound as i32) >= actual, || {
                        format!("{name} s={s}: d-sequence bound {} < reg {}", b.bound, actual)
                    }),
                    Err(e) => out.error(format!("{name} s={s}: {e}")),
                }
            }
        }
        if prefix_regular {
            match colon_sum_bound(&elems) {
                Ok(r) => out.check(r.holds, || format!("{name}: colon-sum inequality {:?} > {}", r.lhs, r.rhs)),
                Err(e) => out.error(format!("{name}: {e}")),
            }
        }
    }
    out
}

fn criterion_10() -> Outcome {
    let mut out = Outcome::default();
    let k = PrimeField::default();
    for g in connected_graphs(4) {
        let bei = build_bei(&g, k).unwrap();
        for s in 1..=2u32 {
            let ideal = if bei.ideal().is_zero() {
                bei.ideal().clone()
            } else {
                bei.power(s).unwrap()
            };
            let name = format!("{:?} s={s}", g.edges());
            let schreyer = match minimal_resolution(&ideal, Default::default()) {
                Ok(t) => t,
                Err(e) => {
                    out.error(format!("{name}: {e}"));
                    continue;
                }
            };
            let top = schreyer
                .entries()
                .map(|((i, j), _)| j as i64 - i as i64)
                .max()
                .unwrap_or(0);
            let koszul = koszul_betti_table(&ideal, (top + 1) as u32).unwrap();
            out.check(koszul == schreyer, || format!("{name}:\n{schreyer}\nvs Koszul\n{koszul}"));
        }
    }
    out
}

fn criterion_11(rec: &Recorded) -> Outcome {
    let mut out = Outcome::default();
    let other = cfg().with_prime(101);
    for (name, g, s, v) in rec {
        match reg(g, *s, &other) {
            Ok(w) => out.check(w == *v, || format!("{name}: {v} over 32003, {w} over 101 (anomaly)")),
            Err(e) => out.error(format!("{name} over 101: {e}")),
        }
    }
    out
}

fn report(id: usize, title: &str, budget: Duration, run: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = run();
    let took = start.elapsed();
    let over = took > budget;
    let pass = out.failures.is_empty() && out.checks > 0 && !over;
    println!(
        "criterion {id:>2} {}: {title} ({} checks, {:.1}s of {}s budget){}",
        if pass { "PASS" } else { "FAIL" },
        out.checks,
        took.as_secs_f64(),
        budget.as_secs(),
        if over { " OVER BUDGET" } else { "" },
    );
    for f in out.failures.iter().take(8) {
        println!("    failure: {f}");
    }
    if out.failures.len() > 8 {
        println!("    ... {} more failures", out.failures.len() - 8);
    }
    for n in &out.notes {
        println!("    note: {n}");
    }
    pass
}

fn main() -> ExitCode {
    let min = |m: u64| Duration::from_secs(60 * m);
    let mut rec = Recorded::new();
    let mut all = true;
    all &= report(1, "path formula", min(5), || criterion_1(&mut rec));
    all &= report(2, "complete graph and initial ideals", min(5), || criterion_2(&mut rec));
    all &= report(3, "star formula", min(10), || criterion_3(&mut rec));
    all &= report(4, "cycle formula", min(20), || criterion_4(&mut rec));
    all &= report(5, "T/H-type tree bounds, caterpillar equality", min(30), criterion_5);
    all &= report(6, "unicyclic bounds, balloon equality, G2(6) probe", min(45), criterion_6);
    all &= report(7, "Ohtani, contraction and edge-colon identities", min(20), criterion_7);
    all &= report(8, "Betti monotonicity and induced-path lower bound", min(30), criterion_8);
    all &= report(9, "d-sequences, quadratic sequences and their bounds", min(30), criterion_9);
    all &= report(10, "Schreyer vs Koszul Betti tables", min(15), criterion_10);
    all &= report(11, "dual-prime consistency of criteria 1-4", min(5), || criterion_11(&rec));
    println!("acceptance: {}", if all { "PASS" } else { "FAIL" });
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
