//! Simple graphs on `[n]`, the families and surgeries used for binomial edge
//! ideals, and the combinatorial invariants in the regularity formulas.
//!
//! Vertices are 1-based in the public API. All invariants are computed by
//! exhaustive search; graphs here have at most 15 vertices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simple undirected graph on `[n]`. Edges are stored as `(i, j)` with `i < j`,
/// sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<u32>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask >> i & 1 == 1)
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

impl Graph {
    pub const MAX_VERTICES: usize = 31;

    /// Builds a graph; edges may be given in either orientation, duplicates are
    /// merged, loops and out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > Self::MAX_VERTICES {
            return Err(invalid(format!("at most {} vertices", Self::MAX_VERTICES)));
        }
        let mut adj = vec![0u32; n];
        let mut list = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == 0 || b == 0 || a > n || b > n {
                return Err(invalid(format!("edge {{{a},{b}}} outside [1,{n}]")));
            }
            if a == b {
                return Err(invalid(format!("loop at vertex {a}")));
            }
            let (i, j) = (a.min(b), a.max(b));
            list.push((i, j));
            adj[i - 1] |= 1 << (j - 1);
            adj[j - 1] |= 1 << (i - 1);
        }
        list.sort_unstable();
        list.dedup();
        Ok(Graph { n, edges: list, adj })
    }

    pub fn empty(n: usize) -> Self {
        Graph::new(n, &[]).expect("no edges")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && i >= 1 && j >= 1 && i <= self.n && j <= self.n && self.adj[i - 1] >> (j - 1) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].count_ones() as usize
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        bits(self.adj[v - 1]).map(|i| i + 1).collect()
    }

    fn all_mask(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    fn component_of(&self, start: usize, within: u32) -> u32 {
        let mut seen = 1u32 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v] & within;
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.component_of(0, self.all_mask()) == self.all_mask()
    }

    pub fn components(&self) -> usize {
        let mut left = self.all_mask();
        let mut c = 0;
        while left != 0 {
            let v = left.trailing_zeros() as usize;
            left &= !self.component_of(v, self.all_mask());
            c += 1;
        }
        c
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for (i, j) in &self.edges {
            s.push_str(&format!("{i} {j}\n"));
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphRecord::from(self)).expect("serializable")
    }

    // ---- families ----

    /// `P_n` with edges `{i, i+1}`.
    pub fn path(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("P_n needs n >= 1"));
        }
        Graph::new(n, &(1..n).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }

    /// `C_n` with edges `{i, i+1}` and `{1, n}`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(invalid("C_n needs n >= 3"));
        }
        let mut e: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        e.push((1, n));
        Graph::new(n, &e)
    }

    pub fn complete(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("K_n needs n >= 1"));
        }
        let mut e = Vec::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                e.push((i, j));
            }
        }
        Graph::new(n, &e)
    }

    /// `K_{1,n}` on `[n+1]` with centre `n+1`.
    pub fn star(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("K_{1,n} needs n >= 1"));
        }
        Graph::new(n + 1, &(1..=n).map(|i| (i, n + 1)).collect::<Vec<_>>())
    }

    /// `G_1(m)`: the path `1..m` plus the chord `{2, m}`; an `(m-1)`-cycle with
    /// pendant vertex 1.
    pub fn g1(m: usize) -> Result<Self> {
        if m < 4 {
            return Err(invalid("G_1(m) needs m >= 4"));
        }
        let mut e: Vec<_> = (1..m).map(|i| (i, i + 1)).collect();
        e.push((2, m));
        Graph::new(m, &e)
    }

    /// `G_2(m)`: the path `1..m` plus the chord `{2, m-1}`; an `(m-2)`-cycle
    /// with pendant vertices 1 and `m`.
    pub fn g2(m: usize) -> Result<Self> {
        if m < 5 {
            return Err(invalid("G_2(m) needs m >= 5"));
        }
        let mut e: Vec<_> = (1..m).map(|i| (i, i + 1)).collect();
        e.push((2, m - 1));
        Graph::new(m, &e)
    }

    /// Balloon graph: `G_1(m)` with a path of `tail` new vertices glued at the
    /// pendant vertex 1 (`1 - m+1 - m+2 - ...`). `tail = 0` gives `G_1(m)`.
    pub fn balloon(m: usize, tail: usize) -> Result<Self> {
        let base = Graph::g1(m)?;
        base.attach_path(1, tail)
    }

    /// `G_2(m)` with pendant paths of `a` and `b` new vertices glued at 1 and `m`.
    pub fn g2_based(m: usize, a: usize, b: usize) -> Result<Self> {
        Graph::g2(m)?.attach_path(1, a)?.attach_path(m, b)
    }

    /// T-type tree: the path `1..p` with an internal vertex `i` joined to the
    /// pendant vertex of a second path on `p+1..p+q`.
    pub fn t_type(p: usize, i: usize, q: usize) -> Result<Self> {
        if p < 3 || i < 2 || i >= p || q < 1 {
            return Err(invalid("T-type needs p >= 3, 1 < i < p, q >= 1"));
        }
        let mut e: Vec<_> = (1..p).map(|v| (v, v + 1)).collect();
        e.extend((p + 1..p + q).map(|v| (v, v + 1)));
        e.push((i, p + 1));
        Graph::new(p + q, &e)
    }

    /// H-type tree: paths `1..p` and `p+1..p+q` joined by an edge between the
    /// internal vertices `i` and `p + j`.
    pub fn h_type(p: usize, i: usize, q: usize, j: usize) -> Result<Self> {
        if p < 3 || q < 3 || i < 2 || i >= p || j < 2 || j >= q {
            return Err(invalid("H-type needs two paths of >= 3 vertices joined at internal vertices"));
        }
        let mut e: Vec<_> = (1..p).map(|v| (v, v + 1)).collect();
        e.extend((p + 1..p + q).map(|v| (v, v + 1)));
        e.push((i, p + j));
        Graph::new(p + q, &e)
    }

    /// Clique sum of `C_n` and `K_m` along the edge `{1, 2}`: the cycle lives on
    /// `1..n`, the clique on `{1, 2, n+1, .., n+m-2}`.
    pub fn cycle_clique_sum(n: usize, m: usize) -> Result<Self> {
        if n < 3 || m < 3 {
            return Err(invalid("clique sum needs n, m >= 3"));
        }
        let cycle = Graph::cycle(n)?;
        let clique = Graph::complete(m)?;
        let mut glue = vec![1, 2];
        glue.extend(n + 1..n + m - 1);
        Graph::clique_sum(&cycle, &clique, &glue)
    }

    /// Glues `b` onto `a`: vertex `v` of `b` becomes `map[v-1]`; the glued
    /// vertices must span a clique in both graphs.
    pub fn clique_sum(a: &Graph, b: &Graph, map: &[usize]) -> Result<Self> {
        if map.len() != b.n {
            return Err(invalid("vertex map must cover the second graph"));
        }
        let n = map.iter().copied().max().unwrap_or(0).max(a.n);
        let shared: Vec<usize> = (1..=b.n).filter(|&v| map[v - 1] <= a.n).collect();
        for (x, &u) in shared.iter().enumerate() {
            for &w in &shared[x + 1..] {
                if !b.has_edge(u, w) || !a.has_edge(map[u - 1], map[w - 1]) {
                    return Err(invalid("glued vertices do not form a clique"));
                }
            }
        }
        let mut e = a.edges.clone();
        e.extend(b.edges.iter().map(|&(u, w)| (map[u - 1], map[w - 1])));
        Graph::new(n, &e)
    }

    /// Adds `len` new vertices forming a path hanging off `v`.
    pub fn attach_path(&self, v: usize, len: usize) -> Result<Self> {
        if v == 0 || v > self.n {
            return Err(invalid(format!("vertex {v} not in graph")));
        }
        let mut e = self.edges.clone();
        let mut prev = v;
        for k in 0..len {
            let w = self.n + k + 1;
            e.push((prev, w));
            prev = w;
        }
        Graph::new(self.n + len, &e)
    }

    // ---- surgeries ----

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            return Err(invalid(format!("vertex {v} not in graph")));
        }
        Ok(())
    }

    /// `G \ v` on `n - 1` vertices, vertices above `v` shifted down.
    pub fn delete_vertex(&self, v: usize) -> Result<Self> {
        self.check_vertex(v)?;
        let relabel = |u: usize| if u > v { u - 1 } else { u };
        let e: Vec<_> = self
            .edges
            .iter()
            .filter(|&&(a, b)| a != v && b != v)
            .map(|&(a, b)| (relabel(a), relabel(b)))
            .collect();
        Graph::new(self.n - 1, &e)
    }

    /// `G \ v` keeping the vertex set: `v` becomes isolated. This is the form
    /// whose binomial edge ideal lives in the same ring as `J_G`.
    pub fn isolate_vertex(&self, v: usize) -> Result<Self> {
        self.check_vertex(v)?;
        let e: Vec<_> = self.edges.iter().copied().filter(|&(a, b)| a != v && b != v).collect();
        Graph::new(self.n, &e)
    }

    /// `G_v`: completes the neighbourhood of `v`.
    pub fn complete_neighborhood(&self, v: usize) -> Result<Self> {
        self.check_vertex(v)?;
        let nb = self.neighbors(v);
        let mut e = self.edges.clone();
        for (x, &a) in nb.iter().enumerate() {
            for &b in &nb[x + 1..] {
                e.push((a, b));
            }
        }
        Graph::new(self.n, &e)
    }

    pub fn delete_edge(&self, i: usize, j: usize) -> Result<Self> {
        if !self.has_edge(i, j) {
            return Err(invalid(format!("{{{i},{j}}} is not an edge")));
        }
        let key = (i.min(j), i.max(j));
        let e: Vec<_> = self.edges.iter().copied().filter(|&x| x != key).collect();
        Graph::new(self.n, &e)
    }

    pub fn add_edge(&self, i: usize, j: usize) -> Result<Self> {
        let mut e = self.edges.clone();
        e.push((i, j));
        Graph::new(self.n, &e)
    }

    /// `G_e` for a non-edge `e = {u, v}`: completes both neighbourhoods.
    pub fn complete_non_edge(&self, u: usize, v: usize) -> Result<Self> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v || self.has_edge(u, v) {
            return Err(invalid(format!("{{{u},{v}}} must be a non-edge")));
        }
        let mut e = self.edges.clone();
        for w in [u, v] {
            let nb = self.neighbors(w);
            for (x, &a) in nb.iter().enumerate() {
                for &b in &nb[x + 1..] {
                    e.push((a, b));
                }
            }
        }
        Graph::new(self.n, &e)
    }

    /// Edges of `G` with both ends in `vertices`, on the same vertex set `[n]`.
    pub fn induced_on_same_labels(&self, vertices: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        for &v in vertices {
            self.check_vertex(v)?;
            mask |= 1 << (v - 1);
        }
        let e: Vec<_> = self
            .edges
            .iter()
            .copied()
            .filter(|&(a, b)| mask >> (a - 1) & 1 == 1 && mask >> (b - 1) & 1 == 1)
            .collect();
        Graph::new(self.n, &e)
    }

    /// Induced subgraph relabelled to `[k]` in increasing vertex order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Self> {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        for &v in &vs {
            self.check_vertex(v)?;
        }
        let pos = |v: usize| vs.iter().position(|&w| w == v);
        let e: Vec<_> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| Some((pos(a)? + 1, pos(b)? + 1)))
            .collect();
        Graph::new(vs.len(), &e)
    }

    /// Applies a permutation: vertex `v` becomes `perm[v-1]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(invalid("permutation length"));
        }
        let e: Vec<_> = self.edges.iter().map(|&(a, b)| (perm[a - 1], perm[b - 1])).collect();
        Graph::new(self.n, &e)
    }

    /// Graph on vertices that carry at least one edge, relabelled to `[k]`.
    pub fn without_isolated(&self) -> Self {
        let vs: Vec<usize> = (1..=self.n).filter(|&v| self.degree(v) > 0).collect();
        self.induced_subgraph(&vs).expect("valid vertices")
    }

    // ---- invariants ----

    /// Length (edges) of a longest induced path.
    pub fn longest_induced_path(&self) -> usize {
        let mut best = 0;
        for start in 0..self.n {
            self.extend_induced(start, 1 << start, 0, &mut best);
        }
        best
    }

    fn extend_induced(&self, last: usize, on_path: u32, len: usize, best: &mut usize) {
        *best = (*best).max(len);
        let inner = on_path & !(1 << last);
        for w in bits(self.adj[last] & !on_path) {
            // w may only touch `last` among the path vertices
            if self.adj[w] & inner == 0 {
                self.extend_induced(w, on_path | 1 << w, len + 1, best);
            }
        }
    }

    /// All maximal cliques (Bron–Kerbosch with pivoting), as bitmasks.
    pub(crate) fn maximal_cliques(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.bron_kerbosch(0, self.all_mask(), 0, &mut out);
        out
    }

    fn bron_kerbosch(&self, r: u32, p: u32, x: u32, out: &mut Vec<u32>) {
        if p == 0 && x == 0 {
            out.push(r);
            return;
        }
        let pivot = bits(p | x)
            .max_by_key(|&u| (self.adj[u] & p).count_ones())
            .expect("p | x nonempty");
        let (mut p, mut x) = (p, x);
        for v in bits(p & !self.adj[pivot]) {
            self.bron_kerbosch(r | 1 << v, p & self.adj[v], x & self.adj[v], out);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }

    /// Vertices lying in at least two maximal cliques.
    pub fn internal_vertices(&self) -> Vec<usize> {
        let cliques = self.maximal_cliques();
        (0..self.n)
            .filter(|&v| cliques.iter().filter(|&&c| c >> v & 1 == 1).count() >= 2)
            .map(|v| v + 1)
            .collect()
    }

    pub fn simplicial_vertices(&self) -> Vec<usize> {
        let iv = self.internal_vertices();
        (1..=self.n).filter(|v| !iv.contains(v)).collect()
    }

    pub fn is_simplicial(&self, v: usize) -> bool {
        !self.internal_vertices().contains(&v)
    }

    /// Shortest cycle length, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for w in bits(self.adj[u]) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let c = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(c, |b| b.min(c)));
                    }
                }
            }
        }
        best
    }

    /// Induced matching number: the most edges, pairwise vertex-disjoint and
    /// joined by no edge of the graph.
    pub fn induced_matching_number(&self) -> usize {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
        fn go(g: &Graph, edges: &[(usize, usize)], from: usize, blocked: u32, size: usize, best: &mut usize) {
            *best = (*best).max(size);
            if size + edges.len() - from <= *best {
                return;
            }
            for k in from..edges.len() {
                let (a, b) = edges[k];
                if blocked >> a & 1 == 1 || blocked >> b & 1 == 1 {
                    continue;
                }
                let closed = (1 << a) | (1 << b) | g.adj[a] | g.adj[b];
                go(g, edges, k + 1, blocked | closed, size + 1, best);
            }
        }
        let mut best = 0;
        go(self, &edges, 0, 0, 0, &mut best);
        best
    }

    pub fn invariants(&self) -> GraphInvariants {
        GraphInvariants {
            ell: self.longest_induced_path(),
            iv: self.internal_vertices().len(),
            girth: self.girth(),
            nu: self.induced_matching_number(),
            classes: self.classify(),
        }
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.is_connected() && self.edges.len() + 1 == self.n
    }

    pub fn is_unicyclic(&self) -> bool {
        self.n >= 3 && self.is_connected() && self.edges.len() == self.n
    }

    pub fn is_caterpillar(&self) -> bool {
        if !self.is_tree() {
            return false;
        }
        let spine: Vec<usize> = (1..=self.n).filter(|&v| self.degree(v) > 1).collect();
        if spine.is_empty() {
            return true;
        }
        let s = self.induced_subgraph(&spine).expect("valid");
        s.is_connected() && (1..=s.n).all(|v| s.degree(v) <= 2)
    }

    fn degree_profile(&self) -> (Vec<usize>, bool) {
        let cubic: Vec<usize> = (1..=self.n).filter(|&v| self.degree(v) == 3).collect();
        let small = (1..=self.n).all(|v| self.degree(v) <= 3);
        (cubic, small)
    }

    /// Vertices on the unique cycle of a unicyclic graph (repeatedly strip leaves).
    fn cycle_vertices(&self) -> u32 {
        let mut alive = self.all_mask();
        loop {
            let leaves: u32 = bits(alive)
                .filter(|&v| (self.adj[v] & alive).count_ones() <= 1)
                .fold(0, |m, v| m | 1 << v);
            if leaves == 0 {
                return alive;
            }
            alive &= !leaves;
        }
    }

    pub fn classify(&self) -> Classification {
        let tree = self.is_tree();
        let unicyclic = self.is_unicyclic();
        let (cubic, max3) = self.degree_profile();
        let t_type = tree && max3 && cubic.len() == 1;
        let h_type = tree && max3 && cubic.len() == 2 && self.has_edge(cubic[0], cubic[1]);
        let (mut balloon, mut g2_based) = (false, false);
        if unicyclic && max3 {
            let cyc = self.cycle_vertices();
            let on_cycle = |v: usize| cyc >> (v - 1) & 1 == 1;
            let cycle_len = cyc.count_ones();
            balloon = cycle_len >= 3 && cubic.len() == 1 && on_cycle(cubic[0]);
            g2_based = cycle_len >= 3
                && cubic.len() == 2
                && on_cycle(cubic[0])
                && on_cycle(cubic[1])
                && self.has_edge(cubic[0], cubic[1]);
        }
        let recognized = t_type || h_type || balloon || g2_based;
        Classification {
            tree,
            unicyclic,
            caterpillar: self.is_caterpillar(),
            t_type,
            h_type,
            balloon,
            g1_based: balloon,
            g2_based,
            unclassified: (tree || unicyclic) && !recognized,
        }
    }
}

/// Structural flags. `g1_based` and `balloon` coincide: both are `G_1(m)` with
/// a path glued at its pendant vertex.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub tree: bool,
    pub unicyclic: bool,
    pub caterpillar: bool,
    pub t_type: bool,
    pub h_type: bool,
    pub balloon: bool,
    pub g1_based: bool,
    pub g2_based: bool,
    /// A tree or unicyclic graph outside the recognized almost complete
    /// intersection families.
    pub unclassified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphInvariants {
    /// Length of a longest induced path.
    pub ell: usize,
    /// Number of internal (non-simplicial) vertices.
    pub iv: usize,
    pub girth: Option<usize>,
    /// Induced matching number.
    pub nu: usize,
    pub classes: Classification,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct GraphRecord {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphRecord {
    fn from(g: &Graph) -> Self {
        GraphRecord {
            n: g.n,
            edges: g.edges.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

/// All graphs on `[n]` up to isomorphism satisfying `keep`, each in a canonical
/// labelling. Built by vertex augmentation; feasible for `n <= 7`.
pub fn graphs_up_to_isomorphism(n: usize, keep: impl Fn(&Graph) -> bool) -> Vec<Graph> {
    assert!(n <= 7, "isomorphism enumeration is only meant for tiny graphs");
    let mut layer: Vec<u64> = vec![0];
    for k in 1..=n {
        let canon = Canonizer::new(k);
        let mut seen = std::collections::HashSet::new();
        let mut next = Vec::new();
        for &m in &layer {
            for nb in 0u32..(1 << (k - 1)) {
                let mut mask = m;
                for v in 0..k - 1 {
                    if nb >> v & 1 == 1 {
                        mask |= 1 << pair_index(v, k - 1);
                    }
                }
                let c = canon.canonical(mask);
                if seen.insert(c) {
                    next.push(c);
                }
            }
        }
        next.sort_unstable();
        layer = next;
    }
    layer
        .into_iter()
        .map(|m| graph_from_mask(n, m))
        .filter(|g| keep(g))
        .collect()
}

/// Bit index of the 0-based pair `{a, b}` (`a < b`) in an edge mask.
fn pair_index(a: usize, b: usize) -> usize {
    b * (b - 1) / 2 + a
}

fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut e = Vec::new();
    for b in 1..n {
        for a in 0..b {
            if mask >> pair_index(a, b) & 1 == 1 {
                e.push((a + 1, b + 1));
            }
        }
    }
    Graph::new(n, &e).expect("valid")
}

struct Canonizer {
    /// for each permutation, the image bit of each pair bit
    tables: Vec<Vec<u8>>,
}

impl Canonizer {
    fn new(n: usize) -> Self {
        let npairs = n * n.saturating_sub(1) / 2;
        let tables = permutations(n)
            .into_iter()
            .map(|p| {
                let mut t = vec![0u8; npairs];
                for b in 1..n {
                    for a in 0..b {
                        let (x, y) = (p[a] - 1, p[b] - 1);
                        t[pair_index(a, b)] = pair_index(x.min(y), x.max(y)) as u8;
                    }
                }
                t
            })
            .collect();
        Canonizer { tables }
    }

    fn canonical(&self, mask: u64) -> u64 {
        self.tables
            .iter()
            .map(|t| {
                let mut out = 0u64;
                let mut m = mask;
                while m != 0 {
                    let b = m.trailing_zeros() as usize;
                    out |= 1 << t[b];
                    m &= m - 1;
                }
                out
            })
            .min()
            .unwrap_or(mask)
    }
}

/// Canonical representative of the isomorphism class of `g` (`n <= 8`).
pub fn canonical_form(g: &Graph) -> Graph {
    let mut mask = 0u64;
    for &(a, b) in &g.edges {
        mask |= 1 << pair_index(a - 1, b - 1);
    }
    graph_from_mask(g.n, Canonizer::new(g.n).canonical(mask))
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (1..=n).collect();
    fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(p.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, p, out);
            if k.is_multiple_of(2) {
                p.swap(i, k - 1);
            } else {
                p.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut p, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Reference implementations by plain subset enumeration.
    mod brute {
        use super::super::*;

        fn subsets(n: usize) -> impl Iterator<Item = u32> {
            0u32..(1 << n)
        }

        fn is_induced_path(g: &Graph, s: u32) -> bool {
            let vs: Vec<usize> = bits(s).collect();
            if vs.len() <= 1 {
                return true;
            }
            let h = g.induced_subgraph(&vs.iter().map(|v| v + 1).collect::<Vec<_>>()).unwrap();
            h.is_connected()
                && h.edges().len() == vs.len() - 1
                && (1..=h.n()).all(|v| h.degree(v) <= 2)
        }

        pub fn ell(g: &Graph) -> usize {
            subsets(g.n())
                .filter(|&s| s != 0 && is_induced_path(g, s))
                .map(|s| s.count_ones() as usize - 1)
                .max()
                .unwrap_or(0)
        }

        fn is_clique(g: &Graph, s: u32) -> bool {
            bits(s).all(|a| bits(s).all(|b| a == b || g.has_edge(a + 1, b + 1)))
        }

        pub fn iv(g: &Graph) -> usize {
            let cliques: Vec<u32> = subsets(g.n()).filter(|&s| s != 0 && is_clique(g, s)).collect();
            let maximal: Vec<u32> = cliques
                .iter()
                .copied()
                .filter(|&c| !cliques.iter().any(|&d| d != c && d & c == c))
                .collect();
            (0..g.n())
                .filter(|&v| maximal.iter().filter(|&&c| c >> v & 1 == 1).count() >= 2)
                .count()
        }

        pub fn girth(g: &Graph) -> Option<usize> {
            // a shortest cycle is an induced cycle: connected, 2-regular
            subsets(g.n())
                .filter(|&s| s.count_ones() >= 3)
                .filter(|&s| {
                    let vs: Vec<usize> = bits(s).map(|v| v + 1).collect();
                    let h = g.induced_subgraph(&vs).unwrap();
                    h.is_connected() && (1..=h.n()).all(|v| h.degree(v) == 2)
                })
                .map(|s| s.count_ones() as usize)
                .min()
        }

        pub fn nu(g: &Graph) -> usize {
            let e = g.edges();
            (0u32..(1 << e.len()))
                .filter(|&s| {
                    let chosen: Vec<(usize, usize)> = bits(s).map(|k| e[k]).collect();
                    chosen.iter().enumerate().all(|(x, &(a, b))| {
                        chosen[x + 1..].iter().all(|&(c, d)| {
                            ![a, b].iter().any(|&u| [c, d].iter().any(|&w| u == w || g.has_edge(u, w)))
                        })
                    })
                })
                .map(|s| s.count_ones() as usize)
                .max()
                .unwrap_or(0)
        }
    }

    #[test]
    fn families_have_exact_edges() {
        assert_eq!(Graph::cycle(4).unwrap().edges(), &[(1, 2), (1, 4), (2, 3), (3, 4)]);
        assert_eq!(
            Graph::g1(5).unwrap().edges(),
            &[(1, 2), (2, 3), (2, 5), (3, 4), (4, 5)]
        );
        assert_eq!(
            Graph::g2(6).unwrap().edges(),
            &[(1, 2), (2, 3), (2, 5), (3, 4), (4, 5), (5, 6)]
        );
        assert_eq!(Graph::star(3).unwrap().edges(), &[(1, 4), (2, 4), (3, 4)]);
        assert!(Graph::cycle(2).is_err());
        assert!(Graph::g2(4).is_err());
        assert!(Graph::t_type(3, 1, 1).is_err());
    }

    #[test]
    fn surgeries() {
        let c4 = Graph::cycle(4).unwrap();
        let c41 = c4.complete_neighborhood(1).unwrap();
        assert_eq!(c41.edges(), &[(1, 2), (1, 4), (2, 3), (2, 4), (3, 4)]);
        assert_eq!(c4.delete_vertex(1).unwrap(), Graph::path(3).unwrap());
        let p4 = Graph::path(4).unwrap();
        assert_eq!(p4.complete_non_edge(1, 4).unwrap(), p4);
        assert!(p4.complete_non_edge(1, 2).is_err());
        assert!(p4.delete_edge(1, 3).is_err());
        assert!(p4.delete_vertex(5).is_err());
        let d = c4.delete_vertex(2).unwrap();
        assert_eq!(d.n(), 3);
        assert_eq!(d, c4.induced_subgraph(&[1, 3, 4]).unwrap());
    }

    #[test]
    fn invariants_of_families() {
        for n in 4..=6 {
            assert_eq!(Graph::cycle(n).unwrap().longest_induced_path(), n - 2);
        }
        for n in 2..=5 {
            assert_eq!(Graph::star(n).unwrap().longest_induced_path(), 2);
        }
        let t = Graph::t_type(4, 2, 2).unwrap();
        assert_eq!(t.internal_vertices().len(), t.n() - 3);
        let h = Graph::h_type(3, 2, 3, 2).unwrap();
        assert_eq!(h.internal_vertices().len(), h.n() - 4);
        assert_eq!(Graph::path(5).unwrap().induced_matching_number(), 2);
        assert_eq!(Graph::cycle(5).unwrap().induced_matching_number(), 1);
        assert_eq!(Graph::cycle(5).unwrap().girth(), Some(5));
        assert_eq!(Graph::path(5).unwrap().girth(), None);
        assert_eq!(Graph::complete(4).unwrap().internal_vertices().len(), 0);
    }

    #[test]
    fn classification_examples() {
        let c = Graph::path(5).unwrap().classify();
        assert!(c.tree && c.caterpillar && !c.t_type);
        let b = Graph::balloon(5, 2).unwrap().classify();
        assert!(b.unicyclic && b.balloon && b.g1_based && !b.g2_based);
        let g = Graph::g2(6).unwrap().classify();
        assert!(g.unicyclic && g.g2_based && !g.balloon);
        let t = Graph::t_type(5, 3, 2).unwrap().classify();
        assert!(t.t_type && t.tree && !t.caterpillar);
        let t = Graph::t_type(5, 2, 2).unwrap().classify();
        assert!(t.t_type && t.caterpillar);
        let c6 = Graph::cycle(6).unwrap().classify();
        assert!(c6.unicyclic && c6.unclassified);
    }

    #[test]
    fn invariants_match_brute_force_on_small_connected_graphs() {
        for n in 1..=7 {
            for g in graphs_up_to_isomorphism(n, |g| g.is_connected()) {
                assert_eq!(g.longest_induced_path(), brute::ell(&g), "{g:?}");
                assert_eq!(g.internal_vertices().len(), brute::iv(&g), "{g:?}");
                assert_eq!(g.girth(), brute::girth(&g), "{g:?}");
                assert_eq!(g.induced_matching_number(), brute::nu(&g), "{g:?}");
                let inv = g.invariants();
                assert!(inv.ell <= n.saturating_sub(1));
                assert_eq!(inv.iv + g.simplicial_vertices().len(), n);
                let c = inv.classes;
                assert!(!c.t_type || c.tree);
                assert!(!c.balloon || c.unicyclic);
                assert!(!c.caterpillar || c.tree);
            }
        }
    }

    #[test]
    fn invariants_match_brute_force_on_random_seven_vertex_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let mut checked = 0;
        while checked < 150 {
            let mut e = Vec::new();
            for i in 1..=7 {
                for j in i + 1..=7 {
                    if rng.gen_bool(0.35) {
                        e.push((i, j));
                    }
                }
            }
            let g = Graph::new(7, &e).unwrap();
            if !g.is_connected() {
                continue;
            }
            checked += 1;
            assert_eq!(g.longest_induced_path(), brute::ell(&g));
            assert_eq!(g.internal_vertices().len(), brute::iv(&g));
            assert_eq!(g.girth(), brute::girth(&g));
            assert_eq!(g.induced_matching_number(), brute::nu(&g));
        }
    }

    #[test]
    fn neighborhood_completion_routes_agree() {
        for g in graphs_up_to_isomorphism(5, |g| g.is_connected()) {
            for v in g.internal_vertices() {
                let gv = g.complete_neighborhood(v).unwrap();
                assert!(g.edges().iter().all(|&(a, b)| gv.has_edge(a, b)));
                // G_v \ v equals G \ v with N(v) completed
                let nb = g.neighbors(v);
                let mut direct = g.isolate_vertex(v).unwrap();
                for (x, &a) in nb.iter().enumerate() {
                    for &b in &nb[x + 1..] {
                        direct = direct.add_edge(a, b).unwrap();
                    }
                }
                assert_eq!(gv.isolate_vertex(v).unwrap(), direct);
            }
        }
    }

    #[test]
    fn delete_vertex_keeps_induced_edges() {
        for g in graphs_up_to_isomorphism(5, |_| true) {
            for v in 1..=5 {
                let d = g.delete_vertex(v).unwrap();
                assert_eq!(d.n(), 4);
                let expect: usize = g.edges().iter().filter(|&&(a, b)| a != v && b != v).count();
                assert_eq!(d.edges().len(), expect);
            }
        }
    }

    #[test]
    fn counts_of_isomorphism_classes() {
        let counts: Vec<usize> = (1..=5)
            .map(|n| graphs_up_to_isomorphism(n, |g| g.is_connected()).len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21]);
        assert_eq!(graphs_up_to_isomorphism(6, |g| g.is_connected()).len(), 112);
        assert_eq!(graphs_up_to_isomorphism(7, |g| g.is_connected()).len(), 853);
    }

    #[test]
    fn clique_sum_construction() {
        let g = Graph::cycle_clique_sum(4, 3).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edges().len(), 6);
        assert!(g.has_edge(1, 5) && g.has_edge(2, 5));
        let bad = Graph::clique_sum(&Graph::path(3).unwrap(), &Graph::path(3).unwrap(), &[1, 3, 4]);
        assert!(bad.is_err());
    }
}
