//! Simple undirected graphs on `1..=n` and the combinatorial primitives the
//! decomposition and classification machinery is built from: component
//! profiles with bipartiteness, the cut-set family `C(G)`, claw enumeration,
//! shape recognition and fixed-pattern induced-subgraph detection.

use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::BTreeSet;

/// A finite simple graph on vertices `1..=n` with a sorted, canonical edge
/// list. Two graphs are equal iff `n` and the edge lists agree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Graph {
    n: u32,
    edges: Vec<(u32, u32)>,
}

impl Graph {
    /// Builds a graph, validating and canonicalizing the edge list.
    /// Endpoints must lie in `1..=n`; loops and duplicates are rejected.
    pub fn new(n: u32, mut edges: Vec<(u32, u32)>) -> Result<Graph> {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        for (k, &(u, v)) in edges.iter().enumerate() {
            if u == v {
                return Err(Error::LoopEdge { line: 0, v: u });
            }
            if u < 1 || v > n {
                let bad = if u < 1 { u } else { v };
                return Err(Error::VertexOutOfRange { v: bad, n });
            }
            if k > 0 && edges[k - 1] == (u, v) {
                return Err(Error::DuplicateEdge { line: 0, u, v });
            }
        }
        Ok(Graph { n, edges })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        let e = if u <= v { (u, v) } else { (v, u) };
        self.edges.binary_search(&e).is_ok()
    }

    /// Position of an edge in the sorted edge list.
    pub fn edge_index(&self, u: u32, v: u32) -> Option<usize> {
        let e = if u <= v { (u, v) } else { (v, u) };
        self.edges.binary_search(&e).ok()
    }

    pub fn neighbors(&self, v: u32) -> Vec<u32> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            if a == v {
                out.push(b);
            } else if b == v {
                out.push(a);
            }
        }
        out.sort_unstable();
        out
    }

    pub fn degree(&self, v: u32) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.n as usize + 1];
        for &(u, v) in &self.edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for l in adj.iter_mut() {
            l.sort_unstable();
        }
        adj
    }

    /// Graph with one edge removed; vertex set unchanged.
    pub fn without_edge(&self, u: u32, v: u32) -> Graph {
        let e = if u <= v { (u, v) } else { (v, u) };
        Graph {
            n: self.n,
            edges: self.edges.iter().copied().filter(|&x| x != e).collect(),
        }
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1
            || component_profile(self, &BTreeSet::new())
                .map(|p| p.c == 1)
                .unwrap_or(false)
    }

    pub fn is_bipartite(&self) -> bool {
        component_profile(self, &BTreeSet::new())
            .map(|p| p.b == p.c)
            .unwrap_or(true)
    }

    /// Compact deterministic encoding, used as a stable key in scan reports.
    pub fn encode(&self) -> String {
        let es: Vec<String> = self
            .edges
            .iter()
            .map(|&(u, v)| format!("{u}-{v}"))
            .collect();
        format!("n={};e={}", self.n, es.join(","))
    }

    /// Induced subgraph on a sorted vertex list, relabeled to `1..=k`.
    /// Returns the subgraph and the map `new label -> old label`
    /// (`map[i]` is the old name of vertex `i+1`).
    pub fn induced_subgraph(&self, vertices: &[u32]) -> (Graph, Vec<u32>) {
        let map: Vec<u32> = vertices.to_vec();
        let index = |v: u32| map.iter().position(|&x| x == v).map(|i| i as u32 + 1);
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            if let (Some(a), Some(b)) = (index(u), index(v)) {
                edges.push((a.min(b), a.max(b)));
            }
        }
        (Graph::new(map.len() as u32, edges).unwrap(), map)
    }
}

/// Parses the edge-list document format: optional `#` comment lines, a
/// header `n m`, then `m` lines `u v`. Vertices are 1-based; isolated
/// vertices are declared through `n`.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(u32, usize)> = None;
    let mut edges: Vec<(u32, u32, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if header.is_none() {
            if fields.len() != 2 {
                return Err(Error::Malformed {
                    line,
                    msg: "expected header `n m`".into(),
                });
            }
            let n = fields[0].parse().map_err(|_| Error::Malformed {
                line,
                msg: format!("bad vertex count `{}`", fields[0]),
            })?;
            let m = fields[1].parse().map_err(|_| Error::Malformed {
                line,
                msg: format!("bad edge count `{}`", fields[1]),
            })?;
            header = Some((n, m));
        } else {
            if fields.len() != 2 {
                return Err(Error::Malformed {
                    line,
                    msg: "expected edge line `u v`".into(),
                });
            }
            let u: u32 = fields[0].parse().map_err(|_| Error::Malformed {
                line,
                msg: format!("bad endpoint `{}`", fields[0]),
            })?;
            let v: u32 = fields[1].parse().map_err(|_| Error::Malformed {
                line,
                msg: format!("bad endpoint `{}`", fields[1]),
            })?;
            edges.push((u, v, line));
        }
    }
    let (n, m) = header.ok_or(Error::Malformed {
        line: 0,
        msg: "empty input".into(),
    })?;
    if edges.len() != m {
        return Err(Error::Malformed {
            line: 0,
            msg: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    let mut seen = BTreeSet::new();
    let mut list = Vec::with_capacity(m);
    for (u, v, line) in edges {
        if u == v {
            return Err(Error::LoopEdge { line, v: u });
        }
        if u < 1 || u > n {
            return Err(Error::EndpointOutOfRange { line, v: u, n });
        }
        if v < 1 || v > n {
            return Err(Error::EndpointOutOfRange { line, v, n });
        }
        let e = if u < v { (u, v) } else { (v, u) };
        if !seen.insert(e) {
            return Err(Error::DuplicateEdge {
                line,
                u: e.0,
                v: e.1,
            });
        }
        list.push(e);
    }
    Graph::new(n, list)
}

/// One connected component of an induced subgraph: its vertices, whether it
/// is bipartite, and a deterministic bipartition when it is (the part
/// containing the smallest vertex comes first).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub vertices: Vec<u32>,
    pub is_bipartite: bool,
    pub parts: Option<(Vec<u32>, Vec<u32>)>,
}

/// Component data of `G[V \ T]`: the components in order of their smallest
/// vertex, the component count `c` and the bipartite component count `b`.
/// An isolated vertex counts as bipartite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentProfile {
    pub t: Vec<u32>,
    pub components: Vec<Component>,
    pub c: usize,
    pub b: usize,
}

/// BFS 2-coloring of `G[V \ T]`.
pub fn component_profile(g: &Graph, t: &BTreeSet<u32>) -> Result<ComponentProfile> {
    for &v in t {
        if v < 1 || v > g.n() {
            return Err(Error::VertexOutOfRange { v, n: g.n() });
        }
    }
    let adj = g.adjacency();
    let n = g.n() as usize;
    // color: 0 = unvisited, 1/2 = the two sides
    let mut color = vec![0u8; n + 1];
    let mut components = Vec::new();
    for start in 1..=g.n() {
        if t.contains(&start) || color[start as usize] != 0 {
            continue;
        }
        let mut queue = std::collections::VecDeque::new();
        color[start as usize] = 1;
        queue.push_back(start);
        let mut verts = Vec::new();
        let mut bipartite = true;
        while let Some(v) = queue.pop_front() {
            verts.push(v);
            for &w in &adj[v as usize] {
                if t.contains(&w) {
                    continue;
                }
                if color[w as usize] == 0 {
                    color[w as usize] = 3 - color[v as usize];
                    queue.push_back(w);
                } else if color[w as usize] == color[v as usize] {
                    bipartite = false;
                }
            }
        }
        verts.sort_unstable();
        let parts = if bipartite {
            let first_color = color[verts[0] as usize];
            let a: Vec<u32> = verts
                .iter()
                .copied()
                .filter(|&v| color[v as usize] == first_color)
                .collect();
            let b: Vec<u32> = verts
                .iter()
                .copied()
                .filter(|&v| color[v as usize] != first_color)
                .collect();
            Some((a, b))
        } else {
            None
        };
        components.push(Component {
            vertices: verts,
            is_bipartite: bipartite,
            parts,
        });
    }
    let c = components.len();
    let b = components.iter().filter(|c| c.is_bipartite).count();
    Ok(ComponentProfile {
        t: t.iter().copied().collect(),
        components,
        c,
        b,
    })
}

/// Per-mask `(c, b)` table over all subsets of `[n]`, used by the cut-set
/// and minimal-prime enumerations. Index = bitmask of T (bit i-1 = vertex i).
pub(crate) struct ProfileTable {
    pub c: Vec<u8>,
    pub b: Vec<u8>,
}

pub(crate) fn profile_table(g: &Graph) -> ProfileTable {
    let n = g.n() as usize;
    let adj = g.adjacency();
    let size = 1usize << n;
    let mut ct = vec![0u8; size];
    let mut bt = vec![0u8; size];
    let mut color = vec![0u8; n + 1];
    let mut queue = std::collections::VecDeque::new();
    for mask in 0..size {
        color.iter_mut().for_each(|c| *c = 0);
        let mut c = 0u8;
        let mut b = 0u8;
        for start in 1..=n as u32 {
            if mask >> (start - 1) & 1 == 1 || color[start as usize] != 0 {
                continue;
            }
            c += 1;
            let mut bipartite = true;
            color[start as usize] = 1;
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v as usize] {
                    if mask >> (w - 1) & 1 == 1 {
                        continue;
                    }
                    if color[w as usize] == 0 {
                        color[w as usize] = 3 - color[v as usize];
                        queue.push_back(w);
                    } else if color[w as usize] == color[v as usize] {
                        bipartite = false;
                    }
                }
            }
            if bipartite {
                b += 1;
            }
        }
        ct[mask] = c;
        bt[mask] = b;
    }
    ProfileTable { c: ct, b: bt }
}

pub(crate) fn mask_to_set(mask: usize) -> BTreeSet<u32> {
    (0..usize::BITS)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| i + 1)
        .collect()
}

/// Membership test for the cut-set family: every `i` in `T` must be a cut
/// vertex or a bipartition vertex of `G[(V \ T) ∪ {i}]`, i.e. deleting `i`
/// from that graph must raise `c` or raise `b`.
pub(crate) fn in_cut_family(table: &ProfileTable, mask: usize) -> bool {
    let mut rest = mask;
    while rest != 0 {
        let bit = rest & rest.wrapping_neg();
        rest ^= bit;
        let without = mask ^ bit;
        if table.c[mask] <= table.c[without] && table.b[mask] <= table.b[without] {
            return false;
        }
    }
    true
}

/// All `T ⊆ [n]` in the cut-set family `C(G)`, lexicographically ordered as
/// sorted vertex lists. `∅` is always a member. Guarded at `n = 24` by
/// default (`GRAPH_IDEAL_MAX_N` overrides).
pub fn cut_sets(g: &Graph) -> Result<Vec<BTreeSet<u32>>> {
    let guard = crate::max_n_guard(24);
    if g.n() > guard {
        return Err(Error::ResourceLimit(format!(
            "cut_sets enumerates 2^n subsets; n = {} exceeds guard {}",
            g.n(),
            guard
        )));
    }
    let table = profile_table(g);
    let mut out: Vec<BTreeSet<u32>> = (0..1usize << g.n())
        .filter(|&mask| in_cut_family(&table, mask))
        .map(mask_to_set)
        .collect();
    out.sort_by(|a, b| {
        let av: Vec<u32> = a.iter().copied().collect();
        let bv: Vec<u32> = b.iter().copied().collect();
        av.cmp(&bv)
    });
    Ok(out)
}

/// Re-checks one cut-set member element-wise with fresh BFS profiles,
/// independently of the mask table. Used by tests and scan verification.
pub fn verify_cut_set(g: &Graph, t: &BTreeSet<u32>) -> Result<bool> {
    let base = component_profile(g, t)?;
    for &i in t {
        let mut smaller = t.clone();
        smaller.remove(&i);
        let p = component_profile(g, &smaller)?;
        if base.c <= p.c && base.b <= p.b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A claw `K_{1,3}` in the subgraph sense: a center together with any three
/// of its neighbors, leaves stored sorted. Leaves may be mutually adjacent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Claw {
    pub center: u32,
    pub leaves: [u32; 3],
}

/// All claws of `g`, sorted by `(center, leaves)`; the count is exactly
/// `Σ_v C(deg(v), 3)`.
pub fn claws(g: &Graph) -> Vec<Claw> {
    let mut out = Vec::new();
    for u in 1..=g.n() {
        let nb = g.neighbors(u);
        let d = nb.len();
        if d < 3 {
            continue;
        }
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    out.push(Claw {
                        center: u,
                        leaves: [nb[i], nb[j], nb[k]],
                    });
                }
            }
        }
    }
    out.sort();
    out
}

/// The four fixed forbidden/detection patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PatternGraph {
    C4,
    K4,
    K23,
    Kite,
}

impl PatternGraph {
    /// Vertex count and edge template on `1..=k`.
    pub fn template(self) -> (u32, Vec<(u32, u32)>) {
        match self {
            PatternGraph::C4 => (4, vec![(1, 2), (2, 3), (3, 4), (1, 4)]),
            PatternGraph::K4 => (4, vec![(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]),
            PatternGraph::K23 => (5, vec![(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]),
            PatternGraph::Kite => (5, vec![(1, 2), (2, 3), (3, 4), (1, 4), (2, 4), (3, 5)]),
        }
    }
}

/// First induced embedding of `p` into `g` (lexicographic over vertex
/// subsets, then pattern-vertex images), or `None`.
pub fn detect_induced(g: &Graph, p: PatternGraph) -> Option<Vec<(u32, u32)>> {
    let (k, template) = p.template();
    let k = k as usize;
    if (g.n() as usize) < k {
        return None;
    }
    let verts: Vec<u32> = (1..=g.n()).collect();
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        let chosen: Vec<u32> = subset.iter().map(|&i| verts[i]).collect();
        if let Some(embed) = match_induced(g, &chosen, k, &template) {
            return Some(embed);
        }
        // next k-subset in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if subset[i] != i + verts.len() - k {
                subset[i] += 1;
                for j in i + 1..k {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn match_induced(
    g: &Graph,
    chosen: &[u32],
    k: usize,
    template: &[(u32, u32)],
) -> Option<Vec<(u32, u32)>> {
    // quick filter: induced edge count must match
    let mut induced = 0;
    for i in 0..k {
        for j in i + 1..k {
            if g.has_edge(chosen[i], chosen[j]) {
                induced += 1;
            }
        }
    }
    if induced != template.len() {
        return None;
    }
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        let ok = (0..k).all(|a| {
            (a + 1..k).all(|b| {
                let pat = {
                    let (x, y) = (a as u32 + 1, b as u32 + 1);
                    template.contains(&(x.min(y), x.max(y)))
                };
                pat == g.has_edge(chosen[perm[a]], chosen[perm[b]])
            })
        });
        if ok {
            return Some((0..k).map(|a| (a as u32 + 1, chosen[perm[a]])).collect());
        }
        if !next_permutation(&mut perm) {
            return None;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ShapeTag {
    Path,
    OddCycle,
    EvenCycle,
    Tree,
    OddUnicyclic,
    EvenUnicyclic,
    BicyclicCactus,
    ChordedCycle,
    Other,
}

/// Structural witness attached to a shape tag; `verify_shape` re-checks it
/// against the graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ShapeWitness {
    None,
    /// Vertices of a path in traversal order (covers the whole graph).
    PathOrder(Vec<u32>),
    /// The unique cycle in cyclic order.
    Cycle(Vec<u32>),
    /// Two edge-disjoint cycles of a bicyclic cactus.
    TwoCycles(Vec<u32>, Vec<u32>),
    /// Chord edge plus the cycle of `g` minus the chord, in cyclic order.
    Chord {
        chord: (u32, u32),
        base_cycle: Vec<u32>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphShape {
    pub tag: ShapeTag,
    pub witness: ShapeWitness,
}

/// The unique cycle of a connected unicyclic graph, in cyclic order
/// starting from its smallest vertex, second element the smaller neighbor.
pub fn unicyclic_cycle(g: &Graph) -> Option<Vec<u32>> {
    if g.edge_count() != g.n() as usize || !g.is_connected() {
        return None;
    }
    // peel vertices of degree 1
    let mut deg: Vec<usize> = (0..=g.n())
        .map(|v| if v == 0 { 0 } else { g.degree(v) })
        .collect();
    let adj = g.adjacency();
    let mut removed = vec![false; g.n() as usize + 1];
    let mut stack: Vec<u32> = (1..=g.n()).filter(|&v| deg[v as usize] == 1).collect();
    while let Some(v) = stack.pop() {
        removed[v as usize] = true;
        for &w in &adj[v as usize] {
            if !removed[w as usize] {
                deg[w as usize] -= 1;
                if deg[w as usize] == 1 {
                    stack.push(w);
                }
            }
        }
    }
    let cyc_verts: Vec<u32> = (1..=g.n()).filter(|&v| !removed[v as usize]).collect();
    if cyc_verts.is_empty() {
        return None;
    }
    let start = cyc_verts[0];
    let on_cycle = |v: u32| !removed[v as usize];
    let nbrs: Vec<u32> = adj[start as usize]
        .iter()
        .copied()
        .filter(|&w| on_cycle(w))
        .collect();
    let mut order = vec![start, nbrs[0]];
    loop {
        let cur = *order.last().unwrap();
        let prev = order[order.len() - 2];
        let next = adj[cur as usize]
            .iter()
            .copied()
            .find(|&w| on_cycle(w) && w != prev)?;
        if next == start {
            break;
        }
        order.push(next);
    }
    Some(order)
}

fn dfs_find_cycle(n: u32, edges: &[(u32, u32)]) -> Option<Vec<u32>> {
    let mut adj = vec![Vec::new(); n as usize + 1];
    for (idx, &(u, v)) in edges.iter().enumerate() {
        adj[u as usize].push((v, idx));
        adj[v as usize].push((u, idx));
    }
    let mut parent_edge = vec![usize::MAX; n as usize + 1];
    let mut parent = vec![0u32; n as usize + 1];
    let mut state = vec![0u8; n as usize + 1];
    for root in 1..=n {
        if state[root as usize] != 0 {
            continue;
        }
        let mut stack = vec![(root, usize::MAX)];
        while let Some((v, pe)) = stack.pop() {
            if state[v as usize] != 0 {
                continue;
            }
            state[v as usize] = 1;
            parent_edge[v as usize] = pe;
            for &(w, idx) in &adj[v as usize] {
                if idx == pe {
                    continue;
                }
                if state[w as usize] == 0 {
                    parent[w as usize] = v;
                    stack.push((w, idx));
                } else {
                    // found a cycle: walk v up to w
                    let mut path = vec![v];
                    let mut cur = v;
                    while cur != w {
                        cur = parent[cur as usize];
                        path.push(cur);
                        if path.len() > n as usize + 1 {
                            return None; // unreachable on valid input
                        }
                    }
                    return Some(path);
                }
            }
        }
    }
    None
}

/// Rotates/reflects a cyclic vertex order into canonical form: smallest
/// vertex first, then the smaller of its two cycle neighbors.
fn canonical_cycle(mut cyc: Vec<u32>) -> Vec<u32> {
    let k = cyc.len();
    let min_pos = (0..k).min_by_key(|&i| cyc[i]).unwrap();
    cyc.rotate_left(min_pos);
    if k > 2 && cyc[k - 1] < cyc[1] {
        cyc[1..].reverse();
    }
    cyc
}

/// Recognizes the shape of a connected graph and returns a re-verifiable
/// witness. `|E| = n-1` gives the tree family, `|E| = n` unicyclic with
/// girth parity, `|E| = n+1` distinguishes bicyclic cactus from chorded
/// cycle from everything else.
pub fn recognize_shape(g: &Graph) -> Result<GraphShape> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n() as usize;
    let m = g.edge_count();
    if m == n.saturating_sub(1) || (n == 0 && m == 0) {
        // tree family
        let max_deg = (1..=g.n()).map(|v| g.degree(v)).max().unwrap_or(0);
        if max_deg <= 2 {
            let order = path_order(g);
            return Ok(GraphShape {
                tag: ShapeTag::Path,
                witness: ShapeWitness::PathOrder(order),
            });
        }
        return Ok(GraphShape {
            tag: ShapeTag::Tree,
            witness: ShapeWitness::None,
        });
    }
    if m == n {
        let cyc = unicyclic_cycle(g).expect("connected with |E|=n has a unique cycle");
        let odd = cyc.len() % 2 == 1;
        let bare = cyc.len() == n;
        let tag = match (odd, bare) {
            (true, true) => ShapeTag::OddCycle,
            (false, true) => ShapeTag::EvenCycle,
            (true, false) => ShapeTag::OddUnicyclic,
            (false, false) => ShapeTag::EvenUnicyclic,
        };
        return Ok(GraphShape {
            tag,
            witness: ShapeWitness::Cycle(canonical_cycle(cyc)),
        });
    }
    if m == n + 1 {
        // chord test: some edge e with g\e connected unicyclic and both
        // endpoints of e on its cycle
        for &(u, v) in g.edges() {
            let base = g.without_edge(u, v);
            if !base.is_connected() {
                continue;
            }
            if let Some(cyc) = unicyclic_cycle(&base) {
                if cyc.contains(&u) && cyc.contains(&v) {
                    return Ok(GraphShape {
                        tag: ShapeTag::ChordedCycle,
                        witness: ShapeWitness::Chord {
                            chord: (u, v),
                            base_cycle: canonical_cycle(cyc),
                        },
                    });
                }
            }
        }
        // cactus test: two edge-disjoint cycles
        if let Some(c1) = dfs_find_cycle(g.n(), g.edges()) {
            let c1_edges: BTreeSet<(u32, u32)> = cycle_edges(&c1);
            let rest: Vec<(u32, u32)> = g
                .edges()
                .iter()
                .copied()
                .filter(|e| !c1_edges.contains(e))
                .collect();
            if let Some(c2) = dfs_find_cycle(g.n(), &rest) {
                return Ok(GraphShape {
                    tag: ShapeTag::BicyclicCactus,
                    witness: ShapeWitness::TwoCycles(canonical_cycle(c1), canonical_cycle(c2)),
                });
            }
        }
        return Ok(GraphShape {
            tag: ShapeTag::Other,
            witness: ShapeWitness::None,
        });
    }
    Ok(GraphShape {
        tag: ShapeTag::Other,
        witness: ShapeWitness::None,
    })
}

fn cycle_edges(cyc: &[u32]) -> BTreeSet<(u32, u32)> {
    let k = cyc.len();
    (0..k)
        .map(|i| {
            let (a, b) = (cyc[i], cyc[(i + 1) % k]);
            (a.min(b), a.max(b))
        })
        .collect()
}

fn path_order(g: &Graph) -> Vec<u32> {
    if g.n() == 0 {
        return Vec::new();
    }
    let ends: Vec<u32> = (1..=g.n()).filter(|&v| g.degree(v) <= 1).collect();
    let start = *ends.first().unwrap_or(&1);
    let adj = g.adjacency();
    let mut order = vec![start];
    let mut prev = 0;
    loop {
        let cur = *order.last().unwrap();
        match adj[cur as usize].iter().copied().find(|&w| w != prev) {
            Some(next) => {
                prev = cur;
                order.push(next);
                if order.len() == g.n() as usize {
                    break;
                }
            }
            None => break,
        }
    }
    order
}

/// Checks a shape witness against the graph it claims to describe.
pub fn verify_shape(g: &Graph, shape: &GraphShape) -> bool {
    match (&shape.tag, &shape.witness) {
        (ShapeTag::Path, ShapeWitness::PathOrder(order)) => {
            order.len() == g.n() as usize
                && order.windows(2).all(|w| g.has_edge(w[0], w[1]))
                && g.edge_count() == g.n() as usize - usize::from(g.n() > 0)
        }
        (ShapeTag::Tree, ShapeWitness::None) => {
            g.is_connected() && g.edge_count() + 1 == g.n() as usize
        }
        (ShapeTag::OddCycle | ShapeTag::EvenCycle, ShapeWitness::Cycle(cyc)) => {
            is_cycle_of(g, cyc)
                && cyc.len() == g.n() as usize
                && (cyc.len() % 2 == 1) == (shape.tag == ShapeTag::OddCycle)
        }
        (ShapeTag::OddUnicyclic | ShapeTag::EvenUnicyclic, ShapeWitness::Cycle(cyc)) => {
            is_cycle_of(g, cyc)
                && g.edge_count() == g.n() as usize
                && (cyc.len() % 2 == 1) == (shape.tag == ShapeTag::OddUnicyclic)
        }
        (ShapeTag::BicyclicCactus, ShapeWitness::TwoCycles(c1, c2)) => {
            let e1 = cycle_edges(c1);
            let e2 = cycle_edges(c2);
            is_cycle_of(g, c1) && is_cycle_of(g, c2) && e1.is_disjoint(&e2)
        }
        (ShapeTag::ChordedCycle, ShapeWitness::Chord { chord, base_cycle }) => {
            let (u, v) = *chord;
            if !g.has_edge(u, v) {
                return false;
            }
            let base = g.without_edge(u, v);
            is_cycle_of(&base, base_cycle) && base_cycle.contains(&u) && base_cycle.contains(&v)
        }
        (ShapeTag::Other, ShapeWitness::None) => true,
        _ => false,
    }
}

fn is_cycle_of(g: &Graph, cyc: &[u32]) -> bool {
    let k = cyc.len();
    if k < 3 {
        return false;
    }
    let distinct: BTreeSet<u32> = cyc.iter().copied().collect();
    distinct.len() == k && (0..k).all(|i| g.has_edge(cyc[i], cyc[(i + 1) % k]))
}

/// Convenience constructors used across the test suites.
pub mod builders {
    use super::Graph;

    pub fn path(n: u32) -> Graph {
        Graph::new(n, (1..n).map(|i| (i, i + 1)).collect()).unwrap()
    }

    pub fn cycle(n: u32) -> Graph {
        let mut edges: Vec<(u32, u32)> = (1..n).map(|i| (i, i + 1)).collect();
        edges.push((1, n));
        Graph::new(n, edges).unwrap()
    }

    pub fn complete(n: u32) -> Graph {
        let mut edges = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                edges.push((i, j));
            }
        }
        Graph::new(n, edges).unwrap()
    }

    pub fn star(leaves: u32) -> Graph {
        Graph::new(leaves + 1, (2..=leaves + 1).map(|v| (1, v)).collect()).unwrap()
    }

    /// Triangle 1,2,3 with pendant vertices 4,5,6 attached to 1,2,3.
    pub fn net() -> Graph {
        Graph::new(6, vec![(1, 2), (1, 3), (2, 3), (1, 4), (2, 5), (3, 6)]).unwrap()
    }

    /// 4-cycle 1-2-3-4 with chord {2,4} and pendant 5 at 3.
    pub fn kite() -> Graph {
        Graph::new(5, vec![(1, 2), (2, 3), (3, 4), (1, 4), (2, 4), (3, 5)]).unwrap()
    }

    /// Cycle on `n` vertices plus the chord {u, v}.
    pub fn chorded_cycle(n: u32, u: u32, v: u32) -> Graph {
        let mut edges: Vec<(u32, u32)> = (1..n).map(|i| (i, i + 1)).collect();
        edges.push((1, n));
        edges.push((u.min(v), u.max(v)));
        Graph::new(n, edges).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::builders::*;
    use super::*;

    fn set(vs: &[u32]) -> BTreeSet<u32> {
        vs.iter().copied().collect()
    }

    #[test]
    fn parse_basic() {
        let p3 = parse_graph("3 2\n1 2\n2 3").unwrap();
        assert_eq!(p3, path(3));
        let c3 = parse_graph("3 3\n1 2\n2 3\n1 3").unwrap();
        assert_eq!(c3, cycle(3));
    }

    #[test]
    fn parse_reports_duplicate_with_line() {
        let err = parse_graph("3 2\n1 2\n1 2").unwrap_err();
        assert_eq!(
            err,
            Error::DuplicateEdge {
                line: 3,
                u: 1,
                v: 2
            }
        );
    }

    #[test]
    fn parse_rejects_loops_and_range() {
        assert!(matches!(
            parse_graph("3 1\n2 2"),
            Err(Error::LoopEdge { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("3 1\n1 4"),
            Err(Error::EndpointOutOfRange {
                line: 2,
                v: 4,
                n: 3
            })
        ));
    }

    #[test]
    fn parse_allows_comments_and_isolated_vertices() {
        let g = parse_graph("# a path plus an isolated vertex\n4 2\n1 2\n2 3").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.degree(4), 0);
    }

    #[test]
    fn profile_examples() {
        let p = component_profile(&path(3), &set(&[])).unwrap();
        assert_eq!((p.c, p.b), (1, 1));

        let p = component_profile(&star(3), &set(&[1])).unwrap();
        assert_eq!((p.c, p.b), (3, 3));

        let p = component_profile(&cycle(5), &set(&[1, 3])).unwrap();
        assert_eq!((p.c, p.b), (2, 2));
        let verts: Vec<Vec<u32>> = p.components.iter().map(|c| c.vertices.clone()).collect();
        assert_eq!(verts, vec![vec![2], vec![4, 5]]);
    }

    #[test]
    fn profile_rejects_out_of_range() {
        assert!(matches!(
            component_profile(&path(3), &set(&[7])),
            Err(Error::VertexOutOfRange { v: 7, n: 3 })
        ));
    }

    #[test]
    fn cut_sets_examples() {
        assert_eq!(cut_sets(&path(3)).unwrap(), vec![set(&[]), set(&[2])]);
        assert_eq!(
            cut_sets(&cycle(3)).unwrap(),
            vec![set(&[]), set(&[1]), set(&[2]), set(&[3])]
        );
        assert_eq!(cut_sets(&star(3)).unwrap(), vec![set(&[]), set(&[1])]);
    }

    #[test]
    fn cut_sets_members_reverify() {
        for g in [path(5), cycle(6), star(4), net(), kite(), complete(4)] {
            for t in cut_sets(&g).unwrap() {
                assert!(
                    verify_cut_set(&g, &t).unwrap(),
                    "{t:?} failed on {}",
                    g.encode()
                );
            }
        }
    }

    #[test]
    fn claw_counts() {
        assert!(claws(&path(4)).is_empty());
        let k13 = claws(&star(3));
        assert_eq!(
            k13,
            vec![Claw {
                center: 1,
                leaves: [2, 3, 4]
            }]
        );
        let net_claws = claws(&net());
        assert_eq!(net_claws.len(), 3);
        let expected: usize = (1..=6).map(|v| binom(net().degree(v), 3)).sum();
        assert_eq!(net_claws.len(), expected);
    }

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn shapes() {
        assert_eq!(recognize_shape(&cycle(7)).unwrap().tag, ShapeTag::OddCycle);
        assert_eq!(recognize_shape(&path(4)).unwrap().tag, ShapeTag::Path);
        assert_eq!(recognize_shape(&star(3)).unwrap().tag, ShapeTag::Tree);
        assert_eq!(
            recognize_shape(&kite()).unwrap().tag,
            ShapeTag::ChordedCycle
        );
        if let ShapeWitness::Chord { chord, .. } = recognize_shape(&kite()).unwrap().witness {
            assert_eq!(chord, (2, 4));
        } else {
            panic!("expected chord witness");
        }
        // two triangles joined by one edge
        let g = Graph::new(
            6,
            vec![(1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6), (3, 4)],
        )
        .unwrap();
        assert_eq!(recognize_shape(&g).unwrap().tag, ShapeTag::BicyclicCactus);
        // theta graph with all paths >= 2 is Other
        let theta = Graph::new(5, vec![(1, 2), (2, 3), (1, 4), (4, 3), (1, 5), (5, 3)]).unwrap();
        assert_eq!(recognize_shape(&theta).unwrap().tag, ShapeTag::Other);
        assert!(matches!(
            recognize_shape(&Graph::new(4, vec![(1, 2), (3, 4)]).unwrap()),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn shape_witnesses_reverify() {
        for g in [
            path(1),
            path(5),
            cycle(4),
            cycle(7),
            star(4),
            net(),
            kite(),
            chorded_cycle(5, 1, 3),
            chorded_cycle(6, 1, 3),
        ] {
            let s = recognize_shape(&g).unwrap();
            assert!(verify_shape(&g, &s), "witness failed for {}", g.encode());
        }
    }

    #[test]
    fn induced_patterns() {
        let g = chorded_cycle(5, 1, 3);
        let hit = detect_induced(&g, PatternGraph::C4).unwrap();
        let image: BTreeSet<u32> = hit.iter().map(|&(_, v)| v).collect();
        assert_eq!(image, set(&[1, 3, 4, 5]));
        assert!(detect_induced(&chorded_cycle(7, 1, 3), PatternGraph::C4).is_none());
        assert!(detect_induced(&kite(), PatternGraph::Kite).is_some());
        assert!(detect_induced(&complete(4), PatternGraph::K4).is_some());
        assert!(detect_induced(&complete(4), PatternGraph::K23).is_none());
        let k23 = Graph::new(5, PatternGraph::K23.template().1).unwrap();
        assert!(detect_induced(&k23, PatternGraph::K23).is_some());
    }

    #[test]
    fn unicyclic_cycle_extraction() {
        assert_eq!(unicyclic_cycle(&net()).unwrap(), vec![1, 2, 3]);
        assert_eq!(unicyclic_cycle(&cycle(5)).unwrap().len(), 5);
        assert!(unicyclic_cycle(&path(4)).is_none());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_graph() -> impl Strategy<Value = Graph> {
            (1u32..8).prop_flat_map(|n| {
                let pairs: Vec<(u32, u32)> = (1..=n)
                    .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
                    .collect();
                let len = pairs.len();
                proptest::bits::u64::masked((1u64 << len) - 1).prop_map(move |mask| {
                    let edges: Vec<(u32, u32)> = pairs
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| mask >> k & 1 == 1)
                        .map(|(_, &e)| e)
                        .collect();
                    Graph::new(n, edges).unwrap()
                })
            })
        }

        proptest! {
            #[test]
            fn profile_partitions_complement(g in arb_graph(), t_bits in any::<u64>()) {
                let t: BTreeSet<u32> = (1..=g.n()).filter(|v| t_bits >> (v - 1) & 1 == 1).collect();
                let p = component_profile(&g, &t).unwrap();
                let mut seen: Vec<u32> = p.components.iter().flat_map(|c| c.vertices.clone()).collect();
                seen.sort_unstable();
                let expected: Vec<u32> = (1..=g.n()).filter(|v| !t.contains(v)).collect();
                prop_assert_eq!(seen, expected);
                prop_assert!(p.b <= p.c);
                for c in &p.components {
                    if let Some((a, b)) = &c.parts {
                        let mut joined: Vec<u32> = a.iter().chain(b.iter()).copied().collect();
                        joined.sort_unstable();
                        prop_assert_eq!(&joined, &c.vertices);
                    }
                }
            }

            #[test]
            fn vertex_removal_bounds_component_change(g in arb_graph(), v in 1u32..8) {
                prop_assume!(v <= g.n());
                let before = component_profile(&g, &BTreeSet::new()).unwrap().c as i64;
                let t: BTreeSet<u32> = [v].into_iter().collect();
                let after = component_profile(&g, &t).unwrap().c as i64;
                let deg = g.degree(v) as i64;
                prop_assert!(after - before <= (deg - 1).max(0));
                prop_assert!(before - after <= 1);
            }

            #[test]
            fn claw_count_formula(g in arb_graph()) {
                let count = claws(&g).len();
                let expected: usize = (1..=g.n())
                    .map(|v| {
                        let d = g.degree(v);
                        if d < 3 { 0 } else { d * (d - 1) * (d - 2) / 6 }
                    })
                    .sum();
                prop_assert_eq!(count, expected);
            }

            #[test]
            fn shapes_verify_on_connected_graphs(g in arb_graph()) {
                prop_assume!(g.is_connected());
                let s = recognize_shape(&g).unwrap();
                prop_assert!(verify_shape(&g, &s));
            }
        }
    }
}
