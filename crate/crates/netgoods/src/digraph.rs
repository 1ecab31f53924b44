//! Directed graphs with bit-row adjacency, plus the structural analysis the
//! rest of the toolkit is built on: strongly connected components, directed
//! cycle parity, symmetrization operators, and seeded G(n,p) sampling.
//!
//! Nodes are `0..n`. An arc `i -> j` means `i` benefits from `j`; the set of
//! such `j` is the out-neighborhood of `i`. Self-loops are rejected
//! everywhere. Graphs are immutable after construction and all operations
//! here are pure, so values can be shared freely across threads.

use std::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

/// A subset of the nodes `0..n` of a particular graph, stored as a bitset.
///
/// Every set remembers its universe size `n`; combining sets from different
/// universes is a programming error and panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NodeSet {
    n: usize,
    words: Vec<u64>,
}

impl NodeSet {
    pub fn empty(n: usize) -> Self {
        NodeSet {
            n,
            words: vec![0; n.div_ceil(WORD_BITS)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = NodeSet::empty(n);
        for w in &mut s.words {
            *w = !0;
        }
        s.clear_tail();
        s
    }

    pub fn from_members<I: IntoIterator<Item = usize>>(n: usize, members: I) -> Result<Self> {
        let mut s = NodeSet::empty(n);
        for i in members {
            if i >= n {
                return Err(Error::NodeOutOfRange { node: i, n });
            }
            s.insert(i);
        }
        Ok(s)
    }

    /// Universe size this set is tied to (not the member count).
    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.n);
        self.words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
    }

    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.n);
        self.words[i / WORD_BITS] &= !(1 << (i % WORD_BITS));
    }

    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.n);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &NodeSet) {
        self.check(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &NodeSet) {
        self.check(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn subtract(&mut self, other: &NodeSet) {
        self.check(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn complement(&self) -> NodeSet {
        let mut out = self.clone();
        for w in &mut out.words {
            *w = !*w;
        }
        out.clear_tail();
        out
    }

    pub fn intersects(&self, other: &NodeSet) -> bool {
        self.check(other);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn intersection_len(&self, other: &NodeSet) -> usize {
        self.check(other);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset_of(&self, other: &NodeSet) -> bool {
        self.check(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &NodeSet) -> bool {
        !self.intersects(other)
    }

    /// Lowest member, if any.
    pub fn first(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD_BITS + b)
            })
        })
    }

    /// Members in ascending order.
    pub fn members(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn clear_tail(&mut self) {
        let used = self.n % WORD_BITS;
        if used != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
        if self.n == 0 {
            self.words.clear();
        }
    }

    fn check(&self, other: &NodeSet) {
        assert_eq!(self.n, other.n, "node sets from different universes");
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for NodeSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// Report on the parity of directed cycles.
///
/// Acyclicity and the presence of an odd cycle are always decided exactly.
/// The even-cycle question falls back to bounded simple-cycle enumeration
/// when no shortcut applies; `has_even_cycle` is `None` when that budget ran
/// out, and `enumerated` records whether enumeration (rather than the
/// component-coloring shortcut) settled the answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleParityReport {
    pub is_acyclic: bool,
    pub has_odd_cycle: bool,
    pub has_even_cycle: Option<bool>,
    pub enumerated: bool,
}

/// Immutable directed graph on nodes `0..n` without self-loops.
#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    out_rows: Vec<NodeSet>,
    in_rows: Vec<NodeSet>,
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        Digraph {
            n,
            out_rows: vec![NodeSet::empty(n); n],
            in_rows: vec![NodeSet::empty(n); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Digraph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n {
            return Err(Error::NodeOutOfRange { node: u, n: self.n });
        }
        if v >= self.n {
            return Err(Error::NodeOutOfRange { node: v, n: self.n });
        }
        if u == v {
            return Err(Error::SelfLoop { node: u });
        }
        if self.out_rows[u].contains(v) {
            return Err(Error::DuplicateEdge { u, v });
        }
        self.out_rows[u].insert(v);
        self.in_rows[v].insert(u);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.out_rows.iter().map(NodeSet::len).sum()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.out_rows[u].contains(v)
    }

    /// Out-neighbors of `i`: the nodes whose effort benefits `i`.
    pub fn out_neighbors(&self, i: usize) -> Result<&NodeSet> {
        self.out_rows
            .get(i)
            .ok_or(Error::NodeOutOfRange { node: i, n: self.n })
    }

    pub fn in_neighbors(&self, i: usize) -> Result<&NodeSet> {
        self.in_rows
            .get(i)
            .ok_or(Error::NodeOutOfRange { node: i, n: self.n })
    }

    pub(crate) fn out_row(&self, i: usize) -> &NodeSet {
        &self.out_rows[i]
    }

    pub(crate) fn in_row(&self, i: usize) -> &NodeSet {
        &self.in_rows[i]
    }

    /// Arcs in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.arc_count());
        for u in 0..self.n {
            for v in self.out_rows[u].iter() {
                out.push((u, v));
            }
        }
        out
    }

    pub fn transpose(&self) -> Digraph {
        Digraph {
            n: self.n,
            out_rows: self.in_rows.clone(),
            in_rows: self.out_rows.clone(),
        }
    }

    /// Edgewise inclusion: every arc of `self` is an arc of `other`.
    pub fn is_subgraph_of(&self, other: &Digraph) -> bool {
        self.n == other.n && (0..self.n).all(|u| self.out_rows[u].is_subset_of(&other.out_rows[u]))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|u| self.out_rows[u] == self.in_rows[u])
    }

    /// Undirected closure: arc in either direction becomes a bidirectional pair.
    pub fn symmetrize(&self) -> Digraph {
        let mut g = self.clone();
        for u in 0..self.n {
            g.out_rows[u].union_with(&self.in_rows[u]);
            g.in_rows[u].union_with(&self.out_rows[u]);
        }
        g
    }

    /// Arcs whose reverse is absent, in lexicographic order.
    pub fn one_way_arcs(&self) -> Vec<(usize, usize)> {
        self.edges()
            .into_iter()
            .filter(|&(u, v)| !self.has_edge(v, u))
            .collect()
    }

    /// Every graph between `self` and its symmetrization, obtained by adding
    /// subsets of the missing reverse arcs. The result always starts with
    /// `self` and ends with the full symmetrization.
    pub fn partial_symmetrizations(&self, cap: u64) -> Result<Vec<Digraph>> {
        let arcs = self.one_way_arcs();
        let a = arcs.len() as u32;
        if a >= 63 || 1u64 << a > cap {
            return Err(Error::SymmetrizationCapExceeded { arcs: a, cap });
        }
        let mut out = Vec::with_capacity(1 << a);
        for mask in 0u64..(1 << a) {
            let mut g = self.clone();
            for (k, &(u, v)) in arcs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    g.out_rows[v].insert(u);
                    g.in_rows[u].insert(v);
                }
            }
            out.push(g);
        }
        Ok(out)
    }

    /// Strongly connected components as sorted node sets, in a topological
    /// order of the condensation (sources first).
    pub fn strongly_connected_components(&self) -> Vec<NodeSet> {
        let comps = self.tarjan();
        // Tarjan emits components in reverse topological order.
        comps.into_iter().rev().collect()
    }

    fn tarjan(&self) -> Vec<NodeSet> {
        const UNVISITED: usize = usize::MAX;
        let n = self.n;
        let mut index = vec![UNVISITED; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut stack: Vec<usize> = Vec::new();
        let mut next_index = 0usize;
        let mut comps: Vec<NodeSet> = Vec::new();

        // Iterative DFS; each frame remembers which neighbor to resume at.
        struct Frame {
            node: usize,
            neighbors: Vec<usize>,
            next: usize,
        }

        for start in 0..n {
            if index[start] != UNVISITED {
                continue;
            }
            let mut call: Vec<Frame> = vec![Frame {
                node: start,
                neighbors: self.out_rows[start].members(),
                next: 0,
            }];
            index[start] = next_index;
            low[start] = next_index;
            next_index += 1;
            stack.push(start);
            on_stack[start] = true;

            while let Some(frame) = call.last_mut() {
                let v = frame.node;
                if frame.next < frame.neighbors.len() {
                    let w = frame.neighbors[frame.next];
                    frame.next += 1;
                    if index[w] == UNVISITED {
                        index[w] = next_index;
                        low[w] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push(Frame {
                            node: w,
                            neighbors: self.out_rows[w].members(),
                            next: 0,
                        });
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    if low[v] == index[v] {
                        let mut comp = NodeSet::empty(n);
                        loop {
                            let w = stack.pop().expect("scc stack underflow");
                            on_stack[w] = false;
                            comp.insert(w);
                            if w == v {
                                break;
                            }
                        }
                        comps.push(comp);
                    }
                    call.pop();
                    if let Some(parent) = call.last() {
                        let p = parent.node;
                        low[p] = low[p].min(low[v]);
                    }
                }
            }
        }
        comps
    }

    pub fn is_acyclic(&self) -> bool {
        self.strongly_connected_components()
            .iter()
            .all(|c| c.len() == 1)
    }

    /// Classify the parities of directed cycles. See [`CycleParityReport`].
    ///
    /// `exhaustive_limit` bounds how many simple cycles the fallback
    /// enumeration may produce before giving up on the even-cycle question.
    pub fn cycle_parity(&self, exhaustive_limit: u64) -> CycleParityReport {
        let comps = self.strongly_connected_components();
        if comps.iter().all(|c| c.len() == 1) {
            return CycleParityReport {
                is_acyclic: true,
                has_odd_cycle: false,
                has_even_cycle: Some(false),
                enumerated: false,
            };
        }

        // An SCC admits a 2-coloring where every internal arc flips color iff
        // all of its closed walks (hence all of its cycles) are even.
        let mut has_odd = false;
        let mut even_scc_with_cycle = false;
        for comp in &comps {
            if comp.len() < 2 {
                continue;
            }
            if self.scc_two_colorable(comp) {
                even_scc_with_cycle = true;
            } else {
                has_odd = true;
            }
        }

        if !has_odd {
            // Cycles exist and every one of them is even.
            return CycleParityReport {
                is_acyclic: false,
                has_odd_cycle: false,
                has_even_cycle: Some(true),
                enumerated: false,
            };
        }
        if even_scc_with_cycle || self.has_two_cycle() {
            return CycleParityReport {
                is_acyclic: false,
                has_odd_cycle: true,
                has_even_cycle: Some(true),
                enumerated: false,
            };
        }

        // Odd cycles exist and no shortcut produced an even one; enumerate.
        let has_even = self.enumerate_even_cycle(exhaustive_limit);
        CycleParityReport {
            is_acyclic: false,
            has_odd_cycle: true,
            has_even_cycle: has_even,
            enumerated: has_even.is_some(),
        }
    }

    fn has_two_cycle(&self) -> bool {
        (0..self.n).any(|u| self.out_rows[u].intersects(&self.in_rows[u]))
    }

    fn scc_two_colorable(&self, comp: &NodeSet) -> bool {
        let root = comp.first().expect("nonempty component");
        let mut color = vec![u8::MAX; self.n];
        color[root] = 0;
        let mut queue = vec![root];
        while let Some(u) = queue.pop() {
            for v in self.out_rows[u].iter() {
                if !comp.contains(v) {
                    continue;
                }
                let want = color[u] ^ 1;
                if color[v] == u8::MAX {
                    color[v] = want;
                    queue.push(v);
                } else if color[v] != want {
                    return false;
                }
            }
        }
        true
    }

    /// Search for an even simple cycle, enumerating at most `limit` cycles.
    /// `Some(answer)` when decided; `None` when the budget ran out first.
    fn enumerate_even_cycle(&self, limit: u64) -> Option<bool> {
        let mut seen = 0u64;
        let mut path = Vec::new();
        let mut on_path = NodeSet::empty(self.n);
        for root in 0..self.n {
            path.clear();
            debug_assert!(on_path.is_empty());
            match self.even_cycle_dfs(root, root, &mut path, &mut on_path, &mut seen, limit) {
                CycleScan::FoundEven => return Some(true),
                CycleScan::Budget => return None,
                CycleScan::Done => {}
            }
        }
        Some(false)
    }

    fn even_cycle_dfs(
        &self,
        root: usize,
        u: usize,
        path: &mut Vec<usize>,
        on_path: &mut NodeSet,
        seen: &mut u64,
        limit: u64,
    ) -> CycleScan {
        path.push(u);
        on_path.insert(u);
        for v in self.out_rows[u].iter() {
            if v == root {
                *seen += 1;
                if path.len().is_multiple_of(2) {
                    return CycleScan::FoundEven;
                }
                // A graph with exactly `limit` cycles still counts as
                // decided; give up only on the cycle past the cap.
                if *seen > limit {
                    return CycleScan::Budget;
                }
            } else if v > root && !on_path.contains(v) {
                // Restricting to nodes above the root makes each simple cycle
                // appear exactly once, anchored at its smallest node.
                match self.even_cycle_dfs(root, v, path, on_path, seen, limit) {
                    CycleScan::Done => {}
                    other => return other,
                }
            }
        }
        path.pop();
        on_path.remove(u);
        CycleScan::Done
    }

    /// Sample `G(n, p)`: each ordered pair `(i, j)`, `i != j`, becomes an arc
    /// independently with probability `p`. Deterministic per seed.
    pub fn sample_gnp(n: usize, p: f64, seed: u64) -> Result<Digraph> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Digraph::sample_gnp_with(n, p, &mut rng)
    }

    pub fn sample_gnp_with<R: Rng>(n: usize, p: f64, rng: &mut R) -> Result<Digraph> {
        if !(0.0..=1.0).contains(&p) || p.is_nan() {
            return Err(Error::InvalidProbability(p));
        }
        let mut g = Digraph::empty(n);
        for u in 0..n {
            for v in 0..n {
                if u != v && rng.random_bool(p) {
                    g.out_rows[u].insert(v);
                    g.in_rows[v].insert(u);
                }
            }
        }
        Ok(g)
    }

    /// DOT rendering for external viewers.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("digraph {name} {{\n");
        for i in 0..self.n {
            s.push_str(&format!("  {i};\n"));
        }
        for (u, v) in self.edges() {
            s.push_str(&format!("  {u} -> {v};\n"));
        }
        s.push_str("}\n");
        s
    }
}

enum CycleScan {
    FoundEven,
    Budget,
    Done,
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Serialize for Digraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GraphDoc {
            n: self.n,
            edges: self.edges(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Digraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let doc = GraphDoc::deserialize(deserializer)?;
        Digraph::from_edges(doc.n, &doc.edges).map_err(D::Error::custom)
    }
}

/// JSON form of a graph: `{"n": 3, "edges": [[0,1],[1,2]]}`.
#[derive(Serialize, Deserialize)]
struct GraphDoc {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// Parse the edge-list text format.
///
/// The first significant line is the node count `n`; every following
/// significant line is `u v` (whitespace-separated, 0-indexed, meaning
/// `u -> v`). Lines starting with `#` are comments; blank lines are skipped.
/// Self-loops and duplicate arcs are rejected with their line number.
pub fn parse_edge_list(text: &str) -> Result<Digraph> {
    let mut g: Option<Digraph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match g {
            None => {
                let n: usize = line.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("expected node count, got {line:?}"),
                })?;
                g = Some(Digraph::empty(n));
            }
            Some(ref mut g) => {
                let mut it = line.split_whitespace();
                let (u, v) = match (it.next(), it.next(), it.next()) {
                    (Some(a), Some(b), None) => {
                        let u: usize = a.parse().map_err(|_| Error::Parse {
                            line: line_no,
                            msg: format!("invalid node id {a:?}"),
                        })?;
                        let v: usize = b.parse().map_err(|_| Error::Parse {
                            line: line_no,
                            msg: format!("invalid node id {b:?}"),
                        })?;
                        (u, v)
                    }
                    _ => {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: format!("expected `u v`, got {line:?}"),
                        })
                    }
                };
                g.add_edge(u, v).map_err(|e| Error::Parse {
                    line: line_no,
                    msg: e.to_string(),
                })?;
            }
        }
    }
    g.ok_or(Error::Parse {
        line: 0,
        msg: "empty document: missing node count".into(),
    })
}

/// Parse the JSON graph format (`GraphDoc` schema).
pub fn parse_json(text: &str) -> Result<Digraph> {
    serde_json::from_str(text).map_err(|e| Error::GraphDoc(e.to_string()))
}

/// Render the edge-list text format; inverse of [`parse_edge_list`].
pub fn to_edge_list(g: &Digraph) -> String {
    let mut s = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn three_cycle() -> Digraph {
        Digraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    pub(crate) fn two_clique() -> Digraph {
        Digraph::from_edges(2, &[(0, 1), (1, 0)]).unwrap()
    }

    fn sink_dag() -> Digraph {
        Digraph::from_edges(3, &[(0, 2), (1, 2)]).unwrap()
    }

    #[test]
    fn parse_canonical_graphs() {
        let g = parse_edge_list("3\n0 1\n1 2\n2 0").unwrap();
        assert_eq!(g, three_cycle());

        let g = parse_edge_list("1").unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.arc_count(), 0);

        let g = parse_edge_list("2\n0 1\n1 0").unwrap();
        assert_eq!(g, two_clique());

        let g = parse_edge_list("# comment\n\n3\n# another\n0 2\n1 2\n").unwrap();
        assert_eq!(g, sink_dag());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match parse_edge_list("3\n0 1\nbogus") {
            Err(Error::Parse { line: 3, .. }) => {}
            other => panic!("expected parse error on line 3, got {other:?}"),
        }
        match parse_edge_list("2\n0 5") {
            Err(Error::Parse { line: 2, msg }) => assert!(msg.contains("out of range")),
            other => panic!("expected range error, got {other:?}"),
        }
        match parse_edge_list("2\n1 1") {
            Err(Error::Parse { line: 2, msg }) => assert!(msg.contains("self-loop")),
            other => panic!("expected self-loop error, got {other:?}"),
        }
        match parse_edge_list("2\n0 1\n0 1") {
            Err(Error::Parse { line: 3, msg }) => assert!(msg.contains("duplicate")),
            other => panic!("expected duplicate error, got {other:?}"),
        }
        assert!(parse_edge_list("# only comments\n").is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = three_cycle();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"n":3,"edges":[[0,1],[1,2],[2,0]]}"#);
        let back = parse_json(&s).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn out_neighbors_basics() {
        assert_eq!(three_cycle().out_neighbors(0).unwrap().members(), vec![1]);
        assert_eq!(
            Digraph::empty(1).out_neighbors(0).unwrap().members(),
            Vec::<usize>::new()
        );
        assert_eq!(two_clique().out_neighbors(1).unwrap().members(), vec![0]);
        assert!(matches!(
            two_clique().out_neighbors(7),
            Err(Error::NodeOutOfRange { node: 7, n: 2 })
        ));
    }

    #[test]
    fn scc_partition() {
        let comps = three_cycle().strongly_connected_components();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].members(), vec![0, 1, 2]);

        let chain = Digraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let comps = chain.strongly_connected_components();
        assert_eq!(comps.len(), 3);
        // Topological order of the condensation: source first.
        assert_eq!(comps[0].members(), vec![0]);
        assert_eq!(comps[2].members(), vec![2]);
    }

    #[test]
    fn cycle_parity_canonical() {
        let r = three_cycle().cycle_parity(1000);
        assert!(!r.is_acyclic);
        assert!(r.has_odd_cycle);
        assert_eq!(r.has_even_cycle, Some(false));
        assert!(r.enumerated);

        let r = two_clique().cycle_parity(1000);
        assert!(!r.is_acyclic);
        assert!(!r.has_odd_cycle);
        assert_eq!(r.has_even_cycle, Some(true));
        assert!(!r.enumerated);

        let r = sink_dag().cycle_parity(1000);
        assert!(r.is_acyclic);
        assert!(!r.has_odd_cycle);
        assert_eq!(r.has_even_cycle, Some(false));
    }

    #[test]
    fn cycle_parity_budget_runs_out() {
        // Two disjoint odd cycles and nothing even: a limit of 1 cycle stops
        // the enumeration before it can rule the even cycle out.
        let g = Digraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        let r = g.cycle_parity(1);
        assert!(r.has_odd_cycle);
        assert_eq!(r.has_even_cycle, None);
        assert!(!r.enumerated);
        // Exactly at the cap is still decided.
        let r = g.cycle_parity(2);
        assert_eq!(r.has_even_cycle, Some(false));
        assert!(r.enumerated);
        let r = g.cycle_parity(100);
        assert_eq!(r.has_even_cycle, Some(false));
    }

    #[test]
    fn symmetrize_and_one_way() {
        let s = three_cycle().symmetrize();
        assert_eq!(s.arc_count(), 6);
        assert!(s.is_symmetric());
        assert_eq!(s.symmetrize(), s);

        let g = Digraph::from_edges(2, &[(0, 1)]).unwrap();
        let s = g.symmetrize();
        assert!(s.has_edge(0, 1) && s.has_edge(1, 0));
        assert_eq!(g.one_way_arcs(), vec![(0, 1)]);
        assert!(two_clique().one_way_arcs().is_empty());
    }

    #[test]
    fn partial_symmetrizations_enumeration() {
        let g = Digraph::from_edges(2, &[(0, 1)]).unwrap();
        let ps = g.partial_symmetrizations(16).unwrap();
        assert_eq!(ps.len(), 2);
        assert_eq!(ps[0], g);
        assert_eq!(ps[1], g.symmetrize());

        let sym = two_clique();
        assert_eq!(sym.partial_symmetrizations(16).unwrap(), vec![sym.clone()]);

        let ps = three_cycle().partial_symmetrizations(16).unwrap();
        assert_eq!(ps.len(), 8);
        for h in &ps {
            assert!(three_cycle().is_subgraph_of(h));
            assert!(h.is_subgraph_of(&three_cycle().symmetrize()));
        }

        assert!(matches!(
            three_cycle().partial_symmetrizations(4),
            Err(Error::SymmetrizationCapExceeded { arcs: 3, cap: 4 })
        ));
    }

    #[test]
    fn gnp_extremes_and_reproducibility() {
        let empty = Digraph::sample_gnp(5, 0.0, 7).unwrap();
        assert_eq!(empty.arc_count(), 0);
        let full = Digraph::sample_gnp(5, 1.0, 7).unwrap();
        assert_eq!(full.arc_count(), 20);

        let a = Digraph::sample_gnp(10, 0.5, 42).unwrap();
        let b = Digraph::sample_gnp(10, 0.5, 42).unwrap();
        assert_eq!(a, b);
        assert!((10..=80).contains(&a.arc_count()));

        assert!(Digraph::sample_gnp(3, 1.5, 0).is_err());
        assert!(Digraph::sample_gnp(3, f64::NAN, 0).is_err());
    }

    // Brute-force cycle scan, independent of the production path: checks
    // every cyclic sequence of every subset for arc-completeness.
    pub(crate) fn brute_cycle_lengths(g: &Digraph) -> Vec<usize> {
        let n = g.n();
        let mut lengths = Vec::new();
        for mask in 1u32..(1 << n) {
            let nodes: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if nodes.len() < 2 {
                continue;
            }
            let first = nodes[0];
            let rest = &nodes[1..];
            let mut perm = rest.to_vec();
            permute(&mut perm, 0, &mut |order| {
                let mut seq = vec![first];
                seq.extend_from_slice(order);
                let closed = seq.windows(2).all(|w| g.has_edge(w[0], w[1]))
                    && g.has_edge(*seq.last().unwrap(), first);
                if closed {
                    lengths.push(seq.len());
                }
            });
        }
        lengths
    }

    fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
        if k == items.len() {
            visit(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permute(items, k + 1, visit);
            items.swap(k, i);
        }
    }

    #[test]
    fn cycle_parity_matches_brute_force_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for n in 2..=7usize {
            for _ in 0..60 {
                let p = rng.random_range(0.05..0.6);
                let g = Digraph::sample_gnp_with(n, p, &mut rng).unwrap();
                let lengths = brute_cycle_lengths(&g);
                let r = g.cycle_parity(1_000_000);
                assert_eq!(r.is_acyclic, lengths.is_empty(), "{g:?}");
                assert_eq!(r.has_odd_cycle, lengths.iter().any(|l| l % 2 == 1), "{g:?}");
                assert_eq!(
                    r.has_even_cycle,
                    Some(lengths.iter().any(|l| l % 2 == 0)),
                    "{g:?}"
                );
            }
        }
    }

    #[test]
    fn acyclicity_matches_topological_sort() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let g = Digraph::sample_gnp_with(6, 0.3, &mut rng).unwrap();
            assert_eq!(g.is_acyclic(), topological_sort_exists(&g));
        }
    }

    fn topological_sort_exists(g: &Digraph) -> bool {
        let n = g.n();
        let mut indeg: Vec<usize> = (0..n).map(|i| g.in_row(i).len()).collect();
        let mut queue: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut removed = 0;
        while let Some(u) = queue.pop() {
            removed += 1;
            for v in g.out_row(u).iter() {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    queue.push(v);
                }
            }
        }
        removed == n
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        /// Arbitrary digraph on up to 8 nodes via an edge bitmask.
        fn arb_digraph() -> impl Strategy<Value = Digraph> {
            (0usize..=8).prop_flat_map(|n| {
                let pairs: Vec<(usize, usize)> = (0..n)
                    .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
                    .collect();
                let bits = pairs.len();
                (Just(pairs), proptest::bits::u64::between(0, bits.max(1))).prop_map(
                    move |(pairs, mask)| {
                        let edges: Vec<_> = pairs
                            .iter()
                            .enumerate()
                            .filter(|(k, _)| mask >> k & 1 == 1)
                            .map(|(_, &e)| e)
                            .collect();
                        Digraph::from_edges(n, &edges).expect("mask edges are valid")
                    },
                )
            })
        }

        proptest! {
            #[test]
            fn edge_list_round_trips(g in arb_digraph()) {
                let text = to_edge_list(&g);
                prop_assert_eq!(parse_edge_list(&text).unwrap(), g);
            }

            #[test]
            fn json_round_trips(g in arb_digraph()) {
                let text = serde_json::to_string(&g).unwrap();
                prop_assert_eq!(serde_json::from_str::<Digraph>(&text).unwrap(), g);
            }

            #[test]
            fn symmetrize_is_idempotent_and_contains_input(g in arb_digraph()) {
                let s = g.symmetrize();
                prop_assert!(s.is_symmetric());
                prop_assert_eq!(s.symmetrize(), s.clone());
                prop_assert!(g.is_subgraph_of(&s));
            }

            #[test]
            fn partial_symmetrizations_are_sandwiched(g in arb_digraph()) {
                let a = g.one_way_arcs().len();
                prop_assume!(a <= 6);
                let ps = g.partial_symmetrizations(64).unwrap();
                prop_assert_eq!(ps.len(), 1 << a);
                let s = g.symmetrize();
                for h in &ps {
                    prop_assert!(g.is_subgraph_of(h));
                    prop_assert!(h.is_subgraph_of(&s));
                }
            }

            #[test]
            fn parity_flags_are_consistent(g in arb_digraph()) {
                let r = g.cycle_parity(1_000_000);
                if r.is_acyclic {
                    prop_assert!(!r.has_odd_cycle);
                    prop_assert_eq!(r.has_even_cycle, Some(false));
                } else {
                    prop_assert!(r.has_odd_cycle || r.has_even_cycle == Some(true));
                }
            }
        }
    }

    #[test]
    fn nodeset_operations() {
        let mut a = NodeSet::from_members(130, [0, 64, 129]).unwrap();
        let b = NodeSet::from_members(130, [64, 100]).unwrap();
        assert_eq!(a.len(), 3);
        assert!(a.intersects(&b));
        assert_eq!(a.intersection_len(&b), 1);
        a.subtract(&b);
        assert_eq!(a.members(), vec![0, 129]);
        assert_eq!(a.complement().len(), 128);
        assert_eq!(NodeSet::full(130).len(), 130);
        assert_eq!(
            format!("{}", NodeSet::from_members(5, [1, 3]).unwrap()),
            "{1, 3}"
        );
        assert!(NodeSet::from_members(3, [5]).is_err());
    }
}
