//! Kernel verification, enumeration, and counting.
//!
//! A kernel is a node set that is independent (no arc in either direction
//! between members) and dominating in the outgoing sense (every outsider has
//! an arc into the set). Deciding whether one exists is NP-complete; the
//! enumerator is an exact backtracking search with constraint propagation
//! under an explicit expansion budget.
//!
//! Search order and output order are fixed so that identical inputs produce
//! identical reports: nodes are decided in descending total-degree order
//! (ties by id), the "in the kernel" branch is explored first, and the final
//! kernel list is sorted lexicographically by member list.

use serde::Serialize;

use crate::digraph::{Digraph, NodeSet};
use crate::error::{Error, Result};

/// Result of kernel enumeration.
///
/// `exhaustive` is true iff the search space was fully explored within the
/// budget; only then is `count` the graph's true kernel count.
#[derive(Debug, Clone, Serialize)]
pub struct KernelReport {
    pub count: usize,
    pub exhaustive: bool,
    pub kernels: Vec<NodeSet>,
}

/// Outcome of an existence-only search.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelExistence {
    Exists(NodeSet),
    Absent,
    Undecided,
}

/// True iff `k` is independent and every outsider has an arc into `k`.
pub fn verify_kernel(g: &Digraph, k: &NodeSet) -> Result<bool> {
    if k.universe() != g.n() {
        return Err(Error::SizeMismatch {
            expected: g.n(),
            got: k.universe(),
        });
    }
    for i in k.iter() {
        if g.out_row(i).intersects(k) {
            return Ok(false);
        }
    }
    for i in k.complement().iter() {
        if !g.out_row(i).intersects(k) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Enumerate all kernels, stopping after `budget` search-tree expansions.
pub fn enumerate_kernels(g: &Digraph, budget: u64) -> KernelReport {
    let mut search = Search::new(g, budget, None);
    search.run();
    let mut kernels = search.found;
    kernels.sort_by_key(|k| k.members());
    KernelReport {
        count: kernels.len(),
        exhaustive: !search.budget_hit,
        kernels,
    }
}

/// Decide kernel existence only; stops at the first kernel found.
pub fn kernel_exists(g: &Digraph, budget: u64) -> KernelExistence {
    let mut search = Search::new(g, budget, Some(1));
    search.run();
    match search.found.into_iter().next() {
        Some(k) => KernelExistence::Exists(k),
        None if search.budget_hit => KernelExistence::Undecided,
        None => KernelExistence::Absent,
    }
}

/// Minimum, over outsiders, of the number of arcs from that outsider into
/// the kernel. Returns `n` as the +infinity sentinel when there are no
/// outsiders. Errors unless `k` actually is a kernel.
pub fn kernel_order(g: &Digraph, k: &NodeSet) -> Result<usize> {
    if !verify_kernel(g, k)? {
        return Err(Error::NotAKernel);
    }
    let outsiders = k.complement();
    let mut order = g.n();
    for i in outsiders.iter() {
        order = order.min(g.out_row(i).intersection_len(k));
    }
    Ok(order)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mark {
    Undecided,
    In,
    Out,
}

enum Flow {
    Continue,
    Stop,
}

struct Search<'g> {
    g: &'g Digraph,
    order: Vec<usize>,
    mark: Vec<Mark>,
    in_set: NodeSet,
    out_set: NodeSet,
    trail: Vec<usize>,
    expansions: u64,
    budget: u64,
    budget_hit: bool,
    stop_after: Option<usize>,
    found: Vec<NodeSet>,
}

impl<'g> Search<'g> {
    fn new(g: &'g Digraph, budget: u64, stop_after: Option<usize>) -> Self {
        let n = g.n();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| {
            let degree = g.out_row(i).len() + g.in_row(i).len();
            (std::cmp::Reverse(degree), i)
        });
        Search {
            g,
            order,
            mark: vec![Mark::Undecided; n],
            in_set: NodeSet::empty(n),
            out_set: NodeSet::empty(n),
            trail: Vec::with_capacity(n),
            expansions: 0,
            budget,
            budget_hit: false,
            stop_after,
            found: Vec::new(),
        }
    }

    fn run(&mut self) {
        self.descend();
    }

    fn descend(&mut self) -> Flow {
        let next = self
            .order
            .iter()
            .copied()
            .find(|&i| self.mark[i] == Mark::Undecided);
        let Some(i) = next else {
            // Fully decided and never conflicted: the in-set is a kernel.
            debug_assert_eq!(verify_kernel(self.g, &self.in_set), Ok(true));
            self.found.push(self.in_set.clone());
            if self.stop_after.is_some_and(|s| self.found.len() >= s) {
                return Flow::Stop;
            }
            return Flow::Continue;
        };

        if self.expansions >= self.budget {
            self.budget_hit = true;
            return Flow::Stop;
        }
        self.expansions += 1;

        let checkpoint = self.trail.len();
        if self.assign(i, Mark::In) {
            if let Flow::Stop = self.descend() {
                return Flow::Stop;
            }
        }
        self.rewind(checkpoint);
        if self.assign(i, Mark::Out) {
            if let Flow::Stop = self.descend() {
                return Flow::Stop;
            }
        }
        self.rewind(checkpoint);
        Flow::Continue
    }

    /// Assign and propagate; false means the branch is contradictory.
    fn assign(&mut self, i: usize, m: Mark) -> bool {
        match self.mark[i] {
            Mark::Undecided => {}
            existing => return existing == m,
        }
        self.mark[i] = m;
        self.trail.push(i);
        match m {
            Mark::In => {
                self.in_set.insert(i);
                // Independence: anything adjacent in either direction is out.
                let mut adjacent = self.g.out_row(i).clone();
                adjacent.union_with(self.g.in_row(i));
                if adjacent.intersects(&self.in_set) {
                    return false;
                }
                for j in adjacent.members() {
                    if !self.assign(j, Mark::Out) {
                        return false;
                    }
                }
            }
            Mark::Out => {
                self.out_set.insert(i);
                if !self.recheck_coverage(i) {
                    return false;
                }
                // Out-nodes that counted on i as a possible provider.
                for j in self.g.in_row(i).members() {
                    if self.mark[j] == Mark::Out && !self.recheck_coverage(j) {
                        return false;
                    }
                }
            }
            Mark::Undecided => unreachable!(),
        }
        true
    }

    /// An out-node must end up with a provider: some out-neighbor in the
    /// kernel. Prunes when impossible, forces the last candidate when unique.
    fn recheck_coverage(&mut self, j: usize) -> bool {
        let out = self.g.out_row(j);
        if out.intersects(&self.in_set) {
            return true;
        }
        let mut pool = out.clone();
        pool.subtract(&self.out_set);
        match pool.len() {
            0 => false,
            1 => self.assign(pool.first().expect("nonempty pool"), Mark::In),
            _ => true,
        }
    }

    fn rewind(&mut self, checkpoint: usize) {
        while self.trail.len() > checkpoint {
            let i = self.trail.pop().expect("trail underflow");
            match self.mark[i] {
                Mark::In => self.in_set.remove(i),
                Mark::Out => self.out_set.remove(i),
                Mark::Undecided => unreachable!(),
            }
            self.mark[i] = Mark::Undecided;
        }
    }
}

/// Digraph with nonnegative arc weights and a zero diagonal.
#[derive(Debug, Clone)]
pub struct WeightedDigraph {
    n: usize,
    weights: Vec<Vec<f64>>,
}

impl WeightedDigraph {
    pub fn new(weights: Vec<Vec<f64>>) -> Result<Self> {
        let n = weights.len();
        for (i, row) in weights.iter().enumerate() {
            if row.len() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            for (j, &w) in row.iter().enumerate() {
                if w.is_nan() || w < 0.0 {
                    return Err(Error::InvalidConfig(format!(
                        "weight ({i},{j}) must be nonnegative, got {w}"
                    )));
                }
                if i == j && w != 0.0 {
                    return Err(Error::SelfLoop { node: i });
                }
            }
        }
        Ok(WeightedDigraph { n, weights })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.weights[i][j]
    }

    /// Unweighted digraph with an arc wherever the weight is positive.
    pub fn support(&self) -> Digraph {
        let mut edges = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.weights[i][j] > 0.0 {
                    edges.push((i, j));
                }
            }
        }
        Digraph::from_edges(self.n, &edges).expect("support edges are valid")
    }
}

/// Weighted-kernel check: `k` independent in the support digraph and every
/// outsider's total weight into `k` at least 1.
pub fn verify_weighted_kernel(wg: &WeightedDigraph, k: &NodeSet) -> Result<bool> {
    if k.universe() != wg.n() {
        return Err(Error::SizeMismatch {
            expected: wg.n(),
            got: k.universe(),
        });
    }
    for i in k.iter() {
        for j in k.iter() {
            if wg.weight(i, j) > 0.0 {
                return Ok(false);
            }
        }
    }
    for i in k.complement().iter() {
        let total: f64 = k.iter().map(|j| wg.weight(i, j)).sum();
        if total < 1.0 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const BUDGET: u64 = 1_000_000;

    fn three_cycle() -> Digraph {
        Digraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn two_clique() -> Digraph {
        Digraph::from_edges(2, &[(0, 1), (1, 0)]).unwrap()
    }

    fn sink_dag() -> Digraph {
        Digraph::from_edges(3, &[(0, 2), (1, 2)]).unwrap()
    }

    fn set(n: usize, members: &[usize]) -> NodeSet {
        NodeSet::from_members(n, members.iter().copied()).unwrap()
    }

    #[test]
    fn verify_kernel_canonical() {
        assert_eq!(verify_kernel(&three_cycle(), &set(3, &[0])), Ok(false));
        assert_eq!(verify_kernel(&two_clique(), &set(2, &[0])), Ok(true));
        assert_eq!(verify_kernel(&sink_dag(), &set(3, &[2])), Ok(true));
        assert_eq!(verify_kernel(&sink_dag(), &set(3, &[0, 1])), Ok(false));
        assert!(verify_kernel(&sink_dag(), &set(2, &[0])).is_err());
    }

    #[test]
    fn enumerate_canonical() {
        let r = enumerate_kernels(&three_cycle(), BUDGET);
        assert!(r.exhaustive);
        assert_eq!(r.count, 0);
        assert!(r.kernels.is_empty());

        let r = enumerate_kernels(&two_clique(), BUDGET);
        assert!(r.exhaustive);
        assert_eq!(r.count, 2);
        assert_eq!(r.kernels[0].members(), vec![0]);
        assert_eq!(r.kernels[1].members(), vec![1]);

        let r = enumerate_kernels(&sink_dag(), BUDGET);
        assert_eq!(r.count, 1);
        assert_eq!(r.kernels[0].members(), vec![2]);
    }

    #[test]
    fn empty_graph_has_the_empty_kernel() {
        let r = enumerate_kernels(&Digraph::empty(0), BUDGET);
        assert!(r.exhaustive);
        assert_eq!(r.count, 1);
        assert!(r.kernels[0].is_empty());
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        // No arcs: the unique kernel is all of N, but one expansion cannot
        // finish deciding ten nodes.
        let g = Digraph::empty(10);
        let r = enumerate_kernels(&g, 1);
        assert!(!r.exhaustive);
        let r = enumerate_kernels(&g, BUDGET);
        assert!(r.exhaustive);
        assert_eq!(r.count, 1);
        assert_eq!(r.kernels[0].len(), 10);
    }

    #[test]
    fn existence_mode_stops_early() {
        match kernel_exists(&two_clique(), BUDGET) {
            KernelExistence::Exists(k) => assert_eq!(verify_kernel(&two_clique(), &k), Ok(true)),
            other => panic!("expected kernel, got {other:?}"),
        }
        assert_eq!(
            kernel_exists(&three_cycle(), BUDGET),
            KernelExistence::Absent
        );
        assert_eq!(
            kernel_exists(&Digraph::empty(20), 2),
            KernelExistence::Undecided
        );
    }

    pub(crate) fn brute_force_kernels(g: &Digraph) -> Vec<NodeSet> {
        let n = g.n();
        assert!(n <= 20);
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            let k = NodeSet::from_members(n, (0..n).filter(|&i| mask >> i & 1 == 1)).unwrap();
            if verify_kernel(g, &k).unwrap() {
                out.push(k);
            }
        }
        out.sort_by_key(|k| k.members());
        out
    }

    #[test]
    fn matches_brute_force_on_all_tiny_graphs() {
        for n in 0..=4usize {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
                .collect();
            for mask in 0u32..(1 << pairs.len()) {
                let edges: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Digraph::from_edges(n, &edges).unwrap();
                let report = enumerate_kernels(&g, BUDGET);
                assert!(report.exhaustive);
                let brute = brute_force_kernels(&g);
                assert_eq!(
                    report
                        .kernels
                        .iter()
                        .map(|k| k.members())
                        .collect::<Vec<_>>(),
                    brute.iter().map(|k| k.members()).collect::<Vec<_>>(),
                    "mismatch on {g:?}"
                );
            }
        }
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for n in [5usize, 6] {
            for _ in 0..10_000 {
                let p = rng.random_range(0.05..0.95);
                let g = Digraph::sample_gnp_with(n, p, &mut rng).unwrap();
                let report = enumerate_kernels(&g, BUDGET);
                assert!(report.exhaustive);
                let brute = brute_force_kernels(&g);
                assert_eq!(report.count, brute.len(), "mismatch on {g:?}");
                for (a, b) in report.kernels.iter().zip(&brute) {
                    assert_eq!(a.members(), b.members());
                }
            }
        }
    }

    #[test]
    fn symmetric_kernels_are_maximal_independent_sets() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let g = Digraph::sample_gnp_with(6, 0.4, &mut rng)
                .unwrap()
                .symmetrize();
            let kernels = enumerate_kernels(&g, BUDGET);
            assert!(kernels.exhaustive);
            let mis = brute_force_mis(&g);
            assert_eq!(
                kernels
                    .kernels
                    .iter()
                    .map(|k| k.members())
                    .collect::<Vec<_>>(),
                mis
            );
        }
    }

    /// All maximal independent sets of a symmetric digraph, by subset scan.
    fn brute_force_mis(g: &Digraph) -> Vec<Vec<usize>> {
        let n = g.n();
        let independent = |mask: u32| -> bool {
            (0..n).all(|i| {
                mask >> i & 1 == 0 || (0..n).all(|j| mask >> j & 1 == 0 || !g.has_edge(i, j))
            })
        };
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            if !independent(mask) {
                continue;
            }
            let maximal = (0..n).all(|i| mask >> i & 1 == 1 || !independent(mask | 1 << i));
            if maximal {
                out.push((0..n).filter(|&i| mask >> i & 1 == 1).collect());
            }
        }
        out.sort();
        out
    }

    #[test]
    fn kernel_order_examples() {
        assert_eq!(kernel_order(&two_clique(), &set(2, &[0])), Ok(1));
        assert_eq!(kernel_order(&sink_dag(), &set(3, &[2])), Ok(1));

        let two_hubs = Digraph::from_edges(4, &[(2, 0), (2, 1), (3, 0), (3, 1)]).unwrap();
        assert_eq!(kernel_order(&two_hubs, &set(4, &[0, 1])), Ok(2));

        // No outsiders: order is the +infinity sentinel n.
        let isolated = Digraph::empty(3);
        assert_eq!(kernel_order(&isolated, &set(3, &[0, 1, 2])), Ok(3));

        assert!(matches!(
            kernel_order(&three_cycle(), &set(3, &[0])),
            Err(Error::NotAKernel)
        ));
    }

    #[test]
    fn weighted_kernel_examples() {
        let mut w = vec![vec![0.0; 2]; 2];
        w[1][0] = 1.0;
        let wg = WeightedDigraph::new(w).unwrap();
        assert_eq!(verify_weighted_kernel(&wg, &set(2, &[0])), Ok(true));

        let mut w = vec![vec![0.0; 3]; 3];
        w[1][0] = 0.4;
        w[1][2] = 0.7;
        let wg = WeightedDigraph::new(w).unwrap();
        assert_eq!(verify_weighted_kernel(&wg, &set(3, &[0, 2])), Ok(true));

        let mut w = vec![vec![0.0; 2]; 2];
        w[1][0] = 0.4;
        let wg = WeightedDigraph::new(w).unwrap();
        assert_eq!(verify_weighted_kernel(&wg, &set(2, &[0])), Ok(false));
    }

    #[test]
    fn weighted_agrees_with_unweighted_on_01_weights() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let g = Digraph::sample_gnp_with(5, 0.4, &mut rng).unwrap();
            let mut w = vec![vec![0.0; 5]; 5];
            for (u, v) in g.edges() {
                w[u][v] = 1.0;
            }
            let wg = WeightedDigraph::new(w).unwrap();
            for mask in 0u32..(1 << 5) {
                let k = NodeSet::from_members(5, (0..5).filter(|&i| mask >> i & 1 == 1)).unwrap();
                assert_eq!(
                    verify_weighted_kernel(&wg, &k).unwrap(),
                    verify_kernel(&g, &k).unwrap()
                );
            }
        }
    }

    #[test]
    fn weighted_validation() {
        assert!(WeightedDigraph::new(vec![vec![0.0, -1.0], vec![0.0, 0.0]]).is_err());
        assert!(WeightedDigraph::new(vec![vec![0.5, 0.0], vec![0.0, 0.0]]).is_err());
        assert!(WeightedDigraph::new(vec![vec![0.0, 1.0]]).is_err());
        let wg = WeightedDigraph::new(vec![vec![0.0, 0.3], vec![0.0, 0.0]]).unwrap();
        assert_eq!(wg.support().edges(), vec![(0, 1)]);
    }
}
