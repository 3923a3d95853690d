//! Graph-side analysis of the coupling topology: shape classification,
//! bipartite matching, and structural controllability.
//!
//! Everything here looks only at which edges exist, never at their weights.
//! Structural controllability is the generic property: it holds iff almost
//! every choice of nonzero weights gives a controllable pair, and it is
//! decided by reachability from the driven nodes together with a matching
//! condition on the undriven ones.

use std::collections::VecDeque;

use crate::model::Topology;

/// Unweighted directed graph on nodes `0..n`, adjacency sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    /// `out_adj[u]` lists v with an edge u -> v.
    out_adj: Vec<Vec<usize>>,
    /// `in_adj[v]` lists u with an edge u -> v.
    in_adj: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Digraph {
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range for {n} nodes");
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        for list in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        Digraph { n, out_adj, in_adj }
    }

    pub fn n_nodes(&self) -> usize {
        self.n
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out_adj[u].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    pub fn successors(&self, u: usize) -> &[usize] {
        &self.out_adj[u]
    }

    pub fn predecessors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn edge_count(&self) -> usize {
        self.out_adj.iter().map(Vec::len).sum()
    }

    /// Undirected degree, counting a mutual pair as two.
    pub fn total_degree(&self, v: usize) -> usize {
        self.in_degree(v) + self.out_degree(v)
    }

    /// Nodes reachable from any seed, seeds included.
    pub fn reachable_from(&self, seeds: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &s in seeds {
            if !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &v in &self.out_adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }
}

/// The coupling graph of a topology: an edge u -> v for every nonzero
/// off-diagonal weight feeding node v from node u.
pub fn digraph_from(topo: &Topology) -> Digraph {
    let edges: Vec<(usize, usize)> = topo.edges().iter().map(|e| (e.from, e.to)).collect();
    Digraph::new(topo.n_nodes(), &edges)
}

/// A matching in the bipartite tail/head view of the graph, where every
/// edge u -> v links tail u to head v.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingReport {
    /// Matched edges as (tail, head), sorted by head.
    pub pairs: Vec<(usize, usize)>,
    pub unmatched_heads: Vec<usize>,
    pub size: usize,
    /// Every node is matched as a head.
    pub perfect: bool,
}

fn augment(
    g: &Digraph,
    head: usize,
    tail_match: &mut Vec<Option<usize>>,
    visited: &mut Vec<bool>,
) -> bool {
    for &u in g.predecessors(head) {
        if visited[u] {
            continue;
        }
        visited[u] = true;
        let freed = match tail_match[u] {
            None => true,
            Some(other_head) => augment(g, other_head, tail_match, visited),
        };
        if freed {
            tail_match[u] = Some(head);
            return true;
        }
    }
    false
}

/// Kuhn's augmenting-path search over the given heads, in the given order.
/// Returns the tail-to-head assignment and the heads left unmatched.
fn run_matching(g: &Digraph, heads: &[usize]) -> (Vec<Option<usize>>, Vec<usize>) {
    let mut tail_match: Vec<Option<usize>> = vec![None; g.n_nodes()];
    let mut failed = Vec::new();
    for &h in heads {
        let mut visited = vec![false; g.n_nodes()];
        if !augment(g, h, &mut tail_match, &mut visited) {
            failed.push(h);
        }
    }
    (tail_match, failed)
}

fn report_from(g: &Digraph, tail_match: &[Option<usize>]) -> MatchingReport {
    let mut pairs: Vec<(usize, usize)> = tail_match
        .iter()
        .enumerate()
        .filter_map(|(u, m)| m.map(|v| (u, v)))
        .collect();
    pairs.sort_by_key(|&(_, v)| v);
    let mut head_hit = vec![false; g.n_nodes()];
    for &(_, v) in &pairs {
        head_hit[v] = true;
    }
    let unmatched_heads: Vec<usize> = (0..g.n_nodes()).filter(|&v| !head_hit[v]).collect();
    let size = pairs.len();
    MatchingReport {
        pairs,
        unmatched_heads,
        size,
        perfect: size == g.n_nodes(),
    }
}

/// A maximum matching, built by augmenting heads in ascending order.
pub fn max_matching(g: &Digraph) -> MatchingReport {
    let heads: Vec<usize> = (0..g.n_nodes()).collect();
    let (tail_match, _) = run_matching(g, &heads);
    report_from(g, &tail_match)
}

/// Structural controllability of a topology with its driven-node set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralReport {
    pub controllable: bool,
    /// Undriven nodes that no matching can cover as heads.
    pub unsaturated: Vec<usize>,
    /// Nodes unreachable from every driven node.
    pub unreachable: Vec<usize>,
    pub matching: MatchingReport,
}

/// Decides generic controllability of `(L(beta), Delta)` over free nonzero
/// weights: all nodes must be reachable from the driven set, and the
/// undriven nodes must be saturable as matching heads. Saturable head sets
/// form a transversal matroid, so augmenting each required head once, in
/// any order, is a complete test.
pub fn structurally_controllable(topo: &Topology) -> StructuralReport {
    let g = digraph_from(topo);
    let driven = topo.driven_nodes();
    let required: Vec<usize> = (0..g.n_nodes())
        .filter(|v| !topo.inputs()[*v])
        .collect();
    let (tail_match, unsaturated) = run_matching(&g, &required);
    let matching = report_from(&g, &tail_match);
    let seen = g.reachable_from(&driven);
    let unreachable: Vec<usize> = (0..g.n_nodes()).filter(|&v| !seen[v]).collect();
    StructuralReport {
        controllable: unsaturated.is_empty() && unreachable.is_empty(),
        unsaturated,
        unreachable,
        matching,
    }
}

/// Recognized coupling shapes, most specific first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShapeKind {
    /// A directed path covering all nodes; `order` runs source to sink.
    Chain { order: Vec<usize> },
    /// All edges point from one root to the remaining nodes.
    Star { root: usize, leaves: Vec<usize> },
    /// A directed tree with every node reached from the root.
    RootedTree { root: usize, leaves: Vec<usize> },
    /// A single directed cycle covering all nodes; `order` starts at the
    /// lowest-numbered node.
    Cycle { order: Vec<usize> },
    General,
}

impl ShapeKind {
    pub fn name(&self) -> &'static str {
        match self {
            ShapeKind::Chain { .. } => "chain",
            ShapeKind::Star { .. } => "star",
            ShapeKind::RootedTree { .. } => "rooted tree",
            ShapeKind::Cycle { .. } => "cycle",
            ShapeKind::General => "general",
        }
    }
}

/// The root of a directed tree spanning all nodes, if the graph is one:
/// exactly one node of in-degree zero, in-degree one elsewhere, and
/// everything reachable from the root.
fn arborescence_root(g: &Digraph) -> Option<usize> {
    let mut root = None;
    for v in 0..g.n_nodes() {
        match g.in_degree(v) {
            0 => {
                if root.replace(v).is_some() {
                    return None;
                }
            }
            1 => {}
            _ => return None,
        }
    }
    let root = root?;
    let seen = g.reachable_from(&[root]);
    seen.iter().all(|&b| b).then_some(root)
}

fn tree_leaves(g: &Digraph, root: usize) -> Vec<usize> {
    (0..g.n_nodes())
        .filter(|&v| v != root && g.out_degree(v) == 0)
        .collect()
}

fn chain_order(g: &Digraph, root: usize) -> Option<Vec<usize>> {
    let mut order = vec![root];
    let mut cur = root;
    for _ in 1..g.n_nodes() {
        match g.successors(cur) {
            [next] => {
                order.push(*next);
                cur = *next;
            }
            _ => return None,
        }
    }
    (g.out_degree(cur) == 0).then_some(order)
}

fn cycle_order(g: &Digraph) -> Option<Vec<usize>> {
    if (0..g.n_nodes()).any(|v| g.in_degree(v) != 1 || g.out_degree(v) != 1) {
        return None;
    }
    let mut order = vec![0];
    let mut cur = 0;
    for _ in 1..g.n_nodes() {
        let next = g.successors(cur)[0];
        if next == 0 {
            return None;
        }
        order.push(next);
        cur = next;
    }
    (g.successors(cur) == [0]).then_some(order)
}

/// Classifies the coupling shape, preferring the most specific label:
/// chain, then star, then rooted tree, then cycle.
pub fn classify(topo: &Topology) -> ShapeKind {
    let g = digraph_from(topo);
    if let Some(root) = arborescence_root(&g) {
        if let Some(order) = chain_order(&g, root) {
            return ShapeKind::Chain { order };
        }
        let leaves = tree_leaves(&g, root);
        if leaves.len() == g.n_nodes() - 1 {
            return ShapeKind::Star { root, leaves };
        }
        return ShapeKind::RootedTree { root, leaves };
    }
    if let Some(order) = cycle_order(&g) {
        return ShapeKind::Cycle { order };
    }
    ShapeKind::General
}

/// For a directed-tree coupling: whether the driven nodes are outnumbered
/// by the leaves, which alone already rules out controllability. `None`
/// when the shape is not a rooted tree.
pub fn leaves_exceed_inputs(topo: &Topology) -> Option<bool> {
    let g = digraph_from(topo);
    let root = arborescence_root(&g)?;
    Some(tree_leaves(&g, root).len() > topo.driven_count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::input_flags;
    use crate::rmat;

    fn topo(l: crate::exactalg::RMatrix, driven: &[usize]) -> Topology {
        let n = l.rows();
        Topology::new(l, input_flags(n, driven)).unwrap()
    }

    fn chain4(driven: &[usize]) -> Topology {
        topo(
            rmat![
                [0, 0, 0, 0],
                [1, 0, 0, 0],
                [0, 1, 0, 0],
                [0, 0, 1, 0]
            ],
            driven,
        )
    }

    fn star4(driven: &[usize]) -> Topology {
        topo(
            rmat![
                [0, 0, 0, 0],
                [1, 0, 0, 0],
                [1, 0, 0, 0],
                [1, 0, 0, 0]
            ],
            driven,
        )
    }

    fn cycle3(driven: &[usize]) -> Topology {
        topo(rmat![[0, 0, 1], [1, 0, 0], [0, 1, 0]], driven)
    }

    #[test]
    fn classify_recognizes_the_basic_shapes() {
        assert_eq!(
            classify(&chain4(&[1])),
            ShapeKind::Chain {
                order: vec![0, 1, 2, 3]
            }
        );
        assert_eq!(
            classify(&star4(&[1])),
            ShapeKind::Star {
                root: 0,
                leaves: vec![1, 2, 3]
            }
        );
        assert_eq!(
            classify(&cycle3(&[1])),
            ShapeKind::Cycle {
                order: vec![0, 1, 2]
            }
        );
        // 1 -> 2, 1 -> 3, 3 -> 4: a tree that is neither chain nor star.
        let tree = topo(
            rmat![
                [0, 0, 0, 0],
                [1, 0, 0, 0],
                [1, 0, 0, 0],
                [0, 0, 1, 0]
            ],
            &[1],
        );
        assert_eq!(
            classify(&tree),
            ShapeKind::RootedTree {
                root: 0,
                leaves: vec![1, 3]
            }
        );
        // Triangle plus a chord is none of the above.
        let general = topo(rmat![[0, 0, 1], [1, 0, 1], [0, 1, 0]], &[1]);
        assert_eq!(classify(&general), ShapeKind::General);
        // Two nodes in mutual coupling form a cycle.
        let mutual = topo(rmat![[0, 1], [1, 0]], &[1]);
        assert_eq!(
            classify(&mutual),
            ShapeKind::Cycle {
                order: vec![0, 1]
            }
        );
    }

    #[test]
    fn chain_order_survives_relabeling() {
        // 3 -> 1 -> 4 -> 2 as a permuted chain.
        let l = rmat![
            [0, 0, 1, 0],
            [0, 0, 0, 1],
            [0, 0, 0, 0],
            [1, 0, 0, 0]
        ];
        let t = topo(l, &[3]);
        assert_eq!(
            classify(&t),
            ShapeKind::Chain {
                order: vec![2, 0, 3, 1]
            }
        );
    }

    #[test]
    fn two_node_chain_beats_star_by_precedence() {
        let t = topo(rmat![[0, 0], [1, 0]], &[1]);
        assert!(matches!(classify(&t), ShapeKind::Chain { .. }));
    }

    #[test]
    fn matching_on_the_chain() {
        let g = digraph_from(&chain4(&[1]));
        let m = max_matching(&g);
        assert_eq!(m.size, 3);
        assert_eq!(m.unmatched_heads, vec![0]);
        assert_eq!(m.pairs, vec![(0, 1), (1, 2), (2, 3)]);
        assert!(!m.perfect);

        let cyc = digraph_from(&cycle3(&[1]));
        assert!(max_matching(&cyc).perfect);
    }

    #[test]
    fn star_saturation_fails_on_extra_leaves() {
        // Root drives three leaves but can match only one of them.
        let rep = structurally_controllable(&star4(&[1]));
        assert!(!rep.controllable);
        assert_eq!(rep.unsaturated, vec![2, 3]);
        assert!(rep.unreachable.is_empty());

        // Driving two of the leaves directly heals it.
        let rep = structurally_controllable(&star4(&[1, 3, 4]));
        assert!(rep.controllable);
    }

    #[test]
    fn chain_needs_its_source_driven() {
        assert!(structurally_controllable(&chain4(&[1])).controllable);
        let rep = structurally_controllable(&chain4(&[2]));
        assert!(!rep.controllable);
        assert_eq!(rep.unsaturated, vec![0]);
        assert_eq!(rep.unreachable, vec![0]);
    }

    #[test]
    fn disconnected_piece_is_unreachable() {
        // 1 -> 2 plus an isolated mutual pair 3 <-> 4, driving node 1 only.
        let l = rmat![
            [0, 0, 0, 0],
            [1, 0, 0, 0],
            [0, 0, 0, 1],
            [0, 0, 1, 0]
        ];
        let rep = structurally_controllable(&topo(l, &[1]));
        assert!(!rep.controllable);
        assert!(rep.unsaturated.is_empty());
        assert_eq!(rep.unreachable, vec![2, 3]);
    }

    #[test]
    fn leaf_counting_on_trees() {
        assert_eq!(leaves_exceed_inputs(&star4(&[1])), Some(true));
        assert_eq!(leaves_exceed_inputs(&star4(&[1, 2, 3, 4])), Some(false));
        assert_eq!(leaves_exceed_inputs(&chain4(&[1])), Some(false));
        assert_eq!(leaves_exceed_inputs(&cycle3(&[1])), None);
    }

    #[test]
    fn cycle_is_structurally_fine_from_any_single_node() {
        for d in 1..=3 {
            assert!(structurally_controllable(&cycle3(&[d])).controllable);
        }
    }
}
