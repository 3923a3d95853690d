#![allow(dead_code)]

use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use netctrl::exactalg::{rat, rint, Rat, RMatrix};
use netctrl::model::{NodeSystem, Topology};
use netctrl::structural::Digraph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize, lo: i64, hi: i64) -> RMatrix {
    RMatrix::from_fn(rows, cols, |_, _| rint(r.gen_range(lo..=hi)))
}

/// A nonzero rational with small numerator and denominator.
pub fn nonzero_rat(r: &mut ChaCha8Rng) -> Rat {
    let mut p = 0i64;
    while p == 0 {
        p = r.gen_range(-3..=3);
    }
    rat(p, r.gen_range(1..=2))
}

/// A unimodular matrix built from a few elementary shears, together with
/// its exact inverse.
pub fn unimodular_pair(r: &mut ChaCha8Rng, n: usize) -> (RMatrix, RMatrix) {
    let mut t = RMatrix::identity(n);
    let mut t_inv = RMatrix::identity(n);
    if n < 2 {
        return (t, t_inv);
    }
    for _ in 0..3 {
        let i = r.gen_range(0..n);
        let mut j = r.gen_range(0..n);
        while j == i {
            j = r.gen_range(0..n);
        }
        let c = rint(r.gen_range(-2..=2));
        let mut shear = RMatrix::identity(n);
        shear.set(i, j, c.clone());
        let mut shear_inv = RMatrix::identity(n);
        shear_inv.set(i, j, -c);
        t = t.mul(&shear);
        t_inv = shear_inv.mul(&t_inv);
    }
    (t, t_inv)
}

/// A random matrix whose eigenvalues are all rational: T J T^{-1} for an
/// upper-triangular J with rational diagonal and a unimodular T.
pub fn rational_spectrum_matrix(r: &mut ChaCha8Rng, n: usize) -> RMatrix {
    let mut j = RMatrix::zeros(n, n);
    for i in 0..n {
        j.set(i, i, rat(r.gen_range(-2..=2), r.gen_range(1..=2)));
        for k in (i + 1)..n {
            j.set(i, k, rint(r.gen_range(-1..=1)));
        }
    }
    let (t, t_inv) = unimodular_pair(r, n);
    t.mul(&j).mul(&t_inv)
}

/// A random single-input single-output node whose state matrix has a fully
/// rational spectrum.
pub fn random_siso_node(r: &mut ChaCha8Rng, n: usize) -> NodeSystem {
    let a = rational_spectrum_matrix(r, n);
    let b = int_matrix(r, n, 1, -2, 2);
    let c = int_matrix(r, 1, n, -2, 2);
    let h = int_matrix(r, n, 1, -2, 2);
    NodeSystem::new(a, b, c, h).expect("generated dimensions are consistent")
}

/// A random node with the given input and output widths.
pub fn random_node(r: &mut ChaCha8Rng, n: usize, p: usize, q: usize) -> NodeSystem {
    let a = rational_spectrum_matrix(r, n);
    let b = int_matrix(r, n, p, -2, 2);
    let c = int_matrix(r, q, n, -2, 2);
    let h = int_matrix(r, n, q, -2, 2);
    NodeSystem::new(a, b, c, h).expect("generated dimensions are consistent")
}

/// A random topology on `n` nodes with edge density about one half and a
/// driven set of size in `[min_driven, max_driven]`.
pub fn random_topology(
    r: &mut ChaCha8Rng,
    n: usize,
    min_driven: usize,
    max_driven: usize,
) -> Topology {
    let mut l = RMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if i != j && r.gen_bool(0.5) {
                l.set(i, j, nonzero_rat(r));
            }
        }
    }
    let driven_count = r.gen_range(min_driven..=max_driven);
    let mut ids: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        ids.swap(i, r.gen_range(0..=i));
    }
    let mut inputs = vec![false; n];
    for &node in ids.iter().take(driven_count) {
        inputs[node] = true;
    }
    Topology::new(l, inputs).expect("generated topology is valid")
}

/// A random topology whose coupling matrix is strictly lower triangular, so
/// the network spectrum equals the node spectrum.
pub fn random_dag_topology(r: &mut ChaCha8Rng, n: usize) -> Topology {
    let mut l = RMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..i {
            if r.gen_bool(0.6) {
                l.set(i, j, nonzero_rat(r));
            }
        }
    }
    let driven_count = r.gen_range(1..=n);
    let inputs: Vec<bool> = (0..n).map(|node| node < driven_count).collect();
    Topology::new(l, inputs).expect("generated topology is valid")
}

/// Relabels the nodes of a topology: new node `i` is old node `perm[i]`.
pub fn permute_topology(topo: &Topology, perm: &[usize]) -> Topology {
    let n = topo.n_nodes();
    assert_eq!(perm.len(), n);
    let l = topo.coupling();
    let new_l = RMatrix::from_fn(n, n, |i, j| l[(perm[i], perm[j])].clone());
    let old_inputs = topo.inputs();
    let new_inputs: Vec<bool> = (0..n).map(|i| old_inputs[perm[i]]).collect();
    Topology::new(new_l, new_inputs).expect("permutation preserves validity")
}

pub fn random_permutation(r: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, r.gen_range(0..=i));
    }
    p
}

fn det_laplace(m: &RMatrix) -> Rat {
    let n = m.rows();
    if n == 1 {
        return m[(0, 0)].clone();
    }
    let mut total = Rat::zero();
    for j in 0..n {
        let entry = m[(0, j)].clone();
        if entry.is_zero() {
            continue;
        }
        let minor = RMatrix::from_fn(n - 1, n - 1, |r, c| {
            m[(r + 1, if c < j { c } else { c + 1 })].clone()
        });
        let term = entry * det_laplace(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            go(i + 1, n, k, current, out);
            current.pop();
        }
    }
    go(0, n, k, &mut current, &mut out);
    out
}

/// Rank by brute force: the largest k with a nonzero k-by-k minor, where
/// every minor is an exact Laplace-expansion determinant.
pub fn minor_rank(m: &RMatrix) -> usize {
    let bound = m.rows().min(m.cols());
    for k in (1..=bound).rev() {
        for rows in combinations(m.rows(), k) {
            for cols in combinations(m.cols(), k) {
                let sub = RMatrix::from_fn(k, k, |i, j| m[(rows[i], cols[j])].clone());
                if !det_laplace(&sub).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

/// Maximum bipartite matching size by exhaustive search: every edge u -> v
/// can pair tail u with head v, with no tail or head used twice.
pub fn exhaustive_matching_size(g: &Digraph) -> usize {
    fn go(g: &Digraph, head: usize, used_tails: &mut Vec<bool>) -> usize {
        if head == g.n_nodes() {
            return 0;
        }
        let mut best = go(g, head + 1, used_tails);
        for &tail in g.predecessors(head) {
            if !used_tails[tail] {
                used_tails[tail] = true;
                best = best.max(1 + go(g, head + 1, used_tails));
                used_tails[tail] = false;
            }
        }
        best
    }
    go(g, 0, &mut vec![false; g.n_nodes()])
}

/// A random digraph without self-loops.
pub fn random_digraph(r: &mut ChaCha8Rng, n: usize) -> Digraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && r.gen_bool(0.4) {
                edges.push((u, v));
            }
        }
    }
    Digraph::new(n, &edges)
}
