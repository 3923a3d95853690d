//! Node systems, coupling topologies, and network assembly.
//!
//! A network is `N` copies of one node `(A, B, C, H)` glued together by a
//! weighted digraph. The coupling matrix `L` stores the weight of the edge
//! from node `j` to node `i` at `L[i][j]`; the diagonal is zero (no
//! self-coupling). `inputs` flags the externally driven nodes.

use crate::exactalg::{kron, rat_str, RMatrix, Rat};
use num_traits::{One, Zero};

/// Validation failures, with enough context to point at the culprit.
/// Node indices in messages are 1-based, matching the file format.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("matrix {name} must be {expected}, got {got_rows}x{got_cols}")]
    Shape {
        name: &'static str,
        expected: String,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("state dimension must be at least 1")]
    EmptyState,
    #[error("a network needs at least two nodes, got {0}")]
    TooFewNodes(usize),
    #[error("coupling matrix must be square, got {rows}x{cols}")]
    CouplingNotSquare { rows: usize, cols: usize },
    #[error("node {node} couples to itself with weight {weight}; self-loops are not allowed")]
    SelfLoop { node: usize, weight: String },
    #[error("input flag list has {got} entries but the network has {nodes} nodes")]
    InputLenMismatch { got: usize, nodes: usize },
}

/// One node's state-space data: `dx = A x + B u`, `y = C x`, with `H`
/// mapping a neighbor's output into the state derivative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeSystem {
    a: RMatrix,
    b: RMatrix,
    c: RMatrix,
    h: RMatrix,
}

impl NodeSystem {
    /// Checks all shape constraints: `A` is `n x n`, `B` is `n x p`,
    /// `C` is `m x n`, `H` is `n x m`, with `n, p, m >= 1`.
    pub fn new(a: RMatrix, b: RMatrix, c: RMatrix, h: RMatrix) -> Result<Self, ModelError> {
        if !a.is_square() || a.rows() == 0 {
            if a.rows() == 0 {
                return Err(ModelError::EmptyState);
            }
            return Err(ModelError::Shape {
                name: "A",
                expected: "square".into(),
                got_rows: a.rows(),
                got_cols: a.cols(),
            });
        }
        let n = a.rows();
        if b.rows() != n || b.cols() == 0 {
            return Err(ModelError::Shape {
                name: "B",
                expected: format!("{}xp with p >= 1", n),
                got_rows: b.rows(),
                got_cols: b.cols(),
            });
        }
        if c.cols() != n || c.rows() == 0 {
            return Err(ModelError::Shape {
                name: "C",
                expected: format!("mx{} with m >= 1", n),
                got_rows: c.rows(),
                got_cols: c.cols(),
            });
        }
        if h.rows() != n || h.cols() != c.rows() {
            return Err(ModelError::Shape {
                name: "H",
                expected: format!("{}x{}", n, c.rows()),
                got_rows: h.rows(),
                got_cols: h.cols(),
            });
        }
        Ok(NodeSystem { a, b, c, h })
    }

    pub fn a(&self) -> &RMatrix {
        &self.a
    }

    pub fn b(&self) -> &RMatrix {
        &self.b
    }

    pub fn c(&self) -> &RMatrix {
        &self.c
    }

    pub fn h(&self) -> &RMatrix {
        &self.h
    }

    /// State dimension `n`.
    pub fn state_dim(&self) -> usize {
        self.a.rows()
    }

    /// Input count `p` (columns of `B`).
    pub fn input_dim(&self) -> usize {
        self.b.cols()
    }

    /// Output count `m` (rows of `C`).
    pub fn output_dim(&self) -> usize {
        self.c.rows()
    }

    /// Single input, single output.
    pub fn is_siso(&self) -> bool {
        self.input_dim() == 1 && self.output_dim() == 1
    }

    /// The composite coupling gain `H C`.
    pub fn hc(&self) -> RMatrix {
        self.h.mul(&self.c)
    }
}

/// A directed edge `from -> to` with its nonzero weight (0-based indices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub weight: Rat,
}

/// Weighted coupling digraph plus the set of externally driven nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    coupling: RMatrix,
    inputs: Vec<bool>,
}

impl Topology {
    pub fn new(coupling: RMatrix, inputs: Vec<bool>) -> Result<Self, ModelError> {
        if !coupling.is_square() {
            return Err(ModelError::CouplingNotSquare {
                rows: coupling.rows(),
                cols: coupling.cols(),
            });
        }
        let n = coupling.rows();
        if n < 2 {
            return Err(ModelError::TooFewNodes(n));
        }
        for i in 0..n {
            if !coupling[(i, i)].is_zero() {
                return Err(ModelError::SelfLoop {
                    node: i + 1,
                    weight: rat_str(&coupling[(i, i)]),
                });
            }
        }
        if inputs.len() != n {
            return Err(ModelError::InputLenMismatch {
                got: inputs.len(),
                nodes: n,
            });
        }
        Ok(Topology { coupling, inputs })
    }

    /// Number of nodes `N`.
    pub fn n_nodes(&self) -> usize {
        self.coupling.rows()
    }

    /// The coupling matrix `L`, with `L[i][j]` weighting the edge `j -> i`.
    pub fn coupling(&self) -> &RMatrix {
        &self.coupling
    }

    pub fn inputs(&self) -> &[bool] {
        &self.inputs
    }

    /// 0-based indices of driven nodes, ascending.
    pub fn driven_nodes(&self) -> Vec<usize> {
        (0..self.n_nodes()).filter(|&i| self.inputs[i]).collect()
    }

    pub fn driven_count(&self) -> usize {
        self.inputs.iter().filter(|&&b| b).count()
    }

    /// The diagonal selection matrix with the input flags.
    pub fn delta(&self) -> RMatrix {
        let entries: Vec<Rat> = self
            .inputs
            .iter()
            .map(|&b| if b { Rat::one() } else { Rat::zero() })
            .collect();
        RMatrix::diag(&entries)
    }

    /// All edges `j -> i` where `L[i][j]` is nonzero, ordered by (from, to).
    pub fn edges(&self) -> Vec<Edge> {
        let n = self.n_nodes();
        let mut out = Vec::new();
        for from in 0..n {
            for to in 0..n {
                if !self.coupling[(to, from)].is_zero() {
                    out.push(Edge {
                        from,
                        to,
                        weight: self.coupling[(to, from)].clone(),
                    });
                }
            }
        }
        out
    }

    /// Incoming-edge count of node `i`.
    pub fn in_degree(&self, i: usize) -> usize {
        (0..self.n_nodes())
            .filter(|&j| !self.coupling[(i, j)].is_zero())
            .count()
    }
}

/// Cross-checks a node/topology pair. Shape consistency is already enforced
/// by the constructors; this re-runs those checks for callers holding raw
/// matrices and is the single entry point the file parser uses.
pub fn validate(node: &NodeSystem, topo: &Topology) -> Result<(), ModelError> {
    NodeSystem::new(
        node.a.clone(),
        node.b.clone(),
        node.c.clone(),
        node.h.clone(),
    )?;
    Topology::new(topo.coupling.clone(), topo.inputs.clone())?;
    Ok(())
}

/// The assembled network pair `(Phi, Psi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssembledSystem {
    node: NodeSystem,
    topo: Topology,
    phi: RMatrix,
    psi: RMatrix,
}

impl AssembledSystem {
    pub fn node(&self) -> &NodeSystem {
        &self.node
    }

    pub fn topo(&self) -> &Topology {
        &self.topo
    }

    /// `Phi = I_N (x) A + L (x) HC`, the network state matrix.
    pub fn phi(&self) -> &RMatrix {
        &self.phi
    }

    /// `Psi = Delta (x) B`, the network input matrix.
    pub fn psi(&self) -> &RMatrix {
        &self.psi
    }

    /// Total state dimension `N * n`.
    pub fn state_dim(&self) -> usize {
        self.phi.rows()
    }
}

/// Builds the network matrices. Block `(i, j)` of `Phi` is
/// `delta_ij * A + L[i][j] * HC`; block column `i` of `Psi` is `B` when node
/// `i` is driven and zero otherwise.
pub fn assemble(node: &NodeSystem, topo: &Topology) -> AssembledSystem {
    let n_nodes = topo.n_nodes();
    let phi = kron(&RMatrix::identity(n_nodes), node.a()).add(&kron(topo.coupling(), &node.hc()));
    let psi = kron(&topo.delta(), node.b());
    AssembledSystem {
        node: node.clone(),
        topo: topo.clone(),
        phi,
        psi,
    }
}

/// Convenience: flags vector from 1-based driven node indices.
pub fn input_flags(n_nodes: usize, driven: &[usize]) -> Vec<bool> {
    let mut flags = vec![false; n_nodes];
    for &i in driven {
        assert!(i >= 1 && i <= n_nodes, "driven node index out of range");
        flags[i - 1] = true;
    }
    flags
}
