//! Built-in example networks with pinned expected results.
//!
//! Each fixture carries a list of checks whose expected values were worked
//! out independently of this crate (by hand or against the direct rank
//! test), so the corpus doubles as a regression net for every layer: exact
//! ranks, witnesses, structural analysis, and the condition battery.

use num_traits::One;

use crate::classic::{
    ctrb_rank, is_controllable, is_observable, networked_controllable, pair_controllable_l_delta,
    pbh_rank_at, SPoint, Witness,
};
use crate::exactalg::{rat_str, rint, Rat, RMatrix};
use crate::model::{assemble, input_flags, AssembledSystem, NodeSystem, Topology};
use crate::numalg::NumericTolerance;
use crate::rmat;
use crate::structural::structurally_controllable;
use crate::theorems::{certify, check_cycle, check_t8, cycle_locus, Evidence, Status};

/// A node pair whose controllability or observability a fixture pins down.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    /// (A, B) controllable.
    AB,
    /// (A, HC) controllable.
    AHC,
    /// (A, H) controllable.
    AH,
    /// (A, C) observable.
    ACObservable,
}

impl PairKind {
    fn describe(self) -> &'static str {
        match self {
            PairKind::AB => "(A, B) controllable",
            PairKind::AHC => "(A, HC) controllable",
            PairKind::AH => "(A, H) controllable",
            PairKind::ACObservable => "(A, C) observable",
        }
    }
}

/// One pinned expectation for a fixture.
#[derive(Debug, Clone)]
pub enum Check {
    ControllableIs(bool),
    KalmanRank(usize),
    PbhRankAt { s: Rat, expected: usize },
    WitnessS0(Rat),
    PairLDeltaControllable(bool),
    StructurallyControllable(bool),
    NodePair { which: PairKind, expected: bool },
    T8Status(Status),
    CycleStatus(Status),
    CycleEvidenceRoot(Rat),
    LocusStripsToConstant,
    NoContradiction,
}

/// The result of evaluating one [`Check`].
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub description: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

/// A named example network plus its pinned checks.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub id: &'static str,
    pub title: &'static str,
    pub node: NodeSystem,
    pub topo: Topology,
    pub checks: Vec<Check>,
}

fn node(a: RMatrix, b: RMatrix, c: RMatrix, h: RMatrix) -> NodeSystem {
    NodeSystem::new(a, b, c, h).expect("fixture node dimensions are consistent")
}

fn topo(l: RMatrix, driven: &[usize]) -> Topology {
    let n = l.rows();
    Topology::new(l, input_flags(n, driven)).expect("fixture topology is valid")
}

fn mutual_pair(driven: &[usize], b: RMatrix, c: RMatrix, h: RMatrix) -> (NodeSystem, Topology) {
    (
        node(rmat![[1, 0], [1, 1]], b, c, h),
        topo(rmat![[0, 1], [1, 0]], driven),
    )
}

fn three_cycle(weight_31: i64) -> RMatrix {
    rmat![[0, 0, weight_31], [1, 0, 0], [0, 1, 0]]
}

/// All built-in fixtures, in a fixed order.
pub fn fixtures() -> Vec<Fixture> {
    let mut out = Vec::new();

    out.push(Fixture {
        id: "ex1",
        title: "star with identity couplings, only the hub driven",
        node: node(
            rmat![[2, 1], [3, 4]],
            RMatrix::identity(2),
            RMatrix::identity(2),
            RMatrix::identity(2),
        ),
        topo: topo(rmat![[0, 0, 0], [1, 0, 0], [1, 0, 0]], &[1]),
        checks: vec![
            Check::PairLDeltaControllable(false),
            Check::StructurallyControllable(false),
            Check::ControllableIs(false),
        ],
    });

    let (n2, t2) = mutual_pair(&[1, 2], rmat![[1], [0]], rmat![[1, 0]], rmat![[0], [1]]);
    out.push(Fixture {
        id: "ex2",
        title: "two mutually coupled nodes, both driven",
        node: n2,
        topo: t2,
        checks: vec![
            Check::ControllableIs(false),
            Check::KalmanRank(3),
            Check::PbhRankAt {
                s: Rat::one(),
                expected: 3,
            },
            Check::NodePair {
                which: PairKind::AB,
                expected: true,
            },
        ],
    });

    let (n3, t3) = mutual_pair(&[1], rmat![[1], [0]], rmat![[0, 1]], rmat![[0], [1]]);
    out.push(Fixture {
        id: "ex3",
        title: "two mutually coupled nodes, one driven",
        node: n3,
        topo: t3,
        checks: vec![
            Check::ControllableIs(false),
            Check::WitnessS0(Rat::one()),
            Check::NodePair {
                which: PairKind::AB,
                expected: true,
            },
            Check::NodePair {
                which: PairKind::ACObservable,
                expected: true,
            },
        ],
    });

    let (n4, t4) = mutual_pair(&[1], rmat![[0], [1]], rmat![[0, 1]], rmat![[1], [0]]);
    out.push(Fixture {
        id: "ex4",
        title: "two mutually coupled nodes, controllable despite an uncontrollable node pair",
        node: n4,
        topo: t4,
        checks: vec![
            Check::ControllableIs(true),
            Check::KalmanRank(4),
            Check::NodePair {
                which: PairKind::AB,
                expected: false,
            },
        ],
    });

    out.push(Fixture {
        id: "ex5",
        title: "two node chain with full input at the head",
        node: node(
            rmat![[1, 0], [1, 1]],
            RMatrix::identity(2),
            rmat![[1, 0]],
            rmat![[1], [0]],
        ),
        topo: topo(rmat![[0, 0], [1, 0]], &[1]),
        checks: vec![
            Check::ControllableIs(true),
            Check::KalmanRank(4),
            Check::NodePair {
                which: PairKind::AB,
                expected: true,
            },
            Check::NodePair {
                which: PairKind::AHC,
                expected: true,
            },
            Check::NodePair {
                which: PairKind::ACObservable,
                expected: false,
            },
        ],
    });

    out.push(Fixture {
        id: "ex6",
        title: "two node chain with a rank one coupling loss",
        node: node(
            rmat![[1, 2], [5, 4]],
            rmat![[2], [-1]],
            RMatrix::identity(2),
            rmat![[-1, 1], [-4, 1]],
        ),
        topo: topo(rmat![[0, 0], [1, 0]], &[1]),
        checks: vec![
            Check::ControllableIs(false),
            Check::KalmanRank(2),
            Check::PbhRankAt {
                s: rint(6),
                expected: 3,
            },
            Check::WitnessS0(rint(6)),
            Check::NodePair {
                which: PairKind::AB,
                expected: true,
            },
            Check::NodePair {
                which: PairKind::AHC,
                expected: true,
            },
            Check::NodePair {
                which: PairKind::ACObservable,
                expected: true,
            },
        ],
    });

    out.push(Fixture {
        id: "ex7",
        title: "three node cycle with wide inputs",
        node: node(
            rmat![[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 1]],
            rmat![[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0]],
            rmat![[0, 1, 0, 0], [0, 0, 1, 0]],
            rmat![[0, 1], [0, 0], [0, 0], [1, 0]],
        ),
        topo: topo(three_cycle(1), &[1]),
        checks: vec![
            Check::ControllableIs(true),
            Check::KalmanRank(12),
            Check::NodePair {
                which: PairKind::AB,
                expected: false,
            },
            Check::NodePair {
                which: PairKind::ACObservable,
                expected: false,
            },
        ],
    });

    out.push(Fixture {
        id: "ex8",
        title: "three node cycle, every node driven, every necessary condition holding",
        node: node(
            rmat![[1, 1], [0, 1]],
            rmat![[1], [1]],
            RMatrix::identity(2),
            rmat![[0, 0], [0, 1]],
        ),
        topo: topo(three_cycle(1), &[1, 2, 3]),
        checks: vec![
            Check::ControllableIs(false),
            Check::KalmanRank(5),
            Check::NodePair {
                which: PairKind::AB,
                expected: true,
            },
            Check::NodePair {
                which: PairKind::AHC,
                expected: true,
            },
            Check::NodePair {
                which: PairKind::ACObservable,
                expected: true,
            },
            Check::NoContradiction,
        ],
    });

    out.push(Fixture {
        id: "ex9",
        title: "three node cycle of double integrators",
        node: node(
            rmat![[0, 1], [0, 0]],
            rmat![[1], [0]],
            rmat![[1, 0]],
            rmat![[0], [1]],
        ),
        topo: topo(three_cycle(1), &[1]),
        checks: vec![
            Check::ControllableIs(true),
            Check::KalmanRank(6),
            Check::T8Status(Status::Holds),
            Check::CycleStatus(Status::Holds),
            Check::LocusStripsToConstant,
            Check::NodePair {
                which: PairKind::AB,
                expected: false,
            },
            Check::NodePair {
                which: PairKind::AH,
                expected: true,
            },
            Check::NodePair {
                which: PairKind::ACObservable,
                expected: true,
            },
        ],
    });

    out.push(Fixture {
        id: "ex10",
        title: "three node cycle with a negative edge",
        node: node(
            rmat![[1, 8, 7], [4, 5, 6], [1, 2, 3]],
            rmat![[1], [0], [1]],
            rmat![[4, 3, 6]],
            rmat![[1], [1], [1]],
        ),
        topo: topo(three_cycle(-1), &[1]),
        checks: vec![
            Check::ControllableIs(false),
            Check::KalmanRank(8),
            Check::CycleStatus(Status::Fails),
            Check::CycleEvidenceRoot(rint(2)),
            Check::T8Status(Status::Fails),
            Check::NodePair {
                which: PairKind::AB,
                expected: true,
            },
            Check::NodePair {
                which: PairKind::AH,
                expected: true,
            },
            Check::NodePair {
                which: PairKind::ACObservable,
                expected: true,
            },
        ],
    });

    out
}

/// Looks up one fixture by id.
pub fn fixture(id: &str) -> Option<Fixture> {
    fixtures().into_iter().find(|f| f.id == id)
}

fn bool_str(b: bool) -> String {
    b.to_string()
}

fn pair_holds(sys: &AssembledSystem, which: PairKind) -> bool {
    let node = sys.node();
    let res = match which {
        PairKind::AB => is_controllable(node.a(), node.b()),
        PairKind::AHC => is_controllable(node.a(), &node.hc()),
        PairKind::AH => is_controllable(node.a(), node.h()),
        PairKind::ACObservable => is_observable(node.a(), node.c()),
    };
    res.expect("fixture node dimensions are consistent")
}

fn outcome(description: String, expected: String, computed: String) -> CheckOutcome {
    let pass = expected == computed;
    CheckOutcome {
        description,
        expected,
        computed,
        pass,
    }
}

/// Evaluates every check of a fixture against the live implementation.
pub fn run_fixture(f: &Fixture, tol: &NumericTolerance) -> Vec<CheckOutcome> {
    let sys = assemble(&f.node, &f.topo);
    f.checks
        .iter()
        .map(|check| match check {
            Check::ControllableIs(expected) => {
                let v = networked_controllable(&sys, tol);
                outcome(
                    "network controllable".to_string(),
                    bool_str(*expected),
                    bool_str(v.controllable),
                )
            }
            Check::KalmanRank(expected) => {
                let rank = ctrb_rank(sys.phi(), sys.psi())
                    .expect("assembled matrices have consistent shapes");
                outcome(
                    "controllability matrix rank".to_string(),
                    expected.to_string(),
                    rank.to_string(),
                )
            }
            Check::PbhRankAt { s, expected } => {
                let computed = match pbh_rank_at(&sys, &SPoint::Exact(s.clone()), tol) {
                    Ok((rank, _)) => rank.to_string(),
                    Err(e) => format!("error: {e}"),
                };
                outcome(
                    format!("rank of [sI - Phi, Psi] at s = {}", rat_str(s)),
                    expected.to_string(),
                    computed,
                )
            }
            Check::WitnessS0(expected) => {
                let v = networked_controllable(&sys, tol);
                let computed = match &v.witness {
                    Some(Witness::Exact { s0, .. }) => rat_str(s0),
                    Some(Witness::Numeric { s0, .. }) => format!("numeric {s0}"),
                    None => "none".to_string(),
                };
                outcome(
                    "exact witness frequency s0".to_string(),
                    rat_str(expected),
                    computed,
                )
            }
            Check::PairLDeltaControllable(expected) => outcome(
                "(L, Delta) controllable".to_string(),
                bool_str(*expected),
                bool_str(pair_controllable_l_delta(&f.topo)),
            ),
            Check::StructurallyControllable(expected) => outcome(
                "structurally controllable".to_string(),
                bool_str(*expected),
                bool_str(structurally_controllable(&f.topo).controllable),
            ),
            Check::NodePair { which, expected } => outcome(
                which.describe().to_string(),
                bool_str(*expected),
                bool_str(pair_holds(&sys, *which)),
            ),
            Check::T8Status(expected) => outcome(
                "single input single output criterion".to_string(),
                expected.to_string(),
                check_t8(&sys, tol).status.to_string(),
            ),
            Check::CycleStatus(expected) => outcome(
                "cycle criterion".to_string(),
                expected.to_string(),
                check_cycle(&sys).status.to_string(),
            ),
            Check::CycleEvidenceRoot(expected) => {
                let result = check_cycle(&sys);
                let computed = result
                    .evidence
                    .iter()
                    .find_map(|e| match e {
                        Evidence::FailingPoint {
                            s: SPoint::Exact(r),
                            ..
                        } => Some(rat_str(r)),
                        _ => None,
                    })
                    .unwrap_or_else(|| "none".to_string());
                outcome(
                    "cycle criterion failing root".to_string(),
                    rat_str(expected),
                    computed,
                )
            }
            Check::LocusStripsToConstant => {
                let computed = match cycle_locus(&sys) {
                    Some(locus) => {
                        if locus.holds_everywhere() {
                            "nonzero constant".to_string()
                        } else {
                            format!("stripped locus = {}", locus.stripped)
                        }
                    }
                    None => "no cycle locus".to_string(),
                };
                outcome(
                    "cycle rank locus reduces to a nonzero constant".to_string(),
                    "nonzero constant".to_string(),
                    computed,
                )
            }
            Check::NoContradiction => {
                let report = certify(&sys, tol);
                let computed = if report.contradiction {
                    format!("contradiction: {}", report.contradiction_notes.join("; "))
                } else {
                    "consistent".to_string()
                };
                outcome(
                    "condition battery agrees with the direct test".to_string(),
                    "consistent".to_string(),
                    computed,
                )
            }
        })
        .collect()
}
