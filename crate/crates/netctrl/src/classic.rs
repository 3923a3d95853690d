//! Kalman and PBH controllability tests, plus witness extraction.
//!
//! The authoritative network verdict is the exact Kalman rank of the pair
//! `(Phi, Psi)`; no eigenvalue enumeration is involved, so it needs nothing
//! beyond rational arithmetic. The PBH test is exposed for diagnostics, and
//! witness extraction turns an uncontrollable verdict into a concrete PBH
//! pair `(s0, alpha)` whenever it can.

use num_complex::Complex64;
use num_traits::Zero;

use crate::exactalg::{
    faddeev_leverrier, left_nullspace, rat_rank, rational_roots, row_times, si_minus, solve,
    RMatrix, Rat,
};
use crate::model::{AssembledSystem, Topology};
use crate::numalg::{
    complex_left_nullspace, num_rank_c, poly_roots, rat_to_f64, witness_residual, CMat,
    NumError, NumericTolerance,
};

/// Whether a result was settled in exact arithmetic or with tolerances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Confidence {
    Exact,
    Numeric,
}

impl Confidence {
    /// Exact only if both parts are exact.
    pub fn and(self, other: Confidence) -> Confidence {
        if self == Confidence::Exact && other == Confidence::Exact {
            Confidence::Exact
        } else {
            Confidence::Numeric
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Confidence::Exact => "exact",
            Confidence::Numeric => "numeric",
        }
    }
}

impl std::fmt::Display for Confidence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A PBH uncontrollability certificate: `alpha (s0 I - Phi) = 0` and
/// `alpha Psi = 0` with `alpha != 0`.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// Exactly verified in rational arithmetic; the residual is zero by
    /// construction.
    Exact { s0: Rat, alpha: Vec<Rat> },
    /// Found at a numeric eigenvalue; `residual` is the scaled defect,
    /// guaranteed at most the residual tolerance in force.
    Numeric {
        s0: Complex64,
        alpha: Vec<Complex64>,
        residual: f64,
    },
}

impl Witness {
    pub fn confidence(&self) -> Confidence {
        match self {
            Witness::Exact { .. } => Confidence::Exact,
            Witness::Numeric { .. } => Confidence::Numeric,
        }
    }

    /// The witness point as a complex number.
    pub fn s0_complex(&self) -> Complex64 {
        match self {
            Witness::Exact { s0, .. } => Complex64::new(rat_to_f64(s0), 0.0),
            Witness::Numeric { s0, .. } => *s0,
        }
    }

    /// Recomputes the scaled residual against the given system.
    pub fn residual_against(&self, sys: &AssembledSystem) -> Result<f64, NumError> {
        let alpha: Vec<Complex64> = match self {
            Witness::Exact { alpha, .. } => alpha
                .iter()
                .map(|r| Complex64::new(rat_to_f64(r), 0.0))
                .collect(),
            Witness::Numeric { alpha, .. } => alpha.clone(),
        };
        witness_residual(self.s0_complex(), &alpha, sys.phi(), sys.psi())
    }
}

/// Outcome of the authoritative controllability test.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub controllable: bool,
    pub achieved_rank: usize,
    pub required_rank: usize,
    /// Present only when uncontrollable and a reliable witness was found.
    pub witness: Option<Witness>,
    /// Explains a missing witness on an uncontrollable verdict.
    pub witness_note: Option<String>,
    /// The rank decision itself is always exact; this only downgrades when
    /// a future numeric path contributes to the verdict.
    pub confidence: Confidence,
}

/// Shape errors for the raw-matrix entry points.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DimError {
    #[error("the state matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },
    #[error("{name} must have {expected} {axis} to match the state matrix, got {got}")]
    Mismatch {
        name: &'static str,
        axis: &'static str,
        expected: usize,
        got: usize,
    },
}

/// The controllability matrix `[B, AB, ..., A^{n-1}B]`.
pub fn ctrb_matrix(a: &RMatrix, b: &RMatrix) -> Result<RMatrix, DimError> {
    if !a.is_square() {
        return Err(DimError::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if b.rows() != a.rows() {
        return Err(DimError::Mismatch {
            name: "B",
            axis: "rows",
            expected: a.rows(),
            got: b.rows(),
        });
    }
    let n = a.rows();
    let mut block = b.clone();
    let mut out = b.clone();
    for _ in 1..n {
        block = a.mul(&block);
        out = out.hstack(&block);
    }
    Ok(out)
}

/// Exact rank of the controllability matrix.
pub fn ctrb_rank(a: &RMatrix, b: &RMatrix) -> Result<usize, DimError> {
    Ok(rat_rank(&ctrb_matrix(a, b)?))
}

/// Full-rank test for the pair `(A, B)`.
pub fn is_controllable(a: &RMatrix, b: &RMatrix) -> Result<bool, DimError> {
    Ok(ctrb_rank(a, b)? == a.rows())
}

/// Observability by duality: `(A, C)` is observable iff `(Aᵀ, Cᵀ)` is
/// controllable.
pub fn is_observable(a: &RMatrix, c: &RMatrix) -> Result<bool, DimError> {
    if !a.is_square() {
        return Err(DimError::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if c.cols() != a.rows() {
        return Err(DimError::Mismatch {
            name: "C",
            axis: "columns",
            expected: a.rows(),
            got: c.cols(),
        });
    }
    is_controllable(&a.transpose(), &c.transpose())
}

/// A point at which to run the PBH test.
#[derive(Debug, Clone, PartialEq)]
pub enum SPoint {
    Exact(Rat),
    Numeric(Complex64),
}

/// Rank of `[sI - Phi, Psi]`: exact for rational `s`, numeric (with the
/// given tolerances) otherwise.
pub fn pbh_rank_at(
    sys: &AssembledSystem,
    s: &SPoint,
    tol: &NumericTolerance,
) -> Result<(usize, Confidence), NumError> {
    match s {
        SPoint::Exact(r) => {
            let m = si_minus(r, sys.phi()).hstack(sys.psi());
            Ok((rat_rank(&m), Confidence::Exact))
        }
        SPoint::Numeric(z) => {
            let m = CMat::si_minus(*z, sys.phi()).hstack(&CMat::from_rmatrix(sys.psi()));
            Ok((num_rank_c(&m, tol)?, Confidence::Numeric))
        }
    }
}

/// Exact verification that `(s0, alpha)` is a PBH witness for `(Phi, Psi)`.
pub fn is_exact_witness(s0: &Rat, alpha: &[Rat], phi: &RMatrix, psi: &RMatrix) -> bool {
    if alpha.len() != phi.rows() || alpha.iter().all(Rat::is_zero) {
        return false;
    }
    let lhs = row_times(alpha, &si_minus(s0, phi));
    let rhs = row_times(alpha, psi);
    lhs.iter().all(Rat::is_zero) && rhs.iter().all(Rat::is_zero)
}

/// Why witness extraction came back empty.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WitnessError {
    #[error("the system is controllable; no witness exists")]
    Controllable,
    #[error(
        "only numeric witness candidates exist and none met the residual \
         tolerance (best residual: {best:?})"
    )]
    NoReliableWitness { best: Option<f64> },
}

/// Extracts a PBH witness from an uncontrollable system.
///
/// The left nullspace `W` of the controllability matrix is invariant under
/// right-multiplication by `Phi` (Cayley-Hamilton), so `W Phi = R W` for an
/// exactly-solvable restriction `R`. Every eigenpair of `R` lifts to a PBH
/// witness of the network. Rational eigenvalues of `R` give exact witnesses;
/// otherwise eigenvalues are found numerically and each candidate is
/// accepted only if its scaled residual stays within tolerance.
///
/// When several modes qualify, the one with the largest real part is
/// reported: an uncontrollable mode in the closed right half-plane also
/// rules out stabilization, so the least stable mode is the most
/// informative one.
pub fn extract_witness(
    sys: &AssembledSystem,
    tol: &NumericTolerance,
) -> Result<Witness, WitnessError> {
    let k_matrix = ctrb_matrix(sys.phi(), sys.psi()).expect("assembled shapes are consistent");
    let w = left_nullspace(&k_matrix);
    if w.rows() == 0 {
        return Err(WitnessError::Controllable);
    }
    // Solve W Phi = R W for R: transpose to (Wᵀ) Rᵀ = (Phiᵀ Wᵀ).
    let wt = w.transpose();
    let rhs = sys.phi().transpose().mul(&wt);
    let r_t = solve(&wt, &rhs).expect("W Phi stays in the span of W");
    let r = r_t.transpose();

    let chi_r = faddeev_leverrier(&r).expect("restriction is square").chi;
    let roots = rational_roots(&chi_r).expect("characteristic polynomial is monic");

    if let Some((s0, _)) = roots.roots.iter().max_by(|a, b| a.0.cmp(&b.0)) {
        // Exact path: lift a left eigenvector of R at its largest rational
        // eigenvalue.
        let kernel = left_nullspace(&si_minus(s0, &r));
        assert!(kernel.rows() > 0, "eigenvalue without eigenvector");
        let alpha = row_times(kernel.row(0), &w);
        debug_assert!(is_exact_witness(s0, &alpha, sys.phi(), sys.psi()));
        return Ok(Witness::Exact {
            s0: s0.clone(),
            alpha,
        });
    }

    // Numeric path: all restricted eigenvalues are irrational/complex.
    let mut best: Option<f64> = None;
    let mut candidates: Vec<Complex64> = Vec::new();
    if let Ok(sf) = crate::exactalg::squarefree_decomposition(&roots.quotient) {
        for (factor, _) in sf {
            candidates.extend(poly_roots(&factor));
        }
    }
    candidates.sort_by(|a, b| {
        b.re.partial_cmp(&a.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(b.im.partial_cmp(&a.im).unwrap_or(std::cmp::Ordering::Equal))
    });
    let w_f: Vec<Vec<Complex64>> = (0..w.rows())
        .map(|i| {
            w.row(i)
                .iter()
                .map(|v| Complex64::new(rat_to_f64(v), 0.0))
                .collect()
        })
        .collect();
    for s0 in candidates {
        let shifted = CMat::si_minus(s0, &r);
        for v in complex_left_nullspace(&shifted, tol) {
            let mut alpha = vec![Complex64::ZERO; w.cols()];
            for (vi, wrow) in v.iter().zip(&w_f) {
                for (j, wv) in wrow.iter().enumerate() {
                    alpha[j] += vi * wv;
                }
            }
            let norm = alpha.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
            if norm == 0.0 {
                continue;
            }
            for z in &mut alpha {
                *z /= norm;
            }
            match witness_residual(s0, &alpha, sys.phi(), sys.psi()) {
                Ok(res) if res <= tol.residual_tol => {
                    return Ok(Witness::Numeric {
                        s0,
                        alpha,
                        residual: res,
                    });
                }
                Ok(res) => {
                    best = Some(best.map_or(res, |b: f64| b.min(res)));
                }
                Err(_) => {}
            }
        }
    }
    Err(WitnessError::NoReliableWitness { best })
}

/// The authoritative verdict: exact Kalman rank of `(Phi, Psi)`, with a
/// witness attached when the system is uncontrollable.
pub fn networked_controllable(sys: &AssembledSystem, tol: &NumericTolerance) -> Verdict {
    let k_matrix = ctrb_matrix(sys.phi(), sys.psi()).expect("assembled shapes are consistent");
    let achieved_rank = rat_rank(&k_matrix);
    let required_rank = sys.state_dim();
    let controllable = achieved_rank == required_rank;
    let (witness, witness_note) = if controllable {
        (None, None)
    } else {
        match extract_witness(sys, tol) {
            Ok(w) => (Some(w), None),
            Err(e) => (None, Some(e.to_string())),
        }
    };
    Verdict {
        controllable,
        achieved_rank,
        required_rank,
        witness,
        witness_note,
        confidence: Confidence::Exact,
    }
}

/// Kalman test on the coupling pair `(L, Delta)`.
pub fn pair_controllable_l_delta(topo: &Topology) -> bool {
    let l = topo.coupling();
    let delta = topo.delta();
    ctrb_rank(l, &delta).expect("square by construction") == topo.n_nodes()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{assemble, input_flags, NodeSystem, Topology};
    use crate::rmat;
    use crate::exactalg::rint;

    fn tol() -> NumericTolerance {
        NumericTolerance::default()
    }

    fn two_node_mutual(inputs: Vec<bool>) -> Topology {
        Topology::new(rmat![[0, 1], [1, 0]], inputs).unwrap()
    }

    // A = [[1,0],[1,1]], B = [1;0], H = [0;1], C = [1 0], both nodes driven.
    fn example_two() -> AssembledSystem {
        let node = NodeSystem::new(
            rmat![[1, 0], [1, 1]],
            rmat![[1], [0]],
            rmat![[1, 0]],
            rmat![[0], [1]],
        )
        .unwrap();
        assemble(&node, &two_node_mutual(vec![true, true]))
    }

    // Same loop, one input, C picks the second state.
    fn example_three() -> AssembledSystem {
        let node = NodeSystem::new(
            rmat![[1, 0], [1, 1]],
            rmat![[1], [0]],
            rmat![[0, 1]],
            rmat![[0], [1]],
        )
        .unwrap();
        assemble(&node, &two_node_mutual(vec![true, false]))
    }

    fn example_four() -> AssembledSystem {
        let node = NodeSystem::new(
            rmat![[1, 0], [1, 1]],
            rmat![[0], [1]],
            rmat![[0, 1]],
            rmat![[1], [0]],
        )
        .unwrap();
        assemble(&node, &two_node_mutual(vec![true, false]))
    }

    #[test]
    fn ctrb_rank_known_pairs() {
        assert_eq!(
            ctrb_rank(&rmat![[1, 0], [1, 1]], &rmat![[1], [0]]).unwrap(),
            2
        );
        assert_eq!(
            ctrb_rank(&rmat![[1, 0], [1, 1]], &rmat![[0], [1]]).unwrap(),
            1
        );
        let a = rmat![[5, -3], [2, 7]];
        assert_eq!(ctrb_rank(&a, &RMatrix::identity(2)).unwrap(), 2);
    }

    #[test]
    fn dimension_errors_are_reported() {
        assert!(matches!(
            ctrb_rank(&rmat![[1, 0]], &rmat![[1]]),
            Err(DimError::NonSquare { .. })
        ));
        assert!(matches!(
            ctrb_rank(&RMatrix::identity(2), &rmat![[1]]),
            Err(DimError::Mismatch { name: "B", .. })
        ));
        assert!(matches!(
            is_observable(&RMatrix::identity(2), &rmat![[1]]),
            Err(DimError::Mismatch { name: "C", .. })
        ));
    }

    #[test]
    fn controllability_of_the_four_dim_node() {
        // n = 4 single chain-of-integrators with a repeated tail state.
        let a = rmat![
            [0, 1, 0, 0],
            [0, 0, 1, 0],
            [0, 0, 0, 1],
            [0, 0, 0, 1]
        ];
        let b = rmat![[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0]];
        let h = rmat![[0, 1], [0, 0], [0, 0], [1, 0]];
        let c = rmat![[0, 1, 0, 0], [0, 0, 1, 0]];
        assert!(!is_controllable(&a, &b).unwrap());
        assert!(is_controllable(&a, &h.mul(&c)).unwrap());
        assert!(!is_observable(&a, &c).unwrap());
        assert!(!is_controllable(&a, &RMatrix::zeros(4, 1)).unwrap());
    }

    #[test]
    fn observability_duality_cases() {
        let a = rmat![[1, 0], [1, 1]];
        assert!(is_observable(&a, &rmat![[0, 1]]).unwrap());
        assert!(!is_observable(&a, &rmat![[1, 0]]).unwrap());
        assert!(is_observable(&a, &RMatrix::identity(2)).unwrap());
    }

    #[test]
    fn similarity_leaves_ctrb_rank_alone() {
        let a = rmat![[1, 2], [0, 3]];
        let b = rmat![[1], [1]];
        let t = rmat![[1, 1], [0, 1]]; // unimodular
        let t_inv = rmat![[1, -1], [0, 1]];
        let a2 = t_inv.mul(&a).mul(&t);
        let b2 = t_inv.mul(&b);
        assert_eq!(ctrb_rank(&a, &b).unwrap(), ctrb_rank(&a2, &b2).unwrap());
    }

    #[test]
    fn pbh_rank_deficient_at_one_on_the_mutual_loop() {
        let sys = example_two();
        let (rank, conf) = pbh_rank_at(&sys, &SPoint::Exact(rint(1)), &tol()).unwrap();
        assert_eq!(rank, 3);
        assert_eq!(conf, Confidence::Exact);
    }

    #[test]
    fn pbh_full_rank_away_from_the_spectrum() {
        let sys = example_three();
        // Exact guard: 999983 is not an eigenvalue of Phi.
        let chi = faddeev_leverrier(sys.phi()).unwrap().chi;
        let probe = rint(999_983);
        assert!(!chi.eval(&probe).is_zero());
        let (rank, _) = pbh_rank_at(&sys, &SPoint::Exact(probe), &tol()).unwrap();
        assert_eq!(rank, sys.state_dim());
    }

    #[test]
    fn verdicts_on_the_three_mutual_loop_examples() {
        let v2 = networked_controllable(&example_two(), &tol());
        assert!(!v2.controllable);
        assert_eq!(v2.achieved_rank, 3);
        assert_eq!(v2.required_rank, 4);

        let v3 = networked_controllable(&example_three(), &tol());
        assert!(!v3.controllable);

        let v4 = networked_controllable(&example_four(), &tol());
        assert!(v4.controllable);
        assert_eq!(v4.achieved_rank, 4);
        assert!(v4.witness.is_none());
    }

    #[test]
    fn witness_for_the_single_input_loop_sits_at_one() {
        let sys = example_three();
        let w = extract_witness(&sys, &tol()).unwrap();
        match &w {
            Witness::Exact { s0, alpha } => {
                assert_eq!(s0, &rint(1));
                assert!(is_exact_witness(s0, alpha, sys.phi(), sys.psi()));
                assert_eq!(w.residual_against(&sys).unwrap(), 0.0);
            }
            Witness::Numeric { .. } => panic!("expected an exact witness"),
        }
    }

    #[test]
    fn witness_extraction_refuses_controllable_systems() {
        assert!(matches!(
            extract_witness(&example_four(), &tol()),
            Err(WitnessError::Controllable)
        ));
    }

    #[test]
    fn coupling_pair_tests() {
        // Star 1 -> {2, 3}: rank 2 < 3.
        let star = Topology::new(
            rmat![[0, 0, 0], [1, 0, 0], [1, 0, 0]],
            input_flags(3, &[1]),
        )
        .unwrap();
        assert!(!pair_controllable_l_delta(&star));

        let loop2 = two_node_mutual(vec![true, false]);
        assert!(pair_controllable_l_delta(&loop2));

        let all_driven = Topology::new(
            rmat![[0, 0, 0], [1, 0, 0], [1, 0, 0]],
            input_flags(3, &[1, 2, 3]),
        )
        .unwrap();
        assert!(pair_controllable_l_delta(&all_driven));
    }
}
