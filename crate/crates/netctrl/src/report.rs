//! Rendering of analysis results: a deterministic JSON form for machines
//! and a plain-text form for people.
//!
//! The JSON output is byte-stable across runs on the same input: key order
//! is fixed by struct declaration, rationals print canonically, and no
//! timestamps or timings are included. Wall-clock timing appears only in
//! the human rendering.

use num_complex::Complex64;
use serde::Serialize;

use crate::classic::{Verdict, Witness};
use crate::exactalg::{rat_str, RMatrix};
use crate::model::{assemble, AssembledSystem, NodeSystem, Topology};
use crate::numalg::NumericTolerance;
use crate::structural::{structurally_controllable, ShapeKind, StructuralReport};
use crate::theorems::{certify, CertifyReport, Evidence};

/// What to compute for a network.
#[derive(Debug, Clone)]
pub struct AnalysisOptions {
    pub tol: NumericTolerance,
    /// Run the condition battery (otherwise only the direct test).
    pub certify: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            tol: NumericTolerance::default(),
            certify: true,
        }
    }
}

/// Every analysis result for one network, ready to render.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub name: String,
    pub sys: AssembledSystem,
    pub shape: ShapeKind,
    pub structural: StructuralReport,
    pub certify: Option<CertifyReport>,
    pub verdict: Verdict,
}

/// Assembles the network and runs the requested analyses.
pub fn analyze(name: &str, node: &NodeSystem, topo: &Topology, opts: &AnalysisOptions) -> Analysis {
    let sys = assemble(node, topo);
    let shape = crate::structural::classify(topo);
    let structural = structurally_controllable(topo);
    let (certify, verdict) = if opts.certify {
        let report = certify(&sys, &opts.tol);
        let verdict = report.verdict.clone();
        (Some(report), verdict)
    } else {
        (None, crate::classic::networked_controllable(&sys, &opts.tol))
    };
    Analysis {
        name: name.to_string(),
        sys,
        shape,
        structural,
        certify,
        verdict,
    }
}

fn ones(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

#[derive(Serialize)]
struct ComplexJson {
    re: f64,
    im: f64,
}

impl From<Complex64> for ComplexJson {
    fn from(z: Complex64) -> Self {
        ComplexJson { re: z.re, im: z.im }
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum PointJson {
    Exact(String),
    Numeric(ComplexJson),
}

impl From<&crate::classic::SPoint> for PointJson {
    fn from(s: &crate::classic::SPoint) -> Self {
        match s {
            crate::classic::SPoint::Exact(r) => PointJson::Exact(rat_str(r)),
            crate::classic::SPoint::Numeric(z) => PointJson::Numeric((*z).into()),
        }
    }
}

#[derive(Serialize)]
struct WitnessJson {
    kind: &'static str,
    s0: PointJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha_complex: Option<Vec<ComplexJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual: Option<f64>,
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> Self {
        match w {
            Witness::Exact { s0, alpha } => WitnessJson {
                kind: "exact",
                s0: PointJson::Exact(rat_str(s0)),
                alpha: Some(alpha.iter().map(rat_str).collect()),
                alpha_complex: None,
                residual: None,
            },
            Witness::Numeric {
                s0,
                alpha,
                residual,
            } => WitnessJson {
                kind: "numeric",
                s0: PointJson::Numeric((*s0).into()),
                alpha: None,
                alpha_complex: Some(alpha.iter().map(|z| (*z).into()).collect()),
                residual: Some(*residual),
            },
        }
    }
}

#[derive(Serialize)]
struct VerdictJson {
    controllable: bool,
    achieved_rank: usize,
    required_rank: usize,
    confidence: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_note: Option<String>,
}

#[derive(Serialize)]
struct TopologyJson {
    class: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    root: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    leaves: Option<Vec<usize>>,
}

impl From<&ShapeKind> for TopologyJson {
    fn from(s: &ShapeKind) -> Self {
        let mut out = TopologyJson {
            class: s.name(),
            order: None,
            root: None,
            leaves: None,
        };
        match s {
            ShapeKind::Chain { order } | ShapeKind::Cycle { order } => {
                out.order = Some(ones(order));
            }
            ShapeKind::Star { root, leaves } | ShapeKind::RootedTree { root, leaves } => {
                out.root = Some(root + 1);
                out.leaves = Some(ones(leaves));
            }
            ShapeKind::General => {}
        }
        out
    }
}

#[derive(Serialize)]
struct MatchingJson {
    pairs: Vec<[usize; 2]>,
    unmatched_heads: Vec<usize>,
    size: usize,
    perfect: bool,
}

#[derive(Serialize)]
struct StructuralJson {
    controllable: bool,
    unsaturated: Vec<usize>,
    unreachable: Vec<usize>,
    matching: MatchingJson,
}

impl From<&StructuralReport> for StructuralJson {
    fn from(r: &StructuralReport) -> Self {
        StructuralJson {
            controllable: r.controllable,
            unsaturated: ones(&r.unsaturated),
            unreachable: ones(&r.unreachable),
            matching: MatchingJson {
                pairs: r
                    .matching
                    .pairs
                    .iter()
                    .map(|&(t, h)| [t + 1, h + 1])
                    .collect(),
                unmatched_heads: ones(&r.matching.unmatched_heads),
                size: r.matching.size,
                perfect: r.matching.perfect,
            },
        }
    }
}

#[derive(Serialize)]
struct EvidenceJson {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    s: Option<PointJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    description: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    values: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    poly: Option<String>,
}

impl From<&Evidence> for EvidenceJson {
    fn from(e: &Evidence) -> Self {
        match e {
            Evidence::FailingPoint { s, note } => EvidenceJson {
                kind: "failing-point",
                s: Some(s.into()),
                note: note.clone(),
                description: None,
                values: None,
                poly: None,
            },
            Evidence::Vector {
                description,
                values,
            } => EvidenceJson {
                kind: "vector",
                s: None,
                note: None,
                description: Some(description.clone()),
                values: Some(values.iter().map(rat_str).collect()),
                poly: None,
            },
            Evidence::RankLocus { description, poly } => EvidenceJson {
                kind: "rank-locus",
                s: None,
                note: None,
                description: Some(description.clone()),
                values: None,
                poly: Some(poly.to_string()),
            },
        }
    }
}

#[derive(Serialize)]
struct ConditionJson {
    id: &'static str,
    label: &'static str,
    status: &'static str,
    confidence: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    evidence: Vec<EvidenceJson>,
}

#[derive(Serialize)]
struct ReportJson {
    name: String,
    nodes: usize,
    node_state_dim: usize,
    state_dim: usize,
    verdict: VerdictJson,
    topology: TopologyJson,
    structural: StructuralJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    conditions: Option<Vec<ConditionJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    contradiction: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    contradiction_notes: Vec<String>,
}

/// The machine-readable report. Byte-stable for identical inputs.
pub fn json_report(a: &Analysis) -> String {
    let verdict = VerdictJson {
        controllable: a.verdict.controllable,
        achieved_rank: a.verdict.achieved_rank,
        required_rank: a.verdict.required_rank,
        confidence: a.verdict.confidence.as_str(),
        witness: a.verdict.witness.as_ref().map(WitnessJson::from),
        witness_note: a.verdict.witness_note.clone(),
    };
    let conditions = a.certify.as_ref().map(|c| {
        c.conditions
            .iter()
            .map(|r| ConditionJson {
                id: r.id,
                label: r.label,
                status: r.status.as_str(),
                confidence: r.confidence.as_str(),
                note: r.note.clone(),
                evidence: r.evidence.iter().map(EvidenceJson::from).collect(),
            })
            .collect()
    });
    let report = ReportJson {
        name: a.name.clone(),
        nodes: a.sys.topo().n_nodes(),
        node_state_dim: a.sys.node().state_dim(),
        state_dim: a.sys.state_dim(),
        verdict,
        topology: (&a.shape).into(),
        structural: (&a.structural).into(),
        conditions,
        contradiction: a.certify.as_ref().map(|c| c.contradiction),
        contradiction_notes: a
            .certify
            .as_ref()
            .map(|c| c.contradiction_notes.clone())
            .unwrap_or_default(),
    };
    let mut out = serde_json::to_string_pretty(&report).expect("plain data serializes");
    out.push('\n');
    out
}

fn fmt_complex(z: Complex64) -> String {
    if z.im >= 0.0 {
        format!("{} + {}i", z.re, z.im)
    } else {
        format!("{} - {}i", z.re, -z.im)
    }
}

fn list(v: &[usize]) -> String {
    if v.is_empty() {
        "none".to_string()
    } else {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    }
}

fn shape_line(shape: &ShapeKind) -> String {
    match shape {
        ShapeKind::Chain { order } => format!(
            "chain ({})",
            ones(order)
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" -> ")
        ),
        ShapeKind::Star { root, leaves } => format!(
            "star (root {}, leaves {})",
            root + 1,
            list(&ones(leaves))
        ),
        ShapeKind::RootedTree { root, leaves } => format!(
            "rooted tree (root {}, leaves {})",
            root + 1,
            list(&ones(leaves))
        ),
        ShapeKind::Cycle { order } => format!(
            "cycle ({} -> ...)",
            ones(order)
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" -> ")
        ),
        ShapeKind::General => "general".to_string(),
    }
}

/// The human-readable report; `elapsed_ms` is printed when given.
pub fn human_report(a: &Analysis, elapsed_ms: Option<u128>) -> String {
    let mut out = String::new();
    let sys = &a.sys;
    out.push_str(&format!("network: {}\n", a.name));
    out.push_str(&format!(
        "size: N = {} nodes, n = {} states per node, network state dim = {}\n",
        sys.topo().n_nodes(),
        sys.node().state_dim(),
        sys.state_dim()
    ));
    out.push('\n');
    let v = &a.verdict;
    out.push_str(&format!(
        "verdict: {} (rank {} of {}, {})\n",
        if v.controllable {
            "CONTROLLABLE"
        } else {
            "UNCONTROLLABLE"
        },
        v.achieved_rank,
        v.required_rank,
        v.confidence
    ));
    match &v.witness {
        Some(Witness::Exact { s0, alpha }) => {
            let entries: Vec<String> = alpha.iter().map(rat_str).collect();
            out.push_str(&format!(
                "witness: alpha (s0 I - Phi) = 0, alpha Psi = 0 at s0 = {} (exact)\n         alpha = [{}]\n",
                rat_str(s0),
                entries.join(", ")
            ));
        }
        Some(Witness::Numeric {
            s0,
            alpha,
            residual,
        }) => {
            let entries: Vec<String> = alpha.iter().map(|z| fmt_complex(*z)).collect();
            out.push_str(&format!(
                "witness: s0 = {} (numeric, residual {:.3e})\n         alpha = [{}]\n",
                fmt_complex(*s0),
                residual,
                entries.join(", ")
            ));
        }
        None => {
            if let Some(note) = &v.witness_note {
                out.push_str(&format!("witness: none ({note})\n"));
            }
        }
    }
    out.push('\n');
    out.push_str(&format!("topology class: {}\n", shape_line(&a.shape)));
    let s = &a.structural;
    out.push_str(&format!(
        "structural: {} (matching size {}{}; unsaturated: {}; unreachable: {})\n",
        if s.controllable {
            "controllable"
        } else {
            "not controllable"
        },
        s.matching.size,
        if s.matching.perfect { ", perfect" } else { "" },
        list(&ones(&s.unsaturated)),
        list(&ones(&s.unreachable)),
    ));
    if let Some(c) = &a.certify {
        out.push('\n');
        out.push_str("conditions:\n");
        for r in &c.conditions {
            out.push_str(&format!(
                "  {:<10} {:<15} [{}] {}\n",
                r.id,
                r.status.as_str(),
                r.confidence,
                r.label
            ));
            if let Some(note) = &r.note {
                out.push_str(&format!("             note: {note}\n"));
            }
            for e in &r.evidence {
                match e {
                    Evidence::FailingPoint { s, note } => {
                        let pt = match s {
                            crate::classic::SPoint::Exact(r) => rat_str(r),
                            crate::classic::SPoint::Numeric(z) => fmt_complex(*z),
                        };
                        match note {
                            Some(n) => out.push_str(&format!(
                                "             failing point: s = {pt} ({n})\n"
                            )),
                            None => {
                                out.push_str(&format!("             failing point: s = {pt}\n"))
                            }
                        }
                    }
                    Evidence::Vector {
                        description,
                        values,
                    } => {
                        let entries: Vec<String> = values.iter().map(rat_str).collect();
                        out.push_str(&format!(
                            "             {description}: [{}]\n",
                            entries.join(", ")
                        ));
                    }
                    Evidence::RankLocus { description, poly } => {
                        out.push_str(&format!("             {description}: {poly}\n"));
                    }
                }
            }
        }
        out.push('\n');
        if c.contradiction {
            out.push_str("cross-check: CONTRADICTION\n");
            for n in &c.contradiction_notes {
                out.push_str(&format!("  {n}\n"));
            }
        } else {
            out.push_str("cross-check: consistent\n");
        }
    }
    if let Some(ms) = elapsed_ms {
        out.push_str(&format!("\nelapsed: {ms} ms\n"));
    }
    out
}

/// Renders a matrix with `|` separators between column blocks and dashed
/// dividers between row blocks.
fn block_display(m: &RMatrix, block_rows: usize, block_cols: usize) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(rat_str).collect())
        .collect();
    let mut widths = vec![0usize; m.cols()];
    for row in &cells {
        for (j, cell) in row.iter().enumerate() {
            widths[j] = widths[j].max(cell.len());
        }
    }
    let mut lines = Vec::new();
    for (i, row) in cells.iter().enumerate() {
        if i > 0 && i % block_rows == 0 {
            let mut divider = String::from("  ");
            for (j, w) in widths.iter().enumerate() {
                if j > 0 && j % block_cols == 0 {
                    divider.push_str("-+-");
                } else if j > 0 {
                    divider.push('-');
                }
                divider.push_str(&"-".repeat(*w));
            }
            lines.push(divider);
        }
        let mut line = String::from("  ");
        for (j, cell) in row.iter().enumerate() {
            if j > 0 && j % block_cols == 0 {
                line.push_str(" | ");
            } else if j > 0 {
               line.push(' ');
            }
            line.push_str(&format!("{cell:>width$}", width = widths[j]));
        }
        lines.push(line);
    }
    lines.join("\n")
}

/// Prints the assembled network matrices with node-block annotations.
pub fn render_assembly(name: &str, sys: &AssembledSystem) -> String {
    let n = sys.node().state_dim();
    let p = sys.node().input_dim();
    let nn = sys.topo().n_nodes();
    let mut out = String::new();
    out.push_str(&format!("network: {name}\n"));
    out.push_str(&format!(
        "N = {nn} nodes, n = {n} states per node; blocks below are {n}x{n} per node pair\n\n"
    ));
    out.push_str(&format!(
        "Phi = I (x) A + L (x) HC   ({} x {})\n",
        sys.phi().rows(),
        sys.phi().cols()
    ));
    out.push_str(&block_display(sys.phi(), n, n));
    out.push_str("\n\n");
    out.push_str(&format!(
        "Psi = Delta (x) B   ({} x {}, column block j belongs to node j's input)\n",
        sys.psi().rows(),
        sys.psi().cols()
    ));
    out.push_str(&block_display(sys.psi(), n, p));
    out.push('\n');
    let driven = ones(&sys.topo().driven_nodes());
    out.push_str(&format!("\ndriven nodes: {}\n", list(&driven)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::input_flags;
    use crate::rmat;

    fn loop_analysis(certify: bool) -> Analysis {
        let node = NodeSystem::new(
            rmat![[1, 0], [1, 1]],
            rmat![[1], [0]],
            rmat![[0, 1]],
            rmat![[0], [1]],
        )
        .unwrap();
        let topo = Topology::new(rmat![[0, 1], [1, 0]], input_flags(2, &[1])).unwrap();
        let opts = AnalysisOptions {
            certify,
            ..Default::default()
        };
        analyze("loop", &node, &topo, &opts)
    }

    #[test]
    fn json_is_deterministic_and_complete() {
        let a = loop_analysis(true);
        let one = json_report(&a);
        let two = json_report(&loop_analysis(true));
        assert_eq!(one, two);
        assert!(one.contains("\"controllable\": false"));
        assert!(one.contains("\"achieved_rank\": 3"));
        assert!(one.contains("\"class\": \"cycle\""));
        assert!(one.contains("\"id\": \"T2\""));
        assert!(!one.contains("elapsed"));
        let parsed: serde_json::Value = serde_json::from_str(&one).unwrap();
        assert_eq!(parsed["verdict"]["witness"]["s0"], "1");
    }

    #[test]
    fn no_certify_omits_conditions() {
        let a = loop_analysis(false);
        let text = json_report(&a);
        assert!(!text.contains("\"conditions\""));
        let human = human_report(&a, Some(5));
        assert!(human.contains("UNCONTROLLABLE"));
        assert!(human.contains("elapsed: 5 ms"));
        assert!(!human.contains("conditions:"));
    }

    #[test]
    fn human_report_carries_the_battery() {
        let a = loop_analysis(true);
        let text = human_report(&a, None);
        assert!(text.contains("verdict: UNCONTROLLABLE (rank 3 of 4, exact)"));
        assert!(text.contains("witness: alpha (s0 I - Phi) = 0"));
        assert!(text.contains("cross-check: consistent"));
        assert!(text.contains("T8"));
        assert!(!text.contains("elapsed"));
    }

    #[test]
    fn assembly_rendering_shows_blocks() {
        let a = loop_analysis(false);
        let text = render_assembly("loop", &a.sys);
        assert!(text.contains("Phi = I (x) A + L (x) HC   (4 x 4)"));
        assert!(text.contains(" | "));
        assert!(text.contains("driven nodes: 1"));
    }
}
