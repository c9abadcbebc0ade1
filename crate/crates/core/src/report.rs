//! Orchestration of the full analysis and its serializable report.

use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::catalog::{build_group, GroupSpec};
use crate::error::{Error, Result};
use crate::gamma::{gamma_from_transfers, GammaGraph, PathLength};
use crate::group::Group;
use crate::is_small_prime;
use crate::lie::{
    derived_series, full_der_algebra, h_from_transfers, hh1_quotient_solvable, ss_rank,
    MAX_ORACLE_ORDER,
};
use crate::loewy::{dl_upper_bound, loewy, MAX_LOEWY_ORDER};
use crate::transfer::analyze_transfers;

/// Caps for the graph pipeline.
pub const MAX_GRAPH_ORDER: usize = 4096;
pub const MAX_FRATTINI_DIM: usize = 8;

#[derive(Clone, Copy, Debug, Default)]
pub struct AnalyzeOptions {
    pub full_oracle: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "SOLVABLE")]
    Solvable,
    #[serde(rename = "NOT_SOLVABLE")]
    NotSolvable,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Solvable => "SOLVABLE",
            Verdict::NotSolvable => "NOT_SOLVABLE",
            Verdict::Inconclusive => "INCONCLUSIVE",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GammaSection {
    pub edge_count: usize,
    pub acyclic: bool,
    pub witness_cycle: Option<Vec<String>>,
    /// Longest directed path; absent when the graph has a cycle.
    pub longest_path: Option<usize>,
    pub loops: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Gamma2Section {
    pub edge_count: usize,
    pub acyclic: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VertexDim {
    pub vertex: String,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HSection {
    /// Vertices with a nonzero component, in vertex order.
    pub vertex_dims: Vec<VertexDim>,
    pub total_dim: usize,
    pub derived_series: Vec<usize>,
    pub derived_length: Option<usize>,
    pub ss_rank: Option<usize>,
}

/// Bounds the graph data places on the full Lie algebra when the theorem
/// applies (odd p, p-group, acyclic graph).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Hh1Bounds {
    pub ss_rank_min: usize,
    pub ss_rank_max: usize,
    pub derived_length_min: usize,
    pub derived_length_max: Option<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OracleSection {
    pub derivation_dim: usize,
    pub inner_dim: usize,
    pub hh1_dim: usize,
    pub derived_series: Vec<usize>,
    pub solvable: bool,
    pub derived_length: Option<usize>,
    /// Set when the graph produced a definitive verdict to compare against.
    pub agrees_with_verdict: Option<bool>,
}

/// The analysis result; field order is the serialization order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub prime: u32,
    pub group_order: usize,
    pub is_p_group: bool,
    pub frattini_quotient_dim: usize,
    pub gamma: GammaSection,
    pub gamma2: Option<Gamma2Section>,
    pub h: HSection,
    pub loewy_length: Option<usize>,
    pub dl_upper_bound: Option<f64>,
    pub hh1_bounds: Option<Hh1Bounds>,
    pub full_oracle: Option<OracleSection>,
    pub verdict: Verdict,
    pub verdict_basis: String,
    pub notes: Vec<String>,
}

/// Report plus the graphs it was computed from, for DOT output.
#[derive(Debug)]
pub struct Analysis {
    pub report: Report,
    pub gamma: GammaGraph,
    pub gamma_reduced: GammaGraph,
    pub gamma2: Option<GammaGraph>,
}

/// Analyze a parsed spec at a prime.
pub fn analyze(spec: &GroupSpec, p: u32, options: &AnalyzeOptions) -> Result<Analysis> {
    let group = build_group(spec)?;
    let mut notes = Vec::new();
    if spec_mentions_c9_rtimes_c9(spec) {
        notes
            .push("c9_rtimes_c9 is realized as <a, b | a^9 = b^9 = 1, b a b^-1 = a^4>".to_string());
    }
    analyze_group(&group, p, options, notes)
}

fn spec_mentions_c9_rtimes_c9(spec: &GroupSpec) -> bool {
    match spec {
        GroupSpec::Catalog { name, .. } => name == "c9_rtimes_c9",
        GroupSpec::Product { factors } => factors.iter().any(spec_mentions_c9_rtimes_c9),
        _ => false,
    }
}

/// Analyze a concrete group at a prime.
pub fn analyze_group(
    group: &Group,
    p: u32,
    options: &AnalyzeOptions,
    mut notes: Vec<String>,
) -> Result<Analysis> {
    if !is_small_prime(p) {
        return Err(Error::BadPrime(p));
    }
    let order = group.order();
    if order > MAX_GRAPH_ORDER {
        return Err(Error::CapExceeded {
            what: "graph pipeline order",
            order,
            cap: MAX_GRAPH_ORDER,
        });
    }
    let ta = analyze_transfers(group, p)?;
    if ta.fq.dim() > MAX_FRATTINI_DIM {
        return Err(Error::CapExceeded {
            what: "frattini quotient dimension",
            order: ta.fq.dim(),
            cap: MAX_FRATTINI_DIM,
        });
    }
    let is_p_group = group.is_p_group(p);
    let gamma = gamma_from_transfers(&ta);
    let gamma_reduced = gamma.reduce();
    let cycle = gamma.find_cycle();
    let acyclic = cycle.is_none();
    let longest = gamma.longest_path();

    let h = h_from_transfers(&ta);
    let h_series = derived_series(&h);
    let h_rank = ss_rank(&h);

    let gamma2 = if p == 2 { Some(gamma.gamma2()?) } else { None };

    let filtration = if is_p_group && order <= MAX_LOEWY_ORDER {
        Some(loewy(group, p)?)
    } else {
        None
    };
    let bound = match (&filtration, longest) {
        (Some(f), PathLength::Finite(l)) if f.loewy_length >= 2 => {
            Some(dl_upper_bound(f.loewy_length, l))
        }
        _ => None,
    };

    // verdict logic
    let (verdict, basis) = if p != 2 {
        if is_p_group {
            if acyclic {
                (Verdict::Solvable, "theorem")
            } else {
                (Verdict::NotSolvable, "theorem")
            }
        } else if !acyclic {
            (Verdict::NotSolvable, "image criterion")
        } else {
            notes.push("image solvable".to_string());
            (Verdict::Inconclusive, "image criterion")
        }
    } else {
        let g2_cyclic = gamma2.as_ref().is_some_and(|g2| g2.find_cycle().is_some());
        if g2_cyclic {
            (Verdict::NotSolvable, "gamma2 criterion")
        } else if options.full_oracle && order <= MAX_ORACLE_ORDER {
            // decided below once the oracle has run
            (Verdict::Inconclusive, "full oracle")
        } else {
            notes.push("gamma2 acyclic; no conclusion without the full oracle".to_string());
            (Verdict::Inconclusive, "gamma2 criterion")
        }
    };
    let (mut verdict, mut basis) = (verdict, basis.to_string());

    let oracle = if options.full_oracle {
        if order <= MAX_ORACLE_ORDER {
            let ds = full_der_algebra(group, p)?;
            let od = hh1_quotient_solvable(&ds);
            if basis == "full oracle" {
                verdict = if od.solvable {
                    Verdict::Solvable
                } else {
                    Verdict::NotSolvable
                };
            }
            let agrees = match verdict {
                Verdict::Solvable if basis != "full oracle" => Some(od.solvable),
                Verdict::NotSolvable if basis != "full oracle" => Some(!od.solvable),
                _ => None,
            };
            Some(OracleSection {
                derivation_dim: ds.derivation_dim(),
                inner_dim: ds.inner_dim(),
                hh1_dim: ds.hh1_dim(),
                derived_series: od.dims,
                solvable: od.solvable,
                derived_length: od.derived_length,
                agrees_with_verdict: agrees,
            })
        } else {
            notes.push(format!(
                "full oracle skipped: order {order} exceeds the cap of {MAX_ORACLE_ORDER}"
            ));
            if basis == "full oracle" {
                basis = "gamma2 criterion".to_string();
            }
            None
        }
    } else {
        None
    };

    let hh1_bounds = match (p != 2 && is_p_group && acyclic, longest.finite()) {
        (true, Some(l)) => Some(Hh1Bounds {
            ss_rank_min: l.saturating_sub(1),
            ss_rank_max: l,
            derived_length_min: h_series.length().unwrap_or(0),
            derived_length_max: bound,
        }),
        _ => None,
    };

    let vertex_dims = (0..gamma.vertex_count())
        .filter(|&v| gamma.h_dims()[v] > 0)
        .map(|v| VertexDim {
            vertex: gamma.vertex_label(v),
            dim: gamma.h_dims()[v],
        })
        .collect();

    let report = Report {
        prime: p,
        group_order: order,
        is_p_group,
        frattini_quotient_dim: ta.fq.dim(),
        gamma: GammaSection {
            edge_count: gamma.edge_count(),
            acyclic,
            witness_cycle: cycle
                .as_ref()
                .map(|c| c.iter().map(|&v| gamma.vertex_label(v)).collect()),
            longest_path: longest.finite(),
            loops: gamma
                .loops()
                .iter()
                .map(|&v| gamma.vertex_label(v))
                .collect(),
        },
        gamma2: gamma2.as_ref().map(|g2| Gamma2Section {
            edge_count: g2.edge_count(),
            acyclic: g2.find_cycle().is_none(),
        }),
        h: HSection {
            vertex_dims,
            total_dim: h.total_dim(),
            derived_series: h_series.dims.clone(),
            derived_length: h_series.length(),
            ss_rank: h_rank,
        },
        loewy_length: filtration.map(|f| f.loewy_length),
        dl_upper_bound: bound,
        hh1_bounds,
        full_oracle: oracle,
        verdict,
        verdict_basis: basis,
        notes,
    };
    Ok(Analysis {
        report,
        gamma,
        gamma_reduced,
        gamma2,
    })
}

pub fn emit_json(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("report serializes") + "\n"
}

pub fn emit_text(report: &Report) -> String {
    let mut out = String::new();
    let fmt_opt = |o: Option<usize>| o.map_or("infinite".to_string(), |v| v.to_string());
    out.push_str(&format!("prime:                {}\n", report.prime));
    out.push_str(&format!("group order:          {}\n", report.group_order));
    out.push_str(&format!("p-group:              {}\n", report.is_p_group));
    out.push_str(&format!(
        "frattini quotient:    F_{}^{}\n",
        report.prime, report.frattini_quotient_dim
    ));
    out.push_str(&format!(
        "gamma:                {} edges, {}\n",
        report.gamma.edge_count,
        if report.gamma.acyclic {
            "acyclic"
        } else {
            "cyclic"
        }
    ));
    if let Some(cycle) = &report.gamma.witness_cycle {
        out.push_str(&format!("witness cycle:        {}\n", cycle.join(" -> ")));
    }
    out.push_str(&format!(
        "longest path:         {}\n",
        fmt_opt(report.gamma.longest_path)
    ));
    if !report.gamma.loops.is_empty() {
        out.push_str(&format!(
            "loops at:             {}\n",
            report.gamma.loops.join(", ")
        ));
    }
    if let Some(g2) = &report.gamma2 {
        out.push_str(&format!(
            "gamma2:               {} edges, {}\n",
            g2.edge_count,
            if g2.acyclic { "acyclic" } else { "cyclic" }
        ));
    }
    let dims: Vec<String> = report
        .h
        .vertex_dims
        .iter()
        .map(|vd| format!("{}:{}", vd.vertex, vd.dim))
        .collect();
    out.push_str(&format!("image algebra dims:   [{}]\n", dims.join(", ")));
    out.push_str(&format!("image total dim:      {}\n", report.h.total_dim));
    out.push_str(&format!(
        "image derived series: {:?} (length {})\n",
        report.h.derived_series,
        fmt_opt(report.h.derived_length)
    ));
    out.push_str(&format!(
        "image ss-rank:        {}\n",
        fmt_opt(report.h.ss_rank)
    ));
    if let Some(ll) = report.loewy_length {
        out.push_str(&format!("loewy length:         {ll}\n"));
    }
    if let Some(b) = report.dl_upper_bound {
        out.push_str(&format!(
            "dl upper bound:       {b} (floor {})\n",
            b.floor() as i64
        ));
    }
    if let Some(bounds) = &report.hh1_bounds {
        out.push_str(&format!(
            "hh1 ss-rank range:    [{}, {}]\n",
            bounds.ss_rank_min, bounds.ss_rank_max
        ));
        out.push_str(&format!(
            "hh1 dl range:         [{}, {}]\n",
            bounds.derived_length_min,
            bounds
                .derived_length_max
                .map_or("?".to_string(), |b| format!("{b}")),
        ));
    }
    if let Some(o) = &report.full_oracle {
        out.push_str(&format!(
            "full oracle:          dim Der = {}, dim Inn = {}, dim HH1 = {}\n",
            o.derivation_dim, o.inner_dim, o.hh1_dim
        ));
        out.push_str(&format!(
            "oracle series:        {:?} ({})\n",
            o.derived_series,
            if o.solvable {
                "solvable"
            } else {
                "not solvable"
            }
        ));
        if let Some(a) = o.agrees_with_verdict {
            out.push_str(&format!("oracle agreement:     {a}\n"));
        }
    }
    out.push_str(&format!(
        "verdict:              {} ({})\n",
        report.verdict, report.verdict_basis
    ));
    for note in &report.notes {
        out.push_str(&format!("note:                 {note}\n"));
    }
    out
}

/// Write gamma.dot, gamma_reduced.dot, and (when p = 2) gamma2.dot.
pub fn write_dot_files(analysis: &Analysis, dir: &Path) -> io::Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("gamma.dot"), analysis.gamma.to_dot("gamma"))?;
    std::fs::write(
        dir.join("gamma_reduced.dot"),
        analysis.gamma_reduced.to_dot("gamma_reduced"),
    )?;
    if let Some(g2) = &analysis.gamma2 {
        std::fs::write(dir.join("gamma2.dot"), g2.to_dot("gamma2"))?;
    }
    Ok(())
}
