//! Bounded-evidence reports for the three interval bases.

use serde::Serialize;

use super::base::{generate_sample_with, BaseSpec};
use super::bounded::BoundedModel;
use super::num::Num;
use super::set::IntervalSet;
use super::topo::is_connected_pointset;
use crate::config::Bounds;
use crate::error::Result;
use crate::exec::{self, Exec};
use crate::formula::{
    at_top, conn_formula, dg_formula, dg_formula_excluding_top, ind_formula, Compiled,
};

pub const EVIDENCE_LABEL: &str =
    "bounded evidence: quantifiers range over a finite sample only; not a verdict on the full lattice";

#[derive(Debug, Clone, Serialize)]
pub struct DemoReport {
    pub evidence: &'static str,
    pub base: BaseSpec,
    pub depth: usize,
    pub seed: u64,
    pub sample_size: usize,
    pub sample_closed: bool,
    pub findings: Findings,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Findings {
    /// Ways to split the top into two disjoint nonzero sample elements.
    RationalIntervals {
        nontrivial_splits_of_top: Vec<(IntervalSet, IntervalSet)>,
    },
    /// Search for a partition with empty boundary between `x` and `y`.
    Base32 {
        x: IntervalSet,
        y: IntervalSet,
        pairs_examined: usize,
        zero_partitions: Vec<(IntervalSet, IntervalSet)>,
        ind0_top: bool,
    },
    /// Connectedness of every non-trivial element, and Δ₀(1) under both
    /// readings of which connected elements a cut must meet.
    Base33 {
        nontrivial_elements: usize,
        topologically_disconnected: usize,
        lattice_connected: usize,
        elements: Vec<ElementEvidence>,
        sample_has_top: bool,
        dg0_top_all_connected: bool,
        dg0_top_connected_below_top: bool,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct ElementEvidence {
    pub set: IntervalSet,
    pub topologically_connected: bool,
    pub lattice_connected: bool,
}

/// The base used when none is given: small enough for bounded Δ₀.
pub fn default_base(kind: &str) -> Option<BaseSpec> {
    let r = |p, q| Num::frac(p, q);
    let s = |ap, aq, bp, bq| Num::surd(ap, aq, bp, bq);
    Some(match kind {
        "rational_intervals" => BaseSpec::RationalIntervals {
            endpoints: vec![r(0, 1), r(1, 4), r(1, 2), r(3, 4), r(1, 1)],
        },
        "base32" => BaseSpec::Base32 {
            rational: vec![r(1, 4), r(1, 2)],
            irrational: vec![s(0, 1, 1, 4), s(0, 1, 1, 2)],
        },
        // 2/3 and √2/2 are what it takes to split [0,1/4] ∪ tail(1/4,+,0) at depth 2
        "base33" => BaseSpec::Base33 {
            rational: vec![r(1, 4), r(1, 2), r(2, 3)],
            irrational: vec![s(0, 1, 1, 4), s(0, 1, 1, 2)],
        },
        _ => return None,
    })
}

pub fn default_depth(base: &BaseSpec) -> usize {
    match base {
        BaseSpec::RationalIntervals { .. } => 1,
        BaseSpec::Base32 { .. } => 3,
        BaseSpec::Base33 { .. } => 2,
    }
}

pub fn run_demo(base: &BaseSpec, depth: usize, seed: u64, exec: Exec) -> Result<DemoReport> {
    let sample = generate_sample_with(base, depth, seed, &Bounds::default(), exec)?;
    let model = BoundedModel::new(&sample)?;
    let n = model.len();
    let empty = IntervalSet::empty();
    let full = IntervalSet::full();
    let findings = match base {
        BaseSpec::RationalIntervals { .. } => {
            let mut splits = Vec::new();
            for f in &sample {
                for g in &sample {
                    if f < g
                        && *f != empty
                        && *g != empty
                        && f.is_disjoint(g)
                        && f.union(g).is_full()
                    {
                        splits.push((f.clone(), g.clone()));
                    }
                }
            }
            Findings::RationalIntervals {
                nontrivial_splits_of_top: splits,
            }
        }
        BaseSpec::Base32 { .. } => {
            let x = IntervalSet::segment(Num::zero(), Num::frac(1, 4));
            let y = IntervalSet::segment(Num::frac(3, 4), Num::one());
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
            let hits = exec::map(exec, &pairs, |&(i, j)| {
                let (f, g) = (&sample[i], &sample[j]);
                let ok = f.is_disjoint(&x)
                    && g.is_disjoint(&y)
                    && f.is_disjoint(g)
                    && f.union(g).is_full();
                ok.then(|| (f.clone(), g.clone()))
            });
            let ind0 = Compiled::new(&at_top(&ind_formula(0)?), &[] as &[&str])?;
            Findings::Base32 {
                x,
                y,
                pairs_examined: pairs.len(),
                zero_partitions: hits.into_iter().flatten().collect(),
                ind0_top: model.eval_indices(&ind0, &[], exec),
            }
        }
        BaseSpec::Base33 { .. } => {
            let conn = Compiled::new(&conn_formula(), &["a"])?;
            let elements: Vec<ElementEvidence> = sample
                .iter()
                .enumerate()
                .filter(|(_, s)| **s != empty && **s != full)
                .map(|(i, s)| ElementEvidence {
                    set: s.clone(),
                    topologically_connected: is_connected_pointset(s),
                    lattice_connected: model.eval_indices(&conn, &[i], exec),
                })
                .collect();
            let all = Compiled::new(&at_top(&dg_formula(0)?), &[] as &[&str])?;
            let below = Compiled::new(&at_top(&dg_formula_excluding_top(0)?), &[] as &[&str])?;
            Findings::Base33 {
                nontrivial_elements: elements.len(),
                topologically_disconnected: elements
                    .iter()
                    .filter(|e| !e.topologically_connected)
                    .count(),
                lattice_connected: elements.iter().filter(|e| e.lattice_connected).count(),
                elements,
                sample_has_top: sample.contains(&full),
                dg0_top_all_connected: model.eval_indices(&all, &[], exec),
                dg0_top_connected_below_top: model.eval_indices(&below, &[], exec),
            }
        }
    };
    Ok(DemoReport {
        evidence: EVIDENCE_LABEL,
        base: base.clone(),
        depth,
        seed,
        sample_size: n,
        sample_closed: model.is_closed(),
        findings,
    })
}
