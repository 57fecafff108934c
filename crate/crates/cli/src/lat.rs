use std::collections::BTreeMap;

use dimlab::elementarity::{check_absoluteness_with, skolem_closure_with, WitnessMode};
use dimlab::formula::{
    at_top, delta_formula, dg_formula, eval_with, find_witness_with, ind_formula, Assignment,
};
use dimlab::wallman::{duality_report, wallman_space};
use dimlab::{Exec, Lattice};
use serde_json::{json, Value};

use crate::args::{Lat, Query};
use crate::load::{element, formula, Inputs};
use crate::{CliError, Outcome};

fn assignment(l: &Lattice, pairs: &[String]) -> Result<Assignment, CliError> {
    let mut asn = Assignment::new();
    for p in pairs {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("expected name=value, got `{p}`")))?;
        asn.insert(k.trim().to_string(), element(l, v)?);
    }
    Ok(asn)
}

fn shown(l: &Lattice, asn: &Assignment) -> BTreeMap<String, Vec<usize>> {
    asn.iter()
        .map(|(k, &e)| (k.clone(), l.members(e)))
        .collect()
}

pub fn run(cmd: Lat, inputs: &mut Inputs, exec: Exec) -> Result<Outcome, CliError> {
    match cmd {
        Lat::Eval(q) => {
            let (l, f, asn) = query(&q, inputs)?;
            let value = eval_with(&l, &f, &asn, exec)?;
            Ok(Outcome::new(
                json!({"formula": f.to_string(), "assignment": shown(&l, &asn), "value": value}),
                format!("{} evaluates to {value}", q.formula),
            )
            .negative_if(q.check && !value))
        }
        Lat::Witness(q) => {
            let (l, f, asn) = query(&q, inputs)?;
            let w = find_witness_with(&l, &f, &asn, exec)?;
            let summary = match &w {
                Some(w) => format!("witness {:?}", shown(&l, w)),
                None => "no witness".to_string(),
            };
            Ok(Outcome::new(
                json!({"formula": f.to_string(), "assignment": shown(&l, &asn), "witness": w.as_ref().map(|w| shown(&l, w))}),
                summary,
            )
            .negative_if(q.check && w.is_none()))
        }
        Lat::Wallman { lattice, dot, .. } => {
            let l = inputs.lattice(&lattice)?;
            let space = wallman_space(&l);
            let summary = format!(
                "{} points, injective={}",
                space.points().len(),
                space.is_injective()
            );
            let out = Outcome::new(space.to_json(), summary);
            Ok(if dot {
                out.with_raw(space.to_dot())
            } else {
                out
            })
        }
        Lat::Duality { lattice, check } => {
            let l = inputs.lattice(&lattice)?;
            let r = duality_report(&l);
            let mut summary = format!(
                "separative={} injective={} normal={} hausdorff={} t1={}",
                r.separative, r.injective, r.normal, r.hausdorff, r.t1
            );
            if !r.separative {
                summary.push_str(" (not separative: hausdorff/normal equivalence not claimed)");
            }
            Ok(
                Outcome::new(json!({"report": r, "consistent": r.consistent()}), summary)
                    .negative_if(check && !r.consistent()),
            )
        }
        Lat::Skolem {
            lattice,
            family,
            seed_elems,
            budget,
            random_seed,
            check,
        } => {
            let l = inputs.lattice(&lattice)?;
            let fam = inputs.family(&family)?;
            let seed = seed_elems
                .iter()
                .map(|s| element(&l, s))
                .collect::<Result<Vec<_>, _>>()?;
            let mode = match random_seed {
                Some(seed) => WitnessMode::Random { seed },
                None => WitnessMode::Canonical,
            };
            let rep = skolem_closure_with(&l, &seed, &fam, budget, mode, exec)?;
            let violations = check_absoluteness_with(&l, &rep.sublattice, &fam, exec)?;
            let summary = format!(
                "{} elements after {} iterations, budget exhausted={}, {} violations",
                rep.elements.len(),
                rep.iterations,
                rep.budget_exhausted,
                violations.len()
            );
            Ok(Outcome::new(
                json!({
                    "elements": rep.elements.iter().map(|&e| l.members(e)).collect::<Vec<_>>(),
                    "element_refs": rep.elements,
                    "iterations": rep.iterations,
                    "witnesses_added": rep.witnesses_added,
                    "budget_exhausted": rep.budget_exhausted,
                    "mode": rep.mode,
                    "violations": violations,
                }),
                summary,
            )
            .negative_if(check && !violations.is_empty()))
        }
        Lat::Dims { lattice, max_n } => {
            let l = inputs.lattice(&lattice)?;
            let mut rows = Vec::new();
            let mut summary = Vec::new();
            for n in 0..=max_n {
                let k = n as i32;
                let d = eval_with(&l, &delta_formula(n)?, &Assignment::new(), exec)?;
                let i = eval_with(&l, &at_top(&ind_formula(k)?), &Assignment::new(), exec)?;
                let g = eval_with(&l, &at_top(&dg_formula(k)?), &Assignment::new(), exec)?;
                rows.push(json!({"n": n, "delta": d, "ind_top": i, "dg_top": g}));
                summary.push(format!("δ{n}={d} I{n}(1)={i} Δ{n}(1)={g}"));
            }
            Ok(Outcome::new(Value::Array(rows), summary.join(", ")))
        }
    }
}

fn query(
    q: &Query,
    inputs: &mut Inputs,
) -> Result<(Lattice, dimlab::formula::Formula, Assignment), CliError> {
    let l = inputs.lattice(&q.lattice)?;
    let f = formula(&q.formula)?;
    let asn = assignment(&l, &q.assign)?;
    Ok((l, f, asn))
}
