//! Witness closure: the finite stand-in for Löwenheim–Skolem.
//!
//! A finite lattice has no proper elementary sublattices, so full
//! elementarity is out of reach at this scale. What can be computed is
//! absoluteness for a finite family of existential schemas: a sublattice `S`
//! of an ambient lattice `L` is absolute for a schema when every parameter
//! tuple from `S` that has a witness in `L` already has one in `S` (the
//! matrix always being evaluated in `L`). [`skolem_closure`] grows a seed to
//! such a sublattice by repeatedly adding canonical witnesses and closing
//! under meet and join.

mod schema;

pub use schema::{
    cut_witness, delta_counterexample, delta_witness, disconnection_witness, normality,
    partition_witness, separativity, FormulaFamily, Schema,
};

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::Bounds;
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::formula::{first_witness, Compiled, Structure};
use crate::lattice::{ElementRef, Lattice, Mask};

/// How a witness is picked among all ambient solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum WitnessMode {
    /// First solution in canonical order.
    Canonical,
    /// Uniform among all solutions, from a ChaCha8 stream keyed by the seed.
    Random { seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub schema: String,
    /// Parameter values, as positions in the ambient lattice.
    pub params: Vec<(String, ElementRef)>,
}

#[derive(Debug, Clone)]
pub struct ClosureReport {
    pub sublattice: Lattice,
    /// The sublattice's elements as positions in the ambient lattice.
    pub elements: Vec<ElementRef>,
    pub iterations: usize,
    pub witnesses_added: BTreeMap<String, usize>,
    pub budget_exhausted: bool,
    pub mode: WitnessMode,
}

struct Prepared<'a> {
    schema: &'a Schema,
    guard: Option<Compiled>,
    matrix: Compiled,
}

fn prepare(family: &FormulaFamily) -> Result<Vec<Prepared<'_>>> {
    family
        .schemas
        .iter()
        .map(|s| {
            let fixed: Vec<&str> = s
                .params()
                .iter()
                .chain(s.witnesses())
                .map(String::as_str)
                .collect();
            Ok(Prepared {
                schema: s,
                guard: s
                    .guard()
                    .map(|g| Compiled::new(g, s.params()))
                    .transpose()?,
                matrix: Compiled::with_constants(s.matrix(), &fixed, 0)?,
            })
        })
        .collect()
}

/// A parameter tuple solvable in the ambient lattice but not in the
/// current sublattice, with the ambient witness chosen for it.
struct Finding {
    schema: usize,
    params: Vec<usize>,
    witness: Vec<usize>,
}

fn decode(mut t: usize, k: usize, cur: &[usize]) -> Vec<usize> {
    let mut out = vec![0; k];
    for slot in out.iter_mut().rev() {
        *slot = cur[t % cur.len()];
        t /= cur.len();
    }
    out
}

fn all_witnesses(
    ambient: &Lattice,
    p: &Prepared<'_>,
    params: &[usize],
    domain: &[usize],
) -> Vec<Vec<usize>> {
    let k = p.schema.witnesses().len();
    let mut out = Vec::new();
    let mut env = p.matrix.env(params);
    let mut scratch = p.matrix.scratch();
    let total = domain.len().pow(k as u32);
    for t in 0..total {
        let w = decode(t, k, domain);
        env[params.len()..params.len() + k].copy_from_slice(&w);
        if p.matrix.eval_env(ambient, &mut env, &mut scratch) {
            out.push(w);
        }
    }
    out
}

fn mix(seed: u64, parts: &[u64]) -> u64 {
    // splitmix64 over the parts
    parts.iter().fold(seed, |acc, &x| {
        let mut z = acc ^ x.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    })
}

fn scan(
    ambient: &Lattice,
    prepared: &[Prepared<'_>],
    cur: &[usize],
    mode: WitnessMode,
    round: usize,
    exec: Exec,
) -> Vec<Finding> {
    let everything: Vec<usize> = (0..ambient.domain_len()).collect();
    let mut out = Vec::new();
    for (si, p) in prepared.iter().enumerate() {
        let k = p.schema.params().len();
        let wk = p.schema.witnesses().len();
        let total = cur.len().pow(k as u32);
        let tuples: Vec<usize> = (0..total).collect();
        let found = exec::map(exec, &tuples, |&t| {
            let params = decode(t, k, cur);
            if let Some(g) = &p.guard {
                if !g.eval(ambient, &params, Exec::Sequential) {
                    return None;
                }
            }
            if first_witness(ambient, &p.matrix, &params, wk, cur, Exec::Sequential).is_some() {
                return None;
            }
            let witness = match mode {
                WitnessMode::Canonical => first_witness(
                    ambient,
                    &p.matrix,
                    &params,
                    wk,
                    &everything,
                    Exec::Sequential,
                )?,
                WitnessMode::Random { seed } => {
                    let all = all_witnesses(ambient, p, &params, &everything);
                    if all.is_empty() {
                        return None;
                    }
                    let mut rng =
                        ChaCha8Rng::seed_from_u64(mix(seed, &[round as u64, si as u64, t as u64]));
                    all[rng.gen_range(0..all.len())].clone()
                }
            };
            Some(Finding {
                schema: si,
                params,
                witness,
            })
        });
        out.extend(found.into_iter().flatten());
    }
    out
}

fn check_sub(ambient: &Lattice, sub: &Lattice) -> Result<Vec<usize>> {
    if sub.ground_size() != ambient.ground_size() {
        return Err(Error::input("sublattice has a different ground set"));
    }
    sub.masks()
        .iter()
        .map(|&m| {
            ambient.index_of(m).map(|e| e.0).ok_or_else(|| {
                Error::input(format!(
                    "element {:?} of the sublattice is not in the ambient lattice",
                    crate::lattice::members(m)
                ))
            })
        })
        .collect()
}

/// Every (schema, parameter tuple from `sub`) that has a witness in
/// `ambient` but none in `sub`.
pub fn check_absoluteness(
    ambient: &Lattice,
    sub: &Lattice,
    family: &FormulaFamily,
) -> Result<Vec<Violation>> {
    check_absoluteness_with(ambient, sub, family, Exec::default())
}

pub fn check_absoluteness_with(
    ambient: &Lattice,
    sub: &Lattice,
    family: &FormulaFamily,
    exec: Exec,
) -> Result<Vec<Violation>> {
    let cur = check_sub(ambient, sub)?;
    let prepared = prepare(family)?;
    Ok(
        scan(ambient, &prepared, &cur, WitnessMode::Canonical, 0, exec)
            .into_iter()
            .map(|f| Violation {
                schema: prepared[f.schema].schema.name().to_string(),
                params: prepared[f.schema]
                    .schema
                    .params()
                    .iter()
                    .cloned()
                    .zip(f.params.into_iter().map(ElementRef))
                    .collect(),
            })
            .collect(),
    )
}

fn close_in(ambient: &Lattice, masks: impl IntoIterator<Item = Mask>) -> Result<Vec<usize>> {
    let closed =
        crate::lattice::close_masks(ambient.ground_size(), masks, Bounds::default().max_elements)?;
    Ok(closed
        .into_iter()
        .map(|m| {
            ambient
                .index_of(m)
                .expect("closure stays inside the ambient lattice")
                .0
        })
        .collect())
}

fn masks_of(ambient: &Lattice, ids: &[usize]) -> Vec<Mask> {
    ids.iter().map(|&i| ambient.masks()[i]).collect()
}

/// Grows `seed` to a sublattice of `ambient` absolute for `family`.
///
/// `budget` caps the number of elements of the result. When the next round
/// of witnesses would overflow it, witnesses are added one at a time while
/// they still fit and the report is flagged as exhausted; the result is
/// still a sublattice, though possibly not absolute.
pub fn skolem_closure(
    ambient: &Lattice,
    seed: &[ElementRef],
    family: &FormulaFamily,
    budget: usize,
    mode: WitnessMode,
) -> Result<ClosureReport> {
    skolem_closure_with(ambient, seed, family, budget, mode, Exec::default())
}

pub fn skolem_closure_with(
    ambient: &Lattice,
    seed: &[ElementRef],
    family: &FormulaFamily,
    budget: usize,
    mode: WitnessMode,
    exec: Exec,
) -> Result<ClosureReport> {
    for &e in seed {
        ambient.check_ref(e)?;
    }
    let distinct: BTreeSet<ElementRef> = seed.iter().copied().collect();
    let prepared = prepare(family)?;
    let mut cur = close_in(ambient, distinct.iter().map(|&e| ambient.mask(e)))?;
    if budget < cur.len() {
        return Err(Error::input(format!(
            "budget {budget} is smaller than the sublattice generated by the seed ({} elements)",
            cur.len()
        )));
    }
    let mut witnesses_added: BTreeMap<String, usize> = family
        .schemas
        .iter()
        .map(|s| (s.name().to_string(), 0))
        .collect();
    let mut iterations = 0;
    let mut exhausted = false;
    while !exhausted {
        let findings = scan(ambient, &prepared, &cur, mode, iterations, exec);
        if findings.is_empty() {
            break;
        }
        iterations += 1;
        let mut extra: Vec<Mask> = masks_of(ambient, &cur);
        for f in &findings {
            extra.extend(masks_of(ambient, &f.witness));
        }
        let next = close_in(ambient, extra)?;
        if next.len() <= budget {
            for f in &findings {
                *witnesses_added
                    .get_mut(prepared[f.schema].schema.name())
                    .expect("schema registered") += 1;
            }
            cur = next;
            continue;
        }
        for f in &findings {
            let mut m = masks_of(ambient, &cur);
            if f.witness.iter().all(|w| cur.contains(w)) {
                continue;
            }
            m.extend(masks_of(ambient, &f.witness));
            let next = close_in(ambient, m)?;
            if next.len() <= budget {
                *witnesses_added
                    .get_mut(prepared[f.schema].schema.name())
                    .expect("schema registered") += 1;
                cur = next;
            }
        }
        exhausted = true;
    }
    let sublattice = Lattice::from_masks(ambient.ground_size(), masks_of(ambient, &cur))?;
    let elements = sublattice
        .masks()
        .iter()
        .map(|&m| ambient.index_of(m).expect("element of ambient"))
        .collect();
    Ok(ClosureReport {
        sublattice,
        elements,
        iterations,
        witnesses_added,
        budget_exhausted: exhausted,
        mode,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{delta_formula, eval, Assignment};

    fn sets(l: &Lattice) -> Vec<Vec<usize>> {
        l.refs().map(|e| l.members(e)).collect()
    }

    #[test]
    fn trivial_seed_is_already_normal_absolute() {
        let p = Lattice::powerset(3).unwrap();
        let fam = FormulaFamily::new(vec![normality()]);
        let r =
            skolem_closure(&p, &[p.bottom(), p.top()], &fam, 8, WitnessMode::Canonical).unwrap();
        assert_eq!(sets(&r.sublattice), vec![vec![], vec![0, 1, 2]]);
        assert_eq!(r.iterations, 0);
        assert!(!r.budget_exhausted);
    }

    #[test]
    fn separativity_closure_adds_disjoint_witness() {
        let p = Lattice::powerset(3).unwrap();
        let fam = FormulaFamily::new(vec![separativity()]);
        let seed = [p.bottom(), p.find(&[0]).unwrap(), p.top()];
        let r = skolem_closure(&p, &seed, &fam, 8, WitnessMode::Canonical).unwrap();
        let sub = &r.sublattice;
        // canonical witness for (X, {0}) is {1}
        assert!(sub.find(&[1]).is_some());
        assert!(sub.masks().iter().any(|&m| m != 0 && m & 1 == 0));
        assert!(check_absoluteness(&p, sub, &fam).unwrap().is_empty());
        assert!(sub.is_separative());
    }

    #[test]
    fn full_seed_is_a_fixpoint() {
        let p = Lattice::powerset(3).unwrap();
        let all: Vec<_> = p.refs().collect();
        let r = skolem_closure(
            &p,
            &all,
            &FormulaFamily::standard(),
            8,
            WitnessMode::Canonical,
        )
        .unwrap();
        assert_eq!(r.sublattice, p);
        assert_eq!(r.iterations, 0);
    }

    #[test]
    fn absoluteness_examples() {
        let p = Lattice::powerset(3).unwrap();
        let two = Lattice::close_subbase(3, &[]).unwrap();
        let fam = FormulaFamily::new(vec![delta_witness(0)]);
        assert!(check_absoluteness(&p, &two, &fam).unwrap().is_empty());
        assert!(check_absoluteness(&p, &p, &FormulaFamily::standard())
            .unwrap()
            .is_empty());

        // {∅,{0},{1,2},X} lacks a proper nonzero part of {1,2}
        let sub = Lattice::from_family(3, &[vec![], vec![0], vec![1, 2], vec![0, 1, 2]]).unwrap();
        let proper_part = Schema::from_text(
            "proper-part",
            &["a"],
            "E c. !(c = 0) & c <= a & !(c = a)",
            None,
        )
        .unwrap();
        let v = check_absoluteness(&p, &sub, &FormulaFamily::new(vec![proper_part])).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].schema, "proper-part");
        assert_eq!(v[0].params[0].0, "a");
        assert_eq!(p.members(v[0].params[0].1), vec![1, 2]);
    }

    #[test]
    fn foreign_sublattice_is_input_error() {
        let p = Lattice::powerset(2).unwrap();
        let q = Lattice::powerset(3).unwrap();
        assert!(matches!(
            check_absoluteness(&p, &q, &FormulaFamily::standard()),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn budget_too_small_for_seed() {
        let p = Lattice::powerset(3).unwrap();
        let seed: Vec<_> = p.refs().collect();
        assert!(matches!(
            skolem_closure(
                &p,
                &seed,
                &FormulaFamily::standard(),
                3,
                WitnessMode::Canonical
            ),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn exhausted_budget_still_yields_sublattice() {
        let p = Lattice::powerset(4).unwrap();
        let seed = [p.bottom(), p.find(&[0]).unwrap(), p.top()];
        let r = skolem_closure(
            &p,
            &seed,
            &FormulaFamily::standard(),
            5,
            WitnessMode::Canonical,
        )
        .unwrap();
        assert!(r.budget_exhausted);
        assert!(r.sublattice.len() <= 5);
        assert!(p.contains_family(&r.sublattice));
    }

    #[test]
    fn counterexample_schema_transfers_failure_of_delta() {
        // ambient fails δ0; a closure with the counterexample schema must too
        let d = crate::lattice::diamond();
        let fam = FormulaFamily::new(vec![delta_counterexample(0)]);
        let r =
            skolem_closure(&d, &[d.bottom(), d.top()], &fam, 16, WitnessMode::Canonical).unwrap();
        let delta = delta_formula(0).unwrap();
        assert!(!eval(&d, &delta, &Assignment::new()).unwrap());
        assert!(!eval(&r.sublattice, &delta, &Assignment::new()).unwrap());
        assert_eq!(r.witnesses_added["delta0-counterexample"], 1);
    }

    #[test]
    fn random_mode_is_reproducible_and_absolute() {
        let p = Lattice::powerset(4).unwrap();
        let seed = [p.find(&[0, 1]).unwrap()];
        let fam = FormulaFamily::standard();
        let run = |s| skolem_closure(&p, &seed, &fam, 16, WitnessMode::Random { seed: s }).unwrap();
        let a = run(11);
        assert_eq!(a.sublattice, run(11).sublattice);
        assert!(!a.budget_exhausted);
        assert!(check_absoluteness(&p, &a.sublattice, &fam)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn exec_modes_agree() {
        let p = Lattice::powerset(4).unwrap();
        let seed = [p.find(&[0]).unwrap(), p.find(&[1, 2]).unwrap()];
        let fam = FormulaFamily::standard();
        let a = skolem_closure_with(
            &p,
            &seed,
            &fam,
            16,
            WitnessMode::Canonical,
            Exec::Sequential,
        )
        .unwrap();
        let b = skolem_closure_with(&p, &seed, &fam, 16, WitnessMode::Canonical, Exec::Parallel)
            .unwrap();
        assert_eq!(a.sublattice, b.sublattice);
        assert_eq!(a.witnesses_added, b.witnesses_added);
    }
}
