//! Generating subbases for interval lattices and seeded samples of the
//! lattices they generate.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::num::Num;
use super::set::{Dir, IntervalSet, Piece, Segment, Tail};
use crate::config::Bounds;
use crate::error::{Error, Result};
use crate::exec::{self, Exec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaseSpec {
    /// All closed intervals `[p, q]` with `p ≤ q` among the endpoints.
    RationalIntervals { endpoints: Vec<Num> },
    /// `[0, q]` for rational `q` and `[p, 1]` for irrational `p`.
    Base32 {
        rational: Vec<Num>,
        irrational: Vec<Num>,
    },
    /// `[0, q] ∪ {q + 2^-n}` for rational `q` and `[p, 1] ∪ {p - 2^-n}` for
    /// irrational `p`.
    Base33 {
        rational: Vec<Num>,
        irrational: Vec<Num>,
    },
}

fn check_rational(xs: &[Num], closed: bool) -> Result<()> {
    for x in xs {
        if !x.is_rational() {
            return Err(Error::input(format!("{x} is not rational")));
        }
        let inside = if closed {
            *x >= Num::zero() && *x <= Num::one()
        } else {
            *x > Num::zero() && *x < Num::one()
        };
        if !inside {
            return Err(Error::input(format!("{x} is out of range")));
        }
    }
    Ok(())
}

fn check_irrational(xs: &[Num]) -> Result<()> {
    for x in xs {
        if x.is_rational() {
            return Err(Error::input(format!("{x} is rational")));
        }
        if *x <= Num::zero() || *x >= Num::one() {
            return Err(Error::input(format!("{x} is outside (0,1)")));
        }
    }
    Ok(())
}

impl BaseSpec {
    pub fn from_json(text: &str) -> Result<BaseSpec> {
        let spec: BaseSpec =
            serde_json::from_str(text).map_err(|e| Error::input(format!("bad base spec: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            BaseSpec::RationalIntervals { endpoints } => check_rational(endpoints, true),
            BaseSpec::Base32 {
                rational,
                irrational,
            }
            | BaseSpec::Base33 {
                rational,
                irrational,
            } => {
                check_rational(rational, false)?;
                check_irrational(irrational)
            }
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            BaseSpec::RationalIntervals { .. } => "rational_intervals",
            BaseSpec::Base32 { .. } => "base32",
            BaseSpec::Base33 { .. } => "base33",
        }
    }

    pub fn subbase(&self) -> Vec<IntervalSet> {
        let (zero, one) = (Num::zero(), Num::one());
        match self {
            BaseSpec::RationalIntervals { endpoints } => {
                let mut out = Vec::new();
                for p in endpoints {
                    for q in endpoints.iter().filter(|q| p <= *q) {
                        out.push(IntervalSet::segment(p.clone(), q.clone()));
                    }
                }
                out
            }
            BaseSpec::Base32 {
                rational,
                irrational,
            } => rational
                .iter()
                .map(|q| IntervalSet::segment(zero.clone(), q.clone()))
                .chain(
                    irrational
                        .iter()
                        .map(|p| IntervalSet::segment(p.clone(), one.clone())),
                )
                .collect(),
            BaseSpec::Base33 {
                rational,
                irrational,
            } => rational
                .iter()
                .map(|q| {
                    IntervalSet::from_pieces(vec![
                        Piece::Seg(Segment::new(zero.clone(), q.clone())),
                        Piece::Tail(Tail::new(q.clone(), Dir::Up, 0)),
                    ])
                })
                .chain(irrational.iter().map(|p| {
                    IntervalSet::from_pieces(vec![
                        Piece::Seg(Segment::new(p.clone(), one.clone())),
                        Piece::Tail(Tail::new(p.clone(), Dir::Down, 0)),
                    ])
                }))
                .collect(),
        }
    }
}

/// The subbase with `∅` and `[0,1]`, then `depth` rounds of adding all
/// pairwise unions and intersections. A round that would exceed
/// `bounds.max_sample_size` keeps a seeded random selection of its new
/// elements. Sorted and deduplicated.
pub fn generate_sample(base: &BaseSpec, depth: usize, seed: u64) -> Result<Vec<IntervalSet>> {
    generate_sample_with(base, depth, seed, &Bounds::default(), Exec::default())
}

pub fn generate_sample_with(
    base: &BaseSpec,
    depth: usize,
    seed: u64,
    bounds: &Bounds,
    exec: Exec,
) -> Result<Vec<IntervalSet>> {
    base.validate()?;
    if depth > bounds.max_sample_depth {
        return Err(Error::resource(format!(
            "sample depth {depth} exceeds the limit of {}",
            bounds.max_sample_depth
        )));
    }
    let mut level: BTreeSet<IntervalSet> = base.subbase().into_iter().collect();
    level.insert(IntervalSet::empty());
    level.insert(IntervalSet::full());
    for round in 0..depth {
        let items: Vec<IntervalSet> = level.iter().cloned().collect();
        let pairs: Vec<(usize, usize)> = (0..items.len())
            .flat_map(|i| (i + 1..items.len()).map(move |j| (i, j)))
            .collect();
        let made = exec::map(exec, &pairs, |&(i, j)| {
            [items[i].union(&items[j]), items[i].intersect(&items[j])]
        });
        let fresh: BTreeSet<IntervalSet> = made
            .into_iter()
            .flatten()
            .filter(|s| !level.contains(s))
            .collect();
        if fresh.is_empty() {
            break;
        }
        let room = bounds.max_sample_size.saturating_sub(level.len());
        let mut fresh: Vec<IntervalSet> = fresh.into_iter().collect();
        if fresh.len() > room {
            let mut rng = ChaCha8Rng::seed_from_u64(
                seed ^ (round as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15),
            );
            fresh.shuffle(&mut rng);
            fresh.truncate(room);
        }
        level.extend(fresh);
    }
    Ok(level.into_iter().collect())
}
