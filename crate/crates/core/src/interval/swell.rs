//! Swelling `n+2` closed sets with empty intersection into a closed cover
//! of [0,1] that still has empty intersection.

use super::num::Num;
use super::set::{IntervalSet, Piece, Segment, Span};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Swell {
    Cover(Vec<IntervalSet>),
    /// No cover exists.
    NoWitness,
}

const MAX_BISECTIONS: u32 = 200;

fn meet_all(xs: &[IntervalSet]) -> IntervalSet {
    xs.iter()
        .skip(1)
        .fold(xs[0].clone(), |acc, x| acc.intersect(x))
}

fn join_all(xs: &[IntervalSet]) -> IntervalSet {
    xs.iter().fold(IntervalSet::empty(), |acc, x| acc.union(x))
}

/// Whether `ys` swells `xs`: `xs[i] ⊆ ys[i]`, `⋂ys = ∅`, `⋃ys = [0,1]`.
pub fn is_swelling(xs: &[IntervalSet], ys: &[IntervalSet]) -> bool {
    xs.len() == ys.len()
        && !xs.is_empty()
        && xs.iter().zip(ys).all(|(x, y)| x.is_subset(y))
        && meet_all(ys).is_empty()
        && join_all(ys).is_full()
}

struct Cell {
    lo: Num,
    hi: Num,
    label: usize,
}

fn cells(xs: &[IntervalSet], lo: Num, hi: Num, depth: u32, out: &mut Vec<Cell>) -> Result<()> {
    let span = Span::closed(lo.clone(), hi.clone());
    if let Some(label) = xs.iter().position(|x| !x.meets(&span)) {
        out.push(Cell { lo, hi, label });
        return Ok(());
    }
    if depth >= MAX_BISECTIONS {
        return Err(Error::resource("swelling needs cells finer than 2^-200"));
    }
    let mid = lo.midpoint(&hi);
    cells(xs, lo, mid.clone(), depth + 1, out)?;
    cells(xs, mid, hi, depth + 1, out)
}

/// `[0,1]` minus a union of open intervals `(lo, hi)`.
fn complement_of_open(mut opens: Vec<(Num, Num)>) -> IntervalSet {
    opens.sort();
    let mut merged: Vec<(Num, Num)> = Vec::new();
    for (lo, hi) in opens {
        match merged.last_mut() {
            // touching open intervals leave their common end uncovered
            Some(last) if lo < last.1 => {
                if hi > last.1 {
                    last.1 = hi;
                }
            }
            _ => merged.push((lo, hi)),
        }
    }
    let mut pieces = Vec::new();
    let mut cursor = Num::zero();
    for (lo, hi) in merged {
        if lo >= cursor {
            pieces.push(Piece::Seg(Segment::new(cursor, lo)));
        }
        cursor = hi;
    }
    if cursor <= Num::one() {
        pieces.push(Piece::Seg(Segment::new(cursor, Num::one())));
    }
    IntervalSet::from_pieces(pieces)
}

/// Closed `ys ⊇ xs` with `⋂ys = ∅` and `⋃ys = [0,1]`.
///
/// `xs` must hold `n + 2` sets with empty intersection. For `n = 0` a cover
/// exists only when one set is empty; for `n ≥ 1` one always exists and is
/// built from a bisection of [0,1] into cells that each miss some `xs[i]`,
/// slightly enlarged so that no point lies in more than two of them.
pub fn swell_1d(n: usize, xs: &[IntervalSet]) -> Result<Swell> {
    if xs.len() != n + 2 {
        return Err(Error::input(format!(
            "expected {} sets, got {}",
            n + 2,
            xs.len()
        )));
    }
    if !meet_all(xs).is_empty() {
        return Err(Error::input("the sets have a common point"));
    }
    if join_all(xs).is_full() {
        return Ok(Swell::Cover(xs.to_vec()));
    }
    if n == 0 {
        let (e, f) = (IntervalSet::empty(), IntervalSet::full());
        return Ok(if xs[0].is_empty() {
            Swell::Cover(vec![e, f])
        } else if xs[1].is_empty() {
            Swell::Cover(vec![f, e])
        } else {
            Swell::NoWitness
        });
    }
    let mut grid = Vec::new();
    cells(xs, Num::zero(), Num::one(), 0, &mut grid)?;
    let shortest = grid
        .iter()
        .map(|c| &c.hi - &c.lo)
        .min()
        .expect("at least one cell");
    let start = shortest.half().half();
    let mut opens: Vec<Vec<(Num, Num)>> = vec![Vec::new(); xs.len()];
    for c in &grid {
        let mut e = start.clone();
        let mut tries = 0;
        while xs[c.label].meets(&Span::closed(&c.lo - &e, &c.hi + &e)) {
            e = e.half();
            tries += 1;
            if tries > MAX_BISECTIONS {
                return Err(Error::resource("swelling margin below 2^-200"));
            }
        }
        opens[c.label].push((&c.lo - &e, &c.hi + &e));
    }
    let ys: Vec<IntervalSet> = opens.into_iter().map(complement_of_open).collect();
    debug_assert!(is_swelling(xs, &ys));
    Ok(Swell::Cover(ys))
}
