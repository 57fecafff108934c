//! First-order evaluation with quantifiers restricted to a finite sample of
//! an infinite interval lattice. Results are evidence, not truth in the
//! full lattice.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use super::set::IntervalSet;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::formula::{Compiled, Formula, Structure};

const UNKNOWN: usize = usize::MAX;

#[derive(Default)]
struct Arena {
    sets: Vec<IntervalSet>,
    index: HashMap<IntervalSet, usize>,
    meets: HashMap<(usize, usize), usize>,
    joins: HashMap<(usize, usize), usize>,
}

impl Arena {
    fn intern(&mut self, s: IntervalSet) -> usize {
        if let Some(&i) = self.index.get(&s) {
            return i;
        }
        let i = self.sets.len();
        self.sets.push(s.clone());
        self.index.insert(s, i);
        i
    }
}

/// A sample viewed as a structure: quantifiers range over the sample,
/// while terms may leave it (results are interned on demand).
pub struct BoundedModel {
    n: usize,
    bottom: usize,
    top: usize,
    meet_table: Vec<AtomicUsize>,
    join_table: Vec<AtomicUsize>,
    arena: Mutex<Arena>,
}

impl BoundedModel {
    /// The sample must contain the empty set. Duplicates are dropped.
    pub fn new(sample: &[IntervalSet]) -> Result<BoundedModel> {
        let mut arena = Arena::default();
        for s in sample {
            arena.intern(s.clone());
        }
        let n = arena.sets.len();
        let bottom = *arena
            .index
            .get(&IntervalSet::empty())
            .ok_or_else(|| Error::input("the sample must contain the empty set"))?;
        let top = arena.intern(IntervalSet::full());
        let table = || (0..n * n).map(|_| AtomicUsize::new(UNKNOWN)).collect();
        Ok(BoundedModel {
            n,
            bottom,
            top,
            meet_table: table(),
            join_table: table(),
            arena: Mutex::new(arena),
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn element(&self, i: usize) -> IntervalSet {
        self.arena.lock().expect("arena lock").sets[i].clone()
    }

    pub fn index_of(&self, s: &IntervalSet) -> Option<usize> {
        self.arena
            .lock()
            .expect("arena lock")
            .index
            .get(s)
            .copied()
            .filter(|&i| i < self.n)
    }

    /// Whether the sample is closed under union and intersection.
    pub fn is_closed(&self) -> bool {
        (0..self.n)
            .all(|a| (a..self.n).all(|b| self.meet(a, b) < self.n && self.join(a, b) < self.n))
    }

    fn op(&self, a: usize, b: usize, meet: bool) -> usize {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let table = if meet {
            &self.meet_table
        } else {
            &self.join_table
        };
        let slot = (b < self.n).then(|| &table[a * self.n + b]);
        if let Some(v) = slot
            .map(|s| s.load(Ordering::Relaxed))
            .filter(|&v| v != UNKNOWN)
        {
            return v;
        }
        let (x, y) = {
            let arena = self.arena.lock().expect("arena lock");
            let memo = if meet { &arena.meets } else { &arena.joins };
            if let Some(&v) = memo.get(&(a, b)) {
                return v;
            }
            (arena.sets[a].clone(), arena.sets[b].clone())
        };
        let r = if meet { x.intersect(&y) } else { x.union(&y) };
        let mut arena = self.arena.lock().expect("arena lock");
        let v = arena.intern(r);
        if meet {
            arena.meets.insert((a, b), v);
        } else {
            arena.joins.insert((a, b), v);
        }
        if let Some(s) = slot {
            s.store(v, Ordering::Relaxed);
        }
        v
    }

    /// Evaluates `f` with its parameters bound to sample members.
    pub fn eval(
        &self,
        f: &Formula,
        asn: &BTreeMap<String, IntervalSet>,
        exec: Exec,
    ) -> Result<bool> {
        let names: Vec<&String> = asn.keys().collect();
        f.check_params(&names)?;
        let values = asn
            .iter()
            .map(|(k, v)| {
                self.index_of(v).ok_or_else(|| {
                    Error::input(format!("parameter `{k}` = {v} is not in the sample"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let compiled = Compiled::new(f, &names)?;
        Ok(compiled.eval(self, &values, exec))
    }

    /// Evaluates `f` with its parameters bound to sample positions.
    pub fn eval_indices(&self, compiled: &Compiled, values: &[usize], exec: Exec) -> bool {
        compiled.eval(self, values, exec)
    }
}

impl Structure for BoundedModel {
    fn domain_len(&self) -> usize {
        self.n
    }
    fn bottom(&self) -> usize {
        self.bottom
    }
    fn top(&self) -> usize {
        self.top
    }
    fn meet(&self, a: usize, b: usize) -> usize {
        self.op(a, b, true)
    }
    fn join(&self, a: usize, b: usize) -> usize {
        self.op(a, b, false)
    }
}

/// Bounded evaluation over a sample; see [`BoundedModel`].
pub fn bounded_eval(
    sample: &[IntervalSet],
    f: &Formula,
    asn: &BTreeMap<String, IntervalSet>,
) -> Result<bool> {
    BoundedModel::new(sample)?.eval(f, asn, Exec::default())
}
