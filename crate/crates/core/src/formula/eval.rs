//! Brute-force model checking over finite structures.
//!
//! A formula is compiled once into a slot-addressed tree: parameters occupy
//! the first slots, each quantifier gets the slot for its nesting depth.
//! Quantifiers then loop over the structure's domain with short-circuiting.
//! Quantified subformulas with at most three free bound variables are
//! memoized per evaluation, keyed by those variables' values; a subformula
//! with none (after fixing the parameters) is evaluated once.

use std::collections::{BTreeMap, HashMap};

use super::ast::{Formula, Term};
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::lattice::{ElementRef, Lattice};

/// A finite lattice presented by element ids.
///
/// Quantifiers range over `0..domain_len()`. Terms may evaluate to ids
/// outside that range when the structure is a sample embedded in a larger
/// lattice.
pub trait Structure: Sync {
    fn domain_len(&self) -> usize;
    fn bottom(&self) -> usize;
    fn top(&self) -> usize;
    fn meet(&self, a: usize, b: usize) -> usize;
    fn join(&self, a: usize, b: usize) -> usize;
    fn le(&self, a: usize, b: usize) -> bool {
        self.meet(a, b) == a
    }
}

impl Structure for Lattice {
    fn domain_len(&self) -> usize {
        self.len()
    }
    fn bottom(&self) -> usize {
        0
    }
    fn top(&self) -> usize {
        self.len() - 1
    }
    #[inline]
    fn meet(&self, a: usize, b: usize) -> usize {
        self.index_unchecked(self.masks()[a] & self.masks()[b])
    }
    #[inline]
    fn join(&self, a: usize, b: usize) -> usize {
        self.index_unchecked(self.masks()[a] | self.masks()[b])
    }
    #[inline]
    fn le(&self, a: usize, b: usize) -> bool {
        self.masks()[a] & !self.masks()[b] == 0
    }
}

/// Parameter values for an evaluation over a [`Lattice`].
pub type Assignment = BTreeMap<String, ElementRef>;

const MEMO_MAX_KEYS: usize = 3;
const MEMO_MAX_ENTRIES: usize = 1 << 22;

#[derive(Debug, Clone)]
enum CTerm {
    Slot(usize),
    Bottom,
    Top,
    Meet(Box<CTerm>, Box<CTerm>),
    Join(Box<CTerm>, Box<CTerm>),
}

#[derive(Debug, Clone)]
struct Memo {
    id: usize,
    keys: Vec<usize>,
}

#[derive(Debug, Clone)]
enum Node {
    Eq(CTerm, CTerm),
    Le(CTerm, CTerm),
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Implies(Box<Node>, Box<Node>),
    Forall(usize, Box<Node>, Option<Memo>),
    Exists(usize, Box<Node>, Option<Memo>),
}

/// A formula compiled against a fixed list of slot names.
#[derive(Debug, Clone)]
pub struct Compiled {
    root: Node,
    names: Vec<String>,
    n_slots: usize,
    n_memos: usize,
}

/// Per-evaluation scratch: memo tables.
pub struct Scratch {
    memos: Vec<HashMap<u64, bool>>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            memos: vec![HashMap::new(); n],
        }
    }
}

struct Compiler {
    names: Vec<String>,
    n_slots: usize,
    n_memos: usize,
    // slots below this index hold values that stay fixed for a whole Scratch
    n_const: usize,
}

impl Compiler {
    fn term(&self, t: &Term, free: &mut Vec<usize>) -> Result<CTerm> {
        Ok(match t {
            Term::Var(v) => {
                let slot = self
                    .names
                    .iter()
                    .rposition(|n| n == v)
                    .ok_or_else(|| Error::UnboundVariable(v.clone()))?;
                if slot >= self.n_const && !free.contains(&slot) {
                    free.push(slot);
                }
                CTerm::Slot(slot)
            }
            Term::Zero => CTerm::Bottom,
            Term::One => CTerm::Top,
            Term::Meet(a, b) => {
                CTerm::Meet(Box::new(self.term(a, free)?), Box::new(self.term(b, free)?))
            }
            Term::Join(a, b) => {
                CTerm::Join(Box::new(self.term(a, free)?), Box::new(self.term(b, free)?))
            }
        })
    }

    /// Compiles `f`, recording the bound slots it reads into `free`.
    fn node(&mut self, f: &Formula, free: &mut Vec<usize>) -> Result<Node> {
        Ok(match f {
            Formula::Eq(a, b) => Node::Eq(self.term(a, free)?, self.term(b, free)?),
            Formula::Le(a, b) => Node::Le(self.term(a, free)?, self.term(b, free)?),
            Formula::Not(g) => Node::Not(Box::new(self.node(g, free)?)),
            Formula::And(a, b) => {
                Node::And(Box::new(self.node(a, free)?), Box::new(self.node(b, free)?))
            }
            Formula::Or(a, b) => {
                Node::Or(Box::new(self.node(a, free)?), Box::new(self.node(b, free)?))
            }
            Formula::Implies(a, b) => {
                Node::Implies(Box::new(self.node(a, free)?), Box::new(self.node(b, free)?))
            }
            Formula::Forall(v, g) | Formula::Exists(v, g) => {
                let slot = self.names.len();
                self.names.push(v.clone());
                self.n_slots = self.n_slots.max(self.names.len());
                let mut inner = Vec::new();
                let body = self.node(g, &mut inner)?;
                self.names.pop();
                inner.retain(|&s| s != slot);
                let memo = (inner.len() <= MEMO_MAX_KEYS).then(|| {
                    let id = self.n_memos;
                    self.n_memos += 1;
                    let mut keys = inner.clone();
                    keys.sort_unstable();
                    Memo { id, keys }
                });
                for s in inner {
                    if !free.contains(&s) {
                        free.push(s);
                    }
                }
                if matches!(f, Formula::Forall(..)) {
                    Node::Forall(slot, Box::new(body), memo)
                } else {
                    Node::Exists(slot, Box::new(body), memo)
                }
            }
        })
    }
}

impl Compiled {
    /// Compiles `f` with `fixed` naming the slots supplied by the caller.
    /// Free identifiers outside `fixed` are unbound-variable errors.
    ///
    /// All fixed slots are treated as constant, so a [`Scratch`] must not be
    /// reused across different values for them.
    pub fn new<S: AsRef<str>>(f: &Formula, fixed: &[S]) -> Result<Compiled> {
        Self::with_constants(f, fixed, fixed.len())
    }

    /// Like [`Compiled::new`], but only the first `n_const` fixed slots are
    /// constant; the rest may change between evaluations sharing a scratch.
    pub fn with_constants<S: AsRef<str>>(
        f: &Formula,
        fixed: &[S],
        n_const: usize,
    ) -> Result<Compiled> {
        let names: Vec<String> = fixed.iter().map(|s| s.as_ref().to_string()).collect();
        let mut c = Compiler {
            n_const: n_const.min(names.len()),
            n_slots: names.len(),
            names,
            n_memos: 0,
        };
        let root = c.node(f, &mut Vec::new())?;
        Ok(Compiled {
            root,
            names: fixed.iter().map(|s| s.as_ref().to_string()).collect(),
            n_slots: c.n_slots,
            n_memos: c.n_memos,
        })
    }

    pub fn fixed_names(&self) -> &[String] {
        &self.names
    }

    pub fn scratch(&self) -> Scratch {
        Scratch::new(self.n_memos)
    }

    /// Environment with the fixed slots set to `values`.
    pub fn env(&self, values: &[usize]) -> Vec<usize> {
        let mut env = vec![0; self.n_slots];
        env[..values.len()].copy_from_slice(values);
        env
    }

    /// Evaluates with the fixed slots of `env` already populated.
    pub fn eval_env<S: Structure + ?Sized>(
        &self,
        s: &S,
        env: &mut [usize],
        scratch: &mut Scratch,
    ) -> bool {
        eval_node(s, &self.root, env, scratch)
    }

    /// Evaluates `values` (one per fixed slot), fanning the outermost
    /// quantifier out across workers when `exec` allows it.
    pub fn eval<S: Structure + ?Sized>(&self, s: &S, values: &[usize], exec: Exec) -> bool {
        let base = self.env(values);
        match &self.root {
            Node::Forall(slot, body, _) if exec.is_parallel() => exec::all_init(
                exec,
                s.domain_len(),
                || (base.clone(), self.scratch()),
                |(env, scratch), i| {
                    env[*slot] = i;
                    eval_node(s, body, env, scratch)
                },
            ),
            Node::Exists(slot, body, _) if exec.is_parallel() => exec::any_init(
                exec,
                s.domain_len(),
                || (base.clone(), self.scratch()),
                |(env, scratch), i| {
                    env[*slot] = i;
                    eval_node(s, body, env, scratch)
                },
            ),
            root => {
                let mut env = base;
                eval_node(s, root, &mut env, &mut self.scratch())
            }
        }
    }
}

fn term_value<S: Structure + ?Sized>(s: &S, t: &CTerm, env: &[usize]) -> usize {
    match t {
        CTerm::Slot(i) => env[*i],
        CTerm::Bottom => s.bottom(),
        CTerm::Top => s.top(),
        CTerm::Meet(a, b) => s.meet(term_value(s, a, env), term_value(s, b, env)),
        CTerm::Join(a, b) => s.join(term_value(s, a, env), term_value(s, b, env)),
    }
}

fn memo_key(keys: &[usize], env: &[usize]) -> u64 {
    keys.iter()
        .fold(0u64, |acc, &k| (acc << 21) | (env[k] as u64 & 0x1f_ffff))
}

fn eval_node<S: Structure + ?Sized>(
    s: &S,
    node: &Node,
    env: &mut [usize],
    scratch: &mut Scratch,
) -> bool {
    match node {
        Node::Eq(a, b) => term_value(s, a, env) == term_value(s, b, env),
        Node::Le(a, b) => s.le(term_value(s, a, env), term_value(s, b, env)),
        Node::Not(g) => !eval_node(s, g, env, scratch),
        Node::And(a, b) => eval_node(s, a, env, scratch) && eval_node(s, b, env, scratch),
        Node::Or(a, b) => eval_node(s, a, env, scratch) || eval_node(s, b, env, scratch),
        Node::Implies(a, b) => !eval_node(s, a, env, scratch) || eval_node(s, b, env, scratch),
        Node::Forall(slot, body, memo) | Node::Exists(slot, body, memo) => {
            let universal = matches!(node, Node::Forall(..));
            let key = memo.as_ref().map(|m| (m.id, memo_key(&m.keys, env)));
            if let Some((id, k)) = key {
                if let Some(&v) = scratch.memos[id].get(&k) {
                    return v;
                }
            }
            let saved = env[*slot];
            let mut result = universal;
            for i in 0..s.domain_len() {
                env[*slot] = i;
                if eval_node(s, body, env, scratch) != universal {
                    result = !universal;
                    break;
                }
            }
            env[*slot] = saved;
            if let Some((id, k)) = key {
                let table = &mut scratch.memos[id];
                if table.len() < MEMO_MAX_ENTRIES {
                    table.insert(k, result);
                }
            }
            result
        }
    }
}

/// Searches `domain^k` in lexicographic order for the first tuple that makes
/// the compiled matrix true. The first `values.len()` slots are fixed from
/// `values`; the next `k` slots hold the witnesses, so the matrix must have
/// been compiled with [`Compiled::with_constants`] and `n_const <= values.len()`.
pub fn first_witness<S: Structure + ?Sized>(
    s: &S,
    matrix: &Compiled,
    values: &[usize],
    k: usize,
    domain: &[usize],
    exec: Exec,
) -> Option<Vec<usize>> {
    let n_fixed = values.len();
    let search =
        |env: &mut Vec<usize>, scratch: &mut Scratch, first: usize| -> Option<Vec<usize>> {
            env[n_fixed] = domain[first];
            let mut idx = vec![0usize; k];
            idx[0] = first;
            if k == 1 {
                return matrix
                    .eval_env(s, env, scratch)
                    .then(|| vec![domain[first]]);
            }
            // odometer over positions 1..k
            for p in 1..k {
                env[n_fixed + p] = domain[0];
            }
            loop {
                if matrix.eval_env(s, env, scratch) {
                    return Some(env[n_fixed..n_fixed + k].to_vec());
                }
                let mut p = k - 1;
                loop {
                    idx[p] += 1;
                    if idx[p] < domain.len() {
                        env[n_fixed + p] = domain[idx[p]];
                        break;
                    }
                    idx[p] = 0;
                    env[n_fixed + p] = domain[0];
                    if p == 1 {
                        return None;
                    }
                    p -= 1;
                }
            }
        };
    if k == 0 {
        let mut env = matrix.env(values);
        return matrix
            .eval_env(s, &mut env, &mut matrix.scratch())
            .then(Vec::new);
    }
    if domain.is_empty() {
        return None;
    }
    exec::find_first_init(
        exec,
        domain.len(),
        || (matrix.env(values), matrix.scratch()),
        |(env, scratch), first| search(env, scratch, first),
    )
}

fn lattice_values(l: &Lattice, f: &Formula, asn: &Assignment) -> Result<(Vec<String>, Vec<usize>)> {
    let names: Vec<String> = f.params().into_iter().collect();
    let mut values = Vec::with_capacity(names.len());
    for n in &names {
        let e = asn
            .get(n)
            .ok_or_else(|| Error::input(format!("parameter `{n}` is not assigned")))?;
        l.check_ref(*e)?;
        values.push(e.0);
    }
    Ok((names, values))
}

/// Classical satisfaction of `f` in `l` under `asn`.
pub fn eval(l: &Lattice, f: &Formula, asn: &Assignment) -> Result<bool> {
    eval_with(l, f, asn, Exec::default())
}

pub fn eval_with(l: &Lattice, f: &Formula, asn: &Assignment, exec: Exec) -> Result<bool> {
    let (names, values) = lattice_values(l, f, asn)?;
    let c = Compiled::new(f, &names)?;
    Ok(c.eval(l, &values, exec))
}

/// For `f = ∃v1…∃vk. matrix`, the first `(v1, …, vk)` in canonical order
/// making the matrix true, as an extension of `asn`.
pub fn find_witness(l: &Lattice, f: &Formula, asn: &Assignment) -> Result<Option<Assignment>> {
    find_witness_with(l, f, asn, Exec::default())
}

pub fn find_witness_with(
    l: &Lattice,
    f: &Formula,
    asn: &Assignment,
    exec: Exec,
) -> Result<Option<Assignment>> {
    let (vars, matrix) = f.existential_block();
    if vars.is_empty() {
        return Err(Error::input(
            "witness search needs a formula that starts with an existential quantifier",
        ));
    }
    let (names, values) = lattice_values(l, f, asn)?;
    let fixed: Vec<String> = names.iter().chain(vars.iter()).cloned().collect();
    let c = Compiled::with_constants(matrix, &fixed, names.len())?;
    let domain: Vec<usize> = (0..l.len()).collect();
    Ok(
        first_witness(l, &c, &values, vars.len(), &domain, exec).map(|w| {
            let mut out = asn.clone();
            for (v, e) in vars.iter().zip(w) {
                out.insert(v.clone(), ElementRef(e));
            }
            out
        }),
    )
}
