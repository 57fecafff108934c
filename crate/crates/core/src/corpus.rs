//! Seeded corpus of small subbase-closure lattices.
//!
//! Entry `i` is drawn from its own ChaCha8 stream keyed by `(seed, i)`, so a
//! corpus is a prefix of any longer corpus with the same seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::Bounds;
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::lattice::{members, Lattice, Mask};

/// Largest ground set the corpus builder accepts.
pub const MAX_CORPUS_GROUND: usize = 6;

/// One corpus lattice in its on-disk form. Loads as a plain lattice file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub ground: usize,
    pub subbase: Vec<Vec<usize>>,
    pub elements: Vec<Vec<usize>>,
    pub separative: bool,
    pub normal: bool,
}

impl CorpusEntry {
    pub fn lattice(&self) -> Lattice {
        Lattice::from_family(self.ground, &self.elements).expect("corpus entry is a lattice")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("corpus entry serializes")
    }
}

fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Mixes three shapes: blocks of a random partition (Boolean, separative and
/// normal), random sets, and random sets plus a few blocks.
fn draw_subbase(rng: &mut ChaCha8Rng, ground: usize) -> Vec<Mask> {
    let full: Mask = (1 << ground) - 1;
    let random_sets = |rng: &mut ChaCha8Rng, k: usize| -> Vec<Mask> {
        (0..k).map(|_| rng.gen_range(1..=full)).collect::<Vec<_>>()
    };
    let blocks = |rng: &mut ChaCha8Rng| -> Vec<Mask> {
        let mut order: Vec<usize> = (0..ground).collect();
        order.shuffle(rng);
        let mut out = Vec::new();
        let mut cur: Mask = 0;
        for (j, &p) in order.iter().enumerate() {
            cur |= 1 << p;
            if j + 1 == ground || rng.gen_bool(0.6) {
                out.push(cur);
                cur = 0;
            }
        }
        out
    };
    match rng.gen_range(0..3) {
        0 => blocks(rng),
        1 => {
            let k = rng.gen_range(1..=ground + 1);
            random_sets(rng, k)
        }
        _ => {
            let mut b = blocks(rng);
            let keep = rng.gen_range(1..=b.len());
            b.truncate(keep);
            let k = rng.gen_range(1..=ground);
            b.extend(random_sets(rng, k));
            b
        }
    }
}

fn entry(index: usize, ground_max: usize, seed: u64, bounds: &Bounds) -> Result<CorpusEntry> {
    let mut rng = stream(seed, index as u64);
    let ground = rng.gen_range(1..=ground_max);
    let mut subbase = draw_subbase(&mut rng, ground);
    subbase.sort_unstable();
    subbase.dedup();
    let l = Lattice::close_mask_subbase(ground, subbase.iter().copied(), bounds)?;
    Ok(CorpusEntry {
        name: format!("corpus-{seed}-{index:04}"),
        ground,
        subbase: subbase.iter().map(|&m| members(m)).collect(),
        elements: l.refs().map(|e| l.members(e)).collect(),
        separative: l.is_separative_with(Exec::Sequential),
        normal: l.is_normal_with(Exec::Sequential),
    })
}

pub fn corpus_generate(count: usize, ground_max: usize, seed: u64) -> Result<Vec<CorpusEntry>> {
    corpus_generate_with(count, ground_max, seed, &Bounds::default(), Exec::default())
}

pub fn corpus_generate_with(
    count: usize,
    ground_max: usize,
    seed: u64,
    bounds: &Bounds,
    exec: Exec,
) -> Result<Vec<CorpusEntry>> {
    if ground_max > MAX_CORPUS_GROUND.min(bounds.max_ground) {
        return Err(Error::resource(format!(
            "corpus ground size {ground_max} exceeds bound {MAX_CORPUS_GROUND}"
        )));
    }
    if count == 0 {
        return Ok(Vec::new());
    }
    if ground_max == 0 {
        return Err(Error::input("corpus ground size must be at least 1"));
    }
    let indices: Vec<usize> = (0..count).collect();
    exec::map(exec, &indices, |&i| entry(i, ground_max, seed, bounds))
        .into_iter()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{delta_formula, eval};

    #[test]
    fn reproducible_and_prefix_stable() {
        let a = corpus_generate(12, 4, 7).unwrap();
        let b = corpus_generate_with(5, 4, 7, &Bounds::default(), Exec::Sequential).unwrap();
        assert_eq!(&a[..5], &b[..]);
        let c = corpus_generate(12, 4, 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn bounds() {
        assert!(corpus_generate(0, 2, 1).unwrap().is_empty());
        assert!(corpus_generate(3, 9, 1).unwrap_err().is_resource());
        assert!(matches!(corpus_generate(3, 0, 1), Err(Error::Input(_))));
    }

    #[test]
    fn entries_round_trip_as_lattice_files() {
        for e in corpus_generate(20, 5, 3).unwrap() {
            let l = Lattice::from_json(&e.to_json()).unwrap();
            assert_eq!(l, e.lattice());
            let back: CorpusEntry = serde_json::from_str(&e.to_json()).unwrap();
            assert_eq!(back, e);
            // the closure of the subbase reproduces the elements
            let again = Lattice::close_subbase(e.ground, &e.subbase).unwrap();
            assert_eq!(again, l);
        }
    }

    #[test]
    fn corpus_is_mixed() {
        let c = corpus_generate(200, 6, 0).unwrap();
        let sep_normal = c.iter().filter(|e| e.separative && e.normal).count();
        let sep_only = c.iter().filter(|e| e.separative && !e.normal).count();
        let non_sep = c.iter().filter(|e| !e.separative).count();
        assert!(sep_normal > 20 && non_sep > 20, "{sep_normal} {non_sep}");
        // finite and separative forces a discrete Wallman space, so Boolean
        assert_eq!(sep_only, 0);
    }

    #[test]
    fn negation_duality_on_corpus() {
        let f = delta_formula(0).unwrap();
        let nf = f.clone().not();
        for e in corpus_generate(40, 4, 11).unwrap() {
            let l = e.lattice();
            let asn = Default::default();
            assert_eq!(eval(&l, &nf, &asn).unwrap(), !eval(&l, &f, &asn).unwrap());
        }
    }
}
