//! Seeded random interval sets for batch experiments.

use rand::Rng;

use super::num::Num;
use super::set::{Dir, IntervalSet, Piece, Segment, Tail};

/// Coordinates drawn on: sixteenths and a few irrationals.
pub fn coordinate_pool() -> Vec<Num> {
    let mut v: Vec<Num> = (0..=16).map(|k| Num::frac(k, 16)).collect();
    v.extend([
        Num::surd(0, 1, 1, 2),
        Num::surd(0, 1, 1, 4),
        Num::surd(1, 1, -1, 2),
        Num::surd(1, 8, 1, 4),
    ]);
    v.sort();
    v
}

fn pick<R: Rng + ?Sized>(rng: &mut R, pool: &[Num]) -> Num {
    pool[rng.gen_range(0..pool.len())].clone()
}

/// Up to `max_pieces` random segments, points and tails.
pub fn random_set<R: Rng + ?Sized>(rng: &mut R, max_pieces: usize) -> IntervalSet {
    let pool = coordinate_pool();
    let k = rng.gen_range(1..=max_pieces.max(1));
    let mut pieces = Vec::with_capacity(k);
    for _ in 0..k {
        let roll = rng.gen_range(0..10);
        pieces.push(if roll < 5 {
            let (a, b) = (pick(rng, &pool), pick(rng, &pool));
            Piece::Seg(Segment::new(a.clone().min(b.clone()), a.max(b)))
        } else if roll < 7 {
            Piece::Seg(Segment::point(pick(rng, &pool)))
        } else {
            let dir = if rng.gen_bool(0.5) {
                Dir::Up
            } else {
                Dir::Down
            };
            Piece::Tail(Tail::new(pick(rng, &pool), dir, rng.gen_range(0..6)))
        });
    }
    IntervalSet::from_pieces(pieces)
}

/// Random nonempty disjoint sets, confined to alternating bands of [0,1].
pub fn random_disjoint_pair<R: Rng + ?Sized>(rng: &mut R) -> (IntervalSet, IntervalSet) {
    loop {
        let mut cuts: Vec<Num> = (0..rng.gen_range(2..6))
            .map(|_| Num::frac(rng.gen_range(1..64), 64))
            .collect();
        cuts.push(Num::zero());
        cuts.push(Num::one());
        cuts.sort();
        cuts.dedup();
        let mut bands = [Vec::new(), Vec::new()];
        for (i, w) in cuts.windows(2).enumerate() {
            // shave a little off each side so that neighbouring bands stay apart
            let pad = Num::frac(1, 256);
            let (lo, hi) = (&w[0] + &pad, &w[1] - &pad);
            if lo < hi {
                bands[i % 2].push(Piece::Seg(Segment::new(lo, hi)));
            }
        }
        let a = IntervalSet::from_pieces(std::mem::take(&mut bands[0]));
        let b = IntervalSet::from_pieces(std::mem::take(&mut bands[1]));
        let x = random_set(rng, 4).intersect(&a);
        let y = random_set(rng, 4).intersect(&b);
        if !x.is_empty() && !y.is_empty() {
            return (x, y);
        }
    }
}

/// Three random sets with empty common intersection.
pub fn random_triple<R: Rng + ?Sized>(rng: &mut R) -> [IntervalSet; 3] {
    loop {
        let t = [random_set(rng, 3), random_set(rng, 3), random_set(rng, 3)];
        if t[0].intersect(&t[1]).intersect(&t[2]).is_empty() {
            return t;
        }
    }
}
