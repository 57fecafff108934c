//! Canonical closed subsets of [0,1] built from segments, points and
//! geometric tails.

use std::cmp::Ordering;
use std::fmt;

use super::num::Num;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    /// Points `limit + 2^-n`.
    Up,
    /// Points `limit - 2^-n`.
    Down,
}

impl Dir {
    pub fn symbol(self) -> char {
        match self {
            Dir::Up => '+',
            Dir::Down => '-',
        }
    }
}

/// A closed segment `[lo, hi]`; a point when `lo == hi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub lo: Num,
    pub hi: Num,
}

impl Segment {
    pub fn new(lo: Num, hi: Num) -> Segment {
        debug_assert!(lo <= hi);
        Segment { lo, hi }
    }

    pub fn point(x: Num) -> Segment {
        Segment {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Num) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn span(&self) -> Span {
        Span::closed(self.lo.clone(), self.hi.clone())
    }
}

/// `{limit ± 2^-n : n ≥ n0}` together with `limit`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tail {
    pub limit: Num,
    pub dir: Dir,
    pub n0: u32,
}

/// A run of tail indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Indices {
    Empty,
    /// `lo..=hi`
    Finite(u32, u32),
    /// `lo..`
    From(u32),
}

impl Indices {
    pub fn iter_finite(self) -> impl Iterator<Item = u32> {
        let (lo, hi) = match self {
            Indices::Finite(lo, hi) => (lo, hi + 1),
            _ => (0, 0),
        };
        lo..hi
    }
}

impl Tail {
    pub fn new(limit: Num, dir: Dir, n0: u32) -> Tail {
        Tail { limit, dir, n0 }
    }

    pub fn point(&self, n: u32) -> Num {
        let step = Num::pow2_inv(n);
        match self.dir {
            Dir::Up => &self.limit + &step,
            Dir::Down => &self.limit - &step,
        }
    }

    /// Signed distance from the limit, positive on the tail's side.
    pub fn offset(&self, x: &Num) -> Num {
        match self.dir {
            Dir::Up => x - &self.limit,
            Dir::Down => &self.limit - x,
        }
    }

    /// Index of `x` among the tail's points (the limit has none).
    pub fn index_of(&self, x: &Num) -> Option<u32> {
        self.offset(x).dyadic_exponent().filter(|&n| n >= self.n0)
    }

    pub fn contains(&self, x: &Num) -> bool {
        x == &self.limit || self.index_of(x).is_some()
    }

    pub fn key(&self) -> (&Num, Dir) {
        (&self.limit, self.dir)
    }

    /// Indices `n ≥ n0` whose point lies in `s`.
    pub fn indices_in(&self, s: &Span) -> Indices {
        // in offset coordinates the points are 2^-n
        let (tlo, lo_closed, thi, hi_closed) = match self.dir {
            Dir::Up => (
                self.offset(&s.lo),
                s.lo_closed,
                self.offset(&s.hi),
                s.hi_closed,
            ),
            Dir::Down => (
                self.offset(&s.hi),
                s.hi_closed,
                self.offset(&s.lo),
                s.lo_closed,
            ),
        };
        if !thi.is_positive() {
            return Indices::Empty;
        }
        let first = thi.first_pow2_below(!hi_closed).max(self.n0);
        if !tlo.is_positive() {
            return Indices::From(first);
        }
        let past = tlo.first_pow2_below(lo_closed);
        if past == 0 || past - 1 < first {
            Indices::Empty
        } else {
            Indices::Finite(first, past - 1)
        }
    }

    /// Whether a segment swallows every point from some index on.
    fn eventually_in(&self, s: &Segment) -> bool {
        match self.dir {
            Dir::Up => s.lo <= self.limit && self.limit < s.hi,
            Dir::Down => s.lo < self.limit && self.limit <= s.hi,
        }
    }

    /// Indices of this tail's points that are also points of `other`.
    pub fn common_indices(&self, other: &Tail) -> Vec<u32> {
        if self.limit == other.limit {
            // opposite sides never share a point; equal keys are merged upstream
            return Vec::new();
        }
        let r = (&self.limit - &other.limit).abs().half();
        let mut out = Vec::new();
        let far = |n: u32| Num::pow2_inv(n) >= r;
        let mut n = self.n0;
        while far(n) {
            if other.index_of(&self.point(n)).is_some() {
                out.push(n);
            }
            n += 1;
        }
        let mut m = other.n0;
        while far(m) {
            if let Some(k) = self.index_of(&other.point(m)) {
                out.push(k);
            }
            m += 1;
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// An interval with independently open or closed ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span {
    pub lo: Num,
    pub lo_closed: bool,
    pub hi: Num,
    pub hi_closed: bool,
}

impl Span {
    pub fn closed(lo: Num, hi: Num) -> Span {
        Span {
            lo,
            lo_closed: true,
            hi,
            hi_closed: true,
        }
    }

    pub fn open(lo: Num, hi: Num) -> Span {
        Span {
            lo,
            lo_closed: false,
            hi,
            hi_closed: false,
        }
    }

    pub fn contains(&self, x: &Num) -> bool {
        let above = match x.cmp(&self.lo) {
            Ordering::Greater => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Less => false,
        };
        let below = match x.cmp(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => self.hi_closed,
            Ordering::Greater => false,
        };
        above && below
    }

    pub fn meets_segment(&self, s: &Segment) -> bool {
        let left_ok = match s.hi.cmp(&self.lo) {
            Ordering::Greater => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Less => false,
        };
        let right_ok = match s.lo.cmp(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => self.hi_closed,
            Ordering::Greater => false,
        };
        left_ok && right_ok
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// A raw building block; sets are finite unions of these.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Piece {
    Seg(Segment),
    Tail(Tail),
}

/// A closed subset of [0,1] in canonical form.
///
/// Segments are sorted, pairwise disjoint and non-touching. Each tail
/// includes its limit, has a distinct `(limit, dir)`, and starts at the
/// least index from which all its points belong to no segment, no other
/// tail's limit and no earlier tail. Isolated points that coincide with a
/// tail point or limit are folded into that tail. Under these rules equal
/// sets have equal representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntervalSet {
    segs: Vec<Segment>,
    tails: Vec<Tail>,
}

fn merge_segments(mut segs: Vec<Segment>) -> Vec<Segment> {
    segs.sort();
    let mut out: Vec<Segment> = Vec::with_capacity(segs.len());
    for s in segs {
        match out.last_mut() {
            Some(last) if s.lo <= last.hi => {
                if s.hi > last.hi {
                    last.hi = s.hi;
                }
            }
            _ => out.push(s),
        }
    }
    out
}

impl IntervalSet {
    pub fn empty() -> IntervalSet {
        IntervalSet::default()
    }

    pub fn full() -> IntervalSet {
        IntervalSet::segment(Num::zero(), Num::one())
    }

    /// `[lo, hi]` clipped to [0,1]; empty when `lo > hi`.
    pub fn segment(lo: Num, hi: Num) -> IntervalSet {
        if lo > hi {
            return IntervalSet::empty();
        }
        IntervalSet::from_pieces(vec![Piece::Seg(Segment::new(lo, hi))])
    }

    pub fn point(x: Num) -> IntervalSet {
        IntervalSet::segment(x.clone(), x)
    }

    pub fn points(xs: impl IntoIterator<Item = Num>) -> IntervalSet {
        IntervalSet::from_pieces(
            xs.into_iter()
                .map(|x| Piece::Seg(Segment::point(x)))
                .collect(),
        )
    }

    pub fn tail(limit: Num, dir: Dir, n0: u32) -> IntervalSet {
        IntervalSet::from_pieces(vec![Piece::Tail(Tail::new(limit, dir, n0))])
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segs
    }

    pub fn tails(&self) -> &[Tail] {
        &self.tails
    }

    pub fn is_empty(&self) -> bool {
        self.segs.is_empty() && self.tails.is_empty()
    }

    pub fn is_full(&self) -> bool {
        *self == IntervalSet::full()
    }

    pub fn pieces(&self) -> Vec<Piece> {
        self.segs
            .iter()
            .cloned()
            .map(Piece::Seg)
            .chain(self.tails.iter().cloned().map(Piece::Tail))
            .collect()
    }

    pub fn contains(&self, x: &Num) -> bool {
        self.segs.iter().any(|s| s.contains(x)) || self.tails.iter().any(|t| t.contains(x))
    }

    pub fn meets(&self, s: &Span) -> bool {
        self.segs.iter().any(|g| s.meets_segment(g))
            || self
                .tails
                .iter()
                .any(|t| s.contains(&t.limit) || t.indices_in(s) != Indices::Empty)
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut p = self.pieces();
        p.extend(other.pieces());
        IntervalSet::from_pieces(p)
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        for a in self.pieces() {
            for b in other.pieces() {
                intersect_pieces(&a, &b, &mut out);
            }
        }
        IntervalSet::from_pieces(out)
    }

    pub fn is_subset(&self, other: &IntervalSet) -> bool {
        self.intersect(other) == *self
    }

    pub fn is_disjoint(&self, other: &IntervalSet) -> bool {
        self.intersect(other).is_empty()
    }

    /// Every coordinate that shapes the set: segment ends, isolated points
    /// and tail limits (not tail points).
    pub fn critical_coords(&self) -> Vec<Num> {
        let mut v: Vec<Num> = self
            .segs
            .iter()
            .flat_map(|s| [s.lo.clone(), s.hi.clone()])
            .chain(self.tails.iter().map(|t| t.limit.clone()))
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// Canonical form of a finite union of pieces. Pieces may reach outside
    /// [0,1]; they are clipped.
    pub fn from_pieces(pieces: Vec<Piece>) -> IntervalSet {
        let unit = Span::closed(Num::zero(), Num::one());
        let mut segs = Vec::new();
        let mut tails: Vec<Tail> = Vec::new();
        for p in pieces {
            match p {
                Piece::Seg(s) => {
                    let lo = s.lo.max(Num::zero());
                    let hi = s.hi.min(Num::one());
                    if lo <= hi {
                        segs.push(Segment::new(lo, hi));
                    }
                }
                Piece::Tail(t) => {
                    if unit.contains(&t.limit) {
                        segs.push(Segment::point(t.limit.clone()));
                    }
                    match t.indices_in(&unit) {
                        Indices::Empty => {}
                        Indices::From(n) => tails.push(Tail { n0: n, ..t }),
                        r @ Indices::Finite(..) => {
                            segs.extend(r.iter_finite().map(|n| Segment::point(t.point(n))))
                        }
                    }
                }
            }
        }
        let mut segs = merge_segments(segs);

        tails.sort();
        tails.dedup_by(|b, a| {
            // sorted, so `a` has the smaller n0 for an equal key
            a.key() == b.key()
        });

        let mut kept = Vec::new();
        for t in tails {
            match segs.iter().find(|s| !s.is_point() && t.eventually_in(s)) {
                Some(s) => {
                    let inside = t.indices_in(&s.span());
                    let start = match inside {
                        Indices::From(k) => k,
                        _ => unreachable!("segment holds the limit and one side of it"),
                    };
                    segs.extend((t.n0..start).map(|n| Segment::point(t.point(n))));
                }
                None => kept.push(t),
            }
        }
        let mut segs_merged = merge_segments(std::mem::take(&mut segs));

        let mut extra: Vec<Num> = Vec::new();
        for i in 0..kept.len() {
            let blocked_from = {
                let t = &kept[i];
                let mut hi: Option<u32> = None;
                let mut bump = |n: u32| {
                    if n >= t.n0 {
                        hi = Some(hi.map_or(n, |h| h.max(n)));
                    }
                };
                for s in segs_merged.iter().filter(|s| !s.is_point()) {
                    if let Indices::Finite(_, b) = t.indices_in(&s.span()) {
                        bump(b);
                    }
                }
                for (j, o) in kept.iter().enumerate() {
                    if j != i {
                        if let Some(n) = t.index_of(&o.limit) {
                            bump(n);
                        }
                    }
                }
                for o in &kept[..i] {
                    for n in t.common_indices(o) {
                        bump(n);
                    }
                }
                hi
            };
            if let Some(b) = blocked_from {
                let t = &kept[i];
                extra.extend((t.n0..=b).map(|n| t.point(n)));
                kept[i].n0 = b + 1;
            }
            loop {
                let t = &kept[i];
                if t.n0 == 0 {
                    break;
                }
                let n = t.n0 - 1;
                let p = t.point(n);
                if !unit.contains(&p) {
                    break;
                }
                let present = segs_merged.iter().any(|s| s.contains(&p))
                    || extra.contains(&p)
                    || kept
                        .iter()
                        .enumerate()
                        .any(|(j, o)| j != i && o.contains(&p));
                let blocked = segs_merged.iter().any(|s| !s.is_point() && s.contains(&p))
                    || kept.iter().enumerate().any(|(j, o)| j != i && o.limit == p)
                    || kept[..i].iter().any(|o| o.index_of(&p).is_some());
                if !present || blocked {
                    break;
                }
                kept[i].n0 = n;
            }
        }

        segs_merged.extend(extra.into_iter().map(Segment::point));
        segs_merged = merge_segments(segs_merged);
        segs_merged.retain(|s| !(s.is_point() && kept.iter().any(|t| t.contains(&s.lo))));
        IntervalSet {
            segs: segs_merged,
            tails: kept,
        }
    }
}

fn intersect_pieces(a: &Piece, b: &Piece, out: &mut Vec<Piece>) {
    match (a, b) {
        (Piece::Seg(x), Piece::Seg(y)) => {
            let lo = (&x.lo).max(&y.lo).clone();
            let hi = (&x.hi).min(&y.hi).clone();
            if lo <= hi {
                out.push(Piece::Seg(Segment::new(lo, hi)));
            }
        }
        (Piece::Seg(s), Piece::Tail(t)) | (Piece::Tail(t), Piece::Seg(s)) => {
            if s.contains(&t.limit) {
                out.push(Piece::Seg(Segment::point(t.limit.clone())));
            }
            match t.indices_in(&s.span()) {
                Indices::Empty => {}
                Indices::From(n) => out.push(Piece::Tail(Tail { n0: n, ..t.clone() })),
                r @ Indices::Finite(..) => out.extend(
                    r.iter_finite()
                        .map(|n| Piece::Seg(Segment::point(t.point(n)))),
                ),
            }
        }
        (Piece::Tail(x), Piece::Tail(y)) => {
            if x.key() == y.key() {
                out.push(Piece::Tail(Tail {
                    n0: x.n0.max(y.n0),
                    ..x.clone()
                }));
                return;
            }
            for n in x.common_indices(y) {
                out.push(Piece::Seg(Segment::point(x.point(n))));
            }
            if y.contains(&x.limit) {
                out.push(Piece::Seg(Segment::point(x.limit.clone())));
            }
            if x.contains(&y.limit) {
                out.push(Piece::Seg(Segment::point(y.limit.clone())));
            }
        }
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "pt({})", self.lo)
        } else {
            write!(f, "[{},{}]", self.lo, self.hi)
        }
    }
}

impl fmt::Display for Tail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tail({},{},{})", self.limit, self.dir.symbol(), self.n0)
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "empty");
        }
        let mut items: Vec<(&Num, String)> = self
            .segs
            .iter()
            .map(|s| (&s.lo, s.to_string()))
            .chain(self.tails.iter().map(|t| (&t.limit, t.to_string())))
            .collect();
        items.sort_by(|a, b| a.0.cmp(b.0));
        let parts: Vec<String> = items.into_iter().map(|(_, s)| s).collect();
        write!(f, "{}", parts.join(" u "))
    }
}

impl serde::Serialize for IntervalSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
