//! Topology on [0,1]: connectedness, cuts, partitions and component splits.
//!
//! Everything reduces to the components of the complement of a closed set
//! `w`. Away from tail limits there are finitely many. Near the limit of a
//! tail of `w` they come in an infinite family of gaps between consecutive
//! tail points; once the family is deep enough that no other critical
//! coordinate of the sets involved interrupts it, all its gaps look alike
//! and one representative decides for the lot.

use std::fmt;

use super::num::Num;
use super::set::{Dir, IntervalSet, Piece, Segment, Span, Tail};

/// A component of `[0,1] ∖ w`, or a family of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gap {
    Single(Span),
    /// The gaps between points `n` and `n+1` of `tail`, for all `n ≥ from`.
    Family {
        tail: Tail,
        from: u32,
        rep: Span,
    },
}

impl Gap {
    pub fn span(&self) -> &Span {
        match self {
            Gap::Single(s) => s,
            Gap::Family { rep, .. } => rep,
        }
    }

    /// Closure of the union of the gaps.
    fn closure(&self) -> Segment {
        match self {
            Gap::Single(s) => Segment::new(s.lo.clone(), s.hi.clone()),
            Gap::Family { tail, from, .. } => {
                let p = tail.point(*from);
                match tail.dir {
                    Dir::Up => Segment::new(tail.limit.clone(), p),
                    Dir::Down => Segment::new(p, tail.limit.clone()),
                }
            }
        }
    }
}

/// Depth from which the tail's own points are the only critical
/// coordinates of `sets` on its side of the limit.
fn window_depth(t: &Tail, sets: &[&IntervalSet]) -> u32 {
    let mut best: Option<Num> = None;
    let mut consider = |d: Num| {
        if d.is_positive() && best.as_ref().is_none_or(|b| &d < b) {
            best = Some(d);
        }
    };
    for s in sets {
        for q in s.critical_coords() {
            consider(t.offset(&q));
        }
        for o in s.tails() {
            if o.limit == t.limit {
                continue;
            }
            // points of `o` closer to `t.limit` than `r` sit at offsets >= 2r
            // from o's limit, hence have 2^-m >= 2r > r
            let r = (&o.limit - &t.limit).abs().half();
            let mut m = o.n0;
            while Num::pow2_inv(m) >= r {
                consider(t.offset(&o.point(m)));
                m += 1;
            }
            consider(r);
        }
    }
    match best {
        Some(d) => d.first_pow2_below(true).max(t.n0),
        None => t.n0,
    }
}

/// The components of `[0,1] ∖ w`, uniform with respect to every set in
/// `context`.
pub fn complement_gaps(w: &IntervalSet, context: &[&IntervalSet]) -> Vec<Gap> {
    let sets: Vec<&IntervalSet> = std::iter::once(w).chain(context.iter().copied()).collect();
    let depths: Vec<u32> = w.tails().iter().map(|t| window_depth(t, &sets)).collect();
    let mut atoms: Vec<Segment> = w.segments().to_vec();
    for (t, &n) in w.tails().iter().zip(&depths) {
        atoms.push(Segment::point(t.limit.clone()));
        atoms.extend((t.n0..=n).map(|k| Segment::point(t.point(k))));
    }
    atoms.sort();
    let mut merged: Vec<Segment> = Vec::new();
    for s in atoms {
        match merged.last_mut() {
            Some(last) if s.lo <= last.hi => {
                if s.hi > last.hi {
                    last.hi = s.hi;
                }
            }
            _ => merged.push(s),
        }
    }
    let (zero, one) = (Num::zero(), Num::one());
    let Some(first) = merged.first() else {
        return vec![Gap::Single(Span::closed(zero, one))];
    };
    let mut out = Vec::new();
    if first.lo > zero {
        out.push(Gap::Single(Span {
            lo: zero,
            lo_closed: true,
            hi: first.lo.clone(),
            hi_closed: false,
        }));
    }
    for pair in merged.windows(2) {
        let (a, b) = (&pair[0].hi, &pair[1].lo);
        let family = w.tails().iter().zip(&depths).find(|(t, &n)| match t.dir {
            Dir::Up => &t.limit == a && &t.point(n) == b,
            Dir::Down => &t.point(n) == a && &t.limit == b,
        });
        out.push(match family {
            Some((t, &n)) => {
                let (p, q) = (t.point(n), t.point(n + 1));
                let rep = match t.dir {
                    Dir::Up => Span::open(q, p),
                    Dir::Down => Span::open(p, q),
                };
                Gap::Family {
                    tail: t.clone(),
                    from: n,
                    rep,
                }
            }
            None => Gap::Single(Span::open(a.clone(), b.clone())),
        });
    }
    let last = &merged[merged.len() - 1].hi;
    if *last < one {
        out.push(Gap::Single(Span {
            lo: last.clone(),
            lo_closed: false,
            hi: one,
            hi_closed: true,
        }));
    }
    out
}

/// Topological connectedness: a single segment or point. The empty set
/// counts as disconnected.
pub fn is_connected_pointset(x: &IntervalSet) -> bool {
    x.segments().len() == 1 && x.tails().is_empty()
}

/// Whether every closed interval of [0,1] meeting both `x` and `y` meets
/// `u`. Quantifies over all real intervals, not over lattice elements.
pub fn verify_cut(u: &IntervalSet, x: &IntervalSet, y: &IntervalSet) -> bool {
    if x.is_empty() || y.is_empty() {
        return true;
    }
    complement_gaps(u, &[x, y])
        .iter()
        .all(|g| !(x.meets(g.span()) && y.meets(g.span())))
}

/// Closed `f`, `g` with `x ∩ f = ∅`, `y ∩ g = ∅`, `f ∪ g = [0,1]` and
/// `f ∩ g = u`, or `None` when no such pair exists.
///
/// Complement components of `u` that meet `x` go to `g`; all others go
/// to `f`.
pub fn verify_partition(
    u: &IntervalSet,
    x: &IntervalSet,
    y: &IntervalSet,
) -> Option<(IntervalSet, IntervalSet)> {
    if !u.is_disjoint(x) || !u.is_disjoint(y) {
        return None;
    }
    let mut f = u.pieces();
    let mut g = u.pieces();
    for gap in complement_gaps(u, &[x, y]) {
        let (mx, my) = (x.meets(gap.span()), y.meets(gap.span()));
        if mx && my {
            return None;
        }
        let side = if mx { &mut g } else { &mut f };
        side.push(Piece::Seg(gap.closure()));
    }
    let (f, g) = (IntervalSet::from_pieces(f), IntervalSet::from_pieces(g));
    debug_assert!(f.is_disjoint(x) && g.is_disjoint(y));
    debug_assert!(f.union(&g).is_full() && f.intersect(&g) == *u);
    Some((f, g))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CutError {
    #[error("the two sets intersect")]
    NotDisjoint,
    #[error("both sets must be nonempty")]
    Empty,
}

/// A finite cut between disjoint nonempty `x` and `y`: the midpoint of
/// every complement gap of `x ∪ y` with one end in `x` and the other in `y`.
pub fn make_cut(x: &IntervalSet, y: &IntervalSet) -> Result<IntervalSet, CutError> {
    if x.is_empty() || y.is_empty() {
        return Err(CutError::Empty);
    }
    if !x.is_disjoint(y) {
        return Err(CutError::NotDisjoint);
    }
    let w = x.union(y);
    let mut points = Vec::new();
    for gap in complement_gaps(&w, &[x, y]) {
        let Gap::Single(s) = gap else { continue };
        if s.lo_closed || s.hi_closed {
            continue;
        }
        let separates =
            (x.contains(&s.lo) && y.contains(&s.hi)) || (y.contains(&s.lo) && x.contains(&s.hi));
        if separates {
            points.push(s.lo.midpoint(&s.hi));
        }
    }
    Ok(IntervalSet::points(points))
}

/// A component of `h` that meets both sets handed to [`component_split`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedComponent(pub IntervalSet);

impl fmt::Display for MixedComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "component {} meets both sets", self.0)
    }
}

impl std::error::Error for MixedComponent {}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    F,
    G,
}

fn side_of(
    meets_a: bool,
    meets_b: bool,
    component: impl FnOnce() -> IntervalSet,
) -> Result<Side, MixedComponent> {
    match (meets_a, meets_b) {
        (true, true) => Err(MixedComponent(component())),
        (false, true) => Ok(Side::G),
        _ => Ok(Side::F),
    }
}

/// Splits `h` into disjoint closed `f ⊇ a ∩ h` and `g ⊇ b ∩ h` along its
/// components.
///
/// Components meeting neither set go to `f`, except that unclaimed points of
/// a tail follow the component of the tail's limit, which keeps both halves
/// closed.
pub fn component_split(
    h: &IntervalSet,
    a: &IntervalSet,
    b: &IntervalSet,
) -> Result<(IntervalSet, IntervalSet), MixedComponent> {
    let mut f = Vec::new();
    let mut g = Vec::new();
    let mut seg_sides = Vec::new();
    for s in h.segments() {
        let span = s.span();
        let side = side_of(a.meets(&span), b.meets(&span), || {
            IntervalSet::segment(s.lo.clone(), s.hi.clone())
        })?;
        seg_sides.push(side);
        let piece = Piece::Seg(s.clone());
        match side {
            Side::F => f.push(piece),
            Side::G => g.push(piece),
        }
    }
    for t in h.tails() {
        let whole = IntervalSet::from_pieces(vec![Piece::Tail(t.clone())]);
        let both = whole.intersect(a).intersect(b);
        let stray = both
            .segments()
            .iter()
            .map(|s| s.lo.clone())
            .chain(both.tails().iter().map(|o| o.point(o.n0)))
            .find(|p| *p != t.limit);
        if let Some(p) = stray {
            return Err(MixedComponent(IntervalSet::point(p)));
        }
        let limit_side = match h.segments().iter().position(|s| s.contains(&t.limit)) {
            Some(i) => seg_sides[i],
            None => side_of(a.contains(&t.limit), b.contains(&t.limit), || {
                IntervalSet::point(t.limit.clone())
            })?,
        };
        let other = match limit_side {
            Side::F => b,
            Side::G => a,
        };
        let claimed = whole.intersect(other);
        assert!(
            claimed.tails().is_empty(),
            "a closed set holding infinitely many tail points holds the limit"
        );
        let mut taken: Vec<u32> = claimed
            .segments()
            .iter()
            .filter_map(|s| t.index_of(&s.lo))
            .collect();
        taken.sort_unstable();
        let mut own = Vec::new();
        let start = taken.last().map_or(t.n0, |&m| m + 1);
        own.extend(
            (t.n0..start)
                .filter(|n| taken.binary_search(n).is_err())
                .map(|n| Piece::Seg(Segment::point(t.point(n)))),
        );
        own.push(Piece::Tail(Tail {
            n0: start,
            ..t.clone()
        }));
        let theirs = taken
            .iter()
            .map(|&n| Piece::Seg(Segment::point(t.point(n))));
        match limit_side {
            Side::F => {
                f.extend(own);
                g.extend(theirs);
            }
            Side::G => {
                g.extend(own);
                f.extend(theirs);
            }
        }
    }
    let (f, g) = (IntervalSet::from_pieces(f), IntervalSet::from_pieces(g));
    debug_assert!(f.is_disjoint(&g) && f.union(&g) == *h);
    Ok((f, g))
}
