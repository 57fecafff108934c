//! Ultrafilters on a finite lattice and its Wallman space.
//!
//! The points of `wL` are the ultrafilters of `L`; each element `a` names
//! the basic closed set `ā = {u : a ∈ u}`. Ultrafilters are found from the
//! definition: generate filters, keep the proper ones, keep those not
//! strictly contained in another. In a finite lattice every filter is
//! generated by a single element, so that enumeration is exhaustive.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::lattice::{ElementRef, Lattice, Mask};

/// Bit set over the points of a Wallman space.
pub type PointSet = u64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ultrafilter {
    members: Vec<bool>,
    least: ElementRef,
}

impl Ultrafilter {
    pub fn contains(&self, a: ElementRef) -> bool {
        self.members[a.0]
    }

    /// The least element; also the point's label.
    pub fn least(&self) -> ElementRef {
        self.least
    }

    pub fn members(&self) -> Vec<ElementRef> {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| ElementRef(i))
            .collect()
    }
}

/// Smallest filter containing `gens`: close under meets, then upward.
/// Returns membership flags over the lattice's elements.
pub fn generated_filter(l: &Lattice, gens: &[ElementRef]) -> Vec<bool> {
    let masks = l.masks();
    let mut closed: Vec<Mask> = gens.iter().map(|&g| l.mask(g)).collect();
    let mut i = 0;
    while i < closed.len() {
        for j in 0..i {
            let m = closed[i] & closed[j];
            if !closed.contains(&m) {
                closed.push(m);
            }
        }
        i += 1;
    }
    masks
        .iter()
        .map(|&x| closed.iter().any(|&c| c & !x == 0))
        .collect()
}

fn subset(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| !x || y)
}

/// All maximal proper filters, ordered by their least element.
pub fn ultrafilters(l: &Lattice) -> Vec<Ultrafilter> {
    let bottom = l.bottom();
    let proper: Vec<(ElementRef, Vec<bool>)> = l
        .refs()
        .filter(|&e| e != bottom)
        .map(|e| (e, generated_filter(l, &[e])))
        .filter(|(_, f)| !f[bottom.0])
        .collect();
    let mut out: Vec<Ultrafilter> = proper
        .iter()
        .filter(|(_, f)| !proper.iter().any(|(_, g)| g != f && subset(f, g)))
        .map(|(e, f)| {
            let least = l
                .refs()
                .find(|&x| f[x.0] && l.refs().all(|y| !f[y.0] || l.le(x, y)))
                .unwrap_or(*e);
            Ultrafilter {
                members: f.clone(),
                least,
            }
        })
        .collect();
    out.sort_by_key(|u| u.least);
    out.dedup();
    out
}

#[derive(Debug, Clone)]
pub struct WallmanSpace {
    points: Vec<Ultrafilter>,
    closed_base: Vec<PointSet>,
    host: Lattice,
}

fn all_points(n: usize) -> PointSet {
    if n == 0 {
        0
    } else {
        PointSet::MAX >> (64 - n)
    }
}

impl WallmanSpace {
    /// Builds `wL`, checking that `a ↦ ā` is a bounded lattice homomorphism.
    pub fn new(l: &Lattice) -> WallmanSpace {
        let points = ultrafilters(l);
        assert!(
            points.len() <= 64,
            "finite lattices have at most 64 ultrafilters here"
        );
        let closed_base = l
            .refs()
            .map(|a| {
                points
                    .iter()
                    .enumerate()
                    .filter(|(_, u)| u.contains(a))
                    .fold(0, |acc, (i, _)| acc | (1 << i))
            })
            .collect();
        let space = WallmanSpace {
            points,
            closed_base,
            host: l.clone(),
        };
        if let Err(msg) = space.check_homomorphism() {
            panic!("bar map is not a lattice homomorphism: {msg}");
        }
        space
    }

    pub fn points(&self) -> &[Ultrafilter] {
        &self.points
    }

    pub fn host(&self) -> &Lattice {
        &self.host
    }

    /// `ā`, the set of points containing `a`.
    pub fn bar(&self, a: ElementRef) -> PointSet {
        self.closed_base[a.0]
    }

    pub fn bar_points(&self, a: ElementRef) -> Vec<usize> {
        (0..self.points.len())
            .filter(|i| self.bar(a) & (1 << i) != 0)
            .collect()
    }

    pub fn closed_base(&self) -> &[PointSet] {
        &self.closed_base
    }

    pub fn check_homomorphism(&self) -> Result<(), String> {
        let l = &self.host;
        if self.bar(l.bottom()) != 0 {
            return Err("bar(0) is not empty".into());
        }
        if self.bar(l.top()) != all_points(self.points.len()) {
            return Err("bar(1) is not the whole space".into());
        }
        for a in l.refs() {
            for b in l.refs() {
                if self.bar(a) & self.bar(b) != self.bar(l.meet(a, b)) {
                    return Err(format!("bar({a}) ∩ bar({b}) ≠ bar({a} ⊓ {b})"));
                }
                if self.bar(a) | self.bar(b) != self.bar(l.join(a, b)) {
                    return Err(format!("bar({a}) ∪ bar({b}) ≠ bar({a} ⊔ {b})"));
                }
            }
        }
        Ok(())
    }

    /// Distinct closed sets of the space. The base is union- and
    /// intersection-closed, so on a finite space it is every closed set.
    pub fn closed_sets(&self) -> Vec<PointSet> {
        let mut v = self.closed_base.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn is_injective(&self) -> bool {
        let mut v = self.closed_base.clone();
        v.sort_unstable();
        v.dedup();
        v.len() == self.closed_base.len()
    }

    /// Every singleton is closed.
    pub fn is_t1(&self) -> bool {
        let closed = self.closed_sets();
        (0..self.points.len()).all(|i| closed.contains(&(1 << i)))
    }

    /// Distinct points have disjoint open neighbourhoods.
    pub fn is_hausdorff(&self) -> bool {
        let full = all_points(self.points.len());
        let open: Vec<PointSet> = self.closed_sets().iter().map(|c| full & !c).collect();
        let n = self.points.len();
        (0..n).all(|p| {
            (0..n).filter(|&q| q != p).all(|q| {
                open.iter().any(|&u| {
                    u & (1 << p) != 0 && open.iter().any(|&v| v & (1 << q) != 0 && u & v == 0)
                })
            })
        })
    }

    /// Every subset of points is closed.
    pub fn is_discrete(&self) -> bool {
        let n = self.points.len();
        n <= 20 && self.closed_sets().len() == 1 << n
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Point {
            id: usize,
            least: usize,
            members: Vec<usize>,
        }
        let points: Vec<Point> = self
            .points
            .iter()
            .enumerate()
            .map(|(id, u)| Point {
                id,
                least: u.least.0,
                members: u.members().into_iter().map(|e| e.0).collect(),
            })
            .collect();
        let base: BTreeMap<String, Vec<usize>> = self
            .host
            .refs()
            .map(|a| (a.0.to_string(), self.bar_points(a)))
            .collect();
        serde_json::json!({ "points": points, "closed_base": base })
    }

    /// Bipartite incidence graph: element `eI` → point `pJ` when `pJ ∈ ēI`.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph wallman {\n  rankdir=LR;\n");
        for a in self.host.refs() {
            let _ = writeln!(
                s,
                "  e{} [shape=box,label=\"{:?}\"];",
                a.0,
                self.host.members(a)
            );
        }
        for (i, u) in self.points.iter().enumerate() {
            let _ = writeln!(
                s,
                "  p{i} [shape=ellipse,label=\"p{i} = ↑{:?}\"];",
                self.host.members(u.least)
            );
        }
        for a in self.host.refs() {
            for p in self.bar_points(a) {
                let _ = writeln!(s, "  e{} -- p{p};", a.0);
            }
        }
        s.push_str("}\n");
        s
    }
}

pub fn wallman_space(l: &Lattice) -> WallmanSpace {
    WallmanSpace::new(l)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub separative: bool,
    pub injective: bool,
    pub normal: bool,
    pub t1: bool,
    pub hausdorff: bool,
    /// Set when `L` is not separative and Hausdorffness of `wL` disagrees
    /// with normality of `L`. The equivalence is only claimed for separative
    /// lattices, so such a lattice is flagged, not counted as a failure.
    pub non_separative_caveat: bool,
}

impl DualityReport {
    /// Whether the two dualities hold where they are expected to.
    pub fn consistent(&self) -> bool {
        self.injective == self.separative && (!self.separative || self.hausdorff == self.normal)
    }
}

pub fn duality_report(l: &Lattice) -> DualityReport {
    let space = WallmanSpace::new(l);
    let separative = l.is_separative();
    let normal = l.is_normal();
    let hausdorff = space.is_hausdorff();
    DualityReport {
        separative,
        injective: space.is_injective(),
        normal,
        t1: space.is_t1(),
        hausdorff,
        non_separative_caveat: !separative && hausdorff != normal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::diamond;

    fn least_sets(l: &Lattice) -> Vec<Vec<usize>> {
        ultrafilters(l)
            .iter()
            .map(|u| l.members(u.least()))
            .collect()
    }

    #[test]
    fn ultrafilter_examples() {
        let p = Lattice::powerset(3).unwrap();
        assert_eq!(least_sets(&p), vec![vec![0], vec![1], vec![2]]);
        let d = diamond();
        assert_eq!(least_sets(&d), vec![vec![0], vec![1]]);
        let t = Lattice::close_subbase(2, &[]).unwrap();
        let us = ultrafilters(&t);
        assert_eq!(us.len(), 1);
        assert_eq!(us[0].members(), vec![t.top()]);
        assert!(ultrafilters(&Lattice::powerset(0).unwrap()).is_empty());
    }

    #[test]
    fn bar_examples() {
        let d = diamond();
        let w = wallman_space(&d);
        assert_eq!(w.bar(d.top()), 0b11);
        assert_eq!(w.bar(d.bottom()), 0);
        assert_eq!(w.bar(d.find(&[0, 1]).unwrap()), w.bar(d.top()));
        assert!(!w.is_injective());
    }

    #[test]
    fn spaces() {
        let p = wallman_space(&Lattice::powerset(3).unwrap());
        assert_eq!(p.points().len(), 3);
        assert_eq!(p.closed_sets().len(), 8);
        assert!(p.is_discrete());
        let d = wallman_space(&diamond());
        assert_eq!(d.closed_sets(), vec![0b00, 0b01, 0b10, 0b11]);
        let t = wallman_space(&Lattice::close_subbase(3, &[]).unwrap());
        assert_eq!(t.points().len(), 1);
    }

    #[test]
    fn duality_examples() {
        let all = DualityReport {
            separative: true,
            injective: true,
            normal: true,
            t1: true,
            hausdorff: true,
            non_separative_caveat: false,
        };
        assert_eq!(duality_report(&Lattice::powerset(3).unwrap()), all);
        assert_eq!(
            duality_report(&Lattice::close_subbase(3, &[]).unwrap()),
            all
        );
        let d = duality_report(&diamond());
        assert_eq!(
            d,
            DualityReport {
                separative: false,
                injective: false,
                normal: false,
                t1: true,
                hausdorff: true,
                non_separative_caveat: true,
            }
        );
        assert!(d.consistent());
    }

    #[test]
    fn json_and_dot_exports() {
        let d = diamond();
        let w = wallman_space(&d);
        let j = w.to_json();
        assert_eq!(j["points"].as_array().unwrap().len(), 2);
        assert_eq!(j["closed_base"]["4"], serde_json::json!([0, 1]));
        assert_eq!(j["closed_base"]["1"], serde_json::json!([0]));
        let dot = w.to_dot();
        assert!(dot.starts_with("graph wallman {"));
        assert!(dot.contains("e4 -- p1;"));
    }

    #[test]
    fn generated_filter_closes_under_meet() {
        let p = Lattice::powerset(3).unwrap();
        let f = generated_filter(&p, &[p.find(&[0, 1]).unwrap(), p.find(&[1, 2]).unwrap()]);
        // contains {1} and everything above it
        let members: Vec<_> = p.refs().filter(|e| f[e.0]).map(|e| p.members(e)).collect();
        assert_eq!(
            members,
            vec![vec![1], vec![0, 1], vec![1, 2], vec![0, 1, 2]]
        );
    }
}
