//! Finite bounded distributive lattices, represented concretely as families
//! of subsets of a small ground set `{0, .., n-1}`.
//!
//! Meet is intersection, join is union and the order is inclusion, so
//! distributivity comes for free. Subsets are stored as bit masks and the
//! family is kept in canonical order: by cardinality, then lexicographically
//! by sorted member list. The empty set is therefore always element 0 and the
//! full ground set is always the last element.

mod io;

pub use io::LatticeFile;

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use crate::config::Bounds;
use crate::error::{Error, Result};
use crate::exec::{self, Exec};

/// Bit mask of a subset of the ground set.
pub type Mask = u32;

/// Hard ceiling on the ground size; masks and the dense index table rely on it.
pub const GROUND_LIMIT: usize = 16;

/// Position of an element in a [`Lattice`]'s canonical element list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(transparent)]
pub struct ElementRef(pub usize);

impl fmt::Display for ElementRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    ground: usize,
    elements: Vec<Mask>,
    // mask -> position, u32::MAX when absent; 2^ground entries
    index: Vec<u32>,
}

pub fn members(mask: Mask) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

pub fn mask_of(ground: usize, items: &[usize]) -> Result<Mask> {
    let mut m = 0;
    for &i in items {
        if i >= ground {
            return Err(Error::input(format!(
                "point {i} outside ground set of size {ground}"
            )));
        }
        m |= 1 << i;
    }
    Ok(m)
}

pub(crate) fn full_mask(ground: usize) -> Mask {
    if ground == 0 {
        0
    } else {
        Mask::MAX >> (32 - ground)
    }
}

/// Canonical order on subsets: cardinality first, then lexicographic on the
/// sorted member lists.
pub fn canonical_cmp(a: Mask, b: Mask) -> Ordering {
    a.count_ones()
        .cmp(&b.count_ones())
        .then_with(|| members(a).cmp(&members(b)))
}

fn check_ground(ground: usize, bounds: &Bounds) -> Result<()> {
    let cap = bounds.max_ground.min(GROUND_LIMIT);
    if ground > cap {
        return Err(Error::resource(format!(
            "ground size {ground} exceeds bound {cap}"
        )));
    }
    Ok(())
}

/// Closes a set of masks under pairwise union and intersection, adding the
/// empty and full sets. Fails once the family outgrows `max_elements`.
pub(crate) fn close_masks(
    ground: usize,
    masks: impl IntoIterator<Item = Mask>,
    max_elements: usize,
) -> Result<Vec<Mask>> {
    let full = full_mask(ground);
    let mut seen = HashSet::new();
    let mut list = Vec::new();
    for m in [0, full].into_iter().chain(masks) {
        if seen.insert(m) {
            list.push(m);
        }
    }
    let mut i = 0;
    while i < list.len() {
        let a = list[i];
        for j in 0..i {
            let b = list[j];
            for c in [a | b, a & b] {
                if seen.insert(c) {
                    list.push(c);
                    if list.len() > max_elements {
                        return Err(Error::resource(format!(
                            "closure exceeds {max_elements} elements"
                        )));
                    }
                }
            }
        }
        i += 1;
    }
    list.sort_by(|a, b| canonical_cmp(*a, *b));
    Ok(list)
}

impl Lattice {
    fn from_sorted(ground: usize, elements: Vec<Mask>) -> Lattice {
        let mut index = vec![u32::MAX; 1usize << ground];
        for (i, &m) in elements.iter().enumerate() {
            index[m as usize] = i as u32;
        }
        Lattice {
            ground,
            elements,
            index,
        }
    }

    /// Smallest union- and intersection-closed family containing `subbase`,
    /// the empty set and the ground set.
    pub fn close_subbase(ground: usize, subbase: &[Vec<usize>]) -> Result<Lattice> {
        Self::close_subbase_with(ground, subbase, &Bounds::default())
    }

    pub fn close_subbase_with(
        ground: usize,
        subbase: &[Vec<usize>],
        bounds: &Bounds,
    ) -> Result<Lattice> {
        check_ground(ground, bounds)?;
        let masks = subbase
            .iter()
            .map(|s| mask_of(ground, s))
            .collect::<Result<Vec<_>>>()?;
        Self::close_mask_subbase(ground, masks, bounds)
    }

    pub fn close_mask_subbase(
        ground: usize,
        masks: impl IntoIterator<Item = Mask>,
        bounds: &Bounds,
    ) -> Result<Lattice> {
        check_ground(ground, bounds)?;
        let full = full_mask(ground);
        let masks: Vec<Mask> = masks.into_iter().collect();
        if let Some(bad) = masks.iter().find(|&&m| m & !full != 0) {
            return Err(Error::input(format!(
                "subbase member {:?} outside ground set of size {ground}",
                members(*bad)
            )));
        }
        let elements = close_masks(ground, masks, bounds.max_elements)?;
        Ok(Self::from_sorted(ground, elements))
    }

    /// The full powerset of `{0, .., n-1}`: the closed-set lattice of a finite
    /// discrete space.
    pub fn powerset(n: usize) -> Result<Lattice> {
        Self::powerset_with(n, &Bounds::default())
    }

    pub fn powerset_with(n: usize, bounds: &Bounds) -> Result<Lattice> {
        check_ground(n, bounds)?;
        if (1usize << n) > bounds.max_elements {
            return Err(Error::resource(format!(
                "powerset of {n} points exceeds {} elements",
                bounds.max_elements
            )));
        }
        let mut elements: Vec<Mask> = (0..(1u32 << n)).collect();
        elements.sort_by(|a, b| canonical_cmp(*a, *b));
        Ok(Self::from_sorted(n, elements))
    }

    /// Accepts an explicit family, re-canonicalizing it and rejecting it when
    /// it is not a bounded sublattice of the powerset.
    pub fn from_family(ground: usize, family: &[Vec<usize>]) -> Result<Lattice> {
        check_ground(ground, &Bounds::default())?;
        let masks = family
            .iter()
            .map(|s| mask_of(ground, s))
            .collect::<Result<Vec<_>>>()?;
        Self::from_masks(ground, masks)
    }

    pub fn from_masks(ground: usize, masks: impl IntoIterator<Item = Mask>) -> Result<Lattice> {
        check_ground(ground, &Bounds::default())?;
        let full = full_mask(ground);
        let mut elements: Vec<Mask> = masks.into_iter().collect();
        if let Some(bad) = elements.iter().find(|&&m| m & !full != 0) {
            return Err(Error::input(format!(
                "element {:?} outside ground set of size {ground}",
                members(*bad)
            )));
        }
        elements.sort_by(|a, b| canonical_cmp(*a, *b));
        elements.dedup();
        let present: HashSet<Mask> = elements.iter().copied().collect();
        if !present.contains(&0) {
            return Err(Error::input("family is missing the empty set"));
        }
        if !present.contains(&full) {
            return Err(Error::input("family is missing the full ground set"));
        }
        for (i, &a) in elements.iter().enumerate() {
            for &b in &elements[..i] {
                if !present.contains(&(a | b)) {
                    return Err(Error::input(format!(
                        "family not closed: union of {:?} and {:?} = {:?} is missing",
                        members(b),
                        members(a),
                        members(a | b)
                    )));
                }
                if !present.contains(&(a & b)) {
                    return Err(Error::input(format!(
                        "family not closed: intersection of {:?} and {:?} = {:?} is missing",
                        members(b),
                        members(a),
                        members(a & b)
                    )));
                }
            }
        }
        Ok(Self::from_sorted(ground, elements))
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn masks(&self) -> &[Mask] {
        &self.elements
    }

    pub fn refs(&self) -> impl Iterator<Item = ElementRef> + '_ {
        (0..self.elements.len()).map(ElementRef)
    }

    pub fn bottom(&self) -> ElementRef {
        ElementRef(0)
    }

    pub fn top(&self) -> ElementRef {
        ElementRef(self.elements.len() - 1)
    }

    pub fn mask(&self, e: ElementRef) -> Mask {
        self.elements[e.0]
    }

    pub fn members(&self, e: ElementRef) -> Vec<usize> {
        members(self.mask(e))
    }

    pub fn index_of(&self, mask: Mask) -> Option<ElementRef> {
        match self.index.get(mask as usize) {
            Some(&i) if i != u32::MAX => Some(ElementRef(i as usize)),
            _ => None,
        }
    }

    pub fn find(&self, items: &[usize]) -> Option<ElementRef> {
        mask_of(self.ground, items)
            .ok()
            .and_then(|m| self.index_of(m))
    }

    pub fn check_ref(&self, e: ElementRef) -> Result<()> {
        if e.0 < self.len() {
            Ok(())
        } else {
            Err(Error::input(format!(
                "element {} out of range for a lattice with {} elements",
                e.0,
                self.len()
            )))
        }
    }

    #[inline]
    pub(crate) fn index_unchecked(&self, mask: Mask) -> usize {
        self.index[mask as usize] as usize
    }

    pub fn meet(&self, a: ElementRef, b: ElementRef) -> ElementRef {
        ElementRef(self.index_unchecked(self.mask(a) & self.mask(b)))
    }

    pub fn join(&self, a: ElementRef, b: ElementRef) -> ElementRef {
        ElementRef(self.index_unchecked(self.mask(a) | self.mask(b)))
    }

    pub fn le(&self, a: ElementRef, b: ElementRef) -> bool {
        self.mask(a) & !self.mask(b) == 0
    }

    /// Minimal nonzero elements, in canonical order.
    pub fn atoms(&self) -> Vec<ElementRef> {
        let nonzero = &self.elements[1..];
        (1..self.len())
            .filter(|&i| {
                let m = self.elements[i];
                !nonzero.iter().any(|&c| c != m && c & !m == 0)
            })
            .map(ElementRef)
            .collect()
    }

    /// Whenever `a ≰ b` some nonzero `c ≤ a` is disjoint from `b`.
    pub fn is_separative(&self) -> bool {
        self.is_separative_with(Exec::default())
    }

    pub fn is_separative_with(&self, exec: Exec) -> bool {
        self.separativity_failure(exec).is_none()
    }

    /// A pair `(a, b)` with `a ≰ b` that admits no separating `c`, if any.
    ///
    /// Every nonzero element lies above an atom, so it suffices to look for
    /// an atom below `a` that misses `b`.
    pub fn separativity_failure(&self, exec: Exec) -> Option<(ElementRef, ElementRef)> {
        let atoms: Vec<Mask> = self.atoms().into_iter().map(|e| self.mask(e)).collect();
        let n = self.len();
        exec::find_first(exec, n, |i| {
            let a = self.elements[i];
            self.elements.iter().enumerate().find_map(|(j, &b)| {
                let fails = a & !b != 0 && !atoms.iter().any(|&c| c & !a == 0 && c & b == 0);
                fails.then_some((ElementRef(i), ElementRef(j)))
            })
        })
    }

    /// Whenever `a ⊓ b = 0` there are `f, g` with `a ⊓ f = 0`, `b ⊓ g = 0`
    /// and `f ⊔ g = 1`.
    pub fn is_normal(&self) -> bool {
        self.is_normal_with(Exec::default())
    }

    pub fn is_normal_with(&self, exec: Exec) -> bool {
        self.normality_failure(exec).is_none()
    }

    /// A disjoint pair that cannot be swelled to a cover, if any.
    ///
    /// Elements disjoint from `a` are closed under union, so the largest one
    /// is the best candidate for `f`; likewise for `g`.
    pub fn normality_failure(&self, exec: Exec) -> Option<(ElementRef, ElementRef)> {
        let full = full_mask(self.ground);
        let largest_disjoint: Vec<Mask> = self
            .elements
            .iter()
            .map(|&a| {
                self.elements
                    .iter()
                    .filter(|&&f| f & a == 0)
                    .fold(0, |acc, &f| acc | f)
            })
            .collect();
        let n = self.len();
        exec::find_first(exec, n, |i| {
            let a = self.elements[i];
            (0..n).find_map(|j| {
                let b = self.elements[j];
                let fails = a & b == 0 && largest_disjoint[i] | largest_disjoint[j] != full;
                fails.then_some((ElementRef(i), ElementRef(j)))
            })
        })
    }

    /// Whether every element of `sub` is an element of `self`.
    pub fn contains_family(&self, sub: &Lattice) -> bool {
        sub.ground == self.ground && sub.elements.iter().all(|&m| self.index_of(m).is_some())
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice")
            .field("ground", &self.ground)
            .field(
                "elements",
                &self
                    .elements
                    .iter()
                    .map(|&m| members(m))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

/// `{∅, {0}, {1}, {0,1}, {0,1,2}}`: neither separative nor normal.
pub fn diamond() -> Lattice {
    Lattice::close_subbase(3, &[vec![0], vec![1]]).expect("diamond is within bounds")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(l: &Lattice) -> Vec<Vec<usize>> {
        l.refs().map(|e| l.members(e)).collect()
    }

    // Brute-force oracles, straight from the definitions.
    fn separative_oracle(l: &Lattice) -> bool {
        let m = l.masks();
        m.iter().all(|&a| {
            m.iter()
                .all(|&b| a & !b == 0 || m.iter().any(|&c| c != 0 && c & !a == 0 && c & b == 0))
        })
    }

    fn normal_oracle(l: &Lattice) -> bool {
        let m = l.masks();
        let full = full_mask(l.ground_size());
        m.iter().all(|&a| {
            m.iter().all(|&b| {
                a & b != 0
                    || m.iter()
                        .any(|&f| m.iter().any(|&g| a & f == 0 && b & g == 0 && f | g == full))
            })
        })
    }

    #[test]
    fn diamond_closure() {
        let d = diamond();
        assert_eq!(
            sets(&d),
            vec![vec![], vec![0], vec![1], vec![0, 1], vec![0, 1, 2]]
        );
    }

    #[test]
    fn singletons_generate_powerset() {
        let l = Lattice::close_subbase(3, &[vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!(l.len(), 8);
        assert_eq!(l, Lattice::powerset(3).unwrap());
    }

    #[test]
    fn empty_subbase_gives_two_element_lattice() {
        let l = Lattice::close_subbase(2, &[]).unwrap();
        assert_eq!(sets(&l), vec![vec![], vec![0, 1]]);
    }

    #[test]
    fn subbase_out_of_range_is_input_error() {
        let err = Lattice::close_subbase(2, &[vec![2]]).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }

    #[test]
    fn powerset_small_cases() {
        let p0 = Lattice::powerset(0).unwrap();
        assert_eq!(p0.len(), 1);
        assert_eq!(p0.bottom(), p0.top());
        assert_eq!(sets(&Lattice::powerset(1).unwrap()), vec![vec![], vec![0]]);
        assert_eq!(Lattice::powerset(3).unwrap().len(), 8);
        assert!(Lattice::powerset(11).unwrap_err().is_resource());
    }

    #[test]
    fn canonical_order_is_size_then_lex() {
        let p = Lattice::powerset(3).unwrap();
        assert_eq!(
            sets(&p),
            vec![
                vec![],
                vec![0],
                vec![1],
                vec![2],
                vec![0, 1],
                vec![0, 2],
                vec![1, 2],
                vec![0, 1, 2]
            ]
        );
    }

    #[test]
    fn atoms_examples() {
        let p = Lattice::powerset(3).unwrap();
        let atoms: Vec<_> = p.atoms().into_iter().map(|a| p.members(a)).collect();
        assert_eq!(atoms, vec![vec![0], vec![1], vec![2]]);
        let d = diamond();
        let atoms: Vec<_> = d.atoms().into_iter().map(|a| d.members(a)).collect();
        assert_eq!(atoms, vec![vec![0], vec![1]]);
        let t = Lattice::close_subbase(3, &[]).unwrap();
        assert_eq!(t.atoms(), vec![t.top()]);
    }

    #[test]
    fn separative_and_normal_examples() {
        let p = Lattice::powerset(3).unwrap();
        let d = diamond();
        let t = Lattice::close_subbase(3, &[]).unwrap();
        assert!(p.is_separative() && p.is_normal());
        assert!(t.is_separative() && t.is_normal());
        assert!(!d.is_separative());
        assert!(!d.is_normal());
        // the failing pair for the diamond: top is not below {0,1}
        let (a, b) = d.separativity_failure(Exec::Sequential).unwrap();
        assert_eq!(d.members(a), vec![0, 1, 2]);
        assert_eq!(d.members(b), vec![0, 1]);
        let (a, b) = d.normality_failure(Exec::Sequential).unwrap();
        assert_eq!((d.members(a), d.members(b)), (vec![0], vec![1]));
    }

    #[test]
    fn predicates_match_brute_force() {
        let cases: Vec<Vec<Vec<usize>>> = vec![
            vec![vec![0], vec![1]],
            vec![vec![0, 1], vec![1, 2]],
            vec![vec![0], vec![1, 2], vec![2, 3]],
            vec![vec![0, 1], vec![2, 3], vec![0]],
            vec![vec![0], vec![1], vec![2], vec![3]],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        ];
        for sb in cases {
            let l = Lattice::close_subbase(4, &sb).unwrap();
            assert_eq!(l.is_separative(), separative_oracle(&l), "{sb:?}");
            assert_eq!(l.is_normal(), normal_oracle(&l), "{sb:?}");
        }
    }

    #[test]
    fn loader_names_missing_union() {
        let err = Lattice::from_family(3, &[vec![], vec![0], vec![1], vec![0, 1, 2]]).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("union") && msg.contains("[0, 1]"), "{msg}");
        let err =
            Lattice::from_family(3, &[vec![], vec![0, 1], vec![1, 2], vec![0, 1, 2]]).unwrap_err();
        assert!(err.to_string().contains("intersection"), "{err}");
    }

    #[test]
    fn loader_recanonicalizes() {
        let l = Lattice::from_family(
            3,
            &[vec![0, 1, 2], vec![1], vec![], vec![0, 1], vec![0], vec![1]],
        )
        .unwrap();
        assert_eq!(l, diamond());
    }
}
