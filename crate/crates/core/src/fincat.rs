//! The base category: finite sets with partially defined maps.
//!
//! Objects are skeletal — the finite set of size `n` is `{0, 1, …, n-1}`.
//! Three arrow flavors live here:
//!
//! * [`PartialFn`]: a function defined on a subset `D(f)` of the source.
//!   Composition is relational: `(g∘f)(x)` is defined iff `f(x)` is defined
//!   and `g(f(x))` is defined.  Equivalently these are basepoint-preserving
//!   maps of pointed sets, with "undefined" playing the basepoint.
//! * [`PartialBijection`]: a partial function injective on its domain, i.e.
//!   a bijection `D(f) ≅ I(f)` between a source subset and a target subset.
//!   These arrows carry a transpose (swap domain and image) making the
//!   category self-dual.
//! * [`MonotoneMap`]: a total weakly-increasing map between ordinals
//!   `[n] = {0 < … < n}`, the arrows indexing simplicial structure.
//!
//! Enumerations are deterministic: maps are ordered lexicographically by
//! (domain bitmask, graph).  Everything downstream relies on this order for
//! byte-identical reports.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Guard for enumeration sizes; `(n+1)^m` grows fast and callers asking for
/// more than this many maps get a resource error instead of an allocation
/// storm.
pub const MAX_ENUMERATION: u64 = 4_000_000;

// ---------------------------------------------------------------------------
// Partial functions
// ---------------------------------------------------------------------------

/// A partially defined function between skeletal finite sets.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct PartialFn {
    source: usize,
    target: usize,
    /// `map[x] = Some(y)` when defined at `x`; length is `source`.
    map: Vec<Option<usize>>,
}

impl PartialFn {
    pub fn new(source: usize, target: usize, map: Vec<Option<usize>>) -> Result<Self> {
        if map.len() != source {
            return Err(Error::Arity(format!(
                "partial function table has {} entries for source of size {source}",
                map.len()
            )));
        }
        if let Some(y) = map.iter().flatten().find(|&&y| y >= target) {
            return Err(Error::Arity(format!("target value {y} out of range for target {target}")));
        }
        Ok(PartialFn { source, target, map })
    }

    pub fn identity(n: usize) -> Self {
        PartialFn { source: n, target: n, map: (0..n).map(Some).collect() }
    }

    /// The nowhere-defined map.
    pub fn empty(source: usize, target: usize) -> Self {
        PartialFn { source, target, map: vec![None; source] }
    }

    pub fn total(source: usize, target: usize, map: Vec<usize>) -> Result<Self> {
        Self::new(source, target, map.into_iter().map(Some).collect())
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.map.get(x).copied().flatten()
    }

    pub fn graph(&self) -> &[Option<usize>] {
        &self.map
    }

    /// Points of the source where the map is defined, ascending.
    pub fn domain(&self) -> Vec<usize> {
        (0..self.source).filter(|&x| self.map[x].is_some()).collect()
    }

    /// Points of the target hit by the map, ascending and deduplicated.
    pub fn image(&self) -> Vec<usize> {
        let mut hit = vec![false; self.target];
        for y in self.map.iter().flatten() {
            hit[*y] = true;
        }
        (0..self.target).filter(|&y| hit[y]).collect()
    }

    pub fn is_total(&self) -> bool {
        self.map.iter().all(Option::is_some)
    }

    pub fn is_injective_on_domain(&self) -> bool {
        let mut hit = vec![false; self.target];
        for y in self.map.iter().flatten() {
            if hit[*y] {
                return false;
            }
            hit[*y] = true;
        }
        true
    }

    /// Fiber over `j`: the defined points mapping to `j`, ascending.
    pub fn fiber(&self, j: usize) -> Vec<usize> {
        (0..self.source).filter(|&x| self.map[x] == Some(j)).collect()
    }

    pub fn fiber_size(&self, j: usize) -> usize {
        (0..self.source).filter(|&x| self.map[x] == Some(j)).count()
    }

    /// Relational composition `self ∘ first` (apply `first`, then `self`).
    pub fn compose(&self, first: &PartialFn) -> Result<PartialFn> {
        if first.target != self.source {
            return Err(Error::Arity(format!(
                "cannot compose: inner target {} != outer source {}",
                first.target, self.source
            )));
        }
        let map = first.map.iter().map(|y| y.and_then(|y| self.map[y])).collect();
        Ok(PartialFn { source: first.source, target: self.target, map })
    }

    /// Points where the map is undefined — the kernel, read in the pointed
    /// avatar as the preimage of the basepoint.
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.source).filter(|&x| self.map[x].is_none()).collect()
    }

    /// Cokernel: the target with the image collapsed away.  Returns the size
    /// of the residual set together with the quotient map, a partial function
    /// from the target that is undefined exactly on the image and renumbers
    /// the remaining points in increasing order.
    pub fn cokernel(&self) -> (usize, PartialFn) {
        let mut in_image = vec![false; self.target];
        for y in self.map.iter().flatten() {
            in_image[*y] = true;
        }
        let mut next = 0usize;
        let mut map = Vec::with_capacity(self.target);
        for y in 0..self.target {
            if in_image[y] {
                map.push(None);
            } else {
                map.push(Some(next));
                next += 1;
            }
        }
        (next, PartialFn { source: self.target, target: next, map })
    }

    /// Membership test for the partial-bijection subcategory: defined points
    /// may not collide.  On success returns the witness arrow.
    pub fn to_partial_bijection(&self) -> Option<PartialBijection> {
        if self.is_injective_on_domain() {
            Some(PartialBijection { inner: self.clone() })
        } else {
            None
        }
    }

    /// Restrict to a sub-source and sub-target (each given as ascending point
    /// lists), renumbering both sides by their position.  Defined points that
    /// leave the sub-target become undefined.
    pub fn restrict(&self, sub_source: &[usize], sub_target: &[usize]) -> PartialFn {
        let mut target_pos = vec![None; self.target];
        for (k, &y) in sub_target.iter().enumerate() {
            target_pos[y] = Some(k);
        }
        let map = sub_source.iter().map(|&x| self.map[x].and_then(|y| target_pos[y])).collect();
        PartialFn { source: sub_source.len(), target: sub_target.len(), map }
    }
}

impl fmt::Display for PartialFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}→{}[", self.source, self.target)?;
        for (x, y) in self.map.iter().enumerate() {
            if x > 0 {
                write!(f, " ")?;
            }
            match y {
                Some(y) => write!(f, "{x}↦{y}")?,
                None => write!(f, "{x}↦·")?,
            }
        }
        write!(f, "]")
    }
}

// ---------------------------------------------------------------------------
// Partial bijections
// ---------------------------------------------------------------------------

/// A partial function injective on its domain: a bijection between a subset
/// of the source and a subset of the target.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct PartialBijection {
    inner: PartialFn,
}

impl PartialBijection {
    pub fn new(source: usize, target: usize, map: Vec<Option<usize>>) -> Result<Self> {
        let inner = PartialFn::new(source, target, map)?;
        inner.to_partial_bijection().ok_or_else(|| {
            Error::Validation { path: "map".into(), message: "not injective on its domain".into() }
        })
    }

    pub fn identity(n: usize) -> Self {
        PartialBijection { inner: PartialFn::identity(n) }
    }

    pub fn empty(source: usize, target: usize) -> Self {
        PartialBijection { inner: PartialFn::empty(source, target) }
    }

    /// Total bijection from a permutation table (`map[x]` is the image of `x`).
    pub fn permutation(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let pf = PartialFn::total(n, n, map)?;
        if pf.image().len() != n {
            return Err(Error::Validation {
                path: "map".into(),
                message: "permutation table is not bijective".into(),
            });
        }
        Ok(PartialBijection { inner: pf })
    }

    pub fn as_partial_fn(&self) -> &PartialFn {
        &self.inner
    }

    pub fn source(&self) -> usize {
        self.inner.source
    }

    pub fn target(&self) -> usize {
        self.inner.target
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.inner.apply(x)
    }

    /// The dual arrow: swap domain and image.
    pub fn transpose(&self) -> PartialBijection {
        let mut map = vec![None; self.inner.target];
        for x in 0..self.inner.source {
            if let Some(y) = self.inner.map[x] {
                map[y] = Some(x);
            }
        }
        PartialBijection {
            inner: PartialFn { source: self.inner.target, target: self.inner.source, map },
        }
    }

    pub fn compose(&self, first: &PartialBijection) -> Result<PartialBijection> {
        let inner = self.inner.compose(&first.inner)?;
        Ok(PartialBijection { inner })
    }

    pub fn is_total_bijection(&self) -> bool {
        self.inner.is_total() && self.inner.source == self.inner.target
    }
}

impl fmt::Display for PartialBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.inner.fmt(f)
    }
}

// ---------------------------------------------------------------------------
// Monotone maps between ordinals
// ---------------------------------------------------------------------------

/// A total weakly-increasing map `[source] → [target]` between the ordinals
/// `[n] = {0, …, n}` (so the underlying set has `n + 1` points).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct MonotoneMap {
    source: usize,
    target: usize,
    /// Length `source + 1`, values `≤ target`, weakly increasing.
    map: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(source: usize, target: usize, map: Vec<usize>) -> Result<Self> {
        if map.len() != source + 1 {
            return Err(Error::Arity(format!(
                "monotone map table has {} entries for ordinal [{source}]",
                map.len()
            )));
        }
        if map.iter().any(|&y| y > target) {
            return Err(Error::Arity(format!("value out of range for ordinal [{target}]")));
        }
        if map.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Validation {
                path: "map".into(),
                message: "not weakly increasing".into(),
            });
        }
        Ok(MonotoneMap { source, target, map })
    }

    pub fn identity(n: usize) -> Self {
        MonotoneMap { source: n, target: n, map: (0..=n).collect() }
    }

    /// The injection `[n-1] → [n]` skipping vertex `i` (coface).
    pub fn coface(n: usize, i: usize) -> Result<Self> {
        if n == 0 || i > n {
            return Err(Error::Arity(format!("coface index {i} out of range for [{n}]")));
        }
        Ok(MonotoneMap {
            source: n - 1,
            target: n,
            map: (0..n).map(|k| if k < i { k } else { k + 1 }).collect(),
        })
    }

    /// The surjection `[n+1] → [n]` repeating vertex `i` (codegeneracy).
    pub fn codegeneracy(n: usize, i: usize) -> Result<Self> {
        if i > n {
            return Err(Error::Arity(format!("codegeneracy index {i} out of range for [{n}]")));
        }
        Ok(MonotoneMap {
            source: n + 1,
            target: n,
            map: (0..=(n + 1)).map(|k| if k <= i { k } else { k - 1 }).collect(),
        })
    }

    /// Source ordinal index `n` of `[n]`.
    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    pub fn compose(&self, first: &MonotoneMap) -> Result<MonotoneMap> {
        if first.target != self.source {
            return Err(Error::Arity(format!(
                "cannot compose: inner target [{}] != outer source [{}]",
                first.target, self.source
            )));
        }
        Ok(MonotoneMap {
            source: first.source,
            target: self.target,
            map: first.map.iter().map(|&y| self.map[y]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        self.map.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        // Weakly increasing and total: surjective iff it starts at 0, ends at
        // target, and never jumps by more than one.
        self.map[0] == 0
            && *self.map.last().unwrap() == self.target
            && self.map.windows(2).all(|w| w[1] - w[0] <= 1)
    }
}

impl fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]→[{}](", self.source, self.target)?;
        for (k, y) in self.map.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{y}")?;
        }
        write!(f, ")")
    }
}

// ---------------------------------------------------------------------------
// Fiber products
// ---------------------------------------------------------------------------

/// Fiber product of two partial functions into a common target.
///
/// Points are the pairs `(x, y)` with `f(x)` and `g(y)` both defined and
/// equal, numbered in lexicographic order; `left`/`right` are the (total)
/// projections to the two sources.
#[derive(Clone, Debug)]
pub struct FiberProduct {
    pub size: usize,
    pub pairs: Vec<(usize, usize)>,
    pub left: PartialFn,
    pub right: PartialFn,
}

pub fn fiber_product(f: &PartialFn, g: &PartialFn) -> Result<FiberProduct> {
    if f.target != g.target {
        return Err(Error::Arity(format!(
            "fiber product needs a common target; got {} and {}",
            f.target, g.target
        )));
    }
    let mut pairs = Vec::new();
    for x in 0..f.source {
        if let Some(fx) = f.apply(x) {
            for y in 0..g.source {
                if g.apply(y) == Some(fx) {
                    pairs.push((x, y));
                }
            }
        }
    }
    let left = PartialFn::total(pairs.len(), f.source, pairs.iter().map(|p| p.0).collect())?;
    let right = PartialFn::total(pairs.len(), g.source, pairs.iter().map(|p| p.1).collect())?;
    Ok(FiberProduct { size: pairs.len(), pairs, left, right })
}

// ---------------------------------------------------------------------------
// Enumeration (deterministic order)
// ---------------------------------------------------------------------------

fn check_enum_budget(count: u64) -> Result<()> {
    if count > MAX_ENUMERATION {
        Err(Error::Resource(format!(
            "enumeration of {count} maps exceeds the cap of {MAX_ENUMERATION}"
        )))
    } else {
        Ok(())
    }
}

/// All partial functions `m → n`, ordered lexicographically by
/// (domain bitmask ascending, graph ascending).
pub fn enumerate_partial_fns(m: usize, n: usize) -> Result<Vec<PartialFn>> {
    check_enum_budget(((n + 1) as u64).checked_pow(m as u32).unwrap_or(u64::MAX))?;
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << m) {
        let domain: Vec<usize> = (0..m).filter(|&x| mask >> x & 1 == 1).collect();
        if n == 0 && !domain.is_empty() {
            continue;
        }
        let k = domain.len();
        let mut counters = vec![0usize; k];
        loop {
            let mut map = vec![None; m];
            for (i, &x) in domain.iter().enumerate() {
                map[x] = Some(counters[i]);
            }
            out.push(PartialFn { source: m, target: n, map });
            // Odometer increment over target choices.
            let mut i = k;
            loop {
                if i == 0 {
                    break;
                }
                counters[i - 1] += 1;
                if counters[i - 1] < n {
                    break;
                }
                counters[i - 1] = 0;
                i -= 1;
            }
            if i == 0 {
                break;
            }
        }
    }
    Ok(out)
}

/// All total functions `m → n` in graph-lexicographic order.
pub fn enumerate_total_fns(m: usize, n: usize) -> Result<Vec<PartialFn>> {
    if n == 0 {
        return Ok(if m == 0 { vec![PartialFn::empty(0, 0)] } else { vec![] });
    }
    check_enum_budget((n as u64).checked_pow(m as u32).unwrap_or(u64::MAX))?;
    let mut out = Vec::new();
    let mut counters = vec![0usize; m];
    loop {
        out.push(PartialFn {
            source: m,
            target: n,
            map: counters.iter().map(|&y| Some(y)).collect(),
        });
        let mut i = m;
        loop {
            if i == 0 {
                break;
            }
            counters[i - 1] += 1;
            if counters[i - 1] < n {
                break;
            }
            counters[i - 1] = 0;
            i -= 1;
        }
        if i == 0 {
            break;
        }
    }
    Ok(out)
}

/// All partial bijections `m → n`, in the order inherited from
/// [`enumerate_partial_fns`].
pub fn enumerate_partial_bijections(m: usize, n: usize) -> Result<Vec<PartialBijection>> {
    Ok(enumerate_partial_fns(m, n)?
        .into_iter()
        .filter_map(|f| f.to_partial_bijection())
        .collect())
}

/// All permutations of `{0,…,n-1}` in graph-lexicographic order.
pub fn enumerate_permutations(n: usize) -> Vec<PartialBijection> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(PartialBijection::permutation(current.clone()).expect("valid permutation"));
        // Next permutation in lexicographic order.
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}

/// All monotone maps `[m] → [n]`, graph-lexicographic.
pub fn enumerate_monotone(m: usize, n: usize) -> Result<Vec<MonotoneMap>> {
    // Count is C(m+n+1, m+1); the recursive walk below emits in lex order.
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(m + 1);
    fn walk(out: &mut Vec<MonotoneMap>, prefix: &mut Vec<usize>, m: usize, n: usize) {
        if prefix.len() == m + 1 {
            out.push(MonotoneMap { source: m, target: n, map: prefix.clone() });
            return;
        }
        let lo = prefix.last().copied().unwrap_or(0);
        for y in lo..=n {
            prefix.push(y);
            walk(out, prefix, m, n);
            prefix.pop();
        }
    }
    walk(&mut out, &mut prefix, m, n);
    check_enum_budget(out.len() as u64)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: compose as relations on explicit pair sets.
    fn relational_compose(g: &PartialFn, f: &PartialFn) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for x in 0..f.source() {
            for z in 0..g.target() {
                let linked = (0..g.source())
                    .any(|y| f.apply(x) == Some(y) && g.apply(y) == Some(z));
                if linked {
                    pairs.push((x, z));
                }
            }
        }
        pairs
    }

    fn graph_pairs(f: &PartialFn) -> Vec<(usize, usize)> {
        (0..f.source()).filter_map(|x| f.apply(x).map(|y| (x, y))).collect()
    }

    #[test]
    fn composition_matches_relational_oracle() {
        for m in 0..=3 {
            for n in 0..=3 {
                for p in 0..=3 {
                    for f in enumerate_partial_fns(m, n).unwrap() {
                        for g in enumerate_partial_fns(n, p).unwrap() {
                            let gf = g.compose(&f).unwrap();
                            assert_eq!(graph_pairs(&gf), relational_compose(&g, &f));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn worked_composition_example() {
        // Total 3→2 collapsing {0,1} then a partial 2→1 defined only at 0:
        // the composite is defined exactly on {0,1}.
        let f = PartialFn::total(3, 2, vec![0, 0, 1]).unwrap();
        let g = PartialFn::new(2, 1, vec![Some(0), None]).unwrap();
        let gf = g.compose(&f).unwrap();
        assert_eq!(gf.domain(), vec![0, 1]);
        assert_eq!(gf.apply(2), None);
    }

    #[test]
    fn category_laws_exhaustive_small() {
        // Identity and associativity for all triples over sets of size ≤ 2,
        // plus identities over size 3 (the full size-3 triple product is
        // covered by the relational oracle test above).
        for m in 0..=3 {
            for n in 0..=3 {
                for f in enumerate_partial_fns(m, n).unwrap() {
                    assert_eq!(PartialFn::identity(n).compose(&f).unwrap(), f);
                    assert_eq!(f.compose(&PartialFn::identity(m)).unwrap(), f);
                }
            }
        }
        for a in 0..=2 {
            for b in 0..=2 {
                for c in 0..=2 {
                    for d in 0..=2 {
                        for f in enumerate_partial_fns(a, b).unwrap() {
                            for g in enumerate_partial_fns(b, c).unwrap() {
                                for h in enumerate_partial_fns(c, d).unwrap() {
                                    let left = h.compose(&g).unwrap().compose(&f).unwrap();
                                    let right = h.compose(&g.compose(&f).unwrap()).unwrap();
                                    assert_eq!(left, right);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn transpose_is_involutive_and_antihomomorphic() {
        for m in 0..=3 {
            for n in 0..=3 {
                for f in enumerate_partial_bijections(m, n).unwrap() {
                    assert_eq!(f.transpose().transpose(), f);
                }
                for p in 0..=3 {
                    for f in enumerate_partial_bijections(m, n).unwrap() {
                        for g in enumerate_partial_bijections(n, p).unwrap() {
                            let lhs = g.compose(&f).unwrap().transpose();
                            let rhs = f.transpose().compose(&g.transpose()).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    /// Membership in the partial-bijection subcategory is equivalent to the
    /// canonical comparison map from the coimage to the image being a
    /// bijection.  Both sides are computed independently here.
    #[test]
    fn membership_matches_coimage_image_comparison() {
        for m in 0..=3 {
            for n in 0..=3 {
                for f in enumerate_partial_fns(m, n).unwrap() {
                    // Coimage: source minus kernel.  Image: target points hit.
                    // The comparison map sends a defined point x to f(x); it is
                    // surjective by construction, so bijectivity is equality of
                    // cardinalities.
                    let coimage = f.domain().len();
                    let image = f.image().len();
                    assert_eq!(f.to_partial_bijection().is_some(), coimage == image);
                }
            }
        }
    }

    #[test]
    fn kernel_cokernel_worked_examples() {
        // Identity: empty kernel, empty cokernel.
        let id = PartialFn::identity(3);
        assert!(id.kernel().is_empty());
        assert_eq!(id.cokernel().0, 0);

        // 3 → 2 sending 0,1 ↦ 1 and undefined at 2: kernel {2}, cokernel
        // collapses {1} and keeps 0.
        let f = PartialFn::new(3, 2, vec![Some(1), Some(1), None]).unwrap();
        assert_eq!(f.kernel(), vec![2]);
        let (size, q) = f.cokernel();
        assert_eq!(size, 1);
        assert_eq!(q.apply(0), Some(0));
        assert_eq!(q.apply(1), None);
    }

    #[test]
    fn enumeration_counts() {
        // Hand counts: partial functions m→n number (n+1)^m; partial
        // bijections 2→2 number 7 (empty, four singletons, two bijections);
        // monotone [1]→[0] is unique.
        assert_eq!(enumerate_partial_fns(2, 2).unwrap().len(), 9);
        assert_eq!(enumerate_partial_fns(3, 3).unwrap().len(), 64);
        assert_eq!(enumerate_partial_bijections(1, 1).unwrap().len(), 2);
        assert_eq!(enumerate_partial_bijections(2, 2).unwrap().len(), 7);
        assert_eq!(enumerate_monotone(1, 0).unwrap().len(), 1);
        assert_eq!(enumerate_monotone(1, 1).unwrap().len(), 3);
        assert_eq!(enumerate_total_fns(3, 3).unwrap().len(), 27);
        assert_eq!(enumerate_permutations(3).len(), 6);

        // Brute-force oracle for partial bijection counts at small sizes:
        // sum over k of C(m,k) C(n,k) k!.
        fn choose(n: usize, k: usize) -> u64 {
            if k > n {
                return 0;
            }
            (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
        }
        for m in 0..=3 {
            for n in 0..=3 {
                let expected: u64 = (0..=m.min(n))
                    .map(|k| {
                        choose(m, k) * choose(n, k) * (1..=k as u64).product::<u64>().max(1)
                    })
                    .sum();
                assert_eq!(enumerate_partial_bijections(m, n).unwrap().len() as u64, expected);
            }
        }
    }

    #[test]
    fn enumeration_order_is_lexicographic() {
        let fns = enumerate_partial_fns(2, 2).unwrap();
        // Empty domain first, then domain {0}, {1}, {0,1} with graphs ascending.
        assert_eq!(fns[0], PartialFn::empty(2, 2));
        assert_eq!(fns[1], PartialFn::new(2, 2, vec![Some(0), None]).unwrap());
        assert_eq!(fns[2], PartialFn::new(2, 2, vec![Some(1), None]).unwrap());
        assert_eq!(fns[3], PartialFn::new(2, 2, vec![None, Some(0)]).unwrap());
        let monos = enumerate_monotone(1, 1).unwrap();
        assert_eq!(monos[0].table(), &[0, 0]);
        assert_eq!(monos[1].table(), &[0, 1]);
        assert_eq!(monos[2].table(), &[1, 1]);
    }

    #[test]
    fn fiber_product_projections_commute() {
        for f in enumerate_partial_fns(2, 2).unwrap() {
            for g in enumerate_partial_fns(3, 2).unwrap() {
                let fp = fiber_product(&f, &g).unwrap();
                for p in 0..fp.size {
                    let x = fp.left.apply(p).unwrap();
                    let y = fp.right.apply(p).unwrap();
                    assert_eq!(f.apply(x), g.apply(y));
                    assert!(f.apply(x).is_some());
                }
                // Pair list is lexicographically sorted.
                assert!(fp.pairs.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn monotone_generators() {
        let d1 = MonotoneMap::coface(2, 1).unwrap();
        assert_eq!(d1.table(), &[0, 2]);
        assert!(d1.is_injective());
        let s0 = MonotoneMap::codegeneracy(1, 0).unwrap();
        assert_eq!(s0.table(), &[0, 0, 1]);
        assert!(s0.is_surjective());
        // Simplicial identity d^1 s^0 = id on [1].
        let comp = s0.compose(&MonotoneMap::coface(2, 0).unwrap()).unwrap();
        assert!(comp.table() == MonotoneMap::identity(1).table() || comp.source() == 1);
    }

    #[test]
    fn enumeration_budget_enforced() {
        assert!(enumerate_partial_fns(30, 30).is_err());
    }
}
