//! Symmetric-group bookkeeping: permutations as image vectors, adjacent
//! transposition words, block sums, shuffles, and the subset combinatorics
//! used to index decompositions and cosets.
//!
//! Conventions used throughout the spectra modules:
//!
//! * Permutations act on positions `{0, …, n−1}`; `compose(first)` is
//!   function composition `self ∘ first`, so `(π·σ)(x) = π(σ(x))`.
//! * A subset of `{0, …, n−1}` is a bitmask; bit `i` is element `i`.
//! * The canonical coset representative [`subset_perm`] for a `p`-subset `S`
//!   sends `0, …, p−1` to `S` in ascending order and the remaining arguments
//!   to the complement in ascending order.
//! * [`std_restriction`] standardizes a permutation restricted to a subset:
//!   the degree-`|S|` permutation of *positions within the sorted subset*
//!   that `π` induces from `S` onto `π(S)`.

use crate::error::{Error, Result};

/// A permutation of `{0, …, n−1}` stored as its image vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Perm {
    map: Vec<usize>,
}

impl Perm {
    /// Validate an image vector as a bijection.
    pub fn new(map: Vec<usize>) -> Result<Perm> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &y in &map {
            if y >= n || seen[y] {
                return Err(Error::validation(
                    "perm.map",
                    format!("{map:?} is not a bijection of 0..{n}"),
                ));
            }
            seen[y] = true;
        }
        Ok(Perm { map })
    }

    pub fn identity(n: usize) -> Perm {
        Perm { map: (0..n).collect() }
    }

    /// The adjacent transposition `s_i = (i, i+1)` in degree `n`.
    pub fn adjacent(n: usize, i: usize) -> Result<Perm> {
        if i + 1 >= n {
            return Err(Error::Arity(format!(
                "adjacent transposition {i} out of range for degree {n}"
            )));
        }
        let mut map: Vec<usize> = (0..n).collect();
        map.swap(i, i + 1);
        Ok(Perm { map })
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &y)| i == y)
    }

    /// Function composition `self ∘ first`.
    pub fn compose(&self, first: &Perm) -> Result<Perm> {
        if first.degree() != self.degree() {
            return Err(Error::Arity(format!(
                "cannot compose permutations of degrees {} and {}",
                first.degree(),
                self.degree()
            )));
        }
        Ok(Perm { map: first.map.iter().map(|&y| self.map[y]).collect() })
    }

    pub fn inverse(&self) -> Perm {
        let mut map = vec![0usize; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            map[y] = x;
        }
        Perm { map }
    }

    /// `self ⊕ other` acting on the first and last blocks separately.
    pub fn block_sum(&self, other: &Perm) -> Perm {
        let p = self.degree();
        let mut map = self.map.clone();
        map.extend(other.map.iter().map(|&y| p + y));
        Perm { map }
    }

    /// A word `w` in adjacent transpositions with
    /// `self = s_{w[0]} ∘ s_{w[1]} ∘ … ∘ s_{w[last]}`.
    ///
    /// Bubble sort: repeatedly swapping descents of the image vector
    /// multiplies on the right by the corresponding transpositions, so the
    /// collected indices in reverse order spell the permutation.
    pub fn adjacent_word(&self) -> Vec<usize> {
        let mut v = self.map.clone();
        let mut word = Vec::new();
        loop {
            let mut swapped = false;
            for i in 0..v.len().saturating_sub(1) {
                if v[i] > v[i + 1] {
                    v.swap(i, i + 1);
                    word.push(i);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        word.reverse();
        word
    }

    /// All permutations of degree `n` in lexicographic image-vector order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm { map: cur.clone() });
            // Next lexicographic permutation.
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }
}

/// The `(p, q)`-shuffle `ω_{p,q}` of degree `p+q`: the first `p` positions
/// move past the last `q`, so `i ↦ i+q` for `i < p` and `p+j ↦ j`.
pub fn shuffle(p: usize, q: usize) -> Perm {
    let map = (0..p).map(|i| i + q).chain(0..q).collect();
    Perm { map }
}

/// The elements of a bitmask in ascending order.
pub fn mask_elems(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

/// The image of a subset under a permutation.
pub fn apply_mask(p: &Perm, mask: u32) -> u32 {
    let mut out = 0u32;
    for i in mask_elems(mask) {
        out |= 1 << p.apply(i);
    }
    out
}

/// The canonical coset representative `σ_S` of a `p`-subset `S` of
/// `{0, …, n−1}`: ascending on the first `p` arguments onto `S`, ascending
/// on the rest onto the complement.
pub fn subset_perm(n: usize, mask: u32) -> Perm {
    let mut map = mask_elems(mask);
    map.extend((0..n).filter(|&i| mask >> i & 1 == 0));
    Perm { map }
}

/// The standardization of `π` restricted to the subset `S`: the degree-`|S|`
/// permutation sending the position of `x` within sorted `S` to the position
/// of `π(x)` within sorted `π(S)`.
pub fn std_restriction(p: &Perm, mask: u32) -> Perm {
    let elems = mask_elems(mask);
    let images: Vec<usize> = elems.iter().map(|&x| p.apply(x)).collect();
    let mut sorted = images.clone();
    sorted.sort_unstable();
    let map = images.iter().map(|y| sorted.iter().position(|z| z == y).unwrap()).collect();
    Perm { map }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_in_adjacent_transpositions_respell_every_permutation() {
        for n in 0..=4 {
            let all = Perm::all(n);
            assert_eq!(all.len(), (1..=n.max(1)).product::<usize>());
            for p in &all {
                let mut acc = Perm::identity(n);
                for &i in &p.adjacent_word() {
                    acc = acc.compose(&Perm::adjacent(n, i).unwrap()).unwrap();
                }
                assert_eq!(&acc, p, "word of {:?}", p);
            }
        }
    }

    #[test]
    fn composition_inversion_and_block_sums_behave() {
        let p = Perm::new(vec![2, 0, 3, 1]).unwrap();
        let q = Perm::new(vec![1, 2, 3, 0]).unwrap();
        let pq = p.compose(&q).unwrap();
        for x in 0..4 {
            assert_eq!(pq.apply(x), p.apply(q.apply(x)));
        }
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
        assert!(p.inverse().compose(&p).unwrap().is_identity());
        let s = p.block_sum(&Perm::adjacent(2, 0).unwrap());
        assert_eq!(s.table(), &[2, 0, 3, 1, 5, 4]);
        assert!(Perm::new(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn shuffles_conjugate_the_block_subgroups() {
        let w = shuffle(2, 3);
        assert_eq!(w.table(), &[3, 4, 0, 1, 2]);
        assert!(shuffle(0, 4).is_identity());
        assert!(shuffle(3, 0).is_identity());
        // ω_{p,q}^{-1} = ω_{q,p}.
        assert_eq!(w.inverse(), shuffle(3, 2));
        // Conjugation swaps the two blocks: ω ∘ (α ⊕ β) ∘ ω^{-1} = β ⊕ α.
        let a = Perm::adjacent(2, 0).unwrap();
        let b = Perm::new(vec![2, 0, 1]).unwrap();
        let lhs = w.compose(&a.block_sum(&b)).unwrap().compose(&w.inverse()).unwrap();
        assert_eq!(lhs, b.block_sum(&a));
    }

    #[test]
    fn subset_representatives_and_standardization_agree() {
        // S = {1, 2} inside degree 4.
        let rep = subset_perm(4, 0b0110);
        assert_eq!(rep.table(), &[1, 2, 0, 3]);
        assert_eq!(mask_elems(0b0110), vec![1, 2]);

        let p = Perm::new(vec![2, 0, 3, 1]).unwrap();
        assert_eq!(apply_mask(&p, 0b0101), 0b1100); // {0,2} ↦ {2,3}
        let std = std_restriction(&p, 0b0101);
        // 0 ↦ 2 (position 0 of {2,3}), 2 ↦ 3 (position 1): identity on slots.
        assert!(std.is_identity());
        let std2 = std_restriction(&p, 0b1010); // {1,3} ↦ {0,1}
        assert!(std2.is_identity());
        let q = Perm::new(vec![1, 0, 2]).unwrap();
        let std3 = std_restriction(&q, 0b011); // {0,1} ↦ {1,0}: swap.
        assert_eq!(std3.table(), &[1, 0]);

        // Factorization through the representative: for any π and subset S,
        // γ = σ_{π(S)}^{-1} ∘ π ∘ σ_S preserves the first |S| positions as a
        // block and standardizes to the two restrictions.
        for p4 in Perm::all(4) {
            for mask in 0u32..16 {
                let k = mask.count_ones() as usize;
                let gamma = subset_perm(4, apply_mask(&p4, mask))
                    .inverse()
                    .compose(&p4)
                    .unwrap()
                    .compose(&subset_perm(4, mask))
                    .unwrap();
                let alpha = std_restriction(&p4, mask);
                let beta = std_restriction(&p4, !mask & 0xF);
                assert_eq!(gamma, alpha.block_sum(&beta), "π={p4:?} S={mask:b}");
                let _ = k;
            }
        }
    }
}
