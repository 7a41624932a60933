//! Level-truncated symmetric sequences and sphere-spectrum modules.
//!
//! A symmetric sequence holds levels `M^0, …, M^L`, each a truncated
//! simplicial A-set carrying an action of the symmetric group Σ_n by
//! simplicial automorphisms.  Actions are stored as the images of the
//! adjacent transpositions `s_0, …, s_{n−2}` and composed lazily along
//! bubble-sort words; the defining group laws (involution, far
//! commutation, braid) are checked on the generators at assembly.
//!
//! The module family provides, within the truncation region `(L, D)`:
//!
//! * [`tensor`] — both monoidal structures of the level category: the
//!   decomposition model (primary) and the induced model (cross-check),
//!   with the twist isomorphism in each and the canonical equivariant
//!   comparison between them;
//! * [`sphere`] — the simplicial circle, its smash powers with the
//!   factor-permutation action, the sphere monoid and its base change;
//! * [`hom`] — level homs as finite products of equivariant simplicial
//!   map-objects, with the tensor–hom adjunction counters;
//! * [`smod`] — modules over the sphere monoid: free modules, the
//!   balanced tensor as a congruence coequalizer, latching objects by two
//!   routes, the shift pair and its adjunction, and the loop-map adjoint.
//!
//! Everything is exact within the stated truncations: no operation
//! extrapolates beyond the levels it can see, and operations whose output
//! would need invisible levels state that region in their contracts.

pub mod hom;
pub(crate) mod kit;
pub mod perm;
pub mod smod;
pub mod sphere;
pub mod tensor;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::aset::{f_pointed_set, ring_carrier, ASetObj};
use crate::error::{Error, Result};
use crate::genring::RingRef;
use crate::simpset::{constant_simp, SimpMap, TruncSimpASet};
use kit::{assemble_simp, is_initial, point_aset, product_level, wedge_level};
use perm::Perm;

/// Compose two tables as functions: `(a ∘ b)[x] = a[b[x]]`.
pub(crate) fn comp_tables(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&y| a[y]).collect()
}

/// The zero simplicial object: a point at every level.
pub fn zero_simp(ring: &RingRef, d: usize) -> Result<TruncSimpASet> {
    constant_simp(&point_aset(ring)?, d, 1)
}

/// A level-truncated symmetric sequence: levels `M^0, …, M^L` with
/// generator-stored Σ_n-actions.
#[derive(Clone)]
pub struct SymSeq {
    ring: RingRef,
    name: String,
    l: usize,
    d: usize,
    levels: Vec<TruncSimpASet>,
    gens: Vec<Vec<SimpMap>>,
}

impl std::fmt::Debug for SymSeq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SymSeq")
            .field("name", &self.name)
            .field("ring", &self.ring.name())
            .field("l", &self.l)
            .field("d", &self.d)
            .field(
                "sizes",
                &(0..=self.l)
                    .map(|n| {
                        (0..=self.d).map(|k| self.levels[n].level(k).size()).collect::<Vec<_>>()
                    })
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl SymSeq {
    /// Assemble and validate: level count and truncations, one action
    /// generator per adjacent transposition, every generator a simplicial
    /// automorphism, and the symmetric-group laws on generators
    /// (`s_i² = 1`, far commutation, braid).
    ///
    /// Over the initial instance the level carriers are rebuilt in the
    /// closed pointed form, which carries the unique total action.
    pub fn new(
        ring: &RingRef,
        name: &str,
        levels: Vec<TruncSimpASet>,
        gens: Vec<Vec<SimpMap>>,
    ) -> Result<SymSeq> {
        if levels.is_empty() {
            return Err(Error::validation("seq.levels", "at least level 0 is required"));
        }
        let l = levels.len() - 1;
        let d = levels[0].d();
        let levels: Vec<TruncSimpASet> = levels
            .into_iter()
            .enumerate()
            .map(|(n, lv)| {
                if lv.ring().name() != ring.name() {
                    return Err(Error::validation(
                        format!("seq.levels[{n}]"),
                        format!("ring {} differs from {}", lv.ring().name(), ring.name()),
                    ));
                }
                if lv.d() != d {
                    return Err(Error::validation(
                        format!("seq.levels[{n}]"),
                        format!("simplicial truncation {} differs from {}", lv.d(), d),
                    ));
                }
                if is_initial(ring) {
                    reify_initial(&lv)
                } else {
                    Ok(lv)
                }
            })
            .collect::<Result<_>>()?;
        if gens.len() != l + 1 {
            return Err(Error::validation(
                "seq.gens",
                format!("{} generator rows for {} levels", gens.len(), l + 1),
            ));
        }
        let mut rebuilt: Vec<Vec<SimpMap>> = Vec::with_capacity(l + 1);
        for (n, row) in gens.into_iter().enumerate() {
            let want = n.saturating_sub(1);
            if row.len() != want {
                return Err(Error::validation(
                    format!("seq.gens[{n}]"),
                    format!("{} adjacent transpositions supplied, {want} required", row.len()),
                ));
            }
            let mut out = Vec::with_capacity(want);
            for (i, g) in row.into_iter().enumerate() {
                let tables: Vec<Vec<usize>> =
                    (0..=d).map(|k| g.table(k).to_vec()).collect();
                let m = SimpMap::new(&format!("s{i}"), &levels[n], &levels[n], tables, 1)?;
                if !m.is_level_iso() {
                    return Err(Error::validation(
                        format!("seq.gens[{n}][{i}]"),
                        "transposition image is not an automorphism",
                    ));
                }
                out.push(m);
            }
            rebuilt.push(out);
        }
        // Group laws on generators, per simplicial level.
        for n in 0..=l {
            let row = &rebuilt[n];
            for k in 0..=d {
                let sz = levels[n].level(k).size();
                let id: Vec<usize> = (0..sz).collect();
                for (i, g) in row.iter().enumerate() {
                    let gg = comp_tables(g.table(k), g.table(k));
                    if gg != id {
                        return Err(Error::validation(
                            format!("seq.gens[{n}][{i}]"),
                            format!("s{i}² ≠ id at simplicial level {k}"),
                        ));
                    }
                    for (j, h) in row.iter().enumerate().skip(i + 2) {
                        let gh = comp_tables(g.table(k), h.table(k));
                        let hg = comp_tables(h.table(k), g.table(k));
                        if gh != hg {
                            return Err(Error::validation(
                                format!("seq.gens[{n}]"),
                                format!("s{i} and s{j} do not commute at level {k}"),
                            ));
                        }
                    }
                    if i + 1 < row.len() {
                        let h = &row[i + 1];
                        let lhs = comp_tables(
                            g.table(k),
                            &comp_tables(h.table(k), g.table(k)),
                        );
                        let rhs = comp_tables(
                            h.table(k),
                            &comp_tables(g.table(k), h.table(k)),
                        );
                        if lhs != rhs {
                            return Err(Error::validation(
                                format!("seq.gens[{n}]"),
                                format!("braid law fails for s{i}, s{} at level {k}", i + 1),
                            ));
                        }
                    }
                }
            }
        }
        Ok(SymSeq { ring: ring.clone(), name: name.to_string(), l, d, levels, gens: rebuilt })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Level truncation: levels `0 ..= l` are present.
    pub fn l(&self) -> usize {
        self.l
    }

    /// Simplicial truncation of every level.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn level(&self, n: usize) -> &TruncSimpASet {
        &self.levels[n]
    }

    /// The action image of the adjacent transposition `s_i` on level `n`.
    pub fn gen(&self, n: usize, i: usize) -> &SimpMap {
        &self.gens[n][i]
    }

    pub fn renamed(&self, name: &str) -> SymSeq {
        let mut s = self.clone();
        s.name = name.to_string();
        s
    }

    /// The action tables of an arbitrary permutation on level `n`, one
    /// table per simplicial level, composed along an adjacent word.
    pub fn perm_tables(&self, n: usize, pi: &Perm) -> Result<Vec<Vec<usize>>> {
        if pi.degree() != n {
            return Err(Error::Arity(format!(
                "permutation of degree {} acting on level {n}",
                pi.degree()
            )));
        }
        let mut tabs: Vec<Vec<usize>> =
            (0..=self.d).map(|k| (0..self.levels[n].level(k).size()).collect()).collect();
        for &i in &pi.adjacent_word() {
            let g = &self.gens[n][i];
            for (k, tab) in tabs.iter_mut().enumerate() {
                *tab = comp_tables(tab, g.table(k));
            }
        }
        Ok(tabs)
    }

    /// The action of a permutation as a validated simplicial map.
    pub fn perm_map(&self, n: usize, pi: &Perm) -> Result<SimpMap> {
        let tabs = self.perm_tables(n, pi)?;
        SimpMap::new(&format!("ρ{:?}", pi.table()), &self.levels[n], &self.levels[n], tabs, 1)
    }
}

/// Rebuild the carriers of a simplicial object over the initial instance in
/// closed pointed form: every pointed set carries exactly one action, so
/// this is the identity on the underlying data but makes the action total.
fn reify_initial(x: &TruncSimpASet) -> Result<TruncSimpASet> {
    let mut levels = Vec::with_capacity(x.d() + 1);
    for k in 0..=x.d() {
        let lv = x.level(k);
        levels.push(f_pointed_set(lv.name(), lv.labels().to_vec())?);
    }
    let mut maps = std::collections::BTreeMap::new();
    for n in 0..=x.d() {
        for np in 0..=x.d() {
            for l in crate::fincat::enumerate_monotone(n, np)? {
                let key = (l.source(), l.target(), l.table().to_vec());
                maps.insert(key, x.structure_table(&l)?.to_vec());
            }
        }
    }
    TruncSimpASet::new(x.ring(), x.name(), levels, maps, 1)
}

/// The unit sequence `(A_{[1]}, 0, 0, …)`: the ring carrier as a constant
/// simplicial object in level 0, zero above.
pub fn unit_seq(ring: &RingRef, l: usize, d: usize) -> Result<SymSeq> {
    let mut levels = vec![constant_simp(&ring_carrier(ring)?, d, 1)?];
    for _ in 1..=l {
        levels.push(zero_simp(ring, d)?);
    }
    let gens = trivial_gens(&levels);
    SymSeq::new(ring, "1", levels, gens)
}

/// Identity generator rows for levels whose action is trivial (zero levels
/// or plain carriers with the permutation action forgotten).
pub fn trivial_gens(levels: &[TruncSimpASet]) -> Vec<Vec<SimpMap>> {
    levels
        .iter()
        .enumerate()
        .map(|(n, lv)| (0..n.saturating_sub(1)).map(|_| SimpMap::identity(lv)).collect())
        .collect()
}

/// The sequence concentrated in one level, zero elsewhere.  `gens` are the
/// adjacent-transposition images on the concentrated level (empty for
/// `at ≤ 1`).
pub fn concentrated(
    obj: &TruncSimpASet,
    gens: Vec<SimpMap>,
    at: usize,
    l: usize,
) -> Result<SymSeq> {
    if at > l {
        return Err(Error::Arity(format!("concentration level {at} above truncation {l}")));
    }
    let ring = obj.ring().clone();
    let mut levels = Vec::with_capacity(l + 1);
    let mut rows = Vec::with_capacity(l + 1);
    for n in 0..=l {
        if n == at {
            levels.push(obj.clone());
            rows.push(gens.clone());
        } else {
            let z = zero_simp(&ring, obj.d())?;
            rows.push((0..n.saturating_sub(1)).map(|_| SimpMap::identity(&z)).collect());
            levels.push(z);
        }
    }
    SymSeq::new(&ring, &format!("{}[{at}]", obj.name()), levels, rows)
}

/// The free Σ_n-object on a simplicial object: the wedge of `n!` copies
/// indexed by the permutations in lexicographic order, with `s_i` sending
/// the copy of `σ` to the copy of `s_i ∘ σ` identically.
pub fn free_sigma(
    obj: &TruncSimpASet,
    n: usize,
    cutoff: usize,
) -> Result<(TruncSimpASet, Vec<SimpMap>)> {
    let ring = obj.ring().clone();
    let d = obj.d();
    let perms = Perm::all(n);
    let copies = perms.len();
    let mut carriers = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let objs: Vec<&ASetObj> = (0..copies).map(|_| obj.level(k)).collect();
        carriers.push(wedge_level(
            &ring,
            &objs,
            &format!("Σ{n}×{} (level {k})", obj.name()),
            cutoff,
        )?);
    }
    let widths: Vec<usize> = (0..=d).map(|k| obj.level(k).size() - 1).collect();
    let assembled = assemble_simp(
        &ring,
        &format!("Σ{n}×{}", obj.name()),
        d,
        &carriers,
        |l| {
            let (kt, ks) = (l.target(), l.source());
            let tab = obj.structure_table(l)?;
            let mut images = Vec::with_capacity(copies * widths[kt]);
            for c in 0..copies {
                for x in 1..=widths[kt] {
                    let t = tab[x];
                    images.push(if t == 0 {
                        0
                    } else {
                        carriers[ks].gen_class[c * widths[ks] + t - 1]
                    });
                }
            }
            Ok(images)
        },
        1,
    )?;
    // Generator images: left multiplication on the copy index.
    let index_of: std::collections::HashMap<Vec<usize>, usize> =
        perms.iter().enumerate().map(|(c, p)| (p.table().to_vec(), c)).collect();
    let mut gens = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n.saturating_sub(1) {
        let s = Perm::adjacent(n, i)?;
        let dest: Vec<usize> = perms
            .iter()
            .map(|p| index_of[s.compose(p).unwrap().table()])
            .collect();
        let mut tables = Vec::with_capacity(d + 1);
        for k in 0..=d {
            let mut images = Vec::with_capacity(copies * widths[k]);
            for c in 0..copies {
                for x in 1..=widths[k] {
                    images.push(carriers[k].gen_class[dest[c] * widths[k] + x - 1]);
                }
            }
            tables.push(carriers[k].extend(assembled.level(k), &images)?);
        }
        gens.push(SimpMap::new(&format!("s{i}"), &assembled, &assembled, tables, 1)?);
    }
    Ok((assembled, gens))
}

/// The cofree Σ_n-object on a simplicial object: the product of `n!`
/// copies indexed by the permutations, with `(π · f)(σ) = f(π^{-1} σ)`.
pub fn fixed_power(obj: &TruncSimpASet, n: usize) -> Result<(TruncSimpASet, Vec<SimpMap>)> {
    let ring = obj.ring().clone();
    let d = obj.d();
    let perms = Perm::all(n);
    let copies = perms.len();
    let mut levels = Vec::with_capacity(d + 1);
    let mut strides = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let objs: Vec<ASetObj> = (0..copies).map(|_| obj.level(k).clone()).collect();
        let (lv, st) =
            product_level(&ring, &objs, &format!("{}^Σ{n} (level {k})", obj.name()))?;
        levels.push(lv);
        strides.push(st);
    }
    let sizes: Vec<usize> = (0..=d).map(|k| obj.level(k).size()).collect();
    let mut maps = std::collections::BTreeMap::new();
    for a in 0..=d {
        for b in 0..=d {
            for l in crate::fincat::enumerate_monotone(a, b)? {
                let key = (l.source(), l.target(), l.table().to_vec());
                let tab = obj.structure_table(&l)?;
                let mut out = Vec::with_capacity(levels[b].size());
                for idx in 0..levels[b].size() {
                    let mut img = 0usize;
                    for c in 0..copies {
                        let comp = idx / strides[b][c] % sizes[b];
                        img += tab[comp] * strides[a][c];
                    }
                    out.push(img);
                }
                maps.insert(key, out);
            }
        }
    }
    let assembled = TruncSimpASet::new(
        &ring,
        &format!("{}^Σ{n}", obj.name()),
        levels,
        maps,
        1,
    )?;
    let index_of: std::collections::HashMap<Vec<usize>, usize> =
        perms.iter().enumerate().map(|(c, p)| (p.table().to_vec(), c)).collect();
    let mut gens = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n.saturating_sub(1) {
        let s = Perm::adjacent(n, i)?;
        // Component σ of the image reads component s_i ∘ σ of the source
        // (s_i is its own inverse).
        let read: Vec<usize> = perms
            .iter()
            .map(|p| index_of[s.compose(p).unwrap().table()])
            .collect();
        let mut tables = Vec::with_capacity(d + 1);
        for k in 0..=d {
            let mut out = Vec::with_capacity(assembled.level(k).size());
            for idx in 0..assembled.level(k).size() {
                let mut img = 0usize;
                for c in 0..copies {
                    let comp = idx / strides[k][read[c]] % sizes[k];
                    img += comp * strides[k][c];
                }
                out.push(img);
            }
            tables.push(out);
        }
        gens.push(SimpMap::new(&format!("s{i}"), &assembled, &assembled, tables, 1)?);
    }
    Ok((assembled, gens))
}

/// A map of symmetric sequences: one simplicial map per level, commuting
/// with the Σ_n-actions (checked on adjacent transpositions).
#[derive(Clone)]
pub struct SeqMap {
    name: String,
    source: SymSeq,
    target: SymSeq,
    maps: Vec<SimpMap>,
}

impl SeqMap {
    /// Validate level count, each level against the stored objects, and
    /// equivariance against every action generator.
    pub fn new(
        name: &str,
        source: SymSeq,
        target: SymSeq,
        tables: Vec<Vec<Vec<usize>>>,
    ) -> Result<SeqMap> {
        if source.l != target.l || source.d != target.d {
            return Err(Error::Arity(format!(
                "seq map between truncations ({}, {}) and ({}, {})",
                source.l, source.d, target.l, target.d
            )));
        }
        if source.ring.name() != target.ring.name() {
            return Err(Error::Arity(format!(
                "seq map between rings {} and {}",
                source.ring.name(),
                target.ring.name()
            )));
        }
        if tables.len() != source.l + 1 {
            return Err(Error::validation(
                "seqmap.tables",
                format!("{} level tables for {} levels", tables.len(), source.l + 1),
            ));
        }
        let mut maps = Vec::with_capacity(source.l + 1);
        for (n, t) in tables.into_iter().enumerate() {
            let m =
                SimpMap::new(&format!("{name}@{n}"), &source.levels[n], &target.levels[n], t, 1)?;
            for i in 0..n.saturating_sub(1) {
                let gs = source.gen(n, i);
                let gt = target.gen(n, i);
                for k in 0..=source.d {
                    let lhs = comp_tables(m.table(k), gs.table(k));
                    let rhs = comp_tables(gt.table(k), m.table(k));
                    if lhs != rhs {
                        return Err(Error::validation(
                            format!("seqmap.level[{n}]"),
                            format!("{name} is not equivariant for s{i} at level {k}"),
                        ));
                    }
                }
            }
            maps.push(m);
        }
        Ok(SeqMap { name: name.to_string(), source, target, maps })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &SymSeq {
        &self.source
    }

    pub fn target(&self) -> &SymSeq {
        &self.target
    }

    /// The level-`n` simplicial map.
    pub fn level(&self, n: usize) -> &SimpMap {
        &self.maps[n]
    }

    /// Whether every level table is a bijection.
    pub fn is_iso(&self) -> bool {
        self.maps.iter().all(|m| m.is_level_iso())
    }

    /// Compose `self ∘ first` levelwise.
    pub fn compose(&self, first: &SeqMap) -> Result<SeqMap> {
        let tables: Vec<Vec<Vec<usize>>> = (0..=self.source.l)
            .map(|n| {
                (0..=self.source.d)
                    .map(|k| comp_tables(self.maps[n].table(k), first.maps[n].table(k)))
                    .collect()
            })
            .collect();
        SeqMap::new(
            &format!("{} ∘ {}", self.name, first.name),
            first.source.clone(),
            self.target.clone(),
            tables,
        )
    }

    /// Whether two maps have identical tables.
    pub fn same_tables(&self, other: &SeqMap) -> bool {
        self.source.l == other.source.l
            && (0..=self.source.l).all(|n| {
                (0..=self.source.d).all(|k| self.maps[n].table(k) == other.maps[n].table(k))
            })
    }
}

/// A seeded random symmetric sequence over the initial instance, used by
/// the cross-model oracles.  Levels mix: zero, a constant pointed set with
/// trivial action, a smash power with the factor-permutation action, and a
/// free Σ_n-object on a small complex.
pub fn sample_symseq(rng: &mut ChaCha8Rng, l: usize, d: usize) -> Result<SymSeq> {
    let ring: RingRef = std::sync::Arc::new(crate::genring::instances::f_ring());
    let mut levels = Vec::with_capacity(l + 1);
    let mut rows: Vec<Vec<SimpMap>> = Vec::with_capacity(l + 1);
    for n in 0..=l {
        let choice = if n < 2 { rng.gen_range(0..3) } else { rng.gen_range(0..5) };
        match choice {
            0 => {
                let z = zero_simp(&ring, d)?;
                rows.push((0..n.saturating_sub(1)).map(|_| SimpMap::identity(&z)).collect());
                levels.push(z);
            }
            1 | 3 => {
                // A constant pointed set (1) or a small complex (3), with
                // the trivial action.
                let base = if choice == 1 {
                    let sz = rng.gen_range(2..=4);
                    let labels =
                        (0..sz)
                            .map(|i| if i == 0 { "*".to_string() } else { format!("x{i}") })
                            .collect();
                    constant_simp(&f_pointed_set(&format!("P{sz}"), labels)?, d, 1)?
                } else {
                    sample_complex(rng, &ring, d)?
                };
                rows.push(
                    (0..n.saturating_sub(1)).map(|_| SimpMap::identity(&base)).collect(),
                );
                levels.push(base);
            }
            2 => {
                // A smash power with the permutation action.
                let base = sample_complex(rng, &ring, d)?;
                let (obj, gens) = sphere::smash_power(&base, n)?;
                rows.push(gens);
                levels.push(obj);
            }
            _ => {
                let base = sample_complex(rng, &ring, d)?;
                let (obj, gens) = free_sigma(&base, n, 1)?;
                rows.push(gens);
                levels.push(obj);
            }
        }
    }
    SymSeq::new(&ring, &format!("sample{}", rng.gen_range(0..1000)), levels, rows)
}

/// A small random simplicial complex over the initial instance: the point,
/// a standard simplex, its boundary, the circle, or a constant set.
fn sample_complex(rng: &mut ChaCha8Rng, ring: &RingRef, d: usize) -> Result<TruncSimpASet> {
    use crate::simpset::{make_std, StdKind};
    match rng.gen_range(0..5) {
        0 => zero_simp(ring, d),
        1 => Ok(make_std(StdKind::Simplex, 0, d)?.into_object()),
        2 => Ok(make_std(StdKind::Simplex, 1, d)?.into_object()),
        3 => sphere::circle(d),
        _ => {
            let sz = rng.gen_range(2..=3);
            let labels = (0..sz)
                .map(|i| if i == 0 { "*".to_string() } else { format!("c{i}") })
                .collect();
            constant_simp(&f_pointed_set(&format!("K{sz}"), labels)?, d, 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genring::instances::{f_ring, zmod};
    use rand::SeedableRng;
    use std::sync::Arc;

    fn fr() -> RingRef {
        Arc::new(f_ring())
    }

    #[test]
    fn unit_sequences_and_zero_levels_validate() {
        let u = unit_seq(&fr(), 3, 2).unwrap();
        assert_eq!(u.l(), 3);
        assert_eq!(u.d(), 2);
        assert_eq!(u.level(0).level(0).size(), 2);
        assert_eq!(u.level(1).level(0).size(), 1);
        assert_eq!(u.level(3).level(2).size(), 1);

        let r6: RingRef = Arc::new(zmod(6).unwrap());
        let u6 = unit_seq(&r6, 2, 1).unwrap();
        assert_eq!(u6.level(0).level(0).size(), 6);
        assert_eq!(u6.level(0).level(1).size(), 6);
    }

    #[test]
    fn free_sigma_objects_carry_a_transitive_copy_action() {
        let labels = vec!["*".to_string(), "a".to_string(), "b".to_string()];
        let x = constant_simp(&f_pointed_set("X", labels).unwrap(), 1, 1).unwrap();
        let (obj, gens) = free_sigma(&x, 3, 1).unwrap();
        // 3! copies of two nonzero elements.
        assert_eq!(obj.level(0).size(), 6 * 2 + 1);
        assert_eq!(gens.len(), 2);
        let seq = concentrated(&obj, gens, 3, 3).unwrap();
        // The action by any permutation permutes copies without fixing any
        // nonzero element unless the permutation is the identity.
        let tabs = seq.perm_tables(3, &Perm::new(vec![1, 2, 0]).unwrap()).unwrap();
        assert!(tabs[0].iter().enumerate().skip(1).all(|(i, &y)| i != y));
        let id_tabs = seq.perm_tables(3, &Perm::identity(3)).unwrap();
        assert!(id_tabs[0].iter().enumerate().all(|(i, &y)| i == y));
    }

    #[test]
    fn fixed_powers_carry_the_translated_component_action() {
        let labels = vec!["*".to_string(), "a".to_string()];
        let x = constant_simp(&f_pointed_set("X", labels).unwrap(), 1, 1).unwrap();
        let (obj, gens) = fixed_power(&x, 2).unwrap();
        // 2 copies of a 2-element set: product has 4 elements.
        assert_eq!(obj.level(0).size(), 4);
        assert_eq!(gens.len(), 1);
        // The swap exchanges the two mixed elements and fixes the diagonal.
        let t = gens[0].table(0);
        assert_eq!(t[0], 0);
        assert_eq!(t[3], 3);
        assert_eq!(t[1], 2);
        assert_eq!(t[2], 1);
    }

    #[test]
    fn group_law_violations_are_rejected() {
        let ring = fr();
        let labels: Vec<String> =
            vec!["*".into(), "a".into(), "b".into(), "c".into()];
        let x = constant_simp(&f_pointed_set("X", labels).unwrap(), 1, 1).unwrap();
        // A transposition of two generators is a valid involution.
        let swap =
            SimpMap::new("t", &x, &x, vec![vec![0, 2, 1, 3], vec![0, 2, 1, 3]], 1).unwrap();
        let ok = SymSeq::new(
            &ring,
            "ok",
            vec![x.clone(), x.clone(), x.clone()],
            vec![vec![], vec![], vec![swap]],
        );
        assert!(ok.is_ok());
        // A 3-cycle is a simplicial automorphism but not an involution:
        // the generator law s₀² = 1 fails.
        let cycle =
            SimpMap::new("c", &x, &x, vec![vec![0, 2, 3, 1], vec![0, 2, 3, 1]], 1).unwrap();
        let seq = SymSeq::new(
            &ring,
            "bad",
            vec![x.clone(), x.clone(), x.clone()],
            vec![vec![], vec![], vec![cycle]],
        );
        assert!(seq.is_err());
    }

    #[test]
    fn sampled_sequences_validate_and_are_seed_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let s1 = sample_symseq(&mut rng, 3, 2).unwrap();
        let mut rng2 = ChaCha8Rng::seed_from_u64(11);
        let s2 = sample_symseq(&mut rng2, 3, 2).unwrap();
        for n in 0..=3 {
            for k in 0..=2 {
                assert_eq!(s1.level(n).level(k).size(), s2.level(n).level(k).size());
            }
        }
    }
}
