//! Truncated simplicial objects over a generalized-ring instance.
//!
//! A truncated simplicial object keeps one carrier per level `0 ..= D`
//! together with a contravariant table for every monotone map between
//! levels inside the truncation.  The module provides:
//!
//! * [`TruncSimpASet`] — validated levelwise carriers plus structure maps
//!   (identities, functoriality, equivariance all checked on assembly);
//! * standard complexes ([`make_std`]) — the simplex, its boundary, and its
//!   horns over the initial instance, with their inclusion maps;
//! * [`SimpMap`] — levelwise equivariant maps commuting with every
//!   structure map;
//! * [`levelwise_tensor`] / [`tensor_map`] — the levelwise tensor product
//!   and its functorial action on maps;
//! * [`simplicial_hom`] — the level-`n` carrier of the internal hom, as
//!   maps out of the tensor with the standard `n`-simplex;
//! * [`is_free_map`] — a deterministic bounded search for levelwise free
//!   generators of a map, with an exhaustion certificate;
//! * [`pushout_product`] — the corner map induced on the pushout of a pair
//!   of maps tensored against each other.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use crate::aset::{
    extend_scalars, f_pointed_set, free_extension, hom_maps, is_action_map, tensor,
    tensor_pushout, universal_extension, ASetCheckConfig, ASetObj, StabFlag, TermQuotient,
};
use crate::error::{Error, Result};
use crate::fincat::{enumerate_monotone, MonotoneMap};
use crate::genring::hom::{initial_hom, GRHom};
use crate::genring::instances::f_ring;
use crate::genring::RingRef;

/// Key for one structure table: the monotone map's source, target, and
/// graph.  The table it indexes carries elements of the *target-level*
/// carrier to the *source-level* carrier (structure maps are contravariant).
type MapKey = (usize, usize, Vec<usize>);

fn map_key(l: &MonotoneMap) -> MapKey {
    (l.source(), l.target(), l.table().to_vec())
}

// ---------------------------------------------------------------------------
// Truncated simplicial objects
// ---------------------------------------------------------------------------

/// A truncation-bounded simplicial object: carriers `M_0 ..= M_D` and one
/// table per monotone map `ℓ : [n] → [n′]` with `n, n′ ≤ D`, giving the
/// contravariant `ℓ* : M_{n′} → M_n`.
#[derive(Clone)]
pub struct TruncSimpASet {
    ring: RingRef,
    name: String,
    d: usize,
    levels: Vec<ASetObj>,
    maps: BTreeMap<MapKey, Vec<usize>>,
}

impl std::fmt::Debug for TruncSimpASet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TruncSimpASet")
            .field("name", &self.name)
            .field("ring", &self.ring.name())
            .field("d", &self.d)
            .field(
                "sizes",
                &self.levels.iter().map(|l| l.size()).collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl TruncSimpASet {
    /// Assemble a truncated simplicial object and validate it: every
    /// monotone map within the truncation has a table of the right shape;
    /// identity maps get identity tables; composition is contravariantly
    /// functorial; and every table is an action map at the given check
    /// bound.
    pub fn new(
        ring: &RingRef,
        name: &str,
        levels: Vec<ASetObj>,
        maps: BTreeMap<MapKey, Vec<usize>>,
        bound: usize,
    ) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::validation(
                "simp.levels",
                "at least level 0 is required",
            ));
        }
        let d = levels.len() - 1;
        for (idx, lv) in levels.iter().enumerate() {
            if lv.ring().name() != ring.name() {
                return Err(Error::validation(
                    format!("simp.levels[{idx}]"),
                    format!("ring {} differs from {}", lv.ring().name(), ring.name()),
                ));
            }
        }
        // Pre-enumerate the monotone maps between every pair of levels.
        let mut mono: Vec<Vec<Vec<MonotoneMap>>> = Vec::with_capacity(d + 1);
        for n in 0..=d {
            let mut row = Vec::with_capacity(d + 1);
            for np in 0..=d {
                row.push(enumerate_monotone(n, np)?);
            }
            mono.push(row);
        }
        let mut expected = 0usize;
        for n in 0..=d {
            for np in 0..=d {
                for l in &mono[n][np] {
                    expected += 1;
                    let tab = maps.get(&map_key(l)).ok_or_else(|| {
                        Error::validation(
                            "simp.maps",
                            format!("{name}: missing table for {l}"),
                        )
                    })?;
                    if tab.len() != levels[np].size() {
                        return Err(Error::validation(
                            "simp.maps",
                            format!(
                                "{name}: table for {l} has length {} instead of {}",
                                tab.len(),
                                levels[np].size()
                            ),
                        ));
                    }
                    if tab[0] != 0 {
                        return Err(Error::validation(
                            "simp.maps",
                            format!("{name}: table for {l} moves the basepoint"),
                        ));
                    }
                    if let Some(&bad) = tab.iter().find(|&&x| x >= levels[n].size()) {
                        return Err(Error::validation(
                            "simp.maps",
                            format!(
                                "{name}: table for {l} hits {bad} outside level {n}"
                            ),
                        ));
                    }
                }
            }
        }
        if maps.len() != expected {
            return Err(Error::validation(
                "simp.maps",
                format!(
                    "{name}: {} tables supplied, {expected} monotone maps in range",
                    maps.len()
                ),
            ));
        }
        // Identities act as identities.
        for n in 0..=d {
            let id = MonotoneMap::identity(n);
            let tab = &maps[&map_key(&id)];
            if tab.iter().enumerate().any(|(i, &x)| i != x) {
                return Err(Error::validation(
                    "simp.maps",
                    format!("{name}: identity table at level {n} is not the identity"),
                ));
            }
        }
        // Contravariant functoriality: for ℓ : [n] → [n′] and k : [n′] → [n″],
        // the table of k∘ℓ equals the table of ℓ applied after the table of k.
        for n in 0..=d {
            for np in 0..=d {
                for l in &mono[n][np] {
                    let tl = &maps[&map_key(l)];
                    for npp in 0..=d {
                        for k in &mono[np][npp] {
                            let tk = &maps[&map_key(k)];
                            let kl = k.compose(l)?;
                            let tkl = &maps[&map_key(&kl)];
                            for x in 0..levels[npp].size() {
                                if tkl[x] != tl[tk[x]] {
                                    return Err(Error::validation(
                                        "simp.maps",
                                        format!(
                                            "{name}: functoriality fails at {k} ∘ {l} on {x}"
                                        ),
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        // Every structure map is equivariant for the coefficient actions.
        for n in 0..=d {
            for np in 0..=d {
                for l in &mono[n][np] {
                    let tab = &maps[&map_key(l)];
                    if !is_action_map(&levels[np], &levels[n], tab, bound)? {
                        return Err(Error::validation(
                            "simp.maps",
                            format!("{name}: table for {l} is not an action map"),
                        ));
                    }
                }
            }
        }
        Ok(TruncSimpASet {
            ring: ring.clone(),
            name: name.to_string(),
            d,
            levels,
            maps,
        })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Truncation level: carriers exist for `0 ..= d()`.
    pub fn d(&self) -> usize {
        self.d
    }

    /// The level-`n` carrier.  Panics if `n` exceeds the truncation.
    pub fn level(&self, n: usize) -> &ASetObj {
        &self.levels[n]
    }

    /// The table of `ℓ*` for a monotone map within the truncation.
    pub fn structure_table(&self, l: &MonotoneMap) -> Result<&[usize]> {
        self.maps
            .get(&map_key(l))
            .map(|t| t.as_slice())
            .ok_or_else(|| {
                Error::validation(
                    "simp.maps",
                    format!("{}: {l} is outside the truncation {}", self.name, self.d),
                )
            })
    }

    pub fn renamed(&self, name: &str) -> Self {
        let mut out = self.clone();
        out.name = name.to_string();
        out
    }
}

/// The constant simplicial object on one carrier: every structure map is
/// the identity.
pub fn constant_simp(obj: &ASetObj, d: usize, bound: usize) -> Result<TruncSimpASet> {
    let mut maps = BTreeMap::new();
    for n in 0..=d {
        for np in 0..=d {
            for l in enumerate_monotone(n, np)? {
                maps.insert(map_key(&l), (0..obj.size()).collect());
            }
        }
    }
    TruncSimpASet::new(
        obj.ring(),
        &format!("const {}", obj.name()),
        vec![obj.clone(); d + 1],
        maps,
        bound,
    )
}

// ---------------------------------------------------------------------------
// Maps of simplicial objects
// ---------------------------------------------------------------------------

/// A map of truncated simplicial objects: one pointed equivariant table per
/// level, commuting with every structure map.
#[derive(Clone)]
pub struct SimpMap {
    pub name: String,
    source: TruncSimpASet,
    target: TruncSimpASet,
    tables: Vec<Vec<usize>>,
}

impl SimpMap {
    /// Validate and assemble a simplicial map.
    pub fn new(
        name: &str,
        source: &TruncSimpASet,
        target: &TruncSimpASet,
        tables: Vec<Vec<usize>>,
        bound: usize,
    ) -> Result<SimpMap> {
        if source.ring().name() != target.ring().name() {
            return Err(Error::Arity(format!(
                "simplicial map {name} needs one ring: {} vs {}",
                source.ring().name(),
                target.ring().name()
            )));
        }
        if source.d() != target.d() {
            return Err(Error::validation(
                "simpmap.levels",
                format!(
                    "{name}: truncations differ: {} vs {}",
                    source.d(),
                    target.d()
                ),
            ));
        }
        let d = source.d();
        if tables.len() != d + 1 {
            return Err(Error::validation(
                "simpmap.tables",
                format!("{name}: {} tables for {} levels", tables.len(), d + 1),
            ));
        }
        for k in 0..=d {
            let tab = &tables[k];
            if tab.len() != source.level(k).size() {
                return Err(Error::validation(
                    format!("simpmap.tables[{k}]"),
                    format!(
                        "{name}: length {} instead of {}",
                        tab.len(),
                        source.level(k).size()
                    ),
                ));
            }
            if tab[0] != 0 {
                return Err(Error::validation(
                    format!("simpmap.tables[{k}]"),
                    format!("{name}: basepoint is not preserved"),
                ));
            }
            if let Some(&bad) = tab.iter().find(|&&x| x >= target.level(k).size()) {
                return Err(Error::validation(
                    format!("simpmap.tables[{k}]"),
                    format!("{name}: value {bad} outside the target level"),
                ));
            }
            if !is_action_map(source.level(k), target.level(k), tab, bound)? {
                return Err(Error::validation(
                    format!("simpmap.tables[{k}]"),
                    format!("{name}: level {k} is not equivariant"),
                ));
            }
        }
        // Commutation with every structure map in the truncation.
        for n in 0..=d {
            for np in 0..=d {
                for l in enumerate_monotone(n, np)? {
                    let sl = source.structure_table(&l)?;
                    let tl = target.structure_table(&l)?;
                    for x in 0..source.level(np).size() {
                        if tables[n][sl[x]] != tl[tables[np][x]] {
                            return Err(Error::validation(
                                "simpmap.tables",
                                format!("{name}: does not commute with {l} at {x}"),
                            ));
                        }
                    }
                }
            }
        }
        Ok(SimpMap {
            name: name.to_string(),
            source: source.clone(),
            target: target.clone(),
            tables,
        })
    }

    /// The identity map of a simplicial object.
    pub fn identity(m: &TruncSimpASet) -> SimpMap {
        SimpMap {
            name: format!("id {}", m.name()),
            source: m.clone(),
            target: m.clone(),
            tables: (0..=m.d())
                .map(|k| (0..m.level(k).size()).collect())
                .collect(),
        }
    }

    pub fn source(&self) -> &TruncSimpASet {
        &self.source
    }

    pub fn target(&self) -> &TruncSimpASet {
        &self.target
    }

    /// The level-`k` table.  Panics if `k` exceeds the truncation.
    pub fn table(&self, k: usize) -> &[usize] {
        &self.tables[k]
    }

    /// Composition `self ∘ first`, revalidated on assembly.
    pub fn compose(&self, first: &SimpMap, bound: usize) -> Result<SimpMap> {
        if first.target.d() != self.source.d()
            || (0..=self.source.d())
                .any(|k| first.target.level(k).size() != self.source.level(k).size())
        {
            return Err(Error::validation(
                "simpmap.compose",
                format!("{} and {} do not chain", self.name, first.name),
            ));
        }
        let tables = (0..=first.source.d())
            .map(|k| {
                first.tables[k]
                    .iter()
                    .map(|&x| self.tables[k][x])
                    .collect()
            })
            .collect();
        SimpMap::new(
            &format!("{} ∘ {}", self.name, first.name),
            &first.source,
            &self.target,
            tables,
            bound,
        )
    }

    /// Whether every level table is a bijection.
    pub fn is_level_iso(&self) -> bool {
        (0..=self.source.d()).all(|k| {
            let tab = &self.tables[k];
            if tab.len() != self.target.level(k).size() {
                return false;
            }
            let mut seen = vec![false; tab.len()];
            tab.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
        })
    }
}

// ---------------------------------------------------------------------------
// Standard complexes
// ---------------------------------------------------------------------------

/// Which standard complex to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StdKind {
    /// The full standard simplex `Δ(n)₊`.
    Simplex,
    /// Its boundary `∂Δ(n)₊` (the non-surjective simplices).
    Boundary,
    /// The horn `Λ^k(n)₊`: simplices whose image misses some vertex
    /// other than `k`.
    Horn(usize),
}

/// A standard complex over the initial instance: the simplicial object,
/// the simplex dictionary behind each level, and the inclusion into the
/// full simplex (the identity for the simplex itself).
pub struct StdComplex {
    pub kind: StdKind,
    pub n: usize,
    object: TruncSimpASet,
    simplices: Vec<Vec<MonotoneMap>>,
    inclusion: SimpMap,
}

impl StdComplex {
    pub fn object(&self) -> &TruncSimpASet {
        &self.object
    }

    pub fn into_object(self) -> TruncSimpASet {
        self.object
    }

    pub fn inclusion(&self) -> &SimpMap {
        &self.inclusion
    }

    /// The simplices at level `k`, aligned with the nonzero carrier
    /// elements in order.
    pub fn simplices(&self, k: usize) -> &[MonotoneMap] {
        &self.simplices[k]
    }

    /// How many level-`k` simplices are nondegenerate (injective).
    pub fn nondegenerate(&self, k: usize) -> usize {
        self.simplices[k].iter().filter(|s| s.is_injective()).count()
    }
}

fn render_simplex(s: &MonotoneMap) -> String {
    let body: Vec<String> = s.table().iter().map(|x| x.to_string()).collect();
    format!("({})", body.join(","))
}

/// Build the carriers and structure tables of a simplex-subcomplex whose
/// level-`k` simplices are the given monotone maps `[k] → [n]` (closed
/// under precomposition).
fn complex_object(
    ring: &RingRef,
    name: &str,
    d: usize,
    lists: &[Vec<MonotoneMap>],
) -> Result<TruncSimpASet> {
    let mut levels = Vec::with_capacity(d + 1);
    let mut index: Vec<HashMap<Vec<usize>, usize>> = Vec::with_capacity(d + 1);
    for (k, list) in lists.iter().enumerate() {
        let mut labels = vec!["*".to_string()];
        let mut ix = HashMap::new();
        for (i, s) in list.iter().enumerate() {
            labels.push(render_simplex(s));
            ix.insert(s.table().to_vec(), i + 1);
        }
        levels.push(f_pointed_set(&format!("{name}_{k}"), labels)?);
        index.push(ix);
        let _ = k;
    }
    let mut maps = BTreeMap::new();
    for kk in 0..=d {
        for kp in 0..=d {
            for l in enumerate_monotone(kk, kp)? {
                let mut tab = Vec::with_capacity(lists[kp].len() + 1);
                tab.push(0);
                for s in &lists[kp] {
                    let sl = s.compose(&l)?;
                    let pos = index[kk].get(sl.table()).ok_or_else(|| {
                        Error::Structure(format!(
                            "{name}: simplex list is not closed under {l}"
                        ))
                    })?;
                    tab.push(*pos);
                }
                maps.insert(map_key(&l), tab);
            }
        }
    }
    TruncSimpASet::new(ring, name, levels, maps, 1)
}

/// Build a standard complex over the initial instance at truncation `d`.
pub fn make_std(kind: StdKind, n: usize, d: usize) -> Result<StdComplex> {
    if let StdKind::Horn(h) = kind {
        if n == 0 {
            return Err(Error::validation("std.horn", "horns need n ≥ 1"));
        }
        if h > n {
            return Err(Error::validation(
                "std.horn",
                format!("horn vertex {h} outside 0..={n}"),
            ));
        }
    }
    let ring: RingRef = Arc::new(f_ring());
    let member = |s: &MonotoneMap| -> bool {
        match kind {
            StdKind::Simplex => true,
            StdKind::Boundary => !s.is_surjective(),
            StdKind::Horn(h) => {
                let mut hit = vec![false; n + 1];
                for x in 0..=s.source() {
                    hit[s.apply(x)] = true;
                }
                (0..=n).any(|j| j != h && !hit[j])
            }
        }
    };
    let mut delta: Vec<Vec<MonotoneMap>> = Vec::with_capacity(d + 1);
    let mut lists: Vec<Vec<MonotoneMap>> = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let all = enumerate_monotone(k, n)?;
        lists.push(all.iter().filter(|s| member(s)).cloned().collect());
        delta.push(all);
    }
    let name = match kind {
        StdKind::Simplex => format!("Δ({n})₊"),
        StdKind::Boundary => format!("∂Δ({n})₊"),
        StdKind::Horn(h) => format!("Λ^{h}({n})₊"),
    };
    let object = complex_object(&ring, &name, d, &lists)?;
    let inclusion = if kind == StdKind::Simplex {
        SimpMap::identity(&object)
    } else {
        let delta_obj = complex_object(&ring, &format!("Δ({n})₊"), d, &delta)?;
        let mut tables = Vec::with_capacity(d + 1);
        for k in 0..=d {
            let mut ix = HashMap::new();
            for (i, s) in delta[k].iter().enumerate() {
                ix.insert(s.table().to_vec(), i + 1);
            }
            let mut tab = vec![0usize];
            for s in &lists[k] {
                tab.push(ix[s.table()]);
            }
            tables.push(tab);
        }
        SimpMap::new(
            &format!("{name} ⊂ Δ({n})₊"),
            &object,
            &delta_obj,
            tables,
            1,
        )?
    };
    Ok(StdComplex {
        kind,
        n,
        object,
        simplices: lists,
        inclusion,
    })
}

// ---------------------------------------------------------------------------
// Base change
// ---------------------------------------------------------------------------

/// Base change along `φ : B → A` applied levelwise; structure maps are
/// induced through the universal property of the levelwise extension.
pub fn base_change(
    phi: &GRHom,
    k: &TruncSimpASet,
    a_ring: &RingRef,
    cutoff: usize,
) -> Result<TruncSimpASet> {
    let d = k.d();
    let mut quots: Vec<TermQuotient> = Vec::with_capacity(d + 1);
    let mut levels: Vec<ASetObj> = Vec::with_capacity(d + 1);
    let mut gcls: Vec<Vec<usize>> = Vec::with_capacity(d + 1);
    for nn in 0..=d {
        let q = extend_scalars(phi, k.level(nn), a_ring, cutoff)?;
        if let StabFlag::Provisional(why) = q.stab() {
            return Err(Error::Provisional(format!(
                "base change of {} at level {nn} is provisional: {why}",
                k.name()
            )));
        }
        levels.push(q.to_aset()?);
        gcls.push(q.generator_classes()?);
        quots.push(q);
    }
    let mut maps = BTreeMap::new();
    for n in 0..=d {
        for np in 0..=d {
            for l in enumerate_monotone(n, np)? {
                let src_tab = k.structure_table(&l)?;
                let mut images = Vec::with_capacity(k.level(np).size() - 1);
                for x in 1..k.level(np).size() {
                    let xp = src_tab[x];
                    images.push(if xp == 0 { 0 } else { gcls[n][xp - 1] });
                }
                let table = universal_extension(&quots[np], &levels[n], &images)?;
                maps.insert(map_key(&l), table);
            }
        }
    }
    TruncSimpASet::new(
        a_ring,
        &format!("({})^* {}", phi.name, k.name()),
        levels,
        maps,
        1,
    )
}

// ---------------------------------------------------------------------------
// Levelwise tensor
// ---------------------------------------------------------------------------

/// Index of the tensor generator for the nonzero pair `(x, y)` when the
/// right factor's level has `nsz` elements.
fn tensor_digit(nsz: usize, x: usize, y: usize) -> usize {
    (x - 1) * (nsz - 1) + (y - 1)
}

/// Build the levelwise tensor together with its level quotients and the
/// class of each generator pair.
fn build_tensor(
    m: &TruncSimpASet,
    n: &TruncSimpASet,
    cutoff: usize,
) -> Result<(TruncSimpASet, Vec<TermQuotient>, Vec<Vec<usize>>)> {
    if m.ring().name() != n.ring().name() {
        return Err(Error::Arity(format!(
            "levelwise tensor needs one ring: {} vs {}",
            m.ring().name(),
            n.ring().name()
        )));
    }
    if m.d() != n.d() {
        return Err(Error::validation(
            "simp.tensor",
            format!("truncations differ: {} vs {}", m.d(), n.d()),
        ));
    }
    let d = m.d();
    let mut quots = Vec::with_capacity(d + 1);
    let mut levels = Vec::with_capacity(d + 1);
    let mut gcls = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let q = tensor(m.level(k), n.level(k), cutoff)?;
        if let StabFlag::Provisional(why) = q.stab() {
            return Err(Error::Provisional(format!(
                "levelwise tensor of {} and {} at level {k} is provisional: {why}",
                m.name(),
                n.name()
            )));
        }
        levels.push(q.to_aset()?);
        gcls.push(q.generator_classes()?);
        quots.push(q);
    }
    let mut maps = BTreeMap::new();
    for k in 0..=d {
        for kp in 0..=d {
            for l in enumerate_monotone(k, kp)? {
                let tm = m.structure_table(&l)?;
                let tn = n.structure_table(&l)?;
                let msz = m.level(kp).size();
                let nsz = n.level(kp).size();
                let mut images = Vec::with_capacity((msz - 1) * (nsz - 1));
                for x in 1..msz {
                    for y in 1..nsz {
                        let (xp, yp) = (tm[x], tn[y]);
                        images.push(if xp == 0 || yp == 0 {
                            0
                        } else {
                            gcls[k][tensor_digit(n.level(k).size(), xp, yp)]
                        });
                    }
                }
                let table = universal_extension(&quots[kp], &levels[k], &images)?;
                maps.insert(map_key(&l), table);
            }
        }
    }
    let obj = TruncSimpASet::new(
        m.ring(),
        &format!("{} ⊗ {}", m.name(), n.name()),
        levels,
        maps,
        1,
    )?;
    Ok((obj, quots, gcls))
}

/// The levelwise tensor of two truncated simplicial objects.
pub fn levelwise_tensor(
    m: &TruncSimpASet,
    n: &TruncSimpASet,
    cutoff: usize,
) -> Result<TruncSimpASet> {
    build_tensor(m, n, cutoff).map(|t| t.0)
}

/// The tensor of two simplicial maps, acting on generator pairs levelwise.
pub fn tensor_map(f: &SimpMap, g: &SimpMap, cutoff: usize) -> Result<SimpMap> {
    let (src, src_q, _) = build_tensor(f.source(), g.source(), cutoff)?;
    let (tgt, _, tgt_g) = build_tensor(f.target(), g.target(), cutoff)?;
    let d = src.d();
    let mut tables = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let msz = f.source().level(k).size();
        let nsz = g.source().level(k).size();
        let mut images = Vec::with_capacity((msz - 1) * (nsz - 1));
        for x in 1..msz {
            for y in 1..nsz {
                let (fx, gy) = (f.table(k)[x], g.table(k)[y]);
                images.push(if fx == 0 || gy == 0 {
                    0
                } else {
                    tgt_g[k][tensor_digit(g.target().level(k).size(), fx, gy)]
                });
            }
        }
        tables.push(universal_extension(&src_q[k], tgt.level(k), &images)?);
    }
    SimpMap::new(
        &format!("{} ⊗ {}", f.name, g.name),
        &src,
        &tgt,
        tables,
        1,
    )
}

// ---------------------------------------------------------------------------
// Simplicial maps and the internal hom
// ---------------------------------------------------------------------------

/// Enumerate every simplicial map `M → N` as levelwise tables, depth-first
/// with levels ascending and levelwise candidates in enumeration order, so
/// the zero map comes first and the order is deterministic.
pub fn simp_maps(
    m: &TruncSimpASet,
    n: &TruncSimpASet,
    cfg: &ASetCheckConfig,
) -> Result<Vec<Vec<Vec<usize>>>> {
    if m.ring().name() != n.ring().name() {
        return Err(Error::Arity(format!(
            "simplicial hom needs one ring: {} vs {}",
            m.ring().name(),
            n.ring().name()
        )));
    }
    if m.d() != n.d() {
        return Err(Error::validation(
            "simp.hom",
            format!("truncations differ: {} vs {}", m.d(), n.d()),
        ));
    }
    let d = m.d();
    let mut cands: Vec<Vec<Vec<usize>>> = Vec::with_capacity(d + 1);
    for k in 0..=d {
        cands.push(hom_maps(m.level(k), n.level(k), cfg)?);
    }
    let mut space: u128 = 1;
    for c in &cands {
        space = space.saturating_mul(c.len() as u128);
    }
    if space > cfg.search_budget as u128 {
        return Err(Error::Resource(format!(
            "simplicial hom search space {space} exceeds budget {}",
            cfg.search_budget
        )));
    }
    // Monotone maps between every pair of levels, for the commutation check.
    let mut mono: Vec<Vec<Vec<MonotoneMap>>> = Vec::with_capacity(d + 1);
    for a in 0..=d {
        let mut row = Vec::with_capacity(d + 1);
        for b in 0..=d {
            row.push(enumerate_monotone(a, b)?);
        }
        mono.push(row);
    }
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(d + 1);
    dfs_simp_maps(m, n, &cands, &mono, &mut chosen, &mut out)?;
    Ok(out)
}

fn dfs_simp_maps(
    m: &TruncSimpASet,
    n: &TruncSimpASet,
    cands: &[Vec<Vec<usize>>],
    mono: &[Vec<Vec<MonotoneMap>>],
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<Vec<usize>>>,
) -> Result<()> {
    let d = m.d();
    let k = chosen.len();
    if k > d {
        out.push(
            chosen
                .iter()
                .enumerate()
                .map(|(lvl, &ci)| cands[lvl][ci].clone())
                .collect(),
        );
        return Ok(());
    }
    'cand: for ci in 0..cands[k].len() {
        let fk = &cands[k][ci];
        // Check commutation against every already-fixed level (including k
        // itself, for the non-identity monotone endomorphisms).
        for j in 0..=k {
            let fj = if j == k { fk } else { &cands[j][chosen[j]] };
            for l in &mono[j][k] {
                let sm = m.structure_table(l)?;
                let tn = n.structure_table(l)?;
                for x in 0..m.level(k).size() {
                    if fj[sm[x]] != tn[fk[x]] {
                        continue 'cand;
                    }
                }
            }
            if j < k {
                for l in &mono[k][j] {
                    let sm = m.structure_table(l)?;
                    let tn = n.structure_table(l)?;
                    for x in 0..m.level(j).size() {
                        if fk[sm[x]] != tn[fj[x]] {
                            continue 'cand;
                        }
                    }
                }
            }
        }
        chosen.push(ci);
        dfs_simp_maps(m, n, cands, mono, chosen, out)?;
        chosen.pop();
    }
    Ok(())
}

/// The level-`n` carrier of the simplicial hom object: simplicial maps
/// `M ⊗ K(n) → N` for the base-changed standard `n`-simplex `K(n)`, with
/// the pointwise coefficient action.  Only levels with `2·n ≤ D` are
/// inside the truncation-stable range; other levels are refused.
pub fn simplicial_hom(
    m: &TruncSimpASet,
    n_obj: &TruncSimpASet,
    level: usize,
    cutoff: usize,
    cfg: &ASetCheckConfig,
) -> Result<ASetObj> {
    let d = m.d();
    if n_obj.d() != d {
        return Err(Error::validation(
            "simp.hom",
            format!("truncations differ: {} vs {}", d, n_obj.d()),
        ));
    }
    if 2 * level > d {
        return Err(Error::validation(
            "simp.hom.level",
            format!("level {level} outside the stable range 2·level ≤ {d}"),
        ));
    }
    let ring = m.ring().clone();
    let delta = make_std(StdKind::Simplex, level, d)?.into_object();
    let k_obj = if ring.name() == "F" {
        delta
    } else {
        let phi = initial_hom(&ring);
        base_change(&phi, &delta, &ring, cutoff + 1)?
    };
    let src = levelwise_tensor(m, &k_obj, cutoff)?;
    let maps = simp_maps(&src, n_obj, cfg)?;
    let index: HashMap<Vec<Vec<usize>>, usize> = maps
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i))
        .collect();
    let labels: Vec<String> = (0..maps.len()).map(|i| format!("f{i}")).collect();
    let n_levels: Vec<ASetObj> = (0..=d).map(|k| n_obj.level(k).clone()).collect();
    let src_sizes: Vec<usize> = (0..=d).map(|k| src.level(k).size()).collect();
    let maps = Arc::new(maps);
    let index = Arc::new(index);
    let name = format!("Hom∇({}, {})_{level}", m.name(), n_obj.name());
    ASetObj::new(&ring, &name, labels, move |b, v, dd| {
        let mut acted: Vec<Vec<usize>> = Vec::with_capacity(d + 1);
        for k in 0..=d {
            let mut t = vec![0usize; src_sizes[k]];
            for (x, slot) in t.iter_mut().enumerate() {
                let tuple: Vec<usize> = v.iter().map(|&mi| maps[mi][k][x]).collect();
                *slot = n_levels[k].act(b, &tuple, dd)?;
            }
            acted.push(t);
        }
        index.get(&acted).copied()
    })
}

// ---------------------------------------------------------------------------
// Free maps
// ---------------------------------------------------------------------------

/// Outcome of the levelwise free-generator search for a simplicial map.
#[derive(Clone, Debug)]
pub struct FreeWitness {
    /// Whether generators were found at every level.
    pub free: bool,
    /// The witnessing generator sets, one per level (empty when not free).
    pub generators: Vec<Vec<usize>>,
    /// When not free: whether the whole candidate space was examined
    /// (`true`) or the budget ran out first (`false`).
    pub exhausted: bool,
}

/// Decide whether `f` is a free map: search for level generator sets
/// `V_n` in the target, closed under the degeneracy images of lower
/// levels, such that the source level extended freely by `V_n` maps
/// bijectively onto the target level.  Deterministic: levels ascend,
/// candidate sets by size then enumeration order; the first witness wins.
pub fn is_free_map(f: &SimpMap, cutoff: usize, budget: u64) -> Result<FreeWitness> {
    let mut chosen: Vec<Vec<usize>> = Vec::new();
    let mut tried: u64 = 0;
    let mut hit_budget = false;
    let found = dfs_free(f, cutoff, budget, &mut tried, &mut hit_budget, &mut chosen)?;
    if found {
        Ok(FreeWitness {
            free: true,
            generators: chosen,
            exhausted: false,
        })
    } else {
        Ok(FreeWitness {
            free: false,
            generators: vec![],
            exhausted: !hit_budget,
        })
    }
}

fn dfs_free(
    f: &SimpMap,
    cutoff: usize,
    budget: u64,
    tried: &mut u64,
    hit_budget: &mut bool,
    chosen: &mut Vec<Vec<usize>>,
) -> Result<bool> {
    let d = f.source().d();
    let n = chosen.len();
    if n > d {
        return Ok(true);
    }
    // Degeneracy closure: the images of already-chosen generators under
    // every surjective monotone map into a lower level must be generators.
    let mut required: HashSet<usize> = HashSet::new();
    for np in 0..n {
        for l in enumerate_monotone(n, np)? {
            if !l.is_surjective() {
                continue;
            }
            let tab = f.target().structure_table(&l)?;
            for &v in &chosen[np] {
                required.insert(tab[v]);
            }
        }
    }
    if required.contains(&0) {
        return Ok(false);
    }
    let nonzero = f.target().level(n).size() - 1;
    if nonzero > 20 {
        return Err(Error::Resource(format!(
            "free-map search level {n} has {nonzero} candidate elements"
        )));
    }
    let req_mask: u32 = required.iter().map(|&v| 1u32 << (v - 1)).sum();
    let mut masks: Vec<u32> = (0..(1u32 << nonzero))
        .filter(|mk| mk & req_mask == req_mask)
        .collect();
    masks.sort_by_key(|mk| (mk.count_ones(), *mk));
    for mk in masks {
        *tried += 1;
        if *tried > budget {
            *hit_budget = true;
            return Ok(false);
        }
        let v: Vec<usize> = (0..nonzero).filter(|i| mk >> i & 1 == 1).map(|i| i + 1).collect();
        if level_free_check(f, n, &v, cutoff)? {
            chosen.push(v);
            if dfs_free(f, cutoff, budget, tried, hit_budget, chosen)? {
                return Ok(true);
            }
            chosen.pop();
            if *hit_budget {
                return Ok(false);
            }
        }
    }
    Ok(false)
}

/// Whether the canonical map out of `source_n` extended freely by the
/// target elements `v` is a bijection onto `target_n`.
fn level_free_check(f: &SimpMap, n: usize, v: &[usize], cutoff: usize) -> Result<bool> {
    let m_n = f.source().level(n);
    let n_n = f.target().level(n);
    let labels: Vec<String> = v
        .iter()
        .map(|&x| format!("⟦{}⟧", n_n.label(x)))
        .collect();
    let label_refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    let q = free_extension(m_n, &label_refs, cutoff)?;
    if !q.is_stable() {
        return Err(Error::Provisional(format!(
            "free-map check at level {n} is provisional for {}",
            f.name
        )));
    }
    if q.classes() != n_n.size() {
        return Ok(false);
    }
    let mut images: Vec<usize> = Vec::with_capacity(m_n.size() - 1 + v.len());
    for x in 1..m_n.size() {
        images.push(f.table(n)[x]);
    }
    images.extend_from_slice(v);
    let tab = universal_extension(&q, n_n, &images)?;
    let mut seen = vec![false; n_n.size()];
    Ok(tab.iter().all(|&x| !std::mem::replace(&mut seen[x], true)))
}

// ---------------------------------------------------------------------------
// The corner map
// ---------------------------------------------------------------------------

/// The corner map of `i : N → N′` and `j : M → M′`: the induced map from
/// the pushout of `N⊗M′ ← N⊗M → N′⊗M` to `N′⊗M′`.  The returned map's
/// source is the pushout object.  Each pushout level is presented in one
/// step over the primitive carriers, so every ground relation can be
/// evaluated without chaining through intermediate quotients.
pub fn pushout_product(i: &SimpMap, j: &SimpMap, cutoff: usize) -> Result<SimpMap> {
    if i.source().ring().name() != j.source().ring().name() {
        return Err(Error::Arity(format!(
            "corner map needs one ring: {} vs {}",
            i.source().ring().name(),
            j.source().ring().name()
        )));
    }
    if i.source().d() != j.source().d() {
        return Err(Error::validation(
            "simp.corner",
            format!("truncations differ: {} vs {}", i.source().d(), j.source().d()),
        ));
    }
    let d = i.source().d();
    let ring = i.source().ring().clone();
    let (npmp, _, npmp_g) = build_tensor(i.target(), j.target(), cutoff)?;

    // Pushout levels, with the tensor blocks glued at the term level.
    let mut p_q: Vec<TermQuotient> = Vec::with_capacity(d + 1);
    let mut p_levels: Vec<ASetObj> = Vec::with_capacity(d + 1);
    let mut p_g: Vec<Vec<usize>> = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let q = tensor_pushout(
            i.source().level(k),
            j.target().level(k),
            i.target().level(k),
            j.source().level(k),
            i.table(k),
            j.table(k),
            cutoff,
        )?;
        if let StabFlag::Provisional(why) = q.stab() {
            return Err(Error::Provisional(format!(
                "corner pushout at level {k} is provisional: {why}"
            )));
        }
        p_levels.push(q.to_aset()?);
        p_g.push(q.generator_classes()?);
        p_q.push(q);
    }

    // Structure maps act blockwise through the factors' own tables.
    let mut p_maps = BTreeMap::new();
    for k in 0..=d {
        for kp in 0..=d {
            for l in enumerate_monotone(k, kp)? {
                let tn = i.source().structure_table(&l)?;
                let tnp = i.target().structure_table(&l)?;
                let tm = j.source().structure_table(&l)?;
                let tmp = j.target().structure_table(&l)?;
                let mpsz_k = j.target().level(k).size();
                let msz_k = j.source().level(k).size();
                let left_k = (i.source().level(k).size() - 1) * (mpsz_k - 1);
                let mut images = Vec::new();
                for x in 1..i.source().level(kp).size() {
                    for w in 1..j.target().level(kp).size() {
                        let (xp, wp) = (tn[x], tmp[w]);
                        images.push(if xp == 0 || wp == 0 {
                            0
                        } else {
                            p_g[k][tensor_digit(mpsz_k, xp, wp)]
                        });
                    }
                }
                for u in 1..i.target().level(kp).size() {
                    for y in 1..j.source().level(kp).size() {
                        let (up, yp) = (tnp[u], tm[y]);
                        images.push(if up == 0 || yp == 0 {
                            0
                        } else {
                            p_g[k][left_k + tensor_digit(msz_k, up, yp)]
                        });
                    }
                }
                let table = universal_extension(&p_q[kp], &p_levels[k], &images)?;
                p_maps.insert(map_key(&l), table);
            }
        }
    }
    let p_obj = TruncSimpASet::new(
        &ring,
        &format!(
            "({} ⊗ {}) ∪ ({} ⊗ {})",
            i.source().name(),
            j.target().name(),
            i.target().name(),
            j.source().name()
        ),
        p_levels,
        p_maps,
        1,
    )?;

    // The corner into N′⊗M′: i⊗id on the left block, id⊗j on the right.
    let mut corner_tabs: Vec<Vec<usize>> = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let mpsz = j.target().level(k).size();
        let mut images = Vec::new();
        for x in 1..i.source().level(k).size() {
            for w in 1..mpsz {
                let xi = i.table(k)[x];
                images.push(if xi == 0 {
                    0
                } else {
                    npmp_g[k][tensor_digit(mpsz, xi, w)]
                });
            }
        }
        for u in 1..i.target().level(k).size() {
            for y in 1..j.source().level(k).size() {
                let yj = j.table(k)[y];
                images.push(if yj == 0 {
                    0
                } else {
                    npmp_g[k][tensor_digit(mpsz, u, yj)]
                });
            }
        }
        corner_tabs.push(universal_extension(&p_q[k], npmp.level(k), &images)?);
    }
    SimpMap::new(
        &format!("{} □ {}", i.name, j.name),
        &p_obj,
        &npmp,
        corner_tabs,
        1,
    )
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aset::{check_aset_axioms, ring_carrier};
    use crate::genring::instances::zmod;

    fn fr() -> RingRef {
        Arc::new(f_ring())
    }

    fn pointed(name: &str, k: usize) -> ASetObj {
        let mut labels = vec!["*".to_string()];
        for i in 0..k {
            labels.push(format!("{name}{i}"));
        }
        f_pointed_set(name, labels).unwrap()
    }

    fn cfg() -> ASetCheckConfig {
        ASetCheckConfig::default()
    }

    #[test]
    fn constant_objects_validate_and_compose_identities() {
        let x = pointed("x", 2);
        let c = constant_simp(&x, 2, 2).unwrap();
        assert_eq!(c.d(), 2);
        for k in 0..=2 {
            assert_eq!(c.level(k).size(), 3);
        }
        let id = SimpMap::identity(&c);
        assert!(id.is_level_iso());
        let twice = id.compose(&id, 1).unwrap();
        for k in 0..=2 {
            assert_eq!(twice.table(k), id.table(k));
        }
    }

    #[test]
    fn standard_simplices_count_their_simplices() {
        // Δ(1)₊ at truncation 2: binomial level sizes, one nondegenerate
        // edge and two vertices.
        let d1 = make_std(StdKind::Simplex, 1, 2).unwrap();
        let sizes: Vec<usize> = (0..=2).map(|k| d1.object().level(k).size()).collect();
        assert_eq!(sizes, vec![3, 4, 5]);
        assert_eq!(d1.nondegenerate(0), 2);
        assert_eq!(d1.nondegenerate(1), 1);
        assert_eq!(d1.nondegenerate(2), 0);
        // Δ(2)₊ at truncation 2.
        let d2 = make_std(StdKind::Simplex, 2, 2).unwrap();
        let sizes: Vec<usize> = (0..=2).map(|k| d2.object().level(k).size()).collect();
        assert_eq!(sizes, vec![4, 7, 11]);
        assert_eq!(d2.nondegenerate(0), 3);
        assert_eq!(d2.nondegenerate(1), 3);
        assert_eq!(d2.nondegenerate(2), 1);
        // A deeper truncation still validates.
        let deep = make_std(StdKind::Simplex, 1, 3).unwrap();
        let sizes: Vec<usize> = (0..=3).map(|k| deep.object().level(k).size()).collect();
        assert_eq!(sizes, vec![3, 4, 5, 6]);
    }

    #[test]
    fn boundaries_and_horns_drop_the_right_faces() {
        // ∂Δ(2)₊: three vertices, three nondegenerate edges, no 2-simplex.
        let b2 = make_std(StdKind::Boundary, 2, 2).unwrap();
        assert_eq!(b2.nondegenerate(0), 3);
        assert_eq!(b2.nondegenerate(1), 3);
        assert_eq!(b2.nondegenerate(2), 0);
        let sizes: Vec<usize> = (0..=2).map(|k| b2.object().level(k).size()).collect();
        assert_eq!(sizes, vec![4, 7, 10]);
        // Λ^0(2)₊ loses exactly the edge opposite vertex 0 and its
        // degeneracies.
        let h02 = make_std(StdKind::Horn(0), 2, 2).unwrap();
        assert_eq!(h02.nondegenerate(0), 3);
        assert_eq!(h02.nondegenerate(1), 2);
        assert_eq!(h02.nondegenerate(2), 0);
        let sizes: Vec<usize> = (0..=2).map(|k| h02.object().level(k).size()).collect();
        assert_eq!(sizes, vec![4, 6, 8]);
        assert!(h02
            .simplices(1)
            .iter()
            .all(|s| s.table() != [1, 2]));
        // The inclusions validate and are levelwise injective.
        for incl in [b2.inclusion(), h02.inclusion()] {
            for k in 0..=2 {
                let tab = incl.table(k);
                let mut seen = HashSet::new();
                assert!(tab.iter().all(|&x| seen.insert(x)));
            }
        }
        // Horns of the point are refused.
        assert!(make_std(StdKind::Horn(0), 0, 1).is_err());
        assert!(make_std(StdKind::Horn(3), 2, 1).is_err());
    }

    #[test]
    fn forged_structure_tables_are_rejected() {
        let x = pointed("x", 1);
        let mut maps = BTreeMap::new();
        for n in 0..=1usize {
            for np in 0..=1usize {
                for l in enumerate_monotone(n, np).unwrap() {
                    maps.insert(map_key(&l), vec![0, 1]);
                }
            }
        }
        let ring = fr();
        let levels = vec![x.clone(), x.clone()];
        assert!(TruncSimpASet::new(&ring, "ok", levels.clone(), maps.clone(), 1).is_ok());
        // Crushing one face breaks functoriality with its section.
        maps.insert((0, 1, vec![0]), vec![0, 0]);
        let err = TruncSimpASet::new(&ring, "bad", levels.clone(), maps.clone(), 1)
            .unwrap_err();
        assert!(err.to_string().contains("functoriality"));
        // A missing table is caught.
        maps.remove(&(0, 1, vec![0]));
        let err = TruncSimpASet::new(&ring, "bad", levels, maps, 1).unwrap_err();
        assert!(err.to_string().contains("missing"));
    }

    #[test]
    fn levelwise_tensor_matches_smash_counts() {
        let d1 = make_std(StdKind::Simplex, 1, 2).unwrap().into_object();
        let sq = levelwise_tensor(&d1, &d1, 1).unwrap();
        // Smash products levelwise: (p−1)(q−1)+1.
        let sizes: Vec<usize> = (0..=2).map(|k| sq.level(k).size()).collect();
        assert_eq!(sizes, vec![5, 10, 17]);
        // The unit is the constant carrier.
        let unit = constant_simp(&ring_carrier(&fr()).unwrap(), 2, 1).unwrap();
        let ud = levelwise_tensor(&unit, &d1, 1).unwrap();
        let sizes: Vec<usize> = (0..=2).map(|k| ud.level(k).size()).collect();
        assert_eq!(sizes, vec![3, 4, 5]);
        // Symmetry of cardinalities.
        let b2 = make_std(StdKind::Boundary, 2, 2).unwrap().into_object();
        let lr = levelwise_tensor(&d1, &b2, 1).unwrap();
        let rl = levelwise_tensor(&b2, &d1, 1).unwrap();
        for k in 0..=2 {
            assert_eq!(lr.level(k).size(), rl.level(k).size());
        }
    }

    #[test]
    fn base_change_frees_the_levels() {
        let z2: RingRef = Arc::new(zmod(2).unwrap());
        let d1 = make_std(StdKind::Simplex, 1, 1).unwrap().into_object();
        let phi = initial_hom(&z2);
        let over = base_change(&phi, &d1, &z2, 3).unwrap();
        // Free modules on the nonzero simplices: sizes 2^(s−1).
        assert_eq!(over.level(0).size(), 4);
        assert_eq!(over.level(1).size(), 8);
        assert_eq!(over.ring().name(), "Z/2");
    }

    #[test]
    fn hom_out_of_the_point_recovers_the_target_vertices() {
        let k = make_std(StdKind::Boundary, 2, 2).unwrap().into_object();
        let d0 = make_std(StdKind::Simplex, 0, 2).unwrap().into_object();
        let h = simplicial_hom(&d0, &k, 0, 1, &cfg()).unwrap();
        assert_eq!(h.size(), k.level(0).size());
        let report = check_aset_axioms(&h, &cfg()).unwrap();
        assert!(report.passed());
        // The unit constant sees the same vertices.
        let unit = constant_simp(&ring_carrier(&fr()).unwrap(), 2, 1).unwrap();
        let hu = simplicial_hom(&unit, &k, 0, 1, &cfg()).unwrap();
        assert_eq!(hu.size(), k.level(0).size());
    }

    #[test]
    fn hom_counts_match_plain_maps_for_constants() {
        let x = pointed("x", 2);
        let y = pointed("y", 2);
        let cx = constant_simp(&x, 2, 1).unwrap();
        let cy = constant_simp(&y, 2, 1).unwrap();
        let h = simplicial_hom(&cx, &cy, 0, 1, &cfg()).unwrap();
        let plain = hom_maps(&x, &y, &cfg()).unwrap();
        assert_eq!(h.size(), plain.len());
        assert_eq!(h.size(), 9);
    }

    #[test]
    fn hom_levels_outside_the_stable_range_are_refused() {
        let d0 = make_std(StdKind::Simplex, 0, 2).unwrap().into_object();
        let err = simplicial_hom(&d0, &d0, 2, 1, &cfg()).unwrap_err();
        assert!(err.to_string().contains("stable range"));
    }

    #[test]
    fn simp_maps_enumerate_with_the_zero_map_first() {
        let d1 = make_std(StdKind::Simplex, 1, 2).unwrap().into_object();
        let maps = simp_maps(&d1, &d1, &cfg()).unwrap();
        assert!(!maps.is_empty());
        assert!(maps[0]
            .iter()
            .all(|tab| tab.iter().all(|&x| x == 0)));
        // The identity tables appear among the maps.
        let idt: Vec<Vec<usize>> = (0..=2)
            .map(|k| (0..d1.level(k).size()).collect())
            .collect();
        assert!(maps.contains(&idt));
        // Simplicial maps Δ(1)₊ → Δ(1)₊ are determined by a monotone
        // endpoint choice: as many as order-preserving vertex pairs plus
        // the collapse, i.e. |Δ(1,1)| + 1.
        assert_eq!(maps.len(), 4);
    }

    #[test]
    fn identity_maps_are_free_with_no_generators() {
        let b2 = make_std(StdKind::Boundary, 2, 2).unwrap().into_object();
        let id = SimpMap::identity(&b2);
        let w = is_free_map(&id, 2, 10_000).unwrap();
        assert!(w.free);
        assert!(w.generators.iter().all(|v| v.is_empty()));
    }

    #[test]
    fn the_point_is_free_over_the_zero_object() {
        let zero = constant_simp(&pointed("z", 0), 2, 1).unwrap();
        let d0 = make_std(StdKind::Simplex, 0, 2).unwrap().into_object();
        let tables = (0..=2).map(|_| vec![0]).collect();
        let f = SimpMap::new("0 → Δ(0)₊", &zero, &d0, tables, 1).unwrap();
        let w = is_free_map(&f, 2, 10_000).unwrap();
        assert!(w.free);
        assert_eq!(w.generators, vec![vec![1], vec![1], vec![1]]);
    }

    #[test]
    fn boundary_inclusions_are_free_on_the_missing_simplices() {
        let b1 = make_std(StdKind::Boundary, 1, 2).unwrap();
        let w = is_free_map(b1.inclusion(), 2, 100_000).unwrap();
        assert!(w.free);
        assert!(w.generators[0].is_empty());
        // Level 1 adds the nondegenerate edge (0,1), which sits after
        // (0,0) in enumeration order.
        assert_eq!(w.generators[1], vec![2]);
        // Level 2 adds its two degeneracies.
        assert_eq!(w.generators[2].len(), 2);
    }

    #[test]
    fn collapse_maps_are_certified_not_free() {
        let x = pointed("x", 1);
        let c = constant_simp(&x, 1, 1).unwrap();
        let tables = (0..=1).map(|k| vec![0; c.level(k).size()]).collect();
        let f = SimpMap::new("crush", &c, &c, tables, 1).unwrap();
        let w = is_free_map(&f, 2, 10_000).unwrap();
        assert!(!w.free);
        assert!(w.exhausted);
        // A tiny budget is reported as such.
        let w = is_free_map(&f, 2, 1).unwrap();
        assert!(!w.free);
        assert!(!w.exhausted);
    }

    #[test]
    fn tensor_map_of_identities_is_the_identity() {
        let d1 = make_std(StdKind::Simplex, 1, 2).unwrap().into_object();
        let b1 = make_std(StdKind::Boundary, 1, 2).unwrap().into_object();
        let f = tensor_map(&SimpMap::identity(&d1), &SimpMap::identity(&b1), 1).unwrap();
        assert!(f.is_level_iso());
        for k in 0..=2 {
            let tab = f.table(k);
            assert!(tab.iter().enumerate().all(|(i, &x)| i == x));
        }
    }

    #[test]
    fn degenerate_corners_reduce_to_known_maps() {
        let b1 = make_std(StdKind::Boundary, 1, 2).unwrap();
        let d1 = make_std(StdKind::Simplex, 1, 2).unwrap().into_object();
        // Against a genuine identity the pushout swallows the left leg and
        // the corner is invertible.
        let j = SimpMap::identity(&d1);
        let corner = pushout_product(b1.inclusion(), &j, 1).unwrap();
        let npm = levelwise_tensor(b1.inclusion().target(), &d1, 1).unwrap();
        for k in 0..=2 {
            assert_eq!(corner.source().level(k).size(), npm.level(k).size());
        }
        assert!(corner.is_level_iso());
        // Against the initial map 0 → M the corner is the tensor of the
        // first map with the identity of M.
        let zero = constant_simp(&pointed("z", 0), 2, 1).unwrap();
        let j0 = SimpMap::new(
            "0 → Δ(1)₊",
            &zero,
            &d1,
            (0..=2).map(|_| vec![0]).collect(),
            1,
        )
        .unwrap();
        let corner = pushout_product(b1.inclusion(), &j0, 1).unwrap();
        let tm = tensor_map(b1.inclusion(), &SimpMap::identity(&d1), 1).unwrap();
        for k in 0..=2 {
            assert_eq!(
                corner.source().level(k).size(),
                tm.source().level(k).size()
            );
            let img = |tab: &[usize], sz: usize| {
                let mut hit = vec![false; sz];
                for &x in tab {
                    hit[x] = true;
                }
                hit
            };
            assert_eq!(
                img(corner.table(k), corner.target().level(k).size()),
                img(tm.table(k), tm.target().level(k).size())
            );
        }
        assert!(!corner.is_level_iso());
    }

    #[test]
    fn the_boundary_corner_is_free_on_the_new_squares() {
        let b1 = make_std(StdKind::Boundary, 1, 2).unwrap();
        // Build the pushout one level deeper than the freeness check needs,
        // so the quotient-backed actions stay defined through its probes.
        let corner = pushout_product(b1.inclusion(), b1.inclusion(), 2).unwrap();
        // Level sizes of the corner source: the two halves glued over the
        // shared boundary square.
        let sizes: Vec<usize> = (0..=2)
            .map(|k| corner.source().level(k).size())
            .collect();
        assert_eq!(sizes, vec![5, 9, 13]);
        let tgt: Vec<usize> = (0..=2)
            .map(|k| corner.target().level(k).size())
            .collect();
        assert_eq!(tgt, vec![5, 10, 17]);
        let w = is_free_map(&corner, 1, 1_000_000).unwrap();
        assert!(w.free);
        assert!(w.generators[0].is_empty());
        assert_eq!(w.generators[1].len(), 1);
        assert_eq!(w.generators[2].len(), 4);
    }

    #[test]
    fn corners_of_point_inclusions_are_free_on_one_product_generator() {
        let zero = constant_simp(&pointed("z", 0), 2, 1).unwrap();
        let d0 = make_std(StdKind::Simplex, 0, 2).unwrap().into_object();
        let i = SimpMap::new(
            "0 → Δ(0)₊",
            &zero,
            &d0,
            (0..=2).map(|_| vec![0]).collect(),
            1,
        )
        .unwrap();
        let corner = pushout_product(&i, &i, 2).unwrap();
        for k in 0..=2 {
            assert_eq!(corner.source().level(k).size(), 1);
            assert_eq!(corner.target().level(k).size(), 2);
        }
        let w = is_free_map(&corner, 1, 10_000).unwrap();
        assert!(w.free);
        assert_eq!(w.generators, vec![vec![1], vec![1], vec![1]]);
    }

    #[test]
    fn free_maps_compose_to_free_maps() {
        let b1 = make_std(StdKind::Boundary, 1, 2).unwrap();
        let zero = constant_simp(&pointed("z", 0), 2, 1).unwrap();
        let to_boundary = SimpMap::new(
            "0 → ∂Δ(1)₊",
            &zero,
            b1.object(),
            (0..=2).map(|_| vec![0]).collect(),
            1,
        )
        .unwrap();
        let composite = b1.inclusion().compose(&to_boundary, 1).unwrap();
        assert!(is_free_map(&to_boundary, 2, 100_000).unwrap().free);
        assert!(is_free_map(b1.inclusion(), 2, 100_000).unwrap().free);
        let w = is_free_map(&composite, 2, 100_000).unwrap();
        assert!(w.free);
        // Everything in the target is newly adjoined.
        for k in 0..=2 {
            assert_eq!(
                w.generators[k].len(),
                composite.target().level(k).size() - 1
            );
        }
    }

    #[test]
    fn simplicial_hom_over_a_modular_instance_stays_consistent() {
        let z2: RingRef = Arc::new(zmod(2).unwrap());
        let m2 = crate::aset::cyclic_module(&z2, 2).unwrap();
        let cm = constant_simp(&m2, 2, 1).unwrap();
        let h = simplicial_hom(&cm, &cm, 0, 2, &cfg()).unwrap();
        // Module maps Z/2 → Z/2 at level zero of a constant object.
        let plain = hom_maps(&m2, &m2, &cfg()).unwrap();
        assert_eq!(h.size(), plain.len());
        let report = check_aset_axioms(&h, &cfg()).unwrap();
        assert!(report.passed());
    }
}
