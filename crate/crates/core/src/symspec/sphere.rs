//! The simplicial circle, its smash powers, and the sphere monoid.
//!
//! The circle is the standard minimal model: one nondegenerate vertex and
//! one nondegenerate edge, realized at simplicial level `k` as the pointed
//! set of jump positions `1..=k`.  The level-`p` sphere is the `p`-fold
//! smash power with the symmetric group permuting the factors, and the
//! monoid multiplication `m^{p,q}` concatenates jump tuples.  Over the
//! initial instance everything is closed-form; over any other instance the
//! levels, actions, and multiplication tables are transported along the
//! initial homomorphism by levelwise scalar extension, and the monoid laws
//! are re-checked on the transported tables.

use std::collections::BTreeMap;

use crate::aset::{extend_scalars, f_pointed_set, universal_extension, StabFlag, TermQuotient};
use crate::error::{Error, Result};
use crate::fincat::enumerate_monotone;
use crate::genring::hom::initial_hom;
use crate::genring::RingRef;
use crate::simpset::{constant_simp, SimpMap, TruncSimpASet};

use super::kit::is_initial;
use super::{SymSeq};

/// Decode a nonzero smash-power index into factor indices (each in
/// `1..=w`), most significant factor first.
pub(crate) fn decode_tuple(w: usize, n: usize, x: usize) -> Vec<usize> {
    let mut parts = vec![0usize; n];
    let mut rem = x - 1;
    for t in (0..n).rev() {
        parts[t] = 1 + rem % w;
        rem /= w;
    }
    parts
}

/// Encode factor indices into a smash-power index; any zero factor sends
/// the whole simplex to the basepoint.
pub(crate) fn encode_tuple(w: usize, parts: &[usize]) -> usize {
    let mut idx = 0usize;
    for &x in parts {
        if x == 0 {
            return 0;
        }
        idx = idx * w + (x - 1);
    }
    idx + 1
}

/// The standard simplicial circle over the initial instance, truncated at
/// `d`: level `k` holds the basepoint and the jump positions `1..=k`.
pub fn circle(d: usize) -> Result<TruncSimpASet> {
    let ring: RingRef = std::sync::Arc::new(crate::genring::instances::f_ring());
    let mut levels = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let labels: Vec<String> = (0..=k)
            .map(|j| if j == 0 { "*".to_string() } else { format!("t{j}") })
            .collect();
        levels.push(f_pointed_set(&format!("S¹_{k}"), labels)?);
    }
    let mut maps = BTreeMap::new();
    for a in 0..=d {
        for b in 0..=d {
            for l in enumerate_monotone(a, b)? {
                // An element with jump j at level b pulls back along l to
                // the jump counting how many of l's values stay below j;
                // all or none means a collapsed vertex.
                let mut tab = vec![0usize];
                for j in 1..=b {
                    let cnt = (0..=a).filter(|&i| l.apply(i) < j).count();
                    tab.push(if cnt == 0 || cnt == a + 1 { 0 } else { cnt });
                }
                maps.insert((l.source(), l.target(), l.table().to_vec()), tab);
            }
        }
    }
    TruncSimpASet::new(&ring, "S¹", levels, maps, 1)
}

/// The `n`-fold smash power of a pointed simplicial object over the
/// initial instance, with the adjacent transpositions permuting the
/// factors.  The 0-fold power is the two-point constant object.
pub fn smash_power(obj: &TruncSimpASet, n: usize) -> Result<(TruncSimpASet, Vec<SimpMap>)> {
    if !is_initial(obj.ring()) {
        return Err(Error::Unsupported(
            "smash powers are closed-form over the initial instance only; transport other \
             instances by base change"
                .to_string(),
        ));
    }
    let d = obj.d();
    let ring = obj.ring().clone();
    if n == 0 {
        let s0 = constant_simp(
            &f_pointed_set("S⁰", vec!["*".to_string(), "1".to_string()])?,
            d,
            1,
        )?;
        return Ok((s0, Vec::new()));
    }
    if n == 1 {
        return Ok((obj.clone(), Vec::new()));
    }
    let widths: Vec<usize> = (0..=d).map(|k| obj.level(k).size() - 1).collect();
    let mut levels = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let w = widths[k];
        let count = w.pow(n as u32);
        let mut labels = Vec::with_capacity(count + 1);
        labels.push("*".to_string());
        for flat in 0..count {
            let parts = decode_tuple(w, n, flat + 1);
            labels.push(
                parts
                    .iter()
                    .map(|&x| obj.level(k).label(x).to_string())
                    .collect::<Vec<_>>()
                    .join("∧"),
            );
        }
        levels.push(f_pointed_set(&format!("{}^∧{n}_{k}", obj.name()), labels)?);
    }
    let mut maps = BTreeMap::new();
    for a in 0..=d {
        for b in 0..=d {
            for l in enumerate_monotone(a, b)? {
                let base = obj.structure_table(&l)?;
                let mut tab = Vec::with_capacity(levels[b].size());
                tab.push(0);
                for x in 1..levels[b].size() {
                    let parts = decode_tuple(widths[b], n, x);
                    let imgs: Vec<usize> = parts.iter().map(|&p| base[p]).collect();
                    tab.push(encode_tuple(widths[a], &imgs));
                }
                maps.insert((l.source(), l.target(), l.table().to_vec()), tab);
            }
        }
    }
    let assembled =
        TruncSimpASet::new(&ring, &format!("{}^∧{n}", obj.name()), levels, maps, 1)?;
    let mut gens = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        let mut tables = Vec::with_capacity(d + 1);
        for k in 0..=d {
            let w = widths[k];
            let mut tab = Vec::with_capacity(assembled.level(k).size());
            tab.push(0);
            for x in 1..assembled.level(k).size() {
                let mut parts = decode_tuple(w, n, x);
                parts.swap(i, i + 1);
                tab.push(encode_tuple(w, &parts));
            }
            tables.push(tab);
        }
        gens.push(SimpMap::new(&format!("s{i}"), &assembled, &assembled, tables, 1)?);
    }
    Ok((assembled, gens))
}

/// The sphere monoid truncated at level `l` and simplicial degree `d`:
/// the symmetric sequence of smash powers of the circle together with the
/// full concatenation-multiplication tables `m^{p,q}` for `p + q ≤ l`.
pub struct SphereSpec {
    seq: SymSeq,
    /// `mult[(p, q)][k][x * size_q + y]` is `m^{p,q}(x, y)` at simplicial
    /// level `k`.
    mult: BTreeMap<(usize, usize), Vec<Vec<usize>>>,
    /// The index of the monoid unit in level 0, per simplicial level.
    unit: Vec<usize>,
    /// Generator classes of each level: `gens[p][k][g]` is the carrier
    /// index of the `g`-th transported generator (over the initial
    /// instance, generators are simply all nonzero elements).
    gens: Vec<Vec<Vec<usize>>>,
}

impl SphereSpec {
    pub fn seq(&self) -> &SymSeq {
        &self.seq
    }

    pub fn ring(&self) -> &RingRef {
        self.seq.ring()
    }

    pub fn l(&self) -> usize {
        self.seq.l()
    }

    pub fn d(&self) -> usize {
        self.seq.d()
    }

    /// The level-`p` sphere.
    pub fn level(&self, p: usize) -> &TruncSimpASet {
        self.seq.level(p)
    }

    /// The monoid unit in level 0 at simplicial level `k`.
    pub fn unit_index(&self, k: usize) -> usize {
        self.unit[k]
    }

    /// The carrier index of the `g`-th generator of level `p` at
    /// simplicial level `k`.
    pub fn generator_class(&self, p: usize, k: usize, g: usize) -> usize {
        self.gens[p][k][g]
    }

    /// The number of generators of level `p` at simplicial level `k`.
    pub fn generator_count(&self, p: usize, k: usize) -> usize {
        self.gens[p][k].len()
    }

    /// The full multiplication table `m^{p,q}`, per simplicial level,
    /// flattened as `x * size_q + y`.  Levels beyond the truncation are a
    /// range error.
    pub fn mult_table(&self, p: usize, q: usize) -> Result<&[Vec<usize>]> {
        if p + q > self.l() {
            return Err(Error::Arity(format!(
                "m^{p},{q} lands in level {} beyond the truncation {}",
                p + q,
                self.l()
            )));
        }
        Ok(self.mult.get(&(p, q)).expect("within truncation").as_slice())
    }

    /// Apply `m^{p,q}` to carrier indices at simplicial level `k`.
    pub fn mult_apply(&self, p: usize, q: usize, k: usize, x: usize, y: usize) -> Result<usize> {
        let t = self.mult_table(p, q)?;
        let szq = self.seq.level(q).level(k).size();
        Ok(t[k][x * szq + y])
    }
}

/// Build the sphere monoid over an instance.  Over the initial instance
/// the tables are closed-form; otherwise every level is transported along
/// the initial homomorphism and the multiplication is extended bilinearly
/// from the transported generators.  The monoid laws — unit on all
/// elements, associativity on all generator triples (all element triples
/// over the initial instance) — are verified before returning.
pub fn sphere(ring: &RingRef, l: usize, d: usize, cutoff: usize) -> Result<SphereSpec> {
    if !is_initial(ring) && d > 1 {
        // Levels of width ≥ 2 acquire carrier elements whose representative
        // terms exceed any workable congruence cutoff once multiplied, so
        // the transported tables are exact only up to simplicial degree 1.
        return Err(Error::Resource(format!(
            "the sphere over {} is exact for simplicial truncation ≤ 1; degree {d} carriers \
             outgrow the congruence cutoff",
            ring.name()
        )));
    }
    let s1 = circle(d)?;
    let mut f_levels = Vec::with_capacity(l + 1);
    let mut f_gens = Vec::with_capacity(l + 1);
    for p in 0..=l {
        let (obj, gens) = smash_power(&s1, p)?;
        f_levels.push(obj);
        f_gens.push(gens);
    }
    let widths: Vec<usize> = (0..=d).map(|k| k).collect();
    let width_pow = |p: usize, k: usize| -> usize {
        if p == 0 {
            1
        } else {
            widths[k].pow(p as u32)
        }
    };
    // Closed-form multiplication on the initial levels: concatenation of
    // jump tuples is mixed-radix concatenation of indices.
    let f_mult_entry = |p: usize, q: usize, k: usize, x: usize, y: usize| -> usize {
        if x == 0 || y == 0 {
            0
        } else {
            (x - 1) * width_pow(q, k) + (y - 1) + 1
        }
    };

    let spec = if is_initial(ring) {
        let seq = SymSeq::new(ring, "S", f_levels, f_gens)?;
        let mut mult = BTreeMap::new();
        for p in 0..=l {
            for q in 0..=l - p {
                let mut per_k = Vec::with_capacity(d + 1);
                for k in 0..=d {
                    let szp = seq.level(p).level(k).size();
                    let szq = seq.level(q).level(k).size();
                    let mut tab = vec![0usize; szp * szq];
                    for x in 0..szp {
                        for y in 0..szq {
                            tab[x * szq + y] = f_mult_entry(p, q, k, x, y);
                        }
                    }
                    per_k.push(tab);
                }
                mult.insert((p, q), per_k);
            }
        }
        let gens = (0..=l)
            .map(|p| {
                (0..=d)
                    .map(|k| (1..seq.level(p).level(k).size()).collect())
                    .collect()
            })
            .collect();
        SphereSpec { seq, mult, unit: vec![1; d + 1], gens }
    } else {
        let phi = initial_hom(ring);
        // Transport each level while keeping the presentations, so tables
        // extend through the universal property.
        let mut quots: Vec<Vec<TermQuotient>> = Vec::with_capacity(l + 1);
        let mut gcls: Vec<Vec<Vec<usize>>> = Vec::with_capacity(l + 1);
        let mut levels: Vec<TruncSimpASet> = Vec::with_capacity(l + 1);
        for p in 0..=l {
            let mut qrow = Vec::with_capacity(d + 1);
            let mut grow = Vec::with_capacity(d + 1);
            let mut carriers = Vec::with_capacity(d + 1);
            for k in 0..=d {
                let q = extend_scalars(&phi, f_levels[p].level(k), ring, cutoff)?;
                if let StabFlag::Provisional(why) = q.stab() {
                    return Err(Error::Provisional(format!(
                        "sphere level {p} at simplicial level {k} is provisional: {why}"
                    )));
                }
                carriers.push(q.to_aset()?);
                grow.push(q.generator_classes()?);
                qrow.push(q);
            }
            let mut maps = BTreeMap::new();
            for a in 0..=d {
                for b in 0..=d {
                    for lm in enumerate_monotone(a, b)? {
                        let base = f_levels[p].structure_table(&lm)?;
                        let images: Vec<usize> = (1..f_levels[p].level(b).size())
                            .map(|x| if base[x] == 0 { 0 } else { grow[a][base[x] - 1] })
                            .collect();
                        let table = universal_extension(&qrow[b], &carriers[a], &images)?;
                        maps.insert((lm.source(), lm.target(), lm.table().to_vec()), table);
                    }
                }
            }
            levels.push(TruncSimpASet::new(
                ring,
                &format!("S^{p}({})", ring.name()),
                carriers,
                maps,
                1,
            )?);
            quots.push(qrow);
            gcls.push(grow);
        }
        // Transport the factor-permutation actions.
        let mut gens_rows: Vec<Vec<SimpMap>> = Vec::with_capacity(l + 1);
        for p in 0..=l {
            let mut row = Vec::with_capacity(p.saturating_sub(1));
            for g in &f_gens[p] {
                let mut tables = Vec::with_capacity(d + 1);
                for k in 0..=d {
                    let base = g.table(k);
                    let images: Vec<usize> = (1..f_levels[p].level(k).size())
                        .map(|x| if base[x] == 0 { 0 } else { gcls[p][k][base[x] - 1] })
                        .collect();
                    tables.push(universal_extension(
                        &quots[p][k],
                        levels[p].level(k),
                        &images,
                    )?);
                }
                row.push(SimpMap::new(g.name.as_str(), &levels[p], &levels[p], tables, 1)?);
            }
            gens_rows.push(row);
        }
        let seq = SymSeq::new(ring, &format!("S({})", ring.name()), levels, gens_rows)?;
        // Extend the multiplication bilinearly: first along the left
        // factor for each right generator, then along the right factor for
        // every left element.
        let mut mult = BTreeMap::new();
        for p in 0..=l {
            for q in 0..=l - p {
                let mut per_k = Vec::with_capacity(d + 1);
                for k in 0..=d {
                    let szp = seq.level(p).level(k).size();
                    let szq = seq.level(q).level(k).size();
                    let target = seq.level(p + q).level(k);
                    let ngen_p = gcls[p][k].len();
                    let ngen_q = gcls[q][k].len();
                    let mut cols = Vec::with_capacity(ngen_q);
                    for j in 0..ngen_q {
                        let images: Vec<usize> = (0..ngen_p)
                            .map(|i| {
                                let f = f_mult_entry(p, q, k, i + 1, j + 1);
                                gcls[p + q][k][f - 1]
                            })
                            .collect();
                        cols.push(universal_extension(&quots[p][k], target, &images)?);
                    }
                    let mut tab = vec![0usize; szp * szq];
                    for x in 0..szp {
                        let images: Vec<usize> = (0..ngen_q).map(|j| cols[j][x]).collect();
                        let row = universal_extension(&quots[q][k], target, &images)?;
                        for y in 0..szq {
                            tab[x * szq + y] = row[y];
                        }
                    }
                    per_k.push(tab);
                }
                mult.insert((p, q), per_k);
            }
        }
        let unit: Vec<usize> = (0..=d).map(|k| gcls[0][k][0]).collect();
        SphereSpec { seq, mult, unit, gens: gcls }
    };

    check_monoid(&spec)?;
    Ok(spec)
}

/// Unit and associativity on the finished tables: the unit law on every
/// element, associativity on every generator triple (every element triple
/// over the initial instance, where the two coincide).
fn check_monoid(s: &SphereSpec) -> Result<()> {
    let l = s.l();
    let d = s.d();
    for q in 0..=l {
        for k in 0..=d {
            let szq = s.seq.level(q).level(k).size();
            let u = s.unit[k];
            for y in 0..szq {
                if s.mult_apply(0, q, k, u, y)? != y {
                    return Err(Error::Structure(format!(
                        "left unit law fails on level {q} at simplicial level {k}, element {y}"
                    )));
                }
                if s.mult_apply(q, 0, k, y, u)? != y {
                    return Err(Error::Structure(format!(
                        "right unit law fails on level {q} at simplicial level {k}, element {y}"
                    )));
                }
            }
        }
    }
    for p in 0..=l {
        for q in 0..=l - p {
            for r in 0..=l - p - q {
                for k in 0..=d {
                    let xs: Vec<usize> = if is_initial(s.ring()) {
                        (0..s.seq.level(p).level(k).size()).collect()
                    } else {
                        s.gens[p][k].clone()
                    };
                    let ys: Vec<usize> = if is_initial(s.ring()) {
                        (0..s.seq.level(q).level(k).size()).collect()
                    } else {
                        s.gens[q][k].clone()
                    };
                    let zs: Vec<usize> = if is_initial(s.ring()) {
                        (0..s.seq.level(r).level(k).size()).collect()
                    } else {
                        s.gens[r][k].clone()
                    };
                    for &x in &xs {
                        for &y in &ys {
                            for &z in &zs {
                                let xy = s.mult_apply(p, q, k, x, y)?;
                                let yz = s.mult_apply(q, r, k, y, z)?;
                                if s.mult_apply(p + q, r, k, xy, z)?
                                    != s.mult_apply(p, q + r, k, x, yz)?
                                {
                                    return Err(Error::Structure(format!(
                                        "associativity fails at levels ({p},{q},{r}), \
                                         simplicial level {k}"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::MonotoneMap;
    use crate::genring::instances::{f_ring, zmod};
    use std::sync::Arc;

    #[test]
    fn circle_has_one_nondegenerate_vertex_and_edge() {
        let s1 = circle(2).unwrap();
        assert_eq!(s1.level(0).size(), 1);
        assert_eq!(s1.level(1).size(), 2);
        assert_eq!(s1.level(2).size(), 3);
        // Level 1: the edge is not in the image of the degeneracy.
        let s0 = MonotoneMap::codegeneracy(0, 0).unwrap();
        let t = s1.structure_table(&s0).unwrap();
        assert!(!t.contains(&1));
        // Level 2: every nonzero simplex is degenerate.
        let d0 = MonotoneMap::codegeneracy(1, 0).unwrap();
        let d1 = MonotoneMap::codegeneracy(1, 1).unwrap();
        let im0 = s1.structure_table(&d0).unwrap();
        let im1 = s1.structure_table(&d1).unwrap();
        let mut seen = vec![false; 3];
        for &x in im0.iter().chain(im1.iter()) {
            seen[x] = true;
        }
        assert!(seen[1] && seen[2]);
    }

    #[test]
    fn smash_powers_count_tuples_and_swap_factors() {
        let s1 = circle(2).unwrap();
        let (s2, gens) = smash_power(&s1, 2).unwrap();
        assert_eq!(s2.level(0).size(), 1);
        assert_eq!(s2.level(1).size(), 2);
        assert_eq!(s2.level(2).size(), 5);
        assert_eq!(gens.len(), 1);
        // At level 2 the swap exchanges (t1,t2) and (t2,t1), fixing the
        // diagonal pairs.
        let t = gens[0].table(2);
        assert_eq!(t[1], 1);
        assert_eq!(t[2], 3);
        assert_eq!(t[3], 2);
        assert_eq!(t[4], 4);
        let (s3, gens3) = smash_power(&s1, 3).unwrap();
        assert_eq!(s3.level(2).size(), 9);
        assert_eq!(gens3.len(), 2);
        // Zero-fold power is the two-point constant object.
        let (s0, gens0) = smash_power(&s1, 0).unwrap();
        assert_eq!(s0.level(2).size(), 2);
        assert!(gens0.is_empty());
    }

    #[test]
    fn initial_sphere_multiplies_by_concatenation() {
        let ring: RingRef = Arc::new(f_ring());
        let s = sphere(&ring, 3, 2, 3).unwrap();
        assert_eq!(s.l(), 3);
        assert_eq!(s.d(), 2);
        // m^{1,1}(t1, t2) = t1∧t2, the first mixed pair.
        assert_eq!(s.mult_apply(1, 1, 2, 1, 2).unwrap(), 2);
        assert_eq!(s.mult_apply(1, 1, 2, 2, 1).unwrap(), 3);
        // Units act as identities.
        assert_eq!(s.mult_apply(0, 2, 2, s.unit_index(2), 4).unwrap(), 4);
        // Beyond the truncation is a range error.
        assert!(s.mult_table(2, 2).is_err());
        // Level sizes: the p-fold power has k^p simplices at level k.
        assert_eq!(s.level(3).level(2).size(), 9);
        assert_eq!(s.level(0).level(0).size(), 2);
    }

    #[test]
    fn transported_spheres_keep_the_monoid_laws() {
        let r2: RingRef = Arc::new(zmod(2).unwrap());
        let s = sphere(&r2, 3, 1, 3).unwrap();
        // Every level is free on at most one generator at truncation 1.
        assert_eq!(s.level(1).level(0).size(), 1);
        assert_eq!(s.level(1).level(1).size(), 2);
        assert_eq!(s.level(3).level(1).size(), 2);
        assert_eq!(s.level(0).level(1).size(), 2);
        // The generator product lands on the transported pair generator.
        let g1 = s.generator_class(1, 1, 0);
        let g2 = s.generator_class(2, 1, 0);
        assert_eq!(s.mult_apply(1, 1, 1, g1, g1).unwrap(), g2);
        // Wider simplicial truncations outgrow the congruence cutoff.
        assert!(matches!(sphere(&r2, 2, 2, 3), Err(Error::Resource(_))));

        let r6: RingRef = Arc::new(zmod(6).unwrap());
        let s6 = sphere(&r6, 2, 1, 2).unwrap();
        assert_eq!(s6.level(0).level(0).size(), 6);
        assert_eq!(s6.level(1).level(1).size(), 6);
        assert_eq!(s6.level(2).level(1).size(), 6);
        let g1 = s6.generator_class(1, 1, 0);
        let g2 = s6.generator_class(2, 1, 0);
        assert_eq!(s6.mult_apply(1, 1, 1, g1, g1).unwrap(), g2);
    }
}
