//! Carrier assembly shared by the spectra constructions.
//!
//! Every level of every object built in this module family is a coproduct of
//! tensor blocks over primitive carriers.  Over the initial instance the
//! carrier is closed-form — every pointed set carries exactly one action, so
//! wedges and smashes are plain index arithmetic.  Over any other instance
//! the same block layout is presented as a congruence-closure quotient in
//! one step, so the digit space of the presentation *is* the block layout
//! and tables extend through [`universal_extension`].
//!
//! A [`LevelCarrier`] remembers the layout either way: `gen_class` maps a
//! digit (a block-local generator id) to its carrier index, and `extend`
//! turns digit images into a full table.

use std::collections::BTreeMap;

use crate::aset::{
    coproduct_many, f_pointed_set, tensor_sum_multi, universal_extension, ASetObj, TermQuotient,
};
use crate::error::{Error, Result};
use crate::fincat::{enumerate_monotone, MonotoneMap};
use crate::genring::{carrier_or_err, RingRef};
use crate::simpset::TruncSimpASet;

/// One assembled carrier: the A-set, the digit-to-index map of its
/// presentation, and (off the closed-form path) the quotient that extends
/// digit images to full tables.
#[derive(Clone)]
pub(crate) struct LevelCarrier {
    pub obj: ASetObj,
    pub gen_class: Vec<usize>,
    quot: Option<TermQuotient>,
}

impl LevelCarrier {
    /// The zero object: a single basepoint, no digits.
    pub fn point(ring: &RingRef) -> Result<LevelCarrier> {
        Ok(LevelCarrier { obj: point_aset(ring)?, gen_class: Vec::new(), quot: None })
    }

    pub fn digits(&self) -> usize {
        self.gen_class.len()
    }

    /// Extend digit images (indexed by generator id, values in `target`) to
    /// a full pointed table out of `self.obj`.
    pub fn extend(&self, target: &ASetObj, images: &[usize]) -> Result<Vec<usize>> {
        if images.len() != self.digits() {
            return Err(Error::validation(
                "carrier.extend",
                format!("{} images for {} digits", images.len(), self.digits()),
            ));
        }
        match &self.quot {
            Some(q) => universal_extension(q, target, images),
            None => {
                // Closed form: every nonzero element is its own digit.
                if let Some(&bad) = images.iter().find(|&&x| x >= target.size()) {
                    return Err(Error::validation(
                        "carrier.extend",
                        format!("image {bad} outside target of size {}", target.size()),
                    ));
                }
                let mut table = Vec::with_capacity(self.obj.size());
                table.push(0);
                table.extend_from_slice(images);
                Ok(table)
            }
        }
    }
}

/// The zero A-set over any instance.
pub(crate) fn point_aset(ring: &RingRef) -> Result<ASetObj> {
    ASetObj::new(ring, "0", vec!["*".to_string()], |_, _, _| Some(0))
}

/// Whether a ring is the initial instance, where the closed-form pointed
/// path applies.
pub(crate) fn is_initial(ring: &RingRef) -> bool {
    ring.name() == "F"
}

/// A wedge of carriers.  Digits are the concatenated nonzero elements of
/// the summands in order.
pub(crate) fn wedge_level(
    ring: &RingRef,
    objs: &[&ASetObj],
    name: &str,
    cutoff: usize,
) -> Result<LevelCarrier> {
    if objs.is_empty() {
        return LevelCarrier::point(ring);
    }
    if is_initial(ring) {
        let mut labels = vec!["*".to_string()];
        for obj in objs {
            for x in 1..obj.size() {
                labels.push(obj.label(x).to_string());
            }
        }
        let n = labels.len();
        let obj = f_pointed_set(name, labels)?;
        Ok(LevelCarrier { obj, gen_class: (1..n).collect(), quot: None })
    } else {
        let q = coproduct_many(objs, name, cutoff)?;
        let gen_class = q.generator_classes()?;
        let obj = q.to_aset()?;
        Ok(LevelCarrier { obj, gen_class, quot: Some(q) })
    }
}

/// A coproduct of multi-factor tensor blocks.  Digits are block-major in
/// the mixed-radix layout of [`tensor_sum_multi`], leftmost factor
/// outermost; blocks with a zero factor contribute no digits.
pub(crate) fn tensor_level(
    ring: &RingRef,
    blocks: &[Vec<&ASetObj>],
    name: &str,
    cutoff: usize,
) -> Result<LevelCarrier> {
    if blocks.is_empty() {
        return LevelCarrier::point(ring);
    }
    if is_initial(ring) {
        let mut labels = vec!["*".to_string()];
        for block in blocks {
            let radix: Vec<usize> = block.iter().map(|m| m.size() - 1).collect();
            if radix.iter().any(|&r| r == 0) {
                continue;
            }
            let count: usize = radix.iter().product();
            for flat in 0..count {
                let mut rem = flat;
                let mut parts = vec![0usize; block.len()];
                for t in (0..block.len()).rev() {
                    parts[t] = 1 + rem % radix[t];
                    rem /= radix[t];
                }
                let label = block
                    .iter()
                    .zip(&parts)
                    .map(|(m, &x)| m.label(x).to_string())
                    .collect::<Vec<_>>()
                    .join("∧");
                labels.push(label);
            }
        }
        let n = labels.len();
        let obj = f_pointed_set(name, labels)?;
        Ok(LevelCarrier { obj, gen_class: (1..n).collect(), quot: None })
    } else {
        let q = tensor_sum_multi(blocks, name, cutoff)?;
        let gen_class = q.generator_classes()?;
        let obj = q.to_aset()?;
        Ok(LevelCarrier { obj, gen_class, quot: Some(q) })
    }
}

/// Digit arithmetic for block layouts: the offset of each block and the
/// per-block radix vectors, mirroring `tensor_level`.
pub(crate) struct BlockLayout {
    offsets: Vec<usize>,
    radix: Vec<Vec<usize>>,
}

impl BlockLayout {
    pub fn of(blocks: &[Vec<&ASetObj>]) -> BlockLayout {
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut radix = Vec::with_capacity(blocks.len());
        let mut at = 0usize;
        for block in blocks {
            offsets.push(at);
            let r: Vec<usize> = block.iter().map(|m| m.size() - 1).collect();
            if r.iter().all(|&x| x > 0) {
                at += r.iter().product::<usize>();
            }
            radix.push(r);
        }
        offsets.push(at);
        BlockLayout { offsets, radix }
    }

    pub fn digits(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    /// The digit of nonzero factor indices in a block, or `None` if any
    /// factor index is zero.
    pub fn digit(&self, block: usize, parts: &[usize]) -> Option<usize> {
        let r = &self.radix[block];
        let mut idx = 0usize;
        for (t, &v) in parts.iter().enumerate() {
            if v == 0 || r[t] == 0 {
                return None;
            }
            idx = idx * r[t] + (v - 1);
        }
        Some(self.offsets[block] + idx)
    }

    /// Decode a digit into its block and nonzero factor indices.
    pub fn decode(&self, digit: usize) -> (usize, Vec<usize>) {
        let block = match self.offsets.binary_search(&digit) {
            Ok(mut b) => {
                // Zero-width blocks share offsets; take the last block
                // starting here.
                while b + 1 < self.offsets.len() - 1 && self.offsets[b + 1] == digit {
                    b += 1;
                }
                b
            }
            Err(b) => b - 1,
        };
        let r = &self.radix[block];
        let mut rem = digit - self.offsets[block];
        let mut parts = vec![0usize; r.len()];
        for t in (0..r.len()).rev() {
            parts[t] = 1 + rem % r[t];
            rem /= r[t];
        }
        (block, parts)
    }
}

/// A finite product of carriers with componentwise action.  Returns the
/// object and the index strides (component `t` contributes
/// `x_t · strides[t]`).  The empty product is the point.
pub(crate) fn product_level(
    ring: &RingRef,
    objs: &[ASetObj],
    name: &str,
) -> Result<(ASetObj, Vec<usize>)> {
    for obj in objs {
        if obj.ring().name() != ring.name() {
            return Err(Error::Arity(format!(
                "product factor is over {} instead of {}",
                obj.ring().name(),
                ring.name()
            )));
        }
    }
    let sizes: Vec<usize> = objs.iter().map(|o| o.size()).collect();
    let mut strides = Vec::with_capacity(sizes.len());
    let mut total = 1usize;
    for &s in &sizes {
        strides.push(total);
        total = total.checked_mul(s).ok_or_else(|| {
            Error::Resource("product carrier exceeds the index space".to_string())
        })?;
    }
    let mut labels = Vec::with_capacity(total);
    for idx in 0..total {
        let mut parts = Vec::with_capacity(sizes.len());
        let mut rem = idx;
        for &s in &sizes {
            parts.push(rem % s);
            rem /= s;
        }
        let label = objs
            .iter()
            .zip(&parts)
            .map(|(o, &x)| o.label(x).to_string())
            .collect::<Vec<_>>()
            .join(",");
        labels.push(format!("({label})"));
    }
    let owned: Vec<ASetObj> = objs.to_vec();
    let sizes2 = sizes.clone();
    let strides2 = strides.clone();
    let obj = ASetObj::new(ring, name, labels, move |b, v, d| {
        let mut out = 0usize;
        for (t, (&s, &st)) in sizes2.iter().zip(&strides2).enumerate() {
            let comps: Vec<usize> = v.iter().map(|&x| x / st % s).collect();
            let val = owned[t].act(b, &comps, d)?;
            out += val * st;
        }
        Some(out)
    })?;
    Ok((obj, strides))
}

/// The subobject of `obj` on the kept indices (which must include the
/// basepoint and be closed under the action at arity ≤ 2 — escape is an
/// assembly error, not a partial action).
pub(crate) fn sub_level(
    obj: &ASetObj,
    keep: &[usize],
    name: &str,
) -> Result<(ASetObj, Vec<Option<usize>>)> {
    if keep.first() != Some(&0) || keep.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::validation(
            "sub.keep",
            "kept indices must be sorted, distinct, and start at the basepoint",
        ));
    }
    if let Some(&bad) = keep.iter().find(|&&x| x >= obj.size()) {
        return Err(Error::validation(
            "sub.keep",
            format!("index {bad} outside carrier of size {}", obj.size()),
        ));
    }
    let mut to_new: Vec<Option<usize>> = vec![None; obj.size()];
    for (new, &old) in keep.iter().enumerate() {
        to_new[old] = Some(new);
    }
    // Closure sweep at arity ≤ 2 over the kept carrier.
    let ring = obj.ring().clone();
    for k in 0..=2usize {
        let ak = carrier_or_err(ring.as_ref(), k)?;
        let mut tuple = vec![0usize; k];
        for b in &ak {
            for d in &ak {
                for flat in 0..keep.len().pow(k as u32) {
                    let mut rem = flat;
                    for slot in tuple.iter_mut() {
                        *slot = keep[rem % keep.len()];
                        rem /= keep.len();
                    }
                    if let Some(val) = obj.act(b, &tuple, d) {
                        if to_new[val].is_none() {
                            return Err(Error::Structure(format!(
                                "{name}: action escapes the subobject at {val}",
                            )));
                        }
                    }
                }
            }
        }
    }
    let labels: Vec<String> = keep.iter().map(|&x| obj.label(x).to_string()).collect();
    let inner = obj.clone();
    let keep2 = keep.to_vec();
    let to_new2 = to_new.clone();
    let sub = ASetObj::new(&obj.ring().clone(), name, labels, move |b, v, d| {
        let old: Vec<usize> = v.iter().map(|&x| keep2[x]).collect();
        let val = inner.act(b, &old, d)?;
        to_new2[val]
    })?;
    Ok((sub, to_new))
}

/// Assemble a truncated simplicial object from per-level carriers and a
/// digit-image rule for each monotone map.  `images_for(l)` returns, for
/// every digit of level `l.target()`, its image index in level
/// `l.source()`; identities are filled in automatically.
pub(crate) fn assemble_simp(
    ring: &RingRef,
    name: &str,
    d: usize,
    carriers: &[LevelCarrier],
    mut images_for: impl FnMut(&MonotoneMap) -> Result<Vec<usize>>,
    bound: usize,
) -> Result<TruncSimpASet> {
    if carriers.len() != d + 1 {
        return Err(Error::validation(
            "assemble.carriers",
            format!("{} carriers for truncation {d}", carriers.len()),
        ));
    }
    let mut maps: BTreeMap<(usize, usize, Vec<usize>), Vec<usize>> = BTreeMap::new();
    for n in 0..=d {
        for np in 0..=d {
            for l in enumerate_monotone(n, np)? {
                let key = (l.source(), l.target(), l.table().to_vec());
                let table = if n == np && l.table().iter().enumerate().all(|(i, &y)| i == y) {
                    (0..carriers[n].obj.size()).collect()
                } else {
                    let images = images_for(&l)?;
                    carriers[np].extend(&carriers[n].obj, &images)?
                };
                maps.insert(key, table);
            }
        }
    }
    let levels: Vec<ASetObj> = carriers.iter().map(|c| c.obj.clone()).collect();
    TruncSimpASet::new(ring, name, levels, maps, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aset::cyclic_module;
    use crate::genring::instances::{f_ring, zmod};
    use std::sync::Arc;

    fn fr() -> RingRef {
        Arc::new(f_ring())
    }

    fn pointed(n: usize) -> ASetObj {
        let labels: Vec<String> =
            (0..n).map(|i| if i == 0 { "*".to_string() } else { format!("e{i}") }).collect();
        f_pointed_set(&format!("X{n}"), labels).unwrap()
    }

    #[test]
    fn closed_form_and_quotient_layouts_agree_on_digit_indexing() {
        let ring = fr();
        let x3 = pointed(3);
        let x4 = pointed(4);
        let blocks: Vec<Vec<&ASetObj>> = vec![vec![&x3, &x4], vec![&x4, &x3]];
        let lc = tensor_level(&ring, &blocks, "two blocks", 1).unwrap();
        assert_eq!(lc.obj.size(), 1 + 6 + 6);
        assert_eq!(lc.digits(), 12);
        let layout = BlockLayout::of(&blocks);
        assert_eq!(layout.digits(), 12);
        // Pair (x=2, y=3) in block 0: digit (2−1)·3 + (3−1) = 5.
        assert_eq!(layout.digit(0, &[2, 3]), Some(5));
        assert_eq!(layout.decode(5), (0, vec![2, 3]));
        assert_eq!(layout.digit(1, &[1, 2]), Some(6 + 1));
        assert_eq!(layout.decode(7), (1, vec![1, 2]));
        assert_eq!(layout.digit(0, &[0, 3]), None);
        // Every digit round-trips.
        for g in 0..layout.digits() {
            let (b, parts) = layout.decode(g);
            assert_eq!(layout.digit(b, &parts), Some(g));
        }
    }

    #[test]
    fn wedge_and_extension_work_on_both_paths() {
        // Initial instance: closed form.
        let ring = fr();
        let x3 = pointed(3);
        let x2 = pointed(2);
        let lc = wedge_level(&ring, &[&x3, &x2], "X3 v X2", 2).unwrap();
        assert_eq!(lc.obj.size(), 4);
        let target = pointed(3);
        let table = lc.extend(&target, &[2, 0, 1]).unwrap();
        assert_eq!(table, vec![0, 2, 0, 1]);

        // Modular instance: quotient path with class extension.
        let r2: RingRef = Arc::new(zmod(2).unwrap());
        let c2 = cyclic_module(&r2, 2).unwrap();
        let lw = wedge_level(&r2, &[&c2, &c2], "C2+C2", 3).unwrap();
        assert_eq!(lw.obj.size(), 4);
        assert_eq!(lw.digits(), 2);
        // Fold both summands onto the target generator: well-defined.
        let fold = lw.extend(&c2, &[1, 1]).unwrap();
        assert_eq!(fold.len(), 4);
        assert_eq!(fold[0], 0);
        // Collapse one summand: also well-defined (the direct sum projects).
        let proj = lw.extend(&c2, &[1, 0]).unwrap();
        assert_eq!(proj[lw.gen_class[0]], 1);
        assert_eq!(proj[lw.gen_class[1]], 0);
    }

    #[test]
    fn products_and_subobjects_assemble() {
        let ring = fr();
        let x3 = pointed(3);
        let x2 = pointed(2);
        let (prod, strides) = product_level(&ring, &[x3.clone(), x2.clone()], "X3×X2").unwrap();
        assert_eq!(prod.size(), 6);
        assert_eq!(strides, vec![1, 3]);
        // The empty product is the point.
        let (pt, st) = product_level(&ring, &[], "()").unwrap();
        assert_eq!(pt.size(), 1);
        assert!(st.is_empty());

        let (sub, to_new) = sub_level(&x3, &[0, 2], "keep e2").unwrap();
        assert_eq!(sub.size(), 2);
        assert_eq!(to_new[2], Some(1));
        assert_eq!(to_new[1], None);
    }
}
