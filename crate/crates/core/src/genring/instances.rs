//! The shipped generalized-ring instances.
//!
//! * [`FMonoidRing`] — basis vectors tagged by a finite commutative monoid
//!   `M`; the untagged case (`M` trivial) is the initial instance `F`.
//! * [`RigRing`] — coordinate vectors over a finite commutative rig given by
//!   addition/multiplication tables (`Z/n`, the Boolean rig, a two-point
//!   truncated tropical rig, …).
//! * [`RationalBall`] — the exact rational unit ball under the Euclidean
//!   norm; not enumerable, checked by sampling.

use super::{validate_contract_shape, validate_mul_shape, Elem, ElemFamily, GenRing};
use crate::error::{Error, Result};
use crate::fincat::PartialBijection;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

// ---------------------------------------------------------------------------
// Basis instances: F and F{M}
// ---------------------------------------------------------------------------

/// `A_n = {0} ∪ (n × M)` for a finite commutative monoid `M`: tagged basis
/// vectors.  Multiplication routes a basis vector through the family and
/// multiplies tags; contraction succeeds only when the family component sits
/// exactly over the contracted coordinate.
#[derive(Debug, Clone)]
pub struct FMonoidRing {
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
}

impl FMonoidRing {
    pub fn new(name: &str, labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let k = labels.len();
        if k == 0 {
            return Err(Error::validation("monoid.labels", "monoid needs at least the identity"));
        }
        if table.len() != k || table.iter().any(|row| row.len() != k) {
            return Err(Error::validation("monoid.table", format!("table must be {k}×{k}")));
        }
        for (i, row) in table.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v >= k {
                    return Err(Error::validation(
                        format!("monoid.table[{i}][{j}]"),
                        format!("entry {v} out of range"),
                    ));
                }
            }
        }
        for i in 0..k {
            if table[0][i] != i || table[i][0] != i {
                return Err(Error::validation(
                    "monoid.table",
                    "index 0 must be the identity element",
                ));
            }
            for j in 0..k {
                if table[i][j] != table[j][i] {
                    return Err(Error::validation(
                        format!("monoid.table[{i}][{j}]"),
                        "monoid must be commutative",
                    ));
                }
                for l in 0..k {
                    if table[table[i][j]][l] != table[i][table[j][l]] {
                        return Err(Error::validation(
                            format!("monoid.table[{i}][{j}]"),
                            "monoid must be associative",
                        ));
                    }
                }
            }
        }
        Ok(FMonoidRing { name: name.to_string(), labels, table })
    }

    pub fn monoid_size(&self) -> usize {
        self.labels.len()
    }

    fn tag_mul(&self, s: usize, t: usize) -> usize {
        self.table[s][t]
    }
}

/// The initial instance: untagged basis vectors (`M` trivial).
pub fn f_ring() -> FMonoidRing {
    FMonoidRing::new("F", vec!["e".to_string()], vec![vec![0]]).expect("trivial monoid")
}

/// `F{C_k}` for the cyclic monoid (group) of order `k`.
pub fn f_cyclic(k: usize) -> Result<FMonoidRing> {
    if k == 0 {
        return Err(Error::validation("monoid.order", "cyclic monoid needs order ≥ 1"));
    }
    let labels = (0..k)
        .map(|i| if i == 0 { "e".to_string() } else { format!("g{i}") })
        .collect();
    let table = (0..k).map(|i| (0..k).map(|j| (i + j) % k).collect()).collect();
    FMonoidRing::new(&format!("F{{C{k}}}"), labels, table)
}

impl GenRing for FMonoidRing {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn zero_empty(&self) -> Elem {
        Elem::Zero { arity: 0 }
    }

    fn unit(&self) -> Elem {
        Elem::Basis { arity: 1, coord: 0, tag: 0 }
    }

    fn contains(&self, e: &Elem) -> bool {
        match e {
            Elem::Zero { .. } => true,
            Elem::Basis { arity, coord, tag } => coord < arity && *tag < self.labels.len(),
            _ => false,
        }
    }

    fn carrier(&self, arity: usize) -> Option<Vec<Elem>> {
        let mut out = vec![Elem::Zero { arity }];
        for coord in 0..arity {
            for tag in 0..self.labels.len() {
                out.push(Elem::Basis { arity, coord, tag });
            }
        }
        Some(out)
    }

    fn sample(&self, arity: usize, rng: &mut ChaCha8Rng) -> Elem {
        let size = 1 + arity * self.labels.len();
        let k = rng.gen_range(0..size);
        if k == 0 {
            Elem::Zero { arity }
        } else {
            Elem::Basis {
                arity,
                coord: (k - 1) / self.labels.len(),
                tag: (k - 1) % self.labels.len(),
            }
        }
    }

    fn transport(&self, f: &PartialBijection, a: &Elem) -> Result<Elem> {
        let n = f.target();
        match a {
            Elem::Zero { arity } if *arity == f.source() => Ok(Elem::Zero { arity: n }),
            Elem::Basis { arity, coord, tag } if *arity == f.source() => Ok(match f.apply(*coord) {
                Some(j) => Elem::Basis { arity: n, coord: j, tag: *tag },
                None => Elem::Zero { arity: n },
            }),
            _ => Err(Error::Arity(format!("cannot transport {a} along {}", f.as_partial_fn()))),
        }
    }

    fn mul(&self, a: &Elem, b: &ElemFamily) -> Result<Elem> {
        validate_mul_shape(a, b)?;
        let m = b.map().source();
        match a {
            Elem::Zero { .. } => Ok(Elem::Zero { arity: m }),
            Elem::Basis { coord: j, tag: t, .. } => match b.component(*j) {
                Elem::Zero { .. } => Ok(Elem::Zero { arity: m }),
                Elem::Basis { coord: local, tag: u, .. } => Ok(Elem::Basis {
                    arity: m,
                    coord: b.map().fiber(*j)[*local],
                    tag: self.tag_mul(*t, *u),
                }),
                other => Err(Error::Structure(format!("foreign element {other} in family"))),
            },
            other => Err(Error::Structure(format!("foreign element {other}"))),
        }
    }

    fn contract(&self, c: &Elem, b: &ElemFamily) -> Result<Elem> {
        validate_contract_shape(c, b)?;
        let n = b.map().target();
        match c {
            Elem::Zero { .. } => Ok(Elem::Zero { arity: n }),
            Elem::Basis { coord: i, tag: t, .. } => {
                let Some(j) = b.map().apply(*i) else {
                    return Ok(Elem::Zero { arity: n });
                };
                match b.component(j) {
                    Elem::Basis { coord: local, tag: u, .. }
                        if b.map().fiber(j)[*local] == *i =>
                    {
                        Ok(Elem::Basis { arity: n, coord: j, tag: self.tag_mul(*t, *u) })
                    }
                    Elem::Basis { .. } | Elem::Zero { .. } => Ok(Elem::Zero { arity: n }),
                    other => Err(Error::Structure(format!("foreign element {other} in family"))),
                }
            }
            other => Err(Error::Structure(format!("foreign element {other}"))),
        }
    }

    fn render(&self, e: &Elem) -> String {
        match e {
            Elem::Basis { coord, tag, .. } if self.labels.len() > 1 => {
                format!("δ{coord}·{}", self.labels[*tag])
            }
            _ => e.to_string(),
        }
    }
}

// ---------------------------------------------------------------------------
// Table rigs
// ---------------------------------------------------------------------------

/// Coordinate vectors over a finite commutative rig `(R, +, ·, 0, 1)` given
/// by tables.  Multiplication is pointwise against the routed coordinate;
/// contraction sums over fibers and vanishes outside the image.
#[derive(Debug, Clone)]
pub struct RigRing {
    name: String,
    labels: Vec<String>,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    zero: usize,
    one: usize,
}

impl RigRing {
    pub fn new(
        name: &str,
        labels: Vec<String>,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
    ) -> Result<Self> {
        let k = labels.len();
        if k == 0 {
            return Err(Error::validation("rig.labels", "rig needs at least one element"));
        }
        for (tbl, path) in [(&add, "rig.add"), (&mul, "rig.mul")] {
            if tbl.len() != k || tbl.iter().any(|row| row.len() != k) {
                return Err(Error::validation(path, format!("table must be {k}×{k}")));
            }
            for (i, row) in tbl.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    if v >= k {
                        return Err(Error::validation(
                            format!("{path}[{i}][{j}]"),
                            format!("entry {v} out of range"),
                        ));
                    }
                    if tbl[i][j] != tbl[j][i] {
                        return Err(Error::validation(
                            format!("{path}[{i}][{j}]"),
                            "operation must be commutative",
                        ));
                    }
                }
            }
            for i in 0..k {
                for j in 0..k {
                    for l in 0..k {
                        if tbl[tbl[i][j]][l] != tbl[i][tbl[j][l]] {
                            return Err(Error::validation(
                                format!("{path}[{i}][{j}]"),
                                "operation must be associative",
                            ));
                        }
                    }
                }
            }
        }
        if zero >= k || one >= k {
            return Err(Error::validation("rig", "zero/one out of range"));
        }
        for i in 0..k {
            if add[zero][i] != i {
                return Err(Error::validation("rig.add", format!("{zero} is not additive identity")));
            }
            if mul[one][i] != i {
                return Err(Error::validation(
                    "rig.mul",
                    format!("{one} is not multiplicative identity"),
                ));
            }
            if mul[zero][i] != zero {
                return Err(Error::validation("rig.mul", format!("{zero} is not absorbing")));
            }
            for j in 0..k {
                for l in 0..k {
                    if mul[i][add[j][l]] != add[mul[i][j]][mul[i][l]] {
                        return Err(Error::validation(
                            format!("rig.mul[{i}]"),
                            "multiplication must distribute over addition",
                        ));
                    }
                }
            }
        }
        Ok(RigRing { name: name.to_string(), labels, add, mul, zero, one })
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn zero_idx(&self) -> usize {
        self.zero
    }

    pub fn one_idx(&self) -> usize {
        self.one
    }

    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    fn entries<'a>(&self, e: &'a Elem) -> Result<&'a [usize]> {
        match e {
            Elem::Tuple(v) if v.iter().all(|&x| x < self.size()) => Ok(v),
            other => Err(Error::Structure(format!("foreign element {other}"))),
        }
    }

    /// Flatten a family into per-slot `(target, entry)` pairs so batched
    /// sweeps walk the family structure once instead of once per element.
    /// Slots outside the domain of the underlying map carry `usize::MAX`.
    fn family_plan(&self, b: &ElemFamily) -> Result<Vec<(usize, usize)>> {
        let f = b.map();
        let mut plan = vec![(usize::MAX, 0usize); f.source()];
        let mut fiber_pos = vec![0usize; f.target()];
        for (i, slot) in plan.iter_mut().enumerate() {
            if let Some(j) = f.apply(i) {
                let bv = self.entries(b.component(j))?;
                *slot = (j, bv[fiber_pos[j]]);
                fiber_pos[j] += 1;
            }
        }
        Ok(plan)
    }
}

/// `Z/n` as a rig (a finite commutative ring).
pub fn zmod(n: usize) -> Result<RigRing> {
    if n == 0 {
        return Err(Error::validation("rig.modulus", "modulus must be ≥ 1"));
    }
    let labels = (0..n).map(|i| i.to_string()).collect();
    let add = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    let mul = (0..n).map(|i| (0..n).map(|j| (i * j) % n).collect()).collect();
    RigRing::new(&format!("Z/{n}"), labels, add, mul, 0, 1 % n)
}

/// The Boolean rig `{0, 1}` with `+ = or`, `· = and`.
pub fn bool_rig() -> RigRing {
    RigRing::new(
        "B",
        vec!["0".to_string(), "1".to_string()],
        vec![vec![0, 1], vec![1, 1]],
        vec![vec![0, 0], vec![0, 1]],
        0,
        1,
    )
    .expect("boolean tables")
}

/// The two-point truncation of the tropical rig `(min, +)`: carrier `{∞, 0}`
/// with `∞` the additive identity.  Its tables coincide with the Boolean rig.
pub fn tropical01() -> RigRing {
    RigRing::new(
        "T01",
        vec!["∞".to_string(), "0".to_string()],
        vec![vec![0, 1], vec![1, 1]],
        vec![vec![0, 0], vec![0, 1]],
        0,
        1,
    )
    .expect("tropical tables")
}

impl GenRing for RigRing {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn zero_empty(&self) -> Elem {
        Elem::Tuple(Vec::new())
    }

    fn unit(&self) -> Elem {
        Elem::Tuple(vec![self.one])
    }

    fn contains(&self, e: &Elem) -> bool {
        matches!(e, Elem::Tuple(v) if v.iter().all(|&x| x < self.size()))
    }

    fn carrier(&self, arity: usize) -> Option<Vec<Elem>> {
        let k = self.size();
        let mut out = Vec::new();
        let mut cur = vec![0usize; arity];
        loop {
            out.push(Elem::Tuple(cur.clone()));
            let mut j = arity;
            loop {
                if j == 0 {
                    return Some(out);
                }
                cur[j - 1] += 1;
                if cur[j - 1] < k {
                    break;
                }
                cur[j - 1] = 0;
                j -= 1;
            }
        }
    }

    fn sample(&self, arity: usize, rng: &mut ChaCha8Rng) -> Elem {
        Elem::Tuple((0..arity).map(|_| rng.gen_range(0..self.size())).collect())
    }

    fn transport(&self, f: &PartialBijection, a: &Elem) -> Result<Elem> {
        let v = self.entries(a)?;
        if v.len() != f.source() {
            return Err(Error::Arity(format!("cannot transport {a} along {}", f.as_partial_fn())));
        }
        let mut out = vec![self.zero; f.target()];
        for (i, &x) in v.iter().enumerate() {
            if let Some(j) = f.apply(i) {
                out[j] = x;
            }
        }
        Ok(Elem::Tuple(out))
    }

    fn mul(&self, a: &Elem, b: &ElemFamily) -> Result<Elem> {
        validate_mul_shape(a, b)?;
        let av = self.entries(a)?;
        let f = b.map();
        let mut out = vec![self.zero; f.source()];
        let mut fiber_pos = vec![0usize; f.target()];
        for (i, slot) in out.iter_mut().enumerate() {
            if let Some(j) = f.apply(i) {
                let bv = self.entries(b.component(j))?;
                *slot = self.mul[av[j]][bv[fiber_pos[j]]];
                fiber_pos[j] += 1;
            }
        }
        Ok(Elem::Tuple(out))
    }

    fn contract(&self, c: &Elem, b: &ElemFamily) -> Result<Elem> {
        validate_contract_shape(c, b)?;
        let cv = self.entries(c)?;
        let f = b.map();
        let mut out = vec![self.zero; f.target()];
        let mut fiber_pos = vec![0usize; f.target()];
        for (i, &ci) in cv.iter().enumerate() {
            if let Some(j) = f.apply(i) {
                let bv = self.entries(b.component(j))?;
                out[j] = self.add[out[j]][self.mul[ci][bv[fiber_pos[j]]]];
                fiber_pos[j] += 1;
            }
        }
        Ok(Elem::Tuple(out))
    }

    fn mul_many(&self, elems: &[Elem], b: &ElemFamily, out: &mut Vec<Elem>) -> Result<()> {
        let plan = self.family_plan(b)?;
        let n = b.map().target();
        let m = plan.len();
        out.resize(elems.len(), Elem::Zero { arity: 0 });
        for (a, slot) in elems.iter().zip(out.iter_mut()) {
            let av = self.entries(a)?;
            if av.len() != n {
                validate_mul_shape(a, b)?;
            }
            if !matches!(slot, Elem::Tuple(v) if v.len() == m) {
                *slot = Elem::Tuple(vec![self.zero; m]);
            }
            let Elem::Tuple(res) = slot else { unreachable!() };
            for (r, &(j, bv)) in res.iter_mut().zip(&plan) {
                *r = if j == usize::MAX { self.zero } else { self.mul[av[j]][bv] };
            }
        }
        Ok(())
    }

    fn contract_many(&self, elems: &[Elem], b: &ElemFamily, out: &mut Vec<Elem>) -> Result<()> {
        let plan = self.family_plan(b)?;
        let m = b.map().source();
        let n = b.map().target();
        out.resize(elems.len(), Elem::Zero { arity: 0 });
        for (c, slot) in elems.iter().zip(out.iter_mut()) {
            let cv = self.entries(c)?;
            if cv.len() != m {
                validate_contract_shape(c, b)?;
            }
            if !matches!(slot, Elem::Tuple(v) if v.len() == n) {
                *slot = Elem::Tuple(vec![self.zero; n]);
            }
            let Elem::Tuple(res) = slot else { unreachable!() };
            res.fill(self.zero);
            for (&ci, &(j, bv)) in cv.iter().zip(&plan) {
                if j != usize::MAX {
                    res[j] = self.add[res[j]][self.mul[ci][bv]];
                }
            }
        }
        Ok(())
    }

    fn ones(&self, k: usize) -> Option<Elem> {
        Some(Elem::Tuple(vec![self.one; k]))
    }

    fn render(&self, e: &Elem) -> String {
        match e {
            Elem::Tuple(v) => {
                let parts: Vec<&str> = v.iter().map(|&x| self.labels[x].as_str()).collect();
                format!("({})", parts.join(","))
            }
            _ => e.to_string(),
        }
    }
}

// ---------------------------------------------------------------------------
// The exact rational unit ball
// ---------------------------------------------------------------------------

/// `A_n = {x ∈ ℚ^n : Σ x_i² ≤ 1}` with the same coordinate formulas as a
/// rig; closure under both operations is the Cauchy–Schwarz inequality.
/// Not enumerable — checked by seeded sampling.
#[derive(Debug, Clone)]
pub struct RationalBall;

impl RationalBall {
    fn entries<'a>(&self, e: &'a Elem) -> Result<&'a [BigRational]> {
        match e {
            Elem::Ball(v) => Ok(v),
            other => Err(Error::Structure(format!("foreign element {other}"))),
        }
    }

    /// Squared Euclidean norm.
    pub fn norm_sq(v: &[BigRational]) -> BigRational {
        v.iter().map(|x| x * x).fold(BigRational::zero(), |acc, t| acc + t)
    }
}

impl GenRing for RationalBall {
    fn name(&self) -> String {
        "Z_R∩Q".to_string()
    }

    fn zero_empty(&self) -> Elem {
        Elem::Ball(Vec::new())
    }

    fn unit(&self) -> Elem {
        Elem::Ball(vec![BigRational::one()])
    }

    fn contains(&self, e: &Elem) -> bool {
        matches!(e, Elem::Ball(v) if Self::norm_sq(v) <= BigRational::one())
    }

    fn carrier(&self, arity: usize) -> Option<Vec<Elem>> {
        if arity == 0 {
            Some(vec![self.zero_empty()])
        } else {
            None
        }
    }

    fn sample(&self, arity: usize, rng: &mut ChaCha8Rng) -> Elem {
        let q = BigInt::from(rng.gen_range(1..=8i64));
        let mut v: Vec<BigRational> = (0..arity)
            .map(|_| {
                let p = BigInt::from(rng.gen_range(-8..=8i64));
                BigRational::new(p, q.clone())
            })
            .collect();
        let s = Self::norm_sq(&v);
        if s > BigRational::one() {
            for x in v.iter_mut() {
                *x /= s.clone();
            }
        }
        Elem::Ball(v)
    }

    fn transport(&self, f: &PartialBijection, a: &Elem) -> Result<Elem> {
        let v = self.entries(a)?;
        if v.len() != f.source() {
            return Err(Error::Arity(format!("cannot transport {a} along {}", f.as_partial_fn())));
        }
        let mut out = vec![BigRational::zero(); f.target()];
        for (i, x) in v.iter().enumerate() {
            if let Some(j) = f.apply(i) {
                out[j] = x.clone();
            }
        }
        Ok(Elem::Ball(out))
    }

    fn mul(&self, a: &Elem, b: &ElemFamily) -> Result<Elem> {
        validate_mul_shape(a, b)?;
        let av = self.entries(a)?;
        let f = b.map();
        let mut out = vec![BigRational::zero(); f.source()];
        let mut fiber_pos = vec![0usize; f.target()];
        for (i, slot) in out.iter_mut().enumerate() {
            if let Some(j) = f.apply(i) {
                let bv = self.entries(b.component(j))?;
                *slot = &av[j] * &bv[fiber_pos[j]];
                fiber_pos[j] += 1;
            }
        }
        Ok(Elem::Ball(out))
    }

    fn contract(&self, c: &Elem, b: &ElemFamily) -> Result<Elem> {
        validate_contract_shape(c, b)?;
        let cv = self.entries(c)?;
        let f = b.map();
        let mut out = vec![BigRational::zero(); f.target()];
        let mut fiber_pos = vec![0usize; f.target()];
        for (i, ci) in cv.iter().enumerate() {
            if let Some(j) = f.apply(i) {
                let bv = self.entries(b.component(j))?;
                out[j] += ci * &bv[fiber_pos[j]];
                fiber_pos[j] += 1;
            }
        }
        Ok(Elem::Ball(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genring::{scalar_mul, transpose_elem};
    use crate::fincat::PartialFn;
    use rand::SeedableRng;

    fn fam(ring: &dyn GenRing, f: PartialFn, comps: Vec<Elem>) -> ElemFamily {
        let _ = ring;
        ElemFamily::new(f, comps).unwrap()
    }

    fn t(v: &[usize]) -> Elem {
        Elem::Tuple(v.to_vec())
    }

    #[test]
    fn rig_mul_and_contract_worked_example() {
        let z6 = zmod(6).unwrap();
        let f = PartialFn::total(3, 2, vec![0, 0, 1]).unwrap();
        let b = fam(&z6, f, vec![t(&[1, 4]), t(&[5])]);
        let a = t(&[2, 3]);
        assert_eq!(z6.mul(&a, &b).unwrap(), t(&[2, 2, 3]));
        let c = t(&[1, 2, 3]);
        assert_eq!(z6.contract(&c, &b).unwrap(), t(&[3, 3]));
    }

    #[test]
    fn rig_partial_map_vanishes_off_domain_and_image() {
        let z6 = zmod(6).unwrap();
        let f = PartialFn::new(2, 2, vec![Some(1), None]).unwrap();
        let b = fam(&z6, f, vec![t(&[]), t(&[3])]);
        assert_eq!(z6.mul(&t(&[2, 5]), &b).unwrap(), t(&[3, 0]));
        assert_eq!(z6.contract(&t(&[4, 1]), &b).unwrap(), t(&[0, 0]));
    }

    /// The batched operations are a second code path; pin them to the
    /// pointwise ones over every map shape 3 → 2 and 0 → 0, every family,
    /// and every element, deliberately reusing output buffers across shapes
    /// of different arities to exercise the in-place overwrite.
    #[test]
    fn batched_ops_match_pointwise() {
        let z6 = zmod(6).unwrap();
        let mut shapes = crate::fincat::enumerate_partial_fns(3, 2).unwrap();
        shapes.extend(crate::fincat::enumerate_partial_fns(0, 0).unwrap());
        let mut mul_out = Vec::new();
        let mut con_out = Vec::new();
        let mut checked = 0u64;
        for f in shapes {
            let muls: Vec<Elem> = z6.carrier(f.target()).unwrap();
            let cons: Vec<Elem> = z6.carrier(f.source()).unwrap();
            for b in crate::genring::family_space(&z6, &f, 1 << 20).unwrap() {
                z6.mul_many(&muls, &b, &mut mul_out).unwrap();
                z6.contract_many(&cons, &b, &mut con_out).unwrap();
                assert_eq!(mul_out.len(), muls.len());
                assert_eq!(con_out.len(), cons.len());
                for (a, got) in muls.iter().zip(&mul_out) {
                    assert_eq!(&z6.mul(a, &b).unwrap(), got);
                    checked += 1;
                }
                for (c, got) in cons.iter().zip(&con_out) {
                    assert_eq!(&z6.contract(c, &b).unwrap(), got);
                    checked += 1;
                }
            }
        }
        assert!(checked > 100_000, "exercised {checked} comparisons");
    }

    #[test]
    fn basis_mul_routes_and_contract_detects_support() {
        let f_ring = f_ring();
        let f = PartialFn::total(2, 1, vec![0, 0]).unwrap();
        let b = fam(&f_ring, f, vec![Elem::Basis { arity: 2, coord: 1, tag: 0 }]);
        let a = Elem::Basis { arity: 1, coord: 0, tag: 0 };
        assert_eq!(
            f_ring.mul(&a, &b).unwrap(),
            Elem::Basis { arity: 2, coord: 1, tag: 0 }
        );
        let hit = Elem::Basis { arity: 2, coord: 1, tag: 0 };
        let miss = Elem::Basis { arity: 2, coord: 0, tag: 0 };
        assert_eq!(
            f_ring.contract(&hit, &b).unwrap(),
            Elem::Basis { arity: 1, coord: 0, tag: 0 }
        );
        assert_eq!(f_ring.contract(&miss, &b).unwrap(), Elem::Zero { arity: 1 });
    }

    #[test]
    fn tagged_scalars_multiply_in_the_monoid() {
        let fc2 = f_cyclic(2).unwrap();
        let g = Elem::Basis { arity: 1, coord: 0, tag: 1 };
        assert_eq!(scalar_mul(&fc2, &g, &g).unwrap(), fc2.unit());
        assert_eq!(transpose_elem(&fc2, &g).unwrap(), g);
    }

    #[test]
    fn carrier_counts() {
        assert_eq!(f_ring().carrier(3).unwrap().len(), 4);
        assert_eq!(f_cyclic(2).unwrap().carrier(3).unwrap().len(), 7);
        assert_eq!(zmod(6).unwrap().carrier(3).unwrap().len(), 216);
        assert_eq!(bool_rig().carrier(2).unwrap().len(), 4);
    }

    #[test]
    fn tropical_truncation_matches_boolean_tables() {
        let b = bool_rig();
        let t01 = tropical01();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(b.add_idx(i, j), t01.add_idx(i, j));
                assert_eq!(b.mul_idx(i, j), t01.mul_idx(i, j));
            }
        }
    }

    #[test]
    fn invalid_tables_are_rejected() {
        // Addition table that is not commutative.
        let bad = RigRing::new(
            "bad",
            vec!["0".into(), "1".into()],
            vec![vec![0, 1], vec![0, 1]],
            vec![vec![0, 0], vec![0, 1]],
            0,
            1,
        );
        assert!(matches!(bad, Err(Error::Validation { .. })));
        // Monoid whose index 0 is not the identity.
        let bad = FMonoidRing::new(
            "bad",
            vec!["a".into(), "b".into()],
            vec![vec![1, 0], vec![0, 1]],
        );
        assert!(matches!(bad, Err(Error::Validation { .. })));
    }

    #[test]
    fn ball_operations_stay_in_the_ball() {
        let ball = RationalBall;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let f = crate::genring::random_partial_fn(&mut rng, 3, 2);
            let a = ball.sample(2, &mut rng);
            let b = crate::genring::random_family(&ball, &f, &mut rng);
            let c = ball.sample(3, &mut rng);
            assert!(ball.contains(&a));
            let prod = ball.mul(&a, &b).unwrap();
            let contr = ball.contract(&c, &b).unwrap();
            assert!(ball.contains(&prod), "product left the ball: {prod}");
            assert!(ball.contains(&contr), "contraction left the ball: {contr}");
        }
    }

    #[test]
    fn zero_is_transport_of_the_empty_map() {
        let z6 = zmod(6).unwrap();
        assert_eq!(z6.zero(3), t(&[0, 0, 0]));
        let f = f_ring();
        assert_eq!(f.zero(2), Elem::Zero { arity: 2 });
    }
}
