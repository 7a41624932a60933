//! Generalized rings: self-dual algebra over the finite-set category.
//!
//! A generalized ring `A` assigns to every finite set `n` a pointed carrier
//! `A_n` and to every partial bijection a transport map, and carries two
//! operations indexed by an arbitrary partial function `f : m → n`:
//!
//! * multiplication `◁ : A_n × A_f → A_m`, and
//! * contraction `⫽ : A_m × A_f → A_n`,
//!
//! where `A_f = ∏_{j∈n} A_{f⁻¹(j)}` is a *family*: one element per target
//! point, of arity the fiber size ([`ElemFamily`]).  Multiplication behaves
//! like substitution into an operad; contraction is its adjoint partner
//! (think "inner product against the family").  Six axiom families tie them
//! together; see [`axioms`].
//!
//! Carriers use one universal element representation ([`Elem`]) so that
//! instances behind `dyn GenRing` compose with the module theory downstream.
//! Fibers of a map are always identified with `{0, …, k-1}` through their
//! increasing enumeration; every operation in this crate sticks to that
//! convention, so family components can be moved between maps positionally.

pub mod axioms;
pub mod expr;
pub mod hom;
pub mod instances;

use crate::error::{Error, Result};
use crate::fincat::{FiberProduct, PartialBijection, PartialFn};
use num_rational::BigRational;
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::sync::Arc;

/// An element of some carrier `A_n`.  The variants cover the shipped
/// instance zoo; elements are only ever compared within a single instance.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Elem {
    /// The basepoint of `A_n` for basis-style carriers.
    Zero { arity: usize },
    /// `coord`-th basis vector with a monoid tag (`tag = 0` when untagged).
    Basis { arity: usize, coord: usize, tag: usize },
    /// A coordinate vector over a finite rig; entries index the rig table.
    Tuple(Vec<usize>),
    /// An exact rational vector (unit-ball instance).
    Ball(Vec<BigRational>),
}

impl Elem {
    pub fn arity(&self) -> usize {
        match self {
            Elem::Zero { arity } => *arity,
            Elem::Basis { arity, .. } => *arity,
            Elem::Tuple(v) => v.len(),
            Elem::Ball(v) => v.len(),
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Zero { arity } => write!(f, "0_{arity}"),
            Elem::Basis { coord, tag, .. } => {
                if *tag == 0 {
                    write!(f, "δ{coord}")
                } else {
                    write!(f, "δ{coord}·#{tag}")
                }
            }
            Elem::Tuple(v) => {
                write!(f, "(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "#{x}")?;
                }
                write!(f, ")")
            }
            Elem::Ball(v) => {
                write!(f, "(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A family over `f : m → n`: one element per point of `n`, the `j`-th of
/// arity `|f⁻¹(j)|`.  Families are what multiplication and contraction eat
/// on the right.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ElemFamily {
    map: PartialFn,
    components: Vec<Elem>,
}

impl ElemFamily {
    pub fn new(map: PartialFn, components: Vec<Elem>) -> Result<Self> {
        if components.len() != map.target() {
            return Err(Error::Arity(format!(
                "family over {map} needs {} components, got {}",
                map.target(),
                components.len()
            )));
        }
        for (j, c) in components.iter().enumerate() {
            let want = map.fiber_size(j);
            if c.arity() != want {
                return Err(Error::Arity(format!(
                    "family component {j} over {map} has arity {}, fiber has size {want}",
                    c.arity()
                )));
            }
        }
        Ok(ElemFamily { map, components })
    }

    /// The element `a ∈ A_n` viewed as the one-component family over the
    /// total collapse `n → 1`.
    pub fn of_elem(a: Elem) -> Self {
        let n = a.arity();
        let map = PartialFn::total(n, 1, vec![0; n]).expect("collapse map");
        ElemFamily { map, components: vec![a] }
    }

    /// Arity-1 components laid over the identity of `n`.
    pub fn scalars(components: Vec<Elem>) -> Result<Self> {
        let n = components.len();
        if let Some(c) = components.iter().find(|c| c.arity() != 1) {
            return Err(Error::Arity(format!("scalar family needs arity-1 entries, got {c}")));
        }
        Ok(ElemFamily { map: PartialFn::identity(n), components })
    }

    /// The unit family `(1)_{j∈n}` over the identity of `n`.
    pub fn units(ring: &dyn GenRing, n: usize) -> Self {
        ElemFamily { map: PartialFn::identity(n), components: vec![ring.unit(); n] }
    }

    /// Family of units/zeros over a partial bijection: the singleton fibers
    /// carry `1`, the empty ones carry the arity-0 zero.  Contracting against
    /// it recovers the transport along the bijection.
    pub fn units_along(ring: &dyn GenRing, f: &PartialBijection) -> Self {
        let pf = f.as_partial_fn().clone();
        let components = (0..pf.target())
            .map(|j| if pf.fiber_size(j) == 1 { ring.unit() } else { ring.zero_empty() })
            .collect();
        ElemFamily { map: pf, components }
    }

    pub fn map(&self) -> &PartialFn {
        &self.map
    }

    pub fn components(&self) -> &[Elem] {
        &self.components
    }

    pub fn component(&self, j: usize) -> &Elem {
        &self.components[j]
    }
}

impl fmt::Display for ElemFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}; ", self.map)?;
        for (j, c) in self.components.iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// Shared handle to an instance.
pub type RingRef = Arc<dyn GenRing>;

/// A generalized ring instance.
///
/// Implementations must keep carriers closed under every operation and keep
/// the operations positional with respect to the increasing enumeration of
/// fibers.  `carrier` returns `None` when the instance is not enumerable
/// (then `sample` must work instead).
pub trait GenRing: fmt::Debug + Send + Sync {
    fn name(&self) -> String;

    /// The unique element of `A_∅`.
    fn zero_empty(&self) -> Elem;

    /// The multiplicative unit in `A_1`.
    fn unit(&self) -> Elem;

    fn contains(&self, e: &Elem) -> bool;

    fn carrier(&self, arity: usize) -> Option<Vec<Elem>>;

    fn sample(&self, arity: usize, rng: &mut ChaCha8Rng) -> Elem;

    /// Functorial action along a partial bijection.
    fn transport(&self, f: &PartialBijection, a: &Elem) -> Result<Elem>;

    /// Multiplication `A_n × A_f → A_m` for `f : m → n`.
    fn mul(&self, a: &Elem, b: &ElemFamily) -> Result<Elem>;

    /// Contraction `A_m × A_f → A_n` for `f : m → n`.
    fn contract(&self, c: &Elem, b: &ElemFamily) -> Result<Elem>;

    /// Batched multiplication: overwrites `out` so that
    /// `out[i] = elems[i] ◁ b` and `out.len() == elems.len()`, reusing
    /// existing allocations in `out` where possible.  The default delegates
    /// to [`GenRing::mul`]; table-driven instances override it to hoist the
    /// family walk out of the loop, which is what makes the exhaustive
    /// sweeps tractable.
    fn mul_many(&self, elems: &[Elem], b: &ElemFamily, out: &mut Vec<Elem>) -> Result<()> {
        out.clear();
        for e in elems {
            out.push(self.mul(e, b)?);
        }
        Ok(())
    }

    /// Batched contraction: overwrites `out` so that
    /// `out[i] = elems[i] ⫽ b` and `out.len() == elems.len()`.
    fn contract_many(&self, elems: &[Elem], b: &ElemFamily, out: &mut Vec<Elem>) -> Result<()> {
        out.clear();
        for e in elems {
            out.push(self.contract(e, b)?);
        }
        Ok(())
    }

    /// The all-units element of `A_k`, when the instance has one: an element
    /// `u` with `u ◁ (x_1,…,x_k) = (x_1,…,x_k)` coordinatewise.  Exists for
    /// every `k` in table-driven rigs; in general only at arities 0 and 1
    /// (the empty element and the unit).  Used to assemble unit families
    /// over non-injective maps.
    fn ones(&self, k: usize) -> Option<Elem> {
        match k {
            0 => Some(self.zero_empty()),
            1 => Some(self.unit()),
            _ => None,
        }
    }

    /// Zero of `A_n`, derived from functoriality: transport of the arity-0
    /// zero along the empty partial bijection into `n`.
    fn zero(&self, arity: usize) -> Elem {
        self.transport(&PartialBijection::empty(0, arity), &self.zero_empty())
            .expect("transport of zero along the empty map")
    }

    fn is_enumerable(&self) -> bool {
        self.carrier(1).is_some()
    }

    /// Pretty element rendering with instance labels where available.
    fn render(&self, e: &Elem) -> String {
        e.to_string()
    }
}

pub(crate) fn validate_mul_shape(a: &Elem, b: &ElemFamily) -> Result<()> {
    if a.arity() != b.map().target() {
        return Err(Error::Arity(format!(
            "multiplication wants the left arity {} to match the family target {}",
            a.arity(),
            b.map().target()
        )));
    }
    Ok(())
}

pub(crate) fn validate_contract_shape(c: &Elem, b: &ElemFamily) -> Result<()> {
    if c.arity() != b.map().source() {
        return Err(Error::Arity(format!(
            "contraction wants the left arity {} to match the family source {}",
            c.arity(),
            b.map().source()
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Derived operations on families
// ---------------------------------------------------------------------------

/// Restrict a family over `f : m → n` to the part sitting over a sub-target
/// (ascending point list), renumbering sources by position.
fn restrict_family(b: &ElemFamily, sub_target: &[usize]) -> ElemFamily {
    let mut sub_source: Vec<usize> = Vec::new();
    for &j in sub_target {
        sub_source.extend(b.map.fiber(j));
    }
    sub_source.sort_unstable();
    let map = b.map.restrict(&sub_source, sub_target);
    let components = sub_target.iter().map(|&j| b.components[j].clone()).collect();
    ElemFamily { map, components }
}

/// Fiberwise multiplication of families: `a` over `g : n → q` times `b` over
/// `f : m → n` lands over `g∘f`.  Component `i` is `a_i ◁ (b_j)_{g(j)=i}`.
pub fn mul_family(ring: &dyn GenRing, a: &ElemFamily, b: &ElemFamily) -> Result<ElemFamily> {
    if b.map.target() != a.map.source() {
        return Err(Error::Arity(format!(
            "family multiplication wants composable maps; got {} then {}",
            b.map, a.map
        )));
    }
    let composite = a.map.compose(&b.map)?;
    let mut components = Vec::with_capacity(a.map.target());
    for i in 0..a.map.target() {
        let g_fiber = a.map.fiber(i);
        let sub = restrict_family(b, &g_fiber);
        components.push(ring.mul(&a.components[i], &sub)?);
    }
    ElemFamily::new(composite, components)
}

/// Fiberwise contraction: `c` over `g∘f : m → q` against `b` over
/// `f : m → n` lands over `g : n → q`.  The caller must supply `g`; it is
/// validated against the composite.
pub fn contract_family(
    ring: &dyn GenRing,
    c: &ElemFamily,
    b: &ElemFamily,
    g: &PartialFn,
) -> Result<ElemFamily> {
    let composite = g.compose(&b.map)?;
    if &composite != c.map() {
        return Err(Error::Arity(format!(
            "family contraction wants the left family to live over g∘f = {composite}, got {}",
            c.map
        )));
    }
    let mut components = Vec::with_capacity(g.target());
    for i in 0..g.target() {
        let g_fiber = g.fiber(i);
        let sub = restrict_family(b, &g_fiber);
        // The i-th component of c has arity |(g∘f)⁻¹(i)| = |f⁻¹(g⁻¹(i))|,
        // matching the source of the restricted family.
        components.push(ring.contract(&c.components[i], &sub)?);
    }
    ElemFamily::new(g.clone(), components)
}

/// Pull a family over `f_a : k → m` back along `f_c : n → m`: the result
/// lives over the left projection of the fiber product `n ×_m k` and copies
/// the component over `f_c(j)` to the point `j` (zero of arity 0 where
/// `f_c` is undefined or the fiber is empty).
pub fn pullback_left(
    ring: &dyn GenRing,
    fp: &FiberProduct,
    a: &ElemFamily,
    f_c: &PartialFn,
) -> Result<ElemFamily> {
    let mut components = Vec::with_capacity(f_c.source());
    for j in 0..f_c.source() {
        match f_c.apply(j) {
            Some(mu) => components.push(a.components[mu].clone()),
            None => components.push(ring.zero_empty()),
        }
    }
    // fp.left is total p → n; its fiber over j enumerates the pairs (j, y)
    // in lexicographic order, matching the increasing order of f_a⁻¹(f_c(j)).
    ElemFamily::new(fp.left.clone(), components)
}

/// Mirror of [`pullback_left`] for the right projection.
pub fn pullback_right(
    ring: &dyn GenRing,
    fp: &FiberProduct,
    c: &ElemFamily,
    f_a: &PartialFn,
) -> Result<ElemFamily> {
    let mut components = Vec::with_capacity(f_a.source());
    for y in 0..f_a.source() {
        match f_a.apply(y) {
            Some(mu) => components.push(c.components[mu].clone()),
            None => components.push(ring.zero_empty()),
        }
    }
    ElemFamily::new(fp.right.clone(), components)
}

/// Relabel a family over `f : m → n` by permutations of both endpoints,
/// producing the family over `σ_n ∘ f ∘ σ_m⁻¹` with components transported
/// along the induced fiber renumberings.
pub fn relabel_family(
    ring: &dyn GenRing,
    b: &ElemFamily,
    sigma_m: &PartialBijection,
    sigma_n: &PartialBijection,
) -> Result<ElemFamily> {
    let f = &b.map;
    let new_map = sigma_n
        .as_partial_fn()
        .compose(&f.compose(sigma_m.transpose().as_partial_fn())?)?;
    let mut components = vec![ring.zero_empty(); new_map.target()];
    for j in 0..f.target() {
        let j_new = sigma_n.apply(j).expect("total permutation");
        let old_fiber = f.fiber(j);
        let new_fiber = new_map.fiber(j_new);
        // Positional permutation induced by σ_m between the two fiber
        // enumerations.
        let perm: Vec<usize> = old_fiber
            .iter()
            .map(|&x| {
                let x_new = sigma_m.apply(x).expect("total permutation");
                new_fiber.iter().position(|&z| z == x_new).expect("fiber image")
            })
            .collect();
        let pi = PartialBijection::permutation(perm)?;
        components[j_new] = ring.transport(&pi, &b.components[j])?;
    }
    ElemFamily::new(new_map, components)
}

// ---------------------------------------------------------------------------
// Scalar helpers
// ---------------------------------------------------------------------------

/// `s ◁ a` for a scalar `s ∈ A_1` and `a ∈ A_n`.
pub fn scalar_times(ring: &dyn GenRing, s: &Elem, a: &Elem) -> Result<Elem> {
    ring.mul(s, &ElemFamily::of_elem(a.clone()))
}

/// Monoid multiplication on `A_1`: `a ◁ (b)` over the identity of `1`.
pub fn scalar_mul(ring: &dyn GenRing, a: &Elem, b: &Elem) -> Result<Elem> {
    ring.mul(a, &ElemFamily::scalars(vec![b.clone()])?)
}

/// Transpose of a scalar: `a^t = 1 ⫽ (a)`.
pub fn transpose_elem(ring: &dyn GenRing, a: &Elem) -> Result<Elem> {
    if a.arity() != 1 {
        return Err(Error::Arity(format!("transpose wants arity 1, got {}", a.arity())));
    }
    ring.contract(&ring.unit(), &ElemFamily::scalars(vec![a.clone()])?)
}

/// The symmetric scalars `{a ∈ A_1 : a^t = a}`, in carrier order.
pub fn symmetric_elements(ring: &dyn GenRing) -> Result<Vec<Elem>> {
    let carrier = ring
        .carrier(1)
        .ok_or_else(|| Error::NotEnumerable(format!("{} has no enumerable A_1", ring.name())))?;
    let mut out = Vec::new();
    for a in carrier {
        if transpose_elem(ring, &a)? == a {
            out.push(a);
        }
    }
    Ok(out)
}

/// Enumerate the family space `A_f`: the product of the fiber carriers.
/// `budget` caps the product size.
pub fn family_space(ring: &dyn GenRing, f: &PartialFn, budget: u64) -> Result<Vec<ElemFamily>> {
    let mut fibers: Vec<Vec<Elem>> = Vec::with_capacity(f.target());
    let mut count: u64 = 1;
    for j in 0..f.target() {
        let size = f.fiber_size(j);
        let c = ring.carrier(size).ok_or_else(|| {
            Error::NotEnumerable(format!("{} has no enumerable A_{}", ring.name(), size))
        })?;
        count = count.saturating_mul(c.len() as u64);
        fibers.push(c);
    }
    if count > budget {
        return Err(Error::Resource(format!(
            "family space over {f} has {count} points, budget is {budget}"
        )));
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut idx = vec![0usize; f.target()];
    loop {
        let components: Vec<Elem> =
            idx.iter().enumerate().map(|(j, &k)| fibers[j][k].clone()).collect();
        out.push(ElemFamily::new(f.clone(), components)?);
        let mut j = f.target();
        loop {
            if j == 0 {
                return Ok(out);
            }
            idx[j - 1] += 1;
            if idx[j - 1] < fibers[j - 1].len() {
                break;
            }
            idx[j - 1] = 0;
            j -= 1;
        }
    }
}

/// Carrier fetch with a uniform error for non-enumerable instances.
pub fn carrier_or_err(ring: &dyn GenRing, arity: usize) -> Result<Vec<Elem>> {
    ring.carrier(arity).ok_or_else(|| {
        Error::NotEnumerable(format!("{} has no enumerable A_{}", ring.name(), arity))
    })
}

/// Random partial function for the sampled checkers.
pub fn random_partial_fn(rng: &mut ChaCha8Rng, m: usize, n: usize) -> PartialFn {
    use rand::Rng;
    let map = (0..m)
        .map(|_| {
            if n == 0 || rng.gen_ratio(1, 4) {
                None
            } else {
                Some(rng.gen_range(0..n))
            }
        })
        .collect();
    PartialFn::new(m, n, map).expect("sampled map in range")
}

/// Random partial bijection: a random subset of the source sent to distinct
/// shuffled targets.
pub fn random_partial_bijection(rng: &mut ChaCha8Rng, m: usize, n: usize) -> PartialBijection {
    use rand::seq::SliceRandom;
    use rand::Rng;
    let mut targets: Vec<usize> = (0..n).collect();
    targets.shuffle(rng);
    let mut map = vec![None; m];
    let mut next = 0usize;
    for slot in map.iter_mut() {
        if next < n && rng.gen_ratio(3, 4) {
            *slot = Some(targets[next]);
            next += 1;
        }
    }
    PartialBijection::new(m, n, map).expect("distinct sampled targets")
}

/// Random family over `f` via the instance sampler.
pub fn random_family(ring: &dyn GenRing, f: &PartialFn, rng: &mut ChaCha8Rng) -> ElemFamily {
    let components =
        (0..f.target()).map(|j| ring.sample(f.fiber_size(j), rng)).collect::<Vec<_>>();
    ElemFamily::new(f.clone(), components).expect("sampled components have fiber arities")
}
