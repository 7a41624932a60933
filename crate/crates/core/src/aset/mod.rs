//! Module theory over a generalized ring: A-sets.
//!
//! An A-set is a pointed set `M` with evaluation maps
//! `A_n × M^n × A_n → M`, written `⟨b, (x_1…x_n), d⟩_n`, satisfying
//! associativity, unit, naturality, and commutativity laws that mirror the
//! ring's own axiom families.  Over a classical commutative ring the notion
//! coincides with modules (`⟨b, x, d⟩ = Σ_i b_i·d_i·x_i`); over the initial
//! instance it coincides with pointed sets.
//!
//! The module provides:
//!
//! * [`ASetObj`] — a finite A-set: explicit carrier plus an action oracle,
//!   which may be partial for truncated quotient objects;
//! * constructors: [`ring_carrier`], [`f_pointed_set`], [`cyclic_module`],
//!   [`product`], and [`restrict_scalars`];
//! * [`check_aset_axioms`] — law verification with witnesses; when full
//!   family enumeration is out of budget it switches to generating
//!   sub-sweeps (unit families over every map plus one-hot scalar families),
//!   which generate the full law set under the ring axioms;
//! * [`hom_maps`], [`internal_hom`], [`find_iso`] — hom-set enumeration,
//!   the internal hom object, and isomorphism search;
//! * [`quotient`] — congruence-closure quotients: free objects, tensor
//!   products, coproducts, and base change along a ring homomorphism.

pub mod quotient;

pub use quotient::{
    coproduct, coproduct_many, extend_scalars, free_aset, free_extension, pushout_aset,
    quotient_aset, tensor, tensor_pushout, tensor_sum, tensor_sum_multi, universal_extension,
    StabFlag, Term, TermQuotient,
};

use crate::error::{Error, Result};
use crate::fincat::{enumerate_partial_fns, PartialFn};
use crate::genring::hom::GRHom;
use crate::genring::instances::f_ring;
use crate::genring::{carrier_or_err, family_space, Elem, ElemFamily, GenRing, RingRef};
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// Action oracle of a finite A-set: `(b, (x_1…x_n), d) ↦ ⟨b, x, d⟩_n`.
/// Carrier elements travel as indices into the label list; index 0 is always
/// the basepoint.  `None` means the value falls outside the object's
/// truncation (it is counted, never silently dropped) — a law violation is
/// always reported through values, not through `None`.
pub type ActionFn = Arc<dyn Fn(&Elem, &[usize], &Elem) -> Option<usize> + Send + Sync>;

/// A finite A-set with an explicit carrier.
#[derive(Clone)]
pub struct ASetObj {
    ring: RingRef,
    name: String,
    labels: Vec<String>,
    action: ActionFn,
}

impl fmt::Debug for ASetObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ASetObj")
            .field("ring", &self.ring.name())
            .field("name", &self.name)
            .field("size", &self.labels.len())
            .finish()
    }
}

impl ASetObj {
    /// Wrap an action closure.  `labels[0]` names the basepoint.
    pub fn new(
        ring: &RingRef,
        name: &str,
        labels: Vec<String>,
        action: impl Fn(&Elem, &[usize], &Elem) -> Option<usize> + Send + Sync + 'static,
    ) -> Result<Self> {
        Self::from_action_fn(ring, name, labels, Arc::new(action))
    }

    pub fn from_action_fn(
        ring: &RingRef,
        name: &str,
        labels: Vec<String>,
        action: ActionFn,
    ) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::validation("aset.labels", "carrier needs at least a basepoint"));
        }
        Ok(ASetObj { ring: Arc::clone(ring), name: name.to_string(), labels, action })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Evaluate `⟨b, v, d⟩`.  `b` and `d` must lie in `A_n` for `n = v.len()`.
    pub fn act(&self, b: &Elem, v: &[usize], d: &Elem) -> Option<usize> {
        (self.action)(b, v, d)
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

/// The ring acting on its own arity-1 carrier: `⟨b, (x_i), d⟩ = (b ◁ (x_i)) ⫽ (d)`,
/// where `(x_i)` is the scalar family over the identity and the final
/// contraction collapses `n → 1`.  This is the free object on one generator.
pub fn ring_carrier(ring: &RingRef) -> Result<ASetObj> {
    let mut elems = carrier_or_err(ring.as_ref(), 1)?;
    let zero = ring.zero(1);
    let pos = elems.iter().position(|e| *e == zero).ok_or_else(|| {
        Error::validation("aset.carrier", "arity-1 carrier does not contain the zero element")
    })?;
    elems.swap(0, pos);
    let labels = elems.iter().map(|e| ring.render(e)).collect();
    let index: HashMap<Elem, usize> =
        elems.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    let r = Arc::clone(ring);
    let name = format!("{}[1]", ring.name());
    ASetObj::new(ring, &name, labels, move |b, v, d| {
        let comps: Vec<Elem> = v.iter().map(|&i| elems[i].clone()).collect();
        let fam = ElemFamily::scalars(comps).ok()?;
        let bx = r.mul(b, &fam).ok()?;
        let res = r.contract(&bx, &ElemFamily::of_elem(d.clone())).ok()?;
        index.get(&res).copied()
    })
}

/// The unique action of the initial instance on a pointed set:
/// `⟨b, x, d⟩ = x_i` when `b = d = δ_i`, and the basepoint otherwise.
pub fn f_pointed_set(name: &str, labels: Vec<String>) -> Result<ASetObj> {
    let ring: RingRef = Arc::new(f_ring());
    ASetObj::new(&ring, name, labels, move |b, v, d| match (b, d) {
        (Elem::Basis { coord: i, .. }, Elem::Basis { coord: j, .. }) => {
            if i == j {
                v.get(*i).copied()
            } else {
                Some(0)
            }
        }
        (Elem::Zero { .. }, _) | (_, Elem::Zero { .. }) => Some(0),
        _ => None,
    })
}

/// The cyclic module of the given modulus over a modular-arithmetic
/// instance: carrier `{0, …, modulus−1}`, action `Σ_i b_i·d_i·x_i mod m`.
/// Requires the modulus to divide the instance's own modulus, which is
/// exactly the condition for the laws to hold.
pub fn cyclic_module(ring: &RingRef, modulus: usize) -> Result<ASetObj> {
    let n = carrier_or_err(ring.as_ref(), 1)?.len();
    if modulus == 0 || n % modulus != 0 {
        return Err(Error::validation(
            "aset.modulus",
            format!("{modulus} does not divide the instance size {n}"),
        ));
    }
    let labels = (0..modulus).map(|i| i.to_string()).collect();
    let name = format!("Z/{modulus} over {}", ring.name());
    ASetObj::new(ring, &name, labels, move |b, v, d| {
        let (Elem::Tuple(bv), Elem::Tuple(dv)) = (b, d) else { return None };
        if bv.len() != v.len() || dv.len() != v.len() {
            return None;
        }
        let mut s = 0usize;
        for ((&bi, &di), &xi) in bv.iter().zip(dv).zip(v) {
            s = (s + bi * di % modulus * xi) % modulus;
        }
        Some(s)
    })
}

/// Binary product: carrier `M × N`, componentwise action.  The categorical
/// product in A-sets.
pub fn product(m: &ASetObj, n: &ASetObj) -> Result<ASetObj> {
    if m.ring().name() != n.ring().name() {
        return Err(Error::Arity(format!(
            "product endpoints live over different instances: {} vs {}",
            m.ring().name(),
            n.ring().name()
        )));
    }
    let mut labels = Vec::with_capacity(m.size() * n.size());
    for i in 0..m.size() {
        for j in 0..n.size() {
            labels.push(format!("({},{})", m.label(i), n.label(j)));
        }
    }
    let name = format!("{} × {}", m.name(), n.name());
    let (mc, nc) = (m.clone(), n.clone());
    let nsz = n.size();
    ASetObj::new(m.ring(), &name, labels, move |b, v, d| {
        let vm: Vec<usize> = v.iter().map(|&x| x / nsz).collect();
        let vn: Vec<usize> = v.iter().map(|&x| x % nsz).collect();
        let im = mc.act(b, &vm, d)?;
        let jn = nc.act(b, &vn, d)?;
        Some(im * nsz + jn)
    })
}

/// Restriction of scalars along `φ : B → A`: the same carrier with
/// `⟨b, x, d⟩_B := ⟨φ(b), x, φ(d)⟩_A`.
pub fn restrict_scalars(phi: &GRHom, b_ring: &RingRef, n: &ASetObj) -> Result<ASetObj> {
    phi.require_endpoints(&b_ring.name(), &n.ring().name())?;
    let inner = n.clone();
    let hom = phi.clone();
    let name = format!("{}_* {}", phi.name, n.name());
    ASetObj::new(b_ring, &name, n.labels().to_vec(), move |b, v, d| {
        let fb = hom.apply(b).ok()?;
        let fd = hom.apply(d).ok()?;
        inner.act(&fb, v, &fd)
    })
}

// ---------------------------------------------------------------------------
// Axiom checking
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct ASetCheckConfig {
    /// Arity bound for coefficients and map shapes.
    pub bound: usize,
    /// Per-family budget on action-oracle evaluations.
    pub act_budget: u64,
    /// Force full family sweeps even when the generating sub-sweeps would be
    /// chosen (used to cross-check the two strategies on small instances).
    pub full_families: bool,
    /// Maximum recorded witnesses per family.
    pub witness_cap: usize,
    /// Cap on enumerated hom-set candidates.
    pub enum_budget: u64,
    /// Node cap for isomorphism search.
    pub search_budget: u64,
}

impl Default for ASetCheckConfig {
    fn default() -> Self {
        ASetCheckConfig {
            bound: 2,
            act_budget: 1 << 26,
            full_families: false,
            witness_cap: 3,
            enum_budget: 1 << 20,
            search_budget: 1 << 22,
        }
    }
}

/// Verification report for one law family of one A-set.
#[derive(Clone, Debug, Serialize)]
pub struct ASetFamilyReport {
    pub family: String,
    /// "full" when every family pair was enumerated, "generating" when the
    /// unit-family and one-hot sub-sweeps were used instead.
    pub strategy: String,
    pub shapes: u64,
    pub skipped_shapes: u64,
    /// Comparisons made (each compares two complete action evaluations).
    pub checked: u64,
    /// Comparisons skipped because the action was outside its truncation.
    pub skipped_values: u64,
    pub violations: Vec<String>,
}

impl ASetFamilyReport {
    fn new(family: &str, strategy: &str) -> Self {
        ASetFamilyReport {
            family: family.to_string(),
            strategy: strategy.to_string(),
            shapes: 0,
            skipped_shapes: 0,
            checked: 0,
            skipped_values: 0,
            violations: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Full axiom report for one A-set.
#[derive(Clone, Debug, Serialize)]
pub struct ASetReport {
    pub aset: String,
    pub ring: String,
    pub bound: usize,
    pub families: Vec<ASetFamilyReport>,
}

impl ASetReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(ASetFamilyReport::passed)
    }

    pub fn fully_checked(&self) -> bool {
        self.families.iter().all(|f| f.skipped_shapes == 0 && f.skipped_values == 0)
    }

    pub fn total_checked(&self) -> u64 {
        self.families.iter().map(|f| f.checked).sum()
    }
}

struct Ctx<'a> {
    obj: &'a ASetObj,
    ring: &'a dyn GenRing,
    carriers: Vec<Vec<Elem>>,
    size: usize,
}

impl<'a> Ctx<'a> {
    fn new(obj: &'a ASetObj, bound: usize) -> Result<Self> {
        let ring = obj.ring().as_ref();
        let carriers = (0..=bound)
            .map(|k| carrier_or_err(ring, k))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ctx { obj, ring, carriers, size: obj.size() })
    }

    fn tuples(&self, k: usize) -> u128 {
        (self.size as u128).pow(k as u32)
    }

    /// All-units family over `f`, when the instance has the needed elements.
    fn ones_family(&self, f: &PartialFn) -> Option<ElemFamily> {
        let comps = (0..f.target())
            .map(|j| self.ring.ones(f.fiber_size(j)))
            .collect::<Option<Vec<_>>>()?;
        ElemFamily::new(f.clone(), comps).ok()
    }
}

/// Constant family `(x, x, …, x)` over the projection `n·m → n`
/// (row-major grids: position `j·m + i ↦ j`).
fn const_family(x: &Elem, n: usize, m: usize) -> Result<ElemFamily> {
    let table: Vec<usize> = (0..n * m).map(|g| g / m).collect();
    let proj = PartialFn::total(n * m, n, table)?;
    ElemFamily::new(proj, vec![x.clone(); n])
}

/// Visit every tuple in `{0..size}^k` in lexicographic order.
pub(crate) fn for_each_tuple(size: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    if size == 0 && k > 0 {
        return;
    }
    let mut t = vec![0usize; k];
    loop {
        visit(&t);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            t[i - 1] += 1;
            if t[i - 1] < size {
                break;
            }
            t[i - 1] = 0;
            i -= 1;
        }
    }
}

struct Budget {
    left: u64,
}

impl Budget {
    fn charge(&mut self, cost: u128) -> bool {
        if cost > self.left as u128 {
            return false;
        }
        self.left -= cost as u64;
        true
    }
}

fn record(report: &mut ASetFamilyReport, cap: usize, msg: String) {
    if report.violations.len() < cap {
        report.violations.push(msg);
    }
}

/// Compare two optional action values, updating counters and recording a
/// witness on mismatch.
#[allow(clippy::too_many_arguments)]
fn compare(
    report: &mut ASetFamilyReport,
    cap: usize,
    obj: &ASetObj,
    lhs: Option<usize>,
    rhs: Option<usize>,
    describe: impl FnOnce() -> String,
) {
    match (lhs, rhs) {
        (Some(a), Some(b)) => {
            report.checked += 1;
            if a != b {
                record(
                    report,
                    cap,
                    format!("{}: {} ≠ {}", describe(), obj.label(a), obj.label(b)),
                );
            }
        }
        _ => report.skipped_values += 1,
    }
}

fn check_pointedness(ctx: &Ctx<'_>, cfg: &ASetCheckConfig) -> ASetFamilyReport {
    let mut rep = ASetFamilyReport::new("pointedness", "full");
    let cap = cfg.witness_cap;
    let z0 = ctx.ring.zero(0);
    rep.shapes += 1;
    match ctx.obj.act(&z0, &[], &z0) {
        Some(0) => rep.checked += 1,
        Some(x) => {
            rep.checked += 1;
            record(&mut rep, cap, format!("empty evaluation gives {}, not the basepoint", ctx.obj.label(x)));
        }
        None => rep.skipped_values += 1,
    }
    // Zero coefficients absorb: ⟨0, v, d⟩ = ⟨d, v, 0⟩ = basepoint.  This is a
    // consequence of the other families, checked directly because every
    // downstream construction leans on it.
    for k in 0..=cfg.bound {
        rep.shapes += 1;
        let zk = ctx.ring.zero(k);
        for d in &ctx.carriers[k] {
            for_each_tuple(ctx.size, k, |v| {
                for (which, b, e) in [("left", &zk, d), ("right", d, &zk)] {
                    match ctx.obj.act(b, v, e) {
                        Some(0) => rep.checked += 1,
                        Some(x) => {
                            rep.checked += 1;
                            record(
                                &mut rep,
                                cap,
                                format!(
                                    "{which} zero with d={}, v={:?} gives {}, not the basepoint",
                                    ctx.ring.render(d),
                                    v,
                                    ctx.obj.label(x)
                                ),
                            );
                        }
                        None => rep.skipped_values += 1,
                    }
                }
            });
        }
    }
    rep
}

fn check_unit(ctx: &Ctx<'_>, cfg: &ASetCheckConfig) -> ASetFamilyReport {
    let mut rep = ASetFamilyReport::new("unit", "full");
    rep.shapes = 1;
    let one = ctx.ring.unit();
    for x in 0..ctx.size {
        match ctx.obj.act(&one, &[x], &one) {
            Some(y) => {
                rep.checked += 1;
                if y != x {
                    record(
                        &mut rep,
                        cfg.witness_cap,
                        format!("⟨1, {}, 1⟩ = {}", ctx.obj.label(x), ctx.obj.label(y)),
                    );
                }
            }
            None => rep.skipped_values += 1,
        }
    }
    rep
}

/// Shapes for associativity and naturality: every partial map `f : m → n`
/// with `m, n ≤ bound`.
fn map_shapes(bound: usize) -> Result<Vec<PartialFn>> {
    let mut shapes = Vec::new();
    for m in 0..=bound {
        for n in 0..=bound {
            shapes.extend(enumerate_partial_fns(m, n)?);
        }
    }
    Ok(shapes)
}

fn family_count(ctx: &Ctx<'_>, f: &PartialFn) -> u128 {
    (0..f.target())
        .map(|j| ctx.carriers[f.fiber_size(j)].len() as u128)
        .product()
}

/// ⟨b◁b′, v, d◁d′⟩_m = ⟨b, ⟨b′_j, v|_j, d′_j⟩_j, d⟩_n for f : m → n,
/// b, d ∈ A_n, b′, d′ ∈ A_f.
fn check_associativity(ctx: &Ctx<'_>, cfg: &ASetCheckConfig) -> Result<ASetFamilyReport> {
    let shapes = map_shapes(cfg.bound)?;
    let mut full_cost: u128 = 0;
    for f in &shapes {
        let (m, n) = (f.source(), f.target());
        let pairs = family_count(ctx, f).pow(2);
        let an2 = (ctx.carriers[n].len() as u128).pow(2);
        full_cost = full_cost
            .saturating_add(pairs.saturating_mul(ctx.tuples(m)).saturating_mul(n as u128 + 2 * an2));
    }
    let ones_ok = (0..=cfg.bound).all(|k| ctx.ring.ones(k).is_some());
    let go_full = cfg.full_families || full_cost <= cfg.act_budget as u128 || !ones_ok;
    let mut rep =
        ASetFamilyReport::new("associativity", if go_full { "full" } else { "generating" });
    let cap = cfg.witness_cap;
    let mut budget = Budget { left: cfg.act_budget };

    if go_full {
        for f in &shapes {
            let (m, n) = (f.source(), f.target());
            let count = family_count(ctx, f);
            let an = ctx.carriers[n].len() as u128;
            let cost = count
                .pow(2)
                .saturating_mul(ctx.tuples(m))
                .saturating_mul(n as u128 + 2 * an * an);
            if !budget.charge(cost) {
                rep.skipped_shapes += 1;
                continue;
            }
            rep.shapes += 1;
            let fams = family_space(ctx.ring, f, (count + 1) as u64)?;
            let fibers: Vec<Vec<usize>> = (0..n).map(|j| f.fiber(j)).collect();
            // b ◁ b′ for every coefficient and family.
            let mut mul_table = Vec::with_capacity(ctx.carriers[n].len());
            for b in &ctx.carriers[n] {
                let row = fams.iter().map(|fam| ctx.ring.mul(b, fam)).collect::<Result<Vec<_>>>()?;
                mul_table.push(row);
            }
            let mut w = vec![0usize; n];
            let mut slice = Vec::new();
            for (fi, fam1) in fams.iter().enumerate() {
                for (gi, fam2) in fams.iter().enumerate() {
                    for_each_tuple(ctx.size, m, |v| {
                        let mut ok = true;
                        for j in 0..n {
                            slice.clear();
                            slice.extend(fibers[j].iter().map(|&i| v[i]));
                            match ctx.obj.act(fam1.component(j), &slice, fam2.component(j)) {
                                Some(x) => w[j] = x,
                                None => {
                                    ok = false;
                                    break;
                                }
                            }
                        }
                        if !ok {
                            rep.skipped_values +=
                                (ctx.carriers[n].len() * ctx.carriers[n].len()) as u64;
                            return;
                        }
                        for (bi, b) in ctx.carriers[n].iter().enumerate() {
                            for (di, d) in ctx.carriers[n].iter().enumerate() {
                                let lhs = ctx.obj.act(&mul_table[bi][fi], v, &mul_table[di][gi]);
                                let rhs = ctx.obj.act(b, &w, d);
                                compare(&mut rep, cap, ctx.obj, lhs, rhs, || {
                                    format!(
                                        "associativity f={f}, b={}, d={}, b′={fam1}, d′={fam2}, v={v:?}",
                                        ctx.ring.render(b),
                                        ctx.ring.render(d),
                                    )
                                });
                            }
                        }
                    });
                }
            }
        }
        return Ok(rep);
    }

    // Generating sub-sweep (a): the all-units family over every map shape.
    for f in &shapes {
        let (m, n) = (f.source(), f.target());
        let an = ctx.carriers[n].len() as u128;
        let cost = ctx.tuples(m).saturating_mul(n as u128 + 2 * an * an);
        if !budget.charge(cost) {
            rep.skipped_shapes += 1;
            continue;
        }
        rep.shapes += 1;
        let u = ctx.ones_family(f).expect("strategy requires unit elements");
        let fibers: Vec<Vec<usize>> = (0..n).map(|j| f.fiber(j)).collect();
        let mul_u = ctx
            .carriers[n]
            .iter()
            .map(|b| ctx.ring.mul(b, &u))
            .collect::<Result<Vec<_>>>()?;
        let mut w = vec![0usize; n];
        let mut slice = Vec::new();
        for_each_tuple(ctx.size, m, |v| {
            let mut ok = true;
            for j in 0..n {
                slice.clear();
                slice.extend(fibers[j].iter().map(|&i| v[i]));
                match ctx.obj.act(u.component(j), &slice, u.component(j)) {
                    Some(x) => w[j] = x,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                rep.skipped_values += (ctx.carriers[n].len() * ctx.carriers[n].len()) as u64;
                return;
            }
            for (bi, b) in ctx.carriers[n].iter().enumerate() {
                for (di, d) in ctx.carriers[n].iter().enumerate() {
                    let lhs = ctx.obj.act(&mul_u[bi], v, &mul_u[di]);
                    let rhs = ctx.obj.act(b, &w, d);
                    compare(&mut rep, cap, ctx.obj, lhs, rhs, || {
                        format!(
                            "associativity (units) f={f}, b={}, d={}, v={v:?}",
                            ctx.ring.render(b),
                            ctx.ring.render(d),
                        )
                    });
                }
            }
        });
    }

    // Generating sub-sweep (b): one-hot scalar family pairs over the
    // identity.  Together with (a) these generate all family pairs under the
    // ring laws.
    let scalars = &ctx.carriers[1];
    for m in 1..=cfg.bound {
        let am = ctx.carriers[m].len() as u128;
        let hots = (m * scalars.len()) as u128;
        let cost = hots * hots * ctx.tuples(m).saturating_mul(m as u128 + 2 * am * am);
        if !budget.charge(cost) {
            rep.skipped_shapes += 1;
            continue;
        }
        rep.shapes += 1;
        let one = ctx.ring.unit();
        let one_hot = |p: usize, t: &Elem| -> Result<ElemFamily> {
            let comps = (0..m).map(|i| if i == p { t.clone() } else { one.clone() }).collect();
            ElemFamily::scalars(comps)
        };
        let mut w = vec![0usize; m];
        for p in 0..m {
            for t in scalars {
                let s1 = one_hot(p, t)?;
                let left = ctx
                    .carriers[m]
                    .iter()
                    .map(|b| ctx.ring.mul(b, &s1))
                    .collect::<Result<Vec<_>>>()?;
                for q in 0..m {
                    for r in scalars {
                        let s2 = one_hot(q, r)?;
                        let right = ctx
                            .carriers[m]
                            .iter()
                            .map(|d| ctx.ring.mul(d, &s2))
                            .collect::<Result<Vec<_>>>()?;
                        for_each_tuple(ctx.size, m, |v| {
                            let mut ok = true;
                            for i in 0..m {
                                match ctx.obj.act(s1.component(i), &v[i..=i], s2.component(i)) {
                                    Some(x) => w[i] = x,
                                    None => {
                                        ok = false;
                                        break;
                                    }
                                }
                            }
                            if !ok {
                                rep.skipped_values +=
                                    (ctx.carriers[m].len() * ctx.carriers[m].len()) as u64;
                                return;
                            }
                            for (bi, b) in ctx.carriers[m].iter().enumerate() {
                                for (di, d) in ctx.carriers[m].iter().enumerate() {
                                    let lhs = ctx.obj.act(&left[bi], v, &right[di]);
                                    let rhs = ctx.obj.act(b, &w, d);
                                    compare(&mut rep, cap, ctx.obj, lhs, rhs, || {
                                        format!(
                                            "associativity (one-hot) m={m}, b={}, d={}, b′={s1}, d′={s2}, v={v:?}",
                                            ctx.ring.render(b),
                                            ctx.ring.render(d),
                                        )
                                    });
                                }
                            }
                        });
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// Both naturality lines for `f : m → n`, `a ∈ A_f`:
/// ⟨b, v∘f, d◁a⟩_m = ⟨b⫽a, v, d⟩_n and ⟨d◁a, v∘f, b⟩_m = ⟨d, v, b⫽a⟩_n.
fn check_naturality(ctx: &Ctx<'_>, cfg: &ASetCheckConfig) -> Result<ASetFamilyReport> {
    let shapes = map_shapes(cfg.bound)?;
    let mut full_cost: u128 = 0;
    for f in &shapes {
        let (m, n) = (f.source(), f.target());
        let am = ctx.carriers[m].len() as u128;
        let an = ctx.carriers[n].len() as u128;
        full_cost = full_cost.saturating_add(
            family_count(ctx, f)
                .saturating_mul(ctx.tuples(n))
                .saturating_mul(am * an * 4),
        );
    }
    let ones_ok = (0..=cfg.bound).all(|k| ctx.ring.ones(k).is_some());
    let go_full = cfg.full_families || full_cost <= cfg.act_budget as u128 || !ones_ok;
    let mut rep = ASetFamilyReport::new("naturality", if go_full { "full" } else { "generating" });
    let cap = cfg.witness_cap;
    let mut budget = Budget { left: cfg.act_budget };

    // One block of comparisons for a fixed family `a` over `f`.
    let run_block = |rep: &mut ASetFamilyReport, f: &PartialFn, a: &ElemFamily| -> Result<()> {
        let (m, n) = (f.source(), f.target());
        let mul_a = ctx
            .carriers[n]
            .iter()
            .map(|d| ctx.ring.mul(d, a))
            .collect::<Result<Vec<_>>>()?;
        let con_a = ctx
            .carriers[m]
            .iter()
            .map(|b| ctx.ring.contract(b, a))
            .collect::<Result<Vec<_>>>()?;
        let mut vf = vec![0usize; m];
        for_each_tuple(ctx.size, n, |v| {
            for i in 0..m {
                vf[i] = f.apply(i).map_or(0, |j| v[j]);
            }
            for (bi, b) in ctx.carriers[m].iter().enumerate() {
                for (di, d) in ctx.carriers[n].iter().enumerate() {
                    let l1 = ctx.obj.act(b, &vf, &mul_a[di]);
                    let r1 = ctx.obj.act(&con_a[bi], v, d);
                    compare(rep, cap, ctx.obj, l1, r1, || {
                        format!(
                            "naturality f={f}, a={a}, b={}, d={}, v={v:?} (first line)",
                            ctx.ring.render(b),
                            ctx.ring.render(d),
                        )
                    });
                    let l2 = ctx.obj.act(&mul_a[di], &vf, b);
                    let r2 = ctx.obj.act(d, v, &con_a[bi]);
                    compare(rep, cap, ctx.obj, l2, r2, || {
                        format!(
                            "naturality f={f}, a={a}, b={}, d={}, v={v:?} (second line)",
                            ctx.ring.render(b),
                            ctx.ring.render(d),
                        )
                    });
                }
            }
        });
        Ok(())
    };

    if go_full {
        for f in &shapes {
            let (m, n) = (f.source(), f.target());
            let am = ctx.carriers[m].len() as u128;
            let an = ctx.carriers[n].len() as u128;
            let count = family_count(ctx, f);
            let cost = count.saturating_mul(ctx.tuples(n)).saturating_mul(am * an * 4);
            if !budget.charge(cost) {
                rep.skipped_shapes += 1;
                continue;
            }
            rep.shapes += 1;
            for a in &family_space(ctx.ring, f, (count + 1) as u64)? {
                run_block(&mut rep, f, a)?;
            }
        }
        return Ok(rep);
    }

    // (a) unit families over every shape.
    for f in &shapes {
        let (m, n) = (f.source(), f.target());
        let am = ctx.carriers[m].len() as u128;
        let an = ctx.carriers[n].len() as u128;
        let cost = ctx.tuples(n).saturating_mul(am * an * 4);
        if !budget.charge(cost) {
            rep.skipped_shapes += 1;
            continue;
        }
        rep.shapes += 1;
        let u = ctx.ones_family(f).expect("strategy requires unit elements");
        run_block(&mut rep, f, &u)?;
    }
    // (b) one-hot scalar families over the identity.
    let scalars = ctx.carriers[1].clone();
    let one = ctx.ring.unit();
    for m in 1..=cfg.bound {
        let am = ctx.carriers[m].len() as u128;
        let cost = ((m * scalars.len()) as u128)
            .saturating_mul(ctx.tuples(m))
            .saturating_mul(am * am * 4);
        if !budget.charge(cost) {
            rep.skipped_shapes += 1;
            continue;
        }
        rep.shapes += 1;
        for p in 0..m {
            for t in &scalars {
                let comps: Vec<Elem> =
                    (0..m).map(|i| if i == p { t.clone() } else { one.clone() }).collect();
                let s = ElemFamily::scalars(comps)?;
                run_block(&mut rep, &PartialFn::identity(m), &s)?;
            }
        }
    }
    Ok(rep)
}

/// ⟨d◁d̃′, v, b◁b̃′⟩_{n·m} = ⟨d′◁d̃, vᵀ, b′◁b̃⟩_{m·n} for b, d ∈ A_n,
/// b′, d′ ∈ A_m, and `x̃` the constant family over the grid projection.
fn check_commutativity(ctx: &Ctx<'_>, cfg: &ASetCheckConfig) -> Result<ASetFamilyReport> {
    let mut rep = ASetFamilyReport::new("commutativity", "full");
    let cap = cfg.witness_cap;
    let mut budget = Budget { left: cfg.act_budget };
    for n in 1..=cfg.bound {
        for m in 1..=cfg.bound {
            let an = ctx.carriers[n].len() as u128;
            let am = ctx.carriers[m].len() as u128;
            let cost = an * an * am * am * ctx.tuples(n * m) * 2;
            if !budget.charge(cost) {
                rep.skipped_shapes += 1;
                continue;
            }
            rep.shapes += 1;
            // x ◁ ỹ for x ∈ A_n, y ∈ A_m (grid n×m) and the transposed grid.
            let mut grid_nm = Vec::with_capacity(ctx.carriers[n].len());
            for x in &ctx.carriers[n] {
                let mut row = Vec::with_capacity(ctx.carriers[m].len());
                for y in &ctx.carriers[m] {
                    row.push(ctx.ring.mul(x, &const_family(y, n, m)?)?);
                }
                grid_nm.push(row);
            }
            let mut grid_mn = Vec::with_capacity(ctx.carriers[m].len());
            for y in &ctx.carriers[m] {
                let mut row = Vec::with_capacity(ctx.carriers[n].len());
                for x in &ctx.carriers[n] {
                    row.push(ctx.ring.mul(y, &const_family(x, m, n)?)?);
                }
                grid_mn.push(row);
            }
            let mut vt = vec![0usize; n * m];
            for (bi, b) in ctx.carriers[n].iter().enumerate() {
                for (di, d) in ctx.carriers[n].iter().enumerate() {
                    for (bj, bp) in ctx.carriers[m].iter().enumerate() {
                        for (dj, dp) in ctx.carriers[m].iter().enumerate() {
                            for_each_tuple(ctx.size, n * m, |v| {
                                for j in 0..n {
                                    for i in 0..m {
                                        vt[i * n + j] = v[j * m + i];
                                    }
                                }
                                let lhs = ctx.obj.act(&grid_nm[di][dj], v, &grid_nm[bi][bj]);
                                let rhs = ctx.obj.act(&grid_mn[dj][di], &vt, &grid_mn[bj][bi]);
                                compare(&mut rep, cap, ctx.obj, lhs, rhs, || {
                                    format!(
                                        "commutativity (n,m)=({n},{m}), b={}, d={}, b′={}, d′={}, v={v:?}",
                                        ctx.ring.render(b),
                                        ctx.ring.render(d),
                                        ctx.ring.render(bp),
                                        ctx.ring.render(dp),
                                    )
                                });
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// Verify the four A-set law families plus pointedness on `obj`.
pub fn check_aset_axioms(obj: &ASetObj, cfg: &ASetCheckConfig) -> Result<ASetReport> {
    let ctx = Ctx::new(obj, cfg.bound)?;
    let families = vec![
        check_pointedness(&ctx, cfg),
        check_unit(&ctx, cfg),
        check_associativity(&ctx, cfg)?,
        check_naturality(&ctx, cfg)?,
        check_commutativity(&ctx, cfg)?,
    ];
    Ok(ASetReport {
        aset: obj.name().to_string(),
        ring: obj.ring().name(),
        bound: cfg.bound,
        families,
    })
}

// ---------------------------------------------------------------------------
// Maps, hom-sets, isomorphism
// ---------------------------------------------------------------------------

/// Does the pointed map `map` (as a vector of target indices, one per source
/// element) commute with every action instance with coefficient arity
/// `≤ bound`?  Instances where either side is outside its truncation are
/// skipped.
pub fn is_action_map(m: &ASetObj, n: &ASetObj, map: &[usize], bound: usize) -> Result<bool> {
    if m.ring().name() != n.ring().name() {
        return Err(Error::Arity(format!(
            "map endpoints live over different instances: {} vs {}",
            m.ring().name(),
            n.ring().name()
        )));
    }
    if map.len() != m.size() || map.first() != Some(&0) {
        return Ok(false);
    }
    if map.iter().any(|&y| y >= n.size()) {
        return Ok(false);
    }
    let ring = m.ring().as_ref();
    let mut img = Vec::new();
    for k in 0..=bound {
        let carrier = carrier_or_err(ring, k)?;
        let mut good = true;
        for b in &carrier {
            for d in &carrier {
                for_each_tuple(m.size(), k, |v| {
                    if !good {
                        return;
                    }
                    img.clear();
                    img.extend(v.iter().map(|&x| map[x]));
                    if let (Some(lhs), Some(rhs)) = (m.act(b, v, d), n.act(b, &img, d)) {
                        if map[lhs] != rhs {
                            good = false;
                        }
                    }
                });
                if !good {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Enumerate all A-set maps `M → N` (pointed, action-preserving at arities
/// `≤ bound`), in lexicographic order of their value vectors.
pub fn hom_maps(m: &ASetObj, n: &ASetObj, cfg: &ASetCheckConfig) -> Result<Vec<Vec<usize>>> {
    let candidates = (n.size() as u128).pow(m.size() as u32 - 1);
    if candidates > cfg.enum_budget as u128 {
        return Err(Error::Resource(format!(
            "{candidates} candidate pointed maps exceed the enumeration budget"
        )));
    }
    let ring = m.ring().as_ref();
    let scalars = carrier_or_err(ring, 1)?;
    // Scalar action tables for the cheap pre-filter.
    let mut out = Vec::new();
    let mut map = vec![0usize; m.size()];
    let free = m.size() - 1;
    'next: loop {
        // Pre-filter: arity-1 instances only.
        let mut ok = true;
        'pre: for b in &scalars {
            for d in &scalars {
                for x in 0..m.size() {
                    if let (Some(lhs), Some(rhs)) = (m.act(b, &[x], d), n.act(b, &[map[x]], d)) {
                        if map[lhs] != rhs {
                            ok = false;
                            break 'pre;
                        }
                    }
                }
            }
        }
        if ok && is_action_map(m, n, &map, cfg.bound)? {
            out.push(map.clone());
        }
        // Odometer over the non-basepoint entries.
        let mut i = free;
        loop {
            if i == 0 {
                break 'next;
            }
            map[i] += 1;
            if map[i] < n.size() {
                break;
            }
            map[i] = 0;
            i -= 1;
        }
    }
    Ok(out)
}

/// The internal hom object: carrier = all A-set maps `M → N` with the
/// pointwise action `⟨b, φ_j, d⟩(x) := ⟨b, φ_j(x), d⟩_N`.  The zero map is
/// the basepoint.  Closure of the carrier under the action at arities
/// `≤ bound` is verified; commutativity of `N` makes it closed in general.
pub fn internal_hom(m: &ASetObj, n: &ASetObj, cfg: &ASetCheckConfig) -> Result<ASetObj> {
    let maps = hom_maps(m, n, cfg)?;
    if maps.first().map(|f| f.iter().all(|&y| y == 0)) != Some(true) {
        return Err(Error::validation(
            "aset.hom",
            "the zero map is not action-preserving; no basepoint for the hom object",
        ));
    }
    let index: HashMap<Vec<usize>, usize> =
        maps.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
    // Closure check at the instance bound.
    let ring = m.ring().as_ref();
    let msize = m.size();
    for k in 0..=cfg.bound {
        let carrier = carrier_or_err(ring, k)?;
        let mut vals = vec![0usize; k];
        let mut result = vec![0usize; msize];
        for b in &carrier {
            for d in &carrier {
                for_each_tuple(maps.len(), k, |phis| {
                    let mut total = true;
                    for x in 0..msize {
                        for (slot, &pi) in vals.iter_mut().zip(phis) {
                            *slot = maps[pi][x];
                        }
                        match n.act(b, &vals, d) {
                            Some(y) => result[x] = y,
                            None => {
                                total = false;
                                break;
                            }
                        }
                    }
                    if total && !index.contains_key(&result) {
                        // Leave a marker the loop below can turn into an error.
                        result.push(usize::MAX);
                    }
                });
                if result.last() == Some(&usize::MAX) {
                    return Err(Error::validation(
                        "aset.hom",
                        format!(
                            "hom carrier not closed under the action at arity {k} over {}",
                            ring.name()
                        ),
                    ));
                }
            }
        }
    }
    let labels: Vec<String> = maps
        .iter()
        .map(|f| {
            let parts: Vec<String> = f.iter().map(|y| y.to_string()).collect();
            format!("[{}]", parts.join(" "))
        })
        .collect();
    let name = format!("Hom({}, {})", m.name(), n.name());
    let maps = Arc::new(maps);
    let nn = n.clone();
    let maps_c = Arc::clone(&maps);
    ASetObj::new(m.ring(), &name, labels, move |b, phis, d| {
        let mut result = vec![0usize; msize];
        let mut vals = vec![0usize; phis.len()];
        for (x, slot) in result.iter_mut().enumerate() {
            for (v, &pi) in vals.iter_mut().zip(phis) {
                *v = maps_c[pi][x];
            }
            *slot = nn.act(b, &vals, d)?;
        }
        index.get(&result).copied()
    })
}

/// Search for an isomorphism `M ≅ N`: a pointed bijection commuting with the
/// action at arities `≤ bound`.  Color refinement over the scalar action
/// prunes the search; the leaf check is [`is_action_map`] in both directions.
pub fn find_iso(m: &ASetObj, n: &ASetObj, cfg: &ASetCheckConfig) -> Result<Option<Vec<usize>>> {
    if m.ring().name() != n.ring().name() || m.size() != n.size() {
        return Ok(None);
    }
    let size = m.size();
    if size == 1 {
        return Ok(Some(vec![0]));
    }
    let ring = m.ring().as_ref();
    let scalars = carrier_or_err(ring, 1)?;
    // Scalar action tables; usize::MAX marks a truncated value.
    let table = |obj: &ASetObj| -> Vec<Vec<usize>> {
        let mut t = Vec::new();
        for b in &scalars {
            for d in &scalars {
                t.push(
                    (0..size).map(|x| obj.act(b, &[x], d).unwrap_or(usize::MAX)).collect(),
                );
            }
        }
        t
    };
    let tm = table(m);
    let tn = table(n);

    // Joint color refinement.
    let mut cm: Vec<usize> = (0..size).map(|x| usize::from(x != 0)).collect();
    let mut cn = cm.clone();
    loop {
        let mut sigs: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let sig = |colors: &[usize], t: &[Vec<usize>], x: usize| -> (usize, Vec<usize>) {
            (
                colors[x],
                t.iter()
                    .map(|row| if row[x] == usize::MAX { usize::MAX } else { colors[row[x]] })
                    .collect(),
            )
        };
        let mut next_m = Vec::with_capacity(size);
        let mut next_n = Vec::with_capacity(size);
        for x in 0..size {
            let s = sig(&cm, &tm, x);
            let fresh = sigs.len();
            next_m.push(*sigs.entry(s).or_insert(fresh));
        }
        for x in 0..size {
            let s = sig(&cn, &tn, x);
            let fresh = sigs.len();
            next_n.push(*sigs.entry(s).or_insert(fresh));
        }
        if next_m == cm && next_n == cn {
            break;
        }
        cm = next_m;
        cn = next_n;
    }
    // Candidate targets per source element.
    let mut cands: Vec<Vec<usize>> = (0..size)
        .map(|x| (0..size).filter(|&y| cn[y] == cm[x]).collect())
        .collect();
    if cands.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    // Assign in order of fewest candidates (basepoint first by construction).
    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by_key(|&x| (x != 0) as usize * cands[x].len());
    for c in &mut cands {
        c.sort_unstable();
    }

    let mut assign = vec![usize::MAX; size];
    let mut used = vec![false; size];
    let mut nodes = 0u64;
    fn backtrack(
        pos: usize,
        order: &[usize],
        cands: &[Vec<usize>],
        tm: &[Vec<usize>],
        tn: &[Vec<usize>],
        assign: &mut Vec<usize>,
        used: &mut Vec<bool>,
        nodes: &mut u64,
        budget: u64,
    ) -> Result<bool> {
        if *nodes > budget {
            return Err(Error::Resource("isomorphism search budget exhausted".into()));
        }
        *nodes += 1;
        if pos == order.len() {
            return Ok(true);
        }
        let x = order[pos];
        'cand: for &y in &cands[x] {
            if used[y] {
                continue;
            }
            // Scalar consistency against everything already assigned.
            for (rm, rn) in tm.iter().zip(tn) {
                let xv = rm[x];
                if xv != usize::MAX && assign[xv] != usize::MAX && rn[y] != usize::MAX {
                    if assign[xv] != rn[y] {
                        continue 'cand;
                    }
                }
                for z in 0..assign.len() {
                    if assign[z] == usize::MAX || z == x {
                        continue;
                    }
                    if rm[z] == x && rn[assign[z]] != usize::MAX && rn[assign[z]] != y {
                        continue 'cand;
                    }
                }
            }
            assign[x] = y;
            used[y] = true;
            if backtrack(pos + 1, order, cands, tm, tn, assign, used, nodes, budget)? {
                return Ok(true);
            }
            assign[x] = usize::MAX;
            used[y] = false;
        }
        Ok(false)
    }
    let found = backtrack(
        0,
        &order,
        &cands,
        &tm,
        &tn,
        &mut assign,
        &mut used,
        &mut nodes,
        cfg.search_budget,
    )?;
    if !found {
        return Ok(None);
    }
    // Full verification in both directions.
    if !is_action_map(m, n, &assign, cfg.bound)? {
        return Ok(None);
    }
    let mut inverse = vec![0usize; size];
    for (x, &y) in assign.iter().enumerate() {
        inverse[y] = x;
    }
    if !is_action_map(n, m, &inverse, cfg.bound)? {
        return Ok(None);
    }
    Ok(Some(assign))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genring::hom::mod_reduction_hom;
    use crate::genring::instances::{bool_rig, f_cyclic, tropical01, zmod};

    fn z6() -> RingRef {
        Arc::new(zmod(6).unwrap())
    }

    fn z2() -> RingRef {
        Arc::new(zmod(2).unwrap())
    }

    fn cfg() -> ASetCheckConfig {
        ASetCheckConfig::default()
    }

    fn pointed(n: usize) -> ASetObj {
        let labels = (0..n).map(|i| if i == 0 { "*".into() } else { format!("x{i}") }).collect();
        f_pointed_set(&format!("X{n}"), labels).unwrap()
    }

    #[test]
    fn ring_carriers_pass_the_axioms() {
        for ring in [z2(), Arc::new(bool_rig()) as RingRef, Arc::new(tropical01()) as RingRef] {
            let m = ring_carrier(&ring).unwrap();
            let rep = check_aset_axioms(&m, &cfg()).unwrap();
            assert!(rep.passed(), "{}: {:?}", ring.name(), rep);
            assert!(rep.fully_checked(), "{}: {:?}", ring.name(), rep);
        }
    }

    #[test]
    fn initial_instance_carriers_pass_the_axioms() {
        for ring in [Arc::new(f_ring()) as RingRef, Arc::new(f_cyclic(2).unwrap()) as RingRef] {
            let m = ring_carrier(&ring).unwrap();
            let rep = check_aset_axioms(&m, &cfg()).unwrap();
            assert!(rep.passed(), "{}: {:?}", ring.name(), rep);
        }
    }

    #[test]
    fn big_instance_uses_generating_sweeps_and_passes() {
        let m = ring_carrier(&z6()).unwrap();
        let rep = check_aset_axioms(&m, &cfg()).unwrap();
        let assoc = rep.families.iter().find(|f| f.family == "associativity").unwrap();
        assert_eq!(assoc.strategy, "generating");
        assert!(rep.passed());
    }

    #[test]
    fn generating_and_full_sweeps_agree_on_a_small_instance() {
        let m = ring_carrier(&z2()).unwrap();
        let full = check_aset_axioms(&m, &ASetCheckConfig { full_families: true, ..cfg() }).unwrap();
        let generating = check_aset_axioms(
            &m,
            &ASetCheckConfig { act_budget: 1 << 12, ..cfg() },
        )
        .unwrap();
        assert!(full.passed() && generating.passed());
        let strat = |r: &ASetReport, fam: &str| {
            r.families.iter().find(|f| f.family == fam).unwrap().strategy.clone()
        };
        assert_eq!(strat(&full, "associativity"), "full");
        assert_eq!(strat(&generating, "associativity"), "generating");
    }

    #[test]
    fn pointed_sets_carry_the_unique_initial_action() {
        let x = pointed(4);
        let rep = check_aset_axioms(&x, &cfg()).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert!(rep.fully_checked());
    }

    #[test]
    fn cyclic_modules_pass_and_bad_moduli_are_rejected() {
        let ring = z6();
        for m in [1, 2, 3, 6] {
            let md = cyclic_module(&ring, m).unwrap();
            let rep = check_aset_axioms(&md, &cfg()).unwrap();
            assert!(rep.passed(), "modulus {m}: {rep:?}");
        }
        assert!(matches!(cyclic_module(&ring, 4), Err(Error::Validation { .. })));
        assert!(matches!(cyclic_module(&ring, 5), Err(Error::Validation { .. })));
    }

    #[test]
    fn a_forged_action_is_caught() {
        let ring = z6();
        // Drops the d-coefficient: ⟨b, v, d⟩ = Σ b_i·v_i mod 2.
        let forged = ASetObj::new(&ring, "forged", vec!["0".into(), "1".into()], |b, v, d| {
            let (Elem::Tuple(bv), Elem::Tuple(_)) = (b, d) else { return None };
            let mut s = 0usize;
            for (&bi, &xi) in bv.iter().zip(v) {
                s = (s + bi * xi) % 2;
            }
            Some(s)
        })
        .unwrap();
        let rep = check_aset_axioms(&forged, &cfg()).unwrap();
        assert!(!rep.passed());
    }

    #[test]
    fn product_of_coprime_cyclics_is_the_full_cyclic() {
        let ring = z6();
        let m2 = cyclic_module(&ring, 2).unwrap();
        let m3 = cyclic_module(&ring, 3).unwrap();
        let p = product(&m2, &m3).unwrap();
        assert!(check_aset_axioms(&p, &cfg()).unwrap().passed());
        let m6 = cyclic_module(&ring, 6).unwrap();
        assert!(find_iso(&p, &m6, &cfg()).unwrap().is_some());
    }

    #[test]
    fn hom_counts_match_module_theory() {
        let ring = z6();
        let m2 = cyclic_module(&ring, 2).unwrap();
        let m3 = cyclic_module(&ring, 3).unwrap();
        let m6 = cyclic_module(&ring, 6).unwrap();
        // Hom(Z/a, Z/b) has gcd(a, b) elements.
        assert_eq!(hom_maps(&m6, &m6, &cfg()).unwrap().len(), 6);
        assert_eq!(hom_maps(&m2, &m3, &cfg()).unwrap().len(), 1);
        assert_eq!(hom_maps(&m2, &m6, &cfg()).unwrap().len(), 2);
        assert_eq!(hom_maps(&m3, &m6, &cfg()).unwrap().len(), 3);
    }

    #[test]
    fn pointed_hom_sets_are_all_pointed_maps() {
        let x = pointed(3);
        let y = pointed(3);
        assert_eq!(hom_maps(&x, &y, &cfg()).unwrap().len(), 9);
    }

    #[test]
    fn internal_hom_is_a_lawful_aset_matching_module_theory() {
        let ring = z6();
        let m6 = cyclic_module(&ring, 6).unwrap();
        let h = internal_hom(&m6, &m6, &cfg()).unwrap();
        assert_eq!(h.size(), 6);
        assert!(check_aset_axioms(&h, &cfg()).unwrap().passed());
        assert!(find_iso(&h, &m6, &cfg()).unwrap().is_some());
    }

    #[test]
    fn iso_search_rejects_non_isomorphic_modules() {
        let ring = z6();
        let m2 = cyclic_module(&ring, 2).unwrap();
        let m3 = cyclic_module(&ring, 3).unwrap();
        assert!(find_iso(&m2, &m3, &cfg()).unwrap().is_none());
        // Same cardinality, different structure: Z/6 self vs product of three
        // copies of Z/2 would differ in size; use Z/6 vs Z/2×Z/3 (isomorphic)
        // and Z/4-style mismatch is impossible over Z/6, so check a forged
        // relabeling instead: the identity carrier against itself must give
        // the identity-compatible map.
        let m6 = cyclic_module(&ring, 6).unwrap();
        let iso = find_iso(&m6, &m6, &cfg()).unwrap().unwrap();
        assert!(is_action_map(&m6, &m6, &iso, 2).unwrap());
    }

    #[test]
    fn restriction_along_reduction_gives_the_cyclic_module() {
        let b_ring = z6();
        let a_ring = z2();
        let phi = mod_reduction_hom(6, 2).unwrap();
        let n = ring_carrier(&a_ring).unwrap();
        let r = restrict_scalars(&phi, &b_ring, &n).unwrap();
        assert!(check_aset_axioms(&r, &cfg()).unwrap().passed());
        let m2 = cyclic_module(&b_ring, 2).unwrap();
        assert!(find_iso(&r, &m2, &cfg()).unwrap().is_some());
    }

    #[test]
    fn restriction_with_mismatched_endpoints_is_rejected() {
        let phi = mod_reduction_hom(6, 2).unwrap();
        let n = ring_carrier(&z6()).unwrap(); // lives over Z/6, not Z/2
        assert!(matches!(restrict_scalars(&phi, &z6(), &n), Err(Error::Arity(_))));
    }

    #[test]
    fn ring_carrier_action_matches_the_module_formula() {
        let ring = z6();
        let m = ring_carrier(&ring).unwrap();
        let m6 = cyclic_module(&ring, 6).unwrap();
        assert!(find_iso(&m, &m6, &cfg()).unwrap().is_some());
    }
}
