//! Law checking for generalized rings.
//!
//! [`check_axioms`] sweeps every law instance up to an arity bound and
//! reports per-family counts and violation witnesses.  The heavy families
//! quantify over a pair of composable (or cospan) maps plus all elements and
//! families over them; to keep that tractable the checker enumerates map
//! shapes only up to independent relabeling of the three index sets.  That
//! reduction is sound exactly when the operations commute with transport
//! along permutations, which is why *equivariance* is itself one of the
//! checked families (for the transposition generators; arbitrary
//! permutations follow by functoriality, which is also checked).
//!
//! [`check_axioms_sampled`] is the seeded randomized variant for instances
//! without enumerable carriers; it additionally asserts carrier membership
//! of every computed value.

use super::{
    carrier_or_err, contract_family, family_space, mul_family, pullback_left, pullback_right,
    random_family, random_partial_bijection, random_partial_fn, relabel_family, Elem, ElemFamily,
    GenRing,
};
use crate::error::{Error, Result};
use crate::exec::{self, ExecMode};
use crate::fincat::{
    enumerate_partial_bijections, enumerate_partial_fns, enumerate_permutations, fiber_product,
    PartialBijection, PartialFn,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AxiomFamily {
    Pointedness,
    Functoriality,
    Equivariance,
    Unit,
    Associativity,
    LeftAdjunction,
    RightAdjunction,
    LeftLinear,
    RightLinear,
}

impl AxiomFamily {
    pub const ALL: [AxiomFamily; 9] = [
        AxiomFamily::Pointedness,
        AxiomFamily::Functoriality,
        AxiomFamily::Equivariance,
        AxiomFamily::Unit,
        AxiomFamily::Associativity,
        AxiomFamily::LeftAdjunction,
        AxiomFamily::RightAdjunction,
        AxiomFamily::LeftLinear,
        AxiomFamily::RightLinear,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            AxiomFamily::Pointedness => "pointedness",
            AxiomFamily::Functoriality => "functoriality",
            AxiomFamily::Equivariance => "equivariance",
            AxiomFamily::Unit => "unit",
            AxiomFamily::Associativity => "associativity",
            AxiomFamily::LeftAdjunction => "left-adjunction",
            AxiomFamily::RightAdjunction => "right-adjunction",
            AxiomFamily::LeftLinear => "left-linear",
            AxiomFamily::RightLinear => "right-linear",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub arity_bound: usize,
    /// Per-shape tuple cap; shapes whose tuple space exceeds it are skipped
    /// and reported, never silently dropped.
    pub shape_budget: u64,
    pub mode: ExecMode,
    /// Enumerate map shapes only up to relabeling (see module docs).
    pub orbit_reduction: bool,
    /// Max recorded witnesses per family.
    pub witness_cap: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            arity_bound: 3,
            shape_budget: 1 << 41,
            mode: ExecMode::default(),
            orbit_reduction: true,
            witness_cap: 3,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub family: String,
    /// Shapes actually swept (after reduction, excluding skips).
    pub shapes: u64,
    pub skipped_shapes: u64,
    /// Law instances evaluated (both sides computed and compared).
    pub checked: u64,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub ring: String,
    pub arity_bound: usize,
    pub orbit_reduction: bool,
    pub families: Vec<FamilyReport>,
}

impl AxiomReport {
    /// No violations anywhere.
    pub fn passed(&self) -> bool {
        self.families.iter().all(|f| f.violations.is_empty())
    }

    /// No violations and no skipped shapes: the bound was fully exhausted.
    pub fn fully_checked(&self) -> bool {
        self.passed() && self.families.iter().all(|f| f.skipped_shapes == 0)
    }

    pub fn total_checked(&self) -> u64 {
        self.families.iter().map(|f| f.checked).sum()
    }
}

// ---------------------------------------------------------------------------
// Accumulators and witness formatting
// ---------------------------------------------------------------------------

#[derive(Clone)]
struct Acc {
    checked: u64,
    violations: Vec<String>,
}

impl Acc {
    fn new() -> Self {
        Acc { checked: 0, violations: Vec::new() }
    }

    fn violation(&mut self, cap: usize, msg: String) {
        if self.violations.len() < cap {
            self.violations.push(msg);
        }
    }

    fn absorb(&mut self, cap: usize, other: Acc) {
        self.checked += other.checked;
        for v in other.violations {
            self.violation(cap, v);
        }
    }
}

fn render_family(ring: &dyn GenRing, b: &ElemFamily) -> String {
    let comps: Vec<String> = b.components().iter().map(|c| ring.render(c)).collect();
    format!("{{{}; {}}}", b.map(), comps.join(", "))
}

/// Evaluate one law instance: compare both sides, count it, record a witness
/// on mismatch.  The witness text is built lazily — the hot path never
/// formats strings.
fn record(
    ring: &dyn GenRing,
    acc: &mut Acc,
    cap: usize,
    lhs: Result<Elem>,
    rhs: Result<Elem>,
    detail: impl FnOnce() -> String,
) {
    acc.checked += 1;
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => {
            if l != r {
                acc.violation(
                    cap,
                    format!("{}: lhs = {} ≠ rhs = {}", detail(), ring.render(&l), ring.render(&r)),
                );
            }
        }
        (Err(e), _) | (_, Err(e)) => {
            acc.violation(cap, format!("{}: operation error: {e}", detail()));
        }
    }
}

// ---------------------------------------------------------------------------
// Shape enumeration up to relabeling
// ---------------------------------------------------------------------------

fn perm_tables(n: usize) -> Vec<Vec<usize>> {
    enumerate_permutations(n)
        .into_iter()
        .map(|p| (0..n).map(|i| p.apply(i).expect("total permutation")).collect())
        .collect()
}

type Graph = Vec<Option<usize>>;

fn relabel_graph(f: &PartialFn, src: &[usize], dst: &[usize]) -> Graph {
    let mut out = vec![None; f.source()];
    for x in 0..f.source() {
        out[src[x]] = f.apply(x).map(|y| dst[y]);
    }
    out
}

/// Composable pairs `(u : a → b, v : b → c)` with all sizes ≤ `bound`,
/// optionally only the lexicographically least representative of each
/// relabeling orbit.
pub fn chain_shapes(bound: usize, reduced: bool) -> Result<Vec<(PartialFn, PartialFn)>> {
    let perms: Vec<Vec<Vec<usize>>> = (0..=bound).map(perm_tables).collect();
    let mut out = Vec::new();
    for a in 0..=bound {
        for b in 0..=bound {
            let us = enumerate_partial_fns(a, b)?;
            for c in 0..=bound {
                let vs = enumerate_partial_fns(b, c)?;
                for u in &us {
                    for v in &vs {
                        if !reduced || chain_is_canonical(u, v, &perms[a], &perms[b], &perms[c]) {
                            out.push((u.clone(), v.clone()));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn chain_is_canonical(
    u: &PartialFn,
    v: &PartialFn,
    pa: &[Vec<usize>],
    pb: &[Vec<usize>],
    pc: &[Vec<usize>],
) -> bool {
    let base = (u.graph().to_vec(), v.graph().to_vec());
    for sa in pa {
        for sb in pb {
            let ug = relabel_graph(u, sa, sb);
            if ug > base.0 {
                continue;
            }
            for sc in pc {
                let cand = (ug.clone(), relabel_graph(v, sb, sc));
                if cand < base {
                    return false;
                }
            }
        }
    }
    true
}

/// Cospan pairs `(u : a → c, v : b → c)`, optionally up to relabeling.
pub fn cospan_shapes(bound: usize, reduced: bool) -> Result<Vec<(PartialFn, PartialFn)>> {
    let perms: Vec<Vec<Vec<usize>>> = (0..=bound).map(perm_tables).collect();
    let mut out = Vec::new();
    for c in 0..=bound {
        for a in 0..=bound {
            let us = enumerate_partial_fns(a, c)?;
            for b in 0..=bound {
                let vs = enumerate_partial_fns(b, c)?;
                for u in &us {
                    for v in &vs {
                        if !reduced || cospan_is_canonical(u, v, &perms[a], &perms[b], &perms[c]) {
                            out.push((u.clone(), v.clone()));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn cospan_is_canonical(
    u: &PartialFn,
    v: &PartialFn,
    pa: &[Vec<usize>],
    pb: &[Vec<usize>],
    pc: &[Vec<usize>],
) -> bool {
    let base = (u.graph().to_vec(), v.graph().to_vec());
    for sc in pc {
        for sa in pa {
            let ug = relabel_graph(u, sa, sc);
            if ug > base.0 {
                continue;
            }
            for sb in pb {
                let cand = (ug.clone(), relabel_graph(v, sb, sc));
                if cand < base {
                    return false;
                }
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// The exhaustive checker
// ---------------------------------------------------------------------------

pub fn check_axioms(ring: &dyn GenRing, cfg: &CheckConfig) -> Result<AxiomReport> {
    let carriers: Vec<Vec<Elem>> =
        (0..=cfg.arity_bound).map(|n| carrier_or_err(ring, n)).collect::<Result<_>>()?;
    let chains = chain_shapes(cfg.arity_bound, cfg.orbit_reduction)?;
    let cospans = cospan_shapes(cfg.arity_bound, cfg.orbit_reduction)?;
    let families = vec![
        check_pointedness(ring, cfg, &carriers)?,
        check_functoriality(ring, cfg, &carriers)?,
        check_equivariance(ring, cfg, &carriers)?,
        check_unit(ring, cfg, &carriers)?,
        check_associativity(ring, cfg, &carriers, &chains)?,
        check_left_adjunction(ring, cfg, &carriers, &chains)?,
        check_right_adjunction(ring, cfg, &carriers, &chains)?,
        check_left_linear(ring, cfg, &carriers, &chains)?,
        check_right_linear(ring, cfg, &carriers, &cospans)?,
    ];
    Ok(AxiomReport {
        ring: ring.name(),
        arity_bound: cfg.arity_bound,
        orbit_reduction: cfg.orbit_reduction,
        families,
    })
}

/// Family space, with an over-budget result downgraded to `None` so the
/// caller can skip-and-report the shape.
fn family_space_or_skip(
    ring: &dyn GenRing,
    f: &PartialFn,
    budget: u64,
) -> Result<Option<Vec<ElemFamily>>> {
    match family_space(ring, f, budget) {
        Ok(v) => Ok(Some(v)),
        Err(Error::Resource(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn check_pointedness(
    ring: &dyn GenRing,
    cfg: &CheckConfig,
    carriers: &[Vec<Elem>],
) -> Result<FamilyReport> {
    let cap = cfg.witness_cap;
    let mut acc = Acc::new();
    let mut skipped = 0u64;
    let mut shapes = 0u64;

    acc.checked += 1;
    if carriers[0] != vec![ring.zero_empty()] {
        acc.violation(cap, "the empty-arity carrier is not exactly the zero".to_string());
    }
    for n in 0..=cfg.arity_bound {
        let direct = ring.zero(n);
        let transported =
            ring.transport(&PartialBijection::empty(0, n), &ring.zero_empty())?;
        record(ring, &mut acc, cap, Ok(direct.clone()), Ok(transported), || {
            format!("zero of arity {n} vs transport of the empty map")
        });
        acc.checked += 1;
        if !ring.contains(&direct) {
            acc.violation(cap, format!("zero of arity {n} is not a carrier element"));
        }
    }
    // Zero absorbs on the left of both operations.
    for m in 0..=cfg.arity_bound {
        for n in 0..=cfg.arity_bound {
            for f in enumerate_partial_fns(m, n)? {
                let Some(fams) = family_space_or_skip(ring, &f, cfg.shape_budget)? else {
                    skipped += 1;
                    continue;
                };
                shapes += 1;
                for b in &fams {
                    record(
                        ring,
                        &mut acc,
                        cap,
                        ring.mul(&ring.zero(n), b),
                        Ok(ring.zero(m)),
                        || format!("0 ◁ b over f={f}, b={}", render_family(ring, b)),
                    );
                    record(
                        ring,
                        &mut acc,
                        cap,
                        ring.contract(&ring.zero(m), b),
                        Ok(ring.zero(n)),
                        || format!("0 ⫽ b over f={f}, b={}", render_family(ring, b)),
                    );
                }
            }
        }
    }
    Ok(FamilyReport {
        family: AxiomFamily::Pointedness.name().to_string(),
        shapes,
        skipped_shapes: skipped,
        checked: acc.checked,
        violations: acc.violations,
    })
}

fn check_functoriality(
    ring: &dyn GenRing,
    cfg: &CheckConfig,
    carriers: &[Vec<Elem>],
) -> Result<FamilyReport> {
    let cap = cfg.witness_cap;
    let mut acc = Acc::new();
    let mut shapes = 0u64;
    for (n, elems) in carriers.iter().enumerate() {
        let id = PartialBijection::identity(n);
        shapes += 1;
        for a in elems {
            record(ring, &mut acc, cap, ring.transport(&id, a), Ok(a.clone()), || {
                format!("identity transport at arity {n} on {}", ring.render(a))
            });
        }
    }
    for m in 0..=cfg.arity_bound {
        for n in 0..=cfg.arity_bound {
            let fs = enumerate_partial_bijections(m, n)?;
            for p in 0..=cfg.arity_bound {
                let gs = enumerate_partial_bijections(n, p)?;
                for f in &fs {
                    for g in &gs {
                        shapes += 1;
                        let gf = g.compose(f)?;
                        for a in &carriers[m] {
                            let two_step =
                                ring.transport(f, a).and_then(|fa| ring.transport(g, &fa));
                            record(ring, &mut acc, cap, two_step, ring.transport(&gf, a), || {
                                format!(
                                    "composite transport f={}, g={}, a={}",
                                    f.as_partial_fn(),
                                    g.as_partial_fn(),
                                    ring.render(a)
                                )
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(FamilyReport {
        family: AxiomFamily::Functoriality.name().to_string(),
        shapes,
        skipped_shapes: 0,
        checked: acc.checked,
        violations: acc.violations,
    })
}

/// Identity plus the adjacent transpositions of `n` — group generators, which
/// suffice for equivariance given functoriality.
fn transposition_generators(n: usize) -> Vec<PartialBijection> {
    let mut out = vec![PartialBijection::identity(n)];
    for i in 0..n.saturating_sub(1) {
        let mut table: Vec<usize> = (0..n).collect();
        table.swap(i, i + 1);
        out.push(PartialBijection::permutation(table).expect("transposition"));
    }
    out
}

fn check_equivariance(
    ring: &dyn GenRing,
    cfg: &CheckConfig,
    carriers: &[Vec<Elem>],
) -> Result<FamilyReport> {
    let cap = cfg.witness_cap;
    let mut total = Acc::new();
    let mut shapes = 0u64;
    let mut skipped = 0u64;
    for m in 0..=cfg.arity_bound {
        let gens_m = transposition_generators(m);
        for n in 0..=cfg.arity_bound {
            let gens_n = transposition_generators(n);
            // Transported carriers, one table per generator and side.
            let ta: Vec<Vec<Elem>> = gens_n
                .iter()
                .map(|s| carriers[n].iter().map(|a| ring.transport(s, a)).collect())
                .collect::<std::result::Result<_, _>>()?;
            let tc: Vec<Vec<Elem>> = gens_m
                .iter()
                .map(|s| carriers[m].iter().map(|c| ring.transport(s, c)).collect())
                .collect::<std::result::Result<_, _>>()?;
            for f in enumerate_partial_fns(m, n)? {
                let Some(fams) = family_space_or_skip(ring, &f, cfg.shape_budget)? else {
                    skipped += 1;
                    continue;
                };
                shapes += 1;
                let part = exec::sweep(
                    cfg.mode,
                    fams.len() as u64,
                    16,
                    Acc::new,
                    |acc, bi| {
                        let b = &fams[bi as usize];
                        for (mi, sm) in gens_m.iter().enumerate() {
                            for (ni, sn) in gens_n.iter().enumerate() {
                                if mi == 0 && ni == 0 {
                                    continue;
                                }
                                let b2 = match relabel_family(ring, b, sm, sn) {
                                    Ok(b2) => b2,
                                    Err(e) => {
                                        acc.violation(cap, format!("relabeling error: {e}"));
                                        continue;
                                    }
                                };
                                for (ai, a) in carriers[n].iter().enumerate() {
                                    let lhs = ring.mul(&ta[ni][ai], &b2);
                                    let rhs = ring
                                        .mul(a, b)
                                        .and_then(|ab| ring.transport(sm, &ab));
                                    record(ring, acc, cap, lhs, rhs, || {
                                        format!(
                                            "◁ equivariance f={f}, σ_src={}, σ_dst={}, a={}, b={}",
                                            sm.as_partial_fn(),
                                            sn.as_partial_fn(),
                                            ring.render(a),
                                            render_family(ring, b)
                                        )
                                    });
                                }
                                for (ci, c) in carriers[m].iter().enumerate() {
                                    let lhs = ring.contract(&tc[mi][ci], &b2);
                                    let rhs = ring
                                        .contract(c, b)
                                        .and_then(|cb| ring.transport(sn, &cb));
                                    record(ring, acc, cap, lhs, rhs, || {
                                        format!(
                                            "⫽ equivariance f={f}, σ_src={}, σ_dst={}, c={}, b={}",
                                            sm.as_partial_fn(),
                                            sn.as_partial_fn(),
                                            ring.render(c),
                                            render_family(ring, b)
                                        )
                                    });
                                }
                            }
                        }
                    },
                    |a, b| a.absorb(cap, b),
                );
                total.absorb(cap, part);
            }
        }
    }
    Ok(FamilyReport {
        family: AxiomFamily::Equivariance.name().to_string(),
        shapes,
        skipped_shapes: skipped,
        checked: total.checked,
        violations: total.violations,
    })
}

fn check_unit(
    ring: &dyn GenRing,
    cfg: &CheckConfig,
    carriers: &[Vec<Elem>],
) -> Result<FamilyReport> {
    let cap = cfg.witness_cap;
    let mut acc = Acc::new();
    for (n, elems) in carriers.iter().enumerate() {
        let units = ElemFamily::units(ring, n);
        for a in elems {
            record(
                ring,
                &mut acc,
                cap,
                ring.mul(&ring.unit(), &ElemFamily::of_elem(a.clone())),
                Ok(a.clone()),
                || format!("1 ◁ (a) for a={}", ring.render(a)),
            );
            record(ring, &mut acc, cap, ring.mul(a, &units), Ok(a.clone()), || {
                format!("a ◁ (1,…,1) for a={}", ring.render(a))
            });
            record(ring, &mut acc, cap, ring.contract(a, &units), Ok(a.clone()), || {
                format!("a ⫽ (1,…,1) for a={}", ring.render(a))
            });
        }
    }
    Ok(FamilyReport {
        family: AxiomFamily::Unit.name().to_string(),
        shapes: carriers.len() as u64,
        skipped_shapes: 0,
        checked: acc.checked,
        violations: acc.violations,
    })
}

/// Shared skeleton for the two-map families: enumerates tuple spaces over
/// each shape, precomputes the (element, first-family) table, and sweeps the
/// family-pair index space.
struct ShapeSpaces {
    elems: Vec<Elem>,
    fam1: Vec<ElemFamily>,
    fam2: Vec<ElemFamily>,
    /// table[f1_idx][elem_idx], the precomputed half of the law.
    table: Vec<Vec<Elem>>,
}

/// Reused evaluation buffers: one law instance per element of the carrier,
/// both sides evaluated batchwise so allocations amortize across a whole
/// sweep chunk.
#[derive(Default)]
struct Scratch {
    lhs: Vec<Elem>,
    rhs: Vec<Elem>,
    tmp: Vec<Elem>,
}

struct SweepAcc {
    acc: Acc,
    scratch: Scratch,
}

#[allow(clippy::too_many_arguments)]
fn run_two_map_family(
    ring: &dyn GenRing,
    cfg: &CheckConfig,
    family: AxiomFamily,
    shapes: &[(PartialFn, PartialFn)],
    spaces: impl Fn(&PartialFn, &PartialFn) -> Result<Option<(Vec<Elem>, Vec<ElemFamily>, Vec<ElemFamily>)>>,
    table_op: impl Fn(&[Elem], &ElemFamily, &mut Vec<Elem>) -> Result<()>,
    pair_ctx: impl Fn(&PartialFn, &PartialFn, &ElemFamily, &ElemFamily) -> Result<PairCtx> + Sync,
    eval: impl Fn(&ShapeSpaces, &PairCtx, usize, usize, &mut Scratch) -> Result<()> + Sync,
) -> Result<FamilyReport> {
    let cap = cfg.witness_cap;
    let mut total = Acc::new();
    let mut kept = 0u64;
    let mut skipped = 0u64;
    for (u, v) in shapes {
        let Some((elems, fam1, fam2)) = spaces(u, v)? else {
            skipped += 1;
            continue;
        };
        let tuples = (elems.len() as u128) * (fam1.len() as u128) * (fam2.len() as u128);
        if tuples > cfg.shape_budget as u128 {
            skipped += 1;
            continue;
        }
        kept += 1;
        let table = fam1
            .iter()
            .map(|f| {
                let mut row = Vec::new();
                table_op(&elems, f, &mut row)?;
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        let sp = ShapeSpaces { elems, fam1, fam2, table };
        let pairs = (sp.fam1.len() * sp.fam2.len()) as u64;
        let n2 = sp.fam2.len() as u64;
        let part = exec::sweep(
            cfg.mode,
            pairs,
            512,
            || SweepAcc { acc: Acc::new(), scratch: Scratch::default() },
            |sa, idx| {
                let i1 = (idx / n2) as usize;
                let i2 = (idx % n2) as usize;
                sa.acc.checked += sp.elems.len() as u64;
                let ctx = match pair_ctx(u, v, &sp.fam1[i1], &sp.fam2[i2]) {
                    Ok(ctx) => ctx,
                    Err(e) => {
                        sa.acc.violation(cap, format!("family construction error: {e}"));
                        return;
                    }
                };
                if let Err(e) = eval(&sp, &ctx, i1, i2, &mut sa.scratch) {
                    sa.acc.violation(cap, format!("evaluation error: {e}"));
                    return;
                }
                debug_assert_eq!(sa.scratch.lhs.len(), sp.elems.len());
                debug_assert_eq!(sa.scratch.rhs.len(), sp.elems.len());
                if sa.scratch.lhs == sa.scratch.rhs {
                    return;
                }
                for ei in 0..sp.elems.len() {
                    if sa.scratch.lhs[ei] != sa.scratch.rhs[ei] {
                        let detail = format!(
                            "{} shape u={u}, v={v}: x={}, fam1={}, fam2={}: {} ≠ {}",
                            family.name(),
                            ring.render(&sp.elems[ei]),
                            render_family(ring, &sp.fam1[i1]),
                            render_family(ring, &sp.fam2[i2]),
                            ring.render(&sa.scratch.lhs[ei]),
                            ring.render(&sa.scratch.rhs[ei]),
                        );
                        sa.acc.violation(cap, detail);
                    }
                }
            },
            |a, b| a.acc.absorb(cap, b.acc),
        );
        total.absorb(cap, part.acc);
    }
    Ok(FamilyReport {
        family: family.name().to_string(),
        shapes: kept,
        skipped_shapes: skipped,
        checked: total.checked,
        violations: total.violations,
    })
}

/// Per-(fam1, fam2) context: a derived family, or the fiber-product pullback
/// pair for the cospan law.
enum PairCtx {
    Fam(ElemFamily),
    Pullbacks(ElemFamily, ElemFamily),
}

impl PairCtx {
    fn fam(&self) -> &ElemFamily {
        match self {
            PairCtx::Fam(f) => f,
            PairCtx::Pullbacks(..) => unreachable!("cospan context in a chain law"),
        }
    }
}

/// `(a ◁ b) ◁ e = a ◁ (b ◁ e)` over composable `e`-then-`b` shapes:
/// the chain is `(u : k → m, v : m → n)` with `e` over `u`, `b` over `v`.
fn check_associativity(
    ring: &dyn GenRing,
    cfg: &CheckConfig,
    carriers: &[Vec<Elem>],
    chains: &[(PartialFn, PartialFn)],
) -> Result<FamilyReport> {
    run_two_map_family(
        ring,
        cfg,
        AxiomFamily::Associativity,
        chains,
        |u, v| {
            let Some(fam1) = family_space_or_skip(ring, v, cfg.shape_budget)? else {
                return Ok(None);
            };
            let Some(fam2) = family_space_or_skip(ring, u, cfg.shape_budget)? else {
                return Ok(None);
            };
            Ok(Some((carriers[v.target()].clone(), fam1, fam2)))
        },
        |es, b, out| ring.mul_many(es, b, out),
        |_, _, b, e| Ok(PairCtx::Fam(mul_family(ring, b, e)?)),
        |sp, ctx, bi, ei, scratch| {
            ring.mul_many(&sp.table[bi], &sp.fam2[ei], &mut scratch.lhs)?;
            ring.mul_many(&sp.elems, ctx.fam(), &mut scratch.rhs)
        },
    )
}

/// `(d ⫽ c) ⫽ a = d ⫽ (a ◁ c)` over the chain `(u = f_c : n → m,
/// v = f_a : m → k)`: `c` over `u`, `a` over `v`, `d ∈ A_n`.
fn check_left_adjunction(
    ring: &dyn GenRing,
    cfg: &CheckConfig,
    carriers: &[Vec<Elem>],
    chains: &[(PartialFn, PartialFn)],
) -> Result<FamilyReport> {
    run_two_map_family(
        ring,
        cfg,
        AxiomFamily::LeftAdjunction,
        chains,
        |u, v| {
            let Some(fam1) = family_space_or_skip(ring, u, cfg.shape_budget)? else {
                return Ok(None);
            };
            let Some(fam2) = family_space_or_skip(ring, v, cfg.shape_budget)? else {
                return Ok(None);
            };
            Ok(Some((carriers[u.source()].clone(), fam1, fam2)))
        },
        |es, c, out| ring.contract_many(es, c, out),
        |_, _, c, a| Ok(PairCtx::Fam(mul_family(ring, a, c)?)),
        |sp, ctx, ci, ai, scratch| {
            ring.contract_many(&sp.table[ci], &sp.fam2[ai], &mut scratch.lhs)?;
            ring.contract_many(&sp.elems, ctx.fam(), &mut scratch.rhs)
        },
    )
}

/// `d ⫽ (a ⫽_g c) = (d ◁ c) ⫽ a` over the chain `(u = f_c : n → m,
/// v = g : m → k)`: `c` over `u`, `a` over `v∘u`, `d ∈ A_m`.
fn check_right_adjunction(
    ring: &dyn GenRing,
    cfg: &CheckConfig,
    carriers: &[Vec<Elem>],
    chains: &[(PartialFn, PartialFn)],
) -> Result<FamilyReport> {
    run_two_map_family(
        ring,
        cfg,
        AxiomFamily::RightAdjunction,
        chains,
        |u, v| {
            let composite = v.compose(u)?;
            let Some(fam1) = family_space_or_skip(ring, u, cfg.shape_budget)? else {
                return Ok(None);
            };
            let Some(fam2) = family_space_or_skip(ring, &composite, cfg.shape_budget)? else {
                return Ok(None);
            };
            Ok(Some((carriers[u.target()].clone(), fam1, fam2)))
        },
        |es, c, out| ring.mul_many(es, c, out),
        |_, v, c, a| Ok(PairCtx::Fam(contract_family(ring, a, c, v)?)),
        |sp, ctx, ci, ai, scratch| {
            ring.contract_many(&sp.elems, ctx.fam(), &mut scratch.lhs)?;
            ring.contract_many(&sp.table[ci], &sp.fam2[ai], &mut scratch.rhs)
        },
    )
}

/// `d ◁ (a ⫽_g c) = (d ◁ a) ⫽ c` over the chain `(u = f_c : n → k,
/// v = g : k → m)`: `c` over `u`, `a` over `v∘u`, `d ∈ A_m`.
fn check_left_linear(
    ring: &dyn GenRing,
    cfg: &CheckConfig,
    carriers: &[Vec<Elem>],
    chains: &[(PartialFn, PartialFn)],
) -> Result<FamilyReport> {
    run_two_map_family(
        ring,
        cfg,
        AxiomFamily::LeftLinear,
        chains,
        |u, v| {
            let composite = v.compose(u)?;
            let Some(fam1) = family_space_or_skip(ring, &composite, cfg.shape_budget)? else {
                return Ok(None);
            };
            let Some(fam2) = family_space_or_skip(ring, u, cfg.shape_budget)? else {
                return Ok(None);
            };
            Ok(Some((carriers[v.target()].clone(), fam1, fam2)))
        },
        |es, a, out| ring.mul_many(es, a, out),
        |_, v, a, c| Ok(PairCtx::Fam(contract_family(ring, a, c, v)?)),
        |sp, ctx, ai, ci, scratch| {
            ring.mul_many(&sp.elems, ctx.fam(), &mut scratch.lhs)?;
            ring.contract_many(&sp.table[ai], &sp.fam2[ci], &mut scratch.rhs)
        },
    )
}

/// `(d ⫽ c) ◁ a = (d ◁ ã) ⫽ c̃` over the cospan `(u = f_c : n → m,
/// v = f_a : k → m)`, with `ã`, `c̃` the pullbacks of `a`, `c` across the
/// fiber product `n ×_m k`; `d ∈ A_n`.
fn check_right_linear(
    ring: &dyn GenRing,
    cfg: &CheckConfig,
    carriers: &[Vec<Elem>],
    cospans: &[(PartialFn, PartialFn)],
) -> Result<FamilyReport> {
    run_two_map_family(
        ring,
        cfg,
        AxiomFamily::RightLinear,
        cospans,
        |u, v| {
            let Some(fam1) = family_space_or_skip(ring, u, cfg.shape_budget)? else {
                return Ok(None);
            };
            let Some(fam2) = family_space_or_skip(ring, v, cfg.shape_budget)? else {
                return Ok(None);
            };
            Ok(Some((carriers[u.source()].clone(), fam1, fam2)))
        },
        |es, c, out| ring.contract_many(es, c, out),
        |u, v, c, a| {
            let fp = fiber_product(u, v)?;
            let at = pullback_left(ring, &fp, a, u)?;
            let ct = pullback_right(ring, &fp, c, v)?;
            Ok(PairCtx::Pullbacks(at, ct))
        },
        |sp, ctx, ci, ai, scratch| {
            let PairCtx::Pullbacks(at, ct) = ctx else {
                unreachable!("chain context in the cospan law")
            };
            ring.mul_many(&sp.table[ci], &sp.fam2[ai], &mut scratch.lhs)?;
            ring.mul_many(&sp.elems, at, &mut scratch.tmp)?;
            ring.contract_many(&scratch.tmp, ct, &mut scratch.rhs)
        },
    )
}

// ---------------------------------------------------------------------------
// Sampled checking
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct SampleConfig {
    pub arity_bound: usize,
    /// Law instances drawn per family.
    pub samples: u64,
    pub seed: u64,
    pub witness_cap: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { arity_bound: 3, samples: 1000, seed: 0, witness_cap: 3 }
    }
}

fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> PartialBijection {
    let mut table: Vec<usize> = (0..n).collect();
    table.shuffle(rng);
    PartialBijection::permutation(table).expect("shuffled table")
}

/// Seeded randomized law check.  Every value computed along the way is also
/// asserted to lie in the carrier (`contains`), which is the whole point for
/// non-enumerable instances like the rational ball.
pub fn check_axioms_sampled(ring: &dyn GenRing, cfg: &SampleConfig) -> Result<AxiomReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let cap = cfg.witness_cap;
    let b = cfg.arity_bound;
    let mut families = Vec::new();

    let membership = |acc: &mut Acc, e: &Elem, what: &str| {
        if !ring.contains(e) {
            acc.violation(cap, format!("{what} left the carrier: {}", ring.render(e)));
        }
    };

    for fam in AxiomFamily::ALL {
        let mut acc = Acc::new();
        for _ in 0..cfg.samples {
            match fam {
                AxiomFamily::Pointedness => {
                    let m = rng.gen_range(0..=b);
                    let n = rng.gen_range(0..=b);
                    let f = random_partial_fn(&mut rng, m, n);
                    let bb = random_family(ring, &f, &mut rng);
                    record(ring, &mut acc, cap, ring.mul(&ring.zero(n), &bb), Ok(ring.zero(m)), || {
                        format!("0 ◁ b over f={f}")
                    });
                }
                AxiomFamily::Functoriality => {
                    let m = rng.gen_range(0..=b);
                    let n = rng.gen_range(0..=b);
                    let p = rng.gen_range(0..=b);
                    let f = random_partial_bijection(&mut rng, m, n);
                    let g = random_partial_bijection(&mut rng, n, p);
                    let a = ring.sample(m, &mut rng);
                    let two = ring.transport(&f, &a).and_then(|fa| ring.transport(&g, &fa));
                    if let Ok(v) = &two {
                        membership(&mut acc, v, "transport");
                    }
                    record(ring, &mut acc, cap, two, ring.transport(&g.compose(&f)?, &a), || {
                        format!("composite transport f={}, g={}", f.as_partial_fn(), g.as_partial_fn())
                    });
                }
                AxiomFamily::Equivariance => {
                    let m = rng.gen_range(0..=b);
                    let n = rng.gen_range(0..=b);
                    let f = random_partial_fn(&mut rng, m, n);
                    let bb = random_family(ring, &f, &mut rng);
                    let sm = random_permutation(&mut rng, m);
                    let sn = random_permutation(&mut rng, n);
                    let a = ring.sample(n, &mut rng);
                    let b2 = relabel_family(ring, &bb, &sm, &sn)?;
                    let lhs = ring.transport(&sn, &a).and_then(|x| ring.mul(&x, &b2));
                    let rhs = ring.mul(&a, &bb).and_then(|x| ring.transport(&sm, &x));
                    if let Ok(v) = &lhs {
                        membership(&mut acc, v, "equivariant product");
                    }
                    record(ring, &mut acc, cap, lhs, rhs, || {
                        format!("◁ equivariance f={f}")
                    });
                }
                AxiomFamily::Unit => {
                    let n = rng.gen_range(0..=b);
                    let a = ring.sample(n, &mut rng);
                    let lhs = ring.mul(&ring.unit(), &ElemFamily::of_elem(a.clone()));
                    if let Ok(v) = &lhs {
                        membership(&mut acc, v, "unit product");
                    }
                    record(ring, &mut acc, cap, lhs, Ok(a.clone()), || {
                        format!("1 ◁ (a) for a={}", ring.render(&a))
                    });
                    let units = ElemFamily::units(ring, n);
                    record(ring, &mut acc, cap, ring.contract(&a, &units), Ok(a.clone()), || {
                        format!("a ⫽ (1,…,1) for a={}", ring.render(&a))
                    });
                }
                AxiomFamily::Associativity => {
                    let k = rng.gen_range(0..=b);
                    let m = rng.gen_range(0..=b);
                    let n = rng.gen_range(0..=b);
                    let h = random_partial_fn(&mut rng, k, m);
                    let f = random_partial_fn(&mut rng, m, n);
                    let a = ring.sample(n, &mut rng);
                    let bb = random_family(ring, &f, &mut rng);
                    let e = random_family(ring, &h, &mut rng);
                    let lhs = ring.mul(&a, &bb).and_then(|ab| ring.mul(&ab, &e));
                    let rhs = mul_family(ring, &bb, &e).and_then(|be| ring.mul(&a, &be));
                    if let Ok(v) = &lhs {
                        membership(&mut acc, v, "product");
                    }
                    record(ring, &mut acc, cap, lhs, rhs, || {
                        format!("associativity h={h}, f={f}")
                    });
                }
                AxiomFamily::LeftAdjunction => {
                    let n = rng.gen_range(0..=b);
                    let m = rng.gen_range(0..=b);
                    let k = rng.gen_range(0..=b);
                    let fc = random_partial_fn(&mut rng, n, m);
                    let fa = random_partial_fn(&mut rng, m, k);
                    let d = ring.sample(n, &mut rng);
                    let c = random_family(ring, &fc, &mut rng);
                    let a = random_family(ring, &fa, &mut rng);
                    let lhs = ring.contract(&d, &c).and_then(|dc| ring.contract(&dc, &a));
                    let rhs = mul_family(ring, &a, &c).and_then(|ac| ring.contract(&d, &ac));
                    if let Ok(v) = &lhs {
                        membership(&mut acc, v, "contraction");
                    }
                    record(ring, &mut acc, cap, lhs, rhs, || {
                        format!("left adjunction f_c={fc}, f_a={fa}")
                    });
                }
                AxiomFamily::RightAdjunction => {
                    let n = rng.gen_range(0..=b);
                    let m = rng.gen_range(0..=b);
                    let k = rng.gen_range(0..=b);
                    let fc = random_partial_fn(&mut rng, n, m);
                    let g = random_partial_fn(&mut rng, m, k);
                    let gf = g.compose(&fc)?;
                    let d = ring.sample(m, &mut rng);
                    let c = random_family(ring, &fc, &mut rng);
                    let a = random_family(ring, &gf, &mut rng);
                    let lhs = contract_family(ring, &a, &c, &g)
                        .and_then(|acg| ring.contract(&d, &acg));
                    let rhs = ring.mul(&d, &c).and_then(|dc| ring.contract(&dc, &a));
                    if let Ok(v) = &lhs {
                        membership(&mut acc, v, "contraction");
                    }
                    record(ring, &mut acc, cap, lhs, rhs, || {
                        format!("right adjunction f_c={fc}, g={g}")
                    });
                }
                AxiomFamily::LeftLinear => {
                    let n = rng.gen_range(0..=b);
                    let k = rng.gen_range(0..=b);
                    let m = rng.gen_range(0..=b);
                    let fc = random_partial_fn(&mut rng, n, k);
                    let g = random_partial_fn(&mut rng, k, m);
                    let gf = g.compose(&fc)?;
                    let d = ring.sample(m, &mut rng);
                    let c = random_family(ring, &fc, &mut rng);
                    let a = random_family(ring, &gf, &mut rng);
                    let lhs = contract_family(ring, &a, &c, &g)
                        .and_then(|acg| ring.mul(&d, &acg));
                    let rhs = ring.mul(&d, &a).and_then(|da| ring.contract(&da, &c));
                    if let Ok(v) = &lhs {
                        membership(&mut acc, v, "product");
                    }
                    record(ring, &mut acc, cap, lhs, rhs, || {
                        format!("left linearity f_c={fc}, g={g}")
                    });
                }
                AxiomFamily::RightLinear => {
                    let n = rng.gen_range(0..=b);
                    let m = rng.gen_range(0..=b);
                    let k = rng.gen_range(0..=b);
                    let fc = random_partial_fn(&mut rng, n, m);
                    let fa = random_partial_fn(&mut rng, k, m);
                    let fp = fiber_product(&fc, &fa)?;
                    let d = ring.sample(n, &mut rng);
                    let c = random_family(ring, &fc, &mut rng);
                    let a = random_family(ring, &fa, &mut rng);
                    let at = pullback_left(ring, &fp, &a, &fc)?;
                    let ct = pullback_right(ring, &fp, &c, &fa)?;
                    let lhs = ring.contract(&d, &c).and_then(|dc| ring.mul(&dc, &a));
                    let rhs = ring.mul(&d, &at).and_then(|da| ring.contract(&da, &ct));
                    if let Ok(v) = &lhs {
                        membership(&mut acc, v, "product");
                    }
                    record(ring, &mut acc, cap, lhs, rhs, || {
                        format!("right linearity f_c={fc}, f_a={fa}")
                    });
                }
            }
        }
        families.push(FamilyReport {
            family: fam.name().to_string(),
            shapes: cfg.samples,
            skipped_shapes: 0,
            checked: acc.checked,
            violations: acc.violations,
        });
    }
    Ok(AxiomReport {
        ring: ring.name(),
        arity_bound: cfg.arity_bound,
        orbit_reduction: false,
        families,
    })
}

// ---------------------------------------------------------------------------
// Commutativity
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct CommutativityReport {
    pub ring: String,
    pub arity_bound: usize,
    pub checked: u64,
    pub skipped_blocks: Vec<String>,
    pub violations: Vec<String>,
}

impl CommutativityReport {
    /// `Some(true/false)` when conclusive; `None` when blocks were skipped
    /// and no violation was found.
    pub fn verdict(&self) -> Option<bool> {
        if !self.violations.is_empty() {
            Some(false)
        } else if self.skipped_blocks.is_empty() {
            Some(true)
        } else {
            None
        }
    }
}

/// Commutativity: for `a ∈ A_n`, `b ∈ A_m`, substituting `b` into every slot
/// of `a` equals substituting `a` into every slot of `b` after transposing
/// the `n × m` index grid.
pub fn is_commutative(
    ring: &dyn GenRing,
    arity_bound: usize,
    block_budget: u64,
    witness_cap: usize,
) -> Result<CommutativityReport> {
    let mut acc = Acc::new();
    let mut skipped = Vec::new();
    for n in 0..=arity_bound {
        let an = carrier_or_err(ring, n)?;
        for m in 0..=arity_bound {
            let am = carrier_or_err(ring, m)?;
            if (an.len() as u128) * (am.len() as u128) > block_budget as u128 {
                skipped.push(format!("{n}×{m}"));
                continue;
            }
            let into_n = PartialFn::total(n * m, n, (0..n * m).map(|i| i / m).collect())?;
            let into_m = PartialFn::total(m * n, m, (0..m * n).map(|i| i / n).collect())?;
            let transpose_table: Vec<usize> =
                (0..m * n).map(|idx| (idx % n) * m + idx / n).collect();
            let tau = PartialBijection::permutation(transpose_table)?;
            for a in &an {
                for b in &am {
                    let lhs = ElemFamily::new(into_n.clone(), vec![b.clone(); n])
                        .and_then(|fam| ring.mul(a, &fam));
                    let rhs = ElemFamily::new(into_m.clone(), vec![a.clone(); m])
                        .and_then(|fam| ring.mul(b, &fam))
                        .and_then(|ba| ring.transport(&tau, &ba));
                    record(ring, &mut acc, witness_cap, lhs, rhs, || {
                        format!("a={}, b={}", ring.render(a), ring.render(b))
                    });
                }
            }
        }
    }
    Ok(CommutativityReport {
        ring: ring.name(),
        arity_bound,
        checked: acc.checked,
        skipped_blocks: skipped,
        violations: acc.violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genring::instances::{bool_rig, f_cyclic, f_ring, zmod, RigRing};

    fn quick_cfg(bound: usize) -> CheckConfig {
        CheckConfig { arity_bound: bound, ..CheckConfig::default() }
    }

    #[test]
    fn initial_instance_passes_at_bound_three() {
        let report = check_axioms(&f_ring(), &quick_cfg(3)).unwrap();
        assert!(report.fully_checked(), "{report:?}");
    }

    #[test]
    fn tagged_instance_passes_at_bound_two() {
        let report = check_axioms(&f_cyclic(2).unwrap(), &quick_cfg(2)).unwrap();
        assert!(report.fully_checked(), "{report:?}");
    }

    #[test]
    fn small_rig_passes_at_bound_two() {
        let report = check_axioms(&zmod(4).unwrap(), &quick_cfg(2)).unwrap();
        assert!(report.fully_checked(), "{report:?}");
        assert!(report.total_checked() > 10_000);
    }

    #[test]
    fn reduction_agrees_with_full_enumeration() {
        let reduced = check_axioms(&bool_rig(), &quick_cfg(2)).unwrap();
        let full = check_axioms(
            &bool_rig(),
            &CheckConfig { arity_bound: 2, orbit_reduction: false, ..CheckConfig::default() },
        )
        .unwrap();
        assert!(reduced.fully_checked());
        assert!(full.fully_checked());
        assert!(reduced.total_checked() < full.total_checked());
    }

    /// Wrapper that forges the contraction: any nonempty result gets its
    /// first coordinate bumped.  Everything else delegates.
    #[derive(Debug)]
    struct ForgedContraction(RigRing);

    impl GenRing for ForgedContraction {
        fn name(&self) -> String {
            format!("{}-forged", self.0.name())
        }
        fn zero_empty(&self) -> Elem {
            self.0.zero_empty()
        }
        fn unit(&self) -> Elem {
            self.0.unit()
        }
        fn contains(&self, e: &Elem) -> bool {
            self.0.contains(e)
        }
        fn carrier(&self, arity: usize) -> Option<Vec<Elem>> {
            self.0.carrier(arity)
        }
        fn sample(&self, arity: usize, rng: &mut ChaCha8Rng) -> Elem {
            self.0.sample(arity, rng)
        }
        fn transport(&self, f: &PartialBijection, a: &Elem) -> crate::Result<Elem> {
            self.0.transport(f, a)
        }
        fn mul(&self, a: &Elem, b: &ElemFamily) -> crate::Result<Elem> {
            self.0.mul(a, b)
        }
        fn contract(&self, c: &Elem, b: &ElemFamily) -> crate::Result<Elem> {
            let out = self.0.contract(c, b)?;
            match out {
                Elem::Tuple(mut v) if !v.is_empty() => {
                    v[0] = self.0.add_idx(v[0], self.0.one_idx());
                    Ok(Elem::Tuple(v))
                }
                other => Ok(other),
            }
        }
    }

    #[test]
    fn forged_contraction_is_caught() {
        let forged = ForgedContraction(zmod(6).unwrap());
        let report = check_axioms(&forged, &quick_cfg(1)).unwrap();
        assert!(!report.passed());
        let unit = report.families.iter().find(|f| f.family == "unit").unwrap();
        assert!(!unit.violations.is_empty(), "unit law should expose the forged contraction");
        // The reduction must not hide it either.
        let full = check_axioms(
            &forged,
            &CheckConfig { arity_bound: 1, orbit_reduction: false, ..CheckConfig::default() },
        )
        .unwrap();
        assert!(!full.passed());
    }

    /// Wrapper whose multiplication leaks the coordinate position — breaks
    /// commutativity but nothing arity-1.
    #[derive(Debug)]
    struct SkewMul(RigRing);

    impl GenRing for SkewMul {
        fn name(&self) -> String {
            "skew".to_string()
        }
        fn zero_empty(&self) -> Elem {
            self.0.zero_empty()
        }
        fn unit(&self) -> Elem {
            self.0.unit()
        }
        fn contains(&self, e: &Elem) -> bool {
            self.0.contains(e)
        }
        fn carrier(&self, arity: usize) -> Option<Vec<Elem>> {
            self.0.carrier(arity)
        }
        fn sample(&self, arity: usize, rng: &mut ChaCha8Rng) -> Elem {
            self.0.sample(arity, rng)
        }
        fn transport(&self, f: &PartialBijection, a: &Elem) -> crate::Result<Elem> {
            self.0.transport(f, a)
        }
        fn mul(&self, a: &Elem, b: &ElemFamily) -> crate::Result<Elem> {
            let out = self.0.mul(a, b)?;
            match out {
                Elem::Tuple(mut v) => {
                    for (i, x) in v.iter_mut().enumerate() {
                        *x = self.0.add_idx(*x, i % self.0.size());
                    }
                    Ok(Elem::Tuple(v))
                }
                other => Ok(other),
            }
        }
        fn contract(&self, c: &Elem, b: &ElemFamily) -> crate::Result<Elem> {
            self.0.contract(c, b)
        }
    }

    #[test]
    fn commutativity_verdicts() {
        let z6 = zmod(6).unwrap();
        let report = is_commutative(&z6, 2, 1 << 20, 3).unwrap();
        assert_eq!(report.verdict(), Some(true));

        let skew = SkewMul(zmod(6).unwrap());
        let report = is_commutative(&skew, 2, 1 << 20, 3).unwrap();
        assert_eq!(report.verdict(), Some(false));

        let capped = is_commutative(&z6, 2, 10, 3).unwrap();
        assert_eq!(capped.verdict(), None);
        assert!(!capped.skipped_blocks.is_empty());
    }

    #[test]
    fn sampled_checker_matches_exhaustive_on_a_rig() {
        let z6 = zmod(6).unwrap();
        let cfg = SampleConfig { samples: 200, seed: 11, ..SampleConfig::default() };
        let report = check_axioms_sampled(&z6, &cfg).unwrap();
        assert!(report.passed(), "{report:?}");
        // Nine families at one comparison per sample, plus the extra unit law.
        assert_eq!(report.total_checked(), 200 * 10);
    }

    #[test]
    fn modes_and_reduction_produce_identical_reports() {
        let ring = zmod(3).unwrap();
        let seq = check_axioms(
            &ring,
            &CheckConfig { arity_bound: 2, mode: ExecMode::Sequential, ..CheckConfig::default() },
        )
        .unwrap();
        let par = check_axioms(
            &ring,
            &CheckConfig { arity_bound: 2, mode: ExecMode::Parallel, ..CheckConfig::default() },
        )
        .unwrap();
        assert_eq!(serde_json::to_string(&seq).unwrap(), serde_json::to_string(&par).unwrap());
    }
}
