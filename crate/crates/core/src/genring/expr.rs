//! Formal ◁/⫽ expressions and their normal form.
//!
//! An [`ElemExpr`] is a tree of multiplications and contractions over
//! concrete leaves from one instance.  Family arguments are themselves small
//! trees ([`FamilyExpr`]); a family-level contraction is only legal as the
//! *direct* argument of an operation node — nesting one inside a family
//! multiplication is a grammar violation and reported as such.
//!
//! Every expression normalizes to a single contraction of an element against
//! a family ([`NormalForm`]; contraction-free expressions get the unit
//! family, since `a ⫽ (1,…,1) = a`).  The normalizer is one structural
//! recursion: multiplication against a split form applies the right-linearity
//! rewrite through a fiber product, contraction against a split form applies
//! left-adjunction, and the two family-contraction cases apply
//! right-adjunction and left-linearity.  Each constructor is consumed once,
//! so termination is structural; soundness is exactly the law set that
//! [`super::axioms::check_axioms`] verifies, and the tests re-verify it here
//! by comparing against direct evaluation.

use super::{
    contract_family, mul_family, pullback_left, pullback_right, random_family, random_partial_fn,
    Elem, ElemFamily, GenRing,
};
use crate::error::{Error, Result};
use crate::fincat::{fiber_product, PartialFn};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElemExpr {
    Leaf(Elem),
    Mul(Box<ElemExpr>, FamilyExpr),
    Contract(Box<ElemExpr>, FamilyExpr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyExpr {
    Leaf(ElemFamily),
    /// Fiberwise product of two families (outer, then inner).
    Mul(Box<FamilyExpr>, Box<FamilyExpr>),
    /// Fiberwise contraction `a ⫽_g c`; legal only directly under an
    /// operation node.
    Contract { a: Box<FamilyExpr>, c: Box<FamilyExpr>, g: PartialFn },
}

impl ElemExpr {
    pub fn leaf(e: Elem) -> Self {
        ElemExpr::Leaf(e)
    }

    pub fn mul(self, f: FamilyExpr) -> Self {
        ElemExpr::Mul(Box::new(self), f)
    }

    pub fn contract(self, f: FamilyExpr) -> Self {
        ElemExpr::Contract(Box::new(self), f)
    }

    /// Total number of operation nodes, elementwise and familywise.
    pub fn size(&self) -> usize {
        match self {
            ElemExpr::Leaf(_) => 1,
            ElemExpr::Mul(x, f) | ElemExpr::Contract(x, f) => 1 + x.size() + f.size(),
        }
    }
}

impl FamilyExpr {
    pub fn leaf(f: ElemFamily) -> Self {
        FamilyExpr::Leaf(f)
    }

    pub fn size(&self) -> usize {
        match self {
            FamilyExpr::Leaf(_) => 1,
            FamilyExpr::Mul(a, b) => 1 + a.size() + b.size(),
            FamilyExpr::Contract { a, c, .. } => 1 + a.size() + c.size(),
        }
    }
}

/// Evaluate a family expression that must be contraction-free (leaves and
/// fiberwise products only).
fn eval_family(ring: &dyn GenRing, f: &FamilyExpr) -> Result<ElemFamily> {
    match f {
        FamilyExpr::Leaf(fam) => Ok(fam.clone()),
        FamilyExpr::Mul(a, b) => {
            let fa = eval_family(ring, a)?;
            let fb = eval_family(ring, b)?;
            mul_family(ring, &fa, &fb)
        }
        FamilyExpr::Contract { .. } => Err(Error::Structure(
            "family contraction is only legal directly under an operation node".to_string(),
        )),
    }
}

/// Direct (non-normalizing) evaluation.
pub fn eval(ring: &dyn GenRing, e: &ElemExpr) -> Result<Elem> {
    match e {
        ElemExpr::Leaf(a) => Ok(a.clone()),
        ElemExpr::Mul(x, f) => {
            let xv = eval(ring, x)?;
            ring.mul(&xv, &eval_op_family(ring, f)?)
        }
        ElemExpr::Contract(x, f) => {
            let xv = eval(ring, x)?;
            ring.contract(&xv, &eval_op_family(ring, f)?)
        }
    }
}

/// Family argument of an operation node: a top-level contraction is legal
/// here (and only here).
fn eval_op_family(ring: &dyn GenRing, f: &FamilyExpr) -> Result<ElemFamily> {
    match f {
        FamilyExpr::Contract { a, c, g } => {
            let fa = eval_family(ring, a)?;
            let fc = eval_family(ring, c)?;
            contract_family(ring, &fa, &fc, g)
        }
        other => eval_family(ring, other),
    }
}

/// `elem ⫽ family`, with contraction-free expressions carrying the unit
/// family over the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub elem: Elem,
    pub family: ElemFamily,
}

impl NormalForm {
    pub fn value(&self, ring: &dyn GenRing) -> Result<Elem> {
        ring.contract(&self.elem, &self.family)
    }
}

/// Working form during normalization: `None` marks a contraction-free value.
type Partial = (Elem, Option<ElemFamily>);

/// `nf ◁ b` for a leaf family `b`.  The split case is the right-linearity
/// rewrite: pull `b` and the pending family back over their fiber product,
/// multiply under the contraction.
fn apply_mul(ring: &dyn GenRing, nf: Partial, b: &ElemFamily) -> Result<Partial> {
    match nf {
        (d, None) => Ok((ring.mul(&d, b)?, None)),
        (d, Some(c)) => {
            let fp = fiber_product(c.map(), b.map())?;
            let bt = pullback_left(ring, &fp, b, c.map())?;
            let ct = pullback_right(ring, &fp, &c, b.map())?;
            Ok((ring.mul(&d, &bt)?, Some(ct)))
        }
    }
}

/// `nf ⫽ b` for a leaf family `b`.  The split case is the left-adjunction
/// rewrite: fold `b` into the pending family by fiberwise multiplication.
fn apply_contract(ring: &dyn GenRing, nf: Partial, b: &ElemFamily) -> Result<Partial> {
    match nf {
        (d, None) => Ok((d, Some(b.clone()))),
        (d, Some(c)) => Ok((d, Some(mul_family(ring, b, &c)?))),
    }
}

fn norm(ring: &dyn GenRing, e: &ElemExpr) -> Result<Partial> {
    match e {
        ElemExpr::Leaf(a) => Ok((a.clone(), None)),
        ElemExpr::Mul(x, f) => {
            let nx = norm(ring, x)?;
            match f {
                FamilyExpr::Contract { a, c, g } => {
                    // Left-linearity: x ◁ (a ⫽_g c) = (x ◁ a) ⫽ c.
                    let _ = g;
                    let fa = eval_family(ring, a)?;
                    let fc = eval_family(ring, c)?;
                    let xa = apply_mul(ring, nx, &fa)?;
                    apply_contract(ring, xa, &fc)
                }
                other => apply_mul(ring, nx, &eval_family(ring, other)?),
            }
        }
        ElemExpr::Contract(x, f) => {
            let nx = norm(ring, x)?;
            match f {
                FamilyExpr::Contract { a, c, g } => {
                    // Right-adjunction: x ⫽ (a ⫽_g c) = (x ◁ c) ⫽ a.
                    let _ = g;
                    let fa = eval_family(ring, a)?;
                    let fc = eval_family(ring, c)?;
                    let xc = apply_mul(ring, nx, &fc)?;
                    apply_contract(ring, xc, &fa)
                }
                other => apply_contract(ring, nx, &eval_family(ring, other)?),
            }
        }
    }
}

/// Rewrite to the single-contraction normal form.
pub fn normalize(ring: &dyn GenRing, e: &ElemExpr) -> Result<NormalForm> {
    let (elem, family) = norm(ring, e)?;
    let family = match family {
        Some(f) => f,
        None => ElemFamily::units(ring, elem.arity()),
    };
    Ok(NormalForm { elem, family })
}

// ---------------------------------------------------------------------------
// Seeded generation
// ---------------------------------------------------------------------------

/// Seeded random expression with operation depth ≤ `depth` and index sets of
/// size ≤ `arity_bound`.  Returns the expression and its output arity.
/// Shapes are drawn first so every generated tree is well-formed.
pub fn random_expr(
    ring: &dyn GenRing,
    rng: &mut ChaCha8Rng,
    depth: usize,
    arity_bound: usize,
) -> (ElemExpr, usize) {
    if depth == 0 {
        let n = rng.gen_range(0..=arity_bound);
        return (ElemExpr::Leaf(ring.sample(n, rng)), n);
    }
    let (inner, t) = random_expr(ring, rng, depth - 1, arity_bound);
    // Output arity of Mul is the family's source; of Contract, its target.
    let other = rng.gen_range(0..=arity_bound);
    let mul = rng.gen_bool(0.5);
    let (src, dst) = if mul { (other, t) } else { (t, other) };
    let fam = random_op_family(ring, rng, src, dst);
    let node = if mul { inner.mul(fam) } else { inner.contract(fam) };
    (node, other)
}

/// Random family expression over some `f : src → dst`, legal as an operation
/// argument.
fn random_op_family(
    ring: &dyn GenRing,
    rng: &mut ChaCha8Rng,
    src: usize,
    dst: usize,
) -> FamilyExpr {
    match rng.gen_range(0..4u8) {
        // Plain leaf.
        0 | 1 => {
            let f = random_partial_fn(rng, src, dst);
            FamilyExpr::Leaf(random_family(ring, &f, rng))
        }
        // Fiberwise product through a random waypoint.
        2 => {
            let mid = rng.gen_range(0..=dst.max(src));
            let g_outer = random_partial_fn(rng, mid, dst);
            let g_inner = random_partial_fn(rng, src, mid);
            let outer = FamilyExpr::leaf(random_family(ring, &g_outer, rng));
            let inner = FamilyExpr::leaf(random_family(ring, &g_inner, rng));
            FamilyExpr::Mul(Box::new(outer), Box::new(inner))
        }
        // Fiberwise contraction a ⫽_g c over g : src → dst.
        _ => {
            let g = random_partial_fn(rng, src, dst);
            let p = rng.gen_range(0..=src.max(1));
            let f0 = random_partial_fn(rng, p, src);
            let composite = g.compose(&f0).expect("composable by construction");
            let a = FamilyExpr::leaf(random_family(ring, &composite, rng));
            let c = FamilyExpr::leaf(random_family(ring, &f0, rng));
            FamilyExpr::Contract { a: Box::new(a), c: Box::new(c), g }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genring::instances::zmod;
    use rand::SeedableRng;

    fn t(v: &[usize]) -> Elem {
        Elem::Tuple(v.to_vec())
    }

    #[test]
    fn worked_normalization() {
        let z6 = zmod(6).unwrap();
        // ((d ⫽ c) ⫽ a) with d = (1,2,3), c over 3→2, a over 2→1.
        let fc = PartialFn::total(3, 2, vec![0, 0, 1]).unwrap();
        let fa = PartialFn::total(2, 1, vec![0, 0]).unwrap();
        let c = ElemFamily::new(fc, vec![t(&[1, 4]), t(&[5])]).unwrap();
        let a = ElemFamily::new(fa, vec![t(&[2, 3])]).unwrap();
        let e = ElemExpr::leaf(t(&[1, 2, 3]))
            .contract(FamilyExpr::leaf(c))
            .contract(FamilyExpr::leaf(a));
        let direct = eval(&z6, &e).unwrap();
        let nf = normalize(&z6, &e).unwrap();
        assert_eq!(nf.value(&z6).unwrap(), direct);
        // Left-adjunction folded both contractions into one family.
        assert_eq!(nf.elem, t(&[1, 2, 3]));
        assert_eq!(nf.family.map().source(), 3);
        assert_eq!(nf.family.map().target(), 1);
    }

    #[test]
    fn pure_expressions_get_the_unit_family() {
        let z6 = zmod(6).unwrap();
        let f = PartialFn::total(2, 1, vec![0, 0]).unwrap();
        let b = ElemFamily::new(f, vec![t(&[4, 5])]).unwrap();
        let e = ElemExpr::leaf(t(&[3])).mul(FamilyExpr::leaf(b));
        let nf = normalize(&z6, &e).unwrap();
        assert_eq!(nf.family, ElemFamily::units(&z6, 2));
        assert_eq!(nf.value(&z6).unwrap(), eval(&z6, &e).unwrap());
    }

    #[test]
    fn nested_family_contraction_is_rejected() {
        let z6 = zmod(6).unwrap();
        let id1 = PartialFn::identity(1);
        let leaf = || FamilyExpr::leaf(ElemFamily::scalars(vec![t(&[2])]).unwrap());
        let bad = FamilyExpr::Mul(
            Box::new(FamilyExpr::Contract {
                a: Box::new(leaf()),
                c: Box::new(leaf()),
                g: id1.clone(),
            }),
            Box::new(leaf()),
        );
        let e = ElemExpr::leaf(t(&[1])).mul(bad);
        assert!(matches!(eval(&z6, &e), Err(Error::Structure(_))));
        assert!(matches!(normalize(&z6, &e), Err(Error::Structure(_))));
    }

    #[test]
    fn seeded_expressions_normalize_soundly() {
        let z6 = zmod(6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for i in 0..60 {
            let (e, _) = random_expr(&z6, &mut rng, 4, 3);
            let direct = eval(&z6, &e).unwrap();
            let nf = normalize(&z6, &e).unwrap();
            assert_eq!(nf.value(&z6).unwrap(), direct, "expression #{i}: {e:?}");
        }
    }
}
