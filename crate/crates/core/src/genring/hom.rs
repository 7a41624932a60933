//! Homomorphisms of generalized rings.
//!
//! A homomorphism is an arity-indexed map of carriers commuting with
//! transport, multiplication, and contraction, and preserving the unit.
//! [`hom_check`] verifies those equations exhaustively up to an arity bound.

use super::{family_space, Elem, ElemFamily, GenRing};
use crate::error::{Error, Result};
use crate::fincat::{enumerate_partial_bijections, enumerate_partial_fns, PartialBijection};
use std::sync::Arc;

#[derive(Clone)]
pub struct GRHom {
    pub name: String,
    /// Declared source/target instance names, when known.  Module-theoretic
    /// constructions use these to reject base changes along a map whose
    /// endpoints do not match the modules involved.
    endpoints: Option<(String, String)>,
    map: Arc<dyn Fn(&Elem) -> Result<Elem> + Send + Sync>,
}

impl std::fmt::Debug for GRHom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GRHom({})", self.name)
    }
}

impl GRHom {
    pub fn new(
        name: &str,
        map: impl Fn(&Elem) -> Result<Elem> + Send + Sync + 'static,
    ) -> Self {
        GRHom { name: name.to_string(), endpoints: None, map: Arc::new(map) }
    }

    /// Like [`GRHom::new`], but records the source and target instance names
    /// for endpoint validation.
    pub fn between(
        name: &str,
        source: &str,
        target: &str,
        map: impl Fn(&Elem) -> Result<Elem> + Send + Sync + 'static,
    ) -> Self {
        GRHom {
            name: name.to_string(),
            endpoints: Some((source.to_string(), target.to_string())),
            map: Arc::new(map),
        }
    }

    pub fn endpoints(&self) -> Option<(&str, &str)> {
        self.endpoints.as_ref().map(|(s, t)| (s.as_str(), t.as_str()))
    }

    /// Error unless the declared endpoints (when present) are exactly
    /// `source → target`.
    pub fn require_endpoints(&self, source: &str, target: &str) -> Result<()> {
        if let Some((s, t)) = self.endpoints() {
            if s != source || t != target {
                return Err(Error::Arity(format!(
                    "homomorphism {} has endpoints {s} → {t}, needed {source} → {target}",
                    self.name
                )));
            }
        }
        Ok(())
    }

    pub fn apply(&self, e: &Elem) -> Result<Elem> {
        (self.map)(e)
    }

    pub fn apply_family(&self, b: &ElemFamily) -> Result<ElemFamily> {
        let components = b
            .components()
            .iter()
            .map(|c| self.apply(c))
            .collect::<Result<Vec<_>>>()?;
        ElemFamily::new(b.map().clone(), components)
    }
}

#[derive(Clone, Debug)]
pub struct HomReport {
    pub hom: String,
    pub checked: u64,
    pub violations: Vec<String>,
}

impl HomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustively verify that `hom` is a homomorphism `src → dst` on all
/// carriers and operation shapes up to `arity_bound`.
pub fn hom_check(
    src: &dyn GenRing,
    dst: &dyn GenRing,
    hom: &GRHom,
    arity_bound: usize,
    shape_budget: u64,
) -> Result<HomReport> {
    let mut checked = 0u64;
    let mut violations = Vec::new();
    let cap = 5usize;
    let violation = |violations: &mut Vec<String>, msg: String| {
        if violations.len() < cap {
            violations.push(msg);
        }
    };

    let carriers: Vec<Vec<Elem>> = (0..=arity_bound)
        .map(|n| {
            src.carrier(n).ok_or_else(|| {
                Error::NotEnumerable(format!("{} has no enumerable A_{n}", src.name()))
            })
        })
        .collect::<Result<_>>()?;

    checked += 2;
    if hom.apply(&src.zero_empty())? != dst.zero_empty() {
        violation(&mut violations, "zero of arity 0 is not preserved".to_string());
    }
    if hom.apply(&src.unit())? != dst.unit() {
        violation(&mut violations, "unit is not preserved".to_string());
    }

    // Transport squares along partial bijections.
    for m in 0..=arity_bound {
        for n in 0..=arity_bound {
            for f in enumerate_partial_bijections(m, n)? {
                for a in &carriers[m] {
                    checked += 1;
                    let push_then = hom.apply(&src.transport(&f, a)?)?;
                    let then_push = dst.transport(&f, &hom.apply(a)?)?;
                    if push_then != then_push {
                        violation(
                            &mut violations,
                            format!(
                                "transport square fails at f={}, a={}",
                                f.as_partial_fn(),
                                src.render(a)
                            ),
                        );
                    }
                }
            }
        }
    }

    // Operation squares over every map shape.
    for m in 0..=arity_bound {
        for n in 0..=arity_bound {
            for f in enumerate_partial_fns(m, n)? {
                let fams = match family_space(src, &f, shape_budget) {
                    Ok(v) => v,
                    Err(Error::Resource(_)) => continue,
                    Err(e) => return Err(e),
                };
                for b in &fams {
                    let hb = hom.apply_family(b)?;
                    for a in &carriers[n] {
                        checked += 1;
                        let lhs = hom.apply(&src.mul(a, b)?)?;
                        let rhs = dst.mul(&hom.apply(a)?, &hb)?;
                        if lhs != rhs {
                            violation(
                                &mut violations,
                                format!(
                                    "◁ square fails at f={f}, a={}, b has {} components",
                                    src.render(a),
                                    b.components().len()
                                ),
                            );
                        }
                    }
                    for c in &carriers[m] {
                        checked += 1;
                        let lhs = hom.apply(&src.contract(c, b)?)?;
                        let rhs = dst.contract(&hom.apply(c)?, &hb)?;
                        if lhs != rhs {
                            violation(
                                &mut violations,
                                format!(
                                    "⫽ square fails at f={f}, c={}, b has {} components",
                                    src.render(c),
                                    b.components().len()
                                ),
                            );
                        }
                    }
                }
            }
        }
    }

    Ok(HomReport { hom: hom.name.clone(), checked, violations })
}

/// The unique homomorphism out of the initial instance: the basis vector at
/// `i` goes to the unit transported into slot `i`.
pub fn initial_hom(target: &Arc<dyn GenRing>) -> GRHom {
    let target = Arc::clone(target);
    let tname = target.name();
    GRHom::between(&format!("F → {tname}"), "F", &tname, move |e| match e {
        Elem::Zero { arity } => Ok(target.zero(*arity)),
        Elem::Basis { arity, coord, tag: 0 } => {
            let slot = PartialBijection::new(1, *arity, vec![Some(*coord)])?;
            target.transport(&slot, &target.unit())
        }
        other => Err(Error::Structure(format!("not an initial-instance element: {other}"))),
    })
}

/// Entrywise reduction `Z/n → Z/m` for `m | n`.
pub fn mod_reduction_hom(n: usize, m: usize) -> Result<GRHom> {
    if m == 0 || n == 0 || n % m != 0 {
        return Err(Error::validation("hom.modulus", format!("{m} does not divide {n}")));
    }
    Ok(GRHom::between(&format!("Z/{n} → Z/{m}"), &format!("Z/{n}"), &format!("Z/{m}"), move |e| {
        match e {
            Elem::Tuple(v) => Ok(Elem::Tuple(v.iter().map(|&x| x % m).collect())),
            other => Err(Error::Structure(format!("not a coordinate vector: {other}"))),
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genring::instances::{f_ring, zmod};
    use crate::genring::RingRef;

    #[test]
    fn initial_hom_into_a_rig_is_a_homomorphism() {
        let f = f_ring();
        let z6: RingRef = Arc::new(zmod(6).unwrap());
        let hom = initial_hom(&z6);
        let report = hom_check(&f, z6.as_ref(), &hom, 2, 1 << 20).unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn mod_reduction_is_a_homomorphism() {
        let z6 = zmod(6).unwrap();
        let z2 = zmod(2).unwrap();
        let hom = mod_reduction_hom(6, 2).unwrap();
        let report = hom_check(&z6, &z2, &hom, 2, 1 << 20).unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn a_broken_map_is_caught() {
        let z6 = zmod(6).unwrap();
        let z2 = zmod(2).unwrap();
        let broken = GRHom::new("broken", |e| match e {
            Elem::Tuple(v) => Ok(Elem::Tuple(v.iter().map(|&x| (x + 1) % 2).collect())),
            other => Ok(other.clone()),
        });
        let report = hom_check(&z6, &z2, &broken, 1, 1 << 20).unwrap();
        assert!(!report.passed());
    }
}
