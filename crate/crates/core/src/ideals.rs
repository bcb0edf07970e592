//! Representation ideals, cores and quotient rings.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::element::{BasisId, Element};
use crate::error::{Result, RingError};
use crate::ring::{self_pairing, BasisInfo, RingSpec};
use crate::scalar::Scalar;

/// Default number of basis products a closure on a rule-based ring may use.
pub const CLOSURE_BUDGET: usize = 10_000;

/// Basis elements multiplied against while closing ideals of rule-based rings.
const RULE_POOL: usize = 64;

#[derive(Clone)]
enum Membership {
    Explicit(BTreeSet<BasisId>),
    Predicate(Arc<dyn Fn(BasisId) -> bool + Send + Sync>),
}

/// A proper, star-closed, absorbing set of basis indices.
#[derive(Clone)]
pub struct RepIdeal {
    ring: RingSpec,
    name: String,
    members: Membership,
    certified: bool,
}

impl fmt::Debug for RepIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.members {
            Membership::Explicit(s) => {
                let labels: Vec<String> = s.iter().map(|i| self.ring.label(*i)).collect();
                write!(f, "RepIdeal({}: {{{}}})", self.name, labels.join(", "))
            }
            Membership::Predicate(_) => write!(f, "RepIdeal({}: predicate)", self.name),
        }
    }
}

impl RepIdeal {
    fn explicit(ring: &RingSpec, name: impl Into<String>, set: BTreeSet<BasisId>, certified: bool) -> Self {
        RepIdeal { ring: ring.clone(), name: name.into(), members: Membership::Explicit(set), certified }
    }

    /// The empty ideal.
    pub fn empty(ring: &RingSpec) -> Self {
        Self::explicit(ring, "empty", BTreeSet::new(), true)
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Whether absorption and star-closure were verified (exhaustively for
    /// finite rings, by declaration or on a sample pool for rule rings).
    pub fn certified(&self) -> bool {
        self.certified
    }

    pub fn contains(&self, id: BasisId) -> bool {
        match &self.members {
            Membership::Explicit(s) => s.contains(&id),
            Membership::Predicate(f) => f(id),
        }
    }

    /// The member set, when it is finite and explicit.
    pub fn members(&self) -> Option<&BTreeSet<BasisId>> {
        match &self.members {
            Membership::Explicit(s) => Some(s),
            Membership::Predicate(_) => None,
        }
    }

    /// Members of a finite ring, or explicit members of a rule ring.
    pub fn member_list(&self) -> Result<Vec<BasisId>> {
        match &self.members {
            Membership::Explicit(s) => Ok(s.iter().copied().collect()),
            Membership::Predicate(f) => Ok(self.ring.basis_ids()?.into_iter().filter(|i| f(*i)).collect()),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(&self.members, Membership::Explicit(s) if s.is_empty())
    }

    /// Labels of the members, for display.
    pub fn labels(&self) -> Result<Vec<String>> {
        Ok(self.member_list()?.into_iter().map(|i| self.ring.label(i)).collect())
    }

    /// Complement indices of a finite ring, in basis order.
    pub fn complement(&self) -> Result<Vec<BasisId>> {
        if !self.ring.is_finite() {
            return Err(RingError::InfiniteComplement);
        }
        Ok(self.ring.basis_ids()?.into_iter().filter(|i| !self.contains(*i)).collect())
    }

    /// `x` lies in the span of the ideal.
    pub fn spans<S: Scalar>(&self, x: &Element<S>) -> bool {
        x.support().all(|i| self.contains(i))
    }

    /// Every member of `self` is a member of `other` (finite rings).
    pub fn is_subset_of(&self, other: &RepIdeal) -> Result<bool> {
        Ok(self.member_list()?.into_iter().all(|i| other.contains(i)))
    }
}

/// Outcome of closing a set of generators.
#[derive(Debug, Clone)]
pub enum Closure {
    Ideal(RepIdeal),
    /// The identity became reachable, so the generated ideal is everything.
    Full,
}

impl Closure {
    pub fn ideal(self) -> Option<RepIdeal> {
        match self {
            Closure::Ideal(i) => Some(i),
            Closure::Full => None,
        }
    }
}

/// Smallest star-closed absorbing set containing `gens`.
pub fn ideal_closure(gens: &[BasisId], ring: &RingSpec) -> Result<Closure> {
    closure_with_budget(gens, ring, CLOSURE_BUDGET)
}

pub fn closure_with_budget(gens: &[BasisId], ring: &RingSpec, budget: usize) -> Result<Closure> {
    for &g in gens {
        ring.info(g)?;
    }
    let pool = match ring.rank() {
        Some(r) => ring.enumerate(r),
        None => ring.enumerate(RULE_POOL),
    };
    let one = ring.identity();
    let mut members: BTreeSet<BasisId> = BTreeSet::new();
    let mut queue: VecDeque<BasisId> = VecDeque::new();
    let push = |i: BasisId, members: &mut BTreeSet<BasisId>, queue: &mut VecDeque<BasisId>| {
        if members.insert(i) {
            queue.push_back(i);
        }
    };
    for &g in gens {
        push(g, &mut members, &mut queue);
    }
    let mut products = 0usize;
    while let Some(i) = queue.pop_front() {
        if i == one {
            return Ok(Closure::Full);
        }
        push(ring.star_of(i)?, &mut members, &mut queue);
        for &j in &pool {
            products += 1;
            if !ring.is_finite() && products > budget {
                return Err(RingError::NonTerminating(budget));
            }
            for (k, _) in ring.basis_product(i, j)?.iter() {
                push(*k, &mut members, &mut queue);
            }
        }
    }
    if members.contains(&one) {
        return Ok(Closure::Full);
    }
    let certified = ring.is_finite() || ring.declared_ideals().contains(&members);
    let name = if gens.is_empty() { "empty".to_string() } else { "generated".to_string() };
    Ok(Closure::Ideal(RepIdeal::explicit(ring, name, members, certified)))
}

/// Checks that an explicit set is a representation ideal; the error names
/// the first violation.
pub fn check_ideal(set: &BTreeSet<BasisId>, ring: &RingSpec) -> Result<()> {
    if set.contains(&ring.identity()) {
        return Err(RingError::NotAnIdeal("contains the identity".into()));
    }
    let pool = match ring.rank() {
        Some(r) => ring.enumerate(r),
        None => ring.enumerate(RULE_POOL),
    };
    for &i in set {
        let s = ring.star_of(i)?;
        if !set.contains(&s) {
            return Err(RingError::NotAnIdeal(format!("{} is a member but its dual {} is not", ring.label(i), ring.label(s))));
        }
        for &j in &pool {
            for (k, _) in ring.basis_product(i, j)?.iter() {
                if !set.contains(k) {
                    return Err(RingError::NotAnIdeal(format!(
                        "{} {} contains {}",
                        ring.label(i),
                        ring.label(j),
                        ring.label(*k)
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Wraps an explicit set after checking it.
pub fn ideal_from_set(set: BTreeSet<BasisId>, ring: &RingSpec) -> Result<RepIdeal> {
    check_ideal(&set, ring)?;
    let certified = ring.is_finite() || ring.declared_ideals().contains(&set);
    Ok(RepIdeal::explicit(ring, "explicit", set, certified))
}

/// `{i : [x_i x_{i*} : 1] = 0}`, the unique maximal ideal.
pub fn x_max(ring: &RingSpec) -> Result<RepIdeal> {
    if ring.rho_mult(ring.identity())?.is_positive() {
        return Err(RingError::OrdinaryRing);
    }
    match ring.rank() {
        Some(_) => {
            let mut set = BTreeSet::new();
            for i in ring.basis_ids()? {
                if self_pairing(ring, i)?.is_zero() {
                    set.insert(i);
                }
            }
            let certified = check_ideal(&set, ring).is_ok();
            Ok(RepIdeal::explicit(ring, "max", set, certified))
        }
        None => {
            let r = ring.clone();
            let pred = move |i: BasisId| self_pairing(&r, i).map(|n| n.is_zero()).unwrap_or(false);
            Ok(RepIdeal { ring: ring.clone(), name: "max".into(), members: Membership::Predicate(Arc::new(pred)), certified: false })
        }
    }
}

/// Indices with positive regular multiplicity, the unique minimal
/// non-empty ideal.
pub fn x_proj(ring: &RingSpec) -> RepIdeal {
    let set: BTreeSet<BasisId> = ring.projective_support().into_iter().collect();
    let certified = ring.is_finite() || ring.declared_ideals().contains(&set);
    RepIdeal::explicit(ring, "proj", set, certified)
}

/// Drops the coefficients on ideal members.
pub fn core<S: Scalar>(x: &Element<S>, ideal: &RepIdeal) -> Element<S> {
    x.filter(|i| !ideal.contains(i))
}

/// The quotient ring on the complement of `ideal`, with its map back to the
/// original indices.
pub struct Quotient {
    pub ring: RingSpec,
    /// `original[k]` is the index in the parent ring of quotient index `k`.
    pub original: Vec<BasisId>,
}

impl Quotient {
    /// Maps an element of the parent into the quotient (dropping the ideal).
    pub fn project<S: Scalar>(&self, x: &Element<S>) -> Element<S> {
        Element::from_terms(
            self.original.iter().enumerate().map(|(k, &o)| (BasisId(k as i64), x.coeff(o))).filter(|(_, c)| !c.is_zero()),
        )
    }

    /// Lifts an element of the quotient to the parent along the complement.
    pub fn lift<S: Scalar>(&self, x: &Element<S>) -> Element<S> {
        Element::from_terms(x.iter().map(|(k, c)| (self.original[k.index()], c.clone())))
    }
}

pub fn quotient(ring: &RingSpec, ideal: &RepIdeal) -> Result<Quotient> {
    if !ring.is_finite() {
        return Err(RingError::InfiniteComplement);
    }
    if ideal.is_empty() {
        return Ok(Quotient { ring: ring.clone(), original: ring.basis_ids()? });
    }
    let original = ideal.complement()?;
    let mut position = vec![usize::MAX; ring.rank().unwrap()];
    for (k, &o) in original.iter().enumerate() {
        position[o.index()] = k;
    }
    let identity = position[ring.identity().index()];
    if identity == usize::MAX {
        return Err(RingError::NotAnIdeal("contains the identity".into()));
    }
    let mut basis = Vec::with_capacity(original.len());
    for &o in &original {
        let info = ring.info(o)?;
        let star = position[info.star.index()];
        basis.push(BasisInfo { star: BasisId(star as i64), ..info });
    }
    let prods: Vec<Vec<(usize, BigInt)>> = {
        let mut v = Vec::with_capacity(original.len() * original.len());
        for &a in &original {
            for &b in &original {
                let t = ring.basis_product(a, b)?;
                v.push(
                    t.iter()
                        .filter(|(k, _)| !ideal.contains(*k))
                        .map(|(k, c)| (position[k.index()], c.clone()))
                        .collect(),
                );
            }
        }
        v
    };
    let r = original.len();
    let q = RingSpec::from_fn(format!("{}/{}", ring.name(), ideal.name()), identity, ring.closed(), basis, |i, j| {
        prods[i * r + j].clone()
    })?;
    Ok(Quotient { ring: q, original })
}

/// The quotient ring alone.
pub fn quotient_ring(ring: &RingSpec, ideal: &RepIdeal) -> Result<RingSpec> {
    Ok(quotient(ring, ideal)?.ring)
}

/// Parses an ideal literal: `proj`, `max`, `empty`, or `{L1,L2,...}`. An
/// explicit set must already be closed unless `close` is set.
pub fn parse_ideal(src: &str, ring: &RingSpec, close: bool) -> Result<RepIdeal> {
    let s = src.trim();
    match s {
        "proj" => return Ok(x_proj(ring)),
        "max" => return x_max(ring),
        "empty" | "{}" => return Ok(RepIdeal::empty(ring)),
        _ => {}
    }
    let inner = s
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| RingError::Parse(format!("ideal must be proj, max, empty or {{...}}, got {s:?}")))?;
    let mut set = BTreeSet::new();
    for label in inner.split(',').map(str::trim).filter(|l| !l.is_empty()) {
        set.insert(ring.lookup(label)?);
    }
    if close {
        let gens: Vec<BasisId> = set.into_iter().collect();
        match ideal_closure(&gens, ring)? {
            Closure::Ideal(i) => Ok(i),
            Closure::Full => Err(RingError::NotAnIdeal("the closure contains the identity".into())),
        }
    } else {
        ideal_from_set(set, ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cyclic_p, sweedler, toy_i, z2_z4_integral, TOY_RHO};

    fn ids(ring: &RingSpec, labels: &[&str]) -> BTreeSet<BasisId> {
        labels.iter().map(|l| ring.lookup(l).unwrap()).collect()
    }

    #[test]
    fn closures_in_z5() {
        let r = cyclic_p(5).unwrap();
        let j5 = ring_id(&r, "J5");
        let c = ideal_closure(&[j5], &r).unwrap().ideal().unwrap();
        assert_eq!(c.members().unwrap(), &ids(&r, &["J5"]));
        assert!(matches!(ideal_closure(&[ring_id(&r, "J3")], &r).unwrap(), Closure::Full));
        assert!(ideal_closure(&[], &r).unwrap().ideal().unwrap().is_empty());
    }

    fn ring_id(r: &RingSpec, l: &str) -> BasisId {
        r.lookup(l).unwrap()
    }

    #[test]
    fn maximal_ideals() {
        let r = cyclic_p(5).unwrap();
        assert_eq!(x_max(&r).unwrap().members().unwrap(), &ids(&r, &["J5"]));
        let z = z2_z4_integral();
        assert_eq!(x_max(&z).unwrap().members().unwrap(), &ids(&z, &["c3", "c4", "c7", "c8", "c9"]));
        assert_eq!(x_proj(&z).members().unwrap(), &ids(&z, &["c9"]));
        let s = sweedler();
        assert_eq!(x_max(&s).unwrap().members().unwrap(), &ids(&s, &["P0", "P1"]));
        assert!(x_max(&s).unwrap().certified());
    }

    #[test]
    fn toy_projective_ideal() {
        let r = toy_i(2).unwrap();
        let p = x_proj(&r);
        assert_eq!(p.members().unwrap(), &BTreeSet::from([TOY_RHO]));
        assert!(p.certified());
        let c = ideal_closure(&[TOY_RHO], &r).unwrap().ideal().unwrap();
        assert!(c.certified());
        assert!(matches!(ideal_closure(&[BasisId(1)], &r).unwrap(), Closure::Full));
    }

    #[test]
    fn cores() {
        let r = cyclic_p(5).unwrap();
        let j2 = Element::<BigInt>::basis(ring_id(&r, "J2"));
        let x4 = r.pow(&j2, 4).unwrap();
        let proj = x_proj(&r);
        let c = core(&x4, &proj);
        assert_eq!(r.format_int(&c), "2 J1 + 3 J3");
        assert!(core(&r.rho(), &proj).is_zero());
        assert_eq!(core(&x4, &RepIdeal::empty(&r)), x4);
    }

    #[test]
    fn sweedler_quotient() {
        let s = sweedler();
        let q = quotient_ring(&s, &x_max(&s).unwrap()).unwrap();
        assert_eq!(q.rank(), Some(2));
        let s1 = Element::<BigInt>::basis(q.lookup("S1").unwrap());
        assert_eq!(q.multiply(&s1, &s1).unwrap(), q.one());
    }

    #[test]
    fn literals() {
        let r = cyclic_p(5).unwrap();
        assert_eq!(parse_ideal("{J5}", &r, false).unwrap().members().unwrap(), &ids(&r, &["J5"]));
        assert!(matches!(parse_ideal("{J4}", &r, false), Err(RingError::NotAnIdeal(_))));
        assert!(matches!(parse_ideal("{J4}", &r, true), Err(RingError::NotAnIdeal(_))));
        assert!(parse_ideal("max", &r, false).is_ok());
    }

    #[test]
    fn ordinary_ring_has_no_max() {
        // Z/5 modulo its projectives is not ordinary, but a ring whose
        // identity is projective is; use the rank-2 Sweedler quotient with
        // rho declared on the identity.
        let basis = vec![BasisInfo::new("1", 1, 0, 1)];
        let r = RingSpec::from_fn("trivial", 0, true, basis, |_, _| vec![(0, BigInt::from(1))]).unwrap();
        assert_eq!(x_max(&r).unwrap_err(), RingError::OrdinaryRing);
    }
}
