//! Representation rings: basis metadata, multiplication sources and the
//! ring operations (product, star, dimension, trace) plus axiom checks.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::element::{BasisId, Element};
use crate::error::{Result, RingError};
use crate::families::FamilyParams;
use crate::scalar::Scalar;

/// Metadata of one basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisInfo {
    pub label: String,
    pub dim: BigInt,
    pub star: BasisId,
    pub rho_mult: BigInt,
}

impl BasisInfo {
    pub fn new(label: impl Into<String>, dim: impl Into<BigInt>, star: usize, rho_mult: impl Into<BigInt>) -> Self {
        BasisInfo { label: label.into(), dim: dim.into(), star: BasisId(star as i64), rho_mult: rho_mult.into() }
    }
}

/// Sparse product of two basis elements.
pub type Terms = Arc<[(BasisId, BigInt)]>;

/// A pure product rule for rings with an infinite (lazily enumerated) basis.
pub trait ProductRule: Send + Sync {
    fn identity(&self) -> BasisId;
    fn info(&self, id: BasisId) -> Option<BasisInfo>;
    fn lookup(&self, label: &str) -> Option<BasisId>;
    fn product(&self, i: BasisId, j: BasisId) -> Vec<(BasisId, BigInt)>;
    /// The finite set of indices with positive regular multiplicity.
    fn projective_support(&self) -> Vec<BasisId>;
    /// The first `count` indices in a fixed enumeration order.
    fn enumerate(&self, count: usize) -> Vec<BasisId>;
    /// Index sets the family declares to be closed representation ideals.
    fn declared_ideals(&self) -> Vec<BTreeSet<BasisId>> {
        Vec::new()
    }
}

struct Table {
    basis: Vec<BasisInfo>,
    labels: HashMap<String, usize>,
    products: Vec<Terms>,
}

struct RuleSource {
    rule: Arc<dyn ProductRule>,
    memo: RwLock<HashMap<(BasisId, BasisId), Terms>>,
}

enum Source {
    Table(Table),
    Rule(RuleSource),
}

struct Inner {
    name: String,
    identity: BasisId,
    closed: bool,
    family: Option<FamilyParams>,
    source: Source,
}

/// A representation ring. Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct RingSpec {
    inner: Arc<Inner>,
}

impl fmt::Debug for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingSpec({}, rank {:?})", self.inner.name, self.rank())
    }
}

fn canonical_terms(mut v: Vec<(BasisId, BigInt)>) -> Terms {
    v.sort_by_key(|t| t.0);
    let mut out: Vec<(BasisId, BigInt)> = Vec::with_capacity(v.len());
    for (k, c) in v {
        match out.last_mut() {
            Some(last) if last.0 == k => last.1 += c,
            _ => out.push((k, c)),
        }
    }
    out.retain(|t| !t.1.is_zero());
    out.into()
}

impl RingSpec {
    /// Builds a finite ring from an explicit list of products, one entry per
    /// unordered pair. A missing pair is an error.
    pub fn from_pairs(
        name: impl Into<String>,
        identity: usize,
        closed: bool,
        basis: Vec<BasisInfo>,
        pairs: Vec<((usize, usize), Vec<(usize, BigInt)>)>,
    ) -> Result<Self> {
        let r = basis.len();
        let mut slots: Vec<Option<Terms>> = vec![None; r * r];
        for ((i, j), terms) in pairs {
            if i >= r || j >= r || terms.iter().any(|t| t.0 >= r) {
                return Err(RingError::Parse(format!("product ({i}, {j}) refers to an index outside the basis")));
            }
            let t = canonical_terms(terms.into_iter().map(|(k, c)| (BasisId(k as i64), c)).collect());
            for (a, b) in [(i, j), (j, i)] {
                match &slots[a * r + b] {
                    Some(prev) if *prev != t => {
                        return Err(RingError::Parse(format!(
                            "conflicting products listed for ({}, {})",
                            basis[i].label, basis[j].label
                        )))
                    }
                    _ => slots[a * r + b] = Some(t.clone()),
                }
            }
        }
        let mut products = Vec::with_capacity(r * r);
        for i in 0..r {
            for j in 0..r {
                match slots[i * r + j].take() {
                    Some(t) => products.push(t),
                    None => {
                        return Err(RingError::Parse(format!(
                            "missing product for pair ({}, {})",
                            basis[i.min(j)].label, basis[i.max(j)].label
                        )))
                    }
                }
            }
        }
        Self::from_table(name.into(), identity, closed, basis, products)
    }

    /// Builds a finite ring by evaluating `f(i, j)` for `i <= j`.
    pub fn from_fn(
        name: impl Into<String>,
        identity: usize,
        closed: bool,
        basis: Vec<BasisInfo>,
        f: impl Fn(usize, usize) -> Vec<(usize, BigInt)>,
    ) -> Result<Self> {
        let r = basis.len();
        let mut products: Vec<Option<Terms>> = vec![None; r * r];
        for i in 0..r {
            for j in i..r {
                let t = canonical_terms(f(i, j).into_iter().map(|(k, c)| (BasisId(k as i64), c)).collect());
                products[j * r + i] = Some(t.clone());
                products[i * r + j] = Some(t);
            }
        }
        Self::from_table(name.into(), identity, closed, basis, products.into_iter().map(Option::unwrap).collect())
    }

    fn from_table(name: String, identity: usize, closed: bool, basis: Vec<BasisInfo>, products: Vec<Terms>) -> Result<Self> {
        let r = basis.len();
        if identity >= r {
            return Err(RingError::Parse("identity index outside the basis".into()));
        }
        let mut labels = HashMap::new();
        for (i, b) in basis.iter().enumerate() {
            if b.star.0 < 0 || b.star.index() >= r {
                return Err(RingError::Parse(format!("star of {} is outside the basis", b.label)));
            }
            if labels.insert(b.label.clone(), i).is_some() {
                return Err(RingError::Parse(format!("duplicate label {}", b.label)));
            }
        }
        Ok(RingSpec {
            inner: Arc::new(Inner {
                name,
                identity: BasisId(identity as i64),
                closed,
                family: None,
                source: Source::Table(Table { basis, labels, products }),
            }),
        })
    }

    pub fn from_rule(name: impl Into<String>, closed: bool, rule: Arc<dyn ProductRule>) -> Self {
        RingSpec {
            inner: Arc::new(Inner {
                name: name.into(),
                identity: rule.identity(),
                closed,
                family: None,
                source: Source::Rule(RuleSource { rule, memo: RwLock::new(HashMap::new()) }),
            }),
        }
    }

    /// Attaches the family parameters this ring was built from.
    pub fn with_family(self, family: FamilyParams) -> Self {
        let inner = Arc::try_unwrap(self.inner).unwrap_or_else(|_| panic!("ring already shared"));
        RingSpec { inner: Arc::new(Inner { family: Some(family), ..inner }) }
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn identity(&self) -> BasisId {
        self.inner.identity
    }

    pub fn one<S: Scalar>(&self) -> Element<S> {
        Element::basis(self.identity())
    }

    /// Whether the ring declares the strengthened axiom (ii′).
    pub fn closed(&self) -> bool {
        self.inner.closed
    }

    pub fn family(&self) -> Option<&FamilyParams> {
        self.inner.family.as_ref()
    }

    pub fn rank(&self) -> Option<usize> {
        match &self.inner.source {
            Source::Table(t) => Some(t.basis.len()),
            Source::Rule(_) => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.rank().is_some()
    }

    /// All basis indices of a finite ring.
    pub fn basis_ids(&self) -> Result<Vec<BasisId>> {
        match self.rank() {
            Some(r) => Ok((0..r).map(|i| BasisId(i as i64)).collect()),
            None => Err(RingError::UnsupportedRing(format!("{} has an infinite basis", self.name()))),
        }
    }

    /// The first `count` indices in the ring's enumeration order.
    pub fn enumerate(&self, count: usize) -> Vec<BasisId> {
        match &self.inner.source {
            Source::Table(t) => (0..t.basis.len().min(count)).map(|i| BasisId(i as i64)).collect(),
            Source::Rule(r) => r.rule.enumerate(count),
        }
    }

    pub fn declared_ideals(&self) -> Vec<BTreeSet<BasisId>> {
        match &self.inner.source {
            Source::Table(_) => Vec::new(),
            Source::Rule(r) => r.rule.declared_ideals(),
        }
    }

    pub fn contains(&self, id: BasisId) -> bool {
        match &self.inner.source {
            Source::Table(t) => id.0 >= 0 && id.index() < t.basis.len(),
            Source::Rule(r) => r.rule.info(id).is_some(),
        }
    }

    fn unknown(&self, id: BasisId) -> RingError {
        RingError::UnknownIndex(format!("{} in {}", id.0, self.name()))
    }

    pub fn info(&self, id: BasisId) -> Result<BasisInfo> {
        match &self.inner.source {
            Source::Table(t) => {
                if id.0 < 0 {
                    return Err(self.unknown(id));
                }
                t.basis.get(id.index()).cloned().ok_or_else(|| self.unknown(id))
            }
            Source::Rule(r) => r.rule.info(id).ok_or_else(|| self.unknown(id)),
        }
    }

    /// Basis metadata of a finite ring, in index order.
    pub fn basis_infos(&self) -> Result<Vec<BasisInfo>> {
        match &self.inner.source {
            Source::Table(t) => Ok(t.basis.clone()),
            Source::Rule(_) => Err(RingError::UnsupportedRing(format!("{} has an infinite basis", self.name()))),
        }
    }

    pub fn dim_of(&self, id: BasisId) -> Result<BigInt> {
        match &self.inner.source {
            Source::Table(t) if id.0 >= 0 && id.index() < t.basis.len() => Ok(t.basis[id.index()].dim.clone()),
            _ => Ok(self.info(id)?.dim),
        }
    }

    pub fn star_of(&self, id: BasisId) -> Result<BasisId> {
        match &self.inner.source {
            Source::Table(t) if id.0 >= 0 && id.index() < t.basis.len() => Ok(t.basis[id.index()].star),
            _ => Ok(self.info(id)?.star),
        }
    }

    pub fn rho_mult(&self, id: BasisId) -> Result<BigInt> {
        Ok(self.info(id)?.rho_mult)
    }

    pub fn label(&self, id: BasisId) -> String {
        self.info(id).map(|i| i.label).unwrap_or_else(|_| format!("?{}", id.0))
    }

    pub fn lookup(&self, label: &str) -> Result<BasisId> {
        let found = match &self.inner.source {
            Source::Table(t) => t.labels.get(label).map(|i| BasisId(*i as i64)),
            Source::Rule(r) => r.rule.lookup(label),
        };
        found.ok_or_else(|| RingError::UnknownIndex(label.to_string()))
    }

    /// Indices with positive regular multiplicity.
    pub fn projective_support(&self) -> Vec<BasisId> {
        match &self.inner.source {
            Source::Table(t) => t
                .basis
                .iter()
                .enumerate()
                .filter(|(_, b)| b.rho_mult.is_positive())
                .map(|(i, _)| BasisId(i as i64))
                .collect(),
            Source::Rule(r) => r.rule.projective_support(),
        }
    }

    /// The regular element `rho = sum rho_mult(i) x_i`.
    pub fn rho(&self) -> Element {
        Element::from_terms(
            self.projective_support().into_iter().map(|i| (i, self.rho_mult(i).unwrap_or_else(|_| BigInt::zero()))),
        )
    }

    /// The product `x_i x_j` of two basis elements.
    pub fn basis_product(&self, i: BasisId, j: BasisId) -> Result<Terms> {
        match &self.inner.source {
            Source::Table(t) => {
                let r = t.basis.len();
                if i.0 < 0 || i.index() >= r {
                    return Err(self.unknown(i));
                }
                if j.0 < 0 || j.index() >= r {
                    return Err(self.unknown(j));
                }
                Ok(t.products[i.index() * r + j.index()].clone())
            }
            Source::Rule(rs) => {
                let key = if i <= j { (i, j) } else { (j, i) };
                if let Some(t) = rs.memo.read().unwrap().get(&key) {
                    return Ok(t.clone());
                }
                if rs.rule.info(i).is_none() {
                    return Err(self.unknown(i));
                }
                if rs.rule.info(j).is_none() {
                    return Err(self.unknown(j));
                }
                let t = canonical_terms(rs.rule.product(key.0, key.1));
                rs.memo.write().unwrap().insert(key, t.clone());
                Ok(t)
            }
        }
    }

    /// Bilinear extension of the basis products.
    pub fn multiply<S: Scalar>(&self, a: &Element<S>, b: &Element<S>) -> Result<Element<S>> {
        let mut acc: HashMap<BasisId, S> = HashMap::new();
        for (i, ca) in a.iter() {
            for (j, cb) in b.iter() {
                let prod = ca.clone() * cb.clone();
                for (k, c) in self.basis_product(i, j)?.iter() {
                    let term = prod.clone() * S::from_bigint(c);
                    match acc.get_mut(k) {
                        Some(v) => *v = v.clone() + term,
                        None => {
                            acc.insert(*k, term);
                        }
                    }
                }
            }
        }
        Ok(Element::from_terms(acc))
    }

    /// `x^n`, with `x^0 = 1`.
    pub fn pow<S: Scalar>(&self, x: &Element<S>, n: u32) -> Result<Element<S>> {
        let mut result = self.one();
        for _ in 0..n {
            result = self.multiply(&result, x)?;
        }
        Ok(result)
    }

    /// Conjugate-linear duality: `sum a_i x_i -> sum conj(a_i) x_{i*}`.
    pub fn star<S: Scalar>(&self, a: &Element<S>) -> Result<Element<S>> {
        let mut out = Element::zero();
        for (i, c) in a.iter() {
            out.add_term(self.star_of(i)?, c.conj());
        }
        Ok(out)
    }

    pub fn dim<S: Scalar>(&self, a: &Element<S>) -> Result<S> {
        let mut total = S::zero();
        for (i, c) in a.iter() {
            total = total + c.clone() * S::from_bigint(&self.dim_of(i)?);
        }
        Ok(total)
    }

    /// Coefficient of the identity.
    pub fn trace<S: Scalar>(&self, a: &Element<S>) -> S {
        a.coeff(self.identity())
    }

    /// Fails with `UnknownIndex` if the support leaves the basis.
    pub fn check<S: Scalar>(&self, a: &Element<S>) -> Result<()> {
        for i in a.support() {
            if !self.contains(i) {
                return Err(self.unknown(i));
            }
        }
        Ok(())
    }

    /// Renders an element with the ring's labels.
    pub fn format<S: Scalar>(&self, a: &Element<S>, fmt_coeff: impl Fn(&S) -> String) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, (i, c)) in a.iter().enumerate() {
            let mut coeff = fmt_coeff(c);
            let negative = coeff.starts_with('-');
            if negative {
                coeff.remove(0);
            }
            let sep = match (n, negative) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            out.push_str(sep);
            if coeff != "1" {
                out.push_str(&coeff);
                out.push(' ');
            }
            out.push_str(&self.label(i));
        }
        out
    }

    pub fn format_int(&self, a: &Element) -> String {
        self.format(a, |c| c.to_string())
    }
}

/// Coefficient of the identity.
pub fn trace<S: Scalar>(a: &Element<S>, ring: &RingSpec) -> S {
    ring.trace(a)
}

/// `n_i = [x_i x_{i*} : 1]`.
pub fn self_pairing(ring: &RingSpec, i: BasisId) -> Result<BigInt> {
    let prod = ring.basis_product(i, ring.star_of(i)?)?;
    let one = ring.identity();
    Ok(prod.iter().find(|t| t.0 == one).map(|t| t.1.clone()).unwrap_or_else(BigInt::zero))
}

/// Outcome of a single axiom check.
#[derive(Clone, Debug)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

/// Result of [`verify_axioms`].
#[derive(Clone, Debug)]
pub struct AxiomReport {
    /// "exhaustive" or "sampled (seed N)".
    pub mode: String,
    pub checks: Vec<AxiomCheck>,
    /// Whether (ii′) was observed on the checked indices.
    pub observed_closed: bool,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Seed used for sampled axiom checks on rule-based rings.
pub const AXIOM_SAMPLE_SEED: u64 = 0x5eed;

/// Finite rings up to this rank get exhaustive associativity checks.
const EXHAUSTIVE_TRIPLE_RANK: usize = 40;

struct Recorder {
    checks: Vec<AxiomCheck>,
}

impl Recorder {
    fn start(&mut self, name: &'static str) {
        self.checks.push(AxiomCheck { name, passed: true, witness: None });
    }
    fn fail(&mut self, name: &'static str, witness: String) {
        let c = self.checks.iter_mut().find(|c| c.name == name).unwrap();
        if c.passed {
            c.passed = false;
            c.witness = Some(witness);
        }
    }
}

/// Checks the representation ring axioms. Finite rings are checked
/// exhaustively on pairs; triples and rule-based rings are sampled.
pub fn verify_axioms(ring: &RingSpec, sample_budget: usize) -> AxiomReport {
    let mut rng = ChaCha8Rng::seed_from_u64(AXIOM_SAMPLE_SEED);
    let (pool, exhaustive_pairs) = match ring.rank() {
        Some(r) => (ring.enumerate(r), true),
        None => (ring.enumerate(sample_budget.clamp(8, 64)), false),
    };
    let mut rec = Recorder { checks: Vec::new() };
    for name in [
        "index_validity",
        "non_negative_constants",
        "commutativity",
        "associativity",
        "identity",
        "star_involution",
        "star_multiplicative",
        "axiom_ii",
        "axiom_ii_prime",
        "axiom_iii",
        "dimension_homomorphism",
        "rho_absorption",
        "positive_return",
    ] {
        rec.start(name);
    }
    let mut observed_closed = true;
    let one = ring.identity();
    let lbl = |i: BasisId| ring.label(i);

    let pairs: Vec<(BasisId, BasisId)> = if exhaustive_pairs {
        pool.iter().flat_map(|&i| pool.iter().map(move |&j| (i, j))).collect()
    } else {
        (0..sample_budget).map(|_| (*pool.choose(&mut rng).unwrap(), *pool.choose(&mut rng).unwrap())).collect()
    };

    for &i in &pool {
        let info = match ring.info(i) {
            Ok(info) => info,
            Err(e) => {
                rec.fail("index_validity", e.to_string());
                continue;
            }
        };
        if info.dim < BigInt::one() {
            rec.fail("dimension_homomorphism", format!("dim({}) = {} < 1", info.label, info.dim));
        }
        if info.rho_mult.is_negative() {
            rec.fail("rho_absorption", format!("rho_mult({}) is negative", info.label));
        }
        match ring.info(info.star) {
            Ok(si) => {
                if si.star != i {
                    rec.fail("star_involution", format!("star(star({})) = {}", info.label, lbl(si.star)));
                }
                if si.dim != info.dim {
                    rec.fail("star_involution", format!("dim({}) != dim({})", info.label, si.label));
                }
            }
            Err(e) => rec.fail("index_validity", e.to_string()),
        }
        let x = Element::<BigInt>::basis(i);
        match ring.multiply(&x, &ring.one()) {
            Ok(p) if p == x => {}
            Ok(_) => rec.fail("identity", format!("1 * {} != {}", info.label, info.label)),
            Err(e) => rec.fail("index_validity", e.to_string()),
        }
        // Axioms (iii) and the positive-return lemma.
        if let Ok(xs) = ring.multiply(&x, &Element::basis(info.star)) {
            let n_i = xs.coeff(one);
            if let Ok(xxx) = ring.multiply(&xs, &x) {
                let back = xxx.coeff(i);
                if !back.is_positive() {
                    rec.fail("positive_return", format!("[{0} {0}* {0} : {0}] = {back}", info.label));
                }
                if n_i.is_zero() && back < BigInt::from(2) {
                    rec.fail("axiom_iii", format!("[{0} {0}*:1] = 0 but [{0} {0}* {0} : {0}] = {back}", info.label));
                }
            }
        }
        // Regular element absorption.
        let rho = ring.rho();
        if rho.is_zero() {
            rec.fail("rho_absorption", "rho is zero".into());
        } else if let Ok(xr) = ring.multiply(&x, &rho) {
            if xr != rho.scale(&info.dim) {
                rec.fail("rho_absorption", format!("{} * rho != dim * rho", info.label));
            }
        }
    }

    for &(i, j) in &pairs {
        let Ok(prod) = ring.basis_product(i, j) else {
            rec.fail("index_validity", format!("product ({}, {}) unavailable", lbl(i), lbl(j)));
            continue;
        };
        for (k, c) in prod.iter() {
            if c.is_negative() {
                rec.fail("non_negative_constants", format!("c({}, {}, {}) = {c}", lbl(i), lbl(j), lbl(*k)));
            }
            if !ring.contains(*k) {
                rec.fail("index_validity", format!("product ({}, {}) leaves the basis", lbl(i), lbl(j)));
            }
        }
        if let Ok(rev) = ring.basis_product(j, i) {
            if rev != prod {
                rec.fail("commutativity", format!("{} {} != {} {}", lbl(i), lbl(j), lbl(j), lbl(i)));
            }
        }
        let unit = prod.iter().find(|t| t.0 == one).map(|t| t.1.clone()).unwrap_or_default();
        let star_i = ring.star_of(i).unwrap_or(i);
        if unit.is_positive() && j != star_i {
            rec.fail("axiom_ii", format!("[{} {} : 1] = {unit} but {} is not the dual", lbl(i), lbl(j), lbl(j)));
        }
        if j == star_i && unit > BigInt::one() {
            observed_closed = false;
            if ring.closed() {
                rec.fail("axiom_ii_prime", format!("[{} {} : 1] = {unit}", lbl(i), lbl(j)));
            }
        }
        let (Ok(di), Ok(dj)) = (ring.dim_of(i), ring.dim_of(j)) else { continue };
        let xi = Element::<BigInt>::basis(i);
        let xj = Element::<BigInt>::basis(j);
        if let Ok(p) = ring.multiply(&xi, &xj) {
            if ring.dim(&p).ok() != Some(&di * &dj) {
                rec.fail("dimension_homomorphism", format!("dim({} {}) != {}", lbl(i), lbl(j), &di * &dj));
            }
            if let (Ok(sp), Ok(si), Ok(sj)) = (ring.star(&p), ring.star(&xi), ring.star(&xj)) {
                if ring.multiply(&si, &sj).ok() != Some(sp) {
                    rec.fail("star_multiplicative", format!("star({} {}) != star({}) star({})", lbl(i), lbl(j), lbl(i), lbl(j)));
                }
            }
        }
    }

    let triples: Vec<(BasisId, BasisId, BasisId)> = match ring.rank() {
        Some(r) if r <= EXHAUSTIVE_TRIPLE_RANK => {
            let mut v = Vec::new();
            for &i in &pool {
                for &j in &pool {
                    for &k in &pool {
                        v.push((i, j, k));
                    }
                }
            }
            v
        }
        _ => (0..sample_budget)
            .map(|_| (*pool.choose(&mut rng).unwrap(), *pool.choose(&mut rng).unwrap(), *pool.choose(&mut rng).unwrap()))
            .collect(),
    };
    let exhaustive = exhaustive_pairs && ring.rank().is_some_and(|r| r <= EXHAUSTIVE_TRIPLE_RANK);
    for (i, j, k) in triples {
        let (xi, xj, xk) = (Element::<BigInt>::basis(i), Element::basis(j), Element::basis(k));
        let left = ring.multiply(&xi, &xj).and_then(|p| ring.multiply(&p, &xk));
        let right = ring.multiply(&xj, &xk).and_then(|p| ring.multiply(&xi, &p));
        if let (Ok(l), Ok(r)) = (left, right) {
            if l != r {
                rec.fail("associativity", format!("({} {}) {} != {} ({} {})", lbl(i), lbl(j), lbl(k), lbl(i), lbl(j), lbl(k)));
            }
        }
    }

    AxiomReport {
        mode: if exhaustive { "exhaustive".to_string() } else { format!("sampled (seed {AXIOM_SAMPLE_SEED})") },
        checks: rec.checks,
        observed_closed,
    }
}
