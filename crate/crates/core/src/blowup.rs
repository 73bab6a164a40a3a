//! Iterated blow-up combinatorics: upward-closed ("good") families of
//! subsets of {1..N}, the arrangement quotient ring with the relation
//! ρ̃_K·ρ̃_L = 0 for incomparable K, L, and the verification routines for
//! the product identities and the Chern-class matching of the main
//! construction.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::chern::formal::CoefficientSpec;
use crate::error::{Error, Result};

/// Subsets of {1..N} are u32 bitmasks; bit i−1 stands for the element i.
pub type Subset = u32;

fn subset_elements(mask: Subset) -> Vec<u32> {
    (0..32).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

fn is_subset(a: Subset, b: Subset) -> bool {
    a & b == a
}

fn comparable(a: Subset, b: Subset) -> bool {
    is_subset(a, b) || is_subset(b, a)
}

fn format_subset(mask: Subset) -> String {
    let inner = subset_elements(mask)
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(",");
    format!("[{inner}]")
}

/// An upward-closed family of non-empty subsets of {1..N}: membership of J
/// forces membership of every superset of J.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodFamily {
    ground_size: u32,
    members: BTreeSet<Subset>,
}

impl GoodFamily {
    pub fn empty(ground_size: u32) -> Self {
        assert!((1..=16).contains(&ground_size));
        GoodFamily {
            ground_size,
            members: BTreeSet::new(),
        }
    }

    /// Upward closure of the given generators.
    pub fn from_minimal(ground_size: u32, minimal: &[Subset]) -> Result<Self> {
        assert!((1..=16).contains(&ground_size));
        let full: Subset = (1 << ground_size) - 1;
        let mut members = BTreeSet::new();
        for &gen in minimal {
            if gen == 0 {
                return Err(Error::EmptySubsetGiven);
            }
            if !is_subset(gen, full) {
                return Err(Error::Parse(format!(
                    "subset {} exceeds ground set of size {ground_size}",
                    format_subset(gen)
                )));
            }
            // all supersets of gen: iterate over subsets of the complement
            let complement = full & !gen;
            let mut extra = complement;
            loop {
                members.insert(gen | extra);
                if extra == 0 {
                    break;
                }
                extra = (extra - 1) & complement;
            }
        }
        Ok(GoodFamily {
            ground_size,
            members,
        })
    }

    /// Principal family U_I = {J | I ⊆ J}.
    pub fn principal(ground_size: u32, i: Subset) -> Result<Self> {
        Self::from_minimal(ground_size, &[i])
    }

    pub fn ground_size(&self) -> u32 {
        self.ground_size
    }

    pub fn members(&self) -> &BTreeSet<Subset> {
        &self.members
    }

    pub fn contains(&self, j: Subset) -> bool {
        self.members.contains(&j)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The antichain of minimal members (canonical generators).
    pub fn minimal_members(&self) -> Vec<Subset> {
        self.members
            .iter()
            .copied()
            .filter(|&j| {
                !self
                    .members
                    .iter()
                    .any(|&k| k != j && is_subset(k, j))
            })
            .collect()
    }

    fn check_ground(&self, other: &GoodFamily) -> Result<()> {
        if self.ground_size != other.ground_size {
            return Err(Error::GroundMismatch);
        }
        Ok(())
    }

    pub fn intersect(&self, other: &GoodFamily) -> Result<GoodFamily> {
        self.check_ground(other)?;
        Ok(GoodFamily {
            ground_size: self.ground_size,
            members: self.members.intersection(&other.members).copied().collect(),
        })
    }

    pub fn union(&self, other: &GoodFamily) -> Result<GoodFamily> {
        self.check_ground(other)?;
        Ok(GoodFamily {
            ground_size: self.ground_size,
            members: self.members.union(&other.members).copied().collect(),
        })
    }

    pub fn is_subfamily_of(&self, other: &GoodFamily) -> bool {
        self.members.is_subset(&other.members)
    }

    fn is_upward_closed(&self) -> bool {
        let full: Subset = (1 << self.ground_size) - 1;
        self.members.iter().all(|&j| {
            (1..=full)
                .filter(|&k| is_subset(j, k))
                .all(|k| self.members.contains(&k))
        })
    }

    /// Every upward-closed family over {1..N} (including the empty one).
    /// Exponential in 2^N; intended for N ≤ 4.
    pub fn enumerate_all(ground_size: u32) -> Vec<GoodFamily> {
        assert!((1..=4).contains(&ground_size));
        let full: Subset = (1 << ground_size) - 1;
        let subsets: Vec<Subset> = (1..=full).collect();
        let mut out = Vec::new();
        for choice in 0u64..1 << subsets.len() {
            let members: BTreeSet<Subset> = subsets
                .iter()
                .enumerate()
                .filter(|(i, _)| choice >> i & 1 == 1)
                .map(|(_, &s)| s)
                .collect();
            let fam = GoodFamily {
                ground_size,
                members,
            };
            if fam.is_upward_closed() {
                out.push(fam);
            }
        }
        out
    }

    /// Parses minimal-generator syntax like "[1][2,3]".
    pub fn parse(text: &str, ground_size: u32) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(GoodFamily::empty(ground_size));
        }
        let mut minimal = Vec::new();
        let inner = text
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("malformed family {text:?}")))?;
        for group in inner.split("][") {
            let mut mask: Subset = 0;
            for piece in group.split(',') {
                let e: u32 = piece
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad element {piece:?}")))?;
                if e == 0 || e > ground_size {
                    return Err(Error::Parse(format!(
                        "element {e} outside ground set of size {ground_size}"
                    )));
                }
                mask |= 1 << (e - 1);
            }
            minimal.push(mask);
        }
        Self::from_minimal(ground_size, &minimal)
    }
}

impl fmt::Display for GoodFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "(empty)");
        }
        for m in self.minimal_members() {
            write!(f, "{}", format_subset(m))?;
        }
        Ok(())
    }
}

/// Ambient context for arrangement arithmetic. With `free` set the
/// incomparability relation is NOT imposed — used to demonstrate that the
/// product identities genuinely depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementRing {
    pub ground_size: u32,
    pub coeffs: CoefficientSpec,
    pub dimension_cap: Option<u32>,
    pub free: bool,
}

impl ArrangementRing {
    pub fn new(ground_size: u32) -> Self {
        assert!((1..=16).contains(&ground_size));
        ArrangementRing {
            ground_size,
            coeffs: CoefficientSpec::Integers,
            dimension_cap: None,
            free: false,
        }
    }

    pub fn with_cap(mut self, cap: u32) -> Self {
        self.dimension_cap = Some(cap);
        self
    }

    pub fn with_free_relations(mut self) -> Self {
        self.free = true;
        self
    }

    pub fn zero(&self) -> ArrangementElement {
        ArrangementElement {
            ring: *self,
            terms: BTreeMap::new(),
        }
    }

    /// The generator ρ̃_I.
    pub fn generator(&self, i: Subset) -> ArrangementElement {
        assert!(i != 0 && is_subset(i, (1 << self.ground_size) - 1));
        let mut el = self.zero();
        el.add_term(vec![i], BigInt::one());
        el
    }
}

/// A linear combination of chain monomials: each monomial is a multiset of
/// non-empty subsets, pairwise comparable under inclusion (unless the ring
/// is free). Stored sorted by (cardinality, mask).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrangementElement {
    ring: ArrangementRing,
    terms: BTreeMap<Vec<Subset>, BigInt>,
}

fn sort_chain(chain: &mut [Subset]) {
    chain.sort_by_key(|&s| (s.count_ones(), s));
}

impl ArrangementElement {
    pub fn ring(&self) -> &ArrangementRing {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Subset>, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn monomial_survives(&self, chain: &[Subset]) -> bool {
        if let Some(cap) = self.ring.dimension_cap {
            if chain.iter().any(|s| s.count_ones() > cap) {
                return false;
            }
        }
        if !self.ring.free {
            for i in 0..chain.len() {
                for j in i + 1..chain.len() {
                    if !comparable(chain[i], chain[j]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn add_term(&mut self, mut chain: Vec<Subset>, coeff: BigInt) {
        sort_chain(&mut chain);
        if !self.monomial_survives(&chain) {
            return;
        }
        let entry = self.terms.entry(chain.clone()).or_insert_with(BigInt::zero);
        *entry = self.ring.coeffs.reduce(&(&*entry + coeff));
        if entry.is_zero() {
            self.terms.remove(&chain);
        }
    }

    pub fn add(&self, other: &ArrangementElement) -> Result<ArrangementElement> {
        if self.ring != other.ring {
            return Err(Error::GroundMismatch);
        }
        let mut out = self.clone();
        for (chain, c) in &other.terms {
            out.add_term(chain.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &ArrangementElement) -> Result<ArrangementElement> {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> ArrangementElement {
        let mut out = self.ring.zero();
        for (chain, c) in &self.terms {
            out.add_term(chain.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &ArrangementElement) -> Result<ArrangementElement> {
        if self.ring != other.ring {
            return Err(Error::GroundMismatch);
        }
        let mut out = self.ring.zero();
        for (ca, va) in &self.terms {
            for (cb, vb) in &other.terms {
                let mut chain = ca.clone();
                chain.extend_from_slice(cb);
                out.add_term(chain, va * vb);
            }
        }
        Ok(out)
    }

    /// JSON form: {"chains": [{"subsets": [...], "multiplicities": [...],
    /// "coefficient": "..."}]}.
    pub fn to_json(&self) -> serde_json::Value {
        let chains: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(chain, coeff)| {
                let mut subsets: Vec<Vec<u32>> = Vec::new();
                let mut multiplicities: Vec<u32> = Vec::new();
                for &s in chain {
                    let elems = subset_elements(s);
                    if subsets.last() == Some(&elems) {
                        *multiplicities.last_mut().unwrap() += 1;
                    } else {
                        subsets.push(elems);
                        multiplicities.push(1);
                    }
                }
                serde_json::json!({
                    "subsets": subsets,
                    "multiplicities": multiplicities,
                    "coefficient": coeff.to_string(),
                })
            })
            .collect();
        serde_json::json!({ "chains": chains })
    }
}

impl fmt::Display for ArrangementElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (chain, coeff) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if chain.is_empty() {
                write!(f, "{coeff}")?;
                continue;
            }
            if !coeff.is_one() {
                write!(f, "{coeff}*")?;
            }
            let mono = chain
                .iter()
                .map(|&s| format!("rho~{}", format_subset(s)))
                .collect::<Vec<_>>()
                .join("*");
            write!(f, "{mono}")?;
        }
        Ok(())
    }
}

/// ρ_U = Σ_{J ∈ U} ρ̃_J.
pub fn rho_of(family: &GoodFamily, ring: &ArrangementRing) -> Result<ArrangementElement> {
    if family.ground_size() != ring.ground_size {
        return Err(Error::GroundMismatch);
    }
    let mut out = ring.zero();
    for &j in family.members() {
        out = out.add(&ring.generator(j))?;
    }
    Ok(out)
}

/// π*(a_i) = Σ_{I ∋ i} ρ̃_I.
pub fn pullback_class(i: u32, ring: &ArrangementRing) -> ArrangementElement {
    assert!((1..=ring.ground_size).contains(&i));
    let full: Subset = (1 << ring.ground_size) - 1;
    let mut out = ring.zero();
    for mask in 1..=full {
        if mask >> (i - 1) & 1 == 1 {
            out = out.add(&ring.generator(mask)).unwrap();
        }
    }
    out
}

/// b_j = Σ_{|J| ≥ j} ρ̃_J.
pub fn b_class(j: u32, ring: &ArrangementRing) -> ArrangementElement {
    let full: Subset = (1 << ring.ground_size) - 1;
    let mut out = ring.zero();
    for mask in 1..=full {
        if mask.count_ones() >= j {
            out = out.add(&ring.generator(mask)).unwrap();
        }
    }
    out
}

/// Elementary symmetric functions e_1..e_n of the given ring elements,
/// read off from ∏(t + x_k).
pub fn elementary_symmetric_of(
    elements: &[ArrangementElement],
    ring: &ArrangementRing,
) -> Result<Vec<ArrangementElement>> {
    let n = elements.len();
    // e[i] after processing each x: e_i += e_{i-1} * x
    let mut e: Vec<ArrangementElement> = vec![ring.zero(); n + 1];
    let mut one = ring.zero();
    one.add_term(Vec::new(), BigInt::one());
    e[0] = one;
    for x in elements {
        for i in (1..=n).rev() {
            let bump = e[i - 1].mul(x)?;
            e[i] = e[i].add(&bump)?;
        }
    }
    Ok(e[1..].to_vec())
}

/// Outcome of a coefficient-identity check, with the first differing
/// monomial as witness on failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub pass: bool,
    pub witness: Option<String>,
}

fn compare(lhs: &ArrangementElement, rhs: &ArrangementElement) -> Result<IdentityReport> {
    let diff = lhs.sub(rhs)?;
    let witness = diff.terms().next().map(|(chain, _)| {
        chain
            .iter()
            .map(|&s| format!("rho~{}", format_subset(s)))
            .collect::<Vec<_>>()
            .join("*")
    });
    Ok(IdentityReport {
        pass: witness.is_none(),
        witness,
    })
}

/// Both coefficient identities of (t−ρ_U)(t−ρ_W) = (t−ρ_{U∩W})(t−ρ_{U∪W}):
/// the sum and the product of the two ρ's.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerObReport {
    pub sum_identity: IdentityReport,
    pub product_identity: IdentityReport,
}

impl PerObReport {
    pub fn pass(&self) -> bool {
        self.sum_identity.pass && self.product_identity.pass
    }
}

pub fn verify_per_ob(
    u: &GoodFamily,
    w: &GoodFamily,
    ring: &ArrangementRing,
) -> Result<PerObReport> {
    let ru = rho_of(u, ring)?;
    let rw = rho_of(w, ring)?;
    let ri = rho_of(&u.intersect(w)?, ring)?;
    let rn = rho_of(&u.union(w)?, ring)?;
    Ok(PerObReport {
        sum_identity: compare(&ru.add(&rw)?, &ri.add(&rn)?)?,
        product_identity: compare(&ru.mul(&rw)?, &ri.mul(&rn)?)?,
    })
}

/// The m-fold product identity ∏_k (t − ρ_{U_k}) = ∏_l (t − ρ_{W_l}),
/// where W_l = ∪_{|P|=l} ∩_{k∈P} U_k. Checks every elementary symmetric
/// function of the two ρ-collections, plus W_l monotonicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemDvaReport {
    pub coefficient_identities: Vec<IdentityReport>,
    pub monotone: bool,
}

impl LemDvaReport {
    pub fn pass(&self) -> bool {
        self.monotone && self.coefficient_identities.iter().all(|r| r.pass)
    }
}

pub fn derived_families(families: &[GoodFamily]) -> Result<Vec<GoodFamily>> {
    assert!(!families.is_empty());
    let n = families[0].ground_size();
    for f in families {
        if f.ground_size() != n {
            return Err(Error::GroundMismatch);
        }
    }
    let m = families.len();
    let mut out = Vec::with_capacity(m);
    for l in 1..=m {
        let mut w = GoodFamily::empty(n);
        for choice in 0u64..1 << m {
            if choice.count_ones() as usize != l {
                continue;
            }
            let mut inter: Option<GoodFamily> = None;
            for (k, f) in families.iter().enumerate() {
                if choice >> k & 1 == 1 {
                    inter = Some(match inter {
                        None => f.clone(),
                        Some(acc) => acc.intersect(f)?,
                    });
                }
            }
            w = w.union(&inter.unwrap())?;
        }
        out.push(w);
    }
    Ok(out)
}

pub fn verify_lem_dva(
    families: &[GoodFamily],
    ring: &ArrangementRing,
) -> Result<LemDvaReport> {
    let derived = derived_families(families)?;
    let monotone = derived
        .windows(2)
        .all(|w| w[1].is_subfamily_of(&w[0]));
    let rhos_u: Vec<ArrangementElement> = families
        .iter()
        .map(|f| rho_of(f, ring))
        .collect::<Result<_>>()?;
    let rhos_w: Vec<ArrangementElement> = derived
        .iter()
        .map(|f| rho_of(f, ring))
        .collect::<Result<_>>()?;
    let eu = elementary_symmetric_of(&rhos_u, ring)?;
    let ew = elementary_symmetric_of(&rhos_w, ring)?;
    let coefficient_identities = eu
        .iter()
        .zip(&ew)
        .map(|(a, b)| compare(a, b))
        .collect::<Result<Vec<_>>>()?;
    Ok(LemDvaReport {
        coefficient_identities,
        monotone,
    })
}

/// The main construction: pullback line classes π*(a_i) on one side and
/// the b_j = Σ_{|J| ≥ j} ρ̃_J on the other, with every elementary
/// symmetric function matching. With a dimension cap, the trailing b_j
/// vanish.
#[derive(Debug, Clone)]
pub struct MainConstruction {
    pub pullbacks: Vec<ArrangementElement>,
    pub b: Vec<ArrangementElement>,
    pub chern_identities: Vec<IdentityReport>,
    pub capped_trailing_zero: bool,
}

impl MainConstruction {
    pub fn pass(&self) -> bool {
        self.capped_trailing_zero && self.chern_identities.iter().all(|r| r.pass)
    }
}

pub fn main_construction(n: u32, dimension_cap: Option<u32>) -> Result<MainConstruction> {
    let mut ring = ArrangementRing::new(n);
    if let Some(cap) = dimension_cap {
        ring = ring.with_cap(cap);
    }
    let pullbacks: Vec<ArrangementElement> =
        (1..=n).map(|i| pullback_class(i, &ring)).collect();
    let b: Vec<ArrangementElement> = (1..=n).map(|j| b_class(j, &ring)).collect();
    let ea = elementary_symmetric_of(&pullbacks, &ring)?;
    let eb = elementary_symmetric_of(&b, &ring)?;
    let chern_identities = ea
        .iter()
        .zip(&eb)
        .map(|(x, y)| compare(x, y))
        .collect::<Result<Vec<_>>>()?;
    let capped_trailing_zero = match dimension_cap {
        None => true,
        Some(cap) => b
            .iter()
            .enumerate()
            .filter(|(idx, _)| *idx as u32 + 1 > cap)
            .all(|(_, el)| el.is_zero()),
    };
    Ok(MainConstruction {
        pullbacks,
        b,
        chern_identities,
        capped_trailing_zero,
    })
}
