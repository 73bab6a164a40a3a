//! Graded total-Chern-class vectors, Whitney products and Adams
//! operations, plus the mi-search solver and the K0 lift.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::chern::formal::{FormalPoly, FormalRing, GradedClass};
use crate::error::{Error, Result};
use crate::modp::{mod_inverse, PrimePower};

/// The total Chern class of a K0 element: graded sequence c_1..c_D.
/// Entries beyond the stored top degree are zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChernVector<E> {
    classes: Vec<E>,
}

impl<E: GradedClass> ChernVector<E> {
    pub fn new(classes: Vec<E>) -> Self {
        assert!(!classes.is_empty());
        ChernVector { classes }
    }

    /// All-zero vector of the given top degree, with ring taken from the
    /// prototype element.
    pub fn zero(prototype: &E, top_degree: usize) -> Self {
        assert!(top_degree >= 1);
        ChernVector {
            classes: vec![prototype.zero_like(); top_degree],
        }
    }

    pub fn top_degree(&self) -> usize {
        self.classes.len()
    }

    /// The class c_d (1-based); zero beyond the stored range.
    pub fn class(&self, d: usize) -> E {
        assert!(d >= 1);
        if d <= self.classes.len() {
            self.classes[d - 1].clone()
        } else {
            self.classes[0].zero_like()
        }
    }

    pub fn classes(&self) -> &[E] {
        &self.classes
    }

    pub fn set_class(&mut self, d: usize, value: E) {
        assert!((1..=self.classes.len()).contains(&d));
        self.classes[d - 1] = value;
    }

    /// Whitney product: (1 + Σ result_d) = (1 + Σ a_d)(1 + Σ b_d), degree by
    /// degree, truncated at max(D_a, D_b).
    pub fn whitney_product(&self, other: &Self) -> Result<Self> {
        if !self.classes[0].same_ring(&other.classes[0]) {
            return Err(Error::RingMismatch);
        }
        let top = self.top_degree().max(other.top_degree());
        let mut out = Vec::with_capacity(top);
        for d in 1..=top {
            let mut acc = self.class(d).add(&other.class(d));
            for i in 1..d {
                acc = acc.add(&self.class(i).mul(&other.class(d - i)));
            }
            out.push(acc);
        }
        Ok(ChernVector { classes: out })
    }

    /// Adams operation Ψ_m on Chern data: c_k goes to m^k · c_k.
    pub fn adams_single(&self, mult: i64) -> Self {
        let m = BigInt::from(mult);
        let mut scalar = BigInt::one();
        let classes = self
            .classes
            .iter()
            .map(|c| {
                scalar *= &m;
                c.scale(&scalar)
            })
            .collect();
        ChernVector { classes }
    }

    /// A linear combination Ψ = Σ_i Ψ_{m_i} applied `repetitions` times:
    /// each application is the Whitney product of the single-operation
    /// images.
    pub fn adams_combination(&self, comb: &AdamsCombination) -> Result<Self> {
        let mut current = self.clone();
        for _ in 0..comb.repetitions {
            let mut iter = comb.terms.iter();
            let first = *iter.next().expect("combination is non-empty");
            let mut acc = current.adams_single(first as i64);
            for &m in iter {
                acc = acc.whitney_product(&current.adams_single(m as i64))?;
            }
            current = acc;
        }
        Ok(current)
    }
}

/// A multiset of Adams multipliers (residues mod p) together with the
/// number of times the combination is applied.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdamsCombination {
    terms: Vec<u64>,
    repetitions: u32,
}

impl AdamsCombination {
    pub fn new(mut terms: Vec<u64>, repetitions: u32) -> Self {
        assert!(!terms.is_empty());
        assert!(repetitions >= 1);
        terms.sort_unstable();
        AdamsCombination { terms, repetitions }
    }

    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    pub fn repetitions(&self) -> u32 {
        self.repetitions
    }

    /// Σ m_i^e mod p.
    pub fn power_sum_mod(&self, e: u64, p: u64) -> u64 {
        self.terms
            .iter()
            .map(|&m| {
                let mut acc = 1u64;
                let mut base = m % p;
                let mut exp = e;
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    exp >>= 1;
                }
                acc
            })
            .sum::<u64>()
            % p
    }
}

/// Finds a multiset {m_i} of residues in [1, p) with Σ m_i^r ≡ 1 and
/// Σ m_i^d ≡ 0 mod p. Deterministic: enumerates (a copies of 1, b copies
/// of a single witness m) by increasing total size a+b, then by m; no
/// such collection exists when (d − r) is divisible by (p − 1).
///
/// The two-value pattern always succeeds within total size 2(p−1); an
/// exhaustive fallback is unnecessary and this is asserted by the size
/// bound check in the sweeps.
pub fn mi_search(r: u64, d: u64, p: u64) -> Result<Vec<u64>> {
    let pm1 = p - 1;
    if (d.max(r) - d.min(r)) % pm1 == 0 {
        return Err(Error::PreconditionViolated {
            diff: d.max(r) - d.min(r),
            pm1,
        });
    }
    let pow = |m: u64, e: u64| -> u64 {
        let mut acc = 1u64;
        let mut base = m % p;
        let mut exp = e;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc
    };
    for size in 1..=2 * pm1 {
        for a in (0..=size).rev() {
            let b = size - a;
            for m in 1..p {
                if b == 0 && m > 1 {
                    break;
                }
                let sum_r = (a + b * pow(m, r)) % p;
                let sum_d = (a + b * pow(m, d)) % p;
                if sum_r == 1 && sum_d == 0 {
                    let mut terms = vec![1u64; a as usize];
                    terms.extend(std::iter::repeat(m).take(b as usize));
                    return Ok(terms);
                }
            }
        }
    }
    unreachable!("two-value Adams pattern must succeed when (d-r) is not divisible by (p-1)")
}

/// Lift bookkeeping for realizing a class u of codimension r as c_r of a
/// K0 element with vanishing lower classes: returns the inverse of
/// (r−1)! mod p^m and the lifted vector.
pub fn lift_class_to_chern<E: GradedClass>(
    r: u64,
    pp: &PrimePower,
    u: E,
) -> Result<(BigInt, ChernVector<E>)> {
    if r > pp.p() {
        return Err(Error::NotInvertible { r, p: pp.p() });
    }
    let mut fact = BigInt::one();
    for j in 2..r {
        fact *= j;
    }
    let inv = mod_inverse(&fact, &pp.modulus())
        .expect("(r-1)! is coprime to p^m when r <= p");
    let mut v = ChernVector::zero(&u, r.max(1) as usize);
    v.set_class(r as usize, u);
    Ok((inv, v))
}

/// Formal Chern vector with generic generators: c_i = x_i for every degree
/// the ring carries, zero elsewhere.
pub fn generic_formal_vector(ring: &FormalRing) -> ChernVector<FormalPoly> {
    let top = ring.cap();
    let mut classes = Vec::with_capacity(top);
    for d in 1..=top {
        match ring.var_index_of_degree(d) {
            Some(_) => classes.push(ring.generator(d)),
            None => classes.push(ring.zero()),
        }
    }
    ChernVector::new(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chern::formal::CoefficientSpec;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn formal(d: usize) -> (FormalRing, ChernVector<FormalPoly>) {
        let ring = FormalRing::full(d, CoefficientSpec::Integers);
        let v = generic_formal_vector(&ring);
        (ring, v)
    }

    #[test]
    fn whitney_unit_and_square() {
        let (ring, v) = formal(3);
        let zero = ChernVector::zero(&ring.zero(), 3);
        assert_eq!(zero.whitney_product(&v).unwrap(), v);

        // a = b = (c_1 = x): c_1 = 2x, c_2 = x^2
        let mut a = ChernVector::zero(&ring.zero(), 2);
        a.set_class(1, ring.generator(1));
        let sq = a.whitney_product(&a).unwrap();
        assert_eq!(sq.class(1), ring.generator(1).scale(&bi(2)));
        assert_eq!(sq.class(2), ring.generator(1).mul(&ring.generator(1)));
    }

    #[test]
    fn whitney_degree_three_convolution() {
        // degree-3 term = a_3 + a_2 b_1 + a_1 b_2 + b_3 on generic vectors
        let spec = CoefficientSpec::Integers;
        let ring = FormalRing::full(3, spec);
        let a = generic_formal_vector(&ring);
        // b: shift generators by squaring to get distinct entries
        let mut b = a.clone();
        b.set_class(1, ring.generator(1).scale(&bi(5)));
        let prod = a.whitney_product(&b).unwrap();
        let expected = a
            .class(3)
            .add(&b.class(3))
            .add(&a.class(2).mul(&b.class(1)))
            .add(&a.class(1).mul(&b.class(2)));
        assert_eq!(prod.class(3), expected);
    }

    #[test]
    fn adams_single_examples() {
        let (_, v) = formal(3);
        assert_eq!(v.adams_single(1), v);
        assert!(v.adams_single(0).classes().iter().all(|c| c.is_zero()));

        // c_2 = y, mult 2, mod 3: 4y = y
        let ring = FormalRing::full(
            2,
            CoefficientSpec::Modular(PrimePower::new(3, 1).unwrap()),
        );
        let v = generic_formal_vector(&ring);
        assert_eq!(v.adams_single(2).class(2), v.class(2));
    }

    #[test]
    fn adams_combination_identity_and_expansion() {
        let (ring, _) = formal(2);
        let mut v = ChernVector::zero(&ring.zero(), 2);
        v.set_class(1, ring.generator(1));
        v.set_class(2, ring.generator(2));
        let id = AdamsCombination::new(vec![1], 1);
        assert_eq!(v.adams_combination(&id).unwrap(), v);

        // comb {1,1}: c_1 = 2x, c_2 = 2z + x^2
        let comb = AdamsCombination::new(vec![1, 1], 1);
        let out = v.adams_combination(&comb).unwrap();
        assert_eq!(out.class(1), ring.generator(1).scale(&bi(2)));
        let expected = ring
            .generator(2)
            .scale(&bi(2))
            .add(&ring.generator(1).mul(&ring.generator(1)));
        assert_eq!(out.class(2), expected);
    }

    #[test]
    fn adams_combination_mod_p_kills_degree() {
        // comb {1,1,2}, p=3, c_1(v)=0: c_2(result) = 6 c_2 = 0 mod 3
        let ring = FormalRing::range(
            2,
            2,
            CoefficientSpec::Modular(PrimePower::new(3, 1).unwrap()),
        );
        let v = generic_formal_vector(&ring);
        assert!(v.class(1).is_zero());
        let comb = AdamsCombination::new(vec![1, 1, 2], 1);
        let out = v.adams_combination(&comb).unwrap();
        assert!(out.class(2).is_zero());
    }

    #[test]
    fn mi_search_examples() {
        assert_eq!(mi_search(1, 2, 3).unwrap(), vec![1, 1, 2]);
        assert_eq!(mi_search(2, 3, 5).unwrap(), vec![1, 1, 2]);
        assert!(matches!(
            mi_search(1, 5, 5),
            Err(Error::PreconditionViolated { .. })
        ));
        assert!(matches!(
            mi_search(1, 3, 3),
            Err(Error::PreconditionViolated { .. })
        ));
    }

    #[test]
    fn lift_examples() {
        let pp = PrimePower::new(5, 1).unwrap();
        let ring = FormalRing::full(3, CoefficientSpec::Modular(pp));
        let u = ring.generator(3);
        let (scalar, v) = lift_class_to_chern(3, &pp, u.clone()).unwrap();
        assert_eq!(scalar, bi(3)); // 2 * 3 = 6 = 1 mod 5
        assert!(v.class(1).is_zero());
        assert!(v.class(2).is_zero());
        assert_eq!(v.class(3), u);

        let (scalar, _) = lift_class_to_chern(1, &pp, ring.generator(1)).unwrap();
        assert_eq!(scalar, bi(1));

        assert!(matches!(
            lift_class_to_chern(6, &pp, ring.generator(1)),
            Err(Error::NotInvertible { .. })
        ));
    }

    #[test]
    fn adams_composition() {
        let (_, v) = formal(4);
        for a in [-3i64, 2, 5] {
            for b in [-2i64, 3] {
                assert_eq!(
                    v.adams_single(a).adams_single(b),
                    v.adams_single(a * b)
                );
            }
        }
    }
}
