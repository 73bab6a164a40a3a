//! Chow rings of products of projective spaces: monomial normal forms, the
//! degree pairing and numerical triviality, a Steenrod action on the
//! hyperplane generators, and Chern vectors of sums of line classes. These
//! are the concrete rings used to cross-check the formal machinery.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::chern::formal::{CoefficientSpec, GradedClass};
use crate::chern::vector::ChernVector;
use crate::error::{Error, Result};
use crate::modp::PrimePower;
use crate::mpoly::MPoly;

/// The Chow ring of P^{n_1} × … × P^{n_f}: polynomials in the hyperplane
/// classes h_1..h_f modulo (h_i^{n_i + 1}).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToyChowRing {
    factors: Vec<u32>,
    coeffs: CoefficientSpec,
}

impl ToyChowRing {
    pub fn new(factors: Vec<u32>, coeffs: CoefficientSpec) -> Self {
        assert!(!factors.is_empty());
        ToyChowRing { factors, coeffs }
    }

    /// Parses descriptors like "P2xP1xP1".
    pub fn parse(descriptor: &str, coeffs: CoefficientSpec) -> Result<Self> {
        let mut factors = Vec::new();
        for piece in descriptor.split(['x', 'X']) {
            let n = piece
                .trim()
                .strip_prefix(['P', 'p'])
                .and_then(|s| s.parse::<u32>().ok())
                .ok_or_else(|| Error::Parse(format!("bad factor {piece:?}")))?;
            factors.push(n);
        }
        if factors.is_empty() {
            return Err(Error::Parse(format!("bad ring descriptor {descriptor:?}")));
        }
        Ok(ToyChowRing::new(factors, coeffs))
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn coeffs(&self) -> CoefficientSpec {
        self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.factors.len()
    }

    /// Σ n_i, the degree of the top graded piece.
    pub fn total_dim(&self) -> usize {
        self.factors.iter().map(|&n| n as usize).sum()
    }

    /// The same ring with another coefficient spec.
    pub fn with_coeffs(&self, coeffs: CoefficientSpec) -> ToyChowRing {
        ToyChowRing::new(self.factors.clone(), coeffs)
    }

    pub fn zero(&self) -> ToyChowClass {
        ToyChowClass {
            ring: self.clone(),
            poly: MPoly::zero(self.nvars()),
        }
    }

    pub fn constant(&self, c: BigInt) -> ToyChowClass {
        self.wrap(MPoly::constant(self.nvars(), c))
    }

    /// The hyperplane class h_i (1-based).
    pub fn generator(&self, i: usize) -> ToyChowClass {
        assert!((1..=self.nvars()).contains(&i));
        self.wrap(MPoly::var(self.nvars(), i - 1))
    }

    /// Normal form: exponents above n_i vanish; coefficients reduced.
    pub fn wrap(&self, poly: MPoly) -> ToyChowClass {
        let reduced = poly.filter_map_terms(|exps, coeff| {
            if exps
                .iter()
                .zip(&self.factors)
                .any(|(&e, &n)| e > n)
            {
                None
            } else {
                Some((exps.to_vec(), self.coeffs.reduce(coeff)))
            }
        });
        let reduced = match self.coeffs {
            CoefficientSpec::Integers => reduced,
            CoefficientSpec::Modular(pp) => reduced.reduce_mod(&pp.modulus()),
        };
        ToyChowClass {
            ring: self.clone(),
            poly: reduced,
        }
    }

    /// Monomial basis of the degree-d graded piece.
    pub fn basis_of_degree(&self, d: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.nvars()];
        fn rec(
            factors: &[u32],
            i: usize,
            remaining: usize,
            exps: &mut Vec<u32>,
            out: &mut Vec<Vec<u32>>,
        ) {
            if i == factors.len() {
                if remaining == 0 {
                    out.push(exps.clone());
                }
                return;
            }
            let max = (factors[i] as usize).min(remaining);
            for e in 0..=max {
                exps[i] = e as u32;
                rec(factors, i + 1, remaining - e, exps, out);
            }
            exps[i] = 0;
        }
        rec(&self.factors, 0, d, &mut exps, &mut out);
        out
    }

    fn top_monomial(&self) -> Vec<u32> {
        self.factors.clone()
    }
}

/// An element of a [`ToyChowRing`] in monomial normal form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToyChowClass {
    ring: ToyChowRing,
    poly: MPoly,
}

impl ToyChowClass {
    pub fn ring(&self) -> &ToyChowRing {
        &self.ring
    }

    pub fn poly(&self) -> &MPoly {
        &self.poly
    }

    /// Total degree when homogeneous; None for mixed or zero classes.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let weights = vec![1usize; self.ring.nvars()];
        let degrees = self.poly.weighted_degrees(&weights);
        match degrees.as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    pub fn component(&self, d: usize) -> ToyChowClass {
        let weights = vec![1usize; self.ring.nvars()];
        self.ring.wrap(self.poly.weighted_component(&weights, d))
    }

    /// The same class reduced into a ring with other coefficients.
    pub fn with_coeffs(&self, coeffs: CoefficientSpec) -> ToyChowClass {
        self.ring.with_coeffs(coeffs).wrap(self.poly.clone())
    }
}

impl fmt::Display for ToyChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, coeff) in self.poly.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("h{}", i + 1)
                    } else {
                        format!("h{}^{}", i + 1, e)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{coeff}")?;
            } else if coeff.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", coeff, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl GradedClass for ToyChowClass {
    fn zero_like(&self) -> Self {
        self.ring.zero()
    }

    fn add(&self, other: &Self) -> Self {
        assert_eq!(self.ring, other.ring);
        self.ring.wrap(self.poly.add(&other.poly))
    }

    fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ring, other.ring);
        self.ring.wrap(self.poly.mul(&other.poly))
    }

    fn scale(&self, k: &BigInt) -> Self {
        self.ring.wrap(self.poly.scale(k))
    }

    fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    fn same_ring(&self, other: &Self) -> bool {
        self.ring == other.ring
    }

    fn coeffs(&self) -> CoefficientSpec {
        self.ring.coeffs
    }
}

/// ⟨a, b⟩ = coefficient of the top monomial in a·b; defined when the
/// degrees are complementary.
pub fn degree_pairing(a: &ToyChowClass, b: &ToyChowClass, r: usize) -> Result<BigInt> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch);
    }
    let dim = a.ring().total_dim();
    if r > dim {
        return Err(Error::DegreeMismatch(format!(
            "codegree {r} exceeds total dimension {dim}"
        )));
    }
    let deg_ok = |c: &ToyChowClass, want: usize| c.is_zero() || c.homogeneous_degree() == Some(want);
    if !deg_ok(a, r) || !deg_ok(b, dim - r) {
        return Err(Error::DegreeMismatch(format!(
            "pairing needs degrees {r} and {}, got {:?} and {:?}",
            dim - r,
            a.homogeneous_degree(),
            b.homogeneous_degree()
        )));
    }
    let product = a.mul(b);
    Ok(product.poly().coeff(&a.ring().top_monomial()))
}

/// True iff the class pairs to zero with every basis monomial of the
/// complementary degree.
pub fn is_num_trivial(a: &ToyChowClass) -> bool {
    if a.is_zero() {
        return true;
    }
    let Some(r) = a.homogeneous_degree() else {
        // mixed classes: trivial iff every component is
        let weights = vec![1usize; a.ring().nvars()];
        return a
            .poly()
            .weighted_degrees(&weights)
            .iter()
            .all(|&d| is_num_trivial(&a.component(d)));
    };
    let dim = a.ring().total_dim();
    if r > dim {
        return true;
    }
    a.ring().basis_of_degree(dim - r).into_iter().all(|exps| {
        let b = a
            .ring()
            .wrap(MPoly::monomial(a.ring().nvars(), exps, BigInt::one()));
        degree_pairing(a, &b, r).map(|v| v.is_zero()).unwrap_or(false)
    })
}

/// The total Steenrod operation h_i ↦ h_i + h_i^p, extended as a ring
/// morphism; requires mod-p coefficients.
pub fn steenrod_total_on_ring(a: &ToyChowClass, p: u64) -> Result<ToyChowClass> {
    match a.ring().coeffs().prime_power() {
        Some(pp) if pp.p() == p && pp.m() == 1 => {}
        _ => return Err(Error::WrongCoefficients),
    }
    let n = a.ring().nvars();
    let images: Vec<MPoly> = (0..n)
        .map(|i| {
            let h = MPoly::var(n, i);
            h.add(&h.pow(p as u32))
        })
        .collect();
    Ok(a.ring().wrap(a.poly().compose(&images)))
}

/// Chern vector of ⊕ O(a_i): c_j = e_j(a_1..a_N), truncated at
/// min(N, Dim).
pub fn chern_of_line_sum(
    ring: &ToyChowRing,
    divisor_classes: &[ToyChowClass],
) -> Result<ChernVector<ToyChowClass>> {
    assert!(!divisor_classes.is_empty());
    for a in divisor_classes {
        if a.ring() != ring {
            return Err(Error::RingMismatch);
        }
        if !a.is_zero() && a.homogeneous_degree() != Some(1) {
            return Err(Error::DegreeMismatch(format!(
                "line class must have degree 1, got {:?}",
                a.homogeneous_degree()
            )));
        }
    }
    let top = divisor_classes.len().min(ring.total_dim()).max(1);
    // elementary symmetric functions via ∏ (1 + a_i t)
    let mut e: Vec<ToyChowClass> = vec![ring.zero(); top + 1];
    e[0] = ring.constant(BigInt::one());
    for a in divisor_classes {
        for j in (1..=top).rev() {
            let bump = e[j - 1].mul(a);
            e[j] = e[j].add(&bump);
        }
    }
    Ok(ChernVector::new(e[1..].to_vec()))
}

/// Numerical-triviality verdicts of an integral class after reduction mod
/// p^m for m = 1..depth — the finite shadow of the p-adic pairing.
pub fn num_trivial_p_adic(a: &ToyChowClass, p: u64, depth: u32) -> Result<Vec<bool>> {
    if a.ring().coeffs() != CoefficientSpec::Integers {
        return Err(Error::WrongCoefficients);
    }
    let mut out = Vec::with_capacity(depth as usize);
    for m in 1..=depth {
        let pp = PrimePower::new(p, m)?;
        let reduced = a.with_coeffs(CoefficientSpec::Modular(pp));
        out.push(is_num_trivial(&reduced));
    }
    Ok(out)
}

/// Evaluates a multivariate polynomial (e.g. the underlying polynomial of
/// a root-regime symmetric function) at ring classes.
pub fn evaluate_at_classes(poly: &MPoly, values: &[ToyChowClass]) -> ToyChowClass {
    assert!(!values.is_empty());
    let ring = values[0].ring().clone();
    let mut acc = ring.zero();
    for (exps, coeff) in poly.terms() {
        let mut term = ring.constant(coeff.clone());
        for (v, &e) in values.iter().zip(exps) {
            for _ in 0..e {
                term = term.mul(v);
            }
        }
        acc = acc.add(&term);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2(coeffs: CoefficientSpec) -> ToyChowRing {
        ToyChowRing::new(vec![2], coeffs)
    }

    #[test]
    fn parse_descriptor() {
        let r = ToyChowRing::parse("P2xP1xP1", CoefficientSpec::Integers).unwrap();
        assert_eq!(r.factors(), &[2, 1, 1]);
        assert_eq!(r.total_dim(), 4);
        assert!(ToyChowRing::parse("Q2", CoefficientSpec::Integers).is_err());
    }

    #[test]
    fn truncation_normal_form() {
        let r = p2(CoefficientSpec::Integers);
        let h = r.generator(1);
        assert!(h.mul(&h).mul(&h).is_zero());
        assert_eq!(h.mul(&h).homogeneous_degree(), Some(2));
    }

    #[test]
    fn pairing_examples() {
        let r = p2(CoefficientSpec::Integers);
        let h = r.generator(1);
        assert_eq!(degree_pairing(&h, &h, 1).unwrap(), BigInt::one());

        let pp = ToyChowRing::new(vec![1, 1], CoefficientSpec::Integers);
        let h1 = pp.generator(1);
        let h2 = pp.generator(2);
        assert_eq!(degree_pairing(&h1, &h1, 1).unwrap(), BigInt::zero());
        assert_eq!(degree_pairing(&h1, &h2, 1).unwrap(), BigInt::one());

        let p3 = ToyChowRing::new(vec![3], CoefficientSpec::Integers);
        let h = p3.generator(1);
        let h2 = h.mul(&h);
        assert!(matches!(
            degree_pairing(&h2, &h2, 2),
            Err(Error::DegreeMismatch(_))
        ));
        assert_eq!(degree_pairing(&h2, &h, 2).unwrap(), BigInt::one());
    }

    #[test]
    fn num_triviality_examples() {
        let pp = PrimePower::new(2, 1).unwrap();
        let r = p2(CoefficientSpec::Modular(pp));
        assert!(is_num_trivial(&r.zero()));
        let h = r.generator(1);
        assert!(!is_num_trivial(&h));
        assert!(is_num_trivial(&h.scale(&BigInt::from(2))));
    }

    #[test]
    fn pairing_perfection_forces_zero() {
        let pp = PrimePower::new(3, 2).unwrap();
        let r = ToyChowRing::new(vec![2, 1], CoefficientSpec::Modular(pp));
        for d in 0..=r.total_dim() {
            for exps in r.basis_of_degree(d) {
                let a = r.wrap(MPoly::monomial(r.nvars(), exps, BigInt::one()));
                assert!(!is_num_trivial(&a));
            }
        }
    }

    #[test]
    fn steenrod_generator_rule() {
        let pp = PrimePower::new(2, 1).unwrap();
        let r = ToyChowRing::new(vec![3], CoefficientSpec::Modular(pp));
        let h = r.generator(1);
        let img = steenrod_total_on_ring(&h, 2).unwrap();
        assert_eq!(img, h.add(&h.mul(&h)));
        // multiplicativity on h^2
        let img2 = steenrod_total_on_ring(&h.mul(&h), 2).unwrap();
        assert_eq!(img2, img.mul(&img));
        // wrong coefficients
        let ri = ToyChowRing::new(vec![3], CoefficientSpec::Integers);
        assert!(matches!(
            steenrod_total_on_ring(&ri.generator(1), 2),
            Err(Error::WrongCoefficients)
        ));
    }

    #[test]
    fn line_sum_examples() {
        let r = ToyChowRing::new(vec![1, 1], CoefficientSpec::Integers);
        let h1 = r.generator(1);
        let h2 = r.generator(2);
        let v = chern_of_line_sum(&r, &[h1.clone(), h2.clone()]).unwrap();
        assert_eq!(v.class(1), h1.add(&h2));
        assert_eq!(v.class(2), h1.mul(&h2));

        // N equal classes on P^n: c_j = binom(N, j) h^j
        let pn = ToyChowRing::new(vec![4], CoefficientSpec::Integers);
        let h = pn.generator(1);
        let v = chern_of_line_sum(&pn, &[h.clone(), h.clone(), h.clone()]).unwrap();
        assert_eq!(v.class(2), h.mul(&h).scale(&BigInt::from(3)));

        assert!(matches!(
            chern_of_line_sum(&pn, &[h.mul(&h)]),
            Err(Error::DegreeMismatch(_))
        ));
    }

    #[test]
    fn p_adic_tower() {
        let r = p2(CoefficientSpec::Integers);
        let h = r.generator(1);
        assert_eq!(num_trivial_p_adic(&r.zero(), 3, 3).unwrap(), vec![true; 3]);
        assert_eq!(
            num_trivial_p_adic(&h.scale(&BigInt::from(3)), 3, 3).unwrap(),
            vec![true, false, false]
        );
        assert_eq!(
            num_trivial_p_adic(&h, 3, 2).unwrap(),
            vec![false, false]
        );
    }
}
