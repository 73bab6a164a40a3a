//! Coefficient specifications and the formal graded ring used by the
//! annihilation scheduler.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::modp::PrimePower;
use crate::mpoly::MPoly;

/// Coefficient regime: exact integers, or reduction mod p^m.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoefficientSpec {
    Integers,
    Modular(PrimePower),
}

impl CoefficientSpec {
    pub fn reduce(&self, c: &BigInt) -> BigInt {
        match self {
            CoefficientSpec::Integers => c.clone(),
            CoefficientSpec::Modular(pp) => {
                let q = pp.modulus();
                let mut r = c % &q;
                if r.is_negative() {
                    r += &q;
                }
                r
            }
        }
    }

    pub fn prime_power(&self) -> Option<PrimePower> {
        match self {
            CoefficientSpec::Integers => None,
            CoefficientSpec::Modular(pp) => Some(*pp),
        }
    }
}

/// Element of a graded ring with a coefficient spec. The trait is the
/// common surface behind [`super::ChernVector`]: implemented by the formal
/// polynomial ring here and by the toy Chow rings.
pub trait GradedClass: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, k: &BigInt) -> Self;
    fn is_zero(&self) -> bool;
    fn same_ring(&self, other: &Self) -> bool;
    fn coeffs(&self) -> CoefficientSpec;
}

/// A graded polynomial ring on formal generators with assigned degrees,
/// truncated above `cap`. The scheduler uses generators x_r..x_D standing
/// for the Chern classes of the working K0 element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalRing {
    var_degrees: Vec<usize>,
    cap: usize,
    coeffs: CoefficientSpec,
}

impl FormalRing {
    pub fn new(var_degrees: Vec<usize>, cap: usize, coeffs: CoefficientSpec) -> Self {
        assert!(!var_degrees.is_empty());
        assert!(var_degrees.windows(2).all(|w| w[0] < w[1]));
        FormalRing {
            var_degrees,
            cap,
            coeffs,
        }
    }

    /// Generators x_1..x_d, truncation above d.
    pub fn full(d: usize, coeffs: CoefficientSpec) -> Self {
        Self::new((1..=d).collect(), d, coeffs)
    }

    /// Generators x_lo..x_hi, truncation above hi. Degrees below `lo`
    /// model identically-zero Chern classes.
    pub fn range(lo: usize, hi: usize, coeffs: CoefficientSpec) -> Self {
        Self::new((lo..=hi).collect(), hi, coeffs)
    }

    pub fn var_degrees(&self) -> &[usize] {
        &self.var_degrees
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn coeffs(&self) -> CoefficientSpec {
        self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.var_degrees.len()
    }

    pub fn var_index_of_degree(&self, d: usize) -> Option<usize> {
        self.var_degrees.iter().position(|&x| x == d)
    }

    pub fn zero(&self) -> FormalPoly {
        FormalPoly {
            ring: self.clone(),
            poly: MPoly::zero(self.nvars()),
        }
    }

    pub fn constant(&self, c: BigInt) -> FormalPoly {
        self.wrap(MPoly::constant(self.nvars(), c))
    }

    /// The generator of the given degree; panics if absent.
    pub fn generator(&self, degree: usize) -> FormalPoly {
        let i = self
            .var_index_of_degree(degree)
            .unwrap_or_else(|| panic!("no generator of degree {degree}"));
        self.wrap(MPoly::var(self.nvars(), i))
    }

    /// Normalize a raw polynomial into the ring: truncate above the cap
    /// and reduce coefficients.
    pub fn wrap(&self, poly: MPoly) -> FormalPoly {
        let t = poly.weighted_truncate(&self.var_degrees, self.cap);
        let t = match self.coeffs {
            CoefficientSpec::Integers => t,
            CoefficientSpec::Modular(pp) => t.reduce_mod(&pp.modulus()),
        };
        FormalPoly {
            ring: self.clone(),
            poly: t,
        }
    }

    /// All monomial exponent vectors of exact weighted degree `d`.
    pub fn monomials_of_degree(&self, d: usize) -> Vec<Vec<u32>> {
        let n = self.nvars();
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        fn rec(
            degs: &[usize],
            i: usize,
            remaining: usize,
            exps: &mut Vec<u32>,
            out: &mut Vec<Vec<u32>>,
        ) {
            if i == degs.len() {
                if remaining == 0 {
                    out.push(exps.clone());
                }
                return;
            }
            let w = degs[i];
            let max = remaining / w;
            for e in 0..=max {
                exps[i] = e as u32;
                rec(degs, i + 1, remaining - e * w, exps, out);
            }
            exps[i] = 0;
        }
        rec(&self.var_degrees, 0, d, &mut exps, &mut out);
        out
    }
}

/// Element of a [`FormalRing`]; arithmetic truncates above the ring cap
/// and reduces per the coefficient spec.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalPoly {
    ring: FormalRing,
    poly: MPoly,
}

impl FormalPoly {
    pub fn ring(&self) -> &FormalRing {
        &self.ring
    }

    pub fn poly(&self) -> &MPoly {
        &self.poly
    }

    pub fn component(&self, d: usize) -> FormalPoly {
        self.ring
            .wrap(self.poly.weighted_component(self.ring.var_degrees(), d))
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.poly.weighted_degrees(self.ring.var_degrees())
    }

    pub fn is_homogeneous(&self, d: usize) -> bool {
        self.poly.is_weighted_homogeneous(self.ring.var_degrees(), d)
    }

    /// Coefficient of a single generator inside the polynomial.
    pub fn coeff_of_generator(&self, degree: usize) -> BigInt {
        match self.ring.var_index_of_degree(degree) {
            Some(i) => {
                let mut exps = vec![0u32; self.ring.nvars()];
                exps[i] = 1;
                self.poly.coeff(&exps)
            }
            None => BigInt::zero(),
        }
    }

    /// Normal form modulo the ideal generated by the listed generators:
    /// drops every monomial containing one of them.
    pub fn drop_monomials_containing(&self, degrees: &[usize]) -> FormalPoly {
        let idx: Vec<usize> = degrees
            .iter()
            .filter_map(|&d| self.ring.var_index_of_degree(d))
            .collect();
        let reduced = self.poly.filter_map_terms(|exps, coeff| {
            if idx.iter().any(|&i| exps[i] > 0) {
                None
            } else {
                Some((exps.to_vec(), coeff.clone()))
            }
        });
        self.ring.wrap(reduced)
    }
}

impl GradedClass for FormalPoly {
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
