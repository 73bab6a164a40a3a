//! Exact multivariate polynomials over the integers.
//!
//! This is the shared arithmetic substrate: symmetric-function expansion,
//! the formal Chern-class ring and the toy Chow rings all wrap an [`MPoly`]
//! and impose their own variable semantics and reductions on top.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// A polynomial in `nvars` variables with exact integer coefficients.
/// Invariant: no stored zero coefficients; every exponent vector has
/// length `nvars`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    /// The `i`-th variable (zero-based) as a polynomial.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Self::monomial(nvars, exps, BigInt::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, coeff: BigInt) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, coeff: BigInt) {
        assert_eq!(exps.len(), self.nvars);
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            // re-fetch key: remove zero entries lazily
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= k;
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Substitute each variable by the given image polynomial. All images
    /// must share a variable count, which becomes the result's.
    pub fn compose(&self, images: &[MPoly]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let target_nvars = images
            .first()
            .map(|p| p.nvars)
            .unwrap_or(0);
        let mut out = Self::zero(target_nvars);
        for (exps, coeff) in &self.terms {
            let mut term = Self::constant(target_nvars, coeff.clone());
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[i].pow(e));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Total degree with per-variable weights.
    pub fn weighted_degree(exps: &[u32], weights: &[usize]) -> usize {
        exps.iter()
            .zip(weights)
            .map(|(&e, &w)| e as usize * w)
            .sum()
    }

    /// Keep only terms whose weighted degree equals `d`.
    pub fn weighted_component(&self, weights: &[usize], d: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if Self::weighted_degree(e, weights) == d {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    /// Drop terms whose weighted degree exceeds `cap`.
    pub fn weighted_truncate(&self, weights: &[usize], cap: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if Self::weighted_degree(e, weights) <= cap {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    /// Weighted degrees present in the polynomial, ascending.
    pub fn weighted_degrees(&self, weights: &[usize]) -> Vec<usize> {
        let mut ds: Vec<usize> = self
            .terms
            .keys()
            .map(|e| Self::weighted_degree(e, weights))
            .collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// True if every term is homogeneous of weighted degree `d`.
    pub fn is_weighted_homogeneous(&self, weights: &[usize], d: usize) -> bool {
        self.terms
            .keys()
            .all(|e| Self::weighted_degree(e, weights) == d)
    }

    /// Reduce every coefficient into `[0, modulus)`.
    pub fn reduce_mod(&self, modulus: &BigInt) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut r = c % modulus;
            if r.is_negative() {
                r += modulus;
            }
            if !r.is_zero() {
                out.terms.insert(e.clone(), r);
            }
        }
        out
    }

    /// Apply an arbitrary map to each term, dropping produced zeros.
    pub fn filter_map_terms<F>(&self, mut f: F) -> Self
    where
        F: FnMut(&[u32], &BigInt) -> Option<(Vec<u32>, BigInt)>,
    {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if let Some((e2, c2)) = f(e, c) {
                out.add_term(e2, c2);
            }
        }
        out
    }

    /// Lexicographically largest term, if any.
    pub fn leading_term(&self) -> Option<(&Vec<u32>, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Apply the permutation `perm` to the variables: variable `i` of the
    /// result reads exponents from variable `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars);
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let exps: Vec<u32> = perm.iter().map(|&j| e[j]).collect();
            out.terms.insert(exps, c.clone());
        }
        out
    }
}
