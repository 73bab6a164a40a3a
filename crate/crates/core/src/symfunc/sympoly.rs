//! Symmetric polynomials in Chern roots and their expression in
//! elementary symmetric (Chern) variables.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mpoly::MPoly;
use crate::symfunc::Partition;

/// Variable regime of a [`SymPoly`]: either root variables λ_1..λ_L or
/// Chern variables c_1..c_L.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    Roots(usize),
    Chern(usize),
}

impl Regime {
    pub fn nvars(&self) -> usize {
        match *self {
            Regime::Roots(l) | Regime::Chern(l) => l,
        }
    }

    /// Grading weight of each variable: roots have degree 1, c_i degree i.
    pub fn weights(&self) -> Vec<usize> {
        match *self {
            Regime::Roots(l) => vec![1; l],
            Regime::Chern(l) => (1..=l).collect(),
        }
    }
}

/// Exact-coefficient polynomial tagged with its variable regime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymPoly {
    regime: Regime,
    poly: MPoly,
}

impl SymPoly {
    pub fn new(regime: Regime, poly: MPoly) -> Self {
        assert_eq!(poly.nvars(), regime.nvars());
        SymPoly { regime, poly }
    }

    pub fn zero(regime: Regime) -> Self {
        SymPoly {
            regime,
            poly: MPoly::zero(regime.nvars()),
        }
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn poly(&self) -> &MPoly {
        &self.poly
    }

    pub fn into_poly(self) -> MPoly {
        self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.regime, other.regime);
        Self::new(self.regime, self.poly.add(&other.poly))
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.regime, other.regime);
        Self::new(self.regime, self.poly.sub(&other.poly))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.regime, other.regime);
        Self::new(self.regime, self.poly.mul(&other.poly))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.regime, self.poly.scale(k))
    }

    pub fn reduce_mod(&self, modulus: &BigInt) -> Self {
        Self::new(self.regime, self.poly.reduce_mod(modulus))
    }

    /// Homogeneous component of the given graded degree.
    pub fn component(&self, d: usize) -> Self {
        let w = self.regime.weights();
        Self::new(self.regime, self.poly.weighted_component(&w, d))
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.poly.weighted_degrees(&self.regime.weights())
    }

    /// Checks invariance under all adjacent transpositions (which generate
    /// the full symmetric group).
    pub fn is_symmetric(&self) -> bool {
        let l = self.regime.nvars();
        for i in 0..l.saturating_sub(1) {
            let mut perm: Vec<usize> = (0..l).collect();
            perm.swap(i, i + 1);
            if self.poly.permute_vars(&perm) != self.poly {
                return false;
            }
        }
        true
    }

    /// Coefficient of the Chern monomial `c_1^{e_1}...c_L^{e_L}` where the
    /// exponents are read from a partition's multiplicities.
    pub fn chern_coeff(&self, r: &Partition) -> BigInt {
        let l = match self.regime {
            Regime::Chern(l) => l,
            Regime::Roots(_) => panic!("chern_coeff on a roots-regime polynomial"),
        };
        let mut exps = vec![0u32; l];
        for (i, &m) in r.multiplicities().iter().enumerate() {
            if m > 0 {
                if i >= l {
                    return BigInt::from(0);
                }
                exps[i] = m as u32;
            }
        }
        self.poly.coeff(&exps)
    }
}

/// The i-th elementary symmetric polynomial in `l` root variables
/// (e_0 = 1; e_i = 0 for i > l).
pub fn elementary_symmetric(i: usize, l: usize) -> SymPoly {
    if i == 0 {
        return SymPoly::new(Regime::Roots(l), MPoly::one(l));
    }
    if i > l {
        return SymPoly::zero(Regime::Roots(l));
    }
    let mut out = MPoly::zero(l);
    let mut choose: Vec<usize> = (0..i).collect();
    loop {
        let mut exps = vec![0u32; l];
        for &v in &choose {
            exps[v] = 1;
        }
        out.add_term(exps, BigInt::one());
        // next combination
        let mut j = i;
        loop {
            if j == 0 {
                return SymPoly::new(Regime::Roots(l), out);
            }
            j -= 1;
            if choose[j] < l - (i - j) {
                choose[j] += 1;
                for k in j + 1..i {
                    choose[k] = choose[k - 1] + 1;
                }
                break;
            }
        }
    }
}

/// The n-th power sum Σ_l λ_l^n in `l` variables.
pub fn power_sum(n: u32, l: usize) -> SymPoly {
    let mut out = MPoly::zero(l);
    for v in 0..l {
        let mut exps = vec![0u32; l];
        exps[v] = n;
        out.add_term(exps, BigInt::one());
    }
    SymPoly::new(Regime::Roots(l), out)
}

/// All distinct arrangements of the multiset `parts` into `l` slots
/// (remaining slots get exponent zero). Returns the sum of the
/// corresponding monomials, i.e. the monomial symmetric polynomial.
fn monomial_symmetric(parts: &[usize], l: usize) -> MPoly {
    let mut out = MPoly::zero(l);
    if parts.len() > l {
        return out;
    }
    // distinct part values with multiplicities, descending
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for &p in parts {
        match runs.last_mut() {
            Some((v, m)) if *v == p => *m += 1,
            _ => runs.push((p, 1)),
        }
    }

    fn place(
        runs: &[(usize, usize)],
        free: &[usize],
        exps: &mut Vec<u32>,
        out: &mut MPoly,
    ) {
        let Some(&(value, count)) = runs.first() else {
            out.add_term(exps.clone(), BigInt::one());
            return;
        };
        // choose `count` of the free slots for this value
        let n = free.len();
        if count > n {
            return;
        }
        let mut choose: Vec<usize> = (0..count).collect();
        loop {
            let mut rest: Vec<usize> = Vec::with_capacity(n - count);
            let mut ci = 0;
            for (idx, &slot) in free.iter().enumerate() {
                if ci < count && choose[ci] == idx {
                    exps[slot] = value as u32;
                    ci += 1;
                } else {
                    rest.push(slot);
                }
            }
            place(&runs[1..], &rest, exps, out);
            for &idx in &choose {
                exps[free[idx]] = 0;
            }
            // next combination
            let mut j = count;
            let mut advanced = false;
            while j > 0 {
                j -= 1;
                if choose[j] < n - (count - j) {
                    choose[j] += 1;
                    for k in j + 1..count {
                        choose[k] = choose[k - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }

    let free: Vec<usize> = (0..l).collect();
    let mut exps = vec![0u32; l];
    place(&runs, &free, &mut exps, &mut out);
    out
}

/// The partition-indexed characteristic class in root variables: the
/// coefficient of ∏ d_i^{r_i} in ∏_l (Σ_{i≥0} d_i λ_l^i) with d_0 = 1.
/// This is the monomial symmetric polynomial on the partition's parts,
/// homogeneous of degree ‖r‖. Zero when the partition has more parts than
/// there are variables.
pub fn char_class_in_roots(r: &Partition, l: usize) -> SymPoly {
    assert!(l >= 1, "need at least one root variable");
    let parts = r.parts();
    SymPoly::new(Regime::Roots(l), monomial_symmetric(&parts, l))
}

/// Rewrites a symmetric root-regime polynomial as a polynomial in the
/// elementary symmetric polynomials c_1..c_L. The representation is unique
/// for the given L; substituting e_i back for c_i reproduces the input.
///
/// Gaussian elimination on the lexicographically largest monomial: a term
/// with (weakly decreasing) exponents a_1 >= ... >= a_L is killed by
/// coeff * ∏ e_i^{a_i - a_{i+1}}.
pub fn express_in_chern(s: &SymPoly) -> Result<SymPoly> {
    let l = match s.regime() {
        Regime::Roots(l) => l,
        Regime::Chern(_) => panic!("express_in_chern expects a roots-regime polynomial"),
    };
    if !s.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let elem: Vec<MPoly> = (1..=l)
        .map(|i| elementary_symmetric(i, l).into_poly())
        .collect();

    let mut work = s.poly().clone();
    let mut result = MPoly::zero(l);
    while let Some((exps, coeff)) = work.leading_term() {
        let exps = exps.clone();
        let coeff = coeff.clone();
        // lex-max term of a symmetric polynomial is weakly decreasing
        debug_assert!(exps.windows(2).all(|w| w[0] >= w[1]));
        let mut c_exps = vec![0u32; l];
        let mut reducer = MPoly::one(l);
        for i in 0..l {
            let next = if i + 1 < l { exps[i + 1] } else { 0 };
            let f = exps[i] - next;
            if f > 0 {
                c_exps[i] = f;
                reducer = reducer.mul(&elem[i].pow(f));
            }
        }
        result.add_term(c_exps, coeff.clone());
        work = work.sub(&reducer.scale(&coeff));
    }
    Ok(SymPoly::new(Regime::Chern(l), result))
}

/// Substitutes the elementary symmetric polynomials for the Chern
/// variables, landing back in the roots regime with the same L.
pub fn substitute_elementary(s: &SymPoly) -> SymPoly {
    let l = match s.regime() {
        Regime::Chern(l) => l,
        Regime::Roots(_) => panic!("substitute_elementary expects a chern-regime polynomial"),
    };
    let images: Vec<MPoly> = (1..=l)
        .map(|i| elementary_symmetric(i, l).into_poly())
        .collect();
    SymPoly::new(Regime::Roots(l), s.poly().compose(&images))
}
