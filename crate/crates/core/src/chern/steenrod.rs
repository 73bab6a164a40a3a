//! Total Steenrod operation on partition-indexed classes and the
//! decomposition of c_d through Steenrod images.
//!
//! The total operation acts on Chern roots by λ -> λ + λ^p. On a
//! partition-indexed (monomial symmetric) class this is computed at the
//! level of part multisets: each part i spawns a part i + j(p-1) with
//! weight binom(i, j), and the orbit coefficients are recovered through
//! the automorphism orders of the source and target partitions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::chern::formal::{FormalPoly, FormalRing};
use crate::error::{Error, Result};
use crate::modp::{binom_exact, l_power_form, mod_inverse, stch_coefficient, stch_decomposable};
use crate::mpoly::MPoly;
use crate::symfunc::{
    char_class_in_roots, express_in_chern, substitute_elementary, Partition, Regime, SymPoly,
};

/// Image of the partition-indexed class c_r under the total Steenrod
/// operation mod p, as a finite sum of (partition, residue) pairs. The
/// degree-(‖r‖ + k(p−1)) component is P^k(c_r). `degree_cap` truncates
/// the support.
pub fn steenrod_total_on_class(
    r: &Partition,
    p: u64,
    degree_cap: Option<u64>,
) -> Vec<(Partition, u64)> {
    // Runs of equal parts: (part value, multiplicity).
    let runs: Vec<(usize, u64)> = r
        .multiplicities()
        .iter()
        .enumerate()
        .filter(|(_, &m)| m > 0)
        .map(|(i, &m)| (i + 1, m))
        .collect();

    // Accumulate raw weights T(mu) = sum over per-part choices, grouped by
    // run: distribute the q copies of part i over the choices j in [0, i],
    // with weight multinomial(q; q_0..q_i) * prod_j binom(i, j)^{q_j}.
    let mut weights: BTreeMap<Vec<usize>, BigInt> = BTreeMap::new();

    fn rec(
        runs: &[(usize, u64)],
        p: u64,
        cap: Option<u64>,
        parts: &mut Vec<usize>,
        degree: u64,
        weight: BigInt,
        out: &mut BTreeMap<Vec<usize>, BigInt>,
    ) {
        if let Some(cap) = cap {
            if degree > cap {
                return;
            }
        }
        let Some(&(value, count)) = runs.first() else {
            let mut key = parts.clone();
            key.sort_unstable();
            *out.entry(key).or_insert_with(BigInt::zero) += weight;
            return;
        };

        // distribute the `count` copies of `value` over choices j in
        // [0, value]: q_j copies pick up the exponent value + j(p-1)
        fn choose_counts(
            value: usize,
            p: u64,
            j: usize,
            remaining: u64,
            acc_weight: BigInt,
            acc_parts: &mut Vec<usize>,
            acc_degree: u64,
            cap: Option<u64>,
            rest: &[(usize, u64)],
            base_parts: &mut Vec<usize>,
            out: &mut BTreeMap<Vec<usize>, BigInt>,
        ) {
            if let Some(cap) = cap {
                if acc_degree > cap {
                    return;
                }
            }
            if j > value {
                debug_assert_eq!(remaining, 0);
                let before = base_parts.len();
                base_parts.extend_from_slice(acc_parts);
                rec(rest, p, cap, base_parts, acc_degree, acc_weight, out);
                base_parts.truncate(before);
                return;
            }
            let lo = if j == value { remaining } else { 0 };
            for q in lo..=remaining {
                // weight: binom(remaining, q) (building the multinomial
                // incrementally) times binom(value, j)^q
                let mut w = acc_weight.clone() * binom_exact(remaining, q);
                if q > 0 {
                    let bj = binom_exact(value as u64, j as u64);
                    for _ in 0..q {
                        w *= &bj;
                    }
                }
                if w.is_zero() {
                    continue;
                }
                let new_part = value + j * (p as usize - 1);
                let before = acc_parts.len();
                for _ in 0..q {
                    acc_parts.push(new_part);
                }
                choose_counts(
                    value,
                    p,
                    j + 1,
                    remaining - q,
                    w,
                    acc_parts,
                    acc_degree + q * new_part as u64,
                    cap,
                    rest,
                    base_parts,
                    out,
                );
                acc_parts.truncate(before);
            }
        }

        choose_counts(
            value,
            p,
            0,
            count,
            weight,
            &mut Vec::new(),
            degree,
            cap,
            &runs[1..],
            parts,
            out,
        );
    }

    rec(
        &runs,
        p,
        degree_cap,
        &mut Vec::new(),
        0,
        BigInt::from(1),
        &mut weights,
    );

    // Convert raw weights to orbit coefficients:
    //   coeff(mu) = T(mu) * |Aut(mu)| / |Aut(lambda)|,
    // then reduce mod p.
    let aut_src = r.aut_order();
    let mut out = Vec::new();
    for (parts, t) in weights {
        let mu = Partition::from_parts(&parts);
        let scaled = t * mu.aut_order();
        let (coeff, rem) = num_integer::Integer::div_rem(&scaled, &aut_src);
        assert!(rem.is_zero(), "orbit coefficient must be integral");
        let mut c = &coeff % p;
        if c.is_negative() {
            c += p;
        }
        let c: u64 = c.try_into().unwrap();
        if c != 0 {
            out.push((mu, c));
        }
    }
    out.sort_by_key(|(mu, _)| (mu.degree(), mu.multiplicities().to_vec()));
    out
}

/// Total Steenrod operation as a ring endomorphism of a formal Chern ring:
/// each generator x_j (standing for c_j of a bundle whose classes of
/// degrees absent from the ring vanish) maps to its universal image,
/// truncated above the ring cap.
pub fn steenrod_endo_images(ring: &FormalRing) -> Result<Vec<MPoly>> {
    let pp = ring.coeffs().prime_power().ok_or(Error::WrongCoefficients)?;
    if pp.m() != 1 {
        return Err(Error::WrongCoefficients);
    }
    let p = pp.p();
    let mut images = Vec::with_capacity(ring.nvars());
    for &j in ring.var_degrees() {
        let support =
            steenrod_total_on_class(&Partition::uniform(1, j as u64), p, Some(ring.cap() as u64));
        let mut image = MPoly::zero(ring.nvars());
        for (mu, coeff) in support {
            let l = mu.degree() as usize;
            let in_chern = express_in_chern(&char_class_in_roots(&mu, l))?;
            // map c-monomials into ring generators; c_i of a degree the
            // ring does not carry is zero
            let mapped = chern_poly_to_ring(in_chern.poly(), ring);
            image = image.add(&mapped.scale(&BigInt::from(coeff)));
        }
        images.push(image.reduce_mod(&pp.modulus()));
    }
    Ok(images)
}

/// Re-expresses a polynomial in Chern variables c_1..c_L as a polynomial
/// in the generators of a formal ring, sending absent degrees to zero.
fn chern_poly_to_ring(poly: &MPoly, ring: &FormalRing) -> MPoly {
    let nv = ring.nvars();
    let mut out = MPoly::zero(nv);
    'terms: for (exps, coeff) in poly.terms() {
        let mut mapped = vec![0u32; nv];
        for (i, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            match ring.var_index_of_degree(i + 1) {
                Some(vi) => mapped[vi] += e,
                None => continue 'terms,
            }
        }
        out.add_term(mapped, coeff.clone());
    }
    out
}

/// Applies the total Steenrod endomorphism to a formal ring element.
pub fn steenrod_total_formal(f: &FormalPoly, images: &[MPoly]) -> FormalPoly {
    f.ring().wrap(f.poly().compose(images))
}

/// The certified decomposition of c_d through a Steenrod image:
/// c_d = alpha^{-1} (P^k(c_{d-k(p-1)}) - decomposable), mod p, where
/// decomposable is an explicit polynomial in c_1..c_{d-1}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SteenrodIdentity {
    pub d: u64,
    pub p: u64,
    pub k: u64,
    pub alpha: u64,
    pub alpha_inv: u64,
    /// Expansion of s_{1^{d-kp}, p^k} minus its alpha·c_d head, in Chern
    /// variables c_1..c_d, coefficients reduced mod p.
    pub decomposable: SymPoly,
}

/// Least witness k and leading coefficient for the Steenrod decomposition
/// of c_d mod p; cheap (no polynomial expansion).
pub fn steenrod_witness(d: u64, p: u64) -> Result<(u64, u64, u64)> {
    let Some(k) = stch_decomposable(d, p) else {
        let (l, t) = l_power_form(d, p).expect("non-decomposable degrees have l*p^t form");
        return Err(Error::NotDecomposable { d, l, t });
    };
    let alpha = stch_coefficient(d, k, p)?;
    let alpha_inv = mod_inverse(&BigInt::from(alpha), &BigInt::from(p))
        .expect("alpha is a unit mod p");
    Ok((k, alpha, alpha_inv.try_into().unwrap()))
}

/// Full decomposition with the explicit decomposable-terms polynomial.
/// Cost grows quickly with d (the expansion runs in d root variables);
/// intended for moderate degrees.
pub fn express_cd_via_steenrod(d: u64, p: u64) -> Result<SteenrodIdentity> {
    let (k, alpha, alpha_inv) = steenrod_witness(d, p)?;
    let target = Partition::new({
        let mut m = vec![0u64; p as usize];
        m[0] = d - k * p;
        m[p as usize - 1] = k;
        m
    });
    debug_assert_eq!(target.degree(), d);
    let l = d as usize;
    let expansion = express_in_chern(&char_class_in_roots(&target, l))?
        .reduce_mod(&BigInt::from(p));
    let head = expansion.chern_coeff(&Partition::uniform(l, 1));
    assert_eq!(head, BigInt::from(alpha), "leading coefficient mismatch");
    let c_d = SymPoly::new(
        Regime::Chern(l),
        MPoly::monomial(
            l,
            {
                let mut e = vec![0u32; l];
                e[l - 1] = 1;
                e
            },
            BigInt::from(alpha),
        ),
    );
    let decomposable = expansion.sub(&c_d).reduce_mod(&BigInt::from(p));
    Ok(SteenrodIdentity {
        d,
        p,
        k,
        alpha,
        alpha_inv,
        decomposable,
    })
}

impl SteenrodIdentity {
    /// Checks the identity P^k(c_{d-k(p-1)}) = alpha·c_d + decomposable by
    /// substituting elementary symmetric polynomials in d root variables.
    pub fn verify(&self) -> bool {
        let d = self.d as usize;
        let p = self.p;
        let source_deg = self.d - self.k * (p - 1);
        let source = char_class_in_roots(&Partition::uniform(1, source_deg), d);
        // roots substitution λ -> λ + λ^p
        let images: Vec<MPoly> = (0..d)
            .map(|i| {
                let v = MPoly::var(d, i);
                v.add(&v.pow(p as u32))
            })
            .collect();
        let total = source.poly().compose(&images);
        let lhs = SymPoly::new(Regime::Roots(d), total)
            .component(d)
            .reduce_mod(&BigInt::from(p));
        let mut rhs_chern = self.decomposable.clone();
        let mut e = vec![0u32; d];
        e[d - 1] = 1;
        rhs_chern = rhs_chern.add(&SymPoly::new(
            Regime::Chern(d),
            MPoly::monomial(d, e, BigInt::from(self.alpha)),
        ));
        let rhs = substitute_elementary(&rhs_chern).reduce_mod(&BigInt::from(p));
        lhs == rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: apply λ -> λ + λ^p directly in the roots regime and read
    /// off orbit coefficients. |r| variables suffice: every partition in
    /// the support has the same number of parts as the source.
    fn steenrod_oracle(r: &Partition, p: u64) -> Vec<(Partition, u64)> {
        let l = (r.inner_degree() as usize).max(1);
        let source = char_class_in_roots(r, l);
        let images: Vec<MPoly> = (0..l)
            .map(|i| {
                let v = MPoly::var(l, i);
                v.add(&v.pow(p as u32))
            })
            .collect();
        let image = source.poly().compose(&images).reduce_mod(&BigInt::from(p));
        // group monomials by sorted exponent multiset
        let mut seen: BTreeMap<Partition, u64> = BTreeMap::new();
        for (exps, coeff) in image.terms() {
            let parts: Vec<usize> = exps.iter().map(|&e| e as usize).collect();
            let mu = Partition::from_parts(&parts);
            // representative: descending exponents
            let mut sorted = parts.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            let rep: Vec<u32> = sorted.iter().map(|&x| x as u32).collect();
            if exps == &rep {
                let c: u64 = coeff.try_into().unwrap();
                seen.insert(mu, c);
            }
        }
        let mut out: Vec<(Partition, u64)> =
            seen.into_iter().filter(|(_, c)| *c != 0).collect();
        out.sort_by_key(|(mu, _)| (mu.degree(), mu.multiplicities().to_vec()));
        out
    }

    #[test]
    fn matches_root_substitution_oracle() {
        for p in [2u64, 3, 5] {
            for deg in 1..=4u64 {
                for part in Partition::all_of_degree(deg) {
                    let fast = steenrod_total_on_class(&part, p, None);
                    let oracle = steenrod_oracle(&part, p);
                    assert_eq!(fast, oracle, "partition {part}, p={p}");
                }
            }
        }
    }

    #[test]
    fn p0_component_is_identity() {
        let r = Partition::parse("1:2,3:1").unwrap();
        let support = steenrod_total_on_class(&r, 3, None);
        let head: Vec<_> = support
            .iter()
            .filter(|(mu, _)| mu.degree() == r.degree())
            .collect();
        assert_eq!(head.len(), 1);
        assert_eq!(head[0].0, r);
        assert_eq!(head[0].1, 1);
    }

    #[test]
    fn elementary_class_single_image() {
        // P^k(s_{1^{d-k(p-1)}}) = s_{1^{d-kp}, p^k}
        for (p, d, k) in [(2u64, 5u64, 2u64), (3, 7, 1), (5, 11, 2)] {
            let n = d - k * (p - 1);
            let support = steenrod_total_on_class(&Partition::uniform(1, n), p, Some(d));
            let at_d: Vec<_> = support
                .iter()
                .filter(|(mu, _)| mu.degree() == d)
                .collect();
            assert_eq!(at_d.len(), 1);
            let expected = Partition::new({
                let mut m = vec![0u64; p as usize];
                m[0] = d - k * p;
                m[p as usize - 1] = k;
                m
            });
            assert_eq!(*at_d[0].0.multiplicities(), *expected.multiplicities());
            assert_eq!(at_d[0].1, 1);
        }
    }

    #[test]
    fn p1_of_c1_mod_2() {
        // λ -> λ + λ²: degree-2 component of P(c_1) is s_{2}
        let support = steenrod_total_on_class(&Partition::uniform(1, 1), 2, None);
        assert_eq!(
            support,
            vec![
                (Partition::uniform(1, 1), 1),
                (Partition::uniform(2, 1), 1)
            ]
        );
    }

    #[test]
    fn express_cd_examples() {
        // d=3, p=2: s_{1,2} = c_1 c_2 - 3 c_3, so c_3 = P^1(c_2) + c_1 c_2 mod 2
        let id = express_cd_via_steenrod(3, 2).unwrap();
        assert_eq!(id.k, 1);
        assert_eq!(id.alpha, 1);
        let dec = &id.decomposable;
        assert_eq!(
            dec.chern_coeff(&Partition::parse("1:1,2:1").unwrap()),
            BigInt::from(1)
        );
        assert!(id.verify());

        assert!(matches!(
            express_cd_via_steenrod(4, 2),
            Err(Error::NotDecomposable { d: 4, l: 1, t: 2 })
        ));

        // d=7, p=3: witness k=1, leading coefficient 1
        let id = express_cd_via_steenrod(7, 3).unwrap();
        assert_eq!(id.k, 1);
        assert_eq!(id.alpha, 1);
        assert!(id.verify());
    }

    #[test]
    fn cartan_on_roots() {
        // total operation is multiplicative on root-regime polynomials
        for p in [2u64, 3] {
            let a = char_class_in_roots(&Partition::parse("1:2").unwrap(), 4);
            let b = char_class_in_roots(&Partition::parse("2:1").unwrap(), 4);
            let images: Vec<MPoly> = (0..4)
                .map(|i| {
                    let v = MPoly::var(4, i);
                    v.add(&v.pow(p as u32))
                })
                .collect();
            let lhs = a.poly().mul(b.poly()).compose(&images);
            let rhs = a.poly().compose(&images).mul(&b.poly().compose(&images));
            assert_eq!(lhs, rhs);
        }
    }
}
