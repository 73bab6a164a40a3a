//! Self-contained verification checks over the whole engine: each check
//! runs a property sweep and reports pass/fail with a short detail line.
//! The CLI `verify` subcommand and the acceptance test both drive these.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blowup::{
    main_construction, verify_lem_dva, verify_per_ob, ArrangementRing, GoodFamily,
};
use crate::chern::formal::{CoefficientSpec, FormalRing, GradedClass};
use crate::chern::ideal::NumTrivialIdeal;
use crate::chern::schedule::{
    annihilate_schedule, apply_schedule, formal_schedule_context, ScheduleMode,
};
use crate::chern::steenrod::steenrod_total_on_class;
use crate::chern::vector::{mi_search, AdamsCombination, ChernVector};
use crate::error::Error;
use crate::modp::{binom_exact, l_power_form, stch_decomposable, PrimePower};
use crate::mpoly::MPoly;
use crate::symfunc::{
    char_class_in_roots, kappa_bruteforce, kappa_formula, Partition,
};
use crate::toychow::{
    chern_of_line_sum, degree_pairing, evaluate_at_classes, is_num_trivial,
    steenrod_total_on_ring, ToyChowRing,
};

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl CheckResult {
    fn pass(name: &'static str, detail: String) -> Self {
        CheckResult {
            name,
            pass: true,
            detail,
        }
    }

    fn fail(name: &'static str, detail: String) -> Self {
        CheckResult {
            name,
            pass: false,
            detail,
        }
    }
}

fn reduce_mod(v: &BigInt, p: u64) -> u64 {
    let mut r = v % p;
    if r.is_negative() {
        r += p;
    }
    u64::try_from(r).unwrap()
}

/// Closed-form κ equals the brute-force coefficient extraction on every
/// partition of degree at most 8.
pub fn check_kappa_equivalence() -> CheckResult {
    let name = "kappa closed form matches brute force (degree <= 8)";
    let mut count = 0usize;
    for deg in 1..=8u64 {
        for part in Partition::all_of_degree(deg) {
            let a = kappa_formula(&part).unwrap();
            let b = kappa_bruteforce(&part).unwrap();
            if a != b {
                return CheckResult::fail(
                    name,
                    format!("mismatch at {part}: formula {a}, brute force {b}"),
                );
            }
            count += 1;
        }
    }
    CheckResult::pass(name, format!("{count} partitions agree exactly"))
}

/// Three independent routes to the Steenrod leading coefficient mod p:
/// κ(1^{d−kp}, p^k), the exact ratio d·binom(d−k(p−1), k)/(d−k(p−1)), and
/// the Lucas binomial binom(d−kp+k−1, k).
pub fn check_steenrod_coefficient_chain() -> CheckResult {
    let name = "Steenrod leading-coefficient chain (p in {2,3,5}, d <= 25)";
    let mut count = 0usize;
    for p in [2u64, 3, 5] {
        for d in 1..=25u64 {
            for k in 1..=d / p {
                let mut mult = vec![0u64; p as usize];
                mult[0] = d - k * p;
                mult[p as usize - 1] = k;
                let part = Partition::new(mult);
                let via_kappa = reduce_mod(&kappa_formula(&part).unwrap(), p);

                let n = d - k * (p - 1);
                let scaled = binom_exact(n, k) * d;
                let (ratio, rem) =
                    num_integer::Integer::div_rem(&scaled, &BigInt::from(n));
                assert!(rem.is_zero(), "ratio must be integral");
                let via_ratio = reduce_mod(&ratio, p);

                let via_lucas = crate::modp::stch_coefficient(d, k, p).unwrap();

                if via_kappa != via_ratio || via_ratio != via_lucas {
                    return CheckResult::fail(
                        name,
                        format!(
                            "d={d}, k={k}, p={p}: kappa {via_kappa}, \
                             ratio {via_ratio}, lucas {via_lucas}"
                        ),
                    );
                }
                count += 1;
            }
        }
    }
    CheckResult::pass(name, format!("{count} triples agree"))
}

/// Decomposability fails exactly on degrees of the form l·p^t, 1 <= l < p.
pub fn check_stch_dichotomy() -> CheckResult {
    let name = "decomposability dichotomy (p in {2,3,5,7}, d <= 300)";
    for p in [2u64, 3, 5, 7] {
        for d in 1..=300u64 {
            let decomposable = stch_decomposable(d, p).is_some();
            let l_power = l_power_form(d, p).is_some();
            if decomposable == l_power {
                return CheckResult::fail(
                    name,
                    format!("d={d}, p={p}: decomposable={decomposable}, l-power={l_power}"),
                );
            }
        }
    }
    CheckResult::pass(name, "1200 degrees classified consistently".into())
}

/// The multiplier search returns multisets with the right power-sum
/// congruences, small size, and errors exactly on the excluded residues.
pub fn check_mi_search_soundness() -> CheckResult {
    let name = "Adams multiplier search soundness (p <= 13)";
    let mut count = 0usize;
    for p in [3u64, 5, 7, 11, 13] {
        for r in 1..=p {
            for d in (r + 1)..=3 * p {
                let blocked = (d - r) % (p - 1) == 0;
                match mi_search(r, d, p) {
                    Err(Error::PreconditionViolated { .. }) if blocked => continue,
                    Err(e) => {
                        return CheckResult::fail(
                            name,
                            format!("r={r}, d={d}, p={p}: unexpected error {e}"),
                        )
                    }
                    Ok(terms) if blocked => {
                        return CheckResult::fail(
                            name,
                            format!("r={r}, d={d}, p={p}: expected error, got {terms:?}"),
                        )
                    }
                    Ok(terms) => {
                        let comb = AdamsCombination::new(terms.clone(), 1);
                        let sr = comb.power_sum_mod(r, p);
                        let sd = comb.power_sum_mod(d, p);
                        if sr != 1 || sd != 0 || terms.len() > 2 * (p as usize - 1) {
                            return CheckResult::fail(
                                name,
                                format!(
                                    "r={r}, d={d}, p={p}: terms {terms:?} give \
                                     sums ({sr}, {sd})"
                                ),
                            );
                        }
                        count += 1;
                    }
                }
            }
        }
    }
    CheckResult::pass(name, format!("{count} solved instances verified"))
}

fn random_formal_vector(
    ring: &FormalRing,
    rng: &mut ChaCha8Rng,
    p: u64,
) -> ChernVector<crate::chern::formal::FormalPoly> {
    let top = ring.cap();
    let mut classes = Vec::with_capacity(top);
    for d in 1..=top {
        let mut poly = MPoly::zero(ring.nvars());
        for mono in ring.monomials_of_degree(d) {
            let c = rng.gen_range(0..p);
            if c != 0 {
                poly.add_term(mono, BigInt::from(c));
            }
        }
        classes.push(ring.wrap(poly));
    }
    ChernVector::new(classes)
}

/// The structure law of Adams combinations: the degree-d deviation
/// c_d(V') − (Σ m_i^d)·c_d(V) lies in the ideal generated by the lower
/// classes of V.
pub fn check_adams_structure_law() -> CheckResult {
    let name = "Adams combination structure law (100 random vectors, D <= 6)";
    let p = 5u64;
    let pp = PrimePower::new(p, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut count = 0usize;
    for trial in 0..100 {
        let top = rng.gen_range(2..=6usize);
        let ring = FormalRing::full(top, CoefficientSpec::Modular(pp));
        let v = random_formal_vector(&ring, &mut rng, p);
        let n_terms = rng.gen_range(1..=4usize);
        let terms: Vec<u64> = (0..n_terms).map(|_| rng.gen_range(0..p)).collect();
        let comb = AdamsCombination::new(terms, 1);
        let result = v.adams_combination(&comb).unwrap();
        for d in 1..=top {
            let scalar = comb.power_sum_mod(d as u64, p);
            let deviation = result
                .class(d)
                .add(&v.class(d).scale(&BigInt::from(p - scalar % p)));
            if deviation.is_zero() {
                continue;
            }
            let lower: Vec<_> = (1..d).map(|l| v.class(l)).collect();
            if lower.is_empty() {
                return CheckResult::fail(
                    name,
                    format!("trial {trial}: degree-{d} deviation with no lower classes"),
                );
            }
            let ideal = NumTrivialIdeal::new(&ring, lower, false).unwrap();
            if !ideal.contains(&deviation) {
                return CheckResult::fail(
                    name,
                    format!("trial {trial}: degree-{d} deviation escapes the ideal"),
                );
            }
        }
        count += 1;
    }
    CheckResult::pass(name, format!("{count} random vectors conform"))
}

/// The blow-up product identities: pairwise (exhaustive at N <= 3, random
/// at N = 4), the m-fold version on principal collections, and the
/// Chern-class matching of the main construction with caps.
pub fn check_blowup_identities() -> CheckResult {
    let name = "blow-up arrangement identities (N <= 4)";
    for n in 1..=3u32 {
        let ring = ArrangementRing::new(n);
        let all = GoodFamily::enumerate_all(n);
        for u in &all {
            for w in &all {
                let report = verify_per_ob(u, w, &ring).unwrap();
                if !report.pass() {
                    return CheckResult::fail(
                        name,
                        format!("pair identity fails at N={n}: U={u}, W={w}"),
                    );
                }
            }
        }
    }
    let ring4 = ArrangementRing::new(4);
    let all4 = GoodFamily::enumerate_all(4);
    let mut rng = ChaCha8Rng::seed_from_u64(0xb10);
    for _ in 0..200 {
        let u = &all4[rng.gen_range(0..all4.len())];
        let w = &all4[rng.gen_range(0..all4.len())];
        let report = verify_per_ob(u, w, &ring4).unwrap();
        if !report.pass() {
            return CheckResult::fail(name, format!("pair identity fails at N=4: U={u}, W={w}"));
        }
    }
    // principal collections
    for n in 1..=4u32 {
        let ring = ArrangementRing::new(n);
        let principals: Vec<GoodFamily> = (0..n)
            .map(|i| GoodFamily::principal(n, 1 << i).unwrap())
            .collect();
        let report = verify_lem_dva(&principals, &ring).unwrap();
        if !report.pass() {
            return CheckResult::fail(name, format!("m-fold identity fails at N={n}"));
        }
    }
    // random collections at N = 4
    for _ in 0..200 {
        let m = rng.gen_range(1..=3usize);
        let fams: Vec<GoodFamily> = (0..m)
            .map(|_| all4[rng.gen_range(0..all4.len())].clone())
            .collect();
        let report = verify_lem_dva(&fams, &ring4).unwrap();
        if !report.pass() {
            return CheckResult::fail(name, "m-fold identity fails on random N=4 input".into());
        }
    }
    // main construction with and without caps
    for n in 1..=4u32 {
        for cap in [None, Some(1), Some(2)] {
            let mc = main_construction(n, cap).unwrap();
            if !mc.pass() {
                return CheckResult::fail(
                    name,
                    format!("main construction fails at N={n}, cap={cap:?}"),
                );
            }
        }
    }
    CheckResult::pass(
        name,
        "pairwise, m-fold, and main-construction identities all hold".into(),
    )
}

/// Full-mode scheduling at (r=2, p=3, D=5): certificates check out, c_2 is
/// preserved, and the out-of-range case D = rp is rejected.
pub fn check_scheduler_end_to_end() -> CheckResult {
    let name = "scheduler end-to-end (r=2, p=3, D=5)";
    let (_, v, ideal) = match formal_schedule_context(2, 3, 1, 5) {
        Ok(t) => t,
        Err(e) => return CheckResult::fail(name, format!("context: {e}")),
    };
    let schedule = match annihilate_schedule(2, 3, 1, 5, ScheduleMode::Full) {
        Ok(s) => s,
        Err(e) => return CheckResult::fail(name, format!("construction: {e}")),
    };
    match apply_schedule(&v, &schedule, &ideal) {
        Ok((final_v, report)) => {
            if !report.c_r_preserved || final_v.class(2) != v.class(2) {
                return CheckResult::fail(name, "c_2 not preserved".into());
            }
            if report.entries.len() != 3 || !report.entries.iter().all(|e| e.in_ideal) {
                return CheckResult::fail(name, "membership certificates incomplete".into());
            }
        }
        Err(e) => return CheckResult::fail(name, format!("application: {e}")),
    }
    match annihilate_schedule(2, 3, 1, 6, ScheduleMode::Full) {
        Err(Error::RangeExceeded(_)) => {}
        other => {
            return CheckResult::fail(name, format!("D = rp accepted: {other:?}"));
        }
    }
    CheckResult::pass(
        name,
        "c_3, c_4, c_5 certified; c_2 preserved; D = rp rejected".into(),
    )
}

/// ℤ/p^m scheduling: p^{m−1} repetitions drive the c_d scalars to 0 and
/// return the c_r scalar to 1 mod p^m, by unit-group arithmetic and by an
/// actual schedule run.
pub fn check_mod_prime_power_mode() -> CheckResult {
    let name = "Z/p^m Adams-only mode ((p,m) in {(3,2),(5,2)}, r=2)";
    for (p, m) in [(3u64, 2u32), (5, 2)] {
        let r = 2u64;
        let dim = r + p - 2; // largest legal dimension
        let q = p.pow(m);
        let reps = p.pow(m - 1);
        // direct unit-group arithmetic
        for d in (r + 1)..=dim {
            let comb = AdamsCombination::new(mi_search(r, d, p).unwrap(), reps as u32);
            let sd = comb.power_sum_mod(d, q);
            let sr = comb.power_sum_mod(r, q);
            let sd_total = (0..reps).fold(1u64, |acc, _| acc * sd % q);
            let sr_total = (0..reps).fold(1u64, |acc, _| acc * sr % q);
            if sd_total != 0 || sr_total != 1 {
                return CheckResult::fail(
                    name,
                    format!("p={p}, d={d}: scalars ({sr_total}, {sd_total}) mod {q}"),
                );
            }
        }
        // schedule run
        let (_, v, ideal) = formal_schedule_context(r, p, m, dim).unwrap();
        let schedule =
            annihilate_schedule(r, p, m, dim, ScheduleMode::AdamsOnly).unwrap();
        match apply_schedule(&v, &schedule, &ideal) {
            Ok((final_v, report)) => {
                if !report.c_r_preserved || final_v.class(r as usize) != v.class(r as usize) {
                    return CheckResult::fail(name, format!("p={p}: c_r not preserved"));
                }
            }
            Err(e) => return CheckResult::fail(name, format!("p={p}: {e}")),
        }
    }
    CheckResult::pass(name, "scalars behave and schedules certify".into())
}

/// The dimension-4 identity for a formal 3-root bundle U with
/// d = c_1(Λ³U) and V = U ⊕ Λ³U: c_4(V) = c_3(V)d + c_2(V)d² + d⁴ mod 2,
/// and four extra copies of the d-line shift c_4 by exactly d⁴.
pub fn check_dim4_identity() -> CheckResult {
    let name = "dim-4 identity for U + Lambda^3 U mod 2";
    let two = BigInt::from(2);
    let l = 3usize;
    let d_class = {
        let mut s = MPoly::zero(l);
        for i in 0..l {
            s = s.add(&MPoly::var(l, i));
        }
        s
    };
    // total Chern class roots of V: the three roots of U plus d
    let roots: Vec<MPoly> = (0..l)
        .map(|i| MPoly::var(l, i))
        .chain(std::iter::once(d_class.clone()))
        .collect();
    let e = |k: usize, set: &[MPoly]| -> MPoly {
        // elementary symmetric of ring elements
        let mut acc = vec![MPoly::zero(l); k + 1];
        acc[0] = MPoly::constant(l, BigInt::one());
        for x in set {
            for j in (1..=k).rev() {
                let bump = acc[j - 1].mul(x);
                acc[j] = acc[j].add(&bump);
            }
        }
        acc[k].clone()
    };
    let c2 = e(2, &roots);
    let c3 = e(3, &roots);
    let c4 = e(4, &roots);
    let d2 = d_class.mul(&d_class);
    let d4 = d2.mul(&d2);
    let rhs = c3.mul(&d_class).add(&c2.mul(&d2)).add(&d4);
    if c4.sub(&rhs).reduce_mod(&two) != MPoly::zero(l) {
        return CheckResult::fail(name, "main identity fails".into());
    }
    // appending four copies of O(d)
    let extended: Vec<MPoly> = roots
        .iter()
        .cloned()
        .chain(std::iter::repeat(d_class.clone()).take(4))
        .collect();
    let c4_ext = e(4, &extended);
    if c4_ext.sub(&c4).sub(&d4).reduce_mod(&two) != MPoly::zero(l) {
        return CheckResult::fail(name, "shift by d^4 fails".into());
    }
    CheckResult::pass(name, "both identities hold symbolically".into())
}

fn small_toy_rings() -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for len in 1..=3usize {
        let count = 2usize.pow(len as u32);
        for mask in 0..count {
            let factors: Vec<u32> = (0..len)
                .map(|i| if mask >> i & 1 == 1 { 2 } else { 1 })
                .collect();
            out.push(factors);
        }
    }
    out
}

/// Cross-validation on products of projective lines and planes: the ring
/// Steenrod action agrees with the partition-level action on classes of
/// ⊕O(h_i), and the degree pairing matrix is a permutation matrix.
pub fn check_toy_cross_validation() -> CheckResult {
    let name = "toy-ring cross-validation (<= 3 factors, p in {2,3})";
    for factors in small_toy_rings() {
        for p in [2u64, 3] {
            let pp = PrimePower::new(p, 1).unwrap();
            let ring = ToyChowRing::new(factors.clone(), CoefficientSpec::Modular(pp));
            let roots: Vec<_> = (1..=ring.nvars()).map(|i| ring.generator(i)).collect();
            let dim = ring.total_dim() as u64;
            for deg in 1..=3u64 {
                for part in Partition::all_of_degree(deg) {
                    if part.inner_degree() as usize > roots.len() {
                        continue;
                    }
                    let class = evaluate_at_classes(
                        char_class_in_roots(&part, roots.len()).poly(),
                        &roots,
                    );
                    let lhs = steenrod_total_on_ring(&class, p).unwrap();
                    let mut rhs = ring.zero();
                    for (mu, coeff) in steenrod_total_on_class(&part, p, Some(dim)) {
                        if mu.inner_degree() as usize > roots.len() {
                            continue;
                        }
                        let term = evaluate_at_classes(
                            char_class_in_roots(&mu, roots.len()).poly(),
                            &roots,
                        );
                        rhs = rhs.add(&term.scale(&BigInt::from(coeff)));
                    }
                    if lhs != rhs {
                        return CheckResult::fail(
                            name,
                            format!(
                                "factors {factors:?}, p={p}, class {part}: \
                                 ring action disagrees with partition action"
                            ),
                        );
                    }
                }
            }
            // Whitney and Adams compatibility of line-sum Chern vectors
            if roots.len() >= 2 {
                // pad both halves to full length so the product is not
                // truncated below the degree of the combined vector
                let pad = |v: ChernVector<crate::toychow::ToyChowClass>| {
                    let mut classes = v.classes().to_vec();
                    while classes.len() < roots.len() {
                        classes.push(ring.zero());
                    }
                    ChernVector::new(classes)
                };
                let (head, tail) = roots.split_at(1);
                let va = pad(chern_of_line_sum(&ring, head).unwrap());
                let vb = pad(chern_of_line_sum(&ring, tail).unwrap());
                let whole = chern_of_line_sum(&ring, &roots).unwrap();
                let product = va.whitney_product(&vb).unwrap();
                for d in 1..=roots.len() {
                    if product.class(d) != whole.class(d) {
                        return CheckResult::fail(
                            name,
                            format!("factors {factors:?}: Whitney split disagrees at {d}"),
                        );
                    }
                }
            }
            let scaled_roots: Vec<_> =
                roots.iter().map(|a| a.scale(&BigInt::from(2))).collect();
            let via_adams = chern_of_line_sum(&ring, &roots).unwrap().adams_single(2);
            let direct = chern_of_line_sum(&ring, &scaled_roots).unwrap();
            for d in 1..=roots.len() {
                if via_adams.class(d) != direct.class(d) {
                    return CheckResult::fail(
                        name,
                        format!("factors {factors:?}: Adams twist disagrees at {d}"),
                    );
                }
            }
            // pairing-matrix perfection
            for d in 0..=ring.total_dim() {
                let rows = ring.basis_of_degree(d);
                let cols = ring.basis_of_degree(ring.total_dim() - d);
                for (i, a) in rows.iter().enumerate() {
                    let a_class =
                        ring.wrap(MPoly::monomial(ring.nvars(), a.clone(), BigInt::one()));
                    let mut hits = 0usize;
                    for b in &cols {
                        let b_class = ring.wrap(MPoly::monomial(
                            ring.nvars(),
                            b.clone(),
                            BigInt::one(),
                        ));
                        let v = degree_pairing(&a_class, &b_class, d).unwrap();
                        if !v.is_zero() {
                            if !v.is_one() {
                                return CheckResult::fail(
                                    name,
                                    format!("pairing entry {v} is not 0/1"),
                                );
                            }
                            hits += 1;
                        }
                    }
                    if hits != 1 {
                        return CheckResult::fail(
                            name,
                            format!(
                                "factors {factors:?}: row {i} of degree {d} \
                                 pairs with {hits} basis classes"
                            ),
                        );
                    }
                    if is_num_trivial(&a_class) {
                        return CheckResult::fail(
                            name,
                            format!("nonzero basis class flagged trivial at {factors:?}"),
                        );
                    }
                }
            }
        }
    }
    CheckResult::pass(name, "Steenrod actions agree; pairing is perfect".into())
}

/// Schedule existence dichotomy: construction succeeds exactly on the
/// documented dimension ranges.
pub fn check_schedule_dichotomy() -> CheckResult {
    let name = "schedule existence dichotomy (p <= 7, r <= p)";
    for p in [2u64, 3, 5, 7] {
        for r in 1..=p {
            for dim in r..=r * p + 2 {
                let full_ok =
                    annihilate_schedule(r, p, 1, dim, ScheduleMode::Full).is_ok();
                if full_ok != (dim < r * p) {
                    return CheckResult::fail(
                        name,
                        format!("full mode at r={r}, p={p}, D={dim}: ok={full_ok}"),
                    );
                }
                let adams_ok =
                    annihilate_schedule(r, p, 2, dim, ScheduleMode::AdamsOnly).is_ok();
                if adams_ok != (dim < r + p - 1) {
                    return CheckResult::fail(
                        name,
                        format!("adamsOnly at r={r}, p={p}, D={dim}: ok={adams_ok}"),
                    );
                }
            }
        }
    }
    CheckResult::pass(name, "both modes succeed exactly on their ranges".into())
}

/// All checks of one named suite; None for an unknown name.
pub fn suite(name: &str) -> Option<Vec<CheckResult>> {
    match name {
        "symfunc" => Some(vec![check_kappa_equivalence()]),
        "modp" => Some(vec![
            check_steenrod_coefficient_chain(),
            check_stch_dichotomy(),
        ]),
        "chern" => Some(vec![
            check_mi_search_soundness(),
            check_adams_structure_law(),
            check_scheduler_end_to_end(),
            check_mod_prime_power_mode(),
            check_schedule_dichotomy(),
            check_dim4_identity(),
        ]),
        "blowup" => Some(vec![check_blowup_identities()]),
        "toy" => Some(vec![check_toy_cross_validation()]),
        _ => None,
    }
}

pub const SUITE_NAMES: [&str; 5] = ["symfunc", "modp", "chern", "blowup", "toy"];

pub fn all_checks() -> Vec<CheckResult> {
    SUITE_NAMES
        .iter()
        .flat_map(|n| suite(n).unwrap())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_check_passes() {
        for check in all_checks() {
            assert!(check.pass, "{}: {}", check.name, check.detail);
        }
    }
}
