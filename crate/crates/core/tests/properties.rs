//! Randomized structural invariants.

use charcalc::blowup::{ArrangementElement, ArrangementRing};
use charcalc::chern::{
    annihilate_schedule, generic_formal_vector, CoefficientSpec, FormalRing, Schedule,
    ScheduleMode,
};
use charcalc::symfunc::Partition;
use charcalc::PrimePower;
use num_bigint::BigInt;
use proptest::prelude::*;

fn arrangement_element(
    ring: ArrangementRing,
) -> impl Strategy<Value = ArrangementElement> {
    let full: u32 = (1 << ring.ground_size) - 1;
    proptest::collection::vec((1..=full, -3i64..=3), 0..5).prop_map(move |terms| {
        let mut acc = ring.zero();
        for (mask, coeff) in terms {
            acc = acc
                .add(&ring.generator(mask).scale(&BigInt::from(coeff)))
                .unwrap();
        }
        acc
    })
}

proptest! {
    #[test]
    fn arrangement_multiplication_is_commutative(
        (a, b) in (1u32..=4).prop_flat_map(|n| {
            let ring = ArrangementRing::new(n);
            (arrangement_element(ring), arrangement_element(ring))
        })
    ) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn arrangement_multiplication_is_associative(x in 1u32..=7, y in 1u32..=7, z in 1u32..=7) {
        let ring = ArrangementRing::new(3);
        let a = ring.generator(x).add(&ring.generator(y)).unwrap();
        let b = ring.generator(y).add(&ring.generator(z)).unwrap();
        let c = ring.generator(z).add(&ring.generator(x)).unwrap();
        prop_assert_eq!(
            a.mul(&b).unwrap().mul(&c).unwrap(),
            a.mul(&b.mul(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn whitney_product_is_commutative(top in 2usize..=5) {
        let pp = PrimePower::new(5, 1).unwrap();
        let ring = FormalRing::full(top, CoefficientSpec::Modular(pp));
        let v = generic_formal_vector(&ring);
        let w = v.adams_single(2);
        let vw = v.whitney_product(&w).unwrap();
        let wv = w.whitney_product(&v).unwrap();
        for d in 1..=top {
            prop_assert_eq!(vw.class(d), wv.class(d));
        }
    }

    #[test]
    fn partition_parse_round_trip(deg in 1u64..=7) {
        for part in Partition::all_of_degree(deg) {
            let text = part.to_string();
            prop_assert_eq!(Partition::parse(&text).unwrap(), part);
        }
    }

    #[test]
    fn schedule_json_round_trip(r in 1u64..=3, dim_off in 0u64..=3) {
        let p = 5u64;
        let dim = (r + dim_off).min(r * p - 1);
        let s = annihilate_schedule(r, p, 1, dim, ScheduleMode::Full).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        let back: Schedule = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, s);
    }
}
