mod common;

use num_bigint::BigUint;
use num_traits::Zero;
use proptest::prelude::*;

use common::{digits, estar_def, phi, q, Q};
use pierce_esum::esum::{cylinder_extrema, estar_finite, esum, jumps_at};
use pierce_esum::expand;
use pierce_esum::intervals::{fundamental_interval, locate};
use pierce_esum::seq::{hat_prime, phi_preimages, CylinderId, PierceSeq};

fn unit() -> impl Strategy<Value = Q> {
    (2i64..2_000_000).prop_flat_map(|d| (1..d).prop_map(move |n| q(n, d)))
}

fn increasing(max_len: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1u64..12, 1..=max_len).prop_map(|steps| {
        let mut last = 0;
        steps
            .into_iter()
            .map(|s| {
                last += s;
                last
            })
            .collect()
    })
}

fn big(d: &[u64]) -> Vec<BigUint> {
    d.iter().map(|&x| BigUint::from(x)).collect()
}

proptest! {
    #[test]
    fn expansion_round_trips(x in unit()) {
        let d = digits(&x);
        let e = expand(&x).unwrap();
        let want = big(&d);
        prop_assert_eq!(e.prefix(), want.as_slice());
        prop_assert_eq!(phi(&d), x);
    }

    #[test]
    fn esum_matches_definition(x in unit()) {
        let e = esum(&x).unwrap();
        prop_assert_eq!(&e, &estar_def(&digits(&x)));
        prop_assert!(e > q(-1, 2) && e <= Q::zero());
    }

    #[test]
    fn closed_form_matches_definition(d in increasing(8)) {
        prop_assert_eq!(estar_finite(&big(&d)), estar_def(&d));
    }

    #[test]
    fn both_preimages_evaluate_to_x(x in unit()) {
        for s in phi_preimages(&x).unwrap() {
            let d: Vec<u64> = s.prefix().iter().map(|v| v.try_into().unwrap()).collect();
            prop_assert_eq!(phi(&d), x.clone());
        }
    }

    #[test]
    fn point_lies_in_its_cylinders(x in unit()) {
        let n = digits(&x).len();
        for k in 1..=n {
            let c = locate(&x, k).unwrap();
            prop_assert!(fundamental_interval(&c).contains(&x));
        }
    }

    #[test]
    fn extrema_bound_extensions(d in increasing(3), ext in increasing(3)) {
        let c = CylinderId::new(big(&d)).unwrap();
        let m = cylinder_extrema(&c);
        let last = *d.last().unwrap();
        let full: Vec<u64> = d.iter().copied().chain(ext.iter().map(|e| e + last)).collect();
        let v = estar_def(&full);
        prop_assert!(m.min <= v && v <= m.max);
        let hp = hat_prime(&PierceSeq::from_u64(&d).unwrap()).unwrap();
        let hp: Vec<u64> = hp.prefix().iter().map(|v| v.try_into().unwrap()).collect();
        prop_assert!(m.min == estar_def(&hp) || m.max == estar_def(&hp));
    }

    #[test]
    fn left_limit_exceeds_right(x in unit()) {
        let j = jumps_at(&x).unwrap();
        prop_assert!(j.left_limit() > j.right_limit());
    }
}
