mod common;

use common::gens::{element, minus, plus};
use proptest::prelude::*;
use raviolo::local::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn products_stay_in_the_algebra(x in element(), y in element()) {
        prop_assert!(boundary_check(&x.mul(&y)));
    }

    #[test]
    fn minus_part_is_a_subalgebra(x in minus(), y in minus()) {
        prop_assert!(is_minus(&x.mul(&y)));
    }

    #[test]
    fn d_preserves_the_boundary_conditions(x in element()) {
        prop_assert!(boundary_check(&d(&x)));
    }

    #[test]
    fn split_is_a_direct_sum(x in element()) {
        let (m, p) = split_pm(&x).unwrap();
        prop_assert!(is_minus(&m));
        prop_assert!(is_plus(&p));
        prop_assert!(m.terms().all(|(k, _)| p.get(k).is_none()));
        prop_assert_eq!(m.add(&p), x);
    }

    #[test]
    fn sdr_identity_on_the_plus_part(x in plus()) {
        prop_assert!(sdr_defect_plus(&x).is_zero());
    }

    #[test]
    fn sdr_identity_on_the_minus_part(x in minus()) {
        prop_assert!(sdr_defect_minus(&x).is_zero());
    }
}

#[test]
fn split_rejects_invalid_elements() {
    assert!(split_pm(&local_term(-1, VForm::power(1))).is_err());
}

#[test]
fn cohomology_representatives() {
    for k in 1..=8 {
        let t = cohomology_truncated(k, 2).unwrap();
        assert_eq!((t.h0_rank, t.h1_rank), (k + 1, k));
        let h0: Vec<String> = (0..=k).map(|j| match j {
            0 => "1".to_string(),
            1 => "z".to_string(),
            _ => format!("z^{j}"),
        }).collect();
        assert_eq!(t.h0, h0);
        assert!(t.h1_reps.iter().zip(1..).all(|(r, j)| *r == local_term(-j, VForm::power_dt(0))));
    }
}
