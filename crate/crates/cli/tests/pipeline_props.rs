use gzb_cli::gen::{lift_instance, rng};
use gzb_cli::lift::{lift_tower, lift_tower_with, PreimageChoice};
use gzb_cli::pipeline::{cmd_check, replay, Certificate, Status};
use gzb_core::exact_algebra::rat;
use gzb_core::torsion_core::verify_tower;
use proptest::prelude::*;

fn nonzero() -> impl Strategy<Value = (i64, i64)> {
    (-40i64..=40, 1i64..=6).prop_filter("nonzero", |(n, _)| *n != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn check_is_deterministic_and_replays((cn, cd) in nonzero(), (dn, dd) in nonzero()) {
        let (c, d) = (rat(cn, cd), rat(dn, dd));
        let v = cmd_check(&c, &d, 300).unwrap();
        prop_assert_eq!(&cmd_check(&c, &d, 300).unwrap(), &v);
        let json = serde_json::to_string(&v.certificate).unwrap();
        let back: Certificate = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(replay(&back).unwrap(), v.status);
        if v.status != Status::RationalConic {
            prop_assert!(!v.witnesses().is_empty() && v.witnesses().len() % 2 == 0);
        }
    }

    #[test]
    fn lifted_towers_verify(seed in any::<u64>(), depth in 2usize..12) {
        let inst = lift_instance(&mut rng(seed), depth);
        let lift = lift_tower(&inst.model, &inst.alpha, &inst.tower_down).unwrap();
        prop_assert!(verify_tower(inst.model.domain(), &lift.tower, depth));
        for (a, t) in lift.tower.elems.iter().zip(&inst.tower_down.elems) {
            prop_assert_eq!(&inst.model.apply(a).unwrap(), t);
        }
        let other = lift_tower_with(&inst.model, &inst.alpha, &inst.tower_down, PreimageChoice::Perturbed).unwrap();
        prop_assert_eq!(other, lift);
    }
}
