//! Momentum maps and reduction on the three dual-pair families.

use proptest::prelude::*;

use scorza_core::dual_pair::{
    dagger, dagger_defect, equivariance_check, mu_g, mu_k, random_group_g, random_group_h, random_lie_g,
    random_lie_h, random_w, reduce, reduced_point, sample_zero_level, veronese_map, CaseKind, DualPairCase,
    MomentMaps, WElement,
};
use scorza_core::rng::trial_rng;
use scorza_core::strata::rank_of;
use scorza_core::verify::{verify_suite_with, Suite, VerifyOptions};
use scorza_core::{Error, Matrix, PSpaceModel, Scalar};

const H: u32 = 10;

fn kinds() -> [CaseKind; 4] {
    [CaseKind::Sp { l: 3 }, CaseKind::U { p: 3, q: 3 }, CaseKind::U { p: 2, q: 4 }, CaseKind::Ostar { d: 6 }]
}

#[test]
fn alpha_e1_in_sp1() {
    let case = DualPairCase::new(CaseKind::Sp { l: 1 }, 1).unwrap();
    let a = WElement::new(case, Matrix::from_ints(&[&[1], &[0]])).unwrap();
    assert_eq!(dagger(&a), Matrix::from_ints(&[&[0, -1]]));
    assert_eq!(mu_g(&a), Matrix::from_ints(&[&[0, -1], &[0, 0]]));
    assert_eq!(mu_k(&a), Matrix::zeros(1, 1));
}

#[test]
fn models_of_p_plus() {
    let model = |k, s| DualPairCase::new(k, s).unwrap().model();
    assert_eq!(model(CaseKind::Sp { l: 3 }, 2), PSpaceModel::Sym { r: 3 });
    assert_eq!(model(CaseKind::U { p: 2, q: 4 }, 1), PSpaceModel::Mat { q: 4, p: 2 });
    assert_eq!(model(CaseKind::Ostar { d: 6 }, 1), PSpaceModel::Skew { n: 6 });
    assert!("ostar:1".parse::<CaseKind>().is_err());
    assert!("sp:0".parse::<CaseKind>().is_err());
    assert!(DualPairCase::new(CaseKind::Sp { l: 2 }, 0).is_err());
}

#[test]
fn saturation_beyond_split_rank() {
    for kind in kinds() {
        let r = DualPairCase::new(kind, 1).unwrap().split_rank();
        for s in 1..=r + 1 {
            let case = DualPairCase::new(kind, s).unwrap();
            let mut hits = 0;
            for t in 0..6 {
                let mut rng = trial_rng(4, "saturation", t);
                let red = reduce(&case, &mut rng, H).unwrap();
                assert!(red.rank <= s.min(r), "{kind} s={s}");
                hits += (red.rank == s.min(r)) as usize;
            }
            assert!(hits >= 5, "{kind} s={s}: {hits}/6 generic");
        }
    }
}

#[test]
fn reduced_point_needs_zero_level() {
    let case = DualPairCase::new(CaseKind::Sp { l: 2 }, 2).unwrap();
    let mut rng = trial_rng(1, "off-level", 0);
    let a = random_w(&case, &mut rng, H);
    assert!(!mu_k(&a).is_zero());
    assert!(matches!(reduced_point(&a), Err(Error::Precondition(_))));
}

#[test]
fn veronese_images_are_rank_one() {
    for kind in kinds() {
        let case = DualPairCase::new(kind, 1).unwrap();
        for t in 0..8 {
            let mut rng = trial_rng(8, "veronese", t);
            let v: Vec<Scalar> = scorza_core::dual_pair::random_v(&case, &mut rng, H);
            let pt = veronese_map(&case, &v).unwrap();
            assert_eq!(rank_of(&pt).unwrap(), 1, "{kind}");
        }
    }
}

#[test]
fn equivariance_rejects_non_group_elements() {
    let case = DualPairCase::new(CaseKind::U { p: 2, q: 2 }, 2).unwrap();
    let mut rng = trial_rng(3, "contract", 0);
    let a = random_w(&case, &mut rng, H);
    let bad = Matrix::from_fn(4, 4, |i, j| Scalar::from_int((i == j) as i64 * 2));
    assert!(matches!(equivariance_check(&a, &Matrix::identity(2), &bad), Err(Error::Contract(_))));
}

fn corrupted_dagger(a: &WElement) -> Matrix {
    a.alpha().adjoint()
}

#[test]
fn corrupted_dagger_is_caught_with_replayable_witness() {
    let opts = VerifyOptions { maps: MomentMaps { dagger: corrupted_dagger }, ..VerifyOptions::new(100, 7) };
    let rep = verify_suite_with(Suite::Moment, opts).unwrap();
    assert!(!rep.pass);
    let name = "moment/dagger_identity/sp:3";
    let check = rep.check(name).unwrap();
    assert!(!check.pass);
    let w = check.witness.as_ref().expect("failing check carries a witness");
    assert_eq!(w.seed, 7);

    // Replay the failing trial alone from (seed, check name, trial).
    let case = DualPairCase::new(CaseKind::Sp { l: 3 }, 2).unwrap();
    let mut rng = trial_rng(w.seed, name, w.trial);
    let a = random_w(&case, &mut rng, H);
    assert_eq!(serde_json::to_value(a.alpha()).unwrap(), w.inputs["alpha"]);
    assert!(dagger_defect(&a, &corrupted_dagger(&a)).iter().any(|d| !d.is_zero()));
    assert!(dagger_defect(&a, &dagger(&a)).iter().all(Scalar::is_zero));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn moment_maps_land_in_their_lie_algebras(pick in 0usize..4, s in 1usize..=3, seed in any::<u64>()) {
        let case = DualPairCase::new(kinds()[pick], s).unwrap();
        let mut rng = trial_rng(seed, "lie", 0);
        let a = random_w(&case, &mut rng, 5);
        prop_assert!(dagger_defect(&a, &dagger(&a)).iter().all(Scalar::is_zero));
        prop_assert!(case.in_h(&mu_k(&a)));
        prop_assert!(case.in_g(&mu_g(&a)));
        prop_assert!(case.in_g(&random_lie_g(&case, &mut rng, 5).unwrap()));
        prop_assert!(case.in_h(&random_lie_h(&case, &mut rng, 5).unwrap()));
    }

    #[test]
    fn moment_maps_are_equivariant(pick in 0usize..4, seed in any::<u64>()) {
        let case = DualPairCase::new(kinds()[pick], 2).unwrap();
        let mut rng = trial_rng(seed, "equivariance", 0);
        let a = random_w(&case, &mut rng, 5);
        let g = random_group_g(&case, &mut rng, 3).unwrap();
        let h = random_group_h(&case, &mut rng, 3).unwrap();
        prop_assert!(equivariance_check(&a, &h, &g).unwrap());
    }

    #[test]
    fn zero_level_samples_reduce_within_bound(pick in 0usize..4, s in 1usize..=4, seed in any::<u64>()) {
        let case = DualPairCase::new(kinds()[pick], s).unwrap();
        let mut rng = trial_rng(seed, "zero-level", 0);
        let a = sample_zero_level(&case, &mut rng, 5).unwrap();
        prop_assert!(mu_k(&a).is_zero());
        let pt = reduced_point(&a).unwrap();
        prop_assert!(rank_of(&pt).unwrap() <= s.min(case.split_rank()));
    }
}
