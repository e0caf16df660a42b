mod common;

use convexlab::analyze::{additive_energy, count_3aps, longest_ap, max_rep, rep_count, rep_profile};
use convexlab::sidon::{is_sidon, nontrivial_quadruples};
use convexlab::PointSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn check(a: &PointSet) {
    let t3 = count_3aps(a);
    assert_eq!(t3.total, common::t3(a), "{a:?}");
    assert_eq!(t3.nontrivial, t3.total - a.len() as u64);
    assert_eq!(additive_energy(a), common::energy(a), "{a:?}");
    assert_eq!(rep_profile(a), common::profile(a));
    assert_eq!(is_sidon(a), common::is_sidon(a), "{a:?}");
    assert_eq!(nontrivial_quadruples(a, 0).0, common::quadruples(a), "{a:?}");
    if a.is_empty() {
        assert!(max_rep(a).is_err());
        assert!(longest_ap(a).is_err());
        return;
    }
    assert_eq!(max_rep(a).unwrap(), common::max_rep(a), "{a:?}");
    let lap = longest_ap(a).unwrap();
    assert_eq!((lap.length, lap.witness), common::longest_ap(a), "{a:?}");
    for x in a.iter().take(5) {
        let probe = x + &a[a.len() / 2];
        assert_eq!(rep_count(a, &probe), common::rep(a, &probe));
    }
}

#[test]
fn random_rational_sets_match_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..200 {
        let a = common::random_set(&mut rng, 40);
        check(&a);
    }
}

#[test]
fn random_convex_sets_match_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let len = rng.gen_range(1..40);
        check(&common::random_convex(&mut rng, len));
    }
}

#[test]
fn huge_coordinates_take_the_bigint_path() {
    use convexlab::Rational;
    use num_bigint::BigInt;
    let big = BigInt::from(1) << 200u32;
    let a = PointSet::from_unsorted(
        [0i64, 1, 2, 4, 5, 9]
            .iter()
            .map(|&k| Rational::new(&big * BigInt::from(k) + BigInt::from(k * k), 3))
            .collect(),
    );
    check(&a);
}
