mod common;

use convexlab::analyze::{additive_energy, count_3aps, rep_count, rep_profile};
use convexlab::construct::{geometric_set, nested_parabola, rich_sum, NestedParabolaParams};
use convexlab::sidon::is_sidon;
use convexlab::{PointSet, Rational};
use proptest::prelude::*;

fn check_identities(a: &PointSet) {
    let n = a.len() as u128;
    let t3 = count_3aps(a).total as u128;
    let e = additive_energy(a);
    let two = Rational::from(2);
    let via_reps: u128 = a.iter().map(|x| rep_count(a, &(&two * x)) as u128).sum();
    assert_eq!(t3, via_reps);
    let via_profile: u128 = rep_profile(a).iter().map(|&(_, r)| (r as u128).pow(2)).sum();
    assert_eq!(e, via_profile);
    assert!(t3 * t3 <= n * e);
    assert!(n <= t3 && t3 <= n * n);
    assert!(e >= n * n);
    assert_eq!(is_sidon(a), e == 2 * n * n - n || n == 0);
}

#[test]
fn identities_on_constructions() {
    for (n, m) in [(72, 3), (200, 5), (128, 4)] {
        let (set, _) = nested_parabola(&NestedParabolaParams::new(n, m)).unwrap();
        check_identities(set.points());
    }
    for n in 2..7 {
        check_identities(rich_sum(n).unwrap().0.points());
    }
    for n in 2..12 {
        check_identities(geometric_set(n).unwrap().points());
    }
}

fn arb_set() -> impl Strategy<Value = PointSet> {
    prop::collection::vec((-30i64..30, 1i64..5), 0..30)
        .prop_map(|v| PointSet::from_unsorted(v.into_iter().map(|(p, q)| Rational::new(p, q)).collect()))
}

proptest! {
    #[test]
    fn identities_on_random_sets(a in arb_set()) {
        check_identities(&a);
    }

    #[test]
    fn statistics_are_affine_invariant(a in arb_set(), p in 1i64..9, q in 1i64..9, neg in any::<bool>(), b in -10i64..10) {
        let alpha = Rational::new(if neg { -p } else { p }, q);
        let image = a.affine_image(&alpha, &Rational::from(b)).unwrap();
        prop_assert_eq!(count_3aps(&a), count_3aps(&image));
        prop_assert_eq!(additive_energy(&a), additive_energy(&image));
        prop_assert_eq!(is_sidon(&a), is_sidon(&image));
    }
}
