use proptest::prelude::*;

use z22geo::admissible;
use z22geo::lattice::{intersect, Ambient, DivClass, Positivity};
use z22geo::recipes::{classify, construct, Region};

fn surface() -> impl Strategy<Value = Ambient> {
    prop_oneof![
        Just(Ambient::ProjectivePlane),
        (0u32..=4).prop_map(|e| Ambient::Hirzebruch { e }),
    ]
}

fn class_on(s: &Ambient) -> impl Strategy<Value = DivClass> {
    let s = s.clone();
    proptest::collection::vec(-15i64..=15, s.rank()).prop_map(move |c| s.class(c).unwrap())
}

/// Sections of `aΔ0 + bF` on `F_e`, one monomial per admissible exponent pair.
fn brute_h0(e: i64, a: i64, b: i64) -> i64 {
    if a < 0 {
        return 0;
    }
    (0..=a)
        .map(|j| (0..=b.max(0)).filter(|&i| i <= b - j * e).count() as i64)
        .sum()
}

proptest! {
    #[test]
    fn intersection_is_symmetric_and_bilinear(
        (_, x, y, z) in surface().prop_flat_map(|s| (Just(s.clone()), class_on(&s), class_on(&s), class_on(&s))),
        k in -5i64..=5,
    ) {
        prop_assert_eq!(intersect(&x, &y).unwrap(), intersect(&y, &x).unwrap());
        let lhs = intersect(&(&(k * &x) + &y), &z).unwrap();
        prop_assert_eq!(lhs, k * intersect(&x, &z).unwrap() + intersect(&y, &z).unwrap());
    }

    #[test]
    fn riemann_roch_parity(
        (s, x) in surface().prop_flat_map(|s| (Just(s.clone()), class_on(&s))),
    ) {
        // adjunction: D·(D + K) is even
        let k = s.canonical();
        prop_assert_eq!(intersect(&x, &(&x + &k)).unwrap().rem_euclid(2), 0);
    }

    #[test]
    fn hirzebruch_h0_matches_enumeration(e in 0u32..=4, a in -3i64..=10, b in -3i64..=20) {
        let s = Ambient::Hirzebruch { e };
        let h = s.h0(&s.ruled(a, b)).unwrap();
        prop_assert!(!h.estimate);
        prop_assert_eq!(h.dim, brute_h0(e as i64, a, b));
    }

    #[test]
    fn h0_equals_riemann_roch_on_nef_classes(e in 0u32..=4, a in 0i64..=10, extra in 0i64..=10) {
        let s = Ambient::Hirzebruch { e };
        let d = s.ruled(a, a * e as i64 + extra);
        prop_assert_eq!(s.h0(&d).unwrap().dim, s.euler_characteristic(&d).unwrap());
    }

    #[test]
    fn adding_an_ample_class_preserves_positivity(e in 0u32..=4, a in 0i64..=6, b in 0i64..=30) {
        let s = Ambient::Hirzebruch { e };
        let d = s.ruled(a, b);
        let ample = s.ruled(1, e as i64 + 1);
        let before = s.positivity(&d).unwrap();
        let after = s.positivity(&(&d + &ample)).unwrap();
        if before != Positivity::NotNef {
            prop_assert_eq!(after, Positivity::Ample);
        }
    }

    #[test]
    fn covered_pairs_reproduce_their_invariants(chi in 1i64..=40, offset in 0i64..=400) {
        let lo = (2 * chi - 6).max(1);
        let ksq = lo + offset % (9 * chi - lo + 1);
        prop_assert!(admissible(ksq, chi));
        let region = classify(ksq, chi);
        match construct(ksq, chi) {
            Ok(cert) => {
                prop_assert!(region.is_covered());
                prop_assert!(cert.verified());
                prop_assert_eq!((cert.invariants.ksq, cert.invariants.chi), (ksq, chi));
                let expected = if region == Region::Line4chiMinus5 || (ksq, chi) == (2, 4) {
                    Positivity::NefOnly
                } else {
                    Positivity::Ample
                };
                prop_assert_eq!(cert.ampleness, expected);
            }
            Err(_) => prop_assert_eq!(region, Region::NotCovered),
        }
    }
}
