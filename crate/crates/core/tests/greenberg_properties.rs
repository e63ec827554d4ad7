mod common;

use iwasawa_core::greenberg::{
    chi_glob_level, chi_glob_rational, criterion1_check, criterion2_check, ledger_ratio, SizeLedger,
};
use iwasawa_core::module::ElementaryModule;
use proptest::prelude::*;

fn pair() -> impl Strategy<Value = (ElementaryModule, ElementaryModule)> {
    any::<u64>().prop_map(|seed| {
        use rand::SeedableRng;
        common::random_pair(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed))
    })
}

proptest! {
    #[test]
    fn criterion1_sides_agree((u, v) in pair(), f in common::pool_poly()) {
        let r = criterion1_check(&u, &v, &f, 4).unwrap();
        prop_assert!(r.consistent(), "{}", r);
    }

    #[test]
    fn criterion2_sides_agree((u, v) in pair()) {
        let r = criterion2_check(&u, &v, 3, 3).unwrap();
        prop_assert!(r.consistent(), "{}", r);
    }

    #[test]
    fn common_summands_change_nothing((u, v) in pair(), w in common::torsion_module(), f in common::pool_poly()) {
        let (uw, vw) = (u.direct_sum(&w).unwrap(), v.direct_sum(&w).unwrap());
        let (a, b) = (criterion1_check(&u, &v, &f, 4).unwrap(), criterion1_check(&uw, &vw, &f, 4).unwrap());
        prop_assert_eq!((a.side_a, a.side_b), (b.side_a, b.side_b));
        let (a, b) = (criterion2_check(&u, &v, 2, 2).unwrap(), criterion2_check(&uw, &vw, 2, 2).unwrap());
        prop_assert_eq!((a.side_a, a.side_b), (b.side_a, b.side_b));
    }

    #[test]
    fn ledger_from_five_exponents(k1 in -50i64..50, g1 in -50i64..50, g2 in -50i64..50, h0 in -50i64..50,
                                  e in 1u32..=4, n in 0u32..=3, m in 1u32..=3, f in common::pool_poly(), level in any::<bool>()) {
        let chi = if level { chi_glob_level(e, n, 3).unwrap() } else { chi_glob_rational(e, &f, m) };
        let l = SizeLedger::from_right_side(k1, g1, g2, h0, chi);
        prop_assert_eq!(l.residual(), 0);
        prop_assert_eq!(SizeLedger::new(l.k1, l.k1_dagger, g1, g2, h0, chi), Ok(l));
        prop_assert_eq!(ledger_ratio(&l), l.k1_dagger - l.k1);
        prop_assert!(SizeLedger::new(l.k1, l.k1_dagger + 1, g1, g2, h0, chi).is_err());
    }
}
