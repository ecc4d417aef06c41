use dwork_core::hypergeom::{
    cancel, euler_char, hyp_operator, make_hyp, power_pushforward, power_pushforward_list,
    pushed_exponents, recover_from_operator, ExpMultiset, Factor, FactorList,
};
use dwork_core::rational::{int, rat};
use dwork_core::weyl::{indicial_polynomial, singular_support, Place};
use dwork_core::Rational;
use proptest::prelude::*;

fn param() -> impl Strategy<Value = Rational> {
    (-24i64..=24, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn multiset(max: usize) -> impl Strategy<Value = ExpMultiset> {
    prop::collection::vec(param(), 0..=max).prop_map(ExpMultiset::new)
}

fn gamma() -> impl Strategy<Value = Rational> {
    (1i64..=50, 1i64..=50, any::<bool>()).prop_map(|(n, d, neg)| rat(if neg { -n } else { n }, d))
}

/// Equal-length α, β with no class in common.
fn irreducible_pair(max: usize) -> impl Strategy<Value = (ExpMultiset, ExpMultiset)> {
    (1..=max)
        .prop_flat_map(|k| {
            (
                prop::collection::vec(param(), k),
                prop::collection::vec(param(), k),
            )
        })
        .prop_filter("classes must differ", |(a, b)| {
            ExpMultiset::new(a.clone()).disjoint_mod_z(&ExpMultiset::new(b.clone()))
        })
        .prop_map(|(a, b)| (ExpMultiset::new(a), ExpMultiset::new(b)))
}

fn sorted(v: &[Rational]) -> Vec<Rational> {
    let mut v = v.to_vec();
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cancel_idempotent_and_order_free(a in multiset(6), b in multiset(6)) {
        let (a1, b1) = cancel(&a, &b);
        let (a2, b2) = cancel(&a1, &b1);
        prop_assert_eq!(&a1, &a2);
        prop_assert_eq!(&b1, &b2);
        prop_assert!(a1.disjoint_mod_z(&b1));
        prop_assert_eq!(a.len() as i64 - b.len() as i64, a1.len() as i64 - b1.len() as i64);
        let mut ra = a.values().to_vec();
        ra.reverse();
        let mut rb = b.values().to_vec();
        rb.reverse();
        let (a3, b3) = cancel(&ExpMultiset::new(ra), &ExpMultiset::new(rb));
        prop_assert_eq!(a3, a1);
        prop_assert_eq!(b3, b1);
    }

    #[test]
    fn reduced_modules_are_irreducible(g in gamma(), a in multiset(5), b in multiset(5)) {
        let h = make_hyp(g, a, b, true).unwrap();
        prop_assert!(h.is_irreducible());
    }

    #[test]
    fn indicial_roots_are_the_exponents(g in gamma(), (a, b) in irreducible_pair(5)) {
        let h = make_hyp(g.clone(), a.clone(), b.clone(), true).unwrap();
        let op = hyp_operator(&h);
        let zero = indicial_polynomial(&op, Place::Zero).unwrap();
        let inf = indicial_polynomial(&op, Place::Infinity).unwrap();
        prop_assert_eq!(zero.roots(), sorted(h.exponents(Place::Zero).unwrap().values()));
        prop_assert_eq!(inf.roots(), sorted(h.exponents(Place::Infinity).unwrap().values()));
        let s = singular_support(&op).unwrap();
        prop_assert_eq!(s.rational_points, vec![g.clone()]);
        prop_assert!(s.irreducible_factors.is_empty());
    }

    #[test]
    fn operator_recovers_the_data(g in gamma(), (a, b) in irreducible_pair(4), c in 1i64..=7) {
        let h = make_hyp(g.clone(), a.clone(), b.clone(), false).unwrap();
        let r = recover_from_operator(&hyp_operator(&h).scale(&int(c))).unwrap();
        prop_assert_eq!((r.n, r.m), (a.len(), b.len()));
        prop_assert_eq!(r.alpha, a);
        prop_assert_eq!(r.beta, b);
        prop_assert_eq!(r.gamma, Some(g.clone()));
        let moved = make_hyp(&g * int(2), h.alpha.clone(), h.beta.clone(), false).unwrap();
        let s = singular_support(&hyp_operator(&moved)).unwrap();
        prop_assert_eq!(s.rational_points, vec![&g * int(2)]);
    }

    #[test]
    fn twist_shifts_roots(g in gamma(), (a, b) in irreducible_pair(4), eta in param()) {
        let h = make_hyp(g, a, b, true).unwrap();
        let t = h.kummer_twist(&eta);
        let diffs = |h: &dwork_core::hypergeom::HypModule| {
            let mut v: Vec<Rational> = h.alpha.values().iter()
                .flat_map(|x| h.beta.values().iter().map(move |y| x - y))
                .collect();
            v.sort();
            v
        };
        prop_assert_eq!(diffs(&h), diffs(&t));
        let before = indicial_polynomial(&hyp_operator(&h), Place::Zero).unwrap().roots();
        let after = indicial_polynomial(&hyp_operator(&t), Place::Zero).unwrap().roots();
        let shifted: Vec<Rational> = before.iter().map(|r| r + &eta).collect();
        prop_assert_eq!(after, shifted);
    }

    #[test]
    fn pushforward_then_scale_recovers_classes(a in multiset(5), e in 1u64..=6) {
        let back = pushed_exponents(&a, e).scaled(&int(e as i64));
        let mut expected = Vec::new();
        for _ in 0..e {
            expected.extend_from_slice(a.values());
        }
        prop_assert_eq!(back, ExpMultiset::new(expected));
    }

    #[test]
    fn pushforward_preserves_euler_char(
        kummers in prop::collection::vec(param(), 0..6),
        g in gamma(),
        (a, b) in irreducible_pair(3),
        e in 1u64..=5,
    ) {
        let list: FactorList = kummers.iter().map(Factor::kummer).collect();
        let pushed = power_pushforward_list(&list, e).unwrap();
        prop_assert_eq!(euler_char(&pushed).unwrap(), 0);
        prop_assert_eq!(pushed.len() as u64, list.len() as u64 * e);
        let h = Factor::Hyp(make_hyp(g, a, b, true).unwrap());
        let single = FactorList::new(vec![h.clone()]);
        prop_assert_eq!(euler_char(&single).unwrap(), -1);
        prop_assert_eq!(euler_char(&power_pushforward(&h, e).unwrap()).unwrap(), -1);
    }
}
