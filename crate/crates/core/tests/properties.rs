use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sumfree_core::kneser::{kneser_check, slow_sumset, slow_sym};
use sumfree_core::primitive::{certificate_from_json, certificate_to_json, primitive_library, recognize_primitive};
use sumfree_core::search::canonical_form;
use sumfree_core::text::{format_set, parse_set};
use sumfree_core::{affine_hull, cone, pow3, validate_certificate, AffineSubspace, GroupElement, TernarySet, TernaryVector};

fn set_in(n: usize) -> impl Strategy<Value = TernarySet> {
    proptest::collection::vec(any::<bool>(), pow3(n)).prop_map(move |bits| TernarySet::from_indices(n, bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)).unwrap())
}

fn sized_set() -> impl Strategy<Value = TernarySet> {
    (1usize..=4).prop_flat_map(set_in)
}

fn set_pair() -> impl Strategy<Value = (TernarySet, TernarySet)> {
    (1usize..=4).prop_flat_map(|n| (set_in(n), set_in(n)))
}

fn vector() -> impl Strategy<Value = Vec<u8>> {
    (1usize..=8).prop_flat_map(|n| proptest::collection::vec(0u8..3, n))
}

/// A point plus up to n - 1 random directions.
fn flat() -> impl Strategy<Value = AffineSubspace> {
    (1usize..=4).prop_flat_map(|n| (Just(n), 0..pow3(n), proptest::collection::vec(0..pow3(n), 0..n))).prop_map(|(n, p, dirs)| {
        let v = |i| TernaryVector::new(n, i).unwrap();
        let dirs: Vec<TernaryVector> = dirs.into_iter().map(v).collect();
        AffineSubspace::from_generators(v(p), &dirs).unwrap()
    })
}

fn group_element(n: usize) -> impl Strategy<Value = GroupElement> {
    any::<u64>().prop_map(move |seed| GroupElement::random(n, &mut ChaCha8Rng::seed_from_u64(seed)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn trits_round_trip(t in vector()) {
        let v = TernaryVector::from_trits(&t).unwrap();
        prop_assert_eq!(v.trits(), t.clone());
        prop_assert_eq!(TernaryVector::new(t.len(), v.index()).unwrap(), v);
        // little-endian: the first coordinate is the lowest base-3 digit
        prop_assert_eq!(v.index() % 3, t[0] as usize);
    }

    #[test]
    fn sumset_is_commutative_and_matches_the_definition((a, b) in set_pair()) {
        let ab = a.sumset(&b).unwrap();
        prop_assert_eq!(&ab, &b.sumset(&a).unwrap());
        prop_assert_eq!(&ab, &slow_sumset(&a, &b));
        if !a.is_empty() && !b.is_empty() {
            prop_assert!(ab.len() >= a.len().max(b.len()));
        }
    }

    #[test]
    fn sym_group_matches_the_definition(a in sized_set()) {
        prop_assume!(!a.is_empty());
        prop_assert_eq!(a.sym_group().unwrap().points(), slow_sym(&a));
    }

    #[test]
    fn affine_hull_is_idempotent(a in sized_set()) {
        let h = affine_hull(&a);
        prop_assert!(a.is_subset(&h.points()));
        prop_assert_eq!(affine_hull(&h.points()), h.clone());
        if let Some(d) = h.dim() {
            prop_assert_eq!(h.points().len(), pow3(d));
        }
    }

    #[test]
    fn cone_of_a_flat_off_the_origin(h in flat()) {
        prop_assume!(!h.contains_origin());
        let d = h.dim().unwrap();
        let c = cone(&h).unwrap();
        prop_assert_eq!(c.dim(), d + 1);
        prop_assert_eq!(c.len(), pow3(d + 1));
        prop_assert!(h.points().is_subset(&c.points()));
    }

    #[test]
    fn hull_of_a_flat_is_the_flat(h in flat()) {
        prop_assert_eq!(affine_hull(&h.points()), h.clone());
        prop_assert_eq!(h.points().len(), pow3(h.dim().unwrap()));
    }

    #[test]
    fn text_format_round_trips(a in sized_set()) {
        prop_assert_eq!(parse_set(&format_set(&a)).unwrap(), a);
    }

    #[test]
    fn sum_free_agrees_with_the_definition(a in sized_set()) {
        let n = a.dim();
        let v = |i| TernaryVector::new(n, i).unwrap();
        let by_def = a.iter().all(|x| a.iter().all(|y| !a.contains(v(x) + v(y))));
        prop_assert_eq!(a.is_sum_free(), by_def);
    }

    #[test]
    fn kneser_holds((a, b) in set_pair()) {
        prop_assume!(!a.is_empty() && !b.is_empty());
        prop_assert!(kneser_check(&a, &b).unwrap().is_holds());
    }

    #[test]
    fn primitivity_is_gl_invariant(i in 0usize..1898, g in group_element(3)) {
        let (a, cert) = &primitive_library(3).unwrap()[i];
        let ga = g.apply_set(a);
        prop_assert_eq!(validate_certificate(&cert.transform(&g)).unwrap(), ga.clone());
        let found = recognize_primitive(&ga).expect("images of primitive sets are primitive");
        prop_assert_eq!(validate_certificate(&found).unwrap(), ga.clone());
        prop_assert_eq!(canonical_form(&ga), canonical_form(a));
    }

    #[test]
    fn non_primitive_stays_non_primitive(a in set_in(3), g in group_element(3)) {
        let ga = g.apply_set(&a);
        prop_assert_eq!(recognize_primitive(&a).is_some(), recognize_primitive(&ga).is_some());
        prop_assert_eq!(canonical_form(&a), canonical_form(&ga));
    }

    #[test]
    fn certificate_json_round_trips(i in 0usize..1898) {
        let (_, cert) = &primitive_library(3).unwrap()[i];
        prop_assert_eq!(&certificate_from_json(&certificate_to_json(cert)).unwrap(), cert);
    }

    #[test]
    fn translates_keep_flats_flat(a in sized_set(), x in any::<usize>()) {
        let h = affine_hull(&a);
        prop_assume!(!h.is_empty());
        let v = TernaryVector::new(a.dim(), x % pow3(a.dim())).unwrap();
        let t = h.translate(v);
        prop_assert_eq!(t.points(), h.points().translate(v));
        prop_assert_eq!(affine_hull(&t.points()), t);
    }
}

#[test]
fn whole_space_is_its_own_hull() {
    for n in 1..=4 {
        let all = TernarySet::from_indices(n, 0..pow3(n)).unwrap();
        assert_eq!(affine_hull(&all), AffineSubspace::whole(n));
    }
}
