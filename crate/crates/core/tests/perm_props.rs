mod common;

use std::collections::BTreeMap;

use common::*;
use dagex_core::perm::{
    consistent_on, is_k_commuting, random_k_commuting, verify_local_consistency,
};
use dagex_core::{Classifier, Index, ShiftInjection};
use proptest::prelude::*;

#[test]
fn random_permutations_commute_with_their_clic() {
    let configs = configurations();
    let per = 10_000 / configs.len() + 1;
    for (name, d, k) in &configs {
        for seed in 0..per as u64 {
            let n = 1 + (seed % 5) as u32;
            let tau = random_k_commuting(d, k, n, seed);
            assert!(is_k_commuting(d, k, &tau, n), "{name} seed {seed}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_permutations_are_g_permutations(c in 0..configurations().len(), seed: u64) {
        let (_, d, k) = &configurations()[c];
        let tau = random_k_commuting(d, k, 3, seed);
        prop_assert!(verify_local_consistency(d, &tau.on(d), 3));
    }

    #[test]
    fn permutations_respect_classes(c in 0..configurations().len(), seed: u64) {
        let (_, d, k) = &configurations()[c];
        let cl = Classifier::new(d, k);
        let tau = random_k_commuting(d, k, 3, seed);
        let idx = cl.generic_indices(3, false);
        let img: Vec<Index> = idx.iter().map(|a| tau.apply(d, a).unwrap()).collect();
        let keys: Vec<_> = idx.iter().map(|a| cl.class_key(a).unwrap()).collect();
        let img_keys: Vec<_> = img.iter().map(|a| cl.class_key(a).unwrap()).collect();
        // class_key(τα) is a well-defined injective function of class_key(α)
        let mut fwd = BTreeMap::new();
        let mut back = BTreeMap::new();
        for (ka, kt) in keys.iter().zip(&img_keys) {
            prop_assert_eq!(fwd.entry(ka).or_insert(kt), &kt);
            prop_assert_eq!(back.entry(kt).or_insert(ka), &ka);
        }
        for a in &img {
            prop_assert!(cl.is_generic(a));
        }
    }

    #[test]
    fn shift_injection_laws(c in 0..configurations().len(), vals in proptest::collection::vec(0u64..4, 5)) {
        let (_, d, k) = &configurations()[c];
        let cl = Classifier::new(d, k);
        let anchor = Index::from_parts(d.all(), vals[..d.len()].to_vec());
        prop_assume!(cl.is_generic(&anchor));
        let keys = cl.restr_class_keys(&anchor).unwrap();
        let rho = ShiftInjection::new(&cl, anchor.clone()).unwrap();
        prop_assert_eq!(rho.apply(&anchor).unwrap(), anchor.clone());

        let n = if d.len() > 4 { 3 } else { 4 };
        let all = cl.generic_indices(n, false);
        let mut seen = BTreeMap::new();
        for b in &all {
            let r = rho.apply(b).unwrap();
            prop_assert!(cl.is_generic(&r));
            prop_assert!(seen.insert(r.clone(), b.clone()).is_none(), "collision at {:?}", b);
            prop_assert_eq!(&r, &rho.apply_by_cases(b, &keys).unwrap());

            let fixed = cl.wedge_domain(b, &keys).unwrap();
            for (v, x) in b.iter() {
                let y = r.get(v).unwrap();
                prop_assert_eq!(y == x, fixed.contains(v));
                prop_assert!(y >= x);
            }
            for v in b.dom().iter() {
                let local = b.restrict_to(d.closure(v));
                let r_local = rho.apply(&local).unwrap();
                prop_assert_eq!(&r_local, &r.restrict_to(d.closure(v)));
                for m in k.at(v) {
                    prop_assert_eq!(rho.apply(&local.transport(m)).unwrap(), r_local.transport(m));
                }
            }
        }
        let full: Vec<Index> = all.into_iter().filter(|a| a.dom() == d.all()).collect();
        prop_assert!(consistent_on(d, &rho, &full));
    }
}
