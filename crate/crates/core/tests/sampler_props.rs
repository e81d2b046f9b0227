mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::*;
use dagex_core::clic::enumerate_clics;
use dagex_core::sampler::{
    argument_keys, generate_array, generate_cascade, uniform_for, FSpec, SampleSpec,
};
use dagex_core::{Classifier, Clic, Index};

fn spec(d: &dagex_core::Dag, k: &Clic, size: u32, f: FSpec, seed: u64) -> SampleSpec {
    SampleSpec {
        dag: d.clone(),
        clic: k.clone(),
        size,
        f,
        seed,
    }
}

#[test]
fn prf_is_close_to_uniform() {
    let d = single();
    let k = Clic::trivial(&d);
    let cl = Classifier::new(&d, &k);
    let mut u: Vec<f64> = (0..100_000u64)
        .map(|x| {
            let key = cl
                .class_key(&Index::from_labels(&d, &[("a", x)]).unwrap())
                .unwrap();
            uniform_for(9, &d, &key)
        })
        .collect();
    u.sort_by(f64::total_cmp);
    let n = u.len() as f64;
    let ks = u
        .iter()
        .enumerate()
        .map(|(i, &x)| (x - i as f64 / n).abs().max(((i + 1) as f64 / n - x).abs()))
        .fold(0.0, f64::max);
    assert!(ks < 0.01, "KS distance {ks}");
}

#[test]
fn arrays_are_deterministic() {
    for (_, d, k) in configurations() {
        for f in [FSpec::Mix, FSpec::Affine(None), FSpec::Threshold(0.5)] {
            let s = spec(&d, &k, 3, f, 42);
            let (a, b) = match (generate_array(&s), generate_array(&s)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), Err(e2)) => {
                    assert_eq!(e, e2);
                    continue;
                }
                _ => panic!("nondeterministic failure"),
            };
            let bits = |m: &std::collections::BTreeMap<Index, f64>| {
                m.iter()
                    .map(|(i, x)| (i.clone(), x.to_bits()))
                    .collect::<Vec<_>>()
            };
            assert_eq!(bits(&a.entries), bits(&b.entries));
        }
    }
}

#[test]
fn argument_keys_cover_the_restriction_classes() {
    for (_, d, k) in configurations() {
        let cl = Classifier::new(&d, &k);
        for a in cl.generic_indices(3, true) {
            let args = argument_keys(&cl, &a).unwrap();
            assert_eq!(args.len(), d.closed_subgraphs().len());
            let set: BTreeSet<_> = args.into_iter().collect();
            let expected: BTreeSet<_> = cl.restr_class_keys(&a).unwrap().into_iter().collect();
            assert_eq!(set, expected);
        }
    }
}

#[test]
fn equivalent_entries_draw_the_same_uniforms() {
    for (_, d, k) in configurations() {
        let cl = Classifier::new(&d, &k);
        let all = cl.generic_indices(3, true);
        for a in &all {
            for b in &all {
                if cl.class_key(a).unwrap() == cl.class_key(b).unwrap() {
                    let mut ka = argument_keys(&cl, a).unwrap();
                    let mut kb = argument_keys(&cl, b).unwrap();
                    ka.sort();
                    kb.sort();
                    assert_eq!(ka, kb);
                }
            }
        }
    }
}

#[test]
fn symmetric_f_is_constant_on_classes() {
    // Sorting the arguments makes f blind to slot order, so merged entries coincide.
    let sorted_mix = FSpec::User(Arc::new(|u: &[f64]| {
        let mut v = u.to_vec();
        v.sort_by(f64::total_cmp);
        FSpec::Mix.eval(&v)
    }));
    for (_, d, k) in configurations() {
        let Ok(b) = generate_array(&spec(&d, &k, 3, sorted_mix.clone(), 5)) else {
            continue;
        };
        let cl = Classifier::new(&d, &k);
        for (a, x) in &b.entries {
            let rep = cl.class_key(a).unwrap().into_rep();
            assert_eq!(b.entries[&rep], *x);
        }
    }
}

#[test]
fn cascade_unrolls_to_the_flat_form() {
    let pass = FSpec::User(Arc::new(|u: &[f64]| *u.last().unwrap()));
    for d in [single(), pair(), block_matrix(), ap()] {
        let k = Clic::trivial(&d);
        let s = spec(&d, &k, 2, FSpec::Mix, 8);
        let mut levels = vec![pass.clone(); d.len()];
        levels.push(FSpec::Mix);
        let cascade = generate_cascade(&s, &levels).unwrap();
        let flat = generate_array(&s).unwrap();
        assert_eq!(cascade.entries, flat.entries);
    }
}

#[test]
fn cascade_latents_follow_the_lower_classes() {
    let d = block_matrix();
    let clics = enumerate_clics(&d, 20).unwrap();
    // Case 1 merges u with v only.
    let k = clics.iter().find(|k| k.members().len() == 8).unwrap();
    let cl = Classifier::new(&d, k);
    let uv = d.set_from_labels(&["u", "v"]).unwrap();
    let a = Index::from_parts(uv, vec![0, 1]);
    assert_eq!(cl.restr_prime_class_keys(&a).unwrap().len(), 3);

    let s = spec(&d, k, 3, FSpec::Mix, 3);
    let levels = vec![FSpec::Mix; d.len() + 1];
    let b = generate_cascade(&s, &levels).unwrap();
    let empty = cl.class_key(&Index::empty()).unwrap();
    assert_eq!(
        b.latents[&empty],
        FSpec::Mix.eval(&[uniform_for(3, &d, &empty)])
    );
    for a in b.entries.keys() {
        assert_eq!(b.entries[a], b.latents[&cl.class_key(a).unwrap()]);
    }
}
