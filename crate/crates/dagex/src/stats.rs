//! Monte Carlo checks of distributional invariance and conditional
//! independence for the generative model, and an exact check that a
//! permutation respects index classes.
//!
//! Replicates run in parallel, but per-replicate results are collected in
//! replicate order and summed with compensation, so reports do not depend
//! on the thread count.

use std::collections::BTreeMap;

use dagex_core::perm::is_k_commuting;
use dagex_core::sampler::{argument_keys, key_code, uniform_from_code};
use dagex_core::{Classifier, Clic, Dag, Error, FSpec, GPermutation, Index, Result, SampleSpec};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::formats::{Real, TestReport};

/// A bounded function of the array values at a pattern of indices.
pub type Statistic = dyn Fn(&[f64]) -> f64 + Sync;

/// Product of the pattern values: the identity for a single index.
pub fn product(x: &[f64]) -> f64 {
    x.iter().product()
}

/// One independent seed per replicate, drawn from a ChaCha stream.
pub fn replicate_seeds(base: u64, n: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(base);
    (0..n).map(|_| rng.next_u64()).collect()
}

/// Neumaier-compensated sum.
pub fn compensated_sum(xs: impl IntoIterator<Item = f64>) -> f64 {
    let (mut sum, mut c) = (0.0f64, 0.0f64);
    for x in xs {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            c += (sum - t) + x;
        } else {
            c += (x - t) + sum;
        }
        sum = t;
    }
    sum + c
}

fn mean(xs: &[f64]) -> f64 {
    compensated_sum(xs.iter().copied()) / xs.len() as f64
}

/// Sample standard deviation.
fn sd(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    (compensated_sum(xs.iter().map(|x| (x - m) * (x - m))) / (xs.len() - 1) as f64).sqrt()
}

/// Key codes of every argument slot of one entry.
fn codes(cl: &Classifier<'_>, a: &Index) -> Result<Vec<Vec<u8>>> {
    Ok(argument_keys(cl, a)?
        .iter()
        .map(|k| key_code(cl.dag(), k))
        .collect())
}

fn value(f: &FSpec, codes: &[Vec<u8>], uniform: impl Fn(&[u8]) -> f64) -> f64 {
    let u: Vec<f64> = codes.iter().map(|c| uniform(c)).collect();
    f.eval(&u)
}

fn require_in_box(spec: &SampleSpec, cl: &Classifier<'_>, a: &Index) -> Result<()> {
    if a.dom() != spec.dag.all() || !cl.is_generic(a) {
        return Err(Error::NotGeneric);
    }
    if a.max_value().is_some_and(|m| m >= u64::from(spec.size)) {
        return Err(Error::ImageOutsideBox);
    }
    Ok(())
}

/// Compares `g` at `pattern` with `g` at `τ·pattern`, paired over
/// replicates.
pub fn invariance_test(
    spec: &SampleSpec,
    tau: &GPermutation,
    pattern: &[Index],
    g: &Statistic,
    n: usize,
) -> Result<TestReport> {
    if !is_k_commuting(&spec.dag, &spec.clic, tau, spec.size.max(tau.size())) {
        return Err(Error::NotKCommuting);
    }
    invariance_test_unchecked(spec, tau, pattern, g, n)
}

/// [`invariance_test`] without the commutation guard, for negative
/// controls.
pub fn invariance_test_unchecked(
    spec: &SampleSpec,
    tau: &GPermutation,
    pattern: &[Index],
    g: &Statistic,
    n: usize,
) -> Result<TestReport> {
    spec.validate()?;
    let cl = Classifier::new(&spec.dag, &spec.clic);
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for a in pattern {
        require_in_box(spec, &cl, a)?;
        let image = tau
            .apply(&spec.dag, a)
            .map_err(|_| Error::ImageOutsideBox)?;
        require_in_box(spec, &cl, &image).map_err(|_| Error::ImageOutsideBox)?;
        lhs.push(codes(&cl, a)?);
        rhs.push(codes(&cl, &image)?);
    }
    let diffs: Vec<f64> = replicate_seeds(spec.seed, n)
        .into_par_iter()
        .map(|s| {
            let eval = |side: &[Vec<Vec<u8>>]| -> f64 {
                let x: Vec<f64> = side
                    .iter()
                    .map(|c| value(&spec.f, c, |code| uniform_from_code(s, code)))
                    .collect();
                g(&x)
            };
            eval(&lhs) - eval(&rhs)
        })
        .collect();
    let stat = mean(&diffs);
    let tol = 4.0 * sd(&diffs) / (n as f64).sqrt();
    Ok(TestReport {
        test: "invariance".into(),
        stat: Real(stat),
        tol: Real(tol),
        pass: stat.abs() <= tol,
        n,
        seeds: vec![spec.seed],
        error: None,
    })
}

/// Pearson correlation; zero when either side is constant.
pub fn correlation(x: &[f64], y: &[f64]) -> f64 {
    let (mx, my) = (mean(x), mean(y));
    let sxy = compensated_sum(x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)));
    let sxx = compensated_sum(x.iter().map(|a| (a - mx) * (a - mx)));
    let syy = compensated_sum(y.iter().map(|b| (b - my) * (b - my)));
    if sxx == 0.0 || syy == 0.0 {
        0.0
    } else {
        sxy / (sxx * syy).sqrt()
    }
}

/// Freezes the uniforms of the classes shared by `α` and `β` (drawn under
/// `spec.seed`) and redraws every other uniform per replicate; reports the
/// correlation of `X_α` and `X_β`.
pub fn cond_indep_test(spec: &SampleSpec, a: &Index, b: &Index, n: usize) -> Result<TestReport> {
    spec.validate()?;
    let cl = Classifier::new(&spec.dag, &spec.clic);
    for x in [a, b] {
        if x.dom() != spec.dag.all() || !cl.is_generic(x) {
            return Err(Error::NotGeneric);
        }
    }
    if cl.class_key(a)? == cl.class_key(b)? {
        return Err(Error::SameClass);
    }
    let keys_a = cl.restr_class_keys(a)?;
    let shared: Vec<Vec<u8>> = cl
        .restr_class_keys(b)?
        .iter()
        .filter(|k| keys_a.binary_search(k).is_ok())
        .map(|k| key_code(&spec.dag, k))
        .collect();
    let (ca, cb) = (codes(&cl, a)?, codes(&cl, b)?);
    let pairs: Vec<(f64, f64)> = replicate_seeds(spec.seed, n)
        .into_par_iter()
        .map(|s| {
            let u = |code: &[u8]| {
                let frozen = shared.iter().any(|c| c.as_slice() == code);
                uniform_from_code(if frozen { spec.seed } else { s }, code)
            };
            (value(&spec.f, &ca, u), value(&spec.f, &cb, u))
        })
        .collect();
    let (xs, ys): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    let stat = correlation(&xs, &ys);
    let tol = 4.0 / (n as f64).sqrt();
    Ok(TestReport {
        test: "cond_indep".into(),
        stat: Real(stat),
        tol: Real(tol),
        pass: stat.abs() <= tol,
        n,
        seeds: vec![spec.seed],
        error: None,
    })
}

/// Number of class-structure violations of `τ` over every generic index
/// in the box: non-generic images, and failures of `[τα]` to be a
/// well-defined injective function of `[α]`.
pub fn equivariance_violations(
    dag: &Dag,
    clic: &Clic,
    tau: &GPermutation,
    size: u32,
) -> Result<usize> {
    if !is_k_commuting(dag, clic, tau, size) {
        return Err(Error::NotKCommuting);
    }
    let cl = Classifier::new(dag, clic);
    let mut fwd = BTreeMap::new();
    let mut back = BTreeMap::new();
    let mut bad = 0;
    for a in cl.generic_indices(u64::from(size), false) {
        let image = tau.apply(dag, &a)?;
        if !cl.is_generic(&image) {
            bad += 1;
            continue;
        }
        let (ka, kt) = (cl.class_key(&a)?, cl.class_key(&image)?);
        if *fwd.entry(ka.clone()).or_insert_with(|| kt.clone()) != kt {
            bad += 1;
        }
        if *back.entry(kt).or_insert(ka.clone()) != ka {
            bad += 1;
        }
    }
    Ok(bad)
}

pub fn equivariance_check(dag: &Dag, clic: &Clic, tau: &GPermutation, size: u32) -> Result<bool> {
    Ok(equivariance_violations(dag, clic, tau, size)? == 0)
}

pub fn equivariance_report(
    dag: &Dag,
    clic: &Clic,
    tau: &GPermutation,
    size: u32,
    seed: u64,
) -> Result<TestReport> {
    let bad = equivariance_violations(dag, clic, tau, size)?;
    Ok(TestReport {
        test: "equivariance".into(),
        stat: Real(bad as f64),
        tol: Real(0.0),
        pass: bad == 0,
        n: Classifier::new(dag, clic)
            .generic_indices(u64::from(size), false)
            .len(),
        seeds: vec![seed],
        error: None,
    })
}
