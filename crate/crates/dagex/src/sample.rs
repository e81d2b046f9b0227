//! Parallel materialization of an array, identical to the sequential
//! sampler for any thread count.

use std::collections::BTreeMap;

use dagex_core::sampler::{argument_keys, box_indices, uniform_for};
use dagex_core::{ArrayBundle, ClassKey, Classifier, Index, Result, SampleSpec};
use rayon::prelude::*;

/// One entry with the uniforms it drew.
type Row = (Index, Vec<(ClassKey, f64)>, f64);

pub fn generate_array(spec: &SampleSpec) -> Result<ArrayBundle> {
    spec.validate()?;
    let indices = box_indices(&Classifier::new(&spec.dag, &spec.clic), spec.size)?;
    let rows: Vec<Row> = indices
        .into_par_iter()
        .map_init(
            || Classifier::new(&spec.dag, &spec.clic),
            |cl, a| {
                let args: Vec<(ClassKey, f64)> = argument_keys(cl, &a)?
                    .into_iter()
                    .map(|k| {
                        let u = uniform_for(spec.seed, &spec.dag, &k);
                        (k, u)
                    })
                    .collect();
                let u: Vec<f64> = args.iter().map(|(_, u)| *u).collect();
                let x = spec.f.eval(&u);
                Ok((a, args, x))
            },
        )
        .collect::<Result<_>>()?;
    let mut entries = BTreeMap::new();
    let mut uniforms = BTreeMap::new();
    for (a, args, x) in rows {
        uniforms.extend(args);
        entries.insert(a, x);
    }
    Ok(ArrayBundle {
        spec: spec.clone(),
        entries,
        uniforms,
        latents: BTreeMap::new(),
    })
}
