//! Class-keyed generative sampler: uniforms drawn from a keyed PRF, a
//! plug-in `f`, flat and cascade materialization, and pushforward along a
//! K-commuting permutation.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use sha2::{Digest, Sha256};

use crate::clic::Clic;
use crate::dag::Dag;
use crate::error::{Error, Result};
use crate::index::{ClassKey, Classifier, Index};
use crate::perm::{is_k_commuting, GPermutation};

/// Canonical byte encoding of a class key: domain labels, then
/// `(label, value)` pairs, all length-prefixed little-endian.
pub fn key_code(dag: &Dag, key: &ClassKey) -> Vec<u8> {
    let rep = key.rep();
    let mut out = Vec::new();
    let put_label = |out: &mut Vec<u8>, l: &str| {
        out.extend_from_slice(&(l.len() as u32).to_le_bytes());
        out.extend_from_slice(l.as_bytes());
    };
    out.extend_from_slice(&(rep.len() as u32).to_le_bytes());
    for v in rep.dom().iter() {
        put_label(&mut out, dag.label(v));
    }
    out.extend_from_slice(&(rep.len() as u32).to_le_bytes());
    for (v, x) in rep.iter() {
        put_label(&mut out, dag.label(v));
        out.extend_from_slice(&x.to_le_bytes());
    }
    out
}

/// Uniform on `[0,1)` keyed by `(seed, code)`: the top 53 bits of
/// SHA-256 over the seed followed by the code.
pub fn uniform_from_code(seed: u64, code: &[u8]) -> f64 {
    let digest = Sha256::new()
        .chain_update(seed.to_le_bytes())
        .chain_update(code)
        .finalize();
    let mut head = [0u8; 8];
    head.copy_from_slice(&digest[..8]);
    (u64::from_le_bytes(head) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

pub fn uniform_for(seed: u64, dag: &Dag, key: &ClassKey) -> f64 {
    uniform_from_code(seed, &key_code(dag, key))
}

type UserFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A deterministic map `[0,1]^m → ℝ`.
#[derive(Clone)]
pub enum FSpec {
    /// Avalanche hash of the whole tuple, scaled to `[0,1)`.
    Mix,
    /// `Σ wᵢuᵢ mod 1`; unit weights when `None`.
    Affine(Option<Vec<f64>>),
    /// `1{(mean(u₁..u_{m-1}) + u_m)/2 < level}`, or `1{u₁ < level}` for a
    /// single argument.
    Threshold(f64),
    User(UserFn),
}

impl fmt::Debug for FSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FSpec::Mix => f.write_str("Mix"),
            FSpec::Affine(w) => f.debug_tuple("Affine").field(w).finish(),
            FSpec::Threshold(l) => f.debug_tuple("Threshold").field(l).finish(),
            FSpec::User(_) => f.write_str("User(..)"),
        }
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn frac(x: f64) -> f64 {
    // Arguments are finite and non-negative here.
    x - (x as u64) as f64
}

impl FSpec {
    pub fn name(&self) -> &'static str {
        match self {
            FSpec::Mix => "mix",
            FSpec::Affine(_) => "affine",
            FSpec::Threshold(_) => "threshold",
            FSpec::User(_) => "user",
        }
    }

    /// Rejects parameters that cannot take `arity` arguments.
    pub fn check(&self, arity: usize) -> Result<()> {
        match self {
            FSpec::Affine(Some(w)) if w.len() != arity => Err(Error::InvalidSpec(format!(
                "affine weights have length {} but f takes {arity} arguments",
                w.len()
            ))),
            FSpec::Affine(Some(w)) if w.iter().any(|x| !(0.0..=1.0).contains(x)) => Err(
                Error::InvalidSpec("affine weights must lie in [0,1]".into()),
            ),
            FSpec::Threshold(l) if !(0.0..=1.0).contains(l) => Err(Error::InvalidSpec(
                "threshold level must lie in [0,1]".into(),
            )),
            _ => Ok(()),
        }
    }

    pub fn eval(&self, u: &[f64]) -> f64 {
        match self {
            FSpec::Mix => {
                let h = u
                    .iter()
                    .fold(u.len() as u64, |h, x| splitmix(h ^ x.to_bits()));
                (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
            }
            FSpec::Affine(w) => {
                let s: f64 = match w {
                    Some(w) => u.iter().zip(w).map(|(a, b)| a * b).sum(),
                    None => u.iter().sum(),
                };
                frac(s)
            }
            FSpec::Threshold(level) => {
                let score = match u.split_last() {
                    None => 0.0,
                    Some((last, [])) => *last,
                    Some((last, rest)) => {
                        (rest.iter().sum::<f64>() / rest.len() as f64 + last) / 2.0
                    }
                };
                if score < *level {
                    1.0
                } else {
                    0.0
                }
            }
            FSpec::User(g) => g(u),
        }
    }
}

/// Everything needed to materialize one array.
#[derive(Clone, Debug)]
pub struct SampleSpec {
    pub dag: Dag,
    pub clic: Clic,
    pub size: u32,
    pub f: FSpec,
    pub seed: u64,
}

impl SampleSpec {
    /// `|A_G|`, the arity of `f`.
    pub fn arity(&self) -> usize {
        self.dag.closed_subgraphs().len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.size == 0 {
            return Err(Error::InvalidSpec("box size must be at least 1".into()));
        }
        self.f.check(self.arity())
    }
}

/// A materialized array together with the uniforms (and cascade latents)
/// it consumed.
#[derive(Clone, Debug)]
pub struct ArrayBundle {
    pub spec: SampleSpec,
    pub entries: BTreeMap<Index, f64>,
    pub uniforms: BTreeMap<ClassKey, f64>,
    pub latents: BTreeMap<ClassKey, f64>,
}

/// Class keys of `α|_C` for every `C` in the lattice order, i.e. the key
/// of each argument slot of `f` for a full index `α`.
pub fn argument_keys(classes: &Classifier<'_>, alpha: &Index) -> Result<Vec<ClassKey>> {
    let dag = classes.dag();
    if alpha.dom() != dag.all() {
        return Err(Error::NotSubset);
    }
    if !classes.is_generic(alpha) {
        return Err(Error::NotGeneric);
    }
    dag.closed_subgraphs()
        .into_iter()
        .map(|c| classes.class_key(&alpha.restrict_to(c)))
        .collect()
}

/// Full generic indices of the box, or [`Error::EmptyIndexSet`].
pub fn box_indices(classes: &Classifier<'_>, size: u32) -> Result<Vec<Index>> {
    let all = classes.generic_indices(u64::from(size), true);
    if all.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    Ok(all)
}

/// `X_α = f(U_{[α|_C]} : C ∈ A_G)` over the box.
pub fn generate_array(spec: &SampleSpec) -> Result<ArrayBundle> {
    spec.validate()?;
    let classes = Classifier::new(&spec.dag, &spec.clic);
    let mut uniforms = BTreeMap::new();
    let mut entries = BTreeMap::new();
    for alpha in box_indices(&classes, spec.size)? {
        let args = argument_keys(&classes, &alpha)?
            .into_iter()
            .map(|k| {
                *uniforms
                    .entry(k)
                    .or_insert_with_key(|k| uniform_for(spec.seed, &spec.dag, k))
            })
            .collect::<Vec<_>>();
        entries.insert(alpha, spec.f.eval(&args));
    }
    Ok(ArrayBundle {
        spec: spec.clone(),
        entries,
        uniforms,
        latents: BTreeMap::new(),
    })
}

/// Latents built level by level: `S_γ = f_{|Dom γ|}(S over Restr'(γ),
/// U_γ)` and `X_α = S_{γ_α}`, so the top-level function plays the role of
/// the output map.
///
/// `levels[d]` is used for keys with `d` vertices; `spec.f` is ignored.
pub fn generate_cascade(spec: &SampleSpec, levels: &[FSpec]) -> Result<ArrayBundle> {
    if levels.len() != spec.dag.len() + 1 {
        return Err(Error::InvalidSpec(format!(
            "cascade needs {} level functions, got {}",
            spec.dag.len() + 1,
            levels.len()
        )));
    }
    if spec.size == 0 {
        return Err(Error::InvalidSpec("box size must be at least 1".into()));
    }
    let classes = Classifier::new(&spec.dag, &spec.clic);
    let indices = box_indices(&classes, spec.size)?;

    let mut needed = alloc::collections::BTreeSet::new();
    for alpha in &indices {
        needed.extend(classes.restr_class_keys(alpha)?);
    }
    let mut order: Vec<ClassKey> = needed.into_iter().collect();
    order.sort_by_key(|k| k.rep().len());

    let mut uniforms = BTreeMap::new();
    let mut latents: BTreeMap<ClassKey, f64> = BTreeMap::new();
    for key in order {
        let mut args = classes
            .restr_prime_class_keys(key.rep())?
            .iter()
            .map(|k| latents[k])
            .collect::<Vec<_>>();
        let u = uniform_for(spec.seed, &spec.dag, &key);
        args.push(u);
        let f = &levels[key.rep().len()];
        f.check(args.len())?;
        uniforms.insert(key.clone(), u);
        latents.insert(key, f.eval(&args));
    }
    let entries = indices
        .into_iter()
        .map(|a| {
            let k = classes.class_key(&a)?;
            Ok((a, latents[&k]))
        })
        .collect::<Result<_>>()?;
    Ok(ArrayBundle {
        spec: spec.clone(),
        entries,
        uniforms,
        latents,
    })
}

/// `(X_{τα})_α`.
pub fn pushforward(bundle: &ArrayBundle, tau: &GPermutation) -> Result<ArrayBundle> {
    let spec = &bundle.spec;
    if !is_k_commuting(&spec.dag, &spec.clic, tau, spec.size.max(tau.size())) {
        return Err(Error::NotKCommuting);
    }
    let entries = bundle
        .entries
        .keys()
        .map(|a| {
            let image = tau
                .apply(&spec.dag, a)
                .map_err(|_| Error::ImageOutsideBox)?;
            let x = *bundle.entries.get(&image).ok_or(Error::ImageOutsideBox)?;
            Ok((a.clone(), x))
        })
        .collect::<Result<_>>()?;
    Ok(ArrayBundle {
        entries,
        ..bundle.clone()
    })
}
