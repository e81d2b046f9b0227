//! Finitary hierarchical permutations, K-commutation, and the
//! anchor-fixing shift injection `ρ_α`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::clic::{Clic, LocalIso};
use crate::dag::{Dag, Vertex, VertexSet};
use crate::error::{Error, Result};
use crate::index::{indices_on, ClassKey, Classifier, Index};

/// Anything that maps indices to indices domain-preservingly.
pub trait IndexAction {
    fn act(&self, alpha: &Index) -> Result<Index>;
}

/// A finitary G-permutation over the value box `{0..size-1}`.
///
/// The value at `v` is `π_{v,ctx}(α(v))` with `ctx = α|_{C_v∖{v}}`. Contexts
/// without a stored table act as the identity, so the permutation is total on
/// unbounded indices and preserves restrictions by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GPermutation {
    size: u32,
    tables: Vec<BTreeMap<Index, Vec<u32>>>,
    labels: Vec<alloc::string::String>,
}

impl GPermutation {
    pub fn identity(dag: &Dag, size: u32) -> GPermutation {
        GPermutation {
            size,
            tables: alloc::vec![BTreeMap::new(); dag.len()],
            labels: dag.labels().to_vec(),
        }
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    /// Stores `perm` for vertex `v` under context `ctx` (an index on
    /// `C_v ∖ {v}`).
    pub fn set_table(&mut self, dag: &Dag, v: Vertex, ctx: Index, perm: Vec<u32>) -> Result<()> {
        if ctx.dom() != dag.strictly_below(v) {
            return Err(Error::InvalidPermutation(format!(
                "context for `{}` must cover exactly its strict predecessors",
                dag.label(v)
            )));
        }
        let mut seen = alloc::vec![false; self.size as usize];
        if perm.len() != self.size as usize
            || perm
                .iter()
                .any(|&x| x >= self.size || core::mem::replace(&mut seen[x as usize], true))
        {
            return Err(Error::InvalidPermutation(format!(
                "table at `{}` is not a permutation of 0..{}",
                dag.label(v),
                self.size
            )));
        }
        self.tables[v].insert(ctx, perm);
        Ok(())
    }

    pub fn table(&self, v: Vertex, ctx: &Index) -> Option<&[u32]> {
        self.tables[v].get(ctx).map(Vec::as_slice)
    }

    /// Stored `(vertex, context, permutation)` triples in canonical order.
    pub fn tables(&self) -> impl Iterator<Item = (Vertex, &Index, &[u32])> {
        self.tables
            .iter()
            .enumerate()
            .flat_map(|(v, t)| t.iter().map(move |(c, p)| (v, c, p.as_slice())))
    }

    fn eval(&self, dag: &Dag, v: Vertex, alpha: &Index) -> Result<u64> {
        let x = alpha.get(v).expect("vertex in domain");
        let ctx = alpha.restrict_to(dag.strictly_below(v));
        match self.tables[v].get(&ctx) {
            None => Ok(x),
            Some(p) if x < u64::from(self.size) => Ok(u64::from(p[x as usize])),
            Some(p) if p.iter().enumerate().all(|(i, &y)| i as u32 == y) => Ok(x),
            Some(_) => Err(Error::ValueOutOfBox {
                vertex: dag.label(v).to_string(),
                value: x,
                size: self.size,
            }),
        }
    }

    /// `τ(α)`, evaluated vertex by vertex.
    pub fn apply(&self, dag: &Dag, alpha: &Index) -> Result<Index> {
        let vals = alpha
            .dom()
            .iter()
            .map(|v| self.eval(dag, v, alpha))
            .collect::<Result<Vec<_>>>()?;
        Ok(Index::from_parts(alpha.dom(), vals))
    }

    /// `τ(α) = α`.
    pub fn fixes(&self, dag: &Dag, alpha: &Index) -> Result<bool> {
        Ok(self.apply(dag, alpha)? == *alpha)
    }

    /// Binds the permutation to its DAG as an [`IndexAction`].
    pub fn on<'a>(&'a self, dag: &'a Dag) -> impl IndexAction + 'a {
        Bound { perm: self, dag }
    }
}

struct Bound<'a> {
    perm: &'a GPermutation,
    dag: &'a Dag,
}

impl IndexAction for Bound<'_> {
    fn act(&self, alpha: &Index) -> Result<Index> {
        self.perm.apply(self.dag, alpha)
    }
}

/// Checks `α|_C = β|_C ⟺ τ(α)|_C = τ(β)|_C` for every closed `C` and every
/// pair drawn from `indices` (which must all have domain `V`).
///
/// Per closed set the check is that `α|_C ↦ τ(α)|_C` is well defined and
/// injective, which is the biconditional over all pairs.
pub fn consistent_on(dag: &Dag, action: &impl IndexAction, indices: &[Index]) -> bool {
    let images: Vec<Index> = match indices.iter().map(|a| action.act(a)).collect::<Result<_>>() {
        Ok(v) => v,
        Err(_) => return false,
    };
    dag.closed_subgraphs().into_iter().all(|c| {
        let mut fwd: BTreeMap<Index, Index> = BTreeMap::new();
        let mut back: BTreeMap<Index, Index> = BTreeMap::new();
        indices.iter().zip(&images).all(|(a, t)| {
            let (a, t) = (a.restrict_to(c), t.restrict_to(c));
            let f = fwd.entry(a.clone()).or_insert_with(|| t.clone()).clone();
            let b = back.entry(t.clone()).or_insert(a.clone()).clone();
            f == t && b == a
        })
    })
}

/// Exhaustive check of the G-permutation law over all full indices with
/// values below `size`.
pub fn verify_local_consistency(dag: &Dag, action: &impl IndexAction, size: u32) -> bool {
    let all: Vec<Index> = indices_on(dag.all(), u64::from(size)).collect();
    consistent_on(dag, action, &all)
}

/// `τ ∘ κ(β) = κ ∘ τ(β)` for every vertex `v`, every generic `β` on `C_v`
/// with values below `size`, and every member `κ` at `v`.
pub fn is_k_commuting(dag: &Dag, clic: &Clic, tau: &GPermutation, size: u32) -> bool {
    dag.vertices().all(|v| {
        indices_on(dag.closure(v), u64::from(size))
            .filter(|b| crate::index::is_generic(clic, b))
            .all(|b| {
                clic.at(v).all(
                    |k| match (tau.apply(dag, &b.transport(k)), tau.apply(dag, &b)) {
                        (Ok(lhs), Ok(tb)) => lhs == tb.transport(k),
                        _ => false,
                    },
                )
            })
    })
}

/// Transports a context on `C_v ∖ {v}` along `κ: C_v → C_w`.
fn transport_context(k: &LocalIso, ctx: &Index) -> Index {
    let dst = k.dst().without(k.dst_apex());
    let mut vals = alloc::vec![0; dst.len()];
    for (x, y) in k.pairs() {
        if let Some(val) = ctx.get(x) {
            vals[dst.rank(y)] = val;
        }
    }
    Index::from_parts(dst, vals)
}

/// A random K-commuting permutation of the box.
///
/// Pointed contexts `(v, ctx)` are grouped into classes under transport by
/// CLIC members; each class receives one uniform permutation drawn from a
/// ChaCha stream seeded with `seed`, in canonical class order.
pub fn random_k_commuting(dag: &Dag, clic: &Clic, size: u32, seed: u64) -> GPermutation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tau = GPermutation::identity(dag, size);
    for v in dag.vertices() {
        for ctx in indices_on(dag.strictly_below(v), u64::from(size)) {
            if tau.tables[v].contains_key(&ctx) {
                continue;
            }
            let mut perm: Vec<u32> = (0..size).collect();
            perm.shuffle(&mut rng);
            for k in clic.at(v) {
                tau.tables[k.dst_apex()]
                    .entry(transport_context(k, &ctx))
                    .or_insert_with(|| perm.clone());
            }
        }
    }
    tau
}

/// `τ_B`: fixes members of `B`, sends any other `m` to the least
/// `k > m` outside `B`.
pub fn tau_shift(b: &BTreeSet<u64>, m: u64) -> u64 {
    if b.contains(&m) {
        return m;
    }
    let mut k = m + 1;
    while b.contains(&k) {
        k += 1;
    }
    k
}

/// `ρ_α`: the injection of generic indices that fixes the restrictions of
/// its anchor `α` and shifts everything else upward.
pub struct ShiftInjection<'a> {
    classes: &'a Classifier<'a>,
    anchor: Index,
    /// `A_α(w)` for each vertex `w`.
    fixed_values: Vec<BTreeSet<u64>>,
}

impl<'a> ShiftInjection<'a> {
    /// `anchor` must be a generic index on the whole vertex set.
    pub fn new(classes: &'a Classifier<'a>, anchor: Index) -> Result<Self> {
        let dag = classes.dag();
        if anchor.dom() != dag.all() || !classes.is_generic(&anchor) {
            return Err(Error::NotGeneric);
        }
        let clic = classes.clic();
        let fixed_values = dag
            .vertices()
            .map(|w| {
                clic.vertex_class(w)
                    .iter()
                    .filter(|&x| dag.strictly_below(x) == dag.strictly_below(w))
                    .map(|x| anchor.get(x).expect("full anchor"))
                    .collect()
            })
            .collect();
        Ok(ShiftInjection {
            classes,
            anchor,
            fixed_values,
        })
    }

    pub fn anchor(&self) -> &Index {
        &self.anchor
    }

    /// `A_α(w)`.
    pub fn fixed_values(&self, w: Vertex) -> &BTreeSet<u64> {
        &self.fixed_values[w]
    }

    /// The anchor vertex whose stripped closure matches that of `β` at `v`
    /// under some member at `v`, if any.
    fn matching_vertex(&self, beta: &Index, v: Vertex) -> Option<Vertex> {
        let mut found = None;
        for k in self.classes.clic().at(v) {
            let ok = k
                .pairs()
                .all(|(y, ky)| y == v || beta.get(y) == self.anchor.get(ky));
            if ok {
                let w = k.dst_apex();
                match found {
                    None => found = Some(w),
                    Some(prev) => debug_assert_eq!(
                        self.fixed_values[prev], self.fixed_values[w],
                        "matched anchor vertices share a bucket"
                    ),
                }
            }
        }
        found
    }

    /// `ρ_α(β)`.
    pub fn apply(&self, beta: &Index) -> Result<Index> {
        if !self.classes.is_generic(beta) {
            return Err(Error::NotGeneric);
        }
        Ok(self.apply_unchecked(beta))
    }

    fn apply_unchecked(&self, beta: &Index) -> Index {
        let vals = beta
            .iter()
            .map(|(v, x)| match self.matching_vertex(beta, v) {
                Some(w) => tau_shift(&self.fixed_values[w], x),
                None => x + 1,
            })
            .collect();
        Index::from_parts(beta.dom(), vals)
    }

    /// `ρ_α^j(β)`.
    pub fn apply_power(&self, beta: &Index, j: usize) -> Result<Index> {
        let mut cur = self.apply(beta)?;
        for _ in 1..j {
            cur = self.apply_unchecked(&cur);
        }
        if j == 0 {
            cur = beta.clone();
        }
        Ok(cur)
    }

    /// `ρ_α(β)` through the three-case description, using class keys:
    /// restrictions already in `Restr(α, K)` stay, a matching context bumps
    /// the value by the least `ℓ` that leaves `Restr(α, K)`, and anything
    /// else moves up by one.
    pub fn apply_by_cases(&self, beta: &Index, anchor_keys: &[ClassKey]) -> Result<Index> {
        let dag = self.classes.dag();
        let clic = self.classes.clic();
        let mut vals = Vec::with_capacity(beta.len());
        for (v, x) in beta.iter() {
            let local = beta.restrict_to(dag.closure(v));
            if self.classes.in_restr(&local, anchor_keys)? {
                vals.push(x);
                continue;
            }
            let ctx = beta.restrict_to(dag.strictly_below(v));
            let mut matched = false;
            for w in dag.vertices() {
                if !clic.vertex_equiv(v, w) {
                    continue;
                }
                let actx = self.anchor.restrict_to(dag.strictly_below(w));
                if self.classes.index_equiv(&ctx, &actx)? {
                    matched = true;
                    break;
                }
            }
            if matched {
                let mut l = 1;
                while self
                    .classes
                    .in_restr(&local.with_value(v, x + l), anchor_keys)?
                {
                    l += 1;
                }
                vals.push(x + l);
            } else {
                vals.push(x + 1);
            }
        }
        Ok(Index::from_parts(beta.dom(), vals))
    }
}

impl IndexAction for ShiftInjection<'_> {
    fn act(&self, alpha: &Index) -> Result<Index> {
        self.apply(alpha)
    }
}

/// Uncached `ρ_α(β)`.
pub fn rho_apply(dag: &Dag, clic: &Clic, anchor: &Index, beta: &Index) -> Result<Index> {
    let classes = Classifier::new(dag, clic);
    ShiftInjection::new(&classes, anchor.clone())?.apply(beta)
}

/// Vertices of `dom` on which two indices agree.
pub fn agreement(a: &Index, b: &Index) -> VertexSet {
    a.iter()
        .filter(|&(v, x)| b.get(v) == Some(x))
        .map(|(v, _)| v)
        .collect()
}
