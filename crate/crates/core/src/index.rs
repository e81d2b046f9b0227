//! Indices over closed vertex sets, genericity, the equivalence `∼K`, and
//! canonical class representatives.
//!
//! For a generic index `α`, an equivalent index is always a relabeling
//! `α ∘ φ⁻¹` where `φ` restricts to a CLIC member on every closure `C_v` of
//! the domain. Orbits are enumerated that way and the canonical key is the
//! orbit minimum under (domain well-order, value vector).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use crate::clic::{Clic, LocalIso};
use crate::dag::{Dag, Vertex, VertexSet};
use crate::error::{Error, Result};

/// A map from a closed vertex set to the naturals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Index {
    dom: VertexSet,
    /// Values of the domain members, in vertex order.
    vals: Vec<u64>,
}

impl fmt::Debug for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter()).finish()
    }
}

impl Index {
    pub fn empty() -> Index {
        Index::default()
    }

    /// Builds an index from `(vertex, value)` pairs; the domain must be
    /// closed in `dag`.
    pub fn new(dag: &Dag, pairs: &[(Vertex, u64)]) -> Result<Index> {
        let map: BTreeMap<Vertex, u64> = pairs.iter().copied().collect();
        let dom = VertexSet::from_vertices(map.keys().copied());
        if map.len() != pairs.len() || map.keys().any(|&v| v >= dag.len()) {
            return Err(Error::NotSubset);
        }
        if !dag.is_closed(dom) {
            return Err(Error::NotClosed);
        }
        Ok(Index {
            dom,
            vals: map.into_values().collect(),
        })
    }

    /// Builds an index from values listed in vertex order of `dom`.
    ///
    /// The caller guarantees that `dom` is closed.
    pub fn from_parts(dom: VertexSet, vals: Vec<u64>) -> Index {
        assert_eq!(dom.len(), vals.len(), "one value per domain member");
        Index { dom, vals }
    }

    /// Labelled construction, mostly for tests and fixtures.
    pub fn from_labels(dag: &Dag, pairs: &[(&str, u64)]) -> Result<Index> {
        let p = pairs
            .iter()
            .map(|&(l, x)| Ok((dag.vertex(l)?, x)))
            .collect::<Result<Vec<_>>>()?;
        Index::new(dag, &p)
    }

    pub fn dom(&self) -> VertexSet {
        self.dom
    }

    pub fn values(&self) -> &[u64] {
        &self.vals
    }

    pub fn len(&self) -> usize {
        self.vals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vals.is_empty()
    }

    pub fn get(&self, v: Vertex) -> Option<u64> {
        self.dom.contains(v).then(|| self.vals[self.dom.rank(v)])
    }

    /// `(vertex, value)` pairs in vertex order.
    pub fn iter(&self) -> impl Iterator<Item = (Vertex, u64)> + '_ {
        self.dom.iter().zip(self.vals.iter().copied())
    }

    pub fn max_value(&self) -> Option<u64> {
        self.vals.iter().copied().max()
    }

    /// `α|_C`, checking that `C` is a closed subset of the domain.
    pub fn restrict(&self, dag: &Dag, c: VertexSet) -> Result<Index> {
        if !c.is_subset(self.dom) {
            return Err(Error::NotSubset);
        }
        if !dag.is_closed(c) {
            return Err(Error::NotClosed);
        }
        Ok(self.restrict_to(c))
    }

    /// `α|_C` without checks; `C` must be a subset of the domain.
    pub fn restrict_to(&self, c: VertexSet) -> Index {
        debug_assert!(c.is_subset(self.dom));
        if c == self.dom {
            return self.clone();
        }
        Index {
            dom: c,
            vals: c.iter().map(|v| self.vals[self.dom.rank(v)]).collect(),
        }
    }

    /// Copy with the value at `v` replaced.
    #[must_use]
    pub fn with_value(&self, v: Vertex, x: u64) -> Index {
        let mut out = self.clone();
        out.vals[self.dom.rank(v)] = x;
        out
    }

    /// `κ(α)` for an index on exactly `Dom(κ)`: the value at `κ(y)` is `α(y)`.
    pub fn transport(&self, k: &LocalIso) -> Index {
        debug_assert_eq!(self.dom, k.src());
        let mut vals = alloc::vec![0; k.dst().len()];
        for ((_, y), x) in k.pairs().zip(self.vals.iter()) {
            vals[k.dst().rank(y)] = *x;
        }
        Index { dom: k.dst(), vals }
    }

    /// Whether `κ(α|_{Dom κ}) = α|_{Range κ}`; requires both ends inside the
    /// domain.
    fn fixed_by(&self, k: &LocalIso) -> bool {
        k.pairs().all(|(x, y)| self.get(x) == self.get(y))
    }
}

/// All indices on `dom` with values below `n`, in lexicographic order.
pub fn indices_on(dom: VertexSet, n: u64) -> impl Iterator<Item = Index> {
    let k = dom.len();
    let total = if n == 0 && k > 0 { 0 } else { n.pow(k as u32) };
    (0..total).map(move |mut code| {
        let mut vals = alloc::vec![0; k];
        for slot in vals.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        Index { dom, vals }
    })
}

/// `Restr(α)`: one restriction per closed subset of the domain, in
/// well-order.
pub fn restr_set(dag: &Dag, alpha: &Index) -> Vec<Index> {
    dag.closed_subsets_of(alpha.dom)
        .into_iter()
        .map(|c| alpha.restrict_to(c))
        .collect()
}

/// Membership in `I_K^G`: no non-identity member carries a local
/// restriction of `α` onto another one.
pub fn is_generic(clic: &Clic, alpha: &Index) -> bool {
    alpha.dom.iter().all(|v| {
        clic.at(v)
            .filter(|k| k.dst().is_subset(alpha.dom) && !k.is_identity())
            .all(|k| !alpha.fixed_by(k))
    })
}

/// Canonical representative of a `∼K` class.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ClassKey(Index);

impl ClassKey {
    pub fn rep(&self) -> &Index {
        &self.0
    }

    pub fn into_rep(self) -> Index {
        self.0
    }
}

/// `∼K` computations for one DAG and CLIC, memoizing class keys.
///
/// The memo is an ordinary cache; results never depend on its state.
pub struct Classifier<'a> {
    dag: &'a Dag,
    clic: &'a Clic,
    memo: RefCell<BTreeMap<Index, ClassKey>>,
}

impl<'a> Classifier<'a> {
    pub fn new(dag: &'a Dag, clic: &'a Clic) -> Self {
        Classifier {
            dag,
            clic,
            memo: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn dag(&self) -> &'a Dag {
        self.dag
    }

    pub fn clic(&self) -> &'a Clic {
        self.clic
    }

    pub fn is_generic(&self, alpha: &Index) -> bool {
        is_generic(self.clic, alpha)
    }

    fn require_generic(&self, alpha: &Index) -> Result<()> {
        if self.is_generic(alpha) {
            Ok(())
        } else {
            Err(Error::NotGeneric)
        }
    }

    /// Decides `α ∼K β` from the definition: a perfect matching between
    /// the two domains using pairs `(v, w)` for which some member sends
    /// `α|_{C_v}` to `β|_{C_w}`.
    pub fn index_equiv(&self, alpha: &Index, beta: &Index) -> Result<bool> {
        self.require_generic(alpha)?;
        self.require_generic(beta)?;
        if alpha.len() != beta.len() {
            return Ok(false);
        }
        let verts: Vec<Vertex> = alpha.dom.iter().collect();
        let adj: Vec<Vec<Vertex>> = verts
            .iter()
            .map(|&v| {
                let local = alpha.restrict_to(self.dag.closure(v));
                self.clic
                    .at(v)
                    .filter(|k| k.dst().is_subset(beta.dom))
                    .filter(|k| local.transport(k) == beta.restrict_to(k.dst()))
                    .map(|k| k.dst_apex())
                    .collect()
            })
            .collect();
        Ok(perfect_matching(&adj, self.dag.len()))
    }

    /// Every index equivalent to the generic index `α`.
    pub fn orbit(&self, alpha: &Index) -> Result<BTreeSet<Index>> {
        self.require_generic(alpha)?;
        let order: Vec<Vertex> = self
            .dag
            .topological_order()
            .iter()
            .copied()
            .filter(|&v| alpha.dom.contains(v))
            .collect();
        let mut out = BTreeSet::new();
        let mut phi = alloc::vec![usize::MAX; self.dag.len()];
        self.extend_orbit(alpha, &order, 0, &mut phi, VertexSet::EMPTY, &mut out);
        Ok(out)
    }

    fn extend_orbit(
        &self,
        alpha: &Index,
        order: &[Vertex],
        i: usize,
        phi: &mut Vec<Vertex>,
        used: VertexSet,
        out: &mut BTreeSet<Index>,
    ) {
        let Some(&v) = order.get(i) else {
            let mut pairs: Vec<(Vertex, u64)> =
                alpha.iter().map(|(x, val)| (phi[x], val)).collect();
            pairs.sort_unstable();
            out.insert(Index {
                dom: used,
                vals: pairs.into_iter().map(|(_, val)| val).collect(),
            });
            return;
        };
        for k in self.clic.at(v) {
            let w = k.dst_apex();
            if used.contains(w) {
                continue;
            }
            let agrees = k.pairs().all(|(y, ky)| y == v || phi[y] == ky);
            if agrees {
                phi[v] = w;
                self.extend_orbit(alpha, order, i + 1, phi, used.with(w), out);
            }
        }
        phi[v] = usize::MAX;
    }

    /// `γ_α`: the least member of the orbit of `α`.
    pub fn class_key(&self, alpha: &Index) -> Result<ClassKey> {
        if let Some(k) = self.memo.borrow().get(alpha) {
            return Ok(k.clone());
        }
        let orbit = self.orbit(alpha)?;
        let key = ClassKey(orbit.into_iter().next().expect("orbit contains α"));
        self.memo.borrow_mut().insert(alpha.clone(), key.clone());
        Ok(key)
    }

    /// Class keys of all restrictions of `α`: a finite description of
    /// `Restr(α, K)`, ordered by representative.
    pub fn restr_class_keys(&self, alpha: &Index) -> Result<Vec<ClassKey>> {
        self.require_generic(alpha)?;
        let keys: BTreeSet<ClassKey> = self
            .dag
            .closed_subsets_of(alpha.dom)
            .into_iter()
            .map(|c| self.class_key(&alpha.restrict_to(c)))
            .collect::<Result<_>>()?;
        Ok(keys.into_iter().collect())
    }

    /// `Restr'(α, K)`: the restriction classes other than `[α]_K` itself.
    pub fn restr_prime_class_keys(&self, alpha: &Index) -> Result<Vec<ClassKey>> {
        let own = self.class_key(alpha)?;
        let mut keys = self.restr_class_keys(alpha)?;
        keys.retain(|k| *k != own);
        Ok(keys)
    }

    /// Whether `β ∈ Restr(α, K)`, given the class keys of `α`.
    pub fn in_restr(&self, beta: &Index, alpha_keys: &[ClassKey]) -> Result<bool> {
        let k = self.class_key(beta)?;
        Ok(alpha_keys.binary_search(&k).is_ok())
    }

    /// `D_{α,β}`: vertices whose closure restriction of `α` lies in
    /// `Restr(β, K)`.
    pub fn wedge_domain(&self, alpha: &Index, beta_keys: &[ClassKey]) -> Result<VertexSet> {
        let mut d = VertexSet::EMPTY;
        for v in alpha.dom.iter() {
            if self.in_restr(&alpha.restrict_to(self.dag.closure(v)), beta_keys)? {
                d = d.with(v);
            }
        }
        Ok(d)
    }

    /// `α ∧ β = α|_{D_{α,β}}`.
    pub fn wedge(&self, alpha: &Index, beta: &Index) -> Result<Index> {
        self.require_generic(alpha)?;
        let keys = self.restr_class_keys(beta)?;
        self.wedge_with_keys(alpha, &keys)
    }

    /// [`Classifier::wedge`] with precomputed `restr_class_keys(β)`.
    pub fn wedge_with_keys(&self, alpha: &Index, beta_keys: &[ClassKey]) -> Result<Index> {
        let d = self.wedge_domain(alpha, beta_keys)?;
        if !self.dag.is_closed(d) {
            return Err(Error::WedgeDomainNotClosed);
        }
        Ok(alpha.restrict_to(d))
    }

    /// Every generic index with values below `n`, over every closed domain
    /// (`full_only` keeps only domain `V`).
    pub fn generic_indices(&self, n: u64, full_only: bool) -> Vec<Index> {
        let doms = if full_only {
            alloc::vec![self.dag.all()]
        } else {
            self.dag.closed_subgraphs()
        };
        doms.into_iter()
            .flat_map(|d| indices_on(d, n))
            .filter(|a| self.is_generic(a))
            .collect()
    }
}

/// Kuhn's augmenting-path matching; `adj[i]` lists admissible right
/// vertices for left vertex `i`.
fn perfect_matching(adj: &[Vec<Vertex>], right_size: usize) -> bool {
    fn augment(i: usize, adj: &[Vec<Vertex>], seen: &mut [bool], owner: &mut [usize]) -> bool {
        for &w in &adj[i] {
            if seen[w] {
                continue;
            }
            seen[w] = true;
            if owner[w] == usize::MAX || augment(owner[w], adj, seen, owner) {
                owner[w] = i;
                return true;
            }
        }
        false
    }
    let mut owner = alloc::vec![usize::MAX; right_size];
    (0..adj.len()).all(|i| {
        let mut seen = alloc::vec![false; right_size];
        augment(i, adj, &mut seen, &mut owner)
    })
}

/// Uncached [`Classifier::class_key`].
pub fn class_key(dag: &Dag, clic: &Clic, alpha: &Index) -> Result<ClassKey> {
    Classifier::new(dag, clic).class_key(alpha)
}

/// Uncached [`Classifier::index_equiv`].
pub fn index_equiv(dag: &Dag, clic: &Clic, alpha: &Index, beta: &Index) -> Result<bool> {
    Classifier::new(dag, clic).index_equiv(alpha, beta)
}

/// Uncached [`Classifier::wedge`].
pub fn wedge(dag: &Dag, clic: &Clic, alpha: &Index, beta: &Index) -> Result<Index> {
    Classifier::new(dag, clic).wedge(alpha, beta)
}
