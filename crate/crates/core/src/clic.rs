//! Local isomorphisms between single-apex closures and consistent local
//! isomorphism classes (CLICs).
//!
//! A CLIC contains every identity and is closed under inversion,
//! composition, restriction to sub-closures `C_u`, and pointwise saturation:
//! a local isomorphism whose every vertex image is realized by some member
//! defined at that vertex is itself a member.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::dag::{Dag, Vertex, VertexSet};
use crate::error::{Error, Result};

/// Default cap on non-identity local isomorphisms for [`enumerate_clics`].
pub const DEFAULT_ISO_BOUND: usize = 20;

/// An order isomorphism `κ: C_v → C_w`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocalIso {
    src: VertexSet,
    dst: VertexSet,
    /// Image of each member of `src`, in vertex order.
    images: Vec<Vertex>,
    src_apex: Vertex,
    dst_apex: Vertex,
}

impl fmt::Debug for LocalIso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.pairs()).finish()
    }
}

impl LocalIso {
    pub fn identity(dag: &Dag, v: Vertex) -> LocalIso {
        let src = dag.closure(v);
        LocalIso {
            src,
            dst: src,
            images: src.iter().collect(),
            src_apex: v,
            dst_apex: v,
        }
    }

    /// Validates a vertex map as a local isomorphism of `dag`.
    pub fn from_pairs(dag: &Dag, pairs: &[(Vertex, Vertex)]) -> Result<LocalIso> {
        let malformed = |msg: &str| Error::MalformedIso(format!("{msg}: {pairs:?}"));
        let map: BTreeMap<Vertex, Vertex> = pairs.iter().copied().collect();
        if map.len() != pairs.len() {
            return Err(malformed("vertex mapped twice"));
        }
        if pairs.iter().any(|&(a, b)| a >= dag.len() || b >= dag.len()) {
            return Err(malformed("vertex out of range"));
        }
        let src = VertexSet::from_vertices(map.keys().copied());
        let dst = VertexSet::from_vertices(map.values().copied());
        if dst.len() != src.len() {
            return Err(malformed("not injective"));
        }
        let src_apex =
            single_apex(dag, src).ok_or_else(|| malformed("domain is not a closure C_v"))?;
        let dst_apex =
            single_apex(dag, dst).ok_or_else(|| malformed("range is not a closure C_w"))?;
        for (&a, &fa) in &map {
            for (&b, &fb) in &map {
                if dag.precedes(a, b) != dag.precedes(fa, fb) {
                    return Err(malformed("not order preserving"));
                }
            }
        }
        Ok(LocalIso {
            src,
            dst,
            images: src.iter().map(|x| map[&x]).collect(),
            src_apex,
            dst_apex,
        })
    }

    pub fn src(&self) -> VertexSet {
        self.src
    }

    pub fn dst(&self) -> VertexSet {
        self.dst
    }

    pub fn src_apex(&self) -> Vertex {
        self.src_apex
    }

    pub fn dst_apex(&self) -> Vertex {
        self.dst_apex
    }

    pub fn apply(&self, x: Vertex) -> Option<Vertex> {
        self.src.contains(x).then(|| self.images[self.src.rank(x)])
    }

    /// `(x, κ(x))` pairs in vertex order of `x`.
    pub fn pairs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.src.iter().zip(self.images.iter().copied())
    }

    pub fn is_identity(&self) -> bool {
        self.pairs().all(|(a, b)| a == b)
    }

    #[must_use]
    pub fn inverse(&self) -> LocalIso {
        let mut pairs: Vec<(Vertex, Vertex)> = self.pairs().map(|(a, b)| (b, a)).collect();
        pairs.sort_unstable();
        LocalIso {
            src: self.dst,
            dst: self.src,
            images: pairs.into_iter().map(|(_, b)| b).collect(),
            src_apex: self.dst_apex,
            dst_apex: self.src_apex,
        }
    }

    /// `κ|_{C_u}` for `u` in the domain.
    pub fn restrict(&self, dag: &Dag, u: Vertex) -> Option<LocalIso> {
        if !self.src.contains(u) {
            return None;
        }
        let src = dag.closure(u);
        let images: Vec<Vertex> = src.iter().map(|x| self.images[self.src.rank(x)]).collect();
        let dst_apex = self.images[self.src.rank(u)];
        Some(LocalIso {
            src,
            dst: dag.closure(dst_apex),
            images,
            src_apex: u,
            dst_apex,
        })
    }

    /// `self ∘ inner`, after restricting `self` to the destination of
    /// `inner`. Defined when the apex of `inner`'s range lies in `self`'s
    /// domain.
    pub fn after(&self, dag: &Dag, inner: &LocalIso) -> Option<LocalIso> {
        let outer = if self.src == inner.dst {
            self.clone()
        } else {
            self.restrict(dag, inner.dst_apex)?
        };
        let images: Vec<Vertex> = inner
            .images
            .iter()
            .map(|&y| outer.images[outer.src.rank(y)])
            .collect();
        Some(LocalIso {
            src: inner.src,
            dst: outer.dst,
            images,
            src_apex: inner.src_apex,
            dst_apex: outer.dst_apex,
        })
    }

    /// Re-checks the structural invariants against `dag`.
    pub fn check(&self, dag: &Dag) -> Result<()> {
        let pairs: Vec<_> = self.pairs().collect();
        let fresh = LocalIso::from_pairs(dag, &pairs)?;
        if &fresh == self {
            Ok(())
        } else {
            Err(Error::MalformedIso(format!(
                "inconsistent apex data: {pairs:?}"
            )))
        }
    }
}

fn single_apex(dag: &Dag, s: VertexSet) -> Option<Vertex> {
    let apex = s.iter().find(|&v| dag.closure(v) == s)?;
    Some(apex)
}

/// All order isomorphisms from the vertex list `from` (topologically sorted)
/// onto the set `to`.
fn order_isomorphisms(dag: &Dag, from: &[Vertex], to: VertexSet) -> Vec<Vec<Vertex>> {
    fn go(
        dag: &Dag,
        from: &[Vertex],
        to: VertexSet,
        img: &mut Vec<Vertex>,
        used: VertexSet,
        out: &mut Vec<Vec<Vertex>>,
    ) {
        let i = img.len();
        if i == from.len() {
            out.push(img.clone());
            return;
        }
        let x = from[i];
        for w in to.difference(used).iter() {
            if dag.depth(w) != dag.depth(x)
                || dag.strictly_below(w).len() != dag.strictly_below(x).len()
            {
                continue;
            }
            let ok = (0..i).all(|j| {
                dag.precedes(from[j], x) == dag.precedes(img[j], w)
                    && dag.precedes(x, from[j]) == dag.precedes(w, img[j])
            });
            if ok {
                img.push(w);
                go(dag, from, to, img, used.with(w), out);
                img.pop();
            }
        }
    }
    let mut out = Vec::new();
    if from.len() == to.len() {
        go(
            dag,
            from,
            to,
            &mut Vec::with_capacity(from.len()),
            VertexSet::EMPTY,
            &mut out,
        );
    }
    out
}

/// Every local isomorphism of `dag`, identities included, in canonical
/// order.
pub fn enumerate_local_isos(dag: &Dag) -> Vec<LocalIso> {
    let mut out = BTreeSet::new();
    for v in dag.vertices() {
        let src = dag.closure(v);
        let from: Vec<Vertex> = dag
            .topological_order()
            .iter()
            .copied()
            .filter(|&x| src.contains(x))
            .collect();
        for w in dag.vertices() {
            let dst = dag.closure(w);
            if dst.len() != src.len() {
                continue;
            }
            for img in order_isomorphisms(dag, &from, dst) {
                let mut pairs: Vec<(Vertex, Vertex)> = from.iter().copied().zip(img).collect();
                pairs.sort_unstable();
                if pairs.iter().any(|&(a, b)| a == v && b != w) {
                    continue;
                }
                out.insert(LocalIso {
                    src,
                    dst,
                    images: pairs.iter().map(|&(_, b)| b).collect(),
                    src_apex: v,
                    dst_apex: w,
                });
            }
        }
    }
    out.into_iter().collect()
}

/// Every edge-preserving permutation of the vertices, as image vectors
/// (`p[v]` is the image of `v`).
pub fn enumerate_automorphisms(dag: &Dag) -> Vec<Vec<Vertex>> {
    let from = dag.topological_order();
    let mut out: Vec<Vec<Vertex>> = order_isomorphisms(dag, from, dag.all())
        .into_iter()
        .map(|img| {
            let mut p = alloc::vec![0; dag.len()];
            for (&x, y) in from.iter().zip(img) {
                p[x] = y;
            }
            p
        })
        .collect();
    out.sort();
    out
}

/// Which closure axiom a [`Violation`] breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Identity,
    Inverse,
    Composition,
    Restriction,
    Saturation,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Identity => "identity",
            Axiom::Inverse => "inverse",
            Axiom::Composition => "composition",
            Axiom::Restriction => "restriction",
            Axiom::Saturation => "saturation",
        })
    }
}

/// A failed axiom: `missing` should be a member, `witnesses` are the members
/// that force it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub axiom: Axiom,
    pub missing: LocalIso,
    pub witnesses: Vec<LocalIso>,
}

/// A consistent local isomorphism class.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Clic {
    members: Vec<LocalIso>,
    /// Member indices grouped by source apex.
    by_apex: Vec<Vec<usize>>,
}

impl fmt::Debug for Clic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.nontrivial()).finish()
    }
}

impl PartialOrd for Clic {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Clic {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.members
            .len()
            .cmp(&other.members.len())
            .then_with(|| self.members.cmp(&other.members))
    }
}

impl Clic {
    /// The CLIC made of identities only.
    pub fn trivial(dag: &Dag) -> Clic {
        Self::from_set(
            dag,
            dag.vertices().map(|v| LocalIso::identity(dag, v)).collect(),
        )
    }

    /// Loads a full member list, adding missing identities, and checks every
    /// axiom.
    pub fn from_members(
        dag: &Dag,
        isos: &[LocalIso],
    ) -> core::result::Result<Clic, Vec<Violation>> {
        let mut set: BTreeSet<LocalIso> = isos.iter().cloned().collect();
        set.extend(dag.vertices().map(|v| LocalIso::identity(dag, v)));
        let members: Vec<LocalIso> = set.iter().cloned().collect();
        let violations = violations(dag, &members);
        if violations.is_empty() {
            Ok(Self::from_set(dag, set))
        } else {
            Err(violations)
        }
    }

    fn from_set(dag: &Dag, set: BTreeSet<LocalIso>) -> Clic {
        let members: Vec<LocalIso> = set.into_iter().collect();
        let mut by_apex = alloc::vec![Vec::new(); dag.len()];
        for (i, k) in members.iter().enumerate() {
            by_apex[k.src_apex].push(i);
        }
        Clic { members, by_apex }
    }

    pub fn members(&self) -> &[LocalIso] {
        &self.members
    }

    /// Non-identity members in canonical order.
    pub fn nontrivial(&self) -> impl Iterator<Item = &LocalIso> {
        self.members.iter().filter(|k| !k.is_identity())
    }

    pub fn is_trivial(&self) -> bool {
        self.nontrivial().next().is_none()
    }

    pub fn contains(&self, k: &LocalIso) -> bool {
        self.members.binary_search(k).is_ok()
    }

    /// Members whose domain is exactly `C_v`.
    ///
    /// Every member of `K_v` restricts to one of these, so they carry all of
    /// the CLIC's action on indices over `C_v`.
    pub fn at(&self, v: Vertex) -> impl Iterator<Item = &LocalIso> {
        self.by_apex[v].iter().map(move |&i| &self.members[i])
    }

    pub fn vertex_count(&self) -> usize {
        self.by_apex.len()
    }

    /// `v ∼K w`: some member defined at `v` sends it to `w`.
    pub fn vertex_equiv(&self, v: Vertex, w: Vertex) -> bool {
        self.members.iter().any(|k| k.apply(v) == Some(w))
    }

    /// The `∼K` class of `v`.
    pub fn vertex_class(&self, v: Vertex) -> VertexSet {
        self.at(v)
            .map(|k| VertexSet::singleton(k.dst_apex))
            .fold(VertexSet::EMPTY, VertexSet::union)
    }
}

/// Checks every CLIC axiom for `isos` (identities are not added).
pub fn validate_clic(
    dag: &Dag,
    isos: &[LocalIso],
) -> Result<core::result::Result<(), Vec<Violation>>> {
    for k in isos {
        k.check(dag)?;
    }
    let mut members: Vec<LocalIso> = isos.to_vec();
    members.sort();
    members.dedup();
    let v = violations(dag, &members);
    Ok(if v.is_empty() { Ok(()) } else { Err(v) })
}

fn violations(dag: &Dag, members: &[LocalIso]) -> Vec<Violation> {
    let set: BTreeSet<&LocalIso> = members.iter().collect();
    let mut out = BTreeSet::new();
    let mut need = |axiom, missing: LocalIso, witnesses: Vec<LocalIso>| {
        if !set.contains(&missing) {
            out.insert(Violation {
                axiom,
                missing,
                witnesses,
            });
        }
    };
    for v in dag.vertices() {
        need(Axiom::Identity, LocalIso::identity(dag, v), Vec::new());
    }
    for k in members {
        need(Axiom::Inverse, k.inverse(), alloc::vec![k.clone()]);
        for u in k.src.iter() {
            if let Some(r) = k.restrict(dag, u) {
                need(Axiom::Restriction, r, alloc::vec![k.clone()]);
            }
        }
        for outer in members {
            if let Some(c) = outer.after(dag, k) {
                need(Axiom::Composition, c, alloc::vec![outer.clone(), k.clone()]);
            }
        }
    }
    let reach = image_relation(dag, members.iter());
    for cand in enumerate_local_isos(dag) {
        if witnessed(&cand, &reach) {
            let witnesses = cand
                .pairs()
                .filter_map(|(x, y)| members.iter().find(|k| k.apply(x) == Some(y)).cloned())
                .collect();
            need(Axiom::Saturation, cand, witnesses);
        }
    }
    out.into_iter().collect()
}

/// For each vertex `x`, the set of images `κ(x)` over members defined at `x`.
fn image_relation<'a>(dag: &Dag, members: impl Iterator<Item = &'a LocalIso>) -> Vec<VertexSet> {
    let mut reach = alloc::vec![VertexSet::EMPTY; dag.len()];
    for k in members {
        for (x, y) in k.pairs() {
            reach[x] = reach[x].with(y);
        }
    }
    reach
}

fn witnessed(k: &LocalIso, reach: &[VertexSet]) -> bool {
    k.pairs().all(|(x, y)| reach[x].contains(y))
}

/// The least CLIC containing `generators`.
pub fn clic_closure(dag: &Dag, generators: &[LocalIso]) -> Result<Clic> {
    for g in generators {
        g.check(dag)?;
    }
    let all = enumerate_local_isos(dag);
    let seed: BTreeSet<LocalIso> = generators.iter().cloned().collect();
    Ok(close_with(dag, &all, seed))
}

fn close_with(dag: &Dag, all: &[LocalIso], mut set: BTreeSet<LocalIso>) -> Clic {
    set.extend(dag.vertices().map(|v| LocalIso::identity(dag, v)));
    loop {
        let members: Vec<LocalIso> = set.iter().cloned().collect();
        let mut fresh: BTreeSet<LocalIso> = BTreeSet::new();
        for k in &members {
            fresh.insert(k.inverse());
            for u in k.src.iter() {
                fresh.extend(k.restrict(dag, u));
            }
            for outer in &members {
                fresh.extend(outer.after(dag, k));
            }
        }
        let reach = image_relation(dag, members.iter());
        fresh.extend(all.iter().filter(|k| witnessed(k, &reach)).cloned());
        let before = set.len();
        set.extend(fresh);
        if set.len() == before {
            return Clic::from_set(dag, set);
        }
    }
}

/// Every CLIC of `dag`, trivial one included, in canonical order.
///
/// Fails when the number of non-identity local isomorphisms exceeds `bound`.
pub fn enumerate_clics(dag: &Dag, bound: usize) -> Result<Vec<Clic>> {
    let all = enumerate_local_isos(dag);
    let nontrivial: Vec<&LocalIso> = all.iter().filter(|k| !k.is_identity()).collect();
    if nontrivial.len() > bound {
        return Err(Error::TooManyIsos {
            got: nontrivial.len(),
            bound,
        });
    }
    // Every CLIC is reached by adding one generator at a time to a smaller
    // CLIC, so a search over single-generator extensions finds them all.
    let trivial = close_with(dag, &all, BTreeSet::new());
    let mut seen: BTreeSet<Vec<LocalIso>> = BTreeSet::new();
    seen.insert(trivial.members.clone());
    let mut queue = alloc::vec![trivial];
    let mut out = Vec::new();
    while let Some(k) = queue.pop() {
        for g in &nontrivial {
            if k.contains(g) {
                continue;
            }
            let mut set: BTreeSet<LocalIso> = k.members.iter().cloned().collect();
            set.insert((*g).clone());
            let next = close_with(dag, &all, set);
            if seen.insert(next.members.clone()) {
                queue.push(next);
            }
        }
        out.push(k);
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;

    fn block_matrix() -> Dag {
        Dag::new(
            &["u", "v", "r", "c"],
            &[("u", "r"), ("u", "c"), ("v", "r"), ("v", "c")],
        )
        .unwrap()
    }

    fn iso(d: &Dag, pairs: &[(&str, &str)]) -> LocalIso {
        let p: Vec<(Vertex, Vertex)> = pairs
            .iter()
            .map(|(a, b)| (d.vertex(a).unwrap(), d.vertex(b).unwrap()))
            .collect();
        LocalIso::from_pairs(d, &p).unwrap()
    }

    #[test]
    fn identity_and_inverse() {
        let d = block_matrix();
        let k = iso(&d, &[("u", "v"), ("v", "u"), ("r", "c")]);
        assert_eq!(k.inverse().inverse(), k);
        assert!(k.after(&d, &k.inverse()).unwrap().is_identity());
        assert_eq!(k.src_apex(), d.vertex("r").unwrap());
        assert_eq!(k.dst_apex(), d.vertex("c").unwrap());
    }

    #[test]
    fn restriction_follows_the_map() {
        let d = block_matrix();
        let k = iso(&d, &[("u", "v"), ("v", "u"), ("r", "r")]);
        let r = k.restrict(&d, d.vertex("u").unwrap()).unwrap();
        assert_eq!(r, iso(&d, &[("u", "v")]));
        assert!(k.restrict(&d, d.vertex("c").unwrap()).is_none());
    }

    #[test]
    fn malformed_maps_are_rejected() {
        let d = block_matrix();
        let ids = |a: &str| d.vertex(a).unwrap();
        // domain {r} is not closed
        assert!(LocalIso::from_pairs(&d, &[(ids("r"), ids("c"))]).is_err());
        // {u, v} has no single apex
        assert!(LocalIso::from_pairs(&d, &[(ids("u"), ids("u")), (ids("v"), ids("v"))]).is_err());
        // sends the apex below
        assert!(LocalIso::from_pairs(
            &d,
            &[
                (ids("u"), ids("r")),
                (ids("v"), ids("v")),
                (ids("r"), ids("u"))
            ]
        )
        .is_err());
    }

    #[test]
    fn composition_restricts_the_outer_map() {
        let d = block_matrix();
        let k1 = iso(&d, &[("u", "v")]);
        let k11 = iso(&d, &[("u", "v"), ("v", "u"), ("r", "c")]);
        // κ11 ∘ κ1 sends u to v then v to u.
        let c = k11.after(&d, &k1).unwrap();
        assert!(c.is_identity());
        assert_eq!(c.src(), d.closure(d.vertex("u").unwrap()));
    }

    #[test]
    fn block_matrix_case_clics_validate() {
        let d = block_matrix();
        let ids: Vec<LocalIso> = d.vertices().map(|v| LocalIso::identity(&d, v)).collect();
        let mut case1 = ids.clone();
        case1.extend([
            iso(&d, &[("u", "v")]),
            iso(&d, &[("v", "u")]),
            iso(&d, &[("u", "v"), ("v", "u"), ("r", "r")]),
            iso(&d, &[("u", "v"), ("v", "u"), ("c", "c")]),
        ]);
        assert_eq!(validate_clic(&d, &case1).unwrap(), Ok(()));

        let mut broken = ids.clone();
        broken.push(iso(&d, &[("u", "v"), ("v", "u"), ("r", "r")]));
        let v = validate_clic(&d, &broken).unwrap().unwrap_err();
        assert!(v
            .iter()
            .any(|x| x.axiom == Axiom::Restriction && x.missing == iso(&d, &[("u", "v")])));

        assert_eq!(validate_clic(&d, &ids).unwrap(), Ok(()));
    }

    #[test]
    fn missing_identity_is_reported() {
        let d = Dag::new::<&str>(&["a"], &[]).unwrap();
        let v = validate_clic(&d, &[]).unwrap().unwrap_err();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].axiom, Axiom::Identity);
    }

    #[test]
    fn closure_of_kappa01() {
        let d = block_matrix();
        let k01 = iso(&d, &[("u", "u"), ("v", "v"), ("r", "c")]);
        let k = clic_closure(&d, core::slice::from_ref(&k01)).unwrap();
        let nontrivial: Vec<&LocalIso> = k.nontrivial().collect();
        assert_eq!(nontrivial.len(), 2);
        assert!(k.contains(&k01) && k.contains(&k01.inverse()));
    }

    #[test]
    fn empty_generators_close_to_trivial() {
        let d = block_matrix();
        let k = clic_closure(&d, &[]).unwrap();
        assert!(k.is_trivial());
        assert_eq!(k, Clic::trivial(&d));
        assert_eq!(k.members().len(), 4);
    }

    #[test]
    fn from_members_adds_identities() {
        let d = Dag::new::<&str>(&["a", "b"], &[]).unwrap();
        let k = Clic::from_members(&d, &[iso(&d, &[("a", "b")]), iso(&d, &[("b", "a")])]).unwrap();
        assert_eq!(k.members().len(), 4);
        assert!(Clic::from_members(&d, &[iso(&d, &[("a", "b")])]).is_err());
    }

    #[test]
    fn too_many_isos() {
        let labels: Vec<alloc::string::String> = (0..6).map(|i| format!("x{i}")).collect();
        let d = Dag::new::<alloc::string::String>(&labels, &[]).unwrap();
        assert_eq!(
            enumerate_clics(&d, DEFAULT_ISO_BOUND).unwrap_err(),
            Error::TooManyIsos { got: 30, bound: 20 }
        );
    }

    #[test]
    fn vertex_equivalence() {
        let d = block_matrix();
        let all = enumerate_clics(&d, DEFAULT_ISO_BOUND).unwrap();
        let full = all.last().unwrap();
        let (u, r, c) = (
            d.vertex("u").unwrap(),
            d.vertex("r").unwrap(),
            d.vertex("c").unwrap(),
        );
        assert!(full.vertex_equiv(r, c));
        for k in &all {
            assert!(!k.vertex_equiv(u, r));
            assert!(k.vertex_equiv(c, c));
        }
        assert_eq!(full.vertex_class(r), VertexSet::from_vertices([r, c]));
    }

    #[test]
    fn automorphism_counts() {
        let two_chains =
            Dag::new(&["u1", "u2", "v1", "v2"], &[("u1", "u2"), ("v1", "v2")]).unwrap();
        assert_eq!(enumerate_automorphisms(&two_chains).len(), 2);
        let three = Dag::new::<&str>(&["a", "b", "c"], &[]).unwrap();
        assert_eq!(enumerate_automorphisms(&three).len(), 6);
        let ap = Dag::new(
            &["u1", "u2", "v1", "v2", "v3"],
            &[("u1", "u2"), ("v1", "v2"), ("v2", "v3")],
        )
        .unwrap();
        assert_eq!(enumerate_automorphisms(&ap), vec![vec![0, 1, 2, 3, 4]]);
    }
}
