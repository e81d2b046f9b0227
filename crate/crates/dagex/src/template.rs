//! Symbolic rendering of the representation `X_α = f(U_{[α|_C]} : C)`.
//!
//! Vertices get letters `i, j, k, ℓ, m, …` ordered by depth, then label; a
//! one-vertex graph uses `n`. Coordinates are grouped by depth and groups
//! are separated by commas. Within a group, each `∼K` vertex class is one
//! slot, printed as `0` when no member is present, as the member's letter
//! when one is, and as a brace set when several are.

use dagex_core::{Clic, Dag, Vertex, VertexSet};

/// Vertices ordered by (depth, id).
type Rank = (usize, Vertex);

const LETTERS: &[&str] = &[
    "i", "j", "k", "ℓ", "m", "n", "p", "q", "r", "s", "t", "u", "v", "w", "x", "y", "z",
];

pub struct Template<'a> {
    dag: &'a Dag,
    clic: &'a Clic,
    letters: Vec<String>,
    /// Vertices per depth, in label order.
    groups: Vec<Vec<Vertex>>,
}

fn subscript(s: &str) -> String {
    if s.chars().count() == 1 {
        format!("_{s}")
    } else {
        format!("_{{{s}}}")
    }
}

impl<'a> Template<'a> {
    pub fn new(dag: &'a Dag, clic: &'a Clic) -> Self {
        let mut order: Vec<Vertex> = dag.vertices().collect();
        order.sort_by_key(|&v| (dag.depth(v), v));
        let mut letters = vec![String::new(); dag.len()];
        for (i, &v) in order.iter().enumerate() {
            letters[v] = if dag.len() == 1 {
                "n".to_string()
            } else {
                LETTERS
                    .get(i)
                    .map_or_else(|| format!("x{i}"), |s| s.to_string())
            };
        }
        let depth = order.last().map_or(0, |&v| dag.depth(v));
        let mut groups = vec![Vec::new(); if dag.is_empty() { 0 } else { depth + 1 }];
        for &v in &order {
            groups[dag.depth(v)].push(v);
        }
        Template {
            dag,
            clic,
            letters,
            groups,
        }
    }

    pub fn letter(&self, v: Vertex) -> &str {
        &self.letters[v]
    }

    /// The `X` subscript, e.g. `ij,kℓ`.
    pub fn entry(&self) -> String {
        let parts: Vec<String> = self
            .groups
            .iter()
            .map(|g| g.iter().map(|&v| self.letter(v)).collect())
            .collect();
        parts.join(",")
    }

    /// Subscript of the argument fed by the restriction to `c`.
    pub fn argument(&self, c: VertexSet) -> String {
        let parts: Vec<String> = self
            .groups
            .iter()
            .map(|g| {
                let mut seen = VertexSet::EMPTY;
                let mut out = String::new();
                for &v in g {
                    if seen.contains(v) {
                        continue;
                    }
                    let slot = self.clic.vertex_class(v);
                    seen = seen.union(slot);
                    let present: Vec<&str> = g
                        .iter()
                        .filter(|&&w| slot.contains(w) && c.contains(w))
                        .map(|&w| self.letter(w))
                        .collect();
                    match present.as_slice() {
                        [] => out.push('0'),
                        [one] => out.push_str(one),
                        many => {
                            out.push('{');
                            out.push_str(&many.join(","));
                            out.push('}');
                        }
                    }
                }
                out
            })
            .collect();
        parts.join(",")
    }

    fn rank(&self, v: Vertex) -> Rank {
        (self.dag.depth(v), v)
    }

    /// Genericity constraints, one per pair of distinct vertices joined by
    /// a member, using the member that moves the fewest coordinates.
    pub fn constraints(&self) -> Vec<String> {
        let mut found: Vec<(Rank, Rank, String)> = Vec::new();
        for v in self.dag.vertices() {
            for w in self.dag.vertices() {
                if self.rank(v) >= self.rank(w) {
                    continue;
                }
                let best = self
                    .clic
                    .at(v)
                    .filter(|k| k.dst_apex() == w)
                    .min_by_key(|k| k.pairs().filter(|(x, y)| x != y).count());
                let Some(k) = best else { continue };
                let mut moved: Vec<(Vertex, Vertex)> = k.pairs().filter(|(x, y)| x != y).collect();
                moved.sort_by_key(|&(x, _)| self.rank(x));
                let side = |pick: fn(&(Vertex, Vertex)) -> Vertex| -> String {
                    let names: Vec<&str> = moved.iter().map(|p| self.letter(pick(p))).collect();
                    if names.len() == 1 {
                        names[0].to_string()
                    } else {
                        format!("({})", names.join(","))
                    }
                };
                let text = format!("{}≠{}", side(|p| p.0), side(|p| p.1));
                if !found.iter().any(|(_, _, t)| *t == text) {
                    found.push((self.rank(v), self.rank(w), text));
                }
            }
        }
        found.sort();
        found.into_iter().map(|(_, _, t)| t).collect()
    }

    /// The full line, without a trailing newline.
    pub fn render(&self) -> String {
        let args: Vec<String> = self
            .dag
            .closed_subgraphs()
            .into_iter()
            .map(|c| format!("U{}", subscript(&self.argument(c))))
            .collect();
        let mut line = format!("X{}=f({})", subscript(&self.entry()), args.join(","));
        let cons = self.constraints();
        if !cons.is_empty() {
            line.push_str(&format!("  [{}]", cons.join(", ")));
        }
        line
    }
}

pub fn render(dag: &Dag, clic: &Clic) -> String {
    Template::new(dag, clic).render()
}
