use dagex_core::dag::build_dag;
use dagex_core::{Dag, Error, VertexSet};
use proptest::prelude::*;

/// A random DAG on up to 8 vertices: edges go forward along a shuffled
/// order, so labels and topology are unrelated.
fn arb_dag() -> impl Strategy<Value = (Vec<String>, Vec<(String, String)>)> {
    (1usize..=8)
        .prop_flat_map(|n| {
            let order = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
            (
                Just(n),
                order,
                proptest::collection::vec(any::<bool>(), n * n),
            )
        })
        .prop_map(|(n, order, mask)| {
            let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if mask[i * n + j] {
                        edges.push((labels[order[i]].clone(), labels[order[j]].clone()));
                    }
                }
            }
            (labels, edges)
        })
}

/// Reachability by repeated relaxation over label indices.
fn reach_oracle(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut r = vec![vec![false; n]; n];
    for &(a, b) in edges {
        r[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    r
}

fn indexed(d: &Dag, edges: &[(String, String)]) -> Vec<(usize, usize)> {
    edges
        .iter()
        .map(|(a, b)| (d.vertex(a).unwrap(), d.vertex(b).unwrap()))
        .collect()
}

proptest! {
    #[test]
    fn closed_subgraphs_match_subset_scan((labels, edges) in arb_dag()) {
        let d = Dag::new(&labels, &edges).unwrap();
        let n = d.len();
        let r = reach_oracle(n, &indexed(&d, &edges));
        let mut expected: Vec<VertexSet> = (0u64..1 << n)
            .map(VertexSet::from_bits)
            .filter(|s| s.iter().all(|v| (0..n).all(|u| !r[u][v] || s.contains(u))))
            .collect();
        expected.sort_by(|a, b| {
            a.len().cmp(&b.len()).then_with(|| d.set_labels(*a).cmp(&d.set_labels(*b)))
        });
        prop_assert_eq!(d.closed_subgraphs(), expected);
    }

    #[test]
    fn edges_form_the_transitive_reduction((labels, edges) in arb_dag()) {
        let d = Dag::new(&labels, &edges).unwrap();
        let n = d.len();
        let r = reach_oracle(n, &indexed(&d, &edges));
        let mut expected = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if r[a][b] && !(0..n).any(|m| r[a][m] && r[m][b]) {
                    expected.push((a, b));
                }
            }
        }
        let mut got = d.edges().to_vec();
        got.sort();
        prop_assert_eq!(got, expected);
        for (a, row) in r.iter().enumerate() {
            for (b, &x) in row.iter().enumerate() {
                prop_assert_eq!(d.precedes(a, b), x);
            }
        }
    }

    #[test]
    fn reduction_is_idempotent((labels, edges) in arb_dag()) {
        let d = Dag::new(&labels, &edges).unwrap();
        let kept: Vec<(&str, &str)> =
            d.edges().iter().map(|&(a, b)| (d.label(a), d.label(b))).collect();
        let names: Vec<&str> = d.labels().iter().map(String::as_str).collect();
        let (again, report) = build_dag(&names, &kept).unwrap();
        prop_assert!(!report.changed());
        prop_assert_eq!(again, d);
    }

    #[test]
    fn closed_sets_form_a_lattice((labels, edges) in arb_dag()) {
        let d = Dag::new(&labels, &edges).unwrap();
        let closed = d.closed_subgraphs();
        for a in &closed {
            for b in &closed {
                prop_assert!(d.is_closed(a.union(*b)));
                prop_assert!(d.is_closed(a.intersection(*b)));
            }
        }
    }

    #[test]
    fn closures_have_a_unique_top((labels, edges) in arb_dag()) {
        let d = Dag::new(&labels, &edges).unwrap();
        for v in d.vertices() {
            let c = d.closure(v);
            prop_assert!(d.is_closed(c));
            prop_assert!(c.contains(v));
            prop_assert!(c.without(v).iter().all(|u| d.precedes(u, v)));
        }
    }

    #[test]
    fn back_edges_are_cycles((labels, edges) in arb_dag()) {
        let d = Dag::new(&labels, &edges).unwrap();
        if let Some(&(a, b)) = d.edges().first() {
            let mut with_back = edges.clone();
            with_back.push((d.label(b).to_string(), d.label(a).to_string()));
            prop_assert!(matches!(Dag::new(&labels, &with_back), Err(Error::CycleDetected(_))));
        }
    }
}
