//! Cross-module invariants over the small-graph fixture and seeded random graphs.

use std::path::Path;

use num_bigint::BigInt;
use proptest::prelude::*;
use treespec::checks::tree_count;
use treespec::graph::{
    parse_graph6, random_connected, random_tree, read_graph6_lines, to_graph6, Orientation,
};
use treespec::linalg::{char_poly, integer_eigenvalues, IntMatrix, IntegerSpectrum};
use treespec::oracle::{coefficient_tables, spanning_tree_count_bruteforce};
use treespec::Graph;

fn atlas() -> Vec<Graph> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/connected_upto6.g6");
    read_graph6_lines(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn corpus() -> Vec<Graph> {
    let mut graphs = atlas();
    graphs.extend((0..60).map(|s| random_connected(3 + (s % 6) as usize, 0.45, s).unwrap()));
    // A few disconnected graphs: unions of two fixture graphs.
    let a = atlas();
    for (x, y) in [(3, 10), (5, 40), (2, 2), (60, 7)] {
        graphs.push(disjoint_union(&a[x], &a[y]));
    }
    graphs
}

fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let shift = a.order();
    let mut pairs = a.edges().to_vec();
    pairs.extend(b.edges().iter().map(|&(u, v)| (u + shift, v + shift)));
    Graph::from_edge_list(a.order() + b.order(), &pairs).unwrap()
}

fn spectrum(m: &IntMatrix) -> IntegerSpectrum {
    integer_eigenvalues(&char_poly(m).unwrap()).unwrap()
}

#[test]
fn line_graph_spectrum_is_shifted_signless_spectrum() {
    for g in corpus().iter().filter(|g| g.size() > 0) {
        let q: Vec<(BigInt, usize)> = spectrum(&g.signless_laplacian())
            .eigenvalues
            .into_iter()
            .filter(|(l, _)| *l != BigInt::from(0))
            .collect();
        let line: Vec<(BigInt, usize)> = spectrum(&g.line_graph().adjacency())
            .eigenvalues
            .into_iter()
            .filter(|(l, _)| *l != BigInt::from(-2))
            .map(|(l, m)| (l + 2, m))
            .collect();
        assert_eq!(q, line, "{}", to_graph6(g).unwrap());
    }
}

#[test]
fn reduced_tables_match_for_every_deleted_vertex() {
    for g in atlas().iter().filter(|g| g.order() >= 2).step_by(3) {
        for v1 in 0..g.order() {
            let t = coefficient_tables(g, v1).unwrap();
            let p_l1 = char_poly(&g.laplacian().minor_matrix(v1, v1).unwrap()).unwrap();
            let p_q1 = char_poly(&g.signless_laplacian().minor_matrix(v1, v1).unwrap()).unwrap();
            for j in 1..g.order() {
                assert_eq!(t.reduced_laplacian.get(j), p_l1.descending_coeff(j));
                assert_eq!(t.reduced_signless.get(j), p_q1.descending_coeff(j));
            }
        }
    }
}

#[test]
fn nullities_count_components() {
    for g in corpus() {
        assert_eq!(
            spectrum(&g.laplacian()).multiplicity_of(0),
            g.components().len()
        );
        assert_eq!(
            spectrum(&g.signless_laplacian()).multiplicity_of(0),
            g.bipartite_component_count()
        );
    }
}

#[test]
fn bipartite_graphs_share_laplacian_and_signless_spectra() {
    let mut checked = 0;
    for g in corpus()
        .into_iter()
        .chain((0..30).map(|s| random_tree(2 + s as usize % 12, s).unwrap()))
    {
        if g.is_connected() && g.is_bipartite() {
            assert_eq!(spectrum(&g.laplacian()), spectrum(&g.signless_laplacian()));
            checked += 1;
        }
    }
    assert!(checked > 30);
}

#[test]
fn bruteforce_tree_count_matches_cofactor() {
    for g in corpus() {
        let brute = spanning_tree_count_bruteforce(&g).unwrap();
        if g.is_connected() {
            assert_eq!(brute, tree_count(&g));
        } else {
            assert_eq!(brute, BigInt::from(0));
        }
    }
}

fn arbitrary_graph() -> impl Strategy<Value = Graph> {
    (1usize..12).prop_flat_map(|n| {
        let m = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), m).prop_map(move |bits| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|j| (0..j).map(move |i| (i, j)))
                .zip(bits)
                .filter_map(|(p, keep)| keep.then_some(p))
                .collect();
            Graph::from_edge_list(n, &pairs).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn graph6_round_trip(g in arbitrary_graph()) {
        prop_assert_eq!(parse_graph6(&to_graph6(&g).unwrap()).unwrap(), g);
    }

    #[test]
    fn incidence_products(g in arbitrary_graph(), flips in proptest::collection::vec(any::<bool>(), 66)) {
        prop_assume!(g.size() > 0);
        let x = g.incidence_unoriented().unwrap();
        prop_assert_eq!(x.mul(&x.transpose()), g.signless_laplacian());
        let o = Orientation::new(flips[..g.size()].to_vec());
        let d = g.incidence_oriented(&o).unwrap();
        prop_assert_eq!(d.mul(&d.transpose()), g.laplacian());
    }

    #[test]
    fn line_graph_size_is_sum_of_degree_pairs(g in arbitrary_graph()) {
        let expected: usize = g.degrees().iter().map(|d| d * d.saturating_sub(1) / 2).sum();
        let l = g.line_graph();
        prop_assert_eq!(l.order(), g.size());
        prop_assert_eq!(l.size(), expected);
    }

    #[test]
    fn signless_trace_and_linear_coefficient(g in arbitrary_graph()) {
        // p_1 = −2e and the constant term is det Q.
        let p = char_poly(&g.signless_laplacian()).unwrap();
        prop_assert_eq!(p.descending_coeff(1), BigInt::from(-2 * g.size() as i64));
        let sign = if g.order() % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(p.coeff(0) * sign, treespec::linalg::det(&g.signless_laplacian()).unwrap());
    }
}

/// Integer eigenvalues of a symmetric matrix read off a floating-point
/// eigensolver: values within 1e-6 of an integer, with counts.
fn numeric_integer_spectrum(m: &IntMatrix) -> Vec<(BigInt, usize)> {
    let n = m.rows();
    let dense = nalgebra::DMatrix::from_fn(n, n, |r, c| i64::try_from(m.get(r, c)).unwrap() as f64);
    let mut out: Vec<(BigInt, usize)> = Vec::new();
    let mut values: Vec<f64> = dense
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .collect();
    values.sort_by(|a, b| b.partial_cmp(a).unwrap());
    for v in values {
        let k = v.round();
        if (v - k).abs() < 1e-6 {
            let k = BigInt::from(k as i64);
            match out.last_mut() {
                Some((last, count)) if *last == k => *count += 1,
                _ => out.push((k, 1)),
            }
        }
    }
    out
}

#[test]
fn exact_spectra_agree_with_floating_point_eigensolver() {
    for g in corpus() {
        for m in [g.adjacency(), g.laplacian(), g.signless_laplacian()] {
            assert_eq!(
                spectrum(&m).eigenvalues,
                numeric_integer_spectrum(&m),
                "{}",
                to_graph6(&g).unwrap()
            );
        }
    }
}
