mod common;

use alcove_atlas::alcove::{check_alcove, HypersimplexSpec};
use alcove_atlas::bijections::{
    alc_i, facet_word, is_boundary_word, pair_i, word1, word1_inverse, words_i, words_i_inverse,
};
use alcove_atlas::combinatorics::{eulerian_set, Permutation, Word};
use alcove_atlas::enumerate::{enumerate_dilated_alcoves, Strategy as Enumeration};
use alcove_atlas::graph::{dual_graph_from_alcoves, graph_compose, Connector, LabeledGraph, VertexLabel};
use alcove_atlas::iso::graphs_isomorphic;
use alcove_atlas::sorted::{decorate, is_sorted, multisets_from_points};
use proptest::prelude::*;

fn word_strategy() -> impl Strategy<Value = Word> {
    (1u32..=6, 1usize..=6).prop_flat_map(|(r, d)| {
        prop::collection::vec(1..=r, d).prop_map(move |letters| Word::new(letters, r).unwrap())
    })
}

fn random_graph(max: usize) -> impl Strategy<Value = LabeledGraph> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..2 * n).prop_map(move |pairs| {
            let mut g = LabeledGraph::new((0..n).map(VertexLabel::Alcove).collect());
            for (u, v) in pairs {
                if u != v {
                    g.add_edge(u, v, None).unwrap();
                }
            }
            g
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn word1_roundtrips_on_large_simplices(w in word_strategy()) {
        let a = word1_inverse(&w).unwrap();
        prop_assert_eq!(word1(&a).unwrap(), w);
        prop_assert!(is_sorted(&multisets_from_points(a.vertices()).unwrap()).is_some());
    }

    #[test]
    fn words_labels_roundtrip(r in 1u32..=4, d in 2usize..=5, seed in any::<u64>()) {
        let i = (seed % d as u64) as u32 + 1;
        let spec = HypersimplexSpec::new(r, i, d).unwrap();
        let perms = eulerian_set(d, i as usize).unwrap();
        let tau = &perms[(seed / 7) as usize % perms.len()];
        let letters: Vec<u32> = (0..d).map(|k| ((seed >> (3 * k)) % u64::from(r)) as u32 + 1).collect();
        let w = Word::new(letters, r).unwrap();
        let a = words_i_inverse(&w, tau, &spec).unwrap();
        let back = words_i(&a).unwrap();
        prop_assert_eq!(&back.word, &w);
        prop_assert_eq!(&back.perm, tau);
        let p = pair_i(&a);
        prop_assert_eq!(alc_i(&p.comp, &p.perm, &spec).unwrap(), a);
    }

    #[test]
    fn boundary_words_have_facet_words(w in word_strategy()) {
        for j in 1..=w.len() + 1 {
            if is_boundary_word(&w, j) {
                prop_assert_eq!(facet_word(&w, j).unwrap().len() + 1, w.len());
            } else {
                prop_assert!(facet_word(&w, j).is_err());
            }
        }
    }

    #[test]
    fn identity_connectors_give_cartesian_product(g in random_graph(5), h in random_graph(5)) {
        let m = h.vertex_count();
        let c = graph_compose(&g, &h, &Connector::identity(&g, m)).unwrap();
        for x in 0..g.vertex_count() {
            for y in 0..g.vertex_count() {
                for a in 0..m {
                    for b in 0..m {
                        let product = (x == y && h.has_edge(a, b)) || (a == b && g.has_edge(x, y));
                        prop_assert_eq!(c.has_edge(x * m + a, y * m + b), product);
                    }
                }
            }
        }
    }

    #[test]
    fn isomorphism_search_finds_relabelings(g in random_graph(9), seed in any::<u64>()) {
        let n = g.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for k in (1..n).rev() {
            perm.swap(k, (s % (k as u64 + 1)) as usize);
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        }
        let mut h = LabeledGraph::new(g.labels().to_vec());
        for ((u, v), c) in g.edges() {
            h.add_edge(perm[u], perm[v], c).unwrap();
        }
        match graphs_isomorphic(&g, &h) {
            alcove_atlas::iso::Isomorphism::Found { map } => {
                prop_assert!(alcove_atlas::graph::check_labeling_isomorphism(&map, &g, &h).unwrap())
            }
            other => prop_assert!(false, "{:?}", other),
        }
    }
}

#[test]
fn every_dual_graph_is_connected_and_colored() {
    for r in 1..=3 {
        for d in 1..=4 {
            for i in 1..=d as u32 {
                let spec = HypersimplexSpec::new(r, i, d).unwrap();
                let alcoves = enumerate_dilated_alcoves(&spec, Enumeration::Pairs).unwrap();
                let g = dual_graph_from_alcoves(&alcoves).unwrap();
                assert!(g.is_connected(), "{spec}");
                assert!(g.is_colored(), "{spec}");
                for ((u, v), _) in g.edges() {
                    assert!(alcoves[u].is_adjacent(&alcoves[v]));
                }
            }
        }
    }
}

#[test]
fn alcove_vertices_form_decorated_matrices() {
    let spec = HypersimplexSpec::new(3, 2, 4).unwrap();
    for a in enumerate_dilated_alcoves(&spec, Enumeration::Words).unwrap() {
        assert_eq!(check_alcove(a.vertices(), &spec.polytope()).unwrap(), a.vertices());
        let m = decorate(&multisets_from_points(a.vertices()).unwrap()).unwrap();
        assert_eq!(m.max_entry() as usize, spec.dim() + 1);
        assert_eq!(a.mark_columns().len(), spec.dim());
    }
}

#[test]
fn eulerian_oracle_matches_descent_classes() {
    for d in 1..=6 {
        for j in 1..=d {
            let set = eulerian_set(d, j).unwrap();
            assert_eq!(set.len() as u64, common::eulerian(d, j));
            assert!(set.iter().all(|p: &Permutation| p.descents() + 1 == j));
        }
    }
}
