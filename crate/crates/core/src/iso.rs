//! Exact isomorphism test for small graphs: joint color refinement on the
//! disjoint union, then individualization and backtracking.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::graph::LabeledGraph;

/// Refinement rounds allowed before a search gives up.
pub const DEFAULT_BUDGET: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Isomorphism {
    /// `map[v]` is the image in the second graph of vertex `v` of the first.
    Found { map: Vec<usize> },
    /// An invariant that differs between the two graphs.
    Distinct { certificate: String },
    /// The search budget ran out.
    Unknown { explored: usize },
}

impl Isomorphism {
    pub fn is_isomorphic(&self) -> Option<bool> {
        match self {
            Isomorphism::Found { .. } => Some(true),
            Isomorphism::Distinct { .. } => Some(false),
            Isomorphism::Unknown { .. } => None,
        }
    }
}

pub fn graphs_isomorphic(g: &LabeledGraph, h: &LabeledGraph) -> Isomorphism {
    graphs_isomorphic_with_budget(g, h, DEFAULT_BUDGET)
}

pub fn graphs_isomorphic_with_budget(g: &LabeledGraph, h: &LabeledGraph, budget: usize) -> Isomorphism {
    let n = g.vertex_count();
    if n != h.vertex_count() {
        return distinct(format!("vertex counts {} and {}", n, h.vertex_count()));
    }
    if g.edge_count() != h.edge_count() {
        return distinct(format!("edge counts {} and {}", g.edge_count(), h.edge_count()));
    }
    let mut adj = g.adjacency();
    adj.extend(h.adjacency().into_iter().map(|l| l.into_iter().map(|v| v + n).collect()));
    let mut degrees_g: Vec<usize> = adj[..n].iter().map(Vec::len).collect();
    let mut degrees_h: Vec<usize> = adj[n..].iter().map(Vec::len).collect();
    degrees_g.sort_unstable();
    degrees_h.sort_unstable();
    if degrees_g != degrees_h {
        return distinct("degree sequences differ".into());
    }
    let mut search = Search { adj, n, budget, explored: 0 };
    let start = vec![0u32; 2 * n];
    match search.run(start) {
        Step::Found(map) => Isomorphism::Found { map },
        Step::Dead if search.explored == 1 => {
            distinct("color refinement class sizes differ".into())
        }
        Step::Dead => distinct("exhaustive search found no isomorphism".into()),
        Step::OutOfBudget => Isomorphism::Unknown { explored: search.explored },
    }
}

fn distinct(certificate: String) -> Isomorphism {
    Isomorphism::Distinct { certificate }
}

enum Step {
    Found(Vec<usize>),
    Dead,
    OutOfBudget,
}

struct Search {
    adj: Vec<Vec<usize>>,
    n: usize,
    budget: usize,
    explored: usize,
}

impl Search {
    /// Refines until stable. Color ids are assigned in signature order, so
    /// they mean the same thing on both halves of the union.
    fn refine(&self, mut colors: Vec<u32>) -> Vec<u32> {
        let mut classes = count_classes(&colors);
        loop {
            let signatures: Vec<(u32, Vec<u32>)> = (0..colors.len())
                .map(|v| {
                    let mut around: Vec<u32> = self.adj[v].iter().map(|&u| colors[u]).collect();
                    around.sort_unstable();
                    (colors[v], around)
                })
                .collect();
            let mut ids: BTreeMap<&(u32, Vec<u32>), u32> = BTreeMap::new();
            for s in &signatures {
                ids.insert(s, 0);
            }
            for (k, id) in ids.values_mut().enumerate() {
                *id = k as u32;
            }
            colors = signatures.iter().map(|s| ids[s]).collect();
            let next = ids.len();
            if next == classes {
                return colors;
            }
            classes = next;
        }
    }

    fn run(&mut self, colors: Vec<u32>) -> Step {
        if self.explored >= self.budget {
            return Step::OutOfBudget;
        }
        self.explored += 1;
        let colors = self.refine(colors);
        let n = self.n;
        let mut sizes: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
        for (v, &c) in colors.iter().enumerate() {
            let e = sizes.entry(c).or_default();
            if v < n {
                e.0 += 1;
            } else {
                e.1 += 1;
            }
        }
        if sizes.values().any(|(a, b)| a != b) {
            return Step::Dead;
        }
        let target = sizes
            .iter()
            .filter(|(_, (a, _))| *a > 1)
            .min_by_key(|(c, (a, _))| (*a, **c))
            .map(|(c, _)| *c);
        let Some(target) = target else {
            let mut image = vec![0usize; sizes.len()];
            for v in n..2 * n {
                image[colors[v] as usize] = v - n;
            }
            let map: Vec<usize> = (0..n).map(|v| image[colors[v] as usize]).collect();
            return if self.preserves_edges(&map) { Step::Found(map) } else { Step::Dead };
        };
        let v = (0..n).find(|&v| colors[v] == target).expect("class is nonempty");
        let fresh = sizes.len() as u32;
        for u in n..2 * n {
            if colors[u] != target {
                continue;
            }
            let mut next = colors.clone();
            next[v] = fresh;
            next[u] = fresh;
            match self.run(next) {
                Step::Dead => {}
                other => return other,
            }
        }
        Step::Dead
    }

    fn preserves_edges(&self, map: &[usize]) -> bool {
        (0..self.n).all(|v| {
            let mut image: Vec<usize> = self.adj[v].iter().map(|&u| map[u] + self.n).collect();
            image.sort_unstable();
            image == self.adj[map[v] + self.n]
        })
    }
}

fn count_classes(colors: &[u32]) -> usize {
    let mut seen: Vec<u32> = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_g_rd, check_labeling_isomorphism, VertexLabel};

    fn graph(n: usize, edges: &[(usize, usize)]) -> LabeledGraph {
        let mut g = LabeledGraph::new((0..n).map(VertexLabel::Alcove).collect());
        for &(u, v) in edges {
            g.add_edge(u, v, None).unwrap();
        }
        g
    }

    #[test]
    fn self_isomorphism() {
        let g = build_g_rd(3, 3).unwrap();
        match graphs_isomorphic(&g, &g) {
            Isomorphism::Found { map } => assert!(check_labeling_isomorphism(&map, &g, &g).unwrap()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn path_is_not_triangle() {
        let path = graph(3, &[(0, 1), (1, 2)]);
        let triangle = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(graphs_isomorphic(&path, &triangle).is_isomorphic(), Some(false));
    }

    #[test]
    fn regular_graphs_need_search() {
        // 6-cycle against two triangles: same degrees, refinement cannot split.
        let hexagon = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]);
        let triangles = graph(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        assert_eq!(graphs_isomorphic(&hexagon, &triangles).is_isomorphic(), Some(false));
        let shuffled = graph(6, &[(3, 0), (0, 5), (5, 1), (1, 4), (4, 2), (2, 3)]);
        match graphs_isomorphic(&hexagon, &shuffled) {
            Isomorphism::Found { map } => {
                assert!(check_labeling_isomorphism(&map, &hexagon, &shuffled).unwrap())
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn petersen_against_relabeled_copy() {
        let outer: Vec<(usize, usize)> = (0..5).map(|k| (k, (k + 1) % 5)).collect();
        let inner: Vec<(usize, usize)> = (0..5).map(|k| (5 + k, 5 + (k + 2) % 5)).collect();
        let spokes: Vec<(usize, usize)> = (0..5).map(|k| (k, k + 5)).collect();
        let edges: Vec<_> = outer.iter().chain(&inner).chain(&spokes).copied().collect();
        let p = graph(10, &edges);
        let perm = [3, 7, 1, 9, 0, 4, 8, 2, 6, 5];
        let q = graph(10, &edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect::<Vec<_>>());
        let Isomorphism::Found { map } = graphs_isomorphic(&p, &q) else { panic!() };
        assert!(check_labeling_isomorphism(&map, &p, &q).unwrap());
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let g = build_g_rd(2, 3).unwrap();
        assert_eq!(graphs_isomorphic_with_budget(&g, &g, 0), Isomorphism::Unknown { explored: 0 });
    }

    #[test]
    fn deterministic_witness() {
        let g = build_g_rd(2, 3).unwrap();
        assert_eq!(graphs_isomorphic(&g, &g), graphs_isomorphic(&g, &g));
    }
}
