//! Connecting sets between copies of `G_{r,d}` and the check that composing
//! them along the dual graph of `Delta_{i,d}` rebuilds the dual graph of
//! `r * Delta_{i,d}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::alcove::{Alcove, HypersimplexSpec};
use crate::bijections::{boundary_words, facet_word, hypersimplex_alcove, WordsLabeler};
use crate::combinatorics::{eulerian_set, Word};
use crate::enumerate::{enumerate_dilated_alcoves, Strategy};
use crate::error::{ensure, Error, Result};
use crate::graph::{
    build_g_rd, check_labeling_isomorphism, dual_graph_from_alcoves, facet_pairs, graph_compose, Connector,
    Edge, EdgeColor, HyperplaneColor, LabeledGraph, VertexLabel,
};
use crate::iso::{graphs_isomorphic_with_budget, Isomorphism, DEFAULT_BUDGET};

/// Everything needed to form `G<H>`.
#[derive(Debug, Clone)]
pub struct ConjectureSetup {
    pub spec: HypersimplexSpec,
    /// Dual graph of `Delta_{i,d}`, vertices are permutations in lex order,
    /// edges colored by hyperplane.
    pub outer: LabeledGraph,
    /// `G_{r,d}`.
    pub inner: LabeledGraph,
    pub connector: Connector,
    /// `(j_x, j_y)` for every outer edge `(x, y)`, `x < y`: the crossed facet
    /// of each cell, as a facet index of `r * Delta_{1,d}` in its vertex basis.
    pub facet_indices: BTreeMap<Edge, (usize, usize)>,
}

impl ConjectureSetup {
    /// Whether all edges of one color cross the same pair of facet indices.
    pub fn colors_consistent(&self) -> bool {
        let mut seen: BTreeMap<EdgeColor, BTreeSet<(usize, usize)>> = BTreeMap::new();
        for (&(x, y), &(jx, jy)) in &self.facet_indices {
            let color = self.outer.color(x, y).expect("outer graph is colored");
            seen.entry(color).or_default().insert((jx.min(jy), jx.max(jy)));
        }
        seen.values().all(|pairs| pairs.len() == 1)
    }

    /// Distinct hyperplane colors of the outer graph, sorted.
    pub fn colors(&self) -> Vec<HyperplaneColor> {
        let set: BTreeSet<HyperplaneColor> = self
            .outer
            .edges()
            .filter_map(|(_, c)| match c {
                Some(EdgeColor::Hyperplane(h)) => Some(h),
                _ => None,
            })
            .collect();
        set.into_iter().collect()
    }

    pub fn compose(&self) -> Result<LabeledGraph> {
        graph_compose(&self.outer, &self.inner, &self.connector)
    }
}

fn frame(spec: &HypersimplexSpec) -> Result<ConjectureSetup> {
    let (r, i, d) = (spec.dilation(), spec.level(), spec.dim());
    let perms = eulerian_set(d, i as usize)?;
    let cells: Vec<Alcove> = perms.iter().map(hypersimplex_alcove).collect();
    let outer = dual_graph_from_alcoves(&cells)?.relabel(perms.into_iter().map(VertexLabel::Perm).collect())?;
    let mut facet_indices = BTreeMap::new();
    for (x, kx, y, ky) in facet_pairs(&cells)? {
        facet_indices.insert((x, y), (kx + 1, ky + 1));
    }
    ensure!(
        facet_indices.len() == outer.edge_count(),
        Invariant,
        "facet identification disagrees with the dual graph of {}",
        HypersimplexSpec::hypersimplex(i, d)?
    );
    Ok(ConjectureSetup {
        spec: *spec,
        outer,
        inner: build_g_rd(r, d)?,
        connector: Connector::new(),
        facet_indices,
    })
}

fn boundary_sets(spec: &HypersimplexSpec) -> Result<Vec<Vec<Word>>> {
    (1..=spec.dim() + 1)
        .map(|j| boundary_words(spec.dilation(), spec.dim(), j))
        .collect()
}

/// The facet-word candidate: on the edge `{x, y}`, `X = W°_{j_x}`,
/// `Y = W°_{j_y}`, and `a` is joined to the `b` with the same facet word.
pub fn conjecture_connectors(spec: &HypersimplexSpec) -> Result<ConjectureSetup> {
    let mut setup = frame(spec)?;
    let boundary = boundary_sets(spec)?;
    for (&(x, y), &(jx, jy)) in &setup.facet_indices {
        let mut by_facet = BTreeMap::new();
        for w in &boundary[jy - 1] {
            by_facet.insert(facet_word(w, jy)?, w.rank());
        }
        let mut pairs = Vec::with_capacity(by_facet.len());
        for w in &boundary[jx - 1] {
            let f = facet_word(w, jx)?;
            let b = by_facet.get(&f).ok_or_else(|| {
                Error::Invariant(format!("facet word {f} of {w} has no partner across facets {jx}/{jy}"))
            })?;
            pairs.push((w.rank(), *b));
        }
        setup.connector.insert(x, y, pairs);
    }
    Ok(setup)
}

/// Identity connectors on `W°_j`, one `j` per hyperplane color.
pub fn color_assignment_connectors(
    spec: &HypersimplexSpec,
    assignment: &BTreeMap<HyperplaneColor, usize>,
) -> Result<ConjectureSetup> {
    let mut setup = frame(spec)?;
    let boundary = boundary_sets(spec)?;
    let edges: Vec<(Edge, Option<EdgeColor>)> = setup.outer.edges().collect();
    for ((x, y), color) in edges {
        let Some(EdgeColor::Hyperplane(h)) = color else {
            return Err(Error::Invariant(format!("outer edge ({x}, {y}) has no hyperplane color")));
        };
        let j = *assignment
            .get(&h)
            .ok_or_else(|| Error::InvalidInput(format!("no connecting set assigned to {h}")))?;
        let set = boundary
            .get(j.wrapping_sub(1))
            .ok_or_else(|| Error::InvalidInput(format!("facet index {j} outside [1, {}]", boundary.len())))?;
        setup.connector.insert(x, y, set.iter().map(|w| (w.rank(), w.rank())).collect());
    }
    Ok(setup)
}

/// Result of trying every per-color identity assignment.
#[derive(Debug, Clone, Serialize)]
pub struct AssignmentSearch {
    pub colors: Vec<String>,
    pub tried: u64,
    pub complete: bool,
    /// Facet indices (one per entry of `colors`) whose composition is
    /// isomorphic to the dual graph.
    pub holding: Vec<Vec<usize>>,
    pub undecided: u64,
}

pub fn search_color_assignments(
    spec: &HypersimplexSpec,
    dual: &LabeledGraph,
    limit: u64,
    budget: usize,
) -> Result<AssignmentSearch> {
    let colors = frame(spec)?.colors();
    let choices = spec.dim() as u64 + 1;
    let total = u32::try_from(colors.len())
        .ok()
        .and_then(|c| choices.checked_pow(c))
        .unwrap_or(u64::MAX);
    let tried = total.min(limit);
    let outcomes: Vec<(Vec<usize>, Option<bool>)> = (0..tried)
        .into_par_iter()
        .map(|code| {
            let mut c = code;
            let mut picks = Vec::with_capacity(colors.len());
            for _ in &colors {
                picks.push((c % choices) as usize + 1);
                c /= choices;
            }
            let assignment = colors.iter().copied().zip(picks.iter().copied()).collect();
            let composed = color_assignment_connectors(spec, &assignment)?.compose()?;
            Ok((picks, graphs_isomorphic_with_budget(dual, &composed, budget).is_isomorphic()))
        })
        .collect::<Result<_>>()?;
    let mut holding: Vec<Vec<usize>> =
        outcomes.iter().filter(|(_, o)| *o == Some(true)).map(|(p, _)| p.clone()).collect();
    holding.sort();
    Ok(AssignmentSearch {
        colors: colors.iter().map(ToString::to_string).collect(),
        tried,
        complete: tried == total,
        holding,
        undecided: outcomes.iter().filter(|(_, o)| o.is_none()).count() as u64,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    HoldsViaLabelMap,
    HoldsViaSearch,
    Fails,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::HoldsViaLabelMap => "holds-via-label-map",
            Verdict::HoldsViaSearch => "holds-via-search",
            Verdict::Fails => "fails",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    pub fn holds(&self) -> bool {
        matches!(self, Verdict::HoldsViaLabelMap | Verdict::HoldsViaSearch)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ConjectureOptions {
    pub max_alcoves: u64,
    pub search_budget: usize,
    /// Per-color assignments to try; 0 skips the assignment search.
    pub assignment_limit: u64,
}

impl Default for ConjectureOptions {
    fn default() -> Self {
        ConjectureOptions { max_alcoves: 20_000, search_budget: DEFAULT_BUDGET, assignment_limit: 0 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureReport {
    pub schema_version: u32,
    pub r: u32,
    pub i: u32,
    pub d: usize,
    pub verdict: Verdict,
    pub alcoves: u64,
    pub dual_edges: Option<usize>,
    pub composed_vertices: Option<usize>,
    pub composed_edges: Option<usize>,
    pub connecting_set_size: Option<usize>,
    pub colors_consistent: Option<bool>,
    /// Composed-graph vertex of each alcove, alcoves in enumeration order.
    pub witness: Option<Vec<usize>>,
    pub certificate: Option<String>,
    pub color_assignments: Option<AssignmentSearch>,
}

pub fn check_conjecture(spec: &HypersimplexSpec, options: &ConjectureOptions) -> Result<ConjectureReport> {
    let alcoves = spec.alcove_count()?;
    let mut report = ConjectureReport {
        schema_version: crate::SCHEMA_VERSION,
        r: spec.dilation(),
        i: spec.level(),
        d: spec.dim(),
        verdict: Verdict::Inconclusive,
        alcoves,
        dual_edges: None,
        composed_vertices: None,
        composed_edges: None,
        connecting_set_size: None,
        colors_consistent: None,
        witness: None,
        certificate: None,
        color_assignments: None,
    };
    if alcoves > options.max_alcoves {
        report.certificate = Some(format!("{alcoves} alcoves exceeds the limit of {}", options.max_alcoves));
        return Ok(report);
    }

    let setup = conjecture_connectors(spec)?;
    let composed = setup.compose()?;
    report.composed_vertices = Some(composed.vertex_count());
    report.composed_edges = Some(composed.edge_count());
    report.connecting_set_size = setup.connector.iter().map(|(_, p)| p.len()).max();
    report.colors_consistent = Some(setup.colors_consistent());

    let found = enumerate_dilated_alcoves(spec, Strategy::Words)?;
    let dual = dual_graph_from_alcoves(&found)?;
    report.dual_edges = Some(dual.edge_count());
    if options.assignment_limit > 0 {
        report.color_assignments =
            Some(search_color_assignments(spec, &dual, options.assignment_limit, options.search_budget)?);
    }

    let labeler = WordsLabeler::new(*spec)?;
    let m = setup.inner.vertex_count();
    let map: Vec<usize> = found
        .par_iter()
        .map(|a| {
            let label = labeler.label(a)?;
            let x = setup
                .outer
                .find(&VertexLabel::Perm(label.perm.clone()))
                .ok_or_else(|| Error::Invariant(format!("permutation {} is not a cell", label.perm)))?;
            Ok(x * m + label.word.rank())
        })
        .collect::<Result<_>>()?;
    if check_labeling_isomorphism(&map, &dual, &composed)? {
        report.verdict = Verdict::HoldsViaLabelMap;
        report.witness = Some(map);
        return Ok(report);
    }
    match graphs_isomorphic_with_budget(&dual, &composed, options.search_budget) {
        Isomorphism::Found { map } => {
            report.verdict = Verdict::HoldsViaSearch;
            report.witness = Some(map);
        }
        Isomorphism::Distinct { certificate } => {
            report.verdict = Verdict::Fails;
            report.certificate = Some(certificate);
        }
        Isomorphism::Unknown { explored } => {
            report.certificate = Some(format!("search budget exhausted after {explored} refinements"));
        }
    }
    Ok(report)
}
