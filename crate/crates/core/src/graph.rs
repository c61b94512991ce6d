//! Dual graphs of alcoved triangulations and the abstract graphs that
//! describe them.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use serde::Serialize;

use rayon::prelude::*;

use crate::alcove::{Alcove, HypersimplexSpec};
use crate::bijections::{sigma_i, word1, WordsLabeler};
use crate::combinatorics::{all_words, eulerian_set, Permutation, Word};
use crate::enumerate::{enumerate_dilated_alcoves, Strategy};
use crate::error::{ensure, Error, Result};
use crate::sorted::LatticePoint;

/// The arrangement hyperplane `x_{start+1} + ... + x_end = level`.
///
/// Intervals reaching the last coordinate are folded onto their complement
/// (which starts at the first coordinate), so every hyperplane has one key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HyperplaneColor {
    pub start: usize,
    pub end: usize,
    pub level: u32,
}

impl HyperplaneColor {
    fn interval_sum(&self, p: &LatticePoint) -> u32 {
        p.coords()[self.start..self.end].iter().sum()
    }
}

impl fmt::Display for HyperplaneColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in self.start + 1..=self.end {
            if k > self.start + 1 {
                f.write_str("+")?;
            }
            write!(f, "x{k}")?;
        }
        write!(f, "={}", self.level)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EdgeColor {
    /// Separating hyperplane of two adjacent alcoves.
    Hyperplane(HyperplaneColor),
    /// Separating hyperplane with its level forgotten.
    HyperplaneType { start: usize, end: usize },
    /// `w_1 ... w_d ~ (w_d + 1) w_1 ... w_{d-1}` in `G_{r,d}`.
    Rotation,
    /// Swap of the letters at positions `k`, `k + 1` in `G_{r,d}`.
    Transposition { k: usize },
    /// Swap of the values `k`, `k + 1` in a permutation.
    ValueSwap { k: usize },
    /// Cyclic shift of every value of a permutation.
    ValueShift,
    /// Edge between two copies in a composed graph.
    Cross,
}

impl fmt::Display for EdgeColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeColor::Hyperplane(h) => write!(f, "{h}"),
            EdgeColor::HyperplaneType { start, end } => write!(f, "({start},{end}]"),
            EdgeColor::Rotation => f.write_str("rotation"),
            EdgeColor::Transposition { k } => write!(f, "swap{k}"),
            EdgeColor::ValueSwap { k } => write!(f, "s{k}"),
            EdgeColor::ValueShift => f.write_str("shift"),
            EdgeColor::Cross => f.write_str("cross"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum VertexLabel {
    Word(Word),
    Perm(Permutation),
    Alcove(usize),
    Pair(Box<VertexLabel>, Box<VertexLabel>),
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Word(w) => write!(f, "{w}"),
            VertexLabel::Perm(p) => {
                f.write_str("[")?;
                for (k, v) in p.one_line().iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("]")
            }
            VertexLabel::Alcove(id) => write!(f, "A{id}"),
            VertexLabel::Pair(outer, inner) => write!(f, "{outer}:{inner}"),
        }
    }
}

pub type Edge = (usize, usize);

fn ordered(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A vertex-labeled, optionally edge-colored, simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    labels: Vec<VertexLabel>,
    edges: BTreeMap<Edge, Option<EdgeColor>>,
}

impl LabeledGraph {
    pub fn new(labels: Vec<VertexLabel>) -> Self {
        LabeledGraph { labels, edges: BTreeMap::new() }
    }

    pub fn add_edge(&mut self, u: usize, v: usize, color: Option<EdgeColor>) -> Result<()> {
        let n = self.labels.len();
        ensure!(u < n && v < n, InvalidInput, "edge ({u}, {v}) references a missing vertex");
        ensure!(u != v, InvalidInput, "self-loop at vertex {u}");
        self.edges.insert(ordered(u, v), color);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &VertexLabel {
        &self.labels[v]
    }

    pub fn edges(&self) -> impl Iterator<Item = (Edge, Option<EdgeColor>)> + '_ {
        self.edges.iter().map(|(&e, &c)| (e, c))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains_key(&ordered(u, v))
    }

    pub fn color(&self, u: usize, v: usize) -> Option<EdgeColor> {
        self.edges.get(&ordered(u, v)).copied().flatten()
    }

    pub fn is_colored(&self) -> bool {
        self.edges.values().all(Option::is_some)
    }

    pub fn find(&self, label: &VertexLabel) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.labels.len()];
        for &(u, v) in self.edges.keys() {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        let n = self.labels.len();
        if n == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == n
    }

    /// Replaces every hyperplane color by its level-free type.
    pub fn coarsen_colors(&self) -> LabeledGraph {
        let edges = self
            .edges
            .iter()
            .map(|(&e, &c)| {
                let c = match c {
                    Some(EdgeColor::Hyperplane(h)) => {
                        Some(EdgeColor::HyperplaneType { start: h.start, end: h.end })
                    }
                    other => other,
                };
                (e, c)
            })
            .collect();
        LabeledGraph { labels: self.labels.clone(), edges }
    }

    pub fn relabel(&self, labels: Vec<VertexLabel>) -> Result<LabeledGraph> {
        ensure!(
            labels.len() == self.labels.len(),
            InvalidInput,
            "relabeling needs {} labels",
            self.labels.len()
        );
        Ok(LabeledGraph { labels, edges: self.edges.clone() })
    }

    /// Graphviz rendering. Vertices are named by their label string; edges
    /// carry their color key as a label.
    pub fn to_dot(&self, name: &str) -> String {
        let mut palette: BTreeMap<EdgeColor, usize> = BTreeMap::new();
        for c in self.edges.values().flatten() {
            let next = palette.len();
            palette.entry(*c).or_insert(next);
        }
        const COLORS: [&str; 10] = [
            "black", "red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan4", "gray40",
        ];
        let mut out = String::new();
        let _ = writeln!(out, "graph {} {{", dot_id(name));
        for l in &self.labels {
            let _ = writeln!(out, "  {};", dot_id(&l.to_string()));
        }
        for (&(u, v), c) in &self.edges {
            let (a, b) = (dot_id(&self.labels[u].to_string()), dot_id(&self.labels[v].to_string()));
            match c {
                Some(c) => {
                    let hue = COLORS[palette[c] % COLORS.len()];
                    let _ = writeln!(out, "  {a} -- {b} [label={}, color={hue}];", dot_id(&c.to_string()));
                }
                None => {
                    let _ = writeln!(out, "  {a} -- {b};");
                }
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> GraphJson<'_> {
        GraphJson {
            schema_version: crate::SCHEMA_VERSION,
            vertices: self
                .labels
                .iter()
                .enumerate()
                .map(|(id, label)| JsonVertex { id, name: label.to_string(), label })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|(&(u, v), &color)| JsonEdge { u, v, color })
                .collect(),
        }
    }
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

#[derive(Debug, Serialize)]
pub struct GraphJson<'a> {
    pub schema_version: u32,
    pub vertices: Vec<JsonVertex<'a>>,
    pub edges: Vec<JsonEdge>,
}

#[derive(Debug, Serialize)]
pub struct JsonVertex<'a> {
    pub id: usize,
    pub name: String,
    pub label: &'a VertexLabel,
}

#[derive(Debug, Serialize)]
pub struct JsonEdge {
    pub u: usize,
    pub v: usize,
    pub color: Option<EdgeColor>,
}

/// Pairs of alcoves sharing a facet, with the vertex each one does not share
/// (as an index into its vertex list).
pub(crate) fn facet_pairs(alcoves: &[Alcove]) -> Result<Vec<(usize, usize, usize, usize)>> {
    let mut by_facet: HashMap<Vec<&LatticePoint>, Vec<(usize, usize)>> = HashMap::new();
    for (id, a) in alcoves.iter().enumerate() {
        for skip in 0..a.vertices().len() {
            let facet: Vec<&LatticePoint> = a
                .vertices()
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != skip)
                .map(|(_, v)| v)
                .collect();
            by_facet.entry(facet).or_default().push((id, skip));
        }
    }
    let mut pairs = Vec::new();
    for holders in by_facet.values() {
        match holders.as_slice() {
            [_] => {}
            [(a, ka), (b, kb)] => pairs.push((*a, *ka, *b, *kb)),
            _ => {
                return Err(Error::Invariant(format!(
                    "{} alcoves share one facet; input is not a triangulation",
                    holders.len()
                )))
            }
        }
    }
    pairs.sort_unstable();
    Ok(pairs)
}

/// The unique arrangement hyperplane through the common facet of two
/// adjacent alcoves.
pub fn separating_hyperplane(a: &Alcove, b: &Alcove) -> Result<HyperplaneColor> {
    let shared: Vec<&LatticePoint> = a.vertices().iter().filter(|v| b.vertices().contains(v)).collect();
    let own_a = a.vertices().iter().find(|v| !b.vertices().contains(v));
    let own_b = b.vertices().iter().find(|v| !a.vertices().contains(v));
    let (Some(p), Some(q)) = (own_a, own_b) else {
        return Err(Error::InvalidInput("alcoves are identical".into()));
    };
    ensure!(
        shared.len() + 1 == a.vertices().len(),
        InvalidInput,
        "alcoves {a} and {b} are not adjacent"
    );
    let d = a.spec().dim();
    let mut found = Vec::new();
    for start in 0..d {
        for end in start + 1..=d {
            let probe = HyperplaneColor { start, end, level: 0 };
            let level = probe.interval_sum(shared[0]);
            let h = HyperplaneColor { level, ..probe };
            if shared.iter().all(|v| h.interval_sum(v) == level)
                && h.interval_sum(p) != level
                && h.interval_sum(q) != level
            {
                found.push(h);
            }
        }
    }
    match found.as_slice() {
        [h] => Ok(*h),
        [] => Err(Error::Invariant(format!("no arrangement hyperplane separates {a} and {b}"))),
        _ => Err(Error::Invariant(format!(
            "{} arrangement hyperplanes contain the facet between {a} and {b}",
            found.len()
        ))),
    }
}

/// Dual graph of a set of alcoves: an edge joins two alcoves sharing `d`
/// vertices, colored by the hyperplane through the shared facet. Vertex `k`
/// is `alcoves[k]`.
pub fn dual_graph_from_alcoves(alcoves: &[Alcove]) -> Result<LabeledGraph> {
    let mut g = LabeledGraph::new((0..alcoves.len()).map(VertexLabel::Alcove).collect());
    for (a, _, b, _) in facet_pairs(alcoves)? {
        let h = separating_hyperplane(&alcoves[a], &alcoves[b])?;
        g.add_edge(a, b, Some(EdgeColor::Hyperplane(h)))?;
    }
    Ok(g)
}

/// Dual graph of `r * Delta_{i,d}` with vertices named by their labels:
/// words when `i = 1`, permutations when `r = 1`, and `(permutation, word)`
/// pairs otherwise. Returns the alcoves in vertex order.
pub fn labeled_dual_graph(spec: &HypersimplexSpec) -> Result<(Vec<Alcove>, LabeledGraph)> {
    let alcoves = enumerate_dilated_alcoves(spec, Strategy::Words)?;
    let labels: Vec<VertexLabel> = if spec.level() == 1 {
        alcoves.iter().map(|a| word1(a).map(VertexLabel::Word)).collect::<Result<_>>()?
    } else if spec.dilation() == 1 {
        alcoves.iter().map(|a| sigma_i(a).map(VertexLabel::Perm)).collect::<Result<_>>()?
    } else {
        let labeler = WordsLabeler::new(*spec)?;
        alcoves
            .par_iter()
            .map(|a| {
                let l = labeler.label(a)?;
                Ok(VertexLabel::Pair(Box::new(VertexLabel::Perm(l.perm)), Box::new(VertexLabel::Word(l.word))))
            })
            .collect::<Result<_>>()?
    };
    let graph = dual_graph_from_alcoves(&alcoves)?.relabel(labels)?;
    Ok((alcoves, graph))
}

/// `G_{r,d}` on the words of `[r]^d`; vertex `k` is the word of rank `k`.
pub fn build_g_rd(r: u32, d: usize) -> Result<LabeledGraph> {
    ensure!(r >= 1 && d >= 1, InvalidParameter, "G_(r,d) needs r, d >= 1");
    let words: Vec<Word> = all_words(r, d).collect();
    let mut g = LabeledGraph::new(words.iter().cloned().map(VertexLabel::Word).collect());
    for (u, w) in words.iter().enumerate() {
        let l = w.letters();
        if l[d - 1] < r {
            let mut rotated = Vec::with_capacity(d);
            rotated.push(l[d - 1] + 1);
            rotated.extend_from_slice(&l[..d - 1]);
            let v = Word::new(rotated, r)?.rank();
            g.add_edge(u, v, Some(EdgeColor::Rotation))?;
        }
        for k in 0..d.saturating_sub(1) {
            if l[k] != l[k + 1] {
                let mut swapped = l.to_vec();
                swapped.swap(k, k + 1);
                let v = Word::new(swapped, r)?.rank();
                g.add_edge(u, v, Some(EdgeColor::Transposition { k: k + 1 }))?;
            }
        }
    }
    Ok(g)
}

/// The graph on permutations of `[d]` with `i - 1` descents describing the
/// dual graph of `Delta_{i,d}`: `sigma ~ s_k sigma` (values `k`, `k + 1`
/// swapped), and `sigma ~ tau` when `tau` adds one to every value of
/// `sigma` cyclically (the value `d` becoming `1`).
pub fn permutation_dual_graph(level: u32, d: usize) -> Result<LabeledGraph> {
    let perms = eulerian_set(d, level as usize)?;
    let index: HashMap<&Permutation, usize> = perms.iter().enumerate().map(|(k, p)| (p, k)).collect();
    let mut g = LabeledGraph::new(perms.iter().cloned().map(VertexLabel::Perm).collect());
    let d32 = d as u32;
    for (u, p) in perms.iter().enumerate() {
        for k in 1..d32 {
            let swapped: Vec<u32> = p
                .one_line()
                .iter()
                .map(|&x| if x == k { k + 1 } else if x == k + 1 { k } else { x })
                .collect();
            if let Some(&v) = index.get(&Permutation::new(swapped)?) {
                g.add_edge(u, v, Some(EdgeColor::ValueSwap { k: k as usize }))?;
            }
        }
        let shifted: Vec<u32> = p.one_line().iter().map(|&x| x % d32 + 1).collect();
        if let Some(&v) = index.get(&Permutation::new(shifted)?) {
            if u != v {
                g.add_edge(u, v, Some(EdgeColor::ValueShift))?;
            }
        }
    }
    Ok(g)
}

/// Checks that `map` (vertex `v` of `g` goes to `map[v]` in `h`) is a
/// bijection carrying edges to edges in both directions.
pub fn check_labeling_isomorphism(map: &[usize], g: &LabeledGraph, h: &LabeledGraph) -> Result<bool> {
    let n = g.vertex_count();
    ensure!(
        map.len() == n && h.vertex_count() == n,
        InvalidInput,
        "vertex map must be total between graphs of equal order"
    );
    let mut hit = vec![false; n];
    for &t in map {
        ensure!(t < n && !hit[t], InvalidInput, "vertex map is not a bijection");
        hit[t] = true;
    }
    if g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    Ok(g.edges.keys().all(|&(u, v)| h.has_edge(map[u], map[v])))
}

/// Connecting sets and bijections for each edge `{x, y}` (`x < y`) of the
/// outer graph: pairs `(a, b)` join vertex `a` of the copy at `x` to vertex
/// `b` of the copy at `y`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Connector {
    links: BTreeMap<Edge, Vec<(usize, usize)>>,
}

impl Connector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, x: usize, y: usize, mut pairs: Vec<(usize, usize)>) {
        if x > y {
            for p in &mut pairs {
                *p = (p.1, p.0);
            }
        }
        pairs.sort_unstable();
        self.links.insert(ordered(x, y), pairs);
    }

    /// Identity bijections on the whole inner vertex set for every edge of
    /// `outer`: composing with these gives the Cartesian product.
    pub fn identity(outer: &LabeledGraph, inner_order: usize) -> Self {
        let mut c = Connector::new();
        for ((x, y), _) in outer.edges() {
            c.insert(x, y, (0..inner_order).map(|a| (a, a)).collect());
        }
        c
    }

    pub fn links(&self, x: usize, y: usize) -> Option<&[(usize, usize)]> {
        self.links.get(&ordered(x, y)).map(Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, &[(usize, usize)])> {
        self.links.iter().map(|(&e, v)| (e, v.as_slice()))
    }
}

/// `G<H>`: a copy of `h` at every vertex of `g`, copies joined along the
/// connector. Vertex `(x, a)` has index `x * |H| + a`.
pub fn graph_compose(g: &LabeledGraph, h: &LabeledGraph, connector: &Connector) -> Result<LabeledGraph> {
    let m = h.vertex_count();
    for ((x, y), pairs) in connector.iter() {
        ensure!(g.has_edge(x, y), InvalidInput, "connector given for non-edge ({x}, {y})");
        let mut left = BTreeSet::new();
        let mut right = BTreeSet::new();
        for &(a, b) in pairs {
            ensure!(a < m && b < m, InvalidInput, "connector on ({x}, {y}) references a missing vertex");
            ensure!(
                left.insert(a) && right.insert(b),
                InvalidInput,
                "connector on ({x}, {y}) is not a bijection"
            );
        }
    }
    let mut labels = Vec::with_capacity(g.vertex_count() * m);
    for outer in g.labels() {
        for inner in h.labels() {
            labels.push(VertexLabel::Pair(Box::new(outer.clone()), Box::new(inner.clone())));
        }
    }
    let mut out = LabeledGraph::new(labels);
    for x in 0..g.vertex_count() {
        for ((a, b), c) in h.edges() {
            out.add_edge(x * m + a, x * m + b, c)?;
        }
    }
    for ((x, y), color) in g.edges() {
        let pairs = connector
            .links(x, y)
            .ok_or_else(|| Error::InvalidInput(format!("no connector for edge ({x}, {y})")))?;
        for &(a, b) in pairs {
            out.add_edge(x * m + a, y * m + b, color.or(Some(EdgeColor::Cross)))?;
        }
    }
    Ok(out)
}
