//! Non-commuting graphs: construction, multipartite decomposition, exact
//! clique number, isomorphism with verified certificates, and export.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::structure::center;

pub const DEFAULT_CLIQUE_CAP: usize = 200;
pub const DEFAULT_ISO_CAP: usize = 2000;

/// A simple undirected graph whose vertices carry group-element labels.
///
/// Vertices are addressed by position `0..vertex_count()`; `vertices()[i]` is
/// the element label of position `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NCGraph {
    source: String,
    vertices: Vec<usize>,
    adjacency: Vec<FixedBitSet>,
    degrees: Vec<usize>,
}

/// The graph on `G \ Z(G)` joining non-commuting pairs.
pub fn noncommuting_graph(g: &FiniteGroup) -> Result<NCGraph> {
    let z = center(g);
    if z.is_whole() {
        return Err(Error::AbelianGroup(g.name().to_string()));
    }
    let vertices: Vec<usize> = g.elements().filter(|&x| !z.contains(x)).collect();
    let n = vertices.len();
    let mut adjacency = vec![FixedBitSet::with_capacity(n); n];
    for i in 0..n {
        for j in i + 1..n {
            if !g.commutes(vertices[i], vertices[j]) {
                adjacency[i].insert(j);
                adjacency[j].insert(i);
            }
        }
    }
    Ok(NCGraph::from_parts(g.name().to_string(), vertices, adjacency))
}

impl NCGraph {
    /// Builds a graph from position-based edges. Rejects loops and
    /// out-of-range endpoints; duplicate edges collapse.
    pub fn from_edges(source: impl Into<String>, vertices: Vec<usize>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = vertices.len();
        let mut adjacency = vec![FixedBitSet::with_capacity(n); n];
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::Internal(format!("bad edge ({u}, {v}) on {n} vertices")));
            }
            adjacency[u].insert(v);
            adjacency[v].insert(u);
        }
        Ok(Self::from_parts(source.into(), vertices, adjacency))
    }

    fn from_parts(source: String, vertices: Vec<usize>, adjacency: Vec<FixedBitSet>) -> Self {
        let degrees = adjacency.iter().map(|row| row.count_ones(..)).collect();
        Self { source, vertices, adjacency, degrees }
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn edge_count(&self) -> usize {
        self.degrees.iter().sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.adjacency[v]
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    /// Position of a group element among the vertices.
    pub fn position_of(&self, element: usize) -> Option<usize> {
        self.vertices.binary_search(&element).ok()
    }

    /// Edges as sorted position pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, row) in self.adjacency.iter().enumerate() {
            out.extend(row.ones().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph \"{}\" {{", self.source.replace('"', "\\\""));
        for v in &self.vertices {
            let _ = writeln!(out, "  {v};");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {} -- {};", self.vertices[u], self.vertices[v]);
        }
        out.push_str("}\n");
        out
    }

    /// `{"source", "vertices", "degrees", "edges"}` with element labels and a
    /// sorted edge list.
    pub fn to_json(&self) -> serde_json::Value {
        let edges: Vec<[usize; 2]> = self.edges().into_iter().map(|(u, v)| [self.vertices[u], self.vertices[v]]).collect();
        serde_json::json!({
            "source": self.source,
            "vertices": self.vertices,
            "degrees": self.degrees,
            "edges": edges,
        })
    }
}

/// Parts of a complete multipartite graph as sorted position lists, ordered
/// by (size, smallest member); `None` when the graph is not complete
/// multipartite.
pub fn multipartite_partition(g: &NCGraph) -> Option<Vec<Vec<usize>>> {
    let n = g.vertex_count();
    let mut part_of = vec![usize::MAX; n];
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        if part_of[v] != usize::MAX {
            continue;
        }
        // the closed non-neighborhood of v must be an equivalence class
        let mut class = g.neighbors(v).clone();
        class.toggle_range(..);
        let members: Vec<usize> = class.ones().collect();
        for &u in &members {
            if part_of[u] != usize::MAX {
                return None;
            }
            let mut other = g.neighbors(u).clone();
            other.toggle_range(..);
            if other != class {
                return None;
            }
            part_of[u] = parts.len();
        }
        parts.push(members);
    }
    parts.sort_by(|a, b| (a.len(), a[0]).cmp(&(b.len(), b[0])));
    Some(parts)
}

/// Part sizes, ascending, if the graph is complete multipartite.
pub fn multipartite_parts(g: &NCGraph) -> Option<Vec<usize>> {
    multipartite_partition(g).map(|parts| parts.iter().map(Vec::len).collect())
}

pub fn max_clique(g: &NCGraph) -> Result<usize> {
    max_clique_capped(g, DEFAULT_CLIQUE_CAP).map(|c| c.len())
}

/// A maximum clique (positions, ascending) by branch and bound with a
/// greedy-coloring bound.
pub fn max_clique_capped(g: &NCGraph, cap: usize) -> Result<Vec<usize>> {
    let n = g.vertex_count();
    if n > cap {
        return Err(Error::SizeLimitExceeded { size: n, limit: cap });
    }
    let mut candidates = FixedBitSet::with_capacity(n);
    candidates.insert_range(..);
    let mut best = Vec::new();
    expand_clique(g, candidates, &mut Vec::new(), &mut best);
    best.sort_unstable();
    Ok(best)
}

fn expand_clique(g: &NCGraph, mut candidates: FixedBitSet, current: &mut Vec<usize>, best: &mut Vec<usize>) {
    let colored = color_order(g, &candidates);
    for &(v, color) in colored.iter().rev() {
        if current.len() + color <= best.len() {
            return;
        }
        current.push(v);
        let mut next = candidates.clone();
        next.intersect_with(g.neighbors(v));
        if next.is_clear() {
            if current.len() > best.len() {
                *best = current.clone();
            }
        } else {
            expand_clique(g, next, current, best);
        }
        current.pop();
        candidates.set(v, false);
    }
}

/// Greedy sequential coloring; vertices come out in non-decreasing color.
fn color_order(g: &NCGraph, candidates: &FixedBitSet) -> Vec<(usize, usize)> {
    let mut uncolored = candidates.clone();
    let mut out = Vec::with_capacity(candidates.count_ones(..));
    let mut color = 0;
    while !uncolored.is_clear() {
        color += 1;
        let mut available = uncolored.clone();
        while let Some(v) = available.minimum() {
            available.set(v, false);
            available.difference_with(g.neighbors(v));
            uncolored.set(v, false);
            out.push((v, color));
        }
    }
    out
}

/// A vertex bijection between two graphs, by position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoMap {
    pub forward: Vec<usize>,
}

impl IsoMap {
    pub fn identity(n: usize) -> Self {
        Self { forward: (0..n).collect() }
    }

    /// Exhaustive certificate check: bijective and adjacency-preserving in
    /// both directions over every vertex pair.
    pub fn verify(&self, from: &NCGraph, to: &NCGraph) -> bool {
        let n = from.vertex_count();
        if self.forward.len() != n || to.vertex_count() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &w in &self.forward {
            if w >= n || std::mem::replace(&mut hit[w], true) {
                return false;
            }
        }
        (0..n).all(|u| (0..n).all(|v| from.is_adjacent(u, v) == to.is_adjacent(self.forward[u], self.forward[v])))
    }

    pub fn inverse(&self) -> Self {
        let mut backward = vec![0; self.forward.len()];
        for (u, &w) in self.forward.iter().enumerate() {
            backward[w] = u;
        }
        Self { forward: backward }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &IsoMap) -> Self {
        Self { forward: self.forward.iter().map(|&w| next.forward[w]).collect() }
    }

    /// The map on group-element labels.
    pub fn element_pairs(&self, from: &NCGraph, to: &NCGraph) -> Vec<(usize, usize)> {
        self.forward.iter().enumerate().map(|(u, &w)| (from.vertices[u], to.vertices[w])).collect()
    }
}

pub fn are_isomorphic(a: &NCGraph, b: &NCGraph) -> Result<Option<IsoMap>> {
    are_isomorphic_capped(a, b, DEFAULT_ISO_CAP)
}

/// Decides isomorphism and returns a verified certificate.
///
/// Complete multipartite graphs are matched part to part. Other graphs go
/// through joint color refinement followed by individualization and
/// backtracking over candidate targets in ascending order.
pub fn are_isomorphic_capped(a: &NCGraph, b: &NCGraph, cap: usize) -> Result<Option<IsoMap>> {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() || sorted(a.degrees()) != sorted(b.degrees()) {
        return Ok(None);
    }
    let found = match (multipartite_partition(a), multipartite_partition(b)) {
        (Some(pa), Some(pb)) => match_parts(a.vertex_count(), &pa, &pb),
        (None, None) => {
            let size = a.vertex_count();
            if size > cap {
                return Err(Error::SizeLimitExceeded { size, limit: cap });
            }
            let mut ca: Vec<u32> = a.degrees().iter().map(|&d| d as u32).collect();
            let mut cb: Vec<u32> = b.degrees().iter().map(|&d| d as u32).collect();
            if refine(a, b, &mut ca, &mut cb) {
                individualize(a, b, ca, cb)
            } else {
                None
            }
        }
        _ => None,
    };
    match found {
        Some(map) if !map.verify(a, b) => Err(Error::InvalidIso(format!("{} -> {}", a.source(), b.source()))),
        other => Ok(other),
    }
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

fn match_parts(n: usize, pa: &[Vec<usize>], pb: &[Vec<usize>]) -> Option<IsoMap> {
    if pa.iter().map(Vec::len).ne(pb.iter().map(Vec::len)) {
        return None;
    }
    let mut forward = vec![0; n];
    for (x, y) in pa.iter().zip(pb) {
        for (&u, &w) in x.iter().zip(y) {
            forward[u] = w;
        }
    }
    Some(IsoMap { forward })
}

/// Refines both colorings jointly to a stable partition. Returns false when
/// the color histograms of the two graphs differ.
fn refine(a: &NCGraph, b: &NCGraph, ca: &mut Vec<u32>, cb: &mut Vec<u32>) -> bool {
    let mut classes = distinct(ca, cb);
    loop {
        let sa = signatures(a, ca);
        let sb = signatures(b, cb);
        let mut ids: BTreeMap<&(u32, Vec<u32>), u32> = BTreeMap::new();
        for s in sa.iter().chain(&sb) {
            ids.insert(s, 0);
        }
        for (i, id) in ids.values_mut().enumerate() {
            *id = i as u32;
        }
        *ca = sa.iter().map(|s| ids[s]).collect();
        *cb = sb.iter().map(|s| ids[s]).collect();
        let now = ids.len();
        if now == classes {
            break;
        }
        classes = now;
    }
    sorted_u32(ca) == sorted_u32(cb)
}

fn signatures(g: &NCGraph, colors: &[u32]) -> Vec<(u32, Vec<u32>)> {
    (0..g.vertex_count())
        .map(|v| {
            let mut around: Vec<u32> = g.neighbors(v).ones().map(|u| colors[u]).collect();
            around.sort_unstable();
            (colors[v], around)
        })
        .collect()
}

fn distinct(ca: &[u32], cb: &[u32]) -> usize {
    let mut all: Vec<u32> = ca.iter().chain(cb).copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

fn sorted_u32(v: &[u32]) -> Vec<u32> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

fn individualize(a: &NCGraph, b: &NCGraph, ca: Vec<u32>, cb: Vec<u32>) -> Option<IsoMap> {
    let mut cell_sizes: HashMap<u32, usize> = HashMap::new();
    for &c in &ca {
        *cell_sizes.entry(c).or_default() += 1;
    }
    let target = cell_sizes.iter().filter(|(_, &s)| s > 1).min_by_key(|(&c, &s)| (s, c)).map(|(&c, _)| c);
    let Some(cell) = target else {
        // discrete: the coloring determines the map
        let mut by_color: HashMap<u32, usize> = HashMap::new();
        for (w, &c) in cb.iter().enumerate() {
            by_color.insert(c, w);
        }
        let map = IsoMap { forward: ca.iter().map(|c| by_color[c]).collect() };
        return map.verify(a, b).then_some(map);
    };
    let v = ca.iter().position(|&c| c == cell).expect("cell is non-empty");
    let fresh = ca.iter().chain(&cb).copied().max().unwrap_or(0) + 1;
    for w in (0..cb.len()).filter(|&w| cb[w] == cell) {
        let mut na = ca.clone();
        let mut nb = cb.clone();
        na[v] = fresh;
        nb[w] = fresh;
        if refine(a, b, &mut na, &mut nb) {
            if let Some(map) = individualize(a, b, na, nb) {
                return Some(map);
            }
        }
    }
    None
}

/// Isomorphism invariants; equal fingerprints are necessary, not sufficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fingerprint {
    pub vertex_count: usize,
    pub degrees: Vec<usize>,
    pub parts: Option<Vec<usize>>,
    pub edge_count: usize,
    pub triangle_count: u64,
}

pub fn fingerprint(g: &NCGraph) -> Fingerprint {
    let mut triangles = 0u64;
    for (u, v) in g.edges() {
        let mut common = g.neighbors(u).clone();
        common.intersect_with(g.neighbors(v));
        triangles += common.count_ones(..) as u64;
    }
    Fingerprint {
        vertex_count: g.vertex_count(),
        degrees: sorted(g.degrees()),
        parts: multipartite_parts(g),
        edge_count: g.edge_count(),
        triangle_count: triangles / 3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::parse_group_address;

    fn graph(addr: &str) -> NCGraph {
        noncommuting_graph(&parse_group_address(addr).unwrap()).unwrap()
    }

    fn cycle(n: usize) -> NCGraph {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        NCGraph::from_edges("cycle", (0..n).collect(), &edges).unwrap()
    }

    #[test]
    fn small_graphs() {
        let s3 = graph("symmetric:3");
        assert_eq!(s3.vertex_count(), 5);
        assert_eq!(sorted(s3.degrees()), vec![3, 3, 4, 4, 4]);
        let d4 = graph("dihedral:4");
        assert_eq!(d4.vertex_count(), 6);
        assert!(d4.degrees().iter().all(|&d| d == 4));
        assert_eq!(d4.edge_count(), 12);
        let h = graph("heisenberg:3");
        assert_eq!(h.vertex_count(), 24);
        assert!(h.degrees().iter().all(|&d| d == 18));
        assert!(matches!(noncommuting_graph(&parse_group_address("cyclic:3").unwrap()), Err(Error::AbelianGroup(_))));
    }

    #[test]
    fn parts() {
        assert_eq!(multipartite_parts(&graph("dihedral:4")), Some(vec![2, 2, 2]));
        assert_eq!(multipartite_parts(&graph("dihedral:8")), Some(vec![2, 2, 2, 2, 6]));
        assert_eq!(multipartite_parts(&graph("symmetric:4")), None);
        assert_eq!(multipartite_parts(&cycle(5)), None);
    }

    #[test]
    fn cliques() {
        assert_eq!(max_clique(&graph("dihedral:4")).unwrap(), 3);
        assert_eq!(max_clique(&graph("symmetric:3")).unwrap(), 4);
        assert_eq!(max_clique(&graph("gl2:3")).unwrap(), 13);
        assert_eq!(max_clique(&cycle(5)).unwrap(), 2);
        assert_eq!(max_clique_capped(&graph("gl2:3"), 10).unwrap_err(), Error::SizeLimitExceeded { size: 46, limit: 10 });
    }

    #[test]
    fn clique_witness_is_a_clique() {
        let g = graph("symmetric:4");
        let clique = max_clique_capped(&g, 200).unwrap();
        for (i, &u) in clique.iter().enumerate() {
            for &v in &clique[i + 1..] {
                assert!(g.is_adjacent(u, v));
            }
        }
    }

    #[test]
    fn isomorphism() {
        let (d4, q8) = (graph("dihedral:4"), graph("dicyclic:2"));
        let iso = are_isomorphic(&d4, &q8).unwrap().unwrap();
        assert!(iso.verify(&d4, &q8));
        let s3 = graph("symmetric:3");
        assert_eq!(are_isomorphic(&s3, &s3).unwrap(), Some(IsoMap::identity(5)));
        assert_eq!(are_isomorphic(&d4, &cycle(6)).unwrap(), None);
        assert_eq!(are_isomorphic(&d4, &s3).unwrap(), None);
    }

    #[test]
    fn general_path_isomorphism() {
        let s4 = graph("symmetric:4");
        let again = graph("symmetric:4");
        let iso = are_isomorphic(&s4, &again).unwrap().unwrap();
        assert!(iso.verify(&s4, &again));
        // relabel S4's graph by reversing positions
        let n = s4.vertex_count();
        let edges: Vec<(usize, usize)> = s4.edges().into_iter().map(|(u, v)| (n - 1 - u, n - 1 - v)).collect();
        let flipped = NCGraph::from_edges("flipped", s4.vertices().to_vec(), &edges).unwrap();
        let iso = are_isomorphic(&s4, &flipped).unwrap().unwrap();
        assert!(iso.verify(&s4, &flipped));
        assert_eq!(are_isomorphic_capped(&s4, &flipped, 5).unwrap_err(), Error::SizeLimitExceeded { size: 23, limit: 5 });
        // C6 vs two triangles: same degrees, different graphs
        let triangles = NCGraph::from_edges("2K3", (0..6).collect(), &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(are_isomorphic(&cycle(6), &triangles).unwrap(), None);
    }

    #[test]
    fn fingerprints() {
        assert_eq!(fingerprint(&graph("dihedral:4")), fingerprint(&graph("dicyclic:2")));
        assert_ne!(fingerprint(&graph("dihedral:4")).vertex_count, fingerprint(&graph("symmetric:3")).vertex_count);
        let f = fingerprint(&graph("dihedral:8"));
        assert_eq!(f, fingerprint(&graph("dicyclic:4")));
        assert_eq!(f.parts, Some(vec![2, 2, 2, 2, 6]));
        // K_{2,2,2} has 8 triangles
        assert_eq!(fingerprint(&graph("dihedral:4")).triangle_count, 8);
    }

    #[test]
    fn exports() {
        let d4 = graph("dihedral:4");
        let dot = d4.to_dot();
        assert!(dot.starts_with("graph \"dihedral:4\" {\n"));
        assert_eq!(dot.matches(" -- ").count(), 12);
        assert_eq!(dot.lines().count(), 1 + 6 + 12 + 1);
        let json = d4.to_json();
        assert_eq!(json["edges"].as_array().unwrap().len(), 12);
        assert_eq!(json["vertices"], serde_json::json!([1, 3, 4, 5, 6, 7]));
    }
}
