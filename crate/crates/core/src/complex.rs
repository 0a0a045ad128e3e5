//! Enumeration of sphere classes and the sphere complex they span.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::cover::{Cover, Walk};
use crate::graph::ModelGraph;
use crate::sides::{self, SidesError};
use crate::sphere::{induced_circles, sphere_on, NormalSphere, SphereDocument};

/// Largest circle bound accepted by [`enumerate`].
pub const DEFAULT_CIRCLE_LIMIT: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
  #[error("circle bound {requested} exceeds the limit {limit}")]
  BoundTooLarge { requested: usize, limit: usize },
  #[error(transparent)]
  Sides(#[from] SidesError),
}

impl ComplexError {
  pub fn name(&self) -> &'static str {
    match self {
      ComplexError::BoundTooLarge { .. } => "BoundTooLarge",
      ComplexError::Sides(e) => e.name(),
    }
  }
}

/// Whether no translate of the sphere crosses it, i.e. it projects to an
/// embedded sphere in the base manifold. Uses the propagation labeling.
pub fn is_embedded(graph: &ModelGraph, s: &NormalSphere) -> Result<bool, SidesError> {
  let cover = Cover::new(graph);
  for g in sides::overlap_candidates(graph, s, s) {
    if g.is_identity() {
      continue;
    }
    let moved = s.translate_unchecked(&cover, &g);
    if sides::crossing_oracle(graph, s, &moved)?.crosses {
      return Ok(false);
    }
  }
  Ok(true)
}

/// Connected pants sets of the tree with at most `max_edges` adjacencies that
/// contain `root`.
fn rooted_subtrees(graph: &ModelGraph, root: &Walk, max_edges: usize) -> Vec<Vec<Walk>> {
  let mut all: BTreeSet<Vec<Walk>> = BTreeSet::new();
  let mut layer: BTreeSet<Vec<Walk>> = BTreeSet::from([vec![root.clone()]]);
  all.extend(layer.iter().cloned());
  for _ in 0..max_edges {
    let mut next = BTreeSet::new();
    for set in &layer {
      for w in set {
        for d in graph.darts_at(w.endpoint(graph)) {
          let v = w.extended(graph, d);
          if let Err(pos) = set.binary_search(&v) {
            let mut grown = set.clone();
            grown.insert(pos, v);
            next.insert(grown);
          }
        }
      }
    }
    all.extend(next.iter().cloned());
    layer = next;
  }
  all.into_iter().collect()
}

/// Every candidate sphere (subtree and bits) with at most `max_circles`
/// circles, in canonical form and deduplicated, before the embeddedness
/// filter. System classes are not included.
pub fn candidate_classes(graph: &ModelGraph, max_circles: usize) -> BTreeSet<NormalSphere> {
  let cover = Cover::new(graph);
  let domain = cover.fundamental_domain();
  let mut out = BTreeSet::new();
  for root in &domain {
    for set in rooted_subtrees(graph, root, max_circles) {
      let k = induced_circles(graph, &set).len();
      if k == 0 {
        continue;
      }
      for mask in 0u32..(1 << k) {
        let bits: Vec<bool> = (0..k).map(|i| mask >> i & 1 == 1).collect();
        let s = sphere_on(graph, &set, &bits).expect("grown subtrees are valid spheres");
        out.insert(s.canonical_with(&cover, &domain));
      }
    }
  }
  out
}

/// All sphere classes with at most `max_circles` circles: the system classes
/// first, then embedded normal spheres in canonical order.
pub fn enumerate(graph: &ModelGraph, max_circles: usize) -> Result<Vec<NormalSphere>, ComplexError> {
  enumerate_with_limit(graph, max_circles, DEFAULT_CIRCLE_LIMIT)
}

pub fn enumerate_with_limit(
  graph: &ModelGraph,
  max_circles: usize,
  limit: usize,
) -> Result<Vec<NormalSphere>, ComplexError> {
  if max_circles > limit {
    return Err(ComplexError::BoundTooLarge {
      requested: max_circles,
      limit,
    });
  }
  let mut out: Vec<NormalSphere> = graph.edges().map(|e| sides::system_class(graph, e)).collect();
  out.sort();
  for s in candidate_classes(graph, max_circles) {
    if is_embedded(graph, &s)? {
      out.push(s);
    }
  }
  Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereComplex {
  pub vertices: Vec<NormalSphere>,
  /// Pairs `(i, j)` with `i < j` and vanishing intersection number.
  pub edges: Vec<(usize, usize)>,
  pub max_circles: usize,
}

pub fn build_complex(graph: &ModelGraph, max_circles: usize) -> Result<SphereComplex, ComplexError> {
  let vertices = enumerate(graph, max_circles)?;
  let mut edges = Vec::new();
  for i in 0..vertices.len() {
    for j in i + 1..vertices.len() {
      if sides::intersection_number(graph, &vertices[i], &vertices[j])? == 0 {
        edges.push((i, j));
      }
    }
  }
  Ok(SphereComplex {
    vertices,
    edges,
    max_circles,
  })
}

/// Whether the classes span a simplex: every pair has intersection number 0.
/// Pairwise disjointness gives simultaneous disjointness, so this is also the
/// geometric condition.
pub fn is_simplex(graph: &ModelGraph, classes: &[NormalSphere]) -> Result<bool, SidesError> {
  for (i, a) in classes.iter().enumerate() {
    for b in &classes[i + 1..] {
      if sides::intersection_number(graph, a, b)? != 0 {
        return Ok(false);
      }
    }
  }
  Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexVertex {
  pub index: usize,
  pub circles: usize,
  pub sphere: SphereDocument,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexDocument {
  pub rank: usize,
  pub max_circles: usize,
  pub vertices: Vec<ComplexVertex>,
  pub edges: Vec<[usize; 2]>,
}

impl SphereComplex {
  pub fn has_edge(&self, i: usize, j: usize) -> bool {
    let key = (i.min(j), i.max(j));
    i != j && self.edges.binary_search(&key).is_ok()
  }

  pub fn to_document(&self, graph: &ModelGraph) -> ComplexDocument {
    ComplexDocument {
      rank: graph.rank(),
      max_circles: self.max_circles,
      vertices: self
        .vertices
        .iter()
        .enumerate()
        .map(|(index, s)| ComplexVertex {
          index,
          circles: s.circle_total(),
          sphere: s.to_document(graph),
        })
        .collect(),
      edges: self.edges.iter().map(|&(i, j)| [i, j]).collect(),
    }
  }

  pub fn to_json(&self, graph: &ModelGraph) -> String {
    serde_json::to_string_pretty(&self.to_document(graph)).expect("complex document serializes")
  }

  pub fn to_dot(&self, graph: &ModelGraph) -> String {
    let mut out = String::from("graph sphere_complex {\n");
    for (i, s) in self.vertices.iter().enumerate() {
      let label = match s {
        NormalSphere::System(v) => format!("sys {}", graph.edge_name(v.edge(graph))),
        NormalSphere::Surface(_) => format!("{} circles", s.circle_total()),
      };
      writeln!(out, "  s{i} [label=\"{i}: {label}\"];").expect("write to string");
    }
    for (i, j) in &self.edges {
      writeln!(out, "  s{i} -- s{j};").expect("write to string");
    }
    out.push_str("}\n");
    out
  }
}
