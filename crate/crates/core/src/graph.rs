//! The ambient manifold with a maximal sphere system, encoded as a trivalent
//! graph with darts.
//!
//! Vertices are the complementary pieces (3-punctured 3-spheres, "pants") and
//! edges are the system spheres. Every pants owns exactly three darts, one per
//! boundary sphere, and the `opposite` involution pairs the two sides of each
//! system sphere. Loops and multi-edges are allowed.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of a pants vertex. Indices follow the string order of identifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PantsId(pub(crate) u32);

/// Index of a dart. Indices follow the string order of identifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DartId(pub(crate) u32);

impl PantsId {
  pub fn index(self) -> usize {
    self.0 as usize
  }
}

impl DartId {
  pub fn index(self) -> usize {
    self.0 as usize
  }
}

/// A system sphere of the base manifold, named by the smaller of its two darts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub(crate) DartId);

impl EdgeId {
  pub fn dart(self) -> DartId {
    self.0
  }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
  #[error("vertex {vertex} has {count} darts, expected 3")]
  NonTrivalent { vertex: String, count: usize },
  #[error("dart {dart} is not paired with a different dart")]
  FixedDart { dart: String },
  #[error("dart {dart} appears in more than one pairing")]
  DoublePairing { dart: String },
  #[error("graph is disconnected")]
  Disconnected,
  #[error("rank {rank} is below 2")]
  RankTooSmall { rank: i64 },
  #[error("duplicate identifier {id}")]
  DuplicateId { id: String },
  #[error("unknown vertex {vertex} referenced by dart {dart}")]
  UnknownVertex { vertex: String, dart: String },
  #[error("unknown dart {dart}")]
  UnknownDart { dart: String },
  #[error("parse error at {at}: {message}")]
  ParseError { at: String, message: String },
}

impl GraphError {
  pub fn name(&self) -> &'static str {
    match self {
      GraphError::NonTrivalent { .. } => "NonTrivalent",
      GraphError::FixedDart { .. } => "FixedDart",
      GraphError::DoublePairing { .. } => "DoublePairing",
      GraphError::Disconnected => "Disconnected",
      GraphError::RankTooSmall { .. } => "RankTooSmall",
      GraphError::DuplicateId { .. } => "DuplicateId",
      GraphError::UnknownVertex { .. } => "UnknownVertex",
      GraphError::UnknownDart { .. } => "UnknownDart",
      GraphError::ParseError { .. } => "ParseError",
    }
  }
}

/// Families produced by [`ModelGraph::standard`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
  /// A necklace of doubled edges; rank 2 gives the theta graph.
  ThetaChain,
  /// A path with a loop at each end; rank 2 gives the dumbbell.
  DumbbellChain,
}

impl std::str::FromStr for Style {
  type Err = String;

  fn from_str(s: &str) -> Result<Self, Self::Err> {
    match s {
      "theta-chain" | "theta" => Ok(Style::ThetaChain),
      "dumbbell-chain" | "dumbbell" => Ok(Style::DumbbellChain),
      other => Err(format!("unknown style {other}")),
    }
  }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelGraph {
  pants_names: Vec<String>,
  dart_names: Vec<String>,
  dart_vertex: Vec<PantsId>,
  opposite: Vec<DartId>,
  vertex_darts: Vec<[DartId; 3]>,
  rank: usize,
}

impl ModelGraph {
  /// Builds and validates a graph from identifiers.
  ///
  /// `darts` lists `(dart, vertex)` attachments and `pairs` the dart
  /// involution, one entry per system sphere.
  pub fn build<S: AsRef<str>>(pants: &[S], darts: &[(S, S)], pairs: &[(S, S)]) -> Result<Self, GraphError> {
    let mut pants_names: Vec<String> = pants.iter().map(|p| p.as_ref().to_owned()).collect();
    pants_names.sort();
    if let Some(w) = pants_names.windows(2).find(|w| w[0] == w[1]) {
      return Err(GraphError::DuplicateId { id: w[0].clone() });
    }
    let mut dart_names: Vec<String> = darts.iter().map(|(d, _)| d.as_ref().to_owned()).collect();
    dart_names.sort();
    if let Some(w) = dart_names.windows(2).find(|w| w[0] == w[1]) {
      return Err(GraphError::DuplicateId { id: w[0].clone() });
    }
    if let Some(d) = dart_names.iter().find(|d| pants_names.binary_search(d).is_ok()) {
      return Err(GraphError::DuplicateId { id: d.clone() });
    }

    let pants_index = |name: &str| pants_names.binary_search_by(|p| p.as_str().cmp(name)).ok();
    let dart_index = |name: &str| dart_names.binary_search_by(|p| p.as_str().cmp(name)).ok();

    let mut dart_vertex = vec![PantsId(0); dart_names.len()];
    for (d, v) in darts {
      let di = dart_index(d.as_ref()).expect("dart listed");
      let vi = pants_index(v.as_ref()).ok_or_else(|| GraphError::UnknownVertex {
        vertex: v.as_ref().to_owned(),
        dart: d.as_ref().to_owned(),
      })?;
      dart_vertex[di] = PantsId(vi as u32);
    }

    let mut by_vertex: Vec<Vec<DartId>> = vec![Vec::new(); pants_names.len()];
    for (di, v) in dart_vertex.iter().enumerate() {
      by_vertex[v.index()].push(DartId(di as u32));
    }
    let mut vertex_darts = Vec::with_capacity(pants_names.len());
    for (vi, ds) in by_vertex.iter().enumerate() {
      match ds.as_slice() {
        [a, b, c] => vertex_darts.push([*a, *b, *c]),
        _ => {
          return Err(GraphError::NonTrivalent {
            vertex: pants_names[vi].clone(),
            count: ds.len(),
          })
        }
      }
    }

    let mut opposite: Vec<Option<DartId>> = vec![None; dart_names.len()];
    for (a, b) in pairs {
      let ai = dart_index(a.as_ref()).ok_or_else(|| GraphError::UnknownDart {
        dart: a.as_ref().to_owned(),
      })?;
      let bi = dart_index(b.as_ref()).ok_or_else(|| GraphError::UnknownDart {
        dart: b.as_ref().to_owned(),
      })?;
      if ai == bi {
        return Err(GraphError::FixedDart {
          dart: a.as_ref().to_owned(),
        });
      }
      for (x, y) in [(ai, bi), (bi, ai)] {
        if opposite[x].is_some() {
          return Err(GraphError::DoublePairing {
            dart: dart_names[x].clone(),
          });
        }
        opposite[x] = Some(DartId(y as u32));
      }
    }
    let opposite = opposite
      .into_iter()
      .enumerate()
      .map(|(i, o)| {
        o.ok_or_else(|| GraphError::FixedDart {
          dart: dart_names[i].clone(),
        })
      })
      .collect::<Result<Vec<_>, _>>()?;

    let mut seen = vec![false; pants_names.len()];
    let mut queue = VecDeque::new();
    if !pants_names.is_empty() {
      seen[0] = true;
      queue.push_back(0usize);
    }
    while let Some(v) = queue.pop_front() {
      for d in &vertex_darts[v] {
        let w = dart_vertex[opposite[d.index()].index()].index();
        if !seen[w] {
          seen[w] = true;
          queue.push_back(w);
        }
      }
    }
    if seen.iter().any(|s| !s) {
      return Err(GraphError::Disconnected);
    }

    // E - V + 1 with E = 3V/2.
    let rank = pants_names.len() / 2 + 1;
    if pants_names.is_empty() {
      return Err(GraphError::RankTooSmall { rank: 1 });
    }

    Ok(ModelGraph {
      pants_names,
      dart_names,
      dart_vertex,
      opposite,
      vertex_darts,
      rank,
    })
  }

  /// A deterministic graph of the given rank.
  pub fn standard(rank: i64, style: Style) -> Result<Self, GraphError> {
    if rank < 2 {
      return Err(GraphError::RankTooSmall { rank });
    }
    let m = 2 * (rank as usize - 1);
    let width = (m - 1).to_string().len();
    let vname = |k: usize| format!("v{k:0width$}");
    let mut darts: Vec<(String, String)> = Vec::new();
    let mut pairs: Vec<(String, String)> = Vec::new();
    let mut next = vec![0u8; m];
    let mut dart_at = |k: usize, darts: &mut Vec<(String, String)>| {
      let name = format!("{}{}", vname(k), (b'a' + next[k]) as char);
      next[k] += 1;
      darts.push((name.clone(), vname(k)));
      name
    };
    let mut join = |a: usize, b: usize, darts: &mut Vec<(String, String)>| {
      let x = dart_at(a, darts);
      let y = dart_at(b, darts);
      pairs.push((x, y));
    };
    match style {
      Style::ThetaChain => {
        for k in 0..m / 2 {
          join(2 * k, 2 * k + 1, &mut darts);
          join(2 * k, 2 * k + 1, &mut darts);
        }
        for k in 0..m / 2 - 1 {
          join(2 * k + 1, 2 * k + 2, &mut darts);
        }
        join(0, m - 1, &mut darts);
      }
      Style::DumbbellChain => {
        join(0, 0, &mut darts);
        for k in 0..m - 1 {
          join(k, k + 1, &mut darts);
        }
        for k in 0..(m - 2) / 2 {
          join(2 * k + 1, 2 * k + 2, &mut darts);
        }
        join(m - 1, m - 1, &mut darts);
      }
    }
    let pants: Vec<String> = (0..m).map(vname).collect();
    ModelGraph::build(&pants, &darts, &pairs)
  }

  pub fn rank(&self) -> usize {
    self.rank
  }

  pub fn pants_count(&self) -> usize {
    self.pants_names.len()
  }

  pub fn dart_count(&self) -> usize {
    self.dart_names.len()
  }

  pub fn sphere_count(&self) -> usize {
    self.dart_names.len() / 2
  }

  /// The base pants vertex: the least identifier.
  pub fn base(&self) -> PantsId {
    PantsId(0)
  }

  pub fn pants(&self) -> impl Iterator<Item = PantsId> + '_ {
    (0..self.pants_names.len() as u32).map(PantsId)
  }

  pub fn darts(&self) -> impl Iterator<Item = DartId> + '_ {
    (0..self.dart_names.len() as u32).map(DartId)
  }

  /// System spheres in identifier order.
  pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
    self.darts().filter(move |d| *d < self.opposite(*d)).map(EdgeId)
  }

  pub fn vertex_of(&self, d: DartId) -> PantsId {
    self.dart_vertex[d.index()]
  }

  pub fn opposite(&self, d: DartId) -> DartId {
    self.opposite[d.index()]
  }

  /// Darts at a vertex, in identifier order.
  pub fn darts_at(&self, v: PantsId) -> [DartId; 3] {
    self.vertex_darts[v.index()]
  }

  /// The pants vertex reached by crossing the sphere at `d`.
  pub fn across(&self, d: DartId) -> PantsId {
    self.vertex_of(self.opposite(d))
  }

  pub fn edge_of(&self, d: DartId) -> EdgeId {
    EdgeId(d.min(self.opposite(d)))
  }

  pub fn is_loop(&self, e: EdgeId) -> bool {
    self.vertex_of(e.0) == self.across(e.0)
  }

  pub fn pants_name(&self, v: PantsId) -> &str {
    &self.pants_names[v.index()]
  }

  pub fn dart_name(&self, d: DartId) -> &str {
    &self.dart_names[d.index()]
  }

  pub fn edge_name(&self, e: EdgeId) -> &str {
    self.dart_name(e.0)
  }

  pub fn dart_by_name(&self, name: &str) -> Option<DartId> {
    self
      .dart_names
      .binary_search_by(|d| d.as_str().cmp(name))
      .ok()
      .map(|i| DartId(i as u32))
  }

  pub fn pants_by_name(&self, name: &str) -> Option<PantsId> {
    self
      .pants_names
      .binary_search_by(|d| d.as_str().cmp(name))
      .ok()
      .map(|i| PantsId(i as u32))
  }

  /// Looks up an edge by the identifier of either of its darts.
  pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
    self.dart_by_name(name).map(|d| self.edge_of(d))
  }

  pub fn to_document(&self) -> GraphDocument {
    let mut edges: Vec<[String; 2]> = self
      .edges()
      .map(|e| {
        [
          self.dart_name(e.0).to_owned(),
          self.dart_name(self.opposite(e.0)).to_owned(),
        ]
      })
      .collect();
    edges.sort();
    GraphDocument {
      pants: self.pants_names.clone(),
      darts: self
        .darts()
        .map(|d| DartEntry {
          id: self.dart_name(d).to_owned(),
          vertex: self.pants_name(self.vertex_of(d)).to_owned(),
        })
        .collect(),
      edges,
    }
  }

  pub fn to_json(&self) -> String {
    serde_json::to_string_pretty(&self.to_document()).expect("graph document serializes")
  }

  pub fn from_document(doc: &GraphDocument) -> Result<Self, GraphError> {
    let mut paired: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, [a, b]) in doc.edges.iter().enumerate() {
      for d in [a, b] {
        if paired.insert(d.as_str(), i).is_some() {
          return Err(GraphError::ParseError {
            at: format!("edges[{i}]"),
            message: format!("dart {d} paired twice"),
          });
        }
      }
    }
    let known: BTreeSet<&str> = doc.darts.iter().map(|d| d.id.as_str()).collect();
    for (i, d) in doc.darts.iter().enumerate() {
      if !paired.contains_key(d.id.as_str()) {
        return Err(GraphError::ParseError {
          at: format!("darts[{i}]"),
          message: format!("dart {} has no pairing", d.id),
        });
      }
    }
    if let Some((d, i)) = paired.iter().find(|(d, _)| !known.contains(*d)) {
      return Err(GraphError::ParseError {
        at: format!("edges[{i}]"),
        message: format!("unknown dart {d}"),
      });
    }
    let darts: Vec<(&str, &str)> = doc
      .darts
      .iter()
      .map(|d| (d.id.as_str(), d.vertex.as_str()))
      .collect();
    let pairs: Vec<(&str, &str)> = doc.edges.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
    let pants: Vec<&str> = doc.pants.iter().map(String::as_str).collect();
    ModelGraph::build(&pants, &darts, &pairs)
  }

  pub fn parse(text: &str) -> Result<Self, GraphError> {
    let doc: GraphDocument = serde_json::from_str(text).map_err(|e| GraphError::ParseError {
      at: format!("line {} column {}", e.line(), e.column()),
      message: e.to_string(),
    })?;
    ModelGraph::from_document(&doc)
  }
}

impl fmt::Display for ModelGraph {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(
      f,
      "rank {} graph: {} pants, {} spheres",
      self.rank,
      self.pants_count(),
      self.sphere_count()
    )
  }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DartEntry {
  pub id: String,
  pub vertex: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
  pub pants: Vec<String>,
  pub darts: Vec<DartEntry>,
  pub edges: Vec<[String; 2]>,
}
