//! Spheres in normal form, as finite labeled subtrees of the dual tree.
//!
//! A lifted normal sphere meets each lifted pants in at most one piece and
//! each lifted system sphere in at most one circle, so it is recorded by the
//! pants vertices carrying pieces, the sphere vertices carrying circles, and
//! one gluing bit per circle. The piece type follows from the degree of a
//! pants vertex in the subtree.
//!
//! Every piece splits its pants into two regions, numbered 0 and 1:
//!
//! * a disk attached along dart `a` with free darts `b < c`: region 0 contains
//!   the boundary sphere at `b`, region 1 the one at `c`;
//! * a cylinder with free dart `c`: region 0 is the ball side, region 1 the
//!   side containing the boundary sphere at `c`;
//! * a pair of pants: regions 0 and 1 are interchangeable (a gauge choice).
//!
//! Each region touches one half of every circle-bearing boundary sphere. The
//! bit of a circle is `aligned` when region `i` on one side meets region `i`
//! on the other side.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cover::{Cover, CoverError, DeckElement, SphereVertex, TreeVertex, Walk};
use crate::graph::{DartId, EdgeId, ModelGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SphereError {
  #[error("pieces and circles do not form a connected subtree")]
  NotConnected,
  #[error("{0} is listed with the wrong vertex kind")]
  NotAlternating(String),
  #[error("circle {0} does not have pieces on both sides")]
  CircleDegreeNotTwo(String),
  #[error("subtree has a sphere vertex as a leaf")]
  SphereLeaf,
  #[error("circle {0} has no gluing bit")]
  MissingBit(usize),
  #[error("gluing bit for nonexistent or repeated circle {0}")]
  ExtraBit(usize),
  #[error("no circles: not a sphere")]
  EmptySphere,
  #[error("vertex {0} listed twice")]
  DuplicateVertex(String),
  #[error(transparent)]
  Cover(#[from] CoverError),
  #[error("parse error at {at}: {message}")]
  ParseError { at: String, message: String },
}

impl SphereError {
  pub fn name(&self) -> &'static str {
    match self {
      SphereError::NotConnected => "NotConnected",
      SphereError::NotAlternating(_) => "NotAlternating",
      SphereError::CircleDegreeNotTwo(_) => "CircleDegreeNotTwo",
      SphereError::SphereLeaf => "SphereLeaf",
      SphereError::MissingBit(_) => "MissingBit",
      SphereError::ExtraBit(_) => "ExtraBit",
      SphereError::EmptySphere => "EmptySphere",
      SphereError::DuplicateVertex(_) => "DuplicateVertex",
      SphereError::Cover(e) => e.name(),
      SphereError::ParseError { .. } => "ParseError",
    }
  }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Piece {
  Disk { attached: DartId, free: [DartId; 2] },
  Cylinder { attached: [DartId; 2], free: DartId },
  Pants,
}

/// How the regions at a pants vertex meet one of its boundary spheres.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Touch {
  /// The whole boundary sphere lies in this region.
  Whole(u8),
  /// The boundary sphere carries a circle; each region meets one half.
  Halves,
}

impl Piece {
  pub fn touch(&self, d: DartId) -> Touch {
    match *self {
      Piece::Disk { free, .. } if free[0] == d => Touch::Whole(0),
      Piece::Disk { free, .. } if free[1] == d => Touch::Whole(1),
      Piece::Cylinder { free, .. } if free == d => Touch::Whole(1),
      _ => Touch::Halves,
    }
  }

  pub fn free_darts(&self) -> Vec<DartId> {
    match *self {
      Piece::Disk { free, .. } => free.to_vec(),
      Piece::Cylinder { free, .. } => vec![free],
      Piece::Pants => Vec::new(),
    }
  }
}

/// A sphere in normal form whose lift meets the system in circles.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SurfaceSphere {
  pants: Vec<Walk>,
  circles: Vec<SphereVertex>,
  aligned: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NormalSphere {
  /// A lift of one of the system spheres; it has no circles.
  System(SphereVertex),
  Surface(SurfaceSphere),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PieceCounts {
  pub disks: usize,
  pub cylinders: usize,
  pub pants: usize,
}

impl SurfaceSphere {
  pub fn pants(&self) -> &[Walk] {
    &self.pants
  }

  pub fn circles(&self) -> &[SphereVertex] {
    &self.circles
  }

  pub fn aligned(&self) -> &[bool] {
    &self.aligned
  }

  pub fn contains_pants(&self, w: &Walk) -> bool {
    self.pants.binary_search(w).is_ok()
  }

  pub fn circle_index(&self, s: &SphereVertex) -> Option<usize> {
    self.circles.binary_search(s).ok()
  }

  pub fn piece(&self, graph: &ModelGraph, w: &Walk) -> Piece {
    let darts = graph.darts_at(w.endpoint(graph));
    let on: Vec<bool> = darts
      .iter()
      .map(|&d| {
        self
          .circle_index(&SphereVertex::new(graph, w.clone(), d))
          .is_some()
      })
      .collect();
    match on.iter().filter(|b| **b).count() {
      1 => {
        let i = on.iter().position(|b| *b).expect("one circle");
        let free: Vec<DartId> = (0..3).filter(|&j| j != i).map(|j| darts[j]).collect();
        Piece::Disk {
          attached: darts[i],
          free: [free[0], free[1]],
        }
      }
      2 => {
        let i = on.iter().position(|b| !*b).expect("one free dart");
        let att: Vec<DartId> = (0..3).filter(|&j| j != i).map(|j| darts[j]).collect();
        Piece::Cylinder {
          attached: [att[0], att[1]],
          free: darts[i],
        }
      }
      3 => Piece::Pants,
      _ => unreachable!("validated sphere has no isolated pants vertex"),
    }
  }

  /// Circle darts at a pants vertex of the sphere, with the circle indices.
  pub fn circles_at(&self, graph: &ModelGraph, w: &Walk) -> Vec<(DartId, usize)> {
    graph
      .darts_at(w.endpoint(graph))
      .iter()
      .filter_map(|&d| {
        self
          .circle_index(&SphereVertex::new(graph, w.clone(), d))
          .map(|i| (d, i))
      })
      .collect()
  }

  fn translated(&self, cover: &Cover<'_>, g: &DeckElement) -> SurfaceSphere {
    let mut pants: Vec<Walk> = self.pants.iter().map(|w| cover.act_walk(g, w)).collect();
    pants.sort();
    let mut circles: Vec<(SphereVertex, bool)> = self
      .circles
      .iter()
      .zip(&self.aligned)
      .map(|(s, b)| (cover.act_sphere(g, s), *b))
      .collect();
    circles.sort();
    let (circles, aligned) = circles.into_iter().unzip();
    SurfaceSphere {
      pants,
      circles,
      aligned,
    }
  }

  /// Fixes the gauge of every pants piece: rooted at the least disk, the bit
  /// on the circle toward the root is made aligned.
  fn gauge_fixed(&self, graph: &ModelGraph) -> SurfaceSphere {
    let mut out = self.clone();
    let root = self
      .pants
      .iter()
      .find(|w| matches!(self.piece(graph, w), Piece::Disk { .. }))
      .expect("every sphere has a disk")
      .clone();
    let mut queue = VecDeque::from([(root.clone(), None::<usize>)]);
    let mut seen = BTreeSet::from([root]);
    while let Some((w, parent)) = queue.pop_front() {
      let here = self.circles_at(graph, &w);
      if here.len() == 3 {
        let parent = parent.expect("root is a disk");
        if !out.aligned[parent] {
          for (_, i) in &here {
            out.aligned[*i] = !out.aligned[*i];
          }
        }
      }
      for (d, i) in here {
        let next = w.extended(graph, d);
        if seen.insert(next.clone()) {
          queue.push_back((next, Some(i)));
        }
      }
    }
    out
  }
}

impl NormalSphere {
  /// Validates pieces, circles and bits. `bits` pairs an index into
  /// `circles` with its alignment.
  pub fn from_data(
    graph: &ModelGraph,
    pants: &[TreeVertex],
    circles: &[TreeVertex],
    bits: &[(usize, bool)],
  ) -> Result<NormalSphere, SphereError> {
    let cover = Cover::new(graph);
    let mut pws = Vec::with_capacity(pants.len());
    for v in pants {
      cover.check(v)?;
      match v {
        TreeVertex::Pants(w) => pws.push(w.clone()),
        TreeVertex::Sphere(s) => return Err(SphereError::NotAlternating(format!("sphere vertex {s:?}"))),
      }
    }
    let mut cvs = Vec::with_capacity(circles.len());
    for v in circles {
      cover.check(v)?;
      match v {
        TreeVertex::Sphere(s) => cvs.push(s.clone()),
        TreeVertex::Pants(w) => return Err(SphereError::NotAlternating(format!("pants vertex {w}"))),
      }
    }

    let mut bit_of: Vec<Option<bool>> = vec![None; cvs.len()];
    for &(i, b) in bits {
      match bit_of.get_mut(i) {
        Some(slot @ None) => *slot = Some(b),
        _ => return Err(SphereError::ExtraBit(i)),
      }
    }
    if let Some(i) = bit_of.iter().position(Option::is_none) {
      return Err(SphereError::MissingBit(i));
    }

    if cvs.is_empty() {
      return Err(SphereError::EmptySphere);
    }
    if pws.is_empty() {
      return Err(SphereError::SphereLeaf);
    }

    let pant_set: BTreeSet<Walk> = pws.iter().cloned().collect();
    if pant_set.len() != pws.len() {
      let dup = pws
        .iter()
        .find(|w| pws.iter().filter(|x| x == w).count() > 1)
        .expect("dup");
      return Err(SphereError::DuplicateVertex(dup.to_string()));
    }
    let mut paired: Vec<(SphereVertex, bool)> = cvs
      .into_iter()
      .zip(bit_of.into_iter().map(|b| b.expect("checked")))
      .collect();
    paired.sort();
    if let Some(w) = paired.windows(2).find(|w| w[0].0 == w[1].0) {
      return Err(SphereError::DuplicateVertex(format!("{:?}", w[0].0)));
    }
    for (s, _) in &paired {
      let present = s.ends(graph).iter().filter(|e| pant_set.contains(*e)).count();
      if present != 2 {
        return Err(SphereError::CircleDegreeNotTwo(format!(
          "{}:{}",
          s.walk(),
          s.dart().index()
        )));
      }
    }
    let (circles, aligned): (Vec<SphereVertex>, Vec<bool>) = paired.into_iter().unzip();
    let sphere = SurfaceSphere {
      pants: pant_set.into_iter().collect(),
      circles,
      aligned,
    };

    // Connectivity through circles. Acyclicity is automatic inside a tree.
    let mut seen = BTreeSet::from([sphere.pants[0].clone()]);
    let mut queue = VecDeque::from([sphere.pants[0].clone()]);
    while let Some(w) = queue.pop_front() {
      for (d, _) in sphere.circles_at(graph, &w) {
        let next = w.extended(graph, d);
        if seen.insert(next.clone()) {
          queue.push_back(next);
        }
      }
    }
    if seen.len() != sphere.pants.len() {
      return Err(SphereError::NotConnected);
    }
    Ok(NormalSphere::Surface(sphere))
  }

  /// The lift of a system sphere at the given sphere vertex.
  pub fn system(s: SphereVertex) -> NormalSphere {
    NormalSphere::System(s)
  }

  pub fn is_system(&self) -> bool {
    matches!(self, NormalSphere::System(_))
  }

  pub fn as_surface(&self) -> Option<&SurfaceSphere> {
    match self {
      NormalSphere::Surface(s) => Some(s),
      NormalSphere::System(_) => None,
    }
  }

  pub fn circle_total(&self) -> usize {
    match self {
      NormalSphere::System(_) => 0,
      NormalSphere::Surface(s) => s.circles.len(),
    }
  }

  /// Pants vertices carrying pieces (none for a system sphere).
  pub fn pants(&self) -> &[Walk] {
    match self {
      NormalSphere::System(_) => &[],
      NormalSphere::Surface(s) => &s.pants,
    }
  }

  /// The subtree `T(S)`: pieces and circles, or the single sphere vertex.
  pub fn subtree(&self) -> Vec<TreeVertex> {
    match self {
      NormalSphere::System(s) => vec![TreeVertex::Sphere(s.clone())],
      NormalSphere::Surface(s) => s
        .pants
        .iter()
        .cloned()
        .map(TreeVertex::Pants)
        .chain(s.circles.iter().cloned().map(TreeVertex::Sphere))
        .collect(),
    }
  }

  pub fn subtree_size(&self) -> usize {
    match self {
      NormalSphere::System(_) => 1,
      NormalSphere::Surface(s) => s.pants.len() + s.circles.len(),
    }
  }

  pub fn piece_counts(&self, graph: &ModelGraph) -> PieceCounts {
    let mut c = PieceCounts::default();
    if let NormalSphere::Surface(s) = self {
      for w in &s.pants {
        match s.piece(graph, w) {
          Piece::Disk { .. } => c.disks += 1,
          Piece::Cylinder { .. } => c.cylinders += 1,
          Piece::Pants => c.pants += 1,
        }
      }
    }
    c
  }

  pub fn circle_count_over(&self, graph: &ModelGraph, edge: EdgeId) -> usize {
    match self {
      NormalSphere::System(_) => 0,
      NormalSphere::Surface(s) => s.circles.iter().filter(|c| c.edge(graph) == edge).count(),
    }
  }

  pub fn check(&self, graph: &ModelGraph) -> Result<(), CoverError> {
    let cover = Cover::new(graph);
    self.subtree().iter().try_for_each(|v| cover.check(v))
  }

  pub fn translate(&self, graph: &ModelGraph, g: &DeckElement) -> Result<NormalSphere, CoverError> {
    self.check(graph)?;
    let probe = DeckElement::from_walk(graph, g.word().clone())?;
    Ok(self.translate_unchecked(&Cover::new(graph), &probe))
  }

  pub(crate) fn translate_unchecked(&self, cover: &Cover<'_>, g: &DeckElement) -> NormalSphere {
    match self {
      NormalSphere::System(s) => NormalSphere::System(cover.act_sphere(g, s)),
      NormalSphere::Surface(s) => NormalSphere::Surface(s.translated(cover, g)),
    }
  }

  /// The representative of the deck orbit of this sphere: among the
  /// translates placing one of its pieces (or its sphere vertex) in the
  /// fundamental domain, the least one after gauge fixing.
  pub fn canonical_rep(&self, graph: &ModelGraph) -> NormalSphere {
    let cover = Cover::new(graph);
    self.canonical_with(&cover, &cover.fundamental_domain())
  }

  pub(crate) fn canonical_with(&self, cover: &Cover<'_>, domain: &[Walk]) -> NormalSphere {
    let graph = cover.graph();
    match self {
      NormalSphere::System(s) => {
        let d = s.edge(graph).dart();
        let target = SphereVertex::new(graph, domain[graph.vertex_of(d).index()].clone(), d);
        let g = cover.sphere_transporter(&target, s).expect("same edge");
        NormalSphere::System(cover.act_sphere(&g, s))
      }
      NormalSphere::Surface(s) => s
        .pants
        .iter()
        .map(|w| {
          let g = cover
            .pants_transporter(&domain[w.endpoint(graph).index()], w)
            .expect("same fiber");
          s.translated(cover, &g).gauge_fixed(graph)
        })
        .min()
        .map(NormalSphere::Surface)
        .expect("nonempty sphere"),
    }
  }

  pub fn to_document(&self, graph: &ModelGraph) -> SphereDocument {
    let walk =
      |w: &Walk| -> Vec<String> { w.darts().iter().map(|d| graph.dart_name(*d).to_owned()).collect() };
    let vertex = |s: &SphereVertex| SphereRef {
      at: walk(s.walk()),
      dart: graph.dart_name(s.dart()).to_owned(),
    };
    match self {
      NormalSphere::System(s) => SphereDocument {
        pants: Vec::new(),
        circles: Vec::new(),
        bits: Vec::new(),
        system: Some(vertex(s)),
      },
      NormalSphere::Surface(s) => SphereDocument {
        pants: s.pants.iter().map(walk).collect(),
        circles: s.circles.iter().map(vertex).collect(),
        bits: s
          .aligned
          .iter()
          .enumerate()
          .map(|(i, &aligned)| BitEntry { circle: i, aligned })
          .collect(),
        system: None,
      },
    }
  }

  pub fn to_json(&self, graph: &ModelGraph) -> String {
    serde_json::to_string_pretty(&self.to_document(graph)).expect("sphere document serializes")
  }

  pub fn from_document(graph: &ModelGraph, doc: &SphereDocument) -> Result<NormalSphere, SphereError> {
    let walk = |at: String, names: &[String]| -> Result<Walk, SphereError> {
      let mut darts = Vec::with_capacity(names.len());
      for (k, n) in names.iter().enumerate() {
        darts.push(graph.dart_by_name(n).ok_or_else(|| SphereError::ParseError {
          at: format!("{at}[{k}]"),
          message: format!("unknown dart {n}"),
        })?);
      }
      Ok(Walk::checked(graph, darts)?)
    };
    let vertex = |at: String, r: &SphereRef| -> Result<SphereVertex, SphereError> {
      let w = walk(format!("{at}.at"), &r.at)?;
      let d = graph
        .dart_by_name(&r.dart)
        .ok_or_else(|| SphereError::ParseError {
          at: format!("{at}.dart"),
          message: format!("unknown dart {}", r.dart),
        })?;
      Ok(SphereVertex::checked(graph, w, d)?)
    };
    if let Some(sys) = &doc.system {
      if !(doc.pants.is_empty() && doc.circles.is_empty() && doc.bits.is_empty()) {
        return Err(SphereError::ParseError {
          at: "system".into(),
          message: "a system sphere has no pieces, circles or bits".into(),
        });
      }
      return Ok(NormalSphere::System(vertex("system".into(), sys)?));
    }
    let pants = doc
      .pants
      .iter()
      .enumerate()
      .map(|(i, p)| walk(format!("pants[{i}]"), p).map(TreeVertex::Pants))
      .collect::<Result<Vec<_>, _>>()?;
    let circles = doc
      .circles
      .iter()
      .enumerate()
      .map(|(i, c)| vertex(format!("circles[{i}]"), c).map(TreeVertex::Sphere))
      .collect::<Result<Vec<_>, _>>()?;
    let bits: Vec<(usize, bool)> = doc.bits.iter().map(|b| (b.circle, b.aligned)).collect();
    NormalSphere::from_data(graph, &pants, &circles, &bits)
  }

  pub fn parse(graph: &ModelGraph, text: &str) -> Result<NormalSphere, SphereError> {
    let doc: SphereDocument = serde_json::from_str(text).map_err(|e| SphereError::ParseError {
      at: format!("line {} column {}", e.line(), e.column()),
      message: e.to_string(),
    })?;
    NormalSphere::from_document(graph, &doc)
  }
}

/// A sphere vertex in documents: a walk to a pants vertex and a dart there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SphereRef {
  pub at: Vec<String>,
  pub dart: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BitEntry {
  pub circle: usize,
  pub aligned: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SphereDocument {
  #[serde(default)]
  pub pants: Vec<Vec<String>>,
  #[serde(default)]
  pub circles: Vec<SphereRef>,
  #[serde(default)]
  pub bits: Vec<BitEntry>,
  #[serde(default, skip_serializing_if = "Option::is_none")]
  pub system: Option<SphereRef>,
}

/// Builds the sphere spanned by a connected set of pants vertices, with the
/// given bits for its circles in canonical order.
pub fn sphere_on(graph: &ModelGraph, pants: &[Walk], bits: &[bool]) -> Result<NormalSphere, SphereError> {
  let circles = induced_circles(graph, pants);
  let pv: Vec<TreeVertex> = pants.iter().cloned().map(TreeVertex::Pants).collect();
  let cv: Vec<TreeVertex> = circles.into_iter().map(TreeVertex::Sphere).collect();
  let bits: Vec<(usize, bool)> = bits.iter().copied().enumerate().collect();
  NormalSphere::from_data(graph, &pv, &cv, &bits)
}

/// Sphere vertices joining two members of a pants set, sorted.
pub fn induced_circles(graph: &ModelGraph, pants: &[Walk]) -> Vec<SphereVertex> {
  let set: BTreeSet<&Walk> = pants.iter().collect();
  let mut out: BTreeSet<SphereVertex> = BTreeSet::new();
  for w in pants {
    for d in graph.darts_at(w.endpoint(graph)) {
      if set.contains(&w.extended(graph, d)) {
        out.insert(SphereVertex::new(graph, w.clone(), d));
      }
    }
  }
  out.into_iter().collect()
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::graph::Style;

  fn theta() -> ModelGraph {
    ModelGraph::standard(2, Style::ThetaChain).unwrap()
  }

  fn mid(g: &ModelGraph) -> DartId {
    g.darts_at(g.base())[1]
  }

  fn a0(g: &ModelGraph, bit: bool) -> NormalSphere {
    let y = Walk::empty().extended(g, mid(g));
    sphere_on(g, &[Walk::empty(), y], &[bit]).unwrap()
  }

  #[test]
  fn smallest_sphere() {
    let g = theta();
    let s = a0(&g, true);
    let c = s.piece_counts(&g);
    assert_eq!((c.disks, c.cylinders, c.pants), (2, 0, 0));
    assert_eq!(s.circle_total(), 1);
    let e = g.edge_of(mid(&g));
    assert_eq!(s.circle_count_over(&g, e), 1);
    for other in g.edges().filter(|x| *x != e) {
      assert_eq!(s.circle_count_over(&g, other), 0);
    }
  }

  #[test]
  fn tripod() {
    let g = theta();
    let root = Walk::empty();
    let leaves: Vec<Walk> = g
      .darts_at(g.base())
      .iter()
      .map(|&d| root.extended(&g, d))
      .collect();
    let mut pants = vec![root];
    pants.extend(leaves);
    let s = sphere_on(&g, &pants, &[true, false, true]).unwrap();
    let counts = s.piece_counts(&g);
    assert_eq!((counts.disks, counts.cylinders, counts.pants), (3, 0, 1));
    assert_eq!(s.circle_total(), 3);
  }

  #[test]
  fn validation_errors() {
    let g = theta();
    let y = Walk::empty().extended(&g, mid(&g));
    let circle = TreeVertex::Sphere(SphereVertex::new(&g, Walk::empty(), mid(&g)));
    let x = TreeVertex::Pants(Walk::empty());
    let err = NormalSphere::from_data(
      &g,
      std::slice::from_ref(&x),
      std::slice::from_ref(&circle),
      &[(0, true)],
    )
    .unwrap_err();
    assert_eq!(err.name(), "CircleDegreeNotTwo");
    let err = NormalSphere::from_data(&g, std::slice::from_ref(&x), &[], &[]).unwrap_err();
    assert_eq!(err.name(), "EmptySphere");
    let yv = TreeVertex::Pants(y);
    let err =
      NormalSphere::from_data(&g, &[x.clone(), yv.clone()], std::slice::from_ref(&circle), &[]).unwrap_err();
    assert_eq!(err.name(), "MissingBit");
    let err = NormalSphere::from_data(
      &g,
      &[x.clone(), yv.clone()],
      std::slice::from_ref(&circle),
      &[(0, true), (1, true)],
    )
    .unwrap_err();
    assert_eq!(err.name(), "ExtraBit");
    let err = NormalSphere::from_data(
      &g,
      &[x.clone(), circle.clone()],
      std::slice::from_ref(&circle),
      &[(0, true)],
    )
    .unwrap_err();
    assert_eq!(err.name(), "NotAlternating");
    let err = NormalSphere::from_data(&g, &[], std::slice::from_ref(&circle), &[(0, true)]).unwrap_err();
    assert_eq!(err.name(), "SphereLeaf");

    // Two disjoint one-circle pieces.
    let d2 = g.darts_at(g.base())[2];
    let far = Walk::empty()
      .extended(&g, mid(&g))
      .extended(&g, g.darts_at(g.across(mid(&g)))[0]);
    let far2 = far.extended(&g, d2);
    let c2 = TreeVertex::Sphere(SphereVertex::new(&g, far.clone(), d2));
    let err = NormalSphere::from_data(
      &g,
      &[x, yv, TreeVertex::Pants(far), TreeVertex::Pants(far2)],
      &[circle, c2],
      &[(0, true), (1, true)],
    )
    .unwrap_err();
    assert_eq!(err.name(), "NotConnected");
  }

  #[test]
  fn system_spheres() {
    let g = theta();
    let s = NormalSphere::system(SphereVertex::new(&g, Walk::empty(), mid(&g)));
    for e in g.edges() {
      assert_eq!(s.circle_count_over(&g, e), 0);
    }
    let h = Cover::new(&g).deck_elements_up_to(2).pop().unwrap();
    let moved = s.translate(&g, &h).unwrap();
    match (&s, &moved) {
      (NormalSphere::System(a), NormalSphere::System(b)) => {
        assert_eq!(*b, Cover::new(&g).act_sphere(&h, a))
      }
      _ => panic!("system sphere must stay a system sphere"),
    }
  }

  #[test]
  fn bits_distinguish_classes() {
    let g = theta();
    let a = a0(&g, true).canonical_rep(&g);
    let b = a0(&g, false).canonical_rep(&g);
    assert_ne!(a, b);
    assert_ne!(a.to_json(&g), b.to_json(&g));
  }

  #[test]
  fn document_round_trip() {
    let g = theta();
    for s in [
      a0(&g, true),
      NormalSphere::system(SphereVertex::new(&g, Walk::empty(), mid(&g))),
    ] {
      let text = s.to_json(&g);
      assert_eq!(NormalSphere::parse(&g, &text).unwrap(), s);
    }
    let err = NormalSphere::parse(&g, r#"{"pants": [["nope"]]}"#).unwrap_err();
    assert_eq!(
      err,
      SphereError::ParseError {
        at: "pants[0][0]".into(),
        message: "unknown dart nope".into()
      }
    );
  }
}
