//! The dual tree of the universal cover and the free deck action on it.
//!
//! Nothing is stored globally. A pants vertex of the tree is a reduced dart
//! walk starting at the base pants vertex of the graph; a sphere vertex is a
//! pants vertex together with one of the three darts at its endpoint. The
//! sphere vertex `(w, d)` is the same as `(w·d, opposite(d))`, and the shorter
//! walk (equivalently the lexicographically smaller encoding) is canonical.
//! Deck transformations are reduced closed walks at the base and act by
//! prepending.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::graph::{DartId, EdgeId, ModelGraph, PantsId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
  #[error("foreign vertex: {0}")]
  ForeignVertex(String),
}

impl CoverError {
  pub fn name(&self) -> &'static str {
    match self {
      CoverError::ForeignVertex(_) => "ForeignVertex",
    }
  }
}

/// A reduced dart walk starting at the base pants vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Walk(Vec<DartId>);

impl Walk {
  pub fn empty() -> Self {
    Walk(Vec::new())
  }

  pub fn darts(&self) -> &[DartId] {
    &self.0
  }

  pub fn len(&self) -> usize {
    self.0.len()
  }

  pub fn is_empty(&self) -> bool {
    self.0.is_empty()
  }

  pub fn last(&self) -> Option<DartId> {
    self.0.last().copied()
  }

  /// Checks that the walk is a reduced walk from the base and returns it.
  pub fn checked(graph: &ModelGraph, darts: Vec<DartId>) -> Result<Walk, CoverError> {
    let walk = Walk(darts);
    walk.endpoint_checked(graph)?;
    Ok(walk)
  }

  fn endpoint_checked(&self, graph: &ModelGraph) -> Result<PantsId, CoverError> {
    let mut at = graph.base();
    let mut prev: Option<DartId> = None;
    for &d in &self.0 {
      if d.index() >= graph.dart_count() || graph.vertex_of(d) != at {
        return Err(CoverError::ForeignVertex(format!(
          "dart {} does not continue the walk",
          d.0
        )));
      }
      if prev.is_some_and(|p| graph.opposite(p) == d) {
        return Err(CoverError::ForeignVertex("walk is not reduced".into()));
      }
      at = graph.across(d);
      prev = Some(d);
    }
    Ok(at)
  }

  /// The graph vertex this walk ends at. Assumes the walk is valid.
  pub fn endpoint(&self, graph: &ModelGraph) -> PantsId {
    match self.0.last() {
      None => graph.base(),
      Some(&d) => graph.across(d),
    }
  }

  /// Appends a dart, cancelling a backtrack.
  pub fn push_reduced(&mut self, graph: &ModelGraph, d: DartId) {
    if self.0.last().is_some_and(|&p| graph.opposite(p) == d) {
      self.0.pop();
    } else {
      self.0.push(d);
    }
  }

  pub fn extended(&self, graph: &ModelGraph, d: DartId) -> Walk {
    let mut w = self.clone();
    w.push_reduced(graph, d);
    w
  }

  /// `self` followed by `other`, reduced.
  pub fn concat(&self, graph: &ModelGraph, other: &Walk) -> Walk {
    let mut w = self.clone();
    for &d in &other.0 {
      w.push_reduced(graph, d);
    }
    w
  }

  /// The reverse walk with every dart replaced by its opposite.
  pub fn inverse(&self, graph: &ModelGraph) -> Walk {
    Walk(self.0.iter().rev().map(|&d| graph.opposite(d)).collect())
  }
}

/// An element of the free fundamental group: a reduced closed walk at the base.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeckElement(Walk);

impl DeckElement {
  pub fn identity() -> Self {
    DeckElement(Walk::empty())
  }

  pub fn from_walk(graph: &ModelGraph, walk: Walk) -> Result<Self, CoverError> {
    if walk.endpoint_checked(graph)? != graph.base() {
      return Err(CoverError::ForeignVertex("deck word is not closed".into()));
    }
    Ok(DeckElement(walk))
  }

  pub fn word(&self) -> &Walk {
    &self.0
  }

  pub fn is_identity(&self) -> bool {
    self.0.is_empty()
  }

  /// Group product `self · other`: act by `other` first, then `self`.
  pub fn compose(&self, graph: &ModelGraph, other: &DeckElement) -> DeckElement {
    DeckElement(self.0.concat(graph, &other.0))
  }

  pub fn inverse(&self, graph: &ModelGraph) -> DeckElement {
    DeckElement(self.0.inverse(graph))
  }
}

/// A sphere vertex in canonical encoding.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SphereVertex {
  walk: Walk,
  dart: DartId,
}

impl SphereVertex {
  /// Canonicalizes the encoding `(walk, dart)`. Assumes `dart` sits at the
  /// endpoint of `walk`.
  pub fn new(graph: &ModelGraph, walk: Walk, dart: DartId) -> Self {
    if walk.last().is_some_and(|p| graph.opposite(p) == dart) {
      let mut w = walk;
      let p = w.0.pop().expect("nonempty");
      SphereVertex { walk: w, dart: p }
    } else {
      SphereVertex { walk, dart }
    }
  }

  /// Validates and canonicalizes a user-supplied encoding.
  pub fn checked(graph: &ModelGraph, walk: Walk, dart: DartId) -> Result<Self, CoverError> {
    let at = walk.endpoint_checked(graph)?;
    if dart.index() >= graph.dart_count() || graph.vertex_of(dart) != at {
      return Err(CoverError::ForeignVertex(format!(
        "dart {} is not at the walk endpoint",
        dart.0
      )));
    }
    Ok(SphereVertex::new(graph, walk, dart))
  }

  pub fn walk(&self) -> &Walk {
    &self.walk
  }

  pub fn dart(&self) -> DartId {
    self.dart
  }

  /// The base system sphere this vertex lies over.
  pub fn edge(&self, graph: &ModelGraph) -> EdgeId {
    graph.edge_of(self.dart)
  }

  /// The two pants neighbors: the near one (canonical walk) and the far one.
  pub fn ends(&self, graph: &ModelGraph) -> [Walk; 2] {
    [self.walk.clone(), self.walk.extended(graph, self.dart)]
  }

  /// The dart at `pants` that points to this sphere vertex, if adjacent.
  pub fn dart_from(&self, graph: &ModelGraph, pants: &Walk) -> Option<DartId> {
    if *pants == self.walk {
      Some(self.dart)
    } else if pants.len() == self.walk.len() + 1
      && pants.0[..self.walk.len()] == self.walk.0[..]
      && pants.last() == Some(self.dart)
    {
      Some(graph.opposite(self.dart))
    } else {
      None
    }
  }
}

impl PartialOrd for SphereVertex {
  fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
    Some(self.cmp(other))
  }
}

impl Ord for SphereVertex {
  fn cmp(&self, other: &Self) -> Ordering {
    (&self.walk, self.dart).cmp(&(&other.walk, other.dart))
  }
}

/// A vertex of the dual tree: a lifted pants or a lifted system sphere.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TreeVertex {
  Pants(Walk),
  Sphere(SphereVertex),
}

impl TreeVertex {
  pub fn is_pants(&self) -> bool {
    matches!(self, TreeVertex::Pants(_))
  }
}

impl fmt::Display for Walk {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let parts: Vec<String> = self.0.iter().map(|d| d.0.to_string()).collect();
    write!(f, "[{}]", parts.join(","))
  }
}

/// Queries on the dual tree over a fixed graph.
#[derive(Clone, Copy, Debug)]
pub struct Cover<'g> {
  graph: &'g ModelGraph,
}

impl<'g> Cover<'g> {
  pub fn new(graph: &'g ModelGraph) -> Self {
    Cover { graph }
  }

  pub fn graph(&self) -> &'g ModelGraph {
    self.graph
  }

  pub fn check(&self, v: &TreeVertex) -> Result<(), CoverError> {
    match v {
      TreeVertex::Pants(w) => w.endpoint_checked(self.graph).map(|_| ()),
      TreeVertex::Sphere(s) => {
        let again = SphereVertex::checked(self.graph, s.walk.clone(), s.dart)?;
        if again != *s {
          return Err(CoverError::ForeignVertex("sphere vertex is not canonical".into()));
        }
        Ok(())
      }
    }
  }

  fn check_deck(&self, g: &DeckElement) -> Result<(), CoverError> {
    if g.0.endpoint_checked(self.graph)? != self.graph.base() {
      return Err(CoverError::ForeignVertex("deck word is not closed".into()));
    }
    Ok(())
  }

  /// The graph cell a tree vertex lies over.
  pub fn cell(&self, v: &TreeVertex) -> Cell {
    match v {
      TreeVertex::Pants(w) => Cell::Pants(w.endpoint(self.graph)),
      TreeVertex::Sphere(s) => Cell::Sphere(s.edge(self.graph)),
    }
  }

  pub fn sphere_at(&self, pants: &Walk, d: DartId) -> SphereVertex {
    SphereVertex::new(self.graph, pants.clone(), d)
  }

  /// Pants vertices give their three sphere vertices in dart order; sphere
  /// vertices give their two pants ends.
  pub fn neighbors(&self, v: &TreeVertex) -> Result<Vec<TreeVertex>, CoverError> {
    self.check(v)?;
    Ok(self.neighbors_unchecked(v))
  }

  pub(crate) fn neighbors_unchecked(&self, v: &TreeVertex) -> Vec<TreeVertex> {
    match v {
      TreeVertex::Pants(w) => self
        .graph
        .darts_at(w.endpoint(self.graph))
        .iter()
        .map(|&d| TreeVertex::Sphere(self.sphere_at(w, d)))
        .collect(),
      TreeVertex::Sphere(s) => s.ends(self.graph).into_iter().map(TreeVertex::Pants).collect(),
    }
  }

  pub fn act(&self, g: &DeckElement, v: &TreeVertex) -> Result<TreeVertex, CoverError> {
    self.check_deck(g)?;
    self.check(v)?;
    Ok(self.act_unchecked(g, v))
  }

  pub(crate) fn act_walk(&self, g: &DeckElement, w: &Walk) -> Walk {
    g.0.concat(self.graph, w)
  }

  pub(crate) fn act_sphere(&self, g: &DeckElement, s: &SphereVertex) -> SphereVertex {
    SphereVertex::new(self.graph, self.act_walk(g, &s.walk), s.dart)
  }

  pub(crate) fn act_unchecked(&self, g: &DeckElement, v: &TreeVertex) -> TreeVertex {
    match v {
      TreeVertex::Pants(w) => TreeVertex::Pants(self.act_walk(g, w)),
      TreeVertex::Sphere(s) => TreeVertex::Sphere(self.act_sphere(g, s)),
    }
  }

  /// The unique deck element taking `w` to `u`, when both lie over the same
  /// cell of the graph.
  pub fn transporter(&self, u: &TreeVertex, w: &TreeVertex) -> Result<Option<DeckElement>, CoverError> {
    self.check(u)?;
    self.check(w)?;
    Ok(self.transporter_unchecked(u, w))
  }

  pub(crate) fn transporter_unchecked(&self, u: &TreeVertex, w: &TreeVertex) -> Option<DeckElement> {
    match (u, w) {
      (TreeVertex::Pants(a), TreeVertex::Pants(b)) => self.pants_transporter(a, b),
      (TreeVertex::Sphere(a), TreeVertex::Sphere(b)) => self.sphere_transporter(a, b),
      _ => None,
    }
  }

  pub(crate) fn pants_transporter(&self, u: &Walk, w: &Walk) -> Option<DeckElement> {
    (u.endpoint(self.graph) == w.endpoint(self.graph))
      .then(|| DeckElement(u.concat(self.graph, &w.inverse(self.graph))))
  }

  pub(crate) fn sphere_transporter(&self, u: &SphereVertex, w: &SphereVertex) -> Option<DeckElement> {
    if u.dart == w.dart {
      self.pants_transporter(&u.walk, &w.walk)
    } else if u.dart == self.graph.opposite(w.dart) {
      self.pants_transporter(&u.walk, &w.walk.extended(self.graph, w.dart))
    } else {
      None
    }
  }

  /// The tree path from the base pants vertex to `v`, inclusive.
  fn root_path(&self, v: &TreeVertex) -> Vec<TreeVertex> {
    let (walk, tail) = match v {
      TreeVertex::Pants(w) => (w, None),
      TreeVertex::Sphere(s) => (&s.walk, Some(v.clone())),
    };
    let mut out = Vec::with_capacity(2 * walk.len() + 2);
    let mut prefix = Walk::empty();
    out.push(TreeVertex::Pants(prefix.clone()));
    for &d in walk.darts() {
      out.push(TreeVertex::Sphere(SphereVertex {
        walk: prefix.clone(),
        dart: d,
      }));
      prefix.0.push(d);
      out.push(TreeVertex::Pants(prefix.clone()));
    }
    out.extend(tail);
    out
  }

  /// The unique reduced path from `u` to `v` in the tree.
  pub fn tree_path(&self, u: &TreeVertex, v: &TreeVertex) -> Result<Vec<TreeVertex>, CoverError> {
    self.check(u)?;
    self.check(v)?;
    Ok(self.tree_path_unchecked(u, v))
  }

  pub(crate) fn tree_path_unchecked(&self, u: &TreeVertex, v: &TreeVertex) -> Vec<TreeVertex> {
    let pu = self.root_path(u);
    let pv = self.root_path(v);
    let common = pu.iter().zip(&pv).take_while(|(a, b)| a == b).count();
    let mut path: Vec<TreeVertex> = pu[common - 1..].iter().rev().cloned().collect();
    path.extend(pv[common..].iter().cloned());
    path
  }

  pub fn distance(&self, u: &TreeVertex, v: &TreeVertex) -> usize {
    self.tree_path_unchecked(u, v).len() - 1
  }

  /// All tree vertices within `radius` of any of `sources`, in breadth-first
  /// discovery order.
  pub fn ball(&self, sources: &[TreeVertex], radius: usize) -> Vec<TreeVertex> {
    let mut seen: std::collections::HashSet<TreeVertex> = sources.iter().cloned().collect();
    let mut out: Vec<TreeVertex> = sources.to_vec();
    let mut queue: VecDeque<(TreeVertex, usize)> = sources.iter().map(|s| (s.clone(), 0)).collect();
    while let Some((v, r)) = queue.pop_front() {
      if r == radius {
        continue;
      }
      for n in self.neighbors_unchecked(&v) {
        if seen.insert(n.clone()) {
          out.push(n.clone());
          queue.push_back((n, r + 1));
        }
      }
    }
    out
  }

  /// Canonical lift of each graph vertex: walks along a breadth-first
  /// spanning tree from the base, darts in identifier order.
  pub fn fundamental_domain(&self) -> Vec<Walk> {
    let g = self.graph;
    let mut lift: Vec<Option<Walk>> = vec![None; g.pants_count()];
    lift[g.base().index()] = Some(Walk::empty());
    let mut queue = VecDeque::from([g.base()]);
    while let Some(v) = queue.pop_front() {
      let here = lift[v.index()].clone().expect("visited");
      for d in g.darts_at(v) {
        let w = g.across(d);
        if lift[w.index()].is_none() {
          lift[w.index()] = Some(here.extended(g, d));
          queue.push_back(w);
        }
      }
    }
    lift.into_iter().map(|w| w.expect("connected graph")).collect()
  }

  /// Every reduced closed walk at the base of length at most `max_len`.
  pub fn deck_elements_up_to(&self, max_len: usize) -> Vec<DeckElement> {
    let g = self.graph;
    let mut out = Vec::new();
    let mut stack = vec![Walk::empty()];
    while let Some(w) = stack.pop() {
      if w.endpoint(g) == g.base() {
        out.push(DeckElement(w.clone()));
      }
      if w.len() < max_len {
        for d in g.darts_at(w.endpoint(g)) {
          if w.last().is_some_and(|p| g.opposite(p) == d) {
            continue;
          }
          let mut next = w.clone();
          next.0.push(d);
          stack.push(next);
        }
      }
    }
    out.sort();
    out
  }
}

/// A cell of the base graph: a pants or a system sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cell {
  Pants(PantsId),
  Sphere(EdgeId),
}
