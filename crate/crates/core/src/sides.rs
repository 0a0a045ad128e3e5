//! End partitions, crossing and intersection numbers.
//!
//! The ends of the universal cover are the ends of the dual tree. A sphere
//! splits them in two, and over a finite connected set of pants vertices `U`
//! containing its pieces every end leaves through exactly one departure slot
//! `(u, d)`: a pants vertex of `U` and a dart whose sphere vertex leads out of
//! `U`. All ends beyond one slot lie on the same side of the sphere, so the
//! end partition is a sign per slot. Two spheres cross exactly when all four
//! sign combinations occur among the slots of a common carrier.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::ops::Neg;

use serde::Serialize;
use thiserror::Error;

use crate::cover::{Cover, CoverError, DeckElement, SphereVertex, TreeVertex, Walk};
use crate::graph::{DartId, EdgeId, ModelGraph};
use crate::sphere::{NormalSphere, Piece, SurfaceSphere, Touch};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SidesError {
  #[error("bad carrier: {0}")]
  BadCarrier(String),
  #[error("sphere splits its carrier into {0} regions")]
  InternalSplit(usize),
  #[error(transparent)]
  Cover(#[from] CoverError),
}

impl SidesError {
  pub fn name(&self) -> &'static str {
    match self {
      SidesError::BadCarrier(_) => "BadCarrier",
      SidesError::InternalSplit(_) => "InternalSplit",
      SidesError::Cover(e) => e.name(),
    }
  }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Sign {
  #[serde(rename = "+")]
  Plus,
  #[serde(rename = "-")]
  Minus,
}

impl Neg for Sign {
  type Output = Sign;

  fn neg(self) -> Sign {
    match self {
      Sign::Plus => Sign::Minus,
      Sign::Minus => Sign::Plus,
    }
  }
}

impl Sign {
  fn index(self) -> usize {
    match self {
      Sign::Plus => 0,
      Sign::Minus => 1,
    }
  }

  pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];
}

/// A departure slot: ends leaving the carrier at `at` through `dart`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
  pub at: Walk,
  pub dart: DartId,
}

pub type SlotLabeling = BTreeMap<Slot, Sign>;

/// A finite connected set of pants vertices of the tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Carrier {
  pants: BTreeSet<Walk>,
}

impl Carrier {
  pub fn new(graph: &ModelGraph, pants: impl IntoIterator<Item = Walk>) -> Result<Self, SidesError> {
    let pants: BTreeSet<Walk> = pants.into_iter().collect();
    let cover = Cover::new(graph);
    for w in &pants {
      cover.check(&TreeVertex::Pants(w.clone()))?;
    }
    let Some(first) = pants.iter().next() else {
      return Err(SidesError::BadCarrier("empty".into()));
    };
    let mut seen = BTreeSet::from([first.clone()]);
    let mut queue = VecDeque::from([first.clone()]);
    while let Some(w) = queue.pop_front() {
      for d in graph.darts_at(w.endpoint(graph)) {
        let next = w.extended(graph, d);
        if pants.contains(&next) && seen.insert(next.clone()) {
          queue.push_back(next);
        }
      }
    }
    if seen.len() != pants.len() {
      return Err(SidesError::BadCarrier("not connected".into()));
    }
    Ok(Carrier { pants })
  }

  /// The pants vertices of the least subtree containing both spheres, closed
  /// under taking both ends of its sphere vertices.
  pub fn spanning(graph: &ModelGraph, a: &NormalSphere, b: &NormalSphere) -> Carrier {
    let cover = Cover::new(graph);
    let ta = a.subtree();
    let tb = b.subtree();
    let mut pants = BTreeSet::new();
    let bridge = cover.tree_path_unchecked(&ta[0], &tb[0]);
    for v in ta.iter().chain(&tb).chain(&bridge) {
      match v {
        TreeVertex::Pants(w) => {
          pants.insert(w.clone());
        }
        TreeVertex::Sphere(s) => pants.extend(s.ends(graph)),
      }
    }
    Carrier { pants }
  }

  pub fn pants(&self) -> &BTreeSet<Walk> {
    &self.pants
  }

  pub fn contains(&self, w: &Walk) -> bool {
    self.pants.contains(w)
  }

  /// Departure slots in order.
  pub fn slots(&self, graph: &ModelGraph) -> Vec<Slot> {
    let mut out = Vec::new();
    for w in &self.pants {
      for d in graph.darts_at(w.endpoint(graph)) {
        if !self.pants.contains(&w.extended(graph, d)) {
          out.push(Slot {
            at: w.clone(),
            dart: d,
          });
        }
      }
    }
    out
  }
}

struct Dsu {
  parent: Vec<usize>,
  size: Vec<usize>,
}

impl Dsu {
  fn new(n: usize) -> Self {
    Dsu {
      parent: (0..n).collect(),
      size: vec![1; n],
    }
  }

  fn find(&mut self, mut x: usize) -> usize {
    while self.parent[x] != x {
      self.parent[x] = self.parent[self.parent[x]];
      x = self.parent[x];
    }
    x
  }

  fn union(&mut self, a: usize, b: usize) {
    let (mut a, mut b) = (self.find(a), self.find(b));
    if a == b {
      return;
    }
    if self.size[a] < self.size[b] {
      std::mem::swap(&mut a, &mut b);
    }
    self.parent[b] = a;
    self.size[a] += self.size[b];
  }
}

/// The region of `w` containing the whole boundary sphere at `d`, for a dart
/// that carries no circle.
fn whole_region(piece: Option<&Piece>, d: DartId) -> u8 {
  match piece.map(|p| p.touch(d)) {
    None => 0,
    Some(Touch::Whole(r)) => r,
    Some(Touch::Halves) => unreachable!("circle darts never carry a whole region"),
  }
}

/// Labels the departure slots of `carrier` by the side of `sphere` their ends
/// lie on. Regions of all carrier vertices are merged across sphere vertices
/// with a disjoint-set forest; the side containing the least slot is `+`.
pub fn side_labels(
  graph: &ModelGraph,
  sphere: &NormalSphere,
  carrier: &Carrier,
) -> Result<SlotLabeling, SidesError> {
  sphere.check(graph)?;
  match sphere {
    NormalSphere::System(s) => {
      if !s.ends(graph).iter().all(|e| carrier.contains(e)) {
        return Err(SidesError::BadCarrier(
          "does not contain both sides of the sphere".into(),
        ));
      }
    }
    NormalSphere::Surface(s) => {
      if !s.pants().iter().all(|w| carrier.contains(w)) {
        return Err(SidesError::BadCarrier("does not contain every piece".into()));
      }
    }
  }
  region_labels(graph, sphere, carrier)
}

pub(crate) fn region_labels(
  graph: &ModelGraph,
  sphere: &NormalSphere,
  carrier: &Carrier,
) -> Result<SlotLabeling, SidesError> {
  let (surface, cut): (Option<&SurfaceSphere>, Option<&SphereVertex>) = match sphere {
    NormalSphere::System(s) => (None, Some(s)),
    NormalSphere::Surface(s) => (Some(s), None),
  };
  let pieces: HashMap<&Walk, Piece> = surface
    .map(|s| s.pants().iter().map(|w| (w, s.piece(graph, w))).collect())
    .unwrap_or_default();

  let mut base_index: HashMap<&Walk, usize> = HashMap::new();
  let mut count = 0;
  for w in carrier.pants() {
    base_index.insert(w, count);
    count += if pieces.contains_key(w) { 2 } else { 1 };
  }
  let node = |w: &Walk, r: u8| base_index[w] + r as usize;

  let mut dsu = Dsu::new(count);
  for w in carrier.pants() {
    for d in graph.darts_at(w.endpoint(graph)) {
      let v = w.extended(graph, d);
      if !carrier.contains(&v) || v < *w {
        continue;
      }
      let s = SphereVertex::new(graph, w.clone(), d);
      if cut == Some(&s) {
        continue;
      }
      match surface.and_then(|sf| sf.circle_index(&s).map(|i| sf.aligned()[i])) {
        Some(aligned) => {
          let (near, far) = if s.walk() == w { (w, &v) } else { (&v, w) };
          for r in 0..2u8 {
            let other = if aligned { r } else { 1 - r };
            dsu.union(node(near, r), node(far, other));
          }
        }
        None => {
          let rw = whole_region(pieces.get(w), d);
          let rv = whole_region(pieces.get(&v), graph.opposite(d));
          dsu.union(node(w, rw), node(&v, rv));
        }
      }
    }
  }

  let roots: BTreeSet<usize> = (0..count).map(|i| dsu.find(i)).collect();
  if roots.len() != 2 {
    return Err(SidesError::InternalSplit(roots.len()));
  }

  let mut labels = SlotLabeling::new();
  let mut plus_root = None;
  for slot in carrier.slots(graph) {
    let root = dsu.find(node(&slot.at, whole_region(pieces.get(&slot.at), slot.dart)));
    let plus = *plus_root.get_or_insert(root);
    labels.insert(slot, if root == plus { Sign::Plus } else { Sign::Minus });
  }
  Ok(labels)
}

/// Independent labeling: co-orient the sphere by propagating signs across its
/// own circles from a root piece, then give each carrier slot the sign of the
/// piece region it faces along the tree path toward the sphere.
pub fn oracle_labels(
  graph: &ModelGraph,
  sphere: &NormalSphere,
  carrier: &Carrier,
) -> Result<SlotLabeling, SidesError> {
  sphere.check(graph)?;
  let cover = Cover::new(graph);
  let mut labels = SlotLabeling::new();
  match sphere {
    NormalSphere::System(s) => {
      let [near, far] = s.ends(graph);
      let target = TreeVertex::Sphere(s.clone());
      for slot in carrier.slots(graph) {
        let through = cover.sphere_at(&slot.at, slot.dart);
        let path = cover.tree_path_unchecked(&TreeVertex::Pants(slot.at.clone()), &target);
        let side = match &path[path.len() - 2] {
          TreeVertex::Pants(w) if *w == near => Sign::Plus,
          TreeVertex::Pants(w) if *w == far => Sign::Minus,
          _ => unreachable!("path to a sphere vertex ends at one of its ends"),
        };
        labels.insert(slot, if through == *s { -side } else { side });
      }
    }
    NormalSphere::Surface(s) => {
      let signs = propagate(graph, s);
      let anchor = TreeVertex::Pants(s.pants()[0].clone());
      for slot in carrier.slots(graph) {
        let (at, dart) = if s.contains_pants(&slot.at) {
          (slot.at.clone(), slot.dart)
        } else {
          let path = cover.tree_path_unchecked(&TreeVertex::Pants(slot.at.clone()), &anchor);
          let k = path
            .iter()
            .position(|v| matches!(v, TreeVertex::Pants(w) if s.contains_pants(w)))
            .expect("path reaches the sphere");
          let TreeVertex::Pants(entry) = &path[k] else {
            unreachable!()
          };
          let TreeVertex::Sphere(via) = &path[k - 1] else {
            unreachable!("pants alternate with spheres")
          };
          (entry.clone(), via.dart_from(graph, entry).expect("adjacent"))
        };
        let piece = s.piece(graph, &at);
        let Touch::Whole(r) = piece.touch(dart) else {
          return Err(SidesError::BadCarrier(
            "slot enters the sphere through a circle".into(),
          ));
        };
        labels.insert(slot, signs[&(at, r)]);
      }
    }
  }
  Ok(labels)
}

/// Signs of the two regions of every piece, by rooted traversal.
fn propagate(graph: &ModelGraph, s: &SurfaceSphere) -> HashMap<(Walk, u8), Sign> {
  let root = s.pants()[0].clone();
  let mut signs = HashMap::new();
  signs.insert((root.clone(), 0), Sign::Plus);
  signs.insert((root.clone(), 1), Sign::Minus);
  let mut seen = HashSet::from([root.clone()]);
  let mut queue = VecDeque::from([root]);
  while let Some(w) = queue.pop_front() {
    for (d, i) in s.circles_at(graph, &w) {
      let next = w.extended(graph, d);
      if !seen.insert(next.clone()) {
        continue;
      }
      let flip = !s.aligned()[i];
      for r in 0..2u8 {
        let other = if flip { 1 - r } else { r };
        let sign = signs[&(w.clone(), r)];
        signs.insert((next.clone(), other), sign);
      }
      queue.push_back(next);
    }
  }
  signs
}

/// The four corners of a pair of end partitions, indexed by `(A-sign, B-sign)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingReport {
  pub crosses: bool,
  pub corners: [[Option<Slot>; 2]; 2],
}

impl CrossingReport {
  fn from_labels(a: &SlotLabeling, b: &SlotLabeling) -> Self {
    let mut corners: [[Option<Slot>; 2]; 2] = Default::default();
    for (slot, sa) in a {
      let sb = b[slot];
      let corner = &mut corners[sa.index()][sb.index()];
      if corner.is_none() {
        *corner = Some(slot.clone());
      }
    }
    let crosses = corners.iter().flatten().all(Option::is_some);
    CrossingReport { crosses, corners }
  }

  pub fn corner(&self, a: Sign, b: Sign) -> Option<&Slot> {
    self.corners[a.index()][b.index()].as_ref()
  }

  pub fn to_document(&self, graph: &ModelGraph) -> CrossingDocument {
    let mut corners = Vec::new();
    for a in Sign::BOTH {
      for b in Sign::BOTH {
        corners.push(CornerEntry {
          a,
          b,
          witness: self.corner(a, b).map(|s| SlotEntry {
            at: s
              .at
              .darts()
              .iter()
              .map(|d| graph.dart_name(*d).to_owned())
              .collect(),
            dart: graph.dart_name(s.dart).to_owned(),
          }),
        });
      }
    }
    CrossingDocument {
      crosses: self.crosses,
      corners,
    }
  }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlotEntry {
  pub at: Vec<String>,
  pub dart: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CornerEntry {
  pub a: Sign,
  pub b: Sign,
  pub witness: Option<SlotEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossingDocument {
  pub crosses: bool,
  pub corners: Vec<CornerEntry>,
}

/// Whether two spheres in the universal cover cross.
pub fn crossing(
  graph: &ModelGraph,
  a: &NormalSphere,
  b: &NormalSphere,
) -> Result<CrossingReport, SidesError> {
  a.check(graph)?;
  b.check(graph)?;
  crossing_unchecked(graph, a, b)
}

pub(crate) fn crossing_unchecked(
  graph: &ModelGraph,
  a: &NormalSphere,
  b: &NormalSphere,
) -> Result<CrossingReport, SidesError> {
  let carrier = Carrier::spanning(graph, a, b);
  let la = region_labels(graph, a, &carrier)?;
  let lb = region_labels(graph, b, &carrier)?;
  Ok(CrossingReport::from_labels(&la, &lb))
}

/// The crossing test computed through [`oracle_labels`].
pub fn crossing_oracle(
  graph: &ModelGraph,
  a: &NormalSphere,
  b: &NormalSphere,
) -> Result<CrossingReport, SidesError> {
  let carrier = Carrier::spanning(graph, a, b);
  let la = oracle_labels(graph, a, &carrier)?;
  let lb = oracle_labels(graph, b, &carrier)?;
  Ok(CrossingReport::from_labels(&la, &lb))
}

/// Deck translates of `b` crossing `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionResult {
  pub count: usize,
  pub witnesses: Vec<DeckElement>,
  /// Number of distinct candidate translates examined.
  pub candidates: usize,
}

impl IntersectionResult {
  pub fn to_document(&self, graph: &ModelGraph) -> IntersectionDocument {
    IntersectionDocument {
      count: self.count,
      witnesses: self
        .witnesses
        .iter()
        .map(|g| {
          g.word()
            .darts()
            .iter()
            .map(|d| graph.dart_name(*d).to_owned())
            .collect()
        })
        .collect(),
    }
  }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionDocument {
  pub count: usize,
  pub witnesses: Vec<Vec<String>>,
}

/// Deck elements `g` with `g·T(b)` meeting `T(a)`: the only translates that
/// can cross, since spheres with disjoint subtrees are nested.
pub fn overlap_candidates(graph: &ModelGraph, a: &NormalSphere, b: &NormalSphere) -> BTreeSet<DeckElement> {
  let cover = Cover::new(graph);
  let tb = b.subtree();
  let mut out = BTreeSet::new();
  for u in a.subtree() {
    for w in &tb {
      if let Some(g) = cover.transporter_unchecked(&u, w) {
        out.insert(g);
      }
    }
  }
  out
}

/// Counts the translates of `b` that cross `a`.
pub fn algebraic_intersection(
  graph: &ModelGraph,
  a: &NormalSphere,
  b: &NormalSphere,
) -> Result<IntersectionResult, SidesError> {
  a.check(graph)?;
  b.check(graph)?;
  let cover = Cover::new(graph);
  let candidates = overlap_candidates(graph, a, b);
  let mut witnesses = Vec::new();
  for g in &candidates {
    let moved = b.translate_unchecked(&cover, g);
    if crossing_unchecked(graph, a, &moved)?.crosses {
      witnesses.push(g.clone());
    }
  }
  Ok(IntersectionResult {
    count: witnesses.len(),
    witnesses,
    candidates: candidates.len(),
  })
}

/// The geometric intersection number. It equals the number of crossing
/// translates, so this is the count of [`algebraic_intersection`].
pub fn intersection_number(
  graph: &ModelGraph,
  a: &NormalSphere,
  b: &NormalSphere,
) -> Result<usize, SidesError> {
  Ok(algebraic_intersection(graph, a, b)?.count)
}

/// The canonical class of the system sphere over `edge`.
pub fn system_class(graph: &ModelGraph, edge: EdgeId) -> NormalSphere {
  let cover = Cover::new(graph);
  let d = edge.dart();
  let domain = cover.fundamental_domain();
  NormalSphere::system(SphereVertex::new(
    graph,
    domain[graph.vertex_of(d).index()].clone(),
    d,
  ))
}

/// One row of a theorem check: circles over an edge against crossing
/// translates of that edge's system sphere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremRow {
  pub edge: String,
  pub circles: usize,
  pub crossing_translates: usize,
  pub equal: bool,
}

pub fn theorem_row(graph: &ModelGraph, a: &NormalSphere, edge: EdgeId) -> Result<TheoremRow, SidesError> {
  let canon = a.canonical_rep(graph);
  let circles = canon.circle_count_over(graph, edge);
  let crossing_translates = algebraic_intersection(graph, &canon, &system_class(graph, edge))?.count;
  Ok(TheoremRow {
    edge: graph.edge_name(edge).to_owned(),
    circles,
    crossing_translates,
    equal: circles == crossing_translates,
  })
}

pub fn theorem_check(graph: &ModelGraph, a: &NormalSphere, edge: EdgeId) -> Result<bool, SidesError> {
  Ok(theorem_row(graph, a, edge)?.equal)
}

/// Whether two labelings of the same slots agree up to one global flip.
pub fn agree_up_to_flip(a: &SlotLabeling, b: &SlotLabeling) -> bool {
  if a.len() != b.len() || a.keys().ne(b.keys()) {
    return false;
  }
  let same = a.iter().all(|(k, s)| b[k] == *s);
  let flipped = a.iter().all(|(k, s)| b[k] == -*s);
  same || flipped
}
