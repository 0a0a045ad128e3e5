#![allow(dead_code)]

use std::sync::OnceLock;

use rand::Rng;
use sphere_systems::complex::enumerate;
use sphere_systems::{Cover, DeckElement, ModelGraph, NormalSphere, Style, Walk};

pub struct Census {
  pub name: &'static str,
  pub graph: ModelGraph,
  pub classes: Vec<NormalSphere>,
}

pub const MAX_CIRCLES: usize = 4;

/// The theta graph, the dumbbell and the rank-3 theta chain, each with every
/// sphere class of at most four circles. Computed once per test binary.
pub fn censuses() -> &'static [Census] {
  static CELL: OnceLock<Vec<Census>> = OnceLock::new();
  CELL.get_or_init(|| {
    [
      ("theta", 2, Style::ThetaChain),
      ("dumbbell", 2, Style::DumbbellChain),
      ("theta-chain-3", 3, Style::ThetaChain),
    ]
    .into_iter()
    .map(|(name, rank, style)| {
      let graph = ModelGraph::standard(rank, style).unwrap();
      let classes = enumerate(&graph, MAX_CIRCLES).unwrap();
      Census { name, graph, classes }
    })
    .collect()
  })
}

/// A random reduced closed walk: a random reduced walk of length up to
/// `max_len`, closed up through the spanning tree of the fundamental domain.
pub fn random_deck<R: Rng>(graph: &ModelGraph, rng: &mut R, max_len: usize) -> DeckElement {
  let cover = Cover::new(graph);
  let domain = cover.fundamental_domain();
  let len = rng.gen_range(0..=max_len);
  let mut w = Walk::empty();
  for _ in 0..len {
    let darts = graph.darts_at(w.endpoint(graph));
    let choices: Vec<_> = darts
      .iter()
      .copied()
      .filter(|&d| w.last() != Some(graph.opposite(d)))
      .collect();
    let d = choices[rng.gen_range(0..choices.len())];
    w.push_reduced(graph, d);
  }
  let back = domain[w.endpoint(graph).index()].inverse(graph);
  DeckElement::from_walk(graph, w.concat(graph, &back)).unwrap()
}

pub fn theta() -> ModelGraph {
  ModelGraph::standard(2, Style::ThetaChain).unwrap()
}
