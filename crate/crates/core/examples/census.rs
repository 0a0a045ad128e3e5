//! Prints class counts per graph and circle bound.

use std::time::Instant;

use sphere_systems::complex::{candidate_classes, enumerate};
use sphere_systems::{ModelGraph, Style};

fn main() {
  let max: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4);
  for (name, rank, style) in [
    ("theta", 2, Style::ThetaChain),
    ("dumbbell", 2, Style::DumbbellChain),
    ("theta-chain-3", 3, Style::ThetaChain),
  ] {
    let g = ModelGraph::standard(rank, style).unwrap();
    for k in 0..=max {
      let t = Instant::now();
      let candidates = candidate_classes(&g, k).len();
      let classes = enumerate(&g, k).unwrap();
      println!(
        "{name:>14} circles<={k}: {candidates:>6} candidates, {:>6} classes ({:.2?})",
        classes.len(),
        t.elapsed()
      );
    }
  }
}
