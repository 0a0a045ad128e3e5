//! Exit criteria. Each test prints one PASS/FAIL line; run with
//! `cargo test --test acceptance -- --nocapture` to see them.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sphere_systems::complex::{build_complex, enumerate, is_simplex};
use sphere_systems::cover::{Cover, TreeVertex};
use sphere_systems::sides::{
  agree_up_to_flip, algebraic_intersection, crossing, crossing_oracle, oracle_labels, overlap_candidates,
  side_labels, system_class, Carrier,
};
use sphere_systems::{ModelGraph, NormalSphere};

use common::{censuses, random_deck, theta, MAX_CIRCLES};

fn report(id: u32, title: &str, ok: bool, detail: String) {
  println!(
    "[{}] criterion {id}: {title}: {detail}",
    if ok { "PASS" } else { "FAIL" }
  );
}

#[test]
fn c1_circles_equal_crossing_translates() {
  // Timed from scratch, enumeration included.
  let start = Instant::now();
  let mut checks = 0;
  let mut failures = Vec::new();
  for census in censuses() {
    let g = &census.graph;
    let classes = enumerate(g, MAX_CIRCLES).unwrap();
    for a in &classes {
      for e in g.edges() {
        let circles = a.circle_count_over(g, e);
        let translates = algebraic_intersection(g, a, &system_class(g, e)).unwrap().count;
        checks += 1;
        if circles != translates {
          failures.push(format!(
            "{}: {} over {}: {circles} != {translates}",
            census.name,
            a.to_json(g),
            g.edge_name(e)
          ));
        }
      }
    }
  }
  let elapsed = start.elapsed();
  let ok = failures.is_empty() && elapsed < Duration::from_secs(120);
  report(
    1,
    "circles = crossing translates",
    ok,
    format!("{checks} checks, {} exceptions, {elapsed:.2?}", failures.len()),
  );
  assert!(failures.is_empty(), "{failures:#?}");
  assert!(elapsed < Duration::from_secs(120));
}

#[test]
fn c2_self_disjointness() {
  let start = Instant::now();
  let mut checks = 0;
  let mut failures = 0;
  for census in censuses() {
    let g = &census.graph;
    for a in &census.classes {
      for h in overlap_candidates(g, a, a) {
        let moved = a.translate(g, &h).unwrap();
        checks += 1;
        if crossing(g, a, &moved).unwrap().crosses {
          failures += 1;
        }
      }
    }
  }
  let elapsed = start.elapsed();
  let ok = failures == 0 && elapsed < Duration::from_secs(60);
  report(
    2,
    "translates of a sphere never cross it",
    ok,
    format!("{checks} translates, {failures} crossing, {elapsed:.2?}"),
  );
  assert_eq!(failures, 0);
  assert!(elapsed < Duration::from_secs(60));
}

#[test]
fn c3_symmetry() {
  let mut rng = ChaCha8Rng::seed_from_u64(3);
  let mut pairs = 0;
  let mut failures = 0;
  for census in censuses() {
    let g = &census.graph;
    let n = census.classes.len();
    let mut all: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    all.shuffle(&mut rng);
    for &(i, j) in all.iter().take(120) {
      let (a, b) = (&census.classes[i], &census.classes[j]);
      let ab = algebraic_intersection(g, a, b).unwrap().count;
      let ba = algebraic_intersection(g, b, a).unwrap().count;
      pairs += 1;
      if ab != ba {
        failures += 1;
      }
    }
  }
  let ok = failures == 0 && pairs >= 200;
  report(
    3,
    "algebraic intersection is symmetric",
    ok,
    format!("{pairs} pairs, {failures} asymmetric"),
  );
  assert!(pairs >= 200);
  assert_eq!(failures, 0);
}

fn oracle_agrees(g: &ModelGraph, a: &NormalSphere, b: &NormalSphere) -> bool {
  let main = crossing(g, a, b).unwrap();
  let oracle = crossing_oracle(g, a, b).unwrap();
  let carrier = Carrier::spanning(g, a, b);
  let labels_agree = [a, b].iter().all(|s| {
    agree_up_to_flip(
      &side_labels(g, s, &carrier).unwrap(),
      &oracle_labels(g, s, &carrier).unwrap(),
    )
  });
  main.crosses == oracle.crosses && labels_agree
}

#[test]
fn c4_oracle_equivalence() {
  let mut rng = ChaCha8Rng::seed_from_u64(4);
  let mut pairs = 0;
  let mut failures = 0;
  for census in censuses() {
    let g = &census.graph;
    let systems: Vec<NormalSphere> = g.edges().map(|e| system_class(g, e)).collect();
    for a in &census.classes {
      // Every pair examined by criterion 1.
      for sys in &systems {
        for h in overlap_candidates(g, a, sys) {
          pairs += 1;
          failures += usize::from(!oracle_agrees(g, a, &sys.translate(g, &h).unwrap()));
        }
      }
      // Self-translates and other classes near the sphere.
      for h in overlap_candidates(g, a, a) {
        pairs += 1;
        failures += usize::from(!oracle_agrees(g, a, &a.translate(g, &h).unwrap()));
      }
      for b in census.classes.choose_multiple(&mut rng, 6) {
        for h in overlap_candidates(g, a, b) {
          pairs += 1;
          failures += usize::from(!oracle_agrees(g, a, &b.translate(g, &h).unwrap()));
        }
      }
    }
  }
  report(
    4,
    "region components agree with co-orientation propagation",
    failures == 0,
    format!("{pairs} pairs, {failures} disagreements"),
  );
  assert_eq!(failures, 0);
}

#[test]
fn c5_crossing_law_for_system_spheres() {
  let mut checks = 0;
  let mut failures = 0;
  for census in censuses() {
    let g = &census.graph;
    let cover = Cover::new(g);
    for a in &census.classes {
      let circles: BTreeSet<TreeVertex> = match a {
        NormalSphere::System(_) => BTreeSet::new(),
        NormalSphere::Surface(s) => s.circles().iter().cloned().map(TreeVertex::Sphere).collect(),
      };
      for v in cover.ball(&a.subtree(), 4) {
        let TreeVertex::Sphere(w) = &v else { continue };
        let crosses = crossing(g, a, &NormalSphere::system(w.clone())).unwrap().crosses;
        checks += 1;
        if crosses != circles.contains(&v) {
          failures += 1;
        }
      }
    }
  }
  report(
    5,
    "a sphere crosses a system lift iff it has a circle there",
    failures == 0,
    format!("{checks} sphere vertices, {failures} violations"),
  );
  assert_eq!(failures, 0);
}

#[test]
fn c6_finiteness_bound() {
  let mut runs = 0;
  let mut worst = 0.0f64;
  let mut violations = 0;
  for census in censuses() {
    let g = &census.graph;
    for a in &census.classes {
      for e in g.edges() {
        let b = system_class(g, e);
        let r = algebraic_intersection(g, a, &b).unwrap();
        let bound = a.subtree_size() * b.subtree_size();
        runs += 1;
        worst = worst.max(r.candidates as f64 / bound as f64);
        if r.candidates > bound {
          violations += 1;
        }
      }
    }
  }
  report(
    6,
    "candidate translates bounded by |T(A)|*|T(B)|",
    violations == 0,
    format!("{runs} runs, {violations} over the bound, max ratio {worst:.2}"),
  );
  assert_eq!(violations, 0);
}

#[test]
fn c7_structural_invariants() {
  let mut rng = ChaCha8Rng::seed_from_u64(7);
  let mut euler = 0;
  let mut orbit = 0;
  let mut round_trip = 0;
  let mut checked = (0, 0, 0);
  for census in censuses() {
    let g = &census.graph;
    checked.2 += 1;
    if ModelGraph::parse(&g.to_json()).as_ref() != Ok(g) {
      round_trip += 1;
    }
    for a in &census.classes {
      let c = a.piece_counts(g);
      checked.0 += 1;
      if !a.is_system() && c.disks != c.pants + 2 {
        euler += 1;
      }
      checked.2 += 1;
      if NormalSphere::parse(g, &a.to_json(g)).as_ref() != Ok(a) {
        round_trip += 1;
      }
    }
    let sample: Vec<&NormalSphere> = census.classes.choose_multiple(&mut rng, 50).collect();
    for a in sample {
      let canon = a.canonical_rep(g);
      for _ in 0..100 {
        let h = random_deck(g, &mut rng, 8);
        let moved = a.translate(g, &h).unwrap();
        checked.1 += 1;
        checked.2 += 1;
        if moved.canonical_rep(g) != canon {
          orbit += 1;
        }
        if NormalSphere::parse(g, &moved.to_json(g)).as_ref() != Ok(&moved) {
          round_trip += 1;
        }
      }
    }
  }
  let ok = euler == 0 && orbit == 0 && round_trip == 0;
  report(
    7,
    "D = P + 2, canonical_rep orbit invariance, document round trips",
    ok,
    format!(
      "{} spheres ({euler} bad), {} translates ({orbit} bad), {} documents ({round_trip} bad)",
      checked.0, checked.1, checked.2
    ),
  );
  assert!(ok);
}

#[test]
fn c8_complex_sanity() {
  let start = Instant::now();
  let g = theta();
  let cx = build_complex(&g, 2).unwrap();
  let systems: Vec<usize> = (0..cx.vertices.len())
    .filter(|&i| cx.vertices[i].is_system())
    .collect();
  let clique = systems.len() == 3
    && systems
      .iter()
      .all(|&i| systems.iter().all(|&j| i == j || cx.has_edge(i, j)));

  let n = cx.vertices.len();
  let mut symmetric = true;
  for i in 0..n {
    for j in 0..n {
      if i != j {
        let ij = algebraic_intersection(&g, &cx.vertices[i], &cx.vertices[j])
          .unwrap()
          .count
          == 0;
        let ji = algebraic_intersection(&g, &cx.vertices[j], &cx.vertices[i])
          .unwrap()
          .count
          == 0;
        symmetric &= ij == ji && ij == cx.has_edge(i, j);
      }
    }
  }

  let mut subsets = 0;
  let mut mismatches = 0;
  for mask in 1u32..(1 << n) {
    if mask.count_ones() > 4 {
      continue;
    }
    let members: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
    let set: Vec<NormalSphere> = members.iter().map(|&i| cx.vertices[i].clone()).collect();
    let pairwise = members
      .iter()
      .all(|&i| members.iter().all(|&j| i == j || cx.has_edge(i, j)));
    subsets += 1;
    if is_simplex(&g, &set).unwrap() != pairwise {
      mismatches += 1;
    }
  }
  let elapsed = start.elapsed();
  let ok = clique && symmetric && mismatches == 0 && elapsed < Duration::from_secs(30);
  report(
    8,
    "sphere complex: system clique, flag simplices, symmetric edges",
    ok,
    format!(
      "{n} vertices, {} edges, {subsets} subsets, {mismatches} mismatches, {elapsed:.2?}",
      cx.edges.len()
    ),
  );
  assert!(clique);
  assert!(symmetric);
  assert_eq!(mismatches, 0);
  assert!(elapsed < Duration::from_secs(30));
}
