//! The `spheres` command line.
//!
//! Output is JSON on standard output (or DOT for `complex --format dot`).
//! Exit codes: 0 on success, 1 on domain errors with a JSON error report on
//! standard error, 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::complex::{self, ComplexError};
use crate::cover::{DeckElement, Walk};
use crate::graph::{GraphError, ModelGraph, Style};
use crate::sides::{self, SidesError};
use crate::sphere::{NormalSphere, SphereError};

#[derive(Parser, Debug)]
#[command(
  name = "spheres",
  version,
  about = "Normal spheres, crossing and intersection numbers"
)]
struct Cli {
  #[command(subcommand)]
  command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
  /// Write a standard graph of the given rank.
  GraphGen {
    #[arg(long)]
    rank: i64,
    #[arg(long, value_enum, default_value = "theta-chain")]
    style: StyleArg,
    #[arg(long)]
    out: Option<PathBuf>,
  },
  /// Validate a graph document.
  GraphCheck(GraphOnly),
  /// Validate a sphere document and print its canonical class.
  SphereCheck(OneSphere),
  /// Test whether sphere A crosses (a translate of) sphere B.
  Cross(TwoSpheres),
  /// Count translates of B crossing A.
  Intersect(TwoSpheres),
  /// Compare circle counts with crossing translates of system spheres.
  TheoremCheck {
    #[command(flatten)]
    sphere: OneSphere,
    #[arg(long)]
    edge: Option<String>,
  },
  /// List sphere classes up to a circle bound.
  Enumerate(Bounded),
  /// Build the sphere complex up to a circle bound.
  Complex {
    #[command(flatten)]
    bounded: Bounded,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
  },
}

#[derive(Args, Debug)]
struct GraphOnly {
  #[arg(long)]
  graph: PathBuf,
  #[arg(long)]
  out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct OneSphere {
  #[arg(long)]
  graph: PathBuf,
  #[arg(long = "sphere-a")]
  sphere_a: PathBuf,
  #[arg(long)]
  out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TwoSpheres {
  #[arg(long)]
  graph: PathBuf,
  #[arg(long = "sphere-a")]
  sphere_a: PathBuf,
  #[arg(long = "sphere-b")]
  sphere_b: PathBuf,
  /// Deck element applied to B: comma-separated dart ids.
  #[arg(long)]
  translate: Option<String>,
  #[arg(long)]
  out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Bounded {
  #[arg(long)]
  graph: PathBuf,
  #[arg(long = "max-circles")]
  max_circles: usize,
  #[arg(long)]
  out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StyleArg {
  ThetaChain,
  DumbbellChain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
  Json,
  Dot,
}

#[derive(Debug)]
enum Failure {
  Usage(String),
  Domain { name: &'static str, message: String },
}

macro_rules! domain_from {
  ($($ty:ty),*) => {$(
    impl From<$ty> for Failure {
      fn from(e: $ty) -> Self { Failure::Domain { name: e.name(), message: e.to_string() } }
    }
  )*};
}

domain_from!(
  GraphError,
  SphereError,
  SidesError,
  ComplexError,
  crate::cover::CoverError
);

fn read(path: &Path) -> Result<String, Failure> {
  std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<ModelGraph, Failure> {
  Ok(ModelGraph::parse(&read(path)?)?)
}

fn load_sphere(graph: &ModelGraph, path: &Path) -> Result<NormalSphere, Failure> {
  Ok(NormalSphere::parse(graph, &read(path)?)?)
}

/// Parses a comma-separated dart list into a deck element.
fn parse_deck_word(graph: &ModelGraph, word: &str) -> Result<DeckElement, Failure> {
  let mut darts = Vec::new();
  for part in word.split(',').map(str::trim).filter(|p| !p.is_empty()) {
    darts.push(graph.dart_by_name(part).ok_or_else(|| Failure::Domain {
      name: "ParseError",
      message: format!("unknown dart {part} in deck word"),
    })?);
  }
  let walk = Walk::checked(graph, darts)?;
  Ok(DeckElement::from_walk(graph, walk)?)
}

fn to_json<T: Serialize>(value: &T) -> String {
  let mut s = serde_json::to_string_pretty(value).expect("serializable output");
  s.push('\n');
  s
}

fn emit(out: &Option<PathBuf>, text: String, stdout: &mut dyn Write) -> Result<(), Failure> {
  match out {
    Some(path) => {
      std::fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
    }
    None => stdout
      .write_all(text.as_bytes())
      .map_err(|e| Failure::Usage(e.to_string())),
  }
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<(), Failure> {
  match command {
    Command::GraphGen { rank, style, out } => {
      let style = match style {
        StyleArg::ThetaChain => Style::ThetaChain,
        StyleArg::DumbbellChain => Style::DumbbellChain,
      };
      let g = ModelGraph::standard(rank, style)?;
      emit(&out, to_json(&g.to_document()), stdout)
    }
    Command::GraphCheck(args) => {
      let g = load_graph(&args.graph)?;
      let report = json!({
        "valid": true,
        "rank": g.rank(),
        "pants": g.pants_count(),
        "spheres": g.sphere_count(),
        "loops": g.edges().filter(|e| g.is_loop(*e)).count(),
      });
      emit(&args.out, to_json(&report), stdout)
    }
    Command::SphereCheck(args) => {
      let g = load_graph(&args.graph)?;
      let s = load_sphere(&g, &args.sphere_a)?;
      let counts = s.piece_counts(&g);
      let report = json!({
        "valid": true,
        "system": s.is_system(),
        "circles": s.circle_total(),
        "disks": counts.disks,
        "cylinders": counts.cylinders,
        "pants": counts.pants,
        "embedded": complex::is_embedded(&g, &s)?,
        "canonical": s.canonical_rep(&g).to_document(&g),
      });
      emit(&args.out, to_json(&report), stdout)
    }
    Command::Cross(args) => {
      let g = load_graph(&args.graph)?;
      let a = load_sphere(&g, &args.sphere_a)?;
      let mut b = load_sphere(&g, &args.sphere_b)?;
      if let Some(word) = &args.translate {
        b = b.translate(&g, &parse_deck_word(&g, word)?)?;
      }
      let report = sides::crossing(&g, &a, &b)?;
      emit(&args.out, to_json(&report.to_document(&g)), stdout)
    }
    Command::Intersect(args) => {
      let g = load_graph(&args.graph)?;
      let a = load_sphere(&g, &args.sphere_a)?;
      let mut b = load_sphere(&g, &args.sphere_b)?;
      if let Some(word) = &args.translate {
        b = b.translate(&g, &parse_deck_word(&g, word)?)?;
      }
      let r = sides::algebraic_intersection(&g, &a, &b)?;
      emit(&args.out, to_json(&r.to_document(&g)), stdout)
    }
    Command::TheoremCheck { sphere, edge } => {
      let g = load_graph(&sphere.graph)?;
      let a = load_sphere(&g, &sphere.sphere_a)?;
      let edges = match &edge {
        Some(name) => vec![g.edge_by_name(name).ok_or_else(|| Failure::Domain {
          name: "UnknownDart",
          message: format!("no edge with dart {name}"),
        })?],
        None => g.edges().collect(),
      };
      let rows = edges
        .into_iter()
        .map(|e| sides::theorem_row(&g, &a, e))
        .collect::<Result<Vec<_>, _>>()?;
      let all_equal = rows.iter().all(|r| r.equal);
      emit(
        &sphere.out,
        to_json(&json!({ "all_equal": all_equal, "rows": rows })),
        stdout,
      )
    }
    Command::Enumerate(args) => {
      let g = load_graph(&args.graph)?;
      let classes = complex::enumerate(&g, args.max_circles)?;
      let docs: Vec<_> = classes.iter().map(|s| s.to_document(&g)).collect();
      emit(
        &args.out,
        to_json(&json!({ "count": docs.len(), "classes": docs })),
        stdout,
      )
    }
    Command::Complex { bounded, format } => {
      let g = load_graph(&bounded.graph)?;
      let cx = complex::build_complex(&g, bounded.max_circles)?;
      let text = match format {
        Format::Json => to_json(&cx.to_document(&g)),
        Format::Dot => cx.to_dot(&g),
      };
      emit(&bounded.out, text, stdout)
    }
  }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
  I: IntoIterator<Item = T>,
  T: Into<OsString> + Clone,
{
  let cli = match Cli::try_parse_from(argv) {
    Ok(cli) => cli,
    Err(e) => {
      let code = if e.use_stderr() { 2 } else { 0 };
      let text = e.render().to_string();
      let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
      let _ = sink.write_all(text.as_bytes());
      return code;
    }
  };
  match execute(cli.command, stdout) {
    Ok(()) => 0,
    Err(Failure::Usage(message)) => {
      let _ = writeln!(stderr, "error: {message}");
      2
    }
    Err(Failure::Domain { name, message }) => {
      let _ = stderr.write_all(to_json(&json!({ "error": name, "message": message })).as_bytes());
      1
    }
  }
}
