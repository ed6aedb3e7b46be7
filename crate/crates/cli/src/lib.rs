//! The `tirs` command line.
//!
//! Every command reads JSON structure files and prints JSON to standard
//! output, except `export-dot`. Exit codes: 0 when every check passed, 1
//! when a mathematical property failed (the witnesses are in the printed
//! report), 2 for unreadable input or bad usage.

pub mod dot;
pub mod files;
pub mod suite;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use tirs_core::functors::{
    alpha, beta, check_naturality_frame, check_naturality_graph, gr, gr_mor, rho, rho_mor,
    validate_frame_morphism, validate_graph_morphism, FrameMorphism, FunctorError, GraphMorphism,
};
use tirs_core::galois::{canext_both, canext_polarity, canext_tandem, GaloisError, GaloisLattice};
use tirs_core::generators::{generate, GenSpec, Generated, Kind};
use tirs_core::lattice::{check_perfect, is_distributive};
use tirs_core::ploscica::dual_graph;
use tirs_core::pti::{check_pti, check_pti_frame_form, PtiReport};
use tirs_core::{check_frame, check_graph, CheckReport, FiniteLattice, Frame, Graph, WitnessMode};

use files::{MorphismFile, Structure};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{0}")]
    Usage(String),
    #[error("unsupported kind: {0}")]
    UnsupportedKind(String),
    #[error("could not write output: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Parser, Debug)]
#[command(
    name = "tirs",
    version,
    about = "TiRS graphs, frames and finite lattices"
)]
struct Cli {
    /// List every counterexample instead of the first one.
    #[arg(long, global = true)]
    all_witnesses: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Tandem,
    Polarity,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a graph (reflexive, S, R, Ti), a frame (S, R, Ti) or a lattice.
    Check { file: PathBuf },
    /// Dual graph of a lattice, with the maximal pair behind every vertex.
    Dual { file: PathBuf },
    /// Frame of a graph, with the row and column class of every vertex.
    Rho { file: PathBuf },
    /// Graph of a frame.
    Gr { file: PathBuf },
    /// Frame morphism induced by a graph morphism.
    RhoMor {
        source: PathBuf,
        target: PathBuf,
        morphism: PathBuf,
    },
    /// Graph morphism induced by a frame morphism.
    GrMor {
        source: PathBuf,
        target: PathBuf,
        morphism: PathBuf,
    },
    /// Validate a graph or frame morphism clause by clause.
    CheckMorphism {
        source: PathBuf,
        target: PathBuf,
        morphism: PathBuf,
    },
    /// Check the naturality square of a morphism.
    CheckNaturality {
        source: PathBuf,
        target: PathBuf,
        morphism: PathBuf,
    },
    /// Canonical extension of a lattice.
    Canext {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Rebuild a structure through its dual and print the isomorphism back.
    Roundtrip { file: PathBuf },
    /// PTi on a lattice, or its frame form with --frame.
    CheckPti {
        #[arg(required_unless_present = "frame", conflicts_with = "frame")]
        file: Option<PathBuf>,
        #[arg(long)]
        frame: Option<PathBuf>,
    },
    /// Generate posets, lattices, TiRS graphs or RS frames.
    Gen {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        size: usize,
        /// Required except with --exhaustive.
        #[arg(long, required_unless_present = "exhaustive")]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        exhaustive: bool,
        /// Write one file per structure into this directory instead of
        /// printing a JSON array.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graphviz rendering of a graph, frame or (with --hasse) lattice.
    ExportDot {
        file: PathBuf,
        #[arg(long)]
        include_loops: bool,
        #[arg(long)]
        hasse: bool,
    },
    /// Run the invariant battery over fixtures and a seeded corpus.
    Suite {
        #[arg(long)]
        seed: u64,
    },
}

/// Output of a command: the report and whether every check passed.
struct Outcome {
    body: Output,
    passed: bool,
}

enum Output {
    Json(Value),
    Text(String),
}

impl Outcome {
    fn ok(v: Value) -> Self {
        Outcome {
            body: Output::Json(v),
            passed: true,
        }
    }

    fn verdict(v: Value, passed: bool) -> Self {
        Outcome {
            body: Output::Json(v),
            passed,
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let mode = if cli.all_witnesses {
        WitnessMode::All
    } else {
        WitnessMode::First
    };
    match execute(cli.command, mode) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let written = match &out.body {
                Output::Json(v) => {
                    writeln!(stdout, "{}", serde_json::to_string_pretty(v).expect("json"))
                }
                Output::Text(s) => write!(stdout, "{s}"),
            };
            if let Err(e) = written {
                eprintln!("error: could not write output: {e}");
                return 2;
            }
            if out.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn graph_arg(path: &Path) -> Result<Graph, CliError> {
    match files::read(path)? {
        Structure::Graph(g) => Ok(g),
        s => Err(wrong_kind(path, "graph", s.kind())),
    }
}

fn frame_arg(path: &Path) -> Result<Frame, CliError> {
    match files::read(path)? {
        Structure::Frame(f) => Ok(f),
        s => Err(wrong_kind(path, "frame", s.kind())),
    }
}

fn lattice_arg(path: &Path) -> Result<FiniteLattice, CliError> {
    match files::read(path)? {
        Structure::Lattice(l) => Ok(l),
        s => Err(wrong_kind(path, "lattice", s.kind())),
    }
}

fn morphism_arg(path: &Path) -> Result<MorphismFile, CliError> {
    match files::read(path)? {
        Structure::Morphism(m) => Ok(m),
        s => Err(wrong_kind(path, "morphism", s.kind())),
    }
}

fn wrong_kind(path: &Path, want: &str, got: &str) -> CliError {
    CliError::Input(format!(
        "{}: expected a {want} file, found a {got}",
        path.display()
    ))
}

enum Morphism {
    Graph(GraphMorphism),
    Frame(FrameMorphism),
}

fn load_morphism(source: &Path, target: &Path, morphism: &Path) -> Result<Morphism, CliError> {
    let m = morphism_arg(morphism)?;
    let bad = |e: FunctorError| CliError::Input(format!("{}: {e}", morphism.display()));
    match (files::read(source)?, files::read(target)?) {
        (Structure::Graph(s), Structure::Graph(t)) => {
            let map = m.map.ok_or_else(|| {
                CliError::Input(format!(
                    "{}: graph morphisms need a `map`",
                    morphism.display()
                ))
            })?;
            Ok(Morphism::Graph(
                GraphMorphism::from_named(s, t, &map).map_err(bad)?,
            ))
        }
        (Structure::Frame(s), Structure::Frame(t)) => match (m.map1, m.map2) {
            (Some(m1), Some(m2)) => Ok(Morphism::Frame(
                FrameMorphism::from_named(s, t, &m1, &m2).map_err(bad)?,
            )),
            _ => Err(CliError::Input(format!(
                "{}: frame morphisms need `map1` and `map2`",
                morphism.display()
            ))),
        },
        (s, t) => Err(CliError::Input(format!(
            "source and target must both be graphs or both frames, found {} and {}",
            s.kind(),
            t.kind()
        ))),
    }
}

/// Precondition failures of the functor constructions are mathematical
/// failures with witnesses, not input errors.
fn functor_failure(e: FunctorError) -> Result<Outcome, CliError> {
    let detail = match &e {
        FunctorError::NotTiRS {
            what,
            condition,
            witness,
        } => json!({
            "structure": what,
            "condition": condition,
            "witness": witness,
        }),
        FunctorError::InvalidMorphism(r) | FunctorError::InvalidResult(r) => {
            json!({ "witnesses": r.witnesses() })
        }
        FunctorError::NotWellDefined(a, b) | FunctorError::HNotPreserved(a, b) => {
            json!({ "witness": [a, b] })
        }
        FunctorError::BadMap(_) | FunctorError::NotComposable => {
            return Err(CliError::Input(e.to_string()))
        }
        FunctorError::IsoVerificationFailed(_) => json!({}),
    };
    Ok(Outcome::verdict(
        json!({ "passed": false, "error": e.to_string(), "detail": detail }),
        false,
    ))
}

fn report_json(r: &CheckReport) -> Value {
    json!({ "passed": r.passed(), "witnesses": r.witnesses() })
}

fn pti_json(r: &PtiReport) -> Value {
    json!({ "passed": r.passed(), "witnesses": r.report.witnesses(), "pairs": r.witnesses })
}

fn galois_json(gl: &GaloisLattice) -> Value {
    serde_json::to_value(files::galois_file(gl)).expect("json")
}

fn execute(cmd: Command, mode: WitnessMode) -> Result<Outcome, CliError> {
    match cmd {
        Command::Check { file } => check(&file, mode),
        Command::Dual { file } => {
            let l = lattice_arg(&file)?;
            let d = dual_graph(&l).map_err(|e| CliError::Input(e.to_string()))?;
            Ok(Outcome::ok(
                serde_json::to_value(files::dual_file(&l, &d)).expect("json"),
            ))
        }
        Command::Rho { file } => {
            let g = graph_arg(&file)?;
            let r = rho(&g);
            let class = |cls: &[usize], f: &dyn Fn(usize) -> String| -> Value {
                g.names()
                    .iter()
                    .enumerate()
                    .map(|(v, n)| (n.clone(), Value::String(f(cls[v]))))
                    .collect::<serde_json::Map<_, _>>()
                    .into()
            };
            Ok(Outcome::ok(json!({
                "frame": files::frame_file(&r.frame),
                "row_class": class(&r.row_class, &|c| r.frame.name1(c).to_string()),
                "col_class": class(&r.col_class, &|c| r.frame.name2(c).to_string()),
            })))
        }
        Command::Gr { file } => {
            let f = frame_arg(&file)?;
            Ok(Outcome::ok(
                serde_json::to_value(files::graph_file(&gr(&f).graph)).expect("json"),
            ))
        }
        Command::RhoMor {
            source,
            target,
            morphism,
        } => match load_morphism(&source, &target, &morphism)? {
            Morphism::Graph(m) => match rho_mor(&m) {
                Ok(r) => Ok(Outcome::ok(json!({
                    "source": files::frame_file(&r.source),
                    "target": files::frame_file(&r.target),
                    "morphism": files::frame_morphism_file(&r),
                }))),
                Err(e) => functor_failure(e),
            },
            Morphism::Frame(_) => Err(CliError::Usage("rho-mor takes a graph morphism".into())),
        },
        Command::GrMor {
            source,
            target,
            morphism,
        } => match load_morphism(&source, &target, &morphism)? {
            Morphism::Frame(m) => match gr_mor(&m) {
                Ok(r) => Ok(Outcome::ok(json!({
                    "source": files::graph_file(&r.source),
                    "target": files::graph_file(&r.target),
                    "morphism": files::graph_morphism_file(&r),
                }))),
                Err(e) => functor_failure(e),
            },
            Morphism::Graph(_) => Err(CliError::Usage("gr-mor takes a frame morphism".into())),
        },
        Command::CheckMorphism {
            source,
            target,
            morphism,
        } => {
            let r = match load_morphism(&source, &target, &morphism)? {
                Morphism::Graph(m) => validate_graph_morphism(&m, mode),
                Morphism::Frame(m) => validate_frame_morphism(&m, mode),
            };
            Ok(Outcome::verdict(report_json(&r), r.passed()))
        }
        Command::CheckNaturality {
            source,
            target,
            morphism,
        } => {
            let r = match load_morphism(&source, &target, &morphism)? {
                Morphism::Graph(m) => check_naturality_graph(&m, mode),
                Morphism::Frame(m) => check_naturality_frame(&m, mode),
            };
            match r {
                Ok(r) => Ok(Outcome::verdict(report_json(&r), r.passed())),
                Err(e) => functor_failure(e),
            }
        }
        Command::Canext { file, method } => canext(&lattice_arg(&file)?, method),
        Command::Roundtrip { file } => roundtrip(&file),
        Command::CheckPti { file, frame } => {
            if let Some(path) = frame {
                let r = check_pti_frame_form(&frame_arg(&path)?, mode);
                return Ok(Outcome::verdict(pti_json(&r), r.passed()));
            }
            let l = lattice_arg(&file.expect("clap requires a file"))?;
            match check_pti(&l, mode) {
                Ok(r) => Ok(Outcome::verdict(pti_json(&r), r.passed())),
                Err(e) => Ok(Outcome::verdict(
                    json!({ "passed": false, "error": e.to_string() }),
                    false,
                )),
            }
        }
        Command::Gen {
            kind,
            size,
            seed,
            count,
            exhaustive,
            out,
        } => {
            let kind = Kind::parse(&kind).ok_or_else(|| {
                CliError::Usage(format!(
                    "unknown kind `{kind}`; expected poset, lattice, distributive-lattice, tirs-graph or rs-frame"
                ))
            })?;
            let spec = GenSpec {
                kind,
                size,
                seed: seed.unwrap_or(0),
                count,
                exhaustive,
            };
            let values: Vec<Value> =
                match generate(&spec).map_err(|e| CliError::Usage(e.to_string()))? {
                    Generated::Graphs(gs) => gs
                        .iter()
                        .map(|g| files::structure_json(&Structure::Graph(g.clone())))
                        .collect(),
                    Generated::Lattices(ls) => ls
                        .iter()
                        .map(|l| files::structure_json(&Structure::Lattice(l.clone())))
                        .collect(),
                    Generated::Frames(fs) => fs
                        .iter()
                        .map(|f| files::structure_json(&Structure::Frame(f.clone())))
                        .collect(),
                };
            match out {
                None => Ok(Outcome::ok(Value::Array(values))),
                Some(dir) => {
                    std::fs::create_dir_all(&dir)?;
                    let mut written = Vec::new();
                    for (i, v) in values.iter().enumerate() {
                        let path = dir.join(format!("{}-{i}.json", kind.as_str()));
                        std::fs::write(&path, serde_json::to_string_pretty(v).expect("json"))?;
                        written.push(path.display().to_string());
                    }
                    Ok(Outcome::ok(json!({ "written": written })))
                }
            }
        }
        Command::ExportDot {
            file,
            include_loops,
            hasse,
        } => {
            let text = match (files::read(&file)?, hasse) {
                (Structure::Lattice(l), true) => dot::hasse(&l),
                (Structure::Lattice(_), false) => {
                    return Err(CliError::UnsupportedKind(
                        "lattices are exported as Hasse diagrams; pass --hasse".into(),
                    ))
                }
                (Structure::Graph(g), _) => dot::graph(&g, include_loops),
                (Structure::Frame(f), _) => dot::frame(&f),
                (Structure::Morphism(_), _) => {
                    return Err(CliError::UnsupportedKind(
                        "morphisms have no DOT rendering".into(),
                    ))
                }
            };
            Ok(Outcome {
                body: Output::Text(text),
                passed: true,
            })
        }
        Command::Suite { seed } => {
            let max_size = match std::env::var("TIRS_SUITE_MAXSIZE") {
                Ok(s) => s.parse::<usize>().ok().filter(|&n| n >= 2).ok_or_else(|| {
                    CliError::Usage(format!(
                        "TIRS_SUITE_MAXSIZE must be an integer ≥ 2, got `{s}`"
                    ))
                })?,
                Err(_) => suite::DEFAULT_MAX_SIZE,
            };
            let r = suite::run(seed, max_size);
            let passed = r.passed;
            Ok(Outcome::verdict(
                serde_json::to_value(r).expect("json"),
                passed,
            ))
        }
    }
}

fn check(file: &Path, mode: WitnessMode) -> Result<Outcome, CliError> {
    match files::read(file)? {
        Structure::Graph(g) => {
            let r = check_graph(&g, mode);
            let tirs = r.is_tirs();
            Ok(Outcome::verdict(
                json!({ "kind": "graph", "tirs": tirs, "conditions": r }),
                tirs,
            ))
        }
        Structure::Frame(f) => {
            let r = check_frame(&f, mode);
            let tirs = r.is_tirs();
            Ok(Outcome::verdict(
                json!({ "kind": "frame", "rs": r.is_rs(), "tirs": tirs, "conditions": r }),
                tirs,
            ))
        }
        Structure::Lattice(l) => {
            // Parsing already verified the lattice axioms; the rest is
            // informational except perfection.
            let perfect = check_perfect(&l);
            let distributive = is_distributive(&l, mode);
            Ok(Outcome::verdict(
                json!({
                    "kind": "lattice",
                    "size": l.len(),
                    "perfect": report_json(&perfect),
                    "distributive": report_json(&distributive),
                }),
                perfect.passed(),
            ))
        }
        Structure::Morphism(_) => Err(CliError::UnsupportedKind(
            "use check-morphism with source and target files".into(),
        )),
    }
}

fn canext(l: &FiniteLattice, method: Method) -> Result<Outcome, CliError> {
    let fail = |e: GaloisError| {
        Outcome::verdict(json!({ "passed": false, "error": e.to_string() }), false)
    };
    let one = |r: Result<(tirs_core::LatticeEmbedding, GaloisLattice), GaloisError>| match r {
        Ok((e, gl)) => Outcome::ok(json!({
            "extension": galois_json(&gl),
            "embedding": e.named_pairs(),
        })),
        Err(e) => fail(e),
    };
    Ok(match method {
        Method::Tandem => one(canext_tandem(l)),
        Method::Polarity => one(canext_polarity(l)),
        Method::Both => match canext_both(l) {
            Ok(c) => {
                let (ta, po) = (&c.tandem.1.lattice, &c.polarity.1.lattice);
                let iso: Vec<(String, String)> = c
                    .iso
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| (ta.name(i).to_string(), po.name(j).to_string()))
                    .collect();
                Outcome::ok(json!({
                    "tandem": { "extension": galois_json(&c.tandem.1), "embedding": c.tandem.0.named_pairs() },
                    "polarity": { "extension": galois_json(&c.polarity.1), "embedding": c.polarity.0.named_pairs() },
                    "isomorphism": iso,
                }))
            }
            Err(e) => fail(e),
        },
    })
}

fn roundtrip(file: &Path) -> Result<Outcome, CliError> {
    match files::read(file)? {
        Structure::Lattice(l) => {
            if l.len() < 2 {
                return Err(CliError::Input(
                    "the one-element lattice has no dual".into(),
                ));
            }
            match canext_tandem(&l) {
                // The embedding L → G(ρ(D♭(L))) is onto, hence an isomorphism.
                Ok((e, _)) if e.is_onto() => Ok(Outcome::ok(json!({
                    "passed": true,
                    "isomorphism": e.named_pairs(),
                }))),
                Ok(_) => Ok(Outcome::verdict(
                    json!({ "passed": false, "error": "embedding is not onto" }),
                    false,
                )),
                Err(e) => Ok(Outcome::verdict(
                    json!({ "passed": false, "error": e.to_string() }),
                    false,
                )),
            }
        }
        Structure::Graph(g) => match alpha(&g) {
            Ok(a) => Ok(Outcome::ok(json!({
                "passed": true,
                "isomorphism": files::graph_morphism_file(&a),
            }))),
            Err(e) => functor_failure(e),
        },
        Structure::Frame(f) => match beta(&f) {
            Ok(b) => Ok(Outcome::ok(json!({
                "passed": true,
                "isomorphism": files::frame_morphism_file(&b),
            }))),
            Err(e) => functor_failure(e),
        },
        Structure::Morphism(_) => Err(CliError::UnsupportedKind(
            "morphisms have no round trip".into(),
        )),
    }
}
