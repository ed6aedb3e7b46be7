//! The invariant battery behind `tirs suite`: fixtures plus a seeded corpus,
//! one task per module, reported in name order.

use serde::Serialize;

use tirs_core::fixtures;
use tirs_core::functors::{
    alpha, beta, check_naturality_frame, check_naturality_graph, gr_mor, rho, rho_mor,
    validate_graph_morphism, FrameMorphism, GraphMorphism,
};
use tirs_core::galois::{
    canext_both, closed_sets, irreducibles_of_galois, jinfty_via_maximal_pairs,
};
use tirs_core::generators::{
    exhaustive_lattices, exhaustive_rs_frames, gen_lattice, random_monotone_map, random_poset,
    seeded_rng, GenSpec, Kind,
};
use tirs_core::iso::digraph_iso;
use tirs_core::lattice::{downset_lattice, irreducibles, is_distributive, lattice_iso};
use tirs_core::ploscica::dual_graph;
use tirs_core::pti::{check_pti, pti_bridge_suite};
use tirs_core::structures::{check_frame, check_graph, is_poset_graph};
use tirs_core::{FiniteLattice, Frame, Graph, Relation, WitnessMode};

pub const DEFAULT_MAX_SIZE: usize = 7;
/// Exhaustive enumeration is only attempted up to this many elements.
const EXHAUSTIVE_CAP: usize = 7;
const SEEDS_PER_SIZE: u64 = 20;
const MORPHISM_ROUNDS: usize = 50;

#[derive(Debug, Clone, Serialize)]
pub struct TaskResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub max_size: usize,
    pub passed: bool,
    pub tasks: Vec<TaskResult>,
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Corpus {
    seed: u64,
    max_size: usize,
    lattices: Vec<(String, FiniteLattice)>,
    frames: Vec<(String, Frame)>,
}

impl Corpus {
    fn new(seed: u64, max_size: usize) -> Corpus {
        let mut lattices: Vec<(String, FiniteLattice)> = fixtures::lattices()
            .into_iter()
            .map(|(n, l)| (n.to_string(), l))
            .collect();
        for size in 2..=max_size {
            for s in seed..seed + SEEDS_PER_SIZE {
                let spec = GenSpec {
                    kind: Kind::Lattice,
                    size,
                    seed: s,
                    count: 1,
                    exhaustive: false,
                };
                if let Ok(ls) = gen_lattice(&spec) {
                    lattices.extend(ls.into_iter().map(|l| (format!("size={size} seed={s}"), l)));
                }
            }
            if size <= EXHAUSTIVE_CAP {
                for (i, l) in exhaustive_lattices(size).into_iter().enumerate() {
                    lattices.push((format!("size={size} #{i}"), l));
                }
            }
        }
        let mut frames: Vec<(String, Frame)> = exhaustive_rs_frames(3)
            .into_iter()
            .enumerate()
            .map(|(i, f)| (format!("rs 3x3 #{i}"), f))
            .collect();
        for n in 1..=max_size.min(5) {
            frames.push((format!("truncation {n}"), fixtures::ml_truncation(n)));
        }
        for n in 2..=max_size.min(4) {
            frames.push((format!("diagonal {n}"), fixtures::diagonal_frame(n)));
        }
        Corpus {
            seed,
            max_size,
            lattices,
            frames,
        }
    }

    fn duals(&self) -> impl Iterator<Item = (&str, Graph)> + '_ {
        self.lattices.iter().map(|(n, l)| {
            (
                n.as_str(),
                dual_graph(l)
                    .expect("corpus lattices are non-trivial")
                    .graph,
            )
        })
    }
}

fn ploscica(c: &Corpus) -> Outcome {
    for (name, g) in c.duals() {
        let r = check_graph(&g, WitnessMode::First);
        ensure(r.is_tirs(), || {
            format!("{name}: dual fails {:?}", r.first_failure())
        })?;
    }
    Ok(format!("{} duals are TiRS", c.lattices.len()))
}

fn structures(_: &Corpus) -> Outcome {
    let nt4 = check_graph(&fixtures::nt4(), WitnessMode::First);
    let w = nt4.cond_ti.first_witness().ok_or("NT4 passes Ti")?;
    ensure(w.elements == ["x", "y"], || {
        format!("NT4 witness {:?}", w.elements)
    })?;
    let f = check_frame(&fixtures::f2x1(), WitnessMode::First);
    ensure(!f.cond_s.passed() && !f.cond_ti.passed(), || {
        "F2x1 passes S or Ti".into()
    })?;
    let t = check_frame(&fixtures::ml_truncation(3), WitnessMode::First);
    ensure(t.is_tirs(), || "truncation 3 is not TiRS".into())?;
    for (name, l) in fixtures::lattices() {
        let g = fixtures::order_graph(&l);
        ensure(check_graph(&g, WitnessMode::First).is_tirs(), || {
            format!("order of {name} not TiRS")
        })?;
    }
    Ok("negative fixtures and poset graphs".into())
}

fn roundtrip(c: &Corpus) -> Outcome {
    let mut n = 0;
    for (name, g) in c.duals() {
        alpha(&g).map_err(|e| format!("α {name}: {e}"))?;
        beta(&rho(&g).frame).map_err(|e| format!("β ρ {name}: {e}"))?;
        n += 2;
    }
    for (name, f) in &c.frames {
        beta(f).map_err(|e| format!("β {name}: {e}"))?;
        n += 1;
    }
    Ok(format!("{n} round trips"))
}

fn order_graph(order: &Relation) -> Graph {
    let names = (0..order.n_left()).map(|i| format!("v{i}")).collect();
    Graph::from_relation(names, order.clone()).expect("distinct names")
}

fn functors(c: &Corpus) -> Outcome {
    let mut rng = seeded_rng(c.seed);
    let top = c.max_size.max(1);
    for round in 0..MORPHISM_ROUNDS {
        let sizes = [
            1 + round % top,
            1 + (round / 3) % top,
            1 + (round / 2) % top,
        ];
        let p: Vec<Relation> = sizes.iter().map(|&n| random_poset(&mut rng, n)).collect();
        let m1 = random_monotone_map(&mut rng, &p[0], &p[1]);
        let m2 = random_monotone_map(&mut rng, &p[1], &p[2]);
        let g: Vec<Graph> = p.iter().map(order_graph).collect();
        let ctx = |what: String| format!("round {round}: {what}");
        let phi =
            GraphMorphism::new(g[0].clone(), g[1].clone(), m1).map_err(|e| ctx(e.to_string()))?;
        let psi =
            GraphMorphism::new(g[1].clone(), g[2].clone(), m2).map_err(|e| ctx(e.to_string()))?;
        ensure(
            validate_graph_morphism(&phi, WitnessMode::First).passed(),
            || ctx("φ invalid".into()),
        )?;
        let sq =
            check_naturality_graph(&phi, WitnessMode::First).map_err(|e| ctx(e.to_string()))?;
        ensure(sq.passed(), || ctx("graph square fails".into()))?;
        let rphi = rho_mor(&phi).map_err(|e| ctx(e.to_string()))?;
        let rpsi = rho_mor(&psi).map_err(|e| ctx(e.to_string()))?;
        let sq =
            check_naturality_frame(&rphi, WitnessMode::First).map_err(|e| ctx(e.to_string()))?;
        ensure(sq.passed(), || ctx("frame square fails".into()))?;
        let comp = phi.then(&psi).map_err(|e| ctx(e.to_string()))?;
        let rcomp = rho_mor(&comp).map_err(|e| ctx(e.to_string()))?;
        ensure(Ok(rcomp) == rphi.then(&rpsi), || {
            ctx("ρ composition law".into())
        })?;
        let gcomp =
            gr_mor(&rphi.then(&rpsi).expect("composable")).map_err(|e| ctx(e.to_string()))?;
        let gphi = gr_mor(&rphi).map_err(|e| ctx(e.to_string()))?;
        let gpsi = gr_mor(&rpsi).map_err(|e| ctx(e.to_string()))?;
        ensure(Ok(gcomp) == gphi.then(&gpsi), || {
            ctx("gr composition law".into())
        })?;
        let rid = rho_mor(&GraphMorphism::identity(&g[0])).map_err(|e| ctx(e.to_string()))?;
        ensure(rid == FrameMorphism::identity(&rid.source), || {
            ctx("ρ identity law".into())
        })?;
    }
    Ok(format!("{MORPHISM_ROUNDS} monotone map pairs"))
}

fn canext(c: &Corpus) -> Outcome {
    for (name, l) in &c.lattices {
        let cmp = canext_both(l).map_err(|e| format!("{name}: {e}"))?;
        ensure(cmp.tandem.0.is_onto(), || {
            format!("{name}: tandem embedding not onto")
        })?;
        for a in 0..l.len() {
            ensure(
                cmp.iso[cmp.tandem.0.apply(a)] == cmp.polarity.0.apply(a),
                || format!("{name}: square fails at {}", l.name(a)),
            )?;
        }
    }
    Ok(format!(
        "{} lattices, both constructions agree",
        c.lattices.len()
    ))
}

fn galois(c: &Corpus) -> Outcome {
    for (name, f) in &c.frames {
        irreducibles_of_galois(&closed_sets(f)).map_err(|e| format!("{name}: {e}"))?;
    }
    for (name, l) in &c.lattices {
        let cmp = canext_both(l).map_err(|e| format!("{name}: {e}"))?;
        irreducibles_of_galois(&cmp.tandem.1).map_err(|e| format!("{name}: {e}"))?;
        for e in [&cmp.tandem.0, &cmp.polarity.0] {
            let r = jinfty_via_maximal_pairs(e);
            ensure(r.passed(), || format!("{name}: {:?}", r.first_witness()))?;
        }
    }
    Ok(format!(
        "{} frames, {} lattices",
        c.frames.len(),
        c.lattices.len()
    ))
}

fn pti(c: &Corpus) -> Outcome {
    for (name, l) in &c.lattices {
        let r = check_pti(l, WitnessMode::First).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.passed(), || {
            format!("{name}: {:?}", r.report.first_witness())
        })?;
    }
    for (name, f) in &c.frames {
        let r = pti_bridge_suite(f).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.passed(), || format!("{name}: {:?}", r.first_witness()))?;
    }
    Ok(format!(
        "{} lattices, {} frames",
        c.lattices.len(),
        c.frames.len()
    ))
}

fn birkhoff(c: &Corpus) -> Outcome {
    let mut n = 0;
    for size in 2..=c.max_size {
        for s in c.seed..c.seed + SEEDS_PER_SIZE {
            let spec = GenSpec {
                kind: Kind::DistributiveLattice,
                size,
                seed: s,
                count: 1,
                exhaustive: false,
            };
            let l = gen_lattice(&spec).map_err(|e| e.to_string())?.remove(0);
            let name = format!("size={size} seed={s}");
            ensure(is_distributive(&l, WitnessMode::First).passed(), || {
                format!("{name}: not distributive")
            })?;
            let g = dual_graph(&l).map_err(|e| format!("{name}: {e}"))?.graph;
            ensure(is_poset_graph(&g, WitnessMode::First).passed(), || {
                format!("{name}: dual not a poset")
            })?;
            let jl = irreducibles(&l).join;
            let j_order = Relation::from_fn(jl.len(), jl.len(), |a, b| l.leq(jl[a], jl[b]));
            ensure(
                digraph_iso(&g.edges().converse(), &j_order).is_some(),
                || format!("{name}: dual is not the join-irreducible poset"),
            )?;
            let down = downset_lattice(&g.edges().converse(), g.names());
            let gl = closed_sets(&rho(&g).frame);
            ensure(lattice_iso(&gl.lattice, &down).is_some(), || {
                format!("{name}: closed sets are not downsets")
            })?;
            n += 1;
        }
    }
    Ok(format!("{n} distributive lattices"))
}

type Task = (&'static str, fn(&Corpus) -> Outcome);

/// Sorted by name; the report keeps this order.
const TASKS: [Task; 8] = [
    ("birkhoff", birkhoff),
    ("canext", canext),
    ("functors", functors),
    ("galois", galois),
    ("ploscica", ploscica),
    ("pti", pti),
    ("roundtrip", roundtrip),
    ("structures", structures),
];

pub fn run(seed: u64, max_size: usize) -> SuiteReport {
    let corpus = Corpus::new(seed, max_size);
    let tasks: Vec<TaskResult> = TASKS
        .iter()
        .map(|&(name, f)| {
            let (passed, detail) = match f(&corpus) {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            TaskResult {
                name,
                passed,
                detail,
            }
        })
        .collect();
    SuiteReport {
        seed,
        max_size,
        passed: tasks.iter().all(|t| t.passed),
        tasks,
    }
}
