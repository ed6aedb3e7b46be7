//! Seeded random and exhaustive generation of posets, lattices, TiRS graphs
//! and RS frames.
//!
//! Random streams use `ChaCha8Rng::seed_from_u64(seed)`; the same
//! [`GenSpec`] always yields the same list. Exhaustive modes enumerate up to
//! isomorphism (frames are kept labeled) and are capped at sizes whose
//! enumeration stays around a million candidates.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::galois::closed_sets;
use crate::iso::digraph_iso;
use crate::lattice::{downsets, is_distributive, FiniteLattice};
use crate::ploscica::dual_graph;
use crate::relation::{Bits, Relation};
use crate::report::WitnessMode;
use crate::structures::{check_frame, Frame, Graph};

pub const MAX_EXHAUSTIVE_POSET: usize = 7;
pub const MAX_EXHAUSTIVE_LATTICE: usize = 8;
pub const MAX_EXHAUSTIVE_FRAME: usize = 4;
/// Attempts per requested structure before giving up in rejection modes.
pub const MAX_ATTEMPTS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Poset,
    Lattice,
    DistributiveLattice,
    TirsGraph,
    RsFrame,
}

impl Kind {
    pub fn parse(s: &str) -> Option<Kind> {
        Some(match s {
            "poset" => Kind::Poset,
            "lattice" => Kind::Lattice,
            "distributive-lattice" => Kind::DistributiveLattice,
            "tirs-graph" => Kind::TirsGraph,
            "rs-frame" => Kind::RsFrame,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Poset => "poset",
            Kind::Lattice => "lattice",
            Kind::DistributiveLattice => "distributive-lattice",
            Kind::TirsGraph => "tirs-graph",
            Kind::RsFrame => "rs-frame",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub kind: Kind,
    /// Number of points; for frames the side length of an `n × n` frame.
    pub size: usize,
    pub seed: u64,
    /// Ignored in exhaustive mode.
    pub count: usize,
    pub exhaustive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("size must be positive")]
    ZeroSize,
    #[error("exhaustive {kind} generation is limited to size {max}, got {size}")]
    SizeOutOfBounds {
        kind: &'static str,
        size: usize,
        max: usize,
    },
    #[error("no {kind} of size {size} found after {attempts} attempts")]
    SizeUnreachable {
        kind: &'static str,
        size: usize,
        attempts: usize,
    },
    #[error("{0} is not produced by this generator")]
    WrongKind(&'static str),
}

/// Output of [`generate`].
#[derive(Debug, Clone)]
pub enum Generated {
    Graphs(Vec<Graph>),
    Lattices(Vec<FiniteLattice>),
    Frames(Vec<Frame>),
}

pub fn generate(spec: &GenSpec) -> Result<Generated, GenError> {
    Ok(match spec.kind {
        Kind::Poset => Generated::Graphs(gen_poset(spec)?),
        Kind::TirsGraph => Generated::Graphs(gen_tirs_graph(spec)?),
        Kind::Lattice | Kind::DistributiveLattice => Generated::Lattices(gen_lattice(spec)?),
        Kind::RsFrame => Generated::Frames(gen_rs_frame(spec)?),
    })
}

/// The random stream used by every seeded generator.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_size(spec: &GenSpec, max: usize) -> Result<(), GenError> {
    if spec.size == 0 {
        return Err(GenError::ZeroSize);
    }
    if spec.exhaustive && spec.size > max {
        return Err(GenError::SizeOutOfBounds {
            kind: spec.kind.as_str(),
            size: spec.size,
            max,
        });
    }
    Ok(())
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn poset_graph(order: Relation) -> Graph {
    Graph::from_relation(names("v", order.n_left()), order).expect("generated names are distinct")
}

fn lattice_from_order(order: Relation) -> Option<FiniteLattice> {
    FiniteLattice::from_order(names("e", order.n_left()), order).ok()
}

/// Each strict pair in a shuffled order is kept with probability ½, then
/// the reflexive-transitive closure is taken.
pub fn random_poset(rng: &mut impl Rng, n: usize) -> Relation {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut rel = Relation::empty(n, n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.5) {
                rel.insert(perm[i], perm[j]);
            }
        }
    }
    rel.reflexive_transitive_closure()
}

/// Dedekind–MacNeille completion of a finite order, as the closed sets of
/// `(P, P, ≤)`. Elements are named `e0, e1, …`.
pub fn dm_completion(order: &Relation) -> FiniteLattice {
    let n = order.n_left();
    let f = Frame::from_relation(names("p", n), names("q", n), order.clone())
        .expect("generated names are distinct");
    let gl = closed_sets(&f);
    gl.lattice
        .renamed(|i, _| format!("e{i}"))
        .expect("renaming keeps the order")
}

/// Per vertex: down-degree, up-degree, and the sorted degrees of everything below.
type VertexKey = (usize, usize, Vec<(usize, usize)>);

fn vertex_invariants(order: &Relation) -> Vec<VertexKey> {
    let base: Vec<(usize, usize)> = (0..order.n_left())
        .map(|v| (order.col(v).count(), order.row(v).count()))
        .collect();
    (0..order.n_left())
        .map(|v| {
            let mut below: Vec<(usize, usize)> = order.col(v).iter().map(|u| base[u]).collect();
            below.sort();
            (base[v].0, base[v].1, below)
        })
        .collect()
}

/// Keeps the first representative of every isomorphism class.
pub fn dedupe_up_to_iso(orders: Vec<Relation>) -> Vec<Relation> {
    let mut buckets: HashMap<Vec<VertexKey>, Vec<usize>> = HashMap::new();
    let mut kept: Vec<Relation> = Vec::new();
    for o in orders {
        let mut key = vertex_invariants(&o);
        key.sort();
        let bucket = buckets.entry(key).or_default();
        if bucket.iter().any(|&k| digraph_iso(&kept[k], &o).is_some()) {
            continue;
        }
        bucket.push(kept.len());
        kept.push(o);
    }
    kept
}

/// All naturally labeled posets on `n` points: point `k` gets a down-closed
/// set of earlier points as its strict down-set.
fn labeled_posets(n: usize) -> Vec<Relation> {
    let mut out = Vec::new();
    let mut below: Vec<Bits> = Vec::with_capacity(n);
    extend_posets(n, &mut below, &mut out);
    out
}

fn extend_posets(n: usize, below: &mut Vec<Bits>, out: &mut Vec<Relation>) {
    let k = below.len();
    if k == n {
        let rows: Vec<Bits> = (0..n)
            .map(|a| Bits::from_indices(n, (0..n).filter(|&b| a == b || below[b].contains(a))))
            .collect();
        out.push(Relation::from_rows(n, rows));
        return;
    }
    for mask in 0u64..1 << k {
        let d = Bits::from_mask(n, mask);
        if d.iter().all(|a| below[a].is_subset(&d)) {
            below.push(d);
            extend_posets(n, below, out);
            below.pop();
        }
    }
}

/// All posets on `n ≤ MAX_EXHAUSTIVE_POSET` points up to isomorphism.
pub fn exhaustive_posets(n: usize) -> Vec<Relation> {
    assert!(n <= MAX_EXHAUSTIVE_POSET);
    dedupe_up_to_iso(labeled_posets(n))
}

/// All lattices with `n ≤ MAX_EXHAUSTIVE_LATTICE` elements up to
/// isomorphism, as bounded extensions of posets on `n − 2` points.
pub fn exhaustive_lattices(n: usize) -> Vec<FiniteLattice> {
    assert!((1..=MAX_EXHAUSTIVE_LATTICE).contains(&n));
    if n == 1 {
        return vec![lattice_from_order(Relation::identity(1)).unwrap()];
    }
    exhaustive_posets(n - 2)
        .into_iter()
        .filter_map(|inner| lattice_from_order(add_bounds(&inner)))
        .collect()
}

/// Adds a new bottom (index 0) and top (index `n + 1`).
fn add_bounds(inner: &Relation) -> Relation {
    let m = inner.n_left();
    Relation::from_fn(m + 2, m + 2, |a, b| {
        a == 0 || b == m + 1 || (a > 0 && b <= m && a <= m && b > 0 && inner.contains(a - 1, b - 1))
    })
}

/// Every `n × n` relation passing (S) and (R), in mask order.
pub fn exhaustive_rs_frames(n: usize) -> Vec<Frame> {
    assert!(n <= MAX_EXHAUSTIVE_FRAME);
    (0u64..1 << (n * n))
        .map(|mask| square_frame(n, |i, j| mask >> (i * n + j) & 1 == 1))
        .filter(|f| check_frame(f, WitnessMode::First).is_rs())
        .collect()
}

fn square_frame(n: usize, cell: impl Fn(usize, usize) -> bool) -> Frame {
    Frame::from_relation(names("x", n), names("y", n), Relation::from_fn(n, n, cell))
        .expect("generated names are distinct")
}

pub fn gen_poset(spec: &GenSpec) -> Result<Vec<Graph>, GenError> {
    if spec.kind != Kind::Poset {
        return Err(GenError::WrongKind(spec.kind.as_str()));
    }
    check_size(spec, MAX_EXHAUSTIVE_POSET)?;
    if spec.exhaustive {
        return Ok(exhaustive_posets(spec.size)
            .into_iter()
            .map(poset_graph)
            .collect());
    }
    let mut rng = seeded_rng(spec.seed);
    Ok((0..spec.count)
        .map(|_| poset_graph(random_poset(&mut rng, spec.size)))
        .collect())
}

fn random_lattice(
    rng: &mut impl Rng,
    k: usize,
    distributive: bool,
) -> Result<FiniteLattice, GenError> {
    let kind = if distributive {
        "distributive-lattice"
    } else {
        "lattice"
    };
    for _ in 0..MAX_ATTEMPTS {
        if distributive {
            // A poset on m points has at least m + 1 down-sets.
            let m = rng.gen_range(0..k);
            let order = random_poset(rng, m);
            let sets = downsets(&order);
            if sets.len() == k {
                let leq = Relation::from_fn(k, k, |i, j| sets[i].is_subset(&sets[j]));
                return Ok(lattice_from_order(leq).expect("down-sets form a lattice"));
            }
        } else {
            let m = rng.gen_range(k.saturating_sub(2).max(1)..=k);
            let l = dm_completion(&random_poset(rng, m));
            if l.len() == k {
                return Ok(l);
            }
        }
    }
    Err(GenError::SizeUnreachable {
        kind,
        size: k,
        attempts: MAX_ATTEMPTS,
    })
}

pub fn gen_lattice(spec: &GenSpec) -> Result<Vec<FiniteLattice>, GenError> {
    let distributive = match spec.kind {
        Kind::Lattice => false,
        Kind::DistributiveLattice => true,
        other => return Err(GenError::WrongKind(other.as_str())),
    };
    check_size(spec, MAX_EXHAUSTIVE_LATTICE)?;
    if spec.exhaustive {
        let all = exhaustive_lattices(spec.size);
        return Ok(if distributive {
            all.into_iter()
                .filter(|l| is_distributive(l, WitnessMode::First).passed())
                .collect()
        } else {
            all
        });
    }
    let mut rng = seeded_rng(spec.seed);
    (0..spec.count)
        .map(|_| random_lattice(&mut rng, spec.size, distributive))
        .collect()
}

/// Duals of lattices of the given size alternating with posets of that
/// size; exhaustive mode lists all duals first, then all posets.
pub fn gen_tirs_graph(spec: &GenSpec) -> Result<Vec<Graph>, GenError> {
    if spec.kind != Kind::TirsGraph {
        return Err(GenError::WrongKind(spec.kind.as_str()));
    }
    check_size(spec, MAX_EXHAUSTIVE_POSET)?;
    let dual = |l: &FiniteLattice| dual_graph(l).map(|d| d.graph).ok();
    if spec.exhaustive {
        let mut out: Vec<Graph> = exhaustive_lattices(spec.size)
            .iter()
            .filter_map(dual)
            .collect();
        out.extend(exhaustive_posets(spec.size).into_iter().map(poset_graph));
        return Ok(out);
    }
    let mut rng = seeded_rng(spec.seed);
    let mut out = Vec::with_capacity(spec.count);
    for i in 0..spec.count {
        if i % 2 == 0 && spec.size >= 2 {
            out.push(dual(&random_lattice(&mut rng, spec.size, false)?).expect("size ≥ 2"));
        } else {
            out.push(poset_graph(random_poset(&mut rng, spec.size)));
        }
    }
    Ok(out)
}

/// Rejection-sampled `n × n` RS frames; exhaustive mode lists every RS
/// relation.
pub fn gen_rs_frame(spec: &GenSpec) -> Result<Vec<Frame>, GenError> {
    if spec.kind != Kind::RsFrame {
        return Err(GenError::WrongKind(spec.kind.as_str()));
    }
    check_size(spec, MAX_EXHAUSTIVE_FRAME)?;
    if spec.exhaustive {
        return Ok(exhaustive_rs_frames(spec.size));
    }
    let n = spec.size;
    let mut rng = seeded_rng(spec.seed);
    let mut out = Vec::with_capacity(spec.count);
    for _ in 0..spec.count {
        let found = (0..MAX_ATTEMPTS).find_map(|_| {
            let cells: Vec<bool> = (0..n * n).map(|_| rng.gen_bool(0.5)).collect();
            let f = square_frame(n, |i, j| cells[i * n + j]);
            check_frame(&f, WitnessMode::First).is_rs().then_some(f)
        });
        out.push(found.ok_or(GenError::SizeUnreachable {
            kind: "rs-frame",
            size: n,
            attempts: MAX_ATTEMPTS,
        })?);
    }
    Ok(out)
}

/// A random order-preserving map between two finite orders: points of the
/// source are visited along a linear extension and sent to a random point
/// above the images of everything already placed below them. Dead ends
/// (images without a common upper bound) restart the draw; after
/// `MAX_ATTEMPTS` restarts the constant map to a random point is returned.
pub fn random_monotone_map(rng: &mut impl Rng, source: &Relation, target: &Relation) -> Vec<usize> {
    let n = source.n_left();
    let m = target.n_left();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&a| source.col(a).count());
    'attempt: for _ in 0..MAX_ATTEMPTS {
        let mut map = vec![usize::MAX; n];
        for &a in &order {
            let mut allowed = Bits::full(m);
            for b in source.col(a).iter().filter(|&b| b != a) {
                allowed.intersect_with(target.row(map[b]));
            }
            let choices: Vec<usize> = allowed.iter().collect();
            match choices.choose(rng) {
                Some(&c) => map[a] = c,
                None => continue 'attempt,
            }
        }
        return map;
    }
    vec![rng.gen_range(0..m); n]
}
