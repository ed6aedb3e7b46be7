//! The frame `ρ(X)` of a graph, the graph `gr(F)` of a frame, the canonical
//! isomorphisms `α`, `β`, morphisms between graphs and between frames, and
//! the action of `ρ` and `gr` on morphisms.

use std::collections::HashMap;

use thiserror::Error;

use crate::iso::{bipartite_iso, digraph_iso, is_bijection, is_bipartite_iso, is_digraph_iso};
use crate::relation::Relation;
use crate::report::{CheckReport, Collector, Witness, WitnessMode};
use crate::structures::{check_frame, check_graph, Frame, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctorError {
    #[error("{what} is not TiRS: condition {condition} fails")]
    NotTiRS {
        what: &'static str,
        condition: &'static str,
        witness: Option<Witness>,
    },
    #[error("canonical map failed verification: {0}")]
    IsoVerificationFailed(String),
    #[error("class map is not well defined: {0} and {1} share a class but their images do not")]
    NotWellDefined(String, String),
    #[error("H-pair ({0}, {1}) has no H-pair image")]
    HNotPreserved(String, String),
    #[error("input is not a valid morphism")]
    InvalidMorphism(CheckReport),
    #[error("constructed morphism failed validation")]
    InvalidResult(CheckReport),
    #[error("malformed map: {0}")]
    BadMap(String),
    #[error("morphisms are not composable")]
    NotComposable,
}

fn require_tirs_graph(g: &Graph, what: &'static str) -> Result<(), FunctorError> {
    let r = check_graph(g, WitnessMode::First);
    match r.first_failure() {
        None => Ok(()),
        Some(condition) => Err(FunctorError::NotTiRS {
            what,
            condition,
            witness: failing_witness(&r, condition),
        }),
    }
}

fn require_tirs_frame(f: &Frame, what: &'static str) -> Result<(), FunctorError> {
    let r = check_frame(f, WitnessMode::First);
    match r.first_failure() {
        None => Ok(()),
        Some(condition) => Err(FunctorError::NotTiRS {
            what,
            condition,
            witness: failing_witness(&r, condition),
        }),
    }
}

fn failing_witness(r: &crate::structures::ConditionReport, condition: &str) -> Option<Witness> {
    let rep = match condition {
        "reflexive" => r.reflexive.as_ref()?,
        "S" => &r.cond_s,
        "R" => &r.cond_r,
        _ => &r.cond_ti,
    };
    rep.first_witness().cloned()
}

fn resolve(
    index: impl Fn(&str) -> Option<usize>,
    n: usize,
    pairs: &[(String, String)],
    target_index: impl Fn(&str) -> Option<usize>,
) -> Result<Vec<usize>, FunctorError> {
    let mut map = vec![usize::MAX; n];
    for (a, b) in pairs {
        let i =
            index(a).ok_or_else(|| FunctorError::BadMap(format!("unknown source point `{a}`")))?;
        let j = target_index(b)
            .ok_or_else(|| FunctorError::BadMap(format!("unknown target point `{b}`")))?;
        if map[i] != usize::MAX && map[i] != j {
            return Err(FunctorError::BadMap(format!("`{a}` is mapped twice")));
        }
        map[i] = j;
    }
    if let Some(i) = map.iter().position(|&j| j == usize::MAX) {
        return Err(FunctorError::BadMap(format!("point {i} has no image")));
    }
    Ok(map)
}

/// A vertex map between two graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMorphism {
    pub source: Graph,
    pub target: Graph,
    pub map: Vec<usize>,
}

impl GraphMorphism {
    pub fn new(source: Graph, target: Graph, map: Vec<usize>) -> Result<Self, FunctorError> {
        if map.len() != source.len() {
            return Err(FunctorError::BadMap(format!(
                "map has {} entries for {} vertices",
                map.len(),
                source.len()
            )));
        }
        if let Some(&j) = map.iter().find(|&&j| j >= target.len()) {
            return Err(FunctorError::BadMap(format!(
                "image index {j} out of range"
            )));
        }
        Ok(GraphMorphism {
            source,
            target,
            map,
        })
    }

    pub fn from_named(
        source: Graph,
        target: Graph,
        pairs: &[(String, String)],
    ) -> Result<Self, FunctorError> {
        let map = resolve(
            |a| source.index_of(a),
            source.len(),
            pairs,
            |b| target.index_of(b),
        )?;
        Ok(GraphMorphism {
            source,
            target,
            map,
        })
    }

    pub fn identity(g: &Graph) -> Self {
        GraphMorphism {
            source: g.clone(),
            target: g.clone(),
            map: (0..g.len()).collect(),
        }
    }

    pub fn named_pairs(&self) -> Vec<(String, String)> {
        self.map
            .iter()
            .enumerate()
            .map(|(i, &j)| {
                (
                    self.source.name(i).to_string(),
                    self.target.name(j).to_string(),
                )
            })
            .collect()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GraphMorphism) -> Result<GraphMorphism, FunctorError> {
        if self.target != other.source {
            return Err(FunctorError::NotComposable);
        }
        Ok(GraphMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            map: self.map.iter().map(|&j| other.map[j]).collect(),
        })
    }
}

/// `(source name, image name)` pairs in source order.
pub type NamedMap = Vec<(String, String)>;

/// A pair of point maps between two frames.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameMorphism {
    pub source: Frame,
    pub target: Frame,
    pub map1: Vec<usize>,
    pub map2: Vec<usize>,
}

impl FrameMorphism {
    pub fn new(
        source: Frame,
        target: Frame,
        map1: Vec<usize>,
        map2: Vec<usize>,
    ) -> Result<Self, FunctorError> {
        if map1.len() != source.n1() || map2.len() != source.n2() {
            return Err(FunctorError::BadMap(
                "map sizes do not match the source".into(),
            ));
        }
        if map1.iter().any(|&j| j >= target.n1()) || map2.iter().any(|&j| j >= target.n2()) {
            return Err(FunctorError::BadMap("image index out of range".into()));
        }
        Ok(FrameMorphism {
            source,
            target,
            map1,
            map2,
        })
    }

    pub fn from_named(
        source: Frame,
        target: Frame,
        pairs1: &[(String, String)],
        pairs2: &[(String, String)],
    ) -> Result<Self, FunctorError> {
        let map1 = resolve(
            |a| source.index1(a),
            source.n1(),
            pairs1,
            |b| target.index1(b),
        )?;
        let map2 = resolve(
            |a| source.index2(a),
            source.n2(),
            pairs2,
            |b| target.index2(b),
        )?;
        Ok(FrameMorphism {
            source,
            target,
            map1,
            map2,
        })
    }

    pub fn identity(f: &Frame) -> Self {
        FrameMorphism {
            source: f.clone(),
            target: f.clone(),
            map1: (0..f.n1()).collect(),
            map2: (0..f.n2()).collect(),
        }
    }

    pub fn named_pairs(&self) -> (NamedMap, NamedMap) {
        let m1 = self
            .map1
            .iter()
            .enumerate()
            .map(|(i, &j)| {
                (
                    self.source.name1(i).to_string(),
                    self.target.name1(j).to_string(),
                )
            })
            .collect();
        let m2 = self
            .map2
            .iter()
            .enumerate()
            .map(|(i, &j)| {
                (
                    self.source.name2(i).to_string(),
                    self.target.name2(j).to_string(),
                )
            })
            .collect();
        (m1, m2)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FrameMorphism) -> Result<FrameMorphism, FunctorError> {
        if self.target != other.source {
            return Err(FunctorError::NotComposable);
        }
        Ok(FrameMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            map1: self.map1.iter().map(|&j| other.map1[j]).collect(),
            map2: self.map2.iter().map(|&j| other.map2[j]).collect(),
        })
    }
}

/// `ρ(X)` together with the class of every vertex.
#[derive(Debug, Clone)]
pub struct RhoFrame {
    pub frame: Frame,
    /// `row_class[x]` is the index of `[x]₁` in `X₁`.
    pub row_class: Vec<usize>,
    /// `col_class[x]` is the index of `[x]₂` in `X₂`.
    pub col_class: Vec<usize>,
    /// Minimal-index representative of each row class.
    pub row_reps: Vec<usize>,
    /// Minimal-index representative of each column class.
    pub col_reps: Vec<usize>,
}

fn classes<'a>(
    n: usize,
    key: impl Fn(usize) -> &'a crate::relation::Bits,
) -> (Vec<usize>, Vec<usize>) {
    let mut seen: HashMap<&crate::relation::Bits, usize> = HashMap::new();
    let mut class = Vec::with_capacity(n);
    let mut reps = Vec::new();
    for x in 0..n {
        let c = *seen.entry(key(x)).or_insert_with(|| {
            reps.push(x);
            reps.len() - 1
        });
        class.push(c);
    }
    (class, reps)
}

/// The frame of a graph: rows and columns up to equality, with
/// `[x]₁ R [y]₂` iff `(x, y) ∉ E`. Classes are named after their
/// representative vertex.
pub fn rho(g: &Graph) -> RhoFrame {
    let n = g.len();
    let (row_class, row_reps) = classes(n, |x| g.row(x));
    let (col_class, col_reps) = classes(n, |x| g.col(x));
    let rel = Relation::from_fn(row_reps.len(), col_reps.len(), |i, j| {
        !g.has_edge(row_reps[i], col_reps[j])
    });
    let x1 = row_reps.iter().map(|&v| g.name(v).to_string()).collect();
    let x2 = col_reps.iter().map(|&v| g.name(v).to_string()).collect();
    let frame = Frame::from_relation(x1, x2, rel).expect("representatives are distinct vertices");
    RhoFrame {
        frame,
        row_class,
        col_class,
        row_reps,
        col_reps,
    }
}

/// `gr(F)` together with the frame pair behind each vertex.
#[derive(Debug, Clone)]
pub struct GrGraph {
    pub graph: Graph,
    /// Vertex `v` is the pair `pairs[v]`; lexicographic order.
    pub pairs: Vec<(usize, usize)>,
    lookup: HashMap<(usize, usize), usize>,
}

impl GrGraph {
    pub fn vertex_of(&self, x: usize, y: usize) -> Option<usize> {
        self.lookup.get(&(x, y)).copied()
    }
}

/// The graph of a frame: vertices are the pairs of `H`, named `(x,y)`, and
/// `((x,y),(w,z))` is an edge iff `¬(xRz)`.
pub fn gr(f: &Frame) -> GrGraph {
    let pairs: Vec<(usize, usize)> = f.h_relation().pairs().collect();
    let k = pairs.len();
    let edges = Relation::from_fn(k, k, |i, j| !f.related(pairs[i].0, pairs[j].1));
    let names = pairs
        .iter()
        .map(|&(x, y)| format!("({},{})", f.name1(x), f.name2(y)))
        .collect();
    let graph = Graph::from_relation(names, edges).expect("pair names are distinct");
    let lookup = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    GrGraph {
        graph,
        pairs,
        lookup,
    }
}

/// `α(x) = ([x]₁, [x]₂)`, a verified isomorphism `X → gr(ρ(X))`.
pub fn alpha(g: &Graph) -> Result<GraphMorphism, FunctorError> {
    require_tirs_graph(g, "graph")?;
    let r = rho(g);
    let h = gr(&r.frame);
    let mut map = Vec::with_capacity(g.len());
    for x in 0..g.len() {
        let v = h.vertex_of(r.row_class[x], r.col_class[x]).ok_or_else(|| {
            FunctorError::IsoVerificationFailed(format!("([{0}]₁,[{0}]₂) is not in H", g.name(x)))
        })?;
        map.push(v);
    }
    if !is_bijection(&map, h.graph.len()) || !is_digraph_iso(g.edges(), h.graph.edges(), &map) {
        return Err(FunctorError::IsoVerificationFailed(
            "α is not a graph isomorphism".into(),
        ));
    }
    Ok(GraphMorphism {
        source: g.clone(),
        target: h.graph,
        map,
    })
}

/// `β₁(x) = [(x,y)]₁`, `β₂(y) = [(x,y)]₂` for any `(x,y) ∈ H`; a verified
/// isomorphism `F → ρ(gr(F))`.
pub fn beta(f: &Frame) -> Result<FrameMorphism, FunctorError> {
    require_tirs_frame(f, "frame")?;
    let h = gr(f);
    let r = rho(&h.graph);
    let mut map1 = vec![usize::MAX; f.n1()];
    let mut map2 = vec![usize::MAX; f.n2()];
    for (v, &(x, y)) in h.pairs.iter().enumerate() {
        if map1[x] == usize::MAX {
            map1[x] = r.row_class[v];
        }
        if map2[y] == usize::MAX {
            map2[y] = r.col_class[v];
        }
    }
    if let Some(x) = map1.iter().position(|&c| c == usize::MAX) {
        return Err(FunctorError::IsoVerificationFailed(format!(
            "{} lies in no H-pair",
            f.name1(x)
        )));
    }
    if let Some(y) = map2.iter().position(|&c| c == usize::MAX) {
        return Err(FunctorError::IsoVerificationFailed(format!(
            "{} lies in no H-pair",
            f.name2(y)
        )));
    }
    let ok = is_bijection(&map1, r.frame.n1())
        && is_bijection(&map2, r.frame.n2())
        && is_bipartite_iso(f.relation(), r.frame.relation(), &map1, &map2);
    if !ok {
        return Err(FunctorError::IsoVerificationFailed(
            "β is not a frame isomorphism".into(),
        ));
    }
    Ok(FrameMorphism {
        source: f.clone(),
        target: r.frame,
        map1,
        map2,
    })
}

pub fn graph_iso(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    digraph_iso(a.edges(), b.edges())
}

pub fn frame_iso(a: &Frame, b: &Frame) -> Option<(Vec<usize>, Vec<usize>)> {
    bipartite_iso(a.relation(), b.relation())
}

/// Clauses (i) edge preservation, (ii) row inclusion, (iii) column
/// inclusion.
pub fn validate_graph_morphism(m: &GraphMorphism, mode: WitnessMode) -> CheckReport {
    let (s, t, phi) = (&m.source, &m.target, &m.map);
    let n = s.len();
    let mut c = Collector::new(mode);
    let name = |x: usize| s.name(x).to_string();
    'i: for a in 0..n {
        for b in s.row(a).iter() {
            if !t.has_edge(phi[a], phi[b]) && c.push(Witness::new("(i)", vec![name(a), name(b)])) {
                break 'i;
            }
        }
    }
    'ii: for a in 0..n {
        for b in 0..n {
            if c.done() {
                break 'ii;
            }
            if s.row(a).is_subset(s.row(b))
                && !t.row(phi[a]).is_subset(t.row(phi[b]))
                && c.push(Witness::new("(ii)", vec![name(a), name(b)]))
            {
                break 'ii;
            }
        }
    }
    'iii: for a in 0..n {
        for b in 0..n {
            if c.done() {
                break 'iii;
            }
            if s.col(a).is_subset(s.col(b))
                && !t.col(phi[a]).is_subset(t.col(phi[b]))
                && c.push(Witness::new("(iii)", vec![name(a), name(b)]))
            {
                break 'iii;
            }
        }
    }
    c.finish()
}

/// Clauses (i) `ψ₁(x) R_G ψ₂(y) ⇒ x R_F y`, (ii) row inclusion, (iii)
/// column inclusion, (iv) `H`-preservation.
pub fn validate_frame_morphism(m: &FrameMorphism, mode: WitnessMode) -> CheckReport {
    let (s, t) = (&m.source, &m.target);
    let (p1, p2) = (&m.map1, &m.map2);
    let mut c = Collector::new(mode);
    let n1 = |x: usize| s.name1(x).to_string();
    let n2 = |y: usize| s.name2(y).to_string();
    'i: for x in 0..s.n1() {
        for y in 0..s.n2() {
            if t.related(p1[x], p2[y])
                && !s.related(x, y)
                && c.push(Witness::new("(i)", vec![n1(x), n2(y)]))
            {
                break 'i;
            }
        }
    }
    'ii: for x in 0..s.n1() {
        for w in 0..s.n1() {
            if c.done() {
                break 'ii;
            }
            if s.row(x).is_subset(s.row(w))
                && !t.row(p1[x]).is_subset(t.row(p1[w]))
                && c.push(Witness::new("(ii)", vec![n1(x), n1(w)]))
            {
                break 'ii;
            }
        }
    }
    'iii: for y in 0..s.n2() {
        for z in 0..s.n2() {
            if c.done() {
                break 'iii;
            }
            if s.col(y).is_subset(s.col(z))
                && !t.col(p2[y]).is_subset(t.col(p2[z]))
                && c.push(Witness::new("(iii)", vec![n2(y), n2(z)]))
            {
                break 'iii;
            }
        }
    }
    if !c.done() {
        let hs = s.h_relation();
        let ht = t.h_relation();
        for (x, y) in hs.pairs() {
            if !ht.contains(p1[x], p2[y]) && c.push(Witness::new("(iv)", vec![n1(x), n2(y)])) {
                break;
            }
        }
    }
    c.finish()
}

/// `ρ(φ)₁([x]₁) = [φ(x)]₁`, `ρ(φ)₂([x]₂) = [φ(x)]₂`, checked for
/// well-definedness and validated as a frame morphism.
pub fn rho_mor(m: &GraphMorphism) -> Result<FrameMorphism, FunctorError> {
    require_tirs_graph(&m.source, "source graph")?;
    require_tirs_graph(&m.target, "target graph")?;
    let v = validate_graph_morphism(m, WitnessMode::First);
    if !v.passed() {
        return Err(FunctorError::InvalidMorphism(v));
    }
    let rs = rho(&m.source);
    let rt = rho(&m.target);
    let map1: Vec<usize> = rs
        .row_reps
        .iter()
        .map(|&r| rt.row_class[m.map[r]])
        .collect();
    let map2: Vec<usize> = rs
        .col_reps
        .iter()
        .map(|&r| rt.col_class[m.map[r]])
        .collect();
    for x in 0..m.source.len() {
        let bad = if rt.row_class[m.map[x]] != map1[rs.row_class[x]] {
            Some(rs.row_reps[rs.row_class[x]])
        } else if rt.col_class[m.map[x]] != map2[rs.col_class[x]] {
            Some(rs.col_reps[rs.col_class[x]])
        } else {
            None
        };
        if let Some(r) = bad {
            return Err(FunctorError::NotWellDefined(
                m.source.name(r).to_string(),
                m.source.name(x).to_string(),
            ));
        }
    }
    let out = FrameMorphism {
        source: rs.frame,
        target: rt.frame,
        map1,
        map2,
    };
    let check = validate_frame_morphism(&out, WitnessMode::First);
    if !check.passed() {
        return Err(FunctorError::InvalidResult(check));
    }
    Ok(out)
}

/// `gr(ψ)(x,y) = (ψ₁(x), ψ₂(y))` on `H`, validated as a graph morphism.
pub fn gr_mor(m: &FrameMorphism) -> Result<GraphMorphism, FunctorError> {
    require_tirs_frame(&m.source, "source frame")?;
    require_tirs_frame(&m.target, "target frame")?;
    let v = validate_frame_morphism(m, WitnessMode::First);
    if !v.passed() {
        return Err(FunctorError::InvalidMorphism(v));
    }
    let gs = gr(&m.source);
    let gt = gr(&m.target);
    let mut map = Vec::with_capacity(gs.pairs.len());
    for &(x, y) in &gs.pairs {
        let img = gt.vertex_of(m.map1[x], m.map2[y]).ok_or_else(|| {
            FunctorError::HNotPreserved(
                m.source.name1(x).to_string(),
                m.source.name2(y).to_string(),
            )
        })?;
        map.push(img);
    }
    let out = GraphMorphism {
        source: gs.graph,
        target: gt.graph,
        map,
    };
    let check = validate_graph_morphism(&out, WitnessMode::First);
    if !check.passed() {
        return Err(FunctorError::InvalidResult(check));
    }
    Ok(out)
}

/// `gr(ρ(φ)) ∘ α_X = α_Y ∘ φ`, pointwise on `X`.
pub fn check_naturality_graph(
    m: &GraphMorphism,
    mode: WitnessMode,
) -> Result<CheckReport, FunctorError> {
    let ax = alpha(&m.source)?;
    let ay = alpha(&m.target)?;
    let grho = gr_mor(&rho_mor(m)?)?;
    let mut c = Collector::new(mode);
    for x in 0..m.source.len() {
        let lhs = grho.map[ax.map[x]];
        let rhs = ay.map[m.map[x]];
        if lhs != rhs
            && c.push(Witness::new(
                "naturality",
                vec![
                    m.source.name(x).to_string(),
                    ay.target.name(lhs).to_string(),
                    ay.target.name(rhs).to_string(),
                ],
            ))
        {
            break;
        }
    }
    Ok(c.finish())
}

/// `ρ(gr(ψ)) ∘ β_F = β_G ∘ ψ`, pointwise on `X₁` and `X₂`.
pub fn check_naturality_frame(
    m: &FrameMorphism,
    mode: WitnessMode,
) -> Result<CheckReport, FunctorError> {
    let bf = beta(&m.source)?;
    let bg = beta(&m.target)?;
    let rgr = rho_mor(&gr_mor(m)?)?;
    let mut c = Collector::new(mode);
    for x in 0..m.source.n1() {
        let lhs = rgr.map1[bf.map1[x]];
        let rhs = bg.map1[m.map1[x]];
        if lhs != rhs
            && c.push(Witness::new(
                "naturality",
                vec![
                    m.source.name1(x).to_string(),
                    bg.target.name1(lhs).to_string(),
                    bg.target.name1(rhs).to_string(),
                ],
            ))
        {
            return Ok(c.finish());
        }
    }
    for y in 0..m.source.n2() {
        let lhs = rgr.map2[bf.map2[y]];
        let rhs = bg.map2[m.map2[y]];
        if lhs != rhs
            && c.push(Witness::new(
                "naturality",
                vec![
                    m.source.name2(y).to_string(),
                    bg.target.name2(lhs).to_string(),
                    bg.target.name2(rhs).to_string(),
                ],
            ))
        {
            break;
        }
    }
    Ok(c.finish())
}
