//! Graphs `(X, E)` and frames `(X₁, X₂, R)` with witnessed checkers for the
//! separation (S), reducedness (R) and maximal-extension (Ti) conditions.
//!
//! Every condition is evaluated literally by quantifier sweep over the
//! cached row and column bitsets. Witnesses are reported in lexicographic
//! index order.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::relation::{Bits, Relation};
use crate::report::{CheckReport, Collector, Witness, WitnessMode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("relation references unknown point `{0}`")]
    UnknownPoint(String),
}

fn index_names(names: &[String]) -> Result<HashMap<String, usize>, StructureError> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.clone(), i).is_some() {
            return Err(StructureError::DuplicateName(n.clone()));
        }
    }
    Ok(index)
}

fn lookup(index: &HashMap<String, usize>, name: &str) -> Result<usize, StructureError> {
    index
        .get(name)
        .copied()
        .ok_or_else(|| StructureError::UnknownPoint(name.to_string()))
}

/// A directed graph with a single vertex sort.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    edges: Relation,
}

impl Graph {
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self, StructureError> {
        let names: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let index = index_names(&names)?;
        let mut rel = Relation::empty(names.len(), names.len());
        for (a, b) in edges {
            rel.insert(lookup(&index, a.as_ref())?, lookup(&index, b.as_ref())?);
        }
        Ok(Graph {
            names,
            index,
            edges: rel,
        })
    }

    pub fn from_relation(names: Vec<String>, edges: Relation) -> Result<Self, StructureError> {
        assert_eq!(edges.n_left(), names.len());
        assert_eq!(edges.n_right(), names.len());
        let index = index_names(&names)?;
        Ok(Graph {
            names,
            index,
            edges,
        })
    }

    /// The single vertex with a loop.
    pub fn singleton_loop() -> Self {
        Graph::new(&["v"], &[("v", "v")]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn edges(&self) -> &Relation {
        &self.edges
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(a, b)
    }

    /// `xE`
    pub fn row(&self, x: usize) -> &Bits {
        self.edges.row(x)
    }

    /// `Ex`
    pub fn col(&self, x: usize) -> &Bits {
        self.edges.col(x)
    }

    pub fn edge_pairs_named(&self) -> Vec<(String, String)> {
        self.edges
            .pairs()
            .map(|(a, b)| (self.names[a].clone(), self.names[b].clone()))
            .collect()
    }
}

/// A two-sorted structure `(X₁, X₂, R)` with `R ⊆ X₁ × X₂`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    x1: Vec<String>,
    x2: Vec<String>,
    index1: HashMap<String, usize>,
    index2: HashMap<String, usize>,
    rel: Relation,
}

impl Frame {
    pub fn new<S: AsRef<str>>(x1: &[S], x2: &[S], r: &[(S, S)]) -> Result<Self, StructureError> {
        let x1: Vec<String> = x1.iter().map(|v| v.as_ref().to_string()).collect();
        let x2: Vec<String> = x2.iter().map(|v| v.as_ref().to_string()).collect();
        let index1 = index_names(&x1)?;
        let index2 = index_names(&x2)?;
        let mut rel = Relation::empty(x1.len(), x2.len());
        for (a, b) in r {
            rel.insert(lookup(&index1, a.as_ref())?, lookup(&index2, b.as_ref())?);
        }
        Ok(Frame {
            x1,
            x2,
            index1,
            index2,
            rel,
        })
    }

    pub fn from_relation(
        x1: Vec<String>,
        x2: Vec<String>,
        rel: Relation,
    ) -> Result<Self, StructureError> {
        assert_eq!(rel.n_left(), x1.len());
        assert_eq!(rel.n_right(), x2.len());
        let index1 = index_names(&x1)?;
        let index2 = index_names(&x2)?;
        Ok(Frame {
            x1,
            x2,
            index1,
            index2,
            rel,
        })
    }

    pub fn n1(&self) -> usize {
        self.x1.len()
    }

    pub fn n2(&self) -> usize {
        self.x2.len()
    }

    pub fn x1(&self) -> &[String] {
        &self.x1
    }

    pub fn x2(&self) -> &[String] {
        &self.x2
    }

    pub fn name1(&self, x: usize) -> &str {
        &self.x1[x]
    }

    pub fn name2(&self, y: usize) -> &str {
        &self.x2[y]
    }

    pub fn index1(&self, name: &str) -> Option<usize> {
        self.index1.get(name).copied()
    }

    pub fn index2(&self, name: &str) -> Option<usize> {
        self.index2.get(name).copied()
    }

    pub fn relation(&self) -> &Relation {
        &self.rel
    }

    #[inline]
    pub fn related(&self, x: usize, y: usize) -> bool {
        self.rel.contains(x, y)
    }

    /// `xR`
    pub fn row(&self, x: usize) -> &Bits {
        self.rel.row(x)
    }

    /// `Ry`
    pub fn col(&self, y: usize) -> &Bits {
        self.rel.col(y)
    }

    pub fn pairs_named(&self) -> Vec<(String, String)> {
        self.rel
            .pairs()
            .map(|(a, b)| (self.x1[a].clone(), self.x2[b].clone()))
            .collect()
    }

    /// `{u ∈ X₁ : u ≠ w and wR ⊆ uR}`
    pub fn rows_above(&self, w: usize) -> Bits {
        Bits::from_indices(
            self.n1(),
            (0..self.n1()).filter(|&u| u != w && self.row(w).is_subset(self.row(u))),
        )
    }

    /// `{v ∈ X₂ : v ≠ z and Rz ⊆ Rv}`
    pub fn cols_above(&self, z: usize) -> Bits {
        Bits::from_indices(
            self.n2(),
            (0..self.n2()).filter(|&v| v != z && self.col(z).is_subset(self.col(v))),
        )
    }

    /// The vertex set of the associated graph: pairs `(x, y)` with
    /// `¬(xRy)`, every `u ≠ x` with `xR ⊆ uR` satisfying `uRy`, and every
    /// `v ≠ y` with `Ry ⊆ Rv` satisfying `xRv`.
    pub fn h_relation(&self) -> Relation {
        let rows_above: Vec<Bits> = (0..self.n1()).map(|x| self.rows_above(x)).collect();
        let cols_above: Vec<Bits> = (0..self.n2()).map(|y| self.cols_above(y)).collect();
        Relation::from_fn(self.n1(), self.n2(), |x, y| {
            !self.related(x, y)
                && rows_above[x].is_subset(self.col(y))
                && cols_above[y].is_subset(self.row(x))
        })
    }
}

/// Per-condition verdicts. `reflexive` is only evaluated for graphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reflexive: Option<CheckReport>,
    #[serde(rename = "S")]
    pub cond_s: CheckReport,
    #[serde(rename = "R")]
    pub cond_r: CheckReport,
    #[serde(rename = "Ti")]
    pub cond_ti: CheckReport,
}

impl ConditionReport {
    pub fn is_rs(&self) -> bool {
        self.cond_s.passed() && self.cond_r.passed()
    }

    /// All evaluated conditions hold (for graphs this includes reflexivity).
    pub fn is_tirs(&self) -> bool {
        self.reflexive.as_ref().is_none_or(CheckReport::passed)
            && self.is_rs()
            && self.cond_ti.passed()
    }

    /// Name of the first failing condition, if any.
    pub fn first_failure(&self) -> Option<&'static str> {
        if self.reflexive.as_ref().is_some_and(|r| !r.passed()) {
            Some("reflexive")
        } else if !self.cond_s.passed() {
            Some("S")
        } else if !self.cond_r.passed() {
            Some("R")
        } else if !self.cond_ti.passed() {
            Some("Ti")
        } else {
            None
        }
    }
}

pub fn check_graph(g: &Graph, mode: WitnessMode) -> ConditionReport {
    let n = g.len();

    let mut refl = Collector::new(mode);
    for x in 0..n {
        if !g.has_edge(x, x) && refl.push(Witness::new("reflexive", vec![g.name(x)])) {
            break;
        }
    }

    let mut s = Collector::new(mode);
    's: for x in 0..n {
        for y in x + 1..n {
            if g.row(x) == g.row(y)
                && g.col(x) == g.col(y)
                && s.push(Witness::new("S", vec![g.name(x), g.name(y)]))
            {
                break 's;
            }
        }
    }

    let mut r = Collector::new(mode);
    'r1: for z in 0..n {
        for x in 0..n {
            if g.row(z).is_strict_subset(g.row(x))
                && g.has_edge(z, x)
                && r.push(Witness::new("R(i)", vec![g.name(z), g.name(x)]))
            {
                break 'r1;
            }
        }
    }
    if !r.done() {
        'r2: for y in 0..n {
            for z in 0..n {
                if g.col(z).is_strict_subset(g.col(y))
                    && g.has_edge(y, z)
                    && r.push(Witness::new("R(ii)", vec![g.name(y), g.name(z)]))
                {
                    break 'r2;
                }
            }
        }
    }

    let mut ti = Collector::new(mode);
    for (x, y) in g.edges().pairs() {
        let found = (0..n).any(|z| g.row(z).is_subset(g.row(x)) && g.col(z).is_subset(g.col(y)));
        if !found && ti.push(Witness::new("Ti", vec![g.name(x), g.name(y)])) {
            break;
        }
    }

    ConditionReport {
        reflexive: Some(refl.finish()),
        cond_s: s.finish(),
        cond_r: r.finish(),
        cond_ti: ti.finish(),
    }
}

pub fn check_frame(f: &Frame, mode: WitnessMode) -> ConditionReport {
    let (n1, n2) = (f.n1(), f.n2());

    let mut s = Collector::new(mode);
    's1: for a in 0..n1 {
        for b in a + 1..n1 {
            if f.row(a) == f.row(b) && s.push(Witness::new("S(i)", vec![f.name1(a), f.name1(b)])) {
                break 's1;
            }
        }
    }
    if !s.done() {
        's2: for a in 0..n2 {
            for b in a + 1..n2 {
                if f.col(a) == f.col(b)
                    && s.push(Witness::new("S(ii)", vec![f.name2(a), f.name2(b)]))
                {
                    break 's2;
                }
            }
        }
    }

    let rows_above: Vec<Bits> = (0..n1).map(|x| f.rows_above(x)).collect();
    let cols_above: Vec<Bits> = (0..n2).map(|y| f.cols_above(y)).collect();

    let mut r = Collector::new(mode);
    for x in 0..n1 {
        // ∃y: ¬xRy ∧ ∀w (w ≠ x ∧ xR ⊆ wR ⇒ wRy)
        let ok = (0..n2).any(|y| !f.related(x, y) && rows_above[x].is_subset(f.col(y)));
        if !ok && r.push(Witness::new("R(i)", vec![f.name1(x)])) {
            break;
        }
    }
    if !r.done() {
        for y in 0..n2 {
            let ok = (0..n1).any(|x| !f.related(x, y) && cols_above[y].is_subset(f.row(x)));
            if !ok && r.push(Witness::new("R(ii)", vec![f.name2(y)])) {
                break;
            }
        }
    }

    // (Ti): candidates (w, z) satisfying clauses (i), (iii), (iv) are exactly H.
    let h = f.h_relation();
    let mut ti = Collector::new(mode);
    'ti: for x in 0..n1 {
        for y in 0..n2 {
            if f.related(x, y) {
                continue;
            }
            let found = h
                .pairs()
                .any(|(w, z)| f.row(x).is_subset(f.row(w)) && f.col(y).is_subset(f.col(z)));
            if !found && ti.push(Witness::new("Ti", vec![f.name1(x), f.name2(y)])) {
                break 'ti;
            }
        }
    }

    ConditionReport {
        reflexive: None,
        cond_s: s.finish(),
        cond_r: r.finish(),
        cond_ti: ti.finish(),
    }
}

/// Whether `E` is a partial order (reflexive, antisymmetric, transitive).
pub fn is_poset_graph(g: &Graph, mode: WitnessMode) -> CheckReport {
    let n = g.len();
    let mut c = Collector::new(mode);
    for x in 0..n {
        if !g.has_edge(x, x) && c.push(Witness::new("reflexive", vec![g.name(x)])) {
            return c.finish();
        }
    }
    for x in 0..n {
        for y in x + 1..n {
            if g.has_edge(x, y)
                && g.has_edge(y, x)
                && c.push(Witness::new("antisymmetric", vec![g.name(x), g.name(y)]))
            {
                return c.finish();
            }
        }
    }
    for x in 0..n {
        for y in g.row(x).iter() {
            for z in g.row(y).iter() {
                if !g.has_edge(x, z)
                    && c.push(Witness::new(
                        "transitive",
                        vec![g.name(x), g.name(y), g.name(z)],
                    ))
                {
                    return c.finish();
                }
            }
        }
    }
    c.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    fn w(r: &CheckReport) -> Vec<String> {
        r.first_witness().unwrap().elements.clone()
    }

    #[test]
    fn nt4_is_rs_but_not_ti() {
        let g = fixtures::nt4();
        let r = check_graph(&g, WitnessMode::First);
        assert!(r.reflexive.as_ref().unwrap().passed());
        assert!(r.cond_s.passed());
        assert!(r.cond_r.passed());
        assert!(!r.cond_ti.passed());
        assert_eq!(w(&r.cond_ti), ["x", "y"]);
        // xE = {x,y} and Ey = {x,y}
        let (x, y) = (g.index_of("x").unwrap(), g.index_of("y").unwrap());
        assert_eq!(g.row(x), &Bits::from_indices(4, [x, y]));
        assert_eq!(g.col(y), &Bits::from_indices(4, [x, y]));
    }

    #[test]
    fn complete_two_vertex_graph_fails_s() {
        let g = Graph::new(
            &["a", "b"],
            &[("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")],
        )
        .unwrap();
        let r = check_graph(&g, WitnessMode::First);
        assert_eq!(w(&r.cond_s), ["a", "b"]);
    }

    #[test]
    fn f2x1_fails_s_and_ti() {
        let f = fixtures::f2x1();
        let r = check_frame(&f, WitnessMode::All);
        assert_eq!(r.cond_s.witnesses()[0].condition, "S(i)");
        assert_eq!(w(&r.cond_s), ["x", "x'"]);
        assert_eq!(w(&r.cond_ti), ["x", "y"]);
        assert!(!r.is_tirs());
    }

    #[test]
    fn diagonal_frame_is_tirs() {
        let r = check_frame(&fixtures::diagonal_frame(3), WitnessMode::All);
        assert!(r.is_tirs(), "{r:?}");
    }

    #[test]
    fn truncated_chain_frame_is_tirs() {
        let f = fixtures::ml_truncation(3);
        assert_eq!((f.n1(), f.n2()), (4, 4));
        assert_eq!(f.relation().len(), 2 + 3 + 2);
        let r = check_frame(&f, WitnessMode::All);
        assert!(r.is_rs(), "{r:?}");
        assert!(r.cond_ti.passed(), "{r:?}");
    }

    #[test]
    fn one_by_one_frames() {
        let empty = Frame::new(&["x"], &["y"], &[]).unwrap();
        assert!(check_frame(&empty, WitnessMode::First).is_rs());
        let full = Frame::new(&["x"], &["y"], &[("x", "y")]).unwrap();
        let r = check_frame(&full, WitnessMode::First);
        assert!(r.cond_s.passed());
        assert!(!r.cond_r.passed());
    }

    #[test]
    fn poset_graph_checks() {
        assert!(is_poset_graph(&Graph::singleton_loop(), WitnessMode::First).passed());
        let g = Graph::new(
            &["a", "b"],
            &[("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")],
        )
        .unwrap();
        assert_eq!(
            is_poset_graph(&g, WitnessMode::First)
                .first_witness()
                .unwrap()
                .condition,
            "antisymmetric"
        );
    }

    #[test]
    fn h_relation_of_diagonal_frame_is_off_diagonal() {
        let h = fixtures::diagonal_frame(3).h_relation();
        assert_eq!(h, Relation::from_fn(3, 3, |x, y| x != y));
    }

    fn poset_strategy() -> impl Strategy<Value = Graph> {
        (
            1usize..9,
            proptest::collection::vec(any::<bool>(), 28),
            Just(()),
        )
            .prop_map(|(n, bits, _)| {
                let mut rel = Relation::identity(n);
                let mut k = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if bits[k % bits.len()] {
                            rel.insert(i, j);
                        }
                        k += 1;
                    }
                }
                let names = (0..n).map(|i| format!("v{i}")).collect();
                Graph::from_relation(names, rel.reflexive_transitive_closure()).unwrap()
            })
    }

    proptest! {
        #[test]
        fn every_poset_is_a_tirs_graph(g in poset_strategy()) {
            let r = check_graph(&g, WitnessMode::All);
            prop_assert!(r.is_tirs(), "{:?}", r);
            prop_assert!(is_poset_graph(&g, WitnessMode::First).passed());
        }

        #[test]
        fn all_mode_extends_first_mode(
            (n1, n2, pairs) in (1usize..5, 1usize..5).prop_flat_map(|(a, b)| (
                Just(a), Just(b), proptest::collection::vec((0..a, 0..b), 0..a * b)))
        ) {
            let f = Frame::from_relation(
                (0..n1).map(|i| format!("x{i}")).collect(),
                (0..n2).map(|i| format!("y{i}")).collect(),
                Relation::from_pairs(n1, n2, pairs),
            ).unwrap();
            let first = check_frame(&f, WitnessMode::First);
            let all = check_frame(&f, WitnessMode::All);
            for (a, b) in [(&first.cond_s, &all.cond_s), (&first.cond_r, &all.cond_r), (&first.cond_ti, &all.cond_ti)] {
                prop_assert_eq!(a.passed(), b.passed());
                prop_assert_eq!(a.first_witness(), b.first_witness());
            }
        }
    }
}
