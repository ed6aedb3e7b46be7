//! Maximal partial homomorphisms into the two-element lattice and the dual
//! graph of a finite lattice.
//!
//! A partial homomorphism `f` is identified with the disjoint pair
//! `(f⁻¹(1), f⁻¹(0))` of a filter and an ideal. In a finite lattice both are
//! principal, so the maximal pairs are the `(↑x, ↓y)` with `x ≰ y`, every
//! `x' < x` below `y` and every `y' > y` above `x`.

use thiserror::Error;

use crate::lattice::FiniteLattice;
use crate::relation::{Bits, Relation};
use crate::structures::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PloscicaError {
    #[error("the one-element lattice has no partial homomorphisms onto 2")]
    DegenerateLattice,
    #[error("maximal pairs belong to different lattices")]
    MismatchedCarrier,
    #[error("edge definitions disagree at ({0}, {1})")]
    EdgeFormsDisagree(String, String),
}

/// A maximal disjoint filter–ideal pair `(↑x, ↓y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalPair {
    /// Generator of the filter `f⁻¹(1)`.
    pub x: usize,
    /// Generator of the ideal `f⁻¹(0)`.
    pub y: usize,
    pub ones: Bits,
    pub zeros: Bits,
    carrier: u64,
}

impl MaximalPair {
    /// `f(a)`, or `None` where `f` is undefined.
    pub fn value(&self, a: usize) -> Option<bool> {
        if self.ones.contains(a) {
            Some(true)
        } else if self.zeros.contains(a) {
            Some(false)
        } else {
            None
        }
    }

    pub fn carrier(&self) -> u64 {
        self.carrier
    }
}

/// All maximal pairs, sorted by `(x, y)` index.
pub fn maximal_pairs(l: &FiniteLattice) -> Result<Vec<MaximalPair>, PloscicaError> {
    if l.len() < 2 {
        return Err(PloscicaError::DegenerateLattice);
    }
    let carrier = l.fingerprint();
    let n = l.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if l.leq(x, y) {
                continue;
            }
            let below_ok = (0..n).filter(|&x2| l.lt(x2, x)).all(|x2| l.leq(x2, y));
            let above_ok = (0..n).filter(|&y2| l.lt(y, y2)).all(|y2| l.leq(x, y2));
            if below_ok && above_ok {
                out.push(MaximalPair {
                    x,
                    y,
                    ones: l.up(x).clone(),
                    zeros: l.down(y).clone(),
                    carrier,
                });
            }
        }
    }
    Ok(out)
}

/// The dual graph together with the maximal pair behind each vertex.
#[derive(Debug, Clone)]
pub struct DualGraph {
    pub graph: Graph,
    pub pairs: Vec<MaximalPair>,
}

/// `(f, g) ∈ E` iff `f⁻¹(1) ∩ g⁻¹(0) = ∅`.
pub fn edge_by_intersection(f: &MaximalPair, g: &MaximalPair) -> bool {
    !f.ones.intersects(&g.zeros)
}

/// `(f, g) ∈ E` iff `f(a) ≤ g(a)` wherever both are defined.
pub fn edge_pointwise(f: &MaximalPair, g: &MaximalPair) -> bool {
    (0..f.ones.universe()).all(|a| match (f.value(a), g.value(a)) {
        (Some(fa), Some(ga)) => fa <= ga,
        _ => true,
    })
}

/// The dual graph `D♭(L)`; vertices are named `p0, p1, …` in maximal-pair
/// order. Both forms of the edge relation are evaluated and must agree.
pub fn dual_graph(l: &FiniteLattice) -> Result<DualGraph, PloscicaError> {
    let pairs = maximal_pairs(l)?;
    let k = pairs.len();
    let names: Vec<String> = (0..k).map(|i| format!("p{i}")).collect();
    let mut edges = Relation::empty(k, k);
    for (i, f) in pairs.iter().enumerate() {
        for (j, g) in pairs.iter().enumerate() {
            let e = edge_by_intersection(f, g);
            if e != edge_pointwise(f, g) {
                return Err(PloscicaError::EdgeFormsDisagree(
                    names[i].clone(),
                    names[j].clone(),
                ));
            }
            if e {
                edges.insert(i, j);
            }
        }
    }
    let graph = Graph::from_relation(names, edges).expect("generated names are distinct");
    Ok(DualGraph { graph, pairs })
}

/// `f ≤ g` iff `f⁻¹(1) ⊆ g⁻¹(1)`.
pub fn mph_leq(f: &MaximalPair, g: &MaximalPair) -> Result<bool, PloscicaError> {
    if f.carrier != g.carrier {
        return Err(PloscicaError::MismatchedCarrier);
    }
    Ok(f.ones.is_subset(&g.ones))
}
