//! Small named structures used throughout the tests and the `suite` runner.

use crate::lattice::{build_lattice, FiniteLattice};
use crate::relation::Relation;
use crate::structures::{Frame, Graph};

/// 2-element chain `0 < 1`.
pub fn c2() -> FiniteLattice {
    build_lattice(&["0", "1"], &[("0", "1")]).unwrap()
}

/// 3-element chain `0 < m < 1`.
pub fn c3() -> FiniteLattice {
    build_lattice(&["0", "m", "1"], &[("0", "m"), ("m", "1")]).unwrap()
}

/// Four-element Boolean lattice with atoms `p`, `q`.
pub fn b2() -> FiniteLattice {
    build_lattice(
        &["0", "p", "q", "1"],
        &[("0", "p"), ("0", "q"), ("p", "1"), ("q", "1")],
    )
    .unwrap()
}

/// The diamond: bottom, three atoms `a`, `b`, `c`, top.
pub fn m3() -> FiniteLattice {
    build_lattice(
        &["0", "a", "b", "c", "1"],
        &[
            ("0", "a"),
            ("0", "b"),
            ("0", "c"),
            ("a", "1"),
            ("b", "1"),
            ("c", "1"),
        ],
    )
    .unwrap()
}

/// The pentagon: `0 < a < c < 1` and `0 < b < 1`.
pub fn n5() -> FiniteLattice {
    build_lattice(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("0", "b"), ("a", "c"), ("c", "1"), ("b", "1")],
    )
    .unwrap()
}

/// The fixture lattices with their short names.
pub fn lattices() -> Vec<(&'static str, FiniteLattice)> {
    vec![
        ("c2", c2()),
        ("c3", c3()),
        ("b2", b2()),
        ("m3", m3()),
        ("n5", n5()),
    ]
}

/// Four vertices, all loops plus `x→y`, `w→x`, `y→t`: reflexive, (S) and
/// (R) hold but (Ti) fails at `(x, y)`.
pub fn nt4() -> Graph {
    Graph::new(
        &["x", "y", "w", "t"],
        &[
            ("x", "x"),
            ("y", "y"),
            ("w", "w"),
            ("t", "t"),
            ("x", "y"),
            ("w", "x"),
            ("y", "t"),
        ],
    )
    .unwrap()
}

/// `X₁ = {x, x'}`, `X₂ = {y}`, `R = ∅`.
pub fn f2x1() -> Frame {
    Frame::new(&["x", "x'"], &["y"], &[]).unwrap()
}

/// `R` is the identity on `n` points of each sort.
pub fn diagonal_frame(n: usize) -> Frame {
    let x1: Vec<String> = (0..n).map(|i| format!("d{i}")).collect();
    Frame::from_relation(x1.clone(), x1, Relation::identity(n)).unwrap()
}

/// Truncation at `n` of the countable frame on `{aᵢ}`, `{bᵢ}` with
/// `R = {(a₁,b₀), (a₀,b₁)} ∪ {(aᵢ,bⱼ) : 2 ≤ i, 1 ≤ j ≤ i}`.
///
/// The countable frame fails (Ti) at `(a₀, b₀)`; every finite truncation
/// satisfies it, since a finite frame with distinct rows and columns always
/// does.
pub fn ml_truncation(n: usize) -> Frame {
    assert!(n >= 1);
    let x1: Vec<String> = (0..=n).map(|i| format!("a{i}")).collect();
    let x2: Vec<String> = (0..=n).map(|i| format!("b{i}")).collect();
    let mut rel = Relation::empty(n + 1, n + 1);
    rel.insert(1, 0);
    rel.insert(0, 1);
    for i in 2..=n {
        for j in 1..=i {
            rel.insert(i, j);
        }
    }
    Frame::from_relation(x1, x2, rel).unwrap()
}

/// A lattice viewed as the graph `(L, ≤)`.
pub fn order_graph(l: &FiniteLattice) -> Graph {
    Graph::from_relation(l.names().to_vec(), l.order().clone()).unwrap()
}
