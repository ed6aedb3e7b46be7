//! Galois connections of a frame, the lattice `G(F)` of Galois-closed sets,
//! the frame `F(C)` of a perfect lattice, and the canonical extension of a
//! finite lattice computed in two independent ways.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::functors::rho;
use crate::lattice::{
    check_compact, check_dense, check_perfect, irreducibles, set_label, FiniteLattice,
    LatticeEmbedding, LatticeError,
};
use crate::ploscica::{dual_graph, maximal_pairs, PloscicaError};
use crate::relation::{Bits, Relation};
use crate::report::{CheckReport, Collector, Witness, WitnessMode};
use crate::structures::Frame;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaloisError {
    #[error(transparent)]
    Ploscica(#[from] PloscicaError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("lattice is not perfect at `{}`", .0.elements.join(","))]
    NotPerfect(Witness),
    #[error("{side} irreducibles disagree: formula gives {formula:?}, lattice gives {computed:?}")]
    IrreducibleMismatch {
        side: &'static str,
        formula: Vec<String>,
        computed: Vec<String>,
    },
    #[error("image of `{0}` is not Galois-closed")]
    NotClosed(String),
    #[error("embedding is not dense")]
    NotDense(CheckReport),
    #[error("embedding is not compact")]
    NotCompact(CheckReport),
    #[error("embedding of a finite lattice is not onto its canonical extension")]
    EmbeddingNotOnto,
    #[error("canonical extensions disagree: {0}")]
    CrossCheckFailed(String),
}

/// `R↑(A) = {y : aRy for all a ∈ A}`.
pub fn galois_up(f: &Frame, a: &Bits) -> Bits {
    let mut out = Bits::full(f.n2());
    for x in a.iter() {
        out.intersect_with(f.row(x));
    }
    out
}

/// `R↓(B) = {x : xRb for all b ∈ B}`.
pub fn galois_down(f: &Frame, b: &Bits) -> Bits {
    let mut out = Bits::full(f.n1());
    for y in b.iter() {
        out.intersect_with(f.col(y));
    }
    out
}

/// `(R↓ ∘ R↑)(A)`.
pub fn closure(f: &Frame, a: &Bits) -> Bits {
    galois_down(f, &galois_up(f, a))
}

/// The complete lattice of Galois-closed subsets of `X₁`.
#[derive(Debug, Clone)]
pub struct GaloisLattice {
    pub base: Frame,
    /// Closed sets, sorted by size then members; element `i` of `lattice`.
    pub closed: Vec<Bits>,
    pub lattice: FiniteLattice,
    /// Join-irreducible elements of `lattice`.
    pub j_infty: Vec<usize>,
    /// Meet-irreducible elements of `lattice`.
    pub m_infty: Vec<usize>,
    index: HashMap<Bits, usize>,
}

impl GaloisLattice {
    pub fn element_of(&self, set: &Bits) -> Option<usize> {
        self.index.get(set).copied()
    }

    /// Closed sets as lists of `X₁` names.
    pub fn closed_named(&self) -> Vec<Vec<String>> {
        self.closed
            .iter()
            .map(|s| s.iter().map(|x| self.base.name1(x).to_string()).collect())
            .collect()
    }
}

/// Closed sets generated as all intersections of the extents `Ry` and `X₁`.
pub fn closed_sets(f: &Frame) -> GaloisLattice {
    let mut family: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    let mut seen: BTreeSet<Bits> = BTreeSet::new();
    let full = Bits::full(f.n1());
    seen.insert(full);
    for y in 0..f.n2() {
        let col = f.col(y);
        let fresh: Vec<Bits> = seen
            .iter()
            .map(|s| s.intersection(col))
            .filter(|s| !seen.contains(s))
            .collect();
        seen.extend(fresh);
    }
    for s in &seen {
        assert_eq!(&closure(f, s), s, "intersection of extents is closed");
        family.insert((s.count(), s.iter().collect()));
    }
    let closed: Vec<Bits> = family
        .into_iter()
        .map(|(_, m)| Bits::from_indices(f.n1(), m))
        .collect();
    let names: Vec<String> = closed.iter().map(|s| set_label(s, f.x1())).collect();
    let leq = Relation::from_fn(closed.len(), closed.len(), |i, j| {
        closed[i].is_subset(&closed[j])
    });
    let lattice = FiniteLattice::from_order(names, leq).expect("closure systems are lattices");
    let irr = irreducibles(&lattice);
    let index = closed
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    GaloisLattice {
        base: f.clone(),
        closed,
        lattice,
        j_infty: irr.join,
        m_infty: irr.meet,
        index,
    }
}

/// `J∞ = {(R↓∘R↑)({x})}` and `M∞ = {Ry}` by formula, cross-checked against
/// the irreducibles of the lattice view.
pub fn irreducibles_of_galois(gl: &GaloisLattice) -> Result<(Vec<usize>, Vec<usize>), GaloisError> {
    let f = &gl.base;
    let lookup = |s: &Bits| gl.element_of(s).expect("formula sets are closed");
    let j: BTreeSet<usize> = (0..f.n1())
        .map(|x| lookup(&closure(f, &Bits::from_indices(f.n1(), [x]))))
        .collect();
    let m: BTreeSet<usize> = (0..f.n2()).map(|y| lookup(f.col(y))).collect();
    let names = |s: &[usize]| -> Vec<String> {
        s.iter().map(|&i| gl.lattice.name(i).to_string()).collect()
    };
    let j: Vec<usize> = j.into_iter().collect();
    let m: Vec<usize> = m.into_iter().collect();
    if j != gl.j_infty {
        return Err(GaloisError::IrreducibleMismatch {
            side: "join",
            formula: names(&j),
            computed: names(&gl.j_infty),
        });
    }
    if m != gl.m_infty {
        return Err(GaloisError::IrreducibleMismatch {
            side: "meet",
            formula: names(&m),
            computed: names(&gl.m_infty),
        });
    }
    Ok((j, m))
}

/// `F(C) = (J∞(C), M∞(C), ≤)`.
pub fn frame_of_perfect(c: &FiniteLattice) -> Result<Frame, GaloisError> {
    let p = check_perfect(c);
    if let Some(w) = p.first_witness() {
        return Err(GaloisError::NotPerfect(w.clone()));
    }
    let irr = irreducibles(c);
    let x1 = irr.join.iter().map(|&a| c.name(a).to_string()).collect();
    let x2 = irr.meet.iter().map(|&a| c.name(a).to_string()).collect();
    let rel = Relation::from_fn(irr.join.len(), irr.meet.len(), |i, j| {
        c.leq(irr.join[i], irr.meet[j])
    });
    Ok(Frame::from_relation(x1, x2, rel).expect("lattice names are distinct"))
}

fn finish_extension(
    l: &FiniteLattice,
    gl: &GaloisLattice,
    images: Vec<Bits>,
) -> Result<LatticeEmbedding, GaloisError> {
    let mut map = Vec::with_capacity(l.len());
    for (a, s) in images.iter().enumerate() {
        map.push(
            gl.element_of(s)
                .ok_or_else(|| GaloisError::NotClosed(l.name(a).to_string()))?,
        );
    }
    let emb = LatticeEmbedding::new(l.clone(), gl.lattice.clone(), map)?;
    let dense = check_dense(&emb, WitnessMode::First);
    if !dense.passed() {
        return Err(GaloisError::NotDense(dense));
    }
    let compact = check_compact(&emb);
    if !compact.passed() {
        return Err(GaloisError::NotCompact(compact));
    }
    if !emb.is_onto() {
        return Err(GaloisError::EmbeddingNotOnto);
    }
    Ok(emb)
}

/// `G(ρ(D♭(L)))` with `a ↦ {[f]₁ : a ∈ f⁻¹(1)}`.
pub fn canext_tandem(l: &FiniteLattice) -> Result<(LatticeEmbedding, GaloisLattice), GaloisError> {
    let d = dual_graph(l)?;
    let r = rho(&d.graph);
    let gl = closed_sets(&r.frame);
    let images = (0..l.len())
        .map(|a| {
            Bits::from_indices(
                r.frame.n1(),
                d.pairs
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| p.ones.contains(a))
                    .map(|(v, _)| r.row_class[v]),
            )
        })
        .collect();
    let emb = finish_extension(l, &gl, images)?;
    Ok((emb, gl))
}

/// The polarity `(Filt(L), Idl(L), F ∩ I ≠ ∅)`; filters are named `up:a`
/// and ideals `dn:a` after their generators.
pub fn filter_ideal_frame(l: &FiniteLattice) -> Frame {
    let x1 = l.names().iter().map(|a| format!("up:{a}")).collect();
    let x2 = l.names().iter().map(|a| format!("dn:{a}")).collect();
    let rel = Relation::from_fn(l.len(), l.len(), |a, b| l.up(a).intersects(l.down(b)));
    Frame::from_relation(x1, x2, rel).expect("lattice names are distinct")
}

/// Galois-stable sets of the filter–ideal polarity with `a ↦ cl({↑a})`.
pub fn canext_polarity(
    l: &FiniteLattice,
) -> Result<(LatticeEmbedding, GaloisLattice), GaloisError> {
    let f = filter_ideal_frame(l);
    let gl = closed_sets(&f);
    let images = (0..l.len())
        .map(|a| closure(&f, &Bits::from_indices(l.len(), [a])))
        .collect();
    let emb = finish_extension(l, &gl, images)?;
    Ok((emb, gl))
}

/// Both constructions and the isomorphism between their targets that
/// commutes with the embeddings.
#[derive(Debug, Clone)]
pub struct CanextComparison {
    pub tandem: (LatticeEmbedding, GaloisLattice),
    pub polarity: (LatticeEmbedding, GaloisLattice),
    /// Tandem target element `i` ↦ polarity target element `iso[i]`.
    pub iso: Vec<usize>,
}

pub fn canext_both(l: &FiniteLattice) -> Result<CanextComparison, GaloisError> {
    let tandem = canext_tandem(l)?;
    let polarity = canext_polarity(l)?;
    let inv = tandem
        .0
        .inverse()
        .ok_or_else(|| GaloisError::CrossCheckFailed("tandem embedding is not onto".into()))?;
    let iso: Vec<usize> = inv.iter().map(|&a| polarity.0.apply(a)).collect();
    let (a, b) = (tandem.0.target(), polarity.0.target());
    if !crate::iso::is_bijection(&iso, b.len())
        || !crate::iso::is_digraph_iso(a.order(), b.order(), &iso)
    {
        return Err(GaloisError::CrossCheckFailed(
            "composite of the embeddings is not an isomorphism".into(),
        ));
    }
    Ok(CanextComparison {
        tandem,
        polarity,
        iso,
    })
}

/// `{⋀e[F]}` and `{⋁e[I]}` over the maximal pairs `(F, I)` of the source
/// must be exactly `J∞` and `M∞` of the target, and the target must be
/// perfect.
pub fn jinfty_via_maximal_pairs(emb: &LatticeEmbedding) -> CheckReport {
    let (s, t) = (emb.source(), emb.target());
    let pairs = maximal_pairs(s).unwrap_or_default();
    let meets: BTreeSet<usize> = pairs
        .iter()
        .map(|p| t.meet_all(p.ones.iter().map(|a| emb.apply(a))))
        .collect();
    let joins: BTreeSet<usize> = pairs
        .iter()
        .map(|p| t.join_all(p.zeros.iter().map(|a| emb.apply(a))))
        .collect();
    let irr = irreducibles(t);
    let mut c = Collector::new(WitnessMode::All);
    let mut compare = |label: &str, got: &BTreeSet<usize>, want: &[usize]| {
        let want: BTreeSet<usize> = want.iter().copied().collect();
        for &x in got.symmetric_difference(&want) {
            c.push(Witness::new(label, vec![t.name(x)]));
        }
    };
    compare("J∞", &meets, &irr.join);
    compare("M∞", &joins, &irr.meet);
    let report = c.finish();
    report.and(check_perfect(t))
}

/// The three clauses relating `(R↓∘R↑)({x})` to rows and columns:
/// `w ∈ cl{x} ⟺ xR ⊆ wR`, `cl{w} ⊆ cl{x} ⟺ xR ⊆ wR`, `cl{x} ⊆ Ry ⟺ xRy`.
pub fn check_r_upset_lemma(f: &Frame, mode: WitnessMode) -> CheckReport {
    let cl: Vec<Bits> = (0..f.n1())
        .map(|x| closure(f, &Bits::from_indices(f.n1(), [x])))
        .collect();
    let mut c = Collector::new(mode);
    'sweep: for x in 0..f.n1() {
        for w in 0..f.n1() {
            let rows = f.row(x).is_subset(f.row(w));
            if cl[x].contains(w) != rows
                && c.push(Witness::new("(i)", vec![f.name1(x), f.name1(w)]))
            {
                break 'sweep;
            }
            if cl[w].is_subset(&cl[x]) != rows
                && c.push(Witness::new("(ii)", vec![f.name1(x), f.name1(w)]))
            {
                break 'sweep;
            }
        }
        for y in 0..f.n2() {
            if cl[x].is_subset(f.col(y)) != f.related(x, y)
                && c.push(Witness::new("(iii)", vec![f.name1(x), f.name2(y)]))
            {
                break 'sweep;
            }
        }
    }
    c.finish()
}
