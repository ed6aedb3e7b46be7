//! The PTi condition on finite perfect lattices, its frame-level form, and
//! the bridge between (Ti) on frames and (PTi) on closed-set lattices.
//!
//! For `x ∈ J∞`, `y ∈ M∞` with `x ≰ y` the lattice form asks for `w ∈ J∞`,
//! `z ∈ M∞` with
//!
//! 1. `w ≤ x` and `y ≤ z`,
//! 2. `w ≰ z`,
//! 3. every `u ∈ J∞` with `u < w` satisfies `u ≤ z`,
//! 4. every `v ∈ M∞` with `z < v` satisfies `w ≤ v`.
//!
//! Clause 4 quantifies over the strict upper bounds of `z`, which makes
//! `(↑w, ↓z)` a maximal disjoint filter–ideal pair. The frame form replaces
//! `≤` by row and column inclusion.

use serde::Serialize;
use thiserror::Error;

use crate::functors::frame_iso;
use crate::galois::{closed_sets, frame_of_perfect};
use crate::lattice::{check_perfect, irreducibles, FiniteLattice};
use crate::report::{CheckReport, Collector, Witness, WitnessMode};
use crate::structures::{check_frame, Frame};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PtiError {
    #[error("lattice is not perfect at `{}`", .0.elements.join(","))]
    NotPerfect(Witness),
    #[error("frame is not RS: {} fails at {}", .0.condition, .0.elements.join(","))]
    NotRS(Witness),
}

/// Outcome for one pair `(x, y)`: the witnessing `(w, z)` or none.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PtiWitness {
    pub x: String,
    pub y: String,
    pub w: Option<String>,
    pub z: Option<String>,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PtiReport {
    pub report: CheckReport,
    pub witnesses: Vec<PtiWitness>,
}

impl PtiReport {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

/// An abstract instance: `le1(a, b)` compares first-sort points, `le2`
/// second-sort points, `rel(a, b)` is the cross relation (`x ≤ y` or
/// `xRy`). The strict order is `le ∧ ¬ge`.
struct Instance<'a> {
    firsts: Vec<usize>,
    seconds: Vec<usize>,
    le1: &'a dyn Fn(usize, usize) -> bool,
    le2: &'a dyn Fn(usize, usize) -> bool,
    rel: &'a dyn Fn(usize, usize) -> bool,
    name1: &'a dyn Fn(usize) -> String,
    name2: &'a dyn Fn(usize) -> String,
}

impl Instance<'_> {
    fn lt1(&self, a: usize, b: usize) -> bool {
        (self.le1)(a, b) && !(self.le1)(b, a)
    }

    fn lt2(&self, a: usize, b: usize) -> bool {
        (self.le2)(a, b) && !(self.le2)(b, a)
    }

    /// Clauses 1–4 for the candidate `(w, z)` against `(x, y)`.
    fn witnesses(&self, x: usize, y: usize, w: usize, z: usize) -> bool {
        (self.le1)(w, x)
            && (self.le2)(y, z)
            && !(self.rel)(w, z)
            && self
                .firsts
                .iter()
                .all(|&u| !self.lt1(u, w) || (self.rel)(u, z))
            && self
                .seconds
                .iter()
                .all(|&v| !self.lt2(z, v) || (self.rel)(w, v))
    }

    /// Sweeps every `(x, y)` with `¬rel(x, y)` against the candidate lists.
    fn sweep(&self, cand_w: &[usize], cand_z: &[usize], mode: WitnessMode) -> PtiReport {
        let mut c = Collector::new(WitnessMode::All);
        let mut out = Vec::new();
        for &x in &self.firsts {
            for &y in &self.seconds {
                if (self.rel)(x, y) {
                    continue;
                }
                let mut found = false;
                'search: for &w in cand_w {
                    for &z in cand_z {
                        if self.witnesses(x, y, w, z) {
                            found = true;
                            out.push(PtiWitness {
                                x: (self.name1)(x),
                                y: (self.name2)(y),
                                w: Some((self.name1)(w)),
                                z: Some((self.name2)(z)),
                                satisfied: true,
                            });
                            if mode == WitnessMode::First {
                                break 'search;
                            }
                        }
                    }
                }
                if !found {
                    out.push(PtiWitness {
                        x: (self.name1)(x),
                        y: (self.name2)(y),
                        w: None,
                        z: None,
                        satisfied: false,
                    });
                    c.push(Witness::new("PTi", vec![(self.name1)(x), (self.name2)(y)]));
                }
            }
        }
        PtiReport {
            report: c.finish(),
            witnesses: out,
        }
    }
}

fn lattice_instance(
    c: &FiniteLattice,
    js: Vec<usize>,
    ms: Vec<usize>,
    f: impl FnOnce(&Instance<'_>) -> PtiReport,
) -> PtiReport {
    let le = |a: usize, b: usize| c.leq(a, b);
    let name = |a: usize| c.name(a).to_string();
    f(&Instance {
        firsts: js,
        seconds: ms,
        le1: &le,
        le2: &le,
        rel: &le,
        name1: &name,
        name2: &name,
    })
}

fn frame_instance(f: &Frame, run: impl FnOnce(&Instance<'_>) -> PtiReport) -> PtiReport {
    let le1 = |a: usize, b: usize| f.row(a).is_subset(f.row(b));
    let le2 = |a: usize, b: usize| f.col(a).is_subset(f.col(b));
    let rel = |a: usize, b: usize| f.related(a, b);
    let name1 = |a: usize| f.name1(a).to_string();
    let name2 = |b: usize| f.name2(b).to_string();
    run(&Instance {
        firsts: (0..f.n1()).collect(),
        seconds: (0..f.n2()).collect(),
        le1: &le1,
        le2: &le2,
        rel: &rel,
        name1: &name1,
        name2: &name2,
    })
}

/// (PTi) on a finite perfect lattice. `mode` controls whether the first or
/// every witnessing `(w, z)` is listed per pair.
pub fn check_pti(c: &FiniteLattice, mode: WitnessMode) -> Result<PtiReport, PtiError> {
    if let Some(w) = check_perfect(c).first_witness() {
        return Err(PtiError::NotPerfect(w.clone()));
    }
    let irr = irreducibles(c);
    Ok(lattice_instance(
        c,
        irr.join.clone(),
        irr.meet.clone(),
        |inst| inst.sweep(&irr.join, &irr.meet, mode),
    ))
}

/// The frame form: for `¬(xRy)` find `p`, `q` with `xR ⊆ pR`, `Ry ⊆ Rq`,
/// `¬(pRq)`, `pR ⊊ uR ⇒ uRq` and `Rq ⊊ Rv ⇒ pRv`.
///
/// On a finite frame this always holds: take `p` with a maximal row among
/// those above `xR` and not related to `y`, then `q` with a maximal column
/// above `Ry` not related to `p`.
pub fn check_pti_frame_form(f: &Frame, mode: WitnessMode) -> PtiReport {
    frame_form_with_candidates(
        f,
        &(0..f.n1()).collect::<Vec<_>>(),
        &(0..f.n2()).collect::<Vec<_>>(),
        mode,
    )
}

fn frame_form_with_candidates(
    f: &Frame,
    cand_p: &[usize],
    cand_q: &[usize],
    mode: WitnessMode,
) -> PtiReport {
    frame_instance(f, |inst| inst.sweep(cand_p, cand_q, mode))
}

/// For an RS frame: (a) (Ti) ⇒ (PTi) of `G(F)`; (b) (PTi) of `G(F)` ⇒
/// (Ti) of `F(G(F))`; (c) `F(G(F)) ≅ F`.
pub fn pti_bridge_suite(f: &Frame) -> Result<CheckReport, PtiError> {
    let conds = check_frame(f, WitnessMode::First);
    if !conds.is_rs() {
        let w = conds
            .cond_s
            .first_witness()
            .or(conds.cond_r.first_witness())
            .cloned()
            .expect("a failing check has a witness");
        return Err(PtiError::NotRS(w));
    }
    let gl = closed_sets(f);
    let pti = check_pti(&gl.lattice, WitnessMode::First)?;
    let back = frame_of_perfect(&gl.lattice).map_err(|e| match e {
        crate::galois::GaloisError::NotPerfect(w) => PtiError::NotPerfect(w),
        other => unreachable!("{other}"),
    })?;
    let mut c = Collector::new(WitnessMode::All);
    if conds.cond_ti.passed() && !pti.passed() {
        c.push(Witness::new(
            "(a)",
            pti.report.first_witness().unwrap().elements.clone(),
        ));
    }
    if pti.passed() {
        let ti = check_frame(&back, WitnessMode::First).cond_ti;
        if let Some(w) = ti.first_witness() {
            c.push(Witness::new("(b)", w.elements.clone()));
        }
    }
    if frame_iso(&back, f).is_none() {
        c.push(Witness::new("(c)", Vec::<String>::new()));
    }
    Ok(c.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::functors::rho;
    use crate::ploscica::dual_graph;
    use crate::relation::Relation;

    fn pair(w: &PtiWitness) -> (String, String, Option<String>, Option<String>) {
        (w.x.clone(), w.y.clone(), w.w.clone(), w.z.clone())
    }

    fn s(x: &str) -> String {
        x.to_string()
    }

    /// Oracle: the four clauses transcribed over the whole lattice with
    /// irreducibles read off from cover counts.
    fn pti_brute(c: &FiniteLattice) -> bool {
        let n = c.len();
        let ji = |a: usize| {
            (0..n)
                .filter(|&b| c.lt(b, a) && (0..n).all(|m| !(c.lt(b, m) && c.lt(m, a))))
                .count()
                == 1
        };
        let mi = |a: usize| {
            (0..n)
                .filter(|&b| c.lt(a, b) && (0..n).all(|m| !(c.lt(a, m) && c.lt(m, b))))
                .count()
                == 1
        };
        (0..n).filter(|&x| ji(x)).all(|x| {
            (0..n).filter(|&y| mi(y) && !c.leq(x, y)).all(|y| {
                (0..n).filter(|&w| ji(w)).any(|w| {
                    (0..n).filter(|&z| mi(z)).any(|z| {
                        c.leq(w, x)
                            && c.leq(y, z)
                            && !c.leq(w, z)
                            && (0..n).filter(|&u| ji(u) && c.lt(u, w)).all(|u| c.leq(u, z))
                            && (0..n).filter(|&v| mi(v) && c.lt(z, v)).all(|v| c.leq(w, v))
                    })
                })
            })
        })
    }

    #[test]
    fn c2_single_pair() {
        let r = check_pti(&fixtures::c2(), WitnessMode::First).unwrap();
        assert!(r.passed());
        assert_eq!(r.witnesses.len(), 1);
        assert_eq!(
            pair(&r.witnesses[0]),
            (s("1"), s("0"), Some(s("1")), Some(s("0")))
        );
    }

    #[test]
    fn n5_pair_b_a_uses_c() {
        let r = check_pti(&fixtures::n5(), WitnessMode::All).unwrap();
        assert!(r.passed());
        let ba: Vec<_> = r
            .witnesses
            .iter()
            .filter(|w| w.x == "b" && w.y == "a")
            .collect();
        assert_eq!(ba.len(), 1);
        assert_eq!(ba[0].z.as_deref(), Some("c"));
        assert_eq!(ba[0].w.as_deref(), Some("b"));
    }

    #[test]
    fn m3_atoms() {
        let l = fixtures::m3();
        let r = check_pti(&l, WitnessMode::First).unwrap();
        assert!(r.passed());
        assert_eq!(r.witnesses.len(), 6);
        for w in &r.witnesses {
            assert_eq!(w.w.as_ref(), Some(&w.x));
            assert_ne!(w.z.as_ref(), w.w.as_ref());
        }
    }

    #[test]
    fn agrees_with_transcription_on_fixtures() {
        for (name, l) in fixtures::lattices() {
            assert_eq!(
                check_pti(&l, WitnessMode::First).unwrap().passed(),
                pti_brute(&l),
                "{name}"
            );
        }
    }

    #[test]
    fn frame_form_examples() {
        assert!(check_pti_frame_form(&fixtures::diagonal_frame(3), WitnessMode::First).passed());
        let n5 = rho(&dual_graph(&fixtures::n5()).unwrap().graph).frame;
        assert!(check_pti_frame_form(&n5, WitnessMode::First).passed());
        // Rows are equal and empty, so clauses 3 and 4 are vacuous and
        // (x, y) witnesses itself.
        let r = check_pti_frame_form(&fixtures::f2x1(), WitnessMode::First);
        assert!(r.passed());
        assert_eq!(
            pair(&r.witnesses[0]),
            (s("x"), s("y"), Some(s("x")), Some(s("y")))
        );
    }

    #[test]
    fn frame_form_fails_without_candidates() {
        let f = fixtures::diagonal_frame(3);
        // Only d0 as p: the pair (d0, d0) is related, so nothing witnesses
        // (d1, d0).
        let r = frame_form_with_candidates(&f, &[0], &[0, 1, 2], WitnessMode::First);
        assert!(!r.passed());
        assert_eq!(r.report.first_witness().unwrap().elements, ["d1", "d0"]);
        assert!(r.witnesses.iter().any(|w| !w.satisfied && w.w.is_none()));
    }

    #[test]
    fn lattice_form_fails_with_corrupted_candidates() {
        let l = fixtures::n5();
        let irr = irreducibles(&l);
        let c = l.index_of("c").unwrap();
        let r = lattice_instance(&l, irr.join.clone(), irr.meet.clone(), |inst| {
            inst.sweep(&irr.join, &[c], WitnessMode::First)
        });
        assert!(!r.passed());
        let failing: Vec<Vec<String>> = r
            .report
            .witnesses()
            .iter()
            .map(|w| w.elements.clone())
            .collect();
        assert!(failing.contains(&vec![s("c"), s("a")]));
    }

    #[test]
    fn rejects_non_perfect_and_non_rs() {
        assert!(matches!(
            pti_bridge_suite(&fixtures::f2x1()),
            Err(PtiError::NotRS(_))
        ));
        let l = fixtures::n5();
        let r = pti_bridge_suite(&rho(&dual_graph(&l).unwrap().graph).frame).unwrap();
        assert!(r.passed());
        let m3 = pti_bridge_suite(&rho(&dual_graph(&fixtures::m3()).unwrap().graph).frame).unwrap();
        assert!(m3.passed());
    }

    #[test]
    fn bridge_on_all_small_rs_frames() {
        for mask in 0u64..1 << 9 {
            let f = Frame::from_relation(
                (0..3).map(|i| format!("x{i}")).collect(),
                (0..3).map(|i| format!("y{i}")).collect(),
                Relation::from_fn(3, 3, |i, j| mask >> (i * 3 + j) & 1 == 1),
            )
            .unwrap();
            let conds = check_frame(&f, WitnessMode::First);
            if !conds.is_rs() {
                continue;
            }
            assert!(conds.cond_ti.passed());
            assert!(pti_bridge_suite(&f).unwrap().passed());
            let lattice_form = check_pti(&closed_sets(&f).lattice, WitnessMode::First).unwrap();
            assert_eq!(
                check_pti_frame_form(&f, WitnessMode::First).passed(),
                lattice_form.passed()
            );
        }
    }
}
