//! Finite bounded lattices.
//!
//! A lattice is given by its element names and a cover relation; the order
//! is the reflexive-transitive closure of the covers. Elements are addressed
//! by their index in the input list and every output uses names.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::iso;
use crate::relation::{Bits, Relation};
use crate::report::{CheckReport, Collector, Witness, WitnessMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Join,
    Meet,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Join => f.write_str("least upper bound"),
            Bound::Meet => f.write_str("greatest lower bound"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("cover references unknown element `{0}`")]
    UnknownElement(String),
    #[error("not a partial order: `{0}` and `{1}` lie on a cycle")]
    NotAPartialOrder(String, String),
    #[error("order relation is not reflexive at `{0}`")]
    NotReflexive(String),
    #[error("order relation is not transitive: `{0}` <= `{1}` <= `{2}`")]
    NotTransitive(String, String, String),
    #[error("not a lattice: `{a}` and `{b}` have no unique {missing}")]
    NotALattice {
        a: String,
        b: String,
        missing: Bound,
    },
    #[error("ordered set has no least or no greatest element")]
    NoBounds,
    #[error("map is not a lattice embedding: {0}")]
    NotAnEmbedding(String),
}

/// A finite bounded lattice with precomputed operation tables.
#[derive(Clone)]
pub struct FiniteLattice {
    names: Vec<String>,
    index: HashMap<String, usize>,
    leq: Relation,
    join: Vec<usize>,
    meet: Vec<usize>,
    bot: usize,
    top: usize,
    lower_covers: Vec<Vec<usize>>,
    upper_covers: Vec<Vec<usize>>,
}

impl PartialEq for FiniteLattice {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.leq == other.leq
    }
}

impl Eq for FiniteLattice {}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteLattice")
            .field("elements", &self.names)
            .field("covers", &self.cover_pairs_named())
            .finish()
    }
}

/// Builds a lattice from element names and a cover relation given as
/// `(lower, upper)` name pairs.
pub fn build_lattice<S: AsRef<str>>(
    elements: &[S],
    covers: &[(S, S)],
) -> Result<FiniteLattice, LatticeError> {
    let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
    let index = index_names(&names)?;
    let n = names.len();
    let mut rel = Relation::empty(n, n);
    for (a, b) in covers {
        let ia = *index
            .get(a.as_ref())
            .ok_or_else(|| LatticeError::UnknownElement(a.as_ref().to_string()))?;
        let ib = *index
            .get(b.as_ref())
            .ok_or_else(|| LatticeError::UnknownElement(b.as_ref().to_string()))?;
        rel.insert(ia, ib);
    }
    FiniteLattice::from_order(names, rel.reflexive_transitive_closure())
}

fn index_names(names: &[String]) -> Result<HashMap<String, usize>, LatticeError> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        if index.insert(name.clone(), i).is_some() {
            return Err(LatticeError::DuplicateName(name.clone()));
        }
    }
    Ok(index)
}

impl FiniteLattice {
    /// Validates a full order relation (`leq.contains(a, b)` means `a ≤ b`)
    /// and computes the lattice tables.
    pub fn from_order(names: Vec<String>, leq: Relation) -> Result<Self, LatticeError> {
        let index = index_names(&names)?;
        let n = names.len();
        assert_eq!(leq.n_left(), n);
        assert_eq!(leq.n_right(), n);

        for a in 0..n {
            if !leq.contains(a, a) {
                return Err(LatticeError::NotReflexive(names[a].clone()));
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if leq.contains(a, b) && leq.contains(b, a) {
                    return Err(LatticeError::NotAPartialOrder(
                        names[a].clone(),
                        names[b].clone(),
                    ));
                }
            }
        }
        for a in 0..n {
            for b in leq.row(a).iter() {
                if let Some(c) = leq.row(b).iter().find(|&c| !leq.contains(a, c)) {
                    return Err(LatticeError::NotTransitive(
                        names[a].clone(),
                        names[b].clone(),
                        names[c].clone(),
                    ));
                }
            }
        }

        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let ub = leq.row(a).intersection(leq.row(b));
                let lub = ub.iter().find(|&u| ub.is_subset(leq.row(u)));
                let lb = leq.col(a).intersection(leq.col(b));
                let glb = lb.iter().find(|&l| lb.is_subset(leq.col(l)));
                match (lub, glb) {
                    (Some(j), Some(m)) => {
                        join[a * n + b] = j;
                        meet[a * n + b] = m;
                    }
                    (None, _) => {
                        return Err(LatticeError::NotALattice {
                            a: names[a].clone(),
                            b: names[b].clone(),
                            missing: Bound::Join,
                        })
                    }
                    (_, None) => {
                        return Err(LatticeError::NotALattice {
                            a: names[a].clone(),
                            b: names[b].clone(),
                            missing: Bound::Meet,
                        })
                    }
                }
            }
        }

        let all = Bits::full(n);
        let bot = (0..n)
            .find(|&e| leq.row(e) == &all)
            .ok_or(LatticeError::NoBounds)?;
        let top = (0..n)
            .find(|&e| leq.col(e) == &all)
            .ok_or(LatticeError::NoBounds)?;

        let mut lower_covers = vec![Vec::new(); n];
        let mut upper_covers = vec![Vec::new(); n];
        for a in 0..n {
            for b in leq.row(a).iter() {
                if a == b {
                    continue;
                }
                let between = leq
                    .row(a)
                    .intersection(leq.col(b))
                    .iter()
                    .any(|c| c != a && c != b);
                if !between {
                    upper_covers[a].push(b);
                    lower_covers[b].push(a);
                }
            }
        }

        Ok(FiniteLattice {
            names,
            index,
            leq,
            join,
            meet,
            bot,
            top,
            lower_covers,
            upper_covers,
        })
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

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn order(&self) -> &Relation {
        &self.leq
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq.contains(a, b)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    /// Join of an arbitrary family; the empty join is the bottom.
    pub fn join_all<I: IntoIterator<Item = usize>>(&self, it: I) -> usize {
        it.into_iter().fold(self.bot, |acc, x| self.join(acc, x))
    }

    /// Meet of an arbitrary family; the empty meet is the top.
    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, it: I) -> usize {
        it.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn bot(&self) -> usize {
        self.bot
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// `↑a`
    pub fn up(&self, a: usize) -> &Bits {
        self.leq.row(a)
    }

    /// `↓a`
    pub fn down(&self, a: usize) -> &Bits {
        self.leq.col(a)
    }

    pub fn lower_covers(&self, a: usize) -> &[usize] {
        &self.lower_covers[a]
    }

    pub fn upper_covers(&self, a: usize) -> &[usize] {
        &self.upper_covers[a]
    }

    /// Cover pairs `(lower, upper)` in lexicographic index order.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|a| self.upper_covers[a].iter().map(move |&b| (a, b)))
            .collect()
    }

    pub fn cover_pairs_named(&self) -> Vec<(String, String)> {
        self.cover_pairs()
            .into_iter()
            .map(|(a, b)| (self.names[a].clone(), self.names[b].clone()))
            .collect()
    }

    /// Full order as named pairs, lexicographic.
    pub fn leq_pairs_named(&self) -> Vec<(String, String)> {
        self.leq
            .pairs()
            .map(|(a, b)| (self.names[a].clone(), self.names[b].clone()))
            .collect()
    }

    pub fn set_names(&self, set: &Bits) -> Vec<String> {
        set.iter().map(|i| self.names[i].clone()).collect()
    }

    /// A hash of names and order, used to detect objects built over
    /// different carriers.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.names.hash(&mut h);
        self.leq.hash(&mut h);
        h.finish()
    }

    /// Same elements with every name passed through `f`.
    pub fn renamed(&self, f: impl Fn(usize, &str) -> String) -> Result<Self, LatticeError> {
        let names = self
            .names
            .iter()
            .enumerate()
            .map(|(i, s)| f(i, s))
            .collect();
        FiniteLattice::from_order(names, self.leq.clone())
    }
}

/// Join- and meet-irreducible elements as sorted index lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Irreducibles {
    pub join: Vec<usize>,
    pub meet: Vec<usize>,
}

/// In a finite lattice an element is (completely) join-irreducible iff it
/// has exactly one lower cover, and dually.
pub fn irreducibles(l: &FiniteLattice) -> Irreducibles {
    Irreducibles {
        join: (0..l.len())
            .filter(|&a| l.lower_covers(a).len() == 1)
            .collect(),
        meet: (0..l.len())
            .filter(|&a| l.upper_covers(a).len() == 1)
            .collect(),
    }
}

pub fn is_filter(l: &FiniteLattice, set: &Bits) -> bool {
    !set.is_empty()
        && set.iter().all(|a| l.up(a).is_subset(set))
        && set
            .iter()
            .all(|a| set.iter().all(|b| set.contains(l.meet(a, b))))
}

pub fn is_ideal(l: &FiniteLattice, set: &Bits) -> bool {
    !set.is_empty()
        && set.iter().all(|a| l.down(a).is_subset(set))
        && set
            .iter()
            .all(|a| set.iter().all(|b| set.contains(l.join(a, b))))
}

/// All nonempty filters and ideals. In a finite lattice every filter is
/// `↑a` for its least element and every ideal is `↓a` for its greatest, so
/// entry `i` of each list is the one generated by element `i`.
pub fn filters_ideals(l: &FiniteLattice) -> (Vec<Bits>, Vec<Bits>) {
    let filters = (0..l.len()).map(|a| l.up(a).clone()).collect();
    let ideals = (0..l.len()).map(|a| l.down(a).clone()).collect();
    (filters, ideals)
}

/// An injective bounded-lattice homomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeEmbedding {
    source: FiniteLattice,
    target: FiniteLattice,
    map: Vec<usize>,
}

impl LatticeEmbedding {
    pub fn new(
        source: FiniteLattice,
        target: FiniteLattice,
        map: Vec<usize>,
    ) -> Result<Self, LatticeError> {
        let bad = |msg: String| Err(LatticeError::NotAnEmbedding(msg));
        if map.len() != source.len() {
            return bad(format!(
                "map has {} entries for {} source elements",
                map.len(),
                source.len()
            ));
        }
        if let Some(&v) = map.iter().find(|&&v| v >= target.len()) {
            return bad(format!("image index {v} out of range"));
        }
        if map[source.bot()] != target.bot() {
            return bad("bottom not preserved".into());
        }
        if map[source.top()] != target.top() {
            return bad("top not preserved".into());
        }
        let mut seen = HashMap::new();
        for (a, &v) in map.iter().enumerate() {
            if let Some(b) = seen.insert(v, a) {
                return bad(format!(
                    "`{}` and `{}` have the same image",
                    source.name(b),
                    source.name(a)
                ));
            }
        }
        for a in 0..source.len() {
            for b in 0..source.len() {
                if map[source.join(a, b)] != target.join(map[a], map[b]) {
                    return bad(format!(
                        "join of `{}` and `{}` not preserved",
                        source.name(a),
                        source.name(b)
                    ));
                }
                if map[source.meet(a, b)] != target.meet(map[a], map[b]) {
                    return bad(format!(
                        "meet of `{}` and `{}` not preserved",
                        source.name(a),
                        source.name(b)
                    ));
                }
            }
        }
        Ok(LatticeEmbedding {
            source,
            target,
            map,
        })
    }

    pub fn identity(l: &FiniteLattice) -> Self {
        LatticeEmbedding {
            source: l.clone(),
            target: l.clone(),
            map: (0..l.len()).collect(),
        }
    }

    pub fn source(&self) -> &FiniteLattice {
        &self.source
    }

    pub fn target(&self) -> &FiniteLattice {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn image(&self) -> Bits {
        Bits::from_indices(self.target.len(), self.map.iter().copied())
    }

    pub fn is_onto(&self) -> bool {
        self.image().count() == self.target.len()
    }

    /// Inverse map on the target when the embedding is onto.
    pub fn inverse(&self) -> Option<Vec<usize>> {
        if !self.is_onto() {
            return None;
        }
        let mut inv = vec![0; self.target.len()];
        for (a, &v) in self.map.iter().enumerate() {
            inv[v] = a;
        }
        Some(inv)
    }

    /// `(a ↦ name of e(a))` pairs, for serialization.
    pub fn named_pairs(&self) -> Vec<(String, String)> {
        self.map
            .iter()
            .enumerate()
            .map(|(a, &v)| {
                (
                    self.source.name(a).to_string(),
                    self.target.name(v).to_string(),
                )
            })
            .collect()
    }
}

/// Closure of `seed ∪ {unit}` under a binary operation.
fn closure_under(seed: &Bits, unit: usize, op: impl Fn(usize, usize) -> usize) -> Bits {
    let mut out = seed.clone();
    out.insert(unit);
    loop {
        let members: Vec<usize> = out.iter().collect();
        let mut grew = false;
        for &a in &members {
            for &b in &members {
                let c = op(a, b);
                if !out.contains(c) {
                    out.insert(c);
                    grew = true;
                }
            }
        }
        if !grew {
            return out;
        }
    }
}

/// Filter elements: meets of subsets of the image (the empty meet is top).
pub fn filter_elements(emb: &LatticeEmbedding) -> Bits {
    let t = emb.target();
    closure_under(&emb.image(), t.top(), |a, b| t.meet(a, b))
}

/// Ideal elements: joins of subsets of the image (the empty join is bottom).
pub fn ideal_elements(emb: &LatticeEmbedding) -> Bits {
    let t = emb.target();
    closure_under(&emb.image(), t.bot(), |a, b| t.join(a, b))
}

/// Density: every target element is a join of filter elements and a meet
/// of ideal elements. Each failing target element is a witness.
pub fn check_dense(emb: &LatticeEmbedding, mode: WitnessMode) -> CheckReport {
    let t = emb.target();
    let filters = filter_elements(emb);
    let ideals = ideal_elements(emb);
    let mut c = Collector::new(mode);
    for x in 0..t.len() {
        let join_of_meets = t.join_all(filters.iter().filter(|&m| t.leq(m, x)));
        let meet_of_joins = t.meet_all(ideals.iter().filter(|&j| t.leq(x, j)));
        if join_of_meets != x && c.push(Witness::new("dense: not a join of meets", vec![t.name(x)]))
        {
            break;
        }
        if meet_of_joins != x && c.push(Witness::new("dense: not a meet of joins", vec![t.name(x)]))
        {
            break;
        }
    }
    c.finish()
}

/// Above this many filter plus ideal elements the compactness sweep is not
/// enumerated.
pub const COMPACT_SWEEP_LIMIT: usize = 18;

/// Compactness: whenever `⋀A ≤ ⋁B` for a set `A` of filter elements and a
/// set `B` of ideal elements, some finite `A' ⊆ A`, `B' ⊆ B` already satisfy
/// `⋀A' ≤ ⋁B'`.
///
/// Over finite lattices this always holds (take `A' = A`, `B' = B`). The
/// quantifier is still executed over all pairs `(A, B)` while
/// `|filters| + |ideals| ≤ COMPACT_SWEEP_LIMIT`; larger instances return the
/// degenerate verdict directly.
pub fn check_compact(emb: &LatticeEmbedding) -> CheckReport {
    let t = emb.target();
    let filters: Vec<usize> = filter_elements(emb).iter().collect();
    let ideals: Vec<usize> = ideal_elements(emb).iter().collect();
    if filters.len() + ideals.len() > COMPACT_SWEEP_LIMIT {
        return CheckReport::pass();
    }
    let pick = |set: &[usize], mask: u64| -> Vec<usize> {
        set.iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect()
    };
    let mut c = Collector::new(WitnessMode::First);
    'outer: for amask in 0..1u64 << filters.len() {
        let a = pick(&filters, amask);
        let meet_a = t.meet_all(a.iter().copied());
        for bmask in 0..1u64 << ideals.len() {
            let b = pick(&ideals, bmask);
            if !t.leq(meet_a, t.join_all(b.iter().copied())) {
                continue;
            }
            // A and B are themselves finite, so they serve as A' and B'.
            if !t.leq(t.meet_all(a.iter().copied()), t.join_all(b.iter().copied())) {
                let mut els: Vec<&str> = a.iter().map(|&x| t.name(x)).collect();
                els.push("|");
                els.extend(b.iter().map(|&x| t.name(x)));
                if c.push(Witness::new("compact", els)) {
                    break 'outer;
                }
            }
        }
    }
    c.finish()
}

pub fn is_distributive(l: &FiniteLattice, mode: WitnessMode) -> CheckReport {
    let n = l.len();
    let mut c = Collector::new(mode);
    'scan: for a in 0..n {
        for b in 0..n {
            for d in 0..n {
                let lhs = l.meet(a, l.join(b, d));
                let rhs = l.join(l.meet(a, b), l.meet(a, d));
                if lhs != rhs
                    && c.push(Witness::new(
                        "distributive",
                        vec![l.name(a), l.name(b), l.name(d)],
                    ))
                {
                    break 'scan;
                }
            }
        }
    }
    c.finish()
}

/// Every element is the join of the join-irreducibles below it and the meet
/// of the meet-irreducibles above it.
pub fn check_perfect(l: &FiniteLattice) -> CheckReport {
    let irr = irreducibles(l);
    let mut c = Collector::new(WitnessMode::First);
    for x in 0..l.len() {
        let j = l.join_all(irr.join.iter().copied().filter(|&u| l.leq(u, x)));
        let m = l.meet_all(irr.meet.iter().copied().filter(|&v| l.leq(x, v)));
        if (j != x || m != x) && c.push(Witness::new("perfect", vec![l.name(x)])) {
            break;
        }
    }
    c.finish()
}

/// An order isomorphism (equivalently a lattice isomorphism) `a → b`.
pub fn lattice_iso(a: &FiniteLattice, b: &FiniteLattice) -> Option<Vec<usize>> {
    iso::digraph_iso(a.order(), b.order())
}

/// The lattice of down-closed subsets of a finite order, ordered by
/// inclusion. Elements are named by their members in `names`.
pub fn downset_lattice(order: &Relation, names: &[String]) -> FiniteLattice {
    let sets = downsets(order);
    let set_names: Vec<String> = sets.iter().map(|s| set_label(s, names)).collect();
    let leq = Relation::from_fn(sets.len(), sets.len(), |i, j| sets[i].is_subset(&sets[j]));
    FiniteLattice::from_order(set_names, leq).expect("downsets form a lattice")
}

/// All down-closed subsets of `order` (`order.contains(a,b)` meaning
/// `a ≤ b`), sorted by size then members.
pub fn downsets(order: &Relation) -> Vec<Bits> {
    let n = order.n_left();
    let mut found: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    let mut stack = vec![Bits::new(n)];
    let mut seen = std::collections::HashSet::new();
    while let Some(s) = stack.pop() {
        if !seen.insert(s.clone()) {
            continue;
        }
        found.insert((s.count(), s.iter().collect()));
        for x in 0..n {
            if !s.contains(x) {
                let grown = s.union(order.col(x));
                if !seen.contains(&grown) {
                    stack.push(grown);
                }
            }
        }
    }
    found
        .into_iter()
        .map(|(_, members)| Bits::from_indices(n, members))
        .collect()
}

pub fn set_label(set: &Bits, names: &[String]) -> String {
    let inner: Vec<&str> = set.iter().map(|i| names[i].as_str()).collect();
    format!("{{{}}}", inner.join(","))
}
