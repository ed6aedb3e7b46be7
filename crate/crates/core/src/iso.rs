//! Backtracking isomorphism search for small relational structures.
//!
//! Candidates are pruned by a one-round colour refinement of the
//! row/column cardinalities; no canonical forms are computed. The first
//! witness in index order is returned, so results are deterministic.

use crate::relation::Relation;

type Colour = (
    usize,
    usize,
    bool,
    Vec<(usize, usize, bool)>,
    Vec<(usize, usize, bool)>,
);

fn digraph_colours(r: &Relation) -> Vec<Colour> {
    let n = r.n_left();
    let base: Vec<(usize, usize, bool)> = (0..n)
        .map(|v| (r.row(v).count(), r.col(v).count(), r.contains(v, v)))
        .collect();
    (0..n)
        .map(|v| {
            let mut outs: Vec<_> = r.row(v).iter().map(|u| base[u]).collect();
            let mut ins: Vec<_> = r.col(v).iter().map(|u| base[u]).collect();
            outs.sort_unstable();
            ins.sort_unstable();
            (base[v].0, base[v].1, base[v].2, outs, ins)
        })
        .collect()
}

fn multiset_eq<T: Ord + Clone>(a: &[T], b: &[T]) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort();
    b.sort();
    a == b
}

/// Finds a bijection `m` with `a(x,y) ⇔ b(m(x),m(y))` for square relations.
pub fn digraph_iso(a: &Relation, b: &Relation) -> Option<Vec<usize>> {
    let n = a.n_left();
    if a.n_right() != n || b.n_left() != n || b.n_right() != n || a.len() != b.len() {
        return None;
    }
    let ca = digraph_colours(a);
    let cb = digraph_colours(b);
    if !multiset_eq(&ca, &cb) {
        return None;
    }
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|v| (0..n).filter(|&w| ca[v] == cb[w]).collect())
        .collect();
    // Most constrained first.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (candidates[v].len(), v));

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if search_digraph(a, b, &order, 0, &candidates, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn search_digraph(
    a: &Relation,
    b: &Relation,
    order: &[usize],
    depth: usize,
    candidates: &[Vec<usize>],
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for &w in &candidates[v] {
        if used[w] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| {
            let mu = map[u];
            a.contains(v, u) == b.contains(w, mu) && a.contains(u, v) == b.contains(mu, w)
        });
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if search_digraph(a, b, order, depth + 1, candidates, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

type Colours = Vec<(usize, Vec<usize>)>;

fn bipartite_colours(r: &Relation) -> (Colours, Colours) {
    let left = (0..r.n_left())
        .map(|x| {
            let mut nb: Vec<usize> = r.row(x).iter().map(|y| r.col(y).count()).collect();
            nb.sort_unstable();
            (r.row(x).count(), nb)
        })
        .collect();
    let right = (0..r.n_right())
        .map(|y| {
            let mut nb: Vec<usize> = r.col(y).iter().map(|x| r.row(x).count()).collect();
            nb.sort_unstable();
            (r.col(y).count(), nb)
        })
        .collect();
    (left, right)
}

#[derive(Clone, Copy)]
enum Side {
    Left(usize),
    Right(usize),
}

/// Finds a pair of bijections `(m1, m2)` with `a(x,y) ⇔ b(m1(x),m2(y))`.
pub fn bipartite_iso(a: &Relation, b: &Relation) -> Option<(Vec<usize>, Vec<usize>)> {
    let (n1, n2) = (a.n_left(), a.n_right());
    if b.n_left() != n1 || b.n_right() != n2 || a.len() != b.len() {
        return None;
    }
    let (la, ra) = bipartite_colours(a);
    let (lb, rb) = bipartite_colours(b);
    if !multiset_eq(&la, &lb) || !multiset_eq(&ra, &rb) {
        return None;
    }
    let cand1: Vec<Vec<usize>> = (0..n1)
        .map(|x| (0..n1).filter(|&w| la[x] == lb[w]).collect())
        .collect();
    let cand2: Vec<Vec<usize>> = (0..n2)
        .map(|y| (0..n2).filter(|&z| ra[y] == rb[z]).collect())
        .collect();

    // Interleave the two sorts so constraints bite early.
    let mut order = Vec::with_capacity(n1 + n2);
    let (mut i, mut j) = (0, 0);
    while i < n1 || j < n2 {
        if i < n1 {
            order.push(Side::Left(i));
            i += 1;
        }
        if j < n2 {
            order.push(Side::Right(j));
            j += 1;
        }
    }

    let mut st = BipState {
        a,
        b,
        cand1,
        cand2,
        m1: vec![usize::MAX; n1],
        m2: vec![usize::MAX; n2],
        used1: vec![false; n1],
        used2: vec![false; n2],
    };
    if st.search(&order, 0) {
        Some((st.m1, st.m2))
    } else {
        None
    }
}

struct BipState<'a> {
    a: &'a Relation,
    b: &'a Relation,
    cand1: Vec<Vec<usize>>,
    cand2: Vec<Vec<usize>>,
    m1: Vec<usize>,
    m2: Vec<usize>,
    used1: Vec<bool>,
    used2: Vec<bool>,
}

impl BipState<'_> {
    fn search(&mut self, order: &[Side], depth: usize) -> bool {
        let Some(&side) = order.get(depth) else {
            return true;
        };
        match side {
            Side::Left(x) => {
                for k in 0..self.cand1[x].len() {
                    let w = self.cand1[x][k];
                    if self.used1[w] {
                        continue;
                    }
                    let ok = (0..self.m2.len())
                        .filter(|&y| self.m2[y] != usize::MAX)
                        .all(|y| self.a.contains(x, y) == self.b.contains(w, self.m2[y]));
                    if !ok {
                        continue;
                    }
                    self.m1[x] = w;
                    self.used1[w] = true;
                    if self.search(order, depth + 1) {
                        return true;
                    }
                    self.used1[w] = false;
                    self.m1[x] = usize::MAX;
                }
                false
            }
            Side::Right(y) => {
                for k in 0..self.cand2[y].len() {
                    let z = self.cand2[y][k];
                    if self.used2[z] {
                        continue;
                    }
                    let ok = (0..self.m1.len())
                        .filter(|&x| self.m1[x] != usize::MAX)
                        .all(|x| self.a.contains(x, y) == self.b.contains(self.m1[x], z));
                    if !ok {
                        continue;
                    }
                    self.m2[y] = z;
                    self.used2[z] = true;
                    if self.search(order, depth + 1) {
                        return true;
                    }
                    self.used2[z] = false;
                    self.m2[y] = usize::MAX;
                }
                false
            }
        }
    }
}

/// Whether `m` is a bijection with `a(x,y) ⇔ b(m(x),m(y))`.
pub fn is_digraph_iso(a: &Relation, b: &Relation, m: &[usize]) -> bool {
    let n = a.n_left();
    if m.len() != n || b.n_left() != n || !is_bijection(m, n) {
        return false;
    }
    (0..n).all(|x| (0..n).all(|y| a.contains(x, y) == b.contains(m[x], m[y])))
}

/// Whether `(m1, m2)` are bijections with `a(x,y) ⇔ b(m1(x),m2(y))`.
pub fn is_bipartite_iso(a: &Relation, b: &Relation, m1: &[usize], m2: &[usize]) -> bool {
    let (n1, n2) = (a.n_left(), a.n_right());
    if b.n_left() != n1 || b.n_right() != n2 || !is_bijection(m1, n1) || !is_bijection(m2, n2) {
        return false;
    }
    (0..n1).all(|x| (0..n2).all(|y| a.contains(x, y) == b.contains(m1[x], m2[y])))
}

pub fn is_bijection(m: &[usize], n: usize) -> bool {
    if m.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in m {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}
