//! Word-packed bitsets and binary relations with cached rows and columns.
//!
//! Every structure in the crate (lattice orders, graph edge sets, frame
//! polarities) is a [`Relation`] between two index ranges. Rows and columns
//! are both materialized so that `xR`, `Ry`, `xE` and `Ex` are available as
//! bitsets and the inclusion tests used by the condition checkers run a
//! machine word at a time.

use std::fmt;

const WORD: usize = 64;

/// A fixed-capacity set of indices `0..len`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits {
    len: usize,
    words: Vec<u64>,
}

impl Bits {
    pub fn new(len: usize) -> Self {
        Bits {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut b = Bits::new(len);
        for w in b.words.iter_mut() {
            *w = !0;
        }
        b.trim();
        b
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, it: I) -> Self {
        let mut b = Bits::new(len);
        for i in it {
            b.insert(i);
        }
        b
    }

    /// Builds a set from the low `len` bits of `mask`.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= WORD);
        let mut b = Bits::new(len);
        if len > 0 {
            b.words[0] = mask;
            b.trim();
        }
        b
    }

    fn trim(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Capacity of the universe, not the number of members.
    pub fn universe(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / WORD] &= !(1 << (i % WORD));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_strict_subset(&self, other: &Bits) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn intersects(&self, other: &Bits) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn intersection(&self, other: &Bits) -> Bits {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn union(&self, other: &Bits) -> Bits {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersect_with(&mut self, other: &Bits) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &Bits) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn complement(&self) -> Bits {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.trim();
        out
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> BitsIter<'_> {
        BitsIter {
            bits: self,
            word: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    /// The low 64 bits, for small universes used as hash keys.
    pub fn low_word(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct BitsIter<'a> {
    bits: &'a Bits,
    word: usize,
    cur: u64,
}

impl Iterator for BitsIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let tz = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.word * WORD + tz);
            }
            self.word += 1;
            if self.word >= self.bits.words.len() {
                return None;
            }
            self.cur = self.bits.words[self.word];
        }
    }
}

/// A relation `R ⊆ 0..n_left × 0..n_right`, stored both row-wise and
/// column-wise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    rows: Vec<Bits>,
    cols: Vec<Bits>,
}

impl Relation {
    pub fn empty(n_left: usize, n_right: usize) -> Self {
        Relation {
            rows: vec![Bits::new(n_right); n_left],
            cols: vec![Bits::new(n_left); n_right],
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(
        n_left: usize,
        n_right: usize,
        pairs: I,
    ) -> Self {
        let mut r = Relation::empty(n_left, n_right);
        for (a, b) in pairs {
            r.insert(a, b);
        }
        r
    }

    pub fn from_fn(n_left: usize, n_right: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut r = Relation::empty(n_left, n_right);
        for a in 0..n_left {
            for b in 0..n_right {
                if f(a, b) {
                    r.insert(a, b);
                }
            }
        }
        r
    }

    pub fn identity(n: usize) -> Self {
        Relation::from_pairs(n, n, (0..n).map(|i| (i, i)))
    }

    /// Rebuilds a relation from its rows, recomputing the column cache.
    pub fn from_rows(n_right: usize, rows: Vec<Bits>) -> Self {
        let n_left = rows.len();
        let mut cols = vec![Bits::new(n_left); n_right];
        for (a, row) in rows.iter().enumerate() {
            assert_eq!(row.universe(), n_right);
            for b in row.iter() {
                cols[b].insert(a);
            }
        }
        Relation { rows, cols }
    }

    pub fn n_left(&self) -> usize {
        self.rows.len()
    }

    pub fn n_right(&self) -> usize {
        self.cols.len()
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.rows[a].insert(b);
        self.cols[b].insert(a);
    }

    pub fn remove(&mut self, a: usize, b: usize) {
        self.rows[a].remove(b);
        self.cols[b].remove(a);
    }

    /// `aR = { b : a R b }`.
    #[inline]
    pub fn row(&self, a: usize) -> &Bits {
        &self.rows[a]
    }

    /// `Rb = { a : a R b }`.
    #[inline]
    pub fn col(&self, b: usize) -> &Bits {
        &self.cols[b]
    }

    pub fn rows(&self) -> &[Bits] {
        &self.rows
    }

    pub fn cols(&self) -> &[Bits] {
        &self.cols
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(Bits::count).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(Bits::is_empty)
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.iter().map(move |b| (a, b)))
    }

    pub fn converse(&self) -> Relation {
        Relation {
            rows: self.cols.clone(),
            cols: self.rows.clone(),
        }
    }

    pub fn complement(&self) -> Relation {
        Relation {
            rows: self.rows.iter().map(Bits::complement).collect(),
            cols: self.cols.iter().map(Bits::complement).collect(),
        }
    }

    /// Reflexive-transitive closure of a square relation (Warshall, row-parallel).
    pub fn reflexive_transitive_closure(&self) -> Relation {
        assert_eq!(self.n_left(), self.n_right());
        let n = self.n_left();
        let mut rows = self.rows.clone();
        for (i, row) in rows.iter_mut().enumerate() {
            row.insert(i);
        }
        for k in 0..n {
            let via = rows[k].clone();
            for row in rows.iter_mut() {
                if row.contains(k) {
                    row.union_with(&via);
                }
            }
        }
        Relation::from_rows(n, rows)
    }

    /// Checks that the row and column caches describe the same pairs.
    pub fn caches_agree(&self) -> bool {
        self.rows.iter().enumerate().all(|(a, row)| {
            (0..self.n_right()).all(|b| row.contains(b) == self.cols[b].contains(a))
        })
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}
