//! Sparse vectors and an incremental echelon form with optional combination
//! tracking.
//!
//! Pivots are the smallest index of each stored row. Reduction walks a vector
//! in increasing index order through a binary heap, so a row only ever adds
//! entries to the right of the index being eliminated. With tracking enabled,
//! each stored row remembers which inserted vectors it is a combination of and
//! a dependent insertion yields the corresponding kernel relation.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::linalg::field::Field;

/// Sorted `(index, value)` pairs with nonzero values.
pub type SparseVec<E> = Vec<(u32, E)>;

const NONE: u32 = u32::MAX;

pub fn to_sparse<F: Field>(field: &F, v: &[F::Elem]) -> SparseVec<F::Elem> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !field.is_zero(x))
        .map(|(i, x)| (i as u32, x.clone()))
        .collect()
}

pub fn to_dense<F: Field>(field: &F, v: &[(u32, F::Elem)], n: usize) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); n];
    for (i, x) in v {
        out[*i as usize] = x.clone();
    }
    out
}

/// `a + c * b` for sorted sparse vectors.
pub fn axpy<F: Field>(field: &F, a: &[(u32, F::Elem)], c: &F::Elem, b: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = field.mul(c, &b[j].1);
            if !field.is_zero(&v) {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = field.mul_add(&a[i].1, c, &b[j].1);
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Accumulates a sparse sum in arbitrary index order.
pub struct Accumulator<F: Field> {
    field: F,
    vals: Vec<F::Elem>,
    mark: Vec<bool>,
    touched: Vec<u32>,
}

impl<F: Field> Accumulator<F> {
    pub fn new(field: &F, n: usize) -> Self {
        Accumulator {
            field: field.clone(),
            vals: vec![field.zero(); n],
            mark: vec![false; n],
            touched: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.vals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vals.is_empty()
    }

    pub fn grow(&mut self, n: usize) {
        if n > self.vals.len() {
            self.vals.resize(n, self.field.zero());
            self.mark.resize(n, false);
        }
    }

    #[inline]
    pub fn add(&mut self, i: u32, c: &F::Elem) {
        let iu = i as usize;
        if !self.mark[iu] {
            self.mark[iu] = true;
            self.touched.push(i);
            self.vals[iu] = c.clone();
        } else {
            self.vals[iu] = self.field.add(&self.vals[iu], c);
        }
    }

    #[inline]
    pub fn add_mul(&mut self, i: u32, a: &F::Elem, b: &F::Elem) {
        let iu = i as usize;
        if !self.mark[iu] {
            self.mark[iu] = true;
            self.touched.push(i);
            self.vals[iu] = self.field.mul(a, b);
        } else {
            self.vals[iu] = self.field.mul_add(&self.vals[iu], a, b);
        }
    }

    /// Drains into a sorted sparse vector and resets.
    pub fn take(&mut self) -> SparseVec<F::Elem> {
        self.touched.sort_unstable();
        let zero = self.field.zero();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            let iu = i as usize;
            self.mark[iu] = false;
            let v = std::mem::replace(&mut self.vals[iu], zero.clone());
            if !self.field.is_zero(&v) {
                out.push((i, v));
            }
        }
        self.touched.clear();
        out
    }
}

/// Echelon form over sparse rows with smallest-index pivots.
pub struct SparseEchelon<F: Field> {
    field: F,
    ncols: usize,
    pivot_row: Vec<u32>,
    rows: Vec<SparseVec<F::Elem>>,
    tracks: Option<Vec<SparseVec<F::Elem>>>,
    acc: Vec<F::Elem>,
    mark: Vec<bool>,
    heap: BinaryHeap<Reverse<u32>>,
    track_acc: Option<Accumulator<F>>,
}

impl<F: Field> SparseEchelon<F> {
    pub fn new(field: &F, ncols: usize) -> Self {
        SparseEchelon {
            field: field.clone(),
            ncols,
            pivot_row: vec![NONE; ncols],
            rows: Vec::new(),
            tracks: None,
            acc: vec![field.zero(); ncols],
            mark: vec![false; ncols],
            heap: BinaryHeap::new(),
            track_acc: None,
        }
    }

    /// Echelon that records, for each row, its expression in terms of the ids
    /// passed to [`insert_tracked`](Self::insert_tracked) (ids < `nids`).
    pub fn with_tracking(field: &F, ncols: usize, nids: usize) -> Self {
        let mut e = Self::new(field, ncols);
        e.tracks = Some(Vec::new());
        e.track_acc = Some(Accumulator::new(field, nids));
        e
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
    pub fn is_pivot(&self, i: usize) -> bool {
        self.pivot_row[i] != NONE
    }
    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }

    /// Pivot columns in increasing order.
    pub fn pivot_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&i| self.pivot_row[i] != NONE).collect()
    }

    fn load(&mut self, v: &[(u32, F::Elem)]) {
        for (i, x) in v {
            let iu = *i as usize;
            debug_assert!(iu < self.ncols);
            if !self.mark[iu] {
                self.mark[iu] = true;
                self.heap.push(Reverse(*i));
                self.acc[iu] = x.clone();
            } else {
                self.acc[iu] = self.field.add(&self.acc[iu], x);
            }
        }
    }

    /// Pops the next live index with its (nonzero) coefficient.
    fn pop(&mut self) -> Option<(u32, F::Elem)> {
        while let Some(Reverse(i)) = self.heap.pop() {
            let iu = i as usize;
            self.mark[iu] = false;
            let c = std::mem::replace(&mut self.acc[iu], self.field.zero());
            if !self.field.is_zero(&c) {
                return Some((i, c));
            }
        }
        None
    }

    fn eliminate(&mut self, row: u32, c: &F::Elem) {
        let f = &self.field;
        let negc = f.neg(c);
        let r = &self.rows[row as usize];
        for (j, x) in r.iter().skip(1) {
            let ju = *j as usize;
            if !self.mark[ju] {
                self.mark[ju] = true;
                self.heap.push(Reverse(*j));
                self.acc[ju] = f.mul(&negc, x);
            } else {
                self.acc[ju] = f.mul_add(&self.acc[ju], &negc, x);
            }
        }
        if let (Some(tracks), Some(tacc)) = (&self.tracks, &mut self.track_acc) {
            for (j, x) in &tracks[row as usize] {
                tacc.add_mul(*j, &negc, x);
            }
        }
    }

    fn drain_rest(&mut self, first: (u32, F::Elem)) -> SparseVec<F::Elem> {
        let mut out = vec![first];
        while let Some(e) = self.pop() {
            out.push(e);
        }
        out
    }

    /// Fully reduces `v` against the stored rows without inserting it. The
    /// result has no entry at a pivot column.
    pub fn reduce(&mut self, v: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
        self.load(v);
        let mut out = Vec::new();
        while let Some((i, c)) = self.pop() {
            let r = self.pivot_row[i as usize];
            if r != NONE {
                self.eliminate(r, &c);
            } else {
                out.push((i, c));
            }
        }
        if let Some(t) = &mut self.track_acc {
            t.take();
        }
        out
    }

    pub fn contains(&mut self, v: &[(u32, F::Elem)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Reduces until the first non-pivot entry; `None` if `v` reduces to zero.
    fn reduce_lead(&mut self, v: &[(u32, F::Elem)]) -> Option<SparseVec<F::Elem>> {
        self.load(v);
        while let Some((i, c)) = self.pop() {
            let r = self.pivot_row[i as usize];
            if r != NONE {
                self.eliminate(r, &c);
            } else {
                return Some(self.drain_rest((i, c)));
            }
        }
        None
    }

    fn push_row(&mut self, mut residual: SparseVec<F::Elem>, track: Option<SparseVec<F::Elem>>) {
        let f = &self.field;
        let inv = f.inv(&residual[0].1).expect("nonzero lead");
        for (_, x) in residual.iter_mut() {
            *x = f.mul(x, &inv);
        }
        let lead = residual[0].0;
        self.pivot_row[lead as usize] = self.rows.len() as u32;
        self.rows.push(residual);
        if let (Some(tracks), Some(mut t)) = (self.tracks.as_mut(), track) {
            for (_, x) in t.iter_mut() {
                *x = f.mul(x, &inv);
            }
            tracks.push(t);
        }
    }

    /// Inserts `v`; returns whether it was independent of the stored rows.
    pub fn insert(&mut self, v: &[(u32, F::Elem)]) -> bool {
        assert!(self.tracks.is_none(), "use insert_tracked on a tracking echelon");
        match self.reduce_lead(v) {
            Some(res) => {
                self.push_row(res, None);
                true
            }
            None => false,
        }
    }

    /// Inserts `v` as input number `id`. If `v` depends on earlier inputs,
    /// returns the relation `Σ c_j · input_j = 0` (with `c_id = 1`).
    pub fn insert_tracked(&mut self, v: &[(u32, F::Elem)], id: u32) -> Option<SparseVec<F::Elem>> {
        let one = self.field.one();
        self.track_acc
            .as_mut()
            .expect("tracking echelon")
            .add(id, &one);
        let res = self.reduce_lead(v);
        let combo = self.track_acc.as_mut().expect("tracking").take();
        match res {
            Some(r) => {
                self.push_row(r, Some(combo));
                None
            }
            None => Some(combo),
        }
    }
}
