//! Exact dense linear algebra over [`FieldScalar`].
//!
//! Everything here works on tiny matrices (strand dimensions of Cech
//! complexes), so plain Gaussian elimination with first-nonzero pivoting is
//! used throughout; the pivot choice keeps all results deterministic.

use crate::error::{Error, Result};
use crate::scalars::{CharSpec, FieldScalar};

/// Row-major dense matrix. Vectors act on the left: `v -> v * M`, so `rows`
/// is the source dimension and `cols` the target dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    ch: CharSpec,
    data: Vec<FieldScalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize, ch: CharSpec) -> Self {
        Mat {
            rows,
            cols,
            ch,
            data: vec![FieldScalar::zero(ch); rows * cols],
        }
    }

    pub fn identity(dim: usize, ch: CharSpec) -> Self {
        let mut m = Mat::zeros(dim, dim, ch);
        for i in 0..dim {
            m.set(i, i, FieldScalar::one(ch));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldScalar>>, cols: usize, ch: CharSpec) -> Self {
        let mut m = Mat::zeros(rows.len(), cols, ch);
        for (i, r) in rows.into_iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, v) in r.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn char_spec(&self) -> CharSpec {
        self.ch
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldScalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldScalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldScalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[FieldScalar]> {
        (0..self.rows).map(|r| self.row(r))
    }

    /// `v * M` for a row vector `v` of length `rows`.
    pub fn apply_left(&self, v: &[FieldScalar]) -> Vec<FieldScalar> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![FieldScalar::zero(self.ch); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                let m = self.get(i, j);
                if !m.is_zero() {
                    out[j] = &out[j] + &(vi * m);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }
}

/// Basis of `{ v : v * M = 0 }`, echelonized deterministically.
pub fn left_kernel(m: &Mat) -> Vec<Vec<FieldScalar>> {
    let ch = m.ch;
    // Augmented elimination: track which combination of input rows produced
    // each echelon row; rows that eliminate to zero give kernel vectors.
    let mut echelon: Vec<(Vec<FieldScalar>, Vec<FieldScalar>, usize)> = Vec::new();
    let mut kernel = Vec::new();
    for i in 0..m.rows {
        let mut row = m.row(i).to_vec();
        let mut tail = vec![FieldScalar::zero(ch); m.rows];
        tail[i] = FieldScalar::one(ch);
        for (erow, etail, pivot) in &echelon {
            if row[*pivot].is_zero() {
                continue;
            }
            let f = row[*pivot].clone();
            sub_scaled(&mut row, erow, &f);
            sub_scaled(&mut tail, etail, &f);
        }
        match first_nonzero(&row) {
            Some(p) => {
                let inv = row[p].inv().expect("nonzero pivot");
                scale(&mut row, &inv);
                scale(&mut tail, &inv);
                echelon.push((row, tail, p));
            }
            None => kernel.push(tail),
        }
    }
    kernel
}

pub fn rank(m: &Mat) -> usize {
    m.rows - left_kernel(m).len()
}

fn first_nonzero(v: &[FieldScalar]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

fn sub_scaled(target: &mut [FieldScalar], source: &[FieldScalar], factor: &FieldScalar) {
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            *t = &*t - &(s * factor);
        }
    }
}

fn scale(v: &mut [FieldScalar], factor: &FieldScalar) {
    for t in v.iter_mut() {
        if !t.is_zero() {
            *t = &*t * factor;
        }
    }
}

/// Incremental span with representative tracking.
///
/// Rows inserted with [`SpanReducer::insert_span`] only enlarge the span;
/// rows inserted with [`SpanReducer::insert_tracked`] additionally get a
/// coordinate, and [`SpanReducer::express`] writes any vector of the joint
/// span as a combination of the tracked rows modulo the untracked ones.
#[derive(Clone, Debug)]
pub struct SpanReducer {
    ch: CharSpec,
    dim: usize,
    tracked: usize,
    rows: Vec<(Vec<FieldScalar>, Vec<FieldScalar>, usize)>,
}

impl SpanReducer {
    pub fn new(dim: usize, ch: CharSpec) -> Self {
        SpanReducer {
            ch,
            dim,
            tracked: 0,
            rows: Vec::new(),
        }
    }

    pub fn tracked_count(&self) -> usize {
        self.tracked
    }

    fn reduce(&self, mut v: Vec<FieldScalar>) -> (Vec<FieldScalar>, Vec<FieldScalar>) {
        let mut tail = vec![FieldScalar::zero(self.ch); self.tracked];
        for (row, rtail, pivot) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let f = v[*pivot].clone();
            sub_scaled(&mut v, row, &f);
            for (t, s) in tail.iter_mut().zip(rtail) {
                if !s.is_zero() {
                    *t = &*t - &(s * &f);
                }
            }
        }
        (v, tail)
    }

    fn insert(&mut self, v: Vec<FieldScalar>, tail: Vec<FieldScalar>) -> bool {
        assert_eq!(v.len(), self.dim);
        let (mut v, mut acc) = self.reduce(v);
        for (t, s) in acc.iter_mut().zip(&tail) {
            *t = &*t + s;
        }
        match first_nonzero(&v) {
            Some(p) => {
                let inv = v[p].inv().expect("nonzero pivot");
                scale(&mut v, &inv);
                scale(&mut acc, &inv);
                self.rows.push((v, acc, p));
                true
            }
            None => false,
        }
    }

    /// Adds a row without a coordinate. Returns whether the span grew.
    pub fn insert_span(&mut self, v: Vec<FieldScalar>) -> bool {
        let tail = vec![FieldScalar::zero(self.ch); self.tracked];
        self.insert(v, tail)
    }

    /// Adds a row with a fresh coordinate if it enlarges the span.
    /// Returns whether it did (i.e. whether the row got a coordinate).
    pub fn insert_tracked(&mut self, v: Vec<FieldScalar>) -> bool {
        // Tentatively extend every stored tail with a zero entry, then insert
        // with the new unit coordinate.
        for (_, tail, _) in &mut self.rows {
            tail.push(FieldScalar::zero(self.ch));
        }
        let mut tail = vec![FieldScalar::zero(self.ch); self.tracked + 1];
        tail[self.tracked] = FieldScalar::one(self.ch);
        self.tracked += 1;
        if self.insert(v, tail) {
            true
        } else {
            // dependent: roll the coordinate back
            self.tracked -= 1;
            for (_, tail, _) in &mut self.rows {
                tail.pop();
            }
            false
        }
    }

    /// Coefficients of `v` over the tracked rows, modulo the untracked span.
    /// Errors if `v` is not in the joint span.
    pub fn express(&self, v: &[FieldScalar]) -> Result<Vec<FieldScalar>> {
        let (rem, tail) = self.reduce(v.to_vec());
        if first_nonzero(&rem).is_some() {
            return Err(Error::input("vector not in span"));
        }
        Ok(tail.iter().map(|t| -t).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> FieldScalar {
        FieldScalar::from_i64(v, CharSpec::Zero)
    }

    #[test]
    fn kernel_of_rectangular() {
        // rows (1,1), (2,2), (0,1): kernel spanned by (2,-1,0)
        let m = Mat::from_rows(
            vec![vec![s(1), s(1)], vec![s(2), s(2)], vec![s(0), s(1)]],
            2,
            CharSpec::Zero,
        );
        let k = left_kernel(&m);
        assert_eq!(k.len(), 1);
        assert!(m.apply_left(&k[0]).iter().all(|x| x.is_zero()));
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn kernel_empty_shapes() {
        let m = Mat::zeros(0, 3, CharSpec::Zero);
        assert!(left_kernel(&m).is_empty());
        let m = Mat::zeros(2, 0, CharSpec::Zero);
        assert_eq!(left_kernel(&m).len(), 2);
    }

    #[test]
    fn reducer_express() {
        let ch = CharSpec::Zero;
        let mut red = SpanReducer::new(3, ch);
        // untracked span: (1, 1, 0)
        assert!(red.insert_span(vec![s(1), s(1), s(0)]));
        // tracked: (0, 0, 1)
        assert!(red.insert_tracked(vec![s(0), s(0), s(1)]));
        // dependent tracked vector gets no coordinate
        assert!(!red.insert_tracked(vec![s(1), s(1), s(1)]));
        assert_eq!(red.tracked_count(), 1);
        // (2, 2, 3) = 2 * span + 3 * t0
        let c = red.express(&[s(2), s(2), s(3)]).unwrap();
        assert_eq!(c, vec![s(3)]);
        // (5, 5, 0) is pure untracked span
        let c = red.express(&[s(5), s(5), s(0)]).unwrap();
        assert_eq!(c, vec![s(0)]);
        // outside the span
        assert!(red.express(&[s(1), s(0), s(0)]).is_err());
    }

    #[test]
    fn reducer_mod_p() {
        let ch = CharSpec::prime(3).unwrap();
        let t = |v: i64| FieldScalar::from_i64(v, ch);
        let mut red = SpanReducer::new(2, ch);
        assert!(red.insert_tracked(vec![t(2), t(1)]));
        let c = red.express(&[t(1), t(2)]).unwrap();
        // (1,2) = 2*(2,1) mod 3
        assert_eq!(c, vec![t(2)]);
    }
}
