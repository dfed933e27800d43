use std::fmt;

use rand::Rng;
use serde::Serialize;

use super::{GFq, GfError};

/// Dense row-major matrix of field element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GFMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u8>,
}

impl GFMatrix {
    pub fn new(field: &GFq, rows: usize, cols: usize, entries: Vec<u8>) -> Result<Self, GfError> {
        if entries.len() != rows * cols {
            return Err(GfError::Shape(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        if let Some(&bad) = entries.iter().find(|&&e| e as u32 >= field.order()) {
            return Err(GfError::Shape(format!("entry {bad} is not an element of GF({})", field.order())));
        }
        Ok(GFMatrix { rows, cols, entries })
    }

    pub fn from_rows(field: &GFq, rows: &[&[u8]]) -> Result<Self, GfError> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(GfError::Shape("ragged rows".into()));
        }
        Self::new(field, rows.len(), cols, rows.concat())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        GFMatrix { rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Matrix whose entries are the base-`q` digits of `index`, most
    /// significant digit first in row-major order.
    pub fn from_index(field: &GFq, rows: usize, cols: usize, mut index: u64) -> Self {
        let q = field.order() as u64;
        let mut entries = vec![0u8; rows * cols];
        for e in entries.iter_mut().rev() {
            *e = (index % q) as u8;
            index /= q;
        }
        GFMatrix { rows, cols, entries }
    }

    pub fn random(field: &GFq, rows: usize, cols: usize, rng: &mut impl Rng) -> Self {
        let q = field.order() as u8;
        GFMatrix { rows, cols, entries: (0..rows * cols).map(|_| rng.gen_range(0..q)).collect() }
    }

    pub fn random_invertible(field: &GFq, n: usize, rng: &mut impl Rng) -> Self {
        loop {
            let m = Self::random(field, n, n, rng);
            if m.rank(field) == n {
                return m;
            }
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn rank(&self, field: &GFq) -> usize {
        let mut m = self.clone();
        m.row_echelon(field, &mut None)
    }

    pub fn trace(&self, field: &GFq) -> Result<u8, GfError> {
        if !self.is_square() {
            return Err(GfError::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok((0..self.rows).fold(0, |acc, i| field.add(acc, self.get(i, i))))
    }

    pub fn mul(&self, field: &GFq, rhs: &GFMatrix) -> Result<GFMatrix, GfError> {
        if self.cols != rhs.rows {
            return Err(GfError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = GFMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = field.add(out.get(i, j), field.mul(a, rhs.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn inverse(&self, field: &GFq) -> Option<GFMatrix> {
        if !self.is_square() {
            return None;
        }
        let mut m = self.clone();
        let mut track = Some(GFMatrix::identity(self.rows));
        let r = m.reduced_row_echelon(field, &mut track);
        (r == self.rows).then(|| track.unwrap())
    }

    pub fn transpose(&self) -> GFMatrix {
        let mut t = GFMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> GFMatrix {
        let mut s = GFMatrix::zeros(rows.len(), cols.len());
        for (i, r) in rows.enumerate() {
            for (j, c) in cols.clone().enumerate() {
                s.set(i, j, self.get(r, c));
            }
        }
        s
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &GFMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j));
            }
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.entries.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn scale_row(&mut self, field: &GFq, r: usize, s: u8) {
        for c in 0..self.cols {
            let v = field.mul(s, self.get(r, c));
            self.set(r, c, v);
        }
    }

    /// `row[dst] += s * row[src]`
    pub fn add_row_multiple(&mut self, field: &GFq, dst: usize, src: usize, s: u8) {
        if s == 0 {
            return;
        }
        for c in 0..self.cols {
            let v = field.add(self.get(dst, c), field.mul(s, self.get(src, c)));
            self.set(dst, c, v);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.entries.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// `col[dst] += s * col[src]`
    pub fn add_col_multiple(&mut self, field: &GFq, dst: usize, src: usize, s: u8) {
        if s == 0 {
            return;
        }
        for r in 0..self.rows {
            let v = field.add(self.get(r, dst), field.mul(s, self.get(r, src)));
            self.set(r, dst, v);
        }
    }

    /// Forward elimination in place; returns the rank. Row operations are
    /// mirrored onto `track` when present.
    fn row_echelon(&mut self, field: &GFq, track: &mut Option<GFMatrix>) -> usize {
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| self.get(r, c) != 0) else {
                continue;
            };
            self.swap_rows(rank, p);
            if let Some(t) = track {
                t.swap_rows(rank, p);
            }
            let inv = field.inv(self.get(rank, c)).unwrap();
            self.scale_row(field, rank, inv);
            if let Some(t) = track {
                t.scale_row(field, rank, inv);
            }
            for r in rank + 1..self.rows {
                let f = field.neg(self.get(r, c));
                self.add_row_multiple(field, r, rank, f);
                if let Some(t) = track {
                    t.add_row_multiple(field, r, rank, f);
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// Gauss-Jordan elimination to reduced row-echelon form; returns the rank.
    pub(crate) fn reduced_row_echelon(&mut self, field: &GFq, track: &mut Option<GFMatrix>) -> usize {
        let rank = self.row_echelon(field, track);
        for r in (0..rank).rev() {
            let c = (0..self.cols).find(|&c| self.get(r, c) != 0).unwrap();
            for above in 0..r {
                let f = field.neg(self.get(above, c));
                self.add_row_multiple(field, above, r, f);
                if let Some(t) = track {
                    t.add_row_multiple(field, above, r, f);
                }
            }
        }
        rank
    }

    /// Canonical reduced row-echelon form.
    pub fn rref(&self, field: &GFq) -> GFMatrix {
        let mut m = self.clone();
        m.reduced_row_echelon(field, &mut None);
        m
    }
}

impl fmt::Display for GFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Rank over GF(2) of at most 64 rows given as bit masks.
pub(crate) fn rank_gf2(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let pivot = rows[i];
        if pivot == 0 {
            continue;
        }
        rank += 1;
        let low = pivot & pivot.wrapping_neg();
        for r in &mut rows[i + 1..] {
            if *r & low != 0 {
                *r ^= pivot;
            }
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn documented_ranks_and_traces() {
        let f2 = GFq::new(2).unwrap();
        let zero = GFMatrix::zeros(2, 2);
        assert_eq!((zero.rank(&f2), zero.trace(&f2).unwrap()), (0, 0));
        let f3 = GFq::new(3).unwrap();
        let id = GFMatrix::identity(3);
        assert_eq!((id.rank(&f3), id.trace(&f3).unwrap()), (3, 0));
        let ones = GFMatrix::from_rows(&f2, &[&[1, 1], &[1, 1]]).unwrap();
        assert_eq!((ones.rank(&f2), ones.trace(&f2).unwrap()), (1, 0));
        assert!(GFMatrix::zeros(2, 3).trace(&f2).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in [2, 3, 4, 9] {
            let f = GFq::new(q).unwrap();
            for _ in 0..20 {
                let e = GFMatrix::random_invertible(&f, 3, &mut rng);
                let inv = e.inverse(&f).unwrap();
                assert_eq!(e.mul(&f, &inv).unwrap(), GFMatrix::identity(3));
                assert_eq!(inv.mul(&f, &e).unwrap(), GFMatrix::identity(3));
            }
        }
        let f2 = GFq::new(2).unwrap();
        assert!(GFMatrix::from_rows(&f2, &[&[1, 1], &[1, 1]]).unwrap().inverse(&f2).is_none());
    }

    #[test]
    fn bitmask_rank_matches_tables() {
        let f2 = GFq::new(2).unwrap();
        for idx in 0..(1u64 << 9) {
            let m = GFMatrix::from_index(&f2, 3, 3, idx);
            let mut rows: Vec<u64> =
                (0..3).map(|r| (0..3).fold(0u64, |acc, c| acc | ((m.get(r, c) as u64) << c))).collect();
            assert_eq!(rank_gf2(&mut rows), m.rank(&f2));
        }
    }

    #[test]
    fn index_decoding_is_row_major_big_endian() {
        let f3 = GFq::new(3).unwrap();
        let m = GFMatrix::from_index(&f3, 2, 2, 5);
        assert_eq!(m.entries(), &[0, 0, 1, 2]);
    }

    #[test]
    fn rejects_bad_entries() {
        let f2 = GFq::new(2).unwrap();
        assert!(GFMatrix::new(&f2, 1, 2, vec![0, 2]).is_err());
        assert!(GFMatrix::new(&f2, 2, 2, vec![0, 1]).is_err());
    }
}
