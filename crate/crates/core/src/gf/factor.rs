use super::{GFMatrix, GFq, GfError};

/// The block constants used to normalize `u - I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    /// `I_k` in the top-left corner of an `n x n` zero matrix.
    Ikn { k: usize, n: usize },
    /// `I_m` in the bottom-right corner of an `n x n` zero matrix.
    Inm { n: usize, m: usize },
    /// `I_l` occupying rows `k..k+l` and columns `0..l` of an `n x n` zero
    /// matrix: the rank-`l` corner left after clearing `k` rows and `m` columns.
    Iklm { n: usize, k: usize, l: usize, m: usize },
}

pub fn block_constant(kind: BlockKind) -> Result<GFMatrix, GfError> {
    let place = |n: usize, r0: usize, c0: usize, len: usize| {
        let mut b = GFMatrix::zeros(n, n);
        for i in 0..len {
            b.set(r0 + i, c0 + i, 1);
        }
        b
    };
    match kind {
        BlockKind::Ikn { k, n } if k <= n => Ok(place(n, 0, 0, k)),
        BlockKind::Inm { n, m } if m <= n => Ok(place(n, n - m, n - m, m)),
        // The corner must fit below the k cleared rows and left of the m cleared columns.
        BlockKind::Iklm { n, k, l, m } if k + l <= n && l + m <= n => Ok(place(n, k, 0, l)),
        other => Err(GfError::Bounds(format!("{other:?}"))),
    }
}

/// Invertible `P`, `Q` and the rank `r` with `P * c * Q = [[I_r, 0], [0, 0]]`.
///
/// `P` is the transcript of Gauss-Jordan row elimination; `Q` moves the pivot
/// columns to the front and clears the remaining entries of each pivot row.
pub fn reduce_to_canonical(field: &GFq, c: &GFMatrix) -> (GFMatrix, GFMatrix, usize) {
    let mut r = c.clone();
    let mut p = Some(GFMatrix::identity(c.rows()));
    let rank = r.reduced_row_echelon(field, &mut p);
    let mut q = GFMatrix::identity(c.cols());
    for row in 0..rank {
        let pivot = (0..r.cols()).find(|&j| r.get(row, j) != 0).unwrap();
        r.swap_cols(row, pivot);
        q.swap_cols(row, pivot);
    }
    for row in 0..rank {
        for j in rank..r.cols() {
            let s = field.neg(r.get(row, j));
            r.add_col_multiple(field, j, row, s);
            q.add_col_multiple(field, j, row, s);
        }
    }
    (p.unwrap(), q, rank)
}

/// Invertible `(E1, E3)` with `x = E1 * I_{k,n} * E3`, `k = rank(x)`.
pub fn rank_factorize(field: &GFq, x: &GFMatrix) -> Result<(GFMatrix, GFMatrix), GfError> {
    if !x.is_square() {
        return Err(GfError::NotSquare { rows: x.rows(), cols: x.cols() });
    }
    let (p, q, _) = reduce_to_canonical(field, x);
    let e1 = p.inverse(field).expect("elimination transcript is invertible");
    let e3 = q.inverse(field).expect("column transcript is invertible");
    Ok((e1, e3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn block_layouts() {
        let f2 = GFq::new(2).unwrap();
        let m = |rows: &[&[u8]]| GFMatrix::from_rows(&f2, rows).unwrap();
        assert_eq!(block_constant(BlockKind::Ikn { k: 1, n: 2 }).unwrap(), m(&[&[1, 0], &[0, 0]]));
        assert_eq!(block_constant(BlockKind::Inm { n: 2, m: 1 }).unwrap(), m(&[&[0, 0], &[0, 1]]));
        assert_eq!(block_constant(BlockKind::Iklm { n: 2, k: 0, l: 1, m: 1 }).unwrap(), m(&[&[1, 0], &[0, 0]]));
        assert_eq!(block_constant(BlockKind::Iklm { n: 2, k: 1, l: 1, m: 0 }).unwrap(), m(&[&[0, 0], &[1, 0]]));
        assert_eq!(block_constant(BlockKind::Iklm { n: 2, k: 1, l: 1, m: 1 }).unwrap(), m(&[&[0, 0], &[1, 0]]));
        assert!(block_constant(BlockKind::Ikn { k: 3, n: 2 }).is_err());
        assert!(block_constant(BlockKind::Iklm { n: 2, k: 2, l: 1, m: 0 }).is_err());
    }

    fn check_factorization(field: &GFq, x: &GFMatrix) {
        let (e1, e3) = rank_factorize(field, x).unwrap();
        let n = x.rows();
        let k = x.rank(field);
        assert_eq!(e1.rank(field), n);
        assert_eq!(e3.rank(field), n);
        let ikn = block_constant(BlockKind::Ikn { k, n }).unwrap();
        assert_eq!(e1.mul(field, &ikn).unwrap().mul(field, &e3).unwrap(), *x);
    }

    #[test]
    fn documented_factorizations() {
        let f2 = GFq::new(2).unwrap();
        let ikn = block_constant(BlockKind::Ikn { k: 1, n: 3 }).unwrap();
        assert_eq!(rank_factorize(&f2, &ikn).unwrap(), (GFMatrix::identity(3), GFMatrix::identity(3)));
        let zero = GFMatrix::zeros(2, 2);
        assert_eq!(rank_factorize(&f2, &zero).unwrap(), (GFMatrix::identity(2), GFMatrix::identity(2)));
        check_factorization(&f2, &GFMatrix::from_rows(&f2, &[&[1, 1], &[1, 1]]).unwrap());
    }

    #[test]
    fn exhaustive_small_and_random_factorizations() {
        let f3 = GFq::new(3).unwrap();
        for idx in 0..3u64.pow(4) {
            check_factorization(&f3, &GFMatrix::from_index(&f3, 2, 2, idx));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for q in [4, 5, 8, 9] {
            let f = GFq::new(q).unwrap();
            for _ in 0..30 {
                check_factorization(&f, &GFMatrix::random(&f, 4, 4, &mut rng));
            }
        }
    }

    #[test]
    fn rectangular_canonical_form() {
        let f2 = GFq::new(2).unwrap();
        for idx in 0..(1u64 << 6) {
            let c = GFMatrix::from_index(&f2, 2, 3, idx);
            let (p, q, r) = reduce_to_canonical(&f2, &c);
            let got = p.mul(&f2, &c).unwrap().mul(&f2, &q).unwrap();
            let mut want = GFMatrix::zeros(2, 3);
            for i in 0..r {
                want.set(i, i, 1);
            }
            assert_eq!(got, want);
            assert_eq!(r, c.rank(&f2));
        }
    }
}
