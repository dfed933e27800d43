use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;

use super::{exact_div, theta_unipotent, JacquetError};
use crate::exec::Exec;
use crate::gf::{feasible, rank_gf2, GFMatrix, GFq};

const CHUNKS: u64 = 1024;

/// Character sums grouped by the trace value `tr X + tr Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceBucketSums {
    pub n: usize,
    pub q: u32,
    /// `S_gamma`, keyed by field element index.
    pub sums: BTreeMap<u8, BigInt>,
    /// Number of triples per trace value.
    pub counts: BTreeMap<u8, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteDim {
    pub dim: BigInt,
    pub buckets: TraceBucketSums,
}

/// `rank [[X, Y], [0, Z]]`, which is `rank(u - I)` for the unipotent element
/// with blocks `X`, `Y`, `Z`.
pub fn block_rank(field: &GFq, x: &GFMatrix, y: &GFMatrix, z: &GFMatrix) -> usize {
    let n = x.rows();
    let mut m = GFMatrix::zeros(2 * n, 2 * n);
    m.paste(0, 0, x);
    m.paste(0, n, y);
    m.paste(n, n, z);
    m.rank(field)
}

/// Rank of a small row-major matrix over table arithmetic, in place.
fn rank_in_place(field: &GFq, a: &mut [u8], rows: usize, cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                a.swap(rank * cols + j, p * cols + j);
            }
        }
        let inv = field.inv(a[rank * cols + c]).unwrap();
        for r in rank + 1..rows {
            let e = a[r * cols + c];
            if e == 0 {
                continue;
            }
            let f = field.neg(field.mul(e, inv));
            for j in c..cols {
                a[r * cols + j] = field.add(a[r * cols + j], field.mul(f, a[rank * cols + j]));
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Histogram `[trace][rank]` over all triples, `Z` most significant, then
/// `X`, then `Y`, each matrix row-major.
fn histogram(field: &GFq, n: usize, total: u64, exec: Exec) -> Vec<Vec<u64>> {
    let q = field.order() as usize;
    let nn = n * n;
    let identity = || vec![vec![0u64; 2 * n + 1]; q];
    let merge = |a: Vec<Vec<u64>>, b: Vec<Vec<u64>>| -> Vec<Vec<u64>> {
        a.iter().zip(&b).map(|(x, y)| x.iter().zip(y).map(|(u, v)| u + v).collect()).collect()
    };

    if q == 2 {
        // Bit-packed rows; entry (i, j) of a block sits at bit n-1-j of row i.
        let row_mask = (1u64 << n) - 1;
        let block_mask = (1u64 << nn) - 1;
        return exec.fold_chunks(
            0..total,
            CHUNKS,
            identity,
            |mut acc, range| {
                let mut rows = [0u64; 8];
                for idx in range {
                    let y = idx & block_mask;
                    let x = (idx >> nn) & block_mask;
                    let z = idx >> (2 * nn);
                    let mut trace = 0u64;
                    for i in 0..n {
                        let shift = n * (n - 1 - i);
                        let (xr, yr, zr) = ((x >> shift) & row_mask, (y >> shift) & row_mask, (z >> shift) & row_mask);
                        rows[i] = xr | (yr << n);
                        rows[n + i] = zr << n;
                        trace ^= ((xr ^ zr) >> (n - 1 - i)) & 1;
                    }
                    acc[trace as usize][rank_gf2(&mut rows[..2 * n])] += 1;
                }
                acc
            },
            merge,
        );
    }

    exec.fold_chunks(
        0..total,
        CHUNKS,
        identity,
        |mut acc, range| {
            let len = 3 * nn;
            let mut digits = vec![0u8; len];
            let mut rest = range.start;
            for d in digits.iter_mut().rev() {
                *d = (rest % q as u64) as u8;
                rest /= q as u64;
            }
            let mut buf = vec![0u8; 4 * nn];
            for _ in range {
                let (z, xy) = digits.split_at(nn);
                let (x, y) = xy.split_at(nn);
                buf.iter_mut().for_each(|e| *e = 0);
                let mut trace = 0u8;
                for i in 0..n {
                    for j in 0..n {
                        buf[i * 2 * n + j] = x[i * n + j];
                        buf[i * 2 * n + n + j] = y[i * n + j];
                        buf[(n + i) * 2 * n + n + j] = z[i * n + j];
                    }
                    trace = field.add(trace, field.add(x[i * n + i], z[i * n + i]));
                }
                acc[trace as usize][rank_in_place(field, &mut buf, 2 * n, 2 * n)] += 1;
                for d in digits.iter_mut().rev() {
                    *d += 1;
                    if (*d as usize) < q {
                        break;
                    }
                    *d = 0;
                }
            }
            acc
        },
        merge,
    )
}

/// Dimension by exhaustive enumeration of all `q^(3n^2)` triples `(X, Y, Z)`.
///
/// Each triple contributes `Theta(3n - rank(u - I))` to the bucket of its
/// trace value. Fails if the enumeration is too large, if the nonzero trace
/// buckets disagree, or if the final division is inexact or negative.
pub fn brute_dim(field: &GFq, n: usize, limit: u64, exec: Exec) -> Result<BruteDim, JacquetError> {
    if n == 0 {
        return Err(JacquetError::NonPositive(n));
    }
    let total = feasible(field.order(), (3 * n * n) as u32, limit)?;
    let hist = histogram(field, n, total, exec);
    let q = field.order();
    let degree = 3 * n as i64;
    let thetas: Vec<BigInt> =
        (0..=2 * n).map(|r| theta_unipotent(degree, degree - r as i64, q)).collect::<Result<_, _>>()?;

    let mut sums = BTreeMap::new();
    let mut counts = BTreeMap::new();
    for (gamma, by_rank) in hist.iter().enumerate() {
        let s: BigInt = by_rank.iter().zip(&thetas).map(|(&c, t)| BigInt::from(c) * t).sum();
        sums.insert(gamma as u8, s);
        counts.insert(gamma as u8, by_rank.iter().sum());
    }
    debug_assert_eq!(counts.values().sum::<u64>(), total);

    let nonzero: Vec<&BigInt> = sums.range(1..).map(|(_, s)| s).collect();
    if nonzero.iter().any(|s| *s != nonzero[0]) {
        return Err(JacquetError::NonConstantBuckets(sums.values().map(|s| s.to_string()).collect()));
    }
    let numerator = &sums[&0] - nonzero[0];
    let dim = exact_div(&numerator, &num_traits::pow(BigInt::from(q), 3 * n * n))?;
    if dim.is_negative() {
        return Err(JacquetError::Negative(dim.to_string()));
    }
    Ok(BruteDim { dim, buckets: TraceBucketSums { n, q, sums, counts } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::DEFAULT_LIMIT;

    fn buckets(q: u32, n: usize) -> BruteDim {
        brute_dim(&GFq::new(q).unwrap(), n, DEFAULT_LIMIT, Exec::default()).unwrap()
    }

    #[test]
    fn frozen_bucket_sums() {
        // Values from an independent scripted enumeration.
        let b = buckets(2, 1);
        assert_eq!(b.dim, 1.into());
        assert_eq!(b.buckets.sums[&0], 4.into());
        assert_eq!(b.buckets.sums[&1], (-4).into());

        let b = buckets(3, 1);
        assert_eq!(b.dim, 1.into());
        assert_eq!(b.buckets.sums[&0], 18.into());
        assert_eq!(b.buckets.sums[&2], (-9).into());

        let b = buckets(2, 2);
        assert_eq!(b.dim, 4.into());
        assert_eq!(b.buckets.sums[&0], 8192.into());
        assert_eq!(b.buckets.sums[&1], (-8192).into());
    }

    #[test]
    fn five_and_four_element_fields() {
        let b = buckets(5, 1);
        assert_eq!(b.dim, 1.into());
        assert_eq!(b.buckets.sums[&0], 100.into());
        assert!(b.buckets.sums.range(1..).all(|(_, s)| *s == BigInt::from(-25)));
        assert_eq!(buckets(4, 1).dim, 1.into());
        assert_eq!(buckets(9, 1).dim, 1.into());
    }

    #[test]
    fn bitmask_path_against_block_rank() {
        let f2 = GFq::new(2).unwrap();
        let total = 1u64 << 12;
        let hist = histogram(&f2, 2, total, Exec::Sequential);
        let mut direct = vec![vec![0u64; 5]; 2];
        for idx in 0..total {
            let z = GFMatrix::from_index(&f2, 2, 2, idx >> 8);
            let x = GFMatrix::from_index(&f2, 2, 2, (idx >> 4) & 15);
            let y = GFMatrix::from_index(&f2, 2, 2, idx & 15);
            let t = f2.add(x.trace(&f2).unwrap(), z.trace(&f2).unwrap());
            direct[t as usize][block_rank(&f2, &x, &y, &z)] += 1;
        }
        assert_eq!(hist, direct);
    }

    #[test]
    fn generic_path_against_block_rank() {
        let f3 = GFq::new(3).unwrap();
        let total = 3u64.pow(3);
        let hist = histogram(&f3, 1, total, Exec::Sequential);
        let mut direct = vec![vec![0u64; 3]; 3];
        for idx in 0..total {
            let m = |i: u64| GFMatrix::from_index(&f3, 1, 1, i);
            let (z, x, y) = (m(idx / 9), m((idx / 3) % 3), m(idx % 3));
            let t = f3.add(x.get(0, 0), z.get(0, 0));
            direct[t as usize][block_rank(&f3, &x, &y, &z)] += 1;
        }
        assert_eq!(hist, direct);
    }

    #[test]
    fn sequential_equals_parallel() {
        let f3 = GFq::new(3).unwrap();
        let a = brute_dim(&f3, 1, DEFAULT_LIMIT, Exec::Sequential).unwrap();
        let b = brute_dim(&f3, 1, DEFAULT_LIMIT, Exec::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn infeasible_is_reported() {
        let f9 = GFq::new(9).unwrap();
        assert!(matches!(brute_dim(&f9, 2, DEFAULT_LIMIT, Exec::Sequential), Err(JacquetError::Gf(_))));
    }
}
