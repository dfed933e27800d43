use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::block_rank;
use crate::gf::{block_constant, feasible, reduce_to_canonical, BlockKind, GFMatrix, GFq, GfError};

/// Result of normalizing `[[I_{k,n}, Y], [0, I_{n,m}]]` for one `Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CancelOutcome {
    /// Rank of the corner block left after pivot cancellation.
    pub l: usize,
    pub rank_before: usize,
    pub rank_after: usize,
    /// Whether the reduced matrix is exactly the canonical block form.
    pub canonical: bool,
}

impl CancelOutcome {
    pub fn ok(&self, k: usize, m: usize) -> bool {
        self.canonical && self.rank_before == self.rank_after && self.rank_after == k + m + self.l
    }
}

fn block_diag(field: &GFq, blocks: &[&GFMatrix]) -> GFMatrix {
    let size = blocks.iter().map(|b| b.rows()).sum();
    let mut out = GFMatrix::zeros(size, size);
    let mut at = 0;
    for b in blocks {
        out.paste(at, at, b);
        at += b.rows();
    }
    debug_assert_eq!(out.rank(field), size);
    out
}

/// Clears the entries of `y` covered by the pivots of `I_{k,n}` (column
/// operations) and of `I_{n,m}` (row operations), then brings the remaining
/// `(n-k) x (n-m)` corner to `I^n_{k,l,m}` form.
pub fn cancel_corner(field: &GFq, n: usize, k: usize, m: usize, y: &GFMatrix) -> Result<CancelOutcome, GfError> {
    let x = block_constant(BlockKind::Ikn { k, n })?;
    let z = block_constant(BlockKind::Inm { n, m })?;
    if y.rows() != n || y.cols() != n {
        return Err(GfError::Shape(format!("Y must be {n}x{n}")));
    }
    let mut u = GFMatrix::zeros(2 * n, 2 * n);
    u.paste(0, 0, &x);
    u.paste(0, n, y);
    u.paste(n, n, &z);
    let rank_before = u.rank(field);

    for i in 0..k {
        for j in 0..n {
            let s = field.neg(u.get(i, n + j));
            u.add_col_multiple(field, n + j, i, s);
        }
    }
    for j in n - m..n {
        for i in 0..n {
            let s = field.neg(u.get(i, n + j));
            u.add_row_multiple(field, i, n + j, s);
        }
    }

    let corner = u.submatrix(k..n, n..2 * n - m);
    let (p, q, l) = reduce_to_canonical(field, &corner);
    let left = block_diag(field, &[&GFMatrix::identity(k), &p, &GFMatrix::identity(n)]);
    let right = block_diag(field, &[&GFMatrix::identity(n), &q, &GFMatrix::identity(m)]);
    let reduced = left.mul(field, &u)?.mul(field, &right)?;

    let mut canonical = GFMatrix::zeros(2 * n, 2 * n);
    canonical.paste(0, 0, &x);
    canonical.paste(0, n, &block_constant(BlockKind::Iklm { n, k, l, m })?);
    canonical.paste(n, n, &z);

    Ok(CancelOutcome { l, rank_before, rank_after: reduced.rank(field), canonical: reduced == canonical })
}

/// Runs [`cancel_corner`] over every `Y` when there are at most `samples` of
/// them, otherwise over `samples` seeded random draws; true iff every
/// reduction is canonical and rank preserving.
pub fn gaussian_cancellation_check(
    field: &GFq,
    n: usize,
    k: usize,
    m: usize,
    samples: u64,
    seed: u64,
) -> Result<bool, GfError> {
    let all = feasible(field.order(), (n * n) as u32, samples).ok();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = all.unwrap_or(samples);
    for i in 0..count {
        let y = match all {
            Some(_) => GFMatrix::from_index(field, n, n, i),
            None => GFMatrix::random(field, n, n, &mut rng),
        };
        if !cancel_corner(field, n, k, m, &y)?.ok(k, m) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One random trial of block conjugation invariance: with invertible
/// `E1..E4`, the triple `(E1 X E3, E1 Y E4, E2 Z E4)` has the same
/// `rank(u - I)` as `(X, Y, Z)`.
pub fn conjugation_trial(field: &GFq, n: usize, rng: &mut impl rand::Rng) -> bool {
    let [x, y, z] = [0, 1, 2].map(|_| GFMatrix::random(field, n, n, rng));
    let [e1, e2, e3, e4] = [0, 1, 2, 3].map(|_| GFMatrix::random_invertible(field, n, rng));
    let prod = |a: &GFMatrix, b: &GFMatrix, c: &GFMatrix| a.mul(field, b).unwrap().mul(field, c).unwrap();
    let before = block_rank(field, &x, &y, &z);
    let after = block_rank(field, &prod(&e1, &x, &e3), &prod(&e1, &y, &e4), &prod(&e2, &z, &e4));
    before == after
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_entry_fully_cancels() {
        for q in [2, 3, 7] {
            let f = GFq::new(q).unwrap();
            for v in 0..q as u8 {
                let y = GFMatrix::new(&f, 1, 1, vec![v]).unwrap();
                let out = cancel_corner(&f, 1, 1, 1, &y).unwrap();
                assert_eq!(out.l, 0);
                assert!(out.ok(1, 1));
            }
        }
    }

    #[test]
    fn rank_one_corner_without_pivots() {
        let f2 = GFq::new(2).unwrap();
        let y = GFMatrix::from_rows(&f2, &[&[1, 1], &[1, 1]]).unwrap();
        let out = cancel_corner(&f2, 2, 0, 0, &y).unwrap();
        assert_eq!(out.l, 1);
        assert!(out.ok(0, 0));
    }

    #[test]
    fn exhaustive_and_sampled_checks() {
        let f2 = GFq::new(2).unwrap();
        assert!(gaussian_cancellation_check(&f2, 2, 1, 1, 16, 0).unwrap());
        for q in [2, 3, 4] {
            let f = GFq::new(q).unwrap();
            for n in 1..=3 {
                for k in 0..=n {
                    for m in 0..=n {
                        assert!(gaussian_cancellation_check(&f, n, k, m, 200, 5).unwrap(), "q={q} n={n} k={k} m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn conjugation_preserves_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for q in [2, 3, 5, 8] {
            let f = GFq::new(q).unwrap();
            for n in 1..=3 {
                for _ in 0..20 {
                    assert!(conjugation_trial(&f, n, &mut rng));
                }
            }
        }
    }
}
