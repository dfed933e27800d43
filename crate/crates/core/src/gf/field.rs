use super::GfError;

/// Orders for which a field is available.
pub const SUPPORTED_ORDERS: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

/// The finite field of order `q`, as full addition and multiplication tables.
///
/// Element `i` is the residue polynomial `sum c_j x^j` over GF(p) with
/// `i = sum c_j p^j`, so `0` and `1` are the additive and multiplicative
/// identities in every field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GFq {
    q: u8,
    p: u8,
    modulus: Option<Vec<u8>>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

fn modulus_for(q: u32) -> Option<(u8, Vec<u8>)> {
    // Ascending coefficients of fixed irreducible moduli.
    match q {
        2 | 3 | 5 | 7 => Some((q as u8, vec![0, 1])),
        4 => Some((2, vec![1, 1, 1])),
        8 => Some((2, vec![1, 1, 0, 1])),
        9 => Some((3, vec![1, 0, 1])),
        _ => None,
    }
}

fn digits(mut x: usize, p: usize, len: usize) -> Vec<usize> {
    (0..len)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl GFq {
    pub fn new(q: u32) -> Result<Self, GfError> {
        let (p, modulus) = modulus_for(q).ok_or(GfError::UnsupportedOrder(q))?;
        let (qq, pp) = (q as usize, p as usize);
        let deg = modulus.len() - 1;

        let mut add = vec![0u8; qq * qq];
        let mut mul = vec![0u8; qq * qq];
        for a in 0..qq {
            let da = digits(a, pp, deg);
            for b in 0..qq {
                let db = digits(b, pp, deg);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % pp).collect();
                add[a * qq + b] = undigits(&sum, pp) as u8;

                let mut prod = vec![0usize; 2 * deg - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % pp;
                    }
                }
                // Reduce by the monic modulus from the top.
                for top in (deg..prod.len()).rev() {
                    let c = prod[top];
                    if c != 0 {
                        for (j, &mj) in modulus.iter().enumerate() {
                            let slot = top - deg + j;
                            prod[slot] = (prod[slot] + pp * pp - c * mj as usize) % pp;
                        }
                    }
                }
                mul[a * qq + b] = undigits(&prod[..deg], pp) as u8;
            }
        }

        let neg = (0..qq).map(|a| (0..qq).find(|&b| add[a * qq + b] == 0).unwrap() as u8).collect();
        let mut inv = vec![0u8; qq];
        for a in 1..qq {
            inv[a] = (1..qq).find(|&b| mul[a * qq + b] == 1).ok_or(GfError::NotAField(q))? as u8;
        }
        let field = GFq { q: q as u8, p, modulus: (deg > 1).then_some(modulus), add, mul, neg, inv };
        field.verify_axioms()?;
        Ok(field)
    }

    /// Exhaustive check of the ring axioms over all element triples.
    fn verify_axioms(&self) -> Result<(), GfError> {
        let q = self.q;
        for a in 0..q {
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                return Err(GfError::NotAField(q as u32));
            }
            for b in 0..q {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(GfError::NotAField(q as u32));
                }
                for c in 0..q {
                    let assoc = self.add(self.add(a, b), c) == self.add(a, self.add(b, c))
                        && self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
                    let distrib = self.mul(a, self.add(b, c)) == self.add(self.mul(a, b), self.mul(a, c));
                    if !assoc || !distrib {
                        return Err(GfError::NotAField(q as u32));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> u32 {
        self.q as u32
    }

    pub fn characteristic(&self) -> u32 {
        self.p as u32
    }

    /// Ascending coefficients over GF(p) of the defining modulus, for non-prime orders.
    pub fn modulus(&self) -> Option<&[u8]> {
        self.modulus.as_deref()
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u8) -> Option<u8> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_supported_orders_build() {
        for q in SUPPORTED_ORDERS {
            let f = GFq::new(q).unwrap();
            assert_eq!(f.order(), q);
            for a in 1..q as u8 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
        assert_eq!(GFq::new(6), Err(GfError::UnsupportedOrder(6)));
    }

    #[test]
    fn characteristic_sums() {
        for q in SUPPORTED_ORDERS {
            let f = GFq::new(q).unwrap();
            let p = f.characteristic();
            let mut s = 0u8;
            for _ in 0..p {
                s = f.add(s, 1);
            }
            assert_eq!(s, 0, "q = {q}");
        }
    }

    #[test]
    fn gf4_generator_cycle() {
        // x has order 3 in GF(4)^*: x^2 = x + 1 is element 3.
        let f = GFq::new(4).unwrap();
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.modulus(), Some(&[1, 1, 1][..]));
    }

    #[test]
    fn gf9_has_square_root_of_minus_one() {
        let f = GFq::new(9).unwrap();
        // x^2 = -1 = 2
        assert_eq!(f.mul(3, 3), 2);
    }

    #[test]
    fn multiplicative_group_is_cyclic() {
        for q in SUPPORTED_ORDERS {
            let f = GFq::new(q).unwrap();
            let has_generator = (1..q as u8).any(|g| {
                let mut x = g;
                let mut ord = 1;
                while x != 1 {
                    x = f.mul(x, g);
                    ord += 1;
                }
                ord == q - 1
            });
            assert!(has_generator, "q = {q}");
        }
    }
}
