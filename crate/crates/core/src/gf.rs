//! Table-driven arithmetic in small finite fields.
//!
//! Fields of size `q = p^k <= 13` are enough for the brute-force jet counts;
//! elements are indices `0..q` into precomputed addition and multiplication
//! tables, so the inner enumeration loops reduce to array lookups.

use crate::error::Error;

/// Arithmetic context for one field `F_q`.
#[derive(Debug, Clone)]
pub struct Gf {
    q: usize,
    p: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
}

/// Monic irreducible polynomials over F_p, low-degree coefficients first,
/// omitting the leading 1.
fn irreducible(p: usize, k: usize) -> &'static [usize] {
    match (p, k) {
        (2, 2) => &[1, 1],    // x^2 + x + 1
        (2, 3) => &[1, 1, 0], // x^3 + x + 1
        (3, 2) => &[1, 0],    // x^2 + 1
        _ => unreachable!(),
    }
}

impl Gf {
    pub fn new(q: u64) -> Result<Self, Error> {
        let (p, k) = match q {
            2 | 3 | 5 | 7 | 11 | 13 => (q as usize, 1usize),
            4 => (2, 2),
            8 => (2, 3),
            9 => (3, 2),
            _ => return Err(Error::BadFieldSize(q)),
        };
        let q = q as usize;
        // Element i encodes the polynomial with base-p digits of i.
        let digits = |mut x: usize| -> Vec<usize> {
            let mut v = vec![0; k];
            for d in v.iter_mut() {
                *d = x % p;
                x /= p;
            }
            v
        };
        let pack = |v: &[usize]| -> usize {
            v.iter().rev().fold(0, |acc, &d| acc * p + d)
        };
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        let mut neg = vec![0u8; q];
        for i in 0..q {
            let a = digits(i);
            let n: Vec<usize> = a.iter().map(|&d| (p - d) % p).collect();
            neg[i] = pack(&n) as u8;
            for j in 0..q {
                let b = digits(j);
                let s: Vec<usize> =
                    a.iter().zip(&b).map(|(&x, &y)| (x + y) % p).collect();
                add[i * q + j] = pack(&s) as u8;
                // Polynomial product reduced modulo the defining polynomial.
                let mut prod = vec![0usize; 2 * k - 1];
                for (x, &ax) in a.iter().enumerate() {
                    for (y, &by) in b.iter().enumerate() {
                        prod[x + y] = (prod[x + y] + ax * by) % p;
                    }
                }
                if k > 1 {
                    let rem = irreducible(p, k);
                    for deg in (k..2 * k - 1).rev() {
                        let c = prod[deg];
                        if c != 0 {
                            prod[deg] = 0;
                            for (e, &re) in rem.iter().enumerate() {
                                let idx = deg - k + e;
                                prod[idx] = (prod[idx] + c * (p - re % p)) % p;
                            }
                        }
                    }
                }
                mul[i * q + j] = pack(&prod[..k]) as u8;
            }
        }
        Ok(Self { q, p, add, mul, neg })
    }

    #[inline]
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Image of an integer under the ring map Z -> F_q.
    pub fn from_int(&self, n: i64) -> u8 {
        let p = self.p as i64;
        let r = n.rem_euclid(p) as u8;
        // Prime subfield elements encode as their own digit.
        r
    }

    /// True when `a` is a square in F_q (0 counts as a square).
    pub fn is_square(&self, a: u8) -> bool {
        (0..self.q).any(|x| self.mul(x as u8, x as u8) == a)
    }
}
