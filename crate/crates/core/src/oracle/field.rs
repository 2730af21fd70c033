use rand::RngCore;

use crate::error::{Error, Result};

/// A word-sized prime modulus for exact arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldPrime(u64);

impl FieldPrime {
    /// `2^31 - 1`.
    pub const DEFAULT: FieldPrime = FieldPrime(2_147_483_647);

    /// Accepts primes in `(10^6, 2^63)`.
    pub fn new(p: u64) -> Result<Self> {
        if p <= 1_000_000 || p >= 1 << 63 || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(FieldPrime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    #[inline]
    pub(crate) fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    #[inline]
    pub(crate) fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub(crate) fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    pub(crate) fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub(crate) fn inv(self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.0 - 2)
    }

    /// Uniform residue by rejection sampling on 64-bit words.
    pub(crate) fn sample<R: RngCore + ?Sized>(self, rng: &mut R) -> u64 {
        let zone = u64::MAX - u64::MAX % self.0;
        loop {
            let x = rng.next_u64();
            if x < zone {
                return x % self.0;
            }
        }
    }
}

impl Default for FieldPrime {
    fn default() -> Self {
        FieldPrime::DEFAULT
    }
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Rank of a row-major `rows x cols` matrix over the field, by Gaussian elimination.
pub(crate) fn matrix_rank(p: FieldPrime, mut m: Vec<u64>, rows: usize, cols: usize) -> usize {
    debug_assert_eq!(m.len(), rows * cols);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| m[r * cols + col] != 0) else {
            continue;
        };
        if pivot != rank {
            for c in col..cols {
                m.swap(pivot * cols + c, rank * cols + c);
            }
        }
        let inv = p.inv(m[rank * cols + col]);
        for c in col..cols {
            m[rank * cols + c] = p.mul(m[rank * cols + c], inv);
        }
        for r in rank + 1..rows {
            let factor = m[r * cols + col];
            if factor == 0 {
                continue;
            }
            for c in col..cols {
                let v = p.mul(factor, m[rank * cols + c]);
                m[r * cols + c] = p.sub(m[r * cols + c], v);
            }
        }
        rank += 1;
    }
    rank
}
