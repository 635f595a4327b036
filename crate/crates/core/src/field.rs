//! Arithmetic in a prime field GF(p).
//!
//! Elements are stored as canonical residues in `[0, p)`. The modulus lives
//! in a small `Copy` context, [`PrimeField`], which every matrix carries, so
//! kernels never consult global state. The default modulus is the Mersenne
//! prime `2^61 - 1`, which gets a shift-and-add reduction; any other prime in
//! `[2^31, 2^63)` falls back to 128-bit remainder.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// `2^61 - 1`.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

/// Smallest modulus accepted by [`PrimeField::new`].
pub const MIN_PRIME: u64 = 1 << 31;

/// The seedable generator used by every randomized operation.
pub type SeededRng = ChaCha8Rng;

/// Builds a [`SeededRng`] from a 64-bit seed.
pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An element of GF(p), `0 <= value < p`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(transparent)]
pub struct FieldElement(pub(crate) u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A prime field context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
    mersenne: bool,
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField::mersenne61()
    }
}

impl PrimeField {
    /// The default field, GF(2^61 - 1).
    pub const fn mersenne61() -> Self {
        PrimeField {
            p: MERSENNE_61,
            mersenne: true,
        }
    }

    /// Creates GF(p). Rejects composites and moduli outside `[2^31, 2^63)`.
    pub fn new(p: u64) -> Result<Self> {
        if !(MIN_PRIME..(1 << 63)).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(PrimeField {
            p,
            mersenne: p == MERSENNE_61,
        })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Number of elements, `p`.
    #[inline]
    pub fn order(&self) -> u64 {
        self.p
    }

    /// Errors with `FieldTooSmall` unless `p >= required`.
    pub fn require_order(&self, required: u128) -> Result<()> {
        if (self.p as u128) < required {
            return Err(Error::FieldTooSmall {
                required,
                actual: self.p,
            });
        }
        Ok(())
    }

    /// Checks the Schwartz-Zippel bound `p >= n * ceil(1/eps)`.
    pub fn require_for_eps(&self, n: usize, eps: f64) -> Result<()> {
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(Error::InvalidEpsilon(eps));
        }
        let per = (1.0 / eps).ceil();
        let required = if per >= u64::MAX as f64 {
            u128::MAX
        } else {
            (n.max(1) as u128).saturating_mul(per as u128)
        };
        self.require_order(required)
    }

    /// Reduces an arbitrary signed integer into the field.
    #[inline]
    pub fn from_i64(&self, x: i64) -> FieldElement {
        let r = (x as i128).rem_euclid(self.p as i128);
        FieldElement(r as u64)
    }

    #[inline]
    pub fn from_u64(&self, x: u64) -> FieldElement {
        FieldElement(x % self.p)
    }

    /// The representative in `(-p/2, p/2]`, used when printing matrices.
    pub fn to_signed(&self, a: FieldElement) -> i128 {
        if a.0 > self.p / 2 {
            a.0 as i128 - self.p as i128
        } else {
            a.0 as i128
        }
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        // p < 2^63, so the sum fits in u64.
        let s = a.0 + b.0;
        FieldElement(if s >= self.p { s - self.p } else { s })
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(if a.0 >= b.0 {
            a.0 - b.0
        } else {
            a.0 + self.p - b.0
        })
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(if a.0 == 0 { 0 } else { self.p - a.0 })
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.reduce(a.0 as u128 * b.0 as u128))
    }

    /// `c - a * b`, the elimination inner step.
    #[inline]
    pub fn sub_mul(&self, c: FieldElement, a: FieldElement, b: FieldElement) -> FieldElement {
        self.sub(c, self.mul(a, b))
    }

    #[inline]
    fn reduce(&self, x: u128) -> u64 {
        if self.mersenne {
            let lo = (x as u64) & MERSENNE_61;
            let hi = (x >> 61) as u64;
            let s = lo + hi;
            let s = (s & MERSENNE_61) + (s >> 61);
            if s >= MERSENNE_61 {
                s - MERSENNE_61
            } else {
                s
            }
        } else {
            (x % self.p as u128) as u64
        }
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat's little theorem.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.p - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// A uniform element of `[0, p)`.
    pub fn sample_uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(0..self.p))
    }

    /// A uniform element of `[1, p)`.
    pub fn sample_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(1..self.p))
    }
}

const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &MR_WITNESSES {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MR_WITNESSES {
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
