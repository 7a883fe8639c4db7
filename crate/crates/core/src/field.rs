use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Cardinality of a finite field, kept together with its factorization
/// q = p^f. Construction from q alone factors the input and rejects
/// anything that is not a prime power.
///
/// Cardinalities are bounded by `u64`; all arithmetic *derived* from a
/// field (coefficients, point counts, class numbers) is arbitrary
/// precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct FieldSize {
    q: u64,
    p: u64,
    f: u32,
}

impl FieldSize {
    pub fn new(q: u64) -> Result<Self> {
        let (p, f) = factor_prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Ok(FieldSize { q, p, f })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    /// The field with q^d elements, for base change of degree d.
    pub fn extend(&self, d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroGenus);
        }
        let f = self.f.checked_mul(d).ok_or(Error::FieldTooLarge {
            q: self.q,
            exponent: d,
        })?;
        let q = self.q.checked_pow(d).ok_or(Error::FieldTooLarge {
            q: self.q,
            exponent: d,
        })?;
        Ok(FieldSize { q, p: self.p, f })
    }

    /// Whether q is a square, i.e. the field is a quadratic extension.
    pub fn is_square(&self) -> bool {
        self.f.is_multiple_of(2)
    }
}

impl fmt::Display for FieldSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

impl TryFrom<u64> for FieldSize {
    type Error = Error;
    fn try_from(q: u64) -> Result<Self> {
        FieldSize::new(q)
    }
}

impl From<FieldSize> for u64 {
    fn from(fs: FieldSize) -> u64 {
        fs.q
    }
}

/// Floor of the integer square root, by binary search. No floating point.
pub fn isqrt(n: u64) -> u64 {
    iroot(n, 2)
}

/// Floor of the integer k-th root, by binary search. No floating point.
fn iroot(n: u64, k: u32) -> u64 {
    if k == 1 || n == 0 {
        return n;
    }
    let bits = 64 - n.leading_zeros();
    // 2^ceil(bits/k) is an upper bound on the root.
    let mut hi: u64 = 1u64 << (bits / k + 1).min(63);
    let mut lo: u64 = 0;
    // invariant: lo^k <= n < hi^k
    while ipow(hi, k).is_some_and(|v| v <= n) {
        hi <<= 1;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ipow_exceeds(mid, k, n) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    lo
}

/// True if x^k > n (without overflow).
fn ipow_exceeds(x: u64, k: u32, n: u64) -> bool {
    let mut acc: u64 = 1;
    for _ in 0..k {
        acc = match acc.checked_mul(x) {
            Some(v) => v,
            None => return true,
        };
        if acc > n {
            return true;
        }
    }
    acc > n
}

fn ipow(x: u64, k: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..k {
        acc = acc.checked_mul(x)?;
    }
    Some(acc)
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u64 = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64 (the 12-witness set is sufficient
/// below 3.3 * 10^24).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Returns (p, f) with q = p^f and p prime, or None.
fn factor_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    // The largest f with q a perfect f-th power gives a base that is not
    // itself a perfect power; q is a prime power iff that base is prime.
    for f in (1..=63u32).rev() {
        let r = iroot(q, f);
        if ipow(r, f) == Some(q) {
            return if is_prime(r) { Some((r, f)) } else { None };
        }
    }
    None
}
