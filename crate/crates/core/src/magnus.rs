//! Truncated tensor algebra `Z<X_1..X_k> / (degree > n)` used as the
//! Magnus representation `x_g -> 1 + X_g`, which is faithful on free
//! nilpotent groups of class `n`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

fn add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow)
}

fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

/// Dense element; `parts[d]` holds the coefficients of words of length `d`,
/// words indexed in base `k` with the first letter most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Series {
    k: usize,
    n: usize,
    parts: Vec<Vec<i128>>,
}

impl Series {
    pub fn zero(k: usize, n: usize) -> Self {
        let parts = (0..=n).map(|d| vec![0; k.pow(d as u32)]).collect();
        Series { k, n, parts }
    }

    pub fn one(k: usize, n: usize) -> Self {
        let mut s = Self::zero(k, n);
        s.parts[0][0] = 1;
        s
    }

    /// `1 + X_g`.
    pub fn generator(k: usize, n: usize, g: usize) -> Self {
        let mut s = Self::one(k, n);
        if n >= 1 {
            s.parts[1][g] = 1;
        }
        s
    }

    pub fn part(&self, d: usize) -> &[i128] {
        &self.parts[d]
    }

    pub fn is_one(&self) -> bool {
        self.parts[0][0] == 1 && self.parts.iter().skip(1).all(|p| p.iter().all(|&c| c == 0))
    }

    pub fn mul(&self, other: &Series) -> Result<Series> {
        let mut out = Self::zero(self.k, self.n);
        for d1 in 0..=self.n {
            for (i1, &a) in self.parts[d1].iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for d2 in 0..=self.n - d1 {
                    let shift = self.k.pow(d2 as u32);
                    let target = &mut out.parts[d1 + d2];
                    for (i2, &b) in other.parts[d2].iter().enumerate() {
                        if b != 0 {
                            let slot = &mut target[i1 * shift + i2];
                            *slot = add(*slot, mul(a, b)?)?;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self^e` for a series with constant term 1, via the binomial series
    /// of `(1 + z)^e`; valid for negative `e`.
    pub fn pow(&self, e: i64) -> Result<Series> {
        if self.parts[0][0] != 1 {
            return Err(Error::InvariantBreach("power of a non-unipotent series".into()));
        }
        let mut z = self.clone();
        z.parts[0][0] = 0;
        let mut out = Self::one(self.k, self.n);
        let mut zm = Self::one(self.k, self.n);
        let mut binom: i128 = 1;
        let e = e as i128;
        for m in 1..=self.n as i128 {
            binom = mul(binom, e - m + 1)? / m;
            if binom == 0 {
                break;
            }
            zm = zm.mul(&z)?;
            for d in 0..=self.n {
                for (o, &c) in out.parts[d].iter_mut().zip(&zm.parts[d]) {
                    *o = add(*o, mul(binom, c)?)?;
                }
            }
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Result<Series> {
        self.pow(-1)
    }
}

/// Decodes a word index of length `d` into letters.
pub(crate) fn word_of(k: usize, d: usize, mut index: usize) -> Vec<usize> {
    let mut w = vec![0; d];
    for slot in w.iter_mut().rev() {
        *slot = index % k;
        index /= k;
    }
    w
}
