//! Brute-force reference computations.
//!
//! Everything here works over `i128` with the most direct algorithm available
//! and shares no code with `niltower-core`. Test suites and the fixture
//! generator use these values as independent evidence; the main code path
//! never depends on this crate.

pub mod chains;
pub mod free_group;
pub mod hall;
pub mod lie;
pub mod magnus;
pub mod smith;

/// Möbius function by trial division.
pub fn mobius(n: u64) -> i128 {
    assert!(n >= 1);
    let mut m = n;
    let mut sign = 1i128;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Necklace count `(1/n) * sum_{d | n} mu(d) k^(n/d)`.
pub fn witt(k: u64, n: u64) -> i128 {
    let mut total = 0i128;
    for d in 1..=n {
        if n.is_multiple_of(d) {
            total += mobius(d) * (k as i128).pow((n / d) as u32);
        }
    }
    assert_eq!(total % n as i128, 0);
    total / n as i128
}
