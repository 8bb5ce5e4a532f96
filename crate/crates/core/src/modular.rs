//! Small modular arithmetic helpers for the multiplicative construction.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModularError {
    #[error("modulus {t} is too small, need at least 2")]
    ModulusTooSmall { t: u64 },
    #[error("{g} is not a unit modulo {t} (gcd {gcd})")]
    NotAUnit { g: u64, t: u64, gcd: u64 },
}

pub const fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub const fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc: u128 = 1;
    while exp != 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Euler's totient by trial division.
pub fn euler_phi(t: u64) -> u64 {
    let mut n = t;
    let mut phi = t;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// Smallest `d >= 1` with `g^d = 1 (mod t)`.
pub fn multiplicative_order(g: u64, t: u64) -> Result<u64, ModularError> {
    if t < 2 {
        return Err(ModularError::ModulusTooSmall { t });
    }
    let common = gcd(g % t, t);
    if common != 1 {
        return Err(ModularError::NotAUnit { g, t, gcd: common });
    }
    let g = g % t;
    let mut acc = g;
    let mut d = 1;
    while acc != 1 {
        acc = (acc as u128 * g as u128 % t as u128) as u64;
        d += 1;
    }
    Ok(d)
}

/// Smallest unit of maximal multiplicative order modulo `t`, with that order.
pub fn find_generator(t: u64) -> Result<(u64, u64), ModularError> {
    if t < 2 {
        return Err(ModularError::ModulusTooSmall { t });
    }
    let mut best = (1, 1);
    for g in 2..t {
        if gcd(g, t) != 1 {
            continue;
        }
        let d = multiplicative_order(g, t)?;
        if d > best.1 {
            best = (g, d);
        }
    }
    Ok(best)
}
