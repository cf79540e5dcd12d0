//! Shared numeric aliases and small integer utilities.

use alloc::vec::Vec;
use num::{BigInt, BigRational, Integer, One, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

/// Rational from a machine integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Rational n/d with d ≠ 0.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// Trial-division primality test; adequate for the operand sizes used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn is_squarefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut n = n;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return false;
            }
        }
        d += 1;
    }
    true
}

/// Largest squarefree divisor with the same radical: n / (largest square factor).
pub fn squarefree_kernel(n: u64) -> u64 {
    let mut n = n;
    let mut k = 1u64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            if e % 2 == 1 {
                k *= d;
            }
        }
        d += 1;
    }
    k * n
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    let mut n = n;
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Legendre symbol (a/p) for an odd prime p, computed by Euler's criterion.
pub fn legendre(a: &Int, p: u64) -> i32 {
    let p_int = Int::from(p);
    let mut a = a.mod_floor(&p_int);
    if a.is_zero() {
        return 0;
    }
    // a^((p-1)/2) mod p by square-and-multiply.
    let mut e = (p - 1) / 2;
    let mut acc = Int::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = (&acc * &a).mod_floor(&p_int);
        }
        a = (&a * &a).mod_floor(&p_int);
        e >>= 1;
    }
    if acc.is_one() {
        1
    } else {
        -1
    }
}

/// True if the rational q has p-adic valuation 0 (a unit at p).
pub fn is_p_unit(q: &Rat, p: u64) -> bool {
    if q.is_zero() {
        return false;
    }
    let p = Int::from(p);
    (q.numer() % &p) != Int::zero() && (q.denom() % &p) != Int::zero()
}

/// True if the denominator of q (in lowest terms) is coprime to p.
pub fn denominator_coprime_to(q: &Rat, p: u64) -> bool {
    (q.denom() % Int::from(p)) != Int::zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(97));
        assert!(!is_prime(1));
        assert!(!is_prime(91));
    }

    #[test]
    fn squarefree() {
        assert!(is_squarefree(1));
        assert!(is_squarefree(30));
        assert!(!is_squarefree(12));
        assert_eq!(squarefree_kernel(50), 2);
        assert_eq!(squarefree_kernel(30), 30);
    }

    #[test]
    fn legendre_small() {
        // squares mod 7: 1,2,4
        assert_eq!(legendre(&int(2), 7), 1);
        assert_eq!(legendre(&int(3), 7), -1);
        assert_eq!(legendre(&int(14), 7), 0);
    }

    #[test]
    fn p_units() {
        assert!(is_p_unit(&ratio(3, 7), 5));
        assert!(!is_p_unit(&ratio(5, 7), 5));
        assert!(!is_p_unit(&ratio(3, 5), 5));
        assert!(denominator_coprime_to(&ratio(5, 7), 5));
        assert!(!denominator_coprime_to(&ratio(3, 5), 5));
    }
}
