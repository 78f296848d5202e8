//! Exact arithmetic in cyclotomic fields and reduction modulo primes.

mod cycnum;
mod ffield;
pub mod poly;

pub use cycnum::CycNum;
pub use ffield::{reduce_mod_p, FiniteFieldElem, ReductionData};

use crate::arith;

/// Whether every value is fixed by all `zeta_m -> zeta_m^t` with
/// `t = 1 (mod m_{p'})`.
pub fn is_p_rational_value_set(values: &[CycNum], p: u64, m: u32) -> bool {
    let m = values
        .iter()
        .fold(m.max(1) as u64, |acc, v| arith::lcm(acc, v.conductor() as u64));
    let m_prime = arith::p_prime_part(p, m as u128) as u64;
    let m_p = m / m_prime;
    (1..m_p)
        .filter(|u| u % p != 0)
        .map(|u| crt(u, m_p, 1, m_prime))
        .all(|t| values.iter().all(|v| v.galois_apply(t as i64).is_ok_and(|w| w == *v)))
}

/// The residue modulo `a_mod * b_mod` congruent to `a` and `b`.
fn crt(a: u64, a_mod: u64, b: u64, b_mod: u64) -> u64 {
    let n = a_mod * b_mod;
    let inv = arith::mod_inv(a_mod % b_mod, b_mod).unwrap_or(0);
    // a + a_mod * ((b - a) * inv mod b_mod)
    let diff = (b + b_mod - a % b_mod) % b_mod;
    (a + a_mod * (diff * inv % b_mod)) % n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt5() -> CycNum {
        let z = |k| CycNum::root_of_unity(5, k);
        z(1) - z(2) - z(3) + z(4)
    }

    #[test]
    fn rationality_examples() {
        assert!(is_p_rational_value_set(&[CycNum::from_int(3)], 5, 60));
        assert!(!is_p_rational_value_set(&[CycNum::root_of_unity(5, 1)], 5, 5));
        assert!(is_p_rational_value_set(&[sqrt5()], 2, 5));
        assert!(!is_p_rational_value_set(&[sqrt5()], 5, 60));
        assert!(is_p_rational_value_set(&[sqrt5()], 3, 60));
    }

    #[test]
    fn rationality_agrees_with_conductor() {
        // A value is p-rational exactly when p does not divide its conductor.
        for m in [3u32, 4, 5, 8, 9, 12, 15, 20] {
            for k in 1..m as i64 {
                let v = &CycNum::root_of_unity(m, k) + &CycNum::root_of_unity(m, 2 * k);
                for p in [2u64, 3, 5] {
                    let expected = v.conductor() as u64 % p != 0;
                    assert_eq!(is_p_rational_value_set(std::slice::from_ref(&v), p, 60), expected, "{v} p={p}");
                }
            }
        }
    }

    #[test]
    fn crt_combines() {
        assert_eq!(crt(2, 5, 1, 12), 37);
        assert_eq!(crt(1, 1, 1, 7), 1);
    }
}
