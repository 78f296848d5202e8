//! Small integer helpers shared across modules.

use num_integer::Integer;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// increasing order.
pub fn factorize(mut n: u128) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d as u64, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n as u64, 1));
    }
    out
}

pub fn prime_divisors(n: u128) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// p-adic valuation; `nu(0)` is treated as 0.
pub fn nu(p: u64, mut n: u128) -> u32 {
    if n == 0 {
        return 0;
    }
    let p = p as u128;
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    e
}

/// `n_p`, the p-part of n.
pub fn p_part(p: u64, n: u128) -> u128 {
    (p as u128).pow(nu(p, n))
}

/// `n_{p'}`, the p'-part of n.
pub fn p_prime_part(p: u64, n: u128) -> u128 {
    n / p_part(p, n)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inv(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    factorize(n as u128)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Multiplicative order of `a` modulo `n` (requires `gcd(a, n) = 1`).
pub fn mult_order(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let phi = totient(n);
    let mut d = phi;
    for (q, _) in factorize(phi as u128) {
        while d % q == 0 && mod_pow(a, d / q, n) == 1 {
            d /= q;
        }
    }
    d
}

/// Least prime `l` with `l ≡ 1 (mod m)` and `l > bound`.
pub fn least_prime_one_mod(m: u64, bound: u64) -> u64 {
    let mut l = (bound / m + 1) * m + 1;
    while !is_prime(l) {
        l += m;
    }
    l
}

/// A generator of the multiplicative group of the prime field `F_l`.
pub fn primitive_root(l: u64) -> u64 {
    if l == 2 {
        return 1;
    }
    let factors = prime_divisors((l - 1) as u128);
    (2..l)
        .find(|&g| factors.iter().all(|&q| mod_pow(g, (l - 1) / q, l) != 1))
        .expect("prime field has a primitive root")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations_and_parts() {
        assert_eq!(nu(2, 24), 3);
        assert_eq!(nu(5, 60), 1);
        assert_eq!(p_part(2, 168), 8);
        assert_eq!(p_prime_part(2, 168), 21);
        assert_eq!(nu(3, 1), 0);
    }

    #[test]
    fn orders_and_roots() {
        assert_eq!(mult_order(2, 7), 3);
        assert_eq!(mult_order(2, 5), 4);
        assert_eq!(mult_order(1, 13), 1);
        assert_eq!(mod_inv(3, 7), Some(5));
        assert_eq!(mod_inv(2, 4), None);
        assert_eq!(totient(84), 24);
        let l = least_prime_one_mod(30, 16);
        assert_eq!(l, 31);
        let g = primitive_root(31);
        assert_eq!(mult_order(g, 31), 30);
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(168), vec![(2, 3), (3, 1), (7, 1)]);
        assert!(factorize(1).is_empty());
        assert!(is_prime(13) && !is_prime(1) && !is_prime(91));
    }
}
