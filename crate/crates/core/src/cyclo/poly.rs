//! Cyclotomic polynomials over Z and dense polynomial arithmetic over F_p.
//!
//! Polynomials are coefficient vectors in ascending degree.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith;

fn cyclotomic_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Phi_n` as integer coefficients, cached.
pub fn cyclotomic(n: u32) -> Arc<Vec<i64>> {
    if let Some(c) = cyclotomic_cache().lock().unwrap().get(&n) {
        return c.clone();
    }
    // x^n - 1 divided by Phi_d for every proper divisor d.
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let div = cyclotomic(d);
            poly = exact_div_monic(&poly, &div);
        }
    }
    let poly = Arc::new(poly);
    cyclotomic_cache().lock().unwrap().insert(n, poly.clone());
    poly
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        q[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

/// Dense polynomials over the prime field F_p.
pub mod fp {
    use super::*;

    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn degree(a: &[u64]) -> Option<usize> {
        a.iter().rposition(|&c| c != 0)
    }

    pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0; a.len().max(b.len())];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p;
        }
        trim(&mut out);
        out
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0; a.len().max(b.len())];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p;
        }
        trim(&mut out);
        out
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = ((out[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
            }
        }
        trim(&mut out);
        out
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let db = degree(b).expect("division by zero polynomial");
        let inv_lead = arith::mod_inv(b[db], p).expect("prime modulus");
        let mut rem: Vec<u64> = a.to_vec();
        trim(&mut rem);
        if rem.len() <= db {
            return (Vec::new(), rem);
        }
        let mut q = vec![0u64; rem.len() - db];
        for k in (0..q.len()).rev() {
            let c = rem[k + db] * inv_lead % p;
            q[k] = c;
            if c != 0 {
                for (i, &bi) in b.iter().enumerate().take(db + 1) {
                    rem[k + i] = (rem[k + i] + p - (c as u128 * bi as u128 % p as u128) as u64) % p;
                }
            }
        }
        trim(&mut rem);
        trim(&mut q);
        (q, rem)
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        divrem(a, b, p).1
    }

    pub fn monic(a: &[u64], p: u64) -> Vec<u64> {
        match degree(a) {
            None => Vec::new(),
            Some(d) => {
                let inv = arith::mod_inv(a[d], p).expect("prime modulus");
                let mut out: Vec<u64> = a[..=d].iter().map(|&c| c * inv % p).collect();
                trim(&mut out);
                out
            }
        }
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        monic(&x, p)
    }

    pub fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        rem(&mul(a, b, p), f, p)
    }

    pub fn powmod(a: &[u64], e: &BigUint, f: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let base = rem(a, f, p);
        for i in (0..e.bits()).rev() {
            acc = mulmod(&acc, &acc, f, p);
            if e.bit(i) {
                acc = mulmod(&acc, &base, f, p);
            }
        }
        rem(&acc, f, p)
    }

    /// Splits a squarefree monic `f` whose irreducible factors all have
    /// degree `r` (Cantor–Zassenhaus). Factors are returned monic and sorted
    /// lexicographically by ascending-degree coefficients.
    pub fn equal_degree_factors(f: &[u64], r: usize, p: u64) -> Vec<Vec<u64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_b10c);
        let mut out = Vec::new();
        split(&monic(f, p), r, p, &mut rng, &mut out);
        out.sort();
        out
    }

    fn split(f: &[u64], r: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Vec<u64>>) {
        let n = degree(f).unwrap_or(0);
        if n == 0 {
            return;
        }
        if n == r {
            out.push(f.to_vec());
            return;
        }
        loop {
            let mut a: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
            trim(&mut a);
            if degree(&a).unwrap_or(0) == 0 {
                continue;
            }
            let candidate = if p == 2 {
                // Absolute trace onto F_2.
                let mut t = a.clone();
                let mut s = a.clone();
                for _ in 1..r {
                    t = mulmod(&t, &t, f, p);
                    s = add(&s, &t, p);
                }
                s
            } else {
                let e = (BigUint::from(p).pow(r as u32) - 1u32) / 2u32;
                sub(&powmod(&a, &e, f, p), &[1], p)
            };
            let g = gcd(&candidate, f, p);
            let dg = degree(&g).unwrap_or(0);
            if dg > 0 && dg < n {
                let (q, _) = divrem(f, &g, p);
                split(&g, r, p, rng, out);
                split(&monic(&q, p), r, p, rng, out);
                return;
            }
        }
    }

    /// Roots in F_p of a nonzero polynomial, sorted.
    pub fn roots(f: &[u64], p: u64) -> Vec<u64> {
        let f = monic(f, p);
        let n = match degree(&f) {
            None | Some(0) => return Vec::new(),
            Some(n) => n,
        };
        if p < 4096 || n == 1 {
            let mut roots: Vec<u64> = (0..p).filter(|&x| eval(&f, x, p) == 0).collect();
            roots.dedup();
            return roots;
        }
        // Linear part: gcd(f, x^p - x).
        let xp = powmod(&[0, 1], &BigUint::from(p), &f, p);
        let lin = gcd(&sub(&xp, &[0, 1], p), &f, p);
        let mut roots: Vec<u64> = equal_degree_factors(&lin, 1, p)
            .into_iter()
            .map(|fac| (p - fac[0]) % p)
            .collect();
        roots.sort_unstable();
        roots
    }

    pub fn eval(f: &[u64], x: u64, p: u64) -> u64 {
        f.iter()
            .rev()
            .fold(0u128, |acc, &c| (acc * x as u128 + c as u128) % p as u128) as u64
    }
}
