use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::cyclotomic;
use crate::arith;
use crate::error::{Error, Result};

/// An element of a cyclotomic field `Q(zeta_m)`.
///
/// Stored as `(c_0 + c_1 z + ... + c_{phi(m)-1} z^{phi(m)-1}) / den` with
/// `z = exp(2 pi i / m)`. The form is canonical: `m` is the least conductor
/// of the value, `den > 0` and `gcd(c_0, .., c_k, den) = 1`, so structural
/// equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    m: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

fn phi(m: u32) -> usize {
    arith::totient(m as u64) as usize
}

/// Reduces a dense exponent vector modulo `Phi_m`, leaving `phi(m)` entries.
fn reduce_mod_cyclotomic(mut a: Vec<BigInt>, m: u32) -> Vec<BigInt> {
    let poly = cyclotomic(m);
    let deg = poly.len() - 1;
    for k in (deg..a.len()).rev() {
        if a[k].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut a[k]);
        for (i, &coef) in poly.iter().enumerate().take(deg) {
            if coef != 0 {
                a[k - deg + i] -= &c * coef;
            }
        }
    }
    a.resize(deg, BigInt::zero());
    a
}

/// Tries to rewrite an element of `Q(zeta_m)` over `Q(zeta_{m/q})`.
fn descend(m: u32, q: u32, num: &[BigInt]) -> Option<Vec<BigInt>> {
    let d = m / q;
    if d % q == 0 {
        // Phi_m(x) = Phi_d(x^q): only exponents divisible by q may survive.
        if num.iter().enumerate().any(|(k, c)| k as u32 % q != 0 && !c.is_zero()) {
            return None;
        }
        return Some(num.iter().step_by(q as usize).cloned().collect());
    }
    // zeta_m^k = zeta_d^(u k) * zeta_q^(v k) with u q + v d = 1 (mod m).
    let u = arith::mod_inv(q as u64, d as u64).unwrap_or(0);
    let v = arith::mod_inv(d as u64, q as u64).unwrap();
    let mut parts = vec![vec![BigInt::zero(); d as usize]; q as usize];
    for (k, c) in num.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let j = (v * k as u64 % q as u64) as usize;
        let e = (u * k as u64 % d as u64) as usize;
        parts[j][e] += c;
    }
    let parts: Vec<Vec<BigInt>> = parts.into_iter().map(|p| reduce_mod_cyclotomic(p, d)).collect();
    // Basis 1, zeta_q, .., zeta_q^(q-2) over Q(zeta_d).
    let last = &parts[q as usize - 1];
    if (1..q as usize - 1).any(|j| parts[j] != *last) {
        return None;
    }
    Some(parts[0].iter().zip(last).map(|(a, b)| a - b).collect())
}

impl CycNum {
    fn from_parts(mut m: u32, mut num: Vec<BigInt>, mut den: BigInt) -> CycNum {
        debug_assert_eq!(num.len(), phi(m));
        'outer: loop {
            if m == 1 {
                break;
            }
            if num[1..].iter().all(Zero::is_zero) {
                num.truncate(1);
                m = 1;
                break;
            }
            for q in arith::prime_divisors(m as u128) {
                if let Some(next) = descend(m, q as u32, &num) {
                    num = next;
                    m /= q as u32;
                    continue 'outer;
                }
            }
            break;
        }
        if num.iter().all(Zero::is_zero) {
            return CycNum::zero();
        }
        if den.is_negative() {
            den = -den;
            for c in &mut num {
                *c = -std::mem::take(c);
            }
        }
        let g = num.iter().fold(den.clone(), |g, c| g.gcd(c));
        if !g.is_one() {
            for c in &mut num {
                *c /= &g;
            }
            den /= &g;
        }
        CycNum { m, num, den }
    }

    /// Builds `sum_k coeffs[k] * zeta_m^k / den` from a dense exponent vector
    /// of any length (exponents are taken modulo `m`).
    pub fn from_exponents(m: u32, coeffs: &[BigInt], den: BigInt) -> Result<CycNum> {
        if m == 0 {
            return Err(Error::InvalidInput("conductor must be positive".into()));
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut dense = vec![BigInt::zero(); m as usize];
        for (k, c) in coeffs.iter().enumerate() {
            dense[k % m as usize] += c;
        }
        Ok(Self::from_parts(m, reduce_mod_cyclotomic(dense, m), den))
    }

    /// `sum_k mult[k] zeta_m^k` for small integer multiplicities.
    pub fn from_int_exponents(m: u32, mult: &[i64]) -> CycNum {
        let coeffs: Vec<BigInt> = mult.iter().map(|&c| BigInt::from(c)).collect();
        Self::from_exponents(m, &coeffs, BigInt::one()).expect("positive conductor")
    }

    pub fn zero() -> CycNum {
        CycNum {
            m: 1,
            num: vec![BigInt::zero()],
            den: BigInt::one(),
        }
    }

    pub fn one() -> CycNum {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> CycNum {
        Self::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> CycNum {
        CycNum {
            m: 1,
            num: vec![n],
            den: BigInt::one(),
        }
    }

    pub fn from_rational(r: &BigRational) -> CycNum {
        Self::from_parts(1, vec![r.numer().clone()], r.denom().clone())
    }

    /// `zeta_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> CycNum {
        let e = k.rem_euclid(n as i64) as usize;
        let mut coeffs = vec![BigInt::zero(); n as usize];
        coeffs[e] = BigInt::one();
        Self::from_exponents(n, &coeffs, BigInt::one()).expect("positive conductor")
    }

    /// The least `m` with the value in `Q(zeta_m)`.
    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.m == 1 && self.num[0].is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.m == 1
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        (self.is_rational() && self.den.is_one()).then(|| self.num[0].clone())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.to_i64())
    }

    /// Whether all power-basis coordinates are integers; for the power basis
    /// of `Z[zeta_m]` this is exactly algebraic integrality.
    pub fn is_algebraic_integer(&self) -> bool {
        self.den.is_one()
    }

    /// Power-basis coordinates and the common denominator.
    pub fn coefficients(&self) -> (&[BigInt], &BigInt) {
        (&self.num, &self.den)
    }

    /// Coordinates after embedding into `Q(zeta_l)` for a multiple `l` of the
    /// conductor.
    fn lifted(&self, l: u32) -> Vec<BigInt> {
        if l == self.m {
            return self.num.clone();
        }
        let step = (l / self.m) as usize;
        let mut dense = vec![BigInt::zero(); l as usize];
        for (k, c) in self.num.iter().enumerate() {
            dense[k * step] = c.clone();
        }
        reduce_mod_cyclotomic(dense, l)
    }

    fn common(&self, other: &CycNum) -> (u32, Vec<BigInt>, Vec<BigInt>) {
        let l = arith::lcm(self.m as u64, other.m as u64) as u32;
        (l, self.lifted(l), other.lifted(l))
    }

    pub fn add_ref(&self, other: &CycNum) -> CycNum {
        let (l, a, b) = self.common(other);
        let num = a
            .iter()
            .zip(&b)
            .map(|(x, y)| x * &other.den + y * &self.den)
            .collect();
        Self::from_parts(l, num, &self.den * &other.den)
    }

    pub fn sub_ref(&self, other: &CycNum) -> CycNum {
        self.add_ref(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> CycNum {
        CycNum {
            m: self.m,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn mul_ref(&self, other: &CycNum) -> CycNum {
        if self.is_rational() || other.is_rational() {
            let (r, x) = if self.is_rational() { (self, other) } else { (other, self) };
            let num = x.num.iter().map(|c| c * &r.num[0]).collect();
            return Self::from_parts(x.m, num, &x.den * &r.den);
        }
        let (l, a, b) = self.common(other);
        let mut prod = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let num = reduce_mod_cyclotomic(prod, l);
        Self::from_parts(l, num, &self.den * &other.den)
    }

    pub fn scale(&self, r: &BigRational) -> CycNum {
        self.mul_ref(&CycNum::from_rational(r))
    }

    pub fn div_int(&self, n: i64) -> Result<CycNum> {
        if n == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.scale(&BigRational::new(BigInt::one(), BigInt::from(n))))
    }

    /// Multiplicative inverse via the norm: `a^-1 = prod_{s != 1} s(a) / N(a)`.
    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.to_rational() {
            return Ok(CycNum::from_rational(&r.recip()));
        }
        let m = self.m as i64;
        let mut others = CycNum::one();
        for t in 2..m {
            if arith::gcd(t as u64, m as u64) == 1 {
                others = others.mul_ref(&self.galois_apply(t)?);
            }
        }
        let norm = self
            .mul_ref(&others)
            .to_rational()
            .ok_or_else(|| Error::InternalInconsistency("norm is not rational".into()))?;
        Ok(others.scale(&norm.recip()))
    }

    pub fn div_ref(&self, other: &CycNum) -> Result<CycNum> {
        Ok(self.mul_ref(&other.inv()?))
    }

    /// The automorphism `zeta_m -> zeta_m^t`.
    pub fn galois_apply(&self, t: i64) -> Result<CycNum> {
        let m = self.m as i64;
        if arith::gcd(t.rem_euclid(m.max(1)) as u64, m as u64) != 1 && m > 1 {
            return Err(Error::InvalidGaloisParameter { t, m: self.m });
        }
        if self.m == 1 {
            return Ok(self.clone());
        }
        let t = t.rem_euclid(m) as usize;
        let mut dense = vec![BigInt::zero(); self.m as usize];
        for (k, c) in self.num.iter().enumerate() {
            dense[k * t % self.m as usize] = c.clone();
        }
        Ok(Self::from_parts(
            self.m,
            reduce_mod_cyclotomic(dense, self.m),
            self.den.clone(),
        ))
    }

    pub fn complex_conjugate(&self) -> CycNum {
        self.galois_apply(-1).expect("-1 is a unit")
    }

    /// Total order used for canonical table orderings: by conductor, then
    /// coordinates with larger rationals first.
    pub fn canonical_cmp(&self, other: &CycNum) -> Ordering {
        self.m.cmp(&other.m).then_with(|| {
            for (a, b) in self.num.iter().zip(&other.num) {
                let lhs = a * &other.den;
                let rhs = b * &self.den;
                match rhs.cmp(&lhs) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }

    /// Nonzero terms `(k, num, den)` of `sum c_k zeta_m^k`, each in lowest terms.
    pub fn terms(&self) -> Vec<(u32, BigInt, BigInt)> {
        self.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let g = c.gcd(&self.den);
                (k as u32, c / &g, &self.den / &g)
            })
            .collect()
    }

    pub fn from_terms(m: u32, terms: &[(u32, BigInt, BigInt)]) -> Result<CycNum> {
        if m == 0 {
            return Err(Error::InvalidInput("conductor must be positive".into()));
        }
        let mut acc = CycNum::zero();
        for (k, n, d) in terms {
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            let r = BigRational::new(n.clone(), d.clone());
            acc = acc.add_ref(&CycNum::root_of_unity(m, *k as i64).scale(&r));
        }
        Ok(acc)
    }

    /// A complex approximation, for display only.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.num.iter().enumerate() {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / self.m as f64;
            let c = c.to_f64().unwrap_or(f64::NAN) / den;
            re += c * angle.cos();
            im += c * angle.sin();
        }
        (re, im)
    }
}

impl Default for CycNum {
    fn default() -> Self {
        CycNum::zero()
    }
}

impl From<i64> for CycNum {
    fn from(n: i64) -> Self {
        CycNum::from_int(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                self.$inner(rhs)
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                self.$inner(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        self.neg_ref()
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        self.neg_ref()
    }
}

impl std::iter::Sum for CycNum {
    fn sum<I: Iterator<Item = CycNum>>(iter: I) -> CycNum {
        iter.fold(CycNum::zero(), |a, b| a.add_ref(&b))
    }
}

/// Terms like `2/3*z7^3`; rationals print plainly.
impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            if self.den.is_one() {
                return write!(f, "{}", self.num[0]);
            }
            return write!(f, "{}/{}", self.num[0], self.den);
        }
        let mut first = true;
        for (k, n, d) in self.terms() {
            let neg = n.is_negative();
            let abs = n.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let coef = if d.is_one() { abs.to_string() } else { format!("{abs}/{d}") };
            match (k, coef.as_str()) {
                (0, c) => write!(f, "{c}")?,
                (1, "1") => write!(f, "z{}", self.m)?,
                (1, c) => write!(f, "{c}*z{}", self.m)?,
                (_, "1") => write!(f, "z{}^{}", self.m, k)?,
                (_, c) => write!(f, "{c}*z{}^{}", self.m, k)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum({self})")
    }
}

/// JSON integer when it fits in i64, decimal string otherwise.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for JsonInt {
    fn from(n: &BigInt) -> Self {
        match n.to_i64() {
            Some(v) => JsonInt::Small(v),
            None => JsonInt::Big(n.to_string()),
        }
    }
}

impl JsonInt {
    fn to_bigint(&self) -> std::result::Result<BigInt, String> {
        match self {
            JsonInt::Small(v) => Ok(BigInt::from(*v)),
            JsonInt::Big(s) => s.parse().map_err(|_| format!("bad integer {s:?}")),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CycNumJson {
    m: u32,
    terms: Vec<(u32, JsonInt, JsonInt)>,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CycNumJson {
            m: self.m,
            terms: self
                .terms()
                .iter()
                .map(|(k, n, d)| (*k, n.into(), d.into()))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = CycNumJson::deserialize(deserializer)?;
        let terms = raw
            .terms
            .iter()
            .map(|(k, n, d)| Ok((*k, n.to_bigint()?, d.to_bigint()?)))
            .collect::<std::result::Result<Vec<_>, String>>()
            .map_err(D::Error::custom)?;
        CycNum::from_terms(raw.m, &terms).map_err(D::Error::custom)
    }
}
