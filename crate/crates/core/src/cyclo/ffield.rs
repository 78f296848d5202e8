use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use super::cycnum::CycNum;
use super::poly::{cyclotomic, fp};
use crate::arith;
use crate::error::{Error, Result};

/// An element of `F_p[x]/(f)` for a fixed irreducible `f` of degree `r`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteFieldElem {
    p: u64,
    modulus: Arc<Vec<u64>>,
    /// Exactly `r` coordinates, ascending powers of `x`.
    coords: Vec<u64>,
}

impl FiniteFieldElem {
    fn from_poly(p: u64, modulus: &Arc<Vec<u64>>, poly: &[u64]) -> Self {
        let r = modulus.len() - 1;
        let mut coords = fp::rem(poly, modulus, p);
        coords.resize(r, 0);
        FiniteFieldElem {
            p,
            modulus: modulus.clone(),
            coords,
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// The prime-field value, if the element lies in `F_p`.
    pub fn as_prime_field(&self) -> Option<u64> {
        self.coords[1..].iter().all(|&c| c == 0).then(|| self.coords[0])
    }

    fn check(&self, other: &Self) {
        assert!(
            self.p == other.p && self.modulus == other.modulus,
            "finite field elements from different fields"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        Self::from_poly(self.p, &self.modulus, &fp::add(&self.coords, &other.coords, self.p))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        Self::from_poly(self.p, &self.modulus, &fp::sub(&self.coords, &other.coords, self.p))
    }

    pub fn neg(&self) -> Self {
        Self::from_poly(self.p, &self.modulus, &fp::sub(&[], &self.coords, self.p))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        Self::from_poly(self.p, &self.modulus, &fp::mul(&self.coords, &other.coords, self.p))
    }
}

impl fmt::Display for FiniteFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.as_prime_field() {
            return write!(f, "{c}");
        }
        let mut first = true;
        for (k, &c) in self.coords.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}*t")?,
                (k, 1) => write!(f, "t^{k}")?,
                (k, c) => write!(f, "{c}*t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FiniteFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}^{}({self})", self.p, self.coords.len())
    }
}

/// Serialized as its coordinate vector.
impl Serialize for FiniteFieldElem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(serializer)
    }
}

/// A fixed prime ideal over `p` in `Z[zeta_m]`, given by the residue field
/// `F_p[x]/(f)` and the image of `zeta_m`.
#[derive(Debug)]
pub struct ReductionData {
    p: u64,
    m: u32,
    m_prime: u32,
    modulus: Arc<Vec<u64>>,
    /// `x^j mod f` for `j < m'`; `x` is the chosen primitive `m'`-th root.
    theta_powers: Vec<FiniteFieldElem>,
    /// `zeta_m` maps to `theta^zeta_exp`.
    zeta_exp: u64,
}

impl ReductionData {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::InvalidInput("conductor must be positive".into()));
        }
        let m_prime = arith::p_prime_part(p, m as u128) as u32;
        let p_power = m / m_prime;
        let phi: Vec<u64> = cyclotomic(m_prime)
            .iter()
            .map(|&c| c.rem_euclid(p as i64) as u64)
            .collect();
        let r = arith::mult_order(p % m_prime as u64, m_prime as u64).max(1) as usize;
        let modulus = if m_prime == 1 {
            vec![0, 1]
        } else {
            fp::equal_degree_factors(&phi, r, p).swap_remove(0)
        };
        let modulus = Arc::new(modulus);
        let x = FiniteFieldElem::from_poly(p, &modulus, &[0, 1]);
        let one = FiniteFieldElem::from_poly(p, &modulus, &[1]);
        // With m' = 1 the residue field is F_p and x = 0 must not be used.
        let theta = if m_prime == 1 { one.clone() } else { x };
        let mut theta_powers = vec![one];
        for j in 1..m_prime as usize {
            theta_powers.push(theta_powers[j - 1].mul(&theta));
        }
        let zeta_exp = if m_prime == 1 {
            0
        } else {
            arith::mod_inv(p_power as u64 % m_prime as u64, m_prime as u64).expect("coprime")
        };
        Ok(ReductionData {
            p,
            m,
            m_prime,
            modulus,
            theta_powers,
            zeta_exp,
        })
    }

    /// Shared reduction data for `(p, m)`, computed once per process.
    pub fn cached(p: u64, m: u32) -> Result<Arc<Self>> {
        static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Arc<ReductionData>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(d) = cache.lock().unwrap().get(&(p, m)) {
            return Ok(d.clone());
        }
        let data = Arc::new(ReductionData::new(p, m)?);
        cache.lock().unwrap().insert((p, m), data.clone());
        Ok(data)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    /// The irreducible factor of `Phi_{m'}` defining the residue field.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FiniteFieldElem {
        FiniteFieldElem::from_poly(self.p, &self.modulus, &[])
    }

    pub fn from_int(&self, n: i64) -> FiniteFieldElem {
        FiniteFieldElem::from_poly(self.p, &self.modulus, &[n.rem_euclid(self.p as i64) as u64])
    }

    /// The image of an algebraic integer of `Q(zeta_m)` in the residue field.
    pub fn reduce(&self, a: &CycNum) -> Result<FiniteFieldElem> {
        if !a.is_algebraic_integer() {
            return Err(Error::NotAnAlgebraicInteger);
        }
        let c = a.conductor();
        if self.m % c != 0 {
            return Err(Error::ConductorMismatch {
                value: c,
                modulus: self.m,
            });
        }
        let step = (self.m / c) as u64 * self.zeta_exp % self.m_prime as u64;
        let p = BigInt::from(self.p);
        let mut acc = self.zero();
        let (coeffs, _) = a.coefficients();
        for (k, coef) in coeffs.iter().enumerate() {
            let c = coef.mod_floor(&p).to_u64().unwrap();
            if c == 0 {
                continue;
            }
            let j = (k as u64 * step % self.m_prime as u64) as usize;
            let term = self.theta_powers[j].mul(&self.from_int(c as i64));
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

/// The reduction map for `(p, m)` using the shared reduction data.
pub fn reduce_mod_p(a: &CycNum, p: u64, m: u32) -> Result<FiniteFieldElem> {
    ReductionData::cached(p, m)?.reduce(a)
}
