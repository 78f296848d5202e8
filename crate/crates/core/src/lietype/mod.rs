//! Arithmetic criteria for cyclic Sylow p-subgroups in finite simple groups
//! of Lie type, with order formulas and a cross-check against permutation
//! realizations.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::permcore::{FiniteGroup, Limits, PermGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Series {
    #[serde(rename = "A")]
    A,
    #[serde(rename = "2A")]
    TwistedA,
    #[serde(rename = "B")]
    B,
    #[serde(rename = "C")]
    C,
    #[serde(rename = "D")]
    D,
    #[serde(rename = "2D")]
    TwistedD,
    #[serde(rename = "3D4")]
    TrialityD4,
    #[serde(rename = "E6")]
    E6,
    #[serde(rename = "2E6")]
    TwistedE6,
    #[serde(rename = "E7")]
    E7,
}

impl Series {
    pub const ALL: [Series; 10] = [
        Series::A,
        Series::TwistedA,
        Series::B,
        Series::C,
        Series::D,
        Series::TwistedD,
        Series::TrialityD4,
        Series::E6,
        Series::TwistedE6,
        Series::E7,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Series::A => "A",
            Series::TwistedA => "2A",
            Series::B => "B",
            Series::C => "C",
            Series::D => "D",
            Series::TwistedD => "2D",
            Series::TrialityD4 => "3D4",
            Series::E6 => "E6",
            Series::TwistedE6 => "2E6",
            Series::E7 => "E7",
        }
    }

    /// Rank fixed by the series, if any.
    pub fn fixed_rank(self) -> Option<u32> {
        match self {
            Series::TrialityD4 => Some(4),
            Series::E6 | Series::TwistedE6 => Some(6),
            Series::E7 => Some(7),
            _ => None,
        }
    }

    /// Least rank accepted for the classical series.
    pub fn min_rank(self) -> u32 {
        match self {
            Series::A | Series::TwistedA | Series::B | Series::C => 2,
            Series::D | Series::TwistedD => 4,
            s => s.fixed_rank().unwrap(),
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Series {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Series::ALL
            .into_iter()
            .find(|x| x.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnsupportedSeries(format!("unknown series {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieTypeCase {
    pub series: Series,
    pub n: u32,
    pub q: u64,
    pub p: u64,
}

impl LieTypeCase {
    /// Checks the rank, that `q` is a prime power and `p` a prime not
    /// dividing `q`. Returns the defining characteristic.
    pub fn validate(&self) -> Result<u64> {
        match self.series.fixed_rank() {
            Some(r) if self.n != r => {
                return Err(Error::UnsupportedSeries(format!(
                    "{} requires n = {r}, got {}",
                    self.series, self.n
                )))
            }
            None if self.n < self.series.min_rank() => {
                return Err(Error::UnsupportedSeries(format!(
                    "{} requires n >= {}, got {}",
                    self.series,
                    self.series.min_rank(),
                    self.n
                )))
            }
            _ => {}
        }
        let factors = arith::factorize(self.q as u128);
        if factors.len() != 1 {
            return Err(Error::InvalidInput(format!("q = {} is not a prime power", self.q)));
        }
        if !arith::is_prime(self.p) {
            return Err(Error::InvalidInput(format!("p = {} is not prime", self.p)));
        }
        let r = factors[0].0;
        if r == self.p {
            return Err(Error::NotCoprime {
                a: self.q as i64,
                p: self.p,
            });
        }
        Ok(r)
    }
}

/// Least `d >= 1` with `a^d = 1 (mod p)`.
pub fn multiplicative_order(a: i64, p: u64) -> Result<u64> {
    if !arith::is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Err(Error::NotCoprime { a, p });
    }
    Ok(arith::mult_order(r, p))
}

fn pow(q: u64, e: u32) -> BigUint {
    BigUint::from(q).pow(e)
}

fn minus_one(q: u64, e: u32) -> BigUint {
    pow(q, e) - 1u32
}

fn plus_one(q: u64, e: u32) -> BigUint {
    pow(q, e) + 1u32
}

fn gcd_small(a: u64, b: &BigUint) -> BigUint {
    let r = (b % a).try_into().unwrap_or(0u64);
    BigUint::from(arith::gcd(a, r))
}

/// Order of the simple group of the given type.
pub fn simple_order(series: Series, n: u32, q: u64) -> BigUint {
    let mut prod = BigUint::one();
    let (top, div) = match series {
        Series::A => {
            for i in 2..=n + 1 {
                prod *= minus_one(q, i);
            }
            (pow(q, n * (n + 1) / 2), BigUint::from(arith::gcd((n + 1) as u64, q - 1)))
        }
        Series::TwistedA => {
            for i in 2..=n + 1 {
                prod *= if i % 2 == 0 { minus_one(q, i) } else { plus_one(q, i) };
            }
            (pow(q, n * (n + 1) / 2), BigUint::from(arith::gcd((n + 1) as u64, q + 1)))
        }
        Series::B | Series::C => {
            for i in 1..=n {
                prod *= minus_one(q, 2 * i);
            }
            (pow(q, n * n), BigUint::from(arith::gcd(2, q - 1)))
        }
        Series::D | Series::TwistedD => {
            for i in 1..n {
                prod *= minus_one(q, 2 * i);
            }
            let last = if series == Series::D { minus_one(q, n) } else { plus_one(q, n) };
            let div = gcd_small(4, &last);
            prod *= last;
            (pow(q, n * (n - 1)), div)
        }
        Series::TrialityD4 => {
            prod = (pow(q, 8) + pow(q, 4) + 1u32) * minus_one(q, 6) * minus_one(q, 2);
            (pow(q, 12), BigUint::one())
        }
        Series::E6 | Series::TwistedE6 => {
            let twisted = series == Series::TwistedE6;
            for i in [12, 9, 8, 6, 5, 2] {
                prod *= if twisted && i % 2 == 1 { plus_one(q, i) } else { minus_one(q, i) };
            }
            let div = if twisted { arith::gcd(3, q + 1) } else { arith::gcd(3, q - 1) };
            (pow(q, 36), BigUint::from(div))
        }
        Series::E7 => {
            for i in [18, 14, 12, 10, 8, 6, 2] {
                prod *= minus_one(q, i);
            }
            (pow(q, 63), BigUint::from(arith::gcd(2, q - 1)))
        }
    };
    top * prod / div
}

/// A named condition and whether it holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub holds: bool,
}

/// Outcome of the criterion with everything it was computed from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub series: Series,
    pub n: u32,
    pub q: u64,
    pub p: u64,
    pub criterion: bool,
    /// Order of `q` (or of `-q` for 2A) modulo p.
    pub d: u64,
    pub d_of_minus_q: bool,
    pub set: Vec<u64>,
    pub divides: Vec<u64>,
    /// Conditions specific to the series.
    pub conditions: Vec<Condition>,
    /// `p >= 5`, p divides the group order.
    pub hypotheses: Vec<Condition>,
}

fn cond(name: impl Into<String>, holds: bool) -> Condition {
    Condition {
        name: name.into(),
        holds,
    }
}

fn divides_big(p: u64, x: &BigUint) -> bool {
    (x % p).is_zero()
}

/// Evaluates the cyclic-Sylow criterion for one case.
pub fn cyclic_sylow_criterion(case: &LieTypeCase) -> Result<CriterionReport> {
    case.validate()?;
    let LieTypeCase { series, n, q, p } = *case;
    let twisted_a = series == Series::TwistedA;
    let d = multiplicative_order(if twisted_a { -(q as i64) } else { q as i64 }, p)?;
    let set: Vec<u64> = match series {
        Series::A | Series::TwistedA => (2..=n as u64 + 1).collect(),
        Series::B | Series::C => (1..=n as u64).map(|i| 2 * i).collect(),
        Series::D => (1..n as u64).map(|i| 2 * i).chain([n as u64]).collect(),
        Series::TwistedD => (1..n as u64).map(|i| 2 * i).chain([2 * n as u64]).collect(),
        _ => Vec::new(),
    };
    let divides: Vec<u64> = set.iter().copied().filter(|k| k % d == 0).collect();
    let only_one = cond(format!("d divides exactly one member of {set:?}"), divides.len() == 1);
    let conditions = match series {
        Series::A | Series::TwistedA => vec![cond(format!("p > {}", n + 1), p > n as u64 + 1), only_one],
        Series::B | Series::C | Series::D | Series::TwistedD => vec![cond(format!("p > {n}"), p > n as u64), only_one],
        Series::TrialityD4 => vec![
            cond("p does not divide q^4 - 1", !divides_big(p, &minus_one(q, 4))),
            cond("p >= 5", p >= 5),
        ],
        Series::E6 | Series::TwistedE6 | Series::E7 => {
            let bound = if series == Series::E7 { 11 } else { 7 };
            vec![
                cond(
                    "p does not divide (q^4 - 1)(q^6 - 1)",
                    !divides_big(p, &(minus_one(q, 4) * minus_one(q, 6))),
                ),
                cond(format!("p >= {bound}"), p >= bound),
            ]
        }
    };
    let hypotheses = vec![
        cond("p >= 5", p >= 5),
        cond("p divides the group order", divides_big(p, &simple_order(series, n, q))),
    ];
    let criterion = conditions.iter().chain(&hypotheses).all(|c| c.holds);
    Ok(CriterionReport {
        series,
        n,
        q,
        p,
        criterion,
        d,
        d_of_minus_q: twisted_a,
        set,
        divides,
        conditions,
        hypotheses,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub criterion: bool,
    pub group_order: u128,
    pub sylow_order: u128,
    pub sylow_cyclic: bool,
    /// False only when the criterion holds and the Sylow subgroup is not cyclic.
    pub consistent: bool,
}

/// Compares the criterion with the Sylow p-subgroup of a permutation
/// realization of the simple group.
pub fn cross_check_small_instance(case: &LieTypeCase, g: &PermGroup, limits: Limits) -> Result<CrossCheck> {
    let report = cyclic_sylow_criterion(case)?;
    let expected = simple_order(case.series, case.n, case.q);
    if BigUint::from(g.order()) != expected {
        return Err(Error::RealizationMismatch(format!(
            "group of order {} does not realize {}_{}({}) of order {expected}",
            g.order(),
            case.series,
            case.n,
            case.q
        )));
    }
    let fg = FiniteGroup::new(g.clone(), limits)?;
    let sylow = fg.sylow_subgroup(case.p);
    let sylow_cyclic = sylow.is_cyclic(&limits)?;
    Ok(CrossCheck {
        criterion: report.criterion,
        group_order: g.order(),
        sylow_order: sylow.order(),
        sylow_cyclic,
        consistent: !report.criterion || sylow_cyclic,
    })
}

/// Every valid case with `n <= max_rank` (fixed-rank series at their own
/// rank), `q` in `qs` and prime `p <= max_p` not dividing `q`, in a fixed
/// order.
pub fn grid(max_rank: u32, qs: &[u64], max_p: u64) -> Vec<LieTypeCase> {
    let mut out = Vec::new();
    for series in Series::ALL {
        let ranks: Vec<u32> = match series.fixed_rank() {
            Some(r) => vec![r],
            None => (series.min_rank()..=max_rank).collect(),
        };
        for n in ranks {
            for &q in qs {
                for p in (2..=max_p).filter(|&p| arith::is_prime(p) && q % p != 0) {
                    out.push(LieTypeCase { series, n, q, p });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(2, 7).unwrap(), 3);
        assert_eq!(multiplicative_order(1, 11).unwrap(), 1);
        assert_eq!(multiplicative_order(2, 5).unwrap(), 4);
        assert_eq!(multiplicative_order(-2, 5).unwrap(), 4);
        assert!(matches!(multiplicative_order(10, 5), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn known_group_orders() {
        let o = |s, n, q| simple_order(s, n, q).to_string();
        assert_eq!(o(Series::A, 2, 2), "168");
        assert_eq!(o(Series::A, 3, 2), "20160");
        assert_eq!(o(Series::A, 2, 4), "20160");
        assert_eq!(o(Series::TwistedA, 2, 3), "6048");
        assert_eq!(o(Series::TwistedA, 3, 2), "25920");
        assert_eq!(o(Series::B, 2, 3), "25920");
        assert_eq!(o(Series::C, 3, 2), "1451520");
        assert_eq!(o(Series::D, 4, 2), "174182400");
        assert_eq!(o(Series::TwistedD, 4, 2), "197406720");
        assert_eq!(o(Series::TrialityD4, 4, 2), "211341312");
        assert_eq!(o(Series::E6, 6, 2), "214841575522005575270400");
        assert_eq!(o(Series::TwistedE6, 6, 2), "76532479683774853939200");
    }

    #[test]
    fn criterion_examples() {
        let case = |series, n, q, p| LieTypeCase { series, n, q, p };
        let r = cyclic_sylow_criterion(&case(Series::A, 2, 2, 7)).unwrap();
        assert!(r.criterion);
        assert_eq!((r.d, r.set.clone(), r.divides.clone()), (3, vec![2, 3], vec![3]));
        assert!(!cyclic_sylow_criterion(&case(Series::A, 3, 2, 3)).unwrap().criterion);
        let r = cyclic_sylow_criterion(&case(Series::B, 2, 3, 5)).unwrap();
        assert!(r.criterion);
        assert_eq!((r.d, r.divides.clone()), (4, vec![4]));
        assert!(matches!(
            cyclic_sylow_criterion(&case(Series::A, 1, 2, 7)),
            Err(Error::UnsupportedSeries(_))
        ));
        assert!(matches!(
            cyclic_sylow_criterion(&case(Series::A, 2, 6, 7)),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            cyclic_sylow_criterion(&case(Series::A, 2, 9, 3)),
            Err(Error::NotCoprime { .. })
        ));
        assert_eq!("2e6".parse::<Series>().unwrap(), Series::TwistedE6);
    }
}
