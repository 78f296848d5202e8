//! Ordinary character tables: computation, validation, storage, fusion.

mod dixon;
mod modlin;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use dixon::dixon_prime;

use crate::arith;
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::permcore::{FiniteGroup, Limits, PermGroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfo {
    pub order: u64,
    pub size: u64,
    /// 1-based images of the canonical representative.
    pub representative: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    name: String,
    order: u64,
    exponent: u64,
    classes: Vec<ClassInfo>,
    power_maps: BTreeMap<u64, Vec<usize>>,
    characters: Vec<Vec<CycNum>>,
}

/// A validated ordinary character table.
///
/// Classes follow the canonical class order of the group; characters are
/// sorted by degree, then by value row.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterTable {
    name: String,
    order: u64,
    exponent: u64,
    classes: Vec<ClassInfo>,
    power_maps: BTreeMap<u64, Vec<usize>>,
    characters: Vec<Vec<CycNum>>,
    inverse: Vec<usize>,
    conjugates: Vec<Vec<CycNum>>,
}

fn row_cmp(a: &[CycNum], b: &[CycNum]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.canonical_cmp(y))
        .find(|o| *o != Ordering::Equal)
        .unwrap_or(Ordering::Equal)
}

fn degree_of(row: &[CycNum]) -> Option<u64> {
    row[0].to_i64().filter(|&d| d > 0).map(|d| d as u64)
}

impl CharacterTable {
    /// Computes the table of an enumerated group.
    pub fn compute(g: &FiniteGroup, name: &str) -> Result<Self> {
        let mut rows = dixon::irreducible_characters(g)?;
        rows.sort_by(|a, b| degree_of(a).cmp(&degree_of(b)).then_with(|| row_cmp(a, b)));
        let exponent = g.exponent();
        let power_maps = arith::prime_divisors(exponent as u128)
            .into_iter()
            .map(|q| (q, (0..g.classes().len()).map(|i| g.power_class(i, q)).collect()))
            .collect();
        let classes = g
            .classes()
            .iter()
            .map(|c| ClassInfo {
                order: c.element_order,
                size: c.size as u64,
                representative: c.representative.images_one_based(),
            })
            .collect();
        Self::from_parts(name.to_string(), g.order() as u64, exponent, classes, power_maps, rows)
    }

    fn from_parts(
        name: String,
        order: u64,
        exponent: u64,
        classes: Vec<ClassInfo>,
        power_maps: BTreeMap<u64, Vec<usize>>,
        characters: Vec<Vec<CycNum>>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidTable(msg));
        let r = classes.len();
        if r == 0 || characters.len() != r || characters.iter().any(|row| row.len() != r) {
            return bad(format!("{} characters for {r} classes", characters.len()));
        }
        let conjugates: Vec<Vec<CycNum>> = characters
            .iter()
            .map(|row| row.iter().map(CycNum::complex_conjugate).collect())
            .collect();
        let inverse = (0..r)
            .map(|i| {
                (0..r)
                    .find(|&j| (0..r).all(|c| characters[c][j] == conjugates[c][i]))
                    .ok_or_else(|| Error::InvalidTable(format!("class {i} has no inverse class")))
            })
            .collect::<Result<Vec<_>>>()?;
        let table = CharacterTable {
            name,
            order,
            exponent,
            classes,
            power_maps,
            characters,
            inverse,
            conjugates,
        };
        table.validate()?;
        Ok(table)
    }

    /// Exact consistency checks: both orthogonality relations, degrees,
    /// class sizes, power maps and integrality.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidTable(msg));
        let r = self.classes.len();
        let order = self.order as u128;
        if self.classes[0].size != 1 || self.classes[0].order != 1 {
            return bad("first class is not the identity".into());
        }
        if self.classes.iter().map(|c| c.size as u128).sum::<u128>() != order {
            return bad("class sizes do not sum to the group order".into());
        }
        if self.classes.iter().any(|c| order % c.size as u128 != 0 || self.exponent % c.order != 0) {
            return bad("class size or element order incompatible with the group".into());
        }
        let mut degree_sum = 0u128;
        for (i, row) in self.characters.iter().enumerate() {
            let d = degree_of(row).ok_or_else(|| Error::InvalidTable(format!("character {i} has no positive degree")))?;
            if order % d as u128 != 0 {
                return bad(format!("degree {d} does not divide {order}"));
            }
            degree_sum += (d as u128) * (d as u128);
            for (c, v) in row.iter().enumerate() {
                if !v.is_algebraic_integer() || self.classes[c].order % v.conductor() as u64 != 0 {
                    return bad(format!("value {v} of character {i} is not admissible"));
                }
            }
        }
        if degree_sum != order {
            return bad(format!("sum of squared degrees is {degree_sum}, not {order}"));
        }
        let order_q = CycNum::from_bigint(BigInt::from(self.order));
        for i in 0..r {
            for j in i..r {
                let ip = self.inner_product_unscaled(&self.characters[i], &self.conjugates[j]);
                let expected = if i == j { order_q.clone() } else { CycNum::zero() };
                if ip != expected {
                    return bad(format!("rows {i} and {j} are not orthonormal"));
                }
            }
        }
        for a in 0..r {
            for b in a..r {
                let s: CycNum = (0..r)
                    .map(|c| &self.characters[c][a] * &self.conjugates[c][b])
                    .sum();
                let expected = if a == b {
                    CycNum::from_bigint(BigInt::from(self.order / self.classes[a].size))
                } else {
                    CycNum::zero()
                };
                if s != expected {
                    return bad(format!("columns {a} and {b} violate orthogonality"));
                }
            }
        }
        for (&q, map) in &self.power_maps {
            if map.len() != r || map.iter().any(|&k| k >= r) {
                return bad(format!("malformed {q}-power map"));
            }
            for row in self.characters.iter().filter(|row| degree_of(row) == Some(1)) {
                for c in 0..r {
                    let mut pow = CycNum::one();
                    for _ in 0..q {
                        pow = &pow * &row[c];
                    }
                    if row[map[c]] != pow {
                        return bad(format!("{q}-power map inconsistent with a linear character"));
                    }
                }
            }
        }
        Ok(())
    }

    /// `sum_K |K| a(K) b(K)`.
    fn inner_product_unscaled(&self, a: &[CycNum], b: &[CycNum]) -> CycNum {
        a.iter()
            .zip(b)
            .zip(&self.classes)
            .filter(|((x, y), _)| !x.is_zero() && !y.is_zero())
            .map(|((x, y), c)| (x * y).mul_ref(&CycNum::from_int(c.size as i64)))
            .sum()
    }

    /// `<a, b> = (1/|G|) sum_K |K| a(K) conj(b(K))`.
    pub fn inner_product(&self, a: &[CycNum], b: &[CycNum]) -> CycNum {
        let conj: Vec<CycNum> = b.iter().map(CycNum::complex_conjugate).collect();
        let s = self.inner_product_unscaled(a, &conj);
        s.scale(&BigRational::new(BigInt::one(), BigInt::from(self.order)))
    }

    /// Multiplicity of each irreducible character in a class function.
    pub fn decompose(&self, f: &[CycNum]) -> Vec<CycNum> {
        self.characters.iter().map(|chi| self.inner_product(f, chi)).collect()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn characters(&self) -> &[Vec<CycNum>] {
        &self.characters
    }

    pub fn character(&self, i: usize) -> &[CycNum] {
        &self.characters[i]
    }

    pub fn degree(&self, i: usize) -> u64 {
        degree_of(&self.characters[i]).expect("validated")
    }

    pub fn degrees(&self) -> Vec<u64> {
        (0..self.characters.len()).map(|i| self.degree(i)).collect()
    }

    pub fn power_map(&self, q: u64) -> Option<&[usize]> {
        self.power_maps.get(&q).map(Vec::as_slice)
    }

    pub fn inverse_class(&self, class: usize) -> usize {
        self.inverse[class]
    }

    /// Indices of classes of elements of order prime to `p`.
    pub fn p_regular_classes(&self, p: u64) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&c| self.classes[c].order % p != 0)
            .collect()
    }

    /// The values of `chi` on the p-regular classes, in class order.
    pub fn restrict_to_p_regular(&self, chi: &[CycNum], p: u64) -> Vec<CycNum> {
        self.p_regular_classes(p).into_iter().map(|c| chi[c].clone()).collect()
    }

    /// Index of a character row, if it is irreducible.
    pub fn find_character(&self, row: &[CycNum]) -> Option<usize> {
        self.characters.iter().position(|c| c == row)
    }

    pub fn to_json(&self) -> String {
        let file = TableFile {
            name: self.name.clone(),
            order: self.order,
            exponent: self.exponent,
            classes: self.classes.clone(),
            power_maps: self.power_maps.clone(),
            characters: self.characters.clone(),
        };
        let mut s = serde_json::to_string(&file).expect("table serializes");
        s.push('\n');
        s
    }

    /// Parses and re-validates a stored table.
    pub fn from_json(text: &str) -> Result<Self> {
        let f: TableFile = serde_json::from_str(text)?;
        Self::from_parts(f.name, f.order, f.exponent, f.classes, f.power_maps, f.characters)
    }

    /// Whether the stored classes agree with those of an enumerated group.
    pub fn matches_group(&self, g: &FiniteGroup) -> bool {
        self.order as u128 == g.order()
            && self.classes.len() == g.classes().len()
            && self.classes.iter().zip(g.classes()).all(|(a, b)| {
                a.order == b.element_order
                    && a.size as u128 == b.size
                    && a.representative == b.representative.images_one_based()
            })
    }
}

/// The table of a permutation group under the given limits.
pub fn character_table(group: &PermGroup, limits: Limits) -> Result<CharacterTable> {
    CharacterTable::compute(&FiniteGroup::new(group.clone(), limits)?, "")
}

/// Hex SHA-256 of the degree and generator images.
pub fn cache_key(group: &PermGroup) -> String {
    let mut h = Sha256::new();
    h.update(group.degree().to_string());
    for g in group.generator_images() {
        h.update(b";");
        let text: Vec<String> = g.iter().map(u32::to_string).collect();
        h.update(text.join(","));
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Loads a cached table for `g`, or computes and stores it.
///
/// A cached file that fails validation or disagrees with the group is
/// recomputed and overwritten.
pub fn load_or_compute(g: &FiniteGroup, name: &str, cache_dir: Option<&Path>) -> Result<CharacterTable> {
    let Some(dir) = cache_dir else {
        return CharacterTable::compute(g, name);
    };
    let path: PathBuf = dir.join(format!("{}.json", cache_key(g.group())));
    if let Ok(text) = std::fs::read_to_string(&path) {
        if let Ok(table) = CharacterTable::from_json(&text) {
            if table.matches_group(g) {
                let mut table = table;
                table.name = name.to_string();
                return Ok(table);
            }
        }
    }
    let table = CharacterTable::compute(g, name)?;
    std::fs::create_dir_all(dir)?;
    std::fs::write(&path, table.to_json())?;
    Ok(table)
}

/// Class map from a subgroup `H` into `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFusion {
    pub map: Vec<usize>,
}

pub fn class_fusion(h: &FiniteGroup, g: &FiniteGroup) -> Result<ClassFusion> {
    if h.degree() != g.degree() || !h.group().generators().iter().all(|x| g.contains(x)) {
        return Err(Error::NotASubgroup);
    }
    let map = h
        .classes()
        .iter()
        .map(|c| g.class_of(&c.representative).ok_or(Error::NotASubgroup))
        .collect::<Result<_>>()?;
    Ok(ClassFusion { map })
}

/// Restriction of a class function of G along a fusion map.
pub fn restrict(chi: &[CycNum], fusion: &ClassFusion) -> Vec<CycNum> {
    fusion.map.iter().map(|&c| chi[c].clone()).collect()
}

/// Induction of a class function of H to G:
/// `f^G(K) = |C_G(x_K)| sum_{L -> K} f(L) / |C_H(x_L)|`.
pub fn induce(f: &[CycNum], h: &CharacterTable, g: &CharacterTable, fusion: &ClassFusion) -> Vec<CycNum> {
    let mut out = vec![CycNum::zero(); g.num_classes()];
    for (l, &k) in fusion.map.iter().enumerate() {
        if f[l].is_zero() {
            continue;
        }
        let cent_h = h.order() / h.classes()[l].size;
        let cent_g = g.order() / g.classes()[k].size;
        let r = BigRational::new(BigInt::from(cent_g), BigInt::from(cent_h));
        out[k] = out[k].add_ref(&f[l].scale(&r));
    }
    out
}

impl CharacterTable {
    /// Whether a class function is a generalized character with
    /// nonnegative integer multiplicities.
    pub fn is_character(&self, f: &[CycNum]) -> bool {
        self.decompose(f).iter().all(|m| {
            m.to_integer()
                .is_some_and(|n| n >= BigInt::zero())
        })
    }
}
