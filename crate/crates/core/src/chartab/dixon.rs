//! Dixon–Schneider: irreducible characters as common eigenvectors of the
//! class multiplication matrices, computed over F_l and lifted exactly.

use super::modlin::{charpoly, nullspace, rref, Matrix};
use crate::arith;
use crate::cyclo::poly::fp;
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::permcore::FiniteGroup;

/// The prime field used for a group: least `l = 1 (mod exponent)` with
/// `l > 2 sqrt(|G|)`.
pub fn dixon_prime(order: u128, exponent: u64) -> u64 {
    let bound = 2 * (order as f64).sqrt().ceil() as u64;
    arith::least_prime_one_mod(exponent, bound)
}

/// `M[i][k]` = number of `x` in class `j` with `x^-1 z_k` in class `i`.
fn class_matrix(g: &FiniteGroup, j: usize, l: u64) -> Matrix {
    let r = g.classes().len();
    let mut m = vec![vec![0u64; r]; r];
    let inverses: Vec<_> = g
        .class_members(j)
        .iter()
        .map(|&x| g.elements()[x].inverse())
        .collect();
    for (k, class) in g.classes().iter().enumerate() {
        for x_inv in &inverses {
            let i = g.class_of(&x_inv.then(&class.representative)).expect("closed under products");
            m[i][k] += 1;
        }
    }
    for row in m.iter_mut() {
        for x in row.iter_mut() {
            *x %= l;
        }
    }
    m
}

/// Splits each subspace (rows are a basis in reduced echelon form) into
/// eigenspaces of `m`.
fn split(spaces: Vec<Matrix>, m: &Matrix, l: u64) -> Result<Vec<Matrix>> {
    let mut out = Vec::new();
    for basis in spaces {
        let d = basis.len();
        if d == 1 {
            out.push(basis);
            continue;
        }
        let mut probe = basis.clone();
        let pivots = rref(&mut probe, l);
        // Restricted action: column t holds the coordinates of M w_t.
        let mut a = vec![vec![0u64; d]; d];
        for (t, w) in basis.iter().enumerate() {
            let mw: Vec<u64> = m
                .iter()
                .map(|row| row.iter().zip(w).fold(0u64, |s, (&x, &y)| (s + x * y) % l))
                .collect();
            for (s, &pc) in pivots.iter().enumerate() {
                a[s][t] = mw[pc];
            }
        }
        let roots = fp::roots(&charpoly(&a, l), l);
        let mut total = 0;
        for lambda in roots {
            let mut shifted = a.clone();
            for (s, row) in shifted.iter_mut().enumerate() {
                row[s] = (row[s] + l - lambda) % l;
            }
            let kernel = nullspace(&shifted, d, l);
            total += kernel.len();
            let mut sub: Matrix = kernel
                .iter()
                .map(|coef| {
                    let mut v = vec![0u64; m.len()];
                    for (c, w) in coef.iter().zip(&basis) {
                        for (vi, wi) in v.iter_mut().zip(w) {
                            *vi = (*vi + c * wi) % l;
                        }
                    }
                    v
                })
                .collect();
            rref(&mut sub, l);
            out.push(sub);
        }
        if total != d {
            return Err(Error::InternalInconsistency(
                "class matrix is not diagonalizable over the splitting prime".into(),
            ));
        }
    }
    Ok(out)
}

/// Irreducible characters as rows indexed by the group's canonical classes,
/// in no particular order.
pub fn irreducible_characters(g: &FiniteGroup) -> Result<Vec<Vec<CycNum>>> {
    let classes = g.classes();
    let r = classes.len();
    let order = g.order();
    let exponent = g.exponent();
    if r == 1 {
        return Ok(vec![vec![CycNum::one()]]);
    }
    let l = dixon_prime(order, exponent);

    let identity: Matrix = (0..r)
        .map(|i| (0..r).map(|k| u64::from(i == k)).collect())
        .collect();
    let mut spaces = vec![identity];
    let mut by_size: Vec<usize> = (1..r).collect();
    by_size.sort_by_key(|&j| (classes[j].size, j));
    for j in by_size {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m = class_matrix(g, j, l);
        spaces = split(spaces, &m, l)?;
    }
    if spaces.len() != r {
        return Err(Error::InternalInconsistency(format!(
            "found {} eigenspaces for {r} classes",
            spaces.len()
        )));
    }

    let inverse: Vec<usize> = (0..r).map(|i| g.inverse_class(i)).collect();
    let size_mod: Vec<u64> = classes.iter().map(|c| (c.size % l as u128) as u64).collect();
    let order_mod = (order % l as u128) as u64;
    let z = arith::mod_pow(arith::primitive_root(l), (l - 1) / exponent, l);

    let mut rows = Vec::with_capacity(r);
    for space in spaces {
        let w = &space[0];
        let lead = arith::mod_inv(w[0], l).ok_or_else(|| {
            Error::InternalInconsistency("central character vanishes at the identity".into())
        })?;
        let omega: Vec<u64> = w.iter().map(|&x| x * lead % l).collect();
        // chi(1)^2 = |G| / sum_i omega_i omega_i' / |C_i|
        let s = (0..r).fold(0u64, |acc, i| {
            let t = omega[i] * omega[inverse[i]] % l * arith::mod_inv(size_mod[i], l).unwrap() % l;
            (acc + t) % l
        });
        let sq = order_mod * arith::mod_inv(s, l).unwrap() % l;
        let bound = (order as f64).sqrt() as u64 + 1;
        let degree = (1..=bound)
            .find(|&d| d * d % l == sq && (d * d) as u128 <= order)
            .ok_or_else(|| Error::InternalInconsistency("no admissible degree".into()))?;
        let values: Vec<u64> = (0..r)
            .map(|i| omega[i] * degree % l * arith::mod_inv(size_mod[i], l).unwrap() % l)
            .collect();
        rows.push(lift_row(g, &values, degree, z, exponent, l)?);
    }
    Ok(rows)
}

/// Recovers exact values from residues via eigenvalue multiplicities:
/// `chi(x) = sum_k mu_k zeta_o^k` with `mu_k = (1/o) sum_t chi(x^t) zeta_o^(-kt)`.
fn lift_row(g: &FiniteGroup, values: &[u64], degree: u64, z: u64, exponent: u64, l: u64) -> Result<Vec<CycNum>> {
    let mut row = Vec::with_capacity(values.len());
    for (i, class) in g.classes().iter().enumerate() {
        let o = class.element_order;
        let zo = arith::mod_pow(z, exponent / o, l);
        let powers: Vec<u64> = (0..o).map(|t| values[g.power_class(i, t)]).collect();
        let o_inv = arith::mod_inv(o % l, l).unwrap();
        let mut mult = Vec::with_capacity(o as usize);
        for k in 0..o {
            let zk_inv = arith::mod_inv(arith::mod_pow(zo, k, l), l).unwrap();
            let mut acc = 0u64;
            let mut factor = 1u64;
            for &v in &powers {
                acc = (acc + v * factor) % l;
                factor = factor * zk_inv % l;
            }
            let mu = acc * o_inv % l;
            if mu > degree {
                return Err(Error::InternalInconsistency(format!(
                    "eigenvalue multiplicity {mu} exceeds degree {degree}"
                )));
            }
            mult.push(mu as i64);
        }
        if mult.iter().sum::<i64>() != degree as i64 {
            return Err(Error::InternalInconsistency("multiplicities do not sum to the degree".into()));
        }
        row.push(CycNum::from_int_exponents(o as u32, &mult));
    }
    Ok(row)
}
