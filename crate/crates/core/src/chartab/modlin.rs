//! Dense linear algebra over a prime field F_l, for small matrices.

use crate::arith::mod_inv;

pub type Matrix = Vec<Vec<u64>>;

fn inv(a: u64, l: u64) -> u64 {
    mod_inv(a, l).expect("nonzero element of a prime field")
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(a: &mut Matrix, l: u64) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(i) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, i);
        let s = inv(a[r][c], l);
        for x in a[r].iter_mut() {
            *x = *x * s % l;
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for k in 0..cols {
                    a[i][k] = (a[i][k] + l - f * a[r][k] % l) % l;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    pivots
}

/// A basis of `{x : A x = 0}`.
pub fn nullspace(a: &Matrix, cols: usize, l: u64) -> Vec<Vec<u64>> {
    let mut m = a.clone();
    let pivots = rref(&mut m, l);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = (l - row[f]) % l;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial `det(xI - A)`, ascending coefficients, via
/// reduction to upper Hessenberg form.
pub fn charpoly(a: &Matrix, l: u64) -> Vec<u64> {
    let n = a.len();
    let mut h = a.clone();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let t = inv(h[m][m - 1], l);
        for j in m + 1..n {
            let u = h[j][m - 1] * t % l;
            if u == 0 {
                continue;
            }
            for k in 0..n {
                h[j][k] = (h[j][k] + l - u * h[m][k] % l) % l;
            }
            for row in h.iter_mut() {
                row[m] = (row[m] + u * row[j]) % l;
            }
        }
    }
    // p_k is the characteristic polynomial of the leading k x k block.
    let mut p: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        let mut next = vec![0u64; k + 1];
        let hkk = h[k - 1][k - 1];
        for (d, &c) in p[k - 1].iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % l;
            next[d] = (next[d] + l - hkk * c % l) % l;
        }
        let mut t = 1u64;
        for i in (1..k).rev() {
            t = t * h[i][i - 1] % l;
            let coef = h[i - 1][k - 1] * t % l;
            for (d, &c) in p[i - 1].iter().enumerate() {
                next[d] = (next[d] + l - coef * c % l) % l;
            }
        }
        p.push(next);
    }
    p.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_rank_one() {
        let l = 7;
        let a = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let ns = nullspace(&a, 3, l);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let dot = (v[0] + 2 * v[1] + 3 * v[2]) % l;
            assert_eq!(dot, 0);
        }
    }

    #[test]
    fn charpoly_matches_determinant_expansion() {
        let l = 101;
        // Companion-like matrix with eigenvalues 1, 2, 3.
        let a = vec![vec![1, 5, 7], vec![0, 2, 9], vec![0, 0, 3]];
        // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
        assert_eq!(charpoly(&a, l), vec![l - 6, 11, l - 6, 1]);
        // A full matrix: [[2,1],[1,2]] has x^2 - 4x + 3.
        assert_eq!(charpoly(&vec![vec![2, 1], vec![1, 2]], l), vec![3, l - 4, 1]);
        let b = vec![vec![0, 1, 0], vec![0, 0, 1], vec![6, l - 11, 6]];
        assert_eq!(charpoly(&b, l), vec![l - 6, 11, l - 6, 1]);
    }
}
