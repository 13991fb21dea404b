//! Exact linear algebra over Q: row reduction, kernels, affine solves.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::intmatrix::IntMatrix;
use crate::error::AlgebraError;

pub type QMatrix = Vec<Vec<BigRational>>;

fn q(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut QMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{v : a v = 0}` for an `rows × ncols` matrix.
pub fn nullspace(a: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let mut m: QMatrix = a.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Scales a rational vector to coprime integers with positive first nonzero entry.
pub fn primitive(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * q(&l)).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.iter().map(|x| x / &g * &sign).collect()
}

/// Integer basis (content 1) of the common eigenvalue-1 space of `ms`.
pub fn fixed_subspace(ms: &[IntMatrix]) -> Result<Vec<Vec<BigInt>>, AlgebraError> {
    let n = ms
        .first()
        .ok_or_else(|| AlgebraError::Usage("fixed_subspace needs at least one matrix".into()))?
        .dim();
    if ms.iter().any(|m| m.dim() != n) {
        return Err(AlgebraError::Usage("matrices differ in dimension".into()));
    }
    let mut rows = QMatrix::new();
    for m in ms {
        for i in 0..n {
            rows.push(
                (0..n)
                    .map(|j| {
                        let e = if i == j { BigInt::one() } else { BigInt::zero() };
                        q(&(m.get(i, j) - e))
                    })
                    .collect(),
            );
        }
    }
    Ok(nullspace(&rows, n).iter().map(|v| primitive(v)).collect())
}

/// Solution set of an affine system: one particular point plus a kernel basis.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSolution {
    pub particular: Vec<BigRational>,
    pub kernel: Vec<Vec<BigRational>>,
}

/// Solves `a x = b`; `None` when inconsistent.
pub fn solve_affine(a: &[Vec<BigRational>], b: &[BigRational], ncols: usize) -> Option<AffineSolution> {
    let mut m: QMatrix = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut particular = vec![BigRational::zero(); ncols];
    for (r, &p) in pivots.iter().enumerate() {
        particular[p] = m[r][ncols].clone();
    }
    Some(AffineSolution {
        particular,
        kernel: nullspace(a, ncols),
    })
}

/// Deletion filter: indices of a minimal subset of equations that is already inconsistent.
/// Returns `None` when the full system is consistent.
pub fn minimal_inconsistent(a: &[Vec<BigRational>], b: &[BigRational], ncols: usize) -> Option<Vec<usize>> {
    let consistent = |idx: &[usize]| {
        let ra: QMatrix = idx.iter().map(|&i| a[i].clone()).collect();
        let rb: Vec<BigRational> = idx.iter().map(|&i| b[i].clone()).collect();
        solve_affine(&ra, &rb, ncols).is_some()
    };
    let mut keep: Vec<usize> = (0..a.len()).collect();
    if consistent(&keep) {
        return None;
    }
    let mut i = 0;
    while i < keep.len() {
        let mut trial = keep.clone();
        trial.remove(i);
        if consistent(&trial) {
            i += 1;
        } else {
            keep = trial;
        }
    }
    Some(keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn identity_fixes_everything() {
        let b = fixed_subspace(&[IntMatrix::identity(3)]).unwrap();
        assert_eq!(b.len(), 3);
    }

    #[test]
    fn order_three_matrix_fixes_canonical() {
        let m = IntMatrix::from_rows(&[vec![1i64, 1, 1], vec![1, 0, 0], vec![-2, 0, -1]]);
        let b = fixed_subspace(&[m]).unwrap();
        let want: Vec<BigInt> = [1, 1, -1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(b, vec![want]);
    }

    #[test]
    fn empty_list_is_usage_error() {
        assert!(fixed_subspace(&[]).is_err());
    }

    #[test]
    fn inconsistent_core() {
        // x = 1, y = 2, x + y = 4, z = 0
        let a = vec![
            vec![r(1), r(0), r(0)],
            vec![r(0), r(1), r(0)],
            vec![r(1), r(1), r(0)],
            vec![r(0), r(0), r(1)],
        ];
        let b = vec![r(1), r(2), r(4), r(0)];
        assert_eq!(minimal_inconsistent(&a, &b, 3), Some(vec![0, 1, 2]));
        assert!(solve_affine(&a[..2], &b[..2], 3).is_some());
    }

    proptest! {
        #[test]
        fn fixed_vectors_are_fixed(v in proptest::collection::vec(-3i64..4, 16)) {
            let m = IntMatrix::from_rows(&v.chunks(4).map(|r| r.to_vec()).collect::<Vec<_>>());
            let m2 = &m * &m;
            for b in fixed_subspace(&[m.clone(), m2]).unwrap() {
                prop_assert_eq!(m.apply(&b), b);
            }
        }

        #[test]
        fn affine_solution_satisfies(v in proptest::collection::vec(-3i64..4, 12), x in proptest::collection::vec(-3i64..4, 4)) {
            let a: QMatrix = v.chunks(4).map(|row| row.iter().map(|&e| r(e)).collect()).collect();
            let xs: Vec<BigRational> = x.iter().map(|&e| r(e)).collect();
            let b: Vec<BigRational> = a.iter().map(|row| row.iter().zip(&xs).map(|(p, q)| p * q).sum()).collect();
            let sol = solve_affine(&a, &b, 4).expect("consistent by construction");
            for (row, bi) in a.iter().zip(&b) {
                let lhs: BigRational = row.iter().zip(&sol.particular).map(|(p, q)| p * q).sum();
                prop_assert_eq!(&lhs, bi);
            }
        }
    }
}
