use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Square matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct IntMatrix {
    n: usize,
    a: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(n: usize) -> Self {
        IntMatrix {
            n,
            a: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n);
        for i in 0..n {
            m.a[i * n + i] = BigInt::one();
        }
        m
    }

    /// Panics unless every row has length `rows.len()`.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntMatrix {
            n,
            a: rows.iter().flat_map(|r| r.iter().map(|&x| x.into())).collect(),
        }
    }

    pub fn diag<T: Into<BigInt> + Copy>(d: &[T]) -> Self {
        let n = d.len();
        let mut m = IntMatrix::zero(n);
        for (i, &x) in d.iter().enumerate() {
            m.a[i * n + i] = x.into();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.a[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.a.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.a[j * self.n + i] = self.a[i * self.n + j].clone();
            }
        }
        t
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMatrix::identity(self.n)
    }

    pub fn add(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, o.n);
        IntMatrix {
            n: self.n,
            a: self.a.iter().zip(&o.a).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        IntMatrix {
            n: self.n,
            a: self.a.iter().map(|x| x * c).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> IntMatrix {
        let mut acc = IntMatrix::identity(self.n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    /// `M ⊗ M`-style Kronecker product.
    pub fn kronecker(&self, o: &IntMatrix) -> IntMatrix {
        let n = self.n * o.n;
        let mut k = IntMatrix::zero(n);
        for i in 0..self.n {
            for j in 0..self.n {
                for r in 0..o.n {
                    for s in 0..o.n {
                        k.a[(i * o.n + r) * n + j * o.n + s] = self.get(i, j) * o.get(r, s);
                    }
                }
            }
        }
        k
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.a.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.a.iter().map(|x| x.abs()).max().unwrap_or_default()
    }
}

impl<'a> Mul<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;
    fn mul(self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, o.n, "dimension mismatch");
        let n = self.n;
        let mut out = IntMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let x = &self.a[i * n + k];
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.a[i * n + j] += x * &o.a[k * n + j];
                }
            }
        }
        out
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .a
            .chunks(self.n)
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}
