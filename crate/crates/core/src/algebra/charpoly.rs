//! Characteristic polynomials, Sturm root isolation and certified spectral radii.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::intmatrix::IntMatrix;
use super::scalar::Scalar;
use super::upoly::UPoly;

/// Integer polynomial in `t`, lowest degree first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntPoly(pub Vec<BigInt>);

impl IntPoly {
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &IntMatrix) -> IntMatrix {
        let n = m.dim();
        let mut acc = IntMatrix::zero(n);
        for c in self.0.iter().rev() {
            acc = (&acc * m).add(&IntMatrix::identity(n).scale(c));
        }
        acc
    }

    pub fn to_upoly(&self) -> UPoly {
        UPoly::new(self.0.iter().map(|c| Scalar::from_bigint(c.clone())).collect())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let coef = if mag.is_one() && i > 0 {
                String::new()
            } else if i > 0 {
                format!("{mag}")
            } else {
                mag.to_string()
            };
            match i {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}t")?,
                _ => write!(f, "{coef}t^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `det(tI - m)` by Faddeev-LeVerrier; every division is exact over the integers.
pub fn char_poly(m: &IntMatrix) -> IntPoly {
    let n = m.dim();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut mk = IntMatrix::zero(n);
    for k in 1..=n {
        mk = (m * &mk).add(&IntMatrix::identity(n).scale(&c[n - k + 1]));
        let tr = (m * &mk).trace();
        c[n - k] = -(tr / BigInt::from(k));
    }
    IntPoly(c)
}

/// Closed rational interval.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatInterval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains_f64(&self, x: f64, slack: f64) -> bool {
        let lo = self.lo.to_f64().unwrap_or(f64::NAN);
        let hi = self.hi.to_f64().unwrap_or(f64::NAN);
        x >= lo - slack && x <= hi + slack
    }

    pub fn midpoint_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / BigRational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    fn abs(&self) -> RatInterval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            RatInterval {
                lo: -self.hi.clone(),
                hi: -self.lo.clone(),
            }
        } else {
            RatInterval {
                lo: BigRational::zero(),
                hi: (-self.lo.clone()).max(self.hi.clone()),
            }
        }
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

fn sign_at(p: &UPoly, x: &BigRational) -> i32 {
    let v = p.eval(&Scalar::from_rational(x.clone()));
    let r = v.re();
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Sturm chain of a square-free polynomial.
pub fn sturm_chain(p: &UPoly) -> Vec<UPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]).expect("nonzero");
        if r.is_zero() {
            break;
        }
        chain.push(r.scale(&-Scalar::one()));
    }
    chain
}

fn variations(chain: &[UPoly], x: &BigRational) -> usize {
    let signs: Vec<i32> = chain.iter().map(|q| sign_at(q, x)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots in `(a, b]`.
pub fn count_roots(chain: &[UPoly], a: &BigRational, b: &BigRational) -> usize {
    variations(chain, a).saturating_sub(variations(chain, b))
}

/// Square-free part.
pub fn squarefree(p: &UPoly) -> UPoly {
    let g = p.gcd(&p.derivative());
    p.div_rem(&g).expect("nonzero gcd").0.monic()
}

fn cauchy_bound(p: &UPoly) -> BigRational {
    let lc = p.lc();
    let m = p.coeffs()[..p.degree()]
        .iter()
        .map(|c| (c / &lc).re().abs())
        .max()
        .unwrap_or_else(BigRational::zero);
    m + BigRational::one()
}

/// Disjoint intervals `(lo, hi]`, in increasing order, each holding exactly one
/// real root of the square-free `p`. Exact roots hit by bisection come back as
/// degenerate intervals.
pub fn isolate_real_roots(p: &UPoly) -> Vec<RatInterval> {
    if p.degree() == 0 {
        return Vec::new();
    }
    let chain = sturm_chain(p);
    let b = cauchy_bound(p);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = count_roots(&chain, &lo, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(RatInterval { lo, hi });
            continue;
        }
        let mid = (&lo + &hi) / BigRational::from_integer(2.into());
        if sign_at(p, &mid) == 0 {
            out.push(RatInterval {
                lo: mid.clone(),
                hi: mid.clone(),
            });
        }
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// Shrinks an isolating interval below width `tol`.
pub fn refine(p: &UPoly, iv: &RatInterval, tol: &BigRational) -> RatInterval {
    let chain = sturm_chain(p);
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    if sign_at(p, &hi) == 0 {
        return RatInterval { lo: hi.clone(), hi };
    }
    while &(&hi - &lo) > tol {
        let mid = (&lo + &hi) / BigRational::from_integer(2.into());
        if sign_at(p, &mid) == 0 {
            return RatInterval {
                lo: mid.clone(),
                hi: mid,
            };
        }
        if count_roots(&chain, &lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    RatInterval { lo, hi }
}

fn sqrt_floor(x: &BigRational, scale: &BigInt) -> BigRational {
    let s2 = scale * scale;
    let v = (x * BigRational::from_integer(s2)).floor().to_integer();
    let r = if v.is_negative() { BigInt::zero() } else { v.sqrt() };
    BigRational::new(r, scale.clone())
}

fn sqrt_ceil(x: &BigRational, scale: &BigInt) -> BigRational {
    let s2 = scale * scale;
    let v = (x * BigRational::from_integer(s2)).ceil().to_integer();
    let mut r = if v.is_negative() { BigInt::zero() } else { v.sqrt() };
    if &r * &r < v {
        r += 1;
    }
    BigRational::new(r, scale.clone())
}

/// Interval of width at most `tol` containing the largest modulus of an eigenvalue.
///
/// Real spectra are read off the extreme roots of the characteristic polynomial.
/// Otherwise the squared radius is the largest real root of the characteristic
/// polynomial of `m ⊗ m` (it equals `λ·conj(λ)` for a dominant `λ`).
pub fn spectral_radius(m: &IntMatrix, tol: &BigRational) -> RatInterval {
    assert!(tol.is_positive(), "tolerance must be positive");
    let p = squarefree(&char_poly(m).to_upoly());
    let roots = isolate_real_roots(&p);
    if roots.len() == p.degree() && !roots.is_empty() {
        let a = refine(&p, &roots[0], tol).abs();
        let b = refine(&p, roots.last().unwrap(), tol).abs();
        return RatInterval {
            lo: a.lo.clone().max(b.lo.clone()),
            hi: a.hi.max(b.hi),
        };
    }
    let k = m.kronecker(m);
    let q = squarefree(&char_poly(&k).to_upoly());
    let roots = isolate_real_roots(&q);
    let top = roots.last().expect("m⊗m has a real eigenvalue");
    let half = tol / BigRational::from_integer(2.into());
    let sq = refine(&q, top, &(&half * &half));
    // scale so that rounding adds at most tol/4 on each side
    let mut scale = BigInt::one();
    while BigRational::new(BigInt::from(4), scale.clone()) > *tol {
        scale *= 2;
    }
    let lo = sqrt_floor(&sq.lo.clone().max(BigRational::zero()), &scale);
    let hi = sqrt_ceil(&sq.hi, &scale);
    RatInterval { lo, hi }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tol(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn identity_char_poly() {
        let p = char_poly(&IntMatrix::identity(2));
        assert_eq!(p, IntPoly(vec![1.into(), (-2).into(), 1.into()]));
    }

    #[test]
    fn golden_char_poly() {
        let m = IntMatrix::from_rows(&[vec![2i64, 1], vec![1, 1]]);
        assert_eq!(char_poly(&m), IntPoly(vec![1.into(), (-3).into(), 1.into()]));
        assert_eq!(char_poly(&m).to_string(), "t^2 - 3t + 1");
    }

    #[test]
    fn identity_radius_is_one() {
        let r = spectral_radius(&IntMatrix::identity(3), &tol(1, 1000));
        assert!(r.lo <= BigRational::one() && r.hi >= BigRational::one());
    }

    #[test]
    fn golden_radius() {
        let m = IntMatrix::from_rows(&[vec![2i64, 1], vec![1, 1]]);
        let r = spectral_radius(&m, &tol(1, 10_000_000));
        let exact = (3.0 + 5f64.sqrt()) / 2.0;
        assert!(r.contains_f64(exact, 0.0));
        assert!(r.width() <= tol(1, 10_000_000));
    }

    #[test]
    fn rotation_uses_kronecker_branch() {
        // order-4 rotation: eigenvalues ±i
        let m = IntMatrix::from_rows(&[vec![0i64, 1], vec![-1, 0]]);
        let r = spectral_radius(&m, &tol(1, 1000));
        assert!(r.contains_f64(1.0, 0.0));
    }

    fn oracle_radius(m: &IntMatrix) -> f64 {
        let n = m.dim();
        let d = nalgebra::DMatrix::from_row_slice(n, n, &m.to_f64());
        d.complex_eigenvalues()
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn cayley_hamilton(v in proptest::collection::vec(-5i64..6, 16)) {
            let m = IntMatrix::from_rows(&v.chunks(4).map(|r| r.to_vec()).collect::<Vec<_>>());
            prop_assert_eq!(char_poly(&m).eval_matrix(&m), IntMatrix::zero(4));
        }

        #[test]
        fn radius_matches_float_oracle(v in proptest::collection::vec(-4i64..5, 9)) {
            let m = IntMatrix::from_rows(&v.chunks(3).map(|r| r.to_vec()).collect::<Vec<_>>());
            let t = tol(1, 100_000);
            let r = spectral_radius(&m, &t);
            prop_assert!(r.width() <= t);
            prop_assert!(r.contains_f64(oracle_radius(&m), 10.0 * 1e-5), "{} vs {}", r, oracle_radius(&m));
        }
    }
}
