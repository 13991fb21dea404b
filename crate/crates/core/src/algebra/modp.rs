//! Word-size prime field arithmetic, prime selection, CRT and rational
//! reconstruction. Everything here is exact; primes stay below 2^62 so sums of
//! two residues never overflow a `u64`.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::scalar::Scalar;

#[inline]
pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn neg(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue (Fermat).
pub fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow(a, p - 2, p)
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A prime field of characteristic `p ≡ 1 (mod 4)` with a fixed square root of -1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Field {
    pub p: u64,
    pub sqrt_m1: u64,
}

impl Field {
    pub fn new(p: u64) -> Self {
        debug_assert!(p % 4 == 1 && is_prime(p));
        let mut n = 2u64;
        // a quadratic non-residue n gives n^((p-1)/4) with square -1
        while pow(n, (p - 1) / 2, p) != p - 1 {
            n += 1;
        }
        Field {
            p,
            sqrt_m1: pow(n, (p - 1) / 4, p),
        }
    }

    /// Reduces a rational; `None` when the denominator vanishes mod p.
    pub fn rational(&self, r: &BigRational) -> Option<u64> {
        let den = reduce_int(r.denom(), self.p);
        if den == 0 {
            return None;
        }
        Some(mul(reduce_int(r.numer(), self.p), inv(den, self.p), self.p))
    }

    /// Image of a Gaussian rational under `i -> sign * sqrt(-1)`.
    pub fn scalar(&self, z: &Scalar, conj: bool) -> Option<u64> {
        let re = self.rational(z.re())?;
        if z.is_real() {
            return Some(re);
        }
        let im = self.rational(z.im())?;
        let s = if conj {
            neg(self.sqrt_m1, self.p)
        } else {
            self.sqrt_m1
        };
        Some(add(re, mul(im, s, self.p), self.p))
    }
}

pub fn reduce_int(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

/// Primes `p ≡ 1 (mod 4)` below 2^62, in decreasing order. Deterministic.
pub fn primes() -> impl Iterator<Item = u64> {
    let start = (1u64 << 62) - 3; // ≡ 1 mod 4
    (0u64..)
        .map(move |k| start - 4 * k)
        .filter(|&n| is_prime(n))
}

pub fn field_sequence() -> impl Iterator<Item = Field> {
    primes().map(Field::new)
}

/// Chinese remaindering of `(r1 mod m1)` with `(r2 mod m2)`, result in `[0, m1*m2)`.
pub fn crt(r1: &BigInt, m1: &BigInt, r2: u64, m2: u64) -> BigInt {
    let r1m = reduce_int(r1, m2);
    let m1m = reduce_int(m1, m2);
    let t = mul(sub(r2, r1m, m2), inv(m1m, m2), m2);
    r1 + m1 * BigInt::from(t)
}

/// Wang's rational reconstruction: finds n/d ≡ u (mod m) with |n|, d ≤ sqrt(m/2).
pub fn rational_reconstruct(u: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    let (n, d) = if t1.sign() == Sign::Minus {
        (-r1, -t1)
    } else {
        (r1, t1)
    };
    Some(BigRational::new(n, d))
}

/// Dense univariate polynomials over F_p, lowest degree first, no trailing zeros.
pub mod upoly {
    use super::{add, inv, mul, neg, sub};

    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn degree(a: &[u64]) -> Option<usize> {
        if a.is_empty() {
            None
        } else {
            Some(a.len() - 1)
        }
    }

    pub fn eval(a: &[u64], x: u64, p: u64) -> u64 {
        a.iter().rev().fold(0, |acc, &c| add(mul(acc, x, p), c, p))
    }

    pub fn mul_poly(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = add(out[i + j], mul(x, y, p), p);
            }
        }
        trim(&mut out);
        out
    }

    pub fn make_monic(a: &mut [u64], p: u64) {
        if let Some(&lc) = a.last() {
            let li = inv(lc, p);
            for c in a.iter_mut() {
                *c = mul(*c, li, p);
            }
        }
    }

    /// Quotient and remainder; `b` nonzero.
    pub fn div_rem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let db = b.len() - 1;
        let lb = inv(b[db], p);
        let mut r = a.to_vec();
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![0u64; r.len() - db];
        for k in (0..q.len()).rev() {
            let c = mul(r[k + db], lb, p);
            q[k] = c;
            if c != 0 {
                for (j, &bj) in b.iter().enumerate() {
                    r[k + j] = sub(r[k + j], mul(c, bj, p), p);
                }
            }
        }
        r.truncate(db);
        trim(&mut r);
        trim(&mut q);
        (q, r)
    }

    /// Monic gcd; gcd(0,0) = 0.
    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let (_, r) = div_rem(&x, &y, p);
            x = std::mem::replace(&mut y, r);
        }
        make_monic(&mut x, p);
        x
    }

    /// Newton interpolation through `(xs[k], ys[k])`, distinct nodes.
    pub fn interpolate(xs: &[u64], ys: &[u64], p: u64) -> Vec<u64> {
        let n = xs.len();
        let mut coef = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                let num = sub(coef[i], coef[i - 1], p);
                let den = sub(xs[i], xs[i - j], p);
                coef[i] = mul(num, inv(den, p), p);
            }
        }
        let mut out = vec![0u64; n];
        for k in (0..n).rev() {
            // out = out * (x - xs[k]) + coef[k]
            let mut next = vec![0u64; n];
            for d in 0..n {
                if out[d] == 0 {
                    continue;
                }
                if d + 1 < n {
                    next[d + 1] = add(next[d + 1], out[d], p);
                }
                next[d] = sub(next[d], mul(out[d], xs[k], p), p);
            }
            next[0] = add(next[0], coef[k], p);
            out = next;
        }
        trim(&mut out);
        out
    }

    pub fn scale(a: &mut [u64], c: u64, p: u64) {
        for x in a.iter_mut() {
            *x = mul(*x, c, p);
        }
    }

    pub fn negate(a: &mut [u64], p: u64) {
        for x in a.iter_mut() {
            *x = neg(*x, p);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_one_mod_four() {
        for p in primes().take(5) {
            assert_eq!(p % 4, 1);
            assert!(is_prime(p));
            let f = Field::new(p);
            assert_eq!(mul(f.sqrt_m1, f.sqrt_m1, p), p - 1);
        }
    }

    #[test]
    fn miller_rabin_small() {
        let brute = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..2000 {
            assert_eq!(is_prime(n), brute(n), "{n}");
        }
    }

    #[test]
    fn reconstruct_fraction() {
        let p = primes().next().unwrap();
        let q = primes().nth(1).unwrap();
        let m = BigInt::from(p) * BigInt::from(q);
        let target = BigRational::new(BigInt::from(-123456789i64), BigInt::from(987654321i64));
        let f1 = Field::new(p);
        let f2 = Field::new(q);
        let r = crt(
            &BigInt::from(f1.rational(&target).unwrap()),
            &BigInt::from(p),
            f2.rational(&target).unwrap(),
            q,
        );
        assert_eq!(rational_reconstruct(&r, &m), Some(target));
    }

    #[test]
    fn interpolation_roundtrip() {
        let p = 101;
        let poly = vec![3, 0, 5, 7];
        let xs: Vec<u64> = (1..=4).collect();
        let ys: Vec<u64> = xs.iter().map(|&x| upoly::eval(&poly, x, p)).collect();
        assert_eq!(upoly::interpolate(&xs, &ys, p), poly);
    }

    #[test]
    fn univariate_gcd() {
        let p = 97;
        // (x+1)(x+2) and (x+1)(x+3)
        let a = upoly::mul_poly(&[1, 1], &[2, 1], p);
        let b = upoly::mul_poly(&[1, 1], &[3, 1], p);
        assert_eq!(upoly::gcd(&a, &b, p), vec![1, 1]);
    }
}
