use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::AlgebraError;

/// An element of Q(i). Purely rational values keep a zero imaginary part;
/// the Gaussian extension is active exactly when `im != 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar::new(BigRational::from_integer(n), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::new(r, BigRational::zero())
    }

    pub fn i() -> Self {
        Scalar::new(BigRational::zero(), BigRational::one())
    }

    /// Builds a scalar from the four-integer wire form `[re_num, re_den, im_num, im_den]`.
    pub fn from_parts(
        re_num: BigInt,
        re_den: BigInt,
        im_num: BigInt,
        im_den: BigInt,
    ) -> Result<Self, AlgebraError> {
        if re_den.is_zero() || im_den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(Scalar::new(
            BigRational::new(re_num, re_den),
            BigRational::new(im_num, im_den),
        ))
    }

    /// The four-integer wire form; denominators positive, fractions reduced.
    pub fn parts(&self) -> [BigInt; 4] {
        [
            self.re.numer().clone(),
            self.re.denom().clone(),
            self.im.numer().clone(),
            self.im.denom().clone(),
        ]
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_gaussian(&self) -> bool {
        !self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// |z|^2 as a rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if self.is_real() {
            return Ok(Scalar::from_rational(self.re.recip()));
        }
        let n = self.norm_sqr();
        Ok(Scalar::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        if e == 0 {
            return Scalar::one();
        }
        if self.is_one() {
            return Scalar::one();
        }
        if self.is_real() && self.re.numer().abs().is_one() && self.re.denom().is_one() {
            return if self.re.is_negative() && e % 2 == 1 {
                -Scalar::one()
            } else {
                Scalar::one()
            };
        }
        let mut base = self.clone();
        let mut acc = Scalar::one();
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

    pub fn pow_signed(&self, e: i64) -> Result<Self, AlgebraError> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Least common multiple of the denominators of both parts.
    pub fn denominator_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }

    /// Approximate complex value, for reporting only.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Number of bits needed for the largest numerator or denominator.
    pub fn height_bits(&self) -> u64 {
        [
            self.re.numer().bits(),
            self.re.denom().bits(),
            self.im.numer().bits(),
            self.im.denom().bits(),
        ]
        .into_iter()
        .max()
        .unwrap_or(0)
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::new(BigRational::one(), BigRational::zero())
    }
    fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar::from_rational(&self.re + &o.re);
        }
        Scalar::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar::from_rational(&self.re - &o.re);
        }
        Scalar::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar::from_rational(&self.re * &o.re);
        }
        if self.im.is_zero() {
            return Scalar::new(&self.re * &o.re, &self.re * &o.im);
        }
        if o.im.is_zero() {
            return Scalar::new(&self.re * &o.re, &self.im * &o.re);
        }
        Scalar::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::inv`] for a checked inverse.
    fn div(self, o: &Scalar) -> Scalar {
        let inv = o.inv().expect("division by zero scalar");
        self * &inv
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        self.re += &o.re;
        if !o.im.is_zero() {
            self.im += &o.im;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        self.re -= &o.re;
        if !o.im.is_zero() {
            self.im -= &o.im;
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_rational(r)
    }
}

/// Parses `a`, `a/b`, `i`, `a/b*i`, `a+bi`, `a/b-c/d*i` style literals.
pub fn parse_scalar(s: &str) -> Result<Scalar, AlgebraError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(AlgebraError::Parse(s.to_string()));
    }
    // split into real and imaginary summands at a sign that is not leading
    let bytes: Vec<char> = t.chars().collect();
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        if (bytes[k] == '+' || bytes[k] == '-') && bytes[k - 1] != '/' && bytes[k - 1] != '*' {
            split = Some(k);
            break;
        }
    }
    let (a, b) = match split {
        Some(k) => (t[..k].to_string(), t[k..].to_string()),
        None => (t.clone(), String::new()),
    };
    let mut acc = Scalar::zero();
    for part in [a, b] {
        if part.is_empty() {
            continue;
        }
        acc = acc + parse_summand(&part).ok_or_else(|| AlgebraError::Parse(s.to_string()))?;
    }
    Ok(acc)
}

fn parse_summand(p: &str) -> Option<Scalar> {
    let (body, imag) = if let Some(stripped) = p.strip_suffix('i') {
        (stripped.trim_end_matches('*').to_string(), true)
    } else {
        (p.to_string(), false)
    };
    let r = if body.is_empty() || body == "+" {
        BigRational::one()
    } else if body == "-" {
        -BigRational::one()
    } else if let Some((n, d)) = body.split_once('/') {
        let n: BigInt = n.parse().ok()?;
        let d: BigInt = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        BigRational::new(n, d)
    } else {
        BigRational::from_integer(body.parse().ok()?)
    };
    Some(if imag {
        Scalar::new(BigRational::zero(), r)
    } else {
        Scalar::from_rational(r)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..20, -50i64..50, 1i64..20).prop_map(|(a, b, c, d)| {
            Scalar::new(
                BigRational::new(a.into(), b.into()),
                BigRational::new(c.into(), d.into()),
            )
        })
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&Scalar::i() * &Scalar::i(), -Scalar::one());
    }

    #[test]
    fn parts_are_reduced_with_positive_denominators() {
        let z = Scalar::from_parts(4.into(), (-6).into(), 3.into(), 9.into()).unwrap();
        let p = z.parts();
        assert_eq!(p[0], BigInt::from(-2));
        assert_eq!(p[1], BigInt::from(3));
        assert_eq!(p[2], BigInt::from(1));
        assert_eq!(p[3], BigInt::from(3));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_scalar("3").unwrap(), Scalar::from_int(3));
        assert_eq!(parse_scalar("-1/2").unwrap(), Scalar::from_ratio(-1, 2));
        assert_eq!(parse_scalar("i").unwrap(), Scalar::i());
        assert_eq!(
            parse_scalar("1/2-3i").unwrap(),
            Scalar::from_ratio(1, 2) - Scalar::from_int(3) * Scalar::i()
        );
        assert!(parse_scalar("1/0").is_err());
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
        }

        #[test]
        fn conj_is_multiplicative(a in arb_scalar(), b in arb_scalar()) {
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        }
    }
}
