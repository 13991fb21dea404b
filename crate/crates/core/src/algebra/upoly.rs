//! Univariate polynomials and rational functions over Q(i).

use std::fmt;

use num_traits::{One, Zero};

use super::scalar::Scalar;
use crate::error::AlgebraError;

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default, Hash)]
pub struct UPoly(Vec<Scalar>);

impl UPoly {
    pub fn new(mut c: Vec<Scalar>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly(c)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UPoly::new(c.iter().map(|&x| Scalar::from_int(x)).collect())
    }

    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn one() -> Self {
        UPoly(vec![Scalar::one()])
    }

    pub fn constant(c: Scalar) -> Self {
        UPoly::new(vec![c])
    }

    /// `a x + b`
    pub fn linear(a: Scalar, b: Scalar) -> Self {
        UPoly::new(vec![b, a])
    }

    pub fn x() -> Self {
        UPoly::new(vec![Scalar::zero(), Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lc(&self) -> Scalar {
        self.0.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.0
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        let z = Scalar::zero();
        UPoly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> UPoly {
        UPoly::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UPoly::new(out)
    }

    pub fn pow(&self, e: u32) -> UPoly {
        (0..e).fold(UPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().inv().expect("nonzero"))
    }

    pub fn div_rem(&self, d: &UPoly) -> Result<(UPoly, UPoly), AlgebraError> {
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let mut r = self.0.clone();
        if r.len() < d.0.len() {
            return Ok((UPoly::zero(), self.clone()));
        }
        let dl = d.lc().inv()?;
        let dd = d.0.len() - 1;
        let mut q = vec![Scalar::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &dl;
            if !c.is_zero() {
                for (j, b) in d.0.iter().enumerate() {
                    r[k + j] -= &(&c * b);
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((UPoly::new(q), UPoly::new(r)))
    }

    /// Monic gcd (Euclid over the field).
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = std::mem::replace(&mut b, r.monic());
        }
        a.monic()
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Scalar::from_int(i as i64))
                .collect(),
        )
    }

    /// True when the polynomial has no repeated root.
    pub fn is_squarefree(&self) -> bool {
        self.is_constant() || self.gcd(&self.derivative()).is_constant()
    }

    /// Homogeneous evaluation `sum c_i p^i q^(d-i)` for `d >= degree`.
    pub fn homogeneous_at(&self, p: &UPoly, q: &UPoly, d: usize) -> UPoly {
        let mut acc = UPoly::zero();
        let mut pw_p = UPoly::one();
        let qs: Vec<UPoly> = {
            let mut v = vec![UPoly::one()];
            for _ in 0..d {
                let n = v.last().unwrap().mul(q);
                v.push(n);
            }
            v
        };
        for i in 0..=d {
            let c = self.0.get(i).cloned().unwrap_or_else(Scalar::zero);
            if !c.is_zero() {
                acc = acc.add(&pw_p.mul(&qs[d - i]).scale(&c));
            }
            if i < d {
                pw_p = pw_p.mul(p);
            }
        }
        acc
    }

    pub fn display_var(&self, v: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*{v}"),
                _ => format!("({c})*{v}^{i}"),
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("x"))
    }
}

/// Rational function `num/den` in lowest terms with monic denominator.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct RatFunc {
    num: UPoly,
    den: UPoly,
}

impl RatFunc {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc {
                num,
                den: UPoly::one(),
            });
        }
        let g = num.gcd(&den);
        let (n, _) = num.div_rem(&g)?;
        let (d, _) = den.div_rem(&g)?;
        let l = d.lc().inv()?;
        Ok(RatFunc {
            num: n.scale(&l),
            den: d.scale(&l),
        })
    }

    pub fn poly(p: UPoly) -> Self {
        RatFunc {
            num: p,
            den: UPoly::one(),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        RatFunc::poly(UPoly::constant(c))
    }

    pub fn one() -> Self {
        RatFunc::poly(UPoly::one())
    }

    pub fn x() -> Self {
        RatFunc::poly(UPoly::x())
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// max(deg num, deg den).
    pub fn degree(&self) -> usize {
        self.num.degree().max(self.den.degree())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero denominators")
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
        .expect("nonzero denominators")
    }

    pub fn inv(&self) -> Result<RatFunc, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc, AlgebraError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn scale(&self, c: &Scalar) -> RatFunc {
        RatFunc::new(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &RatFunc) -> RatFunc {
        let d = self.degree();
        let n = self.num.homogeneous_at(&inner.num, &inner.den, d);
        let m = self.den.homogeneous_at(&inner.num, &inner.den, d);
        RatFunc::new(n, m).expect("composition with a nonconstant map")
    }

    /// Value at a point; `None` at a pole.
    pub fn eval(&self, x: &Scalar) -> Option<Scalar> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(&self.num.eval(x) / &d)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_upoly() -> impl Strategy<Value = UPoly> {
        proptest::collection::vec(-5i64..5, 0..5).prop_map(|c| UPoly::from_ints(&c))
    }

    #[test]
    fn gcd_of_products() {
        let a = UPoly::from_ints(&[1, 1]).mul(&UPoly::from_ints(&[-2, 1]));
        let b = UPoly::from_ints(&[1, 1]).mul(&UPoly::from_ints(&[3, 1]));
        assert_eq!(a.gcd(&b), UPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn mobius_composition() {
        // (x-1)/x composed with itself three times is x
        let m = RatFunc::new(UPoly::from_ints(&[-1, 1]), UPoly::from_ints(&[0, 1])).unwrap();
        let m3 = m.compose(&m).compose(&m);
        assert_eq!(m3, RatFunc::x());
    }

    #[test]
    fn squarefree_detection() {
        assert!(UPoly::from_ints(&[-6, 1, 1]).is_squarefree());
        assert!(!UPoly::from_ints(&[1, 2, 1]).is_squarefree());
    }

    proptest! {
        #[test]
        fn division_identity(a in arb_upoly(), b in arb_upoly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b).unwrap();
            prop_assert_eq!(q.mul(&b).add(&r), a);
            prop_assert!(r.is_zero() || r.degree() < b.degree());
        }

        #[test]
        fn compose_matches_eval(a in arb_upoly(), x in -5i64..5) {
            let inner = RatFunc::new(UPoly::from_ints(&[1, 2]), UPoly::from_ints(&[3, 1])).unwrap();
            let f = RatFunc::poly(a);
            let xs = Scalar::from_int(x);
            if let Some(v) = inner.eval(&xs) {
                prop_assert_eq!(f.compose(&inner).eval(&xs), f.eval(&v));
            }
        }
    }
}
