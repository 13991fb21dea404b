//! Maps `(x, y) ↦ (m(x), y·r(x))` with `m` a Möbius transformation.
//!
//! These compose without touching bivariate polynomials, so long words and
//! high iterates stay cheap until the final conversion.

use num_traits::{One, Zero};

use crate::algebra::{Mono, MultiPoly, RatFunc, Scalar, UPoly};
use crate::birmap::expr::Frac;
use crate::birmap::{Ambient, BirMap};
use crate::error::{AlgebraError, MapError};

#[derive(Clone, Debug, PartialEq)]
pub struct FibredMap {
    /// `x ↦ (a x + b) / (c x + d)` as `[a, b, c, d]`.
    pub mobius: [Scalar; 4],
    pub factor: RatFunc,
}

impl FibredMap {
    pub fn identity() -> Self {
        FibredMap {
            mobius: [Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::one()],
            factor: RatFunc::one(),
        }
    }

    pub fn new(mobius: [Scalar; 4], factor: RatFunc) -> Result<Self, AlgebraError> {
        let [a, b, c, d] = &mobius;
        if (&(a * d) - &(b * c)).is_zero() {
            return Err(AlgebraError::Usage("singular Möbius transformation".into()));
        }
        if factor.is_zero() {
            return Err(AlgebraError::Usage("fibre factor is zero".into()));
        }
        Ok(FibredMap { mobius, factor })
    }

    pub fn mobius_func(&self) -> RatFunc {
        let [a, b, c, d] = self.mobius.clone();
        RatFunc::new(UPoly::linear(a, b), UPoly::linear(c, d)).expect("nonzero denominator")
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &FibredMap) -> FibredMap {
        let [a, b, c, d] = &self.mobius;
        let [p, q, r, s] = &inner.mobius;
        let mobius = [
            &(a * p) + &(b * r),
            &(a * q) + &(b * s),
            &(c * p) + &(d * r),
            &(c * q) + &(d * s),
        ];
        let factor = inner.factor.mul(&self.factor.compose(&inner.mobius_func()));
        FibredMap { mobius, factor }
    }

    pub fn pow(&self, n: u32) -> FibredMap {
        let mut acc = FibredMap::identity();
        for _ in 0..n {
            acc = self.compose(&acc);
        }
        acc
    }

    /// Same map up to scaling of the Möbius matrix.
    pub fn equals(&self, o: &FibredMap) -> bool {
        let [a, b, c, d] = &self.mobius;
        let [p, q, r, s] = &o.mobius;
        let prop = [(a, b, p, q), (a, c, p, r), (a, d, p, s), (b, c, q, r), (b, d, q, s), (c, d, r, s)]
            .iter()
            .all(|(u, v, x, y)| *u * *y == *v * *x);
        prop && self.factor == o.factor
    }

    pub fn is_identity(&self) -> bool {
        self.equals(&FibredMap::identity())
    }

    pub fn to_birmap(&self, ambient: Ambient) -> Result<BirMap, MapError> {
        let [a, b, c, d] = &self.mobius;
        let lin = |u: &Scalar, v: &Scalar| -> MultiPoly {
            MultiPoly::from_terms(2, [(Mono::var(0), u.clone()), (Mono::one(), v.clone())])
        };
        let fx = Frac {
            num: lin(a, b),
            den: lin(c, d),
        };
        let fy = Frac {
            num: &MultiPoly::var(2, 1) * &upoly_in_x(self.factor.num()),
            den: upoly_in_x(self.factor.den()),
        };
        BirMap::from_affine(ambient, &fx, &fy)
    }
}

pub fn upoly_in_x(p: &UPoly) -> MultiPoly {
    MultiPoly::from_terms(
        2,
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(e, c)| (Mono::from_slice(&[e as u64, 0]), c.clone())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minus_inv_x(c: Scalar) -> FibredMap {
        let m = [Scalar::zero(), Scalar::from_int(-1), Scalar::one(), Scalar::zero()];
        FibredMap::new(m, RatFunc::constant(c)).unwrap()
    }

    #[test]
    fn composition_matches_birmaps() {
        let s = minus_inv_x(Scalar::i());
        let x_plus_one = UPoly::from_ints(&[1, 1]);
        let t = FibredMap::new(
            [Scalar::from_int(-1), Scalar::one(), Scalar::from_int(-1), Scalar::zero()],
            RatFunc::new(x_plus_one, UPoly::from_ints(&[3, 0, 1])).unwrap(),
        )
        .unwrap();
        let st = s.compose(&t);
        let ts = t.compose(&s).to_birmap(Ambient::P2).unwrap();
        let ts_direct = t.to_birmap(Ambient::P2).unwrap().compose(&s.to_birmap(Ambient::P2).unwrap()).unwrap();
        assert!(ts.equals(&ts_direct));
        let direct = s
            .to_birmap(Ambient::P2)
            .unwrap()
            .compose(&t.to_birmap(Ambient::P2).unwrap())
            .unwrap();
        assert!(st.to_birmap(Ambient::P2).unwrap().equals(&direct));
    }

    #[test]
    fn fourth_power_of_s_is_identity() {
        let s = minus_inv_x(Scalar::i());
        assert!(!s.pow(2).is_identity());
        assert!(s.pow(4).is_identity());
        assert!(s.pow(4).to_birmap(Ambient::P2).unwrap().is_identity());
    }
}
