//! The quotient of P¹×P¹ by `(x, y) ↦ (1/x, 1/y)` onto the Cayley cubic
//! `XYZ + WYZ + WXZ + WXY = 0`.

use serde::Serialize;

use crate::algebra::MultiPoly;
use crate::birmap::expr::{parse_affine_expr, Frac};

/// `(W : X : Y : Z)` as affine polynomials in `x`, `y`.
pub fn quotient_components() -> [MultiPoly; 4] {
    [
        "(x-1)(x-y)(1+y)",
        "(y-1)(y-x)(1+x)",
        "(x y+1)(x+1)(y+1)",
        "(x-1)(y-1)(x y+1)",
    ]
    .map(|s| parse_affine_expr(s).expect("valid literal").num)
}

fn substitute(p: &MultiPoly, fx: &Frac, fy: &Frac) -> Frac {
    let mut acc = Frac::poly(MultiPoly::zero(2));
    for (m, c) in p.terms() {
        let t = fx
            .pow(m.0[0] as i64)
            .expect("nonnegative exponent")
            .mul(&fy.pow(m.0[1] as i64).expect("nonnegative exponent"));
        acc = acc.add(&Frac {
            num: t.num.scale(c),
            den: t.den,
        });
    }
    acc
}

/// Whether `q ∘ f = q` as maps to P³, i.e. all `(q_i∘f) q_j = (q_j∘f) q_i`.
pub fn invariant_under(fx: &Frac, fy: &Frac) -> bool {
    let q = quotient_components();
    let moved: Vec<Frac> = q.iter().map(|p| substitute(p, fx, fy)).collect();
    if moved.iter().all(|f| f.num.is_zero()) {
        return false;
    }
    for i in 0..4 {
        for j in 0..i {
            let lhs = &(&moved[i].num * &moved[j].den) * &q[j];
            let rhs = &(&moved[j].num * &moved[i].den) * &q[i];
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

pub fn image_on_cubic() -> bool {
    let [w, x, y, z] = quotient_components();
    let xyz = &(&x * &y) * &z;
    let wyz = &(&w * &y) * &z;
    let wxz = &(&w * &x) * &z;
    let wxy = &(&w * &x) * &y;
    (&(&xyz + &wyz) + &(&wxz + &wxy)).is_zero()
}

#[derive(Clone, Debug, Serialize)]
pub struct CayleyReport {
    pub invariant_under_involution: bool,
    pub image_on_cubic: bool,
}

impl CayleyReport {
    pub fn all_pass(&self) -> bool {
        self.invariant_under_involution && self.image_on_cubic
    }
}

pub fn cayley_check() -> CayleyReport {
    let f = |s: &str| parse_affine_expr(s).expect("valid literal");
    CayleyReport {
        invariant_under_involution: invariant_under(&f("1/x"), &f("1/y")),
        image_on_cubic: image_on_cubic(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Frac {
        parse_affine_expr(s).unwrap()
    }

    #[test]
    fn quotient_is_invariant_and_lands_on_cubic() {
        let r = cayley_check();
        assert!(r.invariant_under_involution);
        assert!(r.image_on_cubic);
    }

    #[test]
    fn other_maps() {
        assert!(invariant_under(&f("x"), &f("y")));
        assert!(!invariant_under(&f("-x"), &f("y")));
        // the swap exchanges W and X
        assert!(!invariant_under(&f("y"), &f("x")));
    }
}
