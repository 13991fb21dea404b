//! Bounded check that points of P¹ lie on distinct orbits with trivial isotropy.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{Scalar, UPoly};
use crate::sl2z::{ball, Mat2};

#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub depth: usize,
    pub elements_checked: usize,
    pub disjoint: bool,
    /// First failure found: the element and what it does.
    pub witness: Option<String>,
}

impl OrbitReport {
    pub fn summary(&self) -> String {
        if self.disjoint {
            format!("verified to depth {}", self.depth)
        } else {
            format!(
                "fails at depth {}: {}",
                self.depth,
                self.witness.as_deref().unwrap_or("?")
            )
        }
    }
}

/// `(a v + b)/(c v + d)`; `None` is the point at infinity.
fn act(m: &Mat2, v: &Scalar) -> Option<Scalar> {
    let s = |n: &BigInt| Scalar::from_bigint(n.clone());
    let den = &(&s(&m.c) * v) + &s(&m.d);
    if den.is_zero() {
        return None;
    }
    let num = &(&s(&m.a) * v) + &s(&m.b);
    Some(&num / &den)
}

/// Over all elements of word length at most `depth` in `R^{±1}`, `S`: no
/// element maps one value to another, and no nonidentity element fixes a
/// value. Says nothing about longer words.
pub fn orbit_disjointness_check(values: &[Scalar], depth: usize) -> OrbitReport {
    let elems = ball(depth);
    let mut report = OrbitReport {
        depth,
        elements_checked: elems.len(),
        disjoint: true,
        witness: None,
    };
    for i in 0..values.len() {
        for j in 0..i {
            if values[i] == values[j] {
                report.disjoint = false;
                report.witness = Some(format!("value {} is listed twice", values[i]));
                return report;
            }
        }
    }
    for (m, len) in &elems {
        if *len == 0 {
            continue;
        }
        for (i, v) in values.iter().enumerate() {
            let Some(img) = act(m, v) else { continue };
            for (j, u) in values.iter().enumerate() {
                if img == *u {
                    report.disjoint = false;
                    report.witness = Some(if i == j {
                        format!("[[{}, {}], [{}, {}]] (length {len}) fixes {v}", m.a, m.b, m.c, m.d)
                    } else {
                        format!("[[{}, {}], [{}, {}]] (length {len}) maps {v} to {u}", m.a, m.b, m.c, m.d)
                    });
                    return report;
                }
            }
        }
    }
    report
}

/// Roots of `p` in Q(i) that can be found without factoring: the root of a
/// linear polynomial, and rational roots of real polynomials whose extreme
/// coefficients are below 10⁹ after clearing denominators. Repeated roots
/// are listed once.
pub fn findable_roots(p: &UPoly) -> Vec<Scalar> {
    let mut out: Vec<Scalar> = Vec::new();
    let push = |r: Scalar, out: &mut Vec<Scalar>| {
        if !out.contains(&r) {
            out.push(r);
        }
    };
    if p.degree() == 0 {
        return out;
    }
    if p.degree() == 1 {
        let c = p.coeffs();
        if let Ok(inv) = c[1].inv() {
            push(-&(&c[0] * &inv), &mut out);
        }
        return out;
    }
    if !p.coeffs().iter().all(|c| c.is_real()) {
        return out;
    }
    let lcm = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator_lcm()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c.re() * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if low > 0 {
        push(Scalar::from_int(0), &mut out);
    }
    let limit = BigInt::from(1_000_000_000u64);
    let (a0, an) = (ints[low].abs(), ints[ints.len() - 1].abs());
    if a0 > limit || an > limit {
        return out;
    }
    let divisors = |n: u64| -> Vec<u64> { (1..=n).take_while(|d| d * d <= n).filter(|d| n % d == 0).flat_map(|d| [d, n / d]).collect() };
    let (a0, an) = (a0.to_u64().unwrap_or(0), an.to_u64().unwrap_or(0));
    for num in divisors(a0) {
        for den in divisors(an) {
            for sign in [1i64, -1] {
                let r = Scalar::from_rational(BigRational::new(BigInt::from(num) * sign, BigInt::from(den)));
                if p.eval(&r).is_zero() {
                    push(r, &mut out);
                }
            }
        }
    }
    out
}
