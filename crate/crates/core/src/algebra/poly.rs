use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::modp::Field;
use super::scalar::Scalar;
use crate::error::AlgebraError;

pub const MAX_VARS: usize = 4;

/// Exponent vector. Ordered graded-lexicographically with `x0 > x1 > ...`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(pub [u64; MAX_VARS]);

impl Mono {
    pub fn one() -> Self {
        Mono([0; MAX_VARS])
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Mono(e)
    }

    pub fn from_slice(s: &[u64]) -> Self {
        let mut e = [0; MAX_VARS];
        e[..s.len()].copy_from_slice(s);
        Mono(e)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(o.0.iter()) {
            *a += b;
        }
        Mono(e)
    }

    pub fn checked_div(&self, o: &Mono) -> Option<Mono> {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(o.0.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(Mono(e))
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn gcd(&self, o: &Mono) -> Mono {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(o.0.iter()) {
            *a = (*a).min(*b);
        }
        Mono(e)
    }

    pub fn scale(&self, k: u64) -> Mono {
        Mono(self.0.map(|a| a * k))
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.total().cmp(&o.total()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Declared grading of a polynomial.
///
/// `Bi(d1, d2)` is only meaningful for four variables `(x1, x2, y1, y2)`,
/// graded by `x1 + x2` and `y1 + y2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Grading {
    Free,
    Total(u64),
    Bi(u64, u64),
}

impl Grading {
    fn admits(&self, m: &Mono) -> bool {
        match *self {
            Grading::Free => true,
            Grading::Total(d) => m.total() == d,
            Grading::Bi(a, b) => m.0[0] + m.0[1] == a && m.0[2] + m.0[3] == b,
        }
    }

    fn product(self, o: Grading) -> Grading {
        match (self, o) {
            (Grading::Total(a), Grading::Total(b)) => Grading::Total(a + b),
            (Grading::Bi(a, b), Grading::Bi(c, d)) => Grading::Bi(a + c, b + d),
            _ => Grading::Free,
        }
    }

    fn power(self, e: u64) -> Grading {
        match self {
            Grading::Total(a) => Grading::Total(a * e),
            Grading::Bi(a, b) => Grading::Bi(a * e, b * e),
            Grading::Free => Grading::Free,
        }
    }
}

/// Sparse multivariate polynomial over Q(i).
#[derive(Clone, Debug)]
pub struct MultiPoly {
    nvars: usize,
    grading: Grading,
    terms: BTreeMap<Mono, Scalar>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, o: &Self) -> bool {
        self.nvars == o.nvars && self.terms == o.terms
    }
}
impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS);
        MultiPoly {
            nvars,
            grading: Grading::Free,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = MultiPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Mono::one(), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, Scalar::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        MultiPoly::monomial(nvars, Mono::var(i), Scalar::one())
    }

    pub fn monomial(nvars: usize, m: Mono, c: Scalar) -> Self {
        let mut p = MultiPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, Scalar)>>(nvars: usize, it: I) -> Self {
        let mut acc: HashMap<Mono, Scalar> = HashMap::new();
        for (m, c) in it {
            debug_assert!(m.0[nvars..].iter().all(|&e| e == 0));
            *acc.entry(m).or_default() += &c;
        }
        MultiPoly::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: HashMap<Mono, Scalar>) -> Self {
        MultiPoly {
            nvars,
            grading: Grading::Free,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Declares a grading after checking every stored monomial against it.
    pub fn with_grading(mut self, g: Grading) -> Result<Self, AlgebraError> {
        if let Grading::Bi(..) = g {
            if self.nvars != 4 {
                return Err(AlgebraError::Usage(
                    "bihomogeneous grading needs four variables".into(),
                ));
            }
        }
        if let Some(m) = self.terms.keys().find(|m| !g.admits(m)) {
            return Err(AlgebraError::Usage(format!(
                "monomial {:?} does not match grading {:?}",
                &m.0[..self.nvars],
                g
            )));
        }
        self.grading = g;
        Ok(self)
    }

    /// Infers the finest grading satisfied by the terms.
    pub fn infer_grading(&self) -> Grading {
        let Some(first) = self.terms.keys().next() else {
            return self.grading;
        };
        if self.nvars == 4 {
            let g = Grading::Bi(first.0[0] + first.0[1], first.0[2] + first.0[3]);
            if self.terms.keys().all(|m| g.admits(m)) {
                return g;
            }
        }
        let g = Grading::Total(first.total());
        if self.terms.keys().all(|m| g.admits(m)) {
            g
        } else {
            Grading::Free
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Scalar> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn coeff(&self, m: &Mono) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.total()).max()
    }

    pub fn degree_in(&self, v: usize) -> u64 {
        self.terms.keys().map(|m| m.0[v]).max().unwrap_or(0)
    }

    /// Smallest exponent of `v` over all terms.
    pub fn valuation_in(&self, v: usize) -> u64 {
        self.terms.keys().map(|m| m.0[v]).min().unwrap_or(0)
    }

    pub fn leading_term(&self) -> Option<(&Mono, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn is_gaussian(&self) -> bool {
        self.terms.values().any(|c| c.is_gaussian())
    }

    /// Divides by the graded-lex leading coefficient.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, lc)) if lc.is_one() => self.clone(),
            Some((_, lc)) => {
                let li = lc.inv().expect("nonzero leading coefficient");
                self.scale(&li)
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            let mut z = MultiPoly::zero(self.nvars);
            z.grading = self.grading;
            return z;
        }
        MultiPoly {
            nvars: self.nvars,
            grading: self.grading,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    /// Monomial content: the largest monomial dividing every term.
    pub fn monomial_content(&self) -> Mono {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Mono::one();
        };
        it.fold(*first, |acc, m| acc.gcd(m))
    }

    pub fn mul_mono(&self, m: &Mono) -> MultiPoly {
        let g = match self.grading {
            Grading::Total(d) => Grading::Total(d + m.total()),
            Grading::Bi(a, b) => Grading::Bi(a + m.0[0] + m.0[1], b + m.0[2] + m.0[3]),
            Grading::Free => Grading::Free,
        };
        MultiPoly {
            nvars: self.nvars,
            grading: g,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    /// Exact division by a monomial; `None` if some term is not divisible.
    pub fn div_mono(&self, m: &Mono) -> Option<MultiPoly> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            terms.insert(k.checked_div(m)?, c.clone());
        }
        let g = match self.grading {
            Grading::Total(d) => Grading::Total(d - m.total()),
            Grading::Bi(a, b) => Grading::Bi(a - m.0[0] - m.0[1], b - m.0[2] - m.0[3]),
            Grading::Free => Grading::Free,
        };
        Some(MultiPoly {
            nvars: self.nvars,
            grading: g,
            terms,
        })
    }

    pub fn pow(&self, mut e: u64) -> MultiPoly {
        let g = self.grading.power(e);
        let mut acc = MultiPoly::one(self.nvars);
        if e == 0 {
            return acc;
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            let mut p = MultiPoly::monomial(self.nvars, m.scale(e), c.pow(e));
            p.grading = g;
            return p;
        }
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
        acc.grading = g;
        acc
    }

    pub fn eval(&self, pt: &[Scalar]) -> Scalar {
        assert_eq!(pt.len(), self.nvars);
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, x) in pt.iter().enumerate() {
                if m.0[v] > 0 {
                    t = &t * &x.pow(m.0[v]);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Image under reduction mod p; `None` if a coefficient has a denominator divisible by p.
    pub fn reduce(&self, f: &Field, conj: bool) -> Option<BTreeMap<[u64; MAX_VARS], u64>> {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let r = f.scalar(c, conj)?;
            if r != 0 {
                out.insert(m.0, r);
            }
        }
        Some(out)
    }

    /// Simultaneous substitution `x_i -> subs[i]`.
    pub fn substitute(&self, subs: &[MultiPoly]) -> MultiPoly {
        assert_eq!(subs.len(), self.nvars);
        let nv = subs.first().map(|s| s.nvars).unwrap_or(0);
        let mut cache: Vec<Vec<MultiPoly>> = subs
            .iter()
            .map(|s| vec![MultiPoly::one(s.nvars), s.clone()])
            .collect();
        let mut acc: HashMap<Mono, Scalar> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(nv, c.clone());
            for v in 0..self.nvars {
                let e = m.0[v] as usize;
                if e == 0 {
                    continue;
                }
                if subs[v].terms.len() == 1 {
                    t = &t * &subs[v].pow(e as u64);
                    continue;
                }
                while cache[v].len() <= e {
                    let next = &cache[v][cache[v].len() - 1] * &subs[v];
                    cache[v].push(next);
                }
                t = &t * &cache[v][e];
            }
            for (k, a) in t.terms {
                *acc.entry(k).or_default() += &a;
            }
        }
        MultiPoly::from_map(nv, acc)
    }

    /// Renames variables: variable `i` of `self` becomes variable `map[i]` of an `nv`-variable ring.
    pub fn remap(&self, nv: usize, map: &[usize]) -> MultiPoly {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = [0; MAX_VARS];
            for (i, &t) in map.iter().enumerate() {
                e[t] += m.0[i];
            }
            (Mono(e), c.clone())
        });
        MultiPoly::from_terms(nv, terms)
    }

    /// Sets variable `v` to 1.
    pub fn dehomogenize(&self, v: usize) -> MultiPoly {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = m.0;
            e[v] = 0;
            (Mono(e), c.clone())
        });
        MultiPoly::from_terms(self.nvars, terms)
    }

    /// Inverse of [`dehomogenize`](Self::dehomogenize) for the variable group `group`
    /// with `v` the homogenizing variable: pads every term to degree `d` in the group.
    pub fn homogenize_group(&self, group: &[usize], v: usize, d: u64) -> MultiPoly {
        let terms = self.terms.iter().map(|(m, c)| {
            let s: u64 = group.iter().map(|&g| m.0[g]).sum();
            let mut e = m.0;
            e[v] += d - s;
            (Mono(e), c.clone())
        });
        MultiPoly::from_terms(self.nvars, terms)
    }

    pub fn group_degree(&self, group: &[usize]) -> u64 {
        self.terms
            .keys()
            .map(|m| group.iter().map(|&g| m.0[g]).sum())
            .max()
            .unwrap_or(0)
    }

    /// Exact quotient; errors if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
        let (lm, lc) = d.leading_term().ok_or(AlgebraError::DivisionByZero)?;
        let lci = lc.inv()?;
        let mut rem = self.terms.clone();
        let mut quot: BTreeMap<Mono, Scalar> = BTreeMap::new();
        while let Some((m, c)) = rem.iter().next_back() {
            let qm = m.checked_div(lm).ok_or(AlgebraError::NotDivisible)?;
            if qm.total() + lm.total() != m.total() {
                return Err(AlgebraError::NotDivisible);
            }
            let qc = c * &lci;
            for (dm, dc) in &d.terms {
                let key = dm.mul(&qm);
                let prod = dc * &qc;
                match rem.get_mut(&key) {
                    Some(x) => {
                        *x -= &prod;
                        if x.is_zero() {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, -prod);
                    }
                }
            }
            quot.insert(qm, qc);
        }
        let g = match (self.grading, d.grading) {
            (Grading::Total(a), Grading::Total(b)) if a >= b => Grading::Total(a - b),
            (Grading::Bi(a, b), Grading::Bi(c, e)) if a >= c && b >= e => Grading::Bi(a - c, b - e),
            _ => Grading::Free,
        };
        Ok(MultiPoly {
            nvars: self.nvars,
            grading: g,
            terms: quot,
        })
    }

    /// Largest bit size of any numerator or denominator.
    pub fn height_bits(&self) -> u64 {
        self.terms.values().map(|c| c.height_bits()).max().unwrap_or(0)
    }

    pub fn display_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = (0..self.nvars)
                .filter(|&v| m.0[v] > 0)
                .map(|v| {
                    if m.0[v] == 1 {
                        names[v].to_string()
                    } else {
                        format!("{}^{}", names[v], m.0[v])
                    }
                })
                .collect();
            let (neg, mag) = if c.is_real() && c.re() < &num_rational::BigRational::zero() {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            let coef = if mag.is_real() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            let body = if mono.is_empty() {
                coef
            } else if mag.is_one() {
                mono.join("*")
            } else {
                format!("{}*{}", coef, mono.join("*"))
            };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            s.push_str(&body);
        }
        s
    }
}

pub fn default_names(nvars: usize) -> &'static [&'static str] {
    match nvars {
        4 => &["x1", "x2", "y1", "y2"],
        3 => &["x", "y", "z"],
        2 => &["x", "y"],
        _ => &["x", "y", "z", "w"],
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(default_names(self.nvars)))
    }
}

fn combine(a: &MultiPoly, b: &MultiPoly, sign: bool) -> MultiPoly {
    assert_eq!(a.nvars, b.nvars, "variable count mismatch");
    let mut terms = a.terms.clone();
    for (m, c) in &b.terms {
        match terms.get_mut(m) {
            Some(x) => {
                if sign {
                    *x -= c;
                } else {
                    *x += c;
                }
                if x.is_zero() {
                    terms.remove(m);
                }
            }
            None => {
                terms.insert(*m, if sign { -c } else { c.clone() });
            }
        }
    }
    let grading = if a.grading == b.grading || b.is_zero() {
        a.grading
    } else if a.is_zero() {
        b.grading
    } else {
        Grading::Free
    };
    MultiPoly {
        nvars: a.nvars,
        grading,
        terms,
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        combine(self, o, false)
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        combine(self, o, true)
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let grading = self.grading.product(o.grading);
        if self.terms.len() == 1 || o.terms.len() == 1 {
            let (single, other) = if self.terms.len() == 1 {
                (self, o)
            } else {
                (o, self)
            };
            let (m, c) = single.terms.iter().next().unwrap();
            let mut p = if c.is_one() {
                other.mul_mono(m)
            } else {
                other.scale(c).mul_mono(m)
            };
            p.grading = grading;
            return p;
        }
        let mut acc: HashMap<Mono, Scalar> = HashMap::with_capacity(self.len() * o.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let prod = c1 * c2;
                acc.entry(m1.mul(m2))
                    .and_modify(|x| *x += &prod)
                    .or_insert(prod);
            }
        }
        let mut p = MultiPoly::from_map(self.nvars, acc);
        p.grading = grading;
        p
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Scalar::one())
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: MultiPoly) -> MultiPoly {
                (&self).$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub fn p3(terms: &[([u64; 3], i64)]) -> MultiPoly {
        MultiPoly::from_terms(
            3,
            terms
                .iter()
                .map(|(e, c)| (Mono::from_slice(e), Scalar::from_int(*c))),
        )
    }

    pub fn arb_poly(nv: usize, max_terms: usize, max_deg: u64) -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec(
            (proptest::collection::vec(0..=max_deg, nv), -6i64..=6),
            0..=max_terms,
        )
        .prop_map(move |ts| {
            MultiPoly::from_terms(
                nv,
                ts.into_iter()
                    .map(|(e, c)| (Mono::from_slice(&e), Scalar::from_int(c))),
            )
        })
    }

    #[test]
    fn grlex_order() {
        let a = Mono::from_slice(&[2, 0, 0]);
        let b = Mono::from_slice(&[0, 3, 0]);
        let c = Mono::from_slice(&[1, 1, 0]);
        assert!(b > a);
        assert!(a > c);
    }

    #[test]
    fn grading_checked() {
        let p = p3(&[([1, 0, 0], 1), ([0, 1, 0], 2)]);
        assert!(p.clone().with_grading(Grading::Total(1)).is_ok());
        assert!(p.with_grading(Grading::Total(2)).is_err());
        assert_eq!(p3(&[([1, 0, 0], 1), ([0, 0, 0], 1)]).infer_grading(), Grading::Free);
    }

    #[test]
    fn substitution_composes() {
        // x^2 at (x+y, y, z) is x^2 + 2xy + y^2
        let p = p3(&[([2, 0, 0], 1)]);
        let subs = [
            p3(&[([1, 0, 0], 1), ([0, 1, 0], 1)]),
            MultiPoly::var(3, 1),
            MultiPoly::var(3, 2),
        ];
        assert_eq!(
            p.substitute(&subs),
            p3(&[([2, 0, 0], 1), ([1, 1, 0], 2), ([0, 2, 0], 1)])
        );
    }

    #[test]
    fn exact_division_detects_remainder() {
        let a = p3(&[([2, 0, 0], 1), ([0, 2, 0], -1)]);
        let d = p3(&[([1, 0, 0], 1), ([0, 1, 0], 1)]);
        assert_eq!(
            a.div_exact(&d).unwrap(),
            p3(&[([1, 0, 0], 1), ([0, 1, 0], -1)])
        );
        let e = p3(&[([1, 0, 0], 1), ([0, 0, 1], 1)]);
        assert!(a.div_exact(&e).is_err());
    }

    proptest! {
        #[test]
        fn product_divides_back(a in arb_poly(3, 5, 3), b in arb_poly(3, 5, 3)) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.div_exact(&b).unwrap(), a);
        }

        #[test]
        fn evaluation_is_ring_hom(a in arb_poly(2, 5, 3), b in arb_poly(2, 5, 3), x in -4i64..4, y in -4i64..4) {
            let pt = [Scalar::from_int(x), Scalar::from_int(y)];
            prop_assert_eq!((&a * &b).eval(&pt), &a.eval(&pt) * &b.eval(&pt));
            prop_assert_eq!((&a + &b).eval(&pt), &a.eval(&pt) + &b.eval(&pt));
        }
    }
}
