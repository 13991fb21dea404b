//! Degree sequences of iterates and their growth class.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{Ambient, BirMap};
use crate::error::MapError;

pub const DEFAULT_CAP: usize = 200_000;

/// Degree of one iterate; P¹×P¹ maps keep their quadridegree and report its sum.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DegreeRecord {
    pub n: usize,
    #[serde(serialize_with = "ser_big")]
    pub degree: BigInt,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_big_quad")]
    pub quadridegree: Option<[BigInt; 4]>,
}

fn ser_big<S: serde::Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_big_quad<S: serde::Serializer>(x: &Option<[BigInt; 4]>, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let q = x.as_ref().expect("skipped when None");
    let mut seq = s.serialize_seq(Some(4))?;
    for v in q {
        seq.serialize_element(&v.to_string())?;
    }
    seq.end()
}

impl DegreeRecord {
    pub fn of_map(n: usize, f: &BirMap) -> Self {
        match f.ambient() {
            Ambient::P2 => DegreeRecord {
                n,
                degree: f.degree().into(),
                quadridegree: None,
            },
            Ambient::P1xP1 => DegreeRecord::from_quadri(n, f.quadridegree().expect("P1xP1").map(BigInt::from)),
        }
    }

    pub fn from_quadri(n: usize, q: [BigInt; 4]) -> Self {
        DegreeRecord {
            n,
            degree: q.iter().sum(),
            quadridegree: Some(q),
        }
    }
}

/// Degrees of `f, f², …, f^n`, left-composing `f` each time. Fails once a
/// component of an iterate exceeds `cap` terms.
pub fn iterate_degrees(f: &BirMap, n: usize, cap: usize) -> Result<Vec<DegreeRecord>, MapError> {
    if n == 0 {
        return Err(MapError::Usage("need at least one iterate".into()));
    }
    let mut out = vec![DegreeRecord::of_map(1, f)];
    let mut cur = f.clone();
    for k in 2..=n {
        cur = f.compose(&cur)?;
        if cur.components().iter().any(|c| c.len() > cap) {
            return Err(MapError::Budget { iterate: k, cap });
        }
        out.push(DegreeRecord::of_map(k, &cur));
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GrowthClass {
    Bounded,
    Linear,
    Quadratic,
    Exponential,
    Undetermined,
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GrowthClass::Bounded => "bounded",
            GrowthClass::Linear => "linear",
            GrowthClass::Quadratic => "quadratic",
            GrowthClass::Exponential => "exponential",
            GrowthClass::Undetermined => "undetermined",
        })
    }
}

#[derive(Clone, Debug)]
pub struct GrowthConfig {
    pub window: usize,
    pub delta: BigRational,
}

impl Default for GrowthConfig {
    fn default() -> Self {
        GrowthConfig {
            window: 4,
            delta: BigRational::new(1.into(), 10.into()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    pub class: GrowthClass,
    pub window: usize,
    /// Smallest ratio `d(n+1)/d(n)` over the tail window, as `p/q`.
    pub min_tail_ratio: Option<String>,
    pub second_differences: Vec<String>,
}

fn diffs(s: &[BigInt]) -> Vec<BigInt> {
    s.windows(2).map(|w| &w[1] - &w[0]).collect()
}

/// Classifies a degree sequence by its tail window. The sequence should have
/// at least `window + 2` entries; shorter input is undetermined.
///
/// A tail that never exceeds the earlier maximum counts as bounded, which
/// covers periodic sequences of finite-order maps.
pub fn classify_growth(seq: &[BigInt], cfg: &GrowthConfig) -> GrowthReport {
    let w = cfg.window.max(1);
    let d1 = diffs(seq);
    let d2 = diffs(&d1);
    let d3 = diffs(&d2);
    let tail_of = |v: &[BigInt], k: usize| -> Vec<BigInt> { v[v.len().saturating_sub(k)..].to_vec() };
    let ratios: Vec<Option<BigRational>> = seq
        .windows(2)
        .map(|p| (p[0].is_positive()).then(|| BigRational::new(p[1].clone(), p[0].clone())))
        .collect();
    let tail_ratios = &ratios[ratios.len().saturating_sub(w)..];
    let min_ratio = if tail_ratios.iter().all(|r| r.is_some()) {
        tail_ratios.iter().flatten().min().cloned()
    } else {
        None
    };
    let mut report = GrowthReport {
        class: GrowthClass::Undetermined,
        window: w,
        min_tail_ratio: min_ratio.as_ref().map(|r| r.to_string()),
        second_differences: tail_of(&d2, w).iter().map(|x| x.to_string()).collect(),
    };
    if seq.len() < w + 2 {
        return report;
    }
    let tail = &seq[seq.len() - w..];
    let head = &seq[..seq.len() - w];
    let constant = tail.iter().all(|x| *x == tail[0]);
    let below_head = head.iter().max().is_some_and(|m| tail.iter().all(|x| x <= m));
    report.class = if constant || below_head {
        GrowthClass::Bounded
    } else if tail_of(&d2, w).iter().all(|x| x.is_zero()) {
        GrowthClass::Linear
    } else if d3.len() >= w && tail_of(&d3, w).iter().all(|x| x.is_zero()) {
        GrowthClass::Quadratic
    } else if min_ratio
        .as_ref()
        .is_some_and(|r| *r >= BigRational::one() + &cfg.delta)
    {
        GrowthClass::Exponential
    } else {
        GrowthClass::Undetermined
    };
    report
}

/// Natural logarithm of a positive integer, valid beyond the f64 range.
pub fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::NAN);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Decimal expansion of `r` truncated to `digits` places.
pub fn rational_decimal(r: &BigRational, digits: usize) -> String {
    let neg = r.is_negative();
    let a = r.abs();
    let scale = BigInt::from(10).pow(digits as u32);
    let v = (a * BigRational::from_integer(scale.clone())).floor().to_integer();
    let int = &v / &scale;
    let frac = &v % &scale;
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DynamicalEstimate {
    pub n: usize,
    /// `(deg f^N)^(1/N)`.
    pub root: f64,
    /// `deg f^N / deg f^(N-1)` exactly, as `p/q`.
    pub last_ratio: String,
    pub last_ratio_decimal: String,
    #[serde(skip)]
    pub last_ratio_exact: BigRational,
}

pub fn estimate_from_degrees(degs: &[BigInt]) -> Result<DynamicalEstimate, MapError> {
    let n = degs.len();
    if n < 2 || degs.iter().any(|d| !d.is_positive()) {
        return Err(MapError::Usage("need at least two positive degrees".into()));
    }
    let r = BigRational::new(degs[n - 1].clone(), degs[n - 2].clone());
    Ok(DynamicalEstimate {
        n,
        root: (ln_big(&degs[n - 1]) / n as f64).exp(),
        last_ratio: r.to_string(),
        last_ratio_decimal: rational_decimal(&r, 9),
        last_ratio_exact: r,
    })
}

/// Both estimators of the dynamical degree from `N ≥ 4` exact iterates.
pub fn dynamical_degree_estimate(f: &BirMap, n: usize, cap: usize) -> Result<DynamicalEstimate, MapError> {
    if n < 4 {
        return Err(MapError::Usage("need N >= 4".into()));
    }
    let degs: Vec<BigInt> = iterate_degrees(f, n, cap)?.into_iter().map(|d| d.degree).collect();
    estimate_from_degrees(&degs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn class(v: &[i64]) -> GrowthClass {
        classify_growth(&seq(v), &GrowthConfig::default()).class
    }

    #[test]
    fn reference_sequences() {
        assert_eq!(class(&[1, 1, 1, 1, 1, 1]), GrowthClass::Bounded);
        assert_eq!(class(&[2, 3, 4, 5, 6, 7]), GrowthClass::Linear);
        assert_eq!(class(&[4, 16, 64, 256, 1024, 4096]), GrowthClass::Exponential);
        assert_eq!(class(&[1, 4, 9, 16, 25, 36, 49]), GrowthClass::Quadratic);
        assert_eq!(class(&[2, 2, 1, 2, 2, 1, 2, 2]), GrowthClass::Bounded);
        assert_eq!(class(&[1, 2, 3]), GrowthClass::Undetermined);
        assert_eq!(class(&[100, 101, 103, 104, 106, 107, 109, 110]), GrowthClass::Undetermined);
    }

    #[test]
    fn decimals() {
        let r = BigRational::new(BigInt::from(-7), BigInt::from(4));
        assert_eq!(rational_decimal(&r, 3), "-1.750");
        assert_eq!(rational_decimal(&BigRational::new(1.into(), 3.into()), 4), "0.3333");
    }

    #[test]
    fn log_of_large_integers() {
        let x = BigInt::from(3).pow(2000);
        assert!((ln_big(&x) - 2000.0 * 3f64.ln()).abs() < 1e-6);
    }

    #[test]
    fn monomial_iterates_grow_linearly() {
        let f = BirMap::parse(Ambient::P2, "(x y, y)").unwrap();
        let d = iterate_degrees(&f, 6, DEFAULT_CAP).unwrap();
        let v: Vec<BigInt> = d.iter().map(|r| r.degree.clone()).collect();
        assert_eq!(v, seq(&[2, 3, 4, 5, 6, 7]));
        assert_eq!(classify_growth(&v, &GrowthConfig::default()).class, GrowthClass::Linear);
    }

    #[test]
    fn budget_error_names_iterate() {
        let f = BirMap::parse(Ambient::P2, "(y, x + y^2)").unwrap();
        match iterate_degrees(&f, 5, 3) {
            Err(MapError::Budget { iterate, cap }) => {
                assert_eq!(cap, 3);
                assert!(iterate >= 2);
            }
            other => panic!("{other:?}"),
        }
    }
}
