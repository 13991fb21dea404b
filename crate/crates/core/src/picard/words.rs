//! Words in `ρ1 = αβ`, `ρ2 = α²β` on the reduced lattice and the growth of
//! the last coordinate of `H_n`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::cases::{self, JCase};
use crate::algebra::charpoly::{spectral_radius, RatInterval};
use crate::algebra::IntMatrix;
use crate::error::PicardError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Rho {
    One,
    Two,
}

impl Rho {
    pub fn power(self) -> u32 {
        match self {
            Rho::One => 1,
            Rho::Two => 2,
        }
    }
}

impl fmt::Display for Rho {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ρ{}", self.power())
    }
}

pub fn format_rho_word(w: &[Rho]) -> String {
    w.iter().map(|r| r.power().to_string()).collect()
}

/// Accepts `"1 2 2"`, `"r1,r2"`, `"ρ1 ρ2"` or the compact `"122"`.
pub fn parse_rho_word(s: &str) -> Result<Vec<Rho>, PicardError> {
    let mut out = Vec::new();
    for tok in s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
        let t = tok.trim_start_matches("rho").trim_start_matches(['r', 'ρ']);
        if t.is_empty() || !t.chars().all(|c| c == '1' || c == '2') {
            return Err(PicardError::Usage(format!("bad letter `{tok}`: expected ρ1 or ρ2")));
        }
        out.extend(t.chars().map(|c| if c == '1' { Rho::One } else { Rho::Two }));
    }
    if out.is_empty() {
        return Err(PicardError::Usage("empty ρ-word".into()));
    }
    Ok(out)
}

pub fn rho_matrix(j: JCase, r: Rho) -> IntMatrix {
    let a = cases::reduced_alpha(j);
    let b = cases::reduced_beta();
    match r {
        Rho::One => &a * &b,
        Rho::Two => &(&a * &a) * &b,
    }
}

/// `ρ_{w1} ρ_{w2} ⋯ ρ_{wm}`.
pub fn word_isometry(j: JCase, letters: &[Rho]) -> Result<IntMatrix, PicardError> {
    if letters.is_empty() {
        return Err(PicardError::Usage("word must be nonempty".into()));
    }
    let mut m = rho_matrix(j, letters[0]);
    for &r in &letters[1..] {
        m = &m * &rho_matrix(j, r);
    }
    Ok(m)
}

/// `H_n = (-a, -b, -c, ℓ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HVector {
    pub step: usize,
    pub coords: [BigInt; 4],
}

impl HVector {
    pub fn start() -> Self {
        HVector {
            step: 0,
            coords: [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::from(1)],
        }
    }

    pub fn a(&self) -> BigInt {
        -&self.coords[0]
    }
    pub fn b(&self) -> BigInt {
        -&self.coords[1]
    }
    pub fn c(&self) -> BigInt {
        -&self.coords[2]
    }
    pub fn ell(&self) -> &BigInt {
        &self.coords[3]
    }

    pub fn apply(&self, m: &IntMatrix) -> HVector {
        let v = m.apply(&self.coords);
        HVector {
            step: self.step + 1,
            coords: [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()],
        }
    }

    /// Name of the first inequality that fails at this step.
    pub fn first_failure(&self, j: JCase) -> Option<&'static str> {
        let (a, b, c, l) = (self.a(), self.b(), self.c(), self.ell().clone());
        let n = self.step as u32;
        if a.is_negative() {
            return Some("a ≥ 0");
        }
        if b.is_negative() {
            return Some("b ≥ 0");
        }
        if c.is_negative() {
            return Some("c ≥ 0");
        }
        if l.is_negative() {
            return Some("ℓ ≥ 0");
        }
        match j {
            JCase::J1 => {
                if BigInt::from(5) * &l <= BigInt::from(6) * &c {
                    return Some("ℓ > 6c/5");
                }
                if l <= BigInt::from(2) * &a {
                    return Some("ℓ > 2a");
                }
                if BigInt::from(3).pow(n) * &l < BigInt::from(5).pow(n) {
                    return Some("ℓ ≥ (5/3)^n");
                }
            }
            JCase::J23 => {
                if l <= c {
                    return Some("ℓ > c");
                }
                if l < BigInt::from(10).pow(n) {
                    return Some("ℓ ≥ 10^n");
                }
            }
        }
        None
    }
}

pub fn growth_base(j: JCase) -> BigRational {
    match j {
        JCase::J1 => BigRational::new(5.into(), 3.into()),
        JCase::J23 => BigRational::from_integer(10.into()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub step: usize,
    pub inequality: String,
    pub h: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityReport {
    pub case: String,
    pub letters: String,
    pub steps: usize,
    pub ells: Vec<String>,
    pub holds: bool,
    pub first_violation: Option<Violation>,
}

/// Runs `n_max` steps of `H_{n+1} = ρ_{i_{n+1}}(H_n)`, cycling through `letters`.
pub fn verify_inequalities(j: JCase, letters: &[Rho], n_max: usize) -> Result<InequalityReport, PicardError> {
    if n_max == 0 {
        return Err(PicardError::Usage("need at least one step".into()));
    }
    if letters.is_empty() {
        return Err(PicardError::Usage("word must be nonempty".into()));
    }
    let mats = [rho_matrix(j, Rho::One), rho_matrix(j, Rho::Two)];
    let mut h = HVector::start();
    let mut ells = Vec::with_capacity(n_max);
    let mut first_violation = None;
    for n in 0..n_max {
        let r = letters[n % letters.len()];
        h = h.apply(&mats[r.power() as usize - 1]);
        ells.push(h.ell().to_string());
        if let Some(ineq) = h.first_failure(j) {
            first_violation = Some(Violation {
                step: h.step,
                inequality: ineq.to_string(),
                h: h.coords.iter().map(|x| x.to_string()).collect(),
            });
            break;
        }
    }
    Ok(InequalityReport {
        case: j.as_str().into(),
        letters: format_rho_word(letters),
        steps: ells.len(),
        ells,
        holds: first_violation.is_none(),
        first_violation,
    })
}

/// All words of length `len`, in lexicographic order with `ρ1 < ρ2`.
pub fn words_of_length(len: usize) -> Vec<Vec<Rho>> {
    (0..1u64 << len)
        .map(|bits| {
            (0..len)
                .map(|i| if bits >> (len - 1 - i) & 1 == 0 { Rho::One } else { Rho::Two })
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub case: String,
    pub max_length: usize,
    pub words_checked: usize,
    pub violations: Vec<InequalityReport>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// One report per word of length `1..=max_len`, each run for its own
/// length; shorter words first.
pub fn word_reports(j: JCase, max_len: usize) -> Vec<InequalityReport> {
    let words: Vec<Vec<Rho>> = (1..=max_len).flat_map(words_of_length).collect();
    words
        .par_iter()
        .map(|w| verify_inequalities(j, w, w.len()).expect("nonempty word"))
        .collect()
}

pub fn sweep_inequalities(j: JCase, max_len: usize) -> SweepReport {
    summarize_sweep(j, max_len, word_reports(j, max_len))
}

pub fn summarize_sweep(j: JCase, max_len: usize, reports: Vec<InequalityReport>) -> SweepReport {
    SweepReport {
        case: j.as_str().into(),
        max_length: max_len,
        words_checked: reports.len(),
        violations: reports.into_iter().filter(|r| !r.holds).collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateMethod {
    /// The inequalities hold along the powers of the word.
    Growth,
    CharPoly,
    None,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralCertificate {
    pub case: String,
    pub letters: String,
    /// `base^m` as an exact rational.
    pub bound: String,
    pub bound_f64: f64,
    pub interval: (String, String),
    pub interval_f64: (f64, f64),
    pub growth_steps: usize,
    pub growth_holds: bool,
    /// Lower end of the enclosure is at least `bound`.
    pub charpoly_certified: bool,
    pub method: CertificateMethod,
}

impl SpectralCertificate {
    pub fn certified(&self) -> bool {
        self.method != CertificateMethod::None
    }
}

/// Lower bound `base^m` on the spectral radius of [`word_isometry`].
///
/// The powers `M^r H_0` are produced letter by letter (rightmost letter
/// first) for `powers` rounds and checked against the inequalities; root
/// isolation of the characteristic polynomial is the fallback and is always
/// reported.
pub fn certify_spectral_radius(j: JCase, letters: &[Rho], powers: usize) -> Result<SpectralCertificate, PicardError> {
    let m = word_isometry(j, letters)?;
    let bound = num_traits::pow(growth_base(j), letters.len());
    let tol = BigRational::new(1.into(), 1_000_000.into());
    let iv: RatInterval = spectral_radius(&m, &tol);
    let rev: Vec<Rho> = letters.iter().rev().copied().collect();
    let steps = powers.max(1) * letters.len();
    let growth = verify_inequalities(j, &rev, steps)?;
    let charpoly_certified = iv.lo >= bound;
    let method = if growth.holds {
        CertificateMethod::Growth
    } else if charpoly_certified {
        CertificateMethod::CharPoly
    } else {
        CertificateMethod::None
    };
    Ok(SpectralCertificate {
        case: j.as_str().into(),
        letters: format_rho_word(letters),
        bound_f64: bound.to_f64().unwrap_or(f64::NAN),
        bound: bound.to_string(),
        interval_f64: (iv.lo.to_f64().unwrap_or(f64::NAN), iv.hi.to_f64().unwrap_or(f64::NAN)),
        interval: (iv.lo.to_string(), iv.hi.to_string()),
        growth_steps: growth.steps,
        growth_holds: growth.holds,
        charpoly_certified,
        method,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn parse_forms() {
        let w = vec![Rho::One, Rho::Two, Rho::Two];
        assert_eq!(parse_rho_word("1 2 2").unwrap(), w);
        assert_eq!(parse_rho_word("r1,r2,r2").unwrap(), w);
        assert_eq!(parse_rho_word("ρ1 ρ2 ρ2").unwrap(), w);
        assert_eq!(parse_rho_word("122").unwrap(), w);
        assert!(parse_rho_word("13").is_err());
        assert!(parse_rho_word("").is_err());
    }

    #[test]
    fn rho1_is_alpha_times_beta() {
        let m = word_isometry(JCase::J1, &[Rho::One]).unwrap();
        assert_eq!(m, &cases::reduced_alpha(JCase::J1) * &IntMatrix::diag(&[-1i64, -1, 1, 1]));
        assert_eq!(m.apply(&ints(&[0, 0, 0, 1])), ints(&[-2, -4, -2, 5]));
        let m = word_isometry(JCase::J23, &[Rho::One]).unwrap();
        assert_eq!(m.apply(&ints(&[0, 0, 0, 1]))[3], BigInt::from(58));
    }

    #[test]
    fn printed_squares_and_orders() {
        for j in [JCase::J1, JCase::J23] {
            let a = cases::reduced_alpha(j);
            assert_eq!(&a * &a, cases::reduced_alpha_sq(j));
            assert!(a.pow(3).is_identity());
            assert!(cases::reduced_beta().pow(2).is_identity());
        }
    }

    #[test]
    fn single_steps() {
        let r = verify_inequalities(JCase::J1, &[Rho::One], 1).unwrap();
        assert!(r.holds);
        assert_eq!(r.ells, vec!["5"]);
        let r = verify_inequalities(JCase::J23, &[Rho::Two], 1).unwrap();
        assert!(r.holds);
        assert_eq!(r.ells, vec!["58"]);
    }

    #[test]
    fn violation_is_reported() {
        let h = HVector {
            step: 1,
            coords: [BigInt::from(1), BigInt::zero(), BigInt::zero(), BigInt::from(5)],
        };
        assert_eq!(h.first_failure(JCase::J1), Some("a ≥ 0"));
        let h = HVector {
            step: 2,
            coords: [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::from(99)],
        };
        assert_eq!(h.first_failure(JCase::J23), Some("ℓ ≥ 10^n"));
    }

    #[test]
    fn zero_steps_rejected() {
        assert!(verify_inequalities(JCase::J1, &[Rho::One], 0).is_err());
        assert!(word_isometry(JCase::J1, &[]).is_err());
    }

    #[test]
    fn short_sweeps_pass() {
        for j in [JCase::J1, JCase::J23] {
            let s = sweep_inequalities(j, 8);
            assert_eq!(s.words_checked, 510);
            assert!(s.passed(), "{:?}", s.violations.first());
        }
    }

    #[test]
    fn single_letter_radius() {
        let c = certify_spectral_radius(JCase::J1, &[Rho::One], 8).unwrap();
        assert!(c.growth_holds);
        assert!(c.interval_f64.0 > 6.37 && c.interval_f64.1 < 6.38, "{c:?}");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn radius_exceeds_bound(bits in prop::collection::vec(any::<bool>(), 1..5), j1 in any::<bool>()) {
            let w: Vec<Rho> = bits.iter().map(|&b| if b { Rho::Two } else { Rho::One }).collect();
            let j = if j1 { JCase::J1 } else { JCase::J23 };
            let c = certify_spectral_radius(j, &w, 2).unwrap();
            prop_assert!(c.certified());
            prop_assert!(c.interval_f64.0 >= c.bound_f64);
        }
    }
}
