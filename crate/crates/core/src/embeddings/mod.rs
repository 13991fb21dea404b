//! Homomorphisms from SL(2,Z) to birational maps, evaluated on words.
//!
//! Families defined on `S` and `R` compose generator images along the word;
//! families defined on `S` and `T = RS` go through [`syllable_form`]. The
//! fibred families (`theta_n`, `theta_P`) compose in [`FibredMap`] form and
//! convert at the end. `theta_k` and `theta_eps` also have step chains whose
//! degrees are certified without expanding the composition.

pub mod cayley;
pub mod fibred;
pub mod orbit;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{MultiPoly, RatFunc, Scalar, UPoly};
use crate::birmap::expr::{parse_affine_expr, Frac};
use crate::birmap::growth::{iterate_degrees, DegreeRecord, DEFAULT_CAP};
use crate::birmap::serial::{scalar_from_strings, scalar_strings};
use crate::birmap::{Ambient, BirMap, ProjPoint, Step, StepChain};
use crate::birmap::certify::DegreeData;
use crate::error::{EmbeddingError, MapError};
use crate::sl2z::{syllable_form, Gen, GroupWord, Letter, Mat2};

pub use cayley::{cayley_check, CayleyReport};
pub use fibred::FibredMap;
pub use orbit::{findable_roots, orbit_disjointness_check, OrbitReport};

pub const SPEC_SCHEMA_VERSION: u32 = 1;

/// One member of a family, with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum EmbeddingSpec {
    /// `theta_s`: monomial maps `(x^a y^b, x^c y^d)`.
    Standard,
    /// `theta_minus`: the standard images twisted by signs.
    SignTwist,
    /// `theta_eps` on P¹×P¹.
    Deformation { eps: Scalar },
    /// `theta_e`: linear maps `(ax+by : cx+dy : z)`.
    Linear,
    /// `theta_n`: `((ax+b)/(cx+d), χ(M) y/(cx+d)^n)`.
    Weighted { n: u32 },
    /// `theta_P`: the `n = 0` member twisted by `y ↦ y·P(x)`.
    Parabolic { p: RatFunc },
    /// `theta_k`: the linear family conjugated on `T` by a degree-`k` map.
    Hyperbolic { k: u32, mu: Scalar },
}

pub const FAMILY_NAMES: [&str; 7] = [
    "theta_s",
    "theta_minus",
    "theta_eps",
    "theta_e",
    "theta_n",
    "theta_P",
    "theta_k",
];

impl EmbeddingSpec {
    pub fn deformation(eps: Scalar) -> Result<Self, EmbeddingError> {
        let s = EmbeddingSpec::Deformation { eps };
        s.validate()?;
        Ok(s)
    }

    pub fn weighted(n: u32) -> Self {
        EmbeddingSpec::Weighted { n }
    }

    /// `P = num/den`; both squarefree and coprime, `P` not constant.
    pub fn parabolic(num: UPoly, den: UPoly) -> Result<Self, EmbeddingError> {
        if num.is_zero() || den.is_zero() {
            return Err(EmbeddingError::Spec("P must have nonzero numerator and denominator".into()));
        }
        if !num.gcd(&den).is_constant() {
            return Err(EmbeddingError::Spec("numerator and denominator of P share a factor".into()));
        }
        if !num.is_squarefree() || !den.is_squarefree() {
            return Err(EmbeddingError::Spec("zeros and poles of P must be simple".into()));
        }
        let p = RatFunc::new(num, den)?;
        let s = EmbeddingSpec::Parabolic { p };
        s.validate()?;
        Ok(s)
    }

    /// Parses `P` from an expression in `x`, e.g. `(x-2)/(x-3)`.
    pub fn parabolic_from_str(src: &str) -> Result<Self, EmbeddingError> {
        let f = parse_affine_expr(src)?;
        EmbeddingSpec::parabolic(univariate(&f.num)?, univariate(&f.den)?)
    }

    pub fn hyperbolic(k: u32, mu: Scalar) -> Result<Self, EmbeddingError> {
        let s = EmbeddingSpec::Hyperbolic { k, mu };
        s.validate()?;
        Ok(s)
    }

    /// Parameters used when a family is named without any.
    pub fn default_for(family: &str) -> Result<Self, EmbeddingError> {
        Ok(match family {
            "theta_s" => EmbeddingSpec::Standard,
            "theta_minus" => EmbeddingSpec::SignTwist,
            "theta_eps" => EmbeddingSpec::Deformation { eps: Scalar::from_int(2) },
            "theta_e" => EmbeddingSpec::Linear,
            "theta_n" => EmbeddingSpec::Weighted { n: 2 },
            "theta_P" => EmbeddingSpec::parabolic(UPoly::from_ints(&[-2, 1]), UPoly::from_ints(&[-3, 1]))?,
            "theta_k" => EmbeddingSpec::Hyperbolic {
                k: 2,
                mu: Scalar::from_int(5),
            },
            other => return Err(EmbeddingError::Spec(format!("unknown family `{other}`"))),
        })
    }

    pub fn family(&self) -> &'static str {
        match self {
            EmbeddingSpec::Standard => "theta_s",
            EmbeddingSpec::SignTwist => "theta_minus",
            EmbeddingSpec::Deformation { .. } => "theta_eps",
            EmbeddingSpec::Linear => "theta_e",
            EmbeddingSpec::Weighted { .. } => "theta_n",
            EmbeddingSpec::Parabolic { .. } => "theta_P",
            EmbeddingSpec::Hyperbolic { .. } => "theta_k",
        }
    }

    pub fn validate(&self) -> Result<(), EmbeddingError> {
        match self {
            EmbeddingSpec::Deformation { eps } if eps.is_zero() => {
                Err(EmbeddingError::Spec("eps must be nonzero".into()))
            }
            EmbeddingSpec::Parabolic { p } if p.num().is_constant() && p.den().is_constant() => {
                Err(EmbeddingError::Spec("P must have at least one zero or pole".into()))
            }
            EmbeddingSpec::Hyperbolic { k, .. } if *k == 0 || k % 2 == 1 => {
                Err(EmbeddingError::Spec(format!("k must be even and positive, got {k}")))
            }
            EmbeddingSpec::Hyperbolic { mu, .. } if mu.is_zero() => {
                Err(EmbeddingError::Spec("mu must be nonzero".into()))
            }
            _ => Ok(()),
        }
    }

    /// For `theta_eps`: whether `eps` is real and positive, the range where
    /// the quadridegree law and type preservation are proven.
    pub fn eps_is_positive_real(&self) -> Option<bool> {
        match self {
            EmbeddingSpec::Deformation { eps } => Some(eps.is_real() && eps.re().is_positive()),
            _ => None,
        }
    }

    pub fn ambient(&self) -> Ambient {
        match self {
            EmbeddingSpec::Deformation { .. } => Ambient::P1xP1,
            _ => Ambient::P2,
        }
    }

    /// Whether the family is defined on `S` and `T = RS` rather than `S`, `R`.
    pub fn uses_syllables(&self) -> bool {
        matches!(
            self,
            EmbeddingSpec::Weighted { .. } | EmbeddingSpec::Parabolic { .. } | EmbeddingSpec::Hyperbolic { .. }
        )
    }

    pub fn has_certified_degrees(&self) -> bool {
        matches!(self, EmbeddingSpec::Deformation { .. } | EmbeddingSpec::Hyperbolic { .. })
    }

    pub fn to_json(&self) -> SpecJson {
        let mut j = SpecJson {
            schema_version: SPEC_SCHEMA_VERSION,
            family: self.family().to_string(),
            eps: None,
            n: None,
            p_num: None,
            p_den: None,
            k: None,
            mu: None,
        };
        match self {
            EmbeddingSpec::Deformation { eps } => j.eps = Some(scalar_strings(eps)),
            EmbeddingSpec::Weighted { n } => j.n = Some(*n),
            EmbeddingSpec::Parabolic { p } => {
                j.p_num = Some(p.num().coeffs().iter().map(scalar_strings).collect());
                j.p_den = Some(p.den().coeffs().iter().map(scalar_strings).collect());
            }
            EmbeddingSpec::Hyperbolic { k, mu } => {
                j.k = Some(*k);
                j.mu = Some(scalar_strings(mu));
            }
            _ => {}
        }
        j
    }

    pub fn from_json(j: &SpecJson) -> Result<Self, EmbeddingError> {
        if j.schema_version != SPEC_SCHEMA_VERSION {
            return Err(EmbeddingError::Spec(format!("unsupported schema version {}", j.schema_version)));
        }
        let need = |name: &str| EmbeddingError::Spec(format!("{} needs `{name}`", j.family));
        let upoly = |v: &Vec<[String; 4]>| -> Result<UPoly, EmbeddingError> {
            let c: Result<Vec<Scalar>, MapError> = v.iter().map(scalar_from_strings).collect();
            Ok(UPoly::new(c?))
        };
        let spec = match j.family.as_str() {
            "theta_eps" => EmbeddingSpec::Deformation {
                eps: scalar_from_strings(j.eps.as_ref().ok_or_else(|| need("eps"))?)?,
            },
            "theta_n" => EmbeddingSpec::Weighted {
                n: j.n.ok_or_else(|| need("n"))?,
            },
            "theta_P" => {
                let num = upoly(j.p_num.as_ref().ok_or_else(|| need("p_num"))?)?;
                let den = upoly(j.p_den.as_ref().ok_or_else(|| need("p_den"))?)?;
                return EmbeddingSpec::parabolic(num, den);
            }
            "theta_k" => EmbeddingSpec::Hyperbolic {
                k: j.k.ok_or_else(|| need("k"))?,
                mu: scalar_from_strings(j.mu.as_ref().ok_or_else(|| need("mu"))?)?,
            },
            other => EmbeddingSpec::default_for(other)?,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Self, EmbeddingError> {
        let j: SpecJson = serde_json::from_str(s).map_err(|e| EmbeddingError::Spec(e.to_string()))?;
        EmbeddingSpec::from_json(&j)
    }
}

impl fmt::Display for EmbeddingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbeddingSpec::Deformation { eps } => write!(f, "theta_eps(eps={eps})"),
            EmbeddingSpec::Weighted { n } => write!(f, "theta_n(n={n})"),
            EmbeddingSpec::Parabolic { p } => write!(f, "theta_P(P={p})"),
            EmbeddingSpec::Hyperbolic { k, mu } => write!(f, "theta_k(k={k}, mu={mu})"),
            other => f.write_str(other.family()),
        }
    }
}

/// JSON form; scalars are `[re_num, re_den, im_num, im_den]`, polynomial
/// coefficients lowest degree first.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct SpecJson {
    pub schema_version: u32,
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<[String; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_num: Option<Vec<[String; 4]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_den: Option<Vec<[String; 4]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<[String; 4]>,
}

fn univariate(p: &MultiPoly) -> Result<UPoly, EmbeddingError> {
    if p.degree_in(1) > 0 {
        return Err(EmbeddingError::Spec("P may only involve x".into()));
    }
    let mut c = vec![Scalar::zero(); p.degree_in(0) as usize + 1];
    for (m, v) in p.terms() {
        c[m.0[0] as usize] = v.clone();
    }
    Ok(UPoly::new(c))
}

fn xv() -> MultiPoly {
    MultiPoly::var(2, 0)
}

fn yv() -> MultiPoly {
    MultiPoly::var(2, 1)
}

fn cst(c: &Scalar) -> MultiPoly {
    MultiPoly::constant(2, c.clone())
}

fn affine(ambient: Ambient, f: (MultiPoly, MultiPoly), g: (MultiPoly, MultiPoly)) -> Result<BirMap, MapError> {
    BirMap::from_affine(ambient, &Frac { num: f.0, den: f.1 }, &Frac { num: g.0, den: g.1 })
}

/// `(ax+by : cx+dy : z)`.
pub fn linear_image(m: &Mat2) -> BirMap {
    let v = |i| MultiPoly::var(3, i);
    let c = |n: &BigInt| MultiPoly::constant(3, Scalar::from_bigint(n.clone()));
    let comps = vec![
        &(&c(&m.a) * &v(0)) + &(&c(&m.b) * &v(1)),
        &(&c(&m.c) * &v(0)) + &(&c(&m.d) * &v(1)),
        v(2),
    ];
    BirMap::new(Ambient::P2, comps).expect("invertible linear map")
}

/// Images of the four `θ_eps` maps `R₁`, `R₁⁻¹`, `R₂`, `R₂⁻¹` with
/// `R₁ = R`, `R₂ = (RS)²S`.
pub struct DeformationMaps {
    pub r1: BirMap,
    pub r1_inv: BirMap,
    pub r2: BirMap,
    pub r2_inv: BirMap,
    /// Base-points of `R₁`, `R₂`: `(eps, -1)`, `(-eps, 1)`.
    pub forward_base: Vec<ProjPoint>,
    /// Base-points of `R₁⁻¹`, `R₂⁻¹`: `(1, eps)`, `(-1, -eps)`.
    pub inverse_base: Vec<ProjPoint>,
}

pub fn deformation_maps(e: &Scalar) -> Result<DeformationMaps, MapError> {
    let amb = Ambient::P1xP1;
    let (x, y, ec, one) = (xv(), yv(), cst(e), MultiPoly::one(2));
    let xy = &x * &y;
    let x_ey = &x + &(&ec * &y);
    let e_xy = &ec + &xy;
    let e_mxy = &ec - &xy;
    let r1 = affine(amb, (x_ey.clone(), e_xy.clone()), (&ec * &y, one.clone()))?;
    let r1_inv = affine(
        amb,
        (&ec * &(&(&ec * &x) - &y), e_mxy.clone()),
        (y.clone(), ec.clone()),
    )?;
    let r2 = affine(amb, (x.clone(), ec.clone()), (&ec * &x_ey, e_xy))?;
    let r2_inv = affine(amb, (&ec * &x, one), (&y - &(&ec * &x), e_mxy))?;
    let pt = |a: Scalar, b: Scalar| ProjPoint::affine(amb, a, b);
    let one_s = Scalar::one();
    Ok(DeformationMaps {
        r1,
        r1_inv,
        r2,
        r2_inv,
        forward_base: vec![pt(e.clone(), -&one_s), pt(-e, one_s.clone())],
        inverse_base: vec![pt(one_s.clone(), e.clone()), pt(-&one_s, -e)],
    })
}

/// Pieces of `theta_k`: `ψ`, `ψ⁻¹`, `L = θ_e(T)`, `L⁻¹`.
pub struct HyperbolicMaps {
    pub psi: BirMap,
    pub psi_inv: BirMap,
    pub l: BirMap,
    pub l_inv: BirMap,
    /// `(mu : 1 : 0)`, the only proper base-point of both `ψ` and `ψ⁻¹`.
    pub base: ProjPoint,
}

pub fn hyperbolic_maps(k: u32, mu: &Scalar) -> Result<HyperbolicMaps, MapError> {
    let v = |i| MultiPoly::var(3, i);
    let (x, y, z) = (v(0), v(1), v(2));
    let muy = &MultiPoly::constant(3, mu.clone()) * &y;
    let shift = BirMap::new(Ambient::P2, vec![&x + &muy, y.clone(), z.clone()])?;
    let unshift = BirMap::new(Ambient::P2, vec![&x - &muy, y.clone(), z.clone()])?;
    let k = k as u64;
    let xk1 = x.pow(k - 1);
    let zk = z.pow(k);
    let core = BirMap::new(Ambient::P2, vec![x.pow(k), &(&y * &xk1) + &zk, &z * &xk1])?;
    let core_inv = BirMap::new(Ambient::P2, vec![x.pow(k), &(&y * &xk1) - &zk, &z * &xk1])?;
    let psi = shift.compose(&core.compose(&unshift)?)?;
    let psi_inv = shift.compose(&core_inv.compose(&unshift)?)?;
    let t = Mat2::new(-1, 1, -1, 0);
    Ok(HyperbolicMaps {
        psi,
        psi_inv,
        l: linear_image(&t),
        l_inv: linear_image(&t.inverse()),
        base: ProjPoint::plane(mu.clone(), Scalar::one(), Scalar::zero())?,
    })
}

/// `χ(S)` for `theta_n`.
fn weighted_character(n: u32) -> Scalar {
    if n % 2 == 1 {
        Scalar::one()
    } else {
        Scalar::i()
    }
}

/// `((ax+b)/(cx+d), χ y/(cx+d)^n)`.
pub fn weighted_image(m: &Mat2, chi: Scalar, n: u32) -> FibredMap {
    let s = |v: &BigInt| Scalar::from_bigint(v.clone());
    let den = UPoly::linear(s(&m.c), s(&m.d)).pow(n);
    FibredMap::new(
        [s(&m.a), s(&m.b), s(&m.c), s(&m.d)],
        RatFunc::new(UPoly::constant(chi), den).expect("nonzero denominator"),
    )
    .expect("unimodular")
}

/// `θ(S)` and `θ(T)` of a fibred family.
pub fn fibred_generators(spec: &EmbeddingSpec) -> Option<(FibredMap, FibredMap)> {
    let t = Mat2::new(-1, 1, -1, 0);
    match spec {
        EmbeddingSpec::Weighted { n } => Some((
            weighted_image(&Mat2::s(), weighted_character(*n), *n),
            weighted_image(&t, Scalar::one(), *n),
        )),
        EmbeddingSpec::Parabolic { p } => {
            let s = weighted_image(&Mat2::s(), Scalar::i(), 0);
            let base = weighted_image(&t, Scalar::one(), 0);
            let moved = p.compose(&base.mobius_func());
            let factor = moved.div(p).expect("P is nonzero");
            Some((s, FibredMap::new(base.mobius, factor).expect("unimodular")))
        }
        _ => None,
    }
}

/// Images of the two generators the family is defined on.
#[derive(Clone, Debug)]
pub struct GeneratorImages {
    pub ambient: Ambient,
    pub s: BirMap,
    /// `θ(R)` or `θ(RS)`, see `second_is_rs`.
    pub second: BirMap,
    pub second_is_rs: bool,
    /// `θ(RS)` as a sequence of maps, first applied first.
    pub rs_factors: Vec<BirMap>,
}

pub fn generator_images(spec: &EmbeddingSpec) -> Result<GeneratorImages, EmbeddingError> {
    spec.validate()?;
    let amb = spec.ambient();
    let by_r = |s: BirMap, r: BirMap| GeneratorImages {
        ambient: amb,
        rs_factors: vec![s.clone(), r.clone()],
        s,
        second: r,
        second_is_rs: false,
    };
    Ok(match spec {
        EmbeddingSpec::Standard => by_r(
            BirMap::parse(amb, "(y, 1/x)")?,
            BirMap::parse(amb, "(x y, y)")?,
        ),
        EmbeddingSpec::SignTwist => by_r(
            BirMap::parse(amb, "(y, 1/x)")?,
            BirMap::parse(amb, "(x y, -y)")?,
        ),
        EmbeddingSpec::Linear => by_r(linear_image(&Mat2::s()), linear_image(&Mat2::r())),
        EmbeddingSpec::Deformation { eps } => {
            by_r(BirMap::parse(amb, "(y, -x)")?, deformation_maps(eps)?.r1)
        }
        EmbeddingSpec::Weighted { .. } | EmbeddingSpec::Parabolic { .. } => {
            let (s, t) = fibred_generators(spec).expect("fibred family");
            let t = t.to_birmap(amb)?;
            GeneratorImages {
                ambient: amb,
                s: s.to_birmap(amb)?,
                second: t.clone(),
                second_is_rs: true,
                rs_factors: vec![t],
            }
        }
        EmbeddingSpec::Hyperbolic { k, mu } => {
            let h = hyperbolic_maps(*k, mu)?;
            let factors = vec![h.psi_inv, h.l, h.psi];
            let t = compose_all(amb, &factors, DEFAULT_CAP)?;
            GeneratorImages {
                ambient: amb,
                s: linear_image(&Mat2::s()),
                second: t,
                second_is_rs: true,
                rs_factors: factors,
            }
        }
    })
}

/// `maps[n-1] ∘ … ∘ maps[0]`, exactly.
pub fn compose_all(ambient: Ambient, maps: &[BirMap], cap: usize) -> Result<BirMap, MapError> {
    let mut chain = StepChain::new(ambient);
    for m in maps {
        chain.push(Step::automorphism(m.clone()));
    }
    chain.compose_exact(cap)
}

fn letter_images(spec: &EmbeddingSpec) -> Result<[BirMap; 4], EmbeddingError> {
    let amb = spec.ambient();
    let g = generator_images(spec)?;
    let s_inv = g.s.compose(&g.s)?.compose(&g.s)?;
    let r_inv = match spec {
        EmbeddingSpec::Standard => BirMap::parse(amb, "(x/y, y)")?,
        EmbeddingSpec::SignTwist => BirMap::parse(amb, "(-x/y, -y)")?,
        EmbeddingSpec::Linear => linear_image(&Mat2::r().inverse()),
        EmbeddingSpec::Deformation { eps } => deformation_maps(eps)?.r1_inv,
        _ => unreachable!("family defined on S and RS"),
    };
    Ok([g.s, s_inv, g.second, r_inv])
}

/// `θ(w)` as an exact map in lowest terms.
pub fn evaluate(spec: &EmbeddingSpec, w: &GroupWord) -> Result<BirMap, EmbeddingError> {
    evaluate_with_cap(spec, w, DEFAULT_CAP)
}

pub fn evaluate_with_cap(spec: &EmbeddingSpec, w: &GroupWord, cap: usize) -> Result<BirMap, EmbeddingError> {
    spec.validate()?;
    let amb = spec.ambient();
    if let Some(f) = evaluate_fibred(spec, w) {
        return Ok(f.to_birmap(amb)?);
    }
    if let EmbeddingSpec::Hyperbolic { .. } = spec {
        return Ok(step_chain(spec, w)?.compose_exact(cap)?);
    }
    let [s, s_inv, r, r_inv] = letter_images(spec)?;
    let mut maps = Vec::new();
    // rightmost letter is applied first
    for &(g, e) in w.letters().iter().rev() {
        let (img, reps) = match g {
            Gen::S => match e.rem_euclid(4) {
                3 => (&s_inv, 1),
                k => (&s, k as u64),
            },
            Gen::R if e > 0 => (&r, e.unsigned_abs()),
            Gen::R => (&r_inv, e.unsigned_abs()),
        };
        for _ in 0..reps {
            maps.push(img.clone());
        }
    }
    Ok(compose_all(amb, &maps, cap)?)
}

/// Fibred families only: `θ(w)` before conversion.
pub fn evaluate_fibred(spec: &EmbeddingSpec, w: &GroupWord) -> Option<FibredMap> {
    let (s, t) = fibred_generators(spec)?;
    let s_inv = s.pow(3);
    let t_inv = t.pow(2);
    let sf = syllable_form(w);
    let mut acc = if sf.central == 1 { s.pow(2) } else { FibredMap::identity() };
    for l in &sf.letters {
        let img = match l {
            Letter::S(1) => &s,
            Letter::S(_) => &s_inv,
            Letter::T(1) => &t,
            Letter::T(_) => &t_inv,
        };
        acc = acc.compose(img);
    }
    Some(acc)
}

fn step_of(map: &BirMap) -> Step {
    Step::automorphism(map.clone())
}

/// `θ(w)` as a chain of steps with the base-points of their inverses, for
/// the families whose degrees can be certified.
pub fn step_chain(spec: &EmbeddingSpec, w: &GroupWord) -> Result<StepChain, EmbeddingError> {
    spec.validate()?;
    match spec {
        EmbeddingSpec::Hyperbolic { k, mu } => {
            let h = hyperbolic_maps(*k, mu)?;
            let base = vec![h.base.clone()];
            let psi = Step::new(h.psi, base.clone());
            let psi_inv = Step::new(h.psi_inv, base);
            let l = step_of(&h.l);
            let l_inv = step_of(&h.l_inv);
            let s = step_of(&linear_image(&Mat2::s()));
            let s_inv = step_of(&linear_image(&Mat2::s().inverse()));
            let sf = syllable_form(w);
            let mut chain = StepChain::new(Ambient::P2);
            for l_ in sf.letters.iter().rev() {
                match l_ {
                    Letter::S(1) => chain.push(s.clone()),
                    Letter::S(_) => chain.push(s_inv.clone()),
                    Letter::T(a) => {
                        chain.push(psi_inv.clone());
                        chain.push(if *a == 1 { l.clone() } else { l_inv.clone() });
                        chain.push(psi.clone());
                    }
                }
            }
            if sf.central == 1 {
                chain.push(step_of(&linear_image(&Mat2::s().pow(2))));
            }
            Ok(chain)
        }
        EmbeddingSpec::Deformation { eps } => {
            let d = deformation_maps(eps)?;
            let r1 = Step::new(d.r1, d.inverse_base.clone());
            let r2 = Step::new(d.r2, d.inverse_base);
            let s = step_of(&BirMap::parse(Ambient::P1xP1, "(y, -x)")?);
            let (e, factors, f) = positive_split(&w.matrix())
                .ok_or_else(|| EmbeddingError::Spec("no nonnegative factorisation found".into()))?;
            let mut chain = StepChain::new(Ambient::P1xP1);
            for _ in 0..f {
                chain.push(s.clone());
            }
            for &first in factors.iter().rev() {
                chain.push(if first { r1.clone() } else { r2.clone() });
            }
            for _ in 0..e {
                chain.push(s.clone());
            }
            Ok(chain)
        }
        other => Err(EmbeddingError::Spec(format!(
            "{} has no certified degree route",
            other.family()
        ))),
    }
}

/// Writes `M = S^e · P · S^f` with `P` a product of `R₁ = [[1,1],[0,1]]` and
/// `R₂ = [[1,0],[1,1]]`; returns `e`, the factors of `P` left to right
/// (`true` for `R₁`) and `f`.
pub fn positive_split(m: &Mat2) -> Option<(u8, Vec<bool>, u8)> {
    let s_inv = Mat2::s().inverse();
    for e in 0..4u8 {
        for f in 0..4u8 {
            let p = &(&s_inv.pow(e as u32) * m) * &s_inv.pow(f as u32);
            if [&p.a, &p.b, &p.c, &p.d].iter().all(|v| !v.is_negative()) {
                return Some((e, nonnegative_factors(p)?, f));
            }
        }
    }
    None
}

fn nonnegative_factors(mut p: Mat2) -> Option<Vec<bool>> {
    let mut out = Vec::new();
    while !p.is_identity() {
        if p.a >= p.c && p.b >= p.d {
            p = Mat2::try_new(&p.a - &p.c, &p.b - &p.d, p.c.clone(), p.d.clone())?;
            out.push(true);
        } else if p.c >= p.a && p.d >= p.b {
            p = Mat2::try_new(p.a.clone(), p.b.clone(), &p.c - &p.a, &p.d - &p.b)?;
            out.push(false);
        } else {
            return None;
        }
    }
    Some(out)
}

/// Certified degree data of `θ(w)`.
pub fn certified_degree(spec: &EmbeddingSpec, w: &GroupWord) -> Result<DegreeData, EmbeddingError> {
    Ok(step_chain(spec, w)?.certified_degree()?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeMethod {
    /// Certified where available, exact otherwise.
    Auto,
    Exact,
    Certified,
}

fn record(n: usize, d: DegreeData) -> DegreeRecord {
    match d {
        DegreeData::Plane(deg) => DegreeRecord {
            n,
            degree: deg,
            quadridegree: None,
        },
        q @ DegreeData::Quadri(_) => DegreeRecord::from_quadri(n, q.quadridegree().expect("quadri")),
    }
}

/// Degrees of `θ(w)^j` for `j = 1..=n`.
pub fn degree_sequence(
    spec: &EmbeddingSpec,
    w: &GroupWord,
    n: usize,
    method: DegreeMethod,
    cap: usize,
) -> Result<Vec<DegreeRecord>, EmbeddingError> {
    let certified = match method {
        DegreeMethod::Certified => true,
        DegreeMethod::Exact => false,
        DegreeMethod::Auto => spec.has_certified_degrees(),
    };
    if certified {
        return (1..=n)
            .map(|j| Ok(record(j, certified_degree(spec, &w.pow(j as u32))?)))
            .collect();
    }
    if let Some(f) = evaluate_fibred(spec, w) {
        let mut acc = FibredMap::identity();
        let mut out = Vec::new();
        for j in 1..=n {
            acc = f.compose(&acc);
            let m = acc.to_birmap(spec.ambient())?;
            if m.components().iter().any(|c| c.len() > cap) {
                return Err(MapError::Budget { iterate: j, cap }.into());
            }
            out.push(DegreeRecord::of_map(j, &m));
        }
        return Ok(out);
    }
    Ok(iterate_degrees(&evaluate_with_cap(spec, w, cap)?, n, cap)?)
}

/// Outcome of checking the defining relations on the generator images.
#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub family: String,
    pub s_fourth_is_identity: bool,
    pub rs_cubed_is_identity: bool,
    pub s_squared_is_central: bool,
    pub s_squared_is_nontrivial: bool,
}

impl RelationReport {
    pub fn all_pass(&self) -> bool {
        self.s_fourth_is_identity && self.rs_cubed_is_identity && self.s_squared_is_central && self.s_squared_is_nontrivial
    }
}

/// Checks `θ(S)⁴ = 1`, `(θ(R)θ(S))³ = 1`, `θ(S²)` commuting with `θ(RS)`
/// and `θ(S²) ≠ 1` by exact composition of the generator images.
pub fn verify_relations(spec: &EmbeddingSpec) -> Result<RelationReport, EmbeddingError> {
    let g = generator_images(spec)?;
    let amb = g.ambient;
    let s2 = g.s.compose(&g.s)?;
    let s4 = s2.compose(&s2)?;
    let rs3: Vec<BirMap> = g.rs_factors.iter().cycle().take(3 * g.rs_factors.len()).cloned().collect();
    let rs3 = compose_all(amb, &rs3, DEFAULT_CAP)?;
    let mut before = vec![s2.clone()];
    before.extend(g.rs_factors.iter().cloned());
    let mut after = g.rs_factors.clone();
    after.push(s2.clone());
    let central = compose_all(amb, &before, DEFAULT_CAP)?.equals(&compose_all(amb, &after, DEFAULT_CAP)?);
    Ok(RelationReport {
        family: spec.to_string(),
        s_fourth_is_identity: s4.is_identity(),
        rs_cubed_is_identity: rs3.is_identity(),
        s_squared_is_central: central,
        s_squared_is_nontrivial: !s2.is_identity(),
    })
}

#[cfg(test)]
mod tests;
