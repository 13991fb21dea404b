//! Birational self-maps of P² and P¹×P¹ in lowest terms.
//!
//! P² maps have three homogeneous components in `(x, y, z)`. P¹×P¹ maps have
//! four components in `(x1, x2, y1, y2)`: the image is `((P1 : P2), (P3 : P4))`
//! and the affine chart is `x = x1/x2`, `y = y1/y2`. Composition follows
//! `compose(g, f) = g ∘ f`.

pub mod certify;
pub mod expr;
pub mod growth;
pub mod serial;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::gcd::{poly_gcd, poly_gcd_many};
use crate::algebra::poly::default_names;
use crate::algebra::{Grading, MultiPoly, Scalar};
use crate::error::MapError;
use expr::{Frac, MapExpr};

pub use certify::{Step, StepChain};
pub use growth::{classify_growth, dynamical_degree_estimate, iterate_degrees, GrowthClass, GrowthConfig, GrowthReport};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Ambient {
    P2,
    P1xP1,
}

impl Ambient {
    pub fn nvars(self) -> usize {
        match self {
            Ambient::P2 => 3,
            Ambient::P1xP1 => 4,
        }
    }

    /// Coordinate index groups that form one projective factor.
    pub fn factors(self) -> &'static [&'static [usize]] {
        match self {
            Ambient::P2 => &[&[0, 1, 2]],
            Ambient::P1xP1 => &[&[0, 1], &[2, 3]],
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ambient::P2 => "P2",
            Ambient::P1xP1 => "P1xP1",
        })
    }
}

/// Point with homogeneous coordinates, normalised per factor.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjPoint {
    ambient: Ambient,
    coords: Vec<Scalar>,
}

impl ProjPoint {
    pub fn new(ambient: Ambient, coords: Vec<Scalar>) -> Result<Self, MapError> {
        if coords.len() != ambient.nvars() {
            return Err(MapError::Usage(format!(
                "{ambient} points need {} coordinates",
                ambient.nvars()
            )));
        }
        let mut coords = coords;
        for g in ambient.factors() {
            // divide by the chart coordinate when it is nonzero, else by the first nonzero one
            let last = *g.last().unwrap();
            let pivot = if !coords[last].is_zero() {
                last
            } else {
                *g.iter()
                    .find(|&&i| !coords[i].is_zero())
                    .ok_or_else(|| MapError::Usage("all coordinates of a factor vanish".into()))?
            };
            let inv = coords[pivot].inv()?;
            for &i in g.iter() {
                coords[i] = &coords[i] * &inv;
            }
        }
        Ok(ProjPoint { ambient, coords })
    }

    pub fn plane(x: Scalar, y: Scalar, z: Scalar) -> Result<Self, MapError> {
        ProjPoint::new(Ambient::P2, vec![x, y, z])
    }

    /// Affine point `(x, y)` in the chart of either ambient.
    pub fn affine(ambient: Ambient, x: Scalar, y: Scalar) -> Self {
        let c = match ambient {
            Ambient::P2 => vec![x, y, Scalar::one()],
            Ambient::P1xP1 => vec![x, Scalar::one(), y, Scalar::one()],
        };
        ProjPoint::new(ambient, c).expect("affine points are valid")
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    /// Affine coordinates, `None` off the chart.
    pub fn to_affine(&self) -> Option<(Scalar, Scalar)> {
        match self.ambient {
            Ambient::P2 => (self.coords[2].is_one()).then(|| (self.coords[0].clone(), self.coords[1].clone())),
            Ambient::P1xP1 => (self.coords[1].is_one() && self.coords[3].is_one())
                .then(|| (self.coords[0].clone(), self.coords[2].clone())),
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|s| s.to_string()).collect();
        match self.ambient {
            Ambient::P2 => write!(f, "({} : {} : {})", c[0], c[1], c[2]),
            Ambient::P1xP1 => write!(f, "(({} : {}), ({} : {}))", c[0], c[1], c[2], c[3]),
        }
    }
}

/// Birational map in lowest terms.
#[derive(Clone, Debug)]
pub struct BirMap {
    ambient: Ambient,
    comps: Vec<MultiPoly>,
    inverse_tag: Option<String>,
}

fn graded(p: MultiPoly) -> MultiPoly {
    let g = p.infer_grading();
    p.with_grading(g).expect("inferred grading is valid")
}

impl BirMap {
    /// Builds a map from raw components, removing common factors.
    pub fn new(ambient: Ambient, comps: Vec<MultiPoly>) -> Result<Self, MapError> {
        let nv = ambient.nvars();
        if comps.len() != nv || comps.iter().any(|c| c.nvars() != nv) {
            return Err(MapError::Invalid(format!(
                "{ambient} maps need {nv} components in {nv} variables"
            )));
        }
        let mut comps = comps;
        match ambient {
            Ambient::P2 => {
                if comps.iter().all(|c| c.is_zero()) {
                    return Err(MapError::DegenerateComposition);
                }
                let degs: Vec<Grading> = comps.iter().filter(|c| !c.is_zero()).map(|c| c.infer_grading()).collect();
                if !degs.iter().all(|g| matches!(g, Grading::Total(_)) && *g == degs[0]) {
                    return Err(MapError::Invalid("components must be homogeneous of one degree".into()));
                }
                let g = poly_gcd_many(&comps)?;
                if !g.is_constant() {
                    for c in comps.iter_mut() {
                        *c = c.div_exact(&g)?;
                    }
                }
            }
            Ambient::P1xP1 => {
                for pair in [0usize, 2] {
                    let (a, b) = (&comps[pair], &comps[pair + 1]);
                    if a.is_zero() && b.is_zero() {
                        return Err(MapError::DegenerateComposition);
                    }
                    let ga = a.infer_grading();
                    let gb = b.infer_grading();
                    let ok = |g: Grading| matches!(g, Grading::Bi(..));
                    if (!a.is_zero() && !ok(ga)) || (!b.is_zero() && !ok(gb)) || (!a.is_zero() && !b.is_zero() && ga != gb) {
                        return Err(MapError::Invalid("each pair must be bihomogeneous of one bidegree".into()));
                    }
                    let g = poly_gcd(a, b)?;
                    if !g.is_constant() {
                        let qa = a.div_exact(&g)?;
                        let qb = b.div_exact(&g)?;
                        comps[pair] = qa;
                        comps[pair + 1] = qb;
                    }
                }
            }
        }
        let comps = comps.into_iter().map(graded).collect();
        Ok(BirMap {
            ambient,
            comps,
            inverse_tag: None,
        })
    }

    pub fn identity(ambient: Ambient) -> Self {
        let nv = ambient.nvars();
        BirMap::new(ambient, (0..nv).map(|i| MultiPoly::var(nv, i)).collect()).expect("identity is valid")
    }

    /// From affine rational components in `(x, y)`.
    pub fn from_affine(ambient: Ambient, f: &Frac, g: &Frac) -> Result<Self, MapError> {
        match ambient {
            Ambient::P2 => {
                let a = &f.num * &g.den;
                let b = &g.num * &f.den;
                let c = &f.den * &g.den;
                if c.is_zero() {
                    return Err(MapError::Algebra(crate::error::AlgebraError::DivisionByZero));
                }
                let d = [&a, &b, &c].iter().filter_map(|p| p.total_degree()).max().unwrap_or(0);
                let h = |p: &MultiPoly| p.remap(3, &[0, 1]).homogenize_group(&[0, 1], 2, d);
                BirMap::new(Ambient::P2, vec![h(&a), h(&b), h(&c)])
            }
            Ambient::P1xP1 => {
                let mut comps = Vec::new();
                for fr in [f, g] {
                    if fr.den.is_zero() {
                        return Err(MapError::Algebra(crate::error::AlgebraError::DivisionByZero));
                    }
                    let dx = fr.num.degree_in(0).max(fr.den.degree_in(0));
                    let dy = fr.num.degree_in(1).max(fr.den.degree_in(1));
                    for p in [&fr.num, &fr.den] {
                        comps.push(
                            p.remap(4, &[0, 2])
                                .homogenize_group(&[0, 1], 1, dx)
                                .homogenize_group(&[2, 3], 3, dy),
                        );
                    }
                }
                BirMap::new(Ambient::P1xP1, comps)
            }
        }
    }

    /// Parses `(f, g)` (affine, for either ambient) or `(X : Y : Z)` (plane).
    pub fn parse(ambient: Ambient, src: &str) -> Result<Self, MapError> {
        match expr::parse_map(src)? {
            MapExpr::Affine([f, g]) => BirMap::from_affine(ambient, &f, &g),
            MapExpr::Plane(c) => {
                if ambient != Ambient::P2 {
                    return Err(MapError::AmbientMismatch);
                }
                BirMap::new(Ambient::P2, c.to_vec())
            }
        }
    }

    pub fn with_inverse_tag(mut self, tag: impl Into<String>) -> Self {
        self.inverse_tag = Some(tag.into());
        self
    }

    pub fn inverse_tag(&self) -> Option<&str> {
        self.inverse_tag.as_deref()
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.comps
    }

    pub fn term_count(&self) -> usize {
        self.comps.iter().map(|c| c.len()).sum()
    }

    /// `self ∘ f`, reduced to lowest terms.
    pub fn compose(&self, f: &BirMap) -> Result<BirMap, MapError> {
        if self.ambient != f.ambient {
            return Err(MapError::AmbientMismatch);
        }
        let comps: Vec<MultiPoly> = self.comps.iter().map(|g| g.substitute(&f.comps)).collect();
        match BirMap::new(self.ambient, comps) {
            Err(MapError::DegenerateComposition) => Err(MapError::DegenerateComposition),
            r => r,
        }
    }

    /// Degree on P²; sum of the quadridegree on P¹×P¹.
    pub fn degree(&self) -> u64 {
        match self.ambient {
            Ambient::P2 => self.comps.iter().filter_map(|c| c.total_degree()).max().unwrap_or(0),
            Ambient::P1xP1 => self.quadridegree().expect("P1xP1").iter().sum(),
        }
    }

    /// `(d1, d2, d3, d4)`: bidegree of `(P1, P2)` then of `(P3, P4)`.
    pub fn quadridegree(&self) -> Result<[u64; 4], MapError> {
        if self.ambient != Ambient::P1xP1 {
            return Err(MapError::Usage("quadridegree is defined on P1xP1 only".into()));
        }
        let bideg = |a: &MultiPoly, b: &MultiPoly| {
            let p = if a.is_zero() { b } else { a };
            (p.group_degree(&[0, 1]), p.group_degree(&[2, 3]))
        };
        let (d1, d2) = bideg(&self.comps[0], &self.comps[1]);
        let (d3, d4) = bideg(&self.comps[2], &self.comps[3]);
        Ok([d1, d2, d3, d4])
    }

    pub fn is_base_point(&self, p: &ProjPoint) -> bool {
        assert_eq!(self.ambient, p.ambient, "ambient mismatch");
        let vals: Vec<Scalar> = self.comps.iter().map(|c| c.eval(&p.coords)).collect();
        match self.ambient {
            Ambient::P2 => vals.iter().all(|v| v.is_zero()),
            Ambient::P1xP1 => (vals[0].is_zero() && vals[1].is_zero()) || (vals[2].is_zero() && vals[3].is_zero()),
        }
    }

    pub fn apply(&self, p: &ProjPoint) -> Result<ProjPoint, MapError> {
        if self.ambient != p.ambient {
            return Err(MapError::AmbientMismatch);
        }
        if self.is_base_point(p) {
            return Err(MapError::Indeterminate);
        }
        let vals: Vec<Scalar> = self.comps.iter().map(|c| c.eval(&p.coords)).collect();
        ProjPoint::new(self.ambient, vals)
    }

    /// Components scaled so that each projective factor starts with a monic entry.
    fn normalized(&self) -> Vec<MultiPoly> {
        let mut out = self.comps.clone();
        let groups: &[&[usize]] = match self.ambient {
            Ambient::P2 => &[&[0, 1, 2]],
            Ambient::P1xP1 => &[&[0, 1], &[2, 3]],
        };
        for g in groups {
            let lead = g.iter().find_map(|&i| out[i].leading_term().map(|(_, c)| c.clone()));
            if let Some(c) = lead {
                let inv = c.inv().expect("nonzero");
                for &i in g.iter() {
                    out[i] = out[i].scale(&inv);
                }
            }
        }
        out
    }

    /// Equality as maps: components agree up to one scalar per projective factor.
    pub fn equals(&self, o: &BirMap) -> bool {
        self.ambient == o.ambient && self.normalized() == o.normalized()
    }

    pub fn is_identity(&self) -> bool {
        self.equals(&BirMap::identity(self.ambient))
    }

    /// Affine rendering `(f, g)` in `x`, `y`.
    pub fn affine_string(&self) -> String {
        let two = |p: &MultiPoly, map: &[usize]| {
            let mut q = p.clone();
            for &v in map {
                q = q.dehomogenize(v);
            }
            let keep: Vec<usize> = match self.ambient {
                Ambient::P2 => vec![0, 1, 0],
                Ambient::P1xP1 => vec![0, 0, 1, 0],
            };
            q.remap(2, &keep)
        };
        let chart: &[usize] = match self.ambient {
            Ambient::P2 => &[2],
            Ambient::P1xP1 => &[1, 3],
        };
        let frac = |n: &MultiPoly, d: &MultiPoly| {
            let n = two(n, chart);
            let d = two(d, chart);
            if d.is_constant() && !d.is_zero() {
                let c = d.coeff(&crate::algebra::Mono::one());
                format!("{}", n.scale(&c.inv().expect("nonzero")).display_with(&["x", "y"]))
            } else {
                format!("({})/({})", n.display_with(&["x", "y"]), d.display_with(&["x", "y"]))
            }
        };
        match self.ambient {
            Ambient::P2 => format!("({}, {})", frac(&self.comps[0], &self.comps[2]), frac(&self.comps[1], &self.comps[2])),
            Ambient::P1xP1 => format!("({}, {})", frac(&self.comps[0], &self.comps[1]), frac(&self.comps[2], &self.comps[3])),
        }
    }
}

impl fmt::Display for BirMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.ambient.nvars());
        let c: Vec<String> = self.comps.iter().map(|p| p.display_with(names)).collect();
        match self.ambient {
            Ambient::P2 => write!(f, "({} : {} : {})", c[0], c[1], c[2]),
            Ambient::P1xP1 => write!(f, "(({} : {}), ({} : {}))", c[0], c[1], c[2], c[3]),
        }
    }
}

/// 2×2 matrix of the pull-back on the Picard group of P¹×P¹, `[[d1, d3], [d2, d4]]`.
/// Without cancellation `Q(g ∘ f) = Q(f) · Q(g)`.
pub fn quadri_matrix(q: [u64; 4]) -> [[BigInt; 2]; 2] {
    [
        [BigInt::from(q[0]), BigInt::from(q[2])],
        [BigInt::from(q[1]), BigInt::from(q[3])],
    ]
}

pub fn mat2_mul(a: &[[BigInt; 2]; 2], b: &[[BigInt; 2]; 2]) -> [[BigInt; 2]; 2] {
    let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn mat2_identity() -> [[BigInt; 2]; 2] {
    [[BigInt::one(), BigInt::zero()], [BigInt::zero(), BigInt::one()]]
}
