//! Degrees of long compositions without expanding them.
//!
//! For birational maps `h`, `G` the degree of `h ∘ G` is `deg h · deg G` as soon
//! as `h` and `G⁻¹` share no base-point, proper or infinitely near; on P¹×P¹ the
//! pull-back matrices multiply under the same condition. Infinitely near
//! base-points lie over proper ones, so it suffices to keep a set `X`
//! containing the proper base-points of `G⁻¹` and to check that `h` is defined
//! on `X`. The update is `X ← Base(h⁻¹) ∪ h(X)`.
//!
//! Points are tracked modulo a prime: if `h` does not vanish at the reduction of
//! a point, it does not vanish at the point, and the reduction of `h(x)` is
//! `h` applied to the reduction. A failed check is retried with another prime
//! and finally reported as inconclusive.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;

use super::{mat2_identity, mat2_mul, quadri_matrix, Ambient, BirMap, ProjPoint};
use crate::algebra::modp::{self, Field};
use crate::algebra::poly::MAX_VARS;
use crate::error::MapError;

const PRIME_ATTEMPTS: usize = 6;

/// One factor of a composition with the complete list of proper base-points of
/// its inverse. Clones share the underlying data.
#[derive(Clone, Debug)]
pub struct Step {
    map: Arc<BirMap>,
    inverse_base: Arc<Vec<ProjPoint>>,
}

impl Step {
    pub fn new(map: BirMap, inverse_base: Vec<ProjPoint>) -> Self {
        Step {
            map: Arc::new(map),
            inverse_base: Arc::new(inverse_base),
        }
    }

    /// Automorphisms have no base-points on either side.
    pub fn automorphism(map: BirMap) -> Self {
        Step::new(map, Vec::new())
    }

    pub fn map(&self) -> &BirMap {
        &self.map
    }

    pub fn inverse_base(&self) -> &[ProjPoint] {
        &self.inverse_base
    }
}

/// Exact degree data of a composition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DegreeData {
    Plane(BigInt),
    /// Pull-back matrix `[[d1, d3], [d2, d4]]`.
    Quadri([[BigInt; 2]; 2]),
}

impl DegreeData {
    pub fn total(&self) -> BigInt {
        match self {
            DegreeData::Plane(d) => d.clone(),
            DegreeData::Quadri(q) => q.iter().flatten().sum(),
        }
    }

    /// `(d1, d2, d3, d4)` on P¹×P¹.
    pub fn quadridegree(&self) -> Option<[BigInt; 4]> {
        match self {
            DegreeData::Plane(_) => None,
            DegreeData::Quadri(q) => Some([q[0][0].clone(), q[1][0].clone(), q[0][1].clone(), q[1][1].clone()]),
        }
    }
}

/// Composition `steps[n-1] ∘ … ∘ steps[0]`; the first step is applied first.
#[derive(Clone, Debug)]
pub struct StepChain {
    ambient: Ambient,
    steps: Vec<Step>,
}

type PolyP = BTreeMap<[u64; MAX_VARS], u64>;

fn eval_p(p: &PolyP, x: &[u64], q: u64) -> u64 {
    let mut acc = 0;
    for (e, c) in p {
        let mut t = *c;
        for (v, &xv) in x.iter().enumerate() {
            if e[v] > 0 {
                t = modp::mul(t, modp::pow(xv, e[v], q), q);
            }
        }
        acc = modp::add(acc, t, q);
    }
    acc
}

/// Per-factor normalisation; `None` if a factor vanishes.
fn normalize_p(ambient: Ambient, mut x: Vec<u64>, q: u64) -> Option<Vec<u64>> {
    for g in ambient.factors() {
        let last = *g.last().unwrap();
        let pivot = if x[last] != 0 { last } else { *g.iter().find(|&&i| x[i] != 0)? };
        let inv = modp::inv(x[pivot], q);
        for &i in g.iter() {
            x[i] = modp::mul(x[i], inv, q);
        }
    }
    Some(x)
}

impl StepChain {
    pub fn new(ambient: Ambient) -> Self {
        StepChain {
            ambient,
            steps: Vec::new(),
        }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Appends a step applied after the current chain.
    pub fn push(&mut self, s: Step) {
        assert_eq!(s.map.ambient(), self.ambient, "ambient mismatch");
        self.steps.push(s);
    }

    /// Appends `other`, applied after `self`.
    pub fn then(&mut self, other: &StepChain) {
        for s in &other.steps {
            self.push(s.clone());
        }
    }

    /// Expands the composition exactly.
    pub fn compose_exact(&self, cap: usize) -> Result<BirMap, MapError> {
        let mut acc = BirMap::identity(self.ambient);
        for (i, s) in self.steps.iter().enumerate() {
            acc = s.map.compose(&acc)?;
            if acc.components().iter().any(|c| c.len() > cap) {
                return Err(MapError::Budget { iterate: i + 1, cap });
            }
        }
        Ok(acc)
    }

    /// Degree of the composition, certified by the base-point criterion.
    pub fn certified_degree(&self) -> Result<DegreeData, MapError> {
        let mut failure = String::from("no prime tried");
        for f in modp::field_sequence().take(PRIME_ATTEMPTS) {
            match self.run(&f) {
                Ok(d) => return Ok(d),
                Err(msg) => failure = msg,
            }
        }
        Err(MapError::Inconclusive(failure))
    }

    fn run(&self, f: &Field) -> Result<DegreeData, String> {
        let q = f.p;
        let amb = self.ambient;
        let nv = amb.nvars();
        let mut xs: Vec<Vec<u64>> = Vec::new();
        let mut plane = BigInt::from(1);
        let mut quad = mat2_identity();
        // repeated steps share their reductions
        let mut cache: Vec<(*const BirMap, Vec<PolyP>, Vec<Vec<u64>>)> = Vec::new();
        for (i, s) in self.steps.iter().enumerate() {
            let key = Arc::as_ptr(&s.map);
            let idx = match cache.iter().position(|(k, _, _)| *k == key) {
                Some(j) => j,
                None => {
                    let comps: Option<Vec<PolyP>> = s.map.components().iter().map(|c| c.reduce(f, false)).collect();
                    let comps = comps.ok_or_else(|| format!("step {i} does not reduce mod {q}"))?;
                    let mut base = Vec::new();
                    for b in s.inverse_base.iter() {
                        let c: Option<Vec<u64>> = b.coords().iter().map(|z| f.scalar(z, false)).collect();
                        let c = c.ok_or_else(|| format!("base-point of step {i} does not reduce mod {q}"))?;
                        base.push(normalize_p(amb, c, q).ok_or_else(|| format!("base-point of step {i} degenerates mod {q}"))?);
                    }
                    cache.push((key, comps, base));
                    cache.len() - 1
                }
            };
            let (_, comps, base) = &cache[idx];
            let mut next: Vec<Vec<u64>> = base.clone();
            for x in &xs {
                let v: Vec<u64> = comps.iter().map(|c| eval_p(c, x, q)).collect();
                let img = normalize_p(amb, v, q)
                    .ok_or_else(|| format!("step {i} is not defined at a tracked point mod {q}"))?;
                next.push(img);
            }
            next.sort();
            next.dedup();
            xs = next;
            debug_assert!(xs.iter().all(|x| x.len() == nv));
            match amb {
                Ambient::P2 => plane *= BigInt::from(s.map.degree()),
                Ambient::P1xP1 => {
                    let qh = quadri_matrix(s.map.quadridegree().expect("P1xP1"));
                    quad = mat2_mul(&quad, &qh);
                }
            }
        }
        Ok(match amb {
            Ambient::P2 => DegreeData::Plane(plane),
            Ambient::P1xP1 => DegreeData::Quadri(quad),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Scalar;

    fn eps_steps() -> (Step, Step, Step) {
        let e = Scalar::from_int(2);
        let one = Scalar::from_int(1);
        let r1 = BirMap::parse(Ambient::P1xP1, "((x+2y)/(2+x y), 2y)").unwrap();
        let r2 = BirMap::parse(Ambient::P1xP1, "(x/2, 2(x+2y)/(2+x y))").unwrap();
        let s = BirMap::parse(Ambient::P1xP1, "(y, -x)").unwrap();
        let qs = vec![
            ProjPoint::affine(Ambient::P1xP1, one.clone(), e.clone()),
            ProjPoint::affine(Ambient::P1xP1, -one, -e),
        ];
        (Step::new(r1, qs.clone()), Step::new(r2, qs), Step::automorphism(s))
    }

    #[test]
    fn certified_matches_exact_on_small_chains() {
        let (r1, r2, s) = eps_steps();
        let patterns: Vec<Vec<&Step>> = vec![
            vec![&r1, &r1],
            vec![&r1, &r2, &r1],
            vec![&r2, &r2, &r1, &r2],
            vec![&s, &r1, &r2, &s],
        ];
        for p in patterns {
            let mut c = StepChain::new(Ambient::P1xP1);
            for st in p {
                c.push(st.clone());
            }
            let exact = c.compose_exact(100_000).unwrap();
            let cert = c.certified_degree().unwrap();
            let q = exact.quadridegree().unwrap().map(BigInt::from);
            assert_eq!(cert.quadridegree().unwrap(), q);
        }
    }

    #[test]
    fn cancellation_is_detected() {
        // r1 followed by its inverse collapses; the certificate must refuse
        let (r1, _, _) = eps_steps();
        let inv = BirMap::parse(Ambient::P1xP1, "(2(2x-y)/(2-x y), y/2)").unwrap();
        let p1 = ProjPoint::affine(Ambient::P1xP1, Scalar::from_int(2), Scalar::from_int(-1));
        let p2 = ProjPoint::affine(Ambient::P1xP1, Scalar::from_int(-2), Scalar::from_int(1));
        let mut c = StepChain::new(Ambient::P1xP1);
        c.push(r1);
        c.push(Step::new(inv, vec![p1, p2]));
        assert!(matches!(c.certified_degree(), Err(MapError::Inconclusive(_))));
        assert!(c.compose_exact(1000).unwrap().is_identity());
    }
}
