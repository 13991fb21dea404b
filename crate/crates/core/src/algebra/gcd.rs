//! Multivariate gcd over Q(i).
//!
//! Pipeline: monomial content, dehomogenisation of graded inputs, a mod-p
//! restriction test that certifies coprimality (the common case in map
//! composition), and otherwise a modular gcd (dense evaluation/interpolation
//! per prime, CRT and rational reconstruction) whose output is accepted only
//! after exact trial division and a coprimality certificate for the cofactors.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::modp::{self, upoly};
use super::poly::{Grading, Mono, MultiPoly, MAX_VARS};
use super::scalar::Scalar;
use crate::error::AlgebraError;

type Exp = [u64; MAX_VARS];
/// Polynomial over F_p keyed by exponent array (lexicographic order).
type PolyP = BTreeMap<Exp, u64>;

const MAX_PRIMES: usize = 400;

/// Greatest common divisor, normalised to graded-lex leading coefficient 1.
/// `gcd(0, q)` is `q` normalised; `gcd(0, 0)` is 0.
pub fn poly_gcd(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
    if a.nvars() != b.nvars() {
        return Err(AlgebraError::VariableMismatch(a.nvars(), b.nvars()));
    }
    if a.is_zero() {
        return Ok(regrade(b.monic()));
    }
    if b.is_zero() {
        return Ok(regrade(a.monic()));
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let m = ma.gcd(&mb);
    let a1 = a.div_mono(&ma).expect("content divides");
    let b1 = b.div_mono(&mb).expect("content divides");
    let core = gcd_core(&a1, &b1)?;
    Ok(regrade(core.mul_mono(&m).monic()))
}

/// gcd of a list; the empty list gives 0.
pub fn poly_gcd_many(ps: &[MultiPoly]) -> Result<MultiPoly, AlgebraError> {
    let Some(first) = ps.first() else {
        return Err(AlgebraError::Usage("gcd of an empty list".into()));
    };
    let mut g = first.monic();
    for p in &ps[1..] {
        if g.is_constant() && !g.is_zero() {
            break;
        }
        g = poly_gcd(&g, p)?;
    }
    Ok(regrade(g))
}

fn regrade(p: MultiPoly) -> MultiPoly {
    let g = p.infer_grading();
    p.with_grading(g).expect("inferred grading is valid")
}

/// Both inputs free of monomial content.
fn gcd_core(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
    let nv = a.nvars();
    if a.is_constant() || b.is_constant() {
        return Ok(MultiPoly::one(nv));
    }
    match (a.infer_grading(), b.infer_grading()) {
        (Grading::Bi(..), Grading::Bi(..)) => {
            let g = affine_gcd(&a.dehomogenize(1).dehomogenize(3), &b.dehomogenize(1).dehomogenize(3))?;
            let dx = g.group_degree(&[0]);
            let dy = g.group_degree(&[2]);
            Ok(g.homogenize_group(&[0, 1], 1, dx).homogenize_group(&[2, 3], 3, dy))
        }
        (Grading::Total(_), Grading::Total(_)) if nv >= 2 => {
            let z = nv - 1;
            let g = affine_gcd(&a.dehomogenize(z), &b.dehomogenize(z))?;
            let d = g.total_degree().unwrap_or(0);
            let all: Vec<usize> = (0..nv).collect();
            Ok(g.homogenize_group(&all, z, d))
        }
        _ => affine_gcd(a, b),
    }
}

/// gcd of arbitrary (non-graded) polynomials.
fn affine_gcd(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
    let nv = a.nvars();
    if a.is_constant() || b.is_constant() {
        return Ok(MultiPoly::one(nv));
    }
    let mut used = [false; MAX_VARS];
    for m in a.terms().keys().chain(b.terms().keys()) {
        for v in 0..nv {
            used[v] |= m.0[v] > 0;
        }
    }
    let active: Vec<usize> = (0..nv).filter(|&v| used[v]).collect();
    let k = active.len();
    let fwd: Vec<usize> = (0..nv)
        .map(|v| active.iter().position(|&w| w == v).unwrap_or(0))
        .collect();
    let ac = a.remap(k, &fwd);
    let bc = b.remap(k, &fwd);
    let g = compact_gcd(&ac, &bc, 0)?;
    Ok(g.remap(nv, &active))
}

fn compact_gcd(a: &MultiPoly, b: &MultiPoly, depth: usize) -> Result<MultiPoly, AlgebraError> {
    let k = a.nvars();
    if a.is_constant() || b.is_constant() {
        return Ok(MultiPoly::one(k));
    }
    if certify_coprime(a, b, 3) {
        return Ok(MultiPoly::one(k));
    }
    let g = modular_gcd(a, b)?;
    if g.is_constant() {
        // The modular images say coprime; insist on a certificate.
        if certify_coprime(a, b, 16) {
            return Ok(MultiPoly::one(k));
        }
        return Err(AlgebraError::GcdFailed(MAX_PRIMES));
    }
    let qa = a.div_exact(&g)?;
    let qb = b.div_exact(&g)?;
    if certify_coprime(&qa, &qb, 3) {
        return Ok(g);
    }
    if depth > 8 {
        return Err(AlgebraError::GcdFailed(MAX_PRIMES));
    }
    let rest = compact_gcd(&qa, &qb, depth + 1)?;
    Ok((&g * &rest).monic())
}

/// Restricts the homogenised inputs to random lines over F_p. If the two binary
/// forms are nonzero with trivial gcd, the inputs are coprime over Q(i): a common
/// factor of positive degree would restrict to a nonconstant common divisor.
pub fn certify_coprime(a: &MultiPoly, b: &MultiPoly, attempts: usize) -> bool {
    let k = a.nvars();
    let (Some(da), Some(db)) = (a.total_degree(), b.total_degree()) else {
        return false;
    };
    if da == 0 || db == 0 {
        return true;
    }
    let mut rng = StdRng::seed_from_u64(0x5eed_0000 + (da << 20) + db);
    for f in modp::field_sequence().take(attempts) {
        let (Some(ap), Some(bp)) = (a.reduce(&f, false), b.reduce(&f, false)) else {
            continue;
        };
        let p = f.p;
        let base: Vec<u64> = (0..=k).map(|_| rng.gen_range(1..p)).collect();
        let dir: Vec<u64> = (0..=k).map(|_| rng.gen_range(1..p)).collect();
        let ra = restrict_to_line(&ap, k, da, &base, &dir, p);
        let rb = restrict_to_line(&bp, k, db, &base, &dir, p);
        if ra.is_empty() || rb.is_empty() {
            continue;
        }
        let sa = da as usize - (ra.len() - 1);
        let sb = db as usize - (rb.len() - 1);
        let g = upoly::gcd(&ra, &rb, p);
        if g.len() == 1 && sa.min(sb) == 0 {
            return true;
        }
    }
    false
}

/// Values of the degree-`d` homogenisation on `base + t*dir`, interpolated in `t`.
fn restrict_to_line(a: &PolyP, k: usize, d: u64, base: &[u64], dir: &[u64], p: u64) -> Vec<u64> {
    let n = d as usize + 1;
    let ts: Vec<u64> = (0..n as u64).collect();
    let mut vals = Vec::with_capacity(n);
    let mut pw: Vec<Vec<u64>> = vec![vec![1u64; n]; k + 1];
    for &t in &ts {
        for v in 0..=k {
            let c = modp::add(base[v], modp::mul(t, dir[v], p), p);
            pw[v][0] = 1;
            for e in 1..n {
                pw[v][e] = modp::mul(pw[v][e - 1], c, p);
            }
        }
        let mut acc = 0u64;
        for (e, c) in a {
            let tot: u64 = e[..k].iter().sum();
            let mut term = modp::mul(*c, pw[k][(d - tot) as usize], p);
            for v in 0..k {
                if e[v] > 0 {
                    term = modp::mul(term, pw[v][e[v] as usize], p);
                }
            }
            acc = modp::add(acc, term, p);
        }
        vals.push(acc);
    }
    upoly::interpolate(&ts, &vals, p)
}

fn grlex_cmp(a: &Exp, b: &Exp) -> Ordering {
    Mono(*a).cmp(&Mono(*b))
}

fn grlex_lead(a: &PolyP) -> Option<Exp> {
    a.keys().copied().max_by(grlex_cmp)
}

fn monic_grlex(mut a: PolyP, p: u64) -> PolyP {
    if let Some(l) = grlex_lead(&a) {
        let li = modp::inv(a[&l], p);
        for c in a.values_mut() {
            *c = modp::mul(*c, li, p);
        }
    }
    a
}

struct Accum {
    lead: Exp,
    modulus: BigInt,
    re: BTreeMap<Exp, BigInt>,
    im: BTreeMap<Exp, BigInt>,
    primes: usize,
}

/// Modular gcd candidate, verified by exact division. Inputs are in compacted
/// variables; returns a monic polynomial dividing both.
fn modular_gcd(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
    let k = a.nvars();
    let gauss = a.is_gaussian() || b.is_gaussian();
    let mut acc: Option<Accum> = None;
    let mut last: Option<MultiPoly> = None;
    for f in modp::field_sequence().take(MAX_PRIMES) {
        let p = f.p;
        let mut images = Vec::new();
        let mut ok = true;
        for conj in if gauss { vec![false, true] } else { vec![false] } {
            let (Some(ap), Some(bp)) = (a.reduce(&f, conj), b.reduce(&f, conj)) else {
                ok = false;
                break;
            };
            if ap.is_empty() || bp.is_empty() {
                ok = false;
                break;
            }
            match gcd_p(&ap, &bp, k, p) {
                Some(g) => images.push(monic_grlex(g, p)),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let lead = grlex_lead(&images[0]).unwrap_or([0; MAX_VARS]);
        if images.iter().any(|g| grlex_lead(g).unwrap_or([0; MAX_VARS]) != lead) {
            continue;
        }
        if lead == [0; MAX_VARS] {
            return Ok(MultiPoly::one(k));
        }
        // split the two embeddings back into real and imaginary parts
        let mut re_img: BTreeMap<Exp, u64> = BTreeMap::new();
        let mut im_img: BTreeMap<Exp, u64> = BTreeMap::new();
        if gauss {
            let two_inv = modp::inv(2, p);
            let s2_inv = modp::inv(modp::mul(2, f.sqrt_m1, p), p);
            let keys: std::collections::BTreeSet<Exp> =
                images[0].keys().chain(images[1].keys()).copied().collect();
            for e in keys {
                let v1 = images[0].get(&e).copied().unwrap_or(0);
                let v2 = images[1].get(&e).copied().unwrap_or(0);
                re_img.insert(e, modp::mul(modp::add(v1, v2, p), two_inv, p));
                im_img.insert(e, modp::mul(modp::sub(v1, v2, p), s2_inv, p));
            }
        } else {
            re_img = images.pop().unwrap();
        }
        let st = match acc.as_mut() {
            Some(st) => match grlex_cmp(&lead, &st.lead) {
                Ordering::Greater => continue,
                Ordering::Less => {
                    acc = None;
                    last = None;
                    acc.get_or_insert_with(|| Accum::new(lead))
                }
                Ordering::Equal => st,
            },
            None => acc.get_or_insert_with(|| Accum::new(lead)),
        };
        st.absorb(&re_img, &im_img, p);
        let Some(cand) = st.reconstruct(k) else {
            continue;
        };
        if last.as_ref() == Some(&cand) {
            if a.div_exact(&cand).is_ok() && b.div_exact(&cand).is_ok() {
                return Ok(cand);
            }
        }
        last = Some(cand);
    }
    Err(AlgebraError::GcdFailed(MAX_PRIMES))
}

impl Accum {
    fn new(lead: Exp) -> Self {
        Accum {
            lead,
            modulus: BigInt::one(),
            re: BTreeMap::new(),
            im: BTreeMap::new(),
            primes: 0,
        }
    }

    fn absorb(&mut self, re: &BTreeMap<Exp, u64>, im: &BTreeMap<Exp, u64>, p: u64) {
        for (store, img) in [(&mut self.re, re), (&mut self.im, im)] {
            let keys: std::collections::BTreeSet<Exp> =
                store.keys().chain(img.keys()).copied().collect();
            for e in keys {
                let old = store.get(&e).cloned().unwrap_or_else(BigInt::zero);
                let r = img.get(&e).copied().unwrap_or(0);
                store.insert(e, modp::crt(&old, &self.modulus, r, p));
            }
        }
        self.modulus *= BigInt::from(p);
        self.primes += 1;
    }

    fn reconstruct(&self, k: usize) -> Option<MultiPoly> {
        let mut terms = Vec::new();
        for (e, r) in &self.re {
            let re = modp::rational_reconstruct(r, &self.modulus)?;
            let im = match self.im.get(e) {
                Some(x) => modp::rational_reconstruct(x, &self.modulus)?,
                None => BigRational::zero(),
            };
            terms.push((Mono(*e), Scalar::new(re, im)));
        }
        for (e, r) in &self.im {
            if !self.re.contains_key(e) {
                let im = modp::rational_reconstruct(r, &self.modulus)?;
                terms.push((Mono(*e), Scalar::new(BigRational::zero(), im)));
            }
        }
        Some(MultiPoly::from_terms(k, terms))
    }
}

// ---------- dense-recursive gcd over F_p ----------

fn lex_lead(a: &PolyP) -> Option<Exp> {
    a.keys().next_back().copied()
}

fn monic_lex(mut a: PolyP, p: u64) -> PolyP {
    if let Some((_, &lc)) = a.iter().next_back() {
        let li = modp::inv(lc, p);
        for c in a.values_mut() {
            *c = modp::mul(*c, li, p);
        }
    }
    a
}

/// Groups `a` by its exponents in variables other than `v`, giving dense univariate
/// coefficients in `v`.
fn split_last(a: &PolyP, v: usize) -> BTreeMap<Exp, Vec<u64>> {
    let mut out: BTreeMap<Exp, Vec<u64>> = BTreeMap::new();
    for (e, &c) in a {
        let mut key = *e;
        let d = key[v] as usize;
        key[v] = 0;
        let slot = out.entry(key).or_default();
        if slot.len() <= d {
            slot.resize(d + 1, 0);
        }
        slot[d] = c;
    }
    out
}

fn join_last(groups: &BTreeMap<Exp, Vec<u64>>, v: usize) -> PolyP {
    let mut out = PolyP::new();
    for (key, coeffs) in groups {
        for (d, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                let mut e = *key;
                e[v] = d as u64;
                out.insert(e, c);
            }
        }
    }
    out
}

fn eval_last(a: &PolyP, v: usize, x: u64, p: u64) -> PolyP {
    let mut out = PolyP::new();
    for (key, coeffs) in split_last(a, v) {
        let c = upoly::eval(&coeffs, x, p);
        if c != 0 {
            out.insert(key, c);
        }
    }
    out
}

fn mul_p(a: &PolyP, b: &PolyP, p: u64) -> PolyP {
    let mut out = PolyP::new();
    for (e1, c1) in a {
        for (e2, c2) in b {
            let mut e = *e1;
            for i in 0..MAX_VARS {
                e[i] += e2[i];
            }
            let s = out.entry(e).or_insert(0);
            *s = modp::add(*s, modp::mul(*c1, *c2, p), p);
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Exact division in lexicographic order; `None` if not divisible.
fn div_p(a: &PolyP, d: &PolyP, p: u64) -> Option<PolyP> {
    let (dl, &dc) = d.iter().next_back()?;
    let dci = modp::inv(dc, p);
    let mut rem = a.clone();
    let mut q = PolyP::new();
    while let Some((e, &c)) = rem.iter().next_back() {
        let mut qe = *e;
        for i in 0..MAX_VARS {
            qe[i] = qe[i].checked_sub(dl[i])?;
        }
        let qc = modp::mul(c, dci, p);
        for (de, &dcoef) in d {
            let mut key = *de;
            for i in 0..MAX_VARS {
                key[i] += qe[i];
            }
            let s = rem.entry(key).or_insert(0);
            *s = modp::sub(*s, modp::mul(qc, dcoef, p), p);
            if *s == 0 {
                rem.remove(&key);
            }
        }
        q.insert(qe, qc);
    }
    Some(q)
}

/// Monic (lex) gcd over F_p of polynomials in variables `0..nv`.
fn gcd_p(a: &PolyP, b: &PolyP, nv: usize, p: u64) -> Option<PolyP> {
    if a.is_empty() {
        return Some(monic_lex(b.clone(), p));
    }
    if b.is_empty() {
        return Some(monic_lex(a.clone(), p));
    }
    let is_const = |x: &PolyP| x.len() == 1 && x.keys().next() == Some(&[0; MAX_VARS]);
    if nv == 0 || is_const(a) || is_const(b) {
        return Some(PolyP::from([([0; MAX_VARS], 1)]));
    }
    let v = nv - 1;
    if nv == 1 {
        let da = &split_last(a, v)[&[0; MAX_VARS]];
        let db = &split_last(b, v)[&[0; MAX_VARS]];
        let g = upoly::gcd(da, db, p);
        return Some(join_last(&BTreeMap::from([([0; MAX_VARS], g)]), v));
    }
    let ga = split_last(a, v);
    let gb = split_last(b, v);
    let content = |g: &BTreeMap<Exp, Vec<u64>>| {
        g.values()
            .fold(Vec::new(), |acc: Vec<u64>, c| upoly::gcd(&acc, c, p))
    };
    let ca = content(&ga);
    let cb = content(&gb);
    let cg = upoly::gcd(&ca, &cb, p);
    let strip = |g: &BTreeMap<Exp, Vec<u64>>, c: &[u64]| -> BTreeMap<Exp, Vec<u64>> {
        g.iter()
            .map(|(k, x)| (*k, upoly::div_rem(x, c, p).0))
            .collect()
    };
    let pa = strip(&ga, &ca);
    let pb = strip(&gb, &cb);
    let lca = pa.values().next_back().unwrap().clone();
    let lcb = pb.values().next_back().unwrap().clone();
    let gamma = upoly::gcd(&lca, &lcb, p);
    let deg_v = |g: &BTreeMap<Exp, Vec<u64>>| g.values().map(|x| x.len().saturating_sub(1)).max().unwrap_or(0);
    let bound = deg_v(&pa).min(deg_v(&pb)) + gamma.len() - 1;
    let a1 = join_last(&pa, v);
    let b1 = join_last(&pb, v);
    let cg_poly = join_last(&BTreeMap::from([([0; MAX_VARS], cg.clone())]), v);

    let mut nodes: Vec<u64> = Vec::new();
    let mut images: Vec<PolyP> = Vec::new();
    let mut cur: Option<Exp> = None;
    let mut x = 0u64;
    let mut rounds = 0usize;
    while rounds < 4 * (bound + 8) + 64 {
        x += 1;
        rounds += 1;
        if upoly::eval(&lca, x, p) == 0 || upoly::eval(&lcb, x, p) == 0 {
            continue;
        }
        let ea = eval_last(&a1, v, x, p);
        let eb = eval_last(&b1, v, x, p);
        let g = gcd_p(&ea, &eb, nv - 1, p)?;
        let lead = lex_lead(&g).unwrap_or([0; MAX_VARS]);
        if lead == [0; MAX_VARS] {
            return Some(monic_lex(cg_poly, p));
        }
        match cur.map(|c| lead.cmp(&c)) {
            Some(Ordering::Greater) => continue,
            Some(Ordering::Less) | None => {
                cur = Some(lead);
                nodes.clear();
                images.clear();
            }
            Some(Ordering::Equal) => {}
        }
        let scale = upoly::eval(&gamma, x, p);
        let g: PolyP = g.into_iter().map(|(e, c)| (e, modp::mul(c, scale, p))).collect();
        nodes.push(x);
        images.push(g);
        if nodes.len() > bound {
            let keys: std::collections::BTreeSet<Exp> =
                images.iter().flat_map(|g| g.keys().copied()).collect();
            let mut groups: BTreeMap<Exp, Vec<u64>> = BTreeMap::new();
            for key in keys {
                let ys: Vec<u64> = images.iter().map(|g| g.get(&key).copied().unwrap_or(0)).collect();
                groups.insert(key, upoly::interpolate(&nodes, &ys, p));
            }
            let c = content(&groups);
            let h = join_last(&strip(&groups, &c), v);
            if div_p(&a1, &h, p).is_some() && div_p(&b1, &h, p).is_some() {
                return Some(monic_lex(mul_p(&cg_poly, &h, p), p));
            }
            // unlucky nodes slipped in: start over with fresh ones
            nodes.clear();
            images.clear();
            cur = None;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::tests::{arb_poly, p3};
    use proptest::prelude::*;

    #[test]
    fn monomial_gcd() {
        // gcd(x^2 y, x y^2) = x y
        let a = p3(&[([2, 1, 0], 1)]);
        let b = p3(&[([1, 2, 0], 1)]);
        assert_eq!(poly_gcd(&a, &b).unwrap(), p3(&[([1, 1, 0], 1)]));
    }

    #[test]
    fn shared_linear_factor() {
        // (x+y)z and (x+y)(x-y)
        let a = p3(&[([1, 0, 1], 1), ([0, 1, 1], 1)]);
        let b = p3(&[([2, 0, 0], 1), ([0, 2, 0], -1)]);
        assert_eq!(
            poly_gcd(&a, &b).unwrap(),
            p3(&[([1, 0, 0], 1), ([0, 1, 0], 1)])
        );
    }

    #[test]
    fn zero_argument() {
        let b = p3(&[([1, 0, 0], 2), ([0, 1, 0], 4)]);
        assert_eq!(
            poly_gcd(&MultiPoly::zero(3), &b).unwrap(),
            p3(&[([1, 0, 0], 1), ([0, 1, 0], 2)])
        );
    }

    #[test]
    fn mismatched_variables() {
        assert!(poly_gcd(&MultiPoly::one(2), &MultiPoly::one(3)).is_err());
    }

    #[test]
    fn gaussian_common_factor() {
        // (x + i y)(x - y) and (x + i y)(x + 2 y)
        let i = Scalar::i();
        let l = MultiPoly::from_terms(
            2,
            [(Mono::from_slice(&[1, 0]), Scalar::from_int(1)), (Mono::from_slice(&[0, 1]), i)],
        );
        let m1 = MultiPoly::from_terms(
            2,
            [(Mono::from_slice(&[1, 0]), Scalar::from_int(1)), (Mono::from_slice(&[0, 1]), Scalar::from_int(-1))],
        );
        let m2 = MultiPoly::from_terms(
            2,
            [(Mono::from_slice(&[1, 0]), Scalar::from_int(1)), (Mono::from_slice(&[0, 1]), Scalar::from_int(2))],
        );
        assert_eq!(poly_gcd(&(&l * &m1), &(&l * &m2)).unwrap(), l);
    }

    #[test]
    fn large_power_factor() {
        // (x+3y+z)^9 * (x - z) and (x+3y+z)^8 * (y + 2z)^2
        let h = p3(&[([1, 0, 0], 1), ([0, 1, 0], 3), ([0, 0, 1], 1)]);
        let a = &h.pow(9) * &p3(&[([1, 0, 0], 1), ([0, 0, 1], -1)]);
        let b = &h.pow(8) * &p3(&[([0, 1, 0], 1), ([0, 0, 1], 2)]).pow(2);
        assert_eq!(poly_gcd(&a, &b).unwrap(), h.pow(8).monic());
    }

    #[test]
    fn certificate_detects_common_factor() {
        let h = p3(&[([1, 0, 0], 1), ([0, 1, 0], 1)]);
        let a = &h * &p3(&[([0, 0, 1], 1), ([1, 0, 0], 1)]);
        let b = &h * &p3(&[([0, 0, 1], 1), ([0, 1, 0], 5)]);
        assert!(!certify_coprime(&a, &b, 3));
        assert!(certify_coprime(
            &p3(&[([1, 0, 0], 1), ([0, 0, 0], 1)]),
            &p3(&[([0, 1, 0], 1)]),
            3
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn gcd_divides_both(a in arb_poly(3, 4, 2), b in arb_poly(3, 4, 2), c in arb_poly(3, 3, 2)) {
            prop_assume!(!c.is_zero());
            let x = &a * &c;
            let y = &b * &c;
            let g = poly_gcd(&x, &y).unwrap();
            if !x.is_zero() { prop_assert!(x.div_exact(&g).is_ok()); }
            if !y.is_zero() { prop_assert!(y.div_exact(&g).is_ok()); }
            if !x.is_zero() && !y.is_zero() {
                // c divides both, so it divides the gcd
                prop_assert!(g.div_exact(&c).is_ok());
            }
        }
    }
}
