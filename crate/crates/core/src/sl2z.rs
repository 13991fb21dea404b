//! Words and matrices of SL(2,Z).
//!
//! `R = [[1,1],[0,1]]`, `S = [[0,1],[-1,0]]`; a word multiplies left to right.
//! Internally words are rewritten over `S` and `T = RS` (order 3), with `S²`
//! central.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::WordError;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
pub enum Gen {
    R,
    S,
}

/// Product of generator powers; adjacent equal generators are merged and zero
/// exponents dropped.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GroupWord(Vec<(Gen, i64)>);

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord(Vec::new())
    }

    pub fn from_letters<I: IntoIterator<Item = (Gen, i64)>>(it: I) -> Self {
        let mut w = GroupWord::identity();
        for (g, e) in it {
            w.push(g, e);
        }
        w
    }

    pub fn r() -> Self {
        GroupWord::from_letters([(Gen::R, 1)])
    }

    pub fn s() -> Self {
        GroupWord::from_letters([(Gen::S, 1)])
    }

    fn push(&mut self, g: Gen, e: i64) {
        if e == 0 {
            return;
        }
        match self.0.last_mut() {
            Some((h, f)) if *h == g => {
                *f += e;
                if *f == 0 {
                    self.0.pop();
                }
            }
            _ => self.0.push((g, e)),
        }
    }

    pub fn letters(&self) -> &[(Gen, i64)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of absolute exponents.
    pub fn length(&self) -> u64 {
        self.0.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    pub fn concat(&self, o: &GroupWord) -> GroupWord {
        let mut w = self.clone();
        for &(g, e) in &o.0 {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord::from_letters(self.0.iter().rev().map(|&(g, e)| (g, -e)))
    }

    pub fn pow(&self, n: u32) -> GroupWord {
        (0..n).fold(GroupWord::identity(), |acc, _| acc.concat(self))
    }

    pub fn matrix(&self) -> Mat2 {
        word_to_matrix(self)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(g, e)| {
                let n = if g == Gen::R { "R" } else { "S" };
                if e == 1 {
                    n.to_string()
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl std::str::FromStr for GroupWord {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, WordError> {
        parse_word(s)
    }
}

/// Parses `term (ws term)*` with `term := ("R"|"S") ("^" signed-int)?`.
/// The literal `1` (or an empty string) is the identity.
pub fn parse_word(src: &str) -> Result<GroupWord, WordError> {
    let b = src.as_bytes();
    let mut i = 0;
    let mut w = GroupWord::identity();
    let err = |pos: usize, msg: &str| WordError::Parse {
        pos,
        msg: msg.to_string(),
    };
    if src.trim() == "1" {
        return Ok(w);
    }
    loop {
        while i < b.len() && b[i].is_ascii_whitespace() {
            i += 1;
        }
        if i == b.len() {
            break;
        }
        let g = match b[i] {
            b'R' => Gen::R,
            b'S' => Gen::S,
            _ => return Err(err(i, "expected generator R or S")),
        };
        i += 1;
        let mut e = 1i64;
        if i < b.len() && b[i] == b'^' {
            i += 1;
            let start = i;
            if i < b.len() && (b[i] == b'-' || b[i] == b'+') {
                i += 1;
            }
            let digits = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            if i == digits {
                return Err(err(i, "expected integer exponent"));
            }
            e = src[start..i]
                .parse()
                .map_err(|_| err(start, "exponent out of range"))?;
        }
        if i < b.len() && !b[i].is_ascii_whitespace() {
            return Err(err(i, "expected whitespace between terms"));
        }
        w.push(g, e);
    }
    Ok(w)
}

/// `[[a,b],[c,d]]` with determinant 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Mat2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Mat2 {
    /// Panics unless `ad - bc = 1`.
    pub fn new<T: Into<BigInt>>(a: T, b: T, c: T, d: T) -> Self {
        let m = Mat2 {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        };
        assert!(m.det().is_one(), "determinant must be 1");
        m
    }

    pub fn try_new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Option<Self> {
        let m = Mat2 { a, b, c, d };
        m.det().is_one().then_some(m)
    }

    pub fn identity() -> Self {
        Mat2::new(1, 0, 0, 1)
    }

    pub fn r() -> Self {
        Mat2::new(1, 1, 0, 1)
    }

    pub fn s() -> Self {
        Mat2::new(0, 1, -1, 0)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn inverse(&self) -> Mat2 {
        Mat2 {
            a: self.d.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: self.a.clone(),
        }
    }

    pub fn neg(&self) -> Mat2 {
        Mat2 {
            a: -self.a.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: -self.d.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::identity()
    }

    pub fn pow(&self, n: u32) -> Mat2 {
        (0..n).fold(Mat2::identity(), |acc, _| &acc * self)
    }

    /// Representative of `±M` with a canonical sign.
    pub fn projective_key(&self) -> Mat2 {
        let first = [&self.a, &self.b, &self.c, &self.d]
            .into_iter()
            .find(|x| !x.is_zero())
            .expect("nonzero matrix");
        if first.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn abs_entries(&self) -> [BigInt; 4] {
        [self.a.abs(), self.b.abs(), self.c.abs(), self.d.abs()]
    }

    /// A word over `R`, `S` with this matrix, by a Euclidean descent on the first column.
    pub fn to_word(&self) -> GroupWord {
        let mut m = self.clone();
        let mut w = GroupWord::identity();
        while !m.c.is_zero() {
            // M = R^q S M'
            let q = m.a.div_floor(&m.c);
            let qi = q.to_i64().expect("quotient fits i64");
            let rq = Mat2::new(BigInt::one(), -q, BigInt::zero(), BigInt::one());
            let t = &rq * &m;
            m = &Mat2::s().inverse() * &t;
            w = w.concat(&GroupWord::from_letters([(Gen::R, qi), (Gen::S, 1)]));
        }
        // m = ±R^b
        if m.a.is_negative() {
            w = w.concat(&GroupWord::from_letters([(Gen::S, 2)]));
            m = m.neg();
        }
        let b = m.b.to_i64().expect("entry fits i64");
        w.concat(&GroupWord::from_letters([(Gen::R, b)]))
    }
}

impl<'a> Mul<&'a Mat2> for &'a Mat2 {
    type Output = Mat2;
    fn mul(self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

fn gen_pow(g: Gen, e: i64) -> Mat2 {
    let base = match g {
        Gen::R => Mat2::new(BigInt::one(), BigInt::from(e), BigInt::zero(), BigInt::one()),
        Gen::S => return Mat2::s().pow(e.rem_euclid(4) as u32),
    };
    base
}

pub fn word_to_matrix(w: &GroupWord) -> Mat2 {
    w.0.iter()
        .fold(Mat2::identity(), |acc, &(g, e)| &acc * &gen_pow(g, e))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum MatrixType {
    Elliptic { order: u32 },
    Parabolic,
    Hyperbolic,
}

impl fmt::Display for MatrixType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixType::Elliptic { order } => write!(f, "elliptic (order {order})"),
            MatrixType::Parabolic => f.write_str("parabolic"),
            MatrixType::Hyperbolic => f.write_str("hyperbolic"),
        }
    }
}

pub fn classify(m: &Mat2) -> MatrixType {
    let t = m.trace().abs();
    if t < BigInt::from(2) || m.is_identity() || m.neg().is_identity() {
        let mut p = m.clone();
        for k in 1..=6 {
            if p.is_identity() {
                return MatrixType::Elliptic { order: k };
            }
            p = &p * m;
        }
        unreachable!("finite-order element of SL(2,Z) has order at most 6");
    }
    if t == BigInt::from(2) {
        MatrixType::Parabolic
    } else {
        MatrixType::Hyperbolic
    }
}

/// Letter of the internal alphabet: `S^{±1}` or `T^{±1}` with `T = RS`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
pub enum Letter {
    S(i8),
    T(i8),
}

impl Letter {
    pub fn matrix(self) -> Mat2 {
        let t = Mat2::new(-1, 1, -1, 0);
        match self {
            Letter::S(1) => Mat2::s(),
            Letter::S(_) => Mat2::s().inverse(),
            Letter::T(1) => t,
            Letter::T(_) => t.inverse(),
        }
    }

    pub fn to_word(self) -> GroupWord {
        match self {
            Letter::S(e) => GroupWord::from_letters([(Gen::S, e as i64)]),
            Letter::T(1) => GroupWord::from_letters([(Gen::R, 1), (Gen::S, 1)]),
            Letter::T(_) => GroupWord::from_letters([(Gen::S, -1), (Gen::R, -1)]),
        }
    }
}

/// `S^(2·central)` times an alternating product of `S^{±1}` and `T^{±1}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SyllableForm {
    pub central: u8,
    pub letters: Vec<Letter>,
}

impl SyllableForm {
    /// Number of `T` letters.
    pub fn syllable_count(&self) -> usize {
        self.letters.iter().filter(|l| matches!(l, Letter::T(_))).count()
    }

    /// Pairs `(a_i, b_i)` reading `T^a S^b` blocks left to right; `b = 0`
    /// marks a trailing `T` and a leading lone `S` gives `(0, b)`.
    pub fn syllables(&self) -> Vec<(i8, i8)> {
        let mut out = Vec::new();
        let mut it = self.letters.iter().peekable();
        while let Some(&l) = it.next() {
            match l {
                Letter::T(a) => {
                    let b = match it.peek() {
                        Some(Letter::S(b)) => {
                            let b = *b;
                            it.next();
                            b
                        }
                        _ => 0,
                    };
                    out.push((a, b));
                }
                Letter::S(b) => out.push((0, b)),
            }
        }
        out
    }

    pub fn to_word(&self) -> GroupWord {
        let mut w = GroupWord::from_letters([(Gen::S, 2 * self.central as i64)]);
        for l in &self.letters {
            w = w.concat(&l.to_word());
        }
        w
    }

    pub fn matrix(&self) -> Mat2 {
        let base = if self.central == 1 {
            Mat2::s().pow(2)
        } else {
            Mat2::identity()
        };
        self.letters.iter().fold(base, |acc, l| &acc * &l.matrix())
    }
}

/// Reduced rewriting: `R = T S^{-1}`, `R^{-1} = S T^{-1}`, `T³ = 1`, `S²` central.
pub fn syllable_form(w: &GroupWord) -> SyllableForm {
    let mut central = 0u8;
    let mut stack: Vec<Letter> = Vec::new();
    fn push(stack: &mut Vec<Letter>, central: &mut u8, l: Letter) {
        match (stack.last().copied(), l) {
            (Some(Letter::S(a)), Letter::S(b)) => {
                stack.pop();
                if a == b {
                    // S^{±2} = S^2
                    *central ^= 1;
                }
            }
            (Some(Letter::T(a)), Letter::T(b)) => {
                stack.pop();
                if a == b {
                    // T^{±2} = T^{∓1}
                    push(stack, central, Letter::T(-a));
                }
            }
            _ => stack.push(l),
        }
    }
    for &(g, e) in &w.0 {
        match g {
            Gen::S => {
                match e.rem_euclid(4) {
                    1 => push(&mut stack, &mut central, Letter::S(1)),
                    2 => central ^= 1,
                    3 => push(&mut stack, &mut central, Letter::S(-1)),
                    _ => {}
                }
            }
            Gen::R => {
                for _ in 0..e.unsigned_abs() {
                    if e > 0 {
                        push(&mut stack, &mut central, Letter::T(1));
                        push(&mut stack, &mut central, Letter::S(-1));
                    } else {
                        push(&mut stack, &mut central, Letter::S(1));
                        push(&mut stack, &mut central, Letter::T(-1));
                    }
                }
            }
        }
    }
    SyllableForm {
        central,
        letters: stack,
    }
}

/// All alternating words over `S^{±1}`, `T^{±1}` with at most `max_syllables`
/// `T` letters, rewritten over `R`, `S`, in a fixed order (fewer syllables
/// first, then shorter, then lexicographic). Words with equal matrices are
/// emitted once; with `mod_center` also `±M` are identified.
pub fn enumerate_words(max_syllables: usize, mod_center: bool) -> Vec<GroupWord> {
    let mut seqs: BTreeSet<(usize, usize, Vec<Letter>)> = BTreeSet::new();
    let signs = [1i8, -1];
    for m in 0..=max_syllables {
        // shape: [S] T S T ... S T [S]; m = 0 allows a lone S
        let mut cores: Vec<Vec<Letter>> = vec![Vec::new()];
        for i in 0..m {
            let mut next = Vec::new();
            for c in &cores {
                for &a in &signs {
                    if i > 0 {
                        for &b in &signs {
                            let mut v = c.clone();
                            v.push(Letter::S(b));
                            v.push(Letter::T(a));
                            next.push(v);
                        }
                    } else {
                        let mut v = c.clone();
                        v.push(Letter::T(a));
                        next.push(v);
                    }
                }
            }
            cores = next;
        }
        for c in cores {
            for pre in [None, Some(1i8), Some(-1)] {
                for post in [None, Some(1i8), Some(-1)] {
                    if m == 0 && post.is_some() {
                        continue;
                    }
                    let mut v = Vec::new();
                    if let Some(b) = pre {
                        v.push(Letter::S(b));
                    }
                    v.extend(c.iter().copied());
                    if let Some(b) = post {
                        v.push(Letter::S(b));
                    }
                    seqs.insert((m, v.len(), v));
                }
            }
        }
    }
    let mut seen: HashSet<Mat2> = HashSet::new();
    let mut out = Vec::new();
    for central in [0u8, 1] {
        if central == 1 && mod_center {
            break;
        }
        for (_, _, v) in &seqs {
            let f = SyllableForm {
                central,
                letters: v.clone(),
            };
            let m = f.matrix();
            let key = if mod_center { m.projective_key() } else { m };
            if seen.insert(key) {
                out.push(f.to_word());
            }
        }
    }
    out
}

/// Projective classes `±M` reachable by words of length at most `depth` in
/// `R^{±1}`, `S`, with their word length, breadth first.
pub fn ball(depth: usize) -> Vec<(Mat2, usize)> {
    let gens = [Mat2::r(), Mat2::r().inverse(), Mat2::s()];
    let mut seen: HashSet<Mat2> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    let id = Mat2::identity();
    seen.insert(id.projective_key());
    queue.push_back((id, 0usize));
    while let Some((m, d)) = queue.pop_front() {
        out.push((m.clone(), d));
        if d == depth {
            continue;
        }
        for g in &gens {
            let n = &m * g;
            if seen.insert(n.projective_key()) {
                queue.push_back((n, d + 1));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> GroupWord {
        s.parse().unwrap()
    }

    fn arb_word() -> impl Strategy<Value = GroupWord> {
        proptest::collection::vec((prop::bool::ANY, -3i64..4), 0..8).prop_map(|v| {
            GroupWord::from_letters(v.into_iter().map(|(r, e)| (if r { Gen::R } else { Gen::S }, e)))
        })
    }

    fn arb_mat() -> impl Strategy<Value = Mat2> {
        arb_word().prop_map(|w| w.matrix())
    }

    #[test]
    fn generator_matrices() {
        assert_eq!(w("R").matrix(), Mat2::new(1, 1, 0, 1));
        assert!(w("S^4").matrix().is_identity());
        assert_eq!(w("R S").matrix(), Mat2::new(-1, 1, -1, 0));
        assert!(w("").matrix().is_identity());
        assert_eq!(w("R S R S S").matrix(), Mat2::new(1, 0, 1, 1));
    }

    #[test]
    fn parse_and_display() {
        let x = w("R S^-1 R^2 S^2");
        assert_eq!(x.to_string(), "R S^-1 R^2 S^2");
        assert_eq!(w("R R S^-1 S"), w("R^2"));
        assert!(w("R R^-1").is_empty());
        assert_eq!(w("1"), GroupWord::identity());
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert_eq!(
            parse_word("R X"),
            Err(WordError::Parse {
                pos: 2,
                msg: "expected generator R or S".into()
            })
        );
        assert!(matches!(parse_word("R^"), Err(WordError::Parse { pos: 2, .. })));
        assert!(matches!(parse_word("RS"), Err(WordError::Parse { pos: 1, .. })));
    }

    #[test]
    fn classification() {
        assert_eq!(classify(&Mat2::s()), MatrixType::Elliptic { order: 4 });
        assert_eq!(classify(&Mat2::r()), MatrixType::Parabolic);
        assert_eq!(classify(&Mat2::new(2, 1, 1, 1)), MatrixType::Hyperbolic);
        assert_eq!(classify(&Mat2::identity()), MatrixType::Elliptic { order: 1 });
        assert_eq!(classify(&Mat2::identity().neg()), MatrixType::Elliptic { order: 2 });
        assert_eq!(classify(&w("R S").matrix()), MatrixType::Elliptic { order: 3 });
        assert_eq!(classify(&w("S R").matrix().neg()), MatrixType::Elliptic { order: 6 });
        assert_eq!(classify(&Mat2::r().neg()), MatrixType::Parabolic);
    }

    #[test]
    fn classify_brute_force_small_entries() {
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                for c in -3i64..=3 {
                    for d in -3i64..=3 {
                        let Some(m) = Mat2::try_new(a.into(), b.into(), c.into(), d.into()) else {
                            continue;
                        };
                        let order = (1..=12).find(|&k| m.pow(k).is_identity());
                        match (classify(&m), order) {
                            (MatrixType::Elliptic { order: k }, Some(o)) => assert_eq!(k, o),
                            (MatrixType::Parabolic, None) => assert_eq!(m.trace().abs(), 2.into()),
                            (MatrixType::Hyperbolic, None) => assert!(m.trace().abs() > 2.into()),
                            (t, o) => panic!("{m}: {t:?} vs order {o:?}"),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn syllables_of_r() {
        let f = syllable_form(&w("R"));
        assert_eq!(f.letters, vec![Letter::T(1), Letter::S(-1)]);
        assert_eq!(f.central, 0);
        assert_eq!(f.syllable_count(), 1);
        assert_eq!(f.syllables(), vec![(1, -1)]);
    }

    #[test]
    fn syllables_of_identity_and_r_squared() {
        assert_eq!(syllable_form(&GroupWord::identity()).syllable_count(), 0);
        let f = syllable_form(&w("R^2"));
        assert_eq!(f.syllable_count(), 2);
        assert_eq!(f.matrix(), Mat2::new(1, 2, 0, 1));
        assert_eq!(syllable_form(&w("S^2 R S R S S")).syllable_count(), 1);
        assert_eq!(syllable_form(&w("R S R S R S")).syllable_count(), 0);
    }

    #[test]
    fn enumeration_small_cases() {
        assert_eq!(enumerate_words(0, false).len(), 4); // 1, S, S^-1, S^2
        assert_eq!(enumerate_words(0, true).len(), 2);
        let one = enumerate_words(1, true);
        let ms: Vec<Mat2> = one.iter().map(|x| x.matrix().projective_key()).collect();
        assert!(ms.contains(&Mat2::r().projective_key()));
        assert!(ms.contains(&Mat2::r().inverse().projective_key()));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        // brute force: every product of letters with at most 2 T's and length ≤ 7
        let alphabet = [Letter::S(1), Letter::S(-1), Letter::T(1), Letter::T(-1)];
        let mut all: HashSet<Mat2> = HashSet::new();
        let mut frontier = vec![(Mat2::identity(), 0usize, 0usize)];
        all.insert(Mat2::identity());
        all.insert(Mat2::identity().neg());
        for _ in 0..7 {
            let mut next = Vec::new();
            for (m, _, ts) in &frontier {
                for &l in &alphabet {
                    let t = ts + matches!(l, Letter::T(_)) as usize;
                    if t > 2 {
                        continue;
                    }
                    let n = m * &l.matrix();
                    next.push((n, 0, t));
                }
            }
            frontier = next;
            for (m, _, _) in &frontier {
                if syllable_form(&m.to_word()).syllable_count() <= 2 {
                    all.insert(m.clone());
                }
            }
        }
        let got: HashSet<Mat2> = enumerate_words(2, false).iter().map(|x| x.matrix()).collect();
        assert_eq!(got.len(), enumerate_words(2, false).len());
        assert_eq!(got, all);
    }

    #[test]
    fn ball_sizes_grow() {
        let b = ball(3);
        assert_eq!(b[0].1, 0);
        assert!(b.iter().all(|(_, d)| *d <= 3));
        assert!(b.len() > ball(2).len());
    }

    proptest! {
        #[test]
        fn homomorphism(x in arb_word(), y in arb_word()) {
            prop_assert_eq!(x.concat(&y).matrix(), &x.matrix() * &y.matrix());
        }

        #[test]
        fn classify_conjugation_invariant(m in arb_mat(), n in arb_mat()) {
            let c = &(&n * &m) * &n.inverse();
            prop_assert_eq!(classify(&m), classify(&c));
        }

        #[test]
        fn syllable_form_preserves_matrix(x in arb_word()) {
            let f = syllable_form(&x);
            prop_assert_eq!(f.to_word().matrix(), x.matrix());
            prop_assert_eq!(f.matrix(), x.matrix());
            for pair in f.letters.windows(2) {
                let same = matches!((pair[0], pair[1]), (Letter::S(_), Letter::S(_)) | (Letter::T(_), Letter::T(_)));
                prop_assert!(!same);
            }
        }

        #[test]
        fn matrix_to_word_round_trip(m in arb_mat()) {
            prop_assert_eq!(m.to_word().matrix(), m);
        }

        #[test]
        fn inverse_word(x in arb_word()) {
            prop_assert!(x.concat(&x.inverse()).matrix().is_identity());
        }
    }
}
