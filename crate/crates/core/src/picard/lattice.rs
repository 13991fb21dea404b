//! Lattices with partially known intersection forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::algebra::linalg::{minimal_inconsistent, solve_affine, AffineSolution};
use crate::algebra::IntMatrix;
use crate::error::PicardError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GramEntry {
    Known(BigInt),
    /// Index into [`MarkedLattice::unknowns`].
    Unknown(usize),
}

/// Affine form `constant + Σ coeffs[k]·u_k` in the Gram unknowns.
#[derive(Clone, Debug, PartialEq)]
pub struct LinForm {
    pub constant: BigRational,
    pub coeffs: Vec<BigRational>,
}

impl LinForm {
    pub fn constant(c: BigRational, nvars: usize) -> Self {
        LinForm {
            constant: c,
            coeffs: vec![BigRational::zero(); nvars],
        }
    }

    pub fn var(k: usize, nvars: usize) -> Self {
        let mut f = LinForm::constant(BigRational::zero(), nvars);
        f.coeffs[k] = BigRational::from_integer(1.into());
        f
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.is_constant() && self.constant.is_zero()
    }

    fn add_scaled(&mut self, o: &LinForm, s: &BigRational) {
        if s.is_zero() {
            return;
        }
        self.constant += &o.constant * s;
        for (a, b) in self.coeffs.iter_mut().zip(&o.coeffs) {
            *a += b * s;
        }
    }

    pub fn eval(&self, values: &[BigRational]) -> BigRational {
        self.coeffs
            .iter()
            .zip(values)
            .fold(self.constant.clone(), |acc, (c, v)| acc + c * v)
    }

    pub fn render(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (c, n) in self.coeffs.iter().zip(names) {
            if !c.is_zero() {
                parts.push(format!("{c}*({n})"));
            }
        }
        if !self.constant.is_zero() || parts.is_empty() {
            parts.push(self.constant.to_string());
        }
        parts.join(" + ")
    }
}

/// A named linear condition `form = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub name: String,
    pub form: LinForm,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SolveOutcome {
    Solved(AffineSolution),
    /// Indices of a minimal inconsistent subset.
    Inconsistent(Vec<usize>),
}

pub fn solve_constraints(cs: &[Constraint], nvars: usize) -> SolveOutcome {
    let a: Vec<Vec<BigRational>> = cs.iter().map(|c| c.form.coeffs.clone()).collect();
    let b: Vec<BigRational> = cs.iter().map(|c| -c.form.constant.clone()).collect();
    match solve_affine(&a, &b, nvars) {
        Some(s) => SolveOutcome::Solved(s),
        None => SolveOutcome::Inconsistent(minimal_inconsistent(&a, &b, nvars).unwrap_or_default()),
    }
}

/// Ordered basis with its intersection form and a designated canonical vector
/// (fixed up to sign, so `(1,1,-1,…)` and its negative are interchangeable).
#[derive(Clone, Debug, PartialEq)]
pub struct MarkedLattice {
    pub labels: Vec<String>,
    pub gram: Vec<Vec<GramEntry>>,
    pub unknowns: Vec<String>,
    pub canonical: Option<Vec<BigInt>>,
    /// Expected `K·K`.
    pub degree: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeSummary {
    pub labels: Vec<String>,
    pub gram: Vec<Vec<String>>,
    pub canonical: Option<Vec<String>>,
}

impl MarkedLattice {
    pub fn known(labels: &[&str], gram: &[Vec<i64>], canonical: Option<&[i64]>, degree: Option<i64>) -> Result<Self, PicardError> {
        let n = labels.len();
        if gram.len() != n || gram.iter().any(|r| r.len() != n) {
            return Err(PicardError::Usage("Gram matrix does not match the basis".into()));
        }
        let l = MarkedLattice {
            labels: labels.iter().map(|s| s.to_string()).collect(),
            gram: gram
                .iter()
                .map(|r| r.iter().map(|&x| GramEntry::Known(x.into())).collect())
                .collect(),
            unknowns: Vec::new(),
            canonical: canonical.map(|k| k.iter().map(|&x| x.into()).collect()),
            degree,
        };
        l.validate()?;
        Ok(l)
    }

    /// Basis `(f1, f2, E1, …, Ek)`: two conic classes with `f1·f2 = 2` and
    /// disjoint `(-1)`-classes, degree `4 - k`.
    pub fn conic_pair_blowup(k: usize) -> Self {
        let n = k + 2;
        let mut labels = vec!["f1".to_string(), "f2".to_string()];
        labels.extend((1..=k).map(|i| format!("E{i}")));
        let mut g = vec![vec![0i64; n]; n];
        g[0][1] = 2;
        g[1][0] = 2;
        for (i, row) in g.iter_mut().enumerate().skip(2) {
            row[i] = -1;
        }
        let mut canonical = vec![-1i64; n];
        canonical[0] = 1;
        canonical[1] = 1;
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        MarkedLattice::known(&refs, &g, Some(&canonical), Some(4 - k as i64)).expect("well-formed")
    }

    /// Known entries where `known` gives a value, a fresh unknown elsewhere.
    pub fn partial(labels: &[&str], known: impl Fn(usize, usize) -> Option<i64>, canonical: Option<&[i64]>, degree: Option<i64>) -> Self {
        let n = labels.len();
        let mut gram = vec![vec![GramEntry::Known(BigInt::zero()); n]; n];
        let mut unknowns = Vec::new();
        for i in 0..n {
            for j in i..n {
                let e = match known(i, j) {
                    Some(v) => GramEntry::Known(v.into()),
                    None => {
                        unknowns.push(format!("{}·{}", labels[i], labels[j]));
                        GramEntry::Unknown(unknowns.len() - 1)
                    }
                };
                gram[i][j] = e.clone();
                gram[j][i] = e;
            }
        }
        MarkedLattice {
            labels: labels.iter().map(|s| s.to_string()).collect(),
            gram,
            unknowns,
            canonical: canonical.map(|k| k.iter().map(|&x| x.into()).collect()),
            degree,
        }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn is_fully_known(&self) -> bool {
        self.unknowns.is_empty()
    }

    pub fn gram_matrix(&self) -> Option<IntMatrix> {
        let rows: Option<Vec<Vec<BigInt>>> = self
            .gram
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| match e {
                        GramEntry::Known(x) => Some(x.clone()),
                        GramEntry::Unknown(_) => None,
                    })
                    .collect()
            })
            .collect();
        let rows = rows?;
        let mut m = IntMatrix::zero(rows.len());
        for (i, r) in rows.into_iter().enumerate() {
            for (j, x) in r.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Some(m)
    }

    pub fn entry_form(&self, i: usize, j: usize) -> LinForm {
        let nv = self.unknowns.len();
        match &self.gram[i][j] {
            GramEntry::Known(x) => LinForm::constant(BigRational::from_integer(x.clone()), nv),
            GramEntry::Unknown(k) => LinForm::var(*k, nv),
        }
    }

    /// `u·v` as an affine form in the unknowns.
    pub fn pairing(&self, u: &[BigInt], v: &[BigInt]) -> LinForm {
        let mut acc = LinForm::constant(BigRational::zero(), self.unknowns.len());
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                let s = BigRational::from_integer(ui * vj);
                acc.add_scaled(&self.entry_form(i, j), &s);
            }
        }
        acc
    }

    /// Entries of `MᵀGM - G` on and above the diagonal, as named conditions.
    pub fn preservation_conditions(&self, m: &IntMatrix, tag: &str) -> Vec<Constraint> {
        let n = self.rank();
        let cols: Vec<Vec<BigInt>> = (0..n).map(|j| (0..n).map(|i| m.get(i, j).clone()).collect()).collect();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a..n {
                let mut f = self.pairing(&cols[a], &cols[b]);
                f.add_scaled(&self.entry_form(a, b), &BigRational::from_integer((-1).into()));
                out.push(Constraint {
                    name: format!("{tag} preserves {}·{}", self.labels[a], self.labels[b]),
                    form: f,
                });
            }
        }
        out
    }

    /// Fill the unknowns with `values`.
    pub fn substitute(&self, values: &[BigRational]) -> Result<MarkedLattice, PicardError> {
        let mut gram = self.gram.clone();
        for row in gram.iter_mut() {
            for e in row.iter_mut() {
                if let GramEntry::Unknown(k) = e {
                    let v = &values[*k];
                    if !v.is_integer() {
                        return Err(PicardError::Usage(format!("non-integral intersection number {v}")));
                    }
                    *e = GramEntry::Known(v.to_integer());
                }
            }
        }
        Ok(MarkedLattice {
            labels: self.labels.clone(),
            gram,
            unknowns: Vec::new(),
            canonical: self.canonical.clone(),
            degree: self.degree,
        })
    }

    pub fn validate(&self) -> Result<(), PicardError> {
        let n = self.rank();
        for i in 0..n {
            for j in 0..n {
                if self.gram[i][j] != self.gram[j][i] {
                    return Err(PicardError::Usage("Gram matrix is not symmetric".into()));
                }
            }
            if self.labels[i].starts_with('E') {
                if let GramEntry::Known(x) = &self.gram[i][i] {
                    if !x.is_negative() {
                        return Err(PicardError::Usage(format!("{}² must be negative", self.labels[i])));
                    }
                }
            }
        }
        if let Some(k) = &self.canonical {
            if k.len() != n {
                return Err(PicardError::Usage("canonical vector has the wrong length".into()));
            }
            if let (Some(d), true) = (self.degree, self.is_fully_known()) {
                let kk = self.pairing(k, k).constant;
                if kk != BigRational::from_integer(d.into()) {
                    return Err(PicardError::Usage(format!("K·K = {kk}, expected {d}")));
                }
            }
        }
        Ok(())
    }

    pub fn summary(&self) -> LatticeSummary {
        LatticeSummary {
            labels: self.labels.clone(),
            gram: self
                .gram
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|e| match e {
                            GramEntry::Known(x) => x.to_string(),
                            GramEntry::Unknown(k) => format!("?{}", self.unknowns[*k]),
                        })
                        .collect()
                })
                .collect(),
            canonical: self.canonical.as_ref().map(|k| k.iter().map(|x| x.to_string()).collect()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blowup_degrees() {
        for k in 1..=3 {
            let l = MarkedLattice::conic_pair_blowup(k);
            let kk = l.pairing(l.canonical.as_ref().unwrap(), l.canonical.as_ref().unwrap());
            assert_eq!(kk.constant, BigRational::from_integer((4 - k as i64).into()));
        }
    }

    #[test]
    fn rejects_asymmetric_and_positive_exceptional() {
        assert!(MarkedLattice::known(&["f1", "f2"], &[vec![0, 2], vec![1, 0]], None, None).is_err());
        assert!(MarkedLattice::known(&["f1", "E1"], &[vec![0, 0], vec![0, 1]], None, None).is_err());
    }

    #[test]
    fn wrong_degree_rejected() {
        let g = vec![vec![0, 2, 0], vec![2, 0, 0], vec![0, 0, -1]];
        assert!(MarkedLattice::known(&["f1", "f2", "E1"], &g, Some(&[1, 1, -1]), Some(2)).is_err());
        assert!(MarkedLattice::known(&["f1", "f2", "E1"], &g, Some(&[1, 1, -1]), Some(3)).is_ok());
    }

    #[test]
    fn unknowns_enter_linearly() {
        let l = MarkedLattice::partial(&["a", "b"], |i, j| (i == j).then_some(-1), None, None);
        assert_eq!(l.unknowns, vec!["a·b".to_string()]);
        let one = BigInt::from(1);
        let f = l.pairing(&[one.clone(), one.clone()], &[one.clone(), one]);
        // (a+b)² = -2 + 2 a·b
        assert_eq!(f.constant, BigRational::from_integer((-2).into()));
        assert_eq!(f.coeffs[0], BigRational::from_integer(2.into()));
    }

    #[test]
    fn swap_preserves_symmetric_form() {
        let l = MarkedLattice::partial(&["a", "b"], |_, _| None, None, None);
        let swap = IntMatrix::from_rows(&[vec![0i64, 1], vec![1, 0]]);
        let cs = l.preservation_conditions(&swap, "swap");
        // forces a·a = b·b and nothing else
        let nontrivial: Vec<_> = cs.iter().filter(|c| !c.form.is_zero()).collect();
        assert_eq!(nontrivial.len(), 2);
        match solve_constraints(&cs, l.unknowns.len()) {
            SolveOutcome::Solved(s) => assert_eq!(s.kernel.len(), 2),
            SolveOutcome::Inconsistent(_) => panic!("swap constraints are consistent"),
        }
    }
}
