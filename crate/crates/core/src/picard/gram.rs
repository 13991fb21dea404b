//! Recovering unknown intersection numbers from linear claims.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::cases::{self, JCase};
use super::lattice::{solve_constraints, Constraint, MarkedLattice, SolveOutcome};
use crate::algebra::IntMatrix;

#[derive(Clone, Debug, PartialEq)]
pub struct GramProblem {
    pub lattice: MarkedLattice,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum GramOutcome {
    Solved { labels: Vec<String>, gram: Vec<Vec<String>> },
    /// The claims leave `free` directions open; `particular` is one solution.
    Underdetermined { unknowns: Vec<String>, particular: Vec<String>, free: usize },
    /// A minimal set of claims with no common solution.
    Inconsistent { violated: Vec<String> },
}

impl GramOutcome {
    pub fn is_decided(&self) -> bool {
        !matches!(self, GramOutcome::Underdetermined { .. })
    }
}

impl GramProblem {
    pub fn new(lattice: MarkedLattice) -> Self {
        GramProblem {
            lattice,
            constraints: Vec::new(),
        }
    }

    /// `u·v = value`.
    pub fn require_pairing(&mut self, name: impl Into<String>, u: &[i64], v: &[i64], value: i64) {
        let u: Vec<BigInt> = u.iter().map(|&x| x.into()).collect();
        let v: Vec<BigInt> = v.iter().map(|&x| x.into()).collect();
        let mut form = self.lattice.pairing(&u, &v);
        form.constant -= BigRational::from_integer(value.into());
        self.constraints.push(Constraint { name: name.into(), form });
    }

    pub fn require_preserved(&mut self, tag: &str, m: &IntMatrix) {
        let cs = self.lattice.preservation_conditions(m, tag);
        self.constraints.extend(cs.into_iter().filter(|c| !c.form.is_zero()));
    }

    pub fn solve(&self) -> GramOutcome {
        let nv = self.lattice.unknowns.len();
        match solve_constraints(&self.constraints, nv) {
            SolveOutcome::Inconsistent(idx) => GramOutcome::Inconsistent {
                violated: idx.into_iter().map(|i| self.constraints[i].name.clone()).collect(),
            },
            SolveOutcome::Solved(s) if !s.kernel.is_empty() => GramOutcome::Underdetermined {
                unknowns: self.lattice.unknowns.clone(),
                particular: s.particular.iter().map(|x| x.to_string()).collect(),
                free: s.kernel.len(),
            },
            SolveOutcome::Solved(s) => match self.lattice.substitute(&s.particular) {
                Ok(l) => GramOutcome::Solved {
                    labels: l.labels.clone(),
                    gram: l.summary().gram,
                },
                Err(e) => GramOutcome::Inconsistent {
                    violated: vec![format!("integrality: {e}")],
                },
            },
        }
    }
}

fn pretty(v: &[i64; 5]) -> String {
    let cells: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", cells.join(","))
}

/// The system on `(f1, f2, E, E', Eτ)`: both 5×5 matrices are isometries,
/// `K·K` is the stated degree, and the `W₀` vectors are pairwise orthogonal,
/// orthogonal to `K` and have the claimed squares.
pub fn gram_problem(j: JCase) -> GramProblem {
    let mut p = GramProblem::new(cases::z_lattice(j));
    p.require_preserved("α", &cases::z_alpha(j));
    p.require_preserved("β", &cases::z_beta());
    let k = cases::Z_CANONICAL;
    p.require_pairing(format!("K·K = {}", cases::z_degree(j)), &k, &k, cases::z_degree(j));
    let w = cases::w0_basis(j);
    let sq = cases::w0_squares(j);
    for a in 0..4 {
        p.require_pairing(format!("w{}={} has square {}", a + 1, pretty(&w[a]), sq[a]), &w[a], &w[a], sq[a]);
        p.require_pairing(format!("w{}·K = 0", a + 1), &w[a], &k, 0);
        for b in a + 1..4 {
            p.require_pairing(format!("w{}·w{} = 0", a + 1, b + 1), &w[a], &w[b], 0);
        }
    }
    p
}

pub fn derive_gram(j: JCase) -> GramOutcome {
    gram_problem(j).solve()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conic_pair() {
        let l = MarkedLattice::partial(&["f1", "f2"], |_, _| None, None, None);
        let mut p = GramProblem::new(l);
        p.require_pairing("f1²", &[1, 0], &[1, 0], 0);
        p.require_pairing("f2²", &[0, 1], &[0, 1], 0);
        p.require_pairing("f1·f2", &[1, 0], &[0, 1], 2);
        match p.solve() {
            GramOutcome::Solved { gram, .. } => assert_eq!(gram, vec![vec!["0", "2"], vec!["2", "0"]]),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn disjoint_exceptional_curves() {
        let l = MarkedLattice::partial(&["E1", "E2", "E3"], |_, _| None, None, None);
        let mut p = GramProblem::new(l);
        let e = |i: usize| {
            let mut v = [0i64; 3];
            v[i] = 1;
            v
        };
        for i in 0..3 {
            p.require_pairing(format!("E{i}²"), &e(i), &e(i), -1);
            for j in i + 1..3 {
                p.require_pairing(format!("E{i}·E{j}"), &e(i), &e(j), 0);
            }
        }
        match p.solve() {
            GramOutcome::Solved { gram, .. } => {
                for (i, r) in gram.iter().enumerate() {
                    for (j, x) in r.iter().enumerate() {
                        assert_eq!(x, if i == j { "-1" } else { "0" });
                    }
                }
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn missing_claims_leave_freedom() {
        let l = MarkedLattice::partial(&["a", "b"], |_, _| None, None, None);
        let mut p = GramProblem::new(l);
        p.require_pairing("a²", &[1, 0], &[1, 0], -1);
        assert!(matches!(p.solve(), GramOutcome::Underdetermined { free: 2, .. }));
    }

    #[test]
    fn isometries_and_degree_alone_fix_the_form() {
        for j in [JCase::J1, JCase::J23] {
            let mut p = gram_problem(j);
            p.constraints.retain(|c| !c.name.starts_with('w'));
            let GramOutcome::Solved { gram, .. } = p.solve() else {
                panic!("expected a unique form")
            };
            let e2 = if j == JCase::J1 { "-3" } else { "-1" };
            let diag: Vec<&str> = (0..5).map(|i| gram[i][i].as_str()).collect();
            assert_eq!(diag, vec!["0", "0", e2, "-2", "-2"]);
            assert_eq!(gram[2][3], "0");
            assert_eq!(gram[3][4], "0");
        }
    }

    #[test]
    fn full_systems_report_a_certificate() {
        for j in [JCase::J1, JCase::J23] {
            match derive_gram(j) {
                GramOutcome::Inconsistent { violated } => {
                    assert!(violated.iter().any(|v| v.starts_with('w')), "{violated:?}");
                }
                o => panic!("{o:?}"),
            }
        }
    }
}
