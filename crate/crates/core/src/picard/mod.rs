//! Integer isometries of Picard lattices and the hyperbolicity certificates
//! built from them.

pub mod cases;
pub mod gram;
pub mod lattice;
pub mod words;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

pub use cases::{CaseTag, JCase};
pub use gram::{derive_gram, GramOutcome, GramProblem};
pub use lattice::{Constraint, GramEntry, LinForm, MarkedLattice};
pub use words::{
    certify_spectral_radius, format_rho_word, parse_rho_word, summarize_sweep, sweep_inequalities, word_reports, verify_inequalities, word_isometry, HVector,
    InequalityReport, Rho, SpectralCertificate, SweepReport,
};

use crate::algebra::linalg::fixed_subspace;
use crate::algebra::IntMatrix;
use crate::error::PicardError;
use lattice::{solve_constraints, SolveOutcome};

pub const M4II_REMARK: &str = "numerically listed, but no surface realises it";

#[derive(Clone, Debug, PartialEq)]
pub struct IsometryAction {
    pub tag: CaseTag,
    pub matrix: IntMatrix,
    pub printed_square: Option<IntMatrix>,
    pub lattice: MarkedLattice,
    pub declared_order: u32,
    pub non_geometric: Option<&'static str>,
}

pub fn builtin_action(tag: CaseTag) -> IsometryAction {
    use cases::*;
    let (matrix, printed_square, lattice, declared_order) = match tag {
        CaseTag::M6i => (m6i_alpha(), Some(m6i_alpha_sq()), MarkedLattice::conic_pair_blowup(1), 3),
        CaseTag::M6ii => (m6ii_alpha(), Some(m6ii_alpha_sq()), MarkedLattice::conic_pair_blowup(3), 3),
        CaseTag::M4i => (m4i_beta(), None, MarkedLattice::conic_pair_blowup(2), 2),
        CaseTag::M4ii => (m4ii_beta(), None, MarkedLattice::conic_pair_blowup(3), 2),
        CaseTag::Zj1Alpha => (z_alpha(JCase::J1), None, z_lattice(JCase::J1), 3),
        CaseTag::Zj1Beta => (z_beta(), None, z_lattice(JCase::J1), 2),
        CaseTag::Zj23Alpha => (z_alpha(JCase::J23), None, z_lattice(JCase::J23), 3),
        CaseTag::Zj23Beta => (z_beta(), None, z_lattice(JCase::J23), 2),
        CaseTag::Zj1RedAlpha => (
            reduced_alpha(JCase::J1),
            Some(reduced_alpha_sq(JCase::J1)),
            reduced_lattice(JCase::J1),
            3,
        ),
        CaseTag::Zj1RedBeta => (reduced_beta(), None, reduced_lattice(JCase::J1), 2),
        CaseTag::Zj23RedAlpha => (
            reduced_alpha(JCase::J23),
            Some(reduced_alpha_sq(JCase::J23)),
            reduced_lattice(JCase::J23),
            3,
        ),
        CaseTag::Zj23RedBeta => (reduced_beta(), None, reduced_lattice(JCase::J23), 2),
    };
    debug_assert_eq!(matrix.dim(), lattice.rank());
    IsometryAction {
        tag,
        matrix,
        printed_square,
        lattice,
        declared_order,
        non_geometric: (tag == CaseTag::M4ii).then_some(M4II_REMARK),
    }
}

pub fn builtin_action_by_name(name: &str) -> Result<IsometryAction, PicardError> {
    Ok(builtin_action(name.parse()?))
}

#[derive(Clone, Debug, PartialEq)]
pub enum FormCheck {
    Holds,
    /// First entry `(i, j)` of `MᵀGM - G` that is a nonzero constant.
    Fails { entry: (usize, usize) },
    /// Gram has unknowns; these conditions are what preservation requires.
    Conditional { constraints: Vec<Constraint> },
}

pub fn preserves_form(act: &IsometryAction) -> FormCheck {
    preserves_form_on(&act.lattice, &act.matrix)
}

pub fn preserves_form_on(lattice: &MarkedLattice, m: &IntMatrix) -> FormCheck {
    let n = lattice.rank();
    let cs = lattice.preservation_conditions(m, "M");
    let mut pending = Vec::new();
    let mut k = 0;
    for a in 0..n {
        for b in a..n {
            let c = &cs[k];
            k += 1;
            if c.form.is_zero() {
                continue;
            }
            if c.form.is_constant() {
                return FormCheck::Fails { entry: (a, b) };
            }
            pending.push(c.clone());
        }
    }
    if pending.is_empty() {
        FormCheck::Holds
    } else {
        FormCheck::Conditional { constraints: pending }
    }
}

/// `None` when the lattice has no canonical vector.
pub fn fixes_canonical(act: &IsometryAction) -> Option<bool> {
    let k = act.lattice.canonical.as_ref()?;
    Some(act.matrix.apply(k) == *k)
}

/// Smallest `p ≤ 12` with `M^p = I`.
pub fn order_check(act: &IsometryAction) -> Option<u32> {
    matrix_order(&act.matrix, 12)
}

pub fn matrix_order(m: &IntMatrix, max: u32) -> Option<u32> {
    let mut p = m.clone();
    for k in 1..=max {
        if p.is_identity() {
            return Some(k);
        }
        p = &p * m;
    }
    None
}

/// `None` when no square is printed for this case.
pub fn square_check(act: &IsometryAction) -> Option<bool> {
    act.printed_square.as_ref().map(|sq| &act.matrix * &act.matrix == *sq)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormStatus {
    Holds,
    Fails,
    /// Unknown Gram entries; preservation and `K·K` admit a common solution.
    Satisfiable,
    Unsatisfiable,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub dimension: usize,
    pub form: FormStatus,
    pub fixes_canonical: Option<bool>,
    pub order: Option<u32>,
    pub declared_order: u32,
    pub square_matches: Option<bool>,
    pub non_geometric: Option<String>,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        matches!(self.form, FormStatus::Holds | FormStatus::Satisfiable)
            && self.fixes_canonical != Some(false)
            && self.order == Some(self.declared_order)
            && self.square_matches != Some(false)
    }
}

pub fn check_case(tag: CaseTag) -> CaseReport {
    let act = builtin_action(tag);
    let form = match preserves_form(&act) {
        FormCheck::Holds => FormStatus::Holds,
        FormCheck::Fails { .. } => FormStatus::Fails,
        FormCheck::Conditional { mut constraints } => {
            let l = &act.lattice;
            if let (Some(k), Some(d)) = (&l.canonical, l.degree) {
                let mut f = l.pairing(k, k);
                f.constant -= BigRational::from_integer(d.into());
                constraints.push(Constraint {
                    name: "K·K".into(),
                    form: f,
                });
            }
            match solve_constraints(&constraints, l.unknowns.len()) {
                SolveOutcome::Solved(_) => FormStatus::Satisfiable,
                SolveOutcome::Inconsistent(_) => FormStatus::Unsatisfiable,
            }
        }
    };
    CaseReport {
        case: tag.as_str().to_string(),
        dimension: act.matrix.dim(),
        form,
        fixes_canonical: fixes_canonical(&act),
        order: order_check(&act),
        declared_order: act.declared_order,
        square_matches: square_check(&act),
        non_geometric: act.non_geometric.map(str::to_string),
    }
}

/// Common fixed vectors of the α/β pair on `(f1, f2, E, E', Eτ)`.
pub fn pair_fixed_subspace(j: JCase) -> Vec<Vec<BigInt>> {
    fixed_subspace(&[cases::z_alpha(j), cases::z_beta()]).expect("same dimension")
}

/// Matrix of `m` on the span of `basis` (columns), if that span is invariant.
pub fn restrict_to_basis(m: &IntMatrix, basis: &[Vec<BigInt>]) -> Option<Vec<Vec<BigRational>>> {
    use crate::algebra::linalg::solve_affine;
    let n = m.dim();
    let k = basis.len();
    let q = |x: &BigInt| BigRational::from_integer(x.clone());
    let a: Vec<Vec<BigRational>> = (0..n).map(|i| basis.iter().map(|b| q(&b[i])).collect()).collect();
    let mut cols = Vec::with_capacity(k);
    for b in basis {
        let img: Vec<BigRational> = m.apply(b).iter().map(q).collect();
        cols.push(solve_affine(&a, &img, k)?.particular);
    }
    Some((0..k).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn tags_round_trip() {
        for t in CaseTag::ALL {
            assert_eq!(t.as_str().parse::<CaseTag>().unwrap(), t);
        }
        assert_eq!("zj23-red-beta".parse::<CaseTag>().unwrap(), CaseTag::Zj23RedBeta);
        assert!(matches!("M7".parse::<CaseTag>(), Err(PicardError::UnknownCase(_))));
    }

    #[test]
    fn dimensions_match_lattices() {
        for t in CaseTag::ALL {
            let a = builtin_action(t);
            assert_eq!(a.matrix.dim(), a.lattice.rank(), "{t}");
        }
    }

    #[test]
    fn m6i_preserves_known_form() {
        let a = builtin_action(CaseTag::M6i);
        assert_eq!(preserves_form(&a), FormCheck::Holds);
        assert_eq!(fixes_canonical(&a), Some(true));
        assert_eq!(order_check(&a), Some(3));
        assert_eq!(square_check(&a), Some(true));
    }

    #[test]
    fn m6i_with_perturbed_exceptional_square() {
        let mut a = builtin_action(CaseTag::M6i);
        a.lattice.gram[2][2] = GramEntry::Known((-2).into());
        assert!(matches!(preserves_form(&a), FormCheck::Fails { .. }));
    }

    #[test]
    fn identity_preserves_everything() {
        for t in CaseTag::ALL {
            let l = builtin_action(t).lattice;
            let id = IntMatrix::identity(l.rank());
            assert_eq!(preserves_form_on(&l, &id), FormCheck::Holds);
        }
    }

    #[test]
    fn perturbed_entry_breaks_canonical() {
        let mut a = builtin_action(CaseTag::Zj1Beta);
        assert_eq!(fixes_canonical(&a), Some(true));
        let v = a.matrix.get(0, 0) + BigInt::one();
        a.matrix.set(0, 0, v);
        assert_eq!(fixes_canonical(&a), Some(false));
    }

    #[test]
    fn orders() {
        assert_eq!(order_check(&builtin_action(CaseTag::M4i)), Some(2));
        assert_eq!(order_check(&builtin_action(CaseTag::Zj1RedBeta)), Some(2));
        assert_eq!(order_check(&builtin_action(CaseTag::Zj23RedAlpha)), Some(3));
    }

    #[test]
    fn printed_second_case_is_not_an_isometry() {
        let a = builtin_action(CaseTag::M4ii);
        assert!(a.non_geometric.is_some());
        assert!(matches!(preserves_form(&a), FormCheck::Fails { .. }));
        assert_eq!(fixes_canonical(&a), Some(false));
        assert_eq!(order_check(&a), None);
    }

    #[test]
    fn geometric_cases_pass() {
        for t in CaseTag::ALL.into_iter().filter(|t| *t != CaseTag::M4ii) {
            let r = check_case(t);
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn z_forms_are_conditional() {
        let r = check_case(CaseTag::Zj1Alpha);
        assert_eq!(r.form, FormStatus::Satisfiable);
    }

    #[test]
    fn fixed_line_of_both_pairs() {
        let want = vec![bi(&[1, 1, -1, -1, -1])];
        for j in [JCase::J1, JCase::J23] {
            let got = pair_fixed_subspace(j);
            let neg: Vec<Vec<BigInt>> = got.iter().map(|v| v.iter().map(|x| -x).collect()).collect();
            assert!(got == want || neg == want, "{got:?}");
        }
    }

    #[test]
    fn five_by_five_alpha_and_w0_bases_are_crossed() {
        let basis = |j| cases::w0_basis(j).iter().map(|v| bi(v)).collect::<Vec<_>>();
        let as_int = |m: Vec<Vec<BigRational>>| -> IntMatrix {
            let rows: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|x| x.to_integer()).collect()).collect();
            let mut out = IntMatrix::zero(rows.len());
            for (i, r) in rows.into_iter().enumerate() {
                for (j, x) in r.into_iter().enumerate() {
                    out.set(i, j, x);
                }
            }
            out
        };
        assert!(restrict_to_basis(&cases::z_alpha(JCase::J1), &basis(JCase::J1)).is_none());
        let r = restrict_to_basis(&cases::z_alpha(JCase::J1), &basis(JCase::J23)).unwrap();
        assert_eq!(as_int(r), cases::reduced_alpha(JCase::J23));
        let r = restrict_to_basis(&cases::z_alpha(JCase::J23), &basis(JCase::J1)).unwrap();
        assert_eq!(as_int(r), cases::reduced_alpha_sq(JCase::J1));
        let r = restrict_to_basis(&cases::z_beta(), &basis(JCase::J1)).unwrap();
        assert_eq!(as_int(r), cases::reduced_beta());
    }
}
