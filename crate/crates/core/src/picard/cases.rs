//! Printed isometry matrices and the lattices they act on.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::lattice::MarkedLattice;
use crate::algebra::IntMatrix;
use crate::error::PicardError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CaseTag {
    M6i,
    M6ii,
    M4i,
    M4ii,
    Zj1Alpha,
    Zj1Beta,
    Zj23Alpha,
    Zj23Beta,
    Zj1RedAlpha,
    Zj1RedBeta,
    Zj23RedAlpha,
    Zj23RedBeta,
}

impl CaseTag {
    pub const ALL: [CaseTag; 12] = [
        CaseTag::M6i,
        CaseTag::M6ii,
        CaseTag::M4i,
        CaseTag::M4ii,
        CaseTag::Zj1Alpha,
        CaseTag::Zj1Beta,
        CaseTag::Zj23Alpha,
        CaseTag::Zj23Beta,
        CaseTag::Zj1RedAlpha,
        CaseTag::Zj1RedBeta,
        CaseTag::Zj23RedAlpha,
        CaseTag::Zj23RedBeta,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::M6i => "M6-i",
            CaseTag::M6ii => "M6-ii",
            CaseTag::M4i => "M4-i",
            CaseTag::M4ii => "M4-ii",
            CaseTag::Zj1Alpha => "Zj1-α",
            CaseTag::Zj1Beta => "Zj1-β",
            CaseTag::Zj23Alpha => "Zj23-α",
            CaseTag::Zj23Beta => "Zj23-β",
            CaseTag::Zj1RedAlpha => "Zj1-red-α",
            CaseTag::Zj1RedBeta => "Zj1-red-β",
            CaseTag::Zj23RedAlpha => "Zj23-red-α",
            CaseTag::Zj23RedBeta => "Zj23-red-β",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseTag {
    type Err = PicardError;

    /// Accepts the Greek tags and ASCII spellings (`Zj1-alpha`, `zj1-a`, `m6-i`).
    fn from_str(s: &str) -> Result<Self, PicardError> {
        let norm = s
            .trim()
            .to_lowercase()
            .replace("alpha", "a")
            .replace("beta", "b")
            .replace('α', "a")
            .replace('β', "b")
            .replace('_', "-");
        CaseTag::ALL
            .iter()
            .copied()
            .find(|t| {
                let canon = t.as_str().to_lowercase().replace('α', "a").replace('β', "b");
                canon == norm
            })
            .ok_or_else(|| PicardError::UnknownCase(s.to_string()))
    }
}

/// The two families of the hyperbolic construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum JCase {
    J1,
    J23,
}

impl JCase {
    pub fn as_str(self) -> &'static str {
        match self {
            JCase::J1 => "j1",
            JCase::J23 => "j23",
        }
    }
}

impl FromStr for JCase {
    type Err = PicardError;
    fn from_str(s: &str) -> Result<Self, PicardError> {
        match s.trim().to_lowercase().trim_start_matches('j') {
            "1" => Ok(JCase::J1),
            "2" | "3" | "23" | "2,3" => Ok(JCase::J23),
            _ => Err(PicardError::UnknownCase(s.to_string())),
        }
    }
}

fn m(rows: &[&[i64]]) -> IntMatrix {
    let v: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    IntMatrix::from_rows(&v)
}

fn embed3(block: IntMatrix) -> IntMatrix {
    let mut out = IntMatrix::identity(5);
    for i in 0..3 {
        for j in 0..3 {
            out.set(i, j, block.get(i, j).clone());
        }
    }
    out
}

pub fn m6i_alpha() -> IntMatrix {
    m(&[&[1, 1, 1], &[1, 0, 0], &[-2, 0, -1]])
}

pub fn m6i_alpha_sq() -> IntMatrix {
    m(&[&[0, 1, 0], &[1, 1, 1], &[0, -2, -1]])
}

pub fn m6ii_alpha() -> IntMatrix {
    m(&[
        &[1, 3, 1, 1, 1],
        &[3, 4, 2, 2, 2],
        &[-2, -4, -2, -2, -1],
        &[-2, -4, -1, -2, -2],
        &[-2, -4, -2, -1, -2],
    ])
}

pub fn m6ii_alpha_sq() -> IntMatrix {
    m(&[
        &[4, 3, 2, 2, 2],
        &[3, 1, 1, 1, 1],
        &[-4, -2, -2, -1, -2],
        &[-4, -2, -2, -2, -1],
        &[-4, -2, -1, -2, -2],
    ])
}

pub fn m4i_beta() -> IntMatrix {
    m(&[&[1, 2, 1, 1], &[2, 1, 1, 1], &[-2, -2, -2, -1], &[-2, -2, -1, -2]])
}

pub fn m4ii_beta() -> IntMatrix {
    m(&[
        &[3, 4, 2, 2, 2],
        &[4, 3, 2, 2, 2],
        &[-3, -3, -3, -2, -2],
        &[-3, -3, -2, -3, -2],
        &[-3, -3, -2, -2, -3],
    ])
}

/// α on `(f1, f2, E)` before the second blow-up.
pub fn alpha_block(j: JCase) -> IntMatrix {
    match j {
        JCase::J1 => m(&[&[1, 3, 3], &[3, 4, 6], &[-2, -4, -5]]),
        JCase::J23 => m(&[&[0, 1, 0], &[1, 1, 1], &[0, -2, -1]]),
    }
}

/// β on `(f1', f2', E')`.
pub fn beta_block() -> IntMatrix {
    m(&[&[1, 2, 2], &[2, 1, 2], &[-2, -2, -3]])
}

pub fn z_alpha(j: JCase) -> IntMatrix {
    embed3(alpha_block(j))
}

pub fn z_beta() -> IntMatrix {
    m(&[
        &[5, 10, 0, 6, 8],
        &[2, 5, 0, 2, 4],
        &[0, 0, 1, 0, 0],
        &[-2, -6, 0, -3, -4],
        &[-4, -8, 0, -4, -7],
    ])
}

pub fn reduced_alpha(j: JCase) -> IntMatrix {
    match j {
        JCase::J1 => m(&[&[0, -1, -2, -2], &[-2, -2, -3, -4], &[-1, 0, -2, -2], &[2, 2, 4, 5]]),
        JCase::J23 => m(&[
            &[-2, -9, -18, -24],
            &[-6, -20, -36, -51],
            &[-6, -18, -35, -48],
            &[7, 22, 42, 58],
        ]),
    }
}

pub fn reduced_alpha_sq(j: JCase) -> IntMatrix {
    match j {
        JCase::J1 => m(&[&[0, -2, -1, -2], &[-1, -2, 0, -2], &[-2, -3, -2, -4], &[2, 4, 2, 5]]),
        JCase::J23 => m(&[
            &[-2, -6, -18, -21],
            &[-9, -20, -54, -66],
            &[-6, -12, -35, -42],
            &[8, 17, 48, 58],
        ]),
    }
}

pub fn reduced_beta() -> IntMatrix {
    IntMatrix::diag(&[-1i64, -1, 1, 1])
}

/// Claimed orthogonal basis of the complement of K, in `(f1, f2, E, E', Eτ)` coordinates.
pub fn w0_basis(j: JCase) -> [[i64; 5]; 4] {
    match j {
        JCase::J1 => [[1, 0, 0, -1, 0], [2, 1, 0, -1, -2], [3, 1, -2, -1, -2], [4, 2, -2, -2, -3]],
        JCase::J23 => [[1, 0, 0, -1, 0], [2, 1, 0, -1, -2], [8, 2, -2, -2, -5], [9, 3, -2, -3, -6]],
    }
}

pub fn w0_squares(j: JCase) -> [i64; 4] {
    match j {
        JCase::J1 => [-2, -2, -2, 2],
        JCase::J23 => [-2, -2, -6, 6],
    }
}

pub const Z_LABELS: [&str; 5] = ["f1", "f2", "E", "E'", "Eτ"];
pub const Z_CANONICAL: [i64; 5] = [1, 1, -1, -1, -1];

pub fn z_degree(j: JCase) -> i64 {
    match j {
        JCase::J1 => -3,
        JCase::J23 => -1,
    }
}

/// Only the conic block `f1² = f2² = 0`, `f1·f2 = 2` is fixed; every other
/// intersection number is an unknown.
pub fn z_lattice(j: JCase) -> MarkedLattice {
    MarkedLattice::partial(
        &Z_LABELS,
        |a, b| match (a, b) {
            (0, 0) | (1, 1) => Some(0),
            (0, 1) => Some(2),
            _ => None,
        },
        Some(&Z_CANONICAL),
        Some(z_degree(j)),
    )
}

/// The complement of K with the claimed diagonal form.
pub fn reduced_lattice(j: JCase) -> MarkedLattice {
    let sq = w0_squares(j);
    let g: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|k| if i == k { sq[i] } else { 0 }).collect()).collect();
    MarkedLattice::known(&["w1", "w2", "w3", "w4"], &g, None, None).expect("diagonal form")
}
