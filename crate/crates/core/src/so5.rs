//! The 10-dimensional algebra so(5) with its Z₂²-grading
//! `g = g_e ⊕ g_a ⊕ g_b ⊕ g_c` for the flag manifold SO(5)/SO(2)×SO(2)×SO(1).
//!
//! Each basis element is the skew matrix with a single `+1` above the
//! diagonal (and `-1` at the mirrored slot):
//!
//! ```text
//!   0   x1  a1  a2  b1
//!  -x1  0   a3  a4  b2
//!  -a1 -a3  0   x2  c1
//!  -a2 -a4 -x2  0   c2
//!  -b1 -b2 -c1 -c2  0
//! ```

use nalgebra::Matrix5;
use thiserror::Error;

use crate::lie::{AlgebraVector, GradedLieAlgebra, GradingLabel};

pub const DIM: usize = 10;

pub const X1: usize = 0;
pub const X2: usize = 1;
pub const A1: usize = 2;
pub const A2: usize = 3;
pub const A3: usize = 4;
pub const A4: usize = 5;
pub const B1: usize = 6;
pub const B2: usize = 7;
pub const C1: usize = 8;
pub const C2: usize = 9;

pub const NAMES: [&str; DIM] = ["X1", "X2", "A1", "A2", "A3", "A4", "B1", "B2", "C1", "C2"];

/// Upper-triangular slot `(row, col)` of each basis element, zero-based.
const SLOTS: [(usize, usize); DIM] = [
    (0, 1),
    (2, 3),
    (0, 2),
    (0, 3),
    (1, 2),
    (1, 3),
    (0, 4),
    (1, 4),
    (2, 4),
    (3, 4),
];

/// Z₂² components. `a·b = c`, `a·c = b`, `b·c = a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    E,
    A,
    B,
    C,
}

impl Component {
    pub fn label(self) -> GradingLabel {
        let mask = match self {
            Component::E => 0b00,
            Component::A => 0b01,
            Component::B => 0b10,
            Component::C => 0b11,
        };
        GradingLabel::from_mask(mask, 2).expect("rank 2 is valid")
    }

    pub fn of_index(index: usize) -> Component {
        match index {
            X1 | X2 => Component::E,
            A1..=A4 => Component::A,
            B1 | B2 => Component::B,
            _ => Component::C,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum So5Error {
    #[error("matrix is not skew-symmetric (residual {0:e})")]
    NotSkew(f64),
    #[error("expected a vector of dimension {DIM}, got {0}")]
    Dimension(usize),
}

/// The ten basis matrices in canonical order.
#[derive(Debug, Clone)]
pub struct So5Basis {
    matrices: [Matrix5<f64>; DIM],
}

impl Default for So5Basis {
    fn default() -> Self {
        Self::new()
    }
}

impl So5Basis {
    pub fn new() -> Self {
        let matrices = SLOTS.map(|(r, c)| {
            let mut m = Matrix5::zeros();
            m[(r, c)] = 1.0;
            m[(c, r)] = -1.0;
            m
        });
        Self { matrices }
    }

    pub fn names(&self) -> [&'static str; DIM] {
        NAMES
    }

    pub fn matrix(&self, index: usize) -> &Matrix5<f64> {
        &self.matrices[index]
    }

    pub fn matrices(&self) -> &[Matrix5<f64>; DIM] {
        &self.matrices
    }
}

pub fn matrix_of(x: &AlgebraVector) -> Result<Matrix5<f64>, So5Error> {
    if x.dim() != DIM {
        return Err(So5Error::Dimension(x.dim()));
    }
    let mut m = Matrix5::zeros();
    for (i, &(r, c)) in SLOTS.iter().enumerate() {
        m[(r, c)] = x[i];
        m[(c, r)] = -x[i];
    }
    Ok(m)
}

/// Reads the upper-triangular slots of a skew matrix. Fails when
/// `max |M + Mᵀ| > tol`.
pub fn vector_of(m: &Matrix5<f64>, tol: f64) -> Result<AlgebraVector, So5Error> {
    let residual = (m + m.transpose()).amax();
    if residual > tol || residual.is_nan() {
        return Err(So5Error::NotSkew(residual));
    }
    Ok(AlgebraVector::new(
        SLOTS.iter().map(|&(r, c)| m[(r, c)]).collect(),
    ))
}

/// so(5) with structure constants read off the matrix commutators of [`So5Basis`].
pub fn build_so5() -> GradedLieAlgebra {
    let basis = So5Basis::new();
    let mut nonzeros = Vec::new();
    for i in 0..DIM {
        for j in 0..DIM {
            let (p, q) = (basis.matrix(i), basis.matrix(j));
            let comm = p * q - q * p;
            let v = vector_of(&comm, 0.0).expect("commutator of skew matrices is skew");
            for (k, &c) in v.coords().iter().enumerate() {
                if c != 0.0 {
                    nonzeros.push((i, j, k, c));
                }
            }
        }
    }
    let grading = (0..DIM).map(|i| Component::of_index(i).label()).collect();
    GradedLieAlgebra::new(
        NAMES.iter().map(|s| s.to_string()).collect(),
        grading,
        nonzeros,
    )
    .expect("so(5) basis data is consistent")
}
