//! Real Lie algebras given by structure constants, graded over Z₂ᵏ.
//!
//! A [`GradedLieAlgebra`] stores the dense table `c[i][j][k]` with
//! `[eᵢ, eⱼ] = Σₖ c[i][j][k] eₖ` together with a [`GradingLabel`] for every
//! basis vector. The basis vectors carrying the identity label span the
//! isotropy subalgebra `h = g_e`; the others span the complement `m`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported grading rank `k`.
pub const MAX_GRADING_RANK: usize = 32;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LieError {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("grading rank must be between 1 and {MAX_GRADING_RANK}, got {0}")]
    InvalidRank(usize),
    #[error("grading labels mix ranks {0} and {1}")]
    RankMismatch(usize, usize),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("structure constant ({0},{1},{2}) given more than once")]
    DuplicateEntry(usize, usize, usize),
    #[error("non-finite structure constant at ({0},{1},{2})")]
    NonFinite(usize, usize, usize),
    #[error("invalid algebra document: {0}")]
    Document(String),
}

/// An element of Z₂ᵏ, stored as a bit mask. The group law is XOR.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradingLabel {
    mask: u32,
    rank: u8,
}

impl GradingLabel {
    pub fn new(bits: &[bool]) -> Result<Self, LieError> {
        let rank = bits.len();
        if rank == 0 || rank > MAX_GRADING_RANK {
            return Err(LieError::InvalidRank(rank));
        }
        let mask = bits
            .iter()
            .enumerate()
            .fold(0u32, |acc, (i, &b)| acc | (u32::from(b) << i));
        Ok(Self {
            mask,
            rank: rank as u8,
        })
    }

    pub fn from_mask(mask: u32, rank: usize) -> Result<Self, LieError> {
        if rank == 0 || rank > MAX_GRADING_RANK {
            return Err(LieError::InvalidRank(rank));
        }
        let keep = if rank == 32 {
            u32::MAX
        } else {
            (1u32 << rank) - 1
        };
        Ok(Self {
            mask: mask & keep,
            rank: rank as u8,
        })
    }

    pub fn identity(rank: usize) -> Result<Self, LieError> {
        Self::from_mask(0, rank)
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn is_identity(&self) -> bool {
        self.mask == 0
    }

    pub fn bits(&self) -> Vec<bool> {
        (0..self.rank()).map(|i| self.mask >> i & 1 == 1).collect()
    }
}

impl Mul for GradingLabel {
    type Output = GradingLabel;

    fn mul(self, rhs: GradingLabel) -> GradingLabel {
        assert_eq!(self.rank, rhs.rank, "grading labels of different rank");
        GradingLabel {
            mask: self.mask ^ rhs.mask,
            rank: self.rank,
        }
    }
}

impl fmt::Display for GradingLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("e");
        }
        for b in self.bits() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Coordinates of an algebra element in the algebra's raw basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AlgebraVector(Vec<f64>);

impl AlgebraVector {
    pub fn new(coords: Vec<f64>) -> Self {
        Self(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![0.0; dim])
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[index] = 1.0;
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self(self.0.iter().map(|x| x * factor).collect())
    }

    /// Largest absolute coordinate.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0.0)
    }
}

impl std::ops::Index<usize> for AlgebraVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for &AlgebraVector {
    type Output = AlgebraVector;
    fn add(self, rhs: &AlgebraVector) -> AlgebraVector {
        assert_eq!(self.dim(), rhs.dim());
        AlgebraVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &AlgebraVector {
    type Output = AlgebraVector;
    fn sub(self, rhs: &AlgebraVector) -> AlgebraVector {
        assert_eq!(self.dim(), rhs.dim());
        AlgebraVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &AlgebraVector {
    type Output = AlgebraVector;
    fn neg(self) -> AlgebraVector {
        self.scale(-1.0)
    }
}

/// One failed check, located by basis indices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub indices: [usize; 3],
    pub residual: f64,
}

/// Outcome of [`GradedLieAlgebra::validate`]. Empty lists mean the algebra is valid.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    /// `(i, j, k)` with `c[i][j][k] + c[j][i][k] ≠ 0`.
    pub antisymmetry: Vec<Violation>,
    /// `(i, j, l)` whose cyclic Jacobi sum is nonzero; residual is the largest component.
    pub jacobi: Vec<Violation>,
    /// `(i, j, k)` with `c[i][j][k] ≠ 0` but `label(k) ≠ label(i)·label(j)`.
    pub grading: Vec<Violation>,
    pub max_antisymmetry_residual: f64,
    pub max_jacobi_residual: f64,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.antisymmetry.is_empty() && self.jacobi.is_empty() && self.grading.is_empty()
    }
}

/// A finite-dimensional real Lie algebra with a Z₂ᵏ-grading of its basis.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedLieAlgebra {
    names: Vec<String>,
    grading: Vec<GradingLabel>,
    structure: Vec<f64>,
}

impl GradedLieAlgebra {
    /// Builds an algebra from its nonzero structure constants `(i, j, k, c[i][j][k])`.
    ///
    /// No antisymmetrization is applied: what is given is what is stored, so
    /// [`validate`](Self::validate) sees malformed input as it is.
    pub fn new<I>(
        names: Vec<String>,
        grading: Vec<GradingLabel>,
        nonzeros: I,
    ) -> Result<Self, LieError>
    where
        I: IntoIterator<Item = (usize, usize, usize, f64)>,
    {
        let n = names.len();
        if grading.len() != n {
            return Err(LieError::DimensionMismatch {
                expected: n,
                actual: grading.len(),
            });
        }
        if n == 0 {
            return Err(LieError::Document("empty basis".into()));
        }
        let rank = grading[0].rank();
        if let Some(bad) = grading.iter().find(|g| g.rank() != rank) {
            return Err(LieError::RankMismatch(rank, bad.rank()));
        }
        let mut structure = vec![0.0; n * n * n];
        let mut seen = BTreeSet::new();
        for (i, j, k, value) in nonzeros {
            for index in [i, j, k] {
                if index >= n {
                    return Err(LieError::IndexOutOfRange { index, dim: n });
                }
            }
            if !value.is_finite() {
                return Err(LieError::NonFinite(i, j, k));
            }
            if !seen.insert((i, j, k)) {
                return Err(LieError::DuplicateEntry(i, j, k));
            }
            structure[(i * n + j) * n + k] = value;
        }
        Ok(Self {
            names,
            grading,
            structure,
        })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn grading_rank(&self) -> usize {
        self.grading[0].rank()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn grading(&self) -> &[GradingLabel] {
        &self.grading
    }

    pub fn label(&self, index: usize) -> GradingLabel {
        self.grading[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn constant(&self, i: usize, j: usize, k: usize) -> f64 {
        let n = self.dim();
        self.structure[(i * n + j) * n + k]
    }

    /// Copy with `c[i][j][k]` shifted by `delta` (only that entry).
    pub fn perturbed(&self, i: usize, j: usize, k: usize, delta: f64) -> Self {
        let n = self.dim();
        let mut out = self.clone();
        out.structure[(i * n + j) * n + k] += delta;
        out
    }

    /// Copy with basis vector `index` moved to another grading component.
    pub fn relabeled(&self, index: usize, label: GradingLabel) -> Self {
        let mut out = self.clone();
        out.grading[index] = label;
        out
    }

    pub fn basis(&self, index: usize) -> AlgebraVector {
        AlgebraVector::basis(self.dim(), index)
    }

    /// Distinct grading labels present, in first-appearance order.
    pub fn labels(&self) -> Vec<GradingLabel> {
        let mut out: Vec<GradingLabel> = Vec::new();
        for g in &self.grading {
            if !out.contains(g) {
                out.push(*g);
            }
        }
        out
    }

    /// Basis indices carrying `label`.
    pub fn component_indices(&self, label: GradingLabel) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.grading[i] == label)
            .collect()
    }

    /// Basis indices of `h = g_e`.
    pub fn isotropy_indices(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.grading[i].is_identity())
            .collect()
    }

    /// Basis indices of the reductive complement `m`.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| !self.grading[i].is_identity())
            .collect()
    }

    fn check_dim(&self, x: &AlgebraVector) -> Result<(), LieError> {
        if x.dim() != self.dim() {
            return Err(LieError::DimensionMismatch {
                expected: self.dim(),
                actual: x.dim(),
            });
        }
        Ok(())
    }

    pub fn bracket(&self, x: &AlgebraVector, y: &AlgebraVector) -> Result<AlgebraVector, LieError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let n = self.dim();
        let mut out = vec![0.0; n];
        for (i, &xi) in x.coords().iter().enumerate() {
            if xi == 0.0 {
                continue;
            }
            for (j, &yj) in y.coords().iter().enumerate() {
                if yj == 0.0 {
                    continue;
                }
                let s = xi * yj;
                let row = &self.structure[(i * n + j) * n..(i * n + j + 1) * n];
                for (o, c) in out.iter_mut().zip(row) {
                    *o += s * c;
                }
            }
        }
        Ok(AlgebraVector(out))
    }

    /// `[eᵢ, eⱼ]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> AlgebraVector {
        let n = self.dim();
        AlgebraVector(self.structure[(i * n + j) * n..(i * n + j + 1) * n].to_vec())
    }

    /// Zeroes every coordinate whose basis label is not in `labels`.
    pub fn project(
        &self,
        x: &AlgebraVector,
        labels: &[GradingLabel],
    ) -> Result<AlgebraVector, LieError> {
        self.check_dim(x)?;
        Ok(AlgebraVector(
            x.coords()
                .iter()
                .zip(&self.grading)
                .map(|(&c, g)| if labels.contains(g) { c } else { 0.0 })
                .collect(),
        ))
    }

    /// Projection onto `m` (all non-identity components).
    pub fn project_m(&self, x: &AlgebraVector) -> Result<AlgebraVector, LieError> {
        self.check_dim(x)?;
        Ok(AlgebraVector(
            x.coords()
                .iter()
                .zip(&self.grading)
                .map(|(&c, g)| if g.is_identity() { 0.0 } else { c })
                .collect(),
        ))
    }

    /// Projection onto `h = g_e`.
    pub fn project_h(&self, x: &AlgebraVector) -> Result<AlgebraVector, LieError> {
        self.check_dim(x)?;
        Ok(AlgebraVector(
            x.coords()
                .iter()
                .zip(&self.grading)
                .map(|(&c, g)| if g.is_identity() { c } else { 0.0 })
                .collect(),
        ))
    }

    /// Checks antisymmetry, the Jacobi identity and grading closure.
    ///
    /// A value counts as a violation when its magnitude exceeds `tol`; with
    /// `tol = 0.0` every comparison is exact. Negative or NaN tolerances are
    /// treated as zero.
    pub fn validate(&self, tol: f64) -> ValidationReport {
        let tol = if tol.is_nan() { 0.0 } else { tol.max(0.0) };
        let n = self.dim();
        let mut report = ValidationReport::default();

        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let r = (self.constant(i, j, k) + self.constant(j, i, k)).abs();
                    report.max_antisymmetry_residual = report.max_antisymmetry_residual.max(r);
                    if r > tol {
                        report.antisymmetry.push(Violation {
                            indices: [i, j, k],
                            residual: r,
                        });
                    }
                    let c = self.constant(i, j, k);
                    if c.abs() > tol && self.grading[k] != self.grading[i] * self.grading[j] {
                        report.grading.push(Violation {
                            indices: [i, j, k],
                            residual: c.abs(),
                        });
                    }
                }
            }
        }

        // [[eᵢ,eⱼ],eₗ] + [[eⱼ,eₗ],eᵢ] + [[eₗ,eᵢ],eⱼ], component p
        let mut sum = vec![0.0; n];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    sum.iter_mut().for_each(|s| *s = 0.0);
                    for m in 0..n {
                        let (a, b, c) = (
                            self.constant(i, j, m),
                            self.constant(j, l, m),
                            self.constant(l, i, m),
                        );
                        if a == 0.0 && b == 0.0 && c == 0.0 {
                            continue;
                        }
                        for (p, s) in sum.iter_mut().enumerate() {
                            *s += a * self.constant(m, l, p)
                                + b * self.constant(m, i, p)
                                + c * self.constant(m, j, p);
                        }
                    }
                    let r = sum.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
                    report.max_jacobi_residual = report.max_jacobi_residual.max(r);
                    if r > tol {
                        report.jacobi.push(Violation {
                            indices: [i, j, l],
                            residual: r,
                        });
                    }
                }
            }
        }
        report
    }

    pub fn to_document(&self) -> AlgebraDocument {
        let n = self.dim();
        let mut structure = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = self.constant(i, j, k);
                    if c != 0.0 {
                        structure.push((i, j, k, c));
                    }
                }
            }
        }
        AlgebraDocument {
            dim: n,
            names: self.names.clone(),
            grading: self
                .grading
                .iter()
                .map(|g| g.bits().into_iter().map(u8::from).collect())
                .collect(),
            structure,
        }
    }

    pub fn from_document(doc: &AlgebraDocument) -> Result<Self, LieError> {
        if doc.names.len() != doc.dim {
            return Err(LieError::Document(format!(
                "dim is {} but {} names given",
                doc.dim,
                doc.names.len()
            )));
        }
        if doc.grading.len() != doc.dim {
            return Err(LieError::Document(format!(
                "dim is {} but {} grading labels given",
                doc.dim,
                doc.grading.len()
            )));
        }
        let grading = doc
            .grading
            .iter()
            .map(|bits| {
                if bits.iter().any(|&b| b > 1) {
                    return Err(LieError::Document("grading bits must be 0 or 1".into()));
                }
                let bools: Vec<bool> = bits.iter().map(|&b| b == 1).collect();
                GradingLabel::new(&bools)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(doc.names.clone(), grading, doc.structure.iter().copied())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("algebra document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, LieError> {
        let doc: AlgebraDocument =
            serde_json::from_str(text).map_err(|e| LieError::Document(e.to_string()))?;
        Self::from_document(&doc)
    }
}

/// Serialized form of a [`GradedLieAlgebra`]: basis names, one bit vector
/// per basis element, and the nonzero structure constants as `[i, j, k, value]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraDocument {
    pub dim: usize,
    pub names: Vec<String>,
    pub grading: Vec<Vec<u8>>,
    pub structure: Vec<(usize, usize, usize, f64)>,
}
