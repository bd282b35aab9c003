//! Adapted metrics on `m = g_a ⊕ g_b ⊕ g_c` for so(5).
//!
//! In the dual basis `α, β, γ` of `A, B, C` the form is
//!
//! ```text
//! B = t²(α₁²+α₂²+α₃²+α₄²) + u(α₁α₄ − α₂α₃) + v²(β₁²+β₂²) + w²(γ₁²+γ₂²)
//! ```
//!
//! and `K = √(t² − u²/(4t²))`. The tilde coframe
//! `α̃₁ = tα₁ + (u/2t)α₄`, `α̃₂ = tα₂ − (u/2t)α₃`, `α̃₃ = Kα₃`, `α̃₄ = Kα₄`,
//! `β̃ᵢ = vβᵢ`, `γ̃ᵢ = wγᵢ` diagonalizes `B`; [`orthonormal_frame`] returns its
//! dual basis.

use nalgebra::DMatrix;
use serde::Serialize;
use thiserror::Error;

use crate::lie::{AlgebraVector, GradedLieAlgebra};
use crate::so5;

/// Default absolute tolerance for comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Operations refuse metrics with `K < K_GUARD·|t|`.
pub const K_GUARD: f64 = 1e-8;

/// Dimension of `m` for so(5).
pub const M_DIM: usize = 8;

/// Frame order used by every table: Ã₁..Ã₄, B̃₁, B̃₂, C̃₁, C̃₂.
pub const FRAME_NAMES: [&str; M_DIM] = ["A1~", "A2~", "A3~", "A4~", "B1~", "B2~", "C1~", "C2~"];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error("parameter {0} is not finite")]
    NonFinite(&'static str),
    #[error("parameter {0} must be nonzero")]
    Zero(&'static str),
    #[error("u = {u} outside the open interval (-4t², 4t²) = (-{bound}, {bound})")]
    UOutOfRange { u: f64, bound: f64 },
    #[error("near-degenerate metric: K² = {k_squared:e} below guard {threshold:e} (u too close to the boundary)")]
    NearDegenerate { k_squared: f64, threshold: f64 },
    #[error("gram matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("gram matrix is not symmetric (residual {0:e})")]
    NotSymmetric(f64),
    #[error("gram matrix has dimension {actual}, expected {expected}")]
    Dimension { expected: usize, actual: usize },
    #[error("gram matrix is not positive-definite")]
    NotPositiveDefinite,
}

impl MetricError {
    /// True for failures of a numerical nature (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            MetricError::NearDegenerate { .. } | MetricError::NotPositiveDefinite
        )
    }
}

/// The scalars `(t, u, v, w)` of an adapted metric.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricParams {
    t: f64,
    u: f64,
    v: f64,
    w: f64,
}

impl MetricParams {
    /// Requires `tvw ≠ 0` and `-4t² < u < 4t²`. Positivity of the form is a
    /// separate condition, checked by [`k`](Self::k).
    pub fn new(t: f64, u: f64, v: f64, w: f64) -> Result<Self, MetricError> {
        for (name, x) in [("t", t), ("u", u), ("v", v), ("w", w)] {
            if !x.is_finite() {
                return Err(MetricError::NonFinite(name));
            }
        }
        for (name, x) in [("t", t), ("v", v), ("w", w)] {
            if x == 0.0 {
                return Err(MetricError::Zero(name));
            }
        }
        let bound = 4.0 * t * t;
        if u.abs() >= bound {
            return Err(MetricError::UOutOfRange { u, bound });
        }
        Ok(Self { t, u, v, w })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn w(&self) -> f64 {
        self.w
    }

    pub fn k_squared(&self) -> f64 {
        self.t * self.t - self.u * self.u / (4.0 * self.t * self.t)
    }

    /// `K`, refused when `K < K_GUARD·|t|` (including `K² ≤ 0`).
    pub fn k(&self) -> Result<f64, MetricError> {
        self.k_guarded(K_GUARD)
    }

    pub fn k_guarded(&self, eps: f64) -> Result<f64, MetricError> {
        let k2 = self.k_squared();
        let threshold = (eps * self.t).powi(2);
        if k2 <= 0.0 || k2 < threshold {
            return Err(MetricError::NearDegenerate {
                k_squared: k2,
                threshold,
            });
        }
        Ok(k2.sqrt())
    }

    /// Same metric with `t = 1`, other parameters rescaled (`u/t²`, `v/|t|`, `w/|t|`).
    pub fn normalized(&self) -> Self {
        let t = self.t.abs();
        Self {
            t: 1.0,
            u: self.u / (t * t),
            v: self.v / t,
            w: self.w / t,
        }
    }
}

/// Gram matrix of a symmetric bilinear form on `m`, in the order of the
/// algebra's complement indices.
#[derive(Debug, Clone, PartialEq)]
pub struct AdaptedForm {
    gram: DMatrix<f64>,
}

impl AdaptedForm {
    /// Wraps a symmetric matrix. Positive-definiteness is not required here
    /// so that broken forms can be inspected.
    pub fn from_gram(gram: DMatrix<f64>) -> Result<Self, MetricError> {
        if !gram.is_square() {
            return Err(MetricError::NotSquare(gram.nrows(), gram.ncols()));
        }
        let asym = (&gram - gram.transpose()).amax();
        if asym > 0.0 {
            return Err(MetricError::NotSymmetric(asym));
        }
        Ok(Self { gram })
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.gram.clone().cholesky().is_some()
    }

    /// `B(x, y)` for vectors in `m`-coordinates.
    pub fn eval(&self, x: &[f64], y: &[f64]) -> f64 {
        let n = self.dim();
        let mut acc = 0.0;
        for i in 0..n {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                acc += x[i] * self.gram[(i, j)] * y[j];
            }
        }
        acc
    }

    /// `B(x, y)` for full algebra vectors; isotropy coordinates are ignored.
    pub fn eval_raw(&self, alg: &GradedLieAlgebra, x: &AlgebraVector, y: &AlgebraVector) -> f64 {
        let idx = alg.complement_indices();
        let xm: Vec<f64> = idx.iter().map(|&i| x[i]).collect();
        let ym: Vec<f64> = idx.iter().map(|&i| y[i]).collect();
        self.eval(&xm, &ym)
    }

    /// Largest `|B(g_γ, g_γ')|` entry with `γ ≠ γ'`.
    pub fn cross_block_residual(&self, alg: &GradedLieAlgebra) -> f64 {
        let idx = alg.complement_indices();
        let mut worst: f64 = 0.0;
        for (p, &i) in idx.iter().enumerate() {
            for (q, &j) in idx.iter().enumerate() {
                if alg.label(i) != alg.label(j) {
                    worst = worst.max(self.gram[(p, q)].abs());
                }
            }
        }
        worst
    }
}

/// The adapted form for `p` on so(5), in the order A₁..A₄, B₁, B₂, C₁, C₂.
///
/// Refuses near-degenerate parameters (see [`MetricParams::k`]).
pub fn build_form(p: &MetricParams) -> Result<AdaptedForm, MetricError> {
    p.k()?;
    Ok(AdaptedForm { gram: raw_gram(p) })
}

/// The Gram matrix of the form with no positivity check.
pub fn raw_gram(p: &MetricParams) -> DMatrix<f64> {
    let (t2, h, v2, w2) = (p.t * p.t, p.u / 2.0, p.v * p.v, p.w * p.w);
    let mut g = DMatrix::zeros(M_DIM, M_DIM);
    for i in 0..4 {
        g[(i, i)] = t2;
    }
    g[(0, 3)] = h;
    g[(3, 0)] = h;
    g[(1, 2)] = -h;
    g[(2, 1)] = -h;
    for i in 4..6 {
        g[(i, i)] = v2;
    }
    for i in 6..8 {
        g[(i, i)] = w2;
    }
    g
}

/// Result of the `ad(h)`-invariance check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvarianceReport {
    pub max_residual: f64,
    /// Algebra indices `(Z, X, Y)` attaining the maximum.
    pub worst: Option<[usize; 3]>,
    pub passed: bool,
}

/// Max over `Z ∈ h`, `X, Y ∈ m` basis of `|B([Z,X],Y) + B(X,[Z,Y])|`.
pub fn check_adh_invariance(
    alg: &GradedLieAlgebra,
    form: &AdaptedForm,
    tol: f64,
) -> Result<InvarianceReport, MetricError> {
    let m_idx = alg.complement_indices();
    if m_idx.len() != form.dim() {
        return Err(MetricError::Dimension {
            expected: m_idx.len(),
            actual: form.dim(),
        });
    }
    let to_m = |x: &AlgebraVector| -> Vec<f64> { m_idx.iter().map(|&i| x[i]).collect() };
    let mut max_residual: f64 = 0.0;
    let mut worst = None;
    for z in alg.isotropy_indices() {
        for (p, &x) in m_idx.iter().enumerate() {
            let zx = to_m(&alg.bracket_basis(z, x));
            for (q, &y) in m_idx.iter().enumerate() {
                let zy = to_m(&alg.bracket_basis(z, y));
                let mut ex = vec![0.0; m_idx.len()];
                let mut ey = vec![0.0; m_idx.len()];
                ex[p] = 1.0;
                ey[q] = 1.0;
                let r = (form.eval(&zx, &ey) + form.eval(&ex, &zy)).abs();
                if r > max_residual {
                    max_residual = r;
                    worst = Some([z, x, y]);
                }
            }
        }
    }
    Ok(InvarianceReport {
        max_residual,
        worst,
        passed: max_residual <= tol,
    })
}

/// An ordered `B`-orthonormal basis of `m`, stored as full algebra vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalFrame {
    names: Vec<String>,
    vectors: Vec<AlgebraVector>,
}

impl OrthonormalFrame {
    pub fn new(names: Vec<String>, vectors: Vec<AlgebraVector>) -> Self {
        assert_eq!(names.len(), vectors.len());
        Self { names, vectors }
    }

    /// A frame for an arbitrary algebra and positive-definite form, from the
    /// Cholesky factor `G = LLᵀ`: the frame vectors are the columns of `L⁻ᵀ`.
    /// Block-diagonal forms give grading-homogeneous frames.
    pub fn from_cholesky(alg: &GradedLieAlgebra, form: &AdaptedForm) -> Result<Self, MetricError> {
        let m_idx = alg.complement_indices();
        if m_idx.len() != form.dim() {
            return Err(MetricError::Dimension {
                expected: m_idx.len(),
                actual: form.dim(),
            });
        }
        let chol = form
            .gram
            .clone()
            .cholesky()
            .ok_or(MetricError::NotPositiveDefinite)?;
        let l_inv_t = chol
            .l()
            .transpose()
            .try_inverse()
            .ok_or(MetricError::NotPositiveDefinite)?;
        let vectors = (0..m_idx.len())
            .map(|c| {
                let mut v = AlgebraVector::zeros(alg.dim()).into_coords();
                for (r, &i) in m_idx.iter().enumerate() {
                    v[i] = l_inv_t[(r, c)];
                }
                AlgebraVector::new(v)
            })
            .collect();
        let names = m_idx
            .iter()
            .map(|&i| format!("{}~", alg.names()[i]))
            .collect();
        Ok(Self { names, vectors })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vectors(&self) -> &[AlgebraVector] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &AlgebraVector {
        &self.vectors[i]
    }

    /// `max |B(Eᵢ, Eⱼ) − δᵢⱼ|`.
    pub fn gram_residual(&self, alg: &GradedLieAlgebra, form: &AdaptedForm) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, x) in self.vectors.iter().enumerate() {
            for (j, y) in self.vectors.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((form.eval_raw(alg, x, y) - target).abs());
            }
        }
        worst
    }
}

/// The frame Ã₁..Ã₄, B̃₁, B̃₂, C̃₁, C̃₂ dual to the tilde coframe:
///
/// ```text
/// Ã₁ = A₁/t              Ã₂ = A₂/t
/// Ã₃ = (u/2t²K)A₂ + A₃/K  Ã₄ = −(u/2t²K)A₁ + A₄/K
/// B̃ᵢ = Bᵢ/v              C̃ᵢ = Cᵢ/w
/// ```
pub fn orthonormal_frame(p: &MetricParams) -> Result<OrthonormalFrame, MetricError> {
    let k = p.k()?;
    let (t, u, v, w) = (p.t, p.u, p.v, p.w);
    let mix = u / (2.0 * t * t * k);
    let vec_of = |entries: &[(usize, f64)]| {
        let mut c = vec![0.0; so5::DIM];
        for &(i, x) in entries {
            c[i] = x;
        }
        AlgebraVector::new(c)
    };
    let vectors = vec![
        vec_of(&[(so5::A1, 1.0 / t)]),
        vec_of(&[(so5::A2, 1.0 / t)]),
        vec_of(&[(so5::A2, mix), (so5::A3, 1.0 / k)]),
        vec_of(&[(so5::A1, -mix), (so5::A4, 1.0 / k)]),
        vec_of(&[(so5::B1, 1.0 / v)]),
        vec_of(&[(so5::B2, 1.0 / v)]),
        vec_of(&[(so5::C1, 1.0 / w)]),
        vec_of(&[(so5::C2, 1.0 / w)]),
    ];
    Ok(OrthonormalFrame::new(
        FRAME_NAMES.iter().map(|s| s.to_string()).collect(),
        vectors,
    ))
}
