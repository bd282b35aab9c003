//! Invariant Riemannian geometry at the origin of a reductive homogeneous space.
//!
//! Everything here is algebraic. For an orthonormal frame `E₁..Eₙ` of `m`:
//!
//! * `U(X,Y)` solves `2B(U(X,Y),Z) = B(X,[Z,Y]_m) + B([Z,X]_m,Y)` for all `Z ∈ m`,
//! * `∇_X Y = U(X,Y) + ½[X,Y]_m` (the Nomizu operator of the Levi-Civita connection),
//! * `R(X,Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_{[X,Y]_m} Z − [[X,Y]_h, Z]`,
//! * `ρ(X,Y) = tr(V ↦ R(V,X)Y)`,
//! * `(∇_X ρ)(Y,Z) = −ρ(∇_X Y, Z) − ρ(Y, ∇_X Z)` and
//!   `L(X,Y,Z) = (∇_Xρ)(Y,Z) + (∇_Yρ)(Z,X) + (∇_Zρ)(X,Y)`.
//!
//! Vectors passed to [`Geometry`] methods are coordinates in the frame.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use thiserror::Error;

use crate::lie::{AlgebraVector, GradedLieAlgebra, LieError};
use crate::metric::{self, AdaptedForm, MetricError, MetricParams, OrthonormalFrame};
use crate::so5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("gram matrix is singular or indefinite")]
    SingularGram,
    #[error("frame is not orthonormal (residual {0:e})")]
    FrameNotOrthonormal(f64),
    #[error("form has dimension {form}, algebra complement has dimension {m}")]
    Dimension { form: usize, m: usize },
    #[error("[h, m] is not contained in m (residual {0:e})")]
    NotReductive(f64),
}

impl GeometryError {
    pub fn is_numerical(&self) -> bool {
        match self {
            GeometryError::Metric(e) => e.is_numerical(),
            GeometryError::Lie(_) | GeometryError::Dimension { .. } => false,
            _ => true,
        }
    }
}

/// Frame orthonormality must hold to this level before a [`Geometry`] is built.
const FRAME_TOL: f64 = 1e-9;

/// Solves the defining equation of `U` in raw coordinates.
///
/// `x` and `y` are full algebra vectors; only their `m` parts enter. The
/// result has zero isotropy coordinates.
pub fn u_map(
    alg: &GradedLieAlgebra,
    form: &AdaptedForm,
    x: &AlgebraVector,
    y: &AlgebraVector,
) -> Result<AlgebraVector, GeometryError> {
    UMapSolver::new(alg, form)?.solve(x, y)
}

/// Cholesky-factored Gram matrix reused across many `U` evaluations.
struct UMapSolver<'a> {
    alg: &'a GradedLieAlgebra,
    form: &'a AdaptedForm,
    m_idx: Vec<usize>,
    chol: nalgebra::Cholesky<f64, nalgebra::Dyn>,
}

impl<'a> UMapSolver<'a> {
    fn new(alg: &'a GradedLieAlgebra, form: &'a AdaptedForm) -> Result<Self, GeometryError> {
        let m_idx = alg.complement_indices();
        if m_idx.len() != form.dim() {
            return Err(GeometryError::Dimension {
                form: form.dim(),
                m: m_idx.len(),
            });
        }
        let chol = form
            .gram()
            .clone()
            .cholesky()
            .ok_or(GeometryError::SingularGram)?;
        Ok(Self {
            alg,
            form,
            m_idx,
            chol,
        })
    }

    fn to_m(&self, x: &AlgebraVector) -> Vec<f64> {
        self.m_idx.iter().map(|&i| x[i]).collect()
    }

    fn solve(&self, x: &AlgebraVector, y: &AlgebraVector) -> Result<AlgebraVector, GeometryError> {
        let xm = self.to_m(x);
        let ym = self.to_m(y);
        let mut rhs = DVector::zeros(self.m_idx.len());
        for (p, &z) in self.m_idx.iter().enumerate() {
            let ez = self.alg.basis(z);
            let zy = self.to_m(&self.alg.bracket(&ez, y)?);
            let zx = self.to_m(&self.alg.bracket(&ez, x)?);
            rhs[p] = 0.5 * (self.form.eval(&xm, &zy) + self.form.eval(&zx, &ym));
        }
        let sol = self.chol.solve(&rhs);
        let mut out = vec![0.0; self.alg.dim()];
        for (p, &i) in self.m_idx.iter().enumerate() {
            out[i] = sol[p];
        }
        Ok(AlgebraVector::new(out))
    }
}

/// An `n × n` table of `n`-vectors, indexed `[i][j] → coefficients`.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    n: usize,
    data: Vec<f64>,
}

impl Table {
    fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &[f64] {
        let n = self.n;
        &self.data[(i * n + j) * n..(i * n + j + 1) * n]
    }

    fn entry_mut(&mut self, i: usize, j: usize) -> &mut [f64] {
        let n = self.n;
        &mut self.data[(i * n + j) * n..(i * n + j + 1) * n]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.data[(i * self.n + j) * self.n + k]
    }

    /// Contracts the table against coefficient vectors: `Σ xᵢ yⱼ T[i][j]`.
    pub fn apply(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n];
        for i in 0..n {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                let s = x[i] * y[j];
                if s == 0.0 {
                    continue;
                }
                for (o, t) in out.iter_mut().zip(self.entry(i, j)) {
                    *o += s * t;
                }
            }
        }
        out
    }

    /// Nonzero entries `(i, j, coefficients)` with `i ≤ j`, above `cutoff` in max norm.
    pub fn upper_entries(&self, cutoff: f64) -> Vec<(usize, usize, Vec<f64>)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i..self.n {
                let e = self.entry(i, j);
                if e.iter().any(|c| c.abs() > cutoff) {
                    out.push((i, j, e.to_vec()));
                }
            }
        }
        out
    }
}

/// Residuals of the structural identities of the connection and curvature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityResiduals {
    /// `∇_X Y − ∇_Y X − [X,Y]_m`
    pub torsion: f64,
    /// `⟨∇_X Y, Z⟩ + ⟨Y, ∇_X Z⟩`
    pub metric_compatibility: f64,
    /// `R(X,Y)Z + R(Y,X)Z`
    pub curvature_antisymmetry: f64,
    /// `⟨R(X,Y)Z, W⟩ + ⟨Z, R(X,Y)W⟩`
    pub curvature_skew_adjointness: f64,
    /// `R(X,Y)Z + R(Y,Z)X + R(Z,X)Y`
    pub first_bianchi: f64,
}

/// Maximum of `|L|` over frame triples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LedgerMax {
    pub value: f64,
    pub triple: [usize; 3],
}

/// Precomputed connection, curvature and Ricci data for one metric.
#[derive(Debug, Clone)]
pub struct Geometry {
    names: Vec<String>,
    bracket_m: Table,
    u: Table,
    nabla: Table,
    /// `curvature[(i*n + j)]` is the matrix of `Z ↦ R(Eᵢ,Eⱼ)Z`.
    curvature: Vec<DMatrix<f64>>,
    ricci: DMatrix<f64>,
}

impl Geometry {
    /// Builds the geometry for `form` using an orthonormal `frame` of `m`.
    pub fn new(
        alg: &GradedLieAlgebra,
        form: &AdaptedForm,
        frame: &OrthonormalFrame,
    ) -> Result<Self, GeometryError> {
        let solver = UMapSolver::new(alg, form)?;
        let n = frame.len();
        if n != solver.m_idx.len() {
            return Err(GeometryError::Dimension {
                form: n,
                m: solver.m_idx.len(),
            });
        }
        let gram_residual = frame.gram_residual(alg, form);
        if !(gram_residual <= FRAME_TOL) {
            return Err(GeometryError::FrameNotOrthonormal(gram_residual));
        }

        // Raw m-vector → frame coordinates: cᵢ = B(x, Eᵢ).
        let frame_m: Vec<Vec<f64>> = frame.vectors().iter().map(|f| solver.to_m(f)).collect();
        let coords = |x: &AlgebraVector| -> Vec<f64> {
            let xm = solver.to_m(x);
            frame_m.iter().map(|f| form.eval(&xm, f)).collect()
        };

        let mut bracket_m = Table::zeros(n);
        let mut u = Table::zeros(n);
        let mut nabla = Table::zeros(n);
        let mut bracket_h = vec![AlgebraVector::zeros(alg.dim()); n * n];
        for i in 0..n {
            for j in 0..n {
                let (ei, ej) = (frame.vector(i), frame.vector(j));
                let br = alg.bracket(ei, ej)?;
                let bm = coords(&br);
                let um = coords(&solver.solve(ei, ej)?);
                bracket_m.entry_mut(i, j).copy_from_slice(&bm);
                u.entry_mut(i, j).copy_from_slice(&um);
                for (k, slot) in nabla.entry_mut(i, j).iter_mut().enumerate() {
                    *slot = um[k] + 0.5 * bm[k];
                }
                bracket_h[i * n + j] = alg.project_h(&br)?;
            }
        }

        // Nᵢ: matrix of Y ↦ ∇_{Eᵢ} Y.
        let ops: Vec<DMatrix<f64>> = (0..n)
            .map(|i| DMatrix::from_fn(n, n, |k, l| nabla.get(i, l, k)))
            .collect();

        // Isotropy action [[Eᵢ,Eⱼ]_h, ·] in frame coordinates.
        let mut curvature = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let h = &bracket_h[i * n + j];
                let mut iso = DMatrix::zeros(n, n);
                if !h.is_zero() {
                    for l in 0..n {
                        let hz = alg.bracket(h, frame.vector(l))?;
                        let leak = alg.project_h(&hz)?.max_abs();
                        if leak > FRAME_TOL {
                            return Err(GeometryError::NotReductive(leak));
                        }
                        iso.set_column(l, &DVector::from_vec(coords(&hz)));
                    }
                }
                let mut r = &ops[i] * &ops[j] - &ops[j] * &ops[i] - iso;
                for (p, op) in ops.iter().enumerate() {
                    let c = bracket_m.get(i, j, p);
                    if c != 0.0 {
                        r -= op * c;
                    }
                }
                curvature.push(r);
            }
        }

        // ρᵢⱼ = Σₖ ⟨R(Eₖ,Eᵢ)Eⱼ, Eₖ⟩
        let ricci = DMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| curvature[k * n + i][(k, j)]).sum()
        });

        Ok(Self {
            names: frame.names().to_vec(),
            bracket_m,
            u,
            nabla,
            curvature,
            ricci,
        })
    }

    /// Geometry of the adapted metric `p` on SO(5)/SO(2)×SO(2)×SO(1), in the
    /// tilde frame.
    pub fn so5(p: &MetricParams) -> Result<Self, GeometryError> {
        let alg = so5::build_so5();
        let form = metric::build_form(p)?;
        let frame = metric::orthonormal_frame(p)?;
        Self::new(&alg, &form, &frame)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn frame_names(&self) -> &[String] {
        &self.names
    }

    /// `[Eᵢ, Eⱼ]_m` table.
    pub fn bracket_table(&self) -> &Table {
        &self.bracket_m
    }

    /// `U(Eᵢ, Eⱼ)` table.
    pub fn u_table(&self) -> &Table {
        &self.u
    }

    /// `∇_{Eᵢ} Eⱼ` table.
    pub fn nabla_table(&self) -> &Table {
        &self.nabla
    }

    pub fn bracket_m(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        self.bracket_m.apply(x, y)
    }

    pub fn u_map(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        self.u.apply(x, y)
    }

    pub fn nabla(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        self.nabla.apply(x, y)
    }

    /// Matrix of `Z ↦ R(Eᵢ, Eⱼ)Z`.
    pub fn curvature_operator(&self, i: usize, j: usize) -> &DMatrix<f64> {
        &self.curvature[i * self.dim() + j]
    }

    pub fn curvature(&self, x: &[f64], y: &[f64], z: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let z = DVector::from_column_slice(z);
        let mut out = DVector::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let s = x[i] * y[j];
                if s != 0.0 {
                    out += self.curvature_operator(i, j) * &z * s;
                }
            }
        }
        out.as_slice().to_vec()
    }

    pub fn ricci(&self) -> &DMatrix<f64> {
        &self.ricci
    }

    pub fn ricci_form(&self, x: &[f64], y: &[f64]) -> f64 {
        let n = self.dim();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += x[i] * self.ricci[(i, j)] * y[j];
            }
        }
        acc
    }

    /// `(∇_X ρ)(Y, Z)`.
    pub fn nabla_ricci(&self, x: &[f64], y: &[f64], z: &[f64]) -> f64 {
        -self.ricci_form(&self.nabla(x, y), z) - self.ricci_form(y, &self.nabla(x, z))
    }

    pub fn ledger(&self, x: &[f64], y: &[f64], z: &[f64]) -> f64 {
        self.nabla_ricci(x, y, z) + self.nabla_ricci(y, z, x) + self.nabla_ricci(z, x, y)
    }

    fn nabla_ricci_basis(&self, i: usize, j: usize, k: usize) -> f64 {
        let n = self.dim();
        let mut acc = 0.0;
        for p in 0..n {
            acc -= self.nabla.get(i, j, p) * self.ricci[(p, k)]
                + self.ricci[(j, p)] * self.nabla.get(i, k, p);
        }
        acc
    }

    /// `L(Eᵢ, Eⱼ, Eₖ)`.
    pub fn ledger_basis(&self, i: usize, j: usize, k: usize) -> f64 {
        self.nabla_ricci_basis(i, j, k)
            + self.nabla_ricci_basis(j, k, i)
            + self.nabla_ricci_basis(k, i, j)
    }

    /// Max `|L|` over all unordered frame triples with repetition
    /// (120 triples for `n = 8`). `L` is totally symmetric, so this covers
    /// every ordered triple.
    pub fn max_ledger(&self) -> LedgerMax {
        let n = self.dim();
        let mut best = LedgerMax {
            value: 0.0,
            triple: [0, 0, 0],
        };
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    let l = self.ledger_basis(i, j, k).abs();
                    if l > best.value {
                        best = LedgerMax {
                            value: l,
                            triple: [i, j, k],
                        };
                    }
                }
            }
        }
        best
    }

    /// Residuals of torsion-freeness, metric compatibility and the curvature
    /// identities over all frame triples (and quadruples for skew-adjointness).
    pub fn identity_residuals(&self) -> IdentityResiduals {
        let n = self.dim();
        let mut r = IdentityResiduals {
            torsion: 0.0,
            metric_compatibility: 0.0,
            curvature_antisymmetry: 0.0,
            curvature_skew_adjointness: 0.0,
            first_bianchi: 0.0,
        };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let t = self.nabla.get(i, j, k)
                        - self.nabla.get(j, i, k)
                        - self.bracket_m.get(i, j, k);
                    r.torsion = r.torsion.max(t.abs());
                    // ⟨∇_{Eᵢ}Eⱼ, Eₖ⟩ + ⟨Eⱼ, ∇_{Eᵢ}Eₖ⟩
                    let mc = self.nabla.get(i, j, k) + self.nabla.get(i, k, j);
                    r.metric_compatibility = r.metric_compatibility.max(mc.abs());

                    let rij = self.curvature_operator(i, j);
                    let rji = self.curvature_operator(j, i);
                    let rjk = self.curvature_operator(j, k);
                    let rki = self.curvature_operator(k, i);
                    for p in 0..n {
                        let a = rij[(p, k)] + rji[(p, k)];
                        r.curvature_antisymmetry = r.curvature_antisymmetry.max(a.abs());
                        // ⟨R(Eᵢ,Eⱼ)Eₖ, Eₚ⟩ + ⟨Eₖ, R(Eᵢ,Eⱼ)Eₚ⟩
                        let s = rij[(p, k)] + rij[(k, p)];
                        r.curvature_skew_adjointness = r.curvature_skew_adjointness.max(s.abs());
                        let b = rij[(p, k)] + rjk[(p, i)] + rki[(p, j)];
                        r.first_bianchi = r.first_bianchi.max(b.abs());
                    }
                }
            }
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::so5::build_so5;

    fn geo(t: f64, u: f64, v: f64, w: f64) -> Geometry {
        Geometry::so5(&MetricParams::new(t, u, v, w).unwrap()).unwrap()
    }

    fn e(i: usize) -> Vec<f64> {
        let mut v = vec![0.0; 8];
        v[i] = 1.0;
        v
    }

    #[test]
    fn naturally_reductive_point_has_vanishing_u() {
        let g = geo(1.0, 0.0, 1.0, 1.0);
        assert!(g.u_table().data.iter().all(|&x| x.abs() < 1e-15));
    }

    #[test]
    fn u_map_raw_matches_table() {
        let p = MetricParams::new(1.2, 0.5, 0.8, 1.7).unwrap();
        let alg = build_so5();
        let form = metric::build_form(&p).unwrap();
        let frame = metric::orthonormal_frame(&p).unwrap();
        let g = Geometry::new(&alg, &form, &frame).unwrap();
        let raw = u_map(&alg, &form, frame.vector(0), frame.vector(4)).unwrap();
        // U(Ã₁,B̃₁) = ((t²−v²)/(2tvw)) C̃₁
        let expected = (1.44 - 0.64) / (2.0 * 1.2 * 0.8 * 1.7);
        let c1 = frame.vector(6);
        assert!((raw[so5::C1] - expected * c1[so5::C1]).abs() < 1e-14);
        assert!((g.u_table().get(0, 4, 6) - expected).abs() < 1e-14);
        assert!(g.u_map(&e(0), &e(1)).iter().all(|x| x.abs() < 1e-15));
    }

    #[test]
    fn ricci_at_unit_params() {
        let g = geo(1.0, 0.0, 1.0, 1.0);
        let expected = [2.5, 2.5, 2.5, 2.5, 2.0, 2.0, 2.0, 2.0];
        for i in 0..8 {
            for j in 0..8 {
                let target = if i == j { expected[i] } else { 0.0 };
                assert!((g.ricci()[(i, j)] - target).abs() < 1e-13, "({i},{j})");
            }
        }
    }

    #[test]
    fn ledger_vanishes_on_naturally_reductive_metric() {
        assert!(geo(1.0, 0.0, 1.0, 1.0).max_ledger().value < 1e-14);
        assert!(geo(2.0, 0.0, 2.0, 2.0).max_ledger().value < 1e-14);
    }

    #[test]
    fn ledger_nonzero_off_solution_set() {
        let g = geo(1.0, 0.0, 1.0, 2.0);
        assert!(g.ledger_basis(0, 4, 6).abs() > 0.1);
        let x = [0.3, -0.1, 0.7, 0.2, 1.0, -0.4, 0.5, 0.9];
        let y = [1.0, 0.2, -0.3, 0.0, 0.6, 0.1, -0.8, 0.4];
        let z = [-0.5, 0.9, 0.1, 0.3, -0.2, 0.7, 0.0, 0.6];
        let a = g.ledger(&x, &y, &z);
        assert!((a - g.ledger(&y, &z, &x)).abs() < 1e-12);
        assert!((a - g.ledger(&y, &x, &z)).abs() < 1e-12);
    }

    #[test]
    fn curvature_antisymmetric_on_diagonal() {
        let g = geo(0.9, 0.3, 1.4, 0.6);
        let x = [0.3, -0.1, 0.7, 0.2, 1.0, -0.4, 0.5, 0.9];
        let z = [1.0, 0.2, -0.3, 0.0, 0.6, 0.1, -0.8, 0.4];
        assert!(g.curvature(&x, &x, &z).iter().all(|c| c.abs() < 1e-12));
    }

    #[test]
    fn identities_hold_generic_point() {
        let r = geo(1.3, 0.7, 0.9, 1.6).identity_residuals();
        assert!(r.torsion < 1e-12);
        assert!(r.metric_compatibility < 1e-12);
        assert!(r.curvature_antisymmetry < 1e-12);
        assert!(r.curvature_skew_adjointness < 1e-11);
        assert!(r.first_bianchi < 1e-11);
    }

    #[test]
    fn cholesky_frame_gives_the_same_scalar_curvature() {
        let p = MetricParams::new(1.1, -0.6, 0.7, 1.5).unwrap();
        let alg = build_so5();
        let form = metric::build_form(&p).unwrap();
        let a = Geometry::so5(&p).unwrap();
        let b = Geometry::new(
            &alg,
            &form,
            &OrthonormalFrame::from_cholesky(&alg, &form).unwrap(),
        )
        .unwrap();
        assert!((a.ricci().trace() - b.ricci().trace()).abs() < 1e-12);
        let mut ea: Vec<f64> = a
            .ricci()
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        let mut eb: Vec<f64> = b
            .ricci()
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        ea.sort_by(f64::total_cmp);
        eb.sort_by(f64::total_cmp);
        for (x, y) in ea.iter().zip(&eb) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn non_orthonormal_frame_rejected() {
        let p = MetricParams::new(1.0, 0.0, 2.0, 1.0).unwrap();
        let alg = build_so5();
        let form = metric::build_form(&p).unwrap();
        let wrong =
            metric::orthonormal_frame(&MetricParams::new(1.0, 0.0, 1.0, 1.0).unwrap()).unwrap();
        assert!(matches!(
            Geometry::new(&alg, &form, &wrong),
            Err(GeometryError::FrameNotOrthonormal(_))
        ));
    }

    #[test]
    fn near_degenerate_params_are_numerical_errors() {
        let p = MetricParams::new(1.0, 3.9, 1.0, 1.0).unwrap();
        let err = Geometry::so5(&p).unwrap_err();
        assert!(err.is_numerical());
    }
}
