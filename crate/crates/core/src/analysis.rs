//! Structural predicates and the first-Ledger-condition solvers for so(5).
//!
//! The solvers work in the normalized variables `V = v²/t²`, `W = w²/t²`,
//! `S = V + W`, `P = VW` and `Usq = u²/t⁴`, and return metrics with `t = 1`.
//!
//! * `u = 0`: besides `V = W`, the condition is `9 − 10S + S² + 8P = 0`, so
//!   `P = (−S² + 10S − 9)/8` with `S ∈ (1, 9)`; `V, W` are the roots
//!   `X₁,₂ = (S ∓ √((3S² − 10S + 9)/2))/2` of `X² − SX + P`.
//! * `u ≠ 0`: besides `V = W`, the system reduces to
//!   `64P − 24PS + 4S − 13S² + 3S³ = 0` and `7Usq = 28 − 16S + 4(S² − 8P)`, giving
//!   `P = −S(S−4)(3S−1)/(8(8−3S))`, `Δ = S(−3S²+3S+4)/(2(8−3S))` and
//!   `Usq = 4(8 − 7S + S²)/(8 − 3S)`, admissible for `S ∈ (1/3, (7−√17)/2)`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Geometry, GeometryError};
use crate::metric::{MetricError, MetricParams};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("S = {s} outside the admissible interval ({lo}, {hi}) for branch {branch}")]
    OutOfInterval {
        s: f64,
        lo: f64,
        hi: f64,
        branch: Branch,
    },
    #[error("no admissible (V, W) at S = {0}")]
    NoRoots(f64),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

impl SolveError {
    pub fn is_numerical(&self) -> bool {
        match self {
            SolveError::OutOfInterval { .. } => false,
            SolveError::NoRoots(_) => true,
            SolveError::Metric(e) => e.is_numerical(),
            SolveError::Geometry(e) => e.is_numerical(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    #[serde(rename = "u0")]
    UZero,
    #[serde(rename = "u1")]
    UNonzero,
}

impl Branch {
    /// Open interval of admissible `S`.
    pub fn interval(self) -> (f64, f64) {
        match self {
            Branch::UZero => (1.0, 9.0),
            Branch::UNonzero => (1.0 / 3.0, (7.0 - 17f64.sqrt()) / 2.0),
        }
    }

    pub fn contains(self, s: f64) -> bool {
        let (lo, hi) = self.interval();
        s > lo && s < hi
    }

    fn check(self, s: f64) -> Result<(), SolveError> {
        if self.contains(s) {
            Ok(())
        } else {
            let (lo, hi) = self.interval();
            Err(SolveError::OutOfInterval {
                s,
                lo,
                hi,
                branch: self,
            })
        }
    }
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Branch::UZero => "u0",
            Branch::UNonzero => "u1",
        })
    }
}

impl std::str::FromStr for Branch {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "u0" | "u-zero" => Ok(Branch::UZero),
            "u1" | "u-nonzero" => Ok(Branch::UNonzero),
            other => Err(format!("unknown branch {other:?}, expected u0 or u1")),
        }
    }
}

/// `P(S)` on the `u = 0` branch.
pub fn u0_product(s: f64) -> f64 {
    (-s * s + 10.0 * s - 9.0) / 8.0
}

/// `S² − 4P(S)` on the `u = 0` branch.
pub fn u0_discriminant(s: f64) -> f64 {
    (3.0 * s * s - 10.0 * s + 9.0) / 2.0
}

/// `P(S)` on the `u ≠ 0` branch.
pub fn u1_product(s: f64) -> f64 {
    -s * (s - 4.0) * (3.0 * s - 1.0) / (8.0 * (8.0 - 3.0 * s))
}

/// `S² − 4P(S)` on the `u ≠ 0` branch.
pub fn u1_discriminant(s: f64) -> f64 {
    s * (-3.0 * s * s + 3.0 * s + 4.0) / (2.0 * (8.0 - 3.0 * s))
}

/// `u²/t⁴` on the `u ≠ 0` branch.
pub fn u1_usq(s: f64) -> f64 {
    4.0 * (8.0 - 7.0 * s + s * s) / (8.0 - 3.0 * s)
}

/// `P(S)` for the given branch.
pub fn branch_product(branch: Branch, s: f64) -> f64 {
    match branch {
        Branch::UZero => u0_product(s),
        Branch::UNonzero => u1_product(s),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residuals {
    /// Max `|L|` over all frame triples.
    pub ledger: f64,
    /// Max absolute value of the four reduced Ledger equations.
    pub star: f64,
    /// Frame orthonormality residual.
    pub gram: f64,
}

/// One metric satisfying the first Ledger condition, normalized to `t = 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LedgerSolution {
    pub branch: Branch,
    #[serde(rename = "S")]
    pub s: f64,
    #[serde(rename = "V")]
    pub v_ratio: f64,
    #[serde(rename = "W")]
    pub w_ratio: f64,
    #[serde(rename = "Usq")]
    pub usq: f64,
    pub params: MetricParams,
    pub residuals: Residuals,
    pub naturally_reductive: bool,
}

impl LedgerSolution {
    /// Builds a solution record from normalized variables and evaluates its residuals.
    pub fn from_ratios(
        branch: Branch,
        s: f64,
        v_ratio: f64,
        w_ratio: f64,
        u: f64,
        tol: f64,
    ) -> Result<Self, SolveError> {
        let params = MetricParams::new(1.0, u, v_ratio.sqrt(), w_ratio.sqrt())?;
        let geo = Geometry::so5(&params)?;
        let residuals = residuals_of(&geo, &params)?;
        Ok(Self {
            branch,
            s,
            v_ratio,
            w_ratio,
            usq: u * u,
            params,
            residuals,
            naturally_reductive: nr_from_geometry(&geo, tol).naturally_reductive,
        })
    }
}

fn residuals_of(geo: &Geometry, p: &MetricParams) -> Result<Residuals, SolveError> {
    let alg = crate::so5::build_so5();
    let form = crate::metric::build_form(p)?;
    let frame = crate::metric::orthonormal_frame(p)?;
    let star = star_from_geometry(geo, p)?;
    Ok(Residuals {
        ledger: geo.max_ledger().value,
        star: star.iter().fold(0.0f64, |m, x| m.max(x.abs())),
        gram: frame.gram_residual(&alg, &form),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NaturalReductivity {
    pub naturally_reductive: bool,
    /// `max |⟨U(Eᵢ,Eⱼ), Eₖ⟩|` over frame triples.
    pub max_u: f64,
    /// Frame indices `(i, j, k)` attaining `max_u` when not naturally reductive.
    pub witness: Option<[usize; 3]>,
}

fn nr_from_geometry(geo: &Geometry, tol: f64) -> NaturalReductivity {
    let n = geo.dim();
    let table = geo.u_table();
    let mut max_u: f64 = 0.0;
    let mut at = [0, 0, 0];
    for i in 0..n {
        for j in i..n {
            for k in 0..n {
                let x = table.get(i, j, k).abs();
                if x > max_u {
                    max_u = x;
                    at = [i, j, k];
                }
            }
        }
    }
    let naturally_reductive = max_u <= tol;
    NaturalReductivity {
        naturally_reductive,
        max_u,
        witness: (!naturally_reductive).then_some(at),
    }
}

/// Naturally reductive iff `U ≡ 0` on the frame (to within `tol`).
pub fn is_naturally_reductive(
    p: &MetricParams,
    tol: f64,
) -> Result<NaturalReductivity, GeometryError> {
    Ok(nr_from_geometry(&Geometry::so5(p)?, tol))
}

/// The closed-form criterion `u = 0` and `t² = v² = w²`.
pub fn closed_form_naturally_reductive(p: &MetricParams, tol: f64) -> bool {
    let t2 = p.t() * p.t();
    p.u().abs() <= tol && (t2 - p.v() * p.v()).abs() <= tol && (t2 - p.w() * p.w()).abs() <= tol
}

/// Kernel of the infinitesimal-isometry system.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsometrySpace {
    pub dim: usize,
    /// Orthonormal basis of the kernel in frame coordinates.
    pub basis: Vec<Vec<f64>>,
    pub singular_values: Vec<f64>,
}

/// Solves `B([X,Y]_m, Z) + B(Y, [X,Z]_m) = 0` for all frame `Y, Z`.
///
/// Singular values at or below `tol · max(σ_max, 1)` count as zero.
pub fn isometries_of(geo: &Geometry, tol: f64) -> IsometrySpace {
    let n = geo.dim();
    let br = geo.bracket_table();
    let a = DMatrix::from_fn(n * n, n, |row, i| {
        let (j, k) = (row / n, row % n);
        br.get(i, j, k) + br.get(i, k, j)
    });
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    let cutoff = tol * sv.iter().fold(1.0f64, |m, &x| m.max(x));
    let basis: Vec<Vec<f64>> = sv
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= cutoff)
        .map(|(r, _)| v_t.row(r).iter().copied().collect())
        .collect();
    IsometrySpace {
        dim: basis.len(),
        basis,
        singular_values: sv,
    }
}

pub fn infinitesimal_isometries(
    p: &MetricParams,
    tol: f64,
) -> Result<IsometrySpace, GeometryError> {
    Ok(isometries_of(&Geometry::so5(p)?, tol))
}

fn star_from_geometry(geo: &Geometry, p: &MetricParams) -> Result<[f64; 4], MetricError> {
    let rho = geo.ricci();
    let (r11, r14, r33, r55, r77) = (
        rho[(0, 0)],
        rho[(0, 3)],
        rho[(2, 2)],
        rho[(4, 4)],
        rho[(6, 6)],
    );
    let (t, u, v, w) = (p.t(), p.u(), p.v(), p.w());
    let k = p.k()?;
    let (t2, v2, w2, k2) = (t * t, v * v, w * w, k * k);
    Ok([
        (v2 - w2) * r11 + (w2 - t2) * r55 + (t2 - v2) * r77 + u * (w2 - v2) / (2.0 * t * k) * r14,
        -u / (2.0 * t) * r55 + u / (2.0 * t) * r77 + (v2 - w2) / k * r14,
        u * (v2 - w2) / (2.0 * t * v * w * k) * r33 + u * w / (2.0 * t * v * k) * r55
            - (v2 - w2) / (v * w) * r14
            - u * v / (2.0 * t * w * k) * r77,
        (v2 - w2) * r33 + (w2 - k2) * r55 + (k2 - v2) * r77,
    ])
}

/// Left-hand sides of the four reduced Ledger equations, evaluated with the
/// computed Ricci entries.
pub fn eval_star_system(p: &MetricParams) -> Result<[f64; 4], GeometryError> {
    let geo = Geometry::so5(p)?;
    Ok(star_from_geometry(&geo, p)?)
}

/// Both orderings `(V, W) = (X₁, X₂)` and `(X₂, X₁)` for `S ∈ (1, 9)`.
pub fn solve_ledger_u0(s: f64, tol: f64) -> Result<[LedgerSolution; 2], SolveError> {
    Branch::UZero.check(s)?;
    let root = u0_discriminant(s).sqrt();
    let (x1, x2) = ((s - root) / 2.0, (s + root) / 2.0);
    if !(x1 > 0.0 && x2 > 0.0) {
        return Err(SolveError::NoRoots(s));
    }
    Ok([
        LedgerSolution::from_ratios(Branch::UZero, s, x1, x2, 0.0, tol)?,
        LedgerSolution::from_ratios(Branch::UZero, s, x2, x1, 0.0, tol)?,
    ])
}

/// The four solutions (both orderings of `V, W`, both signs of `u`) for
/// `S ∈ (1/3, (7−√17)/2)`.
pub fn solve_ledger_unonzero(s: f64, tol: f64) -> Result<Vec<LedgerSolution>, SolveError> {
    Branch::UNonzero.check(s)?;
    let delta = u1_discriminant(s);
    let usq = u1_usq(s);
    if !(delta >= 0.0) || !(usq > 0.0) {
        return Err(SolveError::NoRoots(s));
    }
    let root = delta.sqrt();
    let (big, small) = ((s + root) / 2.0, (s - root) / 2.0);
    if !(small > 0.0) {
        return Err(SolveError::NoRoots(s));
    }
    let u = usq.sqrt();
    let mut out = Vec::with_capacity(4);
    for (v_ratio, w_ratio) in [(big, small), (small, big)] {
        for sign in [1.0, -1.0] {
            out.push(LedgerSolution::from_ratios(
                Branch::UNonzero,
                s,
                v_ratio,
                w_ratio,
                sign * u,
                tol,
            )?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub pass: bool,
    pub ledger: f64,
    pub ledger_triple: [usize; 3],
    pub star: [f64; 4],
    pub gram: f64,
    /// Largest deviation of `(V, W, Usq)` from the branch relations and from the stored params.
    pub family: f64,
    pub naturally_reductive: bool,
    pub expected_naturally_reductive: bool,
}

/// Recomputes every residual of `sol` from its parameters.
pub fn verify_solution(sol: &LedgerSolution, tol: f64) -> Result<VerificationReport, SolveError> {
    let p = sol.params;
    let geo = Geometry::so5(&p)?;
    let ledger = geo.max_ledger();
    let star = star_from_geometry(&geo, &p)?;
    let r = residuals_of(&geo, &p)?;
    let nr = nr_from_geometry(&geo, tol).naturally_reductive;

    let t2 = p.t() * p.t();
    let mut family = [
        sol.v_ratio + sol.w_ratio - sol.s,
        sol.v_ratio * sol.w_ratio - branch_product(sol.branch, sol.s),
        p.v() * p.v() / t2 - sol.v_ratio,
        p.w() * p.w() / t2 - sol.w_ratio,
        p.u() * p.u() / (t2 * t2) - sol.usq,
    ]
    .iter()
    .fold(0.0f64, |m, x| m.max(x.abs()));
    let mut admissible = sol.v_ratio > 0.0 && sol.w_ratio > 0.0;
    match sol.branch {
        Branch::UZero => family = family.max(sol.usq.abs()),
        Branch::UNonzero => {
            family = family.max((sol.usq - u1_usq(sol.s)).abs());
            admissible &= sol.usq > 0.0 && sol.usq < 16.0;
        }
    }

    let expected_nr = sol.branch == Branch::UZero
        && (sol.v_ratio - 1.0).abs() <= tol
        && (sol.w_ratio - 1.0).abs() <= tol;
    let star_max = star.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let worst = ledger.value.max(star_max).max(family);
    Ok(VerificationReport {
        pass: admissible && worst <= tol && nr == expected_nr,
        ledger: ledger.value,
        ledger_triple: ledger.triple,
        star,
        gram: r.gram,
        family,
        naturally_reductive: nr,
        expected_naturally_reductive: expected_nr,
    })
}
