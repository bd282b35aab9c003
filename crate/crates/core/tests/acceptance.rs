//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Every expected value here is transcribed independently of the library:
//! bracket and U tables, Ricci entries, the branch relations and the
//! isometry case table are written out as closed forms in this file.

#![allow(clippy::needless_range_loop)]

use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zksym::analysis::{
    infinitesimal_isometries, is_naturally_reductive, solve_ledger_u0, solve_ledger_unonzero,
};
use zksym::{build_so5, Geometry, MetricParams};

const N: usize = 8;
const SEED: u64 = 0x5eed_2024;

type Tensor = [[[f64; N]; N]; N];
type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn draw(rng: &mut ChaCha8Rng) -> MetricParams {
    loop {
        let t: f64 = rng.gen_range(0.5..2.0);
        let v: f64 = rng.gen_range(0.5..2.0);
        let w: f64 = rng.gen_range(0.5..2.0);
        let u: f64 = rng.gen_range(-4.0 * t * t..4.0 * t * t);
        let k2 = t * t - u * u / (4.0 * t * t);
        if k2 >= 0.01 {
            return MetricParams::new(t, u, v, w).unwrap();
        }
    }
}

fn k_of(p: &MetricParams) -> f64 {
    (p.t() * p.t() - p.u() * p.u() / (4.0 * p.t() * p.t())).sqrt()
}

// Frame order A1~ A2~ A3~ A4~ B1~ B2~ C1~ C2~.
const A1: usize = 0;
const A2: usize = 1;
const A3: usize = 2;
const A4: usize = 3;
const B1: usize = 4;
const B2: usize = 5;
const C1: usize = 6;
const C2: usize = 7;

/// Reference bracket table `[Ẽi, Ẽj]_m`, upper triangle, extended by antisymmetry.
fn reference_brackets(p: &MetricParams) -> Tensor {
    let (t, u, v, w, k) = (p.t(), p.u(), p.v(), p.w(), k_of(p));
    let t2 = t * t;
    let mut c = [[[0.0; N]; N]; N];
    let mut set = |i: usize, j: usize, l: usize, x: f64| {
        c[i][j][l] = x;
        c[j][i][l] = -x;
    };
    set(A1, B1, C1, -w / (t * v));
    set(A1, C1, B1, v / (t * w));
    set(A2, B1, C2, -w / (t * v));
    set(A2, C2, B1, v / (t * w));
    set(A3, B1, C2, -u * w / (2.0 * t2 * v * k));
    set(A3, B2, C1, -w / (k * v));
    set(A3, C1, B2, v / (k * w));
    set(A3, C2, B1, u * v / (2.0 * t2 * w * k));
    set(A4, B1, C1, u * w / (2.0 * t2 * v * k));
    set(A4, B2, C2, -w / (k * v));
    set(A4, C1, B1, -u * v / (2.0 * t2 * w * k));
    set(A4, C2, B2, v / (k * w));
    set(B1, C1, A1, -t / (v * w));
    set(B1, C2, A2, -t / (v * w));
    set(B2, C1, A2, u / (2.0 * v * w * t));
    set(B2, C1, A3, -k / (v * w));
    set(B2, C2, A1, -u / (2.0 * v * w * t));
    set(B2, C2, A4, -k / (v * w));
    c
}

/// Reference U table, upper triangle, extended by symmetry. The two entries
/// in the (B̃1, C̃1) and (B̃1, C̃2) cells carrying `u(v²−w²)/(4t²vwK)` are
/// are listed in `ERRATA` and tested against both signs.
fn reference_u(p: &MetricParams) -> Tensor {
    let (t, u, v, w, k) = (p.t(), p.u(), p.v(), p.w(), k_of(p));
    let (t2, v2, w2, k2) = (t * t, v * v, w * w, k * k);
    let mut c = [[[0.0; N]; N]; N];
    let mut set = |i: usize, j: usize, l: usize, x: f64| {
        c[i][j][l] = x;
        c[j][i][l] = x;
    };
    set(A1, B1, C1, (t2 - v2) / (2.0 * t * v * w));
    set(A1, B2, C2, u / (4.0 * v * w * t));
    set(A1, C1, B1, (-t2 + w2) / (2.0 * t * v * w));
    set(A1, C2, B2, -u / (4.0 * v * w * t));
    set(A2, B1, C2, (t2 - v2) / (2.0 * t * v * w));
    set(A2, B2, C1, -u / (4.0 * v * w * t));
    set(A2, C1, B2, u / (4.0 * v * w * t));
    set(A2, C2, B1, (-t2 + w2) / (2.0 * t * v * w));
    set(A3, B1, C2, -u * v / (4.0 * t2 * w * k));
    set(A3, B2, C1, (k2 - v2) / (2.0 * k * v * w));
    set(A3, C1, B2, (-k2 + w2) / (2.0 * k * v * w));
    set(A3, C2, B1, u * w / (4.0 * t2 * v * k));
    set(A4, B1, C1, u * v / (4.0 * t2 * w * k));
    set(A4, B2, C2, (k2 - v2) / (2.0 * k * v * w));
    set(A4, C1, B1, -u * w / (4.0 * t2 * v * k));
    set(A4, C2, B2, (-k2 + w2) / (2.0 * k * v * w));
    set(B1, C1, A1, (v2 - w2) / (2.0 * v * w * t));
    set(B1, C1, A4, u * (v2 - w2) / (4.0 * t2 * v * w * k));
    set(B1, C2, A2, (v2 - w2) / (2.0 * v * w * t));
    set(B1, C2, A3, -u * (v2 - w2) / (4.0 * t2 * v * w * k));
    set(B2, C1, A3, (v2 - w2) / (2.0 * v * w * k));
    set(B2, C2, A4, (v2 - w2) / (2.0 * v * w * k));
    c
}

/// Reference cells whose sign contradicts the defining equation of U.
const ERRATA: [(usize, usize, usize); 2] = [(B1, C1, A4), (B1, C2, A3)];

/// U from a bracket table in an orthonormal frame:
/// `2⟨U(X,Y),Z⟩ = ⟨X,[Z,Y]⟩ + ⟨[Z,X],Y⟩`.
fn u_from_brackets(c: &Tensor) -> Tensor {
    let mut u = [[[0.0; N]; N]; N];
    for x in 0..N {
        for y in 0..N {
            for z in 0..N {
                u[x][y][z] = 0.5 * (c[z][y][x] + c[z][x][y]);
            }
        }
    }
    u
}

fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

/// Worst mismatch of a computed table against an expected tensor: relative
/// error on expected nonzeros, absolute size of unexpected entries.
fn compare(
    get: impl Fn(usize, usize, usize) -> f64,
    want: &Tensor,
    skip: &[(usize, usize, usize)],
) -> (f64, f64) {
    let (mut rel, mut off) = (0.0f64, 0.0f64);
    for i in 0..N {
        for j in 0..N {
            for l in 0..N {
                let skipped = skip
                    .iter()
                    .any(|&(a, b, c)| c == l && ((a, b) == (i, j) || (b, a) == (i, j)));
                if skipped {
                    continue;
                }
                let g = get(i, j, l);
                if want[i][j][l] != 0.0 {
                    rel = rel.max(rel_err(g, want[i][j][l]));
                } else {
                    off = off.max(g.abs());
                }
            }
        }
    }
    (rel, off)
}

fn criterion_1() -> Outcome {
    let alg = build_so5();
    let report = alg.validate(0.0);
    let integer = (0..10).all(|i| {
        (0..10).all(|j| {
            (0..10).all(|k| {
                let c = alg.constant(i, j, k);
                c == c.round() && c.abs() <= 1.0
            })
        })
    });
    outcome(
        report.is_valid() && integer && report.max_jacobi_residual == 0.0,
        format!(
            "antisymmetry {} / jacobi {} / grading {} violations, integer constants {integer}",
            report.antisymmetry.len(),
            report.jacobi.len(),
            report.grading.len()
        ),
    )
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 2);
    let (mut br_rel, mut br_off, mut u_rel, mut u_off) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let (mut derived_rel, mut errata_rel, mut reference_sign_err) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..20 {
        let p = draw(&mut rng);
        let geo = Geometry::so5(&p).unwrap();
        let br = reference_brackets(&p);
        let (r, o) = compare(|i, j, k| geo.bracket_table().get(i, j, k), &br, &[]);
        br_rel = br_rel.max(r);
        br_off = br_off.max(o);

        let reference = reference_u(&p);
        let (r, o) = compare(|i, j, k| geo.u_table().get(i, j, k), &reference, &ERRATA);
        u_rel = u_rel.max(r);
        u_off = u_off.max(o);

        // The full U table implied by the reference brackets, errata included.
        let derived = u_from_brackets(&br);
        let (r, o) = compare(|i, j, k| geo.u_table().get(i, j, k), &derived, &[]);
        derived_rel = derived_rel.max(r);
        u_off = u_off.max(o);

        for &(i, j, l) in &ERRATA {
            let got = geo.u_table().get(i, j, l);
            errata_rel = errata_rel.max(rel_err(got, -reference[i][j][l]));
            reference_sign_err = reference_sign_err.max(rel_err(got, reference[i][j][l]));
            errata_rel = errata_rel.max(rel_err(derived[i][j][l], -reference[i][j][l]));
        }
    }
    println!(
        "  note: U(B1~,C1~).A4~ and U(B1~,C2~).A3~ in the reference table have the opposite sign to the value forced by \
         the reference bracket table (reference-sign relative error {reference_sign_err:.1}); checked against the forced sign"
    );
    let pass = br_rel < 1e-12
        && br_off < 1e-12
        && u_rel < 1e-12
        && u_off < 1e-12
        && derived_rel < 1e-12
        && errata_rel < 1e-12;
    outcome(
        pass,
        format!(
            "brackets rel {br_rel:.1e} off {br_off:.1e}; U rel {u_rel:.1e} (20 reference cells), forced-sign cells {errata_rel:.1e}, \
             U vs bracket-derived {derived_rel:.1e}, off-pattern {u_off:.1e}"
        ),
    )
}

/// Reference `[ρ11, ρ14, ρ33, ρ55, ρ77]`.
fn reference_ricci(p: &MetricParams) -> [f64; 5] {
    let (t, u, v, w, k) = (p.t(), p.u(), p.v(), p.w(), k_of(p));
    let (t2, u2, v2, w2) = (t * t, u * u, v * v, w * w);
    let t4 = t2 * t2;
    let q = v2 * v2 - 6.0 * v2 * w2 + w2 * w2;
    let d = 4.0 * t4 - u2;
    [
        (4.0 * t4 + u2 - 4.0 * q) / (8.0 * t2 * v2 * w2),
        u * (k * k * t2 + q) / (4.0 * k * t2 * t * v2 * w2),
        (d * d - 4.0 * q * (u2 + 4.0 * t4)) / (8.0 * t2 * d * v2 * w2),
        (-4.0 * t4 * t2 + 12.0 * t4 * w2 + t2 * (u2 + 4.0 * v2 * v2 - 4.0 * w2 * w2)
            - 3.0 * u2 * w2)
            / (d * v2 * w2),
        (-4.0 * t4 * t2 + 12.0 * t4 * v2 + t2 * (u2 - 4.0 * v2 * v2 + 4.0 * w2 * w2)
            - 3.0 * u2 * v2)
            / (d * v2 * w2),
    ]
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
    let (mut rel, mut off, mut pattern) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..100 {
        let p = draw(&mut rng);
        let rho = Geometry::so5(&p).unwrap().ricci().clone();
        let [r11, r14, r33, r55, r77] = reference_ricci(&p);
        let mut want = [[0.0; N]; N];
        for (i, x) in [
            (0, r11),
            (1, r11),
            (2, r33),
            (3, r33),
            (4, r55),
            (5, r55),
            (6, r77),
            (7, r77),
        ] {
            want[i][i] = x;
        }
        want[0][3] = r14;
        want[3][0] = r14;
        want[1][2] = -r14;
        want[2][1] = -r14;
        for i in 0..N {
            for j in 0..N {
                if want[i][j] != 0.0 {
                    // ρ14 vanishes with u; measure it against max(|ρ14|, 1).
                    rel = rel.max((rho[(i, j)] - want[i][j]).abs() / want[i][j].abs().max(1.0));
                    pattern = pattern.max((rho[(i, j)] - rho[(j, i)]).abs());
                } else {
                    off = off.max(rho[(i, j)].abs());
                }
            }
        }
    }
    outcome(
        rel < 1e-9 && off < 1e-10 && pattern < 1e-10,
        format!("max relative error {rel:.1e}, max off-pattern {off:.1e}, asymmetry {pattern:.1e}"),
    )
}

fn criterion_4() -> Outcome {
    let tol = 1e-9;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 4);
    let mut mismatches = 0;
    let mut nr_count = 0;
    for _ in 0..500 {
        let t: f64 = rng.gen_range(0.5..2.0);
        let u = if rng.gen_bool(0.5) {
            0.0
        } else {
            rng.gen_range(-1.9..1.9) * t * t
        };
        let v = if rng.gen_bool(0.5) {
            t
        } else {
            rng.gen_range(0.5..2.0)
        };
        let w = if rng.gen_bool(0.5) {
            t
        } else {
            rng.gen_range(0.5..2.0)
        };
        let p = MetricParams::new(t, u, v, w).unwrap();
        let closed = u.abs() <= tol && (t * t - v * v).abs() <= tol && (t * t - w * w).abs() <= tol;
        let got = is_naturally_reductive(&p, tol).unwrap().naturally_reductive;
        nr_count += usize::from(closed);
        mismatches += usize::from(got != closed);
    }
    let named = [
        ((1.0, 0.0, 1.0, 1.0), true),
        ((1.0, 0.0, 1.0, 2.0), false),
        ((1.0, 0.5, 1.0, 1.0), false),
    ];
    let named_ok = named.iter().all(|&((t, u, v, w), want)| {
        let p = MetricParams::new(t, u, v, w).unwrap();
        is_naturally_reductive(&p, tol).unwrap().naturally_reductive == want
    });
    outcome(
        mismatches == 0 && named_ok,
        format!("{mismatches} mismatches in 500 points ({nr_count} naturally reductive), named examples ok {named_ok}"),
    )
}

fn unit(i: usize) -> Vec<f64> {
    let mut e = vec![0.0; N];
    e[i] = 1.0;
    e
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let (mut torsion, mut compat, mut anti, mut skew, mut bianchi) =
        (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let e: Vec<Vec<f64>> = (0..N).map(unit).collect();
    for _ in 0..20 {
        let geo = Geometry::so5(&draw(&mut rng)).unwrap();
        for x in 0..N {
            for y in 0..N {
                let lhs: Vec<f64> = geo
                    .nabla(&e[x], &e[y])
                    .iter()
                    .zip(geo.nabla(&e[y], &e[x]))
                    .zip(geo.bracket_m(&e[x], &e[y]))
                    .map(|((a, b), c)| a - b - c)
                    .collect();
                torsion = lhs.iter().fold(torsion, |m, r| m.max(r.abs()));
                for z in 0..N {
                    let c =
                        dot(&geo.nabla(&e[x], &e[y]), &e[z]) + dot(&e[y], &geo.nabla(&e[x], &e[z]));
                    compat = compat.max(c.abs());
                    let rxy = geo.curvature(&e[x], &e[y], &e[z]);
                    let ryx = geo.curvature(&e[y], &e[x], &e[z]);
                    anti = rxy
                        .iter()
                        .zip(&ryx)
                        .fold(anti, |m, (a, b)| m.max((a + b).abs()));
                    let ryz = geo.curvature(&e[y], &e[z], &e[x]);
                    let rzx = geo.curvature(&e[z], &e[x], &e[y]);
                    for l in 0..N {
                        bianchi = bianchi.max((rxy[l] + ryz[l] + rzx[l]).abs());
                        let s = dot(&rxy, &e[l]) + dot(&e[z], &geo.curvature(&e[x], &e[y], &e[l]));
                        skew = skew.max(s.abs());
                    }
                }
            }
        }
    }
    outcome(
        torsion < 1e-10 && compat < 1e-10 && anti < 1e-9 && skew < 1e-9 && bianchi < 1e-9,
        format!(
            "torsion {torsion:.1e}, compatibility {compat:.1e}, antisymmetry {anti:.1e}, skew-adjointness {skew:.1e}, Bianchi {bianchi:.1e}"
        ),
    )
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * (i + 1) as f64 / (n + 1) as f64)
        .collect()
}

fn criterion_6() -> Outcome {
    let (mut ledger, mut product, mut neg) = (0.0f64, 0.0f64, 0usize);
    for s in grid(1.0, 9.0, 50) {
        let p_formula = (-s * s + 10.0 * s - 9.0) / 8.0;
        for sol in solve_ledger_u0(s, 1e-8).unwrap() {
            let geo = Geometry::so5(&sol.params).unwrap();
            ledger = ledger.max(geo.max_ledger().value);
            product = product.max((sol.v_ratio * sol.w_ratio - p_formula).abs());
            neg += usize::from(!(sol.v_ratio > 0.0 && sol.w_ratio > 0.0));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    let mut b1 = 0.0f64;
    for _ in 0..50 {
        let p = draw(&mut rng);
        let p = MetricParams::new(p.t(), p.u(), p.v(), p.v()).unwrap();
        b1 = b1.max(Geometry::so5(&p).unwrap().max_ledger().value);
    }
    outcome(
        ledger < 1e-8 && product < 1e-12 && neg == 0 && b1 < 1e-10,
        format!("B2/B3 max |L| {ledger:.1e}, |X1X2 - P| {product:.1e}; v = w with random u: max |L| {b1:.1e}"),
    )
}

fn criterion_7() -> Outcome {
    let hi = (7.0 - 17f64.sqrt()) / 2.0;
    let (mut eq1, mut eq2, mut ledger) = (0.0f64, 0.0f64, 0.0f64);
    let (mut usq_bad, mut nr_true, mut count) = (0usize, 0usize, 0usize);
    for s in grid(1.0 / 3.0, hi, 50) {
        for sol in solve_ledger_unonzero(s, 1e-8).unwrap() {
            count += 1;
            let p = sol.v_ratio * sol.w_ratio;
            let us = sol.params.u() * sol.params.u() / sol.params.t().powi(4);
            eq1 =
                eq1.max((64.0 * p - 24.0 * p * s + 4.0 * s - 13.0 * s * s + 3.0 * s.powi(3)).abs());
            eq2 = eq2.max((7.0 * us - (28.0 - 16.0 * s + 4.0 * (s * s - 8.0 * p))).abs());
            let geo = Geometry::so5(&sol.params).unwrap();
            ledger = ledger.max(geo.max_ledger().value);
            usq_bad += usize::from(!(us > 0.0 && us < 16.0));
            nr_true += usize::from(
                is_naturally_reductive(&sol.params, 1e-9)
                    .unwrap()
                    .naturally_reductive,
            );
        }
    }
    outcome(
        eq1 < 1e-12 && eq2 < 1e-12 && ledger < 1e-8 && usq_bad == 0 && nr_true == 0 && count == 200,
        format!(
            "{count} solutions: eq1 {eq1:.1e}, eq2 {eq2:.1e}, max |L| {ledger:.1e}, Usq out of (0,16) {usq_bad}, naturally reductive {nr_true}"
        ),
    )
}

/// Kernel dimension from the case table for infinitesimal isometries.
fn isometry_case(t: f64, u: f64, v: f64, w: f64) -> usize {
    let (t2, v2, w2) = (t * t, v * v, w * w);
    if u == 0.0 {
        match (t2 == v2, t2 == w2, v2 == w2) {
            (true, true, _) => 8,
            (true, false, _) | (false, true, _) => 2,
            (false, false, true) => 4,
            (false, false, false) => 0,
        }
    } else if v2 == w2 {
        4
    } else {
        0
    }
}

fn criterion_8() -> Outcome {
    let mut wrong = Vec::new();
    let mut cases = std::collections::BTreeSet::new();
    let mut total = 0;
    for t in [1.0, 1.3] {
        for u in [0.0, 0.4 * t * t, -0.9 * t * t] {
            for v in [t, 0.6, 1.7] {
                for w in [t, 0.6, 1.7] {
                    let want = isometry_case(t, u, v, w);
                    let got =
                        infinitesimal_isometries(&MetricParams::new(t, u, v, w).unwrap(), 1e-9)
                            .unwrap()
                            .dim;
                    cases.insert((u == 0.0, want));
                    total += 1;
                    if got != want {
                        wrong.push(format!("({t},{u},{v},{w}): {got} != {want}"));
                    }
                }
            }
        }
    }
    outcome(
        wrong.is_empty() && cases.len() == 6,
        format!(
            "{total} points, {} distinct cases, mismatches {wrong:?}",
            cases.len()
        ),
    )
}

fn exit_code(args: &[String]) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_zksym"))
        .args(args)
        .output()
        .expect("binary runs")
        .status
        .code()
        .unwrap_or(-1)
}

fn metric_args(cmd: &str, t: f64, u: f64) -> Vec<String> {
    [
        cmd,
        "--t",
        &format!("{t:?}"),
        "--u",
        &format!("{u:?}"),
        "--v",
        "1",
        "--w",
        "1.5",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

fn solve_args(branch: &str, s: f64) -> Vec<String> {
    ["solve", "--branch", branch, "--S", &format!("{s:?}")]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

fn criterion_9() -> Outcome {
    let mut checks: Vec<(String, Vec<String>, i32)> = Vec::new();
    for t in [1.0, 1.5] {
        let bound = 4.0 * t * t;
        for sign in [1.0, -1.0] {
            for cmd in ["ricci", "ledger"] {
                checks.push((
                    format!(
                        "{cmd} u = {}4t^2 (t={t})",
                        if sign > 0.0 { "+" } else { "-" }
                    ),
                    metric_args(cmd, t, sign * bound),
                    1,
                ));
            }
            let near = sign * bound * (1.0 - 1e-9);
            checks.push((
                format!("ricci |u| = 4t^2(1-1e-9) (t={t}, sign {sign})"),
                metric_args("ricci", t, near),
                2,
            ));
            checks.push((
                format!("tables |u| = 4t^2(1-1e-9) (t={t}, sign {sign})"),
                metric_args("tables", t, near),
                2,
            ));
        }
    }
    let hi = (7.0 - 17f64.sqrt()) / 2.0;
    for (branch, s) in [("u0", 1.0), ("u0", 9.0), ("u1", 1.0 / 3.0), ("u1", hi)] {
        checks.push((format!("solve {branch} S={s}"), solve_args(branch, s), 1));
    }
    let failed: Vec<String> = checks
        .iter()
        .filter_map(|(name, args, want)| {
            let got = exit_code(args);
            (got != *want).then(|| format!("{name}: exit {got}, expected {want}"))
        })
        .collect();
    outcome(
        failed.is_empty(),
        format!("{} boundary checks, failures {failed:?}", checks.len()),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("algebra validity", criterion_1),
        ("table reproduction", criterion_2),
        ("Ricci closed forms", criterion_3),
        ("naturally-reductive equivalence", criterion_4),
        ("connection properties", criterion_5),
        ("Ledger u = 0 branch", criterion_6),
        ("Ledger u != 0 branch", criterion_7),
        ("isometry dimensions", criterion_8),
        ("boundary behavior", criterion_9),
    ];
    let mut failures = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let result = run();
        let status = if result.pass { "PASS" } else { "FAIL" };
        failures += usize::from(!result.pass);
        println!(
            "criterion {} [{status}] {name}: {} ({:.2}s)",
            n + 1,
            result.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
