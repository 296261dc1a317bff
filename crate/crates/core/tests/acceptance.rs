//! Acceptance gate: nine externally pinned checks, each printing exactly one
//! PASS/FAIL summary line (run with `--nocapture` to see all of them).
//! Every sub-part is evaluated before the verdict so a red line still reports
//! the full set of measured values.

use std::time::Instant;

use gbec_core::bose::{bose_fn, coth_band_sum};
use gbec_core::channel::{
    central_density_scaling, condensate_fraction_channel, per_state_fraction_channel,
    solve_gamma_channel,
};
use gbec_core::cigar::{
    bz_gamma_from_delta, bz_geometry, fg_self_consistent, fg_tl_limit, k_parameter, t1_bz,
    t1_first_iterate, t1_from_curve, t1_standard,
};
use gbec_core::general_box::{
    classify, cutoff_diagnostics, solve_gamma_type2, solve_gamma_type3, BoxExponents, GbecKind,
};
use gbec_core::isotropic::critical_temperature_iso;
use gbec_core::oracle::{solve_alpha_exact, OracleGeometry, OracleSolution, SpectrumSpec};
use gbec_core::prism::{alpha_prism, band_fraction_prism, max_fraction_scaling, PrismConfig};

fn rel(value: f64, reference: f64) -> f64 {
    (value - reference).abs() / reference.abs()
}

/// Append the runtime check, print the one-line verdict, fail on any red part.
fn report(name: &str, budget_s: f64, started: Instant, mut parts: Vec<(bool, String)>) {
    let elapsed = started.elapsed().as_secs_f64();
    parts.push((
        elapsed < budget_s,
        format!("runtime {elapsed:.2}s (budget {budget_s}s)"),
    ));
    let failed: Vec<String> = parts
        .iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, d)| d.clone())
        .collect();
    let verdict = if failed.is_empty() { "PASS" } else { "FAIL" };
    let detail: Vec<&str> = parts.iter().map(|(_, d)| d.as_str()).collect();
    println!("{name}: {verdict} — {}", detail.join("; "));
    assert!(failed.is_empty(), "{name}: {}", failed.join("; "));
}

/// ζ(n) through the alternating series Σ(−1)^{l+1}l^{−n} = (1−2^{1−n})ζ(n),
/// Euler-accelerated — independent of the library's own tail-corrected sum.
fn zeta_alternating(n: f64) -> f64 {
    let m = 80;
    let mut partial = Vec::with_capacity(m);
    let mut s = 0.0;
    for l in 1..=m {
        let term = (l as f64).powf(-n);
        s += if l % 2 == 1 { term } else { -term };
        partial.push(s);
    }
    while partial.len() > 1 {
        for i in 0..partial.len() - 1 {
            partial[i] = 0.5 * (partial[i] + partial[i + 1]);
        }
        partial.pop();
    }
    partial[0] / (1.0 - (2.0f64).powf(1.0 - n))
}

#[test]
fn criterion_1_bose_limits() {
    let started = Instant::now();
    let f3 = bose_fn(3.0, 0.0).unwrap();
    let f32 = bose_fn(1.5, 0.0).unwrap();
    let z3 = zeta_alternating(3.0);
    let z32 = zeta_alternating(1.5);
    report(
        "criterion 1 (Bose-function limits)",
        1.0,
        started,
        vec![
            (
                (f3 - 1.202).abs() < 5e-4,
                format!("F_3(0) = {f3:.7} (want 1.202 ± 5e-4)"),
            ),
            (
                (f32 - 2.61).abs() < 5e-3,
                format!("F_3/2(0) = {f32:.7} (want 2.61 ± 5e-3)"),
            ),
            (
                rel(f3, z3) < 1e-9,
                format!("vs alternating-series zeta(3): rel {:.1e} (< 1e-9)", rel(f3, z3)),
            ),
            (
                rel(f32, z32) < 1e-9,
                format!(
                    "vs alternating-series zeta(3/2): rel {:.1e} (< 1e-9)",
                    rel(f32, z32)
                ),
            ),
        ],
    );
}

#[test]
fn criterion_2_condensation_scale() {
    let started = Instant::now();
    let tc = critical_temperature_iso();
    report(
        "criterion 2 (isotropic Tc/T0)",
        1.0,
        started,
        vec![(
            (tc - 0.94).abs() < 0.005,
            format!("Tc/T0 = {tc:.6} (want 0.94 ± 0.005)"),
        )],
    );
}

#[test]
fn criterion_3_two_step_benchmark() {
    let started = Instant::now();
    let k = k_parameter(1e6, 5.6e4).unwrap();
    // the quoted downstream numbers are derived from the rounded K = 6.8
    let first = t1_first_iterate(1e6, 6.8, 1.0).unwrap();
    let converged = t1_standard(1e6, 6.8, 1.0).unwrap().t1_over_tc;
    report(
        "criterion 3 (two-step benchmark, N=1e6)",
        1.0,
        started,
        vec![
            (
                (k - 6.8).abs() < 0.05,
                format!("K(1e6, 5.6e4) = {k:.4} (want 6.8 ± 0.05)"),
            ),
            (
                (first - 0.52).abs() < 0.005,
                format!("first iterate T1/Tc = {first:.4} (want 0.52 ± 0.005)"),
            ),
            (
                (converged - 0.47).abs() < 0.01,
                format!("converged T1/Tc = {converged:.4} (want 0.47 ± 0.01)"),
            ),
        ],
    );
}

#[test]
fn criterion_4_standard_limit_collapse() {
    let started = Instant::now();
    let k8 = k_parameter(1e8, 5.6e4).unwrap();
    let t1_8 = t1_standard(1e8, 147.0, 1.0).unwrap().t1_over_tc;
    let ladder: Vec<f64> = [1e6, 1e8, 1e10, 1e12]
        .iter()
        .map(|&n| {
            let k = k_parameter(n, 5.6e4).unwrap();
            t1_standard(n, k, 1.0).unwrap().t1_over_tc
        })
        .collect();
    let monotone = ladder.windows(2).all(|w| w[1] > w[0]);
    let last = *ladder.last().unwrap();
    report(
        "criterion 4 (standard-limit collapse)",
        5.0,
        started,
        vec![
            (
                (k8 - 147.0).abs() < 1.0,
                format!("K(1e8, 5.6e4) = {k8:.3} (want 147 ± 1)"),
            ),
            (
                (t1_8 - 0.961).abs() < 0.005,
                format!("T1/Tc at (1e8, K=147) = {t1_8:.4} (want 0.961 ± 0.005)"),
            ),
            (
                monotone && 1.0 - last < 1e-3,
                format!(
                    "T1(N) over N=1e6..1e12: {:?} (monotone -> 1)",
                    ladder.iter().map(|v| (v * 1e4).round() / 1e4).collect::<Vec<_>>()
                ),
            ),
        ],
    );
}

#[test]
fn criterion_5_exponential_limit() {
    let started = Instant::now();
    let (ell, gamma) = bz_gamma_from_delta(1e6, 5.6e4).unwrap();
    let t1 = t1_bz(gamma).unwrap().t1_over_tc;

    // curve-extraction stability: shoulder-fit t1 at fixed gamma, N = 1e8 vs 1e16
    let extract = |n: f64| {
        let k = bz_geometry(n, gamma).unwrap().1;
        let grid: Vec<(f64, f64)> = (0..220)
            .map(|i| {
                let t = 0.01 + i as f64 * (1.1 - 0.01) / 219.0;
                let fg = if t < 1.0 {
                    fg_self_consistent(t, n, k).unwrap().f_g
                } else {
                    0.0
                };
                (t, fg)
            })
            .collect();
        t1_from_curve(&grid).unwrap()
    };
    let t1_small = extract(1e8);
    let t1_large = extract(1e16);
    let drift = (t1_small - t1_large).abs();
    report(
        "criterion 5 (exponential limit)",
        5.0,
        started,
        vec![
            (
                (ell - 2.61).abs() < 0.01,
                format!("l_perp = {ell:.4} (want 2.61 ± 0.01)"),
            ),
            (
                (gamma - 1.60).abs() < 0.01,
                format!("gamma = {gamma:.4} (want 1.60 ± 0.01)"),
            ),
            (
                (t1 - 0.552).abs() < 0.005,
                format!("self-consistent t1 = {t1:.4} (want 0.552 ± 0.005)"),
            ),
            (
                drift < 0.01,
                format!(
                    "|t1(1e8) - t1(1e16)| = {drift:.4} at fixed gamma (want < 0.01; {t1_small:.4} vs {t1_large:.4})"
                ),
            ),
        ],
    );
}

#[test]
fn criterion_6_figure_properties() {
    let started = Instant::now();
    let mut parts = Vec::new();

    // channel per-state curves: s=0 below the condensate curve, equal in the
    // t -> 0 limit; s >= 1 curves peak in the interior
    let n_channel = 1e6;
    let grid1: Vec<f64> = (0..200).map(|i| 0.005 + i as f64 * 0.995 / 199.0).collect();
    let mut s_curves = [Vec::new(), Vec::new(), Vec::new()];
    let mut head_below = true;
    for &t in grid1.iter().filter(|&&t| t < 1.0) {
        let gamma = solve_gamma_channel(t, n_channel).unwrap();
        let f0 = condensate_fraction_channel(t).unwrap();
        for (s, curve) in s_curves.iter_mut().enumerate() {
            curve.push(per_state_fraction_channel(s as i64, gamma, t).unwrap());
        }
        head_below &= s_curves[0].last().unwrap() <= &(f0 + 1e-12);
    }
    let head_gap_at_origin = condensate_fraction_channel(grid1[0]).unwrap() - s_curves[0][0];
    let interior_max = |curve: &[f64]| {
        let peak = curve
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap()
            .0;
        peak > 0 && peak < curve.len() - 1
    };
    parts.push((
        head_below && head_gap_at_origin.abs() < 0.01,
        format!(
            "per-state curves: s=0 below f0 everywhere, gap at t=0.005 is {head_gap_at_origin:.4}"
        ),
    ));
    parts.push((
        interior_max(&s_curves[1]) && interior_max(&s_curves[2]),
        "s=1,2 curves peak in the interior".to_string(),
    ));

    let grid2: Vec<f64> = (0..220).map(|i| 0.01 + i as f64 * 1.09 / 219.0).collect();
    let fg_curve = |n: f64, k: f64| -> Vec<(f64, f64)> {
        grid2
            .iter()
            .map(|&t| {
                let fg = if t < 1.0 {
                    fg_self_consistent(t, n, k).unwrap().f_g
                } else {
                    0.0
                };
                (t, fg)
            })
            .collect()
    };

    // N=1e6 ground-state curve: where does it fall below 2%?
    let curve6 = fg_curve(1e6, k_parameter(1e6, 5.6e4).unwrap());
    let vanish = curve6
        .iter()
        .find(|(t, fg)| *t < 1.0 && *fg < 0.02)
        .map(|(t, _)| *t)
        .unwrap_or(f64::NAN);
    parts.push((
        (vanish - 0.47).abs() <= 0.02,
        format!("ground fraction at N=1e6 falls below 0.02 at t = {vanish:.3} (want 0.47 ± 0.02)"),
    ));
    let f0_cross = grid2
        .windows(2)
        .any(|w| (1.0 - w[0].powi(3)) > 0.0 && (1.0 - w[1].powi(3)) <= 0.0 && (w[0] - 1.0).abs() < 0.01);
    parts.push((f0_cross, "f0 vanishes at t = 1".to_string()));

    // N=1e8: ground curve nearly coincides with the condensate curve
    let curve8 = fg_curve(1e8, k_parameter(1e8, 5.6e4).unwrap());
    let max_gap = curve8
        .iter()
        .filter(|(t, _)| *t < 1.0)
        .map(|(t, fg)| (1.0 - t.powi(3)) - fg)
        .fold(0.0f64, f64::max);
    parts.push((
        max_gap < 0.06,
        format!("max |fg - f0| at N=1e8 is {max_gap:.4} (want < 0.06)"),
    ));

    // exponential-limit curve vs its closed-form limit on t in [0.1, 0.5]
    let k16 = bz_geometry(1e16, 1.6).unwrap().1;
    let max_tl_gap = grid2
        .iter()
        .filter(|&&t| (0.1..=0.5).contains(&t))
        .map(|&t| {
            let fg = fg_self_consistent(t, 1e16, k16).unwrap().f_g;
            (fg - fg_tl_limit(t, 1.6).unwrap()).abs()
        })
        .fold(0.0f64, f64::max);
    parts.push((
        max_tl_gap < 0.02,
        format!("max |fg - fg_tl| at N=1e16 on [0.1,0.5] is {max_tl_gap:.4} (want < 0.02)"),
    ));

    report("criterion 6 (figure properties)", 30.0, started, parts);
}

#[test]
fn criterion_7_oracle_equivalence() {
    let started = Instant::now();
    let mut parts = Vec::new();

    // closed band sum vs direct lattice summation on the full (a, gamma) grid
    let mut worst = 0.0f64;
    for pa in -3..=3 {
        for pg in -4..=1 {
            let a = 10f64.powi(pa);
            let gamma = 10f64.powi(pg);
            let closed = coth_band_sum(a, gamma).unwrap();
            let cap = 20_000i64;
            let (mut direct, mut comp) = (1.0 / gamma, 0.0f64);
            for s in (1..=cap).rev() {
                let term = 2.0 / (a * (s * s) as f64 + gamma);
                let y = term - comp;
                let tsum = direct + y;
                comp = (tsum - direct) - y;
                direct = tsum;
            }
            let edge = cap as f64 + 0.5;
            direct += (2.0 / (a * gamma).sqrt())
                * (std::f64::consts::FRAC_PI_2 - (edge * (a / gamma).sqrt()).atan());
            worst = worst.max(rel(closed, direct));
        }
    }
    parts.push((
        worst < 1e-10,
        format!("band sum closed form vs direct: worst rel {worst:.2e} (< 1e-10) over 42 (a,gamma) pairs"),
    ));

    let solve = |geometry: OracleGeometry, t: f64| -> OracleSolution {
        solve_alpha_exact(&SpectrumSpec::new(geometry), t).unwrap()
    };

    let iso = solve(OracleGeometry::Isotropic { n_particles: 1e5 }, 0.5);
    let iso_dev = rel(iso.f_g, 0.875);
    parts.push((
        iso_dev < 0.02,
        format!("isotropic fg at N=1e5, t=0.5: rel dev {iso_dev:.4} vs 1-t^3 (< 0.02)"),
    ));

    for t in [0.2, 0.5, 0.8] {
        let sol = solve(
            OracleGeometry::Cigar {
                n_particles: 1e4,
                delta: 100.0,
            },
            t,
        );
        let dev = rel(sol.f_band, 1.0 - t * t * t);
        parts.push((
            dev < 0.05,
            format!("cigar band fraction at t={t}: rel dev {dev:.4} vs 1-t^3 (< 0.05)"),
        ));
    }

    let cfg = PrismConfig::new(1000.0, 10.0).unwrap();
    let analytic = alpha_prism(0.5, &cfg).unwrap().value();
    let prism = solve(
        OracleGeometry::Prism {
            l_over_a: 1000.0,
            d_over_a: 10.0,
        },
        0.5,
    );
    let alpha_dev = rel(prism.alpha.value(), analytic);
    parts.push((
        alpha_dev < 0.05,
        format!("prism alpha at N=1e5, L/D=100, t=0.5: rel dev {alpha_dev:.4} vs reduced form (< 0.05)"),
    ));

    report("criterion 7 (oracle equivalence)", 120.0, started, parts);
}

#[test]
fn criterion_8_box_scaling() {
    let started = Instant::now();
    let mut parts = Vec::new();

    let third = 1.0 / 3.0;
    let kinds = [
        (third, third, third, GbecKind::TypeI),
        (0.5, 0.25, 0.25, GbecKind::TypeII),
        (0.6, 0.2, 0.2, GbecKind::TypeIII),
    ];
    let trichotomy = kinds.iter().all(|&(n1, n2, n3, expect)| {
        classify(&BoxExponents::new(n1, n2, n3, 1e4).unwrap()).unwrap().kind == expect
    });
    parts.push((trichotomy, "classification trichotomy on the three exponent triples".into()));

    let t = 0.5;
    let ladder: Vec<f64> = (4..=10).map(|p| 10f64.powi(p)).collect();
    let gamma_points: Vec<(f64, f64)> = ladder
        .iter()
        .map(|&h| {
            let nu = BoxExponents::new(0.6, 0.2, 0.2, h).unwrap();
            (h, solve_gamma_type3(t, &nu).unwrap())
        })
        .collect();
    let slope = gbec_core::fit::log_log_slope(&gamma_points).unwrap();
    parts.push((
        (slope - 0.2).abs() < 0.01,
        format!("gamma(H) log-log slope = {slope:.5} for nu1=0.6 (want 0.2 ± 0.01)"),
    ));

    let nu3 = BoxExponents::new(0.6, 0.2, 0.2, 1e4).unwrap();
    let (k0_slope, s0_slope) = cutoff_diagnostics(&nu3, t, &ladder, 1e4).unwrap();
    parts.push((
        (k0_slope + 0.4).abs() < 0.02 && (s0_slope - 0.2).abs() < 0.02,
        format!("cutoff slopes (k0, s0) = ({k0_slope:.4}, {s0_slope:.4}) (want (-0.4, 0.2) ± 0.02)"),
    ));

    let gammas: Vec<f64> = [1e4, 1e6, 1e8]
        .iter()
        .map(|&h| {
            let nu = BoxExponents::new(0.5, 0.25, 0.25, h).unwrap();
            solve_gamma_type2(t, &nu).unwrap()
        })
        .collect();
    let spread = (gammas.iter().cloned().fold(f64::MIN, f64::max)
        - gammas.iter().cloned().fold(f64::MAX, f64::min))
        / gammas[0];
    parts.push((
        spread < 1e-6,
        format!("boundary-type gamma H-independence: rel spread {spread:.2e} (< 1e-6)"),
    ));

    report("criterion 8 (box scaling)", 30.0, started, parts);
}

#[test]
fn criterion_9_band_condensation_certificates() {
    let started = Instant::now();
    let slope = max_fraction_scaling(&[1000.0, 2000.0, 4000.0, 8000.0], 10.0, 0.5).unwrap();
    let cfg = PrismConfig::new(1000.0, 10.0).unwrap();
    let band = band_fraction_prism(0.5, &cfg).unwrap();
    let band_gap = (band - (1.0 - 0.5f64.powf(1.5))).abs();
    let density_exp = central_density_scaling(&[1e5, 1e6, 1e7, 1e8], 0.5).unwrap();
    report(
        "criterion 9 (band-condensation certificates)",
        30.0,
        started,
        vec![
            (
                (slope + 1.0).abs() < 0.05,
                format!("prism peak-state fraction vs L slope = {slope:.4} (want -1 ± 0.05)"),
            ),
            (
                band_gap < 1e-8,
                format!("prism band fraction vs 1 - t^1.5: |gap| = {band_gap:.2e} (< 1e-8)"),
            ),
            (
                (density_exp - 0.25).abs() < 0.02,
                format!("channel central-density exponent = {density_exp:.4} (want 0.25 ± 0.02)"),
            ),
        ],
    );
}
