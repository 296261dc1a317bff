use anyhow::Result;
use rayon::prelude::*;

use gbec_core::channel::{
    condensate_fraction_channel, per_state_fraction_channel, solve_gamma_channel,
};
use gbec_core::cigar::{bz_geometry, fg_self_consistent, fg_tl_limit, k_parameter};
use gbec_core::general_box::{cutoff_point, solve_gamma_box, state_density, BoxExponents};
use gbec_core::isotropic::{alpha_above_tc_iso, condensate_fraction_iso};
use gbec_core::oracle::{max_single_state_fraction, solve_alpha_exact, OracleGeometry, SpectrumSpec};
use gbec_core::prism::{
    alpha_prism, band_fraction_prism, max_state_fraction_prism, PrismConfig,
};

use crate::grid::Grid;
use crate::table::{Row, SweepTable};

/// Evaluates one row builder per input, in grid order, optionally bounded to
/// `jobs` worker threads.
fn run_rows<T, F>(inputs: &[T], jobs: Option<usize>, f: F) -> Result<Vec<Row>>
where
    T: Send + Sync,
    F: Fn(&T) -> Row + Send + Sync,
{
    let compute = || inputs.par_iter().map(&f).collect::<Vec<Row>>();
    match jobs {
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(j).build()?;
            Ok(pool.install(compute))
        }
        None => Ok(compute()),
    }
}

/// A module refusal becomes a flagged row, not an aborted run.
fn build_row(
    abscissa: f64,
    width: usize,
    build: impl FnOnce() -> gbec_core::Result<Vec<f64>>,
) -> Row {
    match build() {
        Ok(values) => Row::ok(values),
        Err(err) => Row::failed(abscissa, width, err.to_string()),
    }
}

pub fn bose_sweep(order: f64, grid: &Grid, jobs: Option<usize>) -> Result<SweepTable> {
    let mut table = SweepTable::new(vec!["alpha", "f_n"]);
    table.rows = run_rows(&grid.points(), jobs, |&alpha| {
        build_row(alpha, 2, || Ok(vec![alpha, gbec_core::bose::bose_fn(order, alpha)?]))
    })?;
    Ok(table)
}

pub fn isotropic_sweep(grid: &Grid, jobs: Option<usize>) -> Result<SweepTable> {
    let mut table = SweepTable::new(vec!["t", "f0", "alpha"]);
    table.rows = run_rows(&grid.points(), jobs, |&t| {
        build_row(t, 3, || {
            let f0 = condensate_fraction_iso(t)?;
            let alpha = if t <= 1.0 { 0.0 } else { alpha_above_tc_iso(t)?.value() };
            Ok(vec![t, f0, alpha])
        })
    })?;
    Ok(table)
}

pub fn channel_sweep(n_particles: f64, grid: &Grid, jobs: Option<usize>) -> Result<SweepTable> {
    let mut table = SweepTable::new(vec!["t", "f0", "f_s0", "f_s1", "f_s2"]);
    table.rows = run_rows(&grid.points(), jobs, |&t| {
        build_row(t, 5, || {
            let f0 = condensate_fraction_channel(t)?;
            // Above Tc every band state is microscopic; the sweep reports the
            // thermodynamic-limit value 0 rather than refusing the row.
            if t >= 1.0 {
                return Ok(vec![t, f0, 0.0, 0.0, 0.0]);
            }
            let gamma = solve_gamma_channel(t, n_particles)?;
            let f_s: Vec<f64> = (0..3)
                .map(|s| per_state_fraction_channel(s, gamma, t))
                .collect::<gbec_core::Result<_>>()?;
            Ok(vec![t, f0, f_s[0], f_s[1], f_s[2]])
        })
    })?;
    Ok(table)
}

pub fn cigar_standard_sweep(
    n_particles: f64,
    k: f64,
    grid: &Grid,
    jobs: Option<usize>,
) -> Result<SweepTable> {
    let mut table = SweepTable::new(vec!["t", "f0", "fg"]);
    table.rows = run_rows(&grid.points(), jobs, |&t| {
        build_row(t, 3, || {
            let f0 = condensate_fraction_iso(t)?;
            let fg = if t < 1.0 { fg_self_consistent(t, n_particles, k)?.f_g } else { 0.0 };
            Ok(vec![t, f0, fg])
        })
    })?;
    Ok(table)
}

pub fn cigar_bz_sweep(
    n_particles: f64,
    k: f64,
    bz_gamma: f64,
    grid: &Grid,
    jobs: Option<usize>,
) -> Result<SweepTable> {
    let mut table = SweepTable::new(vec!["t", "f0", "fg", "fg_tl"]);
    table.rows = run_rows(&grid.points(), jobs, |&t| {
        build_row(t, 4, || {
            let f0 = condensate_fraction_iso(t)?;
            let fg = if t < 1.0 { fg_self_consistent(t, n_particles, k)?.f_g } else { 0.0 };
            let fg_tl = fg_tl_limit(t, bz_gamma)?;
            Ok(vec![t, f0, fg, fg_tl])
        })
    })?;
    Ok(table)
}

pub fn prism_sweep(cfg: &PrismConfig, grid: &Grid, jobs: Option<usize>) -> Result<SweepTable> {
    let mut table = SweepTable::new(vec!["t", "alpha", "band_fraction", "max_state_fraction"]);
    table.rows = run_rows(&grid.points(), jobs, |&t| {
        build_row(t, 4, || {
            Ok(vec![
                t,
                alpha_prism(t, cfg)?.value(),
                band_fraction_prism(t, cfg)?,
                max_state_fraction_prism(t, cfg)?,
            ])
        })
    })?;
    Ok(table)
}

pub fn prism_scan(
    l_ladder: &[f64],
    d_over_a: f64,
    t: f64,
    jobs: Option<usize>,
) -> Result<SweepTable> {
    let mut table =
        SweepTable::new(vec!["L_over_a", "max_state_fraction", "band_fraction", "alpha"]);
    table.rows = run_rows(l_ladder, jobs, |&l_over_a| {
        build_row(l_over_a, 4, || {
            let cfg = PrismConfig::new(l_over_a, d_over_a)?;
            Ok(vec![
                l_over_a,
                max_state_fraction_prism(t, &cfg)?,
                band_fraction_prism(t, &cfg)?,
                alpha_prism(t, &cfg)?.value(),
            ])
        })
    })?;
    Ok(table)
}

pub fn box_scan(
    nu: &BoxExponents,
    h_ladder: &[f64],
    t: f64,
    cutoff: f64,
    jobs: Option<usize>,
) -> Result<SweepTable> {
    let mut table = SweepTable::new(vec!["H", "gamma", "max_state_density", "k0", "s0"]);
    table.rows = run_rows(h_ladder, jobs, |&h| {
        build_row(h, 5, || {
            let nu_h = nu.with_h(h)?;
            let gamma = solve_gamma_box(t, &nu_h)?;
            let density = state_density((0, 0, 0), &nu_h, t, gamma)?;
            let (s0, k0) = cutoff_point(&nu_h, t, cutoff)?;
            Ok(vec![h, gamma, density, k0, s0])
        })
    })?;
    Ok(table)
}

pub fn oracle_compare(
    spec: &SpectrumSpec,
    ts: &[f64],
    jobs: Option<usize>,
) -> Result<SweepTable> {
    let geometry = spec.geometry;
    let mut table =
        SweepTable::new(vec!["t", "f0_analytic", "f0_exact", "fg_analytic", "fg_exact"]);
    table.rows = run_rows(ts, jobs, |&t| {
        build_row(t, 5, || {
            let sol = solve_alpha_exact(spec, t)?;
            let f0_analytic = geometry.f0_analytic(t);
            let fg_analytic = analytic_head_state(&geometry, t)?;
            let fg_exact = match geometry {
                OracleGeometry::Prism { .. } => max_single_state_fraction(&sol),
                _ => sol.f_g,
            };
            Ok(vec![t, f0_analytic, sol.f_band, fg_analytic, fg_exact])
        })
    })?;
    Ok(table)
}

/// The closed-form counterpart of the oracle's head-state fraction: the whole
/// condensate for the isotropic trap, the s = 0 (or s_z = 0) band member for
/// the band geometries.
fn analytic_head_state(geometry: &OracleGeometry, t: f64) -> gbec_core::Result<f64> {
    if t >= 1.0 {
        return Ok(0.0);
    }
    match *geometry {
        OracleGeometry::Isotropic { .. } => condensate_fraction_iso(t),
        OracleGeometry::Channel { n_particles } => {
            per_state_fraction_channel(0, solve_gamma_channel(t, n_particles)?, t)
        }
        OracleGeometry::Cigar { n_particles, delta } => {
            Ok(fg_self_consistent(t, n_particles, k_parameter(n_particles, delta)?)?.f_g)
        }
        OracleGeometry::Prism { l_over_a, d_over_a } => {
            max_state_fraction_prism(t, &PrismConfig::new(l_over_a, d_over_a)?)
        }
    }
}

/// The five standard figure datasets, in publication order.
pub fn figure_tables(jobs: Option<usize>) -> Result<Vec<(&'static str, SweepTable)>> {
    let head_grid = Grid { min: 0.005, max: 1.0, steps: 200 };
    let curve_grid = Grid { min: 0.01, max: 1.1, steps: 220 };

    let fig1 = channel_sweep(1e6, &head_grid, jobs)?;
    let fig2 = cigar_standard_sweep(1e6, k_parameter(1e6, 5.6e4)?, &curve_grid, jobs)?;
    let fig3 = cigar_standard_sweep(1e8, k_parameter(1e8, 5.6e4)?, &curve_grid, jobs)?;

    // Figures 4 and 5 share one dataset: the exponential limit at gamma = 1.6,
    // deep enough in N that the curve is at its limiting shape.
    let (n_bz, gamma) = (1e16, 1.6);
    let k_bz = bz_geometry(n_bz, gamma)?.1;
    let bz = cigar_bz_sweep(n_bz, k_bz, gamma, &curve_grid, jobs)?;
    let fig4 = SweepTable {
        columns: vec!["t", "f0", "fg"],
        rows: bz
            .rows
            .iter()
            .map(|r| Row { values: r.values[..3].to_vec(), error: r.error.clone() })
            .collect(),
    };

    Ok(vec![
        ("fig1.csv", fig1),
        ("fig2.csv", fig2),
        ("fig3.csv", fig3),
        ("fig4.csv", fig4),
        ("fig5.csv", bz),
    ])
}
