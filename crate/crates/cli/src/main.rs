mod commands;
mod grid;
mod table;

use std::cell::RefCell;
use std::collections::HashSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gbec_core::channel::critical_temperature_channel;
use gbec_core::cigar::{
    bz_gamma_from_delta, bz_geometry, k_parameter, t1_bz, t1_first_iterate, t1_standard,
};
use gbec_core::general_box::{classify, BoxExponents, GbecKind};
use gbec_core::isotropic::critical_temperature_iso;
use gbec_core::oracle::{OracleGeometry, SpectrumSpec};
use gbec_core::prism::PrismConfig;

use grid::{parse_list, Grid};
use table::{emit, failure_summary, fmt12, write_csv, OutputFormat, SweepTable};

#[derive(Parser)]
#[command(
    name = "gbec",
    version,
    about = "Band condensation laboratory: Bose functions, anisotropic-trap sweeps, and exact finite-N checks"
)]
struct Cli {
    /// JSON file supplying defaults for any flag of the chosen subcommand
    /// (keys use underscores: l_over_a, h_values, ...). Explicit flags win.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Write the table to this file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Table format (default csv)
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Bound the worker threads used for row evaluation
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..=4096))]
    jobs: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the Bose function F_n(alpha) on an alpha grid
    BoseFn {
        /// Order n of the Bose function
        #[arg(long)]
        n: Option<f64>,
        /// Alpha values: a single number or MIN:MAX:STEPS
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
    },
    /// Isotropic 3D trap: condensate fraction and reduced chemical potential
    Isotropic {
        /// Reduced temperatures t = T/Tc: a single number or MIN:MAX:STEPS
        #[arg(long)]
        t: Option<String>,
        /// Print the condensation scale Tc/T0 as JSON instead of sweeping
        #[arg(long)]
        report: bool,
    },
    /// Channel (periodic x, harmonic z): band head-state fractions
    Channel {
        /// Particle number N (default 1e6)
        #[arg(long)]
        n: Option<f64>,
        /// Reduced temperatures: a single number or MIN:MAX:STEPS
        #[arg(long)]
        t: Option<String>,
        /// Print the condensation scale Tc/T* as JSON instead of sweeping
        #[arg(long)]
        report: bool,
    },
    /// Cigar trap: ground-state fraction sweeps and transition estimates
    Cigar {
        /// Particle number N
        #[arg(long)]
        n: Option<f64>,
        /// Aspect ratio L_par / L_perp (standard limit)
        #[arg(long)]
        delta: Option<f64>,
        /// Work in the exponential limit (fixed reduced exponent gamma)
        #[arg(long)]
        bz: bool,
        /// Reduced exponent gamma; derived from --n/--delta when omitted
        #[arg(long)]
        gamma: Option<f64>,
        /// Order-unity constant c in the transition estimate's ln(cN)
        #[arg(long)]
        c: Option<f64>,
        /// Reduced temperatures: a single number or MIN:MAX:STEPS
        #[arg(long)]
        t: Option<String>,
        /// Print K and T1/Tc as JSON instead of sweeping
        #[arg(long)]
        report: bool,
    },
    /// Prism box: reduced chemical potential and band occupancies
    Prism {
        /// Long reduced edge L/a
        #[arg(long)]
        l_over_a: Option<f64>,
        /// Short reduced edge D/a
        #[arg(long)]
        d_over_a: Option<f64>,
        /// Reduced temperatures in (0, 1): a single number or MIN:MAX:STEPS
        #[arg(long)]
        t: Option<String>,
        /// Sweep a comma-separated ladder of L/a at fixed t instead
        #[arg(long, value_name = "L1,L2,...")]
        scan: Option<String>,
    },
    /// Exponent-scaled boxes L_i = a H^(nu_i)
    #[command(name = "box")]
    BoxCmd {
        #[command(subcommand)]
        action: BoxAction,
    },
    /// Exact finite-spectrum summation
    Oracle {
        #[command(subcommand)]
        action: OracleAction,
    },
    /// Emit the five standard figure datasets as CSV
    Figures {
        /// Directory that receives fig1.csv ... fig5.csv
        #[arg(long)]
        outdir: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BoxAction {
    /// Sort exponents into type I / II / III; --scan tabulates the H scaling
    Classify {
        /// The three scaling exponents, e.g. 0.6,0.2,0.2
        #[arg(long, value_name = "NU1,NU2,NU3")]
        nu: Option<String>,
        /// Box-size dial H (only the scan varies it; default 1e6)
        #[arg(long)]
        h: Option<f64>,
        /// Reduced temperature for the scan (default 0.5)
        #[arg(long)]
        t: Option<f64>,
        /// Occupation-ratio cutoff C defining the band edge (default 1e4)
        #[arg(long)]
        cutoff: Option<f64>,
        /// Emit the scaling table (H, gamma, max_state_density, k0, s0)
        #[arg(long)]
        scan: bool,
        /// H ladder for the scan (default decades 1e4..1e10)
        #[arg(long, value_name = "H1,H2,...")]
        h_values: Option<String>,
    },
}

#[derive(Subcommand)]
enum OracleAction {
    /// Solve the exact number equation and tabulate it against the closed forms
    Compare {
        /// Which confinement to enumerate
        #[arg(long, value_enum)]
        geometry: Option<GeometryArg>,
        /// Particle number N (isotropic, channel, cigar)
        #[arg(long)]
        n: Option<f64>,
        /// Aspect ratio (cigar)
        #[arg(long)]
        delta: Option<f64>,
        /// Long reduced edge L/a (prism)
        #[arg(long)]
        l_over_a: Option<f64>,
        /// Short reduced edge D/a (prism)
        #[arg(long)]
        d_over_a: Option<f64>,
        /// Reduced temperatures: a single number or MIN:MAX:STEPS
        #[arg(long)]
        t: Option<String>,
        /// Relative tail mass at which the enumeration may stop early
        #[arg(long)]
        eps_tail: Option<f64>,
        /// Hard enumeration cap on beta*epsilon
        #[arg(long)]
        cap: Option<f64>,
        /// Emit CSV rows instead of the aligned text table
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GeometryArg {
    Isotropic,
    Channel,
    Cigar,
    Prism,
}

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn real_main() -> Result<ExitCode> {
    let cli = Cli::parse();
    let file = FileCfg::load(cli.config.as_deref())?;
    // Config keys are read eagerly — flag or no flag — so that `finish` can
    // tell a shadowed key from a misspelled one.
    let file_out = file.path("out")?;
    let file_format = file.format("format")?;
    let file_jobs = file.usize("jobs")?;
    let ctx = RunContext {
        out: cli.out.or(file_out),
        format: cli.format.or(file_format),
        jobs: cli.jobs.map(|j| j as usize).or(file_jobs),
    };

    match cli.command {
        Command::BoseFn { n, alpha } => run_bose(&ctx, &file, n, alpha),
        Command::Isotropic { t, report } => run_isotropic(&ctx, &file, t, report),
        Command::Channel { n, t, report } => run_channel(&ctx, &file, n, t, report),
        Command::Cigar { n, delta, bz, gamma, c, t, report } => {
            run_cigar(&ctx, &file, CigarArgs { n, delta, bz, gamma, c, t, report })
        }
        Command::Prism { l_over_a, d_over_a, t, scan } => {
            run_prism(&ctx, &file, l_over_a, d_over_a, t, scan)
        }
        Command::BoxCmd { action } => {
            let BoxAction::Classify { nu, h, t, cutoff, scan, h_values } = action;
            run_box(&ctx, &file, BoxArgs { nu, h, t, cutoff, scan, h_values })
        }
        Command::Oracle { action } => {
            let OracleAction::Compare {
                geometry,
                n,
                delta,
                l_over_a,
                d_over_a,
                t,
                eps_tail,
                cap,
                csv,
            } = action;
            run_oracle(
                &ctx,
                &file,
                OracleArgs { geometry, n, delta, l_over_a, d_over_a, t, eps_tail, cap, csv },
            )
        }
        Command::Figures { outdir } => run_figures(&ctx, &file, outdir),
    }
}

struct RunContext {
    out: Option<PathBuf>,
    format: Option<OutputFormat>,
    jobs: Option<usize>,
}

impl RunContext {
    fn format(&self) -> OutputFormat {
        self.format.unwrap_or(OutputFormat::Csv)
    }
}

/// Emit the table, report failed rows on stderr, and turn them into the exit
/// status: 0 only when every row computed.
fn finish_table(ctx: &RunContext, table: &SweepTable, meta: Value) -> Result<ExitCode> {
    emit(table, &meta, ctx.format(), ctx.out.as_deref())?;
    match failure_summary(table) {
        Some(summary) => {
            eprintln!("{summary}");
            Ok(ExitCode::from(1))
        }
        None => Ok(ExitCode::SUCCESS),
    }
}

/// Reports are small JSON objects; they go to --out when given, stdout otherwise.
fn finish_report(ctx: &RunContext, report: Value) -> Result<ExitCode> {
    let text = format!("{}\n", serde_json::to_string_pretty(&report)?);
    match &ctx.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn require<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| anyhow!("missing --{flag} (or config key {:?})", flag.replace('-', "_")))
}

fn run_bose(ctx: &RunContext, file: &FileCfg, n: Option<f64>, alpha: Option<String>) -> Result<ExitCode> {
    let n = n.or(file.f64("n")?);
    let alpha = alpha.or(file.string("alpha")?);
    file.finish()?;
    let order = require(n, "n")?;
    let grid = Grid::parse(&require(alpha, "alpha")?)?;
    let table = commands::bose_sweep(order, &grid, ctx.jobs)?;
    let meta = json!({ "command": "bose-fn", "n": order, "alpha": grid });
    finish_table(ctx, &table, meta)
}

fn run_isotropic(ctx: &RunContext, file: &FileCfg, t: Option<String>, report: bool) -> Result<ExitCode> {
    let t = t.or(file.string("t")?);
    let report = report || file.boolean("report")?.unwrap_or(false);
    file.finish()?;
    if report {
        return finish_report(ctx, json!({ "tc_over_t0": critical_temperature_iso() }));
    }
    let grid = Grid::parse(&require(t, "t")?)?;
    let table = commands::isotropic_sweep(&grid, ctx.jobs)?;
    let meta = json!({ "command": "isotropic", "t": grid });
    finish_table(ctx, &table, meta)
}

fn run_channel(
    ctx: &RunContext,
    file: &FileCfg,
    n: Option<f64>,
    t: Option<String>,
    report: bool,
) -> Result<ExitCode> {
    let n = n.or(file.f64("n")?).unwrap_or(1e6);
    let t = t.or(file.string("t")?);
    let report = report || file.boolean("report")?.unwrap_or(false);
    file.finish()?;
    if report {
        return finish_report(ctx, json!({ "tc_over_tstar": critical_temperature_channel() }));
    }
    let grid = Grid::parse(&require(t, "t")?)?;
    let table = commands::channel_sweep(n, &grid, ctx.jobs)?;
    let meta = json!({ "command": "channel", "n": n, "t": grid });
    finish_table(ctx, &table, meta)
}

struct CigarArgs {
    n: Option<f64>,
    delta: Option<f64>,
    bz: bool,
    gamma: Option<f64>,
    c: Option<f64>,
    t: Option<String>,
    report: bool,
}

fn run_cigar(ctx: &RunContext, file: &FileCfg, args: CigarArgs) -> Result<ExitCode> {
    let n = args.n.or(file.f64("n")?);
    let delta = args.delta.or(file.f64("delta")?);
    let bz = args.bz || file.boolean("bz")?.unwrap_or(false);
    let gamma = args.gamma.or(file.f64("gamma")?);
    let c = args.c.or(file.f64("c")?).unwrap_or(1.0);
    let report = args.report || file.boolean("report")?.unwrap_or(false);
    let t = args.t.or(file.string("t")?);
    file.finish()?;

    if bz {
        // gamma may be given directly or implied by a concrete (N, delta) box.
        let (gamma, ell_perp) = match (gamma, n, delta) {
            (Some(g), Some(n), _) => (g, Some(bz_geometry(n, g)?.0)),
            (Some(g), None, _) => (g, None),
            (None, Some(n), Some(d)) => {
                let (ell, g) = bz_gamma_from_delta(n, d)?;
                (g, Some(ell))
            }
            _ => bail!("the exponential limit needs --gamma, or --n with --delta to derive it"),
        };
        if report {
            let est = t1_bz(gamma)?;
            return finish_report(
                ctx,
                json!({
                    "mode": "exponential",
                    "gamma": gamma,
                    "ell_perp": ell_perp,
                    "t1_over_tc": est.t1_over_tc,
                    "merged": est.merged,
                }),
            );
        }
        let n = require(n, "n")?;
        let k = bz_geometry(n, gamma)?.1;
        let grid = Grid::parse(&require(t, "t")?)?;
        let table = commands::cigar_bz_sweep(n, k, gamma, &grid, ctx.jobs)?;
        let meta = json!({
            "command": "cigar",
            "mode": "exponential",
            "n": n,
            "gamma": gamma,
            "k": k,
            "t": grid,
        });
        return finish_table(ctx, &table, meta);
    }

    let n = require(n, "n")?;
    let delta = require(delta, "delta")?;
    let k = k_parameter(n, delta)?;
    if report {
        let est = t1_standard(n, k, c)?;
        return finish_report(
            ctx,
            json!({
                "mode": "standard",
                "n": n,
                "delta": delta,
                "k": k,
                "c": c,
                "first_iterate": t1_first_iterate(n, k, c)?,
                "t1_over_tc": est.t1_over_tc,
                "merged": est.merged,
            }),
        );
    }
    let grid = Grid::parse(&require(t, "t")?)?;
    let table = commands::cigar_standard_sweep(n, k, &grid, ctx.jobs)?;
    let meta = json!({
        "command": "cigar",
        "mode": "standard",
        "n": n,
        "delta": delta,
        "k": k,
        "t": grid,
    });
    finish_table(ctx, &table, meta)
}

fn run_prism(
    ctx: &RunContext,
    file: &FileCfg,
    l_over_a: Option<f64>,
    d_over_a: Option<f64>,
    t: Option<String>,
    scan: Option<String>,
) -> Result<ExitCode> {
    let l_over_a = l_over_a.or(file.f64("l_over_a")?);
    let d_over_a = d_over_a.or(file.f64("d_over_a")?);
    let t = t.or(file.string("t")?);
    let scan = scan.or(file.string("scan")?);
    file.finish()?;
    let d_over_a = require(d_over_a, "d-over-a")?;

    if let Some(ladder) = scan {
        let ladder = parse_list(&ladder)?;
        let t = match t {
            Some(text) => {
                let g = Grid::parse(&text)?;
                if g.steps != 1 {
                    bail!("--scan sweeps L/a at a single temperature; give --t one value");
                }
                g.min
            }
            None => 0.5,
        };
        let table = commands::prism_scan(&ladder, d_over_a, t, ctx.jobs)?;
        let meta = json!({
            "command": "prism",
            "scan": ladder,
            "d_over_a": d_over_a,
            "t": t,
        });
        return finish_table(ctx, &table, meta);
    }

    let l_over_a = require(l_over_a, "l-over-a")?;
    let cfg = PrismConfig::new(l_over_a, d_over_a)?;
    if cfg.aspect_warning {
        eprintln!(
            "note: aspect ratio L/D = {:.1} is modest; the band picture sharpens for L/D >= 100",
            l_over_a / d_over_a
        );
    }
    let grid = Grid::parse(&require(t, "t")?)?;
    let table = commands::prism_sweep(&cfg, &grid, ctx.jobs)?;
    let meta = json!({
        "command": "prism",
        "l_over_a": l_over_a,
        "d_over_a": d_over_a,
        "n": cfg.n_particles,
        "t": grid,
    });
    finish_table(ctx, &table, meta)
}

struct BoxArgs {
    nu: Option<String>,
    h: Option<f64>,
    t: Option<f64>,
    cutoff: Option<f64>,
    scan: bool,
    h_values: Option<String>,
}

fn run_box(ctx: &RunContext, file: &FileCfg, args: BoxArgs) -> Result<ExitCode> {
    let nu_text = args.nu.or(file.string("nu")?);
    let h = args.h.or(file.f64("h")?).unwrap_or(1e6);
    let t = args.t.or(file.f64("t")?).unwrap_or(0.5);
    let cutoff = args.cutoff.or(file.f64("cutoff")?).unwrap_or(1e4);
    let scan = args.scan || file.boolean("scan")?.unwrap_or(false);
    let h_values = args.h_values.or(file.string("h_values")?);
    file.finish()?;

    let nu_list = parse_list(&require(nu_text, "nu")?)?;
    let [nu1, nu2, nu3] = nu_list[..] else {
        bail!("--nu takes exactly three exponents, got {}", nu_list.len());
    };
    let h_values = match h_values {
        Some(text) => parse_list(&text)?,
        None => vec![1e4, 1e5, 1e6, 1e7, 1e8, 1e9, 1e10],
    };

    let nu = BoxExponents::new(nu1, nu2, nu3, h)?;
    let class = classify(&nu)?;
    if class.near_boundary {
        eprintln!(
            "warning: nu1 = {nu1} sits within 1e-8 of the type boundary 1/2; \
             the classification is numerically fragile there"
        );
    }

    if scan {
        let table = commands::box_scan(&nu, &h_values, t, cutoff, ctx.jobs)?;
        let meta = json!({
            "command": "box classify",
            "nu": [nu1, nu2, nu3],
            "kind": kind_label(class.kind),
            "t": t,
            "cutoff": cutoff,
            "h_values": h_values,
        });
        return finish_table(ctx, &table, meta);
    }

    if ctx.format == Some(OutputFormat::Json) {
        return finish_report(
            ctx,
            json!({
                "nu": [nu1, nu2, nu3],
                "kind": kind_label(class.kind),
                "near_boundary": class.near_boundary,
            }),
        );
    }
    println!("type {}", kind_label(class.kind));
    println!("{}", kind_blurb(class.kind));
    Ok(ExitCode::SUCCESS)
}

fn kind_label(kind: GbecKind) -> &'static str {
    match kind {
        GbecKind::TypeI => "I",
        GbecKind::TypeII => "II",
        GbecKind::TypeIII => "III",
    }
}

fn kind_blurb(kind: GbecKind) -> &'static str {
    match kind {
        GbecKind::TypeI => "nu1 < 1/2: the ground state alone carries the condensate; gamma stays at 1/rho0.",
        GbecKind::TypeII => "nu1 = 1/2: condensation shared across the s1 band; the band equation never sees H.",
        GbecKind::TypeIII => "nu1 > 1/2: band condensation with gamma growing like H^(2 nu1 - 1); no single state stays macroscopic.",
    }
}

struct OracleArgs {
    geometry: Option<GeometryArg>,
    n: Option<f64>,
    delta: Option<f64>,
    l_over_a: Option<f64>,
    d_over_a: Option<f64>,
    t: Option<String>,
    eps_tail: Option<f64>,
    cap: Option<f64>,
    csv: bool,
}

fn run_oracle(ctx: &RunContext, file: &FileCfg, args: OracleArgs) -> Result<ExitCode> {
    let file_geometry = file.string("geometry")?;
    let n = args.n.or(file.f64("n")?);
    let delta = args.delta.or(file.f64("delta")?);
    let l_over_a = args.l_over_a.or(file.f64("l_over_a")?);
    let d_over_a = args.d_over_a.or(file.f64("d_over_a")?);
    let t = args.t.or(file.string("t")?);
    let eps_tail = args.eps_tail.or(file.f64("eps_tail")?);
    let cap = args.cap.or(file.f64("cap")?);
    let csv = args.csv || file.boolean("csv")?.unwrap_or(false);
    file.finish()?;

    let geometry = match args.geometry {
        Some(g) => g,
        None => match file_geometry {
            Some(name) => GeometryArg::from_str(&name, true)
                .map_err(|_| anyhow!("unknown geometry {name:?} in config"))?,
            None => bail!("missing --geometry (or config key \"geometry\")"),
        },
    };
    let geometry = match geometry {
        GeometryArg::Isotropic => OracleGeometry::Isotropic { n_particles: require(n, "n")? },
        GeometryArg::Channel => OracleGeometry::Channel { n_particles: require(n, "n")? },
        GeometryArg::Cigar => OracleGeometry::Cigar {
            n_particles: require(n, "n")?,
            delta: require(delta, "delta")?,
        },
        GeometryArg::Prism => OracleGeometry::Prism {
            l_over_a: require(l_over_a, "l-over-a")?,
            d_over_a: require(d_over_a, "d-over-a")?,
        },
    };
    let mut spec = SpectrumSpec::new(geometry);
    if let Some(eps) = eps_tail {
        spec = spec.with_eps_tail(eps)?;
    }
    if let Some(cap) = cap {
        spec = spec.with_cap(cap)?;
    }

    let grid = Grid::parse(&require(t, "t")?)?;
    let table = commands::oracle_compare(&spec, &grid.points(), ctx.jobs)?;
    let meta = json!({
        "command": "oracle compare",
        "geometry": format!("{geometry:?}"),
        "n_particles": geometry.n_particles(),
        "t": grid,
        "eps_tail": spec.eps_tail,
        "beta_eps_cap": spec.beta_eps_cap,
    });

    // Three views: aligned text by default, CSV with --csv (or when the
    // resolved format/output asks for a file), JSON with --format json.
    if csv && ctx.format == Some(OutputFormat::Json) {
        bail!("--csv and --format json are mutually exclusive");
    }
    if csv || ctx.format.is_some() || ctx.out.is_some() {
        let ctx = RunContext {
            out: ctx.out.clone(),
            format: if csv { Some(OutputFormat::Csv) } else { ctx.format },
            jobs: ctx.jobs,
        };
        return finish_table(&ctx, &table, meta);
    }

    println!("oracle comparison — {geometry:?}, N = {}", geometry.n_particles());
    println!(
        "{:>18} {:>18} {:>18} {:>18} {:>18}",
        table.columns[0], table.columns[1], table.columns[2], table.columns[3], table.columns[4]
    );
    for row in &table.rows {
        let cells: Vec<String> = row
            .values
            .iter()
            .map(|v| v.map(fmt12).unwrap_or_else(|| "NaN".to_string()))
            .collect();
        println!(
            "{:>18} {:>18} {:>18} {:>18} {:>18}",
            cells[0], cells[1], cells[2], cells[3], cells[4]
        );
    }
    match failure_summary(&table) {
        Some(summary) => {
            eprintln!("{summary}");
            Ok(ExitCode::from(1))
        }
        None => Ok(ExitCode::SUCCESS),
    }
}

fn run_figures(ctx: &RunContext, file: &FileCfg, outdir: Option<PathBuf>) -> Result<ExitCode> {
    let outdir = outdir.or(file.path("outdir")?);
    file.finish()?;
    let outdir = require(outdir, "outdir")?;
    fs::create_dir_all(&outdir)
        .with_context(|| format!("creating directory {}", outdir.display()))?;
    let mut failed = Vec::new();
    for (name, table) in commands::figure_tables(ctx.jobs)? {
        let path = outdir.join(name);
        let mut sink = std::io::BufWriter::new(
            fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?,
        );
        write_csv(&table, &mut sink)?;
        sink.flush()?;
        println!("wrote {}", path.display());
        if let Some(summary) = failure_summary(&table) {
            failed.push(json!({ "figure": name, "failures": summary }));
        }
    }
    if failed.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("{}", json!({ "figure_failures": failed }));
        Ok(ExitCode::from(1))
    }
}

/// Defaults file: a flat JSON object mirroring the subcommand's flags. Every
/// key must be consumed by the command that ran, so typos surface as errors
/// instead of silently doing nothing.
struct FileCfg {
    map: serde_json::Map<String, Value>,
    seen: RefCell<HashSet<String>>,
}

impl FileCfg {
    fn load(path: Option<&Path>) -> Result<Self> {
        let map = match path {
            None => serde_json::Map::new(),
            Some(path) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading config {}", path.display()))?;
                let value: Value = serde_json::from_str(&text)
                    .with_context(|| format!("parsing config {}", path.display()))?;
                match value {
                    Value::Object(map) => map,
                    other => bail!(
                        "config {} must be a JSON object, got {}",
                        path.display(),
                        kind_of(&other)
                    ),
                }
            }
        };
        Ok(Self { map, seen: RefCell::new(HashSet::new()) })
    }

    fn get(&self, key: &str) -> Option<&Value> {
        self.seen.borrow_mut().insert(key.to_string());
        self.map.get(key)
    }

    fn f64(&self, key: &str) -> Result<Option<f64>> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Number(n)) => Ok(n.as_f64()),
            Some(Value::String(s)) => {
                Ok(Some(s.parse().with_context(|| format!("config key {key:?}: bad number {s:?}"))?))
            }
            Some(other) => bail!("config key {key:?} must be a number, got {}", kind_of(other)),
        }
    }

    fn usize(&self, key: &str) -> Result<Option<usize>> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Number(n)) => n
                .as_u64()
                .map(|v| Some(v as usize))
                .ok_or_else(|| anyhow!("config key {key:?} must be a nonnegative integer")),
            Some(other) => bail!("config key {key:?} must be an integer, got {}", kind_of(other)),
        }
    }

    fn boolean(&self, key: &str) -> Result<Option<bool>> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Bool(b)) => Ok(Some(*b)),
            Some(other) => bail!("config key {key:?} must be a boolean, got {}", kind_of(other)),
        }
    }

    fn string(&self, key: &str) -> Result<Option<String>> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            // Grids and ladders may be written as bare numbers.
            Some(Value::Number(n)) => Ok(Some(n.to_string())),
            Some(other) => bail!("config key {key:?} must be a string, got {}", kind_of(other)),
        }
    }

    fn path(&self, key: &str) -> Result<Option<PathBuf>> {
        Ok(self.string(key)?.map(PathBuf::from))
    }

    fn format(&self, key: &str) -> Result<Option<OutputFormat>> {
        match self.string(key)?.as_deref() {
            None => Ok(None),
            Some("csv") => Ok(Some(OutputFormat::Csv)),
            Some("json") => Ok(Some(OutputFormat::Json)),
            Some(other) => bail!("config key {key:?} must be \"csv\" or \"json\", got {other:?}"),
        }
    }

    fn finish(&self) -> Result<()> {
        let seen = self.seen.borrow();
        let mut unknown: Vec<&str> =
            self.map.keys().map(String::as_str).filter(|k| !seen.contains(*k)).collect();
        unknown.sort_unstable();
        if unknown.is_empty() {
            Ok(())
        } else {
            bail!("unknown config keys for this subcommand: {}", unknown.join(", "))
        }
    }
}

fn kind_of(value: &Value) -> &'static str {
    match value {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}
