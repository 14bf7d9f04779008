mod config;
mod out;

use clap::{Parser, Subcommand, ValueEnum};
use config::{ConfigFile, RunConfig};
use lbs_core::dispersion::band_edges;
use lbs_core::oracle::{self, default_margin, GridOperator};
use lbs_core::regions::{self, AxisRange, D3Reading};
use lbs_core::{
    band_edge_constants, AEvaluator, AFunctions, CouplingPair, Quasimomentum, Sector, SpectrumSolver,
};
use out::{fmt_g, num, nums, opt_u8, Report};
use serde_json::{json, Value};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "lbs", version, about = "Two-boson lattice bound states: a-functions, determinants, spectra and coupling-plane regions")]
struct Cli {
    /// JSON settings file; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Torus quadrature nodes per axis.
    #[arg(long, global = true)]
    quadrature_n: Option<usize>,
    /// Dense oracle grid size per axis.
    #[arg(long, visible_alias = "grid", global = true)]
    grid_n: Option<usize>,
    /// Distance below the band edge where the Bessel route takes over.
    #[arg(long, global = true)]
    edge_delta: Option<f64>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Below,
    Above,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    Minus,
    Plus,
}

#[derive(Clone, Copy, ValueEnum)]
enum SectorArg {
    S,
    A12,
    Mix,
}

#[derive(Subcommand)]
enum Cmd {
    /// Band edges of H(K).
    Band {
        #[arg(long = "K", default_value = "0,0,0", allow_hyphen_values = true)]
        k: String,
    },
    /// a-functions at z by both routes.
    Afuncs {
        #[arg(long, allow_hyphen_values = true)]
        z: f64,
        /// Quadrature nodes per axis for the torus route.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Band-edge constants.
    Consts,
    /// Determinants at z and the threshold polynomials.
    Det {
        #[arg(long, allow_hyphen_values = true)]
        mu1: f64,
        #[arg(long, allow_hyphen_values = true)]
        mu2: f64,
        #[arg(long, allow_hyphen_values = true)]
        z: f64,
    },
    /// Discrete spectrum of H(0).
    Spectrum {
        #[arg(long, allow_hyphen_values = true)]
        mu1: f64,
        #[arg(long, allow_hyphen_values = true)]
        mu2: f64,
        #[arg(long, value_enum, default_value = "both")]
        side: SideArg,
    },
    /// Sample an eigenfunction on a uniform grid as CSV.
    Eigenfunction {
        #[arg(long, allow_hyphen_values = true)]
        mu1: f64,
        #[arg(long, allow_hyphen_values = true)]
        mu2: f64,
        #[arg(long, allow_hyphen_values = true)]
        z: f64,
        #[arg(long, value_enum, default_value = "s")]
        sector: SectorArg,
        /// Samples per axis.
        #[arg(long, default_value_t = 16)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Region memberships of a coupling pair.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        mu1: f64,
        #[arg(long, allow_hyphen_values = true)]
        mu2: f64,
    },
    /// Region scan over a coupling grid, written as CSV.
    PhaseDiagram {
        #[arg(long, allow_hyphen_values = true)]
        mu1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        mu2: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Confirm every count with the determinant solver.
        #[arg(long)]
        verify: bool,
    },
    /// Critical curve samples as CSV.
    Curves {
        #[arg(long, value_enum)]
        side: BranchArg,
        #[arg(long, allow_hyphen_values = true)]
        mu1: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Determinant counts against the dense grid oracle.
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        mu1: f64,
        #[arg(long, allow_hyphen_values = true)]
        mu2: f64,
        #[arg(long = "K", default_value = "0,0,0", allow_hyphen_values = true)]
        k: String,
        #[arg(long, allow_hyphen_values = true)]
        margin: Option<f64>,
    },
}

enum Failure {
    Usage(String),
    Numeric(String),
}

impl From<lbs_core::Error> for Failure {
    fn from(e: lbs_core::Error) -> Self {
        if e.is_usage() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Numeric(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Numeric(format!("i/o error: {e}"))
    }
}

type Outcome = Result<Output, Failure>;

struct Output {
    text: String,
    /// Printed, but the run still counts as a numeric failure.
    failed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = init_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let cfg = match resolve_config(&cli) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match run(cli.cmd, &cfg) {
        Ok(o) => {
            // A closed pipe downstream is not an error of ours.
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(o.text.as_bytes()).and_then(|_| stdout.flush());
            if o.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

fn init_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("LBS_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| format!("LBS_THREADS must be a count, got `{v}`"))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn resolve_config(cli: &Cli) -> Result<RunConfig, String> {
    let file = match &cli.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let mut cfg = RunConfig::merge(file);
    if let Some(n) = cli.quadrature_n {
        cfg.quadrature_n = n;
    }
    if let Some(n) = cli.grid_n {
        cfg.grid_n = n;
    }
    if let Some(d) = cli.edge_delta {
        cfg.edge_delta = d;
    }
    cfg.json |= cli.json;
    cfg.validate()?;
    Ok(cfg)
}

fn parse_k(s: &str) -> Result<Quasimomentum, Failure> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Usage(format!("--K expects kx,ky,kz, got `{s}`")))?;
    match parts[..] {
        [a, b, c] if parts.iter().all(|x| x.is_finite()) => Ok(Quasimomentum::new(a, b, c)),
        _ => Err(Failure::Usage(format!("--K expects three finite angles, got `{s}`"))),
    }
}

fn couplings(mu1: f64, mu2: f64) -> Result<CouplingPair, Failure> {
    let c = CouplingPair::new(mu1, mu2);
    if !c.is_finite() {
        return Err(Failure::Usage("couplings must be finite".into()));
    }
    Ok(c)
}

fn solver(cfg: &RunConfig) -> Result<SpectrumSolver, Failure> {
    Ok(SpectrumSolver::new(AEvaluator::new(cfg.quadrature_n, cfg.edge_delta)?))
}

fn out_path(flag: Option<PathBuf>, cfg: &RunConfig) -> Result<PathBuf, Failure> {
    flag.or_else(|| cfg.out.clone()).ok_or_else(|| Failure::Usage("--out is required".into()))
}

fn afunc_json(a: &AFunctions) -> Value {
    json!({ "a11": num(a.a11), "a12": num(a.a12), "a22": num(a.a22), "a_a12": num(a.a_a12) })
}

fn done(report: Report, cfg: &RunConfig) -> Outcome {
    Ok(Output { text: report.render(cfg.json), failed: false })
}

fn run(cmd: Cmd, cfg: &RunConfig) -> Outcome {
    match cmd {
        Cmd::Band { k } => {
            let k = parse_k(&k)?;
            let b = band_edges(&k);
            let kc = k.components();
            done(
                Report::new(
                    json!({ "K": [num(kc[0]), num(kc[1]), num(kc[2])] }),
                    json!({ "e_min": num(b.e_min), "e_max": num(b.e_max) }),
                ),
                cfg,
            )
        }
        Cmd::Afuncs { z, n } => {
            let n = n.unwrap_or(cfg.quadrature_n);
            let ev = AEvaluator::new(n, cfg.edge_delta)?;
            let torus = ev.eval_torus(z)?;
            let bessel = ev.eval_bessel(z)?;
            let chosen = ev.eval(z)?;
            let [r1, r2] = chosen.identity_residuals(z);
            done(
                Report::new(
                    json!({ "z": num(z), "quadrature_n": n, "edge_delta": num(cfg.edge_delta) }),
                    json!({ "value": afunc_json(&chosen), "torus": afunc_json(&torus), "bessel": afunc_json(&bessel) }),
                )
                .with_diagnostics(json!({
                    "route_discrepancy": num(torus.max_abs_diff(&bessel)),
                    "identity_residuals": [num(r1), num(r2)],
                })),
                cfg,
            )
        }
        Cmd::Consts => {
            let k = band_edge_constants();
            done(
                Report::new(
                    json!({}),
                    json!({
                        "a11_0": num(k.a11),
                        "a12_0": num(k.a12),
                        "a22_0": num(k.a22),
                        "a_a12_0": num(k.a_a12),
                        "mu0": num(k.mu0),
                        "mu2_crit": num(k.mu2_crit),
                        "kappa": num(k.kappa()),
                    }),
                ),
                cfg,
            )
        }
        Cmd::Det { mu1, mu2, z } => {
            let c = couplings(mu1, mu2)?;
            let ev = AEvaluator::new(cfg.quadrature_n, cfg.edge_delta)?;
            let a = ev.eval(z)?;
            let t = lbs_core::determinant::threshold_polys(c);
            let (em, ep) = lbs_core::determinant::threshold_polys_expanded(c);
            done(
                Report::new(
                    json!({ "mu1": num(mu1), "mu2": num(mu2), "z": num(z) }),
                    json!({
                        "delta_s": num(lbs_core::determinant::delta_s_from(&a, c)),
                        "delta_a12": num(lbs_core::determinant::delta_a12_from(&a, mu2)),
                        "a_minus": num(t.a_minus),
                        "a_plus": num(t.a_plus),
                    }),
                )
                .with_diagnostics(json!({
                    "afunctions": afunc_json(&a),
                    "threshold_form_gap": num((t.a_minus - em).abs().max((t.a_plus - ep).abs())),
                })),
                cfg,
            )
        }
        Cmd::Spectrum { mu1, mu2, side } => spectrum(couplings(mu1, mu2)?, side, cfg),
        Cmd::Eigenfunction { mu1, mu2, z, sector, samples, out } => {
            eigenfunction(couplings(mu1, mu2)?, z, sector, samples, out_path(out, cfg)?, cfg)
        }
        Cmd::Classify { mu1, mu2 } => {
            let r = regions::classify(couplings(mu1, mu2)?);
            done(Report::new(json!({ "mu1": num(mu1), "mu2": num(mu2) }), region_json(&r)), cfg)
        }
        Cmd::PhaseDiagram { mu1, mu2, out, verify } => {
            let r1 = mu1.or_else(|| cfg.mu1_range.clone()).ok_or_else(|| Failure::Usage("--mu1 lo:hi:n is required".into()))?;
            let r2 = mu2.or_else(|| cfg.mu2_range.clone()).ok_or_else(|| Failure::Usage("--mu2 lo:hi:n is required".into()))?;
            phase_diagram(r1.parse()?, r2.parse()?, out_path(out, cfg)?, verify, cfg)
        }
        Cmd::Curves { side, mu1, out } => {
            let range: AxisRange = mu1.parse()?;
            let branch = match side {
                BranchArg::Minus => regions::Branch::Minus,
                BranchArg::Plus => regions::Branch::Plus,
            };
            let path = out_path(out, cfg)?;
            let mut csv = String::from("mu1,mu2_curve\n");
            let mut skipped = 0;
            for x in range.values() {
                match regions::critical_curve(branch, x) {
                    Ok(y) => csv.push_str(&format!("{},{}\n", fmt_g(x), fmt_g(y))),
                    Err(_) => skipped += 1,
                }
            }
            std::fs::write(&path, csv)?;
            done(
                Report::new(
                    json!({ "side": if matches!(side, BranchArg::Minus) { "minus" } else { "plus" }, "mu1": mu1 }),
                    json!({ "out": path.display().to_string(), "rows": range.n - skipped }),
                )
                .with_diagnostics(json!({ "pole_rows_skipped": skipped })),
                cfg,
            )
        }
        Cmd::Verify { mu1, mu2, k, margin } => {
            let c = couplings(mu1, mu2)?;
            let k = parse_k(&k)?;
            let margin = margin.unwrap_or_else(|| default_margin(cfg.grid_n));
            let rep = oracle::verify(&solver(cfg)?, c, k, cfg.grid_n, margin)?;
            let (ob, oa) = rep.oracle.counts();
            let roots: Vec<Value> = rep
                .roots
                .iter()
                .map(|r| json!({ "root": num(r.root), "nearest": num(r.nearest), "distance": num(r.distance) }))
                .collect();
            let kc = rep.k;
            let report = Report::new(
                json!({
                    "mu1": num(mu1), "mu2": num(mu2),
                    "K": [num(kc[0]), num(kc[1]), num(kc[2])],
                    "grid_n": cfg.grid_n, "margin": num(margin),
                }),
                json!({
                    "det_below": rep.det_below,
                    "det_above": rep.det_above,
                    "det_below_resolved": rep.det_below_resolved,
                    "det_above_resolved": rep.det_above_resolved,
                    "oracle_below": ob,
                    "oracle_above": oa,
                    "status": if rep.pass { "PASS" } else { "FAIL" },
                }),
            )
            .with_diagnostics(json!({
                "roots": roots,
                "oracle_levels_below": nums(&rep.oracle.below),
                "oracle_levels_above": nums(&rep.oracle.above),
                "band": [num(rep.oracle.band.e_min), num(rep.oracle.band.e_max)],
            }));
            Ok(Output { text: report.render(cfg.json), failed: !rep.pass })
        }
    }
}

fn spectrum(c: CouplingPair, side: SideArg, cfg: &RunConfig) -> Outcome {
    let sv = solver(cfg)?;
    let (s, a) = sv.sector_spectra(c)?;
    let full = sv.full_spectrum_zero_k(c)?;
    let (want_below, want_above) = match side {
        SideArg::Below => (true, false),
        SideArg::Above => (false, true),
        SideArg::Both => (true, true),
    };
    let sector = |below: &[f64], above: &[f64]| {
        let mut m = serde_json::Map::new();
        if want_below {
            m.insert("below".into(), nums(below));
        }
        if want_above {
            m.insert("above".into(), nums(above));
        }
        Value::Object(m)
    };
    let levels = |ls: &[lbs_core::spectrum::Level]| {
        Value::Array(
            ls.iter()
                .map(|l| {
                    json!({
                        "energy": num(l.energy),
                        "multiplicity": l.multiplicity,
                        "sector": l.sector.name(),
                        "coincident": l.coincident,
                    })
                })
                .collect(),
        )
    };
    let mut fm = serde_json::Map::new();
    if want_below {
        fm.insert("below".into(), levels(&full.below));
    }
    if want_above {
        fm.insert("above".into(), levels(&full.above));
    }
    let (nb, na) = full.counts();
    let coincident = full.below.iter().chain(&full.above).filter(|l| l.coincident).count();
    done(
        Report::new(
            json!({ "mu1": num(c.mu1), "mu2": num(c.mu2), "quadrature_n": cfg.quadrature_n, "edge_delta": num(cfg.edge_delta) }),
            json!({
                "s": sector(&s.below, &s.above),
                "a12": sector(&a.below, &a.above),
                "mix": sector(&a.below, &a.above),
                "full": Value::Object(fm),
                "count_below": nb,
                "count_above": na,
            }),
        )
        .with_diagnostics(json!({ "marginal": nums(&full.marginal), "coincident_levels": coincident })),
        cfg,
    )
}

fn eigenfunction(
    c: CouplingPair,
    z: f64,
    sector: SectorArg,
    samples: usize,
    path: PathBuf,
    cfg: &RunConfig,
) -> Outcome {
    if samples < 2 {
        return Err(Failure::Usage("--samples must be at least 2".into()));
    }
    let sv = solver(cfg)?;
    let (f, diag): (Box<dyn Fn([f64; 3]) -> f64>, Value) = match sector {
        SectorArg::S => {
            let e = sv.eigenfunction_s(c, z)?;
            let d = json!({
                "c1": num(e.c1), "c2": num(e.c2), "normalization": num(e.normalization),
                "degenerate": e.degenerate, "system_residual": num(e.system_residual()),
            });
            (Box::new(move |p| e.eval(p)), d)
        }
        SectorArg::A12 | SectorArg::Mix => {
            let s = if matches!(sector, SectorArg::A12) { Sector::A12 } else { Sector::Mix };
            let e = sv.eigenfunction_a12(c.mu2, z, s)?;
            let d = json!({ "normalization": num(e.normalization), "projection": num(e.projection()) });
            (Box::new(move |p| e.eval(p)), d)
        }
    };
    let h = 2.0 * std::f64::consts::PI / samples as f64;
    let xs: Vec<f64> = (0..samples).map(|k| -std::f64::consts::PI + (k as f64 + 0.5) * h).collect();
    let mut csv = String::from("p1,p2,p3,f\n");
    for &a in &xs {
        for &b in &xs {
            for &d in &xs {
                csv.push_str(&format!("{},{},{},{}\n", fmt_g(a), fmt_g(b), fmt_g(d), fmt_g(f([a, b, d]))));
            }
        }
    }
    std::fs::write(&path, csv)?;
    let mut diag = diag;
    if cfg.quadrature_n <= 64 {
        let op = GridOperator::new(c, Quasimomentum::ZERO, 32)?;
        let v = op.sample(|cp| f(cp.map(f64::acos)));
        diag["grid_residual_n32"] = num(op.relative_residual(&v, z));
    }
    done(
        Report::new(
            json!({ "mu1": num(c.mu1), "mu2": num(c.mu2), "z": num(z), "samples": samples }),
            json!({ "out": path.display().to_string(), "rows": samples.pow(3) }),
        )
        .with_diagnostics(diag),
        cfg,
    )
}

fn labels_json(l: regions::TableLabels) -> Value {
    json!({
        "d_minus": opt_u8(l.d_minus),
        "d_plus": opt_u8(l.d_plus),
        "g": l.g.map_or(Value::Null, |(a, b)| json!([a, b])),
    })
}

fn region_json(r: &regions::RegionReport) -> Value {
    json!({
        "a_minus": opt_u8(r.a_minus),
        "a_plus": opt_u8(r.a_plus),
        "b_minus": opt_u8(r.b_minus),
        "b_plus": opt_u8(r.b_plus),
        "sum_below": opt_u8(r.sum_below),
        "sum_above": opt_u8(r.sum_above),
        "flags": r.flags.to_string(),
        "table_on_axis": labels_json(r.labels(D3Reading::OnAxis)),
        "table_off_axis": labels_json(r.labels(D3Reading::OffAxis)),
        "exceeds_table": r.exceeds_table(),
    })
}

fn csv_opt<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(String::new, |v| v.to_string())
}

fn phase_diagram(r1: AxisRange, r2: AxisRange, path: PathBuf, verify: bool, cfg: &RunConfig) -> Outcome {
    let sv = if verify { Some(solver(cfg)?) } else { None };
    let scan = regions::phase_scan(r1, r2, sv.as_ref())?;
    let mut csv = String::from("mu1,mu2,a_minus,a_plus,b_minus,b_plus,sum_below,sum_above,det_below,det_above,flags\n");
    for row in &scan.rows {
        let r = &row.report;
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            fmt_g(r.couplings.mu1),
            fmt_g(r.couplings.mu2),
            csv_opt(r.a_minus),
            csv_opt(r.a_plus),
            csv_opt(r.b_minus),
            csv_opt(r.b_plus),
            csv_opt(r.sum_below),
            csv_opt(r.sum_above),
            csv_opt(row.det.map(|d| d.0)),
            csv_opt(row.det.map(|d| d.1)),
            r.flags,
        ));
    }
    std::fs::write(&path, csv)?;
    let anomalies: Vec<Value> = scan
        .anomalies()
        .map(|row| {
            let r = &row.report;
            json!({
                "mu1": num(r.couplings.mu1),
                "mu2": num(r.couplings.mu2),
                "sum_below": opt_u8(r.sum_below),
                "sum_above": opt_u8(r.sum_above),
                "table_on_axis": labels_json(r.on_axis),
                "table_off_axis": labels_json(r.off_axis),
            })
        })
        .collect();
    let mismatches = scan.mismatches().count();
    done(
        Report::new(
            json!({
                "mu1": format!("{}:{}:{}", fmt_g(r1.lo), fmt_g(r1.hi), r1.n),
                "mu2": format!("{}:{}:{}", fmt_g(r2.lo), fmt_g(r2.hi), r2.n),
                "verify": verify,
            }),
            json!({
                "out": path.display().to_string(),
                "rows": scan.rows.len(),
                "anomaly_count": anomalies.len(),
                "determinant_mismatches": if verify { Value::from(mismatches) } else { Value::Null },
            }),
        )
        .with_diagnostics(json!({ "anomalies": anomalies })),
        cfg,
    )
    .map(|o| Output { failed: mismatches > 0, ..o })
}
