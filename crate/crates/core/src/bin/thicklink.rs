use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use thicklink::curves::{
    euclidean_thickness, link_from_csv, link_from_json, link_to_json, ropelength,
    spherical_thickness, Ambient, DiscreteLink,
};
use thicklink::hopf_links::{
    lift_configuration, optimize_aspect, torus_knot_curve, TorusKnotSpec, DEFAULT_SWEEP_GRID,
    DEFAULT_SWEEP_SAMPLES,
};
use thicklink::lattice::{
    monte_carlo_density, paper_lattice, verify_nonoverlap, PackingSpec, PaperLattice,
};
use thicklink::mesh::{link_meshes, packing_meshes, write_obj, DEFAULT_SEGMENTS, DEFAULT_SIDES};
use thicklink::report::{paper_report, ReportOptions, Status};
use thicklink::revolved::{revolved_density_profile, revolved_mc_check};
use thicklink::s2_packing::{density_scan, optimize_maximin, MaximinOptions, S2Config};
use thicklink::{Error, Result};

#[derive(Parser)]
#[command(name = "thicklink", version, about = "Thickness of knots and links, and densities of tube packings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Thickness of a link read from JSON or CSV.
    Thickness {
        input: PathBuf,
        /// Check the file against this ambient space.
        #[arg(long, value_parser = ["r3", "s3"])]
        ambient: Option<String>,
    },
    /// Lift points on S² to Hopf fibers and measure the link.
    HopfLift {
        #[arg(long)]
        points: PathBuf,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        /// Also write the lifted link as JSON.
        #[arg(long)]
        curve_out: Option<PathBuf>,
    },
    /// (m, 2) torus knots on the Clifford torus.
    TorusKnot {
        #[arg(long, default_value_t = 3)]
        m: u32,
        #[arg(long, default_value_t = 0.6)]
        aspect: f64,
        #[arg(long, default_value_t = DEFAULT_SWEEP_SAMPLES)]
        samples: usize,
        /// Sweep the aspect ratio instead of evaluating one.
        #[arg(long)]
        sweep: bool,
        #[arg(long, default_value_t = DEFAULT_SWEEP_GRID)]
        grid: usize,
    },
    /// Maximin points on S² and their cap densities.
    Tammes {
        /// Scan n = 3..=n-max.
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        /// Optimize a single n and output its configuration.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        #[arg(long, default_value_t = 3000)]
        iters: usize,
    },
    /// Lattice packings of bialys.
    Lattice {
        #[command(subcommand)]
        action: LatticeAction,
    },
    /// Packings of revolution.
    Revolved {
        #[command(subcommand)]
        action: RevolvedAction,
    },
    /// Reproduce every checked quantity in one table.
    PaperReport {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
    },
    /// Write tube surfaces as an OBJ mesh (requires --out).
    ExportMesh {
        #[command(flatten)]
        packing: PackingArgs,
        /// A link file instead of a packing.
        #[arg(long, conflicts_with_all = ["id", "spec"])]
        curve: Option<PathBuf>,
        /// Lattice cells per axis.
        #[arg(long, default_value_t = 1)]
        block: usize,
        #[arg(long, default_value_t = DEFAULT_SEGMENTS)]
        segments: usize,
        #[arg(long, default_value_t = DEFAULT_SIDES)]
        sides: usize,
        /// Tube radius for links (default from the link's thickness).
        #[arg(long)]
        radius: Option<f64>,
    },
}

#[derive(Args)]
struct PackingArgs {
    #[arg(long)]
    id: Option<PaperLattice>,
    /// Packing spec JSON.
    #[arg(long)]
    spec: Option<PathBuf>,
}

impl PackingArgs {
    fn load(&self) -> Result<Option<PackingSpec>> {
        match (&self.id, &self.spec) {
            (Some(id), _) => Ok(Some(paper_lattice(*id))),
            (None, Some(path)) => Ok(Some(serde_json::from_str(&read(path)?)?)),
            (None, None) => Ok(None),
        }
    }

    fn require(&self) -> Result<PackingSpec> {
        self.load()?
            .ok_or_else(|| Error::InvalidArgument("give --id or --spec".into()))
    }
}

#[derive(Subcommand)]
enum LatticeAction {
    /// Check that no two tubes overlap.
    Verify {
        #[command(flatten)]
        packing: PackingArgs,
        #[arg(long)]
        cutoff: Option<f64>,
    },
    /// Exact density of a certified packing.
    Density {
        #[command(flatten)]
        packing: PackingArgs,
    },
    /// Exact and Monte Carlo density.
    Mc {
        #[command(flatten)]
        packing: PackingArgs,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum RevolvedAction {
    Profile {
        #[arg(long, default_value_t = 10)]
        rows: usize,
    },
    Mc {
        #[arg(long, default_value_t = 1)]
        rows: usize,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

/// Command output in all three formats.
struct Output {
    metadata: Value,
    /// Extra top-level JSON fields.
    json: Value,
    headers: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Output {
    fn render(&self, format: Format) -> Result<String> {
        Ok(match format {
            Format::Json => {
                let mut v = self.json.clone();
                v["metadata"] = self.metadata.clone();
                serde_json::to_string_pretty(&v)? + "\n"
            }
            Format::Csv => {
                let mut out = String::new();
                if let Value::Object(m) = &self.metadata {
                    for (k, v) in m {
                        out += &format!("# {k}={v}\n");
                    }
                }
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.headers)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                out += &String::from_utf8(w.into_inner().map_err(|e| e.into_error())?)
                    .expect("utf-8");
                out
            }
            Format::Table => {
                let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
                for r in &self.rows {
                    for (w, c) in widths.iter_mut().zip(r) {
                        *w = (*w).max(c.chars().count());
                    }
                }
                let line = |cells: Vec<&str>| {
                    cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:>w$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                        .trim_end()
                        .to_string()
                        + "\n"
                };
                let mut out = format!("# {}\n", self.metadata);
                out += &line(self.headers.clone());
                for r in &self.rows {
                    out += &line(r.iter().map(String::as_str).collect());
                }
                out
            }
        })
    }
}

fn metadata(extra: Value) -> Value {
    let mut m = json!({ "version": env!("CARGO_PKG_VERSION") });
    if let (Value::Object(m), Value::Object(e)) = (&mut m, extra) {
        m.extend(e);
    }
    m
}

fn read(path: &Path) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

fn read_link(path: &Path) -> Result<DiscreteLink> {
    let text = read(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => link_from_csv(&text),
        _ => link_from_json(&text),
    }
}

fn f(x: f64) -> String {
    format!("{x:?}")
}

fn kv(rows: &[(&str, String)]) -> Vec<Vec<String>> {
    rows.iter().map(|(k, v)| vec![k.to_string(), v.clone()]).collect()
}

fn thickness_cmd(input: &Path, ambient: Option<&str>) -> Result<Output> {
    let link = read_link(input)?;
    if let Some(want) = ambient {
        if want != link.ambient().name() {
            return Err(Error::AmbientMismatch {
                expected: if want == "r3" { "r3" } else { "s3" },
                got: link.ambient().name(),
            });
        }
    }
    let meta = metadata(json!({ "input": input.display().to_string() }));
    let base = vec![
        ("ambient", link.ambient().name().to_string()),
        ("components", link.components().len().to_string()),
        ("samples", link.total_samples().to_string()),
        ("length", f(link.length())),
    ];
    Ok(match link.ambient() {
        Ambient::Euclidean => {
            let t = euclidean_thickness(&link)?;
            let rl = ropelength(&link)?;
            let mut rows = base;
            rows.push(("thickness", f(t)));
            rows.push(("ropelength", f(rl)));
            Output {
                metadata: meta,
                json: json!({ "ambient": "r3", "length": link.length(), "thickness": t, "ropelength": rl }),
                headers: vec!["quantity", "value"],
                rows: kv(&rows),
            }
        }
        Ambient::Spherical => {
            let t = spherical_thickness(&link)?;
            let great = if t <= FRAC_PI_2 + 1e-12 { "within great-circle bound π/2" } else { "exceeds π/2" };
            let hopf = if (t - FRAC_PI_4).abs() <= 1e-3 {
                "attains Hopf bound π/4"
            } else if t < FRAC_PI_4 {
                "below Hopf bound π/4"
            } else {
                "above π/4: link must be split or a knot that is trivial"
            };
            let mut rows = base;
            rows.push(("thickness", f(t)));
            rows.push(("great_circle_bound", great.into()));
            rows.push(("hopf_bound", hopf.into()));
            Output {
                metadata: meta,
                json: json!({ "ambient": "s3", "length": link.length(), "thickness": t,
                              "great_circle_bound": great, "hopf_bound": hopf }),
                headers: vec!["quantity", "value"],
                rows: kv(&rows),
            }
        }
    })
}

fn hopf_lift_cmd(points: &Path, samples: usize, curve_out: Option<&Path>) -> Result<Output> {
    let vs: Vec<[f64; 3]> = serde_json::from_str(&read(points)?)?;
    let base = S2Config::from_vectors(&vs)?;
    let h = lift_configuration(&base, samples)?;
    let sampled = spherical_thickness(h.link())?;
    if let Some(path) = curve_out {
        fs::write(path, link_to_json(h.link())?)?;
    }
    let rows = vec![
        ("fibers", h.fibers().len().to_string()),
        ("samples_per_fiber", samples.to_string()),
        ("closed_form", f(h.closed_form_thickness())),
        ("fiber_separation", f(h.fiber_separation_thickness())),
        ("sampled", f(sampled)),
    ];
    Ok(Output {
        metadata: metadata(json!({ "points": points.display().to_string(), "samples": samples })),
        json: json!({ "closed_form": h.closed_form_thickness(),
                      "fiber_separation": h.fiber_separation_thickness(), "sampled": sampled }),
        headers: vec!["quantity", "value"],
        rows: kv(&rows),
    })
}

fn torus_knot_cmd(m: u32, aspect: f64, samples: usize, sweep: bool, grid: usize) -> Result<Output> {
    if sweep {
        let opt = optimize_aspect(m, samples, grid)?;
        let rows = opt.sweep.iter().map(|(a, t)| vec![f(*a), f(*t)]).collect();
        return Ok(Output {
            metadata: metadata(json!({ "m": m, "samples": samples, "grid": grid,
                                       "a_star": opt.aspect, "thickness_star": opt.thickness })),
            json: serde_json::to_value(&opt)?,
            headers: vec!["a", "thickness"],
            rows,
        });
    }
    let spec = TorusKnotSpec::new(m, aspect, samples)?;
    let curve = torus_knot_curve(&spec)?;
    let link = DiscreteLink::knot(curve);
    let t = spherical_thickness(&link)?;
    Ok(Output {
        metadata: metadata(json!({ "m": m, "aspect": aspect, "samples": samples })),
        json: json!({ "thickness": t, "curve": serde_json::from_str::<Value>(&link_to_json(&link)?)? }),
        headers: vec!["a", "thickness"],
        rows: vec![vec![f(aspect), f(t)]],
    })
}

fn tammes_cmd(n_max: usize, n: Option<usize>, opts: MaximinOptions) -> Result<Output> {
    let meta = metadata(json!({ "seed": opts.seed, "restarts": opts.restarts, "iters": opts.iters,
        "note": "r_hat is a lower bound for r_n, so rho_hat below pi/sqrt(12) is evidence, not proof" }));
    if let Some(n) = n {
        let res = optimize_maximin(n, &opts)?;
        let pts: Vec<[f64; 3]> = res.config.points().iter().map(|p| *p.as_array()).collect();
        return Ok(Output {
            metadata: meta,
            json: json!({ "n": n, "r_hat": res.summary.radius, "rho_hat": res.summary.density,
                          "converged": res.converged, "points": pts }),
            headers: vec!["n", "r_hat", "rho_hat", "converged"],
            rows: vec![vec![n.to_string(), f(res.summary.radius), f(res.summary.density), res.converged.to_string()]],
        });
    }
    let scan = density_scan(n_max, &opts)?;
    let rows = scan
        .iter()
        .map(|r| vec![r.n.to_string(), f(r.r_hat), f(r.rho_hat), r.converged.to_string()])
        .collect();
    Ok(Output {
        metadata: meta,
        json: json!({ "rows": scan }),
        headers: vec!["n", "r_hat", "rho_hat", "converged"],
        rows,
    })
}

fn lattice_cmd(action: &LatticeAction) -> Result<(Output, Status)> {
    match action {
        LatticeAction::Verify { packing, cutoff } => {
            let spec = packing.require()?;
            let r = verify_nonoverlap(&spec, *cutoff)?;
            let status = if r.certified() { Status::Pass } else { Status::Fail };
            let rows = r
                .contacts
                .iter()
                .map(|p| ("contact", p))
                .chain(r.violations.iter().map(|p| ("overlap", p)))
                .map(|(kind, p)| {
                    vec![kind.into(), p.core_a.to_string(), p.core_b.to_string(),
                         format!("{:?}", p.translate), f(p.distance), f(p.gap)]
                })
                .collect();
            Ok((
                Output {
                    metadata: metadata(json!({ "cutoff": r.cutoff, "pairs_checked": r.pairs_checked,
                                               "min_gap": r.min_gap, "certified": r.certified() })),
                    json: serde_json::to_value(&r)?,
                    headers: vec!["kind", "core_a", "core_b", "translate", "distance", "gap"],
                    rows,
                },
                status,
            ))
        }
        LatticeAction::Density { packing } => {
            let spec = packing.require()?;
            let volume = spec.cell_volume();
            let p = spec.certify(None)?;
            let d = thicklink::lattice::analytic_density(&p);
            Ok((
                Output {
                    metadata: metadata(json!({})),
                    json: json!({ "cell_volume": volume, "analytic": d }),
                    headers: vec!["cell_volume", "analytic"],
                    rows: vec![vec![f(volume), f(d)]],
                },
                Status::Pass,
            ))
        }
        LatticeAction::Mc { packing, samples, seed } => {
            let p = packing.require()?.certify(None)?;
            let r = monte_carlo_density(&p, *samples, *seed)?;
            let e = r.monte_carlo;
            Ok((
                Output {
                    metadata: metadata(json!({ "samples": samples, "seed": seed })),
                    json: serde_json::to_value(r)?,
                    headers: vec!["analytic", "monte_carlo", "half_width_99", "std_error"],
                    rows: vec![vec![f(r.analytic), f(e.value), f(e.half_width), f(e.std_error)]],
                },
                Status::Pass,
            ))
        }
    }
}

fn revolved_cmd(action: &RevolvedAction) -> Result<Output> {
    match action {
        RevolvedAction::Profile { rows } => {
            let p = revolved_density_profile(*rows)?;
            let table = p
                .iter()
                .map(|r| vec![r.row.to_string(), f(r.cell_density), f(r.cumulative)])
                .collect();
            Ok(Output {
                metadata: metadata(json!({ "rows": rows })),
                json: json!({ "profile": p }),
                headers: vec!["row", "cell_density", "cumulative"],
                rows: table,
            })
        }
        RevolvedAction::Mc { rows, samples, seed } => {
            let p = revolved_density_profile(*rows)?;
            let e = revolved_mc_check(*rows, *samples, *seed)?;
            let exact = p[rows - 1].cumulative;
            Ok(Output {
                metadata: metadata(json!({ "rows": rows, "samples": samples, "seed": seed })),
                json: json!({ "pappus": exact, "monte_carlo": e }),
                headers: vec!["pappus", "monte_carlo", "half_width_99", "std_error"],
                rows: vec![vec![f(exact), f(e.value), f(e.half_width), f(e.std_error)]],
            })
        }
    }
}

fn export_mesh_cmd(cli: &Cli) -> Result<String> {
    let Command::ExportMesh { packing, curve, block, segments, sides, radius } = &cli.command else {
        unreachable!()
    };
    let path = cli
        .out
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("export-mesh needs --out".into()))?;
    let meshes = if let Some(curve) = curve {
        link_meshes(&read_link(curve)?, *radius, *segments, *sides)?
    } else {
        let p = packing.require()?.certify(None)?;
        packing_meshes(&p, *block, *segments, *sides)?.1
    };
    let file = fs::File::create(path)?;
    write_obj(std::io::BufWriter::new(file), &meshes, &[])?;
    let triangles: usize = meshes.iter().map(|m| m.triangles.len()).sum();
    Ok(format!("wrote {} tubes, {triangles} triangles to {}\n", meshes.len(), path.display()))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Overlap { .. } | Error::NoConvergence { .. } | Error::Inconsistent { .. } | Error::Overfull { .. } => 1,
        _ => 3,
    }
}

fn run(cli: &Cli) -> Result<Status> {
    let (output, status) = match &cli.command {
        Command::Thickness { input, ambient } => (thickness_cmd(input, ambient.as_deref())?, Status::Pass),
        Command::HopfLift { points, samples, curve_out } => {
            (hopf_lift_cmd(points, *samples, curve_out.as_deref())?, Status::Pass)
        }
        Command::TorusKnot { m, aspect, samples, sweep, grid } => {
            (torus_knot_cmd(*m, *aspect, *samples, *sweep, *grid)?, Status::Pass)
        }
        Command::Tammes { n_max, n, seed, restarts, iters } => {
            let opts = MaximinOptions { seed: *seed, restarts: *restarts, iters: *iters };
            (tammes_cmd(*n_max, *n, opts)?, Status::Pass)
        }
        Command::Lattice { action } => lattice_cmd(action)?,
        Command::Revolved { action } => (revolved_cmd(action)?, Status::Pass),
        Command::PaperReport { seed, samples } => {
            let r = paper_report(&ReportOptions { seed: *seed, samples: *samples })?;
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&json!({
                    "metadata": r.metadata, "rows": r.rows, "status": r.status() }))? + "\n",
                Format::Csv => r.to_csv()?,
                Format::Table => r.to_table(),
            };
            emit(cli, &text)?;
            return Ok(r.status());
        }
        Command::ExportMesh { .. } => {
            print!("{}", export_mesh_cmd(cli)?);
            return Ok(Status::Pass);
        }
    };
    emit(cli, &output.render(cli.format)?)?;
    Ok(status)
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(status) => ExitCode::from(status.exit_code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
