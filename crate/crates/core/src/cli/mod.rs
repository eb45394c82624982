//! Command-line front end: scenario files in, result JSON (and optional SVG) out.
//!
//! Exit codes: 0 success, 1 malformed input, 2 a negative answer (points not
//! equilateral, no extension found, an extendable configuration, a failed
//! reproduction criterion), 3 solver or internal failure.

pub mod figure;
pub mod reproduce;

use std::ffi::OsString;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::equilateral::{
    audit_vertex_certificate, diff_polytope_vertex_check, extend_numeric, generate, verify_equilateral,
    verify_equilateral_exact, ExtendConfig, ExtendStatus, GeneratorKind, VertexCertificate,
};
use crate::error::{Error, Result};
use crate::exactcert::{
    audit_certificate, l1_maximality_check, l1_maximality_general, MaximalityCertificate, Verdict,
};
use crate::norms::{check_sandwich, smooth_approx, NormBall, NormSpec, SmoothingParams};
use crate::petty3d::{petty_extend, ExtensionResult, PettyConfig};
use crate::planar::{
    circumcircle_equilateral, inscribe_homothet_2d_with, InscribeOptions, PlanarConfig, Triangle2D,
};
use crate::rational::{self, ExactNum, RVec};
use figure::{norm_circle, polyline, FigureSpec, Layer};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "petty", version, about = "Equilateral sets in finite-dimensional normed spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a point set is equilateral in a norm.
    Verify {
        #[command(flatten)]
        io: ScenarioArgs,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Emit a standard equilateral family.
    Generate {
        /// euclidean-simplex, linf-cube, l1-crosspolytope or petty-l1.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Search numerically for one more point at the common distance.
    ExtendNumeric {
        #[command(flatten)]
        io: ScenarioArgs,
        /// Common distance; defaults to the measured one.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 32)]
        starts: usize,
    },
    /// Extend an equilateral triangle in a 3-D norm to a quadruple.
    Extend3 {
        #[command(flatten)]
        io: ScenarioArgs,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        /// Plot of r(t) over the sweep.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Circumcircle of radius at most p through a planar equilateral triple.
    Circumcircle {
        #[command(flatten)]
        io: ScenarioArgs,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Inscribe a homothet of a triangle in the unit ball of a planar norm.
    Inscribe {
        #[command(flatten)]
        io: ScenarioArgs,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        anchor: usize,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Certify that all pairwise differences of affinely independent points are vertices.
    #[command(alias = "lemma7")]
    DiffVertices {
        #[command(flatten)]
        io: ScenarioArgs,
    },
    /// Exact certificate for (non-)extendability of an l1 equilateral set.
    CertifyL1 {
        /// Dimension of the built-in four-point configuration.
        #[arg(long, conflicts_with = "points")]
        n: Option<usize>,
        /// JSON list of rational points, inline or a file.
        #[arg(long)]
        points: Option<PathBuf>,
        /// Common distance for --points, e.g. 2 or 3/2.
        #[arg(long)]
        p: Option<String>,
        /// Maximal number of exact LP solves.
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Re-check a certificate written by certify-l1 or diff-vertices.
    AuditCert {
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Smooth strictly convex approximation keeping anchor vectors on the unit sphere.
    Smooth {
        #[command(flatten)]
        io: ScenarioArgs,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run every reproduction criterion and write a summary table.
    ReproduceAll {
        #[arg(long, default_value = "reproduce-out")]
        out: PathBuf,
        /// Scale the instance counts down for a fast smoke run.
        #[arg(long)]
        quick: bool,
        /// Override the solver tolerances (reported as configuration drift).
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Where the norm and points come from and where the result goes.
#[derive(Debug, Clone, Args)]
pub struct ScenarioArgs {
    /// JSON file with `norm`, `points` and optional `p`.
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    /// JSON norm description (inline or a file); overrides the scenario's.
    #[arg(long)]
    pub norm: Option<PathBuf>,
    /// JSON list of points (numbers or "p/q" strings, inline or a file); overrides the scenario's.
    #[arg(long)]
    pub points: Option<PathBuf>,
    /// Write the result here instead of standard output.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

/// Input of a command: a norm, a point list and an optional common distance.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm: Option<NormSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Vec<ExactNum>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<ExactNum>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PointsFile {
    List(Vec<Vec<ExactNum>>),
    Wrapped { points: Vec<Vec<ExactNum>> },
}

impl ScenarioArgs {
    fn load(&self) -> Result<Scenario> {
        let mut sc: Scenario = match &self.scenario {
            Some(path) => parse_json(path)?,
            None => Scenario::default(),
        };
        if let Some(path) = &self.norm {
            sc.norm = Some(parse_json(path)?);
        }
        if let Some(path) = &self.points {
            sc.points = Some(match parse_json::<PointsFile>(path)? {
                PointsFile::List(v) | PointsFile::Wrapped { points: v } => v,
            });
        }
        Ok(sc)
    }
}

impl Scenario {
    fn norm(&self) -> Result<&NormSpec> {
        self.norm
            .as_ref()
            .ok_or_else(|| Error::input("a norm is required (--norm or scenario field `norm`)"))
    }

    fn exact_points(&self) -> Result<Vec<RVec>> {
        let pts = self
            .points
            .as_ref()
            .ok_or_else(|| Error::input("points are required (--points or scenario field `points`)"))?;
        Ok(pts.iter().map(|p| p.iter().map(|e| e.0.clone()).collect()).collect())
    }

    fn points(&self) -> Result<Vec<Vec<f64>>> {
        Ok(self.exact_points()?.iter().map(|p| rational::vec_to_f64(p)).collect())
    }

    fn points_of_dim(&self, dim: usize, count: usize) -> Result<Vec<Vec<f64>>> {
        let pts = self.points()?;
        if pts.len() != count || pts.iter().any(|p| p.len() != dim) {
            return Err(Error::input(format!("expected {count} points of dimension {dim}")));
        }
        Ok(pts)
    }
}

/// Parses `path` as inline JSON when it starts with `{` or `[`, else reads the file.
fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let arg = path.to_string_lossy();
    if arg.trim_start().starts_with(['{', '[']) {
        return serde_json::from_str(&arg).map_err(|e| Error::input(format!("inline JSON: {e}")));
    }
    let text = fs::read_to_string(path).map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::input(format!("{}: {e}", path.display())))
}

/// Result of one command before it is written out.
pub struct Outcome {
    pub command: &'static str,
    pub config: Value,
    pub result: Value,
    /// 0 or 2.
    pub exit: i32,
    pub svg: Option<(PathBuf, String)>,
    pub json_path: Option<PathBuf>,
}

impl Outcome {
    fn new(command: &'static str, config: Value, result: impl Serialize, negative: bool) -> Result<Self> {
        Ok(Self {
            command,
            config,
            result: to_value(result)?,
            exit: if negative { 2 } else { 0 },
            svg: None,
            json_path: None,
        })
    }

    pub fn envelope(&self) -> Value {
        json!({
            "command": self.command,
            "version": VERSION,
            "config": self.config,
            "result": self.result,
        })
    }
}

fn to_value(x: impl Serialize) -> Result<Value> {
    serde_json::to_value(x).map_err(|e| Error::internal(format!("serialization failed: {e}")))
}

/// Parses arguments, runs the command and writes its output. Returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(cli.command).and_then(write_outcome) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn write_outcome(out: Outcome) -> Result<i32> {
    let text = serde_json::to_string_pretty(&out.envelope()).map_err(|e| Error::internal(e.to_string()))?;
    let io = |e: std::io::Error| Error::input(format!("cannot write output: {e}"));
    match &out.json_path {
        Some(path) => fs::write(path, text + "\n").map_err(io)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{text}").map_err(io)?;
        }
    }
    if let Some((path, svg)) = &out.svg {
        fs::write(path, svg).map_err(io)?;
    }
    Ok(out.exit)
}

pub fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Verify { io, tol } => {
            let sc = io.load()?;
            let norm = sc.norm()?;
            let exact = sc.exact_points()?;
            let cert = if norm.is_polyhedral() {
                verify_equilateral_exact(norm, &exact, tol)?
            } else {
                verify_equilateral(norm, &sc.points()?, tol)?
            };
            let config = json!({ "norm": norm, "tol": tol, "point_count": exact.len() });
            let negative = !cert.valid;
            Ok(Outcome::new("verify", config, cert, negative)?.with_json(io.json))
        }
        Command::Generate { kind, n, tol, json } => {
            let kind: GeneratorKind = kind.parse()?;
            let set = generate(kind, n)?;
            let cert = match &set.exact {
                Some(e) => verify_equilateral_exact(&set.norm, e, tol)?,
                None => verify_equilateral(&set.norm, &set.points, tol)?,
            };
            let negative = !cert.valid;
            let result = json!({ "set": set, "certificate": cert });
            Ok(Outcome::new("generate", json!({ "kind": kind, "n": n, "tol": tol }), result, negative)?.with_json(json))
        }
        Command::ExtendNumeric { io, p, tol, seed, starts } => {
            let sc = io.load()?;
            let norm = sc.norm()?;
            let pts = sc.points()?;
            let p = match p.or_else(|| sc.p.as_ref().map(|e| rational::to_f64(&e.0))) {
                Some(p) => p,
                None => verify_equilateral(norm, &pts, 1e-6)?.p,
            };
            let cfg = ExtendConfig {
                tol,
                seed,
                starts,
                ..ExtendConfig::default()
            };
            let out = extend_numeric(norm, &pts, p, &cfg)?;
            let negative = out.status != ExtendStatus::Found;
            let config = json!({ "norm": norm, "points": pts, "p": p, "extend": cfg });
            Ok(Outcome::new("extend-numeric", config, out, negative)?.with_json(io.json))
        }
        Command::Extend3 { io, tol, seed, grid, svg } => {
            let sc = io.load()?;
            let norm = sc.norm()?;
            let pts = sc.points_of_dim(3, 3)?;
            let cfg = PettyConfig {
                tol,
                seed,
                grid_size: grid,
                ..PettyConfig::default()
            };
            let res = petty_extend(norm, &pts[0], &pts[1], &pts[2], &cfg)?;
            let config = json!({ "norm": norm, "points": pts, "petty": cfg });
            let figure = svg.map(|path| sweep_figure(&res).and_then(|f| f.render()).map(|s| (path, s))).transpose()?;
            let mut out = Outcome::new("extend3", config, &res, false)?.with_json(io.json);
            out.svg = figure;
            Ok(out)
        }
        Command::Circumcircle { io, tol, svg } => {
            let sc = io.load()?;
            let norm = sc.norm()?;
            let pts = sc.points_of_dim(2, 3)?;
            let v: Vec<[f64; 2]> = pts.iter().map(|p| [p[0], p[1]]).collect();
            let cfg = PlanarConfig {
                tol,
                ..PlanarConfig::default()
            };
            let cc = circumcircle_equilateral(norm, v[0], v[1], v[2], &cfg)?;
            let figure = match svg {
                Some(path) => {
                    let ring = norm_circle(norm, cc.center, cc.radius, 720);
                    let mut fig = FigureSpec::around(ring.iter().chain(&v));
                    fig.layers.push(polyline(ring, true, "#1f5fa8", 1.5));
                    fig.layers.push(polyline(v.clone(), true, "#444444", 1.0));
                    fig.layers.push(Layer::Markers {
                        points: v.clone(),
                        labels: vec!["a".into(), "b".into(), "c".into()],
                        fill: "#b22222".into(),
                    });
                    fig.layers.push(Layer::Markers {
                        points: vec![cc.center],
                        labels: vec!["s".into()],
                        fill: "#1f5fa8".into(),
                    });
                    Some((path, fig.render()?))
                }
                None => None,
            };
            let config = json!({ "norm": norm, "points": pts, "planar": cfg });
            let mut out = Outcome::new("circumcircle", config, &cc, false)?.with_json(io.json);
            out.svg = figure;
            Ok(out)
        }
        Command::Inscribe { io, tol, anchor, svg } => {
            let sc = io.load()?;
            let norm = sc.norm()?;
            let pts = sc.points_of_dim(2, 3)?;
            let tri = Triangle2D::new([pts[0][0], pts[0][1]], [pts[1][0], pts[1][1]], [pts[2][0], pts[2][1]])?;
            let cfg = PlanarConfig {
                tol,
                ..PlanarConfig::default()
            };
            let ball = NormBall::new(norm)?;
            let sol = inscribe_homothet_2d_with(&ball, &tri, &cfg, &InscribeOptions { anchor, hint: None })?;
            let verts = sol.vertices(&tri);
            let figure = match svg {
                Some(path) => {
                    let ring = norm_circle(norm, [0.0, 0.0], 1.0, 720);
                    let mut fig = FigureSpec::around(ring.iter().chain(&verts));
                    fig.layers.push(polyline(ring, true, "#1f5fa8", 1.5));
                    fig.layers.push(polyline(verts.to_vec(), true, "#b22222", 1.2));
                    fig.layers.push(Layer::Markers {
                        points: verts.to_vec(),
                        labels: vec!["p1".into(), "p2".into(), "p3".into()],
                        fill: "#b22222".into(),
                    });
                    Some((path, fig.render()?))
                }
                None => None,
            };
            let config = json!({ "norm": norm, "triangle": tri, "anchor": anchor, "planar": cfg });
            let result = json!({ "homothet": sol, "vertices": verts });
            let mut out = Outcome::new("inscribe", config, result, false)?.with_json(io.json);
            out.svg = figure;
            Ok(out)
        }
        Command::DiffVertices { io } => {
            let sc = io.load()?;
            let pts = sc.exact_points()?;
            let cert = diff_polytope_vertex_check(&pts)?;
            let checked = audit_vertex_certificate(&cert)?;
            let negative = !cert.all_vertices();
            let result = json!({ "certificate": cert, "audited_pairs": checked });
            Ok(Outcome::new("diff-vertices", json!({ "point_count": pts.len() }), result, negative)?.with_json(io.json))
        }
        Command::CertifyL1 { n, points, p, cap, json } => {
            let cert = match (n, points) {
                (Some(n), None) => l1_maximality_check(n, cap)?,
                (None, Some(path)) => {
                    let pts: Vec<RVec> = match parse_json::<PointsFile>(&path)? {
                        PointsFile::List(v) | PointsFile::Wrapped { points: v } => {
                            v.into_iter().map(|p| p.into_iter().map(|e| e.0).collect()).collect()
                        }
                    };
                    let p = p.ok_or_else(|| Error::input("--points needs --p"))?;
                    l1_maximality_general(&pts, &rational::parse_rational(&p)?, cap)?
                }
                _ => return Err(Error::input("give either --n or --points with --p")),
            };
            audit_certificate(&cert)?;
            let negative = cert.verdict == Verdict::Extendable;
            let config = json!({ "n": cert.n, "p": rational::format_rational(&cert.p), "cap": cap });
            Ok(Outcome::new("certify-l1", config, cert, negative)?.with_json(json))
        }
        Command::AuditCert { cert, json } => {
            let value: Value = parse_json(&cert)?;
            let body = value.get("result").cloned().unwrap_or(value);
            let body = body.get("certificate").cloned().unwrap_or(body);
            let result = if let Ok(c) = serde_json::from_value::<MaximalityCertificate>(body.clone()) {
                json!({ "kind": "l1-maximality", "audit": audit_certificate(&c)? })
            } else if let Ok(c) = serde_json::from_value::<VertexCertificate>(body) {
                json!({ "kind": "vertex", "audited_pairs": audit_vertex_certificate(&c)? })
            } else {
                return Err(Error::input("file holds neither a maximality nor a vertex certificate"));
            };
            Ok(Outcome::new("audit-cert", json!({ "cert": cert }), result, false)?.with_json(json))
        }
        Command::Smooth { io, epsilon, samples, seed } => {
            let sc = io.load()?;
            let norm = sc.norm()?;
            let anchors = match &sc.points {
                Some(_) => sc.points()?,
                None => Vec::new(),
            };
            let params = SmoothingParams {
                epsilon,
                sample_count: samples,
                seed,
                ..SmoothingParams::default()
            };
            let smoothed = smooth_approx(norm, &anchors, &params)?;
            let (lo, hi) = check_sandwich(norm, &smoothed, epsilon, samples, seed ^ 0x5eed)
                .map_err(|(x, ratio)| Error::Smoothing(format!("sandwich fails at {x:?} (ratio {ratio})")))?;
            let anchor_norms: Vec<f64> = anchors.iter().map(|a| smoothed.eval(a)).collect();
            let result = json!({
                "norm": smoothed,
                "sandwich": { "min_ratio": lo, "max_ratio": hi, "samples": samples },
                "anchor_norms": anchor_norms,
            });
            let config = json!({ "norm": norm, "anchors": anchors, "smoothing": params });
            Ok(Outcome::new("smooth", config, result, false)?.with_json(io.json))
        }
        Command::ReproduceAll { out, quick, tol, seed } => {
            let cfg = reproduce::ReproduceConfig {
                scale: if quick { reproduce::QUICK_SCALE } else { 1.0 },
                tol_override: tol,
                seed,
            };
            let summary = reproduce::reproduce_all(&out, &cfg)?;
            let negative = !summary.all_pass;
            let mut o = Outcome::new("reproduce-all", to_value(&cfg)?, &summary, negative)?;
            o.json_path = Some(out.join("result.json"));
            eprint!("{}", summary.table());
            Ok(o)
        }
    }
}

impl Outcome {
    fn with_json(mut self, path: Option<PathBuf>) -> Self {
        self.json_path = path;
        self
    }
}

/// Plot of `r(t)` over the sweep with the level `r = 1` and the chosen offset.
pub fn sweep_figure(res: &ExtensionResult) -> Result<FigureSpec> {
    let s = &res.sweep;
    let pts: Vec<[f64; 2]> = s.samples.iter().map(|x| [x.t, x.r]).collect();
    let frame = [[s.t_lo, 0.0], [s.t_hi, 0.0], [s.t_lo, 1.0], [s.t_hi, 1.0]];
    let mut fig = FigureSpec::around(pts.iter().chain(frame.iter()));
    fig.layers.push(polyline(vec![[s.t_lo, 0.0], [s.t_hi, 0.0]], false, "#999999", 0.8));
    fig.layers.push(Layer::Polyline {
        points: vec![[s.t_lo, 1.0], [s.t_hi, 1.0]],
        closed: false,
        stroke: "#999999".into(),
        width: 0.8,
        dash: Some("4 3".into()),
    });
    fig.layers.push(polyline(pts, false, "#1f5fa8", 1.5));
    let central = s.samples.iter().find(|x| x.t == 0.0).map(|x| [x.t, x.r]);
    let mut marks = vec![[res.t_star, res.r_star]];
    let mut labels = vec!["t*".to_string()];
    if let Some(c) = central {
        marks.push(c);
        labels.push("r(0)".into());
    }
    fig.layers.push(Layer::Markers {
        points: marks,
        labels,
        fill: "#b22222".into(),
    });
    Ok(fig)
}
