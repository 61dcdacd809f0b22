//! Configuration, pipelines and file output behind the `hyperquake` binary.
//!
//! Every subcommand reads an optional JSON [`JobConfig`] and lets flags
//! override it. Results go to `--out` or stdout.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::adsgeo::TorusPoint;
use crate::benthull::{
    bending_data, classify_boundary_arcs, peripheral_bending, recover_earthquake, support_planes,
    support_planes_unbounded, BentSurface, HullSide, PeripheralBending,
};
use crate::error::{Error, Result};
use crate::holonomy::{pants_rep, Cocycle, Representation, Side, Word};
use crate::meridian::{
    extremal_meridian, limit_set, rectangles, ArcChoice, LimitPoint, LimitSample, MonotoneLift, Rectangles,
};
use crate::moebius::Isometry;
use crate::pants::{lamination_type, left_quake, right_quake, EnhancedPants, PantsLamination, TopoType};

/// Leaf depth used to build deformed holonomies.
pub const COCYCLE_DEPTH: usize = 6;
pub const DEFAULT_MAX_WORD: usize = 6;

#[derive(Debug, Parser)]
#[command(name = "hyperquake", version, about = "Earthquakes on pants, limit curves and bent hulls")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply an earthquake to enhanced pants coordinates.
    Quake(Common),
    /// Sample the limit set of a pair of representations.
    Limitset(Common),
    /// Extremal meridians through the limit set.
    Meridians(Common),
    /// Support planes, bending and earthquake data of the envelope.
    Hull(HullArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuakeSide {
    Left,
    Right,
}

impl From<QuakeSide> for Side {
    fn from(s: QuakeSide) -> Side {
        match s {
            QuakeSide::Left => Side::Left,
            QuakeSide::Right => Side::Right,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// JSON job file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Enhanced coordinates of the source pants, e.g. `2,2,-1`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub lengths: Option<Vec<f64>>,
    /// Right pants lengths; otherwise the right holonomy is the deformation by `--masses`.
    #[arg(long, value_delimiter = ',')]
    pub right_lengths: Option<Vec<f64>>,
    /// Signed boundary masses of the lamination.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub masses: Option<Vec<f64>>,
    #[arg(long, value_enum)]
    pub side: Option<QuakeSide>,
    /// Earthquake time.
    #[arg(long)]
    pub time: Option<f64>,
    #[arg(long)]
    pub max_word: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Arc choices per boundary, e.g. `lower,upper,lower`; repeat for several, or `all`.
    #[arg(long, num_args = 1..)]
    pub choices: Option<Vec<String>>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args)]
pub struct HullArgs {
    #[command(flatten)]
    pub common: Common,
    /// Which envelope to build.
    #[arg(long, value_enum, default_value = "upper")]
    pub hull_side: HullSideArg,
    /// Limit set CSV (`word,x,y`) to use instead of sampling.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Lift the cap on the number of points.
    #[arg(long)]
    pub allow_large: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HullSideArg {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Holonomy given by pants lengths or by two generator matrices (row-major).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepSpec {
    Pants([f64; 3]),
    Generators(Vec<[f64; 4]>),
}

impl RepSpec {
    pub fn build(&self) -> Result<Representation> {
        match self {
            RepSpec::Pants(l) => {
                if l.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
                    return Err(Error::Config("pants lengths must be finite and nonnegative".into()));
                }
                Ok(pants_rep(*l))
            }
            RepSpec::Generators(g) => {
                if g.len() != 2 {
                    return Err(Error::Config(format!("expected 2 generators, got {}", g.len())));
                }
                let x = Isometry::from_entries(g[0]).map_err(|e| Error::Config(e.to_string()))?;
                let y = Isometry::from_entries(g[1]).map_err(|e| Error::Config(e.to_string()))?;
                Representation::new(x, y)
            }
        }
    }
}

/// Job file. Unknown keys are rejected.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    /// Enhanced coordinates of the source pants.
    pub lengths: Option<[f64; 3]>,
    pub left: Option<RepSpec>,
    pub right: Option<RepSpec>,
    pub masses: Option<[f64; 3]>,
    pub side: Option<QuakeSide>,
    pub time: Option<f64>,
    pub max_word: Option<usize>,
    pub tol: Option<f64>,
    pub choices: Option<Vec<[ArcChoice; 3]>>,
    pub out: Option<PathBuf>,
}

impl JobConfig {
    pub fn parse(text: &str) -> Result<JobConfig> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<JobConfig> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        JobConfig::parse(&text)
    }
}

fn triple(v: &Option<Vec<f64>>, flag: &str) -> Result<Option<[f64; 3]>> {
    match v {
        None => Ok(None),
        Some(v) if v.len() == 3 => Ok(Some([v[0], v[1], v[2]])),
        Some(v) => Err(Error::Config(format!("--{flag} needs 3 comma-separated values, got {}", v.len()))),
    }
}

/// Parses one `--choices` value into arc triples; `all` gives the eight combinations.
pub fn parse_choices(s: &str) -> Result<Vec<[ArcChoice; 3]>> {
    if s == "all" {
        return Ok(all_choices());
    }
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Config(format!("choices need three entries, got {s:?}")));
    }
    Ok(vec![[parts[0].parse()?, parts[1].parse()?, parts[2].parse()?]])
}

pub fn all_choices() -> Vec<[ArcChoice; 3]> {
    let c = [ArcChoice::Lower, ArcChoice::Upper];
    let mut out = Vec::new();
    for a in c {
        for b in c {
            for d in c {
                out.push([a, b, d]);
            }
        }
    }
    out
}

/// A config with flags applied on top.
#[derive(Debug, Clone)]
pub struct Job {
    pub cfg: JobConfig,
    pub format: Option<Format>,
}

impl Job {
    pub fn from_args(a: &Common) -> Result<Job> {
        let mut cfg = match &a.config {
            Some(p) => JobConfig::load(p)?,
            None => JobConfig::default(),
        };
        if let Some(l) = triple(&a.lengths, "lengths")? {
            cfg.lengths = Some(l);
        }
        if let Some(l) = triple(&a.right_lengths, "right-lengths")? {
            cfg.right = Some(RepSpec::Pants(l));
        }
        if let Some(m) = triple(&a.masses, "masses")? {
            cfg.masses = Some(m);
        }
        cfg.side = a.side.or(cfg.side);
        cfg.time = a.time.or(cfg.time);
        cfg.max_word = a.max_word.or(cfg.max_word);
        cfg.tol = a.tol.or(cfg.tol);
        if let Some(cs) = &a.choices {
            let mut all = Vec::new();
            for c in cs {
                all.extend(parse_choices(c)?);
            }
            cfg.choices = Some(all);
        }
        if a.out.is_some() {
            cfg.out = a.out.clone();
        }
        Ok(Job { cfg, format: a.format })
    }

    pub fn max_word(&self) -> usize {
        self.cfg.max_word.unwrap_or(DEFAULT_MAX_WORD)
    }

    pub fn side(&self) -> QuakeSide {
        self.cfg.side.unwrap_or(QuakeSide::Right)
    }

    pub fn lamination(&self) -> PantsLamination {
        PantsLamination::new(self.cfg.masses.unwrap_or([0.0; 3]))
    }

    pub fn source(&self) -> Result<EnhancedPants> {
        self.cfg
            .lengths
            .map(EnhancedPants::new)
            .ok_or_else(|| Error::Config("missing --lengths".into()))
    }

    pub fn left_rep(&self) -> Result<Representation> {
        match &self.cfg.left {
            Some(r) => r.build(),
            None => Ok(pants_rep(self.source()?.lengths())),
        }
    }

    /// The right holonomy: explicit, or the left one deformed along the masses.
    pub fn reps(&self) -> Result<(Representation, Representation)> {
        let hl = self.left_rep()?;
        let hr = match &self.cfg.right {
            Some(r) => r.build()?,
            None => {
                let lam = self.lamination().scaled(self.cfg.time.unwrap_or(1.0));
                if lam.is_empty() {
                    hl
                } else {
                    Cocycle::new(&hl, &lam, COCYCLE_DEPTH, self.side().into())?.deformed()?
                }
            }
        };
        Ok((hl, hr))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct QuakeReport {
    pub source: [f64; 3],
    pub masses: [f64; 3],
    pub side: QuakeSide,
    pub time: f64,
    pub result: [f64; 3],
    pub lamination_type: TopoType,
    pub cusps: Vec<usize>,
    /// `|tr|` of the deformed boundary holonomies, when the cocycle was built.
    pub traces: Option<[f64; 3]>,
    /// `2 cosh(|a'_i| / 2)`.
    pub predicted_traces: [f64; 3],
}

pub fn cmd_quake(job: &Job) -> Result<QuakeReport> {
    let src = job.source()?;
    let lam = job.lamination();
    let t = job.cfg.time.unwrap_or(1.0);
    let side = job.side();
    let res = match side {
        QuakeSide::Right => right_quake(&src, &lam, t),
        QuakeSide::Left => left_quake(&src, &lam, t),
    };
    let traces = if lam.is_empty() || t == 0.0 {
        Some(pants_rep(src.lengths()).boundary().map(|b| b.trace().abs()))
    } else {
        let c = Cocycle::new(&pants_rep(src.lengths()), &lam.scaled(t), COCYCLE_DEPTH, side.into())?;
        let w = Representation::boundary_words();
        let mut tr = [0.0; 3];
        for i in 0..3 {
            tr[i] = c.eval(&w[i])?.trace().abs();
        }
        Some(tr)
    };
    Ok(QuakeReport {
        source: src.a,
        masses: lam.m,
        side,
        time: t,
        result: res.a,
        lamination_type: lamination_type(lam.m),
        cusps: res.cusps(),
        traces,
        predicted_traces: res.lengths().map(|l| 2.0 * (l / 2.0).cosh()),
    })
}

pub fn quake_text(r: &QuakeReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "source   {:?}", r.source);
    let _ = writeln!(s, "masses   {:?} ({:?}, {:?} side, t = {})", r.masses, r.lamination_type, r.side, r.time);
    let _ = writeln!(s, "result   {:?}", r.result);
    for i in &r.cusps {
        let _ = writeln!(s, "cusp at boundary {}", i + 1);
    }
    if let Some(tr) = r.traces {
        for i in 0..3 {
            let _ = writeln!(s, "trace {}  {:.12}  predicted {:.12}", i + 1, tr[i], r.predicted_traces[i]);
        }
    }
    s
}

/// `{:.16e}` keeps 17 significant digits, enough to round-trip an `f64`.
fn num(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

pub fn limitset_csv(s: &LimitSample) -> String {
    let mut out = String::from("word,x,y\n");
    for q in &s.points {
        let _ = writeln!(out, "{},{},{}", q.word, num(q.p.x), num(q.p.y));
    }
    out
}

/// Reads a `word,x,y` CSV back into a sample.
pub fn read_limitset_csv(text: &str) -> Result<LimitSample> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some("word,x,y") {
        return Err(Error::Config("limit set CSV must start with `word,x,y`".into()));
    }
    let mut pts = Vec::new();
    let mut longest = 0;
    for (k, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let bad = || Error::Config(format!("bad CSV row {}: {line:?}", k + 2));
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 3 {
            return Err(bad());
        }
        let word = Word::parse(f[0]).ok_or_else(bad)?;
        let x: f64 = f[1].parse().map_err(|_| bad())?;
        let y: f64 = f[2].parse().map_err(|_| bad())?;
        longest = longest.max(word.len());
        pts.push(LimitPoint { p: TorusPoint { x, y }, word });
    }
    Ok(LimitSample::from_points(pts, longest, 0))
}

pub fn meridian_csv(m: &MonotoneLift) -> String {
    let mut out = String::from("x,y_lo,y_hi\n");
    for &(x, lo, hi) in &m.samples {
        let _ = writeln!(out, "{},{},{}", num(x), num(lo), num(hi));
    }
    out
}

const PX: f64 = 800.0;

/// Torus square plot: limit points, rectangles and an optional meridian.
pub fn torus_svg(s: &LimitSample, rects: &Rectangles, meridian: Option<&MonotoneLift>) -> String {
    let mut o = String::new();
    let _ = writeln!(
        o,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{PX}" height="{PX}" viewBox="0 0 1 1">"#
    );
    o.push_str("<defs><clipPath id=\"sq\"><rect x=\"0\" y=\"0\" width=\"1\" height=\"1\"/></clipPath></defs>\n");
    // y grows upwards
    o.push_str("<g transform=\"translate(0,1) scale(1,-1)\" clip-path=\"url(#sq)\">\n");
    o.push_str("<rect x=\"0\" y=\"0\" width=\"1\" height=\"1\" fill=\"white\" stroke=\"black\" stroke-width=\"0.002\"/>\n");
    for r in &rects.rects {
        let w = (r.il.1 - r.il.0).rem_euclid(1.0);
        let h = (r.ir.1 - r.ir.0).rem_euclid(1.0);
        for dx in [0.0, -1.0] {
            for dy in [0.0, -1.0] {
                let _ = writeln!(
                    o,
                    "<rect x=\"{:.6}\" y=\"{:.6}\" width=\"{w:.6}\" height=\"{h:.6}\" fill=\"none\" stroke=\"#c33\" stroke-width=\"0.002\"/>",
                    r.il.0 + dx,
                    r.ir.0 + dy
                );
            }
        }
    }
    for q in &s.points {
        let _ = writeln!(o, "<circle cx=\"{:.6}\" cy=\"{:.6}\" r=\"0.0015\" fill=\"black\"/>", q.p.x, q.p.y);
    }
    if let Some(m) = meridian {
        let mut d = String::new();
        let first = m.samples[0];
        let _ = write!(d, "M{:.6},{:.6}", first.0, first.1);
        for (i, &(x, lo, hi)) in m.samples.iter().enumerate() {
            let _ = write!(d, " L{x:.6},{lo:.6} L{x:.6},{hi:.6}");
            let next = m.samples.get(i + 1).map_or(1.0 + first.0, |n| n.0);
            let _ = write!(d, " L{next:.6},{hi:.6}");
        }
        for k in [0.0, -1.0, -2.0, 1.0] {
            let _ = writeln!(
                o,
                "<path d=\"{d}\" transform=\"translate(0,{k})\" fill=\"none\" stroke=\"#36c\" stroke-width=\"0.002\"/>"
            );
            let _ = writeln!(
                o,
                "<path d=\"{d}\" transform=\"translate(-1,{k})\" fill=\"none\" stroke=\"#36c\" stroke-width=\"0.002\"/>"
            );
        }
    }
    o.push_str("</g>\n</svg>\n");
    o
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Config(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report is serializable");
    s.push('\n');
    s
}

#[derive(Debug, Clone, Serialize)]
struct LimitsetReport<'a> {
    sample: &'a LimitSample,
    max_gap: f64,
    rectangles: &'a Rectangles,
}

pub fn cmd_limitset(job: &Job) -> Result<()> {
    let (hl, hr) = job.reps()?;
    let s = limit_set(&hl, &hr, job.max_word())?;
    let r = rectangles(&hl, &hr, &s);
    let text = match job.format.unwrap_or(Format::Csv) {
        Format::Csv => limitset_csv(&s),
        Format::Svg => torus_svg(&s, &r, None),
        Format::Json => json(&LimitsetReport { sample: &s, max_gap: s.max_gap(), rectangles: &r }),
    };
    emit(&job.cfg.out, &text)?;
    eprintln!("{} points, {} elliptic words skipped, max gap {:e}", s.len(), s.skipped, s.max_gap());
    Ok(())
}

fn choice_tag(c: &[ArcChoice; 3]) -> String {
    c.iter().map(|a| if *a == ArcChoice::Lower { 'l' } else { 'u' }).collect()
}

/// `out` with `_tag` inserted before the extension.
fn tagged(out: &Path, tag: &str) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match out.extension() {
        Some(e) => format!("{stem}_{tag}.{}", e.to_string_lossy()),
        None => format!("{stem}_{tag}"),
    };
    out.with_file_name(name)
}

pub fn cmd_meridians(job: &Job) -> Result<()> {
    let (hl, hr) = job.reps()?;
    let s = limit_set(&hl, &hr, job.max_word())?;
    let r = rectangles(&hl, &hr, &s);
    let choices = job.cfg.choices.clone().unwrap_or_else(|| vec![[ArcChoice::Lower; 3]]);
    if choices.len() > 1 && job.cfg.out.is_none() {
        return Err(Error::Config("several meridians need --out".into()));
    }
    let format = job.format.unwrap_or(Format::Csv);
    for c in &choices {
        let m = extremal_meridian(&hl, &hr, &s, &r, c)?;
        let text = match format {
            Format::Csv => meridian_csv(&m),
            Format::Svg => torus_svg(&s, &r, Some(&m)),
            Format::Json => json(&m),
        };
        let out = match (&job.cfg.out, choices.len()) {
            (Some(p), n) if n > 1 => Some(tagged(p, &choice_tag(c))),
            (p, _) => p.clone(),
        };
        emit(&out, &text)?;
    }
    eprintln!("{} meridians over {} points", choices.len(), s.len());
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct HullReport {
    pub side: HullSide,
    pub points: usize,
    pub faces: usize,
    pub surface: BentSurface,
    /// Translation length of each comparison isometry, in edge order.
    pub comparisons: Vec<f64>,
    pub right_handed: usize,
    pub peripheral: Vec<PeripheralBending>,
    /// Arc choices observed from the bending, per boundary.
    pub observed_arcs: Vec<ArcChoice>,
    /// Arc choices predicted from the masses, when they are known.
    pub predicted_arcs: Option<[ArcChoice; 3]>,
}

pub fn cmd_hull(job: &Job, args: &HullArgs) -> Result<HullReport> {
    let (hl, hr) = job.reps()?;
    let sample = match &args.input {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?;
            read_limitset_csv(&text)?
        }
        None => limit_set(&hl, &hr, job.max_word())?,
    };
    hull_report(&hl, &hr, &sample, job, args)
}

pub fn hull_report(
    hl: &Representation,
    hr: &Representation,
    sample: &LimitSample,
    job: &Job,
    args: &HullArgs,
) -> Result<HullReport> {
    let side = match args.hull_side {
        HullSideArg::Upper => HullSide::Upper,
        HullSideArg::Lower => HullSide::Lower,
    };
    let pts = sample.torus_points();
    let faces = if args.allow_large { support_planes_unbounded(&pts, side)? } else { support_planes(&pts, side)? };
    let nf = faces.len();
    let surface = bending_data(&pts, faces)?;
    let cmp = recover_earthquake(&surface)?;
    let peripheral = peripheral_bending(hl, hr, sample, side)?;
    let lam = job.lamination();
    let observed_arcs = peripheral
        .iter()
        .map(|p| p.matching_arc(lam.m[p.class].abs() / 2.0))
        .collect();
    let predicted_arcs = match (job.cfg.lengths, job.cfg.masses) {
        (Some(a), Some(_)) => Some(classify_boundary_arcs(&EnhancedPants::new(a), &lam)),
        _ => None,
    };
    Ok(HullReport {
        side,
        points: pts.len(),
        faces: nf,
        right_handed: cmp.iter().filter(|c| c.right).count(),
        comparisons: cmp.iter().map(|c| c.translation).collect(),
        surface,
        peripheral,
        observed_arcs,
        predicted_arcs,
    })
}

pub fn hull_csv(r: &HullReport) -> String {
    let mut out = String::from("face_a,face_b,weight,axis0_x,axis0_y,axis1_x,axis1_y\n");
    for e in &r.surface.edges {
        let [a, b] = e.axis;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            e.faces.0,
            e.faces.1,
            num(e.weight),
            num(a.x),
            num(a.y),
            num(b.x),
            num(b.y)
        );
    }
    out
}

pub fn hull_text(r: &HullReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:?} envelope of {} points: {} faces, {} edges", r.side, r.points, r.faces, r.surface.edges.len());
    let _ = writeln!(s, "{} of {} comparisons translate to the right", r.right_handed, r.comparisons.len());
    for (p, arc) in r.peripheral.iter().zip(&r.observed_arcs) {
        let _ = writeln!(
            s,
            "boundary {}: limit corner {:.12}, mixed corner {:.12}, observed {:?}",
            p.class + 1,
            p.limit_corner,
            p.mixed_corner,
            arc
        );
    }
    if let Some(p) = r.predicted_arcs {
        let _ = writeln!(s, "predicted arcs {p:?}");
    }
    s
}

/// Runs the parsed command; the return value is the process exit code.
pub fn run(cli: Cli) -> i32 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Config(_) => 2,
                _ => 1,
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Quake(a) => {
            let job = Job::from_args(&a)?;
            let r = cmd_quake(&job)?;
            let text = match job.format {
                Some(Format::Json) => json(&r),
                Some(f) if f != Format::Json => return Err(Error::Config("quake supports --format json only".into())),
                _ => quake_text(&r),
            };
            emit(&job.cfg.out, &text)?;
            Ok(0)
        }
        Command::Limitset(a) => {
            cmd_limitset(&Job::from_args(&a)?)?;
            Ok(0)
        }
        Command::Meridians(a) => {
            cmd_meridians(&Job::from_args(&a)?)?;
            Ok(0)
        }
        Command::Hull(a) => {
            let job = Job::from_args(&a.common)?;
            let r = cmd_hull(&job, &a)?;
            let text = match job.format {
                Some(Format::Json) => json(&r),
                Some(Format::Csv) => hull_csv(&r),
                Some(Format::Svg) => return Err(Error::Config("hull has no SVG output".into())),
                None => hull_text(&r),
            };
            emit(&job.cfg.out, &text)?;
            Ok(0)
        }
        Command::Verify(a) => {
            let reports = crate::verify::run(&a.suite)?;
            let passed = reports.iter().all(|r| r.passed);
            emit(&a.out, &json(&serde_json::json!({ "passed": passed, "suites": reports })))?;
            Ok(if passed { 0 } else { 1 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_rejects_unknown_keys() {
        assert!(JobConfig::parse(r#"{"lengths":[2,2,2],"bogus":1}"#).is_err());
        let c = JobConfig::parse(r#"{"left":{"pants":[1,2,3]},"right":{"generators":[[2,0,0,0.5],[1,1,0,1]]}}"#).unwrap();
        assert_eq!(c.left, Some(RepSpec::Pants([1.0, 2.0, 3.0])));
        assert!(matches!(c.right, Some(RepSpec::Generators(ref g)) if g.len() == 2));
    }

    #[test]
    fn choices_parse() {
        assert_eq!(parse_choices("all").unwrap().len(), 8);
        assert_eq!(
            parse_choices("lower,upper,lower").unwrap(),
            vec![[ArcChoice::Lower, ArcChoice::Upper, ArcChoice::Lower]]
        );
        assert!(parse_choices("lower,upper").is_err());
    }

    #[test]
    fn tagged_names() {
        assert_eq!(tagged(Path::new("out/m.csv"), "lul"), PathBuf::from("out/m_lul.csv"));
    }
}
