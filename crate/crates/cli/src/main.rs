mod svg;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jordan_core::connectivity::path_carrier_gap;
use jordan_core::grid::GridError;
use jordan_core::index::{ray_crossing_index, BoundaryWitnesses, Classification, CrossingResult, WindingResult};
use jordan_core::{
    boundary_witnesses, classify, classify_grid, outer_radius, polygonal_join, validate_jordan, winding_number,
    ClassifyOptions, CurveSpec, GridRequest, IndexError, JoinError, JordanCurve, Point, Rect, ValidationFailure,
    ValidationOptions,
};
use serde_json::{json, Value};
use thiserror::Error;

const EXIT_VALIDATION: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_DISAGREEMENT: u8 = 4;

#[derive(Parser)]
#[command(
    name = "jordan",
    version,
    about = "Validate closed curves and classify points against them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CurveArgs {
    /// Curve JSON file: {"pieces": [...]}.
    spec: PathBuf,
    /// Parameter resolution of the self-intersection check.
    #[arg(long, default_value_t = 1e-3)]
    resolution: f64,
}

#[derive(Args, Clone)]
struct GridArgs {
    /// Grid box as xmin,ymin,xmax,ymax. Cells are listed row by row starting
    /// at ymin, each row from xmin to xmax; values are cell centres.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_box)]
    grid: Option<Rect>,
    /// Grid resolution as NXxNY.
    #[arg(long, default_value = "100x100", value_parser = parse_size)]
    size: (usize, usize),
}

#[derive(Args, Clone)]
struct ClassifyArgs {
    /// Points closer than this to the carrier are reported as near-carrier
    /// (default: 1e-6 times the curve diameter).
    #[arg(long)]
    eps_band: Option<f64>,
    /// Error budget of the winding integral.
    #[arg(long, default_value_t = 0.05)]
    tol: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a curve is closed, simple at sample scale and piecewise smooth.
    Validate {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Classify one point (--point) or a grid of points (--grid).
    Classify {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_point, required_unless_present = "grid", conflicts_with = "grid")]
        point: Option<Point>,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        opts: ClassifyArgs,
        /// Output file (default: standard output).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format: text or json for points, csv or json for grids.
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Evaluate the winding number about a point.
    Winding {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
        point: Point,
        #[arg(long, default_value_t = 0.05)]
        tol: f64,
    },
    /// Join two points by a polyline that keeps a clearance from the curve.
    Join {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
        from: Point,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_point)]
        to: Point,
        /// Required distance from the curve (default: diameter / 512).
        #[arg(long)]
        clearance: Option<f64>,
        /// Planner cell size (default: diameter / 512).
        #[arg(long)]
        cell: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw the curve as SVG with optional overlays.
    Render {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        svg: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        /// Overlay a join between two points, given as x1,y1:x2,y2.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_pair)]
        join: Option<(Point, Point)>,
        #[arg(long)]
        clearance: Option<f64>,
        #[arg(long)]
        cell: Option<f64>,
        /// Overlay inside/outside witness pairs at this many parameters.
        #[arg(long, default_value_t = 0)]
        witnesses: usize,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("validation failed: {0}")]
    Validation(#[from] ValidationFailure),
    #[error("oracle disagreement: {0}")]
    Disagreement(IndexError),
    #[error(transparent)]
    Index(IndexError),
    #[error(transparent)]
    Join(#[from] JoinError),
    #[error("{0}")]
    Usage(String),
}

impl From<IndexError> for CliError {
    fn from(e: IndexError) -> Self {
        match e {
            IndexError::OracleDisagreement { .. } => CliError::Disagreement(e),
            e => CliError::Index(e),
        }
    }
}

impl From<GridError> for CliError {
    fn from(e: GridError) -> Self {
        match e {
            GridError::Index(e) => e.into(),
            e => CliError::Usage(e.to_string()),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Parse { .. } => EXIT_PARSE,
            CliError::Disagreement(_) => EXIT_DISAGREEMENT,
            _ => 1,
        }
    }
}

fn parse_numbers(s: &str, sep: char, n: usize) -> Result<Vec<f64>, String> {
    let v: Vec<f64> = s
        .split(sep)
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("'{p}': {e}")))
        .collect::<Result<_, _>>()?;
    if v.len() != n || v.iter().any(|x| !x.is_finite()) {
        return Err(format!("expected {n} finite numbers separated by '{sep}'"));
    }
    Ok(v)
}

fn parse_point(s: &str) -> Result<Point, String> {
    let v = parse_numbers(s, ',', 2)?;
    Ok(Point::new(v[0], v[1]))
}

fn parse_pair(s: &str) -> Result<(Point, Point), String> {
    let (a, b) = s.split_once(':').ok_or("expected x1,y1:x2,y2")?;
    Ok((parse_point(a)?, parse_point(b)?))
}

fn parse_box(s: &str) -> Result<Rect, String> {
    let v = parse_numbers(s, ',', 4)?;
    Ok(Rect::new(Point::new(v[0], v[1]), Point::new(v[2], v[3])))
}

fn parse_size(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X', '×'])
        .ok_or("expected NXxNY, for example 100x100")?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("'{t}': {e}"));
    Ok((parse(a)?, parse(b)?))
}

fn load(curve: &CurveArgs) -> Result<JordanCurve, CliError> {
    let text = fs::read_to_string(&curve.spec).map_err(|source| CliError::Read {
        path: curve.spec.clone(),
        source,
    })?;
    let spec = CurveSpec::from_json(&text).map_err(|e| CliError::Parse {
        path: curve.spec.clone(),
        message: e.to_string(),
    })?;
    Ok(validate_jordan(
        &spec,
        ValidationOptions::with_resolution(curve.resolution),
    )?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Write {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|source| CliError::Write {
                path: PathBuf::from("<stdout>"),
                source,
            })
        }
    }
}

fn classify_options(opts: &ClassifyArgs) -> ClassifyOptions {
    ClassifyOptions {
        eps_band: opts.eps_band,
        winding_tol: opts.tol,
        ..Default::default()
    }
}

fn grid_request(grid: &GridArgs, box_: Rect, opts: &ClassifyArgs) -> GridRequest {
    let mut req = GridRequest::new(box_, grid.size.0, grid.size.1);
    req.eps_band = opts.eps_band;
    req.tol = Some(opts.tol);
    req
}

fn winding_json(w: &WindingResult) -> Value {
    json!({
        "rounded": w.rounded,
        "integral": [w.integral.x, w.integral.y],
        "residual": w.residual,
        "error_budget": w.error_budget,
        "chords": w.chords,
    })
}

fn parity_json(c: &CrossingResult) -> Value {
    json!({
        "index": c.index,
        "crossings": c.count,
        "direction": c.direction,
    })
}

fn classification_json(z: Point, c: &Classification) -> Value {
    json!({
        "point": z,
        "verdict": c.verdict,
        "code": c.verdict.code(),
        "winding": c.winding.as_ref().map(winding_json),
        "parity": c.crossing.as_ref().map(parity_json),
        "distance": { "lower": c.distance.lower, "upper": c.distance.upper },
    })
}

fn classification_text(z: Point, c: &Classification) -> String {
    let mut s = format!("point: {} {}\nverdict: {:?}\n", z.x, z.y, c.verdict);
    match &c.winding {
        Some(w) => {
            s += &format!(
                "winding: {} (integral {:.12} {:+.3e}i, residual {:.3e}, budget {:.3e})\n",
                w.rounded, w.integral.x, w.integral.y, w.residual, w.error_budget
            )
        }
        None => s += "winding: not computed\n",
    }
    match &c.crossing {
        Some(r) => {
            s += &format!(
                "parity: {} ({} crossings, direction {} {})\n",
                r.index, r.count, r.direction.x, r.direction.y
            )
        }
        None => s += "parity: not computed\n",
    }
    s += &format!("carrier distance: [{:e}, {:e}]\n", c.distance.lower, c.distance.upper);
    s
}

fn validation_report(jc: &JordanCurve, format: Format) -> String {
    let j1 = jc.j1_certificate();
    let j2 = jc.j2_certificate();
    let r = outer_radius(jc);
    let smooth: Vec<Value> = jc
        .smoothness()
        .iter()
        .map(|s| json!({ "lower": s.lower, "upper": s.upper }))
        .collect();
    if let Format::Json = format {
        let v = json!({
            "closed": true,
            "closure_gap": jc.spec().closure_gap(),
            "pieces": jc.spec().len(),
            "interval": [jc.spec().interval().0, jc.spec().interval().1],
            "injectivity": {
                "resolution": j1.sample_resolution,
                "samples": j1.samples,
                "max_spacing": j1.max_spacing,
                "min_gap": j1.min_gap,
            },
            "inverse_modulus": j2.entries.iter().map(|(e, d)| json!({"eps": e, "delta": d})).collect::<Vec<_>>(),
            "smoothness": smooth,
            "deriv_sup": jc.deriv_sup(),
            "outer_radius": r,
            "diameter": jc.diameter(),
        });
        return format!("{}\n", serde_json::to_string_pretty(&v).expect("report serializes"));
    }
    let (a, b) = jc.spec().interval();
    let mut s = String::from("valid Jordan curve\n");
    s += &format!("closed: yes (gap {:e})\n", jc.spec().closure_gap());
    s += &format!("pieces: {} on [{a}, {b}]\n", jc.spec().len());
    s += &format!(
        "injectivity: resolution {:e}, {} samples, max spacing {:e}, min gap {:e}\n",
        j1.sample_resolution, j1.samples, j1.max_spacing, j1.min_gap
    );
    s += "inverse modulus (eps -> delta):\n";
    for (e, d) in &j2.entries {
        s += &format!("  {e:.6e} -> {d:.6e}\n");
    }
    s += "piece speed bounds (lower, upper):\n";
    for (k, p) in jc.smoothness().iter().enumerate() {
        let lo = p.lower.map_or("none".to_string(), |m| format!("{m:.6e}"));
        s += &format!("  {k}: {lo}, {:.6e}\n", p.upper);
    }
    s += &format!("M = {:.6}\n", jc.deriv_sup());
    s += &format!("R = {r:.6}\n");
    s += &format!("diameter = {:.6}\n", jc.diameter());
    s
}

fn witnesses(jc: &JordanCurve, count: usize) -> Vec<BoundaryWitnesses> {
    let (a, b) = jc.spec().interval();
    let opts = ClassifyOptions::default();
    (0..count)
        .filter_map(|k| {
            let t = a + (b - a) * (k as f64 + 0.5) / count as f64;
            boundary_witnesses(jc, t, jc.diameter() / 20.0, &opts).ok()
        })
        .collect()
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Validate { curve, format } => {
            let jc = load(&curve)?;
            emit(None, &validation_report(&jc, format))
        }
        Command::Classify {
            curve,
            point,
            grid,
            opts,
            out,
            format,
        } => {
            let jc = load(&curve)?;
            if let Some(z) = point {
                let c = classify(&jc, z, &classify_options(&opts))?;
                let text = match format {
                    Some(Format::Json) => format!("{}\n", classification_json(z, &c)),
                    Some(Format::Csv) => {
                        let w = c.winding.map(|w| w.rounded.to_string()).unwrap_or_default();
                        format!("x,y,verdict,winding\n{},{},{},{}\n", z.x, z.y, c.verdict.code(), w)
                    }
                    _ => classification_text(z, &c),
                };
                emit(out.as_deref(), &text)
            } else {
                let box_ = grid.grid.expect("clap requires --point or --grid");
                let result = classify_grid(&jc, &grid_request(&grid, box_, &opts))?;
                let text = match format {
                    Some(Format::Json) => format!("{}\n", serde_json::to_string(&result).expect("grid serializes")),
                    Some(Format::Text) => return Err(CliError::Usage("grid output is csv or json".into())),
                    _ => result.to_csv(),
                };
                emit(out.as_deref(), &text)
            }
        }
        Command::Winding { curve, point, tol } => {
            let jc = load(&curve)?;
            let w = winding_number(&jc, point, tol)?;
            let mut v = winding_json(&w);
            v["point"] = json!(point);
            if let Ok(c) = ray_crossing_index(&jc, point, Point::new(1.0, 0.0)) {
                v["parity"] = parity_json(&c);
            }
            emit(None, &format!("{v}\n"))
        }
        Command::Join {
            curve,
            from,
            to,
            clearance,
            cell,
            out,
        } => {
            let jc = load(&curve)?;
            let c = clearance.unwrap_or(jc.diameter() / 512.0);
            let h = cell.unwrap_or(jc.diameter() / 512.0);
            let join = polygonal_join(&jc, from, to, c, h)?;
            let v = json!({
                "vertices": join.vertices,
                "clearance": join.clearance,
                "cell_size": join.cell_size,
                "length": join.length(),
                "gap": path_carrier_gap(&jc, &join.vertices, 64),
            });
            emit(out.as_deref(), &format!("{v}\n"))
        }
        Command::Render {
            curve,
            svg: svg_path,
            grid,
            join,
            clearance,
            cell,
            witnesses: n_witnesses,
        } => {
            let jc = load(&curve)?;
            let opts = ClassifyArgs {
                eps_band: None,
                tol: 0.05,
            };
            let grid_result = match grid.grid {
                Some(b) => Some(classify_grid(&jc, &grid_request(&grid, b, &opts))?),
                None => None,
            };
            let join_result = match join {
                Some((a, b)) => {
                    let c = clearance.unwrap_or(jc.diameter() / 512.0);
                    let h = cell.unwrap_or(jc.diameter() / 512.0);
                    Some(polygonal_join(&jc, a, b, c, h)?)
                }
                None => None,
            };
            let wit = witnesses(&jc, n_witnesses);
            let overlay = svg::Overlay {
                grid: grid_result.as_ref(),
                join: join_result.as_ref(),
                witnesses: &wit,
            };
            emit(Some(&svg_path), &svg::render(jc.spec(), &overlay))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
