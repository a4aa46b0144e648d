//! `idealtetra`: coordinates, volumes, sweeps and verification suites for
//! ideal hyperbolic tetrahedra.
//!
//! Exit codes: 0 success, 1 numerical failure, 2 usage or domain error.

mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use idealtetra::minkowski::{MinkowskiVector, CLASSIFICATION_TOL};
use idealtetra::seidel::{self, SeidelCoords};
use idealtetra::tetra::{self, LabelledTetrahedron, TriangleCoords};
use idealtetra::verify::{self, Suite};
use idealtetra::Error;

use output::{Cell, Format, Table};

#[derive(Parser)]
#[command(name = "idealtetra", version, about = "Ideal hyperbolic tetrahedra in (r,s,t) and (alpha,omega) coordinates")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Relative tolerance for classifying vertices as ideal and coincident
    #[arg(long, global = true, env = "IDEALTETRA_TOL")]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coordinates, dihedral angles and volume of a tetrahedron
    Volume(Input),
    /// Coordinates only
    Convert(Input),
    /// Volume along a horizontal or vertical line through the region S
    Sweep {
        /// `omega=<value>` or `alpha=<value>`; fractions like 7/16 are accepted
        #[arg(long, allow_hyphen_values = true)]
        fixed: String,
        #[arg(long, default_value_t = 101)]
        samples: usize,
    },
    /// Run property suites; exits 1 if any property fails
    Verify {
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Minima of permanent and determinant over the simplex
    Extremal {
        #[arg(long, default_value_t = 400)]
        grid: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Doubly stochastic coordinates r,s,t
    #[arg(long, allow_hyphen_values = true)]
    rst: Option<String>,
    /// Determinant/permanent coordinates alpha,omega
    #[arg(long, allow_hyphen_values = true)]
    seidel: Option<String>,
    /// Four ideal vertices, 16 comma-separated components
    #[arg(long, allow_hyphen_values = true)]
    vertices: Option<String>,
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn parse_number(s: &str) -> Result<f64, Failure> {
    let s = s.trim();
    let bad = || Failure::Usage(format!("cannot parse number '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: f64 = n.trim().parse().map_err(|_| bad())?;
            let d: f64 = d.trim().parse().map_err(|_| bad())?;
            Ok(n / d)
        }
        None => s.parse().map_err(|_| bad()),
    }
}

fn parse_list(s: &str, n: usize, what: &str) -> Result<Vec<f64>, Failure> {
    let v: Vec<f64> = s.split(',').map(parse_number).collect::<Result<_, _>>()?;
    if v.len() != n {
        return Err(Failure::Usage(format!("--{what} expects {n} comma-separated values, got {}", v.len())));
    }
    Ok(v)
}

/// Canonical coordinates plus the volume (taken on `S` for `--seidel` input).
struct Resolved {
    coords: TriangleCoords,
    seidel: SeidelCoords,
    volume: Option<f64>,
}

fn resolve(input: &Input, tol: f64, want_volume: bool) -> Result<Resolved, Failure> {
    if let Some(s) = &input.seidel {
        let v = parse_list(s, 2, "seidel")?;
        let sc = SeidelCoords::new(v[0], v[1])?;
        let coords = tetra::plane_to_delta(&seidel::invert(&sc)?);
        let volume = if want_volume { Some(seidel::volume(&sc)?) } else { None };
        return Ok(Resolved { coords, seidel: sc, volume });
    }
    let coords = if let Some(s) = &input.rst {
        let v = parse_list(s, 3, "rst")?;
        TriangleCoords::new(v[0], v[1], v[2])?
    } else {
        let s = input.vertices.as_deref().expect("one input form is required");
        let v = parse_list(s, 16, "vertices")?;
        let vs: Vec<MinkowskiVector> = v
            .chunks(4)
            .map(|c| MinkowskiVector::new([c[0], c[1], c[2], c[3]]))
            .collect::<Result<_, _>>()?;
        let t = LabelledTetrahedron::with_tolerance([vs[0], vs[1], vs[2], vs[3]], tol)?;
        tetra::doubly_stochastic_coords(&t)?
    };
    let coords = tetra::canonicalize(&coords);
    let volume = if want_volume { Some(seidel::volume_from_coords(&coords)?) } else { None };
    Ok(Resolved { coords, seidel: seidel::forward(&coords), volume })
}

const COORD_COLUMNS: [&str; 7] = ["r", "s", "t", "c", "d", "alpha", "omega"];

fn coord_cells(res: &Resolved) -> Vec<Cell> {
    let pc = tetra::delta_to_plane(&res.coords);
    let [r, s, t] = res.coords.as_array();
    vec![
        r.into(),
        s.into(),
        t.into(),
        pc.c().into(),
        pc.d().into(),
        res.seidel.alpha().into(),
        res.seidel.omega().into(),
    ]
}

fn cmd_volume(input: &Input, tol: f64) -> Result<Table, Failure> {
    let res = resolve(input, tol, true)?;
    let mut cols = COORD_COLUMNS.to_vec();
    cols.extend(["theta1", "theta2", "theta3", "volume"]);
    let mut table = Table::new(&cols);
    let mut row = coord_cells(&res);
    let angles = match tetra::angles_from_coords(&res.coords) {
        Ok(a) => a.as_array().map(Some),
        Err(Error::DeltaVertex) => [None; 3],
        Err(e) => return Err(e.into()),
    };
    row.extend(angles.map(Cell::from));
    row.push(res.volume.into());
    table.push(row);
    Ok(table)
}

fn cmd_convert(input: &Input, tol: f64) -> Result<Table, Failure> {
    let res = resolve(input, tol, false)?;
    let mut table = Table::new(&COORD_COLUMNS);
    table.push(coord_cells(&res));
    Ok(table)
}

fn cmd_sweep(fixed: &str, samples: usize) -> Result<Table, Failure> {
    if samples < 2 {
        return Err(Failure::Usage("--samples must be at least 2".into()));
    }
    let (axis, value) = fixed
        .split_once('=')
        .ok_or_else(|| Failure::Usage(format!("--fixed expects alpha=<value> or omega=<value>, got '{fixed}'")))?;
    let value = parse_number(value)?;
    let reg = seidel::region_boundary();
    let (varying, (lo, hi)) = match axis.trim() {
        "omega" => ("alpha", reg.horizontal_chord(value)?),
        "alpha" => ("omega", reg.vertical_chord(value)?),
        other => return Err(Failure::Usage(format!("unknown axis '{other}' (use alpha or omega)"))),
    };
    let mut table = Table::new(&[varying, "volume"]);
    for i in 0..samples {
        let x = if i + 1 == samples { hi } else { lo + (hi - lo) * i as f64 / (samples - 1) as f64 };
        let sc = if varying == "alpha" { SeidelCoords::new(x, value) } else { SeidelCoords::new(value, x) }?;
        table.push(vec![x.into(), seidel::volume(&sc)?.into()]);
    }
    Ok(table)
}

fn cmd_verify(suite: &str, seed: u64) -> Result<(Table, bool), Failure> {
    let suite: Suite = suite.parse().map_err(Failure::Usage)?;
    let reports = verify::run(suite, seed);
    let mut table = Table::new(&["suite", "property", "status", "samples", "metric", "value", "threshold"]);
    for r in &reports {
        table.push(vec![
            r.suite.into(),
            r.property.into(),
            (if r.passed { "pass" } else { "fail" }).into(),
            Cell::Int(r.samples as u64),
            r.metric.name().into(),
            Cell::Num(Some(r.value).filter(|v| !v.is_nan())),
            r.threshold.into(),
        ]);
    }
    Ok((table, reports.iter().all(|r| r.passed)))
}

fn cmd_extremal(grid: usize) -> Result<Table, Failure> {
    let rec = seidel::extremal_scan(grid)?;
    let mut table = Table::new(&[
        "per_r",
        "per_s",
        "per_t",
        "min_per",
        "det_r",
        "det_s",
        "det_t",
        "min_det",
        "min_det_outside_triangle",
    ]);
    let [pr, ps, pt] = rec.argmin_per.as_array();
    let [dr, ds, dt] = rec.argmin_det.as_array();
    table.push(vec![
        pr.into(),
        ps.into(),
        pt.into(),
        rec.min_per.into(),
        dr.into(),
        ds.into(),
        dt.into(),
        rec.min_det.into(),
        rec.min_det_outside_triangle.into(),
    ]);
    Ok(table)
}

fn run(cli: &Cli) -> Result<(Table, bool), Failure> {
    let tol = cli.tol.unwrap_or(CLASSIFICATION_TOL);
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Failure::Usage(format!("tolerance must be positive, got {tol}")));
    }
    let table = match &cli.command {
        Command::Volume(input) => cmd_volume(input, tol)?,
        Command::Convert(input) => cmd_convert(input, tol)?,
        Command::Sweep { fixed, samples } => cmd_sweep(fixed, *samples)?,
        Command::Verify { suite, seed } => return cmd_verify(suite, *seed),
        Command::Extremal { grid } => cmd_extremal(*grid)?,
    };
    Ok((table, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((table, ok)) => {
            print!("{}", table.render(cli.format));
            if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: some properties failed");
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_domain() { 2 } else { 1 })
        }
    }
}
