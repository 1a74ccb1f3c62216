use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use parahom::barcodes::{barcodes_from_bh, pyramid_barcodes, BarKind, BarcodeSet};
use parahom::equivalence::{verify_against, VerificationReport};
use parahom::invariants::{BoxFlavor, Invariants, MassKind, MeasureBox};
use parahom::measures::{dgm, mu, Rectangle};
use parahom::value::Extended;
use parahom::zigzag::zigzag_barcodes;
use rayon::prelude::*;
use serde_json::{json, Value as Json};

use crate::document::{bars_to_entries, parse_bars, ComplexDocument, Loaded};
use crate::random::RandomSpec;
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "parahom",
    version,
    about = "Levelset barcodes, box measures and their cross-checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the persistence diagram of one bar kind.
    Diagram(DiagramArgs),
    /// Print a rectangle count or a box measure.
    Measure(MeasureArgs),
    /// Run every cross-check on a file or on random complexes.
    Verify(VerifyArgs),
    /// Print a random complex document.
    Random(SpecArgs),
    /// Print all bars, computed along one route.
    Barcodes(BarcodesArgs),
}

#[derive(Debug, Args)]
struct DiagramArgs {
    input: PathBuf,
    #[arg(long, value_parser = parse_kind)]
    kind: BarKind,
    #[arg(long, default_value_t = 0)]
    degree: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Flavor {
    #[value(name = "mu-c")]
    MuC,
    #[value(name = "mu-o")]
    MuO,
    #[value(name = "mu-co")]
    MuCo,
    #[value(name = "mu-oc")]
    MuOc,
    #[value(name = "F")]
    F,
    #[value(name = "T-above")]
    TAbove,
    #[value(name = "T-below")]
    TBelow,
}

#[derive(Debug, Args)]
struct MeasureArgs {
    input: PathBuf,
    #[arg(long, value_enum)]
    flavor: Flavor,
    /// Rectangle `[a,b] x [c,d]` for the mu flavors; box `x_lo x_hi y_lo y_hi`
    /// otherwise. `inf` and `-inf` are accepted.
    #[arg(
        long = "box",
        num_args = 4,
        allow_hyphen_values = true,
        value_names = ["A", "B", "C", "D"],
        required = true
    )]
    corners: Vec<String>,
    #[arg(long, default_value_t = 0)]
    degree: usize,
}

#[derive(Debug, Clone, Copy, Args)]
struct SpecArgs {
    #[arg(long, default_value_t = 8)]
    vertices: usize,
    #[arg(long, default_value_t = 2)]
    max_dim: usize,
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl From<SpecArgs> for RandomSpec {
    fn from(a: SpecArgs) -> Self {
        RandomSpec {
            vertices: a.vertices,
            max_dim: a.max_dim,
            density: a.density,
            seed: a.seed,
        }
    }
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(required_unless_present = "random", conflicts_with = "random")]
    input: Option<PathBuf>,
    /// Verify generated complexes instead of a file.
    #[arg(long)]
    random: bool,
    #[command(flatten)]
    spec: SpecArgs,
    /// Number of random instances; instance `i` uses seed `seed + i`.
    #[arg(long, default_value_t = 1)]
    count: u64,
    /// Expected-barcode sidecar checked in place of the computed bars.
    #[arg(long, requires = "input")]
    expect: Option<PathBuf>,
    /// Emit every check record instead of a summary.
    #[arg(long)]
    full: bool,
}

#[derive(Debug, Args)]
struct BarcodesArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Route::Pyramid)]
    route: Route,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Route {
    Pyramid,
    Masses,
    Zigzag,
}

fn parse_kind(s: &str) -> Result<BarKind, String> {
    BarKind::from_name(s).ok_or_else(|| format!("unknown kind {s:?}; use c, o, co or oc"))
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load(path: &Path) -> Result<Loaded, CliError> {
    ComplexDocument::parse(&read(path)?)?.load()
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        })
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Diagram(a) => {
            let doc = load(&a.input)?;
            let bars = pyramid_barcodes(&doc.complex, &doc.function)?;
            let d = dgm(a.kind, a.degree, &bars);
            let text = match a.format {
                Format::Json => {
                    let mut s = serde_json::to_string(&d).expect("diagrams serialize");
                    s.push('\n');
                    s
                }
                Format::Csv => d.to_csv(),
            };
            emit(out, &text)?;
            Ok(0)
        }
        Command::Measure(a) => {
            let doc = load(&a.input)?;
            let count = measure(&doc, a.flavor, &a.corners, a.degree)?;
            emit(out, &format!("{count}\n"))?;
            Ok(0)
        }
        Command::Random(a) => {
            let spec = RandomSpec::from(a);
            let (k, f) = spec.generate()?;
            emit(
                out,
                &ComplexDocument::from_complex(&k, &f).to_canonical_json()?,
            )?;
            Ok(0)
        }
        Command::Barcodes(a) => {
            let doc = load(&a.input)?;
            let (k, f) = (&doc.complex, &doc.function);
            let bars = match a.route {
                Route::Pyramid => pyramid_barcodes(k, f)?,
                Route::Zigzag => zigzag_barcodes(k, f)?,
                Route::Masses => {
                    let inv = Invariants::new(k, f)?;
                    let top = inv.degrees().end + 1;
                    let deltas: Vec<_> =
                        (0..top).map(|r| inv.support(MassKind::Delta, r)).collect();
                    let gammas: Vec<_> =
                        (0..top).map(|r| inv.support(MassKind::Gamma, r)).collect();
                    barcodes_from_bh(&deltas, &gammas)
                }
            };
            emit(out, &to_json(&bars_to_entries(&bars)))?;
            Ok(0)
        }
        Command::Verify(a) => verify(a, out),
    }
}

fn measure(doc: &Loaded, flavor: Flavor, corners: &[String], r: usize) -> Result<usize, CliError> {
    let parsed = corners
        .iter()
        .map(|c| c.parse::<Extended>())
        .collect::<Result<Vec<_>, _>>()?;
    let [a, b, c, d]: [Extended; 4] = parsed
        .try_into()
        .map_err(|_| CliError::Input("--box takes exactly four corners".into()))?;
    let kind = match flavor {
        Flavor::MuC => Some(BarKind::Closed),
        Flavor::MuO => Some(BarKind::Open),
        Flavor::MuCo => Some(BarKind::ClosedOpen),
        Flavor::MuOc => Some(BarKind::OpenClosed),
        _ => None,
    };
    if let Some(kind) = kind {
        let rect = Rectangle::new(a, b, c, d)?;
        let bars = pyramid_barcodes(&doc.complex, &doc.function)?;
        return Ok(mu(kind, r, &rect, &bars));
    }

    let box_flavor = match flavor {
        Flavor::F => BoxFlavor::F,
        Flavor::TAbove => BoxFlavor::TAbove,
        _ => BoxFlavor::TBelow,
    };
    let ordered = a < b
        && c < d
        && match box_flavor {
            BoxFlavor::F => true,
            BoxFlavor::TAbove => b <= c,
            BoxFlavor::TBelow => d <= a,
        };
    if !ordered {
        return Err(CliError::Input(format!(
            "malformed {flavor:?} box with corners {a}, {b}, {c}, {d}"
        )));
    }
    let inv = Invariants::new(&doc.complex, &doc.function)?;
    let g = inv.grid();
    let [x0, x1, y0, y1] = [&a, &b, &c, &d].map(|v| g.locate_extended(v));
    if x0 == x1 || y0 == y1 {
        // both sides of an edge fall in the same gap of the grid
        return Ok(0);
    }
    let bx = MeasureBox::new(box_flavor, x0, x1, y0, y1)?;
    Ok(inv.box_measure(&bx, r)?)
}

fn report_json(rep: &VerificationReport, full: bool) -> Json {
    if full {
        serde_json::to_value(rep).expect("reports serialize")
    } else {
        serde_json::to_value(rep.summary()).expect("reports serialize")
    }
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    if let Some(path) = &a.input {
        let doc = load(path)?;
        let inv = Invariants::new(&doc.complex, &doc.function)?;
        let bars: BarcodeSet = match &a.expect {
            Some(p) => parse_bars(&read(p)?)?,
            None => pyramid_barcodes(&doc.complex, &doc.function)?,
        };
        let rep = verify_against(&inv, &bars)?;
        let pass = rep.passed();
        let body = json!({
            "input": path.display().to_string(),
            "pass": pass,
            "report": report_json(&rep, a.full),
        });
        emit(out, &to_json(&body))?;
        return Ok(if pass { 0 } else { 1 });
    }

    let base = RandomSpec::from(a.spec);
    base.validate()?;
    let results: Vec<Result<Json, CliError>> = (0..a.count)
        .into_par_iter()
        .map(|i| {
            let spec = base.nth(i);
            let (k, f) = spec.generate()?;
            let inv = Invariants::new(&k, &f)?;
            let rep = verify_against(&inv, &pyramid_barcodes(&k, &f)?)?;
            Ok(json!({
                "index": i,
                "seed": spec.seed,
                "simplices": k.len(),
                "dimension": k.dim(),
                "pass": rep.passed(),
                "report": report_json(&rep, a.full),
            }))
        })
        .collect();
    let instances = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let pass = instances.iter().all(|r| r["pass"] == Json::Bool(true));
    let body = json!({
        "pass": pass,
        "count": instances.len(),
        "instances": instances,
    });
    emit(out, &to_json(&body))?;
    Ok(if pass { 0 } else { 1 })
}
