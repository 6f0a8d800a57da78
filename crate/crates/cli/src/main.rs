//! `qzeros`: zero bounds and zeros of one-sided quaternionic polynomials.
//!
//! Machine output goes to stdout (or `--out`), diagnostics to stderr.
//! Exit codes: 0 ok, 1 verification failure, 2 input error, 3 oracle failure.

mod input;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qzeros::bounds::{self, BoundRegion};
use qzeros::harness::{verify_one, CampaignConfig, CampaignStatus, SideSelection, TrialStatus};
use qzeros::{all_zeros, CoefficientSide, HolderPair, QPolynomial, VerificationReport, ZeroClass};
use serde::Serialize;

const EXIT_VERIFICATION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_ORACLE: u8 = 3;

#[derive(Parser)]
#[command(name = "qzeros", version, about = "Zero bounds and zeros of one-sided quaternionic polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every requested containment region as JSON.
    Bounds {
        #[command(flatten)]
        poly: PolyArgs,
        #[command(flatten)]
        regions: RegionArgs,
        /// Regions to compute (repeatable; default all).
        #[arg(long = "bound", value_enum)]
        only: Vec<BoundKind>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the zero classes.
    Roots {
        #[command(flatten)]
        poly: PolyArgs,
        /// Largest accepted residual (default 1e-8·(1 + max coefficient norm)).
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check every zero against every region; exit 0 iff all are contained.
    Verify {
        #[command(flatten)]
        poly: PolyArgs,
        #[command(flatten)]
        regions: RegionArgs,
        /// Largest accepted residual (default 1e-8·(1 + max coefficient norm)).
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run a seeded random campaign; exit 0 iff it passes.
    Campaign {
        /// Campaign configuration JSON; flags override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        degree_min: Option<usize>,
        #[arg(long)]
        degree_max: Option<usize>,
        #[arg(long)]
        coeff_norm_max: Option<f64>,
        #[arg(long, value_enum)]
        side: Option<CampaignSide>,
        /// Hölder pair `r,s` (repeatable).
        #[arg(long = "holder", value_parser = parse_holder)]
        holder: Vec<HolderPair>,
        /// `auto` or a fixed value of r for the two-ball region.
        #[arg(long, value_parser = parse_r)]
        theorem_e_r: Option<RChoice>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct PolyArgs {
    /// JSON file, `-` for stdin, inline JSON, or `w,x,y,z;…` ascending powers.
    poly: String,
    /// Coefficient side (overrides the JSON field; inline default right).
    #[arg(long, value_enum)]
    side: Option<Side>,
}

#[derive(Args)]
struct RegionArgs {
    /// Hölder pair `r,s` (repeatable; default 2,2).
    #[arg(long = "holder", value_parser = parse_holder)]
    holder: Vec<HolderPair>,
    /// `auto` or a fixed value of r for the two-ball region.
    #[arg(long, value_parser = parse_r, default_value = "auto")]
    theorem_e_r: RChoice,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write machine output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Left,
    Right,
}

impl From<Side> for CoefficientSide {
    fn from(s: Side) -> Self {
        match s {
            Side::Left => CoefficientSide::Left,
            Side::Right => CoefficientSide::Right,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CampaignSide {
    Left,
    Right,
    Both,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum BoundKind {
    Cauchy,
    Kmt,
    KmtSimplified,
    Euclidean,
    Montel,
    TheoremE,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy)]
enum RChoice {
    Auto,
    Fixed(f64),
}

fn parse_holder(s: &str) -> Result<HolderPair, String> {
    let (r, rest) = s.split_once(',').ok_or("expected r,s")?;
    let r: f64 = r.trim().parse().map_err(|_| format!("bad r: {r:?}"))?;
    let s: f64 = rest.trim().parse().map_err(|_| format!("bad s: {rest:?}"))?;
    HolderPair::new(r, s).map_err(|e| e.to_string())
}

fn parse_r(s: &str) -> Result<RChoice, String> {
    if s == "auto" {
        return Ok(RChoice::Auto);
    }
    match s.parse::<f64>() {
        Ok(r) if r > 0.0 && r.is_finite() => Ok(RChoice::Fixed(r)),
        _ => Err(format!("expected `auto` or a positive number, got {s:?}")),
    }
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn dispatch(cmd: Command) -> Result<u8, Failure> {
    match cmd {
        Command::Bounds { poly, regions, only, output } => {
            let p = load(&poly)?;
            let list = compute_bounds(&p, &regions, &only)?;
            emit(&output, &list, |w| bounds_csv(w, &list))?;
            Ok(0)
        }
        Command::Roots { poly, tol, output } => {
            let p = load(&poly)?;
            let zeros = all_zeros(&p).map_err(|e| fail(EXIT_ORACLE, e.to_string()))?;
            for inc in &zeros.inconsistencies {
                eprintln!("warning: unresolved companion root: {}", serde_json::to_string(inc).unwrap_or_default());
            }
            let tol = tol.unwrap_or_else(|| qzeros::oracle::eval_tolerance(&p));
            let over = zeros.classes.iter().filter(|z| z.residual() > tol).count();
            if over > 0 {
                eprintln!("warning: {over} zero(s) have residual above {tol:e}");
            }
            emit(&output, &zeros.classes, |w| roots_csv(w, &zeros.classes))?;
            Ok(if zeros.inconsistencies.is_empty() && over == 0 { 0 } else { EXIT_VERIFICATION })
        }
        Command::Verify { poly, regions, tol, output } => {
            let p = load(&poly)?;
            let cfg = CampaignConfig {
                trials: 1,
                degree_min: 1,
                degree_max: p.degree().min(qzeros::harness::MAX_CAMPAIGN_DEGREE),
                holder_pairs: holder_pairs(&regions.holder),
                theorem_e_r: match regions.theorem_e_r {
                    RChoice::Auto => None,
                    RChoice::Fixed(r) => Some(r),
                },
                ..CampaignConfig::default()
            };
            let record = verify_one(&p, &cfg);
            let tol = tol.unwrap_or(record.eval_tol);
            let over = record.zeros.iter().filter(|z| z.residual() > tol).count();
            let status = record.status;
            let report = VerificationReport::from_trials(cfg, vec![record]);
            emit(&output, &report, |w| report.write_csv(w).map_err(io::Error::other))?;
            if let Some(err) = &report.trials[0].error {
                eprintln!("error: {err}");
            }
            let s = &report.summary;
            eprintln!(
                "{} zero(s), {} not contained, {} unresolved, {over} above residual tolerance",
                s.isolated_zeros + s.spherical_zeros,
                s.not_contained(),
                report.trials[0].inconsistencies.len()
            );
            Ok(match status {
                TrialStatus::Unverified => EXIT_ORACLE,
                _ if s.not_contained() > 0 || status == TrialStatus::Inconsistent || over > 0 => EXIT_VERIFICATION,
                _ => 0,
            })
        }
        Command::Campaign {
            config,
            seed,
            trials,
            degree_min,
            degree_max,
            coeff_norm_max,
            side,
            holder,
            theorem_e_r,
            output,
        } => {
            let mut cfg = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))?;
                    serde_json::from_str::<CampaignConfig>(&text).map_err(|e| {
                        fail(
                            EXIT_INPUT,
                            format!("{}, line {}, column {}: {e}", path.display(), e.line(), e.column()),
                        )
                    })?
                }
                None => CampaignConfig::default(),
            };
            if let Some(v) = seed {
                cfg.seed = v;
            }
            if let Some(v) = trials {
                cfg.trials = v;
            }
            if let Some(v) = degree_min {
                cfg.degree_min = v;
            }
            if let Some(v) = degree_max {
                cfg.degree_max = v;
            }
            if let Some(v) = coeff_norm_max {
                cfg.coeff_norm_max = v;
            }
            if let Some(v) = side {
                cfg.side = match v {
                    CampaignSide::Left => SideSelection::Left,
                    CampaignSide::Right => SideSelection::Right,
                    CampaignSide::Both => SideSelection::Both,
                };
            }
            if !holder.is_empty() {
                cfg.holder_pairs = holder;
            }
            match theorem_e_r {
                Some(RChoice::Auto) => cfg.theorem_e_r = None,
                Some(RChoice::Fixed(r)) => cfg.theorem_e_r = Some(r),
                None => {}
            }
            let report = qzeros::run_campaign(&cfg).map_err(|e| fail(EXIT_INPUT, e.to_string()))?;
            emit(&output, &report, |w| report.write_csv(w).map_err(io::Error::other))?;
            let s = &report.summary;
            eprintln!(
                "campaign {:?}: {} trials, {} not contained, {} inconsistent, {} oracle failures",
                report.status,
                s.trials,
                s.not_contained(),
                s.inconsistent,
                s.oracle_failures
            );
            Ok(match report.status {
                CampaignStatus::Passed => 0,
                CampaignStatus::Failed => EXIT_VERIFICATION,
                CampaignStatus::Unverified => EXIT_ORACLE,
            })
        }
    }
}

fn load(args: &PolyArgs) -> Result<QPolynomial, Failure> {
    let parsed = input::parse_poly(&args.poly, args.side.map(Into::into)).map_err(|e| fail(EXIT_INPUT, e.to_string()))?;
    for w in &parsed.warnings {
        eprintln!("warning: {w}");
    }
    Ok(parsed.poly)
}

fn holder_pairs(given: &[HolderPair]) -> Vec<HolderPair> {
    if given.is_empty() {
        vec![HolderPair::EUCLIDEAN]
    } else {
        given.to_vec()
    }
}

fn compute_bounds(p: &QPolynomial, args: &RegionArgs, only: &[BoundKind]) -> Result<Vec<BoundRegion>, Failure> {
    let wants = |k: BoundKind| only.is_empty() || only.contains(&k);
    let pairs = holder_pairs(&args.holder);
    let mut out = Vec::new();
    if wants(BoundKind::Cauchy) {
        out.push(bounds::cauchy_bound(p));
    }
    for &h in &pairs {
        if wants(BoundKind::Kmt) {
            out.push(bounds::kmt_bound(p, h));
        }
        if wants(BoundKind::KmtSimplified) {
            out.push(bounds::kmt_bound_simplified(p, h));
        }
    }
    if wants(BoundKind::Euclidean) {
        out.push(bounds::euclidean_bound(p));
    }
    if wants(BoundKind::Montel) {
        out.push(bounds::montel_bound(p));
    }
    if wants(BoundKind::TheoremE) {
        if p.degree() < 2 {
            eprintln!("note: two-ball region skipped, it needs degree at least 2");
        } else {
            let r = match args.theorem_e_r {
                RChoice::Fixed(r) => Some(r),
                RChoice::Auto => bounds::feasible_r(p).map_err(|e| fail(EXIT_INPUT, e.to_string()))?,
            };
            match r {
                None => eprintln!("note: two-ball region skipped, no r satisfies its coefficient ordering"),
                Some(r) => match bounds::rather_region(p, r) {
                    Ok(region) => out.push(region),
                    Err(e) => return Err(fail(EXIT_INPUT, e.to_string())),
                },
            }
        }
    }
    Ok(out)
}

fn emit<T: Serialize>(
    output: &OutputArgs,
    value: &T,
    csv: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> Result<(), Failure> {
    let mut sink: Box<dyn Write> = match &output.out {
        Some(path) => Box::new(
            File::create(path).map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))?,
        ),
        None => Box::new(io::stdout().lock()),
    };
    let written = match output.format {
        Format::Json => serde_json::to_writer_pretty(&mut sink, value)
            .map_err(io::Error::other)
            .and_then(|()| writeln!(sink)),
        Format::Csv => csv(&mut sink),
    };
    written
        .and_then(|()| sink.flush())
        .map_err(|e| fail(EXIT_INPUT, format!("writing output: {e}")))
}

#[derive(Serialize)]
struct BoundRow<'a> {
    label: &'a str,
    kind: &'static str,
    radius: Option<f64>,
    radius1: Option<f64>,
    center2: Option<String>,
    radius2: Option<f64>,
}

fn bounds_csv(w: &mut dyn Write, list: &[BoundRegion]) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for region in list {
        let row = match region.shape {
            bounds::RegionShape::OriginBall { radius } => BoundRow {
                label: &region.label,
                kind: "origin_ball",
                radius: Some(radius),
                radius1: None,
                center2: None,
                radius2: None,
            },
            bounds::RegionShape::Union { radius1, center2, radius2 } => BoundRow {
                label: &region.label,
                kind: "union",
                radius: None,
                radius1: Some(radius1),
                center2: Some(center2.to_string()),
                radius2: Some(radius2),
            },
        };
        out.serialize(row)?;
    }
    out.flush()
}

#[derive(Serialize)]
struct ZeroRow {
    kind: &'static str,
    w: Option<f64>,
    x: Option<f64>,
    y: Option<f64>,
    z: Option<f64>,
    re: f64,
    im_radius: f64,
    residual: f64,
}

fn roots_csv(w: &mut dyn Write, zeros: &[ZeroClass]) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    for zc in zeros {
        let (re, im_radius) = zc.similarity_data();
        let row = match *zc {
            ZeroClass::Isolated { point, residual } => ZeroRow {
                kind: "isolated",
                w: Some(point.w),
                x: Some(point.x),
                y: Some(point.y),
                z: Some(point.z),
                re,
                im_radius,
                residual,
            },
            ZeroClass::Spherical { residual, .. } => ZeroRow {
                kind: "spherical",
                w: None,
                x: None,
                y: None,
                z: None,
                re,
                im_radius,
                residual,
            },
        };
        out.serialize(row)?;
    }
    out.flush()
}
