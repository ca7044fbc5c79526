//! Command-line front end for the `boys` binary.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::assembly::{build_h, build_m_with_table, build_octacross, corridor_decomposition};
use crate::cone_pizza::build_pizza;
use crate::development::develop_corridor;
use crate::error::{BoyError, Result};
use crate::export_io::{emit_report, export_kit, export_obj, export_stl, layout_svg, read_obj};
use crate::rectilinear::{build_m_square, build_omega, unit_cube_census};
use crate::verify::{run_suite, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "boys",
    version,
    about = "Build, verify and export a piecewise Boy's surface"
)]
pub struct Cli {
    /// Segments per quarter turn and per edge of length 2/3.
    #[arg(short = 'n', long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u32).range(2..))]
    pub resolution: u32,
    /// Truncation factor of the cone to infinity.
    #[arg(short = 'T', long, global = true, default_value_t = 10.0, value_parser = parse_truncation)]
    pub truncation: f64,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    /// Allowed deviation of the total geodesic curvature from 9π.
    #[arg(long, global = true, default_value_t = 0.01, value_parser = parse_tolerance)]
    pub tolerance: f64,
    /// Flip the orientation of one corridor seam (fault injection).
    #[arg(long, global = true, hide = true)]
    pub perturb_seam: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write OBJ meshes of the octacross, the head H, the band M and the closed surface.
    Build {
        /// Also write binary STL files.
        #[arg(long)]
        stl: bool,
    },
    /// Run the invariant suite and write report.json.
    Verify,
    /// Write the two SVG pages of the cut-out kit.
    Kit,
    /// Write the rectilinear face census and an OBJ of the square model.
    Rect,
    /// Print the JSON report to stdout.
    Report,
}

fn parse_truncation(s: &str) -> std::result::Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if t > 1.0 && t.is_finite() {
        Ok(t)
    } else {
        Err(format!("must be a finite number greater than 1, got {s}"))
    }
}

fn parse_tolerance(s: &str) -> std::result::Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if t > 0.0 && t.is_finite() {
        Ok(t)
    } else {
        Err(format!("must be a positive number, got {s}"))
    }
}

impl Cli {
    pub fn run_config(&self) -> RunConfig {
        RunConfig {
            resolution: self.resolution as usize,
            truncation: self.truncation,
            geodesic_tolerance: self.tolerance,
            perturb_seam: self.perturb_seam,
        }
    }
}

fn write_json<S: serde::Serialize>(path: &Path, value: &S) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn cmd_build(cli: &Cli, stl: bool) -> Result<i32> {
    let cfg = cli.run_config();
    cfg.validate()?;
    let n = cfg.resolution;
    fs::create_dir_all(&cli.out)?;
    let m = build_m_with_table::<f64>(n, &cfg.table())?;
    let boy = build_pizza(&m, cfg.truncation)?.union;
    let meshes = [
        ("octacross", build_octacross::<f64>(n)?),
        ("H", build_h::<f64>(n)?),
        ("M", m),
        ("boy", boy),
    ];
    for (name, c) in &meshes {
        let path = cli.out.join(format!("{name}.obj"));
        export_obj(c, &path, true)?;
        println!("{}", path.display());
        if stl {
            let path = cli.out.join(format!("{name}.stl"));
            export_stl(c, &path, true)?;
            println!("{}", path.display());
        }
    }
    let layout = develop_corridor::<f64>(&corridor_decomposition(), n)?;
    let path = cli.out.join("corridor.svg");
    fs::write(&path, layout_svg(&layout))?;
    println!("{}", path.display());
    Ok(EXIT_OK)
}

pub fn cmd_verify(cli: &Cli) -> Result<i32> {
    let report = run_suite(&cli.run_config())?;
    fs::create_dir_all(&cli.out)?;
    let path = cli.out.join("report.json");
    fs::write(&path, emit_report(&report)?)?;
    println!("{}", path.display());
    match report.first_failure() {
        None => {
            println!("all {} checks passed", report.checks.len());
            Ok(EXIT_OK)
        }
        Some(name) => {
            eprintln!("verification failed: {name}");
            Ok(EXIT_FAILURE)
        }
    }
}

pub fn cmd_kit(cli: &Cli) -> Result<i32> {
    for p in export_kit(&cli.out)? {
        println!("{}", p.display());
    }
    Ok(EXIT_OK)
}

pub fn cmd_rect(cli: &Cli) -> Result<i32> {
    fs::create_dir_all(&cli.out)?;
    let omega = build_omega();
    let msq = build_m_square();
    let census = unit_cube_census(&msq, &omega);
    write_json(&cli.out.join("rect_paint.json"), &census)?;
    let obj = cli.out.join("m_square.obj");
    export_obj(&msq.to_surface_complex::<f64>(), &obj, false)?;
    let chi = read_obj(&obj)?.topology()?.euler_characteristic();
    println!("unit cubes: {}", census.unit_cubes);
    println!("M_square euler characteristic: {chi}");
    Ok(if census.passed() && chi == 0 {
        EXIT_OK
    } else {
        EXIT_FAILURE
    })
}

pub fn cmd_report(cli: &Cli) -> Result<i32> {
    let report = run_suite(&cli.run_config())?;
    print!("{}", emit_report(&report)?);
    Ok(if report.passed { EXIT_OK } else { EXIT_FAILURE })
}

fn exit_code_for(e: &BoyError) -> i32 {
    match e {
        BoyError::InvalidResolution(_) | BoyError::InvalidTruncation(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

pub fn dispatch(cli: &Cli) -> i32 {
    let result = match &cli.command {
        Command::Build { stl } => cmd_build(cli, *stl),
        Command::Verify => cmd_verify(cli),
        Command::Kit => cmd_kit(cli),
        Command::Rect => cmd_rect(cli),
        Command::Report => cmd_report(cli),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        exit_code_for(&e)
    })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => dispatch(&cli),
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            code
        }
    }
}
