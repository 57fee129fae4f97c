//! `bgroup`: build and verify Möbius-group models of 2-orbifolds from
//! horocyclic coordinates.
//!
//! Every command writes a single JSON document to stdout (deterministic:
//! sorted keys, floats as fixed 17-significant-digit decimal strings);
//! warnings such as uncertified coordinates go to stderr. Exit codes:
//! 0 success, 2 validation error, 3 verification failure.

use bgroup_core::bgroups::{
    assemble, build_1_1_literal_conjugator, coordinate_bounds_0_4, coordinate_bounds_1_1,
    curve_bounds, plumbing_param_0_4, plumbing_param_1_1, PartitionGraph,
};
use bgroup_core::jsonio::{
    self, complex_to_json, fmt_f64, group_to_json, parse_complex, parse_ext_complex,
    parse_signature, point_cloud_to_json, report_to_json, signature_to_json, to_stable_string,
};
use bgroup_core::marked::MarkedBGroup;
use bgroup_core::moebius::Cplx;
use bgroup_core::patterson::{extended_genus2_group, patterson_verification, zero_six_group};
use bgroup_core::triangle::{canonical_generators, is_canonical, Nu, TriangleGroupSpec};
use bgroup_core::verify::{limit_set_sample, run_group_checks, DEFAULT_POINT_CAP};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "bgroup",
    version,
    about = "Triangle groups, terminal regular b-groups and Patterson isomorphisms \
             as explicit Möbius transformations"
)]
struct Cli {
    /// Tolerance threaded to all checks
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical generators of a (0,3) triangle group
    Triangle {
        /// Signature, e.g. "0,3;inf,2,7"
        #[arg(long)]
        sig: String,
        /// Anchor triple, e.g. "inf,0,1"
        #[arg(long, default_value = "inf,0,1")]
        params: String,
    },
    /// Build a terminal regular b-group from horocyclic coordinates
    Build {
        /// Signature, e.g. "0,4;inf,inf,inf,inf" or "2,0;"
        #[arg(long)]
        sig: String,
        /// Partition: preset name (chain, genus2/fig3) or a JSON file path
        #[arg(long, default_value = "chain")]
        partition: String,
        /// One coordinate per curve, e.g. "3i,2+4i,5i"
        #[arg(long)]
        coords: String,
        /// Use the printed (1,1;ν) conjugator instead of the constraint one
        #[arg(long)]
        paper_literal: bool,
    },
    /// Coordinate-region bounds for a signature
    Bounds {
        #[arg(long)]
        sig: String,
        #[arg(long, default_value = "chain")]
        partition: String,
    },
    /// Plumbing parameter of a one-dimensional family
    Plumb {
        /// Signature of type (0,4) or (1,1)
        #[arg(long)]
        sig: String,
        /// The horocyclic coordinate, e.g. "3i"
        #[arg(long)]
        coord: String,
    },
    /// Verify the Patterson isomorphism data at a genus-2 point
    Patterson {
        /// Three handle coordinates, e.g. "4i,4i,4i"
        #[arg(long)]
        tau: String,
    },
    /// Run verification checks against a group JSON document
    Verify {
        /// Group JSON file (as produced by `build`)
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Comma-separated checks (default: all registered checks)
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
    },
    /// Sample the limit set of a group JSON document
    Limitset {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Maximum reduced word length
        #[arg(long, default_value_t = 6)]
        len: usize,
        /// Point cap
        #[arg(long, default_value_t = DEFAULT_POINT_CAP)]
        cap: usize,
        /// Also write an SVG scatter to this path
        #[arg(long, value_name = "FILE")]
        svg: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            2
        }
    });
}

fn run(cli: Cli) -> Result<i32, Box<dyn std::error::Error>> {
    let tol = cli.tol;
    match cli.command {
        Command::Triangle { sig, params } => cmd_triangle(&sig, &params, tol),
        Command::Build {
            sig,
            partition,
            coords,
            paper_literal,
        } => cmd_build(&sig, &partition, &coords, paper_literal),
        Command::Bounds { sig, partition } => cmd_bounds(&sig, &partition),
        Command::Plumb { sig, coord } => cmd_plumb(&sig, &coord),
        Command::Patterson { tau } => cmd_patterson(&tau, tol),
        Command::Verify { input, checks } => cmd_verify(&input, checks, tol),
        Command::Limitset {
            input,
            len,
            cap,
            svg,
        } => cmd_limitset(&input, len, cap, svg),
    }
}

fn emit(value: &Value) {
    println!("{}", to_stable_string(value));
}

fn emit_warnings(warnings: &[String]) {
    for w in warnings {
        eprintln!("warning: {}", w);
    }
}

fn parse_list(text: &str) -> Result<Vec<Cplx>, bgroup_core::Error> {
    text.split(',').map(|part| parse_complex(part.trim())).collect()
}

fn cmd_triangle(sig_text: &str, params_text: &str, tol: f64) -> Result<i32, Box<dyn std::error::Error>> {
    let sig = parse_signature(sig_text)?;
    if sig.genus != 0 || sig.n() != 3 {
        return Err(format!("triangle groups have type (0,3), got {}", sig).into());
    }
    let parts: Vec<&str> = params_text.split(',').collect();
    if parts.len() != 3 {
        return Err("--params needs three comma-separated points".into());
    }
    let params = [
        parse_ext_complex(parts[0].trim())?,
        parse_ext_complex(parts[1].trim())?,
        parse_ext_complex(parts[2].trim())?,
    ];
    let nu = [sig.nu[0], sig.nu[1], sig.nu[2]];
    let spec = TriangleGroupSpec::new(nu, params);
    let (a, b) = canonical_generators(&spec)?;
    let report = is_canonical(&a, &b, &spec, tol);
    emit(&json!({
        "signature": signature_to_json(&sig),
        "params": params.iter().map(|p| jsonio::ext_complex_to_json(*p)).collect::<Vec<_>>(),
        "A": jsonio::matrix_to_json(&a),
        "B": jsonio::matrix_to_json(&b),
        "AB": jsonio::matrix_to_json(&a.compose(&b)),
        "canonical": report_to_json(&report),
    }));
    Ok(if report.all_passed() { 0 } else { 3 })
}

fn load_partition(name: &str, sig: &bgroup_core::Signature) -> Result<PartitionGraph, Box<dyn std::error::Error>> {
    match name {
        "chain" | "genus2" | "fig3" => Ok(PartitionGraph::preset(name, sig)?),
        path => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read partition file {:?}: {}", path, e))?;
            Ok(PartitionGraph::from_json(&text)?)
        }
    }
}

fn cmd_build(
    sig_text: &str,
    partition_text: &str,
    coords_text: &str,
    paper_literal: bool,
) -> Result<i32, Box<dyn std::error::Error>> {
    let sig = parse_signature(sig_text)?;
    let coords = parse_list(coords_text)?;
    let group: MarkedBGroup = if paper_literal {
        if !sig.is_type(1, 1) {
            return Err("--paper-literal applies to (1,1;ν) signatures only".into());
        }
        if coords.len() != 1 {
            return Err("(1,1;ν) takes exactly one coordinate".into());
        }
        build_1_1_literal_conjugator(sig.nu[0], coords[0])?
    } else {
        let partition = load_partition(partition_text, &sig)?;
        assemble(&sig, &partition, &coords)?
    };
    emit_warnings(&group.warnings);
    emit(&group_to_json(&group));
    Ok(0)
}

fn cmd_bounds(sig_text: &str, partition_text: &str) -> Result<i32, Box<dyn std::error::Error>> {
    let sig = parse_signature(sig_text)?;
    if sig.is_type(0, 4) {
        let nu = [sig.nu[0], sig.nu[1], sig.nu[2], sig.nu[3]];
        let b = coordinate_bounds_0_4(&nu)?;
        emit(&json!({"y1": fmt_f64(b.y1), "y2": fmt_f64(b.y2)}));
        return Ok(0);
    }
    if sig.is_type(1, 1) {
        let b = coordinate_bounds_1_1();
        emit(&json!({"y1": fmt_f64(b.y1), "y2": fmt_f64(b.y2)}));
        return Ok(0);
    }
    let partition = load_partition(partition_text, &sig)?;
    let bounds = curve_bounds(&sig, &partition)?;
    emit(&json!({
        "curves": bounds.iter().enumerate().map(|(i, b)| json!({
            "curve": i,
            "y1": fmt_f64(b.y1),
            "y2": fmt_f64(b.y2),
        })).collect::<Vec<_>>(),
    }));
    Ok(0)
}

fn cmd_plumb(sig_text: &str, coord_text: &str) -> Result<i32, Box<dyn std::error::Error>> {
    let sig = parse_signature(sig_text)?;
    let coord = parse_complex(coord_text)?;
    let (t, certified) = if sig.is_type(0, 4) {
        let tail = sig.nu[2..4] == [Nu::Finite(2), Nu::Finite(2)]
            || sig.nu[0..2] == [Nu::Finite(2), Nu::Finite(2)];
        if tail {
            eprintln!(
                "warning: the (ν,ν,2,2) family has no certified plumbing display; \
                 t = exp(πiα) is reported uncertified"
            );
        }
        (plumbing_param_0_4(coord)?, !tail)
    } else if sig.is_type(1, 1) {
        (plumbing_param_1_1(coord, sig.nu[0])?, true)
    } else {
        return Err(format!("plumbing parameters are defined for (0,4) and (1,1), got {}", sig).into());
    };
    emit(&json!({
        "t": complex_to_json(t),
        "abs": fmt_f64(t.norm()),
        "certified": certified,
    }));
    Ok(0)
}

fn cmd_patterson(tau_text: &str, tol: f64) -> Result<i32, Box<dyn std::error::Error>> {
    let taus = parse_list(tau_text)?;
    if taus.len() != 3 {
        return Err("--tau needs three comma-separated coordinates".into());
    }
    let report = patterson_verification(taus[0], taus[1], taus[2], tol)?;
    let ext = extended_genus2_group(taus[0], taus[1], taus[2])?;
    let [alpha, beta, gamma] = report.alpha_beta_gamma;
    let f = zero_six_group(alpha, beta, gamma)?;
    emit_warnings(&f.warnings);
    emit(&json!({
        "taus": taus.iter().map(|z| complex_to_json(*z)).collect::<Vec<_>>(),
        "alpha_beta_gamma": report.alpha_beta_gamma.iter().map(|z| complex_to_json(*z)).collect::<Vec<_>>(),
        "z": report.z_image.iter().map(|z| complex_to_json(*z)).collect::<Vec<_>>(),
        "genus2_extension": group_to_json(&ext),
        "zero_six": group_to_json(&f),
        "matches": report.matches.iter().map(|m| json!({
            "generator": m.f_name,
            "target": m.target_name,
            "residual": fmt_f64(m.residual),
            "inverted": m.inverted,
        })).collect::<Vec<_>>(),
        "chart_residual": fmt_f64(report.chart_residual),
        "passed": report.all_matched(),
    }));
    Ok(if report.all_matched() { 0 } else { 3 })
}

fn cmd_verify(
    input: &PathBuf,
    checks: Option<Vec<String>>,
    tol: f64,
) -> Result<i32, Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| format!("cannot read {:?}: {}", input, e))?;
    let value: Value = serde_json::from_str(&text)?;
    let group = jsonio::group_from_json(&value)?;
    let names: Vec<String> = checks.unwrap_or_else(|| {
        bgroup_core::verify::registered_checks()
            .into_iter()
            .map(str::to_string)
            .collect()
    });
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let report = run_group_checks(&group, &name_refs, tol)?;
    emit(&report_to_json(&report));
    Ok(if report.any_failed() { 3 } else { 0 })
}

fn cmd_limitset(
    input: &PathBuf,
    len: usize,
    cap: usize,
    svg: Option<PathBuf>,
) -> Result<i32, Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| format!("cannot read {:?}: {}", input, e))?;
    let value: Value = serde_json::from_str(&text)?;
    let group = jsonio::group_from_json(&value)?;
    let cloud = limit_set_sample(&group, len, cap);
    let mut doc = point_cloud_to_json(&cloud);
    if let Some(path) = svg {
        std::fs::write(&path, render_svg(&cloud.points))
            .map_err(|e| format!("cannot write {:?}: {}", path, e))?;
        doc["svg"] = json!(path.to_string_lossy());
    }
    emit(&doc);
    Ok(0)
}

/// Scatter plot: 1 complex unit = 100 px, origin-centered viewBox,
/// radius-0.5px circles.
fn render_svg(points: &[Cplx]) -> String {
    let mut extent = 100.0f64;
    for z in points {
        extent = extent.max(100.0 * z.re.abs()).max(100.0 * z.im.abs());
    }
    let e = (extent + 10.0).ceil() as i64;
    let mut out = String::with_capacity(64 + 64 * points.len());
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n",
        -e,
        -e,
        2 * e,
        2 * e
    ));
    for z in points {
        out.push_str(&format!(
            "  <circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"0.5\"/>\n",
            100.0 * z.re,
            -100.0 * z.im
        ));
    }
    out.push_str("</svg>\n");
    out
}
