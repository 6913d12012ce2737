//! `prelam`: check, complete, and inspect transverse chord-diagram instances.
//!
//! Every command prints a text report, a separator line, and a JSON report.
//! Exit status: 0 on success, 1 when a condition is violated, 2 on malformed
//! input.

mod report;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use prelam::analysis::Analysis;
use prelam::circle::CirclePoint;
use prelam::completion::{alternative_extension, complete_with_log, segments_of, CompletionError, ExtensionError};
use prelam::conditions::{check_completable, check_realization};
use prelam::generate::generate;
use prelam::instance::{LamInstance, Mode};
use prelam::io::{parse_document, parse_map_table, parse_point, serialize_document, ParseError};
use prelam::plane::{coupled_polygons, crossing_space, joint_face_count, transport, MapError};
use prelam::regions::RegionId;
use prelam::render::{render, Geometry, RenderError, RenderSpec};
use serde_json::{json, Map, Value};

use report::Report;

#[derive(Parser)]
#[command(name = "prelam", version, about = "Transverse prelamination toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Strict,
    Frontier,
}

#[derive(Clone, Copy, ValueEnum)]
enum GeometryArg {
    EuclideanChords,
    PoincareGeodesics,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the completability conditions.
    Check {
        file: PathBuf,
        /// Override the document's mode.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    /// Complete a completable instance.
    Complete {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Summarize the crossing space: classes, singular points, coupled polygons.
    Plane {
        file: PathBuf,
        /// Print the full report (the default and only output).
        #[arg(long)]
        report: bool,
    },
    /// Check that every genuine region is a one-root region or a coupled ideal polygon.
    Realization { file: PathBuf },
    /// Draw the instance as SVG.
    Render {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Region whose linkage graph is overlaid, e.g. `plus:0`.
        #[arg(long)]
        linkage: Option<String>,
        #[arg(long, value_enum, default_value = "euclidean-chords")]
        geometry: GeometryArg,
        /// Fill genuine regions.
        #[arg(long)]
        regions: bool,
        /// Region to highlight; repeatable.
        #[arg(long)]
        highlight: Vec<String>,
        /// Mark every crossing.
        #[arg(long)]
        crossings: bool,
        /// Mark singular classes.
        #[arg(long)]
        singular: bool,
    },
    /// Generate a family: prong, grid, path, strip, lattice, random.
    Gen {
        family: String,
        /// Parameters as `key=value`.
        params: Vec<String>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Push an instance through a circle map table.
    Transport {
        file: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Add nested leaves at an ideal endpoint to build an alternative extension.
    Extend {
        file: PathBuf,
        /// `<region>/<n>`: the n-th ideal vertex of the region's linkage graph.
        #[arg(long)]
        segment: String,
        #[arg(long)]
        pivot: String,
        #[arg(short)]
        k: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
}

/// Outcome of a command: the report and the exit status.
struct Outcome {
    report: Report,
    status: u8,
}

fn ok(report: Report) -> Outcome {
    Outcome { report, status: 0 }
}

fn violated(report: Report) -> Outcome {
    Outcome { report, status: 1 }
}

fn malformed(command: &str, code: &str, path: &str, message: impl Into<String>) -> Outcome {
    Outcome { report: report::errors(command, &[(code.into(), path.into(), message.into())]), status: 2 }
}

fn parse_errors(command: &str, errs: &[ParseError]) -> Outcome {
    let items: Vec<_> = errs.iter().map(|e| (e.code.to_string(), e.path.clone(), e.message.clone())).collect();
    Outcome { report: report::errors(command, &items), status: 2 }
}

fn load(command: &str, path: &Path) -> Result<(LamInstance, Map<String, Value>), Outcome> {
    let bytes = std::fs::read(path)
        .map_err(|e| malformed(command, "unreadable-file", "", format!("{}: {e}", path.display())))?;
    parse_document(&bytes).map(|d| (d.instance, d.metadata)).map_err(|errs| parse_errors(command, &errs))
}

fn save(command: &str, path: &Path, contents: &[u8]) -> Result<(), Outcome> {
    std::fs::write(path, contents)
        .map_err(|e| malformed(command, "unwritable-file", "", format!("{}: {e}", path.display())))
}

fn region_id(command: &str, s: &str) -> Result<RegionId, Outcome> {
    s.parse().map_err(|e: prelam::regions::RegionIdError| malformed(command, "bad-region-id", "", e.to_string()))
}

fn run(cmd: Command) -> Result<Outcome, Outcome> {
    match cmd {
        Command::Check { file, mode } => {
            let (mut inst, _) = load("check", &file)?;
            if let Some(m) = mode {
                inst = inst.with_mode(match m {
                    ModeArg::Strict => Mode::Strict,
                    ModeArg::Frontier => Mode::Frontier,
                });
            }
            let r = check_completable(&inst);
            let out = report::conditions(&inst, &r);
            Ok(if r.overall { ok(out) } else { violated(out) })
        }
        Command::Complete { input, output } => {
            let (inst, mut meta) = load("complete", &input)?;
            match complete_with_log(&inst) {
                Ok(c) => {
                    meta.insert("completed-from".into(), Value::String(input.display().to_string()));
                    save("complete", &output, serialize_document(&c.instance, &meta).as_bytes())?;
                    Ok(ok(report::completion(&inst, &c, &output.display().to_string())))
                }
                Err(CompletionError::NotCompletable(r)) => {
                    let mut out = report::conditions(&inst, &r);
                    out.json["command"] = json!("complete");
                    Ok(violated(out))
                }
                Err(e) => Ok(violated(report::errors("complete", &[("completion-failed".into(), String::new(), e.to_string())]))),
            }
        }
        Command::Plane { file, report: _ } => {
            let (inst, _) = load("plane", &file)?;
            let failed = |e: prelam::plane::PlaneError| {
                violated(report::errors("plane", &[("plane-undefined".into(), String::new(), e.to_string())]))
            };
            let space = match crossing_space(&inst) {
                Ok(s) => s,
                Err(e) => return Ok(failed(e)),
            };
            let pairs = match coupled_polygons(&inst) {
                Ok(p) => p,
                Err(e) => return Ok(failed(e)),
            };
            Ok(ok(report::plane(&inst, &space, &pairs, joint_face_count(&inst))))
        }
        Command::Realization { file } => {
            let (inst, _) = load("realization", &file)?;
            let r = check_realization(&inst);
            let out = report::realization(&inst, &r);
            Ok(if r.pass { ok(out) } else { violated(out) })
        }
        Command::Render { file, output, linkage, geometry, regions, highlight, crossings, singular } => {
            let (inst, _) = load("render", &file)?;
            let spec = RenderSpec {
                geometry: match geometry {
                    GeometryArg::EuclideanChords => Geometry::EuclideanChords,
                    GeometryArg::PoincareGeodesics => Geometry::PoincareGeodesics,
                },
                regions,
                highlight: highlight.iter().map(|s| region_id("render", s)).collect::<Result<_, _>>()?,
                linkage: linkage.as_deref().map(|s| region_id("render", s)).transpose()?,
                crossing_points: crossings,
                singular_markers: singular,
                ..RenderSpec::default()
            };
            match render(&inst, &spec) {
                Ok(svg) => {
                    save("render", &output, &svg)?;
                    Ok(ok(report::written("render", "SVG", &output.display().to_string(), json!({ "bytes": svg.len() }))))
                }
                Err(e @ (RenderError::UnknownRegion(_) | RenderError::NoLinkage(_))) => {
                    Err(malformed("render", "unknown-region", "", e.to_string()))
                }
                Err(e @ RenderError::Plane(_)) => {
                    Ok(violated(report::errors("render", &[("plane-undefined".into(), String::new(), e.to_string())])))
                }
            }
        }
        Command::Gen { family, params, output } => {
            let mut map = BTreeMap::new();
            for p in &params {
                let Some((k, v)) = p.split_once('=') else {
                    return Err(malformed("gen", "bad-parameter", "", format!("expected key=value, got `{p}`")));
                };
                map.insert(k.to_string(), v.to_string());
            }
            let inst = generate(&family, &map).map_err(|e| malformed("gen", "bad-parameter", "", e.to_string()))?;
            let mut meta = Map::new();
            meta.insert("family".into(), Value::String(family.clone()));
            meta.insert("params".into(), json!(map));
            save("gen", &output, serialize_document(&inst, &meta).as_bytes())?;
            Ok(ok(report::written(
                "gen",
                &format!("{family} instance ({} chords)", inst.len()),
                &output.display().to_string(),
                json!({ "chords": inst.len() }),
            )))
        }
        Command::Transport { file, map, output } => {
            let (inst, meta) = load("transport", &file)?;
            let bytes = std::fs::read(&map)
                .map_err(|e| malformed("transport", "unreadable-file", "", format!("{}: {e}", map.display())))?;
            let table = parse_map_table(&bytes).map_err(|errs| parse_errors("transport", &errs))?;
            match transport(&inst, &table) {
                Ok(out) => {
                    save("transport", &output, serialize_document(&out, &meta).as_bytes())?;
                    Ok(ok(report::written("transport", "transported instance", &output.display().to_string(), json!({}))))
                }
                Err(e @ MapError::Invalid(_)) => {
                    Ok(violated(report::errors("transport", &[("invalid-image".into(), String::new(), e.to_string())])))
                }
                Err(e) => Err(malformed("transport", "bad-map", "", e.to_string())),
            }
        }
        Command::Extend { file, segment, pivot, k, output } => {
            let (inst, meta) = load("extend", &file)?;
            let Some((region, n)) = segment.rsplit_once('/') else {
                return Err(malformed("extend", "bad-segment", "", format!("expected <region>/<n>, got `{segment}`")));
            };
            let region = region_id("extend", region)?;
            let n: usize =
                n.parse().map_err(|_| malformed("extend", "bad-segment", "", format!("bad segment index `{n}`")))?;
            let pivot: CirclePoint = parse_point(&pivot, "pivot").map_err(|e| parse_errors("extend", &[e]))?;
            let an = Analysis::new(&inst);
            if region.index >= an.family(region.sign).regions.len() {
                return Err(malformed("extend", "unknown-region", "", format!("unknown region {region}")));
            }
            let Some(Ok(g)) = an.graph(region) else {
                return Err(malformed("extend", "unknown-region", "", format!("region {region} has no linkage graph")));
            };
            let Some(seg) = segments_of(g).get(n).map(|s| (*s).clone()) else {
                return Err(malformed("extend", "bad-segment", "", format!("region {region} has no ideal vertex {n}")));
            };
            match alternative_extension(&inst, &seg, &pivot, k) {
                Ok(out) => {
                    save("extend", &output, serialize_document(&out, &meta).as_bytes())?;
                    Ok(ok(report::written(
                        "extend",
                        &format!("extension with {k} new leaves"),
                        &output.display().to_string(),
                        json!({ "added": k }),
                    )))
                }
                Err(e @ ExtensionError::Invalid(_)) => {
                    Ok(violated(report::errors("extend", &[("invalid-extension".into(), String::new(), e.to_string())])))
                }
                Err(e) => Err(malformed("extend", "bad-segment", "", e.to_string())),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(cli.command).unwrap_or_else(|e| e);
    print!("{}", outcome.report.render());
    ExitCode::from(outcome.status)
}
