//! Command-line front end: batch verification, matchings, collapse
//! sequences, geodesics, ball towers, filtrations and DOT export.
//!
//! Exit codes: 0 verdict true / success, 1 verdict false (witness emitted),
//! 2 usage or input error, 3 internal-consistency or projection-law
//! violation.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use systolic::{
    acyclicity, ball_filtration_check, collapse_sequence, directed_geodesic, dot,
    gradient_matching, hex_plane_generator, io as cio, is_k_systolic, BallTower, Error,
    FacetStreamGenerator, FiltrationReport, SubcomplexHandle, VertexId,
};

#[derive(Parser)]
#[command(
    name = "systolic",
    about = "verify systolic simplicial complexes and certify their collapses",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Check connectivity, local k-largeness and the H1 proxy.
    Check {
        /// Largeness parameter (at least 4).
        #[arg(long, default_value_t = 6)]
        k: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
        input: PathBuf,
    },
    /// Build and certify the gradient matching toward a base vertex.
    Morse {
        #[arg(long)]
        base: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
        input: PathBuf,
    },
    /// Emit a replay-checked collapse sequence down to the base vertex.
    Collapse {
        #[arg(long)]
        base: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
        input: PathBuf,
    },
    /// The directed geodesic between two vertices.
    Geodesic {
        #[arg(long)]
        from: u32,
        #[arg(long)]
        to: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
        input: PathBuf,
    },
    /// Combinatorial balls and spheres around a base vertex.
    Balls {
        #[arg(long)]
        base: u32,
        /// Maximal radius; defaults to the eccentricity of the base.
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
        input: PathBuf,
    },
    /// Verify a ball filtration: built-in hex plane or facet files by radius.
    Filtration {
        #[arg(long)]
        radius: usize,
        /// Use the built-in hexagonal-plane generator.
        #[arg(long, conflicts_with = "inputs")]
        hex: bool,
        /// Base vertex for file-backed generators.
        #[arg(long, default_value_t = 0)]
        base: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Facet files indexed by radius, starting at 0.
        inputs: Vec<PathBuf>,
    },
    /// Hasse diagram as DOT, optionally with the matching arrows reversed.
    ExportDot {
        #[arg(long)]
        base: Option<u32>,
        #[arg(long, short)]
        output: Option<PathBuf>,
        input: PathBuf,
    },
}

/// Verdict report: the witness is always enough to re-verify the failure.
#[derive(Serialize)]
struct CheckReport {
    verdict: bool,
    k: usize,
    witness_cycle: Option<Vec<u32>>,
    witness_location: Option<Vec<u32>>,
    h1_rank: usize,
    torsion: Vec<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(if err.is_input_error() { 2 } else { 3 })
        }
    }
}

fn emit(output: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match output {
        Some(path) => std::fs::write(path, content)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
            if !content.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
        }
    }
    Ok(())
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Check {
            k,
            format,
            output,
            input,
        } => {
            let complex = cio::read_complex(&input)?;
            let report = is_k_systolic(&complex, k)?;
            let wire = CheckReport {
                verdict: report.verdict,
                k,
                witness_cycle: report
                    .locally_6_large
                    .witness_cycle
                    .as_ref()
                    .map(|c| c.ids()),
                witness_location: report
                    .locally_6_large
                    .witness_location
                    .as_ref()
                    .map(|s| s.ids().collect()),
                h1_rank: report.h1.rank,
                torsion: report.h1.torsion.clone(),
            };
            let content = match format {
                Format::Json => serde_json::to_string_pretty(&wire).unwrap(),
                Format::Text => {
                    let mut lines = vec![
                        format!("verdict: {}", report.verdict),
                        format!("connected: {}", report.connected),
                        format!("locally {k}-large: {}", report.locally_6_large.verdict),
                        format!(
                            "h1 trivial (proxy for simple connectivity): {} (rank {}, torsion {:?})",
                            report.h1_trivial, report.h1.rank, report.h1.torsion
                        ),
                    ];
                    if let Some(c) = &report.locally_6_large.witness_cycle {
                        lines.push(format!("witness cycle: {:?}", c.ids()));
                    }
                    if let Some(s) = &report.locally_6_large.witness_location {
                        lines.push(format!("witness location: {s}"));
                    }
                    if report.route_disagreement {
                        lines.push("warning: star- and link-route largeness disagree".into());
                    }
                    lines.join("\n")
                }
                Format::Dot => {
                    return Err(Error::InvalidArgument(
                        "check has no dot representation".into(),
                    ))
                }
            };
            emit(&output, &content)?;
            Ok(if report.verdict { 0 } else { 1 })
        }
        Command::Morse {
            base,
            format,
            output,
            input,
        } => {
            let complex = cio::read_complex(&input)?;
            let field = gradient_matching(&complex, VertexId(base))?;
            let cert = acyclicity(&complex, &field)?;
            let content = match format {
                Format::Json => serde_json::to_string_pretty(&field).unwrap(),
                Format::Dot => dot::hasse_dot(&complex, Some(&field)),
                Format::Text => format!(
                    "pairs: {}\ncritical: {:?}\nacyclic: {}",
                    field.len(),
                    field
                        .critical()
                        .iter()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>(),
                    cert.verdict
                ),
            };
            emit(&output, &content)?;
            Ok(if cert.verdict { 0 } else { 1 })
        }
        Command::Collapse {
            base,
            format,
            output,
            input,
        } => {
            let complex = cio::read_complex(&input)?;
            let field = gradient_matching(&complex, VertexId(base))?;
            let cert = acyclicity(&complex, &field)?;
            let schedule = collapse_sequence(&complex, &field, &cert)?;
            #[derive(Serialize)]
            struct CollapseReport {
                base: u32,
                steps: Vec<[Vec<u32>; 2]>,
                final_vertex: u32,
            }
            let wire = CollapseReport {
                base,
                steps: schedule
                    .iter()
                    .map(|(s, t)| [s.ids().collect(), t.ids().collect()])
                    .collect(),
                final_vertex: base,
            };
            let content = match format {
                Format::Json => serde_json::to_string_pretty(&wire).unwrap(),
                Format::Text => {
                    let mut lines: Vec<String> = schedule
                        .iter()
                        .map(|(s, t)| format!("collapse {s} into {t}"))
                        .collect();
                    lines.push(format!("final vertex: {base}"));
                    lines.join("\n")
                }
                Format::Dot => {
                    return Err(Error::InvalidArgument(
                        "collapse has no dot representation; use morse --format dot".into(),
                    ))
                }
            };
            emit(&output, &content)?;
            Ok(0)
        }
        Command::Geodesic {
            from,
            to,
            format,
            output,
            input,
        } => {
            let complex = cio::read_complex(&input)?;
            let geo = directed_geodesic(&complex, VertexId(from), VertexId(to))?;
            let content = match format {
                Format::Json => serde_json::to_string_pretty(&geo.id_lists()).unwrap(),
                Format::Dot => dot::sequence_dot(&geo),
                Format::Text => geo
                    .entries()
                    .iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
                    .join(" -> "),
            };
            emit(&output, &content)?;
            Ok(0)
        }
        Command::Balls {
            base,
            radius,
            format,
            output,
            input,
        } => {
            let complex = cio::read_complex(&input)?;
            let v = VertexId(base);
            if !complex.has_vertex(v) {
                return Err(Error::InvalidArgument(format!(
                    "base vertex {base} is not in the complex"
                )));
            }
            let depth = radius.unwrap_or_else(|| {
                complex
                    .distances_from(v)
                    .iter()
                    .flatten()
                    .copied()
                    .max()
                    .unwrap_or(0) as usize
            });
            let handle = SubcomplexHandle::single_vertex(&complex, v)?;
            let tower = BallTower::build(&complex, handle, depth)?;
            #[derive(Serialize)]
            struct LevelWire {
                radius: usize,
                vertices: Vec<u32>,
                f_vector: Vec<usize>,
            }
            #[derive(Serialize)]
            struct BallsReport {
                base: u32,
                levels: Vec<LevelWire>,
                spheres: Vec<LevelWire>,
            }
            let mut wire = BallsReport {
                base,
                levels: Vec::new(),
                spheres: Vec::new(),
            };
            for n in 0..=tower.depth() {
                let level = tower.level(n);
                let (standalone, _) = level.as_standalone();
                wire.levels.push(LevelWire {
                    radius: n,
                    vertices: level.vertices().iter().map(|u| u.0).collect(),
                    f_vector: standalone.f_vector(),
                });
                if n >= 1 {
                    let sphere = tower.sphere(n)?;
                    let (standalone, _) = sphere.as_standalone();
                    wire.spheres.push(LevelWire {
                        radius: n,
                        vertices: sphere.vertices().iter().map(|u| u.0).collect(),
                        f_vector: standalone.f_vector(),
                    });
                }
            }
            let content = match format {
                Format::Json => serde_json::to_string_pretty(&wire).unwrap(),
                Format::Text => wire
                    .levels
                    .iter()
                    .map(|l| format!("ball {}: f-vector {:?}", l.radius, l.f_vector))
                    .collect::<Vec<_>>()
                    .join("\n"),
                Format::Dot => {
                    return Err(Error::InvalidArgument(
                        "balls has no dot representation".into(),
                    ))
                }
            };
            emit(&output, &content)?;
            Ok(0)
        }
        Command::Filtration {
            radius,
            hex,
            base,
            format,
            output,
            inputs,
        } => {
            let report: FiltrationReport = if hex {
                ball_filtration_check(&hex_plane_generator(), radius)?
            } else {
                if inputs.is_empty() {
                    return Err(Error::InvalidArgument(
                        "give facet files per radius or pass --hex".into(),
                    ));
                }
                let gen = FacetStreamGenerator::new(inputs, VertexId(base));
                ball_filtration_check(&gen, radius)?
            };
            let content = match format {
                Format::Json => serde_json::to_string_pretty(&report).unwrap(),
                Format::Text => {
                    let mut lines = vec![format!(
                        "{:>6} {:>12} {:>9} {:>12} {:>8}",
                        "radius", "faces", "systolic", "collapsible", "oracle"
                    )];
                    for level in &report.levels {
                        lines.push(format!(
                            "{:>6} {:>12} {:>9} {:>12} {:>8}",
                            level.radius,
                            level.f_vector.iter().sum::<usize>(),
                            level.systolic,
                            level.collapsible_pipeline,
                            level
                                .collapsible_oracle
                                .map_or("-".to_string(), |b| b.to_string()),
                        ));
                    }
                    lines.push(format!("overall: {}", report.overall));
                    lines.join("\n")
                }
                Format::Dot => {
                    return Err(Error::InvalidArgument(
                        "filtration has no dot representation".into(),
                    ))
                }
            };
            emit(&output, &content)?;
            Ok(if report.overall { 0 } else { 1 })
        }
        Command::ExportDot {
            base,
            output,
            input,
        } => {
            let complex = cio::read_complex(&input)?;
            let content = match base {
                Some(v) => {
                    let field = gradient_matching(&complex, VertexId(v))?;
                    dot::hasse_dot(&complex, Some(&field))
                }
                None => dot::hasse_dot(&complex, None),
            };
            emit(&output, &content)?;
            Ok(0)
        }
    }
}
