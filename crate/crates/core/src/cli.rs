//! Command-line surface: `build`, `verify`, `table`.
//!
//! Exit status: 0 success, 1 a checked property failed, 2 bad arguments or input.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::cert::{certify_with, CertOptions};
use crate::dominating::set_d;
use crate::field::FieldSpec;
use crate::graph::LabeledGraph;
use crate::io::{self, Certificate, Format, GraphMeta, Loaded};
use crate::pipeline::{bounds_table, show_girth, Expect, Pipeline};
use crate::vertex::VertexSet;
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "girth8",
    version,
    about = "Build and certify girth-8 graphs over finite fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// The Moore (q+1, 8)-graph
    Moore,
    /// The q-regular graph G^x_q
    Gq,
    /// The (q-1)-regular graph of order 2q(q-1)^2
    Reduced,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Moore => "moore",
            Kind::Gq => "gq",
            Kind::Reduced => "reduced",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a graph and write it with a JSON certificate sidecar (`<out>.cert.json`)
    Build {
        kind: Kind,
        #[arg(long)]
        q: u64,
        /// Field element index for x; defaults to -1 (odd q) or the element of index 2 (even q)
        #[arg(long)]
        x: Option<u64>,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: Format,
        /// Output path; defaults to `<kind>-q<Q>.<ext>` in the working directory
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the perfect dominating set removed at the last step (D for moore and gq, S for reduced)
        #[arg(long)]
        emit_set: Option<PathBuf>,
    },
    /// Recompute a graph's certificate and check expectations
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        regular: Option<usize>,
        #[arg(long)]
        girth: Option<u32>,
        #[arg(long)]
        order: Option<usize>,
        /// Vertex-set file that must be perfect dominating
        #[arg(long)]
        perfect_dom: Option<PathBuf>,
        /// Certificate to compare against; defaults to the sidecar next to the input when present
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Print the table of old and new order bounds
    Table,
}

/// Runs a command, writing human-readable output to `out`. `Ok(false)` means a
/// checked property failed.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<bool> {
    match cli.command {
        Command::Build {
            kind,
            q,
            x,
            format,
            out: path,
            emit_set,
        } => {
            let path = path.unwrap_or_else(|| {
                PathBuf::from(format!("{}-q{q}.{}", kind.name(), format.extension()))
            });
            build(kind, q, x, format, &path, emit_set.as_deref(), out)?;
            Ok(true)
        }
        Command::Verify {
            input,
            regular,
            girth,
            order,
            perfect_dom,
            cert,
        } => verify(
            &input,
            regular,
            girth,
            order,
            perfect_dom.as_deref(),
            cert.as_deref(),
            out,
        ),
        Command::Table => {
            table(out)?;
            Ok(true)
        }
    }
}

struct Built {
    field: std::sync::Arc<FieldSpec>,
    x: Option<u32>,
    graph: LabeledGraph,
    cert: crate::cert::CertReport,
    set: Option<VertexSet>,
}

fn construct(kind: Kind, q: u64, x: Option<u64>, want_set: bool) -> Result<Built> {
    let mut pipeline = Pipeline::new();
    match kind {
        Kind::Moore => {
            let field = FieldSpec::new(q)?;
            // reject a bad x before the expensive build
            let chosen = if want_set || x.is_some() {
                let e = Pipeline::resolve_x(&field, x)?;
                if e.index() == 0 {
                    return Err(Error::InvalidParameter("x must be nonzero".into()));
                }
                Some(e)
            } else {
                None
            };
            let stage = pipeline.moore(q)?;
            let set = match (want_set, chosen) {
                (true, Some(e)) => Some(set_d(&stage.graph, &stage.field, e)?),
                _ => None,
            };
            Ok(Built {
                field: stage.field.clone(),
                x: chosen.map(|e| e.index()),
                graph: stage.graph.clone(),
                cert: stage.cert.clone(),
                set,
            })
        }
        Kind::Gq => {
            let stage = pipeline.gq(q, x)?;
            Ok(Built {
                field: stage.moore.field.clone(),
                x: Some(stage.x.index()),
                graph: stage.graph.clone(),
                cert: stage.cert.clone(),
                set: want_set.then(|| stage.d.clone()),
            })
        }
        Kind::Reduced => {
            let stage = pipeline.reduced(q, x)?;
            Ok(Built {
                field: stage.gq.moore.field.clone(),
                x: Some(stage.gq.x.index()),
                graph: stage.graph,
                cert: stage.cert,
                set: want_set.then_some(stage.s),
            })
        }
    }
}

/// Serialized graph file plus certificate JSON, as written by `build`.
pub fn render(
    kind: Kind,
    q: u64,
    x: Option<u64>,
    format: Format,
    want_set: bool,
) -> Result<(String, String, Option<String>)> {
    let built = construct(kind, q, x, want_set)?;
    let meta = GraphMeta::for_field(&built.field, kind.name());
    let mut certificate = Certificate::new(&built.field, built.x, kind.name(), &built.cert);
    let body = match format {
        Format::Edgelist => io::write_edgelist(&built.graph, &meta),
        Format::Json => io::write_json(&built.graph, &meta),
        Format::Graph6 => {
            certificate.labels = Some(built.graph.labels().iter().map(|v| v.to_string()).collect());
            io::write_graph6(built.graph.graph())
        }
    };
    Ok((
        body,
        certificate.to_json(),
        built.set.as_ref().map(io::write_set),
    ))
}

fn build(
    kind: Kind,
    q: u64,
    x: Option<u64>,
    format: Format,
    path: &Path,
    emit_set: Option<&Path>,
    out: &mut dyn Write,
) -> Result<()> {
    let (body, certificate, set) = render(kind, q, x, format, emit_set.is_some())?;
    std::fs::write(path, body)?;
    std::fs::write(io::sidecar_path(path), &certificate)?;
    if let (Some(set_path), Some(set)) = (emit_set, set) {
        std::fs::write(set_path, set)?;
    }
    let cert: Certificate = serde_json::from_str(&certificate)?;
    writeln!(
        out,
        "wrote {} ({}: order {}, size {}, degree {}, girth {})",
        path.display(),
        kind.name(),
        cert.order,
        cert.size,
        cert.degree
            .map_or("irregular".to_string(), |d| d.to_string()),
        show_girth(cert.girth),
    )?;
    Ok(())
}

fn verify(
    input: &Path,
    regular: Option<usize>,
    girth: Option<u32>,
    order: Option<usize>,
    perfect_dom: Option<&Path>,
    cert_path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<bool> {
    let loaded = io::read_graph(input)?;
    let report = certify_with(loaded.graph(), CertOptions::default());
    writeln!(out, "order {}", report.order)?;
    writeln!(out, "size {}", report.size)?;
    match report.regular_degree {
        Some(k) => writeln!(out, "degree {k} (regular)")?,
        None => writeln!(out, "degree {}..={}", report.min_degree, report.max_degree)?,
    }
    writeln!(out, "bipartite {}", report.bipartite)?;
    writeln!(out, "girth {}", show_girth(report.girth))?;

    let mut failures = Expect {
        order,
        regular,
        girth: girth.map(Some),
        ..Expect::default()
    }
    .mismatches(&report);

    let certificate = match cert_path {
        Some(p) => Some(serde_json::from_str::<Certificate>(
            &std::fs::read_to_string(p)?,
        )?),
        None => io::read_sidecar(input)?,
    };
    if let Some(c) = certificate {
        failures.extend(c.mismatches(&report));
    }

    if let Some(set_path) = perfect_dom {
        let Loaded::Labeled(g, _) = &loaded else {
            return Err(Error::Format(
                "perfect-domination check needs vertex labels; graph6 input requires a sidecar with labels".into(),
            ));
        };
        let set = io::read_set(&std::fs::read_to_string(set_path)?)?;
        let dom = g.is_perfect_dominating(&set)?;
        writeln!(
            out,
            "perfect dominating {} (|U| = {})",
            dom.is_perfect(),
            set.len()
        )?;
        for (v, hits) in dom.violations.iter().take(10) {
            failures.push(format!("{v} has {hits} neighbors in the set"));
        }
        if dom.violations.len() > 10 {
            failures.push(format!("... {} violations in total", dom.violations.len()));
        }
    }

    for f in &failures {
        writeln!(out, "FAIL {f}")?;
    }
    writeln!(out, "{}", if failures.is_empty() { "PASS" } else { "FAIL" })?;
    Ok(failures.is_empty())
}

/// `k old new` per row.
pub fn table(out: &mut dyn Write) -> Result<()> {
    writeln!(out, "k\told\tnew")?;
    for row in bounds_table() {
        writeln!(out, "{}\t{}\t{}", row.k, row.old_bound, row.new_bound)?;
    }
    Ok(())
}
