use std::fmt::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use complexes::{cone, hom_k, minimize};
use exact_linalg::Scalar;
use knitting::{knit_component, verify_ar, ArReport, Direction, KnitError, Slice, SliceArrow, Translator};
use quiver_rep::{min_proj_resolution, DEFAULT_MAX_RES};
use shapes::{classify, reduced_cone, MorphClass};

use crate::dot::emit_dot;
use crate::error::CliError;
use crate::problem::Problem;
use crate::serialize::{write_complex, write_map};

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Field, quiver, dimension and global dimension of the algebra.
    #[command(alias = "algebra-info")]
    Info,
    /// Signature of the minimal projective resolution of a module.
    Resolve {
        #[arg(required = true, num_args = 1..)]
        module: Vec<String>,
    },
    /// Smonic, sepic or sirreducible.
    Classify { map: String },
    /// Mapping cone of a map and its minimal model.
    Cone {
        map: String,
        /// Build the reduced cone and verify its witnesses.
        #[arg(long)]
        reduced: bool,
    },
    Minimize { complex: String },
    /// Dimension of the morphism space in the homotopy category.
    Hom { x: String, y: String },
    /// Derived translate of an indecomposable complex.
    Tau {
        x: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Knit the component through a slice of named complexes.
    Knit {
        #[arg(long, value_delimiter = ',', required = true)]
        slice: Vec<String>,
        #[arg(long)]
        fwd: usize,
        #[arg(long)]
        bwd: usize,
        /// Write the DOT graph here; `-` prints it.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check a named triangle, or the constructed one ending at a complex.
    VerifyAr { triangle: String },
    /// Print a complex or map in the problem-file syntax.
    Show { name: String },
    /// Run the `[tasks]` section.
    Run,
}

#[derive(Parser, Debug)]
#[command(name = "arquiver", version, about = "Morphisms, cones and AR components in the homotopy category of projectives")]
pub struct Cli {
    /// Problem file.
    pub problem: PathBuf,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Parser, Debug)]
#[command(name = "task", no_binary_name = true)]
struct TaskLine {
    #[command(subcommand)]
    command: Command,
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn report_text(r: &ArReport) -> String {
    format!(
        "start indecomposable: {}\nend indecomposable: {}\nconnecting map nonzero: {}\nradical annihilated: {}\nsampled nodes: {}\nverdicts certain: {}\nAR triangle: {}\n",
        yes(r.start_indecomposable),
        yes(r.end_indecomposable),
        yes(r.w_nonzero),
        yes(r.radical_annihilated),
        r.sampled_nodes,
        yes(r.certain),
        yes(r.passes())
    )
}

fn translator<F: Scalar>(p: &Problem<F>) -> Result<Translator<F>, CliError> {
    Ok(Translator::new(&p.alg, DEFAULT_MAX_RES)?)
}

fn info<F: Scalar>(p: &Problem<F>) -> String {
    let q = p.alg.quiver();
    let mut out = format!("algebra {} over {}\n", p.name, p.field().name());
    writeln!(out, "vertices {}, arrows {}, relations {}", q.vertex_count(), q.arrows().len(), p.alg.relations().len()).unwrap();
    writeln!(out, "dimension {}", p.alg.dim()).unwrap();
    let dims: Vec<String> = (0..q.vertex_count())
        .map(|v| format!("P{} {}", q.vertex_name(v), (0..q.vertex_count()).map(|t| p.alg.block(v, t).len()).sum::<usize>()))
        .collect();
    writeln!(out, "projectives {}", dims.join(", ")).unwrap();
    match Translator::new(&p.alg, DEFAULT_MAX_RES) {
        Ok(t) => writeln!(out, "global dimension {}", t.global_dimension).unwrap(),
        Err(KnitError::InfiniteGlobalDimension { max_len, .. }) => {
            writeln!(out, "global dimension > {max_len}").unwrap()
        }
        Err(e) => writeln!(out, "global dimension unknown: {e}").unwrap(),
    }
    out
}

fn knit<F: Scalar>(p: &Problem<F>, names: &[String], fwd: usize, bwd: usize, dot: Option<&PathBuf>) -> Result<String, CliError> {
    let nodes = names.iter().map(|n| p.complex(n)).collect::<Result<Vec<_>, _>>()?;
    let index = |n: &str| names.iter().position(|s| s == n);
    let arrows = p
        .maps
        .iter()
        .filter_map(|m| Some(SliceArrow { source: index(&m.source)?, target: index(&m.target)?, map: m.map.clone() }))
        .collect();
    let slice = Slice::new(&p.alg, nodes, arrows)?;
    let c = knit_component(&translator(p)?, &slice, fwd, bwd)?;
    let graph = emit_dot(&c);
    if let Some(path) = dot {
        if path.as_os_str() == "-" {
            return Ok(graph);
        }
        std::fs::write(path, &graph)?;
    }
    let mut out = format!("nodes {}, arrows {}, meshes {}\n", c.nodes.len(), c.arrows.len(), c.meshes.len());
    let orbits = c.nodes.iter().map(|n| n.orbit).max().map_or(0, |m| m + 1);
    for o in 0..orbits {
        let mut row: Vec<_> = c.nodes.iter().filter(|n| n.orbit == o).collect();
        row.sort_by_key(|n| n.index);
        let sigs: Vec<&str> = row.iter().map(|n| n.signature.as_str()).collect();
        writeln!(out, "orbit {o}: {}", sigs.join(" ")).unwrap();
    }
    let ok = c.meshes.iter().filter(|m| m.record.report.passes()).count();
    writeln!(out, "meshes verified {ok}/{}", c.meshes.len()).unwrap();
    Ok(out)
}

fn verify<F: Scalar>(p: &Problem<F>, name: &str) -> Result<String, CliError> {
    let t = match p.triangle(name) {
        Some(t) => t,
        None => translator(p)?.ar_triangle_ending(&p.complex(name)?)?.triangle,
    };
    let r = verify_ar(&p.alg, &t, &[]);
    let names: Vec<String> = [t.x(), t.y(), t.z()].iter().map(|x| x.name(&p.alg)).collect();
    let text = format!("triangle {} -> {} -> {}\n{}", names[0], names[1], names[2], report_text(&r));
    if r.passes() {
        Ok(text)
    } else {
        Err(CliError::Domain(format!("{text}not an Auslander-Reiten triangle")))
    }
}

fn run_tasks<F: Scalar>(p: &Problem<F>) -> Result<String, CliError> {
    let mut out = String::new();
    for line in &p.tasks {
        let words = shlex::split(line.text.trim()).ok_or_else(|| CliError::Usage(format!("line {}: unbalanced quotes", line.number)))?;
        let task = TaskLine::try_parse_from(&words).map_err(|e| CliError::Usage(format!("line {}: {}", line.number, e.render())))?;
        if task.command == Command::Run {
            return Err(CliError::Usage(format!("line {}: `run` inside tasks", line.number)));
        }
        writeln!(out, "> {}", line.text.trim()).unwrap();
        out += &execute(p, &task.command)?;
    }
    Ok(out)
}

/// Runs one command and returns its standard output.
pub fn execute<F: Scalar>(p: &Problem<F>, cmd: &Command) -> Result<String, CliError> {
    let alg = &p.alg;
    Ok(match cmd {
        Command::Info => info(p),
        Command::Resolve { module } => {
            let m = p.module(&module.join(" "))?;
            let r = min_proj_resolution(alg, &m, DEFAULT_MAX_RES)?;
            format!("{}\n", r.complex.signature(alg)?)
        }
        Command::Classify { map } => match classify(alg, &p.map(map)?.map)? {
            MorphClass::Sirreducible { degree, flagged: true } => format!("sirreducible({degree}) flagged\n"),
            c => format!("{c}\n"),
        },
        Command::Cone { map, reduced } => {
            let f = &p.map(map)?.map;
            if *reduced {
                let rc = reduced_cone(alg, f)?;
                rc.verify(alg)?;
                let m = minimize(alg, &rc.complex).complex;
                format!("reduced cone {}\nminimal {}\nwitnesses verified\n", rc.complex.name(alg), m.signature(alg)?)
            } else {
                let c = cone(alg, f).complex;
                let m = minimize(alg, &c).complex;
                format!("cone {}\nminimal {}\n", c.name(alg), m.signature(alg)?)
            }
        }
        Command::Minimize { complex } => {
            let m = minimize(alg, &p.complex(complex)?).complex;
            format!("{}\n{}", m.signature(alg)?, write_complex(p, &format!("{complex}_min"), &m))
        }
        Command::Hom { x, y } => {
            let h = hom_k(alg, &p.complex(x)?, &p.complex(y)?);
            format!("{}\n", h.dim)
        }
        Command::Tau { x, inverse } => {
            let dir = if *inverse { Direction::Inverse } else { Direction::Forward };
            let t = translator(p)?.tau(&p.complex(x)?, dir)?;
            format!("{}\n", t.signature(alg)?)
        }
        Command::Knit { slice, fwd, bwd, dot } => knit(p, slice, *fwd, *bwd, dot.as_ref())?,
        Command::VerifyAr { triangle } => verify(p, triangle)?,
        Command::Show { name } => match p.maps.iter().find(|m| m.name == *name) {
            Some(m) => write_map(p, name, &m.map),
            None => write_complex(p, name, &p.complex(name)?),
        },
        Command::Run => run_tasks(p)?,
    })
}
