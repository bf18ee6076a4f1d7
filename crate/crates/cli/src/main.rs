//! `wreath`: Schreier graphs, nuclei and limit-space data for automaton groups.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use wreath_core::{
    asymptotic_equivalent, build_schreier, catalog_get, catalog_list, check, compute_nucleus,
    equivalence_class, gh_sequence, multiplicity, parse_bytes, pointed_component,
    self_similarity_graph, spectrum, AutomatonGroup, BoundaryPoint, ExportGraph, Format,
    MealyAutomaton, NucleusBounds, NucleusDiagram, RecursionDocument, SchreierLimits, StateId,
    Verdict, VERTEX_CAP_ENV,
};

#[derive(Parser)]
#[command(
    name = "wreath",
    version,
    about = "Computations with self-similar groups given by Mealy automata"
)]
struct Cli {
    /// Refuse to build levels with more vertices than this.
    #[arg(long, global = true, env = VERTEX_CAP_ENV, default_value_t = 1 << 24)]
    vertex_cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct Source {
    /// Recursion file.
    #[arg(long, value_name = "FILE")]
    automaton: Option<PathBuf>,
    /// Built-in catalog key (see `wreath list`).
    #[arg(long, value_name = "KEY")]
    catalog: Option<String>,
}

#[derive(Args)]
struct Generators {
    /// Adjoin inverses of the generators.
    #[arg(long)]
    symmetrize: bool,
    /// Leave out generators that act trivially.
    #[arg(long)]
    drop_identity: bool,
}

#[derive(Args)]
struct Output {
    /// dot, graphml, edges or matrix.
    #[arg(long, default_value = "edges")]
    format: String,
    /// Write here instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build the Schreier graph of level N.
    Gen {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        level: usize,
        /// Emit the simple undirected graph.
        #[arg(long)]
        simplicial: bool,
        #[command(flatten)]
        gens: Generators,
        #[command(flatten)]
        output: Output,
    },
    /// Search for the nucleus.
    Nucleus {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = NucleusBounds::default().max_elements)]
        max_elements: usize,
        #[arg(long, default_value_t = NucleusBounds::default().max_depth)]
        max_depth: usize,
    },
    /// Run the expected properties of catalog entries.
    Check {
        /// Catalog key; every entry when omitted.
        key: Option<String>,
    },
    /// Decide asymptotic equivalence of two points such as `1^w` and `10^w 0`.
    Equiv {
        #[command(flatten)]
        source: Source,
        p: String,
        q: String,
    },
    /// List the eventually periodic points equivalent to a point.
    Class {
        #[command(flatten)]
        source: Source,
        p: String,
    },
    /// Self-similarity graph on words of length at most DEPTH.
    Ssg {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        depth: usize,
        #[command(flatten)]
        gens: Generators,
        #[command(flatten)]
        output: Output,
    },
    /// Random-walk spectrum of the level-N Schreier graph.
    Spectrum {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        level: usize,
        #[command(flatten)]
        gens: Generators,
    },
    /// Component of the level-N graph around the prefix of a boundary point.
    Pointed {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        xi: String,
        #[arg(long)]
        level: usize,
        /// Emit every level from 1 to N.
        #[arg(long)]
        sequence: bool,
        #[command(flatten)]
        gens: Generators,
        #[command(flatten)]
        output: Output,
    },
    /// List catalog entries.
    List,
    /// Print the recursion of a catalog entry.
    Show { key: String },
}

enum Failure {
    Core(wreath_core::Error),
    Io(PathBuf, io::Error),
    Checks(usize),
}

impl From<wreath_core::Error> for Failure {
    fn from(e: wreath_core::Error) -> Self {
        Self::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        use wreath_core::Error as E;
        match self {
            Self::Core(E::ResourceCap { .. } | E::TooLarge { .. }) => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Core(e) => write!(f, "{e}"),
            Self::Io(path, e) => write!(f, "{}: {e}", path.display()),
            Self::Checks(n) => write!(f, "{n} expected properties failed"),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
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

fn load(source: &Source) -> Result<RecursionDocument, Failure> {
    match (&source.automaton, &source.catalog) {
        (Some(path), _) => {
            let bytes = fs::read(path).map_err(|e| Failure::Io(path.clone(), e))?;
            Ok(parse_bytes(&bytes).map_err(wreath_core::Error::from)?)
        }
        (None, Some(key)) => Ok(catalog_get(key)?.document),
        (None, None) => unreachable!("clap requires a source"),
    }
}

/// The automaton to act with and the generator states, after the
/// `--symmetrize` and `--drop-identity` adjustments.
fn generators(doc: &RecursionDocument, opts: &Generators) -> (MealyAutomaton, Vec<StateId>) {
    let (aut, gens) = doc.to_automaton();
    let group = AutomatonGroup::new(&aut, &gens).expect("document generators resolve");
    let closed = group.automaton().clone();
    let mut chosen: Vec<StateId> = gens.clone();
    if opts.symmetrize {
        let mut seen: Vec<_> = gens.iter().map(|&g| group.state_element(g)).collect();
        for &g in &gens {
            let inv = closed.inverse_of(g).expect("inverse-closed");
            let e = group.state_element(inv);
            if !seen.contains(&e) {
                seen.push(e);
                chosen.push(inv);
            }
        }
    }
    if opts.drop_identity {
        let (kept, dropped): (Vec<StateId>, Vec<StateId>) = chosen
            .into_iter()
            .partition(|&g| !group.state_element(g).is_identity());
        if !dropped.is_empty() {
            let names: Vec<&str> = dropped.iter().map(|&g| closed.name(g)).collect();
            eprintln!("note: dropped identity generators: {}", names.join(" "));
        }
        chosen = kept;
    }
    (closed, chosen)
}

fn emit(text: &str, out: Option<&Path>) -> Outcome {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Io(path.to_path_buf(), e)),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Io(PathBuf::from("<stdout>"), e))
        }
    }
}

fn diagram(doc: &RecursionDocument) -> Result<NucleusDiagram, Failure> {
    let group = AutomatonGroup::from_document(doc);
    Ok(NucleusDiagram::from_result(&compute_nucleus(
        &group,
        NucleusBounds::default(),
    ))?)
}

fn run(cli: Cli) -> Outcome {
    let limits = SchreierLimits {
        max_vertices: cli.vertex_cap,
    };
    match cli.command {
        Command::Gen {
            source,
            level,
            simplicial,
            gens,
            output,
        } => {
            let format: Format = output.format.parse()?;
            let doc = load(&source)?;
            let (aut, chosen) = generators(&doc, &gens);
            let g = build_schreier(&aut, &chosen, level, limits)?;
            let view = if simplicial {
                ExportGraph::from_simplicial(&g.simplicial(), |v| g.vertex_label(v))
            } else {
                ExportGraph::from_labeled(&g)
            };
            emit(&view.render(format), output.out.as_deref())
        }
        Command::Nucleus {
            source,
            max_elements,
            max_depth,
        } => {
            let doc = load(&source)?;
            let group = AutomatonGroup::from_document(&doc);
            let result = compute_nucleus(
                &group,
                NucleusBounds {
                    max_elements,
                    max_depth,
                },
            );
            let mut report = String::new();
            match &result.verdict {
                Verdict::Contracting(nucleus) => {
                    report.push_str(&format!(
                        "verdict: contracting\ndepth: {}\nsize: {}\n",
                        result.depth,
                        nucleus.len()
                    ));
                    for (e, w) in nucleus.iter().zip(group.express_all(nucleus, 8)) {
                        match w {
                            Some(w) => report.push_str(&format!("{}\n", group.format_word(&w))),
                            None => report.push_str(&format!("<{} states>\n", e.size())),
                        }
                    }
                }
                Verdict::BoundExceeded { bound, witnesses } => {
                    let bound = match bound {
                        wreath_core::Bound::Elements(n) => format!("elements {n}"),
                        wreath_core::Bound::Depth(n) => format!("depth {n}"),
                    };
                    report.push_str(&format!(
                        "verdict: bound exceeded ({bound})\nrounds: {}\ncandidates: {witnesses}\n",
                        result.depth
                    ));
                }
            }
            emit(&report, None)
        }
        Command::Check { key } => {
            let entries = match key {
                Some(k) => vec![catalog_get(&k)?],
                None => catalog_list(),
            };
            let mut failed = 0;
            let mut report = String::new();
            for entry in &entries {
                for o in check(entry, limits)? {
                    if !o.passed {
                        failed += 1;
                    }
                    let status = if o.passed { "PASS" } else { "FAIL" };
                    report.push_str(&format!("{status} {}: {}", entry.key, o.property));
                    if !o.detail.is_empty() {
                        report.push_str(&format!(" ({})", o.detail));
                    }
                    report.push('\n');
                }
            }
            emit(&report, None)?;
            if failed > 0 {
                Err(Failure::Checks(failed))
            } else {
                Ok(())
            }
        }
        Command::Equiv { source, p, q } => {
            let doc = load(&source)?;
            let (p, q) = (BoundaryPoint::parse(&p)?, BoundaryPoint::parse(&q)?);
            let d = diagram(&doc)?;
            let report = match asymptotic_equivalent(&d, &p, &q)? {
                Some(w) => format!(
                    "{p} ~ {q}\nwitness tail: {:?}\nwitness cycle: {:?}\n",
                    w.tail, w.cycle
                ),
                None => format!("{p} !~ {q}\n"),
            };
            emit(&report, None)
        }
        Command::Class { source, p } => {
            let doc = load(&source)?;
            let p = BoundaryPoint::parse(&p)?;
            let d = diagram(&doc)?;
            let class = equivalence_class(&d, &p)?;
            let text: String = class.iter().map(|x| format!("{x}\n")).collect();
            emit(&text, None)
        }
        Command::Ssg {
            source,
            depth,
            gens,
            output,
        } => {
            let format: Format = output.format.parse()?;
            let doc = load(&source)?;
            let (aut, chosen) = generators(&doc, &gens);
            let g = self_similarity_graph(&aut, &chosen, depth, limits)?;
            emit(
                &ExportGraph::from_self_similarity(&g).render(format),
                output.out.as_deref(),
            )
        }
        Command::Spectrum {
            source,
            level,
            gens,
        } => {
            let doc = load(&source)?;
            let (aut, chosen) = generators(&doc, &gens);
            let g = build_schreier(&aut, &chosen, level, limits)?;
            let values = spectrum(&g)?;
            let mut text = format!(
                "# {} eigenvalues, multiplicity of 1: {}\n",
                values.len(),
                multiplicity(&values, 1.0, 1e-9)
            );
            for v in values {
                text.push_str(&format!("{v:.12}\n"));
            }
            emit(&text, None)
        }
        Command::Pointed {
            source,
            xi,
            level,
            sequence,
            gens,
            output,
        } => {
            let format: Format = output.format.parse()?;
            let doc = load(&source)?;
            let xi = BoundaryPoint::parse(&xi)?;
            let (aut, chosen) = generators(&doc, &gens);
            let graphs = if sequence {
                gh_sequence(&aut, &chosen, &xi, level, limits)?
            } else {
                vec![pointed_component(&aut, &chosen, &xi, level, limits)?]
            };
            let text: String = graphs
                .iter()
                .map(|r| ExportGraph::from_rooted(r).render(format))
                .collect();
            emit(&text, output.out.as_deref())
        }
        Command::List => {
            let text: String = catalog_list()
                .iter()
                .map(|e| {
                    format!(
                        "{:<18} {}{}\n",
                        e.key,
                        e.document.title().unwrap_or(""),
                        if e.primary { "" } else { " [reference]" }
                    )
                })
                .collect();
            emit(&text, None)
        }
        Command::Show { key } => emit(&catalog_get(&key)?.document.serialize(), None),
    }
}
