use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use painted_hopf::bijection::{apply_theorem, Theorem};
use painted_hopf::enumeration::Sequence;
use painted_hopf::growth::{build_poset, is_proven, polytope_name};
use painted_hopf::hopf::{self, Side};
use painted_hopf::painted::{enumerate_painted, FaceLevel, Family, PaintedTree};
use painted_hopf::par::{set_default_exec, Exec};
use painted_hopf::shuffle::{Perm, StelloVertex};
use painted_hopf::tubing::{
    enumerate_marked, enumerate_tubings, marked_dot, marked_f_vector, marked_json, marked_poset, quotient_poset,
    tubing_poset, Graph, Quotient,
};
use painted_hopf::verify::{self, Suite};
use painted_hopf::{Error, Result};

#[derive(Parser)]
#[command(name = "painted", version, about = "Painted trees, their Hopf algebras and tubing posets")]
struct Cli {
    /// Number of worker threads (1 runs everything sequentially).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKind {
    Path,
    Complete,
    Star,
    Edgeless,
    Fan,
    Bipartite,
}

#[derive(Clone, Copy, ValueEnum)]
enum Marking {
    Plain,
    Marked,
    Composihedron,
    Cubeahedron,
}

#[derive(clap::Args)]
struct GraphArgs {
    /// Graph family.
    #[arg(long, value_enum)]
    graph: Option<GraphKind>,
    /// Number of nodes (for star and fan: of non-central nodes).
    #[arg(long)]
    size: Option<usize>,
    /// Second size parameter for fan (apex count) and bipartite graphs.
    #[arg(long)]
    size2: Option<usize>,
    /// Read the graph from a JSON file instead.
    #[arg(long, conflicts_with = "graph")]
    graph_file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// List the trees of a family in one degree.
    Enumerate {
        #[arg(long)]
        family: String,
        #[arg(long)]
        degree: usize,
        /// Only trees indexing vertices.
        #[arg(long)]
        vertices: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Coproduct of a tree.
    Coproduct {
        #[arg(long)]
        family: String,
        tree: String,
    },
    /// One-sided product of two trees.
    Product {
        #[arg(long)]
        family: String,
        #[arg(long, value_enum)]
        side: SideArg,
        left: String,
        right: String,
    },
    /// Antipode of a tree.
    Antipode {
        #[arg(long)]
        family: String,
        #[arg(long, value_enum)]
        side: SideArg,
        tree: String,
    },
    /// Face poset of a family in one degree.
    Poset {
        #[arg(long)]
        family: String,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Tubings of a graph, plain or marked.
    Tubings {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value = "plain")]
        marking: Marking,
        /// Only maximal tubings (plain marking).
        #[arg(long)]
        maximal: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Apply one of the tubing/painted-tree isomorphisms in a given size.
    Bijection {
        /// perma, stella1, ptera, lift, stella2 or stella3.
        name: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Shuffle product of two maximal star tubings, e.g. Tub_2(1,2,3,4).
    ShuffleProduct {
        left: String,
        right: String,
        /// A single shuffle term instead of the whole product.
        #[arg(long)]
        shuffle: Option<String>,
    },
    /// Tabulate a counting sequence.
    Count {
        /// ptera, stello, catalan, schroeder or star-tubes.
        sequence: String,
        /// Range `a..b` (inclusive) or a single value.
        #[arg(long, default_value = "0..9")]
        n: String,
        /// Add brute-force rows where feasible.
        #[arg(long)]
        brute: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run verification sweeps.
    Verify {
        /// coalgebra, hopf, module, posets, bijections, counts, shuffle or all.
        suite: String,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Write a poset as DOT or JSON.
    Export {
        /// Painted family; omit to export a graph poset.
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        degree: Option<usize>,
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value = "plain")]
        marking: Marking,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

enum Outcome {
    Done(String),
    Failed(String),
}

fn family(s: &str) -> Result<Family> {
    Family::parse(s)
}

/// A tree given as a canonical string, or `@path` to a JSON file.
fn tree(f: Family, s: &str) -> Result<PaintedTree> {
    let Some(path) = s.strip_prefix('@') else {
        return PaintedTree::parse(f, s);
    };
    let text = fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{path}: {e}")))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    let t = PaintedTree::from_json(&v)?;
    if t.family != f {
        return Err(Error::KindMismatch(format!("{path} holds a {} tree, expected {f}", t.family)));
    }
    Ok(t)
}

fn sum_json(f: Family, s: &hopf::Sum) -> Value {
    json!({
        "family": f.to_string(),
        "terms": s.to_json(|p| json!(p.canonical()), |p| p.canonical()),
    })
}

fn tensor_json(f: Family, s: &hopf::Tensor) -> Value {
    json!({
        "family": f.to_string(),
        "terms": s.to_json(
            |(a, b)| json!([a.canonical(), b.canonical()]),
            |(a, b)| format!("{} {}", a.canonical(), b.canonical()),
        ),
    })
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn graph(args: &GraphArgs) -> Result<Graph> {
    if let Some(path) = &args.graph_file {
        let text = fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
        let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        return Graph::from_json(&v);
    }
    let kind = args.graph.ok_or_else(|| Error::InvalidArgument("give --graph or --graph-file".into()))?;
    let n = args.size.ok_or_else(|| Error::InvalidArgument("--size is required".into()))?;
    if n > 60 {
        return Err(Error::InvalidArgument("graphs are limited to 60 nodes".into()));
    }
    Ok(match kind {
        GraphKind::Path => Graph::path(n),
        GraphKind::Complete => Graph::complete(n),
        GraphKind::Star => Graph::star(n),
        GraphKind::Edgeless => Graph::edgeless(n),
        GraphKind::Fan => Graph::fan(args.size2.unwrap_or(1), n),
        GraphKind::Bipartite => {
            let m = args.size2.ok_or_else(|| Error::InvalidArgument("--size2 is required".into()))?;
            Graph::complete_bipartite(n, m)
        }
    })
}

fn range(s: &str) -> Result<std::ops::RangeInclusive<u64>> {
    let bad = || Error::InvalidArgument(format!("bad range {s:?}, expected a..b or a single number"));
    let num = |x: &str| x.trim().parse::<u64>().map_err(|_| bad());
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => (num(s)?, num(s)?),
    };
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

fn require(format: Format, allowed: &[Format], verb: &str) -> Result<()> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{verb} does not support that --format")))
    }
}

fn tubing_label(g: &Graph, t: &painted_hopf::tubing::Tubing) -> String {
    let tubes: Vec<String> = t
        .tubes
        .iter()
        .map(|&m| format!("{{{}}}", g.labels_of(m).iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    tubes.join(" ")
}

fn poset_text<T>(name: &str, p: &painted_hopf::growth::Poset<T>, label: impl Fn(&T) -> String) -> Result<String> {
    let ranks = p.ranks()?;
    let mut rows: Vec<(usize, String)> = p.elements.iter().zip(&ranks).map(|(e, &r)| (r, label(e))).collect();
    rows.sort();
    let mut out = format!("{name}\nelements: {}\ncovers: {}\nf-vector: {:?}\n", p.len(), p.covers().len(), p.f_vector()?);
    for (r, l) in rows {
        out += &format!("{r}\t{l}\n");
    }
    Ok(out)
}

fn graph_poset(g: &Graph, marking: Marking, format: Format) -> Result<String> {
    let marked = match marking {
        Marking::Plain => {
            let p = tubing_poset(g);
            return Ok(match format {
                Format::Dot => p.to_dot(|t| tubing_label(g, t)),
                Format::Json => {
                    let mut v = p.to_json(|t| tubing_label(g, t));
                    v["graph"] = g.to_json();
                    pretty(&v)
                }
                _ => poset_text(&format!("tubings of {g}"), &p, |t| tubing_label(g, t))?,
            });
        }
        Marking::Marked => marked_poset(g),
        Marking::Composihedron => quotient_poset(g, Quotient::Composihedron),
        Marking::Cubeahedron => quotient_poset(g, Quotient::Cubeahedron),
    };
    Ok(match format {
        Format::Dot => marked_dot(g, &marked),
        Format::Json => pretty(&marked_json(g, &marked)),
        _ => poset_text(&format!("marked tubings of {g}"), &marked, |t| t.display(g))?,
    })
}

fn run(cmd: Command, exec: Exec) -> Result<Outcome> {
    use Outcome::Done;
    Ok(match cmd {
        Command::Enumerate { family: f, degree, vertices, format } => {
            require(format, &[Format::Text, Format::Json], "enumerate")?;
            let f = family(&f)?;
            let level = if vertices { FaceLevel::VertexOnly } else { FaceLevel::AllFaces };
            let trees = enumerate_painted(f, degree, level);
            Done(match format {
                Format::Json => pretty(&json!({
                    "family": f.to_string(),
                    "degree": degree,
                    "trees": trees.iter().map(|t| t.canonical()).collect::<Vec<_>>(),
                })),
                _ => {
                    let mut s = format!("# {} trees of {f} in degree {degree}\n", trees.len());
                    trees.iter().for_each(|t| s += &format!("{}\n", t.canonical()));
                    s
                }
            })
        }
        Command::Coproduct { family: f, tree: t } => {
            let f = family(&f)?;
            Done(pretty(&tensor_json(f, &hopf::coproduct(&tree(f, &t)?)?)))
        }
        Command::Product { family: f, side, left, right } => {
            let f = family(&f)?;
            let s = hopf::product(&tree(f, &left)?, &tree(f, &right)?, side.into())?;
            Done(pretty(&sum_json(f, &s)))
        }
        Command::Antipode { family: f, side, tree: t } => {
            let f = family(&f)?;
            Done(pretty(&sum_json(f, &hopf::antipode(&tree(f, &t)?, side.into())?)))
        }
        Command::Poset { family: f, degree, format } => {
            let f = family(&f)?;
            let p = build_poset(f, degree, exec);
            let label = |t: &PaintedTree| t.canonical();
            Done(match format {
                Format::Text => {
                    let name = match polytope_name(f) {
                        Some(n) => format!(" ({n})"),
                        None if !is_proven(f) => " (conjectural)".to_string(),
                        None => String::new(),
                    };
                    poset_text(&format!("{f} degree {degree}{name}"), &p, label)?
                }
                Format::Json => pretty(&p.to_json(label)),
                Format::Dot => p.to_dot(label),
                Format::Csv => return Err(Error::InvalidArgument("poset does not support csv".into())),
            })
        }
        Command::Tubings { graph: ga, marking, maximal, format } => {
            require(format, &[Format::Text, Format::Json], "tubings")?;
            let g = graph(&ga)?;
            let (lines, json_items, fv): (Vec<String>, Vec<Value>, Vec<usize>) = match marking {
                Marking::Plain => {
                    let ts = enumerate_tubings(&g, maximal);
                    let mut fv = vec![0; g.len()];
                    ts.iter().for_each(|t| fv[t.dimension(&g)] += 1);
                    (ts.iter().map(|t| tubing_label(&g, t)).collect(), ts.iter().map(|t| t.to_json(&g)).collect(), fv)
                }
                _ => {
                    if maximal {
                        return Err(Error::InvalidArgument("--maximal applies to plain tubings".into()));
                    }
                    // quotient ranks differ from the marked dimension of the representatives
                    let (ts, fv) = match marking {
                        Marking::Marked => {
                            let ts = enumerate_marked(&g);
                            let fv = marked_f_vector(&g, &ts);
                            (ts, fv)
                        }
                        q => {
                            let q = if matches!(q, Marking::Composihedron) {
                                Quotient::Composihedron
                            } else {
                                Quotient::Cubeahedron
                            };
                            let p = quotient_poset(&g, q);
                            let fv = p.f_vector()?;
                            (p.elements, fv)
                        }
                    };
                    (ts.iter().map(|t| t.display(&g)).collect(), ts.iter().map(|t| t.to_json(&g)).collect(), fv)
                }
            };
            Done(match format {
                Format::Json => pretty(&json!({ "graph": g.to_json(), "count": lines.len(), "tubings": json_items })),
                _ => format!("# {} tubings of {g}, by dimension {fv:?}\n{}\n", lines.len(), lines.join("\n")),
            })
        }
        Command::Bijection { name, n, format } => {
            require(format, &[Format::Text, Format::Json], "bijection")?;
            let th = Theorem::parse(&name)?;
            let (report, pairs) = apply_theorem(th, n, exec)?;
            let body = match format {
                Format::Json => pretty(&json!({
                    "bijection": th.name(),
                    "n": n,
                    "report": report.to_json(),
                    "pairs": pairs.iter().map(|(a, b)| json!({"source": a, "target": b})).collect::<Vec<_>>(),
                })),
                _ => {
                    let mut s = format!(
                        "# {} n={n}: {} elements, order isomorphism {}\n",
                        th.name(),
                        report.size,
                        if report.ok() { "verified" } else { "FAILED" }
                    );
                    pairs.iter().for_each(|(a, b)| s += &format!("{a}\t->\t{b}\n"));
                    s
                }
            };
            if report.ok() { Done(body) } else { Outcome::Failed(body) }
        }
        Command::ShuffleProduct { left, right, shuffle } => {
            let a: StelloVertex = left.parse()?;
            let b: StelloVertex = right.parse()?;
            match shuffle {
                Some(s) => Done(format!("{}\n", a.star_term(&b, &s.parse::<Perm>()?)?)),
                None => {
                    let p = a.star_product(&b);
                    let terms = p.to_json(|v| json!(v.to_string()), |v| v.to_string());
                    Done(pretty(&json!({ "left": left, "right": right, "terms": terms })))
                }
            }
        }
        Command::Count { sequence, n, brute, format } => {
            require(format, &[Format::Text, Format::Csv], "count")?;
            let table = Sequence::parse(&sequence)?.table(range(&n)?, brute, exec)?;
            Done(if format == Format::Csv { table.to_csv() } else { table.to_text() })
        }
        Command::Verify { suite, max_degree, format } => {
            require(format, &[Format::Text, Format::Json], "verify")?;
            let report = verify::run(Suite::parse(&suite)?, max_degree, exec);
            let body = if format == Format::Json { pretty(&report.to_json()) } else { report.to_text() };
            if report.ok() { Done(body) } else { Outcome::Failed(body) }
        }
        Command::Export { family: f, degree, graph: ga, marking, format, output } => {
            require(format, &[Format::Dot, Format::Json], "export")?;
            let body = match f {
                Some(f) => {
                    let f = family(&f)?;
                    let degree = degree.ok_or_else(|| Error::InvalidArgument("--degree is required".into()))?;
                    let p = build_poset(f, degree, exec);
                    let label = |t: &PaintedTree| t.canonical();
                    if format == Format::Dot { p.to_dot(label) } else { pretty(&p.to_json(label)) }
                }
                None => graph_poset(&graph(&ga)?, marking, format)?,
            };
            match output {
                Some(path) => {
                    fs::write(&path, body)
                        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
                    Done(String::new())
                }
                None => Done(body),
            }
        }
    })
}

fn configure(workers: Option<usize>) -> Result<Exec> {
    let exec = match workers {
        Some(0) => return Err(Error::InvalidArgument("--workers must be at least 1".into())),
        Some(1) => Exec::Sequential,
        _ => Exec::Parallel,
    };
    #[cfg(feature = "parallel")]
    if let Some(w) = workers.filter(|&w| w > 1) {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .map_err(|e| Error::InvalidArgument(format!("worker pool: {e}")))?;
    }
    set_default_exec(exec);
    Ok(exec)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure(cli.workers).and_then(|exec| run(cli.command, exec));
    let mut out = std::io::stdout().lock();
    match result {
        Ok(Outcome::Done(s)) => {
            let _ = out.write_all(s.as_bytes());
            ExitCode::SUCCESS
        }
        Ok(Outcome::Failed(s)) => {
            let _ = out.write_all(s.as_bytes());
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.name());
            ExitCode::from(2)
        }
    }
}
