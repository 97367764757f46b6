// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.


//! `hedra`: generators, testers, rules, repairs and obstruction searches
//! from the command line. Reports are `key=value` lines.
//!
//! Exit codes: 0 success, 1 usage error, 2 nothing found (or a training
//! draw to retry), 3 I/O or format error.

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use hedra_core::error::Error;
use hedra_core::graphon::{self, Graphon};
use hedra_core::hypercore::{read_hgr, write_hgr, Hypergraph, Morphism, Palette};
use hedra_core::obstructions::{self as obs, CorruptionSpec, SearchBudget};
use hedra_core::properties::{self, builtins, Mode, Property};
use hedra_core::repairs::{self, OrderRepair};
use hedra_core::rules::{self, EntailmentMode, LazyModification, LocalRule};
use hedra_core::rng;

#[derive(Parser)]
#[command(name = "hedra", version, about = "Testing and repair of hereditary hypergraph properties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Order,
    Leq3,
    #[value(name = "3uniform")]
    Uniform3,
    Graphon,
}

#[derive(Clone, Copy, ValueEnum)]
enum TestMode {
    Exact,
    Mc,
}

#[derive(Clone, Copy, ValueEnum)]
enum RepairAlgo {
    Order,
    Bipartite,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObstructKind {
    Pair,
    Quad,
    Nine,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a corrupted instance (or a graphon sample) as HGR.
    Gen {
        kind: GenKind,
        #[arg(long, default_value_t = 100)]
        m: usize,
        #[arg(long, default_value_t = 0.0)]
        sigma: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the uncorrupted instance instead.
        #[arg(long)]
        clean: bool,
        /// Graphon name or GWN file, for `graphon`.
        #[arg(long, default_value = "half")]
        graphon: String,
        /// Output file; without it the HGR goes to stdout and the report to stderr.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fraction of N-subsets on which the input obeys a property.
    Test {
        /// Builtin name or HGP file.
        #[arg(long)]
        property: String,
        #[arg(long = "N")]
        size: usize,
        #[arg(long, value_enum, default_value = "exact")]
        mode: TestMode,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// HGR file; stdin when absent.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Distance between two hypergraphs on the same vertices.
    Dist { a: PathBuf, b: PathBuf },
    /// Non-local order repair or majority bipartite repair.
    Repair {
        #[arg(long, value_enum)]
        algo: RepairAlgo,
        #[arg(long)]
        train: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Apply a local rule, or check what it entails.
    Rule {
        /// Builtin name or HGT file.
        #[arg(long)]
        name: String,
        #[arg(long)]
        a_size: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// HGR file to modify.
        #[arg(long)]
        apply: Option<PathBuf>,
        /// Comma-separated training vertices for `--apply`.
        #[arg(long, value_delimiter = ',')]
        anchors: Vec<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Check entailment on every input with up to this many free vertices.
        #[arg(long)]
        entail_upto: Option<usize>,
        /// Property to entail; bipartite-delete defaults to `bipartite`.
        #[arg(long)]
        property: Option<String>,
        /// Random inputs per size instead of all of them.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Search for a witness that a rule cannot repair the input.
    Obstruct {
        #[arg(long, value_enum)]
        kind: ObstructKind,
        /// Number of anchors, drawn at random.
        #[arg(long, default_value_t = 4)]
        anchors: usize,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Rule producing the repaired hypergraph.
        #[arg(long, default_value = "identity-copy")]
        rule: String,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Look for a monochromatic induced subhypergraph.
    Ramsey {
        #[arg(long)]
        target: usize,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Sample, estimate triangle density, or repair towards triangle-free.
    Graphon {
        /// Graphon name or GWN file.
        #[arg(long, default_value = "half")]
        graphon: String,
        #[arg(long)]
        sample: Option<usize>,
        /// Cell count and threshold, applied to the sample.
        #[arg(long, num_args = 2, value_names = ["N", "SIGMA"])]
        repair: Option<Vec<String>>,
        #[arg(long)]
        density: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    NotFound,
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::Io(_) => Failure::Io(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

/// `key=value` lines, printed in insertion order.
#[derive(Default)]
struct Report(Vec<String>);

impl Report {
    fn kv(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.0.push(format!("{key}={value}"));
        self
    }

    fn print(&self) {
        for l in &self.0 {
            println!("{l}");
        }
    }

    fn eprint(&self) {
        for l in &self.0 {
            eprintln!("{l}");
        }
    }
}

fn read_text(path: Option<&Path>) -> Result<String, Failure> {
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => std::io::read_to_string(std::io::stdin()).map_err(|e| Failure::Io(format!("stdin: {e}"))),
    }
}

fn write_text(path: &Path, text: &str) -> Outcome {
    std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_graph(path: Option<&Path>) -> Result<Hypergraph, Failure> {
    Ok(read_hgr(&read_text(path)?)?)
}

fn load_property(name: &str) -> Result<Property, Failure> {
    if name.ends_with(".hgp") || Path::new(name).is_file() {
        Ok(properties::read_hgp(&read_text(Some(Path::new(name)))?)?)
    } else {
        Ok(builtins::by_name(name)?)
    }
}

fn load_graphon(name: &str) -> Result<Graphon, Failure> {
    if name.ends_with(".gwn") || Path::new(name).is_file() {
        Ok(graphon::read_gwn(&read_text(Some(Path::new(name)))?)?)
    } else {
        Ok(Graphon::by_name(name)?)
    }
}

fn load_rule(name: &str, palette: Arc<Palette>, a_size: Option<usize>, seed: u64) -> Result<Box<dyn LocalRule>, Failure> {
    if name.ends_with(".hgt") || Path::new(name).is_file() {
        Ok(Box::new(rules::read_hgt(&read_text(Some(Path::new(name)))?)?))
    } else {
        Ok(rules::rule_by_name(name, palette, a_size, seed)?)
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn gen(kind: GenKind, m: usize, sigma: f64, seed: u64, clean: bool, graphon: &str, out: Option<&Path>) -> Outcome {
    let mut rep = Report::default();
    rep.kv("command", "gen");
    let g = match kind {
        GenKind::Graphon => {
            let p = load_graphon(graphon)?;
            rep.kv("kind", "graphon").kv("graphon", graphon).kv("n", m).kv("seed", seed);
            graphon::sample_graphon_graph(&p, m, seed).1
        }
        _ => {
            let spec = CorruptionSpec::new(m, sigma, seed)?;
            let (name, (g0, g)) = match kind {
                GenKind::Order => ("order", obs::gen_corrupted_order(&spec)),
                GenKind::Leq3 => ("leq3", obs::gen_leq3(&spec)?),
                _ => ("3uniform", obs::gen_3uniform(&spec)),
            };
            rep.kv("kind", name).kv("m", m).kv("sigma", sigma).kv("seed", seed).kv("clean", clean);
            if clean {
                g0
            } else {
                g
            }
        }
    };
    rep.kv("vertices", g.n());
    let text = write_hgr(&g);
    match out {
        Some(path) => {
            write_text(path, &text)?;
            rep.kv("out", path.display()).print();
        }
        None => {
            rep.eprint();
            print!("{text}");
        }
    }
    Ok(())
}

fn test(property: &str, size: usize, mode: TestMode, samples: usize, seed: u64, input: Option<&Path>) -> Outcome {
    let prop = load_property(property)?;
    let g = load_graph(input)?;
    let mode_v = match mode {
        TestMode::Exact => Mode::Exact,
        TestMode::Mc => Mode::MonteCarlo { samples, seed },
    };
    let s = properties::local_satisfaction(&prop, &g, size, mode_v)?;
    let mut rep = Report::default();
    rep.kv("command", "test").kv("property", prop.name()).kv("N", size);
    match mode {
        TestMode::Exact => rep.kv("mode", "exact"),
        TestMode::Mc => rep.kv("mode", "mc").kv("samples", samples).kv("seed", seed),
    };
    rep.kv("fraction", s.fraction)
        .kv("std_error", s.std_error)
        .kv("subsets_checked", s.subsets_checked)
        .print();
    Ok(())
}

fn dist(a: &Path, b: &Path) -> Outcome {
    let d = properties::distance(&load_graph(Some(a))?, &load_graph(Some(b))?)?;
    Report::default().kv("command", "dist").kv("distance", d).print();
    Ok(())
}

fn repair(algo: RepairAlgo, train: usize, seed: u64, input: Option<&Path>, output: Option<&Path>) -> Outcome {
    let g = load_graph(input)?;
    let mut rep = Report::default();
    rep.kv("command", "repair").kv("train", train).kv("seed", seed);
    let graph = match algo {
        RepairAlgo::Order => {
            rep.kv("algo", "order");
            match repairs::repair_total_order(&g, train, seed)? {
                OrderRepair::UnorderedTraining { training } => {
                    rep.kv("outcome", "retry").kv("training", join(&training)).print();
                    return Err(Failure::NotFound);
                }
                OrderRepair::Repaired { graph, report, .. } => {
                    let sizes: Vec<String> = report.bucket_sizes.iter().map(usize::to_string).collect();
                    rep.kv("outcome", "repaired")
                        .kv("edit_fraction", report.edit_fraction)
                        .kv("leftover", report.leftover)
                        .kv("leftover_fraction", report.leftover_fraction(g.n()))
                        .kv("bucket_sizes", sizes.join(","));
                    graph
                }
            }
        }
        RepairAlgo::Bipartite => {
            let r = repairs::repair_bipartite(&g, train, seed)?;
            rep.kv("algo", "bipartite")
                .kv("training", join(&r.training))
                .kv("edit_fraction", r.edit_fraction);
            r.graph
        }
    };
    if let Some(path) = output {
        write_text(path, &write_hgr(&graph))?;
        rep.kv("output", path.display());
    }
    rep.print();
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn rule(
    name: &str,
    a_size: Option<usize>,
    seed: u64,
    apply: Option<&Path>,
    anchors: &[usize],
    output: Option<&Path>,
    entail_upto: Option<usize>,
    property: Option<&str>,
    samples: Option<usize>,
) -> Outcome {
    let mut rep = Report::default();
    rep.kv("command", "rule").kv("name", name).kv("seed", seed);
    if apply.is_none() && entail_upto.is_none() {
        return Err(Failure::Usage("rule needs --apply or --entail-upto".into()));
    }
    if let Some(path) = apply {
        let g = load_graph(Some(path))?;
        let a = a_size.unwrap_or(anchors.len());
        let r = load_rule(name, g.palette_arc().clone(), Some(a), seed)?;
        let phi = Morphism::new(anchors.to_vec(), g.n())?;
        let out = rules::apply_rule(r.as_ref(), &g, &phi)?;
        rep.kv("a_size", r.a_size()).kv("anchors", join(anchors)).kv("output_vertices", out.n());
        match output {
            Some(p) => {
                write_text(p, &write_hgr(&out))?;
                rep.kv("output", p.display());
            }
            None => {
                rep.print();
                print!("{}", write_hgr(&out));
                return Ok(());
            }
        }
    }
    if let Some(n_max) = entail_upto {
        let prop_name = match (property, name) {
            (Some(p), _) => p,
            (None, "bipartite-delete") => "bipartite",
            (None, _) => return Err(Failure::Usage("--entail-upto needs --property".into())),
        };
        let prop = load_property(prop_name)?;
        let r = load_rule(name, prop.palette_arc().clone(), a_size, seed)?;
        let mode = match samples {
            Some(samples) => EntailmentMode::MonteCarlo { samples, seed },
            None => EntailmentMode::exhaustive(),
        };
        rep.kv("property", prop.name()).kv("a_size", r.a_size()).kv("entail_upto", n_max);
        match samples {
            Some(s) => rep.kv("mode", "mc").kv("samples", s),
            None => rep.kv("mode", "exhaustive"),
        };
        match rules::verify_entailment_upto(r.as_ref(), &prop, n_max, mode)? {
            None => {
                rep.kv("counterexample", "none").print();
            }
            Some(c) => {
                rep.kv("counterexample", "found").kv("free_vertices", c.v_size).print();
                println!("input");
                print!("{}", write_hgr(&c.input));
                println!("output");
                print!("{}", write_hgr(&c.output));
            }
        }
        return Ok(());
    }
    rep.print();
    Ok(())
}

fn obstruct(kind: ObstructKind, k: usize, budget: u64, seed: u64, rule_name: &str, input: Option<&Path>) -> Outcome {
    let g = load_graph(input)?;
    if k > g.n() {
        return Err(Failure::Usage(format!("{k} anchors on {} vertices", g.n())));
    }
    let anchors = rng::sample_subset(&mut rng::stream(seed, 7), g.n(), k);
    let r = load_rule(rule_name, g.palette_arc().clone(), Some(k), seed)?;
    let mut rep = Report::default();
    rep.kv("command", "obstruct")
        .kv("anchors", k)
        .kv("budget", budget)
        .kv("seed", seed)
        .kv("rule", rule_name);
    let b = SearchBudget::new(budget, seed);
    let found = match kind {
        ObstructKind::Pair => {
            rep.kv("kind", "pair");
            obs::defeat_rule_order(&g, r.as_ref(), &Morphism::new(anchors, g.n())?)?
        }
        ObstructKind::Quad => {
            rep.kv("kind", "quad");
            let gp = LazyModification::new(r.as_ref(), &g, &anchors)?;
            obs::find_inconsistent_quad(&g, &gp, &anchors, b)?
        }
        ObstructKind::Nine => {
            rep.kv("kind", "nine");
            let gp = LazyModification::new(r.as_ref(), &g, &anchors)?;
            obs::find_inconsistent_nine(&g, &gp, &anchors, b)?
        }
    };
    match found {
        Some(report) => {
            rep.kv("result", "found").print();
            print!("{report}");
            Ok(())
        }
        None => {
            rep.kv("result", "none").print();
            Err(Failure::NotFound)
        }
    }
}

fn ramsey(target: usize, input: Option<&Path>) -> Outcome {
    let g = load_graph(input)?;
    let mut rep = Report::default();
    rep.kv("command", "ramsey").kv("target", target).kv("vertices", g.n());
    match properties::find_monochromatic(&g, target)? {
        Some(w) => {
            rep.kv("result", "found").kv("witness", join(&w)).print();
            Ok(())
        }
        None => {
            rep.kv("result", "none").print();
            Err(Failure::NotFound)
        }
    }
}

fn graphon_cmd(
    name: &str,
    sample: Option<usize>,
    repair: Option<&[String]>,
    density: Option<usize>,
    seed: u64,
    out: Option<&Path>,
) -> Outcome {
    let p = load_graphon(name)?;
    let mut rep = Report::default();
    rep.kv("command", "graphon").kv("graphon", name).kv("seed", seed);
    if sample.is_none() && density.is_none() {
        return Err(Failure::Usage("graphon needs --sample or --density".into()));
    }
    if let Some(samples) = density {
        let e = graphon::triangle_density(&p, samples, seed)?;
        rep.kv("density_samples", samples).kv("triangle_density", e.mean).kv("std_error", e.std_error);
    }
    if let Some(n) = sample {
        let (colors, g) = graphon::sample_graphon_graph(&p, n, seed);
        rep.kv("sample", n).kv("triangles", graphon::count_triangles(&g));
        let mut written = g;
        if let Some(args) = repair {
            let cells: usize = args[0].parse().map_err(|_| Failure::Usage(format!("bad cell count `{}`", args[0])))?;
            let sigma: f64 = args[1].parse().map_err(|_| Failure::Usage(format!("bad sigma `{}`", args[1])))?;
            let (g2, r) = graphon::repair_triangle_free(&written, &colors, &p, cells, sigma, seed)?;
            rep.kv("cells", cells)
                .kv("sigma", sigma)
                .kv("edit_fraction", r.edit_fraction)
                .kv("residual_triangles", r.residual_triangles)
                .kv("zeta_triangle_sum", r.zeta_sum);
            written = g2;
        }
        if let Some(path) = out {
            write_text(path, &write_hgr(&written))?;
            rep.kv("out", path.display());
        }
    } else if repair.is_some() {
        return Err(Failure::Usage("--repair needs --sample".into()));
    }
    rep.print();
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Gen { kind, m, sigma, seed, clean, graphon, out } => {
            gen(kind, m, sigma, seed, clean, &graphon, out.as_deref())
        }
        Command::Test { property, size, mode, samples, seed, input } => {
            test(&property, size, mode, samples, seed, input.as_deref())
        }
        Command::Dist { a, b } => dist(&a, &b),
        Command::Repair { algo, train, seed, input, output } => {
            repair(algo, train, seed, input.as_deref(), output.as_deref())
        }
        Command::Rule { name, a_size, seed, apply, anchors, output, entail_upto, property, samples } => rule(
            &name,
            a_size,
            seed,
            apply.as_deref(),
            &anchors,
            output.as_deref(),
            entail_upto,
            property.as_deref(),
            samples,
        ),
        Command::Obstruct { kind, anchors, budget, seed, rule, input } => {
            obstruct(kind, anchors, budget, seed, &rule, input.as_deref())
        }
        Command::Ramsey { target, input } => ramsey(target, input.as_deref()),
        Command::Graphon { graphon, sample, repair, density, seed, out } => {
            graphon_cmd(&graphon, sample, repair.as_deref(), density, seed, out.as_deref())
        }
    }
}

fn init_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("HEDRA_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("HEDRA_THREADS=`{v}` is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match init_threads().and_then(|()| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::NotFound) => ExitCode::from(2),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
