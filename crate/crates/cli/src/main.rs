//! `mstratio`: spanning trees, disk systems and max MST-ratio splits of point files.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid input or I/O failure,
//! 3 a planar 12-point prefix without a disjoint disk pair (points dumped to
//! stderr).

mod svg;

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use mstratio::constructions::generate_with_rng;
use mstratio::experiments::{beta_estimate, run_trials, TrialConfig};
use mstratio::geometry::{read_points, write_points};
use mstratio::rng::{stream_rng, DEFAULT_SEED};
use mstratio::{
    count_disjoint_pairs, disk_system, emst, find_disjoint_pair, find_disjoint_pair_prefix,
    generate, Bipartition, Certificate, Error, GeneratorKind, GeneratorSpec, PointSet, RatioReport,
    StrategyChoice,
};

#[derive(Parser)]
#[command(
    name = "mstratio",
    version,
    about = "Euclidean MSTs and max MST-ratio bipartitions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Euclidean minimum spanning tree.
    Emst(Common),
    /// Exact max MST-ratio by exhaustive search (n <= 22).
    Gamma(Common),
    /// Split the points with one strategy and report the ratio.
    Partition {
        #[command(flatten)]
        common: Common,
        /// exact, edge-deletion, disjoint-disks, random-halves, dense or auto.
        #[arg(long, default_value = "auto")]
        strategy: String,
        /// Density constant for the dense strategy.
        #[arg(long)]
        alpha: Option<f64>,
    },
    /// Nearest-neighbour disks, optionally with a disjoint pair.
    Disks {
        #[command(flatten)]
        common: Common,
        /// Report the maximum-slack disjoint pair of the whole set.
        #[arg(long, conflicts_with = "prefix")]
        pair: bool,
        /// Report the disjoint pair found among the first M points.
        #[arg(long, value_name = "M")]
        prefix: Option<usize>,
    },
    /// Number of pairs with disjoint nearest-neighbour disks.
    CountPairs(Common),
    /// Write a generated point set.
    Gen(Common),
    /// Monte-Carlo trials of one strategy on generated sets.
    Trials {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value = "random-halves")]
        strategy: String,
        #[arg(long)]
        alpha: Option<f64>,
        /// Ratios above this count towards fraction_above.
        #[arg(long, default_value_t = 1.0)]
        threshold: f64,
        /// Also count disjoint disk pairs per trial.
        #[arg(long)]
        count_pairs: bool,
    },
    /// Mean of w/sqrt(n) for uniform points in the unit square.
    Beta {
        /// Comma-separated set sizes.
        #[arg(long, value_delimiter = ',', default_values_t = [1000usize, 10000])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw an SVG figure.
    Plot {
        #[command(flatten)]
        common: Common,
        /// Output file when the input is a file (otherwise use -o).
        #[arg(value_name = "OUT")]
        svg_path: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = What::Bipartition)]
        what: What,
        /// Strategy that picks the bipartition.
        #[arg(long, default_value = "disjoint-disks")]
        strategy: String,
        #[arg(long)]
        alpha: Option<f64>,
        /// Explicit blue indices, comma-separated; an empty list draws the plain tree.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        blue: Option<Vec<String>>,
    },
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum What {
    Tree,
    Disks,
    Bipartition,
}

/// Point source, output and format flags shared by most subcommands.
#[derive(Args)]
struct Common {
    /// Point file (`-` for stdin): one point per line, coordinates separated
    /// by whitespace or commas, `#` starts a comment.
    input: Option<PathBuf>,
    /// Generate the points instead of reading them.
    #[arg(long, value_name = "KIND")]
    gen: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 100.0)]
    gap: f64,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Record wall-clock times (trials only).
    #[arg(long)]
    timing: bool,
}

enum Failure {
    Usage(String),
    Input(String),
    Counterexample(Vec<Vec<f64>>, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Counterexample { ref points } => {
                Failure::Counterexample(points.clone(), e.to_string())
            }
            e => Failure::Input(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

impl Common {
    fn spec(&self) -> CliResult<Option<GeneratorSpec>> {
        let Some(name) = &self.gen else {
            return Ok(None);
        };
        let kind: GeneratorKind = name
            .parse()
            .map_err(|e: Error| Failure::Usage(e.to_string()))?;
        let n = match (kind.fixed_size(), self.n) {
            (Some(fixed), None) => fixed,
            (_, Some(n)) => n,
            (None, None) => return Err(Failure::Usage(format!("--gen {kind} needs --n"))),
        };
        let spec = GeneratorSpec::new(kind)
            .with_n(n)
            .with_epsilon(self.epsilon)
            .with_seed(self.seed)
            .with_dimension(self.dim)
            .with_gap(self.gap);
        spec.check()?;
        Ok(Some(spec))
    }

    fn points(&self) -> CliResult<PointSet> {
        if let Some(spec) = self.spec()? {
            if self.input.is_some() {
                return Err(Failure::Usage(
                    "give either an input file or --gen, not both".into(),
                ));
            }
            return Ok(generate(&spec)?);
        }
        match self.input.as_deref() {
            None => Err(Failure::Usage(
                "no input: give a point file or --gen <KIND>".into(),
            )),
            Some(p) if p == Path::new("-") => {
                let mut text = String::new();
                io::stdin().read_to_string(&mut text)?;
                Ok(read_points(text.as_bytes())?)
            }
            Some(p) => {
                let file =
                    File::open(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
                Ok(read_points(BufReader::new(file))?)
            }
        }
    }

    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

fn sink(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit(path: Option<&Path>, text: &str) -> CliResult<()> {
    let mut out = sink(path)?;
    out.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

fn strategy(name: &str, alpha: Option<f64>) -> CliResult<StrategyChoice> {
    let choice: StrategyChoice = name
        .parse()
        .map_err(|e: Error| Failure::Usage(e.to_string()))?;
    Ok(match choice {
        StrategyChoice::Dense { .. } => StrategyChoice::Dense { alpha },
        other => other,
    })
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

/// Text output rounds to 12 significant digits so that values such as 1/2
/// read as `0.5` rather than carrying last-bit noise; json and csv keep every bit.
fn human(x: f64) -> f64 {
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn report_text(r: &RatioReport, format: Format) -> CliResult<String> {
    Ok(match format {
        Format::Json => r.to_json().map_err(Failure::from)?,
        Format::Csv => format!(
            "strategy,ratio,w_total,w_red,w_blue,blue_indices\n{},{},{},{},{},{}\n",
            r.strategy,
            r.ratio,
            r.w_total,
            r.w_red,
            r.w_blue,
            join(r.bipartition.blue(), " ")
        ),
        Format::Text => {
            let mut s = format!(
                "strategy {}\nratio {}\nw_total {}\nw_red {}\nw_blue {}\nblue {}\n",
                r.strategy,
                human(r.ratio),
                human(r.w_total),
                human(r.w_red),
                human(r.w_blue),
                join(r.bipartition.blue(), " ")
            );
            if let Some(b) = r.certificate.lower_bound() {
                s.push_str(&format!("certified_lower_bound {}\n", human(b)));
            }
            s
        }
    })
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Emst(c) => {
            let set = c.points()?;
            let tree = emst(&set);
            let text = match c.format(Format::Json) {
                Format::Json => tree.to_json()?,
                Format::Csv => {
                    let mut s = String::from("u,v,length\n");
                    for e in &tree.edges {
                        s.push_str(&format!("{},{},{}\n", e.u, e.v, e.length));
                    }
                    s
                }
                Format::Text => {
                    let mut s = format!("total_length {}\n", tree.total_length);
                    for e in &tree.edges {
                        s.push_str(&format!("{} {} {}\n", e.u, e.v, e.length));
                    }
                    s
                }
            };
            emit(c.output.as_deref(), &text)
        }
        Command::Gamma(c) => {
            let set = c.points()?;
            let r = mstratio::exact_gamma(&set)?;
            let text = match c.format(Format::Text) {
                Format::Text => format!("{}\n", human(r.ratio)),
                f => report_text(&r, f)?,
            };
            emit(c.output.as_deref(), &text)
        }
        Command::Partition {
            common,
            strategy: name,
            alpha,
        } => {
            let choice = strategy(&name, alpha)?;
            let set = common.points()?;
            let r = choice.run(&set)?;
            emit(
                common.output.as_deref(),
                &report_text(&r, common.format(Format::Json))?,
            )
        }
        Command::Disks {
            common,
            pair,
            prefix,
        } => {
            let set = common.points()?;
            let format = common.format(Format::Json);
            let found = if let Some(m) = prefix {
                Some(find_disjoint_pair_prefix(&set, m)?)
            } else if pair {
                Some(find_disjoint_pair(&set)?.ok_or(Error::NoDisjointPair)?)
            } else {
                None
            };
            let text = match (found, format) {
                (Some(p), Format::Json) => serde_json::to_string(&p).map_err(Error::from)?,
                (Some(p), Format::Csv) => format!(
                    "p,q,distance,r_p,r_q,slack\n{},{},{},{},{},{}\n",
                    p.p, p.q, p.distance, p.r_p, p.r_q, p.slack
                ),
                (Some(p), Format::Text) => format!(
                    "p {}\nq {}\ndistance {}\nr_p {}\nr_q {}\nslack {}\n",
                    p.p, p.q, p.distance, p.r_p, p.r_q, p.slack
                ),
                (None, f) => {
                    let disks = disk_system(&set)?;
                    match f {
                        Format::Json => disks.to_json()?,
                        Format::Csv | Format::Text => {
                            let sep = if f == Format::Csv { "," } else { " " };
                            let mut s = String::new();
                            if f == Format::Csv {
                                let coords: Vec<String> =
                                    (0..set.dim()).map(|k| format!("x{k}")).collect();
                                s.push_str(&format!("index,{},radius\n", coords.join(",")));
                            }
                            for i in 0..set.len() {
                                s.push_str(&format!(
                                    "{i}{sep}{}{sep}{}\n",
                                    join(set.point(i), sep),
                                    disks.radius(i)
                                ));
                            }
                            s
                        }
                    }
                }
            };
            emit(common.output.as_deref(), &text)
        }
        Command::CountPairs(c) => {
            let set = c.points()?;
            let n = set.len();
            let count = count_disjoint_pairs(&set)?;
            let bound = (n * (n - 1)) as f64 / 132.0;
            let text = match c.format(Format::Text) {
                Format::Text => format!("{count}\n"),
                Format::Json => json!({ "n": n, "count": count, "bound": bound }).to_string(),
                Format::Csv => format!("n,count,bound\n{n},{count},{bound}\n"),
            };
            emit(c.output.as_deref(), &text)
        }
        Command::Gen(c) => {
            let spec = c
                .spec()?
                .ok_or_else(|| Failure::Usage("gen needs --gen <KIND>".into()))?;
            let set = generate(&spec)?;
            let mut out = sink(c.output.as_deref())?;
            match c.format(Format::Text) {
                Format::Text => write_points(&set, &mut out)?,
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&set.to_vecs()).map_err(Error::from)?
                )?,
                Format::Csv => {
                    for p in set.iter() {
                        writeln!(out, "{}", join(p, ","))?;
                    }
                }
            }
            out.flush()?;
            Ok(())
        }
        Command::Trials {
            common,
            trials,
            strategy: name,
            alpha,
            threshold,
            count_pairs,
        } => {
            let choice = strategy(&name, alpha)?;
            let spec = common
                .spec()?
                .ok_or_else(|| Failure::Usage("trials needs --gen <KIND> and --n".into()))?;
            let mut cfg = TrialConfig::new(spec, trials, choice, common.seed);
            cfg.threshold = threshold;
            cfg.count_pairs = count_pairs;
            cfg.timing = common.timing;
            let summary = run_trials(&cfg)?;
            let text = match common.format(Format::Json) {
                Format::Json => summary.to_json()?,
                Format::Csv => summary.csv_string()?,
                Format::Text => {
                    let mut s = format!(
                        "trials {}\nfailures {}\ncounterexamples {}\nfraction_above {}\n",
                        summary.trials.len(),
                        summary.failures,
                        summary.counterexamples,
                        summary.fraction_above
                    );
                    if let Some(r) = &summary.ratio {
                        s.push_str(&format!(
                            "ratio_mean {}\nratio_std {}\nratio_min {}\nratio_max {}\n",
                            human(r.mean),
                            human(r.std_dev),
                            human(r.min),
                            human(r.max)
                        ));
                    }
                    if let Some(m) = summary.min_disjoint_pairs {
                        s.push_str(&format!("min_disjoint_pairs {m}\n"));
                    }
                    s
                }
            };
            emit(common.output.as_deref(), &text)?;
            if let Some(t) = summary.trials.iter().find(|t| t.counterexample) {
                let set = generate_with_rng(
                    &cfg.generator,
                    &mut stream_rng(cfg.seed, t.trial_id as u64),
                )?;
                return Err(Failure::Counterexample(
                    set.to_vecs(),
                    format!("trial {}: {}", t.trial_id, t.error.as_deref().unwrap_or("")),
                ));
            }
            Ok(())
        }
        Command::Beta {
            sizes,
            trials,
            seed,
            format,
            output,
        } => {
            let table = beta_estimate(&sizes, trials, seed)?;
            let text = match format.unwrap_or(Format::Json) {
                Format::Json => serde_json::to_string_pretty(&table).map_err(Error::from)?,
                Format::Csv | Format::Text => {
                    let sep = if format == Some(Format::Csv) {
                        ","
                    } else {
                        " "
                    };
                    let mut s =
                        ["n", "mean", "std", "min", "max", "max_w", "few_bound"].join(sep) + "\n";
                    for r in &table.rows {
                        let st = &r.stats;
                        s.push_str(&join(
                            &[
                                r.n as f64,
                                st.mean,
                                st.std_dev,
                                st.min,
                                st.max,
                                r.max_w,
                                r.few_bound,
                            ],
                            sep,
                        ));
                        s.push('\n');
                    }
                    s
                }
            };
            emit(output.as_deref(), &text)
        }
        Command::Plot {
            mut common,
            svg_path,
            what,
            strategy: name,
            alpha,
            blue,
        } => {
            // with --gen the only positional is the output file
            let mut target = common.output.take();
            if common.gen.is_some() && svg_path.is_none() {
                target = target.or(common.input.take());
            } else if let Some(p) = svg_path {
                target = Some(p);
            }
            let target =
                target.ok_or_else(|| Failure::Usage("plot needs an output .svg path".into()))?;
            let set = common.points()?;
            if set.dim() != 2 {
                return Err(Failure::Input(format!(
                    "plot needs planar points, got dimension {}",
                    set.dim()
                )));
            }
            let tree = emst(&set);
            let disks = disk_system(&set)?;
            let mut fig = svg::Figure {
                tree: Some(&tree),
                ..Default::default()
            };
            let split;
            let trees;
            match what {
                What::Tree => {
                    fig.title = Some(format!(
                        "EMST, n = {}, w = {}",
                        set.len(),
                        tree.total_length
                    ))
                }
                What::Disks => {
                    fig.disks = (0..set.len()).map(|i| (i, disks.radius(i))).collect();
                    fig.title = Some(format!("nearest-neighbour disks, n = {}", set.len()));
                }
                What::Bipartition => {
                    let report = match &blue {
                        Some(list) => {
                            let idx = list
                                .iter()
                                .filter(|s| !s.trim().is_empty())
                                .map(|s| s.trim().parse::<usize>())
                                .collect::<Result<Vec<_>, _>>()
                                .map_err(|e| Failure::Usage(format!("--blue: {e}")))?;
                            if idx.is_empty() {
                                None
                            } else {
                                Some(mstratio::ratio(
                                    &set,
                                    &Bipartition::from_blue(set.len(), &idx)?,
                                )?)
                            }
                        }
                        None => Some(strategy(&name, alpha)?.run(&set)?),
                    };
                    if let Some(r) = report {
                        if let Certificate::DisjointDisks { pair, .. } = &r.certificate {
                            fig.disks = vec![(pair.p, pair.r_p), (pair.q, pair.r_q)];
                        }
                        trees = (
                            mstratio::emst::emst_subset(&set, r.bipartition.red())?,
                            mstratio::emst::emst_subset(&set, r.bipartition.blue())?,
                        );
                        fig.title = Some(format!("{}: ratio {}", r.strategy, human(r.ratio)));
                        split = r.bipartition;
                        fig.parts = Some((&split, &trees.0, &trees.1));
                    } else {
                        fig.title = Some(format!(
                            "EMST, n = {}, w = {}",
                            set.len(),
                            tree.total_length
                        ));
                    }
                }
            }
            let mut out = sink(Some(&target))?;
            svg::emit_svg(&set, &fig, &mut out)?;
            out.flush()?;
            Ok(())
        }
    }
}

fn configure_threads() -> CliResult<()> {
    let Ok(value) = std::env::var("MSTRATIO_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| {
            Failure::Input(format!(
                "MSTRATIO_THREADS must be a positive integer, got {value:?}"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Input(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match configure_threads().and_then(|()| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nRun `mstratio --help` for usage.");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Counterexample(points, msg)) => {
            eprintln!("counterexample: {msg}");
            let dump = mstratio::validate(points.clone())
                .map(|set| {
                    let mut buf = Vec::new();
                    let _ = write_points(&set, &mut buf);
                    String::from_utf8_lossy(&buf).into_owned()
                })
                .unwrap_or_else(|_| format!("{points:?}\n"));
            eprint!("{dump}");
            ExitCode::from(3)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counterexamples_keep_their_points() {
        let points = vec![vec![0.0, 0.0], vec![1.0, 0.0]];
        match Failure::from(Error::Counterexample {
            points: points.clone(),
        }) {
            Failure::Counterexample(p, msg) => {
                assert_eq!(p, points);
                assert!(msg.contains("first 2 points"));
            }
            _ => panic!("wrong failure kind"),
        }
        assert!(matches!(
            Failure::from(Error::NoDisjointPair),
            Failure::Input(_)
        ));
    }

    #[test]
    fn text_rounding() {
        assert_eq!(human(0.5000000000000001).to_string(), "0.5");
        assert_eq!(human(1.0000000000000002).to_string(), "1");
        assert_eq!(human(0.9106836025229591).to_string(), "0.910683602523");
    }
}
