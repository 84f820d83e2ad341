use std::fmt::Display;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use twofrieze::cluster::{cluster_strings, enumerate_clusters, ev_point, eval_ev, ClusterError, MutationSequence, Seed};
use twofrieze::corpus;
use twofrieze::enumerate::{classify_unitary, count_orbits, enumerate_fragments, random_word, EnumerateError, SearchConfig};
use twofrieze::frieze::{complete_from_columns, complete_symbolic, Fragment, FriezeError};
use twofrieze::geometry::{lift_to_polygon, polygon_to_fragment, GeometryError, Polygon};
use twofrieze::surgery::{cut_above, cut_below, find_glue_seams, glue_over_ones, glue_over_pair, CutSite, SurgeryError};
use twofrieze::symmetry::{canonical_form, orbit};

/// Integral closed 2-friezes: completion, cluster evaluation, enumeration,
/// surgery and projective polygons.
///
/// Fragment inputs are a file path, `-` for stdin, or `corpus:NAME` for a
/// bundled fragment. Fragments are written as one-line JSON unless
/// `--pretty` asks for an aligned grid.
#[derive(Parser)]
#[command(name = "twofrieze", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Complete a fragment from two seed columns.
    Complete {
        #[arg(long)]
        width: Option<usize>,
        /// Column 0 and column 1, top to bottom, comma-separated.
        #[arg(long, num_args = 2, value_names = ["COL0", "COL1"], required = true)]
        cols: Vec<String>,
        #[arg(long)]
        pretty: bool,
    },
    /// Check the local rule on a fragment.
    Verify { input: String },
    /// The formal frieze over Laurent polynomials in x1..x2m.
    Formal {
        #[arg(long)]
        width: usize,
        #[arg(long)]
        pretty: bool,
    },
    /// Mutate the initial seed of Q_m along a word.
    Mutate {
        #[arg(long)]
        width: usize,
        /// Mutation word applied left to right, e.g. 2,4.
        #[arg(long, default_value = "")]
        seq: String,
        /// Rational initial values instead of the symbolic seed.
        #[arg(long)]
        values: Option<String>,
    },
    /// The unitary fragment obtained by mutating the all-ones seed.
    Ev {
        #[arg(long)]
        width: usize,
        #[arg(long, conflicts_with = "random")]
        mutate: Option<String>,
        /// Use a random word of this length.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the evaluation point and word as JSON instead of the fragment.
        #[arg(long)]
        point: bool,
        #[arg(long)]
        pretty: bool,
    },
    /// All fragments with seed entries in 1..=bound, as JSON lines.
    Enumerate {
        #[arg(long)]
        width: usize,
        #[arg(long)]
        bound: u64,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        cap: Option<usize>,
        /// One line per dihedral orbit instead of per fragment.
        #[arg(long)]
        orbits: bool,
        /// Search mutation words up to this depth and tag each fragment.
        #[arg(long, value_name = "DEPTH")]
        classify_unitary: Option<usize>,
    },
    /// The dihedral orbit of a fragment, as JSON lines.
    Orbit { input: String },
    /// The canonical representative of a fragment's orbit.
    Canon {
        input: String,
        #[arg(long)]
        pretty: bool,
    },
    /// Glue two fragments over a row of ones.
    Glue {
        upper: String,
        lower: String,
        #[arg(long, default_value_t = 0)]
        c1: usize,
        #[arg(long, default_value_t = 0)]
        c2: usize,
        #[arg(long)]
        pretty: bool,
    },
    /// Glue over a shared pair (x,y) of adjacent entries.
    GlueXy {
        upper: String,
        lower: String,
        #[arg(long, default_value_t = 0)]
        c1: usize,
        #[arg(long, default_value_t = 0)]
        c2: usize,
        /// List the seams (c1,c2) sharing this pair instead of gluing.
        #[arg(long, value_name = "X,Y")]
        find_pair: Option<String>,
        #[arg(long)]
        pretty: bool,
    },
    /// Cut a fragment along the pair at (row, col).
    Cut {
        input: String,
        #[arg(long)]
        row: usize,
        #[arg(long)]
        col: usize,
        /// Keep the part below the pair instead of above.
        #[arg(long)]
        below: bool,
        #[arg(long)]
        pretty: bool,
    },
    /// The polygon in R^3 associated with a fragment.
    Lift { input: String },
    /// The fragment of a polygon given as JSON vertex list.
    Unlift {
        input: String,
        #[arg(long)]
        pretty: bool,
    },
    /// All clusters of Q_m, one JSON array of variables per line.
    Clusters {
        #[arg(long)]
        width: usize,
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Display) -> Self {
        Failure { code: 2, message: format!("usage: {message}") }
    }

    fn input(message: impl Display) -> Self {
        Failure { code: 3, message: format!("InputError: {message}") }
    }
}

macro_rules! error_class {
    ($ty:ty, $code:expr, $name:expr) => {
        impl From<$ty> for Failure {
            fn from(e: $ty) -> Self {
                Failure { code: $code, message: format!("{}: {e}", $name) }
            }
        }
    };
}

error_class!(FriezeError, 4, "FriezeError");
error_class!(ClusterError, 5, "ClusterError");
error_class!(SurgeryError, 6, "SurgeryError");
error_class!(GeometryError, 7, "GeometryError");
error_class!(EnumerateError, 8, "EnumerateError");

fn read_input(source: &str) -> Result<String, Failure> {
    if let Some(name) = source.strip_prefix("corpus:") {
        return corpus::raw(name)
            .map(str::to_owned)
            .ok_or_else(|| Failure::input(format!("no corpus entry {name:?}; known: {}", corpus::names().join(", "))));
    }
    if source == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(Failure::input)?;
        return Ok(s);
    }
    std::fs::read_to_string(source).map_err(|e| Failure::input(format!("{source}: {e}")))
}

fn read_fragment(source: &str) -> Result<Fragment, Failure> {
    Ok(Fragment::parse_any(&read_input(source)?)?)
}

fn emit(f: &Fragment, pretty: bool) -> String {
    if pretty {
        f.to_text(true)
    } else {
        f.to_json()
    }
}

fn parse_list<T: std::str::FromStr>(text: &str) -> Result<Vec<T>, Failure> {
    text.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|_| Failure::usage(format!("cannot parse {t:?} in {text:?}"))))
        .collect()
}

fn parse_word(text: &str) -> Result<MutationSequence, Failure> {
    text.parse().map_err(|e| Failure::usage(format!("mutation word {text:?}: {e}")))
}

fn line(v: Value) -> String {
    let mut s = v.to_string();
    s.push('\n');
    s
}

fn aligned(rows: &[Vec<String>]) -> String {
    let w = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    rows.iter()
        .map(|r| r.iter().map(|c| format!("{c:>w$}")).collect::<Vec<_>>().join("  ") + "\n")
        .collect()
}

fn run(command: Command) -> Result<String, Failure> {
    Ok(match command {
        Command::Complete { width, cols, pretty } => {
            let col0: Vec<BigRational> = parse_list(&cols[0])?;
            let col1: Vec<BigRational> = parse_list(&cols[1])?;
            if col0.len() != col1.len() || width.is_some_and(|m| m != col0.len()) {
                return Err(Failure::usage("both columns need --width entries"));
            }
            emit(&complete_from_columns(&col0, &col1)?, pretty)
        }
        Command::Verify { input } => {
            let f = read_fragment(&input)?;
            let violations = f.check_local_rule();
            let report = json!({
                "valid": violations.is_empty(),
                "width": f.width(),
                "period": f.period(),
                "minimal_period": f.minimal_period(),
                "violations": violations
                    .iter()
                    .map(|v| json!({"row": v.row, "col": v.col, "entry": v.lhs.to_string(), "rule": v.rhs.to_string()}))
                    .collect::<Vec<_>>(),
            });
            if violations.is_empty() {
                line(report)
            } else {
                print!("{}", line(report));
                return Err(Failure { code: 4, message: format!("FriezeError: local rule fails at {} entries", violations.len()) });
            }
        }
        Command::Formal { width, pretty } => {
            let f = complete_symbolic(width)?;
            let rows: Vec<Vec<String>> = f.rows().iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect();
            if pretty {
                aligned(&rows)
            } else {
                line(json!({"width": f.width(), "period": f.period(), "rows": rows}))
            }
        }
        Command::Mutate { width, seq, values } => {
            let word = parse_word(&seq)?;
            let (quiver, vars) = match values {
                None => {
                    let s = Seed::initial_symbolic(width).mutate_sequence(word.as_slice())?;
                    (s.quiver().clone(), s.vars().iter().map(|v| v.to_string()).collect::<Vec<_>>())
                }
                Some(values) => {
                    let s = Seed::initial_numeric(width, parse_list(&values)?)?.mutate_sequence(word.as_slice())?;
                    (s.quiver().clone(), s.vars().iter().map(|v| v.to_string()).collect())
                }
            };
            line(json!({"sequence": word.to_string(), "quiver": quiver.matrix(), "vars": vars}))
        }
        Command::Ev { width, mutate, random, seed, point, pretty } => {
            let word = match (mutate, random) {
                (Some(w), None) => parse_word(&w)?,
                (None, Some(len)) => random_word(width, len, &mut ChaCha8Rng::seed_from_u64(seed)),
                (None, None) => MutationSequence::empty(),
                (Some(_), Some(_)) => unreachable!("clap rejects both"),
            };
            if point {
                let x = ev_point(width, &word)?;
                line(json!({"sequence": word.to_string(), "x": x.iter().map(|v| v.to_string()).collect::<Vec<_>>()}))
            } else {
                emit(&eval_ev(width, &word)?, pretty)
            }
        }
        Command::Enumerate { width, bound, workers, cap, orbits, classify_unitary: depth } => {
            let cfg = SearchConfig { width, bound, workers, cap };
            let frags = enumerate_fragments(&cfg)?;
            let classes = count_orbits(&frags);
            let class = depth.map(|d| classify_unitary(&frags, width, d)).transpose()?;
            let mut out = String::new();
            if orbits {
                for o in &classes {
                    let mut v = json!({"representative": o.representative.to_json_value(), "size": o.size, "present": o.present});
                    if let Some(c) = &class {
                        v["unitary"] = json!(c.unitary.contains_key(&o.representative));
                    }
                    out += &line(v);
                }
            } else {
                for f in &frags {
                    let v = match &class {
                        None => f.to_json_value(),
                        Some(c) => json!({
                            "fragment": f.to_json_value(),
                            "unitary": c.unitary.contains_key(f),
                            "word": c.unitary.get(f).map(|w| w.to_string()),
                        }),
                    };
                    out += &line(v);
                }
            }
            let mut summary = json!({"width": width, "bound": bound, "fragments": frags.len(), "orbits": classes.len()});
            if let Some(c) = &class {
                summary["unitary"] = json!(c.unitary.len());
                summary["non_unitary"] = json!(c.unknown.len());
                summary["search_closed"] = json!(c.exhaustive);
            }
            out + &line(json!({ "summary": summary }))
        }
        Command::Orbit { input } => orbit(&read_fragment(&input)?).iter().map(Fragment::to_json).collect(),
        Command::Canon { input, pretty } => emit(&canonical_form(&read_fragment(&input)?), pretty),
        Command::Glue { upper, lower, c1, c2, pretty } => {
            emit(&glue_over_ones(&read_fragment(&upper)?, c1, &read_fragment(&lower)?, c2)?, pretty)
        }
        Command::GlueXy { upper, lower, c1, c2, find_pair, pretty } => {
            let (f1, f2) = (read_fragment(&upper)?, read_fragment(&lower)?);
            match find_pair {
                Some(pair) => {
                    let xy: Vec<BigInt> = parse_list(&pair)?;
                    let [x, y] = xy.as_slice() else {
                        return Err(Failure::usage("--find-pair takes two values X,Y"));
                    };
                    find_glue_seams(&f1, &f2, x, y).into_iter().map(|(a, b)| line(json!({"c1": a, "c2": b}))).collect()
                }
                None => emit(&glue_over_pair(&f1, c1, &f2, c2)?, pretty),
            }
        }
        Command::Cut { input, row, col, below, pretty } => {
            let f = read_fragment(&input)?;
            let site = CutSite { row, col };
            emit(&if below { cut_below(&f, site)? } else { cut_above(&f, site)? }, pretty)
        }
        Command::Lift { input } => lift_to_polygon(&read_fragment(&input)?)?.to_json(),
        Command::Unlift { input, pretty } => emit(&polygon_to_fragment(&Polygon::from_json(&read_input(&input)?)?)?, pretty),
        Command::Clusters { width, cap } => {
            let clusters = enumerate_clusters(width, cap)?;
            let mut out: String = cluster_strings(&clusters).into_iter().map(|c| line(json!(c))).collect();
            out += &line(json!({"summary": {"width": width, "clusters": clusters.len()}}));
            out
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("{}", f.message);
            ExitCode::from(f.code)
        }
    }
}
