use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mmlab_core::algebra::FieldMatrix;
use mmlab_core::io::{mm_to_json, mm_to_string, parse_mm, set_json};
use mmlab_core::isotropic::{ort_via_eulerian, z_graph, Graph};
use mmlab_core::matroid::Matroid;
use mmlab_core::minors_catalog::{
    catalog, classify_binary_tight3, fixture, has_minor, tight_extension_search, FIXTURE_NAMES,
};
use mmlab_core::multimatroid::{zm, Carrier, Multimatroid, SLOT_NAMES};
use mmlab_core::orienting::{eval_suite, ort, ort_fast};
use mmlab_core::polynomials::{bracket, format_rational, global_interlace, interlace, q1, transition_eval, transition_poly};
use mmlab_core::{Error, Result};
use num_rational::BigRational;
use serde_json::{json, Value};

/// Exact-arithmetic multimatroid computations.
#[derive(Parser)]
#[command(name = "mmlab", version)]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Polynomials: q1 and transition of a multimatroid, interlace/global/bracket of a graph.
    Poly {
        kind: PolyKind,
        #[command(flatten)]
        input: Input,
        /// Comma-separated element weights in global element order (transition only).
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<String>,
        /// Evaluate at y instead of printing the polynomial (transition only).
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        y: Option<BigRational>,
    },
    /// Orienting transversals.
    Ort {
        #[command(flatten)]
        input: Input,
        /// Use the cycle-space algorithm from this transversal (e.g. "0c,1c").
        #[arg(long)]
        from: Option<String>,
    },
    /// Evaluation identities for a binary tight 3-matroid.
    Evals {
        #[command(flatten)]
        input: Input,
        /// Transversal T (default: the last slot of every class).
        #[arg(long)]
        transversal: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Multimatroid and tightness checks.
    Tight {
        #[command(flatten)]
        input: Input,
    },
    /// Minor scan against a catalog fixture or a given pattern.
    Minors {
        #[command(flatten)]
        input: Input,
        /// Catalog fixture name; every fixture is tried when neither this nor --pattern is given.
        #[arg(long)]
        fixture: Option<String>,
        /// Pattern multimatroid (.mm.json).
        #[arg(long)]
        pattern: Option<String>,
    },
    /// Binary classification of a tight 3-matroid.
    Classify {
        #[command(flatten)]
        input: Input,
    },
    /// Tutte polynomial evaluation T(M; x, y).
    Tutte {
        #[arg(long)]
        matroid: String,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        x: BigRational,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        y: BigRational,
    },
    /// Built-in fixtures.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Tight 3-matroid extension of a 2-matroid.
    Extend {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PolyKind {
    Q1,
    Transition,
    Interlace,
    Global,
    Bracket,
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Dump { name: String },
}

/// Exactly one source; `-` reads standard input.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Multimatroid in .mm.json.
    #[arg(long)]
    mm: Option<String>,
    /// Graph in .graph; used as 𝒵_G.
    #[arg(long)]
    graph: Option<String>,
    /// Matrix in .gfmat; used as 𝒵_M.
    #[arg(long)]
    matroid: Option<String>,
}

fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    s.trim().parse::<BigRational>().map_err(|_| format!("{s:?} is not an exact rational (use p/q or an integer)"))
}

fn read_source(path: &str) -> Result<String> {
    let mut text = String::new();
    let res = if path == "-" { io::stdin().read_to_string(&mut text).map(|_| ()) } else { fs::read_to_string(path).map(|t| text = t) };
    res.map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
    Ok(text)
}

fn load_graph(path: &str) -> Result<Graph> {
    Graph::parse(&read_source(path)?)
}

fn load_matroid(path: &str) -> Result<Matroid> {
    Matroid::from_matrix(&FieldMatrix::parse_gfmat(&read_source(path)?)?, None)
}

impl Input {
    fn graph(&self) -> Result<Graph> {
        match &self.graph {
            Some(p) => load_graph(p),
            None => Err(Error::Invalid("this command needs --graph".into())),
        }
    }

    fn multimatroid(&self) -> Result<Multimatroid> {
        Ok(self.load()?.0)
    }

    /// The multimatroid, plus the graph when the input was one. Reads the source once.
    fn load(&self) -> Result<(Multimatroid, Option<Graph>)> {
        match (&self.mm, &self.graph, &self.matroid) {
            (Some(p), _, _) => Ok((parse_mm(&read_source(p)?)?, None)),
            (_, Some(p), _) => {
                let g = load_graph(p)?;
                Ok((z_graph(&g)?.multimatroid, Some(g)))
            }
            (_, _, Some(p)) => Ok((zm(&load_matroid(p)?)?, None)),
            _ => Err(Error::Invalid("no input given".into())),
        }
    }
}

/// Parses "0a,1c" (class number then slot letter) into a set on the carrier.
fn parse_set(car: &Carrier, s: &str) -> Result<u64> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).try_fold(0u64, |m, tok| {
        let split = tok.find(|c: char| !c.is_ascii_digit()).unwrap_or(tok.len());
        let (num, slot) = tok.split_at(split);
        let class: usize = num.parse().map_err(|_| Error::Parse(format!("bad element {tok:?}")))?;
        let slot = match slot.chars().collect::<Vec<_>>()[..] {
            [c] => SLOT_NAMES.iter().position(|&n| n == c),
            _ => None,
        }
        .ok_or_else(|| Error::Parse(format!("bad element {tok:?}")))?;
        if class >= car.order() || slot >= car.size(class) {
            return Err(Error::UnknownElement(tok.to_string()));
        }
        Ok(m | 1 << car.elem(class, slot))
    })
}

fn sets_json(car: &Carrier, sets: &[u64]) -> Value {
    Value::Array(sets.iter().map(|&s| set_json(car, s)).collect())
}

fn run(cmd: Command) -> Result<String> {
    let value = match cmd {
        Command::Poly { kind, input, weights, y } => match kind {
            PolyKind::Q1 => q1(&input.multimatroid()?)?.to_json(),
            PolyKind::Interlace => interlace(&input.graph()?)?.to_json(),
            PolyKind::Global => global_interlace(&input.graph()?)?.to_json(),
            PolyKind::Bracket => bracket(&input.graph()?)?.to_json(),
            PolyKind::Transition => {
                let z = input.multimatroid()?;
                let w = weights
                    .as_deref()
                    .unwrap_or("")
                    .split(',')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| parse_rational(t).map_err(Error::Parse))
                    .collect::<Result<Vec<_>>>()?;
                match y {
                    Some(y) => json!({ "value": format_rational(&transition_eval(&z, &w, &y)?) }),
                    None => {
                        let p = transition_poly(&z, &w)?;
                        json!({ "var": "y", "coeffs": p.coeffs().iter().map(format_rational).collect::<Vec<_>>() })
                    }
                }
            }
        },
        Command::Ort { input, from } => {
            let (z, g) = input.load()?;
            let car = z.carrier();
            let ts = match from {
                Some(t) => ort_fast(&z, parse_set(car, &t)?)?,
                None => ort(&z)?,
            };
            if let Some(g) = g {
                // Graph inputs are cross-checked against the Eulerian description.
                if ort_via_eulerian(&g)? != ts {
                    return Err(Error::InternalInconsistency("Ort(𝒵_G) differs from its Eulerian description".into()));
                }
            }
            json!({ "count": ts.len(), "transversals": sets_json(car, &ts) })
        }
        Command::Evals { input, transversal, seed } => {
            let z = input.multimatroid()?;
            let car = z.carrier();
            let t = match transversal {
                Some(t) => parse_set(car, &t)?,
                None => (0..car.order()).fold(0, |m, c| m | 1 << car.elem(c, car.size(c) - 1)),
            };
            let mut report = eval_suite(&z, t, seed)?.to_json();
            report["transversal"] = set_json(car, t);
            report
        }
        Command::Tight { input } => {
            let z = input.multimatroid()?;
            let violation = z.is_multimatroid()?;
            let tight = if violation.is_none() { Some(z.tight()?) } else { None };
            json!({
                "order": z.order(),
                "class_sizes": z.carrier().sizes(),
                "multimatroid": violation.is_none(),
                "tight": tight,
            })
        }
        Command::Minors { input, fixture: name, pattern } => {
            let z = input.multimatroid()?;
            let patterns: Vec<(String, Multimatroid)> = match (name, pattern) {
                (Some(n), _) => vec![(n.clone(), fixture(&n)?.multimatroid)],
                (None, Some(p)) => vec![(p.clone(), parse_mm(&read_source(&p)?)?)],
                (None, None) => catalog()?.into_iter().map(|f| (f.name.to_string(), f.multimatroid)).collect(),
            };
            let mut out = serde_json::Map::new();
            for (n, p) in patterns {
                let hit = match has_minor(&z, &p)? {
                    Some((x, iso)) => json!({
                        "minor": set_json(z.carrier(), x),
                        "class_map": iso.class_map,
                        "slot_maps": iso.slot_maps,
                    }),
                    None => Value::Null,
                };
                out.insert(n, hit);
            }
            Value::Object(out)
        }
        Command::Classify { input } => {
            let z = input.multimatroid()?;
            let car = z.carrier();
            let c = classify_binary_tight3(&z)?;
            json!({
                "binary": c.binary,
                "strongly_binary": c.strongly_binary.map(|(t, sb)| json!({
                    "deleted": set_json(car, t),
                    "basis": set_json(car, sb.t1),
                    "matrix": (0..sb.a.rows()).map(|i| sb.a.row_string(i)).collect::<Vec<_>>(),
                })),
                "h33_minor": c.h33_minor.map(|x| set_json(car, x)),
                "odd_pair": c.odd_pair.map(|(a, b)| sets_json(car, &[a, b])),
            })
        }
        Command::Tutte { matroid, x, y } => json!(format_rational(&load_matroid(&matroid)?.tutte(&x, &y)?)),
        Command::Catalog { action } => match action {
            CatalogAction::List => json!(FIXTURE_NAMES),
            CatalogAction::Dump { name } => return mm_to_string(&fixture(&name)?.multimatroid),
        },
        Command::Extend { input } => {
            let z = input.multimatroid()?;
            json!({ "extension": tight_extension_search(&z)?.map(|e| mm_to_json(&e)).transpose()? })
        }
    };
    Ok(format!("{value}\n"))
}

fn fail(code: u8, kind: &str, message: String) -> ExitCode {
    eprintln!("{}", json!({ "error": kind, "message": message }));
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(1, "Usage", e.to_string().trim_end().to_string()),
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            return fail(1, "Usage", "--threads must be at least 1".into());
        }
        set_threads(n);
    }
    match run(cli.command) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            // A closed pipe downstream is not our failure.
            let _ = stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush());
            ExitCode::SUCCESS
        }
        Err(e) => fail(if e.is_malformed_input() { 1 } else { 2 }, e.kind(), e.to_string()),
    }
}

#[cfg(feature = "parallel")]
fn set_threads(n: usize) {
    // Only fails if a pool already exists, which cannot happen this early.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
}

#[cfg(not(feature = "parallel"))]
fn set_threads(_: usize) {}
