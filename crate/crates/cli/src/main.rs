//! `oreforge`: batch front end to the tower kernel.
//!
//! Output is a block of `key=value` lines opened by `schema=1`, or a JSON
//! object with the same keys under `--json`.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use oreforge_core::abelian::Weight;
use oreforge_core::builtins::{self, System};
use oreforge_core::eigen::{self, Section};
use oreforge_core::endo::LinMap;
use oreforge_core::tower::{opposite_tower, tensor_towers, validate_tower, Mutation, TowerSpec};
use oreforge_core::verify::{self, Options, Suite, Summary};
use oreforge_core::Error;

#[derive(Parser)]
#[command(name = "oreforge", version, about = "Exact computations in iterated Ore and skew Laurent towers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Emit a JSON object instead of key=value lines.
    #[arg(long, global = true)]
    json: bool,
    /// Load extra towers from a JSON spec file; may be repeated.
    #[arg(long = "spec", value_name = "FILE", global = true)]
    specs: Vec<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the towers and maps in a spec file.
    Define {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run one computation.
    Compute {
        #[command(subcommand)]
        verb: Verb,
        #[command(flatten)]
        common: Common,
    },
    /// Run a randomized verification suite over the builtins.
    Verify {
        /// tower, endo, eigen, abelian or all
        suite: String,
        #[arg(long, env = "OREFORGE_SEED", default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = verify::DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, hide = true, value_parser = parse_mutation, default_value = "none")]
        mutate: Mutation,
        #[command(flatten)]
        common: Common,
    },
    /// Print the spec of a builtin tower, or list them.
    Builtin {
        name: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum Verb {
    /// Product of elements, left to right.
    Mul {
        tower: String,
        #[arg(required = true, num_args = 1..)]
        elements: Vec<String>,
    },
    /// The opposite tower, and optionally the image of an element.
    Opposite {
        tower: String,
        element: Option<String>,
        /// Write the opposite tower's spec to this file.
        #[arg(long, value_name = "FILE")]
        emit: Option<PathBuf>,
    },
    /// Tensor product of two towers.
    Tensor {
        left: String,
        right: String,
        #[arg(long, value_name = "FILE")]
        emit: Option<PathBuf>,
    },
    /// Apply a named map.
    Apply { tower: String, map: String, element: String },
    /// Generator weights under commuting diagonal maps, and optionally the
    /// weight of an element.
    Weights {
        tower: String,
        #[arg(required = true, num_args = 1..)]
        maps: Vec<String>,
        #[arg(long)]
        element: Option<String>,
    },
    /// The weight group and its decomposition.
    Ev {
        tower: String,
        #[arg(required = true, num_args = 1..)]
        maps: Vec<String>,
    },
    /// Crossed-product presentation of the eigen-algebra.
    Presentation {
        tower: String,
        #[arg(required = true, num_args = 1..)]
        maps: Vec<String>,
        /// Subgroup generators, e.g. "2" or "1,0;0,1/2".
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Randomized anti-automorphism checks for a named anti-map.
    TransposeCheck {
        tower: String,
        map: String,
        #[arg(long, env = "OREFORGE_SEED", default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = verify::DEFAULT_SAMPLES)]
        samples: usize,
    },
}

enum Failure {
    Usage(String),
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Parse { .. } | Error::UnknownName(_) | Error::UnknownSymbol(_) | Error::UnknownVariable(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<Report, Failure>;

struct Report {
    fields: Vec<(String, String)>,
    verified: bool,
}

impl Report {
    fn new(command: &str) -> Report {
        Report {
            fields: vec![("command".into(), command.into())],
            verified: true,
        }
    }

    fn put(&mut self, k: impl Into<String>, v: impl ToString) {
        self.fields.push((k.into(), v.to_string()));
    }

    fn extend(&mut self, kv: Vec<(String, String)>) {
        self.fields.extend(kv);
    }

    fn print(&self, json: bool) {
        let mut out = std::io::stdout().lock();
        if json {
            let mut obj = serde_json::Map::new();
            obj.insert("schema".into(), 1.into());
            for (k, v) in &self.fields {
                obj.insert(k.clone(), v.clone().into());
            }
            let _ = writeln!(out, "{}", serde_json::Value::Object(obj));
        } else {
            let _ = writeln!(out, "schema=1");
            for (k, v) in &self.fields {
                let _ = writeln!(out, "{k}={}", v.replace('\n', "\\n"));
            }
        }
    }
}

fn parse_mutation(s: &str) -> std::result::Result<Mutation, String> {
    match s {
        "none" => Ok(Mutation::None),
        "flip-opposite-delta" => Ok(Mutation::FlipOppositeDeltaSign),
        "drop-leibniz-twist" => Ok(Mutation::DropLeibnizTwist),
        _ => Err(format!("unknown mutation `{s}`")),
    }
}

fn read_specs(path: &PathBuf) -> std::result::Result<Vec<TowerSpec>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    if text.trim_start().starts_with('[') {
        let items: Vec<serde_json::Value> =
            serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        items
            .iter()
            .map(|v| TowerSpec::from_json(&v.to_string()).map_err(Failure::from))
            .collect()
    } else {
        Ok(vec![TowerSpec::from_json(&text)?])
    }
}

/// Builtins plus towers loaded with `--spec`.
struct Workspace {
    specs: Vec<TowerSpec>,
}

impl Workspace {
    fn load(common: &Common) -> std::result::Result<Workspace, Failure> {
        let mut specs = builtins::catalog();
        for p in &common.specs {
            for s in read_specs(p)? {
                if let Some(n) = &s.name {
                    specs.retain(|t| t.name.as_ref() != Some(n));
                }
                specs.push(s);
            }
        }
        Ok(Workspace { specs })
    }

    fn system(&self, name: &str) -> std::result::Result<System, Failure> {
        let spec = self
            .specs
            .iter()
            .find(|s| s.name.as_deref() == Some(name))
            .ok_or_else(|| Error::UnknownName(name.to_string()))?;
        Ok(builtins::instantiate(spec)?)
    }
}

fn maps(sys: &System, names: &[String]) -> std::result::Result<Vec<LinMap>, Failure> {
    names.iter().map(|n| Ok(sys.map(n)?.clone())).collect()
}

fn parse_subgroup(s: &str) -> std::result::Result<Vec<Weight>, Failure> {
    s.split(';')
        .map(|w| {
            w.split(',')
                .map(|c| {
                    c.trim()
                        .parse::<BigRational>()
                        .map_err(|_| Failure::Usage(format!("bad weight component `{c}`")))
                })
                .collect::<std::result::Result<Vec<_>, _>>()
                .map(Weight)
        })
        .collect()
}

fn emit(path: &Option<PathBuf>, spec: &TowerSpec) -> std::result::Result<(), Failure> {
    if let Some(p) = path {
        std::fs::write(p, spec.to_json() + "\n").map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn summary_report(r: &mut Report, s: &Summary) {
    r.put("checks", s.checks.len());
    r.put("failed", s.failures().count());
    for (i, c) in s.checks.iter().enumerate() {
        r.put(format!("check.{i}"), c);
    }
    r.put("result", if s.passed() { "PASS" } else { "FAIL" });
    r.verified = s.passed();
}

fn define(file: &PathBuf) -> Outcome {
    let mut r = Report::new("define");
    for spec in read_specs(file)? {
        let tower = validate_tower(&spec)?;
        let sys = builtins::instantiate(&spec)?;
        let name = spec.name.clone().unwrap_or_else(|| "_".into());
        r.put("tower", &name);
        r.put(format!("{name}.structure"), tower.describe());
        r.put(
            format!("{name}.maps"),
            sys.maps.iter().map(|(k, m)| format!("{k}:{}", m.kind())).collect::<Vec<_>>().join(","),
        );
    }
    r.put("status", "registered");
    Ok(r)
}

fn compute(verb: &Verb, ws: &Workspace) -> Outcome {
    let mut r = Report::new("compute");
    match verb {
        Verb::Mul { tower, elements } => {
            r.put("verb", "mul");
            let sys = ws.system(tower)?;
            let mut acc = sys.tower.one();
            for e in elements {
                acc = acc.mul(&sys.tower.parse(e)?)?;
            }
            r.put("tower", tower);
            r.put("result", acc);
        }
        Verb::Opposite { tower, element, emit: out } => {
            r.put("verb", "opposite");
            let sys = ws.system(tower)?;
            let op = opposite_tower(&sys.tower)?;
            let spec = op.target().to_spec();
            r.put("tower", tower);
            r.put("opposite", op.target().describe());
            if let Some(e) = element {
                r.put("image", op.apply(&sys.tower.parse(e)?)?);
            }
            r.put("spec", serde_json::to_string(&spec).expect("spec serializes"));
            emit(out, &spec)?;
        }
        Verb::Tensor { left, right, emit: out } => {
            r.put("verb", "tensor");
            let (a, b) = (ws.system(left)?, ws.system(right)?);
            let t = tensor_towers(&a.tower, &b.tower)?;
            let spec = t.tower().to_spec();
            r.put("tower", t.tower().describe());
            r.put("generators", t.tower().generator_names().join(","));
            r.put("spec", serde_json::to_string(&spec).expect("spec serializes"));
            emit(out, &spec)?;
        }
        Verb::Apply { tower, map, element } => {
            r.put("verb", "apply");
            let sys = ws.system(tower)?;
            let m = sys.map(map)?;
            r.put("map", m);
            r.put("result", m.apply(&sys.tower.parse(element)?)?);
        }
        Verb::Weights { tower, maps: names, element } => {
            r.put("verb", "weights");
            let sys = ws.system(tower)?;
            let wt = eigen::weigh_generators(&sys.tower, &maps(&sys, names)?)?;
            r.put("ambient", if wt.ambient().is_additive() { "additive" } else { "multiplicative" });
            for (g, w) in wt.generator_weights() {
                r.put(format!("weight.{g}"), w);
            }
            if let Some(e) = element {
                let a = sys.tower.parse(e)?;
                let comps = eigen::homogeneous_components(&wt, &a)?;
                for (w, c) in &comps.components {
                    r.put(format!("component.{w}"), c);
                }
            }
        }
        Verb::Ev { tower, maps: names } => {
            r.put("verb", "ev");
            let sys = ws.system(tower)?;
            let wt = eigen::weigh_generators(&sys.tower, &maps(&sys, names)?)?;
            r.put("tower", tower);
            r.extend(eigen::ev_structure(&wt)?.report(&wt));
        }
        Verb::Presentation { tower, maps: names, subgroup } => {
            r.put("verb", "presentation");
            let sys = ws.system(tower)?;
            let wt = eigen::weigh_generators(&sys.tower, &maps(&sys, names)?)?;
            let section = Section::new(&wt)?;
            let sub = subgroup.as_deref().map(parse_subgroup).transpose()?;
            r.put("tower", tower);
            r.extend(eigen::presentation(&section, sub.as_deref())?.report());
        }
        Verb::TransposeCheck { tower, map, seed, samples } => {
            r.put("verb", "transpose-check");
            let sys = ws.system(tower)?;
            let m = sys.map(map)?;
            if m.kind() != oreforge_core::endo::MapKind::AntiAutomorphism {
                return Err(Error::KindMismatch(format!("{map} is not an anti-automorphism")).into());
            }
            let opts = Options {
                seed: *seed,
                samples: *samples,
                ..Options::default()
            };
            r.put("map", m);
            summary_report(&mut r, &verify::check_map(tower, &sys, map, &opts)?);
        }
    }
    Ok(r)
}

fn run(cli: &Cli) -> (Outcome, bool) {
    match &cli.command {
        Command::Define { file, common } => (define(file), common.json),
        Command::Compute { verb, common } => (Workspace::load(common).and_then(|ws| compute(verb, &ws)), common.json),
        Command::Verify {
            suite,
            seed,
            samples,
            mutate,
            common,
        } => {
            let out = (|| {
                let suite: Suite = suite.parse()?;
                let opts = Options {
                    seed: *seed,
                    samples: *samples,
                    mutation: *mutate,
                };
                let mut r = Report::new("verify");
                r.put("suite", suite.name());
                r.put("seed", seed);
                r.put("samples", samples);
                summary_report(&mut r, &verify::run(suite, &opts));
                Ok(r)
            })();
            (out, common.json)
        }
        Command::Builtin { name, common } => {
            let out = (|| {
                let mut r = Report::new("builtin");
                match name {
                    None => r.put("names", builtins::names().join(",")),
                    Some(n) => {
                        let spec = builtins::builtin_spec(n)?;
                        let sys = builtins::instantiate(&spec)?;
                        r.put("name", n);
                        r.put("structure", sys.tower.describe());
                        r.put("maps", sys.maps.keys().cloned().collect::<Vec<_>>().join(","));
                        r.put("spec", serde_json::to_string(&spec).expect("spec serializes"));
                    }
                }
                Ok(r)
            })();
            (out, common.json)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out, json) = run(&cli);
    match out {
        Ok(r) => {
            r.print(json);
            if r.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Invalid(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
