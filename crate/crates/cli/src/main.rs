use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use diffgenus::cm::{self, CMPair, Matrix};
use diffgenus::correspondence::{alpha_slice, gamma, IdealGens};
use diffgenus::json::{curve_from_json, curve_to_json, parse_poly};
use diffgenus::monomial::{self, Semigroup};
use diffgenus::subspace::PDSubspace;
use diffgenus::suite::{golden_suite, property_suite, CheckItem};
use diffgenus::{Error, Result};

#[derive(Parser)]
#[command(name = "diffgenus", version, about = "Differential genus of curves, Weyl algebra ideals and Calogero–Moser pairs")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
struct CurveInput {
    /// Gaps of a semigroup, e.g. `1,2,4`.
    #[arg(long, value_delimiter = ',', conflicts_with = "input")]
    gaps: Option<Vec<usize>>,

    /// Curve JSON: a file path, `-` for stdin, or inline JSON.
    #[arg(long)]
    input: Option<String>,
}

#[derive(Subcommand)]
enum Verb {
    /// Differential genus of a curve.
    Genus {
        #[command(flatten)]
        curve: CurveInput,
    },
    /// Codimension of the symbol algebra of a monomial curve.
    Lm {
        #[command(flatten)]
        curve: CurveInput,
        /// Starting window for the symbol lattice.
        #[arg(long)]
        window: Option<usize>,
    },
    /// Operators in a box mapping Q[z] into the curve.
    Alpha {
        #[command(flatten)]
        curve: CurveInput,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// The point gamma(I) for an ideal given as JSON.
    Gamma {
        /// Ideal JSON: a file path, `-` for stdin, or inline JSON.
        #[arg(long)]
        input: String,
        /// Minimum number of monomials to apply the generators to.
        #[arg(long)]
        k_bound: Option<usize>,
    },
    /// Ideal attached to a Calogero–Moser pair.
    CmIdeal {
        /// Pair JSON: a file path, `-` for stdin, or inline JSON.
        #[arg(long)]
        input: String,
    },
    /// Genus of the point attached to a Calogero–Moser pair.
    CmGenus {
        #[arg(long)]
        input: String,
    },
    /// Applies a KP flow, the Fourier flow or a conjugation to a pair or an ideal.
    Act {
        /// Pair or ideal JSON.
        #[arg(long)]
        input: String,
        /// KP flow by this polynomial in z.
        #[arg(long, group = "action")]
        kp: Option<String>,
        /// Fourier flow.
        #[arg(long, group = "action")]
        fourier: bool,
        /// Conjugation by a JSON matrix (pairs only).
        #[arg(long, group = "action")]
        conjugate: Option<String>,
    },
    /// Runs a self-check suite.
    Check {
        #[arg(long, value_enum, default_value_t = Suite::Golden)]
        suite: Suite,
        /// Seed for the randomized suite.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cases per property.
        #[arg(long, default_value_t = 50)]
        cases: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Golden,
    Properties,
}

/// Output of a verb: a JSON value and its text rendering.
struct Report {
    json: Value,
    text: String,
    ok: bool,
}

impl Report {
    fn new(json: Value, text: impl Into<String>) -> Self {
        Report { json, text: text.into(), ok: true }
    }
}

fn read_json(src: &str) -> Result<Value> {
    let text = if src == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Input(format!("stdin: {e}")))?;
        s
    } else if src.trim_start().starts_with(['{', '[']) {
        src.to_string()
    } else {
        std::fs::read_to_string(src).map_err(|e| Error::Input(format!("{src}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("invalid JSON: {e}")))
}

fn curve(c: &CurveInput) -> Result<PDSubspace> {
    match (&c.gaps, &c.input) {
        (Some(g), _) => PDSubspace::from_gaps(g),
        (None, Some(src)) => curve_from_json(&read_json(src)?),
        (None, None) => Err(Error::Input("give --gaps or --input".into())),
    }
}

fn semigroup(c: &CurveInput) -> Result<Semigroup> {
    match (&c.gaps, &c.input) {
        (Some(g), _) => Semigroup::new(g.iter().copied()),
        (None, Some(src)) => {
            let v = read_json(src)?;
            if v.get("kind").and_then(Value::as_str) != Some("semigroup") {
                return Err(Error::Input("the LM invariant needs a semigroup curve".into()));
            }
            let gaps: Vec<usize> = serde_json::from_value(v["gaps"].clone()).map_err(|e| Error::Input(format!("gaps: {e}")))?;
            Semigroup::new(gaps)
        }
        (None, None) => Err(Error::Input("give --gaps or --input".into())),
    }
}

fn ideal_report(i: &IdealGens) -> Report {
    let text: Vec<String> = i.gens().iter().map(ToString::to_string).collect();
    Report::new(i.to_json(), text.join("\n"))
}

fn check_report(items: Vec<CheckItem>) -> Report {
    let passed = items.iter().filter(|i| i.pass).count();
    let mut text: Vec<String> = items.iter().map(ToString::to_string).collect();
    text.push(format!("{passed}/{} passed", items.len()));
    let json = json!({
        "passed": passed,
        "total": items.len(),
        "checks": items.iter().map(|i| json!({"name": i.name, "expected": i.expected, "got": i.got, "pass": i.pass})).collect::<Vec<_>>(),
    });
    Report { json, text: text.join("\n"), ok: passed == items.len() }
}

fn run(verb: &Verb) -> Result<Report> {
    match verb {
        Verb::Genus { curve: c } => {
            let v = curve(c)?;
            let g = v.genus()?;
            Ok(Report::new(json!({"genus": g, "codim": v.codim()}), g.to_string()))
        }
        Verb::Lm { curve: c, window } => {
            let sg = semigroup(c)?;
            let lattice = match window {
                Some(w) => monomial::symbol_lattice(&sg, *w)?,
                None => monomial::stable_symbol_lattice(&sg)?,
            };
            let missing: Vec<[usize; 2]> = lattice.missing.iter().map(|&(a, b)| [a, b]).collect();
            Ok(Report::new(json!({"lm": lattice.codim(), "missing": missing}), lattice.codim().to_string()))
        }
        Verb::Alpha { curve: c, order, degree } => {
            let v = curve(c)?;
            let n = v.conductor().deg0().max(1);
            let slice = alpha_slice(&v, order.unwrap_or(n), degree.unwrap_or(2 * n));
            Ok(ideal_report(&slice.to_ideal()?))
        }
        Verb::Gamma { input, k_bound } => {
            let w = gamma(&IdealGens::from_json(&read_json(input)?)?, *k_bound)?;
            let g = w.genus()?;
            let json = json!({"multiplier": w.multiplier().to_string(), "subspace": curve_to_json(w.v()), "genus": g});
            Ok(Report::new(json, format!("{w}\ngenus {g}")))
        }
        Verb::CmIdeal { input } => Ok(ideal_report(&cm::ideal_representative(&CMPair::from_json(&read_json(input)?)?)?)),
        Verb::CmGenus { input } => {
            let g = cm::genus_of_pair(&CMPair::from_json(&read_json(input)?)?)?;
            Ok(Report::new(json!({"genus": g}), g.to_string()))
        }
        Verb::Act { input, kp, fourier, conjugate } => {
            let v = read_json(input)?;
            let kp = kp.as_deref().map(parse_poly).transpose()?;
            if v.get("gens").is_some() {
                let i = IdealGens::from_json(&v)?;
                let out = match (kp, fourier, conjugate) {
                    (Some(p), _, _) => i.map(|g| Ok(g.kp_automorphism(&p)))?,
                    (_, true, _) => i.map(|g| g.fourier_automorphism())?,
                    (_, _, Some(_)) => return Err(Error::Input("conjugation acts on pairs, not ideals".into())),
                    _ => return Err(Error::Input("give --kp, --fourier or --conjugate".into())),
                };
                Ok(ideal_report(&out))
            } else {
                let p = CMPair::from_json(&v)?;
                let out = match (kp, fourier, conjugate) {
                    (Some(q), _, _) => cm::kp_flow(&p, &q),
                    (_, true, _) => cm::fourier_flow(&p),
                    (_, _, Some(g)) => {
                        let g: Matrix = serde_json::from_value(read_json(g)?).map_err(|e| Error::Input(format!("matrix: {e}")))?;
                        cm::conjugate(&p, &g)?
                    }
                    _ => return Err(Error::Input("give --kp, --fourier or --conjugate".into())),
                };
                Ok(Report::new(out.to_json(), out.to_string()))
            }
        }
        Verb::Check { suite, seed, cases } => Ok(check_report(match suite {
            Suite::Golden => golden_suite(),
            Suite::Properties => property_suite(*seed, *cases),
        })),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.verb) {
        Ok(r) => {
            match cli.format {
                Format::Text => println!("{}", r.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&r.json).expect("plain data")),
            }
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error ({}): {e}", e.name()),
                Format::Json => println!("{}", json!({"error": e.name(), "message": e.to_string()})),
            }
            ExitCode::from(if e.is_input_error() { 2 } else { 1 })
        }
    }
}
