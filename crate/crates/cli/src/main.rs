use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use periplectic::ds::{self, DSContext, DsSummary};
use periplectic::groth::Peeler;
use periplectic::rep::{costandard, simple, standard};
use periplectic::translate::{theta_word, ThetaSummary};
use periplectic::verify::{self, Suite};
use periplectic::weights::{diagram, kappa, DiagramReport};
use periplectic::{Error, PnAlgebra, Weight};

/// Exact computations with the periplectic Lie superalgebra p(n).
#[derive(Parser)]
#[command(name = "periplectic", version)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct WeightArgs {
    #[arg(long)]
    n: usize,
    /// Comma-separated `λ_1,…,λ_n`, nondecreasing.
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Simple,
    Standard,
    Costandard,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Simple => "simple",
            Kind::Standard => "standard",
            Kind::Costandard => "costandard",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Weight diagram of λ and its block.
    Diagram(WeightArgs),
    /// Block label κ(λ).
    Block(WeightArgs),
    /// Superdimension of L(λ), Δ(λ) or ∇(λ).
    Sdim {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, value_enum, default_value = "simple")]
        kind: Kind,
    },
    /// Dimensions, block and character of L(λ).
    Simple(WeightArgs),
    /// Θ_I L(λ) for a word I (last letter applied first).
    Translate {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// DS_x L(λ) for the standard x of the given rank.
    Ds {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long, default_value_t = 2)]
        rank: usize,
    },
    /// Run a verification suite over all dominant λ with |λ_i| ≤ bound.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        bound: i64,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Input(String),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn parse_list(s: &str, what: &str) -> Result<Vec<i64>, Failure> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Failure::Input(format!("malformed {what} `{s}`"))))
        .collect()
}

impl WeightArgs {
    fn weight(&self) -> Result<Weight, Failure> {
        if self.n == 0 {
            return Err(Failure::Input("n must be positive".into()));
        }
        Ok(Weight::checked(self.n, parse_list(&self.lambda, "weight")?)?)
    }
}

fn emit(json_mode: bool, value: Value, text: String) {
    if json_mode {
        println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
    } else {
        println!("{text}");
    }
}

fn dims_text((e, o): (usize, usize)) -> String {
    format!("({e}|{o})")
}

fn run(cli: Cli) -> Result<(), Failure> {
    let js = cli.json;
    match cli.command {
        Command::Diagram(w) => {
            let l = w.weight()?;
            let report = DiagramReport::new(&l);
            let rendered = diagram(&l).render();
            let mut value = json!(report);
            value["rendered"] = json!(rendered);
            emit(js, value, format!("{rendered}\nkappa = {}", report.kappa));
        }
        Command::Block(w) => {
            let l = w.weight()?;
            let k = kappa(&l);
            emit(js, json!({ "n": l.n(), "lambda": l, "kappa": k }), k.to_string());
        }
        Command::Sdim { weight, kind } => {
            let l = weight.weight()?;
            let alg = PnAlgebra::build(l.n());
            let m = match kind {
                Kind::Simple => simple(alg, &l)?,
                Kind::Standard => standard(alg, &l)?,
                Kind::Costandard => costandard(alg, &l)?,
            };
            let sdim = m.superdimension();
            let value = json!({ "n": l.n(), "lambda": l, "kind": kind.name(), "dims": m.dims(), "sdim": sdim });
            emit(js, value, sdim.to_string());
        }
        Command::Simple(w) => {
            let l = w.weight()?;
            let m = simple(PnAlgebra::build(l.n()), &l)?;
            let ch = m.character();
            let value = json!({
                "n": l.n(), "lambda": l, "dims": m.dims(), "sdim": m.superdimension(),
                "kappa": kappa(&l), "character": ch,
            });
            let text = format!(
                "L{l}: dims {}, sdim {}, block {}\ncharacter {ch}",
                dims_text(m.dims()),
                m.superdimension(),
                kappa(&l)
            );
            emit(js, value, text);
        }
        Command::Translate { weight, word } => {
            let l = weight.weight()?;
            let word = parse_list(&word, "word")?;
            let alg = PnAlgebra::build(l.n());
            let m = simple(alg.clone(), &l)?;
            let image = theta_word(&m, &word)?;
            let blocks = Peeler::new(alg).constituent_blocks(&image)?;
            let summary = ThetaSummary::new(&m, &word, &image);
            let mut value = json!(summary);
            value["lambda"] = json!(l);
            value["blocks"] = json!(blocks);
            let text = format!(
                "Θ_{word:?} L{l}: dims {}, sdim {}, blocks {blocks:?}",
                dims_text(summary.output_dims),
                summary.output_sdim
            );
            emit(js, value, text);
        }
        Command::Ds { weight, rank } => {
            let l = weight.weight()?;
            let alg = PnAlgebra::build(l.n());
            let ctx = DSContext::new(alg.clone(), rank)?;
            let m = simple(alg, &l)?;
            let image = ds::ds(&m, &ctx)?;
            let blocks = Peeler::new(ctx.small().clone()).constituent_blocks(&image)?;
            let summary = DsSummary {
                n: l.n(),
                s: rank,
                input_dims: m.dims(),
                output_dims: image.dims(),
                input_sdim: m.superdimension(),
                output_sdim: image.superdimension(),
                blocks,
            };
            let text = format!(
                "DS L{l} (rank {rank}): {} -> {} over p({}), sdim {} -> {}, blocks {:?}",
                dims_text(summary.input_dims),
                dims_text(summary.output_dims),
                l.n() - rank,
                summary.input_sdim,
                summary.output_sdim,
                summary.blocks
            );
            let mut value = json!(summary);
            value["lambda"] = json!(l);
            emit(js, value, text);
        }
        Command::Verify { suite, n, bound } => {
            let report = verify::run(suite, n, bound)?;
            let mut text = String::new();
            for c in &report.cases {
                let verdict = if c.pass { "PASS" } else { "FAIL" };
                text.push_str(&format!("{verdict} {}  {}\n", c.case, c.detail));
            }
            let total = report.cases.len();
            text.push_str(&format!("{suite}: {}/{total} passed", total - report.failures()));
            emit(js, json!(report), text);
            if !report.passed() {
                return Err(Failure::Check);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
