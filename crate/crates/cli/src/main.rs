use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pathsig::algebra::{MultiPoly, VariableTable, Vars};
use pathsig::lyndon::{lie_basis_over, lyndon_shuffle, lyndon_words};
use pathsig::paths::Path;
use pathsig::signature::{
    adjoint_word, caxis_tensor, cmon_tensor, sig_word, tensor_exp, tensor_exp_series, SignatureResult,
};
use pathsig::varieties::{
    affine_image_dimension, affine_image_dimension_float, low_degree_ideal_counts, projective_dimension,
    signature_variety_map, universal_variety_map, ExportFormat, Family, IdealMethod, PolynomialMap,
};
use pathsig::words::{Tensor, Word};
use pathsig::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::json;

/// Path signatures, shuffle algebra and signature varieties with exact
/// rational arithmetic.
#[derive(Parser)]
#[command(name = "pathsig", version)]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, env = "PATHSIG_SEED", default_value_t = 0)]
    seed: u64,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Signature of a path: one coefficient or a whole level.
    Sig {
        /// Path JSON, inline or as a file name.
        #[arg(long)]
        path: String,
        /// Word to evaluate, e.g. "[1,2]".
        #[arg(long, conflicts_with = "level", required_unless_present = "level")]
        word: Option<String>,
        /// Level of the signature tensor.
        #[arg(long)]
        level: Option<usize>,
    },
    /// Shuffle product of two tensors.
    Shuffle(Binary),
    /// Half-shuffle `a ≻ b` of two tensors.
    HalfShuffle(Binary),
    /// Concatenation product of two tensors.
    Concat(Binary),
    /// Lyndon words, Lie bracketings and shuffle decompositions.
    Lyndon {
        #[command(subcommand)]
        command: LyndonCommand,
    },
    /// Signature tensors of the canonical axis and monomial paths.
    Core {
        #[arg(value_enum)]
        kind: CoreKind,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        level: usize,
    },
    /// Tensor exponential through a level.
    Exp {
        tensor: String,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        alphabet: usize,
        /// Only the component of the given level.
        #[arg(long)]
        project: bool,
        /// Comma-separated coefficient variables.
        #[arg(long, default_value = "")]
        vars: String,
    },
    /// Adjoint of a polynomial map applied to a word.
    Adjoint {
        #[arg(long)]
        word: String,
        /// Polynomials as JSON, inline or as a file name: a list of strings
        /// or `{"variables": [...], "polynomials": [...]}`.
        #[arg(long)]
        polys: String,
        #[arg(long)]
        source_dim: usize,
    },
    /// Universal and signature varieties.
    Variety {
        #[command(subcommand)]
        command: VarietyCommand,
    },
}

#[derive(Args)]
struct Binary {
    a: String,
    b: String,
    #[arg(long)]
    alphabet: usize,
    /// Comma-separated coefficient variables.
    #[arg(long, default_value = "")]
    vars: String,
}

#[derive(Subcommand)]
enum LyndonCommand {
    /// All Lyndon words up to a length.
    Words {
        #[arg(long)]
        alphabet: usize,
        #[arg(long)]
        max_len: usize,
    },
    /// Lie bracketing of a Lyndon word.
    Basis {
        word: String,
        #[arg(long)]
        alphabet: usize,
    },
    /// A tensor as a shuffle polynomial in Lyndon words.
    Decompose {
        tensor: String,
        #[arg(long)]
        alphabet: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CoreKind {
    Axis,
    Monomial,
}

#[derive(Args)]
struct VarietyArgs {
    /// universal, pl (piecewise-linear) or poly (polynomial).
    family: Option<String>,
    /// Same as the positional family.
    #[arg(long = "family", conflicts_with = "family")]
    family_flag: Option<String>,
    /// Dimension of the paths.
    #[arg(long)]
    dim: usize,
    /// Signature level.
    #[arg(long)]
    level: usize,
    /// Pieces of a piecewise linear path, or degree of a polynomial path.
    #[arg(long)]
    pieces: Option<usize>,
}

#[derive(Subcommand)]
enum VarietyCommand {
    /// The parametrization.
    Map(VarietyArgs),
    /// Affine and projective dimension of the image.
    Dim {
        #[command(flatten)]
        args: VarietyArgs,
        /// Random points; the largest Jacobian rank wins.
        #[arg(long, default_value_t = 3)]
        trials: usize,
        /// Floating-point rank instead of exact rank.
        #[arg(long)]
        float: bool,
    },
    /// Linear relations and minimal quadrics of the ideal of the image.
    IdealCounts {
        #[command(flatten)]
        args: VarietyArgs,
        #[arg(long, default_value_t = 2)]
        max_degree: u32,
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
        /// Sample points for the sampling method, or "auto".
        #[arg(long, default_value = "auto")]
        samples: String,
    },
    /// Script or JSON for external verification.
    Export {
        #[command(flatten)]
        args: VarietyArgs,
        /// cas-script or json.
        #[arg(long)]
        format: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Compare coefficients in the parameters.
    Exact,
    /// Evaluate at random points.
    Sample,
}

fn vars_from(list: &str) -> Result<Vars> {
    VariableTable::new(list.split(',').map(str::trim).filter(|s| !s.is_empty()))
}

/// Inline JSON when the argument looks like JSON, otherwise a file name.
fn json_arg(arg: &str) -> Result<String> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        Ok(arg.to_string())
    } else {
        fs::read_to_string(arg).map_err(|e| Error::InvalidArgument(format!("cannot read `{arg}`: {e}")))
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PolysJson {
    List(Vec<String>),
    Table {
        variables: Vec<String>,
        polynomials: Vec<String>,
    },
}

fn read_polys(arg: &str, source_dim: usize) -> Result<Vec<MultiPoly>> {
    let (names, polys) = match serde_json::from_str(&json_arg(arg)?)? {
        PolysJson::List(p) => ((1..=source_dim).map(|i| format!("x_{i}")).collect(), p),
        PolysJson::Table { variables, polynomials } => (variables, polynomials),
    };
    let vars = VariableTable::new(names)?;
    polys.iter().map(|p| MultiPoly::parse(p, &vars)).collect()
}

fn variety_map(a: &VarietyArgs) -> Result<PolynomialMap> {
    let family = a
        .family
        .as_deref()
        .or(a.family_flag.as_deref())
        .ok_or_else(|| Error::InvalidArgument("a family is required: universal, pl or poly".into()))?;
    if family == "universal" {
        return universal_variety_map(a.dim, a.level);
    }
    let family: Family = family.parse()?;
    let m = a
        .pieces
        .ok_or_else(|| Error::InvalidArgument(format!("--pieces is required for the {family} family")))?;
    signature_variety_map(family, a.dim, a.level, m)
}

fn tensor_out(t: &Tensor, output: Output) -> Result<String> {
    Ok(match output {
        Output::Text => t.to_string(),
        Output::Json => serde_json::to_string(&t.to_json())?,
    })
}

fn run(cli: Cli) -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let out = cli.output;
    match cli.command {
        Command::Sig { path, word, level } => {
            let x = Path::parse_json(&json_arg(&path)?)?;
            if let Some(w) = word {
                let v = sig_word(&x, &Word::parse(&w)?)?;
                return Ok(match out {
                    Output::Text => v.to_string(),
                    Output::Json => json!({ "coefficient": v.to_string() }).to_string(),
                });
            }
            let r = SignatureResult::compute(&x, level.unwrap_or(0));
            match out {
                Output::Text => Ok(r.tensor.to_string()),
                Output::Json => Ok(serde_json::to_string(&r.to_json())?),
            }
        }
        Command::Shuffle(b) => binary(&b, out, Tensor::shuffle),
        Command::HalfShuffle(b) => binary(&b, out, Tensor::half_shuffle),
        Command::Concat(b) => binary(&b, out, Tensor::concat),
        Command::Lyndon { command } => match command {
            LyndonCommand::Words { alphabet, max_len } => {
                let ws = lyndon_words(alphabet, max_len);
                Ok(match out {
                    Output::Text => ws.iter().map(Word::compact).collect::<Vec<_>>().join(" "),
                    Output::Json => serde_json::to_string(&ws.iter().map(|w| w.letters().to_vec()).collect::<Vec<_>>())?,
                })
            }
            LyndonCommand::Basis { word, alphabet } => {
                let b = lie_basis_over(&Word::parse(&word)?, alphabet, &VariableTable::empty())?;
                tensor_out(&b, out)
            }
            LyndonCommand::Decompose { tensor, alphabet } => {
                let t = Tensor::parse(&tensor, alphabet, &VariableTable::empty())?;
                let p = lyndon_shuffle(&t)?;
                Ok(match out {
                    Output::Text => p.to_string(),
                    Output::Json => serde_json::to_string(&p.to_json())?,
                })
            }
        },
        Command::Core { kind, dim, level } => {
            let t = match kind {
                CoreKind::Axis => caxis_tensor(dim, level),
                CoreKind::Monomial => cmon_tensor(dim, level),
            };
            tensor_out(&t, out)
        }
        Command::Exp {
            tensor,
            level,
            alphabet,
            project,
            vars,
        } => {
            let t = Tensor::parse(&tensor, alphabet, &vars_from(&vars)?)?;
            let e = if project {
                tensor_exp(&t, level)?
            } else {
                tensor_exp_series(&t, level)?
            };
            tensor_out(&e, out)
        }
        Command::Adjoint {
            word,
            polys,
            source_dim,
        } => {
            let p = read_polys(&polys, source_dim)?;
            tensor_out(&adjoint_word(&Word::parse(&word)?, source_dim, &p)?, out)
        }
        Command::Variety { command } => match command {
            VarietyCommand::Map(a) => {
                let f = variety_map(&a)?;
                Ok(match out {
                    Output::Text => map_text(&f),
                    Output::Json => serde_json::to_string(&f.to_json())?,
                })
            }
            VarietyCommand::Dim { args, trials, float } => {
                let f = variety_map(&args)?;
                let affine = if float {
                    affine_image_dimension_float(&f, trials, &mut rng)?
                } else {
                    affine_image_dimension(&f, trials, &mut rng)?
                };
                let projective = projective_dimension(affine);
                Ok(match out {
                    Output::Text => format!("affine: {affine}, projective: {projective}"),
                    Output::Json => json!({ "affine": affine, "projective": projective }).to_string(),
                })
            }
            VarietyCommand::IdealCounts {
                args,
                max_degree,
                method,
                samples,
            } => {
                let f = variety_map(&args)?;
                let method = match method {
                    Method::Exact => IdealMethod::Coefficients,
                    Method::Sample => IdealMethod::Sampling {
                        samples: match samples.as_str() {
                            "auto" => None,
                            n => Some(n.parse().map_err(|_| {
                                Error::InvalidArgument(format!("--samples must be a number or auto, got `{n}`"))
                            })?),
                        },
                    },
                };
                let c = low_degree_ideal_counts(&f, max_degree, method, &mut rng)?;
                Ok(match out {
                    Output::Text => match c.quadrics {
                        Some(q) => format!(
                            "linear: {}, quadrics: {} (relations {}, products {})",
                            c.linear, q.minimal, q.relations, q.products
                        ),
                        None => format!("linear: {}", c.linear),
                    },
                    Output::Json => serde_json::to_string(&c)?,
                })
            }
            VarietyCommand::Export { args, format } => {
                let f = variety_map(&args)?;
                let text = f.export(format.parse::<ExportFormat>()?)?;
                Ok(text.trim_end().to_string())
            }
        },
    }
}

fn binary(b: &Binary, out: Output, op: fn(&Tensor, &Tensor) -> Result<Tensor>) -> Result<String> {
    let vars = vars_from(&b.vars)?;
    let x = Tensor::parse(&b.a, b.alphabet, &vars)?;
    let y = Tensor::parse(&b.b, b.alphabet, &vars)?;
    tensor_out(&op(&x, &y)?, out)
}

fn map_text(f: &PolynomialMap) -> String {
    let mut lines = Vec::new();
    let params: Vec<String> = f
        .params()
        .names()
        .iter()
        .zip(f.weights())
        .map(|(n, w)| if *w == 1 { n.clone() } else { format!("{n}:{w}") })
        .collect();
    lines.push(format!("parameters: {}", params.join(", ")));
    for (l, e) in f.labels().iter().zip(f.entries()) {
        lines.push(format!("{} -> {e}", l.compact()));
    }
    lines.join("\n")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
