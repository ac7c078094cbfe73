//! Command-line interface: build expansion transducers for a base
//! alphabet in a number field, stream expansions, run the structural
//! analyses, and replay the packaged verification scenarios.

mod scenarios;

use cantor_bases::analysis::{
    admissible_up, complexity_ratio, prefix_table, restrict, scc, transduce_uniform_morphic,
    two_walk,
};
use cantor_bases::morphisms::{block_expand, delta_expansion};
use cantor_bases::numberfield::{FieldElement, NumberField};
use cantor_bases::parse::{
    parse_automaton_table, parse_base_exprs, parse_field_spec, parse_morphism, parse_rational,
    parse_up_word, parse_word_spec, WordSpecText,
};
use cantor_bases::transducer::{
    build, from_json, run, run_up, to_dot, to_json, BaseAlphabet, Mode, Transducer,
    DEFAULT_STATE_CAP,
};
use cantor_bases::words::{UpWord, WordSpec};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "cantor", version, about = "Exact expansion transducers for Cantor real bases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Greedy,
    #[value(alias = "quasi-greedy")]
    Quasi,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Greedy => Mode::Greedy,
            ModeArg::Quasi => Mode::QuasiGreedy,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Text,
    Json,
    Dot,
}

#[derive(Args)]
struct FieldArgs {
    /// Field description: a polynomial in x, or `field { minpoly = [...]; root = ... }`
    #[arg(long)]
    field: String,
    /// Comma-separated base letters as integer polynomials in d
    #[arg(long)]
    bases: String,
    /// Skip the Pisot verification of the base letters
    #[arg(long)]
    force: bool,
    /// State cap override (also env CANTOR_STATE_CAP)
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Build the reachable transducer for a point and print it
    Build {
        #[command(flatten)]
        field: FieldArgs,
        /// Starting point in [0,1], as a rational p/q
        #[arg(long)]
        point: String,
        #[arg(long, value_enum, default_value = "quasi")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "text")]
        out: OutFormat,
    },
    /// Stream the first n digits of the expansion of a point in a base word
    Expand {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        point: String,
        /// Base word spec (letters index into --bases)
        #[arg(long = "base-word")]
        base_word: String,
        #[arg(short = 'n', long, default_value = "32")]
        count: usize,
        #[arg(long, value_enum, default_value = "greedy")]
        mode: ModeArg,
    },
    /// Exact ultimately periodic expansion for an ultimately periodic base
    ExpandUp {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        point: String,
        /// Ultimately periodic base, e.g. "(0 1)" or "0 (1 0)"
        #[arg(long = "base-up")]
        base_up: String,
        #[arg(long, value_enum, default_value = "greedy")]
        mode: ModeArg,
    },
    /// Expand a rational through a constant-product block morphism
    MorphismExpand {
        /// Block table, e.g. "a: 2 3; b: 3 2"
        #[arg(long)]
        psi: String,
        /// The rational to expand, in [0,1)
        #[arg(long)]
        point: String,
        /// Preimage word spec over the block letters
        #[arg(long)]
        preimage: String,
        #[arg(short = 'n', long, default_value = "32")]
        count: usize,
    },
    /// Structural analyses of a serialized transducer
    Analyze {
        #[command(subcommand)]
        what: AnalyzeCommand,
    },
    /// Group shifted quasi-greedy expansions by their prefix before a periodic tail
    PrefixTable {
        #[command(flatten)]
        field: FieldArgs,
        /// Point whose expansions are tabulated (default 1)
        #[arg(long, default_value = "1")]
        point: String,
        #[arg(long = "base-word")]
        base_word: String,
        /// Periodic tail digits, e.g. "200" or "2 0 0"
        #[arg(long)]
        tail: String,
        #[arg(short = 'N', long, default_value = "100")]
        shifts: u64,
        /// Digits computed per shift (default 40 tail lengths)
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
    },
    /// Decide admissibility of an ultimately periodic digit word
    Admissible {
        #[command(flatten)]
        field: FieldArgs,
        /// Candidate digit word, e.g. "up: (0 1)"
        #[arg(long)]
        candidate: String,
        #[arg(long = "base-up")]
        base_up: String,
    },
    /// Transduce a uniform-morphic base into a morphic digit stream
    TransduceMorphic {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        point: String,
        /// Morphic base word spec
        #[arg(long = "base-word")]
        base_word: String,
        #[arg(long, value_enum, default_value = "quasi")]
        mode: ModeArg,
        /// Sample this many digits of the result for display
        #[arg(short = 'n', long, default_value = "32")]
        count: usize,
    },
    /// Run a packaged verification scenario
    Reproduce {
        /// One of: fig2 fig3 ex311-180 fig4 fig6 fig7 table2 table1 table3
        /// rem69 fig1-counts morphism-61 all
        name: String,
    },
}

#[derive(Subcommand)]
enum AnalyzeCommand {
    /// Decide the two-closed-walk property and print a witness
    TwoWalk {
        #[arg(long)]
        json: String,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
    },
    /// Strongly connected components
    Scc {
        #[arg(long)]
        json: String,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
    },
    /// Visited-state ratio for block-restricted inputs
    Complexity {
        #[arg(long)]
        json: String,
        /// Comma-separated blocks of letter names, e.g. "23,32"
        #[arg(long)]
        blocks: String,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
    },
}

/// Domain failure: message to stderr, exit code 1.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => {}
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
    }
}

fn state_cap(explicit: Option<usize>) -> usize {
    explicit
        .or_else(|| {
            std::env::var("CANTOR_STATE_CAP")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(DEFAULT_STATE_CAP)
}

fn load_alphabet(args: &FieldArgs) -> Result<(Arc<NumberField>, BaseAlphabet), Failure> {
    let spec = parse_field_spec(&args.field)?;
    let field = NumberField::new(&spec.minpoly, spec.selector)?;
    let exprs = parse_base_exprs(&args.bases)?;
    let mut letters = Vec::new();
    let mut names = Vec::new();
    for (coeffs, name) in exprs {
        let poly: Vec<_> = coeffs
            .into_iter()
            .map(num_rational::BigRational::from_integer)
            .collect();
        letters.push(field.element(poly));
        names.push(name);
    }
    let mut alphabet = if args.force {
        BaseAlphabet::new_forced(field.clone(), letters)?
    } else {
        BaseAlphabet::new(field.clone(), letters)?
    };
    alphabet.set_names(names);
    Ok((field, alphabet))
}

fn load_point(field: &Arc<NumberField>, s: &str) -> Result<FieldElement, Failure> {
    Ok(field.from_rational(parse_rational(s)?))
}

fn load_word_spec(s: &str) -> Result<WordSpec, Failure> {
    match parse_word_spec(s)? {
        WordSpecText::Inline(w) => Ok(w),
        WordSpecText::AutomatonFile(path) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Failure(format!("cannot read {path}: {e}")))?;
            Ok(WordSpec::Automaton(parse_automaton_table(&text)?))
        }
    }
}

fn load_transducer(path: &str) -> Result<Transducer, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure(format!("cannot read {path}: {e}")))?;
    Ok(from_json(&text)?)
}

fn parse_tail(s: &str) -> Result<Vec<u32>, Failure> {
    let t = s.trim();
    let digits: Result<Vec<u32>, _> = if t.contains(char::is_whitespace) {
        t.split_whitespace().map(|w| w.parse::<u32>()).collect()
    } else {
        t.chars().map(|c| c.to_string().parse::<u32>()).collect()
    };
    digits.map_err(|e| Failure(format!("bad tail {s:?}: {e}")))
}

/// Blocks like "23,32": each comma-separated word is either whitespace
/// separated letter names or a string of single-character names.
fn parse_blocks(s: &str, t: &Transducer) -> Result<Vec<Vec<usize>>, Failure> {
    let names = t.alphabet.names();
    let resolve = |token: &str| -> Result<usize, Failure> {
        if let Some(i) = names.iter().position(|n| n == token) {
            return Ok(i);
        }
        token
            .parse::<usize>()
            .ok()
            .filter(|&i| i < t.alphabet.len())
            .ok_or_else(|| Failure(format!("unknown letter {token:?}")))
    };
    let mut out = Vec::new();
    for block in s.split(',') {
        let block = block.trim();
        if block.is_empty() {
            return Err(Failure("empty block".into()));
        }
        let letters: Result<Vec<usize>, Failure> = if block.contains(char::is_whitespace) {
            block.split_whitespace().map(resolve).collect()
        } else {
            block.chars().map(|c| resolve(&c.to_string())).collect()
        };
        out.push(letters?);
    }
    Ok(out)
}

fn digits_to_string(digits: &[u32]) -> String {
    if digits.iter().all(|&d| d < 10) {
        digits.iter().map(|d| d.to_string()).collect()
    } else {
        digits
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn up_to_string(w: &UpWord) -> String {
    let pre = digits_to_string(w.preperiod());
    let per = digits_to_string(w.period());
    format!("{pre}({per})")
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Build { field, point, mode, out } => {
            let (f, alphabet) = load_alphabet(&field)?;
            let r = load_point(&f, &point)?;
            let t = build(&alphabet, &r, mode.into(), state_cap(field.cap))?;
            match out {
                OutFormat::Dot => print!("{}", to_dot(&t)),
                OutFormat::Json => println!("{}", to_json(&t)),
                OutFormat::Text => {
                    println!("states: {}", t.state_count());
                    println!("mode: {}", t.mode.as_str());
                    for (i, row) in t.edges.iter().enumerate() {
                        for (l, (d, target)) in row.iter().enumerate() {
                            println!("  {i} --{}|{d}--> {target}", t.alphabet.names()[l]);
                        }
                    }
                }
            }
            Ok(())
        }
        Command::Expand { field, point, base_word, count, mode } => {
            let (f, alphabet) = load_alphabet(&field)?;
            let r = load_point(&f, &point)?;
            let base = load_word_spec(&base_word)?;
            let (digits, visited) = run(&alphabet, &r, &base, count, mode.into())?;
            println!("{}", digits_to_string(&digits));
            eprintln!("visited states: {visited}");
            Ok(())
        }
        Command::ExpandUp { field, point, base_up, mode } => {
            let (f, alphabet) = load_alphabet(&field)?;
            let r = load_point(&f, &point)?;
            let base = parse_up_word(&base_up)?;
            let out = run_up(&alphabet, &r, &base, mode.into(), state_cap(field.cap))?;
            println!("{}", up_to_string(&out));
            Ok(())
        }
        Command::MorphismExpand { psi, point, preimage, count } => {
            let psi = parse_morphism(&psi)?;
            let r = parse_rational(&point)?;
            let d_delta = delta_expansion(&r, psi.delta())?;
            let preimage_spec = match parse_word_spec(&preimage)? {
                WordSpecText::Inline(w) => w,
                WordSpecText::AutomatonFile(_) => {
                    return Err(Failure("preimage must be an inline word spec".into()))
                }
            };
            let digits = block_expand(&d_delta, &preimage_spec, &psi, count)?;
            println!("{}", digits_to_string(&digits));
            Ok(())
        }
        Command::Analyze { what } => analyze(what),
        Command::PrefixTable { field, point, base_word, tail, shifts, horizon, format } => {
            let (f, alphabet) = load_alphabet(&field)?;
            let r = load_point(&f, &point)?;
            let base = load_word_spec(&base_word)?;
            let tail = parse_tail(&tail)?;
            let horizon = horizon.unwrap_or(40 * tail.len());
            let table = prefix_table(&alphabet, &r, &base, shifts, &tail, horizon)?;
            match format {
                OutFormat::Json => {
                    let groups: serde_json::Map<String, serde_json::Value> = table
                        .groups
                        .iter()
                        .map(|(w, ns)| {
                            (
                                digits_to_string(w),
                                serde_json::Value::Array(
                                    ns.iter().map(|&n| serde_json::Value::from(n)).collect(),
                                ),
                            )
                        })
                        .collect();
                    let out = serde_json::json!({
                        "horizon": table.horizon,
                        "groups": groups,
                        "undetected": table.undetected,
                    });
                    println!("{}", serde_json::to_string_pretty(&out).unwrap());
                }
                _ => {
                    println!("{:<24} shifts", "prefix");
                    for (w, ns) in &table.groups {
                        let label = if w.is_empty() {
                            "(empty)".to_string()
                        } else {
                            digits_to_string(w)
                        };
                        let ns: Vec<String> = ns.iter().map(|n| n.to_string()).collect();
                        println!("{:<24} {}", label, ns.join(", "));
                    }
                    if !table.undetected.is_empty() {
                        let ns: Vec<String> =
                            table.undetected.iter().map(|n| n.to_string()).collect();
                        println!("{:<24} {}", "undetected", ns.join(", "));
                    }
                }
            }
            Ok(())
        }
        Command::Admissible { field, candidate, base_up } => {
            let (_, alphabet) = load_alphabet(&field)?;
            let cand = match parse_word_spec(&candidate)? {
                WordSpecText::Inline(WordSpec::Up(w)) => w,
                _ => return Err(Failure("candidate must be an up: word".into())),
            };
            let base = parse_up_word(&base_up)?;
            let ok = admissible_up(&cand, &base, &alphabet)?;
            println!("{}", if ok { "admissible" } else { "not admissible" });
            Ok(())
        }
        Command::TransduceMorphic { field, point, base_word, mode, count } => {
            let (f, alphabet) = load_alphabet(&field)?;
            let r = load_point(&f, &point)?;
            let spec = match parse_word_spec(&base_word)? {
                WordSpecText::Inline(WordSpec::Morphic(m)) => m,
                _ => return Err(Failure("base word must be a morphic: spec".into())),
            };
            let out =
                transduce_uniform_morphic(&alphabet, &r, &spec, mode.into(), state_cap(field.cap))?;
            println!("uniformity: {}", out.k);
            println!("alphabet size: {}", out.images.len());
            let sample = WordSpec::Morphic(out).stream(count);
            println!("digits: {}", digits_to_string(&sample));
            Ok(())
        }
        Command::Reproduce { name } => match scenarios::reproduce(&name) {
            Ok(true) => Ok(()),
            Ok(false) => Err(Failure("scenario reported failures".into())),
            Err(msg) => {
                // unknown scenario names are usage errors
                eprintln!("error: {msg}");
                std::process::exit(2);
            }
        },
    }
}

fn analyze(what: AnalyzeCommand) -> Result<(), Failure> {
    match what {
        AnalyzeCommand::TwoWalk { json, format } => {
            let t = load_transducer(&json)?;
            let (found, witness) = two_walk(&t);
            match format {
                OutFormat::Json => {
                    let out = match &witness {
                        Some(w) => serde_json::json!({
                            "two_walk": found,
                            "state": w.state,
                            "input_u": w.input_u,
                            "input_v": w.input_v,
                            "output": w.output,
                        }),
                        None => serde_json::json!({ "two_walk": found }),
                    };
                    println!("{}", serde_json::to_string_pretty(&out).unwrap());
                }
                _ => {
                    println!("two-walk property: {found}");
                    if let Some(w) = witness {
                        let name = |l: &usize| t.alphabet.names()[*l].clone();
                        println!("  state: {}", w.state);
                        println!(
                            "  input u: {}",
                            w.input_u.iter().map(name).collect::<Vec<_>>().join(" ")
                        );
                        println!(
                            "  input v: {}",
                            w.input_v.iter().map(name).collect::<Vec<_>>().join(" ")
                        );
                        println!("  output: {}", digits_to_string(&w.output));
                    }
                }
            }
            Ok(())
        }
        AnalyzeCommand::Scc { json, format } => {
            let t = load_transducer(&json)?;
            let comps = scc(&t);
            match format {
                OutFormat::Json => {
                    let out = serde_json::json!({
                        "components": comps,
                        "strongly_connected": comps.len() == 1,
                    });
                    println!("{}", serde_json::to_string_pretty(&out).unwrap());
                }
                _ => {
                    println!("strongly connected: {}", comps.len() == 1);
                    println!("components: {}", comps.len());
                    for (i, c) in comps.iter().enumerate() {
                        let states: Vec<String> = c.iter().map(|s| s.to_string()).collect();
                        println!("  {i}: {{{}}}", states.join(", "));
                    }
                }
            }
            Ok(())
        }
        AnalyzeCommand::Complexity { json, blocks, format } => {
            let t = load_transducer(&json)?;
            let blocks = parse_blocks(&blocks, &t)?;
            let restriction = restrict(&t, &blocks);
            let ratio = complexity_ratio(&t, &blocks);
            match format {
                OutFormat::Json => {
                    let out = serde_json::json!({
                        "visited": restriction.visited.len(),
                        "states": t.state_count(),
                        "ratio": ratio.to_string(),
                    });
                    println!("{}", serde_json::to_string_pretty(&out).unwrap());
                }
                _ => {
                    println!(
                        "visited {} of {} states, ratio {}",
                        restriction.visited.len(),
                        t.state_count(),
                        ratio
                    );
                }
            }
            Ok(())
        }
    }
}
