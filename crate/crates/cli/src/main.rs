//! `treewalk`: command-line surface over the exact walk-counting toolkit.
//!
//! Exit codes: 0 success/verified, 1 counterexample found, 2 input or
//! configuration error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use treewalk_core::degseq::{
    compare_majorization, majorization_chain, validate_tree_degseq, DegreeSequence, Relation,
};
use treewalk_core::treekit::{
    build_greedy_tree, enumerate_trees_with_limit, labeled_tree_count, EnumMode, Tree,
    DEFAULT_ENUM_VERTEX_LIMIT,
};
use treewalk_core::verifier::{
    check_majorization_lemma, dense_r_max, dense_r_max_bruteforce, random_lemma_instance,
    run_suite, Claim, SplitMix64, Status, SuiteConfig, VerificationReport,
    DEFAULT_SUITE_VERTEX_LIMIT,
};
use treewalk_core::walkcount::{closed_walks_power, estrada_index, spectral_moment};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "treewalk",
    version,
    about = "Exact closed-walk combinatorics on trees"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Upper bound on the vertex count for sweeps.
    #[arg(long, global = true, default_value_t = 7)]
    n_max: usize,
    /// Seed for randomized property sweeps.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    /// Worker count hint; verification currently runs on one worker and the
    /// report order is deterministic regardless.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a tree degree sequence and echo it sorted.
    Validate { degseq: String },
    /// Build the greedy tree of a degree sequence.
    Greedy { degseq: String },
    /// Enumerate the trees realizing a degree sequence.
    Enumerate {
        degseq: String,
        #[arg(long, value_enum, default_value_t = Mode::Unlabeled)]
        mode: Mode,
        /// Print only the number of trees.
        #[arg(long)]
        count_only: bool,
    },
    /// Closed-walk counts per vertex for a fixed length.
    Walks {
        /// Tree file via @path, or a degree sequence (implies its greedy tree).
        input: String,
        #[arg(short, long)]
        k: usize,
    },
    /// Spectral moments M_k (totals of the walk vectors).
    Moments {
        input: String,
        #[arg(short, long, value_delimiter = ',')]
        k: Vec<usize>,
    },
    /// Estrada index by truncated series with a certified tail bound.
    Estrada {
        input: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Compare two integer sequences under weak majorization.
    Majorize { alpha: String, beta: String },
    /// Stepwise majorization chain between two comparable degree sequences.
    Chain { pi: String, pi_prime: String },
    /// Run a verification sweep and stream JSON-lines reports.
    Verify {
        /// thm1 | thm2 | edge-shift | lemma | all
        claim: String,
        #[arg(short, long, value_delimiter = ',', default_values_t = [2usize, 4])]
        k: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        /// Sample count for the randomized lemma sweep.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Max walk sum over r vertices, with the achieving tree and subset.
    #[command(name = "dense-r")]
    DenseR {
        degseq: String,
        #[arg(short, long)]
        k: usize,
        #[arg(short, long)]
        r: usize,
        /// Confirm the greedy certificate against exhaustive enumeration.
        #[arg(long)]
        brute_force: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Labeled,
    Unlabeled,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let mut code = ExitCode::SUCCESS;
    let output;
    match &cli.cmd {
        Cmd::Validate { degseq } => {
            let pi = parse_degseq(degseq)?;
            output = match cli.format {
                Format::Text | Format::Csv => format!("{}\n", fmt_seq(&pi)),
                Format::Json => format!("{}\n", json!({ "degseq": pi.degrees() })),
            };
        }
        Cmd::Greedy { degseq } => {
            let pi = parse_degseq(degseq)?;
            let (tree, _) = build_greedy_tree(&pi);
            output = render_tree(&tree, cli.format);
        }
        Cmd::Enumerate {
            degseq,
            mode,
            count_only,
        } => {
            let pi = parse_degseq(degseq)?;
            let mode_core = match mode {
                Mode::Labeled => EnumMode::Labeled,
                Mode::Unlabeled => EnumMode::Unlabeled,
            };
            let trees = enumerate_trees_with_limit(&pi, mode_core, DEFAULT_ENUM_VERTEX_LIMIT)
                .map_err(core_err)?;
            if *count_only {
                output = match cli.format {
                    Format::Text | Format::Csv => format!("{}\n", trees.len()),
                    Format::Json => format!(
                        "{}\n",
                        json!({
                            "count": trees.len(),
                            "labeled_count": labeled_tree_count(&pi).to_string(),
                        })
                    ),
                };
            } else {
                output = match cli.format {
                    Format::Json => {
                        let arr: Vec<Value> = trees.iter().map(tree_json).collect();
                        format!("{}\n", Value::Array(arr))
                    }
                    Format::Text | Format::Csv => {
                        let blocks: Vec<String> =
                            trees.iter().map(|t| render_tree(t, cli.format)).collect();
                        blocks.join("\n")
                    }
                };
            }
        }
        Cmd::Walks { input, k } => {
            let tree = load_input_tree(input)?;
            if k % 2 == 1 {
                eprintln!("warning: odd length {k}, all closed-walk counts are zero");
            }
            let wv = closed_walks_power(&tree, *k);
            let decimals: Vec<String> = wv.counts.iter().map(|c| c.to_string()).collect();
            output = match cli.format {
                Format::Text => format!("{}\n", decimals.join(",")),
                Format::Csv => {
                    let mut s = String::from("vertex,count\n");
                    for (v, c) in decimals.iter().enumerate() {
                        s.push_str(&format!("{v},{c}\n"));
                    }
                    s
                }
                Format::Json => format!("{}\n", json!({ "k": k, "counts": decimals })),
            };
        }
        Cmd::Moments { input, k } => {
            let tree = load_input_tree(input)?;
            let rows: Vec<(usize, String)> = k
                .iter()
                .map(|&k| (k, spectral_moment(&tree, k).to_string()))
                .collect();
            output = match cli.format {
                Format::Text => rows.iter().map(|(k, m)| format!("M_{k} = {m}\n")).collect(),
                Format::Csv => {
                    let mut s = String::from("k,moment\n");
                    for (k, m) in &rows {
                        s.push_str(&format!("{k},{m}\n"));
                    }
                    s
                }
                Format::Json => {
                    let arr: Vec<Value> = rows
                        .iter()
                        .map(|(k, m)| json!({"k": k, "moment": m}))
                        .collect();
                    format!("{}\n", Value::Array(arr))
                }
            };
        }
        Cmd::Estrada { input, tol } => {
            let tree = load_input_tree(input)?;
            let ee = estrada_index(&tree, *tol).map_err(core_err)?;
            output = match cli.format {
                Format::Text | Format::Csv => format!("{ee:.12}\n"),
                Format::Json => format!("{}\n", json!({ "estrada": ee, "tol": tol })),
            };
        }
        Cmd::Majorize { alpha, beta } => {
            let a = parse_int_list(alpha)?;
            let b = parse_int_list(beta)?;
            let v = compare_majorization(&a, &b);
            let name = match v.relation {
                Relation::Equal => "equal",
                Relation::Weak => "weak",
                Relation::WeakStrict => "weak-strict",
                Relation::Majorized => "majorized",
                Relation::MajorizedStrict => "majorized-strict",
                Relation::Incomparable => "incomparable",
            };
            output = match cli.format {
                Format::Text | Format::Csv => format!("{name}\n"),
                Format::Json => format!(
                    "{}\n",
                    json!({
                        "relation": name,
                        "first_strict_index": v.first_strict_index,
                        "first_violation_index": v.first_violation_index,
                    })
                ),
            };
        }
        Cmd::Chain { pi, pi_prime } => {
            let a = parse_degseq(pi)?;
            let b = parse_degseq(pi_prime)?;
            let chain = majorization_chain(&a, &b).map_err(core_err)?;
            output = match cli.format {
                Format::Text | Format::Csv => {
                    chain.iter().map(|s| format!("{}\n", fmt_seq(s))).collect()
                }
                Format::Json => {
                    let arr: Vec<Value> = chain.iter().map(|s| json!(s.degrees())).collect();
                    format!("{}\n", Value::Array(arr))
                }
            };
        }
        Cmd::Verify {
            claim,
            k,
            n_min,
            samples,
        } => {
            let started = Instant::now();
            let mut reports = match claim.as_str() {
                "lemma" => vec![lemma_sweep(*samples, cli.seed)],
                other => {
                    let claims = match other {
                        "thm1" => vec![Claim::Thm1],
                        "thm2" => vec![Claim::Thm2],
                        "edge-shift" => vec![Claim::EdgeShift],
                        "all" => vec![Claim::Thm1, Claim::Thm2, Claim::EdgeShift],
                        unknown => bail!("unknown claim '{unknown}'"),
                    };
                    run_suite(&SuiteConfig {
                        n_min: *n_min,
                        n_max: cli.n_max,
                        ks: k.clone(),
                        claims,
                        vertex_limit: DEFAULT_SUITE_VERTEX_LIMIT,
                    })
                    .map_err(core_err)?
                }
            };
            let elapsed = started.elapsed().as_millis() as u64;
            for r in &mut reports {
                r.elapsed_ms = elapsed;
            }
            let mut lines = String::new();
            let mut failed = false;
            for r in &reports {
                failed |= r.status == Status::Counterexample;
                lines.push_str(&format!("{}\n", report_json(r)));
            }
            eprintln!(
                "{} report(s), {} in {} ms",
                reports.len(),
                if failed {
                    "COUNTEREXAMPLE"
                } else {
                    "all verified"
                },
                elapsed
            );
            output = lines;
            if failed {
                code = ExitCode::from(1);
            }
        }
        Cmd::DenseR {
            degseq,
            k,
            r,
            brute_force,
        } => {
            let pi = parse_degseq(degseq)?;
            let cert = dense_r_max(&pi, *k, *r).map_err(core_err)?;
            if *brute_force {
                let brute = dense_r_max_bruteforce(&pi, *k, *r).map_err(core_err)?;
                if brute.value != cert.value {
                    bail!(
                        "greedy certificate {} disagrees with brute force {}",
                        cert.value,
                        brute.value
                    );
                }
            }
            output = match cli.format {
                Format::Text => {
                    let subset: Vec<String> = cert.subset.iter().map(|v| v.to_string()).collect();
                    format!(
                        "value={}\nsubset={}\n{}",
                        cert.value,
                        subset.join(","),
                        render_tree(&cert.tree, Format::Text)
                    )
                }
                Format::Csv => format!("value\n{}\n", cert.value),
                Format::Json => format!(
                    "{}\n",
                    json!({
                        "value": cert.value.to_string(),
                        "subset": cert.subset,
                        "tree": tree_json(&cert.tree),
                    })
                ),
            };
        }
    }
    write_output(cli.out.as_deref(), &output)?;
    Ok(code)
}

fn lemma_sweep(samples: usize, seed: u64) -> VerificationReport {
    let mut rng = SplitMix64::new(seed);
    let mut status = Status::Verified;
    let mut first_failure = None;
    for trial in 0..samples {
        let n = 2 + rng.below(11) as usize;
        let (a, b, v1, phi) = random_lemma_instance(n, &mut rng);
        let c = check_majorization_lemma(&a, &b, &v1, &phi)
            .expect("generated instances are well formed");
        if c.conditions_hold && !c.conclusion_holds {
            status = Status::Counterexample;
            first_failure = Some(format!("trial {trial}: alpha={a:?} beta={b:?} v1={v1:?}"));
            break;
        }
    }
    VerificationReport {
        claim: "lemma".into(),
        params: vec![
            ("samples".into(), samples.to_string()),
            ("seed".into(), seed.to_string()),
            (
                "failure".into(),
                first_failure.unwrap_or_else(|| "none".into()),
            ),
        ],
        status,
        witness: None,
        elapsed_ms: 0,
    }
}

// ---------------------------------------------------------------------------
// Parsing and rendering
// ---------------------------------------------------------------------------

fn core_err(e: treewalk_core::Error) -> anyhow::Error {
    anyhow!("{e}")
}

fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .with_context(|| format!("bad integer '{p}'"))
        })
        .collect()
}

fn parse_degseq(s: &str) -> Result<DegreeSequence> {
    let raw = if let Some(path) = s.strip_prefix('@') {
        let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        parse_int_list(text.trim().replace(['\n', ' '], ",").as_str())?
    } else {
        parse_int_list(s)?
    };
    validate_tree_degseq(&raw).map_err(core_err)
}

fn fmt_seq(pi: &DegreeSequence) -> String {
    pi.degrees()
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// `@path` loads a tree file (text: first line n, then one `u v` edge per
/// line; or JSON `{"n":…,"edges":[[u,v],…]}`). Anything else is read as a
/// degree sequence and replaced by its greedy tree.
fn load_input_tree(input: &str) -> Result<Tree> {
    let Some(path) = input.strip_prefix('@') else {
        let pi = parse_degseq(input)?;
        return Ok(build_greedy_tree(&pi).0);
    };
    let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let v: Value = serde_json::from_str(trimmed).context("parsing tree JSON")?;
        let n = v["n"].as_u64().context("tree JSON needs integer 'n'")? as usize;
        let edges: Vec<(usize, usize)> = v["edges"]
            .as_array()
            .context("tree JSON needs 'edges'")?
            .iter()
            .map(|e| {
                let pair = e.as_array().filter(|p| p.len() == 2);
                pair.and_then(|p| Some((p[0].as_u64()? as usize, p[1].as_u64()? as usize)))
                    .context("each edge must be [u, v]")
            })
            .collect::<Result<_>>()?;
        return Tree::from_edges(n, &edges).map_err(core_err);
    }
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let n: usize = lines
        .next()
        .context("empty tree file")?
        .trim()
        .parse()
        .context("first line must be the vertex count")?;
    let edges: Vec<(usize, usize)> = lines
        .map(|l| {
            let mut it = l.split_whitespace();
            let u = it.next().and_then(|t| t.parse().ok());
            let v = it.next().and_then(|t| t.parse().ok());
            match (u, v, it.next()) {
                (Some(u), Some(v), None) => Ok((u, v)),
                _ => bail!("bad edge line '{l}'"),
            }
        })
        .collect::<Result<_>>()?;
    Tree::from_edges(n, &edges).map_err(core_err)
}

fn tree_json(t: &Tree) -> Value {
    let edges: Vec<Value> = t.edges().iter().map(|&(u, v)| json!([u, v])).collect();
    json!({ "n": t.n(), "edges": edges })
}

fn render_tree(t: &Tree, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", tree_json(t)),
        Format::Text => {
            let mut s = format!("{}\n", t.n());
            for &(u, v) in t.edges() {
                s.push_str(&format!("{u} {v}\n"));
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("u,v\n");
            for &(u, v) in t.edges() {
                s.push_str(&format!("{u},{v}\n"));
            }
            s
        }
    }
}

fn report_json(r: &VerificationReport) -> Value {
    let params: serde_json::Map<String, Value> = r
        .params
        .iter()
        .map(|(k, v)| (k.clone(), Value::String(v.clone())))
        .collect();
    let witness = r.witness.as_ref().map(|w| {
        json!({
            "k": w.k,
            "left_tree": {"n": w.left_tree.n, "edges": w.left_tree.edges},
            "right_tree": {"n": w.right_tree.n, "edges": w.right_tree.edges},
            "left_counts": w.left_counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "right_counts": w.right_counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "first_violation_index": w.first_violation_index,
        })
    });
    json!({
        "claim": r.claim,
        "params": params,
        "status": r.status.as_str(),
        "witness": witness,
        "elapsed_ms": r.elapsed_ms,
    })
}

fn write_output(path: Option<&std::path::Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, content).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{content}"),
    }
    Ok(())
}
