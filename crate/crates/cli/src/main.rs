//! `spidersq`: parse, evaluate, transform and prove with spider diagrams.
//!
//! Exit codes: 0 success, 1 a negative answer (countermodel, invalid
//! proof, no proof found, failed derivation), 2 usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use spidersq_core::diagram::{CompoundDiagram, UnitaryDiagram};
use spidersq_core::greimas::{
    assemble_square, corner, meta_term_target, Corner, MetaTerm, SquareOptions, SquareReport,
    SquareSpec,
};
use spidersq_core::io::dot::{render_compound, render_proof, render_square};
use spidersq_core::io::dsl::{parse, pretty_diagram, Document};
use spidersq_core::io::json::{
    compound_to_json, compound_to_value, document_from_json, document_to_json, params_from_json,
    proof_from_json, proof_to_json, proof_to_value, ParamsJson,
};
use spidersq_core::proof::{check_proof, CheckReport};
use spidersq_core::rules::{apply, RuleName};
use spidersq_core::search::{derive, SearchConfig, DEFAULT_MAX_DEPTH};
use spidersq_core::semantics::{count_models_over, entails, models};

// A closed stdout (e.g. piping into `head`) ends output quietly.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(
    name = "spidersq",
    version,
    about = "Spider diagram proof engine and semiotic square builder"
)]
struct Cli {
    /// Suppress informational messages on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    /// Accepted for compatibility; every command is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a diagram file as canonical JSON.
    Parse { file: PathBuf },
    /// Count (or list) models of a named diagram over a fixed universe size.
    Models {
        file: PathBuf,
        #[arg(long)]
        name: String,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        list: bool,
    },
    /// Bounded entailment check between two named diagrams.
    Entails {
        file: PathBuf,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
    /// Apply one rule to a named diagram.
    Apply {
        file: PathBuf,
        #[arg(long)]
        name: String,
        #[arg(long)]
        rule: String,
        #[arg(long, default_value = "{}")]
        params: String,
        /// Second input for Combine and CopySpider.
        #[arg(long = "with")]
        with: Option<String>,
    },
    /// Check a proof against premises given as FILE[:NAME,...].
    Check {
        proof: PathBuf,
        #[arg(long, num_args = 1.., required = true)]
        premises: Vec<String>,
    },
    /// Search for a proof of FILE:NAME.
    Derive {
        #[arg(long, num_args = 1.., required = true)]
        premises: Vec<String>,
        #[arg(long = "assert", num_args = 1..)]
        assertions: Vec<String>,
        #[arg(long)]
        goal: String,
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        max_depth: usize,
    },
    /// Build the semiotic square and write every artifact into a directory.
    Square {
        #[arg(long)]
        s1: String,
        #[arg(long)]
        s2: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 3)]
        bound: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        max_depth: usize,
    },
    /// Render a named diagram, or a proof, as Graphviz DOT.
    Dot {
        file: PathBuf,
        #[arg(long, conflicts_with = "proof")]
        name: Option<String>,
        /// Treat FILE as a proof JSON file.
        #[arg(long)]
        proof: bool,
    },
}

fn load_document(path: &Path) -> Result<Document> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if path.extension().is_some_and(|e| e == "json") {
        document_from_json(&text).with_context(|| format!("in {}", path.display()))
    } else {
        parse(&text).with_context(|| format!("in {}", path.display()))
    }
}

fn lookup(doc: &Document, name: &str) -> Result<CompoundDiagram> {
    doc.get(name)
        .ok_or_else(|| anyhow!("no diagram or compound named `{name}`"))
}

/// `FILE[:NAME,...]`; without names every item of the file is taken.
fn load_refs(spec: &str) -> Result<Vec<CompoundDiagram>> {
    let (file, names) = match spec.rsplit_once(':') {
        Some((f, n)) if !n.contains('/') && !f.is_empty() => (f, Some(n)),
        _ => (spec, None),
    };
    let doc = load_document(Path::new(file))?;
    match names {
        Some(n) => n.split(',').map(|name| lookup(&doc, name.trim())).collect(),
        None => Ok(doc
            .diagrams
            .keys()
            .chain(doc.compounds.keys())
            .map(|k| doc.get(k).expect("own key"))
            .collect()),
    }
}

fn load_units(specs: &[String]) -> Result<Vec<UnitaryDiagram>> {
    let mut out = Vec::new();
    for s in specs {
        for d in load_refs(s)? {
            match d {
                CompoundDiagram::Unit(u) => out.push(u),
                other => bail!("assertions must be unitary diagrams, got {other}"),
            }
        }
    }
    Ok(out)
}

fn report_json(r: &CheckReport) -> Value {
    json!({
        "valid": r.valid,
        "steps_checked": r.steps_checked,
        "first_failure": r.first_failure.as_ref().map(|f| json!({
            "path": f.path.to_string(),
            "reason": f.reason,
        })),
        "premises_used": r.premises_used.iter().map(compound_to_value).collect::<Vec<_>>(),
        "assertions_used": r.assertions_used.iter().map(compound_to_value).collect::<Vec<_>>(),
    })
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn run(cli: Cli) -> Result<ExitCode> {
    let info = |msg: &str| {
        if !cli.quiet {
            eprintln!("{msg}");
        }
    };
    match &cli.command {
        Command::Parse { file } => {
            outln!("{}", document_to_json(&load_document(file)?));
        }
        Command::Models {
            file,
            name,
            size,
            list,
        } => {
            let doc = load_document(file)?;
            let d = lookup(&doc, name)?;
            let labels = d.labels().cloned().unwrap_or_default();
            if *list {
                for m in models(&d, &labels, *size)? {
                    outln!("{m}");
                }
            } else {
                outln!("{}", count_models_over(&d, &labels, *size)?);
            }
        }
        Command::Entails {
            file,
            lhs,
            rhs,
            bound,
        } => {
            let doc = load_document(file)?;
            let v = entails(&lookup(&doc, lhs)?, &lookup(&doc, rhs)?, *bound)?;
            if v.holds {
                outln!("holds (checked every universe up to {bound} elements)");
            } else {
                let cm = v
                    .countermodel
                    .expect("failing verdicts carry a countermodel");
                outln!("countermodel: {cm}");
                return Ok(ExitCode::from(1));
            }
        }
        Command::Apply {
            file,
            name,
            rule,
            params,
            with,
        } => {
            let doc = load_document(file)?;
            let d = lookup(&doc, name)?;
            let rule: RuleName = rule.parse()?;
            let params: ParamsJson = serde_json::from_str(params).context("parsing --params")?;
            let labels = d.labels().cloned();
            let inst = params_from_json(rule, params, labels.as_ref()).map_err(|e| anyhow!(e))?;
            let second = with.as_deref().map(|n| lookup(&doc, n)).transpose()?;
            let mut inputs = vec![&d];
            inputs.extend(second.as_ref());
            let out = apply(&inst, &inputs)?;
            outln!("{}", compound_to_json(&out));
        }
        Command::Check { proof, premises } => {
            let text = fs::read_to_string(proof)
                .with_context(|| format!("reading {}", proof.display()))?;
            let tree = proof_from_json(&text).with_context(|| format!("in {}", proof.display()))?;
            let mut pool = Vec::new();
            for p in premises {
                pool.extend(load_refs(p)?);
            }
            let report = check_proof(&tree, &pool)?;
            outln!("{}", pretty(&report_json(&report)));
            if !report.valid {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Derive {
            premises,
            assertions,
            goal,
            max_depth,
        } => {
            let mut pool = Vec::new();
            for p in premises {
                pool.extend(load_refs(p)?);
            }
            let goals = load_refs(goal)?;
            let [goal] = goals.as_slice() else {
                bail!("--goal must name exactly one diagram (FILE:NAME)");
            };
            let cfg = SearchConfig::new(pool, load_units(assertions)?).with_max_depth(*max_depth);
            let outcome = derive(&cfg, goal)?;
            let stats = serde_json::to_string(&outcome.stats).expect("serializable");
            match outcome.proof {
                Some(p) => {
                    info(&format!(
                        "proof of height {} found; search: {stats}",
                        p.height()
                    ));
                    outln!("{}", proof_to_json(&p));
                }
                None => {
                    info(&format!(
                        "no proof within depth {max_depth}; search: {stats}"
                    ));
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Command::Square {
            s1,
            s2,
            out,
            bound,
            max_depth,
        } => {
            let spec = SquareSpec::new(s1.clone(), s2.clone())?;
            let opts = SquareOptions {
                max_depth: *max_depth,
                bound: *bound,
                ..SquareOptions::default()
            };
            let report = assemble_square(&spec, &opts);
            write_square(&report, out)?;
            let failed = report.failed();
            if !failed.is_empty() {
                eprintln!("derivation failed: {}", failed.join(", "));
                return Ok(ExitCode::from(1));
            }
            info(&format!("square written to {}", out.display()));
        }
        Command::Dot { file, name, proof } => {
            if *proof {
                let text = fs::read_to_string(file)?;
                out!("{}", render_proof(&proof_from_json(&text)?));
            } else {
                let name = name
                    .as_deref()
                    .ok_or_else(|| anyhow!("--name is required"))?;
                out!("{}", render_compound(&lookup(&load_document(file)?, name)?));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn write(path: &Path, text: &str) -> Result<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn write_square(r: &SquareReport, dir: &Path) -> Result<()> {
    for sub in ["corners", "meta_terms", "proofs"] {
        fs::create_dir_all(dir.join(sub))?;
    }
    let mut dsl = String::new();
    for (name, d) in r.corners() {
        write(
            &dir.join("corners").join(format!("{name}.json")),
            &compound_to_json(&d.clone().into()),
        )?;
        dsl.push_str(&pretty_diagram(name, &d));
    }
    write(&dir.join("corners").join("corners.sd"), &dsl)?;
    for m in MetaTerm::ALL {
        let target = meta_term_target(m);
        write(
            &dir.join("meta_terms").join(format!("{}.json", m.tag())),
            &compound_to_json(&target.into()),
        )?;
    }
    let mut derivations = Vec::new();
    for d in &r.derivations {
        let tag = &d.task.tag;
        if let Some(p) = &d.proof {
            write(
                &dir.join("proofs").join(format!("{tag}.json")),
                &proof_to_json(p),
            )?;
            write(
                &dir.join("proofs").join(format!("{tag}.dot")),
                &render_proof(p),
            )?;
        }
        derivations.push(json!({
            "tag": tag,
            "gloss": d.task.gloss,
            "meta_term": d.task.meta_term.map(|m| m.tag()),
            "ok": d.ok(),
            "found": d.proof.is_some(),
            "valid": d.check.as_ref().map(|c| c.valid),
            "entailed": d.entailed,
            "clauses": d.clauses,
            "height": d.proof.as_ref().map(|p| p.height()),
            "rules": d.proof.as_ref().map(|p| p.rule_multiset()),
            "premises": d.task.premises.iter().map(compound_to_value).collect::<Vec<_>>(),
            "assertions": d.task.assertions.iter().map(|a| compound_to_value(&a.clone().into())).collect::<Vec<_>>(),
            "goal": compound_to_value(&d.task.goal.clone().into()),
            "proof": d.proof.as_ref().map(proof_to_value),
            "search": d.stats,
        }));
    }
    let contrariety: Vec<Value> = r
        .contrariety
        .iter()
        .map(|(a, b, v)| json!({"a": a.name(), "b": b.name(), "holds": v}))
        .collect();
    let implications: Vec<Value> = r
        .implications
        .iter()
        .map(|(a, b, s, v)| json!({"a": a.name(), "b": b.name(), "seme": s, "holds": v}))
        .collect();
    let summary = json!({
        "spec": r.spec,
        "labels": {"S1": r.spec.s1_name, "S2": r.spec.s2_name},
        "options": {"max_depth": r.options.max_depth, "bound": r.options.bound},
        "complex_axis": [compound_to_value(&corner(Corner::D1).into()), compound_to_value(&corner(Corner::D3).into())],
        "neutral_axis": [compound_to_value(&corner(Corner::D2).into()), compound_to_value(&corner(Corner::D4).into())],
        "derivations": derivations,
        "contrariety": contrariety,
        "implications": implications,
        "failed": r.failed(),
    });
    write(&dir.join("summary.json"), &pretty(&summary))?;
    write(&dir.join("square.dot"), &render_square(r))?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
