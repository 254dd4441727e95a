//! Command-line front end: expression normal forms, wedges, contractions,
//! derivation series and the verification suite.
//!
//! Exit codes: 0 success or all checks hold, 1 a check fails, 2 a check is
//! inconclusive, 3 usage or input error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use semiwedge::clifford::{normal_form_element, MixedElement, RewriteOrder};
use semiwedge::error::{Error, Result};
use semiwedge::exterior::{contract_letter, wedge_monomial, BilinearForm};
use semiwedge::partitions::{exponent_tuple, pieri};
use semiwedge::schubert::{apply_op, SeriesOp, Variable};
use semiwedge::series::{series_surpasses, BiSeries, Verdict, Window};
use semiwedge::textio::{
    biseries_json, mixed_json, parse_mixed, parse_partition, render_biseries, render_mixed,
    render_partition, render_wedge_oriented, wedge_json, JSON_SCHEMA,
};
use semiwedge::verify::{
    generating_lhs, generating_rhs, resolve_prefactor, CheckConfig, SuiteReport,
};
use semiwedge::with_semiring;
use semiwedge::{Pair, Semiring, SemiringId};

#[derive(Parser)]
#[command(
    name = "semiwedge",
    version,
    about = "Exterior and Clifford semialgebra calculator over semirings with a negation map"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Scalar semiring: nat, qplus or maxplus.
    #[arg(long, default_value = "nat")]
    semiring: String,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Straighten a mixed x/d word expression to its normal form.
    NormalForm {
        /// Expression such as "d1 * x1" or "x2*d3 + neg(x1)".
        expr: String,
        /// Pairing: "kronecker", or "sum+C" for B(i,j) = i + j + C.
        #[arg(long, default_value = "kronecker")]
        form: String,
        /// Redex strategy: leftmost or rightmost (results agree).
        #[arg(long, default_value = "leftmost")]
        order: String,
        #[command(flatten)]
        common: Common,
    },
    /// Multiply an x-only expression out in the exterior basis.
    Wedge {
        /// Expression such as "x5^x3^x1" or "x1^x2 + x2^x1".
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Contract a wedge expression by one contraction generator.
    Contract {
        /// Contraction index i of d_i.
        #[arg(long)]
        d: u32,
        expr: String,
        /// Pairing: "kronecker", or "sum+C" for B(i,j) = i + j + C.
        #[arg(long, default_value = "kronecker")]
        form: String,
        #[command(flatten)]
        common: Common,
    },
    /// Apply a derivation series to the basis wedge of a partition.
    Schubert {
        /// Number of rows of the wedge.
        #[arg(long)]
        r: u32,
        /// Partition, comma separated ("3,2,1"); empty for the trivial one.
        #[arg(long, default_value = "")]
        lambda: String,
        /// sigma-plus, sigma-minus, sigma-plus-bar or sigma-minus-bar.
        #[arg(long, default_value = "sigma-plus")]
        op: String,
        /// Series variable: z or w.
        #[arg(long, default_value = "z")]
        var: String,
        /// Series degree ceiling.
        #[arg(long, default_value_t = 8)]
        zmax: i32,
        /// Rank bound; x^k vanishes for k >= n.
        #[arg(long)]
        n: Option<u32>,
        /// Print the strip partitions at this raising degree instead.
        #[arg(long)]
        pieri: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Print both sides of the main generating identity and the verdict.
    ExpandMain {
        #[arg(long)]
        r: u32,
        #[arg(long, default_value = "")]
        lambda: String,
        #[arg(long, default_value_t = 8)]
        zmax: i32,
        #[arg(long, default_value_t = 8)]
        wmax: i32,
        #[arg(long)]
        n: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Run the verification suite.
    Verify {
        /// Semirings to cover, comma separated or repeated; default all.
        #[arg(long = "semiring", value_delimiter = ',')]
        semirings: Vec<String>,
        #[arg(long)]
        rmax: Option<u32>,
        /// Partition weight bound.
        #[arg(long)]
        weight: Option<u32>,
        #[arg(long)]
        zmax: Option<i32>,
        #[arg(long)]
        wmax: Option<i32>,
        /// Rank bound; x^k vanishes for k >= n.
        #[arg(long)]
        n: Option<u32>,
        /// Subset of checks, comma separated; default all.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
        /// Random draws per scalar axiom property.
        #[arg(long)]
        samples: Option<usize>,
        /// Random words for the rewriting check.
        #[arg(long)]
        words: Option<usize>,
        /// Flat key=value file with defaults; explicit flags win.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Also write the report to this path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let displayed = matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = err.print();
            return if displayed { ExitCode::SUCCESS } else { ExitCode::from(3) };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(3)
        }
    }
}

fn parse_form<S: Semiring>(text: &str) -> Result<BilinearForm<S>> {
    if text == "kronecker" {
        return Ok(BilinearForm::kronecker());
    }
    if let Some(c) = text.strip_prefix("sum+") {
        let c: u32 = c
            .parse()
            .map_err(|_| Error::invalid(format!("bad form offset in '{text}'")))?;
        return Ok(BilinearForm::from_fn(16, move |i, j| {
            Pair::from_u64(u64::from(i + j + c))
        }));
    }
    Err(Error::invalid(format!(
        "unknown form '{text}' (expected kronecker or sum+C)"
    )))
}

fn parse_order(text: &str) -> Result<RewriteOrder> {
    match text {
        "leftmost" => Ok(RewriteOrder::LeftmostFirst),
        "rightmost" => Ok(RewriteOrder::RightmostFirst),
        other => Err(Error::invalid(format!(
            "unknown order '{other}' (expected leftmost or rightmost)"
        ))),
    }
}

fn parse_op<S: Semiring>(text: &str) -> Result<SeriesOp<S>> {
    match text {
        "sigma-plus" | "raising" => Ok(SeriesOp::Raising),
        "sigma-minus" | "lowering" => Ok(SeriesOp::Lowering),
        "sigma-plus-bar" | "bar-raising" => Ok(SeriesOp::BarRaising),
        "sigma-minus-bar" | "bar-lowering" => Ok(SeriesOp::BarLowering),
        other => Err(Error::invalid(format!(
            "unknown derivation '{other}' (expected sigma-plus, sigma-minus, sigma-plus-bar or sigma-minus-bar)"
        ))),
    }
}

fn parse_var(text: &str) -> Result<Variable> {
    match text {
        "z" => Ok(Variable::Z),
        "w" => Ok(Variable::W),
        other => Err(Error::invalid(format!("unknown variable '{other}' (expected z or w)"))),
    }
}

fn warn_dropped(dropped: &[semiwedge::clifford::MixedWord]) {
    for w in dropped {
        eprintln!(
            "warning: repeated letter in {}; the term is 0",
            semiwedge::textio::render_mixed_word(w)
        );
    }
}

fn verdict_code(v: &Verdict) -> ExitCode {
    match v {
        Verdict::Holds => ExitCode::SUCCESS,
        Verdict::Fails { .. } => ExitCode::from(1),
        Verdict::Inconclusive { .. } => ExitCode::from(2),
    }
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Holds => "holds".to_string(),
        Verdict::Fails { z, w, word, upper, lower } => format!(
            "fails at z^{z} w^{w}, basis {word:?}: {upper} does not surpass {lower}"
        ),
        Verdict::Inconclusive { z, w } => {
            format!("inconclusive: coefficient z^{z} w^{w} unknown")
        }
    }
}

fn run(cmd: Command) -> Result<ExitCode> {
    match cmd {
        Command::NormalForm { expr, form, order, common } => {
            let id: SemiringId = common.semiring.parse()?;
            let order = parse_order(&order)?;
            with_semiring!(id, S => {
                let form = parse_form::<S>(&form)?;
                let e: MixedElement<S> = parse_mixed(&expr)?;
                let nf = normal_form_element(&e, &form, order);
                if common.json {
                    println!("{}", json!({
                        "schema": JSON_SCHEMA,
                        "semiring": id.name(),
                        "input": expr,
                        "normal_form": mixed_json(&nf),
                    }));
                } else {
                    println!("{}", render_mixed(&nf));
                }
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::Wedge { expr, common } => {
            let id: SemiringId = common.semiring.parse()?;
            with_semiring!(id, S => {
                let e: MixedElement<S> = parse_mixed(&expr)?;
                let (v, dropped) = semiwedge::textio::mixed_to_wedge(&e)?;
                warn_dropped(&dropped);
                if common.json {
                    println!("{}", json!({
                        "schema": JSON_SCHEMA,
                        "semiring": id.name(),
                        "input": expr,
                        "element": wedge_json(&v),
                    }));
                } else {
                    println!("{}", render_wedge_oriented(&v));
                }
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::Contract { d, expr, form, common } => {
            let id: SemiringId = common.semiring.parse()?;
            with_semiring!(id, S => {
                let form = parse_form::<S>(&form)?;
                let e: MixedElement<S> = parse_mixed(&expr)?;
                let (v, dropped) = semiwedge::textio::mixed_to_wedge(&e)?;
                warn_dropped(&dropped);
                let out = contract_letter(d, &v, &form);
                if common.json {
                    println!("{}", json!({
                        "schema": JSON_SCHEMA,
                        "semiring": id.name(),
                        "input": expr,
                        "d": d,
                        "element": wedge_json(&out),
                    }));
                } else {
                    println!("{}", render_wedge_oriented(&out));
                }
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::Schubert { r, lambda, op, var, zmax, n, pieri: strip, common } => {
            let id: SemiringId = common.semiring.parse()?;
            let lam = parse_partition(&lambda)?;
            if let Some(i) = strip {
                let strips = pieri(&lam, i, r, n)?;
                if common.json {
                    println!("{}", json!({
                        "schema": JSON_SCHEMA,
                        "r": r,
                        "lambda": render_partition(&lam),
                        "degree": i,
                        "strips": strips.iter().map(render_partition).collect::<Vec<_>>(),
                    }));
                } else {
                    for mu in &strips {
                        println!("{}", render_partition(mu));
                    }
                }
                return Ok(ExitCode::SUCCESS);
            }
            with_semiring!(id, S => {
                let op = parse_op::<S>(&op)?;
                let var = parse_var(&var)?;
                let u = wedge_monomial::<S>(&exponent_tuple(r, &lam)?);
                let s = apply_op(&BiSeries::from_element(u), &op, var, zmax, n)?;
                if common.json {
                    println!("{}", json!({
                        "schema": JSON_SCHEMA,
                        "semiring": id.name(),
                        "r": r,
                        "lambda": render_partition(&lam),
                        "series": biseries_json(&s),
                    }));
                } else {
                    println!("{}", render_biseries(&s));
                }
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::ExpandMain { r, lambda, zmax, wmax, n, common } => {
            let id: SemiringId = common.semiring.parse()?;
            if r == 0 {
                return Err(Error::invalid("r must be at least 1"));
            }
            let lam = parse_partition(&lambda)?;
            let cfg = CheckConfig {
                semirings: vec![id],
                n,
                rmax: r,
                weight: lam.weight(),
                zmax,
                wmax,
                ..CheckConfig::default()
            };
            cfg.validate()?;
            let code;
            with_semiring!(id, S => {
                let (variant, note) = resolve_prefactor::<S>(&cfg)?;
                let budget = cfg.zmax + r as i32 + 1;
                let window = Window { zmax: cfg.zmax, wmin: -cfg.wmax };
                let mut lhs = generating_lhs::<S>(r, &lam, budget, n)?;
                let mut rhs = generating_rhs::<S>(r, &lam, variant, budget, n)?;
                let verdict = series_surpasses(&rhs, &lhs, &window);
                lhs.clip(Some(window.zmax), Some(window.wmin));
                rhs.clip(Some(window.zmax), Some(window.wmin));
                if common.json {
                    println!("{}", json!({
                        "schema": JSON_SCHEMA,
                        "semiring": id.name(),
                        "r": r,
                        "lambda": render_partition(&lam),
                        "prefactor": variant.describe(),
                        "lhs": biseries_json(&lhs),
                        "rhs": biseries_json(&rhs),
                        "verdict": verdict_text(&verdict),
                    }));
                } else {
                    println!("{note}");
                    println!("left side  x(z) ^ d(1/w) |x|^{r}_({lam}):");
                    println!("{}", render_biseries(&lhs));
                    println!("right side {} * two-row expansion:", variant.describe());
                    println!("{}", render_biseries(&rhs));
                    println!("verdict: {}", verdict_text(&verdict));
                }
                code = verdict_code(&verdict);
            });
            Ok(code)
        }
        Command::Verify {
            semirings,
            rmax,
            weight,
            zmax,
            wmax,
            n,
            checks,
            seed,
            samples,
            words,
            config,
            out,
            json,
        } => {
            let mut cfg = CheckConfig::default();
            if let Some(path) = &config {
                apply_config_file(&mut cfg, path)?;
            }
            if !semirings.is_empty() {
                cfg.semirings = parse_semirings(&semirings)?;
            }
            if let Some(v) = rmax {
                cfg.rmax = v;
            }
            if let Some(v) = weight {
                cfg.weight = v;
            }
            if let Some(v) = zmax {
                cfg.zmax = v;
            }
            if let Some(v) = wmax {
                cfg.wmax = v;
            }
            if n.is_some() {
                cfg.n = n;
            }
            if !checks.is_empty() {
                cfg.checks = Some(checks);
            }
            if let Some(v) = seed {
                cfg.seed = v;
            }
            if let Some(v) = samples {
                cfg.axiom_samples = v;
            }
            if let Some(v) = words {
                cfg.confluence_words = v;
            }
            cfg.validate()?;
            let report = semiwedge::verify::run_suite(&cfg)?;
            let rendered = if json { render_suite_json(&cfg, &report) } else { render_suite_text(&cfg, &report) };
            println!("{rendered}");
            if let Some(path) = out {
                fs::write(&path, rendered.as_bytes()).map_err(|e| {
                    Error::invalid(format!("cannot write {}: {e}", path.display()))
                })?;
            }
            Ok(ExitCode::from(report.exit_code() as u8))
        }
    }
}

fn config_line(cfg: &CheckConfig) -> String {
    let names: Vec<&str> = cfg.semirings.iter().map(|s| s.name()).collect();
    format!(
        "semirings={} rmax={} weight={} zmax={} wmax={} n={} seed={} samples={} words={}",
        names.join(","),
        cfg.rmax,
        cfg.weight,
        cfg.zmax,
        cfg.wmax,
        cfg.n.map_or("none".to_string(), |v| v.to_string()),
        cfg.seed,
        cfg.axiom_samples,
        cfg.confluence_words
    )
}

fn render_suite_text(cfg: &CheckConfig, report: &SuiteReport) -> String {
    format!("config: {}\n{}", config_line(cfg), report.render_text())
}

fn render_suite_json(cfg: &CheckConfig, report: &SuiteReport) -> String {
    let mut value = report.to_json();
    let names: Vec<&str> = cfg.semirings.iter().map(|s| s.name()).collect();
    value["config"] = json!({
        "semirings": names,
        "rmax": cfg.rmax,
        "weight": cfg.weight,
        "zmax": cfg.zmax,
        "wmax": cfg.wmax,
        "n": cfg.n,
        "checks": cfg.checks,
        "seed": cfg.seed,
        "samples": cfg.axiom_samples,
        "words": cfg.confluence_words,
    });
    value.to_string()
}

fn parse_semirings(names: &[String]) -> Result<Vec<SemiringId>> {
    names.iter().map(|s| s.parse()).collect()
}

/// Flat `key = value` file; `#` starts a comment.
fn apply_config_file(cfg: &mut CheckConfig, path: &PathBuf) -> Result<()> {
    let body = fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
    for (lineno, raw) in body.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::invalid(format!(
                "{}:{}: expected key = value",
                path.display(),
                lineno + 1
            )));
        };
        let key = key.trim();
        let value = value.trim();
        let bad = |what: &str| {
            Error::invalid(format!(
                "{}:{}: bad {what} value '{value}'",
                path.display(),
                lineno + 1
            ))
        };
        match key {
            "semiring" | "semirings" => {
                let names: Vec<String> = value.split(',').map(|s| s.trim().to_string()).collect();
                cfg.semirings = parse_semirings(&names)?;
            }
            "rmax" => cfg.rmax = value.parse().map_err(|_| bad("rmax"))?,
            "weight" => cfg.weight = value.parse().map_err(|_| bad("weight"))?,
            "zmax" => cfg.zmax = value.parse().map_err(|_| bad("zmax"))?,
            "wmax" => cfg.wmax = value.parse().map_err(|_| bad("wmax"))?,
            "n" => cfg.n = Some(value.parse().map_err(|_| bad("n"))?),
            "checks" => {
                cfg.checks = Some(value.split(',').map(|s| s.trim().to_string()).collect());
            }
            "seed" => cfg.seed = value.parse().map_err(|_| bad("seed"))?,
            "samples" => cfg.axiom_samples = value.parse().map_err(|_| bad("samples"))?,
            "words" => cfg.confluence_words = value.parse().map_err(|_| bad("words"))?,
            other => {
                return Err(Error::invalid(format!(
                    "{}:{}: unknown key '{other}'",
                    path.display(),
                    lineno + 1
                )));
            }
        }
    }
    Ok(())
}
