use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use log::info;
use serde_json::{json, Value};

use necklace_core::avoidance::{backtrack_search_ordered, word_avoids, AvoidanceRun};
use necklace_core::bounds::{d_closed_form, d_value, f_bound};
use necklace_core::gadgets::{
    certify_min_lines_with_budget, compose_far_apart, search_gadget, CertifyOutcome,
    DEFAULT_SPLITTING_BUDGET,
};
use necklace_core::measures::{
    build_construction, check_no_fair_on_grid_with_budget, MeasureOutcome, DEFAULT_EQUATION_BUDGET,
};
use necklace_core::solve1d::{exists_fair_with_cuts, min_cuts_fair};
use necklace_core::solvend::{
    exists_fair_budgets, exists_fair_total, min_total_lines, Input, LinesSolution,
};
use necklace_core::stringing::split_via_stringing;
use necklace_core::{is_fair, ColorId, Error, Fairness, NecklaceGrid, Outcome, PointSet};

const FOUND: u8 = 0;
const USAGE: u8 = 1;
const NONE: u8 = 2;
const RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "necklace",
    version,
    about = "Exact fair splitting of discrete necklaces"
)]
struct Cli {
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true, env = "NECKLACE_THREADS")]
    threads: Option<usize>,
    /// Seed recorded in the run metadata; every search here is deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Replay every emitted solution or certificate before printing it.
    #[arg(long, global = true)]
    verify: bool,
    /// Write run metadata (timing, arguments) to this file.
    #[arg(long, global = true)]
    meta: Option<PathBuf>,
    /// More log output on stderr (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fair splitting of a 1-D necklace.
    Solve1d {
        /// JSON necklace file, inline JSON, or a word over a..z
        #[arg(long)]
        input: String,
        #[arg(long, conflicts_with = "min")]
        max_cuts: Option<usize>,
        #[arg(long)]
        min: bool,
    },
    /// Fair splitting of a d-dimensional necklace or point set.
    Solvend {
        #[arg(long)]
        input: String,
        /// exact number of cuts per axis, comma separated
        #[arg(long, value_delimiter = ',', conflicts_with = "min_total")]
        budgets: Option<Vec<usize>>,
        #[arg(long)]
        min_total: bool,
    },
    /// Split a 2-D necklace through its boustrophedon string.
    String2d {
        #[arg(long)]
        input: String,
    },
    /// Certify that a point set needs more than `max-lines` lines.
    Certify {
        #[arg(long)]
        points: String,
        #[arg(long)]
        max_lines: usize,
        #[arg(long, default_value_t = DEFAULT_SPLITTING_BUDGET)]
        budget: u128,
    },
    /// Search for a single-colour point set that needs `target` lines.
    GadgetSearch {
        #[arg(long = "box")]
        box_bound: usize,
        #[arg(long = "points")]
        max_points: usize,
        #[arg(long)]
        target: usize,
    },
    /// Place copies of a gadget far apart in distinct colours.
    Compose {
        #[arg(long)]
        gadget: String,
        #[arg(long)]
        k: usize,
    },
    /// Colourings with no small fair splittings of intervals or squares.
    Avoid(AvoidArgs),
    /// Table of the closed-form colour bounds.
    Bounds {
        #[arg(long)]
        d_max: u32,
        #[arg(long)]
        t_max: u32,
    },
    /// Build the symbolic colouring and check its fairness equations.
    Construct {
        #[arg(long)]
        d: usize,
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = DEFAULT_EQUATION_BUDGET)]
        budget: u128,
    },
}

#[derive(Args)]
struct AvoidArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    t: usize,
    #[arg(long)]
    d: usize,
    /// target length (1-D) or patch side (2-D)
    #[arg(long)]
    limit: Option<usize>,
    /// search the whole tree without a target length
    #[arg(long, conflicts_with = "limit")]
    exhaust: bool,
    /// order in which colours first appear, comma separated
    #[arg(long, value_delimiter = ',')]
    order: Option<Vec<u16>>,
}

struct Report {
    code: u8,
    body: Value,
}

impl Report {
    fn new(code: u8, status: &str, mut body: Value) -> Self {
        body["status"] = json!(status);
        Report { code, body }
    }
}

fn read_source(arg: &str) -> anyhow::Result<String> {
    let path = Path::new(arg);
    if path.is_file() {
        std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))
    } else {
        Ok(arg.to_string())
    }
}

fn read_necklace(arg: &str) -> anyhow::Result<NecklaceGrid> {
    let text = read_source(arg)?;
    let text = text.trim();
    if text.starts_with('{') {
        Ok(serde_json::from_str(text).context("parsing necklace JSON")?)
    } else {
        Ok(NecklaceGrid::from_word(text)?)
    }
}

fn read_points(arg: &str) -> anyhow::Result<PointSet> {
    let text = read_source(arg)?;
    let value: Value = serde_json::from_str(text.trim()).context("parsing point set JSON")?;
    let value = value
        .get("points")
        .filter(|p| p.is_object())
        .cloned()
        .unwrap_or(value);
    serde_json::from_value(value).context("parsing point set JSON")
}

fn check(verify: bool, ok: bool, what: &str) -> anyhow::Result<Option<bool>> {
    if !verify {
        return Ok(None);
    }
    if !ok {
        bail!("verification failed: {what}");
    }
    info!("verified {what}");
    Ok(Some(true))
}

fn with_verified(mut body: Value, verified: Option<bool>) -> Value {
    if let Some(v) = verified {
        body["verified"] = json!(v);
    }
    body
}

fn odd_report(odd: &[ColorId]) -> Report {
    Report::new(NONE, "impossible", json!({ "odd_colors": odd }))
}

fn solve1d(input: &str, max_cuts: Option<usize>, verify: bool) -> anyhow::Result<Report> {
    let grid = read_necklace(input)?;
    let out = match max_cuts {
        Some(t) => exists_fair_with_cuts(&grid, t)?,
        None => min_cuts_fair(&grid)?,
    };
    Ok(match out {
        Outcome::Found(sol) => {
            let fair = is_fair(&grid, &sol.cuts, &sol.assignment)? == Fairness::Fair;
            let v = check(verify, fair, "fair splitting")?;
            Report::new(FOUND, "found", with_verified(json!({ "solution": sol }), v))
        }
        Outcome::NotFound => Report::new(NONE, "none", json!({ "max_cuts": max_cuts })),
        Outcome::OddCounts(odd) => odd_report(&odd),
    })
}

fn lines_report(
    out: Outcome<LinesSolution>,
    budgets: Option<Vec<usize>>,
    verify: bool,
    fair: impl Fn(&LinesSolution) -> necklace_core::Result<Fairness>,
) -> anyhow::Result<Report> {
    Ok(match out {
        Outcome::Found(sol) => {
            let v = check(verify, fair(&sol)? == Fairness::Fair, "fair splitting")?;
            Report::new(FOUND, "found", with_verified(json!({ "solution": sol }), v))
        }
        Outcome::NotFound => Report::new(NONE, "none", json!({ "budgets": budgets })),
        Outcome::OddCounts(odd) => odd_report(&odd),
    })
}

fn solvend(input: &str, budgets: Option<Vec<usize>>, verify: bool) -> anyhow::Result<Report> {
    let text = read_source(input)?;
    let is_points = serde_json::from_str::<Value>(text.trim())
        .ok()
        .is_some_and(|v| v.get("points").is_some());
    if is_points {
        if budgets.is_some() {
            bail!("--budgets applies to necklaces, not point sets");
        }
        let ps = read_points(&text)?;
        let out = min_total_lines(Input::Points(&ps))?;
        lines_report(out, budgets, verify, |s| {
            ps.is_fair(&s.splitting, &s.assignment)
        })
    } else {
        let grid = read_necklace(&text)?;
        let out = match &budgets {
            Some(b) => exists_fair_budgets(&grid, b)?,
            None => exists_fair_total(&grid, usize::MAX),
        };
        lines_report(out, budgets, verify, |s| {
            is_fair(&grid, &s.splitting, &s.assignment)
        })
    }
}

fn string2d(input: &str, verify: bool) -> anyhow::Result<Report> {
    let grid = read_necklace(input)?;
    Ok(match split_via_stringing(&grid)? {
        Outcome::Found(r) => {
            let fair = is_fair(&grid, &r.splitting, &r.assignment)? == Fairness::Fair;
            let v = check(verify, fair, "lifted splitting")?;
            let body = json!({
                "snake": r.snake,
                "cuts1d": r.snake_solution.cuts,
                "assignment1d": r.snake_solution.assignment,
                "lines": r.splitting,
                "assignment": r.assignment,
                "lines_used": r.lines_used,
                "bound_3k": 3 * grid.palette(),
            });
            Report::new(FOUND, "found", with_verified(body, v))
        }
        Outcome::NotFound => Report::new(NONE, "none", json!({})),
        Outcome::OddCounts(odd) => odd_report(&odd),
    })
}

fn certify(points: &str, max_lines: usize, budget: u128, verify: bool) -> anyhow::Result<Report> {
    let ps = read_points(points)?;
    Ok(
        match certify_min_lines_with_budget(&ps, max_lines, budget)? {
            CertifyOutcome::Certificate(cert) => {
                let v = if verify {
                    check(true, cert.replay(&ps)?, "certificate replay")?
                } else {
                    None
                };
                Report::new(
                    NONE,
                    "certified",
                    with_verified(json!({ "certificate": cert }), v),
                )
            }
            CertifyOutcome::Counterexample(sol) => {
                let fair = ps.is_fair(&sol.splitting, &sol.assignment)? == Fairness::Fair;
                let v = check(verify, fair, "counterexample")?;
                Report::new(
                    FOUND,
                    "counterexample",
                    with_verified(json!({ "solution": sol }), v),
                )
            }
        },
    )
}

fn gadget_search(
    box_bound: usize,
    max_points: usize,
    target: usize,
    verify: bool,
) -> anyhow::Result<Report> {
    Ok(match search_gadget(box_bound, max_points, target)? {
        Some(g) => {
            let v = if verify {
                check(true, g.certificate.replay(&g.points)?, "gadget certificate")?
            } else {
                None
            };
            let body = json!({
                "points": g.points,
                "certificate": g.certificate,
                "certified_candidates": g.certified_candidates,
                "min_lines": target,
            });
            Report::new(FOUND, "found", with_verified(body, v))
        }
        None => Report::new(
            NONE,
            "exhausted",
            json!({ "box": box_bound, "max_points": max_points, "target": target }),
        ),
    })
}

fn compose(gadget: &str, k: usize) -> anyhow::Result<Report> {
    let g = read_points(gadget)?;
    let composed = compose_far_apart(&g, k)?;
    let separated = necklace_core::gadgets::colors_separated(&composed);
    Ok(Report::new(
        FOUND,
        "composed",
        json!({ "points": composed, "k": k, "colors_separated": separated }),
    ))
}

fn patch_avoids(patch: &[Vec<Option<ColorId>>], k: usize, t: usize) -> bool {
    let side = patch.len();
    for r in 0..side {
        for c in 0..side {
            for s in 2..=side - r.max(c) {
                let rows: Option<Vec<Vec<ColorId>>> = (r..r + s)
                    .map(|rr| (c..c + s).map(|cc| patch[rr][cc]).collect())
                    .collect();
                let Some(rows) = rows else { continue };
                let Ok(grid) = NecklaceGrid::from_rows(k, &rows) else {
                    return false;
                };
                if exists_fair_total(&grid, t).is_found() {
                    return false;
                }
            }
        }
    }
    true
}

fn avoid(a: &AvoidArgs, verify: bool) -> anyhow::Result<Report> {
    if a.t == 0 {
        bail!("--t must be at least 1");
    }
    if !a.exhaust && a.limit.is_none() {
        bail!("give --limit or --exhaust");
    }
    let order: Vec<ColorId> = match &a.order {
        Some(o) => o.iter().map(|&c| ColorId(c)).collect(),
        None => (0..a.k as u16).map(ColorId).collect(),
    };
    let run: AvoidanceRun = backtrack_search_ordered(a.k, a.t, a.d, a.limit, &order)?;
    let ok = match &run.patch {
        Some(p) => patch_avoids(p, a.k, a.t),
        None => word_avoids(&run.witness, a.k, a.t),
    };
    let v = check(verify, ok, "avoidance witness")?;
    let (code, status) = if run.exhausted {
        (NONE, "exhausted")
    } else {
        (FOUND, "reached")
    };
    Ok(Report::new(
        code,
        status,
        with_verified(json!({ "run": run }), v),
    ))
}

fn bounds(d_max: u32, t_max: u32) -> anyhow::Result<Report> {
    let mut rows = Vec::new();
    for d in 1..=d_max {
        for t in 0..=t_max {
            let f = f_bound(d, t).ok();
            let dv = d_value(d, t).ok();
            let dc = d_closed_form(d, t).ok();
            rows.push(json!({
                "d": d,
                "t": t,
                "f_bound": f,
                "d_value": dv,
                "d_closed_form": dc,
                "agree": dv.is_some() && dv == dc,
            }));
        }
    }
    let all = rows.iter().all(|r| r["agree"] == json!(true));
    Ok(Report::new(
        FOUND,
        "ok",
        json!({ "rows": rows, "all_agree": all }),
    ))
}

fn construct(d: usize, n: usize, k: usize, t: usize, budget: u128) -> anyhow::Result<Report> {
    let col = build_construction(d, t, n, k)?;
    let summary = json!({
        "d": d,
        "t": t,
        "n": n,
        "k": k,
        "cells": col.cells(),
        "delta": col.delta.to_string(),
        "white": col.white,
        "background": col.background,
        "color_totals": col.color_totals().iter().map(|q| q.render(d)).collect::<Vec<_>>(),
    });
    Ok(match check_no_fair_on_grid_with_budget(&col, t, budget)? {
        MeasureOutcome::Certificate(cert) => Report::new(
            NONE,
            "certified",
            json!({ "construction": summary, "certificate": cert }),
        ),
        MeasureOutcome::Counterexample { cuts, labels } => Report::new(
            FOUND,
            "counterexample",
            json!({ "construction": summary, "cuts": cuts, "labels": labels }),
        ),
    })
}

fn dispatch(cli: &Cli) -> anyhow::Result<Report> {
    let verify = cli.verify;
    match &cli.command {
        Command::Solve1d {
            input,
            max_cuts,
            min,
        } => {
            if max_cuts.is_none() && !min {
                bail!("give --max-cuts or --min");
            }
            solve1d(input, *max_cuts, verify)
        }
        Command::Solvend {
            input,
            budgets,
            min_total,
        } => {
            if budgets.is_none() && !min_total {
                bail!("give --budgets or --min-total");
            }
            solvend(input, budgets.clone(), verify)
        }
        Command::String2d { input } => string2d(input, verify),
        Command::Certify {
            points,
            max_lines,
            budget,
        } => certify(points, *max_lines, *budget, verify),
        Command::GadgetSearch {
            box_bound,
            max_points,
            target,
        } => gadget_search(*box_bound, *max_points, *target, verify),
        Command::Compose { gadget, k } => compose(gadget, *k),
        Command::Avoid(a) => avoid(a, verify),
        Command::Bounds { d_max, t_max } => bounds(*d_max, *t_max),
        Command::Construct { d, n, k, t, budget } => construct(*d, *n, *k, *t, *budget),
    }
}

fn write_meta(path: &Path, cli: &Cli, code: u8, started: Instant) -> anyhow::Result<()> {
    let meta = json!({
        "argv": std::env::args().collect::<Vec<_>>(),
        "version": env!("CARGO_PKG_VERSION"),
        "threads": rayon::current_num_threads(),
        "seed": cli.seed,
        "exit_code": code,
        "elapsed_ms": started.elapsed().as_secs_f64() * 1e3,
    });
    std::fs::write(path, serde_json::to_string_pretty(&meta)? + "\n")
        .with_context(|| format!("writing {}", path.display()))
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(anyhow!("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    let started = Instant::now();
    let report = match dispatch(cli) {
        Ok(r) => r,
        Err(e) => match e.downcast_ref::<Error>() {
            Some(err @ Error::ResourceExceeded { .. }) => Report::new(
                RESOURCE,
                "resource_exceeded",
                json!({ "error": err.to_string() }),
            ),
            _ => return Err(e),
        },
    };
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{}", serde_json::to_string_pretty(&report.body)?) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
        r => r?,
    }
    if let Some(path) = &cli.meta {
        write_meta(path, cli, report.code, started)?;
    }
    info!("done in {:.3}s", started.elapsed().as_secs_f64());
    Ok(report.code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { FOUND };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .target(env_logger::Target::Stderr)
        .init();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE)
        }
    }
}
