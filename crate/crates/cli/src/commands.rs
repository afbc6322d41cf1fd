use std::fs;
use std::path::{Path, PathBuf};

use involis::circle::{pgen, Family, GenFnRequest, DEFAULT_DIGIT_CAP};
use involis::depoisson::{bracket_involution, evaluation_points, Slack};
use involis::lax::{f_diamond_with, f_square_with, LaxRouteConfig, Route};
use involis::montecarlo::{pick, ks_distance, EmpiricalCdf, EnsembleKind, EnsembleSpec, Limit, MRule, Scaling, Statistic};
use involis::painleve2::{solve_hastings_mcleod, BvpConfig, Ensemble, PiiGrid};
use involis::tableaux::{exact_cdf_table, Side};
use involis::{Error, Result};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::args::*;
use crate::fmt::{round_sig, sig, steps};
use crate::grid_csv::{read_grid, write_grid};
use crate::manifest::RunManifest;
use crate::{mc, recipes, DIGIT_CAP_ENV};

/// Everything a subcommand produces before it is written out.
pub struct Product {
    pub subcommand: &'static str,
    pub parameters: Value,
    pub seed: Option<u64>,
    pub main: String,
    pub out: Option<PathBuf>,
    pub extra: Vec<(PathBuf, String)>,
}

pub fn execute(cmd: &Command) -> Result<Product> {
    match cmd {
        Command::SolvePii(a) => solve_pii(a),
        Command::TabulateTw(a) => tabulate_tw(a),
        Command::TabulateInterp(a) => tabulate_interp(a),
        Command::ExactCdf(a) => exact_cdf(a),
        Command::Pgen(a) => pgen_cmd(a),
        Command::Depoisson(a) => depoisson(a),
        Command::Mc(a) => mc_cmd(a),
        Command::Reproduce(a) => reproduce(a),
    }
}

/// Writes the main output (or prints it) and the manifest.
pub fn emit(p: &Product) -> std::io::Result<()> {
    let mut outputs = Vec::new();
    match &p.out {
        Some(path) => {
            fs::write(path, &p.main)?;
            outputs.push(path.display().to_string());
        }
        None => print!("{}", p.main),
    }
    for (path, content) in &p.extra {
        fs::write(path, content)?;
        outputs.push(path.display().to_string());
    }
    let manifest = RunManifest::new(p.subcommand, p.parameters.clone(), p.seed, outputs).to_json();
    match &p.out {
        Some(path) => fs::write(manifest_path(path), manifest),
        None => {
            eprint!("{manifest}");
            Ok(())
        }
    }
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

fn params<T: serde::Serialize>(a: &T) -> Value {
    serde_json::to_value(a).expect("arguments serialize")
}

fn json_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json serializes") + "\n"
}

pub fn load_grid(src: &GridSource) -> Result<PiiGrid> {
    match &src.grid {
        Some(path) => {
            let f = fs::File::open(path).map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))?;
            read_grid(f, BvpConfig::default().newton_tolerance)
        }
        None => solve_hastings_mcleod(&BvpConfig::default()),
    }
}

/// Digit cap from the environment, falling back to the library default.
pub fn digit_cap() -> Result<u32> {
    match std::env::var(DIGIT_CAP_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| Error::InvalidConfig(format!("{DIGIT_CAP_ENV}={s:?} is not a digit count"))),
        Err(_) => Ok(DEFAULT_DIGIT_CAP),
    }
}

fn solve_pii(a: &SolvePiiArgs) -> Result<Product> {
    let cfg = BvpConfig {
        x_left: a.x_left,
        x_right: a.x_right,
        node_count: a.nodes,
        newton_tolerance: a.newton_tol,
        max_newton_iters: a.max_iters,
    };
    let grid = solve_hastings_mcleod(&cfg)?;
    let mut buf = Vec::new();
    write_grid(&grid, &mut buf).map_err(|e| Error::InvalidConfig(e.to_string()))?;
    Ok(Product {
        subcommand: "solve-pii",
        parameters: params(a),
        seed: None,
        main: String::from_utf8(buf).expect("csv is utf-8"),
        out: a.output.out.clone(),
        extra: Vec::new(),
    })
}

fn tabulate_tw(a: &TabulateTwArgs) -> Result<Product> {
    let ens = Ensemble::from_beta(a.ensemble)?;
    let grid = load_grid(&a.grid)?;
    let mut s = String::from("x,cdf,density\n");
    for x in steps(a.xmin, a.xmax, a.step) {
        s += &format!("{},{},{}\n", sig(x, 12), sig(grid.eval_tw(x, ens), 12), sig(grid.tw_density(x, ens), 12));
    }
    Ok(Product { subcommand: "tabulate-tw", parameters: params(a), seed: None, main: s, out: a.output.out.clone(), extra: Vec::new() })
}

fn parse_route(s: &str) -> Result<Route> {
    match s {
        "w" => Ok(Route::W),
        "x" => Ok(Route::X),
        "both" => Ok(Route::Both),
        _ => Err(Error::InvalidArgument(format!("route must be w, x or both, got {s:?}"))),
    }
}

fn tabulate_interp(a: &TabulateInterpArgs) -> Result<Product> {
    let cfg = LaxRouteConfig { route: parse_route(&a.route)?, ..LaxRouteConfig::default() };
    let grid = load_grid(&a.grid)?;
    let mut s = String::from("x,w,F_square,F_diamond\n");
    for &w in &a.w {
        for x in steps(a.xmin, a.xmax, a.step) {
            let fs = f_square_with(&grid, x, w, &cfg)?;
            let fd = f_diamond_with(&grid, x, w, &cfg)?;
            s += &format!("{},{},{},{}\n", sig(x, 12), sig(w, 12), sig(fs, 12), sig(fd, 12));
        }
    }
    Ok(Product { subcommand: "tabulate-interp", parameters: params(a), seed: None, main: s, out: a.output.out.clone(), extra: Vec::new() })
}

fn exact_cdf(a: &ExactCdfArgs) -> Result<Product> {
    let (side, k, which) = match (a.row, a.col) {
        (Some(k), None) => (Side::Row, k, "row"),
        (None, Some(k)) => (Side::Column, k, "column"),
        _ => return Err(Error::InvalidArgument("give exactly one of --row and --col".into())),
    };
    let table = exact_cdf_table(a.n, a.m, side, k)?;
    let size = 2 * a.n + a.m;
    let cdf: Vec<Value> = (0..=size)
        .map(|l| {
            let p = table.at(l);
            json!({"l": l, "p_num": p.numer().to_string(), "p_den": p.denom().to_string()})
        })
        .collect();
    let v = json!({"n": a.n, "m": a.m, "which": which, "k": k, "cdf": cdf});
    Ok(Product { subcommand: "exact-cdf", parameters: params(a), seed: None, main: json_text(&v), out: a.output.out.clone(), extra: Vec::new() })
}

pub fn parse_family(s: &str) -> Result<Family> {
    Family::parse(s).ok_or_else(|| Error::InvalidArgument(format!("unknown family {s:?}")))
}

fn pgen_cmd(a: &PgenArgs) -> Result<Product> {
    let mut req = GenFnRequest::new(parse_family(&a.family)?, a.l, a.t, a.alpha, a.beta);
    req.digits = a.digits;
    req.truncation_j_max = a.jmax;
    req.digit_cap = digit_cap()?;
    let v = pgen(&req)?;
    let out = json!({
        "value": v.value,
        "truncation_j_max": v.truncation_j_max,
        "certified_tail_bound": v.certified_tail_bound,
        "digits": v.digits,
    });
    Ok(Product { subcommand: "pgen", parameters: params(a), seed: None, main: json_text(&out), out: a.output.out.clone(), extra: Vec::new() })
}

pub fn parse_slack(s: &str) -> Result<Slack> {
    match s {
        "none" => Ok(Slack::None),
        "tail" => Ok(Slack::PoissonTail),
        _ => s
            .parse::<f64>()
            .ok()
            .filter(|c| c.is_finite() && *c >= 0.0)
            .map(Slack::Constant)
            .ok_or_else(|| Error::InvalidArgument(format!("slack must be none, tail or a constant C >= 0, got {s:?}"))),
    }
}

fn depoisson(a: &DepoissonArgs) -> Result<Product> {
    let (family, side) = match a.family.as_str() {
        "square" => (Family::Square, Side::Row),
        "diamond" => (Family::Diamond, Side::Column),
        f => return Err(Error::InvalidArgument(format!("depoisson supports square and diamond, got {f:?}"))),
    };
    let slack = parse_slack(&a.slack)?;
    let exact = if a.with_exact { Some(exact_cdf_table(a.n, a.m, side, 1)?) } else { None };
    let (mu1, nu1) = evaluation_points(a.m, a.d)?;
    let (mu2, nu2) = evaluation_points(a.n, a.d)?;
    let mut records = Vec::new();
    for &l in &a.l {
        let b = bracket_involution(family, l, a.n, a.m, a.d, slack)?;
        let mut r = json!({
            "family": family.name(),
            "n": a.n,
            "m": a.m,
            "l": l,
            "d": a.d,
            "lower": b.lower,
            "upper": b.upper,
            "slack_note": b.slack_note,
            "lambda_lower": [mu1, mu2],
            "lambda_upper": [nu1, nu2],
        });
        if let Some(t) = &exact {
            let p = t.at(l);
            r["exact"] = json!(p.to_f64().unwrap_or(f64::NAN));
            r["contained"] = json!(b.lower <= p.to_f64().unwrap_or(f64::NAN) && p.to_f64().unwrap_or(f64::NAN) <= b.upper);
        }
        records.push(r);
    }
    let v = json!({ "records": records });
    Ok(Product { subcommand: "depoisson", parameters: params(a), seed: None, main: json_text(&v), out: a.output.out.clone(), extra: Vec::new() })
}

pub fn parse_rule(s: &str) -> Result<MRule> {
    let bad = || Error::InvalidArgument(format!("expected a count, alpha:<a> or w:<w>, got {s:?}"));
    if let Some(v) = s.strip_prefix("alpha:") {
        return v.parse().map(MRule::Alpha).map_err(|_| bad());
    }
    if let Some(v) = s.strip_prefix("w:") {
        return v.parse().map(MRule::W).map_err(|_| bad());
    }
    s.parse().map(MRule::Explicit).map_err(|_| bad())
}

pub fn parse_side(s: &str) -> Result<Side> {
    match s {
        "row" => Ok(Side::Row),
        "column" | "col" => Ok(Side::Column),
        _ => Err(Error::InvalidArgument(format!("side must be row or column, got {s:?}"))),
    }
}

pub fn parse_scaling(s: &str) -> Result<Scaling> {
    match s {
        "edge" => Ok(Scaling::Edge),
        "gaussian" => Ok(Scaling::Gaussian),
        "gaussian-size" => Ok(Scaling::GaussianBySize),
        _ => Err(Error::InvalidArgument(format!("scaling must be edge, gaussian or gaussian-size, got {s:?}"))),
    }
}

pub fn parse_stat(s: &str) -> Result<Statistic> {
    match s {
        "chi1" => Ok(Statistic::Chi1),
        "chi2" => Ok(Statistic::Chi2),
        _ => Err(Error::InvalidArgument(format!("stat must be chi1 or chi2, got {s:?}"))),
    }
}

/// Summary of a run against a limit law, as emitted by `mc` and `reproduce`.
pub fn summarize(spec: &EnsembleSpec, statistic: Statistic, limit: Limit, samples: &[involis::montecarlo::ScaledSample], grid: &PiiGrid) -> Result<Value> {
    let ecdf = EmpiricalCdf::new(samples.iter().map(|s| pick(s, statistic)).collect());
    let mut err = None;
    let ks = ks_distance(&ecdf, |x| match limit.cdf(grid, x) {
        Ok(v) => v,
        Err(e) => {
            err.get_or_insert(e);
            f64::NAN
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let (lm, lv) = limit.mean_var(grid)?;
    let r = spec.resolve()?;
    Ok(json!({
        "ensemble": spec.kind.name(),
        "n": r.n,
        "m": r.m,
        "m_plus": r.m_plus,
        "m_minus": r.m_minus,
        "samples": samples.len(),
        "seed": spec.seed,
        "statistic": match statistic { Statistic::Chi1 => "chi1", Statistic::Chi2 => "chi2" },
        "formula": samples.first().map(|s| s.formula).unwrap_or(""),
        "ks": round_sig(ks, 12),
        "mean": round_sig(ecdf.mean(), 12),
        "var": round_sig(ecdf.variance(), 12),
        "limit_mean": round_sig(lm, 12),
        "limit_var": round_sig(lv, 12),
    }))
}

pub fn samples_csv(samples: &[involis::montecarlo::ScaledSample]) -> String {
    let mut s = String::from("lambda1,lambda2,chi1,chi2\n");
    for x in samples {
        s += &format!("{},{},{},{}\n", x.lambda1, x.lambda2, sig(x.chi1, 12), sig(x.chi2, 12));
    }
    s
}

fn mc_cmd(a: &McArgs) -> Result<Product> {
    let kind = EnsembleKind::parse(&a.ensemble)?;
    let m_rule = match (a.m, a.alpha, a.w) {
        (Some(m), _, _) => MRule::Explicit(m),
        (_, Some(al), _) => MRule::Alpha(al),
        (_, _, Some(w)) => MRule::W(w),
        _ => MRule::Explicit(0),
    };
    let spec = EnsembleSpec {
        kind,
        n: a.n,
        m_rule,
        m_plus_rule: parse_rule(&a.mplus)?,
        m_minus_rule: parse_rule(&a.mminus)?,
        side: parse_side(&a.side)?,
        scaling: parse_scaling(&a.scaling)?,
        seed: a.seed,
    };
    let statistic = parse_stat(&a.stat)?;
    let limit = Limit::parse(&a.limit)?;
    let grid = load_grid(&a.grid)?;
    let samples = mc::run_parallel(&spec, a.samples, a.threads)?;
    let summary = summarize(&spec, statistic, limit, &samples, &grid)?;
    let extra = a.samples_out.iter().map(|p| (p.clone(), samples_csv(&samples))).collect();
    Ok(Product { subcommand: "mc", parameters: params(a), seed: Some(a.seed), main: json_text(&summary), out: a.output.out.clone(), extra })
}

fn reproduce(a: &ReproduceArgs) -> Result<Product> {
    let grid = load_grid(&a.grid)?;
    let report = recipes::run(a, &grid)?;
    Ok(Product { subcommand: "reproduce", parameters: params(a), seed: Some(a.seed), main: json_text(&report), out: a.output.out.clone(), extra: Vec::new() })
}
