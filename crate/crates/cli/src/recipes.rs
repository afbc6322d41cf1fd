//! One reproduction recipe per limit theorem, each a thin wrapper over a
//! Monte Carlo experiment or a generating-function evaluation.

use involis::circle::{gaussian_poisson_check, normal_cdf, poissonized_limit_check, LimitCase};
use involis::lax::f_square;
use involis::montecarlo::{EnsembleKind, EnsembleSpec, Limit, MRule, Scaling, Statistic};
use involis::painleve2::{Ensemble, PiiGrid};
use involis::tableaux::Side;
use involis::{Error, Result};
use serde_json::{json, Value};

use crate::args::ReproduceArgs;
use crate::commands::summarize;
use crate::fmt::round_sig;
use crate::mc::run_parallel;

pub const RECIPES: [&str; 10] = [
    "first-row",
    "crossover",
    "moments",
    "uniform",
    "second-row",
    "uniform-second-row",
    "poissonized",
    "poissonized-crossover",
    "gaussian-poissonized",
    "gaussian",
];

fn degenerate(what: &str) -> Error {
    Error::UnsupportedScaling(format!("{what} with alpha > 1 degenerates under edge scaling; use the gaussian recipe"))
}

/// Experiment and limit for the first row at fixed α/β.
fn first_row(a: &ReproduceArgs) -> Result<(EnsembleSpec, Limit)> {
    Ok(match a.family.as_str() {
        "square" => {
            let limit = if a.alpha < 1.0 {
                Limit::F4
            } else if a.alpha == 1.0 {
                Limit::F1
            } else {
                return Err(degenerate("square"));
            };
            (EnsembleSpec::involution(a.n, MRule::Alpha(a.alpha), a.seed), limit)
        }
        "diamond" => (EnsembleSpec::involution(a.n, MRule::Alpha(a.beta), a.seed).with_side(Side::Column), Limit::F1),
        "signed" => {
            let limit = if a.alpha < 1.0 {
                Limit::F2
            } else if a.alpha == 1.0 {
                Limit::F1Squared
            } else {
                return Err(degenerate("signed"));
            };
            (EnsembleSpec::signed(a.n, MRule::Alpha(a.alpha), MRule::Alpha(a.beta), a.seed), limit)
        }
        f => return Err(Error::InvalidArgument(format!("family must be square, diamond or signed, got {f:?}"))),
    })
}

fn experiment(a: &ReproduceArgs, grid: &PiiGrid, spec: EnsembleSpec, stat: Statistic, limit: Limit) -> Result<Value> {
    let samples = run_parallel(&spec, a.samples, a.threads)?;
    let mut v = summarize(&spec, stat, limit, &samples, grid)?;
    v["limit"] = json!(format!("{limit:?}"));
    Ok(v)
}

pub fn run(a: &ReproduceArgs, grid: &PiiGrid) -> Result<Value> {
    let mut report = match a.recipe.as_str() {
        "first-row" | "moments" => {
            let (spec, limit) = first_row(a)?;
            experiment(a, grid, spec, Statistic::Chi1, limit)?
        }
        "crossover" => {
            let (spec, limit) = match a.family.as_str() {
                "square" => (EnsembleSpec::involution(a.n, MRule::W(a.w), a.seed), Limit::Square(a.w)),
                "signed" => (EnsembleSpec::signed(a.n, MRule::W(a.w), MRule::Alpha(a.beta), a.seed), Limit::Diamond(a.w)),
                f => return Err(Error::InvalidArgument(format!("crossover takes family square or signed, got {f:?}"))),
            };
            experiment(a, grid, spec, Statistic::Chi1, limit)?
        }
        "uniform" => {
            let (spec, limit) = if a.signed {
                (EnsembleSpec::new(EnsembleKind::UniformSignedInvolution, a.n, a.seed), Limit::F1Squared)
            } else {
                (EnsembleSpec::new(EnsembleKind::UniformInvolution, a.n, a.seed), Limit::F1)
            };
            experiment(a, grid, spec, Statistic::Chi1, limit)?
        }
        "second-row" => {
            let (spec, limit) = match a.family.as_str() {
                "square" => (EnsembleSpec::involution(a.n, MRule::Alpha(a.alpha), a.seed), Limit::F4),
                "diamond" => (EnsembleSpec::involution(a.n, MRule::Alpha(a.beta), a.seed).with_side(Side::Column), Limit::F4),
                "signed" => (EnsembleSpec::signed(a.n, MRule::Alpha(a.alpha), MRule::Alpha(a.beta), a.seed), Limit::F2),
                f => return Err(Error::InvalidArgument(format!("family must be square, diamond or signed, got {f:?}"))),
            };
            experiment(a, grid, spec, Statistic::Chi2, limit)?
        }
        "uniform-second-row" => {
            let (spec, limit) = if a.signed {
                (EnsembleSpec::new(EnsembleKind::UniformSignedInvolution, a.n, a.seed), Limit::F2)
            } else {
                (EnsembleSpec::new(EnsembleKind::UniformInvolution, a.n, a.seed), Limit::F4)
            };
            experiment(a, grid, spec, Statistic::Chi2, limit)?
        }
        "poissonized" => {
            let (case, target) = match a.family.as_str() {
                "square" if a.alpha < 1.0 => (LimitCase::Square { alpha: a.alpha }, grid.eval_tw(a.x, Ensemble::Gse)),
                "square" if a.alpha == 1.0 => (LimitCase::Square { alpha: 1.0 }, grid.eval_tw(a.x, Ensemble::Goe)),
                "square" => (LimitCase::Square { alpha: a.alpha }, 0.0),
                "diamond" => (LimitCase::Diamond { beta: a.beta }, grid.eval_tw(a.x, Ensemble::Goe)),
                "signed" if a.alpha < 1.0 => (LimitCase::Signed { alpha: a.alpha, beta: a.beta }, grid.eval_tw(a.x, Ensemble::Gue)),
                "signed" if a.alpha == 1.0 => (LimitCase::Signed { alpha: 1.0, beta: a.beta }, grid.eval_tw(a.x, Ensemble::Goe).powi(2)),
                "signed" => (LimitCase::Signed { alpha: a.alpha, beta: a.beta }, 0.0),
                f => return Err(Error::InvalidArgument(format!("family must be square, diamond or signed, got {f:?}"))),
            };
            limit_report(case, a, target)?
        }
        "poissonized-crossover" => {
            let target = f_square(grid, a.x, a.w)?;
            limit_report(LimitCase::SquareW { w: a.w }, a, target)?
        }
        "gaussian-poissonized" => {
            if a.alpha <= 1.0 {
                return Err(Error::InvalidArgument("gaussian-poissonized needs --alpha > 1".into()));
            }
            let diff = gaussian_poisson_check(a.alpha, a.t, a.x)?;
            json!({
                "alpha": a.alpha,
                "t": a.t,
                "x": a.x,
                "normal_cdf": round_sig(normal_cdf(a.x), 12),
                "value": round_sig(diff + normal_cdf(a.x), 12),
                "distance": round_sig(diff.abs(), 12),
            })
        }
        "gaussian" => {
            if a.alpha <= 1.0 {
                return Err(Error::InvalidArgument("gaussian needs --alpha > 1".into()));
            }
            let n = (a.t * a.t / 2.0).floor() as usize;
            let spec = EnsembleSpec::involution(n, MRule::Alpha(a.alpha), a.seed).with_scaling(Scaling::Gaussian);
            experiment(a, grid, spec, Statistic::Chi1, Limit::Normal)?
        }
        r => return Err(Error::InvalidArgument(format!("unknown recipe {r:?}; known: {}", RECIPES.join(", ")))),
    };
    report["recipe"] = json!(a.recipe);
    Ok(report)
}

fn limit_report(case: LimitCase, a: &ReproduceArgs, target: f64) -> Result<Value> {
    let pts = poissonized_limit_check(case, a.x, &a.l, target)?;
    let rows: Vec<Value> = pts
        .iter()
        .map(|p| json!({"l": p.l, "t": round_sig(p.t, 12), "value": round_sig(p.value, 12), "distance": round_sig(p.distance, 12)}))
        .collect();
    Ok(json!({"case": format!("{case:?}"), "x": a.x, "target": round_sig(target, 12), "points": rows}))
}
