//! One-shot evaluations emitted as a JSON document.

use serde_json::{json, Value};

use super::config::{RunConfig, Task};
use crate::correlators::{analytic_correlator, mc_correlator};
use crate::error::HarnessError;
use crate::geometry::{chsh_optimal_settings, ChshSettings, UnitVector3};
use crate::inequalities::{chsh_report, closed_form, margin, Inequality};
use crate::models::{bhv_table, joint, lhv_malus_joint, Family, Party, ProbabilityTable, Settings};

fn settings(config: &RunConfig) -> Settings {
    Settings::new(config.settings.a.unwrap_or(UnitVector3::Z), config.settings.b.unwrap_or(UnitVector3::Z))
}

fn marginal_json(t: &ProbabilityTable, party: Party) -> Value {
    let (p, m) = t.marginal(party);
    json!({ "+": p, "-": m })
}

fn prob(config: &RunConfig) -> Result<Value, HarnessError> {
    let s = settings(config);
    let model = &config.model;
    let (table, averaged) = match model.family {
        Family::Bhv => (bhv_table(model.a_expect.unwrap_or(0.0), model.b_expect.unwrap_or(0.0))?, false),
        Family::Lhv => {
            let missing = |f: &str| HarnessError::Config(format!("LHV model needs model.{f}"));
            let u = model.u.ok_or_else(|| missing("u"))?;
            let v = model.v.ok_or_else(|| missing("v"))?;
            let c = model.c.ok_or_else(|| missing("c"))?;
            (lhv_malus_joint(&u, &v, c, &s)?, false)
        }
        _ => {
            let params = model.params()?;
            match &config.settings.hidden {
                Some(h) => (joint(&params, h, &s)?, false),
                None => {
                    // after averaging over λ all four families have uniform marginals
                    let c = analytic_correlator(&params, &s);
                    (ProbabilityTable::from_fn(|sg, tg| (1.0 + sg * tg * c) / 4.0)?, true)
                }
            }
        }
    };
    Ok(json!({
        "task": "prob",
        "model": model,
        "settings": s,
        "hidden": config.settings.hidden,
        "averaged_over_hidden": averaged,
        "table": table,
        "marginal_a": marginal_json(&table, Party::A),
        "marginal_b": marginal_json(&table, Party::B),
        "correlator": table.correlator(),
        "seed": config.sampling.seed,
    }))
}

fn correlator(config: &RunConfig) -> Result<Value, HarnessError> {
    let params = config.model.params()?;
    let s = settings(config);
    let analytic = analytic_correlator(&params, &s);
    let sp = config.sampling;
    let mc = mc_correlator(&params, &s, sp.n, sp.seed, sp.shards)?;
    Ok(json!({
        "task": "correlator",
        "model": config.model,
        "settings": s,
        "analytic": analytic,
        "monte_carlo": { "mean": mc.mean, "stderr": mc.stderr, "n": mc.n, "seed": mc.seed, "shards": sp.shards },
        "z_score": mc.z_score(analytic),
        "seed": sp.seed,
    }))
}

fn chsh(config: &RunConfig) -> Result<Value, HarnessError> {
    let params = config.model.params()?;
    let st = &config.settings;
    let settings = match (st.a, st.b, st.a_prime, st.b_prime) {
        (None, None, None, None) => chsh_optimal_settings(),
        (Some(a), Some(b), Some(a_prime), Some(b_prime)) => ChshSettings { a, b, a_prime, b_prime },
        _ => return Err(HarnessError::Config("CHSH needs all of a, b, a_prime, b_prime or none".into())),
    };
    Ok(json!({
        "task": "chsh",
        "model": config.model,
        "report": chsh_report(&params, &settings),
        "seed": config.sampling.seed,
    }))
}

fn angle_task(config: &RunConfig, inequality: Inequality) -> Result<Value, HarnessError> {
    let params = config.model.params()?;
    let phi = match (config.settings.phi, inequality) {
        (Some(p), _) => p.0,
        (None, Inequality::Leggett) => closed_form::leggett_qm_argmax(),
        (None, _) => 2.0 * closed_form::branciard_qm_argmax_sin().asin(),
    };
    Ok(json!({
        "task": inequality.name(),
        "model": config.model,
        "report": margin(inequality, &params, phi),
        "seed": config.sampling.seed,
    }))
}

/// Evaluates a prob, correlator, chsh, leggett, or branciard task.
pub fn run_single(config: &RunConfig) -> Result<Value, HarnessError> {
    match config.task {
        Task::Prob => prob(config),
        Task::Correlator => correlator(config),
        Task::Chsh => chsh(config),
        Task::Leggett => angle_task(config, Inequality::Leggett),
        Task::Branciard => angle_task(config, Inequality::Branciard),
        Task::Scan | Task::Verify => {
            Err(HarnessError::Config(format!("task {:?} is not a single evaluation", config.task)))
        }
    }
}
