use std::fs;

use atkinson_core::arborification::{alpha, antiarborify};
use atkinson_core::enumerate::{words_up_to_norm, ForestTable};
use atkinson_core::forest::{ck_coproduct, Forest};
use atkinson_core::models::diffusion::{
    diffusion_arb_closed, diffusion_phi_mc, ConvolutionMethod, DiffusionModel, DiffusionParams,
    Grid, ARB_NODE_CAP, DEFAULT_TOL,
};
use atkinson_core::models::organic::{organic_arb_closed, organic_phi_closed, OrganicModel};
use atkinson_core::models::shuffle::{
    shuffle_K_closed, shuffle_K_count, shuffle_K_recursive, ShuffleModel,
};
use atkinson_core::models::ClosedSign;
use atkinson_core::qsh::{deconcat, qsh_product, sh_product};
use atkinson_core::rota_baxter::checks::{
    average_axioms_check, factorization_check, rb_check, wellbehaved_check, Report,
};
use atkinson_core::rota_baxter::{Atkinson, RbModel};
use atkinson_core::scalar::{q_int, Scalar, Q};
use atkinson_core::word::Word;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::{Command, Format, Global, ModelKind};
use crate::output::{lincomb, Cell, Table};
use crate::CliError;

/// Word norm caps per model.
const ORGANIC_CAP: u64 = 16;
const SHUFFLE_CAP: u64 = 6;
const DIFFUSION_CAP: u64 = 4;
/// Forest norm cap for the diffusion model; nodes are capped separately.
const DIFFUSION_ARB_NORM_CAP: u64 = 12;

const DEFAULT_MC_SAMPLES: u64 = 100_000;

/// Validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub format: Format,
    pub max_weight: Option<u64>,
    pub max_nodes: Option<usize>,
    pub paper_sign: bool,
    pub diffusion: DiffusionConfig,
}

#[derive(Debug, Clone, Copy)]
pub struct DiffusionConfig {
    pub grid: Grid,
    pub tol: f64,
    pub samples: u64,
    pub seed: u64,
}

impl DiffusionConfig {
    fn model(&self) -> Result<DiffusionModel, CliError> {
        let params = DiffusionParams {
            grid: self.grid,
            method: ConvolutionMethod::Direct,
        };
        Ok(DiffusionModel::new(params, self.tol)?)
    }

    fn to_json(self) -> Value {
        json!({ "grid": self.grid, "tol": self.tol, "mc_samples": self.samples, "seed": self.seed })
    }
}

impl RunConfig {
    pub fn new(g: &Global, command: &Command) -> Result<RunConfig, CliError> {
        let diffusion_flags = g.grid_step.is_some()
            || g.grid_radius.is_some()
            || g.mc_samples.is_some()
            || g.seed.is_some()
            || g.tol.is_some();
        if diffusion_flags && command.model() != Some(ModelKind::Diffusion) {
            return Err(CliError::Input(
                "--grid-step, --grid-radius, --mc-samples, --seed and --tol need --model diffusion"
                    .into(),
            ));
        }
        if g.max_weight == Some(0) {
            return Err(CliError::Input("--max-weight must be positive".into()));
        }
        if g.max_nodes == Some(0) {
            return Err(CliError::Input("--max-nodes must be positive".into()));
        }
        let default = Grid::default();
        let grid = Grid::new(
            g.grid_radius.unwrap_or(default.radius),
            g.grid_step.unwrap_or(default.step),
        )?;
        let samples = g.mc_samples.unwrap_or(DEFAULT_MC_SAMPLES);
        if samples == 0 {
            return Err(CliError::Input("--mc-samples must be positive".into()));
        }
        Ok(RunConfig {
            format: g.format,
            max_weight: g.max_weight,
            max_nodes: g.max_nodes,
            paper_sign: g.paper_sign,
            diffusion: DiffusionConfig {
                grid,
                tol: g.tol.unwrap_or(DEFAULT_TOL),
                samples,
                seed: g.seed.unwrap_or(0),
            },
        })
    }

    fn weight_or(&self, default: u64) -> u64 {
        self.max_weight.unwrap_or(default)
    }
}

fn parse_word(s: &str) -> Result<Word, CliError> {
    Ok(s.parse::<Word>()?)
}

fn parse_forest(s: &str) -> Result<Forest, CliError> {
    Ok(s.parse::<Forest>()?)
}

fn check_cap(norm: u64, cap: u64) -> Result<(), CliError> {
    if norm > cap {
        Err(CliError::Cap(format!(
            "norm {} is above the cap {}",
            norm, cap
        )))
    } else {
        Ok(())
    }
}

/// Explicit inputs, or the sweep when there are none.
fn words_or_sweep(inputs: &[String], cap: u64, sweep: u64) -> Result<Vec<Word>, CliError> {
    let words: Vec<Word> = if inputs.is_empty() {
        check_cap(sweep, cap)?;
        words_up_to_norm(sweep)
    } else {
        inputs
            .iter()
            .map(|s| parse_word(s))
            .collect::<Result<_, _>>()?
    };
    for w in &words {
        if w.is_empty() {
            return Err(CliError::Input("the empty word has no table entry".into()));
        }
        check_cap(w.norm(), cap)?;
    }
    Ok(words)
}

fn forests_or_sweep(
    inputs: &[String],
    norm_cap: u64,
    node_cap: usize,
    sweep_norm: u64,
    sweep_nodes: usize,
) -> Result<Vec<Forest>, CliError> {
    let forests: Vec<Forest> = if inputs.is_empty() {
        check_cap(sweep_norm, norm_cap)?;
        ForestTable::new(sweep_norm)
            .all_nonempty()
            .filter(|f| f.size() <= sweep_nodes)
            .cloned()
            .collect()
    } else {
        inputs
            .iter()
            .map(|s| parse_forest(s))
            .collect::<Result<_, _>>()?
    };
    for f in &forests {
        if f.is_empty() {
            return Err(CliError::Input(
                "the empty forest has no table entry".into(),
            ));
        }
        check_cap(f.norm(), norm_cap)?;
        if f.size() > node_cap {
            return Err(CliError::Cap(format!(
                "{} nodes, at most {} allowed",
                f.size(),
                node_cap
            )));
        }
    }
    Ok(forests)
}

fn parity(n: usize) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn run(command: &Command, cfg: &RunConfig) -> Result<(String, bool), CliError> {
    let fmt = cfg.format;
    let out = match command {
        Command::QshProd { u, v } | Command::ShProd { u, v } => {
            let (a, b) = (parse_word(u)?, parse_word(v)?);
            let p = match command {
                Command::QshProd { .. } => qsh_product(&a, &b),
                _ => sh_product(&a, &b),
            };
            let input = json!({ "u": a.values(), "v": b.values() });
            lincomb(p.to_string(), p.to_json(), input, fmt)?
        }
        Command::Deconcat { w } => {
            let a = parse_word(w)?;
            let d = deconcat(&a);
            lincomb(
                d.to_string(),
                d.to_json(),
                json!({ "word": a.values() }),
                fmt,
            )?
        }
        Command::Coproduct { forest } => {
            let f = parse_forest(forest)?;
            let d = ck_coproduct(&f);
            lincomb(
                d.to_string(),
                d.to_json(),
                json!({ "forest": f.to_syntax() }),
                fmt,
            )?
        }
        Command::Alpha { forest } => {
            let f = parse_forest(forest)?;
            let a = alpha(&f);
            lincomb(
                a.to_string(),
                a.to_json(),
                json!({ "forest": f.to_syntax() }),
                fmt,
            )?
        }
        Command::Phi { model, words } => phi(*model, words, cfg)?.render(fmt)?,
        Command::PhiArb { model, forests } => phi_arb(*model, forests, cfg)?.render(fmt)?,
        Command::Verify { model, report } => {
            let (table, json, passed) = verify(*model, cfg)?;
            let text = serde_json::to_string_pretty(&json).expect("serializable");
            fs::write(report, text + "\n").map_err(|e| {
                CliError::Input(format!("cannot write {}: {}", report.display(), e))
            })?;
            return Ok((table.render(fmt)?, passed));
        }
        Command::CountShuffle { words, eta } => count_shuffle(words, eta, cfg)?.render(fmt)?,
    };
    Ok((out, true))
}

/// Sign convention of the displayed value relative to the recursion.
fn word_convention(model: ModelKind, printed: bool) -> ClosedSign {
    match (model, printed) {
        (ModelKind::Organic, true) => ClosedSign::Alternating,
        _ => ClosedSign::Plain,
    }
}

fn other(sign: ClosedSign) -> ClosedSign {
    match sign {
        ClosedSign::Plain => ClosedSign::Alternating,
        ClosedSign::Alternating => ClosedSign::Plain,
    }
}

fn sign_meta(table: &mut Table, model: ModelKind, cfg: &RunConfig) {
    let name = match model {
        ModelKind::Organic => "organic",
        ModelKind::Shuffle => "shuffle",
        ModelKind::Diffusion => "diffusion",
    };
    table.meta.insert("model".into(), json!(name));
    let sign = if cfg.paper_sign {
        "printed"
    } else {
        "recursion"
    };
    table.meta.insert("sign".into(), json!(sign));
}

fn exact_phi<M: RbModel<Scalar = Q>>(
    engine: Atkinson<M>,
    words: &[Word],
    cap: u64,
    sign: ClosedSign,
) -> Result<Vec<Vec<Cell>>, CliError> {
    let phi = engine.phi_char(cap);
    words
        .par_iter()
        .map(|w| {
            let value = phi.eval(w)? * q_int(sign.factor(w.len()));
            let closed = organic_phi_closed(w, sign)?;
            let alt = organic_phi_closed(w, other(sign))?;
            Ok(vec![
                Cell::word(w),
                Cell::scalar(&value),
                Cell::scalar(&closed),
                Cell::scalar(&alt),
                Cell::flag(value == closed),
            ])
        })
        .collect()
}

fn phi(model: ModelKind, inputs: &[String], cfg: &RunConfig) -> Result<Table, CliError> {
    let mut table = match model {
        ModelKind::Organic | ModelKind::Shuffle => {
            let (cap, sweep) = match model {
                ModelKind::Organic => (ORGANIC_CAP, 6),
                _ => (SHUFFLE_CAP, 4),
            };
            let words = words_or_sweep(inputs, cap, cfg.weight_or(sweep))?;
            let sign = word_convention(model, cfg.paper_sign);
            let mut t = Table::new(vec![
                "word",
                "value",
                "closed",
                "closed_other_sign",
                "agree",
            ]);
            let rows = match model {
                ModelKind::Organic => {
                    exact_phi(Atkinson::new(OrganicModel::new()), &words, cap, sign)?
                }
                _ => exact_phi(Atkinson::new(ShuffleModel::default()), &words, cap, sign)?,
            };
            t.rows = rows;
            t
        }
        ModelKind::Diffusion => {
            let words = words_or_sweep(inputs, DIFFUSION_CAP, cfg.weight_or(3))?;
            let d = cfg.diffusion;
            let phi = Atkinson::new(d.model()?).phi_char(DIFFUSION_CAP);
            let mut t = Table::new(vec!["word", "grid", "mc", "mc_stderr", "agree"]);
            t.rows = words
                .par_iter()
                .map(|w| {
                    // The printed convention is the probability itself.
                    let s = if cfg.paper_sign {
                        parity(w.len()) as f64
                    } else {
                        1.0
                    };
                    let grid = s * phi.eval(w)?;
                    let mc = diffusion_phi_mc(w, d.samples, d.seed)?;
                    let value = s * mc.value;
                    let agree = (grid - value).abs() <= d.tol + 3.0 * mc.stderr;
                    Ok(vec![
                        Cell::word(w),
                        Cell::scalar(&grid),
                        Cell::scalar(&value),
                        Cell::scalar(&mc.stderr),
                        Cell::flag(agree),
                    ])
                })
                .collect::<Result<_, CliError>>()?;
            t.meta.insert("diffusion".into(), d.to_json());
            t
        }
    };
    sign_meta(&mut table, model, cfg);
    Ok(table)
}

fn exact_arb<M: RbModel<Scalar = Q>>(
    engine: Atkinson<M>,
    forests: &[Forest],
    cap: u64,
) -> Result<Vec<Vec<Cell>>, CliError> {
    let arb = antiarborify(&engine, cap);
    let one = q_int(1);
    forests
        .par_iter()
        .map(|f| {
            let value = arb.eval(f)?;
            let closed = organic_arb_closed(f, ClosedSign::Plain);
            Ok(vec![
                Cell::forest(f),
                Cell::scalar(&value),
                Cell::scalar(&closed),
                Cell::flag(value == closed),
                Cell::flag(Scalar::abs(&value) <= one),
            ])
        })
        .collect()
}

fn phi_arb(model: ModelKind, inputs: &[String], cfg: &RunConfig) -> Result<Table, CliError> {
    let nodes = cfg.max_nodes.unwrap_or(4);
    let weight = cfg.weight_or(4);
    let mut table = match model {
        ModelKind::Organic | ModelKind::Shuffle => {
            let cap = if model == ModelKind::Organic {
                ORGANIC_CAP
            } else {
                SHUFFLE_CAP
            };
            let forests = forests_or_sweep(inputs, cap, usize::MAX, weight, nodes)?;
            let mut t = Table::new(vec!["forest", "value", "closed", "agree", "bounded"]);
            t.rows = match model {
                ModelKind::Organic => exact_arb(Atkinson::new(OrganicModel::new()), &forests, cap)?,
                _ => exact_arb(Atkinson::new(ShuffleModel::default()), &forests, cap)?,
            };
            t
        }
        ModelKind::Diffusion => {
            let forests =
                forests_or_sweep(inputs, DIFFUSION_ARB_NORM_CAP, ARB_NODE_CAP, weight, nodes)?;
            let d = cfg.diffusion;
            let arb = antiarborify(&Atkinson::new(d.model()?), DIFFUSION_ARB_NORM_CAP);
            let mut t = Table::new(vec![
                "forest",
                "grid",
                "closed_mc",
                "mc_stderr",
                "agree",
                "bounded",
            ]);
            t.rows = forests
                .par_iter()
                .map(|f| {
                    let grid = arb.eval(f)?;
                    let est = diffusion_arb_closed(f, d.samples, d.seed)?;
                    let (grid, closed) = if cfg.paper_sign {
                        (parity(f.size()) as f64 * grid, est.magnitude)
                    } else {
                        (grid, est.signed)
                    };
                    let agree = (grid - closed.value).abs() <= d.tol + 3.0 * closed.stderr;
                    Ok(vec![
                        Cell::forest(f),
                        Cell::scalar(&grid),
                        Cell::scalar(&closed.value),
                        Cell::scalar(&closed.stderr),
                        Cell::flag(agree),
                        Cell::flag(grid.abs() <= 1.0 + d.tol),
                    ])
                })
                .collect::<Result<_, CliError>>()?;
            t.meta.insert("diffusion".into(), d.to_json());
            t
        }
    };
    sign_meta(&mut table, model, cfg);
    Ok(table)
}

fn run_checks<M: RbModel>(engine: &Atkinson<M>, weight: u64) -> Report {
    let mut report = rb_check(engine, usize::MAX, weight);
    report.extend(average_axioms_check(
        engine,
        usize::MAX,
        weight,
        weight as u32,
    ));
    report.extend(wellbehaved_check(engine, weight));
    report.extend(factorization_check(engine, weight));
    report
}

fn verify(model: ModelKind, cfg: &RunConfig) -> Result<(Table, Value, bool), CliError> {
    let (report, cap, config) = match model {
        ModelKind::Organic => {
            let w = cfg.weight_or(6);
            check_cap(w, ORGANIC_CAP)?;
            (
                run_checks(&Atkinson::new(OrganicModel::new()), w),
                ORGANIC_CAP,
                json!({ "max_weight": w }),
            )
        }
        ModelKind::Shuffle => {
            let w = cfg.weight_or(4);
            check_cap(w, SHUFFLE_CAP)?;
            (
                run_checks(&Atkinson::new(ShuffleModel::default()), w),
                SHUFFLE_CAP,
                json!({ "max_weight": w }),
            )
        }
        ModelKind::Diffusion => {
            let w = cfg.weight_or(3);
            check_cap(w, DIFFUSION_CAP)?;
            let d = cfg.diffusion;
            let r = run_checks(&Atkinson::new(d.model()?), w);
            (
                r,
                DIFFUSION_CAP,
                json!({ "max_weight": w, "diffusion": d.to_json() }),
            )
        }
    };
    let passed = report.passed();
    let mut table = Table::new(vec!["check", "status", "cases"]);
    for e in &report.entries {
        table.push(vec![
            Cell::text(e.axiom.clone()),
            Cell::text(if e.passed() { "pass" } else { "fail" }),
            Cell::count(e.checked),
        ]);
    }
    table.meta.insert("model".into(), json!(report.model));
    table.meta.insert("passed".into(), json!(passed));
    let json = json!({
        "command": "verify",
        "model": report.model,
        "cap": cap,
        "config": config,
        "passed": passed,
        "report": report.to_json(),
    });
    Ok((table, json, passed))
}

fn count_shuffle(inputs: &[String], eta: &str, cfg: &RunConfig) -> Result<Table, CliError> {
    let model = ShuffleModel::new(parse_word(eta)?)?;
    let l = model.l();
    let words = words_or_sweep(inputs, SHUFFLE_CAP, cfg.weight_or(4))?;
    for w in &words {
        // Iterates hold words of length l·‖w‖.
        if u64::from(l) * w.norm() > 2 * SHUFFLE_CAP {
            return Err(CliError::Cap(format!(
                "iterate words of length {} exceed {}",
                u64::from(l) * w.norm(),
                2 * SHUFFLE_CAP
            )));
        }
    }
    let engine = Atkinson::new(model);
    let mut t = Table::new(vec!["word", "closed", "recursive", "count", "agree"]);
    t.rows = words
        .par_iter()
        .map(|w| {
            let closed = shuffle_K_closed(w, l)?;
            let rec = shuffle_K_recursive(w, l)?;
            let count = shuffle_K_count(&engine.atkinson_left(w)?)?;
            Ok(vec![
                Cell::word(w),
                Cell::integer(&closed),
                Cell::integer(&rec),
                Cell::integer(&count),
                Cell::flag(closed == rec && rec == count),
            ])
        })
        .collect::<Result<_, CliError>>()?;
    t.meta
        .insert("eta".into(), json!(engine.model().eta().values()));
    Ok(t)
}
