use crate::input::{self, read_instance, read_pairs, read_text, CliError};
use crate::{Algo, GenKind, OracleTask, Report, Space, ThreatQuery, Verb};
use serde_json::{json, Value};
use smp_core::bidding::{format_bid_trace, run_bidding_gs, BidInstance};
use smp_core::coalition::{coalition_stable_matching_with, CoalitionOptions};
use smp_core::dynamic::{
    format_concurrent, parse_play, parse_strategies, replay_matches, run_dynamic, strategies_from_play, validate_play,
    StrategySet,
};
use smp_core::engine::{format_trace, hopeless_pairs, run_gale_shapley, TraceStyle};
use smp_core::model::{
    blocking_pairs, gen_inferno, gen_random, write_instance, BoyId, GirlId, Instance, InstanceFile, Matching,
};
use smp_core::oracle::{
    control_spot_check, enumerate_game_dag, enumerate_static_outcomes, worst_case_outcome, OracleError, OracleOptions,
    ProfileSpace,
};
use smp_core::threats::{
    direct_vetoers, has_control, is_outcome_feasible, legitimate_vetoers_vs_gs, max_controlled_prefix, satisfiable_all,
    vetoes, Coalition, ControlQuery, Verdict, WrathOptions,
};
use smp_core::ttc::{find_trading_cycles, ttc_improve};
use std::fmt::Write as _;
use std::path::PathBuf;

pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }

    fn answer(text: String, yes: bool) -> Self {
        Output { text, code: if yes { 0 } else { 1 } }
    }
}

pub fn run(verb: Verb) -> Result<Output, CliError> {
    match verb {
        Verb::Solve { algo, trace, json, ascii, file } => solve(algo, trace, json, ascii, file.as_ref()),
        Verb::Analyze { report, file, matching, coalition, expect_stable, json } => {
            analyze(report, file.as_ref(), matching, coalition, expect_stable, json)
        }
        Verb::Threats { query } => threats(query),
        Verb::Simulate { script, strategy, ascii, file } => simulate(script, strategy, ascii, file.as_ref()),
        Verb::Oracle { task, max_n, space, boy, file } => oracle(task, max_n, space, boy, file.as_ref()),
        Verb::Gen { kind, n, seed } => generate(kind, n, seed),
    }
}

fn pair_text(inst: &Instance, b: BoyId, g: GirlId) -> String {
    format!("{} {}", inst.boy_label(b), inst.girl_label(g))
}

fn pair_lines(inst: &Instance, pairs: impl IntoIterator<Item = (BoyId, GirlId)>) -> String {
    pairs.into_iter().map(|(b, g)| pair_text(inst, b, g) + "\n").collect()
}

fn pairs_json(inst: &Instance, m: &Matching) -> Value {
    m.pairs().map(|(b, g)| json!([inst.boy_label(b), inst.girl_label(g)])).collect()
}

fn lines_json(text: &str) -> Value {
    text.lines().collect::<Vec<_>>().into()
}

fn with_json(text: String, doc: Value, as_json: bool) -> String {
    if as_json {
        serde_json::to_string_pretty(&doc).expect("json values serialize") + "\n"
    } else {
        text
    }
}

fn solve(algo: Algo, trace: bool, as_json: bool, ascii: bool, file: Option<&PathBuf>) -> Result<Output, CliError> {
    let f = read_instance(file)?;
    let inst = &f.instance;
    let style = TraceStyle { ascii, ..TraceStyle::default() };
    let (m, detail) = match algo {
        Algo::Gs => {
            let t = run_gale_shapley(inst);
            (t.final_matching.clone(), format_trace(&t, style))
        }
        Algo::Coalition => {
            let r = coalition_stable_matching_with(inst, CoalitionOptions { keep_traces: trace, ..Default::default() });
            let mut d = String::new();
            for (k, it) in r.iterations.iter().enumerate() {
                let fixed: Vec<String> = it.fixed.iter().map(|&(b, g)| pair_text(inst, b, g)).collect();
                let _ = writeln!(d, "Iteration {}: fixed {}", k + 1, fixed.join(", "));
                if let Some(t) = &it.trace {
                    d.push_str(&format_trace(t, style));
                }
            }
            (r.matching, d)
        }
        Algo::Ttc => {
            let gs = run_gale_shapley(inst).final_matching;
            let arrow = if ascii { "->" } else { "→" };
            let cycles = find_trading_cycles(inst, &gs).map_err(|e| CliError::Invariant(e.to_string()))?;
            let d = cycles.iter().map(|c| c.render(inst, arrow) + "\n").collect();
            (ttc_improve(inst, &gs).map_err(|e| CliError::Invariant(e.to_string()))?, d)
        }
        Algo::Bidding => {
            let bi = BidInstance::new(inst.clone(), &f.bids).map_err(|e| CliError::Parse(e.to_string()))?;
            let t = run_bidding_gs(&bi);
            (t.final_matching.clone(), format_bid_trace(&bi, &t))
        }
    };
    if !m.is_complete() {
        return Err(CliError::Invariant("matching is incomplete".into()));
    }
    let mut text = pair_lines(inst, m.pairs());
    if trace {
        text.push('\n');
        text.push_str(&detail);
    }
    let mut doc = json!({ "pairs": pairs_json(inst, &m) });
    if trace {
        doc["trace"] = lines_json(&detail);
    }
    Ok(Output::ok(with_json(text, doc, as_json)))
}

fn matching_or_gs(inst: &Instance, path: Option<PathBuf>) -> Result<Matching, CliError> {
    match path {
        Some(p) => Matching::from_pairs(inst.n(), read_pairs(inst, &p)?).map_err(|e| CliError::Parse(e.to_string())),
        None => Ok(run_gale_shapley(inst).final_matching),
    }
}

fn analyze(
    report: Report,
    file: Option<&PathBuf>,
    matching: Option<PathBuf>,
    coalition: Option<PathBuf>,
    expect_stable: bool,
    as_json: bool,
) -> Result<Output, CliError> {
    let inst = &read_instance(file)?.instance;
    let (text, code) = match report {
        Report::Hopeless => {
            let h = hopeless_pairs(&run_gale_shapley(inst)).map_err(|e| CliError::Invariant(e.to_string()))?;
            (pair_lines(inst, h), 0)
        }
        Report::Blocking => {
            let m = matching_or_gs(inst, matching)?;
            let bp = blocking_pairs(inst, &m).map_err(|e| CliError::Parse(e.to_string()))?;
            let code = if expect_stable && !bp.is_empty() { 1 } else { 0 };
            (pair_lines(inst, bp), code)
        }
        Report::Vetoes => {
            let path = coalition.ok_or_else(|| CliError::Parse("`vetoes` needs --coalition".into()))?;
            let c = Coalition::new(inst, read_pairs(inst, &path)?).map_err(|e| CliError::Parse(e.to_string()))?;
            let mut t = String::new();
            for v in vetoes(inst, &c) {
                let (b, o, g) = (inst.boy_label(v.vetoer), inst.boy_label(v.ousted), inst.girl_label(v.girl));
                let _ = writeln!(t, "{b} vetoes {o} at {g}");
            }
            let label = |set: std::collections::BTreeSet<BoyId>| -> String {
                set.into_iter().map(|b| inst.boy_label(b)).collect::<Vec<_>>().join(" ")
            };
            let _ = writeln!(t, "direct: {}", label(direct_vetoers(inst, &c)));
            let _ = writeln!(t, "legitimate: {}", label(legitimate_vetoers_vs_gs(inst, &c)));
            (t, 0)
        }
        Report::Cycles => {
            let m = matching_or_gs(inst, matching)?;
            let cycles = find_trading_cycles(inst, &m).map_err(|e| CliError::Parse(e.to_string()))?;
            (cycles.iter().map(|c| c.render(inst, "->") + "\n").collect(), 0)
        }
    };
    let doc = json!({ "lines": lines_json(&text) });
    Ok(Output { text: with_json(text, doc, as_json), code })
}

fn threats(query: ThreatQuery) -> Result<Output, CliError> {
    match query {
        ThreatQuery::Control { members, girls, externals, file } => {
            let inst = &read_instance(file.as_ref())?.instance;
            let members = input::boys(inst, &members)?;
            let externals = match externals {
                Some(e) => input::boys(inst, &e)?,
                None => inst.boys().filter(|b| !members.contains(b)).collect(),
            };
            let q = ControlQuery { members, girls: input::girls(inst, &girls)?, externals, bottoms: None };
            let c = has_control(inst, &q);
            let text = format!("control: {}\n{}", c.holds, pair_lines(inst, c.witness.iter().copied()));
            Ok(Output::answer(text, c.holds))
        }
        ThreatQuery::Prefix { target, members, file } => {
            let inst = &read_instance(file.as_ref())?.instance;
            let target = input::boy(inst, &target)?;
            let members = match members {
                Some(m) => input::boys(inst, &m)?,
                None => inst.boys().filter(|&b| b != target).collect(),
            };
            let sx = max_controlled_prefix(inst, &members, target, None);
            let text = sx.iter().map(|&g| inst.girl_label(g)).collect::<Vec<_>>().join(" ") + "\n";
            Ok(Output::ok(text))
        }
        ThreatQuery::Satisfiable { file } => {
            let f = read_instance(file.as_ref())?;
            let aug = f.augmented().map_err(|e| CliError::Parse(e.to_string()))?;
            match satisfiable_all(&aug) {
                Some(m) => Ok(Output::ok(pair_lines(&f.instance, m.pairs()))),
                None => Ok(Output::answer("unsatisfiable\n".into(), false)),
            }
        }
        ThreatQuery::Feasible { boy, girl, budget, file } => {
            let inst = &read_instance(file.as_ref())?.instance;
            let (b, g) = (input::boy(inst, &boy)?, input::girl(inst, &girl)?);
            let r = is_outcome_feasible(inst, b, g, &WrathOptions { budget, bottoms: None });
            let verdict = match r.verdict {
                Verdict::Feasible => "feasible",
                Verdict::NotFound => "not found",
                Verdict::BudgetExceeded => "budget exceeded",
            };
            let order: Vec<String> = r.state.order.iter().map(|&x| inst.boy_label(x)).collect();
            let mut text = format!("verdict: {verdict}\nnodes: {}\nalliance: {}\n", r.nodes, order.join(" "));
            if let Some(w) = &r.witness {
                text.push_str(&pair_lines(inst, w.pairs()));
            }
            let code = match r.verdict {
                Verdict::Feasible => 0,
                Verdict::NotFound => 1,
                Verdict::BudgetExceeded => 4,
            };
            Ok(Output { text, code })
        }
    }
}

fn simulate(
    script: Option<PathBuf>,
    strategy: Option<PathBuf>,
    ascii: bool,
    file: Option<&PathBuf>,
) -> Result<Output, CliError> {
    let inst = &read_instance(file)?.instance;
    let parse_err = |p: &PathBuf, e: &dyn std::fmt::Display| CliError::Parse(format!("{}: {e}", p.display()));
    let (set, play) = match (&script, &strategy) {
        (Some(p), _) => {
            let play = parse_play(&read_text(Some(p))?, inst.base()).map_err(|e| parse_err(p, &e))?;
            let v = validate_play(&play);
            if !v.plausible {
                return Err(CliError::Parse(format!("{}: implausible play: {:?}", p.display(), v.violations)));
            }
            (strategies_from_play(&play).map_err(|e| parse_err(p, &e))?, Some(play))
        }
        (None, Some(p)) => (parse_strategies(&read_text(Some(p))?, inst).map_err(|e| parse_err(p, &e))?, None),
        (None, None) => (StrategySet::naive(), None),
    };
    let trace = run_dynamic(inst, &set).map_err(|e| CliError::Invariant(e.to_string()))?;
    let text = format!("{}\n{}", format_concurrent(&trace, ascii), pair_lines(inst, trace.final_matching.pairs()));
    let replayed = play.is_none_or(|p| replay_matches(&trace, &p));
    if !replayed {
        eprintln!("smp: the instance does not reproduce the scripted play");
    }
    Ok(Output::answer(text, replayed))
}

fn oracle_err(e: OracleError) -> CliError {
    CliError::Budget(e.to_string())
}

fn oracle(
    task: OracleTask,
    max_n: Option<usize>,
    space: Space,
    boy: Option<String>,
    file: Option<&PathBuf>,
) -> Result<Output, CliError> {
    let inst = &read_instance(file)?.instance;
    let mut opts = OracleOptions::default();
    if let Some(k) = max_n {
        opts.max_n = k;
        opts.max_dag_n = k;
    }
    let space = match space {
        Space::All => ProfileSpace::All,
        Space::Conservative => ProfileSpace::Conservative,
    };
    let mut t = String::new();
    match task {
        OracleTask::Atlas => {
            let atlas = enumerate_static_outcomes(inst, space, &opts).map_err(oracle_err)?;
            let _ = writeln!(t, "combinations: {}", atlas.combinations());
            let _ = writeln!(t, "distinct: {}", atlas.distinct().len());
            for b in inst.boys() {
                let (best, worst) = (inst.girl_label(atlas.best[b.0]), inst.girl_label(atlas.worst[b.0]));
                let _ = writeln!(t, "{} best {best} worst {worst}", inst.boy_label(b));
            }
        }
        OracleTask::Dag => {
            let dag = enumerate_game_dag(inst, &opts).map_err(oracle_err)?;
            let _ = writeln!(t, "positions: {}", dag.positions);
            let _ = writeln!(t, "terminals: {}", dag.terminals);
            let _ = writeln!(t, "reachable: {}", dag.reachable);
            let _ = writeln!(t, "edges: {}", dag.edges);
            let _ = writeln!(t, "reachable terminals: {}", dag.reachable_terminals);
            let _ = writeln!(t, "acyclic: {}", dag.acyclic);
            if !dag.acyclic || !dag.sinks_complete {
                return Err(CliError::Invariant(format!("game graph is malformed:\n{t}")));
            }
        }
        OracleTask::Worst => {
            let who: Vec<BoyId> = match boy {
                Some(b) => vec![input::boy(inst, &b)?],
                None => inst.boys().collect(),
            };
            for b in who {
                let g = worst_case_outcome(inst, b, &opts).map_err(oracle_err)?;
                let _ = writeln!(t, "{}", pair_text(inst, b, g));
            }
        }
        OracleTask::Control => {
            let check = control_spot_check(inst, &opts).map_err(oracle_err)?;
            let _ = writeln!(t, "coalitions: {}", check.coalitions);
            let _ = writeln!(t, "divergences: {}", check.divergences.len());
            let _ = writeln!(t, "set mismatches: {}", check.set_mismatches.len());
            for d in &check.divergences {
                let promises: Vec<String> = d.coalition.pairs().map(|(b, g)| pair_text(inst, b, g)).collect();
                let _ = writeln!(t, "{}: control {}, survives {}", promises.join(", "), d.has_control, d.undeterable);
            }
        }
    }
    Ok(Output::ok(t))
}

fn generate(kind: GenKind, n: usize, seed: u64) -> Result<Output, CliError> {
    let inst = match kind {
        GenKind::Random => gen_random(n, seed),
        GenKind::Inferno => gen_inferno(n),
    }
    .map_err(|e| CliError::Parse(e.to_string()))?;
    Ok(Output::ok(write_instance(&InstanceFile::new(inst))))
}
