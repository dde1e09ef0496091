use smp_core::engine::run_gale_shapley;
use smp_core::model::parse_instance;
use smp_core::ttc::ttc_improve;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn core_fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name);
    p.to_str().unwrap().to_owned()
}

fn own_fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).to_str().unwrap().to_owned()
}

fn smp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smp")).args(args).output().unwrap()
}

fn smp_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_smp"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn coalition_on_seven_boys() {
    let o = smp(&["solve", "--algo", "coalition", &core_fixture("short_lists.txt")]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 7);
    assert_eq!(text.lines().last(), Some("b7 g6"));
}

#[test]
fn gale_shapley_matches_the_library() {
    let path = core_fixture("seven_boys.txt");
    let inst = parse_instance(&std::fs::read_to_string(&path).unwrap()).unwrap().instance;
    let expected: String = run_gale_shapley(&inst)
        .final_matching
        .pairs()
        .map(|(b, g)| format!("{} {}\n", inst.boy_label(b), inst.girl_label(g)))
        .collect();
    assert_eq!(stdout(&smp(&["solve", "--algo", "gs", &path])), expected);

    let improved = ttc_improve(&inst, &run_gale_shapley(&inst).final_matching).unwrap();
    let expected: String =
        improved.pairs().map(|(b, g)| format!("{} {}\n", inst.boy_label(b), inst.girl_label(g))).collect();
    assert_eq!(stdout(&smp(&["solve", "--algo", "ttc", &path])), expected);
}

#[test]
fn single_pair_from_stdin() {
    let o = smp_stdin(&["solve", "--algo", "gs"], "boys 1\ngirls 1\nb 1: 1\ng 1: 1\n");
    assert_eq!(stdout(&o), "b1 g1\n");
}

#[test]
fn hopeless_and_cycles() {
    let text = stdout(&smp(&["analyze", "hopeless", &core_fixture("short_lists.txt")]));
    assert!(text.lines().any(|l| l == "b2 g7"));
    assert!(text.lines().any(|l| l == "b5 g4"));
    let text = stdout(&smp(&["analyze", "cycles", &core_fixture("seven_boys.txt")]));
    assert!(text.lines().any(|l| l.contains("g3|b3->g2|b5->g3")), "{text}");
}

#[test]
fn blocking_report_and_expectation() {
    let o = smp(&["analyze", "blocking", "--expect-stable", &core_fixture("short_lists.txt")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let o = smp(&[
        "analyze",
        "blocking",
        "--expect-stable",
        "--matching",
        &own_fixture("unstable_short_lists.txt"),
        &core_fixture("short_lists.txt"),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!stdout(&o).is_empty());
}

#[test]
fn vetoes_of_the_trading_coalition() {
    let o =
        smp(&["analyze", "vetoes", "--coalition", &own_fixture("ttc_coalition.txt"), &core_fixture("short_lists.txt")]);
    let text = stdout(&o);
    assert!(text.contains("b6 vetoes b4 at g3"), "{text}");
    assert!(text.contains("legitimate: b2 b5 b6"), "{text}");
}

#[test]
fn inferno_trace_is_quadratic() {
    let inst = stdout(&smp(&["gen", "inferno", "--n", "5"]));
    let o = smp_stdin(&["solve", "--algo", "gs", "--trace"], &inst);
    assert!(o.status.success());
    let proposals = stdout(&o).matches('→').count();
    let lib = run_gale_shapley(&parse_instance(&inst).unwrap().instance).proposal_count;
    assert_eq!(proposals, lib);
    assert!(proposals >= 4 * 3 / 2);
}

#[test]
fn threat_play_simulates_to_its_outcome() {
    let o = smp(&["simulate", "--script", &core_fixture("devilish_T.play"), &core_fixture("ten_boys.txt")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let tail: Vec<&str> = text.lines().rev().take(10).collect();
    for pair in ["b1 g8", "b2 g1", "b4 g4", "b9 g10", "b10 g9"] {
        assert!(tail.contains(&pair), "{text}");
    }
}

#[test]
fn tiny_game_graph() {
    let o = smp(&["oracle", "dag", "--max-n", "3", &own_fixture("tiny.txt")]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l == "terminals: 6"));
    let o = smp(&["oracle", "dag", "--max-n", "2", &own_fixture("tiny.txt")]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn feasibility_exit_codes() {
    let inst = core_fixture("ten_boys.txt");
    assert_eq!(smp(&["threats", "feasible", "--boy", "b4", "--girl", "g1", &inst]).status.code(), Some(0));
    assert_eq!(smp(&["threats", "feasible", "--boy", "b1", "--girl", "g1", &inst]).status.code(), Some(1));
    let o = smp(&["threats", "feasible", "--boy", "b1", "--girl", "g1", "--budget", "5", &inst]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn control_answers() {
    let inst = core_fixture("ten_boys.txt");
    let o = smp(&["threats", "control", "--members", "b4", "--girls", "g4 g10", &inst]);
    assert_eq!(o.status.code(), Some(1));
    let o = smp(&["threats", "prefix", "--target", "b1", &inst]);
    assert_eq!(stdout(&o), "g1 g3 g6\n");
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(smp_stdin(&["solve"], "boys 2\n").status.code(), Some(2));
    assert_eq!(smp(&["solve", "--bogus"]).status.code(), Some(2));
}

#[test]
fn json_mirrors_text() {
    let path = core_fixture("short_lists.txt");
    let doc: serde_json::Value = serde_json::from_str(&stdout(&smp(&["solve", "--json", &path]))).unwrap();
    let pairs = doc["pairs"].as_array().unwrap();
    let text = stdout(&smp(&["solve", &path]));
    assert_eq!(pairs.len(), text.lines().count());
    for (p, line) in pairs.iter().zip(text.lines()) {
        assert_eq!(format!("{} {}", p[0].as_str().unwrap(), p[1].as_str().unwrap()), line);
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["oracle", "atlas", "--space", "all", &core_fixture("tied_boy.txt")];
    assert_eq!(smp(&args).stdout, smp(&args).stdout);
}
