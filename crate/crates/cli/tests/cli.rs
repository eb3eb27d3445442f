use std::io::Write;
use std::process::{Command, Output};

fn ldiip(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ldiip")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn temp_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn parse_prints_the_core_tree() {
    let o = ldiip(&["parse", "[m]a (a knows m)"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "Proves(m, a, Knows(a, m))\n");
    assert_eq!(stdout(&ldiip(&["parse", "true"])), "Proves(a, a, Knows(a, a))\n");
}

#[test]
fn parse_error_reports_the_column() {
    let o = ldiip(&["parse", "[m]a"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("column 5"));
}

#[test]
fn unknown_agent_is_a_syntax_error() {
    assert_eq!(code(&ldiip(&["parse", "[m]c P"])), 1);
    assert_eq!(code(&ldiip(&["--agents", "a,b,c", "parse", "[m]c P"])), 0);
}

#[test]
fn eval_on_a_model_file() {
    let model = temp_file("STATES\ns0 s1\nTRANS\nm a : s0 -> s1\nm a : s1 -> s1\nBASES\na @ s1 : m\nVAL\nP : s1\n");
    let path = model.path().to_str().unwrap();
    let o = ldiip(&["eval", "--model", path, "--state", "s0", "([m]a P) | [m]a ~P"]);
    assert_eq!((code(&o), stdout(&o)), (0, "true\n".to_string()));
    let o = ldiip(&["eval", "--model", path, "--state", "s0", "P"]);
    assert_eq!(stdout(&o), "false\n");
}

#[test]
fn eval_refuses_interface_violations() {
    // a does not know m at the successor.
    let model = temp_file("STATES\ns0 s1\nTRANS\nm a : s0 -> s1\nm a : s1 -> s1\nBASES\nVAL\nP : s1\n");
    let o = ldiip(&["eval", "--model", model.path().to_str().unwrap(), "--state", "s0", "P"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("epistemic image: FAIL"));
}

#[test]
fn eval_on_concrete_states() {
    assert_eq!(stdout(&ldiip(&["eval", "--concrete", "0", "a knows b"])), "false\n");
    assert_eq!(stdout(&ldiip(&["eval", "--concrete", "0", "a knows a"])), "true\n");
    let o = ldiip(&["eval", "--concrete", "recv(a, m, 0)", "--true", "P", "([m]a P) & a knows m"]);
    assert_eq!(stdout(&o), "true\n");
}

#[test]
fn decide_verdicts_and_exit_codes() {
    let o = ldiip(&["decide", "([m]a P) | [m]a ~P"]);
    assert_eq!((code(&o), stdout(&o)), (0, "Valid\n".to_string()));
    let o = ldiip(&["decide", "--max-states", "4", "a knows m -> (([m]a P) -> P)"]);
    assert_eq!((code(&o), stdout(&o)), (0, "ValidUpTo(4)\n".to_string()));
    let o = ldiip(&["decide", "([m]a P) -> [(m,m2)]a P"]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).starts_with("CounterModel at s0\nSTATES\n"));
}

#[test]
fn printed_counter_models_evaluate_false() {
    let formula = "([m]a P) -> P";
    let o = ldiip(&["decide", "--max-states", "4", formula]);
    assert_eq!(code(&o), 3);
    let text = stdout(&o);
    let model = temp_file(text.split_once('\n').unwrap().1);
    let e = ldiip(&["eval", "--model", model.path().to_str().unwrap(), "--state", "s0", formula]);
    assert_eq!(stdout(&e), "false\n");
}

#[test]
fn check_corpus_and_files() {
    let names = stdout(&ldiip(&["check", "--list-corpus"]));
    assert!(names.lines().any(|l| l == "idp-bis"));
    for name in names.lines() {
        assert_eq!(code(&ldiip(&["check", "--corpus", name])), 0, "{name}");
    }
    let shipped = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/corpus/idp-bis.drv");
    let o = ldiip(&["check", shipped]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("OK:"));
}

#[test]
fn forged_modus_ponens_names_the_line() {
    let drv = temp_file("premises:\n1. P -> P ; taut\n2. P ; mp:1,1\n");
    let o = ldiip(&["check", drv.path().to_str().unwrap()]);
    assert_eq!(code(&o), 4);
    assert!(stdout(&o).starts_with("FAIL at line 2"), "{}", stdout(&o));
}

#[test]
fn config_file_sets_agents_and_gamma1() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("k.schemas"), "Own: $a knows $M\n").unwrap();
    std::fs::write(dir.path().join("ldiip.conf"), "agents = a, c\ngamma1 = k.schemas\n").unwrap();
    let drv = dir.path().join("own.drv");
    std::fs::write(&drv, "1. c knows c ; g1:Own\n").unwrap();
    let conf = dir.path().join("ldiip.conf");
    let o = ldiip(&["--config", conf.to_str().unwrap(), "check", drv.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(code(&ldiip(&["check", drv.to_str().unwrap()])), 1);
}

#[test]
fn demo_reports_both_decisions() {
    let o = ldiip(&["demo-accountability"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("M is an epistemic decider"));
    assert!(text.contains("M proves Correct_b (positive decision)"));
    let text = stdout(&ldiip(&["demo-accountability", "--correct", "false"]));
    assert!(text.contains("M proves ~Correct_b (negative decision)"));
    let text = stdout(&ldiip(&["demo-accountability", "--agent", "c"]));
    assert!(text.contains("role: auditability (c judges b)"));
}

#[test]
fn output_is_deterministic() {
    for args in [&["decide", "([m]a P) -> [(m,m2)]a P"][..], &["demo-accountability"], &["check", "--corpus", "five-law", "--print"]] {
        assert_eq!(ldiip(args).stdout, ldiip(args).stdout);
    }
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&ldiip(&["eval", "P"])), 1);
    assert_eq!(code(&ldiip(&["frobnicate"])), 1);
    assert_eq!(code(&ldiip(&["--help"])), 0);
}
