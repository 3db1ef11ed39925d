use std::path::PathBuf;
use std::process::Command;

use wheelerkit::cli::{dispatch, CommandResult};
use wheelerkit::{fixtures, language_equal, parse_automaton};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> CommandResult {
    dispatch(args.iter().copied())
}

#[test]
fn check_dfa_fig1_prints_the_only_order() {
    let r = run(&["check-dfa", &fixture("fig1.aut")]);
    assert_eq!(r.code, 0, "{}", r.render());
    assert_eq!(r.get("verdict"), Some("wheeler"));
    assert_eq!(r.get("order"), Some("q0 q1 q2 q3 q4 q5"));
    assert!(r.text.starts_with("Wheeler\nq0\nq1\n"));
}

#[test]
fn check_dfa_fig2_reports_condition_ii_on_c_edges() {
    let r = run(&["check-dfa", &fixture("fig2.aut")]);
    assert_eq!(r.code, 1);
    assert_eq!(r.get("verdict"), Some("not-wheeler"));
    assert_eq!(r.get("violation"), Some("ConditionII"));
    assert!(r.get("edge1").unwrap().contains("-c->"));
    assert!(r.get("edge2").unwrap().contains("-c->"));
}

#[test]
fn check_dfa_rejects_nfa_input() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("n.aut");
    std::fs::write(&p, "alphabet a\nstates 3\ninitial 0\nfinal 1\nedge 0 a 1\nedge 0 a 2\n").unwrap();
    let r = run(&["check-dfa", p.to_str().unwrap()]);
    assert_eq!(r.code, 3);
    let r = run(&["check-nfa", p.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.render());
}

#[test]
fn check_nfa_verdicts_and_budget() {
    assert_eq!(run(&["check-nfa", &fixture("fig1.aut")]).code, 0);
    assert_eq!(run(&["check-nfa", &fixture("fig2.aut")]).code, 1);
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("g.aut");
    let p = p.to_str().unwrap();
    assert_eq!(run(&["reduce", "nfa-to-gw", &fixture("fig1.aut"), "-o", p]).code, 0);
    assert_eq!(run(&["check-nfa", p]).code, 0);
    std::fs::write(p, "alphabet a\nstates 3\ninitial 0\nfinal 1 2\nedge 0 a 1\nedge 0 a 2\n").unwrap();
    assert_eq!(run(&["check-nfa", p, "--budget", "1"]).code, 0);
    let r = run(&["check-nfa", p, "--budget", "0"]);
    assert_eq!(r.code, 2, "{}", r.render());
    assert_eq!(r.get("verdict"), Some("budget-exceeded"));
}

#[test]
fn check_lang_fig3b_gives_the_small_witness() {
    let r = run(&["check-lang", &fixture("fig3b.aut"), "--method", "both"]);
    assert_eq!(r.code, 1, "{}", r.render());
    assert_eq!(r.get("mu"), Some("a"));
    assert_eq!(r.get("nu"), Some("b"));
    assert_eq!(r.get("gamma"), Some("c"));
    assert_eq!(r.get("witness_valid"), Some("true"));
    assert!(r.text.contains("time:"));
}

#[test]
fn check_lang_fig3a_is_wheeler_with_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.aut");
    for method in ["witness", "construct", "both"] {
        let r = run(&["check-lang", &fixture("fig3a.aut"), "--method", method, "-o", out.to_str().unwrap()]);
        assert_eq!(r.code, 0, "{}", r.render());
        assert_eq!(r.get("verdict"), Some("wheeler"));
    }
    let w = parse_automaton(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(w.state_count(), 6);
}

#[test]
fn check_lang_caps_and_nfa_flag() {
    let r = run(&["check-lang", &fixture("fig3a.aut"), "--method", "witness", "--caps", "cycle=0"]);
    assert_eq!(r.code, 2);
    assert_eq!(r.get("verdict"), Some("bounded-wheeler"));
    assert_eq!(run(&["check-lang", &fixture("fig3a.aut"), "--caps", "bogus=1"]).code, 3);
    let r = run(&["check-lang", &fixture("fig2.aut"), "--nfa"]);
    assert_eq!(r.code, 1);
}

#[test]
fn min_wdfa_of_fig3a_is_fig1() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.aut");
    let r = run(&["min-wdfa", &fixture("fig3a.aut"), "-o", out.to_str().unwrap(), "--depth", "20"]);
    assert_eq!(r.code, 0, "{}", r.render());
    assert_eq!(r.get("wdfa_states"), Some("6"));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("# state representatives"));
    assert!(text.contains("# q5 df"));
    let w = parse_automaton(&text).unwrap();
    assert!(language_equal(&w, &fixtures::fig1()));
}

#[test]
fn min_wdfa_refuses_non_wheeler_language() {
    let r = run(&["min-wdfa", &fixture("fig3b.aut")]);
    assert_eq!(r.code, 1, "{}", r.render());
    assert_eq!(r.get("verdict"), Some("not-wheeler"));
}

#[test]
fn check_gw_queries() {
    let r = run(&["check-gw", &fixture("fig2.aut"), "--automaton"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.get("order"), Some("a c b f"));
    let r = run(&["check-gw", &fixture("fig3a.aut"), "--language"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.get("order"), Some("a c d f"));
    let r = run(&["check-gw", &fixture("star_free_not_gw.aut"), "--language"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.get("verdict"), Some("not-gw"));
    assert_eq!(run(&["check-gw", "nonexistent.aut", "--language"]).code, 3);
    assert_eq!(run(&["check-gw", &fixture("fig2.aut")]).code, 3);
    assert_eq!(run(&["check-gw", &fixture("fig2.aut"), "--automaton", "--language"]).code, 3);
}

#[test]
fn solve_betweenness_fixtures() {
    let r = run(&["solve-betweenness", &fixture("betweenness_sat.btw")]);
    assert_eq!(r.code, 0);
    assert_eq!(r.get("order"), Some("y1 y2 y3"));
    let r = run(&["solve-betweenness", &fixture("betweenness_unsat.btw")]);
    assert_eq!(r.code, 1);
    assert_eq!(run(&["solve-betweenness", &fixture("fig1.aut")]).code, 3);
}

#[test]
fn reduce_writes_gadgets() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.aut");
    let o = out.to_str().unwrap();
    let r = run(&["reduce", "universality", &fixture("universal_d.aut"), "-o", o]);
    assert_eq!(r.code, 0, "{}", r.render());
    assert_eq!(r.get("symbols_added"), Some("3"));
    parse_automaton(&std::fs::read_to_string(&out).unwrap()).unwrap();

    let r = run(&["reduce", "nfa-to-gw", &fixture("fig1.aut"), "-o", o]);
    assert_eq!(r.code, 0);
    assert_eq!(r.get("states_added"), Some("23"));

    let r = run(&["reduce", "betweenness", &fixture("betweenness_sat.btw"), "-o", o]);
    assert_eq!(r.code, 0);
    assert_eq!(r.get("states"), Some("11"));
    let r = run(&["check-gw", o, "--automaton"]);
    assert_eq!(r.code, 0);

    assert_eq!(run(&["reduce", "nfa-to-gw", &fixture("universal_d.aut")]).code, 3);
    assert_eq!(run(&["reduce", "sideways", &fixture("fig1.aut")]).code, 3);
}

#[test]
fn export_dot_with_and_without_order() {
    let r = run(&["export-dot", &fixture("fig1.aut")]);
    assert_eq!(r.code, 0);
    assert!(r.text.starts_with("digraph"));
    let r = run(&["export-dot", &fixture("fig1.aut"), "--with-order"]);
    assert!(r.text.contains("#5"));
    let r = run(&["export-dot", &fixture("fig2.aut"), "--with-order"]);
    assert_eq!(r.code, 1);
}

#[test]
fn malformed_input_and_unknown_commands() {
    assert_eq!(run(&["frobnicate"]).code, 3);
    assert_eq!(run(&[]).code, 3);
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.aut");
    for text in [
        "",
        "alphabet a\nstates x\n",
        "alphabet a\nstates 2\ninitial 5\nfinal\n",
        "alphabet a\nstates 2\ninitial 0\nfinal 1\nedge 0 z 1\n",
        "\u{0}\u{1}",
    ] {
        std::fs::write(&p, text).unwrap();
        for cmd in ["check-dfa", "check-nfa", "check-lang", "min-wdfa", "export-dot"] {
            let r = run(&[cmd, p.to_str().unwrap()]);
            assert_eq!(r.code, 3, "{cmd} on {text:?}: {}", r.render());
        }
    }
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn structured_blocks_are_deterministic() {
    for args in [
        vec!["check-dfa", "fig2.aut"],
        vec!["check-lang", "fig3b.aut"],
        vec!["check-gw", "fig2.aut", "--automaton"],
        vec!["min-wdfa", "fig3a.aut"],
    ] {
        let path = fixture(args[1]);
        let mut a = args.clone();
        a[1] = &path;
        let x = run(&a);
        let y = run(&a);
        assert_eq!(x.structured, y.structured);
        let block = x.render();
        let tail = block.split("---\n").nth(1).unwrap();
        assert!(tail.lines().all(|l| l.split_once(": ").is_some()), "{tail}");
    }
}

#[test]
fn binary_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_wheelerkit");
    let out = Command::new(exe).args(["check-dfa", &fixture("fig1.aut")]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("---\nverdict: wheeler\n"));
    let out = Command::new(exe).args(["check-dfa", &fixture("fig2.aut")]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(exe).args(["check-gw", "nonexistent.aut", "--language"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
}
