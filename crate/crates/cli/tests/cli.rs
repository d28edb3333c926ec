use std::path::PathBuf;
use std::process::{Command, Output};

fn tlwb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tlwb")).args(args).output().unwrap()
}

fn file(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("tlwb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p: PathBuf = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn eval_so2_true_and_false() {
    let t = file("t.so2", "A x. E f/1. (f(x) <-> x)\n");
    let f = file("f.so2", "E f/0. A x. (f <-> x)\n");
    assert_eq!(code(&tlwb(&["eval", "--logic", "so2", &t])), 0);
    assert_eq!(code(&tlwb(&["eval", "--logic", "so2", &f])), 1);
}

#[test]
fn eval_adqbf_respects_dependencies() {
    // y may not see x, so it cannot copy it.
    let blind = file("blind.adqbf", "A x ; E y{} ; x <-> y\n");
    let seeing = file("seeing.adqbf", "A x ; E y{x} ; x <-> y\n");
    assert_eq!(code(&tlwb(&["eval", "--logic", "adqbf", &blind])), 1);
    assert_eq!(code(&tlwb(&["eval", "--logic", "adqbf", &seeing])), 0);
}

#[test]
fn eval_team_on_a_team_file() {
    let phi = file("dep.team", "dep(p; q)\n");
    let functional = file("fun.team", "p q\n00\n11\n");
    let broken = file("broken.team", "p q\n00\n01\n");
    assert_eq!(code(&tlwb(&["eval", "--logic", "team", &phi, "--team", &functional])), 0);
    assert_eq!(code(&tlwb(&["eval", "--logic", "team", &phi, "--team", &broken])), 1);
}

#[test]
fn eval_modal_needs_a_model() {
    let phi = file("m.modal", "<> p\n");
    assert_eq!(code(&tlwb(&["eval", "--logic", "modal", &phi])), 2);
    let model = file("k.kripke", "worlds: a b\nedge: a b\nval: b p\nteam: a\n");
    assert_eq!(code(&tlwb(&["eval", "--logic", "modal", &phi, "--model", &model])), 0);
}

#[test]
fn parse_errors_exit_2_with_location() {
    let bad = file("bad.so2", "A x.\n  (x & )\n");
    let o = tlwb(&["parse", "--logic", "so2", &bad]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.so2:2:"), "{err}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&tlwb(&["eval"])), 2);
    assert_eq!(code(&tlwb(&["eval", "--logic", "klingon", "x"])), 2);
    let t = file("u.so2", "A x. x\n");
    assert_eq!(code(&tlwb(&["translate", "--pass", "no-such-pass", &t])), 2);
    assert_eq!(code(&tlwb(&["eval", "--logic", "so2", "/nonexistent/file"])), 2);
}

#[test]
fn budget_overrun_exits_3() {
    let big = file("big.so2", "A a. A b. A c. A d. A e. E f/5. E g/5. (f(a, b, c, d, e) <-> g(a, b, c, d, e))\n");
    assert_eq!(code(&tlwb(&["eval", "--logic", "so2", &big])), 3);
}

#[test]
fn parse_prints_a_reparseable_canonical_form() {
    let src = file("c.so2", "A x. E f/1. f(x) | -x  # trailing comment\n");
    let o = tlwb(&["parse", "--logic", "so2", &src]);
    assert_eq!(code(&o), 0);
    let printed = String::from_utf8(o.stdout).unwrap();
    let again = file("c2.so2", &printed);
    let o2 = tlwb(&["parse", "--logic", "so2", &again]);
    assert_eq!(String::from_utf8(o2.stdout).unwrap(), printed);
}

#[test]
fn translate_output_preserves_truth() {
    let src = file("tr.adqbf", "A x y ; E z{x} U w{y} ; (z <-> x) | (w <-> y)\n");
    let o = tlwb(&["translate", "--pass", "collapse", &src]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let out = file("tr-out.adqbf", &String::from_utf8(o.stdout).unwrap());
    assert_eq!(code(&tlwb(&["eval", "--logic", "adqbf", &src])), code(&tlwb(&["eval", "--logic", "adqbf", &out])));
}

#[test]
fn difftest_subcommand_reports_success() {
    let o = tlwb(&["difftest", "--pass", "simplify", "--seeds", "20", "--size", "4"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}
