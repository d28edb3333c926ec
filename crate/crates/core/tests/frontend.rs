use proptest::prelude::*;
use tlwb_core::adqbf_eval::eval_adqbf;
use tlwb_core::error::ParseErrorKind;
use tlwb_core::formula::{AdqbfInstance, BlockKind, FuncSymbol, PropFormula, PropVar, So2Formula, TeamFormula};
use tlwb_core::frontend::gen::{self, AtomMix, GenConfig};
use tlwb_core::frontend::{generate, parse, parse_adqbf, parse_so2, parse_team, print, Logic, Value};

fn v(s: &str) -> PropVar {
    PropVar::new(s)
}

#[test]
fn so2_example_parses_to_its_tree() {
    let f = FuncSymbol::new("f", 1);
    let x = So2Formula::var("x");
    let expected = So2Formula::exists(
        f.clone(),
        So2Formula::forall(FuncSymbol::new("x", 0), So2Formula::iff(So2Formula::apply(f, vec![x.clone()]), So2Formula::not(x))),
    );
    assert_eq!(parse_so2("E f/1. A x. (f(x) <-> -x)").unwrap(), expected);
}

#[test]
fn adqbf_example_parses_and_is_true() {
    let inst = parse_adqbf("A x ; U y{x} E z{x} ; (-y <-> z)").unwrap();
    let expected = AdqbfInstance::new(
        vec![v("x")],
        vec![
            tlwb_core::formula::Block::new(BlockKind::Union, [(v("y"), vec![v("x")])]),
            tlwb_core::formula::Block::new(BlockKind::Exists, [(v("z"), vec![v("x")])]),
        ],
        PropFormula::iff(PropFormula::neg("y"), PropFormula::pos("z")),
    )
    .unwrap();
    assert_eq!(inst, expected);
    assert!(eval_adqbf(&inst).unwrap());
}

#[test]
fn strong_negation_over_binary_dep() {
    assert_eq!(parse_team("~ dep(p, q)").unwrap(), TeamFormula::tilde(TeamFormula::dep(vec![v("p")], v("q"))));
}

#[test]
fn errors_carry_kind_and_span() {
    let e = parse_so2("E f/1. f(x, y)").unwrap_err();
    assert!(matches!(e.kind, ParseErrorKind::Arity(_)));
    assert_eq!((e.span.begin, e.span.end), (7, 14));
    let e = parse_adqbf("A p q p ; E r{} ; r").unwrap_err();
    assert!(matches!(e.kind, ParseErrorKind::DuplicateQuantifiedVariable(ref n) if n == "p"));
    let e = parse(Logic::Prop, "p & $").unwrap_err();
    assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
    assert_eq!(e.span.begin, 4);
    assert!(parse(Logic::Modal, "p -> q").is_err());
    assert!(parse(Logic::Team, "inc(p, q, r)").is_err());
}

#[test]
fn comments_and_layout_are_ignored() {
    let a = parse_so2("# a sentence\nE x. # binder\n  (x | -x)\n").unwrap();
    assert_eq!(a, parse_so2("E x. (x | -x)").unwrap());
}

fn round_trip(value: &Value) {
    let text = print(value);
    let back = parse(value.logic(), &text).unwrap_or_else(|e| panic!("{text}: {e}"));
    assert_eq!(&back, value, "{text}");
}

#[test]
fn round_trip_over_generated_values() {
    for logic in Logic::ALL {
        for seed in 0..10_000 {
            let cfg = GenConfig { gdas: vec![("g".into(), 2)], mix: AtomMix { dep: 1, inc: 1, gda: 1 }, ..GenConfig::new(logic, seed, 1 + (seed % 12) as usize) };
            round_trip(&generate(&cfg));
        }
    }
}

#[test]
fn generation_is_deterministic() {
    let cfg = GenConfig::new(Logic::So2, 0, 5);
    let first = print(&generate(&cfg));
    for _ in 0..5 {
        assert_eq!(print(&generate(&cfg)), first);
    }
}

#[test]
fn generated_instances_satisfy_invariants() {
    for seed in 1..=100 {
        let inst = gen::adqbf(&GenConfig::new(Logic::Adqbf, seed, 6));
        let rebuilt = AdqbfInstance::new(inst.universals().to_vec(), inst.blocks().to_vec(), inst.matrix().clone()).unwrap();
        assert_eq!(rebuilt, inst);
        assert!(inst.blocks().windows(2).all(|w| w[0].kind != w[1].kind));
        for (_, qv) in inst.block_vars() {
            assert!(qv.deps.iter().all(|d| inst.universals().contains(d)));
        }
    }
}

#[test]
fn atom_mix_without_inc_has_no_inc() {
    for seed in 0..500 {
        let cfg = GenConfig { mix: AtomMix { dep: 1, inc: 0, gda: 0 }, ..GenConfig::new(Logic::Team, seed, 10) };
        let phi = gen::team(&cfg);
        let mut inc = false;
        phi.visit(&mut |n| inc |= matches!(n, TeamFormula::Inc(..)));
        assert!(!inc, "{}", print(&Value::Team(phi)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn arbitrary_bytes_never_panic(bytes in proptest::collection::vec(any::<u8>(), 0..64)) {
        let text = String::from_utf8_lossy(&bytes);
        for logic in Logic::ALL {
            if let Err(e) = parse(logic, &text) {
                prop_assert!(e.span.begin <= e.span.end && e.span.end <= text.len());
            }
        }
    }

    #[test]
    fn token_soup_never_panics(words in proptest::collection::vec(
        prop::sample::select(vec!["E", "A", "U", "p", "f", "/", "1", ".", "(", ")", "&", "|", "->", "<->", "-", "~",
            ";", "{", "}", ",", "dep", "inc", "gda", ":", "<>", "[]", "#", "\n"]), 0..24)) {
        let text = words.join(" ");
        for logic in Logic::ALL {
            if let Ok(value) = parse(logic, &text) {
                round_trip(&value);
            }
        }
    }
}
