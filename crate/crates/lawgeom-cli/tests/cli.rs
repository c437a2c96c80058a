//! End-to-end tests of the command-line surface: canonical invocations,
//! output bytes, and the exit-code contract (0 ok, 1 failed verification
//! or inequality, 2 usage/parse, 3 undefined action or probe budget).

use std::process::{Command, Output};

fn lawgeom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lawgeom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn apply_rotates_the_example_tree() {
    let out = lawgeom(&["apply", "--tree", "(* (((* *) *) (* *)))", "--word", "A[]"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "((* ((* *) *)) (* *))\n");
}

#[test]
fn eq_accepts_the_hexagon_pair() {
    let out = lawgeom(&["eq", "--regime", "V", "A[] C[] A[]", "C[1] A[] C[0]"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "true\n");
}

#[test]
fn eq_rejects_distinct_elements_with_exit_one() {
    let out = lawgeom(&["eq", "--regime", "F", "A[]", "A[1]"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("false\n"));
    assert!(stdout(&out).contains("witness"));
}

#[test]
fn eq_enforces_the_regime_alphabet() {
    let out = lawgeom(&["eq", "--regime", "F", "C[]", "C[]"]);
    assert_eq!(out.status.code(), Some(2));
    let braided = lawgeom(&["eq", "--regime", "BV", "A[]", "A[]"]);
    assert_eq!(braided.status.code(), Some(2));
}

#[test]
fn orbit_counts_the_four_leaf_vine() {
    let out = lawgeom(&["orbit", "--tree", "(* (* (* *)))", "--gens", "A", "--count"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "5\n");
}

#[test]
fn seed_prints_source_and_target() {
    let out = lawgeom(&["seed", "A[]"]);
    assert_eq!(stdout(&out), "(1 (2 3)) -> ((1 2) 3)\n");
    let porcelain = lawgeom(&["seed", "A[]", "--porcelain"]);
    assert_eq!(stdout(&porcelain), "SEED;(1 (2 3));((1 2) 3)\n");
}

#[test]
fn sorting_words_match_the_reference_spellings() {
    let c = lawgeom(&["cword", "--sets", "2,5,6;1,3,4", "--kind", "c"]);
    assert_eq!(stdout(&c), "s4 c5 s3 s4 s1 s2 s3\n");
    let s = lawgeom(&["cword", "--sets", "2,5,6;1,3,4", "--kind", "s"]);
    assert_eq!(stdout(&s), "s4 s5 s3 s4 s1 s2 s3\n");
}

#[test]
fn translate_emits_an_indexed_word_equal_to_the_address_letter() {
    let out = lawgeom(&["translate", "--addr", "01100"]);
    assert_eq!(out.status.code(), Some(0));
    let word = stdout(&out);
    let eq = lawgeom(&["eq", "--regime", "F", word.trim(), "A[01100]"]);
    assert_eq!(eq.status.code(), Some(0), "translated word equals the address letter");
}

#[test]
fn verify_family_is_clean_and_porcelain_is_line_oriented() {
    let out = lawgeom(&["verify", "--family", "R_AC", "--addr-len", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("all hold"));
    let porcelain = lawgeom(&["verify", "--family", "R_ac", "--porcelain"]);
    assert_eq!(porcelain.status.code(), Some(0));
    for line in stdout(&porcelain).lines() {
        assert!(line.starts_with("R_ac;"), "{line}");
        assert!(line.ends_with(";SEED-EQUAL"), "{line}");
    }
}

#[test]
fn verify_braided_family_uses_the_representation() {
    let out = lawgeom(&["verify", "--family", "R_asigma", "--index", "3", "--porcelain"]);
    assert_eq!(out.status.code(), Some(0));
    for line in stdout(&out).lines() {
        assert!(line.ends_with(";BV-EQUAL"), "{line}");
    }
}

#[test]
fn ld_check_surfaces_the_conjugation_involutivity_witness() {
    let out = lawgeom(&["ld", "check", "--system", "conj", "--law", "involutory"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("x1^2 x2 x1^-2"), "{}", stdout(&out));
    let trivial = lawgeom(&["ld", "check", "--system", "trivial", "--law", "involutory"]);
    assert_eq!(trivial.status.code(), Some(0));
}

#[test]
fn bv_equality_and_representation_examples() {
    let eq = lawgeom(&["bv", "eq", "b1 b2 b1", "b2 b1 b2"]);
    assert_eq!(eq.status.code(), Some(0));
    let torsion = lawgeom(&["bv", "eq", "b1 b1", ""]);
    assert_eq!(torsion.status.code(), Some(1));
    let psi = lawgeom(&["bv", "psi", "b1", "--gen", "e"]);
    assert_eq!(stdout(&psi), "xe x1 xe^-1\n");
    let lifted = lawgeom(&["bv", "psi", "b1", "--gen", "1"]);
    assert_eq!(stdout(&lifted), "xe\n");
    let bracket = lawgeom(&["bv", "bracket", "a1", ""]);
    assert_eq!(stdout(&bracket), "a1 b1 a2'\n");
    let spine = lawgeom(&["bv", "f", r#"("a1" ("b1" "a2"))"#]);
    assert_eq!(stdout(&spine), "a1 b2\n");
}

#[test]
fn plmap_prints_the_basic_breakpoints() {
    let out = lawgeom(&["plmap", "A[]"]);
    assert_eq!(stdout(&out), "0 0\n1/2 1/4\n3/4 1/2\n1 1\n");
    let tsv = lawgeom(&["plmap", "A[]", "--tsv"]);
    assert_eq!(stdout(&tsv), "0\t0\n1/2\t1/4\n3/4\t1/2\n1\t1\n");
}

#[test]
fn render_draws_the_pentagon_and_the_trivial_graphs() {
    let pentagon = stdout(&lawgeom(&["render", "--tree", "(* (* (* *)))", "--gens", "A"]));
    assert_eq!(pentagon.matches("[label=\"(").count(), 5, "{pentagon}");
    assert_eq!(pentagon.matches(" -- ").count(), 5, "{pentagon}");
    let segment = stdout(&lawgeom(&["render", "--tree", "(* (* *))", "--gens", "A"]));
    assert_eq!(segment.matches("[label=\"(").count(), 2);
    assert_eq!(segment.matches(" -- ").count(), 1);
    let point = stdout(&lawgeom(&["render", "--tree", "*", "--gens", "A"]));
    assert_eq!(point.matches("label").count(), 1);
    assert_eq!(point.matches(" -- ").count(), 0);
}

#[test]
fn error_exit_codes_follow_the_contract() {
    let undefined = lawgeom(&["apply", "--tree", "(* *)", "--word", "A[]"]);
    assert_eq!(undefined.status.code(), Some(3));
    let unreadable = lawgeom(&["bv", "psi", "a1", "--gen", "e"]);
    assert_eq!(unreadable.status.code(), Some(3));
    let parse = lawgeom(&["seed", "Q[]"]);
    assert_eq!(parse.status.code(), Some(2));
    let usage = lawgeom(&["no-such-command"]);
    assert_eq!(usage.status.code(), Some(2));
}

#[test]
fn identical_invocations_produce_identical_bytes() {
    let args = [
        "verify", "--family", "R_AS", "--addr-len", "1", "--ld", "conj", "--samples", "10",
        "--rng", "42", "--porcelain",
    ];
    let first = lawgeom(&args);
    let second = lawgeom(&args);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.status.code(), second.status.code());
}
