use std::path::{Path, PathBuf};
use std::process::Command;

use polybasis::{parse_zigzag, format_zigzag, CertificateFile, SystemFile, WitnessFile};
use polybasis_core::{
    basis_witness, certify_closed, free_group_system, synthesize_lc, RewritingSystem,
};

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_polybasis"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn tmp(dir: &tempfile::TempDir, name: &str) -> String {
    let p: PathBuf = dir.path().join(name);
    p.to_string_lossy().into_owned()
}

fn fg(path: &str) -> RewritingSystem {
    SystemFile::load(path).unwrap().to_system().unwrap()
}

#[test]
fn system_files_round_trip() {
    for name in ["free_group_1.toml", "free_group_2.toml", "fork.toml", "cycle.toml", "diamond.toml"] {
        let file = SystemFile::load(&data(name)).unwrap();
        let again = SystemFile::parse(&file.to_toml()).unwrap();
        assert_eq!(file, again, "{name}");
        let system = file.to_system().unwrap();
        assert_eq!(SystemFile::from_system(&system), file, "{name}");
    }
    let generated = free_group_system(&["a", "b"]).unwrap();
    assert_eq!(SystemFile::from_system(&generated), SystemFile::load(&data("free_group_2.toml")).unwrap());
}

#[test]
fn invalid_system_files_are_parse_errors() {
    let cases = [
        "[system]\nname='x'\nmode='graph'\nobjects=['a']\n[[steps]]\nname='f'\nsrc='a'\ntgt='q'\n[order]\nkind='finite-graph-reachability'\n",
        "[system]\nname='x'\nmode='srs'\nalphabet=['a']\n[order]\nkind='explicit-finite-order'\n",
        "[system]\nname='x'\nmode='graph'\nobjects=['a;b']\n[order]\nkind='finite-graph-reachability'\n",
        "[system]\nname='x'\nmode='srs'\nalphabet=['a']\nobjects=['a']\n[order]\nkind='rule-length-decreasing'\n",
        "[system]\nname='x'\nmode='srs'\nalphabet=['a']\n[order]\nkind='rule-length-decreasing'\nextra=1\n",
    ];
    for text in cases {
        let r = SystemFile::parse(text).and_then(|f| f.to_system());
        match r {
            Err(e) => assert_eq!(e.exit_code(), 2, "{text}"),
            Ok(_) => panic!("accepted:\n{text}"),
        }
    }
}

#[test]
fn zigzag_literals_round_trip() {
    let sys = fg(&data("free_group_2.toml"));
    for text in [
        "\"abBA\" ; bB@1, aA@0",
        "\"\"",
        "\"\" ; aA@0!, aA@0",
        "\"abBA\" ; bB@1, aA@0, Aa@0!, Aa@0",
    ] {
        let z = parse_zigzag(&sys, text).unwrap();
        assert_eq!(format_zigzag(&sys, &z), text);
    }
    // whitespace is not significant
    let z = parse_zigzag(&sys, "  \"abBA\";bB@1 ,aA@0 ").unwrap();
    assert_eq!(format_zigzag(&sys, &z), "\"abBA\" ; bB@1, aA@0");

    let graph = fg(&data("diamond.toml"));
    let z = parse_zigzag(&graph, "y ; xy!, xz").unwrap();
    assert_eq!(format_zigzag(&graph, &z), "y ; xy!, xz");
}

#[test]
fn literal_errors_name_the_first_bad_step() {
    let sys = fg(&data("free_group_2.toml"));
    let e = parse_zigzag(&sys, "\"abBA\" ; bB@1, bB@0, aA@0").unwrap_err();
    assert!(e.to_string().contains("step 2 `bB@0`"), "{e}");
    let e = parse_zigzag(&sys, "\"ab\" ; xx@0").unwrap_err();
    assert!(e.to_string().contains("step 1"), "{e}");
    let e = parse_zigzag(&sys, "\"ab\" ; aA").unwrap_err();
    assert!(e.to_string().contains("position"), "{e}");
    assert!(parse_zigzag(&sys, "\"abq\"").is_err());
    assert!(parse_zigzag(&sys, "abBA").is_err());
}

#[test]
fn witness_files_round_trip() {
    let sys = free_group_system(&["a", "b"]).unwrap();
    let lc = synthesize_lc(&sys).unwrap();
    let u = parse_zigzag(&sys, "\"abBA\" ; bB@1, aA@0").unwrap();
    let v = parse_zigzag(&sys, "\"abBA\" ; bB@1, aA@0, Aa@0!, Aa@0").unwrap();
    let w = basis_witness(&sys, &lc, &u, &v).unwrap();
    let file = WitnessFile::from_basis(&sys, &w);
    let text = file.render(&sys);
    assert!(text.starts_with("POLYBASIS-WITNESS 1\n"));
    let back = WitnessFile::parse(&sys, &text).unwrap();
    assert_eq!(back, file);
    assert_eq!(back.rewrite(), w.witness);
    assert_eq!(back.render(&sys), text);
}

#[test]
fn certificate_files_round_trip() {
    let sys = free_group_system(&["a"]).unwrap();
    let lc = synthesize_lc(&sys).unwrap();
    for lit in ["\"a\" ; aA@0!, Aa@1", "\"aA\"", "\"aA\" ; aA@0, Aa@0!, Aa@0, aA@0!"] {
        let u = parse_zigzag(&sys, lit).unwrap();
        let root = certify_closed(&sys, &lc, &u).unwrap();
        let file = CertificateFile {
            system: sys.name().to_string(),
            goal: u,
            root,
        };
        let text = file.render(&sys);
        assert!(text.starts_with("POLYBASIS-CERT 1\n"));
        let back = CertificateFile::parse(&sys, &text).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.render(&sys), text);
    }
}

#[test]
fn check_exit_codes() {
    let (code, out, _) = run(&["check", &data("free_group_2.toml")]);
    assert_eq!(code, 0);
    let partial = out.lines().filter(|l| l.trim_start().starts_with("PartialOverlap")).count();
    assert_eq!(partial, 4);
    assert!(out.contains("local confluence: PASS"));

    let (code, out, _) = run(&["check", &data("cycle.toml")]);
    assert_eq!(code, 1);
    assert!(out.contains("cycle [x, y, x]"), "{out}");

    let (code, out, _) = run(&["check", &data("fork.toml")]);
    assert_eq!(code, 1);
    assert!(out.contains("b ⇜ a ⇝ c"), "{out}");

    let dir = tempfile::tempdir().unwrap();
    let bad = tmp(&dir, "bad.toml");
    std::fs::write(&bad, "[system\nname=").unwrap();
    assert_eq!(run(&["check", &bad]).0, 2);
    assert_eq!(run(&["check", &tmp(&dir, "missing.toml")]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
}

#[test]
fn basis_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let sys = data("free_group_2.toml");
    let out = tmp(&dir, "w.txt");
    let (code, _, err) = run(&[
        "basis",
        &sys,
        "\"abBA\" ; bB@1, aA@0",
        "\"abBA\" ; bB@1, aA@0, Aa@0!, Aa@0",
        "-o",
        &out,
    ]);
    assert_eq!(code, 0, "{err}");
    let (code, stdout, _) = run(&["verify", &sys, &out]);
    assert_eq!(code, 0);
    assert!(stdout.contains("PASS"));

    // deleting one cell breaks the chain
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let first_cell = lines.iter().position(|l| l.starts_with("cell ")).unwrap();
    let mut cut: Vec<&str> = lines[..first_cell].to_vec();
    cut.extend_from_slice(&lines[first_cell + 5..]);
    let broken = tmp(&dir, "broken.txt");
    std::fs::write(&broken, cut.join("\n")).unwrap();
    let (code, stdout, _) = run(&["verify", &sys, &broken]);
    assert_eq!(code, 1);
    assert!(stdout.contains("FAIL at cell 0"), "{stdout}");

    // garbage is a parse error
    std::fs::write(&broken, "POLYBASIS-WITNESS 1\nsystem free-group(a,b)\nu nonsense\n").unwrap();
    assert_eq!(run(&["verify", &sys, &broken]).0, 2);
    std::fs::write(&broken, "hello\n").unwrap();
    assert_eq!(run(&["verify", &sys, &broken]).0, 2);

    // a witness for another system is rejected
    assert_eq!(run(&["verify", &data("free_group_1.toml"), &out]).0, 2);
}

#[test]
fn basis_edge_cases() {
    let dir = tempfile::tempdir().unwrap();
    let sys = data("free_group_2.toml");
    let out = tmp(&dir, "e.txt");
    assert_eq!(run(&["basis", &sys, "\"\"", "\"\"", "-o", &out]).0, 0);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(!text.contains("cell"));
    assert_eq!(run(&["verify", &sys, &out]).0, 0);

    let (code, _, err) = run(&["basis", &sys, "\"aA\"", "\"\"", "-o", &out]);
    assert_eq!(code, 1);
    assert!(err.contains("not parallel"), "{err}");
    assert_eq!(run(&["basis", &data("fork.toml"), "a", "a", "-o", &out]).0, 1);
    assert_eq!(run(&["basis", &sys, "\"aA\" ; aA@1", "\"\"", "-o", &out]).0, 2);
}

#[test]
fn certify_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let sys = data("free_group_1.toml");
    let out = tmp(&dir, "c.txt");
    assert_eq!(run(&["certify", &sys, "\"a\" ; aA@0!, Aa@1", "-o", &out]).0, 0);
    assert_eq!(run(&["verify", &sys, &out]).0, 0);

    // change one conclusion
    let text = std::fs::read_to_string(&out).unwrap();
    let tampered = text.replacen("concl \"a\" ; aA@0!, Aa@1\n", "concl \"a\"\n", 1);
    assert_ne!(tampered, text);
    std::fs::write(&out, tampered).unwrap();
    let (code, stdout, _) = run(&["verify", &sys, &out]);
    assert_eq!(code, 1);
    assert!(stdout.contains("FAIL at node"), "{stdout}");

    // open zig-zags cannot be certified
    assert_eq!(run(&["certify", &sys, "\"aA\" ; aA@0", "-o", &out]).0, 1);
}

#[test]
fn graph_mode_commands() {
    let dir = tempfile::tempdir().unwrap();
    let sys = data("diamond.toml");
    let out = tmp(&dir, "w.txt");
    assert_eq!(run(&["basis", &sys, "x ; xy, yw", "x ; xz, zw", "-o", &out]).0, 0);
    assert_eq!(run(&["verify", &sys, &out]).0, 0);
    let (code, stdout, _) = run(&["normalize", &sys, "x"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("normal form: w\nsteps: 2\n"), "{stdout}");
}

#[test]
fn normalize_output() {
    let (code, out, _) = run(&["normalize", &data("free_group_1.toml"), "aAaA"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("normal form: \"\"\nsteps: 2\n"), "{out}");
    let (code, out, _) = run(&["normalize", &data("free_group_1.toml"), "\"aaA\""]);
    assert_eq!(code, 0);
    assert!(out.starts_with("normal form: \"a\"\nsteps: 1\n"), "{out}");
    assert_eq!(run(&["normalize", &data("free_group_1.toml"), "xyz"]).0, 2);
}

#[test]
fn graph_export() {
    let (code, out, _) = run(&["graph", &data("free_group_1.toml"), "--dot", "--max-word-len", "3"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph \"free-group(a)\" {\n"));
    assert!(out.trim_end().ends_with('}'));
    let nodes = out.lines().filter(|l| l.ends_with("\";")).count();
    assert_eq!(nodes, 1 + 2 + 4 + 8);
    assert!(out.contains("\"aAa\" -> \"a\" [label=\"aA@0\"];"));
    assert!(out.contains("\"aAa\" -> \"a\" [label=\"Aa@1\"];"));

    assert_eq!(run(&["graph", &data("free_group_1.toml"), "--dot"]).0, 2);
    let (code, out, _) = run(&["graph", &data("diamond.toml"), "--dot"]);
    assert_eq!(code, 0);
    assert_eq!(out.matches(" -> ").count(), 4);
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let sys = data("free_group_2.toml");
    let (a, b) = (tmp(&dir, "a.txt"), tmp(&dir, "b.txt"));
    for out in [&a, &b] {
        run(&["basis", &sys, "\"aAbB\" ; aA@0, bB@0", "\"aAbB\" ; bB@2, aA@0", "-o", out]);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn step_cap_is_reported_as_measure_violation() {
    let out = Command::new(env!("CARGO_BIN_EXE_polybasis"))
        .args(["normalize", &data("free_group_1.toml"), "aAaA"])
        .env("POLYBASIS_MAX_STEPS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("measure violation"));
}
