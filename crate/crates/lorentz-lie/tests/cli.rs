use std::path::PathBuf;
use std::process::{Command, Output};

use lorentz_lie::catalog::abelian_lorentzian;
use lorentz_lie::cli::{analyze, emit_report, Format};
use lorentz_lie::families::{a2_example, a3_example, example_5d, example_6d, sl2_harmonic, RootSign};
use lorentz_lie::liealg::PseudoEuclideanLieAlgebra;
use lorentz_lie::scalar::{Field, Rational, Tolerance};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lorentz-lie")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lorentz-lie-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn kv(text: &str, key: &str) -> Option<String> {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')).map(str::to_string))
}

fn analyze_via_cli(family: &[&str], tag: &str) -> String {
    let mut args = vec!["family"];
    args.extend_from_slice(family);
    let out = bin(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let p = scratch(&format!("{tag}.def"), &stdout(&out));
    let out = bin(&["analyze", p.to_str().unwrap(), "--format", "kv"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    stdout(&out)
}

fn direct<T: Field>(g: &PseudoEuclideanLieAlgebra<T>) -> String {
    emit_report(&analyze(g, &Tolerance::default()).unwrap(), Format::Kv)
}

#[test]
fn family_definitions_round_trip() {
    let cases: Vec<(&[&str], String)> = vec![
        (&["sl2"], direct(&sl2_harmonic(&Rational::from_i64(-1)).unwrap())),
        (&["a2"], direct(&a2_example().unwrap().algebra)),
        (&["a3"], direct(&a3_example(RootSign::Plus, 0.0).unwrap().algebra)),
        (&["ex5d"], direct(&example_5d(RootSign::Plus).unwrap().family.algebra)),
        (&["ex5d", "--sign", "minus"], direct(&example_5d(RootSign::Minus).unwrap().family.algebra)),
        (&["ex6d"], direct(&example_6d(RootSign::Plus, 0.0).unwrap().family.algebra)),
    ];
    for (i, (args, expected)) in cases.iter().enumerate() {
        let got = analyze_via_cli(args, &format!("rt{i}"));
        assert_eq!(&got, expected, "family {args:?}");
    }
}

#[test]
fn other_families_analyze() {
    for (i, args) in [&["zzcore", "--alpha", "-2", "--epsilon", "1"][..], &["zzcore", "--alpha", "-1", "--epsilon", "-1"], &["zzprod"]]
        .iter()
        .enumerate()
    {
        let out = analyze_via_cli(args, &format!("other{i}"));
        assert_eq!(kv(&out, "harmonic").as_deref(), Some("true"), "{args:?}\n{out}");
    }
}

#[test]
fn documented_key_values() {
    let sl2 = analyze_via_cli(&["sl2"], "doc-sl2");
    assert_eq!(kv(&sl2, "ricci_type").as_deref(), Some("ZZbar"));
    assert_eq!(kv(&sl2, "ricci_type.b").as_deref(), Some("0.86602540378443865"));
    assert_eq!(kv(&sl2, "harmonic.defect").as_deref(), Some("0"));

    let p = scratch("abelian.def", "basis = e1 e2 e3\nmetric = [[1,0,0],[0,1,0],[0,0,-1]]\n");
    let out = stdout(&bin(&["analyze", p.to_str().unwrap(), "--format", "kv"]));
    assert_eq!(kv(&out, "einstein").as_deref(), Some("true"));
    assert_eq!(kv(&out, "einstein.alpha").as_deref(), Some("0"));
    assert_eq!(kv(&out, "harmonic").as_deref(), Some("true"));
    assert_eq!(kv(&out, "ricci_parallel").as_deref(), Some("true"));
    assert_eq!(out, direct(&abelian_lorentzian().unwrap()));
}

#[test]
fn six_dimensional_example_is_a3() {
    let out = analyze_via_cli(&["ex6d"], "ex6d-tag");
    assert_eq!(kv(&out, "ricci_type").as_deref(), Some("A3"));
    assert_eq!(kv(&out, "ricci_type.a").as_deref(), Some("0"));
    assert_eq!(kv(&out, "harmonic").as_deref(), Some("true"));
    assert_eq!(kv(&out, "ricci_parallel").as_deref(), Some("false"));
}

#[test]
fn kv_output_is_stable() {
    let a = analyze_via_cli(&["ex5d"], "stable-a");
    let b = analyze_via_cli(&["ex5d"], "stable-b");
    assert_eq!(a, b);
}

#[test]
fn exit_codes() {
    let ok = scratch("ok.def", "basis = a b c\nmetric = [[1,0,0],[0,1,0],[0,0,-1]]\nbracket a b = c\n");
    assert_eq!(bin(&["analyze", ok.to_str().unwrap()]).status.code(), Some(0));

    let bad = scratch("bad.def", "basis = a b c\nmetric = [[1,0,0],[0,1,0],[0,0,-1]]\nbracket a h = c\n");
    let out = bin(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");

    let selfb = scratch("self.def", "basis = a b c\nmetric = [[1,0,0],[0,1,0],[0,0,-1]]\nbracket a a = c\n");
    assert_eq!(bin(&["analyze", selfb.to_str().unwrap()]).status.code(), Some(2));

    let dup = scratch("dup.def", "basis = a b c\nmetric = [[1,0,0],[0,1,0],[0,0,-1]]\nbracket a b = c\nbracket b a = c\n");
    assert_eq!(bin(&["analyze", dup.to_str().unwrap()]).status.code(), Some(2));

    assert_eq!(bin(&["analyze", "/nonexistent/file.def"]).status.code(), Some(2));
    assert_eq!(bin(&["selftest"]).status.code(), Some(0));
}

#[test]
fn codazzi_and_classify_commands() {
    let p = scratch("sl2.def", &stdout(&bin(&["family", "sl2"])));
    let out = stdout(&bin(&["codazzi", p.to_str().unwrap(), "--operator", "ricci", "--format", "kv"]));
    assert_eq!(kv(&out, "codazzi.agree").as_deref(), Some("true"), "{out}");
    let out = stdout(&bin(&["classify", p.to_str().unwrap(), "--operator", "ricci", "--format", "kv"]));
    assert_eq!(kv(&out, "type_tag").as_deref(), Some("ZZbar"), "{out}");
}
