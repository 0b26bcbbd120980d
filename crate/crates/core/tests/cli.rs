use std::path::PathBuf;
use std::process::{Command, Output};

fn data(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(rel)
        .display()
        .to_string()
}

fn symloop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symloop"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn geodesic_report() {
    let o = symloop(&["geodesic", "--space", "gr2c4", "--H", "2,1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("conjugate_times: 5"));
    for t in ["1/4", "1/3", "1/2", "2/3", "3/4"] {
        assert!(out.contains(&format!("t = {t} ")), "{t} missing:\n{out}");
    }
    assert!(out.contains("index: 8"));
    assert!(out.contains("nullity: 14"));
}

#[test]
fn enumerate_sphere_table() {
    let o = symloop(&["enumerate", "--space", "sphere3", "--energy", "16"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("# critical manifolds of sphere(3)"));
    assert!(out.contains("# 2 entries, 1 prime"), "{out}");
    let records = symloop(&[
        "enumerate",
        "--space",
        "sphere3",
        "--energy",
        "16",
        "--format",
        "records",
    ]);
    let lines: Vec<&str> = std::str::from_utf8(&records.stdout)
        .unwrap()
        .lines()
        .collect();
    assert_eq!(lines.len(), 2);
    for l in lines {
        serde_json::from_str::<serde_json::Value>(l).unwrap();
    }
}

#[test]
fn enumerate_is_identical_in_both_modes() {
    let a = symloop(&["enumerate", "--space", "gr2c4", "--energy", "20"]);
    let b = symloop(&[
        "--sequential",
        "enumerate",
        "--space",
        "gr2c4",
        "--energy",
        "20",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn validate_files() {
    let ok = symloop(&[
        "validate",
        "--space",
        &data("spaces/gr2c4.toml"),
        "--strict",
    ]);
    assert!(ok.status.success(), "{}", stderr(&ok));
    assert!(stdout(&ok).contains("verdict: pass"));

    let bad = symloop(&["validate", "--space", &data("spaces/bad_dimension.toml")]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL dimension_consistent: 5 != 3"));
    let err = stderr(&bad);
    assert_eq!(err.lines().count(), 1);
    assert!(err.starts_with("error[ValidationFailed]"));
    assert!(err.contains("dimension_consistent"));

    let gram = symloop(&["validate", "--space", &data("spaces/bad_gram.toml")]);
    assert_eq!(gram.status.code(), Some(1));
    assert!(stderr(&gram).starts_with("error[Malformed]"));
    assert!(stderr(&gram).contains("gram_symmetric"));

    let lattice = symloop(&["validate", "--space", &data("spaces/bad_lattice.toml")]);
    assert_eq!(lattice.status.code(), Some(1));
    assert!(stderr(&lattice).contains("lattice_integral"));
}

#[test]
fn unknown_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("extra.toml");
    std::fs::write(
        &path,
        "name = \"x\"\nrank = 1\ngram = [1]\nlattice_basis = [[2]]\ncolor = \"red\"\n[[roots]]\nfunctional = [1]\nmultiplicity = 1\n",
    )
    .unwrap();
    let o = symloop(&["info", "--space", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error[Parse]"));
    assert!(stderr(&o).contains("color"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        symloop(&["geodesic", "--space", "gr2c4"]).status.code(),
        Some(2)
    );
    assert_eq!(
        symloop(&[
            "enumerate",
            "--space",
            "gr2c4",
            "--energy",
            "1",
            "--format",
            "xml"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        symloop(&["info", "--space", "gr2c4", "--product", "sphere2,sphere3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn domain_errors_exit_one() {
    for (args, code) in [
        (
            vec!["geodesic", "--space", "gr2c4", "--H", "1/2,0"],
            "NotClosed",
        ),
        (
            vec!["geodesic", "--space", "gr2c4", "--H", "0,0"],
            "ZeroDirection",
        ),
        (
            vec!["geodesic", "--space", "gr2c4", "--H", "1"],
            "DimensionMismatch",
        ),
        (
            vec!["enumerate", "--space", "gr2c4", "--energy", "0"],
            "InvalidBound",
        ),
        (
            vec!["cs-product", "--space", "sphere3", "--H", "4"],
            "NotPrimitive",
        ),
        (
            vec![
                "cs-product",
                "--space",
                "gr2c4",
                "--H",
                "1,0",
                "--ring",
                "s2xs3",
            ],
            "RingMismatch",
        ),
        (
            vec!["bott", "--space", "gr2c4", "--planes", "9:1"],
            "InvalidRootIndex",
        ),
        (
            vec![
                "plot",
                "--space",
                "sphere3",
                "--H",
                "2",
                "--out",
                "/dev/null",
            ],
            "Unsupported",
        ),
    ] {
        let o = symloop(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        let err = stderr(&o);
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(
            err.starts_with(&format!("error[{code}]")),
            "{args:?}: {err}"
        );
    }
}

#[test]
fn bott_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c.toml");
    let o = symloop(&[
        "bott",
        "--space",
        "gr2c4",
        "--planes",
        "1:1,2:1",
        "--seed",
        "4",
        "--out",
        cert.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("gamma_dim: 3"));
    assert!(out.contains("based_coproduct: trivial"));
    let v = symloop(&["verify-cert", "--cert", cert.to_str().unwrap()]);
    assert!(v.status.success());
    assert!(stdout(&v).contains("verdict: pass"));

    let text = std::fs::read_to_string(&cert).unwrap();
    let tampered = dir.path().join("t.toml");
    std::fs::write(&tampered, text.replacen("[[1, 1]", "[[1, 2]", 1)).unwrap();
    let v = symloop(&["verify-cert", "--cert", tampered.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(1));
    assert!(stdout(&v).contains("FAIL junctions_on_planes"));
}

#[test]
fn stored_certificate_verifies() {
    let v = symloop(&[
        "verify-cert",
        "--cert",
        &data("certs/gr2c4_two_planes.toml"),
    ]);
    assert!(v.status.success(), "{}", stdout(&v));
}

#[test]
fn bott_rank_one_infeasible() {
    let o = symloop(&["bott", "--space", "sphere3", "--planes", "0:1,0:2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("certificate: infeasible"));
    assert!(out.contains("based_coproduct: unknown"));
}

#[test]
fn product_verdicts() {
    let o = symloop(&[
        "product",
        "--product",
        "sphere2,sphere3",
        "--H1",
        "2",
        "--H2",
        "2",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("verdict: CoproductTrivial"));
    assert!(out.contains("index_additive"));
    let o = symloop(&[
        "product",
        "--product",
        "sphere2,sphere3",
        "--H1",
        "2",
        "--H2",
        "0",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("verdict: NotApplicable"));
    let o = symloop(&[
        "product",
        "--product",
        "gr2c4,gr2c4",
        "--H1",
        "2,1",
        "--H2",
        "2,1",
    ]);
    assert!(stdout(&o).contains("verdict: CoproductTrivial"));
    assert!(stdout(&o).contains("unknown"));
}

#[test]
fn product_spaces_work_everywhere() {
    let o = symloop(&["geodesic", "--product", "sphere2,sphere3", "--H", "2,2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    // index 1 + 2, nullity 5 + 1 + 2
    assert!(stdout(&o).contains("index: 3"));
    assert!(stdout(&o).contains("nullity: 8"));
    let o = symloop(&[
        "info",
        "--product",
        &format!("{},sphere3", data("spaces/gr2c4.toml")),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("weyl group order: 16"));
}

#[test]
fn power_and_cs_product() {
    let o = symloop(&["power", "--space", "gr2c4", "--H", "1,0", "--k-max", "3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o2 = symloop(&[
        "cs-product",
        "--space",
        "sphere3",
        "--H",
        "2",
        "--ring",
        &data("rings/s2xs3.toml"),
        "--a",
        "A",
        "--b",
        "B",
    ]);
    assert!(o2.status.success(), "{}", stderr(&o2));
    let out = stdout(&o2);
    assert!(out.contains("degree: 6"));
    assert!(out.contains("status: NonzeroWithLeadingTerm"));
    assert!(out.contains("leading: (H=(2), k=2, pt) in degree 6"));
    let o3 = symloop(&[
        "cs-product",
        "--space",
        "sphere3",
        "--H",
        "2",
        "--ring",
        "s2xs3",
        "--a",
        "Sigma",
        "--b",
        "B",
    ]);
    assert!(stdout(&o3).contains("status: ExactlyEqual"));
}

#[test]
fn plot_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for p in [&a, &b] {
        let o = symloop(&[
            "plot",
            "--space",
            "gr2c4",
            "--H",
            "2,1",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let sa = std::fs::read(&a).unwrap();
    assert_eq!(sa, std::fs::read(&b).unwrap());
    let text = String::from_utf8(sa).unwrap();
    assert_eq!(text.matches("class=\"conjugate\"").count(), 5);
}
