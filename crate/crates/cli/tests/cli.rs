use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_confspace")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path_arg(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn combinatorics_enum_lists_all_orderings() {
    let o = run(&["combinatorics", "enum", "--k", "3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[0], "tuple\theights\tranks");
    assert_eq!(lines[1], "(1,1)\t(0,-1,-2)\t(3,2,1)");
    assert_eq!(lines[5], "(3,3)\t(0,1,1/2)\t(1,3,2)");
}

#[test]
fn combinatorics_enum_rejects_zero() {
    let o = run(&["combinatorics", "enum", "--k", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn tower_build_golden() {
    let o = run(&["tower", "build", "--input", &path_arg("path3.txt"), "--k", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "object\tcoeff\tbetti\ttorsion\teuler\nE^2\tq\t1 1\t-\t0\n");
}

#[test]
fn tower_build_with_boundary_and_integers() {
    let o = run(&[
        "tower", "build", "--input", &path_arg("cycle6.txt"), "--k", "2", "--coeff", "z", "--boundary",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("E^2\tz\t1 3 2\t-\t0\n"), "{out}");
    assert!(out.contains("E^2 x A x S^0\tz\t2 8 10 4\t-\t0\n"), "{out}");
}

#[test]
fn emitted_chain_complex_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("e2.txt");
    let file_arg = file.to_string_lossy().into_owned();
    let o = run(&[
        "tower", "build", "--input", &path_arg("path3.txt"), "--k", "2", "--emit-complex", &file_arg,
    ]);
    assert!(o.status.success());
    let o = run(&["homology", "--input", &file_arg, "--chain"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "object\tcoeff\tbetti\ttorsion\teuler\ninput\tq\t1 1\t-\t0\n");
}

#[test]
fn malformed_input_exits_with_parse_status() {
    let o = run(&["complex", "validate", "--input", &path_arg("malformed.txt")]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn bad_command_line_exits_with_parse_status() {
    assert_eq!(run(&["tower", "build", "--k", "2"]).status.code(), Some(2));
    let o = run(&["tower", "build", "--input", &path_arg("path3.txt"), "--k", "2", "--max-simplices", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn resource_cap_exits_with_three() {
    let o = run(&["tower", "build", "--input", &path_arg("path3.txt"), "--k", "3", "--max-simplices", "10"]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["tower", "build", "--input", &path_arg("path3.txt"), "--k", "4", "--max-k", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn validate_reports_f_vector() {
    let o = run(&["complex", "validate", "--input", &path_arg("cycle6.txt")]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "key\tvalue\nvertices\t6\ndim\t1\nf_vector\t6 6\neuler\t0\ngraph\ttrue\n"
    );
}

#[test]
fn product_and_deleted_product() {
    let p = path_arg("path3.txt");
    let o = run(&["complex", "product", "--input", &p, "--power", "2"]);
    assert!(o.status.success());
    let whole = stdout(&o);
    assert_eq!(whole.lines().filter(|l| l.starts_with("vertex")).count(), 16);
    let o = run(&["complex", "product", "--input", &p, "--power", "2", "--distinct", "2,1"]);
    assert!(o.status.success());
    let deleted = stdout(&o);
    assert_eq!(deleted.lines().filter(|l| l.starts_with("vertex")).count(), 12);
}

#[test]
fn prepare_subdivides_until_certified() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("prepared.txt");
    let o = run(&["complex", "prepare", "--input", &path_arg("cycle5.txt"), "--k", "6"]);
    assert!(o.status.success());
    std::fs::write(&file, o.stdout).unwrap();
    let o = run(&["complex", "validate", "--input", &file.to_string_lossy()]);
    assert!(stdout(&o).contains("f_vector\t10 10\n"));
}

#[test]
fn config_model_reports_certification() {
    let o = run(&["config", "model", "--input", &path_arg("cycle6.txt"), "--k", "3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("exactness\tcertified\n"));
    assert!(out.contains("F_3\tq\t2 2\t-\t0\n"));
    let o = run(&["config", "model", "--input", &path_arg("path3.txt"), "--k", "3"]);
    assert!(stdout(&o).contains("exactness\tcertified\n"));
    let o = run(&["config", "model", "--input", &path_arg("cycle5.txt"), "--k", "5"]);
    let out = stdout(&o);
    assert!(out.contains("exactness\theuristic\n"));
    assert!(out.contains("abrams\tcycle of length 5"), "{out}");
}

#[test]
fn suspension_cofiber_passes_checks() {
    let o = run(&["suspension", "cofiber", "--input", &path_arg("path4.txt")]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("cofiber\tq\t0 6\t-\t-6\n"), "{out}");
    assert!(out.contains("F_3\tq\t6\t-\t6\n"), "{out}");
    assert!(!out.contains("fail"));
}

#[test]
fn suspension_requires_certification() {
    let o = run(&["suspension", "cofiber", "--input", &path_arg("path3.txt")]);
    assert!(o.status.success(), "a path with three edges is certified for three particles");
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("edge.txt");
    std::fs::write(&file, "vertex a\nvertex b\nvertex c\nsimplex a b\nsimplex b c\nsimplex a c\n").unwrap();
    let o = run(&["suspension", "cofiber", "--input", &file.to_string_lossy()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn invariance_verdicts() {
    let o = run(&["invariance", "--a", &path_arg("cycle5.txt"), "--b", &path_arg("cycle8.txt"), "--k", "2"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "quantity\tcoeff\ta\tb\tstatus\ntower E^2\tq\t1 3 2\t1 3 2\tpass\nverdict\tq\t-\t-\tpass\n"
    );
    let o = run(&["invariance", "--a", &path_arg("path3.txt"), "--b", &path_arg("cycle6.txt"), "--k", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn text_format_is_aligned() {
    let o = run(&["--format", "text", "tower", "build", "--input", &path_arg("path3.txt"), "--k", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "object  coeff  betti  torsion  euler\nE^2     q      1 1    -        0\n");
}

#[test]
fn output_is_deterministic() {
    let args = ["tower", "build", "--input", &path_arg("cycle6.txt"), "--k", "3", "--coeff", "z"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
