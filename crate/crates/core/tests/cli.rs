use std::path::Path;

use loewy::cli::run_with;
use loewy::cli::spec_file::AlgebraSpecFile;
use loewy::examples::{build_nakayama, NakayamaParams};
use loewy::linalg::PrimeField;

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(
        std::iter::once("loewy").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, String::from_utf8(out).unwrap())
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("tests/golden")
            .join(name),
    )
    .unwrap()
}

#[test]
fn show_matches_golden() {
    let (code, out) = run(&[
        "show",
        "--nakayama",
        "3,2",
        "--module",
        "P0",
        "--series",
        "radical",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("show_n32_p0.txt"));
    let spec = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/n32.json");
    let (code, out) = run(&[
        "show",
        "--algebra",
        spec.to_str().unwrap(),
        "--module",
        "P_0",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, golden("show_n32_p0.txt"));
}

#[test]
fn show_semisimple_regular_module() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ss.json");
    std::fs::write(
        &path,
        r#"{"field": {"p": 7}, "quiver": {"vertices": 3, "arrows": []}, "relations": [], "truncation": 1}"#,
    )
    .unwrap();
    let (code, out) = run(&["show", "--algebra", path.to_str().unwrap(), "--module", "A"]);
    assert_eq!((code, out.as_str()), (0, "S_0 S_1 S_2\n"));
    let (code, out) = run(&[
        "table",
        "--algebra",
        path.to_str().unwrap(),
        "--kind",
        "radical",
    ]);
    assert_eq!((code, out.as_str()), (0, "n = 1\n1 0 0\n0 1 0\n0 0 1\n"));
}

#[test]
fn emitted_spec_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("n32.json");
    let (code, _) = run(&[
        "emit-nakayama",
        "--k",
        "3",
        "--l",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), golden("n32.json"));
}

#[test]
fn emit_read_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (k, l) in [(3, 2), (1, 1), (4, 4)] {
        let path = dir.path().join(format!("n{k}{l}.json"));
        let (code, _) = run(&[
            "emit-nakayama",
            "--k",
            &k.to_string(),
            "--l",
            &l.to_string(),
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        let text = std::fs::read_to_string(&path).unwrap();
        let spec = AlgebraSpecFile::parse(&text).unwrap();
        assert_eq!(spec.to_json(), text);
        let read = spec.to_presentation().unwrap().build().unwrap();
        let built =
            build_nakayama(NakayamaParams::new(k, l).unwrap(), PrimeField::default()).unwrap();
        assert_eq!(read.dim(), built.dim());
        assert_eq!(read.labels(), built.labels());
        for x in 0..read.dim() {
            for y in 0..read.dim() {
                assert_eq!(read.product(x, y), built.product(x, y));
            }
        }
    }
}

#[test]
fn emit_rejects_bad_arguments() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.json");
    assert_eq!(
        run(&[
            "emit-nakayama",
            "--k",
            "0",
            "--l",
            "2",
            "--out",
            path.to_str().unwrap()
        ])
        .0,
        2
    );
    assert_eq!(
        run(&[
            "emit-nakayama",
            "--k",
            "2",
            "--l",
            "2",
            "--out",
            "/nonexistent/dir/x.json"
        ])
        .0,
        2
    );
}

#[test]
fn verify_examples() {
    assert_eq!(
        run(&["verify", "--nakayama", "3,2", "--check", "main"]).0,
        0
    );
    let (code, out) = run(&["verify", "--nakayama", "3,2", "--check", "landrock"]);
    assert_eq!(code, 3);
    assert!(out.contains("not symmetric"));
    assert_eq!(run(&["verify", "--nakayama", "2,2", "--check", "all"]).0, 0);
}

#[test]
fn verify_output_is_reproducible() {
    let args = [
        "verify",
        "--nakayama",
        "3,3",
        "--check",
        "all",
        "--seed",
        "9",
        "--format",
        "json",
    ];
    let (code, first) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(run(&args).1, first);
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert!(v.get("elapsed").is_none());
}

#[test]
fn table_kinds() {
    let (_, out) = run(&["table", "--nakayama", "2,3", "--kind", "cartan"]);
    assert_eq!(out, "2 2\n2 2\n");
    let (_, radical) = run(&[
        "table",
        "--nakayama",
        "3,2",
        "--kind",
        "radical",
        "--format",
        "csv",
    ]);
    let (_, socle) = run(&[
        "table",
        "--nakayama",
        "3,2",
        "--kind",
        "socle",
        "--format",
        "csv",
    ]);
    // Reciprocity: the socle table of {nu P_j} is the index-transposed radical table.
    let parse = |s: &str| -> Vec<(usize, usize, usize, usize)> {
        s.lines()
            .skip(1)
            .map(|l| {
                let v: Vec<usize> = l.split(',').map(|x| x.parse().unwrap()).collect();
                (v[0], v[1], v[2], v[3])
            })
            .collect()
    };
    let mut transposed: Vec<_> = parse(&socle)
        .into_iter()
        .map(|(n, i, j, m)| (n, j, i, m))
        .collect();
    transposed.sort();
    assert_eq!(parse(&radical), transposed);
}
