use gwtqft::checks::{numeric_partition_function, random_point, CheckReport, NumLaurent};
use gwtqft::parse::parse_phi_elem;
use gwtqft::partition::from_phi_terms;
use gwtqft::phicalc::PhiElem;
use gwtqft_cli::{reserialize, run, GenusDoc, WordDoc, ZDoc, EXIT_OK, EXIT_USAGE};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cli(args: &[&str]) -> (u8, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["gwtqft"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = cli(args);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    out.trim_end().to_string()
}

fn phi(s: &str) -> PhiElem {
    parse_phi_elem(s).unwrap()
}

const Q: &str = "(t0^2+t1^2+t2^2-t0*t1-t0*t2-t1*t2)";

#[test]
fn compute_examples() {
    assert_eq!(ok(&["compute", "--genus", "1", "--level1", "0", "--level2", "0", "--format", "text"]), "3");
    assert_eq!(ok(&["compute", "--genus", "0", "--level1", "0", "--level2", "0"]), "0");
    assert_eq!(
        ok(&["compute", "--genus", "2", "--level1", "0", "--level2", "0", "--format", "latex"]),
        "t_0^2+t_1^2+t_2^2-t_0t_1-t_0t_2-t_1t_2"
    );
    assert_eq!(phi(&ok(&["compute", "-g", "2"])), phi(Q));
}

#[test]
fn extract_examples() {
    assert_eq!(ok(&["extract", "--genus", "4", "--n", "2"]), "81*phi^6");
    assert_eq!(ok(&["extract", "--genus", "3", "--n", "1"]), "0");
    let got = ok(&["extract", "--genus", "1", "--level1", "1", "--n", "-1"]);
    assert_eq!(phi(&got), phi("(t1-t0)*(t1-t2)*phi^-2"));
    assert_eq!(got, phi("(t1-t0)*(t1-t2)*phi^-2").to_string());
}

#[test]
fn genus_examples() {
    assert_eq!(ok(&["genus", "--genus", "0", "--level1", "1", "--n", "-1", "--hmax", "2"]), "0\t1\n1\t1/12\n2\t1/240");
    assert_eq!(ok(&["genus", "--genus", "1", "--n", "0", "--hmax", "3"]), "0\t0\n1\t3\n2\t0\n3\t0");
    assert_eq!(ok(&["genus", "--genus", "2", "--level2", "2", "--n", "0", "--hmax", "3"]), "0\t0\n1\t0\n2\t9\n3\t-3/4");
}

#[test]
fn genus_reports_required_order() {
    let (code, _, err) = cli(&["genus", "-g", "1", "--n", "0", "--hmax", "8", "--order", "4"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("u^6") && err.contains("u^4"), "{err}");
}

#[test]
fn word_examples() {
    assert_eq!(ok(&["word", "trace(tube(0,0))"]), "3");
    assert_eq!(ok(&["word", "trace(G^1 * U1^1)"]), ok(&["compute", "-g", "2", "--level1", "1"]));
    assert_eq!(ok(&["word", "cap(0,-1) * pants"]), ok(&["word", "tube(0,-1)"]));
    let json = ok(&["word", "cap(0,-1) * pants", "--format", "json"]);
    let doc: WordDoc = serde_json::from_str(&json).unwrap();
    assert_eq!(doc.variance, ["lowered", "lowered"]);
    assert!(doc.pieces.iter().all(|p| p.entries.len() == 9));
}

#[test]
fn word_errors_are_usage_errors() {
    let (code, _, err) = cli(&["word", "trace("]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("byte"), "{err}");
}

#[test]
fn bad_flags_exit_two() {
    for args in [
        &["compute"][..],
        &["compute", "--genus", "-1"],
        &["compute", "-g", "1", "--format", "pdf"],
        &["frobnicate"],
        &["verify", "--suite", "bogus"],
        &["verify", "--suite", "semisimple", "--jobs", "0"],
    ] {
        assert_eq!(cli(args).0, EXIT_USAGE, "{args:?}");
    }
    let (code, out, _) = cli(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("compute"));
}

#[test]
fn golden_documents() {
    let cases: [(&str, &[&str]); 5] = [
        ("compute_g1.json", &["compute", "-g", "1"]),
        ("extract_g4_n2.json", &["extract", "-g", "4", "--n", "2"]),
        ("extract_g1_k1_n-1.json", &["extract", "-g", "1", "--level1", "1", "--n", "-1"]),
        ("genus_g0_k1_n-1.json", &["genus", "-g", "0", "--level1", "1", "--n", "-1", "--hmax", "2"]),
        ("word_trace_tube.json", &["word", "trace(tube(0,0))"]),
    ];
    for (file, args) in cases {
        let golden = std::fs::read_to_string(format!("{}/tests/golden/{file}", env!("CARGO_MANIFEST_DIR"))).unwrap();
        let mut argv = args.to_vec();
        argv.extend(["--format", "json"]);
        assert_eq!(ok(&argv), golden.trim_end(), "{file}");
    }
}

#[test]
fn json_round_trips_byte_identically() {
    let z = ok(&["compute", "-g", "2", "--level1", "1", "--level2", "-1", "--format", "json"]);
    assert_eq!(reserialize::<ZDoc>(&z).unwrap(), z);
    let e = ok(&["extract", "-g", "5", "--n", "2", "--format", "json"]);
    assert_eq!(reserialize::<ZDoc>(&e).unwrap(), e);
    let g = ok(&["genus", "-g", "2", "--level2", "2", "--n", "0", "--format", "json"]);
    assert_eq!(reserialize::<GenusDoc>(&g).unwrap(), g);
    let w = ok(&["word", "tube(1,0)", "--format", "json"]);
    assert_eq!(reserialize::<WordDoc>(&w).unwrap(), w);
    assert!(reserialize::<ZDoc>(r#"{"g":1,"k1":0,"k2":0,"terms":[],"version":"x","extra":1}"#).is_err());
}

#[test]
fn compute_output_agrees_numerically() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (g, k1, k2) in [(0u32, 1i64, 0i64), (1, -2, 1), (2, 1, 0), (3, 0, -1)] {
        let json = ok(&[
            "compute",
            "-g",
            &g.to_string(),
            "--level1",
            &k1.to_string(),
            "--level2",
            &k2.to_string(),
            "--format",
            "json",
        ]);
        let doc: ZDoc = serde_json::from_str(&json).unwrap();
        let z = from_phi_terms(&doc.terms).unwrap();
        for _ in 0..5 {
            let point = random_point(&mut rng);
            let symbolic = NumLaurent::from_evaluated(&z.eval_t(&point).unwrap());
            assert_eq!(symbolic, numeric_partition_function(&point, g, k1, k2).unwrap(), "({g},{k1},{k2})");
        }
    }
}

#[test]
fn verify_gluing_passes() {
    let (code, out, err) = cli(&["verify", "--suite", "gluing", "--jobs", "2"]);
    assert_eq!(code, EXIT_OK, "{out}{err}");
    assert!(out.contains("gluing.frobenius") && out.contains("0 failed"));
}

#[test]
fn verify_json_lines() {
    let out = ok(&["verify", "--suite", "semisimple", "--format", "json"]);
    let reports: Vec<CheckReport> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(reports.len(), 1);
    assert!(reports[0].passed);
}
