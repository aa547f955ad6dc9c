use gwtqft::partition::MemoEntry;
use gwtqft_cli::{run, CACHE_ENV};

fn compute(args: &[&str]) -> (u8, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["gwtqft", "compute"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

// the only test in this binary, so setting the variable cannot race
#[test]
fn memo_table_persists() {
    let dir = tempfile::tempdir().unwrap();
    std::env::set_var(CACHE_ENV, dir.path());
    let memo = dir.path().join("memo.json");

    let first = compute(&["-g", "3", "--level1", "1"]);
    assert_eq!(first.0, 0, "{}", first.2);
    let entries: Vec<MemoEntry> = serde_json::from_str(&std::fs::read_to_string(&memo).unwrap()).unwrap();
    assert_eq!((entries[0].g, entries[0].k1, entries[0].k2), (3, 1, 0));

    // a later run is served from the file
    assert_eq!(compute(&["-g", "3", "--level1", "1"]).1, first.1);

    // a corrupted file is ignored with a warning
    std::fs::write(&memo, "not json").unwrap();
    let (code, out, err) = compute(&["-g", "1"]);
    assert_eq!((code, out.trim()), (0, "3"));
    assert!(err.contains("warning"), "{err}");
    assert!(serde_json::from_str::<Vec<MemoEntry>>(&std::fs::read_to_string(&memo).unwrap()).is_ok());
    std::env::remove_var(CACHE_ENV);
}
