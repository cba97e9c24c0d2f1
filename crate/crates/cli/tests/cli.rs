//! Black-box tests of the curata binary: argument handling and the
//! documented output formats.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(path: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(path)
}

fn curata(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curata"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = curata(args);
    assert!(
        out.status.success(),
        "curata {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn ner_emits_tsv() {
    let gazetteer = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/resources/gazetteer.tsv");
    let out = stdout_of(&[
        "ner",
        "--gazetteer",
        gazetteer.to_str().unwrap(),
        "--text",
        "I flew from Paris to Asia",
    ]);
    assert_eq!(out, "Paris\tCITY\t12\t17\nAsia\tCONTINENT\t21\t25\n");

    let only_city = stdout_of(&[
        "ner",
        "--gazetteer",
        gazetteer.to_str().unwrap(),
        "--type",
        "CITY",
        "--text",
        "I flew from Paris to Asia",
    ]);
    assert_eq!(only_city, "Paris\tCITY\t12\t17\n");
}

#[test]
fn sim_output_format() {
    assert_eq!(
        stdout_of(&["sim", "levenshtein", "--a", "kitten", "--b", "sitting"]),
        "kitten\tsitting\t3\n"
    );
    let jaro = stdout_of(&["sim", "jaro", "--a", "MARTHA", "--b", "MARHTA"]);
    assert!(jaro.starts_with("MARTHA\tMARHTA\t0.944"), "{jaro}");
    let euclid = stdout_of(&["sim", "euclidean", "--a", "0,0", "--b", "3,4"]);
    assert_eq!(euclid, "0,0\t3,4\t5\n");
}

#[test]
fn sim_vector_file_modes() {
    let dir = tempfile::tempdir().unwrap();
    let vectors = dir.path().join("vectors.txt");
    std::fs::write(&vectors, "3,4\n0,0\n1,1\n").unwrap();
    let rows = stdout_of(&[
        "sim",
        "euclidean",
        "--vec",
        "0,0",
        "--vec-file",
        vectors.to_str().unwrap(),
        "--mode",
        "vector_vectors",
    ]);
    let lines: Vec<&str> = rows.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0], "0,0\t3,4\t5");

    let pairs = stdout_of(&[
        "sim",
        "dice",
        "--vec-file",
        vectors.to_str().unwrap(),
        "--mode",
        "vectors_all_pairs",
    ]);
    assert_eq!(pairs.lines().count(), 3); // C(3,2)
}

#[test]
fn index_build_and_search() {
    let dir = tempfile::tempdir().unwrap();
    let docs = dir.path().join("docs.jsonl");
    std::fs::write(
        &docs,
        concat!(
            r#"{"id":"d1","text":"mental health is important"}"#,
            "\n",
            r#"{"id":"d2","text":"health of mental patients"}"#,
            "\n",
            r#"{"id":"d3","text":"mental illness"}"#,
            "\n"
        ),
    )
    .unwrap();
    let index = dir.path().join("idx.bin");
    let build = curata(&[
        "index",
        "build",
        "--docs",
        docs.to_str().unwrap(),
        "--out",
        index.to_str().unwrap(),
        "--stopwords",
        "/dev/null",
    ]);
    assert!(build.status.success());

    let hits = stdout_of(&[
        "index",
        "search",
        "--index",
        index.to_str().unwrap(),
        "--query",
        "mental health",
        "--slop",
        "2",
    ]);
    let lines: Vec<&str> = hits.lines().collect();
    assert_eq!(lines[0], "d1\t0\tmental health is important");
    assert_eq!(lines[1], "d2\t1\thealth of mental patients");
}

#[test]
fn classify_and_eval() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("predictions.tsv");
    let run = curata(&[
        "classify",
        "nb",
        "--train",
        fixture("arff/weather_train.arff").to_str().unwrap(),
        "--test",
        fixture("arff/weather_test.arff").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(run.status.success());
    let body = std::fs::read_to_string(&out).unwrap();
    assert_eq!(body.lines().count(), 3);
    for line in body.lines() {
        let cells: Vec<&str> = line.split('\t').collect();
        assert_eq!(cells.len(), 3);
        assert!(matches!(cells[1], "yes" | "no"));
    }

    let knn_out = dir.path().join("knn.tsv");
    let run = curata(&[
        "classify",
        "knn",
        "--train",
        fixture("arff/points_train.arff").to_str().unwrap(),
        "--test",
        fixture("arff/points_test.arff").to_str().unwrap(),
        "--out",
        knn_out.to_str().unwrap(),
        "--k",
        "3",
    ]);
    assert!(run.status.success());
    let body = std::fs::read_to_string(&knn_out).unwrap();
    assert!(body.starts_with("0\tA\t1\n"), "{body}");
    assert!(body.lines().nth(1).unwrap().starts_with("1\tB\t1"));

    let pred = dir.path().join("pred.txt");
    let actual = dir.path().join("actual.txt");
    std::fs::write(&pred, "A\nA\nB\nB\n").unwrap();
    std::fs::write(&actual, "A\nB\nB\nB\n").unwrap();
    let report = stdout_of(&[
        "classify",
        "eval",
        "--pred",
        pred.to_str().unwrap(),
        "--actual",
        actual.to_str().unwrap(),
    ]);
    assert!(report.contains("accuracy\t0.75"));
    assert!(report.contains("precision\t0.75"));
}

#[test]
fn url_fields_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let page = dir.path().join("page.html");
    std::fs::write(
        &page,
        "<html><head><title>T</title></head><body><h1>H</h1><p>P1</p><p>P2</p></body></html>",
    )
    .unwrap();
    assert_eq!(
        stdout_of(&["url", "--html-file", page.to_str().unwrap(), "--field", "title"]),
        "T\n"
    );
    assert_eq!(
        stdout_of(&["url", "--html-file", page.to_str().unwrap(), "--field", "paragraphs"]),
        "P1\nP2\n"
    );
    assert_eq!(
        stdout_of(&["url", "--html-file", page.to_str().unwrap(), "--field", "headings"]),
        "h1\tH\n"
    );
}

#[test]
fn link_offline_prints_entities() {
    let out = stdout_of(&[
        "link",
        "wikidata",
        "M. Turnbull",
        "--offline",
        fixture("kb").to_str().unwrap(),
    ]);
    assert!(out.contains("Malcolm Turnbull"));
    assert!(out.contains("Q7184"));

    let missing = curata(&[
        "link",
        "wikidata",
        "Nobody Nowhere",
        "--offline",
        fixture("kb").to_str().unwrap(),
    ]);
    assert!(!missing.status.success());
}

#[test]
fn pipeline_keyword_filter_and_limit() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("records.json");
    let run = curata(&[
        "pipeline",
        "--in",
        fixture("tweets50.jsonl").to_str().unwrap(),
        "--resources",
        fixture("resources").to_str().unwrap(),
        "--offline-kb",
        fixture("kb").to_str().unwrap(),
        "--keyword",
        "health",
        "--limit",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(run.status.success());
    let body = std::fs::read_to_string(&out).unwrap();
    let records: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(records.as_array().unwrap().len(), 2);
}

#[test]
fn pipeline_counts_malformed_lines() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("result.xml");
    let run = curata(&[
        "pipeline",
        "--in",
        fixture("tweets_mixed.jsonl").to_str().unwrap(),
        "--resources",
        fixture("resources").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(run.status.success());
    let stderr = String::from_utf8_lossy(&run.stderr);
    assert!(stderr.contains("1 malformed"), "{stderr}");
}

#[test]
fn stem_and_pos_and_syn_text_modes() {
    assert_eq!(stdout_of(&["stem", "--word", "friendships"]), "friend\n");
    let stems = stdout_of(&["stem", "--text", "running friendships"]);
    assert_eq!(stems, "running\trun\nfriendships\tfriend\n");

    let verbs = stdout_of(&["pos", "--text", "the cat runs", "--class", "verb"]);
    assert_eq!(verbs, "runs\n");

    let syns = stdout_of(&["syn", "--word", "begin"]);
    assert!(syns.contains("start") && syns.contains("commence"));

    let hyp = stdout_of(&["syn", "--word", "car", "--hypernyms"]);
    assert_eq!(hyp, "motor vehicle\n");
}
