use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use causaltrust::graph_file::load_graph;
use causaltrust_core::AdverbLexicon;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_causaltrust"))
        .args(args)
        .env_remove("CAUSALTRUST_LEXICON")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn s(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn trained_graph(dir: &Path) -> PathBuf {
    let graph = dir.join("graph.json");
    let out = run(&[
        "-q",
        "train",
        "--graph",
        s(&graph),
        s(&data("lung_cancer.cau")),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    graph
}

#[test]
fn train_builds_edges_for_each_cause_of_lung_cancer() {
    let dir = tempfile::tempdir().unwrap();
    let graph_path = trained_graph(dir.path());
    let graph = load_graph(&graph_path, &AdverbLexicon::with_defaults(1000).unwrap()).unwrap();
    for cause in [
        "smoking",
        "radon gas",
        "secondhand smoke",
        "asbestos",
        "air pollution",
    ] {
        assert!(graph.get_edge(cause, "lung cancer").is_some(), "{cause}");
    }
    assert_eq!(
        graph
            .get_edge("smoking", "lung cancer")
            .unwrap()
            .observation_count(),
        4
    );
}

#[test]
fn training_twice_accumulates() {
    let dir = tempfile::tempdir().unwrap();
    let graph_path = trained_graph(dir.path());
    let out = run(&[
        "train",
        "--graph",
        s(&graph_path),
        s(&data("lung_cancer.cau")),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("26 observations"), "{}", stdout(&out));
}

#[test]
fn classify_transcript_matches_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let graph = trained_graph(dir.path());
    let report = dir.path().join("report.json");
    let out = run(&[
        "classify",
        "--graph",
        s(&graph),
        "--report",
        s(&report),
        s(&data("tweets.cau")),
    ]);
    assert!(out.status.success());
    let golden = include_str!("golden/tweets_transcript.txt");
    assert_eq!(stdout(&out), golden);
    assert!(golden.contains("we must not learn causal relations from this source"));

    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(json["source_id"], "tweets");
    assert_eq!(json["causals"].as_array().unwrap().len(), 5);
}

#[test]
fn free_text_matches_structured_input() {
    let dir = tempfile::tempdir().unwrap();
    let graph = trained_graph(dir.path());
    let out = run(&[
        "classify",
        "--graph",
        s(&graph),
        "--free-text",
        s(&data("tweets.txt")),
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), include_str!("golden/tweets_transcript.txt"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("negated"));
}

#[test]
fn rejected_source_is_not_learned() {
    let dir = tempfile::tempdir().unwrap();
    let graph = trained_graph(dir.path());
    let before = fs::read(&graph).unwrap();
    let out = run(&[
        "classify",
        "--graph",
        s(&graph),
        "--learn",
        s(&data("tweets.cau")),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("Learning: 0 fused"));
    assert_eq!(fs::read(&graph).unwrap(), before);
}

#[test]
fn accepted_source_is_learned() {
    let dir = tempfile::tempdir().unwrap();
    let graph = trained_graph(dir.path());
    let corpus = dir.path().join("agree.cau");
    fs::write(
        &corpus,
        "smoking | usually | lung cancer\nsmoking | constantly | lung cancer\n",
    )
    .unwrap();
    let out = run(&["classify", "--graph", s(&graph), "--learn", s(&corpus)]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("it is a trust worthy source"), "{text}");
    assert!(text.contains("Learning: 2 fused"), "{text}");
    let inspect = stdout(&run(&["inspect", "--graph", s(&graph)]));
    assert!(inspect.contains("15 observations"), "{inspect}");
}

#[test]
fn empty_and_unknown_corpora_train_to_an_empty_graph() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.cau");
    let unknown = dir.path().join("unknown.cau");
    fs::write(&empty, "# nothing here\n").unwrap();
    fs::write(&unknown, "a | maybe | b\n").unwrap();
    for corpus in [&empty, &unknown] {
        let graph = dir.path().join(format!(
            "{}.json",
            corpus.file_stem().unwrap().to_str().unwrap()
        ));
        let out = run(&["train", "--graph", s(&graph), s(corpus)]);
        assert_eq!(out.status.code(), Some(0));
        assert!(stdout(&out).contains("0 edges"));
        assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let graph = trained_graph(dir.path());
    let unrelated = dir.path().join("unrelated.cau");
    fs::write(&unrelated, "x | often | y\n").unwrap();
    let corrupt = dir.path().join("corrupt.json");
    fs::write(&corrupt, "{").unwrap();

    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(
        code(&[
            "classify",
            "--graph",
            s(&graph),
            "--beta",
            "1.5",
            s(&unrelated)
        ]),
        Some(2)
    );
    assert_eq!(
        code(&[
            "classify",
            "--graph",
            s(&graph),
            "--unknown-edge-policy",
            "maybe",
            s(&unrelated)
        ]),
        Some(2)
    );
    assert_eq!(code(&["no-such-command"]), Some(2));
    assert_eq!(
        code(&["inspect", "--graph", "/nonexistent/graph.json"]),
        Some(3)
    );
    assert_eq!(
        code(&["classify", "--graph", s(&graph), s(&unrelated)]),
        Some(4)
    );
    assert_eq!(code(&["inspect", "--graph", s(&corrupt)]), Some(5));
    assert_eq!(
        code(&[
            "classify",
            "--graph",
            s(&graph),
            "--unknown-edge-policy",
            "constant:0.5",
            s(&unrelated)
        ]),
        Some(0)
    );
}

#[test]
fn export_plots_writes_one_csv_per_edge() {
    let dir = tempfile::tempdir().unwrap();
    let graph = trained_graph(dir.path());
    let plots = dir.path().join("plots");
    let out = run(&["export-plots", "--graph", s(&graph), "--out", s(&plots)]);
    assert!(out.status.success());
    let index = fs::read_to_string(plots.join("index.csv")).unwrap();
    assert_eq!(index.lines().count(), 1 + 7);
    let csv = fs::read_to_string(plots.join("edge_000.csv")).unwrap();
    assert_eq!(
        csv.lines().next(),
        Some("x,prior_density,posterior_density")
    );
    assert_eq!(csv.lines().count(), 1 + 1000);
}

#[test]
fn lexicon_file_and_env_override() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.json");
    let corpus = dir.path().join("c.cau");
    fs::write(&corpus, "a | now and then | b\n").unwrap();
    let lexicon = dir.path().join("lex.json");
    fs::write(
        &lexicon,
        r#"{"adverbs": [{"name": "now and then", "a": 6, "b": 10}, {"name": "mostly", "a": 12, "b": 4}]}"#,
    )
    .unwrap();

    let out = run(&[
        "--lexicon",
        s(&lexicon),
        "--grid",
        "200",
        "train",
        "--graph",
        s(&graph),
        s(&corpus),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stdout(&out).contains("1 edges"));

    let via_env = Command::new(env!("CARGO_BIN_EXE_causaltrust"))
        .args(["inspect", "--graph", s(&graph)])
        .env("CAUSALTRUST_LEXICON", &lexicon)
        .output()
        .unwrap();
    assert!(via_env.status.success());
    assert!(stdout(&via_env).contains("M = 200"));

    // The default table does not know the adverb the graph was built from.
    assert_eq!(
        run(&["inspect", "--graph", s(&graph)]).status.code(),
        Some(5)
    );
}

#[test]
fn shipped_lexicon_matches_builtin_table() {
    let text = fs::read_to_string(data("lexicon.json")).unwrap();
    let config = causaltrust::lexicon_file::parse_lexicon_config(&text).unwrap();
    assert_eq!(config, causaltrust_core::LexiconConfig::default());
}
