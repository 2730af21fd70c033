use std::path::Path;
use std::process::{Command, Output};

fn tnsrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tnsrank"))
        .args(args)
        .current_dir(
            Path::new(env!("CARGO_MANIFEST_DIR"))
                .join("tests")
                .join("golden"),
        )
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn inline_tree_and_file_agree() {
    let inline = tnsrank(&["minmono", "--tree", "((1,2),(3,4))", "--subset", "1,3"]);
    let file = tnsrank(&["minmono", "--tree", "cat4.tree", "--subset", "1,3"]);
    assert_eq!(inline.stdout, file.stdout);
    let v = stdout_json(&inline);
    assert_eq!(v["size"], 2);
    assert_eq!(v["colour_cut_size"], 1);
}

#[test]
fn inline_model_json() {
    let out = tnsrank(&[
        "predict",
        "--model",
        r#"{"tree": "((1,2),(3,4))", "f": 3}"#,
        "--subset",
        "1,3",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["value"], 9);
    assert_eq!(v["exact"], true);
}

#[test]
fn text_output() {
    let out = tnsrank(&["--json", "false", "hackbusch", "--n", "5", "--r", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "k: 1"), "{text}");
    assert!(
        text.lines()
            .any(|l| l == "inclusion: \"HT(5,2) ⊆ TT(5,2)\""),
        "{text}"
    );
}

#[test]
fn input_errors_exit_with_one() {
    let cases: [&[&str]; 6] = [
        &["minmono", "--tree", "((1,2),(3,4)", "--subset", "1"],
        &["minmono", "--tree", "cat4.tree", "--subset", "9"],
        &["minmono", "--tree", "missing.tree", "--subset", "1"],
        &["hackbusch", "--n", "6", "--r", "1"],
        &["compare", "--model", "abt6_r2.json"],
        &[
            "verify",
            "--tree",
            "cat4.tree",
            "--r",
            "2",
            "--subset",
            "1",
            "--prime",
            "1000000",
        ],
    ];
    for args in cases {
        let out = tnsrank(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(
            String::from_utf8_lossy(&out.stderr).starts_with("error:"),
            "{args:?}"
        );
    }
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(tnsrank(&["bogus"]).status.code(), Some(1));
    assert_eq!(
        tnsrank(&["predict", "--tree", "cat4.tree", "--subset", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(tnsrank(&["--help"]).status.code(), Some(0));
}

#[test]
fn oversized_oracle_exits_with_three() {
    let tree = "(((((((((((((((((((((((((((1,2),3),4),5),6),7),8),9),10),11),12),13),14),15),16),17),18),19),20),21),22),23),24),25),26),27),28)";
    let out = tnsrank(&["verify", "--tree", tree, "--r", "2", "--subset", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn permscan_defaults_to_exhaustive_for_small_trees() {
    let v = stdout_json(&tnsrank(&["permscan", "--tree", "cat4.tree"]));
    assert_eq!(v["search"]["mode"], "exhaustive");
    assert_eq!(v["k_min"], 1);
    assert_eq!(v["examined"], 1);
}

#[test]
fn optimalize_output_is_a_model_file() {
    let out = tnsrank(&["optimalize", "--model", "cat4_loose.json"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let again = tnsrank(&["optimalize", "--model", text.trim()]);
    assert_eq!(String::from_utf8(again.stdout).unwrap(), text);
}
