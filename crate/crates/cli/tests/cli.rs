use std::path::PathBuf;

use hiders_cli::file::{parse_game_file, Alpha, GameFile, GraphFile, PlayerEntry, SustainerEntry};
use hiders_cli::run_command;
use proptest::prelude::*;
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn run(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["hiders".to_string()];
    argv.extend(args.iter().map(|a| match a.strip_prefix('@') {
        Some(name) => fixture(name),
        None => a.to_string(),
    }));
    run_command(argv)
}

fn json(args: &[&str]) -> Value {
    let (code, out) = run(args);
    assert_eq!(code, 0, "{out}");
    serde_json::from_str(&out).unwrap()
}

fn golden(name: &str, args: &[&str]) {
    let (code, out) = run(args);
    assert_eq!(code, 0, "{out}");
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &out).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
    assert_eq!(out, want, "report for {name} drifted");
}

#[test]
fn golden_reports() {
    golden("verify_four_at_three_halves_triangle", &["verify", "--game", "@four_at_three_halves.toml", "--graph", "@triangle123.toml", "--k", "1"]);
    golden("verify_sustained_tie", &["verify", "--game", "@sustained_tie.toml"]);
    golden("enumerate_four_at_three_halves_k3", &["enumerate", "--game", "@four_at_three_halves.toml", "--k", "3"]);
    golden("greatest_zero_and_three_halves", &["greatest", "--game", "@zero_and_three_halves.toml"]);
    golden("least_sustained_tie", &["least", "--game", "@sustained_tie.toml"]);
    golden("join_four_at_three_halves", &["join", "--game", "@four_at_three_halves.toml", "--graph", "@triangle123.toml", "--graph", "@triangle234.toml"]);
    golden("meet_four_at_three_halves", &["meet", "--game", "@four_at_three_halves.toml", "--graph", "@triangle123.toml", "--graph", "@triangle234.toml"]);
    golden("efficiency_zero_and_three_halves", &["efficiency", "--game", "@zero_and_three_halves.toml"]);
    golden("efficiency_four_at_three_halves", &["efficiency", "--game", "@four_at_three_halves.toml"]);
    golden("characterize_four_at_three_halves", &["characterize", "--game", "@four_at_three_halves.toml", "--graph", "@triangle123.toml"]);
    golden("bound_four_at_three_halves", &["bound", "--game", "@four_at_three_halves.toml"]);
    golden("detect_k4", &["detect", "--game", "@six_players.toml", "--graph", "@k4.toml", "--beta", "5/2"]);
    golden("verify_two_tiers_middle_k3", &["verify", "--game", "@two_tiers.toml", "--graph", "@two_tiers_middle.toml", "--k", "3"]);
}

#[test]
fn spec_examples() {
    let v = json(&["verify", "--game", "@four_at_three_halves.toml", "--graph", "@triangle123.toml", "--k", "1"]);
    assert_eq!(v["verdict"]["stable"], true);
    assert_eq!(v["verdict"]["class"], "PANE");
    assert_eq!(json(&["greatest", "--game", "@zero_and_three_halves.toml"])["edges"].as_array().unwrap().len(), 0);
    assert_eq!(json(&["enumerate", "--game", "@four_at_three_halves.toml", "--k", "3"])["count"], 1);
    assert_eq!(json(&["enumerate", "--game", "@four_at_three_halves.toml", "--k", "2"])["count"], 6);
    let e = json(&["efficiency", "--game", "@zero_and_three_halves.toml"]);
    assert_eq!((e["max_sw"].as_str(), e["pos"].as_str()), (Some("1/2"), Some("inf")));
    let d = json(&["detect", "--game", "@six_players.toml", "--graph", "@k4.toml"]);
    assert_eq!(d["suspected_players"], serde_json::json!([5, 6]));
}

#[test]
fn two_tiers_strata() {
    for (graph, k, stable) in [("@two_tiers_triangle.toml", 3, true), ("@two_tiers_middle.toml", 2, true), ("@two_tiers_middle.toml", 3, false), ("@two_tiers_complete.toml", 5, true)] {
        let v = json(&["verify", "--game", "@two_tiers.toml", "--graph", graph, "--k", &k.to_string()]);
        assert_eq!(v["verdict"]["stable"], stable, "{graph} k={k}");
    }
}

#[test]
fn validation_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.display().to_string()
    };
    let neg = write("neg.toml", "[[players]]\nid = 1\nalpha = \"\u{2212}1\"\n[[players]]\nid = 2\nalpha = 1\n");
    let (code, out) = run(&["verify", "--game", &neg]);
    assert_eq!(code, 2);
    assert!(out.contains("negative alpha"), "{out}");
    let touch = write("touch.toml", "nonplayers = [3]\noriginal_edges = [[1, 3]]\n[[players]]\nid = 1\nalpha = 1\n[[players]]\nid = 2\nalpha = 1\n");
    let (code, out) = run(&["verify", "--game", &touch]);
    assert_eq!(code, 2);
    assert!(out.contains("original edge (1,3) touches a player"), "{out}");
    let float = write("float.toml", "[[players]]\nid = 1\nalpha = 1.5\n[[players]]\nid = 2\nalpha = 1\n");
    let (code, out) = run(&["verify", "--game", &float]);
    assert_eq!(code, 2);
    assert!(out.contains("line"), "{out}");
    let (code, _) = run(&["join", "--game", "@four_at_three_halves.toml", "--graph", "@triangle123.toml"]);
    assert_eq!(code, 2);
    let (code, out) = run(&["join", "--game", "@four_at_three_halves.toml", "--graph", "@edge12.toml", "--graph", "@triangle123.toml"]);
    assert_eq!(code, 2);
    assert!(out.contains("not pairwise stable"), "{out}");
    let (code, _) = run(&["frobnicate", "--game", "@four_at_three_halves.toml"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["verify", "--game", "@four_at_three_halves.toml", "--k", "5"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["detect", "--game", "@four_at_three_halves.toml", "--beta", "3"]);
    assert_eq!(code, 2);
}

#[test]
fn budget_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let big = dir.path().join("big.toml");
    std::fs::write(&big, "nonplayers = [3, 4, 5, 6, 7, 8]\n[[players]]\nid = 1\nalpha = 1\n[[players]]\nid = 2\nalpha = 1\n").unwrap();
    let big = big.display().to_string();
    for cmd in ["enumerate", "efficiency", "oracle-check"] {
        let (code, out) = run(&[cmd, "--game", &big]);
        assert_eq!(code, 3, "{cmd}: {out}");
    }
    let b = json(&["bound", "--game", &big]);
    assert_eq!(b["gap"], Value::Null);
}

#[test]
fn out_file_and_text_format() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let (code, printed) = run(&["bound", "--game", "@four_at_three_halves.toml", "--out", &out.display().to_string()]);
    assert_eq!((code, printed.as_str()), (0, ""));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!((v["bound"].as_str(), v["gap"].as_str()), (Some("42"), Some("18")));
    let (_, text) = run(&["bound", "--game", "@four_at_three_halves.toml", "--format", "text"]);
    assert_eq!(text, "bound: 42\ncommand: bound\ngap: 18\nholds: true\n");
}

#[test]
fn oracle_check_is_clean_on_fixtures() {
    for game in ["@sustained_tie.toml", "@empty_stable_pair.toml", "@four_at_three_halves.toml", "@zero_and_three_halves.toml"] {
        let (code, out) = run(&["oracle-check", "--game", game]);
        assert_eq!(code, 0, "{game}: {out}");
    }
}

#[test]
fn sustained_tie_file_matches_model() {
    let (net, game) = parse_game_file(&std::fs::read_to_string(fixture("sustained_tie.toml")).unwrap()).unwrap();
    let (g, want) = hiders::instances::sustained_tie();
    assert_eq!(game, g);
    assert_eq!(net, want);
}

#[test]
fn fixtures_round_trip() {
    for entry in std::fs::read_dir(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        if let Ok(g) = GameFile::parse(&text) {
            assert_eq!(GameFile::parse(&g.render()).unwrap(), g);
        } else {
            let g = GraphFile::parse(&text).unwrap();
            assert_eq!(GraphFile::parse(&g.render()).unwrap(), g);
        }
    }
}

fn alpha() -> impl Strategy<Value = Alpha> {
    (0i64..200, 1i64..20).prop_map(|(p, q)| Alpha(hiders::Rational::new(p, q)))
}

fn game_file() -> impl Strategy<Value = GameFile> {
    (2usize..5, 0usize..4).prop_flat_map(|(n, m)| {
        let nodes = n + m;
        (
            proptest::collection::vec(alpha(), n),
            proptest::collection::vec((1..=nodes, 1..=nodes), 0..6),
            proptest::collection::vec((1..=n, 1..=nodes, 1..=nodes), 0..3),
        )
            .prop_map(move |(alphas, edges, sus)| GameFile {
                nonplayers: (n + 1..=n + m).collect(),
                original_edges: edges.iter().filter(|(a, b)| a > &n && b > &n && a != b).map(|&(a, b)| [a, b]).collect(),
                edges: Some(edges.iter().map(|&(a, b)| [a, b]).collect()),
                sustainers: sus.into_iter().map(|(p, a, b)| SustainerEntry { edge: [a, b], player: p }).collect(),
                players: alphas.into_iter().enumerate().map(|(i, alpha)| PlayerEntry { id: i + 1, alpha }).collect(),
            })
    })
}

proptest! {
    #[test]
    fn game_files_round_trip(g in game_file()) {
        let text = g.render();
        let back = GameFile::parse(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.render(), text);
    }

    #[test]
    fn valid_models_round_trip(g in game_file()) {
        if let Ok(inst) = g.instance() {
            let again = GameFile::from_model(&inst.game, &inst.network).instance().unwrap();
            prop_assert_eq!(again.network, inst.network);
            prop_assert_eq!(again.game, inst.game);
        }
    }
}
