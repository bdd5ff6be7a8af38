use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use elemgen::text::{format_matrix, parse_matrix};
use elemgen::{Certificate, ElemWord, FieldSpec, Poly, SqMatrix};
use tempfile::TempDir;

fn elemgen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_elemgen"))
        .args(args)
        .env_remove("ELEMGEN_SEED")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn identity_gives_empty_certificate() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "id.slm", "field 3 1\nsize 3\n[1] [] []\n[] [1] []\n[] [] [1]\n");
    let cert = dir.path().join("id.json");
    let out = elemgen(&["decompose", "-i", s(&m), "-o", s(&cert)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let c = Certificate::from_json(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!((c.length, c.bound), (0, 41));
    assert!(c.word.is_empty() && c.verify());
}

#[test]
fn input_errors_exit_1() {
    let dir = TempDir::new().unwrap();
    let two = write(&dir, "two.slm", "field 2 1\nsize 2\n[1] [1]\n[] [1]\n");
    let out = elemgen(&["decompose", "-i", s(&two)]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("SL2 is not boundedly elementary generated"));

    let bad = write(&dir, "bad.slm", "field 2 1\nsize 3\n[1] [] []\n[] [1 x] []\n[] [] [1]\n");
    let out = elemgen(&["decompose", "-i", s(&bad)]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("line 4, column 7"), "{}", stderr(&out));

    let singular = write(&dir, "det.slm", "field 2 1\nsize 3\n[0 1] [] []\n[] [1] []\n[] [] [1]\n");
    let out = elemgen(&["decompose", "-i", s(&singular)]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("determinant"));

    let out = elemgen(&["decompose", "-i", s(&dir.path().join("missing.slm"))]);
    assert_eq!(code(&out), 1);
}

#[test]
fn budget_exhaustion_exits_3() {
    // (E12(X) E21(X))^30: long Euclidean chains and a pivot of degree about 60
    let f = FieldSpec::prime(2).unwrap();
    let mut w = ElemWord::new(&f, 3);
    for _ in 0..30 {
        w.push(0, 1, Poly::x(&f));
        w.push(1, 0, Poly::x(&f));
    }
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "big.slm", &format_matrix(&w.product()));
    let out = elemgen(&["decompose", "-i", s(&m)]);
    assert_eq!(code(&out), 3, "{}", stderr(&out));
    assert!(stderr(&out).contains("--max-prime-degree"));

    let out = elemgen(&["prime", "-p", "2", "--mod-a", "[0 0 0 1]", "--res-b", "[1]", "--max-prime-degree", "2"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn decompose_verify_round_trip_and_tampering() {
    let dir = TempDir::new().unwrap();
    let m = dir.path().join("m.slm");
    let out = elemgen(&["random", "-p", "3", "-n", "4", "--len", "10", "--deg", "1", "--seed", "9", "-o", s(&m)]);
    assert_eq!(code(&out), 0);
    let cert = dir.path().join("c.json");
    assert_eq!(code(&elemgen(&["decompose", "-i", s(&m), "-o", s(&cert)])), 0);
    assert_eq!(code(&elemgen(&["verify", "-c", s(&cert)])), 0);

    let text = std::fs::read_to_string(&cert).unwrap();
    let mut json: serde_json::Value = serde_json::from_str(&text).unwrap();
    let len = json["length"].as_u64().unwrap();
    assert!(len > 0);

    let mut miscounted = json.clone();
    miscounted["length"] = (len + 1).into();
    let p = write(&dir, "count.json", &miscounted.to_string());
    assert_eq!(code(&elemgen(&["verify", "-c", s(&p)])), 2);

    let t = json["factors"][0]["t"].as_array_mut().unwrap();
    let c0 = t[0].as_u64().unwrap();
    t[0] = ((c0 + 1) % 3).into();
    if t.iter().all(|c| c.as_u64() == Some(0)) {
        t[0] = 1.into();
    }
    let p = write(&dir, "factor.json", &json.to_string());
    assert_eq!(code(&elemgen(&["verify", "-c", s(&p)])), 2);

    let p = write(&dir, "index.json", &text.replacen("\"i\":", "\"i\":9,\"x\":", 1));
    assert_eq!(code(&elemgen(&["verify", "-c", s(&p)])), 2);

    let p = write(&dir, "broken.json", &text[..text.len() / 2]);
    assert_eq!(code(&elemgen(&["verify", "-c", s(&p)])), 1);
}

#[test]
fn decompose_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let m = dir.path().join("m.slm");
    assert_eq!(code(&elemgen(&["random", "-n", "3", "--len", "14", "--deg", "2", "--seed", "21", "-o", s(&m)])), 0);
    let a = elemgen(&["decompose", "-i", s(&m)]);
    let b = elemgen(&["decompose", "-i", s(&m)]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn random_matrices() {
    let a = elemgen(&["random", "-p", "2", "-m", "2", "-n", "3", "--len", "7", "--deg", "2", "--seed", "5"]);
    let b = elemgen(&["random", "-p", "2", "-m", "2", "-n", "3", "--len", "7", "--deg", "2", "--seed", "5"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_elemgen"))
        .args(["random", "-p", "2", "-m", "2", "-n", "3", "--len", "7", "--deg", "2"])
        .env("ELEMGEN_SEED", "5")
        .output()
        .unwrap();
    assert_eq!(env.stdout, a.stdout);
    let other = elemgen(&["random", "-p", "2", "-m", "2", "-n", "3", "--len", "7", "--deg", "2", "--seed", "6"]);
    assert_ne!(other.stdout, a.stdout);

    let id = elemgen(&["random", "-n", "4", "--len", "0", "--deg", "3", "--seed", "1"]);
    assert!(parse_matrix(&stdout(&id)).unwrap().is_identity());

    for seed in 0..100 {
        let seed = seed.to_string();
        let out = elemgen(&["random", "-p", "5", "-n", "3", "--len", "6", "--deg", "2", "--seed", &seed]);
        let m: SqMatrix = parse_matrix(&stdout(&out)).unwrap();
        assert!(m.det().is_one());
    }
    assert_eq!(code(&elemgen(&["random", "-n", "1", "--len", "2", "--deg", "1"])), 1);
}

#[test]
fn stats_reports() {
    let dir = TempDir::new().unwrap();
    let j1 = dir.path().join("a.json");
    let j2 = dir.path().join("b.json");
    let args = |j: &Path| {
        vec![
            "stats".to_string(),
            "--count".into(),
            "40".into(),
            "--seed".into(),
            "3".into(),
            "--json".into(),
            s(j).into(),
        ]
    };
    let a = Command::new(env!("CARGO_BIN_EXE_elemgen")).args(args(&j1)).output().unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_elemgen")).args(args(&j2)).output().unwrap();
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let ra = std::fs::read_to_string(&j1).unwrap();
    assert_eq!(ra, std::fs::read_to_string(&j2).unwrap());
    let report: serde_json::Value = serde_json::from_str(&ra).unwrap();
    assert_eq!(report["decomposed"], 40);
    assert!(report["max_length"].as_u64().unwrap() <= 41);
    assert!(stdout(&a).contains("bound 41"));

    let ids = elemgen(&["stats", "--count", "10", "-n", "4", "--len", "0"]);
    assert_eq!(code(&ids), 0);
    assert!(stdout(&ids).contains("min 0  mean 0.00  max 0"), "{}", stdout(&ids));
}

#[test]
fn prime_search() {
    let out = elemgen(&["prime", "-p", "2", "--mod-a", "[0 1]", "--res-b", "[1]"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("[1 1] = X + 1, degree 1"), "{}", stdout(&out));

    let out = elemgen(&["prime", "-p", "2", "--mod-a", "[1 1 1]", "--res-b", "[1]", "--deg-coprime-to", "2"]);
    assert_eq!(code(&out), 0);
    let degree: usize = stdout(&out).trim().rsplit(' ').next().unwrap().parse().unwrap();
    assert_eq!(degree % 2, 1);

    let out = elemgen(&["prime", "-p", "2", "--mod-a", "[0 1]", "--res-b", "[0 1]"]);
    assert_eq!(code(&out), 1);
    assert_eq!(code(&elemgen(&["prime", "-p", "2", "--mod-a", "[0 q]", "--res-b", "[1]"])), 1);
}

#[test]
fn selftest_passes() {
    let out = elemgen(&["selftest"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(!stdout(&out).contains("FAIL"));
}
