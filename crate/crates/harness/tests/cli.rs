use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;
use upward_core::fixtures;
use upward_core::geometry::rational::int;
use upward_core::geometry::{mirror_x, transform, Drawing, Transform};
use upward_harness::document::{parse_chain, serialize_chain, serialize_drawing, DrawingFile};

fn upward(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_upward"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

struct Scratch(TempDir);

impl Scratch {
    fn new() -> Self {
        Scratch(tempfile::tempdir().unwrap())
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }

    fn drawing(&self, name: &str, d: &Drawing) -> String {
        self.text(name, &serialize_drawing(&DrawingFile::from(d.clone())))
    }

    fn text(&self, name: &str, text: &str) -> String {
        let p = self.path(name);
        std::fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_owned()
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_exit_codes() {
    let t = Scratch::new();
    let ok = upward(&["validate", &t.drawing("tree.json", &fixtures::tree())]);
    assert_eq!(code(&ok), 0);
    assert!(stdout(&ok).contains("\"ok\": true"));
    let bad = upward(&["validate", &t.drawing("cross.json", &fixtures::cross())]);
    assert_eq!(code(&bad), 1);
    assert!(stdout(&bad).contains("\"code\": \"crossing\""));
}

#[test]
fn input_errors_exit_3() {
    let t = Scratch::new();
    let tree = t.drawing("tree.json", &fixtures::tree());
    let unknown = upward(&["validate", &tree, "--frobnicate"]);
    assert_eq!(code(&unknown), 3);
    assert!(stderr(&unknown).contains("Usage"));
    assert_eq!(code(&upward(&["no-such-command"])), 3);

    let broken = t.text("broken.json", "{\n  \"format_version\": 1,\n  ]\n}\n");
    let o = upward(&["validate", &broken]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    assert_eq!(code(&upward(&["validate", s(&t.path("missing.json"))])), 3);
    // invalid drawings are a precondition error for everything but validate
    let cross = t.drawing("cross.json", &fixtures::cross());
    assert_eq!(code(&upward(&["equiv", &cross, &cross])), 3);
    assert_eq!(code(&upward(&["polarization", &cross])), 3);

    let lone = t.drawing(
        "lone.json",
        &Drawing::straight(&[("v", 0, 0)], &[]).unwrap(),
    );
    let out = t.path("ext.json");
    assert_eq!(
        code(&upward(&[
            "extend",
            &lone,
            "-o",
            s(&out),
            "--no-auto-virtualize"
        ])),
        3
    );
    assert_eq!(code(&upward(&["extend", &lone, "-o", s(&out)])), 0);
    assert_eq!(
        code(&upward(&[
            "extend",
            &tree,
            "-o",
            s(&out),
            "--stub-scale",
            "2"
        ])),
        3
    );

    let help = upward(&["--help"]);
    assert_eq!(code(&help), 0);
    assert!(stdout(&help).contains("verify-chain"));
}

#[test]
fn equiv_verdicts() {
    let t = Scratch::new();
    let tree = t.drawing("tree.json", &fixtures::tree());
    let moved = t.drawing(
        "tree_translated.json",
        &transform(
            &fixtures::tree(),
            &Transform::Translate {
                dx: int(3),
                dy: int(-2),
            },
        )
        .unwrap(),
    );
    let diamond = t.drawing("diamond.json", &fixtures::diamond());
    let mirror = t.drawing("diamond_mirror.json", &mirror_x(&fixtures::diamond()));

    let o = upward(&["equiv", &tree, &moved]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("\"verdict\": \"equivalent\""));
    let o = upward(&["equiv", &diamond, &mirror]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("\"kind\": \"polarization\""));
    assert!(stdout(&o).contains("\"vertex\": \"a\""));
    assert_eq!(code(&upward(&["equiv", &tree, &diamond])), 2);
    // same report twice
    assert_eq!(stdout(&upward(&["equiv", &diamond, &mirror])), stdout(&o));
}

#[test]
fn polarization_both_ways_is_identical() {
    let t = Scratch::new();
    let (fig2, _) = fixtures::fig2();
    for (name, d) in [
        ("fig1.json", fixtures::fig1()),
        ("fig2.json", fig2),
        ("diamond.json", fixtures::diamond()),
    ] {
        let f = t.drawing(name, &d);
        let direct = upward(&["polarization", &f]);
        let via = upward(&["polarization", &f, "--via-npp"]);
        assert_eq!(code(&direct), 0);
        assert_eq!(stdout(&direct), stdout(&via), "{name}");
    }
}

#[test]
fn signature_stable_across_stub_scales() {
    let t = Scratch::new();
    let fig1 = t.drawing("fig1.json", &fixtures::fig1());
    let mut digests = Vec::new();
    for scale in ["1/2", "1/3", "0.125"] {
        let out = t.path(&format!("ext-{}.json", scale.replace('/', "_")));
        assert_eq!(
            code(&upward(&[
                "extend",
                &fig1,
                "-o",
                s(&out),
                "--stub-scale",
                scale
            ])),
            0
        );
        let sig = stdout(&upward(&["signature", s(&out)]));
        digests.push(
            sig.lines()
                .find(|l| l.contains("\"digest\""))
                .unwrap()
                .to_owned(),
        );
    }
    assert!(digests.windows(2).all(|w| w[0] == w[1]), "{digests:?}");
    let npp = stdout(&upward(&["signature", &fig1, "--npp"]));
    assert!(npp.contains(&digests[0]));
}

#[test]
fn virtualize_writes_mapping() {
    let t = Scratch::new();
    let (fig2, _) = fixtures::fig2();
    let f = t.drawing("fig2.json", &fig2);
    let out = t.path("virt.json");
    assert_eq!(code(&upward(&["virtualize", &f, "-o", s(&out)])), 0);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("\"virtualization_mapping\"") && text.contains("i1__virt"));
    assert_eq!(code(&upward(&["validate", s(&out)])), 0);
}

#[test]
fn render_writes_svg() {
    let t = Scratch::new();
    let f = t.drawing("diamond.json", &fixtures::diamond());
    let out = t.path("d.svg");
    assert_eq!(code(&upward(&["render", &f, "-o", s(&out), "--labels"])), 0);
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<?xml") && svg.contains("class=\"out-order\""));
    let again = t.path("d2.svg");
    upward(&["render", &f, "-o", s(&again), "--labels"]);
    assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn gen_is_deterministic() {
    let t = Scratch::new();
    let (a, b) = (t.path("a.json"), t.path("b.json"));
    let args = |p: &PathBuf| {
        vec![
            "gen".to_owned(),
            "--vertices".into(),
            "9".into(),
            "--edges".into(),
            "14".into(),
            "--seed".into(),
            "42".into(),
            "-o".into(),
            s(p).to_owned(),
        ]
    };
    let oa = Command::new(env!("CARGO_BIN_EXE_upward"))
        .args(args(&a))
        .output()
        .unwrap();
    let ob = Command::new(env!("CARGO_BIN_EXE_upward"))
        .args(args(&b))
        .output()
        .unwrap();
    assert_eq!((code(&oa), code(&ob)), (0, 0));
    assert!(stdout(&oa).contains("\"achieved_edges\""));
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(code(&upward(&["validate", s(&a)])), 0);
}

#[test]
fn perturb_and_verify_chain() {
    let t = Scratch::new();
    let f = t.drawing("diamond.json", &fixtures::diamond());
    let chain = t.path("chain.json");
    assert_eq!(
        code(&upward(&[
            "perturb",
            &f,
            "--steps",
            "8",
            "--seed",
            "3",
            "-o",
            s(&chain)
        ])),
        0
    );
    let ok = upward(&["verify-chain", s(&chain)]);
    assert_eq!(code(&ok), 0, "{}", stdout(&ok));
    assert!(stdout(&ok).contains("\"frames\": 9"));

    // replace the last frame by the mirror image
    let mut c = parse_chain(&std::fs::read_to_string(&chain).unwrap()).unwrap();
    *c.frames.last_mut().unwrap() = mirror_x(&fixtures::diamond());
    let broken = t.text("broken.json", &serialize_chain(&c));
    let o = upward(&["verify-chain", &broken]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("\"index\": 8"));
}
