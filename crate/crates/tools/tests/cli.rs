use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const PATH_GRAPH: &str = "3 2\n0 1 1\n1 2 2\n";
const TRIANGLE: &str = "3 3\n0 1 0\n1 2 1\n0 2 2\n";
const FOUR_CYCLE: &str = "4 4\n0 1 0\n1 2 2\n2 3 0\n3 0 3\n";

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(TempDir::new().unwrap())
    }

    fn file(&self, name: &str, contents: impl AsRef<[u8]>) -> PathBuf {
        let p = self.0.path().join(name);
        std::fs::write(&p, contents).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }
}

fn qfz(args: &[&dyn AsRef<std::ffi::OsStr>]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfz")).args(args.iter().map(|a| a.as_ref())).output().unwrap()
}

fn read(p: &Path) -> String {
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn psi_on_path() {
    let d = Dir::new();
    let g = d.file("g.txt", PATH_GRAPH);
    let s = d.path("s.txt");
    let out = qfz(&[&"psi", &g, &"-o", &s]);
    assert!(out.status.success(), "{out:?}");
    assert_eq!(read(&s), "3 2\n0 1 0\n1 2 1\n");
}

#[test]
fn psi_raw_values() {
    let d = Dir::new();
    let g = d.file("g.txt", "3 3\n0 1 0.5\n1 2 7\n0 2 9.25\n");
    let s = d.path("s.txt");
    assert!(qfz(&[&"psi", &g, &"--raw", &"-o", &s]).status.success());
    assert_eq!(read(&s), "3 3\n0 1 0.5\n1 2 7\n0 2 7\n");
}

#[test]
fn check_saliency_exit_codes() {
    let d = Dir::new();
    let tri = d.file("t.txt", TRIANGLE);
    assert_eq!(qfz(&[&"check-saliency", &tri]).status.code(), Some(1));
    let s = d.path("s.txt");
    assert!(qfz(&[&"psi", &tri, &"-o", &s]).status.success());
    assert_eq!(qfz(&[&"check-saliency", &s]).status.code(), Some(0));
    assert_eq!(qfz(&[&"check-saliency", &"--ranks", &s]).status.code(), Some(0));
}

#[test]
fn saliency_files_feed_back_with_ranks() {
    let d = Dir::new();
    let g = d.file("g.txt", FOUR_CYCLE);
    let s = d.path("s.txt");
    let s2 = d.path("s2.txt");
    assert!(qfz(&[&"psi", &"--ranks", &g, &"-o", &s]).status.success());
    assert_eq!(read(&s), "4 4\n0 1 0\n1 2 2\n2 3 0\n3 0 2\n");
    assert!(qfz(&[&"psi", &"--ranks", &s, &"-o", &s2]).status.success());
    assert_eq!(read(&s), read(&s2));
}

#[test]
fn qfz_then_saliency() {
    let d = Dir::new();
    let g = d.file("g.txt", FOUR_CYCLE);
    let (den, s, direct) = (d.path("d.txt"), d.path("s.txt"), d.path("p.txt"));
    assert!(qfz(&[&"qfz", &"--ranks", &g, &"-o", &den]).status.success());
    assert_eq!(read(&den), "4 3\n4 1 0 1\n5 1 2 3\n6 3 4 5\n");
    assert!(qfz(&[&"saliency", &g, &den, &"-o", &s]).status.success());
    assert!(qfz(&[&"psi", &"--ranks", &g, &"-o", &direct]).status.success());
    assert_eq!(read(&s), read(&direct));
}

#[test]
fn mst_and_check() {
    let d = Dir::new();
    let g = d.file("g.txt", FOUR_CYCLE);
    let t = d.path("t.txt");
    assert!(qfz(&[&"mst", &g, &"-o", &t]).status.success());
    assert_eq!(read(&t), "0\n1\n2\n");
    assert_eq!(qfz(&[&"check-mst", &g, &t]).status.code(), Some(0));

    let worse = d.file("w.txt", "0\n2\n3\n");
    assert_eq!(qfz(&[&"check-mst", &g, &worse]).status.code(), Some(1));
    let partial = d.file("p.txt", "0\n");
    assert_eq!(qfz(&[&"check-mst", &g, &partial]).status.code(), Some(1));
    let bogus = d.file("b.txt", "9\n");
    assert_eq!(qfz(&[&"check-mst", &g, &bogus]).status.code(), Some(2));

    let tg = d.path("tg.txt");
    assert!(qfz(&[&"mst", &"--as-graph", &g, &"-o", &tg]).status.success());
    assert_eq!(read(&tg), "4 3\n0 1 0\n1 2 2\n2 3 0\n");
}

#[test]
fn verify_fixtures() {
    let d = Dir::new();
    for (name, text) in [("path", PATH_GRAPH), ("triangle", TRIANGLE), ("cycle", FOUR_CYCLE)] {
        let g = d.file(name, text);
        let out = qfz(&[&"verify", &g]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        let stdout = String::from_utf8(out.stdout).unwrap();
        assert_eq!(stdout.lines().count(), 10);
        assert!(stdout.lines().all(|l| l.starts_with("PASS ")), "{stdout}");
    }
}

#[test]
fn parse_and_io_errors_exit_2() {
    let d = Dir::new();
    let missing = d.path("nope.txt");
    let out = qfz(&[&"psi", &missing, &"-o", &d.path("s.txt")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let bad = d.file("bad.txt", "3 2\n0 1 1\n");
    assert_eq!(qfz(&[&"qfz", &bad, &"-o", &d.path("d.txt")]).status.code(), Some(2));
    let disconnected = d.file("dis.txt", "3 1\n0 1 1\n");
    assert_eq!(qfz(&[&"check-saliency", &disconnected]).status.code(), Some(2));
    assert_eq!(qfz(&[&"psi", &d.file("g.txt", PATH_GRAPH)]).status.code(), Some(2), "-o is required");
    assert_eq!(qfz(&[&"frobnicate"]).status.code(), Some(2));
    let p3 = d.file("x.pgm", "P3 1 1 255 0 0 0");
    assert_eq!(qfz(&[&"image-graph", &p3, &"-o", &d.path("g2.txt")]).status.code(), Some(2));
}

#[test]
fn image_pipeline() {
    let d = Dir::new();
    let img = d.file("in.pgm", "P2\n2 2\n255\n0 1\n2 3\n");
    let (g, s, r) = (d.path("g.txt"), d.path("s.txt"), d.path("r.pgm"));
    assert!(qfz(&[&"image-graph", &img, &"--adjacency", &"4", &"-o", &g]).status.success());
    assert_eq!(read(&g), "4 4\n0 1 1\n2 3 1\n0 2 2\n1 3 2\n");
    assert!(qfz(&[&"psi", &g, &"-o", &s]).status.success());
    assert!(qfz(&[&"render", &img, &s, &"-o", &r]).status.success());
    // ranks [0,0,1,1]: rows merge first, then the two rows at rank 1
    assert_eq!(read(&r), "P2\n# max_saliency 1\n3 3\n255\n0 0 0\n255 255 255\n0 0 0\n");

    let p5 = d.path("r5.pgm");
    assert!(qfz(&[&"render", &"--format", &"p5", &img, &s, &"-o", &p5]).status.success());
    assert!(std::fs::read(&p5).unwrap().starts_with(b"P5\n"));

    let g8 = d.path("g8.txt");
    assert!(qfz(&[&"image-graph", &img, &"--adjacency", &"8", &"-o", &g8]).status.success());
    assert_eq!(read(&g8).lines().next(), Some("4 6"));
    // a saliency file over the 8-adjacency graph cannot be rendered
    let s8 = d.path("s8.txt");
    assert!(qfz(&[&"psi", &g8, &"-o", &s8]).status.success());
    assert_eq!(qfz(&[&"render", &img, &s8, &"-o", &r]).status.code(), Some(2));
}

#[test]
fn single_pixel_image_warns() {
    let d = Dir::new();
    let img = d.file("one.pgm", "P2 1 1 255 7");
    let g = d.path("g.txt");
    let out = qfz(&[&"image-graph", &img, &"-o", &g]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    assert_eq!(read(&g), "1 0\n");
}
