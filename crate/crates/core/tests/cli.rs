mod common;

use std::path::{Path, PathBuf};
use std::process::Command;

use common::*;
use geofrechet::cli::{self, InstanceFile, PLOT_SAMPLES};
use geofrechet::Error;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

pub const CORPUS: [&str; 5] = [
    "parallel.json",
    "l_shape.json",
    "u_notch.json",
    "comb.json",
    "zigzag.json",
];

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["geofrechet"];
    argv.extend_from_slice(args);
    let code = cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn field(json: &str, key: &str) -> f64 {
    let v: serde_json::Value = serde_json::from_str(json).unwrap();
    v[key].as_f64().unwrap()
}

#[test]
fn decide_parallel_segments() {
    let f = data("parallel.json");
    let (code, out, _) = run(&["decide", "--epsilon", "1.0", f.to_str().unwrap()]);
    assert_eq!((code, out.trim()), (0, "{\"decision\": true}"));
    let (code, out, _) = run(&["decide", "--epsilon", "0.999", f.to_str().unwrap()]);
    assert_eq!((code, out.trim()), (0, "{\"decision\": false}"));
}

#[test]
fn euclidean_frechet_warns_about_polygon() {
    let f = data("parallel.json");
    let (code, out, err) = run(&["frechet", "--euclidean", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(
        out.starts_with("{\"epsilon_star\": 1.00000000000, "),
        "{out}"
    );
    assert!(err.contains("warning"));
}

#[test]
fn frechet_output_is_deterministic() {
    for name in CORPUS {
        let f = data(name);
        let first = run(&["frechet", "--seed", "7", f.to_str().unwrap()]);
        assert_eq!(first.0, 0, "{name}: {}", first.2);
        assert_eq!(first, run(&["frechet", "--seed", "7", f.to_str().unwrap()]));
    }
}

#[test]
fn hausdorff_matches_oracle() {
    let inst = InstanceFile::read(&data("comb.json")).unwrap();
    let poly = inst.space().unwrap().unwrap().polygon().clone();
    let (sa, sb) = inst.point_sets().unwrap();
    let directed = |x: &[geofrechet::Point], y: &[geofrechet::Point]| {
        x.iter()
            .map(|&a| {
                y.iter()
                    .map(|&b| visibility_distance(&poly, a, b))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    let (code, out, _) = run(&["hausdorff", data("comb.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!((field(&out, "directed_ab") - directed(&sa, &sb)).abs() < 1e-9);
    assert!((field(&out, "directed_ba") - directed(&sb, &sa)).abs() < 1e-9);
    let h = directed(&sa, &sb).max(directed(&sb, &sa));
    assert!((field(&out, "hausdorff") - h).abs() < 1e-9);
}

#[test]
fn shortest_path_output() {
    let f = data("comb.json");
    let (code, out, _) = run(&[
        "shortest-path",
        "--from",
        "0.5,2.5",
        "--to",
        "2.5,2.5",
        f.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let want = visibility_distance(&comb(3), p(0.5, 2.5), p(2.5, 2.5));
    assert!((v["length"].as_f64().unwrap() - want).abs() < 1e-9);
    let path = v["path"].as_array().unwrap();
    assert_eq!(path.len(), 4);
    assert_eq!(path[1], serde_json::json!([1.0, 1.0]));
}

#[test]
fn validation_errors_exit_with_two() {
    let dir = std::env::temp_dir().join(format!("geofrechet-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cases = [
        (
            "outside.json",
            r#"{"polygon": [[0,0],[1,0],[1,1],[0,1]], "curveA": [[0.5,0.5],[2,0.5]], "curveB": [[0.5,0.5]]}"#,
        ),
        (
            "bowtie.json",
            r#"{"polygon": [[0,0],[1,1],[1,0],[0,1]], "curveA": [[0.5,0.5]], "curveB": [[0.5,0.5]]}"#,
        ),
        ("malformed.json", r#"{"polygon": [[0,0],[1,0]"#),
        ("nopoly.json", r#"{"curveA": [[0,0]], "curveB": [[1,1]]}"#),
    ];
    for (name, text) in cases {
        let f = dir.join(name);
        std::fs::write(&f, text).unwrap();
        let (code, _, err) = run(&["frechet", f.to_str().unwrap()]);
        assert_eq!(code, 2, "{name}");
        assert!(err.starts_with("error:"), "{name}: {err}");
    }
    assert_eq!(run(&["frechet", "/nonexistent/file.json"]).0, 2);
    assert_eq!(run(&["decide", "--epsilon", "x", "f"]).0, 2);
    assert_eq!(run(&["bogus"]).0, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn internal_guards_exit_with_three() {
    assert_eq!(
        cli::CliError::Library(Error::NonTermination(5)).exit_code(),
        3
    );
    assert_eq!(cli::CliError::Library(Error::DegenerateArea).exit_code(), 2);
}

#[test]
fn corpus_round_trips() {
    for name in CORPUS {
        let inst = InstanceFile::read(&data(name)).unwrap();
        inst.validate().unwrap();
        let again = InstanceFile::parse(&inst.to_json()).unwrap();
        assert_eq!(inst, again, "{name}");
    }
}

#[test]
fn binary_reports_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_geofrechet");
    let ok = Command::new(exe)
        .args([
            "frechet",
            "--seed",
            "3",
            data("zigzag.json").to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with("{\"epsilon_star\": "));
    let bad = Command::new(exe).args(["frechet"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

/// Free pixels recovered from the `class="free"` runs of a plot.
fn parse_raster(svg: &str, w: usize, h: usize) -> Vec<Vec<bool>> {
    let mut grid = vec![vec![false; w]; h];
    for line in svg.lines().filter(|l| l.contains("class=\"free\"")) {
        let attr = |name: &str| -> usize {
            let key = format!(" {name}=\"");
            let start = line.find(&key).unwrap() + key.len();
            let end = start + line[start..].find('"').unwrap();
            line[start..end].parse().unwrap()
        };
        let (x, y, width) = (attr("x"), attr("y"), attr("width"));
        for c in x..x + width {
            grid[y][c] = true;
        }
    }
    grid
}

#[test]
fn plots_match_direct_evaluation() {
    let dir = std::env::temp_dir().join(format!("geofrechet-plot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for name in CORPUS {
        let inst = InstanceFile::read(&data(name)).unwrap();
        let space = inst.space().unwrap().unwrap();
        let (a, b) = inst.curves().unwrap();
        let (_, out, _) = run(&["frechet", data(name).to_str().unwrap()]);
        let eps = field(&out, "epsilon_star") * 0.9;
        let svg_path = dir.join(name.replace(".json", ".svg"));
        let (code, _, err) = run(&[
            "plot-fsd",
            "--epsilon",
            &eps.to_string(),
            "--out",
            svg_path.to_str().unwrap(),
            data(name).to_str().unwrap(),
        ]);
        assert_eq!(code, 0, "{err}");
        let svg = std::fs::read_to_string(&svg_path).unwrap();
        let k = PLOT_SAMPLES;
        let (w, h) = (a.segment_count() * k, b.segment_count() * k);
        let grid = parse_raster(&svg, w, h);
        let truth: Vec<Vec<bool>> = (0..h)
            .map(|row| {
                let q = b.point_at(((h - 1 - row) as f64 + 0.5) / k as f64);
                (0..w)
                    .map(|col| {
                        space
                            .distance(a.point_at((col as f64 + 0.5) / k as f64), q)
                            .unwrap()
                            <= eps
                    })
                    .collect()
            })
            .collect();
        let mut agree = 0;
        let mut counted = 0;
        for r in 0..h {
            for c in 0..w {
                let border = [(0i64, 1i64), (1, 0), (0, -1), (-1, 0)]
                    .iter()
                    .any(|&(dr, dc)| {
                        let (rr, cc) = (r as i64 + dr, c as i64 + dc);
                        rr >= 0
                            && cc >= 0
                            && (rr as usize) < h
                            && (cc as usize) < w
                            && truth[rr as usize][cc as usize] != truth[r][c]
                    });
                if border {
                    continue;
                }
                counted += 1;
                if grid[r][c] == truth[r][c] {
                    agree += 1;
                }
            }
        }
        assert!(
            agree as f64 >= 0.99 * counted as f64,
            "{name}: {agree}/{counted}"
        );
        assert!(svg.contains("class=\"grid\"") && svg.contains("class=\"tick\""));
    }
    std::fs::remove_dir_all(&dir).unwrap();
}
