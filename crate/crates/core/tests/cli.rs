use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use spectral_weyl::geometry::ConvexBody;
use spectral_weyl::pointsets::{construct_example1, parse_point_list, PointSet, Window};
use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_spectral-weyl");

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        let ws = Self { dir: TempDir::new().unwrap() };
        ws.write("square.json", r#"{"dimension": 2, "kind": "box", "boxes": [[[0, 1], [0, 1]]]}"#);
        ws.write("interval.json", r#"{"dimension": 1, "kind": "box", "boxes": [[[0, 1]]]}"#);
        ws.write("z2.json", r#"{"kind": "lattice", "dimension": 2}"#);
        ws.write("z2-09.json", r#"{"kind": "lattice", "dimension": 2, "scale": 0.9}"#);
        ws.write("half.json", r#"{"kind": "lattice", "dimension": 1, "scale": 0.5}"#);
        ws.write("ex1.json", r#"{"kind": "example1", "dimension": 2, "radii": [10, 40]}"#);
        ws.write("cube.json", r#"{"dimension": 2, "kind": "cube"}"#);
        ws
    }

    fn path(&self, name: &str) -> String {
        self.dir.path().join(name).to_str().unwrap().to_string()
    }

    fn write(&self, name: &str, text: &str) {
        std::fs::write(self.dir.path().join(name), text).unwrap();
    }

    fn read(&self, name: &str) -> String {
        std::fs::read_to_string(self.dir.path().join(name)).unwrap()
    }

    fn json(&self, name: &str) -> Value {
        serde_json::from_str(&self.read(name)).unwrap()
    }

    /// Runs the binary; arguments of the form `@name` expand to workspace paths.
    fn run(&self, args: &[&str]) -> Output {
        self.run_env(args, &[])
    }

    fn run_env(&self, args: &[&str], env: &[(&str, &str)]) -> Output {
        let args: Vec<String> =
            args.iter().map(|a| a.strip_prefix('@').map_or(a.to_string(), |n| self.path(n))).collect();
        let mut cmd = Command::new(BIN);
        cmd.args(&args).env_remove("SPECTRAL_WEYL_THREADS");
        for (k, v) in env {
            cmd.env(k, v);
        }
        cmd.output().unwrap()
    }
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "schemas", &format!("{name}.schema.json")].iter().collect();
    let s: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&s).unwrap()
}

fn assert_valid(name: &str, v: &Value) {
    let compiled = schema(name);
    let msgs: Vec<String> = match compiled.validate(v) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    panic!("{name} schema violations: {msgs:?}");
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn verify_verdicts_and_exit_codes() {
    let ws = Workspace::new();
    let o = ws.run(&["verify", "--domain", "@square.json", "--generator", "@z2.json", "--out", "@v.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = ws.json("v.json");
    assert_valid("verify", &v);
    assert_eq!(v["result"]["verdict"], "orthogonal-basis-consistent");
    assert_eq!(v["config"]["command"], "verify");
    assert_eq!(v["tool"], "spectral-weyl");

    let o = ws.run(&["verify", "--domain", "@square.json", "--generator", "@z2-09.json", "--out", "@v9.json"]);
    assert_eq!(code(&o), 1);
    let v = ws.json("v9.json");
    assert_valid("verify", &v);
    assert_eq!(v["result"]["verdict"], "inconsistent");
    assert!(v["result"]["orthogonality"]["worst_pair"].is_array());

    let o = ws.run(&["verify", "--domain", "@interval.json", "--generator", "@half.json", "--claim", "frame", "--out", "@vh.json"]);
    assert_eq!(code(&o), 0);
    let v = ws.json("vh.json");
    assert_eq!(v["result"]["verdict"], "frame-consistent");
    for key in ["a_hat", "b_hat"] {
        assert!((v["result"][key].as_f64().unwrap() - 2.0).abs() < 0.03);
    }
}

#[test]
fn malformed_inputs_report_json_errors() {
    let ws = Workspace::new();
    ws.write("bad-domain.json", r#"{"dimension": 2, "kind": "box", "boxes": [[[1, 0], [0, 1]]]}"#);
    ws.write("bad-points.txt", "0 0\n1 x\n");
    ws.write("bad-gen.json", r#"{"kind": "lattice", "dimension": 2, "colour": 1}"#);
    let cases: Vec<Vec<&str>> = vec![
        vec!["verify", "--domain", "@missing.json", "--generator", "@z2.json"],
        vec!["verify", "--domain", "@bad-domain.json", "--generator", "@z2.json"],
        vec!["verify", "--domain", "@square.json", "--points", "@bad-points.txt"],
        vec!["verify", "--domain", "@square.json", "--generator", "@bad-gen.json"],
        vec!["count", "--domain", "@square.json", "--generator", "@z2.json", "--radii", "5,3"],
        vec!["count", "--domain", "@square.json", "--generator", "@z2.json", "--radii", "1:9:1", "--tol", "0"],
        vec!["frobnicate"],
    ];
    for args in cases {
        let o = ws.run(&args);
        assert_eq!(code(&o), 2, "{args:?}");
        let err: Value = serde_json::from_str(String::from_utf8_lossy(&o.stderr).trim()).unwrap();
        assert_valid("error", &err);
    }
    let o = ws.run_env(&["domain-info", "--domain", "@square.json"], &[("SPECTRAL_WEYL_THREADS", "lots")]);
    assert_eq!(code(&o), 2);
}

#[test]
fn count_writes_csv_and_fit() {
    let ws = Workspace::new();
    let o = ws.run(&["count", "--domain", "@square.json", "--generator", "@z2.json", "--radii", "10:300:5", "--out", "@disk.csv"]);
    assert_eq!(code(&o), 0);
    let fit = ws.json("disk.fit.json");
    assert_valid("count-fit", &fit);
    assert!(fit["result"]["fit"]["alpha_hat"].as_f64().unwrap() <= 1.1);
    let csv = ws.read("disk.csv");
    assert!(csv.starts_with("R,N,E\n"));
    assert_eq!(csv.lines().count(), 1 + 59);

    let o = ws.run(&[
        "count", "--domain", "@square.json", "--generator", "@z2.json", "--body", "@cube.json", "--radii", "0.5:20.5:1",
        "--out", "@half.csv",
    ]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    let fit = ws.json("half.fit.json");
    assert_valid("count-fit", &fit);
    assert!(fit["result"]["fit"].is_null());
    for line in ws.read("half.csv").lines().skip(1) {
        assert!(line.ends_with(",0"), "{line}");
    }

    let o = ws.run(&["count", "--domain", "@square.json", "--generator", "@ex1.json", "--radii", "39:41:0.5", "--out", "@ex.csv"]);
    assert_eq!(code(&o), 0);
    let rows: Vec<(f64, f64)> = ws
        .read("ex.csv")
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            (f[0], f[2])
        })
        .collect();
    let jump = rows.windows(2).find(|w| w[1].0 == 40.0).map(|w| w[1].1 - w[0].1).unwrap();
    assert!(jump >= 59.0 - 2.0 * PI_40, "{rows:?}");
}

// Main-term growth across half a unit of radius at R = 40.
const PI_40: f64 = std::f64::consts::PI * 40.0;

#[test]
fn density_empty_cube_and_domain_info() {
    let ws = Workspace::new();
    let o = ws.run(&["density", "--generator", "@z2.json", "--radii", "50", "--search-box", "0:3", "--out", "@d.json"]);
    assert_eq!(code(&o), 0);
    let d = ws.json("d.json");
    assert_valid("density", &d);
    let row = &d["result"]["densities"][0];
    for key in ["normalized_plus", "normalized_minus"] {
        assert!((0.95..=1.05).contains(&row[key].as_f64().unwrap()));
    }

    let o = ws.run(&["empty-cube", "--generator", "@z2.json", "--search-box", "0:10", "--out", "@e.json"]);
    assert_eq!(code(&o), 0);
    let e = ws.json("e.json");
    assert_valid("empty-cube", &e);
    assert_eq!(e["result"]["side"], 1.0);
    assert_eq!(e["result"]["r_star"], 0.5);

    let gap: String = (-1..=11)
        .flat_map(|i| (-1..=11).map(move |j| (i, j)))
        .filter(|&(i, j)| !((4..=5).contains(&i) && (4..=5).contains(&j)))
        .map(|(i, j)| format!("{i} {j}\n"))
        .collect();
    ws.write("gap.txt", &gap);
    let o = ws.run(&["empty-cube", "--points", "@gap.txt", "--search-box", "0:10", "--out", "@g.json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(ws.json("g.json")["result"]["side"], 3.0);

    let o = ws.run(&["empty-cube", "--domain", "@square.json", "--generator", "@z2.json", "--frame-a", "1", "--frame-b", "1", "--out", "@b.json"]);
    assert_eq!(code(&o), 0);
    let b = ws.json("b.json");
    assert_valid("empty-cube", &b);
    assert!((b["result"]["c2"].as_f64().unwrap() - 0.5).abs() < 1e-9);

    let o = ws.run(&["empty-cube", "--corpus", "--out", "@corpus.json"]);
    assert_eq!(code(&o), 0);
    let t = ws.json("corpus.json");
    assert_valid("empty-cube", &t);
    let comb = t["result"]["rows"].as_array().unwrap().iter().find(|r| r["name"] == "comb").unwrap();
    assert!(comb["report"]["bound_inscribed"].as_f64() < comb["report"]["minkowski_radicand"].as_f64());

    ws.write("l.json", r#"{"dimension": 2, "kind": "polygon2d", "polygon": [[0,0],[2,0],[2,1],[1,1],[1,2],[0,2]]}"#);
    let o = ws.run(&["domain-info", "--domain", "@l.json", "--out", "@info.json"]);
    assert_eq!(code(&o), 0);
    let info = ws.json("info.json");
    assert_valid("domain-info", &info);
    assert_eq!(info["result"]["volume"], 3.0);
    assert!((info["result"]["isoperimetric"]["perimeter"].as_f64().unwrap() - 8.0).abs() < 1e-12);
}

/// Points at distance `r` (within 1e-9) from the origin.
fn on_sphere(path: &Path, dim: usize, r: f64) -> usize {
    let pts = parse_point_list(&std::fs::read_to_string(path).unwrap(), Some(dim)).unwrap();
    pts.iter().filter(|p| (p.iter().map(|x| x * x).sum::<f64>().sqrt() - r).abs() <= 1e-9).count()
}

/// Columns `|v| ≤ r` whose lower crossing `−√(r² − |v|²)` is also a point: `2√(r² − |v|²) ∈ Z`, nonzero.
fn reflected_coincidences(dim: usize, r: i64) -> usize {
    let mut n = 0;
    let ranges = vec![-r..=r; dim - 1];
    let mut stack: Vec<Vec<i64>> = vec![vec![]];
    while let Some(v) = stack.pop() {
        if v.len() == dim - 1 {
            let v2: i64 = v.iter().map(|k| k * k).sum();
            if v2 <= r * r {
                let s = ((r * r - v2) as f64).sqrt();
                if s > 0.0 && (2.0 * s - (2.0 * s).round()).abs() < 1e-12 {
                    n += 1;
                }
            }
            continue;
        }
        for k in ranges[v.len()].clone() {
            let mut w = v.clone();
            w.push(k);
            stack.push(w);
        }
    }
    n
}

#[test]
fn example1_files() {
    let ws = Workspace::new();
    let o = ws.run(&["example1", "--dim", "2", "--radii", "10", "--window", "12", "--out", "@e2.txt"]);
    assert_eq!(code(&o), 0);
    let total = on_sphere(Path::new(&ws.path("e2.txt")), 2, 10.0);
    assert_eq!(total, 21 + reflected_coincidences(2, 10));
    let pts = parse_point_list(&ws.read("e2.txt"), Some(2)).unwrap();
    let upper = pts.iter().filter(|p| p[1] >= 0.0 && (p[0].hypot(p[1]) - 10.0).abs() <= 1e-9).count();
    assert_eq!(upper, 21);

    let o = ws.run(&["example1", "--dim", "3", "--radii", "10", "--window", "12", "--out", "@e3.txt"]);
    assert_eq!(code(&o), 0);
    let total = on_sphere(Path::new(&ws.path("e3.txt")), 3, 10.0);
    let columns = (-10i64..=10).flat_map(|a| (-10i64..=10).map(move |b| a * a + b * b)).filter(|&n| n <= 100).count();
    assert_eq!(columns, 317);
    assert_eq!(total, columns + reflected_coincidences(3, 10));

    let o = ws.run(&["example1", "--dim", "2", "--radii", "", "--window", "12", "--out", "@z.txt"]);
    assert_eq!(code(&o), 0);
    let pts = parse_point_list(&ws.read("z.txt"), Some(2)).unwrap();
    let z2 = PointSet::integer_lattice(2).enumerate(&Window::centered(ConvexBody::unit_ball(2), 12.0).unwrap()).unwrap();
    assert_eq!(pts, z2);
}

#[test]
fn example1_round_trip() {
    let ws = Workspace::new();
    let o = ws.run(&["example1", "--dim", "2", "--radii", "10,40", "--window", "60", "--out", "@rt.txt"]);
    assert_eq!(code(&o), 0);
    let file = PointSet::explicit(parse_point_list(&ws.read("rt.txt"), Some(2)).unwrap());
    let gen = construct_example1(2, vec![10.0, 40.0]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..20 {
        let c: Vec<f64> = vec![rng.gen_range(-30.0..30.0), rng.gen_range(-30.0..30.0)];
        let r = rng.gen_range(0.5..(60.0 - (c[0] * c[0] + c[1] * c[1]).sqrt()).max(0.6));
        let w = Window::new(ConvexBody::unit_ball(2), r, c).unwrap();
        assert_eq!(file.count(&w).unwrap(), gen.count(&w).unwrap());
    }
}

#[test]
fn reports_are_deterministic() {
    let ws = Workspace::new();
    let runs: Vec<Vec<&str>> = vec![
        vec!["verify", "--domain", "@square.json", "--generator", "@z2.json", "--samples", "4096", "--seed", "17"],
        vec!["count", "--domain", "@square.json", "--generator", "@z2.json", "--radii", "10:100:5"],
        vec!["density", "--generator", "@ex1.json", "--radii", "5,20", "--search-box", "0:2"],
        vec!["empty-cube", "--domain", "@square.json", "--generator", "@z2.json", "--samples", "4096", "--seed", "3"],
        vec!["example1", "--radii", "10,40", "--window", "45"],
        vec!["domain-info", "--domain", "@square.json"],
    ];
    for (i, args) in runs.iter().enumerate() {
        let mut outputs = Vec::new();
        for (k, threads) in ["", "1", "3"].iter().enumerate() {
            let name = format!("run{i}-{k}.out");
            let mut full: Vec<&str> = args.clone();
            let out = format!("@{name}");
            full.extend(["--out", out.as_str()]);
            let env: Vec<(&str, &str)> = if threads.is_empty() { vec![] } else { vec![("SPECTRAL_WEYL_THREADS", threads)] };
            let o = ws.run_env(&full, &env);
            assert!(code(&o) <= 1, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
            // Reports name their output path, so compare everything but that field.
            outputs.push(ws.read(&name).replace(&ws.path(&name), "OUT"));
        }
        assert_eq!(outputs[0], outputs[1], "{args:?}");
        assert_eq!(outputs[0], outputs[2], "{args:?}");
    }
}
