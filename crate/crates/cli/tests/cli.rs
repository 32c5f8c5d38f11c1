use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_halfline-heat"))
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn run(cmd: &str, cfg: &Path, extra: &[&str]) -> Output {
    bin()
        .arg(cmd)
        .arg("--config")
        .arg(cfg)
        .args(extra)
        .output()
        .expect("binary runs")
}

struct Csv {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Csv {
    fn col(&self, name: &str) -> usize {
        self.header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"))
    }

    fn nums(&self, name: &str) -> Vec<f64> {
        let c = self.col(name);
        self.rows.iter().map(|r| r[c].parse().unwrap()).collect()
    }
}

fn ok_csv(cmd: &str, cfg: &Path) -> Csv {
    let out = run(cmd, cfg, &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut rd = csv::Reader::from_reader(out.stdout.as_slice());
    let header = rd.headers().unwrap().iter().map(String::from).collect();
    let rows = rd
        .records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect();
    Csv { header, rows }
}

fn write_config(dir: &TempDir, text: &str) -> PathBuf {
    let p = dir.path().join("run.ini");
    std::fs::write(&p, text).unwrap();
    p
}

const CALORIC_3X3: &str = "
[u0]
family = exp_decay
a = 1
b = 1
[g0]
family = exp_grow
a = 1
c = 1
[experiment]
xs = 0.5, 1, 2
ts = 0.5, 1, 2
";

#[test]
fn eval_reproduces_the_caloric_solution() {
    let dir = TempDir::new().unwrap();
    let csv = ok_csv("eval", &write_config(&dir, CALORIC_3X3));
    assert_eq!(csv.header, ["x", "t", "representation", "value", "est_error"]);
    assert_eq!(csv.rows.len(), 36);
    let (xs, ts, vs) = (csv.nums("x"), csv.nums("t"), csv.nums("value"));
    for i in 0..vs.len() {
        assert!((vs[i] - (ts[i] - xs[i]).exp()).abs() <= 1e-7, "row {i}");
    }
    for point in vs.chunks(4) {
        let hi = point.iter().cloned().fold(f64::MIN, f64::max);
        let lo = point.iter().cloned().fold(f64::MAX, f64::min);
        assert!(hi - lo <= 1e-7);
    }
}

#[test]
fn zero_data_gives_zeros() {
    let cfg = config("zero.ini");
    assert!(ok_csv("eval", &cfg).nums("value").iter().all(|&v| v == 0.0));
    let c = ok_csv("compare", &cfg);
    assert!(c.nums("max").iter().all(|&v| v == 0.0));
    assert!(ok_csv("trace", &cfg).nums("value").iter().all(|&v| v == 0.0));
    let c = ok_csv("corner", &cfg);
    for path in ["diagonal", "parabolic", "flat"] {
        assert!(c.nums(path).iter().all(|&v| v == 0.0));
    }
    assert!(ok_csv("convergence", &cfg).nums("value").iter().all(|&v| v == 0.0));
}

#[test]
fn compare_bounds_pairwise_differences() {
    for name in ["caloric.ini", "erfc.ini"] {
        let c = ok_csv("compare", &config(name));
        assert_eq!(c.rows.len(), 7);
        let q = c.col("quantity");
        for (row, max) in c.rows.iter().zip(c.nums("max")) {
            let tol = if row[q] == "pde_residual" { 1e-6 } else { 1e-7 };
            assert!(max <= tol, "{name} {}: {max}", row[q]);
        }
    }
}

#[test]
fn traces_of_the_caloric_solution() {
    let c = ok_csv("trace", &config("caloric.ini"));
    let v = c.nums("value");
    let conv = c.col("converged");
    assert!((v[0] - 1f64.exp()).abs() < 1e-8);
    assert!((v[2] - (-1f64).exp()).abs() < 1e-8);
    assert!(c.rows.iter().all(|r| r[conv] == "true"));
}

#[test]
fn corner_tables() {
    let c = ok_csv("corner", &config("caloric.ini"));
    let agrees = c.col("agrees");
    assert_eq!(c.rows.len(), 6);
    assert!(c.rows.iter().all(|r| r[agrees] == "true"));

    let c = ok_csv("corner", &config("erfc.ini"));
    assert!(c.nums("spread")[0] > 0.3);
    assert_eq!(c.rows[0][c.col("predicted")], "");
    assert_eq!(c.rows[0][c.col("compat_order")], "-1");
}

#[test]
fn convergence_study() {
    let c = ok_csv("convergence", &config("caloric.ini"));
    let study = c.col("study");
    let red = c.col("reduction");
    let reductions: Vec<f64> = c
        .rows
        .iter()
        .filter(|r| r[study] == "nodes" && !r[red].is_empty())
        .map(|r| r[red].parse().unwrap())
        .collect();
    assert_eq!(reductions.len(), 4);
    assert!(reductions.iter().all(|&r| r >= 4.0), "{reductions:?}");
    let (change, bound) = (c.col("change"), c.col("bound"));
    for r in c.rows.iter().filter(|r| r[study] == "radius") {
        assert!(r[change].parse::<f64>().unwrap() <= r[bound].parse::<f64>().unwrap());
    }
}

#[test]
fn every_value_column_has_an_error_sibling() {
    let cfg = config("caloric.ini");
    for (cmd, values) in [
        ("eval", &["value"][..]),
        ("compare", &["max", "mean"][..]),
        ("trace", &["value"][..]),
        ("corner", &["diagonal", "parabolic", "flat", "spread"][..]),
        ("convergence", &["value", "change"][..]),
    ] {
        let c = ok_csv(cmd, &cfg);
        for v in values {
            let sibling = if *v == "value" { "est_error".to_string() } else { format!("{v}_est_error") };
            assert_eq!(c.col(&sibling), c.col(v) + 1, "{cmd} {v}");
        }
    }
}

#[test]
fn output_is_deterministic_across_job_counts() {
    let dir = TempDir::new().unwrap();
    let cfg = config("erfc.ini");
    for cmd in ["eval", "compare", "corner"] {
        let mut outs = Vec::new();
        for jobs in ["1", "4", "4"] {
            let path = dir.path().join(format!("{cmd}-{}.csv", outs.len()));
            let o = run(cmd, &cfg, &["--jobs", jobs, "--out", path.to_str().unwrap()]);
            assert!(o.status.success());
            outs.push(std::fs::read(&path).unwrap());
        }
        assert!(outs.windows(2).all(|w| w[0] == w[1]), "{cmd}");
    }
}

#[test]
fn plot_script_references_the_csv() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("conv.csv");
    let o = run(
        "convergence",
        &config("caloric.ini"),
        &["--out", out.to_str().unwrap(), "--plot-script"],
    );
    assert!(o.status.success());
    let script = std::fs::read_to_string(dir.path().join("conv.gp")).unwrap();
    assert!(script.contains(out.to_str().unwrap()));
    assert!(script.contains("set datafile separator ','"));

    let o = run("eval", &config("caloric.ini"), &["--plot-script"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_path_from_config() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("from-config.csv");
    let text = format!("{CALORIC_3X3}output = {}\n", out.display());
    let o = run("eval", &write_config(&dir, &text), &[]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&out).unwrap().starts_with("x,t,representation,value,est_error\n"));
}

#[test]
fn config_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let cases = [
        format!("[problem]\nhorizon = 2\n{CALORIC_3X3}"),
        format!("{CALORIC_3X3}colour = red\n"),
        CALORIC_3X3.replace("b = 1", "b = -1"),
        CALORIC_3X3.replace("[g0]", "[g1]"),
        format!("{CALORIC_3X3}[quadrature]\nabs_tol = 0\n"),
    ];
    for (i, text) in cases.iter().enumerate() {
        let o = run("eval", &write_config(&dir, text), &[]);
        assert_eq!(o.status.code(), Some(2), "case {i}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(o.stdout.is_empty());
    }
    let o = run("eval", &write_config(&dir, &cases[0]), &[]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("horizon rule"));
    let o = run("eval", Path::new("/nonexistent/run.ini"), &[]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn numerical_failure_exits_with_three() {
    let dir = TempDir::new().unwrap();
    // A valid config whose boundary data e^{400t} overflows at t = 2.
    let text = "[u0]\nfamily = zero\n[g0]\nfamily = exp_grow\na = 1\nc = 400\n[experiment]\nxs = 1\nts = 2\n";
    let o = run("eval", &write_config(&dir, text), &[]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("numerical failure"));
    assert!(o.stdout.is_empty());
}
