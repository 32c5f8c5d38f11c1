//! INI run configuration: parsed into plain values, then range-checked before
//! anything is computed.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use halfline_heat::studies::NodeStudyOptions;
use halfline_heat::{DataFamily, HalfLineProblem, QuadratureConfig, Representation, Rule};
use ini::Ini;

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

const SECTIONS: &[(&str, &[&str])] = &[
    ("problem", &["label", "horizon"]),
    ("u0", &["family", "a", "b", "c", "coeffs"]),
    ("g0", &["family", "a", "b", "c", "coeffs"]),
    (
        "quadrature",
        &[
            "abs_tol",
            "rel_tol",
            "radius",
            "ibp_depth",
            "boundary_ibp_depth",
            "max_panels",
            "rule",
            "order",
            "nodes_per_unit",
            "deform",
        ],
    ),
    (
        "experiment",
        &[
            "xs",
            "ts",
            "representations",
            "traces",
            "corner_orders",
            "point",
            "gl_order",
            "start_nodes",
            "doublings",
            "study_radius",
            "radii",
            "output",
        ],
    ),
];

/// Which one-sided limit a trace row asks for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Direction {
    /// `x → 0⁺` at fixed `t`.
    Space,
    /// `t → 0⁺` at fixed `x`.
    Time,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::Space => "x",
            Direction::Time => "t",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceSpec {
    pub direction: Direction,
    pub order: usize,
    pub anchor: f64,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub problem: HalfLineProblem,
    pub horizon: f64,
    pub quadrature: QuadratureConfig,
    pub xs: Vec<f64>,
    pub ts: Vec<f64>,
    pub representations: Vec<Representation>,
    pub traces: Vec<TraceSpec>,
    pub corner_orders: Vec<usize>,
    pub point: (f64, f64),
    pub nodes: NodeStudyOptions,
    pub radii: Vec<f64>,
    pub output: Option<PathBuf>,
}

pub fn representation_name(r: Representation) -> &'static str {
    match r {
        Representation::FokasContour => "fokas",
        Representation::Ehrenpreis { .. } => "ehrenpreis",
        Representation::GaussKernel => "gauss",
        Representation::SineTransform => "sine",
    }
}

type Section = BTreeMap<String, String>;

fn number(sec: &Section, name: &str, key: &str) -> Result<Option<f64>, ConfigError> {
    match sec.get(key) {
        None => Ok(None),
        Some(v) => match v.trim().parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(Some(x)),
            _ => err(format!("[{name}] {key}: expected a finite number, got {v:?}")),
        },
    }
}

fn count(sec: &Section, name: &str, key: &str) -> Result<Option<usize>, ConfigError> {
    match sec.get(key) {
        None => Ok(None),
        Some(v) => match v.trim().parse::<usize>() {
            Ok(n) => Ok(Some(n)),
            Err(_) => err(format!("[{name}] {key}: expected a non-negative integer, got {v:?}")),
        },
    }
}

fn list(sec: &Section, name: &str, key: &str) -> Result<Option<Vec<f64>>, ConfigError> {
    let Some(v) = sec.get(key) else { return Ok(None) };
    v.split(',')
        .map(|s| match s.trim().parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(x),
            _ => err(format!("[{name}] {key}: bad list entry {s:?}")),
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

fn family(sec: &Section, name: &str) -> Result<DataFamily, ConfigError> {
    let Some(kind) = sec.get("family") else {
        return err(format!("[{name}] family is required"));
    };
    let need = |key: &str| -> Result<f64, ConfigError> {
        number(sec, name, key)?.ok_or_else(|| ConfigError(format!("[{name}] family {kind} needs {key}")))
    };
    let coeffs = || -> Result<Vec<f64>, ConfigError> {
        list(sec, name, "coeffs")?.ok_or_else(|| ConfigError(format!("[{name}] family {kind} needs coeffs")))
    };
    let used: &[&str] = match kind.trim() {
        "zero" => &[],
        "constant" => &["c"],
        "exp_decay" | "gaussian" => &["a", "b"],
        "exp_grow" => &["a", "c"],
        "poly" => &["coeffs"],
        "poly_exp" => &["coeffs", "b"],
        other => return err(format!("[{name}] unknown family {other:?}")),
    };
    if let Some(extra) = sec.keys().find(|k| *k != "family" && !used.contains(&k.as_str())) {
        return err(format!("[{name}] key {extra} does not apply to family {kind}"));
    }
    let f = match kind.trim() {
        "zero" => DataFamily::Constant { c: 0.0 },
        "constant" => DataFamily::Constant { c: need("c")? },
        "exp_decay" => DataFamily::ExpDecay { a: need("a")?, b: need("b")? },
        "gaussian" => DataFamily::Gaussian { a: need("a")?, b: need("b")? },
        "exp_grow" => DataFamily::ExpGrow { a: need("a")?, c: need("c")? },
        "poly" => DataFamily::Poly { coeffs: coeffs()? },
        _ => DataFamily::PolyExp {
            coeffs: coeffs()?,
            b: need("b")?,
        },
    };
    f.validate().map_err(|e| ConfigError(format!("[{name}] {e}")))?;
    Ok(f)
}

fn representations(sec: &Section, horizon: f64) -> Result<Vec<Representation>, ConfigError> {
    let all = "fokas, ehrenpreis, gauss, sine".to_string();
    let spec = sec.get("representations").unwrap_or(&all);
    let mut out = Vec::new();
    for name in spec.split(',').map(str::trim) {
        let r = match name {
            "fokas" => Representation::FokasContour,
            "ehrenpreis" => Representation::Ehrenpreis { horizon },
            "gauss" => Representation::GaussKernel,
            "sine" => Representation::SineTransform,
            other => return err(format!("[experiment] representations: unknown {other:?}")),
        };
        if out.contains(&r) {
            return err(format!("[experiment] representations: {name} listed twice"));
        }
        out.push(r);
    }
    Ok(out)
}

// `direction:order:anchor`, e.g. `x:0:1.0` for the x → 0 limit of u at t = 1.
fn traces(sec: &Section) -> Result<Vec<TraceSpec>, ConfigError> {
    let Some(v) = sec.get("traces") else { return Ok(Vec::new()) };
    v.split(',')
        .map(|item| {
            let parts: Vec<&str> = item.trim().split(':').collect();
            let bad = || ConfigError(format!("[experiment] traces: expected direction:order:anchor, got {item:?}"));
            if parts.len() != 3 {
                return Err(bad());
            }
            let direction = match parts[0] {
                "x" => Direction::Space,
                "t" => Direction::Time,
                _ => return Err(bad()),
            };
            let order = parts[1].parse().map_err(|_| bad())?;
            let anchor: f64 = parts[2].parse().map_err(|_| bad())?;
            if !(anchor > 0.0 && anchor.is_finite()) {
                return err(format!("[experiment] traces: anchor must be positive in {item:?}"));
            }
            Ok(TraceSpec { direction, order, anchor })
        })
        .collect()
}

fn positive_increasing(v: &[f64], what: &str) -> Result<(), ConfigError> {
    if v.is_empty() || v.iter().any(|&x| !(x > 0.0)) || v.windows(2).any(|w| w[1] <= w[0]) {
        return err(format!("[experiment] {what} must be positive and strictly increasing"));
    }
    Ok(())
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let ini = Ini::load_from_str(text).map_err(|e| ConfigError(format!("parse error: {e}")))?;
        let mut sections: BTreeMap<&str, Section> = BTreeMap::new();
        for (name, props) in ini.iter() {
            let Some(name) = name else {
                if let Some((k, _)) = props.iter().next() {
                    return err(format!("key {k} outside any section"));
                }
                continue;
            };
            let Some((sec, keys)) = SECTIONS.iter().find(|s| s.0 == name) else {
                return err(format!("unknown section [{name}]"));
            };
            let entry = sections.entry(sec).or_default();
            for (k, v) in props.iter() {
                if !keys.contains(&k) {
                    return err(format!("[{name}] unknown key {k}"));
                }
                if entry.insert(k.to_string(), v.to_string()).is_some() {
                    return err(format!("[{name}] key {k} given twice"));
                }
            }
        }
        let get = |name: &str| sections.get(name).cloned().unwrap_or_default();
        let (prob, q, ex) = (get("problem"), get("quadrature"), get("experiment"));
        for name in ["u0", "g0"] {
            if !sections.contains_key(name) {
                return err(format!("section [{name}] is required"));
            }
        }
        let u0 = family(&get("u0"), "u0")?;
        let g0 = family(&get("g0"), "g0")?;
        let label = prob.get("label").cloned().unwrap_or_else(|| "problem".into());
        let problem = HalfLineProblem::new(u0, g0, label).map_err(|e| ConfigError(format!("[u0] {e}")))?;

        let xs = list(&ex, "experiment", "xs")?.unwrap_or_else(|| vec![0.5, 1.0, 2.0]);
        let ts = list(&ex, "experiment", "ts")?.unwrap_or_else(|| vec![0.5, 1.0]);
        positive_increasing(&xs, "xs")?;
        positive_increasing(&ts, "ts")?;
        let traces = traces(&ex)?;
        let point = match list(&ex, "experiment", "point")? {
            None => (1.0, 1.0),
            Some(p) if p.len() == 2 && p[0] > 0.0 && p[1] > 0.0 => (p[0], p[1]),
            Some(_) => return err("[experiment] point must be two positive numbers x, t"),
        };
        let t_max = ts
            .iter()
            .copied()
            .chain(traces.iter().filter(|s| s.direction == Direction::Space).map(|s| s.anchor))
            .chain([point.1])
            .fold(0.0f64, f64::max);
        let horizon = number(&prob, "problem", "horizon")?.unwrap_or(t_max + 1.0);
        if horizon <= t_max {
            return err(format!(
                "[problem] horizon {horizon} violates the horizon rule T > t_max (t_max = {t_max})"
            ));
        }

        let mut quadrature = QuadratureConfig::default();
        if let Some(v) = number(&q, "quadrature", "abs_tol")? {
            quadrature.abs_tol = v;
        }
        if let Some(v) = number(&q, "quadrature", "rel_tol")? {
            quadrature.rel_tol = v;
        }
        quadrature.contour.radius = number(&q, "quadrature", "radius")?;
        if let Some(v) = count(&q, "quadrature", "ibp_depth")? {
            quadrature.ibp_depth = v;
        }
        if let Some(v) = count(&q, "quadrature", "boundary_ibp_depth")? {
            quadrature.boundary_ibp_depth = v;
        }
        if let Some(v) = count(&q, "quadrature", "max_panels")? {
            quadrature.max_panels = v;
        }
        if let Some(v) = count(&q, "quadrature", "nodes_per_unit")? {
            quadrature.contour.nodes_per_unit = v;
        }
        let order = count(&q, "quadrature", "order")?;
        quadrature.rule = match q.get("rule").map(|s| s.trim()) {
            None | Some("adaptive") if order.is_none() => Rule::Adaptive,
            None | Some("adaptive") => return err("[quadrature] order applies only to rule = gauss_legendre"),
            Some("gauss_legendre") => Rule::GaussLegendre { order: order.unwrap_or(16) },
            Some(other) => return err(format!("[quadrature] unknown rule {other:?}")),
        };
        if let Some(v) = q.get("deform") {
            quadrature.deform = match v.trim() {
                "true" => true,
                "false" => false,
                other => return err(format!("[quadrature] deform: expected true or false, got {other:?}")),
            };
        }
        quadrature
            .validate()
            .map_err(|e| ConfigError(format!("[quadrature] {e}")))?;

        let representations = representations(&ex, horizon)?;
        let corner_orders = match ex.get("corner_orders") {
            None => vec![0],
            Some(v) => v
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| ConfigError(format!("[experiment] corner_orders: bad list {v:?}")))?,
        };
        if corner_orders.iter().any(|&k| k > halfline_heat::representations::MAX_DX_ORDER) {
            return err(format!(
                "[experiment] corner_orders must not exceed {}",
                halfline_heat::representations::MAX_DX_ORDER
            ));
        }
        for s in &traces {
            let cap = match s.direction {
                Direction::Space => halfline_heat::representations::MAX_DX_ORDER,
                Direction::Time => halfline_heat::representations::MAX_DT_ORDER,
            };
            if s.order > cap {
                return err(format!("[experiment] traces: order {} exceeds {cap}", s.order));
            }
        }
        let defaults = NodeStudyOptions::default();
        let nodes = NodeStudyOptions {
            order: count(&ex, "experiment", "gl_order")?.unwrap_or(defaults.order),
            start_nodes: count(&ex, "experiment", "start_nodes")?.unwrap_or(defaults.start_nodes),
            doublings: count(&ex, "experiment", "doublings")?.unwrap_or(defaults.doublings),
            radius: number(&ex, "experiment", "study_radius")?.unwrap_or(defaults.radius),
        };
        if nodes.order == 0 || nodes.start_nodes == 0 || nodes.doublings == 0 || nodes.doublings > 12 {
            return err("[experiment] gl_order and start_nodes must be positive, doublings in 1..=12");
        }
        if !(nodes.radius > quadrature.contour.split_radius) {
            return err("[experiment] study_radius must exceed the split radius");
        }
        let radii = list(&ex, "experiment", "radii")?.unwrap_or_else(|| vec![5.0, 10.0, 20.0]);
        positive_increasing(&radii, "radii")?;
        let output = ex.get("output").map(|s| PathBuf::from(s.trim()));

        Ok(RunConfig {
            problem,
            horizon,
            quadrature,
            xs,
            ts,
            representations,
            traces,
            corner_orders,
            point,
            nodes,
            radii,
            output,
        })
    }

    pub fn grid(&self) -> Vec<(f64, f64)> {
        self.xs
            .iter()
            .flat_map(|&x| self.ts.iter().map(move |&t| (x, t)))
            .collect()
    }
}
