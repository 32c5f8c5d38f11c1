//! The five subcommands, each turning a validated config into a table.

use halfline_heat::boundary::{corner_limit, trace_t_to_0, trace_x_to_0, CornerPath};
use halfline_heat::representations::{eval, eval_dt, eval_dx};
use halfline_heat::studies::{node_doubling_study, radius_study};
use halfline_heat::{EvalResult, Result};
use rayon::prelude::*;

use crate::config::{representation_name, Direction, RunConfig};
use crate::output::{Cell, PlotSpec, Table};

/// Maps `f` over `items` in parallel, keeping input order; the first error
/// in that order wins.
fn ordered<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> Result<U> + Sync + Send) -> Result<Vec<U>> {
    items.par_iter().map(f).collect::<Vec<_>>().into_iter().collect()
}

pub fn cmd_eval(cfg: &RunConfig) -> Result<Table> {
    let jobs: Vec<_> = cfg
        .grid()
        .into_iter()
        .flat_map(|(x, t)| cfg.representations.iter().map(move |&r| (x, t, r)))
        .collect();
    let results = ordered(&jobs, |&(x, t, r)| eval(&cfg.problem, r, x, t, &cfg.quadrature))?;
    let mut table = Table::new(&["x", "t", "representation", "value", "est_error"]);
    for r in results {
        table.push(vec![
            r.x.into(),
            r.t.into(),
            representation_name(r.representation).into(),
            r.value.into(),
            r.est_error.into(),
        ]);
    }
    Ok(table)
}

struct Summary {
    max: f64,
    max_err: f64,
    sum: f64,
    sum_err: f64,
    n: usize,
}

impl Summary {
    fn new() -> Self {
        Summary {
            max: 0.0,
            max_err: 0.0,
            sum: 0.0,
            sum_err: 0.0,
            n: 0,
        }
    }

    fn add(&mut self, v: f64, e: f64) {
        if self.n == 0 || v > self.max {
            self.max = v;
            self.max_err = e;
        }
        self.sum += v;
        self.sum_err += e;
        self.n += 1;
    }

    fn row(&self, name: &str) -> Vec<Cell> {
        let n = self.n.max(1) as f64;
        vec![
            name.into(),
            self.max.into(),
            self.max_err.into(),
            (self.sum / n).into(),
            (self.sum_err / n).into(),
        ]
    }
}

pub fn cmd_compare(cfg: &RunConfig) -> Result<Table> {
    let grid = cfg.grid();
    let q = &cfg.quadrature;
    let per_point = ordered(&grid, |&(x, t)| -> Result<(Vec<EvalResult>, EvalResult, EvalResult)> {
        let values = cfg
            .representations
            .iter()
            .map(|&r| eval(&cfg.problem, r, x, t, q))
            .collect::<Result<Vec<_>>>()?;
        let ut = eval_dt(&cfg.problem, 1, x, t, cfg.horizon, q)?;
        let uxx = eval_dx(&cfg.problem, 2, x, t, q)?;
        Ok((values, ut, uxx))
    })?;
    let reps = &cfg.representations;
    let mut table = Table::new(&["quantity", "max", "max_est_error", "mean", "mean_est_error"]);
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            let mut s = Summary::new();
            for (values, _, _) in &per_point {
                let (a, b) = (&values[i], &values[j]);
                s.add((a.value - b.value).abs(), a.est_error + b.est_error);
            }
            let name = format!("{}-{}", representation_name(reps[i]), representation_name(reps[j]));
            table.push(s.row(&name));
        }
    }
    let mut s = Summary::new();
    for (_, ut, uxx) in &per_point {
        s.add((ut.value - uxx.value).abs(), ut.est_error + uxx.est_error);
    }
    table.push(s.row("pde_residual"));
    Ok(table)
}

pub fn cmd_trace(cfg: &RunConfig) -> Result<Table> {
    let q = &cfg.quadrature;
    let results = ordered(&cfg.traces, |s| match s.direction {
        Direction::Space => trace_x_to_0(&cfg.problem, s.order, s.anchor, q),
        Direction::Time => trace_t_to_0(&cfg.problem, s.order, s.anchor, q),
    })?;
    let mut table = Table::new(&["direction", "order", "anchor", "value", "est_error", "converged"]);
    for (s, r) in cfg.traces.iter().zip(results) {
        table.push(vec![
            s.direction.name().into(),
            Cell::Int(s.order as i64),
            s.anchor.into(),
            r.value.into(),
            r.est_error.into(),
            if r.converged { "true" } else { "false" }.into(),
        ]);
    }
    Ok(table)
}

pub fn cmd_corner(cfg: &RunConfig) -> Result<Table> {
    let reports = ordered(&cfg.corner_orders, |&k| corner_limit(&cfg.problem, k, &cfg.quadrature))?;
    let mut table = Table::new(&[
        "k",
        "compat_order",
        "predicted",
        "agrees",
        "diagonal",
        "diagonal_est_error",
        "parabolic",
        "parabolic_est_error",
        "flat",
        "flat_est_error",
        "spread",
        "spread_est_error",
    ]);
    for c in reports {
        let mut row = vec![
            Cell::Int(c.k as i64),
            Cell::Int(c.compat_order),
            c.predicted_limit.into(),
            match c.agrees {
                Some(true) => "true".into(),
                Some(false) => "false".into(),
                None => Cell::Empty,
            },
        ];
        let mut spread_err = 0.0;
        for path in CornerPath::ALL {
            let r = &c.paths.iter().find(|p| p.0 == path).expect("every path is evaluated").1;
            row.push(r.value.into());
            row.push(r.est_error.into());
            spread_err += r.est_error;
        }
        row.push(c.spread().into());
        row.push(spread_err.into());
        table.push(row);
    }
    Ok(table)
}

pub fn cmd_convergence(cfg: &RunConfig) -> Result<Table> {
    let (x, t) = cfg.point;
    let q = &cfg.quadrature;
    let (nodes, radii) = rayon::join(
        || node_doubling_study(&cfg.problem, x, t, &cfg.nodes, q),
        || radius_study(&cfg.problem, x, t, &cfg.radii, q),
    );
    let (nodes, radii) = (nodes?, radii?);
    let mut table = Table::new(&[
        "study",
        "parameter",
        "value",
        "est_error",
        "exact_error",
        "change",
        "change_est_error",
        "bound",
        "reduction",
        "fitted_order",
    ]);
    for (i, r) in nodes.rows.iter().enumerate() {
        let prev_err = i.checked_sub(1).map(|j| nodes.rows[j].est_error);
        table.push(vec![
            "nodes".into(),
            Cell::Int(r.nodes_per_unit as i64),
            r.value.into(),
            r.est_error.into(),
            r.error.into(),
            r.change.into(),
            prev_err.map(|e| e + r.est_error).into(),
            Cell::Empty,
            i.checked_sub(1).and_then(|j| nodes.reductions.get(j).copied()).into(),
            nodes.fitted_order.into(),
        ]);
    }
    for r in radii {
        table.push(vec![
            "radius".into(),
            r.radius.into(),
            r.value.into(),
            r.est_error.into(),
            Cell::Empty,
            r.change.into(),
            r.est_error.into(),
            r.bound.into(),
            Cell::Empty,
            Cell::Empty,
        ]);
    }
    Ok(table)
}

pub fn plot_spec(command: &str) -> PlotSpec {
    match command {
        "eval" => PlotSpec {
            xlabel: "x",
            ylabel: "u",
            logscale: "",
            series: vec![("x", "value")],
            split_by: Some("representation"),
        },
        "compare" => PlotSpec {
            xlabel: "quantity",
            ylabel: "difference",
            logscale: "y",
            series: vec![("#", "max"), ("#", "mean")],
            split_by: None,
        },
        "trace" => PlotSpec {
            xlabel: "anchor",
            ylabel: "limit",
            logscale: "",
            series: vec![("anchor", "value")],
            split_by: Some("direction"),
        },
        "corner" => PlotSpec {
            xlabel: "k",
            ylabel: "path limit",
            logscale: "",
            series: vec![("k", "diagonal"), ("k", "parabolic"), ("k", "flat")],
            split_by: None,
        },
        _ => PlotSpec {
            xlabel: "nodes per unit / radius",
            ylabel: "change",
            logscale: "xy",
            series: vec![("parameter", "change"), ("parameter", "bound")],
            split_by: Some("study"),
        },
    }
}
