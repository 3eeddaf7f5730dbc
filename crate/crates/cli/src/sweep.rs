//! Grid expansion and per-row evaluation.

use dicke_hp::dicke::{self, DickeParams, EdBasis};
use dicke_hp::double::{self, DoubleDickeParams, DoubleEdBasis};
use dicke_hp::ed::{self, EdOptions};
use dicke_hp::gaussian::{renyi_entropy, DegeneracyOffset, FluctuationReport};
use dicke_hp::Error;
use rayon::prelude::*;

use crate::config::{Mode, Model, SweepConfig, SCHEMA_VERSION};
use crate::output::{Cell, Table};
use crate::CliError;

#[derive(Debug, Clone, Copy)]
enum Point {
    Dicke(DickeParams),
    Double {
        p: DoubleDickeParams,
        polar: Option<(f64, f64)>,
    },
}

#[derive(Debug, Clone, Copy)]
struct Job {
    point: Point,
    n_spins: Option<usize>,
}

impl Job {
    /// Rough Hilbert-space size, used to start the largest ED jobs first.
    fn cost(&self) -> usize {
        match (self.point, self.n_spins) {
            (_, None) => 1,
            (Point::Dicke(_), Some(n)) => n + 1,
            (Point::Double { .. }, Some(n)) => (n + 1) * (n + 1),
        }
    }
}

fn jobs(cfg: &SweepConfig) -> Vec<Job> {
    let f = &cfg.frequencies;
    let points: Vec<Point> = match cfg.model {
        Model::Dicke => {
            let base = DickeParams {
                omega: f.omega_cav,
                omega0: f.omega0,
                lambda: 0.0,
            };
            cfg.lambda.as_ref().map_or(vec![], |a| a.values()).into_iter().map(|l| Point::Dicke(base.with_lambda(l))).collect()
        }
        Model::DoubleDicke => {
            let base = DoubleDickeParams {
                omega_cav: f.omega_cav,
                omega0_c: f.omega0_c,
                omega0_i: f.omega0_i,
                lambda_c: 0.0,
                lambda_i: 0.0,
            };
            if let Some(radial) = &cfg.radial {
                radial
                    .r
                    .values()
                    .into_iter()
                    .map(|r| Point::Double {
                        p: base.polar(r, radial.theta),
                        polar: Some((r, radial.theta)),
                    })
                    .collect()
            } else {
                let (cs, is) = (cfg.lambda_c.as_ref().unwrap().values(), cfg.lambda_i.as_ref().unwrap().values());
                cs.iter()
                    .flat_map(|&lc| {
                        is.iter().map(move |&li| Point::Double {
                            p: DoubleDickeParams {
                                lambda_c: lc,
                                lambda_i: li,
                                ..base
                            },
                            polar: None,
                        })
                    })
                    .collect()
            }
        }
    };
    match cfg.mode {
        Mode::Thermo => points.into_iter().map(|point| Job { point, n_spins: None }).collect(),
        Mode::Ed => points
            .into_iter()
            .flat_map(|point| cfg.ed.n_spins.iter().map(move |&n| Job { point, n_spins: Some(n) }))
            .collect(),
    }
}

/// Quantities common to every row kind; NaN marks a missing value.
struct Values {
    phase: String,
    fl: Option<FluctuationReport>,
    s_vn: f64,
    offset: f64,
    renyi: Vec<f64>,
    gaps: [Option<f64>; 3],
    ed: Option<EdInfo>,
}

struct EdInfo {
    n_max: usize,
    gap01: f64,
    parity: f64,
    converged: bool,
    cutoff_warning: bool,
    residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowStatus {
    Ok,
    Warning,
    Critical,
    Error,
    BudgetExceeded,
}

impl RowStatus {
    fn label(self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::Warning => "warning",
            RowStatus::Critical => "critical-point",
            RowStatus::Error => "error",
            RowStatus::BudgetExceeded => "budget-exceeded",
        }
    }
}

pub struct SweepOutput {
    pub table: Table,
    pub statuses: Vec<RowStatus>,
}

impl SweepOutput {
    pub fn warnings(&self) -> usize {
        self.statuses.iter().filter(|s| matches!(s, RowStatus::Warning | RowStatus::Error)).count()
    }

    pub fn budget_exceeded(&self) -> bool {
        self.statuses.contains(&RowStatus::BudgetExceeded)
    }

    /// Exit code: 3 if any row ran out of budget, 4 if every row failed, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.budget_exceeded() {
            3
        } else if !self.statuses.is_empty() && self.statuses.iter().all(|s| *s == RowStatus::Error) {
            4
        } else {
            0
        }
    }
}

fn renyi_from_spectrum(w: &[f64], alpha: f64) -> f64 {
    w.iter().filter(|&&x| x > 0.0).map(|&x| x.powf(alpha)).sum::<f64>().log2() / (1.0 - alpha)
}

fn thermo_gaps(point: &Point) -> [Option<f64>; 3] {
    match point {
        Point::Dicke(p) => dicke::solve_thermo(p, dicke::default_epsilon(p)).map_or([None; 3], |s| [Some(s.gap_minus), Some(s.gap_plus), None]),
        Point::Double { p, .. } => double::double_gaps(p).map_or([None; 3], |g| g.map(Some)),
    }
}

fn thermo_values(point: &Point, alphas: &[f64]) -> Result<Values, (Error, String)> {
    let gaps = thermo_gaps(point);
    let (phase, fl, offset) = match point {
        Point::Dicke(p) => {
            let info = dicke::classify_phase(p);
            let offset = if info.phase == dicke::Phase::Superradiant && !info.critical { 1.0 } else { 0.0 };
            let phase = info.phase.label().to_string();
            (phase.clone(), dicke::hp_thermo(p).map_err(|e| (e, phase)), offset)
        }
        Point::Double { p, .. } => {
            let info = double::classify_double_phase(p);
            let offset = DegeneracyOffset::from_degeneracy(info.vacuum_degeneracy(p)).map_or(0.0, |o| o.bits());
            let phase = info.phase.label().to_string();
            (phase.clone(), double::hp_double(p).map_err(|e| (e, phase)), offset)
        }
    };
    let fl = fl?;
    let s_vn = dicke_hp::gaussian::entropy_from_hp(fl.hp, DegeneracyOffset::NONE).map_err(|e| (e, phase.clone()))?;
    let renyi = alphas.iter().map(|&a| renyi_entropy(fl.hp, a).unwrap_or(f64::NAN)).collect();
    Ok(Values {
        phase,
        fl: Some(fl),
        s_vn,
        offset,
        renyi,
        gaps,
        ed: None,
    })
}

fn ed_values(point: &Point, n_spins: usize, cfg: &SweepConfig, opts: &EdOptions) -> Result<Values, (Error, String)> {
    let (tol, n_max) = (cfg.ed.cutoff_tol, cfg.ed.n_max);
    let (phase, fl, spectrum, info) = match point {
        Point::Dicke(p) => {
            let phase = dicke::classify_phase(p).phase.label().to_string();
            let tag = |e| (e, phase.clone());
            let (basis, result, fl) = match n_max {
                Some(m) => {
                    let basis = EdBasis::new(n_spins, m).map_err(tag)?;
                    let r = dicke::solve_ed(p, &basis, opts).map_err(tag)?;
                    let fl = dicke::photon_moments_ed(&r, &basis).map_err(tag)?;
                    (basis, r, fl)
                }
                None => {
                    let c = dicke::converge_cutoff(p, n_spins, tol, opts).map_err(tag)?;
                    (c.basis, c.result, c.fluctuations)
                }
            };
            let spectrum = ed::photon_spectrum(&result.state, basis.n_max + 1);
            (phase, fl, spectrum, ed_info(&result))
        }
        Point::Double { p, .. } => {
            let phase = double::classify_double_phase(p).phase.label().to_string();
            let tag = |e| (e, phase.clone());
            let r = match n_max {
                Some(m) => double::double_ed(p, &DoubleEdBasis::new(n_spins, m).map_err(tag)?, opts),
                None => double::converge_double_cutoff(p, n_spins, tol, opts),
            }
            .map_err(tag)?;
            let spectrum = ed::photon_spectrum(&r.result.state, r.n_max + 1);
            (phase, r.fluctuations, spectrum, ed_info(&r.result))
        }
    };
    Ok(Values {
        phase,
        fl: Some(fl),
        s_vn: ed::spectrum_entropy(&spectrum),
        offset: 0.0,
        renyi: cfg.renyi.iter().map(|&a| renyi_from_spectrum(&spectrum, a)).collect(),
        gaps: [None; 3],
        ed: Some(info),
    })
}

fn ed_info<T>(r: &ed::EdResult<T>) -> EdInfo {
    EdInfo {
        n_max: r.n_max_used,
        gap01: r.gap01,
        parity: r.parity,
        converged: r.cutoff_converged,
        cutoff_warning: r.cutoff_warning(),
        residual: r.residual,
    }
}

pub fn columns(cfg: &SweepConfig) -> Vec<String> {
    let mut c: Vec<String> = [
        "index", "model", "mode", "omega_cav", "omega0_c", "omega0_i", "lambda_c", "lambda_i", "r", "theta", "n_spins", "phase", "dx", "dp",
        "hp", "zeta", "phi", "s_vn", "s_vn_offset", "degeneracy_offset",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    c.extend(cfg.renyi.iter().map(|a| format!("renyi_{a}")));
    c.extend(
        [
            "gap_1", "gap_2", "gap_3", "n_max_used", "gap01", "parity", "cutoff_converged", "cutoff_warning", "residual", "status", "reason",
        ]
        .iter()
        .map(|s| s.to_string()),
    );
    c
}

fn row(index: usize, job: &Job, cfg: &SweepConfig, opts: &EdOptions) -> (Vec<Cell>, RowStatus) {
    let (omega_cav, o_c, o_i, l_c, l_i, polar) = match job.point {
        Point::Dicke(p) => (p.omega, p.omega0, None, p.lambda, None, None),
        Point::Double { p, polar } => (p.omega_cav, p.omega0_c, Some(p.omega0_i), p.lambda_c, Some(p.lambda_i), polar),
    };
    let mut cells = vec![
        Cell::Int(index as i64),
        Cell::Text(match cfg.model {
            Model::Dicke => "dicke".into(),
            Model::DoubleDicke => "double-dicke".into(),
        }),
        Cell::Text(match cfg.mode {
            Mode::Thermo => "thermo".into(),
            Mode::Ed => "ed".into(),
        }),
        Cell::Num(omega_cav),
        Cell::Num(o_c),
        Cell::opt(o_i),
        Cell::Num(l_c),
        Cell::opt(l_i),
        Cell::opt(polar.map(|x| x.0)),
        Cell::opt(polar.map(|x| x.1)),
        job.n_spins.map_or(Cell::Empty, |n| Cell::Int(n as i64)),
    ];
    let values = match job.n_spins {
        None => thermo_values(&job.point, &cfg.renyi),
        Some(n) => ed_values(&job.point, n, cfg, opts),
    };
    let n_renyi = cfg.renyi.len();
    let (status, reason) = match values {
        Ok(v) => {
            let fl = v.fl.expect("values carry fluctuations");
            cells.push(Cell::Text(v.phase));
            cells.extend([fl.raw_dx, fl.raw_dp, fl.hp, fl.zeta, fl.phi, v.s_vn, v.s_vn + v.offset, v.offset].map(Cell::Num));
            cells.extend(v.renyi.into_iter().map(Cell::Num));
            cells.extend(v.gaps.map(Cell::opt));
            let mut status = RowStatus::Ok;
            let mut reason = String::new();
            match v.ed {
                Some(e) => {
                    cells.extend([
                        Cell::Int(e.n_max as i64),
                        Cell::Num(e.gap01),
                        Cell::Num(e.parity),
                        Cell::Bool(e.converged),
                        Cell::Bool(e.cutoff_warning),
                        Cell::Num(e.residual),
                    ]);
                    if e.cutoff_warning {
                        status = RowStatus::Warning;
                        reason = "photon cutoff too small".into();
                    }
                }
                None => cells.extend(std::iter::repeat_n(Cell::Empty, 6)),
            }
            (status, reason)
        }
        Err((e, phase)) => {
            cells.push(Cell::Text(phase));
            let (status, reason, fill) = match e {
                // the divergent quantities are tagged rather than dropped
                Error::CriticalPointDivergence { .. } => (RowStatus::Critical, "critical-point".to_string(), f64::INFINITY),
                Error::BudgetExceeded { .. } => (RowStatus::BudgetExceeded, e.to_string(), f64::NAN),
                _ => (RowStatus::Error, e.to_string(), f64::NAN),
            };
            cells.extend([fill, f64::NAN, fill, f64::NAN, f64::NAN, fill, fill, f64::NAN].map(Cell::Num));
            cells.extend(std::iter::repeat_n(Cell::Num(fill), n_renyi));
            let gaps = if job.n_spins.is_none() { thermo_gaps(&job.point) } else { [None; 3] };
            cells.extend(gaps.map(Cell::opt));
            cells.extend(std::iter::repeat_n(Cell::Empty, 6));
            (status, reason)
        }
    };
    cells.push(Cell::Text(status.label().into()));
    cells.push(Cell::Text(reason));
    (cells, status)
}

pub fn header(cfg: &SweepConfig, extra: &[(String, String)]) -> Vec<(String, String)> {
    let mut h = vec![
        ("dicke-hp".to_string(), "sweep".to_string()),
        ("schema_version".into(), SCHEMA_VERSION.to_string()),
        ("library_version".into(), env!("CARGO_PKG_VERSION").to_string()),
        ("config_hash".into(), format!("sha256:{}", cfg.hash())),
        ("seed".into(), cfg.ed.seed.to_string()),
        ("units".into(), format!("frequencies and couplings in absolute units; omega_cav = {}", cfg.frequencies.omega_cav)),
        ("entropy_units".into(), "bits".into()),
    ];
    h.extend_from_slice(extra);
    h
}

/// Evaluates every grid point, largest ED problems first, and returns the rows in grid order.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepOutput, CliError> {
    cfg.validate()?;
    let jobs = jobs(cfg);
    let opts = cfg.ed.options();
    let mut order: Vec<usize> = (0..jobs.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(jobs[i].cost()), i));
    let mut done: Vec<(usize, Vec<Cell>, RowStatus)> = order
        .par_iter()
        .map(|&i| {
            let (cells, status) = row(i, &jobs[i], cfg, &opts);
            (i, cells, status)
        })
        .collect();
    done.sort_by_key(|d| d.0);
    let statuses: Vec<RowStatus> = done.iter().map(|d| d.2).collect();
    let warnings = statuses.iter().filter(|s| matches!(s, RowStatus::Warning | RowStatus::Error)).count();
    let table = Table {
        header: header(cfg, &[("rows".into(), done.len().to_string()), ("warnings".into(), warnings.to_string())]),
        columns: columns(cfg),
        rows: done.into_iter().map(|d| d.1).collect(),
    };
    Ok(SweepOutput { table, statuses })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> SweepConfig {
        SweepConfig::parse(text).unwrap()
    }

    #[test]
    fn rows_follow_grid_order_and_width() {
        let c = cfg("model = \"dicke\"\nmode = \"thermo\"\nlambda = { start = 0.0, stop = 1.0, points = 5 }\n");
        let out = run_sweep(&c).unwrap();
        assert_eq!(out.table.rows.len(), 5);
        let width = out.table.columns.len();
        for (i, r) in out.table.rows.iter().enumerate() {
            assert_eq!(r.len(), width);
            assert_eq!(r[0], Cell::Int(i as i64));
        }
        // λ = 0.5 is the critical point
        assert_eq!(out.statuses[2], RowStatus::Critical);
        assert_eq!(out.exit_code(), 0);
    }

    #[test]
    fn budget_exceeded_is_reported() {
        let c = cfg("model = \"dicke\"\nmode = \"ed\"\nlambda = [0.3]\n[ed]\nn_spins = [8]\nbudget_nnz = 10\n");
        let out = run_sweep(&c).unwrap();
        assert_eq!(out.statuses, vec![RowStatus::BudgetExceeded]);
        assert_eq!(out.exit_code(), 3);
    }

    #[test]
    fn ed_rows_fill_ed_columns() {
        let c = cfg("model = \"double-dicke\"\nmode = \"ed\"\n[radial]\ntheta = 0.7853981633974483\nr = [0.3]\n[ed]\nn_spins = [2, 3]\n");
        let out = run_sweep(&c).unwrap();
        assert_eq!(out.table.rows.len(), 2);
        assert!(out.statuses.iter().all(|s| *s == RowStatus::Ok));
        let n_max = out.table.columns.iter().position(|c| c == "n_max_used").unwrap();
        assert!(matches!(out.table.rows[0][n_max], Cell::Int(_)));
    }
}
