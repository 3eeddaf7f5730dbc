//! Data files behind the three figures, each produced by one or more sweeps.

use std::f64::consts::PI;
use std::path::Path;

use serde_json::json;

use crate::config::{Axis, EdConfig, Format, Frequencies, Mode, Model, OutputConfig, Radial, SweepConfig};
use crate::output::{emit, Cell};
use crate::sweep::run_sweep;
use crate::CliError;

#[derive(Debug, Clone)]
pub struct FigureOptions {
    pub seed: Option<u64>,
    pub budget_nnz: Option<usize>,
    pub format: Format,
    /// Largest spin count used by any finite-size curve.
    pub max_n: Option<usize>,
}

struct Curve {
    name: String,
    description: String,
    config: SweepConfig,
}

fn base(model: Model, mode: Mode) -> SweepConfig {
    SweepConfig {
        model,
        mode,
        frequencies: Frequencies::default(),
        lambda: None,
        lambda_c: None,
        lambda_i: None,
        radial: None,
        ed: EdConfig::default(),
        renyi: dicke_hp::gaussian::DEFAULT_RENYI_ORDERS.to_vec(),
        output: OutputConfig::default(),
    }
}

fn range(start: f64, stop: f64, points: usize) -> Axis {
    Axis::Range { start, stop, points }
}

fn dicke(mode: Mode, lambda: Axis, n_spins: Vec<usize>) -> SweepConfig {
    let mut c = base(Model::Dicke, mode);
    c.lambda = Some(lambda);
    c.ed.n_spins = n_spins;
    c
}

fn radial(mode: Mode, theta: f64, r: Axis, n_spins: Vec<usize>) -> SweepConfig {
    let mut c = base(Model::DoubleDicke, mode);
    c.radial = Some(Radial { theta, r });
    c.ed.n_spins = n_spins;
    c
}

fn curve(name: &str, description: &str, config: SweepConfig) -> Curve {
    Curve {
        name: name.into(),
        description: description.into(),
        config,
    }
}

/// Curves of a figure together with the ways they fall short of the reference scale.
fn curves(id: u8, max_n: Option<usize>) -> Result<(Vec<Curve>, Vec<String>), CliError> {
    let mut deviations = Vec::new();
    let mut cap = |ns: &[usize], ref_max: usize, what: &str| -> Vec<usize> {
        let limit = max_n.unwrap_or(usize::MAX);
        let kept: Vec<usize> = ns.iter().copied().filter(|&n| n <= limit).collect();
        match kept.last() {
            None => deviations.push(format!("{what}: omitted, no N within the cap (reference: N up to {ref_max})")),
            Some(&top) if top < ref_max => deviations.push(format!("{what}: N up to {top} (reference: {ref_max})")),
            _ => {}
        }
        kept
    };
    let resonance = 0.5;
    let out = match id {
        1 => {
            let inset = cap(&[10, 20, 50, 100, 200, 500, 1000], 100_000, "inset");
            vec![
                curve("fig1_thermo", "thermodynamic-limit uncertainty product vs coupling", dicke(Mode::Thermo, range(0.0, 1.0, 101), vec![])),
                curve(
                    "fig1_ed",
                    "finite-N uncertainty product vs coupling",
                    dicke(Mode::Ed, range(0.0, 1.0, 101), cap(&[8, 16, 32], 32, "finite-N curves")),
                ),
                curve("fig1_inset", "uncertainty product at the critical coupling vs N", dicke(Mode::Ed, Axis::Values(vec![resonance]), inset)),
            ]
        }
        2 => {
            let mut grid = base(Model::DoubleDicke, Mode::Thermo);
            grid.lambda_c = Some(range(0.0, 1.0, 41));
            grid.lambda_i = Some(range(0.0, 1.0, 41));
            let mut v = vec![curve("fig2_phase_diagram", "phases and uncertainty product on the coupling plane", grid)];
            for (k, label) in ["0", "pi_8", "pi_4", "3pi_8", "pi_2"].iter().enumerate() {
                let theta = k as f64 * PI / 8.0;
                v.push(curve(
                    &format!("fig2_theta_{label}"),
                    "uncertainty product along a ray of the coupling plane",
                    radial(Mode::Thermo, theta, range(0.0, 1.2, 121), vec![]),
                ));
            }
            v
        }
        3 => {
            let ed_ns = cap(&[4, 8, 16], 16, "finite-N radial curves");
            let inset_ns = cap(&[2, 4, 8, 16, 32, 64], 512, "two-chain insets");
            let single_ns = cap(&[8, 16, 32, 64, 128, 256, 512], 512, "single-chain inset");
            let theta_a = 5.0 * PI / 16.0;
            // the ray θ = 5π/16 first crosses the I line
            let r_qcp = resonance / theta_a.sin();
            vec![
                curve("fig3_theta_5pi_16_thermo", "entropy along θ = 5π/16", radial(Mode::Thermo, theta_a, range(0.0, 1.2, 121), vec![])),
                curve("fig3_theta_pi_4_thermo", "entropy along θ = π/4", radial(Mode::Thermo, PI / 4.0, range(0.0, 1.2, 121), vec![])),
                curve("fig3_theta_5pi_16_ed", "finite-N entropy along θ = 5π/16", radial(Mode::Ed, theta_a, range(0.0, 1.2, 25), ed_ns.clone())),
                curve("fig3_theta_pi_4_ed", "finite-N entropy along θ = π/4", radial(Mode::Ed, PI / 4.0, range(0.0, 1.2, 25), ed_ns)),
                curve(
                    "fig3_inset_5pi_16",
                    "entropy at the first critical point of θ = 5π/16 vs N",
                    radial(Mode::Ed, theta_a, Axis::Values(vec![r_qcp]), inset_ns.clone()),
                ),
                curve(
                    "fig3_inset_pi_4",
                    "entropy at the double critical point vs N",
                    radial(Mode::Ed, PI / 4.0, Axis::Values(vec![resonance * 2f64.sqrt()]), inset_ns),
                ),
                curve("fig3_inset_single", "single-chain entropy at the critical coupling vs N", dicke(Mode::Ed, Axis::Values(vec![resonance]), single_ns)),
            ]
        }
        _ => return Err(CliError::Config(format!("unknown figure {id}; expected 1, 2 or 3"))),
    };
    let out: Vec<Curve> = out.into_iter().filter(|c| c.config.mode == Mode::Thermo || !c.config.ed.n_spins.is_empty()).collect();
    Ok((out, deviations))
}

/// Writes one data file per curve plus `manifest.json` into `dir`; returns the exit code.
pub fn reproduce_figure(id: u8, dir: &Path, opts: &FigureOptions) -> Result<i32, CliError> {
    let (curves, mut deviations) = curves(id, opts.max_n)?;
    let ext = match opts.format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    let mut files = Vec::new();
    let mut code = 0;
    for mut c in curves {
        if let Some(seed) = opts.seed {
            c.config.ed.seed = seed;
        }
        if let Some(b) = opts.budget_nnz {
            c.config.ed.budget_nnz = b;
        }
        c.config.output.format = opts.format;
        let out = run_sweep(&c.config)?;
        let file = format!("{}.{ext}", c.name);
        emit(Some(&dir.join(&file)), &out.table.render(opts.format)?)?;
        let exit = out.exit_code();
        if exit == 3 {
            deviations.push(format!("{file}: some rows exceeded the ED budget"));
        }
        code = code.max(exit);
        let mut entry = json!({
            "file": file,
            "description": c.description,
            "config_hash": format!("sha256:{}", c.config.hash()),
            "rows": out.table.rows.len(),
            "warnings": out.warnings(),
            "exit_code": exit,
        });
        if c.name == "fig1_inset" {
            entry["fit"] = inset_fit(&out.table.columns, &out.table.rows);
        }
        files.push(entry);
    }
    let manifest = json!({
        "figure": id,
        "library_version": env!("CARGO_PKG_VERSION"),
        "files": files,
        "deviations": deviations,
    });
    let mut bytes = serde_json::to_vec_pretty(&manifest).map_err(|e| CliError::Io(e.to_string()))?;
    bytes.push(b'\n');
    emit(Some(&dir.join("manifest.json")), &bytes)?;
    Ok(code)
}

/// Exponent of ΔxΔp against N over the largest decade of the inset.
fn inset_fit(columns: &[String], rows: &[Vec<Cell>]) -> serde_json::Value {
    let col = |name: &str| columns.iter().position(|c| c == name).expect("sweep column");
    let (i_n, i_hp) = (col("n_spins"), col("hp"));
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter_map(|r| match (&r[i_n], &r[i_hp]) {
            (Cell::Int(n), Cell::Num(hp)) if hp.is_finite() => Some((*n as f64, *hp)),
            _ => None,
        })
        .collect();
    let top = pts.iter().map(|p| p.0).fold(0.0, f64::max);
    let logs: Vec<(f64, f64)> = pts.iter().filter(|p| p.0 >= top / 10.0).map(|p| (p.0.ln(), p.1.ln())).collect();
    match dicke_hp::fit::linear_fit(&logs) {
        Ok(f) => json!({ "exponent": f.slope, "stderr": f.stderr, "n_samples": logs.len(), "window": [top / 10.0, top] }),
        Err(e) => json!({ "error": e.to_string() }),
    }
}
