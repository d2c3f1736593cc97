use std::io::Write;
use std::path::{Path, PathBuf};

use sio_core::reference::{taylor_solve, ProblemRegistry, RegistryEntry};
use sio_core::sio::{solve, step_contraction_diagnostic, IvpProblem, SioConfig, Trajectory};
use sio_core::stability::{scan_grid, AmplificationMethod, StabilityGrid};

use crate::args::{Format, IntegralMode};
use crate::config::RunConfig;
use crate::output::{self, OrderRow, Slope, TableRow};
use crate::CliError;

fn lookup(cfg: &RunConfig) -> Result<RegistryEntry, CliError> {
    let name = cfg.problem.as_deref().unwrap_or_default();
    let registry = ProblemRegistry::standard();
    registry.get(name).cloned().ok_or_else(|| {
        CliError::Usage(format!("unknown problem {name:?}; known: {}", registry.names().join(", ")))
    })
}

fn sio_config(cfg: &RunConfig, entry: &RegistryEntry) -> SioConfig {
    let integral = match cfg.integral {
        IntegralMode::Auto => entry.step_integral.clone(),
        IntegralMode::Quadrature => None,
    };
    SioConfig::new(cfg.degree(), cfg.h)
        .with_fp_tol(cfg.fp_tol)
        .with_max_fp_iters(cfg.max_fp_iters)
        .with_quad_nodes(cfg.quad_nodes)
        .with_closed_form(integral)
        .with_nonconvergence(cfg.on_nonconvergence)
}

/// A full trajectory, or the partial one an aborted run left behind together
/// with the failure.
fn salvage(result: sio_core::Result<Trajectory>) -> Result<(Trajectory, Option<CliError>), CliError> {
    match result {
        Ok(t) => Ok((t, None)),
        Err(e) => match e.partial_trajectory() {
            Some(p) => Ok((p.clone(), Some(CliError::Numerical(e.to_string())))),
            None => Err(CliError::Numerical(e.to_string())),
        },
    }
}

fn emit(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, content).map_err(|e| CliError::Io { path: p.to_path_buf(), source: e }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io { path: PathBuf::from("<stdout>"), source: e })
        }
    }
}

pub fn cmd_solve(cfg: &RunConfig) -> Result<(), CliError> {
    let entry = lookup(cfg)?;
    let problem = &entry.problem;
    let sio = sio_config(cfg, &entry);
    let (traj, failure) = salvage(solve(problem, &sio, cfg.n_steps))?;

    let worst = traj.times[..traj.steps.len()]
        .iter()
        .zip(&traj.values)
        .filter_map(|(&t, &w)| step_contraction_diagnostic(problem, t, w, &sio).ok())
        .fold(0.0, f64::max);
    if worst >= 1.0 {
        eprintln!(
            "warning: contraction diagnostic K|h|/(m+1) reached {worst:.3}; the inner iteration may not converge"
        );
    }

    emit(cfg.output.as_deref(), &output::solve_csv(&traj, problem))?;
    failure.map_or(Ok(()), Err)
}

pub fn cmd_table(cfg: &RunConfig) -> Result<(), CliError> {
    let entry = lookup(cfg)?;
    let problem = &entry.problem;
    let (sio, f1) = salvage(solve(problem, &sio_config(cfg, &entry), cfg.n_steps))?;
    let (t2, f2) = salvage(taylor_solve(problem, cfg.h, 2, cfg.n_steps))?;
    let (t4, f3) = salvage(taylor_solve(problem, cfg.h, 4, cfg.n_steps))?;

    let rows = (1..sio.values.len().min(t2.values.len()).min(t4.values.len()))
        .map(|i| {
            let t = sio.times[i];
            let y = problem.exact(t).ok_or_else(|| CliError::Usage(format!("{} has no analytic solution", problem.name())))?;
            Ok(TableRow {
                t,
                y,
                error_t2: (t2.values[i] - y).abs(),
                error_t4: (t4.values[i] - y).abs(),
                error_sio: (sio.values[i] - y).abs(),
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    emit(cfg.output.as_deref(), &output::table_csv(&rows))?;
    f1.or(f2).or(f3).map_or(Ok(()), Err)
}

/// End-point errors over `[t0, t0 + n_steps h]` at `h`, `h/2`, `h/4`.
pub fn order_study(problem: &IvpProblem, sio: &SioConfig, n_steps: usize) -> Result<Vec<OrderRow>, CliError> {
    if !problem.has_analytic_solution() {
        return Err(CliError::Usage(format!("{} has no analytic solution", problem.name())));
    }
    let numerical = |e: sio_core::Error| CliError::Numerical(e.to_string());
    let end_error = |traj: &Trajectory| (traj.final_value() - problem.exact(traj.final_time()).unwrap()).abs();
    let mut rows: Vec<OrderRow> = Vec::with_capacity(3);
    for level in 0..3 {
        let k = 1usize << level;
        let h = sio.h / k as f64;
        let n = n_steps * k;
        let cfg = SioConfig { h, ..sio.clone() };
        let error_sio = end_error(&solve(problem, &cfg, n).map_err(numerical)?);
        let error_t2 = end_error(&taylor_solve(problem, h, 2, n).map_err(numerical)?);
        let error_t4 = end_error(&taylor_solve(problem, h, 4, n).map_err(numerical)?);
        let slope_sio = rows.last().map(|prev| {
            if prev.error_sio == 0.0 && error_sio == 0.0 {
                Slope::Exact
            } else {
                Slope::Value((prev.error_sio / error_sio).log2())
            }
        });
        rows.push(OrderRow {
            h,
            error_sio,
            error_t2,
            error_t4,
            slope_sio,
        });
    }
    Ok(rows)
}

pub fn cmd_order(cfg: &RunConfig) -> Result<(), CliError> {
    let entry = lookup(cfg)?;
    let rows = order_study(&entry.problem, &sio_config(cfg, &entry), cfg.n_steps)?;
    emit(cfg.output.as_deref(), &output::order_csv(&rows))
}

pub fn stability_methods(cfg: &RunConfig) -> Vec<AmplificationMethod> {
    let sio = cfg.m.iter().map(|&m| AmplificationMethod::Sio { m });
    let taylor = cfg.taylor_p.iter().map(|&p| AmplificationMethod::Taylor { p });
    sio.chain(taylor).collect()
}

/// `dir/stem_tag.ext` for a requested `dir/stem.ext`.
fn tagged_path(path: &Path, tag: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}_{tag}.{}", ext.to_string_lossy()),
        None => format!("{stem}_{tag}"),
    };
    path.with_file_name(name)
}

fn containment_report(grids: &[StabilityGrid]) {
    let base = &grids[0];
    for other in &grids[1..] {
        let forward = base.fraction_stable_in(other);
        let backward = other.fraction_stable_in(base);
        let show = |f: Option<f64>| f.map_or("n/a".to_string(), |v| format!("{v:.4}"));
        eprintln!(
            "containment: {} holds {} of the {} region; {} holds {} of the {} region",
            other.method_tag,
            show(forward),
            base.method_tag,
            base.method_tag,
            show(backward),
            other.method_tag
        );
    }
}

pub fn cmd_stability(cfg: &RunConfig) -> Result<(), CliError> {
    let grids = stability_methods(cfg)
        .into_iter()
        .map(|method| scan_grid(method, cfg.window, cfg.resolution).map_err(|e| CliError::Usage(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    if grids.len() > 1 {
        containment_report(&grids);
    }
    match (cfg.format, cfg.output.as_deref()) {
        (Format::Svg, path) => emit(path, &output::stability_svg(&grids)),
        (Format::Csv, Some(path)) if grids.len() > 1 => {
            for grid in &grids {
                emit(Some(&tagged_path(path, &grid.method_tag)), &output::stability_csv(grid))?;
            }
            Ok(())
        }
        (Format::Csv, path) if grids.len() == 1 => emit(path, &output::stability_csv(&grids[0])),
        (Format::Csv, _) => {
            let mut out = String::new();
            for grid in &grids {
                out.push_str(&format!("# {}\n", grid.method_tag));
                out.push_str(&output::stability_csv(grid));
            }
            emit(None, &out)
        }
    }
}
