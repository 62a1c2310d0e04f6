use std::io::Write;
use std::path::{Path, PathBuf};

use super::config::{ProblemConfig, Section};
use super::output::{fmt_num, svg_polylines, write_file, Csv};
use super::{CliError, Command, CommonArgs, EXIT_NUMERIC, EXIT_OK};
use crate::ars::{abnormal_algebra, classify_locus, describe_span, psi, SimpleArs};
use crate::desing::{lift, lifted_integrate, project};
use crate::extremals::{
    abnormal_description, covector_labels, integrate, wavefront, ControlFrame, ExtremalState, GeodesicTrajectory,
    IntegrateOptions,
};
use crate::group_models::covector_from_algebra;
use crate::lie_core::AlgebraVector;

fn io(e: std::io::Error) -> CliError {
    CliError::Io(e.to_string())
}

pub fn dispatch(cmd: &Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Classify(a) => classify(a, out),
        Command::Geodesic(a) => geodesic(a, out),
        Command::Front(a) => front(a, out),
        Command::Abnormal(a) => abnormal(a, out),
        Command::Lift(a) => lift_cmd(a, out),
        Command::Verify { config } => verify(config.as_deref(), out),
    }
}

fn load(args: &CommonArgs) -> Result<(ProblemConfig, SimpleArs), CliError> {
    let cfg = ProblemConfig::load(&args.config)?;
    let ars = cfg.build()?;
    Ok((cfg, ars))
}

fn options(sec: &Section) -> Result<IntegrateOptions, CliError> {
    let d = IntegrateOptions::default();
    let o = IntegrateOptions {
        step: sec.real_or("step", d.step)?,
        drift_bound: sec.real_or("drift_bound", d.drift_bound)?,
        stop_at_event: false,
    };
    if !(o.step > 0.0) {
        return Err(CliError::Validation(format!("[{}] step must be positive", sec.name)));
    }
    Ok(o)
}

fn final_time(sec: &Section) -> Result<f64, CliError> {
    let t = sec.required_real("T")?;
    if t < 0.0 {
        return Err(CliError::Validation(format!("[{}] T must be ≥ 0", sec.name)));
    }
    Ok(t)
}

/// `point` and either `covector` (chart components) or `algebra_covector`.
fn initial_state(ars: &SimpleArs, sec: &Section) -> Result<ExtremalState, CliError> {
    let chart = ars.chart();
    let m = chart.coord_dim();
    let g = sec.required_vector("point", m)?;
    chart.validate(&g)?;
    let p = match (sec.vector("covector")?, sec.vector("algebra_covector")?) {
        (Some(p), None) => {
            if p.len() != m {
                return Err(CliError::Validation(format!(
                    "[{}] covector: expected {m} entries",
                    sec.name
                )));
            }
            p
        }
        (None, Some(l)) => {
            if l.len() != ars.dim() {
                return Err(CliError::Validation(format!(
                    "[{}] algebra_covector: expected {} entries",
                    sec.name,
                    ars.dim()
                )));
            }
            covector_from_algebra(chart.as_ref(), &g, &l)
        }
        _ => {
            return Err(CliError::Validation(format!(
                "[{}] needs exactly one of covector, algebra_covector",
                sec.name
            )))
        }
    };
    Ok(ExtremalState::new(g, p))
}

fn output_path(args: &CommonArgs, sec: &Section, default: &str) -> PathBuf {
    args.out.join(sec.string_or("output", default))
}

fn svg_axes(cfg: &ProblemConfig, m: usize) -> Result<(usize, usize), CliError> {
    let (x, y) = match cfg.section("output") {
        Some(s) => (s.usize_or("svg_x", 0)?, s.usize_or("svg_y", 1)?),
        None => (0, 1),
    };
    if x >= m || y >= m {
        return Err(CliError::Validation(format!("[output] svg axes must be below {m}")));
    }
    Ok((x, y))
}

fn trajectory_csv(frame: &dyn ControlFrame, traj: &GeodesicTrajectory) -> Csv {
    let labels = frame.coord_labels();
    let mut header = vec!["t".to_string()];
    header.extend(labels.iter().cloned());
    header.extend(covector_labels(&labels));
    header.push("v".into());
    header.extend((1..frame.n_controls()).map(|j| format!("u{j}")));
    header.push("H".into());
    let mut csv = Csv::new(header);
    for s in &traj.samples {
        let mut vals = vec![s.t];
        vals.extend(&s.state.g);
        vals.extend(&s.state.p);
        vals.extend(&s.controls);
        vals.push(s.h);
        csv.push_numbers(Vec::new(), &vals);
    }
    csv
}

fn with_svg(path: &Path) -> PathBuf {
    path.with_extension("svg")
}

fn classify(args: &CommonArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let (_, ars) = load(args)?;
    let r = classify_locus(&ars);
    let labels = ars.algebra().labels().to_vec();
    let span = |s| describe_span(s, &labels);
    let mut text = String::new();
    let delta = ars.delta();
    text.push_str(&format!("group: {}\n", ars.chart().name()));
    text.push_str(&format!("Delta = {}\n", span(&delta)));
    text.push_str(&format!("omega = {:?}\n", ars.omega().coeffs));
    text.push_str(&format!("D*omega = {:?}\n", r.d_star_omega.coeffs));
    text.push_str(&format!("D^-1 Delta = {}\n", span(&r.z_tangent)));
    text.push_str(&format!("ker D*omega = {}\n", span(&r.kernel)));
    match abnormal_algebra(&ars) {
        Ok(a) => text.push_str(&format!("abnormal subalgebra = {}\n", span(&a))),
        Err(e) => text.push_str(&format!("abnormal subalgebra: {e}\n")),
    }
    text.push_str("verdicts:\n");
    for v in &r.verdicts {
        let mark = if v.applies { "APPLIES" } else { "-" };
        text.push_str(&format!("  [{mark}] {}: {}\n", v.id, v.conclusion));
    }
    text.push_str("---\n");
    let kv = [
        ("delta_subalgebra", r.delta_subalgebra.to_string()),
        ("delta_ideal", r.delta_ideal.to_string()),
        ("solvable", r.solvable.to_string()),
        ("nilpotent", r.nilpotent.to_string()),
        ("d_star_omega_zero", r.d_star_omega_zero.to_string()),
        ("kernel_subalgebra", r.kernel_subalgebra.to_string()),
        (
            "hz_on_kernel",
            r.hz_on_kernel.map(|b| b.to_string()).unwrap_or_else(|| "n/a".into()),
        ),
        ("zx_consistency", r.numeric_zx.to_string()),
        ("zx_samples", r.zx_samples.to_string()),
        ("internally_consistent", r.internally_consistent.to_string()),
        ("exact", r.exact.to_string()),
    ];
    for (k, v) in kv {
        text.push_str(&format!("{k}={v}\n"));
    }
    for v in &r.verdicts {
        text.push_str(&format!("verdict.{}={}\n", v.id, v.applies));
    }
    out.write_all(text.as_bytes()).map_err(io)?;
    Ok(EXIT_OK)
}

fn geodesic(args: &CommonArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let (cfg, ars) = load(args)?;
    let sec = cfg.require("geodesic")?;
    let state = initial_state(&ars, sec)?;
    let t = final_time(sec)?;
    let traj = integrate(&ars, &state, t, &options(sec)?, &[])?;
    let path = output_path(args, sec, "geodesic.csv");
    write_file(&path, &trajectory_csv(&ars, &traj).render())?;
    if args.svg {
        let (x, y) = svg_axes(&cfg, ars.coord_dim())?;
        let curve: Vec<(f64, f64)> = traj.samples.iter().map(|s| (s.state.g[x], s.state.g[y])).collect();
        let labels = ars.coord_labels();
        write_file(&with_svg(&path), &svg_polylines(&[curve], &labels[x], &labels[y]))?;
    }
    writeln!(
        out,
        "wrote {} ({} samples, max H drift {})",
        path.display(),
        traj.samples.len(),
        fmt_num(traj.max_drift)
    )
    .map_err(io)?;
    Ok(EXIT_OK)
}

fn front(args: &CommonArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let (cfg, ars) = load(args)?;
    let sec = cfg.require("front")?;
    let g0 = sec.required_vector("point", ars.coord_dim())?;
    let t = final_time(sec)?;
    let rays = sec.usize_or("rays", 64)?;
    let wf = wavefront(&ars, &g0, t, rays, &options(sec)?)?;
    let k = wf.rays.first().map(|r| r.params.len()).unwrap_or(0);
    let labels = ars.coord_labels();
    let mut header = vec!["ray_index".to_string()];
    header.extend((1..=k).map(|i| format!("angle{i}")));
    header.extend(labels.iter().cloned());
    let mut csv = Csv::new(header);
    let mut failed = 0;
    for r in &wf.rays {
        let mut vals = r.params.clone();
        match &r.endpoint {
            Some(p) => vals.extend(&p.coords),
            None => {
                failed += 1;
                eprintln!("ray {}: {}", r.index, r.failure.as_deref().unwrap_or("failed"));
                vals.extend(std::iter::repeat_n(f64::NAN, labels.len()));
            }
        }
        csv.push_numbers(vec![r.index.to_string()], &vals);
    }
    let path = output_path(args, sec, "front.csv");
    write_file(&path, &csv.render())?;
    if args.svg {
        let (x, y) = svg_axes(&cfg, ars.coord_dim())?;
        let pts: Vec<(f64, f64)> = wf
            .rays
            .iter()
            .filter_map(|r| r.endpoint.as_ref())
            .map(|p| (p.coords[x], p.coords[y]))
            .collect();
        write_file(&with_svg(&path), &svg_polylines(&[pts], &labels[x], &labels[y]))?;
    }
    writeln!(
        out,
        "wrote {} ({} rays, {} failed, singular start: {})",
        path.display(),
        wf.rays.len(),
        failed,
        wf.singular_start
    )
    .map_err(io)?;
    Ok(EXIT_OK)
}

fn abnormal(args: &CommonArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let (cfg, ars) = load(args)?;
    let sec = cfg.require("abnormal")?;
    let g0 = sec.required_vector("point", ars.coord_dim())?;
    let desc = abnormal_description(&ars, &g0)?;
    let span_t = sec.real_or("T", 1.0)?;
    let samples = sec.usize_or("samples", 101)?.max(1);
    let labels = ars.coord_labels();
    let mut header = vec!["t".to_string()];
    header.extend(labels.iter().cloned());
    header.extend(["p".to_string(), "psi".to_string()]);
    let mut csv = Csv::new(header);
    let times: Vec<f64> = if samples == 1 {
        vec![0.0]
    } else {
        (0..samples).map(|i| span_t * i as f64 / (samples - 1) as f64).collect()
    };
    let xi = match sec.vector("direction")? {
        Some(d) => {
            if d.len() != ars.dim() {
                return Err(CliError::Validation(format!(
                    "[abnormal] direction: expected {} entries",
                    ars.dim()
                )));
            }
            Some(AlgebraVector::new(d))
        }
        None => desc.basis.first().cloned(),
    };
    let curve: Vec<(f64, Vec<f64>, f64)> = match &xi {
        Some(xi) => {
            let pts = desc.coset_curve(&ars, xi, &times)?;
            let mut v = Vec::with_capacity(pts.len());
            for (t, g) in times.iter().zip(pts) {
                v.push((*t, g.coords, desc.covector_scale(&ars, xi, 1.0, *t)?));
            }
            v
        }
        None => vec![(0.0, g0.clone(), 1.0)],
    };
    let mut plot = Vec::new();
    for (t, g, p) in &curve {
        let mut vals = vec![*t];
        vals.extend(g);
        vals.push(*p);
        vals.push(psi(&ars, g)?);
        csv.push_numbers(Vec::new(), &vals);
        plot.push(g.clone());
    }
    let path = output_path(args, sec, "abnormal.csv");
    write_file(&path, &csv.render())?;
    if args.svg {
        let (x, y) = svg_axes(&cfg, ars.coord_dim())?;
        let pts: Vec<(f64, f64)> = plot.iter().map(|g| (g[x], g[y])).collect();
        write_file(&with_svg(&path), &svg_polylines(&[pts], &labels[x], &labels[y]))?;
    }
    writeln!(out, "{}", desc.statement).map_err(io)?;
    writeln!(out, "wrote {} ({} samples)", path.display(), curve.len()).map_err(io)?;
    Ok(EXIT_OK)
}

fn lift_cmd(args: &CommonArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let (cfg, ars) = load(args)?;
    let sec = cfg.require("lift")?;
    let base_state = initial_state(&ars, sec)?;
    let tau = sec.real_or("tau", 0.0)?;
    let s = sec.real_or("s", 0.0)?;
    let t = final_time(sec)?;
    let l = lift(&ars)?;
    let state = l.lifted_state(&base_state, tau, s);
    let traj = lifted_integrate(&l, &state, t, &options(sec)?, &[])?;
    let pr = project(&l, &traj)?;
    let path = output_path(args, sec, "lift.csv");
    write_file(&path, &trajectory_csv(&l, &traj).render())?;
    if args.svg {
        let (x, y) = svg_axes(&cfg, ars.coord_dim())?;
        let curve: Vec<(f64, f64)> = pr.base.samples.iter().map(|s| (s.state.g[x], s.state.g[y])).collect();
        let labels = ars.coord_labels();
        write_file(&with_svg(&path), &svg_polylines(&[curve], &labels[x], &labels[y]))?;
    }
    let labels = l.lifted_algebra().labels().join(", ");
    writeln!(out, "lifted algebra basis: {labels}").map_err(io)?;
    writeln!(out, "tau(T) - tau(0) = {}", fmt_num(pr.tau_increment)).map_err(io)?;
    writeln!(out, "integral of v   = {}", fmt_num(pr.v_integral)).map_err(io)?;
    writeln!(out, "lifted length   = {}", fmt_num(pr.lifted_length)).map_err(io)?;
    writeln!(out, "projected length = {}", fmt_num(pr.projected_length)).map_err(io)?;
    writeln!(out, "wrote {} ({} samples)", path.display(), traj.samples.len()).map_err(io)?;
    Ok(EXIT_OK)
}

fn verify(config: Option<&Path>, out: &mut dyn Write) -> Result<i32, CliError> {
    if let Some(path) = config {
        ProblemConfig::load(path)?.build()?;
    }
    let results = crate::verify::all_criteria();
    let mut all = true;
    for r in &results {
        writeln!(out, "{r}").map_err(io)?;
        all &= r.passed;
    }
    Ok(if all { EXIT_OK } else { EXIT_NUMERIC })
}
