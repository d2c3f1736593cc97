//! CSV and SVG rendering. Everything here is a pure function of its inputs,
//! so identical runs give byte-identical output.

use std::fmt::Write as _;

use sio_core::sio::{IvpProblem, Trajectory};
use sio_core::stability::StabilityGrid;

/// 17 significant digits.
pub fn full(x: f64) -> String {
    format!("{x:.16e}")
}

/// Node times without the `0.30000000000000004` noise of `t0 + i h`.
pub fn node_time(t: f64) -> String {
    let rounded = format!("{t:.12}").parse::<f64>().unwrap_or(t);
    format!("{rounded}")
}

pub fn solve_csv(traj: &Trajectory, problem: &IvpProblem) -> String {
    let mut out = String::from("t,w,error,fp_iters,residual\n");
    for (i, (&t, &w)) in traj.times.iter().zip(&traj.values).enumerate() {
        let error = problem.exact(t).map(|y| full((w - y).abs())).unwrap_or_default();
        let (iters, residual) = match i.checked_sub(1).map(|k| &traj.steps[k]) {
            Some(step) => (step.fp_iterations.to_string(), full(step.residual)),
            None => ("0".to_string(), full(0.0)),
        };
        writeln!(out, "{},{},{error},{iters},{residual}", full(t), full(w)).unwrap();
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableRow {
    pub t: f64,
    pub y: f64,
    pub error_t2: f64,
    pub error_t4: f64,
    pub error_sio: f64,
}

pub fn table_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("t,y,error_t2,error_t4,error_sio\n");
    for r in rows {
        writeln!(
            out,
            "{},{:.10},{:.2e},{:.2e},{:.2e}",
            node_time(r.t),
            r.y,
            r.error_t2,
            r.error_t4,
            r.error_sio
        )
        .unwrap();
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Slope {
    /// Both errors vanish.
    Exact,
    Value(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderRow {
    pub h: f64,
    pub error_sio: f64,
    pub error_t2: f64,
    pub error_t4: f64,
    /// Against the previous (coarser) row.
    pub slope_sio: Option<Slope>,
}

pub fn order_csv(rows: &[OrderRow]) -> String {
    let mut out = String::from("h,error_sio,error_t2,error_t4,slope_sio\n");
    for r in rows {
        let slope = match r.slope_sio {
            None => String::new(),
            Some(Slope::Exact) => "exact".to_string(),
            Some(Slope::Value(s)) => format!("{s:.4}"),
        };
        writeln!(
            out,
            "{},{:.6e},{:.6e},{:.6e},{slope}",
            node_time(r.h),
            r.error_sio,
            r.error_t2,
            r.error_t4
        )
        .unwrap();
    }
    out
}

pub fn stability_csv(grid: &StabilityGrid) -> String {
    let mut out = String::from("re,im,amplification,stable01\n");
    for i in 0..grid.resolution.0 {
        for j in 0..grid.resolution.1 {
            let v = grid.values[i][j];
            writeln!(
                out,
                "{},{},{},{}",
                grid.re_at(i),
                grid.im_at(j),
                full(v),
                grid.is_stable_at(i, j) as u8
            )
            .unwrap();
        }
    }
    out
}

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"];

/// Stable cells of each grid as a translucent layer, merged into horizontal
/// runs, plus the real and imaginary axes when they fall inside the window.
/// All grids must share window and resolution.
pub fn stability_svg(grids: &[StabilityGrid]) -> String {
    let first = &grids[0];
    let (nx, ny) = first.resolution;
    let scale = (600 / nx.max(ny)).max(1);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {nx} {ny}" shape-rendering="crispEdges">"#,
        nx * scale,
        ny * scale
    )
    .unwrap();
    writeln!(out, r#"<rect width="{nx}" height="{ny}" fill="white"/>"#).unwrap();
    for (k, grid) in grids.iter().enumerate() {
        writeln!(
            out,
            r#"<g id="{}" fill="{}" fill-opacity="0.45"><title>{}</title>"#,
            grid.method_tag,
            PALETTE[k % PALETTE.len()],
            grid.method_tag
        )
        .unwrap();
        // Row 0 of the image is the top of the window.
        for j in 0..ny {
            let y = ny - 1 - j;
            let mut i = 0;
            while i < nx {
                if !grid.is_stable_at(i, j) {
                    i += 1;
                    continue;
                }
                let start = i;
                while i < nx && grid.is_stable_at(i, j) {
                    i += 1;
                }
                writeln!(out, r#"<rect x="{start}" y="{y}" width="{}" height="1"/>"#, i - start).unwrap();
            }
        }
        out.push_str("</g>\n");
    }
    let w = first.window;
    let axis = r#"stroke="black" stroke-width="1" vector-effect="non-scaling-stroke""#;
    if w.re_min < 0.0 && 0.0 < w.re_max {
        let x = -w.re_min / (w.re_max - w.re_min) * nx as f64;
        writeln!(out, r#"<line x1="{x}" y1="0" x2="{x}" y2="{ny}" {axis}/>"#).unwrap();
    }
    if w.im_min < 0.0 && 0.0 < w.im_max {
        let y = w.im_max / (w.im_max - w.im_min) * ny as f64;
        writeln!(out, r#"<line x1="0" y1="{y}" x2="{nx}" y2="{y}" {axis}/>"#).unwrap();
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use sio_core::stability::{scan_grid, AmplificationMethod, Window};

    #[test]
    fn number_formats() {
        assert_eq!(full(0.1), "1.0000000000000001e-1");
        assert_eq!(node_time(0.1 + 0.2), "0.3");
        assert_eq!(node_time(0.025), "0.025");
    }

    #[test]
    fn table_layout() {
        let row = TableRow {
            t: 0.30000000000000004,
            y: 2.040818220681718,
            error_t2: 3.99e-4,
            error_t4: 2.01e-7,
            error_sio: 4.83e-8,
        };
        assert_eq!(
            table_csv(&[row]),
            "t,y,error_t2,error_t4,error_sio\n0.3,2.0408182207,3.99e-4,2.01e-7,4.83e-8\n"
        );
    }

    #[test]
    fn order_slope_cells() {
        let base = OrderRow {
            h: 0.1,
            error_sio: 0.0,
            error_t2: 0.0,
            error_t4: 0.0,
            slope_sio: None,
        };
        let rows = [
            base,
            OrderRow { h: 0.05, slope_sio: Some(Slope::Exact), ..base },
            OrderRow { h: 0.025, slope_sio: Some(Slope::Value(3.98766)), ..base },
        ];
        let csv = order_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines[1].ends_with(','));
        assert!(lines[2].ends_with(",exact"));
        assert!(lines[3].ends_with(",3.9877"));
    }

    #[test]
    fn svg_runs_cover_stable_cells() {
        let window = Window::new(-2.0, 2.0, -1.0, 1.0).unwrap();
        let grid = scan_grid(AmplificationMethod::Sio { m: 1 }, window, (8, 4)).unwrap();
        let svg = stability_svg(&[grid]);
        // Left half stable: one run of width 4 per row.
        assert_eq!(svg.matches(r#"width="4" height="1""#).count(), 4);
        assert_eq!(svg.matches("<line").count(), 2);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn stability_rows() {
        let grid = scan_grid(AmplificationMethod::Sio { m: 1 }, Window::new(-1.0, 1.0, -1.0, 1.0).unwrap(), (2, 2)).unwrap();
        let csv = stability_csv(&grid);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 5);
        assert!(lines[1].starts_with("-0.5,-0.5,") && lines[1].ends_with(",1"));
        assert!(lines[4].starts_with("0.5,0.5,") && lines[4].ends_with(",0"));
    }
}
