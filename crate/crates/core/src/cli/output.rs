//! CSV and SVG emission with fixed formatting.

use std::fmt::Write as _;
use std::path::Path;

use super::CliError;

/// 17 significant digits.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x == 0.0 {
        // Folds −0 into 0 so that output does not depend on signed zeros.
        "0.0000000000000000e0".into()
    } else {
        format!("{x:.16e}")
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Csv {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Csv {
    pub fn new(header: Vec<String>) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push_numbers(&mut self, lead: Vec<String>, values: &[f64]) {
        let mut row = lead;
        row.extend(values.iter().map(|&v| fmt_num(v)));
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.join(","));
            s.push('\n');
        }
        s
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        }
    }
    std::fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Polylines in data coordinates with axes through the origin when it is
/// in view.
pub fn svg_polylines(curves: &[Vec<(f64, f64)>], x_label: &str, y_label: &str) -> String {
    const W: f64 = 640.0;
    const H: f64 = 480.0;
    const M: f64 = 40.0;
    let pts = curves.iter().flatten().filter(|(x, y)| x.is_finite() && y.is_finite());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
    }
    if x1 - x0 < 1e-12 {
        x0 -= 0.5;
        x1 += 0.5;
    }
    if y1 - y0 < 1e-12 {
        y0 -= 0.5;
        y1 += 0.5;
    }
    let sx = |x: f64| M + (x - x0) / (x1 - x0) * (W - 2.0 * M);
    let sy = |y: f64| H - M - (y - y0) / (y1 - y0) * (H - 2.0 * M);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    if x0 <= 0.0 && x1 >= 0.0 {
        let _ = writeln!(
            s,
            r#"<line x1="{:.3}" y1="{M}" x2="{:.3}" y2="{:.3}" stroke="gray"/>"#,
            sx(0.0),
            sx(0.0),
            H - M
        );
    }
    if y0 <= 0.0 && y1 >= 0.0 {
        let _ = writeln!(
            s,
            r#"<line x1="{M}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="gray"/>"#,
            sy(0.0),
            W - M,
            sy(0.0)
        );
    }
    let _ = writeln!(
        s,
        r#"<rect x="{M}" y="{M}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        W - 2.0 * M,
        H - 2.0 * M
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="12">{x_label} [{}, {}]</text>"#,
        M,
        H - 10.0,
        fmt_num(x0),
        fmt_num(x1)
    );
    let _ = writeln!(
        s,
        r#"<text x="4" y="{}" font-size="12">{y_label} [{}, {}]</text>"#,
        M - 10.0,
        fmt_num(y0),
        fmt_num(y1)
    );
    for c in curves {
        let path: Vec<String> = c
            .iter()
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|&(x, y)| format!("{:.3},{:.3}", sx(x), sy(y)))
            .collect();
        if path.len() == 1 {
            let _ = writeln!(
                s,
                r#"<circle cx="{}" cy="{}" r="2" fill="blue"/>"#,
                path[0].split(',').next().unwrap_or("0"),
                path[0].split(',').nth(1).unwrap_or("0")
            );
        } else if !path.is_empty() {
            let _ = writeln!(
                s,
                r#"<polyline fill="none" stroke="blue" stroke-width="1" points="{}"/>"#,
                path.join(" ")
            );
        }
    }
    s.push_str("</svg>\n");
    s
}
