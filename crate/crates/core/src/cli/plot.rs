//! Static SVG line charts drawn from a written result table.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::mc::config::ExperimentName;

const W: f64 = 640.0;
const H: f64 = 420.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 9] =
    ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f", "#17becf"];

struct Chart<'a> {
    x: &'a str,
    y: &'a str,
    group: &'a [&'a str],
    log_x: bool,
    log_y: bool,
}

fn chart_for(name: ExperimentName) -> Option<Chart<'static>> {
    Some(match name {
        ExperimentName::ScalingCollapse => Chart { x: "lambda", y: "ks", group: &[], log_x: true, log_y: false },
        ExperimentName::PhaseDiagram => {
            Chart { x: "epsilon", y: "fraction", group: &["alpha", "kappa"], log_x: true, log_y: false }
        }
        ExperimentName::RelativeStability => Chart { x: "r", y: "median", group: &[], log_x: true, log_y: false },
        ExperimentName::Survival => Chart { x: "t", y: "survival", group: &[], log_x: true, log_y: false },
        ExperimentName::LimitLaw | ExperimentName::TailRecovery => return None,
    })
}

/// SVG for the experiment's table, or `None` when a chart would have a
/// single point.
pub fn plot_table(name: ExperimentName, csv_text: &str) -> Result<Option<String>> {
    let Some(chart) = chart_for(name) else { return Ok(None) };
    let mut rd = csv::Reader::from_reader(csv_text.as_bytes());
    let headers = rd.headers().map_err(|e| Error::Structural(format!("plot: {e}")))?.clone();
    let col = |n: &str| {
        headers.iter().position(|h| h == n).ok_or_else(|| Error::Structural(format!("plot: no column {n}")))
    };
    let (xi, yi) = (col(chart.x)?, col(chart.y)?);
    let gi: Vec<usize> = chart.group.iter().map(|g| col(g)).collect::<Result<_>>()?;
    let mut series: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    for rec in rd.records() {
        let rec = rec.map_err(|e| Error::Structural(format!("plot: {e}")))?;
        let num = |i: usize| rec[i].parse::<f64>().unwrap_or(f64::NAN);
        let key = gi
            .iter()
            .zip(chart.group)
            .map(|(&i, g)| format!("{g}={}", num(i)))
            .collect::<Vec<_>>()
            .join(" ");
        series.entry(key).or_default().push((num(xi), num(yi)));
    }
    let tx = |v: f64| if chart.log_x { v.log10() } else { v };
    let ty = |v: f64| if chart.log_y { v.log10() } else { v };
    let pts: Vec<(f64, f64)> = series
        .values()
        .flatten()
        .map(|&(x, y)| (tx(x), ty(y)))
        .filter(|(x, y)| x.is_finite() && y.is_finite())
        .collect();
    if pts.len() < 2 {
        return Ok(None);
    }
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if x1 == x0 {
        x1 = x0 + 1.0;
    }
    if y1 == y0 {
        y1 = y0 + 1.0;
    }
    let px = |x: f64| MARGIN + (tx(x) - x0) / (x1 - x0) * (W - 2.0 * MARGIN);
    let py = |y: f64| H - MARGIN - (ty(y) - y0) / (y1 - y0) * (H - 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" font-family="sans-serif" font-size="12">"#);
    let _ = writeln!(svg, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<path d="M{m} {m} V{b} H{r}" fill="none" stroke="black"/>"#,
        m = MARGIN,
        b = H - MARGIN,
        r = W - MARGIN
    );
    let xl = if chart.log_x { format!("log10 {}", chart.x) } else { chart.x.to_string() };
    let yl = if chart.log_y { format!("log10 {}", chart.y) } else { chart.y.to_string() };
    let _ = writeln!(svg, r#"<text x="{}" y="{}" text-anchor="middle">{xl}</text>"#, W / 2.0, H - 15.0);
    let _ = writeln!(svg, r#"<text x="15" y="{}" transform="rotate(-90 15 {})" text-anchor="middle">{yl}</text>"#, H / 2.0, H / 2.0);
    for (v, anchor, x, y) in [
        (x0, "start", MARGIN, H - MARGIN + 18.0),
        (x1, "end", W - MARGIN, H - MARGIN + 18.0),
    ] {
        let _ = writeln!(svg, r#"<text x="{x}" y="{y}" text-anchor="{anchor}">{v:.3}</text>"#);
    }
    for (v, y) in [(y0, H - MARGIN), (y1, MARGIN)] {
        let _ = writeln!(svg, r#"<text x="{}" y="{}" text-anchor="end">{v:.3}</text>"#, MARGIN - 6.0, y + 4.0);
    }
    for (k, (label, mut points)) in series.into_iter().enumerate() {
        points.retain(|&(x, y)| tx(x).is_finite() && ty(y).is_finite());
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        let color = COLORS[k % COLORS.len()];
        let d: Vec<String> = points.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
        let _ = writeln!(svg, r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#, d.join(" "));
        for &(x, y) in &points {
            let _ = writeln!(svg, r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="{color}"/>"#, px(x), py(y));
        }
        if !label.is_empty() {
            let _ = writeln!(svg, r#"<text x="{}" y="{}" fill="{color}">{label}</text>"#, W - MARGIN + 4.0 - 120.0, MARGIN + 14.0 * k as f64);
        }
    }
    svg.push_str("</svg>\n");
    Ok(Some(svg))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn survival_table_plots() {
        let csv = "t,survival,at_risk,flagged\n1e-2,1.0,10,false\n1e0,0.5,10,false\n1e2,0.0,10,false\n";
        let svg = plot_table(ExperimentName::Survival, csv).unwrap().unwrap();
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<circle").count(), 3);
        assert!(plot_table(ExperimentName::TailRecovery, csv).unwrap().is_none());
    }
}
