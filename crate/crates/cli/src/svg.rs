//! Self-contained SVG line charts (no external assets).

use std::path::Path;

use crate::config::CliError;

/// One labeled polyline.
#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

/// Axis scaling of the chart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axes {
    Linear,
    /// log10 on both axes; non-positive points are dropped.
    LogLog,
}

const WIDTH: f64 = 880.0;
const HEIGHT: f64 = 560.0;
const MARGIN_L: f64 = 72.0;
const MARGIN_R: f64 = 160.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 56.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
];

fn nice_ticks(lo: f64, hi: f64) -> Vec<f64> {
    let span = (hi - lo).max(1e-300);
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|&s| span / s <= 6.0)
        .unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() * step;
    let mut ticks = Vec::new();
    let mut t = first;
    while t <= hi + 1e-9 * span {
        ticks.push(t);
        t += step;
    }
    ticks
}

fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let a = v.abs();
    if (1e-3..1e4).contains(&a) {
        let s = format!("{v:.4}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        s.to_string()
    } else {
        format!("{v:.1e}")
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Render a line chart into an SVG string.
pub fn render_svg(series: &[Series], x_label: &str, y_label: &str, axes: Axes) -> String {
    let transform = |p: (f64, f64)| -> Option<(f64, f64)> {
        match axes {
            Axes::Linear => Some(p),
            Axes::LogLog => {
                if p.0 > 0.0 && p.1 > 0.0 {
                    Some((p.0.log10(), p.1.log10()))
                } else {
                    None
                }
            }
        }
    };
    let data: Vec<(usize, Vec<(f64, f64)>)> = series
        .iter()
        .enumerate()
        .map(|(i, s)| (i, s.points.iter().filter_map(|&p| transform(p)).collect()))
        .collect();

    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    for (_, pts) in &data {
        for &(x, y) in pts {
            if x.is_finite() && y.is_finite() {
                xs.push(x);
                ys.push(y);
            }
        }
    }
    let (x_lo, x_hi) = match (
        xs.iter().cloned().reduce(f64::min),
        xs.iter().cloned().reduce(f64::max),
    ) {
        (Some(a), Some(b)) if b > a => (a, b),
        (Some(a), _) => (a - 0.5, a + 0.5),
        _ => (0.0, 1.0),
    };
    let (y_lo, y_hi) = match (
        ys.iter().cloned().reduce(f64::min),
        ys.iter().cloned().reduce(f64::max),
    ) {
        (Some(a), Some(b)) if b > a => (a, b),
        (Some(a), _) => (a - 0.5, a + 0.5),
        _ => (0.0, 1.0),
    };
    let pad_x = 0.03 * (x_hi - x_lo);
    let pad_y = 0.05 * (y_hi - y_lo);
    let (x_lo, x_hi) = (x_lo - pad_x, x_hi + pad_x);
    let (y_lo, y_hi) = (y_lo - pad_y, y_hi + pad_y);

    let plot_w = WIDTH - MARGIN_L - MARGIN_R;
    let plot_h = HEIGHT - MARGIN_T - MARGIN_B;
    let to_px = |x: f64, y: f64| -> (f64, f64) {
        (
            MARGIN_L + (x - x_lo) / (x_hi - x_lo) * plot_w,
            MARGIN_T + (y_hi - y) / (y_hi - y_lo) * plot_h,
        )
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // Axes box.
    svg.push_str(&format!(
        "<rect x=\"{MARGIN_L}\" y=\"{MARGIN_T}\" width=\"{plot_w}\" height=\"{plot_h}\" \
         fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n"
    ));

    // Ticks and grid.
    for t in nice_ticks(x_lo, x_hi) {
        let (px, _) = to_px(t, y_lo);
        let y0 = MARGIN_T + plot_h;
        svg.push_str(&format!(
            "<line x1=\"{px:.2}\" y1=\"{y0:.2}\" x2=\"{px:.2}\" y2=\"{:.2}\" \
             stroke=\"#ccc\" stroke-width=\"0.5\"/>\n",
            MARGIN_T
        ));
        let label = match axes {
            Axes::Linear => fmt_tick(t),
            Axes::LogLog => format!("1e{}", fmt_tick(t)),
        };
        svg.push_str(&format!(
            "<text x=\"{px:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"middle\" \
             fill=\"#333\">{label}</text>\n",
            y0 + 18.0
        ));
    }
    for t in nice_ticks(y_lo, y_hi) {
        let (_, py) = to_px(x_lo, t);
        svg.push_str(&format!(
            "<line x1=\"{MARGIN_L}\" y1=\"{py:.2}\" x2=\"{:.2}\" y2=\"{py:.2}\" \
             stroke=\"#ccc\" stroke-width=\"0.5\"/>\n",
            MARGIN_L + plot_w
        ));
        let label = match axes {
            Axes::Linear => fmt_tick(t),
            Axes::LogLog => format!("1e{}", fmt_tick(t)),
        };
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"end\" \
             fill=\"#333\">{label}</text>\n",
            MARGIN_L - 6.0,
            py + 4.0
        ));
    }

    // Axis labels.
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"14\" text-anchor=\"middle\" \
         fill=\"#111\">{}</text>\n",
        MARGIN_L + plot_w / 2.0,
        HEIGHT - 12.0,
        xml_escape(x_label)
    ));
    svg.push_str(&format!(
        "<text x=\"16\" y=\"{:.2}\" font-size=\"14\" text-anchor=\"middle\" fill=\"#111\" \
         transform=\"rotate(-90 16 {:.2})\">{}</text>\n",
        MARGIN_T + plot_h / 2.0,
        MARGIN_T + plot_h / 2.0,
        xml_escape(y_label)
    ));

    // Series.
    for (i, pts) in &data {
        let color = PALETTE[i % PALETTE.len()];
        if pts.len() > 1 {
            let mut attr = String::new();
            for &(x, y) in pts {
                let (px, py) = to_px(x, y);
                attr.push_str(&format!("{px:.2},{py:.2} "));
            }
            svg.push_str(&format!(
                "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.6\" \
                 points=\"{}\"/>\n",
                attr.trim_end()
            ));
        } else if pts.len() == 1 {
            let (px, py) = to_px(pts[0].0, pts[0].1);
            svg.push_str(&format!(
                "<circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"2.5\" fill=\"{color}\"/>\n"
            ));
        }
        // Legend entry.
        let ly = MARGIN_T + 16.0 + *i as f64 * 18.0;
        let lx = WIDTH - MARGIN_R + 12.0;
        svg.push_str(&format!(
            "<line x1=\"{lx:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{color}\" \
             stroke-width=\"2\"/>\n",
            ly - 4.0,
            lx + 22.0,
            ly - 4.0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{ly:.2}\" font-size=\"12\" fill=\"#111\">{}</text>\n",
            lx + 28.0,
            xml_escape(&series[*i].label)
        ));
    }

    svg.push_str("</svg>\n");
    svg
}

/// Render and write the chart.
pub fn emit_svg(
    series: &[Series],
    path: &Path,
    x_label: &str,
    y_label: &str,
    axes: Axes,
) -> Result<(), CliError> {
    std::fs::write(path, render_svg(series, x_label, y_label, axes))
        .map_err(|e| CliError::Io(format!("cannot write '{}': {e}", path.display())))
}
