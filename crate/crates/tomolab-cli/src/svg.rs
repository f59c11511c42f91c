//! Minimal SVG plotting: line charts for step series and a histogram with a
//! density overlay for spectral comparisons. No plotting dependency, just
//! enough geometry for a quick visual check of a run.

use std::fs;
use std::io;
use std::path::Path;

const WIDTH: f64 = 860.0;
const HEIGHT: f64 = 540.0;
const MARGIN_L: f64 = 72.0;
const MARGIN_R: f64 = 24.0;
const MARGIN_T: f64 = 48.0;
const MARGIN_B: f64 = 56.0;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

pub struct Series<'a> {
    pub label: &'a str,
    pub points: &'a [(f64, f64)],
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn from_bounds(xs: (f64, f64), ys: (f64, f64)) -> Frame {
        let pad = |lo: f64, hi: f64| {
            let span = (hi - lo).max(1e-300);
            (lo - 0.03 * span, hi + 0.03 * span)
        };
        let (x0, x1) = pad(xs.0, xs.1);
        let (y0, y1) = pad(ys.0, ys.1);
        Frame { x0, x1, y0, y1 }
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN_L + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - MARGIN_L - MARGIN_R)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN_B - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - MARGIN_T - MARGIN_B)
    }
}

fn tick_label(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let a = v.abs();
    if (1e-3..1e5).contains(&a) {
        let s = format!("{v:.4}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        s.to_string()
    } else {
        format!("{v:.2e}")
    }
}

fn open_svg(title: &str) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" \
         font-family=\"sans-serif\" font-size=\"13\">\n"
    ));
    s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    s.push_str(&format!(
        "<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">{}</text>\n",
        WIDTH / 2.0,
        escape(title)
    ));
    s
}

fn axes(s: &mut String, frame: &Frame, x_label: &str, y_label: &str) {
    let (left, right) = (MARGIN_L, WIDTH - MARGIN_R);
    let (top, bottom) = (MARGIN_T, HEIGHT - MARGIN_B);
    s.push_str(&format!(
        "<rect x=\"{left}\" y=\"{top}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#444\"/>\n",
        right - left,
        bottom - top
    ));
    for i in 0..=4 {
        let fx = frame.x0 + (frame.x1 - frame.x0) * i as f64 / 4.0;
        let fy = frame.y0 + (frame.y1 - frame.y0) * i as f64 / 4.0;
        let px = frame.px(fx);
        let py = frame.py(fy);
        s.push_str(&format!(
            "<line x1=\"{px}\" y1=\"{bottom}\" x2=\"{px}\" y2=\"{}\" stroke=\"#444\"/>\n",
            bottom + 5.0
        ));
        s.push_str(&format!(
            "<text x=\"{px}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
            bottom + 20.0,
            tick_label(fx)
        ));
        s.push_str(&format!(
            "<line x1=\"{}\" y1=\"{py}\" x2=\"{left}\" y2=\"{py}\" stroke=\"#444\"/>\n",
            left - 5.0
        ));
        s.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n",
            left - 9.0,
            py + 4.0,
            tick_label(fy)
        ));
    }
    s.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
        (left + right) / 2.0,
        HEIGHT - 14.0,
        escape(x_label)
    ));
    s.push_str(&format!(
        "<text x=\"18\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {})\">{}</text>\n",
        (top + bottom) / 2.0,
        (top + bottom) / 2.0,
        escape(y_label)
    ));
}

fn polyline(s: &mut String, frame: &Frame, points: &[(f64, f64)], color: &str) {
    let coords: Vec<String> = points
        .iter()
        .map(|&(x, y)| format!("{:.2},{:.2}", frame.px(x), frame.py(y)))
        .collect();
    s.push_str(&format!(
        "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.8\"/>\n",
        coords.join(" ")
    ));
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn line_chart(
    path: &Path,
    title: &str,
    x_label: &str,
    y_label: &str,
    series: &[Series],
) -> io::Result<()> {
    let pts = series.iter().flat_map(|s| s.points.iter());
    let mut xs = (f64::INFINITY, f64::NEG_INFINITY);
    let mut ys = (f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in pts {
        xs = (xs.0.min(x), xs.1.max(x));
        ys = (ys.0.min(y), ys.1.max(y));
    }
    if !xs.0.is_finite() {
        xs = (0.0, 1.0);
        ys = (0.0, 1.0);
    }
    let frame = Frame::from_bounds(xs, ys);
    let mut s = open_svg(title);
    axes(&mut s, &frame, x_label, y_label);
    for (i, ser) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        polyline(&mut s, &frame, ser.points, color);
        let ly = MARGIN_T + 16.0 + 18.0 * i as f64;
        let lx = WIDTH - MARGIN_R - 180.0;
        s.push_str(&format!(
            "<line x1=\"{lx}\" y1=\"{ly}\" x2=\"{}\" y2=\"{ly}\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
            lx + 22.0
        ));
        s.push_str(&format!(
            "<text x=\"{}\" y=\"{}\">{}</text>\n",
            lx + 28.0,
            ly + 4.0,
            escape(ser.label)
        ));
    }
    s.push_str("</svg>\n");
    fs::write(path, s)
}

/// Histogram bars (already normalized to densities over `edges`) with a
/// reference density curve drawn on top.
pub fn histogram_overlay(
    path: &Path,
    title: &str,
    x_label: &str,
    edges: &[f64],
    densities: &[f64],
    curve: &[(f64, f64)],
) -> io::Result<()> {
    assert_eq!(edges.len(), densities.len() + 1);
    let mut xs = (edges[0], edges[edges.len() - 1]);
    let mut ymax = 0.0f64;
    for &d in densities {
        ymax = ymax.max(d);
    }
    for &(x, y) in curve {
        xs = (xs.0.min(x), xs.1.max(x));
        ymax = ymax.max(y);
    }
    let frame = Frame::from_bounds(xs, (0.0, ymax.max(1e-12)));
    let mut s = open_svg(title);
    axes(&mut s, &frame, x_label, "density");
    for (i, &d) in densities.iter().enumerate() {
        let x0 = frame.px(edges[i]);
        let x1 = frame.px(edges[i + 1]);
        let y = frame.py(d);
        let base = frame.py(0.0);
        s.push_str(&format!(
            "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" \
             fill=\"#9ecae1\" stroke=\"#6baed6\"/>\n",
            x0,
            y,
            (x1 - x0).max(0.0),
            (base - y).max(0.0)
        ));
    }
    polyline(&mut s, &frame, curve, "#d62728");
    s.push_str("</svg>\n");
    fs::write(path, s)
}
