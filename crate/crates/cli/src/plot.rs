//! Self-contained SVG: `log10` magnitudes against `t`.

use std::fmt::Write as _;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;
/// Magnitudes below this are clipped to it before taking logs.
const FLOOR: f64 = 1e-16;

/// One named series of `(t, |value|)` points.
pub struct Series<'a> {
    pub name: &'a str,
    pub color: &'a str,
    pub points: Vec<(f64, f64)>,
}

fn nice(x: f64) -> String {
    let s = format!("{x:.3}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Renders the series on shared axes, magnitude on a log scale.
pub fn render(title: &str, series: &[Series]) -> String {
    let all = series.iter().flat_map(|s| s.points.iter());
    let (mut t0, mut t1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(t, v) in all {
        let y = v.max(FLOOR).log10();
        t0 = t0.min(t);
        t1 = t1.max(t);
        if y.is_finite() {
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
    }
    if !(t1 > t0) {
        t1 = t0 + 1.0;
    }
    let (y0, y1) = if y1 > y0 { (y0.floor(), y1.ceil()) } else { (y0.floor() - 1.0, y0.floor() + 1.0) };
    let px = |t: f64| MARGIN + (t - t0) / (t1 - t0) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(out, r#"<text x="{}" y="24" text-anchor="middle" font-size="15">{title}</text>"#, WIDTH / 2.0).unwrap();
    let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    writeln!(out, r#"<path d="M{left} {top} L{left} {bottom} L{right} {bottom}" stroke="black" fill="none"/>"#).unwrap();
    let decades = (y1 - y0) as i64;
    let stride = (decades / 8).max(1);
    let mut e = y0 as i64;
    while e <= y1 as i64 {
        let y = py(e as f64);
        writeln!(out, r##"<line x1="{left}" y1="{y:.2}" x2="{right}" y2="{y:.2}" stroke="#ddd"/>"##).unwrap();
        writeln!(out, r#"<text x="{}" y="{:.2}" text-anchor="end">1e{e}</text>"#, left - 6.0, y + 4.0).unwrap();
        e += stride;
    }
    for k in 0..=6 {
        let t = t0 + (t1 - t0) * k as f64 / 6.0;
        let x = px(t);
        writeln!(out, r#"<line x1="{x:.2}" y1="{bottom}" x2="{x:.2}" y2="{}" stroke="black"/>"#, bottom + 5.0).unwrap();
        writeln!(out, r#"<text x="{x:.2}" y="{}" text-anchor="middle">{}</text>"#, bottom + 20.0, nice(t)).unwrap();
    }
    writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle">t</text>"#, WIDTH / 2.0, HEIGHT - 12.0).unwrap();
    for (k, s) in series.iter().enumerate() {
        let path: Vec<String> = s
            .points
            .iter()
            .enumerate()
            .map(|(i, &(t, v))| format!("{}{:.2} {:.2}", if i == 0 { 'M' } else { 'L' }, px(t), py(v.max(FLOOR).log10())))
            .collect();
        writeln!(out, r#"<path d="{}" stroke="{}" stroke-width="1.5" fill="none"/>"#, path.join(" "), s.color).unwrap();
        let ly = top + 16.0 * k as f64;
        writeln!(out, r#"<line x1="{}" y1="{ly}" x2="{}" y2="{ly}" stroke="{}" stroke-width="2"/>"#, right - 150.0, right - 130.0, s.color)
            .unwrap();
        writeln!(out, r#"<text x="{}" y="{}">{}</text>"#, right - 125.0, ly + 4.0, s.name).unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    out
}
