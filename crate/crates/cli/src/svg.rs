//! Minimal SVG plots: histograms, scatter plots and log-scale sequences.

use std::fmt::Write;

const W: f64 = 640.0;
const H: f64 = 400.0;
const MARGIN: f64 = 50.0;

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn new(x: (f64, f64), y: (f64, f64)) -> Self {
        let pad = |(a, b): (f64, f64)| if b > a { (a, b) } else { (a - 0.5, a + 0.5) };
        Frame { x: pad(x), y: pad(y) }
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x.0) / (self.x.1 - self.x.0) * (W - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        H - MARGIN - (y - self.y.0) / (self.y.1 - self.y.0) * (H - 2.0 * MARGIN)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn open(title: &str, xlabel: &str, ylabel: &str, f: &Frame) -> String {
    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" font-family="sans-serif" font-size="12">"#).unwrap();
    writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#).unwrap();
    writeln!(s, r#"<text x="{}" y="20" text-anchor="middle" font-size="14">{}</text>"#, W / 2.0, escape(title)).unwrap();
    let (x0, x1, y0, y1) = (MARGIN, W - MARGIN, H - MARGIN, MARGIN);
    writeln!(s, r#"<path d="M{x0},{y1} L{x0},{y0} L{x1},{y0}" stroke="black" fill="none"/>"#).unwrap();
    writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, W / 2.0, H - 12.0, escape(xlabel)).unwrap();
    writeln!(s, r#"<text x="14" y="{}" text-anchor="middle" transform="rotate(-90 14 {})">{}</text>"#, H / 2.0, H / 2.0, escape(ylabel)).unwrap();
    for (v, anchor, x, y) in [
        (f.x.0, "start", x0, y0 + 16.0),
        (f.x.1, "end", x1, y0 + 16.0),
        (f.y.0, "end", x0 - 4.0, y0),
        (f.y.1, "end", x0 - 4.0, y1 + 4.0),
    ] {
        writeln!(s, r#"<text x="{x}" y="{y}" text-anchor="{anchor}">{v:.4}</text>"#).unwrap();
    }
    s
}

/// Equal-width bins over `[min, max]` of `values`.
pub fn bin(values: &[f64], bins: usize) -> Vec<(f64, f64, usize)> {
    if values.is_empty() || bins == 0 {
        return Vec::new();
    }
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let width = if hi > lo { (hi - lo) / bins as f64 } else { 1.0 };
    let mut counts = vec![0usize; bins];
    for &v in values {
        let k = (((v - lo) / width) as usize).min(bins - 1);
        counts[k] += 1;
    }
    counts.into_iter().enumerate().map(|(k, c)| (lo + k as f64 * width, lo + (k + 1) as f64 * width, c)).collect()
}

pub fn histogram(title: &str, xlabel: &str, values: &[f64], bins: usize, marker: Option<(f64, &str)>) -> String {
    let b = bin(values, bins);
    let xr = match (b.first(), b.last()) {
        (Some(f), Some(l)) => (f.0, l.1),
        _ => (0.0, 1.0),
    };
    let xr = match marker {
        Some((m, _)) => (xr.0.min(m), xr.1.max(m)),
        None => xr,
    };
    let top = b.iter().map(|x| x.2).max().unwrap_or(1) as f64;
    let f = Frame::new(xr, (0.0, top));
    let mut s = open(title, xlabel, "count", &f);
    for &(a, c, n) in &b {
        let (x, y) = (f.px(a), f.py(n as f64));
        let w = (f.px(c) - x - 1.0).max(0.5);
        writeln!(s, r#"<rect x="{x:.2}" y="{y:.2}" width="{w:.2}" height="{:.2}" fill="steelblue"/>"#, f.py(0.0) - y).unwrap();
    }
    if let Some((m, label)) = marker {
        let x = f.px(m);
        writeln!(s, r#"<line x1="{x:.2}" y1="{}" x2="{x:.2}" y2="{}" stroke="firebrick" stroke-dasharray="4 3"/>"#, MARGIN, H - MARGIN).unwrap();
        writeln!(s, r#"<text x="{:.2}" y="{}" fill="firebrick">{}</text>"#, x + 4.0, MARGIN + 12.0, escape(label)).unwrap();
    }
    s.push_str("</svg>\n");
    s
}

pub fn scatter(title: &str, xlabel: &str, ylabel: &str, points: &[(f64, f64)], diagonal: bool) -> String {
    let (mut lo, mut hi) = ((f64::INFINITY, f64::INFINITY), (f64::NEG_INFINITY, f64::NEG_INFINITY));
    for &(x, y) in points {
        lo = (lo.0.min(x), lo.1.min(y));
        hi = (hi.0.max(x), hi.1.max(y));
    }
    if points.is_empty() {
        lo = (0.0, 0.0);
        hi = (1.0, 1.0);
    }
    let f = Frame::new((lo.0.min(0.0), hi.0), (lo.1.min(0.0), hi.1));
    let mut s = open(title, xlabel, ylabel, &f);
    if diagonal {
        let m = f.x.1.min(f.y.1);
        writeln!(s, r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="gray" stroke-dasharray="4 3"/>"#, f.px(0.0), f.py(0.0), f.px(m), f.py(m)).unwrap();
    }
    for &(x, y) in points {
        writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="steelblue"/>"#, f.px(x), f.py(y)).unwrap();
    }
    s.push_str("</svg>\n");
    s
}

/// `log s(n) / (λⁿ nᵐ)` against `n`, with the envelope `[log c₁, log c₂]`.
pub fn normalized_growth(title: &str, seq: &[f64], lambda: f64, m: u32, c1: f64, c2: f64) -> String {
    let pts: Vec<(f64, f64)> = seq
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            let n = (i + 1) as f64;
            (n, (s / (lambda.powf(n) * n.powi(m as i32))).ln())
        })
        .collect();
    let ys = pts.iter().map(|p| p.1).chain([c1.ln(), c2.ln()]);
    let (ylo, yhi) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), y| (a.min(y), b.max(y)));
    let f = Frame::new((1.0, seq.len().max(2) as f64), (ylo, yhi));
    let mut s = open(title, "n", "log s(n) - n log λ - m log n", &f);
    for c in [c1, c2] {
        let y = f.py(c.ln());
        writeln!(s, r#"<line x1="{}" y1="{y:.2}" x2="{}" y2="{y:.2}" stroke="gray" stroke-dasharray="4 3"/>"#, MARGIN, W - MARGIN).unwrap();
    }
    let path: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", f.px(x), f.py(y))).collect();
    writeln!(s, r#"<polyline points="{}" fill="none" stroke="steelblue"/>"#, path.join(" ")).unwrap();
    for &(x, y) in &pts {
        writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="steelblue"/>"#, f.px(x), f.py(y)).unwrap();
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bins_cover_all_values() {
        let v = [0.1, 0.2, 0.2, 0.9, 1.0];
        let b = bin(&v, 4);
        assert_eq!(b.iter().map(|x| x.2).sum::<usize>(), v.len());
        assert_eq!(b.last().unwrap().2, 2);
        assert_eq!(bin(&[0.5, 0.5], 3).iter().map(|x| x.2).sum::<usize>(), 2);
    }

    #[test]
    fn documents_are_closed() {
        for doc in [
            histogram("r", "x", &[0.5, 0.6], 5, Some((0.66, "2/3"))),
            scatter("s", "x", "y", &[(0.1, 0.2)], true),
            normalized_growth("g", &[2.0, 3.0, 4.0], 1.0, 1, 1.0, 2.0),
        ] {
            assert!(doc.starts_with("<svg") && doc.ends_with("</svg>\n"));
            assert!(!doc.contains("NaN"));
        }
    }
}
