//! Minimal line plot writer: fixed viewport, one polyline, labelled ticks.

use std::fmt::Write;

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;
pub const MARGIN: f64 = 60.0;

#[derive(Debug, Clone, PartialEq)]
pub struct LinePlot {
    pub points: Vec<(f64, f64)>,
    pub x_label: String,
    pub y_label: String,
    pub log_x: bool,
}

fn padded_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
        (a.min(v), b.max(v))
    });
    if hi > lo {
        (lo, hi)
    } else {
        let pad = if lo == 0.0 { 1.0 } else { 0.5 * lo.abs() };
        (lo - pad, hi + pad)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

impl LinePlot {
    /// Standalone SVG document. Callers ensure `points` is nonempty and,
    /// with `log_x`, that every abscissa is positive.
    pub fn render(&self) -> String {
        let tx = |x: f64| if self.log_x { x.log10() } else { x };
        let (x0, x1) = padded_range(self.points.iter().map(|p| tx(p.0)));
        let (y0, y1) = padded_range(self.points.iter().map(|p| p.1));
        let plot_w = WIDTH - 2.0 * MARGIN;
        let plot_h = HEIGHT - 2.0 * MARGIN;
        let sx = |u: f64| MARGIN + (u - x0) / (x1 - x0) * plot_w;
        let sy = |v: f64| HEIGHT - MARGIN - (v - y0) / (y1 - y0) * plot_h;

        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
        );
        let _ = writeln!(
            out,
            r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
        );
        let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
        let _ = writeln!(
            out,
            r#"<line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="black"/>"#
        );
        let _ = writeln!(
            out,
            r#"<line x1="{left}" y1="{top}" x2="{left}" y2="{bottom}" stroke="black"/>"#
        );

        for u in self.x_ticks(x0, x1) {
            let px = sx(u);
            let label = if self.log_x {
                format!("1e{}", u.round() as i64)
            } else {
                format!("{u:.3e}")
            };
            let _ = writeln!(
                out,
                r#"<line x1="{px:.3}" y1="{bottom}" x2="{px:.3}" y2="{:.3}" stroke="black"/>"#,
                bottom + 5.0
            );
            let _ = writeln!(
                out,
                r#"<text x="{px:.3}" y="{:.3}" font-size="12" text-anchor="middle">{label}</text>"#,
                bottom + 20.0
            );
        }
        for i in 0..=4 {
            let v = y0 + (y1 - y0) * f64::from(i) / 4.0;
            let py = sy(v);
            let _ = writeln!(
                out,
                r#"<line x1="{:.3}" y1="{py:.3}" x2="{left}" y2="{py:.3}" stroke="black"/>"#,
                left - 5.0
            );
            let _ = writeln!(
                out,
                r#"<text x="{:.3}" y="{:.3}" font-size="12" text-anchor="end">{v:.3e}</text>"#,
                left - 8.0,
                py + 4.0
            );
        }
        let _ = writeln!(
            out,
            r#"<text x="{:.3}" y="{:.3}" font-size="14" text-anchor="middle">{}</text>"#,
            WIDTH / 2.0,
            HEIGHT - 15.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            out,
            r#"<text x="15" y="{:.3}" font-size="14" text-anchor="middle" transform="rotate(-90 15 {:.3})">{}</text>"#,
            HEIGHT / 2.0,
            HEIGHT / 2.0,
            escape(&self.y_label)
        );
        let pts: Vec<String> = self
            .points
            .iter()
            .map(|&(x, y)| format!("{:.3},{:.3}", sx(tx(x)), sy(y)))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="steelblue" stroke-width="2" points="{}"/>"#,
            pts.join(" ")
        );
        out.push_str("</svg>\n");
        out
    }

    fn x_ticks(&self, x0: f64, x1: f64) -> Vec<f64> {
        if self.log_x {
            let decades: Vec<f64> = (x0.ceil() as i64..=x1.floor() as i64)
                .map(|d| d as f64)
                .collect();
            if !decades.is_empty() {
                return decades;
            }
        }
        (0..=4)
            .map(|i| x0 + (x1 - x0) * f64::from(i) / 4.0)
            .collect()
    }
}
