//! Nested-interval pictures of `𝒮_n`: one row per depth, larger values on
//! the left so that left to right is the order `0 < ⋆ < 1`.

use std::fmt::Write as _;

use crate::manifest::Manifest;

struct Mark {
    label: String,
    value: f64,
    text: String,
    /// Depth at which the mark first appears.
    depth: usize,
    separator: bool,
}

fn marks(m: &Manifest) -> Vec<Mark> {
    let nodes = m.nodes.iter().map(|n| Mark {
        label: if n.word.is_empty() {
            "ε".into()
        } else {
            n.word.clone()
        },
        value: n.statistic.parse().unwrap_or(f64::NAN),
        text: n.statistic.clone(),
        depth: n.word.len(),
        separator: false,
    });
    let seps = m.separators.iter().map(|s| Mark {
        label: format!("{}*", s.word),
        value: s.value.parse().unwrap_or(f64::NAN),
        text: s.value.clone(),
        depth: s.word.len() + 1,
        separator: true,
    });
    nodes.chain(seps).collect()
}

fn scale(marks: &[Mark], width: usize) -> impl Fn(f64) -> usize {
    let hi = marks
        .iter()
        .map(|m| m.value)
        .fold(f64::NEG_INFINITY, f64::max);
    let lo = marks.iter().map(|m| m.value).fold(f64::INFINITY, f64::min);
    move |v: f64| {
        if hi > lo {
            (((hi - v) / (hi - lo)) * (width - 1) as f64).round() as usize
        } else {
            (width - 1) / 2
        }
    }
}

/// Rows of `o` (groups `G_ω`) and `|` (separators), then a legend.
pub fn ascii(m: &Manifest) -> String {
    const WIDTH: usize = 64;
    let all = marks(m);
    let pos = scale(&all, WIDTH);
    let depth = m.config.depth;
    let mut out = format!(
        "S_{depth} for {} (values decrease to the right)\n",
        m.base_group
    );
    for j in 0..=depth {
        let mut row = vec![' '; WIDTH];
        for mk in all.iter().filter(|mk| mk.separator && mk.depth <= j) {
            row[pos(mk.value)] = '|';
        }
        for mk in all.iter().filter(|mk| !mk.separator && mk.depth == j) {
            row[pos(mk.value)] = 'o';
        }
        writeln!(
            out,
            "n={j:<2} {}",
            row.iter().collect::<String>().trim_end()
        )
        .unwrap();
    }
    let mut legend: Vec<&Mark> = all
        .iter()
        .filter(|mk| mk.separator || mk.depth == depth)
        .collect();
    legend.sort_by(|a, b| b.value.total_cmp(&a.value));
    for mk in legend {
        writeln!(out, "  {:>w$}  {}", mk.label, mk.text, w = depth + 2).unwrap();
    }
    out
}

pub fn svg(m: &Manifest) -> String {
    const WIDTH: usize = 720;
    const LEFT: usize = 60;
    const ROW: usize = 50;
    let all = marks(m);
    let pos = scale(&all, WIDTH - 2 * LEFT);
    let x = |v: f64| LEFT + pos(v);
    let depth = m.config.depth;
    let height = ROW * (depth + 2) + 20;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" font-family="monospace" font-size="11">"#
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="10" y="16">S_{depth} for {}</text>"#,
        escape(&m.base_group)
    )
    .unwrap();
    for j in 0..=depth {
        let y = ROW * (j + 1);
        writeln!(
            out,
            r##"<line x1="{LEFT}" y1="{y}" x2="{}" y2="{y}" stroke="#bbb"/><text x="10" y="{}">n={j}</text>"##,
            WIDTH - LEFT,
            y + 4
        )
        .unwrap();
    }
    let bottom = ROW * (depth + 1);
    for mk in &all {
        let cx = x(mk.value);
        if mk.separator {
            let top = ROW * mk.depth - 12;
            writeln!(
                out,
                r##"<line x1="{cx}" y1="{top}" x2="{cx}" y2="{}" stroke="#c33" stroke-dasharray="3,3"/><text x="{cx}" y="{}" text-anchor="middle" fill="#c33">{}</text>"##,
                bottom + 12,
                bottom + 26,
                escape(&mk.label)
            )
            .unwrap();
        } else {
            let y = ROW * (mk.depth + 1);
            writeln!(
                out,
                r#"<circle cx="{cx}" cy="{y}" r="4"/><text x="{cx}" y="{}" text-anchor="middle"><title>{}</title>{}</text>"#,
                y - 8,
                escape(&mk.text),
                escape(&mk.label)
            )
            .unwrap();
        }
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
