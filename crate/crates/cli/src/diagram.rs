use std::fmt::Write;

use cdrank_core::{Grouping, MeanRanks, NemenyiParams};

/// Pixel geometry shared by every diagram: fixed width, label gutter on the
/// left, rank axis on the right.
const WIDTH: f64 = 840.0;
const LABEL_X: f64 = 210.0;
const AXIS_LEFT: f64 = 230.0;
const AXIS_RIGHT: f64 = 810.0;
const ROW_H: f64 = 18.0;

fn escape_xml(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

/// Renders the critical-difference diagram: a [1, k] mean-rank axis (higher
/// is better, so the best approaches sit right), a reference bar of length
/// cd, one bar per group spanning its members, and one labeled mark per
/// approach at its (clamped) mean rank. Output is deterministic for
/// identical inputs.
pub fn render_cd_diagram(
    g: &Grouping,
    mr: &MeanRanks,
    params: &NemenyiParams,
    names: &[String],
    title: &str,
) -> Vec<u8> {
    let k = names.len();
    debug_assert_eq!(g.group_index.len(), k);
    debug_assert_eq!(mr.values().len(), k);

    let kf = k as f64;
    let x_of = |rank: f64| {
        let r = rank.clamp(1.0, kf);
        AXIS_LEFT + (r - 1.0) / (kf - 1.0) * (AXIS_RIGHT - AXIS_LEFT)
    };

    let group_count = g.group_count();
    let groups_top = 88.0;
    let rows_top = groups_top + group_count as f64 * 8.0 + 18.0;
    let height = rows_top + kf * ROW_H + 16.0;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{height:.2}\" viewBox=\"0 0 {WIDTH} {height:.2}\" font-family=\"sans-serif\" font-size=\"12\">"
    );
    let _ = writeln!(svg, "<title>{}</title>", escape_xml(title));
    let _ = writeln!(
        svg,
        "<text x=\"{AXIS_LEFT}\" y=\"20\" class=\"title\">{}</text>",
        escape_xml(title)
    );

    // CD reference bar.
    let cd_px = (params.cd / (kf - 1.0) * (AXIS_RIGHT - AXIS_LEFT)).clamp(0.0, AXIS_RIGHT - AXIS_LEFT);
    let _ = writeln!(
        svg,
        "<line x1=\"{AXIS_LEFT:.2}\" y1=\"36\" x2=\"{:.2}\" y2=\"36\" stroke=\"black\" stroke-width=\"2\" class=\"cd-bar\"/>",
        AXIS_LEFT + cd_px.max(1.0)
    );
    let _ = writeln!(
        svg,
        "<text x=\"{:.2}\" y=\"40\" class=\"cd-label\">CD = {:.2}</text>",
        AXIS_LEFT + cd_px.max(1.0) + 8.0,
        params.cd
    );

    // Rank axis with integer ticks, 1 on the left through k on the right.
    let _ = writeln!(
        svg,
        "<line x1=\"{AXIS_LEFT}\" y1=\"60\" x2=\"{AXIS_RIGHT}\" y2=\"60\" stroke=\"black\" class=\"axis\"/>"
    );
    let step = ((k - 1) + 10) / 11; // at most 12 tick labels
    let mut tick = 1usize;
    loop {
        let x = x_of(tick as f64);
        let _ = writeln!(
            svg,
            "<line x1=\"{x:.2}\" y1=\"56\" x2=\"{x:.2}\" y2=\"64\" stroke=\"black\" class=\"tick\"/>"
        );
        let _ = writeln!(
            svg,
            "<text x=\"{x:.2}\" y=\"78\" text-anchor=\"middle\" class=\"tick-label\">{tick}</text>"
        );
        if tick == k {
            break;
        }
        tick = (tick + step).min(k);
    }
    let _ = writeln!(
        svg,
        "<text x=\"{AXIS_RIGHT}\" y=\"20\" text-anchor=\"end\" class=\"axis-caption\">mean rank (higher is better)</text>"
    );

    // One bar per group spanning its members' positions.
    for group in 0..group_count {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (i, &gi) in g.group_index.iter().enumerate() {
            if gi == group {
                let x = x_of(mr.values()[i]);
                lo = lo.min(x);
                hi = hi.max(x);
            }
        }
        // A singleton group still gets a visible bar.
        if hi - lo < 4.0 {
            let mid = 0.5 * (lo + hi);
            lo = mid - 2.0;
            hi = mid + 2.0;
        }
        let y = groups_top + group as f64 * 8.0;
        let _ = writeln!(
            svg,
            "<line x1=\"{lo:.2}\" y1=\"{y:.2}\" x2=\"{hi:.2}\" y2=\"{y:.2}\" stroke=\"black\" stroke-width=\"4\" class=\"group\"/>"
        );
    }

    // Labeled marks, best approach first.
    for (row, &i) in g.order.iter().enumerate() {
        let y = rows_top + row as f64 * ROW_H;
        let x = x_of(mr.values()[i]);
        let _ = writeln!(
            svg,
            "<text x=\"{LABEL_X}\" y=\"{:.2}\" text-anchor=\"end\" class=\"approach\">{} ({:.2})</text>",
            y + 4.0,
            escape_xml(&names[i]),
            mr.values()[i]
        );
        let _ = writeln!(
            svg,
            "<line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{x:.2}\" y2=\"{y:.2}\" stroke=\"grey\" stroke-dasharray=\"2,3\" class=\"leader\"/>",
            LABEL_X + 10.0
        );
        let _ = writeln!(
            svg,
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" class=\"mark\"/>"
        );
    }

    let _ = writeln!(svg, "</svg>");
    svg.into_bytes()
}
