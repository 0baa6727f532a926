//! SVG rendering of braid words and box states.
//!
//! Braids are drawn top to bottom, one slot per letter. A crossing glyph is a
//! `<g class="crossing">` holding a continuous `over` path and a broken
//! `under` path; for `+i` the strand running from the upper left to the lower
//! right is on top. Strand pieces outside crossings are collected per strand
//! into one `<path class="strand">`, so a diagram always has exactly `n`
//! strand paths and one glyph per letter. Output is byte-for-byte
//! deterministic.

use std::fmt::Write;

use crate::braid::BraidWord;
use crate::engine::BoxState;
use crate::error::{Error, Result};

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RenderOptions {
    pub strand_gap: f64,
    pub slot_height: f64,
    pub stroke_width: f64,
    /// Length of the break left in the under strand.
    pub under_gap: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self {
            strand_gap: 40.0,
            slot_height: 40.0,
            stroke_width: 3.0,
            under_gap: 12.0,
        }
    }
}

impl RenderOptions {
    pub fn new(strand_gap: f64, slot_height: f64, stroke_width: f64, under_gap: f64) -> Result<Self> {
        let opts = Self {
            strand_gap,
            slot_height,
            stroke_width,
            under_gap,
        };
        let all_positive = [strand_gap, slot_height, stroke_width, under_gap]
            .iter()
            .all(|v| v.is_finite() && *v > 0.0);
        if !all_positive {
            return Err(Error::InvalidRenderOptions(format!("{opts:?}")));
        }
        Ok(opts)
    }
}

/// Formats a coordinate with at most three decimals.
fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn colour(label: usize) -> &'static str {
    PALETTE[(label - 1) % PALETTE.len()]
}

fn braid_size(word: &BraidWord, opts: &RenderOptions) -> (f64, f64) {
    let rows = word.len().max(1) as f64;
    (
        opts.strand_gap * (word.n() as f64 + 1.0),
        opts.slot_height * (rows + 1.0),
    )
}

/// Writes the braid body (no `<svg>` wrapper) with its origin at (0, 0).
fn braid_body(out: &mut String, word: &BraidWord, opts: &RenderOptions) {
    let n = word.n();
    let x = |pos: usize| opts.strand_gap * pos as f64;
    let pad = 0.5 * opts.slot_height;
    let rows = word.len().max(1);
    let y = |row: usize| pad + opts.slot_height * row as f64;

    // Straight pieces per strand label; order[pos - 1] is the label there.
    let mut pieces: Vec<String> = vec![String::new(); n];
    let mut order: Vec<usize> = (1..=n).collect();
    let mut glyphs = String::new();
    let vertical = |d: &mut String, xp: f64, y0: f64, y1: f64| {
        let _ = write!(d, "M{} {}V{}", num(xp), num(y0), num(y1));
    };

    for (pos, &label) in order.iter().enumerate() {
        vertical(&mut pieces[label - 1], x(pos + 1), 0.0, pad);
    }
    for row in 0..rows {
        let (y0, y1) = (y(row), y(row + 1));
        let letter = word.letters().get(row).copied();
        let crossing = letter.map(|k| k.unsigned_abs() as usize);
        for (pos, &label) in order.iter().enumerate() {
            if crossing != Some(pos + 1) && crossing != Some(pos) {
                vertical(&mut pieces[label - 1], x(pos + 1), y0, y1);
            }
        }
        let Some(k) = letter else { continue };
        let i = k.unsigned_abs() as usize;
        let (left, right) = (order[i - 1], order[i]);
        let (xl, xr) = (x(i), x(i + 1));
        // The strand from the upper left goes down to the right.
        let (over_label, under_label, over, under) = if k > 0 {
            (left, right, (xl, y0, xr, y1), (xr, y0, xl, y1))
        } else {
            (right, left, (xr, y0, xl, y1), (xl, y0, xr, y1))
        };
        let (ux0, uy0, ux1, uy1) = under;
        let len = (ux1 - ux0).hypot(uy1 - uy0);
        let frac = (0.5 * opts.under_gap / len).min(0.5);
        let (mx, my) = (0.5 * (ux0 + ux1), 0.5 * (uy0 + uy1));
        let (gx, gy) = ((ux1 - ux0) * frac, (uy1 - uy0) * frac);
        let _ = write!(
            glyphs,
            "<g class=\"crossing\" data-slot=\"{}\" data-index=\"{i}\" data-sign=\"{}\">\
<path class=\"under\" data-strand=\"{under_label}\" stroke=\"{}\" d=\"M{} {}L{} {}M{} {}L{} {}\"/>\
<path class=\"over\" data-strand=\"{over_label}\" stroke=\"{}\" d=\"M{} {}L{} {}\"/></g>\n",
            row + 1,
            k.signum(),
            colour(under_label),
            num(ux0),
            num(uy0),
            num(mx - gx),
            num(my - gy),
            num(mx + gx),
            num(my + gy),
            num(ux1),
            num(uy1),
            colour(over_label),
            num(over.0),
            num(over.1),
            num(over.2),
            num(over.3),
        );
        order.swap(i - 1, i);
    }
    let bottom = y(rows);
    for (pos, &label) in order.iter().enumerate() {
        vertical(&mut pieces[label - 1], x(pos + 1), bottom, bottom + pad);
    }

    let _ = writeln!(
        out,
        "<g class=\"braid\" fill=\"none\" stroke-width=\"{}\" stroke-linecap=\"round\">",
        num(opts.stroke_width)
    );
    for (idx, d) in pieces.iter().enumerate() {
        let _ = writeln!(
            out,
            "<path class=\"strand\" data-strand=\"{}\" stroke=\"{}\" d=\"{d}\"/>",
            idx + 1,
            colour(idx + 1)
        );
    }
    out.push_str(&glyphs);
    out.push_str("</g>\n");
}

fn svg_open(out: &mut String, width: f64, height: f64) {
    let _ = writeln!(
        out,
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
        w = num(width),
        h = num(height)
    );
}

pub fn render_braid(word: &BraidWord, opts: &RenderOptions) -> String {
    let (width, height) = braid_size(word, opts);
    let mut out = String::new();
    svg_open(&mut out, width, height);
    braid_body(&mut out, word, opts);
    out.push_str("</svg>\n");
    out
}

/// Pixels per world unit in the T panel.
const T_SCALE: f64 = 100.0;
const T_MARGIN: f64 = 30.0;
const GROOVE: f64 = 12.0;
const LINE_HEIGHT: f64 = 18.0;

/// Screen position of a world point in the T panel of [`render_state`].
pub fn t_panel_position(x: f64, y: f64) -> (f64, f64) {
    (
        T_MARGIN + (x + 1.0) * T_SCALE,
        T_MARGIN + (1.0 - y) * T_SCALE,
    )
}

/// Draws the T-groove with its dowels, the accumulated braid next to it and
/// the loop images underneath.
pub fn render_state(state: &BoxState, opts: &RenderOptions) -> String {
    let t_width = 2.0 * T_MARGIN + 2.0 * T_SCALE;
    let t_height = 2.0 * T_MARGIN + T_SCALE;
    let (b_width, b_height) = braid_size(&state.word, opts);
    let label_lines = state.n + state.quandle.as_ref().map_or(0, |q| q.len());
    let width = t_width + b_width;
    let height = t_height.max(b_height) + LINE_HEIGHT * (label_lines as f64 + 1.0);

    let mut out = String::new();
    svg_open(&mut out, width, height);

    let (ax0, ay) = t_panel_position(-1.0, 0.0);
    let (ax1, _) = t_panel_position(1.0, 0.0);
    let (sx, sy) = t_panel_position(0.0, 1.0);
    let half = 0.5 * GROOVE;
    let _ = writeln!(out, "<g class=\"t-panel\">");
    let _ = writeln!(
        out,
        "<rect class=\"groove arm\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#d9c7a7\"/>",
        num(ax0 - half),
        num(ay - half),
        num(ax1 - ax0 + GROOVE),
        num(GROOVE)
    );
    let _ = writeln!(
        out,
        "<rect class=\"groove stem\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#d9c7a7\"/>",
        num(sx - half),
        num(sy - half),
        num(GROOVE),
        num(ay - sy + half)
    );
    for (idx, dowel) in state.dowels.iter().enumerate() {
        let p = dowel.to_point();
        let (cx, cy) = t_panel_position(p.x, p.y);
        let _ = writeln!(
            out,
            "<circle class=\"dowel\" data-label=\"{}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>",
            idx + 1,
            num(cx),
            num(cy),
            num(0.4 * GROOVE),
            colour(idx + 1)
        );
    }
    out.push_str("</g>\n");

    let _ = writeln!(
        out,
        "<g class=\"braid-panel\" transform=\"translate({} 0)\">",
        num(t_width)
    );
    braid_body(&mut out, &state.word, opts);
    out.push_str("</g>\n");

    let top = t_height.max(b_height) + LINE_HEIGHT;
    let _ = writeln!(out, "<g class=\"labels\" font-family=\"monospace\" font-size=\"14\">");
    for (idx, image) in state.loops.images().iter().enumerate() {
        let _ = writeln!(
            out,
            "<text class=\"loop-label\" data-generator=\"{}\" x=\"{}\" y=\"{}\">{}</text>",
            idx + 1,
            num(T_MARGIN),
            num(top + LINE_HEIGHT * idx as f64),
            escape(&format!("x{} -> {}", idx + 1, image))
        );
    }
    if let Some(tuple) = &state.quandle {
        for (idx, q) in tuple.iter().enumerate() {
            let _ = writeln!(
                out,
                "<text class=\"quandle-label\" data-strand=\"{}\" x=\"{}\" y=\"{}\">{}</text>",
                idx + 1,
                num(T_MARGIN),
                num(top + LINE_HEIGHT * (state.n + idx) as f64),
                escape(&format!("q{} -> {}", idx + 1, q))
            );
        }
    }
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::DragCommand;
    use crate::tpage::TPoint;

    fn braid(n: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(n, letters.to_vec()).unwrap()
    }

    fn count(svg: &str, class: &str) -> usize {
        let doc = roxmltree::Document::parse(svg).unwrap();
        doc.descendants()
            .filter(|node| node.attribute("class") == Some(class))
            .count()
    }

    #[test]
    fn empty_braid_has_straight_strands() {
        let svg = render_braid(&braid(3, &[]), &RenderOptions::default());
        assert_eq!(count(&svg, "strand"), 3);
        assert_eq!(count(&svg, "crossing"), 0);
    }

    #[test]
    fn single_crossing_over_under() {
        let opts = RenderOptions::default();
        for (k, over) in [(1, "1"), (-1, "2")] {
            let svg = render_braid(&braid(2, &[k]), &opts);
            assert_eq!(count(&svg, "crossing"), 1);
            let doc = roxmltree::Document::parse(&svg).unwrap();
            let over_path = doc
                .descendants()
                .find(|n| n.attribute("class") == Some("over"))
                .unwrap();
            assert_eq!(over_path.attribute("data-strand"), Some(over));
            let under = doc
                .descendants()
                .find(|n| n.attribute("class") == Some("under"))
                .unwrap();
            // Broken: two subpaths.
            assert_eq!(under.attribute("d").unwrap().matches('M').count(), 2);
        }
        // Positive crossing: over strand starts top left.
        let svg = render_braid(&braid(2, &[1]), &opts);
        assert!(svg.contains("class=\"over\" data-strand=\"1\" stroke=\"#1f77b4\" d=\"M40 20L80 60\""));
    }

    #[test]
    fn glyph_slots_follow_the_word() {
        let svg = render_braid(&braid(3, &[1, -2, 1]), &RenderOptions::default());
        let doc = roxmltree::Document::parse(&svg).unwrap();
        let slots: Vec<(&str, &str)> = doc
            .descendants()
            .filter(|n| n.attribute("class") == Some("crossing"))
            .map(|n| (n.attribute("data-slot").unwrap(), n.attribute("data-sign").unwrap()))
            .collect();
        assert_eq!(slots, vec![("1", "1"), ("2", "-1"), ("3", "1")]);
        assert_eq!(count(&svg, "strand"), 3);
    }

    #[test]
    fn options_must_be_positive() {
        assert!(RenderOptions::new(1.0, 1.0, 1.0, 1.0).is_ok());
        assert!(RenderOptions::new(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(RenderOptions::new(1.0, f64::NAN, 1.0, 1.0).is_err());
    }

    #[test]
    fn number_formatting() {
        assert_eq!(num(40.0), "40");
        assert_eq!(num(-0.0001), "0");
        assert_eq!(num(1.23456), "1.235");
        assert_eq!(num(0.5), "0.5");
    }

    fn labels(svg: &str) -> Vec<String> {
        let doc = roxmltree::Document::parse(svg).unwrap();
        doc.descendants()
            .filter(|n| n.attribute("class") == Some("loop-label"))
            .map(|n| n.text().unwrap().to_string())
            .collect()
    }

    #[test]
    fn fresh_state() {
        let s = BoxState::new(1, 4, false).unwrap();
        let svg = render_state(&s, &RenderOptions::default());
        assert_eq!(count(&svg, "dowel"), 4);
        assert_eq!(count(&svg, "crossing"), 0);
        assert_eq!(labels(&svg), vec!["x1 -> x1", "x2 -> x2", "x3 -> x3", "x4 -> x4"]);
        let doc = roxmltree::Document::parse(&svg).unwrap();
        let xs: Vec<f64> = doc
            .descendants()
            .filter(|n| n.attribute("class") == Some("dowel"))
            .map(|n| n.attribute("cx").unwrap().parse().unwrap())
            .collect();
        let expected: Vec<f64> = [-0.6, -0.2, 0.2, 0.6]
            .iter()
            .map(|&x| t_panel_position(x, 0.0).0)
            .collect();
        assert_eq!(xs, expected);
    }

    #[test]
    fn state_after_crossing_and_on_stem() {
        let mut s = BoxState::new(1, 2, true).unwrap();
        for (dowel, target) in [
            (2, TPoint::Horizontal(0.0)),
            (2, TPoint::Vertical(0.5)),
            (1, TPoint::Horizontal(0.5)),
        ] {
            s = s.drag(&DragCommand { dowel, target }).unwrap().0;
        }
        let svg = render_state(&s, &RenderOptions::default());
        assert_eq!(count(&svg, "crossing"), 1);
        assert_eq!(labels(&svg), vec!["x1 -> x1 x2 x1^-1", "x2 -> x1"]);
        assert_eq!(count(&svg, "quandle-label"), 2);

        let doc = roxmltree::Document::parse(&svg).unwrap();
        let stem = doc
            .descendants()
            .find(|n| n.attribute("class") == Some("groove stem"))
            .unwrap();
        let attr = |n: &roxmltree::Node, a: &str| n.attribute(a).unwrap().parse::<f64>().unwrap();
        let dowel = doc
            .descendants()
            .find(|n| n.attribute("data-label") == Some("2"))
            .unwrap();
        let (cx, cy) = (attr(&dowel, "cx"), attr(&dowel, "cy"));
        assert_eq!((cx, cy), t_panel_position(0.0, 0.5));
        assert!(cx > attr(&stem, "x") && cx < attr(&stem, "x") + attr(&stem, "width"));
        assert!(cy > attr(&stem, "y") && cy < attr(&stem, "y") + attr(&stem, "height"));

        let reset = render_state(&s.spool_reset(), &RenderOptions::default());
        assert_eq!(labels(&reset), vec!["x1 -> x1", "x2 -> x2"]);
        assert_eq!(count(&reset, "crossing"), 0);
    }
}
