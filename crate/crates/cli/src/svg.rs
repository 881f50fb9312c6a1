//! Bar-chart rendering of class histograms. Integer layout only, so the
//! output is byte-identical across runs and platforms.

use thompson_links::StatsRecord;

const BAR_WIDTH: u64 = 28;
const BAR_GAP: u64 = 10;
const PLOT_HEIGHT: u64 = 240;
const MARGIN_LEFT: u64 = 50;
const MARGIN_TOP: u64 = 40;
const MARGIN_BOTTOM: u64 = 40;

/// One bar per orbit count from 1 to the maximum, bar height proportional
/// to the class size.
pub fn histogram_svg(record: &StatsRecord) -> String {
    let max_orbits = record.max_orbits().max(1);
    let max_count = record.histogram.values().copied().max().unwrap_or(1).max(1);

    let width = MARGIN_LEFT + max_orbits as u64 * (BAR_WIDTH + BAR_GAP) + BAR_GAP + 10;
    let height = MARGIN_TOP + PLOT_HEIGHT + MARGIN_BOTTOM;
    let baseline = MARGIN_TOP + PLOT_HEIGHT;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n"
    ));
    svg.push_str(&format!(
        "  <title>classes for w={} h={}</title>\n",
        record.width, record.height
    ));
    svg.push_str(&format!(
        "  <text x=\"{MARGIN_LEFT}\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">\
         w={} h={}: {} elements by orbit count</text>\n",
        record.width, record.height, record.total
    ));
    svg.push_str(&format!(
        "  <line x1=\"{left}\" y1=\"{baseline}\" x2=\"{right}\" y2=\"{baseline}\" \
         stroke=\"black\"/>\n",
        left = MARGIN_LEFT - 6,
        right = width - 4,
    ));

    for orbits in 1..=max_orbits {
        let count = record.histogram.get(&orbits).copied().unwrap_or(0);
        let bar_height = count * PLOT_HEIGHT / max_count;
        let x = MARGIN_LEFT + (orbits as u64 - 1) * (BAR_WIDTH + BAR_GAP) + BAR_GAP;
        let y = baseline - bar_height;
        svg.push_str(&format!(
            "  <rect x=\"{x}\" y=\"{y}\" width=\"{BAR_WIDTH}\" height=\"{bar_height}\" \
             fill=\"steelblue\"/>\n"
        ));
        svg.push_str(&format!(
            "  <text x=\"{cx}\" y=\"{ly}\" font-family=\"sans-serif\" font-size=\"11\" \
             text-anchor=\"middle\">{orbits}</text>\n",
            cx = x + BAR_WIDTH / 2,
            ly = baseline + 16,
        ));
        if count > 0 {
            svg.push_str(&format!(
                "  <text x=\"{cx}\" y=\"{cy}\" font-family=\"sans-serif\" font-size=\"10\" \
                 text-anchor=\"middle\">{count}</text>\n",
                cx = x + BAR_WIDTH / 2,
                cy = y.saturating_sub(4).max(12),
            ));
        }
    }
    svg.push_str("</svg>\n");
    svg
}
