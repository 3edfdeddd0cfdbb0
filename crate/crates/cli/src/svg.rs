//! Self-contained SVG line plots for sweep results. No plotting dependency:
//! axes, ticks, two polylines and the crossover marker are emitted directly
//! so the output is deterministic and diffable.

use hydromodal_core::SweepResult;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 55.0;

const BASELINE_COLOR: &str = "#000000";
const MULTIMODAL_COLOR: &str = "#1a6fb5";

struct Axes {
    x_lo: f64,
    x_hi: f64,
    y_lo: f64,
    y_hi: f64,
}

impl Axes {
    fn x(&self, v: f64) -> f64 {
        MARGIN_L + (v - self.x_lo) / (self.x_hi - self.x_lo) * (WIDTH - MARGIN_L - MARGIN_R)
    }

    fn y(&self, v: f64) -> f64 {
        HEIGHT - MARGIN_B - (v - self.y_lo) / (self.y_hi - self.y_lo) * (HEIGHT - MARGIN_T - MARGIN_B)
    }
}

fn polyline(points: &[(f64, f64)], axes: &Axes, color: &str, dashed: bool) -> String {
    let coords: Vec<String> = points
        .iter()
        .map(|(x, y)| format!("{:.2},{:.2}", axes.x(*x), axes.y(*y)))
        .collect();
    let dash = if dashed { " stroke-dasharray=\"6,4\"" } else { "" };
    format!(
        "  <polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\"{} points=\"{}\"/>\n",
        color,
        dash,
        coords.join(" ")
    )
}

/// Render a sweep as an SVG document.
pub fn plot_sweep(result: &SweepResult, title: &str, x_label: &str, y_label: &str) -> String {
    let y_max = result
        .rows
        .iter()
        .flat_map(|r| [r.baseline, r.multimodal])
        .fold(0.0_f64, f64::max);
    let axes = Axes {
        x_lo: result.spec.lo,
        x_hi: result.spec.hi,
        y_lo: 0.0,
        y_hi: if y_max > 0.0 { y_max * 1.08 } else { 1.0 },
    };

    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    s.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    s.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">{}</text>\n",
        WIDTH / 2.0,
        title
    ));

    // Axes.
    let x0 = MARGIN_L;
    let x1 = WIDTH - MARGIN_R;
    let y0 = HEIGHT - MARGIN_B;
    let y1 = MARGIN_T;
    s.push_str(&format!(
        "  <line x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x1:.2}\" y2=\"{y0:.2}\" stroke=\"#333\"/>\n"
    ));
    s.push_str(&format!(
        "  <line x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x0:.2}\" y2=\"{y1:.2}\" stroke=\"#333\"/>\n"
    ));

    // Ticks and labels.
    for i in 0..=5 {
        let xv = axes.x_lo + (axes.x_hi - axes.x_lo) * i as f64 / 5.0;
        let xp = axes.x(xv);
        s.push_str(&format!(
            "  <line x1=\"{xp:.2}\" y1=\"{y0:.2}\" x2=\"{xp:.2}\" y2=\"{:.2}\" stroke=\"#333\"/>\n",
            y0 + 5.0
        ));
        s.push_str(&format!(
            "  <text x=\"{xp:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{xv:.2}</text>\n",
            y0 + 18.0
        ));
        let yv = axes.y_lo + (axes.y_hi - axes.y_lo) * i as f64 / 5.0;
        let yp = axes.y(yv);
        s.push_str(&format!(
            "  <line x1=\"{:.2}\" y1=\"{yp:.2}\" x2=\"{x0:.2}\" y2=\"{yp:.2}\" stroke=\"#333\"/>\n",
            x0 - 5.0
        ));
        s.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{yv:.2}</text>\n",
            x0 - 8.0,
            yp + 4.0
        ));
    }
    s.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">{}</text>\n",
        (x0 + x1) / 2.0,
        HEIGHT - 12.0,
        x_label
    ));
    s.push_str(&format!(
        "  <text x=\"18\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.2})\">{}</text>\n",
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0,
        y_label
    ));

    // Curves.
    let baseline: Vec<(f64, f64)> = result.rows.iter().map(|r| (r.parameter, r.baseline)).collect();
    let multimodal: Vec<(f64, f64)> = result.rows.iter().map(|r| (r.parameter, r.multimodal)).collect();
    s.push_str(&polyline(&baseline, &axes, BASELINE_COLOR, false));
    s.push_str(&polyline(&multimodal, &axes, MULTIMODAL_COLOR, false));

    // Crossover marker.
    if let Some(c) = result.crossover {
        let xp = axes.x(c.value);
        s.push_str(&format!(
            "  <line x1=\"{xp:.2}\" y1=\"{y0:.2}\" x2=\"{xp:.2}\" y2=\"{y1:.2}\" stroke=\"#b03030\" stroke-dasharray=\"4,4\"/>\n"
        ));
        // Mark the intersection on the baseline curve by interpolation.
        if let Some(w) = result.rows.windows(2).find(|w| w[0].parameter <= c.value && c.value <= w[1].parameter) {
            let t = (c.value - w[0].parameter) / (w[1].parameter - w[0].parameter);
            let yv = w[0].baseline + t * (w[1].baseline - w[0].baseline);
            s.push_str(&format!(
                "  <circle cx=\"{xp:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"#b03030\"/>\n",
                axes.y(yv)
            ));
        }
        s.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#b03030\">{} = {:.3}</text>\n",
            xp + 6.0,
            y1 + 14.0,
            result.spec.parameter.name(),
            c.value
        ));
    }

    // Legend.
    let lx = WIDTH - MARGIN_R - 170.0;
    let ly = MARGIN_T + 10.0;
    s.push_str(&format!(
        "  <line x1=\"{lx:.2}\" y1=\"{ly:.2}\" x2=\"{:.2}\" y2=\"{ly:.2}\" stroke=\"{BASELINE_COLOR}\" stroke-width=\"2\"/>\n",
        lx + 26.0
    ));
    s.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\">baseline</text>\n",
        lx + 32.0,
        ly + 4.0
    ));
    s.push_str(&format!(
        "  <line x1=\"{lx:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{MULTIMODAL_COLOR}\" stroke-width=\"2\"/>\n",
        ly + 18.0,
        lx + 26.0,
        ly + 18.0
    ));
    s.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
        lx + 32.0,
        ly + 22.0,
        result.spec.topology
    ));

    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use hydromodal_core::{sweep, ComponentRegistry, StudyParameters, SweepSpec, Topology};

    #[test]
    fn plot_structure() {
        let result = sweep(
            &SweepSpec::lambda_mass(Topology::TwoSpeed),
            &StudyParameters::default(),
            &ComponentRegistry::default(),
        )
        .unwrap();
        let svg = plot_sweep(&result, "mass vs lambda", "lambda", "mass [kg/DOF]");
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<polyline").count(), 2);
        // Crossover marker present for the two-speed mass sweep.
        assert!(svg.contains("stroke-dasharray=\"4,4\""));
        assert!(svg.contains("<circle"));
        // Deterministic output.
        let again = plot_sweep(&result, "mass vs lambda", "lambda", "mass [kg/DOF]");
        assert_eq!(svg, again);
    }

    #[test]
    fn plot_without_crossover_has_no_marker() {
        let result = sweep(
            &SweepSpec::lambda_mass(Topology::AccumulatorBoost),
            &StudyParameters::default(),
            &ComponentRegistry::default(),
        )
        .unwrap();
        let svg = plot_sweep(&result, "mass vs lambda", "lambda", "mass [kg/DOF]");
        assert!(!svg.contains("<circle"));
    }
}
