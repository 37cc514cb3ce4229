//! Gantt chart rendering, one lane per machine.

use std::fmt::Write as _;

use thiserror::Error;

use super::Schedule;
use crate::instance::{format_time, Time};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("cannot render an empty schedule")]
pub struct EmptySchedule;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GanttFormat {
    #[default]
    Svg,
    Ascii,
}

const LANE_HEIGHT: f64 = 28.0;
const LANE_GAP: f64 = 6.0;
const LEFT: f64 = 48.0;
const TOP: f64 = 12.0;
const CHART_WIDTH: f64 = 960.0;
const AXIS_HEIGHT: f64 = 36.0;
const ASCII_WIDTH: u64 = 80;
const GLYPHS: &[u8] = b"0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";

pub fn render_gantt(sched: &Schedule, format: GanttFormat) -> Result<Vec<u8>, EmptySchedule> {
    render_gantt_scaled(sched, format, 1)
}

/// Like [`render_gantt`], with axis labels in display units (`time / scale`).
pub fn render_gantt_scaled(sched: &Schedule, format: GanttFormat, scale: u32) -> Result<Vec<u8>, EmptySchedule> {
    if sched.entries.is_empty() {
        return Err(EmptySchedule);
    }
    let text = match format {
        GanttFormat::Svg => svg(sched, scale.max(1)),
        GanttFormat::Ascii => ascii(sched),
    };
    Ok(text.into_bytes())
}

fn lanes(sched: &Schedule) -> usize {
    sched.entries.iter().map(|e| e.machine).max().map_or(0, |m| m + 1)
}

/// Golden-angle hue spacing keeps neighbouring job colours apart.
fn job_color(job: usize) -> String {
    let hue = (job as f64 * 137.508) % 360.0;
    format!("hsl({hue:.1},65%,62%)")
}

/// Tick spacing of 1, 2 or 5 times a power of ten giving at most ~10 ticks.
fn tick_step(span: Time) -> Time {
    let raw = (span as f64 / 10.0).max(1.0);
    let mut base: Time = 1;
    while (base * 10) as f64 <= raw {
        base *= 10;
    }
    [1, 2, 5, 10]
        .into_iter()
        .map(|f| f * base)
        .find(|&s| s as f64 >= raw)
        .unwrap_or(base * 10)
}

fn svg(sched: &Schedule, scale: u32) -> String {
    let lanes = lanes(sched);
    let span = sched.makespan.max(1);
    let x = |t: Time| LEFT + CHART_WIDTH * t as f64 / span as f64;
    let lanes_height = lanes as f64 * (LANE_HEIGHT + LANE_GAP);
    let width = LEFT + CHART_WIDTH + 24.0;
    let height = TOP + lanes_height + AXIS_HEIGHT;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{width:.0}" height="{height:.0}" fill="white"/>"#);

    for m in 0..lanes {
        let y = TOP + m as f64 * (LANE_HEIGHT + LANE_GAP);
        let _ = writeln!(
            out,
            r##"<g class="lane"><rect x="{LEFT:.0}" y="{y:.1}" width="{CHART_WIDTH:.0}" height="{LANE_HEIGHT:.0}" fill="#f3f3f3"/><text x="{:.0}" y="{:.1}" text-anchor="end">M{m}</text></g>"##,
            LEFT - 6.0,
            y + LANE_HEIGHT / 2.0 + 4.0
        );
    }

    let mut ordered: Vec<_> = sched.entries.iter().collect();
    ordered.sort_by_key(|e| (e.machine, e.start, e.job, e.op));
    for e in ordered {
        let y = TOP + e.machine as f64 * (LANE_HEIGHT + LANE_GAP);
        let x0 = x(e.start);
        let w = x(e.end) - x0;
        let _ = write!(
            out,
            r##"<rect class="op" x="{x0:.2}" y="{y:.1}" width="{w:.2}" height="{LANE_HEIGHT:.0}" fill="{}" stroke="#333" stroke-width="0.5"><title>J{} op {}: {}-{}</title></rect>"##,
            job_color(e.job),
            e.job,
            e.op,
            format_time(e.start, scale),
            format_time(e.end, scale)
        );
        if w >= 16.0 {
            let _ = write!(
                out,
                r#"<text x="{:.2}" y="{:.1}" text-anchor="middle">{}</text>"#,
                x0 + w / 2.0,
                y + LANE_HEIGHT / 2.0 + 4.0,
                e.job
            );
        }
        out.push('\n');
    }

    let axis_y = TOP + lanes_height;
    let _ = writeln!(
        out,
        r##"<line x1="{LEFT:.0}" y1="{axis_y:.1}" x2="{:.0}" y2="{axis_y:.1}" stroke="#000"/>"##,
        LEFT + CHART_WIDTH
    );
    let step = tick_step(span);
    let mut t = 0;
    while t <= span {
        let tx = x(t);
        let _ = writeln!(
            out,
            r##"<line x1="{tx:.2}" y1="{axis_y:.1}" x2="{tx:.2}" y2="{:.1}" stroke="#000"/><text x="{tx:.2}" y="{:.1}" text-anchor="middle">{}</text>"##,
            axis_y + 4.0,
            axis_y + 16.0,
            format_time(t, scale)
        );
        t += step;
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.0}" y="{:.1}" text-anchor="end">time</text>"#,
        LEFT + CHART_WIDTH,
        axis_y + 30.0
    );
    out.push_str("</svg>\n");
    out
}

/// One line per machine; one column per time unit when the makespan fits in
/// 80 columns, otherwise columns are scaled down proportionally.
fn ascii(sched: &Schedule) -> String {
    let lanes = lanes(sched);
    let span = sched.makespan.max(1);
    let width = span.min(ASCII_WIDTH);
    let col = |t: Time| (t * width / span) as usize;
    let label_width = format!("M{}", lanes.saturating_sub(1)).len();

    let mut rows = vec![vec![b'.'; width as usize]; lanes];
    let mut ordered: Vec<_> = sched.entries.iter().collect();
    ordered.sort_by_key(|e| (e.machine, e.start, e.job, e.op));
    for e in ordered {
        if e.end <= e.start {
            continue;
        }
        let from = col(e.start).min(width as usize - 1);
        let to = col(e.end).max(from + 1).min(width as usize);
        let glyph = GLYPHS[e.job % GLYPHS.len()];
        rows[e.machine][from..to].fill(glyph);
    }

    let mut out = String::new();
    for (m, row) in rows.iter().enumerate() {
        let label = format!("M{m}");
        let _ = writeln!(out, "{label:<label_width$} |{}|", String::from_utf8_lossy(row));
    }
    out
}
