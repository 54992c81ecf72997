//! CSV tables and a minimal SVG heat map for sweep results.
//!
//! Floats are written in Rust's shortest round-trip form, so identical inputs
//! give byte-identical files. Missing values are empty fields.

use std::fmt::Write as _;
use std::io::Write;

use crate::bounds::{ContourGrid, EnhancementRow, LifetimeRow, Sizing};
use crate::spectrum::SpectralModel;
use crate::Result;

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn write_spectrum_csv<W: Write>(model: &SpectralModel, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["j", "eigenvalue", "multiplicity", "cumulative_dimension"])?;
    let mut total = num_bigint::BigUint::from(0u32);
    for j in 0..model.n_levels() {
        let m = model.multiplicity(j)?;
        total += &m;
        w.write_record([
            j.to_string(),
            model.eigenvalue(j)?.to_string(),
            m.to_string(),
            total.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_lifetime_csv<W: Write>(rows: &[LifetimeRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["a", "J", "best_t", "n", "tau", "tau0", "enhancement", "feasible"])?;
    for r in rows {
        w.write_record([
            r.a.to_string(),
            r.exchange.to_string(),
            opt(r.best_t),
            opt(r.n),
            opt(r.tau),
            r.tau0.to_string(),
            opt(r.enhancement),
            r.feasible().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_enhancement_csv<W: Write>(rows: &[EnhancementRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "n", "tau", "tau0", "enhancement", "status"])?;
    for r in rows {
        w.write_record([
            r.t.to_string(),
            r.n.to_string(),
            opt(r.tau),
            r.tau0.to_string(),
            opt(r.enhancement()),
            r.status.label(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// One row per cell: `tau, t, n, neg_log10_eps, status`, ordered by `tau` then `t`.
pub fn write_contour_csv<W: Write>(grid: &ContourGrid, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["tau", "t", "n", "neg_log10_eps", "status"])?;
    for (i, tau) in grid.taus.iter().enumerate() {
        for (k, t) in grid.ts.iter().enumerate() {
            w.write_record([
                tau.to_string(),
                t.to_string(),
                grid.sizing.qubits(*t).to_string(),
                opt(grid.cells[i][k]),
                grid.status[i][k].label(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

const CELL: f64 = 16.0;
const MARGIN_LEFT: f64 = 60.0;
const MARGIN_TOP: f64 = 30.0;
const LEGEND_WIDTH: f64 = 90.0;
const AXIS_SPACE: f64 = 40.0;

/// Blue (low) to yellow (high) ramp.
fn ramp(x: f64) -> String {
    let x = x.clamp(0.0, 1.0);
    let stops = [(68.0, 1.0, 84.0), (59.0, 82.0, 139.0), (33.0, 145.0, 140.0), (94.0, 201.0, 98.0), (253.0, 231.0, 37.0)];
    let pos = x * (stops.len() - 1) as f64;
    let i = (pos.floor() as usize).min(stops.len() - 2);
    let f = pos - i as f64;
    let mix = |a: f64, b: f64| (a + (b - a) * f).round() as u8;
    let (a, b) = (stops[i], stops[i + 1]);
    format!("#{:02x}{:02x}{:02x}", mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2))
}

/// Rectilinear heat map of `-log10(eps)`: `t` across, `tau` upward, invalid cells blank.
pub fn contour_svg(grid: &ContourGrid) -> String {
    let cols = grid.ts.len();
    let rows = grid.taus.len();
    let width = MARGIN_LEFT + CELL * cols as f64 + LEGEND_WIDTH;
    let height = MARGIN_TOP + CELL * rows as f64 + AXIS_SPACE;
    let values: Vec<f64> = grid.cells.iter().flatten().flatten().copied().collect();
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = if hi > lo { hi - lo } else { 1.0 };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="sans-serif" font-size="10">"#
    );
    let sizing = match grid.sizing {
        Sizing::Family => "n = (2t+1)^2".to_string(),
        Sizing::Fixed(n) => format!("n = {n}"),
    };
    let _ = writeln!(
        s,
        r#"<text x="{MARGIN_LEFT}" y="15">-log10(eps), J = {}, a = {}, {sizing}</text>"#,
        grid.exchange, grid.a
    );
    for (i, tau) in grid.taus.iter().enumerate() {
        let y = MARGIN_TOP + CELL * (rows - 1 - i) as f64;
        for k in 0..cols {
            if let Some(v) = grid.cells[i][k] {
                let x = MARGIN_LEFT + CELL * k as f64;
                let _ = writeln!(
                    s,
                    r#"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{}"/>"#,
                    ramp((v - lo) / span)
                );
            }
        }
        if i == 0 || i + 1 == rows || i % 5 == 0 {
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}" text-anchor="end">{tau}</text>"#,
                MARGIN_LEFT - 4.0,
                y + CELL * 0.7
            );
        }
    }
    let axis_y = MARGIN_TOP + CELL * rows as f64;
    for (k, t) in grid.ts.iter().enumerate() {
        if k == 0 || k + 1 == cols || k % 5 == 0 {
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}" text-anchor="middle">{t}</text>"#,
                MARGIN_LEFT + CELL * (k as f64 + 0.5),
                axis_y + 12.0
            );
        }
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">t (correctable errors)</text>"#,
        MARGIN_LEFT + CELL * cols as f64 / 2.0,
        axis_y + 28.0
    );
    let _ = writeln!(
        s,
        r#"<text x="12" y="{}" transform="rotate(-90 12 {})" text-anchor="middle">tau (ns)</text>"#,
        MARGIN_TOP + CELL * rows as f64 / 2.0,
        MARGIN_TOP + CELL * rows as f64 / 2.0
    );

    let lx = MARGIN_LEFT + CELL * cols as f64 + 20.0;
    let steps = 10;
    let bar = CELL * rows as f64 / steps as f64;
    for k in 0..steps {
        let frac = (steps - 1 - k) as f64 / (steps - 1) as f64;
        let _ = writeln!(
            s,
            r#"<rect x="{lx}" y="{}" width="14" height="{bar}" fill="{}"/>"#,
            MARGIN_TOP + bar * k as f64,
            ramp(frac)
        );
    }
    if values.is_empty() {
        let _ = writeln!(s, r#"<text x="{}" y="{}">no valid cells</text>"#, lx + 18.0, MARGIN_TOP + 8.0);
    } else {
        let _ = writeln!(s, r#"<text x="{}" y="{}">{:.2}</text>"#, lx + 18.0, MARGIN_TOP + 8.0, hi);
        let _ = writeln!(s, r#"<text x="{}" y="{}">{:.2}</text>"#, lx + 18.0, axis_y, lo);
    }
    s.push_str("</svg>\n");
    s
}
