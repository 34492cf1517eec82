//! Parameter sweeps over the two-path family: 1D bifurcation scans, 2D
//! period diagrams, Lyapunov heatmaps, and per-demand metric curves, with
//! deterministic CSV and PPM emission.
//!
//! Cells are pure functions of (a, b, settings), evaluated in parallel and
//! collected in grid order, so identical settings yield byte-identical
//! output files at any worker count. Grid CSVs stream one complete b-row
//! per write; an interrupted sweep resumes at the first incomplete row
//! after validating that the partial file belongs to the same grid.
//!
//! Classification burns the transient adaptively: every 256 steps the orbit
//! is probed for closure at some period up to max_period, and the burn stops
//! early once settled, which leaves periodic cells (the bulk of a diagram)
//! far below the worst-case budget without changing any result.

use rayon::prelude::*;
use std::fs;
use std::io::{Seek, SeekFrom, Write as _};
use std::path::Path;

use crate::error::{Error, Result};
use crate::linear::{critical_structure, rate_unit, GameEconomics, LinearTwoParams};
use crate::map::ScalarMap;
use crate::metrics::{compute_metrics, MetricsReport};
use crate::num::{linspace, Kahan};
use crate::orbit::{classify_period, lyapunov, scalar_orbit, DetectOptions};

/// Default Lyapunov averaging horizon for diagram cells.
pub const DEFAULT_LYAPUNOV_T: usize = 2000;

/// Where each sweep cell starts its orbit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitRule {
    /// Left critical point x_l; falls back to 0.25 when the map is injective
    /// (a <= 4) and has no critical pair.
    LeftCritical,
    /// Right critical point x_r; fallback 0.75.
    RightCritical,
    /// A fixed interior state.
    Fixed(f64),
}

impl InitRule {
    pub fn start(&self, p: &LinearTwoParams) -> f64 {
        match self {
            InitRule::LeftCritical => critical_structure(p).map_or(0.25, |c| c.x_l),
            InitRule::RightCritical => critical_structure(p).map_or(0.75, |c| c.x_r),
            InitRule::Fixed(v) => *v,
        }
    }
}

/// A rectangular (a, b) grid with per-cell classification settings.
/// `b_steps == 1` degenerates to a fixed-b row. Periods are tracked up to
/// `max_period <= 8`, matching the period palette.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepGrid {
    pub a_min: f64,
    pub a_max: f64,
    pub a_steps: usize,
    pub b_min: f64,
    pub b_max: f64,
    pub b_steps: usize,
    pub transient: usize,
    pub tol: f64,
    pub max_period: usize,
    pub init_rule: InitRule,
}

impl SweepGrid {
    /// Grid over the given rectangle with default cell settings: transient
    /// cap 20000, tolerance 1e-10, periods to 8, start at the left critical
    /// point.
    pub fn new(
        a_min: f64,
        a_max: f64,
        a_steps: usize,
        b_min: f64,
        b_max: f64,
        b_steps: usize,
    ) -> Result<Self> {
        let grid = Self {
            a_min,
            a_max,
            a_steps,
            b_min,
            b_max,
            b_steps,
            transient: 20_000,
            tol: 1e-10,
            max_period: 8,
            init_rule: InitRule::LeftCritical,
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if self.a_steps < 1 || self.b_steps < 1 {
            return Err(Error::Domain("grid needs at least one step per axis".into()));
        }
        if !(self.a_min > 0.0 && self.a_min <= self.a_max && self.a_max.is_finite()) {
            return Err(Error::Domain(format!(
                "demand range must be ordered and positive, got [{}, {}]",
                self.a_min, self.a_max
            )));
        }
        if !(self.b_min > 0.0 && self.b_min <= self.b_max && self.b_max < 1.0) {
            return Err(Error::Domain(format!(
                "split range must be ordered inside (0,1), got [{}, {}]",
                self.b_min, self.b_max
            )));
        }
        if !(self.tol > 0.0) {
            return Err(Error::Domain(format!("tolerance must be positive, got {}", self.tol)));
        }
        if !(1..=8).contains(&self.max_period) {
            return Err(Error::Domain(format!(
                "tracked periods must lie in 1..=8 to stay inside the palette, got {}",
                self.max_period
            )));
        }
        if let InitRule::Fixed(v) = self.init_rule {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::Domain(format!(
                    "fixed start must lie strictly inside (0,1), got {v}"
                )));
            }
        }
        Ok(())
    }

    pub fn a_values(&self) -> Vec<f64> {
        linspace(self.a_min, self.a_max, self.a_steps)
    }

    pub fn b_values(&self) -> Vec<f64> {
        linspace(self.b_min, self.b_max, self.b_steps)
    }

    fn detect_options(&self) -> DetectOptions {
        DetectOptions {
            max_period: self.max_period,
            tol: self.tol,
            transient: 0,
            superstable_tol: 1e-6,
        }
    }
}

/// One classified grid cell. `period_code` 1..=8 is the detected minimal
/// period; 0 means no period up to max_period closed (longer or aperiodic).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepCell {
    pub a: f64,
    pub b: f64,
    pub period_code: u8,
    pub lyapunov: f64,
}

/// Classify one cell: adaptive burn, period detection, then the Lyapunov
/// average over `lyap_t` steps on the settled orbit.
fn classify_cell(grid: &SweepGrid, a: f64, b: f64, lyap_t: usize) -> Result<SweepCell> {
    let p = LinearTwoParams::new(a, b)?;
    let opts = grid.detect_options();
    let mut x = grid.init_rule.start(&p);
    let mut burned = 0usize;
    // A probe can close at a longer lag than the true period while still
    // drifting: an alternating spiral with multiplier near -1 closes at lag
    // 2 a factor |1 + multiplier| sooner than at lag 1. The burn therefore
    // stops early only once some lag closes far below tol; by then every
    // shorter lag the final classification compares has also settled.
    let deep = grid.tol * 1e-4;
    while burned < grid.transient {
        let chunk = 256.min(grid.transient - burned);
        for _ in 0..chunk {
            x = p.step_interior(x).0;
        }
        burned += chunk;
        if burned >= grid.transient {
            break;
        }
        let probe = classify_period(&p, x, &opts)?;
        if probe.period.is_some() && probe.residual <= deep {
            break;
        }
    }
    let class = classify_period(&p, x, &opts)?;
    let period_code = class.period.map_or(0, |n| n as u8);
    let exponent = lyapunov(&p, x, lyap_t, 0)?;
    Ok(SweepCell { a, b, period_code, lyapunov: exponent })
}

/// All cells of one b-row, in ascending a order, evaluated in parallel.
fn sweep_row(grid: &SweepGrid, b: f64, a_values: &[f64], lyap_t: usize) -> Result<Vec<SweepCell>> {
    a_values.par_iter().map(|&a| classify_cell(grid, a, b, lyap_t)).collect()
}

/// Period diagram: row-major cells, b ascending then a ascending. The
/// Lyapunov column is filled at the default horizon so the period and
/// exponent views of the same grid stay consistent cell by cell.
pub fn period_diagram(grid: &SweepGrid) -> Result<Vec<SweepCell>> {
    lyapunov_heatmap(grid, DEFAULT_LYAPUNOV_T)
}

/// Lyapunov heatmap over the grid with averaging horizon `t`; cells carry
/// the period code as well.
pub fn lyapunov_heatmap(grid: &SweepGrid, t: usize) -> Result<Vec<SweepCell>> {
    grid.validate()?;
    if t < 1 {
        return Err(Error::Domain("Lyapunov horizon must be at least 1".into()));
    }
    let a_values = grid.a_values();
    let mut cells = Vec::with_capacity(grid.a_steps * grid.b_steps);
    for &b in &grid.b_values() {
        cells.extend(sweep_row(grid, b, &a_values, t)?);
    }
    Ok(cells)
}

/// One emitted bifurcation sample: post-transient state and the running
/// Cesàro mean up to and including it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BifurcationRow {
    pub a: f64,
    pub x: f64,
    pub mean_running: f64,
}

/// Post-transient samples with running means along an a-scan at fixed b.
pub fn bifurcation_scan(
    b: f64,
    a_min: f64,
    a_max: f64,
    a_steps: usize,
    init_rule: InitRule,
    transient: usize,
    samples: usize,
) -> Result<Vec<BifurcationRow>> {
    if !(b > 0.0 && b < 1.0) {
        return Err(Error::Domain(format!("split must lie in (0,1), got {b}")));
    }
    if samples < 1 {
        return Err(Error::Domain("need at least one sample per demand value".into()));
    }
    if !(a_min > 0.0 && a_min <= a_max && a_max.is_finite()) || a_steps < 1 {
        return Err(Error::Domain(format!(
            "demand range must be ordered and positive, got [{a_min}, {a_max}] x {a_steps}"
        )));
    }
    let per_a: Vec<Vec<BifurcationRow>> = linspace(a_min, a_max, a_steps)
        .par_iter()
        .map(|&a| -> Result<Vec<BifurcationRow>> {
            let p = LinearTwoParams::new(a, b)?;
            let orbit = scalar_orbit(&p, init_rule.start(&p), transient, samples)?;
            let mut acc = Kahan::default();
            Ok(orbit
                .samples
                .iter()
                .enumerate()
                .map(|(i, &x)| {
                    acc.add(x);
                    BifurcationRow { a, x, mean_running: acc.value() / (i + 1) as f64 }
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(per_a.into_iter().flatten().collect())
}

/// One point of a metric-vs-demand curve; the flattened MetricsReport.
#[derive(Debug, Clone, Copy)]
pub struct MetricsRow {
    pub a: f64,
    pub mean: f64,
    pub variance: f64,
    pub regret_avg: f64,
    pub regret_bound: f64,
    pub norm_sc: f64,
}

/// Observables along an a-scan at fixed b. Demand is tied to the drive
/// (N = a in units where alpha + beta = 1, split beta = b), the convention
/// under which the analytic bifurcation slopes apply to the regret column.
pub fn metrics_curve(
    b: f64,
    a_min: f64,
    a_max: f64,
    a_steps: usize,
    init_rule: InitRule,
    transient: usize,
    samples: usize,
    epsilon: f64,
) -> Result<Vec<MetricsRow>> {
    if !(b > 0.0 && b < 1.0) {
        return Err(Error::Domain(format!("split must lie in (0,1), got {b}")));
    }
    if !(a_min > 0.0 && a_min <= a_max && a_max.is_finite()) || a_steps < 1 {
        return Err(Error::Domain(format!(
            "demand range must be ordered and positive, got [{a_min}, {a_max}] x {a_steps}"
        )));
    }
    linspace(a_min, a_max, a_steps)
        .par_iter()
        .map(|&a| -> Result<MetricsRow> {
            let p = LinearTwoParams::new(a, b)?;
            let econ = GameEconomics::new(1.0 - b, b, a / rate_unit(epsilon), epsilon)?;
            let orbit = scalar_orbit(&p, init_rule.start(&p), transient, samples)?;
            let m: MetricsReport = compute_metrics(&orbit.samples, &p, &econ);
            Ok(MetricsRow {
                a,
                mean: m.cesaro_mean,
                variance: m.variance,
                regret_avg: m.regret_avg,
                regret_bound: m.regret_bound,
                norm_sc: m.norm_social_cost,
            })
        })
        .collect()
}

/// 17-significant-digit decimal, the shortest width that round-trips every
/// f64 bit pattern; infinities and NaN serialize as "inf"/"-inf"/"NaN".
fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

const GRID_HEADER: &str = "a,b,period_code,lyapunov";
const BIFURCATION_HEADER: &str = "a,x,mean_running";
const METRICS_HEADER: &str = "a,mean,variance,regret_avg,regret_bound,norm_sc";

fn grid_line(c: &SweepCell) -> String {
    format!("{},{},{},{}\n", fmt_f64(c.a), fmt_f64(c.b), c.period_code, fmt_f64(c.lyapunov))
}

/// CSV for bifurcation rows: header `a,x,mean_running`.
pub fn emit_bifurcation_csv(rows: &[BifurcationRow], path: &Path) -> Result<()> {
    let mut out = String::with_capacity(rows.len() * 72 + 24);
    out.push_str(BIFURCATION_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&fmt_f64(r.a));
        out.push(',');
        out.push_str(&fmt_f64(r.x));
        out.push(',');
        out.push_str(&fmt_f64(r.mean_running));
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

/// CSV for metric curves: header
/// `a,mean,variance,regret_avg,regret_bound,norm_sc`.
pub fn emit_metrics_csv(rows: &[MetricsRow], path: &Path) -> Result<()> {
    let mut out = String::with_capacity(rows.len() * 140 + 48);
    out.push_str(METRICS_HEADER);
    out.push('\n');
    for r in rows {
        let cols = [r.a, r.mean, r.variance, r.regret_avg, r.regret_bound, r.norm_sc];
        let line: Vec<String> = cols.iter().map(|&v| fmt_f64(v)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

/// CSV for grid cells: header `a,b,period_code,lyapunov`, row-major in the
/// grid's (b ascending, a ascending) order.
pub fn emit_grid_csv(cells: &[SweepCell], path: &Path) -> Result<()> {
    let mut out = String::with_capacity(cells.len() * 96 + 32);
    out.push_str(GRID_HEADER);
    out.push('\n');
    for c in cells {
        out.push_str(&grid_line(c));
    }
    fs::write(path, out)?;
    Ok(())
}

fn parse_grid_line(line: &str) -> Result<SweepCell> {
    let bad = || Error::Domain(format!("malformed grid CSV record: {line:?}"));
    let mut parts = line.split(',');
    let mut next = || parts.next().ok_or_else(bad);
    let a: f64 = next()?.parse().map_err(|_| bad())?;
    let b: f64 = next()?.parse().map_err(|_| bad())?;
    let period_code: u8 = next()?.parse().map_err(|_| bad())?;
    let lyapunov: f64 = next()?.parse().map_err(|_| bad())?;
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok(SweepCell { a, b, period_code, lyapunov })
}

/// Parse a grid CSV back into cells; exact inverse of [`emit_grid_csv`].
pub fn read_grid_csv(path: &Path) -> Result<Vec<SweepCell>> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == GRID_HEADER => {}
        other => {
            return Err(Error::Domain(format!(
                "not a grid CSV: expected header {GRID_HEADER:?}, found {other:?}"
            )))
        }
    }
    lines.map(parse_grid_line).collect()
}

/// Compute a grid sweep streaming one complete b-row per write, so an
/// interrupted run loses at most the row in flight. With `resume`, an
/// existing file is validated against the grid coordinates, truncated to
/// its last complete row, and continued; the final bytes are identical to
/// an uninterrupted run.
pub fn sweep_grid_to_csv(
    grid: &SweepGrid,
    lyap_t: usize,
    path: &Path,
    resume: bool,
) -> Result<()> {
    grid.validate()?;
    if lyap_t < 1 {
        return Err(Error::Domain("Lyapunov horizon must be at least 1".into()));
    }
    let a_values = grid.a_values();
    let b_values = grid.b_values();
    let mut start_row = 0usize;
    let mut file = if resume && path.exists() {
        let text = fs::read_to_string(path)?;
        let (rows_done, keep_bytes) = validate_resumable(&text, &a_values, &b_values)?;
        let f = fs::OpenOptions::new().read(true).write(true).open(path)?;
        f.set_len(keep_bytes as u64)?;
        let mut f = f;
        f.seek(SeekFrom::End(0))?;
        start_row = rows_done;
        f
    } else {
        let mut f = fs::File::create(path)?;
        f.write_all(GRID_HEADER.as_bytes())?;
        f.write_all(b"\n")?;
        f
    };
    for &b in &b_values[start_row..] {
        let row = sweep_row(grid, b, &a_values, lyap_t)?;
        let mut chunk = String::with_capacity(row.len() * 96);
        for c in &row {
            chunk.push_str(&grid_line(c));
        }
        file.write_all(chunk.as_bytes())?;
        file.flush()?;
    }
    Ok(())
}

/// Check that a partial grid CSV is a prefix of this grid's output; returns
/// (complete b-rows, bytes to keep).
fn validate_resumable(text: &str, a_values: &[f64], b_values: &[f64]) -> Result<(usize, usize)> {
    let mut pieces = text.split_inclusive('\n');
    let header = pieces.next().unwrap_or("");
    if header.trim_end_matches('\n') != GRID_HEADER {
        return Err(Error::Domain(
            "existing output is not a grid CSV; refusing to resume over it".into(),
        ));
    }
    let mut keep = header.len();
    let mut complete = 0usize;
    let mut row_bytes = 0usize;
    let mut idx = 0usize;
    for piece in pieces {
        if !piece.ends_with('\n') {
            break;
        }
        let ib = idx / a_values.len();
        let ia = idx % a_values.len();
        if ib >= b_values.len() {
            return Err(Error::Domain(
                "existing output already has more rows than this grid; refusing to resume".into(),
            ));
        }
        let cell = parse_grid_line(piece.trim_end())?;
        if cell.a.to_bits() != a_values[ia].to_bits() || cell.b.to_bits() != b_values[ib].to_bits()
        {
            return Err(Error::Domain(format!(
                "existing output belongs to a different grid: record {idx} is at \
                 (a, b) = ({}, {}), expected ({}, {})",
                cell.a, cell.b, a_values[ia], b_values[ib]
            )));
        }
        row_bytes += piece.len();
        idx += 1;
        if ia == a_values.len() - 1 {
            complete = ib + 1;
            keep += row_bytes;
            row_bytes = 0;
        }
    }
    Ok((complete, keep))
}

/// Period palette: 1 yellow, 2 red, 3 blue, 4 green, 5 brown, 6 cyan,
/// 7 dark gray, 8 magenta, aperiodic/deeper white.
pub fn period_palette(cell: &SweepCell) -> [u8; 3] {
    match cell.period_code {
        1 => [255, 255, 0],
        2 => [255, 0, 0],
        3 => [0, 0, 255],
        4 => [0, 255, 0],
        5 => [150, 75, 0],
        6 => [0, 255, 255],
        7 => [90, 90, 90],
        8 => [255, 0, 255],
        _ => [255, 255, 255],
    }
}

/// Grayscale for exponents: white at or below -1.5 (superstable plunges),
/// black at or above 0 (chaos), linear in between.
pub fn lyapunov_shade(cell: &SweepCell) -> [u8; 3] {
    let f = (cell.lyapunov / -1.5).clamp(0.0, 1.0);
    let v = (255.0 * f).round() as u8;
    [v, v, v]
}

/// Binary P6 image of a row-major cell matrix; the top pixel row is the
/// highest b, matching plot orientation.
pub fn emit_ppm(
    cells: &[SweepCell],
    grid: &SweepGrid,
    palette: fn(&SweepCell) -> [u8; 3],
    path: &Path,
) -> Result<()> {
    let (w, h) = (grid.a_steps, grid.b_steps);
    if cells.len() != w * h {
        return Err(Error::Domain(format!(
            "cell matrix has {} entries, grid wants {w} x {h}",
            cells.len()
        )));
    }
    let mut bytes = Vec::with_capacity(32 + 3 * w * h);
    bytes.extend_from_slice(format!("P6\n{w} {h}\n255\n").as_bytes());
    for ib in (0..h).rev() {
        for cell in &cells[ib * w..(ib + 1) * w] {
            bytes.extend_from_slice(&palette(cell));
        }
    }
    fs::write(path, bytes)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::detect_period;

    #[test]
    fn grid_validation_rejects_malformed_settings() {
        assert!(SweepGrid::new(16.0, 2.0, 10, 0.5, 0.5, 1).is_err());
        assert!(SweepGrid::new(2.0, 16.0, 0, 0.5, 0.5, 1).is_err());
        assert!(SweepGrid::new(2.0, 16.0, 10, 0.0, 0.5, 2).is_err());
        assert!(SweepGrid::new(2.0, 16.0, 10, 0.5, 1.0, 2).is_err());
        let mut g = SweepGrid::new(2.0, 16.0, 10, 0.5, 0.5, 1).unwrap();
        g.max_period = 9;
        assert!(g.validate().is_err());
        g.max_period = 8;
        g.init_rule = InitRule::Fixed(1.2);
        assert!(g.validate().is_err());
    }

    #[test]
    fn half_split_row_is_yellow_then_red_across_the_flip() {
        // 200 steps over [2, 16] put no grid point exactly on the threshold.
        let grid = SweepGrid::new(2.0, 16.0, 200, 0.5, 0.5, 1).unwrap();
        let cells = period_diagram(&grid).unwrap();
        assert_eq!(cells.len(), 200);
        for c in &cells {
            let want = if c.a < 8.0 { 1 } else { 2 };
            assert_eq!(c.period_code, want, "period at a = {}", c.a);
            assert!(c.lyapunov <= 0.02, "periodic cell with expanding exponent at a = {}", c.a);
        }
    }

    #[test]
    fn attracting_fixed_point_cell_has_the_closed_form_exponent() {
        let mut grid = SweepGrid::new(6.0, 6.0, 1, 0.5, 0.5, 1).unwrap();
        grid.init_rule = InitRule::Fixed(0.3);
        let cells = period_diagram(&grid).unwrap();
        assert_eq!(cells[0].period_code, 1);
        // Multiplier 1 - ab(1-b) = -1/2 at the fixed point.
        assert!((cells[0].lyapunov - 0.5f64.ln()).abs() < 1e-6);
    }

    #[test]
    fn adaptive_burn_agrees_with_a_full_transient_classification() {
        let grid = SweepGrid::new(5.0, 12.0, 8, 0.45, 0.55, 3).unwrap();
        let cells = period_diagram(&grid).unwrap();
        for c in &cells {
            let p = LinearTwoParams::new(c.a, c.b).unwrap();
            let full = detect_period(&p, grid.init_rule.start(&p), &DetectOptions::default())
                .unwrap();
            assert_eq!(c.period_code, full.period.map_or(0, |n| n as u8), "cell ({}, {})", c.a, c.b);
        }
    }

    #[test]
    fn bifurcation_scan_keeps_the_running_mean_on_the_split() {
        let rows = bifurcation_scan(0.5, 2.0, 16.0, 15, InitRule::LeftCritical, 20_000, 200)
            .unwrap();
        assert_eq!(rows.len(), 15 * 200);
        for chunk in rows.chunks(200) {
            let last = chunk.last().unwrap();
            assert!(
                (last.mean_running - 0.5).abs() < 1e-3,
                "running mean {} at a = {}",
                last.mean_running,
                last.a
            );
        }
        // Above the flip the samples alternate across the split.
        let wide = rows.iter().filter(|r| r.a > 15.9).collect::<Vec<_>>();
        assert!(wide.windows(2).all(|w| (w[0].x - w[1].x).abs() > 0.1));
    }

    #[test]
    fn metrics_curve_respects_bound_identity_and_onset() {
        let rows =
            metrics_curve(0.5, 6.0, 12.0, 7, InitRule::Fixed(0.3), 20_000, 100_000, 0.5).unwrap();
        for r in &rows {
            assert!((r.norm_sc - 1.0 - r.variance / 0.25).abs() < 1e-10);
            assert!(r.regret_avg <= r.regret_bound + 1e-12, "bound broken at a = {}", r.a);
            if r.a < 8.0 {
                assert!(r.regret_avg.abs() < 1e-8 && r.norm_sc < 1.0 + 1e-8, "a = {}", r.a);
            }
            if r.a >= 9.0 {
                assert!(r.norm_sc > 1.01, "a = {}", r.a);
            }
        }
    }

    #[test]
    fn grid_csv_round_trips_every_bit_including_sentinels() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cells.csv");
        let cells = vec![
            SweepCell { a: 8.125, b: 0.5, period_code: 2, lyapunov: -0.672944473242426 },
            SweepCell { a: 30.0, b: 0.101064, period_code: 0, lyapunov: f64::NEG_INFINITY },
            SweepCell { a: 1e-3, b: 1.0 - 1e-12, period_code: 8, lyapunov: 0.4054651081081644 },
        ];
        emit_grid_csv(&cells, &path).unwrap();
        let back = read_grid_csv(&path).unwrap();
        assert_eq!(back.len(), cells.len());
        for (x, y) in cells.iter().zip(&back) {
            assert_eq!(x.a.to_bits(), y.a.to_bits());
            assert_eq!(x.b.to_bits(), y.b.to_bits());
            assert_eq!(x.period_code, y.period_code);
            assert_eq!(x.lyapunov.to_bits(), y.lyapunov.to_bits());
        }
    }

    #[test]
    fn resumed_sweep_recreates_the_uninterrupted_file_byte_for_byte() {
        let dir = tempfile::tempdir().unwrap();
        let grid = SweepGrid::new(5.0, 10.0, 6, 0.4, 0.6, 5).unwrap();
        let full_path = dir.path().join("full.csv");
        sweep_grid_to_csv(&grid, 500, &full_path, false).unwrap();
        let full = fs::read(&full_path).unwrap();

        // Simulate an interrupted run: header, two complete rows, one
        // partial record.
        let text = String::from_utf8(full.clone()).unwrap();
        let lines: Vec<&str> = text.split_inclusive('\n').collect();
        let mut partial: String = lines[..1 + 2 * 6].concat();
        partial.push_str(&lines[1 + 2 * 6][..20]);
        let resume_path = dir.path().join("resume.csv");
        fs::write(&resume_path, &partial).unwrap();
        sweep_grid_to_csv(&grid, 500, &resume_path, true).unwrap();
        assert_eq!(fs::read(&resume_path).unwrap(), full);

        // A different grid must be refused.
        let other = SweepGrid::new(5.0, 11.0, 6, 0.4, 0.6, 5).unwrap();
        assert!(sweep_grid_to_csv(&other, 500, &resume_path, true).is_err());
    }

    #[test]
    fn ppm_uses_the_exact_palette_and_plot_orientation() {
        let dir = tempfile::tempdir().unwrap();
        let grid = SweepGrid::new(1.0, 2.0, 2, 0.3, 0.6, 2).unwrap();
        let cells = vec![
            SweepCell { a: 1.0, b: 0.3, period_code: 1, lyapunov: 0.0 },
            SweepCell { a: 2.0, b: 0.3, period_code: 2, lyapunov: 0.0 },
            SweepCell { a: 1.0, b: 0.6, period_code: 3, lyapunov: 0.0 },
            SweepCell { a: 2.0, b: 0.6, period_code: 0, lyapunov: 0.0 },
        ];
        let path = dir.path().join("grid.ppm");
        emit_ppm(&cells, &grid, period_palette, &path).unwrap();
        let want: Vec<u8> = [
            b"P6\n2 2\n255\n".to_vec(),
            vec![0, 0, 255, 255, 255, 255], // top row: b = 0.6
            vec![255, 255, 0, 255, 0, 0],   // bottom row: b = 0.3
        ]
        .concat();
        assert_eq!(fs::read(&path).unwrap(), want);

        let single = SweepGrid::new(1.0, 1.0, 1, 0.5, 0.5, 1).unwrap();
        let one = vec![SweepCell { a: 1.0, b: 0.5, period_code: 3, lyapunov: 0.0 }];
        let path1 = dir.path().join("one.ppm");
        emit_ppm(&one, &single, period_palette, &path1).unwrap();
        assert_eq!(fs::read(&path1).unwrap(), b"P6\n1 1\n255\n\x00\x00\xff");
    }

    #[test]
    fn lyapunov_shade_maps_the_documented_anchors() {
        let cell = |l: f64| SweepCell { a: 1.0, b: 0.5, period_code: 0, lyapunov: l };
        assert_eq!(lyapunov_shade(&cell(f64::NEG_INFINITY)), [255, 255, 255]);
        assert_eq!(lyapunov_shade(&cell(-1.5)), [255, 255, 255]);
        assert_eq!(lyapunov_shade(&cell(-2.0)), [255, 255, 255]);
        assert_eq!(lyapunov_shade(&cell(0.0)), [0, 0, 0]);
        assert_eq!(lyapunov_shade(&cell(0.7)), [0, 0, 0]);
        assert_eq!(lyapunov_shade(&cell(-0.75)), [128, 128, 128]);
    }

    #[test]
    fn diagrams_are_identical_across_worker_pool_sizes() {
        let grid = SweepGrid::new(4.0, 12.0, 10, 0.45, 0.65, 4).unwrap();
        let pool1 = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let pool4 = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let one = pool1.install(|| period_diagram(&grid)).unwrap();
        let four = pool4.install(|| period_diagram(&grid)).unwrap();
        assert_eq!(one.len(), four.len());
        for (x, y) in one.iter().zip(&four) {
            assert_eq!(x.period_code, y.period_code);
            assert_eq!(x.lyapunov.to_bits(), y.lyapunov.to_bits());
        }
    }
}
