//! Gaussian-kernel gaze density grids and their image rendering.
//!
//! Each gaze point deposits a truncated Gaussian bump onto a dense pixel
//! grid. Cell `(x, y)` accumulates `exp(-((x-px)^2 + (y-py)^2) / (2*bw^2))`
//! over all points, skipping contributions farther than
//! `truncation_radius * bw` (Euclidean, boundary included). Points outside
//! the frame are clamped to the nearest edge pixel before accumulation.

use thiserror::Error;

use crate::pnm;

/// Default kernel bandwidth in pixels.
pub const DEFAULT_BANDWIDTH_PX: f64 = 25.0;
/// Default truncation radius in bandwidths.
pub const DEFAULT_TRUNCATION_RADIUS: f64 = 3.0;

/// Dense row-major accumulation grid.
#[derive(Debug, Clone, PartialEq)]
pub struct HeatmapGrid {
    width_px: usize,
    height_px: usize,
    cells: Vec<f64>,
    bandwidth_px: f64,
    point_count: usize,
}

impl HeatmapGrid {
    /// Wrap precomputed cells; rejects empty dimensions, size mismatches and
    /// negative values.
    pub fn from_cells(
        width_px: usize,
        height_px: usize,
        bandwidth_px: f64,
        point_count: usize,
        cells: Vec<f64>,
    ) -> Result<HeatmapGrid, HeatmapError> {
        if width_px == 0 || height_px == 0 {
            return Err(HeatmapError::EmptyFrame);
        }
        if bandwidth_px <= 0.0 {
            return Err(HeatmapError::NonPositiveBandwidth);
        }
        if cells.len() != width_px * height_px || cells.iter().any(|c| !c.is_finite() || *c < 0.0) {
            return Err(HeatmapError::BadCells);
        }
        Ok(HeatmapGrid {
            width_px,
            height_px,
            cells,
            bandwidth_px,
            point_count,
        })
    }

    pub fn width_px(&self) -> usize {
        self.width_px
    }

    pub fn height_px(&self) -> usize {
        self.height_px
    }

    pub fn bandwidth_px(&self) -> f64 {
        self.bandwidth_px
    }

    pub fn point_count(&self) -> usize {
        self.point_count
    }

    pub fn cells(&self) -> &[f64] {
        &self.cells
    }

    pub fn cell(&self, x: usize, y: usize) -> f64 {
        self.cells[y * self.width_px + x]
    }

    pub fn max_value(&self) -> f64 {
        self.cells.iter().copied().fold(0.0, f64::max)
    }

    pub fn total(&self) -> f64 {
        self.cells.iter().sum()
    }

    /// Coordinates of the maximum cell (first in row-major order on ties).
    pub fn argmax(&self) -> (usize, usize) {
        let mut best = 0;
        for (i, value) in self.cells.iter().enumerate() {
            if *value > self.cells[best] {
                best = i;
            }
        }
        (best % self.width_px, best / self.width_px)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum HeatmapError {
    #[error("frame width and height must be positive")]
    EmptyFrame,
    #[error("bandwidth must be positive")]
    NonPositiveBandwidth,
    #[error("cell buffer does not match the frame, or holds negative values")]
    BadCells,
    #[error("grid is not max-normalized (max cell {max})")]
    UnnormalizedGrid { max: f64 },
}

/// Accumulate gaze points into a density grid.
///
/// The caller excludes points with missing coordinates. `truncation_radius`
/// is in bandwidths; pass a very large value to disable truncation.
pub fn build_heatmap(
    points: &[(f64, f64)],
    width_px: usize,
    height_px: usize,
    bandwidth_px: f64,
    truncation_radius: f64,
) -> Result<HeatmapGrid, HeatmapError> {
    if width_px == 0 || height_px == 0 {
        return Err(HeatmapError::EmptyFrame);
    }
    if bandwidth_px <= 0.0 {
        return Err(HeatmapError::NonPositiveBandwidth);
    }

    let mut cells = vec![0.0f64; width_px * height_px];
    let radius = truncation_radius * bandwidth_px;
    let radius_sq = radius * radius;
    let two_bw_sq = 2.0 * bandwidth_px * bandwidth_px;

    for &(raw_x, raw_y) in points {
        let px = raw_x.clamp(0.0, (width_px - 1) as f64);
        let py = raw_y.clamp(0.0, (height_px - 1) as f64);

        let x_lo = ((px - radius).ceil() as i64).clamp(0, width_px as i64 - 1) as usize;
        let x_hi = ((px + radius).floor() as i64).clamp(0, width_px as i64 - 1) as usize;
        let y_lo = ((py - radius).ceil() as i64).clamp(0, height_px as i64 - 1) as usize;
        let y_hi = ((py + radius).floor() as i64).clamp(0, height_px as i64 - 1) as usize;

        for y in y_lo..=y_hi {
            let dy = y as f64 - py;
            for x in x_lo..=x_hi {
                let dx = x as f64 - px;
                let dist_sq = dx * dx + dy * dy;
                if dist_sq <= radius_sq {
                    cells[y * width_px + x] += (-dist_sq / two_bw_sq).exp();
                }
            }
        }
    }

    Ok(HeatmapGrid {
        width_px,
        height_px,
        cells,
        bandwidth_px,
        point_count: points.len(),
    })
}

/// Normalization applied before rendering or export.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalizeMode {
    /// Divide by the maximum cell; the peak becomes exactly 1.
    Max,
    /// Divide by the total; cells sum to 1.
    Sum,
}

impl NormalizeMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            NormalizeMode::Max => "max",
            NormalizeMode::Sum => "sum",
        }
    }
}

/// Rescale the grid. All-zero grids pass through unchanged.
pub fn normalize_heatmap(mut grid: HeatmapGrid, mode: NormalizeMode) -> HeatmapGrid {
    let divisor = match mode {
        NormalizeMode::Max => grid.max_value(),
        NormalizeMode::Sum => grid.total(),
    };
    if divisor > 0.0 {
        for cell in &mut grid.cells {
            *cell /= divisor;
        }
    }
    grid
}

/// Output palette for [`render_colormap`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Palette {
    /// Binary PGM, byte = round(cell * 255).
    Grayscale,
    /// Binary PPM through the 5-stop thermal ramp.
    Thermal,
}

impl Palette {
    pub fn file_extension(&self) -> &'static str {
        match self {
            Palette::Grayscale => "pgm",
            Palette::Thermal => "ppm",
        }
    }
}

/// Thermal ramp stops: black, blue, green, yellow, red at 0, .25, .5, .75, 1.
const THERMAL_STOPS: [(f64, [u8; 3]); 5] = [
    (0.0, [0, 0, 0]),
    (0.25, [0, 0, 255]),
    (0.5, [0, 255, 0]),
    (0.75, [255, 255, 0]),
    (1.0, [255, 0, 0]),
];

/// Piecewise-linear thermal color for a cell value in `[0, 1]`.
pub fn thermal_color(value: f64) -> [u8; 3] {
    let v = value.clamp(0.0, 1.0);
    for pair in THERMAL_STOPS.windows(2) {
        let (lo_v, lo_c) = pair[0];
        let (hi_v, hi_c) = pair[1];
        if v <= hi_v {
            let t = (v - lo_v) / (hi_v - lo_v);
            let mut rgb = [0u8; 3];
            for (i, channel) in rgb.iter_mut().enumerate() {
                *channel = (lo_c[i] as f64 + t * (hi_c[i] as f64 - lo_c[i] as f64)).round() as u8;
            }
            return rgb;
        }
    }
    [255, 0, 0]
}

/// Render a max-normalized grid to image bytes (PGM for grayscale, PPM for
/// thermal). Identical grids yield identical bytes.
pub fn render_colormap(grid: &HeatmapGrid, palette: Palette) -> Result<Vec<u8>, HeatmapError> {
    let max = grid.max_value();
    if max > 1.0 {
        return Err(HeatmapError::UnnormalizedGrid { max });
    }
    match palette {
        Palette::Grayscale => {
            let pixels: Vec<u8> = grid
                .cells
                .iter()
                .map(|c| (c * 255.0).round() as u8)
                .collect();
            Ok(pnm::encode_pgm(grid.width_px, grid.height_px, &pixels))
        }
        Palette::Thermal => {
            let mut pixels = Vec::with_capacity(grid.cells.len() * 3);
            for c in &grid.cells {
                pixels.extend_from_slice(&thermal_color(*c));
            }
            Ok(pnm::encode_ppm(grid.width_px, grid.height_px, &pixels))
        }
    }
}

/// Sidecar text describing a rendered heatmap.
pub fn sidecar_summary(grid: &HeatmapGrid, mode: NormalizeMode) -> String {
    format!(
        "width_px = {}\nheight_px = {}\nbandwidth_px = {}\npoint_count = {}\nnormalization = {}\n",
        grid.width_px,
        grid.height_px,
        grid.bandwidth_px,
        grid.point_count,
        mode.as_str()
    )
}
