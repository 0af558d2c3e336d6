//! Static-perimetry cartograms: parsing, blind-spot localization inside the
//! anatomical window, adjacent absolute-scotoma detection, rendering and
//! structured patient reports.
//!
//! Coordinates are polar and eye-relative: eccentricity is the radius from
//! fixation in degrees, the meridian is the angle with 0 deg on the temporal
//! horizontal axis of the tested eye and positive angles above horizontal.
//! Because 0 deg is temporal for either eye, one numeric window serves both.
//!
//! The blind spot is searched inside a closed anatomical window, by default
//! eccentricity 10..18 deg and meridian -20..-10 deg (temporal, slightly
//! below horizontal). Unseen stimuli inside the window form the blind-spot
//! cluster; if none exist, unseen stimuli within 2 deg of the window are
//! reported with `within_anatomical_window = false`. The report is never a
//! diagnosis: it carries geometry and counts only.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::pnm;

/// Tested eye.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Eye {
    Left,
    Right,
}

impl Eye {
    pub fn parse_cell(s: &str) -> Option<Eye> {
        if s.eq_ignore_ascii_case("left") || s.eq_ignore_ascii_case("l") {
            Some(Eye::Left)
        } else if s.eq_ignore_ascii_case("right") || s.eq_ignore_ascii_case("r") {
            Some(Eye::Right)
        } else {
            None
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Eye::Left => "Left",
            Eye::Right => "Right",
        }
    }
}

impl fmt::Display for Eye {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Patient sex as recorded in the cartogram header.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sex {
    M,
    F,
    Unspecified,
}

impl Sex {
    pub fn parse_cell(s: &str) -> Option<Sex> {
        if s.eq_ignore_ascii_case("m") {
            Some(Sex::M)
        } else if s.eq_ignore_ascii_case("f") {
            Some(Sex::F)
        } else if s.is_empty() || s.eq_ignore_ascii_case("unspecified") {
            Some(Sex::Unspecified)
        } else {
            None
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Sex::M => "M",
            Sex::F => "F",
            Sex::Unspecified => "Unspecified",
        }
    }
}

/// One stimulus position and the patient's response to it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StimulusPoint {
    /// Polar angle in degrees, `(-180, 180]`, 0 = temporal horizontal.
    pub meridian_deg: f64,
    /// Polar radius from fixation in degrees, `[0, 90]`.
    pub eccentricity_deg: f64,
    /// Whether the stimulus was perceived (at any tested intensity).
    pub seen: bool,
    /// Stimulus intensity in decibels; carried through, never interpreted.
    pub intensity_db: Option<f64>,
}

/// A parsed perimetry cartogram: patient metadata plus stimulus responses.
#[derive(Debug, Clone, PartialEq)]
pub struct Cartogram {
    pub patient_id: String,
    pub eye: Eye,
    pub age_years: u32,
    pub sex: Sex,
    pub diagnosis_label: Option<String>,
    pub points: Vec<StimulusPoint>,
}

impl Cartogram {
    /// Check the type invariants: at least one point, coordinates in range,
    /// no two points at exactly the same polar position.
    pub fn validate(&self) -> Result<(), PerimetryError> {
        if self.points.is_empty() {
            return Err(PerimetryError::NoPoints);
        }
        let mut positions = std::collections::HashSet::new();
        for p in &self.points {
            if !(p.meridian_deg > -180.0 && p.meridian_deg <= 180.0) {
                return Err(PerimetryError::Malformed {
                    line: 0,
                    reason: format!("meridian {} outside (-180, 180]", p.meridian_deg),
                });
            }
            if !(0.0..=90.0).contains(&p.eccentricity_deg) {
                return Err(PerimetryError::Malformed {
                    line: 0,
                    reason: format!("eccentricity {} outside [0, 90]", p.eccentricity_deg),
                });
            }
            if !positions.insert((p.meridian_deg.to_bits(), p.eccentricity_deg.to_bits())) {
                return Err(PerimetryError::DuplicateStimulus {
                    meridian_deg: p.meridian_deg,
                    eccentricity_deg: p.eccentricity_deg,
                });
            }
        }
        Ok(())
    }

    pub fn unseen_points(&self) -> impl Iterator<Item = &StimulusPoint> {
        self.points.iter().filter(|p| !p.seen)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum PerimetryError {
    #[error("cartogram is not valid UTF-8")]
    NotUtf8,
    #[error("missing header key `{0}`")]
    MissingHeaderKey(String),
    #[error("duplicate stimulus at meridian {meridian_deg}, eccentricity {eccentricity_deg}")]
    DuplicateStimulus {
        meridian_deg: f64,
        eccentricity_deg: f64,
    },
    #[error("bad eye value `{0}` (expected Left or Right)")]
    BadEyeValue(String),
    #[error("cartogram line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("cartogram has no stimulus points")]
    NoPoints,
}

/// Parse a cartogram file.
///
/// The format is line-oriented: `key=value` header lines (`patient_id`,
/// `eye`, `age`, `sex` required, `diagnosis` optional), then TSV rows
/// `meridian_deg, eccentricity_deg, seen, intensity_db`. A canonical column
/// header row and blank lines are skipped. `seen` accepts
/// `true/false/1/0/yes/no`, case-insensitive.
pub fn parse_cartogram(source: &[u8]) -> Result<Cartogram, PerimetryError> {
    let text = std::str::from_utf8(source).map_err(|_| PerimetryError::NotUtf8)?;

    let mut patient_id = None;
    let mut eye = None;
    let mut age_years = None;
    let mut sex = None;
    let mut diagnosis_label: Option<String> = None;
    let mut points = Vec::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let malformed = |reason: String| PerimetryError::Malformed {
            line: line_no,
            reason,
        };

        if !line.contains('\t') && line.contains('=') {
            let (key, value) = line.split_once('=').expect("checked above");
            match key {
                "patient_id" => patient_id = Some(value.to_string()),
                "eye" => {
                    eye = Some(
                        Eye::parse_cell(value)
                            .ok_or_else(|| PerimetryError::BadEyeValue(value.to_string()))?,
                    )
                }
                "age" => {
                    age_years = Some(value.parse::<u32>().map_err(|_| {
                        malformed(format!("`age`: `{value}` is not a non-negative integer"))
                    })?)
                }
                "sex" => {
                    sex = Some(Sex::parse_cell(value).ok_or_else(|| {
                        malformed(format!("`sex`: `{value}` is not M|F|Unspecified"))
                    })?)
                }
                "diagnosis" => {
                    if !value.is_empty() {
                        diagnosis_label = Some(value.to_string());
                    }
                }
                other => return Err(malformed(format!("unknown header key `{other}`"))),
            }
            continue;
        }

        if line == "meridian_deg\teccentricity_deg\tseen\tintensity_db" {
            continue;
        }

        let cells: Vec<&str> = line.split('\t').collect();
        if cells.len() != 4 {
            return Err(malformed(format!(
                "expected 4 cells, found {}",
                cells.len()
            )));
        }
        let parse_deg = |cell: &str, what: &str| -> Result<f64, PerimetryError> {
            let v = cell
                .parse::<f64>()
                .map_err(|_| malformed(format!("`{what}`: `{cell}` is not a number")))?;
            if !v.is_finite() {
                return Err(malformed(format!("`{what}`: `{cell}` is not finite")));
            }
            Ok(v)
        };
        let meridian_deg = parse_deg(cells[0], "meridian_deg")?;
        let eccentricity_deg = parse_deg(cells[1], "eccentricity_deg")?;
        let seen = match cells[2].to_ascii_lowercase().as_str() {
            "true" | "1" | "yes" => true,
            "false" | "0" | "no" => false,
            other => return Err(malformed(format!("`seen`: `{other}` is not a boolean"))),
        };
        let intensity_db = if cells[3].is_empty() {
            None
        } else {
            Some(parse_deg(cells[3], "intensity_db")?)
        };
        if !(meridian_deg > -180.0 && meridian_deg <= 180.0) {
            return Err(malformed(format!(
                "meridian {meridian_deg} outside (-180, 180]"
            )));
        }
        if !(0.0..=90.0).contains(&eccentricity_deg) {
            return Err(malformed(format!(
                "eccentricity {eccentricity_deg} outside [0, 90]"
            )));
        }
        points.push(StimulusPoint {
            meridian_deg,
            eccentricity_deg,
            seen,
            intensity_db,
        });
    }

    let cart = Cartogram {
        patient_id: patient_id
            .ok_or_else(|| PerimetryError::MissingHeaderKey("patient_id".into()))?,
        eye: eye.ok_or_else(|| PerimetryError::MissingHeaderKey("eye".into()))?,
        age_years: age_years.ok_or_else(|| PerimetryError::MissingHeaderKey("age".into()))?,
        sex: sex.ok_or_else(|| PerimetryError::MissingHeaderKey("sex".into()))?,
        diagnosis_label,
        points,
    };
    cart.validate()?;
    Ok(cart)
}

/// Serialize a cartogram to its canonical file form; parse -> serialize ->
/// parse is identity.
pub fn serialize_cartogram(cart: &Cartogram) -> String {
    let mut out = String::new();
    out.push_str(&format!("patient_id={}\n", cart.patient_id));
    out.push_str(&format!("eye={}\n", cart.eye));
    out.push_str(&format!("age={}\n", cart.age_years));
    out.push_str(&format!("sex={}\n", cart.sex.as_str()));
    if let Some(diagnosis) = &cart.diagnosis_label {
        out.push_str(&format!("diagnosis={diagnosis}\n"));
    }
    out.push_str("meridian_deg\teccentricity_deg\tseen\tintensity_db\n");
    for p in &cart.points {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            p.meridian_deg,
            p.eccentricity_deg,
            p.seen,
            p.intensity_db.map(|v| v.to_string()).unwrap_or_default()
        ));
    }
    out
}

/// Closed polar window, `(low, high)` per axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnatomicalWindow {
    pub eccentricity_deg: (f64, f64),
    pub meridian_deg: (f64, f64),
}

impl AnatomicalWindow {
    pub fn contains(&self, meridian_deg: f64, eccentricity_deg: f64) -> bool {
        let (e_lo, e_hi) = self.eccentricity_deg;
        let (m_lo, m_hi) = self.meridian_deg;
        (e_lo..=e_hi).contains(&eccentricity_deg) && (m_lo..=m_hi).contains(&meridian_deg)
    }

    /// The window grown by `margin` degrees on every bound.
    pub fn expanded(&self, margin_deg: f64) -> AnatomicalWindow {
        AnatomicalWindow {
            eccentricity_deg: (
                self.eccentricity_deg.0 - margin_deg,
                self.eccentricity_deg.1 + margin_deg,
            ),
            meridian_deg: (
                self.meridian_deg.0 - margin_deg,
                self.meridian_deg.1 + margin_deg,
            ),
        }
    }
}

/// Anatomical blind-spot search window for the given eye.
///
/// Eccentricity 10..18 deg for both eyes; meridian -20..-10 deg. The
/// meridian window is numerically identical for both eyes because 0 deg is
/// defined as the temporal horizontal axis of whichever eye was tested.
pub fn anatomical_window(_eye: Eye) -> AnatomicalWindow {
    AnatomicalWindow {
        eccentricity_deg: (10.0, 18.0),
        meridian_deg: (-20.0, -10.0),
    }
}

/// Tunable geometry for the blind-spot search and scotoma adjacency rule.
#[derive(Debug, Clone, PartialEq)]
pub struct PerimetryConfig {
    /// Search window; defaults to [`anatomical_window`].
    pub window: AnatomicalWindow,
    /// How far outside the window unseen stimuli may sit and still be
    /// reported as a displaced blind-spot candidate.
    pub near_window_margin_deg: f64,
    /// Adjacency ring: unseen stimuli between `ring_inner_deg` and
    /// `ring_outer_deg` beyond the eccentricity bounds count as adjacent
    /// scotoma evidence (closed on both ends).
    pub ring_inner_deg: f64,
    pub ring_outer_deg: f64,
    /// Meridian padding of the adjacency zone beyond the window's meridian
    /// bounds (half-open at the window edge, closed at the outer edge).
    pub meridian_pad_deg: f64,
    /// Textbook blind-spot eccentricity band used for the centroid note.
    pub textbook_band_deg: (f64, f64),
}

impl PerimetryConfig {
    pub fn for_eye(eye: Eye) -> PerimetryConfig {
        PerimetryConfig {
            window: anatomical_window(eye),
            near_window_margin_deg: 2.0,
            ring_inner_deg: 2.0,
            ring_outer_deg: 6.0,
            meridian_pad_deg: 15.0,
            textbook_band_deg: (12.0, 15.0),
        }
    }
}

/// Localized blind-spot result.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlindSpotReport {
    pub found: bool,
    pub centroid_meridian_deg: Option<f64>,
    pub centroid_eccentricity_deg: Option<f64>,
    pub member_points: Vec<StimulusPoint>,
    pub within_anatomical_window: bool,
    pub adjacent_absolute_scotoma: bool,
    pub notes: Vec<String>,
}

/// Locate the blind spot with the default window for the cartogram's eye.
pub fn blind_spot_search(cart: &Cartogram) -> BlindSpotReport {
    blind_spot_search_with(cart, &PerimetryConfig::for_eye(cart.eye))
}

/// Locate the blind spot.
///
/// Unseen stimuli inside the (closed) window form the cluster; its centroid
/// is the arithmetic mean of member polar coordinates. With no unseen
/// stimulus inside the window, unseen stimuli within
/// `near_window_margin_deg` of it are reported instead, flagged as outside
/// the anatomical window. Member points are sorted by (eccentricity,
/// meridian), so the report does not depend on input point order.
pub fn blind_spot_search_with(cart: &Cartogram, cfg: &PerimetryConfig) -> BlindSpotReport {
    let mut notes = Vec::new();

    let mut members: Vec<StimulusPoint> = cart
        .unseen_points()
        .filter(|p| cfg.window.contains(p.meridian_deg, p.eccentricity_deg))
        .cloned()
        .collect();
    let within_anatomical_window = !members.is_empty();

    if members.is_empty() {
        let near = cfg.window.expanded(cfg.near_window_margin_deg);
        members = cart
            .unseen_points()
            .filter(|p| near.contains(p.meridian_deg, p.eccentricity_deg))
            .cloned()
            .collect();
        if !members.is_empty() {
            notes.push(format!(
                "no unseen stimulus inside the anatomical window; reporting {} unseen \
                 stimulus(es) within {} deg of it",
                members.len(),
                cfg.near_window_margin_deg
            ));
        }
    }

    members.sort_by(|a, b| {
        a.eccentricity_deg
            .total_cmp(&b.eccentricity_deg)
            .then(a.meridian_deg.total_cmp(&b.meridian_deg))
    });

    let adjacent_absolute_scotoma = adjacent_scotoma_check_with(cart, cfg).present;

    if members.is_empty() {
        let unseen: Vec<&StimulusPoint> = cart.unseen_points().collect();
        if !unseen.is_empty() {
            let ecc_lo = unseen
                .iter()
                .map(|p| p.eccentricity_deg)
                .fold(f64::INFINITY, f64::min);
            let ecc_hi = unseen
                .iter()
                .map(|p| p.eccentricity_deg)
                .fold(f64::NEG_INFINITY, f64::max);
            let mer_lo = unseen
                .iter()
                .map(|p| p.meridian_deg)
                .fold(f64::INFINITY, f64::min);
            let mer_hi = unseen
                .iter()
                .map(|p| p.meridian_deg)
                .fold(f64::NEG_INFINITY, f64::max);
            notes.push(format!(
                "{} unseen stimulus(es) lie outside the search region: eccentricity \
                 {ecc_lo} to {ecc_hi} deg, meridian {mer_lo} to {mer_hi} deg",
                unseen.len()
            ));
        }
        return BlindSpotReport {
            found: false,
            centroid_meridian_deg: None,
            centroid_eccentricity_deg: None,
            member_points: Vec::new(),
            within_anatomical_window: false,
            adjacent_absolute_scotoma,
            notes,
        };
    }

    let n = members.len() as f64;
    let centroid_meridian = members.iter().map(|p| p.meridian_deg).sum::<f64>() / n;
    let centroid_ecc = members.iter().map(|p| p.eccentricity_deg).sum::<f64>() / n;

    let (band_lo, band_hi) = cfg.textbook_band_deg;
    let band_distance = if centroid_ecc < band_lo {
        band_lo - centroid_ecc
    } else if centroid_ecc > band_hi {
        centroid_ecc - band_hi
    } else {
        0.0
    };
    notes.push(format!(
        "centroid eccentricity {centroid_ecc:.2} deg, {band_distance:.2} deg from the \
         {band_lo}-{band_hi} deg textbook band"
    ));

    BlindSpotReport {
        found: true,
        centroid_meridian_deg: Some(centroid_meridian),
        centroid_eccentricity_deg: Some(centroid_ecc),
        member_points: members,
        within_anatomical_window,
        adjacent_absolute_scotoma,
        notes,
    }
}

/// Adjacent absolute-scotoma verdict with the qualifying stimuli.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScotomaCheck {
    pub present: bool,
    pub evidence: Vec<StimulusPoint>,
    /// Automated blind-spot perimetry is flagged infeasible when adjacent
    /// absolute scotomas are present.
    pub auto_perimetry_feasible: bool,
}

/// Adjacency rule with the default configuration for the cartogram's eye.
pub fn adjacent_scotoma_check(cart: &Cartogram) -> ScotomaCheck {
    adjacent_scotoma_check_with(cart, &PerimetryConfig::for_eye(cart.eye))
}

/// Flag absolute scotomas in the zones adjacent to the blind-spot window.
///
/// An unseen stimulus qualifies when either:
/// * its meridian lies inside the window's (closed) meridian bounds and its
///   eccentricity sits in the closed ring `[ring_inner, ring_outer]` degrees
///   beyond either eccentricity bound, or
/// * its eccentricity lies inside the window's (closed) eccentricity bounds
///   and its meridian sits within `meridian_pad_deg` beyond a meridian bound
///   (exclusive at the window edge, inclusive at the outer edge).
///
/// Stimuli inside the window itself are blind-spot candidates, never
/// adjacency evidence.
pub fn adjacent_scotoma_check_with(cart: &Cartogram, cfg: &PerimetryConfig) -> ScotomaCheck {
    let (e_lo, e_hi) = cfg.window.eccentricity_deg;
    let (m_lo, m_hi) = cfg.window.meridian_deg;

    let mut evidence = Vec::new();
    for p in cart.unseen_points() {
        let m = p.meridian_deg;
        let e = p.eccentricity_deg;

        let in_ecc_ring = (m_lo..=m_hi).contains(&m)
            && ((e >= e_hi + cfg.ring_inner_deg && e <= e_hi + cfg.ring_outer_deg)
                || (e >= e_lo - cfg.ring_outer_deg && e <= e_lo - cfg.ring_inner_deg));
        let in_meridian_zone = (e_lo..=e_hi).contains(&e)
            && ((m >= m_lo - cfg.meridian_pad_deg && m < m_lo)
                || (m > m_hi && m <= m_hi + cfg.meridian_pad_deg));

        if in_ecc_ring || in_meridian_zone {
            evidence.push(p.clone());
        }
    }
    evidence.sort_by(|a, b| {
        a.eccentricity_deg
            .total_cmp(&b.eccentricity_deg)
            .then(a.meridian_deg.total_cmp(&b.meridian_deg))
    });

    let present = !evidence.is_empty();
    ScotomaCheck {
        present,
        evidence,
        auto_perimetry_feasible: !present,
    }
}

// --- rendering ----------------------------------------------------------

/// Rendering colors, RGB.
pub mod colors {
    pub const BACKGROUND: [u8; 3] = [255, 255, 255];
    pub const GRID: [u8; 3] = [200, 200, 200];
    pub const WINDOW_OUTLINE: [u8; 3] = [60, 100, 220];
    pub const SEEN: [u8; 3] = [40, 40, 40];
    pub const UNSEEN: [u8; 3] = [235, 170, 60];
    pub const BLIND_SPOT_MEMBER: [u8; 3] = [220, 40, 40];
}

/// Outermost eccentricity circle drawn for a cartogram: the smallest
/// multiple of 10 covering every point, and at least 30 deg.
pub fn display_max_eccentricity(cart: &Cartogram) -> f64 {
    let max_ecc = cart
        .points
        .iter()
        .map(|p| p.eccentricity_deg)
        .fold(0.0, f64::max);
    ((max_ecc / 10.0).ceil() * 10.0).max(30.0)
}

/// Polar-to-raster mapping used by [`render_cartogram`].
///
/// The chart center sits at `size/2`; the outermost circle has radius
/// `0.4 * size`. A polar position maps to
/// `x = cx + r*cos(meridian)`, `y = cy - r*sin(meridian)` with
/// `r = eccentricity / display_max * 0.4 * size`, rounded to the nearest
/// pixel. 0 deg therefore points right and positive meridians point up.
pub fn raster_position(
    meridian_deg: f64,
    eccentricity_deg: f64,
    size_px: usize,
    display_max_ecc: f64,
) -> (usize, usize) {
    let size = size_px as f64;
    let center = size / 2.0;
    let radius = eccentricity_deg / display_max_ecc * 0.4 * size;
    let theta = meridian_deg.to_radians();
    let x = center + radius * theta.cos();
    let y = center - radius * theta.sin();
    let clamp = |v: f64| (v.round().max(0.0) as usize).min(size_px - 1);
    (clamp(x), clamp(y))
}

struct Canvas {
    size: usize,
    pixels: Vec<u8>,
}

impl Canvas {
    fn new(size: usize) -> Canvas {
        let mut pixels = Vec::with_capacity(size * size * 3);
        for _ in 0..size * size {
            pixels.extend_from_slice(&colors::BACKGROUND);
        }
        Canvas { size, pixels }
    }

    fn set(&mut self, x: usize, y: usize, rgb: [u8; 3]) {
        if x < self.size && y < self.size {
            let at = (y * self.size + x) * 3;
            self.pixels[at..at + 3].copy_from_slice(&rgb);
        }
    }

    /// Filled square of half-extent `h` centered on `(x, y)`.
    fn mark(&mut self, x: usize, y: usize, h: usize, rgb: [u8; 3]) {
        for dy in -(h as i64)..=(h as i64) {
            for dx in -(h as i64)..=(h as i64) {
                let mx = x as i64 + dx;
                let my = y as i64 + dy;
                if mx >= 0 && my >= 0 {
                    self.set(mx as usize, my as usize, rgb);
                }
            }
        }
    }
}

/// Render the cartogram as a deterministic binary PPM.
///
/// The chart shows eccentricity circles every 10 deg, meridian spokes every
/// 30 deg, the anatomical window outline, and the stimuli: seen points in
/// dark gray, unseen in light orange, blind-spot members in red (colors in
/// [`colors`]). Sizes below 64 px are drawn at 64 px.
pub fn render_cartogram(cart: &Cartogram, report: &BlindSpotReport, size_px: usize) -> Vec<u8> {
    let size = size_px.max(64);
    let display_max = display_max_eccentricity(cart);
    let mut canvas = Canvas::new(size);

    // Eccentricity circles.
    let mut ecc = 10.0;
    while ecc <= display_max {
        draw_polar_arc(
            &mut canvas,
            ecc,
            -180.0,
            180.0,
            size,
            display_max,
            colors::GRID,
        );
        ecc += 10.0;
    }
    // Meridian spokes every 30 degrees.
    let mut meridian = -150.0;
    while meridian <= 180.0 {
        draw_polar_radial(
            &mut canvas,
            meridian,
            0.0,
            display_max,
            size,
            display_max,
            colors::GRID,
        );
        meridian += 30.0;
    }

    // Anatomical window outline.
    let window = anatomical_window(cart.eye);
    let (e_lo, e_hi) = window.eccentricity_deg;
    let (m_lo, m_hi) = window.meridian_deg;
    draw_polar_arc(
        &mut canvas,
        e_lo,
        m_lo,
        m_hi,
        size,
        display_max,
        colors::WINDOW_OUTLINE,
    );
    draw_polar_arc(
        &mut canvas,
        e_hi,
        m_lo,
        m_hi,
        size,
        display_max,
        colors::WINDOW_OUTLINE,
    );
    draw_polar_radial(
        &mut canvas,
        m_lo,
        e_lo,
        e_hi,
        size,
        display_max,
        colors::WINDOW_OUTLINE,
    );
    draw_polar_radial(
        &mut canvas,
        m_hi,
        e_lo,
        e_hi,
        size,
        display_max,
        colors::WINDOW_OUTLINE,
    );

    let half_extent = (size / 128).max(1);
    for p in &cart.points {
        if p.seen {
            let (x, y) = raster_position(p.meridian_deg, p.eccentricity_deg, size, display_max);
            canvas.mark(x, y, half_extent, colors::SEEN);
        }
    }
    for p in &cart.points {
        if !p.seen {
            let (x, y) = raster_position(p.meridian_deg, p.eccentricity_deg, size, display_max);
            canvas.mark(x, y, half_extent, colors::UNSEEN);
        }
    }
    for p in &report.member_points {
        let (x, y) = raster_position(p.meridian_deg, p.eccentricity_deg, size, display_max);
        canvas.mark(x, y, half_extent, colors::BLIND_SPOT_MEMBER);
    }

    pnm::encode_ppm(size, size, &canvas.pixels)
}

fn draw_polar_arc(
    canvas: &mut Canvas,
    ecc: f64,
    from_meridian: f64,
    to_meridian: f64,
    size: usize,
    display_max: f64,
    rgb: [u8; 3],
) {
    let radius_px = ecc / display_max * 0.4 * size as f64;
    let arc_fraction = (to_meridian - from_meridian) / 360.0;
    let steps =
        ((2.0 * std::f64::consts::PI * radius_px * arc_fraction).ceil() * 2.0).max(8.0) as usize;
    for i in 0..=steps {
        let m = from_meridian + (to_meridian - from_meridian) * i as f64 / steps as f64;
        let (x, y) = raster_position(m, ecc, size, display_max);
        canvas.set(x, y, rgb);
    }
}

fn draw_polar_radial(
    canvas: &mut Canvas,
    meridian: f64,
    from_ecc: f64,
    to_ecc: f64,
    size: usize,
    display_max: f64,
    rgb: [u8; 3],
) {
    let span_px = (to_ecc - from_ecc) / display_max * 0.4 * size as f64;
    let steps = (span_px.ceil() * 2.0).max(8.0) as usize;
    for i in 0..=steps {
        let e = from_ecc + (to_ecc - from_ecc) * i as f64 / steps as f64;
        let (x, y) = raster_position(meridian, e, size, display_max);
        canvas.set(x, y, rgb);
    }
}

// --- patient report -----------------------------------------------------

/// Unseen fraction per field quadrant. Quadrants split on the meridian:
/// upper temporal `[0, 90)`, upper nasal `[90, 180]`, lower nasal
/// `(-180, -90]`, lower temporal `(-90, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadrantFractions {
    pub upper_temporal: f64,
    pub upper_nasal: f64,
    pub lower_nasal: f64,
    pub lower_temporal: f64,
}

/// The feature bundle a downstream classifier would consume. Geometry and
/// counts only; there is deliberately no verdict of any kind.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PatientReport {
    pub patient_id: String,
    pub eye: Eye,
    pub age_years: u32,
    pub sex: Sex,
    pub diagnosis_label: Option<String>,
    pub window: AnatomicalWindow,
    pub blind_spot: BlindSpotReport,
    pub adjacent_scotoma: ScotomaCheck,
    pub total_point_count: usize,
    pub unseen_point_count: usize,
    pub quadrant_unseen_fractions: QuadrantFractions,
}

/// Assemble the structured report for a cartogram and its blind-spot result.
pub fn patient_report(cart: &Cartogram, report: &BlindSpotReport) -> PatientReport {
    patient_report_with(cart, report, &PerimetryConfig::for_eye(cart.eye))
}

pub fn patient_report_with(
    cart: &Cartogram,
    report: &BlindSpotReport,
    cfg: &PerimetryConfig,
) -> PatientReport {
    let quadrant = |m: f64| -> usize {
        if (0.0..90.0).contains(&m) {
            0 // upper temporal
        } else if (90.0..=180.0).contains(&m) {
            1 // upper nasal
        } else if m <= -90.0 {
            2 // lower nasal
        } else {
            3 // lower temporal
        }
    };
    let mut totals = [0usize; 4];
    let mut unseen = [0usize; 4];
    for p in &cart.points {
        let q = quadrant(p.meridian_deg);
        totals[q] += 1;
        if !p.seen {
            unseen[q] += 1;
        }
    }
    let fraction = |q: usize| {
        if totals[q] == 0 {
            0.0
        } else {
            unseen[q] as f64 / totals[q] as f64
        }
    };

    PatientReport {
        patient_id: cart.patient_id.clone(),
        eye: cart.eye,
        age_years: cart.age_years,
        sex: cart.sex,
        diagnosis_label: cart.diagnosis_label.clone(),
        window: cfg.window,
        blind_spot: report.clone(),
        adjacent_scotoma: adjacent_scotoma_check_with(cart, cfg),
        total_point_count: cart.points.len(),
        unseen_point_count: cart.unseen_points().count(),
        quadrant_unseen_fractions: QuadrantFractions {
            upper_temporal: fraction(0),
            upper_nasal: fraction(1),
            lower_nasal: fraction(2),
            lower_temporal: fraction(3),
        },
    }
}

impl PatientReport {
    /// Machine-readable JSON form.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Key-value text form with the member/evidence point table.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("patient_id = {}\n", self.patient_id));
        out.push_str(&format!("eye = {}\n", self.eye));
        out.push_str(&format!("age_years = {}\n", self.age_years));
        out.push_str(&format!("sex = {}\n", self.sex.as_str()));
        out.push_str(&format!(
            "diagnosis_label = {}\n",
            self.diagnosis_label.as_deref().unwrap_or("")
        ));
        out.push_str(&format!(
            "window_eccentricity_deg = {} to {}\n",
            self.window.eccentricity_deg.0, self.window.eccentricity_deg.1
        ));
        out.push_str(&format!(
            "window_meridian_deg = {} to {}\n",
            self.window.meridian_deg.0, self.window.meridian_deg.1
        ));
        out.push_str(&format!("blind_spot_found = {}\n", self.blind_spot.found));
        if let (Some(m), Some(e)) = (
            self.blind_spot.centroid_meridian_deg,
            self.blind_spot.centroid_eccentricity_deg,
        ) {
            out.push_str(&format!("blind_spot_centroid_meridian_deg = {m}\n"));
            out.push_str(&format!("blind_spot_centroid_eccentricity_deg = {e}\n"));
        }
        out.push_str(&format!(
            "within_anatomical_window = {}\n",
            self.blind_spot.within_anatomical_window
        ));
        out.push_str(&format!(
            "adjacent_absolute_scotoma = {}\n",
            self.adjacent_scotoma.present
        ));
        out.push_str(&format!(
            "auto_perimetry_feasible = {}\n",
            self.adjacent_scotoma.auto_perimetry_feasible
        ));
        out.push_str(&format!("total_point_count = {}\n", self.total_point_count));
        out.push_str(&format!(
            "unseen_point_count = {}\n",
            self.unseen_point_count
        ));
        let q = &self.quadrant_unseen_fractions;
        out.push_str(&format!(
            "quadrant_unseen_fractions = UT {:.4}, UN {:.4}, LN {:.4}, LT {:.4}\n",
            q.upper_temporal, q.upper_nasal, q.lower_nasal, q.lower_temporal
        ));
        for note in &self.blind_spot.notes {
            out.push_str(&format!("note = {note}\n"));
        }
        out.push_str("\nblind_spot_members (meridian_deg\teccentricity_deg)\n");
        for p in &self.blind_spot.member_points {
            out.push_str(&format!("{}\t{}\n", p.meridian_deg, p.eccentricity_deg));
        }
        out.push_str("\nscotoma_evidence (meridian_deg\teccentricity_deg)\n");
        for p in &self.adjacent_scotoma.evidence {
            out.push_str(&format!("{}\t{}\n", p.meridian_deg, p.eccentricity_deg));
        }
        out
    }
}
