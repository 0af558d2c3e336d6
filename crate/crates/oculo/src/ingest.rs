//! Gaze-export ingestion: canonical TSV schema, parsing, validation and
//! serialization of wearable eye-tracker recordings.
//!
//! The canonical export is a UTF-8, tab-separated table. Line 1 is a header
//! naming columns; every following non-empty line is one sample row. An empty
//! cell means "value absent", never zero. Vendor exports with different
//! header spellings are supported through a [`HeaderMap`] that renames raw
//! headers to canonical ones before schema matching.
//!
//! Required columns: `event_index`, `start_time_us`, `end_time_us`,
//! `gaze_x_px`, `gaze_y_px`. All other canonical columns are optional and
//! unknown columns are ignored (counted in the [`IngestOutcome`] metadata).

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// Canonical column names, in canonical file order.
pub const CANONICAL_COLUMNS: [&str; 36] = [
    "event_index",
    "start_time_us",
    "end_time_us",
    "gaze_x_px",
    "gaze_y_px",
    "deviation_x_px",
    "deviation_y_px",
    "gaze3d_x",
    "gaze3d_y",
    "gaze3d_z",
    "gaze_dir_left_x",
    "gaze_dir_left_y",
    "gaze_dir_left_z",
    "gaze_dir_right_x",
    "gaze_dir_right_y",
    "gaze_dir_right_z",
    "pupil_pos_left_x",
    "pupil_pos_left_y",
    "pupil_pos_left_z",
    "pupil_pos_right_x",
    "pupil_pos_right_y",
    "pupil_pos_right_z",
    "pupil_diam_left_mm",
    "pupil_diam_right_mm",
    "pupil_diam_filtered_mm",
    "movement_type",
    "event_duration_us",
    "movement_type_index",
    "fixation_x_px",
    "fixation_y_px",
    "gyro_x",
    "gyro_y",
    "gyro_z",
    "accel_x",
    "accel_y",
    "accel_z",
];

/// Columns that must be present in every export.
pub const REQUIRED_COLUMNS: [&str; 5] = [
    "event_index",
    "start_time_us",
    "end_time_us",
    "gaze_x_px",
    "gaze_y_px",
];

/// Eye-movement label attached to a sample or event.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MovementType {
    Fixation,
    Saccade,
    Unclassified,
}

impl MovementType {
    /// Parse a cell value, case-insensitively.
    pub fn parse_cell(s: &str) -> Option<MovementType> {
        if s.eq_ignore_ascii_case("fixation") {
            Some(MovementType::Fixation)
        } else if s.eq_ignore_ascii_case("saccade") {
            Some(MovementType::Saccade)
        } else if s.eq_ignore_ascii_case("unclassified") {
            Some(MovementType::Unclassified)
        } else {
            None
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            MovementType::Fixation => "Fixation",
            MovementType::Saccade => "Saccade",
            MovementType::Unclassified => "Unclassified",
        }
    }
}

impl fmt::Display for MovementType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One timestamped gaze record, mirroring the canonical column schema.
///
/// All optional fields are `None` when the source cell was empty.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GazeSample {
    pub event_index: u64,
    pub start_time_us: i64,
    pub end_time_us: i64,
    pub gaze_x_px: Option<f64>,
    pub gaze_y_px: Option<f64>,
    pub deviation_x_px: Option<f64>,
    pub deviation_y_px: Option<f64>,
    pub gaze3d_x: Option<f64>,
    pub gaze3d_y: Option<f64>,
    pub gaze3d_z: Option<f64>,
    pub gaze_dir_left_x: Option<f64>,
    pub gaze_dir_left_y: Option<f64>,
    pub gaze_dir_left_z: Option<f64>,
    pub gaze_dir_right_x: Option<f64>,
    pub gaze_dir_right_y: Option<f64>,
    pub gaze_dir_right_z: Option<f64>,
    pub pupil_pos_left_x: Option<f64>,
    pub pupil_pos_left_y: Option<f64>,
    pub pupil_pos_left_z: Option<f64>,
    pub pupil_pos_right_x: Option<f64>,
    pub pupil_pos_right_y: Option<f64>,
    pub pupil_pos_right_z: Option<f64>,
    pub pupil_diam_left_mm: Option<f64>,
    pub pupil_diam_right_mm: Option<f64>,
    pub pupil_diam_filtered_mm: Option<f64>,
    pub movement_type: Option<MovementType>,
    pub event_duration_us: Option<i64>,
    pub movement_type_index: Option<i64>,
    pub fixation_x_px: Option<f64>,
    pub fixation_y_px: Option<f64>,
    pub gyro_x: Option<f64>,
    pub gyro_y: Option<f64>,
    pub gyro_z: Option<f64>,
    pub accel_x: Option<f64>,
    pub accel_y: Option<f64>,
    pub accel_z: Option<f64>,
}

impl GazeSample {
    /// Both screen-gaze coordinates present.
    pub fn has_gaze(&self) -> bool {
        self.gaze_x_px.is_some() && self.gaze_y_px.is_some()
    }

    /// Screen-gaze point when both coordinates are present.
    pub fn gaze_point(&self) -> Option<(f64, f64)> {
        match (self.gaze_x_px, self.gaze_y_px) {
            (Some(x), Some(y)) => Some((x, y)),
            _ => None,
        }
    }
}

/// An immutable, ordered gaze recording.
#[derive(Debug, Clone, PartialEq)]
pub struct Recording {
    pub recording_id: String,
    pub participant_id: String,
    pub sample_rate_hz: u32,
    pub frame_width_px: u32,
    pub frame_height_px: u32,
    pub samples: Vec<GazeSample>,
}

impl Recording {
    /// Recording time span in microseconds (last end minus first start), 0 when empty.
    pub fn span_us(&self) -> i64 {
        match (self.samples.first(), self.samples.last()) {
            (Some(first), Some(last)) => last.end_time_us - first.start_time_us,
            _ => 0,
        }
    }
}

/// How strictly the parser treats defective rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParseMode {
    /// Fail on malformed rows and on decreasing start times.
    Strict,
    /// Fail on malformed rows; time order is left to validation.
    #[default]
    FailFast,
    /// Skip malformed rows, counting them in the outcome.
    Lenient,
}

/// Parser configuration.
///
/// Frame dimensions default to 1920x1080 when the export carries none; they
/// drive out-of-frame validation and degree conversion downstream. The sample
/// rate must be 50 or 100 Hz unless `allow_any_sample_rate` is set.
#[derive(Debug, Clone)]
pub struct IngestConfig {
    pub mode: ParseMode,
    pub frame_width_px: u32,
    pub frame_height_px: u32,
    pub sample_rate_hz: u32,
    pub allow_any_sample_rate: bool,
    pub recording_id: String,
    pub participant_id: String,
    pub header_map: Option<HeaderMap>,
}

impl Default for IngestConfig {
    fn default() -> Self {
        IngestConfig {
            mode: ParseMode::default(),
            frame_width_px: 1920,
            frame_height_px: 1080,
            sample_rate_hz: 50,
            allow_any_sample_rate: false,
            recording_id: String::new(),
            participant_id: String::new(),
            header_map: None,
        }
    }
}

/// Renames vendor header cells to canonical column names.
///
/// The mapping file is TSV: `vendor_header<TAB>canonical_name`, one pair per
/// line; `#` starts a comment and blank lines are ignored.
#[derive(Debug, Clone, Default)]
pub struct HeaderMap {
    entries: BTreeMap<String, String>,
}

impl HeaderMap {
    pub fn parse(source: &str) -> Result<HeaderMap, IngestError> {
        let mut entries = BTreeMap::new();
        for (idx, raw_line) in source.lines().enumerate() {
            let line = raw_line.trim_end_matches('\r');
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut cells = line.split('\t');
            let vendor = cells.next().unwrap_or_default();
            let canonical = cells.next().ok_or(IngestError::BadHeaderMap {
                line: idx + 1,
                reason: "expected `vendor<TAB>canonical`".into(),
            })?;
            if !CANONICAL_COLUMNS.contains(&canonical) {
                return Err(IngestError::BadHeaderMap {
                    line: idx + 1,
                    reason: format!("`{canonical}` is not a canonical column"),
                });
            }
            entries.insert(vendor.to_string(), canonical.to_string());
        }
        Ok(HeaderMap { entries })
    }

    /// Canonical name for a raw header cell (the cell itself when unmapped).
    pub fn canonical<'a>(&'a self, raw: &'a str) -> &'a str {
        self.entries.get(raw).map(String::as_str).unwrap_or(raw)
    }
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("input is not valid UTF-8")]
    NotUtf8,
    #[error("input has no header row")]
    EmptyInput,
    #[error("missing required column `{0}`")]
    MissingRequiredColumn(String),
    #[error("duplicate column `{name}` in header")]
    DuplicateColumn { name: String },
    #[error("line {line}: {reason}")]
    MalformedRow { line: usize, reason: String },
    #[error("line {line}: start_time_us decreases relative to the previous row")]
    NonMonotonicTime { line: usize },
    #[error("header map line {line}: {reason}")]
    BadHeaderMap { line: usize, reason: String },
    #[error("sample rate {0} Hz is outside the supported set {{50, 100}}")]
    UnsupportedSampleRate(u32),
}

/// Parse result: the recording plus ingestion metadata.
#[derive(Debug, Clone)]
pub struct IngestOutcome {
    pub recording: Recording,
    /// Header cells that matched no canonical column (post header-mapping).
    pub unknown_columns: Vec<String>,
    /// Rows skipped under [`ParseMode::Lenient`], as `(line_no, reason)`.
    pub skipped_rows: Vec<(usize, String)>,
}

impl IngestOutcome {
    pub fn warning_count(&self) -> usize {
        self.unknown_columns.len() + self.skipped_rows.len()
    }
}

struct ColumnIndex {
    /// canonical column name -> cell position in each row
    positions: BTreeMap<&'static str, usize>,
    width: usize,
}

impl ColumnIndex {
    fn get(&self, name: &str) -> Option<usize> {
        self.positions.get(name).copied()
    }
}

/// Parse a gaze export into a [`Recording`].
///
/// One `GazeSample` per data row, in file order. Blank lines are skipped.
pub fn parse_gaze_export(
    source: &[u8],
    config: &IngestConfig,
) -> Result<IngestOutcome, IngestError> {
    if !config.allow_any_sample_rate && !matches!(config.sample_rate_hz, 50 | 100) {
        return Err(IngestError::UnsupportedSampleRate(config.sample_rate_hz));
    }
    let text = std::str::from_utf8(source).map_err(|_| IngestError::NotUtf8)?;
    let mut lines = text.lines().enumerate();

    let (_, header_line) = lines.next().ok_or(IngestError::EmptyInput)?;
    let (columns, unknown_columns) = index_header(header_line, config.header_map.as_ref())?;

    let mut samples = Vec::new();
    let mut skipped_rows = Vec::new();
    let mut prev_start: Option<i64> = None;

    for (idx, raw_line) in lines {
        let line_no = idx + 1;
        let line = raw_line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        match parse_row(line, line_no, &columns) {
            Ok(sample) => {
                if config.mode == ParseMode::Strict {
                    if let Some(prev) = prev_start {
                        if sample.start_time_us < prev {
                            return Err(IngestError::NonMonotonicTime { line: line_no });
                        }
                    }
                }
                prev_start = Some(sample.start_time_us);
                samples.push(sample);
            }
            Err(err) => match config.mode {
                ParseMode::Lenient => skipped_rows.push((line_no, err.to_string())),
                _ => return Err(err),
            },
        }
    }

    let recording = Recording {
        recording_id: config.recording_id.clone(),
        participant_id: config.participant_id.clone(),
        sample_rate_hz: config.sample_rate_hz,
        frame_width_px: config.frame_width_px,
        frame_height_px: config.frame_height_px,
        samples,
    };
    Ok(IngestOutcome {
        recording,
        unknown_columns,
        skipped_rows,
    })
}

fn index_header(
    header_line: &str,
    map: Option<&HeaderMap>,
) -> Result<(ColumnIndex, Vec<String>), IngestError> {
    let cells: Vec<&str> = header_line.trim_end_matches('\r').split('\t').collect();
    let mut positions: BTreeMap<&'static str, usize> = BTreeMap::new();
    let mut unknown = Vec::new();
    for (pos, raw) in cells.iter().enumerate() {
        let name = match map {
            Some(m) => m.canonical(raw),
            None => raw,
        };
        match CANONICAL_COLUMNS.iter().find(|c| **c == name) {
            Some(canonical) => {
                if positions.insert(canonical, pos).is_some() {
                    return Err(IngestError::DuplicateColumn {
                        name: (*canonical).to_string(),
                    });
                }
            }
            None => unknown.push(raw.to_string()),
        }
    }
    for required in REQUIRED_COLUMNS {
        if !positions.contains_key(required) {
            return Err(IngestError::MissingRequiredColumn(required.to_string()));
        }
    }
    Ok((
        ColumnIndex {
            positions,
            width: cells.len(),
        },
        unknown,
    ))
}

fn parse_row(line: &str, line_no: usize, columns: &ColumnIndex) -> Result<GazeSample, IngestError> {
    let cells: Vec<&str> = line.split('\t').collect();
    if cells.len() != columns.width {
        return Err(IngestError::MalformedRow {
            line: line_no,
            reason: format!("expected {} cells, found {}", columns.width, cells.len()),
        });
    }

    let cell = |name: &str| -> &str { columns.get(name).map(|pos| cells[pos]).unwrap_or_default() };
    let malformed = |reason: String| IngestError::MalformedRow {
        line: line_no,
        reason,
    };

    let req_int = |name: &str| -> Result<i64, IngestError> {
        let raw = cell(name);
        if raw.is_empty() {
            return Err(malformed(format!("`{name}` cell is empty")));
        }
        raw.parse::<i64>()
            .map_err(|_| malformed(format!("`{name}`: `{raw}` is not an integer")))
    };
    let opt_int = |name: &str| -> Result<Option<i64>, IngestError> {
        let raw = cell(name);
        if raw.is_empty() {
            return Ok(None);
        }
        raw.parse::<i64>()
            .map(Some)
            .map_err(|_| malformed(format!("`{name}`: `{raw}` is not an integer")))
    };
    let opt_float = |name: &str| -> Result<Option<f64>, IngestError> {
        let raw = cell(name);
        if raw.is_empty() {
            return Ok(None);
        }
        let value = raw
            .parse::<f64>()
            .map_err(|_| malformed(format!("`{name}`: `{raw}` is not a number")))?;
        if !value.is_finite() {
            return Err(malformed(format!("`{name}`: `{raw}` is not finite")));
        }
        Ok(Some(value))
    };

    let event_index_raw = cell("event_index");
    if event_index_raw.is_empty() {
        return Err(malformed("`event_index` cell is empty".into()));
    }
    let event_index = event_index_raw.parse::<u64>().map_err(|_| {
        malformed(format!(
            "`event_index`: `{event_index_raw}` is not a non-negative integer"
        ))
    })?;

    let movement_type = {
        let raw = cell("movement_type");
        if raw.is_empty() {
            None
        } else {
            Some(MovementType::parse_cell(raw).ok_or_else(|| {
                malformed(format!(
                    "`movement_type`: `{raw}` is not Fixation|Saccade|Unclassified"
                ))
            })?)
        }
    };

    Ok(GazeSample {
        event_index,
        start_time_us: req_int("start_time_us")?,
        end_time_us: req_int("end_time_us")?,
        gaze_x_px: opt_float("gaze_x_px")?,
        gaze_y_px: opt_float("gaze_y_px")?,
        deviation_x_px: opt_float("deviation_x_px")?,
        deviation_y_px: opt_float("deviation_y_px")?,
        gaze3d_x: opt_float("gaze3d_x")?,
        gaze3d_y: opt_float("gaze3d_y")?,
        gaze3d_z: opt_float("gaze3d_z")?,
        gaze_dir_left_x: opt_float("gaze_dir_left_x")?,
        gaze_dir_left_y: opt_float("gaze_dir_left_y")?,
        gaze_dir_left_z: opt_float("gaze_dir_left_z")?,
        gaze_dir_right_x: opt_float("gaze_dir_right_x")?,
        gaze_dir_right_y: opt_float("gaze_dir_right_y")?,
        gaze_dir_right_z: opt_float("gaze_dir_right_z")?,
        pupil_pos_left_x: opt_float("pupil_pos_left_x")?,
        pupil_pos_left_y: opt_float("pupil_pos_left_y")?,
        pupil_pos_left_z: opt_float("pupil_pos_left_z")?,
        pupil_pos_right_x: opt_float("pupil_pos_right_x")?,
        pupil_pos_right_y: opt_float("pupil_pos_right_y")?,
        pupil_pos_right_z: opt_float("pupil_pos_right_z")?,
        pupil_diam_left_mm: opt_float("pupil_diam_left_mm")?,
        pupil_diam_right_mm: opt_float("pupil_diam_right_mm")?,
        pupil_diam_filtered_mm: opt_float("pupil_diam_filtered_mm")?,
        movement_type,
        event_duration_us: opt_int("event_duration_us")?,
        movement_type_index: opt_int("movement_type_index")?,
        fixation_x_px: opt_float("fixation_x_px")?,
        fixation_y_px: opt_float("fixation_y_px")?,
        gyro_x: opt_float("gyro_x")?,
        gyro_y: opt_float("gyro_y")?,
        gyro_z: opt_float("gyro_z")?,
        accel_x: opt_float("accel_x")?,
        accel_y: opt_float("accel_y")?,
        accel_z: opt_float("accel_z")?,
    })
}

/// Serialize a recording back to canonical TSV.
///
/// Integers are written verbatim; floats use the shortest representation
/// that reparses to the same value, so parse -> serialize -> parse is
/// field-exact. Absent values become empty cells.
pub fn serialize_gaze_export(rec: &Recording) -> String {
    let mut out = String::new();
    out.push_str(&CANONICAL_COLUMNS.join("\t"));
    out.push('\n');
    for s in &rec.samples {
        let f = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        let i = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_default();
        let cells: Vec<String> = vec![
            s.event_index.to_string(),
            s.start_time_us.to_string(),
            s.end_time_us.to_string(),
            f(s.gaze_x_px),
            f(s.gaze_y_px),
            f(s.deviation_x_px),
            f(s.deviation_y_px),
            f(s.gaze3d_x),
            f(s.gaze3d_y),
            f(s.gaze3d_z),
            f(s.gaze_dir_left_x),
            f(s.gaze_dir_left_y),
            f(s.gaze_dir_left_z),
            f(s.gaze_dir_right_x),
            f(s.gaze_dir_right_y),
            f(s.gaze_dir_right_z),
            f(s.pupil_pos_left_x),
            f(s.pupil_pos_left_y),
            f(s.pupil_pos_left_z),
            f(s.pupil_pos_right_x),
            f(s.pupil_pos_right_y),
            f(s.pupil_pos_right_z),
            f(s.pupil_diam_left_mm),
            f(s.pupil_diam_right_mm),
            f(s.pupil_diam_filtered_mm),
            s.movement_type.map(|m| m.to_string()).unwrap_or_default(),
            i(s.event_duration_us),
            i(s.movement_type_index),
            f(s.fixation_x_px),
            f(s.fixation_y_px),
            f(s.gyro_x),
            f(s.gyro_y),
            f(s.gyro_z),
            f(s.accel_x),
            f(s.accel_y),
            f(s.accel_z),
        ];
        out.push_str(&cells.join("\t"));
        out.push('\n');
    }
    out
}

/// How validation findings are graded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strictness {
    Strict,
    Lenient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// `end_time_us` precedes `start_time_us` within a sample.
    TimeOrder,
    /// `start_time_us` decreases between consecutive samples.
    NonMonotonic,
    /// `event_duration_us` negative, or inconsistent with the time span of a
    /// single-sample event.
    DurationMismatch,
    /// Gaze coordinate outside `[0, frame_width] x [0, frame_height]`.
    OutOfFrame,
    /// A fully-present gaze direction vector with norm outside `[0.9, 1.1]`.
    DirectionNorm,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ViolationKind::TimeOrder => "TimeOrder",
            ViolationKind::NonMonotonic => "NonMonotonic",
            ViolationKind::DurationMismatch => "DurationMismatch",
            ViolationKind::OutOfFrame => "OutOfFrame",
            ViolationKind::DirectionNorm => "DirectionNorm",
        };
        f.write_str(name)
    }
}

/// One invariant violation, tied to the sample (and presumed file line) it
/// was found on. Canonical exports carry the header on line 1, so data row
/// `i` sits on file line `i + 2`.
#[derive(Debug, Clone)]
pub struct Finding {
    pub sample_index: usize,
    pub kind: ViolationKind,
    pub detail: String,
}

impl Finding {
    pub fn file_line(&self) -> usize {
        self.sample_index + 2
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at sample {} (line {}): {}",
            self.kind,
            self.sample_index,
            self.file_line(),
            self.detail
        )
    }
}

/// Every invariant violation found in a recording.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub strictness: Strictness,
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    /// Under [`Strictness::Strict`] any finding is an error; under
    /// [`Strictness::Lenient`] findings are warnings only.
    pub fn has_errors(&self) -> bool {
        self.strictness == Strictness::Strict && !self.findings.is_empty()
    }
}

/// Check a recording against the sample and recording invariants.
pub fn validate_recording(rec: &Recording, strictness: Strictness) -> ValidationReport {
    let mut findings = Vec::new();
    let width = rec.frame_width_px as f64;
    let height = rec.frame_height_px as f64;

    let mut event_row_counts: BTreeMap<u64, usize> = BTreeMap::new();
    for s in &rec.samples {
        *event_row_counts.entry(s.event_index).or_insert(0) += 1;
    }

    let mut prev_start: Option<i64> = None;
    for (idx, s) in rec.samples.iter().enumerate() {
        if s.end_time_us < s.start_time_us {
            findings.push(Finding {
                sample_index: idx,
                kind: ViolationKind::TimeOrder,
                detail: format!(
                    "end_time_us {} precedes start_time_us {}",
                    s.end_time_us, s.start_time_us
                ),
            });
        }
        if let Some(prev) = prev_start {
            if s.start_time_us < prev {
                findings.push(Finding {
                    sample_index: idx,
                    kind: ViolationKind::NonMonotonic,
                    detail: format!("start_time_us {} after {}", s.start_time_us, prev),
                });
            }
        }
        prev_start = Some(s.start_time_us);

        if let Some(duration) = s.event_duration_us {
            if duration < 0 {
                findings.push(Finding {
                    sample_index: idx,
                    kind: ViolationKind::DurationMismatch,
                    detail: format!("event_duration_us {duration} is negative"),
                });
            } else if s.movement_type.is_some()
                && event_row_counts.get(&s.event_index) == Some(&1)
                && duration != s.end_time_us - s.start_time_us
            {
                findings.push(Finding {
                    sample_index: idx,
                    kind: ViolationKind::DurationMismatch,
                    detail: format!(
                        "single-sample event duration {} != end - start = {}",
                        duration,
                        s.end_time_us - s.start_time_us
                    ),
                });
            }
        }

        if let Some(x) = s.gaze_x_px {
            if !(0.0..=width).contains(&x) {
                findings.push(Finding {
                    sample_index: idx,
                    kind: ViolationKind::OutOfFrame,
                    detail: format!("gaze_x_px {x} outside [0, {width}]"),
                });
            }
        }
        if let Some(y) = s.gaze_y_px {
            if !(0.0..=height).contains(&y) {
                findings.push(Finding {
                    sample_index: idx,
                    kind: ViolationKind::OutOfFrame,
                    detail: format!("gaze_y_px {y} outside [0, {height}]"),
                });
            }
        }

        for (label, x, y, z) in [
            (
                "left",
                s.gaze_dir_left_x,
                s.gaze_dir_left_y,
                s.gaze_dir_left_z,
            ),
            (
                "right",
                s.gaze_dir_right_x,
                s.gaze_dir_right_y,
                s.gaze_dir_right_z,
            ),
        ] {
            if let (Some(x), Some(y), Some(z)) = (x, y, z) {
                let norm = (x * x + y * y + z * z).sqrt();
                if !(0.9..=1.1).contains(&norm) {
                    findings.push(Finding {
                        sample_index: idx,
                        kind: ViolationKind::DirectionNorm,
                        detail: format!("gaze_dir_{label} norm {norm:.6} outside [0.9, 1.1]"),
                    });
                }
            }
        }
    }

    ValidationReport {
        strictness,
        findings,
    }
}
