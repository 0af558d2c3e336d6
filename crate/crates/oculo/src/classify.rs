//! Velocity computation and fixation/saccade classification.
//!
//! Two routes produce [`GazeEvent`] lists: [`classify_ivt`] applies a
//! velocity-threshold rule to the gaze signal, and [`events_from_labels`]
//! trusts labels already present in the recording. Pixel deltas are converted
//! to visual-angle degrees with an equirectangular scale (360 degrees per
//! frame width, 180 per height), so thresholds are resolution-independent.
//!
//! Classification rule, in full:
//! * a sample's velocity is defined only when it and its predecessor both
//!   carry gaze coordinates; missing gaze breaks adjacency,
//! * the first sample copies the second sample's velocity,
//! * a sample with a velocity below the threshold is a fixation, at or above
//!   it a saccade, and with no velocity (missing gaze, or an isolated sample
//!   between gaps) unclassified,
//! * consecutive same-label samples merge into one event,
//! * merged fixations shorter than the minimum fixation duration are
//!   relabeled unclassified in place; event boundaries do not move.

use thiserror::Error;

use crate::ingest::{MovementType, Recording};

/// A contiguous run of samples sharing one movement type.
#[derive(Debug, Clone, PartialEq)]
pub struct GazeEvent {
    pub event_id: u64,
    pub movement_type: MovementType,
    pub start_time_us: i64,
    pub end_time_us: i64,
    pub duration_us: i64,
    /// Mean of member gaze points; `None` when no member carries gaze.
    pub centroid_x_px: Option<f64>,
    pub centroid_y_px: Option<f64>,
    pub sample_count: usize,
    /// Index of the first member sample in the source recording.
    pub first_sample_index: usize,
}

impl GazeEvent {
    /// Member sample range in the source recording.
    pub fn sample_range(&self) -> std::ops::Range<usize> {
        self.first_sample_index..self.first_sample_index + self.sample_count
    }
}

/// Which classification route to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ClassifierMode {
    /// Trust `movement_type` labels present in the recording.
    RecordedLabels,
    /// Velocity-threshold classification from gaze coordinates.
    #[default]
    VelocityThreshold,
}

/// Classifier settings. Defaults: 30 deg/s threshold, 60 ms minimum
/// fixation, degree conversion for a 1920x1080 equirectangular frame.
#[derive(Debug, Clone)]
pub struct ClassifierConfig {
    pub mode: ClassifierMode,
    pub velocity_threshold_deg_per_s: f64,
    pub min_fixation_duration_us: i64,
    pub deg_per_px_x: f64,
    pub deg_per_px_y: f64,
}

impl ClassifierConfig {
    /// Degree conversion for an equirectangular frame of the given size.
    pub fn for_frame(frame_width_px: u32, frame_height_px: u32) -> Self {
        ClassifierConfig {
            mode: ClassifierMode::default(),
            velocity_threshold_deg_per_s: 30.0,
            min_fixation_duration_us: 60_000,
            deg_per_px_x: 360.0 / frame_width_px as f64,
            deg_per_px_y: 180.0 / frame_height_px as f64,
        }
    }

    pub fn for_recording(rec: &Recording) -> Self {
        Self::for_frame(rec.frame_width_px, rec.frame_height_px)
    }
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        Self::for_frame(1920, 1080)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("recording has fewer than 2 samples with gaze coordinates")]
    TooFewSamples,
    #[error("non-positive time delta between samples {} and {index}", index - 1)]
    ZeroTimeDelta { index: usize },
    #[error("sample {index} has no movement_type label")]
    MissingLabel { index: usize },
}

/// Per-sample angular velocity in degrees per second.
///
/// `velocity[i]` for `i >= 1` spans samples `i-1 -> i`; it is present only
/// when both samples carry gaze. `velocity[0]` copies `velocity[1]`.
pub fn compute_velocities(
    rec: &Recording,
    cfg: &ClassifierConfig,
) -> Result<Vec<Option<f64>>, ClassifyError> {
    let samples = &rec.samples;
    let present = samples.iter().filter(|s| s.has_gaze()).count();
    if present < 2 {
        return Err(ClassifyError::TooFewSamples);
    }

    let mut velocities = vec![None; samples.len()];
    for i in 1..samples.len() {
        let (prev, cur) = (&samples[i - 1], &samples[i]);
        if let (Some((x0, y0)), Some((x1, y1))) = (prev.gaze_point(), cur.gaze_point()) {
            let dt_us = cur.start_time_us - prev.start_time_us;
            if dt_us <= 0 {
                return Err(ClassifyError::ZeroTimeDelta { index: i });
            }
            let dx_deg = (x1 - x0) * cfg.deg_per_px_x;
            let dy_deg = (y1 - y0) * cfg.deg_per_px_y;
            let dist_deg = (dx_deg * dx_deg + dy_deg * dy_deg).sqrt();
            velocities[i] = Some(dist_deg / (dt_us as f64 / 1_000_000.0));
        }
    }
    velocities[0] = velocities[1];
    Ok(velocities)
}

/// Velocity-threshold classification.
///
/// Returns time-ordered, non-overlapping events partitioning every sample.
/// Recordings with fewer than two gaze-bearing samples degrade to
/// unclassified events instead of erroring.
pub fn classify_ivt(
    rec: &Recording,
    cfg: &ClassifierConfig,
) -> Result<Vec<GazeEvent>, ClassifyError> {
    let samples = &rec.samples;
    if samples.is_empty() {
        return Ok(Vec::new());
    }

    let present = samples.iter().filter(|s| s.has_gaze()).count();
    let labels: Vec<MovementType> = if present < 2 {
        vec![MovementType::Unclassified; samples.len()]
    } else {
        compute_velocities(rec, cfg)?
            .iter()
            .map(|v| match v {
                None => MovementType::Unclassified,
                Some(v) if *v < cfg.velocity_threshold_deg_per_s => MovementType::Fixation,
                Some(_) => MovementType::Saccade,
            })
            .collect()
    };

    let mut events = merge_runs(rec, &labels, |a, b| a == b);
    for event in &mut events {
        if event.movement_type == MovementType::Fixation
            && event.duration_us < cfg.min_fixation_duration_us
        {
            event.movement_type = MovementType::Unclassified;
        }
    }
    Ok(events)
}

/// Build events from recorder-supplied labels.
///
/// Consecutive samples sharing `movement_type` and `movement_type_index`
/// (compared as options: two absent indices match) merge into one event.
pub fn events_from_labels(rec: &Recording) -> Result<Vec<GazeEvent>, ClassifyError> {
    let samples = &rec.samples;
    if samples.is_empty() {
        return Ok(Vec::new());
    }
    let mut keys = Vec::with_capacity(samples.len());
    for (index, s) in samples.iter().enumerate() {
        let label = s
            .movement_type
            .ok_or(ClassifyError::MissingLabel { index })?;
        keys.push((label, s.movement_type_index));
    }
    Ok(merge_runs(rec, &keys, |a, b| a == b))
}

/// Merge consecutive samples whose keys compare equal into events.
fn merge_runs<K>(rec: &Recording, keys: &[K], same: impl Fn(&K, &K) -> bool) -> Vec<GazeEvent>
where
    K: RunLabel,
{
    let samples = &rec.samples;
    let mut events = Vec::new();
    let mut run_start = 0usize;
    for i in 1..=samples.len() {
        if i == samples.len() || !same(&keys[i], &keys[run_start]) {
            events.push(build_event(
                events.len() as u64,
                keys[run_start].movement_type(),
                run_start,
                i,
                rec,
            ));
            run_start = i;
        }
    }
    events
}

trait RunLabel {
    fn movement_type(&self) -> MovementType;
}

impl RunLabel for MovementType {
    fn movement_type(&self) -> MovementType {
        *self
    }
}

impl RunLabel for (MovementType, Option<i64>) {
    fn movement_type(&self) -> MovementType {
        self.0
    }
}

fn build_event(
    event_id: u64,
    movement_type: MovementType,
    start: usize,
    end: usize,
    rec: &Recording,
) -> GazeEvent {
    let members = &rec.samples[start..end];
    let start_time_us = members[0].start_time_us;
    let end_time_us = members[members.len() - 1].end_time_us;

    let gaze: Vec<(f64, f64)> = members.iter().filter_map(|s| s.gaze_point()).collect();
    let (centroid_x_px, centroid_y_px) = if gaze.is_empty() {
        (None, None)
    } else {
        let n = gaze.len() as f64;
        (
            Some(gaze.iter().map(|p| p.0).sum::<f64>() / n),
            Some(gaze.iter().map(|p| p.1).sum::<f64>() / n),
        )
    };

    GazeEvent {
        event_id,
        movement_type,
        start_time_us,
        end_time_us,
        duration_us: end_time_us - start_time_us,
        centroid_x_px,
        centroid_y_px,
        sample_count: end - start,
        first_sample_index: start,
    }
}

/// Events as TSV: `event_id, movement_type, start_time_us, end_time_us,
/// duration_us, centroid_x_px, centroid_y_px, sample_count`.
pub fn export_events_tsv(events: &[GazeEvent]) -> String {
    let mut out = String::from(
        "event_id\tmovement_type\tstart_time_us\tend_time_us\tduration_us\tcentroid_x_px\tcentroid_y_px\tsample_count\n",
    );
    for e in events {
        let cx = e.centroid_x_px.map(|v| v.to_string()).unwrap_or_default();
        let cy = e.centroid_y_px.map(|v| v.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            e.event_id,
            e.movement_type,
            e.start_time_us,
            e.end_time_us,
            e.duration_us,
            cx,
            cy,
            e.sample_count
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::GazeSample;

    fn sample(start: i64, end: i64, gaze: Option<(f64, f64)>) -> GazeSample {
        GazeSample {
            event_index: 0,
            start_time_us: start,
            end_time_us: end,
            gaze_x_px: gaze.map(|g| g.0),
            gaze_y_px: gaze.map(|g| g.1),
            ..GazeSample::default()
        }
    }

    fn recording(samples: Vec<GazeSample>) -> Recording {
        Recording {
            recording_id: "r".into(),
            participant_id: "p".into(),
            sample_rate_hz: 50,
            frame_width_px: 1920,
            frame_height_px: 1080,
            samples,
        }
    }

    /// Samples every 20 ms at the given pixel positions.
    fn stream(points: &[Option<(f64, f64)>]) -> Recording {
        recording(
            points
                .iter()
                .enumerate()
                .map(|(i, p)| sample(i as i64 * 20_000, i as i64 * 20_000 + 19_999, *p))
                .collect(),
        )
    }

    #[test]
    fn stationary_pair_has_zero_velocity() {
        let rec = stream(&[Some((300.0, 300.0)), Some((300.0, 300.0))]);
        let v = compute_velocities(&rec, &ClassifierConfig::default()).unwrap();
        assert_eq!(v, vec![Some(0.0), Some(0.0)]);
    }

    #[test]
    fn horizontal_jump_matches_equirectangular_arithmetic() {
        // 96 px of a 1920 px frame = 18 degrees; over 100 ms that is 180 deg/s.
        let rec = recording(vec![
            sample(0, 1, Some((100.0, 500.0))),
            sample(100_000, 100_001, Some((196.0, 500.0))),
        ]);
        let v = compute_velocities(&rec, &ClassifierConfig::default()).unwrap();
        assert!((v[1].unwrap() - 180.0).abs() < 1e-9);
        assert_eq!(v[0], v[1]);
    }

    #[test]
    fn velocities_match_direct_recomputation() {
        // Brute-force oracle: recompute each pair independently.
        let mut state = 0x1234_5678_u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let points: Vec<Option<(f64, f64)>> = (0..50)
            .map(|_| {
                if next() < 0.15 {
                    None
                } else {
                    Some((next() * 1920.0, next() * 1080.0))
                }
            })
            .collect();
        let rec = stream(&points);
        let cfg = ClassifierConfig::default();
        let got = compute_velocities(&rec, &cfg).unwrap();

        for i in 1..points.len() {
            let expected = match (points[i - 1], points[i]) {
                (Some((x0, y0)), Some((x1, y1))) => {
                    let dx = (x1 - x0) * 360.0 / 1920.0;
                    let dy = (y1 - y0) * 180.0 / 1080.0;
                    Some((dx * dx + dy * dy).sqrt() / 0.02)
                }
                _ => None,
            };
            match (got[i], expected) {
                (Some(a), Some(b)) => {
                    assert!(
                        (a - b).abs() <= 1e-9 * b.abs().max(1.0),
                        "index {i}: {a} vs {b}"
                    )
                }
                (a, b) => assert_eq!(a, b, "index {i}"),
            }
        }
        assert_eq!(got[0], got[1]);
    }

    #[test]
    fn too_few_gaze_samples_is_an_error() {
        let rec = stream(&[Some((1.0, 1.0)), None, None]);
        assert_eq!(
            compute_velocities(&rec, &ClassifierConfig::default()),
            Err(ClassifyError::TooFewSamples)
        );
    }

    #[test]
    fn zero_time_delta_is_an_error() {
        let rec = recording(vec![
            sample(0, 1, Some((1.0, 1.0))),
            sample(0, 1, Some((2.0, 2.0))),
        ]);
        assert_eq!(
            compute_velocities(&rec, &ClassifierConfig::default()),
            Err(ClassifyError::ZeroTimeDelta { index: 1 })
        );
    }

    #[test]
    fn still_gaze_is_one_fixation() {
        let rec = stream(&[Some((640.0, 360.0)); 10]);
        let events = classify_ivt(&rec, &ClassifierConfig::default()).unwrap();
        assert_eq!(events.len(), 1);
        assert_eq!(events[0].movement_type, MovementType::Fixation);
        assert_eq!(events[0].sample_count, 10);
        assert_eq!(events[0].centroid_x_px, Some(640.0));
    }

    #[test]
    fn fixation_saccade_fixation_structure_is_recovered() {
        // 8 samples fixating, one violent jump, 8 samples fixating elsewhere.
        let mut points = vec![Some((200.0, 200.0)); 8];
        points.push(Some((1700.0, 900.0)));
        points.extend(vec![Some((1700.0, 900.0)); 8]);
        // Jitter-free fixations; the jump spans one inter-sample step.
        let rec = stream(&points);
        let events = classify_ivt(&rec, &ClassifierConfig::default()).unwrap();
        let kinds: Vec<MovementType> = events.iter().map(|e| e.movement_type).collect();
        assert_eq!(
            kinds,
            vec![
                MovementType::Fixation,
                MovementType::Saccade,
                MovementType::Fixation
            ]
        );
        assert_eq!(events[1].sample_count, 1);
    }

    #[test]
    fn all_missing_gaze_is_one_unclassified_event() {
        let rec = stream(&[None; 6]);
        let events = classify_ivt(&rec, &ClassifierConfig::default()).unwrap();
        assert_eq!(events.len(), 1);
        assert_eq!(events[0].movement_type, MovementType::Unclassified);
        assert_eq!(events[0].sample_count, 6);
        assert_eq!(events[0].centroid_x_px, None);
    }

    #[test]
    fn short_fixations_are_relabeled_unclassified() {
        // Two samples (40 ms) of stillness between saccade jumps.
        let points = vec![
            Some((0.0, 0.0)),
            Some((900.0, 500.0)),
            Some((900.0, 500.0)),
            Some((0.0, 0.0)),
        ];
        let rec = stream(&points);
        let events = classify_ivt(&rec, &ClassifierConfig::default()).unwrap();
        // Jump, 40 ms still run (too short to stay a fixation), jump.
        assert!(events
            .iter()
            .all(|e| e.movement_type != MovementType::Fixation));
        assert!(events
            .iter()
            .any(|e| e.movement_type == MovementType::Unclassified));
    }

    #[test]
    fn events_partition_every_sample() {
        let points: Vec<Option<(f64, f64)>> = (0..40)
            .map(|i| {
                if i % 7 == 3 {
                    None
                } else {
                    Some(((i * 37 % 1920) as f64, (i * 53 % 1080) as f64))
                }
            })
            .collect();
        let rec = stream(&points);
        let events = classify_ivt(&rec, &ClassifierConfig::default()).unwrap();
        let total: usize = events.iter().map(|e| e.sample_count).sum();
        assert_eq!(total, rec.samples.len());
        let mut next_index = 0;
        for e in &events {
            assert_eq!(e.first_sample_index, next_index);
            next_index += e.sample_count;
        }
    }

    #[test]
    fn label_runs_become_events() {
        let mut rec = stream(&[Some((1.0, 1.0)); 4]);
        let labels = [
            MovementType::Fixation,
            MovementType::Fixation,
            MovementType::Saccade,
            MovementType::Fixation,
        ];
        for (s, l) in rec.samples.iter_mut().zip(labels) {
            s.movement_type = Some(l);
        }
        let events = events_from_labels(&rec).unwrap();
        assert_eq!(events.len(), 3);
        assert_eq!(events[0].sample_count, 2);
        assert_eq!(events[1].movement_type, MovementType::Saccade);
        assert_eq!(events[2].movement_type, MovementType::Fixation);
    }

    #[test]
    fn uniform_labels_merge_to_one_event() {
        let mut rec = stream(&[Some((1.0, 1.0)); 5]);
        for s in rec.samples.iter_mut() {
            s.movement_type = Some(MovementType::Saccade);
        }
        let events = events_from_labels(&rec).unwrap();
        assert_eq!(events.len(), 1);
        assert_eq!(events[0].sample_count, 5);
    }

    #[test]
    fn movement_type_index_splits_runs() {
        // Run-length oracle: same movement type, index 1,1,2,2 -> two events.
        let mut rec = stream(&[Some((1.0, 1.0)); 4]);
        for (i, s) in rec.samples.iter_mut().enumerate() {
            s.movement_type = Some(MovementType::Fixation);
            s.movement_type_index = Some(if i < 2 { 1 } else { 2 });
        }
        let events = events_from_labels(&rec).unwrap();
        assert_eq!(events.len(), 2);
        assert!(events
            .iter()
            .all(|e| e.movement_type == MovementType::Fixation));
    }

    #[test]
    fn missing_label_is_an_error() {
        let rec = stream(&[Some((1.0, 1.0)); 2]);
        assert_eq!(
            events_from_labels(&rec),
            Err(ClassifyError::MissingLabel { index: 0 })
        );
    }

    #[test]
    fn translation_leaves_classification_unchanged() {
        let points: Vec<Option<(f64, f64)>> = (0..30)
            .map(|i| Some(((100 + i * 13 % 400) as f64, (200 + i * 29 % 300) as f64)))
            .collect();
        let rec = stream(&points);
        let shifted = stream(
            &points
                .iter()
                .map(|p| p.map(|(x, y)| (x + 111.0, y + 77.0)))
                .collect::<Vec<_>>(),
        );
        let cfg = ClassifierConfig::default();
        let a = classify_ivt(&rec, &cfg).unwrap();
        let b = classify_ivt(&shifted, &cfg).unwrap();
        let kinds = |ev: &[GazeEvent]| {
            ev.iter()
                .map(|e| (e.movement_type, e.sample_count))
                .collect::<Vec<_>>()
        };
        assert_eq!(kinds(&a), kinds(&b));
    }

    #[test]
    fn events_export_as_tsv() {
        let rec = stream(&[Some((10.0, 20.0)); 4]);
        let events = classify_ivt(&rec, &ClassifierConfig::default()).unwrap();
        let tsv = export_events_tsv(&events);
        let mut lines = tsv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "event_id\tmovement_type\tstart_time_us\tend_time_us\tduration_us\tcentroid_x_px\tcentroid_y_px\tsample_count"
        );
        assert_eq!(
            lines.next().unwrap(),
            "0\tFixation\t0\t79999\t79999\t10\t20\t4"
        );
    }
}
