//! Shared test support: a deterministic PRNG, synthetic stream and
//! cartogram generators, the report-table rows, and an independent
//! single-pass classifier used as the oracle for the library classifier.
#![allow(dead_code)]

use oculo::ingest::{GazeSample, Recording};

/// SplitMix64: tiny, seedable, stable across platforms and releases.
pub struct Split64(pub u64);

impl Split64 {
    pub fn new(seed: u64) -> Split64 {
        Split64(seed)
    }

    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn f64(&mut self) -> f64 {
        (self.next() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in `[lo, hi)`.
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + self.f64() * (hi - lo)
    }

    /// Uniform integer in `[0, n)`.
    pub fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }
}

/// `(start_us, end_us, gaze)` triples, the raw shape of a synthetic stream.
pub type RawSample = (i64, i64, Option<(f64, f64)>);

pub fn recording_from(raw: &[RawSample]) -> Recording {
    Recording {
        recording_id: "synthetic".into(),
        participant_id: "test".into(),
        sample_rate_hz: 50,
        frame_width_px: 1920,
        frame_height_px: 1080,
        samples: raw
            .iter()
            .map(|(start, end, gaze)| GazeSample {
                event_index: 0,
                start_time_us: *start,
                end_time_us: *end,
                gaze_x_px: gaze.map(|g| g.0),
                gaze_y_px: gaze.map(|g| g.1),
                ..GazeSample::default()
            })
            .collect(),
    }
}

/// Synthetic gaze stream with planted structure: fixation blocks with
/// sub-threshold jitter, large saccade jumps, missing-gaze gaps and
/// occasional too-short fixations. Samples tick every 20 ms.
pub fn synthetic_stream(rng: &mut Split64, max_samples: usize) -> Vec<RawSample> {
    let target = 50 + rng.below(max_samples.saturating_sub(50).max(1));
    let mut samples: Vec<RawSample> = Vec::with_capacity(target);
    let dt = 20_000i64;
    let mut t = 0i64;
    let mut pos = (rng.range(100.0, 1800.0), rng.range(60.0, 1000.0));

    while samples.len() < target {
        let room = target - samples.len();
        match rng.below(10) {
            0..=5 => {
                // Fixation block: jitter within +/-1 px keeps velocity far
                // below a 30 deg/s threshold at 50 Hz.
                let len = (4 + rng.below(56)).min(room);
                for _ in 0..len {
                    let jitter = (rng.range(-1.0, 1.0), rng.range(-1.0, 1.0));
                    samples.push((t, t + dt - 1, Some((pos.0 + jitter.0, pos.1 + jitter.1))));
                    t += dt;
                }
            }
            6 | 7 => {
                // Saccade: one to three jumps of at least 150 px.
                let len = (1 + rng.below(3)).min(room);
                for _ in 0..len {
                    let mut next = (rng.range(100.0, 1800.0), rng.range(60.0, 1000.0));
                    if (next.0 - pos.0).abs() < 150.0 && (next.1 - pos.1).abs() < 150.0 {
                        next.0 = if pos.0 < 960.0 {
                            pos.0 + 400.0
                        } else {
                            pos.0 - 400.0
                        };
                    }
                    samples.push((t, t + dt - 1, Some(next)));
                    pos = next;
                    t += dt;
                }
            }
            8 => {
                // Missing-gaze gap.
                let len = (1 + rng.below(15)).min(room);
                for _ in 0..len {
                    samples.push((t, t + dt - 1, None));
                    t += dt;
                }
            }
            _ => {
                // Deliberately short still run: a fixation candidate below
                // the minimum duration.
                let len = (1 + rng.below(2)).min(room);
                for _ in 0..len {
                    samples.push((t, t + dt - 1, Some(pos)));
                    t += dt;
                }
            }
        }
    }
    samples
}

/// One event found by the reference classifier.
#[derive(Debug, Clone, PartialEq)]
pub struct RefEvent {
    pub label: &'static str,
    pub first_index: usize,
    pub count: usize,
    pub start_us: i64,
    pub end_us: i64,
}

/// Independent single-pass velocity-threshold classifier.
///
/// Implements the documented contract from scratch: velocities defined only
/// between consecutive gaze-bearing samples (NaN marks absence here), index
/// 0 copying index 1, thresholding, run-length merging, then relabeling of
/// short fixation runs without moving boundaries.
pub fn reference_ivt(
    samples: &[RawSample],
    threshold_deg_s: f64,
    min_fixation_us: i64,
    deg_per_px_x: f64,
    deg_per_px_y: f64,
) -> Vec<RefEvent> {
    let n = samples.len();
    if n == 0 {
        return Vec::new();
    }

    let gaze_count = samples.iter().filter(|s| s.2.is_some()).count();
    let labels: Vec<&'static str> = if gaze_count < 2 {
        vec!["Unclassified"; n]
    } else {
        let mut velocity = vec![f64::NAN; n];
        for i in 1..n {
            if let (Some(a), Some(b)) = (samples[i - 1].2, samples[i].2) {
                let dt_us = samples[i].0 - samples[i - 1].0;
                assert!(dt_us > 0, "generator guarantees increasing timestamps");
                let dx = (b.0 - a.0) * deg_per_px_x;
                let dy = (b.1 - a.1) * deg_per_px_y;
                velocity[i] = (dx * dx + dy * dy).sqrt() / (dt_us as f64 / 1_000_000.0);
            }
        }
        velocity[0] = velocity[1];
        velocity
            .iter()
            .map(|v| {
                if v.is_nan() {
                    "Unclassified"
                } else if *v < threshold_deg_s {
                    "Fixation"
                } else {
                    "Saccade"
                }
            })
            .collect()
    };

    let mut events = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && labels[j] == labels[i] {
            j += 1;
        }
        events.push(RefEvent {
            label: labels[i],
            first_index: i,
            count: j - i,
            start_us: samples[i].0,
            end_us: samples[j - 1].1,
        });
        i = j;
    }
    for event in &mut events {
        if event.label == "Fixation" && event.end_us - event.start_us < min_fixation_us {
            event.label = "Unclassified";
        }
    }
    events
}

/// The 15 published per-scene rows: `(scene, fixations, saccades,
/// unclassified)`.
pub fn table_rows() -> Vec<(&'static str, usize, usize, usize)> {
    vec![
        ("Эгль", 856, 42, 0),
        ("Аванш", 862, 50, 1),
        ("Шато-д'О", 785, 22, 0),
        ("Жура Водуа (Шассерон)", 560, 36, 0),
        ("Лозанна (Собор)", 1435, 70, 1),
        ("Лозанна (Уши)", 1462, 56, 0),
        ("Лаво-ЮНЕСКО", 1187, 50, 0),
        ("Ле Дьяблере (Ледник 3000)", 2105, 154, 3),
        ("Лейзин (Куклос)", 1125, 52, 5),
        ("Монтре (Шильонский замок)", 508, 28, 0),
        ("Монтрё (Рош-де-Нэ)", 1776, 106, 1),
        ("Морж", 760, 48, 0),
        ("Ньон", 609, 57, 0),
        ("Вали де Жу", 689, 46, 0),
        ("Ивердон-ле-Бен", 496, 41, 0),
    ]
}

/// Background of seen stimuli on a regular polar grid, avoiding collisions
/// with anything planted later (meridians offset by 7.3 deg).
pub fn seen_background() -> Vec<oculo::perimetry::StimulusPoint> {
    let mut points = Vec::new();
    for ring in 1..=6 {
        for step in 0..12 {
            points.push(oculo::perimetry::StimulusPoint {
                meridian_deg: -180.0 + 30.0 * step as f64 + 7.3,
                eccentricity_deg: ring as f64 * 5.0 + 0.21,
                seen: true,
                intensity_db: Some(24.0),
            });
        }
    }
    points
}

pub fn cartogram_with(
    eye: oculo::perimetry::Eye,
    points: Vec<oculo::perimetry::StimulusPoint>,
) -> oculo::perimetry::Cartogram {
    oculo::perimetry::Cartogram {
        patient_id: "SYN".into(),
        eye,
        age_years: 55,
        sex: oculo::perimetry::Sex::Unspecified,
        diagnosis_label: None,
        points,
    }
}
