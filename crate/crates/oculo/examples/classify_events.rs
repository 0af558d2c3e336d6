//! Velocity computation and fixation/saccade classification, both routes:
//! the velocity-threshold classifier on raw gaze, and run-length merging of
//! recorder-supplied labels.
//!
//! ```bash
//! cargo run --example classify_events
//! ```

use std::error::Error;

use oculo::classify::{
    classify_ivt, compute_velocities, events_from_labels, export_events_tsv, ClassifierConfig,
};
use oculo::ingest::{GazeSample, MovementType, Recording};

/// A synthetic 50 Hz recording: fixate left, saccade, fixate right, then a
/// short gaze loss.
fn synthetic_recording() -> Recording {
    let mut samples = Vec::new();
    let mut push = |i: i64, gaze: Option<(f64, f64)>| {
        samples.push(GazeSample {
            event_index: i as u64,
            start_time_us: i * 20_000,
            end_time_us: i * 20_000 + 19_999,
            gaze_x_px: gaze.map(|g| g.0),
            gaze_y_px: gaze.map(|g| g.1),
            ..GazeSample::default()
        });
    };
    for i in 0..10 {
        push(i, Some((400.0 + (i % 2) as f64, 520.0)));
    }
    push(10, Some((1500.0, 530.0))); // the jump
    for i in 11..22 {
        push(i, Some((1500.0 + (i % 2) as f64, 530.0)));
    }
    for i in 22..26 {
        push(i, None); // tracker lost the eye
    }
    Recording {
        recording_id: "synthetic".into(),
        participant_id: "demo".into(),
        sample_rate_hz: 50,
        frame_width_px: 1920,
        frame_height_px: 1080,
        samples,
    }
}

fn main() -> Result<(), Box<dyn Error>> {
    let recording = synthetic_recording();
    let config = ClassifierConfig::for_recording(&recording);

    let velocities = compute_velocities(&recording, &config)?;
    let peak = velocities.iter().flatten().fold(0.0f64, |a, b| a.max(*b));
    println!(
        "velocities: {} samples, peak {:.1} deg/s (threshold {} deg/s)",
        velocities.len(),
        peak,
        config.velocity_threshold_deg_per_s
    );

    let events = classify_ivt(&recording, &config)?;
    println!("\nvelocity-threshold events:");
    print!("{}", export_events_tsv(&events));

    // Second route: trust labels already present on the samples.
    let mut labeled = recording.clone();
    for (i, sample) in labeled.samples.iter_mut().enumerate() {
        sample.movement_type = Some(if i == 10 {
            MovementType::Saccade
        } else if i >= 22 {
            MovementType::Unclassified
        } else {
            MovementType::Fixation
        });
    }
    let from_labels = events_from_labels(&labeled)?;
    println!("\nrecorded-label events: {}", from_labels.len());
    for event in &from_labels {
        println!(
            "  {:>12} {:>8} us, {} sample(s)",
            event.movement_type.to_string(),
            event.duration_us,
            event.sample_count
        );
    }
    Ok(())
}
