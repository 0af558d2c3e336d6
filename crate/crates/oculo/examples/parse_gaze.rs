//! Parse a gaze export and validate it.
//!
//! ```bash
//! cargo run --example parse_gaze
//! ```

use std::error::Error;
use std::path::Path;

use oculo::ingest::{parse_gaze_export, validate_recording, IngestConfig, Strictness};

fn main() -> Result<(), Box<dyn Error>> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data/gaze_walkthrough.tsv");
    let bytes = std::fs::read(&data)?;

    let config = IngestConfig {
        recording_id: "walkthrough".into(),
        participant_id: "participant-01".into(),
        ..IngestConfig::default()
    };
    let outcome = parse_gaze_export(&bytes, &config)?;
    let recording = &outcome.recording;

    println!("recording      {}", recording.recording_id);
    println!("samples        {}", recording.samples.len());
    println!("span           {:.3} s", recording.span_us() as f64 / 1e6);
    println!("sample rate    {} Hz", recording.sample_rate_hz);
    println!(
        "frame          {}x{} px",
        recording.frame_width_px, recording.frame_height_px
    );
    println!("unknown cols   {}", outcome.unknown_columns.len());
    println!("skipped rows   {}", outcome.skipped_rows.len());

    let first = &recording.samples[0];
    println!(
        "first sample   t={} us, gaze=({:?}, {:?})",
        first.start_time_us, first.gaze_x_px, first.gaze_y_px
    );

    let report = validate_recording(recording, Strictness::Lenient);
    println!("validation     {} finding(s)", report.findings.len());
    for finding in report.findings.iter().take(5) {
        println!("  {finding}");
    }
    Ok(())
}
