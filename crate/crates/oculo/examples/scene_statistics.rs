//! Segment a recording over a scene timeline and compute per-scene
//! statistics, rankings and the dispersion report.
//!
//! ```bash
//! cargo run --example scene_statistics
//! ```

use std::error::Error;
use std::path::Path;

use oculo::classify::{classify_ivt, ClassifierConfig};
use oculo::ingest::{parse_gaze_export, IngestConfig};
use oculo::scenes::{
    assign_scene, dispersion_report, parse_timeline, rank_scenes, scene_stats, RankKey,
};

fn main() -> Result<(), Box<dyn Error>> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let gaze = std::fs::read(data.join("gaze_walkthrough.tsv"))?;
    let timeline = std::fs::read(data.join("timeline_walkthrough.tsv"))?;

    let outcome = parse_gaze_export(&gaze, &IngestConfig::default())?;
    let recording = outcome.recording;
    let timeline = parse_timeline(&timeline)?;
    let events = classify_ivt(&recording, &ClassifierConfig::for_recording(&recording))?;
    let assignment = assign_scene(&events, &timeline);
    let stats = scene_stats(&assignment, &recording.samples);

    println!(
        "{:<24} {:>8} {:>8} {:>12} {:>8} {:>8}",
        "scene", "fix", "sacc", "unclassified", "std_x", "std_y"
    );
    for s in &stats {
        println!(
            "{:<24} {:>8} {:>8} {:>12} {:>8.1} {:>8.1}",
            s.scene_name,
            s.fixation_count,
            s.saccade_count,
            s.unclassified_count,
            s.gaze_std_x_px,
            s.gaze_std_y_px
        );
    }

    println!("\nranked by fixation count:");
    for (i, name) in rank_scenes(&stats, RankKey::FixationCount)
        .iter()
        .enumerate()
    {
        println!("  {}. {name}", i + 1);
    }

    println!("\ndispersion (std_x * std_y), widest first:");
    for (name, score) in dispersion_report(&stats) {
        println!("  {score:>12.1}  {name}");
    }
    Ok(())
}
