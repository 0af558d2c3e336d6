//! Build a gaze heatmap for one timeline scene and write it as a thermal
//! PPM (plus a grayscale PGM and the sidecar) into a temp directory.
//!
//! ```bash
//! cargo run --example render_heatmap
//! ```

use std::error::Error;
use std::path::Path;

use oculo::heatmap::{
    build_heatmap, normalize_heatmap, render_colormap, sidecar_summary, NormalizeMode, Palette,
    DEFAULT_BANDWIDTH_PX, DEFAULT_TRUNCATION_RADIUS,
};
use oculo::ingest::{parse_gaze_export, IngestConfig};
use oculo::scenes::parse_timeline;

fn main() -> Result<(), Box<dyn Error>> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let gaze = std::fs::read(data.join("gaze_walkthrough.tsv"))?;
    let timeline = std::fs::read(data.join("timeline_walkthrough.tsv"))?;

    let recording = parse_gaze_export(&gaze, &IngestConfig::default())?.recording;
    let timeline = parse_timeline(&timeline)?;
    let scene = &timeline.entries()[1]; // Монтрё (Рош-де-Нэ)

    let points: Vec<(f64, f64)> = recording
        .samples
        .iter()
        .filter(|s| (scene.start_us..scene.end_us).contains(&s.start_time_us))
        .filter_map(|s| s.gaze_point())
        .collect();
    println!("scene `{}`: {} gaze points", scene.scene_name, points.len());

    let grid = build_heatmap(
        &points,
        recording.frame_width_px as usize,
        recording.frame_height_px as usize,
        DEFAULT_BANDWIDTH_PX,
        DEFAULT_TRUNCATION_RADIUS,
    )?;
    let grid = normalize_heatmap(grid, NormalizeMode::Max);
    let (peak_x, peak_y) = grid.argmax();
    println!("density peak at ({peak_x}, {peak_y}) px");

    let out = std::env::temp_dir().join("oculo-example-heatmap");
    std::fs::create_dir_all(&out)?;
    std::fs::write(
        out.join("scene.ppm"),
        render_colormap(&grid, Palette::Thermal)?,
    )?;
    std::fs::write(
        out.join("scene.pgm"),
        render_colormap(&grid, Palette::Grayscale)?,
    )?;
    std::fs::write(
        out.join("scene.txt"),
        sidecar_summary(&grid, NormalizeMode::Max),
    )?;
    println!(
        "wrote scene.ppm, scene.pgm, scene.txt under {}",
        out.display()
    );
    Ok(())
}
