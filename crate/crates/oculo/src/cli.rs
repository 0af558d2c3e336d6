//! Command-line entry point.
//!
//! One subcommand runs per invocation: `ingest-check`, `classify`,
//! `scene-stats`, `heatmap`, `perimetry` or `report`. Outputs are written
//! atomically (temp file + rename) into the `--out` directory together with
//! a `run_manifest.txt` recording inputs, configuration and written files.
//! Manifests carry no timestamps, so identical inputs produce
//! byte-identical output trees.
//!
//! Exit codes: 0 success, 1 validation or I/O failure, 2 usage error.
//! `OCULO_LOG` selects the stderr log level (`error`, `warn`, `info`,
//! `debug`; default `warn`).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::classify::{self, ClassifierConfig, ClassifierMode, GazeEvent};
use crate::heatmap::{self, NormalizeMode, Palette};
use crate::ingest::{self, IngestConfig, ParseMode, Strictness};
use crate::perimetry;
use crate::scenes::{self, RankKey, SceneTimeline};

#[derive(Parser)]
#[command(
    name = "oculo",
    version,
    about = "Gaze and visual-field analytics: eye-tracker exports, scene statistics, heatmaps and perimetry cartograms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a gaze export and report schema or invariant findings.
    IngestCheck(IngestCheckArgs),
    /// Classify samples into events and export them as TSV.
    Classify(ClassifyArgs),
    /// Per-scene statistics for a gaze export over a scene timeline.
    SceneStats(SceneStatsArgs),
    /// Render gaze heatmaps for timeline scenes.
    Heatmap(HeatmapArgs),
    /// Analyze perimetry cartograms: blind spot, scotomas, rendering.
    Perimetry(PerimetryArgs),
    /// Full analysis bundle: events, stats, rankings, optional heatmaps.
    Report(ReportArgs),
}

#[derive(Args, Clone)]
struct GazeInput {
    /// Gaze export TSV.
    #[arg(long)]
    gaze: PathBuf,
    /// Header-mapping file renaming vendor columns to canonical names.
    #[arg(long)]
    header_map: Option<PathBuf>,
    /// Stimulus frame width in pixels.
    #[arg(long, default_value_t = 1920)]
    frame_width: u32,
    /// Stimulus frame height in pixels.
    #[arg(long, default_value_t = 1080)]
    frame_height: u32,
    /// Recorder sample rate in Hz (50 or 100).
    #[arg(long, default_value_t = 50)]
    sample_rate: u32,
}

#[derive(Args, Clone)]
struct ClassifierArgs {
    /// Classification route: velocity thresholding or recorded labels.
    #[arg(long, value_enum, default_value_t = ModeArg::Ivt)]
    mode: ModeArg,
    /// Velocity threshold in degrees per second.
    #[arg(long, default_value_t = 30.0)]
    threshold: f64,
    /// Minimum fixation duration in microseconds.
    #[arg(long, default_value_t = 60_000)]
    min_fixation_us: i64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// Velocity-threshold classification.
    Ivt,
    /// Trust movement_type labels from the recording.
    Labels,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PaletteArg {
    Thermal,
    Gray,
}

#[derive(Args)]
struct IngestCheckArgs {
    #[command(flatten)]
    gaze: GazeInput,
    /// Treat every finding as an error (also rejects unsorted timestamps).
    #[arg(long, conflicts_with = "lenient")]
    strict: bool,
    /// Skip malformed rows instead of failing.
    #[arg(long)]
    lenient: bool,
    /// Optional output directory for the validation report.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    gaze: GazeInput,
    #[command(flatten)]
    classifier: ClassifierArgs,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SceneStatsArgs {
    #[command(flatten)]
    gaze: GazeInput,
    #[command(flatten)]
    classifier: ClassifierArgs,
    /// Scene timeline TSV (`scene_name, start_us, end_us`).
    #[arg(long)]
    timeline: PathBuf,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct HeatmapArgs {
    #[command(flatten)]
    gaze: GazeInput,
    /// Scene timeline TSV.
    #[arg(long)]
    timeline: PathBuf,
    /// Scene to render, by exact name or slug; repeatable. All scenes when absent.
    #[arg(long)]
    scene: Vec<String>,
    /// Gaussian kernel bandwidth in pixels.
    #[arg(long, default_value_t = heatmap::DEFAULT_BANDWIDTH_PX)]
    bandwidth: f64,
    /// Kernel truncation radius in bandwidths.
    #[arg(long, default_value_t = heatmap::DEFAULT_TRUNCATION_RADIUS)]
    truncation: f64,
    /// Output palette.
    #[arg(long, value_enum, default_value_t = PaletteArg::Thermal)]
    palette: PaletteArg,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct PerimetryArgs {
    /// Cartogram file; repeatable.
    #[arg(long, required = true)]
    cartogram: Vec<PathBuf>,
    /// Rendered chart size in pixels (minimum 64).
    #[arg(long, default_value_t = 512)]
    size: usize,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ReportArgs {
    #[command(flatten)]
    gaze: GazeInput,
    #[command(flatten)]
    classifier: ClassifierArgs,
    /// Scene timeline TSV.
    #[arg(long)]
    timeline: PathBuf,
    /// Cartogram files to analyze alongside the gaze report; repeatable.
    #[arg(long)]
    cartogram: Vec<PathBuf>,
    /// Also render a heatmap per scene.
    #[arg(long)]
    with_heatmaps: bool,
    /// Gaussian kernel bandwidth in pixels.
    #[arg(long, default_value_t = heatmap::DEFAULT_BANDWIDTH_PX)]
    bandwidth: f64,
    /// Rendered cartogram size in pixels.
    #[arg(long, default_value_t = 512)]
    size: usize,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
}

/// Run the CLI on the given argv (`argv[0]` is the program name).
///
/// Returns the process exit code: 0 success, 1 validation or I/O failure,
/// 2 usage error.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::IngestCheck(args) => cmd_ingest_check(args),
        Command::Classify(args) => cmd_classify(args),
        Command::SceneStats(args) => cmd_scene_stats(args),
        Command::Heatmap(args) => cmd_heatmap(args),
        Command::Perimetry(args) => cmd_perimetry(args),
        Command::Report(args) => cmd_report(args),
    };
    match result {
        Ok(()) => 0,
        Err(findings) => {
            for line in findings {
                eprintln!("{line}");
            }
            1
        }
    }
}

type CmdResult = Result<(), Vec<String>>;

fn fail(msg: impl Into<String>) -> Vec<String> {
    vec![msg.into()]
}

// --- logging --------------------------------------------------------------

fn log_level() -> u8 {
    static LEVEL: std::sync::OnceLock<u8> = std::sync::OnceLock::new();
    *LEVEL.get_or_init(|| match std::env::var("OCULO_LOG").as_deref() {
        Ok("error") => 0,
        Ok("info") => 2,
        Ok("debug") => 3,
        _ => 1,
    })
}

fn log_warn(msg: &str) {
    if log_level() >= 1 {
        eprintln!("warning: {msg}");
    }
}

fn log_info(msg: &str) {
    if log_level() >= 2 {
        eprintln!("{msg}");
    }
}

// --- shared plumbing -------------------------------------------------------

/// Lowercased Unicode-alphanumeric slug; runs of other characters become one
/// underscore. `Монтрё (Рош-де-Нэ)` -> `монтрё_рош_де_нэ`.
pub fn scene_slug(name: &str) -> String {
    let mut out = String::new();
    let mut pending_sep = false;
    for ch in name.chars() {
        if ch.is_alphanumeric() {
            if pending_sep && !out.is_empty() {
                out.push('_');
            }
            pending_sep = false;
            out.extend(ch.to_lowercase());
        } else {
            pending_sep = true;
        }
    }
    if out.is_empty() {
        out.push_str("scene");
    }
    out
}

/// Record of files written plus the manifest lines describing the run.
struct RunWriter {
    out_dir: PathBuf,
    manifest: Vec<String>,
    outputs: Vec<String>,
}

impl RunWriter {
    fn new(out_dir: &Path, command: &str) -> Result<RunWriter, Vec<String>> {
        fs::create_dir_all(out_dir).map_err(|e| {
            fail(format!(
                "cannot create output directory {}: {e}",
                out_dir.display()
            ))
        })?;
        Ok(RunWriter {
            out_dir: out_dir.to_path_buf(),
            manifest: vec![
                format!("tool = oculo {}", env!("CARGO_PKG_VERSION")),
                format!("command = {command}"),
            ],
            outputs: Vec::new(),
        })
    }

    fn note(&mut self, key: &str, value: impl std::fmt::Display) {
        self.manifest.push(format!("{key} = {value}"));
    }

    /// Write bytes to `name` atomically: temp file in the same directory,
    /// then rename over the target.
    fn write(&mut self, name: &str, bytes: &[u8]) -> Result<(), Vec<String>> {
        let target = self.out_dir.join(name);
        let tmp = self.out_dir.join(format!(".{name}.tmp"));
        let io_err =
            |what: &str, e: std::io::Error| fail(format!("{what} {}: {e}", target.display()));
        {
            let mut file = fs::File::create(&tmp).map_err(|e| io_err("cannot write", e))?;
            file.write_all(bytes)
                .map_err(|e| io_err("cannot write", e))?;
            file.sync_all().map_err(|e| io_err("cannot write", e))?;
        }
        fs::rename(&tmp, &target).map_err(|e| io_err("cannot finalize", e))?;
        self.outputs.push(name.to_string());
        log_info(&format!("wrote {}", target.display()));
        Ok(())
    }

    fn finish(mut self) -> Result<(), Vec<String>> {
        for (i, name) in self.outputs.clone().iter().enumerate() {
            self.manifest.push(format!("output.{i} = {name}"));
        }
        let body = self.manifest.join("\n") + "\n";
        self.write("run_manifest.txt", body.as_bytes())
    }
}

fn read_input(path: &Path) -> Result<Vec<u8>, Vec<String>> {
    fs::read(path).map_err(|e| fail(format!("cannot read {}: {e}", path.display())))
}

fn load_recording(
    input: &GazeInput,
    mode: ParseMode,
) -> Result<ingest::IngestOutcome, Vec<String>> {
    let header_map = match &input.header_map {
        Some(path) => {
            let bytes = read_input(path)?;
            let text = String::from_utf8(bytes)
                .map_err(|_| fail(format!("{}: header map is not UTF-8", path.display())))?;
            Some(ingest::HeaderMap::parse(&text).map_err(|e| fail(e.to_string()))?)
        }
        None => None,
    };
    let cfg = IngestConfig {
        mode,
        frame_width_px: input.frame_width,
        frame_height_px: input.frame_height,
        sample_rate_hz: input.sample_rate,
        allow_any_sample_rate: false,
        recording_id: input
            .gaze
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default(),
        participant_id: String::new(),
        header_map,
    };
    let bytes = read_input(&input.gaze)?;
    let outcome = ingest::parse_gaze_export(&bytes, &cfg).map_err(|e| fail(e.to_string()))?;
    for column in &outcome.unknown_columns {
        log_warn(&format!("ignoring unknown column `{column}`"));
    }
    for (line, reason) in &outcome.skipped_rows {
        log_warn(&format!("skipped line {line}: {reason}"));
    }
    Ok(outcome)
}

fn classifier_config(input: &GazeInput, args: &ClassifierArgs) -> ClassifierConfig {
    let mut cfg = ClassifierConfig::for_frame(input.frame_width, input.frame_height);
    cfg.mode = match args.mode {
        ModeArg::Ivt => ClassifierMode::VelocityThreshold,
        ModeArg::Labels => ClassifierMode::RecordedLabels,
    };
    cfg.velocity_threshold_deg_per_s = args.threshold;
    cfg.min_fixation_duration_us = args.min_fixation_us;
    cfg
}

fn classify_events(
    rec: &ingest::Recording,
    cfg: &ClassifierConfig,
) -> Result<Vec<GazeEvent>, Vec<String>> {
    let events = match cfg.mode {
        ClassifierMode::VelocityThreshold => classify::classify_ivt(rec, cfg),
        ClassifierMode::RecordedLabels => classify::events_from_labels(rec),
    };
    events.map_err(|e| fail(e.to_string()))
}

fn note_gaze_config(writer: &mut RunWriter, input: &GazeInput) {
    writer.note("input.gaze", input.gaze.display());
    if let Some(map) = &input.header_map {
        writer.note("input.header_map", map.display());
    }
    writer.note("config.frame_width", input.frame_width);
    writer.note("config.frame_height", input.frame_height);
    writer.note("config.sample_rate", input.sample_rate);
}

fn note_classifier_config(writer: &mut RunWriter, cfg: &ClassifierConfig) {
    writer.note(
        "config.mode",
        match cfg.mode {
            ClassifierMode::VelocityThreshold => "ivt",
            ClassifierMode::RecordedLabels => "labels",
        },
    );
    writer.note(
        "config.threshold_deg_per_s",
        cfg.velocity_threshold_deg_per_s,
    );
    writer.note("config.min_fixation_us", cfg.min_fixation_duration_us);
}

fn load_timeline(path: &Path) -> Result<SceneTimeline, Vec<String>> {
    let bytes = read_input(path)?;
    scenes::parse_timeline(&bytes).map_err(|e| fail(e.to_string()))
}

// --- subcommands ------------------------------------------------------------

fn cmd_ingest_check(args: IngestCheckArgs) -> CmdResult {
    let mode = if args.strict {
        ParseMode::Strict
    } else if args.lenient {
        ParseMode::Lenient
    } else {
        ParseMode::FailFast
    };
    let outcome = load_recording(&args.gaze, mode)?;
    let strictness = if args.strict {
        Strictness::Strict
    } else {
        Strictness::Lenient
    };
    let report = ingest::validate_recording(&outcome.recording, strictness);

    let mut lines = Vec::new();
    lines.push(format!("samples = {}", outcome.recording.samples.len()));
    lines.push(format!(
        "unknown_columns = {}",
        outcome.unknown_columns.len()
    ));
    lines.push(format!("skipped_rows = {}", outcome.skipped_rows.len()));
    lines.push(format!("findings = {}", report.findings.len()));
    for finding in &report.findings {
        lines.push(finding.to_string());
    }
    let body = lines.join("\n") + "\n";

    if let Some(out) = &args.out {
        let mut writer = RunWriter::new(out, "ingest-check")?;
        note_gaze_config(&mut writer, &args.gaze);
        writer.note("config.strict", args.strict);
        writer.note("config.lenient", args.lenient);
        writer.write("ingest_report.txt", body.as_bytes())?;
        writer.finish()?;
    } else {
        print!("{body}");
    }

    if report.has_errors() {
        return Err(report.findings.iter().map(|f| f.to_string()).collect());
    }
    Ok(())
}

fn cmd_classify(args: ClassifyArgs) -> CmdResult {
    let outcome = load_recording(&args.gaze, ParseMode::FailFast)?;
    let cfg = classifier_config(&args.gaze, &args.classifier);
    let events = classify_events(&outcome.recording, &cfg)?;

    let mut writer = RunWriter::new(&args.out, "classify")?;
    note_gaze_config(&mut writer, &args.gaze);
    note_classifier_config(&mut writer, &cfg);
    writer.note("result.events", events.len());
    writer.write(
        "events.tsv",
        classify::export_events_tsv(&events).as_bytes(),
    )?;
    writer.finish()
}

fn cmd_scene_stats(args: SceneStatsArgs) -> CmdResult {
    let outcome = load_recording(&args.gaze, ParseMode::FailFast)?;
    let cfg = classifier_config(&args.gaze, &args.classifier);
    let events = classify_events(&outcome.recording, &cfg)?;
    let timeline = load_timeline(&args.timeline)?;
    let assignment = scenes::assign_scene(&events, &timeline);
    let stats = scenes::scene_stats(&assignment, &outcome.recording.samples);

    let mut writer = RunWriter::new(&args.out, "scene-stats")?;
    note_gaze_config(&mut writer, &args.gaze);
    note_classifier_config(&mut writer, &cfg);
    writer.note("input.timeline", args.timeline.display());
    writer.note("result.scenes", timeline.entries().len());
    writer.note("result.events", events.len());
    writer.write(
        "scene_stats.tsv",
        scenes::export_stats_tsv(&stats).as_bytes(),
    )?;
    writer.finish()
}

fn cmd_heatmap(args: HeatmapArgs) -> CmdResult {
    let outcome = load_recording(&args.gaze, ParseMode::FailFast)?;
    let timeline = load_timeline(&args.timeline)?;

    let mut scene_names: Vec<String> = Vec::new();
    for entry in timeline.entries() {
        if !scene_names.contains(&entry.scene_name) {
            scene_names.push(entry.scene_name.clone());
        }
    }
    let selected: Vec<String> = if args.scene.is_empty() {
        scene_names.clone()
    } else {
        let mut picked = Vec::new();
        for selector in &args.scene {
            let matched = scene_names
                .iter()
                .find(|name| *name == selector || scene_slug(name) == *selector);
            match matched {
                Some(name) => picked.push(name.clone()),
                None => {
                    return Err(fail(format!(
                        "scene `{selector}` not found; timeline scenes: {}",
                        scene_names.join(", ")
                    )))
                }
            }
        }
        picked
    };

    let palette = match args.palette {
        PaletteArg::Thermal => Palette::Thermal,
        PaletteArg::Gray => Palette::Grayscale,
    };

    let mut writer = RunWriter::new(&args.out, "heatmap")?;
    note_gaze_config(&mut writer, &args.gaze);
    writer.note("input.timeline", args.timeline.display());
    writer.note("config.bandwidth_px", args.bandwidth);
    writer.note("config.truncation", args.truncation);
    writer.note("config.palette", palette.file_extension());

    for name in &selected {
        let points: Vec<(f64, f64)> = outcome
            .recording
            .samples
            .iter()
            .filter(|s| {
                timeline
                    .scene_at(s.start_time_us)
                    .map(|entry| entry.scene_name == *name)
                    .unwrap_or(false)
            })
            .filter_map(|s| s.gaze_point())
            .collect();
        let grid = heatmap::build_heatmap(
            &points,
            outcome.recording.frame_width_px as usize,
            outcome.recording.frame_height_px as usize,
            args.bandwidth,
            args.truncation,
        )
        .map_err(|e| fail(e.to_string()))?;
        let grid = heatmap::normalize_heatmap(grid, NormalizeMode::Max);
        let image = heatmap::render_colormap(&grid, palette).map_err(|e| fail(e.to_string()))?;

        let slug = scene_slug(name);
        writer.write(
            &format!("{slug}_heatmap.{}", palette.file_extension()),
            &image,
        )?;
        writer.write(
            &format!("{slug}_heatmap.txt"),
            heatmap::sidecar_summary(&grid, NormalizeMode::Max).as_bytes(),
        )?;
        writer.note(&format!("result.points.{slug}"), grid.point_count());
    }
    writer.finish()
}

fn cmd_perimetry(args: PerimetryArgs) -> CmdResult {
    if args.size < 64 {
        return Err(fail(format!(
            "--size {} is below the 64 px minimum",
            args.size
        )));
    }
    let mut writer = RunWriter::new(&args.out, "perimetry")?;
    writer.note("config.size", args.size);
    for path in &args.cartogram {
        writer.note("input.cartogram", path.display());
    }

    for path in &args.cartogram {
        let bytes = read_input(path)?;
        let cart = perimetry::parse_cartogram(&bytes)
            .map_err(|e| fail(format!("{}: {e}", path.display())))?;
        let spot = perimetry::blind_spot_search(&cart);
        let report = perimetry::patient_report(&cart, &spot);
        let image = perimetry::render_cartogram(&cart, &spot, args.size);

        let slug = scene_slug(&cart.patient_id);
        writer.write(&format!("{slug}_report.txt"), report.to_text().as_bytes())?;
        writer.write(&format!("{slug}_report.json"), report.to_json().as_bytes())?;
        writer.write(&format!("{slug}_cartogram.ppm"), &image)?;
    }
    writer.finish()
}

fn cmd_report(args: ReportArgs) -> CmdResult {
    let outcome = load_recording(&args.gaze, ParseMode::FailFast)?;
    let cfg = classifier_config(&args.gaze, &args.classifier);
    let events = classify_events(&outcome.recording, &cfg)?;
    let timeline = load_timeline(&args.timeline)?;
    let assignment = scenes::assign_scene(&events, &timeline);
    let stats = scenes::scene_stats(&assignment, &outcome.recording.samples);

    let mut writer = RunWriter::new(&args.out, "report")?;
    note_gaze_config(&mut writer, &args.gaze);
    note_classifier_config(&mut writer, &cfg);
    writer.note("input.timeline", args.timeline.display());
    writer.note("config.with_heatmaps", args.with_heatmaps);
    writer.note("config.bandwidth_px", args.bandwidth);

    writer.write(
        "events.tsv",
        classify::export_events_tsv(&events).as_bytes(),
    )?;
    writer.write(
        "scene_stats.tsv",
        scenes::export_stats_tsv(&stats).as_bytes(),
    )?;

    let mut ranking = String::from("rank\tscene\tfixation_count\n");
    for (i, name) in scenes::rank_scenes(&stats, RankKey::FixationCount)
        .iter()
        .enumerate()
    {
        let count = stats
            .iter()
            .find(|s| &s.scene_name == name)
            .map(|s| s.fixation_count)
            .unwrap_or(0);
        ranking.push_str(&format!("{}\t{}\t{}\n", i + 1, name, count));
    }
    writer.write("scene_ranking.tsv", ranking.as_bytes())?;

    let mut dispersion = String::from("scene\tspread_score\n");
    for (name, score) in scenes::dispersion_report(&stats) {
        dispersion.push_str(&format!("{name}\t{score}\n"));
    }
    writer.write("dispersion.tsv", dispersion.as_bytes())?;

    if args.with_heatmaps {
        for entry in timeline.entries() {
            let points: Vec<(f64, f64)> = outcome
                .recording
                .samples
                .iter()
                .filter(|s| {
                    timeline
                        .scene_at(s.start_time_us)
                        .map(|e| e.scene_name == entry.scene_name)
                        .unwrap_or(false)
                })
                .filter_map(|s| s.gaze_point())
                .collect();
            let grid = heatmap::build_heatmap(
                &points,
                outcome.recording.frame_width_px as usize,
                outcome.recording.frame_height_px as usize,
                args.bandwidth,
                heatmap::DEFAULT_TRUNCATION_RADIUS,
            )
            .map_err(|e| fail(e.to_string()))?;
            let grid = heatmap::normalize_heatmap(grid, NormalizeMode::Max);
            let image = heatmap::render_colormap(&grid, Palette::Thermal)
                .map_err(|e| fail(e.to_string()))?;
            let slug = scene_slug(&entry.scene_name);
            writer.write(&format!("{slug}_heatmap.ppm"), &image)?;
            writer.write(
                &format!("{slug}_heatmap.txt"),
                heatmap::sidecar_summary(&grid, NormalizeMode::Max).as_bytes(),
            )?;
        }
    }

    for path in &args.cartogram {
        let bytes = read_input(path)?;
        let cart = perimetry::parse_cartogram(&bytes)
            .map_err(|e| fail(format!("{}: {e}", path.display())))?;
        let spot = perimetry::blind_spot_search(&cart);
        let report = perimetry::patient_report(&cart, &spot);
        let image = perimetry::render_cartogram(&cart, &spot, args.size);
        let slug = scene_slug(&cart.patient_id);
        writer.note("input.cartogram", path.display());
        writer.write(&format!("{slug}_report.txt"), report.to_text().as_bytes())?;
        writer.write(&format!("{slug}_report.json"), report.to_json().as_bytes())?;
        writer.write(&format!("{slug}_cartogram.ppm"), &image)?;
    }

    writer.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slugs_keep_unicode_alphanumerics() {
        assert_eq!(scene_slug("Монтрё (Рош-де-Нэ)"), "монтрё_рош_де_нэ");
        assert_eq!(scene_slug("Лозанна (Собор)"), "лозанна_собор");
        assert_eq!(scene_slug("plain"), "plain");
        assert_eq!(scene_slug("  "), "scene");
        assert_eq!(scene_slug("a  b"), "a_b");
    }

    #[test]
    fn unknown_subcommand_is_a_usage_error() {
        assert_eq!(run(["oculo", "frobnicate"]), 2);
    }

    #[test]
    fn missing_required_flag_is_a_usage_error() {
        assert_eq!(run(["oculo", "classify"]), 2);
    }

    #[test]
    fn help_exits_zero() {
        assert_eq!(run(["oculo", "--help"]), 0);
    }
}
