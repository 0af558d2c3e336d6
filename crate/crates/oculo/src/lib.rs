//! Gaze and visual-field analytics.
//!
//! Two pipelines share this crate:
//!
//! * **Gaze**: parse wearable eye-tracker TSV exports ([`ingest`]), compute
//!   angular velocities and fixation/saccade events ([`classify`]), segment
//!   recordings over a named scene timeline with per-scene statistics and
//!   rankings ([`scenes`]), and render Gaussian gaze heatmaps ([`heatmap`]).
//! * **Perimetry**: parse static-perimetry cartograms, localize the blind
//!   spot inside its anatomical polar window, flag adjacent absolute
//!   scotomas, and emit rendered charts plus structured patient reports
//!   ([`perimetry`]).
//!
//! The `examples/` directory holds one runnable example per capability;
//! `oculo` is the thin command-line binary over [`cli::run`]. Images are
//! written as binary PGM/PPM ([`pnm`]) so outputs are byte-reproducible.

pub mod classify;
pub mod cli;
pub mod heatmap;
pub mod ingest;
pub mod perimetry;
pub mod pnm;
pub mod scenes;

pub use classify::{
    classify_ivt, compute_velocities, events_from_labels, ClassifierConfig, GazeEvent,
};
pub use heatmap::{build_heatmap, normalize_heatmap, render_colormap, HeatmapGrid};
pub use ingest::{parse_gaze_export, validate_recording, GazeSample, IngestConfig, Recording};
pub use perimetry::{
    adjacent_scotoma_check, anatomical_window, blind_spot_search, parse_cartogram, patient_report,
    render_cartogram, BlindSpotReport, Cartogram,
};
pub use scenes::{
    assign_scene, dispersion_report, parse_timeline, rank_scenes, scene_stats, SceneStats,
    SceneTimeline,
};
