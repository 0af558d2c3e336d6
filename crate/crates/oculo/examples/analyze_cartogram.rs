//! Full perimetry pass over one cartogram: blind-spot localization,
//! adjacent-scotoma check, patient report (text + JSON) and the rendered
//! chart.
//!
//! ```bash
//! cargo run --example analyze_cartogram
//! ```

use std::error::Error;
use std::path::Path;

use oculo::perimetry::{
    adjacent_scotoma_check, anatomical_window, blind_spot_search, parse_cartogram, patient_report,
    render_cartogram,
};

fn main() -> Result<(), Box<dyn Error>> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data/cartogram_right_eye.txt");
    let cart = parse_cartogram(&std::fs::read(&data)?)?;
    println!(
        "patient {} ({:?} eye, age {}), {} stimuli",
        cart.patient_id,
        cart.eye,
        cart.age_years,
        cart.points.len()
    );

    let window = anatomical_window(cart.eye);
    println!(
        "anatomical window: eccentricity {:?} deg, meridian {:?} deg",
        window.eccentricity_deg, window.meridian_deg
    );

    let spot = blind_spot_search(&cart);
    println!("blind spot found: {}", spot.found);
    if let (Some(m), Some(e)) = (spot.centroid_meridian_deg, spot.centroid_eccentricity_deg) {
        println!("  centroid: meridian {m:.2} deg, eccentricity {e:.2} deg");
        println!("  members: {}", spot.member_points.len());
        println!(
            "  within anatomical window: {}",
            spot.within_anatomical_window
        );
    }
    for note in &spot.notes {
        println!("  note: {note}");
    }

    let scotoma = adjacent_scotoma_check(&cart);
    println!(
        "adjacent absolute scotoma: {} ({} evidence point(s))",
        scotoma.present,
        scotoma.evidence.len()
    );

    let report = patient_report(&cart, &spot);
    let out = std::env::temp_dir().join("oculo-example-perimetry");
    std::fs::create_dir_all(&out)?;
    std::fs::write(out.join("report.txt"), report.to_text())?;
    std::fs::write(out.join("report.json"), report.to_json())?;
    std::fs::write(out.join("chart.ppm"), render_cartogram(&cart, &spot, 512))?;
    println!(
        "wrote report.txt, report.json, chart.ppm under {}",
        out.display()
    );
    Ok(())
}
