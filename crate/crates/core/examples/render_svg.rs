//! Draws a table, its caustic, the dual pair and a short orbit into an SVG file.
//!
//! `cargo run --example render_svg -- out.svg`

use minkoscope::billiard::{iterate_trajectory, line_from_annulus, BilliardConfig};
use minkoscope::duality::dual_caustic_smooth;
use minkoscope::invariants::invariant_circle;
use minkoscope::io::{write_text, Scene};
use minkoscope::ConvexBody;
use std::path::PathBuf;

fn main() -> minkoscope::Result<()> {
    let path = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("minkoscope.svg"));
    let k = ConvexBody::disk(2.0)?;
    let t = ConvexBody::disk(1.0)?;
    let c = ConvexBody::disk(1.0)?;
    let dual = dual_caustic_smooth(&k, &c, 512)?;
    let cfg = BilliardConfig::new(&k, &t, 512)?;
    let s0 = invariant_circle(&cfg, &c, 64)?.value(0.0);
    let rec = iterate_trajectory(&cfg, &line_from_annulus(&cfg, 0.0, s0)?, 12)?;
    let scene = Scene::new().body(&k).body(&c).body(&t).body(&dual).polyline(rec.impacts.clone());
    write_text(&path, &scene.to_svg())?;
    println!("wrote {} ({} bodies)", path.display(), scene.body_count());
    Ok(())
}
