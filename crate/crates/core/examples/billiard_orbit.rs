//! A Minkowski billiard orbit in an ellipse with a tilted elliptic metric, printed as CSV.

use minkoscope::billiard::{iterate_trajectory, line_from_annulus, BilliardConfig};
use minkoscope::geometry::v2;
use minkoscope::io::trajectory_csv;
use minkoscope::ConvexBody;

fn main() -> minkoscope::Result<()> {
    let k = ConvexBody::ellipse(3.0, 2.0)?;
    let t = ConvexBody::ellipse_rotated(v2(0.0, 0.0), 1.0, 0.7, 0.4)?;
    let cfg = BilliardConfig::new(&k, &t, 1024)?;
    let start = line_from_annulus(&cfg, 0.0, 0.3)?;
    let rec = iterate_trajectory(&cfg, &start, 20)?;
    print!("{}", trajectory_csv(&cfg, &rec)?);
    let total: f64 = rec.segment_lengths.iter().sum();
    eprintln!("{} bounces, total h_T length {total:.6}", rec.len());
    Ok(())
}
