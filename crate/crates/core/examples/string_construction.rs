//! Gardener's construction: the table `{q : f(q) = L}` around a caustic, in two metrics.

use minkoscope::geometry::{minkowski_perimeter, v2};
use minkoscope::string::{string_construct, verify_caustic, StringFunction, StringSpec};
use minkoscope::billiard::BilliardConfig;
use minkoscope::ConvexBody;

fn main() -> minkoscope::Result<()> {
    let c = ConvexBody::ellipse(1.0, 0.6)?;
    for (name, t) in [("euclidean", ConvexBody::disk(1.0)?), ("l^3", ConvexBody::lp_ball(3.0)?)] {
        let per = minkowski_perimeter(&c, &t)?;
        let spec = StringSpec::new(c.clone(), t.clone(), per + 2.0)?;
        let k = string_construct(&spec, 1024)?;
        let f = StringFunction::new(&c, &t)?;
        let cfg = BilliardConfig::new(&k, &t, 1024)?;
        let rep = verify_caustic(&cfg, &c, 512, 1e-6)?;
        println!("{name}: Per(C) = {per:.6}, L = {:.6}", spec.length);
        println!("  f on the x-axis crossing: {:.9}", f.value(v2(k.h(v2(1.0, 0.0)), 0.0))?);
        println!("  caustic check: {} (spread {:.2e})", rep.is_caustic, rep.max_deviation);
    }
    Ok(())
}
