//! The smoothed ℓ¹ family: the tables approach an octagon while the candidate dual of the
//! flat caustic stops fitting between the sandwich bounds.

use minkoscope::counterexample::{build_instance, counterexample_report, flat_candidate_check};

fn main() -> minkoscope::Result<()> {
    let rep = counterexample_report(&[2, 4, 8, 16, 32])?;
    let mut out = Vec::new();
    rep.write_csv(&mut out)?;
    print!("{}", String::from_utf8_lossy(&out));
    println!("verdict: {}", rep.verdict);

    let inst = build_instance(32)?;
    let flat = flat_candidate_check(&inst);
    println!("n = 32: q = ({:.4}, {:.4}), eps = {:.2e}", inst.q_n.x, inst.q_n.y, inst.eps_n);
    println!("flat candidate: implied L {:.6}, measured L {:.6}", flat.implied_ln, flat.measured_ln);
    Ok(())
}
