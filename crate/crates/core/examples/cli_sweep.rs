//! Drives the command layer directly: a seeded sweep over one component of
//! the (2,3,4) triangle and its JSON report, identical to
//! `coxdeform --json - sweep --triangle 2,3,4 --component spin --draws 4`.

use coxdeform::cli::{cmd_sweep, Stopwatch, SweepTarget};

fn main() {
    let mut sw = Stopwatch::new(false);
    let report = cmd_sweep((2, 3, 4), SweepTarget::Spin, 4, 0, &mut sw).expect("finite triangle");
    print!("{}", report.summary());
    println!("{}", report.to_json());
}
