//! Simulating the bundled doubling machine in unary.

use sc_conjugacy::config::DOUBLING_MACHINE;
use sc_conjugacy::machines::{run, MachineSpec};

pub fn main() {
    let m = MachineSpec::parse(DOUBLING_MACHINE).unwrap();
    for n in 1..=5 {
        let out = run(&m, n, 1_000);
        println!("f({n}) = {:?} after {} steps", out.output, out.steps);
    }
}
