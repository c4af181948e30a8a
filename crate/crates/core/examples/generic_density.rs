//! The abelian filter answers almost every random pair.

use sc_conjugacy::config::doubling_family;
use sc_conjugacy::conjugacy::density_experiment;

pub fn main() {
    let fam = doubling_family(None).unwrap();
    println!("length,answered_fraction,samples");
    for row in density_experiment(&fam, &[2, 4, 10, 30], 2000, 42).unwrap() {
        println!("{},{},{}", row.length, row.fraction, row.samples);
    }
}
