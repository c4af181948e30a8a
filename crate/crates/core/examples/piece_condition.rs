//! Brute-force piece conditions: C(20) for the machine family, C'(1/9) for 3-SAT.

use sc_conjugacy::config::doubling_family;
use sc_conjugacy::relators::{RelatorFamily, SatBounds};
use sc_conjugacy::smallcancel::{verify_piece_condition, PieceCondition, DEFAULT_ELEMENT_LIMIT};

pub fn main() {
    let fam = doubling_family(Some(4)).unwrap();
    let rep = verify_piece_condition(&fam, PieceCondition::Small(20), DEFAULT_ELEMENT_LIMIT).unwrap();
    println!("C(20): {} over {} closure elements", rep.holds, rep.elements);
    let sat = RelatorFamily::sat(Some(SatBounds::by_variable(1, 2)));
    let rep = verify_piece_condition(&sat, PieceCondition::Metric { num: 1, den: 9 }, DEFAULT_ELEMENT_LIMIT).unwrap();
    let ex = rep.extreme.unwrap();
    println!(
        "C'(1/9): {}; longest piece {:?} of a relator with {} syllables",
        rep.holds, ex.longest_piece, ex.relator_len
    );
}
