//! The relators of a truncated family and the critical subwords found in a word.

use sc_conjugacy::config::doubling_family;
use sc_conjugacy::words::Word;

pub fn main() {
    let fam = doubling_family(Some(3)).unwrap();
    let al = fam.alphabet();
    for r in fam.relators().unwrap() {
        println!("r_{} has {} letters: {:?}", r.index.unwrap(), r.word.len(), r.params);
    }
    let r2 = fam.relator(2).unwrap().unwrap();
    let noisy = Word::product([&al.parse_word("b5 c2^3").unwrap(), &r2.word.slice(60, 150)]);
    for m in fam.critical_subword_scan(&noisy, true) {
        println!(
            "critical fragment at syllable {} of r_{} (inverse: {})",
            m.syllable,
            m.relator.index.unwrap(),
            m.inverse
        );
    }
}
