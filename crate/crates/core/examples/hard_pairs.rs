//! The hard pairs a_1^j ... a_20^j and b_1^j ... b_20^j are conjugate exactly
//! when j is in the image of f.

use sc_conjugacy::config::doubling_family;
use sc_conjugacy::conjugacy::{decide_with, DecideOptions};

pub fn main() {
    let fam = doubling_family(Some(4)).unwrap();
    let al = fam.alphabet();
    let block = |c: char, j: i64| {
        let text: Vec<String> = (1..=20).map(|k| format!("{c}{k}^{j}")).collect();
        al.parse_word(&text.join(" ")).unwrap()
    };
    for j in 1..=8 {
        let d = decide_with(&block('a', j), &block('b', j), &fam, DecideOptions::default()).unwrap();
        println!("j = {j}: {:?} ({:?}, {} seeds)", d.answer.verdict(), d.stage, d.fill_calls);
    }
}
