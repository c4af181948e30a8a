//! Weak reduction of a word holding most of a relator, with its trace.

use sc_conjugacy::config::doubling_family;
use sc_conjugacy::smallcancel::{reduce_with, ReduceOptions};
use sc_conjugacy::words::Word;

pub fn main() {
    let fam = doubling_family(Some(4)).unwrap();
    let al = fam.alphabet();
    let r = fam.relator(3).unwrap().unwrap().word.clone();
    let w = Word::product([&al.parse_word("c3^2").unwrap(), &r.slice(0, r.len() - 20)]);
    let red = reduce_with(&w, &fam, ReduceOptions { piece_lengths: true, max_steps: None }).unwrap();
    for line in red.trace.to_records(al) {
        println!("{line}");
    }
    println!("{} letters -> {}", w.len(), al.format(&red.word));
}
