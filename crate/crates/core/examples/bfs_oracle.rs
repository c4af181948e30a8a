//! Brute-force search for a conjugator, replayed through the reduction.

use sc_conjugacy::config::doubling_family;
use sc_conjugacy::conjugacy::replays;
use sc_conjugacy::oracle::{bfs_conjugate, BfsAnswer, BfsBounds};

pub fn main() {
    let fam = doubling_family(Some(1)).unwrap();
    let al = fam.alphabet();
    let (u, v) = (al.parse_word("a1 b1^2").unwrap(), al.parse_word("c1 b1^2 a1 c1^-1").unwrap());
    let bounds = BfsBounds { max_len: 6, max_depth: 4, ..BfsBounds::default() };
    match bfs_conjugate(&u, &v, &fam, &bounds).unwrap() {
        BfsAnswer::Yes { witness, path } => println!(
            "witness {} after {} moves, replays: {}",
            al.format(&witness),
            path.len(),
            replays(&witness, &u, &v, &fam).unwrap()
        ),
        BfsAnswer::Inconclusive => println!("inconclusive"),
    }
}
