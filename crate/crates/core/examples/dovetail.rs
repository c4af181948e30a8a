//! Enumerating two conjugacy classes side by side until both query words appear.

use sc_conjugacy::config::doubling_family;
use sc_conjugacy::conjugacy::dovetail_partial;

pub fn main() {
    let fam = doubling_family(Some(1)).unwrap();
    let al = fam.alphabet();
    let ws = [al.parse_word("a1").unwrap(), al.parse_word("a1^2").unwrap()];
    for (u, v) in [("a1", "b3 a1 b3^-1"), ("a1", "c2 a1^2 c2^-1"), ("a1", "a2")] {
        let (u, v) = (al.parse_word(u).unwrap(), al.parse_word(v).unwrap());
        let ans = dovetail_partial(&ws, &u, &v, &fam, 20_000).unwrap();
        println!("{} ~ {}: {:?}", al.format(&u), al.format(&v), ans.verdict());
    }
}
