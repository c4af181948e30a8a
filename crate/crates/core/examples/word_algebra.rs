//! Run-length words: parsing, products, cyclic reduction and free conjugacy.

use sc_conjugacy::words::{cyclically_reduce, free_conjugate, Alphabet};

pub fn main() {
    let al = Alphabet::machine_family();
    let u = al.parse_word("c1 a1^1000000 b2^-3").unwrap();
    let v = al.parse_word("b2^-3 c1 a1^1000000").unwrap();
    println!("u = {}  ({} letters, {} syllables)", al.format(&u), u.len(), u.num_syllables());
    println!("u u^-1 = {}", al.format(&u.mul(&u.inverse())));
    let (c, core) = cyclically_reduce(&al.parse_word("a2 c1^5 a2^-1").unwrap());
    println!("cyclic core {} via {}", al.format(core.word()), al.format(&c));
    let t = free_conjugate(&u, &v).expect("rotations are conjugate");
    println!("t u t^-1 = v with t = {}", al.format(&t));
}
