//! A 3-SAT instance as a conjugacy question, and the assignment read off the diagram.

use sc_conjugacy::conjugacy::{decide, ConjugacyAnswer};
use sc_conjugacy::relators::RelatorFamily;
use sc_conjugacy::satenc::{extract_certificate, parse_inline, reduce_to_conjugacy};

pub fn main() {
    let fam = RelatorFamily::sat(None);
    let gens = fam.sat_generators().unwrap();
    for text in ["(x1 | -x2 | x3) & (-x1 | x2 | x2)", "(x1 | x1 | x1) & (-x1 | -x1 | -x1)"] {
        let eta = parse_inline(text).unwrap();
        let (u, v) = reduce_to_conjugacy(gens, &eta);
        match decide(&u, &v, &fam).unwrap() {
            ConjugacyAnswer::Conjugate { diagram: Some(d), .. } => {
                println!("{text}: satisfiable, {:?}", extract_certificate(&d, gens).unwrap())
            }
            other => println!("{text}: {:?}", other.verdict()),
        }
    }
}
