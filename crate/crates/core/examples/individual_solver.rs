//! Conjugacy to one fixed word, answered from facts gathered up front.

use sc_conjugacy::config::doubling_family;
use sc_conjugacy::conjugacy::{decide_individual, IndividualSolver};

pub fn main() {
    let fam = doubling_family(None).unwrap();
    let al = fam.alphabet();
    let text: Vec<String> = (1..=20).map(|k| format!("a{k}^4")).collect();
    let u0 = al.parse_word(&text.join(" ")).unwrap();
    let solver = IndividualSolver::new(&u0, &fam).unwrap();
    println!("constant {} with {} stored relators", solver.constant(), solver.relators().len());
    let before = fam.func().unwrap().membership_evaluations();
    let partner: Vec<String> = (1..=20).map(|k| format!("b{k}^4")).collect();
    let rotated = format!("{} a1^4", text[1..].join(" "));
    for q in [partner.join(" "), rotated, "c1 a1^4 c1^-1".to_string()] {
        let v = al.parse_word(&q).unwrap();
        println!("{}: {:?}", &q[..q.len().min(24)], decide_individual(&solver, &v).unwrap().verdict());
    }
    let after = fam.func().unwrap().membership_evaluations();
    println!("machine evaluations during queries: {}", after - before);
}
