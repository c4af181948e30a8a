use super::*;
use crate::relators::tests::doubling;
use crate::relators::{RelatorFamily, SatBounds};
use crate::satenc::{reduce_to_conjugacy, SatInstance};
use crate::words::{free_conjugate, Word};

fn w(fam: &RelatorFamily, s: &str) -> Word {
    fam.alphabet().parse_word(s).unwrap()
}

#[test]
fn structural_pieces() {
    let fam = doubling(Some(4));
    assert!(is_piece(&w(&fam, "a1"), &fam).unwrap());
    assert!(is_piece(&w(&fam, "a3^4 a4^4"), &fam).unwrap());
    assert!(!is_piece(&w(&fam, "a2 a3^4 a4"), &fam).unwrap());
    assert!(!is_piece(&w(&fam, "a3 b1"), &fam).unwrap());
    // a conjugating part is a piece: it lies in r and, inverted, in r^-1's rotation
    let p = fam.relator(2).unwrap().unwrap().conjugating_part();
    assert!(is_piece(&p, &fam).unwrap());
}

#[test]
fn pairs_factor_the_a_block() {
    let fam = doubling(Some(4));
    let text: Vec<String> = (1..=20).map(|k| format!("a{k}^4")).collect();
    let f = piece_length(&w(&fam, &text.join(" ")), &fam).unwrap();
    assert_eq!(f.piece_length(), 10);
    assert_eq!(f.spans[0], (0, 8));
    assert_eq!(piece_length(&w(&fam, "a1"), &fam).unwrap().piece_length(), 1);
}

#[test]
fn desk_family_satisfies_c20() {
    let fam = doubling(Some(4));
    let rep = verify_piece_condition(&fam, PieceCondition::Small(20), DEFAULT_ELEMENT_LIMIT).unwrap();
    assert!(rep.holds, "{:?}", rep.extreme);
    assert_eq!(rep.elements, 2 * 104 * 10);
    let strict = verify_piece_condition(&fam, PieceCondition::Small(1000), DEFAULT_ELEMENT_LIMIT).unwrap();
    assert!(!strict.holds);
    assert_eq!(strict.witnesses.len(), MAX_WITNESSES);
}

#[test]
fn relator_reduces_away() {
    let fam = doubling(Some(4));
    let r = fam.relator(1).unwrap().unwrap();
    let red = reduce(&r.word, &fam).unwrap();
    assert!(red.word.is_identity());
    assert_eq!(red.trace.steps.len(), 1);
    assert_eq!(red.trace.steps[0].missing, 0);
    assert!(!is_weakly_reduced(&r.word, &fam).unwrap());
    let a = w(&fam, "a1^5");
    assert_eq!(reduce(&a, &fam).unwrap().word, a);
    assert!(is_weakly_reduced(&a, &fam).unwrap());
}

#[test]
fn seven_missing_pieces() {
    let fam = doubling(Some(4));
    let r = fam.relator(1).unwrap().unwrap().word.clone();
    let n = r.len();
    // longest suffix t of r with piece length 7
    let k = (1..n)
        .rev()
        .find(|&k| piece_length(&r.slice(n - k, n), &fam).unwrap().piece_length() == 7)
        .unwrap();
    let (s, t) = (r.slice(0, n - k), r.slice(n - k, n));
    let red = reduce(&s, &fam).unwrap();
    assert_eq!(red.trace.steps.len(), 1);
    assert_eq!(red.trace.steps[0].missing, 7);
    assert!(free_conjugate(&red.word, &t.inverse()).is_some());
    assert!(is_weakly_reduced(&red.word, &fam).unwrap());
    // one more missing piece and nothing applies
    let k8 = (1..n)
        .find(|&k| piece_length(&r.slice(n - k, n), &fam).unwrap().piece_length() == 8)
        .unwrap();
    assert!(is_weakly_reduced(&r.slice(0, n - k8), &fam).unwrap());
}

#[test]
fn conjugator_is_tracked() {
    let fam = doubling(Some(4));
    let r = fam.relator(2).unwrap().unwrap().word.clone();
    let x = w(&fam, "b7 a3^-2 c1");
    let tail = w(&fam, "a5 b2^3");
    let input = Word::product([&x, &r, &x.inverse(), &tail]);
    let red = reduce(&input, &fam).unwrap();
    assert_eq!(red.trace.steps.len(), 1);
    // conj · input · conj^-1 equals the output after deleting the relator copy
    let lhs = Word::product([&red.conjugator, &x, &x.inverse(), &tail, &red.conjugator.inverse()]);
    assert_eq!(lhs, red.word);
}

#[test]
fn sat_pieces_and_reduction() {
    let fam = RelatorFamily::sat(Some(SatBounds { max_clauses: 2, max_clause_index: 4, max_variable: None }));
    let rep = verify_piece_condition(&fam, PieceCondition::Metric { num: 1, den: 9 }, DEFAULT_ELEMENT_LIMIT).unwrap();
    assert!(rep.holds, "{:?}", rep.witnesses.first());
    let ex = rep.extreme.unwrap();
    // the longest pieces are conjugating parts: a tenth of the relator
    assert_eq!(ex.longest_piece.unwrap() * 10, ex.relator_len);
    for r in fam.relators().unwrap().iter().take(10) {
        assert!(reduce(&r.word, &fam).unwrap().word.is_identity());
        assert!(!is_weakly_reduced(&r.word, &fam).unwrap());
    }
    let eta = SatInstance::new(vec![[1, 1, 1]]).unwrap();
    let (u, v) = reduce_to_conjugacy(fam.sat_generators().unwrap(), &eta);
    assert!(is_weakly_reduced(&u, &fam).unwrap());
    assert!(is_weakly_reduced(&v, &fam).unwrap());
}
