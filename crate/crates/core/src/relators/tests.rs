use super::*;
use crate::machines::{Limits, MachineSpec};

pub(crate) const DOUBLER: &str = "tapes 2\nstart q0\nq0 1 -> q1 1 R 0\nq1 _ -> q2 1 R 1\nq2 _ -> q0 1 R 1\n";

pub(crate) fn doubling(truncation: Option<u64>) -> RelatorFamily {
    let func = FamilyFunctionSpec::new(
        FamilyKind::CeBijection {
            machine: MachineSpec::parse(DOUBLER).unwrap(),
            monotone: true,
        },
        Limits::default(),
    );
    RelatorFamily::machine(func, truncation).unwrap()
}

#[test]
fn ce_relator_matches_template() {
    let fam = doubling(Some(4));
    let r = fam.relator(1).unwrap().unwrap();
    let al = fam.alphabet();
    let mut text: Vec<String> = (1..=20).map(|k| format!("a{k}^2")).collect();
    text.extend(["c1 d1^3 c2 d2^3 c3 d3^3".to_string()]);
    text.extend((1..=20).rev().map(|k| format!("b{k}^-2")));
    text.push("d3^-3 c3^-1 d2^-3 c2^-1 d1^-3 c1^-1".into());
    assert_eq!(r.word, al.parse_word(&text.join(" ")).unwrap());
    assert_eq!(r.params, RelatorParams::Machine { a: 2, c: 1, t: 3, shape: BShape::Descending });
    assert!(fam.relator(5).is_err());
}

#[test]
fn abelian_images() {
    let fam = doubling(Some(4));
    for r in fam.relators().unwrap() {
        assert!(fam.abelian_invariants(&r.word).iter().all(|&x| x == 0));
        let img = r.word.abelian_image(46);
        let RelatorParams::Machine { a, .. } = r.params else { panic!() };
        for k in 1..=20 {
            assert_eq!(img[fam.alphabet().gen('a', k) as usize], a as i64);
            assert_eq!(img[fam.alphabet().gen('b', k) as usize], -(a as i64));
        }
    }
    assert_eq!(fam.abelian_functionals().len(), 45);
}

#[test]
fn pins() {
    let fam = doubling(None);
    let al = fam.alphabet();
    let a = |e| Syllable::new(al.gen('a', 3), e);
    assert_eq!(fam.pin_syllable(a(8)).unwrap(), Some(Pin::Indices(vec![4])));
    assert_eq!(fam.pin_syllable(a(-7)).unwrap(), Some(Pin::Indices(vec![])));
    assert_eq!(fam.pin_syllable(Syllable::new(al.gen('c', 2), 5)).unwrap(), Some(Pin::Indices(vec![5])));
    assert_eq!(fam.pin_syllable(Syllable::new(al.gen('d', 2), 5)).unwrap(), None);
}

#[test]
fn critical_scan_finds_own_conjugating_part() {
    let fam = doubling(Some(4));
    for i in 1..=4 {
        let r = fam.relator(i).unwrap().unwrap();
        for w in [r.word.clone(), r.word.inverse(), r.word.rotate(7)] {
            let m = fam.critical_subword_scan(&w, true);
            assert_eq!(m.len(), 2, "index {i}");
            assert!(m.iter().all(|m| m.relator.index == Some(i)));
        }
    }
}

#[test]
fn critical_scan_rejects_bad_padding() {
    let fam = doubling(Some(4));
    let al = fam.alphabet();
    let w = al.parse_word("a20^2 c1 d1^4 c2 d2^4 c3 d3^4 b20^-2").unwrap();
    assert!(fam.critical_subword_scan(&w, false).is_empty());
    let ok = al.parse_word("a20^2 c1 d1^3 c2 d2^3 c3 d3^3 b20^-2").unwrap();
    assert_eq!(fam.critical_subword_scan(&ok, false).len(), 1);
    let ab = al.parse_word("a1 b2^3 a4^-1 b1^2").unwrap();
    assert!(fam.critical_subword_scan(&ab, true).is_empty());
}

#[test]
fn occurrence_examples() {
    let fam = doubling(Some(4));
    let al = fam.alphabet();
    assert!(fam.occurs_in_some_relator(&al.parse_word("a1^2").unwrap(), 1).unwrap());
    assert!(!fam.occurs_in_some_relator(&al.parse_word("a1 b1").unwrap(), 4).unwrap());
}

#[test]
fn sat_family_table() {
    let fam = RelatorFamily::sat(Some(SatBounds { max_clauses: 2, max_clause_index: 4, max_variable: None }));
    assert_eq!(fam.sat_instance_count(), Some(119));
    let rels = fam.relators().unwrap();
    for r in &rels {
        assert!(fam.abelian_invariants(&r.word).iter().all(|&x| x == 0));
        let m = fam.critical_subword_scan(&r.word, true);
        assert!(m.iter().any(|m| m.relator.word == r.word && !m.inverse), "{:?}", r.index);
        let RelatorParams::Sat { instance, .. } = &r.params else { panic!() };
        assert!(fam.full_block_instances(&r.word, true).contains(instance));
    }
    assert_eq!(fam.abelian_functionals().len(), 132);
}
