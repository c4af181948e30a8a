use super::*;
use crate::relators::tests::doubling;
use crate::relators::SatBounds;
use crate::satenc::{extract_certificate, reduce_to_conjugacy, SatInstance};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn w(fam: &RelatorFamily, s: &str) -> Word {
    fam.alphabet().parse_word(s).unwrap()
}

fn block(letter: char, j: i64) -> String {
    (1..=20).map(|k| format!("{letter}{k}^{j}")).collect::<Vec<_>>().join(" ")
}

#[test]
fn hard_pair_in_image() {
    let fam = doubling(Some(4));
    let (u, v) = (w(&fam, &block('a', 4)), w(&fam, &block('b', 4)));
    let d = decide_with(&u, &v, &fam, DecideOptions::default()).unwrap();
    assert_eq!(d.stage, Stage::Diagram);
    let ConjugacyAnswer::Conjugate { witness, diagram } = &d.answer else { panic!("{:?}", d.answer) };
    assert!(replays(witness, &u, &v, &fam).unwrap());
    let diagram = diagram.as_ref().unwrap();
    diagram.validate().unwrap();
    let regions: Vec<_> = diagram.regions().collect();
    assert_eq!(regions.len(), 1);
    assert_eq!(regions[0].relator.index, Some(2));
    // the whole conjugating part sits on the interior edge
    let p = regions[0].relator.conjugating_part();
    assert!(regions[0].edge_out == p || regions[0].edge_out == p.inverse());
    assert!(d.fill_calls <= 3 * u.len() * v.len());
}

#[test]
fn hard_pair_outside_image() {
    let fam = doubling(Some(4));
    let (u, v) = (w(&fam, &block('a', 3)), w(&fam, &block('b', 3)));
    assert_eq!(decide(&u, &v, &fam).unwrap(), ConjugacyAnswer::NotConjugate);
    let (u, v) = (w(&fam, &block('a', 4)), w(&fam, &block('b', 6)));
    assert_eq!(decide(&u, &v, &fam).unwrap(), ConjugacyAnswer::NotConjugate);
    for pu in (0..u.len()).step_by(7) {
        for pv in (0..v.len()).step_by(11) {
            for condition in [SeedCondition::Coincident, SeedCondition::IslandStart, SeedCondition::Separated] {
                let seed = OppositeEdgeSeed { outer: pu, inner: pv, condition };
                assert!(fill_diagram(&u, &v, seed, &fam).unwrap().is_none());
            }
        }
    }
}

#[test]
fn degenerate_diagram() {
    let fam = doubling(Some(4));
    let u = w(&fam, "a1 b1");
    let seed = OppositeEdgeSeed { outer: 0, inner: 0, condition: SeedCondition::Coincident };
    let d = fill_diagram(&u, &u, seed, &fam).unwrap().unwrap();
    assert_eq!(d.regions().count(), 0);
    d.validate().unwrap();
}

#[test]
fn free_conjugates_and_relator_noise() {
    let fam = doubling(Some(4));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let r = fam.relator(3).unwrap().unwrap().word.clone();
    for _ in 0..20 {
        let x = random_reduced_word(&mut rng, 46, 8);
        let t = random_reduced_word(&mut rng, 46, 5);
        let v = Word::product([&t, &x, &r, &t.inverse()]);
        for (a, b) in [(&x, &v), (&v, &x)] {
            let ans = decide(a, b, &fam).unwrap();
            let wit = ans.witness().unwrap_or_else(|| panic!("{ans:?}"));
            assert!(replays(wit, a, b, &fam).unwrap());
        }
    }
    assert_eq!(
        decide(&w(&fam, "a1"), &w(&fam, "a1^2"), &fam).unwrap(),
        ConjugacyAnswer::NotConjugate
    );
    let id = Word::identity();
    assert_eq!(decide(&r, &id, &fam).unwrap().verdict(), Verdict::Conjugate);
    assert_eq!(decide(&w(&fam, "c1 c1^-1"), &w(&fam, "d1"), &fam).unwrap(), ConjugacyAnswer::NotConjugate);
}

#[test]
fn individual_solver_uses_stored_facts() {
    let fam = doubling(None);
    let u = w(&fam, &block('a', 4));
    let s = IndividualSolver::new(&u, &fam).unwrap();
    assert_eq!(s.constant(), 80);
    assert!(s.facts().iter().all(|f| f.relators == vec![2]));
    let before = s.family().func().unwrap().membership_evaluations();
    let v = w(&fam, &block('b', 4));
    assert_eq!(decide_individual(&s, &v).unwrap().verdict(), Verdict::Conjugate);
    assert_eq!(decide_individual(&s, &u).unwrap().verdict(), Verdict::Conjugate);
    let t = w(&fam, "c2 d1^3");
    assert_eq!(decide_individual(&s, &u.conjugate_by(&t)).unwrap().verdict(), Verdict::Conjugate);
    assert_eq!(decide_individual(&s, &w(&fam, "a1")).unwrap(), ConjugacyAnswer::NotConjugate);
    let r9 = w(&fam, &block('b', 6));
    assert_eq!(decide_individual(&s, &r9).unwrap(), ConjugacyAnswer::NotConjugate);
    assert_eq!(s.family().func().unwrap().membership_evaluations(), before);
}

#[test]
fn filter_and_density() {
    let fam = doubling(Some(4));
    assert_eq!(generic_filter(&fam, &w(&fam, "c1"), &w(&fam, "d1")), FilterAnswer::NotConjugate);
    let u = w(&fam, "a1 b2 c3");
    let t = w(&fam, "d1 a5");
    assert_eq!(generic_filter(&fam, &u, &u.conjugate_by(&t)), FilterAnswer::Unknown);
    assert!(density_experiment(&fam, &[10], 0, 1).is_err());
    let rows = density_experiment(&fam, &[10, 20, 40], 400, 1).unwrap();
    assert!(rows.windows(2).all(|p| p[0].fraction <= p[1].fraction));
}

#[test]
fn dovetailing() {
    let fam = doubling(Some(2));
    let a1 = w(&fam, "a1");
    let conj = w(&fam, "b1 a1 b1^-1");
    let ans = dovetail_partial(std::slice::from_ref(&a1), &conj, &conj, &fam, 10).unwrap();
    assert_eq!(ans.verdict(), Verdict::Conjugate);
    let a2 = w(&fam, "a1^2");
    assert_eq!(dovetail_partial(&[a1.clone(), a2.clone()], &a1, &a2, &fam, 10).unwrap(), ConjugacyAnswer::NotConjugate);
    assert_eq!(dovetail_partial(&[a1], &a2, &a2, &fam, 50).unwrap().verdict(), Verdict::Unknown);
}

#[test]
fn sat_hard_pairs() {
    let fam = RelatorFamily::sat(None);
    let gens = fam.sat_generators().unwrap().clone();
    let yes = SatInstance::new(vec![[1, -2, 3]]).unwrap();
    let (u, v) = reduce_to_conjugacy(&gens, &yes);
    let d = decide_with(&u, &v, &fam, DecideOptions::default()).unwrap();
    let ConjugacyAnswer::Conjugate { witness, diagram } = &d.answer else { panic!("{:?}", d.answer) };
    assert!(replays(witness, &u, &v, &fam).unwrap());
    diagram.as_ref().unwrap().validate().unwrap();
    let no = SatInstance::new(vec![[1, 1, 1], [-1, -1, -1]]).unwrap();
    let (u, v) = reduce_to_conjugacy(&gens, &no);
    assert_eq!(decide(&u, &v, &fam).unwrap(), ConjugacyAnswer::NotConjugate);
    let bounded = RelatorFamily::sat(Some(SatBounds { max_clauses: 2, max_clause_index: 4, max_variable: None }));
    let (u, v) = reduce_to_conjugacy(&gens, &SatInstance::new(vec![[1, 1, 1]]).unwrap());
    assert_eq!(decide(&u, &v, &bounded).unwrap().verdict(), Verdict::Conjugate);
}

#[test]
fn certificate_from_running_instance() {
    let fam = RelatorFamily::sat(None);
    let gens = fam.sat_generators().unwrap().clone();
    let eta = SatInstance::new(vec![[1, 3, -7], [-4, 7, 11], [1, 7, -9], [-3, 4, 9]]).unwrap();
    let (u, v) = reduce_to_conjugacy(&gens, &eta);
    let ConjugacyAnswer::Conjugate { diagram, .. } = decide(&u, &v, &fam).unwrap() else { panic!() };
    let a = extract_certificate(&diagram.unwrap(), &gens).unwrap();
    assert!(a.values().all(|&x| !x));
    assert_eq!(a.len(), 6);
    // a free-conjugacy answer has no regions to read from
    let (u, _) = reduce_to_conjugacy(&gens, &SatInstance::new(vec![[1, 1, 1]]).unwrap());
    let d = ConjugacyDiagram {
        outer: u.clone(),
        inner: u.clone(),
        outer_rotation: 0,
        inner_rotation: 0,
        base: Word::identity(),
        cells: vec![],
    };
    assert!(matches!(extract_certificate(&d, &gens), Err(crate::Error::Extraction(_))));
}
