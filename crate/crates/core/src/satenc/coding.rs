use crate::relators::{RelatorParams, Segment, SegmentKind, StructuredRelator};
use crate::words::{Alphabet, GenId, Syllable, Word};

use super::instance::{first_satisfying_assignment, Assignment, SatInstance};
use crate::error::Result;

/// Generator ids of the 3-SAT alphabet, resolved once.
#[derive(Clone, Debug)]
pub struct SatGenerators {
    /// `alpha[l-1] = [a_l, b_l, c_l]`
    pub alpha: [[GenId; 3]; 20],
    /// `beta[l-1] = [d_l, e_l, f_l]`
    pub beta: [[GenId; 3]; 20],
    /// `gamma[l-1] = [u_l, v_l, w_l]`
    pub gamma: [[GenId; 3]; 3],
    /// `delta[l-1] = [x_l, y_l, z_l]`
    pub delta: [[GenId; 3]; 2],
}

impl SatGenerators {
    pub fn new(al: &Alphabet) -> Self {
        let tri = |letters: [char; 3], l: usize| letters.map(|c| al.gen(c, l as u32 + 1));
        SatGenerators {
            alpha: std::array::from_fn(|l| tri(['a', 'b', 'c'], l)),
            beta: std::array::from_fn(|l| tri(['d', 'e', 'f'], l)),
            gamma: std::array::from_fn(|l| tri(['u', 'v', 'w'], l)),
            delta: std::array::from_fn(|l| tri(['x', 'y', 'z'], l)),
        }
    }
}

fn instance_syllables(eta: &SatInstance, gens: [GenId; 3]) -> impl Iterator<Item = Syllable> + '_ {
    eta.clauses()
        .iter()
        .flat_map(move |c| (0..3).map(move |p| Syllable::new(gens[p], c[p])))
}

fn assignment_syllables<'a>(
    eta: &'a SatInstance,
    a: &'a Assignment,
    gens: [GenId; 3],
) -> impl Iterator<Item = Syllable> + 'a {
    eta.clauses().iter().flat_map(move |c| {
        (0..3).map(move |p| {
            let v = c[p].unsigned_abs();
            let e = if a[&v] { v as i64 } else { -(v as i64) };
            Syllable::new(gens[p], e)
        })
    })
}

/// Clause `(z1, z2, z3)` becomes `g1^z1 g2^z2 g3^z3`; clauses are concatenated in order.
pub fn encode_instance(eta: &SatInstance, gens: [GenId; 3]) -> Word {
    Word::from_syllables(instance_syllables(eta, gens))
}

/// Clause `(z1, z2, z3)` becomes `g1^±|z1| g2^±|z2| g3^±|z3|`, negative exactly
/// when the variable is false under `a`.
///
/// Panics if `a` misses a variable of `eta`.
pub fn encode_assignment(eta: &SatInstance, a: &Assignment, gens: [GenId; 3]) -> Word {
    Word::from_syllables(assignment_syllables(eta, a, gens))
}

/// Reads an assignment back from a δ-coding. Returns `None` if the word does
/// not have the clause shape of `eta` or assigns one variable two values.
pub fn decode_assignment(eta: &SatInstance, w: &Word, gens: [GenId; 3]) -> Option<Assignment> {
    let syl = w.syllables();
    if syl.len() != 3 * eta.clauses().len() {
        return None;
    }
    let mut a = Assignment::new();
    for (k, s) in syl.iter().enumerate() {
        let z = eta.clauses()[k / 3][k % 3];
        if s.gen != gens[k % 3] || s.exp.unsigned_abs() != z.unsigned_abs() {
            return None;
        }
        let v = z.unsigned_abs();
        if *a.entry(v).or_insert(s.exp > 0) != (s.exp > 0) {
            return None;
        }
    }
    Some(a)
}

/// `α_1 ... α_20 (γ_1 δ_1 γ_2 δ_2 γ_3) β_20^-1 ... β_1^-1 (γ_1 δ_1 γ_2 δ_2 γ_3)^-1`
/// for the first satisfying assignment, or `None` when `eta` is unsatisfiable.
pub fn build_sat_relator(
    gens: &SatGenerators,
    eta: &SatInstance,
    index: Option<u64>,
) -> Result<Option<StructuredRelator>> {
    let Some(assignment) = first_satisfying_assignment(eta)? else {
        return Ok(None);
    };
    Ok(Some(assemble(gens, eta, assignment, index)))
}

pub(crate) fn assemble(
    gens: &SatGenerators,
    eta: &SatInstance,
    assignment: Assignment,
    index: Option<u64>,
) -> StructuredRelator {
    let m = 3 * eta.clauses().len();
    let mut syl = Vec::with_capacity(50 * m);
    for l in 0..20 {
        syl.extend(instance_syllables(eta, gens.alpha[l]));
    }
    let mut conj = Vec::with_capacity(5 * m);
    for l in 0..3 {
        conj.extend(instance_syllables(eta, gens.gamma[l]));
        if l < 2 {
            conj.extend(assignment_syllables(eta, &assignment, gens.delta[l]));
        }
    }
    syl.extend(conj.iter().copied());
    for l in (0..20).rev() {
        let b: Vec<Syllable> = instance_syllables(eta, gens.beta[l]).collect();
        syl.extend(b.iter().rev().map(|s| s.inverse()));
    }
    syl.extend(conj.iter().rev().map(|s| s.inverse()));
    let word = Word::from_syllables(syl);
    debug_assert_eq!(word.num_syllables(), 50 * m);
    StructuredRelator {
        index,
        word,
        segments: vec![
            Segment { kind: SegmentKind::ABlock, start: 0, end: 20 * m },
            Segment { kind: SegmentKind::Conjugating, start: 20 * m, end: 25 * m },
            Segment { kind: SegmentKind::BBlock, start: 25 * m, end: 45 * m },
            Segment { kind: SegmentKind::InverseConjugating, start: 45 * m, end: 50 * m },
        ],
        params: RelatorParams::Sat {
            instance: eta.clone(),
            assignment,
        },
    }
}

/// The hard pair `(α_1 ... α_20, β_1 ... β_20)`: conjugate in the group exactly
/// when `eta` is satisfiable.
pub fn reduce_to_conjugacy(gens: &SatGenerators, eta: &SatInstance) -> (Word, Word) {
    let u = Word::product(gens.alpha.iter().map(|&g| encode_instance(eta, g)).collect::<Vec<_>>().iter());
    let v = Word::product(gens.beta.iter().map(|&g| encode_instance(eta, g)).collect::<Vec<_>>().iter());
    (u, v)
}

/// Size of the usual text coding: one symbol per literal sign and one per decimal digit.
pub fn standard_coded_length(eta: &SatInstance) -> u64 {
    eta.clauses()
        .iter()
        .flatten()
        .map(|&z| (z < 0) as u64 + z.unsigned_abs().to_string().len() as u64 + 1)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn running() -> SatInstance {
        SatInstance::new(vec![[1, 3, -7], [-4, 7, 11], [1, 7, -9], [-3, 4, 9]]).unwrap()
    }

    #[test]
    fn running_instance_coding() {
        let al = Alphabet::sat_family();
        let g = SatGenerators::new(&al);
        let w = encode_instance(&running(), g.alpha[0]);
        // index order: 11, 16, 17, 22
        assert_eq!(
            al.format(&w),
            "a1 b1^3 c1^-7 a1^-3 b1^4 c1^9 a1 b1^7 c1^-9 a1^-4 b1^7 c1^11"
        );
        let a = first_satisfying_assignment(&running()).unwrap().unwrap();
        let d = encode_assignment(&running(), &a, g.delta[0]);
        assert!(d.syllables().iter().all(|s| s.exp < 0));
        assert_eq!(decode_assignment(&running(), &d, g.delta[0]), Some(a));
    }

    #[test]
    fn sign_rule() {
        let al = Alphabet::sat_family();
        let g = SatGenerators::new(&al);
        let eta = SatInstance::new(vec![[2, -5, 2]]).unwrap();
        assert_eq!(al.format(&encode_instance(&eta, g.alpha[0])), "a1^2 b1^-5 c1^2");
        let one = SatInstance::new(vec![[1, 1, 1]]).unwrap();
        let a: Assignment = [(1, true)].into();
        assert_eq!(al.format(&encode_assignment(&one, &a, g.delta[0])), "x1 y1 z1");
    }

    #[test]
    fn relator_shape() {
        let al = Alphabet::sat_family();
        let g = SatGenerators::new(&al);
        let r = build_sat_relator(&g, &running(), None).unwrap().unwrap();
        assert_eq!(r.word.num_syllables(), 600);
        let img = r.word.abelian_image(al.len());
        for l in 1..=3 {
            for c in ['u', 'v', 'w'] {
                assert_eq!(img[al.gen(c, l) as usize], 0);
            }
        }
        for l in 1..=2 {
            for c in ['x', 'y', 'z'] {
                assert_eq!(img[al.gen(c, l) as usize], 0);
            }
        }
        let contra = SatInstance::new(vec![[1, 1, 1], [-1, -1, -1]]).unwrap();
        assert!(build_sat_relator(&g, &contra, None).unwrap().is_none());
    }

    #[test]
    fn hard_pair_relation() {
        // r = u Γ v^-1 Γ^-1, so u = Γ v Γ^-1 in the group
        let al = Alphabet::sat_family();
        let g = SatGenerators::new(&al);
        let r = build_sat_relator(&g, &running(), None).unwrap().unwrap();
        let (u, v) = reduce_to_conjugacy(&g, &running());
        let gamma = r.conjugating_part();
        assert_eq!(r.word, u.mul(&v.conjugate_by(&gamma).inverse()));
    }
}
