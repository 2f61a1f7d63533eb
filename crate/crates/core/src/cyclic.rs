use std::collections::BTreeSet;

use crate::algebra::FormalSum;
use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::phrase::{CanonicalForm, Phrase};

/// A cyclic equivalence class, stored as the minimum canonical form over the
/// full shift orbit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicClass {
    representative: CanonicalForm,
}

impl CyclicClass {
    pub fn representative(&self) -> &CanonicalForm {
        &self.representative
    }

    pub fn rank(&self) -> usize {
        self.representative.rank()
    }

    pub fn component_count(&self) -> usize {
        self.representative.component_count()
    }

    pub(crate) fn from_form(form: &CanonicalForm, alphabet: &Alphabet) -> CyclicClass {
        let orbit = orbit_of_form(form, alphabet);
        CyclicClass {
            representative: orbit.into_iter().next().expect("orbit contains the input"),
        }
    }
}

/// The nu-shift move on component `index`: the leading letter moves to the
/// end, and its projection passes through the involution exactly when its
/// other occurrence sits in the same component. Empty and single-letter
/// components are left unchanged.
pub fn shift_component(p: &Phrase, index: usize) -> Result<Phrase> {
    if index >= p.component_count() {
        return Err(Error::ComponentIndex {
            operation: "shift_component",
            index,
            count: p.component_count(),
        });
    }
    let comp = p.component(index);
    if comp.len() < 2 {
        return Ok(p.clone());
    }
    let head = comp[0];
    let twin_inside = comp[1..].contains(&head);

    let mut letters = p.letters().to_vec();
    if twin_inside {
        letters[head].symbol = p.alphabet().nu(letters[head].symbol);
    }
    let mut components = p.components().to_vec();
    components[index].rotate_left(1);
    Ok(Phrase::from_raw(p.alphabet().clone(), letters, components))
}

/// Shift move acting directly on a canonical form.
pub(crate) fn shift_form(form: &CanonicalForm, index: usize, alphabet: &Alphabet) -> CanonicalForm {
    let comp = &form.skeleton()[index];
    if comp.len() < 2 {
        return form.clone();
    }
    let head = comp[0];
    let twin_inside = comp[1..].contains(&head);

    let mut letters = form.letter_entries().to_vec();
    if twin_inside {
        let (symbol, singular) = letters[head as usize];
        letters[head as usize] = (alphabet.nu(symbol as usize) as u32, singular);
    }
    let mut skeleton = form.skeleton().to_vec();
    skeleton[index].rotate_left(1);
    renormalize(&skeleton, &letters)
}

/// Renumbers letters by first occurrence after a component was rotated.
fn renormalize(skeleton: &[Vec<u32>], letters: &[(u32, bool)]) -> CanonicalForm {
    let mut remap = vec![u32::MAX; letters.len()];
    let mut order = Vec::with_capacity(letters.len());
    let mut new_skeleton = Vec::with_capacity(skeleton.len());
    for comp in skeleton {
        let mut out = Vec::with_capacity(comp.len());
        for &k in comp {
            if remap[k as usize] == u32::MAX {
                remap[k as usize] = order.len() as u32;
                order.push(k as usize);
            }
            out.push(remap[k as usize]);
        }
        new_skeleton.push(out);
    }
    let new_letters = order.iter().map(|&k| letters[k]).collect();
    CanonicalForm::from_parts(new_skeleton, new_letters)
}

/// Closure of a form under shift moves on every component.
pub(crate) fn orbit_of_form(form: &CanonicalForm, alphabet: &Alphabet) -> BTreeSet<CanonicalForm> {
    let mut seen = BTreeSet::new();
    let mut queue = vec![form.clone()];
    seen.insert(form.clone());
    while let Some(current) = queue.pop() {
        for i in 0..current.component_count() {
            let next = shift_form(&current, i, alphabet);
            if seen.insert(next.clone()) {
                queue.push(next);
            }
        }
    }
    seen
}

/// All isomorphism classes reachable from `p` by shift moves.
pub fn cyclic_orbit(p: &Phrase) -> BTreeSet<CanonicalForm> {
    orbit_of_form(&p.canonical_form(), p.alphabet())
}

/// The cyclic equivalence class of `p`.
pub fn cyclic_canonical(p: &Phrase) -> CyclicClass {
    CyclicClass::from_form(&p.canonical_form(), p.alphabet())
}

/// The orbit sum `[w]`: coefficient one on every member of the shift orbit.
pub fn orbit_sum(p: &Phrase) -> FormalSum<CanonicalForm> {
    let mut sum = FormalSum::zero();
    for form in cyclic_orbit(p) {
        sum.add_term(form, 1);
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use std::sync::Arc;

    fn parse(text: &str) -> Phrase {
        Phrase::parse(text, &Alphabet::signed()).unwrap()
    }

    fn form(text: &str) -> CanonicalForm {
        parse(text).canonical_form()
    }

    #[test]
    fn shift_flips_through_nu_when_twin_stays() {
        let p = parse("X:+ X:+ Y:- Y:-");
        let shifted = shift_component(&p, 0).unwrap();
        // X moves to the end and picks up the involution: X̄ Ȳ Ȳ X̄.
        assert_eq!(shifted.canonical_form(), form("X:- Y:- Y:- X:-"));
    }

    #[test]
    fn shift_keeps_single_letter_components() {
        let p = parse("A:+ | A:+");
        assert_eq!(shift_component(&p, 0).unwrap(), p);
        let q = parse("A:+ B:- A:+ | B:-");
        assert_eq!(shift_component(&q, 1).unwrap(), q);
        assert!(matches!(
            shift_component(&q, 2),
            Err(Error::ComponentIndex { .. })
        ));
    }

    #[test]
    fn shift_without_twin_keeps_projection() {
        let p = parse("A:+ B:- A:+ | B:-");
        let shifted = shift_component(&p, 0).unwrap();
        // |A| flips (its twin stays in the component), |B| does not.
        assert_eq!(shifted.canonical_form(), form("B:- A:- A:- | B:-"));
    }

    #[test]
    fn orbit_of_mixed_sign_word_has_four_classes() {
        let orbit = cyclic_orbit(&parse("X:+ X:+ Y:- Y:-"));
        let expected: BTreeSet<_> = [
            form("X:+ X:+ Y:- Y:-"),
            form("Y:+ X:+ X:+ Y:+"),
            form("Y:- Y:- X:+ X:+"),
            form("X:- Y:- Y:- X:-"),
        ]
        .into_iter()
        .collect();
        assert_eq!(orbit, expected);
    }

    #[test]
    fn orbit_of_plus_word_has_two_classes() {
        let orbit = cyclic_orbit(&parse("X:+ X:+ Y:+ Y:+"));
        let expected: BTreeSet<_> = [form("X:+ X:+ Y:+ Y:+"), form("Y:- X:+ X:+ Y:-")]
            .into_iter()
            .collect();
        assert_eq!(orbit, expected);
    }

    #[test]
    fn orbit_of_trivial_phrase_is_itself() {
        let p = parse("| |");
        let orbit = cyclic_orbit(&p);
        assert_eq!(orbit.len(), 1);
        assert!(orbit.contains(&p.canonical_form()));
    }

    #[test]
    fn cyclic_canonical_examples() {
        assert_eq!(
            cyclic_canonical(&parse("A:+ A:+")),
            cyclic_canonical(&parse("A:- A:-"))
        );
        assert_eq!(
            cyclic_canonical(&parse("X:+ X:+ Y:+ Y:+")),
            cyclic_canonical(&parse("Y:- X:+ X:+ Y:-"))
        );
        // Single-letter components never shift, so the orbits are singletons.
        assert_ne!(
            cyclic_canonical(&parse("A:+ | A:+")),
            cyclic_canonical(&parse("A:- | A:-"))
        );
    }

    #[test]
    fn orbit_sum_counts_orbit_members() {
        let s = orbit_sum(&parse("X:+ X:+ Y:- Y:-"));
        assert_eq!(s.len(), 4);
        assert!(s.iter().all(|(_, c)| c == 1));
        let trivial = orbit_sum(&parse(""));
        assert_eq!(trivial.len(), 1);
    }

    #[test]
    fn shift_component_and_shift_form_agree() {
        let a = Alphabet::signed();
        let p = parse("A:+ B:- C:+ A:+ | B:- C:+ D:-* D:-*");
        for i in 0..p.component_count() {
            let via_phrase = shift_component(&p, i).unwrap().canonical_form();
            let via_form = shift_form(&p.canonical_form(), i, &a);
            assert_eq!(via_phrase, via_form);
        }
    }

    #[test]
    fn full_cycle_of_shifts_is_identity() {
        let words = ["X:+ X:+ Y:- Y:-", "A:+ B:- A:+ B:-", "A:+ B:- A:+ | B:- C:+ C:+"];
        for text in words {
            let p = parse(text);
            for i in 0..p.component_count() {
                let mut q = p.clone();
                for _ in 0..2 * p.component(i).len().max(1) {
                    q = shift_component(&q, i).unwrap();
                }
                assert_eq!(q.canonical_form(), p.canonical_form());
            }
        }
    }

    #[test]
    fn nu_acts_through_the_star_on_singular_letters() {
        let a: Arc<Alphabet> = Alphabet::signed();
        let p = Phrase::parse("A:+* A:+* B:- B:-", &a).unwrap();
        let shifted = shift_component(&p, 0).unwrap();
        let head = shifted
            .letters()
            .iter()
            .find(|l| l.name == "A")
            .unwrap();
        assert!(head.singular, "the star survives the shift");
        assert_eq!(a.symbol(head.symbol), "-");
    }
}
