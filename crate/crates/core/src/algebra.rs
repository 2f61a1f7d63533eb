use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use itertools::Itertools;

use crate::alphabet::Alphabet;
use crate::cyclic::{cyclic_orbit, CyclicClass};
use crate::error::{Error, Result};
use crate::phrase::{CanonicalForm, Phrase};

/// Largest rank for which full subphrase enumeration is attempted.
pub const MAX_SUBPHRASE_RANK: usize = 24;

/// A finitely supported integer combination of keys. Zero coefficients are
/// never stored, so derived equality is equality of formal sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSum<K: Ord> {
    terms: BTreeMap<K, i64>,
}

impl<K: Ord + Clone> FormalSum<K> {
    pub fn zero() -> Self {
        FormalSum { terms: BTreeMap::new() }
    }

    pub fn singleton(key: K) -> Self {
        let mut s = Self::zero();
        s.add_term(key, 1);
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (K, i64)>>(terms: I) -> Self {
        let mut s = Self::zero();
        for (k, c) in terms {
            s.add_term(k, c);
        }
        s
    }

    pub fn add_term(&mut self, key: K, coefficient: i64) {
        use std::collections::btree_map::Entry;
        if coefficient == 0 {
            return;
        }
        match self.terms.entry(key) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coefficient;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(coefficient);
            }
        }
    }

    pub fn coefficient(&self, key: &K) -> i64 {
        self.terms.get(key).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, i64)> {
        self.terms.iter().map(|(k, &c)| (k, c))
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, factor: i64) -> Self {
        if factor == 0 {
            return Self::zero();
        }
        FormalSum {
            terms: self.terms.iter().map(|(k, &c)| (k.clone(), c * factor)).collect(),
        }
    }

    /// Pushes every key through `f`, merging coefficients that collide.
    pub fn map_keys<K2: Ord + Clone>(&self, f: impl Fn(&K) -> K2) -> FormalSum<K2> {
        let mut out = FormalSum::zero();
        for (k, c) in self.iter() {
            out.add_term(f(k), c);
        }
        out
    }
}

impl<K: Ord + Clone> Add for &FormalSum<K> {
    type Output = FormalSum<K>;

    fn add(self, rhs: &FormalSum<K>) -> FormalSum<K> {
        let mut out = self.clone();
        for (k, c) in rhs.iter() {
            out.add_term(k.clone(), c);
        }
        out
    }
}

impl<K: Ord + Clone> Sub for &FormalSum<K> {
    type Output = FormalSum<K>;

    fn sub(self, rhs: &FormalSum<K>) -> FormalSum<K> {
        let mut out = self.clone();
        for (k, c) in rhs.iter() {
            out.add_term(k.clone(), -c);
        }
        out
    }
}

impl<K: Ord + Clone> Neg for &FormalSum<K> {
    type Output = FormalSum<K>;

    fn neg(self) -> FormalSum<K> {
        self.scaled(-1)
    }
}

/// The projection from sums over isomorphism classes to sums over cyclic
/// equivalence classes, realized by re-keying.
pub fn project_to_classes(
    sum: &FormalSum<CanonicalForm>,
    alphabet: &Alphabet,
) -> FormalSum<CyclicClass> {
    sum.map_keys(|form| CyclicClass::from_form(form, alphabet))
}

fn check_capacity(operation: &'static str, rank: usize) -> Result<()> {
    if rank > MAX_SUBPHRASE_RANK {
        return Err(Error::Capacity {
            operation,
            quantity: "rank",
            actual: rank as u128,
            bound: MAX_SUBPHRASE_RANK as u128,
        });
    }
    Ok(())
}

/// All `2^rank` subphrases of `p`: every way of deleting letter pairs,
/// keeping projections and the component count. The order is by subset
/// bitmask over the letter table, so `p` itself comes last.
pub fn subphrases(p: &Phrase) -> Result<Vec<Phrase>> {
    let k = p.rank();
    check_capacity("subphrases", k)?;
    let no_resolve = vec![false; k];
    let mut out = Vec::with_capacity(1 << k);
    for mask in 0u64..(1 << k) {
        let keep: Vec<bool> = (0..k).map(|i| mask & (1 << i) != 0).collect();
        out.push(p.restrict(&keep, &no_resolve));
    }
    Ok(out)
}

/// The sum of all subphrases of `p` as a formal sum of canonical forms.
pub fn subphrase_sum(p: &Phrase) -> Result<FormalSum<CanonicalForm>> {
    let mut sum = FormalSum::zero();
    for q in subphrases(p)? {
        sum.add_term(q.canonical_form(), 1);
    }
    Ok(sum)
}

/// The alternating sum over subphrases, signed by `(-1)^(rank p - rank q)`.
/// Inverse of [`subphrase_sum`].
pub fn alternating_subphrase_sum(p: &Phrase) -> Result<FormalSum<CanonicalForm>> {
    let k = p.rank();
    let mut sum = FormalSum::zero();
    for q in subphrases(p)? {
        let sign = if (k - q.rank()) % 2 == 0 { 1 } else { -1 };
        sum.add_term(q.canonical_form(), sign);
    }
    Ok(sum)
}

/// Linear extension of [`subphrase_sum`] to formal sums.
pub fn subphrase_sum_linear(
    sum: &FormalSum<CanonicalForm>,
    alphabet: &Arc<Alphabet>,
) -> Result<FormalSum<CanonicalForm>> {
    let mut out = FormalSum::zero();
    for (form, c) in sum.iter() {
        let expanded = subphrase_sum(&form.to_phrase(alphabet))?;
        for (k, c2) in expanded.iter() {
            out.add_term(k.clone(), c * c2);
        }
    }
    Ok(out)
}

/// Linear extension of [`alternating_subphrase_sum`] to formal sums.
pub fn alternating_subphrase_sum_linear(
    sum: &FormalSum<CanonicalForm>,
    alphabet: &Arc<Alphabet>,
) -> Result<FormalSum<CanonicalForm>> {
    let mut out = FormalSum::zero();
    for (form, c) in sum.iter() {
        let expanded = alternating_subphrase_sum(&form.to_phrase(alphabet))?;
        for (k, c2) in expanded.iter() {
            out.add_term(k.clone(), c * c2);
        }
    }
    Ok(out)
}

fn check_pairing_inputs(operation: &'static str, w: &Phrase, v: &Phrase) -> Result<()> {
    if w.alphabet() != v.alphabet() {
        return Err(Error::AlphabetMismatch { operation });
    }
    if w.component_count() != v.component_count() {
        return Err(Error::ComponentMismatch {
            operation,
            left: w.component_count(),
            right: v.component_count(),
        });
    }
    if w.is_singular() || v.is_singular() {
        return Err(Error::SingularInput { operation });
    }
    Ok(())
}

/// The number of subphrases of `v` isomorphic to `w`. Only subsets of size
/// `rank(w)` are enumerated.
pub fn pairing(w: &Phrase, v: &Phrase) -> Result<i64> {
    check_pairing_inputs("pairing", w, v)?;
    let size = w.rank();
    if size > v.rank() {
        return Ok(0);
    }
    let target = w.canonical_form();
    let no_resolve = vec![false; v.rank()];
    let mut count = 0;
    for subset in (0..v.rank()).combinations(size) {
        let mut keep = vec![false; v.rank()];
        for id in subset {
            keep[id] = true;
        }
        if v.restrict(&keep, &no_resolve).canonical_form() == target {
            count += 1;
        }
    }
    Ok(count)
}

/// The number of subphrases of `v` whose cyclic class equals that of `w`,
/// i.e. the orbit sum of `w` paired against `v`.
pub fn orbit_pairing(w: &Phrase, v: &Phrase) -> Result<i64> {
    check_pairing_inputs("orbit_pairing", w, v)?;
    let size = w.rank();
    if size > v.rank() {
        return Ok(0);
    }
    let orbit = cyclic_orbit(w);
    let no_resolve = vec![false; v.rank()];
    let mut count = 0;
    for subset in (0..v.rank()).combinations(size) {
        let mut keep = vec![false; v.rank()];
        for id in subset {
            keep[id] = true;
        }
        if orbit.contains(&v.restrict(&keep, &no_resolve).canonical_form()) {
            count += 1;
        }
    }
    Ok(count)
}

/// Bilinear extension of [`pairing`] to formal sums.
pub fn pairing_linear(
    a: &FormalSum<CanonicalForm>,
    b: &FormalSum<CanonicalForm>,
    alphabet: &Arc<Alphabet>,
) -> Result<i64> {
    let mut total = 0;
    for (ka, ca) in a.iter() {
        let w = ka.to_phrase(alphabet);
        for (kb, cb) in b.iter() {
            total += ca * cb * pairing(&w, &kb.to_phrase(alphabet))?;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::cyclic::cyclic_canonical;
    use std::collections::BTreeSet;

    fn parse(text: &str) -> Phrase {
        Phrase::parse(text, &Alphabet::signed()).unwrap()
    }

    #[test]
    fn formal_sum_drops_zero_coefficients() {
        let mut s = FormalSum::zero();
        s.add_term("x", 2);
        s.add_term("x", -2);
        assert!(s.is_zero());
        s.add_term("y", 3);
        s.add_term("y", 0);
        assert_eq!(s.coefficient(&"y"), 3);
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn formal_sum_arithmetic() {
        let a = FormalSum::from_terms([("x", 1), ("y", 2)]);
        let b = FormalSum::from_terms([("y", -2), ("z", 5)]);
        let sum = &a + &b;
        assert_eq!(sum, FormalSum::from_terms([("x", 1), ("z", 5)]));
        assert!((&sum - &sum).is_zero());
        assert_eq!((-&a).coefficient(&"y"), -2);
    }

    #[test]
    fn subphrases_of_the_two_component_example() {
        let p = parse("A:+ B:+ A:+ | B:+");
        let got: BTreeSet<_> = subphrases(&p)
            .unwrap()
            .into_iter()
            .map(|q| q.canonical_form())
            .collect();
        let expected: BTreeSet<_> = [
            parse("A:+ B:+ A:+ | B:+"),
            parse("A:+ A:+ | ∅"),
            parse("B:+ | B:+"),
            parse("∅ | ∅"),
        ]
        .iter()
        .map(|q| q.canonical_form())
        .collect();
        assert_eq!(got, expected);
        assert_eq!(got.len(), 4);
    }

    #[test]
    fn trivial_phrase_has_one_subphrase() {
        let p = parse("| |");
        let subs = subphrases(&p).unwrap();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].canonical_form(), p.canonical_form());
    }

    #[test]
    fn subphrase_sum_examples() {
        let empty = parse("");
        assert_eq!(
            subphrase_sum(&empty).unwrap(),
            FormalSum::singleton(empty.canonical_form())
        );

        let aa = parse("A:+ A:+");
        let theta = subphrase_sum(&aa).unwrap();
        assert_eq!(theta.coefficient(&aa.canonical_form()), 1);
        assert_eq!(theta.coefficient(&empty.canonical_form()), 1);

        let phi = alternating_subphrase_sum(&aa).unwrap();
        assert_eq!(phi.coefficient(&aa.canonical_form()), 1);
        assert_eq!(phi.coefficient(&empty.canonical_form()), -1);
    }

    #[test]
    fn alternating_sum_inverts_subphrase_sum() {
        let a = Alphabet::signed();
        for text in ["A:+ B:- A:+ B:-", "A:+ B:- A:+ | B:- C:+ C:+", "X:- X:- Y:+ Z:- Y:+ Z:-"] {
            let p = parse(text);
            let s = FormalSum::singleton(p.canonical_form());
            let theta = subphrase_sum_linear(&s, &a).unwrap();
            assert_eq!(alternating_subphrase_sum_linear(&theta, &a).unwrap(), s);
            let phi = alternating_subphrase_sum_linear(&s, &a).unwrap();
            assert_eq!(subphrase_sum_linear(&phi, &a).unwrap(), s);
        }
    }

    #[test]
    fn pairing_counts_isomorphic_subphrases() {
        let v = parse("A:+ A:+ B:- B:- C:+ C:+");
        assert_eq!(pairing(&parse("A:+ A:+"), &v).unwrap(), 2);
        assert_eq!(pairing(&parse(""), &v).unwrap(), 1);
        assert_eq!(pairing(&v, &v).unwrap(), 1);
        assert_eq!(pairing(&parse("A:+ B:+ A:+ B:+"), &v).unwrap(), 0);
    }

    #[test]
    fn pairing_rejects_mismatched_inputs() {
        let w = parse("A:+ | A:+");
        let v = parse("A:+ A:+");
        assert!(matches!(
            pairing(&w, &v),
            Err(Error::ComponentMismatch { .. })
        ));
        let s = Phrase::parse("A:+* A:+*", &Alphabet::signed()).unwrap();
        assert!(matches!(pairing(&s, &v), Err(Error::SingularInput { .. })));
    }

    #[test]
    fn orbit_pairing_with_the_one_letter_class_counts_rank() {
        for text in ["A:+ A:+ B:- B:- C:+ C:+", "A:- B:+ A:- B:+", "X:- X:-"] {
            let v = parse(text);
            assert_eq!(
                orbit_pairing(&parse("A:+ A:+"), &v).unwrap(),
                v.rank() as i64
            );
        }
        assert_eq!(orbit_pairing(&parse(""), &parse("A:- A:-")).unwrap(), 1);
    }

    #[test]
    fn orbit_pairing_matches_sum_over_orbit_members() {
        let a = Alphabet::signed();
        let w = parse("X:+ X:+ Y:- Y:-");
        let v = parse("A:+ A:+ B:- B:- C:+ C:+");
        let direct = orbit_pairing(&w, &v).unwrap();
        let mut via_members = 0;
        for form in cyclic_orbit(&w) {
            via_members += pairing(&form.to_phrase(&a), &v).unwrap();
        }
        assert_eq!(direct, via_members);
    }

    #[test]
    fn seventh_section_pairings_are_equal_but_finer_classes_differ() {
        // Both signed pairings with the mixed-sign two-letter class come out
        // to 2; the all-plus class tells the two words apart (1 vs 0).
        let mixed = parse("A:+ A:+ B:- B:-");
        let plus = parse("A:+ A:+ B:+ B:+");
        let v1 = parse("A:+ A:+ B:- B:- C:+ C:+");
        let v2 = parse("A:- A:- B:- B:- C:+ C:+");
        assert_eq!(orbit_pairing(&mixed, &v1).unwrap(), 2);
        assert_eq!(orbit_pairing(&mixed, &v2).unwrap(), 2);
        assert_eq!(orbit_pairing(&plus, &v1).unwrap(), 1);
        assert_eq!(orbit_pairing(&plus, &v2).unwrap(), 0);
    }

    #[test]
    fn projection_respects_cyclic_equivalence() {
        let a = Alphabet::signed();
        let p = parse("X:+ X:+ Y:- Y:-");
        let q = crate::cyclic::shift_component(&p, 0).unwrap();
        assert_eq!(cyclic_canonical(&p), cyclic_canonical(&q));
        let tp = project_to_classes(&subphrase_sum(&p).unwrap(), &a);
        let tq = project_to_classes(&subphrase_sum(&q).unwrap(), &a);
        assert_eq!(tp, tq);
    }

    #[test]
    fn pairing_linear_is_bilinear() {
        let a = Alphabet::signed();
        let w1 = parse("A:+ A:+");
        let w2 = parse("A:+ B:+ A:+ B:+");
        let v = parse("A:+ A:+ B:+ B:+");
        let sum_w = &FormalSum::singleton(w1.canonical_form())
            + &FormalSum::singleton(w2.canonical_form()).scaled(3);
        let sv = FormalSum::singleton(v.canonical_form());
        let lhs = pairing_linear(&sum_w, &sv, &a).unwrap();
        let rhs = pairing(&w1, &v).unwrap() + 3 * pairing(&w2, &v).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn capacity_guard_names_the_bound() {
        let a = Alphabet::signed();
        let k = MAX_SUBPHRASE_RANK + 1;
        let text: Vec<String> = (0..k).map(|i| format!("L{i}:+ L{i}:+")).collect();
        let p = Phrase::parse(&text.join(" "), &a).unwrap();
        assert!(matches!(subphrases(&p), Err(Error::Capacity { .. })));
    }
}
