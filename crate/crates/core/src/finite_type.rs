use std::collections::BTreeSet;
use std::sync::Arc;

use itertools::Itertools;

use crate::algebra::FormalSum;
use crate::alphabet::Alphabet;
use crate::cyclic::{cyclic_canonical, CyclicClass};
use crate::enumerate::enumerate_forms;
use crate::error::{Error, Result};
use crate::phrase::Phrase;
use crate::Rational;

/// Maximum number of singular letters a resolution expansion will accept.
pub const MAX_SINGULAR: usize = 20;

/// Values an invariant may take: anything with exact abelian-group
/// structure. Equality is exact; nothing here is approximate.
pub trait GroupValue: Clone + PartialEq {
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;

    fn is_zero(&self) -> bool {
        *self == self.sub(self)
    }
}

impl GroupValue for i64 {
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
}

impl GroupValue for Rational {
    fn add(&self, rhs: &Self) -> Self {
        *self + *rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        *self - *rhs
    }
}

impl<K: Ord + Clone> GroupValue for FormalSum<K> {
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn is_zero(&self) -> bool {
        self.is_empty()
    }
}

impl<A: GroupValue, B: GroupValue> GroupValue for (A, B) {
    fn add(&self, rhs: &Self) -> Self {
        (self.0.add(&rhs.0), self.1.add(&rhs.1))
    }

    fn sub(&self, rhs: &Self) -> Self {
        (self.0.sub(&rhs.0), self.1.sub(&rhs.1))
    }
}

impl<A: GroupValue, B: GroupValue, C: GroupValue> GroupValue for (A, B, C) {
    fn add(&self, rhs: &Self) -> Self {
        (self.0.add(&rhs.0), self.1.add(&rhs.1), self.2.add(&rhs.2))
    }

    fn sub(&self, rhs: &Self) -> Self {
        (self.0.sub(&rhs.0), self.1.sub(&rhs.1), self.2.sub(&rhs.2))
    }
}

/// The value of the universal invariant: coefficients on cyclic classes of
/// rank at most `degree`, all with the same component count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantVector {
    coefficients: FormalSum<CyclicClass>,
    degree: usize,
    components: usize,
}

impl InvariantVector {
    pub fn coefficients(&self) -> &FormalSum<CyclicClass> {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn coefficient(&self, class: &CyclicClass) -> i64 {
        self.coefficients.coefficient(class)
    }

    /// The coordinate vector with a single one at `class`.
    pub fn unit(class: CyclicClass, degree: usize, components: usize) -> Self {
        InvariantVector {
            coefficients: FormalSum::singleton(class),
            degree,
            components,
        }
    }

    /// Restriction to classes of rank at most `degree`.
    pub fn truncated(&self, degree: usize) -> InvariantVector {
        let coefficients = FormalSum::from_terms(
            self.coefficients
                .iter()
                .filter(|(class, _)| class.rank() <= degree)
                .map(|(class, c)| (class.clone(), c)),
        );
        InvariantVector {
            coefficients,
            degree,
            components: self.components,
        }
    }
}

impl GroupValue for InvariantVector {
    fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.degree, rhs.degree, "mixed invariant degrees");
        assert_eq!(self.components, rhs.components, "mixed component counts");
        InvariantVector {
            coefficients: &self.coefficients + &rhs.coefficients,
            degree: self.degree,
            components: self.components,
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.degree, rhs.degree, "mixed invariant degrees");
        assert_eq!(self.components, rhs.components, "mixed component counts");
        InvariantVector {
            coefficients: &self.coefficients - &rhs.coefficients,
            degree: self.degree,
            components: self.components,
        }
    }

    fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }
}

/// Flags every letter of a non-singular nanophrase as singular.
pub fn star_all(w: &Phrase) -> Result<Phrase> {
    if w.is_singular() {
        return Err(Error::AlreadySingular);
    }
    let letters = w
        .letters()
        .iter()
        .map(|l| crate::phrase::Letter {
            name: l.name.clone(),
            symbol: l.symbol,
            singular: true,
        })
        .collect();
    Ok(Phrase::from_raw(
        w.alphabet().clone(),
        letters,
        w.components().to_vec(),
    ))
}

/// The `2^s` resolutions of a phrase with `s` singular letters. For each
/// subset of the singular letters, the subset is replaced by non-singular
/// letters of the same projection and the rest are deleted; the sign is
/// `(-1)^(s - |subset|)`.
pub fn resolutions(p: &Phrase) -> Result<Vec<(i64, Phrase)>> {
    let singular = p.singular_letters();
    let s = singular.len();
    if s > MAX_SINGULAR {
        return Err(Error::Capacity {
            operation: "resolutions",
            quantity: "singular letters",
            actual: s as u128,
            bound: MAX_SINGULAR as u128,
        });
    }
    let mut out = Vec::with_capacity(1 << s);
    for mask in 0u64..(1 << s) {
        let mut keep = vec![true; p.rank()];
        let mut resolve = vec![false; p.rank()];
        let mut kept = 0;
        for (bit, &id) in singular.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                resolve[id] = true;
                kept += 1;
            } else {
                keep[id] = false;
            }
        }
        let sign = if (s - kept) % 2 == 0 { 1 } else { -1 };
        out.push((sign, p.restrict(&keep, &resolve)));
    }
    Ok(out)
}

/// Evaluates the singular extension of `u` on `p` by summing signed
/// resolutions. Agrees with `u` on non-singular input.
pub fn extend_invariant<V, F>(u: F, p: &Phrase) -> Result<V>
where
    V: GroupValue,
    F: Fn(&Phrase) -> Result<V>,
{
    let mut acc: Option<V> = None;
    for (sign, q) in resolutions(p)? {
        let value = u(&q)?;
        acc = Some(match acc {
            None => {
                if sign > 0 {
                    value
                } else {
                    let zero = value.sub(&value);
                    zero.sub(&value)
                }
            }
            Some(a) => {
                if sign > 0 {
                    a.add(&value)
                } else {
                    a.sub(&value)
                }
            }
        });
    }
    Ok(acc.expect("at least one resolution"))
}

/// The universal finite type invariant of degree `m`: counts, for every
/// cyclic class of rank at most `m`, the subphrases of `p` lying in it.
pub fn universal_invariant(p: &Phrase, m: usize) -> Result<InvariantVector> {
    if p.is_singular() {
        return Err(Error::SingularInput {
            operation: "universal_invariant",
        });
    }
    let k = p.rank();
    if k > crate::algebra::MAX_SUBPHRASE_RANK {
        return Err(Error::Capacity {
            operation: "universal_invariant",
            quantity: "rank",
            actual: k as u128,
            bound: crate::algebra::MAX_SUBPHRASE_RANK as u128,
        });
    }
    let no_resolve = vec![false; k];
    let mut coefficients = FormalSum::zero();
    for size in 0..=m.min(k) {
        for subset in (0..k).combinations(size) {
            let mut keep = vec![false; k];
            for id in subset {
                keep[id] = true;
            }
            let class = cyclic_canonical(&p.restrict(&keep, &no_resolve));
            coefficients.add_term(class, 1);
        }
    }
    Ok(InvariantVector {
        coefficients,
        degree: m,
        components: p.component_count(),
    })
}

/// All distinct cyclic classes of rank at most `m` on `n` components,
/// sorted by the canonical order.
pub fn class_basis(m: usize, n: usize, alphabet: &Arc<Alphabet>) -> Result<Vec<CyclicClass>> {
    let mut seen: BTreeSet<CyclicClass> = BTreeSet::new();
    for rank in 0..=m {
        for form in enumerate_forms(rank, n, alphabet, 0)? {
            seen.insert(CyclicClass::from_form(&form, alphabet));
        }
    }
    Ok(seen.into_iter().collect())
}

/// Outcome of an exhaustive degree check.
#[derive(Debug, Clone)]
pub struct DegreeReport {
    pub holds: bool,
    pub witness: Option<Phrase>,
}

/// Checks that the singular extension of `u` vanishes on every phrase with
/// exactly `m + 1` singular letters and total rank at most `rank_bound`,
/// exhaustively over canonical representatives. A failing phrase is
/// returned as a witness.
pub fn check_degree_at_most<V, F>(
    u: F,
    m: usize,
    rank_bound: usize,
    n: usize,
    alphabet: &Arc<Alphabet>,
) -> Result<DegreeReport>
where
    V: GroupValue,
    F: Fn(&Phrase) -> Result<V>,
{
    for rank in (m + 1)..=rank_bound.max(m) {
        for form in enumerate_forms(rank, n, alphabet, m + 1)? {
            let p = form.to_phrase(alphabet);
            let value = extend_invariant(&u, &p)?;
            if !value.is_zero() {
                return Ok(DegreeReport {
                    holds: false,
                    witness: Some(p),
                });
            }
        }
    }
    Ok(DegreeReport {
        holds: true,
        witness: None,
    })
}

/// True when the extension of `u` is non-zero on `star_all(p)` for some
/// non-singular phrase `p` of rank exactly `m` (the hint is tried first,
/// otherwise the basis representatives are searched).
pub fn check_degree_exact<V, F>(
    u: F,
    m: usize,
    n: usize,
    alphabet: &Arc<Alphabet>,
    hint: Option<&Phrase>,
) -> Result<bool>
where
    V: GroupValue,
    F: Fn(&Phrase) -> Result<V>,
{
    if let Some(p) = hint {
        let value = extend_invariant(&u, &star_all(p)?)?;
        if !value.is_zero() {
            return Ok(true);
        }
    }
    for class in class_basis(m, n, alphabet)? {
        if class.rank() != m {
            continue;
        }
        let p = class.representative().to_phrase(alphabet);
        let value = extend_invariant(&u, &star_all(&p)?)?;
        if !value.is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::orbit_pairing;
    use crate::alphabet::Alphabet;

    fn parse(text: &str) -> Phrase {
        Phrase::parse(text, &Alphabet::signed()).unwrap()
    }

    fn rank_invariant(p: &Phrase) -> Result<i64> {
        Ok(p.rank() as i64)
    }

    #[test]
    fn star_all_flags_every_letter() {
        let w = parse("A:+ A:+");
        let starred = star_all(&w).unwrap();
        assert_eq!(starred.rank(), 1);
        assert!(starred.letters().iter().all(|l| l.singular));
        assert!(star_all(&starred).is_err());
        assert_eq!(star_all(&parse("| |")).unwrap().rank(), 0);
    }

    #[test]
    fn resolutions_of_one_singular_pair() {
        let p = Phrase::parse("A:+* A:+*", &Alphabet::signed()).unwrap();
        let r = resolutions(&p).unwrap();
        assert_eq!(r.len(), 2);
        let plus: Vec<_> = r.iter().filter(|(s, _)| *s > 0).collect();
        let minus: Vec<_> = r.iter().filter(|(s, _)| *s < 0).collect();
        assert_eq!(plus.len(), 1);
        assert_eq!(minus.len(), 1);
        assert_eq!(plus[0].1.canonical_form(), parse("A:+ A:+").canonical_form());
        assert_eq!(minus[0].1.canonical_form(), parse("").canonical_form());
    }

    #[test]
    fn non_singular_phrases_resolve_to_themselves() {
        let p = parse("A:+ B:- A:+ B:-");
        let r = resolutions(&p).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].0, 1);
        assert_eq!(r[0].1, p);
        assert_eq!(extend_invariant(rank_invariant, &p).unwrap(), 2);
    }

    #[test]
    fn rank_extension_values() {
        let one_star = Phrase::parse("A:+* A:+*", &Alphabet::signed()).unwrap();
        assert_eq!(extend_invariant(rank_invariant, &one_star).unwrap(), 1);

        // Any phrase with exactly two singular letters kills the rank.
        let two_star = Phrase::parse("A:+* B:-* A:+* B:-*", &Alphabet::signed()).unwrap();
        assert_eq!(extend_invariant(rank_invariant, &two_star).unwrap(), 0);
    }

    #[test]
    fn interleaved_expansion_matches_both_elimination_orders() {
        // û(xA*yB*zA*wB*t) expands to the same four terms regardless of
        // which singular letter is eliminated first.
        let a = Alphabet::signed();
        let p = Phrase::parse("A:+* B:-* A:+* B:-* C:+ C:+", &a).unwrap();
        let r = resolutions(&p).unwrap();
        assert_eq!(r.len(), 4);
        let total: i64 = r
            .iter()
            .map(|(s, q)| s * q.rank() as i64)
            .sum();
        assert_eq!(total, extend_invariant(rank_invariant, &p).unwrap());
    }

    #[test]
    fn universal_invariant_of_the_one_letter_word() {
        let w = parse("A:+ A:+");
        let v = universal_invariant(&w, 1).unwrap();
        assert_eq!(v.coefficients().len(), 2);
        assert_eq!(v.coefficient(&cyclic_canonical(&parse(""))), 1);
        assert_eq!(v.coefficient(&cyclic_canonical(&w)), 1);
    }

    #[test]
    fn universal_invariant_of_trivial_phrases() {
        let p = parse("| |");
        let v = universal_invariant(&p, 3).unwrap();
        assert_eq!(v.coefficients().len(), 1);
        assert_eq!(v.coefficient(&cyclic_canonical(&p)), 1);
    }

    #[test]
    fn universal_invariant_distinguishes_the_sign_change() {
        let v1 = universal_invariant(&parse("A:+ A:+ B:- B:- C:+ C:+"), 2).unwrap();
        let v2 = universal_invariant(&parse("A:- A:- B:- B:- C:+ C:+"), 2).unwrap();
        assert_ne!(v1, v2);
    }

    #[test]
    fn universal_invariant_truncates_consistently() {
        let p = parse("A:+ B:- A:+ | B:- C:+ C:+");
        let v2 = universal_invariant(&p, 2).unwrap();
        let v1 = universal_invariant(&p, 1).unwrap();
        assert_eq!(v2.truncated(1), v1);
    }

    #[test]
    fn universal_invariant_coefficients_are_orbit_pairings() {
        let a = Alphabet::signed();
        let p = parse("A:+ A:+ B:- B:- C:+ C:+");
        let v = universal_invariant(&p, 2).unwrap();
        for class in class_basis(2, 1, &a).unwrap() {
            let w = class.representative().to_phrase(&a);
            assert_eq!(v.coefficient(&class), orbit_pairing(&w, &p).unwrap());
        }
    }

    #[test]
    fn basis_of_low_degrees() {
        let a = Alphabet::signed();
        assert_eq!(class_basis(0, 2, &a).unwrap().len(), 1);
        let b11 = class_basis(1, 1, &a).unwrap();
        assert_eq!(b11.len(), 2);
        let b12 = class_basis(1, 2, &a).unwrap();
        assert_eq!(b12.len(), 5);
    }

    #[test]
    fn rank_has_degree_exactly_one() {
        let a = Alphabet::signed();
        let report = check_degree_at_most(rank_invariant, 1, 4, 1, &a).unwrap();
        assert!(report.holds);

        let report = check_degree_at_most(rank_invariant, 0, 4, 1, &a).unwrap();
        assert!(!report.holds);
        let witness = report.witness.unwrap();
        assert_eq!(witness.rank(), 1);
        assert_eq!(witness.singular_letters().len(), 1);

        assert!(check_degree_exact(rank_invariant, 1, 1, &a, None).unwrap());
    }

    #[test]
    fn orbit_pairing_invariants_have_the_expected_degree() {
        let a = Alphabet::signed();
        let w = parse("X:+ X:+ Y:+ Y:+");
        let u = |p: &Phrase| orbit_pairing(&w, p);
        let report = check_degree_at_most(u, 2, 4, 1, &a).unwrap();
        assert!(report.holds);
        assert!(check_degree_exact(u, 2, 1, &a, Some(&w)).unwrap());
    }

    #[test]
    fn constant_invariants_have_degree_zero() {
        let a = Alphabet::signed();
        let constant = |_: &Phrase| Ok(5i64);
        assert!(!check_degree_exact(constant, 1, 1, &a, None).unwrap());
        assert!(!check_degree_exact(constant, 2, 1, &a, None).unwrap());
        assert!(check_degree_at_most(constant, 0, 3, 1, &a).unwrap().holds);
    }

    #[test]
    fn starred_basis_words_recover_unit_vectors() {
        let a = Alphabet::signed();
        let m = 2;
        for class in class_basis(m, 1, &a).unwrap() {
            if class.rank() != m {
                continue;
            }
            let p = class.representative().to_phrase(&a);
            let u = |q: &Phrase| universal_invariant(q, m);
            let value = extend_invariant(u, &star_all(&p).unwrap()).unwrap();
            assert_eq!(value, InvariantVector::unit(class.clone(), m, 1));
        }
    }
}
