//! Exhaustive and randomized generation of nanophrases, used by basis
//! enumeration, the degree checkers, and the verification suites.

use std::sync::Arc;

use itertools::Itertools;
use rand::Rng;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::phrase::{generated_name, CanonicalForm, Letter, Phrase};

/// Hard bound on the number of candidate forms an exhaustive enumeration may
/// produce before it is refused with a capacity error.
pub const MAX_ENUMERATION: u128 = 5_000_000;

/// All ways of writing `total` as an ordered sum of `parts` non-negative
/// integers.
pub(crate) fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = vec![0usize; parts];
    fn rec(remaining: usize, index: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if index + 1 == current.len() {
            current[index] = remaining;
            out.push(current.clone());
            return;
        }
        for value in 0..=remaining {
            current[index] = value;
            rec(remaining - value, index + 1, current, out);
        }
    }
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(total, 0, &mut current, &mut out);
    out
}

/// All Gauss skeletons for the given component sizes: perfect matchings of
/// the occurrence positions, numbered by first occurrence. Each skeleton is
/// produced exactly once and is canonical by construction.
pub(crate) fn gauss_skeletons(sizes: &[usize]) -> Vec<Vec<Vec<u32>>> {
    let total: usize = sizes.iter().sum();
    debug_assert!(total % 2 == 0);
    let mut out = Vec::new();
    let mut assignment: Vec<Option<u32>> = vec![None; total];

    fn rec(
        assignment: &mut Vec<Option<u32>>,
        next_letter: u32,
        sizes: &[usize],
        out: &mut Vec<Vec<Vec<u32>>>,
    ) {
        let first = match assignment.iter().position(Option::is_none) {
            Some(i) => i,
            None => {
                let mut skeleton = Vec::with_capacity(sizes.len());
                let mut offset = 0;
                for &len in sizes {
                    skeleton.push(
                        assignment[offset..offset + len]
                            .iter()
                            .map(|x| x.unwrap())
                            .collect(),
                    );
                    offset += len;
                }
                out.push(skeleton);
                return;
            }
        };
        assignment[first] = Some(next_letter);
        for second in first + 1..assignment.len() {
            if assignment[second].is_none() {
                assignment[second] = Some(next_letter);
                rec(assignment, next_letter + 1, sizes, out);
                assignment[second] = None;
            }
        }
        assignment[first] = None;
    }

    rec(&mut assignment, 0, sizes, &mut out);
    out
}

fn double_factorial_odd(n: usize) -> u128 {
    // (2n-1)!! = number of perfect matchings of 2n points.
    (0..n).fold(1u128, |acc, i| acc * (2 * i + 1) as u128)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut result = 1u128;
    for i in 0..k.min(n - k) {
        result = result * (n - i) as u128 / (i + 1) as u128;
    }
    result
}

/// Upper bound on the number of forms `enumerate_forms` will visit.
fn enumeration_size(rank: usize, components: usize, alphabet_len: usize, singular: usize) -> u128 {
    let skeletons = double_factorial_odd(rank);
    let placements = binomial(2 * rank + components - 1, components - 1);
    let projections = (alphabet_len as u128).pow(rank as u32);
    let stars = binomial(rank, singular);
    skeletons
        .saturating_mul(placements)
        .saturating_mul(projections)
        .saturating_mul(stars)
}

/// One canonical form per isomorphism class of `components`-component
/// nanophrases of exactly the given rank, with exactly `singular` letters
/// flagged singular.
pub(crate) fn enumerate_forms(
    rank: usize,
    components: usize,
    alphabet: &Alphabet,
    singular: usize,
) -> Result<Vec<CanonicalForm>> {
    assert!(components >= 1, "a phrase has at least one component");
    if singular > rank {
        return Ok(Vec::new());
    }
    let size = enumeration_size(rank, components, alphabet.len(), singular);
    if size > MAX_ENUMERATION {
        return Err(Error::Capacity {
            operation: "enumerate_forms",
            quantity: "candidate forms",
            actual: size,
            bound: MAX_ENUMERATION,
        });
    }

    let symbol_count = alphabet.len();
    let mut out = Vec::new();
    for sizes in compositions(2 * rank, components) {
        for skeleton in gauss_skeletons(&sizes) {
            // Iterate projection assignments as base-|alpha| counters.
            let mut symbols = vec![0usize; rank];
            loop {
                for star_subset in (0..rank).combinations(singular) {
                    let mut letters: Vec<(u32, bool)> =
                        symbols.iter().map(|&s| (s as u32, false)).collect();
                    for &i in &star_subset {
                        letters[i].1 = true;
                    }
                    out.push(CanonicalForm::from_parts(skeleton.clone(), letters));
                }
                // Advance the counter.
                let mut digit = 0;
                loop {
                    if digit == rank {
                        break;
                    }
                    symbols[digit] += 1;
                    if symbols[digit] < symbol_count {
                        break;
                    }
                    symbols[digit] = 0;
                    digit += 1;
                }
                if digit == rank {
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// A uniformly scrambled nanophrase: random Gauss skeleton over `components`
/// components, random projections, and `singular` randomly starred letters.
pub fn random_phrase(
    rng: &mut impl Rng,
    rank: usize,
    components: usize,
    alphabet: &Arc<Alphabet>,
    singular: usize,
) -> Phrase {
    assert!(components >= 1);
    assert!(singular <= rank);
    let mut comps: Vec<Vec<usize>> = vec![Vec::new(); components];
    for id in 0..rank {
        for _ in 0..2 {
            let c = rng.gen_range(0..components);
            let at = rng.gen_range(0..=comps[c].len());
            comps[c].insert(at, id);
        }
    }
    let mut star = vec![false; rank];
    let mut chosen = 0;
    while chosen < singular {
        let i = rng.gen_range(0..rank);
        if !star[i] {
            star[i] = true;
            chosen += 1;
        }
    }
    let letters = (0..rank)
        .map(|id| Letter {
            name: generated_name(id),
            symbol: rng.gen_range(0..alphabet.len()),
            singular: star[id],
        })
        .collect();
    Phrase::from_raw(Arc::clone(alphabet), letters, comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(2, 2).len(), 3);
        assert_eq!(compositions(4, 2).len(), 5);
        assert_eq!(compositions(0, 3).len(), 1);
        assert_eq!(compositions(4, 1), vec![vec![4]]);
    }

    #[test]
    fn skeleton_counts_are_double_factorials() {
        assert_eq!(gauss_skeletons(&[2]).len(), 1);
        assert_eq!(gauss_skeletons(&[4]).len(), 3);
        assert_eq!(gauss_skeletons(&[6]).len(), 15);
        assert_eq!(gauss_skeletons(&[8]).len(), 105);
        assert_eq!(gauss_skeletons(&[2, 2]).len(), 3);
    }

    #[test]
    fn enumerated_forms_are_distinct_and_well_formed() {
        let a = Alphabet::signed();
        let forms = enumerate_forms(2, 2, &a, 0).unwrap();
        // 5 compositions of 4 into 2 parts would overcount; the skeleton count
        // varies with the split, so just check distinctness and the total.
        let set: std::collections::BTreeSet<_> = forms.iter().cloned().collect();
        assert_eq!(set.len(), forms.len());
        for f in &forms {
            assert_eq!(f.rank(), 2);
            assert_eq!(f.component_count(), 2);
        }
    }

    #[test]
    fn enumeration_counts_match_the_closed_formula() {
        let a = Alphabet::signed();
        // rank 2, one component: 3 skeletons x 4 projection choices.
        assert_eq!(enumerate_forms(2, 1, &a, 0).unwrap().len(), 12);
        // rank 1, two components: 3 placements x 2 projections.
        assert_eq!(enumerate_forms(1, 2, &a, 0).unwrap().len(), 6);
        // Exactly one singular letter out of two: 3 x 4 x C(2,1).
        assert_eq!(enumerate_forms(2, 1, &a, 1).unwrap().len(), 24);
        // Rank zero: only the trivial phrase.
        assert_eq!(enumerate_forms(0, 3, &a, 0).unwrap().len(), 1);
        assert!(enumerate_forms(0, 1, &a, 1).unwrap().is_empty());
    }

    #[test]
    fn random_phrases_satisfy_the_gauss_condition() {
        let a = Alphabet::signed();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let rank = rng.gen_range(0..6);
            let singular = rng.gen_range(0..=rank);
            let p = random_phrase(&mut rng, rank, rng.gen_range(1..4), &a, singular);
            assert_eq!(p.rank(), rank);
            assert_eq!(p.singular_letters().len(), singular);
            let total: usize = p.components().iter().map(Vec::len).sum();
            assert_eq!(total, 2 * rank);
        }
    }
}
