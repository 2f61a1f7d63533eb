use std::sync::Arc;

use itertools::Itertools;

use super::Sign;
use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::phrase::{generated_name, Letter, Phrase};
use crate::Rational;

/// An unsigned one-component Gauss word pattern such as `AABB` or `ABAB`,
/// stored as its first-occurrence skeleton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussPattern {
    skeleton: Vec<u32>,
}

impl GaussPattern {
    /// Parses a pattern from bare letters, e.g. `"ABAB"`. Every letter must
    /// occur exactly twice.
    pub fn parse(text: &str) -> Result<GaussPattern> {
        let mut names: Vec<char> = Vec::new();
        let mut skeleton = Vec::new();
        let mut counts: Vec<usize> = Vec::new();
        for (position, ch) in text.char_indices() {
            if ch.is_whitespace() {
                continue;
            }
            if !ch.is_ascii_alphabetic() {
                return Err(Error::Syntax {
                    position,
                    message: format!("pattern letters must be ascii letters, found {ch:?}"),
                });
            }
            let id = match names.iter().position(|&n| n == ch) {
                Some(id) => id,
                None => {
                    names.push(ch);
                    counts.push(0);
                    names.len() - 1
                }
            };
            counts[id] += 1;
            skeleton.push(id as u32);
        }
        for (id, &count) in counts.iter().enumerate() {
            if count != 2 {
                return Err(Error::GaussCondition {
                    name: names[id].to_string(),
                    count,
                });
            }
        }
        Ok(GaussPattern { skeleton })
    }

    pub fn rank(&self) -> usize {
        self.skeleton.len() / 2
    }

    pub fn skeleton(&self) -> &[u32] {
        &self.skeleton
    }
}

fn check_signed_word(operation: &'static str, w: &Phrase) -> Result<()> {
    if !w.alphabet().is_signed() {
        return Err(Error::NotSigned { operation });
    }
    if w.component_count() != 1 {
        return Err(Error::NotAWord { operation });
    }
    if w.is_singular() {
        return Err(Error::SingularInput { operation });
    }
    Ok(())
}

/// Unsigned first-occurrence skeleton of a subset of the letters of a word.
fn subword_skeleton(w: &Phrase, keep: &[bool]) -> Vec<u32> {
    let mut remap = vec![u32::MAX; w.rank()];
    let mut next = 0;
    let mut out = Vec::new();
    for &id in w.component(0) {
        if keep[id] {
            if remap[id] == u32::MAX {
                remap[id] = next;
                next += 1;
            }
            out.push(remap[id]);
        }
    }
    out
}

/// The signed pairing: counts subwords of `w` whose unsigned Gauss word is
/// isomorphic to `v`, each weighted by `(-1)` per negative letter.
pub fn signed_pairing(v: &GaussPattern, w: &Phrase) -> Result<i64> {
    check_signed_word("signed_pairing", w)?;
    let minus = w
        .alphabet()
        .symbol_index("-")
        .expect("signed alphabet has a minus symbol");
    let size = v.rank();
    if size > w.rank() {
        return Ok(0);
    }
    let mut total = 0;
    for subset in (0..w.rank()).combinations(size) {
        let mut keep = vec![false; w.rank()];
        let mut negatives = 0;
        for &id in &subset {
            keep[id] = true;
            if w.letter(id).symbol == minus {
                negatives += 1;
            }
        }
        if subword_skeleton(w, &keep) == v.skeleton() {
            total += if negatives % 2 == 0 { 1 } else { -1 };
        }
    }
    Ok(total)
}

/// The Arnold basic invariants of a signed word, as exact rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArnoldInvariants {
    pub j_plus: Rational,
    pub j_minus: Rational,
    pub strangeness: Rational,
}

/// Evaluates the three Polyak-style formulas on a signed word. The result is
/// invariant under shifts exactly on words carrying spherical curves.
pub fn arnold_invariants(w: &Phrase) -> Result<ArnoldInvariants> {
    check_signed_word("arnold_invariants", w)?;
    let aabb = GaussPattern::parse("AABB").expect("valid pattern");
    let abba = GaussPattern::parse("ABBA").expect("valid pattern");
    let abab = GaussPattern::parse("ABAB").expect("valid pattern");

    let nested = signed_pairing(&aabb, w)?;
    let disjoint = signed_pairing(&abba, w)?;
    let interleaved = signed_pairing(&abab, w)?;
    let loops = crate::algebra::orbit_pairing(&one_letter_word(w.alphabet()), w)?;

    let base = Rational::from_integer(nested - disjoint - 3 * interleaved);
    let loops = Rational::from_integer(loops);
    let half = Rational::new(1, 2);
    let quarter = Rational::new(1, 4);

    Ok(ArnoldInvariants {
        j_plus: base - half * loops + half,
        j_minus: base - Rational::new(3, 2) * loops + half,
        strangeness: half * Rational::from_integer(-nested + disjoint + interleaved)
            + quarter * loops
            - quarter,
    })
}

pub fn j_plus(w: &Phrase) -> Result<Rational> {
    Ok(arnold_invariants(w)?.j_plus)
}

pub fn j_minus(w: &Phrase) -> Result<Rational> {
    Ok(arnold_invariants(w)?.j_minus)
}

pub fn strangeness(w: &Phrase) -> Result<Rational> {
    Ok(arnold_invariants(w)?.strangeness)
}

fn one_letter_word(alphabet: &Arc<Alphabet>) -> Phrase {
    Phrase::parse("A:+ A:+", alphabet).expect("valid word")
}

/// The standard curve word `A1 A1 A2 A2 ... Ai Ai` with all projections
/// equal to `sign`.
pub fn standard_curve(i: usize, sign: Sign) -> Phrase {
    let alphabet = Alphabet::signed();
    let symbol = alphabet
        .symbol_index(sign.token())
        .expect("signed alphabet");
    let letters = (0..i)
        .map(|k| Letter {
            name: generated_name(k),
            symbol,
            singular: false,
        })
        .collect();
    let component = (0..i).flat_map(|k| [k, k]).collect();
    Phrase::from_raw(alphabet, letters, vec![component])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    fn parse(text: &str) -> Phrase {
        Phrase::parse(text, &Alphabet::signed()).unwrap()
    }

    fn rational(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn pattern_parsing() {
        assert_eq!(GaussPattern::parse("AABB").unwrap().rank(), 2);
        assert_eq!(GaussPattern::parse("ABAB").unwrap().skeleton(), &[0, 1, 0, 1]);
        assert!(GaussPattern::parse("ABA").is_err());
        assert!(GaussPattern::parse("A1A1").is_err());
    }

    #[test]
    fn signed_pairing_examples() {
        let w = parse("A:+ A:+ B:- B:- C:+ C:+");
        let aabb = GaussPattern::parse("AABB").unwrap();
        let abab = GaussPattern::parse("ABAB").unwrap();
        assert_eq!(signed_pairing(&aabb, &w).unwrap(), -1);
        assert_eq!(signed_pairing(&abab, &w).unwrap(), 0);

        let all_plus = parse("A:+ A:+ B:+ B:+ C:+ C:+");
        assert_eq!(signed_pairing(&aabb, &all_plus).unwrap(), 3);
    }

    #[test]
    fn signed_pairing_rejects_wrong_inputs() {
        let aabb = GaussPattern::parse("AABB").unwrap();
        let phrase = parse("A:+ | A:+");
        assert!(matches!(
            signed_pairing(&aabb, &phrase),
            Err(Error::NotAWord { .. })
        ));
        let other = Alphabet::parse_decl("alpha = x,y").unwrap();
        let w = Phrase::parse("A:x A:x", &other).unwrap();
        assert!(matches!(
            signed_pairing(&aabb, &w),
            Err(Error::NotSigned { .. })
        ));
    }

    #[test]
    fn standard_curves() {
        let w1 = standard_curve(1, Sign::Plus);
        assert_eq!(w1.rank(), 1);
        assert_eq!(standard_curve(0, Sign::Plus).rank(), 0);
        assert_eq!(standard_curve(4, Sign::Minus).rank(), 4);
        let w3 = standard_curve(3, Sign::Plus);
        assert_eq!(w3.to_notation(), "A:+ A:+ B:+ B:+ C:+ C:+");
    }

    #[test]
    fn normalization_on_standard_curves() {
        for i in 0..=5i64 {
            for sign in [Sign::Plus, Sign::Minus] {
                let w = standard_curve(i as usize, sign);
                let values = arnold_invariants(&w).unwrap();
                assert_eq!(values.j_plus, rational((i - 1) * (i - 1), 2));
                assert_eq!(
                    values.j_minus,
                    rational((i - 2) * (i - 2), 2) - rational(3, 2)
                );
                assert_eq!(values.strangeness, -rational((i - 1) * (i - 1), 4));
            }
        }
    }

    #[test]
    fn section_seven_example_values() {
        let w1 = parse("A:+ A:+ B:- B:- C:+ C:+");
        let w2 = parse("A:- A:- B:- B:- C:+ C:+");
        for w in [&w1, &w2] {
            let values = arnold_invariants(w).unwrap();
            assert_eq!(values.j_plus, Rational::from_integer(-2));
            assert_eq!(values.j_minus, Rational::from_integer(-5));
            assert_eq!(values.strangeness, Rational::from_integer(1));
        }
    }

    #[test]
    fn arnold_denominators_divide_four() {
        for text in ["", "A:+ A:+", "A:+ B:- A:+ B:-", "A:- A:- B:+ B:+"] {
            let values = arnold_invariants(&parse(text)).unwrap();
            for value in [values.j_plus, values.j_minus, values.strangeness] {
                assert!([1, 2, 4].contains(value.denom()));
            }
        }
    }
}
