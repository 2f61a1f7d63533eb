use std::collections::HashMap;
use std::sync::Arc;

use serde_json::json;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

/// One letter of a nanophrase: a user-visible name, a projection into the
/// alphabet, and a flag marking it as singular (lying over the starred copy
/// of the alphabet).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Letter {
    pub name: String,
    pub symbol: usize,
    pub singular: bool,
}

/// An n-component nanophrase: a letter table plus component sequences in
/// which every letter occurs exactly twice overall.
///
/// Values are immutable after construction; all operations are pure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Phrase {
    alphabet: Arc<Alphabet>,
    letters: Vec<Letter>,
    components: Vec<Vec<usize>>,
}

/// Renumbered normal form: letters become `0, 1, 2, ...` in order of first
/// occurrence reading components left to right. Two nanophrases are
/// isomorphic exactly when their forms are equal.
///
/// The derived `Ord` (skeleton first, then the projection sequence with the
/// singular flag last) is the total order used for orbit minima.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    skeleton: Vec<Vec<u32>>,
    letters: Vec<(u32, bool)>,
}

/// Spreadsheet-style names for generated letters: A, B, ..., Z, AA, AB, ...
pub(crate) fn generated_name(mut index: usize) -> String {
    let mut out = Vec::new();
    loop {
        out.push(b'A' + (index % 26) as u8);
        index /= 26;
        if index == 0 {
            break;
        }
        index -= 1;
    }
    out.reverse();
    String::from_utf8(out).expect("ascii")
}

impl Phrase {
    /// Parses the textual notation, e.g. `A:+ B:- A:+ | B:-`.
    ///
    /// Components are separated by `|`, occurrences by whitespace. Each
    /// occurrence is `NAME:SYMBOL` with an optional trailing `*` marking the
    /// letter singular. `∅` stands for an empty component.
    pub fn parse(text: &str, alphabet: &Arc<Alphabet>) -> Result<Phrase> {
        let mut letters: Vec<Letter> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut counts: Vec<usize> = Vec::new();
        let mut components: Vec<Vec<usize>> = vec![Vec::new()];
        let mut empty_marker = false;

        let mut chars = text.char_indices().peekable();
        while let Some(&(pos, ch)) = chars.peek() {
            if ch.is_whitespace() {
                chars.next();
                continue;
            }
            if ch == '|' {
                chars.next();
                components.push(Vec::new());
                empty_marker = false;
                continue;
            }
            // Read one whitespace/`|`-delimited chunk.
            let start = pos;
            let mut end = pos;
            while let Some(&(p, c)) = chars.peek() {
                if c.is_whitespace() || c == '|' {
                    break;
                }
                end = p + c.len_utf8();
                chars.next();
            }
            let chunk = &text[start..end];

            if chunk == "∅" {
                if !components.last().unwrap().is_empty() {
                    return Err(Error::Syntax {
                        position: start,
                        message: "∅ may not be mixed with occurrences".into(),
                    });
                }
                empty_marker = true;
                continue;
            }
            if empty_marker {
                return Err(Error::Syntax {
                    position: start,
                    message: "∅ may not be mixed with occurrences".into(),
                });
            }

            let colon = chunk.find(':').ok_or_else(|| Error::Syntax {
                position: start,
                message: format!("expected NAME:SYMBOL, found {chunk:?}"),
            })?;
            let name = &chunk[..colon];
            if name.is_empty()
                || !name.chars().next().unwrap().is_ascii_alphabetic()
                || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                return Err(Error::Syntax {
                    position: start,
                    message: format!("invalid letter name {name:?}"),
                });
            }
            let mut symbol_text = &chunk[colon + 1..];
            let singular = symbol_text.ends_with('*');
            if singular {
                symbol_text = &symbol_text[..symbol_text.len() - 1];
            }
            if symbol_text.is_empty() {
                return Err(Error::Syntax {
                    position: start + colon + 1,
                    message: "missing projection symbol".into(),
                });
            }
            let symbol = alphabet.symbol_index(symbol_text).ok_or(Error::UnknownSymbol {
                symbol: symbol_text.to_string(),
                position: start + colon + 1,
            })?;

            let id = match index.get(name) {
                Some(&id) => {
                    if letters[id].symbol != symbol || letters[id].singular != singular {
                        return Err(Error::ConflictingProjection { name: name.to_string() });
                    }
                    id
                }
                None => {
                    let id = letters.len();
                    index.insert(name.to_string(), id);
                    letters.push(Letter {
                        name: name.to_string(),
                        symbol,
                        singular,
                    });
                    counts.push(0);
                    id
                }
            };
            counts[id] += 1;
            components.last_mut().unwrap().push(id);
        }

        for (id, &count) in counts.iter().enumerate() {
            if count != 2 {
                return Err(Error::GaussCondition {
                    name: letters[id].name.clone(),
                    count,
                });
            }
        }
        Ok(Phrase {
            alphabet: Arc::clone(alphabet),
            letters,
            components,
        })
    }

    /// Internal constructor for already validated data.
    pub(crate) fn from_raw(
        alphabet: Arc<Alphabet>,
        letters: Vec<Letter>,
        components: Vec<Vec<usize>>,
    ) -> Phrase {
        debug_assert!(!components.is_empty());
        debug_assert!({
            let mut counts = vec![0usize; letters.len()];
            for c in &components {
                for &id in c {
                    counts[id] += 1;
                }
            }
            counts.iter().all(|&c| c == 2)
        });
        Phrase {
            alphabet,
            letters,
            components,
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// Number of distinct letters.
    pub fn rank(&self) -> usize {
        self.letters.len()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, index: usize) -> &[usize] {
        &self.components[index]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn letter(&self, id: usize) -> &Letter {
        &self.letters[id]
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_singular(&self) -> bool {
        self.letters.iter().any(|l| l.singular)
    }

    /// Ids of the singular letters in table order.
    pub fn singular_letters(&self) -> Vec<usize> {
        (0..self.letters.len()).filter(|&i| self.letters[i].singular).collect()
    }

    /// The two `(component, position)` occurrences of a letter.
    pub fn occurrences(&self, id: usize) -> [(usize, usize); 2] {
        let mut found = [(0, 0); 2];
        let mut n = 0;
        for (ci, comp) in self.components.iter().enumerate() {
            for (pi, &l) in comp.iter().enumerate() {
                if l == id {
                    found[n] = (ci, pi);
                    n += 1;
                }
            }
        }
        debug_assert_eq!(n, 2);
        found
    }

    /// Keeps exactly the letters with `keep[id]` true, deleting both
    /// occurrences of every other letter. Optionally clears the singular
    /// flag on the kept letters listed in `resolve`.
    pub(crate) fn restrict(&self, keep: &[bool], resolve: &[bool]) -> Phrase {
        let mut remap = vec![usize::MAX; self.letters.len()];
        let mut letters = Vec::new();
        for (id, letter) in self.letters.iter().enumerate() {
            if keep[id] {
                remap[id] = letters.len();
                let mut letter = letter.clone();
                if resolve.get(id).copied().unwrap_or(false) {
                    letter.singular = false;
                }
                letters.push(letter);
            }
        }
        let components = self
            .components
            .iter()
            .map(|c| c.iter().filter(|&&id| keep[id]).map(|&id| remap[id]).collect())
            .collect();
        Phrase {
            alphabet: Arc::clone(&self.alphabet),
            letters,
            components,
        }
    }

    /// Renders the phrase in the textual notation accepted by [`Phrase::parse`].
    pub fn to_notation(&self) -> String {
        let mut parts = Vec::new();
        for comp in &self.components {
            if comp.is_empty() {
                parts.push("∅".to_string());
                continue;
            }
            let words: Vec<String> = comp
                .iter()
                .map(|&id| {
                    let l = &self.letters[id];
                    format!(
                        "{}:{}{}",
                        l.name,
                        self.alphabet.symbol(l.symbol),
                        if l.singular { "*" } else { "" }
                    )
                })
                .collect();
            parts.push(words.join(" "));
        }
        parts.join(" | ")
    }

    /// First-occurrence renumbering; complete invariant of isomorphism.
    pub fn canonical_form(&self) -> CanonicalForm {
        let mut remap = vec![u32::MAX; self.letters.len()];
        let mut order = Vec::with_capacity(self.letters.len());
        let mut skeleton = Vec::with_capacity(self.components.len());
        for comp in &self.components {
            let mut out = Vec::with_capacity(comp.len());
            for &id in comp {
                if remap[id] == u32::MAX {
                    remap[id] = order.len() as u32;
                    order.push(id);
                }
                out.push(remap[id]);
            }
            skeleton.push(out);
        }
        let letters = order
            .iter()
            .map(|&id| (self.letters[id].symbol as u32, self.letters[id].singular))
            .collect();
        CanonicalForm { skeleton, letters }
    }
}

impl CanonicalForm {
    pub(crate) fn from_parts(skeleton: Vec<Vec<u32>>, letters: Vec<(u32, bool)>) -> Self {
        let form = CanonicalForm { skeleton, letters };
        debug_assert!(form.is_well_formed());
        form
    }

    fn is_well_formed(&self) -> bool {
        let mut seen = 0u32;
        let mut counts = vec![0usize; self.letters.len()];
        for comp in &self.skeleton {
            for &k in comp {
                if k > seen {
                    return false;
                }
                if k == seen {
                    seen += 1;
                }
                if (k as usize) >= counts.len() {
                    return false;
                }
                counts[k as usize] += 1;
            }
        }
        seen as usize == self.letters.len() && counts.iter().all(|&c| c == 2)
    }

    pub fn rank(&self) -> usize {
        self.letters.len()
    }

    pub fn component_count(&self) -> usize {
        self.skeleton.len()
    }

    pub fn skeleton(&self) -> &[Vec<u32>] {
        &self.skeleton
    }

    /// Projection symbol index and singular flag of letter `k`.
    pub fn letter(&self, k: usize) -> (u32, bool) {
        self.letters[k]
    }

    pub fn letter_entries(&self) -> &[(u32, bool)] {
        &self.letters
    }

    pub fn is_singular(&self) -> bool {
        self.letters.iter().any(|&(_, s)| s)
    }

    /// Reconstructs a representative nanophrase with generated letter names.
    pub fn to_phrase(&self, alphabet: &Arc<Alphabet>) -> Phrase {
        let letters = self
            .letters
            .iter()
            .enumerate()
            .map(|(k, &(symbol, singular))| Letter {
                name: generated_name(k),
                symbol: symbol as usize,
                singular,
            })
            .collect();
        let components = self
            .skeleton
            .iter()
            .map(|c| c.iter().map(|&k| k as usize).collect())
            .collect();
        Phrase::from_raw(Arc::clone(alphabet), letters, components)
    }

    pub fn to_notation(&self, alphabet: &Arc<Alphabet>) -> String {
        self.to_phrase(alphabet).to_notation()
    }

    /// JSON serialization: letter numbers are 1-based in the skeleton.
    pub fn to_json(&self, alphabet: &Alphabet) -> serde_json::Value {
        let skeleton: Vec<Vec<u32>> = self
            .skeleton
            .iter()
            .map(|c| c.iter().map(|&k| k + 1).collect())
            .collect();
        let letters: Vec<serde_json::Value> = self
            .letters
            .iter()
            .map(|&(symbol, singular)| {
                json!({ "sym": alphabet.symbol(symbol as usize), "singular": singular })
            })
            .collect();
        json!({ "skeleton": skeleton, "letters": letters })
    }
}

/// rank(p) - rank(q), the exponent bookkeeping for alternating sums.
pub fn delta(p: &Phrase, q: &Phrase) -> i64 {
    p.rank() as i64 - q.rank() as i64
}

/// True when the two nanophrases are related by a projection-preserving
/// renaming of letters.
pub fn is_isomorphic(p: &Phrase, q: &Phrase) -> bool {
    p.alphabet() == q.alphabet() && p.canonical_form() == q.canonical_form()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn signed() -> Arc<Alphabet> {
        Alphabet::signed()
    }

    #[test]
    fn parse_two_component_phrase() {
        let p = Phrase::parse("A:+ B:- A:+ | B:-", &signed()).unwrap();
        assert_eq!(p.rank(), 2);
        assert_eq!(p.component_count(), 2);
        assert_eq!(p.component(0).len(), 3);
        assert_eq!(p.component(1).len(), 1);
    }

    #[test]
    fn parse_trivial_phrases() {
        let p = Phrase::parse("|", &signed()).unwrap();
        assert_eq!(p.component_count(), 2);
        assert_eq!(p.rank(), 0);
        let q = Phrase::parse("∅ | ∅", &signed()).unwrap();
        assert!(is_isomorphic(&p, &q));
        let empty = Phrase::parse("", &signed()).unwrap();
        assert_eq!(empty.component_count(), 1);
        assert_eq!(empty.rank(), 0);
    }

    #[test]
    fn gauss_condition_violations() {
        let err = Phrase::parse("A:+ A:+ A:+", &signed()).unwrap_err();
        assert!(matches!(err, Error::GaussCondition { count: 3, .. }));
        let err = Phrase::parse("A:+", &signed()).unwrap_err();
        assert!(matches!(err, Error::GaussCondition { count: 1, .. }));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = Phrase::parse("A:+ B:? B:? A:+", &signed()).unwrap_err();
        assert!(matches!(err, Error::UnknownSymbol { position: 6, .. }));
        assert!(matches!(
            Phrase::parse("A:+ *:+", &signed()),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            Phrase::parse("A:+ A:-", &signed()),
            Err(Error::ConflictingProjection { .. })
        ));
        assert!(matches!(
            Phrase::parse("A:+ ∅ A:+", &signed()),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn rank_examples() {
        let p = Phrase::parse("A:+ B:+ C:+ B:+ A:+ C:+", &signed()).unwrap();
        assert_eq!(p.rank(), 3);
        let q = Phrase::parse("A:+ | B:+ | ∅ | B:+ A:+", &signed()).unwrap();
        assert_eq!(q.rank(), 2);
        assert_eq!(Phrase::parse("| | |", &signed()).unwrap().rank(), 0);
    }

    #[test]
    fn rank_is_half_the_occurrence_count() {
        let p = Phrase::parse("A:+ B:- A:+ | B:- C:+ C:+", &signed()).unwrap();
        let occurrences: usize = p.components().iter().map(Vec::len).sum();
        assert_eq!(p.rank() * 2, occurrences);
    }

    #[test]
    fn delta_examples() {
        let p = Phrase::parse("A:+ B:+ A:+ B:+", &signed()).unwrap();
        let q = Phrase::parse("A:+ A:+", &signed()).unwrap();
        assert_eq!(delta(&p, &q), 1);
        assert_eq!(delta(&p, &p), 0);
        let r = Phrase::parse("A:+ B:+ A:+ | B:+", &signed()).unwrap();
        let e = Phrase::parse("|", &signed()).unwrap();
        assert_eq!(delta(&r, &e), 2);
    }

    #[test]
    fn canonical_form_identifies_isomorphic_phrases() {
        let a = signed();
        let p = Phrase::parse("X:+ Y:- X:+ | Y:-", &a).unwrap();
        let q = Phrase::parse("B:+ A:- B:+ | A:-", &a).unwrap();
        assert_eq!(p.canonical_form(), q.canonical_form());
        assert!(is_isomorphic(&p, &q));

        let r = Phrase::parse("A:+ A:+", &a).unwrap();
        let s = Phrase::parse("A:- A:-", &a).unwrap();
        assert_ne!(r.canonical_form(), s.canonical_form());

        let t = Phrase::parse("Y:+ Y:+ X:+ X:+", &a).unwrap();
        let u = Phrase::parse("X:+ X:+ Y:+ Y:+", &a).unwrap();
        assert!(is_isomorphic(&t, &u));

        let v = Phrase::parse("A:+ B:- A:+ B:-", &a).unwrap();
        let w = Phrase::parse("B:- A:+ B:- A:+", &a).unwrap();
        assert!(!is_isomorphic(&v, &w), "projections follow positions");
    }

    #[test]
    fn canonicalization_is_idempotent() {
        let a = signed();
        let p = Phrase::parse("Q:- P:+ Q:- | P:+ R:-* R:-*", &a).unwrap();
        let form = p.canonical_form();
        assert_eq!(form.to_phrase(&a).canonical_form(), form);
    }

    #[test]
    fn notation_roundtrip() {
        let a = signed();
        for text in ["A:+ B:- A:+ | B:-", "∅ | ∅", "A:+* A:+* B:- B:-"] {
            let p = Phrase::parse(text, &a).unwrap();
            let q = Phrase::parse(&p.to_notation(), &a).unwrap();
            assert_eq!(p.canonical_form(), q.canonical_form());
        }
    }

    #[test]
    fn canonical_form_json_shape() {
        let a = signed();
        let p = Phrase::parse("A:+ B:- A:+ | B:-", &a).unwrap();
        let value = p.canonical_form().to_json(&a);
        assert_eq!(
            value,
            serde_json::json!({
                "skeleton": [[1, 2, 1], [2]],
                "letters": [
                    { "sym": "+", "singular": false },
                    { "sym": "-", "singular": false },
                ],
            })
        );
    }

    #[test]
    fn generated_names_are_spreadsheet_style() {
        assert_eq!(generated_name(0), "A");
        assert_eq!(generated_name(25), "Z");
        assert_eq!(generated_name(26), "AA");
        assert_eq!(generated_name(27), "AB");
    }
}
