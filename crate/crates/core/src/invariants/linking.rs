use std::collections::BTreeMap;

use serde_json::json;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::finite_type::GroupValue;
use crate::phrase::Phrase;

/// The symmetric linking matrix of a nanophrase.
///
/// The `(i, j)` entry with `i != j` counts per symbol the letters spanning
/// components `i` and `j` (an element of the free abelian group on the
/// alphabet). A diagonal entry counts the letters internal to the component,
/// keyed by the order-minimal representative of the `nu` orbit `{a, nu(a)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkingMatrix {
    size: usize,
    // Upper triangle including the diagonal, row by row.
    entries: Vec<BTreeMap<usize, i64>>,
}

fn triangle_index(size: usize, i: usize, j: usize) -> usize {
    let (r, c) = if i <= j { (i, j) } else { (j, i) };
    r * size + c - r * (r + 1) / 2
}

impl LinkingMatrix {
    pub fn zero(size: usize) -> Self {
        LinkingMatrix {
            size,
            entries: vec![BTreeMap::new(); size * (size + 1) / 2],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// The `(i, j)` entry; symmetric in its arguments.
    pub fn entry(&self, i: usize, j: usize) -> &BTreeMap<usize, i64> {
        &self.entries[triangle_index(self.size, i, j)]
    }

    fn add(&mut self, i: usize, j: usize, key: usize, amount: i64) {
        let cell = &mut self.entries[triangle_index(self.size, i, j)];
        let value = cell.entry(key).or_insert(0);
        *value += amount;
        if *value == 0 {
            cell.remove(&key);
        }
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.iter().all(BTreeMap::is_empty)
    }

    /// Full matrix as JSON, entries as `{symbol: coefficient}` objects.
    pub fn to_json(&self, alphabet: &Alphabet) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = (0..self.size)
            .map(|i| {
                let cells: Vec<serde_json::Value> = (0..self.size)
                    .map(|j| {
                        let mut object = serde_json::Map::new();
                        for (&key, &count) in self.entry(i, j) {
                            object.insert(alphabet.symbol(key).to_string(), json!(count));
                        }
                        serde_json::Value::Object(object)
                    })
                    .collect();
                json!(cells)
            })
            .collect();
        json!(rows)
    }
}

impl GroupValue for LinkingMatrix {
    fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.size, rhs.size, "mixed matrix sizes");
        let mut out = self.clone();
        for (index, cell) in rhs.entries.iter().enumerate() {
            for (&key, &count) in cell {
                let value = out.entries[index].entry(key).or_insert(0);
                *value += count;
                if *value == 0 {
                    out.entries[index].remove(&key);
                }
            }
        }
        out
    }

    fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.size, rhs.size, "mixed matrix sizes");
        let mut out = self.clone();
        for (index, cell) in rhs.entries.iter().enumerate() {
            for (&key, &count) in cell {
                let value = out.entries[index].entry(key).or_insert(0);
                *value -= count;
                if *value == 0 {
                    out.entries[index].remove(&key);
                }
            }
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.is_zero_matrix()
    }
}

/// Computes the linking matrix of a non-singular nanophrase.
pub fn linking_matrix(p: &Phrase) -> Result<LinkingMatrix> {
    if p.is_singular() {
        return Err(Error::SingularInput {
            operation: "linking_matrix",
        });
    }
    let alphabet = p.alphabet();
    let mut matrix = LinkingMatrix::zero(p.component_count());
    for id in 0..p.rank() {
        let [(ci, _), (cj, _)] = p.occurrences(id);
        let symbol = p.letter(id).symbol;
        if ci == cj {
            matrix.add(ci, ci, alphabet.nu_orbit_rep(symbol), 1);
        } else {
            matrix.add(ci, cj, symbol, 1);
        }
    }
    Ok(matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::cyclic::cyclic_orbit;
    use crate::finite_type::extend_invariant;

    fn parse(text: &str) -> Phrase {
        Phrase::parse(text, &Alphabet::signed()).unwrap()
    }

    #[test]
    fn single_spanning_letter() {
        let p = parse("A:+ | A:+");
        let m = linking_matrix(&p).unwrap();
        assert_eq!(m.entry(0, 1).len(), 1);
        assert_eq!(m.entry(0, 1).get(&0), Some(&1));
        assert!(m.entry(0, 0).is_empty());
        assert!(m.entry(1, 1).is_empty());
        assert_eq!(m.entry(0, 1), m.entry(1, 0));
    }

    #[test]
    fn diagonal_entries_identify_nu_orbits() {
        let plus = linking_matrix(&parse("A:+ A:+ | ∅")).unwrap();
        let minus = linking_matrix(&parse("A:- A:- | ∅")).unwrap();
        assert_eq!(plus, minus);
    }

    #[test]
    fn off_diagonal_entries_do_not_identify_signs() {
        let plus = linking_matrix(&parse("A:+ | A:+")).unwrap();
        let minus = linking_matrix(&parse("A:- | A:-")).unwrap();
        assert_ne!(plus, minus);
    }

    #[test]
    fn trivial_phrase_has_zero_matrix() {
        let m = linking_matrix(&parse("| | |")).unwrap();
        assert!(m.is_zero_matrix());
    }

    #[test]
    fn constant_on_cyclic_orbits() {
        let a = Alphabet::signed();
        let p = parse("A:+ B:- A:+ | B:- C:+ C:+");
        let reference = linking_matrix(&p).unwrap();
        for form in cyclic_orbit(&p) {
            assert_eq!(linking_matrix(&form.to_phrase(&a)).unwrap(), reference);
        }
    }

    #[test]
    fn extension_vanishes_on_two_singular_letters() {
        let a = Alphabet::signed();
        let p = Phrase::parse("A:+* B:-* A:+* | B:-* C:+ C:+", &a).unwrap();
        let value = extend_invariant(linking_matrix, &p).unwrap();
        assert!(value.is_zero());
    }

    #[test]
    fn extension_detects_one_spanning_singular_letter() {
        let a = Alphabet::signed();
        let p = Phrase::parse("A:+* | A:+*", &a).unwrap();
        let value = extend_invariant(linking_matrix, &p).unwrap();
        assert!(!value.is_zero());
        assert_eq!(value.entry(0, 1).get(&0), Some(&1));
    }

    #[test]
    fn json_shape() {
        let a = Alphabet::signed();
        let m = linking_matrix(&parse("A:+ | A:+")).unwrap();
        assert_eq!(
            m.to_json(&a),
            serde_json::json!([[{}, { "+": 1 }], [{ "+": 1 }, {}]])
        );
    }
}
