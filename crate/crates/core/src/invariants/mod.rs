//! Concrete invariants: rank, the linking matrix, the trivial augmentation,
//! and the Arnold basic invariants on signed words, together with the
//! regular homotopy moves and the spherical word sampler.

pub mod arnold;
pub mod linking;
pub mod moves;
pub mod sampler;

pub use arnold::{
    arnold_invariants, j_minus, j_plus, signed_pairing, standard_curve, strangeness,
    ArnoldInvariants, GaussPattern,
};
pub use linking::{linking_matrix, LinkingMatrix};
pub use moves::{
    apply_move, inverse_move_sites, inverted_site, is_admissible, move_sites, triple_site_signs,
    MoveId, MoveSite,
};
pub use sampler::{spherical_sample, SampleStep, SphericalSample};

use crate::algebra::FormalSum;
use crate::error::Result;
use crate::phrase::Phrase;

/// A projection sign on the signed alphabet `{+,-}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn token(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }

    pub fn opposite(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub(crate) fn from_symbol(alphabet: &crate::alphabet::Alphabet, symbol: usize) -> Sign {
        if alphabet.symbol(symbol) == "+" {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.token())
    }
}

/// The rank, a finite type invariant of degree one.
pub fn rank_invariant(p: &Phrase) -> i64 {
    p.rank() as i64
}

/// The constant augmentation: one on every phrase.
pub fn iota(_p: &Phrase) -> i64 {
    1
}

/// Linear extension of [`iota`]: the coefficient sum of a formal sum.
pub fn iota_sum<K: Ord + Clone>(sum: &FormalSum<K>) -> i64 {
    sum.iter().map(|(_, c)| c).sum()
}

/// The pair of the linking matrix and the augmentation; universal among
/// degree-one finite type invariants.
pub fn universal_degree1(p: &Phrase) -> Result<(LinkingMatrix, i64)> {
    Ok((linking_matrix(p)?, iota(p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::cyclic::cyclic_orbit;

    fn parse(text: &str) -> Phrase {
        Phrase::parse(text, &Alphabet::signed()).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_invariant(&parse("| | |")), 0);
        assert_eq!(rank_invariant(&parse("A:+ B:+ A:+ | B:+")), 2);
    }

    #[test]
    fn rank_is_constant_on_orbits() {
        let a = Alphabet::signed();
        let p = parse("A:+ B:- A:+ B:- | C:+ C:+");
        for form in cyclic_orbit(&p) {
            assert_eq!(rank_invariant(&form.to_phrase(&a)), 2 + 1);
        }
    }

    #[test]
    fn iota_is_one_and_sums_coefficients() {
        assert_eq!(iota(&parse("∅ | ∅")), 1);
        assert_eq!(iota(&parse("A:- A:-")), 1);
        let s = FormalSum::from_terms([("x", 2), ("y", -5), ("z", 1)]);
        assert_eq!(iota_sum(&s), -2);
    }
}
