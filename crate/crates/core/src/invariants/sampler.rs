use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::arnold::standard_curve;
use super::moves::{
    apply_move, inverse_move_sites, inverted_site, is_admissible, move_sites, MoveId, MoveSite,
};
use super::Sign;
use crate::phrase::Phrase;

/// One applied move together with the site that undoes it.
#[derive(Debug, Clone)]
pub struct SampleStep {
    pub site: MoveSite,
    pub inverse: MoveSite,
}

/// A signed word carrying a spherical curve, together with the move trace
/// that produced it from a standard curve.
#[derive(Debug, Clone)]
pub struct SphericalSample {
    pub word: Phrase,
    pub trace: Vec<SampleStep>,
}

/// Number of boundary circles of the capped ribbon neighborhood of the
/// curve encoded by a signed word: the face count of the four-valent graph
/// whose vertex rotations are read off the crossing signs.
///
/// A word of rank `k >= 1` encodes a curve on the sphere exactly when this
/// count is `k + 2`.
pub(crate) fn face_count(w: &Phrase) -> usize {
    let word = w.component(0);
    let positions = word.len();
    debug_assert!(positions >= 2);
    let plus = w
        .alphabet()
        .symbol_index("+")
        .expect("signed alphabet");

    // Arc t runs from position t to position t + 1 (cyclically). Dart 2t is
    // its tail (at position t), dart 2t + 1 its head.
    let out_dart = |t: usize| 2 * t;
    let in_dart = |t: usize| 2 * ((t + positions - 1) % positions) + 1;

    let mut sigma = vec![usize::MAX; 2 * positions];
    for id in 0..w.rank() {
        let [(_, t1), (_, t2)] = w.occurrences(id);
        let (out1, in1) = (out_dart(t1), in_dart(t1));
        let (out2, in2) = (out_dart(t2), in_dart(t2));
        // Counterclockwise rotation at the crossing; the sign picks one of
        // the two transversal configurations.
        let cycle = if w.letter(id).symbol == plus {
            [out1, out2, in1, in2]
        } else {
            [out1, in2, in1, out2]
        };
        for i in 0..4 {
            sigma[cycle[i]] = cycle[(i + 1) % 4];
        }
    }

    let mut seen = vec![false; 2 * positions];
    let mut faces = 0;
    for start in 0..2 * positions {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut dart = start;
        while !seen[dart] {
            seen[dart] = true;
            dart = sigma[dart ^ 1];
        }
    }
    faces
}

/// Whether the signed word carries a generic curve on the sphere.
pub(crate) fn is_spherical(w: &Phrase) -> bool {
    if w.rank() == 0 {
        return true;
    }
    face_count(w) == w.rank() + 2
}

/// Produces a member of the spherical subset by applying `steps` random
/// moves and inverse moves to the standard curve with `start` letters.
///
/// Candidate sites that would leave the spherical subset are rejected, so
/// the result always carries a spherical curve; the trace records each
/// applied site together with its inverse.
pub fn spherical_sample(seed: u64, steps: usize, start: usize) -> SphericalSample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut word = standard_curve(start, Sign::Plus);
    let mut trace = Vec::new();
    for _ in 0..steps {
        let mut candidates: Vec<MoveSite> = Vec::new();
        for id in [
            MoveId::DirectTangency,
            MoveId::InverseTangency,
            MoveId::TriplePoint,
        ] {
            candidates.extend(move_sites(&word, id).expect("word inputs stay valid"));
            candidates.extend(inverse_move_sites(&word, id).expect("word inputs stay valid"));
        }
        candidates.retain(|site| is_admissible(&word, site).expect("enumerated sites are valid"));
        candidates.shuffle(&mut rng);

        let mut applied = false;
        for site in candidates {
            let next = apply_move(&word, &site).expect("enumerated sites apply");
            if is_spherical(&next) {
                let inverse = inverted_site(&word, &site).expect("enumerated sites invert");
                trace.push(SampleStep { site, inverse });
                word = next;
                applied = true;
                break;
            }
        }
        if !applied {
            // A nested insertion at a single point is always spherical, so
            // this cannot happen; stop rather than loop if it ever does.
            break;
        }
    }
    debug_assert!(is_spherical(&word));
    SphericalSample { word, trace }
}
