use super::Sign;
use crate::error::{Error, Result};
use crate::phrase::{generated_name, Letter, Phrase};

/// The three regular homotopy moves on signed words.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveId {
    /// Insertion of an interleaved opposite-sign pair `A B ... A B`.
    DirectTangency,
    /// Insertion of a nested opposite-sign pair `A B ... B A`.
    InverseTangency,
    /// The triple point swap on the matched pattern `x AB y AC z BC t`.
    TriplePoint,
}

impl MoveId {
    pub fn number(self) -> u8 {
        match self {
            MoveId::DirectTangency => 1,
            MoveId::InverseTangency => 2,
            MoveId::TriplePoint => 3,
        }
    }

    pub fn from_number(id: u8) -> Option<MoveId> {
        match id {
            1 => Some(MoveId::DirectTangency),
            2 => Some(MoveId::InverseTangency),
            3 => Some(MoveId::TriplePoint),
            _ => None,
        }
    }
}

/// A concrete place where a move applies.
///
/// Insertions are described by the two gaps receiving the fresh pair and the
/// sign of the first inserted letter (the second always takes the opposite
/// sign; same-sign insertions are not sites). Removals point at the first
/// positions of the two matched adjacent pairs. Triple sites point at the
/// three matched adjacent pairs of the six-occurrence pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveSite {
    Insert {
        move_id: MoveId,
        gap1: usize,
        gap2: usize,
        first_sign: Sign,
    },
    Remove {
        move_id: MoveId,
        pos1: usize,
        pos2: usize,
    },
    Triple {
        pos_ab: usize,
        pos_ac: usize,
        pos_bc: usize,
        forward: bool,
    },
}

impl MoveSite {
    pub fn move_id(&self) -> MoveId {
        match self {
            MoveSite::Insert { move_id, .. } | MoveSite::Remove { move_id, .. } => *move_id,
            MoveSite::Triple { .. } => MoveId::TriplePoint,
        }
    }
}

fn check_word(operation: &'static str, w: &Phrase) -> Result<()> {
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

fn letter_sign(w: &Phrase, id: usize) -> Sign {
    Sign::from_symbol(w.alphabet(), w.letter(id).symbol)
}

/// All forward sites of the given move on `w`: every ordered gap pair with
/// both sign choices for the tangency moves, every match of the pattern
/// `x AB y AC z BC t` for the triple point move.
pub fn move_sites(w: &Phrase, move_id: MoveId) -> Result<Vec<MoveSite>> {
    check_word("move_sites", w)?;
    let word = w.component(0);
    let mut sites = Vec::new();
    match move_id {
        MoveId::DirectTangency | MoveId::InverseTangency => {
            let len = word.len();
            for gap1 in 0..=len {
                for gap2 in gap1..=len {
                    for first_sign in [Sign::Plus, Sign::Minus] {
                        sites.push(MoveSite::Insert {
                            move_id,
                            gap1,
                            gap2,
                            first_sign,
                        });
                    }
                }
            }
        }
        MoveId::TriplePoint => {
            let len = word.len();
            if len >= 6 {
                for i in 0..len - 5 {
                    for j in i + 2..len - 3 {
                        for k in j + 2..len - 1 {
                            if word[i] == word[j]
                                && word[i + 1] == word[k]
                                && word[j + 1] == word[k + 1]
                            {
                                sites.push(MoveSite::Triple {
                                    pos_ab: i,
                                    pos_ac: j,
                                    pos_bc: k,
                                    forward: true,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(sites)
}

/// All sites undoing the given move: matched removable pairs for the
/// tangency moves, matches of the swapped pattern for the triple point.
pub fn inverse_move_sites(w: &Phrase, move_id: MoveId) -> Result<Vec<MoveSite>> {
    check_word("inverse_move_sites", w)?;
    let word = w.component(0);
    let len = word.len();
    let mut sites = Vec::new();
    match move_id {
        MoveId::DirectTangency | MoveId::InverseTangency => {
            if len >= 4 {
                for pos1 in 0..len - 3 {
                    for pos2 in pos1 + 2..len - 1 {
                        let a = word[pos1];
                        let b = word[pos1 + 1];
                        if a == b {
                            continue;
                        }
                        let matches = match move_id {
                            MoveId::DirectTangency => word[pos2] == a && word[pos2 + 1] == b,
                            MoveId::InverseTangency => word[pos2] == b && word[pos2 + 1] == a,
                            MoveId::TriplePoint => unreachable!(),
                        };
                        if matches && letter_sign(w, a) == letter_sign(w, b).opposite() {
                            sites.push(MoveSite::Remove { move_id, pos1, pos2 });
                        }
                    }
                }
            }
        }
        MoveId::TriplePoint => {
            if len >= 6 {
                for i in 0..len - 5 {
                    for j in i + 2..len - 3 {
                        for k in j + 2..len - 1 {
                            if word[i + 1] == word[j + 1]
                                && word[i] == word[k + 1]
                                && word[j] == word[k]
                            {
                                sites.push(MoveSite::Triple {
                                    pos_ab: i,
                                    pos_ac: j,
                                    pos_bc: k,
                                    forward: false,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(sites)
}

fn invalid(message: String) -> Error {
    Error::InvalidSite {
        operation: "apply_move",
        message,
    }
}

fn fresh_names(w: &Phrase, count: usize) -> Vec<String> {
    let mut names = Vec::with_capacity(count);
    let mut index = 0;
    while names.len() < count {
        let candidate = generated_name(index);
        index += 1;
        if w.letters().iter().any(|l| l.name == candidate) {
            continue;
        }
        names.push(candidate);
    }
    names
}

fn verify_triple_site(w: &Phrase, site: &MoveSite) -> Result<(usize, usize, usize)> {
    let MoveSite::Triple {
        pos_ab,
        pos_ac,
        pos_bc,
        forward,
    } = site
    else {
        unreachable!()
    };
    let word = w.component(0);
    let (i, j, k) = (*pos_ab, *pos_ac, *pos_bc);
    if !(i + 2 <= j && j + 2 <= k && k + 1 < word.len()) {
        return Err(invalid(format!("triple positions ({i}, {j}, {k}) overlap or overflow")));
    }
    let pattern_holds = if *forward {
        word[i] == word[j] && word[i + 1] == word[k] && word[j + 1] == word[k + 1]
    } else {
        word[i + 1] == word[j + 1] && word[i] == word[k + 1] && word[j] == word[k]
    };
    if !pattern_holds {
        return Err(invalid(format!(
            "the word does not match the triple pattern at ({i}, {j}, {k})"
        )));
    }
    Ok((i, j, k))
}

/// Rewrites the word according to the site. Insertions add fresh letters;
/// removals delete the matched pair; triple sites swap the three matched
/// adjacent pairs in place.
pub fn apply_move(w: &Phrase, site: &MoveSite) -> Result<Phrase> {
    check_word("apply_move", w)?;
    let word = w.component(0);
    match site {
        MoveSite::Insert {
            move_id,
            gap1,
            gap2,
            first_sign,
        } => {
            if *move_id == MoveId::TriplePoint {
                return Err(invalid("the triple point move inserts nothing".into()));
            }
            if !(gap1 <= gap2 && *gap2 <= word.len()) {
                return Err(invalid(format!(
                    "gaps ({gap1}, {gap2}) out of range for a word of length {}",
                    word.len()
                )));
            }
            let names = fresh_names(w, 2);
            let alphabet = w.alphabet();
            let sym = |s: Sign| alphabet.symbol_index(s.token()).expect("signed alphabet");
            let mut letters = w.letters().to_vec();
            let a = letters.len();
            letters.push(Letter {
                name: names[0].clone(),
                symbol: sym(*first_sign),
                singular: false,
            });
            let b = letters.len();
            letters.push(Letter {
                name: names[1].clone(),
                symbol: sym(first_sign.opposite()),
                singular: false,
            });
            let mut component = Vec::with_capacity(word.len() + 4);
            component.extend_from_slice(&word[..*gap1]);
            component.extend_from_slice(&[a, b]);
            component.extend_from_slice(&word[*gap1..*gap2]);
            match move_id {
                MoveId::DirectTangency => component.extend_from_slice(&[a, b]),
                MoveId::InverseTangency => component.extend_from_slice(&[b, a]),
                MoveId::TriplePoint => unreachable!(),
            }
            component.extend_from_slice(&word[*gap2..]);
            Ok(Phrase::from_raw(alphabet.clone(), letters, vec![component]))
        }
        MoveSite::Remove { move_id, pos1, pos2 } => {
            if *move_id == MoveId::TriplePoint {
                return Err(invalid("the triple point move removes nothing".into()));
            }
            let (p1, p2) = (*pos1, *pos2);
            if !(p1 + 2 <= p2 && p2 + 1 < word.len()) {
                return Err(invalid(format!("removal positions ({p1}, {p2}) overlap or overflow")));
            }
            let a = word[p1];
            let b = word[p1 + 1];
            let pattern_holds = a != b
                && match move_id {
                    MoveId::DirectTangency => word[p2] == a && word[p2 + 1] == b,
                    MoveId::InverseTangency => word[p2] == b && word[p2 + 1] == a,
                    MoveId::TriplePoint => unreachable!(),
                };
            if !pattern_holds {
                return Err(invalid(format!(
                    "the word does not match the removal pattern at ({p1}, {p2})"
                )));
            }
            if letter_sign(w, a) != letter_sign(w, b).opposite() {
                return Err(invalid("a removable pair must carry opposite signs".into()));
            }
            let mut keep = vec![true; w.rank()];
            keep[a] = false;
            keep[b] = false;
            Ok(w.restrict(&keep, &vec![false; w.rank()]))
        }
        MoveSite::Triple { .. } => {
            let (i, j, k) = verify_triple_site(w, site)?;
            let mut component = word.to_vec();
            component.swap(i, i + 1);
            component.swap(j, j + 1);
            component.swap(k, k + 1);
            Ok(Phrase::from_raw(
                w.alphabet().clone(),
                w.letters().to_vec(),
                vec![component],
            ))
        }
    }
}

/// The site that undoes `site` once it has been applied to `w`.
pub fn inverted_site(w: &Phrase, site: &MoveSite) -> Result<MoveSite> {
    check_word("inverted_site", w)?;
    match site {
        MoveSite::Insert {
            move_id, gap1, gap2, ..
        } => Ok(MoveSite::Remove {
            move_id: *move_id,
            pos1: *gap1,
            pos2: *gap2 + 2,
        }),
        MoveSite::Remove { move_id, pos1, pos2 } => {
            let word = w.component(0);
            if *pos1 >= word.len() {
                return Err(invalid(format!("position {pos1} out of range")));
            }
            let first_sign = letter_sign(w, word[*pos1]);
            Ok(MoveSite::Insert {
                move_id: *move_id,
                gap1: *pos1,
                gap2: *pos2 - 2,
                first_sign,
            })
        }
        MoveSite::Triple {
            pos_ab,
            pos_ac,
            pos_bc,
            forward,
        } => Ok(MoveSite::Triple {
            pos_ab: *pos_ab,
            pos_ac: *pos_ac,
            pos_bc: *pos_bc,
            forward: !forward,
        }),
    }
}

/// Signs of the three letters matched by a triple site, in the role order of
/// the pattern `x AB y AC z BC t`.
pub fn triple_site_signs(w: &Phrase, site: &MoveSite) -> Result<(Sign, Sign, Sign)> {
    check_word("triple_site_signs", w)?;
    let (i, j, _) = verify_triple_site(w, site)?;
    let word = w.component(0);
    let MoveSite::Triple { forward, .. } = site else {
        unreachable!()
    };
    let (a, b, c) = if *forward {
        (word[i], word[i + 1], word[j + 1])
    } else {
        (word[i + 1], word[i], word[j])
    };
    Ok((letter_sign(w, a), letter_sign(w, b), letter_sign(w, c)))
}

/// Whether the site is one of the geometrically meaningful ones. Insertions
/// and removals always are (the opposite-sign constraint is structural);
/// triple sites require the three matched letters to carry equal signs.
pub fn is_admissible(w: &Phrase, site: &MoveSite) -> Result<bool> {
    match site {
        MoveSite::Insert { .. } | MoveSite::Remove { .. } => Ok(true),
        MoveSite::Triple { .. } => {
            let (a, b, c) = triple_site_signs(w, site)?;
            Ok(a == b && b == c)
        }
    }
}
