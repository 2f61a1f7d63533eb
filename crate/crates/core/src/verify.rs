//! Bundled verification suites: the exhaustive and randomized checks behind
//! `nanoinv verify`, organized so that every check can also be driven from
//! the acceptance test suite.

use std::collections::BTreeSet;
use std::sync::Arc;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    alternating_subphrase_sum_linear, orbit_pairing, subphrase_sum_linear, subphrases, FormalSum,
};
use crate::alphabet::Alphabet;
use crate::cyclic::cyclic_orbit;
use crate::enumerate::{enumerate_forms, random_phrase};
use crate::error::{Error, Result};
use crate::finite_type::{
    check_degree_at_most, class_basis, extend_invariant, star_all, universal_invariant,
    GroupValue, InvariantVector,
};
use crate::invariants::{
    apply_move, arnold_invariants, inverse_move_sites, inverted_site, is_admissible, iota,
    linking_matrix, move_sites, spherical_sample, standard_curve, triple_site_signs, MoveId,
    MoveSite, Sign, SphericalSample,
};
use crate::phrase::Phrase;
use crate::Rational;

/// Outcome of one verification check.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn pass(name: &'static str, detail: impl Into<String>) -> Check {
        Check {
            name,
            pass: true,
            detail: detail.into(),
        }
    }

    fn fail(name: &'static str, detail: impl Into<String>) -> Check {
        Check {
            name,
            pass: false,
            detail: detail.into(),
        }
    }

    fn expect(name: &'static str, pass: bool, detail: impl Into<String>) -> Check {
        Check {
            name,
            pass,
            detail: detail.into(),
        }
    }
}

/// All checks of one named suite.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub const SUITES: &[&str] = &[
    "theta-phi",
    "u-hat",
    "gamma-degree",
    "linking",
    "arnold",
    "moves",
];

/// Runs one suite, or every suite for `"all"`.
pub fn run_suite(name: &str) -> Result<Vec<SuiteReport>> {
    match name {
        "all" => SUITES.iter().map(|s| run_one(s)).collect(),
        _ => Ok(vec![run_one(name)?]),
    }
}

fn run_one(name: &str) -> Result<SuiteReport> {
    match name {
        "theta-phi" => suite_theta_phi(),
        "u-hat" => suite_u_hat(),
        "gamma-degree" => suite_gamma_degree(),
        "linking" => suite_linking(),
        "arnold" => suite_arnold(),
        "moves" => suite_moves(),
        _ => Err(Error::UnknownSuite { name: name.into() }),
    }
}

fn parse(text: &str, alphabet: &Arc<Alphabet>) -> Phrase {
    Phrase::parse(text, alphabet).expect("verification phrases parse")
}

// ---------------------------------------------------------------------------
// Suite: theta-phi (subphrase machinery, orbits, inversion)
// ---------------------------------------------------------------------------

fn suite_theta_phi() -> Result<SuiteReport> {
    let a = Alphabet::signed();
    let mut checks = Vec::new();

    // Criterion 1: the two-component example and the 2^rank counts.
    {
        let p = parse("A:+ B:+ A:+ | B:+", &a);
        let got: BTreeSet<_> = subphrases(&p)?
            .into_iter()
            .map(|q| q.canonical_form())
            .collect();
        let expected: BTreeSet<_> = [
            parse("A:+ B:+ A:+ | B:+", &a),
            parse("A:+ A:+ | ∅", &a),
            parse("B:+ | B:+", &a),
            parse("∅ | ∅", &a),
        ]
        .iter()
        .map(Phrase::canonical_form)
        .collect();
        checks.push(Check::expect(
            "subphrases-two-component-example",
            got == expected,
            format!("{} subphrases", got.len()),
        ));

        let mut rng = ChaCha8Rng::seed_from_u64(101);
        let mut all_match = true;
        for _ in 0..100 {
            let rank = rng.gen_range(0..=10);
            let n = rng.gen_range(1..=3);
            let q = random_phrase(&mut rng, rank, n, &a, 0);
            if subphrases(&q)?.len() != 1 << rank {
                all_match = false;
                break;
            }
        }
        checks.push(Check::expect(
            "subphrase-count-is-two-to-the-rank",
            all_match,
            "100 random phrases of rank <= 10",
        ));
    }

    // Criterion 2: the orbit examples, exactly.
    {
        let orbit = cyclic_orbit(&parse("X:+ X:+ Y:- Y:-", &a));
        let expected: BTreeSet<_> = [
            parse("X:+ X:+ Y:- Y:-", &a),
            parse("Y:+ X:+ X:+ Y:+", &a),
            parse("Y:- Y:- X:+ X:+", &a),
            parse("X:- Y:- Y:- X:-", &a),
        ]
        .iter()
        .map(Phrase::canonical_form)
        .collect();
        checks.push(Check::expect(
            "orbit-of-mixed-sign-pair",
            orbit == expected,
            format!("{} classes", orbit.len()),
        ));

        let orbit = cyclic_orbit(&parse("X:+ X:+ Y:+ Y:+", &a));
        let expected: BTreeSet<_> = [
            parse("X:+ X:+ Y:+ Y:+", &a),
            parse("Y:- X:+ X:+ Y:-", &a),
        ]
        .iter()
        .map(Phrase::canonical_form)
        .collect();
        checks.push(Check::expect(
            "orbit-of-plus-pair",
            orbit == expected,
            format!("{} classes", orbit.len()),
        ));
    }

    // Criterion 3: the subphrase sum and its alternating inverse.
    {
        let mut rng = ChaCha8Rng::seed_from_u64(103);
        let mut all_match = true;
        for _ in 0..200 {
            let n = rng.gen_range(1..=3);
            let terms = rng.gen_range(1..=3);
            let mut sum = FormalSum::zero();
            for _ in 0..terms {
                let rank = rng.gen_range(0..=5);
                let p = random_phrase(&mut rng, rank, n, &a, 0);
                sum.add_term(p.canonical_form(), rng.gen_range(-3..=3i64));
            }
            let theta = subphrase_sum_linear(&sum, &a)?;
            if alternating_subphrase_sum_linear(&theta, &a)? != sum {
                all_match = false;
                break;
            }
            let phi = alternating_subphrase_sum_linear(&sum, &a)?;
            if subphrase_sum_linear(&phi, &a)? != sum {
                all_match = false;
                break;
            }
        }
        checks.push(Check::expect(
            "subphrase-sum-inversion",
            all_match,
            "200 random formal sums, rank <= 5, up to 3 components",
        ));
    }

    Ok(SuiteReport {
        suite: "theta-phi",
        checks,
    })
}

// ---------------------------------------------------------------------------
// Suite: u-hat (well-definedness of the singular extension)
// ---------------------------------------------------------------------------

/// Resolves singular letters one at a time following the given name order.
fn extend_recursive<V, F>(u: &F, p: &Phrase, order: &[String]) -> Result<V>
where
    V: GroupValue,
    F: Fn(&Phrase) -> Result<V>,
{
    let singular = p.singular_letters();
    if singular.is_empty() {
        return u(p);
    }
    let next = order
        .iter()
        .find_map(|name| {
            singular
                .iter()
                .copied()
                .find(|&id| p.letter(id).name == *name)
        })
        .expect("order covers all singular letters");
    let mut keep = vec![true; p.rank()];
    let mut resolve = vec![false; p.rank()];
    resolve[next] = true;
    let replaced = p.restrict(&keep, &resolve);
    keep[next] = false;
    let deleted = p.restrict(&keep, &vec![false; p.rank()]);
    let left: V = extend_recursive(u, &replaced, order)?;
    let right: V = extend_recursive(u, &deleted, order)?;
    Ok(left.sub(&right))
}

fn suite_u_hat() -> Result<SuiteReport> {
    let a = Alphabet::signed();
    let mut checks = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(104);

    let mut all_match = true;
    let mut detail = String::new();
    'outer: for _ in 0..100 {
        let singular = rng.gen_range(0..=4);
        let rank = rng.gen_range(singular..=singular + 2);
        let n = rng.gen_range(1..=2);
        let p = random_phrase(&mut rng, rank, n, &a, singular);
        let names: Vec<String> = p
            .singular_letters()
            .iter()
            .map(|&id| p.letter(id).name.clone())
            .collect();

        let rank_fn = |q: &Phrase| Ok(q.rank() as i64);
        let gamma2 = |q: &Phrase| universal_invariant(q, 2);
        let rank_reference = extend_invariant(rank_fn, &p)?;
        let gamma_reference = extend_invariant(gamma2, &p)?;

        let mut orders: Vec<Vec<String>> = names.iter().cloned().permutations(names.len()).collect();
        if orders.is_empty() {
            orders.push(Vec::new());
        }
        for order in orders {
            if extend_recursive(&rank_fn, &p, &order)? != rank_reference
                || extend_recursive(&gamma2, &p, &order)? != gamma_reference
            {
                all_match = false;
                detail = format!("resolution order disagreement on {}", p.to_notation());
                break 'outer;
            }
        }
    }
    if detail.is_empty() {
        detail = "100 random singular phrases, all elimination orders".into();
    }
    checks.push(Check::expect("resolution-order-independence", all_match, detail));

    Ok(SuiteReport {
        suite: "u-hat",
        checks,
    })
}

// ---------------------------------------------------------------------------
// Suite: gamma-degree (the universal invariant at desk scale)
// ---------------------------------------------------------------------------

fn suite_gamma_degree() -> Result<SuiteReport> {
    let a = Alphabet::signed();
    let mut checks = Vec::new();

    for m in [1usize, 2] {
        for n in [1usize, 2] {
            let gamma = |q: &Phrase| universal_invariant(q, m);
            let report = check_degree_at_most(gamma, m, m + 2, n, &a)?;
            let name: &'static str = match (m, n) {
                (1, 1) => "gamma-1-vanishes-on-2-singular-words",
                (1, 2) => "gamma-1-vanishes-on-2-singular-phrases",
                (2, 1) => "gamma-2-vanishes-on-3-singular-words",
                _ => "gamma-2-vanishes-on-3-singular-phrases",
            };
            let detail = match &report.witness {
                None => format!("exhaustive, rank <= {}, {n} component(s)", m + 2),
                Some(w) => format!("witness {}", w.to_notation()),
            };
            checks.push(Check::expect(name, report.holds, detail));
        }
    }

    for m in [1usize, 2] {
        for n in [1usize, 2] {
            let gamma = |q: &Phrase| universal_invariant(q, m);
            let mut all_match = true;
            let mut detail = String::new();
            let mut classes = 0;
            for class in class_basis(m, n, &a)? {
                if class.rank() != m {
                    continue;
                }
                classes += 1;
                let p = class.representative().to_phrase(&a);
                let value = extend_invariant(gamma, &star_all(&p)?)?;
                if value != InvariantVector::unit(class.clone(), m, n) {
                    all_match = false;
                    detail = format!("starred {} is not a unit vector", p.to_notation());
                    break;
                }
            }
            if detail.is_empty() {
                detail = format!("{classes} rank-{m} classes recover unit vectors");
            }
            let name: &'static str = match (m, n) {
                (1, 1) => "gamma-1-units-one-component",
                (1, 2) => "gamma-1-units-two-components",
                (2, 1) => "gamma-2-units-one-component",
                _ => "gamma-2-units-two-components",
            };
            checks.push(Check::expect(name, all_match, detail));
        }
    }

    Ok(SuiteReport {
        suite: "gamma-degree",
        checks,
    })
}

// ---------------------------------------------------------------------------
// Suite: linking (degree one and its universality)
// ---------------------------------------------------------------------------

fn suite_linking() -> Result<SuiteReport> {
    let a = Alphabet::signed();
    let mut checks = Vec::new();

    // Vanishing on every phrase with exactly two singular letters.
    for n in [1usize, 2] {
        let report = check_degree_at_most(linking_matrix, 1, 4, n, &a)?;
        let name: &'static str = if n == 1 {
            "linking-vanishes-on-2-singular-words"
        } else {
            "linking-vanishes-on-2-singular-phrases"
        };
        let detail = match &report.witness {
            None => format!("exhaustive, rank <= 4, {n} component(s)"),
            Some(w) => format!("witness {}", w.to_notation()),
        };
        checks.push(Check::expect(name, report.holds, detail));
    }

    // A single spanning singular letter is detected.
    {
        let p = Phrase::parse("A:+* | A:+*", &a)?;
        let value = extend_invariant(linking_matrix, &p)?;
        checks.push(Check::expect(
            "linking-detects-spanning-singular-letter",
            !value.is_zero(),
            "l(1,2) of the one-singular spanning phrase",
        ));
    }

    // Universality at degree one: (L, iota) separates exactly as gamma-1
    // does, over every pair of isomorphism classes of rank <= 3 on two
    // components.
    {
        let mut forms = Vec::new();
        for rank in 0..=3 {
            forms.extend(enumerate_forms(rank, 2, &a, 0)?);
        }
        let mut values = Vec::with_capacity(forms.len());
        for form in &forms {
            let p = form.to_phrase(&a);
            values.push((
                (linking_matrix(&p)?, iota(&p)),
                universal_invariant(&p, 1)?,
            ));
        }
        let mut agree = true;
        'pairs: for i in 0..values.len() {
            for j in i + 1..values.len() {
                let degree1_equal = values[i].0 == values[j].0;
                let gamma_equal = values[i].1 == values[j].1;
                if degree1_equal != gamma_equal {
                    agree = false;
                    break 'pairs;
                }
            }
        }
        checks.push(Check::expect(
            "linking-plus-iota-matches-gamma-1",
            agree,
            format!("all pairs of {} forms, rank <= 3, two components", forms.len()),
        ));
    }

    Ok(SuiteReport {
        suite: "linking",
        checks,
    })
}

// ---------------------------------------------------------------------------
// Suite: arnold (normalizations, examples, degree two)
// ---------------------------------------------------------------------------

fn suite_arnold() -> Result<SuiteReport> {
    let a = Alphabet::signed();
    let mut checks = Vec::new();

    // Criterion 7: normalization on the standard curves.
    {
        let mut all_match = true;
        for i in 1..=5i64 {
            let w = standard_curve(i as usize, Sign::Plus);
            let values = arnold_invariants(&w)?;
            let expected_j_plus = Rational::new((i - 1) * (i - 1), 2);
            let expected_j_minus = Rational::new((i - 2) * (i - 2), 2) - Rational::new(3, 2);
            let expected_st = -Rational::new((i - 1) * (i - 1), 4);
            if values.j_plus != expected_j_plus
                || values.j_minus != expected_j_minus
                || values.strangeness != expected_st
            {
                all_match = false;
                break;
            }
        }
        checks.push(Check::expect(
            "arnold-normalization-on-standard-curves",
            all_match,
            "i = 1..5, exact rationals",
        ));
    }

    // Criterion 8: the section 7 comparison pair.
    {
        let w1 = parse("A:+ A:+ B:- B:- C:+ C:+", &a);
        let w2 = parse("A:- A:- B:- B:- C:+ C:+", &a);
        let v1 = arnold_invariants(&w1)?;
        let v2 = arnold_invariants(&w2)?;
        let expected = (
            Rational::from_integer(-2),
            Rational::from_integer(-5),
            Rational::from_integer(1),
        );
        let values_match = (v1.j_plus, v1.j_minus, v1.strangeness) == expected
            && (v2.j_plus, v2.j_minus, v2.strangeness) == expected;
        checks.push(Check::expect(
            "arnold-values-agree-on-the-comparison-pair",
            values_match,
            "J+ = -2, J- = -5, St = 1 on both words",
        ));
        let gamma_differs = universal_invariant(&w1, 2)? != universal_invariant(&w2, 2)?;
        checks.push(Check::expect(
            "gamma-2-separates-the-comparison-pair",
            gamma_differs,
            "degree-2 universal invariant distinguishes the words",
        ));
    }

    // Criterion 9: degree two, exhaustively on three-singular words.
    {
        let j_plus = |q: &Phrase| Ok(arnold_invariants(q)?.j_plus);
        let j_minus = |q: &Phrase| Ok(arnold_invariants(q)?.j_minus);
        let st = |q: &Phrase| Ok(arnold_invariants(q)?.strangeness);

        let names: [&'static str; 3] = [
            "j-plus-vanishes-on-3-singular-words",
            "j-minus-vanishes-on-3-singular-words",
            "strangeness-vanishes-on-3-singular-words",
        ];
        let reports = [
            check_degree_at_most(j_plus, 2, 4, 1, &a)?,
            check_degree_at_most(j_minus, 2, 4, 1, &a)?,
            check_degree_at_most(st, 2, 4, 1, &a)?,
        ];
        for (name, report) in names.into_iter().zip(reports.into_iter()) {
            let detail = match &report.witness {
                None => "exhaustive, rank <= 4".to_string(),
                Some(w) => format!("witness {}", w.to_notation()),
            };
            checks.push(Check::expect(name, report.holds, detail));
        }

        // Non-vanishing on some word with exactly two singular letters.
        let mut witnesses = [false; 3];
        'search: for rank in 2..=3 {
            for form in enumerate_forms(rank, 1, &a, 2)? {
                let p = form.to_phrase(&a);
                let values = (
                    extend_invariant(j_plus, &p)?,
                    extend_invariant(j_minus, &p)?,
                    extend_invariant(st, &p)?,
                );
                witnesses[0] |= values.0 != Rational::from_integer(0);
                witnesses[1] |= values.1 != Rational::from_integer(0);
                witnesses[2] |= values.2 != Rational::from_integer(0);
                if witnesses.iter().all(|&w| w) {
                    break 'search;
                }
            }
        }
        checks.push(Check::expect(
            "arnold-extensions-nonzero-on-2-singular-words",
            witnesses.iter().all(|&w| w),
            "each formula detects some two-singular word",
        ));
    }

    Ok(SuiteReport {
        suite: "arnold",
        checks,
    })
}

// ---------------------------------------------------------------------------
// Suite: moves (jumps, shift invariance, independence)
// ---------------------------------------------------------------------------

fn arnold_triple(w: &Phrase) -> Result<(Rational, Rational, Rational)> {
    let v = arnold_invariants(w)?;
    Ok((v.j_plus, v.j_minus, v.strangeness))
}

fn delta_triple(
    before: &(Rational, Rational, Rational),
    after: &(Rational, Rational, Rational),
) -> (Rational, Rational, Rational) {
    (after.0 - before.0, after.1 - before.1, after.2 - before.2)
}

pub(crate) fn standard_samples() -> Vec<SphericalSample> {
    let mut samples = Vec::new();
    for seed in 0..50u64 {
        let start = (seed % 4) as usize;
        let steps = 3 + (seed % 3) as usize;
        samples.push(spherical_sample(seed, steps, start));
    }
    samples
}

/// A word containing the forward triple pattern at a known site, spherical
/// by construction from the double-curl insertions around a triangle.
fn triple_pattern_words() -> Vec<Phrase> {
    let a = Alphabet::signed();
    vec![
        parse("A:+ B:+ D:+ A:+ C:+ D:+ B:+ C:+", &a),
        parse("A:- B:- D:- A:- C:- D:- B:- C:-", &a),
        parse("A:+ B:- D:+ A:+ C:+ D:+ B:- C:+", &a),
        parse("A:+ B:+ D:+ A:+ C:- D:+ B:+ C:-", &a),
        parse("A:- B:+ D:+ A:- C:+ D:+ B:+ C:+", &a),
    ]
}

fn suite_moves() -> Result<SuiteReport> {
    let mut checks = Vec::new();
    let samples = standard_samples();

    let zero = Rational::from_integer(0);
    let two = Rational::from_integer(2);
    let one = Rational::from_integer(1);

    // Criterion 10, tangency moves: constant jumps at every site.
    {
        let mut ok = true;
        let mut sites_checked = 0usize;
        let mut detail = String::new();
        'outer: for sample in &samples {
            let w = &sample.word;
            let before = arnold_triple(w)?;
            for (move_id, expected) in [
                (MoveId::DirectTangency, (two, zero, zero)),
                (MoveId::InverseTangency, (zero, -two, zero)),
            ] {
                for site in move_sites(w, move_id)? {
                    let bigger = apply_move(w, &site)?;
                    let after = arnold_triple(&bigger)?;
                    if delta_triple(&before, &after) != expected {
                        ok = false;
                        detail = format!(
                            "unexpected forward jump at {site:?} on {}",
                            w.to_notation()
                        );
                        break 'outer;
                    }
                    let back = apply_move(&bigger, &inverted_site(w, &site)?)?;
                    let restored = arnold_triple(&back)?;
                    let inverse_delta = delta_triple(&after, &restored);
                    let expected_back = (-expected.0, -expected.1, -expected.2);
                    if inverse_delta != expected_back {
                        ok = false;
                        detail = format!("inverse jump mismatch at {site:?}");
                        break 'outer;
                    }
                    sites_checked += 1;
                }
            }
        }
        if detail.is_empty() {
            detail = format!(
                "{sites_checked} insertion sites over {} samples; measured jumps: \
                 move 1 gives (+2, 0, 0), move 2 gives (0, -2, 0), inverses negate",
                samples.len()
            );
        }
        checks.push(Check::expect("tangency-move-jumps", ok, detail));
    }

    // Criterion 10, triple point move: admissible sign patterns jump St by
    // one; mixed patterns are rejected as inadmissible and do change J.
    {
        let mut ok = true;
        let mut admissible_seen = 0usize;
        let mut mixed_seen = 0usize;
        let mut detail = String::new();

        let mut words: Vec<Phrase> = samples.iter().map(|s| s.word.clone()).collect();
        words.extend(triple_pattern_words());

        'outer: for w in &words {
            let before = arnold_triple(w)?;
            for site in move_sites(w, MoveId::TriplePoint)? {
                let after_word = apply_move(w, &site)?;
                let after = arnold_triple(&after_word)?;
                let jump = delta_triple(&before, &after);
                if is_admissible(w, &site)? {
                    admissible_seen += 1;
                    if jump != (zero, zero, one) {
                        ok = false;
                        detail = format!(
                            "admissible triple jump {jump:?} on {}",
                            w.to_notation()
                        );
                        break 'outer;
                    }
                    let back = apply_move(&after_word, &inverted_site(w, &site)?)?;
                    let restored = arnold_triple(&back)?;
                    if delta_triple(&after, &restored) != (zero, zero, -one) {
                        ok = false;
                        detail = "inverse triple jump mismatch".into();
                        break 'outer;
                    }
                } else {
                    mixed_seen += 1;
                    let signs = triple_site_signs(w, &site)?;
                    if jump.0 == zero && jump.1 == zero && (jump.2 == one || jump.2 == -one) {
                        ok = false;
                        detail = format!(
                            "sign pattern ({}, {}, {}) behaves like an admissible triple",
                            signs.0, signs.1, signs.2
                        );
                        break 'outer;
                    }
                }
            }
        }
        if ok && admissible_seen == 0 {
            ok = false;
            detail = "no admissible triple sites were exercised".into();
        }
        if detail.is_empty() {
            detail = format!(
                "{admissible_seen} admissible sites jump (0, 0, +1) forward; \
                 {mixed_seen} mixed-sign sites flagged (they shift J instead)"
            );
        }
        checks.push(Check::expect("triple-point-jumps", ok, detail));
    }

    // Criterion 11: the Arnold formulas are constant on the cyclic orbit of
    // every sampled spherical word.
    {
        let a = Alphabet::signed();
        let mut ok = true;
        let mut orbit_members = 0usize;
        let mut detail = String::new();
        'outer: for sample in &samples {
            let reference = arnold_triple(&sample.word)?;
            for form in cyclic_orbit(&sample.word) {
                orbit_members += 1;
                if arnold_triple(&form.to_phrase(&a))? != reference {
                    ok = false;
                    detail = format!(
                        "orbit of {} is not constant",
                        sample.word.to_notation()
                    );
                    break 'outer;
                }
            }
        }
        if detail.is_empty() {
            detail = format!(
                "{} samples, {orbit_members} orbit members in total",
                samples.len()
            );
        }
        checks.push(Check::expect("spherical-shift-invariance", ok, detail));
    }

    // Criterion 12: the seven listed functionals are independent over the
    // sampled spherical words.
    {
        let a = Alphabet::signed();
        let aabb = parse("A:+ A:+ B:+ B:+", &a);
        let aabb_mixed = parse("A:+ A:+ B:- B:-", &a);
        let aabb_minus = parse("A:- A:- B:- B:-", &a);
        let abab = parse("A:+ B:+ A:+ B:+", &a);
        let aa = parse("A:+ A:+", &a);
        let interleaved = crate::invariants::GaussPattern::parse("ABAB")?;

        let mut matrix: Vec<[i64; 7]> = Vec::new();
        for sample in &samples {
            let w = &sample.word;
            matrix.push([
                orbit_pairing(&aabb, w)?,
                orbit_pairing(&aabb_mixed, w)?,
                orbit_pairing(&aabb_minus, w)?,
                orbit_pairing(&abab, w)?,
                orbit_pairing(&aa, w)?,
                1,
                crate::invariants::signed_pairing(&interleaved, w)?,
            ]);
        }
        let rank = rational_rank(&matrix);
        checks.push(Check::expect(
            "seven-functionals-attain-rank-7",
            rank == 7,
            format!("value matrix over {} samples has rank {rank}", matrix.len()),
        ));
    }

    Ok(SuiteReport {
        suite: "moves",
        checks,
    })
}

/// Rank of an integer matrix over the rationals, by fraction-free
/// elimination in 128-bit arithmetic.
pub(crate) fn rational_rank(rows: &[[i64; 7]]) -> usize {
    let mut m: Vec<[i128; 7]> = rows
        .iter()
        .map(|r| {
            let mut out = [0i128; 7];
            for (i, &v) in r.iter().enumerate() {
                out[i] = v as i128;
            }
            out
        })
        .collect();
    let mut rank = 0;
    for col in 0..7 {
        let Some(pivot_row) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let pivot = m[rank][col];
        for row in rank + 1..m.len() {
            if m[row][col] == 0 {
                continue;
            }
            let factor = m[row][col];
            for c in 0..7 {
                m[row][c] = m[row][c] * pivot - m[rank][c] * factor;
            }
            // Keep entries small; dividing by the gcd preserves the row space.
            let g = m[row].iter().fold(0i128, |acc, &v| gcd(acc, v.abs()));
            if g > 1 {
                for c in 0..7 {
                    m[row][c] /= g;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
