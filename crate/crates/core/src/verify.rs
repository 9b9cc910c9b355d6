//! Seeded property suites behind the `verify` CLI command. Each suite
//! draws its cases from a deterministic stream, so a fixed seed and case
//! count always reproduce the same report.

use rand::prelude::IndexedRandom;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::builder::Prescription;
use crate::diagram::{Basepoints, LinkDiagram};
use crate::milnor;
use crate::surfaces::{BoundaryLetter, FingerMove, PatternType, Role, SurfacePattern};
use crate::words::{
    exponent_sum, magnus_coefficient, magnus_expansion, pair_exponent_sum, Letter, Sign, Word,
};

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> SuiteResult {
        SuiteResult {
            name,
            cases: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, message: impl FnOnce() -> String) {
        if !ok && self.failures.len() < 10 {
            self.failures.push(message());
        }
    }
}

pub fn run_all(seed: u64, cases: usize) -> Vec<SuiteResult> {
    vec![
        words_identities(seed, cases),
        diagram_linking(seed.wrapping_add(1), cases),
        milnor_properties(seed.wrapping_add(2), cases),
        surface_moves(seed.wrapping_add(3), cases),
        surface_identities(seed.wrapping_add(4), cases),
        builder_agreement(seed.wrapping_add(5), cases),
    ]
}

pub fn random_word(rng: &mut impl Rng, max_generator: usize, max_len: usize) -> Word {
    let len = rng.random_range(0..=max_len);
    (0..len)
        .map(|_| {
            Letter::new(
                rng.random_range(1..=max_generator),
                if rng.random_bool(0.5) {
                    Sign::Plus
                } else {
                    Sign::Minus
                },
            )
        })
        .collect()
}

/// A pattern whose paired linking readings agree by construction.
pub fn random_pattern(rng: &mut impl Rng) -> SurfacePattern {
    let mut words: [Vec<BoundaryLetter>; 3] = Default::default();
    for (a, b) in [(Role::I, Role::J), (Role::J, Role::K), (Role::K, Role::I)] {
        let lk: i64 = rng.random_range(-2..=2);
        for role in [a, b] {
            let other = if role == a { b } else { a };
            let mut letters: Vec<BoundaryLetter> = Vec::new();
            for _ in 0..lk.unsigned_abs() {
                letters.push(BoundaryLetter::new(other, Sign::of(lk)));
            }
            for _ in 0..rng.random_range(0..=2) {
                letters.push(BoundaryLetter::new(other, Sign::Plus));
                letters.push(BoundaryLetter::new(other, Sign::Minus));
            }
            words[role.index()].extend(letters);
        }
    }
    for word in &mut words {
        word.shuffle(rng);
    }
    let t = rng.random_range(-3..=3);
    SurfacePattern::new([1, 2, 3], words, t, 0, None).expect("generated patterns are well formed")
}

pub fn random_prescription(rng: &mut impl Rng, bound: i64) -> Prescription {
    Prescription::new(
        rng.random_range(-bound..=bound),
        rng.random_range(-bound..=bound),
        rng.random_range(-bound..=bound),
        rng.random_range(-bound..=bound),
    )
}

pub fn words_identities(seed: u64, cases: usize) -> SuiteResult {
    let mut suite = SuiteResult::new("words-identities");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..cases {
        suite.cases += 1;
        let u = random_word(&mut rng, 4, 40);
        let v = random_word(&mut rng, 4, 40);
        let uv = u.concat(&v);
        for g in 1..=4 {
            suite.check(
                exponent_sum(g, &uv) == exponent_sum(g, &u) + exponent_sum(g, &v),
                || format!("case {case}: exponent sum not additive for g{g}"),
            );
        }
        for (a, b) in [(1, 2), (2, 1), (3, 4), (2, 3)] {
            let lhs = pair_exponent_sum(a, b, &uv).unwrap();
            let rhs = pair_exponent_sum(a, b, &u).unwrap()
                + pair_exponent_sum(a, b, &v).unwrap()
                + exponent_sum(a, &u) * exponent_sum(b, &v);
            suite.check(lhs == rhs, || {
                format!("case {case}: pair sum concat rule failed for ({a},{b})")
            });
            let sym = pair_exponent_sum(a, b, &u).unwrap() + pair_exponent_sum(b, a, &u).unwrap();
            suite.check(sym == exponent_sum(a, &u) * exponent_sum(b, &u), || {
                format!("case {case}: pair sum symmetrization failed for ({a},{b})")
            });
            suite.check(
                magnus_coefficient(&u, &[a, b], 2).unwrap()
                    == pair_exponent_sum(a, b, &u).unwrap().into(),
                || format!("case {case}: degree 2 coefficient is not the pair sum"),
            );
        }
        for g in 1..=4usize {
            suite.check(
                magnus_coefficient(&u, &[g], 1).unwrap() == exponent_sum(g, &u).into(),
                || format!("case {case}: degree 1 coefficient is not the exponent sum"),
            );
        }
        suite.check(
            magnus_expansion(&u.free_reduce(), 2) == magnus_expansion(&u, 2),
            || format!("case {case}: expansion changed under free reduction"),
        );
    }
    suite
}

pub fn diagram_linking(seed: u64, cases: usize) -> SuiteResult {
    let mut suite = SuiteResult::new("diagram-linking");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = cases.div_ceil(20).min(60);
    for case in 0..n {
        suite.cases += 1;
        let pr = random_prescription(&mut rng, 3);
        let d = pr.build_diagram();
        // pairwise invariants agree with the crossing count both ways
        for (a, b) in [(1, 2), (2, 3), (1, 3)] {
            let from_crossings = d.mutual_crossing_sum(a, b).unwrap() / 2;
            let from_longitude = milnor::mu(&d, &[a, b]).unwrap();
            suite.check(from_longitude == from_crossings.into(), || {
                format!("case {case}: lk({a},{b}) disagrees for {pr:?}")
            });
        }
        // order-preserving relabeling changes nothing downstream
        let relabeled: Vec<_> = d
            .crossings()
            .iter()
            .map(|x| crate::diagram::Crossing {
                under_in: x.under_in * 3 + 5,
                b: x.b * 3 + 5,
                under_out: x.under_out * 3 + 5,
                d: x.d * 3 + 5,
            })
            .collect();
        let d2 = LinkDiagram::from_crossings(relabeled, 0, None, None).unwrap();
        suite.check(
            milnor::triple(&d2, 1, 2, 3) == milnor::triple(&d, 1, 2, 3),
            || format!("case {case}: relabeling changed the triple invariant for {pr:?}"),
        );
    }
    suite
}

pub fn milnor_properties(seed: u64, cases: usize) -> SuiteResult {
    let mut suite = SuiteResult::new("milnor-properties");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = cases.div_ceil(20).min(50);
    for case in 0..n {
        suite.cases += 1;
        let pr = random_prescription(&mut rng, 2);
        let d = pr.build_diagram();
        let bp = Basepoints::default_for(&d);
        let reference = milnor::triple(&d, 1, 2, 3).unwrap();

        let d3 = milnor::mu_at_depth(&d, &[1, 2, 3], 3, &bp).unwrap();
        let d4 = milnor::mu_at_depth(&d, &[1, 2, 3], 4, &bp).unwrap();
        suite.check(d3 == d4, || {
            format!("case {case}: depth 3 vs 4 differ for {pr:?}")
        });

        for (a, b) in [(1, 2), (2, 3), (1, 3)] {
            suite.check(
                milnor::mu(&d, &[a, b]).unwrap() == milnor::mu(&d, &[b, a]).unwrap(),
                || format!("case {case}: pairwise coefficient not symmetric for {pr:?}"),
            );
        }

        suite.check(
            milnor::triple(&d, 2, 1, 3).unwrap() == reference.negated(),
            || format!("case {case}: transposing the first two indices did not negate ({pr:?})"),
        );
        suite.check(
            milnor::triple(&d, 2, 3, 1).unwrap() == reference
                && milnor::triple(&d, 3, 1, 2).unwrap() == reference,
            || format!("case {case}: cyclic permutation changed the invariant ({pr:?})"),
        );

        suite.check(milnor::mu_bar(&d, &[1, 2, 3]).unwrap() == reference, || {
            format!("case {case}: shortcut and coefficient routes disagree ({pr:?})")
        });

        for component in 1..=3 {
            let shifted = Basepoints::shifted(&d, component).unwrap();
            suite.check(
                milnor::triple_with(&d, 1, 2, 3, &shifted).unwrap() == reference,
                || format!("case {case}: basepoint shift on component {component} moved the invariant ({pr:?})"),
            );
        }
    }
    suite
}

pub fn surface_moves(seed: u64, cases: usize) -> SuiteResult {
    let mut suite = SuiteResult::new("surface-moves");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = cases.div_ceil(2);
    for case in 0..n {
        suite.cases += 1;
        let p = random_pattern(&mut rng);
        let reference = p.m_value() - p.triple_points();
        let mut moves: Vec<FingerMove> = Vec::new();
        for word in Role::ALL {
            let len = p.word(word).len();
            let (a, b) = word.others();
            for pos in [0, len / 2, len] {
                for other in [a, b] {
                    for sign in [Sign::Plus, Sign::Minus] {
                        moves.push(FingerMove::InsertCancellingPair {
                            word,
                            pos,
                            other,
                            sign,
                        });
                    }
                }
            }
            for pos in 0..len {
                moves.push(FingerMove::Conjugate { word, pos });
                moves.push(FingerMove::SwapAdjacent { word, pos });
                moves.push(FingerMove::DeleteCancellingPair { word, pos });
                moves.push(FingerMove::Unconjugate { word, pos });
            }
        }
        for mv in moves {
            let Ok(moved) = p.finger_move(mv) else {
                continue;
            };
            suite.check(moved.m_value() - moved.triple_points() == reference, || {
                format!("case {case}: {mv:?} changed the invariant difference")
            });
        }
        // a random applicable swap composed with its inverse is identity
        let role = *Role::ALL.choose(&mut rng).unwrap();
        if p.word(role).len() >= 2 {
            let pos = rng.random_range(0..p.word(role).len() - 1);
            let there = p
                .finger_move(FingerMove::SwapAdjacent { word: role, pos })
                .unwrap();
            let back = there
                .finger_move(FingerMove::SwapAdjacent { word: role, pos })
                .unwrap();
            suite.check(
                back.word(role) == p.word(role) && back.triple_points() == p.triple_points(),
                || {
                    format!(
                        "case {case}: swap at {pos} of w_{} is not an involution",
                        role.token()
                    )
                },
            );
        }
    }
    suite
}

pub fn surface_identities(seed: u64, cases: usize) -> SuiteResult {
    let mut suite = SuiteResult::new("surface-identities");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = cases.div_ceil(2);
    for case in 0..n {
        suite.cases += 1;
        let p = random_pattern(&mut rng);

        // pair counts symmetrize to the product of linking numbers
        for r in Role::ALL {
            let (a, b) = r.others();
            let sym = p.e_value(a, b, r).unwrap() + p.e_value(b, a, r).unwrap();
            suite.check(sym == p.linking_from(r, a) * p.linking_from(r, b), || {
                format!(
                    "case {case}: pair count symmetrization failed on w_{}",
                    r.token()
                )
            });
        }

        // exact effect of a basepoint move on the cyclic pair count
        let role = *Role::ALL.choose(&mut rng).unwrap();
        let len = p.word(role).len();
        if len > 0 {
            let s = rng.random_range(0..len);
            let rotated = p.rotate_basepoint(role, s);
            let (a, b) = role.others();
            let prefix: Vec<_> = p.word(role)[..s].to_vec();
            let eps = |other: Role| -> i64 {
                prefix
                    .iter()
                    .filter(|l| l.other == other)
                    .map(|l| l.sign.value())
                    .sum()
            };
            let predicted = p.linking_from(role, a) * eps(b) - eps(a) * p.linking_from(role, b);
            let actual = rotated.e_value(a, b, role).unwrap() - p.e_value(a, b, role).unwrap();
            suite.check(actual == predicted, || {
                format!("case {case}: basepoint move changed e by {actual}, predicted {predicted}")
            });
            suite.check(rotated.mu_bar().unwrap() == p.mu_bar().unwrap(), || {
                format!("case {case}: basepoint move changed the invariant")
            });
        }

        // normalization returns the same residue and a two-block pattern
        let (sorted, residue) = p.normalize_boundary_ordered().unwrap();
        suite.check(residue == p.mu_bar().unwrap(), || {
            format!("case {case}: normalization changed the invariant")
        });
        suite.check(
            sorted.classify() == Ok(PatternType::BoundaryOrdered),
            || format!("case {case}: normalized pattern is not boundary ordered"),
        );
        // two-block words have pair counts that are products of linking
        // numbers, so their cyclic sum dies modulo the gcd
        let g = sorted.delta();
        suite.check(
            g == 0 && sorted.m_value() == 0 || g != 0 && sorted.m_value() % g == 0,
            || format!("case {case}: boundary ordered pair sum is nonzero modulo {g}"),
        );
    }
    suite
}

pub fn builder_agreement(seed: u64, cases: usize) -> SuiteResult {
    let mut suite = SuiteResult::new("builder-agreement");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if cases == 0 {
        return suite;
    }
    let mut prescriptions = Vec::new();
    for p in 0..=3 {
        for q in 0..=3 {
            for r in 0..=3 {
                for m in 0..=4 {
                    prescriptions.push(Prescription::new(p, q, r, m));
                }
            }
        }
    }
    for _ in 0..cases.div_ceil(40).min(40) {
        prescriptions.push(random_prescription(&mut rng, 3));
    }
    for pr in prescriptions {
        suite.cases += 1;
        let expected = pr.expected_mu_bar();
        let pattern = pr.build_pattern();
        suite.check(pattern.mu_bar() == Ok(expected.clone()), || {
            format!("pattern route disagrees for {pr:?}")
        });
        let diagram = pr.build_diagram();
        suite.check(
            milnor::mu_bar(&diagram, &[1, 2, 3]) == Ok(expected.clone()),
            || format!("diagram route disagrees for {pr:?}"),
        );
        if pr.m == 0 {
            suite.check(
                pattern.classify() == Ok(PatternType::DisjointClasps),
                || format!("clasp-only pattern for {pr:?} did not classify as disjoint clasps"),
            );
        }
        let negated = Prescription::new(pr.p, pr.q, pr.r, -pr.m);
        suite.check(
            negated.expected_mu_bar() == expected.negated()
                && negated.build_pattern().mu_bar() == Ok(expected.negated()),
            || format!("negating the tangle count did not negate the invariant for {pr:?}"),
        );
    }
    suite
}
