//! Construction of three-component links with prescribed pairwise
//! linking numbers and triple linking number, in both input formats.
//!
//! The diagram is the trace closure of a 3-strand tangle assembled from
//! elementary blocks: a clasp between two components is a full twist of
//! their strands (two same-sign crossings), the far pair is clasped
//! through a transient strand exchange, and each unit of the triple
//! invariant is a 6-crossing tangle whose closure alone is the three
//! pairwise-unlinked rings with triple linking number one. Components
//! without any crossings get a single positive kink so every component
//! owns arcs. The pattern form realizes the same prescription directly:
//! one clasp letter pair per twist, and one commutator block in the
//! third boundary word per tangle.

use num_integer::Integer;

use crate::diagram::{Crossing, LinkDiagram};
use crate::milnor::Residue;
use crate::surfaces::{BoundaryLetter, LetterRef, Role, SurfacePattern};
use crate::words::Sign;

/// Target invariants: pairwise linking numbers `p = lk(1,2)`,
/// `q = lk(2,3)`, `r = lk(3,1)`, and the signed count `m` of inserted
/// triple-linking tangles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Prescription {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub m: i64,
}

impl Prescription {
    pub fn new(p: i64, q: i64, r: i64, m: i64) -> Prescription {
        Prescription { p, q, r, m }
    }

    /// The triple linking number the two constructions realize.
    pub fn expected_mu_bar(&self) -> Residue {
        let g = self.p.abs().gcd(&self.q.abs()).gcd(&self.r.abs());
        Residue::new(self.m, g)
    }

    /// Intersection pattern: clasp blocks in the fixed order (1,2),
    /// (2,3), (3,1), then one commutator block per tangle, no triple
    /// points.
    pub fn build_pattern(&self) -> SurfacePattern {
        let Prescription { p, q, r, m } = *self;
        let mut w_i = Vec::new();
        let mut w_j = Vec::new();
        let mut w_k = Vec::new();
        let mut pairs: Vec<(LetterRef, LetterRef)> = Vec::new();

        let mut clasp = |a: &mut Vec<BoundaryLetter>,
                         b: &mut Vec<BoundaryLetter>,
                         a_role: Role,
                         b_role: Role,
                         count: i64| {
            let sign = Sign::of(count);
            for _ in 0..count.unsigned_abs() {
                pairs.push((
                    LetterRef {
                        word: a_role,
                        pos: a.len(),
                    },
                    LetterRef {
                        word: b_role,
                        pos: b.len(),
                    },
                ));
                a.push(BoundaryLetter::new(b_role, sign));
                b.push(BoundaryLetter::new(a_role, sign));
            }
        };
        clasp(&mut w_i, &mut w_j, Role::I, Role::J, p);
        clasp(&mut w_j, &mut w_k, Role::J, Role::K, q);
        clasp(&mut w_k, &mut w_i, Role::K, Role::I, r);

        let block: [(Role, Sign); 4] = if m >= 0 {
            [
                (Role::I, Sign::Plus),
                (Role::J, Sign::Plus),
                (Role::I, Sign::Minus),
                (Role::J, Sign::Minus),
            ]
        } else {
            [
                (Role::J, Sign::Plus),
                (Role::I, Sign::Plus),
                (Role::J, Sign::Minus),
                (Role::I, Sign::Minus),
            ]
        };
        for _ in 0..m.unsigned_abs() {
            let base = w_k.len();
            pairs.push((
                LetterRef {
                    word: Role::K,
                    pos: base,
                },
                LetterRef {
                    word: Role::K,
                    pos: base + 2,
                },
            ));
            pairs.push((
                LetterRef {
                    word: Role::K,
                    pos: base + 1,
                },
                LetterRef {
                    word: Role::K,
                    pos: base + 3,
                },
            ));
            for (role, sign) in block {
                w_k.push(BoundaryLetter::new(role, sign));
            }
        }

        SurfacePattern::new([1, 2, 3], [w_i, w_j, w_k], 0, 0, Some(pairs))
            .expect("built patterns are structurally valid")
    }

    /// PD code of the trace closure of the assembled tangle.
    pub fn build_diagram(&self) -> LinkDiagram {
        let Prescription { p, q, r, m } = *self;
        let mut letters: Vec<(usize, bool)> = Vec::new();
        for _ in 0..p.unsigned_abs() {
            letters.extend([(1, p > 0); 2]);
        }
        for _ in 0..q.unsigned_abs() {
            letters.extend([(2, q > 0); 2]);
        }
        for _ in 0..r.unsigned_abs() {
            letters.push((2, true));
            letters.extend([(1, r > 0); 2]);
            letters.push((2, false));
        }
        for _ in 0..m.unsigned_abs() {
            if m > 0 {
                letters.extend([
                    (1, true),
                    (2, false),
                    (1, true),
                    (2, false),
                    (1, true),
                    (2, false),
                ]);
            } else {
                letters.extend([
                    (2, true),
                    (1, false),
                    (2, true),
                    (1, false),
                    (2, true),
                    (1, false),
                ]);
            }
        }
        let name = format!("prescribed({p},{q},{r},{m})");
        compile_braid(&letters, &name)
    }
}

/// Turn a 3-strand braid word into a PD code, closing each strand back
/// onto itself. Strand passages are numbered per component and wrap
/// around, so the closure costs no extra crossings.
fn compile_braid(letters: &[(usize, bool)], name: &str) -> LinkDiagram {
    // symbolic edge: (component, passage index)
    let mut heights = [1usize, 2, 3];
    let mut passages = [0usize; 3];
    let mut tuples: Vec<[(usize, usize); 4]> = Vec::new();
    for &(h, positive) in letters {
        let upper = heights[h - 1];
        let lower = heights[h];
        let up_in = (upper, passages[upper - 1]);
        let up_out = (upper, passages[upper - 1] + 1);
        let low_in = (lower, passages[lower - 1]);
        let low_out = (lower, passages[lower - 1] + 1);
        // positive: the strand entering from the upper left runs over
        tuples.push(if positive {
            [low_in, up_out, low_out, up_in]
        } else {
            [up_in, low_in, up_out, low_out]
        });
        passages[upper - 1] += 1;
        passages[lower - 1] += 1;
        heights.swap(h - 1, h);
    }
    for comp in 1..=3 {
        if passages[comp - 1] == 0 {
            tuples.push([(comp, 0), (comp, 0), (comp, 1), (comp, 1)]);
            passages[comp - 1] = 2;
        }
    }

    let offsets = [0, passages[0], passages[0] + passages[1]];
    let label = |(comp, idx): (usize, usize)| offsets[comp - 1] + idx % passages[comp - 1] + 1;
    let crossings = tuples
        .into_iter()
        .map(|[a, b, c, d]| Crossing {
            under_in: label(a),
            b: label(b),
            under_out: label(c),
            d: label(d),
        })
        .collect();
    LinkDiagram::from_crossings(crossings, 0, Some(3), Some(name.to_string()))
        .expect("compiled braids are valid diagrams")
}
