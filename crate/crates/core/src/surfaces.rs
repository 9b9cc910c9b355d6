//! Combinatorial intersection patterns of three Seifert surfaces.
//!
//! A pattern records, for each of the three link components, the cyclic
//! word of signed punctures its boundary makes through the other two
//! surfaces, together with the signed triple point count, the number of
//! closed double curves, and optionally the pairing of boundary letters
//! into double arcs. The triple linking number is the difference between
//! the cyclic pair-count sum and the triple point count, modulo the gcd
//! of the pairwise linking numbers, and is invariant under the three
//! local finger moves implemented here.

use std::fmt;

use num_integer::Integer;
use serde::Deserialize;
use thiserror::Error;

use crate::milnor::Residue;
use crate::words::{pair_exponent_sum, Letter, Sign, Word};

/// Position of a surface in the ordered triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    I,
    J,
    K,
}

impl Role {
    pub const ALL: [Role; 3] = [Role::I, Role::J, Role::K];

    pub fn index(self) -> usize {
        match self {
            Role::I => 0,
            Role::J => 1,
            Role::K => 2,
        }
    }

    pub fn token(self) -> char {
        match self {
            Role::I => 'i',
            Role::J => 'j',
            Role::K => 'k',
        }
    }

    fn from_index(n: usize) -> Role {
        Role::ALL[n]
    }

    /// The other two roles, in the cyclic order following `self`.
    pub fn others(self) -> (Role, Role) {
        match self {
            Role::I => (Role::J, Role::K),
            Role::J => (Role::K, Role::I),
            Role::K => (Role::I, Role::J),
        }
    }

    /// The role that is neither of the two given distinct roles.
    pub fn third(a: Role, b: Role) -> Role {
        assert_ne!(a, b);
        Role::ALL.into_iter().find(|&r| r != a && r != b).unwrap()
    }
}

/// Sign of (a, b, c) as a permutation of (I, J, K).
fn perm_sign(a: Role, b: Role, c: Role) -> i64 {
    assert!(a != b && b != c && a != c, "roles must be distinct");
    match (a, b, c) {
        (Role::I, Role::J, Role::K) | (Role::J, Role::K, Role::I) | (Role::K, Role::I, Role::J) => {
            1
        }
        _ => -1,
    }
}

/// One signed puncture of a component's boundary through another surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundaryLetter {
    pub other: Role,
    pub sign: Sign,
    /// index of the double arc this endpoint belongs to, when the
    /// pattern carries a pairing
    pub arc: Option<usize>,
}

impl BoundaryLetter {
    pub fn new(other: Role, sign: Sign) -> BoundaryLetter {
        BoundaryLetter {
            other,
            sign,
            arc: None,
        }
    }
}

impl fmt::Display for BoundaryLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let suffix = if self.sign == Sign::Plus { '+' } else { '-' };
        write!(f, "{}{}", self.other.token(), suffix)
    }
}

/// A position in one of the three boundary words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LetterRef {
    pub word: Role,
    pub pos: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("invalid pattern JSON: {0}")]
    Json(String),
    #[error("cannot parse pattern letter `{0}`")]
    BadLetter(String),
    #[error("word {0:?} may not mention its own component")]
    SelfLetter(Role),
    #[error("labels must be three distinct component ids")]
    BadLabels,
    #[error("label {0} is not one of the pattern labels")]
    ForeignLabel(usize),
    #[error("roles must be distinct, got a repeat")]
    RepeatedRole,
    #[error("pattern violates its invariants: {0:?}")]
    Invalid(Vec<Violation>),
    #[error("no letter at position {pos} of word {word:?}")]
    NoSuchLetter { word: Role, pos: usize },
    #[error("letters at {pos} and {} of word {word:?} are not a cancelling pair", pos + 1)]
    NotCancelling { word: Role, pos: usize },
    #[error("letters at {pos}..={} of word {word:?} are not a conjugated letter", pos + 2)]
    NotConjugated { word: Role, pos: usize },
    #[error("the disjoint-clasp shape cannot be decided without an arc pairing")]
    ArcPairingRequired,
}

/// One failed pattern invariant, reported by `validate`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    LinkingMismatch {
        a: Role,
        b: Role,
        from_a: i64,
        from_b: i64,
    },
    PairRefOutOfRange {
        arc: usize,
    },
    PairingNotPerfect {
        reason: String,
    },
    ClaspSignsDiffer {
        arc: usize,
    },
    RibbonSignsEqual {
        arc: usize,
    },
    PairComponentsMismatch {
        arc: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LinkingMismatch {
                a,
                b,
                from_a,
                from_b,
            } => write!(
                f,
                "linking number read from w_{} is {} but from w_{} is {}",
                a.token(),
                from_a,
                b.token(),
                from_b
            ),
            Violation::PairRefOutOfRange { arc } => {
                write!(f, "arc {arc} references a letter that does not exist")
            }
            Violation::PairingNotPerfect { reason } => {
                write!(f, "arc pairing is not a perfect matching: {reason}")
            }
            Violation::ClaspSignsDiffer { arc } => {
                write!(f, "clasp arc {arc} pairs letters of opposite signs")
            }
            Violation::RibbonSignsEqual { arc } => {
                write!(f, "ribbon arc {arc} pairs letters of equal signs")
            }
            Violation::PairComponentsMismatch { arc } => {
                write!(f, "arc {arc} pairs letters whose components do not match")
            }
        }
    }
}

/// The two reduced shapes a pattern can be recognized as: all double
/// curves are disjoint clasps, or every boundary word is two blocks up
/// to cancelling pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatternType {
    DisjointClasps,
    BoundaryOrdered,
    Neither,
}

/// The three local moves, each in every role-permuted variant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FingerMove {
    /// Insert the cancelling pair `other^sign other^-sign` at `pos`.
    InsertCancellingPair {
        word: Role,
        pos: usize,
        other: Role,
        sign: Sign,
    },
    /// Remove an adjacent cancelling pair starting at `pos`.
    DeleteCancellingPair { word: Role, pos: usize },
    /// Replace the letter `x^e` at `pos` by `c^-1 x^e c`, where `c` is
    /// the third role.
    Conjugate { word: Role, pos: usize },
    /// Undo a `c^g x^e c^-g` wrapping whose first letter sits at `pos`.
    Unconjugate { word: Role, pos: usize },
    /// Swap the adjacent letters at `pos` and `pos + 1`.
    SwapAdjacent { word: Role, pos: usize },
}

type RawLetterRef = (String, usize);

#[derive(Deserialize)]
struct PatternFile {
    #[serde(default)]
    labels: Option<[usize; 3]>,
    w_i: Vec<String>,
    w_j: Vec<String>,
    w_k: Vec<String>,
    t: i64,
    #[serde(default)]
    circles: usize,
    #[serde(default)]
    arcs: Option<Vec<(RawLetterRef, RawLetterRef)>>,
}

/// Intersection pattern of three Seifert surfaces, with the basepoint of
/// every boundary word at position 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfacePattern {
    labels: [usize; 3],
    words: [Vec<BoundaryLetter>; 3],
    triple_points: i64,
    circles: usize,
    arc_pairs: Option<Vec<(LetterRef, LetterRef)>>,
}

impl SurfacePattern {
    pub fn new(
        labels: [usize; 3],
        words: [Vec<BoundaryLetter>; 3],
        triple_points: i64,
        circles: usize,
        arc_pairs: Option<Vec<(LetterRef, LetterRef)>>,
    ) -> Result<SurfacePattern, SurfaceError> {
        if labels[0] == labels[1] || labels[1] == labels[2] || labels[0] == labels[2] {
            return Err(SurfaceError::BadLabels);
        }
        for (n, word) in words.iter().enumerate() {
            let role = Role::from_index(n);
            if word.iter().any(|l| l.other == role) {
                return Err(SurfaceError::SelfLetter(role));
            }
        }
        let mut pattern = SurfacePattern {
            labels,
            words,
            triple_points,
            circles,
            arc_pairs,
        };
        pattern.refresh_arc_ids();
        Ok(pattern)
    }

    pub fn parse(text: &str) -> Result<SurfacePattern, SurfaceError> {
        let file: PatternFile =
            serde_json::from_str(text).map_err(|e| SurfaceError::Json(e.to_string()))?;
        let labels = file.labels.unwrap_or([1, 2, 3]);
        if labels[0] == labels[1] || labels[1] == labels[2] || labels[0] == labels[2] {
            return Err(SurfaceError::BadLabels);
        }
        let parse_word = |tokens: &[String]| -> Result<Vec<BoundaryLetter>, SurfaceError> {
            tokens.iter().map(|t| parse_letter(t, &labels)).collect()
        };
        let words = [
            parse_word(&file.w_i)?,
            parse_word(&file.w_j)?,
            parse_word(&file.w_k)?,
        ];
        let arcs = match file.arcs {
            None => None,
            Some(pairs) => {
                let mut out = Vec::with_capacity(pairs.len());
                for (a, b) in pairs {
                    out.push((parse_ref(&a)?, parse_ref(&b)?));
                }
                Some(out)
            }
        };
        SurfacePattern::new(labels, words, file.t, file.circles, arcs)
    }

    pub fn labels(&self) -> [usize; 3] {
        self.labels
    }

    pub fn word(&self, role: Role) -> &[BoundaryLetter] {
        &self.words[role.index()]
    }

    pub fn triple_points(&self) -> i64 {
        self.triple_points
    }

    pub fn circles(&self) -> usize {
        self.circles
    }

    pub fn arc_pairs(&self) -> Option<&[(LetterRef, LetterRef)]> {
        self.arc_pairs.as_deref()
    }

    pub fn role_of_label(&self, label: usize) -> Result<Role, SurfaceError> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .map(Role::from_index)
            .ok_or(SurfaceError::ForeignLabel(label))
    }

    /// The boundary word of `role` as a free-group word; generators are
    /// numbered 1, 2, 3 by role.
    pub fn word_as_word(&self, role: Role) -> Word {
        self.word(role)
            .iter()
            .map(|l| Letter::new(l.other.index() + 1, l.sign))
            .collect()
    }

    /// Sum of the signs of `b`-letters in the boundary word of `a`; both
    /// readings of a consistent pattern give the linking number.
    pub fn linking_from(&self, a: Role, b: Role) -> i64 {
        self.word(a)
            .iter()
            .filter(|l| l.other == b)
            .map(|l| l.sign.value())
            .sum()
    }

    /// gcd of the three pairwise linking numbers read from the pattern.
    pub fn delta(&self) -> i64 {
        let ij = self.linking_from(Role::I, Role::J).abs();
        let jk = self.linking_from(Role::J, Role::K).abs();
        let ki = self.linking_from(Role::K, Role::I).abs();
        ij.gcd(&jk).gcd(&ki)
    }

    /// Every violated invariant, with its location; empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (a, b) in [(Role::I, Role::J), (Role::J, Role::K), (Role::K, Role::I)] {
            let from_a = self.linking_from(a, b);
            let from_b = self.linking_from(b, a);
            if from_a != from_b {
                out.push(Violation::LinkingMismatch {
                    a,
                    b,
                    from_a,
                    from_b,
                });
            }
        }
        if let Some(pairs) = &self.arc_pairs {
            let mut covered: [Vec<usize>; 3] = Default::default();
            for (arc, (x, y)) in pairs.iter().enumerate() {
                let (lx, ly) = match (self.letter_at(*x), self.letter_at(*y)) {
                    (Some(lx), Some(ly)) => (lx, ly),
                    _ => {
                        out.push(Violation::PairRefOutOfRange { arc });
                        continue;
                    }
                };
                covered[x.word.index()].push(x.pos);
                covered[y.word.index()].push(y.pos);
                if x.word == y.word {
                    // ribbon: both endpoints on one boundary, opposite signs
                    if lx.other != ly.other {
                        out.push(Violation::PairComponentsMismatch { arc });
                    } else if lx.sign == ly.sign {
                        out.push(Violation::RibbonSignsEqual { arc });
                    }
                } else {
                    // clasp: one endpoint on each boundary, equal signs
                    if lx.other != y.word || ly.other != x.word {
                        out.push(Violation::PairComponentsMismatch { arc });
                    } else if lx.sign != ly.sign {
                        out.push(Violation::ClaspSignsDiffer { arc });
                    }
                }
            }
            for role in Role::ALL {
                let mut positions = covered[role.index()].clone();
                positions.sort_unstable();
                let expected: Vec<usize> = (0..self.word(role).len()).collect();
                if positions != expected {
                    out.push(Violation::PairingNotPerfect {
                        reason: format!(
                            "w_{} has {} letters but {} pairing endpoints",
                            role.token(),
                            expected.len(),
                            positions.len()
                        ),
                    });
                }
            }
        }
        out
    }

    fn letter_at(&self, r: LetterRef) -> Option<BoundaryLetter> {
        self.word(r.word).get(r.pos).copied()
    }

    /// Signed triple point count read in the given surface order.
    pub fn t_value(&self, order: [Role; 3]) -> i64 {
        self.triple_points * perm_sign(order[0], order[1], order[2])
    }

    /// Signed count of ordered `p q` pairs around the boundary word of
    /// `r`, read from its basepoint.
    pub fn e_value(&self, p: Role, q: Role, r: Role) -> Result<i64, SurfaceError> {
        if p == q || q == r || p == r {
            return Err(SurfaceError::RepeatedRole);
        }
        Ok(
            pair_exponent_sum(p.index() + 1, q.index() + 1, &self.word_as_word(r))
                .expect("roles are distinct"),
        )
    }

    /// Sum of the pair counts over the cyclic role permutations.
    pub fn m_value(&self) -> i64 {
        Role::ALL
            .into_iter()
            .map(|r| {
                let (p, q) = r.others();
                self.e_value(p, q, r).expect("cyclic roles are distinct")
            })
            .sum()
    }

    /// The triple linking number of the pattern: pair-count sum minus
    /// triple points, modulo the gcd of the pairwise linking numbers.
    pub fn mu_bar(&self) -> Result<Residue, SurfaceError> {
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(SurfaceError::Invalid(violations));
        }
        Ok(Residue::new(
            self.m_value() - self.triple_points,
            self.delta(),
        ))
    }

    /// Move the basepoint of one boundary word forward by `steps` letters.
    pub fn rotate_basepoint(&self, role: Role, steps: usize) -> SurfacePattern {
        let mut out = self.clone();
        let word = &mut out.words[role.index()];
        let len = word.len();
        if len == 0 {
            return out;
        }
        let s = steps % len;
        word.rotate_left(s);
        if let Some(pairs) = &mut out.arc_pairs {
            for (x, y) in pairs.iter_mut() {
                for r in [x, y] {
                    if r.word == role {
                        r.pos = (r.pos + len - s) % len;
                    }
                }
            }
        }
        out.refresh_arc_ids();
        out
    }

    /// Apply one finger move. The arc pairing is dropped since the move
    /// resculpts the double curves.
    pub fn finger_move(&self, mv: FingerMove) -> Result<SurfacePattern, SurfaceError> {
        let mut out = self.clone();
        out.arc_pairs = None;
        match mv {
            FingerMove::InsertCancellingPair {
                word,
                pos,
                other,
                sign,
            } => {
                if other == word {
                    return Err(SurfaceError::SelfLetter(word));
                }
                let w = &mut out.words[word.index()];
                if pos > w.len() {
                    return Err(SurfaceError::NoSuchLetter { word, pos });
                }
                w.insert(pos, BoundaryLetter::new(other, sign.flip()));
                w.insert(pos, BoundaryLetter::new(other, sign));
            }
            FingerMove::DeleteCancellingPair { word, pos } => {
                let w = &mut out.words[word.index()];
                if pos + 1 >= w.len() {
                    return Err(SurfaceError::NoSuchLetter { word, pos: pos + 1 });
                }
                if w[pos].other != w[pos + 1].other || w[pos].sign == w[pos + 1].sign {
                    return Err(SurfaceError::NotCancelling { word, pos });
                }
                w.drain(pos..pos + 2);
            }
            FingerMove::Conjugate { word, pos } => {
                let w = &mut out.words[word.index()];
                let letter = *w.get(pos).ok_or(SurfaceError::NoSuchLetter { word, pos })?;
                let conj = Role::third(word, letter.other);
                w.insert(pos + 1, BoundaryLetter::new(conj, Sign::Plus));
                w.insert(pos, BoundaryLetter::new(conj, Sign::Minus));
                out.triple_points += wrap_delta(Sign::Minus, letter, conj, word);
            }
            FingerMove::Unconjugate { word, pos } => {
                let w = &mut out.words[word.index()];
                if pos + 2 >= w.len() {
                    return Err(SurfaceError::NoSuchLetter { word, pos: pos + 2 });
                }
                let (head, mid, tail) = (w[pos], w[pos + 1], w[pos + 2]);
                if mid.other == word {
                    return Err(SurfaceError::NotConjugated { word, pos });
                }
                let conj = Role::third(word, mid.other);
                if head.other != conj || tail.other != conj || head.sign != tail.sign.flip() {
                    return Err(SurfaceError::NotConjugated { word, pos });
                }
                out.triple_points -= wrap_delta(head.sign, mid, conj, word);
                w.remove(pos + 2);
                w.remove(pos);
            }
            FingerMove::SwapAdjacent { word, pos } => {
                let w = &mut out.words[word.index()];
                if pos + 1 >= w.len() {
                    return Err(SurfaceError::NoSuchLetter { word, pos: pos + 1 });
                }
                let (x, y) = (w[pos], w[pos + 1]);
                w.swap(pos, pos + 1);
                out.triple_points += swap_delta(x, y, word);
            }
        }
        out.refresh_arc_ids();
        Ok(out)
    }

    /// Whether each boundary word is two blocks around the circle, after
    /// deleting adjacent cancelling pairs.
    fn is_boundary_ordered(&self) -> bool {
        Role::ALL.into_iter().all(|role| {
            let reduced = cyclic_reduce(self.word(role));
            if reduced.is_empty() {
                return true;
            }
            let changes = (0..reduced.len())
                .filter(|&n| reduced[n].other != reduced[(n + 1) % reduced.len()].other)
                .count();
            changes <= 2
        })
    }

    /// Classify into the two reduced kinds. Deciding the disjoint-clasp
    /// kind needs the arc pairing; without one the pattern can still be
    /// recognized as boundary ordered, and anything else is an error when
    /// the clasp question cannot be ruled out.
    pub fn classify(&self) -> Result<PatternType, SurfaceError> {
        if let Some(pairs) = &self.arc_pairs {
            let all_clasps = pairs.iter().all(|(x, y)| x.word != y.word);
            if self.triple_points == 0
                && self.circles == 0
                && all_clasps
                && self.validate().is_empty()
            {
                return Ok(PatternType::DisjointClasps);
            }
        }
        if self.is_boundary_ordered() {
            return Ok(PatternType::BoundaryOrdered);
        }
        if self.arc_pairs.is_none() && self.triple_points == 0 && self.circles == 0 {
            return Err(SurfaceError::ArcPairingRequired);
        }
        Ok(PatternType::Neither)
    }

    /// Sort every boundary word into two blocks by adjacent swaps, with
    /// the triple point count updated move by move, then cancel adjacent
    /// opposite pairs. The returned residue is the negated final triple
    /// point count modulo the pattern's gcd, and equals the input's
    /// triple linking number.
    pub fn normalize_boundary_ordered(&self) -> Result<(SurfacePattern, Residue), SurfaceError> {
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(SurfaceError::Invalid(violations));
        }
        let mut out = self.clone();
        out.arc_pairs = None;
        out.refresh_arc_ids();
        for role in Role::ALL {
            let (first, second) = role.others();
            loop {
                let w = &out.words[role.index()];
                if let Some(pos) = (0..w.len().saturating_sub(1))
                    .find(|&n| w[n].other == w[n + 1].other && w[n].sign != w[n + 1].sign)
                {
                    out = out.finger_move(FingerMove::DeleteCancellingPair { word: role, pos })?;
                    continue;
                }
                if let Some(pos) = (0..w.len().saturating_sub(1))
                    .find(|&n| w[n].other == second && w[n + 1].other == first)
                {
                    out = out.finger_move(FingerMove::SwapAdjacent { word: role, pos })?;
                    continue;
                }
                break;
            }
        }
        let residue = Residue::new(-out.triple_points, out.delta());
        Ok((out, residue))
    }

    /// Relabel the pattern by a permutation of its roles: entry `n` of
    /// `perm` says which old role becomes the new role `n`. The triple
    /// point count picks up the sign of the permutation.
    pub fn permute_roles(&self, perm: [Role; 3]) -> SurfacePattern {
        let sign = perm_sign(perm[0], perm[1], perm[2]);
        let old_to_new = |old: Role| Role::from_index(perm.iter().position(|&p| p == old).unwrap());
        let mut labels = [0; 3];
        let mut words: [Vec<BoundaryLetter>; 3] = Default::default();
        for new in Role::ALL {
            let old = perm[new.index()];
            labels[new.index()] = self.labels[old.index()];
            words[new.index()] = self
                .word(old)
                .iter()
                .map(|l| BoundaryLetter {
                    other: old_to_new(l.other),
                    ..*l
                })
                .collect();
        }
        let arc_pairs = self.arc_pairs.as_ref().map(|pairs| {
            pairs
                .iter()
                .map(|(x, y)| {
                    (
                        LetterRef {
                            word: old_to_new(x.word),
                            pos: x.pos,
                        },
                        LetterRef {
                            word: old_to_new(y.word),
                            pos: y.pos,
                        },
                    )
                })
                .collect()
        });
        let mut out = SurfacePattern {
            labels,
            words,
            triple_points: self.triple_points * sign,
            circles: self.circles,
            arc_pairs,
        };
        out.refresh_arc_ids();
        out
    }

    fn refresh_arc_ids(&mut self) {
        for word in &mut self.words {
            for letter in word.iter_mut() {
                letter.arc = None;
            }
        }
        if let Some(pairs) = self.arc_pairs.clone() {
            for (arc, (x, y)) in pairs.iter().enumerate() {
                for r in [x, y] {
                    if let Some(l) = self.words[r.word.index()].get_mut(r.pos) {
                        l.arc = Some(arc);
                    }
                }
            }
        }
    }

    pub fn to_json_string(&self) -> String {
        let word_tokens =
            |role: Role| -> Vec<String> { self.word(role).iter().map(|l| l.to_string()).collect() };
        let mut obj = serde_json::Map::new();
        obj.insert("labels".into(), serde_json::json!(self.labels));
        obj.insert("w_i".into(), serde_json::json!(word_tokens(Role::I)));
        obj.insert("w_j".into(), serde_json::json!(word_tokens(Role::J)));
        obj.insert("w_k".into(), serde_json::json!(word_tokens(Role::K)));
        obj.insert("t".into(), serde_json::json!(self.triple_points));
        obj.insert("circles".into(), serde_json::json!(self.circles));
        if let Some(pairs) = &self.arc_pairs {
            let refs: Vec<((String, usize), (String, usize))> = pairs
                .iter()
                .map(|(x, y)| {
                    (
                        (x.word.token().to_string(), x.pos),
                        (y.word.token().to_string(), y.pos),
                    )
                })
                .collect();
            obj.insert("arcs".into(), serde_json::json!(refs));
        }
        serde_json::to_string_pretty(&serde_json::Value::Object(obj)).unwrap()
    }
}

/// Exact change of the triple point count when `c^g x c^-g` wraps the
/// letter `x` in the word of `r`, with `g` the sign of the leading
/// conjugating letter.
fn wrap_delta(lead: Sign, letter: BoundaryLetter, conj: Role, word: Role) -> i64 {
    lead.value() * letter.sign.value() * perm_sign(conj, letter.other, word)
}

/// Exact change of the triple point count when the adjacent letters
/// `x y` become `y x` in the word of `r`. Swaps within one surface are
/// free.
fn swap_delta(x: BoundaryLetter, y: BoundaryLetter, word: Role) -> i64 {
    if x.other == y.other {
        0
    } else {
        -x.sign.value() * y.sign.value() * perm_sign(x.other, y.other, word)
    }
}

/// Delete adjacent cancelling pairs around the circle until none remain.
fn cyclic_reduce(word: &[BoundaryLetter]) -> Vec<BoundaryLetter> {
    let mut out: Vec<BoundaryLetter> = word.to_vec();
    loop {
        let n = out.len();
        if n < 2 {
            return out;
        }
        let cancel = (0..n).find(|&p| {
            let q = (p + 1) % n;
            p != q && out[p].other == out[q].other && out[p].sign != out[q].sign
        });
        match cancel {
            Some(p) => {
                let q = (p + 1) % n;
                let (hi, lo) = if p > q { (p, q) } else { (q, p) };
                out.remove(hi);
                out.remove(lo);
            }
            None => return out,
        }
    }
}

fn parse_letter(token: &str, labels: &[usize; 3]) -> Result<BoundaryLetter, SurfaceError> {
    let bad = || SurfaceError::BadLetter(token.to_string());
    let (body, sign) = if let Some(b) = token.strip_suffix('+') {
        (b, Sign::Plus)
    } else if let Some(b) = token.strip_suffix("^-1") {
        (b, Sign::Minus)
    } else if let Some(b) = token.strip_suffix('-') {
        (b, Sign::Minus)
    } else {
        (token, Sign::Plus)
    };
    let role = match body {
        "i" => Role::I,
        "j" => Role::J,
        "k" => Role::K,
        _ => {
            let digits = body.strip_prefix('g').ok_or_else(bad)?;
            let label: usize = digits.parse().map_err(|_| bad())?;
            let index = labels.iter().position(|&l| l == label).ok_or_else(bad)?;
            Role::from_index(index)
        }
    };
    Ok(BoundaryLetter::new(role, sign))
}

fn parse_ref(r: &RawLetterRef) -> Result<LetterRef, SurfaceError> {
    let word = match r.0.as_str() {
        "i" => Role::I,
        "j" => Role::J,
        "k" => Role::K,
        other => return Err(SurfaceError::BadLetter(other.to_string())),
    };
    Ok(LetterRef { word, pos: r.1 })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) const BORROMEAN_PATTERN: &str = r#"{
        "labels": [1, 2, 3],
        "w_i": [],
        "w_j": ["k+", "k-"],
        "w_k": ["i+", "j+", "i-", "j-"],
        "t": 0,
        "circles": 0,
        "arcs": [[["j", 0], ["j", 1]], [["k", 0], ["k", 2]], [["k", 1], ["k", 3]]]
    }"#;

    pub(crate) fn borromean_pattern() -> SurfacePattern {
        SurfacePattern::parse(BORROMEAN_PATTERN).unwrap()
    }

    fn letters(tokens: &[&str]) -> Vec<BoundaryLetter> {
        tokens
            .iter()
            .map(|t| parse_letter(t, &[1, 2, 3]).unwrap())
            .collect()
    }

    fn plain(w_i: &[&str], w_j: &[&str], w_k: &[&str], t: i64) -> SurfacePattern {
        SurfacePattern::new(
            [1, 2, 3],
            [letters(w_i), letters(w_j), letters(w_k)],
            t,
            0,
            None,
        )
        .unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(borromean_pattern().validate().is_empty());

        let bad = plain(&["j+"], &[], &[], 0);
        assert_eq!(
            bad.validate(),
            vec![Violation::LinkingMismatch {
                a: Role::I,
                b: Role::J,
                from_a: 1,
                from_b: 0
            }]
        );

        let clasp_bad = SurfacePattern::new(
            [1, 2, 3],
            [letters(&["j+"]), letters(&["i-"]), letters(&[])],
            0,
            0,
            Some(vec![(
                LetterRef {
                    word: Role::I,
                    pos: 0,
                },
                LetterRef {
                    word: Role::J,
                    pos: 0,
                },
            )]),
        )
        .unwrap();
        assert!(clasp_bad
            .validate()
            .contains(&Violation::ClaspSignsDiffer { arc: 0 }));
    }

    #[test]
    fn t_value_signs() {
        let p = plain(&[], &[], &[], 2);
        assert_eq!(borromean_pattern().t_value([Role::I, Role::J, Role::K]), 0);
        assert_eq!(p.t_value([Role::J, Role::I, Role::K]), -2);
        assert_eq!(p.t_value([Role::J, Role::K, Role::I]), 2);
    }

    #[test]
    fn e_value_examples() {
        let p = borromean_pattern();
        assert_eq!(p.e_value(Role::I, Role::J, Role::K).unwrap(), 1);
        assert_eq!(p.e_value(Role::J, Role::K, Role::I).unwrap(), 0);
        assert_eq!(p.e_value(Role::K, Role::I, Role::J).unwrap(), 0);
        assert_eq!(
            p.e_value(Role::I, Role::I, Role::K),
            Err(SurfaceError::RepeatedRole)
        );
        assert_eq!(
            plain(&[], &[], &[], 0)
                .e_value(Role::I, Role::J, Role::K)
                .unwrap(),
            0
        );
    }

    #[test]
    fn m_value_examples() {
        assert_eq!(borromean_pattern().m_value(), 1);
        assert_eq!(plain(&[], &[], &[], 0).m_value(), 0);
        assert_eq!(plain(&[], &[], &["i+", "j+"], 0).m_value(), 1);
    }

    #[test]
    fn mu_bar_examples() {
        assert_eq!(borromean_pattern().mu_bar().unwrap(), Residue::new(1, 0));
        assert_eq!(
            plain(&[], &[], &[], 0).mu_bar().unwrap(),
            Residue::new(0, 0)
        );
        let bad = plain(&["j+"], &[], &[], 0);
        assert!(matches!(bad.mu_bar(), Err(SurfaceError::Invalid(_))));
    }

    #[test]
    fn rotation_keeps_everything_mod_delta() {
        let p = borromean_pattern();
        let r = p.rotate_basepoint(Role::K, 1);
        assert_eq!(r.e_value(Role::I, Role::J, Role::K).unwrap(), 1);
        assert_eq!(r.mu_bar().unwrap(), p.mu_bar().unwrap());
        assert!(r.validate().is_empty());
        let full = p.rotate_basepoint(Role::K, 4);
        assert_eq!(full, p);
    }

    #[test]
    fn swap_move_example() {
        let base = plain(&[], &[], &["i+", "j+"], 0);
        let swapped = base
            .finger_move(FingerMove::SwapAdjacent {
                word: Role::K,
                pos: 0,
            })
            .unwrap();
        assert_eq!(swapped.word(Role::K)[0].other, Role::J);
        assert_eq!(swapped.triple_points(), -1);
        assert_eq!(
            swapped.m_value() - swapped.triple_points(),
            base.m_value() - base.triple_points()
        );
    }

    #[test]
    fn insert_move_changes_nothing() {
        let base = borromean_pattern();
        let moved = base
            .finger_move(FingerMove::InsertCancellingPair {
                word: Role::I,
                pos: 0,
                other: Role::K,
                sign: Sign::Minus,
            })
            .unwrap();
        assert_eq!(moved.m_value(), base.m_value());
        assert_eq!(moved.triple_points(), base.triple_points());
        assert_eq!(
            moved
                .finger_move(FingerMove::DeleteCancellingPair {
                    word: Role::I,
                    pos: 0
                })
                .unwrap()
                .word(Role::I),
            base.word(Role::I)
        );
    }

    #[test]
    fn conjugate_move_examples() {
        // wrapping k+ in w_i drops the j-before-k count and one triple point
        let base = plain(&["k+"], &[], &["i+"], 0);
        let moved = base
            .finger_move(FingerMove::Conjugate {
                word: Role::I,
                pos: 0,
            })
            .unwrap();
        assert_eq!(
            moved
                .word(Role::I)
                .iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>(),
            vec!["j-", "k+", "j+"]
        );
        assert_eq!(moved.triple_points(), -1);
        assert_eq!(
            moved.e_value(Role::J, Role::K, Role::I).unwrap(),
            base.e_value(Role::J, Role::K, Role::I).unwrap() - 1
        );
        assert_eq!(
            moved.m_value() - moved.triple_points(),
            base.m_value() - base.triple_points()
        );

        let undone = moved
            .finger_move(FingerMove::Unconjugate {
                word: Role::I,
                pos: 0,
            })
            .unwrap();
        assert_eq!(undone.word(Role::I), base.word(Role::I));
        assert_eq!(undone.triple_points(), 0);
    }

    #[test]
    fn moves_reject_bad_positions() {
        let p = borromean_pattern();
        assert!(matches!(
            p.finger_move(FingerMove::SwapAdjacent {
                word: Role::I,
                pos: 0
            }),
            Err(SurfaceError::NoSuchLetter { .. })
        ));
        assert!(matches!(
            p.finger_move(FingerMove::DeleteCancellingPair {
                word: Role::K,
                pos: 0
            }),
            Err(SurfaceError::NotCancelling { .. })
        ));
        let equal_ends = plain(&[], &[], &["i+", "j+", "i+"], 0);
        assert!(matches!(
            equal_ends.finger_move(FingerMove::Unconjugate {
                word: Role::K,
                pos: 0
            }),
            Err(SurfaceError::NotConjugated { .. })
        ));
        // the commutator is conjugations all the way: i+ j+ i- unwraps
        let p = borromean_pattern();
        let unwrapped = p
            .finger_move(FingerMove::Unconjugate {
                word: Role::K,
                pos: 0,
            })
            .unwrap();
        assert_eq!(unwrapped.triple_points(), -1);
        assert_eq!(
            unwrapped.m_value() - unwrapped.triple_points(),
            p.m_value() - p.triple_points()
        );
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            borromean_pattern().classify().unwrap(),
            PatternType::Neither
        );

        let ordered = plain(&["j+", "j+"], &["i+", "i+", "k-"], &["j-"], 5);
        assert_eq!(ordered.classify().unwrap(), PatternType::BoundaryOrdered);

        // without a pairing and with no triple points the clasp question
        // is undecidable
        let naked = plain(&[], &[], &["i+", "j+", "i-", "j-"], 0);
        assert_eq!(naked.classify(), Err(SurfaceError::ArcPairingRequired));
    }

    #[test]
    fn normalize_borromean() {
        let p = borromean_pattern();
        let (sorted, residue) = p.normalize_boundary_ordered().unwrap();
        assert!(sorted.word(Role::I).is_empty());
        assert!(sorted.word(Role::J).is_empty());
        assert!(sorted.word(Role::K).is_empty());
        assert_eq!(sorted.triple_points(), -1);
        assert_eq!(residue, Residue::new(1, 0));
        assert_eq!(residue, p.mu_bar().unwrap());
        assert_eq!(sorted.classify().unwrap(), PatternType::BoundaryOrdered);
    }

    #[test]
    fn normalize_keeps_sorted_patterns() {
        let p = plain(&["j+"], &["k+", "i+"], &["j+"], 3);
        let (sorted, residue) = p.normalize_boundary_ordered().unwrap();
        assert_eq!(sorted.word(Role::J), p.word(Role::J));
        assert_eq!(sorted.triple_points(), 3);
        assert_eq!(residue, Residue::new(-3, 1));
        assert_eq!(residue, p.mu_bar().unwrap());
    }

    #[test]
    fn permute_roles_negates_odd() {
        let p = borromean_pattern();
        let swapped = p.permute_roles([Role::J, Role::I, Role::K]);
        assert_eq!(swapped.labels(), [2, 1, 3]);
        assert_eq!(swapped.mu_bar().unwrap(), p.mu_bar().unwrap().negated());
        let cycled = p.permute_roles([Role::J, Role::K, Role::I]);
        assert_eq!(cycled.mu_bar().unwrap(), p.mu_bar().unwrap());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(matches!(
            SurfacePattern::parse("nope"),
            Err(SurfaceError::Json(_))
        ));
        assert!(matches!(
            SurfacePattern::parse(r#"{"w_i": ["x+"], "w_j": [], "w_k": [], "t": 0}"#),
            Err(SurfaceError::BadLetter(_))
        ));
        assert!(matches!(
            SurfacePattern::parse(
                r#"{"labels": [1, 1, 2], "w_i": [], "w_j": [], "w_k": [], "t": 0}"#
            ),
            Err(SurfaceError::BadLabels)
        ));
    }

    #[test]
    fn parse_accepts_numbered_letters() {
        let p = SurfacePattern::parse(
            r#"{"labels": [4, 7, 9], "w_i": ["g7+", "g9^-1"], "w_j": ["g4+"], "w_k": ["g4-"], "t": 0}"#,
        )
        .unwrap();
        assert_eq!(p.word(Role::I)[0].other, Role::J);
        assert_eq!(p.word(Role::I)[1].other, Role::K);
        assert_eq!(p.word(Role::I)[1].sign, Sign::Minus);
        assert_eq!(p.role_of_label(9).unwrap(), Role::K);
        assert!(p.role_of_label(2).is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = borromean_pattern();
        let q = SurfacePattern::parse(&p.to_json_string()).unwrap();
        assert_eq!(p, q);
    }
}
